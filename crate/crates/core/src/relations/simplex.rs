//! Exact phase-one simplex over the rationals with Bland's rule.

use num_traits::{Signed, Zero};

use crate::graph::Rational;

const STALL_LIMIT: usize = 50;

/// Finds `x >= 0` with `A x = b`, or proves none exists. `b` must be
/// nonnegative. Returns a basic feasible solution.
pub fn find_feasible(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(m, b.len());
    assert!(
        b.iter().all(|x| !x.is_negative()),
        "right-hand side must be nonnegative"
    );
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }
    // Columns 0..n original, n..n+m artificial, last column the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            row.extend(a[i].iter().cloned());
            row.extend((0..m).map(|k| {
                if k == i {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            row.push(b[i].clone());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced gains of the phase-one objective (sum of artificials).
    let mut gain: Vec<Rational> = (0..width)
        .map(|j| {
            if (n..n + m).contains(&j) {
                Rational::zero()
            } else {
                t.iter().fold(Rational::zero(), |acc, row| acc + &row[j])
            }
        })
        .collect();

    // Largest gain first; after a run of degenerate pivots switch to Bland's
    // rule for good so the method terminates.
    let mut stalled = 0;
    loop {
        let enter = if stalled < STALL_LIMIT {
            (0..n)
                .filter(|&j| gain[j].is_positive())
                .max_by(|&x, &y| gain[x].cmp(&gain[y]).then(y.cmp(&x)))
        } else {
            (0..n).find(|&j| gain[j].is_positive())
        };
        let Some(enter) = enter else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[width - 1] / &row[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-one objective is bounded below, so a pivot row exists.
        let (r, ratio) = leave.expect("phase one is bounded");
        if ratio.is_zero() {
            stalled += 1;
        } else if stalled < STALL_LIMIT {
            stalled = 0;
        }
        pivot(&mut t, &mut gain, r, enter);
        basis[r] = enter;
    }

    if gain[width - 1].is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &bv) in basis.iter().enumerate() {
            if bv < n {
                x[bv] = t[i][width - 1].clone();
            }
        }
        Some(x)
    } else {
        None
    }
}

fn pivot(t: &mut [Vec<Rational>], gain: &mut [Rational], r: usize, c: usize) {
    let p = t[r][c].clone();
    for v in t[r].iter_mut() {
        *v /= &p;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    let f = gain[c].clone();
    if !f.is_zero() {
        for (v, pv) in gain.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}
