//! Tutte polynomial by deletion-contraction on parallel classes, memoised on
//! canonical codes.

use std::sync::OnceLock;

use num_bigint::BigUint;

use super::poly::TuttePolynomial;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::symmetry::{CanonicalCache, CanonicalCode, LabeledGraph};

pub const DEFAULT_TUTTE_BOUND: usize = 24;

/// Entries beyond this are not cached.
const MEMO_CAP: usize = 500_000;

fn memo() -> &'static CanonicalCache<CanonicalCode, TuttePolynomial> {
    static MEMO: OnceLock<CanonicalCache<CanonicalCode, TuttePolynomial>> = OnceLock::new();
    MEMO.get_or_init(CanonicalCache::new)
}

/// Loop-free multigraph as a symmetric multiplicity matrix; may be
/// disconnected.
#[derive(Clone, Debug)]
struct Mat {
    m: Vec<Vec<u32>>,
}

impl Mat {
    fn n(&self) -> usize {
        self.m.len()
    }

    fn units(&self) -> u64 {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.m[i][j] as u64)
            .sum()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                for y in 0..n {
                    if self.m[x][y] > 0 && !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn induced(&self, vs: &[usize]) -> Mat {
        Mat {
            m: vs
                .iter()
                .map(|&i| vs.iter().map(|&j| self.m[i][j]).collect())
                .collect(),
        }
    }

    /// Whether `v` is reachable from `u` after removing the whole `u-v` class.
    fn connected_without(&self, u: usize, v: usize) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        seen[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if self.m[x][y] > 0 && !seen[y] && !((x == u && y == v) || (x == v && y == u)) {
                    if y == v {
                        return true;
                    }
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    fn without_class(&self, u: usize, v: usize) -> Mat {
        let mut out = self.clone();
        out.m[u][v] = 0;
        out.m[v][u] = 0;
        out
    }

    /// Merges `v` into `u`; the `u-v` class disappears.
    fn contract(&self, u: usize, v: usize) -> Mat {
        let n = self.n();
        let mut m = self.m.clone();
        for w in 0..n {
            if w != u && w != v {
                m[u][w] += m[v][w];
                m[w][u] = m[u][w];
            }
        }
        m[u][v] = 0;
        m[v][u] = 0;
        m.remove(v);
        for row in &mut m {
            row.remove(v);
        }
        Mat { m }
    }
}

/// Tutte polynomial of the underlying unweighted multigraph, with the default
/// bound on edge units.
pub fn tutte_polynomial(g: &Multigraph) -> Result<TuttePolynomial> {
    tutte_polynomial_bounded(g, DEFAULT_TUTTE_BOUND)
}

pub fn tutte_polynomial_bounded(g: &Multigraph, max_units: usize) -> Result<TuttePolynomial> {
    if g.edge_units() > max_units {
        return Err(Error::BoundExceeded {
            what: "edge units for the Tutte polynomial",
            actual: g.edge_units(),
            limit: max_units,
        });
    }
    Ok(tutte_of(&Mat {
        m: g.multiplicity_matrix(),
    }))
}

/// Tutte polynomial of a multigraph with loops on the diagonal of `mult`;
/// every loop contributes a factor `y`.
pub fn tutte_polynomial_with_loops(mult: &[Vec<u32>], max_units: usize) -> Result<TuttePolynomial> {
    let n = mult.len();
    let loops: u32 = (0..n).map(|i| mult[i][i]).sum();
    let mut m: Vec<Vec<u32>> = mult.to_vec();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 0;
    }
    let g = Mat { m };
    let units = g.units() as usize + loops as usize;
    if units > max_units {
        return Err(Error::BoundExceeded {
            what: "edge units for the Tutte polynomial",
            actual: units,
            limit: max_units,
        });
    }
    Ok(tutte_of(&g).mul(&TuttePolynomial::y().pow(loops as u64)))
}

fn tutte_of(g: &Mat) -> TuttePolynomial {
    let comps: Vec<Vec<usize>> = g.components().into_iter().filter(|c| c.len() > 1).collect();
    match comps.len() {
        0 => TuttePolynomial::one(),
        1 if comps[0].len() == g.n() => tutte_connected(g),
        _ => comps
            .iter()
            .map(|c| tutte_connected(&g.induced(c)))
            .fold(TuttePolynomial::one(), |a, b| a.mul(&b)),
    }
}

fn tutte_connected(g: &Mat) -> TuttePolynomial {
    let n = g.n();
    if n == 1 {
        return TuttePolynomial::one();
    }
    if n == 2 {
        return TuttePolynomial::x()
            .add(&TuttePolynomial::y_geometric(g.m[0][1]).sub(&TuttePolynomial::one()));
    }
    let key = LabeledGraph::from_multiplicities(&g.m).canonical_code();
    if let Some(p) = memo().get(&key) {
        return p;
    }
    // Branch at a vertex of fewest neighbours, on its heaviest class.
    let neighbours = |x: usize| (0..n).filter(|&y| g.m[x][y] > 0).count();
    let u = (0..n).min_by_key(|&x| neighbours(x)).unwrap();
    let v = (0..n)
        .filter(|&y| g.m[u][y] > 0)
        .max_by_key(|&y| g.m[u][y])
        .unwrap();
    let k = g.m[u][v];
    let contracted = tutte_of(&g.contract(u, v));
    let result = if g.connected_without(u, v) {
        tutte_of(&g.without_class(u, v)).add(&TuttePolynomial::y_geometric(k).mul(&contracted))
    } else {
        TuttePolynomial::x()
            .add(&TuttePolynomial::y_geometric(k))
            .sub(&TuttePolynomial::one())
            .mul(&contracted)
    };
    if memo().len() < MEMO_CAP {
        memo().insert(key, result.clone());
    }
    result
}

/// Number of spanning forests, `T(2, 1)`.
pub fn count_forests(g: &Multigraph) -> Result<BigUint> {
    Ok(tutte_polynomial(g)?
        .eval_int(2, 1)
        .to_biguint()
        .expect("nonnegative"))
}

/// Number of acyclic orientations, `T(2, 0)`.
pub fn count_acyclic_orientations(g: &Multigraph) -> Result<BigUint> {
    Ok(tutte_polynomial(g)?
        .eval_int(2, 0)
        .to_biguint()
        .expect("nonnegative"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_spanning_trees;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    /// Rank-generating sum over all unit subsets:
    /// `T(x, y) = sum (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))`, evaluated at integers.
    fn brute_eval(n: usize, units: &[(usize, usize)], x: i64, y: i64) -> BigInt {
        let rank = |mask: u32| {
            let comps = crate::graph::connected_components(
                n,
                units
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e),
            );
            n - comps
        };
        let full = rank((1u32 << units.len()) - 1);
        let mut total = BigInt::from(0);
        for mask in 0u32..(1 << units.len()) {
            let r = rank(mask);
            let a = mask.count_ones() as usize;
            total += BigInt::from(x - 1).pow((full - r) as u32)
                * BigInt::from(y - 1).pow((a - r) as u32);
        }
        total
    }

    fn units_of(g: &Multigraph) -> Vec<(usize, usize)> {
        g.edge_unit_list().iter().map(|e| (e.u, e.v)).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(
            tutte_polynomial(&Multigraph::path(2)).unwrap(),
            TuttePolynomial::x()
        );
        let k3 = tutte_polynomial(&Multigraph::complete(3)).unwrap();
        assert_eq!(k3.to_string(), "x^2 + x + y");
        assert_eq!(
            count_forests(&Multigraph::complete(3)).unwrap(),
            BigUint::from(7u32)
        );
        assert_eq!(
            count_acyclic_orientations(&Multigraph::complete(3)).unwrap(),
            BigUint::from(6u32)
        );
        assert_eq!(
            count_forests(&Multigraph::single_vertex()).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            count_acyclic_orientations(&Multigraph::single_vertex()).unwrap(),
            BigUint::from(1u32)
        );
        // K_4: x^3 + 3x^2 + 2x + 4xy + 2y + 3y^2 + y^3
        let k4 = tutte_polynomial(&Multigraph::complete(4)).unwrap();
        assert_eq!(k4.eval_int(1, 1), BigInt::from(16));
        assert_eq!(k4.coeff(1, 1), BigInt::from(4));
        assert_eq!(k4.coeff(0, 3), BigInt::from(1));
    }

    #[test]
    fn loops_and_parallels() {
        let pair = Multigraph::from_pairs(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(tutte_polynomial(&pair).unwrap().to_string(), "x + y");
        let looped = tutte_polynomial_with_loops(&[vec![1, 1], vec![1, 0]], 24).unwrap();
        assert_eq!(looped.to_string(), "x*y");
    }

    #[test]
    fn bound_is_enforced() {
        let g = Multigraph::complete(8);
        assert!(matches!(
            tutte_polynomial(&g),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(tutte_polynomial_bounded(&g, 28).is_ok());
    }

    #[test]
    fn petersen_spanning_trees() {
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let g = Multigraph::from_pairs(10, &[outer, spokes, inner].concat()).unwrap();
        assert_eq!(
            tutte_polynomial(&g).unwrap().eval_int(1, 1),
            BigInt::from(2000)
        );
    }

    fn small_graph() -> impl Strategy<Value = Multigraph> {
        (
            2usize..6,
            proptest::collection::vec((0usize..6, 0usize..6), 1..10),
        )
            .prop_filter_map("connected", |(n, pairs)| {
                let mut pairs: Vec<(usize, usize)> = pairs
                    .into_iter()
                    .map(|(a, b)| (a % n, b % n))
                    .filter(|(a, b)| a != b)
                    .collect();
                for i in 1..n {
                    pairs.push((i - 1, i));
                }
                Multigraph::from_pairs(n, &pairs)
                    .ok()
                    .filter(|g| g.edge_units() <= 10)
            })
    }

    proptest! {
        #[test]
        fn matches_rank_generating_sum(g in small_graph()) {
            let t = tutte_polynomial(&g).unwrap();
            let u = units_of(&g);
            for (x, y) in [(1, 1), (2, 1), (2, 0), (3, 2), (0, 2)] {
                prop_assert_eq!(t.eval_int(x, y), brute_eval(g.n(), &u, x, y));
            }
            prop_assert!(t.has_nonnegative_coefficients());
            prop_assert_eq!(t.eval_int(1, 1).to_biguint().unwrap(), count_spanning_trees(&g));
        }
    }
}
