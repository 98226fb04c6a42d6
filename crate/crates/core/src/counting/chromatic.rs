//! Chromatic polynomial by deletion-contraction (sparse graphs) or addition-
//! contraction (dense graphs) on simple bitmask graphs.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::symmetry::{CanonicalCache, CanonicalCode, LabeledGraph};

pub const CHROMATIC_MAX_VERTICES: usize = 40;

const MEMO_CAP: usize = 500_000;

/// Coefficients of `P(q)`, lowest degree first.
pub type ChromaticPolynomial = Vec<BigInt>;

fn memo() -> &'static CanonicalCache<CanonicalCode, ChromaticPolynomial> {
    static MEMO: OnceLock<CanonicalCache<CanonicalCode, ChromaticPolynomial>> = OnceLock::new();
    MEMO.get_or_init(CanonicalCache::new)
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn padd(a: &[BigInt], b: &[BigInt], sign: i32) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        if sign > 0 {
            out[i] += v;
        } else {
            out[i] -= v;
        }
    }
    trim(out)
}

fn pmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, u) in a.iter().enumerate() {
        for (j, v) in b.iter().enumerate() {
            out[i + j] += u * v;
        }
    }
    trim(out)
}

/// `q (q - 1) ... (q - n + 1)`.
fn falling(n: usize) -> Vec<BigInt> {
    (0..n).fold(vec![BigInt::one()], |acc, k| {
        pmul(&acc, &[BigInt::from(-(k as i64)), BigInt::one()])
    })
}

pub fn eval_chromatic(p: &[BigInt], q: i64) -> BigInt {
    let q = BigInt::from(q);
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &q + c)
}

fn drop_bit(mask: u64, v: usize) -> u64 {
    let low = mask & ((1u64 << v) - 1);
    let high = if v + 1 >= 64 {
        0
    } else {
        (mask >> (v + 1)) << v
    };
    low | high
}

fn remove_vertex(adj: &[u64], v: usize) -> Vec<u64> {
    adj.iter()
        .enumerate()
        .filter(|&(i, _)| i != v)
        .map(|(_, &m)| drop_bit(m, v))
        .collect()
}

fn contract(adj: &[u64], u: usize, v: usize) -> Vec<u64> {
    let mut a = adj.to_vec();
    let merged = (a[u] | a[v]) & !(1u64 << u) & !(1u64 << v);
    a[u] = merged;
    for (w, m) in a.iter_mut().enumerate() {
        if merged >> w & 1 == 1 {
            *m |= 1u64 << u;
        }
    }
    remove_vertex(&a, v)
}

fn components(adj: &[u64]) -> Vec<u64> {
    let n = adj.len();
    let mut left: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    while left != 0 {
        let s = left.trailing_zeros() as usize;
        let mut comp = 1u64 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[x] & !comp;
            comp |= new;
            frontier |= new;
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

fn restrict(adj: &[u64], comp: u64) -> Vec<u64> {
    let idx: Vec<usize> = (0..adj.len()).filter(|&i| comp >> i & 1 == 1).collect();
    idx.iter()
        .map(|&i| {
            idx.iter()
                .enumerate()
                .filter(|&(_, &j)| adj[i] >> j & 1 == 1)
                .fold(0u64, |m, (k, _)| m | 1u64 << k)
        })
        .collect()
}

fn chromatic(adj: &[u64]) -> Vec<BigInt> {
    let n = adj.len();
    let e2: u32 = adj.iter().map(|m| m.count_ones()).sum();
    let e = e2 as usize / 2;
    if e == 0 {
        let mut p = vec![BigInt::zero(); n + 1];
        p[n] = BigInt::one();
        return p;
    }
    let comps = components(adj);
    if comps.len() > 1 {
        return comps
            .iter()
            .map(|&c| chromatic(&restrict(adj, c)))
            .fold(vec![BigInt::one()], |a, b| pmul(&a, &b));
    }
    if e == n * (n - 1) / 2 {
        return falling(n);
    }
    if e == n - 1 {
        let mut p = vec![BigInt::zero(), BigInt::one()];
        for _ in 1..n {
            p = pmul(&p, &[BigInt::from(-1), BigInt::one()]);
        }
        return p;
    }
    let mult: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| (adj[i] >> j & 1) as u32).collect())
        .collect();
    let key = LabeledGraph::from_multiplicities(&mult).canonical_code();
    if let Some(p) = memo().get(&key) {
        return p;
    }
    let deg = |x: usize| adj[x].count_ones() as usize;
    let result = if 4 * e > n * (n - 1) {
        // Dense: P(G) = P(G + uv) + P(G / uv) for a non-edge uv.
        let u = (0..n)
            .filter(|&x| deg(x) < n - 1)
            .max_by_key(|&x| deg(x))
            .unwrap();
        let v = (0..n).find(|&y| y != u && adj[u] >> y & 1 == 0).unwrap();
        let mut plus = adj.to_vec();
        plus[u] |= 1u64 << v;
        plus[v] |= 1u64 << u;
        padd(&chromatic(&plus), &chromatic(&contract(adj, u, v)), 1)
    } else {
        // Sparse: P(G) = P(G - uv) - P(G / uv).
        let u = (0..n)
            .filter(|&x| deg(x) > 0)
            .min_by_key(|&x| deg(x))
            .unwrap();
        let v = adj[u].trailing_zeros() as usize;
        let mut minus = adj.to_vec();
        minus[u] &= !(1u64 << v);
        minus[v] &= !(1u64 << u);
        padd(&chromatic(&minus), &chromatic(&contract(adj, u, v)), -1)
    };
    if memo().len() < MEMO_CAP {
        memo().insert(key, result.clone());
    }
    result
}

pub(crate) fn simple_adjacency(g: &Multigraph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for e in g.edges() {
        adj[e.u] |= 1u64 << e.v;
        adj[e.v] |= 1u64 << e.u;
    }
    adj
}

pub fn chromatic_polynomial(g: &Multigraph) -> Result<ChromaticPolynomial> {
    if g.n() > CHROMATIC_MAX_VERTICES {
        return Err(Error::BoundExceeded {
            what: "vertices for colourings",
            actual: g.n(),
            limit: CHROMATIC_MAX_VERTICES,
        });
    }
    Ok(chromatic(&simple_adjacency(g)))
}

pub fn count_proper_colorings(g: &Multigraph, q: u64) -> Result<BigInt> {
    Ok(eval_chromatic(&chromatic_polynomial(g)?, q as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::tutte::tutte_polynomial;
    use crate::graph::Rational;
    use proptest::prelude::*;

    fn brute(g: &Multigraph, q: usize) -> u64 {
        let n = g.n();
        let mut count = 0;
        let mut col = vec![0usize; n];
        'outer: loop {
            if g.edges().iter().all(|e| col[e.u] != col[e.v]) {
                count += 1;
            }
            for c in col.iter_mut() {
                *c += 1;
                if *c < q {
                    continue 'outer;
                }
                *c = 0;
            }
            return count;
        }
    }

    #[test]
    fn examples() {
        assert_eq!(
            count_proper_colorings(&Multigraph::path(2), 3).unwrap(),
            6.into()
        );
        assert_eq!(
            count_proper_colorings(&Multigraph::complete(3), 3).unwrap(),
            6.into()
        );
        assert_eq!(
            count_proper_colorings(&Multigraph::path(3), 2).unwrap(),
            2.into()
        );
        assert_eq!(
            count_proper_colorings(&Multigraph::cycle(5), 3).unwrap(),
            30.into()
        );
        assert_eq!(
            count_proper_colorings(&Multigraph::complete(6), 5).unwrap(),
            0.into()
        );
    }

    #[test]
    fn forty_vertex_path() {
        let p = Multigraph::path(40);
        assert_eq!(
            count_proper_colorings(&p, 3).unwrap(),
            BigInt::from(3) * BigInt::from(2).pow(39)
        );
        assert!(chromatic_polynomial(&Multigraph::path(41)).is_err());
    }

    fn small_graph() -> impl Strategy<Value = Multigraph> {
        (
            2usize..7,
            proptest::collection::vec((0usize..7, 0usize..7), 0..14),
        )
            .prop_filter_map("connected", |(n, pairs)| {
                let mut pairs: Vec<(usize, usize)> = pairs
                    .into_iter()
                    .map(|(a, b)| (a % n, b % n))
                    .filter(|(a, b)| a != b)
                    .collect();
                for i in 1..n {
                    pairs.push((0, i).min((i - 1, i)));
                }
                Multigraph::from_pairs(n, &pairs).ok()
            })
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force_and_tutte(g in small_graph()) {
            let p = chromatic_polynomial(&g).unwrap();
            for q in 1..4usize {
                prop_assert_eq!(eval_chromatic(&p, q as i64), BigInt::from(brute(&g, q)));
            }
            // P(G; q) = (-1)^(|V|-1) q T(1-q, 0) for connected G.
            if g.edge_units() <= 20 {
                let t = tutte_polynomial(&g).unwrap();
                for q in 0..5i64 {
                    let sign = if (g.n() - 1) % 2 == 0 { 1 } else { -1 };
                    let rhs = t.eval(&Rational::from_integer((1 - q).into()), &Rational::zero())
                        * Rational::from_integer((sign * q).into());
                    prop_assert_eq!(Rational::from_integer(eval_chromatic(&p, q)), rhs);
                }
            }
        }
    }
}
