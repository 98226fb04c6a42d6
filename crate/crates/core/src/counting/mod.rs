//! Exact counters: spanning trees, Laplacian minors, Tutte and chromatic
//! polynomials, independent sets, homomorphisms, matchings and packings.

mod chromatic;
mod poly;
mod tutte;

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::embedding::enumerate_copies;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, Rational, VertexSet};
use crate::linalg::bareiss_det;

pub use chromatic::{
    chromatic_polynomial, count_proper_colorings, eval_chromatic, ChromaticPolynomial,
    CHROMATIC_MAX_VERTICES,
};
pub use poly::TuttePolynomial;
pub use tutte::{
    count_acyclic_orientations, count_forests, tutte_polynomial, tutte_polynomial_bounded,
    tutte_polynomial_with_loops, DEFAULT_TUTTE_BOUND,
};

pub const INDEPENDENT_SET_MAX_VERTICES: usize = 40;
pub const MATCHING_MAX_VERTICES: usize = 64;
pub const HOMOMORPHISM_MAX_VERTICES: usize = 24;
pub const PACKING_COPY_LIMIT: usize = 100_000;

/// Spanning trees counted with multiplicity; weights are ignored.
pub fn count_spanning_trees(g: &Multigraph) -> BigUint {
    let n = g.n();
    if n == 1 {
        return BigUint::one();
    }
    let mm = g.multiplicity_matrix();
    let reduced: Vec<Vec<BigInt>> = (0..n - 1)
        .map(|i| {
            (0..n - 1)
                .map(|j| {
                    if i == j {
                        BigInt::from(mm[i].iter().map(|&m| m as u64).sum::<u64>())
                    } else {
                        -BigInt::from(mm[i][j])
                    }
                })
                .collect()
        })
        .collect();
    bareiss_det(reduced)
        .to_biguint()
        .expect("reduced Laplacian determinant is nonnegative")
}

/// Principal minor of the weighted Laplacian on `a`, with the empty minor 1.
pub fn laplacian_minor(g: &Multigraph, a: &VertexSet) -> Result<Rational> {
    if let Some(&x) = a.as_slice().iter().find(|&&x| x >= g.n()) {
        return Err(Error::VertexOutOfRange {
            vertex: x,
            n: g.n(),
        });
    }
    if a.is_empty() {
        return Ok(Rational::one());
    }
    Ok(g.laplacian().principal(a.as_slice()).det())
}

fn check_vertices(g: &Multigraph, limit: usize, what: &'static str) -> Result<()> {
    if g.n() > limit {
        return Err(Error::BoundExceeded {
            what,
            actual: g.n(),
            limit,
        });
    }
    Ok(())
}

/// Vertex subsets spanning no edge, the empty set included.
pub fn count_independent_sets(g: &Multigraph) -> Result<BigUint> {
    check_vertices(
        g,
        INDEPENDENT_SET_MAX_VERTICES,
        "vertices for independent sets",
    )?;
    let adj = chromatic::simple_adjacency(g);
    let mut memo = HashMap::new();
    let full = (1u64 << g.n()) - 1;
    Ok(BigUint::from(independent(&adj, full, &mut memo)))
}

fn independent(adj: &[u64], mask: u64, memo: &mut HashMap<u64, u64>) -> u64 {
    if mask == 0 {
        return 1;
    }
    if let Some(&c) = memo.get(&mask) {
        return c;
    }
    let mut best = (0u32, mask.trailing_zeros() as usize);
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & mask).count_ones();
        if d > best.0 {
            best = (d, v);
        }
    }
    let (d, v) = best;
    let c = if d == 0 {
        1u64 << mask.count_ones()
    } else {
        independent(adj, mask & !(1u64 << v), memo)
            + independent(adj, mask & !(1u64 << v) & !adj[v], memo)
    };
    memo.insert(mask, c);
    c
}

/// Target of a homomorphism: a simple graph where loops are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetGraph {
    adj: Vec<u64>,
}

impl TargetGraph {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > 64 {
            return Err(Error::BoundExceeded {
                what: "target vertices",
                actual: n,
                limit: 64,
            });
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in pairs {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            adj[u] |= 1u64 << v;
            adj[v] |= 1u64 << u;
        }
        Ok(TargetGraph { adj })
    }

    pub fn from_graph(g: &Multigraph) -> Self {
        TargetGraph {
            adj: chromatic::simple_adjacency(g),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }
}

/// Positive vertex weights on a homomorphism target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction(Vec<Rational>);

impl WeightFunction {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::Domain(format!("vertex weight {w} is not positive")));
        }
        Ok(WeightFunction(weights))
    }

    pub fn uniform(n: usize) -> Self {
        WeightFunction(vec![Rational::one(); n])
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }
}

/// Sum over homomorphisms `phi: G -> F` of `prod_x w(phi(x))`.
pub fn count_weighted_homomorphisms(
    g: &Multigraph,
    f: &TargetGraph,
    w: &WeightFunction,
) -> Result<Rational> {
    count_weighted_homomorphisms_bounded(g, f, w, HOMOMORPHISM_MAX_VERTICES)
}

pub fn count_weighted_homomorphisms_bounded(
    g: &Multigraph,
    f: &TargetGraph,
    w: &WeightFunction,
    max_vertices: usize,
) -> Result<Rational> {
    check_vertices(g, max_vertices, "vertices for homomorphisms")?;
    if w.0.len() != f.n() {
        return Err(Error::Param(format!(
            "{} weights for a target on {} vertices",
            w.0.len(),
            f.n()
        )));
    }
    // Integer weights over a common denominator.
    let den = w.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let iw: Vec<BigInt> = w.0.iter().map(|x| x.numer() * (&den / x.denom())).collect();

    // Breadth-first order keeps every later vertex attached to an earlier one.
    let n = g.n();
    let adj = chromatic::simple_adjacency(g);
    let mut order = vec![0usize];
    let mut placed = 1u64;
    let mut i = 0;
    while i < order.len() {
        let mut nb = adj[order[i]] & !placed;
        while nb != 0 {
            let y = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            placed |= 1u64 << y;
            order.push(y);
        }
        i += 1;
    }
    let back: Vec<Vec<usize>> = (0..n)
        .map(|k| {
            (0..k)
                .filter(|&j| adj[order[k]] >> order[j] & 1 == 1)
                .collect()
        })
        .collect();
    let all = if f.n() == 64 {
        u64::MAX
    } else {
        (1u64 << f.n()) - 1
    };

    fn rec(
        k: usize,
        image: &mut Vec<usize>,
        back: &[Vec<usize>],
        f: &TargetGraph,
        iw: &[BigInt],
        all: u64,
    ) -> BigInt {
        if k == back.len() {
            return BigInt::one();
        }
        let mut allowed = all;
        for &j in &back[k] {
            allowed &= f.adj[image[j]];
        }
        let mut total = BigInt::zero();
        while allowed != 0 {
            let t = allowed.trailing_zeros() as usize;
            allowed &= allowed - 1;
            image.push(t);
            let sub = rec(k + 1, image, back, f, iw, all);
            image.pop();
            if !sub.is_zero() {
                total += sub * &iw[t];
            }
        }
        total
    }

    let total = rec(0, &mut Vec::with_capacity(n), &back, f, &iw, all);
    Ok(Rational::new(total, num_traits::pow(den, n)))
}

/// Sets of pairwise disjoint edge units, the empty set included.
pub fn count_matchings(g: &Multigraph) -> Result<BigUint> {
    check_vertices(g, MATCHING_MAX_VERTICES, "vertices for matchings")?;
    let mm = g.multiplicity_matrix();
    let n = g.n();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(matchings(&mm, full, &mut memo))
}

fn matchings(mm: &[Vec<u32>], mask: u64, memo: &mut HashMap<u64, BigUint>) -> BigUint {
    if mask.count_ones() < 2 {
        return BigUint::one();
    }
    if let Some(c) = memo.get(&mask) {
        return c.clone();
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << v);
    let mut total = matchings(mm, rest, memo);
    let mut others = rest;
    while others != 0 {
        let u = others.trailing_zeros() as usize;
        others &= others - 1;
        if mm[v][u] > 0 {
            total += matchings(mm, rest & !(1u64 << u), memo) * mm[v][u];
        }
    }
    memo.insert(mask, total.clone());
    total
}

/// Sets of pairwise vertex-disjoint copies of `k`, the empty set included.
/// Copies differing only in which parallel units they use are distinct.
pub fn count_packings(g: &Multigraph, k: &Multigraph) -> Result<BigUint> {
    check_vertices(g, 64, "vertices for packings")?;
    if k.n() > g.n() {
        return Ok(BigUint::one());
    }
    let list = enumerate_copies(g, k, Some(PACKING_COPY_LIMIT))?;
    if !list.complete {
        return Err(Error::BoundExceeded {
            what: "copies for packings",
            actual: list.copies.len(),
            limit: PACKING_COPY_LIMIT,
        });
    }
    let mut by_mask: HashMap<u64, u64> = HashMap::new();
    for c in &list.copies {
        let m = c
            .subgraph
            .vertices
            .as_slice()
            .iter()
            .fold(0u64, |m, &x| m | 1u64 << x);
        *by_mask.entry(m).or_default() += 1;
    }
    // Copies indexed by their smallest vertex.
    let mut by_min: Vec<Vec<(u64, u64)>> = vec![Vec::new(); g.n()];
    for (m, c) in by_mask {
        by_min[m.trailing_zeros() as usize].push((m, c));
    }
    let full = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    let mut memo = HashMap::new();
    Ok(packings(&by_min, full, &mut memo))
}

fn packings(by_min: &[Vec<(u64, u64)>], mask: u64, memo: &mut HashMap<u64, BigUint>) -> BigUint {
    if mask == 0 {
        return BigUint::one();
    }
    if let Some(c) = memo.get(&mask) {
        return c.clone();
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << v);
    let mut total = packings(by_min, rest, memo);
    for &(m, c) in &by_min[v] {
        if m & !mask == 0 {
            total += packings(by_min, mask & !m, memo) * c;
        }
    }
    memo.insert(mask, total.clone());
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rat;
    use proptest::prelude::*;

    fn parallel_pair() -> Multigraph {
        Multigraph::from_pairs(2, &[(0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn spanning_tree_examples() {
        assert_eq!(
            count_spanning_trees(&Multigraph::complete(3)),
            BigUint::from(3u32)
        );
        assert_eq!(
            count_spanning_trees(&Multigraph::complete(4)),
            BigUint::from(16u32)
        );
        assert_eq!(count_spanning_trees(&parallel_pair()), BigUint::from(2u32));
        assert_eq!(
            count_spanning_trees(&Multigraph::single_vertex()),
            BigUint::one()
        );
        assert_eq!(
            count_spanning_trees(&Multigraph::complete(10)),
            BigUint::from(10u64.pow(8))
        );
    }

    #[test]
    fn minor_examples() {
        let p3 = Multigraph::path(3);
        assert_eq!(laplacian_minor(&p3, &VertexSet::empty()).unwrap(), rat(1));
        assert_eq!(
            laplacian_minor(&p3, &VertexSet::new([0, 2], 3).unwrap()).unwrap(),
            rat(1)
        );
        let k3 = Multigraph::complete(3);
        assert_eq!(
            laplacian_minor(&k3, &VertexSet::new([0, 1], 3).unwrap()).unwrap(),
            rat(3)
        );
    }

    #[test]
    fn independent_set_examples() {
        assert_eq!(
            count_independent_sets(&Multigraph::path(2)).unwrap(),
            BigUint::from(3u32)
        );
        assert_eq!(
            count_independent_sets(&Multigraph::star(4)).unwrap(),
            BigUint::from(17u32)
        );
        assert_eq!(
            count_independent_sets(&Multigraph::complete(3)).unwrap(),
            BigUint::from(4u32)
        );
        // Fibonacci numbers on paths.
        assert_eq!(
            count_independent_sets(&Multigraph::path(40)).unwrap(),
            BigUint::from(267_914_296u64)
        );
        assert!(count_independent_sets(&Multigraph::path(41)).is_err());
    }

    #[test]
    fn homomorphism_examples() {
        let looped = TargetGraph::new(1, &[(0, 0)]).unwrap();
        let w1 = WeightFunction::uniform(1);
        for g in [Multigraph::complete(4), Multigraph::path(5)] {
            assert_eq!(
                count_weighted_homomorphisms(&g, &looped, &w1).unwrap(),
                rat(1)
            );
        }
        let hard_core = TargetGraph::new(2, &[(0, 1), (0, 0)]).unwrap();
        assert_eq!(
            count_weighted_homomorphisms(
                &Multigraph::path(2),
                &hard_core,
                &WeightFunction::uniform(2)
            )
            .unwrap(),
            rat(3)
        );
        let k3 = TargetGraph::from_graph(&Multigraph::complete(3));
        assert_eq!(
            count_weighted_homomorphisms(&Multigraph::path(2), &k3, &WeightFunction::uniform(3))
                .unwrap(),
            rat(6)
        );
        assert!(WeightFunction::new(vec![rat(1), rat(0)]).is_err());
    }

    #[test]
    fn matching_and_packing_examples() {
        assert_eq!(
            count_matchings(&Multigraph::path(2)).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            count_matchings(&Multigraph::star(4)).unwrap(),
            BigUint::from(5u32)
        );
        assert_eq!(
            count_matchings(&parallel_pair()).unwrap(),
            BigUint::from(3u32)
        );
        let edge = Multigraph::path(2);
        assert_eq!(
            count_packings(&Multigraph::star(4), &edge).unwrap(),
            BigUint::from(5u32)
        );
        let k3 = Multigraph::complete(3);
        assert_eq!(count_packings(&k3, &k3).unwrap(), BigUint::from(2u32));
        assert_eq!(
            count_packings(&Multigraph::path(3), &k3).unwrap(),
            BigUint::one()
        );
    }

    fn small_graph(max_n: usize) -> impl Strategy<Value = Multigraph> {
        (
            2usize..=max_n,
            proptest::collection::vec((0usize..16, 0usize..16), 0..14),
        )
            .prop_filter_map("connected", move |(n, pairs)| {
                let mut pairs: Vec<(usize, usize)> = pairs
                    .into_iter()
                    .map(|(a, b)| (a % n, b % n))
                    .filter(|(a, b)| a != b)
                    .collect();
                for i in 1..n {
                    pairs.push((i / 2, i));
                }
                Multigraph::from_pairs(n, &pairs).ok()
            })
    }

    fn brute_independent(g: &Multigraph) -> u64 {
        (0u64..1 << g.n())
            .filter(|s| {
                g.edges()
                    .iter()
                    .all(|e| s >> e.u & 1 == 0 || s >> e.v & 1 == 0)
            })
            .count() as u64
    }

    fn brute_matchings(g: &Multigraph) -> u64 {
        let units = g.edge_unit_list();
        (0u64..1 << units.len())
            .filter(|s| {
                let mut used = 0u64;
                units
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| s >> i & 1 == 1)
                    .all(|(_, e)| {
                        let m = 1u64 << e.u | 1u64 << e.v;
                        let ok = used & m == 0;
                        used |= m;
                        ok
                    })
            })
            .count() as u64
    }

    /// Integer weights by blowing each target vertex up into that many twins.
    fn blown_up(f: &TargetGraph, w: &[usize]) -> TargetGraph {
        let owner: Vec<usize> = w
            .iter()
            .enumerate()
            .flat_map(|(t, &k)| std::iter::repeat_n(t, k))
            .collect();
        let mut pairs = Vec::new();
        for a in 0..owner.len() {
            for b in a..owner.len() {
                if f.adjacent(owner[a], owner[b]) {
                    pairs.push((a, b));
                }
            }
        }
        TargetGraph::new(owner.len(), &pairs).unwrap()
    }

    proptest! {
        #[test]
        fn counters_match_brute_force(g in small_graph(7)) {
            prop_assert_eq!(count_independent_sets(&g).unwrap(), BigUint::from(brute_independent(&g)));
            if g.edge_units() <= 16 {
                prop_assert_eq!(count_matchings(&g).unwrap(), BigUint::from(brute_matchings(&g)));
            }
            prop_assert_eq!(count_packings(&g, &Multigraph::path(2)).unwrap(), count_matchings(&g).unwrap());
            let hard_core = TargetGraph::new(2, &[(0, 1), (0, 0)]).unwrap();
            prop_assert_eq!(
                count_weighted_homomorphisms(&g, &hard_core, &WeightFunction::uniform(2)).unwrap(),
                Rational::from_integer(BigInt::from(brute_independent(&g)))
            );
            let k3 = TargetGraph::from_graph(&Multigraph::complete(3));
            prop_assert_eq!(
                count_weighted_homomorphisms(&g, &k3, &WeightFunction::uniform(3)).unwrap(),
                Rational::from_integer(count_proper_colorings(&g, 3).unwrap())
            );
        }

        #[test]
        fn weighted_homomorphisms_match_blow_up(g in small_graph(5), w in proptest::collection::vec(1usize..4, 3)) {
            let f = TargetGraph::new(3, &[(0, 1), (1, 2), (2, 2), (0, 0)]).unwrap();
            let weights = WeightFunction::new(w.iter().map(|&k| rat(k as i64)).collect()).unwrap();
            let weighted = count_weighted_homomorphisms(&g, &f, &weights).unwrap();
            let big = blown_up(&f, &w);
            let plain = count_weighted_homomorphisms(&g, &big, &WeightFunction::uniform(big.n())).unwrap();
            prop_assert_eq!(weighted, plain);
        }

        #[test]
        fn koteljanskii(g in small_graph(6), a in 0u64..64, b in 0u64..64) {
            let n = g.n();
            let mask = (1u64 << n) - 1;
            let a = VertexSet::from_mask(a & mask, n);
            let b = VertexSet::from_mask(b & mask, n);
            let m = |s: &VertexSet| laplacian_minor(&g, s).unwrap();
            prop_assert!(m(&a) * m(&b) >= m(&a.union(&b)) * m(&a.intersection(&b)));
        }
    }

    #[test]
    fn minors_are_contracted_tree_counts() {
        // Deleting the rows of W counts spanning trees of G / W.
        let g =
            Multigraph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        for mask in 1u64..31 {
            let w = VertexSet::from_mask(mask, 5);
            let contracted = g.contract_vertices(&w).unwrap().graph;
            let minor = laplacian_minor(&g, &w.complement(5)).unwrap();
            assert_eq!(
                minor,
                Rational::from_integer(count_spanning_trees(&contracted).into())
            );
        }
    }

    #[test]
    fn subgraph_contraction_lemma() {
        use crate::graph::Subgraph;
        // tau(H) tau(G // H) <= tau(G) over every connected subgraph of small graphs.
        for g in [
            Multigraph::complete(4),
            Multigraph::grid(2, 3),
            Multigraph::from_pairs(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 4)])
                .unwrap(),
        ] {
            let units = g.edge_unit_list();
            let tau_g = count_spanning_trees(&g);
            for mask in 1u64..(1 << units.len()) {
                let edges: Vec<_> = units
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| *e)
                    .collect();
                let vs = VertexSet::new(edges.iter().flat_map(|e| [e.u, e.v]), g.n()).unwrap();
                let sub = Subgraph {
                    vertices: vs,
                    edges,
                };
                let Ok(h) = g.subgraph_graph(&sub) else {
                    continue;
                };
                let q = g.contract_subgraph_edges(&sub).unwrap().graph;
                assert!(count_spanning_trees(&h) * count_spanning_trees(&q) <= tau_g);
            }
        }
    }
}
