//! Finite connected multigraphs with exact rational edge weights, plus the
//! surgery operations (contraction, subdivision) the comparison theory uses.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `7`, `-3/4` or a plain decimal such as `1.25` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n.trim().parse().ok()?, d));
    }
    match s.split_once('.') {
        Some((int, frac)) => {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let neg = int.starts_with('-');
            let int = if int.is_empty() || int == "-" || int == "+" {
                "0"
            } else {
                int
            };
            let whole: BigInt = int.parse().ok()?;
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let f = Rational::new(frac.parse().ok()?, scale);
            let w = Rational::from_integer(whole.abs());
            Some(if neg { -(w + f) } else { w + f })
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// A class of parallel edges between `u < v` sharing one weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub mult: u32,
    pub weight: Rational,
}

impl Edge {
    pub fn unit(u: usize, v: usize) -> Self {
        Edge::new(u, v, 1, Rational::one())
    }

    pub fn new(u: usize, v: usize, mult: u32, weight: Rational) -> Self {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        Edge { u, v, mult, weight }
    }
}

/// One unit of multiplicity on the vertex pair `u < v`. Units on a pair are
/// numbered `0..total multiplicity` in the order of the graph's edge list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeUnit {
    pub u: usize,
    pub v: usize,
    pub k: u32,
}

/// Sorted, duplicate-free set of vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new<I: IntoIterator<Item = usize>>(items: I, n: usize) -> Result<Self> {
        let set: BTreeSet<usize> = items.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n });
        }
        Ok(VertexSet(set.into_iter().collect()))
    }

    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn from_mask(mask: u64, n: usize) -> Self {
        VertexSet((0..n).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn complement(&self, n: usize) -> Self {
        VertexSet((0..n).filter(|&x| !self.contains(x)).collect())
    }

    pub fn union(&self, other: &Self) -> Self {
        let s: BTreeSet<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        VertexSet(s.into_iter().collect())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        VertexSet(
            self.0
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        )
    }

    pub fn difference(&self, other: &Self) -> Self {
        VertexSet(
            self.0
                .iter()
                .copied()
                .filter(|&x| !other.contains(x))
                .collect(),
        )
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }
}

/// A subgraph of a host multigraph: a vertex set together with a set of
/// edge units whose endpoints lie in it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgraph {
    pub vertices: VertexSet,
    pub edges: Vec<EdgeUnit>,
}

/// Result of identifying vertices: the new graph, where each old vertex went,
/// and how many edge units became loops and were dropped.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Multigraph,
    pub vertex_map: Vec<usize>,
    pub discarded_loops: u64,
}

/// Finite connected loopless multigraph with positive rational weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
}

impl Multigraph {
    /// Validates and normalises: endpoints ordered, classes with equal pair and
    /// weight merged, edges sorted.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        for e in &edges {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if e.u == e.v {
                return Err(Error::LoopInInput(e.u));
            }
            if e.mult == 0 {
                return Err(Error::InvalidEdge(format!(
                    "zero multiplicity on {}-{}",
                    e.u, e.v
                )));
            }
            if !e.weight.is_positive() {
                return Err(Error::InvalidEdge(format!(
                    "non-positive weight {} on {}-{}",
                    e.weight, e.u, e.v
                )));
            }
        }
        let g = Multigraph {
            n,
            edges: normalize(edges),
            labels: None,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Unit-weight graph from a list of vertex pairs; repeated pairs become
    /// parallel edges.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Multigraph::new(n, pairs.iter().map(|&(u, v)| Edge::unit(u, v)).collect())
    }

    fn from_normalized(n: usize, edges: Vec<Edge>) -> Self {
        Multigraph {
            n,
            edges: normalize(edges),
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidEdge(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn single_vertex() -> Self {
        Multigraph::from_normalized(1, Vec::new())
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Multigraph::from_pairs(n.max(1), &pairs).expect("path is connected")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_pairs(n, &pairs).expect("cycle is connected")
    }

    pub fn complete(n: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        Multigraph::from_pairs(n.max(1), &pairs).expect("complete graph is connected")
    }

    /// `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Multigraph::from_pairs(leaves + 1, &pairs).expect("star is connected")
    }

    pub fn grid(rows: usize, cols: usize) -> Self {
        let id = |r: usize, c: usize| r * cols + c;
        let mut pairs = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    pairs.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    pairs.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        Multigraph::from_pairs(rows * cols, &pairs).expect("grid is connected")
    }

    pub fn hypercube(dim: usize) -> Self {
        let n = 1usize << dim;
        let mut pairs = Vec::new();
        for x in 0..n {
            for b in 0..dim {
                let y = x ^ (1 << b);
                if x < y {
                    pairs.push((x, y));
                }
            }
        }
        Multigraph::from_pairs(n, &pairs).expect("hypercube is connected")
    }

    /// Circulant graph on `Z_n` joining `i` to `i ± s` for each jump `s`.
    pub fn circulant(n: usize, jumps: &[usize]) -> Result<Self> {
        let mut pairs = BTreeSet::new();
        for i in 0..n {
            for &s in jumps {
                let s = s % n;
                if s == 0 {
                    continue;
                }
                let j = (i + s) % n;
                pairs.insert((i.min(j), i.max(j)));
            }
        }
        let pairs: Vec<_> = pairs.into_iter().collect();
        Multigraph::from_pairs(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Number of edge units (edges counted with multiplicity).
    pub fn edge_units(&self) -> usize {
        self.edges.iter().map(|e| e.mult as usize).sum()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .all(|e| e.mult == 1 && seen.insert((e.u, e.v)))
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    /// Same graph with every weight reset to 1.
    pub fn unweighted(&self) -> Self {
        Multigraph::from_normalized(
            self.n,
            self.edges
                .iter()
                .map(|e| Edge::new(e.u, e.v, e.mult, Rational::one()))
                .collect(),
        )
    }

    /// Same graph with every weight multiplied by `factor` (> 0).
    pub fn scaled(&self, factor: &Rational) -> Self {
        Multigraph::from_normalized(
            self.n,
            self.edges
                .iter()
                .map(|e| Edge::new(e.u, e.v, e.mult, &e.weight * factor))
                .collect(),
        )
    }

    /// Total multiplicity on the pair `{u, v}` across all weight classes.
    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        let (u, v) = (u.min(v), u.max(v));
        self.edges
            .iter()
            .filter(|e| e.u == u && e.v == v)
            .map(|e| e.mult)
            .sum()
    }

    /// Neighbour lists `(neighbour, total multiplicity)`, sorted by neighbour.
    pub fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); self.n];
        for e in &self.edges {
            push_mult(&mut adj[e.u], e.v, e.mult);
            push_mult(&mut adj[e.v], e.u, e.mult);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Dense matrix of total multiplicities.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<u32>> {
        let mut m = vec![vec![0u32; self.n]; self.n];
        for e in &self.edges {
            m[e.u][e.v] += e.mult;
            m[e.v][e.u] += e.mult;
        }
        m
    }

    /// Degree counted in edge units.
    pub fn degree(&self, v: usize) -> u32 {
        self.edges
            .iter()
            .filter(|e| e.u == v || e.v == v)
            .map(|e| e.mult)
            .sum()
    }

    /// Sum over edge units of their weights.
    pub fn total_weight(&self) -> Rational {
        self.edges
            .iter()
            .map(|e| &e.weight * rat(e.mult as i64))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// All edge units in canonical order.
    pub fn edge_unit_list(&self) -> Vec<EdgeUnit> {
        let mut out = Vec::with_capacity(self.edge_units());
        let mut current: Option<(usize, usize)> = None;
        let mut k = 0u32;
        for e in &self.edges {
            if current != Some((e.u, e.v)) {
                current = Some((e.u, e.v));
                k = 0;
            }
            for _ in 0..e.mult {
                out.push(EdgeUnit { u: e.u, v: e.v, k });
                k += 1;
            }
        }
        out
    }

    /// Weight carried by a particular edge unit, if it exists.
    pub fn unit_weight(&self, unit: &EdgeUnit) -> Option<Rational> {
        let mut k = unit.k;
        for e in self.edges.iter().filter(|e| e.u == unit.u && e.v == unit.v) {
            if k < e.mult {
                return Some(e.weight.clone());
            }
            k -= e.mult;
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self.n, self.edges.iter().map(|e| (e.u, e.v))) == 1
    }

    /// Weighted Laplacian: off-diagonal `-(sum of weight * multiplicity)`,
    /// zero row sums.
    pub fn laplacian(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.n);
        for e in &self.edges {
            let w = &e.weight * rat(e.mult as i64);
            m.add(e.u, e.v, &-w.clone());
            m.add(e.v, e.u, &-w.clone());
            m.add(e.u, e.u, &w);
            m.add(e.v, e.v, &w);
        }
        m
    }

    /// Whether removing a single edge unit disconnects the graph.
    pub fn has_cut_edge(&self) -> bool {
        let mm = self.multiplicity_matrix();
        self.edges.iter().any(|e| {
            mm[e.u][e.v] == 1
                && connected_components(
                    self.n,
                    self.edges
                        .iter()
                        .filter(|f| !(f.u == e.u && f.v == e.v))
                        .map(|f| (f.u, f.v)),
                ) > 1
        })
    }

    /// Identifies all vertices of `w` into one vertex (placed at the position
    /// of the smallest member). Parallel edges are kept; loops are dropped and
    /// counted.
    pub fn contract_vertices(&self, w: &VertexSet) -> Result<Contraction> {
        if w.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        if let Some(&bad) = w.as_slice().iter().find(|&&x| x >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                n: self.n,
            });
        }
        let classes: Vec<usize> = (0..self.n)
            .map(|x| if w.contains(x) { w.as_slice()[0] } else { x })
            .collect();
        Ok(self.contract_classes(&classes))
    }

    /// `G_A`: contracts the complement of `a`. `a = V` gives the graph back and
    /// `a = ∅` gives a single vertex.
    pub fn contract_complement(&self, a: &VertexSet) -> Result<Contraction> {
        if let Some(&bad) = a.as_slice().iter().find(|&&x| x >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                n: self.n,
            });
        }
        if a.len() == self.n {
            return Ok(Contraction {
                graph: self.clone(),
                vertex_map: (0..self.n).collect(),
                discarded_loops: 0,
            });
        }
        self.contract_vertices(&a.complement(self.n))
    }

    /// `G // H`: contracts every edge of the subgraph, one vertex per connected
    /// component of `sub`.
    pub fn contract_subgraph_edges(&self, sub: &Subgraph) -> Result<Contraction> {
        self.check_subgraph(sub)?;
        let mut uf: Vec<usize> = (0..self.n).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut c = x;
            while uf[c] != r {
                let next = uf[c];
                uf[c] = r;
                c = next;
            }
            r
        }
        for e in &sub.edges {
            let (a, b) = (find(&mut uf, e.u), find(&mut uf, e.v));
            if a != b {
                uf[a.max(b)] = a.min(b);
            }
        }
        let classes: Vec<usize> = (0..self.n).map(|x| find(&mut uf, x)).collect();
        Ok(self.contract_classes(&classes))
    }

    pub fn check_subgraph(&self, sub: &Subgraph) -> Result<()> {
        if let Some(&bad) = sub.vertices.as_slice().iter().find(|&&x| x >= self.n) {
            return Err(Error::SubgraphMismatch(format!("vertex {bad} not in host")));
        }
        let mut seen = BTreeSet::new();
        for e in &sub.edges {
            if !sub.vertices.contains(e.u) || !sub.vertices.contains(e.v) {
                return Err(Error::SubgraphMismatch(format!(
                    "edge {}-{} leaves the subgraph's vertex set",
                    e.u, e.v
                )));
            }
            if e.u >= e.v || e.k >= self.multiplicity(e.u, e.v) {
                return Err(Error::SubgraphMismatch(format!(
                    "edge unit {}-{}#{} not in host",
                    e.u, e.v, e.k
                )));
            }
            if !seen.insert(*e) {
                return Err(Error::SubgraphMismatch(format!(
                    "edge unit {}-{}#{} repeated",
                    e.u, e.v, e.k
                )));
            }
        }
        Ok(())
    }

    /// Standalone graph of a subgraph, vertices renumbered in increasing order.
    /// Weights are taken from the host units. May be disconnected only if the
    /// subgraph is.
    pub fn subgraph_graph(&self, sub: &Subgraph) -> Result<Multigraph> {
        self.check_subgraph(sub)?;
        let index = |x: usize| sub.vertices.as_slice().binary_search(&x).unwrap();
        let edges = sub
            .edges
            .iter()
            .map(|e| {
                let w = self.unit_weight(e).expect("checked unit");
                Edge::new(index(e.u), index(e.v), 1, w)
            })
            .collect();
        let g = Multigraph::from_normalized(sub.vertices.len().max(1), edges);
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Replaces one unit of edge class `e` by a two-edge path through a new
    /// vertex `n`, both halves keeping the weight.
    pub fn subdivide_edge(&self, e: usize) -> Result<Multigraph> {
        let target = self.edges.get(e).ok_or(Error::MissingEdge(e))?.clone();
        let mut edges = self.edges.clone();
        if target.mult == 1 {
            edges.remove(e);
        } else {
            edges[e].mult -= 1;
        }
        let z = self.n;
        edges.push(Edge::new(target.u, z, 1, target.weight.clone()));
        edges.push(Edge::new(z, target.v, 1, target.weight));
        Ok(Multigraph::from_normalized(self.n + 1, edges))
    }

    /// Induced subgraph on `vs` (renumbered in the order given).
    pub fn induced(&self, vs: &[usize]) -> Result<Multigraph> {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &x) in vs.iter().enumerate() {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
            pos[x] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| pos[e.u] != usize::MAX && pos[e.v] != usize::MAX)
            .map(|e| Edge::new(pos[e.u], pos[e.v], e.mult, e.weight.clone()))
            .collect();
        let g = Multigraph::from_normalized(vs.len().max(1), edges);
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Relabels vertex `x` as `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> Multigraph {
        assert_eq!(perm.len(), self.n);
        Multigraph::from_normalized(
            self.n,
            self.edges
                .iter()
                .map(|e| Edge::new(perm[e.u], perm[e.v], e.mult, e.weight.clone()))
                .collect(),
        )
    }

    fn contract_classes(&self, classes: &[usize]) -> Contraction {
        let mut new_id = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut vertex_map = vec![0; self.n];
        for x in 0..self.n {
            let c = classes[x];
            if new_id[c] == usize::MAX {
                new_id[c] = next;
                next += 1;
            }
            vertex_map[x] = new_id[c];
        }
        let mut discarded_loops = 0u64;
        let mut edges = Vec::new();
        for e in &self.edges {
            let (a, b) = (vertex_map[e.u], vertex_map[e.v]);
            if a == b {
                discarded_loops += e.mult as u64;
            } else {
                edges.push(Edge::new(a, b, e.mult, e.weight.clone()));
            }
        }
        Contraction {
            graph: Multigraph::from_normalized(next, edges),
            vertex_map,
            discarded_loops,
        }
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::to_edge_list(self))
    }
}

fn push_mult(list: &mut Vec<(usize, u32)>, v: usize, m: u32) {
    if let Some(entry) = list.iter_mut().find(|(x, _)| *x == v) {
        entry.1 += m;
    } else {
        list.push((v, m));
    }
}

fn normalize(mut edges: Vec<Edge>) -> Vec<Edge> {
    for e in &mut edges {
        if e.u > e.v {
            std::mem::swap(&mut e.u, &mut e.v);
        }
    }
    edges.sort_by(|a, b| (a.u, a.v, &a.weight).cmp(&(b.u, b.v, &b.weight)));
    let mut out: Vec<Edge> = Vec::with_capacity(edges.len());
    for e in edges {
        match out.last_mut() {
            Some(last) if last.u == e.u && last.v == e.v && last.weight == e.weight => {
                last.mult += e.mult
            }
            _ => out.push(e),
        }
    }
    out
}

/// Number of connected components of the graph on `0..n` with the given edges.
pub fn connected_components<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = n;
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Multigraph::from_pairs(3, &[(0, 1)]),
            Err(Error::Disconnected)
        );
        assert_eq!(
            Multigraph::from_pairs(2, &[(1, 1)]),
            Err(Error::LoopInInput(1))
        );
        assert!(matches!(
            Multigraph::from_pairs(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert_eq!(Multigraph::new(0, vec![]), Err(Error::EmptyGraph));
        assert!(Multigraph::new(2, vec![Edge::new(0, 1, 1, rat(-1))]).is_err());
    }

    #[test]
    fn parallel_pairs_merge() {
        let g = Multigraph::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edges()[0].mult, 2);
        assert_eq!(g.edge_units(), 2);
    }

    #[test]
    fn contract_ends_of_path() {
        let p3 = Multigraph::path(3);
        let w = VertexSet::new([0, 2], 3).unwrap();
        let c = p3.contract_vertices(&w).unwrap();
        assert_eq!(c.graph.n(), 2);
        assert_eq!(c.graph.multiplicity(0, 1), 2);
        assert_eq!(c.discarded_loops, 0);
    }

    #[test]
    fn contract_triangle_pair_drops_loop() {
        let k3 = Multigraph::complete(3);
        let c = k3
            .contract_vertices(&VertexSet::new([0, 1], 3).unwrap())
            .unwrap();
        assert_eq!(c.graph.n(), 2);
        assert_eq!(c.graph.multiplicity(0, 1), 2);
        assert_eq!(c.discarded_loops, 1);
    }

    #[test]
    fn contract_singleton_is_identity() {
        let g = Multigraph::cycle(5);
        let c = g
            .contract_vertices(&VertexSet::new([3], 5).unwrap())
            .unwrap();
        assert_eq!(c.graph, g);
        assert!(matches!(
            g.contract_vertices(&VertexSet::empty()),
            Err(Error::EmptyVertexSet)
        ));
    }

    #[test]
    fn contract_complement_cases() {
        let p3 = Multigraph::path(3);
        let a = VertexSet::new([0, 1], 3).unwrap();
        assert_eq!(p3.contract_complement(&a).unwrap().graph, p3);
        assert_eq!(
            p3.contract_complement(&VertexSet::full(3)).unwrap().graph,
            p3
        );
        let k4 = Multigraph::complete(4);
        let c = k4
            .contract_complement(&VertexSet::new([2], 4).unwrap())
            .unwrap();
        assert_eq!(c.graph.n(), 2);
        assert_eq!(c.graph.multiplicity(0, 1), 3);
        let all = p3.contract_complement(&VertexSet::empty()).unwrap();
        assert_eq!(all.graph.n(), 1);
    }

    #[test]
    fn contract_subgraph_cases() {
        let k4 = Multigraph::complete(4);
        let tri = Subgraph {
            vertices: VertexSet::new([0, 1, 2], 4).unwrap(),
            edges: vec![
                EdgeUnit { u: 0, v: 1, k: 0 },
                EdgeUnit { u: 0, v: 2, k: 0 },
                EdgeUnit { u: 1, v: 2, k: 0 },
            ],
        };
        let c = k4.contract_subgraph_edges(&tri).unwrap();
        assert_eq!(c.graph.n(), 2);
        assert_eq!(c.graph.multiplicity(0, 1), 3);

        let single = Subgraph {
            vertices: VertexSet::new([1], 4).unwrap(),
            edges: vec![],
        };
        assert_eq!(k4.contract_subgraph_edges(&single).unwrap().graph, k4);

        let p4 = Multigraph::path(4);
        let mid = Subgraph {
            vertices: VertexSet::new([1, 2], 4).unwrap(),
            edges: vec![EdgeUnit { u: 1, v: 2, k: 0 }],
        };
        assert_eq!(
            p4.contract_subgraph_edges(&mid).unwrap().graph,
            Multigraph::path(3)
        );

        let bogus = Subgraph {
            vertices: VertexSet::new([0, 2], 4).unwrap(),
            edges: vec![EdgeUnit { u: 0, v: 2, k: 0 }],
        };
        assert!(matches!(
            p4.contract_subgraph_edges(&bogus),
            Err(Error::SubgraphMismatch(_))
        ));
    }

    #[test]
    fn subdivision() {
        let e = Multigraph::path(2);
        assert_eq!(
            e.subdivide_edge(0).unwrap(),
            Multigraph::path(3).permuted(&[0, 2, 1])
        );
        let pair = Multigraph::from_pairs(2, &[(0, 1), (0, 1)]).unwrap();
        let s = pair.subdivide_edge(0).unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.multiplicity(0, 1), 1);
        assert_eq!(s.multiplicity(0, 2), 1);
        assert_eq!(s.multiplicity(1, 2), 1);
        assert_eq!(e.subdivide_edge(3), Err(Error::MissingEdge(3)));
    }

    #[test]
    fn laplacian_examples() {
        let l = Multigraph::path(2).laplacian();
        assert_eq!(l.get(0, 0), &rat(1));
        assert_eq!(l.get(0, 1), &rat(-1));
        let l = Multigraph::complete(3).laplacian();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(l.get(i, j), &rat(if i == j { 2 } else { -1 }));
            }
        }
        let pair = Multigraph::from_pairs(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(pair.laplacian().get(1, 0), &rat(-2));
    }

    #[test]
    fn cut_edges() {
        assert!(Multigraph::path(3).has_cut_edge());
        assert!(!Multigraph::cycle(4).has_cut_edge());
        let pair = Multigraph::from_pairs(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(!pair.has_cut_edge());
        assert!(!Multigraph::single_vertex().has_cut_edge());
    }
}
