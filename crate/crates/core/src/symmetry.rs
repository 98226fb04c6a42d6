//! Automorphism groups, canonical codes, rooted-ball statistics.
//!
//! Everything is built on one individualisation-refinement engine:
//! colour refinement (one-dimensional Weisfeiler-Leman with edge labels) and
//! backtracking on the first non-singleton cell. The automorphism group is
//! computed as a stabiliser chain along the leftmost path of the search tree,
//! and those generators prune the canonical-labelling search.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::graph::{Multigraph, Rational};

pub const DEFAULT_MAX_VERTICES: usize = 64;

/// Automorphism group summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismInfo {
    /// Permutations `x -> perm[x]` generating the group.
    pub generators: Vec<Vec<usize>>,
    /// Vertex orbits, each sorted, ordered by smallest member.
    pub orbits: Vec<Vec<usize>>,
    pub order: BigUint,
}

/// Canonical code of a (rooted) graph up to isomorphism.
pub type CanonicalCode = Vec<u8>;

/// Distribution of rooted-ball isomorphism classes under a uniform root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalStatistics(pub BTreeMap<CanonicalCode, Rational>);

impl LocalStatistics {
    pub fn total(&self) -> Rational {
        self.0.values().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn classes(&self) -> usize {
        self.0.len()
    }
}

/// Edge-labelled, vertex-coloured graph in the form the search engine uses.
/// Label ids are ranks of the label contents, so they are isomorphism
/// invariant.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    n: usize,
    labels: Vec<u16>,
    table: Vec<Vec<(String, u32)>>,
    colors: Vec<usize>,
}

impl LabeledGraph {
    /// Weighted multigraph: each pair is labelled by its multiset of
    /// (weight, multiplicity) classes.
    pub fn from_multigraph(g: &Multigraph) -> Self {
        let mut content: BTreeMap<(usize, usize), Vec<(Rational, u32)>> = BTreeMap::new();
        for e in g.edges() {
            content
                .entry((e.u, e.v))
                .or_default()
                .push((e.weight.clone(), e.mult));
        }
        let content = content
            .into_iter()
            .map(|(k, mut v)| {
                v.sort();
                (k, v.into_iter().map(|(w, m)| (w.to_string(), m)).collect())
            })
            .collect();
        Self::from_content(g.n(), content)
    }

    /// Unweighted multigraph given by a symmetric multiplicity matrix. Loops on
    /// the diagonal are allowed and labelled like edges.
    pub fn from_multiplicities(mult: &[Vec<u32>]) -> Self {
        let n = mult.len();
        let mut content = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                if mult[i][j] > 0 {
                    content.insert((i, j), vec![("1".to_string(), mult[i][j])]);
                }
            }
        }
        Self::from_content(n, content)
    }

    fn from_content(n: usize, content: BTreeMap<(usize, usize), Vec<(String, u32)>>) -> Self {
        let mut table: Vec<Vec<(String, u32)>> = content.values().cloned().collect();
        table.sort();
        table.dedup();
        let mut labels = vec![0u16; n * n];
        for ((i, j), c) in &content {
            let id = table.binary_search(c).unwrap() as u16 + 1;
            labels[i * n + j] = id;
            labels[j * n + i] = id;
        }
        LabeledGraph {
            n,
            labels,
            table,
            colors: vec![0; n],
        }
    }

    /// Gives `root` a colour of its own, ahead of every other vertex.
    pub fn rooted(mut self, root: usize) -> Self {
        for (x, c) in self.colors.iter_mut().enumerate() {
            *c = if x == root { 0 } else { 1 };
        }
        self
    }

    /// Applies an initial vertex colouring (any comparable keys).
    pub fn with_colors<K: Ord + Clone>(mut self, keys: &[K]) -> Self {
        self.colors = ranks(keys);
        self
    }

    fn label(&self, i: usize, j: usize) -> u16 {
        self.labels[i * self.n + j]
    }

    /// One-dimensional colour refinement to a stable partition. Colours are
    /// ranks of `(old colour, sorted neighbour signature)`.
    fn refine(&self, colors: &[usize]) -> Vec<usize> {
        let n = self.n;
        let mut colors = colors.to_vec();
        let mut count = distinct(&colors);
        loop {
            let keys: Vec<(usize, Vec<(usize, u16)>)> = (0..n)
                .map(|x| {
                    let mut sig: Vec<(usize, u16)> = (0..n)
                        .filter_map(|y| {
                            let l = self.label(x, y);
                            (l != 0).then(|| (if x == y { usize::MAX } else { colors[y] }, l))
                        })
                        .collect();
                    sig.sort_unstable();
                    (colors[x], sig)
                })
                .collect();
            let next = ranks(&keys);
            let c = distinct(&next);
            colors = next;
            if c == count {
                return colors;
            }
            count = c;
        }
    }

    fn is_automorphism(&self, perm: &[usize]) -> bool {
        (0..self.n).all(|x| {
            self.colors[x] == self.colors[perm[x]]
                && (x..self.n).all(|y| self.label(x, y) == self.label(perm[x], perm[y]))
        })
    }

    /// Search for an isomorphism carrying the partition `left` onto `right`
    /// (both already refined). Returns the permutation `x -> image`.
    fn find_mapping(&self, left: &[usize], right: &[usize]) -> Option<Vec<usize>> {
        if cell_sizes(left) != cell_sizes(right) {
            return None;
        }
        match first_nontrivial_cell(left) {
            None => {
                let mut pos = vec![0; self.n];
                for (y, &c) in right.iter().enumerate() {
                    pos[c] = y;
                }
                let perm: Vec<usize> = left.iter().map(|&c| pos[c]).collect();
                self.is_automorphism(&perm).then_some(perm)
            }
            Some(cell) => {
                let x = (0..self.n).find(|&v| left[v] == cell).unwrap();
                let l = self.refine(&individualize(left, x));
                for y in (0..self.n).filter(|&v| right[v] == cell) {
                    let r = self.refine(&individualize(right, y));
                    if let Some(p) = self.find_mapping(&l, &r) {
                        return Some(p);
                    }
                }
                None
            }
        }
    }

    /// Stabiliser chain along the leftmost path.
    pub fn automorphisms(&self) -> AutomorphismInfo {
        let n = self.n;
        let mut levels: Vec<(Vec<usize>, usize)> = Vec::new();
        let mut current = self.refine(&self.colors);
        while let Some(cell) = first_nontrivial_cell(&current) {
            let b = (0..n).find(|&v| current[v] == cell).unwrap();
            levels.push((current.clone(), b));
            current = self.refine(&individualize(&current, b));
        }
        let mut generators: Vec<Vec<usize>> = Vec::new();
        let mut order = BigUint::one();
        for (partition, base) in levels.iter().rev() {
            let cell = partition[*base];
            let left = self.refine(&individualize(partition, *base));
            let mut orbit = orbit_of(*base, &generators, n);
            for v in (0..n).filter(|&v| partition[v] == cell) {
                if orbit.contains(&v) {
                    continue;
                }
                let right = self.refine(&individualize(partition, v));
                if let Some(p) = self.find_mapping(&left, &right) {
                    generators.push(p);
                    orbit = orbit_of(*base, &generators, n);
                }
            }
            order *= BigUint::from(orbit.len());
        }
        AutomorphismInfo {
            orbits: orbits(&generators, n),
            generators,
            order,
        }
    }

    /// Canonical relabelling: the lexicographically least leaf code in the
    /// individualisation-refinement tree, pruned by known automorphisms.
    pub fn canonical_code(&self) -> CanonicalCode {
        let aut = self.automorphisms();
        let mut search = CanonSearch {
            g: self,
            generators: aut.generators,
            best: None,
        };
        let start = self.refine(&self.colors);
        search.visit(&start, &[]);
        let (matrix, _) = search.best.expect("search reaches a leaf");
        let mut code = Vec::with_capacity(matrix.len() * 2 + 64);
        code.extend_from_slice(b"gdc1");
        code.extend_from_slice(&(self.n as u32).to_le_bytes());
        let mut color_counts = vec![0u32; distinct(&self.colors)];
        for &c in &self.colors {
            color_counts[c] += 1;
        }
        code.extend_from_slice(&(color_counts.len() as u32).to_le_bytes());
        for c in color_counts {
            code.extend_from_slice(&c.to_le_bytes());
        }
        code.extend_from_slice(&(self.table.len() as u32).to_le_bytes());
        for entry in &self.table {
            code.extend_from_slice(&(entry.len() as u32).to_le_bytes());
            for (w, m) in entry {
                code.extend_from_slice(&m.to_le_bytes());
                code.extend_from_slice(&(w.len() as u32).to_le_bytes());
                code.extend_from_slice(w.as_bytes());
            }
        }
        for l in matrix {
            code.extend_from_slice(&l.to_le_bytes());
        }
        code
    }
}

struct CanonSearch<'a> {
    g: &'a LabeledGraph,
    generators: Vec<Vec<usize>>,
    best: Option<(Vec<u16>, Vec<usize>)>,
}

impl CanonSearch<'_> {
    fn visit(&mut self, colors: &[usize], prefix: &[usize]) {
        let n = self.g.n;
        match first_nontrivial_cell(colors) {
            None => {
                // colors[x] is the canonical position of x.
                let mut inv = vec![0; n];
                for (x, &c) in colors.iter().enumerate() {
                    inv[c] = x;
                }
                let mut matrix = Vec::with_capacity(n * (n + 1) / 2);
                for i in 0..n {
                    for j in i..n {
                        matrix.push(self.g.label(inv[i], inv[j]));
                    }
                }
                match &self.best {
                    Some((m, best_colors)) if *m == matrix => {
                        // Two leaves with equal codes differ by an automorphism.
                        let mut bpos = vec![0; n];
                        for (x, &c) in best_colors.iter().enumerate() {
                            bpos[c] = x;
                        }
                        let perm: Vec<usize> = (0..n).map(|x| bpos[colors[x]]).collect();
                        if perm.iter().enumerate().any(|(i, &p)| i != p) {
                            self.generators.push(perm);
                        }
                    }
                    Some((m, _)) if *m <= matrix => {}
                    _ => self.best = Some((matrix, colors.to_vec())),
                }
            }
            Some(cell) => {
                let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell).collect();
                let mut explored: Vec<usize> = Vec::new();
                for v in members {
                    let stabilizer: Vec<Vec<usize>> = self
                        .generators
                        .iter()
                        .filter(|p| prefix.iter().all(|&b| p[b] == b))
                        .cloned()
                        .collect();
                    let orbit = orbit_of(v, &stabilizer, n);
                    if explored.iter().any(|e| orbit.contains(e)) {
                        continue;
                    }
                    explored.push(v);
                    let next = self.g.refine(&individualize(colors, v));
                    let mut p = prefix.to_vec();
                    p.push(v);
                    self.visit(&next, &p);
                }
            }
        }
    }
}

fn ranks<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap())
        .collect()
}

fn distinct(colors: &[usize]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m + 1)
}

fn cell_sizes(colors: &[usize]) -> Vec<usize> {
    let mut sizes = vec![0; distinct(colors)];
    for &c in colors {
        sizes[c] += 1;
    }
    sizes
}

fn first_nontrivial_cell(colors: &[usize]) -> Option<usize> {
    cell_sizes(colors).iter().position(|&s| s > 1)
}

fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
    let keys: Vec<(usize, bool)> = colors
        .iter()
        .enumerate()
        .map(|(x, &c)| (c, x != v))
        .collect();
    ranks(&keys)
}

fn orbit_of(x: usize, generators: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut queue = VecDeque::from([x]);
    let mut out = vec![x];
    while let Some(y) = queue.pop_front() {
        for g in generators {
            let z = g[y];
            if !seen[z] {
                seen[z] = true;
                out.push(z);
                queue.push_back(z);
            }
        }
    }
    out.sort_unstable();
    out
}

fn orbits(generators: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if !assigned[x] {
            let o = orbit_of(x, generators, n);
            for &y in &o {
                assigned[y] = true;
            }
            out.push(o);
        }
    }
    out
}

fn check_size(g: &Multigraph, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(Error::BoundExceeded {
            what: "vertex count",
            actual: g.n(),
            limit,
        });
    }
    Ok(())
}

pub fn automorphisms(g: &Multigraph) -> Result<AutomorphismInfo> {
    automorphisms_bounded(g, DEFAULT_MAX_VERTICES)
}

pub fn automorphisms_bounded(g: &Multigraph, max_vertices: usize) -> Result<AutomorphismInfo> {
    check_size(g, max_vertices)?;
    Ok(LabeledGraph::from_multigraph(g).automorphisms())
}

pub fn is_transitive(g: &Multigraph) -> Result<bool> {
    Ok(automorphisms(g)?.orbits.len() == 1)
}

/// Isomorphism-complete code, optionally rooted. Weights and multiplicities
/// are part of the code.
pub fn canonical_code(g: &Multigraph, root: Option<usize>) -> CanonicalCode {
    let lg = LabeledGraph::from_multigraph(g);
    match root {
        Some(r) => lg.rooted(r).canonical_code(),
        None => lg.canonical_code(),
    }
}

pub fn is_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    a.n() == b.n()
        && a.edge_units() == b.edge_units()
        && canonical_code(a, None) == canonical_code(b, None)
}

/// Vertices within graph distance `r` of `root`, BFS order.
pub fn ball(g: &Multigraph, root: usize, r: usize) -> Vec<usize> {
    let adj = g.adjacency();
    let mut dist = vec![usize::MAX; g.n()];
    dist[root] = 0;
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        if dist[x] == r {
            continue;
        }
        for &(y, _) in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    order
}

/// `U_r(G)`: law of the induced radius-`r` rooted ball around a uniform root.
pub fn local_statistics(g: &Multigraph, r: usize) -> LocalStatistics {
    let mut counts: BTreeMap<CanonicalCode, u64> = BTreeMap::new();
    for root in 0..g.n() {
        let vs = ball(g, root, r);
        let b = g.induced(&vs).expect("balls are connected");
        *counts.entry(canonical_code(&b, Some(0))).or_default() += 1;
    }
    let n = BigInt::from(g.n());
    LocalStatistics(
        counts
            .into_iter()
            .map(|(k, c)| (k, Rational::new(BigInt::from(c), n.clone())))
            .collect(),
    )
}

/// Total-variation distance, half the L1 norm of the difference.
pub fn tv_distance(a: &LocalStatistics, b: &LocalStatistics) -> Rational {
    let zero = Rational::zero();
    let mut sum = Rational::zero();
    for k in
        a.0.keys()
            .chain(b.0.keys().filter(|k| !a.0.contains_key(*k)))
    {
        let d = a.0.get(k).unwrap_or(&zero) - b.0.get(k).unwrap_or(&zero);
        sum += if d < zero { -d } else { d };
    }
    sum / Rational::from_integer(2.into())
}

/// Concurrent memo table keyed by canonical codes (or any key).
pub struct CanonicalCache<K, V> {
    map: RwLock<HashMap<K, V>>,
}

impl<K: Eq + Hash, V: Clone> CanonicalCache<K, V> {
    pub fn new() -> Self {
        CanonicalCache {
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn get(&self, key: &K) -> Option<V> {
        self.map.read().get(key).cloned()
    }

    pub fn insert(&self, key: K, value: V) {
        self.map.write().entry(key).or_insert(value);
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<K: Eq + Hash, V: Clone> Default for CanonicalCache<K, V> {
    fn default() -> Self {
        Self::new()
    }
}
