//! Copies of a pattern graph `H` inside a host `G`.
//!
//! An embedding is an injective vertex map under which every edge of `H`
//! with multiplicity `m` lands on a pair of `G` carrying at least `m` units.
//! A copy is the image subgraph: vertex set plus the specific edge units
//! used, so parallel units of `G` give distinct copies. Weights are ignored.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::graph::{EdgeUnit, Multigraph, Subgraph, VertexSet};

/// A copy of `H` in `G` together with one embedding producing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Copy {
    pub subgraph: Subgraph,
    /// `embedding[y]` is the image of pattern vertex `y`.
    pub embedding: Vec<usize>,
}

impl Copy {
    pub fn vertices(&self) -> &VertexSet {
        &self.subgraph.vertices
    }
}

#[derive(Clone, Debug)]
pub struct CopyList {
    pub copies: Vec<Copy>,
    /// False when a limit cut the enumeration short.
    pub complete: bool,
    pub embeddings_seen: u64,
}

/// Admissible root pairs `(x in G, y in H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedCopyRelation {
    pub g_n: usize,
    pub h_n: usize,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl RootedCopyRelation {
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Host vertices appearing in some pair.
    pub fn g_projection(&self) -> BTreeSet<usize> {
        self.pairs.iter().map(|&(x, _)| x).collect()
    }

    pub fn h_projection(&self) -> BTreeSet<usize> {
        self.pairs.iter().map(|&(_, y)| y).collect()
    }
}

/// Backtracking matcher with a connectivity-first variable order.
struct Matcher {
    gm: Vec<Vec<u32>>,
    g_adj: Vec<Vec<usize>>,
    g_deg: Vec<u32>,
    hm: Vec<Vec<u32>>,
    h_deg: Vec<u32>,
    order: Vec<usize>,
    /// For each position in `order`, placed pattern neighbours.
    back: Vec<Vec<usize>>,
}

impl Matcher {
    fn new(g: &Multigraph, h: &Multigraph) -> Self {
        let gm = g.multiplicity_matrix();
        let hm = h.multiplicity_matrix();
        let g_adj = g
            .adjacency()
            .into_iter()
            .map(|l| l.into_iter().map(|(v, _)| v).collect())
            .collect();
        let g_deg = (0..g.n()).map(|v| gm[v].iter().sum()).collect();
        let h_deg: Vec<u32> = (0..h.n()).map(|v| hm[v].iter().sum()).collect();

        let hn = h.n();
        let mut placed = vec![false; hn];
        let mut order = Vec::with_capacity(hn);
        for _ in 0..hn {
            let next = (0..hn)
                .filter(|&y| !placed[y])
                .max_by_key(|&y| {
                    let links = order.iter().filter(|&&z: &&usize| hm[y][z] > 0).count();
                    (links, h_deg[y], std::cmp::Reverse(y))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &y)| {
                order[..i]
                    .iter()
                    .copied()
                    .filter(|&z| hm[y][z] > 0)
                    .collect()
            })
            .collect();
        Matcher {
            gm,
            g_adj,
            g_deg,
            hm,
            h_deg,
            order,
            back,
        }
    }

    /// Calls `visit` with each embedding; stops early when it returns false.
    fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let hn = self.order.len();
        let gn = self.gm.len();
        if hn > gn {
            return;
        }
        let mut map = vec![usize::MAX; hn];
        let mut used = vec![false; gn];
        self.extend(0, &mut map, &mut used, visit);
    }

    fn extend(
        &self,
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == self.order.len() {
            return visit(map);
        }
        let y = self.order[depth];
        let all: Vec<usize>;
        let candidates: &[usize] = match self.back[depth].first() {
            Some(&anchor) => &self.g_adj[map[anchor]],
            None => {
                all = (0..self.gm.len()).collect();
                &all
            }
        };
        for &x in candidates {
            if used[x] || self.g_deg[x] < self.h_deg[y] {
                continue;
            }
            if !self.back[depth]
                .iter()
                .all(|&z| self.gm[x][map[z]] >= self.hm[y][z])
            {
                continue;
            }
            map[y] = x;
            used[x] = true;
            let go_on = self.extend(depth + 1, map, used, visit);
            used[x] = false;
            map[y] = usize::MAX;
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Every copy subgraph an embedding gives rise to: one per choice of
    /// which parallel units of `G` carry each edge of `H`.
    fn copies_of(&self, map: &[usize]) -> Vec<Subgraph> {
        let vertices = VertexSet::new(map.iter().copied(), self.gm.len()).unwrap();
        let hn = map.len();
        let mut choices: Vec<Vec<Vec<EdgeUnit>>> = Vec::new();
        for a in 0..hn {
            for b in a + 1..hn {
                let m = self.hm[a][b];
                if m == 0 {
                    continue;
                }
                let (u, v) = (map[a].min(map[b]), map[a].max(map[b]));
                let total = self.gm[u][v];
                choices.push(
                    subsets(total, m)
                        .into_iter()
                        .map(|ks| ks.into_iter().map(|k| EdgeUnit { u, v, k }).collect())
                        .collect(),
                );
            }
        }
        let mut out = vec![Vec::new()];
        for options in choices {
            let mut next = Vec::with_capacity(out.len() * options.len());
            for partial in &out {
                for opt in &options {
                    let mut e: Vec<EdgeUnit> = partial.clone();
                    e.extend(opt.iter().copied());
                    next.push(e);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|mut edges| {
                edges.sort();
                Subgraph {
                    vertices: vertices.clone(),
                    edges,
                }
            })
            .collect()
    }
}

/// All `m`-subsets of `0..total`, lexicographic.
fn subsets(total: u32, m: u32) -> Vec<Vec<u32>> {
    fn rec(start: u32, total: u32, m: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if m == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..=total - m {
            cur.push(k);
            rec(k + 1, total, m - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m <= total {
        rec(0, total, m, &mut Vec::new(), &mut out);
    }
    out
}

/// Distinct copies of `h` in `g`, in deterministic discovery order. With a
/// limit, stops after that many copies and marks the list incomplete.
pub fn enumerate_copies(g: &Multigraph, h: &Multigraph, limit: Option<usize>) -> Result<CopyList> {
    if h.n() > g.n() {
        return Err(Error::PatternTooLarge { h: h.n(), g: g.n() });
    }
    let matcher = Matcher::new(g, h);
    let mut seen: HashSet<Subgraph> = HashSet::new();
    let mut copies = Vec::new();
    let mut complete = true;
    let mut embeddings_seen = 0u64;
    matcher.run(&mut |map| {
        embeddings_seen += 1;
        for sub in matcher.copies_of(map) {
            if seen.contains(&sub) {
                continue;
            }
            if limit.is_some_and(|l| copies.len() >= l) {
                complete = false;
                return false;
            }
            seen.insert(sub.clone());
            copies.push(Copy {
                subgraph: sub,
                embedding: map.to_vec(),
            });
        }
        true
    });
    Ok(CopyList {
        copies,
        complete,
        embeddings_seen,
    })
}

/// Number of embeddings (injective maps), without deduplication.
pub fn count_embeddings(g: &Multigraph, h: &Multigraph) -> u64 {
    let matcher = Matcher::new(g, h);
    let mut count = 0;
    matcher.run(&mut |_| {
        count += 1;
        true
    });
    count
}

pub fn rooted_copy_relation(g: &Multigraph, h: &Multigraph) -> RootedCopyRelation {
    let mut pairs = BTreeSet::new();
    let matcher = Matcher::new(g, h);
    let full = g.n() * h.n();
    matcher.run(&mut |map| {
        for (y, &x) in map.iter().enumerate() {
            pairs.insert((x, y));
        }
        pairs.len() < full
    });
    RootedCopyRelation {
        g_n: g.n(),
        h_n: h.n(),
        pairs,
    }
}

/// Whether every vertex of `g` lies in some copy of `h`.
pub fn covers_every_vertex(g: &Multigraph, h: &Multigraph) -> bool {
    rooted_copy_relation(g, h).g_projection().len() == g.n()
}

/// Whether `g` contains at least one copy of `h`.
pub fn contains_copy(g: &Multigraph, h: &Multigraph) -> bool {
    let matcher = Matcher::new(g, h);
    let mut found = false;
    matcher.run(&mut |_| {
        found = true;
        false
    });
    found
}
