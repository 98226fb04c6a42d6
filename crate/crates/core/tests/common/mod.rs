#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use gdom::graph::{Edge, Multigraph};
use gdom::rng::SplitMix64;
use gdom::symmetry::canonical_code;

/// Every connected simple graph on `0..n` with edge set given by a mask over
/// the pairs `(i, j), i < j` in lexicographic order.
pub fn labeled_connected_graphs(n: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            Multigraph::from_pairs(n, &chosen).ok()
        })
        .collect()
}

fn dedupe(graphs: impl IntoIterator<Item = Multigraph>) -> Vec<Multigraph> {
    let mut seen = BTreeMap::new();
    for g in graphs {
        seen.entry(canonical_code(&g, None)).or_insert(g);
    }
    seen.into_values().collect()
}

/// Connected simple graphs up to isomorphism, indexed by vertex count
/// `0..=max_n` (index 0 empty). Every connected graph has a vertex whose
/// removal leaves it connected, so extending by one vertex reaches all.
pub fn connected_classes(max_n: usize) -> Vec<Vec<Multigraph>> {
    let mut out = vec![Vec::new(), vec![Multigraph::single_vertex()]];
    for n in 2..=max_n {
        let mut next = Vec::new();
        for g in &out[n - 1] {
            let base: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
            for mask in 1u64..1 << (n - 1) {
                let mut pairs = base.clone();
                pairs.extend(
                    (0..n - 1)
                        .filter(|&v| mask >> v & 1 == 1)
                        .map(|v| (v, n - 1)),
                );
                next.push(Multigraph::from_pairs(n, &pairs).unwrap());
            }
        }
        out.push(dedupe(next));
    }
    out
}

/// Connected multigraphs with `1..=max_units` edge units, up to
/// isomorphism.
pub fn connected_multigraphs(max_units: usize) -> Vec<Multigraph> {
    let mut level = vec![Multigraph::path(2)];
    let mut all = level.clone();
    for _ in 2..=max_units {
        let mut next = Vec::new();
        for g in &level {
            let n = g.n();
            let mut mult = g.multiplicity_matrix();
            for u in 0..n {
                for v in u + 1..n {
                    mult[u][v] += 1;
                    next.push(from_mult(&mult));
                    mult[u][v] -= 1;
                }
                let mut grown: Vec<Vec<u32>> = mult
                    .iter()
                    .map(|r| r.iter().copied().chain([0]).collect())
                    .collect();
                grown.push(vec![0; n + 1]);
                grown[u][n] = 1;
                next.push(from_mult(&grown));
            }
        }
        level = dedupe(next);
        all.extend(level.iter().cloned());
    }
    all
}

fn from_mult(m: &[Vec<u32>]) -> Multigraph {
    let n = m.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let k = m[u][v].max(m[v][u]);
            if k > 0 {
                edges.push(Edge::new(u, v, k, gdom::graph::rat(1)));
            }
        }
    }
    Multigraph::new(n, edges).unwrap()
}

/// Random connected simple graph: a random tree plus each other pair with
/// probability `num/den`.
pub fn random_connected(rng: &mut SplitMix64, n: usize, num: u64, den: u64) -> Multigraph {
    let order = rng.sample(n, n);
    let mut pairs = Vec::new();
    for i in 1..n {
        let j = rng.below(i as u64) as usize;
        pairs.push((order[i].min(order[j]), order[i].max(order[j])));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !pairs.contains(&(a, b)) && rng.chance(num, den) {
                pairs.push((a, b));
            }
        }
    }
    Multigraph::from_pairs(n, &pairs).unwrap()
}

/// Spanning trees by checking every `(n-1)`-subset of edge units.
pub fn brute_spanning_trees(g: &Multigraph) -> u64 {
    let units: Vec<(usize, usize)> = g.edge_unit_list().iter().map(|u| (u.u, u.v)).collect();
    let n = g.n();
    if n == 1 {
        return 1;
    }
    let mut count = 0;
    for mask in 0u64..1 << units.len() {
        if mask.count_ones() as usize == n - 1 && acyclic(n, &units, mask) {
            count += 1;
        }
    }
    count
}

/// Whether the units selected by `mask` form a forest.
pub fn acyclic(n: usize, units: &[(usize, usize)], mask: u64) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (k, &(u, v)) in units.iter().enumerate() {
        if mask >> k & 1 == 1 {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    true
}
