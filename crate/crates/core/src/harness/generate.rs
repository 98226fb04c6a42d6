//! Random pair generators and the counterexample hunt.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{check, CheckParams, CheckReport, InequalityId, Relation, Verdict};
use crate::embedding::enumerate_copies;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSet};
use crate::relations::{
    check_domination, check_fractional_edge_tiling, check_fractional_tiling, Certificate, Decision,
};
use crate::rng::SplitMix64;

/// Salt for the vertex-set stream used by set-based checks in hunts.
const SET_STREAM_SALT: u64 = 0x5E75_0F5E_7500_0001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    OverlayCopies,
    TransitiveCatalog,
    RandomConnectedPair,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::OverlayCopies => "overlay_copies",
            Strategy::TransitiveCatalog => "transitive_catalog",
            Strategy::RandomConnectedPair => "random_connected_pair",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "overlay_copies" | "overlay" => Ok(Strategy::OverlayCopies),
            "transitive_catalog" | "transitive" => Ok(Strategy::TransitiveCatalog),
            "random_connected_pair" | "random" => Ok(Strategy::RandomConnectedPair),
            other => Err(Error::Param(format!("unknown strategy `{other}`"))),
        }
    }
}

/// How pairs are drawn. Output depends only on these fields and the trial
/// index.
#[derive(Clone, Debug, PartialEq)]
pub struct PairGenerator {
    pub strategy: Strategy,
    pub seed: u64,
    /// Largest `|G|`.
    pub max_n: usize,
    /// Range of `|H|` when `H` is random.
    pub h_min: usize,
    pub h_max: usize,
    /// Relation every emitted pair must satisfy.
    pub relation: Relation,
    /// Fixed pattern for the overlay strategy.
    pub pattern: Option<Multigraph>,
    /// Number of overlaid copies, including the first.
    pub copies: Option<usize>,
    pub max_attempts: usize,
}

impl PairGenerator {
    pub fn new(strategy: Strategy, seed: u64) -> Self {
        PairGenerator {
            strategy,
            seed,
            max_n: 8,
            h_min: 2,
            h_max: 5,
            relation: Relation::Domination,
            pattern: None,
            copies: None,
            max_attempts: 1000,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "strategy": self.strategy.name(),
            "seed": self.seed,
            "max_n": self.max_n,
            "h_min": self.h_min,
            "h_max": self.h_max,
            "relation": self.relation.name(),
            "pattern": self.pattern.as_ref().map(|p| p.to_string()),
            "copies": self.copies,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedPair {
    pub g: Multigraph,
    pub h: Multigraph,
    pub relation: Relation,
    /// Certificate of `relation` found by the deciders (`null` for none).
    pub certificate: Value,
    pub attempts: usize,
}

/// First pair of the generator's stream.
pub fn generate_pair(gen: &PairGenerator) -> Result<GeneratedPair> {
    generate_trial(gen, 0)
}

/// Pair number `trial`, drawn from its own stream.
pub fn generate_trial(gen: &PairGenerator, trial: u64) -> Result<GeneratedPair> {
    if gen.h_min < 2 || gen.h_min > gen.h_max {
        return Err(Error::Param(format!(
            "pattern size range {}..={} is invalid",
            gen.h_min, gen.h_max
        )));
    }
    if gen.max_n < 2 || gen.max_n > 64 {
        return Err(Error::Param(format!(
            "max-n {} must lie in 2..=64",
            gen.max_n
        )));
    }
    let mut rng = SplitMix64::stream(gen.seed, trial);
    for attempt in 1..=gen.max_attempts {
        let drawn = match gen.strategy {
            Strategy::OverlayCopies => overlay(&mut rng, gen),
            Strategy::TransitiveCatalog => transitive_pair(&mut rng, gen),
            Strategy::RandomConnectedPair => random_pair(&mut rng, gen),
        };
        let Some((g, h)) = drawn else { continue };
        if let Some(certificate) = certify(gen.relation, &g, &h) {
            return Ok(GeneratedPair {
                g,
                h,
                relation: gen.relation,
                certificate,
                attempts: attempt,
            });
        }
    }
    Err(Error::AttemptsExhausted(gen.max_attempts))
}

/// Re-proves `relation` with the deciders.
fn certify(relation: Relation, g: &Multigraph, h: &Multigraph) -> Option<Value> {
    let unwrap = |d: Decision<Certificate>| match d {
        Decision::Holds(c) => Some(c.to_json()),
        _ => None,
    };
    match relation {
        Relation::None => Some(Value::Null),
        Relation::Domination => match check_domination(g, h) {
            Decision::Holds(c) => unwrap(Decision::Holds(Certificate::Coupling(c))),
            _ => None,
        },
        Relation::FractionalTiling => match check_fractional_tiling(g, h) {
            Decision::Holds(c) => unwrap(Decision::Holds(Certificate::FractionalTiling(c))),
            _ => None,
        },
        Relation::FractionalEdgeTiling => match check_fractional_edge_tiling(g, h) {
            Decision::Holds(c) => unwrap(Decision::Holds(Certificate::FractionalTiling(c))),
            _ => None,
        },
        Relation::Subgraph => {
            let c = enumerate_copies(g, h, Some(1))
                .ok()?
                .copies
                .into_iter()
                .next()?;
            Some(json!({"type": "copy", "vertices": c.subgraph.vertices.as_slice()}))
        }
    }
}

type Pairs = BTreeSet<(usize, usize)>;

fn add(edges: &mut Pairs, a: usize, b: usize) {
    edges.insert((a.min(b), a.max(b)));
}

fn build(n: usize, edges: &Pairs) -> Option<Multigraph> {
    let pairs: Vec<(usize, usize)> = edges.iter().copied().collect();
    Multigraph::from_pairs(n, &pairs).ok()
}

/// Random relabelling, so generated graphs carry no positional pattern.
fn relabel(rng: &mut SplitMix64, n: usize, edges: &Pairs) -> Pairs {
    let perm = rng.sample(n, n);
    let mut out = Pairs::new();
    for &(a, b) in edges {
        add(&mut out, perm[a], perm[b]);
    }
    out
}

/// Random spanning tree plus each remaining pair with probability `num/den`.
fn random_connected(rng: &mut SplitMix64, n: usize, num: u64, den: u64) -> Pairs {
    let order = rng.sample(n, n);
    let mut edges = Pairs::new();
    for i in 1..n {
        let j = rng.below(i as u64) as usize;
        add(&mut edges, order[i], order[j]);
    }
    for a in 0..n {
        for b in a + 1..n {
            if !edges.contains(&(a, b)) && rng.chance(num, den) {
                edges.insert((a, b));
            }
        }
    }
    edges
}

fn pattern(rng: &mut SplitMix64, gen: &PairGenerator, cap: usize) -> Option<(usize, Pairs)> {
    if let Some(p) = &gen.pattern {
        let mut e = Pairs::new();
        for edge in p.edges() {
            add(&mut e, edge.u, edge.v);
        }
        return Some((p.n(), e));
    }
    let hi = gen.h_max.min(cap);
    if hi < gen.h_min {
        return None;
    }
    let h = rng.range(gen.h_min, hi);
    Some((h, random_connected(rng, h, 1, 2)))
}

/// Places a copy of `h_edges` on `old` vertices plus fresh ones.
fn place(
    rng: &mut SplitMix64,
    g: &mut Pairs,
    n: &mut usize,
    h: usize,
    h_edges: &Pairs,
    old: Vec<usize>,
) {
    let mut target = old;
    while target.len() < h {
        target.push(*n);
        *n += 1;
    }
    let mut perm: Vec<usize> = (0..h).collect();
    rng.shuffle(&mut perm);
    for &(a, b) in h_edges {
        add(g, target[perm[a]], target[perm[b]]);
    }
}

fn overlay(rng: &mut SplitMix64, gen: &PairGenerator) -> Option<(Multigraph, Multigraph)> {
    let cap = gen.max_n.saturating_sub(1).max(1);
    let (h, h_edges) = pattern(rng, gen, cap)?;
    if h > gen.max_n {
        return None;
    }
    let hg = build(h, &h_edges)?;
    let g_edges = match gen.relation {
        Relation::FractionalTiling => tiling_blocks(rng, gen, h, &h_edges)?,
        Relation::FractionalEdgeTiling => edge_disjoint_overlay(rng, gen, h, &h_edges),
        _ => vertex_overlay(rng, gen, h, &h_edges),
    };
    let n = g_edges
        .iter()
        .map(|&(_, b)| b + 1)
        .max()
        .unwrap_or(1)
        .max(h);
    let g_edges = relabel(rng, n, &g_edges);
    Some((build(n, &g_edges)?, hg))
}

/// Copies glued on shared vertices; each shares at least one old vertex so
/// the union stays connected.
fn vertex_overlay(rng: &mut SplitMix64, gen: &PairGenerator, h: usize, h_edges: &Pairs) -> Pairs {
    let max_n = if h < gen.max_n {
        rng.range(h + 1, gen.max_n)
    } else {
        h
    };
    let mut g = h_edges.clone();
    let mut n = h;
    let steps = match gen.copies {
        Some(c) => c.saturating_sub(1),
        None => rng.range(1, 6),
    };
    for _ in 0..steps {
        let mut share = if n < max_n && h > 1 {
            rng.range(1, h - 1)
        } else {
            h
        };
        share = share.max(h.saturating_sub(max_n - n));
        let old = rng.sample(n, share.min(n));
        place(rng, &mut g, &mut n, h, h_edges, old);
    }
    g
}

/// Vertex-disjoint copies joined by extra edges; `H` tiles the result.
fn tiling_blocks(
    rng: &mut SplitMix64,
    gen: &PairGenerator,
    h: usize,
    h_edges: &Pairs,
) -> Option<Pairs> {
    let most = gen.max_n / h;
    if most == 0 {
        return None;
    }
    let k = match gen.copies {
        Some(c) if c <= most => c.max(1),
        Some(_) => return None,
        None => rng.range(most.min(2), most),
    };
    let mut g = Pairs::new();
    let mut n = 0;
    for _ in 0..k {
        place(rng, &mut g, &mut n, h, h_edges, Vec::new());
    }
    for j in 1..k {
        let a = j * h + rng.below(h as u64) as usize;
        let b = rng.below((j * h) as u64) as usize;
        add(&mut g, a, b);
    }
    for _ in 0..rng.range(0, k) {
        let (a, b) = (rng.below(n as u64) as usize, rng.below(n as u64) as usize);
        if a != b {
            add(&mut g, a, b);
        }
    }
    Some(g)
}

/// Edge-disjoint copies glued on shared vertices; `H` edge-tiles the result.
fn edge_disjoint_overlay(
    rng: &mut SplitMix64,
    gen: &PairGenerator,
    h: usize,
    h_edges: &Pairs,
) -> Pairs {
    let max_n = if h < gen.max_n {
        rng.range(h + 1, gen.max_n)
    } else {
        h
    };
    let mut g = h_edges.clone();
    let mut n = h;
    let steps = match gen.copies {
        Some(c) => c.saturating_sub(1),
        None => rng.range(1, 6),
    };
    for _ in 0..steps {
        for _ in 0..20 {
            let mut share = if n < max_n && h > 1 {
                rng.range(1, h - 1)
            } else {
                h
            };
            share = share.max(h.saturating_sub(max_n - n));
            let old = rng.sample(n, share.min(n));
            let mut trial = Pairs::new();
            let mut m = n;
            place(rng, &mut trial, &mut m, h, h_edges, old);
            if trial.is_disjoint(&g) {
                g.extend(trial);
                n = m;
                break;
            }
        }
    }
    g
}

fn transitive_pair(rng: &mut SplitMix64, gen: &PairGenerator) -> Option<(Multigraph, Multigraph)> {
    let g = match rng.below(4) {
        0 if gen.max_n >= 3 => Multigraph::complete(rng.range(3, gen.max_n)),
        1 if gen.max_n >= 4 => {
            let d = rng.range(2, (usize::BITS - 1 - gen.max_n.leading_zeros()) as usize);
            Multigraph::hypercube(d)
        }
        2 if gen.max_n >= 5 => {
            let n = rng.range(5, gen.max_n);
            let mut jumps: Vec<usize> = (1..=n / 2).filter(|_| rng.chance(1, 2)).collect();
            if jumps.is_empty() {
                jumps.push(rng.range(1, n / 2));
            }
            Multigraph::circulant(n, &jumps).ok()?
        }
        _ if gen.max_n >= 3 => Multigraph::cycle(rng.range(3, gen.max_n)),
        _ => Multigraph::path(2),
    };
    let h = match &gen.pattern {
        Some(p) => p.clone(),
        None => random_connected_subgraph(rng, &g, gen)?,
    };
    Some((g, h))
}

/// A random connected subgraph of `g` on between `h_min` and `h_max` vertices.
fn random_connected_subgraph(
    rng: &mut SplitMix64,
    g: &Multigraph,
    gen: &PairGenerator,
) -> Option<Multigraph> {
    let hi = gen.h_max.min(g.n());
    if hi < gen.h_min {
        return None;
    }
    let size = rng.range(gen.h_min, hi);
    let adj = g.adjacency();
    let mut chosen = vec![rng.below(g.n() as u64) as usize];
    let mut tree = Pairs::new();
    while chosen.len() < size {
        let frontier: Vec<(usize, usize)> = chosen
            .iter()
            .flat_map(|&a| adj[a].iter().map(move |&(b, _)| (a, b)))
            .filter(|(_, b)| !chosen.contains(b))
            .collect();
        let (a, b) = frontier[rng.below(frontier.len() as u64) as usize];
        chosen.push(b);
        add(&mut tree, a, b);
    }
    let index = |x: usize| chosen.iter().position(|&c| c == x).unwrap();
    let mut edges = Pairs::new();
    for &(a, b) in &tree {
        add(&mut edges, index(a), index(b));
    }
    for e in g.edges() {
        if chosen.contains(&e.u) && chosen.contains(&e.v) && rng.chance(1, 2) {
            add(&mut edges, index(e.u), index(e.v));
        }
    }
    let edges = relabel(rng, size, &edges);
    build(size, &edges)
}

fn random_pair(rng: &mut SplitMix64, gen: &PairGenerator) -> Option<(Multigraph, Multigraph)> {
    let (h, h_edges) = pattern(rng, gen, gen.max_n.saturating_sub(1).max(1))?;
    if h >= gen.max_n {
        return None;
    }
    let n = rng.range(h + 1, gen.max_n);
    let g = random_connected(rng, n, 1, 3);
    Some((build(n, &g)?, build(h, &h_edges)?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: u64,
    pub seed: u64,
    pub certificate: Value,
    pub report: CheckReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuntResult {
    pub id: InequalityId,
    pub generator: Value,
    pub trials: u64,
    /// Trials where a pair was generated and checked.
    pub checked: u64,
    pub generation_failures: u64,
    pub hypothesis_failed: u64,
    pub inconclusive: u64,
    pub errors: u64,
    /// Ordered by trial index.
    pub violations: Vec<Violation>,
}

enum TrialOutcome {
    NoPair,
    Error,
    Report(Box<CheckReport>, Value),
}

/// Runs `check` on `trials` generated pairs and keeps the violations.
pub fn hunt(
    id: InequalityId,
    gen: &PairGenerator,
    trials: u64,
    params: &CheckParams,
) -> HuntResult {
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(id, gen, t, params))
        .collect();
    let mut res = HuntResult {
        id,
        generator: gen.to_json(),
        trials,
        checked: 0,
        generation_failures: 0,
        hypothesis_failed: 0,
        inconclusive: 0,
        errors: 0,
        violations: Vec::new(),
    };
    for (t, o) in outcomes.into_iter().enumerate() {
        match o {
            TrialOutcome::NoPair => res.generation_failures += 1,
            TrialOutcome::Error => res.errors += 1,
            TrialOutcome::Report(report, certificate) => {
                res.checked += 1;
                match report.verdict {
                    Verdict::HypothesisFailed => res.hypothesis_failed += 1,
                    Verdict::Inconclusive => res.inconclusive += 1,
                    Verdict::Violated => res.violations.push(Violation {
                        trial: t as u64,
                        seed: gen.seed,
                        certificate,
                        report: *report,
                    }),
                    _ => {}
                }
            }
        }
    }
    res
}

fn run_trial(
    id: InequalityId,
    gen: &PairGenerator,
    trial: u64,
    params: &CheckParams,
) -> TrialOutcome {
    let Ok(pair) = generate_trial(gen, trial) else {
        return TrialOutcome::NoPair;
    };
    let mut params = params.clone();
    if id == InequalityId::KoteljanskiiStep && params.sets.is_none() {
        let mut rng = SplitMix64::stream(gen.seed ^ SET_STREAM_SALT, trial);
        let n = pair.g.n();
        let mut pick = || VertexSet::from_mask(rng.below(1 << n), n);
        params.sets = Some(vec![pick(), pick()]);
    }
    let h = id.needs_pattern().then_some(&pair.h);
    match check(id, &pair.g, h, &params) {
        Ok(r) => TrialOutcome::Report(Box::new(r), pair.certificate),
        Err(_) => TrialOutcome::Error,
    }
}
