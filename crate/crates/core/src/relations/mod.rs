//! Deciders for tiling, fractional (vertex and edge) tiling and domination,
//! each returning a certificate that [`verify_certificate`] re-checks from
//! scratch.

pub mod flow;
pub mod simplex;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::embedding::{enumerate_copies, rooted_copy_relation, CopyList, RootedCopyRelation};
use crate::error::{Error, Result};
use crate::graph::{EdgeUnit, Multigraph, Rational, Subgraph, VertexSet};
use crate::symmetry::is_isomorphic;

use flow::FlowNetwork;

/// Default cap on the number of copies enumerated by the deciders.
pub const DEFAULT_COPY_LIMIT: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TilingMode {
    Vertex,
    Edge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingCertificate {
    pub copies: Vec<Subgraph>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalTilingCertificate {
    pub mode: TilingMode,
    /// Copies with positive multiplicity.
    pub copies: Vec<(Subgraph, BigUint)>,
    /// Number of times every vertex (or edge unit) is covered.
    pub coverage: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingCertificate {
    pub g_n: usize,
    pub h_n: usize,
    /// Positive masses on admissible pairs `(x in G, y in H)`.
    pub masses: BTreeMap<(usize, usize), Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Tiling(TilingCertificate),
    FractionalTiling(FractionalTilingCertificate),
    Coupling(CouplingCertificate),
}

/// Outcome of a decider.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<C> {
    Holds(C),
    /// Proven absent; `explored` counts copies (or search nodes) examined.
    Fails {
        explored: usize,
    },
    /// The copy enumeration was truncated, so absence is not proven.
    Inconclusive {
        copies_considered: usize,
    },
}

impl<C> Decision<C> {
    pub fn holds(&self) -> bool {
        matches!(self, Decision::Holds(_))
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            Decision::Holds(c) => Some(c),
            _ => None,
        }
    }
}

fn copies_or_empty(g: &Multigraph, h: &Multigraph, limit: usize) -> CopyList {
    enumerate_copies(g, h, Some(limit)).unwrap_or(CopyList {
        copies: Vec::new(),
        complete: true,
        embeddings_seen: 0,
    })
}

/// Exact cover of `V(G)` by vertex-disjoint copies.
pub fn check_tiling(g: &Multigraph, h: &Multigraph) -> Decision<TilingCertificate> {
    check_tiling_limited(g, h, DEFAULT_COPY_LIMIT)
}

pub fn check_tiling_limited(
    g: &Multigraph,
    h: &Multigraph,
    limit: usize,
) -> Decision<TilingCertificate> {
    if h.n() > g.n() || !g.n().is_multiple_of(h.n()) {
        return Decision::Fails { explored: 0 };
    }
    let list = copies_or_empty(g, h, limit);
    // Copies sharing a vertex set are interchangeable here.
    let mut by_set: Vec<Subgraph> = Vec::new();
    let mut seen = BTreeSet::new();
    for c in &list.copies {
        if seen.insert(c.subgraph.vertices.clone()) {
            by_set.push(c.subgraph.clone());
        }
    }
    let n = g.n();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in by_set.iter().enumerate() {
        for &x in s.vertices.as_slice() {
            containing[x].push(i);
        }
    }
    let mut covered = vec![false; n];
    let mut chosen = Vec::new();
    let mut explored = 0usize;

    fn search(
        sets: &[Subgraph],
        containing: &[Vec<usize>],
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        explored: &mut usize,
    ) -> bool {
        // Uncovered vertex with the fewest usable copies.
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in 0..covered.len() {
            if covered[x] {
                continue;
            }
            let usable: Vec<usize> = containing[x]
                .iter()
                .copied()
                .filter(|&i| sets[i].vertices.as_slice().iter().all(|&v| !covered[v]))
                .collect();
            if best.as_ref().is_none_or(|(_, b)| usable.len() < b.len()) {
                let done = usable.is_empty();
                best = Some((x, usable));
                if done {
                    break;
                }
            }
        }
        let Some((_, options)) = best else {
            return true;
        };
        for i in options {
            *explored += 1;
            for &v in sets[i].vertices.as_slice() {
                covered[v] = true;
            }
            chosen.push(i);
            if search(sets, containing, covered, chosen, explored) {
                return true;
            }
            chosen.pop();
            for &v in sets[i].vertices.as_slice() {
                covered[v] = false;
            }
        }
        false
    }

    if search(
        &by_set,
        &containing,
        &mut covered,
        &mut chosen,
        &mut explored,
    ) {
        Decision::Holds(TilingCertificate {
            copies: chosen.into_iter().map(|i| by_set[i].clone()).collect(),
        })
    } else if list.complete {
        Decision::Fails { explored }
    } else {
        Decision::Inconclusive {
            copies_considered: list.copies.len(),
        }
    }
}

pub fn check_fractional_tiling(
    g: &Multigraph,
    h: &Multigraph,
) -> Decision<FractionalTilingCertificate> {
    check_fractional(g, h, TilingMode::Vertex, DEFAULT_COPY_LIMIT)
}

pub fn check_fractional_edge_tiling(
    g: &Multigraph,
    h: &Multigraph,
) -> Decision<FractionalTilingCertificate> {
    check_fractional(g, h, TilingMode::Edge, DEFAULT_COPY_LIMIT)
}

/// Feasibility of `A c = 1, c >= 0` with `A` the vertex (or edge-unit) by
/// copy incidence matrix; a basic solution is scaled to the least integral
/// certificate.
pub fn check_fractional(
    g: &Multigraph,
    h: &Multigraph,
    mode: TilingMode,
    limit: usize,
) -> Decision<FractionalTilingCertificate> {
    if h.n() > g.n() || (mode == TilingMode::Edge && h.edge_units() == 0) {
        return Decision::Fails { explored: 0 };
    }
    let list = copies_or_empty(g, h, limit);
    let rows: Vec<RowKey> = match mode {
        TilingMode::Vertex => (0..g.n()).map(RowKey::Vertex).collect(),
        TilingMode::Edge => g.edge_unit_list().into_iter().map(RowKey::Unit).collect(),
    };
    let row_index: HashMap<RowKey, usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();

    // Identical incidence columns are merged; keep the first copy for each.
    let mut columns: Vec<(Vec<usize>, Subgraph)> = Vec::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for c in &list.copies {
        let mut support: Vec<usize> = match mode {
            TilingMode::Vertex => c.subgraph.vertices.as_slice().to_vec(),
            TilingMode::Edge => c
                .subgraph
                .edges
                .iter()
                .map(|u| row_index[&RowKey::Unit(*u)])
                .collect(),
        };
        support.sort_unstable();
        if !seen.contains_key(&support) {
            seen.insert(support.clone(), columns.len());
            columns.push((support, c.subgraph.clone()));
        }
    }

    let mut a = vec![vec![Rational::zero(); columns.len()]; rows.len()];
    for (j, (support, _)) in columns.iter().enumerate() {
        for &i in support {
            a[i][j] += Rational::one();
        }
    }
    let b = vec![Rational::one(); rows.len()];
    match simplex::find_feasible(&a, &b) {
        Some(x) => {
            let l = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&l / v.denom())).collect();
            let g_all = ints.iter().fold(l.clone(), |acc, v| acc.gcd(v));
            let copies = columns
                .into_iter()
                .zip(ints)
                .filter(|(_, k)| k.is_positive())
                .map(|((_, sub), k)| (sub, (k / &g_all).to_biguint().unwrap()))
                .collect();
            Decision::Holds(FractionalTilingCertificate {
                mode,
                copies,
                coverage: (l / &g_all).to_biguint().unwrap(),
            })
        }
        None if list.complete => Decision::Fails {
            explored: list.copies.len(),
        },
        None => Decision::Inconclusive {
            copies_considered: list.copies.len(),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum RowKey {
    Vertex(usize),
    Unit(EdgeUnit),
}

/// Transportation problem on the rooted-copy relation, scaled by `|G||H|`:
/// supply `|H|` at each host vertex, demand `|G|` at each pattern vertex.
pub fn check_domination(g: &Multigraph, h: &Multigraph) -> Decision<CouplingCertificate> {
    let rel = rooted_copy_relation(g, h);
    domination_from_relation(&rel)
}

pub fn domination_from_relation(rel: &RootedCopyRelation) -> Decision<CouplingCertificate> {
    let (gn, hn) = (rel.g_n, rel.h_n);
    let (s, t) = (gn + hn, gn + hn + 1);
    let mut net = FlowNetwork::new(gn + hn + 2);
    for x in 0..gn {
        net.add_arc(s, x, hn as i64);
    }
    for y in 0..hn {
        net.add_arc(gn + y, t, gn as i64);
    }
    let total = (gn * hn) as i64;
    let arcs: Vec<((usize, usize), usize)> = rel
        .pairs
        .iter()
        .map(|&(x, y)| ((x, y), net.add_arc(x, gn + y, total)))
        .collect();
    if net.max_flow(s, t) < total {
        return Decision::Fails {
            explored: rel.pairs.len(),
        };
    }
    let denom = BigInt::from(total);
    let masses = arcs
        .into_iter()
        .filter_map(|(pair, id)| {
            let f = net.flow(id);
            (f > 0).then(|| (pair, Rational::new(BigInt::from(f), denom.clone())))
        })
        .collect();
    Decision::Holds(CouplingCertificate {
        g_n: gn,
        h_n: hn,
        masses,
    })
}

pub const HALL_MAX_PATTERN: usize = 20;

/// Brute-force oracle: domination holds iff every `T ⊆ V(H)` satisfies
/// `|N(T)| |H| >= |T| |G|` in the rooted-copy relation. Returns a violating
/// `T` when it fails.
pub fn domination_hall_condition(
    g: &Multigraph,
    h: &Multigraph,
) -> Result<(bool, Option<VertexSet>)> {
    if h.n() > HALL_MAX_PATTERN {
        return Err(Error::BoundExceeded {
            what: "pattern vertex count",
            actual: h.n(),
            limit: HALL_MAX_PATTERN,
        });
    }
    let rel = rooted_copy_relation(g, h);
    let hn = h.n();
    let mut nbr = vec![0u64; hn];
    for &(x, y) in &rel.pairs {
        nbr[y] |= 1u64 << x;
    }
    let g_bits = |mask: u64| -> u64 {
        if g.n() <= 64 {
            mask.count_ones() as u64
        } else {
            unreachable!()
        }
    };
    if g.n() > 64 {
        return Err(Error::BoundExceeded {
            what: "host vertex count",
            actual: g.n(),
            limit: 64,
        });
    }
    for t in 1u64..(1 << hn) {
        let mut n_mask = 0u64;
        for (y, nb) in nbr.iter().enumerate() {
            if t >> y & 1 == 1 {
                n_mask |= nb;
            }
        }
        if g_bits(n_mask) * (hn as u64) < (t.count_ones() as u64) * (g.n() as u64) {
            return Ok((false, Some(VertexSet::from_mask(t, hn))));
        }
    }
    Ok((true, None))
}

/// Re-validates a certificate for `(g, h)` without trusting the decider.
pub fn verify_certificate(g: &Multigraph, h: &Multigraph, cert: &Certificate) -> bool {
    match cert {
        Certificate::Tiling(c) => {
            let mut covered = vec![false; g.n()];
            for sub in &c.copies {
                if !is_copy_of(g, h, sub) {
                    return false;
                }
                for &x in sub.vertices.as_slice() {
                    if covered[x] {
                        return false;
                    }
                    covered[x] = true;
                }
            }
            covered.iter().all(|&b| b)
        }
        Certificate::FractionalTiling(c) => {
            if c.coverage.is_zero() || c.copies.is_empty() {
                return false;
            }
            let mut counts: HashMap<RowKey, BigUint> = HashMap::new();
            for (sub, k) in &c.copies {
                if k.is_zero() || !is_copy_of(g, h, sub) {
                    return false;
                }
                match c.mode {
                    TilingMode::Vertex => {
                        for &x in sub.vertices.as_slice() {
                            *counts.entry(RowKey::Vertex(x)).or_default() += k;
                        }
                    }
                    TilingMode::Edge => {
                        for u in &sub.edges {
                            *counts.entry(RowKey::Unit(*u)).or_default() += k;
                        }
                    }
                }
            }
            let rows: Vec<RowKey> = match c.mode {
                TilingMode::Vertex => (0..g.n()).map(RowKey::Vertex).collect(),
                TilingMode::Edge => g.edge_unit_list().into_iter().map(RowKey::Unit).collect(),
            };
            counts.len() == rows.len() && rows.iter().all(|r| counts.get(r) == Some(&c.coverage))
        }
        Certificate::Coupling(c) => {
            if c.g_n != g.n() || c.h_n != h.n() {
                return false;
            }
            let rel = rooted_copy_relation(g, h);
            let mut rows = vec![Rational::zero(); g.n()];
            let mut cols = vec![Rational::zero(); h.n()];
            for (&(x, y), m) in &c.masses {
                if m.is_negative() || x >= g.n() || y >= h.n() {
                    return false;
                }
                if m.is_zero() {
                    continue;
                }
                if !rel.contains(x, y) {
                    return false;
                }
                rows[x] += m;
                cols[y] += m;
            }
            let row_target = Rational::new(BigInt::one(), BigInt::from(g.n()));
            let col_target = Rational::new(BigInt::one(), BigInt::from(h.n()));
            rows.iter().all(|r| *r == row_target) && cols.iter().all(|c| *c == col_target)
        }
    }
}

fn is_copy_of(g: &Multigraph, h: &Multigraph, sub: &Subgraph) -> bool {
    if sub.vertices.len() != h.n() || sub.edges.len() != h.edge_units() {
        return false;
    }
    match g.subgraph_graph(sub) {
        Ok(piece) => is_isomorphic(&piece.unweighted(), &h.unweighted()),
        Err(_) => false,
    }
}

fn subgraph_json(sub: &Subgraph) -> Value {
    json!({
        "vertices": sub.vertices.as_slice(),
        "edges": sub.edges.iter().map(|e| json!([e.u, e.v, e.k])).collect::<Vec<_>>(),
    })
}

fn subgraph_from_json(v: &Value, n: usize) -> Result<Subgraph> {
    let bad = || Error::Param("malformed copy descriptor".into());
    let vertices = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(bad)?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(bad))
        .collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for e in v.get("edges").and_then(Value::as_array).ok_or_else(bad)? {
        let a = e.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
        let num = |i: usize| a[i].as_u64().ok_or_else(bad);
        edges.push(EdgeUnit {
            u: num(0)? as usize,
            v: num(1)? as usize,
            k: num(2)? as u32,
        });
    }
    edges.sort();
    Ok(Subgraph {
        vertices: VertexSet::new(vertices, n)?,
        edges,
    })
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Tiling(_) => "tiling",
            Certificate::FractionalTiling(c) if c.mode == TilingMode::Edge => {
                "fractional_edge_tiling"
            }
            Certificate::FractionalTiling(_) => "fractional_tiling",
            Certificate::Coupling(_) => "coupling",
        }
    }

    /// JSON form: a `type` tag, copy descriptors as sorted vertex lists plus
    /// edge units `[u, v, k]`, integers and rational masses as strings.
    pub fn to_json(&self) -> Value {
        match self {
            Certificate::Tiling(c) => json!({
                "type": self.kind(),
                "copies": c.copies.iter().map(subgraph_json).collect::<Vec<_>>(),
            }),
            Certificate::FractionalTiling(c) => json!({
                "type": self.kind(),
                "coverage": c.coverage.to_string(),
                "copies": c.copies.iter().map(|(s, k)| {
                    let mut v = subgraph_json(s);
                    v["multiplicity"] = json!(k.to_string());
                    v
                }).collect::<Vec<_>>(),
            }),
            Certificate::Coupling(c) => json!({
                "type": self.kind(),
                "g_n": c.g_n,
                "h_n": c.h_n,
                "masses": c.masses.iter().map(|(&(x, y), m)| json!([x, y, m.to_string()])).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(v: &Value, g_n: usize) -> Result<Certificate> {
        let bad = |m: &str| Error::Param(format!("certificate: {m}"));
        let kind = v
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing type"))?;
        let copies = || -> Result<Vec<&Value>> {
            Ok(v.get("copies")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing copies"))?
                .iter()
                .collect())
        };
        let big = |s: Option<&Value>| -> Result<BigUint> {
            s.and_then(Value::as_str)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("expected an integer string"))
        };
        match kind {
            "tiling" => Ok(Certificate::Tiling(TilingCertificate {
                copies: copies()?
                    .into_iter()
                    .map(|c| subgraph_from_json(c, g_n))
                    .collect::<Result<_>>()?,
            })),
            "fractional_tiling" | "fractional_edge_tiling" => {
                let mode = if kind == "fractional_tiling" {
                    TilingMode::Vertex
                } else {
                    TilingMode::Edge
                };
                let copies = copies()?
                    .into_iter()
                    .map(|c| Ok((subgraph_from_json(c, g_n)?, big(c.get("multiplicity"))?)))
                    .collect::<Result<_>>()?;
                Ok(Certificate::FractionalTiling(FractionalTilingCertificate {
                    mode,
                    copies,
                    coverage: big(v.get("coverage"))?,
                }))
            }
            "coupling" => {
                let dim = |k: &str| {
                    v.get(k)
                        .and_then(Value::as_u64)
                        .map(|x| x as usize)
                        .ok_or_else(|| bad(k))
                };
                let mut masses = BTreeMap::new();
                for m in v
                    .get("masses")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("missing masses"))?
                {
                    let a = m
                        .as_array()
                        .filter(|a| a.len() == 3)
                        .ok_or_else(|| bad("mass triple"))?;
                    let x = a[0].as_u64().ok_or_else(|| bad("mass index"))? as usize;
                    let y = a[1].as_u64().ok_or_else(|| bad("mass index"))? as usize;
                    let q: Rational = a[2]
                        .as_str()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("mass value"))?;
                    masses.insert((x, y), q);
                }
                Ok(Certificate::Coupling(CouplingCertificate {
                    g_n: dim("g_n")?,
                    h_n: dim("h_n")?,
                    masses,
                }))
            }
            other => Err(bad(&format!("unknown type {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> Multigraph {
        Multigraph::path(2)
    }

    #[test]
    fn tiling_examples() {
        let grid = Multigraph::grid(4, 4);
        let c4 = Multigraph::cycle(4);
        let cert = check_tiling(&grid, &c4).certificate().cloned().unwrap();
        assert_eq!(cert.copies.len(), 4);
        assert!(verify_certificate(&grid, &c4, &Certificate::Tiling(cert)));
        assert_eq!(
            check_tiling(&Multigraph::complete(4), &Multigraph::complete(3)),
            Decision::Fails { explored: 0 }
        );
        let k5 = Multigraph::complete(5);
        assert_eq!(
            check_tiling(&k5, &k5).certificate().unwrap().copies.len(),
            1
        );
        assert!(!check_tiling(&Multigraph::star(3), &edge()).holds());
    }

    #[test]
    fn fractional_examples() {
        let k4 = Multigraph::complete(4);
        let k3 = Multigraph::complete(3);
        let cert = check_fractional_tiling(&k4, &k3)
            .certificate()
            .cloned()
            .unwrap();
        assert_eq!(cert.coverage, BigUint::from(3u32));
        assert_eq!(cert.copies.len(), 4);
        assert!(cert.copies.iter().all(|(_, k)| k.is_one()));
        let c = Certificate::FractionalTiling(cert.clone());
        assert!(verify_certificate(&k4, &k3, &c));

        let mut broken = cert.clone();
        broken.copies[0].1 -= BigUint::one();
        assert!(!verify_certificate(
            &k4,
            &k3,
            &Certificate::FractionalTiling(broken)
        ));

        assert!(matches!(
            check_fractional_tiling(&Multigraph::path(3), &edge()),
            Decision::Fails { .. }
        ));
        let c5 = check_fractional_tiling(&Multigraph::cycle(5), &edge());
        let cert = c5.certificate().unwrap();
        assert_eq!(cert.coverage, BigUint::from(2u32));
        assert_eq!(cert.copies.len(), 5);
    }

    #[test]
    fn edge_tiling_examples() {
        let c6 = Multigraph::cycle(6);
        let p3 = Multigraph::path(3);
        let cert = check_fractional_edge_tiling(&c6, &p3)
            .certificate()
            .cloned()
            .unwrap();
        assert!(verify_certificate(
            &c6,
            &p3,
            &Certificate::FractionalTiling(cert.clone())
        ));
        // C_6 splits into three edge-disjoint paths, a basic solution.
        assert_eq!(cert.coverage, BigUint::from(1u32));
        assert_eq!(cert.copies.len(), 3);

        let k4 = Multigraph::complete(4);
        let k3 = Multigraph::complete(3);
        let cert = check_fractional_edge_tiling(&k4, &k3)
            .certificate()
            .cloned()
            .unwrap();
        assert_eq!(cert.coverage, BigUint::from(2u32));
        assert!(!check_fractional_edge_tiling(&Multigraph::path(3), &k3).holds());
    }

    #[test]
    fn domination_examples() {
        let k4 = Multigraph::complete(4);
        let k3 = Multigraph::complete(3);
        let cert = check_domination(&k4, &k3).certificate().cloned().unwrap();
        assert!(verify_certificate(
            &k4,
            &k3,
            &Certificate::Coupling(cert.clone())
        ));
        let mut perturbed = cert.clone();
        let first = *perturbed.masses.keys().next().unwrap();
        *perturbed.masses.get_mut(&first).unwrap() += Rational::new(1.into(), 1000.into());
        assert!(!verify_certificate(
            &k4,
            &k3,
            &Certificate::Coupling(perturbed)
        ));

        assert!(check_domination(&Multigraph::star(4), &edge()).holds());
        assert!(!check_domination(&edge(), &k3).holds());
        assert!(check_domination(&Multigraph::path(3), &edge()).holds());
    }

    #[test]
    fn hall_examples() {
        assert_eq!(
            domination_hall_condition(&Multigraph::complete(4), &Multigraph::complete(3)).unwrap(),
            (true, None)
        );
        assert_eq!(
            domination_hall_condition(&Multigraph::complete(3), &Multigraph::path(3)).unwrap(),
            (true, None)
        );
        let (ok, witness) =
            domination_hall_condition(&Multigraph::cycle(4), &Multigraph::complete(3)).unwrap();
        assert!(!ok);
        assert!(witness.is_some());
    }

    #[test]
    fn certificate_json_roundtrip() {
        let k4 = Multigraph::complete(4);
        let k3 = Multigraph::complete(3);
        for cert in [
            Certificate::FractionalTiling(
                check_fractional_tiling(&k4, &k3)
                    .certificate()
                    .cloned()
                    .unwrap(),
            ),
            Certificate::Coupling(check_domination(&k4, &k3).certificate().cloned().unwrap()),
            Certificate::Tiling(check_tiling(&k4, &k4).certificate().cloned().unwrap()),
        ] {
            let back = Certificate::from_json(&cert.to_json(), 4).unwrap();
            assert_eq!(back, cert);
        }
    }
}
