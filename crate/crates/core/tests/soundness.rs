//! Proven statements never report a violation on hypothesis-satisfying
//! pairs. Complements the acceptance sweep with the spectral and minor ids.

mod common;

use gdom::embedding::contains_copy;
use gdom::graph::Multigraph;
use gdom::harness::{check, CheckParams, InequalityId, Status, Verdict};
use gdom::symmetry::is_isomorphic;

fn params(hyp: Option<&str>, functional: Option<&str>) -> CheckParams {
    CheckParams {
        hypothesis: hyp.map(|h| h.parse().unwrap()),
        functional: functional.map(|f| f.parse().unwrap()),
        ..Default::default()
    }
}

fn sweep(max_n: usize, id: InequalityId, p: &CheckParams) -> usize {
    let classes = common::connected_classes(max_n);
    let graphs: Vec<&Multigraph> = classes.iter().flatten().collect();
    let mut satisfied = 0;
    for g in &graphs {
        for h in &graphs {
            if h.n() > g.n() || !contains_copy(g, h) {
                continue;
            }
            let r = check(id, g, Some(h), p).unwrap_or_else(|e| panic!("{id} G={g} H={h}: {e}"));
            assert_eq!(
                r.status,
                Status::Proven,
                "{id} under {}",
                r.hypothesis.required
            );
            if !r.hypothesis.satisfied {
                continue;
            }
            satisfied += 1;
            assert!(
                r.verdict.is_pass() || r.verdict == Verdict::Inconclusive,
                "{id} G={g} H={h}: {:?}",
                r.verdict
            );
            assert_ne!(r.verdict, Verdict::Violated);
        }
    }
    assert!(satisfied > 0, "{id}: nothing satisfied the hypothesis");
    satisfied
}

#[test]
fn minor_power_on_transitive_hosts() {
    sweep(6, InequalityId::MinorPower, &params(None, None));
}

#[test]
fn spanning_tree_under_fractional_tiling() {
    sweep(
        6,
        InequalityId::SpanningTree,
        &params(Some("fractional_tiling"), None),
    );
}

#[test]
fn heat_trace_frac_sweep() {
    sweep(6, InequalityId::HeatTraceFrac, &params(None, None));
}

#[test]
fn weighted_cover_heat_sweep() {
    sweep(5, InequalityId::WeightedCoverHeat, &params(None, None));
}

#[test]
fn spectral_functionals_under_fractional_tiling() {
    for f in ["hinge:4", "exp_decay:1", "hinge:3/2"] {
        sweep(
            6,
            InequalityId::SpectralDecreasingConvex,
            &params(Some("fractional_tiling"), Some(f)),
        );
    }
}

#[test]
fn op_monotone_and_char_poly_under_domination() {
    for f in ["shifted_log:1/2", "shifted_inverse:1", "shifted_log:2"] {
        sweep(6, InequalityId::OpMonotone, &params(None, Some(f)));
    }
    sweep(6, InequalityId::CharPoly, &params(None, None));
}

#[test]
fn transitive_g_is_strict_on_the_catalog() {
    let catalog = [
        Multigraph::complete(4),
        Multigraph::complete(5),
        Multigraph::cycle(5),
        Multigraph::cycle(6),
        Multigraph::hypercube(3),
        Multigraph::circulant(8, &[1, 3]).unwrap(),
        Multigraph::circulant(7, &[1, 2]).unwrap(),
    ];
    let patterns: Vec<Multigraph> = common::connected_classes(5).into_iter().flatten().collect();
    let mut strict = 0;
    for g in &catalog {
        for h in &patterns {
            if h.n() > g.n() || !contains_copy(g, h) {
                continue;
            }
            let r = check(
                InequalityId::TransitiveG,
                g,
                Some(h),
                &CheckParams::default(),
            )
            .unwrap();
            assert!(r.hypothesis.satisfied, "G={g} H={h}");
            if is_isomorphic(g, h) {
                assert_eq!(r.verdict, Verdict::HoldsWithEquality);
            } else {
                assert_eq!(r.verdict, Verdict::Holds, "G={g} H={h}");
                strict += 1;
            }
        }
    }
    assert!(strict > 50, "{strict}");
}
