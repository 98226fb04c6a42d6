//! Inequality checkers, Shearer's inequality, pair generators and the
//! counterexample hunt.

mod compare;
mod generate;
mod shearer;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::counting::{
    count_acyclic_orientations, count_forests, count_independent_sets, count_matchings,
    count_packings, count_proper_colorings, count_spanning_trees, count_weighted_homomorphisms,
    tutte_polynomial_bounded, TargetGraph, TuttePolynomial, WeightFunction,
};
use crate::embedding::{enumerate_copies, Copy};
use crate::error::{Error, Result};
use crate::format::{parse_graph, to_json as graph_json, Format};
use crate::graph::{parse_rational, rat, Multigraph, Rational, Subgraph, VertexSet};
use crate::linalg::{rational_ln, rational_to_f64};
use crate::relations::{
    check_domination, check_fractional_edge_tiling, check_fractional_tiling, Certificate, Decision,
    FractionalTilingCertificate,
};
use crate::spectral::{heat_trace_of, spectral_functional_of, spectrum, FunctionalSpec, Spectrum};
use crate::symmetry::{is_isomorphic, is_transitive};

pub use compare::{compare_roots, root_approx, Direction, Verdict};
pub use generate::{
    generate_pair, hunt, GeneratedPair, HuntResult, PairGenerator, Strategy, Violation,
};
pub use shearer::{check_shearer, JointDistribution};

/// Copies examined by the per-copy checkers.
pub const COPY_LIMIT: usize = 100_000;
/// Terms allowed in the expanded Tutte difference polynomial.
pub const TUTTE_TERM_CAP: usize = 4_000_000;
/// Edge units allowed for Tutte polynomials inside checks.
pub const CHECK_TUTTE_BOUND: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityId {
    SpanningTree,
    TreeProduct,
    MinorPower,
    #[serde(rename = "transitive_G")]
    TransitiveG,
    #[serde(rename = "transitive_H")]
    TransitiveH,
    FracTilingTree,
    KoteljanskiiStep,
    CoverProduct,
    HeatTraceFrac,
    WeightedCoverHeat,
    SpectralDecreasingConvex,
    OpMonotone,
    CharPoly,
    VertexCounting,
    EdgeCounting,
    MatchingsLower,
    TuttePointwise,
    TutteCoefficients,
    /// Entropy inequality on a joint distribution; see [`check_shearer`].
    Shearer,
}

impl InequalityId {
    /// The graph inequalities; [`InequalityId::Shearer`] is separate.
    pub const ALL: [InequalityId; 18] = [
        InequalityId::SpanningTree,
        InequalityId::TreeProduct,
        InequalityId::MinorPower,
        InequalityId::TransitiveG,
        InequalityId::TransitiveH,
        InequalityId::FracTilingTree,
        InequalityId::KoteljanskiiStep,
        InequalityId::CoverProduct,
        InequalityId::HeatTraceFrac,
        InequalityId::WeightedCoverHeat,
        InequalityId::SpectralDecreasingConvex,
        InequalityId::OpMonotone,
        InequalityId::CharPoly,
        InequalityId::VertexCounting,
        InequalityId::EdgeCounting,
        InequalityId::MatchingsLower,
        InequalityId::TuttePointwise,
        InequalityId::TutteCoefficients,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InequalityId::SpanningTree => "spanning_tree",
            InequalityId::TreeProduct => "tree_product",
            InequalityId::MinorPower => "minor_power",
            InequalityId::TransitiveG => "transitive_G",
            InequalityId::TransitiveH => "transitive_H",
            InequalityId::FracTilingTree => "frac_tiling_tree",
            InequalityId::KoteljanskiiStep => "koteljanskii_step",
            InequalityId::CoverProduct => "cover_product",
            InequalityId::HeatTraceFrac => "heat_trace_frac",
            InequalityId::WeightedCoverHeat => "weighted_cover_heat",
            InequalityId::SpectralDecreasingConvex => "spectral_decreasing_convex",
            InequalityId::OpMonotone => "op_monotone",
            InequalityId::CharPoly => "char_poly",
            InequalityId::VertexCounting => "vertex_counting",
            InequalityId::EdgeCounting => "edge_counting",
            InequalityId::MatchingsLower => "matchings_lower",
            InequalityId::TuttePointwise => "tutte_pointwise",
            InequalityId::TutteCoefficients => "tutte_coefficients",
            InequalityId::Shearer => "shearer",
        }
    }

    /// Relation assumed when no override is given.
    pub fn default_hypothesis(self) -> Hypothesis {
        use InequalityId::*;
        let (relation, g_transitive, h_transitive) = match self {
            TreeProduct => (Relation::Subgraph, false, false),
            MinorPower => (Relation::Subgraph, true, false),
            TransitiveG => (Relation::Domination, true, false),
            TransitiveH => (Relation::Domination, false, true),
            FracTilingTree | HeatTraceFrac | WeightedCoverHeat => {
                (Relation::FractionalTiling, false, false)
            }
            KoteljanskiiStep | CoverProduct | Shearer => (Relation::None, false, false),
            SpanningTree
            | SpectralDecreasingConvex
            | OpMonotone
            | CharPoly
            | VertexCounting
            | EdgeCounting
            | MatchingsLower
            | TuttePointwise
            | TutteCoefficients => (Relation::Domination, false, false),
        };
        Hypothesis {
            relation,
            g_transitive,
            h_transitive,
        }
    }

    /// Whether the id compares two graphs (as opposed to one graph and
    /// vertex sets).
    pub fn needs_pattern(self) -> bool {
        !matches!(self, InequalityId::KoteljanskiiStep | InequalityId::Shearer)
    }

    /// Standing of the statement under `hyp` (and, where it matters, the
    /// counted family).
    pub fn status(self, hyp: &Hypothesis, family: Option<&CountFamily>) -> Status {
        use InequalityId::*;
        use Relation::*;
        let r = hyp.relation;
        match self {
            TreeProduct | KoteljanskiiStep | CoverProduct | Shearer => Status::Proven,
            MinorPower if hyp.g_transitive && r != None => Status::Proven,
            SpanningTree | TransitiveG | TransitiveH | FracTilingTree => {
                if r == FractionalTiling
                    || (r == Domination || r == Subgraph && self == TransitiveG)
                        && (hyp.g_transitive || hyp.h_transitive)
                {
                    Status::Proven
                } else {
                    Status::Conjectured
                }
            }
            HeatTraceFrac | WeightedCoverHeat if r == FractionalTiling => Status::Proven,
            SpectralDecreasingConvex if r == FractionalTiling => Status::Proven,
            SpectralDecreasingConvex if r == Domination && !hyp.h_transitive => {
                Status::KnownFalseUnderDomination
            }
            OpMonotone | CharPoly if matches!(r, Domination | FractionalTiling) => Status::Proven,
            VertexCounting if r == FractionalTiling => Status::Proven,
            VertexCounting
                if r == Domination
                    && matches!(family, Some(CountFamily::IndependentSets) | Option::None) =>
            {
                Status::KnownFalseUnderDomination
            }
            EdgeCounting if r == FractionalEdgeTiling => Status::Proven,
            MatchingsLower
                if r == Domination
                    && matches!(family, Some(CountFamily::Matchings) | Option::None) =>
            {
                Status::KnownFalseUnderDomination
            }
            _ => Status::Conjectured,
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InequalityId::ALL
            .iter()
            .copied()
            .chain([InequalityId::Shearer])
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownId(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Proven,
    Conjectured,
    KnownFalseUnderDomination,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Domination,
    FractionalTiling,
    FractionalEdgeTiling,
    /// `G` contains a copy of `H`.
    Subgraph,
    None,
}

impl Relation {
    pub fn name(self) -> &'static str {
        match self {
            Relation::Domination => "domination",
            Relation::FractionalTiling => "fractional_tiling",
            Relation::FractionalEdgeTiling => "fractional_edge_tiling",
            Relation::Subgraph => "subgraph",
            Relation::None => "none",
        }
    }
}

/// Required relation between the graphs plus transitivity side conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Hypothesis {
    pub relation: Relation,
    pub g_transitive: bool,
    pub h_transitive: bool,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.g_transitive {
            write!(f, "g_transitive+")?;
        }
        if self.h_transitive {
            write!(f, "h_transitive+")?;
        }
        f.write_str(self.relation.name())
    }
}

impl FromStr for Hypothesis {
    type Err = Error;

    /// `domination`, `fractional_tiling`, `h_transitive+domination`, ...
    fn from_str(s: &str) -> Result<Self> {
        let mut h = Hypothesis {
            relation: Relation::None,
            g_transitive: false,
            h_transitive: false,
        };
        for part in s.split('+') {
            match part.trim() {
                "g_transitive" => h.g_transitive = true,
                "h_transitive" => h.h_transitive = true,
                "domination" => h.relation = Relation::Domination,
                "fractional_tiling" => h.relation = Relation::FractionalTiling,
                "fractional_edge_tiling" => h.relation = Relation::FractionalEdgeTiling,
                "subgraph" => h.relation = Relation::Subgraph,
                "none" => h.relation = Relation::None,
                other => return Err(Error::Param(format!("unknown hypothesis part `{other}`"))),
            }
        }
        Ok(h)
    }
}

/// Quantities counted by the counting-family inequalities.
#[derive(Clone, Debug, PartialEq)]
pub enum CountFamily {
    IndependentSets,
    Colorings(u64),
    Homomorphisms {
        target: TargetGraph,
        weights: WeightFunction,
        spec: String,
    },
    Forests,
    AcyclicOrientations,
    Matchings,
    Packings(Multigraph),
}

impl CountFamily {
    pub fn name(&self) -> String {
        match self {
            CountFamily::IndependentSets => "independent_sets".into(),
            CountFamily::Colorings(q) => format!("colorings:{q}"),
            CountFamily::Homomorphisms { spec, .. } => format!("homomorphisms:{spec}"),
            CountFamily::Forests => "forests".into(),
            CountFamily::AcyclicOrientations => "acyclic_orientations".into(),
            CountFamily::Matchings => "matchings".into(),
            CountFamily::Packings(k) => format!("packings:{k}"),
        }
    }

    /// Families usable with `id`, first one the default.
    pub fn defaults_for(id: InequalityId) -> Vec<CountFamily> {
        match id {
            InequalityId::VertexCounting => vec![
                CountFamily::IndependentSets,
                CountFamily::Colorings(3),
                "homomorphisms".parse().unwrap(),
            ],
            InequalityId::EdgeCounting => {
                vec![
                    CountFamily::Forests,
                    CountFamily::AcyclicOrientations,
                    CountFamily::Matchings,
                ]
            }
            InequalityId::MatchingsLower => vec![CountFamily::Matchings],
            _ => Vec::new(),
        }
    }

    fn allowed(&self, id: InequalityId) -> bool {
        use CountFamily::*;
        match id {
            InequalityId::VertexCounting => {
                matches!(self, IndependentSets | Colorings(_) | Homomorphisms { .. })
            }
            InequalityId::EdgeCounting => matches!(self, Forests | AcyclicOrientations | Matchings),
            InequalityId::MatchingsLower => matches!(self, Matchings | Packings(_)),
            _ => false,
        }
    }

    pub fn count(&self, g: &Multigraph) -> Result<Rational> {
        let int = |x: BigUint| Rational::from_integer(BigInt::from(x));
        Ok(match self {
            CountFamily::IndependentSets => int(count_independent_sets(g)?),
            CountFamily::Colorings(q) => Rational::from_integer(count_proper_colorings(g, *q)?),
            CountFamily::Homomorphisms {
                target, weights, ..
            } => count_weighted_homomorphisms(g, target, weights)?,
            CountFamily::Forests => int(count_forests_bounded(g)?),
            CountFamily::AcyclicOrientations => int(count_acyclic_bounded(g)?),
            CountFamily::Matchings => int(count_matchings(g)?),
            CountFamily::Packings(k) => int(count_packings(g, k)?),
        })
    }
}

fn count_forests_bounded(g: &Multigraph) -> Result<BigUint> {
    if g.edge_units() <= crate::counting::DEFAULT_TUTTE_BOUND {
        return count_forests(g);
    }
    Ok(tutte_polynomial_bounded(g, CHECK_TUTTE_BOUND)?
        .eval_int(2, 1)
        .to_biguint()
        .unwrap())
}

fn count_acyclic_bounded(g: &Multigraph) -> Result<BigUint> {
    if g.edge_units() <= crate::counting::DEFAULT_TUTTE_BOUND {
        return count_acyclic_orientations(g);
    }
    Ok(tutte_polynomial_bounded(g, CHECK_TUTTE_BOUND)?
        .eval_int(2, 0)
        .to_biguint()
        .unwrap())
}

impl fmt::Display for CountFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for CountFamily {
    type Err = Error;

    /// `independent_sets`, `colorings[:q]`, `homomorphisms[:pairs[:weights]]`
    /// (pairs like `0-1,0-0`, weights like `1,2`), `forests`,
    /// `acyclic_orientations`, `matchings`, `packings:<edge list>`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, rest) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let bad = |m: &str| Error::Param(format!("family `{s}`: {m}"));
        Ok(match (head, rest) {
            ("independent_sets", None) => CountFamily::IndependentSets,
            ("colorings", None) => CountFamily::Colorings(3),
            ("colorings", Some(q)) => {
                let q: u64 = q
                    .parse()
                    .map_err(|_| bad("colour count must be a positive integer"))?;
                if q == 0 {
                    return Err(bad("colour count must be positive"));
                }
                CountFamily::Colorings(q)
            }
            ("homomorphisms", spec) => {
                // Default: an edge with a loop at vertex 0, weights 1 and 2
                // (independent sets with fugacity 2).
                let spec = spec.unwrap_or("0-1,0-0:1,2");
                let (pairs_txt, weights_txt) = match spec.split_once(':') {
                    Some((p, w)) => (p, Some(w)),
                    None => (spec, None),
                };
                let mut pairs = Vec::new();
                for p in pairs_txt.split(',').filter(|p| !p.is_empty()) {
                    let (a, b) = p
                        .split_once('-')
                        .ok_or_else(|| bad("target pairs look like 0-1"))?;
                    let a: usize = a.trim().parse().map_err(|_| bad("bad target vertex"))?;
                    let b: usize = b.trim().parse().map_err(|_| bad("bad target vertex"))?;
                    pairs.push((a, b));
                }
                let n = pairs.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(1);
                let weights = match weights_txt {
                    Some(w) => w
                        .split(',')
                        .map(|x| parse_rational(x).ok_or_else(|| bad("bad weight")))
                        .collect::<Result<Vec<_>>>()?,
                    None => vec![Rational::one(); n],
                };
                let n = n.max(weights.len());
                CountFamily::Homomorphisms {
                    target: TargetGraph::new(n, &pairs)?,
                    weights: WeightFunction::new(weights)?,
                    spec: spec.to_string(),
                }
            }
            ("forests", None) => CountFamily::Forests,
            ("acyclic_orientations", None) => CountFamily::AcyclicOrientations,
            ("matchings", None) => CountFamily::Matchings,
            ("packings", Some(k)) => CountFamily::Packings(parse_graph(k, Format::EdgeList)?),
            _ => return Err(bad("unknown family")),
        })
    }
}

/// Optional inputs to [`check`]. Anything left `None` takes the id's default.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckParams {
    pub t_grid: Option<Vec<Rational>>,
    /// Axis values for the `(x, y)` grid of Tutte evaluations.
    pub xy_grid: Option<Vec<Rational>>,
    pub functional: Option<FunctionalSpec>,
    pub family: Option<CountFamily>,
    /// Vertex sets: `[A, B]` for the Koteljanskii step, the cover for the
    /// cover product.
    pub sets: Option<Vec<VertexSet>>,
    pub hypothesis: Option<Hypothesis>,
    /// Multiplies every inherited piece weight in the weighted cover check.
    pub piece_weight_scale: Option<Rational>,
}

impl CheckParams {
    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        if let Some(t) = &self.t_grid {
            m.insert(
                "t_grid".into(),
                json!(t.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            );
        }
        if let Some(t) = &self.xy_grid {
            m.insert(
                "xy_grid".into(),
                json!(t.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            );
        }
        if let Some(f) = &self.functional {
            m.insert("functional".into(), json!(f.to_string()));
        }
        if let Some(f) = &self.family {
            m.insert("family".into(), json!(f.name()));
        }
        if let Some(s) = &self.sets {
            m.insert(
                "sets".into(),
                json!(s.iter().map(|v| v.as_slice().to_vec()).collect::<Vec<_>>()),
            );
        }
        if let Some(h) = &self.hypothesis {
            m.insert("hypothesis".into(), json!(h.to_string()));
        }
        if let Some(s) = &self.piece_weight_scale {
            m.insert("piece_weight_scale".into(), json!(s.to_string()));
        }
        Value::Object(m)
    }
}

impl CheckParams {
    /// Inverse of [`CheckParams::to_json`]; rationals may be strings or
    /// integers.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = match v {
            Value::Null => return Ok(CheckParams::default()),
            Value::Object(o) => o,
            _ => return Err(Error::Param("parameters must be a JSON object".into())),
        };
        let bad = |k: &str| Error::Param(format!("bad parameter `{k}`"));
        let rational = |k: &str, x: &Value| -> Result<Rational> {
            match x {
                Value::String(s) => parse_rational(s).ok_or_else(|| bad(k)),
                Value::Number(n) => parse_rational(&n.to_string()).ok_or_else(|| bad(k)),
                _ => Err(bad(k)),
            }
        };
        let list = |k: &str| -> Result<Option<Vec<Rational>>> {
            match obj.get(k) {
                None => Ok(None),
                Some(Value::Array(a)) => a
                    .iter()
                    .map(|x| rational(k, x))
                    .collect::<Result<_>>()
                    .map(Some),
                Some(_) => Err(bad(k)),
            }
        };
        let text = |k: &str| -> Result<Option<&str>> {
            match obj.get(k) {
                None => Ok(None),
                Some(Value::String(s)) => Ok(Some(s)),
                Some(_) => Err(bad(k)),
            }
        };
        for k in obj.keys() {
            if ![
                "t_grid",
                "xy_grid",
                "functional",
                "family",
                "sets",
                "hypothesis",
                "piece_weight_scale",
            ]
            .contains(&k.as_str())
            {
                return Err(Error::Param(format!("unknown parameter `{k}`")));
            }
        }
        let sets = match obj.get("sets") {
            None => None,
            Some(Value::Array(a)) => Some(
                a.iter()
                    .map(|s| {
                        let items: Vec<usize> =
                            serde_json::from_value(s.clone()).map_err(|_| bad("sets"))?;
                        VertexSet::new(items, usize::MAX)
                    })
                    .collect::<Result<_>>()?,
            ),
            Some(_) => return Err(bad("sets")),
        };
        Ok(CheckParams {
            t_grid: list("t_grid")?,
            xy_grid: list("xy_grid")?,
            functional: text("functional")?.map(str::parse).transpose()?,
            family: text("family")?.map(str::parse).transpose()?,
            sets,
            hypothesis: text("hypothesis")?.map(str::parse).transpose()?,
            piece_weight_scale: obj
                .get("piece_weight_scale")
                .map(|x| rational("piece_weight_scale", x))
                .transpose()?,
        })
    }
}

/// `{2^k : -6 <= k <= 6}`.
pub fn default_t_grid() -> Vec<Rational> {
    (-6i32..=6)
        .map(|k| {
            if k < 0 {
                Rational::new(BigInt::one(), BigInt::one() << (-k) as usize)
            } else {
                Rational::from_integer(BigInt::one() << k as usize)
            }
        })
        .collect()
}

/// `{1, 3/2, 2, 3}`.
pub fn default_xy_grid() -> Vec<Rational> {
    vec![rat(1), Rational::new(3.into(), 2.into()), rat(2), rat(3)]
}

/// A side of an inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Quantity {
    /// Exact value written out (a rational, a root of one, or a
    /// polynomial), with a floating approximation when meaningful.
    Exact {
        value: String,
        approx: Option<f64>,
    },
    Float {
        value: f64,
        error: f64,
    },
}

impl Quantity {
    fn root(a: &Rational, m: u64) -> Quantity {
        let value = if m == 1 {
            a.to_string()
        } else {
            format!("{a}^(1/{m})")
        };
        Quantity::Exact {
            value,
            approx: Some(root_approx(a, m)),
        }
    }

    fn rational(a: &Rational) -> Quantity {
        Quantity::Exact {
            value: a.to_string(),
            approx: Some(rational_to_f64(a)),
        }
    }

    fn float(value: f64, error: f64) -> Quantity {
        Quantity::Float { value, error }
    }

    pub fn approx(&self) -> Option<f64> {
        match self {
            Quantity::Exact { approx, .. } => *approx,
            Quantity::Float { value, .. } => Some(*value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    /// Grid point or item, e.g. `t=1/2` or `copy 3`.
    pub at: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisOutcome {
    pub required: String,
    pub satisfied: bool,
    pub detail: String,
    pub certificate: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: InequalityId,
    pub status: Status,
    pub g: Value,
    pub h: Option<Value>,
    pub hypothesis: HypothesisOutcome,
    /// Claimed relation `lhs <direction> rhs`.
    pub direction: Direction,
    /// Sides at the deciding point (the first failing point, else the
    /// tightest one).
    pub lhs: Quantity,
    pub rhs: Quantity,
    /// The verdict with the hypothesis taken into account.
    pub verdict: Verdict,
    /// The comparison alone, whether or not the hypothesis holds.
    pub raw_verdict: Verdict,
    pub strictness: Option<String>,
    pub points: Vec<PointReport>,
    pub params: Value,
}

struct Outcome {
    direction: Direction,
    points: Vec<PointReport>,
    strictness: Option<String>,
    /// Extra structural condition (sets, weights) beyond the relation.
    side_condition: Option<(bool, String)>,
}

/// Evaluates inequality `id` on `(g, h)`.
pub fn check(
    id: InequalityId,
    g: &Multigraph,
    h: Option<&Multigraph>,
    params: &CheckParams,
) -> Result<CheckReport> {
    if id == InequalityId::Shearer {
        return Err(Error::Param(
            "shearer takes a joint distribution, not graphs".into(),
        ));
    }
    if id.needs_pattern()
        && h.is_none()
        && !(id == InequalityId::CoverProduct && params.sets.is_some())
    {
        return Err(Error::Param(format!(
            "{id} compares two graphs; the second graph is missing"
        )));
    }
    if let Some(f) = &params.family {
        if !f.allowed(id) {
            return Err(Error::Param(format!("family {f} does not apply to {id}")));
        }
    }
    let hyp = params.hypothesis.unwrap_or_else(|| id.default_hypothesis());
    let mut hyp_out = match h {
        Some(h) => verify_hypothesis(&hyp, g, h)?,
        None => HypothesisOutcome {
            required: hyp.to_string(),
            satisfied: true,
            detail: "no pattern graph".into(),
            certificate: None,
        },
    };
    let family = params
        .family
        .clone()
        .or_else(|| CountFamily::defaults_for(id).into_iter().next());

    use InequalityId::*;
    let outcome = match id {
        SpanningTree | TransitiveG | TransitiveH | FracTilingTree => {
            spanning_tree_check(id, g, h.unwrap())?
        }
        TreeProduct => tree_product_check(g, h.unwrap())?,
        MinorPower => minor_power_check(g, h.unwrap())?,
        KoteljanskiiStep => koteljanskii_check(g, params)?,
        CoverProduct => cover_product_check(g, h, params)?,
        HeatTraceFrac => heat_trace_check(g, h.unwrap(), params)?,
        WeightedCoverHeat => weighted_cover_check(g, h.unwrap(), params)?,
        SpectralDecreasingConvex => decreasing_convex_check(g, h.unwrap(), params)?,
        OpMonotone => op_monotone_check(g, h.unwrap(), params)?,
        CharPoly => char_poly_check(g, h.unwrap(), params)?,
        VertexCounting | EdgeCounting | MatchingsLower => {
            counting_check(id, g, h.unwrap(), family.as_ref().expect("family default"))?
        }
        TuttePointwise => tutte_pointwise_check(g, h.unwrap(), params)?,
        TutteCoefficients => tutte_coefficients_check(g, h.unwrap())?,
        Shearer => unreachable!(),
    };

    if let Some((ok, detail)) = &outcome.side_condition {
        hyp_out.satisfied &= ok;
        hyp_out.detail = if hyp_out.detail.is_empty() {
            detail.clone()
        } else {
            format!("{}; {detail}", hyp_out.detail)
        };
    }
    let raw = Verdict::combine(outcome.points.iter().map(|p| p.verdict));
    let verdict = if hyp_out.satisfied {
        raw
    } else {
        Verdict::HypothesisFailed
    };
    let decisive = outcome
        .points
        .iter()
        .find(|p| p.verdict == Verdict::Violated)
        .or_else(|| {
            outcome
                .points
                .iter()
                .find(|p| p.verdict == Verdict::Inconclusive)
        })
        .or_else(|| outcome.points.first())
        .cloned();
    let (lhs, rhs) = match decisive {
        Some(p) => (p.lhs, p.rhs),
        None => (
            Quantity::Exact {
                value: "none".into(),
                approx: None,
            },
            Quantity::Exact {
                value: "none".into(),
                approx: None,
            },
        ),
    };
    Ok(CheckReport {
        id,
        status: id.status(
            &hyp,
            family
                .as_ref()
                .filter(|_| matches!(id, VertexCounting | EdgeCounting | MatchingsLower)),
        ),
        g: graph_json(g),
        h: h.map(graph_json),
        hypothesis: hyp_out,
        direction: outcome.direction,
        lhs,
        rhs,
        verdict,
        raw_verdict: raw,
        strictness: outcome.strictness,
        points: outcome.points,
        params: params.to_json(),
    })
}

/// Decides the relation and transitivity parts of a hypothesis.
pub fn verify_hypothesis(
    hyp: &Hypothesis,
    g: &Multigraph,
    h: &Multigraph,
) -> Result<HypothesisOutcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    if hyp.g_transitive {
        let t = is_transitive(g)?;
        ok &= t;
        notes.push(format!("G {}transitive", if t { "" } else { "not " }));
    }
    if hyp.h_transitive {
        let t = is_transitive(h)?;
        ok &= t;
        notes.push(format!("H {}transitive", if t { "" } else { "not " }));
    }
    let mut certificate = None;
    let decided =
        |d: Decision<Certificate>, name: &str, notes: &mut Vec<String>| -> (bool, Option<Value>) {
            match d {
                Decision::Holds(c) => {
                    notes.push(format!("{name} certified"));
                    (true, Some(c.to_json()))
                }
                Decision::Fails { .. } => {
                    notes.push(format!("no {name}"));
                    (false, None)
                }
                Decision::Inconclusive { copies_considered } => {
                    notes.push(format!("{name} undecided after {copies_considered} copies"));
                    (false, None)
                }
            }
        };
    let map_dec = |d: Decision<FractionalTilingCertificate>| match d {
        Decision::Holds(c) => Decision::Holds(Certificate::FractionalTiling(c)),
        Decision::Fails { explored } => Decision::Fails { explored },
        Decision::Inconclusive { copies_considered } => {
            Decision::Inconclusive { copies_considered }
        }
    };
    match hyp.relation {
        Relation::None => {}
        Relation::Domination => {
            let d = match check_domination(g, h) {
                Decision::Holds(c) => Decision::Holds(Certificate::Coupling(c)),
                Decision::Fails { explored } => Decision::Fails { explored },
                Decision::Inconclusive { copies_considered } => {
                    Decision::Inconclusive { copies_considered }
                }
            };
            let (r, c) = decided(d, "domination", &mut notes);
            ok &= r;
            certificate = c;
        }
        Relation::FractionalTiling => {
            let (r, c) = decided(
                map_dec(check_fractional_tiling(g, h)),
                "fractional tiling",
                &mut notes,
            );
            ok &= r;
            certificate = c;
        }
        Relation::FractionalEdgeTiling => {
            let (r, c) = decided(
                map_dec(check_fractional_edge_tiling(g, h)),
                "fractional edge tiling",
                &mut notes,
            );
            ok &= r;
            certificate = c;
        }
        Relation::Subgraph => {
            let found = if h.n() <= g.n() {
                enumerate_copies(g, h, Some(1))?.copies.into_iter().next()
            } else {
                None
            };
            match found {
                Some(c) => {
                    notes.push("copy found".into());
                    certificate = Some(copy_json(&c));
                }
                None => {
                    notes.push("no copy".into());
                    ok = false;
                }
            }
        }
    }
    Ok(HypothesisOutcome {
        required: hyp.to_string(),
        satisfied: ok,
        detail: notes.join("; "),
        certificate,
    })
}

fn copy_json(c: &Copy) -> Value {
    json!({
        "type": "copy",
        "vertices": c.subgraph.vertices.as_slice(),
        "edges": c.subgraph.edges.iter().map(|e| json!([e.u, e.v, e.k])).collect::<Vec<_>>(),
    })
}

fn int(x: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn tau_of_contraction(g: &Multigraph, a: &VertexSet) -> Result<BigUint> {
    Ok(count_spanning_trees(&g.contract_complement(a)?.graph))
}

fn all_copies(g: &Multigraph, h: &Multigraph) -> Result<Vec<Copy>> {
    if h.n() > g.n() {
        return Ok(Vec::new());
    }
    let list = enumerate_copies(g, h, Some(COPY_LIMIT))?;
    if !list.complete {
        return Err(Error::BoundExceeded {
            what: "copies of the pattern",
            actual: list.copies.len(),
            limit: COPY_LIMIT,
        });
    }
    Ok(list.copies)
}

fn spanning_tree_check(id: InequalityId, g: &Multigraph, h: &Multigraph) -> Result<Outcome> {
    let a = int(count_spanning_trees(g));
    let b = int(count_spanning_trees(h));
    let (m, n) = (g.n() as u64, h.n() as u64);
    let mut verdict = Direction::Ge.verdict(compare_roots(&a, m, &b, n));
    let mut strictness = None;
    if id == InequalityId::TransitiveG {
        let strict = !g.has_cut_edge() && !is_isomorphic(&g.unweighted(), &h.unweighted());
        if strict {
            strictness = Some("strict: G has no cut-edge and G is not H".to_string());
            if verdict == Verdict::HoldsWithEquality {
                verdict = Verdict::Violated;
            }
        } else {
            strictness = Some("equality allowed".into());
        }
    }
    Ok(Outcome {
        direction: Direction::Ge,
        points: vec![PointReport {
            at: "tau".into(),
            lhs: Quantity::root(&a, m),
            rhs: Quantity::root(&b, n),
            verdict,
        }],
        strictness,
        side_condition: None,
    })
}

fn tree_product_check(g: &Multigraph, h: &Multigraph) -> Result<Outcome> {
    let tau_g = int(count_spanning_trees(g));
    let tau_h = int(count_spanning_trees(h));
    let mut points = Vec::new();
    for (i, c) in all_copies(g, h)?.iter().enumerate() {
        let q = g.contract_subgraph_edges(&c.subgraph)?.graph;
        let lhs = &tau_h * int(count_spanning_trees(&q));
        points.push(PointReport {
            at: format!("copy {i} on {:?}", c.subgraph.vertices.as_slice()),
            verdict: Direction::Le.verdict(lhs.cmp(&tau_g)),
            lhs: Quantity::rational(&lhs),
            rhs: Quantity::rational(&tau_g),
        });
    }
    tightest_first(&mut points);
    Ok(Outcome {
        direction: Direction::Le,
        points,
        strictness: None,
        side_condition: None,
    })
}

/// Orders points so that the one with the smallest slack comes first.
fn tightest_first(points: &mut [PointReport]) {
    points.sort_by(|a, b| {
        let slack =
            |p: &PointReport| (p.lhs.approx().unwrap_or(0.0) - p.rhs.approx().unwrap_or(0.0)).abs();
        slack(a).partial_cmp(&slack(b)).unwrap_or(Ordering::Equal)
    });
}

fn minor_power_check(g: &Multigraph, h: &Multigraph) -> Result<Outcome> {
    let tau_g = int(count_spanning_trees(g));
    let strict = g.n() > h.n() && !g.has_cut_edge();
    let mut points = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for c in all_copies(g, h)? {
        let a = c.subgraph.vertices.clone();
        if !seen.insert(a.clone()) {
            continue;
        }
        let lhs = int(tau_of_contraction(g, &a)?);
        // tau(G_A) >= tau(G)^(|A|/|G|)  iff  tau(G_A)^|G| >= tau(G)^|A|
        let ord = num_traits::pow(lhs.clone(), g.n()).cmp(&num_traits::pow(tau_g.clone(), a.len()));
        let mut verdict = Direction::Ge.verdict(ord);
        if strict && verdict == Verdict::HoldsWithEquality {
            verdict = Verdict::Violated;
        }
        points.push(PointReport {
            at: format!("A = {:?}", a.as_slice()),
            lhs: Quantity::rational(&lhs),
            rhs: Quantity::Exact {
                value: format!("{tau_g}^({}/{})", a.len(), g.n()),
                approx: Some((rational_ln(&tau_g) * a.len() as f64 / g.n() as f64).exp()),
            },
            verdict,
        });
    }
    tightest_first(&mut points);
    Ok(Outcome {
        direction: Direction::Ge,
        points,
        strictness: Some(if strict {
            "strict: |G| > |H| and G has no cut-edge".into()
        } else {
            "equality allowed".into()
        }),
        side_condition: None,
    })
}

fn sets_param(params: &CheckParams, n: usize) -> Result<Vec<VertexSet>> {
    let sets = params
        .sets
        .clone()
        .ok_or_else(|| Error::Param("vertex sets are required".into()))?;
    for s in &sets {
        if let Some(&x) = s.as_slice().iter().find(|&&x| x >= n) {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    Ok(sets)
}

/// `A ∪ B` proper, or an edge joins `A∖B` and `B∖A`.
pub fn koteljanskii_condition(g: &Multigraph, a: &VertexSet, b: &VertexSet) -> bool {
    if a.union(b).len() < g.n() {
        return true;
    }
    let (x, y) = (a.difference(b), b.difference(a));
    g.edges()
        .iter()
        .any(|e| (x.contains(e.u) && y.contains(e.v)) || (x.contains(e.v) && y.contains(e.u)))
}

fn koteljanskii_check(g: &Multigraph, params: &CheckParams) -> Result<Outcome> {
    let sets = sets_param(params, g.n())?;
    let [a, b] = <[VertexSet; 2]>::try_from(sets)
        .map_err(|_| Error::Param("the Koteljanskii step takes exactly two sets".into()))?;
    let lhs = int(tau_of_contraction(g, &a)? * tau_of_contraction(g, &b)?);
    let rhs =
        int(tau_of_contraction(g, &a.union(&b))? * tau_of_contraction(g, &a.intersection(&b))?);
    let ok = koteljanskii_condition(g, &a, &b);
    Ok(Outcome {
        direction: Direction::Ge,
        points: vec![PointReport {
            at: format!("A = {:?}, B = {:?}", a.as_slice(), b.as_slice()),
            verdict: Direction::Ge.verdict(lhs.cmp(&rhs)),
            lhs: Quantity::rational(&lhs),
            rhs: Quantity::rational(&rhs),
        }],
        strictness: None,
        side_condition: Some((
            ok,
            if ok {
                "union proper or crossing edge present".into()
            } else {
                "A ∪ B = V with no edge between A∖B and B∖A".into()
            },
        )),
    })
}

/// Cover multiplicity `m` if every vertex lies in the same number of sets.
pub fn regular_cover_multiplicity(n: usize, sets: &[VertexSet]) -> Option<usize> {
    let mut count = vec![0usize; n];
    for s in sets {
        for &x in s.as_slice() {
            count[x] += 1;
        }
    }
    let m = count[0];
    (m > 0 && count.iter().all(|&c| c == m)).then_some(m)
}

fn cover_product_check(
    g: &Multigraph,
    h: Option<&Multigraph>,
    params: &CheckParams,
) -> Result<Outcome> {
    let sets = match (&params.sets, h) {
        (Some(_), _) => sets_param(params, g.n())?,
        (None, Some(h)) => match check_fractional_tiling(g, h) {
            Decision::Holds(c) => tiling_sets(&c)?,
            _ => Vec::new(),
        },
        (None, None) => {
            return Err(Error::Param(
                "cover sets or a pattern graph are required".into(),
            ))
        }
    };
    let m = regular_cover_multiplicity(g.n(), &sets);
    let mut lhs = Rational::one();
    for s in &sets {
        lhs *= int(tau_of_contraction(g, s)?);
    }
    let tau_g = int(count_spanning_trees(g));
    let mm = m.unwrap_or(1);
    let rhs = num_traits::pow(tau_g.clone(), mm);
    Ok(Outcome {
        direction: Direction::Ge,
        points: vec![PointReport {
            at: format!("{} sets, m = {mm}", sets.len()),
            verdict: Direction::Ge.verdict(lhs.cmp(&rhs)),
            lhs: Quantity::rational(&lhs),
            rhs: Quantity::Exact {
                value: format!("{tau_g}^{mm}"),
                approx: Some(rational_to_f64(&rhs)),
            },
        }],
        strictness: None,
        side_condition: Some(match m {
            Some(m) => (true, format!("every vertex in exactly {m} sets")),
            None if sets.is_empty() => (false, "no cover available".into()),
            None => (false, "cover is not regular".into()),
        }),
    })
}

/// Vertex sets of a fractional tiling, each repeated by its multiplicity.
fn tiling_sets(c: &FractionalTilingCertificate) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    for (sub, k) in &c.copies {
        let k: usize = k.try_into().map_err(|_| Error::BoundExceeded {
            what: "tiling multiplicity",
            actual: usize::MAX,
            limit: 1 << 16,
        })?;
        if out.len() + k > 1 << 16 {
            return Err(Error::BoundExceeded {
                what: "tiling multiplicity",
                actual: out.len() + k,
                limit: 1 << 16,
            });
        }
        out.extend(std::iter::repeat_n(sub.vertices.clone(), k));
    }
    Ok(out)
}

/// Error allowance for a spectral value: eigenvalues move by at most
/// `residual * |Δ|_F`; `lipschitz` converts that to the functional.
fn spectral_budget(s: &Spectrum, g: &Multigraph, lipschitz: f64) -> f64 {
    let norm = rational_to_f64(&g.laplacian().trace()).max(1.0) * (g.n() as f64).sqrt();
    let dl = (s.residual * norm).max(1e-14 * norm);
    lipschitz * dl + 1e-13
}

fn t_grid(params: &CheckParams) -> Result<Vec<Rational>> {
    let grid = params.t_grid.clone().unwrap_or_else(default_t_grid);
    if grid.is_empty() || grid.iter().any(|t| !t.is_positive()) {
        return Err(Error::Param("t-grid values must be positive".into()));
    }
    Ok(grid)
}

fn heat_trace_check(g: &Multigraph, h: &Multigraph, params: &CheckParams) -> Result<Outcome> {
    let grid = t_grid(params)?;
    let equal =
        is_isomorphic(&g.unweighted(), &h.unweighted()) && g.is_unweighted() && h.is_unweighted();
    let (sg, sh) = (spectrum(g)?, spectrum(h)?);
    let mut points = Vec::new();
    for t in &grid {
        let tf = rational_to_f64(t);
        let (l, r) = (heat_trace_of(&sg, tf), heat_trace_of(&sh, tf));
        let (bl, br) = (spectral_budget(&sg, g, tf), spectral_budget(&sh, h, tf));
        let verdict = if equal {
            Verdict::HoldsWithEquality
        } else {
            Direction::Le.verdict_float(l, r, bl + br)
        };
        points.push(PointReport {
            at: format!("t={t}"),
            lhs: Quantity::float(l, bl),
            rhs: Quantity::float(r, br),
            verdict,
        });
    }
    Ok(Outcome {
        direction: Direction::Le,
        points,
        strictness: Some(if equal {
            "G is isomorphic to H: equality".into()
        } else {
            "G is not H: strict expected".into()
        }),
        side_condition: None,
    })
}

fn weighted_cover_check(g: &Multigraph, h: &Multigraph, params: &CheckParams) -> Result<Outcome> {
    let grid = t_grid(params)?;
    let scale = params
        .piece_weight_scale
        .clone()
        .unwrap_or_else(Rational::one);
    if !scale.is_positive() {
        return Err(Error::Param("piece weight scale must be positive".into()));
    }
    let cert = match check_fractional_tiling(g, h) {
        Decision::Holds(c) => c,
        _ => {
            return Ok(Outcome {
                direction: Direction::Le,
                points: Vec::new(),
                strictness: None,
                side_condition: Some((false, "no fractional tiling to build pieces from".into())),
            })
        }
    };
    // Pieces inherit the host weights, times the scale.
    let m = Rational::from_integer(BigInt::from(cert.coverage.clone()));
    let mut pieces: Vec<(Multigraph, Rational, Subgraph)> = Vec::new();
    for (sub, k) in &cert.copies {
        let piece = g.subgraph_graph(sub)?.scaled(&scale);
        pieces.push((
            piece,
            Rational::from_integer(BigInt::from(k.clone())),
            sub.clone(),
        ));
    }
    // (ii): w(e) >= (1/m) sum over pieces through e of the piece weight.
    let mut load: std::collections::HashMap<crate::graph::EdgeUnit, Rational> = Default::default();
    for (_, k, sub) in &pieces {
        for u in &sub.edges {
            let w = g.unit_weight(u).unwrap() * &scale;
            *load.entry(*u).or_insert_with(Rational::zero) += w * k;
        }
    }
    let mut cond = true;
    let mut tight = 0usize;
    for u in g.edge_unit_list() {
        let lhs = g.unit_weight(&u).unwrap();
        let rhs = load.get(&u).cloned().unwrap_or_else(Rational::zero) / &m;
        if lhs < rhs {
            cond = false;
        } else if lhs == rhs {
            tight += 1;
        }
    }
    let n_total: Rational = pieces.iter().map(|(p, k, _)| k * rat(p.n() as i64)).sum();
    let sg = spectrum(g)?;
    let specs: Vec<(Spectrum, &Multigraph, &Rational)> = pieces
        .iter()
        .map(|(p, k, _)| Ok((spectrum(p)?, p, k)))
        .collect::<Result<_>>()?;
    let mut points = Vec::new();
    for t in &grid {
        let tf = rational_to_f64(t);
        let l = heat_trace_of(&sg, tf);
        let bl = spectral_budget(&sg, g, tf);
        let mut r = 0.0;
        let mut br = 0.0;
        for (s, p, k) in &specs {
            let w = rational_to_f64(&(*k * rat(p.n() as i64) / &n_total));
            r += w * heat_trace_of(s, tf);
            br += w * spectral_budget(s, p, tf);
        }
        points.push(PointReport {
            at: format!("t={t}"),
            verdict: Direction::Le.verdict_float(l, r, bl + br),
            lhs: Quantity::float(l, bl),
            rhs: Quantity::float(r, br),
        });
    }
    Ok(Outcome {
        direction: Direction::Le,
        points,
        strictness: None,
        side_condition: Some((
            cond,
            format!(
                "(i) every vertex in {} pieces; (ii) {} ({tight} edge units tight)",
                cert.coverage,
                if cond { "holds" } else { "fails" }
            ),
        )),
    })
}

fn decreasing_convex_check(
    g: &Multigraph,
    h: &Multigraph,
    params: &CheckParams,
) -> Result<Outcome> {
    let f = params
        .functional
        .clone()
        .unwrap_or(FunctionalSpec::Hinge { c: rat(4) });
    if !(f.is_decreasing() && f.is_convex()) {
        return Err(Error::Param(format!("{f} is not decreasing and convex")));
    }
    let p = rational_to_f64(f.parameter());
    let lipschitz = match f {
        FunctionalSpec::ExpDecay { .. } => p,
        FunctionalSpec::Hinge { .. } => 1.0,
        FunctionalSpec::ShiftedInverse { .. } => 1.0 / (p * p),
        FunctionalSpec::ShiftedLog { .. } => unreachable!(),
    };
    let (sg, sh) = (spectrum(g)?, spectrum(h)?);
    let (l, r) = (
        spectral_functional_of(&sg, &f),
        spectral_functional_of(&sh, &f),
    );
    let (bl, br) = (
        spectral_budget(&sg, g, lipschitz),
        spectral_budget(&sh, h, lipschitz),
    );
    Ok(Outcome {
        direction: Direction::Le,
        points: vec![PointReport {
            at: f.to_string(),
            verdict: Direction::Le.verdict_float(l, r, bl + br),
            lhs: Quantity::float(l, bl),
            rhs: Quantity::float(r, br),
        }],
        strictness: None,
        side_condition: None,
    })
}

/// `det(Δ + tI)` and `tr (Δ + tI)^{-1}`, exact.
fn shifted_det_and_inverse_trace(g: &Multigraph, t: &Rational) -> (Rational, Rational) {
    let m = g.laplacian().shifted(t);
    let det = m.det();
    let n = g.n();
    let mut cof = Rational::zero();
    for i in 0..n {
        let idx: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        cof += m.principal(&idx).det();
    }
    let tr_inv = cof / &det;
    (det, tr_inv)
}

fn op_monotone_check(g: &Multigraph, h: &Multigraph, params: &CheckParams) -> Result<Outcome> {
    let (family, grid) = match &params.functional {
        Some(f @ FunctionalSpec::ShiftedLog { t })
        | Some(f @ FunctionalSpec::ShiftedInverse { t }) => (f.family(), vec![t.clone()]),
        Some(f) => return Err(Error::Param(format!("{f} is not operator monotone"))),
        None => ("shifted_log", t_grid(params)?),
    };
    let inverse = family == "shifted_inverse";
    let direction = if inverse {
        Direction::Le
    } else {
        Direction::Ge
    };
    let mut points = Vec::new();
    for t in &grid {
        let (dg, ig) = shifted_det_and_inverse_trace(g, t);
        let (dh, ih) = shifted_det_and_inverse_trace(h, t);
        let point = if inverse {
            // Normalised traces of the inverse.
            let l = ig / rat(g.n() as i64);
            let r = ih / rat(h.n() as i64);
            PointReport {
                at: format!("{family}:{t}"),
                verdict: direction.verdict(l.cmp(&r)),
                lhs: Quantity::rational(&l),
                rhs: Quantity::rational(&r),
            }
        } else {
            // Tr log(Δ + t) = log det(Δ + tI) / n, compared through the determinants.
            PointReport {
                at: format!("{family}:{t}"),
                verdict: direction.verdict(compare_roots(&dg, g.n() as u64, &dh, h.n() as u64)),
                lhs: Quantity::Exact {
                    value: format!("log({dg})/{}", g.n()),
                    approx: Some(rational_ln(&dg) / g.n() as f64),
                },
                rhs: Quantity::Exact {
                    value: format!("log({dh})/{}", h.n()),
                    approx: Some(rational_ln(&dh) / h.n() as f64),
                },
            }
        };
        points.push(point);
    }
    Ok(Outcome {
        direction,
        points,
        strictness: None,
        side_condition: None,
    })
}

fn char_poly_check(g: &Multigraph, h: &Multigraph, params: &CheckParams) -> Result<Outcome> {
    let mut points = Vec::new();
    for t in &t_grid(params)? {
        let dg = g.laplacian().shifted(t).det();
        let dh = h.laplacian().shifted(t).det();
        points.push(PointReport {
            at: format!("t={t}"),
            verdict: Direction::Ge.verdict(compare_roots(&dg, g.n() as u64, &dh, h.n() as u64)),
            lhs: Quantity::root(&dg, g.n() as u64),
            rhs: Quantity::root(&dh, h.n() as u64),
        });
    }
    Ok(Outcome {
        direction: Direction::Ge,
        points,
        strictness: None,
        side_condition: None,
    })
}

fn counting_check(
    id: InequalityId,
    g: &Multigraph,
    h: &Multigraph,
    family: &CountFamily,
) -> Result<Outcome> {
    let (fg, fh) = (family.count(g)?, family.count(h)?);
    let (m, n, direction) = match id {
        InequalityId::EdgeCounting => {
            if h.edge_units() == 0 {
                return Err(Error::Param(
                    "edge normalisation needs a pattern with edges".into(),
                ));
            }
            (g.edge_units() as u64, h.edge_units() as u64, Direction::Le)
        }
        InequalityId::VertexCounting => (g.n() as u64, h.n() as u64, Direction::Le),
        _ => (g.n() as u64, h.n() as u64, Direction::Ge),
    };
    Ok(Outcome {
        direction,
        points: vec![PointReport {
            at: family.name(),
            verdict: direction.verdict(compare_roots(&fg, m, &fh, n)),
            lhs: Quantity::root(&fg, m),
            rhs: Quantity::root(&fh, n),
        }],
        strictness: None,
        side_condition: None,
    })
}

fn tutte_pointwise_check(g: &Multigraph, h: &Multigraph, params: &CheckParams) -> Result<Outcome> {
    let axis = params.xy_grid.clone().unwrap_or_else(default_xy_grid);
    if axis.iter().any(|x| *x < rat(1)) {
        return Err(Error::Param("Tutte grid values must be at least 1".into()));
    }
    let tg = tutte_polynomial_bounded(g, CHECK_TUTTE_BOUND)?;
    let th = tutte_polynomial_bounded(h, CHECK_TUTTE_BOUND)?;
    let mut points = Vec::new();
    for x in &axis {
        for y in &axis {
            let (a, b) = (tg.eval(x, y), th.eval(x, y));
            points.push(PointReport {
                at: format!("x={x}, y={y}"),
                verdict: Direction::Ge.verdict(compare_roots(&a, g.n() as u64, &b, h.n() as u64)),
                lhs: Quantity::root(&a, g.n() as u64),
                rhs: Quantity::root(&b, h.n() as u64),
            });
        }
    }
    Ok(Outcome {
        direction: Direction::Ge,
        points,
        strictness: None,
        side_condition: None,
    })
}

/// `T_G(x+1, y+1)^{|H|} - T_H(x+1, y+1)^{|G|}`.
pub fn tutte_difference(g: &Multigraph, h: &Multigraph) -> Result<TuttePolynomial> {
    let sg = tutte_polynomial_bounded(g, CHECK_TUTTE_BOUND)?.shift(1, 1);
    let sh = tutte_polynomial_bounded(h, CHECK_TUTTE_BOUND)?.shift(1, 1);
    let size = |p: &TuttePolynomial, e: usize| {
        let t = p.terms();
        let dx = t.iter().map(|x| x.0).max().unwrap_or(0);
        let dy = t.iter().map(|x| x.1).max().unwrap_or(0);
        (dx * e + 1).saturating_mul(dy * e + 1)
    };
    let terms = size(&sg, h.n()).max(size(&sh, g.n()));
    if terms > TUTTE_TERM_CAP {
        return Err(Error::BoundExceeded {
            what: "terms in the Tutte power difference",
            actual: terms,
            limit: TUTTE_TERM_CAP,
        });
    }
    Ok(sg.pow(h.n() as u64).sub(&sh.pow(g.n() as u64)))
}

fn tutte_coefficients_check(g: &Multigraph, h: &Multigraph) -> Result<Outcome> {
    let d = tutte_difference(g, h)?;
    let min = d.min_coefficient();
    let verdict = if d.is_zero() {
        Verdict::HoldsWithEquality
    } else if min.is_negative() {
        Verdict::Violated
    } else {
        Verdict::Holds
    };
    let negatives = d.terms().into_iter().filter(|t| t.2.is_negative()).count();
    Ok(Outcome {
        direction: Direction::Ge,
        points: vec![PointReport {
            at: format!("{} terms, {negatives} negative", d.terms().len()),
            lhs: Quantity::Exact {
                value: min.to_string(),
                approx: None,
            },
            rhs: Quantity::Exact {
                value: "0".into(),
                approx: Some(0.0),
            },
            verdict,
        }],
        strictness: None,
        side_condition: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge() -> Multigraph {
        Multigraph::path(2)
    }

    fn run(id: InequalityId, g: &Multigraph, h: &Multigraph) -> CheckReport {
        check(id, g, Some(h), &CheckParams::default()).unwrap()
    }

    #[test]
    fn ids_roundtrip() {
        for id in InequalityId::ALL {
            assert_eq!(id.name().parse::<InequalityId>().unwrap(), id);
            assert_eq!(serde_json::to_value(id).unwrap(), json!(id.name()));
        }
        assert!("nope".parse::<InequalityId>().is_err());
        let h: Hypothesis = "h_transitive+domination".parse().unwrap();
        assert_eq!(h.to_string(), "h_transitive+domination");
    }

    #[test]
    fn spanning_tree_k4_k3() {
        let r = run(
            InequalityId::SpanningTree,
            &Multigraph::complete(4),
            &Multigraph::complete(3),
        );
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.hypothesis.satisfied);
        assert_eq!(r.lhs, Quantity::root(&rat(16), 4));
    }

    #[test]
    fn koteljanskii_path_example() {
        let params = CheckParams {
            sets: Some(vec![
                VertexSet::new([0, 1], 3).unwrap(),
                VertexSet::new([1, 2], 3).unwrap(),
            ]),
            ..Default::default()
        };
        let r = check(
            InequalityId::KoteljanskiiStep,
            &Multigraph::path(3),
            None,
            &params,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisFailed);
        assert_eq!(r.raw_verdict, Verdict::Violated);
        assert_eq!(r.lhs, Quantity::rational(&rat(1)));
        assert_eq!(r.rhs, Quantity::rational(&rat(2)));
    }

    #[test]
    fn counting_examples() {
        let star4 = Multigraph::star(4);
        let star3 = Multigraph::star(3);
        let r = run(InequalityId::VertexCounting, &star4, &edge());
        assert_eq!(r.verdict, Verdict::Violated);
        assert_eq!(r.status, Status::KnownFalseUnderDomination);
        assert_eq!(
            run(InequalityId::MatchingsLower, &star4, &edge()).verdict,
            Verdict::Violated
        );
        assert_eq!(
            run(InequalityId::VertexCounting, &star3, &edge()).verdict,
            Verdict::HoldsWithEquality
        );
        assert_eq!(
            run(InequalityId::MatchingsLower, &star3, &edge()).verdict,
            Verdict::HoldsWithEquality
        );
        let frac = CheckParams {
            hypothesis: Some("fractional_tiling".parse().unwrap()),
            ..Default::default()
        };
        let r = check(InequalityId::VertexCounting, &star4, Some(&edge()), &frac).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisFailed);
        assert_eq!(r.raw_verdict, Verdict::Violated);
    }

    #[test]
    fn frac_tiling_tree_needs_tiling() {
        let r = run(InequalityId::FracTilingTree, &Multigraph::path(3), &edge());
        assert_eq!(r.verdict, Verdict::HypothesisFailed);
    }

    #[test]
    fn heat_trace_examples() {
        let (k4, k3) = (Multigraph::complete(4), Multigraph::complete(3));
        let r = run(InequalityId::HeatTraceFrac, &k4, &k3);
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(r.points.iter().all(|p| p.verdict == Verdict::Holds));
        let same = run(InequalityId::HeatTraceFrac, &k4, &k4);
        assert_eq!(same.verdict, Verdict::HoldsWithEquality);
    }

    #[test]
    fn weighted_cover_sharpness() {
        let (k4, k3) = (Multigraph::complete(4), Multigraph::complete(3));
        let r = run(InequalityId::WeightedCoverHeat, &k4, &k3);
        assert_eq!(r.verdict, Verdict::Holds);
        // Each K_4 edge lies in 2 of the 4 triangles with m = 3: scaling
        // pieces by 3/2 makes (ii) tight, by 2 breaks it.
        let tight = CheckParams {
            piece_weight_scale: Some(Rational::new(3.into(), 2.into())),
            ..Default::default()
        };
        let r = check(InequalityId::WeightedCoverHeat, &k4, Some(&k3), &tight).unwrap();
        assert!(r.hypothesis.satisfied);
        let over = CheckParams {
            piece_weight_scale: Some(rat(2)),
            t_grid: Some(vec![Rational::new(1.into(), 1000.into())]),
            ..Default::default()
        };
        let r = check(InequalityId::WeightedCoverHeat, &k4, Some(&k3), &over).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisFailed);
        assert_eq!(r.raw_verdict, Verdict::Violated);
    }

    #[test]
    fn operator_monotone_and_determinants() {
        let (k4, k3) = (Multigraph::complete(4), Multigraph::complete(3));
        assert_eq!(
            run(InequalityId::CharPoly, &k4, &k3).verdict,
            Verdict::Holds
        );
        assert_eq!(
            run(InequalityId::OpMonotone, &k4, &k3).verdict,
            Verdict::Holds
        );
        let inv = CheckParams {
            functional: Some("shifted_inverse:1".parse().unwrap()),
            ..Default::default()
        };
        let r = check(
            InequalityId::OpMonotone,
            &Multigraph::star(4),
            Some(&edge()),
            &inv,
        )
        .unwrap();
        assert!(r.verdict.is_pass());
        assert_eq!(r.direction, Direction::Le);
    }

    #[test]
    fn tutte_checks() {
        let (k4, k3) = (Multigraph::complete(4), Multigraph::complete(3));
        assert!(run(InequalityId::TuttePointwise, &k4, &k3)
            .verdict
            .is_pass());
        assert!(run(InequalityId::TutteCoefficients, &k4, &k3)
            .verdict
            .is_pass());
        assert_eq!(
            run(InequalityId::TutteCoefficients, &k3, &k3).verdict,
            Verdict::HoldsWithEquality
        );
    }

    #[test]
    fn tree_product_and_minor_power() {
        let g = Multigraph::grid(2, 3);
        assert!(run(InequalityId::TreeProduct, &g, &Multigraph::path(3))
            .verdict
            .is_pass());
        let r = run(
            InequalityId::MinorPower,
            &Multigraph::cycle(6),
            &Multigraph::path(3),
        );
        assert_eq!(r.verdict, Verdict::Holds);
        assert!(
            run(
                InequalityId::TransitiveG,
                &Multigraph::complete(4),
                &Multigraph::path(3)
            )
            .verdict
                == Verdict::Holds
        );
    }

    #[test]
    fn cover_product_from_sets() {
        let params = CheckParams {
            sets: Some(vec![
                VertexSet::new([0, 1], 4).unwrap(),
                VertexSet::new([2, 3], 4).unwrap(),
                VertexSet::new([1, 2], 4).unwrap(),
                VertexSet::new([0, 3], 4).unwrap(),
            ]),
            ..Default::default()
        };
        let r = check(
            InequalityId::CoverProduct,
            &Multigraph::cycle(4),
            None,
            &params,
        )
        .unwrap();
        assert!(r.hypothesis.satisfied);
        assert!(r.verdict.is_pass());
        let bad = CheckParams {
            sets: Some(vec![VertexSet::new([0, 1], 4).unwrap()]),
            ..Default::default()
        };
        let r = check(
            InequalityId::CoverProduct,
            &Multigraph::cycle(4),
            None,
            &bad,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisFailed);
    }

    #[test]
    fn params_json_roundtrip() {
        let p = CheckParams {
            t_grid: Some(vec![Rational::new(1.into(), 2.into()), rat(3)]),
            xy_grid: Some(default_xy_grid()),
            functional: Some("hinge:4".parse().unwrap()),
            family: Some(CountFamily::Colorings(4)),
            sets: Some(vec![VertexSet::new([0, 2], 3).unwrap()]),
            hypothesis: Some("h_transitive+domination".parse().unwrap()),
            piece_weight_scale: Some(rat(2)),
        };
        assert_eq!(CheckParams::from_json(&p.to_json()).unwrap(), p);
        assert!(CheckParams::from_json(&json!({"t_grid": [1, "1/2"]})).is_ok());
        assert!(CheckParams::from_json(&json!({"bogus": 1})).is_err());
    }

    #[test]
    fn family_parsing() {
        for s in [
            "independent_sets",
            "colorings:4",
            "homomorphisms",
            "homomorphisms:0-1,1-2,2-2:1,1/2,3",
            "forests",
            "matchings",
            "acyclic_orientations",
        ] {
            let f: CountFamily = s.parse().unwrap();
            assert!(f.name().starts_with(s.split(':').next().unwrap()));
        }
        assert!("colorings:0".parse::<CountFamily>().is_err());
        let p: CountFamily = "packings:3; 0 1; 1 2; 0 2".parse().unwrap();
        assert!(matches!(p, CountFamily::Packings(_)));
        let r = check(
            InequalityId::EdgeCounting,
            &Multigraph::complete(4),
            Some(&edge()),
            &CheckParams {
                family: Some(CountFamily::IndependentSets),
                ..Default::default()
            },
        );
        assert!(r.is_err());
    }
}
