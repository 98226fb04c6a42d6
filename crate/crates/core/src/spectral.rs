//! Laplacian spectra, normalised heat traces, spectral functionals and
//! shifted determinants.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{parse_rational, rat, Multigraph, Rational};
use crate::linalg::{rational_ln, rational_to_f64};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    /// Ascending.
    pub values: Vec<f64>,
    pub dimension: usize,
    /// Largest `|Δv - λv|` over eigenpairs, divided by the Frobenius norm of `Δ`.
    pub residual: f64,
}

impl Spectrum {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Eigenvalues and eigenvectors (columns of the second result) of a symmetric
/// matrix by cyclic Jacobi rotations.
pub fn jacobi(a: &[Vec<f64>], tolerance: f64) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = a.len();
    let mut m = a.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let norm = frobenius(a).max(f64::MIN_POSITIVE);
    let off = |m: &Vec<Vec<f64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i][j] * m[i][j];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&m) > tolerance * norm * 1e-3 {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(sweeps));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q].abs() < f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    Ok(((0..n).map(|i| m[i][i]).collect(), v))
}

fn frobenius(a: &[Vec<f64>]) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn eigenvalues(g: &Multigraph, tolerance: f64) -> Result<Spectrum> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::Domain(format!(
            "tolerance {tolerance} must be positive"
        )));
    }
    let a = g.laplacian().to_f64();
    let n = a.len();
    let (vals, vecs) = jacobi(&a, tolerance)?;
    let norm = frobenius(&a).max(f64::MIN_POSITIVE);
    let mut residual: f64 = 0.0;
    for (k, lambda) in vals.iter().enumerate() {
        let r: f64 = (0..n)
            .map(|i| {
                let av: f64 = (0..n).map(|j| a[i][j] * vecs[j][k]).sum();
                (av - lambda * vecs[i][k]).powi(2)
            })
            .sum::<f64>()
            .sqrt();
        residual = residual.max(r / norm);
    }
    if residual > tolerance * (n as f64).max(1.0) {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }
    let mut values = vals;
    values.sort_by(f64::total_cmp);
    Ok(Spectrum {
        values,
        dimension: n,
        residual,
    })
}

pub fn spectrum(g: &Multigraph) -> Result<Spectrum> {
    eigenvalues(g, DEFAULT_TOLERANCE)
}

/// `(1/|G|) Σ e^{-tλ}`.
pub fn heat_trace(g: &Multigraph, t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::Domain(format!(
            "heat trace time {t} must be nonnegative"
        )));
    }
    Ok(heat_trace_of(&spectrum(g)?, t))
}

pub fn heat_trace_of(s: &Spectrum, t: f64) -> f64 {
    s.values.iter().map(|l| (-t * l).exp()).sum::<f64>() / s.dimension as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatTraceCurve {
    pub samples: Vec<(f64, f64)>,
}

impl HeatTraceCurve {
    pub fn sample(g: &Multigraph, ts: &[f64]) -> Result<Self> {
        let s = spectrum(g)?;
        let mut ts: Vec<f64> = ts.to_vec();
        if let Some(bad) = ts.iter().find(|t| t.is_nan() || **t <= 0.0) {
            return Err(Error::Domain(format!("sample time {bad} must be positive")));
        }
        ts.sort_by(f64::total_cmp);
        Ok(HeatTraceCurve {
            samples: ts.into_iter().map(|t| (t, heat_trace_of(&s, t))).collect(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,value\n");
        for (t, v) in &self.samples {
            out.push_str(&format!("{t},{v}\n"));
        }
        out
    }
}

/// Spectral test functions. Parameters are exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FunctionalSpec {
    /// `s ↦ e^{-ts}`
    ExpDecay { t: Rational },
    /// `s ↦ (c - s)⁺`
    Hinge { c: Rational },
    /// `s ↦ log(s + t)`
    ShiftedLog { t: Rational },
    /// `s ↦ 1/(s + t)`
    ShiftedInverse { t: Rational },
}

impl FunctionalSpec {
    pub fn new(family: &str, param: Rational) -> Result<Self> {
        let spec = match family {
            "exp_decay" => FunctionalSpec::ExpDecay { t: param },
            "hinge" => FunctionalSpec::Hinge { c: param },
            "shifted_log" => FunctionalSpec::ShiftedLog { t: param },
            "shifted_inverse" => FunctionalSpec::ShiftedInverse { t: param },
            other => return Err(Error::Param(format!("unknown functional family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        match self {
            FunctionalSpec::ExpDecay { t } if t.is_negative() => {
                Err(Error::Domain(format!("exp_decay needs t >= 0, got {t}")))
            }
            FunctionalSpec::ShiftedLog { t } | FunctionalSpec::ShiftedInverse { t }
                if !t.is_positive() =>
            {
                Err(Error::Domain(format!(
                    "{} needs t > 0, got {t}",
                    self.family()
                )))
            }
            _ => Ok(()),
        }
    }

    pub fn family(&self) -> &'static str {
        match self {
            FunctionalSpec::ExpDecay { .. } => "exp_decay",
            FunctionalSpec::Hinge { .. } => "hinge",
            FunctionalSpec::ShiftedLog { .. } => "shifted_log",
            FunctionalSpec::ShiftedInverse { .. } => "shifted_inverse",
        }
    }

    pub fn parameter(&self) -> &Rational {
        match self {
            FunctionalSpec::ExpDecay { t }
            | FunctionalSpec::ShiftedLog { t }
            | FunctionalSpec::ShiftedInverse { t } => t,
            FunctionalSpec::Hinge { c } => c,
        }
    }

    pub fn is_decreasing(&self) -> bool {
        !matches!(self, FunctionalSpec::ShiftedLog { .. })
    }

    pub fn is_convex(&self) -> bool {
        !matches!(self, FunctionalSpec::ShiftedLog { .. })
    }

    /// Operator monotone increasing (`log`) or decreasing (`1/(s+t)`).
    pub fn operator_monotone(&self) -> Option<bool> {
        match self {
            FunctionalSpec::ShiftedLog { .. } => Some(true),
            FunctionalSpec::ShiftedInverse { .. } => Some(false),
            _ => None,
        }
    }

    pub fn apply(&self, s: f64) -> f64 {
        let p = rational_to_f64(self.parameter());
        match self {
            FunctionalSpec::ExpDecay { .. } => (-p * s).exp(),
            FunctionalSpec::Hinge { .. } => (p - s).max(0.0),
            FunctionalSpec::ShiftedLog { .. } => (s + p).ln(),
            FunctionalSpec::ShiftedInverse { .. } => 1.0 / (s + p),
        }
    }
}

impl fmt::Display for FunctionalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family(), self.parameter())
    }
}

impl FromStr for FunctionalSpec {
    type Err = Error;

    /// `family:parameter`, e.g. `hinge:4` or `shifted_log:1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let (family, param) = s.split_once(':').ok_or_else(|| {
            Error::Param(format!(
                "functional `{s}` should look like family:parameter"
            ))
        })?;
        let param =
            parse_rational(param).ok_or_else(|| Error::Param(format!("bad parameter in `{s}`")))?;
        FunctionalSpec::new(family, param)
    }
}

impl Serialize for FunctionalSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FunctionalSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Normalised trace `(1/|G|) Σ f(λ)`.
pub fn spectral_functional(g: &Multigraph, f: &FunctionalSpec) -> Result<f64> {
    Ok(spectral_functional_of(&spectrum(g)?, f))
}

pub fn spectral_functional_of(s: &Spectrum, f: &FunctionalSpec) -> f64 {
    // Eigenvalues are nonnegative up to rounding; clamp so shifted families
    // never see a negative argument.
    s.values.iter().map(|&l| f.apply(l.max(0.0))).sum::<f64>() / s.dimension as f64
}

/// `det(Δ + tI)`, exact.
pub fn shifted_determinant(g: &Multigraph, t: &Rational) -> Result<Rational> {
    if !t.is_positive() {
        return Err(Error::Domain(format!("shift {t} must be positive")));
    }
    Ok(g.laplacian().shifted(t).det())
}

/// `det(Δ + tI)^{1/|G|}`; the determinant is exact, the root is floating point.
pub fn shifted_normalized_determinant(g: &Multigraph, t: &Rational) -> Result<f64> {
    let d = shifted_determinant(g, t)?;
    Ok((rational_ln(&d) / g.n() as f64).exp())
}

/// Slope of the heat trace at `t = 0`: `-(2/|G|) Σ_units w`.
pub fn heat_trace_derivative_at_zero(g: &Multigraph) -> Rational {
    -(rat(2) * g.total_weight()) / rat(g.n() as i64)
}
