//! Exact comparison of normalised powers and the verdict vocabulary.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::Rational;
use crate::linalg::rational_ln;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    HoldsWithEquality,
    Violated,
    HypothesisFailed,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::HoldsWithEquality => "holds_with_equality",
            Verdict::Violated => "violated",
            Verdict::HypothesisFailed => "hypothesis_failed",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn is_pass(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::HoldsWithEquality)
    }

    /// Combines per-point verdicts: any violation wins, then any
    /// inconclusive point; equality only if every point is equal.
    pub fn combine<I: IntoIterator<Item = Verdict>>(vs: I) -> Verdict {
        let mut any = false;
        let mut all_equal = true;
        let mut inconclusive = false;
        for v in vs {
            any = true;
            match v {
                Verdict::Violated => return Verdict::Violated,
                Verdict::Inconclusive => inconclusive = true,
                Verdict::HoldsWithEquality => {}
                _ => all_equal = false,
            }
        }
        if !any || inconclusive {
            Verdict::Inconclusive
        } else if all_equal {
            Verdict::HoldsWithEquality
        } else {
            Verdict::Holds
        }
    }
}

/// Claimed direction between the left and right sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

impl Direction {
    pub fn verdict(self, ord: Ordering) -> Verdict {
        match (self, ord) {
            (_, Ordering::Equal) => Verdict::HoldsWithEquality,
            (Direction::Ge, Ordering::Greater) | (Direction::Le, Ordering::Less) => Verdict::Holds,
            _ => Verdict::Violated,
        }
    }

    /// Float comparison: differences within `budget` are inconclusive.
    pub fn verdict_float(self, lhs: f64, rhs: f64, budget: f64) -> Verdict {
        let d = lhs - rhs;
        if !d.is_finite() {
            return Verdict::Inconclusive;
        }
        if d.abs() <= budget {
            Verdict::Inconclusive
        } else {
            self.verdict(d.partial_cmp(&0.0).unwrap())
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Direction::Ge => ">=",
            Direction::Le => "<=",
        }
    }
}

/// Compares `a^(1/m)` with `b^(1/n)` for nonnegative `a, b` and positive
/// `m, n` via `a^n` against `b^m`.
pub fn compare_roots(a: &Rational, m: u64, b: &Rational, n: u64) -> Ordering {
    assert!(
        !a.is_negative() && !b.is_negative(),
        "roots of negative numbers"
    );
    assert!(m > 0 && n > 0, "zero root index");
    let g = num_integer::gcd(m, n);
    let (m, n) = (m / g, n / g);
    num_traits::pow(a.clone(), n as usize).cmp(&num_traits::pow(b.clone(), m as usize))
}

/// `a^(1/m)` in floating point, via logarithms so huge values stay finite.
pub fn root_approx(a: &Rational, m: u64) -> f64 {
    if a.is_zero() {
        0.0
    } else {
        (rational_ln(a) / m as f64).exp()
    }
}
