//! Shearer's entropy inequality for finite joint distributions.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{
    CheckReport, Direction, HypothesisOutcome, InequalityId, PointReport, Quantity, Status,
};
use crate::error::{Error, Result};
use crate::graph::Rational;
use crate::linalg::rational_to_f64;

/// Exact decisions are attempted while the compared integers stay below
/// this many bits.
const EXACT_BITS: f64 = 4.0e6;

/// Finite joint law of `(X_1, ..., X_k)` with rational probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    k: usize,
    support: Vec<(Vec<u64>, Rational)>,
}

impl JointDistribution {
    /// Equal tuples are merged; every probability must be positive and the
    /// total must be one.
    pub fn new(k: usize, support: Vec<(Vec<u64>, Rational)>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDistribution("no coordinates".into()));
        }
        let mut merged: BTreeMap<Vec<u64>, Rational> = BTreeMap::new();
        for (x, p) in support {
            if x.len() != k {
                return Err(Error::InvalidDistribution(format!(
                    "tuple {x:?} does not have {k} coordinates"
                )));
            }
            if !p.is_positive() {
                return Err(Error::InvalidDistribution(format!(
                    "probability {p} is not positive"
                )));
            }
            *merged.entry(x).or_insert_with(Rational::zero) += p;
        }
        let total: Rational = merged.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(JointDistribution {
            k,
            support: merged.into_iter().collect(),
        })
    }

    /// Uniform over the given tuples (duplicates add weight).
    pub fn uniform(k: usize, tuples: Vec<Vec<u64>>) -> Result<Self> {
        let n = tuples.len();
        if n == 0 {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        let p = Rational::new(BigInt::one(), BigInt::from(n));
        JointDistribution::new(k, tuples.into_iter().map(|x| (x, p.clone())).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn support(&self) -> &[(Vec<u64>, Rational)] {
        &self.support
    }

    /// Law of the coordinates in `s`.
    pub fn marginal(&self, s: &[usize]) -> Vec<Rational> {
        let mut m: BTreeMap<Vec<u64>, Rational> = BTreeMap::new();
        for (x, p) in &self.support {
            let key: Vec<u64> = s.iter().map(|&i| x[i]).collect();
            *m.entry(key).or_insert_with(Rational::zero) += p;
        }
        m.into_values().collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "support": self.support.iter().map(|(x, p)| json!([x, p.to_string()])).collect::<Vec<_>>(),
        })
    }
}

/// `-Σ p log p` in nats.
pub fn entropy(probs: &[Rational]) -> f64 {
    probs
        .iter()
        .map(|p| {
            let q = rational_to_f64(p);
            -q * q.ln()
        })
        .sum()
}

/// Checks `r H(X) <= Σ_S H(X_S)` for an `r`-regular `cover` of `0..k`.
pub fn check_shearer(d: &JointDistribution, cover: &[Vec<usize>], r: usize) -> Result<CheckReport> {
    let mut count = vec![0usize; d.k];
    for s in cover {
        let mut seen = std::collections::BTreeSet::new();
        for &i in s {
            if i >= d.k {
                return Err(Error::IrregularCover(format!(
                    "index {i} outside 0..{}",
                    d.k
                )));
            }
            if !seen.insert(i) {
                return Err(Error::IrregularCover(format!(
                    "index {i} repeated in a set"
                )));
            }
            count[i] += 1;
        }
    }
    if r == 0 || count.iter().any(|&c| c != r) {
        return Err(Error::IrregularCover(format!(
            "coverage counts {count:?}, expected every index {r} times"
        )));
    }

    let joint: Vec<Rational> = d.support.iter().map(|(_, p)| p.clone()).collect();
    let marginals: Vec<Vec<Rational>> = cover.iter().map(|s| d.marginal(s)).collect();
    let lhs = r as f64 * entropy(&joint);
    let rhs: f64 = marginals.iter().map(|m| entropy(m)).sum();
    // Each term of -p log p is off by a few ulps of its size.
    let terms = (joint.len() * r + marginals.iter().map(Vec::len).sum::<usize>()) as f64;
    let error = 8.0 * f64::EPSILON * (lhs.abs() + rhs.abs() + terms);

    let (verdict, how) = match exact_order(&joint, &marginals, r) {
        Some(ord) => (Direction::Le.verdict(ord), "exact"),
        None => (
            Direction::Le.verdict_float(lhs, rhs, error.max(1e-12)),
            "floating",
        ),
    };
    let sets: Vec<Value> = cover.iter().map(|s| json!(s)).collect();
    Ok(CheckReport {
        id: InequalityId::Shearer,
        status: Status::Proven,
        g: d.to_json(),
        h: None,
        hypothesis: HypothesisOutcome {
            required: format!("cover is {r}-regular"),
            satisfied: true,
            detail: format!("every index in exactly {r} sets"),
            certificate: None,
        },
        direction: Direction::Le,
        lhs: Quantity::Float { value: lhs, error },
        rhs: Quantity::Float { value: rhs, error },
        verdict,
        raw_verdict: verdict,
        strictness: Some(format!("{how} comparison")),
        points: vec![PointReport {
            at: format!("r={r}"),
            lhs: Quantity::Float { value: lhs, error },
            rhs: Quantity::Float { value: rhs, error },
            verdict,
        }],
        params: json!({ "cover": sets, "r": r }),
    })
}

/// Ordering of `r H(X)` against `Σ_S H(X_S)`, decided in integers.
///
/// With all probabilities written as `c / W`, `r H(X) <= Σ H(X_S)` iff
/// `Π c^{r c} · W^{|cover| W} >= Π_S Π c_s^{c_s} · W^{r W}`.
fn exact_order(
    joint: &[Rational],
    marginals: &[Vec<Rational>],
    r: usize,
) -> Option<std::cmp::Ordering> {
    let mut w = BigInt::one();
    for p in joint {
        w = w.lcm(p.denom());
    }
    let w_small: usize = w.to_string().parse().ok()?;
    let bits = |c: usize| (c as f64) * (c.max(2) as f64).log2();
    let numer = |p: &Rational| -> Option<usize> {
        (p * Rational::from_integer(w.clone()))
            .to_integer()
            .to_string()
            .parse()
            .ok()
    };
    let joint_c: Vec<usize> = joint.iter().map(numer).collect::<Option<_>>()?;
    let marg_c: Vec<Vec<usize>> = marginals
        .iter()
        .map(|m| m.iter().map(numer).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let est = (r + marginals.len()) as f64 * bits(w_small) * 2.0;
    if est > EXACT_BITS {
        return None;
    }
    let pow = |c: usize, e: usize| num_traits::pow(BigUint::from(c), e);
    let mut left = pow(w_small, marginals.len() * w_small);
    for &c in &joint_c {
        left *= pow(c, r * c);
    }
    let mut right = pow(w_small, r * w_small);
    for m in &marg_c {
        for &c in m {
            right *= pow(c, c);
        }
    }
    // Larger product of p^p means smaller entropy.
    Some(right.cmp(&left))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rat;
    use crate::harness::Verdict;
    use crate::rng::SplitMix64;

    fn bits(tuples: &[[u64; 2]]) -> JointDistribution {
        JointDistribution::uniform(2, tuples.iter().map(|t| t.to_vec()).collect()).unwrap()
    }

    #[test]
    fn independent_bits_give_equality() {
        let d = bits(&[[0, 0], [0, 1], [1, 0], [1, 1]]);
        let r = check_shearer(&d, &[vec![0], vec![1]], 1).unwrap();
        assert_eq!(r.verdict, Verdict::HoldsWithEquality);
        let two_ln2 = 2.0 * 2f64.ln();
        assert!((r.lhs.approx().unwrap() - two_ln2).abs() < 1e-12);
    }

    #[test]
    fn correlated_bits_hold_strictly() {
        let d = bits(&[[0, 0], [1, 1]]);
        let r = check_shearer(&d, &[vec![0], vec![1]], 1).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        assert!((r.lhs.approx().unwrap() - 2f64.ln()).abs() < 1e-12);
        assert!((r.rhs.approx().unwrap() - 2.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn irregular_cover_rejected() {
        let d = bits(&[[0, 0], [1, 1]]);
        assert!(matches!(
            check_shearer(&d, &[vec![0, 1], vec![0], vec![1]], 1),
            Err(Error::IrregularCover(_))
        ));
        assert!(check_shearer(&d, &[vec![0, 1], vec![0], vec![1]], 2).is_ok());
    }

    #[test]
    fn invalid_distributions() {
        assert!(
            JointDistribution::new(1, vec![(vec![0], Rational::new(1.into(), 2.into()))]).is_err()
        );
        assert!(JointDistribution::new(1, vec![(vec![0], rat(2)), (vec![1], rat(-1))]).is_err());
        assert!(JointDistribution::new(2, vec![(vec![0], rat(1))]).is_err());
    }

    #[test]
    fn random_distributions_hold() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..50 {
            let k = rng.range(1, 4);
            let support = rng.range(1, 12);
            let tuples: Vec<Vec<u64>> = (0..support)
                .map(|_| (0..k).map(|_| rng.below(3)).collect())
                .collect();
            let weights: Vec<u64> = (0..support).map(|_| rng.range(1, 9) as u64).collect();
            let total: u64 = weights.iter().sum();
            let d = JointDistribution::new(
                k,
                tuples
                    .into_iter()
                    .zip(&weights)
                    .map(|(x, &w)| (x, Rational::new(w.into(), total.into())))
                    .collect(),
            )
            .unwrap();
            let cover: Vec<Vec<usize>> = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
            let cover: Vec<Vec<usize>> = cover
                .into_iter()
                .map(|mut s| {
                    s.dedup();
                    s
                })
                .collect();
            let r = if k == 1 { 1 } else { 2 };
            let rep = check_shearer(&d, &cover, r).unwrap();
            assert!(rep.verdict.is_pass(), "{rep:?}");
        }
    }
}
