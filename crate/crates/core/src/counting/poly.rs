//! Dense bivariate integer polynomials in `x` and `y`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::Rational;

/// Bivariate polynomial with big-integer coefficients, `c[i][j]` the
/// coefficient of `x^i y^j`. Tutte polynomials are the main inhabitants and
/// have nonnegative coefficients; differences of them need not.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TuttePolynomial {
    c: Vec<Vec<BigInt>>,
}

impl TuttePolynomial {
    pub fn zero() -> Self {
        TuttePolynomial { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, BigInt::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, BigInt::one())
    }

    pub fn monomial(i: usize, j: usize, coeff: BigInt) -> Self {
        let mut p = TuttePolynomial {
            c: vec![Vec::new(); i + 1],
        };
        p.c[i] = vec![BigInt::zero(); j + 1];
        p.c[i][j] = coeff;
        p.trim()
    }

    /// `1 + y + ... + y^(k-1)`.
    pub fn y_geometric(k: u32) -> Self {
        TuttePolynomial {
            c: vec![vec![BigInt::one(); k as usize]],
        }
        .trim()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.c
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero terms as `(i, j, coefficient)`, sorted.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for (i, row) in self.c.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    fn trim(mut self) -> Self {
        for row in &mut self.c {
            while row.last().is_some_and(Zero::is_zero) {
                row.pop();
            }
        }
        while self.c.last().is_some_and(Vec::is_empty) {
            self.c.pop();
        }
        self
    }

    fn slot(&mut self, i: usize, j: usize) -> &mut BigInt {
        if self.c.len() <= i {
            self.c.resize(i + 1, Vec::new());
        }
        if self.c[i].len() <= j {
            self.c[i].resize(j + 1, BigInt::zero());
        }
        &mut self.c[i][j]
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, v) in other.terms() {
            *out.slot(i, j) += v;
        }
        out.trim()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, v) in other.terms() {
            *out.slot(i, j) -= v;
        }
        out.trim()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = TuttePolynomial::zero();
        let b = other.terms();
        for (i, j, u) in self.terms() {
            for (k, l, v) in &b {
                *out.slot(i + k, j + l) += &u * v;
            }
        }
        out.trim()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = TuttePolynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `p(x + a, y + b)`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        let xa = TuttePolynomial::x().add(&TuttePolynomial::monomial(0, 0, a.into()));
        let yb = TuttePolynomial::y().add(&TuttePolynomial::monomial(0, 0, b.into()));
        let xp: Vec<Self> = (0..self.c.len())
            .scan(TuttePolynomial::one(), |p, _| {
                let cur = p.clone();
                *p = p.mul(&xa);
                Some(cur)
            })
            .collect();
        let ydeg = self.c.iter().map(Vec::len).max().unwrap_or(0);
        let yp: Vec<Self> = (0..ydeg)
            .scan(TuttePolynomial::one(), |p, _| {
                let cur = p.clone();
                *p = p.mul(&yb);
                Some(cur)
            })
            .collect();
        let mut out = TuttePolynomial::zero();
        for (i, j, v) in self.terms() {
            let term = xp[i].mul(&yp[j]).mul(&TuttePolynomial::monomial(0, 0, v));
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        // Horner in x over Horner-in-y rows.
        let mut acc = Rational::zero();
        for row in self.c.iter().rev() {
            let mut r = Rational::zero();
            for v in row.iter().rev() {
                r = r * y + Rational::from_integer(v.clone());
            }
            acc = acc * x + r;
        }
        acc
    }

    pub fn eval_int(&self, x: i64, y: i64) -> BigInt {
        let (x, y) = (BigInt::from(x), BigInt::from(y));
        let mut acc = BigInt::zero();
        for row in self.c.iter().rev() {
            let mut r = BigInt::zero();
            for v in row.iter().rev() {
                r = r * &y + v;
            }
            acc = acc * &x + r;
        }
        acc
    }

    /// Smallest coefficient over the full support rectangle; zero for the
    /// zero polynomial.
    pub fn min_coefficient(&self) -> BigInt {
        self.c
            .iter()
            .flat_map(|r| r.iter())
            .min()
            .cloned()
            .unwrap_or_default()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        !self.min_coefficient().is_negative()
    }

    /// `[[i, j, "coefficient"], ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .into_iter()
                .map(|(i, j, v)| json!([i, j, v.to_string()]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad =
            || Error::Param("polynomial must be a list of [i, j, \"coefficient\"] triples".into());
        let mut out = TuttePolynomial::zero();
        for t in v.as_array().ok_or_else(bad)? {
            let a = t.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
            let i = a[0].as_u64().and_then(|x| x.to_usize()).ok_or_else(bad)?;
            let j = a[1].as_u64().and_then(|x| x.to_usize()).ok_or_else(bad)?;
            let c: BigInt = a[2].as_str().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            *out.slot(i, j) += c;
        }
        Ok(out.trim())
    }
}

impl fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by_key(|t| std::cmp::Reverse((t.0 + t.1, t.0)));
        for (n, (i, j, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.abs();
            let mut parts = Vec::new();
            if !a.is_one() || (*i == 0 && *j == 0) {
                parts.push(a.to_string());
            }
            for (var, e) in [("x", *i), ("y", *j)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rat;

    fn k3() -> TuttePolynomial {
        TuttePolynomial::x()
            .pow(2)
            .add(&TuttePolynomial::x())
            .add(&TuttePolynomial::y())
    }

    #[test]
    fn arithmetic_and_display() {
        assert_eq!(k3().to_string(), "x^2 + x + y");
        assert_eq!(k3().eval_int(1, 1), BigInt::from(3));
        assert_eq!(k3().sub(&k3()), TuttePolynomial::zero());
        let s = k3().shift(1, 1);
        // (x+1)^2 + (x+1) + (y+1) = x^2 + 3x + y + 3
        assert_eq!(s.coeff(0, 0), BigInt::from(3));
        assert_eq!(s.coeff(1, 0), BigInt::from(3));
        assert_eq!(
            s.eval(&rat(2), &rat(5)),
            Rational::from_integer(s.eval_int(2, 5))
        );
        assert_eq!(
            TuttePolynomial::y_geometric(3).eval_int(1, 2),
            BigInt::from(7)
        );
    }

    #[test]
    fn json_roundtrip() {
        let p = k3().pow(3).sub(&TuttePolynomial::monomial(2, 2, 7.into()));
        assert_eq!(TuttePolynomial::from_json(&p.to_json()).unwrap(), p);
        assert_eq!(
            k3().to_json(),
            json!([[0, 1, "1"], [1, 0, "1"], [2, 0, "1"]])
        );
    }

    proptest::proptest! {
        #[test]
        fn shift_matches_evaluation(cs in proptest::collection::vec(-5i64..6, 6), a in -2i64..3, b in -2i64..3, x in -3i64..4, y in -3i64..4) {
            let mut p = TuttePolynomial::zero();
            for (k, c) in cs.iter().enumerate() {
                p = p.add(&TuttePolynomial::monomial(k / 3, k % 3, (*c).into()));
            }
            proptest::prop_assert_eq!(p.shift(a, b).eval_int(x, y), p.eval_int(x + a, y + b));
            proptest::prop_assert_eq!(p.pow(2).eval_int(x, y), p.eval_int(x, y).pow(2));
        }
    }
}
