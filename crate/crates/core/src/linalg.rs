//! Exact dense linear algebra: rational matrices and the fraction-free
//! Bareiss determinant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::graph::Rational;

/// Square matrix of exact rationals, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RationalMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: &Rational) {
        self.data[i * self.n + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `self + t I`.
    pub fn shifted(&self, t: &Rational) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.add(i, i, t);
        }
        m
    }

    /// Principal submatrix on the given (sorted) indices.
    pub fn principal(&self, idx: &[usize]) -> Self {
        let rows = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        RationalMatrix::from_rows(rows)
    }

    /// Exact determinant. Each row is scaled to integers by the LCM of its
    /// denominators, Bareiss runs on the integer matrix, and the scaling is
    /// divided back out. The empty matrix has determinant 1.
    pub fn det(&self) -> Rational {
        let mut scale = BigInt::one();
        let mut rows = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let row = self.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rows.push(
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect::<Vec<BigInt>>(),
            );
            scale *= l;
        }
        Rational::new(bareiss_det(rows), scale)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| self.row(i).iter().map(rational_to_f64).collect())
            .collect()
    }
}

/// Fraction-free Gaussian elimination. Every intermediate division is exact.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Very large numerators or denominators: go through logarithms.
        let s = if x.is_negative() { -1.0 } else { 1.0 };
        s * (bigint_ln(&x.numer().abs()) - bigint_ln(x.denom())).exp()
    })
}

/// Natural logarithm of a positive big integer, accurate to double precision.
pub fn bigint_ln(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "logarithm of non-positive integer");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 60;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn rational_ln(x: &Rational) -> f64 {
    bigint_ln(x.numer()) - bigint_ln(x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::rat;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(
            bareiss_det(int_matrix(&[&[1, 2], &[3, 4]])),
            BigInt::from(-2)
        );
        assert_eq!(
            bareiss_det(int_matrix(&[&[0, 1], &[1, 0]])),
            BigInt::from(-1)
        );
        assert_eq!(
            bareiss_det(int_matrix(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])),
            BigInt::from(4)
        );
        assert_eq!(bareiss_det(int_matrix(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(bareiss_det(vec![]), BigInt::one());
    }

    #[test]
    fn rational_det_clears_denominators() {
        let m = RationalMatrix::from_rows(vec![
            vec![Rational::new(1.into(), 2.into()), rat(1)],
            vec![rat(1), Rational::new(1.into(), 3.into())],
        ]);
        assert_eq!(m.det(), Rational::new(BigInt::from(-5), BigInt::from(6)));
    }

    #[test]
    fn big_logs() {
        let x = BigInt::from(10).pow(400);
        assert!((bigint_ln(&x) - 400.0 * 10f64.ln()).abs() < 1e-9);
    }

    proptest::proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(v in proptest::collection::vec(-5i64..=5, 16)) {
            let rows: Vec<Vec<i64>> = v.chunks(4).map(|c| c.to_vec()).collect();
            fn cofactor(m: &[Vec<i64>]) -> i64 {
                if m.len() == 1 { return m[0][0]; }
                (0..m.len()).map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..].iter()
                        .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * cofactor(&minor)
                }).sum()
            }
            let expected = cofactor(&rows);
            let big = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            proptest::prop_assert_eq!(bareiss_det(big), BigInt::from(expected));
        }
    }
}
