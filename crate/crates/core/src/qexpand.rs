//! Exact truncated power-series arithmetic over arbitrary-size integers.
//!
//! This module is the ground-truth oracle for every q-expansion coefficient:
//! there is no floating point anywhere in it. A series holds its first
//! `order` coefficients; multiplication truncates back to `order`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::numkernel::{ComplexValue, Real};

/// Number of q-Pochhammer factors in a product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PochOrder {
    Finite(usize),
    Infinite,
}

/// Integer power series truncated at a fixed order: coefficients are valid
/// for exponents 0..order-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "order must be positive");
        TruncatedSeries { coeffs: vec![BigInt::ZERO; order] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::from(1);
        s
    }

    /// The monomial c * q^exp (zero series if exp >= order).
    pub fn monomial(c: i64, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp < order {
            s.coeffs[exp] = BigInt::from(c);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c == &BigInt::ZERO)
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::OrderMismatch { lhs: self.order(), rhs: rhs.order() });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c * &k).collect() }
    }

    /// Exact product, truncated at the common order.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let n = self.order();
        let mut out = vec![BigInt::ZERO; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == BigInt::ZERO {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if *b != BigInt::ZERO {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Exact inverse mod q^order; requires constant term +1 or -1.
    pub fn inv_unit(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        let unit = if *c0 == BigInt::from(1) {
            1
        } else if *c0 == BigInt::from(-1) {
            -1
        } else {
            return Err(Error::NonUnit);
        };
        let n = self.order();
        let mut out = vec![BigInt::ZERO; n];
        out[0] = BigInt::from(unit);
        for k in 1..n {
            let mut acc = BigInt::ZERO;
            for j in 1..=k {
                if self.coeffs[j] != BigInt::ZERO {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -acc * unit;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiply by q^e (drops overflowing terms).
    pub fn shift(&self, e: usize) -> Self {
        let n = self.order();
        let mut out = vec![BigInt::ZERO; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + e < n {
                out[i + e] = c.clone();
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Multiply by the binomial (1 - c q^e) in O(order).
    pub fn mul_binomial(&self, c: i64, e: usize) -> Self {
        let n = self.order();
        let c = BigInt::from(c);
        let mut out = self.coeffs.clone();
        if e >= 1 {
            for k in (e..n).rev() {
                let t = &self.coeffs[k - e] * &c;
                out[k] -= t;
            }
        } else {
            // e = 0 degenerates to scaling by (1 - c)
            let f = BigInt::from(1) - &c;
            for v in &mut out {
                *v *= &f;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Exact division by the binomial (1 - c q^e) in O(order); e >= 1.
    pub fn div_binomial(&self, c: i64, e: usize) -> Self {
        assert!(e >= 1, "binomial divisor needs exponent >= 1");
        let n = self.order();
        let c = BigInt::from(c);
        let mut out = self.coeffs.clone();
        for k in e..n {
            let t = &out[k - e] * &c;
            out[k] += t;
        }
        TruncatedSeries { coeffs: out }
    }

    /// Horner evaluation with exact coefficients at working precision.
    pub fn eval(&self, q: &ComplexValue) -> ComplexValue {
        let prec = q.prec();
        let mut acc = ComplexValue::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q);
            if *c != BigInt::ZERO {
                acc = acc.add(&ComplexValue::from_real(Real::from_bigint(c, prec)));
            }
        }
        acc
    }
}

/// Exact expansion of the q-Pochhammer product
/// prod_k (1 - c q^{j + k*step}) with k ranging over 0..n (or all k for the
/// infinite product, which requires j >= 1 so only finitely many factors
/// differ from 1 mod q^order).
pub fn qpoch_series(c: i64, j: usize, step: usize, n: PochOrder, order: usize) -> Result<TruncatedSeries> {
    assert!(step >= 1);
    let mut out = TruncatedSeries::one(order);
    match n {
        PochOrder::Finite(n) => {
            for k in 0..n {
                out = out.mul_binomial(c, j + k * step);
            }
        }
        PochOrder::Infinite => {
            if j == 0 {
                return Err(Error::Domain(
                    "infinite q-Pochhammer expansion requires the lowest exponent >= 1".into(),
                ));
            }
            let mut e = j;
            while e < order {
                out = out.mul_binomial(c, e);
                e += step;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn mul_identity_and_telescoping() {
        let n = 10;
        let s = qpoch_series(-1, 1, 1, PochOrder::Finite(4), n).unwrap();
        assert_eq!(TruncatedSeries::one(n).mul(&s).unwrap(), s);
        // (1-q) * (1 + q + ... + q^{N-1}) = 1 mod q^N
        let geo = TruncatedSeries::from_coeffs(vec![BigInt::from(1); n]);
        let prod = geo.mul_binomial(1, 1);
        assert_eq!(prod, TruncatedSeries::one(n));
    }

    #[test]
    fn binomial_square() {
        let n = 8;
        let one_plus_q = TruncatedSeries::one(n).mul_binomial(-1, 1);
        let sq = one_plus_q.mul(&one_plus_q).unwrap();
        assert_eq!(ints(&sq), vec![1, 2, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn order_mismatch_is_reported() {
        let a = TruncatedSeries::one(5);
        let b = TruncatedSeries::one(6);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch { lhs: 5, rhs: 6 })));
    }

    #[test]
    fn inverse_of_one_minus_q_is_geometric() {
        let n = 9;
        let s = TruncatedSeries::one(n).mul_binomial(1, 1); // 1 - q
        assert_eq!(ints(&s.inv_unit().unwrap()), vec![1; 9]);
        assert_eq!(TruncatedSeries::one(n).inv_unit().unwrap(), TruncatedSeries::one(n));
    }

    #[test]
    fn inverse_requires_unit() {
        let s = TruncatedSeries::monomial(2, 0, 4);
        assert!(matches!(s.inv_unit(), Err(Error::NonUnit)));
    }

    #[test]
    fn odd_part_partitions() {
        // 1/(q;q^2)_inf counts partitions into odd parts
        let s = qpoch_series(1, 1, 2, PochOrder::Infinite, 12).unwrap();
        let inv = s.inv_unit().unwrap();
        assert_eq!(ints(&inv), vec![1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12]);
    }

    #[test]
    fn distinct_part_partitions() {
        // (-q;q)_inf counts partitions into distinct parts
        let s = qpoch_series(-1, 1, 1, PochOrder::Infinite, 6).unwrap();
        assert_eq!(ints(&s), vec![1, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn pentagonal_numbers() {
        let s = qpoch_series(1, 1, 1, PochOrder::Infinite, 13).unwrap();
        assert_eq!(ints(&s), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
    }

    #[test]
    fn single_factor() {
        let s = qpoch_series(1, 1, 2, PochOrder::Finite(1), 6).unwrap();
        assert_eq!(ints(&s), vec![1, -1, 0, 0, 0, 0]);
    }

    #[test]
    fn infinite_expansion_needs_positive_exponent() {
        assert!(qpoch_series(1, 0, 1, PochOrder::Infinite, 8).is_err());
    }

    #[test]
    fn stabilization() {
        // the infinite product agrees with (a;q)_K below the first exponent
        // that factor K would touch
        let order = 20;
        let inf = qpoch_series(-1, 1, 1, PochOrder::Infinite, order).unwrap();
        for k in [3usize, 6, 10] {
            let fin = qpoch_series(-1, 1, 1, PochOrder::Finite(k), order).unwrap();
            for e in 0..(k + 1).min(order) {
                assert_eq!(inf.coeff(e), fin.coeff(e), "k={k} exponent {e}");
            }
        }
    }

    #[test]
    fn div_binomial_inverts_mul_binomial() {
        let s = qpoch_series(-1, 1, 1, PochOrder::Infinite, 24).unwrap();
        for (c, e) in [(1i64, 1usize), (-1, 2), (1, 5), (-1, 7)] {
            assert_eq!(s.mul_binomial(c, e).div_binomial(c, e), s);
        }
    }

    #[test]
    fn horner_eval() {
        let s = TruncatedSeries::from_coeffs(vec![BigInt::from(1), BigInt::from(2)]);
        let v = s.eval(&ComplexValue::from_f64(0.5, 0.0, 96));
        assert!((v.re().to_f64() - 2.0).abs() < 1e-25);
        let any = qpoch_series(-1, 1, 1, PochOrder::Infinite, 10).unwrap();
        let at_zero = any.eval(&ComplexValue::zero(96));
        assert!((at_zero.re().to_f64() - 1.0).abs() == 0.0);
    }
}
