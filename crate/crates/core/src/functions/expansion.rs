//! Exact integer q-expansions of the six functions, built term by term from
//! the Eulerian forms: each summand is carried as a full truncated series and
//! advanced by the same recurrences the numeric evaluators use, with binomial
//! factors multiplied/divided in O(order). The loop stops once the summand's
//! minimal exponent reaches the truncation order.

use crate::qexpand::{qpoch_series, PochOrder, TruncatedSeries};

use super::FunctionTag;

/// Exact expansion of the tagged function to the given order.
pub fn expansion(tag: FunctionTag, order: usize) -> TruncatedSeries {
    match tag {
        FunctionTag::D5 => d5(order),
        FunctionTag::D5Star => d5_star(order),
        FunctionTag::Omega => omega(order),
        FunctionTag::F => f(order),
        FunctionTag::H1 => h1(order),
        FunctionTag::H2 => h2(order),
    }
}

fn d5(order: usize) -> TruncatedSeries {
    // summand_n = q^n (-q)_n / (q;q^2)_{n+1};  t_n = t_{n-1} q (1+q^n)/(1-q^{2n+1})
    let mut summand = TruncatedSeries::one(order).div_binomial(1, 1);
    let mut sum = summand.clone();
    let mut n = 1usize;
    while n < order {
        summand = summand.shift(1).mul_binomial(-1, n).div_binomial(1, 2 * n + 1);
        sum = sum.add(&summand).expect("equal orders");
        n += 1;
    }
    sum
}

fn d5_star(order: usize) -> TruncatedSeries {
    // summand_n = (-1)^n q^{n(n+1)/2} (-q)_n / (q;q^2)_{n+1}
    let mut summand = TruncatedSeries::one(order).div_binomial(1, 1);
    let mut sum = summand.clone();
    let mut n = 1usize;
    while n * (n + 1) / 2 < order {
        summand = summand.shift(n).mul_binomial(-1, n).div_binomial(1, 2 * n + 1).neg();
        sum = sum.add(&summand).expect("equal orders");
        n += 1;
    }
    sum
}

fn omega(order: usize) -> TruncatedSeries {
    // summand_n = q^{2n(n+1)} / [(q;q^2)_{n+1}]^2
    let mut summand = TruncatedSeries::one(order).div_binomial(1, 1).div_binomial(1, 1);
    let mut sum = summand.clone();
    let mut n = 1usize;
    while 2 * n * (n + 1) < order {
        summand = summand
            .shift(4 * n)
            .div_binomial(1, 2 * n + 1)
            .div_binomial(1, 2 * n + 1);
        sum = sum.add(&summand).expect("equal orders");
        n += 1;
    }
    sum
}

/// omega via its second form sum_n q^n/(q;q^2)_{n+1} (exact cross-check).
pub fn omega_alt_expansion(order: usize) -> TruncatedSeries {
    let mut summand = TruncatedSeries::one(order).div_binomial(1, 1);
    let mut sum = summand.clone();
    let mut n = 1usize;
    while n < order {
        summand = summand.shift(1).div_binomial(1, 2 * n + 1);
        sum = sum.add(&summand).expect("equal orders");
        n += 1;
    }
    sum
}

fn f(order: usize) -> TruncatedSeries {
    // summand_n = q^{n^2} / [(-q)_n]^2
    let mut summand = TruncatedSeries::one(order);
    let mut sum = summand.clone();
    let mut n = 1usize;
    while n * n < order {
        summand = summand
            .shift(2 * n - 1)
            .div_binomial(-1, n)
            .div_binomial(-1, n);
        sum = sum.add(&summand).expect("equal orders");
        n += 1;
    }
    sum
}

/// f via its second form 2 - sum_n (-1)^n q^n/(-q)_n (exact cross-check).
pub fn f_alt_expansion(order: usize) -> TruncatedSeries {
    let mut summand = TruncatedSeries::one(order);
    let mut sum = summand.clone();
    let mut n = 1usize;
    while n < order {
        summand = summand.shift(1).div_binomial(-1, n).neg();
        sum = sum.add(&summand).expect("equal orders");
        n += 1;
    }
    TruncatedSeries::monomial(2, 0, order).sub(&sum).expect("equal orders")
}

fn h1(order: usize) -> TruncatedSeries {
    // summand_n = (-q)_{2n} q^n / [(q;q^2)_{n+1}]^2
    let mut summand = TruncatedSeries::one(order).div_binomial(1, 1).div_binomial(1, 1);
    let mut sum = summand.clone();
    let mut n = 1usize;
    while n < order {
        summand = summand
            .shift(1)
            .mul_binomial(-1, 2 * n - 1)
            .mul_binomial(-1, 2 * n)
            .div_binomial(1, 2 * n + 1)
            .div_binomial(1, 2 * n + 1);
        sum = sum.add(&summand).expect("equal orders");
        n += 1;
    }
    sum
}

fn h2(order: usize) -> TruncatedSeries {
    // summand_n = (-1)^n (q;q^2)_n q^{n^2} / [(-q^2;q^2)_n]^2
    let mut summand = TruncatedSeries::one(order);
    let mut sum = summand.clone();
    let mut n = 1usize;
    while n * n < order {
        summand = summand
            .shift(2 * n - 1)
            .mul_binomial(1, 2 * n - 1)
            .div_binomial(-1, 2 * n)
            .div_binomial(-1, 2 * n)
            .neg();
        sum = sum.add(&summand).expect("equal orders");
        n += 1;
    }
    sum
}

/// [(q;q)_inf]^5 / [(q^2;q^2)_inf]^4 as an exact series.
pub fn eta_correction_expansion(order: usize) -> TruncatedSeries {
    let e1 = qpoch_series(1, 1, 1, PochOrder::Infinite, order).expect("positive exponent");
    let e2 = qpoch_series(1, 2, 2, PochOrder::Infinite, order).expect("positive exponent");
    let e2_inv = e2.inv_unit().expect("unit constant term");
    let mut out = TruncatedSeries::one(order);
    for _ in 0..5 {
        out = out.mul(&e1).expect("equal orders");
    }
    for _ in 0..4 {
        out = out.mul(&e2_inv).expect("equal orders");
    }
    out
}

/// [(q^2;q^2)_inf / (q;q)_inf]^2 as an exact series.
pub fn pochratio_sq_expansion(order: usize) -> TruncatedSeries {
    let num = qpoch_series(1, 2, 2, PochOrder::Infinite, order).expect("positive exponent");
    let den = qpoch_series(1, 1, 1, PochOrder::Infinite, order).expect("positive exponent");
    let ratio = num.mul(&den.inv_unit().expect("unit constant term")).expect("equal orders");
    ratio.mul(&ratio).expect("equal orders")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ints(s: &TruncatedSeries, k: usize) -> Vec<i64> {
        s.coeffs().iter().take(k).map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn d5_displayed_coefficients() {
        let s = expansion(FunctionTag::D5, 14);
        assert_eq!(ints(&s, 14), vec![1, 2, 4, 6, 10, 16, 23, 34, 50, 70, 98, 136, 184, 250]);
    }

    #[test]
    fn d5_star_support_and_signs() {
        let s = expansion(FunctionTag::D5Star, 46);
        let mut want = vec![0i64; 46];
        for (i, e) in [0usize, 2, 6, 12, 20, 30, 42].iter().enumerate() {
            want[*e] = if i % 2 == 0 { 1 } else { -1 };
        }
        assert_eq!(ints(&s, 46), want);
    }

    #[test]
    fn omega_coefficients() {
        let s = expansion(FunctionTag::Omega, 14);
        assert_eq!(ints(&s, 14), vec![1, 2, 3, 4, 6, 8, 10, 14, 18, 22, 29, 36, 44, 56]);
    }

    #[test]
    fn f_coefficients() {
        let s = expansion(FunctionTag::F, 14);
        assert_eq!(ints(&s, 14), vec![1, 1, -2, 3, -3, 3, -5, 7, -6, 6, -10, 12, -11, 13]);
    }

    #[test]
    fn h1_coefficients() {
        let s = expansion(FunctionTag::H1, 14);
        assert_eq!(ints(&s, 14), vec![1, 3, 7, 14, 27, 49, 84, 141, 230, 364, 567, 867, 1302, 1932]);
    }

    #[test]
    fn h2_coefficients() {
        let s = expansion(FunctionTag::H2, 14);
        assert_eq!(ints(&s, 14), vec![1, -1, 1, 2, -1, -4, 1, 5, -2, -5, 4, 7, -4, -11]);
    }

    #[test]
    fn alternative_forms_agree_exactly() {
        let order = 50;
        assert_eq!(expansion(FunctionTag::Omega, order), omega_alt_expansion(order));
        assert_eq!(expansion(FunctionTag::F, order), f_alt_expansion(order));
    }

    #[test]
    fn eta_correction_starts_like_one() {
        let s = eta_correction_expansion(8);
        assert_eq!(s.coeff(0), &BigInt::from(1));
    }
}
