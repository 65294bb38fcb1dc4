//! Poincare-polynomial generating functions for Hilbert schemes of points
//! on C^2 and the modular Betti sums B(a,b;n).
//!
//! Homogeneous: G(T;q) = prod_m 1/(1 - T^{2m-2} q^m).
//! Quasihomogeneous (coprime alpha, beta; s = alpha+beta):
//! G_{alpha,beta}(T;q) = F_1(T^2;q^s)^{-1} prod_m (1-q^{sm})/(1-q^m).
//!
//! Betti sums are read directly off T-degrees mod b in exact integers; the
//! root-of-unity average is only a consistency check, never the computation
//! path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::series::{euler_product_pow, IntSeries};

/// Truncated series whose q^n coefficient is an integer polynomial in T,
/// stored densely by T-degree. Only even T-degrees are ever nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareSeries {
    order: usize,
    coeffs: Vec<Vec<BigInt>>,
}

/// Which Hilbert-scheme family a series describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertFamily {
    Homogeneous,
    Quasihomogeneous { alpha: u32, beta: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertError {
    /// alpha and beta must be coprime positive integers.
    NotCoprime { alpha: u32, beta: u32 },
    OutOfRange(String),
}

impl std::fmt::Display for HilbertError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HilbertError::NotCoprime { alpha, beta } => {
                write!(f, "alpha={alpha}, beta={beta} must be coprime and positive")
            }
            HilbertError::OutOfRange(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for HilbertError {}

impl PoincareSeries {
    fn one(order: usize) -> Self {
        let mut coeffs = vec![Vec::new(); order + 1];
        coeffs[0].push(BigInt::from(1));
        PoincareSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficients of the q^n polynomial by T-degree (may be empty for 0).
    pub fn poly(&self, n: usize) -> &[BigInt] {
        &self.coeffs[n]
    }

    /// In-place division by (1 - T^d q^m): c[n] += T^d c[n-m] for ascending n.
    fn div_binomial(&mut self, d: usize, m: usize) {
        assert!(m > 0);
        for n in m..=self.order {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            let src = &lo[n - m];
            let dst = &mut hi[0];
            if src.is_empty() {
                continue;
            }
            if dst.len() < src.len() + d {
                dst.resize(src.len() + d, BigInt::zero());
            }
            for (j, c) in src.iter().enumerate() {
                if !c.is_zero() {
                    dst[j + d] += c;
                }
            }
        }
    }

    /// In-place multiplication by (1 - q^m): c[n] -= c[n-m] for descending n.
    fn mul_one_minus_qm(&mut self, m: usize) {
        assert!(m > 0);
        for n in (m..=self.order).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            let src = &lo[n - m];
            let dst = &mut hi[0];
            if src.is_empty() {
                continue;
            }
            if dst.len() < src.len() {
                dst.resize(src.len(), BigInt::zero());
            }
            for (j, c) in src.iter().enumerate() {
                if !c.is_zero() {
                    dst[j] -= c;
                }
            }
        }
    }

    /// Sum of Betti numbers b_j with j = a mod b, at q^n.
    pub fn betti_sum(&self, a: u32, b: u32, n: usize) -> Result<BigInt, HilbertError> {
        if a >= b || b == 0 {
            return Err(HilbertError::OutOfRange(format!("need 0 <= a < b, got a={a}, b={b}")));
        }
        if n > self.order {
            return Err(HilbertError::OutOfRange(format!(
                "n={n} exceeds series order {}",
                self.order
            )));
        }
        Ok(self.coeffs[n]
            .iter()
            .enumerate()
            .filter(|(j, _)| *j as u32 % b == a)
            .map(|(_, c)| c)
            .sum())
    }

    /// Evaluate the q^n coefficient at T = 1 (equals p(n)).
    pub fn eval_at_one(&self, n: usize) -> BigInt {
        self.coeffs[n].iter().sum()
    }

    /// Largest T-degree with a nonzero coefficient at q^n.
    pub fn top_degree(&self, n: usize) -> Option<usize> {
        self.coeffs[n].iter().rposition(|c| !c.is_zero())
    }

    /// All Betti numbers are non-negative and odd T-degrees vanish.
    pub fn check_structural_invariants(&self) -> Result<(), HilbertError> {
        for (n, poly) in self.coeffs.iter().enumerate() {
            for (j, c) in poly.iter().enumerate() {
                if c.is_negative() {
                    return Err(HilbertError::OutOfRange(format!(
                        "negative Betti number at n={n}, degree {j}"
                    )));
                }
                if j % 2 == 1 && !c.is_zero() {
                    return Err(HilbertError::OutOfRange(format!(
                        "odd T-degree {j} nonzero at n={n}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Goettsche's generating function for (C^2)^[n], up to q^order.
pub fn goettsche_series(order: usize) -> PoincareSeries {
    let mut s = PoincareSeries::one(order);
    for m in 1..=order.max(1) {
        if m > order {
            break;
        }
        s.div_binomial(2 * m - 2, m);
    }
    s
}

/// Buryak-Feigin generating function for the T_{alpha,beta} fixed points,
/// up to q^order. Requires gcd(alpha,beta) = 1.
pub fn buryak_feigin_series(alpha: u32, beta: u32, order: usize) -> Result<PoincareSeries, HilbertError> {
    if alpha == 0 || beta == 0 || alpha.gcd(&beta) != 1 {
        return Err(HilbertError::NotCoprime { alpha, beta });
    }
    let s = (alpha + beta) as usize;
    let mut out = PoincareSeries::one(order);
    // F_1(T^2;q^s)^{-1} = prod 1/(1 - T^2 q^{sm})
    for m in 1..=order / s {
        out.div_binomial(2, s * m);
    }
    // prod (1-q^{sm})
    for m in 1..=order / s {
        out.mul_one_minus_qm(s * m);
    }
    // 1/(q;q)_infty
    for m in 1..=order {
        out.div_binomial(0, m);
    }
    Ok(out)
}

/// Build the series for a family at the given order.
pub fn family_series(family: HilbertFamily, order: usize) -> Result<PoincareSeries, HilbertError> {
    match family {
        HilbertFamily::Homogeneous => Ok(goettsche_series(order)),
        HilbertFamily::Quasihomogeneous { alpha, beta } => buryak_feigin_series(alpha, beta, order),
    }
}

/// delta(a,b;n) = B(a,b;n)/p(n) as an exact rational. `partition_numbers`
/// must cover index n (use [`euler_product_pow`] with w = -1).
pub fn delta(
    series: &PoincareSeries,
    partition_numbers: &IntSeries,
    a: u32,
    b: u32,
    n: usize,
) -> Result<BigRational, HilbertError> {
    let num = series.betti_sum(a, b, n)?;
    let den = partition_numbers.coeff(n).clone();
    Ok(BigRational::new(num, den))
}

/// Convenience: partition numbers at the order of a Poincare series.
pub fn partition_series(order: usize) -> IntSeries {
    euler_product_pow(-1, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn poly_of(s: &PoincareSeries, n: usize) -> Vec<i64> {
        s.poly(n)
            .iter()
            .map(|c| i64::try_from(c.clone()).unwrap())
            .collect()
    }

    #[test]
    fn goettsche_small_coefficients() {
        let g = goettsche_series(4);
        assert_eq!(poly_of(&g, 2), vec![1, 0, 1]); // 1 + T^2
        assert_eq!(poly_of(&g, 3), vec![1, 0, 1, 0, 1]);
        assert_eq!(poly_of(&g, 4), vec![1, 0, 1, 0, 2, 0, 1]); // 1+T^2+2T^4+T^6
    }

    #[test]
    fn goettsche_specializes_to_partitions() {
        let g = goettsche_series(100);
        let p = partition_series(100);
        for n in 0..=100 {
            assert_eq!(&g.eval_at_one(n), p.coeff(n), "n={n}");
        }
    }

    #[test]
    fn buryak_feigin_paper_coefficients() {
        let g = buryak_feigin_series(2, 3, 7).unwrap();
        assert_eq!(poly_of(&g, 5), vec![6, 0, 1]); // 6 + T^2
        assert_eq!(poly_of(&g, 6), vec![10, 0, 1]);
        assert_eq!(poly_of(&g, 7), vec![13, 0, 2]); // 13 + 2T^2
        assert!(buryak_feigin_series(2, 4, 5).is_err());
        assert!(buryak_feigin_series(0, 1, 5).is_err());
    }

    #[test]
    fn buryak_feigin_specializes_to_partitions() {
        let g = buryak_feigin_series(2, 3, 100).unwrap();
        let p = partition_series(100);
        for n in 0..=100 {
            assert_eq!(&g.eval_at_one(n), p.coeff(n), "n={n}");
        }
    }

    #[test]
    fn structural_invariants_hold() {
        goettsche_series(200).check_structural_invariants().unwrap();
        buryak_feigin_series(1, 1, 150)
            .unwrap()
            .check_structural_invariants()
            .unwrap();
        buryak_feigin_series(2, 3, 150)
            .unwrap()
            .check_structural_invariants()
            .unwrap();
    }

    #[test]
    fn betti_sums_decompose_p() {
        let g = goettsche_series(120);
        let q = buryak_feigin_series(3, 4, 120).unwrap();
        let p = partition_series(120);
        for b in [2u32, 3, 4, 5] {
            for n in [0usize, 7, 60, 120] {
                for s in [&g, &q] {
                    let total: BigInt = (0..b).map(|a| s.betti_sum(a, b, n).unwrap()).sum();
                    assert_eq!(&total, p.coeff(n), "b={b} n={n}");
                }
            }
        }
    }

    #[test]
    fn odd_a_even_b_sums_vanish() {
        let g = goettsche_series(50);
        let q = buryak_feigin_series(2, 3, 50).unwrap();
        for s in [&g, &q] {
            for b in [2u32, 4] {
                for a in (1..b).step_by(2) {
                    for n in 0..=50 {
                        assert!(s.betti_sum(a, b, n).unwrap().is_zero(), "a={a} b={b} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn betti_mod3_at_q4() {
        // 1 + T^2 + 2T^4 + T^6 reduced by T-degree mod 3
        let g = goettsche_series(4);
        assert_eq!(g.betti_sum(0, 3, 4).unwrap(), BigInt::from(2));
        assert_eq!(g.betti_sum(1, 3, 4).unwrap(), BigInt::from(2));
        assert_eq!(g.betti_sum(2, 3, 4).unwrap(), BigInt::from(1));
    }

    #[test]
    fn delta_values() {
        let g = goettsche_series(20);
        let p = partition_series(20);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(delta(&g, &p, 0, 3, 2).unwrap(), half);
        assert_eq!(delta(&g, &p, 2, 3, 2).unwrap(), half);
        assert!(delta(&g, &p, 1, 3, 2).unwrap().is_zero());
        // rows sum to 1 exactly
        for n in 0..=20 {
            let total: BigRational = (0..3).map(|a| delta(&g, &p, a, 3, n).unwrap()).sum();
            assert!(total.is_one(), "n={n}");
        }
    }

    #[test]
    fn delta_at_n1_is_one_for_a0() {
        let g = goettsche_series(2);
        let p = partition_series(2);
        assert!(delta(&g, &p, 0, 3, 1).unwrap().is_one());
    }
}
