//! Exact truncated formal power series in `q`.
//!
//! Two coefficient rings are supported: arbitrary-precision integers
//! ([`IntSeries`]) and the group ring Z[x]/(x^b - 1) ([`CycSeries`]), the
//! latter used to track hook counts modulo b as formal powers of `x`.
//!
//! All arithmetic is exact. Binary operations truncate to the minimum
//! order of the operands. Storage is dense: every generating function in
//! this crate is dense in `q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Truncated power series `c_0 + c_1 q + ... + c_N q^N` with exact integer
/// coefficients. `order` is the truncation bound N, inclusive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    /// Zero series truncated at `q^order`.
    pub fn zero(order: usize) -> Self {
        IntSeries {
            order,
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Build from explicit coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the q^0 coefficient");
        IntSeries {
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Drop coefficients above `order` (or keep as-is when already shorter).
    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order);
        IntSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Schoolbook product, truncated to the minimum order of the operands.
    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let order = self.order.min(other.order);
        let mut out = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        IntSeries { order, coeffs: out }
    }

    /// Multiplicative inverse up to truncation.
    ///
    /// Requires a unit constant term (+-1 over Z). The recurrence skips zero
    /// coefficients of `self`, so sparse inputs (eta products) invert fast.
    pub fn invert(&self) -> Result<IntSeries, SeriesError> {
        let a0 = &self.coeffs[0];
        if !(a0 == &BigInt::one() || a0 == &(-BigInt::one())) {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let nonzero: Vec<usize> = (1..=self.order)
            .filter(|&k| !self.coeffs[k].is_zero())
            .collect();
        let mut inv = vec![BigInt::zero(); self.order + 1];
        inv[0] = a0.clone(); // 1/(+-1) = +-1
        for n in 1..=self.order {
            let mut acc = BigInt::zero();
            for &k in nonzero.iter().take_while(|&&k| k <= n) {
                acc += &self.coeffs[k] * &inv[n - k];
            }
            // c_n = -acc / a0, and a0 = +-1
            inv[n] = if a0.is_one() { -acc } else { acc };
        }
        Ok(IntSeries {
            order: self.order,
            coeffs: inv,
        })
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, w: i64) -> Result<IntSeries, SeriesError> {
        if w == 0 {
            return Ok(IntSeries::one(self.order));
        }
        let base = if w < 0 { self.invert()? } else { self.clone() };
        let mut result = IntSeries::one(self.order);
        let mut power = base;
        let mut e = w.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&power);
            }
            e >>= 1;
            if e > 0 {
                power = power.mul(&power);
            }
        }
        Ok(result)
    }

    /// In-place multiplication by the binomial `1 + c q^m`.
    pub fn mul_binomial(&mut self, c: i64, m: usize) {
        if m == 0 {
            panic!("binomial step must be positive");
        }
        let c = BigInt::from(c);
        for n in (m..=self.order).rev() {
            let add = &self.coeffs[n - m] * &c;
            self.coeffs[n] += add;
        }
    }

    /// In-place division by the binomial `1 + c q^m`.
    pub fn div_binomial(&mut self, c: i64, m: usize) {
        if m == 0 {
            panic!("binomial step must be positive");
        }
        let c = BigInt::from(c);
        for n in m..=self.order {
            let sub = &self.coeffs[n - m] * &c;
            self.coeffs[n] -= sub;
        }
    }

    /// Extract the arithmetic subsequence: coefficient of `q^i` in the result
    /// is the coefficient of `q^{stride*i + residue}` in `self`.
    pub fn sift(&self, stride: usize, residue: usize) -> IntSeries {
        assert!(stride > 0);
        let coeffs: Vec<BigInt> = (0..)
            .map(|i| stride * i + residue)
            .take_while(|&e| e <= self.order)
            .map(|e| self.coeffs[e].clone())
            .collect();
        if coeffs.is_empty() {
            return IntSeries::zero(0);
        }
        IntSeries::from_coeffs(coeffs)
    }
}

impl std::ops::Add for &IntSeries {
    type Output = IntSeries;
    fn add(self, rhs: &IntSeries) -> IntSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
            .collect();
        IntSeries { order, coeffs }
    }
}

impl std::ops::Sub for &IntSeries {
    type Output = IntSeries;
    fn sub(self, rhs: &IntSeries) -> IntSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] - &rhs.coeffs[n])
            .collect();
        IntSeries { order, coeffs }
    }
}

/// Errors from series arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Inversion requires constant term +-1 over Z (a unit over Z[x]/(x^b-1)).
    NonUnitConstantTerm,
    /// Component index out of range for the cyclotomic modulus.
    ResidueOutOfRange { residue: usize, modulus: usize },
}

impl std::fmt::Display for SeriesError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesError::NonUnitConstantTerm => {
                write!(f, "series inversion requires a unit constant term")
            }
            SeriesError::ResidueOutOfRange { residue, modulus } => {
                write!(f, "residue {residue} out of range for modulus {modulus}")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// One factor `(1 - q^{step})^outer`-style description for [`eta_like_product`]:
/// the product over n >= 1 of `(1 - q^{step * n})^outer`.
#[derive(Clone, Copy, Debug)]
pub struct EtaFactor {
    pub step: usize,
    pub outer: i64,
}

/// Exact truncated expansion of a product of eta-like factors
/// `prod_{n>=1} (1 - q^{m n})^w` for each `(m, w)` in `terms`.
///
/// Positive outer exponents multiply the sparse binomials in directly;
/// negative ones accumulate the positive-power product and route through
/// [`IntSeries::invert`].
pub fn eta_like_product(terms: &[EtaFactor], order: usize) -> Result<IntSeries, SeriesError> {
    let mut result = IntSeries::one(order);
    for &EtaFactor { step, outer } in terms {
        if outer == 0 || step > order {
            continue;
        }
        let mut positive = IntSeries::one(order);
        for n in 1..=order / step {
            for _ in 0..outer.unsigned_abs() {
                positive.mul_binomial(-1, step * n);
            }
        }
        let factor = if outer < 0 { positive.invert()? } else { positive };
        result = result.mul(&factor);
    }
    Ok(result)
}

/// Coefficients of `(q;q)_infty^w` up to `q^order`; `w = -1` gives the
/// partition numbers.
pub fn euler_product_pow(w: i64, order: usize) -> IntSeries {
    eta_like_product(&[EtaFactor { step: 1, outer: w }], order)
        .expect("euler product has unit constant term")
}

/// Element of Z[x]/(x^b - 1): component `j` is the coefficient of `x^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycCoeff {
    modulus: usize,
    components: Vec<BigInt>,
}

impl CycCoeff {
    pub fn zero(modulus: usize) -> Self {
        assert!(modulus >= 1);
        CycCoeff {
            modulus,
            components: vec![BigInt::zero(); modulus],
        }
    }

    pub fn one(modulus: usize) -> Self {
        let mut c = Self::zero(modulus);
        c.components[0] = BigInt::one();
        c
    }

    /// `c * x^e` as an element of the group ring.
    pub fn monomial(modulus: usize, c: BigInt, e: usize) -> Self {
        let mut out = Self::zero(modulus);
        out.components[e % modulus] = c;
        out
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn component(&self, j: usize) -> &BigInt {
        &self.components[j]
    }

    pub fn components(&self) -> &[BigInt] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Zero::is_zero)
    }

    /// Ring product; exponents reduce modulo b (x^b = 1).
    pub fn mul(&self, other: &CycCoeff) -> CycCoeff {
        assert_eq!(self.modulus, other.modulus);
        let b = self.modulus;
        let mut out = CycCoeff::zero(b);
        for (i, a) in self.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in other.components.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out.components[(i + j) % b] += a * c;
            }
        }
        out
    }

    fn add_assign(&mut self, other: &CycCoeff) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            *a += b;
        }
    }

    fn sub_assign(&mut self, other: &CycCoeff) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            *a -= b;
        }
    }

    /// Specialize x -> 1 (sum of components).
    pub fn specialize_one(&self) -> BigInt {
        self.components.iter().sum()
    }
}

/// Truncated power series over Z[x]/(x^b - 1); the `x^a` component of the
/// `q^n` coefficient carries the count for residue class `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycSeries {
    order: usize,
    modulus: usize,
    coeffs: Vec<CycCoeff>,
}

impl CycSeries {
    pub fn zero(modulus: usize, order: usize) -> Self {
        CycSeries {
            order,
            modulus,
            coeffs: vec![CycCoeff::zero(modulus); order + 1],
        }
    }

    pub fn one(modulus: usize, order: usize) -> Self {
        let mut s = Self::zero(modulus, order);
        s.coeffs[0] = CycCoeff::one(modulus);
        s
    }

    /// Embed an integer series at x^0.
    pub fn from_int_series(s: &IntSeries, modulus: usize) -> Self {
        let coeffs = s
            .coeffs()
            .iter()
            .map(|c| CycCoeff::monomial(modulus, c.clone(), 0))
            .collect();
        CycSeries {
            order: s.order(),
            modulus,
            coeffs,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn coeff(&self, n: usize) -> &CycCoeff {
        &self.coeffs[n]
    }

    /// Schoolbook product, truncated to the minimum order.
    pub fn mul(&self, other: &CycSeries) -> CycSeries {
        assert_eq!(self.modulus, other.modulus);
        let order = self.order.min(other.order);
        let mut out = CycSeries::zero(self.modulus, order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let prod = a.mul(b);
                out.coeffs[i + j].add_assign(&prod);
            }
        }
        out
    }

    /// Inverse up to truncation; the constant coefficient must be the ring
    /// unit 1 (all the products in this crate start from 1).
    pub fn invert(&self) -> Result<CycSeries, SeriesError> {
        if self.coeffs[0] != CycCoeff::one(self.modulus) {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let mut inv = CycSeries::zero(self.modulus, self.order);
        inv.coeffs[0] = CycCoeff::one(self.modulus);
        for n in 1..=self.order {
            let mut acc = CycCoeff::zero(self.modulus);
            for k in 1..=n {
                if self.coeffs[k].is_zero() || inv.coeffs[n - k].is_zero() {
                    continue;
                }
                acc.add_assign(&self.coeffs[k].mul(&inv.coeffs[n - k]));
            }
            for c in acc.components.iter_mut() {
                *c = -std::mem::take(c);
            }
            inv.coeffs[n] = acc;
        }
        Ok(inv)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, w: i64) -> Result<CycSeries, SeriesError> {
        if w == 0 {
            return Ok(CycSeries::one(self.modulus, self.order));
        }
        let base = if w < 0 { self.invert()? } else { self.clone() };
        let mut result = CycSeries::one(self.modulus, self.order);
        let mut power = base;
        let mut e = w.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&power);
            }
            e >>= 1;
            if e > 0 {
                power = power.mul(&power);
            }
        }
        Ok(result)
    }

    /// In-place multiplication by `1 + c x^e q^m`.
    pub fn mul_binomial(&mut self, c: i64, e: usize, m: usize) {
        assert!(m > 0, "binomial step must be positive");
        let b = self.modulus;
        let e = e % b;
        let c = BigInt::from(c);
        for n in (m..=self.order).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            let src = &lo[n - m];
            let dst = &mut hi[0];
            for j in 0..b {
                if src.components[j].is_zero() {
                    continue;
                }
                let add = &src.components[j] * &c;
                dst.components[(j + e) % b] += add;
            }
        }
    }

    /// In-place division by `1 + c x^e q^m`.
    pub fn div_binomial(&mut self, c: i64, e: usize, m: usize) {
        assert!(m > 0, "binomial step must be positive");
        let b = self.modulus;
        let e = e % b;
        let c = BigInt::from(c);
        for n in m..=self.order {
            let (lo, hi) = self.coeffs.split_at_mut(n);
            let src = &lo[n - m];
            let dst = &mut hi[0];
            for j in 0..b {
                if src.components[j].is_zero() {
                    continue;
                }
                let sub = &src.components[j] * &c;
                dst.components[(j + e) % b] -= sub;
            }
        }
    }

    /// The geometric-style cyclotomic factor `prod_{n>=1} (1 - x^{e(n)} q^{m n})^w`
    /// where the inner x-exponent pattern is `e(n) = pattern * n`. The F_2 factor
    /// of Han's identity is `pattern = 1, m = t, w = -t`.
    pub fn geometric_factor(
        modulus: usize,
        pattern: usize,
        m: usize,
        w: i64,
        order: usize,
    ) -> Result<CycSeries, SeriesError> {
        let mut positive = CycSeries::one(modulus, order);
        for n in 1..=order / m.max(1) {
            for _ in 0..w.unsigned_abs() {
                positive.mul_binomial(-1, pattern * n, m * n);
            }
        }
        if w < 0 {
            positive.invert()
        } else {
            Ok(positive)
        }
    }

    /// Read the x^a component as an integer series.
    pub fn extract_component(&self, a: usize) -> Result<IntSeries, SeriesError> {
        if a >= self.modulus {
            return Err(SeriesError::ResidueOutOfRange {
                residue: a,
                modulus: self.modulus,
            });
        }
        let coeffs = self.coeffs.iter().map(|c| c.component(a).clone()).collect();
        Ok(IntSeries::from_coeffs(coeffs))
    }

    /// Specialize x -> 1, recovering the underlying integer series.
    pub fn specialize_one(&self) -> IntSeries {
        let coeffs = self.coeffs.iter().map(CycCoeff::specialize_one).collect();
        IntSeries::from_coeffs(coeffs)
    }

    fn sub_assign(&mut self, other: &CycSeries) {
        let order = self.order.min(other.order);
        for n in 0..=order {
            self.coeffs[n].sub_assign(&other.coeffs[n]);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycCoeff::is_zero)
    }

    /// `self - other`, truncated to the minimum order.
    pub fn sub(&self, other: &CycSeries) -> CycSeries {
        let mut out = self.truncated(other.order);
        out.sub_assign(other);
        out
    }

    pub fn truncated(&self, order: usize) -> CycSeries {
        let order = order.min(self.order);
        CycSeries {
            order,
            modulus: self.modulus,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }
}
