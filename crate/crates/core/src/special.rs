//! Special functions at arbitrary working precision: Bernoulli numbers and
//! polynomials (exact), Hurwitz zeta and digamma via Euler-Maclaurin with
//! explicit tail control, Lerch's transcendent, and tanh-sinh quadrature.
//!
//! gamma/ln_gamma and the elementary transcendentals come from MPFR through
//! `rug`; everything here that has a paper-side contract (tail below
//! 2^{-prec+8}) is implemented directly so the bound is ours to prove.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::ops::CompleteRound;
use rug::{Complex, Float};
use std::sync::Mutex;

use crate::modular::ExactPhase;
use crate::prec::{bigint_to_float, rational_to_float, tail_target, validate_prec};

static BERNOULLI_CACHE: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// Exact Bernoulli number B_n (B_1 = -1/2 convention).
pub fn bernoulli_number(n: usize) -> BigRational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= n {
        let m = cache.len();
        // B_m = -1/(m+1) sum_{j<m} C(m+1, j) B_j
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, b) in cache.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * b;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        let val = -acc / BigInt::from(m + 1);
        cache.push(val);
    }
    cache[n].clone()
}

/// Exact Bernoulli polynomial B_n(x) at rational x.
pub fn bernoulli_poly(n: usize, x: &BigRational) -> BigRational {
    // B_n(x) = sum_k C(n,k) B_k x^{n-k}
    let mut acc = BigRational::zero();
    let mut binom = BigInt::one();
    let mut xpow = vec![BigRational::one()];
    for i in 1..=n {
        let last = xpow[i - 1].clone();
        xpow.push(last * x);
    }
    for k in 0..=n {
        acc += BigRational::from_integer(binom.clone()) * bernoulli_number(k) * &xpow[n - k];
        if k < n {
            binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
        }
    }
    acc
}

/// Errors from numeric special-function evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecialError {
    /// Argument outside the convergence domain.
    Domain(String),
    /// The tail bound could not be pushed below the target.
    Convergence(String),
}

impl std::fmt::Display for SpecialError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpecialError::Domain(m) => write!(f, "domain violation: {m}"),
            SpecialError::Convergence(m) => write!(f, "did not converge: {m}"),
        }
    }
}

impl std::error::Error for SpecialError {}

/// Hurwitz zeta(s, a) for real s > 1 and a > 0, by Euler-Maclaurin:
///
/// zeta(s,a) = sum_{n<M} (n+a)^{-s} + (M+a)^{1-s}/(s-1) + (M+a)^{-s}/2
///           + sum_{k=1..K} B_{2k}/(2k)! (s)_{2k-1} (M+a)^{-s-2k+1} + R_K,
///
/// with |R_K| below the first omitted term; M is chosen so that the
/// correction terms decay under 2^{-prec+8} before K = M.
pub fn hurwitz_zeta(s: &Float, a: &Float, prec: u32) -> Result<Float, SpecialError> {
    let prec = validate_prec(prec);
    let work = prec + 32;
    if !(a.is_finite() && a.is_sign_positive() && !a.is_zero()) {
        return Err(SpecialError::Domain(format!("need a > 0, got {a}")));
    }
    if s.partial_cmp(&1u32) != Some(std::cmp::Ordering::Greater) {
        return Err(SpecialError::Domain(format!("need s > 1, got {s}")));
    }
    let target = tail_target(work, 16);
    let m = (work / 2).max(24) as usize;

    let mut direct = Float::new(work);
    for n in 0..m {
        let base = Float::with_val(work, a + n as u32);
        direct += base.pow(-s.clone());
    }
    let ma = Float::with_val(work, a + m as u32);
    // (M+a)^{1-s}/(s-1)
    let one_minus_s = Float::with_val(work, 1u32 - s.clone());
    let mut tail = ma.clone().pow(&one_minus_s) / Float::with_val(work, s.clone() - 1u32);
    // (M+a)^{-s}/2
    tail += ma.clone().pow(-s.clone()) / 2u32;

    // correction terms
    let mut poch = s.clone(); // (s)_1 = s
    let ma_inv2 = ma.clone().pow(-2i32);
    let mut power = ma.clone().pow(Float::with_val(work, -(s.clone() + 1u32))); // (M+a)^{-s-1}
    let mut converged = false;
    for k in 1..=m {
        let b2k = bernoulli_number(2 * k);
        let coeff = rational_to_float(&b2k, work) / factorial_float(2 * k, work);
        let term = coeff * &poch * &power;
        let term_abs = term.clone().abs();
        tail += term;
        if term_abs < target {
            converged = true;
            break;
        }
        // advance Pochhammer (s)_{2k-1} -> (s)_{2k+1} and the power
        poch *= Float::with_val(work, s.clone() + (2 * k - 1) as u32);
        poch *= Float::with_val(work, s.clone() + (2 * k) as u32);
        power *= &ma_inv2;
    }
    if !converged {
        return Err(SpecialError::Convergence(format!(
            "hurwitz zeta tail above 2^-{} after {m} corrections",
            work - 16
        )));
    }
    Ok(Float::with_val(prec, direct + tail))
}

fn factorial_float(n: usize, prec: u32) -> Float {
    let mut f = Float::with_val(prec, 1u32);
    for i in 2..=n {
        f *= i as u32;
    }
    f
}

/// Digamma by Euler-Maclaurin with explicit remainder (independent of the
/// MPFR implementation, which unit tests compare against):
///
/// psi(a) = ln(a+M) - 1/(2(a+M)) - sum_{k=1..K} B_{2k}/(2k (a+M)^{2k})
///        - sum_{j<M} 1/(a+j).
pub fn digamma_em(a: &Float, prec: u32) -> Result<Float, SpecialError> {
    let prec = validate_prec(prec);
    let work = prec + 32;
    if !(a.is_finite() && a.is_sign_positive() && !a.is_zero()) {
        return Err(SpecialError::Domain(format!("need a > 0, got {a}")));
    }
    let target = tail_target(work, 16);
    let m = (work / 2).max(24) as usize;
    let shifted = Float::with_val(work, a + m as u32);
    let mut acc = shifted.clone().ln();
    acc -= Float::with_val(work, 2u32 * &shifted).recip();
    let inv2 = shifted.clone().pow(-2i32);
    let mut power = inv2.clone();
    let mut converged = false;
    for k in 1..=m {
        let term = rational_to_float(&bernoulli_number(2 * k), work) / (2 * k as u32) * &power;
        let term = Float::with_val(work, term);
        acc -= &term;
        if term.abs() < target {
            converged = true;
            break;
        }
        power *= &inv2;
    }
    if !converged {
        return Err(SpecialError::Convergence("digamma tail did not close".into()));
    }
    for j in 0..m {
        acc -= Float::with_val(work, a + j as u32).recip();
    }
    Ok(Float::with_val(prec, acc))
}

/// Lerch transcendent Phi(z,s,a) = sum z^n/(n+a)^s for |z| < 1 (strictly,
/// so the geometric tail bound |z|^{N+1}/((N+a)^s (1-|z|)) closes).
pub fn lerch_phi(z: &Complex, s: &Float, a: &Float, prec: u32) -> Result<Complex, SpecialError> {
    let prec = validate_prec(prec);
    let work = prec + 32;
    let zabs = Float::with_val(work, z.abs_ref());
    if zabs >= 1u32 {
        return Err(SpecialError::Domain(
            "lerch_phi sums directly only for |z| < 1; roots of unity go through lerch_phi_unit".into(),
        ));
    }
    if !(a.is_sign_positive() && !a.is_zero()) {
        return Err(SpecialError::Domain(format!("need a > 0, got {a}")));
    }
    let target = tail_target(work, 16);
    let one_minus = Float::with_val(work, 1u32 - &zabs);
    let mut sum = Complex::new(work);
    let mut zpow = Complex::with_val(work, (1u32, 0u32));
    let mut n = 0u32;
    loop {
        let base = Float::with_val(work, a + n);
        sum += zpow.clone() * base.pow(-s.clone());
        // geometric tail bound after the n-th term
        let bound = zabs.clone().pow(n + 1) / &one_minus;
        if bound < target {
            break;
        }
        zpow *= z;
        n += 1;
        if n > 4 * work {
            return Err(SpecialError::Convergence("lerch_phi tail did not close".into()));
        }
    }
    Ok(Complex::with_val(prec, sum))
}

/// Phi(xi, s, a) for xi an exact root of unity, via the cyclotomic splitting
/// Phi(xi,s,a) = b^{-s} sum_{j=0}^{b-1} xi^j zeta(s, (j+a)/b) with b the
/// denominator of the phase.
pub fn lerch_phi_unit(xi: &ExactPhase, s: &Float, a: &Float, prec: u32) -> Result<Complex, SpecialError> {
    let prec = validate_prec(prec);
    let work = prec + 32;
    let b_big = xi.turns().denom().clone();
    let b = u32::try_from(&b_big).map_err(|_| SpecialError::Domain("phase denominator too large".into()))?;
    let mut sum = Complex::new(work);
    for j in 0..b {
        let arg = (Float::with_val(work, a + j) / b).complete(work);
        let z = hurwitz_zeta(s, &arg, work)?;
        sum += xi.pow(j as i64).to_complex(work) * z;
    }
    let scale = Float::with_val(work, b).pow(-s.clone());
    Ok(Complex::with_val(prec, sum * scale))
}

/// Nodes of one tanh-sinh refinement level.
fn tanh_sinh_level(h_exp: i32, only_odd: bool, prec: u32) -> Vec<(Float, Float)> {
    // pairs (delta, weight): node distance from an endpoint on the unit
    // interval [-1,1] mapped symmetrically; caller handles both sides.
    let mut out = Vec::new();
    let h = Float::with_val(prec, Float::u_exp(1, h_exp));
    let half_pi = crate::prec::pi(prec) / 2u32;
    let mut j = if only_odd { 1u64 } else { 0 };
    loop {
        let t = Float::with_val(prec, j) * &h;
        let (sinh_t, cosh_t) = t.clone().sinh_cosh(Float::new(prec));
        let u = Float::with_val(prec, &half_pi * &sinh_t);
        // 1 - tanh(u) = 2 e^{-2u}/(1 + e^{-2u}), cancellation-free
        let e = Float::with_val(prec, -2u32 * &u).exp();
        let delta = Float::with_val(prec, 2u32 * &e) / Float::with_val(prec, 1u32 + &e);
        // weight = (pi/2) cosh(t) / cosh^2(u)
        let sech = Float::with_val(prec, u.cosh_ref()).recip();
        let w = Float::with_val(prec, &half_pi * &cosh_t) * Float::with_val(prec, &sech * &sech);
        if w.clone().abs() < tail_target(prec, 8) && j > 2 {
            break;
        }
        out.push((delta, w));
        j += if only_odd { 2 } else { 1 };
        if j > 1u64 << 24 {
            break;
        }
    }
    out
}

/// Tanh-sinh quadrature of `f` over the finite interval [a,b]. The callback
/// receives the distances from both endpoints, (x - a, b - x), so integrands
/// with endpoint cancellation can switch to series evaluation near an edge.
pub fn integrate_tanh_sinh<F>(
    f: &F,
    a: &Float,
    b: &Float,
    prec: u32,
    target: &Float,
) -> Result<Float, SpecialError>
where
    F: Fn(&Float, &Float) -> Float,
{
    let width = Float::with_val(prec, b - a);
    let half = Float::with_val(prec, &width / 2u32);
    let eval = |delta: &Float| -> (Float, Float) {
        // node measured from the left and from the right endpoint
        let d = Float::with_val(prec, &half * delta);
        let from_left = d.clone();
        let from_right = Float::with_val(prec, &width - &d);
        (
            f(&from_left, &from_right),
            f(&from_right, &from_left),
        )
    };

    let mut total = Float::new(prec);
    // level 0: h = 1
    for (delta, w) in tanh_sinh_level(0, false, prec) {
        let (fl, fr) = eval(&delta);
        if delta == 1u32 {
            // center node counted once
            total += w * fl;
        } else {
            total += w * (fl + fr);
        }
    }
    let mut h_scale = Float::with_val(prec, 1u32);
    let mut prev = Float::with_val(prec, &total * &half);
    for level in 1..=14i32 {
        h_scale /= 2u32;
        for (delta, w) in tanh_sinh_level(-level, true, prec) {
            let (fl, fr) = eval(&delta);
            total += w * (fl + fr);
        }
        let current = Float::with_val(prec, &total * &half * &h_scale);
        let diff = Float::with_val(prec, &current - &prev).abs();
        if &diff < target && level >= 3 {
            return Ok(current);
        }
        prev = current;
    }
    Err(SpecialError::Convergence(
        "tanh-sinh did not reach the target by level 14".into(),
    ))
}

/// Evaluate e^{2 pi i r}-style angles for a rational multiple of pi.
pub fn float_of_big(n: &BigInt, prec: u32) -> Float {
    bigint_to_float(n, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prec::pi;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(3), rat(0, 1));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn bernoulli_polys() {
        // B_2(x) = x^2 - x + 1/6
        let x = rat(1, 3);
        assert_eq!(bernoulli_poly(2, &x), rat(1, 9) - rat(1, 3) + rat(1, 6));
        // B_1(x) = x - 1/2
        assert_eq!(bernoulli_poly(1, &rat(3, 4)), rat(1, 4));
        // symmetry B_n(1-x) = (-1)^n B_n(x)
        for n in 0..8 {
            let lhs = bernoulli_poly(n, &(rat(1, 1) - rat(2, 7)));
            let rhs = bernoulli_poly(n, &rat(2, 7));
            assert_eq!(lhs, if n % 2 == 0 { rhs } else { -rhs });
        }
    }

    #[test]
    fn hurwitz_basel() {
        let prec = 256;
        let z = hurwitz_zeta(&Float::with_val(prec, 2u32), &Float::with_val(prec, 1u32), prec).unwrap();
        let expect = pi(prec).square() / 6u32;
        let err = Float::with_val(prec, &z - &expect).abs();
        assert!(err < Float::with_val(prec, 1e-30f64), "err = {err}");
    }

    #[test]
    fn hurwitz_half_argument() {
        // zeta(2, 1/2) = pi^2/2
        let prec = 320;
        let z = hurwitz_zeta(
            &Float::with_val(prec, 2u32),
            &Float::with_val(prec, 0.5f64),
            prec,
        )
        .unwrap();
        let expect = pi(prec).square() / 2u32;
        let err = Float::with_val(prec, &z - &expect).abs();
        assert!(err < Float::with_val(prec, 1e-40f64));
    }

    #[test]
    fn hurwitz_domain_errors() {
        let prec = 128;
        assert!(hurwitz_zeta(&Float::with_val(prec, 0.5f64), &Float::with_val(prec, 1u32), prec).is_err());
        assert!(hurwitz_zeta(&Float::with_val(prec, 2u32), &Float::with_val(prec, 0u32), prec).is_err());
    }

    #[test]
    fn digamma_matches_mpfr_and_known_values() {
        let prec = 256;
        let tol = Float::with_val(prec, 1e-30f64);
        // psi(1) + gamma = 0
        let d1 = digamma_em(&Float::with_val(prec, 1u32), prec).unwrap();
        let gamma = crate::prec::euler_gamma(prec);
        assert!(Float::with_val(prec, &d1 + &gamma).abs() < tol);
        // psi(1/2) = -gamma - 2 ln 2
        let dh = digamma_em(&Float::with_val(prec, 0.5f64), prec).unwrap();
        let expect = -gamma.clone() - 2u32 * Float::with_val(prec, 2u32).ln();
        assert!(Float::with_val(prec, &dh - &expect).abs() < tol);
        // cross-check against the MPFR implementation on a grid
        for num in 1..=12u32 {
            let a = (Float::with_val(prec, num) / 7u32).complete(prec);
            let mine = digamma_em(&a, prec).unwrap();
            let mpfr = a.digamma();
            assert!(Float::with_val(prec, &mine - &mpfr).abs() < tol, "a = {num}/7");
        }
    }

    #[test]
    fn lerch_geometric_and_unit() {
        let prec = 256;
        let tol = Float::with_val(prec, 1e-30f64);
        // Phi(1/2, 2, 1) = sum 2^{-n}/(n+1)^2 = 2 Li_2(1/2) = pi^2/6 - ln^2 2
        let z = Complex::with_val(prec, (0.5f64, 0));
        let v = lerch_phi(&z, &Float::with_val(prec, 2u32), &Float::with_val(prec, 1u32), prec).unwrap();
        let ln2 = Float::with_val(prec, 2u32).ln();
        let expect = Float::with_val(prec, pi(prec).square() / 6u32 - ln2.square());
        assert!(crate::prec::cdist(&v, &Complex::with_val(prec, (expect, Float::new(prec)))) < tol);
        // Phi(-1,2,1) = pi^2/12 through the Hurwitz route
        let minus_one = ExactPhase::root_of_unity(1, 2);
        let u = lerch_phi_unit(&minus_one, &Float::with_val(prec, 2u32), &Float::with_val(prec, 1u32), prec)
            .unwrap();
        let expect = pi(prec).square() / 12u32;
        assert!(crate::prec::cdist(&u, &Complex::with_val(prec, (expect, Float::new(prec)))) < tol);
        // |z| = 1 is rejected by the direct sum
        assert!(lerch_phi(
            &Complex::with_val(prec, (1u32, 0u32)),
            &Float::with_val(prec, 2u32),
            &Float::with_val(prec, 1u32),
            prec
        )
        .is_err());
    }

    #[test]
    fn tanh_sinh_smoke() {
        let prec = 192;
        let target = Float::with_val(prec, 1e-40f64);
        // integral of x^2 over [0,1]
        let f = |from_left: &Float, _from_right: &Float| from_left.clone().square();
        let v = integrate_tanh_sinh(&f, &Float::with_val(prec, 0u32), &Float::with_val(prec, 1u32), prec, &target)
            .unwrap();
        let err = Float::with_val(prec, &v - &Float::with_val(prec, 1u32) / 3u32).abs();
        assert!(err < Float::with_val(prec, 1e-35f64), "err={err}");
        // integral of 1/sqrt(x) over [0,1] = 2 (endpoint singularity)
        let g = |from_left: &Float, _: &Float| from_left.clone().sqrt().recip();
        let v = integrate_tanh_sinh(&g, &Float::with_val(prec, 0u32), &Float::with_val(prec, 1u32), prec, &target)
            .unwrap();
        let err = Float::with_val(prec, &v - 2u32).abs();
        assert!(err < Float::with_val(prec, 1e-30f64), "err={err}");
    }
}
