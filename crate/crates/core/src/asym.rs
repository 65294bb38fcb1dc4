//! High-precision evaluation of the q-infinite products F_1, F_2, F_3 near
//! roots of unity, their leading asymptotics, and the supporting numeric
//! validations (eta transformation, digamma identity, Binet-type integral,
//! Euler-Maclaurin instance).
//!
//! Branch convention: principal logarithm everywhere; all fractional powers
//! are exp(p Log w). Products are truncated with the geometric tail bound
//! |Log(1-w)| <= 2|w| for |w| <= 1/2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rug::ops::CompleteRound;
use rug::{Complex, Float};

use crate::modular::{lambda_invariant, omega, ExactPhase, ModularError};
use crate::prec::{cabs, cdist, pi, rational_to_float, tail_target, validate_prec};
use crate::special::{
    bernoulli_number, digamma_em, hurwitz_zeta, integrate_tanh_sinh, lerch_phi_unit, SpecialError,
};

/// Which of the three infinite products to evaluate directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FProduct {
    /// prod (1 - xi q^n)
    F1,
    /// prod (1 - (xi q)^n)
    F2,
    /// prod (1 - xi^{n-1} q^n)
    F3,
}

#[derive(Debug)]
pub enum AsymError {
    /// |q| must be < 1 for the products, Re z > 0 for the asymptotics.
    Domain(String),
    Special(SpecialError),
    Modular(ModularError),
}

impl std::fmt::Display for AsymError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AsymError::Domain(m) => write!(f, "{m}"),
            AsymError::Special(e) => write!(f, "{e}"),
            AsymError::Modular(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AsymError {}

impl From<SpecialError> for AsymError {
    fn from(e: SpecialError) -> Self {
        AsymError::Special(e)
    }
}

impl From<ModularError> for AsymError {
    fn from(e: ModularError) -> Self {
        AsymError::Modular(e)
    }
}

/// A sample point z = r e^{i alpha} in the cone D_theta.
#[derive(Clone, Debug)]
pub struct ConeSample {
    pub theta: f64,
    pub r: f64,
    pub alpha: f64,
}

impl ConeSample {
    /// # Panics
    /// Panics unless 0 <= theta < pi/2 and |alpha| <= theta and r > 0.
    pub fn new(theta: f64, r: f64, alpha: f64) -> Self {
        assert!((0.0..std::f64::consts::FRAC_PI_2).contains(&theta));
        assert!(alpha.abs() <= theta + 1e-15);
        assert!(r > 0.0);
        ConeSample { theta, r, alpha }
    }

    pub fn z(&self, prec: u32) -> Complex {
        let r = Float::with_val(prec, self.r);
        let (sin, cos) = Float::with_val(prec, self.alpha).sin_cos(Float::new(prec));
        Complex::with_val(prec, (r.clone() * cos, r * sin))
    }
}

/// Principal-branch complex power w^p = exp(p Log w).
pub fn cpow(w: &Complex, p: &Float) -> Complex {
    let prec = w.prec().0;
    let ln = w.clone().ln();
    (ln * p).exp()
}

/// Number of factors needed so the dropped log-tail is under the target.
fn product_cutoff(qabs: &Float, prec: u32) -> Result<usize, AsymError> {
    if !(qabs.clone() < 1u32) {
        return Err(AsymError::Domain(format!("need |q| < 1, got |q| = {qabs}")));
    }
    let target = tail_target(prec, 8);
    // 2 |q|^{N+1} / (1 - |q|) < target, plus |q|^N <= 1/2 so the bound applies
    let ln_q = qabs.clone().ln(); // negative
    let ln_target = Float::with_val(prec, (target / 2u32) * (Float::with_val(prec, 1u32) - qabs)).ln();
    let n_tail = (ln_target / ln_q)
        .to_f64()
        .ceil()
        .max(2.0) as usize;
    let n_half = (Float::with_val(prec, 2u32).ln() / -qabs.clone().ln())
        .to_f64()
        .ceil()
        .max(1.0) as usize;
    Ok(n_tail.max(n_half) + 2)
}

/// Evaluate the chosen product at xi (an exact root of unity) and q, with
/// enough factors that the truncation error is below 2^{-prec+8} relative.
pub fn f_direct(which: FProduct, xi: &ExactPhase, q: &Complex, prec: u32) -> Result<Complex, AsymError> {
    let prec = validate_prec(prec);
    let b = xi.turns().denom().to_usize().ok_or_else(|| {
        AsymError::Domain("phase denominator too large".into())
    })?;
    let qabs = cabs(q);
    let n_factors = product_cutoff(&qabs, prec)?;
    let xi_pows: Vec<Complex> = (0..b).map(|j| xi.pow(j as i64).to_complex(prec)).collect();
    let one = Complex::with_val(prec, (1u32, 0u32));
    let mut prod = one.clone();
    match which {
        FProduct::F1 => {
            let mut qn = q.clone();
            for _ in 1..=n_factors {
                prod *= one.clone() - xi_pows[1 % b].clone() * qn.clone();
                qn *= q;
            }
        }
        FProduct::F2 => {
            let w = Complex::with_val(prec, &xi_pows[1 % b] * q);
            let mut wn = w.clone();
            for _ in 1..=n_factors {
                prod *= one.clone() - wn.clone();
                wn *= &w;
            }
        }
        FProduct::F3 => {
            let mut qn = q.clone();
            for n in 1..=n_factors {
                prod *= one.clone() - xi_pows[(n - 1) % b].clone() * qn.clone();
                qn *= q;
            }
        }
    }
    Ok(prod)
}

/// Leading asymptotic of F_1(xi; e^{-z}) as z -> 0 in the cone:
/// (1 - xi)^{-1/2} exp(-xi Phi(xi,2,1)/z). Requires xi a primitive b-th
/// root of unity with b > 1.
pub fn f1_asym(xi: &ExactPhase, z: &Complex, prec: u32) -> Result<Complex, AsymError> {
    let prec = validate_prec(prec);
    if xi.is_one() {
        return Err(AsymError::Domain(
            "xi = 1 is the eta case, excluded from the F_1 asymptotic".into(),
        ));
    }
    let two = Float::with_val(prec, 2u32);
    let phi = lerch_phi_unit(xi, &two, &Float::with_val(prec, 1u32), prec)?;
    let xi_c = xi.to_complex(prec);
    let one = Complex::with_val(prec, (1u32, 0u32));
    let pref = (one - xi_c.clone()).sqrt().recip();
    let expo = (-(xi_c * phi) / z).exp();
    Ok(pref * expo)
}

/// Leading asymptotic of F_3(xi; e^{-z}) as z -> 0 in the cone:
/// sqrt(2 pi) (b^2 z)^{1/2 - 1/b} Gamma(1/b)^{-1}
///   prod_{j=1}^{b-1} (1 - xi^j)^{-j/b} exp(-pi^2/(6 b^2 z)).
pub fn f3_asym(xi: &ExactPhase, z: &Complex, prec: u32) -> Result<Complex, AsymError> {
    let prec = validate_prec(prec);
    if xi.is_one() {
        return Err(AsymError::Domain(
            "xi = 1 is the eta case, excluded from the F_3 asymptotic".into(),
        ));
    }
    let b = xi.turns().denom().to_u32().ok_or_else(|| AsymError::Domain("b too large".into()))?;
    let bf = Float::with_val(prec, b);
    let two_pi = pi(prec) * 2u32;
    let mut value = Complex::with_val(prec, (two_pi.sqrt(), 0u32));
    // (b^2 z)^{1/2 - 1/b}
    let exponent = Float::with_val(prec, 0.5f64) - bf.clone().recip();
    let b2z = z.clone() * &bf * &bf;
    value *= cpow(&b2z, &exponent);
    value /= bf.clone().recip().gamma();
    let one = Complex::with_val(prec, (1u32, 0u32));
    for j in 1..b {
        let factor = one.clone() - xi.pow(j as i64).to_complex(prec);
        let p = -(Float::with_val(prec, j) / &bf);
        value *= cpow(&factor, &p);
    }
    // exp(-pi^2/(6 b^2 z))
    let expo_num = -pi(prec).square() / (6u32 * bf.clone() * bf);
    value *= (Complex::with_val(prec, (expo_num, Float::new(prec))) / z).exp();
    Ok(value)
}

/// Leading asymptotic of F_2(xi; q^t) at the cusp h/k, with
/// xi = e^{2 pi i a/b}, q = e^{2 pi i (h + iz)/k}:
/// omega_{(hbt+ak)/lambda, kb/lambda}^{-1} (lambda/(tbz))^{1/2}
///   exp(-pi lambda^2/(12 b^2 k t z)).
pub fn f2_asym(
    a: u64,
    b: u64,
    t: u64,
    h: u64,
    k: u64,
    z: &Complex,
    prec: u32,
) -> Result<Complex, AsymError> {
    let prec = validate_prec(prec);
    let lam = lambda_invariant(t, a, b, h, k)?;
    let om = omega(((h * b * t + a * k) / lam) as i64, k * b / lam);
    let mut value = om.inv().to_complex(prec);
    let lam_f = Float::with_val(prec, lam);
    let tb = Float::with_val(prec, t * b);
    let ratio = Complex::with_val(prec, (lam_f.clone(), Float::new(prec))) / (z.clone() * &tb);
    value *= ratio.sqrt();
    let coeff = -pi(prec) * &lam_f * &lam_f
        / Float::with_val(prec, 12 * b as u128 * b as u128 * k as u128 * t as u128);
    value *= (Complex::with_val(prec, (coeff, Float::new(prec))) / z).exp();
    Ok(value)
}

/// q = e^{2 pi i (h + i z)/k} at precision.
pub fn cusp_q(h: u64, k: u64, z: &Complex, prec: u32) -> Complex {
    let two_pi = pi(prec) * 2u32;
    let i = Complex::with_val(prec, (0u32, 1u32));
    let tau = (Complex::with_val(prec, (Float::with_val(prec, h), Float::new(prec))) + i * z)
        / Float::with_val(prec, k);
    (tau * Complex::with_val(prec, (Float::new(prec), two_pi))).exp()
}

/// Result of one numeric identity check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub label: String,
    pub abs_err: Float,
    pub rel_err: Float,
}

/// The classical eta transformation, exactly (not just asymptotically):
/// (q;q)_inf = omega_{h,k}^{-1} z^{-1/2} e^{(pi/12k)(z - 1/z)} (q1;q1)_inf
/// with q1 = e^{2 pi i (h' + i/z)/k}, h h' = -1 mod k.
pub fn eta_transform_check(h: u64, k: u64, z: &Complex, prec: u32) -> Result<CheckReport, AsymError> {
    let prec = validate_prec(prec);
    if z.real().partial_cmp(&0u32) != Some(std::cmp::Ordering::Greater) {
        return Err(AsymError::Domain("need Re z > 0".into()));
    }
    if k == 0 || (k > 1 && num_integer::gcd(h, k) != 1) || h >= k.max(1) {
        return Err(AsymError::Domain(format!("need 0 <= h < k, gcd(h,k)=1; got h={h}, k={k}")));
    }
    let one_phase = ExactPhase::one();
    let q = cusp_q(h, k, z, prec);
    let lhs = f_direct(FProduct::F1, &one_phase, &q, prec)?;

    let h_prime = match crate::modular::mod_inverse(h as i64, k) {
        Some(inv) => (k - inv % k) % k,
        None => 0, // k = 1
    };
    let z_inv = z.clone().recip();
    let q1 = cusp_q(h_prime, k, &z_inv, prec);
    let rhs_prod = f_direct(FProduct::F1, &one_phase, &q1, prec)?;
    let mut rhs = omega(h as i64, k).inv().to_complex(prec);
    rhs *= z.clone().sqrt().recip();
    let expo = (z.clone() - &z_inv) * pi(prec) / Float::with_val(prec, 12 * k);
    rhs *= expo.exp();
    rhs *= rhs_prod;

    let abs_err = cdist(&lhs, &rhs);
    let rel_err = abs_err.clone() / cabs(&lhs);
    Ok(CheckReport {
        label: format!("eta transform h={h} k={k} z={z}"),
        abs_err,
        rel_err,
    })
}

/// sum_{j=1}^{b} psi(j/b) xi^j = b Log(1 - xi) for each primitive b-th root;
/// returns the worst absolute error over the primitive roots.
pub fn digamma_identity_check(b: u32, prec: u32) -> Result<CheckReport, AsymError> {
    let prec = validate_prec(prec);
    if b < 2 {
        return Err(AsymError::Domain("need b >= 2".into()));
    }
    let psis: Vec<Float> = (1..=b)
        .map(|j| digamma_em(&(Float::with_val(prec, j) / b), prec))
        .collect::<Result<_, _>>()?;
    let mut worst = Float::new(prec);
    for r in 1..b {
        if num_integer::gcd(r, b) != 1 {
            continue;
        }
        let xi = ExactPhase::root_of_unity(r as i64, b as u64);
        let mut lhs = Complex::new(prec);
        for (j, psi) in psis.iter().enumerate() {
            lhs += xi.pow((j + 1) as i64).to_complex(prec) * psi;
        }
        let one = Complex::with_val(prec, (1u32, 0u32));
        let rhs = (one - xi.to_complex(prec)).ln() * Float::with_val(prec, b);
        let err = cdist(&lhs, &rhs);
        if err > worst {
            worst = err;
        }
    }
    Ok(CheckReport {
        label: format!("digamma identity b={b}"),
        rel_err: worst.clone(),
        abs_err: worst,
    })
}

/// Series coefficients of u(x) = e^{-x} (g(Nx) + (2-N)x/2) - 1 where
/// g(w) = w/(1 - e^{-w}); u is O(x^2) and gives the cancellation-free
/// evaluation of the Binet integrand near 0.
fn binet_series_coeffs(n_param: &Float, prec: u32, terms: usize) -> Vec<Float> {
    // g(w) = 1 + w/2 + sum_{k>=1} B_{2k} w^{2k}/(2k)!
    let mut g = vec![Float::new(prec); terms];
    g[0] = Float::with_val(prec, 1u32);
    if terms > 1 {
        g[1] = Float::with_val(prec, 0.5f64);
    }
    let mut fact = Float::with_val(prec, 2u32); // (2k)! running
    for k in 1.. {
        if 2 * k >= terms {
            break;
        }
        g[2 * k] = rational_to_float(&bernoulli_number(2 * k), prec) / &fact;
        fact *= (2 * k + 1) as u32;
        fact *= (2 * k + 2) as u32;
    }
    // g(Nx): scale by N^j, then add (2-N)x/2
    let mut npow = Float::with_val(prec, 1u32);
    for coeff in g.iter_mut() {
        *coeff *= &npow;
        npow *= n_param;
    }
    if terms > 1 {
        g[1] += (Float::with_val(prec, 2u32) - n_param) / 2u32;
    }
    // multiply by e^{-x} and subtract 1
    let mut exp_neg = vec![Float::new(prec); terms];
    exp_neg[0] = Float::with_val(prec, 1u32);
    for i in 1..terms {
        exp_neg[i] = (-(exp_neg[i - 1].clone()) / i as u32).complete(prec);
    }
    let mut u = vec![Float::new(prec); terms];
    for i in 0..terms {
        for j in 0..terms - i {
            u[i + j] += Float::with_val(prec, &exp_neg[i] * &g[j]);
        }
    }
    u[0] -= 1u32;
    u
}

/// Report of a Binet-type integral evaluation.
#[derive(Clone, Debug)]
pub struct BinetReport {
    pub n_param: Float,
    pub quadrature: Float,
    pub closed_form: Float,
    pub abs_err: Float,
}

/// Evaluate int_0^infty (e^{-x}/(x(1-e^{-Nx})) - 1/(Nx^2) + (1/N - 1/2) e^{-x}/x) dx
/// by tanh-sinh quadrature (series evaluation near 0) and compare against
/// log Gamma(1/N) + (1/2 - 1/N) log(1/N) - log(2 pi)/2.
pub fn binet_integral_check(n_param: &Float, prec: u32) -> Result<BinetReport, AsymError> {
    let prec = validate_prec(prec);
    if !(n_param.is_finite() && n_param.is_sign_positive() && !n_param.is_zero()) {
        return Err(AsymError::Domain("need N > 0".into()));
    }
    let work = prec + 64;
    let nf = Float::with_val(work, n_param);
    // series is safe while |N x| stays well inside the 2 pi radius
    let cutoff = Float::with_val(work, 1u32).min(&(Float::with_val(work, 2u32) / &nf).complete(work));
    let terms = (work as usize) / 2 + 32;
    let series = binet_series_coeffs(&nf, work, terms);
    // u starts at x^2, so u(x)/(N x^2) = (sum_{j>=2} u_j x^{j-2})/N by Horner;
    // the j < 2 coefficients are exactly the cancelled singular parts.
    let series_eval = |x: &Float| -> Float {
        let mut acc = Float::new(work);
        for c in series.iter().skip(2).rev() {
            acc = acc * x + c;
        }
        acc / nf.clone()
    };
    let direct_eval = |x: &Float| -> Float {
        let exp_x = (-x.clone()).exp();
        let one_minus = -Float::with_val(work, (-(nf.clone()) * x).exp_m1());
        let term1 = exp_x.clone() / (x.clone() * one_minus);
        let term2 = (nf.clone() * x * x).complete(work).recip();
        let term3 = (nf.clone().recip() - Float::with_val(work, 0.5f64)) * exp_x / x;
        term1 - term2 + term3
    };
    let f = |from_left: &Float, _from_right: &Float| -> Float {
        if from_left < &cutoff {
            series_eval(from_left)
        } else {
            direct_eval(from_left)
        }
    };
    let target = tail_target(work, work / 2);
    // integrate [0, cutoff] + geometric pieces out to where e^{-x} is dust
    let x_max = Float::with_val(work, (work as f64) * 0.8);
    let mut total = Float::new(work);
    let mut left = Float::new(work);
    for right in [cutoff.clone(), Float::with_val(work, 4u32), Float::with_val(work, 16u32), x_max.clone()] {
        if right <= left {
            continue;
        }
        total += integrate_tanh_sinh(&f, &left, &right, work, &target)?;
        left = right;
    }

    let closed = Float::with_val(work, nf.clone().recip().ln_gamma())
        + (Float::with_val(work, 0.5f64) - nf.clone().recip()) * nf.clone().recip().ln()
        - (pi(work) * 2u32).ln() / 2u32;
    let quadrature = Float::with_val(prec, total);
    let closed_form = Float::with_val(prec, closed);
    let abs_err = Float::with_val(prec, &quadrature - &closed_form).abs();
    Ok(BinetReport {
        n_param: Float::with_val(prec, n_param),
        quadrature,
        closed_form,
        abs_err,
    })
}

/// I*_{f,A} for f(w) = 1/(w(e^w - 1)): the integral
/// int_0^infty (f(u) - 1/u^2 + e^{-Au}/(2u)) du, by quadrature.
/// Closed form (via the Binet lemma at N=1 and Frullani): -ln(2 pi A)/2.
pub fn euler_maclaurin_i_star(a_factor: &Float, prec: u32) -> Result<Float, AsymError> {
    let prec = validate_prec(prec);
    let work = prec + 64;
    let af = Float::with_val(work, a_factor);
    // u -> 0: f - 1/u^2 + 1/(2u) is the N=1 Binet series part; the remaining
    // (e^{-Au} - 1)/(2u) is cancellation-free through expm1.
    let one = Float::with_val(work, 1u32);
    let series = binet_series_coeffs(&one, work, work as usize / 2 + 32);
    let cutoff = Float::with_val(work, 1u32);
    // The N=1 Binet series evaluates f(x) - 1/x^2 + e^{-x}/(2x); shifting the
    // regulator from e^{-x} to e^{-Ax} adds (e^{-Ax} - e^{-x})/(2x), which is
    // cancellation-free through expm1.
    let f = |x: &Float, _: &Float| -> Float {
        if x < &cutoff {
            let mut acc = Float::new(work);
            for c in series.iter().skip(2).rev() {
                acc = acc * x + c;
            }
            let em_a = Float::with_val(work, (-(af.clone()) * x).exp_m1());
            let em_1 = Float::with_val(work, (-x.clone()).exp_m1());
            acc + (em_a - em_1) / (2u32 * x.clone())
        } else {
            let em = Float::with_val(work, x.exp_m1_ref());
            let exp_ax = (-(af.clone()) * x).exp();
            (x.clone() * em).recip() - x.clone().square().recip() + exp_ax / (2u32 * x.clone())
        }
    };
    let target = tail_target(work, work / 2);
    let x_max = Float::with_val(work, (work as f64) * 0.8);
    let mut total = Float::new(work);
    let mut leftb = Float::new(work);
    for right in [cutoff.clone(), Float::with_val(work, 4u32), Float::with_val(work, 16u32), x_max] {
        if right <= leftb {
            continue;
        }
        total += integrate_tanh_sinh(&f, &leftb, &right, work, &target)?;
        leftb = right;
    }
    Ok(Float::with_val(prec, total))
}

/// One grid point of the Euler-Maclaurin instance check.
#[derive(Clone, Debug)]
pub struct EmPoint {
    pub z: Float,
    pub abs_err: Float,
}

/// Report of the Euler-Maclaurin check for f(w) = 1/(w(e^w-1)).
#[derive(Clone, Debug)]
pub struct EmReport {
    pub points: Vec<EmPoint>,
    /// log-log slope of the error against z (expected >= 0.8 when the
    /// expansion through z^0 is correct).
    pub slope: f64,
    /// errors shrink monotonically along the dyadic grid
    pub decreasing: bool,
}

/// Check sum_{n>=0} f((n+a)z) against
/// zeta(2,a)/z^2 + I*/z + (1/(2z))(Log(Az) + psi(a) + gamma) - B_2/2 B_1(a)
/// on a dyadic real z grid. `flip_log_sign` is the deliberate negative
/// control: it must destroy the O(z) error behavior.
pub fn euler_maclaurin_check(
    a: &BigRational,
    a_factor: &Float,
    zs: &[Float],
    prec: u32,
    flip_log_sign: bool,
) -> Result<EmReport, AsymError> {
    let prec = validate_prec(prec);
    let work = prec + 32;
    if a <= &BigRational::zero() || a > &BigRational::one() {
        return Err(AsymError::Domain("need 0 < a <= 1".into()));
    }
    let af = Float::with_val(work, a_factor);
    let a_float = rational_to_float(a, work);
    let zeta2a = hurwitz_zeta(&Float::with_val(work, 2u32), &a_float, work)?;
    let psi_a = digamma_em(&a_float, work)?;
    let gamma = crate::prec::euler_gamma(work);
    // I*_{f,A} = -ln(2 pi A)/2 (Binet at N=1 plus the Frullani shift)
    let i_star = -(pi(work) * 2u32 * &af).complete(work).ln() / 2u32;
    // c_0 B_1(a) with c_0 = B_2/2! = 1/12
    let b1a = rational_to_float(&crate::special::bernoulli_poly(1, a), work);
    let constant_term = b1a / 12u32;

    let mut points = Vec::with_capacity(zs.len());
    for z in zs {
        let zf = Float::with_val(work, z);
        if !(zf.is_sign_positive() && !zf.is_zero()) {
            return Err(AsymError::Domain("grid z must be positive reals".into()));
        }
        // LHS: sum f((n+a) z) to geometric convergence
        let mut lhs = Float::new(work);
        let stop = Float::with_val(work, (work as f64) * 0.8);
        let mut n = 0u64;
        loop {
            let w = (Float::with_val(work, n) + &a_float).complete(work) * &zf;
            let fw = (w.clone() * Float::with_val(work, w.exp_m1_ref())).recip();
            lhs += fw;
            if w > stop {
                break;
            }
            n += 1;
        }
        let log_az = (af.clone() * &zf).ln();
        let log_term = if flip_log_sign { -log_az } else { log_az };
        let rhs = zeta2a.clone() / zf.clone().square()
            + i_star.clone() / &zf
            + (log_term + &psi_a + &gamma) / (2u32 * zf.clone())
            - &constant_term;
        let abs_err = Float::with_val(prec, lhs - rhs).abs();
        points.push(EmPoint {
            z: Float::with_val(prec, &zf),
            abs_err,
        });
    }
    let slope = fit_loglog_slope(
        &points.iter().map(|p| p.z.to_f64()).collect::<Vec<_>>(),
        &points.iter().map(|p| p.abs_err.to_f64()).collect::<Vec<_>>(),
    );
    let decreasing = points
        .windows(2)
        .all(|w| w[0].z < w[1].z || w[0].abs_err >= w[1].abs_err);
    // grid is expected largest-to-smallest or smallest-to-largest; check
    // monotonicity along |z|
    let mut sorted = points.clone();
    sorted.sort_by(|p, q| p.z.partial_cmp(&q.z).unwrap());
    let decreasing = decreasing
        && sorted
            .windows(2)
            .all(|w| w[0].abs_err <= w[1].abs_err || w[1].abs_err.is_zero());
    Ok(EmReport {
        points,
        slope,
        decreasing,
    })
}

/// Least-squares slope of ln(err) against ln(x).
pub fn fit_loglog_slope(xs: &[f64], errs: &[f64]) -> f64 {
    let pairs: Vec<(f64, f64)> = xs
        .iter()
        .zip(errs)
        .filter(|(x, e)| **x > 0.0 && **e > 0.0)
        .map(|(x, e)| (x.ln(), e.ln()))
        .collect();
    let n = pairs.len() as f64;
    if pairs.len() < 2 {
        return f64::NAN;
    }
    let sx: f64 = pairs.iter().map(|p| p.0).sum();
    let sy: f64 = pairs.iter().map(|p| p.1).sum();
    let sxx: f64 = pairs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pairs.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// |F_direct / F_asym - 1| along a dyadic shrinking grid on one ray.
#[derive(Clone, Debug)]
pub struct RatioReport {
    pub alpha: f64,
    pub ratio_errs: Vec<f64>,
    pub slope: f64,
    pub decreasing: bool,
}

/// Run a ratio-convergence test: `direct` and `asym` evaluated at
/// z_j = r0 2^{-j} e^{i alpha}, j = 0..steps.
pub fn ratio_test<D, A>(
    direct: D,
    asym: A,
    alpha: f64,
    r0: f64,
    steps: usize,
    prec: u32,
) -> Result<RatioReport, AsymError>
where
    D: Fn(&Complex) -> Result<Complex, AsymError>,
    A: Fn(&Complex) -> Result<Complex, AsymError>,
{
    let mut rs = Vec::with_capacity(steps);
    let mut errs = Vec::with_capacity(steps);
    for j in 0..steps {
        let r = r0 / f64::powi(2.0, j as i32);
        let sample = ConeSample::new(std::f64::consts::FRAC_PI_4, r, alpha);
        let z = sample.z(prec);
        let d = direct(&z)?;
        let a = asym(&z)?;
        let ratio = Complex::with_val(prec, &d / &a);
        let err = cdist(&ratio, &Complex::with_val(prec, (1u32, 0u32)));
        rs.push(r);
        errs.push(err.to_f64());
    }
    let slope = fit_loglog_slope(&rs, &errs);
    let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
    Ok(RatioReport {
        alpha,
        ratio_errs: errs,
        slope,
        decreasing,
    })
}
