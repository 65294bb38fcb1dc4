//! Exact modular arithmetic: Dedekind sums, the eta-multiplier phases
//! omega_{h,k}, Legendre symbols, the gcd invariant lambda_{t,a,b,h,k}, the
//! indicator function behind the distribution constants, and Kloosterman
//! sums with their closed-form evaluation.
//!
//! Phases are exact rationals r representing e^{2 pi i r}; products of many
//! omegas therefore compare exactly, and rendering to complex happens only
//! at the numeric boundary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::{Complex, Float};

use crate::prec::rational_to_float;

/// A unimodular complex number e^{2 pi i r} with r an exact rational in [0,1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPhase {
    r: BigRational,
}

impl ExactPhase {
    pub fn one() -> Self {
        ExactPhase {
            r: BigRational::zero(),
        }
    }

    /// e^{2 pi i r}, r reduced into [0,1).
    pub fn from_turns(r: BigRational) -> Self {
        ExactPhase { r: reduce_mod_one(r) }
    }

    /// e^{pi i x} (half-turn units).
    pub fn from_half_turns(x: BigRational) -> Self {
        Self::from_turns(x / BigInt::from(2))
    }

    /// e^{2 pi i num/den}.
    pub fn root_of_unity(num: i64, den: u64) -> Self {
        assert!(den > 0);
        Self::from_turns(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The rational number of turns in [0,1).
    pub fn turns(&self) -> &BigRational {
        &self.r
    }

    pub fn mul(&self, other: &ExactPhase) -> ExactPhase {
        Self::from_turns(&self.r + &other.r)
    }

    pub fn inv(&self) -> ExactPhase {
        Self::from_turns(-self.r.clone())
    }

    pub fn pow(&self, e: i64) -> ExactPhase {
        Self::from_turns(&self.r * BigInt::from(e))
    }

    pub fn is_one(&self) -> bool {
        self.r.is_zero()
    }

    /// Render at `prec` bits.
    pub fn to_complex(&self, prec: u32) -> Complex {
        let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
        let angle = two_pi * rational_to_float(&self.r, prec);
        let (sin, cos) = angle.sin_cos(Float::new(prec));
        Complex::with_val(prec, (cos, sin))
    }
}

fn reduce_mod_one(r: BigRational) -> BigRational {
    let floor = r.floor();
    r - floor
}

/// The sawtooth ((x)): x - floor(x) - 1/2 off the integers, 0 at integers.
pub fn sawtooth(x: &BigRational) -> BigRational {
    if x.denom().is_one() {
        return BigRational::zero();
    }
    x - x.floor() - BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Dedekind sum s(h,k) = sum_{mu mod k} ((mu/k))((h mu/k)).
///
/// Evaluated over the common denominator 4k^2 in machine integers; k is
/// small everywhere in this crate (k <= a few hundred).
pub fn dedekind_sum(h: i64, k: u64) -> BigRational {
    assert!(k >= 1);
    let k = k as i128;
    let h = (h as i128).rem_euclid(k);
    let mut num: i128 = 0;
    for mu in 1..k {
        let rho = (h * mu) % k;
        if rho == 0 {
            continue;
        }
        num += (2 * mu - k) * (2 * rho - k);
    }
    BigRational::new(BigInt::from(num), BigInt::from(4 * k * k))
}

/// omega_{h,k} = e^{pi i s(h,k)}; non-coprime arguments reduce by the gcd
/// (the paper's omega_{m,n} := omega_{m/gcd, n/gcd} convention).
pub fn omega(h: i64, k: u64) -> ExactPhase {
    assert!(k >= 1);
    let hr = h.rem_euclid(k as i64) as u64;
    // h = 0 mod k has gcd k, reducing to omega_{0,1} = 1
    let g = hr.gcd(&k);
    ExactPhase::from_half_turns(dedekind_sum((hr / g) as i64, k / g))
}

/// Deterministic Miller-Rabin, valid for all n < 2^64.
pub fn miller_rabin_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of a modulo m, if it exists. `mod_inverse(_, 1) = Some(0)`.
pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let a = a.rem_euclid(m as i64) as u64;
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// Errors from the modular-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModularError {
    NotAnOddPrime(u64),
    /// The indicator requires b coprime to t (Eq. defining c_t handles b | t
    /// in its own branch).
    IndicatorNeedsCoprime { b: u64, t: u64 },
    BadArguments(String),
}

impl std::fmt::Display for ModularError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModularError::NotAnOddPrime(b) => write!(f, "{b} is not an odd prime"),
            ModularError::IndicatorNeedsCoprime { b, t } => {
                write!(f, "indicator requires b coprime to t, got b={b}, t={t}")
            }
            ModularError::BadArguments(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for ModularError {}

fn ensure_odd_prime(b: u64) -> Result<(), ModularError> {
    if b < 3 || b % 2 == 0 || !miller_rabin_is_prime(b) {
        return Err(ModularError::NotAnOddPrime(b));
    }
    Ok(())
}

/// Legendre symbol (m/p) for an odd prime p, via the Euler criterion.
pub fn legendre(m: i64, p: u64) -> i32 {
    debug_assert!(p % 2 == 1 && miller_rabin_is_prime(p));
    let m = m.rem_euclid(p as i64) as u64;
    if m == 0 {
        return 0;
    }
    if pow_mod(m, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// epsilon_d: 1 if d = 1 mod 4, i if d = 3 mod 4 (as an exact phase).
pub fn epsilon(d: u64) -> Result<ExactPhase, ModularError> {
    if d % 2 == 0 {
        return Err(ModularError::BadArguments(format!("epsilon_d needs odd d, got {d}")));
    }
    Ok(match d % 4 {
        1 => ExactPhase::one(),
        _ => ExactPhase::root_of_unity(1, 4),
    })
}

/// lambda_{t,a,b,h,k} by the three-case formula, cross-checked on every call
/// against gcd(kb, hbt + ak).
///
/// # Panics
/// Panics if the two routes disagree (they are proved equal; a mismatch
/// means corrupted inputs).
pub fn lambda_invariant(t: u64, a: u64, b: u64, h: u64, k: u64) -> Result<u64, ModularError> {
    ensure_odd_prime(b)?;
    if k == 0 || t == 0 {
        return Err(ModularError::BadArguments("need k >= 1 and t >= 1".into()));
    }
    if !(k == 1 && h == 0) && h.gcd(&k) != 1 {
        return Err(ModularError::BadArguments(format!(
            "need gcd(h,k)=1 or (h,k)=(0,1), got h={h}, k={k}"
        )));
    }
    let g = k.gcd(&t);
    let k1 = k / g;
    let case = if k == 1 || k1 % b != 0 {
        g
    } else {
        // b | k/gcd(k,t): test ht/gcd + a k/(b gcd) mod b
        let v = (h % b) * ((t / g) % b) + (a % b) * ((k / (b * g)) % b);
        if v % b != 0 {
            g * b
        } else {
            g * b * b
        }
    };
    let direct = (k as u128 * b as u128).gcd(&(h as u128 * b as u128 * t as u128 + a as u128 * k as u128));
    assert_eq!(
        case as u128, direct,
        "lambda case formula disagrees with gcd(kb, hbt+ak) at t={t} a={a} b={b} h={h} k={k}"
    );
    Ok(case)
}

/// The b-integral residue of (1-t^2)(1-b^2)/24 modulo b.
fn quadratic_offset_mod(b: u64, t: u64) -> Result<u64, ModularError> {
    use num_traits::ToPrimitive;
    let num = BigInt::from(1 - (t as i128) * (t as i128)) * BigInt::from(1 - (b as i128) * (b as i128));
    let q = BigRational::new(num, BigInt::from(24));
    let den_mod = (q.denom() % BigInt::from(b)).to_i64().unwrap();
    if den_mod == 0 {
        return Err(ModularError::IndicatorNeedsCoprime { b, t });
    }
    let den_inv = mod_inverse(den_mod, b).ok_or(ModularError::IndicatorNeedsCoprime { b, t })?;
    let num_mod = (q.numer() % BigInt::from(b)).to_i64().unwrap().rem_euclid(b as i64) as u64;
    Ok(mul_mod(num_mod, den_inv, b))
}

/// Modified indicator: b-1 when (1-t^2)(1-b^2)/24 + at - n = 0 mod b,
/// -1 otherwise. Requires b an odd prime not dividing t.
pub fn indicator(a: u64, b: u64, t: u64, n: i64) -> Result<i64, ModularError> {
    ensure_odd_prime(b)?;
    if t % b == 0 {
        return Err(ModularError::IndicatorNeedsCoprime { b, t });
    }
    let c = quadratic_offset_mod(b, t)?;
    let total = (c as i64 + (a as i64) * (t as i64) - n).rem_euclid(b as i64);
    Ok(if total == 0 { b as i64 - 1 } else { -1 })
}

/// Parameters of the Kloosterman sum K(a,b,t;n).
#[derive(Clone, Copy, Debug)]
pub struct KloostermanParams {
    pub a: i64,
    pub b: u64,
    pub t: u64,
    pub n: i64,
}

impl KloostermanParams {
    pub fn new(a: i64, b: u64, t: u64, n: i64) -> Result<Self, ModularError> {
        ensure_odd_prime(b)?;
        if t < 2 {
            return Err(ModularError::BadArguments(format!("need t > 1, got {t}")));
        }
        Ok(KloostermanParams { a, b, t, n })
    }
}

/// K(a,b,t;n) = sum_{h=1}^{b-1} (omega_{h,b} / omega_{th,b}^t) zeta_b^{(at-n)h},
/// each term an exact phase, summed at `prec` bits.
pub fn kloosterman_direct(p: KloostermanParams, prec: u32) -> Complex {
    let KloostermanParams { a, b, t, n } = p;
    let mut sum = Complex::new(prec);
    for h in 1..b {
        sum += kloosterman_term(a, b, t, n, h).to_complex(prec);
    }
    sum
}

/// The exact phase of the h-th Kloosterman term.
pub fn kloosterman_term(a: i64, b: u64, t: u64, n: i64, h: u64) -> ExactPhase {
    let om_h = omega(h as i64, b);
    let om_th = omega((t as i64 % b as i64) * h as i64, b);
    let exponent = ((a * t as i64 - n) * h as i64).rem_euclid(b as i64);
    om_h.mul(&om_th.pow(-(t as i64)))
        .mul(&ExactPhase::root_of_unity(exponent, b))
}

/// Closed-form value of K(a,b,t;n): an exact integer scale, an exact phase,
/// and an optional symbolic sqrt(b) carried until rendering.
#[derive(Clone, Debug)]
pub struct KloostermanClosed {
    pub scale: BigInt,
    pub phase: ExactPhase,
    pub sqrt_of: Option<u64>,
}

impl KloostermanClosed {
    pub fn to_complex(&self, prec: u32) -> Complex {
        let mut v = self.phase.to_complex(prec);
        v *= crate::prec::bigint_to_float(&self.scale, prec);
        if let Some(b) = self.sqrt_of {
            v *= Float::with_val(prec, b).sqrt();
        }
        v
    }

    /// |K|^2 as an exact integer (phase is unimodular).
    pub fn abs_squared(&self) -> BigInt {
        let s2 = &self.scale * &self.scale;
        match self.sqrt_of {
            Some(b) => s2 * BigInt::from(b),
            None => s2,
        }
    }
}

/// Evaluate K(a,b,t;n) in closed form. Requires gcd(t,b) = 1.
///
/// t odd:  I(a,b,t,n) (-1)^{(1-t)(b-1)/4} (t/b)
/// t even: (-1)^{(1-t)(b-1)/4} eps_b (((1-t^2)(1-b^2)/24 + at - n)/b) sqrt(b)
pub fn kloosterman_closed(p: KloostermanParams) -> Result<KloostermanClosed, ModularError> {
    let KloostermanParams { a, b, t, n } = p;
    if t % b == 0 {
        return Err(ModularError::IndicatorNeedsCoprime { b, t });
    }
    // (-1)^{(1-t)(b-1)/4} = e^{pi i (1-t)(b-1)/4}; the exponent is an integer
    // for odd t and a half-integer for even t.
    let sign_phase = ExactPhase::from_half_turns(BigRational::new(
        BigInt::from((1 - t as i128) * (b as i128 - 1)),
        BigInt::from(4),
    ));
    if t % 2 == 1 {
        let ind = indicator(a.rem_euclid(b as i64) as u64, b, t, n)?;
        let leg = legendre(t as i64, b);
        Ok(KloostermanClosed {
            scale: BigInt::from(ind * leg as i64),
            phase: sign_phase,
            sqrt_of: None,
        })
    } else {
        let c = quadratic_offset_mod(b, t)?;
        let arg = (c as i64 + a * t as i64 - n).rem_euclid(b as i64);
        let leg = legendre(arg, b);
        let eps = epsilon(b)?;
        Ok(KloostermanClosed {
            scale: BigInt::from(leg),
            phase: sign_phase.mul(&eps),
            sqrt_of: Some(b),
        })
    }
}

/// The eta-multiplier route to omega_{h,b} from the proof of the Dedekind
/// simplification: omega_{h,b} = (h/b) e^{pi i ((alpha + h - beta h b)(1-b^2)/(12b) + (b-1)/4)}
/// for any Bezout pair alpha h - beta b = 1.
pub fn omega_via_eta_multiplier(h: u64, b: u64, bezout_shift: i64) -> Result<ExactPhase, ModularError> {
    ensure_odd_prime(b)?;
    if h % b == 0 || h.gcd(&b) != 1 {
        return Err(ModularError::BadArguments(format!("need gcd(h,b)=1, got h={h}, b={b}")));
    }
    // minimal non-negative alpha with alpha h = 1 mod b, then shift the pair
    let alpha0 = mod_inverse(h as i64, b)
        .expect("h invertible mod b") as i64;
    let alpha = alpha0 + bezout_shift * b as i64;
    let beta = (alpha as i128 * h as i128 - 1) / b as i128;
    debug_assert_eq!(alpha as i128 * h as i128 - beta * b as i128, 1);
    let leg = legendre(h as i64, b);
    let leg_phase = if leg == 1 {
        ExactPhase::one()
    } else {
        ExactPhase::from_half_turns(BigRational::one())
    };
    let core = BigRational::new(
        BigInt::from((alpha as i128 + h as i128 - beta * (h as i128) * (b as i128)) * (1 - (b as i128) * (b as i128))),
        BigInt::from(12 * b as i128),
    ) + BigRational::new(BigInt::from(b as i128 - 1), BigInt::from(4));
    Ok(leg_phase.mul(&ExactPhase::from_half_turns(core)))
}

/// One case of the Dedekind-simplification identity check.
#[derive(Clone, Debug)]
pub struct DedekindSimplificationCase {
    pub h: u64,
    pub lhs: ExactPhase,
    pub rhs: ExactPhase,
    pub matched: bool,
    /// The eta-multiplier omega agreed with the Dedekind-sum omega for the
    /// minimal Bezout pair and 3 shifted ones.
    pub bezout_independent: bool,
}

/// Verify omega_{h,b}/omega_{th,b}^t =
/// (h/b)(th/b)^t e^{pi i (1-t)(b-1)/4} e^{2 pi i (1-t^2)(1-b^2) h / (24 b)}
/// as exact phases for each h in `hset` (defaults to all of 1..b when empty).
pub fn dedekind_simplification_check(
    b: u64,
    t: u64,
    hset: &[u64],
) -> Result<Vec<DedekindSimplificationCase>, ModularError> {
    ensure_odd_prime(b)?;
    if t % b == 0 {
        return Err(ModularError::IndicatorNeedsCoprime { b, t });
    }
    let hs: Vec<u64> = if hset.is_empty() {
        (1..b).collect()
    } else {
        hset.to_vec()
    };
    let mut out = Vec::with_capacity(hs.len());
    for &h in &hs {
        if h.gcd(&b) != 1 {
            return Err(ModularError::BadArguments(format!("h={h} not coprime to b={b}")));
        }
        let lhs = omega(h as i64, b).mul(&omega((t as i64 % b as i64) * h as i64, b).pow(-(t as i64)));
        let leg_h = legendre(h as i64, b);
        let leg_th = legendre((t as i64) * (h as i64), b);
        let mut sign = BigRational::zero();
        if leg_h == -1 {
            sign += BigRational::one();
        }
        if leg_th == -1 && t % 2 == 1 {
            sign += BigRational::one();
        }
        let rhs = ExactPhase::from_half_turns(
            sign + BigRational::new(
                BigInt::from((1 - t as i128) * (b as i128 - 1)),
                BigInt::from(4),
            ),
        )
        .mul(&ExactPhase::from_turns(BigRational::new(
            BigInt::from((1 - (t as i128) * (t as i128)) * (1 - (b as i128) * (b as i128)) * h as i128),
            BigInt::from(24 * b as i128),
        )));
        let om = omega(h as i64, b);
        let bezout_independent = (0..4).all(|s| {
            omega_via_eta_multiplier(h, b, s).map(|v| v == om).unwrap_or(false)
        });
        let matched = lhs == rhs;
        out.push(DedekindSimplificationCase {
            h,
            lhs,
            rhs,
            matched,
            bezout_independent,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sawtooth_values() {
        assert_eq!(sawtooth(&rat(1, 3)), rat(-1, 6));
        assert_eq!(sawtooth(&rat(7, 1)), rat(0, 1));
        assert_eq!(sawtooth(&rat(-5, 7)), -sawtooth(&rat(5, 7)));
    }

    #[test]
    fn dedekind_sum_values() {
        assert_eq!(dedekind_sum(0, 1), rat(0, 1));
        assert_eq!(dedekind_sum(1, 3), rat(1, 18));
        // depends only on h mod k
        assert_eq!(dedekind_sum(5 + 12, 12), dedekind_sum(5, 12));
        assert_eq!(dedekind_sum(-1, 7), -dedekind_sum(1, 7));
    }

    #[test]
    fn dedekind_denominator_divides_6k() {
        for k in 1..=50u64 {
            for h in 0..k {
                if h.gcd(&k) != 1 && !(h == 0 && k == 1) {
                    continue;
                }
                let s = dedekind_sum(h as i64, k);
                let six_k = BigInt::from(6 * k);
                assert!(
                    (BigRational::from_integer(six_k) * &s).denom().is_one(),
                    "6k * s(h,k) not integral at h={h} k={k}"
                );
            }
        }
    }

    #[test]
    fn omega_reduces_by_gcd() {
        assert_eq!(omega(2, 6), omega(1, 3));
        assert_eq!(omega(0, 1), ExactPhase::one());
        assert_eq!(omega(1, 3).turns(), &rat(1, 36)); // e^{pi i/18}
    }

    #[test]
    fn omega_is_unimodular_numerically() {
        let w = omega(7, 31).to_complex(128);
        let n = crate::prec::cabs(&w);
        let err = (n - Float::with_val(128, 1)).abs();
        assert!(err < Float::with_val(128, 1e-30f64));
    }

    #[test]
    fn legendre_and_epsilon() {
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(0, 5), 0);
        assert_eq!(legendre(3, 7), -1);
        // brute force over squares mod 11
        for m in 1..11i64 {
            let is_sq = (1..11).any(|x| (x * x) % 11 == m);
            assert_eq!(legendre(m, 11), if is_sq { 1 } else { -1 });
        }
        assert_eq!(epsilon(5).unwrap(), ExactPhase::one());
        assert_eq!(epsilon(3).unwrap(), ExactPhase::root_of_unity(1, 4));
        assert!(epsilon(4).is_err());
    }

    #[test]
    fn primality() {
        assert!(miller_rabin_is_prime(2));
        assert!(miller_rabin_is_prime(3));
        assert!(!miller_rabin_is_prime(1));
        assert!(!miller_rabin_is_prime(561)); // Carmichael
        assert!(miller_rabin_is_prime(2_147_483_647));
        assert!(!miller_rabin_is_prime(2_147_483_649));
    }

    #[test]
    fn lambda_cases() {
        assert_eq!(lambda_invariant(5, 2, 3, 0, 1).unwrap(), 1);
        // (t,a,b,h,k) = (2,0,3,1,3): b | k/gcd = 3, ht + a k/(b gcd) = 2 != 0 mod 3
        assert_eq!(lambda_invariant(2, 0, 3, 1, 3).unwrap(), 3);
        // k = b, gcd(k,t)=1, h t + a = 0 mod b gives b^2
        assert_eq!(lambda_invariant(2, 1, 3, 1, 3).unwrap(), 9);
        assert!(lambda_invariant(2, 0, 3, 2, 4).is_err()); // gcd(h,k) != 1
    }

    #[test]
    fn lambda_exhaustive_grid() {
        for b in [3u64, 5, 7] {
            for t in 1..=10u64 {
                for k in 1..=40u64 {
                    for h in 0..k.max(1) {
                        if !(k == 1 && h == 0) && h.gcd(&k) != 1 {
                            continue;
                        }
                        for a in 0..b {
                            // the call itself asserts agreement with the gcd
                            lambda_invariant(t, a, b, h, k).unwrap();
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn indicator_examples() {
        // (a,b,t) = (0,3,2): offset (1-4)(1-9)/24 = 1, hit at n = 1+0 mod 3...
        // offset + at - n = 0 mod 3 at n = 1
        assert_eq!(indicator(0, 3, 2, 1).unwrap(), 2);
        assert_eq!(indicator(0, 3, 2, 0).unwrap(), -1);
        // one hit per period
        for (a, b, t) in [(0u64, 3u64, 2u64), (1, 5, 3), (2, 7, 4)] {
            let s: i64 = (0..b as i64).map(|n| indicator(a, b, t, n).unwrap()).sum();
            assert_eq!(s, 0);
        }
        assert!(indicator(0, 3, 6, 0).is_err()); // b | t
        assert!(indicator(0, 9, 2, 0).is_err()); // not a prime
    }

    #[test]
    fn kloosterman_direct_vs_closed_small() {
        let prec = 256;
        let tol = Float::with_val(prec, 1e-25f64);
        for b in [3u64, 5, 7] {
            for t in 2..=6u64 {
                if t % b == 0 {
                    continue;
                }
                for a in 0..b as i64 {
                    for n in 0..b as i64 {
                        let p = KloostermanParams::new(a, b, t, n).unwrap();
                        let d = kloosterman_direct(p, prec);
                        let c = kloosterman_closed(p).unwrap().to_complex(prec);
                        let err = crate::prec::cdist(&d, &c);
                        assert!(
                            err < tol,
                            "K mismatch at a={a} b={b} t={t} n={n}: direct={d} closed={c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kloosterman_shift_periodicity() {
        for h in 1..7u64 {
            let t1 = kloosterman_term(2, 7, 3, 4, h);
            let t2 = kloosterman_term(2, 7, 3, 4 + 7, h);
            assert_eq!(t1, t2);
        }
    }

    #[test]
    fn dedekind_simplification_all_h() {
        for (b, t) in [(3u64, 2u64), (5, 3), (5, 2), (7, 4), (11, 5)] {
            let cases = dedekind_simplification_check(b, t, &[]).unwrap();
            for c in cases {
                assert!(c.matched, "phase identity fails at b={b} t={t} h={}", c.h);
                assert!(c.bezout_independent, "Bezout dependence at b={b} t={t} h={}", c.h);
            }
        }
    }

    #[test]
    fn mod_inverse_basics() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(-1, 7), Some(6));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(5, 1), Some(0));
    }
}
