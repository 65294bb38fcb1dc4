//! Multiprecision plumbing around `rug` (MPFR/GMP).
//!
//! All numeric work in this crate runs at an explicit working precision in
//! bits (>= 64, default 256). Exact data (BigInt / BigRational / ExactPhase)
//! converts to floats only at the numeric boundary, through the helpers here.

use num_bigint::BigInt;
use num_rational::BigRational;
pub use rug::{Complex, Float};

/// Default working precision in bits.
pub const DEFAULT_PREC: u32 = 256;

/// Minimum supported working precision in bits.
pub const MIN_PREC: u32 = 64;

/// Clamp a requested precision to the supported minimum.
pub fn validate_prec(prec: u32) -> u32 {
    prec.max(MIN_PREC)
}

pub fn big_to_rug(n: &BigInt) -> rug::Integer {
    // via the decimal string; conversions happen at boundaries only
    rug::Integer::from_str_radix(&n.to_string(), 10).expect("valid integer literal")
}

pub fn bigint_to_float(n: &BigInt, prec: u32) -> Float {
    Float::with_val(prec, big_to_rug(n))
}

pub fn rational_to_float(r: &BigRational, prec: u32) -> Float {
    bigint_to_float(r.numer(), prec) / bigint_to_float(r.denom(), prec)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, rug::float::Constant::Pi)
}

pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, rug::float::Constant::Euler)
}

/// |z| as a real float.
pub fn cabs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// |a - b| as a real float (at the max of the operands' precisions).
pub fn cdist(a: &Complex, b: &Complex) -> Float {
    let prec = a.prec().0.max(b.prec().0);
    Complex::with_val(prec, a - b).abs().real().clone()
}

/// 2^-(prec - margin): the target tail size for truncated evaluations.
pub fn tail_target(prec: u32, margin: u32) -> Float {
    Float::with_val(prec, Float::u_exp(1, -((prec - margin.min(prec - 1)) as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn rational_conversion_round_trips() {
        let r = BigRational::new(BigInt::from(-355), BigInt::from(113));
        let f = rational_to_float(&r, 128);
        let back = Float::with_val(128, &f * 113u32);
        assert_eq!(back.to_f64(), -355.0);
    }

    #[test]
    fn tail_target_scales() {
        let t = tail_target(256, 8);
        assert!(t < Float::with_val(64, 1e-70f64));
        assert!(t > Float::with_val(64, 0));
    }

    #[test]
    fn validate_prec_floors() {
        assert_eq!(validate_prec(16), MIN_PREC);
        assert_eq!(validate_prec(512), 512);
        let _ = BigRational::one();
    }
}
