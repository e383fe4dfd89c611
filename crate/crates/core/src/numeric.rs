//! Small numeric helpers over big rationals.

use alloc::string::String;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ExactRational = BigRational;

/// Nearest `f64` to a big integer; saturates to infinity far out of range.
pub fn bigint_to_f64(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        let mag = x.magnitude().iter_u64_digits().next().unwrap_or(0) as f64;
        return if x.sign() == Sign::Minus { -mag } else { mag };
    }
    let shift = bits - 64;
    let top: BigUint = x.magnitude() >> shift;
    let mag = top.iter_u64_digits().next().unwrap_or(0) as f64;
    let v = libm::ldexp(mag, shift as i32);
    if x.sign() == Sign::Minus {
        -v
    } else {
        v
    }
}

/// `f64` approximation of a big rational, accurate to a few ulps even when
/// numerator and denominator overflow `f64` on their own.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer();
    let den = r.denom();
    let shift = num.bits() as i64 - den.bits() as i64 - 64;
    let q = if shift >= 0 {
        num / (den << shift as usize)
    } else {
        (num << (-shift) as usize) / den
    };
    let mantissa = bigint_to_f64(&q);
    libm::ldexp(mantissa, shift as i32)
}

pub fn rational_sqrt_f64(r: &BigRational) -> f64 {
    libm::sqrt(rational_to_f64(r))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn from_biguint(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        alloc::format!("{}", r.numer())
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().ok()?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let f: BigInt = frac.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut frac_part = BigRational::new(f, scale);
        if negative {
            frac_part = -frac_part;
        }
        return Some(BigRational::from_integer(w) + frac_part);
    }
    t.parse::<BigInt>().ok().map(BigRational::from_integer)
}

pub fn abs(r: &BigRational) -> BigRational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        assert_eq!(rational_to_f64(&ratio(1, 3)), 1.0 / 3.0);
        assert_eq!(rational_to_f64(&ratio(-7, 2)), -3.5);
        let big = BigRational::new(
            BigInt::from(1u8) << 400usize,
            (BigInt::from(1u8) << 399usize) * BigInt::from(3),
        );
        assert!((rational_to_f64(&big) - 2.0 / 3.0).abs() < 1e-15);
        let huge = BigInt::from(1u8) << 200usize;
        assert_eq!(bigint_to_f64(&huge), libm::ldexp(1.0, 200));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/6"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("0.25"), Some(ratio(1, 4)));
        assert_eq!(parse_rational("-1.5"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("-0.5"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("12"), Some(int(12)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(rational_string(&ratio(6, 4)), "3/2");
    }
}
