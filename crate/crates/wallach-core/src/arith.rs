//! Exact integer and rational arithmetic.
//!
//! Backed by `num-bigint`/`num-rational`; values are kept in canonical form
//! (positive denominator, reduced, zero is `0/1`) by the underlying types.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;

pub use num_bigint::{BigInt, Sign};
pub use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Field operation selector for [`rat_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    DivideByZero,
    Parse(String),
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::DivideByZero => write!(f, "division by zero"),
            ArithError::Parse(s) => write!(f, "cannot parse rational {s:?}"),
        }
    }
}

pub fn rat_arith(a: &BigRational, b: &BigRational, op: ArithOp) -> Result<BigRational, ArithError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            if b.is_zero() {
                return Err(ArithError::DivideByZero);
            }
            a / b
        }
    })
}

pub fn rat_cmp(a: &BigRational, b: &BigRational) -> Ordering {
    a.cmp(b)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `num/den` or `num`, with an optional leading minus on the numerator.
pub fn parse_rational(s: &str) -> Result<BigRational, ArithError> {
    let err = || ArithError::Parse(s.to_string());
    let digits = |t: &str, signed: bool| -> Result<BigInt, ArithError> {
        let body = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        if body.is_empty() || !body.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        t.parse::<BigInt>().map_err(|_| err())
    };
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(digits(s, true)?)),
        Some((n, d)) => {
            let n = digits(n, true)?;
            let d = digits(d, false)?;
            if d.is_zero() {
                return Err(ArithError::DivideByZero);
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Canonical text form; the denominator is omitted when it is 1.
pub fn format_rational(r: &BigRational) -> String {
    r.to_string()
}

/// Nearest `f64` (infinite for out-of-range magnitudes).
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite float")
}

/// Dyadic `m / 2^bits` with `m = floor(r * 2^bits)`, so the error lies in `[0, 2^-bits)`.
pub fn dyadic_floor(r: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let m = (r.numer() * &scale).div_floor(r.denom());
    BigRational::new(m, scale)
}

/// Dyadic approximation with `|r - a| <= 2^-bits`, rounded to nearest.
pub fn dyadic_round(r: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << (bits + 1);
    let twice = (r.numer() * &scale).div_floor(r.denom());
    let m = (twice + BigInt::one()) >> 1u32;
    BigRational::new(m, BigInt::one() << bits)
}

pub fn bit_length(n: &BigInt) -> u64 {
    n.bits()
}

/// Formats with `sig` significant digits in plain decimal notation.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return alloc::format!("{x}");
    }
    let mag = libm::floor(libm::log10(libm::fabs(x))) as i32;
    let decimals = sig as i32 - 1 - mag;
    if decimals >= 0 {
        let s = alloc::format!("{:.*}", decimals as usize, x);
        // rounding can carry into a new digit (9.9999 -> 10.000)
        let digits = s.bytes().filter(|c| c.is_ascii_digit()).count();
        let lead_zeros = s
            .trim_start_matches('-')
            .bytes()
            .take_while(|&c| c == b'0' || c == b'.')
            .filter(|&c| c == b'0')
            .count();
        if digits - lead_zeros > sig && decimals > 0 {
            return alloc::format!("{:.*}", decimals as usize - 1, x);
        }
        s
    } else {
        alloc::format!("{:.*e}", sig - 1, x)
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn abs(r: &BigRational) -> BigRational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn arith_examples() {
        assert_eq!(rat_arith(&rat(35, 4), &rat(7, 4), ArithOp::Add).unwrap(), rat(21, 2));
        assert_eq!(rat_arith(&rat(7, 2), &rat(2, 7), ArithOp::Mul).unwrap(), int(1));
        let z = rat_arith(&rat(1, 3), &rat(1, 3), ArithOp::Sub).unwrap();
        assert_eq!(format_rational(&z), "0");
        assert_eq!(z.denom(), &BigInt::one());
        assert_eq!(
            rat_arith(&int(1), &int(0), ArithOp::Div),
            Err(ArithError::DivideByZero)
        );
    }

    #[test]
    fn ordering() {
        assert_eq!(rat_cmp(&rat(3, 5), &rat(19, 5)), Ordering::Less);
        assert_eq!(rat_cmp(&rat(7, 23), &rat(7, 23)), Ordering::Equal);
        assert_eq!(rat_cmp(&rat(-1, 2), &int(0)), Ordering::Less);
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "7", "-7", "64/5", "-12345678901234567890123456789/2"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn dyadic() {
        let r = rat(1, 3);
        for bits in [1u32, 10, 64, 200] {
            let a = dyadic_floor(&r, bits);
            let err = &r - &a;
            assert!(!err.is_negative());
            assert!(err < BigRational::new(BigInt::one(), BigInt::one() << bits));
            let b = dyadic_round(&r, bits);
            assert!((&r - &b).abs() <= BigRational::new(BigInt::one(), BigInt::one() << bits));
        }
        assert_eq!(dyadic_floor(&rat(-1, 3), 2), rat(-2, 4));
    }

    #[test]
    fn significant_digits() {
        let cases: Vec<(f64, &str)> = alloc::vec![
            (0.6711159524, "0.6711159524"),
            (2.835338531, "2.835338531"),
            (0.09898950458, "0.09898950458"),
            (1.0, "1.000000000"),
            (9.99999999999, "10.00000000"),
            (-0.25, "-0.2500000000"),
        ];
        for (x, s) in cases {
            assert_eq!(fmt_sig(x, 10), s);
        }
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64(&rat(7, 23)), 7.0 / 23.0);
        assert_eq!(from_f64(0.5), rat(1, 2));
    }
}
