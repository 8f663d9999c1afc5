//! Small helpers around `num::BigRational`, which carries all exact
//! arithmetic in the crate.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> BigRational {
    BigRational::zero()
}

pub fn one() -> BigRational {
    BigRational::one()
}

/// `base^exp` as an exact rational (exp may be negative).
pub fn pow(base: &BigRational, exp: i64) -> BigRational {
    let p = num::pow::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-f64-range exact values: fall back to a log-scaled quotient.
        let num = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let den = r.denom().to_f64().unwrap_or(f64::INFINITY);
        num / den
    })
}

/// Parses "p/q" or a plain integer or a decimal such as "0.6".
pub fn parse(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let whole_part: BigInt = if whole.is_empty() {
            BigInt::zero()
        } else {
            whole
                .parse()
                .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?
        };
        let digits: BigInt = frac
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let scale = num::pow::pow(BigInt::from(10), frac.len());
        let negative = s.starts_with('-');
        let frac_part = BigRational::new(digits, scale);
        let whole_part = BigRational::from_integer(whole_part);
        return Ok(if negative {
            whole_part - frac_part
        } else {
            whole_part + frac_part
        });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
    Ok(BigRational::from_integer(n))
}

pub fn in_unit_interval(r: &BigRational) -> bool {
    !r.is_negative() && *r <= one()
}

/// True when the denominator (of the reduced fraction) is a power of two.
pub fn is_dyadic(r: &BigRational) -> bool {
    let d = r.denom();
    if d.is_zero() {
        return false;
    }
    let bits = d.bits();
    d == &(BigInt::one() << (bits - 1))
}

/// What the digits of an expansion do past the recorded prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// Terminating expansion: all further digits are 0.
    Zeros,
    /// The dual of a terminating expansion: all further digits are b-1.
    Maxed,
    /// The expansion continues with digits not determined here.
    Unknown,
}

/// A base-b digit expansion of a rational in [0, 1], truncated at a
/// fixed depth. b-adic rationals have two expansions (0.1000... =
/// 0.0222... in base 3); both are produced so membership tests can
/// favor whichever qualifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitExpansion {
    pub digits: Vec<u32>,
    pub tail: Tail,
}

impl DigitExpansion {
    /// The one or two expansions of `x` in base `base`, each truncated
    /// to `depth` digits (padded with the constant tail digit where the
    /// tail is known).
    pub fn of(x: &BigRational, base: u32, depth: usize) -> Vec<DigitExpansion> {
        assert!(base >= 2);
        assert!(in_unit_interval(x), "digit expansion needs x in [0, 1]");
        if x.is_one() {
            return vec![DigitExpansion {
                digits: vec![base - 1; depth],
                tail: Tail::Maxed,
            }];
        }
        let b = int(base as i64);
        let mut digits = Vec::with_capacity(depth);
        let mut r = x.clone();
        let mut tail = Tail::Unknown;
        for _ in 0..depth {
            if r.is_zero() {
                tail = Tail::Zeros;
                break;
            }
            let t = &r * &b;
            let d = t.floor();
            digits.push(d.to_integer().to_u32().expect("digit fits in u32"));
            r = t - d;
        }
        if r.is_zero() {
            tail = Tail::Zeros;
        }
        let mut out = Vec::with_capacity(2);
        if tail == Tail::Zeros && !x.is_zero() {
            // Dual expansion: decrement the final nonzero digit, then
            // run the tail at b-1.
            let j = digits
                .iter()
                .rposition(|&d| d > 0)
                .expect("nonzero x has a nonzero digit");
            let mut dual = digits[..=j].to_vec();
            dual[j] -= 1;
            dual.resize(depth, base - 1);
            out.push(DigitExpansion {
                digits: dual,
                tail: Tail::Maxed,
            });
        }
        if tail == Tail::Zeros {
            digits.resize(depth, 0);
        }
        out.push(DigitExpansion { digits, tail });
        out
    }
}
