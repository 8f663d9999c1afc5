//! The Cantor function M(x) (devil's staircase): forward evaluation by
//! the ternary-to-binary digit algorithm, inverse plateau lookup, the
//! generation-n staircase polyline, and the bar-mass view of the same
//! measure.

use crate::cantor::{CantorSpec, Interval};
use crate::error::{Error, Result};
use crate::rat;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

/// Result of evaluating M(x) to a given digit depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorValue {
    /// Dyadic value; exact when `exact`, otherwise a lower bound with
    /// M(x) within `2^-depth` above it.
    pub value: BigRational,
    pub exact: bool,
    pub depth: usize,
}

impl CantorValue {
    /// Width of the enclosure: zero when exact, 2^-depth otherwise.
    pub fn error_bound(&self) -> BigRational {
        if self.exact {
            rat::zero()
        } else {
            rat::pow(&rat::ratio(1, 2), self.depth as i64)
        }
    }
}

/// M(x) by the digit algorithm: write x in ternary, replace 2 by 1 up
/// to the first 1, keep that 1, zero everything after it, and read the
/// result as binary. Exact whenever a first ternary 1 appears within
/// `depth` digits or the expansion terminates; otherwise truncated and
/// flagged, with M(x) within 2^-depth of the returned value.
pub fn evaluate(x: &BigRational, depth: usize) -> Result<CantorValue> {
    if !rat::in_unit_interval(x) {
        return Err(Error::OutOfUnitInterval(x.to_string()));
    }
    if depth == 0 {
        return Err(Error::OutOfRange("depth must be >= 1".into()));
    }
    if x.is_one() {
        return Ok(CantorValue {
            value: rat::one(),
            exact: true,
            depth,
        });
    }
    // Plain integer digit extraction: the remainder keeps x's
    // denominator, the result accumulates as a shifted dyadic
    // numerator. One rational reduction at the end.
    let den = x.denom().clone();
    let mut num = x.numer().clone();
    let mut acc = num::BigInt::from(0u32);
    let mut shift = 0usize;
    for _ in 0..depth {
        if num.is_zero() {
            return Ok(CantorValue {
                value: dyadic(acc, shift),
                exact: true,
                depth,
            });
        }
        num *= 3;
        let digit = &num / &den; // in 0..=2 since 0 <= num/den < 1 held
        num -= &digit * &den;
        acc <<= 1;
        shift += 1;
        match digit.to_u8() {
            Some(0) => {}
            Some(1) => {
                // Inside (or on the boundary of) a plateau: M is the
                // accumulated prefix plus this bit, exactly.
                return Ok(CantorValue {
                    value: dyadic(acc + 1u32, shift),
                    exact: true,
                    depth,
                });
            }
            Some(2) => acc += 1u32,
            _ => unreachable!("ternary digit"),
        }
    }
    let exact = num.is_zero();
    Ok(CantorValue {
        value: dyadic(acc, shift),
        exact,
        depth,
    })
}

fn dyadic(num: num::BigInt, shift: usize) -> BigRational {
    BigRational::new(num, num::BigInt::from(1u32) << shift)
}

/// The closed plateau on which M equals the dyadic m = k/2^n (k odd):
/// width 3^-n. The binary digits of m map back to ternary: every 1
/// except the last becomes 2, and the last 1 marks the removed
/// interval whose closure is the plateau.
pub fn plateau_of(m: &BigRational) -> Result<Interval> {
    if m.is_zero() || m.is_one() {
        return Err(Error::NoPlateau(format!("M = {m} has no plateau")));
    }
    if !rat::in_unit_interval(m) {
        return Err(Error::OutOfUnitInterval(m.to_string()));
    }
    if !rat::is_dyadic(m) {
        return Err(Error::NotDyadic);
    }
    let n = (m.denom().bits() - 1) as i64; // denominator = 2^n, n >= 1
    let mut acc = rat::zero();
    let mut scale = rat::ratio(1, 3);
    let mut r = m.clone();
    for _ in 0..n - 1 {
        let t = &r * rat::int(2);
        let d = t.floor();
        r = t - &d;
        if d.is_one() {
            acc += rat::int(2) * &scale;
        }
        scale /= rat::int(3);
    }
    // The remaining digit is the final 1 of the odd numerator.
    let lo = acc + &scale;
    let hi = &lo + &scale;
    Interval::new(lo, hi)
}

/// Monotone polyline of the generation-n staircase: plateaus over the
/// removed gaps joined by straight chords over the surviving segments.
#[derive(Debug, Clone)]
pub struct Staircase {
    /// Vertices from (0,0) to (1,1), exact rationals.
    pub points: Vec<(BigRational, BigRational)>,
    /// Euclidean length of the polyline.
    pub length: f64,
    pub plateau_count: usize,
    pub riser_count: usize,
}

pub fn staircase_polyline(n: usize) -> Result<Staircase> {
    if n == 0 {
        return Err(Error::OutOfRange("staircase needs n >= 1".into()));
    }
    let set = CantorSpec::triadic().generate(n)?;
    let mass = rat::pow(&rat::ratio(1, 2), n as i64);
    let mut points = Vec::with_capacity(2 * set.len());
    let mut level = rat::zero();
    for iv in set.intervals() {
        points.push((iv.lo().clone(), level.clone()));
        level += &mass;
        points.push((iv.hi().clone(), level.clone()));
    }
    let mut length = 0.0;
    for pair in points.windows(2) {
        let dx = rat::to_f64(&(&pair[1].0 - &pair[0].0));
        let dy = rat::to_f64(&(&pair[1].1 - &pair[0].1));
        length += dx.hypot(dy);
    }
    Ok(Staircase {
        length,
        plateau_count: set.len() - 1,
        riser_count: set.len(),
        points,
    })
}

/// One bar of the generation-n mass distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarSegment {
    pub interval: Interval,
    pub mass: BigRational,
    pub density: BigRational,
}

/// The generation-n bar distribution: 2^n bars of length 3^-n carrying
/// mass 2^-n each (density (3/2)^n), total mass exactly 1.
pub fn bar_distribution(n: usize) -> Result<Vec<BarSegment>> {
    let set = CantorSpec::triadic().generate(n)?;
    let mass = rat::pow(&rat::ratio(1, 2), n as i64);
    let density = rat::pow(&rat::ratio(3, 2), n as i64);
    Ok(set
        .intervals()
        .iter()
        .map(|iv| BarSegment {
            interval: iv.clone(),
            mass: mass.clone(),
            density: density.clone(),
        })
        .collect())
}

/// The Lipschitz-Hölder exponent of the triadic bar measure,
/// ln 2 / ln 3.
pub fn holder_exponent() -> f64 {
    2f64.ln() / 3f64.ln()
}

/// Checks mu_n = l_n^alpha in logarithms using the integer powers 2^n
/// and 3^n: ln(2^-n)/ln(3^-n) must equal ln 2 / ln 3.
pub fn holder_identity_holds(n: u32) -> bool {
    let mu = num::BigInt::from(2u32).pow(n);
    let len = num::BigInt::from(3u32).pow(n);
    let lhs = mu.to_f64().unwrap().ln() / len.to_f64().unwrap().ln();
    (lhs - holder_exponent()).abs() < 1e-12
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, ratio};
    use crate::rng::SplitMix64;
    use proptest::prelude::*;

    fn eval(n: i64, d: i64) -> CantorValue {
        evaluate(&ratio(n, d), 64).unwrap()
    }

    #[test]
    fn endpoint_values() {
        assert_eq!(eval(0, 1).value, int(0));
        assert!(eval(0, 1).exact);
        assert_eq!(eval(1, 1).value, int(1));
    }

    #[test]
    fn plateau_values_exact() {
        assert_eq!(eval(1, 2).value, ratio(1, 2));
        assert!(eval(1, 2).exact);
        assert_eq!(eval(1, 9).value, ratio(1, 4));
        assert_eq!(eval(2, 9).value, ratio(1, 4));
        assert_eq!(eval(1, 3).value, ratio(1, 2));
        assert_eq!(eval(2, 3).value, ratio(1, 2));
    }

    #[test]
    fn quarter_truncates_toward_one_third() {
        // 1/4 = 0.020202...(3) has no ternary 1: the dyadic prefix
        // converges to M(1/4) = 1/3 from below.
        for depth in [4usize, 10, 20] {
            let v = evaluate(&ratio(1, 4), depth).unwrap();
            assert!(!v.exact);
            let err = rat::to_f64(&(ratio(1, 3) - &v.value));
            assert!(err > 0.0);
            assert!(err <= 0.5f64.powi(depth as i32));
            assert_eq!(v.error_bound(), rat::pow(&ratio(1, 2), depth as i64));
        }
    }

    #[test]
    fn devil_staircase_consistency_with_bar_mass() {
        // M(x) equals the bar mass to the left of x, within one bar mass.
        let mut rng = SplitMix64::new(11);
        let n = 10;
        let bars = bar_distribution(n).unwrap();
        let bar_mass = rat::pow(&ratio(1, 2), n as i64);
        for _ in 0..200 {
            let x = ratio((rng.next_u64() % 10_000) as i64, 10_000);
            let m = evaluate(&x, 64).unwrap().value;
            let left_mass: BigRational = bars
                .iter()
                .filter(|b| b.interval.hi() <= &x)
                .map(|b| b.mass.clone())
                .fold(rat::zero(), |a, b| a + b);
            let diff = rat::to_f64(&(&m - &left_mass)).abs();
            assert!(
                diff <= rat::to_f64(&bar_mass) + 1e-15,
                "x = {x}: M = {m}, left mass = {left_mass}"
            );
        }
    }

    #[test]
    fn plateau_table() {
        let cases = [
            ((1, 4), (1, 9), (2, 9)),
            ((1, 2), (1, 3), (2, 3)),
            ((3, 4), (7, 9), (8, 9)),
            ((5, 8), (19, 27), (20, 27)),
        ];
        for ((mn, md), lo, hi) in cases {
            let p = plateau_of(&ratio(mn, md)).unwrap();
            assert_eq!(p.lo(), &ratio(lo.0, lo.1));
            assert_eq!(p.hi(), &ratio(hi.0, hi.1));
            // evaluate at both endpoints returns m.
            for x in [p.lo(), p.hi()] {
                let v = evaluate(x, 64).unwrap();
                assert!(v.exact);
                assert_eq!(v.value, ratio(mn, md));
            }
        }
        assert!(plateau_of(&int(0)).is_err());
        assert!(plateau_of(&int(1)).is_err());
        assert!(matches!(plateau_of(&ratio(1, 3)), Err(Error::NotDyadic)));
    }

    #[test]
    fn staircase_first_generation_length() {
        let s = staircase_polyline(1).unwrap();
        assert_eq!(s.plateau_count, 1);
        assert_eq!(s.riser_count, 2);
        let expect = 1.0 / 3.0 + 2.0 * (1.0f64 / 9.0 + 1.0 / 4.0).sqrt();
        assert!((s.length - expect).abs() < 1e-14);
    }

    #[test]
    fn staircase_length_increases_toward_two() {
        let mut prev = 0.0;
        for n in 1..=20 {
            let s = staircase_polyline(n).unwrap();
            assert!(s.length > prev);
            assert!(s.length < 2.0);
            prev = s.length;
        }
        assert!((2.0 - prev) < 1e-3);
    }

    #[test]
    fn bar_distribution_masses() {
        let bars = bar_distribution(1).unwrap();
        assert_eq!(bars.len(), 2);
        assert_eq!(bars[0].mass, ratio(1, 2));
        assert_eq!(bars[0].density, ratio(3, 2));
        let twelve = bar_distribution(12).unwrap();
        let total: BigRational = twelve.iter().map(|b| b.mass.clone()).sum();
        assert_eq!(total, int(1));
        let zero = bar_distribution(0).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].mass, int(1));
        assert_eq!(zero[0].density, int(1));
    }

    #[test]
    fn holder_identity() {
        assert!((holder_exponent() - 0.63093).abs() < 1e-5);
        for n in [1, 5, 20] {
            assert!(holder_identity_holds(n));
        }
    }

    #[test]
    fn self_affinity_on_terminating_inputs() {
        // M(x/3) = M(x)/2, exact on terminating ternary inputs.
        for k in 0..=81 {
            let x = ratio(k, 81);
            let lhs = evaluate(&(&x / int(3)), 64).unwrap().value;
            let rhs = evaluate(&x, 64).unwrap().value / int(2);
            assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #[test]
        fn monotone_and_symmetric(a in 0u32..=4096, b in 0u32..=4096) {
            let x = ratio(a.min(b) as i64, 4096);
            let y = ratio(a.max(b) as i64, 4096);
            let mx = evaluate(&x, 64).unwrap().value;
            let my = evaluate(&y, 64).unwrap().value;
            prop_assert!(mx <= my);
            // Symmetry M(1-x) = 1 - M(x).
            let mirrored = evaluate(&(int(1) - &x), 64).unwrap().value;
            prop_assert_eq!(mirrored, int(1) - mx);
        }
    }
}
