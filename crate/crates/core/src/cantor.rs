//! Exact construction and measurement of the 1D Cantor-type sets:
//! the triadic middle-thirds set, the middle-(1/b) family, digit-keeping
//! sets in an arbitrary base, the two-scale generalization, and the fat
//! (positive-measure) variant with shrinking removals.
//!
//! Every endpoint is an exact `BigRational`; the identities these sets
//! satisfy (total length `(2/3)^n`, removed length summing to one, ...)
//! hold exactly, not approximately.

use crate::error::{Error, Result};
use crate::rat;
use num::rational::BigRational;
use num::Signed;
use std::collections::BTreeSet;
use std::fmt;

/// Hard cap on materialized intervals per generation.
pub const MAX_INTERVALS: usize = 1 << 22;
/// Generation cap for base-b digit constructions (denominator b^n).
pub const MAX_GENERATION: usize = 64;
/// The fat variant's endpoint denominators grow like 3^(2^n); past this
/// generation materializing intervals stops being practical.
pub const FAT_MAX_GENERATION: usize = 12;
/// Exact closed-form fat length is still a single rational; it stays
/// affordable a little longer than full interval generation.
pub const FAT_MAX_EXACT_LENGTH: usize = 20;

/// Closed interval with exact rational endpoints inside [0, 1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidSpec(format!("interval lo {lo} > hi {hi}")));
        }
        if !rat::in_unit_interval(&lo) || !rat::in_unit_interval(&hi) {
            return Err(Error::OutOfUnitInterval(format!("[{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn length(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Finite union of disjoint closed intervals, sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    /// Validates ordering and strict pairwise disjointness.
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        for pair in intervals.windows(2) {
            if pair[0].hi >= pair[1].lo {
                return Err(Error::InvalidSpec(format!(
                    "intervals {} and {} overlap or touch out of order",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(Self { intervals })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total_length(&self) -> BigRational {
        self.intervals
            .iter()
            .fold(rat::zero(), |acc, iv| acc + iv.length())
    }

    pub fn contains_point(&self, x: &BigRational) -> bool {
        // Binary search on the sorted left endpoints.
        let idx = self.intervals.partition_point(|iv| iv.lo <= *x);
        idx > 0 && self.intervals[idx - 1].contains(x)
    }

    /// Largest gap between consecutive intervals; gaps outside the span
    /// of the set do not count. A single interval has gap 0.
    pub fn largest_gap(&self) -> Result<BigRational> {
        if self.intervals.is_empty() {
            return Err(Error::EmptyInput("largest_gap of empty set".into()));
        }
        let mut best = rat::zero();
        for pair in self.intervals.windows(2) {
            let gap = &pair[1].lo - &pair[0].hi;
            if gap > best {
                best = gap;
            }
        }
        Ok(best)
    }

    /// Intersection with the closed interval [lo, hi].
    pub fn clip(&self, lo: &BigRational, hi: &BigRational) -> IntervalSet {
        let mut out = Vec::new();
        for iv in &self.intervals {
            let a = iv.lo.clone().max(lo.clone());
            let b = iv.hi.clone().min(hi.clone());
            if a <= b {
                out.push(Interval { lo: a, hi: b });
            }
        }
        IntervalSet { intervals: out }
    }

    /// CSV with header `lo_num,lo_den,hi_num,hi_den`, one row per interval.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("lo_num,lo_den,hi_num,hi_den\n");
        for iv in &self.intervals {
            s.push_str(&format!(
                "{},{},{},{}\n",
                iv.lo.numer(),
                iv.lo.denom(),
                iv.hi.numer(),
                iv.hi.denom()
            ));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<IntervalSet> {
        let mut intervals = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with("lo_num")) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!("interval CSV row {i}: {line:?}")));
            }
            let nums: Vec<num::BigInt> = fields
                .iter()
                .map(|f| {
                    f.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad integer {f:?}")))
                })
                .collect::<Result<_>>()?;
            intervals.push(Interval::new(
                BigRational::new(nums[0].clone(), nums[1].clone()),
                BigRational::new(nums[2].clone(), nums[3].clone()),
            )?);
        }
        IntervalSet::new(intervals)
    }
}

/// Which 1D Cantor construction to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CantorVariant {
    /// Keep the numbers whose base-`base` digits all lie in `keep`.
    /// Generation n is |keep|^n equal cells of width base^-n.
    KeepDigits { base: u32, keep: BTreeSet<u32> },
    /// Split each segment into `base` (odd) equal parts and drop the
    /// central one; generation n is 2^n segments.
    MiddleRemove { base: u32 },
    /// Two contractions of ratios l1 (left-anchored) and l2
    /// (right-anchored) per segment.
    TwoScale { l1: BigRational, l2: BigRational },
    /// Triadic start, then remove a centered piece of relative length
    /// 3^-(2^k) at step k. Positive-measure limit.
    Fat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorSpec {
    variant: CantorVariant,
}

/// Membership verdict for depth-limited digit tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    /// Decided for the limit set (a digit expansion with a known
    /// constant tail qualifies).
    In,
    /// All inspected digits qualify but the expansion continues past
    /// the inspected depth; the point lies in the generation-`depth`
    /// pre-fractal.
    InAtDepth,
    Out,
}

impl Membership {
    pub fn is_in(self) -> bool {
        matches!(self, Membership::In | Membership::InAtDepth)
    }
}

impl CantorSpec {
    /// The classical middle-thirds set: KeepDigits(3, {0, 2}).
    pub fn triadic() -> Self {
        Self {
            variant: CantorVariant::KeepDigits {
                base: 3,
                keep: [0, 2].into_iter().collect(),
            },
        }
    }

    pub fn keep_digits(base: u32, keep: impl IntoIterator<Item = u32>) -> Result<Self> {
        let keep: BTreeSet<u32> = keep.into_iter().collect();
        if base < 2 {
            return Err(Error::InvalidSpec(format!("base {base} < 2")));
        }
        if keep.iter().any(|&d| d >= base) {
            return Err(Error::InvalidSpec(format!("digit >= base {base}")));
        }
        if keep.len() < 2 || keep.len() as u32 >= base {
            return Err(Error::InvalidSpec(format!(
                "need 2 <= |kept digits| < base, got {} of {base}",
                keep.len()
            )));
        }
        Ok(Self {
            variant: CantorVariant::KeepDigits { base, keep },
        })
    }

    pub fn middle_remove(base: u32) -> Result<Self> {
        if base < 3 || base % 2 == 0 {
            return Err(Error::InvalidSpec(format!(
                "middle removal needs an odd base >= 3, got {base}"
            )));
        }
        Ok(Self {
            variant: CantorVariant::MiddleRemove { base },
        })
    }

    pub fn two_scale(l1: BigRational, l2: BigRational) -> Result<Self> {
        if !l1.is_positive() || !l2.is_positive() || &l1 + &l2 >= rat::one() {
            return Err(Error::InvalidSpec(
                "two-scale ratios need l1, l2 > 0 and l1 + l2 < 1".into(),
            ));
        }
        Ok(Self {
            variant: CantorVariant::TwoScale { l1, l2 },
        })
    }

    pub fn fat() -> Self {
        Self {
            variant: CantorVariant::Fat,
        }
    }

    pub fn variant(&self) -> &CantorVariant {
        &self.variant
    }

    fn interval_count(&self, n: usize) -> Option<usize> {
        let per_step: usize = match &self.variant {
            CantorVariant::KeepDigits { keep, .. } => keep.len(),
            _ => 2,
        };
        per_step.checked_pow(n as u32)
    }

    fn check_capacity(&self, n: usize) -> Result<()> {
        let limit = match self.variant {
            CantorVariant::Fat => FAT_MAX_GENERATION,
            _ => MAX_GENERATION,
        };
        if n > limit {
            return Err(Error::GenerationOverflow {
                generation: n,
                limit,
            });
        }
        match self.interval_count(n) {
            Some(c) if c <= MAX_INTERVALS => Ok(()),
            _ => Err(Error::GenerationOverflow {
                generation: n,
                limit,
            }),
        }
    }

    /// The generation-n pre-fractal.
    ///
    /// Endpoints are tracked as integer numerators over one common
    /// denominator per generation and reduced once at the end, which
    /// keeps deep generations (2^20 intervals) affordable.
    pub fn generate(&self, n: usize) -> Result<IntervalSet> {
        self.check_capacity(n)?;
        type Big = num::BigInt;
        let big = |v: i64| Big::from(v);
        // (lo numerator, width numerator), all over `den`.
        let mut segs: Vec<(Big, Big)> = vec![(big(0), big(1))];
        let mut den = big(1);
        for step in 0..n {
            let mut next = Vec::with_capacity(segs.len() * 2);
            match &self.variant {
                CantorVariant::KeepDigits { base, keep } => {
                    let b = big(*base as i64);
                    for (lo, w) in &segs {
                        for &d in keep {
                            next.push((lo * &b + w * big(d as i64), w.clone()));
                        }
                    }
                    den *= &b;
                }
                CantorVariant::MiddleRemove { base } => {
                    let b = big(*base as i64);
                    let h = big(((*base - 1) / 2) as i64);
                    for (lo, w) in &segs {
                        let w2 = w * &h;
                        next.push((lo * &b, w2.clone()));
                        next.push(((lo + w) * &b - &w2, w2));
                    }
                    den *= &b;
                }
                CantorVariant::TwoScale { l1, l2 } => {
                    let (p1, q1) = (l1.numer().clone(), l1.denom().clone());
                    let (p2, q2) = (l2.numer().clone(), l2.denom().clone());
                    let m = &q1 * &q2;
                    for (lo, w) in &segs {
                        let w1 = w * &p1 * &q2;
                        let w2 = w * &p2 * &q1;
                        next.push((lo * &m, w1));
                        next.push(((lo + w) * &m - &w2, w2));
                    }
                    den *= &m;
                }
                CantorVariant::Fat => {
                    // Step k removes a centered piece of relative
                    // length 3^-(2^k); each child keeps (1 - r)/2.
                    let p = num::pow::pow(big(3), 1usize << step);
                    let m = big(2) * &p;
                    for (lo, w) in &segs {
                        let w2 = w * (&p - 1u32);
                        next.push((lo * &m, w2.clone()));
                        next.push(((lo + w) * &m - &w2, w2));
                    }
                    den *= &m;
                }
            }
            segs = next;
        }
        let intervals = segs
            .into_iter()
            .map(|(lo, w)| Interval {
                lo: BigRational::new(lo.clone(), den.clone()),
                hi: BigRational::new(lo + w, den.clone()),
            })
            .collect();
        IntervalSet::new(intervals)
    }

    /// Exact surviving length at generation n without materializing
    /// intervals: the product of per-step survival factors. Agrees with
    /// `generate(n).total_length()` (tested) and scales to generations
    /// where interval lists do not.
    pub fn survival_length(&self, n: usize) -> Result<BigRational> {
        match &self.variant {
            CantorVariant::KeepDigits { base, keep } => Ok(rat::pow(
                &rat::ratio(keep.len() as i64, *base as i64),
                n as i64,
            )),
            CantorVariant::MiddleRemove { base } => Ok(rat::pow(
                &rat::ratio(*base as i64 - 1, *base as i64),
                n as i64,
            )),
            CantorVariant::TwoScale { l1, l2 } => Ok(rat::pow(&(l1 + l2), n as i64)),
            CantorVariant::Fat => {
                if n > FAT_MAX_EXACT_LENGTH {
                    return Err(Error::GenerationOverflow {
                        generation: n,
                        limit: FAT_MAX_EXACT_LENGTH,
                    });
                }
                // Integer product form: prod (3^(2^k) - 1) over 3^(2^n - 1).
                // Every numerator factor is 2 mod 3 and the denominator
                // is a power of 3, so the parts are already coprime;
                // new_raw skips a multi-second gcd on ~10^5-digit ints.
                let three = num::BigInt::from(3u32);
                let mut numer = num::BigInt::from(1u32);
                let mut denom = num::BigInt::from(1u32);
                for k in 0..n {
                    let p = num::pow::pow(three.clone(), 1usize << k);
                    numer *= &p - 1;
                    denom *= p;
                }
                Ok(BigRational::new_raw(numer, denom))
            }
        }
    }

    /// Surviving length in floating point, usable for any generation.
    pub fn survival_length_f64(&self, n: usize) -> f64 {
        match &self.variant {
            CantorVariant::KeepDigits { base, keep } => {
                (keep.len() as f64 / *base as f64).powi(n as i32)
            }
            CantorVariant::MiddleRemove { base } => {
                ((*base as f64 - 1.0) / *base as f64).powi(n as i32)
            }
            CantorVariant::TwoScale { l1, l2 } => {
                (rat::to_f64(l1) + rat::to_f64(l2)).powi(n as i32)
            }
            CantorVariant::Fat => {
                let mut acc = 1.0;
                for k in 0..n.min(64) {
                    acc *= 1.0 - 3f64.powf(-((1u64 << k.min(63)) as f64));
                }
                acc
            }
        }
    }

    /// Exact removed length `1 - survival_length(n)`.
    pub fn removed_length(&self, n: usize) -> Result<BigRational> {
        Ok(rat::one() - self.survival_length(n)?)
    }

    /// ln N / ln(1/r) at the generation-cell scale 1/base: N kept cells
    /// of width 1/base. For the middle-removal variant the kept part of
    /// the generator is base-1 of the base cells.
    pub fn similarity_dimension(&self) -> Result<f64> {
        match &self.variant {
            CantorVariant::KeepDigits { base, keep } => {
                Ok((keep.len() as f64).ln() / (*base as f64).ln())
            }
            CantorVariant::MiddleRemove { base } => {
                Ok((*base as f64 - 1.0).ln() / (*base as f64).ln())
            }
            CantorVariant::TwoScale { .. } => Err(Error::UnsupportedVariant(
                "two-scale pieces are unequal; use the multifractal support dimension".into(),
            )),
            CantorVariant::Fat => Err(Error::UnsupportedVariant(
                "fat variant has no single similarity ratio".into(),
            )),
        }
    }

    /// Digit-based membership test (KeepDigits variants only). Dual
    /// expansions of b-adic rationals are both tried, so endpoints —
    /// which the constructions never remove — always test as in.
    pub fn contains(&self, x: &BigRational, depth: usize) -> Result<Membership> {
        let CantorVariant::KeepDigits { base, keep } = &self.variant else {
            return Err(Error::UnsupportedVariant(
                "digit membership needs a digit-keeping variant".into(),
            ));
        };
        if !rat::in_unit_interval(x) {
            return Err(Error::OutOfUnitInterval(x.to_string()));
        }
        let mut best = Membership::Out;
        for exp in rat::DigitExpansion::of(x, *base, depth) {
            if !exp.digits.iter().all(|d| keep.contains(d)) {
                continue;
            }
            let exact = match exp.tail {
                rat::Tail::Zeros => keep.contains(&0),
                rat::Tail::Maxed => keep.contains(&(base - 1)),
                rat::Tail::Unknown => false,
            };
            if exact {
                return Ok(Membership::In);
            }
            best = Membership::InAtDepth;
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, ratio};
    use proptest::prelude::*;

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(ratio(a.0, a.1), ratio(b.0, b.1)).unwrap()
    }

    #[test]
    fn triadic_first_generations_match_known_sets() {
        let spec = CantorSpec::triadic();
        let c1 = spec.generate(1).unwrap();
        assert_eq!(c1.intervals(), &[iv((0, 1), (1, 3)), iv((2, 3), (1, 1))]);
        let c2 = spec.generate(2).unwrap();
        assert_eq!(
            c2.intervals(),
            &[
                iv((0, 1), (1, 9)),
                iv((2, 9), (1, 3)),
                iv((2, 3), (7, 9)),
                iv((8, 9), (1, 1)),
            ]
        );
    }

    #[test]
    fn generation_zero_is_unit_segment() {
        for spec in [
            CantorSpec::triadic(),
            CantorSpec::middle_remove(5).unwrap(),
            CantorSpec::fat(),
        ] {
            let s = spec.generate(0).unwrap();
            assert_eq!(s.intervals(), &[iv((0, 1), (1, 1))]);
            assert_eq!(s.total_length(), int(1));
        }
    }

    #[test]
    fn middle_fifth_first_generation() {
        let spec = CantorSpec::middle_remove(5).unwrap();
        let s = spec.generate(1).unwrap();
        assert_eq!(s.intervals(), &[iv((0, 1), (2, 5)), iv((3, 5), (1, 1))]);
    }

    #[test]
    fn triadic_total_length_exact() {
        let spec = CantorSpec::triadic();
        for n in 0..=12 {
            let direct = spec.generate(n).unwrap().total_length();
            assert_eq!(direct, rat::pow(&ratio(2, 3), n as i64));
            assert_eq!(direct, spec.survival_length(n).unwrap());
        }
    }

    #[test]
    fn fat_length_matches_product_formula() {
        let spec = CantorSpec::fat();
        // Generation 2: (2/3) * (8/9) = 16/27.
        let s = spec.generate(2).unwrap();
        assert_eq!(s.total_length(), ratio(16, 27));
        for n in 0..=9 {
            assert_eq!(
                spec.generate(n).unwrap().total_length(),
                spec.survival_length(n).unwrap()
            );
        }
    }

    #[test]
    fn fat_limit_value() {
        let spec = CantorSpec::fat();
        assert!((spec.survival_length_f64(30) - 0.585187).abs() < 1e-5);
    }

    #[test]
    fn removed_length_approaches_one() {
        let triadic = CantorSpec::triadic();
        let middle5 = CantorSpec::middle_remove(5).unwrap();
        assert_eq!(triadic.removed_length(0).unwrap(), int(0));
        let mut prev_t = rat::zero();
        let mut prev_m = rat::zero();
        for n in 1..=40 {
            let t = triadic.removed_length(n).unwrap();
            let m = middle5.removed_length(n).unwrap();
            assert!(t > prev_t && m > prev_m, "removed length must increase");
            prev_t = t;
            prev_m = m;
        }
        assert!(rat::to_f64(&(rat::one() - prev_t)) < 1e-7);
        assert!(rat::to_f64(&(rat::one() - prev_m)) < 1e-3);
    }

    #[test]
    fn similarity_dimensions_match_printed_values() {
        let cases = [
            (CantorSpec::triadic(), 2f64.ln() / 3f64.ln()),
            (
                CantorSpec::middle_remove(5).unwrap(),
                4f64.ln() / 5f64.ln(),
            ),
            (
                CantorSpec::keep_digits(10, (0..10).filter(|&d| d != 3)).unwrap(),
                9f64.ln() / 10f64.ln(),
            ),
            (
                CantorSpec::keep_digits(10, 0..7).unwrap(),
                7f64.ln() / 10f64.ln(),
            ),
        ];
        for (spec, want) in cases {
            assert!((spec.similarity_dimension().unwrap() - want).abs() < 1e-12);
        }
        assert!(CantorSpec::fat().similarity_dimension().is_err());
        let two = CantorSpec::two_scale(ratio(1, 4), ratio(2, 5)).unwrap();
        assert!(two.similarity_dimension().is_err());
    }

    #[test]
    fn digit_membership_examples() {
        let spec = CantorSpec::triadic();
        // 1/4 = 0.020202...(3): in at every inspected depth.
        assert!(spec.contains(&ratio(1, 4), 20).unwrap().is_in());
        // 1/2 = 0.111...(3): out at depth 1 already.
        assert_eq!(spec.contains(&ratio(1, 2), 1).unwrap(), Membership::Out);
        // 1/3 = 0.1000... = 0.0222...: endpoint, exactly in.
        assert_eq!(spec.contains(&ratio(1, 3), 1).unwrap(), Membership::In);
        assert_eq!(spec.contains(&ratio(1, 3), 40).unwrap(), Membership::In);
        assert_eq!(spec.contains(&int(0), 5).unwrap(), Membership::In);
        assert_eq!(spec.contains(&int(1), 5).unwrap(), Membership::In);
        assert!(spec.contains(&ratio(3, 2), 5).is_err());
    }

    #[test]
    fn largest_gap_examples() {
        let spec = CantorSpec::triadic();
        for n in 1..=5 {
            assert_eq!(spec.generate(n).unwrap().largest_gap().unwrap(), ratio(1, 3));
        }
        assert_eq!(spec.generate(0).unwrap().largest_gap().unwrap(), int(0));
        let m5 = CantorSpec::middle_remove(5).unwrap();
        assert_eq!(m5.generate(1).unwrap().largest_gap().unwrap(), ratio(1, 5));
        assert!(IntervalSet::new(vec![]).unwrap().largest_gap().is_err());
    }

    #[test]
    fn triadic_self_similarity_under_tripling() {
        // Scaling the left half of generation n+1 by 3 reproduces
        // generation n exactly.
        let spec = CantorSpec::triadic();
        for n in 0..=6 {
            let coarse = spec.generate(n).unwrap();
            let fine = spec.generate(n + 1).unwrap();
            let third = ratio(1, 3);
            let scaled: Vec<Interval> = fine
                .intervals()
                .iter()
                .filter(|iv| *iv.hi() <= third)
                .map(|iv| {
                    Interval::new(iv.lo() * int(3), iv.hi() * int(3)).unwrap()
                })
                .collect();
            assert_eq!(scaled, coarse.intervals());
        }
    }

    #[test]
    fn generation_caps_are_enforced() {
        let spec = CantorSpec::triadic();
        assert!(matches!(
            spec.generate(65),
            Err(Error::GenerationOverflow { .. })
        ));
        assert!(matches!(
            CantorSpec::fat().generate(13),
            Err(Error::GenerationOverflow { .. })
        ));
        assert!(matches!(
            CantorSpec::fat().survival_length(21),
            Err(Error::GenerationOverflow { .. })
        ));
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(CantorSpec::keep_digits(3, [0, 1, 2]).is_err()); // |K| = b
        assert!(CantorSpec::keep_digits(3, [0]).is_err()); // |K| < 2
        assert!(CantorSpec::keep_digits(3, [0, 5]).is_err()); // digit >= b
        assert!(CantorSpec::middle_remove(4).is_err()); // even base
        assert!(CantorSpec::two_scale(ratio(1, 2), ratio(1, 2)).is_err()); // l1+l2 = 1
        assert!(CantorSpec::two_scale(ratio(-1, 4), ratio(1, 5)).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let set = CantorSpec::triadic().generate(3).unwrap();
        let back = IntervalSet::from_csv(&set.to_csv()).unwrap();
        assert_eq!(set, back);
    }

    fn arbitrary_spec(idx: u8) -> CantorSpec {
        match idx % 4 {
            0 => CantorSpec::triadic(),
            1 => CantorSpec::middle_remove(5).unwrap(),
            2 => CantorSpec::keep_digits(10, [0, 2, 5, 9]).unwrap(),
            _ => CantorSpec::two_scale(ratio(1, 4), ratio(2, 5)).unwrap(),
        }
    }

    proptest! {
        #[test]
        fn nesting_and_disjointness(idx in 0u8..4, n in 0usize..6) {
            let spec = arbitrary_spec(idx);
            let coarse = spec.generate(n).unwrap();
            let fine = spec.generate(n + 1).unwrap();
            // Every fine interval sits inside some coarse interval.
            for f in fine.intervals() {
                prop_assert!(coarse
                    .intervals()
                    .iter()
                    .any(|c| c.lo() <= f.lo() && f.hi() <= c.hi()));
            }
            // Disjointness is enforced on construction; double-check order.
            for pair in fine.intervals().windows(2) {
                prop_assert!(pair[0].hi() < pair[1].lo());
            }
        }

        #[test]
        fn contains_agrees_with_generate(num in 0i64..=512, depth in 1usize..6) {
            let spec = CantorSpec::triadic();
            let x = ratio(num, 512);
            let set = spec.generate(depth).unwrap();
            let digit_verdict = spec.contains(&x, depth).unwrap();
            prop_assert_eq!(digit_verdict.is_in(), set.contains_point(&x));
        }
    }
}
