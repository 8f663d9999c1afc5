//! The acceptance checklist: every reproduction target of the library
//! as an executable criterion with its tolerance pinned in code. The
//! CLI `reproduce` subcommand prints one pass/fail line per criterion
//! and the `acceptance` test target asserts them.
//!
//! Three checks are expected to stay red; each records a measured
//! counter-value and the reason in its detail line:
//! - criterion 5, D(q = -1000) vs 1.262: the closed form carries a
//!   q/(q-1) skew, so the true value at finite q = -1000 is 1.26060
//!   (the q -> -infinity asymptote, checked separately, is 1.26186);
//! - criterion 6, hybrid enumeration c4: exhaustive left-right
//!   spanning yields 31; the published polynomial prints 38, which no
//!   monotone spanning rule can reach (see the percolation module);
//! - criterion 7, edge-rule exponents: the enumerated edge polynomial
//!   gives nu = 2.114, beta = 0.227; the published 2.194/0.234 come
//!   from simulation data, not reproducible from any cell enumeration.

use crate::cantor::CantorSpec;
use crate::estimators;
use crate::multifractal::{self, TwoScaleMeasure};
use crate::percolation::{self, ConnectivityRule, RgPolynomial};
use crate::rat::{self, ratio};
use crate::rng::SplitMix64;
use crate::sierpinski::{self, CarpetSpec};
use crate::staircase;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    /// One line per check: "ok: ..." or "FAIL: ...".
    pub details: Vec<String>,
}

struct Checker {
    id: u32,
    name: &'static str,
    details: Vec<String>,
    passed: bool,
}

impl Checker {
    fn new(id: u32, name: &'static str) -> Self {
        Self {
            id,
            name,
            details: Vec::new(),
            passed: true,
        }
    }

    fn check(&mut self, ok: bool, label: impl std::fmt::Display) {
        if ok {
            self.details.push(format!("ok: {label}"));
        } else {
            self.passed = false;
            self.details.push(format!("FAIL: {label}"));
        }
    }

    fn close(&mut self, value: f64, target: f64, tol: f64, label: &str) {
        self.check(
            (value - target).abs() <= tol,
            format!("{label}: {value:.10} vs {target} (tol {tol:e})"),
        );
    }

    fn finish(self) -> CriterionResult {
        CriterionResult {
            id: self.id,
            name: self.name,
            passed: self.passed,
            details: self.details,
        }
    }
}

/// Criterion 1: the analytic dimension table matches the printed digits
/// to 1e-4 relative.
pub fn criterion_1() -> CriterionResult {
    let mut c = Checker::new(1, "analytic dimension table");
    let table = sierpinski::product_dimensions();
    let printed: &[(&str, f64)] = &[
        ("cantor_triadic", 0.6309),
        ("cantor_middle_fifth", 0.86135),
        ("cantor_keep9_base10", 0.9542),
        ("cantor_keep8_base10", 0.9031),
        ("cantor_keep7_base10", 0.8451),
        ("triangle", 1.58496250),
        ("carpet", 1.892789),
        ("cantor_product_2d", 1.2618595),
        ("sponge", 2.726833),
        ("cheese_3d", 2.965647),
        ("c4_product_3d", 2.120085),
        ("c4_product_2d", 1.41339018),
        ("carpet_base7", 1.8957),
        ("koch", 1.2618),
        ("pyramid", 2.0),
    ];
    for &(name, want) in printed {
        match table.iter().find(|e| e.name == name) {
            Some(entry) => c.check(
                ((entry.value - want) / want).abs() <= 1e-4,
                format!("{name}: {:.8} vs printed {want}", entry.value),
            ),
            None => c.check(false, format!("{name}: missing from table")),
        }
    }
    c.finish()
}

/// Criterion 2: exact measure identities of the removal series.
pub fn criterion_2() -> CriterionResult {
    let mut c = Checker::new(2, "measure identities (exact rational)");
    let triadic = CantorSpec::triadic();
    let mut all = true;
    for n in 0..=20 {
        all &= triadic.removed_length(n).unwrap()
            == rat::one() - rat::pow(&ratio(2, 3), n as i64);
    }
    c.check(all, "triadic removed length = 1 - (2/3)^n exactly, n <= 20");
    let mut gen_sum = true;
    for n in 0..=9 {
        gen_sum &= triadic.generate(n).unwrap().total_length()
            == triadic.survival_length(n).unwrap();
    }
    c.check(gen_sum, "triadic generate-sum agrees with closed form, n <= 9");

    let middle5 = CantorSpec::middle_remove(5).unwrap();
    let mut increasing = true;
    let mut prev = rat::zero() - rat::ratio(1, 1);
    for n in 0..=60 {
        let r = middle5.removed_length(n).unwrap();
        increasing &= r > prev;
        prev = r;
    }
    c.check(increasing, "middle-fifth removed series strictly increases");
    let residual = rat::to_f64(&(rat::one() - prev));
    c.check(
        residual < 1e-5,
        format!("middle-fifth removed sum approaches 1 (residual {residual:.2e} at n = 60)"),
    );

    let fat = CantorSpec::fat();
    // Independent oracle: the product in reduced-rational arithmetic.
    let mut product_ok = true;
    let mut oracle = rat::one();
    for n in 0..=16usize {
        if n > 0 {
            oracle *= rat::one() - rat::pow(&ratio(1, 3), 1i64 << (n - 1));
        }
        product_ok &= fat.survival_length(n).unwrap() == oracle;
    }
    c.check(
        product_ok,
        "fat length equals prod(1 - 3^-(2^k)) in reduced-rational arithmetic, n <= 16",
    );
    // 17..=20: exact induction on the integer parts (cross-multiplied
    // so reduction state cannot matter, and no giant gcds run).
    let mut induction_ok = true;
    for n in 17..=20usize {
        let prev_len = fat.survival_length(n - 1).unwrap();
        let len = fat.survival_length(n).unwrap();
        let p = num::pow::pow(num::BigInt::from(3u32), 1usize << (n - 1));
        // len = prev * (p - 1) / p  <=>  len.n * p * prev.d == prev.n * (p-1) * len.d
        let lhs = len.numer() * &p * prev_len.denom();
        let rhs = prev_len.numer() * (&p - 1u32) * len.denom();
        induction_ok &= lhs == rhs;
    }
    c.check(
        induction_ok,
        "fat length satisfies the removal recurrence exactly, n = 17..20",
    );
    let mut fat_gen = true;
    for n in 0..=9 {
        fat_gen &= fat.generate(n).unwrap().total_length() == fat.survival_length(n).unwrap();
    }
    c.check(fat_gen, "fat generate-sum agrees with closed form, n <= 9");
    c.close(
        fat.survival_length_f64(30),
        0.585187,
        1e-5,
        "fat limit value at n = 30",
    );
    c.finish()
}

/// Criterion 3: Cantor function behavior.
pub fn criterion_3() -> CriterionResult {
    let mut c = Checker::new(3, "Cantor function");
    let mut rng = SplitMix64::new(2024);
    let mut monotone = true;
    let mut symmetric = true;
    let bound = rat::pow(&ratio(1, 2), 64);
    for _ in 0..10_000 {
        let den = 2 + (rng.next_u64() % 999_998) as i64;
        let a = (rng.next_u64() % (den as u64 + 1)) as i64;
        let b = (rng.next_u64() % (den as u64 + 1)) as i64;
        let x = ratio(a.min(b), den);
        let y = ratio(a.max(b), den);
        let mx = staircase::evaluate(&x, 64).unwrap();
        let my = staircase::evaluate(&y, 64).unwrap();
        monotone &= mx.value <= my.value;
        // Exact complementation up to the truncation bound.
        let mirror = staircase::evaluate(&(rat::one() - &x), 64).unwrap();
        let sum_defect = rat::one() - (&mx.value + &mirror.value);
        symmetric &= sum_defect >= rat::zero() && sum_defect <= bound;
    }
    c.check(monotone, "monotone on 10^4 random rational pairs");
    c.check(symmetric, "M(1-x) = 1 - M(x) within truncation bound");

    let table: &[((i64, i64), (i64, i64), (i64, i64))] = &[
        ((1, 4), (1, 9), (2, 9)),
        ((1, 2), (1, 3), (2, 3)),
        ((3, 4), (7, 9), (8, 9)),
        ((5, 8), (19, 27), (20, 27)),
    ];
    let mut plateaus_ok = true;
    for &((mn, md), lo, hi) in table {
        let p = staircase::plateau_of(&ratio(mn, md)).unwrap();
        plateaus_ok &= p.lo() == &ratio(lo.0, lo.1) && p.hi() == &ratio(hi.0, hi.1);
    }
    c.check(plateaus_ok, "plateau table {1/4, 1/2, 3/4, 5/8} exact");

    let mut prev = 0.0;
    let mut increasing = true;
    let mut last = 0.0;
    for n in 1..=20 {
        let s = staircase::staircase_polyline(n).unwrap();
        increasing &= s.length > prev;
        prev = s.length;
        last = s.length;
    }
    c.check(increasing, "staircase length strictly increasing, n = 1..20");
    c.close(last, 2.0, 1e-3, "staircase length at n = 20 vs limit 2");
    c.finish()
}

/// Criterion 4: the two-scale multifractal at l1 = 1/4, l2 = 2/5,
/// p1 = 0.6, p2 = 0.4.
pub fn criterion_4() -> CriterionResult {
    let mut c = Checker::new(4, "two-scale multifractal spectrum");
    let m = TwoScaleMeasure::quarter_twofifths();
    c.close(m.support_dimension(), 0.6110, 1e-4, "D0");
    c.check(
        m.mass_exponent(1.0).abs() <= 1e-12,
        format!("tau(1) = {:.2e} within 1e-12", m.mass_exponent(1.0)),
    );
    c.close(m.holder_alpha(100.0), 0.3685, 1e-4, "alpha(+100) vs alpha_min");
    c.close(m.holder_alpha(-100.0), 1.0, 1e-4, "alpha(-100) vs alpha_max");
    let h = 1e-4;
    let mut fd_ok = true;
    let mut worst = 0.0f64;
    let mut q = -20.0;
    while q <= 20.0 {
        let fd = -(m.mass_exponent(q + h) - m.mass_exponent(q - h)) / (2.0 * h);
        let gap = (m.holder_alpha(q) - fd).abs();
        worst = worst.max(gap);
        fd_ok &= gap <= 1e-6;
        q += 0.5;
    }
    c.check(
        fd_ok,
        format!("alpha matches central-difference -dtau/dq (worst {worst:.2e} <= 1e-6)"),
    );
    let mut f_identity = true;
    let mut monotone = true;
    let mut prev_dq = f64::INFINITY;
    let mut q = -20.0;
    while q <= 20.0 {
        let pt = m.spectrum_point(q);
        f_identity &= pt.f == pt.q * pt.alpha + pt.tau;
        monotone &= pt.dq <= prev_dq + 1e-9;
        prev_dq = pt.dq;
        q += 0.5;
    }
    c.check(f_identity, "f = q alpha + tau identically on the grid");
    c.check(monotone, "D_q non-increasing over q in [-20, 20]");
    c.finish()
}

/// Criterion 5: the equal-cell triadic closed form at l1 = 3/4,
/// l2 = 1/4.
pub fn criterion_5() -> CriterionResult {
    let mut c = Checker::new(5, "triadic closed-form spectrum");
    let dq = |q: f64| multifractal::triadic_dq(0.75, 0.25, q).unwrap();
    c.close(dq(0.0), 0.631, 1e-3, "D0");
    c.close(dq(1.0), 0.512, 1e-3, "D1");
    c.close(dq(2.0), 0.428, 1e-3, "D2");
    c.close(dq(1e3), 0.262, 1e-3, "D(q = +1000) vs D_inf");
    // Expected red: D(-1000) = (1000/1001) * 1.26186 = 1.26060; the
    // printed 1.262 is the q -> -infinity limit, which the finite-q
    // skew cannot reach within 1e-3.
    c.close(dq(-1e3), 1.262, 1e-3, "D(q = -1000) vs D_-inf (known skew)");
    let (d_inf, d_minus_inf) = multifractal::triadic_dq_asymptotes(0.75, 0.25).unwrap();
    c.close(d_inf, 0.262, 1e-3, "asymptote q -> +inf");
    c.close(d_minus_inf, 1.262, 1e-3, "asymptote q -> -inf");
    // The finite evaluations do converge to the asymptotes once the
    // q/(q-1) skew is divided out.
    c.check(
        (dq(1e3) * (1.0 - 1e3) / 1e3 + d_inf).abs() < 1e-9
            && (dq(-1e3) * (1.0 + 1e3) / 1e3 - d_minus_inf).abs() < 1e-9,
        "skew-corrected finite-q evaluations match both asymptotes",
    );
    c.finish()
}

/// Criterion 6: hybrid renormalization enumeration versus the printed
/// coefficient set.
pub fn criterion_6() -> CriterionResult {
    let mut c = Checker::new(6, "renormalization enumeration counts");
    let counts = *percolation::enumerate_rg(ConnectivityRule::Hybrid).counts();
    c.check(
        counts[..3] == [0, 0, 0],
        format!("no spanning below k = 3: {:?}", &counts[..3]),
    );
    // Expected red at k = 4: exhaustive enumeration yields 31; the
    // printed polynomial's 38 is unreachable by any monotone spanning
    // rule (at most 2 more 4-configs could ever be added).
    let printed = [8u64, 38, 44, 27, 8, 1];
    for (k, &want) in (3..=8).zip(printed.iter()) {
        c.check(
            counts[k] == want,
            format!("c{k} = {} vs printed {want}", counts[k]),
        );
    }
    c.finish()
}

/// Criterion 7: critical exponents for both connectivity rules.
pub fn criterion_7() -> CriterionResult {
    let mut c = Checker::new(7, "percolation exponent family");
    let hybrid = percolation::critical_exponents_default(&RgPolynomial::hybrid_reference())
        .expect("relevant fixed point");
    c.close(hybrid.p_c, 0.5093, 5e-4, "hybrid p_c");
    c.close(hybrid.nu, 1.801, 5e-3, "hybrid nu");
    c.close(hybrid.beta, 0.193, 5e-3, "hybrid beta");
    c.close(hybrid.gamma, 3.216, 1e-2, "hybrid gamma");
    c.close(hybrid.alpha_heat, -1.602, 1e-2, "hybrid alpha");
    c.check(
        (hybrid.delta_gap - (hybrid.beta + hybrid.gamma)).abs() <= 1e-9,
        format!(
            "delta = nu d - beta = beta + gamma identity ({:.9}; published 1.809 not reproduced)",
            hybrid.delta_gap
        ),
    );
    // Expected red: the enumerated edge polynomial gives nu = 2.114,
    // beta = 0.227; the published 2.194/0.234 are simulation values.
    let edge = percolation::critical_exponents_default(&percolation::enumerate_rg(
        ConnectivityRule::Edge,
    ))
    .expect("relevant fixed point");
    c.close(edge.nu, 2.194, 1e-2, "edge nu (published, simulation-derived)");
    c.close(edge.beta, 0.234, 5e-3, "edge beta (published, simulation-derived)");
    c.finish()
}

/// Criterion 8: Monte Carlo consistency at generation 4.
pub fn criterion_8() -> CriterionResult {
    let mut c = Checker::new(8, "Monte Carlo spanning consistency");
    let lattice = percolation::CarpetLattice::new(4, ConnectivityRule::Hybrid)
        .expect("generation within cap");
    let p_c = percolation::enumerate_rg(ConnectivityRule::Hybrid)
        .fixed_point()
        .expect("interior fixed point");
    let below = percolation::mc_spanning(&lattice, p_c - 0.05, 2000, 42).unwrap();
    let above = percolation::mc_spanning(&lattice, p_c + 0.05, 2000, 42).unwrap();
    c.check(
        below.fraction < 0.5 && above.fraction > 0.5,
        format!(
            "spanning fraction crosses 1/2 inside [p_c - 0.05, p_c + 0.05]: \
             f({:.4}) = {:.3}, f({:.4}) = {:.3}",
            below.p, below.fraction, above.p, above.fraction
        ),
    );
    let edge_lattice = percolation::CarpetLattice::new(4, ConnectivityRule::Edge)
        .expect("generation within cap");
    let th_hybrid = percolation::mc_threshold(&lattice, 250, 7).unwrap();
    let th_edge = percolation::mc_threshold(&edge_lattice, 250, 7).unwrap();
    c.check(
        th_edge.p > th_hybrid.p,
        format!(
            "edge threshold {:.4} > hybrid threshold {:.4} at equal generation",
            th_edge.p, th_hybrid.p
        ),
    );
    let a = percolation::mc_spanning(&lattice, p_c, 400, 99).unwrap();
    let b = percolation::mc_spanning(&lattice, p_c, 400, 99).unwrap();
    c.check(
        a.fraction.to_bits() == b.fraction.to_bits(),
        "identical seed reproduces the spanning fraction bit for bit",
    );
    c.finish()
}

/// Criterion 9: estimators recover analytic dimensions.
pub fn criterion_9() -> CriterionResult {
    let mut c = Checker::new(9, "estimator recovery");
    let carpet = CarpetSpec::standard().generate(6).unwrap();
    let series = estimators::box_count_grid(&carpet, &[1, 2, 3, 4, 5, 6]).unwrap();
    let slope = estimators::fit_dimension(&series).unwrap().slope;
    c.check(
        (slope - 8f64.ln() / 3f64.ln()).abs() <= 1e-12,
        format!("carpet box-count slope exact: {slope:.14}"),
    );
    let triadic = CantorSpec::triadic().generate(8).unwrap();
    let tseries =
        estimators::box_count_intervals(&triadic, 3, &(1..=8).collect::<Vec<_>>()).unwrap();
    let tslope = estimators::fit_dimension(&tseries).unwrap().slope;
    c.check(
        (tslope - 2f64.ln() / 3f64.ln()).abs() <= 1e-12,
        format!("triadic interval box-count slope exact: {tslope:.14}"),
    );

    let cloud = sierpinski::chaos_game(
        &sierpinski::TRIANGLE_VERTICES_AFFINE,
        (0.0, 0.0),
        1_000_000,
        20,
        42,
    );
    let ms: Vec<usize> = (2..=8).map(|k| 1usize << k).collect();
    let cseries = estimators::box_count_points(&cloud, &ms).unwrap();
    let cslope = estimators::fit_dimension(&cseries).unwrap().slope;
    c.close(cslope, 3f64.ln() / 2f64.ln(), 0.03, "chaos-game cloud slope");

    let mut rng = SplitMix64::new(7);
    let uniform: Vec<(f64, f64)> = (0..1_000_000)
        .map(|_| (rng.next_unit(), rng.next_unit()))
        .collect();
    let useries = estimators::box_count_points(&uniform, &ms).unwrap();
    for p in estimators::renyi_spectrum(&useries, &[0.0, 1.0, 2.0]).unwrap() {
        c.close(p.dq, 2.0, 0.05, &format!("uniform square D_{}", p.q));
    }

    let m = TwoScaleMeasure::quarter_twofifths();
    let rseries =
        estimators::two_scale_refinement_series(&m, &(12..=20).collect::<Vec<_>>()).unwrap();
    let d0 = estimators::fit_dimension(&rseries).unwrap().slope;
    c.close(d0, 0.6110, 0.02, "weighted two-scale refinement D0");
    c.finish()
}

/// Criterion 10: geometric cross-checks between independent routes.
pub fn criterion_10() -> CriterionResult {
    let mut c = Checker::new(10, "geometry cross-checks");
    let ifs = sierpinski::sierpinski_ifs_affine();
    let mut ifs_ok = true;
    for n in 0..=8 {
        ifs_ok &= sierpinski::ifs_render(&ifs, n, 1 << n).unwrap()
            == sierpinski::triangle_raster(n).unwrap();
    }
    c.check(ifs_ok, "IFS raster equals subdivision raster exactly, n <= 8");

    let s1 = sierpinski::sponge_generate(1).unwrap();
    let s2 = sierpinski::sponge_generate(2).unwrap();
    c.check(
        s1.count_occupied() == 20 && s2.count_occupied() == 400,
        format!(
            "sponge voxel counts: {} and {}",
            s1.count_occupied(),
            s2.count_occupied()
        ),
    );
    let carpet2 = CarpetSpec::standard().generate(2).unwrap();
    let mut slices_ok = true;
    for axis in [sierpinski::Axis::X, sierpinski::Axis::Y, sierpinski::Axis::Z] {
        for index in [0, s2.side() - 1] {
            slices_ok &= sierpinski::face_slice(&s2, axis, index).unwrap() == carpet2;
        }
    }
    c.check(slices_ok, "every face slice equals the carpet grid exactly");

    let mut perimeter_ok = true;
    for n in 1..=20 {
        perimeter_ok &=
            sierpinski::perimeter_sum(n) == sierpinski::perimeter_sum_direct(n);
    }
    c.check(
        perimeter_ok,
        "perimeter closed form equals direct sum as exact rationals, n <= 20",
    );
    c.finish()
}

/// Runs every criterion whose name or id matches the filter (all when
/// the filter is empty).
pub fn run_all(filter: Option<&str>) -> Vec<CriterionResult> {
    let all: Vec<fn() -> CriterionResult> = vec![
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    all.into_iter()
        .map(|f| f())
        .filter(|r| match filter {
            Some(f) => r.name.contains(f) || r.id.to_string() == f,
            None => true,
        })
        .collect()
}

/// The criteria expected to stay red, with the reason recorded in the
/// module docs and the run details.
pub const EXPECTED_RED: &[u32] = &[5, 6, 7];

/// True when a result matches its expectation: green, unless listed in
/// `EXPECTED_RED` where exactly the documented checks fail.
pub fn matches_expectation(r: &CriterionResult) -> bool {
    if r.passed {
        return !EXPECTED_RED.contains(&r.id);
    }
    match r.id {
        5 => r
            .details
            .iter()
            .all(|d| d.starts_with("ok") || d.contains("known skew")),
        6 => r
            .details
            .iter()
            .all(|d| d.starts_with("ok") || d.contains("c4")),
        7 => r
            .details
            .iter()
            .all(|d| d.starts_with("ok") || d.contains("edge")),
        _ => false,
    }
}
