//! Closed-form multifractal machinery for two-scale Cantor measures:
//! the partition function, the mass exponent tau(q) from its root
//! equation, Renyi dimensions D_q, the Hölder exponent alpha(q), and
//! the f(alpha) spectrum, plus the equal-cell triadic closed form.
//!
//! Sign convention: tau is the root of p1^q l1^tau + p2^q l2^tau = 1,
//! so tau(0) = D0 > 0 and D_q = tau(q) / (1 - q). Estimators working
//! from partition sums over shrinking cells produce the opposite sign
//! (their tau is a slope against ln delta < 0) and convert before
//! comparing.

use crate::error::{Error, Result};
use serde::Serialize;

/// Two contraction ratios with their measure weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoScaleMeasure {
    pub l1: f64,
    pub l2: f64,
    pub p1: f64,
    pub p2: f64,
}

/// One row of the spectrum: f = q * alpha + tau by construction.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectrumPoint {
    pub q: f64,
    pub tau: f64,
    pub dq: f64,
    pub alpha: f64,
    pub f: f64,
}

const ROOT_TOL: f64 = 1e-13;

impl TwoScaleMeasure {
    pub fn new(l1: f64, l2: f64, p1: f64, p2: f64) -> Result<Self> {
        if !(l1 > 0.0 && l2 > 0.0 && l1 < 1.0 && l2 < 1.0 && l1 + l2 <= 1.0) {
            return Err(Error::InvalidSpec(format!(
                "need 0 < l1, l2 < 1 with l1 + l2 <= 1, got l1 = {l1}, l2 = {l2}"
            )));
        }
        if !(p1 > 0.0 && p2 > 0.0 && (p1 + p2 - 1.0).abs() < 1e-12) {
            return Err(Error::InvalidSpec(format!(
                "weights must be positive with p1 + p2 = 1, got p1 = {p1}, p2 = {p2}"
            )));
        }
        Ok(Self { l1, l2, p1, p2 })
    }

    /// The two-scale measure studied throughout: l1 = 1/4, l2 = 2/5,
    /// p1 = 0.6, p2 = 0.4.
    pub fn quarter_twofifths() -> Self {
        Self::new(0.25, 0.4, 0.6, 0.4).expect("valid constants")
    }

    /// (p1^q l1^d + p2^q l2^d)^n, the n-th partition sum. Errors on
    /// floating-point overflow rather than saturating.
    pub fn partition_sum(&self, q: f64, d: f64, n: u32) -> Result<f64> {
        let base = self.p1.powf(q) * self.l1.powf(d) + self.p2.powf(q) * self.l2.powf(d);
        let value = base.powi(n as i32);
        if !value.is_finite() {
            return Err(Error::Overflow(format!(
                "partition sum at q = {q}, d = {d}, n = {n}"
            )));
        }
        Ok(value)
    }

    /// Same sum expanded over the C(n, k) segment classes; must agree
    /// with the closed form (kept as an independent route for tests).
    pub fn partition_sum_binomial(&self, q: f64, d: f64, n: u32) -> Result<f64> {
        let t1 = self.p1.powf(q) * self.l1.powf(d);
        let t2 = self.p2.powf(q) * self.l2.powf(d);
        let mut sum = 0.0;
        let mut coef = 1.0f64;
        for k in 0..=n {
            if k > 0 {
                coef *= (n - k + 1) as f64 / k as f64;
            }
            sum += coef * t1.powi(k as i32) * t2.powi((n - k) as i32);
        }
        if !sum.is_finite() {
            return Err(Error::Overflow(format!(
                "binomial partition sum at q = {q}, d = {d}, n = {n}"
            )));
        }
        Ok(sum)
    }

    /// Root of l1^D + l2^D = 1, the dimension of the support.
    pub fn support_dimension(&self) -> f64 {
        self.mass_exponent(0.0)
    }

    /// tau(q): the root of p1^q l1^tau + p2^q l2^tau = 1. Bisection on
    /// a guaranteed bracket followed by one Newton step; the residual
    /// stays below 1e-12 over the tested q range.
    pub fn mass_exponent(&self, q: f64) -> f64 {
        let a1 = q * self.p1.ln();
        let a2 = q * self.p2.ln();
        let b1 = self.l1.ln();
        let b2 = self.l2.ln();
        // g(tau) = exp(a1 + tau b1) + exp(a2 + tau b2) - 1 is strictly
        // decreasing in tau (b1, b2 < 0).
        let g = |tau: f64| (a1 + tau * b1).exp() + (a2 + tau * b2).exp() - 1.0;
        let alpha_big = (self.p1.ln() / self.l1.ln()).max(self.p2.ln() / self.l2.ln());
        let mut lo = -q.abs() * alpha_big - 2.0;
        let mut hi = q.abs() * alpha_big + 2.0;
        debug_assert!(g(lo) > 0.0 && g(hi) < 0.0);
        while hi - lo > ROOT_TOL {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut tau = 0.5 * (lo + hi);
        let dg = b1 * (a1 + tau * b1).exp() + b2 * (a2 + tau * b2).exp();
        if dg != 0.0 {
            let step = g(tau) / dg;
            if step.is_finite() {
                tau -= step;
            }
        }
        tau
    }

    /// D_q = tau(q) / (1 - q); at q = 1 the analytic limit
    /// (p1 ln p1 + p2 ln p2) / (p1 ln l1 + p2 ln l2).
    pub fn renyi_dimension(&self, q: f64) -> f64 {
        if (q - 1.0).abs() < 1e-9 {
            return self.information_dimension_limit();
        }
        self.mass_exponent(q) / (1.0 - q)
    }

    pub fn information_dimension_limit(&self) -> f64 {
        (self.p1 * self.p1.ln() + self.p2 * self.p2.ln())
            / (self.p1 * self.l1.ln() + self.p2 * self.l2.ln())
    }

    /// alpha(q) = -dtau/dq by implicit differentiation of the root
    /// equation.
    pub fn holder_alpha(&self, q: f64) -> f64 {
        let tau = self.mass_exponent(q);
        let w1 = (q * self.p1.ln() + tau * self.l1.ln()).exp();
        let w2 = (q * self.p2.ln() + tau * self.l2.ln()).exp();
        (w1 * self.p1.ln() + w2 * self.p2.ln()) / (w1 * self.l1.ln() + w2 * self.l2.ln())
    }

    pub fn alpha_min(&self) -> f64 {
        self.p1.ln() / self.l1.ln()
    }

    pub fn alpha_max(&self) -> f64 {
        self.p2.ln() / self.l2.ln()
    }

    /// (alpha, f) with f = q * alpha + tau.
    pub fn f_alpha(&self, q: f64) -> (f64, f64) {
        let tau = self.mass_exponent(q);
        let alpha = self.holder_alpha(q);
        (alpha, q * alpha + tau)
    }

    pub fn spectrum_point(&self, q: f64) -> SpectrumPoint {
        let tau = self.mass_exponent(q);
        let alpha = self.holder_alpha(q);
        SpectrumPoint {
            q,
            tau,
            dq: self.renyi_dimension(q),
            alpha,
            f: q * alpha + tau,
        }
    }

    pub fn spectrum(&self, q_min: f64, q_max: f64, q_step: f64) -> Result<Vec<SpectrumPoint>> {
        if q_step <= 0.0 || q_max < q_min {
            return Err(Error::OutOfRange("bad q grid".into()));
        }
        let mut out = Vec::new();
        let mut q = q_min;
        while q <= q_max + 1e-12 {
            out.push(self.spectrum_point(q));
            q += q_step;
        }
        Ok(out)
    }
}

/// Equal-cell triadic closed form D_q = log3(l1^q + l2^q) / (1 - q)
/// for weights l1 + l2 = 1 on cells of size 3^-k; q = 1 by its limit.
pub fn triadic_dq(l1: f64, l2: f64, q: f64) -> Result<f64> {
    if !(l1 > 0.0 && l2 > 0.0 && (l1 + l2 - 1.0).abs() < 1e-12) {
        return Err(Error::InvalidSpec(format!(
            "triadic closed form needs l1 + l2 = 1, got {l1} + {l2}"
        )));
    }
    let ln3 = 3f64.ln();
    if (q - 1.0).abs() < 1e-9 {
        return Ok(-(l1 * l1.ln() + l2 * l2.ln()) / ln3);
    }
    // log(l1^q + l2^q) factored over the dominant term so extreme q
    // cannot overflow. For q > 0 the larger ratio dominates, for q < 0
    // the smaller.
    let (dom, rest) = if (l1 >= l2) == (q >= 0.0) {
        (l1, l2)
    } else {
        (l2, l1)
    };
    let log_sum = q * dom.ln() + (q * (rest.ln() - dom.ln())).exp().ln_1p();
    Ok(log_sum / ln3 / (1.0 - q))
}

/// The q -> +inf / -inf asymptotes of the triadic closed form:
/// -ln(max l) / ln 3 and -ln(min l) / ln 3.
pub fn triadic_dq_asymptotes(l1: f64, l2: f64) -> Result<(f64, f64)> {
    if !(l1 > 0.0 && l2 > 0.0 && (l1 + l2 - 1.0).abs() < 1e-12) {
        return Err(Error::InvalidSpec("need l1 + l2 = 1".into()));
    }
    let ln3 = 3f64.ln();
    Ok((-l1.max(l2).ln() / ln3, -l1.min(l2).ln() / ln3))
}
