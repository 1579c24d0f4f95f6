//! Closed-form limit objects of the semiclassical theory: the prefactor
//! function f, its min-max order statistics alpha_k over shifted integers,
//! and the predicted eigenvalue alpha_k sqrt(h) e^{2 phi_min / h}.

use crate::error::{Error, Result};
use crate::potential::{PotentialFeatures, ScalarPotential};
use crate::scaled::{spectral_log_scale, LogScaled};

/// Geometric data entering the prefactor law
/// `f(x) = 2 sqrt(curvature/pi) (dn_inner q_inner^{2x+1} + dn_outer q_outer^{2x+1})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrefactorLaw {
    pub curvature: f64,
    pub r_min: f64,
    pub dn_inner: f64,
    pub dn_outer: f64,
    pub q_inner: f64,
    pub q_outer: f64,
}

impl PrefactorLaw {
    pub fn new(pot: &ScalarPotential) -> Result<Self> {
        let f = pot.features();
        let g = pot.geometry();
        Self::from_features(&f, g.rho1(), g.rho2())
    }

    pub fn from_features(f: &PotentialFeatures, rho1: f64, rho2: f64) -> Result<Self> {
        let law = PrefactorLaw {
            curvature: f.curvature,
            r_min: f.r_min,
            dn_inner: f.dn_inner,
            dn_outer: f.dn_outer,
            q_inner: rho1 / f.r_min,
            q_outer: rho2 / f.r_min,
        };
        if !(law.q_inner > 0.0 && law.q_inner < 1.0 && law.q_outer > 1.0) {
            return Err(Error::domain(format!(
                "prefactor law needs q_inner in (0,1) < q_outer, got {} and {}",
                law.q_inner, law.q_outer
            )));
        }
        if !(law.curvature > 0.0 && law.dn_inner > 0.0 && law.dn_outer > 0.0) {
            return Err(Error::domain(
                "prefactor law needs positive curvature and normal derivatives",
            ));
        }
        Ok(law)
    }

    /// Uniform positive floor of f.
    pub fn floor(&self) -> f64 {
        2.0 * (self.curvature / std::f64::consts::PI).sqrt() * self.dn_inner.min(self.dn_outer)
    }

    /// Stationary point of f: the unique real minimizer of the two-term
    /// exponential sum.
    pub fn continuous_minimizer(&self) -> f64 {
        // dn_inner ln(1/q_inner) q_inner^{2x+1} = dn_outer ln(q_outer) q_outer^{2x+1}
        let lhs = (self.dn_inner * (1.0 / self.q_inner).ln())
            / (self.dn_outer * self.q_outer.ln());
        let x = lhs.ln() / (self.q_outer / self.q_inner).ln();
        (x - 1.0) / 2.0
    }
}

/// f(x); strictly convex and coercive. Overflow for very large |x| is
/// reported as +infinity.
pub fn f_eval(law: &PrefactorLaw, x: f64) -> f64 {
    if x.abs() > 500.0 {
        return f64::INFINITY;
    }
    let e = 2.0 * x + 1.0;
    2.0 * (law.curvature / std::f64::consts::PI).sqrt()
        * (law.dn_inner * law.q_inner.powf(e) + law.dn_outer * law.q_outer.powf(e))
}

/// Explicit non-asymptotic constant dominating the normalized ground
/// eigenvalue of the fiber at effective angular momentum x:
/// `2 sqrt(curvature/pi) (dn_inner ((rho1 + h^alpha 1_{x>=0}) / s)^{2x+1}
///  + dn_outer ((rho2 - h^alpha 1_{x<0}) / s)^{2x+1})`,
/// `s = r_min - sgn(2x+1) h^beta`. Needs alpha in (1/2, 1) and
/// beta in (1/3, 1/2).
pub fn c_m_bound(law: &PrefactorLaw, x: f64, h: f64, alpha: f64, beta: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::domain(format!("h must be positive, got {h}")));
    }
    if !(alpha > 0.5 && alpha < 1.0 && beta > 1.0 / 3.0 && beta < 0.5) {
        return Err(Error::domain(format!(
            "need alpha in (1/2,1) and beta in (1/3,1/2), got alpha={alpha}, beta={beta}"
        )));
    }
    let rho1 = law.q_inner * law.r_min;
    let rho2 = law.q_outer * law.r_min;
    let s = law.r_min - (2.0 * x + 1.0).signum() * h.powf(beta);
    if !(s > rho1 && s < rho2) {
        return Err(Error::domain(format!(
            "shifted well location {s} left the annulus; decrease h"
        )));
    }
    let e = 2.0 * x + 1.0;
    let inner = rho1 + if x >= 0.0 { h.powf(alpha) } else { 0.0 };
    let outer = rho2 - if x < 0.0 { h.powf(alpha) } else { 0.0 };
    Ok(2.0 * (law.curvature / std::f64::consts::PI).sqrt()
        * (law.dn_inner * (inner / s).powf(e) + law.dn_outer * (outer / s).powf(e)))
}

/// The k-th order statistic of `{f(m - gamma_frac) : m in Z}` and its
/// realizing set of k integers (the min-max over k-subsets of Z).
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaK {
    pub value: f64,
    pub realizing: Vec<i64>,
}

pub fn alpha_k(law: &PrefactorLaw, gamma_frac: f64, k: usize) -> Result<AlphaK> {
    if k == 0 {
        return Err(Error::domain("k must be >= 1"));
    }
    let center = law.continuous_minimizer() + gamma_frac;
    let mut half = 8i64.max(k as i64);
    loop {
        let lo = (center - half as f64).floor() as i64;
        let hi = (center + half as f64).ceil() as i64;
        let mut vals: Vec<(f64, i64)> =
            (lo..=hi).map(|m| (f_eval(law, m as f64 - gamma_frac), m)).collect();
        // ascending by value; equal values keep the smaller m first
        vals.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        let kth = vals[k - 1].0;
        let edge = f_eval(law, lo as f64 - gamma_frac).min(f_eval(law, hi as f64 - gamma_frac));
        if edge > kth || half >= (1 << 20) {
            let mut realizing: Vec<i64> = vals[..k].iter().map(|(_, m)| *m).collect();
            realizing.sort_unstable();
            return Ok(AlphaK {
                value: kth,
                realizing,
            });
        }
        half *= 2;
    }
}

/// Predicted k-th eigenvalue at scale h, in log-scaled form:
/// log_scale = 2 phi_min/h + ln(h)/2, mantissa = alpha_k.
pub fn predicted_lambda(
    law: &PrefactorLaw,
    phi_min: f64,
    gamma_frac: f64,
    k: usize,
    h: f64,
) -> Result<LogScaled> {
    if !(h > 0.0) {
        return Err(Error::domain(format!("h must be positive, got {h}")));
    }
    let alpha = alpha_k(law, gamma_frac, k)?;
    Ok(LogScaled {
        log_scale: spectral_log_scale(phi_min, h),
        mantissa: alpha.value,
    })
}
