//! Gauge classification on the annulus: the harmonic circulation field,
//! the flux constant c0 and the fractional flux driving the Aharonov-Bohm
//! oscillation.

use crate::annulus::AnnulusGeometry;
use crate::error::{Error, Result};
use crate::potential::ScalarPotential;

/// The gauge-invariant data of the problem: the declared circulation of the
/// physical potential over the inner boundary, the flux constant
/// `c0 = rho1 phi'(rho1) - circulation/(2 pi)` and the conjugation index p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeData {
    pub circ_int_a: f64,
    pub c0: f64,
    pub p: i64,
}

impl GaugeData {
    pub fn new(pot: &ScalarPotential, circ_int_a: f64, p: i64) -> Self {
        GaugeData {
            circ_int_a,
            c0: compute_c0(pot, circ_int_a),
            p,
        }
    }
}

/// Flux bookkeeping at a fixed semiclassical parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxAtScale {
    pub h: f64,
    /// p + c0/h
    pub gamma_hp: f64,
    /// c0/h - floor(c0/h), in [0, 1)
    pub gamma_frac: f64,
}

/// |grad theta|(r) for the harmonic function equal to 1 on the inner and 0
/// on the outer boundary: `1 / (r |ln(rho1/rho2)|)`.
pub fn theta_gradient_magnitude(geom: AnnulusGeometry, r: f64) -> Result<f64> {
    if !geom.contains(r) {
        return Err(Error::domain(format!("r = {r} outside the annulus")));
    }
    Ok(1.0 / (r * (geom.rho1() / geom.rho2()).ln().abs()))
}

/// Circulation of grad-perp theta over the inner boundary,
/// `2 pi / ln(rho1/rho2)` (negative since rho1 < rho2).
pub fn theta_inner_circulation(geom: AnnulusGeometry) -> f64 {
    2.0 * std::f64::consts::PI / (geom.rho1() / geom.rho2()).ln()
}

/// `c0 = rho1 phi'(rho1) - circ/(2 pi)`. Note phi'(rho1) = -dn_inner.
pub fn compute_c0(pot: &ScalarPotential, circ_int_a: f64) -> f64 {
    let f = pot.features();
    let rho1 = pot.geometry().rho1();
    rho1 * (-f.dn_inner) - circ_int_a / (2.0 * std::f64::consts::PI)
}

/// Fractional flux at scale h. `gamma_frac` uses mathematical floor (toward
/// minus infinity) so it lies in [0, 1) for negative c0/h too.
pub fn flux_at_scale(g: &GaugeData, h: f64) -> Result<FluxAtScale> {
    if !(h > 0.0) {
        return Err(Error::domain(format!("h must be positive, got {h}")));
    }
    let x = g.c0 / h;
    Ok(FluxAtScale {
        h,
        gamma_hp: g.p as f64 + x,
        gamma_frac: x - x.floor(),
    })
}
