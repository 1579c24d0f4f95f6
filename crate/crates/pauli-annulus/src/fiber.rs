//! The fibered 1D operators at fixed real angular momentum
//! `m_tilde = m - gamma_{h,p}`: finite-difference assembly in the direct
//! form and in the weighted Rayleigh-quotient form, the Sturm eigensolve,
//! the kernel-residual diagnostic and the variational upper bound.

use crate::annulus::RadialField;
use crate::error::{Error, Result};
use crate::potential::ScalarPotential;
use crate::scaled::spectral_log_scale;
use crate::tridiag::{smallest_eigenvalues, TridiagonalSym};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    Direct,
    Weighted,
}

/// Spin block selector: `Minus` carries the -hB term whose ground states
/// are exponentially small; `Plus` carries +hB and sits above 2hB0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Minus,
    Plus,
}

/// Largest admissible 2|phi_min|/h before exp(-2(phi-phi_min)/h) leaves the
/// double-precision exponent range.
const EXPONENT_GUARD: f64 = 700.0;

/// Effective real angular momentum `(m - p) - c0/h`, computed with the
/// integer subtraction done first so that fibers with equal `m - p` are
/// bitwise identical for any conjugation index p.
pub fn m_tilde(m: i64, p: i64, c0: f64, h: f64) -> f64 {
    (m - p) as f64 - c0 / h
}

/// One fibered eigenvalue problem at fixed (h, m_tilde).
#[derive(Debug, Clone, Copy)]
pub struct FiberProblem<'a> {
    h: f64,
    m_tilde: f64,
    pot: &'a ScalarPotential,
    field: &'a RadialField,
    n_grid: usize,
    formulation: Formulation,
    /// Include the -h^2/(4 r^2) half-integer shift term; tests switch it
    /// off to recover the plain interval Laplacian.
    centrifugal: bool,
}

/// Result of one fiber solve.
#[derive(Debug, Clone, Copy)]
pub struct FiberSpectrum {
    pub lambda1: f64,
    pub lambda2: f64,
    /// lambda1 / (sqrt(h) e^{2 phi_min / h}), computed in log space.
    pub prefactor1: f64,
    pub kernel_residual: f64,
    pub upper_bound: f64,
    pub grid_used: usize,
    pub formulation: Formulation,
}

impl<'a> FiberProblem<'a> {
    pub fn new(
        h: f64,
        m_tilde: f64,
        pot: &'a ScalarPotential,
        field: &'a RadialField,
        n_grid: usize,
        formulation: Formulation,
    ) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::domain(format!("h must be positive, got {h}")));
        }
        if n_grid < 128 {
            return Err(Error::domain(format!("n_grid must be >= 128, got {n_grid}")));
        }
        if !m_tilde.is_finite() {
            return Err(Error::domain("m_tilde must be finite"));
        }
        let depth = 2.0 * pot.features().phi_min.abs() / h;
        if depth > EXPONENT_GUARD {
            return Err(Error::guard(format!(
                "2|phi_min|/h = {depth:.1} exceeds the double-precision exponent budget of \
                 {EXPONENT_GUARD}; increase h"
            )));
        }
        Ok(Self {
            h,
            m_tilde,
            pot,
            field,
            n_grid,
            formulation,
            centrifugal: true,
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn m_tilde(&self) -> f64 {
        self.m_tilde
    }

    pub fn n_grid(&self) -> usize {
        self.n_grid
    }

    pub fn formulation(&self) -> Formulation {
        self.formulation
    }

    #[doc(hidden)]
    pub fn set_centrifugal(&mut self, on: bool) {
        self.centrifugal = on;
    }

    fn geom_nodes(&self) -> (f64, f64) {
        let g = self.pot.geometry();
        let dr = g.width() / self.n_grid as f64;
        (g.rho1(), dr)
    }

    fn node_r(&self, i: usize) -> f64 {
        let (rho1, dr) = self.geom_nodes();
        if i == self.n_grid {
            self.pot.geometry().rho2()
        } else {
            rho1 + i as f64 * dr
        }
    }

    /// Central second-order discretization of the chosen spin block of the
    /// fibered operator, with Dirichlet rows eliminated:
    /// diag_i = 2h^2/dr^2 - h^2/(4 r_i^2) + (h m~/r_i - phi'(r_i))^2 -+ h B(r_i),
    /// offdiag = -h^2/dr^2.
    pub fn assemble_direct(&self, spin: Spin) -> Result<TridiagonalSym> {
        let (_, dr) = self.geom_nodes();
        let h = self.h;
        let kin = h * h / (dr * dr);
        let size = self.n_grid - 1;
        let mut diag = Vec::with_capacity(size);
        for i in 1..self.n_grid {
            let r = self.node_r(i);
            let dphi = self.pot.dphi_at(r)?;
            let b = self.field.eval(r)?;
            let shift = if self.centrifugal {
                h * h / (4.0 * r * r)
            } else {
                0.0
            };
            let potential = (h * self.m_tilde / r - dphi).powi(2);
            let magnetic = match spin {
                Spin::Minus => -h * b,
                Spin::Plus => h * b,
            };
            diag.push(2.0 * kin - shift + potential + magnetic);
        }
        TridiagonalSym::new(diag, vec![-kin; size - 1])
    }

    /// First-order edge discretization of the weighted quotient
    /// `h^2 int w |(d_r - (m~+1/2)/r) v|^2 / int w |v|^2` with the scaled
    /// weight `w = exp(-2(phi - phi_min)/h)` at edge midpoints and a lumped
    /// trapezoid mass at the interior nodes.
    pub fn assemble_weighted(&self) -> Result<(TridiagonalSym, Vec<f64>)> {
        let (_, dr) = self.geom_nodes();
        let h = self.h;
        let phi_min = self.pot.features().phi_min;
        let n = self.n_grid;
        let size = n - 1;
        let a = 1.0 / dr;
        let mut diag = vec![0.0; size];
        let mut off = vec![0.0; size - 1];
        for e in 0..n {
            let r_left = self.node_r(e);
            let r_mid = r_left + 0.5 * dr;
            let w = (-2.0 * (self.pot.phi_at(r_mid)? - phi_min) / h).exp();
            let scale = h * h * dr * w;
            let b = (self.m_tilde + 0.5) / (2.0 * r_mid);
            // D v on edge e = (a - b) v_{e+1} - (a + b) v_e, boundary v = 0
            let cii = (a + b) * (a + b);
            let cjj = (a - b) * (a - b);
            let cij = -(a + b) * (a - b);
            if e >= 1 {
                diag[e - 1] += scale * cii;
            }
            if e + 1 <= size {
                diag[e] += scale * cjj;
            }
            if e >= 1 && e + 1 <= size {
                off[e - 1] += scale * cij;
            }
        }
        let mut mass = Vec::with_capacity(size);
        for i in 1..n {
            let w = (-2.0 * (self.pot.phi_at(self.node_r(i))? - phi_min) / h).exp();
            mass.push(dr * w);
        }
        if mass.iter().all(|m| *m == 0.0) {
            return Err(Error::Resolution(
                "all mass weights underflowed; the grid cannot resolve the Gaussian well at \
                 this h, increase n_grid"
                    .into(),
            ));
        }
        Ok((TridiagonalSym::new(diag, off)?, mass))
    }

    /// The weighted generalized problem reduced to a standard symmetric
    /// tridiagonal via the diagonal mass.
    pub fn assemble_weighted_reduced(&self) -> Result<TridiagonalSym> {
        let (stiff, mass) = self.assemble_weighted()?;
        let s: Vec<f64> = mass.iter().map(|m| 1.0 / m.sqrt()).collect();
        if s.iter().any(|v| !v.is_finite()) {
            return Err(Error::Resolution(
                "mass weight underflowed to zero; increase n_grid or h".into(),
            ));
        }
        let diag: Vec<f64> = stiff
            .diag()
            .iter()
            .zip(&s)
            .map(|(d, si)| d * si * si)
            .collect();
        let off: Vec<f64> = stiff
            .offdiag()
            .iter()
            .enumerate()
            .map(|(i, o)| o * s[i] * s[i + 1])
            .collect();
        TridiagonalSym::new(diag, off)
    }

    fn matrix(&self) -> Result<TridiagonalSym> {
        match self.formulation {
            Formulation::Direct => self.assemble_direct(Spin::Minus),
            Formulation::Weighted => self.assemble_weighted_reduced(),
        }
    }

    /// Weighted residual of the continuum kernel monomial
    /// `u0 = exp(-(phi - phi_min)/h) r^{m~+1/2}` under the discrete adjoint
    /// Dirac operator, relative to ||u0||.
    pub fn kernel_residual(&self) -> Result<f64> {
        let (_, dr) = self.geom_nodes();
        let h = self.h;
        let phi_min = self.pot.features().phi_min;
        let n = self.n_grid;
        let mut u = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let r = self.node_r(i);
            let ln_u = -(self.pot.phi_at(r)? - phi_min) / h + (self.m_tilde + 0.5) * r.ln();
            u.push(ln_u.exp());
        }
        if u.iter().all(|v| *v == 0.0) {
            return Err(Error::Resolution("kernel monomial underflowed".into()));
        }
        let mut num2 = vec![0.0; n + 1];
        for i in 1..n {
            let r = self.node_r(i);
            let du = (u[i + 1] - u[i - 1]) / (2.0 * dr);
            let dphi = self.pot.dphi_at(r)?;
            let resid = h * (du - (self.m_tilde + 0.5) / r * u[i] + dphi / h * u[i]);
            num2[i] = resid * resid;
        }
        let u2: Vec<f64> = u.iter().map(|v| v * v).collect();
        let num = crate::quad::trapezoid(&num2, dr).sqrt();
        let den = crate::quad::trapezoid(&u2, dr).sqrt();
        Ok(num / den)
    }

    /// Discrete Rayleigh quotient of the boundary-layer trial function
    /// `v = chi(r) r^{m~+1/2}`, a certified upper bound for the smallest
    /// eigenvalue of the weighted discretization. The cutoff rises over a
    /// layer of width `eps` with the optimal profile
    /// `P(tau) = (1 - e^{-2 a tau / h}) / (1 - e^{-2 a eps / h})`,
    /// `a` the normal derivative of phi at the matching boundary.
    pub fn variational_upper_bound(&self, eps: f64) -> Result<f64> {
        let g = self.pot.geometry();
        if !(eps > 0.0 && eps < g.width() / 2.0) {
            return Err(Error::domain(format!(
                "boundary layer eps = {eps} must lie in (0, {})",
                g.width() / 2.0
            )));
        }
        let (_, dr) = self.geom_nodes();
        let h = self.h;
        let f = self.pot.features();
        let phi_min = f.phi_min;
        let n = self.n_grid;
        let chi = |r: f64| -> f64 {
            let t_in = r - g.rho1();
            let t_out = g.rho2() - r;
            if t_in < eps {
                let a = f.dn_inner;
                (1.0 - (-2.0 * a * t_in / h).exp()) / (1.0 - (-2.0 * a * eps / h).exp())
            } else if t_out < eps {
                let a = f.dn_outer;
                (1.0 - (-2.0 * a * t_out / h).exp()) / (1.0 - (-2.0 * a * eps / h).exp())
            } else {
                1.0
            }
        };
        // trial vector on all nodes, zero at the boundary
        let mut v = vec![0.0; n + 1];
        for (i, vi) in v.iter_mut().enumerate().take(n).skip(1) {
            let r = self.node_r(i);
            *vi = chi(r) * ((self.m_tilde + 0.5) * r.ln()).exp();
        }
        let a = 1.0 / dr;
        let mut num = 0.0;
        for e in 0..n {
            let r_mid = self.node_r(e) + 0.5 * dr;
            let w = (-2.0 * (self.pot.phi_at(r_mid)? - phi_min) / h).exp();
            let b = (self.m_tilde + 0.5) / (2.0 * r_mid);
            let dv = (a - b) * v[e + 1] - (a + b) * v[e];
            num += h * h * dr * w * dv * dv;
        }
        let mut den = 0.0;
        for (i, vi) in v.iter().enumerate().take(n).skip(1) {
            let w = (-2.0 * (self.pot.phi_at(self.node_r(i))? - phi_min) / h).exp();
            den += dr * w * vi * vi;
        }
        if den == 0.0 {
            return Err(Error::Resolution("trial function underflowed".into()));
        }
        Ok(num / den)
    }

    /// Minimum of the variational bound over a log grid of layer widths
    /// `eps = h^e`, e in [0.55, 0.95]. Returns (bound, eps).
    pub fn optimized_upper_bound(&self) -> Result<(f64, f64)> {
        let width = self.pot.geometry().width();
        let mut best: Option<(f64, f64)> = None;
        for i in 0..=8 {
            let e = 0.55 + 0.05 * i as f64;
            let eps = self.h.powf(e).min(0.49 * width);
            let b = self.variational_upper_bound(eps)?;
            if best.map_or(true, |(bb, _)| b < bb) {
                best = Some((b, eps));
            }
        }
        Ok(best.unwrap())
    }

    /// Default boundary-layer width h^0.7 (inside the admissible window),
    /// clipped away from the annulus midline.
    pub fn default_eps(&self) -> f64 {
        self.h.powf(0.7).min(0.49 * self.pot.geometry().width())
    }

    /// Full solve: two smallest eigenvalues, normalized prefactor, kernel
    /// residual and the default variational upper bound.
    pub fn solve(&self) -> Result<FiberSpectrum> {
        let mat = self.matrix()?;
        let ev = smallest_eigenvalues(&mat, 2)?;
        let (lambda1, lambda2) = (ev[0], ev[1]);
        let scale = mat.diag().iter().fold(0.0f64, |m, d| m.max(d.abs()));
        if lambda1 < -1e-10 * scale {
            return Err(Error::internal(format!(
                "negative ground eigenvalue {lambda1} (scale {scale})"
            )));
        }
        let log_scale = spectral_log_scale(self.pot.features().phi_min, self.h);
        let prefactor1 = if lambda1 > 0.0 {
            (lambda1.ln() - log_scale).exp()
        } else {
            0.0
        };
        Ok(FiberSpectrum {
            lambda1,
            lambda2,
            prefactor1,
            kernel_residual: self.kernel_residual()?,
            upper_bound: self.variational_upper_bound(self.default_eps())?,
            grid_used: self.n_grid,
            formulation: self.formulation,
        })
    }
}
