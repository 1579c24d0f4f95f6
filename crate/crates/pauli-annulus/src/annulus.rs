//! The annulus and the radial magnetic field profile.

use crate::error::{Error, Result};

/// The annulus `rho1 < |x| < rho2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusGeometry {
    rho1: f64,
    rho2: f64,
}

impl AnnulusGeometry {
    pub fn new(rho1: f64, rho2: f64) -> Result<Self> {
        if !(rho1.is_finite() && rho2.is_finite()) || rho1 <= 0.0 || rho1 >= rho2 {
            return Err(Error::domain(format!(
                "annulus radii must satisfy 0 < rho1 < rho2, got rho1={rho1}, rho2={rho2}"
            )));
        }
        Ok(Self { rho1, rho2 })
    }

    pub fn rho1(&self) -> f64 {
        self.rho1
    }

    pub fn rho2(&self) -> f64 {
        self.rho2
    }

    pub fn width(&self) -> f64 {
        self.rho2 - self.rho1
    }

    pub fn contains(&self, r: f64) -> bool {
        r >= self.rho1 && r <= self.rho2
    }
}

#[derive(Debug, Clone)]
enum Profile {
    Constant(f64),
    /// Coefficients of a polynomial in r, lowest degree first.
    Polynomial(Vec<f64>),
    /// Tabulated (r, B) with monotone-cubic (Fritsch-Carlson) interpolation.
    Table {
        r: Vec<f64>,
        b: Vec<f64>,
        slopes: Vec<f64>,
    },
}

/// A strictly positive radial field profile on the annulus.
#[derive(Debug, Clone)]
pub struct RadialField {
    geom: AnnulusGeometry,
    profile: Profile,
    b0: f64,
}

/// Grid used to certify positivity and locate the infimum of a profile.
const POSITIVITY_GRID: usize = 4096;

impl RadialField {
    pub fn constant(geom: AnnulusGeometry, value: f64) -> Result<Self> {
        if !(value > 0.0) {
            return Err(Error::domain(format!(
                "constant field must be strictly positive, got {value}"
            )));
        }
        Ok(Self {
            geom,
            profile: Profile::Constant(value),
            b0: value,
        })
    }

    pub fn polynomial(geom: AnnulusGeometry, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("polynomial field needs coefficients"));
        }
        let mut field = Self {
            geom,
            profile: Profile::Polynomial(coeffs),
            b0: 0.0,
        };
        field.b0 = field.scan_infimum()?;
        Ok(field)
    }

    pub fn table(geom: AnnulusGeometry, r: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if r.len() != b.len() || r.len() < 2 {
            return Err(Error::domain("field table needs matching r/b columns, length >= 2"));
        }
        if !r.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::domain("field table radii must be strictly increasing"));
        }
        if (r[0] - geom.rho1()).abs() > 1e-12 * geom.width()
            || (r[r.len() - 1] - geom.rho2()).abs() > 1e-12 * geom.width()
        {
            return Err(Error::domain("field table must span [rho1, rho2]"));
        }
        if let Some(bad) = b.iter().find(|v| !(**v > 0.0)) {
            return Err(Error::domain(format!(
                "field table contains non-positive entry {bad}; the field must be strictly positive"
            )));
        }
        let slopes = fritsch_carlson_slopes(&r, &b);
        let mut field = Self {
            geom,
            profile: Profile::Table { r, b, slopes },
            b0: 0.0,
        };
        field.b0 = field.scan_infimum()?;
        Ok(field)
    }

    fn scan_infimum(&self) -> Result<f64> {
        let mut b0 = f64::INFINITY;
        for i in 0..=POSITIVITY_GRID {
            let t = i as f64 / POSITIVITY_GRID as f64;
            let r = self.geom.rho1() + t * self.geom.width();
            let v = self.eval_unchecked(r);
            if !(v > 0.0) {
                return Err(Error::domain(format!(
                    "field is not strictly positive: B({r}) = {v}"
                )));
            }
            b0 = b0.min(v);
        }
        Ok(b0)
    }

    fn eval_unchecked(&self, r: f64) -> f64 {
        match &self.profile {
            Profile::Constant(v) => *v,
            Profile::Polynomial(c) => c.iter().rev().fold(0.0, |acc, &ck| acc * r + ck),
            Profile::Table { r: xs, b: ys, slopes } => {
                let i = match xs.binary_search_by(|x| x.partial_cmp(&r).unwrap()) {
                    Ok(i) => i.min(xs.len() - 2),
                    Err(i) => i.saturating_sub(1).min(xs.len() - 2),
                };
                let dx = xs[i + 1] - xs[i];
                let t = (r - xs[i]) / dx;
                crate::quad::hermite(ys[i], ys[i + 1], slopes[i], slopes[i + 1], t, dx)
            }
        }
    }

    /// B(r). `r` must lie in the annulus.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if !self.geom.contains(r) {
            return Err(Error::domain(format!("r = {r} outside the annulus")));
        }
        Ok(self.eval_unchecked(r))
    }

    /// Cached infimum of B over the evaluation grid.
    pub fn b0(&self) -> f64 {
        self.b0
    }

    pub fn geometry(&self) -> AnnulusGeometry {
        self.geom
    }

    /// A field that is identically zero, bypassing the positivity checks.
    /// Lets tests switch off the magnetic terms of the fiber operators.
    #[doc(hidden)]
    pub fn flat_zero(geom: AnnulusGeometry) -> Self {
        Self {
            geom,
            profile: Profile::Constant(0.0),
            b0: 0.0,
        }
    }

    /// Circulation of the symmetric-gauge potential over the inner boundary,
    /// `2 pi * int_0^rho1 s B(s) ds`, using the profile's closed-form
    /// extension into the hole. Only defined for constant and polynomial
    /// profiles; a tabulated field carries no extension.
    pub fn symmetric_gauge_circulation(&self) -> Result<f64> {
        let rho1 = self.geom.rho1();
        match &self.profile {
            Profile::Constant(v) => Ok(std::f64::consts::PI * rho1 * rho1 * v),
            Profile::Polynomial(c) => {
                // int_0^rho1 s * sum c_j s^j ds = sum c_j rho1^{j+2}/(j+2)
                let flux: f64 = c
                    .iter()
                    .enumerate()
                    .map(|(j, cj)| cj * rho1.powi(j as i32 + 2) / (j as f64 + 2.0))
                    .sum();
                Ok(2.0 * std::f64::consts::PI * flux)
            }
            Profile::Table { .. } => Err(Error::domain(
                "symmetric_gauge requires a field with a declared extension into the hole \
                 (constant or polynomial); supply the raw circulation instead",
            )),
        }
    }
}

/// Fritsch-Carlson monotone cubic slopes.
fn fritsch_carlson_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let d: Vec<f64> = (0..n - 1)
        .map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i]))
        .collect();
    let mut m = vec![0.0; n];
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for i in 1..n - 1 {
        m[i] = if d[i - 1] * d[i] <= 0.0 {
            0.0
        } else {
            0.5 * (d[i - 1] + d[i])
        };
    }
    for i in 0..n - 1 {
        if d[i] == 0.0 {
            m[i] = 0.0;
            m[i + 1] = 0.0;
            continue;
        }
        let a = m[i] / d[i];
        let b = m[i + 1] / d[i];
        let s = a * a + b * b;
        if s > 9.0 {
            let tau = 3.0 / s.sqrt();
            m[i] = tau * a * d[i];
            m[i + 1] = tau * b * d[i];
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom() -> AnnulusGeometry {
        AnnulusGeometry::new(1.0, 2.0).unwrap()
    }

    #[test]
    fn rejects_bad_radii() {
        assert!(AnnulusGeometry::new(2.0, 1.0).is_err());
        assert!(AnnulusGeometry::new(0.0, 1.0).is_err());
        assert!(AnnulusGeometry::new(-1.0, 1.0).is_err());
    }

    #[test]
    fn rejects_nonpositive_field() {
        assert!(RadialField::constant(geom(), 0.0).is_err());
        assert!(RadialField::constant(geom(), -1.0).is_err());
        // polynomial that dips negative inside the annulus
        assert!(RadialField::polynomial(geom(), vec![3.0, -2.0]).is_err());
        assert!(RadialField::table(geom(), vec![1.0, 1.5, 2.0], vec![1.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn polynomial_eval_and_infimum() {
        let f = RadialField::polynomial(geom(), vec![0.0, 1.0]).unwrap(); // B(r) = r
        assert!((f.eval(1.5).unwrap() - 1.5).abs() < 1e-15);
        assert!((f.b0() - 1.0).abs() < 1e-12);
        assert!(f.eval(0.5).is_err());
    }

    #[test]
    fn table_interpolates_nodes_exactly() {
        let r = vec![1.0, 1.25, 1.5, 1.75, 2.0];
        let b: Vec<f64> = r.iter().map(|x| 1.0 + x * x).collect();
        let f = RadialField::table(geom(), r.clone(), b.clone()).unwrap();
        for (x, y) in r.iter().zip(&b) {
            assert!((f.eval(*x).unwrap() - y).abs() < 1e-14);
        }
    }

    #[test]
    fn symmetric_gauge_circulation_constant() {
        let f = RadialField::constant(geom(), 1.0).unwrap();
        assert!((f.symmetric_gauge_circulation().unwrap() - std::f64::consts::PI).abs() < 1e-15);
        let tab = RadialField::table(geom(), vec![1.0, 2.0], vec![1.0, 1.0]).unwrap();
        assert!(tab.symmetric_gauge_circulation().is_err());
    }
}
