//! Symmetric tridiagonal matrices and a deterministic Sturm-sequence
//! bisection eigensolver for their algebraically smallest eigenvalues.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSym {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalSym {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::domain(
                "tridiagonal needs offdiag exactly one shorter than diag",
            ));
        }
        if diag.iter().chain(offdiag.iter()).any(|v| !v.is_finite()) {
            return Err(Error::guard("non-finite matrix entry"));
        }
        Ok(Self { diag, offdiag })
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.size();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut radius = 0.0;
            if i > 0 {
                radius += self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                radius += self.offdiag[i].abs();
            }
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sturm count via the LDL^T
    /// recurrence, with the standard pivot floor).
    pub fn count_below(&self, x: f64) -> usize {
        let pivmin = self.pivmin();
        let mut count = 0;
        let mut d = 1.0f64;
        for i in 0..self.size() {
            let off2 = if i > 0 {
                self.offdiag[i - 1] * self.offdiag[i - 1]
            } else {
                0.0
            };
            d = self.diag[i] - x - off2 / d;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn pivmin(&self) -> f64 {
        let maxoff2 = self
            .offdiag
            .iter()
            .fold(0.0f64, |m, b| m.max(b * b));
        (maxoff2 * f64::EPSILON * f64::EPSILON).max(f64::MIN_POSITIVE)
    }

    /// Rayleigh quotient v^T A v / v^T v.
    pub fn rayleigh_quotient(&self, v: &[f64]) -> f64 {
        assert_eq!(v.len(), self.size());
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..v.len() {
            num += self.diag[i] * v[i] * v[i];
            if i + 1 < v.len() {
                num += 2.0 * self.offdiag[i] * v[i] * v[i + 1];
            }
            den += v[i] * v[i];
        }
        num / den
    }
}

/// The `k` algebraically smallest eigenvalues, each bisected to relative
/// tolerance 1e-12 (with an absolute floor). Deterministic: no RNG, fixed
/// iteration order.
pub fn smallest_eigenvalues(mat: &TridiagonalSym, k: usize) -> Result<Vec<f64>> {
    if k > mat.size() {
        return Err(Error::domain(format!(
            "requested {k} eigenvalues of a size-{} matrix",
            mat.size()
        )));
    }
    let (glo, ghi) = mat.gershgorin();
    let mut out = Vec::with_capacity(k);
    for j in 1..=k {
        // invariant: count_below(lo) < j <= count_below(hi)
        let mut lo = glo;
        let mut hi = ghi + (ghi - glo).abs() * f64::EPSILON + f64::MIN_POSITIVE;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if mat.count_below(mid) >= j {
                hi = mid;
            } else {
                lo = mid;
            }
            let width = hi - lo;
            if width <= 1e-12 * lo.abs().max(hi.abs()) + 1e-300 {
                break;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let m = TridiagonalSym::new(vec![3.0; 7], vec![0.0; 6]).unwrap();
        let ev = smallest_eigenvalues(&m, 7).unwrap();
        for v in ev {
            assert!((v - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn discrete_dirichlet_laplacian() {
        // -u'' on [0,1], n = 1000 intervals: lambda_j = (2/dr^2)(1 - cos(j pi dr))
        let n = 1000usize;
        let dr = 1.0 / n as f64;
        let size = n - 1;
        let m = TridiagonalSym::new(
            vec![2.0 / (dr * dr); size],
            vec![-1.0 / (dr * dr); size - 1],
        )
        .unwrap();
        let ev = smallest_eigenvalues(&m, 10).unwrap();
        for (j, v) in ev.iter().enumerate() {
            let exact = 2.0 / (dr * dr) * (1.0 - ((j + 1) as f64 * std::f64::consts::PI * dr).cos());
            assert!(
                (v - exact).abs() <= 1e-10 * exact,
                "j={} got {v} want {exact}",
                j + 1
            );
        }
    }

    #[test]
    fn rejects_too_many_eigenvalues() {
        let m = TridiagonalSym::new(vec![1.0, 2.0], vec![0.5]).unwrap();
        assert!(smallest_eigenvalues(&m, 3).is_err());
    }

    #[test]
    fn rejects_nonfinite() {
        assert!(TridiagonalSym::new(vec![1.0, f64::NAN], vec![0.0]).is_err());
        assert!(TridiagonalSym::new(vec![1.0], vec![0.5]).is_err());
    }

    #[test]
    fn count_below_brackets_eigenvalues() {
        // 2x2 with known eigenvalues 1 and 3
        let m = TridiagonalSym::new(vec![2.0, 2.0], vec![1.0]).unwrap();
        assert_eq!(m.count_below(0.5), 0);
        assert_eq!(m.count_below(2.0), 1);
        assert_eq!(m.count_below(4.0), 2);
        let ev = smallest_eigenvalues(&m, 2).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-12);
        assert!((ev[1] - 3.0).abs() < 1e-12);
    }
}
