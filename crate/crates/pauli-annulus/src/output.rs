//! Deterministic CSV and JSON report writers. All floats are written with 17
//! significant digits so round-tripping is exact; column orders are frozen
//! and versioned through `FORMAT_VERSION`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::gauge::GaugeData;
use crate::potential::ScalarPotential;
use crate::spectrum::{AbPoint, ConvergenceStudy, SpectrumAtScale};

pub const FORMAT_VERSION: u32 = 1;

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// `r,phi,dphi` over the solver grid.
pub fn phi_csv(pot: &ScalarPotential) -> String {
    let mut s = String::from("r,phi,dphi\r\n");
    for i in 0..pot.phi_nodes().len() {
        let (r, phi, dphi) = pot.node(i);
        let _ = writeln!(s, "{},{},{}\r", num(r), num(phi), num(dphi));
    }
    s
}

/// `h,m,m_tilde,j,log_scale,mantissa,kernel_residual,upper_bound_mantissa`
/// for every fiber of every scale, eigenvalue indices j = 1, 2. Residual and
/// upper bound are per fiber, repeated on both rows.
pub fn fibers_csv(scales: &[SpectrumAtScale]) -> String {
    let mut s =
        String::from("h,m,m_tilde,j,log_scale,mantissa,kernel_residual,upper_bound_mantissa\r\n");
    for sc in scales {
        for f in &sc.fibers {
            let ub_mantissa = (f.solved.upper_bound.ln() - sc.log_scale).exp();
            for (j, lambda) in [(1, f.solved.lambda1), (2, f.solved.lambda2)] {
                let mantissa = if lambda > 0.0 {
                    (lambda.ln() - sc.log_scale).exp()
                } else {
                    0.0
                };
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}\r",
                    num(sc.h),
                    f.m,
                    num(f.m_tilde),
                    j,
                    num(sc.log_scale),
                    num(mantissa),
                    num(f.solved.kernel_residual),
                    num(ub_mantissa),
                );
            }
        }
    }
    s
}

/// `h,k,m,j,log_scale,mantissa,numeric_prefactor,alpha,ratio` for the
/// assembled levels.
pub fn spectrum_csv(scales: &[SpectrumAtScale]) -> String {
    let mut s = String::from("h,k,m,j,log_scale,mantissa,numeric_prefactor,alpha,ratio\r\n");
    for sc in scales {
        for l in &sc.levels {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{}\r",
                num(sc.h),
                l.k,
                l.m,
                l.j,
                num(l.value.log_scale),
                num(l.value.mantissa),
                num(l.numeric_prefactor),
                num(l.alpha),
                num(l.ratio),
            );
        }
    }
    s
}

/// `h,gamma_frac,numeric_prefactor,predicted_prefactor`.
pub fn absweep_csv(points: &[AbPoint]) -> String {
    let mut s = String::from("h,gamma_frac,numeric_prefactor,predicted_prefactor\r\n");
    for p in points {
        let _ = writeln!(
            s,
            "{},{},{},{}\r",
            num(p.h),
            num(p.gamma_frac),
            num(p.numeric_prefactor),
            num(p.predicted_prefactor),
        );
    }
    s
}

/// `h,k,ratio,abs_deviation` with one row per (scale, level).
pub fn converge_csv(study: &ConvergenceStudy) -> String {
    let mut s = String::from("h,k,ratio,abs_deviation\r\n");
    for row in &study.rows {
        for (i, r) in row.ratios.iter().enumerate() {
            let _ = writeln!(
                s,
                "{},{},{},{}\r",
                num(row.h),
                i + 1,
                num(*r),
                num((r - 1.0).abs()),
            );
        }
    }
    s
}

/// The gauge-invariant scalars of the run.
pub fn summary_json(pot: &ScalarPotential, gauge: &GaugeData) -> String {
    let f = pot.features();
    let v = serde_json::json!({
        "format_version": FORMAT_VERSION,
        "software_version": env!("CARGO_PKG_VERSION"),
        "phi_min": f.phi_min,
        "r_min": f.r_min,
        "curvature": f.curvature,
        "dn_inner": f.dn_inner,
        "dn_outer": f.dn_outer,
        "circulation": gauge.circ_int_a,
        "c0": gauge.c0,
        "p": gauge.p,
    });
    serde_json::to_string_pretty(&v).expect("summary serialization cannot fail")
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), contents)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::{AnnulusGeometry, RadialField};
    use crate::potential::solve_scalar_potential;

    #[test]
    fn phi_csv_round_trips() {
        let geom = AnnulusGeometry::new(1.0, 2.0).unwrap();
        let field = RadialField::constant(geom, 1.0).unwrap();
        let pot = solve_scalar_potential(geom, &field, 128).unwrap();
        let csv = phi_csv(&pot);
        let mut lines = csv.split("\r\n");
        assert_eq!(lines.next().unwrap(), "r,phi,dphi");
        let first: Vec<f64> = lines
            .next()
            .unwrap()
            .split(',')
            .map(|v| v.parse().unwrap())
            .collect();
        let (r0, phi0, dphi0) = pot.node(0);
        assert_eq!(first[0], r0);
        assert_eq!(first[1], phi0);
        // 17 significant digits reconstruct the f64 exactly
        assert_eq!(first[2], dphi0);
    }

    #[test]
    fn summary_contains_invariants() {
        let geom = AnnulusGeometry::new(1.0, 2.0).unwrap();
        let field = RadialField::constant(geom, 1.0).unwrap();
        let pot = solve_scalar_potential(geom, &field, 256).unwrap();
        let gauge = GaugeData::new(&pot, std::f64::consts::PI, 0);
        let text = summary_json(&pot, &gauge);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in [
            "format_version",
            "software_version",
            "phi_min",
            "r_min",
            "curvature",
            "dn_inner",
            "dn_outer",
            "c0",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert!((v["c0"].as_f64().unwrap() - (-1.082021)).abs() < 1e-4);
    }
}
