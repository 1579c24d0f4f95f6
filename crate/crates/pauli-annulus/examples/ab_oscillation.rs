//! The flux oscillation: sweeping h moves gamma(h) = frac(c0/h) around the
//! unit circle, and the ground prefactor follows alpha_1(gamma) instead of
//! converging to a single number.

use pauli_annulus::spectrum::{ab_sweep, SpectrumRequest};
use pauli_annulus::{solve_scalar_potential, AnnulusGeometry, Formulation, GaugeData, RadialField};

fn main() -> pauli_annulus::Result<()> {
    let geom = AnnulusGeometry::new(1.0, 2.0)?;
    let field = RadialField::constant(geom, 1.0)?;
    let pot = solve_scalar_potential(geom, &field, 2048)?;
    let gauge = GaugeData::new(&pot, field.symmetric_gauge_circulation()?, 0);

    let req = SpectrumRequest {
        pot: &pot,
        field: &field,
        gauge,
        k_max: 1,
        n_grid: 2048,
        formulation: Formulation::Weighted,
        initial_half_width: 8,
        threads: 0,
    };

    let h_list: Vec<f64> = (0..25).map(|i| 0.16 - 0.004 * i as f64).collect();
    println!("h        gamma(h)   numeric     predicted");
    for p in ab_sweep(&req, &h_list)? {
        let bar = "#".repeat((p.numeric_prefactor * 20.0) as usize);
        println!(
            "{:<8.4} {:>8.4}  {:>9.6}  {:>9.6}  {bar}",
            p.h, p.gamma_frac, p.numeric_prefactor, p.predicted_prefactor
        );
    }
    Ok(())
}
