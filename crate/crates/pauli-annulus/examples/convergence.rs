//! Track the ratio of the computed prefactors to the predicted alpha_k as h
//! decreases. The theory guarantees the ratio tends to 1 but gives no rate;
//! at desk scales the ratio crosses 1 and turns around before settling.

use pauli_annulus::spectrum::{convergence_study, SpectrumRequest};
use pauli_annulus::{solve_scalar_potential, AnnulusGeometry, Formulation, GaugeData, RadialField};

fn main() -> pauli_annulus::Result<()> {
    let geom = AnnulusGeometry::new(1.0, 2.0)?;
    let field = RadialField::constant(geom, 1.0)?;
    let pot = solve_scalar_potential(geom, &field, 4096)?;
    let gauge = GaugeData { circ_int_a: 0.0, c0: 0.0, p: 0 };

    let req = SpectrumRequest {
        pot: &pot,
        field: &field,
        gauge,
        k_max: 2,
        n_grid: 4096,
        formulation: Formulation::Weighted,
        initial_half_width: 8,
        threads: 0,
    };

    let study = convergence_study(&req, &[0.2, 0.15, 0.1, 0.07, 0.05])?;
    println!("h        ratio_1     ratio_2");
    for row in &study.rows {
        println!("{:<8.3} {:>9.6}  {:>9.6}", row.h, row.ratios[0], row.ratios[1]);
    }
    for (k, mono) in study.monotone.iter().enumerate() {
        println!(
            "k = {}: |ratio - 1| {}",
            k + 1,
            if *mono { "shrinks monotonically" } else { "is not monotone at these scales" }
        );
    }
    Ok(())
}
