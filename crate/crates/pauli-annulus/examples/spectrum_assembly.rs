//! Assemble the low-lying spectrum of the full operator from the fibers and
//! compare each level with the predicted alpha_k sqrt(h) e^{2 phi_min / h}.

use pauli_annulus::spectrum::{assemble, SpectrumRequest};
use pauli_annulus::{solve_scalar_potential, AnnulusGeometry, Formulation, GaugeData, RadialField};

fn main() -> pauli_annulus::Result<()> {
    let geom = AnnulusGeometry::new(1.0, 2.0)?;
    let field = RadialField::constant(geom, 1.0)?;
    let pot = solve_scalar_potential(geom, &field, 4096)?;
    let circ = field.symmetric_gauge_circulation()?;
    let gauge = GaugeData::new(&pot, circ, 0);

    let req = SpectrumRequest {
        pot: &pot,
        field: &field,
        gauge,
        k_max: 3,
        n_grid: 4096,
        formulation: Formulation::Weighted,
        initial_half_width: 8,
        threads: 0,
    };

    for h in [0.2, 0.1, 0.05] {
        let sc = assemble(&req, h)?;
        println!("h = {h}  (gamma = {:.4}, log scale = {:.4})", sc.gamma_frac, sc.log_scale);
        println!("  k   m     mantissa        predicted alpha_k   ratio");
        for l in &sc.levels {
            println!(
                "  {}  {:>3}   {:.10}    {:.10}      {:.6}",
                l.k, l.m, l.value.mantissa, l.alpha, l.ratio
            );
        }
    }
    Ok(())
}
