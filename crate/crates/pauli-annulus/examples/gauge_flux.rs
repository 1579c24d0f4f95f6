//! Gauge bookkeeping: the flux constant c0 and the fractional flux gamma(h)
//! for the symmetric gauge of a constant field. gamma(h) is what makes the
//! ground prefactor oscillate as h decreases.

use pauli_annulus::{
    flux_at_scale, solve_scalar_potential, theta_inner_circulation, AnnulusGeometry, GaugeData,
    RadialField,
};

fn main() -> pauli_annulus::Result<()> {
    let geom = AnnulusGeometry::new(1.0, 2.0)?;
    let field = RadialField::constant(geom, 1.0)?;
    let pot = solve_scalar_potential(geom, &field, 4096)?;

    let circ = field.symmetric_gauge_circulation()?;
    let gauge = GaugeData::new(&pot, circ, 0);
    println!("inner circulation of the symmetric gauge: {circ:.12}");
    println!("flux constant c0 = {:.12}", gauge.c0);
    println!(
        "harmonic circulation basis: inner loop integral {:.12}",
        theta_inner_circulation(geom)
    );
    println!();

    println!("h        c0/h          gamma(h)");
    let mut h = 0.2;
    while h > 0.02 {
        let flux = flux_at_scale(&gauge, h)?;
        println!("{h:<8.4} {:>12.6} {:>9.6}", gauge.c0 / h, flux.gamma_frac);
        h *= 0.9;
    }
    Ok(())
}
