//! Solve the scalar potential on the unit-width annulus with a constant
//! field and print its landmark values next to the closed form.

use pauli_annulus::{solve_scalar_potential, AnnulusGeometry, RadialField};

fn main() -> pauli_annulus::Result<()> {
    let geom = AnnulusGeometry::new(1.0, 2.0)?;
    let field = RadialField::constant(geom, 1.0)?;
    let pot = solve_scalar_potential(geom, &field, 4096)?;
    let f = pot.features();

    let ln2 = 2f64.ln();
    let r_min_exact = (3.0 / (2.0 * ln2)).sqrt();
    let phi = |r: f64| r * r / 4.0 - 3.0 / (4.0 * ln2) * r.ln() - 0.25;

    println!("quantity        solved             closed form");
    println!("r_min           {:.15}  {:.15}", f.r_min, r_min_exact);
    println!("phi_min         {:.15} {:.15}", f.phi_min, phi(r_min_exact));
    println!("dn_inner        {:.15}", f.dn_inner);
    println!("dn_outer        {:.15}", f.dn_outer);
    println!();

    // the potential is negative inside and vanishes on both boundaries
    for i in 0..=8 {
        let r = 1.0 + i as f64 / 8.0;
        println!("phi({r:.3}) = {:+.12}", pot.phi_at(r)?);
    }
    Ok(())
}
