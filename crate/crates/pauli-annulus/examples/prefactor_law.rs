//! The limiting prefactor function f and its order statistics alpha_k.

use pauli_annulus::{alpha_k, f_eval, solve_scalar_potential, AnnulusGeometry, PrefactorLaw, RadialField};

fn main() -> pauli_annulus::Result<()> {
    let geom = AnnulusGeometry::new(1.0, 2.0)?;
    let field = RadialField::constant(geom, 1.0)?;
    let pot = solve_scalar_potential(geom, &field, 4096)?;
    let law = PrefactorLaw::new(&pot)?;

    println!("continuous minimizer x* = {:.12}", law.continuous_minimizer());
    println!("uniform floor of f      = {:.12}", law.floor());
    println!();

    println!(" m    f(m)");
    for m in -4..=4 {
        println!("{m:>3}   {:.12}", f_eval(&law, m as f64));
    }
    println!();

    // the k-th eigenvalue prefactor is the k-th smallest lattice value;
    // gamma shifts the lattice and drives the flux oscillation
    for gamma in [0.0, 0.25, 0.5] {
        print!("gamma = {gamma:.2}:");
        for k in 1..=4 {
            let a = alpha_k(&law, gamma, k)?;
            print!("  alpha_{k} = {:.6} (m = {:?})", a.value, a.realizing);
        }
        println!();
    }
    Ok(())
}
