//! Solve a handful of fibered 1D problems at fixed h and compare the two
//! assemblies (direct finite differences vs the weighted quotient), the
//! kernel residual and the variational upper bound.

use pauli_annulus::{
    solve_scalar_potential, AnnulusGeometry, FiberProblem, Formulation, RadialField,
};

fn main() -> pauli_annulus::Result<()> {
    let geom = AnnulusGeometry::new(1.0, 2.0)?;
    let field = RadialField::constant(geom, 1.0)?;
    let pot = solve_scalar_potential(geom, &field, 4096)?;

    let h = 0.1;
    println!("h = {h}, n = 4096");
    println!("m~     lambda1 (weighted)  lambda1 (direct)    residual    upper bound");
    for m in -3..=3 {
        let mt = m as f64;
        let w = FiberProblem::new(h, mt, &pot, &field, 4096, Formulation::Weighted)?;
        let d = FiberProblem::new(h, mt, &pot, &field, 4096, Formulation::Direct)?;
        let sw = w.solve()?;
        let sd = d.solve()?;
        println!(
            "{m:>3}    {:.12e}  {:.12e}  {:.3e}  {:.12e}",
            sw.lambda1, sd.lambda1, sw.kernel_residual, sw.upper_bound
        );
    }
    Ok(())
}
