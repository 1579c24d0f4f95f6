//! Command-line driver. All numerical work lives in the library; this file
//! only parses arguments, dispatches and maps errors to exit codes.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pauli_annulus::config::RunConfig;
use pauli_annulus::error::Error;
use pauli_annulus::output;
use pauli_annulus::spectrum::{ab_sweep, assemble, convergence_study, SpectrumRequest};
use pauli_annulus::{
    alpha_k, flux_at_scale, smallest_eigenvalues, spectral_log_scale, theta_inner_circulation,
    PrefactorLaw, TridiagonalSym,
};

#[derive(Parser)]
#[command(name = "pauli-annulus", version, about = "Semiclassical spectrum of the \
Dirichlet-Pauli operator on an annulus with a radial magnetic field")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Path to the JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides the config's output.directory).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the fiber solves; results are identical for any
    /// value. Falls back to PAULI_ANNULUS_THREADS, then to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the scalar potential and write its profile and invariants.
    Potential,
    /// Solve the fibered eigenvalue problems over the gauge-centered window.
    Fiber,
    /// Evaluate the limiting prefactor law and its min-max values.
    Asymptotics,
    /// Assemble the low-lying spectrum and compare with the prediction.
    Spectrum,
    /// Sweep h and track the flux-driven oscillation of the ground prefactor.
    AbSweep,
    /// Track the prefactor ratios along the h list.
    Converge,
    /// Run the built-in invariant suite on the configured problem.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 2,
        Error::Json(_) => 3,
        Error::Config(_) | Error::Domain(_) => 4,
        Error::Guard(_) | Error::Resolution(_) | Error::Internal(_) => 5,
    }
}

fn threads(cli: &Cli) -> usize {
    cli.threads
        .or_else(|| {
            std::env::var("PAULI_ANNULUS_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0)
}

fn run(cli: &Cli) -> pauli_annulus::Result<()> {
    let config_path = cli
        .config
        .as_deref()
        .ok_or_else(|| Error::Config("--config <path> is required".into()))?;
    let cfg = RunConfig::load(config_path)?;
    let out_dir: PathBuf = cli
        .out
        .clone()
        .or_else(|| cfg.output.directory.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    let field = cfg.field()?;
    let pot = cfg.potential(&field)?;
    let gauge = cfg.gauge_data(&pot, &field)?;
    let req = SpectrumRequest {
        pot: &pot,
        field: &field,
        gauge,
        k_max: cfg.experiment.k_max,
        n_grid: cfg.numerics.n_grid,
        formulation: cfg.formulation(),
        initial_half_width: cfg.numerics.m_half_width,
        threads: threads(cli),
    };
    output::write_file(&out_dir, "summary.json", &output::summary_json(&pot, &gauge))?;
    match cli.command {
        Command::Potential => {
            output::write_file(&out_dir, "phi.csv", &output::phi_csv(&pot))?;
            let f = pot.features();
            println!(
                "phi_min = {:.12}  r_min = {:.12}  dn_inner = {:.12}  dn_outer = {:.12}",
                f.phi_min, f.r_min, f.dn_inner, f.dn_outer
            );
        }
        Command::Fiber => {
            let scales = assemble_all(&req, &cfg.experiment.h_list)?;
            output::write_file(&out_dir, "fibers.csv", &output::fibers_csv(&scales))?;
            for sc in &scales {
                println!("h = {}: {} fibers solved", sc.h, sc.fibers.len());
            }
        }
        Command::Asymptotics => {
            let csv = asymptotics_csv(&req, &cfg.experiment.h_list)?;
            output::write_file(&out_dir, "asymptotics.csv", &csv)?;
            let law = PrefactorLaw::new(&pot)?;
            println!("continuous minimizer x* = {:.12}", law.continuous_minimizer());
        }
        Command::Spectrum => {
            let scales = assemble_all(&req, &cfg.experiment.h_list)?;
            output::write_file(&out_dir, "fibers.csv", &output::fibers_csv(&scales))?;
            output::write_file(&out_dir, "spectrum.csv", &output::spectrum_csv(&scales))?;
            for sc in &scales {
                let l = &sc.levels[0];
                println!(
                    "h = {}: lambda_1 mantissa {:.6e} at m = {}, ratio to prediction {:.6}",
                    sc.h, l.value.mantissa, l.m, l.ratio
                );
            }
        }
        Command::AbSweep => {
            let points = ab_sweep(&req, &cfg.experiment.h_list)?;
            output::write_file(&out_dir, "absweep.csv", &output::absweep_csv(&points))?;
            println!("{} sweep points written", points.len());
        }
        Command::Converge => {
            let study = convergence_study(&req, &cfg.experiment.h_list)?;
            output::write_file(&out_dir, "converge.csv", &output::converge_csv(&study))?;
            for (k, mono) in study.monotone.iter().enumerate() {
                println!(
                    "k = {}: |ratio - 1| {} along the h list",
                    k + 1,
                    if *mono { "decreases" } else { "is not monotone" }
                );
            }
        }
        Command::Selftest => {
            let report = selftest(&req, &out_dir)?;
            print!("{report}");
        }
    }
    Ok(())
}

fn assemble_all(
    req: &SpectrumRequest,
    h_list: &[f64],
) -> pauli_annulus::Result<Vec<pauli_annulus::SpectrumAtScale>> {
    h_list.iter().map(|&h| assemble(req, h)).collect()
}

/// `h,gamma_frac,k,alpha,log_scale`: the predicted low-lying levels.
fn asymptotics_csv(req: &SpectrumRequest, h_list: &[f64]) -> pauli_annulus::Result<String> {
    use std::fmt::Write as _;
    let law = PrefactorLaw::new(req.pot)?;
    let phi_min = req.pot.features().phi_min;
    let mut s = String::from("h,gamma_frac,k,alpha,log_scale\r\n");
    for &h in h_list {
        let flux = flux_at_scale(&req.gauge, h)?;
        for k in 1..=req.k_max {
            let a = alpha_k(&law, flux.gamma_frac, k)?;
            let _ = writeln!(
                s,
                "{:.16e},{:.16e},{},{:.16e},{:.16e}\r",
                h,
                flux.gamma_frac,
                k,
                a.value,
                spectral_log_scale(phi_min, h),
            );
        }
    }
    Ok(s)
}

/// Quick invariant checks on the configured problem. Any failure is an
/// internal error; success writes selftest.csv and returns the report.
fn selftest(req: &SpectrumRequest, out_dir: &Path) -> pauli_annulus::Result<String> {
    let mut rows: Vec<(&str, bool, String)> = Vec::new();
    let geom = req.pot.geometry();
    let f = req.pot.features();

    let phi_bc = req.pot.phi_at(geom.rho1())?.abs().max(req.pot.phi_at(geom.rho2())?.abs());
    rows.push(("phi_boundary_zero", phi_bc < 1e-12, format!("{phi_bc:.3e}")));
    rows.push(("phi_min_negative", f.phi_min < 0.0, format!("{:.6}", f.phi_min)));
    rows.push((
        "r_min_interior",
        f.r_min > geom.rho1() && f.r_min < geom.rho2(),
        format!("{:.6}", f.r_min),
    ));
    rows.push((
        "normal_derivatives_positive",
        f.dn_inner > 0.0 && f.dn_outer > 0.0,
        format!("{:.6}, {:.6}", f.dn_inner, f.dn_outer),
    ));
    let theta = theta_inner_circulation(geom);
    rows.push(("theta_circulation_negative", theta < 0.0, format!("{theta:.6}")));

    let law = PrefactorLaw::new(req.pot)?;
    let flux = flux_at_scale(&req.gauge, 0.1)?;
    rows.push((
        "gamma_frac_in_unit_interval",
        (0.0..1.0).contains(&flux.gamma_frac),
        format!("{:.6}", flux.gamma_frac),
    ));
    let a1 = alpha_k(&law, flux.gamma_frac, 1)?;
    let a2 = alpha_k(&law, flux.gamma_frac, 2)?;
    rows.push((
        "alpha_k_monotone",
        a1.value > 0.0 && a2.value >= a1.value,
        format!("{:.6} <= {:.6}", a1.value, a2.value),
    ));

    // eigensolver sanity on a known matrix: eigenvalues 1 and 3
    let m = TridiagonalSym::new(vec![2.0, 2.0], vec![1.0])?;
    let ev = smallest_eigenvalues(&m, 2)?;
    rows.push((
        "eigensolver_2x2",
        (ev[0] - 1.0).abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12,
        format!("{:.12}, {:.12}", ev[0], ev[1]),
    ));

    let mut csv = String::from("check,pass,detail\r\n");
    let mut report = String::new();
    let mut all_pass = true;
    for (name, pass, detail) in &rows {
        all_pass &= pass;
        csv.push_str(&format!("{name},{pass},\"{detail}\"\r\n"));
        report.push_str(&format!(
            "{} {name} ({detail})\n",
            if *pass { "PASS" } else { "FAIL" }
        ));
    }
    output::write_file(out_dir, "selftest.csv", &csv)?;
    if !all_pass {
        return Err(Error::Internal("selftest failed; see report above".into()));
    }
    Ok(report)
}
