//! Exponential decay envelopes of the ASE bounds past the optimal density.
//!
//! cargo run --release --example scaling_law

use cellscale::analytic::{optimal_density_closed, scaling_envelope_check};
use cellscale::cli::log_grid;
use cellscale::model::db_to_linear;

fn main() -> cellscale::Result<()> {
    let tau = db_to_linear(10.0);
    let l0 = optimal_density_closed(4.0, tau)?;
    let report = scaling_envelope_check(4.0, tau, &log_grid(l0, 10.0 * l0, 11))?;
    println!(
        "kappa_U = {:.5}, kappa_L = {:.5}, m = {:.4e}, M = {:.4e}",
        report.kappa_upper, report.kappa_lower, report.m, report.big_m
    );
    println!("{:>10} {:>12} {:>12} {:>8} {:>5}", "lambda", "A^U ratio", "A^L ratio", "Q2/Q1", "ok");
    for e in &report.entries {
        println!(
            "{:>10.4} {:>12.6} {:>12.6e} {:>8.4} {:>5}",
            e.lambda, e.upper_ratio, e.lower_ratio, e.q_ratio, e.pass
        );
    }
    Ok(())
}
