//! Area spectral efficiency against density with its upper and lower bounds.
//!
//! cargo run --release --example ase_scaling

use cellscale::analytic::{ase_exact, ase_lower, ase_upper, QuadratureSpec};
use cellscale::cli::log_grid;
use cellscale::model::db_to_linear;
use cellscale::{NetworkConfig, PathlossModel};

fn main() -> cellscale::Result<()> {
    let quad = QuadratureSpec::default();
    let template = NetworkConfig::new(1.0, 4.0, db_to_linear(10.0), 100.0)?;
    println!(
        "{:>10} {:>11} {:>11} {:>11} {:>11} {:>11}",
        "lambda", "upm", "g1", "g2", "lower", "upper"
    );
    for lambda in log_grid(1e-4, 10.0, 21) {
        let cfg = template.with_lambda(lambda);
        let a = |m| ase_exact(&cfg, m, &quad).map(|a| a.value);
        println!(
            "{lambda:>10.3e} {:>11.4e} {:>11.4e} {:>11.4e} {:>11.4e} {:>11.4e}",
            a(PathlossModel::Unbounded)?,
            a(PathlossModel::BoundedG1)?,
            a(PathlossModel::BoundedG2)?,
            ase_lower(&cfg)?.value.max(0.0),
            ase_upper(&cfg)?.value,
        );
    }
    Ok(())
}
