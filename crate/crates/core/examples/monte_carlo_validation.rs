//! Simulated coverage against the analytical value, with z-scores.
//!
//! cargo run --release --example monte_carlo_validation

use cellscale::analytic::{cp_exact, QuadratureSpec};
use cellscale::mc::{estimate_cp, SimParams, DEFAULT_WINDOW_K};
use cellscale::model::db_to_linear;
use cellscale::{NetworkConfig, PathlossModel};

fn main() -> cellscale::Result<()> {
    let quad = QuadratureSpec::default();
    let tau = db_to_linear(10.0);
    println!(
        "{:>5} {:>8} {:>10} {:>10} {:>9} {:>7}",
        "model", "lambda", "analytic", "simulated", "stderr", "z"
    );
    // Unbounded pathloss is scale-free, so one seed gives the same estimate
    // at every density.
    for model in [PathlossModel::Unbounded, PathlossModel::BoundedG1, PathlossModel::BoundedG2] {
        for lambda in [1e-3, 0.05, 0.3] {
            let cfg = NetworkConfig::new(lambda, 4.0, tau, 100.0)?;
            let params = SimParams::for_config(&cfg, model, DEFAULT_WINDOW_K, 100_000, 42)?;
            let est = estimate_cp(&cfg, model, &params)?;
            let cp = cp_exact(&cfg, model, &quad)?.value;
            println!(
                "{:>5} {lambda:>8} {cp:>10.5} {:>10.5} {:>9.5} {:>7.2}",
                model.tag(),
                est.mean,
                est.stderr,
                est.z_score(cp)
            );
        }
    }
    Ok(())
}
