//! Coverage probability against BS density for unbounded and bounded pathloss.
//!
//! cargo run --release --example coverage_curve

use cellscale::analytic::{cp_g1_lower, cp_g1_upper, cp_g2, cp_g1_quadrature, cp_upm, QuadratureSpec};
use cellscale::cli::log_grid;
use cellscale::model::db_to_linear;
use cellscale::NetworkConfig;

fn main() -> cellscale::Result<()> {
    let quad = QuadratureSpec::default();
    let tau = db_to_linear(10.0);
    println!(
        "{:>10} {:>9} {:>9} {:>9} {:>9} {:>9}",
        "lambda", "upm", "g1", "g1 low", "g1 up", "g2"
    );
    for lambda in log_grid(1e-6, 10.0, 15) {
        let cfg = NetworkConfig::new(lambda, 4.0, tau, db_to_linear(20.0))?;
        println!(
            "{lambda:>10.3e} {:>9.5} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            cp_upm(&cfg)?.value,
            cp_g1_quadrature(&cfg, &quad)?.value,
            cp_g1_lower(&cfg)?.value,
            cp_g1_upper(&cfg)?.value,
            cp_g2(&cfg, &quad)?.value,
        );
    }
    Ok(())
}
