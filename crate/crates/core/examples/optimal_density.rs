//! Density that maximizes the ASE, numerically and from the upper bound.
//!
//! cargo run --release --example optimal_density

use cellscale::analytic::{
    ase_exact, optimal_density_closed, optimal_density_numeric, AseObjective, DensitySearch,
    QuadratureSpec,
};
use cellscale::model::db_to_linear;
use cellscale::{NetworkConfig, PathlossModel};

fn main() -> cellscale::Result<()> {
    let quad = QuadratureSpec::default();
    for tau_db in [0.0, 10.0, 20.0] {
        let tau = db_to_linear(tau_db);
        let closed = optimal_density_closed(4.0, tau)?;
        let template = NetworkConfig::new(closed, 4.0, tau, 100.0)?;
        println!("tau = {tau_db} dB: bound maximizer {closed:.4e} BS/m^2");
        for m in [PathlossModel::BoundedG1, PathlossModel::BoundedG2] {
            let star = optimal_density_numeric(
                &template,
                AseObjective::Exact(m),
                &DensitySearch::default(),
                &quad,
            )?;
            let best = ase_exact(&template.with_lambda(star), m, &quad)?.value;
            println!("  {m}: lambda* = {star:.4e}, ASE = {best:.4e} bit/s/Hz/m^2");
        }
    }
    Ok(())
}
