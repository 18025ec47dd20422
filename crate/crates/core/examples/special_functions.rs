//! Hypergeometric interference integrals and the error function.
//!
//! cargo run --example special_functions

use cellscale::specfun::{erfc, f1, f2, f3, hyf1, hyf2, HypParams};

fn main() -> cellscale::Result<()> {
    println!("{:>8} {:>14} {:>14} {:>14}", "x", "erfc(x)", "HyF1 (a=4)", "HyF2 (a=4)");
    let p = HypParams::from_alpha(4.0)?;
    for x in [0.0, 0.5, 1.0, 2.0, 10.0, 100.0] {
        println!(
            "{x:>8} {:>14.6e} {:>14.10} {:>14.10}",
            erfc(x),
            hyf1(x, p)?,
            hyf2(x, p)?
        );
    }

    // With delta = 1/2 the first family reduces to arctan(sqrt(x)) / sqrt(x).
    let x: f64 = 10.0;
    println!(
        "\nHyF1(10) = {:.15}, arctan form = {:.15}",
        hyf1(x, p)?,
        x.sqrt().atan() / x.sqrt()
    );

    println!("\n{:>8} {:>12} {:>12} {:>12}", "x", "F1", "F2", "F3");
    for x in [0.0, 0.1, 1.0, 10.0, 100.0] {
        println!("{x:>8} {:>12.6} {:>12.6} {:>12.6}", f1(x, 3.0)?, f2(x, 3.0)?, f3(x, 3.0)?);
    }
    Ok(())
}
