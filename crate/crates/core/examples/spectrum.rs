//! Exact energy levels of the model for a few parameter choices.
//!
//!     cargo run --example spectrum

use dunkl_qes::dunkl::ParitySector;
use dunkl_qes::model::{energy_level_expr, spectrum, ModelParams, PdmModel};
use dunkl_qes::scalar::{format_rational, int, ratio};

fn main() -> dunkl_qes::Result<()> {
    let symbolic = ModelParams::symbolic();
    for n in 0..3 {
        println!("E_{n} = {}", energy_level_expr(n, &symbolic));
    }
    println!();

    for (mu, a, m0) in [(ratio(0, 1), 1, 1), (ratio(1, 4), 2, 1), (ratio(1, 2), 1, 2)] {
        let model = PdmModel::new(mu.clone(), int(a), int(m0))?;
        println!("mu = {}, a = {a}, m0 = {m0}", format_rational(&mu));
        for sector in ParitySector::BOTH {
            for level in spectrum(&model, 4, sector).levels {
                println!(
                    "  {sector:>4} n = {}  E = {:>8}  solvable = {:<5}  det = {}",
                    level.n,
                    format_rational(&level.energy),
                    level.solvable,
                    format_rational(&level.solvability_residual)
                );
            }
        }
    }
    Ok(())
}
