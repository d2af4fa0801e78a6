//! Lowest eigenvalues of the discretized Dunkl Hamiltonian, with constant
//! and position-dependent mass, compared against the exact levels.
//!
//!     cargo run --release --example grid_eigen

use std::f64::consts::FRAC_PI_2;

use dunkl_qes::dunkl::{DunklParam, ParitySector};
use dunkl_qes::grid::{grid_eigen, GridSpec, MassProfile};
use dunkl_qes::model::{energy_level, PdmModel};
use dunkl_qes::scalar::{int, ratio, to_f64};

fn main() -> dunkl_qes::Result<()> {
    let free = MassProfile::Constant { m0: 1.0 };
    let zero = DunklParam::new(int(0))?;
    for n in [250, 500, 1000, 2000] {
        let e = grid_eigen(free, &zero, ParitySector::Even, GridSpec::new(FRAC_PI_2, n)?, 3)?;
        println!("box, N = {n:>4}: {:.8} {:.8} {:.8}", e[0], e[1], e[2]);
    }
    println!("exact:          0.5        4.5        12.5\n");

    let mu = DunklParam::new(ratio(1, 2))?;
    for sector in ParitySector::BOTH {
        let e = grid_eigen(free, &mu, sector, GridSpec::new(FRAC_PI_2, 1000)?, 3)?;
        println!("box, mu = 1/2, {sector}: {e:.6?}");
    }

    // The quadratic mass profile: the exact levels are negative, so the
    // Dirichlet box only brackets how the grid operator behaves.
    let model = PdmModel::new(int(0), int(1), int(1))?;
    let e = grid_eigen(model.mass(), model.mu(), ParitySector::Even, GridSpec::new(4.0, 800)?, 3)?;
    println!("\nPDM, a = m0 = 1, L = 4: {e:.6?}");
    let formula: Vec<f64> = (0..3).map(|n| to_f64(&energy_level(n, &model))).collect();
    println!("energy formula:         {formula:?}");
    Ok(())
}
