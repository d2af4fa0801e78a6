//! Polynomial eigenfunctions from the two-term coefficient recursion, and
//! the time-dependent state `psi(x, t) = e^{-iEt} P_n(x)`.
//!
//!     cargo run --example wavefunction

use dunkl_qes::dunkl::ParitySector;
use dunkl_qes::model::{assemble_wavefunction, wavefunction, DegeneratePolicy, PdmModel};
use dunkl_qes::scalar::{format_rational, int, ratio};
use dunkl_qes::QesError;

fn main() -> dunkl_qes::Result<()> {
    let model = PdmModel::new(ratio(1, 4), int(2), int(1))?;
    for n in 0..4 {
        let w = wavefunction(&model, n, ParitySector::Even, DegeneratePolicy::Abort)?;
        let b: Vec<_> = w.b().iter().map(format_rational).collect();
        println!("n = {n}  E = {}  b = [{}]", format_rational(&w.energy), b.join(", "));
        println!("  P(x) = {}", w.x_polynomial().format_in("x"));
    }

    let w = wavefunction(&model, 1, ParitySector::Even, DegeneratePolicy::Abort)?;
    println!("\n  x      re psi      im psi   (t = 0.5)");
    for i in 0..=8 {
        let x = -2.0 + 0.5 * i as f64;
        let psi = assemble_wavefunction(&w, x, 0.5);
        println!("{x:5.2} {:>11.6} {:>11.6}", psi.re, psi.im);
    }

    // For the unit model the level-2 recursion hits 0/0 at k = 1. Abort
    // reports it; NullSpace follows the exact kernel instead.
    let unit = PdmModel::new(int(0), int(1), int(1))?;
    match wavefunction(&unit, 2, ParitySector::Even, DegeneratePolicy::Abort) {
        Err(QesError::SingularDenominator { k, .. }) => println!("\nunit model, n = 2: singular at k = {k}"),
        other => println!("\nunit model, n = 2: {other:?}"),
    }
    let w = wavefunction(&unit, 2, ParitySector::Even, DegeneratePolicy::NullSpace)?;
    let b: Vec<_> = w.b().iter().map(format_rational).collect();
    println!("null-space coefficients: [{}]", b.join(", "));
    Ok(())
}
