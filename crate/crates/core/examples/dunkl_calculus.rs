//! Reflection, parity splitting and the Dunkl derivative, exactly on
//! polynomials and approximately on a symmetric grid.
//!
//!     cargo run --example dunkl_calculus

use dunkl_qes::dunkl::{dunkl_apply_grid, dunkl_derivative, DunklParam, GridFunction, Reflect};
use dunkl_qes::poly::Poly;
use dunkl_qes::scalar::ratio;

fn main() -> dunkl_qes::Result<()> {
    let mu = DunklParam::new(ratio(1, 3))?;
    let p = Poly::from_ints(&[1, 2, 0, -1, 4]);
    let (even, odd) = p.parity_decompose();
    println!("p        = {}", p.format_in("x"));
    println!("R p      = {}", p.reflect().format_in("x"));
    println!("even/odd = {} | {}", even.format_in("x"), odd.format_in("x"));
    println!("D p      = {}", dunkl_derivative(&p, &mu).format_in("x"));

    let f = |x: f64| 1.0 + 2.0 * x - x.powi(3) + 4.0 * x.powi(4);
    let exact = |x: f64| 2.0 + 2.0 * mu.as_f64() * 2.0 - 3.0 * x * x - 2.0 * mu.as_f64() * x * x + 16.0 * x.powi(3);
    let mut previous = None;
    for h in [0.1, 0.05, 0.025, 0.0125] {
        let g = GridFunction::sample((1.5 / h) as usize, h, f)?;
        let d = dunkl_apply_grid(&g, &mu);
        let err = g
            .nodes()
            .iter()
            .zip(d.values.values())
            .filter(|(x, _)| x.abs() <= 1.0)
            .map(|(x, v)| (v - exact(*x)).abs())
            .fold(0.0, f64::max);
        match previous {
            Some(e) => println!("h = {h:<7} max error {err:.3e}  ratio {:.3}", e / err),
            None => println!("h = {h:<7} max error {err:.3e}"),
        }
        previous = Some(err);
    }
    Ok(())
}
