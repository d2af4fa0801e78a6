//! The sl(2) generators as differential operators and as matrices on the
//! polynomials of degree at most n.
//!
//!     cargo run --example sl2_representation

use dunkl_qes::expr::ParamExpr;
use dunkl_qes::model::AlphaParams;
use dunkl_qes::scalar::Rational;
use dunkl_qes::sl2::{
    determinant_condition, generator_matrix, Sl2Coefficients, generator_operator, match_model_coefficients, qes_matrix, Generator,
};

fn main() -> dunkl_qes::Result<()> {
    let n = 3;
    for g in Generator::ALL {
        let op = generator_operator::<Rational>(g, n);
        println!("{} = {}", g.name(), op.format_in("z"));
        println!("{}", generator_matrix(g, n));
    }

    let [p, z, m] = Generator::ALL.map(|g| generator_matrix(g, n));
    println!("[J0, J+] == J+     {}", z.commutator(&p)? == p);
    println!("[J+, J-] == -2 J0  {}", p.commutator(&m)? == z.scale(&Rational::from_integer((-2).into())));

    // Matching the model operator against the general quadratic element.
    let alpha = AlphaParams::symbolic();
    let (coefficients, constraint) = match_model_coefficients(&alpha, 1);
    println!("\nconstraint at n = 1: {constraint} = 0");
    for (name, c) in Sl2Coefficients::<ParamExpr>::NAMES.iter().zip(coefficients.to_array()) {
        println!("  {name:>3} = {c}");
    }
    let level_one = qes_matrix(&alpha.with_constraint(1), 1, true)?;
    println!("\nn = 1 matrix:\n{}", level_one.matrix);
    println!("determinant: {}", determinant_condition(&level_one));
    Ok(())
}
