//! Rederives the operator in z = -x^2/a^2 from the Hamiltonian and compares
//! it term by term with the model form.
//!
//!     cargo run --example z_operator

use dunkl_qes::audit::{hamiltonian_equation_operator, printed_gauged_operator, rederive_z_operator};
use dunkl_qes::dunkl::ParitySector;
use dunkl_qes::expr::{ParamExpr, Symbol};
use dunkl_qes::model::PdmModel;
use dunkl_qes::scalar::{int, ratio};

fn main() -> dunkl_qes::Result<()> {
    let model = PdmModel::new(ratio(1, 4), int(1), int(2))?;
    for sector in ParitySector::BOTH {
        let e = ParamExpr::from(Symbol::E);
        println!("\n{sector} sector");
        println!("  stationary equation: {}", hamiltonian_equation_operator(&model, sector, &e).format_in("x"));
        println!("  gauged (model form): {}", printed_gauged_operator(&model, sector).format_in("x"));
        let (z_op, checks) = rederive_z_operator(&model, sector)?;
        println!("  in z:                {}", z_op.format_in("z"));
        for c in checks {
            println!("  {:<20} {:?}", c.id, c.status);
        }
    }
    Ok(())
}
