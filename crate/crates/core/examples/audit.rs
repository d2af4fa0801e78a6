//! Runs the consistency audit and prints a short summary instead of the
//! full JSON document.
//!
//!     cargo run --release --example audit -- 0.25

use dunkl_qes::audit::{audit_report, CheckStatus, Residual};
use dunkl_qes::model::PdmModel;
use dunkl_qes::scalar::{int, parse_rational};

fn main() -> dunkl_qes::Result<()> {
    let mu = match std::env::args().nth(1) {
        Some(text) => parse_rational(&text)?,
        None => int(0),
    };
    let model = PdmModel::new(mu, int(1), int(1))?;
    let report = audit_report(&model, 3)?;
    let s = report.summary();
    println!("{} pass, {} fail, {} informational", s.pass, s.fail, s.informational);
    for check in report.checks.iter().filter(|c| c.status != CheckStatus::Pass) {
        let residual = match &check.residual {
            Residual::Symbolic(text) => text.clone(),
            Residual::Numeric(value) => format!("{value:.6e}"),
        };
        let short: String = residual.chars().take(70).collect();
        println!("{:<32} {:?}  {short}", check.id, check.status);
    }
    Ok(())
}
