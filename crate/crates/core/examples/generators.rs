//! The cochains Γ and γ, their orders, and the image of Γ under φ.

use weylext::extcalc::{source_generator, target_generator, Engine};

fn main() -> weylext::Result<()> {
    let (a, b) = (1, 4);
    println!("Γ = {}", source_generator(a, b)?.render(" ⊗ "));
    println!("γ = {}", target_generator(a, b)?.render(" ⊗ "));
    let engine = Engine::new();
    for (a, b) in [(1, 3), (2, 3), (2, 4), (3, 4)] {
        let mut report = engine.check_generators(a, b)?;
        report.extend(engine.phi_check(a, b)?);
        for check in &report.checks {
            println!("{check}");
        }
    }
    Ok(())
}
