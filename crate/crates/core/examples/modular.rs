//! Dimensions of degree-one groups over prime fields.

use weylext::extcalc::{expected_modular_ext1, Engine};

fn main() -> weylext::Result<()> {
    let engine = Engine::new();
    let (a, b) = (2, 5);
    println!("hook (2,1^5), dim Ext^1 over F_p");
    println!("k\tp=2\tp=3\tp=5\tp=7");
    for k in 1..=b {
        let mut row = format!("{k}");
        for p in [2, 3, 5, 7] {
            let dim = engine.modular_ext1_dim(a, b, k, p)?;
            assert_eq!(dim, expected_modular_ext1(a, b, k, p));
            row.push_str(&format!("\t{dim}"));
        }
        println!("{row}");
    }
    Ok(())
}
