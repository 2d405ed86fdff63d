//! Degree-two groups with Weyl coefficients next to the closed form.

use weylext::extcalc::{expected_ext2, Engine, ExtQuery};

fn main() -> weylext::Result<()> {
    let engine = Engine::new();
    println!("a\tb\tk\tExt^2\tclosed form");
    for a in 1..=3 {
        for b in 2..=5 {
            for k in 2..=4.min(b) {
                let got = engine.ext(&ExtQuery::weyl(a, b, k, 2)?)?;
                println!("{a}\t{b}\t{k}\t{}\t{}", got.group, expected_ext2(a, b, k));
            }
        }
    }
    Ok(())
}
