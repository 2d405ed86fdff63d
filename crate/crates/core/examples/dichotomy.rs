//! Degree-one groups along the chain Δ(h(k+1)), D_{a+k} ⊗ Λ^{b-k}, Δ(h(k)).
//!
//! For k >= 2 exactly one of the outer two groups is Z_2. At k = 1 the
//! lower group is Z_{a+b}, so neither pattern occurs.

use weylext::extcalc::{Engine, ExtQuery};

fn main() -> weylext::Result<()> {
    let engine = Engine::new();
    for (a, b) in [(1, 4), (2, 4), (2, 5)] {
        for k in 1..b {
            let g = |q| engine.ext(&q).map(|r| r.group);
            let upper = g(ExtQuery::weyl(a, b, k + 1, 1)?)?;
            let middle = g(ExtQuery::skew(a, b, k, 1)?)?;
            let lower = g(ExtQuery::weyl(a, b, k, 1)?)?;
            println!("a={a} b={b} k={k}: ({upper}, {middle}, {lower})");
        }
    }
    Ok(())
}
