//! Checks the block decompositions of a few differentials.

use weylext::combinatorics::Hook;
use weylext::resolution::{block_check, skew_block_check};
use weylext::tableaux::CoefficientModule;

fn main() -> weylext::Result<()> {
    let m = CoefficientModule::Weyl(Hook::new(2, 3)?.shift(2)?);
    println!("{}", block_check(2, 3, 2, &m)?);
    println!("{}", skew_block_check(2, 4, 3, 2)?);
    Ok(())
}
