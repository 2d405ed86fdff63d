//! Prints small differential matrices with their row and column labels.

use weylext::resolution::{diagonal_block, differential_matrix};
use weylext::tableaux::CoefficientModule;

fn show(title: &str, m: &weylext::zlinalg::IntMatrix) {
    println!("{title}");
    if let (Some(rows), Some(cols)) = (m.row_labels(), m.col_labels()) {
        println!("  columns: {}", cols.join(", "));
        println!("  rows:    {}", rows.join(", "));
    }
    print!("{m}");
    println!();
}

fn main() -> weylext::Result<()> {
    let d = |m| CoefficientModule::Skew { m, l: 0 };
    show("e^(1)(1, 3, D_4)", &differential_matrix(1, 3, 1, &d(4))?);
    show("e^(2)(1, 2, D_3)", &differential_matrix(1, 2, 2, &d(3))?);
    show("e^(2)(1, 3, D_4)", &differential_matrix(1, 3, 2, &d(4))?);
    show("B^2(1, 5, D_6)", &diagonal_block(1, 5, 2, &d(6))?);
    Ok(())
}
