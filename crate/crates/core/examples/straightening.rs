//! Expands a few non-standard hook tableaux in the standard basis.

use weylext::tableaux::{straighten, DividedWord};

type Case<'a> = (&'a [(u8, u32)], &'a [u8]);

fn main() -> weylext::Result<()> {
    let cases: [Case; 4] = [
        (&[(1, 1), (2, 1)], &[1, 3]),
        (&[(2, 2)], &[1, 3]),
        (&[(1, 1), (3, 1)], &[2, 1]),
        (&[(2, 1), (3, 1)], &[1, 2, 4]),
    ];
    for (top, col) in cases {
        let d = DividedWord::new(top.to_vec())?;
        let col_text: String = col.iter().map(|l| l.to_string()).collect();
        println!("{d}/{col_text} = {}", straighten(&d, col)?.render("/"));
    }
    Ok(())
}
