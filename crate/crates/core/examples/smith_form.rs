//! Smith form, cokernels and lattice membership on a small matrix.

use weylext::zlinalg::{cokernel, coset_order, hermite_solve, int_vec, rank_mod_p, smith_normal_form, IntMatrix};

fn main() -> weylext::Result<()> {
    let e = IntMatrix::from_rows(&[vec![3, 3, 0], vec![-2, 0, 2], vec![0, -3, -3]]);
    let snf = smith_normal_form(&e);
    println!("{e}");
    println!("rank {}, invariant factors {:?}", snf.rank, snf.invariant_factors);
    println!("cokernel {}", cokernel(&e, 3)?);
    for p in [2, 3, 5] {
        println!("rank mod {p}: {}", rank_mod_p(&e, p)?);
    }

    let v = int_vec(&[1, 0, 0]);
    println!("order of (1,0,0): {:?}", coset_order(&e, &v)?);
    let w = int_vec(&[3, -2, 0]);
    println!("(3,-2,0) = e·{:?}", hermite_solve(&e, &w)?);
    Ok(())
}
