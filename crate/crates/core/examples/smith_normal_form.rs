//! Smith normal form and the cohomology of a small cochain complex.

use num_bigint::BigInt;
use parcohom::abelian::{cohomology, smith_normal_form, CochainComplex, CochainGroup, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&a);
    println!("{a}\nhas invariant factors {:?}", snf.diagonal());

    let free = |k| CochainGroup::new(vec![BigInt::from(0); k]);
    let d0 = IntMatrix::from_rows(&[vec![2], vec![2]]);
    let d1 = IntMatrix::from_rows(&[vec![1, -1]]);
    let cx = CochainComplex::new(vec![free(1), free(2), free(1)], vec![d0, d1]).unwrap();
    for (n, g) in cohomology(&cx).unwrap().iter().enumerate() {
        println!("H^{n} = {g}");
    }
}
