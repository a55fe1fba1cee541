//! Cohomology of a one-cell complex with Z and F2 coefficients, read from a document.

use parcohom::abelian::cohomology;
use parcohom::cw::{assemble_cochain, check_d_squared, underlying_matrix};
use parcohom::mackey::{constant_mackey, Coefficient};

fn main() {
    let doc = parcohom::doc::parse_input(include_str!("../fixtures/disk_r11.doc")).unwrap();
    let c = doc.complex().unwrap();
    for n in [Coefficient::Integers, Coefficient::F2] {
        let m = constant_mackey(n, &c.presentation);
        let cx = assemble_cochain(c, &m).unwrap();
        println!("over {n}: d = {:?}", cx.differentials[0].to_i64_rows().unwrap());
        println!("  d∘d = 0: {}", check_d_squared(c, &m).unwrap().0);
        let groups: Vec<String> = cohomology(&cx).unwrap().iter().map(|g| g.to_string()).collect();
        println!("  H = {groups:?}");
    }
    let entry = &c.boundary[0];
    for row in underlying_matrix(c, entry).unwrap() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("underlying row {cells:?}");
    }
}
