//! Checking claimed underlying boundary matrices against the representation.

use parcohom::cw::verify_boundary_decomposition;
use parcohom::doc::parse_input;

fn main() {
    for text in [include_str!("../fixtures/s11_taut.doc"), include_str!("../fixtures/s11_taut_wrong_fiber.doc")] {
        let doc = parse_input(text).unwrap();
        let c = doc.complex().unwrap();
        for entry in &c.boundary {
            let Some(claimed) = &entry.underlying else { continue };
            let (from, to) = (&c.cells[entry.from].name, &c.cells[entry.to].name);
            match verify_boundary_decomposition(c, entry, claimed).unwrap().as_slice() {
                [] => println!("{from} → {to}: ok"),
                bad => bad.iter().for_each(|m| println!("{m}")),
            }
        }
        println!();
    }
}
