//! Twisted cohomology of non-equivariant complexes, checked against covering spaces.

use parcohom::abelian::cohomology;
use parcohom::local::{compare, spaces, twisted_cochain, Character};
use parcohom::mackey::Coefficient;
use parcohom::rep::Sign;

fn main() {
    let cases = [
        ("RP^2", spaces::rp2(), vec![Sign::Minus]),
        ("RP^3", spaces::rp3(), vec![Sign::Minus]),
        ("T^2", spaces::torus(), vec![Sign::Minus, Sign::Plus]),
        ("S^1", spaces::circle(), vec![Sign::Minus]),
    ];
    for (name, x, signs) in cases {
        let chi = Character { signs };
        for n in [Coefficient::Integers, Coefficient::F2] {
            let groups: Vec<String> =
                cohomology(&twisted_cochain(&x, &chi, n).unwrap()).unwrap().iter().map(|g| g.to_string()).collect();
            let r = compare(&x, &chi, n).unwrap();
            println!("{name} over {n}: {groups:?}  ({:?}, agrees: {})", r.oracle_kind, r.passed());
        }
    }
}
