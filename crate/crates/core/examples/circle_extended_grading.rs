//! One circle, several gradings: the same cell structure with different representations.

use parcohom::cli::cohomology_report;
use parcohom::doc::parse_input;

fn main() {
    let docs = [
        ("γ = 0", include_str!("../fixtures/s11_trivial.doc")),
        ("γ = R^{1,1}", include_str!("../fixtures/s11_r11.doc")),
        ("γ = L", include_str!("../fixtures/s11_taut.doc")),
        ("γ = χL", include_str!("../fixtures/s11_chi_taut.doc")),
    ];
    for (name, text) in docs {
        let doc = parse_input(text).unwrap();
        for coeff in ["Z", "F2"] {
            let r = cohomology_report(&doc, Some(coeff)).unwrap();
            println!("{name} over {coeff}: {}", r.human().lines().last().unwrap());
        }
    }
}
