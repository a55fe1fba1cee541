//! The group of virtual representations of a fundamental groupoid.

use parcohom::groupoid::skeleta;
use parcohom::rep::{classify_representations, constant_representation, validate_representation};

fn main() {
    for (name, p) in [("S^{1,1}", skeleta::s11()), ("P(R^{3,1})", skeleta::rp2_twist()), ("RP^∞ stage", skeleta::rp_infinity_stage())] {
        let c = classify_representations(&p).unwrap();
        println!("{name}: {} with {} generators", c.group, c.generators.len());
    }
    let p = skeleta::s11();
    let r11 = constant_representation(&p, 1, 1);
    let issues = validate_representation(&p, &r11).unwrap();
    println!("constant R^{{1,1}} valid: {}", issues.is_empty());
    let b = p.object("b").unwrap();
    let w = p.word(b, &["g"]).unwrap();
    println!("monodromy around g: {}", r11.monodromy(&p, &w).unwrap());
}
