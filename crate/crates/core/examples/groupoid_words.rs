//! Words in a finitely presented groupoid: reduction, composition and underlying orbit maps.

use parcohom::groupoid::skeleta;

fn main() {
    let p = skeleta::s11();
    for issue in p.validate() {
        println!("invalid: {issue}");
    }
    let b = p.object("b").unwrap();
    let w = p.word(b, &["t", "g", "g^-1", "t"]).unwrap();
    println!("{} reduces to {}", p.show_word(&w), p.show_word(&p.reduce_word(&w).unwrap()));

    let loop_ = p.word(b, &["g", "t"]).unwrap();
    let into_b0 = p.word(b, &["p0"]).unwrap();
    let path = p.concat(&into_b0, &loop_).unwrap();
    let target = p.word_target(&path).unwrap();
    println!("{} ends at {}", p.show_word(&path), p.objects[target].name);
    println!("invertible: {}", p.is_invertible(&path));
    let f = p.underlying_orbit_map(&path).unwrap();
    println!("underlying orbit map collapses {} points", p.group.quotient_index(&f));
    let inv = p.inverse_word(&loop_).unwrap();
    println!("inverse of {} is {}", p.show_word(&loop_), p.show_word(&inv));
}
