//! Subgroups, cosets and orbit maps of a small group.

use parcohom::group::FiniteGroup;

fn main() {
    let g = FiniteGroup::cyclic(4);
    println!("{} has order {}", g.name(), g.order());
    let subs = g.subgroups();
    for h in &subs {
        let cosets: Vec<&str> = g.cosets(h).into_iter().map(|c| g.element_name(c)).collect();
        println!("  {}  cosets {:?}", g.show(h), cosets);
    }
    let (e, c2) = (&subs[0], &subs[1]);
    for f in g.orbit_maps(e, c2) {
        println!("G/e → G/{}: iso = {}, fiber size {}", g.show(c2), g.is_iso(&f), g.quotient_index(&f));
    }
    let auts = g.orbit_maps(e, e);
    let f = g.compose(&auts[1], &auts[3]).unwrap();
    println!("composite of two translations is an iso: {}", g.is_iso(&f));
}
