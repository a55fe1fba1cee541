use parcohom::group::FiniteGroup;
use proptest::prelude::*;

fn klein() -> FiniteGroup {
    let names = ["e", "a", "b", "c"].map(String::from).to_vec();
    let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    FiniteGroup::from_table("V4", names, table).unwrap()
}

fn groups() -> Vec<FiniteGroup> {
    vec![FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), klein()]
}

proptest! {
    #[test]
    fn group_axioms(k in 0usize..5, x in 0usize..6, y in 0usize..6, z in 0usize..6) {
        let g = &groups()[k];
        let n = g.order();
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
        prop_assert_eq!(g.mul(g.identity(), x), x);
    }

    #[test]
    fn orbit_map_composition_is_associative(k in 0usize..5, picks in prop::collection::vec(0usize..64, 6)) {
        let g = &groups()[k];
        let subs = g.subgroups();
        let (h, l, m, n) = (&subs[picks[0] % subs.len()], &subs[picks[1] % subs.len()], &subs[picks[2] % subs.len()], &subs[picks[3] % subs.len()]);
        let (f1s, f2s, f3s) = (g.orbit_maps(h, l), g.orbit_maps(l, m), g.orbit_maps(m, n));
        prop_assume!(!f1s.is_empty() && !f2s.is_empty() && !f3s.is_empty());
        let f1 = &f1s[picks[4] % f1s.len()];
        let f2 = &f2s[picks[5] % f2s.len()];
        let f3 = &f3s[(picks[4] + picks[5]) % f3s.len()];
        let a = g.compose(f3, &g.compose(f2, f1).unwrap()).unwrap();
        let b = g.compose(&g.compose(f3, f2).unwrap(), f1).unwrap();
        prop_assert_eq!(a.clone(), b);
        for x in g.cosets(h) {
            prop_assert_eq!(g.apply(&a, x), g.apply(f3, g.apply(f2, g.apply(f1, x))));
        }
    }
}

#[test]
fn cosets_count_the_index() {
    for g in groups() {
        for h in g.subgroups() {
            assert_eq!(g.cosets(&h).len() * h.order(), g.order());
        }
    }
}

#[test]
fn cyclic_subgroup_lattices() {
    let c4 = FiniteGroup::cyclic(4);
    let shown: Vec<String> = c4.subgroups().iter().map(|h| c4.show(h)).collect();
    assert_eq!(shown.len(), 3);
    assert_eq!(c4.subgroups().iter().map(|h| h.order()).collect::<Vec<_>>(), [1, 2, 4]);
    assert_eq!(klein().subgroups().len(), 5);
    assert_eq!(FiniteGroup::cyclic(6).subgroups().len(), 4);
}

#[test]
fn bad_table_is_rejected() {
    let names = ["e", "a"].map(String::from).to_vec();
    assert!(FiniteGroup::from_table("bad", names, vec![vec![0, 1], vec![1, 1]]).is_err());
}
