mod common;

use common::{fixture, grps, LOCAL_FIXTURES};
use num_bigint::BigInt;
use parcohom::abelian::{cohomology, CochainComplex, CochainGroup, FGAbGroup, IntMatrix};
use parcohom::local::{
    check_character, compare, spaces, twisted_cochain, Character, LocalError, NonEquivCW, OracleKind,
};
use parcohom::mackey::Coefficient;
use parcohom::rep::Sign;
use proptest::prelude::*;

const COEFFS: [Coefficient; 4] = [Coefficient::Integers, Coefficient::F2, Coefficient::Mod(4), Coefficient::Mod(3)];

fn chi(signs: &[i64]) -> Character {
    Character { signs: signs.iter().map(|&s| if s < 0 { Sign::Minus } else { Sign::Plus }).collect() }
}

fn all_characters(x: &NonEquivCW) -> Vec<Character> {
    let k = x.pi1.generators.len();
    (0..1usize << k)
        .map(|mask| chi(&(0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect::<Vec<_>>()))
        .filter(|c| check_character(x, c).is_ok())
        .collect()
}

fn direct(x: &NonEquivCW, c: &Character, n: Coefficient) -> Vec<FGAbGroup> {
    cohomology(&twisted_cochain(x, c, n).unwrap()).unwrap()
}

#[test]
fn direct_matches_the_cover_on_standard_spaces() {
    let cases = [
        ("rp2", spaces::rp2()),
        ("rp3", spaces::rp3()),
        ("s2", spaces::s2()),
        ("torus", spaces::torus()),
        ("circle", spaces::circle()),
    ];
    for (name, x) in &cases {
        for c in all_characters(x) {
            for n in COEFFS {
                let r = compare(x, &c, n).unwrap();
                assert!(r.passed(), "{name} {c:?} over {n}: {:?}", r.mismatches);
            }
        }
    }
}

#[test]
fn fixture_documents_match_their_oracles() {
    for name in LOCAL_FIXTURES {
        let doc = fixture(name);
        let l = doc.local().unwrap();
        for n in COEFFS {
            let r = compare(&l.space, &l.character, n).unwrap();
            assert!(r.passed(), "{name} over {n}: {:?}", r.mismatches);
        }
    }
}

#[test]
fn finite_fundamental_groups_use_the_universal_cover() {
    let x = spaces::rp3();
    let r = compare(&x, &chi(&[-1]), Coefficient::Integers).unwrap();
    assert_eq!(r.oracle_kind, OracleKind::UniversalCover);
    let t = spaces::torus();
    let r = compare(&t, &chi(&[-1, 1]), Coefficient::Integers).unwrap();
    assert_eq!(r.oracle_kind, OracleKind::CharacterCover);
}

#[test]
fn known_twisted_groups() {
    let cases: [(NonEquivCW, &[i64], &[&str]); 6] = [
        (spaces::rp2(), &[-1], &["0", "Z/2", "Z"]),
        (spaces::rp2(), &[1], &["Z", "0", "Z/2"]),
        (spaces::rp3(), &[-1], &["0", "Z/2", "0", "Z/2"]),
        (spaces::rp3(), &[1], &["Z", "0", "Z/2", "Z"]),
        (spaces::torus(), &[-1, 1], &["0", "Z/2", "Z/2"]),
        (spaces::torus(), &[1, 1], &["Z", "Z^2", "Z"]),
    ];
    for (x, signs, want) in cases {
        assert_eq!(direct(&x, &chi(signs), Coefficient::Integers), grps(want), "{signs:?}");
    }
}

#[test]
fn trivial_character_gives_ordinary_cohomology() {
    let cases: [(NonEquivCW, &[&str]); 5] = [
        (spaces::rp2(), &["Z", "0", "Z/2"]),
        (spaces::rp3(), &["Z", "0", "Z/2", "Z"]),
        (spaces::s2(), &["Z", "0", "Z"]),
        (spaces::torus(), &["Z", "Z^2", "Z"]),
        (spaces::circle(), &["Z", "Z"]),
    ];
    for (x, want) in cases {
        assert_eq!(direct(&x, &Character::trivial(&x.pi1), Coefficient::Integers), grps(want));
    }
}

/// Cochains of the free resolution `Z[t,t⁻¹] --(t−1)--> Z[t,t⁻¹]` with `t` acting by `s`.
fn laurent_oracle(s: i64) -> Vec<FGAbGroup> {
    let groups = vec![CochainGroup::new(vec![BigInt::from(0)]); 2];
    let d = IntMatrix::from_rows(&[vec![s - 1]]);
    cohomology(&CochainComplex::new(groups, vec![d]).unwrap()).unwrap()
}

#[test]
fn circle_agrees_with_the_laurent_resolution() {
    let x = spaces::circle();
    for s in [1, -1] {
        assert_eq!(direct(&x, &chi(&[s]), Coefficient::Integers), laurent_oracle(s));
    }
    assert_eq!(laurent_oracle(-1), grps(&["0", "Z/2"]));
}

#[test]
fn characters_violating_a_relation_are_rejected() {
    let mut x = NonEquivCW::new(&["g"]);
    x.add_relation(&["g", "g", "g"], &[]).unwrap();
    x.add_cell("e0", 0);
    assert!(matches!(check_character(&x, &chi(&[-1])), Err(LocalError::CharacterInvalid(_))));
    assert!(check_character(&x, &chi(&[1])).is_ok());
    assert!(matches!(check_character(&x, &chi(&[1, 1])), Err(LocalError::CharacterInvalid(_))));
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

/// Presentation complex of `⟨a, b | w⟩`, with 2-cell incidences from Fox derivatives.
fn presentation_complex(w: &[(usize, bool)]) -> NonEquivCW {
    let names = ["a", "b"];
    let letter = |&(g, inv): &(usize, bool)| if inv { format!("{}^-1", names[g]) } else { names[g].to_string() };
    let word: Vec<String> = w.iter().map(letter).collect();
    let mut x = NonEquivCW::new(&names);
    x.add_relation(&refs(&word), &[]).unwrap();
    x.add_cell("e0", 0);
    x.add_cell("a", 1);
    x.add_cell("b", 1);
    x.add_cell("e2", 2);
    x.add_incidence("a", "e0", &[(1, &["a"]), (-1, &[])]).unwrap();
    x.add_incidence("b", "e0", &[(1, &["b"]), (-1, &[])]).unwrap();
    for (g, name) in names.iter().enumerate() {
        let mut terms: Vec<(i64, Vec<String>)> = Vec::new();
        for (i, &(h, inv)) in w.iter().enumerate() {
            if h != g {
                continue;
            }
            if inv {
                terms.push((-1, word[..=i].to_vec()));
            } else {
                terms.push((1, word[..i].to_vec()));
            }
        }
        let owned: Vec<(i64, Vec<&str>)> = terms.iter().map(|(d, p)| (*d, refs(p))).collect();
        let borrowed: Vec<(i64, &[&str])> = owned.iter().map(|(d, p)| (*d, p.as_slice())).collect();
        x.add_incidence("e2", name, &borrowed).unwrap();
    }
    x
}

fn exponent_sum(w: &[(usize, bool)], g: usize) -> i64 {
    w.iter().filter(|(h, _)| *h == g).map(|(_, inv)| if *inv { -1 } else { 1 }).sum()
}

fn euler_characteristic(groups: &[FGAbGroup]) -> i64 {
    groups
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let rank = g.generator_orders().iter().filter(|o| **o == BigInt::from(0)).count() as i64;
            if k % 2 == 0 { rank } else { -rank }
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn presentation_complexes_match_the_cover(
        w in prop::collection::vec((0usize..2, any::<bool>()), 1..7),
        sa in prop::bool::ANY,
        sb in prop::bool::ANY,
        k in 0usize..4,
    ) {
        let x = presentation_complex(&w);
        prop_assert!(x.validate().is_empty(), "{:?}", x.validate());
        let c = chi(&[if sa { -1 } else { 1 }, if sb { -1 } else { 1 }]);
        let parity = (sa as i64) * exponent_sum(&w, 0) + (sb as i64) * exponent_sum(&w, 1);
        prop_assert_eq!(check_character(&x, &c).is_ok(), parity % 2 == 0);
        prop_assume!(parity % 2 == 0);
        let r = compare(&x, &c, COEFFS[k]).unwrap();
        prop_assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn euler_characteristic_ignores_the_character(
        w in prop::collection::vec((0usize..2, any::<bool>()), 1..7),
        sa in prop::bool::ANY,
        sb in prop::bool::ANY,
    ) {
        let x = presentation_complex(&w);
        let c = chi(&[if sa { -1 } else { 1 }, if sb { -1 } else { 1 }]);
        prop_assume!(check_character(&x, &c).is_ok());
        let q = cohomology(&twisted_cochain(&x, &c, Coefficient::Integers).unwrap()).unwrap();
        prop_assert_eq!(euler_characteristic(&q), 0);
    }

    #[test]
    fn lens_skeleta_match_the_universal_cover(n in 1usize..9, twist in prop::bool::ANY, k in 0usize..4) {
        prop_assume!(!twist || n % 2 == 0);
        let mut x = NonEquivCW::new(&["g"]);
        let power = vec!["g"; n];
        x.add_relation(&power, &[]).unwrap();
        x.add_cell("e0", 0);
        x.add_cell("e1", 1);
        x.add_cell("e2", 2);
        x.add_incidence("e1", "e0", &[(1, &["g"]), (-1, &[])]).unwrap();
        let prefixes: Vec<(i64, &[&str])> = (0..n).map(|i| (1, &power[..i])).collect();
        x.add_incidence("e2", "e1", &prefixes).unwrap();
        let c = chi(&[if twist { -1 } else { 1 }]);
        let r = compare(&x, &c, COEFFS[k]).unwrap();
        prop_assert_eq!(r.oracle_kind, OracleKind::UniversalCover);
        prop_assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn characters_are_multiplicative(
        w in prop::collection::vec((0usize..2, any::<bool>()), 0..8),
        v in prop::collection::vec((0usize..2, any::<bool>()), 0..8),
        sa in prop::bool::ANY,
        sb in prop::bool::ANY,
    ) {
        let x = NonEquivCW::new(&["a", "b"]);
        let names = ["a", "b"];
        let letters = |u: &[(usize, bool)]| -> Vec<String> {
            u.iter().map(|&(g, inv)| if inv { format!("{}^-1", names[g]) } else { names[g].to_string() }).collect()
        };
        let (lw, lv) = (letters(&w), letters(&v));
        let joined: Vec<&str> = lw.iter().chain(&lv).map(String::as_str).collect();
        let pw = x.pi1.word(0, &lw.iter().map(String::as_str).collect::<Vec<_>>()).unwrap();
        let pv = x.pi1.word(0, &lv.iter().map(String::as_str).collect::<Vec<_>>()).unwrap();
        let pj = x.pi1.word(0, &joined).unwrap();
        let c = chi(&[if sa { -1 } else { 1 }, if sb { -1 } else { 1 }]);
        prop_assert_eq!(c.eval(&pj), c.eval(&pw) * c.eval(&pv));
    }
}
