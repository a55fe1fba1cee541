//! One PASS/FAIL line per acceptance criterion.

mod common;

use common::*;
use parcohom::abelian::{smith_normal_form, FGAbGroup, IntMatrix};
use parcohom::cli::{cohomology_report, run, Command, CohomologyReport};
use parcohom::cw::{check_d_squared, span_sum_underlying, verify_boundary_decomposition, ClaimedMatrix};
use parcohom::doc::InputDocument;
use parcohom::groupoid::{GroupoidPresentation, PathWord};
use parcohom::local::{compare, spaces, Character};
use parcohom::mackey::{constant_mackey, Coefficient, Span, SpanSum};
use parcohom::rep::{constant_representation, validate_representation};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Check = Result<(), String>;

fn report(doc: &InputDocument, coeff: &str) -> Result<CohomologyReport, String> {
    cohomology_report(doc, Some(coeff))
}

fn expect_groups(name: &str, coeff: &str, want: &[&str]) -> Result<CohomologyReport, String> {
    let r = report(&fixture(name), coeff)?;
    let want = grps(want);
    if r.groups() != want {
        return Err(format!("{name} over {coeff}: got {:?}, want {:?}", show(&r.groups()), show(&want)));
    }
    Ok(r)
}

fn show(gs: &[FGAbGroup]) -> Vec<String> {
    gs.iter().map(|g| g.to_string()).collect()
}

fn expect_differentials(r: &CohomologyReport, want: &[Vec<Vec<i64>>]) -> Check {
    if r.differentials != want {
        return Err(format!("differentials over {}: got {:?}, want {:?}", r.coefficient, r.differentials, want));
    }
    Ok(())
}

fn criterion_1() -> Check {
    let z = expect_groups("disk_r11", "Z", &["0", "Z/2"])?;
    expect_differentials(&z, &[vec![vec![2]]])?;
    expect_groups("disk_r11", "F2", &["Z/2", "Z/2"])?;
    Ok(())
}

fn criterion_2() -> Check {
    let z = expect_groups("s11_trivial", "Z", &["Z", "0"])?;
    expect_differentials(&z, &[vec![vec![1, -1]]])?;
    expect_groups("s11_trivial", "F2", &["Z/2", "0"])?;
    Ok(())
}

fn criterion_3() -> Check {
    let z = expect_groups("s11_r11", "Z", &["0", "Z + Z/2"])?;
    expect_differentials(&z, &[vec![vec![2], vec![2]]])?;
    expect_groups("s11_r11", "F2", &["Z/2", "(Z/2)^2"])?;
    Ok(())
}

fn criterion_4() -> Check {
    let z4 = expect_groups("s11_taut", "Z", &["0", "Z/2"])?;
    expect_differentials(&z4, &[vec![vec![0, 2], vec![-1, 1]]])?;
    let f4 = expect_groups("s11_taut", "F2", &["Z/2", "Z/2"])?;
    let z2 = expect_groups("s11_taut_2cell", "Z", &["0", "Z/2"])?;
    expect_differentials(&z2, &[vec![vec![2]]])?;
    let f2 = expect_groups("s11_taut_2cell", "F2", &["Z/2", "Z/2"])?;
    if z4.groups() != z2.groups() || f4.groups() != f2.groups() {
        return Err("the two cell structures disagree".into());
    }
    Ok(())
}

fn criterion_5() -> Check {
    expect_groups("s11_chi_taut", "Z", &["0", "Z/2"])?;
    expect_groups("s11_chi_taut", "F2", &["Z/2", "Z/2"])?;
    Ok(())
}

fn criterion_6() -> Check {
    let z = expect_groups("rp2_twist", "Z", &["0", "Z/2", "0"])?;
    expect_differentials(&z, &[vec![vec![2], vec![2]], vec![vec![1, -1]]])?;
    let f = expect_groups("rp2_twist", "F2", &["Z/2", "Z/2", "0"])?;
    expect_differentials(&f, &[vec![vec![0], vec![0]], vec![vec![1, 1]]])?;
    let (code, out) = run(&Command::Cohom { coeff: Some("Z".into()) }, &fixture_text("rp2_twist"), false);
    if code != 0 || out.lines().last() != Some("n=1: Z/2; otherwise 0") {
        return Err(format!("cli output: {out:?}"));
    }
    Ok(())
}

fn criterion_7() -> Check {
    let z = expect_groups("c4_projective", "Z", &["0", "Z/2", "Z"])?;
    expect_differentials(&z, &[vec![vec![2]], vec![vec![0]]])?;
    expect_groups("c4_projective", "F2", &["Z/2", "Z/2", "Z/2"])?;
    Ok(())
}

fn criterion_8() -> Check {
    for (name, want) in [("s11_groupoid", "Z^3"), ("rp2_groupoid", "Z^3 + Z/2"), ("trivial_rp_inf", "Z + Z/2")] {
        let (code, out) = run(&Command::Ro, &fixture_text(name), false);
        if code != 0 || out.trim() != want {
            return Err(format!("{name}: got {:?} (exit {code}), want {want}", out.trim()));
        }
    }
    Ok(())
}

fn claimed(rows: &[&[&str]]) -> ClaimedMatrix {
    ClaimedMatrix { rows: rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect() }
}

fn word(p: &GroupoidPresentation, start: &str, letters: &[&str]) -> PathWord {
    p.word(p.object(start).unwrap(), letters).unwrap()
}

/// Checks one standalone span against a claimed underlying matrix.
fn span_identity(doc: &InputDocument, left: &str, span: (&str, &[&str], &[&str]), rows: &[&[&str]]) -> Check {
    let c = doc.complex().map_err(|e| e.to_string())?;
    let p = &c.presentation;
    let (apex, tr, res) = span;
    let s = Span { apex: p.object(apex).unwrap(), tr_leg: word(p, apex, tr), res_leg: word(p, apex, res) };
    let right = p.word_target(&s.res_leg).unwrap();
    let sum = SpanSum { left: p.object(left).unwrap(), right, terms: vec![(1, s)] };
    let got = span_sum_underlying(c, &sum).map_err(|e| e.to_string())?;
    let want = claimed(rows).parse().map_err(|e| e.to_string())?;
    if got != want {
        return Err(format!("span at {apex}: computed {got:?}, claimed {want:?}"));
    }
    Ok(())
}

fn entries_match(name: &str) -> Check {
    let doc = fixture(name);
    let c = doc.complex().map_err(|e| e.to_string())?;
    let mut checked = 0;
    for e in &c.boundary {
        if let Some(m) = &e.underlying {
            let report = verify_boundary_decomposition(c, e, m).map_err(|e| e.to_string())?;
            if !report.is_empty() {
                return Err(format!("{name}: {report:?}"));
            }
            checked += 1;
        }
    }
    if checked == 0 {
        return Err(format!("{name}: no claimed matrices"));
    }
    Ok(())
}

fn criterion_9() -> Check {
    entries_match("disk_r11")?;
    let disk = fixture("disk_r11");
    span_identity(&disk, "b1", ("b1e", &["c"], &[]), &[&["id@e"], &["-id@t"]])?;
    span_identity(&disk, "b1e", ("b1e", &[], &["w"]), &[&["w@e", "0"], &["0", "w@t"]])?;

    entries_match("s11_taut")?;
    let taut = fixture("s11_taut");
    span_identity(&taut, "b1", ("b1e", &["c1"], &[]), &[&["id@e"], &["-id@t"]])?;
    span_identity(&taut, "b1e", ("b1e", &[], &["w1b"]), &[&["w1b@e", "0"], &["0", "w1b@t"]])?;
    span_identity(&taut, "b2", ("b2", &[], &["w20"]), &[&["w20@e", "w20@t"]])?;
    let c = taut.complex().unwrap();
    let zero = SpanSum::zero(c.presentation.object("b1").unwrap(), c.presentation.object("b0").unwrap());
    if span_sum_underlying(c, &zero).map_err(|e| e.to_string())? != claimed(&[&["0"]]).parse().unwrap() {
        return Err("b1 -> b0 should vanish".into());
    }

    let (code, out) = run(&Command::VerifySigns, &fixture_text("s11_taut_wrong_fiber"), false);
    if code != 1 || !out.contains("mismatch: b2 → b0 at (e, t)") {
        return Err(format!("wrong-fiber variant not flagged: exit {code}, {out:?}"));
    }
    Ok(())
}

fn d_squared_on_fixtures() -> Check {
    for name in COMPLEX_FIXTURES {
        let doc = fixture(name);
        let c = doc.complex().unwrap();
        for n in [Coefficient::Integers, Coefficient::F2, Coefficient::Mod(4)] {
            let (ok, bad) = check_d_squared(c, &constant_mackey(n, &c.presentation)).map_err(|e| e.to_string())?;
            if !ok {
                return Err(format!("{name} over {n}: {bad:?}"));
            }
        }
    }
    Ok(())
}

fn d_squared_on_perturbations(runner: &mut TestRunner) -> Check {
    let docs: Vec<InputDocument> = ["rp2_twist", "c4_projective", "s11_taut"].iter().map(|n| fixture(n)).collect();
    let strategy = (0..docs.len(), prop::collection::vec(prop_oneof![Just(1i64), Just(-1)], 8), prop::collection::vec(-5i64..=5, 3));
    runner
        .run(&strategy, |(k, signs, scales)| {
            let c = docs[k].complex().unwrap();
            let p = perturb(c, &signs[..c.cells.len()], &scales);
            for n in [Coefficient::Integers, Coefficient::F2, Coefficient::Mod(4)] {
                let (ok, bad) = check_d_squared(&p, &constant_mackey(n, &p.presentation)).unwrap();
                prop_assert!(ok, "{bad:?}");
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn snf_round_trip(runner: &mut TestRunner) -> Check {
    let strategy = (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..20, c), r));
    runner
        .run(&strategy, |rows| {
            let a = IntMatrix::from_rows(&rows);
            let s = smith_normal_form(&a);
            prop_assert_eq!(s.u.mul(&s.d).mul(&s.v), a);
            prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(rows.len()));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn monodromy_multiplicative(runner: &mut TestRunner) -> Check {
    let doc = fixture("s11_taut");
    let (p, gamma) = (doc.groupoid().unwrap(), doc.gamma().unwrap());
    let letters = prop::collection::vec(prop::sample::select(vec!["g", "g^-1", "t", "t^-1"]), 0..6);
    runner
        .run(&(letters.clone(), letters), |(a, b)| {
            let (wa, wb) = (word(p, "b", &a), word(p, "b", &b));
            let ab = p.concat(&wa, &wb).unwrap();
            let lhs = gamma.monodromy(p, &ab).unwrap();
            let rhs = gamma.monodromy(p, &wa).unwrap() * gamma.monodromy(p, &wb).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn constant_reps_validate() -> Check {
    let mut presentations = vec![
        parcohom::groupoid::skeleta::s11(),
        parcohom::groupoid::skeleta::rp2_twist(),
        parcohom::groupoid::skeleta::rp_infinity_stage(),
    ];
    for name in COMPLEX_FIXTURES.iter().filter(|n| **n != "c4_projective") {
        presentations.push(fixture(name).groupoid().unwrap().clone());
    }
    for p in &presentations {
        for dim in 0..=3 {
            for q in 0..=dim {
                let report = validate_representation(p, &constant_representation(p, dim, q)).map_err(|e| e.to_string())?;
                if !report.is_empty() {
                    return Err(format!("R^({dim},{q}): {report:?}"));
                }
            }
        }
    }
    Ok(())
}

fn local_compare() -> Check {
    let cases = [
        ("rp2", spaces::rp2(), true),
        ("rp3", spaces::rp3(), true),
        ("torus", spaces::torus(), false),
        ("s2", spaces::s2(), false),
    ];
    for (name, x, twist) in cases {
        let mut chars = vec![Character::trivial(&x.pi1)];
        if twist {
            chars.push(Character { signs: vec![parcohom::rep::Sign::Minus] });
        }
        for chi in &chars {
            for n in [Coefficient::Integers, Coefficient::F2, Coefficient::Mod(4)] {
                let r = compare(&x, chi, n).map_err(|e| format!("{name}: {e}"))?;
                if !r.passed() {
                    return Err(format!("{name} over {n}: {:?}", r.mismatches));
                }
            }
        }
    }
    Ok(())
}

fn criterion_10() -> Check {
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    d_squared_on_fixtures()?;
    d_squared_on_perturbations(&mut runner)?;
    snf_round_trip(&mut runner)?;
    monodromy_multiplicative(&mut runner)?;
    constant_reps_validate()?;
    local_compare()?;
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("D(R^{1,1}), gamma = R^{1,1} - 1", criterion_1),
        ("S^{1,1}, gamma = 0", criterion_2),
        ("S^{1,1}, gamma = R^{1,1} - 1", criterion_3),
        ("S^{1,1}, gamma = L - 1, both cell structures", criterion_4),
        ("S^{1,1}, gamma = chi L - 1", criterion_5),
        ("P(R^{3,1}), gamma = L - 1", criterion_6),
        ("C4 projective plane, gamma = L - 1", criterion_7),
        ("representation groups", criterion_8),
        ("underlying sign matrices", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
