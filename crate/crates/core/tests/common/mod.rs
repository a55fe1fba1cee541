#![allow(dead_code)]

use std::path::PathBuf;

use parcohom::abelian::FGAbGroup;
use parcohom::cw::CWGammaComplex;
use parcohom::doc::{parse_group, parse_input, InputDocument};

pub const COMPLEX_FIXTURES: &[&str] = &[
    "disk_r11",
    "s11_trivial",
    "s11_r11",
    "s11_taut",
    "s11_taut_wrong_fiber",
    "s11_taut_2cell",
    "s11_chi_taut",
    "rp2_twist",
    "c4_projective",
];

pub const LOCAL_FIXTURES: &[&str] = &["local_rp2", "local_rp3", "local_s2", "local_torus", "local_circle"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.doc"))
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture(name: &str) -> InputDocument {
    parse_input(&fixture_text(name)).unwrap_or_else(|e| panic!("{name}: {e:?}"))
}

/// `"Z + Z/2"` and friends.
pub fn grp(s: &str) -> FGAbGroup {
    FGAbGroup::from_orders(&parse_group(s).unwrap_or_else(|| panic!("bad group {s}")))
}

pub fn grps(s: &[&str]) -> Vec<FGAbGroup> {
    s.iter().map(|g| grp(g)).collect()
}

/// Rescales boundary coefficients by `cell_signs[x]·cell_signs[y]·degree_scale[deg x]`,
/// which keeps every composite `d∘d` zero.
pub fn perturb(c: &CWGammaComplex, cell_signs: &[i64], degree_scale: &[i64]) -> CWGammaComplex {
    let mut out = c.clone();
    for e in &mut out.boundary {
        let k = cell_signs[e.from] * cell_signs[e.to] * degree_scale[c.cells[e.from].degree];
        for (coeff, _) in &mut e.span_sum.terms {
            *coeff *= k;
        }
    }
    out
}
