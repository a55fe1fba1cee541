//! Cohomology with local coefficients for trivial-group base spaces.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use thiserror::Error;

use crate::abelian::{cohomology, AbelianError, CochainComplex, CochainGroup, FGAbGroup, IntMatrix};
use crate::group::FiniteGroup;
use crate::groupoid::{GroupoidError, GroupoidPresentation, Letter, PathWord};
use crate::mackey::Coefficient;
use crate::rep::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocalError {
    #[error("invalid character: {0}")]
    CharacterInvalid(String),
    #[error("fundamental group is not finite: {0}")]
    InfiniteFundamentalGroup(String),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("invalid complex: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCell {
    pub name: String,
    pub degree: usize,
}

/// One term per preimage point: local degree and the path class it picks up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub from: usize,
    pub to: usize,
    pub terms: Vec<(i64, PathWord)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonEquivCW {
    pub cells: Vec<LocalCell>,
    /// Trivial group, one object; generators are the chosen loops.
    pub pi1: GroupoidPresentation,
    pub incidences: Vec<Incidence>,
}

/// A homomorphism π₁ → O(1), one sign per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub signs: Vec<Sign>,
}

impl Character {
    pub fn trivial(pi1: &GroupoidPresentation) -> Self {
        Character { signs: vec![Sign::Plus; pi1.generators.len()] }
    }

    pub fn eval_letters(&self, letters: &[Letter]) -> Sign {
        letters.iter().fold(Sign::Plus, |acc, l| acc * self.signs[l.gen])
    }

    pub fn eval(&self, w: &PathWord) -> Sign {
        self.eval_letters(&w.letters)
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|s| *s == Sign::Plus)
    }
}

impl NonEquivCW {
    pub fn new(pi1_loops: &[&str]) -> Self {
        let g = FiniteGroup::trivial();
        let e = g.trivial_subgroup();
        let mut pi1 = GroupoidPresentation::new(g);
        let b = pi1.add_object("b", e);
        for name in pi1_loops {
            pi1.add_generator(name, b, b, 0, true);
        }
        NonEquivCW { cells: Vec::new(), pi1, incidences: Vec::new() }
    }

    pub fn add_cell(&mut self, name: &str, degree: usize) -> usize {
        self.cells.push(LocalCell { name: name.into(), degree });
        self.cells.len() - 1
    }

    pub fn add_relation(&mut self, lhs: &[&str], rhs: &[&str]) -> Result<(), LocalError> {
        let l = self.pi1.word(0, lhs)?;
        let r = self.pi1.word(0, rhs)?;
        self.pi1.add_relation(l, r);
        Ok(())
    }

    pub fn add_incidence(&mut self, from: &str, to: &str, terms: &[(i64, &[&str])]) -> Result<(), LocalError> {
        let idx = |n: &str| {
            self.cells.iter().position(|c| c.name == n).ok_or_else(|| LocalError::Invalid(format!("unknown cell {n}")))
        };
        let (from, to) = (idx(from)?, idx(to)?);
        let terms = terms.iter().map(|(d, w)| Ok((*d, self.pi1.word(0, w)?))).collect::<Result<_, LocalError>>()?;
        self.incidences.push(Incidence { from, to, terms });
        Ok(())
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.degree).max()
    }

    pub fn cells_of_degree(&self, n: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].degree == n).collect()
    }

    fn position(&self, i: usize) -> usize {
        self.cells_of_degree(self.cells[i].degree).iter().position(|&j| j == i).unwrap()
    }

    /// Coboundary matrices with entries `Σ deg · weight(ω)`, degree n → n+1.
    fn coboundaries(&self, weight: impl Fn(&PathWord) -> i64) -> Vec<IntMatrix> {
        let Some(top) = self.top_degree() else { return Vec::new() };
        let mut ds: Vec<IntMatrix> = (0..top)
            .map(|n| IntMatrix::zeros(self.cells_of_degree(n + 1).len(), self.cells_of_degree(n).len()))
            .collect();
        for inc in &self.incidences {
            let n = self.cells[inc.to].degree;
            let (i, j) = (self.position(inc.from), self.position(inc.to));
            let sum: i64 = inc.terms.iter().map(|(d, w)| d * weight(w)).sum();
            let cur = ds[n].get(i, j).clone();
            ds[n].set(i, j, cur + BigInt::from(sum));
        }
        ds
    }

    /// Every violated invariant; empty means valid.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        for inc in &self.incidences {
            let (x, y) = (&self.cells[inc.from], &self.cells[inc.to]);
            if x.degree != y.degree + 1 {
                report.push(format!("incidence {} → {}: degrees {} and {}", x.name, y.name, x.degree, y.degree));
            }
            for (_, w) in &inc.terms {
                if let Err(e) = self.pi1.word_target(w) {
                    report.push(format!("incidence {} → {}: {e}", x.name, y.name));
                }
            }
        }
        if !report.is_empty() {
            return report;
        }
        let ds = self.coboundaries(|_| 1);
        for n in 0..ds.len().saturating_sub(1) {
            if !ds[n + 1].mul(&ds[n]).is_zero() {
                report.push(format!("untwisted boundary does not square to zero at degree {}", n + 2));
            }
        }
        report
    }

    fn groups(&self, n: Coefficient) -> Vec<CochainGroup> {
        let top = self.top_degree().map_or(0, |t| t + 1);
        (0..top).map(|k| CochainGroup::new(vec![n.order(); self.cells_of_degree(k).len()])).collect()
    }
}

pub fn check_character(x: &NonEquivCW, chi: &Character) -> Result<(), LocalError> {
    if chi.signs.len() != x.pi1.generators.len() {
        return Err(LocalError::CharacterInvalid(format!(
            "{} signs for {} generators",
            chi.signs.len(),
            x.pi1.generators.len()
        )));
    }
    for (lhs, rhs) in &x.pi1.relations {
        if chi.eval(lhs) != chi.eval(rhs) {
            return Err(LocalError::CharacterInvalid(format!(
                "relation {} = {} is not respected",
                x.pi1.show_word(lhs),
                x.pi1.show_word(rhs)
            )));
        }
    }
    Ok(())
}

pub fn twisted_cochain(x: &NonEquivCW, chi: &Character, n: Coefficient) -> Result<CochainComplex, LocalError> {
    check_character(x, chi)?;
    let report = x.validate();
    if !report.is_empty() {
        return Err(LocalError::Invalid(report.join("; ")));
    }
    let ds = x.coboundaries(|w| chi.eval(w).value());
    Ok(CochainComplex::new(x.groups(n), ds)?)
}

const COSET_LIMIT: usize = 20_000;
const NONE: usize = usize::MAX;

/// Coset enumeration of a finitely presented group over the trivial subgroup.
struct CosetTable {
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    cols: usize,
}

impl CosetTable {
    fn enumerate(gens: usize, relators: &[Vec<usize>], limit: usize) -> Option<CosetTable> {
        let cols = 2 * gens;
        let mut t = CosetTable { table: vec![vec![NONE; cols]], parent: vec![0], cols };
        let mut a = 0;
        while a < t.table.len() {
            if t.live(a) {
                for r in relators {
                    t.scan_and_fill(a, r, limit)?;
                    if !t.live(a) {
                        break;
                    }
                }
                if t.live(a) {
                    for c in 0..cols {
                        if t.table[a][c] == NONE {
                            t.define(a, c, limit)?;
                        }
                    }
                }
            }
            a += 1;
        }
        Some(t)
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize, limit: usize) -> Option<()> {
        if self.table.len() >= limit {
            return None;
        }
        let n = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(n);
        self.table[c][x] = n;
        self.table[n][x ^ 1] = c;
        Some(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = c;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, k: usize, l: usize, queue: &mut VecDeque<usize>) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(g) = queue.pop_front() {
            for x in 0..self.cols {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                self.table[d][x ^ 1] = NONE;
                let (mu, nu) = (self.rep(g), self.rep(d));
                if self.table[mu][x] != NONE {
                    let t = self.table[mu][x];
                    self.merge(nu, t, &mut queue);
                } else if self.table[nu][x ^ 1] != NONE {
                    let t = self.table[nu][x ^ 1];
                    self.merge(mu, t, &mut queue);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][x ^ 1] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, a: usize, w: &[usize], limit: usize) -> Option<()> {
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j && self.table[f][w[i as usize]] != NONE {
                f = self.table[f][w[i as usize]];
                i += 1;
            }
            if i > j {
                if f != a {
                    self.coincidence(f, a);
                }
                return Some(());
            }
            while j >= i && self.table[b][w[j as usize] ^ 1] != NONE {
                b = self.table[b][w[j as usize] ^ 1];
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Some(());
            } else if j == i {
                let x = w[i as usize];
                self.table[f][x] = b;
                self.table[b][x ^ 1] = f;
                return Some(());
            } else {
                self.define(f, w[i as usize], limit)?;
            }
        }
    }

    /// Compacted right action on live cosets; coset 0 is the identity.
    fn compact(mut self) -> Vec<Vec<usize>> {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.live(c)).collect();
        let index: BTreeMap<usize, usize> = live.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = Vec::new();
        for &c in &live {
            let row = (0..self.cols)
                .map(|x| {
                    let t = self.table[c][x];
                    index[&self.rep(t)]
                })
                .collect();
            out.push(row);
        }
        out
    }
}

/// A finite group of deck transformations with the word map from path classes.
struct DeckGroup {
    /// `action[a][col]` is `a·letter`.
    action: Vec<Vec<usize>>,
    /// Letters of a word reaching each element from the identity.
    words: Vec<Vec<usize>>,
}

impl DeckGroup {
    fn order(&self) -> usize {
        self.action.len()
    }

    fn walk(&self, from: usize, cols: &[usize]) -> usize {
        cols.iter().fold(from, |c, &x| self.action[c][x])
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.walk(a, &self.words[b])
    }

    fn from_action(action: Vec<Vec<usize>>) -> Self {
        let mut words = vec![None; action.len()];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for (x, &d) in action[c].iter().enumerate() {
                if words[d].is_none() {
                    let mut w = words[c].clone().unwrap();
                    w.push(x);
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        DeckGroup { action, words: words.into_iter().map(|w| w.expect("connected action")).collect() }
    }
}

fn letter_cols(w: &PathWord) -> Vec<usize> {
    w.letters.iter().map(|l| 2 * l.gen + l.inverse as usize).collect()
}

fn relators(pi1: &GroupoidPresentation) -> Vec<Vec<usize>> {
    pi1.relations
        .iter()
        .map(|(l, r)| {
            let mut w = letter_cols(l);
            w.extend(letter_cols(r).iter().rev().map(|c| c ^ 1));
            w
        })
        .collect()
}

/// Elements of π₁ as a permutation action, or an error when the group is not finite.
fn fundamental_group(pi1: &GroupoidPresentation) -> Result<DeckGroup, LocalError> {
    let gens = pi1.generators.len();
    if pi1.relations.len() < gens {
        return Err(LocalError::InfiniteFundamentalGroup(format!(
            "{gens} generators but only {} relations",
            pi1.relations.len()
        )));
    }
    let table = CosetTable::enumerate(gens, &relators(pi1), COSET_LIMIT).ok_or_else(|| {
        LocalError::InfiniteFundamentalGroup(format!("coset enumeration exceeded {COSET_LIMIT} cosets"))
    })?;
    Ok(DeckGroup::from_action(table.compact()))
}

pub fn fundamental_group_order(pi1: &GroupoidPresentation) -> Result<usize, LocalError> {
    Ok(fundamental_group(pi1)?.order())
}

/// Equivariant cochains on a regular cover with deck group `deck`, twisted by `chi_of`.
fn cover_cochains(
    x: &NonEquivCW,
    deck: &DeckGroup,
    word_elem: impl Fn(&PathWord) -> usize,
    chi_of: impl Fn(usize) -> i64,
    n: Coefficient,
) -> Result<CochainComplex, LocalError> {
    let order = deck.order();
    let top = x.top_degree().map_or(0, |t| t + 1);
    let index_in = |i: usize| x.cells_of_degree(x.cells[i].degree).iter().position(|&j| j == i).unwrap();
    // Cover boundary ∂_k : C_k → C_{k−1}, basis (cell, element) ↦ cell·order + element.
    let mut boundary: Vec<IntMatrix> = (0..top)
        .map(|k| {
            let rows = if k == 0 { 0 } else { x.cells_of_degree(k - 1).len() * order };
            IntMatrix::zeros(rows, x.cells_of_degree(k).len() * order)
        })
        .collect();
    for inc in &x.incidences {
        let k = x.cells[inc.from].degree;
        let (xi, yi) = (index_in(inc.from), index_in(inc.to));
        for alpha in 0..order {
            for (deg, w) in &inc.terms {
                let target = deck.mul(word_elem(w), alpha);
                let (r, c) = (yi * order + target, xi * order + alpha);
                let cur = boundary[k].get(r, c).clone();
                boundary[k].set(r, c, cur + BigInt::from(*deg));
            }
        }
    }
    for k in 2..top {
        if !boundary[k - 1].mul(&boundary[k]).is_zero() {
            return Err(LocalError::Invalid(format!("cover boundary does not square to zero at degree {k}")));
        }
    }
    // φ_y(y, g) = χ(g); δφ_y = φ_y ∘ ∂, read off at (x, e).
    let mut ds = Vec::new();
    for k in 0..top.saturating_sub(1) {
        let (src, dst) = (x.cells_of_degree(k).len(), x.cells_of_degree(k + 1).len());
        let mut d = IntMatrix::zeros(dst, src);
        for yi in 0..src {
            let phi: Vec<i64> = (0..src * order).map(|i| if i / order == yi { chi_of(i % order) } else { 0 }).collect();
            let b = &boundary[k + 1];
            let delta: Vec<BigInt> = (0..b.cols())
                .map(|col| (0..b.rows()).map(|row| b.get(row, col) * BigInt::from(phi[row])).sum())
                .collect();
            for xi in 0..dst {
                let coeff = delta[xi * order].clone();
                for g in 0..order {
                    if delta[xi * order + g] != &coeff * BigInt::from(chi_of(g)) {
                        return Err(LocalError::Invalid("cover cochain is not equivariant".into()));
                    }
                }
                d.set(xi, yi, coeff);
            }
        }
        ds.push(d);
    }
    Ok(CochainComplex::new(x.groups(n), ds)?)
}

/// Equivariant cochains on the universal cover; requires a finite fundamental group.
pub fn universal_cover_oracle(x: &NonEquivCW, chi: &Character, n: Coefficient) -> Result<CochainComplex, LocalError> {
    check_character(x, chi)?;
    let deck = fundamental_group(&x.pi1)?;
    let words = deck.words.clone();
    let chi_of = |g: usize| words[g].iter().fold(Sign::Plus, |acc, &c| acc * chi.signs[c / 2]).value();
    cover_cochains(x, &deck, |w| deck.walk(0, &letter_cols(w)), chi_of, n)
}

/// Equivariant cochains on the cover with deck group the image of χ.
pub fn character_cover_oracle(x: &NonEquivCW, chi: &Character, n: Coefficient) -> Result<CochainComplex, LocalError> {
    check_character(x, chi)?;
    let action = if chi.is_trivial() { vec![vec![0; 2 * chi.signs.len()]] } else {
        vec![
            chi.signs.iter().flat_map(|s| [s.is_minus() as usize; 2]).collect(),
            chi.signs.iter().flat_map(|s| [(!s.is_minus()) as usize; 2]).collect(),
        ]
    };
    let deck = DeckGroup::from_action(action);
    let elem = |w: &PathWord| chi.eval(w).is_minus() as usize;
    cover_cochains(x, &deck, elem, |g| if g == 0 { 1 } else { -1 }, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    UniversalCover,
    CharacterCover,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareReport {
    pub direct: Vec<FGAbGroup>,
    pub oracle: Vec<FGAbGroup>,
    pub oracle_kind: OracleKind,
    pub mismatches: Vec<String>,
}

impl CompareReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Direct twisted cohomology against the cover oracle; falls back to the χ-cover
/// when π₁ is not finite.
pub fn compare(x: &NonEquivCW, chi: &Character, n: Coefficient) -> Result<CompareReport, LocalError> {
    let direct = cohomology(&twisted_cochain(x, chi, n)?)?;
    let (oracle_cx, oracle_kind) = match universal_cover_oracle(x, chi, n) {
        Ok(c) => (c, OracleKind::UniversalCover),
        Err(LocalError::InfiniteFundamentalGroup(_)) => (character_cover_oracle(x, chi, n)?, OracleKind::CharacterCover),
        Err(e) => return Err(e),
    };
    let oracle = cohomology(&oracle_cx)?;
    let mismatches = direct
        .iter()
        .zip(&oracle)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(k, (a, b))| format!("degree {k}: direct {a}, oracle {b}"))
        .collect();
    Ok(CompareReport { direct, oracle, oracle_kind, mismatches })
}

/// Standard cell structures used by tests and examples.
pub mod spaces {
    use super::*;

    pub fn rp2() -> NonEquivCW {
        let mut x = NonEquivCW::new(&["g"]);
        x.add_relation(&["g", "g"], &[]).unwrap();
        for (name, d) in [("e0", 0), ("e1", 1), ("e2", 2)] {
            x.add_cell(name, d);
        }
        x.add_incidence("e1", "e0", &[(1, &[]), (-1, &["g"])]).unwrap();
        x.add_incidence("e2", "e1", &[(1, &[]), (1, &["g"])]).unwrap();
        x
    }

    pub fn rp3() -> NonEquivCW {
        let mut x = rp2();
        x.add_cell("e3", 3);
        x.add_incidence("e3", "e2", &[(1, &[]), (-1, &["g"])]).unwrap();
        x
    }

    pub fn s2() -> NonEquivCW {
        let mut x = NonEquivCW::new(&[]);
        x.add_cell("e0", 0);
        x.add_cell("e2", 2);
        x
    }

    pub fn torus() -> NonEquivCW {
        let mut x = NonEquivCW::new(&["a", "b"]);
        x.add_relation(&["a", "b", "a^-1", "b^-1"], &[]).unwrap();
        for (name, d) in [("e0", 0), ("a", 1), ("b", 1), ("e2", 2)] {
            x.add_cell(name, d);
        }
        x.add_incidence("a", "e0", &[(1, &["a"]), (-1, &[])]).unwrap();
        x.add_incidence("b", "e0", &[(1, &["b"]), (-1, &[])]).unwrap();
        x.add_incidence("e2", "a", &[(1, &[]), (-1, &["a", "b", "a^-1"])]).unwrap();
        x.add_incidence("e2", "b", &[(1, &["a"]), (-1, &[])]).unwrap();
        x
    }

    pub fn circle() -> NonEquivCW {
        let mut x = NonEquivCW::new(&["g"]);
        x.add_cell("e0", 0);
        x.add_cell("e1", 1);
        x.add_incidence("e1", "e0", &[(1, &["g"]), (-1, &[])]).unwrap();
        x
    }
}

#[cfg(test)]
mod tests {
    use super::spaces::*;
    use super::*;

    fn show(groups: &[FGAbGroup]) -> Vec<String> {
        groups.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn rp2_differentials() {
        let x = rp2();
        let triv = twisted_cochain(&x, &Character::trivial(&x.pi1), Coefficient::Integers).unwrap();
        assert_eq!(triv.differentials[0].to_i64_rows().unwrap(), vec![vec![0]]);
        assert_eq!(triv.differentials[1].to_i64_rows().unwrap(), vec![vec![2]]);
        let tw = Character { signs: vec![Sign::Minus] };
        let c = twisted_cochain(&x, &tw, Coefficient::Integers).unwrap();
        assert_eq!(c.differentials[0].to_i64_rows().unwrap(), vec![vec![2]]);
        assert_eq!(c.differentials[1].to_i64_rows().unwrap(), vec![vec![0]]);
        assert_eq!(show(&cohomology(&c).unwrap()), ["0", "Z/2", "Z"]);
    }

    #[test]
    fn coset_enumeration_orders() {
        assert_eq!(fundamental_group_order(&rp2().pi1), Ok(2));
        assert_eq!(fundamental_group_order(&s2().pi1), Ok(1));
        let mut s3 = NonEquivCW::new(&["a", "b"]);
        s3.add_relation(&["a", "a"], &[]).unwrap();
        s3.add_relation(&["b", "b", "b"], &[]).unwrap();
        s3.add_relation(&["a", "b", "a", "b"], &[]).unwrap();
        assert_eq!(fundamental_group_order(&s3.pi1), Ok(6));
        let mut q8 = NonEquivCW::new(&["i", "j"]);
        q8.add_relation(&["i", "i", "i", "i"], &[]).unwrap();
        q8.add_relation(&["i", "i"], &["j", "j"]).unwrap();
        q8.add_relation(&["j", "i", "j^-1"], &["i^-1"]).unwrap();
        assert_eq!(fundamental_group_order(&q8.pi1), Ok(8));
        assert!(matches!(fundamental_group_order(&torus().pi1), Err(LocalError::InfiniteFundamentalGroup(_))));
    }

    #[test]
    fn oracle_agrees_on_rp2() {
        let x = rp2();
        for chi in [Character::trivial(&x.pi1), Character { signs: vec![Sign::Minus] }] {
            let r = compare(&x, &chi, Coefficient::Integers).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.oracle_kind, OracleKind::UniversalCover);
        }
        let r = compare(&x, &Character::trivial(&x.pi1), Coefficient::Integers).unwrap();
        assert_eq!(show(&r.oracle), ["Z", "0", "Z/2"]);
    }

    #[test]
    fn circle_with_sign_character() {
        let x = circle();
        let chi = Character { signs: vec![Sign::Minus] };
        let c = twisted_cochain(&x, &chi, Coefficient::Integers).unwrap();
        assert_eq!(c.differentials[0].to_i64_rows().unwrap(), vec![vec![-2]]);
        assert_eq!(show(&cohomology(&c).unwrap()), ["0", "Z/2"]);
    }

    #[test]
    fn bad_character_rejected() {
        let mut x = rp2();
        x.pi1.relations.clear();
        x.add_relation(&["g"], &[]).unwrap();
        let chi = Character { signs: vec![Sign::Minus] };
        assert!(matches!(twisted_cochain(&x, &chi, Coefficient::Integers), Err(LocalError::CharacterInvalid(_))));
    }
}
