//! CW(γ)-complexes given by cells and pre-twisted span boundary data.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::abelian::{AbelianError, CochainComplex, CochainGroup, IntMatrix};
use crate::group::Elem;
use crate::groupoid::{GroupoidPresentation, Letter, ObjId, PathWord};
use crate::mackey::{evaluate_span_sum, MackeyError, MackeyFunctor, SpanSum};
use crate::rep::{check_sign_calculus, FiberDescriptor, GammaRep, RepError, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CwError {
    #[error(transparent)]
    Mackey(#[from] MackeyError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("boundary entry {0} does not match the cells")]
    BadEntry(String),
    #[error("cannot parse claimed entry {entry:?}: {reason}")]
    ClaimedSyntax { entry: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub degree: usize,
    pub center: ObjId,
    pub rep: FiberDescriptor,
}

/// Boundary component from an n-cell to an (n−1)-cell; the span sum runs `from.center ← · → to.center`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryEntry {
    pub from: usize,
    pub to: usize,
    pub span_sum: SpanSum,
    pub underlying: Option<ClaimedMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CWGammaComplex {
    pub presentation: GroupoidPresentation,
    pub gamma: GammaRep,
    pub cells: Vec<Cell>,
    pub boundary: Vec<BoundaryEntry>,
}

impl CWGammaComplex {
    pub fn cell(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.name == name)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.degree).max()
    }

    pub fn cells_of_degree(&self, n: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&i| self.cells[i].degree == n).collect()
    }
}

/// Cells whose representation does not match γ at their center; empty means valid.
pub fn validate_cells(c: &CWGammaComplex) -> Vec<String> {
    let p = &c.presentation;
    let mut report = Vec::new();
    if c.gamma.fibers.len() != p.objects.len() {
        return vec![format!("{} fibers for {} objects", c.gamma.fibers.len(), p.objects.len())];
    }
    for cell in &c.cells {
        let Some(obj) = p.objects.get(cell.center) else {
            report.push(format!("cell {}: unknown center", cell.name));
            continue;
        };
        let fiber = c.gamma.fiber(cell.center);
        if cell.rep.isotropy != obj.isotropy {
            report.push(format!("cell {}: representation lives over the wrong isotropy", cell.name));
            continue;
        }
        let want = (fiber.trivial as i64 - fiber.shift + cell.degree as i64, fiber.sign as i64);
        let have = (cell.rep.trivial as i64, cell.rep.sign as i64);
        if cell.degree == 0 && fiber.sign != 0 {
            report.push(format!(
                "cell {}: 0-cell at {} whose fiber has a sign summand of dimension {}",
                cell.name, obj.name, fiber.sign
            ));
        } else if want != have {
            report.push(format!(
                "cell {}: fiber at {} plus {} is (trivial {}, sign {}), cell representation is (trivial {}, sign {})",
                cell.name, obj.name, cell.degree, want.0, want.1, have.0, have.1
            ));
        }
    }
    for (k, e) in c.boundary.iter().enumerate() {
        let (Some(x), Some(y)) = (c.cells.get(e.from), c.cells.get(e.to)) else {
            report.push(format!("boundary entry {}: unknown cell", k + 1));
            continue;
        };
        if x.degree != y.degree + 1 {
            report.push(format!("boundary entry {} → {}: degrees {} and {}", x.name, y.name, x.degree, y.degree));
        }
        if (e.span_sum.left, e.span_sum.right) != (x.center, y.center) {
            report.push(format!("boundary entry {} → {}: span ends do not match the centers", x.name, y.name));
        }
        if let Err(err) = e.span_sum.check(p) {
            report.push(format!("boundary entry {} → {}: {err}", x.name, y.name));
        }
    }
    report
}

pub fn assemble_cochain(c: &CWGammaComplex, m: &MackeyFunctor) -> Result<CochainComplex, CwError> {
    let Some(top) = c.top_degree() else {
        return Ok(CochainComplex::new(Vec::new(), Vec::new())?);
    };
    let mut offsets = vec![0usize; c.cells.len()];
    let mut groups = Vec::new();
    for n in 0..=top {
        let mut orders = Vec::new();
        for i in c.cells_of_degree(n) {
            offsets[i] = orders.len();
            orders.extend(m.orders(c.cells[i].center));
        }
        groups.push(CochainGroup::new(orders));
    }
    let mut diffs: Vec<IntMatrix> =
        (0..top).map(|n| IntMatrix::zeros(groups[n + 1].dim(), groups[n].dim())).collect();
    for e in &c.boundary {
        let (x, y) = (&c.cells[e.from], &c.cells[e.to]);
        if x.degree != y.degree + 1 || (e.span_sum.left, e.span_sum.right) != (x.center, y.center) {
            return Err(CwError::BadEntry(format!("{} → {}", x.name, y.name)));
        }
        let block = evaluate_span_sum(m, &c.presentation, &e.span_sum)?;
        let d = &mut diffs[y.degree];
        let current = d.block(offsets[e.from], offsets[e.to], block.rows(), block.cols());
        d.put_block(offsets[e.from], offsets[e.to], &current.add(&block));
    }
    Ok(CochainComplex::new(groups, diffs)?)
}

/// Whether every `d∘d` vanishes, with the offending (cell, cell) pairs otherwise.
pub fn check_d_squared(c: &CWGammaComplex, m: &MackeyFunctor) -> Result<(bool, Vec<String>), CwError> {
    let cx = assemble_cochain(c, m)?;
    let mut bad = Vec::new();
    for n in cx.d_squared_failures() {
        let comp = cx.differentials[n + 1].mul(&cx.differentials[n]).reduce_rows(&cx.groups[n + 2].orders);
        let rows = block_owners(c, m, n + 2);
        let cols = block_owners(c, m, n);
        for i in 0..comp.rows() {
            for j in 0..comp.cols() {
                if !num_traits::Zero::is_zero(comp.get(i, j)) {
                    bad.push(format!("degree {n}: {} ← {}", c.cells[rows[i]].name, c.cells[cols[j]].name));
                }
            }
        }
    }
    bad.dedup();
    Ok((bad.is_empty(), bad))
}

fn block_owners(c: &CWGammaComplex, m: &MackeyFunctor, n: usize) -> Vec<usize> {
    c.cells_of_degree(n).into_iter().flat_map(|i| std::iter::repeat(i).take(m.dim(c.cells[i].center))).collect()
}

/// A path label at an apex point, written `word@point`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathLabel {
    pub word: String,
    pub point: String,
}

impl fmt::Display for PathLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.word, self.point)
    }
}

/// A formal ℤ-combination of path labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedPaths(pub BTreeMap<PathLabel, i64>);

impl SignedPaths {
    fn add(&mut self, label: PathLabel, c: i64) {
        let e = self.0.entry(label.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&label);
        }
    }

    pub fn parse(s: &str) -> Result<Self, CwError> {
        let err = |reason: &str| CwError::ClaimedSyntax { entry: s.to_string(), reason: reason.to_string() };
        let mut out = SignedPaths::default();
        let compact: String = s.split_whitespace().collect();
        if compact.is_empty() {
            return Err(err("empty entry"));
        }
        if compact == "0" {
            return Ok(out);
        }
        let mut chunks = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.char_indices() {
            let after_caret = compact[..i].ends_with('^');
            if (ch == '+' || ch == '-') && i > 0 && !after_caret {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        chunks.push(cur);
        for chunk in chunks {
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
            let rest = body[digits.len()..].trim_start_matches('*');
            let coeff: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| err("bad coefficient"))? };
            let (word, point) = rest.split_once('@').ok_or_else(|| err("label needs word@point"))?;
            if word.is_empty() || point.is_empty() {
                return Err(err("label needs word@point"));
            }
            out.add(PathLabel { word: word.to_string(), point: point.to_string() }, sign * coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for SignedPaths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (label, c)) in self.0.iter().enumerate() {
            let (neg, mag) = (*c < 0, c.abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

/// The underlying identity-coset matrix of a boundary entry: rows are points of the
/// target cell's orbit, columns points of the source cell's orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimedMatrix {
    pub rows: Vec<Vec<String>>,
}

impl ClaimedMatrix {
    pub fn parse(&self) -> Result<Vec<Vec<SignedPaths>>, CwError> {
        self.rows.iter().map(|r| r.iter().map(|e| SignedPaths::parse(e)).collect()).collect()
    }
}

/// Sign of a leg's fiber map at the apex point `a`.
fn point_sign(c: &CWGammaComplex, leg: &PathWord, a: Elem) -> Result<(Elem, Sign), CwError> {
    let p = &c.presentation;
    let g = &p.group;
    let f = p.underlying_orbit_map(leg).map_err(MackeyError::from)?;
    let s_e = c.gamma.monodromy(p, leg)?;
    let image = g.mul(a, f.rep);
    let r = g.coset_rep(image, &f.target);
    let k = g.mul(g.inv(r), image);
    let target_fiber = c.gamma.fiber(p.word_target(leg).map_err(MackeyError::from)?);
    let sign = if k != g.identity() && f.target.order() == 2 {
        s_e * Sign::from_parity(target_fiber.sign as i64)
    } else {
        s_e
    };
    Ok((r, sign))
}

fn label_word(p: &GroupoidPresentation, span_res: &PathWord, span_tr: &PathWord) -> String {
    let mut letters: Vec<Letter> = span_res.letters.clone();
    letters.extend(span_tr.letters.iter().rev().map(|l| l.flipped()));
    letters.retain(|l| !p.generators[l.gen].constant);
    let reduced = crate::groupoid::free_reduce(&letters);
    if reduced.is_empty() {
        "id".into()
    } else {
        reduced.iter().map(|&l| p.show_letter(l)).collect::<Vec<_>>().join(".")
    }
}

/// Recomputes the underlying matrix of one boundary entry from γ.
pub fn underlying_matrix(c: &CWGammaComplex, entry: &BoundaryEntry) -> Result<Vec<Vec<SignedPaths>>, CwError> {
    span_sum_underlying(c, &entry.span_sum)
}

/// Underlying identity-coset matrix of any span sum over the complex's γ: rows are
/// points of `s.right`, columns points of `s.left`.
pub fn span_sum_underlying(c: &CWGammaComplex, s: &SpanSum) -> Result<Vec<Vec<SignedPaths>>, CwError> {
    let p = &c.presentation;
    check_sign_calculus(&p.group)?;
    let g = &p.group;
    let cols = g.cosets(p.isotropy(s.left));
    let rows = g.cosets(p.isotropy(s.right));
    let mut out = vec![vec![SignedPaths::default(); cols.len()]; rows.len()];
    for (coeff, span) in &s.terms {
        let word = label_word(p, &span.res_leg, &span.tr_leg);
        for a in g.cosets(p.isotropy(span.apex)) {
            let (rq, sq) = point_sign(c, &span.tr_leg, a)?;
            let (rp, sp) = point_sign(c, &span.res_leg, a)?;
            let i = rows.iter().position(|&r| r == rp).expect("canonical coset");
            let j = cols.iter().position(|&r| r == rq).expect("canonical coset");
            let label = PathLabel { word: word.clone(), point: g.element_name(a).to_string() };
            out[i][j].add(label, coeff * (sq * sp).value());
        }
    }
    Ok(out)
}

/// Compares a claimed underlying matrix with the one computed from γ; empty means match.
pub fn verify_boundary_decomposition(
    c: &CWGammaComplex,
    entry: &BoundaryEntry,
    claimed: &ClaimedMatrix,
) -> Result<Vec<String>, CwError> {
    let computed = underlying_matrix(c, entry)?;
    let claimed = claimed.parse()?;
    let (x, y) = (&c.cells[entry.from], &c.cells[entry.to]);
    let name = format!("{} → {}", x.name, y.name);
    let shape = |m: &Vec<Vec<SignedPaths>>| (m.len(), m.first().map_or(0, |r| r.len()));
    if shape(&computed) != shape(&claimed) || claimed.iter().any(|r| r.len() != shape(&claimed).1) {
        return Ok(vec![format!(
            "{name}: claimed matrix is {:?}, expected {:?}",
            shape(&claimed),
            shape(&computed)
        )]);
    }
    let g = &c.presentation.group;
    let rows = g.cosets(c.presentation.isotropy(y.center));
    let cols = g.cosets(c.presentation.isotropy(x.center));
    let mut report = Vec::new();
    for (i, (cr, kr)) in computed.iter().zip(&claimed).enumerate() {
        for (j, (ce, ke)) in cr.iter().zip(kr).enumerate() {
            if ce != ke {
                report.push(format!(
                    "{name} at ({}, {}): computed {ce}, claimed {ke}",
                    g.element_name(rows[i]),
                    g.element_name(cols[j])
                ));
            }
        }
    }
    Ok(report)
}

/// Parses a dotted word such as `p0.g^-1` starting at `start` when empty (`id`).
pub fn parse_dotted_word(
    p: &GroupoidPresentation,
    start: ObjId,
    s: &str,
) -> Result<PathWord, crate::groupoid::GroupoidError> {
    let s = s.trim();
    if s.is_empty() || s == "id" {
        return Ok(PathWord::identity(start));
    }
    let parts: Vec<&str> = s.split('.').map(str::trim).collect();
    p.word(start, &parts)
}
