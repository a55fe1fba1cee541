//! Mackey functors over a groupoid presentation, spans and their evaluation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::abelian::{FGAbGroup, IntMatrix};
use crate::group::Elem;
use crate::groupoid::{GenId, GroupoidError, GroupoidPresentation, Letter, ObjId, PathWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MackeyError {
    #[error("object #{0} is not in the presentation")]
    ObjectNotInPresentation(usize),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("spans do not compose: {0}")]
    NonComposable(String),
    #[error("no path closes the pullback square between {a} and {b} at coset {c}")]
    UnresolvedPullbackPath { a: String, b: String, c: String },
    #[error("pullback orbit has no apex object in the presentation (stabilizer {0})")]
    MissingApex(String),
    #[error("functor shape: {0}")]
    Shape(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficient {
    Integers,
    Mod(u64),
}

impl Coefficient {
    pub const F2: Coefficient = Coefficient::Mod(2);

    pub fn group(self) -> FGAbGroup {
        match self {
            Coefficient::Integers => FGAbGroup::free(1),
            Coefficient::Mod(n) => FGAbGroup::cyclic(n),
        }
    }

    pub fn order(self) -> BigInt {
        match self {
            Coefficient::Integers => BigInt::zero(),
            Coefficient::Mod(n) => BigInt::from(n),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "Z" => Some(Coefficient::Integers),
            "F2" => Some(Coefficient::F2),
            other => {
                let n: u64 = other.strip_prefix("Z/")?.parse().ok()?;
                (n >= 1).then_some(Coefficient::Mod(n))
            }
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Integers => write!(f, "Z"),
            Coefficient::Mod(2) => write!(f, "F2"),
            Coefficient::Mod(n) => write!(f, "Z/{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MackeyLabel {
    Constant(Coefficient),
    Custom,
}

/// Values per object; `res[f]: M(target) → M(source)` and `tr[f]: M(source) → M(target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyFunctor {
    pub values: Vec<FGAbGroup>,
    pub res: Vec<IntMatrix>,
    pub tr: Vec<IntMatrix>,
    pub label: MackeyLabel,
}

pub fn constant_mackey(n: Coefficient, pres: &GroupoidPresentation) -> MackeyFunctor {
    let values = vec![n.group(); pres.objects.len()];
    let mut res = Vec::new();
    let mut tr = Vec::new();
    for gen in 0..pres.generators.len() {
        res.push(IntMatrix::identity(1));
        let index = pres.generator_orbit_map(gen).map(|f| pres.group.quotient_index(&f)).unwrap_or(1);
        let m = IntMatrix::from_rows(&[vec![index as i64]]);
        tr.push(m.reduce_rows(&[n.order()]));
    }
    MackeyFunctor { values, res, tr, label: MackeyLabel::Constant(n) }
}

impl MackeyFunctor {
    pub fn zero(pres: &GroupoidPresentation) -> Self {
        MackeyFunctor {
            values: vec![FGAbGroup::zero(); pres.objects.len()],
            res: vec![IntMatrix::zeros(0, 0); pres.generators.len()],
            tr: vec![IntMatrix::zeros(0, 0); pres.generators.len()],
            label: MackeyLabel::Custom,
        }
    }

    pub fn orders(&self, x: ObjId) -> Vec<BigInt> {
        self.values[x].generator_orders()
    }

    pub fn dim(&self, x: ObjId) -> usize {
        self.values[x].num_generators()
    }

    fn check_object(&self, x: ObjId) -> Result<(), MackeyError> {
        if x < self.values.len() {
            Ok(())
        } else {
            Err(MackeyError::ObjectNotInPresentation(x))
        }
    }

    fn res_letter(&self, l: Letter) -> &IntMatrix {
        if l.inverse {
            &self.tr[l.gen]
        } else {
            &self.res[l.gen]
        }
    }

    fn tr_letter(&self, l: Letter) -> &IntMatrix {
        if l.inverse {
            &self.res[l.gen]
        } else {
            &self.tr[l.gen]
        }
    }

    /// `M(target(w)) → M(start(w))`.
    pub fn restriction(&self, pres: &GroupoidPresentation, w: &PathWord) -> Result<IntMatrix, MackeyError> {
        self.check_object(w.start)?;
        pres.word_target(w)?;
        let mut acc = IntMatrix::identity(self.dim(w.start));
        for &l in w.letters.iter().rev() {
            acc = acc.mul(self.res_letter(l));
        }
        Ok(acc.reduce_rows(&self.orders(w.start)))
    }

    /// `M(start(w)) → M(target(w))`.
    pub fn transfer(&self, pres: &GroupoidPresentation, w: &PathWord) -> Result<IntMatrix, MackeyError> {
        self.check_object(w.start)?;
        let end = pres.word_target(w)?;
        let mut acc = IntMatrix::identity(self.dim(end));
        for &l in &w.letters {
            acc = acc.mul(self.tr_letter(l));
        }
        Ok(acc.reduce_rows(&self.orders(end)))
    }
}

/// `left ← apex → right`, read as a transfer after a restriction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub apex: ObjId,
    pub tr_leg: PathWord,
    pub res_leg: PathWord,
}

impl Span {
    pub fn identity(x: ObjId) -> Self {
        Span { apex: x, tr_leg: PathWord::identity(x), res_leg: PathWord::identity(x) }
    }

    pub fn res(pres: &GroupoidPresentation, gen: GenId) -> Self {
        let g = &pres.generators[gen];
        Span {
            apex: g.source,
            tr_leg: PathWord::identity(g.source),
            res_leg: PathWord { start: g.source, letters: vec![Letter::fwd(gen)] },
        }
    }

    pub fn tr(pres: &GroupoidPresentation, gen: GenId) -> Self {
        let g = &pres.generators[gen];
        Span {
            apex: g.source,
            tr_leg: PathWord { start: g.source, letters: vec![Letter::fwd(gen)] },
            res_leg: PathWord::identity(g.source),
        }
    }

    pub fn ends(&self, pres: &GroupoidPresentation) -> Result<(ObjId, ObjId), MackeyError> {
        if self.tr_leg.start != self.apex || self.res_leg.start != self.apex {
            return Err(MackeyError::NonComposable("legs do not share the apex".into()));
        }
        Ok((pres.word_target(&self.tr_leg)?, pres.word_target(&self.res_leg)?))
    }

    pub fn show(&self, pres: &GroupoidPresentation) -> String {
        format!(
            "tr[{}] res[{}] @{}",
            pres.show_word(&self.tr_leg),
            pres.show_word(&self.res_leg),
            pres.objects[self.apex].name
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanSum {
    pub left: ObjId,
    pub right: ObjId,
    pub terms: Vec<(i64, Span)>,
}

impl SpanSum {
    pub fn zero(left: ObjId, right: ObjId) -> Self {
        SpanSum { left, right, terms: Vec::new() }
    }

    pub fn single(pres: &GroupoidPresentation, coeff: i64, span: Span) -> Result<Self, MackeyError> {
        let (left, right) = span.ends(pres)?;
        Ok(SpanSum { left, right, terms: vec![(coeff, span)] })
    }

    pub fn check(&self, pres: &GroupoidPresentation) -> Result<(), MackeyError> {
        for (_, s) in &self.terms {
            let (l, r) = s.ends(pres)?;
            if (l, r) != (self.left, self.right) {
                return Err(MackeyError::NonComposable(format!(
                    "term {} runs {} → {}, sum runs {} → {}",
                    s.show(pres),
                    pres.objects[l].name,
                    pres.objects[r].name,
                    pres.objects[self.left].name,
                    pres.objects[self.right].name
                )));
            }
        }
        Ok(())
    }

    /// Canonical form: invertible tail of the transfer leg moved to the apex, words reduced,
    /// like terms combined and sorted.
    pub fn canonical(&self, pres: &GroupoidPresentation) -> Result<SpanSum, MackeyError> {
        let mut acc: BTreeMap<Span, i64> = BTreeMap::new();
        for (c, s) in &self.terms {
            *acc.entry(canonical_span(pres, s)?).or_insert(0) += c;
        }
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).map(|(s, c)| (c, s)).collect();
        Ok(SpanSum { left: self.left, right: self.right, terms })
    }

    pub fn show(&self, pres: &GroupoidPresentation) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms.iter().map(|(c, s)| format!("{c}·{}", s.show(pres))).collect::<Vec<_>>().join(" + ")
    }
}

fn canonical_span(pres: &GroupoidPresentation, s: &Span) -> Result<Span, MackeyError> {
    let tr = pres.reduce_word(&s.tr_leg)?;
    let res = pres.reduce_word(&s.res_leg)?;
    let cut = tr.letters.iter().rposition(|l| !pres.generators[l.gen].invertible).map_or(0, |i| i + 1);
    let head = tr.letters[..cut].to_vec();
    let tail = PathWord { start: tr.start, letters: tr.letters[cut..].to_vec() };
    let apex = pres.word_target(&tail)?;
    let res = pres.reduce_word(&pres.concat(&res, &pres.inverse_word(&tail)?)?)?;
    Ok(Span { apex, tr_leg: PathWord { start: apex, letters: head }, res_leg: res })
}

/// `Σ c · M(tr-leg)∘M(res-leg)`, a map `M(right) → M(left)`.
pub fn evaluate_span_sum(
    m: &MackeyFunctor,
    pres: &GroupoidPresentation,
    s: &SpanSum,
) -> Result<IntMatrix, MackeyError> {
    m.check_object(s.left)?;
    m.check_object(s.right)?;
    s.check(pres)?;
    let mut acc = IntMatrix::zeros(m.dim(s.left), m.dim(s.right));
    for (c, span) in &s.terms {
        let t = m.transfer(pres, &span.tr_leg)?;
        let r = m.restriction(pres, &span.res_leg)?;
        acc = acc.add(&t.mul(&r).scale(&BigInt::from(*c)));
    }
    Ok(acc.reduce_rows(&m.orders(s.left)))
}

/// The span `s1 ∘ s2` computed through the pullback of `res(s1)` against `tr(s2)`.
pub fn compose_spans(pres: &GroupoidPresentation, s1: &Span, s2: &Span) -> Result<SpanSum, MackeyError> {
    let (left, y1) = s1.ends(pres)?;
    let (y2, right) = s2.ends(pres)?;
    if y1 != y2 {
        return Err(MackeyError::NonComposable(format!(
            "{} ends at {}, {} starts at {}",
            s1.show(pres),
            pres.objects[y1].name,
            s2.show(pres),
            pres.objects[y2].name
        )));
    }
    let g = &pres.group;
    let (p1, q2) = (&s1.res_leg, &s2.tr_leg);
    let f1 = pres.underlying_orbit_map(p1)?;
    let f2 = pres.underlying_orbit_map(q2)?;
    let (l1, l2, k) = (pres.isotropy(s1.apex).clone(), pres.isotropy(s2.apex).clone(), pres.isotropy(y1).clone());

    let fiber: Vec<Elem> = g.cosets(&l2).into_iter().filter(|&c| g.apply(&f2, c) == g.coset_rep(f1.rep, &k)).collect();
    let mut reps: Vec<Elem> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for &c in &fiber {
        if seen.contains(&c) {
            continue;
        }
        let orbit: Vec<Elem> = l1.members().iter().map(|&l| g.coset_rep(g.mul(l, c), &l2)).collect();
        reps.push(*orbit.iter().min().unwrap());
        seen.extend(orbit);
    }

    let mut terms = Vec::new();
    for c in reps {
        let conj = g.conjugate(g.inv(c), &l2);
        let stab = g.intersect(&l1, &conj);
        let span = if stab == l1 {
            let gy = resolve(pres, p1, q2, c)?;
            Span { apex: s1.apex, tr_leg: s1.tr_leg.clone(), res_leg: pres.concat(&s2.res_leg, &gy)? }
        } else if stab == conj {
            let gx = resolve(pres, q2, p1, g.inv(c))?;
            Span { apex: s2.apex, tr_leg: pres.concat(&s1.tr_leg, &gx)?, res_leg: s2.res_leg.clone() }
        } else {
            return Err(MackeyError::MissingApex(g.show(&stab)));
        };
        terms.push((1, span));
    }
    SpanSum { left, right, terms }.canonical(pres)
}

/// A word `u` with `b ∘ u ≃ a` whose orbit map is `eH ↦ cK`.
fn resolve(pres: &GroupoidPresentation, a: &PathWord, b: &PathWord, c: Elem) -> Result<PathWord, MackeyError> {
    let g = &pres.group;
    let (from, to) = (a.start, b.start);
    let want = g.orbit_map(pres.isotropy(from), pres.isotropy(to), c).ok();
    let matches = |u: &PathWord| -> bool {
        pres.word_target(u).ok() == Some(to) && u.start == from && pres.underlying_orbit_map(u).ok() == want
    };
    if want.is_none() {
        return Err(unresolved(pres, a, b, c));
    }
    let ra = pres.reduce_word(a)?;
    let rb = pres.reduce_word(b)?;
    let id = PathWord::identity(from);
    if ra == rb && from == to && matches(&id) {
        return Ok(id);
    }
    if pres.is_invertible(b) {
        let u = pres.reduce_word(&pres.concat(&pres.inverse_word(b)?, a)?)?;
        if matches(&u) {
            return Ok(u);
        }
    }
    for (lhs, rhs) in &pres.relations {
        for (x, y) in [(lhs, rhs), (rhs, lhs)] {
            let (Some(u), Some(v)) = (strip_prefix(&ra, x), strip_prefix(&rb, y)) else {
                continue;
            };
            if !pres.is_invertible(&u) || u.start != v.start {
                continue;
            }
            let inv_u = pres.inverse_word(&u)?;
            let Ok(cand) = pres.concat(&v, &inv_u) else { continue };
            let cand = pres.reduce_word(&cand)?;
            if matches(&cand) {
                return Ok(cand);
            }
        }
    }
    Err(unresolved(pres, a, b, c))
}

/// If `w = prefix ∘ u` in written order, returns `u`.
fn strip_prefix(prefix: &PathWord, w: &PathWord) -> Option<PathWord> {
    let n = prefix.letters.len();
    if w.letters.len() < n || w.letters[..n] != prefix.letters[..] {
        return None;
    }
    Some(PathWord { start: w.start, letters: w.letters[n..].to_vec() })
}

fn unresolved(pres: &GroupoidPresentation, a: &PathWord, b: &PathWord, c: Elem) -> MackeyError {
    MackeyError::UnresolvedPullbackPath {
        a: pres.show_word(a),
        b: pres.show_word(b),
        c: pres.group.element_name(c).to_string(),
    }
}

/// Bilinear extension of [`compose_spans`].
pub fn compose_span_sums(pres: &GroupoidPresentation, s1: &SpanSum, s2: &SpanSum) -> Result<SpanSum, MackeyError> {
    if s1.right != s2.left {
        return Err(MackeyError::NonComposable("sums do not share the middle object".into()));
    }
    let mut terms = Vec::new();
    for (c1, a) in &s1.terms {
        for (c2, b) in &s2.terms {
            for (c, s) in compose_spans(pres, a, b)?.terms {
                terms.push((c1 * c2 * c, s));
            }
        }
    }
    SpanSum { left: s1.left, right: s2.right, terms }.canonical(pres)
}

/// `res(f)` and `tr(f)` for every generator.
pub fn generating_spans(pres: &GroupoidPresentation) -> Vec<Span> {
    (0..pres.generators.len()).flat_map(|i| [Span::res(pres, i), Span::tr(pres, i)]).collect()
}

/// Every failed check; an empty list means the functor passed.
pub fn check_mackey_axioms(m: &MackeyFunctor, pres: &GroupoidPresentation) -> Vec<String> {
    let mut report = Vec::new();
    if m.values.len() != pres.objects.len() {
        return vec![format!("{} values for {} objects", m.values.len(), pres.objects.len())];
    }
    if m.res.len() != pres.generators.len() || m.tr.len() != pres.generators.len() {
        return vec!["one res and one tr matrix per generator required".into()];
    }
    for (i, gen) in pres.generators.iter().enumerate() {
        let (s, t) = (m.dim(gen.source), m.dim(gen.target));
        if (m.res[i].rows(), m.res[i].cols()) != (s, t) {
            report.push(format!("res({}) must be {}x{}", gen.name, s, t));
        }
        if (m.tr[i].rows(), m.tr[i].cols()) != (t, s) {
            report.push(format!("tr({}) must be {}x{}", gen.name, t, s));
        }
    }
    if !report.is_empty() {
        return report;
    }
    for (k, (lhs, rhs)) in pres.relations.iter().enumerate() {
        let same = |f: &dyn Fn(&PathWord) -> Result<IntMatrix, MackeyError>| match (f(lhs), f(rhs)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        };
        if !same(&|w| m.restriction(pres, w)) {
            report.push(format!("relation {}: restrictions differ", k + 1));
        }
        if !same(&|w| m.transfer(pres, w)) {
            report.push(format!("relation {}: transfers differ", k + 1));
        }
    }
    let spans = generating_spans(pres);
    for s1 in &spans {
        for s2 in &spans {
            let (Ok((left, y1)), Ok((y2, right))) = (s1.ends(pres), s2.ends(pres)) else { continue };
            if y1 != y2 {
                continue;
            }
            let label = format!("{} ∘ {}", s1.show(pres), s2.show(pres));
            let composed = match compose_spans(pres, s1, s2) {
                Ok(c) => c,
                Err(e) => {
                    report.push(format!("{label}: {e}"));
                    continue;
                }
            };
            let eval = |s: &Span, l, r| evaluate_span_sum(m, pres, &SpanSum { left: l, right: r, terms: vec![(1, s.clone())] });
            let lhs = match (eval(s1, left, y1), eval(s2, y2, right)) {
                (Ok(a), Ok(b)) => a.mul(&b).reduce_rows(&m.orders(left)),
                (Err(e), _) | (_, Err(e)) => {
                    report.push(format!("{label}: {e}"));
                    continue;
                }
            };
            match evaluate_span_sum(m, pres, &composed) {
                Ok(rhs) if rhs == lhs => {}
                Ok(rhs) => report.push(format!("{label}: product {lhs} but composite {rhs}")),
                Err(e) => report.push(format!("{label}: {e}")),
            }
        }
    }
    report
}

pub fn scalar(v: i64) -> IntMatrix {
    IntMatrix::from_rows(&[vec![v]])
}

pub fn is_scalar(m: &IntMatrix, v: i64) -> bool {
    m.rows() == 1 && m.cols() == 1 && *m.get(0, 0) == BigInt::from(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::skeleta;

    #[test]
    fn constant_lewis_diagrams() {
        let p = skeleta::s11();
        let p0 = p.generator("p0").unwrap();
        let z = constant_mackey(Coefficient::Integers, &p);
        assert!(is_scalar(&z.tr[p0], 2) && is_scalar(&z.res[p0], 1));
        let f2 = constant_mackey(Coefficient::F2, &p);
        assert!(is_scalar(&f2.tr[p0], 0));
    }

    #[test]
    fn res_after_tr_splits_into_two_spans() {
        let p = skeleta::s11();
        let p0 = p.generator("p0").unwrap();
        let c = compose_spans(&p, &Span::res(&p, p0), &Span::tr(&p, p0)).unwrap();
        assert_eq!(c.terms.len(), 2);
        assert_eq!(c.terms[0], (1, Span::identity(0)));
        assert_eq!(p.show_word(&c.terms[1].1.res_leg), "t.g^-1");
        let z = constant_mackey(Coefficient::Integers, &p);
        assert!(is_scalar(&evaluate_span_sum(&z, &p, &c).unwrap(), 2));
    }

    #[test]
    fn identity_spans_are_neutral() {
        let p = skeleta::s11();
        for s in generating_spans(&p) {
            let (l, r) = s.ends(&p).unwrap();
            let want = SpanSum::single(&p, 1, s.clone()).unwrap().canonical(&p).unwrap();
            assert_eq!(compose_spans(&p, &Span::identity(l), &s).unwrap(), want);
            assert_eq!(compose_spans(&p, &s, &Span::identity(r)).unwrap(), want);
        }
    }

    #[test]
    fn axioms() {
        let p = skeleta::s11();
        assert!(check_mackey_axioms(&constant_mackey(Coefficient::Integers, &p), &p).is_empty());
        assert!(check_mackey_axioms(&constant_mackey(Coefficient::F2, &p), &p).is_empty());
        assert!(check_mackey_axioms(&MackeyFunctor::zero(&p), &p).is_empty());
        let mut bad = constant_mackey(Coefficient::Integers, &p);
        bad.tr[p.generator("p0").unwrap()] = scalar(3);
        assert!(!check_mackey_axioms(&bad, &p).is_empty());
    }

    #[test]
    fn span_sum_evaluation() {
        let p = skeleta::s11();
        let p0 = p.generator("p0").unwrap();
        let z = constant_mackey(Coefficient::Integers, &p);
        let s = SpanSum { left: 1, right: 0, terms: vec![(1, Span::tr(&p, p0))] };
        assert!(is_scalar(&evaluate_span_sum(&z, &p, &s).unwrap(), 2));
        let f2 = constant_mackey(Coefficient::F2, &p);
        assert!(is_scalar(&evaluate_span_sum(&f2, &p, &s).unwrap(), 0));
    }
}
