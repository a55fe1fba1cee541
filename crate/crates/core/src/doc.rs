//! Input documents: TOML text with sections `group`, `groupoid`, `gamma`,
//! `coefficients`, `complex` and `local`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::abelian::{FGAbGroup, IntMatrix};
use crate::cw::{BoundaryEntry, CWGammaComplex, Cell, ClaimedMatrix};
use crate::group::{FiniteGroup, Subgroup};
use crate::groupoid::{split_letter, GroupoidPresentation, Letter, ObjId, PathWord};
use crate::local::{Character, Incidence, NonEquivCW};
use crate::mackey::{constant_mackey, Coefficient, MackeyFunctor, MackeyLabel, Span, SpanSum};
use crate::rep::{FiberDescriptor, GammaRep, Sign, SignDatum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocError {
    #[error("line {line}: parse error: {message}")]
    ParseError { line: usize, message: String },
    #[error("line {line}: unresolved reference to {kind} `{name}`")]
    UnresolvedReference { line: usize, kind: &'static str, name: String },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("document has no `{0}` section")]
    MissingSection(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientSpec {
    Constant(Coefficient),
    Custom(MackeyFunctor),
}

impl CoefficientSpec {
    pub fn functor(&self, pres: &GroupoidPresentation) -> MackeyFunctor {
        match self {
            CoefficientSpec::Constant(n) => constant_mackey(*n, pres),
            CoefficientSpec::Custom(m) => m.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSection {
    pub space: NonEquivCW,
    pub character: Character,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InputDocument {
    pub group: Option<FiniteGroup>,
    pub groupoid: Option<GroupoidPresentation>,
    pub gamma: Option<GammaRep>,
    pub coefficients: Option<CoefficientSpec>,
    pub complex: Option<CWGammaComplex>,
    pub local: Option<LocalSection>,
}

impl InputDocument {
    pub fn groupoid(&self) -> Result<&GroupoidPresentation, DocError> {
        self.groupoid.as_ref().ok_or(DocError::MissingSection("groupoid"))
    }

    pub fn gamma(&self) -> Result<&GammaRep, DocError> {
        self.gamma.as_ref().ok_or(DocError::MissingSection("gamma"))
    }

    pub fn complex(&self) -> Result<&CWGammaComplex, DocError> {
        self.complex.as_ref().ok_or(DocError::MissingSection("complex"))
    }

    pub fn local(&self) -> Result<&LocalSection, DocError> {
        self.local.as_ref().ok_or(DocError::MissingSection("local"))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    group: Option<RawGroup>,
    groupoid: Option<RawGroupoid>,
    gamma: Option<RawGamma>,
    coefficients: Option<RawCoefficients>,
    complex: Option<RawComplex>,
    local: Option<RawLocal>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    cyclic: Option<usize>,
    name: Option<String>,
    elements: Option<Vec<String>>,
    table: Option<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawIsotropy {
    Named(String),
    Generated(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawObject {
    name: Spanned<String>,
    isotropy: RawIsotropy,
    component: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: Spanned<String>,
    source: Spanned<String>,
    target: Spanned<String>,
    coset_rep: Option<Spanned<String>>,
    #[serde(default)]
    invertible: bool,
    #[serde(default)]
    constant: bool,
}

type RawWord = Vec<Spanned<String>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupoid {
    objects: Vec<RawObject>,
    #[serde(default)]
    generators: Vec<RawGenerator>,
    #[serde(default)]
    relations: Vec<(RawWord, RawWord)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDims {
    trivial: u32,
    #[serde(default)]
    sign: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFiber {
    object: Spanned<String>,
    dims: RawDims,
    #[serde(default)]
    shift: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSign {
    generator: Spanned<String>,
    kind: Spanned<String>,
    signs: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGamma {
    fibers: Vec<RawFiber>,
    #[serde(default)]
    signs: Vec<RawSign>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoefficients {
    constant: Option<Spanned<String>>,
    custom: Option<RawCustom>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawValue {
    object: Spanned<String>,
    group: Spanned<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaps {
    generator: Spanned<String>,
    res: Vec<Vec<i64>>,
    tr: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCustom {
    values: Vec<RawValue>,
    maps: Vec<RawMaps>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCell {
    name: Spanned<String>,
    degree: usize,
    center: Spanned<String>,
    rep: RawDims,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    #[serde(default = "one")]
    coeff: i64,
    apex: Spanned<String>,
    #[serde(default)]
    tr_leg: RawWord,
    #[serde(default)]
    res_leg: RawWord,
}

fn one() -> i64 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBoundary {
    from: Spanned<String>,
    to: Spanned<String>,
    #[serde(default)]
    terms: Vec<RawTerm>,
    underlying: Option<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    cells: Vec<RawCell>,
    #[serde(default)]
    boundary: Vec<RawBoundary>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLocalCell {
    name: Spanned<String>,
    degree: usize,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawPi1 {
    #[serde(default)]
    generators: Vec<String>,
    #[serde(default)]
    relations: Vec<(RawWord, RawWord)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIncidenceTerm {
    degree: i64,
    #[serde(default)]
    path: RawWord,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIncidence {
    from: Spanned<String>,
    to: Spanned<String>,
    terms: Vec<RawIncidenceTerm>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLocal {
    cells: Vec<RawLocalCell>,
    #[serde(default)]
    pi1: RawPi1,
    #[serde(default)]
    incidences: Vec<RawIncidence>,
    character: Option<BTreeMap<String, Spanned<i64>>>,
}

struct Ctx<'a> {
    text: &'a str,
    errors: Vec<DocError>,
}

impl Ctx<'_> {
    fn line(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())].matches('\n').count() + 1
    }

    fn at<T>(&self, s: &Spanned<T>) -> usize {
        self.line(s.span().start)
    }

    fn unresolved<T>(&mut self, kind: &'static str, s: &Spanned<String>) -> Option<T> {
        self.errors.push(DocError::UnresolvedReference { line: self.at(s), kind, name: s.get_ref().clone() });
        None
    }

    fn semantic<T>(&mut self, line: usize, message: impl Into<String>) -> Option<T> {
        self.errors.push(DocError::Semantic { line, message: message.into() });
        None
    }
}

/// Parses and resolves a document; every problem found is returned.
pub fn parse_input(text: &str) -> Result<InputDocument, Vec<DocError>> {
    let raw: RawDoc = toml::from_str(text).map_err(|e| {
        let line = e.span().map_or(1, |s| text[..s.start.min(text.len())].matches('\n').count() + 1);
        vec![DocError::ParseError { line, message: e.message().to_string() }]
    })?;
    if raw.group.is_none()
        && raw.groupoid.is_none()
        && raw.gamma.is_none()
        && raw.coefficients.is_none()
        && raw.complex.is_none()
        && raw.local.is_none()
    {
        return Err(vec![DocError::ParseError { line: 1, message: "empty document".into() }]);
    }
    let mut cx = Ctx { text, errors: Vec::new() };
    let mut doc = InputDocument::default();
    doc.group = raw.group.as_ref().and_then(|g| resolve_group(&mut cx, g));
    if let Some(rg) = &raw.groupoid {
        let group = doc.group.clone().unwrap_or_else(FiniteGroup::trivial);
        doc.groupoid = resolve_groupoid(&mut cx, group, rg);
    }
    if let (Some(p), Some(rg)) = (&doc.groupoid, &raw.gamma) {
        doc.gamma = resolve_gamma(&mut cx, p, rg);
    } else if raw.gamma.is_some() {
        cx.errors.push(DocError::MissingSection("groupoid"));
    }
    if let Some(rc) = &raw.coefficients {
        doc.coefficients = resolve_coefficients(&mut cx, doc.groupoid.as_ref(), rc);
    }
    if let Some(rc) = &raw.complex {
        match (&doc.groupoid, &doc.gamma) {
            (Some(p), Some(g)) => doc.complex = resolve_complex(&mut cx, p, g, rc),
            _ if raw.groupoid.is_none() => cx.errors.push(DocError::MissingSection("groupoid")),
            _ if raw.gamma.is_none() => cx.errors.push(DocError::MissingSection("gamma")),
            _ => {}
        }
    }
    if let Some(rl) = &raw.local {
        doc.local = resolve_local(&mut cx, rl);
    }
    if cx.errors.is_empty() {
        Ok(doc)
    } else {
        Err(cx.errors)
    }
}

fn resolve_group(cx: &mut Ctx, g: &RawGroup) -> Option<FiniteGroup> {
    match (g.cyclic, &g.elements, &g.table) {
        (Some(n), None, None) if n >= 1 => Some(FiniteGroup::cyclic(n)),
        (None, Some(names), Some(table)) => {
            let mut rows = Vec::new();
            for row in table {
                let mut r = Vec::new();
                for name in row {
                    match names.iter().position(|n| n == name) {
                        Some(i) => r.push(i),
                        None => return cx.semantic(1, format!("group table names unknown element `{name}`")),
                    }
                }
                rows.push(r);
            }
            let name = g.name.clone().unwrap_or_else(|| format!("G{}", names.len()));
            match FiniteGroup::from_table(&name, names.clone(), rows) {
                Ok(g) => Some(g),
                Err(e) => cx.semantic(1, e.to_string()),
            }
        }
        _ => cx.semantic(1, "group needs either `cyclic = n` or `elements` with `table`"),
    }
}

fn resolve_isotropy(cx: &mut Ctx, group: &FiniteGroup, iso: &RawIsotropy, line: usize) -> Option<Subgroup> {
    match iso {
        RawIsotropy::Named(s) if s == "e" => Some(group.trivial_subgroup()),
        RawIsotropy::Named(s) if s == "G" || s == group.name() => Some(group.whole()),
        RawIsotropy::Named(s) => cx.semantic(line, format!("isotropy `{s}`: use \"e\", \"G\" or a list of generators")),
        RawIsotropy::Generated(gens) => {
            let mut elems = Vec::new();
            for name in gens {
                match group.element(name) {
                    Some(x) => elems.push(x),
                    None => return cx.semantic(line, format!("unknown group element `{name}`")),
                }
            }
            Some(group.generated(&elems))
        }
    }
}

fn resolve_groupoid(cx: &mut Ctx, group: FiniteGroup, rg: &RawGroupoid) -> Option<GroupoidPresentation> {
    let mut p = GroupoidPresentation::new(group);
    let mut ok = true;
    for o in &rg.objects {
        let line = cx.at(&o.name);
        match resolve_isotropy(cx, &p.group, &o.isotropy, line) {
            Some(h) => {
                let x = p.add_object(o.name.get_ref(), h);
                p.objects[x].component = o.component.clone();
            }
            None => ok = false,
        }
    }
    if !ok {
        return None;
    }
    for g in &rg.generators {
        let obj = |cx: &mut Ctx, s: &Spanned<String>| match p.object(s.get_ref()) {
            Some(x) => Some(x),
            None => cx.unresolved("object", s),
        };
        let (Some(src), Some(tgt)) = (obj(cx, &g.source), obj(cx, &g.target)) else {
            ok = false;
            continue;
        };
        let rep = match &g.coset_rep {
            None => p.group.identity(),
            Some(s) => match p.group.element(s.get_ref()) {
                Some(x) => x,
                None => {
                    cx.unresolved::<()>("group element", s);
                    ok = false;
                    continue;
                }
            },
        };
        let id = p.add_generator(g.name.get_ref(), src, tgt, rep, g.invertible);
        p.generators[id].constant = g.constant;
    }
    if !ok {
        return None;
    }
    for (lhs, rhs) in &rg.relations {
        let (l, r) = resolve_word_pair(cx, &p, lhs, rhs)?;
        p.add_relation(l, r);
    }
    let report = p.validate();
    if !report.is_empty() {
        let line = rg.objects.first().map_or(1, |o| cx.at(&o.name));
        for r in report {
            cx.semantic::<()>(line, format!("groupoid: {r}"));
        }
        return None;
    }
    Some(p)
}

fn resolve_letters(cx: &mut Ctx, p: &GroupoidPresentation, w: &RawWord) -> Option<Vec<Letter>> {
    let mut out = Vec::new();
    for s in w {
        let (name, inverse) = split_letter(s.get_ref());
        match p.generator(name) {
            Some(gen) => out.push(Letter { gen, inverse }),
            None => {
                cx.errors.push(DocError::UnresolvedReference { line: cx.at(s), kind: "generator", name: name.into() });
                return None;
            }
        }
    }
    Some(out)
}

fn resolve_word(cx: &mut Ctx, p: &GroupoidPresentation, w: &RawWord, start: ObjId) -> Option<PathWord> {
    let letters = resolve_letters(cx, p, w)?;
    let start = letters.last().map_or(start, |&l| p.letter_source(l));
    let word = PathWord { start, letters };
    match p.word_target(&word) {
        Ok(_) => Some(word),
        Err(e) => {
            let line = w.first().map_or(1, |s| cx.at(s));
            cx.semantic(line, e.to_string())
        }
    }
}

fn resolve_word_pair(
    cx: &mut Ctx,
    p: &GroupoidPresentation,
    lhs: &RawWord,
    rhs: &RawWord,
) -> Option<(PathWord, PathWord)> {
    let l = resolve_letters(cx, p, lhs)?;
    let r = resolve_letters(cx, p, rhs)?;
    let start = l.last().or(r.last()).map_or(0, |&x| p.letter_source(x));
    let l = resolve_word(cx, p, lhs, start)?;
    let r = resolve_word(cx, p, rhs, start)?;
    Some((l, r))
}

fn sign_of(cx: &mut Ctx, v: i64, line: usize) -> Option<Sign> {
    match Sign::from_i64(v) {
        Some(s) => Some(s),
        None => cx.semantic(line, format!("sign must be 1 or -1, got {v}")),
    }
}

fn resolve_gamma(cx: &mut Ctx, p: &GroupoidPresentation, rg: &RawGamma) -> Option<GammaRep> {
    let mut fibers: Vec<Option<FiberDescriptor>> = vec![None; p.objects.len()];
    for f in &rg.fibers {
        let Some(x) = p.object(f.object.get_ref()) else {
            cx.unresolved::<()>("object", &f.object);
            continue;
        };
        fibers[x] = Some(FiberDescriptor::new(p.objects[x].isotropy.clone(), f.dims.trivial, f.dims.sign, f.shift));
    }
    let mut signs = vec![None; p.generators.len()];
    for s in &rg.signs {
        let line = cx.at(&s.generator);
        let Some(gen) = p.generator(s.generator.get_ref()) else {
            cx.unresolved::<()>("generator", &s.generator);
            continue;
        };
        let want = match s.kind.get_ref().as_str() {
            "free_to_free" | "free_to_fixed" => 1,
            "fixed_to_fixed" => 2,
            other => {
                cx.semantic::<()>(line, format!("unknown sign kind `{other}`"));
                continue;
            }
        };
        if s.signs.len() != want {
            cx.semantic::<()>(line, format!("kind {} takes {want} sign(s)", s.kind.get_ref()));
            continue;
        }
        let vals: Option<Vec<Sign>> = s.signs.iter().map(|&v| sign_of(cx, v, line)).collect();
        let Some(vals) = vals else { continue };
        signs[gen] = Some(match s.kind.get_ref().as_str() {
            "free_to_free" => {
                let a = p.generator_orbit_map(gen).map(|f| f.rep).unwrap_or(p.generators[gen].coset_rep);
                SignDatum::FreeToFree { a, s: vals[0] }
            }
            "free_to_fixed" => SignDatum::FreeToFixed { s: vals[0] },
            _ => SignDatum::FixedToFixed { triv: vals[0], sign: vals[1] },
        });
    }
    let mut out = Vec::new();
    for (x, f) in fibers.into_iter().enumerate() {
        match f {
            Some(f) => out.push(f),
            None => return cx.semantic(1, format!("gamma has no fiber for object {}", p.objects[x].name)),
        }
    }
    Some(GammaRep { fibers: out, signs })
}

/// Parses `0`, `Z`, `Z^k`, `Z/n`, `(Z/n)^k` and sums of these joined by `+`.
pub fn parse_group(s: &str) -> Option<Vec<num_bigint::BigInt>> {
    let mut orders = Vec::new();
    for term in s.split('+').map(str::trim) {
        let (base, power) = match term.rsplit_once('^') {
            Some((b, k)) => (b.trim().trim_start_matches('(').trim_end_matches(')'), k.trim().parse::<usize>().ok()?),
            None => (term, 1),
        };
        let order: u64 = match base {
            "0" => continue,
            "Z" => 0,
            _ => base.strip_prefix("Z/")?.parse().ok().filter(|&n: &u64| n >= 2)?,
        };
        orders.extend(std::iter::repeat(num_bigint::BigInt::from(order)).take(power));
    }
    Some(orders)
}

fn resolve_coefficients(
    cx: &mut Ctx,
    p: Option<&GroupoidPresentation>,
    rc: &RawCoefficients,
) -> Option<CoefficientSpec> {
    match (&rc.constant, &rc.custom) {
        (Some(c), None) => match Coefficient::parse(c.get_ref()) {
            Some(n) => Some(CoefficientSpec::Constant(n)),
            None => cx.semantic(cx.at(c), format!("unknown coefficient `{}`", c.get_ref())),
        },
        (None, Some(custom)) => {
            let Some(p) = p else {
                cx.errors.push(DocError::MissingSection("groupoid"));
                return None;
            };
            resolve_custom(cx, p, custom)
        }
        _ => cx.semantic(1, "coefficients need exactly one of `constant` or `custom`"),
    }
}

fn matrix(rows: &[Vec<i64>], r: usize, c: usize) -> Option<IntMatrix> {
    if r == 0 || c == 0 {
        return rows.iter().all(|row| row.is_empty()).then(|| IntMatrix::zeros(r, c));
    }
    (rows.len() == r && rows.iter().all(|row| row.len() == c)).then(|| IntMatrix::from_rows(rows))
}

fn resolve_custom(cx: &mut Ctx, p: &GroupoidPresentation, rc: &RawCustom) -> Option<CoefficientSpec> {
    let mut values = vec![None; p.objects.len()];
    for v in &rc.values {
        let Some(x) = p.object(v.object.get_ref()) else {
            cx.unresolved::<()>("object", &v.object);
            continue;
        };
        let Some(orders) = parse_group(v.group.get_ref()) else {
            cx.semantic::<()>(cx.at(&v.group), format!("cannot read group `{}`", v.group.get_ref()));
            continue;
        };
        let g = FGAbGroup::from_orders(&orders);
        if g.generator_orders() != orders {
            cx.semantic::<()>(cx.at(&v.group), format!("write `{}` in canonical form as `{g}`", v.group.get_ref()));
            continue;
        }
        values[x] = Some(g);
    }
    let values: Vec<FGAbGroup> = values.into_iter().map(|v| v.unwrap_or_else(FGAbGroup::zero)).collect();
    let mut res: Vec<Option<IntMatrix>> = vec![None; p.generators.len()];
    let mut tr: Vec<Option<IntMatrix>> = vec![None; p.generators.len()];
    for m in &rc.maps {
        let line = cx.at(&m.generator);
        let Some(gen) = p.generator(m.generator.get_ref()) else {
            cx.unresolved::<()>("generator", &m.generator);
            continue;
        };
        let (s, t) = (p.generators[gen].source, p.generators[gen].target);
        let (ds, dt) = (values[s].num_generators(), values[t].num_generators());
        match (matrix(&m.res, ds, dt), matrix(&m.tr, dt, ds)) {
            (Some(r), Some(q)) => {
                res[gen] = Some(r.reduce_rows(&values[s].generator_orders()));
                tr[gen] = Some(q.reduce_rows(&values[t].generator_orders()));
            }
            _ => {
                cx.semantic::<()>(line, format!("res must be {ds}x{dt} and tr {dt}x{ds}"));
            }
        }
    }
    let mut out_res = Vec::new();
    let mut out_tr = Vec::new();
    for (i, g) in p.generators.iter().enumerate() {
        match (res[i].take(), tr[i].take()) {
            (Some(r), Some(t)) => {
                out_res.push(r);
                out_tr.push(t);
            }
            _ => {
                let (ds, dt) = (values[g.source].num_generators(), values[g.target].num_generators());
                if ds == 0 || dt == 0 {
                    out_res.push(IntMatrix::zeros(ds, dt));
                    out_tr.push(IntMatrix::zeros(dt, ds));
                } else {
                    return cx.semantic(1, format!("custom coefficients have no maps for generator {}", g.name));
                }
            }
        }
    }
    Some(CoefficientSpec::Custom(MackeyFunctor { values, res: out_res, tr: out_tr, label: MackeyLabel::Custom }))
}

fn resolve_complex(cx: &mut Ctx, p: &GroupoidPresentation, gamma: &GammaRep, rc: &RawComplex) -> Option<CWGammaComplex> {
    let mut cells = Vec::new();
    for c in &rc.cells {
        let Some(x) = p.object(c.center.get_ref()) else {
            cx.unresolved::<()>("object", &c.center);
            continue;
        };
        let rep = FiberDescriptor::new(p.objects[x].isotropy.clone(), c.rep.trivial, c.rep.sign, 0);
        cells.push(Cell { name: c.name.get_ref().clone(), degree: c.degree, center: x, rep });
    }
    if cells.len() != rc.cells.len() {
        return None;
    }
    let mut boundary = Vec::new();
    for b in &rc.boundary {
        let find = |cx: &mut Ctx, s: &Spanned<String>| match cells.iter().position(|c: &Cell| &c.name == s.get_ref()) {
            Some(i) => Some(i),
            None => cx.unresolved("cell", s),
        };
        let (Some(from), Some(to)) = (find(cx, &b.from), find(cx, &b.to)) else { continue };
        let mut terms = Vec::new();
        for t in &b.terms {
            let Some(apex) = p.object(t.apex.get_ref()) else {
                cx.unresolved::<()>("object", &t.apex);
                continue;
            };
            let (Some(tr), Some(res)) = (resolve_word(cx, p, &t.tr_leg, apex), resolve_word(cx, p, &t.res_leg, apex))
            else {
                continue;
            };
            if tr.start != apex || res.start != apex {
                cx.semantic::<()>(cx.at(&t.apex), format!("legs must start at the apex {}", t.apex.get_ref()));
                continue;
            }
            terms.push((t.coeff, Span { apex, tr_leg: tr, res_leg: res }));
        }
        let span_sum = SpanSum { left: cells[from].center, right: cells[to].center, terms };
        if let Err(e) = span_sum.check(p) {
            cx.semantic::<()>(cx.at(&b.from), e.to_string());
            continue;
        }
        let underlying = b.underlying.clone().map(|rows| ClaimedMatrix { rows });
        boundary.push(BoundaryEntry { from, to, span_sum, underlying });
    }
    Some(CWGammaComplex { presentation: p.clone(), gamma: gamma.clone(), cells, boundary })
}

fn resolve_local(cx: &mut Ctx, rl: &RawLocal) -> Option<LocalSection> {
    let names: Vec<&str> = rl.pi1.generators.iter().map(String::as_str).collect();
    let mut x = NonEquivCW::new(&names);
    for c in &rl.cells {
        x.add_cell(c.name.get_ref(), c.degree);
    }
    for (lhs, rhs) in &rl.pi1.relations {
        let (l, r) = resolve_word_pair(cx, &x.pi1, lhs, rhs)?;
        x.pi1.add_relation(l, r);
    }
    for inc in &rl.incidences {
        let find = |cx: &mut Ctx, s: &Spanned<String>| match x.cells.iter().position(|c| &c.name == s.get_ref()) {
            Some(i) => Some(i),
            None => cx.unresolved("cell", s),
        };
        let (Some(from), Some(to)) = (find(cx, &inc.from), find(cx, &inc.to)) else { continue };
        let mut terms = Vec::new();
        for t in &inc.terms {
            terms.push((t.degree, resolve_word(cx, &x.pi1, &t.path, 0)?));
        }
        x.incidences.push(Incidence { from, to, terms });
    }
    let mut signs = vec![Sign::Plus; x.pi1.generators.len()];
    for (name, v) in rl.character.iter().flatten() {
        let line = cx.at(v);
        match x.pi1.generator(name) {
            Some(g) => signs[g] = sign_of(cx, *v.get_ref(), line)?,
            None => {
                cx.errors.push(DocError::UnresolvedReference { line, kind: "generator", name: name.clone() });
            }
        }
    }
    Some(LocalSection { space: x, character: Character { signs } })
}

impl fmt::Display for CoefficientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientSpec::Constant(n) => write!(f, "{n}"),
            CoefficientSpec::Custom(_) => write!(f, "custom"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_a_parse_error() {
        assert!(matches!(parse_input("").unwrap_err()[0], DocError::ParseError { .. }));
        assert!(matches!(parse_input("  \n# nothing\n").unwrap_err()[0], DocError::ParseError { .. }));
    }

    #[test]
    fn undeclared_generator_is_named() {
        let text = r#"
[group]
cyclic = 2

[groupoid]
objects = [{ name = "b", isotropy = "e" }]
generators = [{ name = "g", source = "b", target = "b", invertible = true }]
relations = [[["q0"], ["g"]]]
"#;
        let errs = parse_input(text).unwrap_err();
        assert_eq!(errs, vec![DocError::UnresolvedReference { line: 8, kind: "generator", name: "q0".into() }]);
    }

    #[test]
    fn group_strings() {
        let b = |v: &[u64]| v.iter().map(|&x| num_bigint::BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(parse_group("Z"), Some(b(&[0])));
        assert_eq!(parse_group("Z^2 + Z/2"), Some(b(&[0, 0, 2])));
        assert_eq!(parse_group("(Z/2)^2"), Some(b(&[2, 2])));
        assert_eq!(parse_group("0"), Some(vec![]));
        assert_eq!(parse_group("Q"), None);
    }
}
