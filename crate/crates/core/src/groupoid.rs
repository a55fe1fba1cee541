//! Finite presentations of a skeleton of the equivariant fundamental groupoid.
//!
//! A word is stored in written order; the rightmost letter is applied first.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::group::{Elem, FiniteGroup, OrbitMap, Subgroup};

pub type ObjId = usize;
pub type GenId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("non-composable word {word}: {reason}")]
    NonComposable { word: String, reason: String },
    #[error("generator {0} is not invertible")]
    NotInvertible(String),
    #[error("generator {gen}: {reason}")]
    BadGenerator { gen: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidObject {
    pub name: String,
    pub isotropy: Subgroup,
    /// Which component of the fixed set the point lies in; documentation only.
    pub component: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMorphism {
    pub name: String,
    pub source: ObjId,
    pub target: ObjId,
    pub coset_rep: Elem,
    pub invertible: bool,
    /// The path part is constant; such letters drop out of path labels.
    pub constant: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: GenId,
    pub inverse: bool,
}

impl Letter {
    pub fn fwd(gen: GenId) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(gen: GenId) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn flipped(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

/// A composable word of generators, starting at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub start: ObjId,
    pub letters: Vec<Letter>,
}

impl PathWord {
    pub fn identity(start: ObjId) -> Self {
        PathWord { start, letters: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidPresentation {
    pub group: FiniteGroup,
    pub objects: Vec<GroupoidObject>,
    pub generators: Vec<GeneratorMorphism>,
    pub relations: Vec<(PathWord, PathWord)>,
}

impl GroupoidPresentation {
    pub fn new(group: FiniteGroup) -> Self {
        GroupoidPresentation { group, objects: Vec::new(), generators: Vec::new(), relations: Vec::new() }
    }

    pub fn add_object(&mut self, name: &str, isotropy: Subgroup) -> ObjId {
        self.objects.push(GroupoidObject { name: name.to_string(), isotropy, component: None });
        self.objects.len() - 1
    }

    pub fn add_generator(&mut self, name: &str, source: ObjId, target: ObjId, coset_rep: Elem, invertible: bool) -> GenId {
        self.generators.push(GeneratorMorphism {
            name: name.to_string(),
            source,
            target,
            coset_rep,
            invertible,
            constant: false,
        });
        self.generators.len() - 1
    }

    pub fn add_relation(&mut self, lhs: PathWord, rhs: PathWord) {
        self.relations.push((lhs, rhs));
    }

    pub fn object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o.name == name)
    }

    pub fn generator(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn isotropy(&self, x: ObjId) -> &Subgroup {
        &self.objects[x].isotropy
    }

    pub fn is_free(&self, x: ObjId) -> bool {
        self.objects[x].isotropy.is_trivial()
    }

    /// Parses letters such as `p0` and `g^-1`; `start` is needed only for the empty word.
    pub fn word(&self, start: ObjId, letters: &[&str]) -> Result<PathWord, GroupoidError> {
        let mut out = Vec::with_capacity(letters.len());
        for s in letters {
            let (name, inverse) = split_letter(s);
            let gen = self.generator(name).ok_or_else(|| GroupoidError::NonComposable {
                word: letters.join("."),
                reason: format!("unknown generator {name}"),
            })?;
            out.push(Letter { gen, inverse });
        }
        let start = match out.last() {
            Some(&l) => self.letter_source(l),
            None => start,
        };
        let w = PathWord { start, letters: out };
        self.word_target(&w)?;
        Ok(w)
    }

    pub fn letter_source(&self, l: Letter) -> ObjId {
        let g = &self.generators[l.gen];
        if l.inverse {
            g.target
        } else {
            g.source
        }
    }

    pub fn letter_target(&self, l: Letter) -> ObjId {
        let g = &self.generators[l.gen];
        if l.inverse {
            g.source
        } else {
            g.target
        }
    }

    /// Endpoint of the word after checking that consecutive letters chain.
    pub fn word_target(&self, w: &PathWord) -> Result<ObjId, GroupoidError> {
        let mut at = w.start;
        for &l in w.letters.iter().rev() {
            if self.letter_source(l) != at {
                return Err(GroupoidError::NonComposable {
                    word: self.show_word(w),
                    reason: format!(
                        "{} starts at {}, expected {}",
                        self.show_letter(l),
                        self.objects[self.letter_source(l)].name,
                        self.objects[at].name
                    ),
                });
            }
            at = self.letter_target(l);
        }
        Ok(at)
    }

    /// Free reduction only; relations are never applied.
    pub fn reduce_word(&self, w: &PathWord) -> Result<PathWord, GroupoidError> {
        self.word_target(w)?;
        Ok(PathWord { start: w.start, letters: free_reduce(&w.letters) })
    }

    /// `outer ∘ inner`.
    pub fn concat(&self, outer: &PathWord, inner: &PathWord) -> Result<PathWord, GroupoidError> {
        let mid = self.word_target(inner)?;
        if outer.start != mid {
            return Err(GroupoidError::NonComposable {
                word: format!("{} ∘ {}", self.show_word(outer), self.show_word(inner)),
                reason: format!("{} ends at {}, {} starts at {}",
                    self.show_word(inner), self.objects[mid].name,
                    self.show_word(outer), self.objects[outer.start].name),
            });
        }
        let mut letters = outer.letters.clone();
        letters.extend_from_slice(&inner.letters);
        Ok(PathWord { start: inner.start, letters })
    }

    pub fn is_invertible(&self, w: &PathWord) -> bool {
        w.letters.iter().all(|l| self.generators[l.gen].invertible)
    }

    pub fn inverse_word(&self, w: &PathWord) -> Result<PathWord, GroupoidError> {
        if let Some(l) = w.letters.iter().find(|l| !self.generators[l.gen].invertible) {
            return Err(GroupoidError::NotInvertible(self.generators[l.gen].name.clone()));
        }
        let end = self.word_target(w)?;
        Ok(PathWord { start: end, letters: w.letters.iter().rev().map(|l| l.flipped()).collect() })
    }

    pub fn generator_orbit_map(&self, gen: GenId) -> Result<OrbitMap, GroupoidError> {
        let g = &self.generators[gen];
        self.group
            .orbit_map(self.isotropy(g.source), self.isotropy(g.target), g.coset_rep)
            .map_err(|e| GroupoidError::BadGenerator { gen: g.name.clone(), reason: e.to_string() })
    }

    fn letter_orbit_map(&self, l: Letter) -> Result<OrbitMap, GroupoidError> {
        let f = self.generator_orbit_map(l.gen)?;
        if !l.inverse {
            return Ok(f);
        }
        let g = &self.generators[l.gen];
        if !g.invertible {
            return Err(GroupoidError::NotInvertible(g.name.clone()));
        }
        self.group
            .inverse(&f)
            .map_err(|e| GroupoidError::BadGenerator { gen: g.name.clone(), reason: e.to_string() })
    }

    pub fn underlying_orbit_map(&self, w: &PathWord) -> Result<OrbitMap, GroupoidError> {
        self.word_target(w)?;
        let mut acc = self.group.identity_map(self.isotropy(w.start));
        for &l in w.letters.iter().rev() {
            let f = self.letter_orbit_map(l)?;
            acc = self.group.compose(&f, &acc).map_err(|e| GroupoidError::NonComposable {
                word: self.show_word(w),
                reason: e.to_string(),
            })?;
        }
        Ok(acc)
    }

    /// Every violated invariant, as human-readable entries.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        let mut seen = BTreeSet::new();
        for o in &self.objects {
            if !seen.insert(("object", o.name.as_str())) {
                report.push(format!("duplicate object name {}", o.name));
            }
            if self.group.subgroup(o.isotropy.members()).is_err() {
                report.push(format!("object {}: isotropy is not a subgroup", o.name));
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            if !seen.insert(("generator", g.name.as_str())) {
                report.push(format!("duplicate generator name {}", g.name));
            }
            if g.source >= self.objects.len() || g.target >= self.objects.len() {
                report.push(format!("generator {}: unresolved endpoint", g.name));
                continue;
            }
            match self.generator_orbit_map(i) {
                Err(e) => report.push(e.to_string()),
                Ok(f) => {
                    if g.invertible && !self.group.is_iso(&f) {
                        report.push(format!("generator {}: declared invertible but orbit map is not an isomorphism", g.name));
                    }
                }
            }
        }
        for (k, (lhs, rhs)) in self.relations.iter().enumerate() {
            let label = format!("relation {} ({} = {})", k + 1, self.show_word(lhs), self.show_word(rhs));
            let ends = (self.word_target(lhs), self.word_target(rhs));
            let (tl, tr) = match ends {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    report.push(format!("{label}: non-composable relation: {e}"));
                    continue;
                }
            };
            if lhs.start != rhs.start || tl != tr {
                report.push(format!("{label}: non-composable relation: endpoints differ"));
                continue;
            }
            match (self.underlying_orbit_map(lhs), self.underlying_orbit_map(rhs)) {
                (Ok(a), Ok(b)) if a != b => {
                    report.push(format!("{label}: underlying orbit maps differ"));
                }
                (Err(e), _) | (_, Err(e)) => report.push(format!("{label}: {e}")),
                _ => {}
            }
        }
        report
    }

    pub fn show_letter(&self, l: Letter) -> String {
        let name = &self.generators[l.gen].name;
        if l.inverse {
            format!("{name}^-1")
        } else {
            name.clone()
        }
    }

    pub fn show_word(&self, w: &PathWord) -> String {
        if w.letters.is_empty() {
            return format!("id_{}", self.objects.get(w.start).map_or("?", |o| o.name.as_str()));
        }
        w.letters.iter().map(|&l| self.show_letter(l)).collect::<Vec<_>>().join(".")
    }

    /// Generators grouped by (source, target), for quick lookup.
    pub fn hom_generators(&self) -> BTreeMap<(ObjId, ObjId), Vec<GenId>> {
        let mut m: BTreeMap<(ObjId, ObjId), Vec<GenId>> = BTreeMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            m.entry((g.source, g.target)).or_default().push(i);
        }
        m
    }
}

pub fn split_letter(s: &str) -> (&str, bool) {
    match s.strip_suffix("^-1") {
        Some(name) => (name, true),
        None => (s, false),
    }
}

/// Cancels adjacent `x·x⁻¹` pairs.
pub fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last().is_some_and(|&prev| prev == l.flipped()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}{}", self.gen, if self.inverse { "^-1" } else { "" })
    }
}

/// Presentations used in tests, examples and fixtures.
pub mod skeleta {
    use super::*;

    /// ΠS^{1,1}: objects b, b0, b1; generators g, t, p0, p1.
    pub fn s11() -> GroupoidPresentation {
        let g = FiniteGroup::cyclic(2);
        let tau = g.tau().unwrap();
        let (e, c2) = (g.trivial_subgroup(), g.whole());
        let mut p = GroupoidPresentation::new(g);
        let b = p.add_object("b", e);
        let b0 = p.add_object("b0", c2.clone());
        let b1 = p.add_object("b1", c2);
        p.add_generator("g", b, b, 0, true);
        p.add_generator("t", b, b, tau, true);
        p.add_generator("p0", b, b0, 0, false);
        p.add_generator("p1", b, b1, 0, false);
        let w = |p: &GroupoidPresentation, s: &[&str]| p.word(b, s).unwrap();
        let rels = [
            (w(&p, &["p0", "g"]), w(&p, &["p0", "t"])),
            (w(&p, &["p1", "t"]), w(&p, &["p1"])),
            (w(&p, &["t", "t"]), w(&p, &[])),
            (w(&p, &["t", "g"]), w(&p, &["g^-1", "t"])),
        ];
        for (l, r) in rels {
            p.add_relation(l, r);
        }
        p
    }

    /// ΠP(R^{3,1}): ΠS^{1,1} plus the loop g0 at b0.
    pub fn rp2_twist() -> GroupoidPresentation {
        let mut p = s11();
        let (b, b0) = (0, 1);
        p.add_generator("g0", b0, b0, 0, true);
        p.relations.clear();
        let w = |p: &GroupoidPresentation, s: &[&str]| p.word(b, s).unwrap();
        let rels = [
            (w(&p, &["p0", "g"]), w(&p, &["p0", "t"])),
            (w(&p, &["p1", "t"]), w(&p, &["p1"])),
            (w(&p, &["t", "t"]), w(&p, &[])),
            (w(&p, &["g", "g"]), w(&p, &[])),
            (w(&p, &["t", "g"]), w(&p, &["g^-1", "t"])),
            (w(&p, &["g^-1", "t"]), w(&p, &["g", "t"])),
            (w(&p, &["g0", "p0"]), w(&p, &["p0", "g"])),
        ];
        for (l, r) in rels {
            p.add_relation(l, r);
        }
        p
    }

    /// Trivial group, one object, loop g with g·g = id.
    pub fn rp_infinity_stage() -> GroupoidPresentation {
        let g = FiniteGroup::trivial();
        let e = g.trivial_subgroup();
        let mut p = GroupoidPresentation::new(g);
        let b = p.add_object("b", e);
        p.add_generator("g", b, b, 0, true);
        let gg = p.word(b, &["g", "g"]).unwrap();
        p.add_relation(gg, PathWord::identity(b));
        p
    }
}
