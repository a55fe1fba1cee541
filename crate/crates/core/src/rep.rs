//! Representations of the fundamental groupoid as dimension data plus signs.
//!
//! The sign calculus covers the trivial group and C₂.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use thiserror::Error;

use crate::abelian::FGAbGroup;
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::groupoid::{GenId, GroupoidError, GroupoidPresentation, Letter, ObjId, PathWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("sign calculus is only available for the trivial group and C2, not {0}; supply pre-twisted spans instead")]
    UnsupportedSignCalculus(String),
    #[error("sign data of kinds {outer} and {inner} do not compose")]
    NonComposableKinds { outer: String, inner: String },
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("generator {0} has no sign datum")]
    MissingSign(String),
    #[error("free objects do not form a single connected component")]
    Disconnected,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("{0} sign and parity bits are too many to enumerate")]
    EnumerationTooLarge(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bit(self.is_minus() != rhs.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_minus() { "-" } else { "+" })
    }
}

/// The fiber γ₀(x) = (trivial ⊕ sign) − shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDescriptor {
    pub isotropy: Subgroup,
    pub trivial: u32,
    pub sign: u32,
    pub shift: i64,
}

impl FiberDescriptor {
    pub fn new(isotropy: Subgroup, trivial: u32, sign: u32, shift: i64) -> Self {
        if isotropy.is_trivial() {
            FiberDescriptor { isotropy, trivial: trivial + sign, sign: 0, shift }
        } else {
            FiberDescriptor { isotropy, trivial, sign, shift }
        }
    }

    pub fn virtual_dim(&self) -> i64 {
        self.trivial as i64 + self.sign as i64 - self.shift
    }

    pub fn q(&self) -> u32 {
        self.sign
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignDatum {
    FreeToFree { a: Elem, s: Sign },
    FreeToFixed { s: Sign },
    FixedToFixed { triv: Sign, sign: Sign },
}

impl SignDatum {
    pub fn kind_name(&self) -> &'static str {
        match self {
            SignDatum::FreeToFree { .. } => "free_to_free",
            SignDatum::FreeToFixed { .. } => "free_to_fixed",
            SignDatum::FixedToFixed { .. } => "fixed_to_fixed",
        }
    }

    /// Determinant on the identity-coset fiber.
    pub fn e_fiber_sign(&self) -> Sign {
        match *self {
            SignDatum::FreeToFree { s, .. } | SignDatum::FreeToFixed { s } => s,
            SignDatum::FixedToFixed { triv, sign } => triv * sign,
        }
    }

    pub fn identity(free: bool, group: &FiniteGroup) -> Self {
        if free {
            SignDatum::FreeToFree { a: group.identity(), s: Sign::Plus }
        } else {
            SignDatum::FixedToFixed { triv: Sign::Plus, sign: Sign::Plus }
        }
    }

    pub fn inverse(&self, group: &FiniteGroup) -> Result<Self, RepError> {
        match *self {
            SignDatum::FreeToFree { a, s } => Ok(SignDatum::FreeToFree { a: group.inv(a), s }),
            SignDatum::FixedToFixed { .. } => Ok(*self),
            SignDatum::FreeToFixed { .. } => {
                Err(RepError::NonComposableKinds { outer: "inverse".into(), inner: "free_to_fixed".into() })
            }
        }
    }
}

impl fmt::Display for SignDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignDatum::FreeToFree { a, s } => write!(f, "free_to_free(#{a}, {s})"),
            SignDatum::FreeToFixed { s } => write!(f, "free_to_fixed({s})"),
            SignDatum::FixedToFixed { triv, sign } => write!(f, "fixed_to_fixed({triv}, {sign})"),
        }
    }
}

pub fn check_sign_calculus(group: &FiniteGroup) -> Result<(), RepError> {
    if group.order() <= 2 {
        Ok(())
    } else {
        Err(RepError::UnsupportedSignCalculus(group.name().to_string()))
    }
}

/// `outer ∘ inner`, where `target_fiber` is the fiber at the target of `outer`.
pub fn compose_sign_data(
    group: &FiniteGroup,
    outer: SignDatum,
    inner: SignDatum,
    target_fiber: &FiberDescriptor,
) -> Result<SignDatum, RepError> {
    use SignDatum::*;
    match (outer, inner) {
        (FreeToFree { a, s }, FreeToFree { a: a2, s: s2 }) => Ok(FreeToFree { a: group.mul(a2, a), s: s * s2 }),
        (FreeToFixed { s }, FreeToFree { a, s: s2 }) => {
            let shear = if a == group.identity() { Sign::Plus } else { Sign::from_parity(target_fiber.q() as i64) };
            Ok(FreeToFixed { s: s * s2 * shear })
        }
        (FixedToFixed { triv, sign }, FreeToFixed { s }) => Ok(FreeToFixed { s: s * triv * sign }),
        (FixedToFixed { triv, sign }, FixedToFixed { triv: t2, sign: s2 }) => {
            Ok(FixedToFixed { triv: triv * t2, sign: sign * s2 })
        }
        _ => Err(RepError::NonComposableKinds { outer: outer.kind_name().into(), inner: inner.kind_name().into() }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaRep {
    pub fibers: Vec<FiberDescriptor>,
    pub signs: Vec<Option<SignDatum>>,
}

impl GammaRep {
    pub fn fiber(&self, x: ObjId) -> &FiberDescriptor {
        &self.fibers[x]
    }

    pub fn letter_datum(&self, p: &GroupoidPresentation, l: Letter) -> Result<SignDatum, RepError> {
        let d = self.signs[l.gen].ok_or_else(|| RepError::MissingSign(p.generators[l.gen].name.clone()))?;
        if l.inverse {
            if !p.generators[l.gen].invertible {
                return Err(GroupoidError::NotInvertible(p.generators[l.gen].name.clone()).into());
            }
            d.inverse(&p.group)
        } else {
            Ok(d)
        }
    }

    /// Sign datum of a whole word, folding from the rightmost letter.
    pub fn word_datum(&self, p: &GroupoidPresentation, w: &PathWord) -> Result<SignDatum, RepError> {
        check_sign_calculus(&p.group)?;
        p.word_target(w)?;
        let mut acc = SignDatum::identity(p.is_free(w.start), &p.group);
        for &l in w.letters.iter().rev() {
            let d = self.letter_datum(p, l)?;
            acc = compose_sign_data(&p.group, d, acc, self.fiber(p.letter_target(l)))?;
        }
        Ok(acc)
    }

    pub fn monodromy(&self, p: &GroupoidPresentation, w: &PathWord) -> Result<Sign, RepError> {
        Ok(self.word_datum(p, w)?.e_fiber_sign())
    }

    /// Pointwise direct sum: dimensions add, signs multiply.
    pub fn direct_sum(&self, other: &GammaRep, group: &FiniteGroup) -> GammaRep {
        let fibers = self
            .fibers
            .iter()
            .zip(&other.fibers)
            .map(|(a, b)| FiberDescriptor {
                isotropy: a.isotropy.clone(),
                trivial: a.trivial + b.trivial,
                sign: a.sign + b.sign,
                shift: a.shift + b.shift,
            })
            .collect();
        let signs = self
            .signs
            .iter()
            .zip(&other.signs)
            .map(|(a, b)| match (a, b) {
                (Some(SignDatum::FreeToFree { a, s }), Some(SignDatum::FreeToFree { s: s2, .. })) => {
                    Some(SignDatum::FreeToFree { a: *a, s: *s * *s2 })
                }
                (Some(SignDatum::FreeToFixed { s }), Some(SignDatum::FreeToFixed { s: s2 })) => {
                    Some(SignDatum::FreeToFixed { s: *s * *s2 })
                }
                (
                    Some(SignDatum::FixedToFixed { triv, sign }),
                    Some(SignDatum::FixedToFixed { triv: t2, sign: s2 }),
                ) => Some(SignDatum::FixedToFixed { triv: *triv * *t2, sign: *sign * *s2 }),
                _ => None,
            })
            .collect();
        let _ = group;
        GammaRep { fibers, signs }
    }
}

/// The constant representation ℝ^{p,q} restricted along every path.
pub fn constant_representation(pres: &GroupoidPresentation, p: u32, q: u32) -> GammaRep {
    let fibers = pres
        .objects
        .iter()
        .map(|o| FiberDescriptor::new(o.isotropy.clone(), p - q.min(p), q.min(p), 0))
        .collect();
    let signs = pres
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let (sf, tf) = (pres.is_free(g.source), pres.is_free(g.target));
            Some(match (sf, tf) {
                (true, true) => {
                    let f = pres.generator_orbit_map(i);
                    let a = f.map(|f| f.rep).unwrap_or(g.coset_rep);
                    let s = if a == pres.group.identity() { Sign::Plus } else { Sign::from_parity(q as i64) };
                    SignDatum::FreeToFree { a, s }
                }
                (true, false) => SignDatum::FreeToFixed { s: Sign::Plus },
                _ => SignDatum::FixedToFixed { triv: Sign::Plus, sign: Sign::Plus },
            })
        })
        .collect();
    GammaRep { fibers, signs }
}

/// Every violated condition; an empty list means γ is a valid representation.
pub fn validate_representation(pres: &GroupoidPresentation, gamma: &GammaRep) -> Result<Vec<String>, RepError> {
    check_sign_calculus(&pres.group)?;
    let mut report = Vec::new();
    if gamma.fibers.len() != pres.objects.len() {
        report.push(format!("{} fibers for {} objects", gamma.fibers.len(), pres.objects.len()));
        return Ok(report);
    }
    if gamma.signs.len() != pres.generators.len() {
        report.push(format!("{} sign data for {} generators", gamma.signs.len(), pres.generators.len()));
        return Ok(report);
    }
    let mut dims = BTreeSet::new();
    for (o, f) in pres.objects.iter().zip(&gamma.fibers) {
        if f.isotropy != o.isotropy {
            report.push(format!("object {}: fiber isotropy does not match", o.name));
        }
        if o.isotropy.is_trivial() && f.sign != 0 {
            report.push(format!("object {}: free fiber has a sign summand", o.name));
        }
        dims.insert(f.virtual_dim());
    }
    if dims.len() > 1 {
        report.push(format!("virtual dimensions differ across objects: {dims:?}"));
    }
    for (i, g) in pres.generators.iter().enumerate() {
        let Some(d) = gamma.signs[i] else {
            report.push(format!("generator {}: missing sign datum", g.name));
            continue;
        };
        let expected = match (pres.is_free(g.source), pres.is_free(g.target)) {
            (true, true) => "free_to_free",
            (true, false) => "free_to_fixed",
            (false, false) => "fixed_to_fixed",
            (false, true) => "none",
        };
        if d.kind_name() != expected {
            report.push(format!("generator {}: kind {} but endpoints need {}", g.name, d.kind_name(), expected));
            continue;
        }
        if let SignDatum::FreeToFree { a, .. } = d {
            let rep = pres.generator_orbit_map(i).map(|f| f.rep).ok();
            if rep != Some(pres.group.coset_rep(a, &pres.objects[g.target].isotropy)) {
                report.push(format!("generator {}: orbit element does not match the generator", g.name));
            }
        }
    }
    if !report.is_empty() {
        return Ok(report);
    }
    for (k, (lhs, rhs)) in pres.relations.iter().enumerate() {
        let label = format!("relation {} ({} = {})", k + 1, pres.show_word(lhs), pres.show_word(rhs));
        match (gamma.word_datum(pres, lhs), gamma.word_datum(pres, rhs)) {
            (Ok(a), Ok(b)) if a != b => report.push(format!("{label}: {a} vs {b}")),
            (Err(e), _) | (_, Err(e)) => report.push(format!("{label}: {e}")),
            _ => {}
        }
        if pres.underlying_orbit_map(lhs).ok() != pres.underlying_orbit_map(rhs).ok() {
            report.push(format!("{label}: underlying orbit maps differ"));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub group: FGAbGroup,
    /// Free generators first, then one per ℤ/2 summand.
    pub generators: Vec<GammaRep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    One,
    Two,
}

/// Sign-bit layout shared by the classifier and its tests.
pub struct SignSpace<'a> {
    pres: &'a GroupoidPresentation,
    slots: Vec<(GenId, Slot, usize)>,
    pub sign_bits: usize,
    pub fixed: Vec<ObjId>,
}

impl<'a> SignSpace<'a> {
    pub fn new(pres: &'a GroupoidPresentation) -> Result<Self, RepError> {
        check_sign_calculus(&pres.group)?;
        let mut slots = Vec::new();
        let mut bit = 0;
        for (i, g) in pres.generators.iter().enumerate() {
            let slot = match (pres.is_free(g.source), pres.is_free(g.target)) {
                (false, false) => Slot::Two,
                (false, true) => {
                    return Err(RepError::InvalidPresentation(format!("generator {} maps a fixed point to a free orbit", g.name)))
                }
                _ => Slot::One,
            };
            slots.push((i, slot, bit));
            bit += if slot == Slot::Two { 2 } else { 1 };
        }
        let fixed = (0..pres.objects.len()).filter(|&x| !pres.is_free(x)).collect();
        Ok(SignSpace { pres, slots, sign_bits: bit, fixed })
    }

    /// Test representation of virtual dimension 1 with fixed-object parities `q`.
    pub fn build(&self, q: u64, bits: u64) -> GammaRep {
        self.build_with_dims(&self.parity_dims(q), bits)
    }

    fn parity_dims(&self, q: u64) -> Vec<i64> {
        let mut dims = vec![1];
        dims.extend((0..self.fixed.len()).map(|i| ((q >> i) & 1) as i64));
        dims
    }

    /// `dims = (p, q_1, …, q_m)`; negative entries are absorbed by a trivial shift.
    pub fn build_with_dims(&self, dims: &[i64], bits: u64) -> GammaRep {
        let p = dims[0];
        let qs = &dims[1..];
        let n = qs.iter().map(|&q| q - p).chain([-p, 0]).max().unwrap_or(0).max(0);
        let mut fibers = Vec::new();
        for (x, o) in self.pres.objects.iter().enumerate() {
            let f = match self.fixed.iter().position(|&y| y == x) {
                Some(i) => FiberDescriptor::new(o.isotropy.clone(), (p - qs[i] + n) as u32, qs[i] as u32, n),
                None => FiberDescriptor::new(o.isotropy.clone(), (p + n) as u32, 0, n),
            };
            fibers.push(f);
        }
        let bit = |k: usize| Sign::from_bit((bits >> k) & 1 == 1);
        let signs = self
            .slots
            .iter()
            .map(|&(gen, slot, at)| {
                let g = &self.pres.generators[gen];
                Some(match (slot, self.pres.is_free(g.target)) {
                    (Slot::Two, _) => SignDatum::FixedToFixed { triv: bit(at), sign: bit(at + 1) },
                    (Slot::One, true) => {
                        let a = self.pres.generator_orbit_map(gen).map(|f| f.rep).unwrap_or(g.coset_rep);
                        SignDatum::FreeToFree { a, s: bit(at) }
                    }
                    (Slot::One, false) => SignDatum::FreeToFixed { s: bit(at) },
                })
            })
            .collect();
        GammaRep { fibers, signs }
    }

    pub fn encode(&self, gamma: &GammaRep) -> u64 {
        let mut bits = 0u64;
        for &(gen, _, at) in &self.slots {
            match gamma.signs[gen] {
                Some(SignDatum::FreeToFree { s, .. }) | Some(SignDatum::FreeToFixed { s }) => {
                    bits |= (s.is_minus() as u64) << at
                }
                Some(SignDatum::FixedToFixed { triv, sign }) => {
                    bits |= (triv.is_minus() as u64) << at;
                    bits |= (sign.is_minus() as u64) << (at + 1);
                }
                None => {}
            }
        }
        bits
    }

    pub fn gauge_bits(&self) -> usize {
        self.pres.objects.iter().enumerate().map(|(x, _)| if self.pres.is_free(x) { 1 } else { 2 }).sum()
    }

    /// Conjugates γ by one automorphism per object: γ'(f) = η_t ∘ γ(f) ∘ η_s⁻¹.
    pub fn gauge(&self, gamma: &GammaRep, gauge: u64) -> Result<GammaRep, RepError> {
        let group = &self.pres.group;
        let mut eta = Vec::new();
        let mut at = 0;
        for x in 0..self.pres.objects.len() {
            let bit = |k: usize| Sign::from_bit((gauge >> k) & 1 == 1);
            if self.pres.is_free(x) {
                eta.push(SignDatum::FreeToFree { a: group.identity(), s: bit(at) });
                at += 1;
            } else {
                eta.push(SignDatum::FixedToFixed { triv: bit(at), sign: bit(at + 1) });
                at += 2;
            }
        }
        let mut out = gamma.clone();
        for (i, g) in self.pres.generators.iter().enumerate() {
            let Some(d) = gamma.signs[i] else { continue };
            let tf = gamma.fiber(g.target);
            let right = compose_sign_data(group, d, eta[g.source].inverse(group)?, tf)?;
            out.signs[i] = Some(compose_sign_data(group, eta[g.target], right, tf)?);
        }
        Ok(out)
    }
}

const MAX_ENUMERATION_BITS: usize = 24;

/// Computes RO(ΠB) for a C₂ or trivial-group skeleton.
pub fn classify_representations(pres: &GroupoidPresentation) -> Result<Classification, RepError> {
    check_sign_calculus(&pres.group)?;
    let report = pres.validate();
    if !report.is_empty() {
        return Err(RepError::InvalidPresentation(report.join("; ")));
    }
    check_free_connected(pres)?;
    let space = SignSpace::new(pres)?;
    let (k, m) = (space.sign_bits, space.fixed.len());
    if k + m > MAX_ENUMERATION_BITS || space.gauge_bits() > MAX_ENUMERATION_BITS {
        return Err(RepError::EnumerationTooLarge(k + m));
    }

    let mut witness: BTreeMap<u64, u64> = BTreeMap::new();
    let mut s0 = Vec::new();
    for q in 0..(1u64 << m) {
        for bits in 0..(1u64 << k) {
            if validate_representation(pres, &space.build(q, bits))?.is_empty() {
                witness.entry(q).or_insert(bits);
                if q == 0 {
                    s0.push(bits);
                }
            }
        }
    }

    let pivots = f2_row_basis(witness.keys().copied().collect(), m);
    let mut lattice: Vec<Vec<i64>> = Vec::new();
    let mut unit = vec![0; m + 1];
    unit[0] = 1;
    lattice.push(unit);
    let pivot_cols: BTreeSet<usize> = pivots.iter().map(|&(c, _)| c).collect();
    for &(_, row) in &pivots {
        let mut v = vec![0; m + 1];
        for (j, slot) in v.iter_mut().skip(1).enumerate() {
            *slot = ((row >> j) & 1) as i64;
        }
        lattice.push(v);
    }
    for j in (0..m).filter(|j| !pivot_cols.contains(j)) {
        let mut v = vec![0; m + 1];
        v[j + 1] = 2;
        lattice.push(v);
    }

    let mut orbit_reps = BTreeSet::new();
    let mut masks = BTreeSet::new();
    let zero_rep = space.build(0, 0);
    for g in 0..(1u64 << space.gauge_bits()) {
        masks.insert(space.encode(&space.gauge(&zero_rep, g)?));
    }
    for &s in &s0 {
        let gamma = space.build(0, s);
        let mut best = s;
        for g in 0..(1u64 << space.gauge_bits()) {
            best = best.min(space.encode(&space.gauge(&gamma, g)?));
        }
        orbit_reps.insert(best);
    }

    let mut span: BTreeSet<u64> = masks.clone();
    let mut torsion_gens = Vec::new();
    for &s in &orbit_reps {
        if span.contains(&s) {
            continue;
        }
        torsion_gens.push(s);
        let shifted: Vec<u64> = span.iter().map(|&v| v ^ s).collect();
        span.extend(shifted);
    }
    debug_assert_eq!(1usize << torsion_gens.len(), orbit_reps.len());

    let group = FGAbGroup::from_orders(
        &std::iter::repeat(BigInt::from(0))
            .take(lattice.len())
            .chain(std::iter::repeat(BigInt::from(2)).take(torsion_gens.len()))
            .collect::<Vec<_>>(),
    );
    let mut generators = Vec::new();
    for v in &lattice {
        let q = (1..=m).fold(0u64, |acc, j| acc | (((v[j].rem_euclid(2)) as u64) << (j - 1)));
        let bits = witness[&q];
        generators.push(space.build_with_dims(v, bits));
    }
    for &s in &torsion_gens {
        let mut gamma = space.build_with_dims(&vec![0; m + 1], s);
        for f in &mut gamma.fibers {
            f.trivial = 0;
            f.shift = 0;
        }
        generators.push(gamma);
    }
    Ok(Classification { group, generators })
}

fn check_free_connected(pres: &GroupoidPresentation) -> Result<(), RepError> {
    let free: Vec<ObjId> = (0..pres.objects.len()).filter(|&x| pres.is_free(x)).collect();
    let Some(&root) = free.first() else {
        return Err(RepError::Disconnected);
    };
    let mut seen = BTreeSet::from([root]);
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        for g in &pres.generators {
            if !pres.is_free(g.source) || !pres.is_free(g.target) {
                continue;
            }
            for (a, b) in [(g.source, g.target), (g.target, g.source)] {
                if a == x && seen.insert(b) {
                    stack.push(b);
                }
            }
        }
    }
    if seen.len() == free.len() {
        Ok(())
    } else {
        Err(RepError::Disconnected)
    }
}

/// Reduced row basis of a set of 𝔽₂ vectors, as (pivot column, row).
fn f2_row_basis(vectors: Vec<u64>, width: usize) -> Vec<(usize, u64)> {
    let mut rows: Vec<(usize, u64)> = Vec::new();
    for mut v in vectors {
        for &(c, r) in &rows {
            if (v >> c) & 1 == 1 {
                v ^= r;
            }
        }
        if v == 0 {
            continue;
        }
        let c = (0..width).find(|&c| (v >> c) & 1 == 1).expect("nonzero vector");
        for row in rows.iter_mut() {
            if (row.1 >> c) & 1 == 1 {
                row.1 ^= v;
            }
        }
        rows.push((c, v));
    }
    rows.sort();
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::skeleta;

    fn s11_rep(q0: u32, q1: u32, t_sign: Sign) -> GammaRep {
        let p = skeleta::s11();
        let mut gamma = constant_representation(&p, 1, 0);
        gamma.fibers[1] = FiberDescriptor::new(p.objects[1].isotropy.clone(), 1 - q0, q0, 0);
        gamma.fibers[2] = FiberDescriptor::new(p.objects[2].isotropy.clone(), 1 - q1, q1, 0);
        gamma.signs[0] = Some(SignDatum::FreeToFree { a: 0, s: Sign::from_parity((q0 + q1) as i64) });
        gamma.signs[1] = Some(SignDatum::FreeToFree { a: 1, s: t_sign });
        gamma
    }

    #[test]
    fn composition_table_examples() {
        let p = skeleta::s11();
        let g = &p.group;
        let fixed_q1 = FiberDescriptor::new(g.whole(), 0, 1, 0);
        let c = compose_sign_data(
            g,
            SignDatum::FreeToFixed { s: Sign::Plus },
            SignDatum::FreeToFree { a: 1, s: Sign::Minus },
            &fixed_q1,
        );
        assert_eq!(c, Ok(SignDatum::FreeToFixed { s: Sign::Plus }));
        let g0 = SignDatum::FixedToFixed { triv: Sign::Minus, sign: Sign::Plus };
        let c = compose_sign_data(g, g0, SignDatum::FreeToFixed { s: Sign::Plus }, &fixed_q1);
        assert_eq!(c, Ok(SignDatum::FreeToFixed { s: Sign::Minus }));
        assert!(compose_sign_data(g, SignDatum::FreeToFree { a: 0, s: Sign::Plus }, g0, &fixed_q1).is_err());
    }

    #[test]
    fn skeleton_representations_classify() {
        let p = skeleta::s11();
        assert!(validate_representation(&p, &s11_rep(0, 1, Sign::Minus)).unwrap().is_empty());
        let bad = validate_representation(&p, &s11_rep(0, 1, Sign::Plus)).unwrap();
        assert!(bad.iter().any(|e| e.starts_with("relation 2 (p1.t = p1)")), "{bad:?}");
        let r11 = constant_representation(&p, 1, 1);
        assert!(validate_representation(&p, &r11).unwrap().is_empty());
    }

    #[test]
    fn monodromy_of_g() {
        let p = skeleta::s11();
        let gamma = s11_rep(0, 1, Sign::Minus);
        assert_eq!(gamma.monodromy(&p, &p.word(0, &["g"]).unwrap()), Ok(Sign::Minus));
        assert_eq!(gamma.monodromy(&p, &PathWord::identity(0)), Ok(Sign::Plus));
        assert_eq!(gamma.monodromy(&p, &p.word(0, &["g", "g"]).unwrap()), Ok(Sign::Plus));
    }

    #[test]
    fn classification_of_skeleta() {
        let show = |p: &GroupoidPresentation| classify_representations(p).unwrap().group.to_string();
        assert_eq!(show(&skeleta::s11()), "Z^3");
        assert_eq!(show(&skeleta::rp2_twist()), "Z^3 + Z/2");
        assert_eq!(show(&skeleta::rp_infinity_stage()), "Z + Z/2");
    }

    #[test]
    fn generators_are_valid() {
        for p in [skeleta::s11(), skeleta::rp2_twist(), skeleta::rp_infinity_stage()] {
            for gamma in classify_representations(&p).unwrap().generators {
                assert!(validate_representation(&p, &gamma).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn c4_is_unsupported() {
        let g = FiniteGroup::cyclic(4);
        let mut p = GroupoidPresentation::new(g.clone());
        p.add_object("b", g.trivial_subgroup());
        assert!(matches!(classify_representations(&p), Err(RepError::UnsupportedSignCalculus(_))));
    }
}
