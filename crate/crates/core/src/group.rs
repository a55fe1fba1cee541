//! Finite groups by multiplication table, subgroups, and the orbit category.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type Elem = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("ill-defined orbit map G/{src} -> G/{tgt} with representative {rep}")]
    IllDefinedOrbitMap { src: String, tgt: String, rep: String },
    #[error("orbit map is not an isomorphism")]
    NotAnIsomorphism,
    #[error("orbit maps do not compose")]
    NonComposable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    names: Vec<String>,
    table: Vec<Vec<Elem>>,
    identity: Elem,
    inverses: Vec<Elem>,
    generator: Option<Elem>,
}

impl FiniteGroup {
    /// C_n with elements `e, t, t^2, …`; element `i` is τ^i.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let names = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "t".to_string(),
                i => format!("t^{i}"),
            })
            .collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let inverses = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup {
            name: format!("C{n}"),
            names,
            table,
            identity: 0,
            inverses,
            generator: (n > 1).then_some(1),
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn from_table(name: &str, names: Vec<String>, table: Vec<Vec<Elem>>) -> Result<Self, GroupError> {
        let n = names.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty element list".into()));
        }
        if BTreeSet::from_iter(&names).len() != n {
            return Err(GroupError::InvalidTable("duplicate element names".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(GroupError::InvalidTable(format!("table must be {n}x{n} with entries < {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupError::InvalidTable("no two-sided identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::InvalidTable(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| GroupError::InvalidTable(format!("{} has no inverse", names[a])))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteGroup { name: name.to_string(), names, table, identity, inverses, generator: None })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    /// The designated generator τ of a cyclic group.
    pub fn tau(&self) -> Option<Elem> {
        self.generator
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a][b]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order()
    }

    pub fn element_name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Some(i);
        }
        // `t^1` and `1` as aliases in cyclic groups
        match name {
            "1" | "id" => Some(self.identity),
            "t^1" => self.generator,
            _ => None,
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: self.elements().collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![self.identity] }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(&self, gens: &[Elem]) -> Subgroup {
        let mut set: BTreeSet<Elem> = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup { members: set.into_iter().collect() }
    }

    /// Checks closure, identity and inverses.
    pub fn subgroup(&self, members: &[Elem]) -> Result<Subgroup, GroupError> {
        let set: BTreeSet<Elem> = members.iter().copied().collect();
        let ok = set.contains(&self.identity)
            && set.iter().all(|&a| a < self.order() && set.contains(&self.inv(a)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))));
        if ok {
            Ok(Subgroup { members: set.into_iter().collect() })
        } else {
            Err(GroupError::NotASubgroup(format!("{members:?}")))
        }
    }

    /// All subgroups, sorted by order then membership.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Subgroup> = BTreeSet::from([self.trivial_subgroup()]);
        let mut todo = vec![self.trivial_subgroup()];
        while let Some(h) = todo.pop() {
            for g in self.elements() {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.members.clone();
                gens.push(g);
                let k = self.generated(&gens);
                if found.insert(k.clone()) {
                    todo.push(k);
                }
            }
        }
        let mut v: Vec<Subgroup> = found.into_iter().collect();
        v.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
        v
    }

    pub fn conjugate(&self, g: Elem, h: &Subgroup) -> Subgroup {
        let gi = self.inv(g);
        let mut m: Vec<Elem> = h.members.iter().map(|&x| self.mul(gi, self.mul(x, g))).collect();
        m.sort_unstable();
        Subgroup { members: m }
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup { members: a.members.iter().copied().filter(|&x| b.contains(x)).collect() }
    }

    /// Minimal-index element of the left coset gH.
    pub fn coset_rep(&self, g: Elem, h: &Subgroup) -> Elem {
        h.members.iter().map(|&x| self.mul(g, x)).min().expect("subgroup contains identity")
    }

    /// Canonical representatives of G/H in increasing order.
    pub fn cosets(&self, h: &Subgroup) -> Vec<Elem> {
        let set: BTreeSet<Elem> = self.elements().map(|g| self.coset_rep(g, h)).collect();
        set.into_iter().collect()
    }

    pub fn index(&self, h: &Subgroup, k: &Subgroup) -> Result<usize, GroupError> {
        if !h.is_subset(k) {
            return Err(GroupError::NotASubgroup(format!("{} is not contained in {}", self.show(h), self.show(k))));
        }
        Ok(k.order() / h.order())
    }

    /// The orbit map G/H → G/K, eH ↦ gK, if well defined.
    pub fn orbit_map(&self, h: &Subgroup, k: &Subgroup, g: Elem) -> Result<OrbitMap, GroupError> {
        if !self.conjugate(g, h).is_subset(k) {
            return Err(GroupError::IllDefinedOrbitMap {
                src: self.show(h),
                tgt: self.show(k),
                rep: self.element_name(g).to_string(),
            });
        }
        Ok(OrbitMap { source: h.clone(), target: k.clone(), rep: self.coset_rep(g, k) })
    }

    /// One orbit map per distinct coset function G/H → G/K.
    pub fn orbit_maps(&self, h: &Subgroup, k: &Subgroup) -> Vec<OrbitMap> {
        self.cosets(k).into_iter().filter_map(|g| self.orbit_map(h, k, g).ok()).collect()
    }

    pub fn identity_map(&self, h: &Subgroup) -> OrbitMap {
        OrbitMap { source: h.clone(), target: h.clone(), rep: self.identity }
    }

    /// Image of the coset `aH` (given by any representative) as a canonical representative.
    pub fn apply(&self, f: &OrbitMap, a: Elem) -> Elem {
        self.coset_rep(self.mul(a, f.rep), &f.target)
    }

    /// `outer ∘ inner`.
    pub fn compose(&self, outer: &OrbitMap, inner: &OrbitMap) -> Result<OrbitMap, GroupError> {
        if inner.target != outer.source {
            return Err(GroupError::NonComposable);
        }
        self.orbit_map(&inner.source, &outer.target, self.mul(inner.rep, outer.rep))
    }

    pub fn is_iso(&self, f: &OrbitMap) -> bool {
        f.source.order() == f.target.order()
    }

    pub fn inverse(&self, f: &OrbitMap) -> Result<OrbitMap, GroupError> {
        if !self.is_iso(f) {
            return Err(GroupError::NotAnIsomorphism);
        }
        self.orbit_map(&f.target, &f.source, self.inv(f.rep))
    }

    /// Factors `f` as a quotient after an isomorphism: `f = q ∘ i`.
    pub fn factor(&self, f: &OrbitMap) -> (OrbitMap, OrbitMap) {
        let l = self.conjugate(f.rep, &f.source);
        let iso = self.orbit_map(&f.source, &l, f.rep).expect("conjugation is well defined");
        let quot = self.orbit_map(&l, &f.target, self.identity).expect("g⁻¹Hg ⊆ K");
        (iso, quot)
    }

    /// Index of the quotient factor of `f`.
    pub fn quotient_index(&self, f: &OrbitMap) -> usize {
        f.target.order() / f.source.order()
    }

    pub fn show(&self, h: &Subgroup) -> String {
        if h.order() == 1 {
            "e".to_string()
        } else if h.order() == self.order() {
            self.name.clone()
        } else {
            let names: Vec<&str> = h.members.iter().map(|&x| self.element_name(x)).collect();
            format!("{{{}}}", names.join(","))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<Elem>,
}

impl Subgroup {
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: Elem) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// G-map G/H → G/K determined by eH ↦ rep·K; `rep` is canonical in G/K.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitMap {
    pub source: Subgroup,
    pub target: Subgroup,
    pub rep: Elem,
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroups_of_small_cyclic_groups() {
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(c2.subgroups(), vec![c2.trivial_subgroup(), c2.whole()]);
        let c4 = FiniteGroup::cyclic(4);
        let orders: Vec<usize> = c4.subgroups().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 4]);
        assert_eq!(c4.subgroups()[1].members(), &[0, 2]);
    }

    #[test]
    fn c6_subgroups_match_subset_scan() {
        let c6 = FiniteGroup::cyclic(6);
        let scan: Vec<Subgroup> =
            (0u32..64).filter_map(|mask| {
                let members: Vec<Elem> = (0..6).filter(|i| mask & (1 << i) != 0).collect();
                c6.subgroup(&members).ok()
            })
            .collect();
        assert_eq!(scan.len(), 4);
        let found = c6.subgroups();
        assert_eq!(found.len(), 4);
        assert_eq!(found.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 3, 6]);
        for s in scan {
            assert!(found.contains(&s));
        }
    }

    #[test]
    fn orbit_maps_c2() {
        let g = FiniteGroup::cyclic(2);
        let (e, c2) = (g.trivial_subgroup(), g.whole());
        assert_eq!(g.orbit_maps(&e, &c2).len(), 1);
        assert_eq!(g.orbit_maps(&e, &e).len(), 2);
        assert!(g.orbit_maps(&c2, &e).is_empty());
    }

    #[test]
    fn indices() {
        let c4 = FiniteGroup::cyclic(4);
        let h = c4.generated(&[2]);
        assert_eq!(c4.index(&h, &c4.whole()), Ok(2));
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(c2.index(&c2.trivial_subgroup(), &c2.whole()), Ok(2));
        assert_eq!(c2.index(&c2.whole(), &c2.whole()), Ok(1));
        assert!(c4.index(&c4.whole(), &h).is_err());
    }

    #[test]
    fn table_validation() {
        let names = vec!["e".to_string(), "a".to_string()];
        assert!(FiniteGroup::from_table("Z2", names.clone(), vec![vec![0, 1], vec![1, 0]]).is_ok());
        assert!(FiniteGroup::from_table("bad", names, vec![vec![0, 1], vec![1, 1]]).is_err());
    }
}
