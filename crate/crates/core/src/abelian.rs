//! Exact linear algebra over ℤ and 𝔽₂: Smith normal form, finitely generated
//! abelian groups, and cohomology of cochain complexes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("not a complex: d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Diagonal matrix of the given size with `diag` on the leading diagonal.
    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix add shape");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix mul shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack shape");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Copies the block of `m` into `self` at offset `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, m: &IntMatrix) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Reduces row `i` modulo `orders[i]`; order 0 means ℤ and leaves the row alone.
    pub fn reduce_rows(&self, orders: &[BigInt]) -> Self {
        assert_eq!(orders.len(), self.rows);
        Self::from_fn(self.rows, self.cols, |i, j| {
            if orders[i].is_zero() {
                self.get(i, j).clone()
            } else {
                self.get(i, j).mod_floor(&orders[i])
            }
        })
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_i64()).collect()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * c;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * c;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// `A = U·D·V` with `U`, `V` unimodular and `D` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // D ← E·D keeps A = (U·E⁻¹)(E·D)V; column ops are symmetric.
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            u.swap_cols($a, $b);
            u_inv.swap_rows($a, $b);
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            v.swap_rows($a, $b);
            v_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! row_add {
        ($dst:expr, $src:expr, $c:expr) => {{
            let c: &BigInt = $c;
            d.add_row($dst, $src, c);
            u.add_col($src, $dst, &-c);
            u_inv.add_row($dst, $src, c);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $c:expr) => {{
            let c: &BigInt = $c;
            d.add_col($dst, $src, c);
            v.add_row($src, $dst, &-c);
            v_inv.add_col($dst, $src, c);
        }};
    }

    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = d.get(i, j);
                    if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, d, v, u_inv, v_inv, rank);
            };
            row_swap!(t, pi);
            col_swap!(t, pj);
            let p = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d.get(i, t).div_floor(&p);
                if !q.is_zero() {
                    row_add!(i, t, &-q);
                }
                if !d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = d.get(t, j).div_floor(&p);
                if !q.is_zero() {
                    col_add!(j, t, &-q);
                }
                if !d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            if let Some(i) = bad {
                row_add!(t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_col(t);
            u_inv.negate_row(t);
        }
        rank = t + 1;
    }
    finish(u, d, v, u_inv, v_inv, rank)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix, u_inv: IntMatrix, v_inv: IntMatrix, rank: usize) -> Snf {
    Snf { u, d, v, u_inv, v_inv, rank }
}

/// Basis (as columns) of the integer kernel of `a`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let n = a.cols;
    snf.v_inv.block(0, snf.rank, n, n - snf.rank)
}

/// Basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn span_basis(gens: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(gens);
    let cols: Vec<Vec<BigInt>> = (0..snf.rank)
        .map(|i| snf.u.column(i).into_iter().map(|x| x * snf.d.get(i, i)).collect())
        .collect();
    IntMatrix::from_columns(gens.rows, &cols)
}

/// Finitely generated abelian group ℤ^rank ⊕ ⊕ ℤ/dᵢ in canonical form.
///
/// Generators are ordered free part first, then one per invariant factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FGAbGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FGAbGroup {
    pub fn zero() -> Self {
        FGAbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_orders(&[BigInt::from(order)])
    }

    /// Canonical form of ⊕ ℤ/orders[i] (order 0 is ℤ, order 1 is trivial).
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let k = orders.len();
        Self::from_relations(k, &IntMatrix::diagonal(k, k, orders))
    }

    /// Cokernel of `rel: ℤ^cols → ℤ^gens`.
    pub fn from_relations(gens: usize, rel: &IntMatrix) -> Self {
        assert_eq!(rel.rows, gens);
        let diag = smith_normal_form(rel).diagonal();
        let torsion: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
        FGAbGroup { rank: gens - diag.len(), torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn num_generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Order of each generator, 0 for free generators.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rank];
        v.extend(self.torsion.iter().cloned());
        v
    }

    /// True for (ℤ/2)^k, the shape of an 𝔽₂-vector space.
    pub fn is_f2_space(&self) -> bool {
        self.rank == 0 && self.torsion.iter().all(|d| *d == BigInt::from(2))
    }
}

pub fn fg_group_equal(a: &FGAbGroup, b: &FGAbGroup) -> bool {
    a == b
}

impl fmt::Display for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && &self.torsion[j] == d {
                j += 1;
            }
            match j - i {
                1 => parts.push(format!("Z/{d}")),
                e => parts.push(format!("(Z/{d})^{e}")),
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Renders an 𝔽₂-space (ℤ/2)^k as `F2^k`, anything else as usual.
pub fn display_f2(g: &FGAbGroup) -> String {
    if g.is_zero() || !g.is_f2_space() {
        return g.to_string();
    }
    match g.torsion.len() {
        1 => "F2".to_string(),
        k => format!("F2^{k}"),
    }
}

fn big_to_json<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

#[derive(Serialize, Deserialize)]
struct FGAbGroupRepr {
    rank: usize,
    torsion: Vec<serde_json::Value>,
}

impl Serialize for FGAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Big<'a>(&'a BigInt);
        impl Serialize for Big<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                big_to_json(self.0, s)
            }
        }
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FGAbGroup", 2)?;
        st.serialize_field("rank", &self.rank)?;
        let t: Vec<Big<'_>> = self.torsion.iter().map(Big).collect();
        st.serialize_field("torsion", &t)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FGAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = FGAbGroupRepr::deserialize(d)?;
        let torsion = r
            .torsion
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => {
                    n.as_i64().map(BigInt::from).ok_or_else(|| D::Error::custom("torsion must be an integer"))
                }
                serde_json::Value::String(s) => s.parse::<BigInt>().map_err(D::Error::custom),
                _ => Err(D::Error::custom("torsion must be an integer")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FGAbGroup { rank: r.rank, torsion })
    }
}

/// Cochain group presented as a direct sum of cyclic groups, one per generator.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CochainGroup {
    /// Order of each generator; 0 means ℤ.
    pub orders: Vec<BigInt>,
}

impl CochainGroup {
    pub fn new(orders: Vec<BigInt>) -> Self {
        CochainGroup { orders }
    }

    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    pub fn canonical(&self) -> FGAbGroup {
        FGAbGroup::from_orders(&self.orders)
    }

    fn relations(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self
            .orders
            .iter()
            .enumerate()
            .filter(|(_, o)| !o.is_zero())
            .map(|(i, o)| {
                let mut c = vec![BigInt::zero(); self.dim()];
                c[i] = o.clone();
                c
            })
            .collect();
        IntMatrix::from_columns(self.dim(), &cols)
    }
}

/// Cochain complex concentrated in degrees `0..groups.len()`.
///
/// `differentials[n]` maps degree `n` to degree `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    pub groups: Vec<CochainGroup>,
    pub differentials: Vec<IntMatrix>,
}

impl CochainComplex {
    pub fn new(groups: Vec<CochainGroup>, differentials: Vec<IntMatrix>) -> Result<Self, AbelianError> {
        if !groups.is_empty() && differentials.len() + 1 != groups.len() {
            return Err(AbelianError::Dimension(format!(
                "{} groups need {} differentials, got {}",
                groups.len(),
                groups.len() - 1,
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.cols() != groups[n].dim() || d.rows() != groups[n + 1].dim() {
                return Err(AbelianError::Dimension(format!(
                    "d at degree {n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    groups[n + 1].dim(),
                    groups[n].dim()
                )));
            }
        }
        let differentials =
            differentials.iter().enumerate().map(|(n, d)| d.reduce_rows(&groups[n + 1].orders)).collect();
        Ok(CochainComplex { groups, differentials })
    }

    /// The differential leaving degree `n`, or a zero matrix at the ends.
    pub fn differential(&self, n: usize) -> IntMatrix {
        match self.differentials.get(n) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(0, self.groups.get(n).map_or(0, |g| g.dim())),
        }
    }

    fn incoming(&self, n: usize) -> IntMatrix {
        if n == 0 {
            IntMatrix::zeros(self.groups.first().map_or(0, |g| g.dim()), 0)
        } else {
            self.differentials[n - 1].clone()
        }
    }

    /// Every generator has order 2, so the complex is one of 𝔽₂-vector spaces.
    pub fn is_f2(&self) -> bool {
        self.groups.iter().all(|g| g.orders.iter().all(|o| *o == BigInt::from(2)))
    }

    /// Degrees `n` where `d^{n+1}∘d^n` fails to vanish modulo the target orders.
    pub fn d_squared_failures(&self) -> Vec<usize> {
        let mut bad = Vec::new();
        for n in 0..self.differentials.len().saturating_sub(1) {
            let comp = self.differentials[n + 1].mul(&self.differentials[n]);
            if !comp.reduce_rows(&self.groups[n + 2].orders).is_zero() {
                bad.push(n);
            }
        }
        bad
    }
}

/// Rank over 𝔽₂ via bit-packed Gaussian elimination.
pub fn rank_f2(m: &IntMatrix) -> usize {
    let words = m.cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| {
            let mut r = vec![0u64; words];
            for j in 0..m.cols {
                if m.get(i, j).is_odd() {
                    r[j / 64] |= 1 << (j % 64);
                }
            }
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn cohomology(c: &CochainComplex) -> Result<Vec<FGAbGroup>, AbelianError> {
    if let Some(&n) = c.d_squared_failures().first() {
        return Err(AbelianError::NotAComplex { degree: n });
    }
    if c.is_f2() {
        return Ok(cohomology_f2(c));
    }
    Ok((0..c.groups.len()).map(|n| cohomology_at(c, n)).collect())
}

fn cohomology_f2(c: &CochainComplex) -> Vec<FGAbGroup> {
    let ranks: Vec<usize> = c.differentials.iter().map(rank_f2).collect();
    (0..c.groups.len())
        .map(|n| {
            let out = ranks.get(n).copied().unwrap_or(0);
            let inc = if n == 0 { 0 } else { ranks[n - 1] };
            let dim = c.groups[n].dim() - out - inc;
            FGAbGroup { rank: 0, torsion: vec![BigInt::from(2); dim] }
        })
        .collect()
}

fn cohomology_at(c: &CochainComplex, n: usize) -> FGAbGroup {
    let k = c.groups[n].dim();
    if k == 0 {
        return FGAbGroup::zero();
    }
    // Cocycles: v with d v ∈ relations of the next group.
    let d = c.differential(n);
    let next_rel = match c.groups.get(n + 1) {
        Some(g) => g.relations(),
        None => IntMatrix::zeros(0, 0),
    };
    let ker = kernel_basis(&d.hstack(&next_rel));
    let cocycles = span_basis(&ker.block(0, 0, k, ker.cols()));
    let z = cocycles.cols();
    if z == 0 {
        return FGAbGroup::zero();
    }
    let boundaries = c.incoming(n).hstack(&c.groups[n].relations());
    let snf = smith_normal_form(&cocycles);
    let y = snf.u_inv.mul(&boundaries);
    let coords = IntMatrix::from_fn(z, boundaries.cols(), |i, j| {
        let (q, r) = y.get(i, j).div_rem(snf.d.get(i, i));
        debug_assert!(r.is_zero(), "boundary outside cocycle lattice");
        q
    });
    let x = snf.v_inv.block(0, 0, z, z).mul(&coords);
    FGAbGroup::from_relations(z, &x)
}

/// Free ranks alternating sum `Σ (−1)^n rank`.
pub fn euler_characteristic(groups: &[FGAbGroup]) -> i64 {
    groups.iter().enumerate().map(|(n, g)| if n % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum()
}
