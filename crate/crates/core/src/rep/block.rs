use alloc::{
    collections::{BTreeMap, BTreeSet},
    string::{String, ToString},
    vec,
    vec::Vec,
};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dense::{self, Dense};
use crate::cyclo::{CycloElem, RootField};
use crate::error::{Error, Result};

/// Largest dimension [`ScalarBlockMatrix::to_dense`] will expand to.
pub const MAX_DENSE_DIM: u128 = 512;

/// A named run of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    pub name: String,
    pub size: u128,
}

impl Group {
    pub fn new(name: impl Into<String>, size: u128) -> Self {
        Group { name: name.into(), size }
    }
}

/// Square matrix whose `(i, j)` block is `c_ij · I` between groups `i` and `j`.
///
/// Invariants: every group has positive size; a nonzero entry only links
/// groups of equal size; zero entries are never stored.
#[derive(Clone, Debug)]
pub struct ScalarBlockMatrix {
    field: RootField,
    groups: Vec<Group>,
    entries: BTreeMap<(usize, usize), CycloElem>,
}

impl PartialEq for ScalarBlockMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.root() == other.field.root() && self.groups == other.groups && self.entries == other.entries
    }
}

impl Eq for ScalarBlockMatrix {}

fn pow_u128(field: &RootField, x: &CycloElem, mut e: u128) -> CycloElem {
    let mut base = x.clone();
    let mut acc = field.one();
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

impl ScalarBlockMatrix {
    pub fn zero(field: &RootField, groups: Vec<Group>) -> Result<Self> {
        if let Some(g) = groups.iter().find(|g| g.size == 0) {
            return Err(Error::Shape(alloc::format!("group {} has size 0", g.name)));
        }
        Ok(ScalarBlockMatrix { field: field.clone(), groups, entries: BTreeMap::new() })
    }

    pub fn identity(field: &RootField, groups: Vec<Group>) -> Result<Self> {
        let ones = vec![field.one(); groups.len()];
        Self::diagonal(field, groups, ones)
    }

    pub fn diagonal(field: &RootField, groups: Vec<Group>, diag: Vec<CycloElem>) -> Result<Self> {
        if diag.len() != groups.len() {
            return Err(Error::Shape("one diagonal scalar per group".into()));
        }
        let mut m = Self::zero(field, groups)?;
        for (i, c) in diag.into_iter().enumerate() {
            m.set(i, i, c)?;
        }
        Ok(m)
    }

    /// Builds from a full grid of scalars, one row per group.
    pub fn from_grid(field: &RootField, groups: Vec<Group>, grid: Dense) -> Result<Self> {
        if grid.len() != groups.len() || grid.iter().any(|r| r.len() != groups.len()) {
            return Err(Error::Shape("grid must be square over the groups".into()));
        }
        let mut m = Self::zero(field, groups)?;
        for (i, row) in grid.into_iter().enumerate() {
            for (j, c) in row.into_iter().enumerate() {
                m.set(i, j, c)?;
            }
        }
        Ok(m)
    }

    pub fn set(&mut self, i: usize, j: usize, value: CycloElem) -> Result<()> {
        let n = self.groups.len();
        if i >= n || j >= n {
            return Err(Error::Shape("group index out of range".into()));
        }
        if value.is_zero() {
            self.entries.remove(&(i, j));
            return Ok(());
        }
        if self.groups[i].size != self.groups[j].size {
            return Err(Error::Shape(alloc::format!(
                "scalar block between {} (size {}) and {} (size {})",
                self.groups[i].name,
                self.groups[i].size,
                self.groups[j].name,
                self.groups[j].size
            )));
        }
        if value.modulus() != self.field.field().modulus() {
            return Err(Error::Shape("entry from a different field".into()));
        }
        self.entries.insert((i, j), value);
        Ok(())
    }

    pub fn entry(&self, i: usize, j: usize) -> CycloElem {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &CycloElem)> {
        self.entries.iter()
    }

    pub fn field(&self) -> &RootField {
        &self.field
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn group_index(&self, name: &str) -> Option<usize> {
        self.groups.iter().position(|g| g.name == name)
    }

    /// Total dimension `Σ size`.
    pub fn dim(&self) -> u128 {
        self.groups.iter().map(|g| g.size).sum()
    }

    pub fn grid(&self) -> Dense {
        let n = self.groups.len();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.groups != other.groups {
            return Err(Error::Shape("group layouts differ".into()));
        }
        if self.field.root() != other.field.root() {
            return Err(Error::Shape("matrices over different roots".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut by_row: BTreeMap<usize, Vec<(usize, &CycloElem)>> = BTreeMap::new();
        for (&(k, j), c) in &other.entries {
            by_row.entry(k).or_default().push((j, c));
        }
        let mut acc: BTreeMap<(usize, usize), CycloElem> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for &(j, b) in by_row.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                let p = a * b;
                acc.entry((i, j)).and_modify(|v| *v = &*v + &p).or_insert(p);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(ScalarBlockMatrix { field: self.field.clone(), groups: self.groups.clone(), entries: acc })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.entries {
            let v = &out.entry(i, j) + c;
            out.set(i, j, v)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloElem) -> Self {
        let mut entries: BTreeMap<_, _> = self.entries.iter().map(|(k, v)| (*k, v * c)).collect();
        entries.retain(|_, v: &mut CycloElem| !v.is_zero());
        ScalarBlockMatrix { field: self.field.clone(), groups: self.groups.clone(), entries }
    }

    /// Entrywise `q -> q^{-1}`.
    pub fn conj_q(&self) -> Self {
        let entries = self.entries.iter().map(|(k, v)| (*k, v.conj_q())).collect();
        ScalarBlockMatrix { field: self.field.clone(), groups: self.groups.clone(), entries }
    }

    /// Connected components of the block-support graph, each sorted, in order
    /// of their smallest group.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.groups.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(i, j) in self.entries.keys() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            comps.entry(root).or_default().push(i);
        }
        comps.into_values().collect()
    }

    /// The small scalar grid of a set of groups.
    pub fn sub_grid(&self, idx: &[usize]) -> Dense {
        idx.iter().map(|&i| idx.iter().map(|&j| self.entry(i, j)).collect()).collect()
    }

    /// Principal submatrix on the given groups.
    pub fn restrict(&self, idx: &[usize]) -> Result<Self> {
        let groups = idx.iter().map(|&i| self.groups[i].clone()).collect();
        Self::from_grid(&self.field, groups, self.sub_grid(idx))
    }

    /// `det = Π_C det(grid_C)^{size_C}` over components.
    pub fn det(&self) -> Result<CycloElem> {
        let mut acc = self.field.one();
        for comp in self.components() {
            let d = dense::det(&self.field, &self.sub_grid(&comp))?;
            let size = self.groups[comp[0]].size;
            acc = &acc * &pow_u128(&self.field, &d, size);
        }
        Ok(acc)
    }

    /// `tr = Σ c_ii · size_i`.
    pub fn trace(&self) -> CycloElem {
        let mut acc = self.field.zero();
        for (i, g) in self.groups.iter().enumerate() {
            if let Some(c) = self.entries.get(&(i, i)) {
                let size = BigRational::from_integer(BigInt::from(g.size));
                acc = &acc + &c.scale(&size);
            }
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self> {
        let mut out = Self::zero(&self.field, self.groups.clone())?;
        for comp in self.components() {
            let inv = dense::inverse(&self.field, &self.sub_grid(&comp))?;
            for (a, row) in inv.into_iter().enumerate() {
                for (b, c) in row.into_iter().enumerate() {
                    out.set(comp[a], comp[b], c)?;
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::identity(&self.field, self.groups.clone())?;
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// `Some(c)` when the matrix equals `c · I`.
    pub fn scalar_value(&self) -> Option<CycloElem> {
        if self.entries.keys().any(|(i, j)| i != j) {
            return None;
        }
        let c = self.entry(0, 0);
        (0..self.groups.len()).all(|i| self.entry(i, i) == c).then_some(c)
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value().is_some_and(|c| c.is_one())
    }

    /// Block-diagonal sum; group names must stay distinct.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field.root() != other.field.root() {
            return Err(Error::Shape("matrices over different roots".into()));
        }
        let names: BTreeSet<&str> = self.groups.iter().map(|g| g.name.as_str()).collect();
        if other.groups.iter().any(|g| names.contains(g.name.as_str())) {
            return Err(Error::Shape("duplicate group name in direct sum".into()));
        }
        let off = self.groups.len();
        let mut out = self.clone();
        out.groups.extend(other.groups.iter().cloned());
        for (&(i, j), c) in &other.entries {
            out.entries.insert((i + off, j + off), c.clone());
        }
        Ok(out)
    }

    /// Writes `small` (over the groups `idx`, same sizes) into this matrix.
    pub fn embed(&mut self, idx: &[usize], small: &Self) -> Result<()> {
        if small.groups.len() != idx.len() {
            return Err(Error::Shape("embedding index count mismatch".into()));
        }
        for (a, &i) in idx.iter().enumerate() {
            if self.groups[i].size != small.groups[a].size {
                return Err(Error::Shape("embedding size mismatch".into()));
            }
        }
        for &i in idx {
            for &j in idx {
                self.entries.remove(&(i, j));
            }
        }
        for (&(a, b), c) in &small.entries {
            self.set(idx[a], idx[b], c.clone())?;
        }
        Ok(())
    }

    /// Full expansion; basis vector `s` of group `i` maps to row `offset_i + s`.
    pub fn to_dense(&self) -> Result<Dense> {
        let dim = self.dim();
        if dim > MAX_DENSE_DIM {
            return Err(Error::invalid(alloc::format!("dimension {dim} too large to expand")));
        }
        let mut offsets = Vec::with_capacity(self.groups.len());
        let mut acc = 0usize;
        for g in &self.groups {
            offsets.push(acc);
            acc += g.size as usize;
        }
        let mut out = vec![vec![self.field.zero(); acc]; acc];
        for (&(i, j), c) in &self.entries {
            for s in 0..self.groups[i].size as usize {
                out[offsets[i] + s][offsets[j] + s] = c.clone();
            }
        }
        Ok(out)
    }

    pub fn group_names(&self) -> Vec<String> {
        self.groups.iter().map(|g| g.name.to_string()).collect()
    }
}
