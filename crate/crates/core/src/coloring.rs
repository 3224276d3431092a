//! Admissible colorings of the trivalent-graph bases and their layouts.
//!
//! A coloring of `β_T` is the label sequence `(a_1, …, a_{2n-3})` with the
//! boundary labels `a_0 = a_{2n-2} = 1`. For `β_T` and `β_{T'}` these are
//! lattice paths with `±1` steps under the height cap `r - 2`; for `β_Y` the
//! entry `a_{n-1}` is the label of the edge fusing strands `n` and `n+1`.

use alloc::{collections::BTreeMap, string::String, vec, vec::Vec};
use core::fmt;

use crate::error::{Error, Result};

/// Largest `n` accepted by the brute-force enumerator.
pub const MAX_ENUM_N: u32 = 8;
/// Largest `n` accepted by the counting routines.
pub const MAX_COUNT_N: u32 = 60;

pub fn is_admissible(a: u32, b: u32, c: u32) -> bool {
    (a + b + c).is_multiple_of(2) && a <= b + c && b <= a + c && c <= a + b
}

pub fn is_q_admissible(a: u32, b: u32, c: u32, r: u32) -> bool {
    let cap = r.saturating_sub(2);
    is_admissible(a, b, c) && r >= 2 && a <= cap && b <= cap && c <= cap && a + b + c <= 2 * cap
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisId {
    T,
    TPrime,
    Y,
}

/// How a basis is partitioned and ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// Type I / II / III by `(a_1, a_2)`.
    Types,
    /// By the labels around the middle position `n - 1`.
    Middle,
}

/// Partition cell of a basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellTag {
    TypeI,
    TypeII,
    TypeIII,
    /// `a = a_{n-1} = a_{n-2} + 1 = a_n - 1`
    I0(u32),
    /// `a = a_{n-1} = a_{n-2} - 1 = a_n + 1`
    I2(u32),
    /// `a = a_{n-1} = a_{n-2} + 1 = a_n + 1`
    II0(u32),
    /// `a = a_{n-1} = a_{n-2} - 1 = a_n - 1`
    II2(u32),
    /// `a = a_{n-2} + 1 = a_n - 1`, label 2
    IPrime0(u32),
    /// `a = a_{n-2} - 1 = a_n + 1`, label 2
    IPrime2(u32),
    /// `a = a_{n-2} + 1 = a_n + 1`, label 0
    IIPrime0(u32),
    /// `a = a_{n-2} + 1 = a_n + 1`, label 2
    IIPrime2(u32),
}

impl CellTag {
    /// The `a` parameter of a middle cell.
    pub fn level(&self) -> Option<u32> {
        use CellTag::*;
        match *self {
            TypeI | TypeII | TypeIII => None,
            I0(a) | I2(a) | II0(a) | II2(a) | IPrime0(a) | IPrime2(a) | IIPrime0(a) | IIPrime2(a) => Some(a),
        }
    }

    /// Ordering of cells inside a layout: the I family (by `a`, subscript 0
    /// first) precedes the II family (by `a`, subscript 0 first).
    pub fn order_key(&self) -> (u8, u32, u8) {
        use CellTag::*;
        match *self {
            TypeI => (0, 0, 0),
            TypeII => (0, 0, 1),
            TypeIII => (0, 0, 2),
            I0(a) | IPrime0(a) => (1, a, 0),
            I2(a) | IPrime2(a) => (1, a, 2),
            II0(a) | IIPrime0(a) => (2, a, 0),
            II2(a) | IIPrime2(a) => (2, a, 2),
        }
    }

    /// Parses the `Display` form, e.g. `II_2(3)` or `I'_0(1)`.
    pub fn parse(s: &str) -> Option<CellTag> {
        use CellTag::*;
        match s {
            "TypeI" => return Some(TypeI),
            "TypeII" => return Some(TypeII),
            "TypeIII" => return Some(TypeIII),
            _ => {}
        }
        let open = s.find('(')?;
        let a: u32 = s[open + 1..].strip_suffix(')')?.parse().ok()?;
        Some(match &s[..open] {
            "I_0" => I0(a),
            "I_2" => I2(a),
            "II_0" => II0(a),
            "II_2" => II2(a),
            "I'_0" => IPrime0(a),
            "I'_2" => IPrime2(a),
            "II'_0" => IIPrime0(a),
            "II'_2" => IIPrime2(a),
            _ => return None,
        })
    }
}

impl fmt::Display for CellTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CellTag::*;
        match *self {
            TypeI => f.write_str("TypeI"),
            TypeII => f.write_str("TypeII"),
            TypeIII => f.write_str("TypeIII"),
            I0(a) => write!(f, "I_0({a})"),
            I2(a) => write!(f, "I_2({a})"),
            II0(a) => write!(f, "II_0({a})"),
            II2(a) => write!(f, "II_2({a})"),
            IPrime0(a) => write!(f, "I'_0({a})"),
            IPrime2(a) => write!(f, "I'_2({a})"),
            IIPrime0(a) => write!(f, "II'_0({a})"),
            IIPrime2(a) => write!(f, "II'_2({a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    n: u32,
    labels: Vec<u32>,
}

impl Coloring {
    pub fn new(n: u32, labels: Vec<u32>) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("need 2n >= 6 punctures"));
        }
        if labels.len() != (2 * n - 3) as usize {
            return Err(Error::invalid("a coloring has 2n-3 interior labels"));
        }
        Ok(Coloring { n, labels })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `(a_1, …, a_{2n-3})`.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// `a_i` for `0 <= i <= 2n-2`, including the boundary labels.
    pub fn label(&self, i: u32) -> u32 {
        if i == 0 || i == 2 * self.n - 2 {
            1
        } else {
            self.labels[(i - 1) as usize]
        }
    }

    /// `(a_{n-2}, a_{n-1}, a_n)`.
    pub fn middle(&self) -> (u32, u32, u32) {
        let n = self.n;
        (self.label(n - 2), self.label(n - 1), self.label(n))
    }

    pub fn with_label(&self, i: u32, value: u32) -> Coloring {
        let mut c = self.clone();
        c.labels[(i - 1) as usize] = value;
        c
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    One,
    Label(u32),
}

/// The trivalent vertices of a basis graph, as triples of edge slots.
fn vertices(basis: BasisId, n: u32) -> Vec<[Slot; 3]> {
    use Slot::*;
    let top = 2 * n - 2;
    match basis {
        BasisId::T => (1..=top).map(|i| [Label(i - 1), One, Label(i)]).collect(),
        BasisId::TPrime => {
            let mut v = vec![[One, One, Label(1)], [Label(0), Label(1), Label(2)]];
            v.extend((3..=top).map(|i| [Label(i - 1), One, Label(i)]));
            v
        }
        BasisId::Y => {
            let mut v: Vec<[Slot; 3]> = (1..=n - 2).map(|i| [Label(i - 1), One, Label(i)]).collect();
            v.push([One, One, Label(n - 1)]);
            v.push([Label(n - 2), Label(n - 1), Label(n)]);
            v.extend((n + 1..=top).map(|i| [Label(i - 1), One, Label(i)]));
            v
        }
    }
}

fn slot_value(slot: Slot, c: &Coloring) -> u32 {
    match slot {
        Slot::One => 1,
        Slot::Label(i) => c.label(i),
    }
}

/// Whether every vertex of the `basis` graph colored by `c` is q-admissible.
pub fn is_q_admissible_coloring(basis: BasisId, c: &Coloring, r: u32) -> bool {
    vertices(basis, c.n).iter().all(|v| {
        let [x, y, z] = v.map(|s| slot_value(s, c));
        is_q_admissible(x, y, z, r)
    })
}

/// Every q-admissible coloring of `basis`, by exhaustive backtracking.
fn brute_force_colorings(basis: BasisId, n: u32, r: u32) -> Vec<Coloring> {
    let len = (2 * n - 3) as usize;
    let verts = vertices(basis, n);
    // vertices become checkable once their largest label index is assigned
    let mut by_last: Vec<Vec<[Slot; 3]>> = vec![Vec::new(); 2 * n as usize - 1];
    for v in verts {
        let last = v
            .iter()
            .map(|s| match *s {
                Slot::One => 0,
                Slot::Label(i) => i,
            })
            .max()
            .unwrap_or(0);
        by_last[last as usize].push(v);
    }
    let cap = r - 2;
    let mut out = Vec::new();
    let mut current = Coloring { n, labels: vec![0; len] };
    fn rec(pos: usize, len: usize, cap: u32, r: u32, by_last: &[Vec<[Slot; 3]>], cur: &mut Coloring, out: &mut Vec<Coloring>) {
        let check = |idx: usize, cur: &Coloring| {
            by_last[idx].iter().all(|v| {
                let [x, y, z] = v.map(|s| slot_value(s, cur));
                is_q_admissible(x, y, z, r)
            })
        };
        if pos == len {
            if check(len + 1, cur) {
                out.push(cur.clone());
            }
            return;
        }
        for value in 0..=cap {
            cur.labels[pos] = value;
            if check(pos + 1, cur) {
                rec(pos + 1, len, cap, r, by_last, cur, out);
            }
        }
    }
    if !by_last[0].is_empty() {
        let ok = by_last[0].iter().all(|v| {
            let [x, y, z] = v.map(|s| slot_value(s, &current));
            is_q_admissible(x, y, z, r)
        });
        if !ok {
            return out;
        }
    }
    rec(0, len, cap, r, &by_last, &mut current, &mut out);
    out
}

/// Partition cell of a coloring under a scheme, from the defining equations.
pub fn classify(basis: BasisId, scheme: Scheme, c: &Coloring) -> Result<CellTag> {
    match (basis, scheme) {
        (BasisId::T | BasisId::TPrime, Scheme::Types) => match (c.label(1), c.label(2)) {
            (0, 1) => Ok(CellTag::TypeI),
            (2, 1) => Ok(CellTag::TypeII),
            (2, 3) => Ok(CellTag::TypeIII),
            _ => Err(Error::internal("coloring outside Types I-III")),
        },
        (BasisId::T, Scheme::Middle) => {
            let (l, a, rt) = c.middle();
            let cands = [
                (l + 1 == a && a + 1 == rt, CellTag::I0(a)),
                (l == a + 1 && rt + 1 == a, CellTag::I2(a)),
                (l + 1 == a && rt + 1 == a, CellTag::II0(a)),
                (l == a + 1 && rt == a + 1, CellTag::II2(a)),
            ];
            unique_cell(&cands)
        }
        (BasisId::Y, Scheme::Middle) => {
            let (l, label, rt) = c.middle();
            let cands = [
                (label == 2 && rt == l + 2, CellTag::IPrime0(l + 1)),
                (label == 2 && l == rt + 2, CellTag::IPrime2(l.wrapping_sub(1))),
                (label == 0 && l == rt, CellTag::IIPrime0(l + 1)),
                (label == 2 && l == rt, CellTag::IIPrime2(l + 1)),
            ];
            unique_cell(&cands)
        }
        _ => Err(Error::invalid("scheme not defined for this basis")),
    }
}

fn unique_cell(cands: &[(bool, CellTag)]) -> Result<CellTag> {
    let mut hits = cands.iter().filter(|(ok, _)| *ok).map(|(_, t)| *t);
    match (hits.next(), hits.next()) {
        (Some(t), None) => Ok(t),
        (None, _) => Err(Error::internal("coloring matches no partition cell")),
        (Some(_), Some(_)) => Err(Error::internal("coloring matches two partition cells")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisLayout {
    pub basis: BasisId,
    pub scheme: Scheme,
    pub n: u32,
    pub r: u32,
    /// Colorings in basis order.
    pub entries: Vec<(Coloring, CellTag)>,
}

impl BasisLayout {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonempty cells with their sizes, in layout order.
    pub fn cells(&self) -> Vec<(CellTag, u128)> {
        let mut out: Vec<(CellTag, u128)> = Vec::new();
        for (_, tag) in &self.entries {
            match out.last_mut() {
                Some((t, count)) if t == tag => *count += 1,
                _ => out.push((*tag, 1)),
            }
        }
        out
    }

    pub fn position(&self, c: &Coloring) -> Option<usize> {
        self.entries.iter().position(|(x, _)| x == c)
    }
}

fn check_range(n: u32, r: u32, max_n: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::invalid("need 2n >= 6 punctures"));
    }
    if n > max_n {
        return Err(Error::invalid(alloc::format!("n = {n} exceeds the supported maximum {max_n}")));
    }
    if r < 4 {
        return Err(Error::invalid("bases are only built for r >= 4 (r = 3 is out of scope)"));
    }
    Ok(())
}

/// The complete ordered layout of a basis, by brute-force enumeration.
///
/// Cells follow the fixed cell order (see [`CellTag::order_key`]); inside a
/// cell colorings are lexicographic.
pub fn enumerate_basis(basis: BasisId, scheme: Scheme, n: u32, r: u32) -> Result<BasisLayout> {
    check_range(n, r, MAX_ENUM_N)?;
    if matches!((basis, scheme), (BasisId::TPrime, Scheme::Middle) | (BasisId::Y, Scheme::Types)) {
        return Err(Error::invalid("scheme not defined for this basis"));
    }
    let mut entries =
        brute_force_colorings(basis, n, r).into_iter().map(|c| classify(basis, scheme, &c).map(|t| (c, t))).collect::<Result<Vec<_>>>()?;
    entries.sort_by(|(c1, t1), (c2, t2)| t1.order_key().cmp(&t2.order_key()).then_with(|| c1.cmp(c2)));
    Ok(BasisLayout { basis, scheme, n, r, entries })
}

/// Path counts from each end of the lattice strip.
struct PathCounts {
    cap: u32,
    /// `fwd[p][v]`: paths `a_0 = 1, …, a_p = v`.
    fwd: Vec<Vec<u128>>,
    /// `bwd[p][v]`: paths `a_p = v, …, a_{2n-2} = 1`.
    bwd: Vec<Vec<u128>>,
}

impl PathCounts {
    fn new(n: u32, r: u32) -> Self {
        let cap = r - 2;
        let len = (2 * n - 2) as usize;
        let width = cap as usize + 1;
        let step = |prev: &Vec<u128>| -> Vec<u128> {
            (0..width)
                .map(|v| {
                    let down = if v > 0 { prev[v - 1] } else { 0 };
                    let up = prev.get(v + 1).copied().unwrap_or(0);
                    down + up
                })
                .collect()
        };
        let mut start = vec![0u128; width];
        if cap >= 1 {
            start[1] = 1;
        }
        let mut fwd = vec![start.clone()];
        for _ in 0..len {
            let next = step(fwd.last().unwrap());
            fwd.push(next);
        }
        let mut bwd = vec![start];
        for _ in 0..len {
            let next = step(bwd.last().unwrap());
            bwd.push(next);
        }
        bwd.reverse();
        PathCounts { cap, fwd, bwd }
    }

    fn f(&self, p: u32, v: i64) -> u128 {
        if v < 0 || v > i64::from(self.cap) {
            return 0;
        }
        self.fwd[p as usize][v as usize]
    }

    fn b(&self, p: u32, v: i64) -> u128 {
        if v < 0 || v > i64::from(self.cap) {
            return 0;
        }
        self.bwd[p as usize][v as usize]
    }
}

/// Sizes of every partition cell, by dynamic programming over lattice paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountProfile {
    pub n: u32,
    pub r: u32,
    /// `|Type I| = |Type II|`.
    pub k: u128,
    /// `|Type II|`, kept separately so the equality can be checked.
    pub k_type2: u128,
    /// `|Type III|`.
    pub k_prime: u128,
    /// `dim` of the space, `|B_T|`.
    pub total: u128,
    /// `|B_Y|`.
    pub total_y: u128,
    /// All nonempty middle cells of `B_T` and `B_Y`.
    pub cells: BTreeMap<CellTag, u128>,
}

impl CountProfile {
    pub fn cell(&self, tag: CellTag) -> u128 {
        self.cells.get(&tag).copied().unwrap_or(0)
    }

    pub fn k0(&self, a: u32) -> u128 {
        self.cell(CellTag::I0(a))
    }
    pub fn k2(&self, a: u32) -> u128 {
        self.cell(CellTag::I2(a))
    }
    pub fn l0(&self, a: u32) -> u128 {
        self.cell(CellTag::II0(a))
    }
    pub fn l2(&self, a: u32) -> u128 {
        self.cell(CellTag::II2(a))
    }
    pub fn kp0(&self, a: u32) -> u128 {
        self.cell(CellTag::IPrime0(a))
    }
    pub fn kp2(&self, a: u32) -> u128 {
        self.cell(CellTag::IPrime2(a))
    }
    pub fn lp0(&self, a: u32) -> u128 {
        self.cell(CellTag::IIPrime0(a))
    }
    pub fn lp2(&self, a: u32) -> u128 {
        self.cell(CellTag::IIPrime2(a))
    }

    /// `k_m = 2 Σ k_0(a)` over `a ≡ m (mod 2)`, `a <= m`.
    pub fn k_aggregate(&self, m: u32) -> u128 {
        (m % 2..=m).step_by(2).map(|a| 2 * self.k0(a)).sum()
    }

    /// Nonempty `B_T` middle cells in layout order.
    pub fn t_cells(&self) -> Vec<(CellTag, u128)> {
        self.ordered(|t| matches!(t, CellTag::I0(_) | CellTag::I2(_) | CellTag::II0(_) | CellTag::II2(_)))
    }

    /// Nonempty `B_Y` middle cells in layout order.
    pub fn y_cells(&self) -> Vec<(CellTag, u128)> {
        self.ordered(|t| matches!(t, CellTag::IPrime0(_) | CellTag::IPrime2(_) | CellTag::IIPrime0(_) | CellTag::IIPrime2(_)))
    }

    /// Nonempty Type cells in layout order.
    pub fn type_cells(&self) -> Vec<(CellTag, u128)> {
        [(CellTag::TypeI, self.k), (CellTag::TypeII, self.k_type2), (CellTag::TypeIII, self.k_prime)]
            .into_iter()
            .filter(|(_, c)| *c > 0)
            .collect()
    }

    fn ordered(&self, keep: impl Fn(&CellTag) -> bool) -> Vec<(CellTag, u128)> {
        let mut v: Vec<(CellTag, u128)> = self.cells.iter().filter(|(t, _)| keep(t)).map(|(t, c)| (*t, *c)).collect();
        v.sort_by_key(|(t, _)| t.order_key());
        v
    }
}

pub fn count_profile(n: u32, r: u32) -> Result<CountProfile> {
    check_range(n, r, MAX_COUNT_N)?;
    let pc = PathCounts::new(n, r);
    let (left, right) = (n - 2, n);
    let mut cells = BTreeMap::new();
    let mut put = |tag: CellTag, count: u128| {
        if count > 0 {
            cells.insert(tag, count);
        }
    };
    let cap = i64::from(r - 2);
    for a in 0..=cap + 2 {
        let au = a as u32;
        let m_ok = a <= cap;
        // B_T: the middle label a itself must be under the cap
        if m_ok {
            put(CellTag::I0(au), pc.f(left, a - 1) * pc.b(right, a + 1));
            put(CellTag::I2(au), pc.f(left, a + 1) * pc.b(right, a - 1));
            put(CellTag::II0(au), pc.f(left, a - 1) * pc.b(right, a - 1));
            put(CellTag::II2(au), pc.f(left, a + 1) * pc.b(right, a + 1));
        }
        // B_Y: the fused vertex (a_{n-2}, label, a_n) decides
        let fused = |x: i64, label: u32, y: i64| {
            x >= 0 && y >= 0 && is_q_admissible(x as u32, label, y as u32, r) && is_q_admissible(1, 1, label, r)
        };
        if fused(a - 1, 2, a + 1) {
            put(CellTag::IPrime0(au), pc.f(left, a - 1) * pc.b(right, a + 1));
        }
        if fused(a + 1, 2, a - 1) {
            put(CellTag::IPrime2(au), pc.f(left, a + 1) * pc.b(right, a - 1));
        }
        if fused(a - 1, 0, a - 1) {
            put(CellTag::IIPrime0(au), pc.f(left, a - 1) * pc.b(right, a - 1));
        }
        if fused(a - 1, 2, a - 1) {
            put(CellTag::IIPrime2(au), pc.f(left, a - 1) * pc.b(right, a - 1));
        }
    }
    let k = pc.b(1, 0);
    let k_type2 = if cap >= 2 { pc.b(2, 1) } else { 0 };
    let k_prime = if cap >= 3 { pc.b(2, 3) } else { 0 };
    let total = pc.b(0, 1);
    let total_y = cells
        .iter()
        .filter(|(t, _)| matches!(t, CellTag::IPrime0(_) | CellTag::IPrime2(_) | CellTag::IIPrime0(_) | CellTag::IIPrime2(_)))
        .map(|(_, c)| *c)
        .sum();
    Ok(CountProfile { n, r, k, k_type2, k_prime, total, total_y, cells })
}

/// The exact set of values of `a_position` over all q-admissible `B_T`
/// colorings, ascending.
pub fn attained_values(n: u32, r: u32, position: u32) -> Result<Vec<u32>> {
    check_range(n, r, MAX_COUNT_N)?;
    if position == 0 || position > 2 * n - 3 {
        return Err(Error::invalid("position must lie in 1..=2n-3"));
    }
    let pc = PathCounts::new(n, r);
    Ok((0..=r - 2).filter(|&v| pc.f(position, i64::from(v)) > 0 && pc.b(position, i64::from(v)) > 0).collect())
}

/// `(v, #colorings with a_position = v)` for every attained `v`, ascending.
/// Position `2n-2` is the fixed boundary label 1.
pub fn position_counts(n: u32, r: u32, position: u32) -> Result<Vec<(u32, u128)>> {
    check_range(n, r, MAX_COUNT_N)?;
    if position == 0 || position > 2 * n - 2 {
        return Err(Error::invalid("position must lie in 1..=2n-2"));
    }
    let pc = PathCounts::new(n, r);
    Ok((0..=r - 2).map(|v| (v, pc.f(position, i64::from(v)) * pc.b(position, i64::from(v)))).filter(|(_, c)| *c > 0).collect())
}

/// Human-readable name of a layout, used in matrix group labels.
pub fn scheme_name(basis: BasisId, scheme: Scheme) -> String {
    let b = match basis {
        BasisId::T => "T",
        BasisId::TPrime => "T'",
        BasisId::Y => "Y",
    };
    let s = match scheme {
        Scheme::Types => "types",
        Scheme::Middle => "middle",
    };
    alloc::format!("{b}/{s}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn labels(layout: &BasisLayout) -> Vec<Vec<u32>> {
        layout.entries.iter().map(|(c, _)| c.labels().to_vec()).collect()
    }

    #[test]
    fn q_admissibility_examples() {
        assert!(is_q_admissible(1, 1, 0, 5));
        assert!(!is_q_admissible(2, 3, 2, 4));
        assert!(is_q_admissible(2, 1, 3, 5));
        assert!(!is_q_admissible(1, 1, 1, 9));
        assert!(!is_q_admissible(0, 2, 0, 9));
        assert!(!is_q_admissible(3, 3, 4, 6));
    }

    #[test]
    fn t_basis_n3() {
        let l = enumerate_basis(BasisId::T, Scheme::Types, 3, 5).unwrap();
        assert_eq!(labels(&l), vec![vec![0, 1, 0], vec![0, 1, 2], vec![2, 1, 0], vec![2, 1, 2], vec![2, 3, 2]]);
        let cells = l.cells();
        assert_eq!(cells, vec![(CellTag::TypeI, 2), (CellTag::TypeII, 2), (CellTag::TypeIII, 1)]);
        let l4 = enumerate_basis(BasisId::T, Scheme::Types, 3, 4).unwrap();
        assert_eq!(l4.len(), 4);
        assert!(l4.cells().iter().all(|(t, _)| *t != CellTag::TypeIII));
    }

    #[test]
    fn t_prime_has_same_colorings() {
        for n in 3..=5 {
            for r in 4..=8 {
                let t = enumerate_basis(BasisId::T, Scheme::Types, n, r).unwrap();
                let tp = enumerate_basis(BasisId::TPrime, Scheme::Types, n, r).unwrap();
                assert_eq!(t, BasisLayout { basis: BasisId::T, ..tp });
            }
        }
    }

    #[test]
    fn y_basis_n3() {
        let y = enumerate_basis(BasisId::Y, Scheme::Middle, 3, 5).unwrap();
        assert_eq!(y.len(), 5);
        assert!(y.entries.iter().all(|(_, t)| *t != CellTag::IIPrime2(1)));
        let found: BTreeSet<Vec<u32>> = labels(&y).into_iter().collect();
        let expect: BTreeSet<Vec<u32>> = [vec![0, 0, 0], vec![2, 0, 2], vec![0, 2, 2], vec![2, 2, 0], vec![2, 2, 2]].into_iter().collect();
        assert_eq!(found, expect);
    }

    #[test]
    fn middle_orders_match_displayed_sequences() {
        // n odd: I_0(1) < I_2(1) < … < II_0(1) < II_2(1) < II_0(3) < …
        let t = enumerate_basis(BasisId::T, Scheme::Middle, 5, 12).unwrap();
        let names: Vec<String> = t.cells().iter().map(|(c, _)| alloc::format!("{c}")).collect();
        assert_eq!(names, ["I_0(1)", "I_2(1)", "I_0(3)", "I_2(3)", "II_0(1)", "II_2(1)", "II_0(3)", "II_2(3)", "II_0(5)"]);
        // n even: I_0(2) < I_2(2) < II_2(0) < II_0(2) < II_2(2) < II_0(4)
        let t = enumerate_basis(BasisId::T, Scheme::Middle, 4, 12).unwrap();
        let names: Vec<String> = t.cells().iter().map(|(c, _)| alloc::format!("{c}")).collect();
        assert_eq!(names, ["I_0(2)", "I_2(2)", "II_2(0)", "II_0(2)", "II_2(2)", "II_0(4)"]);
        let y = enumerate_basis(BasisId::Y, Scheme::Middle, 5, 12).unwrap();
        let names: Vec<String> = y.cells().iter().map(|(c, _)| alloc::format!("{c}")).collect();
        assert_eq!(names, ["I'_0(1)", "I'_2(1)", "I'_0(3)", "I'_2(3)", "II'_0(1)", "II'_0(3)", "II'_2(3)", "II'_0(5)", "II'_2(5)"]);
        let y = enumerate_basis(BasisId::Y, Scheme::Middle, 4, 12).unwrap();
        let names: Vec<String> = y.cells().iter().map(|(c, _)| alloc::format!("{c}")).collect();
        assert_eq!(names, ["I'_0(2)", "I'_2(2)", "II'_0(2)", "II'_2(2)", "II'_0(4)", "II'_2(4)"]);
    }

    #[test]
    fn profile_n3_r5() {
        let p = count_profile(3, 5).unwrap();
        assert_eq!((p.k, p.k_prime, p.total), (2, 1, 5));
        assert_eq!((p.k0(1), p.k2(1), p.l0(1), p.l2(1), p.l0(3)), (1, 1, 1, 1, 1));
        assert_eq!(count_profile(3, 4).unwrap().k_prime, 0);
    }

    #[test]
    fn attained_examples() {
        assert_eq!(attained_values(3, 7, 2).unwrap(), vec![1, 3]);
        assert_eq!(attained_values(3, 4, 2).unwrap(), vec![1]);
        for n in 3..=7 {
            for r in 4..=10 {
                for pos in [1, 2 * n - 3] {
                    assert!(attained_values(n, r, pos).unwrap().iter().all(|v| *v == 0 || *v == 2));
                }
            }
        }
        assert!(attained_values(3, 5, 0).is_err());
        assert!(attained_values(3, 5, 4).is_err());
    }

    #[test]
    fn rejects_out_of_scope() {
        assert!(enumerate_basis(BasisId::T, Scheme::Types, 3, 3).is_err());
        assert!(enumerate_basis(BasisId::T, Scheme::Types, 2, 5).is_err());
        assert!(enumerate_basis(BasisId::Y, Scheme::Types, 3, 5).is_err());
        assert!(enumerate_basis(BasisId::T, Scheme::Types, 9, 5).is_err());
        assert!(count_profile(3, 3).is_err());
    }

    /// Oracle: tally the brute-force layouts cell by cell.
    fn brute_profile(n: u32, r: u32) -> BTreeMap<CellTag, u128> {
        let mut m = BTreeMap::new();
        for (b, s) in [(BasisId::T, Scheme::Middle), (BasisId::Y, Scheme::Middle), (BasisId::T, Scheme::Types)] {
            for (_, tag) in enumerate_basis(b, s, n, r).unwrap().entries {
                *m.entry(tag).or_insert(0u128) += 1;
            }
        }
        m
    }

    #[test]
    fn dp_counts_match_enumeration() {
        for n in 3..=6 {
            for r in 4..=12 {
                let p = count_profile(n, r).unwrap();
                let mut brute = brute_profile(n, r);
                assert_eq!(brute.remove(&CellTag::TypeI).unwrap_or(0), p.k, "n={n} r={r}");
                assert_eq!(brute.remove(&CellTag::TypeII).unwrap_or(0), p.k_type2);
                assert_eq!(brute.remove(&CellTag::TypeIII).unwrap_or(0), p.k_prime);
                assert_eq!(brute, p.cells, "n={n} r={r}");
                let t = enumerate_basis(BasisId::T, Scheme::Types, n, r).unwrap();
                assert_eq!(t.len() as u128, p.total);
                for pos in 1..=2 * n - 3 {
                    let seen: BTreeSet<u32> = t.entries.iter().map(|(c, _)| c.label(pos)).collect();
                    assert_eq!(seen.into_iter().collect::<Vec<_>>(), attained_values(n, r, pos).unwrap());
                    let mut tally: BTreeMap<u32, u128> = BTreeMap::new();
                    for (c, _) in &t.entries {
                        *tally.entry(c.label(pos)).or_default() += 1;
                    }
                    assert_eq!(tally.into_iter().collect::<Vec<_>>(), position_counts(n, r, pos).unwrap());
                }
            }
        }
    }

    #[test]
    fn structural_identities() {
        for n in 3..=30 {
            for r in 4..=24 {
                let p = count_profile(n, r).unwrap();
                assert_eq!(p.k, p.k_type2);
                assert_eq!(p.total, 2 * p.k + p.k_prime);
                assert_eq!(p.total, p.total_y);
                if r == 4 {
                    assert_eq!(p.k_prime, 0);
                }
                for a in 0..r {
                    assert_eq!(p.k0(a), p.k2(a));
                    assert_eq!(p.kp0(a), p.k0(a));
                    assert_eq!(p.kp2(a), p.k2(a));
                    let paired = if a + 2 <= r - 2 { p.l2(a) } else { 0 };
                    assert_eq!(p.l0(a + 2), paired, "n={n} r={r} a={a}");
                }
            }
        }
    }

    #[test]
    fn large_n_counts_fit() {
        let p = count_profile(MAX_COUNT_N, 24).unwrap();
        assert!(p.total > 1u128 << 80);
        assert!(count_profile(MAX_COUNT_N + 1, 24).is_err());
    }

    #[test]
    fn cell_tags_roundtrip_through_text() {
        for t in [CellTag::TypeII, CellTag::I0(3), CellTag::II2(0), CellTag::IPrime2(5), CellTag::IIPrime0(1)] {
            assert_eq!(CellTag::parse(&alloc::format!("{t}")), Some(t));
        }
        assert_eq!(CellTag::parse("III_0(1)"), None);
    }
}
