//! Recoupling coefficients for a pair of color-1 strands.
//!
//! Only the family `{1 1 i; x y a}` is implemented: two color-1 strands fused
//! to `a` against the outer labels `x` and `y`, re-fused so the two strands
//! meet first with label `i`. Every change of basis used here is an instance.

use alloc::{format, vec, vec::Vec};
use core::fmt;

use crate::coloring::{count_profile, is_q_admissible, is_q_admissible_coloring, BasisId, CellTag, Coloring};
use crate::cyclo::{CycloElem, RootField};
use crate::error::{Error, Result};
use crate::rep::{Group, ScalarBlockMatrix};

/// `{top; bottom}`, written `{1 1 i; x y a}` for the supported family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SixJKey {
    pub top: [u32; 3],
    pub bottom: [u32; 3],
}

impl SixJKey {
    pub fn new(top: [u32; 3], bottom: [u32; 3]) -> Self {
        SixJKey { top, bottom }
    }

    /// `{1 1 i; x y a}`.
    pub fn fusion(i: u32, x: u32, y: u32, a: u32) -> Self {
        SixJKey { top: [1, 1, i], bottom: [x, y, a] }
    }
}

impl fmt::Display for SixJKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.top;
        let [d, e, g] = self.bottom;
        write!(f, "{{{a} {b} {c}; {d} {e} {g}}}")
    }
}

fn unsupported(key: SixJKey) -> Error {
    Error::Unsupported(format!(
        "6j-symbol {key}: only {{1 1 i; x y a}} with |x-a| = |y-a| = 1 is available; general 6j evaluation is out of scope"
    ))
}

/// Exact value of a supported 6j-symbol at the field's root.
pub fn sixj(key: SixJKey, field: &RootField) -> Result<CycloElem> {
    let [one_a, one_b, i] = key.top;
    let [x, y, a] = key.bottom;
    if one_a != 1 || one_b != 1 || !matches!(i, 0 | 2) || x.abs_diff(a) != 1 || y.abs_diff(a) != 1 {
        return Err(unsupported(key));
    }
    if !crate::coloring::is_admissible(x, i, y) {
        return Err(Error::NotAdmissible(x, i, y));
    }
    let q2_inv = field.qint(2).inverse()?;
    let qa = || field.qint(i64::from(a)).inverse();
    Ok(match (x == y, x < a, i) {
        // x != y forces i = 2 by admissibility
        (false, _, _) => field.one(),
        (true, true, 0) => &(&field.qint(i64::from(a) + 1) * &q2_inv) * &qa()?,
        (true, true, _) => &field.qint(i64::from(a) - 1) * &qa()?,
        (true, false, 0) => -q2_inv,
        (true, false, _) => field.one(),
    })
}

/// Change of coordinates `β_T -> β_{T'}` on the Type I / II / III layout.
///
/// Column `j` holds the `T'`-coordinates of the `j`-th `T` group.
pub fn matrix_a(n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    let profile = count_profile(n, field.r())?;
    let cells = profile.type_cells();
    let groups: Vec<Group> = cells.iter().map(|(t, c)| Group::new(format!("{t}"), *c)).collect();
    let mut m = ScalarBlockMatrix::zero(field, groups)?;
    // T(0,1,…) and T(2,1,…) re-fuse over outer labels (1, 1); T(2,3,…) over (1, 3)
    let s = |i, x, y, a| sixj(SixJKey::fusion(i, x, y, a), field);
    m.set(0, 0, s(0, 1, 1, 0)?)?;
    m.set(1, 0, s(2, 1, 1, 0)?)?;
    m.set(0, 1, s(0, 1, 1, 2)?)?;
    m.set(1, 1, s(2, 1, 1, 2)?)?;
    if cells.len() == 3 {
        m.set(2, 2, s(2, 1, 3, 2)?)?;
    }
    Ok(m)
}

/// `X(a)` and `X(a)^{-1}` over the `T` groups `II_2(a), II_0(a+2)`.
///
/// `X` sends `T`-coordinates to `Y`-coordinates on `II'_0(a+2), II'_2(a+2)`;
/// when `II_0(a+2)` is empty the block is the single scalar `-[2]^{-1}`.
pub fn matrix_x(a: u32, n: u32, field: &RootField) -> Result<(ScalarBlockMatrix, ScalarBlockMatrix)> {
    let r = field.r();
    let p = count_profile(n, r)?;
    let size = p.l2(a);
    if size == 0 {
        return Err(Error::invalid(format!("II_2({a}) is empty for n = {n}, r = {r}")));
    }
    let s = |i, x, y, b| sixj(SixJKey::fusion(i, x, y, b), field);
    let lower = CellTag::II2(a);
    if p.l0(a + 2) == 0 {
        if a + 3 != r {
            return Err(Error::internal(format!("II_0({}) empty but a != r-3", a + 2)));
        }
        let g = vec![Group::new(format!("{lower}"), size)];
        let x = ScalarBlockMatrix::diagonal(field, g.clone(), vec![s(0, a + 1, a + 1, a)?])?;
        let inv = x.inverse()?;
        return Ok((x, inv));
    }
    let groups = vec![Group::new(format!("{lower}"), size), Group::new(format!("{}", CellTag::II0(a + 2)), size)];
    let grid = vec![vec![s(0, a + 1, a + 1, a)?, s(0, a + 1, a + 1, a + 2)?], vec![s(2, a + 1, a + 1, a)?, s(2, a + 1, a + 1, a + 2)?]];
    let x = ScalarBlockMatrix::from_grid(field, groups.clone(), grid)?;
    let inv = x.inverse()?;
    Ok((x, inv))
}

/// Expansion of a `B_T` basis vector in `B_Y`.
pub fn fusion_bt_to_by(c: &Coloring, field: &RootField) -> Result<Vec<(Coloring, CycloElem)>> {
    let r = field.r();
    if !is_q_admissible_coloring(BasisId::T, c, r) {
        return Err(Error::invalid(format!("{c} is not a q-admissible coloring of B_T")));
    }
    let n = c.n();
    let (x, a, y) = c.middle();
    let mut out = Vec::new();
    for i in [0u32, 2] {
        if is_q_admissible(x, i, y, r) && is_q_admissible(1, 1, i, r) {
            out.push((c.with_label(n - 1, i), sixj(SixJKey::fusion(i, x, y, a), field)?));
        }
    }
    Ok(out)
}

/// A `B_T` coloring whose fusion targets contradict the admissibility pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionViolation {
    pub n: u32,
    pub r: u32,
    pub coloring: Coloring,
    pub label: u32,
}

/// Checks the fusion-target admissibility pattern on every `B_T` coloring:
/// ascending and descending middles admit label 2; a peak at `a` admits 0,
/// and 2 unless `a = 1`; a valley at `a` admits 0, and 2 unless `a = r - 3`.
pub fn check_fusion_admissibility(n_max: u32, r_max: u32) -> Result<(usize, Vec<FusionViolation>)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 3..=n_max {
        for r in 4..=r_max {
            let layout = crate::coloring::enumerate_basis(BasisId::T, crate::coloring::Scheme::Middle, n, r)?;
            for (c, tag) in &layout.entries {
                let (x, _, y) = c.middle();
                let expected: &[u32] = match *tag {
                    CellTag::I0(_) | CellTag::I2(_) => &[2],
                    CellTag::II0(1) => &[0],
                    CellTag::II0(_) => &[0, 2],
                    CellTag::II2(a) if a + 3 == r => &[0],
                    CellTag::II2(_) => &[0, 2],
                    _ => return Err(Error::internal("unexpected cell in middle layout")),
                };
                for &label in expected {
                    checked += 1;
                    if !is_q_admissible(x, label, y, r) {
                        bad.push(FusionViolation { n, r, coloring: c.clone(), label });
                    }
                }
            }
        }
    }
    Ok((checked, bad))
}
