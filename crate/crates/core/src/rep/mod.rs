//! Represented mapping classes as structured block matrices.
//!
//! Two layouts are used. The *types* layout groups `B_T` by `(a_1, a_2)` and
//! carries `σ_1`, `σ_2` and the `T -> T'` recoupling. The *middle* layout
//! groups `B_T` by the labels around position `n - 1` and carries `σ_n`, the
//! full twist on the first `n` strands, and the commutator `M`.

pub mod block;
pub mod dense;

use alloc::{format, string::String, vec, vec::Vec};
use core::{fmt, str::FromStr};

pub use block::{Group, ScalarBlockMatrix};

use crate::coloring::{count_profile, is_admissible, position_counts, CellTag};
use crate::cyclo::{CycloElem, RootField};
use crate::error::{Error, Result};
use crate::recoupling::{matrix_a, matrix_x};

/// The group elements this crate can represent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepElement {
    /// `σ_1^s`
    HalfTwistPow { s: i64 },
    /// `σ_1^s σ_2^{-s}`
    Commutator2 { s: i64 },
    /// `(σ_1 … σ_{m-1})^m`
    FullTwist { m: u32 },
    /// `σ_n^j`
    SigmaN { j: i64 },
    /// `(σ_1 … σ_{n-1})^n σ_n (σ_1 … σ_{n-1})^{-n} σ_n^{-1}`
    CommutatorM,
    /// `(σ_1 … σ_{2h})^{(4h+2) m}`, the `m`-th power of the twist about a
    /// curve cutting off genus `h`.
    SeparatingTwistPow { h: u32, m: i64 },
}

pub const SUPPORTED_ELEMENTS: &str = "half-twist:S, commutator2:S, full-twist:M, sigma-n:J, commutator-m, separating-twist:H:M";

impl fmt::Display for RepElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RepElement::HalfTwistPow { s } => write!(f, "half-twist:{s}"),
            RepElement::Commutator2 { s } => write!(f, "commutator2:{s}"),
            RepElement::FullTwist { m } => write!(f, "full-twist:{m}"),
            RepElement::SigmaN { j } => write!(f, "sigma-n:{j}"),
            RepElement::CommutatorM => f.write_str("commutator-m"),
            RepElement::SeparatingTwistPow { h, m } => write!(f, "separating-twist:{h}:{m}"),
        }
    }
}

impl FromStr for RepElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unsupported(format!("element `{s}`; supported: {SUPPORTED_ELEMENTS}"));
        let mut parts = s.split(':');
        let head = parts.next().ok_or_else(bad)?;
        let args: Vec<&str> = parts.collect();
        let int = |i: usize| -> Result<i64> { args.get(i).and_then(|x| x.parse().ok()).ok_or_else(bad) };
        let nat = |i: usize| -> Result<u32> { args.get(i).and_then(|x| x.parse().ok()).ok_or_else(bad) };
        let el = match (head, args.len()) {
            ("half-twist", 1) => RepElement::HalfTwistPow { s: int(0)? },
            ("commutator2", 1) => RepElement::Commutator2 { s: int(0)? },
            ("full-twist", 1) => RepElement::FullTwist { m: nat(0)? },
            ("sigma-n", 1) => RepElement::SigmaN { j: int(0)? },
            ("commutator-m", 0) => RepElement::CommutatorM,
            ("separating-twist", 2) => RepElement::SeparatingTwistPow { h: nat(0)?, m: int(1)? },
            _ => return Err(bad()),
        };
        Ok(el)
    }
}

impl RepElement {
    /// The representing matrix on the `2n`-punctured sphere.
    pub fn represent(&self, n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
        match *self {
            RepElement::HalfTwistPow { s } => half_twist_diag(s, n, field),
            RepElement::Commutator2 { s } => rho_commutator2(s, n, field),
            RepElement::FullTwist { m } if m == n => rho_fulltwist_t(n, field),
            RepElement::FullTwist { m } => rho_full_twist(m, n, field),
            RepElement::SigmaN { j } => rho_sigma_n(j, n, field),
            RepElement::CommutatorM => assemble_m(n, field),
            RepElement::SeparatingTwistPow { h, m } => rho_separating_twist_pow(h, m, n, field),
        }
    }
}

/// Eigenvalue of a half-twist of strands colored `b`, `c` fused to `a`:
/// `(-1)^{(a-b-c)/2} q^{-(a(a+2) - b(b+2) - c(c+2))/8}`.
pub fn twist_coeff(a: u32, b: u32, c: u32, field: &RootField) -> Result<CycloElem> {
    if !is_admissible(a, b, c) {
        return Err(Error::NotAdmissible(a, b, c));
    }
    let cas = |x: u32| i64::from(x) * (i64::from(x) + 2);
    let num = cas(a) - cas(b) - cas(c);
    // num/8 must be a quarter-integer
    if num % 2 != 0 {
        return Err(Error::NonQuarterExponent { num: -num, den: 8 });
    }
    let sign = field.sign_pow((i64::from(a) - i64::from(b) - i64::from(c)) / 2);
    Ok(&sign * &field.q_quarter(-num / 2))
}

/// `(-1)^{m+a} q^{3m/4} q^{-(a²+2a)/4}`: the full twist on `m` strands whose
/// fused label is `a`.
pub fn full_twist_scalar(m: u32, a: u32, field: &RootField) -> CycloElem {
    let (m, a) = (i64::from(m), i64::from(a));
    &field.sign_pow(m + a) * &field.q_quarter(3 * m - a * a - 2 * a)
}

/// `q^{3n/4} q^{-(a²+2a)/4}`, the sign-free twist scalar on the first `n`
/// strands; equals [`full_twist_scalar`] whenever `a ≡ n (mod 2)`.
pub fn twist_scalar(n: u32, a: u32, field: &RootField) -> CycloElem {
    let (n, a) = (i64::from(n), i64::from(a));
    field.q_quarter(3 * n - a * a - 2 * a)
}

/// `f_s(q) = (-1)^s (q^s + q^{-s}) + (-1)^{s+1} ((q^{s/2} + (-1)^{s+1} q^{-s/2}) / [2])²`.
pub fn trace_f(s: i64, field: &RootField) -> Result<CycloElem> {
    let inv2 = field.qint(2).inverse()?;
    let first = &field.sign_pow(s) * &(&field.q(s) + &field.q(-s));
    let inner = &(&field.q_half(s) + &(&field.sign_pow(s + 1) * &field.q_half(-s))) * &inv2;
    Ok(&first + &(&field.sign_pow(s + 1) * &(&inner * &inner)))
}

fn types_groups(n: u32, r: u32) -> Result<(Vec<Group>, Vec<CellTag>)> {
    let cells = count_profile(n, r)?.type_cells();
    Ok((cells.iter().map(|(t, c)| Group::new(format!("{t}"), *c)).collect(), cells.iter().map(|(t, _)| *t).collect()))
}

/// Middle-layout groups of `B_T`, in basis order.
pub fn middle_groups(n: u32, r: u32) -> Result<(Vec<Group>, Vec<CellTag>)> {
    let cells = count_profile(n, r)?.t_cells();
    Ok((cells.iter().map(|(t, c)| Group::new(format!("{t}"), *c)).collect(), cells.iter().map(|(t, _)| *t).collect()))
}

/// `ρ_T(σ_1^s)` on the types layout: `a_1` is the label fusing strands 1, 2.
pub fn half_twist_diag(s: i64, n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    let (groups, tags) = types_groups(n, field.r())?;
    let diag = tags
        .iter()
        .map(|t| {
            let a1 = if *t == CellTag::TypeI { 0 } else { 2 };
            twist_coeff(a1, 1, 1, field)?.pow(s)
        })
        .collect::<Result<Vec<_>>>()?;
    ScalarBlockMatrix::diagonal(field, groups, diag)
}

/// `D(s) · A · D(-s) · A`, with `σ_2` diagonal in `B_{T'}`.
pub fn rho_commutator2_product(s: i64, n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    let a = matrix_a(n, field)?;
    let d = half_twist_diag(s, n, field)?;
    let d_inv = half_twist_diag(-s, n, field)?;
    d.mul(&a)?.mul(&d_inv)?.mul(&a)
}

/// `ρ_T(σ_1^s σ_2^{-s})` in closed form, checked against the product form.
pub fn rho_commutator2(s: i64, n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    let (groups, _) = types_groups(n, field.r())?;
    let inv2 = field.qint(2).inverse()?;
    let inv2sq = &inv2 * &inv2;
    let q3 = field.qint(3);
    let sg = field.sign_pow(s);
    let qs = &sg * &field.q(s);
    let qms = &sg * &field.q(-s);
    let one = field.one();
    let mut grid = vec![
        vec![&(&one + &(&qs * &q3)) * &inv2sq, &(&(&qs - &one) * &q3) * &(&inv2sq * &inv2)],
        vec![&(&one - &qms) * &inv2, &(&one + &(&qms * &q3)) * &inv2sq],
    ];
    if groups.len() == 3 {
        grid[0].push(field.zero());
        grid[1].push(field.zero());
        grid.push(vec![field.zero(), field.zero(), one]);
    }
    let closed = ScalarBlockMatrix::from_grid(field, groups, grid)?;
    if closed != rho_commutator2_product(s, n, field)? {
        return Err(Error::internal(format!("closed and product forms of σ_1^{s} σ_2^(-{s}) disagree at {}", field.root())));
    }
    Ok(closed)
}

/// `Y(a)` over `II'_0(a), II'_2(a)`: `diag(-q^{3/4}, q^{-1/4})`, reduced to
/// `-q^{3/4}` when `II'_2(a)` is empty.
pub fn matrix_y(a: u32, n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    let p = count_profile(n, field.r())?;
    let (l0, l2) = (p.lp0(a), p.lp2(a));
    if l0 == 0 {
        return Err(Error::invalid(format!("II'_0({a}) is empty")));
    }
    let mut groups = vec![Group::new(format!("{}", CellTag::IIPrime0(a)), l0)];
    let mut diag = vec![twist_coeff(0, 1, 1, field)?];
    if l2 > 0 {
        groups.push(Group::new(format!("{}", CellTag::IIPrime2(a)), l2));
        diag.push(twist_coeff(2, 1, 1, field)?);
    }
    ScalarBlockMatrix::diagonal(field, groups, diag)
}

/// `Z(a) = f_a I ⊕ f_{a+2} I` over `II_2(a), II_0(a+2)`.
pub fn matrix_z(a: u32, n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    let (x, _) = matrix_x(a, n, field)?;
    let diag = [a, a + 2].into_iter().take(x.groups().len()).map(|b| full_twist_scalar(n, b, field)).collect();
    ScalarBlockMatrix::diagonal(field, x.groups().to_vec(), diag)
}

/// `Y(a+2)^j` transported onto the `T` groups of `X(a)`.
fn y_on_x_groups(x: &ScalarBlockMatrix, j: i64, field: &RootField) -> Result<ScalarBlockMatrix> {
    let diag =
        [0u32, 2].into_iter().take(x.groups().len()).map(|label| twist_coeff(label, 1, 1, field)?.pow(j)).collect::<Result<Vec<_>>>()?;
    ScalarBlockMatrix::diagonal(field, x.groups().to_vec(), diag)
}

/// Levels `a` with `II_2(a)` nonempty, each with its group indices in the
/// middle layout (`II_2(a)` and, when present, `II_0(a+2)`).
fn x_blocks(tags: &[CellTag]) -> Vec<(u32, Vec<usize>)> {
    let pos = |t: CellTag| tags.iter().position(|x| *x == t);
    tags.iter()
        .filter_map(|t| match *t {
            CellTag::II2(a) => {
                let mut idx = vec![pos(CellTag::II2(a)).unwrap()];
                idx.extend(pos(CellTag::II0(a + 2)));
                Some((a, idx))
            }
            _ => None,
        })
        .collect()
}

/// `ρ_T(σ_n^j)`: scalar on `I` cells and the unpaired `II_0(1)`, and
/// `X(a)^{-1} Y^j X(a)` on each `II_2(a) ∪ II_0(a+2)`.
pub fn rho_sigma_n(j: i64, n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    let (groups, tags) = middle_groups(n, field.r())?;
    let mut m = ScalarBlockMatrix::zero(field, groups)?;
    let label2 = twist_coeff(2, 1, 1, field)?.pow(j)?;
    let label0 = twist_coeff(0, 1, 1, field)?.pow(j)?;
    for (i, t) in tags.iter().enumerate() {
        match *t {
            CellTag::I0(_) | CellTag::I2(_) => m.set(i, i, label2.clone())?,
            // the peak (0, 1, 0) only fuses to label 0, with coefficient 1
            CellTag::II0(1) => m.set(i, i, label0.clone())?,
            _ => {}
        }
    }
    for (a, idx) in x_blocks(&tags) {
        let (x, xi) = matrix_x(a, n, field)?;
        let block = xi.mul(&y_on_x_groups(&x, j, field)?)?.mul(&x)?;
        m.embed(&idx, &block)?;
    }
    let covered: usize = m.components().iter().map(Vec::len).sum();
    if covered != tags.len() || m.entries().count() < tags.len() {
        return Err(Error::internal("σ_n assembly left a cell uncovered"));
    }
    Ok(m)
}

/// `ρ_T((σ_1 … σ_{n-1})^n)` on the middle layout: `f_{a_{n-1}}` per cell.
pub fn rho_fulltwist_t(n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    let (groups, tags) = middle_groups(n, field.r())?;
    let diag = tags
        .iter()
        .map(|t| t.level().map(|a| full_twist_scalar(n, a, field)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::internal("middle layout without levels"))?;
    ScalarBlockMatrix::diagonal(field, groups, diag)
}

/// `ρ_T((σ_1 … σ_{m-1})^m)` for `2 <= m <= 2n`, grouped by `a_{m-1}`.
///
/// All `2n` strands together carry the closed label 0.
pub fn rho_full_twist(m: u32, n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    if m < 2 || m > 2 * n {
        return Err(Error::invalid(format!("full twist needs 2 <= m <= 2n, got m = {m}")));
    }
    let r = field.r();
    let classes = if m == 2 * n { vec![(0u32, count_profile(n, r)?.total)] } else { position_counts(n, r, m - 1)? };
    let groups = classes.iter().map(|(v, c)| Group::new(format!("a_{}={v}", m - 1), *c)).collect();
    let diag = classes.iter().map(|(v, _)| full_twist_scalar(m, *v, field)).collect();
    ScalarBlockMatrix::diagonal(field, groups, diag)
}

/// `(σ_1 … σ_{2h})^{(4h+2) m}`, the square of the full twist on `2h + 1`
/// strands raised to `m`.
pub fn rho_separating_twist_pow(h: u32, m: i64, n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    if h == 0 || 2 * h + 1 > 2 * n - 1 {
        return Err(Error::invalid(format!("separating twist needs 1 <= h <= n-2, got h = {h}")));
    }
    rho_full_twist(2 * h + 1, n, field)?.pow(2 * m)
}

/// Levels `a` for which `M(a)` is a genuine `2 × 2` block.
pub fn m_levels(n: u32, r: u32) -> Result<Vec<u32>> {
    let (_, tags) = middle_groups(n, r)?;
    Ok(x_blocks(&tags).into_iter().filter(|(_, idx)| idx.len() == 2).map(|(a, _)| a).collect())
}

/// `M(a) = Z X^{-1} Y X Z^{-1} X^{-1} Y^{-1} X`.
pub fn m_block_product(a: u32, n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    let (x, xi) = matrix_x(a, n, field)?;
    if x.groups().len() != 2 {
        return Err(Error::invalid(format!("M({a}) needs II_0({}) to be nonempty", a + 2)));
    }
    let z = matrix_z(a, n, field)?;
    let y = y_on_x_groups(&x, 1, field)?;
    let y_inv = y_on_x_groups(&x, -1, field)?;
    z.mul(&xi)?.mul(&y)?.mul(&x)?.mul(&z.inverse()?)?.mul(&xi)?.mul(&y_inv)?.mul(&x)
}

/// `M(a)` from its closed form in `f_a`, `f_{a+2}` and quantum integers.
pub fn m_block_closed(a: u32, n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    let (x, _) = matrix_x(a, n, field)?;
    if x.groups().len() != 2 {
        return Err(Error::invalid(format!("M({a}) needs II_0({}) to be nonempty", a + 2)));
    }
    let b = i64::from(a);
    let one = field.one();
    let (qa1, qa2, qa3) = (field.qint(b + 1), field.qint(b + 2), field.qint(b + 3));
    let inv_a2 = qa2.inverse()?;
    let inv2 = field.qint(2).inverse()?;
    let fa = full_twist_scalar(n, a, field);
    let fa2 = full_twist_scalar(n, a + 2, field);
    // 1 - f_a(q) f_{a+2}(q^{-1}) and its conjugate
    let u = &one - &(&fa * &fa2.conj_q());
    let v = &one - &(&fa.conj_q() * &fa2);
    let ratio = &(&qa1 * &qa3) * &(&inv_a2 * &inv_a2);
    let e11 = &one - &(&u * &ratio);
    let e22 = &one - &(&v * &ratio);
    let num12 = &(&field.q_half(-1) * &qa3) - &(&field.q_half(1) * &qa1);
    let e12 = &(&u * &num12) * &(&(&ratio * &inv2) * &inv_a2);
    let num21 = &(&field.q_half(-1) * &qa1) - &(&field.q_half(1) * &qa3);
    let e21 = &(&v * &num21) * &(&inv2 * &inv_a2);
    ScalarBlockMatrix::from_grid(field, x.groups().to_vec(), vec![vec![e11, e12], vec![e21, e22]])
}

/// `(q^{(a+1)/2} - q^{-(a+1)/2})(q^{(a+3)/2} - q^{-(a+3)/2})`, the trace
/// excess of `M(a)` per unit of block size.
pub fn m_trace_excess_unit(a: u32, field: &RootField) -> CycloElem {
    let b = i64::from(a);
    let s = |k: i64| &field.q_half(k) - &field.q_half(-k);
    &s(b + 1) * &s(b + 3)
}

/// `M` on the middle layout: identity outside the `M(a)` blocks.
///
/// Built as `F S F^{-1} S^{-1}` and from the closed blocks; a disagreement
/// is an internal error.
pub fn assemble_m(n: u32, field: &RootField) -> Result<ScalarBlockMatrix> {
    let f = rho_fulltwist_t(n, field)?;
    let s = rho_sigma_n(1, n, field)?;
    let product = f.mul(&s)?.mul(&f.inverse()?)?.mul(&s.inverse()?)?;
    let (groups, tags) = middle_groups(n, field.r())?;
    let mut closed = ScalarBlockMatrix::identity(field, groups)?;
    for (a, idx) in x_blocks(&tags) {
        if idx.len() == 2 {
            closed.embed(&idx, &m_block_closed(a, n, field)?)?;
        }
    }
    if closed != product {
        return Err(Error::internal(format!("closed and product forms of M disagree at n = {n}, {}", field.root())));
    }
    Ok(closed)
}

/// Names of the groups of a matrix, joined for messages.
pub fn describe_groups(m: &ScalarBlockMatrix) -> String {
    let names: Vec<String> = m.groups().iter().map(|g| format!("{}[{}]", g.name, g.size)).collect();
    names.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{enumerate_basis, BasisId, Scheme};
    use crate::cyclo::RootChoice;
    use crate::recoupling::fusion_bt_to_by;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rf(r: u32, t: u32) -> RootField {
        RootField::new(RootChoice::new(r, t).unwrap())
    }

    fn roots(r: u32) -> Vec<RootField> {
        RootChoice::all(r).unwrap().into_iter().map(RootField::new).collect()
    }

    #[test]
    fn twist_coeff_examples() {
        let f = rf(7, 3);
        assert_eq!(twist_coeff(0, 1, 1, &f).unwrap(), -f.q_quarter(3));
        assert_eq!(twist_coeff(2, 1, 1, &f).unwrap(), f.q_quarter(-1));
        assert!(twist_coeff(1, 1, 1, &f).is_err());
        // self-pairing to 0 is the inverse twist eigenvalue of a single strand
        for a in 0..6u32 {
            let c = twist_coeff(0, a, a, &f).unwrap();
            let expect = &f.sign_pow(i64::from(a)) * &f.q_quarter(i64::from(a * (a + 2)));
            assert_eq!(c, expect);
        }
    }

    #[test]
    fn full_twist_examples() {
        let f = rf(9, 5);
        assert_eq!(full_twist_scalar(2, 0, &f), f.q_half(3));
        for n in 3..8 {
            for a in (n % 2..n).step_by(2) {
                assert_eq!(full_twist_scalar(n, a, &f), twist_scalar(n, a, &f));
            }
        }
        // two strands: the full twist is σ_1², the squared half-twist eigenvalue
        for a in [0u32, 2] {
            let h = twist_coeff(a, 1, 1, &f).unwrap();
            assert_eq!(full_twist_scalar(2, a, &f), &h * &h);
        }
    }

    #[test]
    fn commutator2_forms_and_invariants() {
        for r in 4..=12 {
            for f in roots(r) {
                for n in 3..=5 {
                    let k = count_profile(n, r).unwrap();
                    for s in 0..=4 {
                        let m = rho_commutator2(s, n, &f).unwrap();
                        assert!(m.det().unwrap().is_one());
                        let tr = &(&trace_f(s, &f).unwrap() * &f.int(k.k as i64)) + &f.int(k.k_prime as i64);
                        assert_eq!(m.trace(), tr);
                        if s == 0 {
                            assert!(m.is_identity());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trace_f_is_conjugation_fixed() {
        for r in 3..=12 {
            for f in roots(r) {
                for s in 0..=6 {
                    let v = trace_f(s, &f).unwrap();
                    assert_eq!(v.conj_q(), v);
                }
                assert_eq!(trace_f(0, &f).unwrap(), f.int(2));
            }
        }
    }

    #[test]
    fn y_and_z_blocks() {
        let f = rf(7, 3);
        let y = matrix_y(3, 3, &f).unwrap();
        assert_eq!(y.grid(), vec![vec![-f.q_quarter(3), f.zero()], vec![f.zero(), f.q_quarter(-1)]]);
        assert_eq!(y.pow(-1).unwrap().pow(-1).unwrap(), y);
        // n even, r odd: the top level r-1 carries a single label
        let f = rf(9, 5);
        let y = matrix_y(8, 8, &f).unwrap();
        assert_eq!(y.groups().len(), 1);
        assert_eq!(y.entry(0, 0), -f.q_quarter(3));
        let z = matrix_z(2, 6, &f).unwrap();
        let zc = matrix_z(2, 6, &rf(9, 36 - 5)).unwrap();
        for i in 0..2 {
            assert_eq!(z.entry(i, i).conj_q(), zc.entry(i, i));
        }
        // f_a(q) f_{a+2}(q^{-1}) = q^{a+2}
        for a in 0..6u32 {
            let p = &full_twist_scalar(6, a, &f) * &full_twist_scalar(6, a + 2, &f).conj_q();
            assert_eq!(p, f.q(i64::from(a) + 2));
        }
    }

    #[test]
    fn m_blocks_closed_equals_product() {
        for r in 4..=12 {
            for f in roots(r) {
                for n in 3..=6 {
                    let m = assemble_m(n, &f).unwrap();
                    for a in m_levels(n, r).unwrap() {
                        let closed = m_block_closed(a, n, &f).unwrap();
                        assert_eq!(closed, m_block_product(a, n, &f).unwrap(), "n={n} a={a} {}", f.root());
                        assert!(closed.det().unwrap().is_one());
                        let tr = closed.trace();
                        assert_eq!(tr.conj_q(), tr);
                        let size = closed.groups()[0].size as i64;
                        let expect = &f.int(2 * size) + &(&m_trace_excess_unit(a, &f) * &f.int(size));
                        assert_eq!(tr, expect);
                    }
                    assert!(m.det().unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn m1_at_r6_matches_display() {
        let f = rf(6, 1);
        let i = f.zeta_pow(6);
        let half = f.rational(BigRational::new(BigInt::from(-1), BigInt::from(2)));
        let m = m_block_closed(1, 3, &f).unwrap();
        let three_quarters = BigRational::new(BigInt::from(-3), BigInt::from(4));
        assert_eq!(m.grid(), vec![vec![half.clone(), i.scale(&three_quarters)], vec![-i.clone(), half.clone()]]);
        let mc = m_block_closed(1, 3, &rf(6, 23)).unwrap();
        assert_eq!(mc.grid(), vec![vec![half.clone(), i.scale(&-three_quarters)], vec![i, half]]);
    }

    /// Oracle: `σ_n` computed densely on `B_Y` intertwines with the block
    /// assembly through the coloring-by-coloring fusion matrix.
    #[test]
    fn sigma_n_intertwines_dense_fusion() {
        for (n, r) in [(3u32, 5u32), (3, 6), (4, 6), (4, 7), (5, 7), (5, 8)] {
            for t in [1u32, 3] {
                let Ok(root) = RootChoice::new(r, t) else { continue };
                let f = RootField::new(root);
                let tl = enumerate_basis(BasisId::T, Scheme::Middle, n, r).unwrap();
                let yl = enumerate_basis(BasisId::Y, Scheme::Middle, n, r).unwrap();
                let dim = tl.len();
                let mut c = vec![vec![f.zero(); dim]; dim];
                for (j, (col, _)) in tl.entries.iter().enumerate() {
                    for (target, coeff) in fusion_bt_to_by(col, &f).unwrap() {
                        c[yl.position(&target).unwrap()][j] = coeff;
                    }
                }
                for jpow in [-1i64, 1, 2] {
                    let dy: dense::Dense = (0..dim)
                        .map(|i| {
                            (0..dim)
                                .map(|k| {
                                    if i != k {
                                        return f.zero();
                                    }
                                    let label = yl.entries[i].0.label(n - 1);
                                    twist_coeff(label, 1, 1, &f).unwrap().pow(jpow).unwrap()
                                })
                                .collect()
                        })
                        .collect();
                    let rho = rho_sigma_n(jpow, n, &f).unwrap().to_dense().unwrap();
                    assert_eq!(dense::mul(&f, &c, &rho).unwrap(), dense::mul(&f, &dy, &c).unwrap(), "n={n} r={r}");
                }
                let ft = rho_fulltwist_t(n, &f).unwrap().to_dense().unwrap();
                for (i, (col, _)) in tl.entries.iter().enumerate() {
                    assert_eq!(ft[i][i], full_twist_scalar(n, col.label(n - 1), &f));
                }
            }
        }
    }

    #[test]
    fn relator_full_twist_is_scalar() {
        for r in 4..=10 {
            let f = rf(r, 1);
            for n in 3..=6 {
                let m = rho_full_twist(2 * n, n, &f).unwrap();
                assert_eq!(m.scalar_value(), Some(f.q_half(3 * i64::from(n))));
                assert_eq!(m.dim(), count_profile(n, r).unwrap().total);
                assert!(rho_full_twist(2 * n - 1, n, &f).unwrap().scalar_value().is_some());
                assert!(rho_full_twist(1, n, &f).is_err());
            }
        }
    }

    #[test]
    fn half_twist_scalar_iff_condition() {
        for r in 4..=24 {
            for f in roots(r) {
                for m in 1..=12i64 {
                    let cond = f.q(m) == f.sign_pow(m);
                    let mat = half_twist_diag(m, 3, &f).unwrap();
                    assert_eq!(mat.scalar_value().is_some(), cond, "r={r} m={m}");
                }
            }
        }
    }

    #[test]
    fn element_strings_roundtrip() {
        for e in [
            RepElement::HalfTwistPow { s: -3 },
            RepElement::Commutator2 { s: 2 },
            RepElement::FullTwist { m: 5 },
            RepElement::SigmaN { j: 1 },
            RepElement::CommutatorM,
            RepElement::SeparatingTwistPow { h: 2, m: 7 },
        ] {
            assert_eq!(format!("{e}").parse::<RepElement>().unwrap(), e);
        }
        assert!(matches!("braid:1,2".parse::<RepElement>(), Err(Error::Unsupported(_))));
    }
}
