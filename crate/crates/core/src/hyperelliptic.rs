//! Twists about symmetric curves of a closed genus-`g` surface, seen through
//! the `2g + 2`-punctured sphere.
//!
//! A non-separating symmetric curve lifts a half-twist. The curve `δ_h`
//! cutting off genus `h` lifts `(σ_1 … σ_{2h})^{4h+2}`, which acts on the
//! colorings with `a_{2h} = a` by `q^{3mh} q^{-m(a-1)(a+3)/2}` after `m`
//! powers.

use alloc::{format, string::String, vec::Vec};
use core::fmt;

use crate::certify::{certify_root, halftwist_trivial, scan_roots, verify_certificate, OrderCertificate};
use crate::coloring::attained_values;
use crate::cyclo::{CycloElem, RootChoice, RootField};
use crate::error::{Error, Result};
use crate::rep::{full_twist_scalar, RepElement};

/// Scalars of `T_{δ_h}^m` over the attained values of `a_{2h}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistScalarSet {
    pub g: u32,
    pub h: u32,
    pub m: u32,
    pub root: RootChoice,
    pub scalars: Vec<(u32, CycloElem)>,
}

impl TwistScalarSet {
    /// Projectively trivial exactly when all scalars agree.
    pub fn is_trivial(&self) -> bool {
        self.scalars.windows(2).all(|w| w[0].1 == w[1].1)
    }

    pub fn distinct(&self) -> usize {
        let mut seen: Vec<&CycloElem> = Vec::new();
        for (_, s) in &self.scalars {
            if !seen.contains(&s) {
                seen.push(s);
            }
        }
        seen.len()
    }
}

/// `q^{3mh} q^{-m(a-1)(a+3)/2}` for odd `a`.
pub fn delta_scalar(h: u32, m: u32, a: u32, field: &RootField) -> Result<CycloElem> {
    if a.is_multiple_of(2) {
        return Err(Error::invalid(format!("a_{{2h}} is odd, got {a}")));
    }
    let (h, m, a) = (i64::from(h), i64::from(m), i64::from(a));
    Ok(field.q(3 * m * h - m * (a - 1) * (a + 3) / 2))
}

fn check_genus(g: u32, h: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::invalid(format!("genus must be at least 2, got {g}")));
    }
    if h == 0 || h >= g {
        return Err(Error::invalid(format!("need 1 <= h <= g-1, got h = {h}, g = {g}")));
    }
    Ok(())
}

pub fn delta_scalar_set(g: u32, h: u32, m: u32, field: &RootField) -> Result<TwistScalarSet> {
    check_genus(g, h)?;
    let values = attained_values(g + 1, field.r(), 2 * h)?;
    let mut scalars = Vec::with_capacity(values.len());
    for a in values {
        let s = delta_scalar(h, m, a, field)?;
        if s != full_twist_scalar(2 * h + 1, a, field).pow(2 * i64::from(m))? {
            return Err(Error::internal(format!("separating twist scalar disagrees at h = {h}, a = {a}")));
        }
        scalars.push((a, s));
    }
    Ok(TwistScalarSet { g, h, m, root: field.root(), scalars })
}

/// The odd values `1, 3, …` up to `min(r-2, 2g-1)` (`r` odd) or
/// `min(r-3, 2g-1)` (`r` even), claimed for `a_{2h}` at every `h`.
pub fn claimed_values(g: u32, r: u32) -> Vec<u32> {
    let cap = if r % 2 == 1 { r - 2 } else { r - 3 }.min(2 * g - 1);
    (1..=cap).step_by(2).collect()
}

/// Which closed-form condition governs `(g, h, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistCase {
    /// `r = 4`: always trivial.
    RootFour,
    /// `r ∈ {5, 6}`: `q^{6m} = 1`.
    RootFiveSix,
    /// `r >= 7`, `g ∈ {2, 3}`, `h = 1` up to symmetry: `q^{6m} = 1`.
    SmallGenus,
    /// `r >= 7`, `g >= 4`: `q^{2m} = 1`.
    LargeGenus,
}

impl fmt::Display for TwistCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistCase::RootFour => "(1) r=4",
            TwistCase::RootFiveSix => "(2) r=5,6: q^{6m}=1",
            TwistCase::SmallGenus => "(3) g=2,3: q^{6m}=1",
            TwistCase::LargeGenus => "(4) g>=4: q^{2m}=1",
        })
    }
}

pub fn twist_case(g: u32, r: u32) -> Result<TwistCase> {
    Ok(match (r, g) {
        (0..=3, _) => return Err(Error::invalid("r >= 4 required")),
        (_, 0..=1) => return Err(Error::invalid("genus must be at least 2")),
        (4, _) => TwistCase::RootFour,
        (5 | 6, _) => TwistCase::RootFiveSix,
        (_, 2 | 3) => TwistCase::SmallGenus,
        _ => TwistCase::LargeGenus,
    })
}

pub fn case_condition(case: TwistCase, m: u32, field: &RootField) -> bool {
    let m = i64::from(m);
    match case {
        TwistCase::RootFour => true,
        TwistCase::RootFiveSix | TwistCase::SmallGenus => field.q(6 * m).is_one(),
        TwistCase::LargeGenus => field.q(2 * m).is_one(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistRow {
    pub root: RootChoice,
    pub g: u32,
    pub h: u32,
    pub m: u32,
    pub case: TwistCase,
    pub closed_form: bool,
    pub direct: bool,
}

/// Comparison of the closed-form conditions with the direct scalar test.
///
/// `per_h_mismatches` lists every `(root, g, h, m)` where the two differ.
/// `conjunction_mismatches` compares "trivial for all `h`" on both sides.
/// `sufficiency_failures` lists rows where the closed form holds but the
/// direct test fails. `symmetry_failures` lists `h` whose direct test
/// differs from that of `g - h`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistReport {
    pub rows: usize,
    pub per_h_mismatches: Vec<TwistRow>,
    pub conjunction_mismatches: Vec<TwistRow>,
    pub sufficiency_failures: Vec<TwistRow>,
    pub symmetry_failures: Vec<TwistRow>,
}

impl TwistReport {
    pub fn merge(&mut self, other: TwistReport) {
        self.rows += other.rows;
        self.per_h_mismatches.extend(other.per_h_mismatches);
        self.conjunction_mismatches.extend(other.conjunction_mismatches);
        self.sufficiency_failures.extend(other.sufficiency_failures);
        self.symmetry_failures.extend(other.symmetry_failures);
    }

    /// The closed form is sufficient, symmetric, and exact for all `h` jointly.
    pub fn conjunction_agrees(&self) -> bool {
        self.conjunction_mismatches.is_empty() && self.sufficiency_failures.is_empty() && self.symmetry_failures.is_empty()
    }
}

/// The report for one root, all `g` and `m` in range.
pub fn verify_twist_conditions_at(
    field: &RootField,
    g_range: impl Iterator<Item = u32> + Clone,
    m_range: impl Iterator<Item = u32> + Clone,
) -> Result<TwistReport> {
    let mut report = TwistReport::default();
    for g in g_range {
        let case = twist_case(g, field.r())?;
        for m in m_range.clone() {
            let closed_form = case_condition(case, m, field);
            let mut direct = Vec::new();
            for h in 1..g {
                let d = delta_scalar_set(g, h, m, field)?.is_trivial();
                direct.push(d);
                let row = TwistRow { root: field.root(), g, h, m, case, closed_form, direct: d };
                report.rows += 1;
                if closed_form && !d {
                    report.sufficiency_failures.push(row.clone());
                }
                if closed_form != d {
                    report.per_h_mismatches.push(row);
                }
            }
            for h in 1..g {
                if direct[(h - 1) as usize] != direct[(g - h - 1) as usize] {
                    let d = direct[(h - 1) as usize];
                    report.symmetry_failures.push(TwistRow { root: field.root(), g, h, m, case, closed_form, direct: d });
                }
            }
            let all = direct.iter().all(|&d| d);
            if all != closed_form {
                report.conjunction_mismatches.push(TwistRow { root: field.root(), g, h: 0, m, case, closed_form, direct: all });
            }
        }
    }
    Ok(report)
}

/// [`verify_twist_conditions_at`] over every root with `r` in range.
pub fn verify_twist_conditions(
    r_range: impl Iterator<Item = u32>,
    g_range: impl Iterator<Item = u32> + Clone,
    m_range: impl Iterator<Item = u32> + Clone,
) -> Result<TwistReport> {
    let mut report = TwistReport::default();
    for r in r_range {
        for root in RootChoice::all(r)? {
            report.merge(verify_twist_conditions_at(&RootField::new(root), g_range.clone(), m_range.clone())?);
        }
    }
    Ok(report)
}

/// Evidence that the normal closure of `T_c^k` and all `T_{δ_h}^l` has
/// infinite index: both generators act trivially and `M` has infinite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NklCertificate {
    pub g: u32,
    pub k: u32,
    pub l: u32,
    pub order: OrderCertificate,
    pub twists: Vec<TwistScalarSet>,
}

/// The certificate at one root, if all three conditions hold there.
pub fn certify_nkl_root(g: u32, k: u32, l: u32, field: &RootField) -> Result<Option<NklCertificate>> {
    check_genus(g, 1)?;
    if !halftwist_trivial(field, k) {
        return Ok(None);
    }
    let mut twists = Vec::with_capacity(g as usize - 1);
    for h in 1..g {
        let set = delta_scalar_set(g, h, l, field)?;
        if !set.is_trivial() {
            return Ok(None);
        }
        twists.push(set);
    }
    let order = certify_root(RepElement::CommutatorM, g + 1, field)?;
    Ok(order.is_infinite().then_some(NklCertificate { g, k, l, order, twists }))
}

/// All certificates with `4 <= r <= r_max`, in root order.
pub fn certify_nkl(g: u32, k: u32, l: u32, r_max: u32) -> Result<Vec<NklCertificate>> {
    let mut out = Vec::new();
    for root in scan_roots(r_max)? {
        out.extend(certify_nkl_root(g, k, l, &RootField::new(root))?);
    }
    Ok(out)
}

/// The first certificate in root order.
pub fn certify_nkl_first(g: u32, k: u32, l: u32, r_max: u32) -> Result<Option<NklCertificate>> {
    for root in scan_roots(r_max)? {
        if let Some(c) = certify_nkl_root(g, k, l, &RootField::new(root))? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Re-checks a certificate from its embedded data.
pub fn verify_nkl(cert: &NklCertificate) -> Result<()> {
    let reject = |why: String| Err(Error::CertificateRejected(why));
    verify_certificate(&cert.order)?;
    if cert.order.n != cert.g + 1 || cert.order.element != RepElement::CommutatorM {
        return reject("order certificate is not for M on 2g+2 punctures".into());
    }
    let field = RootField::new(RootChoice::new(cert.order.root.r(), cert.order.root.t())?);
    if !halftwist_trivial(&field, cert.k) {
        return reject(format!("q^{0} != (-1)^{0}", cert.k));
    }
    let hs: Vec<u32> = cert.twists.iter().map(|t| t.h).collect();
    if hs != (1..cert.g).collect::<Vec<_>>() {
        return reject("twist sets must cover h = 1..g-1".into());
    }
    for set in &cert.twists {
        if set.g != cert.g || set.m != cert.l || set.root != field.root() {
            return reject(format!("twist set h = {} does not match the certificate", set.h));
        }
        let values: Vec<u32> = set.scalars.iter().map(|(a, _)| *a).collect();
        if values != attained_values(cert.g + 1, field.r(), 2 * set.h)? {
            return reject(format!("twist set h = {} omits attained labels", set.h));
        }
        for (a, s) in &set.scalars {
            if *s != delta_scalar(set.h, set.m, *a, &field)? {
                return reject(format!("wrong twist scalar at h = {}, a = {a}", set.h));
            }
        }
        if !set.is_trivial() {
            return reject(format!("twist about δ_{} is not scalar", set.h));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellStatus {
    Finite,
    Infinite,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Computed,
    Literature,
    Open,
}

/// `(genus range, power range, status, citation)`, ranges inclusive.
pub type LiteratureFact = ((u32, u32), (u32, u32), CellStatus, &'static str);

/// Known index facts for the normal closure of `m`-th powers of twists about
/// all symmetric curves, as `(genus range, power range, status, citation)`.
pub const LITERATURE: &[LiteratureFact] = &[
    ((1, u32::MAX), (1, 1), CellStatus::Finite, "twists about symmetric curves generate the group"),
    ((1, 1), (2, 5), CellStatus::Finite, "Newman 1972: N_m has finite index in SL(2,Z) for m <= 5"),
    ((1, 1), (6, u32::MAX), CellStatus::Infinite, "Newman 1972: N_m has infinite index in SL(2,Z) for m >= 6"),
    ((2, 2), (2, 3), CellStatus::Finite, "Humphries 1992: N_2, N_3 have finite index for g = 2"),
    ((2, 2), (4, u32::MAX), CellStatus::Infinite, "Humphries 1992: twists about all curves, m >= 4, g = 2"),
];

pub fn literature_fact(g: u32, m: u32) -> Option<(CellStatus, &'static str)> {
    LITERATURE.iter().find(|((g0, g1), (m0, m1), _, _)| (*g0..=*g1).contains(&g) && (*m0..=*m1).contains(&m)).map(|(_, _, s, c)| (*s, *c))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub g: u32,
    pub m: u32,
    pub status: CellStatus,
    pub provenance: Provenance,
    pub citation: Option<String>,
    pub certificate: Option<NklCertificate>,
}

/// Cells `g >= 2`, `m >= 5`, `m != 6` are decided by computation.
pub fn is_computed_cell(g: u32, m: u32) -> bool {
    g >= 2 && m >= 5 && m != 6
}

/// Roots tried for a computed cell: `r <= 2m`.
pub fn cell_r_max(m: u32) -> u32 {
    2 * m
}

pub fn table_cell(g: u32, m: u32) -> Result<TableCell> {
    if g == 0 || m == 0 {
        return Err(Error::invalid("genus and power start at 1"));
    }
    let mut cell = TableCell { g, m, status: CellStatus::Unknown, provenance: Provenance::Open, citation: None, certificate: None };
    if is_computed_cell(g, m) {
        if let Some(c) = certify_nkl_first(g, m, m, cell_r_max(m))? {
            cell.status = CellStatus::Infinite;
            cell.provenance = Provenance::Computed;
            cell.citation = Some(format!("certificate at {}", c.order.root));
            cell.certificate = Some(c);
        }
        return Ok(cell);
    }
    if let Some((status, cite)) = literature_fact(g, m) {
        cell.status = status;
        cell.provenance = Provenance::Literature;
        cell.citation = Some(cite.into());
    }
    Ok(cell)
}

/// Row-major by `m`, then `g`.
pub fn build_table(g_max: u32, m_max: u32) -> Result<Vec<TableCell>> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        for g in 1..=g_max {
            out.push(table_cell(g, m)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(r: u32, t: u32) -> RootField {
        RootField::new(RootChoice::new(r, t).unwrap())
    }

    fn roots(r: u32) -> Vec<RootField> {
        RootChoice::all(r).unwrap().into_iter().map(RootField::new).collect()
    }

    #[test]
    fn scalar_set_examples() {
        for f in roots(4) {
            let s = delta_scalar_set(2, 1, 1, &f).unwrap();
            assert_eq!(s.distinct(), 1);
        }
        for f in roots(6) {
            for m in 1..=12 {
                let s = delta_scalar_set(3, 1, m, &f).unwrap();
                assert_eq!(s.is_trivial(), f.q(6 * i64::from(m)).is_one());
            }
        }
        for f in roots(9) {
            for m in 1..=12 {
                let s = delta_scalar_set(4, 2, m, &f).unwrap();
                assert_eq!(s.is_trivial(), f.q(2 * i64::from(m)).is_one(), "m={m}");
            }
        }
        assert!(delta_scalar_set(1, 1, 1, &rf(5, 1)).is_err());
        assert!(delta_scalar_set(3, 3, 1, &rf(5, 1)).is_err());
    }

    #[test]
    fn attained_labels_sit_inside_the_claimed_set() {
        for r in 4..=14 {
            for g in 2..=9 {
                let claimed = claimed_values(g, r);
                let mut union: Vec<u32> = Vec::new();
                for h in 1..g {
                    let got = attained_values(g + 1, r, 2 * h).unwrap();
                    let cap = (2 * h.min(g - h) + 1).min(if r % 2 == 1 { r - 2 } else { r - 3 });
                    assert_eq!(got, (1..=cap).step_by(2).collect::<Vec<_>>(), "r={r} g={g} h={h}");
                    assert!(got.iter().all(|a| claimed.contains(a)));
                    union.extend(got);
                }
                union.sort_unstable();
                union.dedup();
                assert!(union.len() <= claimed.len());
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let rep = verify_twist_conditions(5..=5, 2..=2, 1..=12).unwrap();
        assert!(rep.per_h_mismatches.is_empty());
        let rep = verify_twist_conditions(7..=7, 3..=3, 1..=12).unwrap();
        assert!(rep.conjunction_agrees());
        let rep = verify_twist_conditions(4..=4, 2..=8, 1..=12).unwrap();
        assert!(rep.per_h_mismatches.is_empty());
    }

    #[test]
    fn closed_form_is_sufficient_and_exact_jointly() {
        let rep = verify_twist_conditions(4..=12, 2..=8, 1..=12).unwrap();
        assert!(rep.rows > 0);
        assert!(rep.conjunction_agrees(), "{:?}", rep.conjunction_mismatches.first());
        // δ_1 alone only needs q^{6m} = 1 once g >= 4
        assert!(rep.per_h_mismatches.iter().all(|row| row.case == TwistCase::LargeGenus && !row.closed_form && row.direct));
        assert!(rep.per_h_mismatches.iter().any(|row| row.root.r() == 9 && row.g == 4 && row.h == 1 && row.m == 3));
    }

    #[test]
    fn nkl_examples() {
        let c = certify_nkl(2, 5, 5, 12).unwrap();
        assert!(c.iter().any(|c| c.order.root == RootChoice::new(10, 3).unwrap()));
        let first = certify_nkl_first(4, 10, 5, 20).unwrap().unwrap();
        verify_nkl(&first).unwrap();
        let first = certify_nkl_first(2, 15, 5, 30).unwrap().unwrap();
        assert_eq!(first.order.root.r(), 10);
        verify_nkl(&first).unwrap();
        let at30 = roots(30).iter().find_map(|f| certify_nkl_root(2, 15, 5, f).unwrap()).unwrap();
        verify_nkl(&at30).unwrap();
    }

    #[test]
    fn tampered_nkl_is_rejected() {
        let mut c = certify_nkl_first(3, 7, 7, 14).unwrap().unwrap();
        verify_nkl(&c).unwrap();
        c.twists.pop();
        assert!(verify_nkl(&c).is_err());
        let mut c = certify_nkl_first(3, 7, 7, 14).unwrap().unwrap();
        c.k = 6;
        assert!(verify_nkl(&c).is_err());
    }

    #[test]
    fn small_table() {
        let t = build_table(4, 7).unwrap();
        let at = |g: u32, m: u32| t.iter().find(|c| c.g == g && c.m == m).unwrap();
        assert_eq!(at(3, 6).status, CellStatus::Unknown);
        assert_eq!((at(2, 3).status, at(2, 3).provenance), (CellStatus::Finite, Provenance::Literature));
        assert_eq!((at(4, 7).status, at(4, 7).provenance), (CellStatus::Infinite, Provenance::Computed));
        assert_eq!((at(2, 6).status, at(2, 6).provenance), (CellStatus::Infinite, Provenance::Literature));
        assert_eq!(at(1, 6).status, CellStatus::Infinite);
        assert_eq!(at(3, 4).status, CellStatus::Unknown);
        for c in &t {
            if let Some(cert) = &c.certificate {
                verify_nkl(cert).unwrap();
            }
        }
    }
}
