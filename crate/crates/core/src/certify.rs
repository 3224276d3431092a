//! Projective order of represented elements.
//!
//! An element `g` of finite order `N` has `ρ(g)^N = c·I`. If `ρ(g)` fixes a
//! block pointwise then `c = 1`, so every other block `B` satisfies `B^N = I`
//! and `|tr B| <= dim B`. A block with real trace above its dimension is
//! therefore a certificate of infinite order.

use alloc::{format, string::String, vec::Vec};
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coloring::CellTag;
use crate::cyclo::{CycloElem, RootChoice, RootField, Sign};
use crate::error::{Error, Result};
use crate::rep::dense::{self, Dense};
use crate::rep::{trace_f, Group, RepElement, ScalarBlockMatrix};

/// Largest power tried by [`finite_order_check`].
pub const MAX_FINITE_ORDER: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    InfiniteOrder,
    /// Smallest `N >= 1` with `M^N` scalar.
    FiniteOrder {
        order: u32,
    },
    Inconclusive,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::InfiniteOrder => f.write_str("infinite"),
            OrderKind::FiniteOrder { order } => write!(f, "finite({order})"),
            OrderKind::Inconclusive => f.write_str("inconclusive"),
        }
    }
}

/// A component `B = grid ⊗ I_size` with `det = 1` and real trace above its
/// dimension. All scalars refer to the small grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// `a` of `M(a)` when the first group is a tagged cell.
    pub level: Option<u32>,
    pub groups: Vec<Group>,
    pub grid: Dense,
    pub det: CycloElem,
    pub trace: CycloElem,
    /// `trace - grid dimension`, positive.
    pub excess: CycloElem,
    pub sign: Sign,
}

impl Witness {
    pub fn size(&self) -> u128 {
        self.groups[0].size
    }

    pub fn block_dim(&self) -> u128 {
        self.size() * self.grid.len() as u128
    }

    /// Trace of the full block, `size · trace`.
    pub fn block_trace(&self) -> CycloElem {
        self.trace.scale(&BigRational::from_integer(BigInt::from(self.size())))
    }

    /// Advisory value of the per-unit excess.
    pub fn excess_f64(&self) -> f64 {
        self.excess.to_complex_f64().0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCertificate {
    pub element: RepElement,
    pub n: u32,
    pub root: RootChoice,
    pub kind: OrderKind,
    pub witness: Option<Witness>,
    /// A `1 × 1` component equal to `1`.
    pub identity_block: Option<Group>,
    /// `c` with `M^N = c·I`, for finite orders.
    pub scalar: Option<CycloElem>,
    pub rationale: String,
}

impl OrderCertificate {
    fn new(element: RepElement, n: u32, root: RootChoice) -> Self {
        OrderCertificate {
            element,
            n,
            root,
            kind: OrderKind::Inconclusive,
            witness: None,
            identity_block: None,
            scalar: None,
            rationale: String::new(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.kind == OrderKind::InfiniteOrder
    }

    fn inconclusive(mut self, why: &str) -> Self {
        self.kind = OrderKind::Inconclusive;
        self.rationale = why.into();
        self
    }
}

fn identity_component(m: &ScalarBlockMatrix) -> Option<Group> {
    m.components().into_iter().find(|c| c.len() == 1 && m.entry(c[0], c[0]).is_one()).map(|c| m.groups()[c[0]].clone())
}

fn witness_of(field: &RootField, groups: Vec<Group>, grid: Dense) -> Result<Option<Witness>> {
    let det = dense::det(field, &grid)?;
    if !det.is_one() {
        return Ok(None);
    }
    let trace = dense::trace(field, &grid);
    if !trace.is_real() {
        return Ok(None);
    }
    let excess = &trace - &field.int(grid.len() as i64);
    let sign = excess.sign_real()?;
    if sign != Sign::Positive {
        return Ok(None);
    }
    let level = CellTag::parse(&groups[0].name).and_then(|t| t.level());
    Ok(Some(Witness { level, groups, grid, det, trace, excess, sign }))
}

/// Searches `m`, the image of `element` on `2n` punctures, for an identity
/// block and a trace-excess block. The first component passing the test is
/// the witness; failure yields `Inconclusive`, never a finite order.
pub fn infinite_order_certificate(m: &ScalarBlockMatrix, element: RepElement, n: u32) -> Result<OrderCertificate> {
    let field = m.field();
    let mut cert = OrderCertificate::new(element, n, field.root());
    cert.identity_block = identity_component(m);
    let Some(id) = cert.identity_block.clone() else {
        return Ok(cert.inconclusive("no identity block"));
    };
    for comp in m.components() {
        let groups: Vec<Group> = comp.iter().map(|&i| m.groups()[i].clone()).collect();
        if let Some(w) = witness_of(field, groups, m.sub_grid(&comp))? {
            cert.rationale = format!(
                "identity block {}[{}] forces any scalar power to be I; block {} has det 1 and real trace exceeding its dimension by {:.9} per unit, so some eigenvalue is not a root of unity",
                id.name,
                id.size,
                group_list(&w.groups),
                w.excess_f64()
            );
            cert.kind = OrderKind::InfiniteOrder;
            cert.witness = Some(w);
            return Ok(cert);
        }
    }
    Ok(cert.inconclusive("no block with det 1 has real trace exceeding its dimension"))
}

fn group_list(groups: &[Group]) -> String {
    let names: Vec<&str> = groups.iter().map(|g| g.name.as_str()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Checks an infinite-order certificate from its embedded scalars alone.
pub fn verify_certificate(cert: &OrderCertificate) -> Result<()> {
    let reject = |why: String| Err(Error::CertificateRejected(why));
    if cert.kind != OrderKind::InfiniteOrder {
        return reject(format!("kind {} carries no self-contained witness", cert.kind));
    }
    let root = RootChoice::new(cert.root.r(), cert.root.t())?;
    let field = RootField::new(root);
    match &cert.identity_block {
        Some(g) if g.size > 0 => {}
        _ => return reject("missing identity block".into()),
    }
    let Some(w) = &cert.witness else {
        return reject("missing witness".into());
    };
    let k = w.groups.len();
    if k == 0 || w.groups.iter().any(|g| g.size == 0 || g.size != w.groups[0].size) {
        return reject("witness groups must be nonempty with one common size".into());
    }
    if w.grid.len() != k || w.grid.iter().any(|row| row.len() != k) {
        return reject("witness grid does not match its groups".into());
    }
    let modulus = root.modulus();
    let scalars = w.grid.iter().flatten().chain([&w.det, &w.trace, &w.excess]);
    if scalars.into_iter().any(|x| x.modulus() != modulus) {
        return reject(format!("scalars must lie in Q(ζ_{modulus})"));
    }
    let det = dense::det(&field, &w.grid)?;
    if det != w.det || !det.is_one() {
        return reject("determinant is not 1".into());
    }
    let trace = dense::trace(&field, &w.grid);
    if trace != w.trace {
        return reject("recorded trace differs from the grid".into());
    }
    if trace.conj_q() != trace {
        return reject("trace is not real".into());
    }
    let excess = &trace - &field.int(k as i64);
    if excess != w.excess {
        return reject("recorded excess differs from trace - dim".into());
    }
    if excess.sign_real()? != Sign::Positive || w.sign != Sign::Positive {
        return reject("trace does not exceed the dimension".into());
    }
    Ok(())
}

/// Smallest `N <= max_n` with `m^N` scalar.
pub fn finite_order_check(m: &ScalarBlockMatrix, element: RepElement, n: u32, max_n: u32) -> Result<OrderCertificate> {
    if max_n == 0 || max_n > MAX_FINITE_ORDER {
        return Err(Error::invalid(format!("max power must lie in 1..={MAX_FINITE_ORDER}")));
    }
    let mut cert = OrderCertificate::new(element, n, m.field().root());
    let mut p = m.clone();
    for k in 1..=max_n {
        if let Some(c) = p.scalar_value() {
            cert.kind = OrderKind::FiniteOrder { order: k };
            cert.rationale = format!("power {k} is the scalar {c}; no smaller power is scalar");
            cert.scalar = Some(c);
            return Ok(cert);
        }
        p = p.mul(m)?;
    }
    Ok(cert.inconclusive("no scalar power up to the search bound"))
}

/// `q^m = (-1)^m`, under which `σ_i^m` acts as a scalar.
pub fn halftwist_trivial(field: &RootField, m: u32) -> bool {
    field.q(i64::from(m)) == field.sign_pow(i64::from(m))
}

/// Builds `element` on `2n` punctures and searches for an infinite-order
/// certificate.
pub fn certify_root(element: RepElement, n: u32, field: &RootField) -> Result<OrderCertificate> {
    infinite_order_certificate(&element.represent(n, field)?, element, n)
}

/// Elements tried, in order, for the power subgroup.
pub const POWER_SUBGROUP_ELEMENTS: [RepElement; 2] = [RepElement::CommutatorM, RepElement::Commutator2 { s: 2 }];

/// Infinite-order certificates at one root where `σ_i^m` is projectively
/// trivial; empty when it is not.
pub fn certify_power_root(n: u32, m: u32, field: &RootField) -> Result<Vec<OrderCertificate>> {
    if !halftwist_trivial(field, m) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for el in POWER_SUBGROUP_ELEMENTS {
        let cert = certify_root(el, n, field)?;
        if cert.is_infinite() {
            out.push(cert);
        }
    }
    Ok(out)
}

fn check_punctures(two_n: u32) -> Result<u32> {
    if two_n < 6 || !two_n.is_multiple_of(2) {
        return Err(Error::invalid(format!("punctures must be even and at least 6, got {two_n}")));
    }
    Ok(two_n / 2)
}

/// Roots `4 <= r <= r_max` scanned in order of `r`, then `t`.
pub fn scan_roots(r_max: u32) -> Result<Vec<RootChoice>> {
    let mut out = Vec::new();
    for r in 4..=r_max {
        out.extend(RootChoice::all(r)?);
    }
    Ok(out)
}

/// All certificates for `N_m` on `two_n` punctures with `r <= r_max`.
pub fn certify_power_subgroup(two_n: u32, m: u32, r_max: u32) -> Result<Vec<OrderCertificate>> {
    let n = check_punctures(two_n)?;
    if m == 0 {
        return Err(Error::invalid("power must be positive"));
    }
    let mut out = Vec::new();
    for root in scan_roots(r_max)? {
        out.extend(certify_power_root(n, m, &RootField::new(root))?);
    }
    Ok(out)
}

/// Sign of `f_2(q) - 2` at each root of order `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Row {
    pub r: u32,
    pub signs: Vec<(u32, Sign)>,
}

impl F2Row {
    /// Values of `t` where `σ_1^2 σ_2^{-2}` has a trace-excess block.
    pub fn positive(&self) -> Vec<u32> {
        self.signs.iter().filter(|(_, s)| *s == Sign::Positive).map(|(t, _)| *t).collect()
    }
}

pub fn f2_sign(field: &RootField) -> Result<Sign> {
    (&trace_f(2, field)? - &field.int(2)).sign_real()
}

pub fn scan_f2_excess(r: u32) -> Result<F2Row> {
    let signs = RootChoice::all(r)?.into_iter().map(|root| Ok((root.t(), f2_sign(&RootField::new(root))?))).collect::<Result<Vec<_>>>()?;
    Ok(F2Row { r, signs })
}
