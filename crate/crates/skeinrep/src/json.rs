//! Versioned JSON documents.
//!
//! Exact scalars are coefficient vectors over the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` of `Q(ζ_N)`, `ζ = exp(2πi/N)`, each coefficient a
//! rational string. The enclosing document names `N = 4r` and `t`, so
//! `q^{1/4} = ζ^t`. Float renderings are advisory.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use skeinrep_core::certify::{F2Row, OrderCertificate, OrderKind, Witness};
use skeinrep_core::coloring::CountProfile;
use skeinrep_core::hyperelliptic::{CellStatus, NklCertificate, Provenance, TableCell, TwistReport, TwistRow, TwistScalarSet};
use skeinrep_core::rep::{Group, RepElement, ScalarBlockMatrix};
use skeinrep_core::{CycloElem, RootChoice, RootField, Sign};

use crate::cache::field_for;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Bits of working precision behind every float rendering.
pub const DEFAULT_FLOAT_BITS: u32 = 128;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootJson {
    pub r: u32,
    pub t: u32,
    #[serde(rename = "N")]
    pub modulus: u32,
}

impl From<RootChoice> for RootJson {
    fn from(root: RootChoice) -> Self {
        RootJson { r: root.r(), t: root.t(), modulus: root.modulus() }
    }
}

impl RootJson {
    pub fn decode(&self) -> Result<RootChoice> {
        let root = RootChoice::new(self.r, self.t)?;
        if root.modulus() != self.modulus {
            return Err(Error::Format(format!("N = {} does not equal 4r = {}", self.modulus, root.modulus())));
        }
        Ok(root)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub coeffs: Vec<String>,
    /// `[re, im]` at the chosen embedding.
    pub float: [f64; 2],
}

pub fn encode_scalar(x: &CycloElem, bits: u32) -> ScalarJson {
    let (re, im) = x.embed(bits);
    ScalarJson { coeffs: x.coeffs().iter().map(ToString::to_string).collect(), float: [re.midpoint_f64(), im.midpoint_f64()] }
}

pub fn decode_scalar(s: &ScalarJson, field: &RootField) -> Result<CycloElem> {
    let degree = field.field().degree();
    if s.coeffs.len() != degree {
        return Err(Error::Format(format!("expected {degree} coefficients, got {}", s.coeffs.len())));
    }
    let coeffs = s
        .coeffs
        .iter()
        .map(|c| BigRational::from_str(c).map_err(|_| Error::Format(format!("bad rational `{c}`"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(CycloElem::from_power_coeffs(field.field(), &coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub size: u128,
}

impl From<&Group> for GroupJson {
    fn from(g: &Group) -> Self {
        GroupJson { name: g.name.clone(), size: g.size }
    }
}

impl GroupJson {
    fn decode(&self) -> Group {
        Group::new(self.name.clone(), self.size)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub value: ScalarJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub schema_version: u32,
    pub element: String,
    pub n: u32,
    pub root: RootJson,
    pub float_precision_bits: u32,
    pub dim: u128,
    pub groups: Vec<GroupJson>,
    /// Nonzero blocks; each is `value · I` between equal-size groups.
    pub entries: Vec<EntryJson>,
}

pub fn encode_matrix(m: &ScalarBlockMatrix, element: RepElement, n: u32, bits: u32) -> MatrixJson {
    MatrixJson {
        schema_version: SCHEMA_VERSION,
        element: element.to_string(),
        n,
        root: m.field().root().into(),
        float_precision_bits: bits,
        dim: m.dim(),
        groups: m.groups().iter().map(GroupJson::from).collect(),
        entries: m.entries().map(|(&(row, col), v)| EntryJson { row, col, value: encode_scalar(v, bits) }).collect(),
    }
}

pub fn decode_matrix(doc: &MatrixJson) -> Result<ScalarBlockMatrix> {
    check_version(doc.schema_version)?;
    let field = field_for(doc.root.decode()?);
    let groups = doc.groups.iter().map(GroupJson::decode).collect();
    let mut m = ScalarBlockMatrix::zero(&field, groups)?;
    for e in &doc.entries {
        if e.row >= doc.groups.len() || e.col >= doc.groups.len() {
            return Err(Error::Format(format!("entry ({}, {}) outside the grid", e.row, e.col)));
        }
        m.set(e.row, e.col, decode_scalar(&e.value, &field)?)?;
    }
    Ok(m)
}

fn check_version(v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        return Err(Error::Format(format!("schema_version {v} is not supported (expected {SCHEMA_VERSION})")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub level: Option<u32>,
    pub groups: Vec<GroupJson>,
    pub grid: Vec<Vec<ScalarJson>>,
    pub det: ScalarJson,
    pub trace: ScalarJson,
    pub excess: ScalarJson,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub schema_version: u32,
    pub element: String,
    pub n: u32,
    pub r: u32,
    pub t: u32,
    #[serde(rename = "N")]
    pub modulus: u32,
    /// `infinite`, `finite` or `inconclusive`.
    pub kind: String,
    pub order: Option<u32>,
    pub witness_a: Option<u32>,
    /// Trace of the witness grid.
    pub trace: Option<ScalarJson>,
    /// Dimension of the full witness block.
    pub dim: Option<u128>,
    pub det: Option<ScalarJson>,
    /// Per-unit trace excess of the witness.
    pub float_rendering: Option<f64>,
    pub float_precision_bits: u32,
    pub identity_block: Option<GroupJson>,
    pub scalar: Option<ScalarJson>,
    pub witness: Option<WitnessJson>,
    pub rationale: String,
}

fn sign_from_i8(s: i8) -> Result<Sign> {
    Ok(match s {
        -1 => Sign::Negative,
        0 => Sign::Zero,
        1 => Sign::Positive,
        _ => return Err(Error::Format(format!("sign must be -1, 0 or 1, got {s}"))),
    })
}

pub fn encode_certificate(c: &OrderCertificate, bits: u32) -> CertificateJson {
    let (kind, order) = match c.kind {
        OrderKind::InfiniteOrder => ("infinite", None),
        OrderKind::FiniteOrder { order } => ("finite", Some(order)),
        OrderKind::Inconclusive => ("inconclusive", None),
    };
    let w = c.witness.as_ref();
    CertificateJson {
        schema_version: SCHEMA_VERSION,
        element: c.element.to_string(),
        n: c.n,
        r: c.root.r(),
        t: c.root.t(),
        modulus: c.root.modulus(),
        kind: kind.into(),
        order,
        witness_a: w.and_then(|w| w.level),
        trace: w.map(|w| encode_scalar(&w.trace, bits)),
        dim: w.map(Witness::block_dim),
        det: w.map(|w| encode_scalar(&w.det, bits)),
        float_rendering: w.map(|w| encode_scalar(&w.excess, bits).float[0]),
        float_precision_bits: bits,
        identity_block: c.identity_block.as_ref().map(GroupJson::from),
        scalar: c.scalar.as_ref().map(|s| encode_scalar(s, bits)),
        witness: w.map(|w| WitnessJson {
            level: w.level,
            groups: w.groups.iter().map(GroupJson::from).collect(),
            grid: w.grid.iter().map(|row| row.iter().map(|x| encode_scalar(x, bits)).collect()).collect(),
            det: encode_scalar(&w.det, bits),
            trace: encode_scalar(&w.trace, bits),
            excess: encode_scalar(&w.excess, bits),
            sign: w.sign.as_i8(),
        }),
        rationale: c.rationale.clone(),
    }
}

/// Rebuilds a certificate; the summary fields must agree with the witness.
pub fn decode_certificate(doc: &CertificateJson) -> Result<OrderCertificate> {
    check_version(doc.schema_version)?;
    let root = RootJson { r: doc.r, t: doc.t, modulus: doc.modulus }.decode()?;
    let field = field_for(root);
    let element = RepElement::from_str(&doc.element)?;
    let kind = match (doc.kind.as_str(), doc.order) {
        ("infinite", None) => OrderKind::InfiniteOrder,
        ("finite", Some(order)) => OrderKind::FiniteOrder { order },
        ("inconclusive", None) => OrderKind::Inconclusive,
        (k, o) => return Err(Error::Format(format!("bad kind/order pair ({k}, {o:?})"))),
    };
    let witness = match &doc.witness {
        None => None,
        Some(w) => {
            let grid = w
                .grid
                .iter()
                .map(|row| row.iter().map(|x| decode_scalar(x, &field)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Some(Witness {
                level: w.level,
                groups: w.groups.iter().map(GroupJson::decode).collect(),
                grid,
                det: decode_scalar(&w.det, &field)?,
                trace: decode_scalar(&w.trace, &field)?,
                excess: decode_scalar(&w.excess, &field)?,
                sign: sign_from_i8(w.sign)?,
            })
        }
    };
    if let Some(w) = &witness {
        let same = |s: &Option<ScalarJson>, x: &CycloElem| -> Result<bool> {
            Ok(match s {
                Some(s) => decode_scalar(s, &field)? == *x,
                None => false,
            })
        };
        if !same(&doc.trace, &w.trace)? || !same(&doc.det, &w.det)? || doc.dim != Some(w.block_dim()) || doc.witness_a != w.level {
            return Err(Error::Format("summary fields disagree with the witness".into()));
        }
    }
    Ok(OrderCertificate {
        element,
        n: doc.n,
        root,
        kind,
        witness,
        identity_block: doc.identity_block.as_ref().map(GroupJson::decode),
        scalar: doc.scalar.as_ref().map(|s| decode_scalar(s, &field)).transpose()?,
        rationale: doc.rationale.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateList {
    pub schema_version: u32,
    pub punctures: u32,
    pub power: u32,
    pub r_max: u32,
    pub certificates: Vec<CertificateJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelScalarJson {
    pub a: u32,
    pub value: ScalarJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistSetJson {
    pub schema_version: u32,
    pub g: u32,
    pub h: u32,
    pub m: u32,
    pub root: RootJson,
    pub trivial: bool,
    pub scalars: Vec<LabelScalarJson>,
}

pub fn encode_twist_set(s: &TwistScalarSet, bits: u32) -> TwistSetJson {
    TwistSetJson {
        schema_version: SCHEMA_VERSION,
        g: s.g,
        h: s.h,
        m: s.m,
        root: s.root.into(),
        trivial: s.is_trivial(),
        scalars: s.scalars.iter().map(|(a, v)| LabelScalarJson { a: *a, value: encode_scalar(v, bits) }).collect(),
    }
}

pub fn decode_twist_set(doc: &TwistSetJson) -> Result<TwistScalarSet> {
    check_version(doc.schema_version)?;
    let root = doc.root.decode()?;
    let field = field_for(root);
    let scalars = doc.scalars.iter().map(|e| Ok((e.a, decode_scalar(&e.value, &field)?))).collect::<Result<Vec<_>>>()?;
    Ok(TwistScalarSet { g: doc.g, h: doc.h, m: doc.m, root, scalars })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NklJson {
    pub schema_version: u32,
    pub g: u32,
    pub k: u32,
    pub l: u32,
    pub order: CertificateJson,
    pub twists: Vec<TwistSetJson>,
}

pub fn encode_nkl(c: &NklCertificate, bits: u32) -> NklJson {
    NklJson {
        schema_version: SCHEMA_VERSION,
        g: c.g,
        k: c.k,
        l: c.l,
        order: encode_certificate(&c.order, bits),
        twists: c.twists.iter().map(|t| encode_twist_set(t, bits)).collect(),
    }
}

pub fn decode_nkl(doc: &NklJson) -> Result<NklCertificate> {
    check_version(doc.schema_version)?;
    Ok(NklCertificate {
        g: doc.g,
        k: doc.k,
        l: doc.l,
        order: decode_certificate(&doc.order)?,
        twists: doc.twists.iter().map(decode_twist_set).collect::<Result<_>>()?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellCountJson {
    pub cell: String,
    pub size: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountsJson {
    pub schema_version: u32,
    pub n: u32,
    pub punctures: u32,
    pub r: u32,
    pub k: u128,
    pub k_prime: u128,
    pub dim: u128,
    pub dim_y: u128,
    pub t_cells: Vec<CellCountJson>,
    pub y_cells: Vec<CellCountJson>,
}

pub fn encode_counts(p: &CountProfile) -> CountsJson {
    let cells = |v: Vec<(skeinrep_core::coloring::CellTag, u128)>| {
        v.into_iter().map(|(t, c)| CellCountJson { cell: t.to_string(), size: c }).collect()
    };
    CountsJson {
        schema_version: SCHEMA_VERSION,
        n: p.n,
        punctures: 2 * p.n,
        r: p.r,
        k: p.k,
        k_prime: p.k_prime,
        dim: p.total,
        dim_y: p.total_y,
        t_cells: cells(p.t_cells()),
        y_cells: cells(p.y_cells()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct F2RowJson {
    pub r: u32,
    pub positive_t: Vec<u32>,
    pub zero_t: Vec<u32>,
    pub negative_t: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct F2ScanJson {
    pub schema_version: u32,
    pub rows: Vec<F2RowJson>,
}

pub fn encode_f2(rows: &[F2Row]) -> F2ScanJson {
    let pick = |row: &F2Row, s: Sign| row.signs.iter().filter(|(_, x)| *x == s).map(|(t, _)| *t).collect();
    F2ScanJson {
        schema_version: SCHEMA_VERSION,
        rows: rows
            .iter()
            .map(|row| F2RowJson {
                r: row.r,
                positive_t: pick(row, Sign::Positive),
                zero_t: pick(row, Sign::Zero),
                negative_t: pick(row, Sign::Negative),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRowJson {
    pub r: u32,
    pub t: u32,
    pub g: u32,
    /// 0 for a statement about all `h` at once.
    pub h: u32,
    pub m: u32,
    pub case: String,
    pub closed_form: bool,
    pub direct: bool,
}

impl From<&TwistRow> for TwistRowJson {
    fn from(row: &TwistRow) -> Self {
        TwistRowJson {
            r: row.root.r(),
            t: row.root.t(),
            g: row.g,
            h: row.h,
            m: row.m,
            case: row.case.to_string(),
            closed_form: row.closed_form,
            direct: row.direct,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReportJson {
    pub schema_version: u32,
    pub rows_checked: usize,
    pub conjunction_agrees: bool,
    pub per_h_mismatches: Vec<TwistRowJson>,
    pub conjunction_mismatches: Vec<TwistRowJson>,
    pub sufficiency_failures: Vec<TwistRowJson>,
    pub symmetry_failures: Vec<TwistRowJson>,
}

pub fn encode_twist_report(rep: &TwistReport) -> TwistReportJson {
    let rows = |v: &[TwistRow]| v.iter().map(TwistRowJson::from).collect();
    TwistReportJson {
        schema_version: SCHEMA_VERSION,
        rows_checked: rep.rows,
        conjunction_agrees: rep.conjunction_agrees(),
        per_h_mismatches: rows(&rep.per_h_mismatches),
        conjunction_mismatches: rows(&rep.conjunction_mismatches),
        sufficiency_failures: rows(&rep.sufficiency_failures),
        symmetry_failures: rows(&rep.symmetry_failures),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableCellJson {
    pub g: u32,
    pub m: u32,
    pub status: String,
    pub provenance: String,
    pub citation: Option<String>,
    pub certificate: Option<NklJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub schema_version: u32,
    pub g_max: u32,
    pub m_max: u32,
    pub cells: Vec<TableCellJson>,
}

pub fn status_name(s: CellStatus) -> &'static str {
    match s {
        CellStatus::Finite => "finite",
        CellStatus::Infinite => "infinite",
        CellStatus::Unknown => "unknown",
    }
}

pub fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::Computed => "computed-certificate",
        Provenance::Literature => "literature",
        Provenance::Open => "none",
    }
}

pub fn encode_table(cells: &[TableCell], g_max: u32, m_max: u32, bits: u32) -> TableJson {
    TableJson {
        schema_version: SCHEMA_VERSION,
        g_max,
        m_max,
        cells: cells
            .iter()
            .map(|c| TableCellJson {
                g: c.g,
                m: c.m,
                status: status_name(c.status).into(),
                provenance: provenance_name(c.provenance).into(),
                citation: c.citation.clone(),
                certificate: c.certificate.as_ref().map(|x| encode_nkl(x, bits)),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use skeinrep_core::certify::{certify_root, verify_certificate};
    use skeinrep_core::rep::assemble_m;

    #[test]
    fn scalar_roundtrip() {
        let f = field_for(RootChoice::new(10, 3).unwrap());
        let x = &f.q_quarter(3) + &f.qint(3).inverse().unwrap();
        let s = encode_scalar(&x, 128);
        assert_eq!(decode_scalar(&s, &f).unwrap(), x);
        let mut bad = s.clone();
        bad.coeffs.pop();
        assert!(decode_scalar(&bad, &f).is_err());
    }

    #[test]
    fn matrix_and_certificate_roundtrip() {
        let f = field_for(RootChoice::new(10, 3).unwrap());
        let m = assemble_m(3, &f).unwrap();
        let doc = encode_matrix(&m, RepElement::CommutatorM, 3, 64);
        let text = serde_json::to_string(&doc).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(decode_matrix(&back).unwrap(), m);

        let cert = certify_root(RepElement::CommutatorM, 3, &f).unwrap();
        let text = serde_json::to_string(&encode_certificate(&cert, 128)).unwrap();
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        let decoded = decode_certificate(&back).unwrap();
        assert_eq!(decoded, cert);
        verify_certificate(&decoded).unwrap();

        let mut tampered = back.clone();
        tampered.dim = Some(1);
        assert!(decode_certificate(&tampered).is_err());
        let mut tampered = back;
        tampered.schema_version = 99;
        assert!(decode_certificate(&tampered).is_err());
    }
}
