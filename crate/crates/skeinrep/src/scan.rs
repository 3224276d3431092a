//! Parallel versions of the root and table scans.
//!
//! Work items are independent; results are collected in scan order, so the
//! output does not depend on the number of threads.

use rayon::prelude::*;

use skeinrep_core::certify::{certify_power_root, scan_roots, F2Row, OrderCertificate};
use skeinrep_core::hyperelliptic::{certify_nkl_root, table_cell, verify_twist_conditions_at, NklCertificate, TableCell, TwistReport};
use skeinrep_core::{RootChoice, Sign};

use crate::cache::field_for;
use crate::error::{Error, Result};

/// Runs `f` on a pool of `jobs` threads (all cores when `None`).
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Error::Validation("--jobs must be positive".into()));
        }
        b = b.num_threads(j);
    }
    Ok(b.build()?.install(f))
}

fn flatten<T>(v: Vec<Vec<T>>) -> Vec<T> {
    v.into_iter().flatten().collect()
}

pub fn power_subgroup(two_n: u32, m: u32, r_max: u32) -> Result<Vec<OrderCertificate>> {
    if two_n < 6 || !two_n.is_multiple_of(2) {
        return Err(Error::Validation(format!("punctures must be even and at least 6, got {two_n}")));
    }
    if m == 0 {
        return Err(Error::Validation("power must be positive".into()));
    }
    let roots = scan_roots(r_max)?;
    let found = roots.par_iter().map(|root| Ok(certify_power_root(two_n / 2, m, &field_for(*root))?)).collect::<Result<Vec<_>>>()?;
    Ok(flatten(found))
}

pub fn f2_rows(r_lo: u32, r_hi: u32) -> Result<Vec<F2Row>> {
    if r_lo < 3 {
        return Err(Error::Validation("r starts at 3".into()));
    }
    (r_lo..=r_hi)
        .into_par_iter()
        .map(|r| {
            let signs = RootChoice::all(r)?
                .into_iter()
                .map(|root| Ok((root.t(), skeinrep_core::certify::f2_sign(&field_for(root))?)))
                .collect::<Result<Vec<(u32, Sign)>>>()?;
            Ok(F2Row { r, signs })
        })
        .collect()
}

pub fn twist_report(r_lo: u32, r_hi: u32, g_max: u32, m_max: u32) -> Result<TwistReport> {
    if r_lo < 4 {
        return Err(Error::Validation("r starts at 4".into()));
    }
    if g_max < 2 {
        return Err(Error::Validation("genus range must reach 2".into()));
    }
    let mut roots = Vec::new();
    for r in r_lo..=r_hi {
        roots.extend(RootChoice::all(r)?);
    }
    let parts = roots
        .par_iter()
        .map(|root| Ok(verify_twist_conditions_at(&field_for(*root), 2..=g_max, 1..=m_max)?))
        .collect::<Result<Vec<_>>>()?;
    let mut report = TwistReport::default();
    for p in parts {
        report.merge(p);
    }
    Ok(report)
}

pub fn nkl(g: u32, k: u32, l: u32, r_max: u32, first_only: bool) -> Result<Vec<NklCertificate>> {
    if g < 2 {
        return Err(Error::Validation(format!("genus must be at least 2, got {g}")));
    }
    let roots = scan_roots(r_max)?;
    let found = roots.par_iter().map(|root| Ok(certify_nkl_root(g, k, l, &field_for(*root))?)).collect::<Result<Vec<_>>>()?;
    let mut out: Vec<NklCertificate> = found.into_iter().flatten().collect();
    if first_only {
        out.truncate(1);
    }
    Ok(out)
}

/// Row-major by `m`, then `g`, as [`skeinrep_core::hyperelliptic::build_table`].
pub fn table(g_max: u32, m_max: u32) -> Result<Vec<TableCell>> {
    if g_max == 0 || m_max == 0 {
        return Err(Error::Validation("table needs g_max >= 1 and m_max >= 1".into()));
    }
    let cells: Vec<(u32, u32)> = (1..=m_max).flat_map(|m| (1..=g_max).map(move |g| (g, m))).collect();
    cells.par_iter().map(|&(g, m)| Ok(table_cell(g, m)?)).collect()
}
