//! Desk-scale invariant suite behind `skeinrep selfcheck`: `n <= 6`,
//! `r <= 12` unless a check states otherwise.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use skeinrep_core::certify::{certify_root, finite_order_check, halftwist_trivial, verify_certificate, OrderKind};
use skeinrep_core::coloring::{count_profile, enumerate_basis, BasisId, Scheme};
use skeinrep_core::recoupling::{check_fusion_admissibility, matrix_a, matrix_x};
use skeinrep_core::rep::dense;
use skeinrep_core::rep::{assemble_m, m_block_closed, m_levels, m_trace_excess_unit, rho_commutator2, trace_f, RepElement};
use skeinrep_core::{RootChoice, RootField};

use crate::cache::field_for;
use crate::json::{decode_certificate, encode_certificate};

pub const N_MAX: u32 = 6;
pub const R_MAX: u32 = 12;

pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Check = fn() -> Result<String, String>;

pub const CHECKS: &[(&str, Check)] = &[
    ("counts-match-enumeration", counts_match_enumeration),
    ("fusion-admissibility", fusion_admissibility),
    ("recoupling-involutions", recoupling_involutions),
    ("commutator2-closed-form", commutator2_closed_form),
    ("commutator-m-closed-form", commutator_m_closed_form),
    ("halftwist-scalar", halftwist_scalar),
    ("finite-orders", finite_orders),
    ("f2-exclusions", f2_exclusions),
    ("separating-twists", separating_twists),
    ("headline-certificate", headline_certificate),
];

pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let res = f();
            let elapsed = start.elapsed();
            match res {
                Ok(detail) => CheckOutcome { name, passed: true, detail, elapsed },
                Err(detail) => CheckOutcome { name, passed: false, detail, elapsed },
            }
        })
        .collect()
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn all_roots(r_lo: u32, r_hi: u32) -> Vec<RootChoice> {
    (r_lo..=r_hi).flat_map(|r| RootChoice::all(r).unwrap_or_default()).collect()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn counts_match_enumeration() -> Result<String, String> {
    let pairs: Vec<(u32, u32)> = (3..=N_MAX).flat_map(|n| (4..=R_MAX).map(move |r| (n, r))).collect();
    pairs.par_iter().try_for_each(|&(n, r)| -> Result<(), String> {
        let p = count_profile(n, r).map_err(e)?;
        let t = enumerate_basis(BasisId::T, Scheme::Middle, n, r).map_err(e)?;
        let y = enumerate_basis(BasisId::Y, Scheme::Middle, n, r).map_err(e)?;
        let ty = enumerate_basis(BasisId::T, Scheme::Types, n, r).map_err(e)?;
        ensure(t.cells() == p.t_cells(), || format!("B_T cells differ at n={n} r={r}"))?;
        ensure(y.cells() == p.y_cells(), || format!("B_Y cells differ at n={n} r={r}"))?;
        ensure(ty.cells() == p.type_cells(), || format!("type cells differ at n={n} r={r}"))?;
        ensure(p.k == p.k_type2, || format!("|I| != |II| at n={n} r={r}"))?;
        ensure(r != 4 || p.k_prime == 0, || format!("k' != 0 at r=4, n={n}"))
    })?;
    Ok(format!("{} (n, r) pairs", pairs.len()))
}

fn fusion_admissibility() -> Result<String, String> {
    let (checked, violations) = check_fusion_admissibility(N_MAX, R_MAX).map_err(e)?;
    ensure(violations.is_empty(), || format!("{} violations, first {:?}", violations.len(), violations[0]))?;
    Ok(format!("{checked} fusion terms"))
}

fn recoupling_involutions() -> Result<String, String> {
    let roots = all_roots(4, 20);
    roots.par_iter().try_for_each(|root| -> Result<(), String> {
        let f = field_for(*root);
        let a = matrix_a(3, &f).map_err(e)?;
        ensure(a.mul(&a).map_err(e)?.is_identity(), || format!("A^2 != I at {root}"))?;
        if root.r() < 5 || root.r() > R_MAX {
            return Ok(());
        }
        for n in 3..=N_MAX {
            let p = count_profile(n, root.r()).map_err(e)?;
            for level in 0..root.r() {
                if p.l2(level) == 0 {
                    continue;
                }
                let (x, xi) = matrix_x(level, n, &f).map_err(e)?;
                ensure(x.mul(&xi).map_err(e)?.is_identity(), || format!("X({level}) X({level})^-1 != I at n={n} {root}"))?;
            }
        }
        Ok(())
    })?;
    Ok(format!("{} roots", roots.len()))
}

fn commutator2_closed_form() -> Result<String, String> {
    let roots = all_roots(4, R_MAX);
    roots.par_iter().try_for_each(|root| -> Result<(), String> {
        let f = field_for(*root);
        for n in 3..=5 {
            let p = count_profile(n, root.r()).map_err(e)?;
            for s in 0..=4 {
                let m = rho_commutator2(s, n, &f).map_err(e)?;
                ensure(m.det().map_err(e)?.is_one(), || format!("det != 1 at s={s} n={n} {root}"))?;
                let fs = trace_f(s, &f).map_err(e)?;
                let want = &fs.scale(&big(p.k)) + &f.one().scale(&big(p.k_prime));
                ensure(m.trace() == want, || format!("trace != f_s k + k' at s={s} n={n} {root}"))?;
            }
        }
        Ok(())
    })?;
    Ok(format!("{} roots, s <= 4, n <= 5", roots.len()))
}

fn big(v: u128) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(num_bigint::BigInt::from(v))
}

fn commutator_m_closed_form() -> Result<String, String> {
    let roots = all_roots(4, R_MAX);
    roots.par_iter().try_for_each(|root| -> Result<(), String> {
        let f = field_for(*root);
        for n in 3..=N_MAX {
            // assembly compares the closed form with F S F^-1 S^-1
            assemble_m(n, &f).map_err(e)?;
            for a in m_levels(n, root.r()).map_err(e)? {
                let b = m_block_closed(a, n, &f).map_err(e)?;
                ensure(b.det().map_err(e)?.is_one(), || format!("det M({a}) != 1 at n={n} {root}"))?;
                let tr = dense::trace(&f, &b.grid());
                ensure(tr.is_real(), || format!("tr M({a}) not real at n={n} {root}"))?;
                ensure(&tr - &f.int(2) == m_trace_excess_unit(a, &f), || format!("trace line fails for M({a}) at n={n} {root}"))?;
            }
        }
        Ok(())
    })?;
    Ok(format!("{} roots, 3 <= n <= {N_MAX}", roots.len()))
}

fn halftwist_scalar() -> Result<String, String> {
    let roots = all_roots(4, 24);
    roots.par_iter().try_for_each(|root| -> Result<(), String> {
        let f = field_for(*root);
        for m in 1..=12u32 {
            let sigma = RepElement::HalfTwistPow { s: i64::from(m) }.represent(3, &f).map_err(e)?;
            let scalar = sigma.scalar_value().is_some();
            ensure(!halftwist_trivial(&f, m) || scalar, || format!("q^m = (-1)^m but σ^m not scalar: m={m} {root}"))?;
        }
        Ok(())
    })?;
    Ok(format!("{} roots, m <= 12", roots.len()))
}

fn finite_orders() -> Result<String, String> {
    for root in all_roots(6, 6) {
        let f = field_for(root);
        for (a, want) in [(0, 2), (1, 3), (2, 2)] {
            let n = if a == 1 { 3 } else { 4 };
            let b = m_block_closed(a, n, &f).map_err(e)?;
            let c = finite_order_check(&b, RepElement::CommutatorM, n, 12).map_err(e)?;
            ensure(c.kind == OrderKind::FiniteOrder { order: want }, || format!("M({a}) at {root}: {}", c.kind))?;
        }
    }
    for root in all_roots(4, 4) {
        let f = field_for(root);
        let b = m_block_closed(0, 4, &f).map_err(e)?;
        let c = finite_order_check(&b, RepElement::CommutatorM, 4, 12).map_err(e)?;
        ensure(c.kind == OrderKind::FiniteOrder { order: 2 }, || format!("M(0) at {root}: {}", c.kind))?;
    }
    Ok("r=6: M(1) order 3, M(0), M(2) order 2; r=4: M(0) order 2".into())
}

fn f2_exclusions() -> Result<String, String> {
    let rows = crate::scan::f2_rows(5, 24).map_err(e)?;
    for row in &rows {
        let excluded = row.r == 6 || row.r == 10;
        ensure(row.positive().is_empty() == excluded, || format!("r={} breaks the exclusion pattern", row.r))?;
    }
    Ok(format!("5 <= r <= 24, {} rows", rows.len()))
}

fn separating_twists() -> Result<String, String> {
    let rep = crate::scan::twist_report(4, R_MAX, 8, 12).map_err(e)?;
    ensure(rep.conjunction_agrees(), || format!("{} joint mismatches", rep.conjunction_mismatches.len()))?;
    Ok(format!("{} rows, {} per-h differences (closed form only sufficient there)", rep.rows, rep.per_h_mismatches.len()))
}

fn headline_certificate() -> Result<String, String> {
    let f: RootField = field_for(RootChoice::new(10, 3).map_err(e)?);
    ensure(halftwist_trivial(&f, 5), || "q^5 != -1 at r=10, t=3".into())?;
    let cert = certify_root(RepElement::CommutatorM, 3, &f).map_err(e)?;
    ensure(cert.is_infinite(), || format!("kind {}", cert.kind))?;
    let text = serde_json::to_string(&encode_certificate(&cert, 128)).map_err(e)?;
    let back = decode_certificate(&serde_json::from_str(&text).map_err(e)?).map_err(e)?;
    verify_certificate(&back).map_err(e)?;
    let excess = back.witness.as_ref().map(|w| w.excess_f64()).unwrap_or(f64::NAN);
    Ok(format!("excess {excess:.10} per unit, JSON round-trip re-verified"))
}
