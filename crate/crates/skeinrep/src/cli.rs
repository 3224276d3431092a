//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid input (including rejected
//! certificates), 1 internal inconsistency.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use skeinrep_core::certify::{finite_order_check, infinite_order_certificate, verify_certificate, OrderCertificate};
use skeinrep_core::coloring::count_profile;
use skeinrep_core::hyperelliptic::{delta_scalar_set, verify_nkl};
use skeinrep_core::rep::{describe_groups, RepElement};
use skeinrep_core::RootChoice;

use crate::cache::field_for;
use crate::error::{Error, Result};
use crate::json::{self, CertificateJson, CertificateList, NklJson, SCHEMA_VERSION};
use crate::{scan, selfcheck, table};

/// Environment variable switching ANSI color on in text output.
pub const COLOR_ENV: &str = "SKEINREP_COLOR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Ascii,
}

#[derive(Debug, Parser)]
#[command(name = "skeinrep", version, about = "Exact skein representations of punctured-sphere mapping classes at roots of unity")]
pub struct Cli {
    /// Output format (default: json, except `table` and `selfcheck`).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Bits of working precision for float renderings.
    #[arg(long, global = true, default_value_t = json::DEFAULT_FLOAT_BITS)]
    pub precision: u32,
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis cell sizes on 2n punctures at order r.
    Counts {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
    },
    /// Representation matrix of one element.
    Matrix {
        /// One of: half-twist:S, commutator2:S, full-twist:M, sigma-n:J, commutator-m, separating-twist:H:M.
        #[arg(long)]
        element: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        /// Root exponent; every admissible t when absent.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Order certificates for an element, or for the power subgroup N_m.
    Certify {
        #[arg(long)]
        punctures: Option<u32>,
        /// Scan roots where the m-th power of a half-twist is trivial.
        #[arg(long)]
        power: Option<u32>,
        #[arg(long, default_value_t = 24)]
        rmax: u32,
        /// Certify at this order only (with --t, at one root).
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, default_value = "commutator-m")]
        element: String,
        /// Also search for a finite projective order up to this power.
        #[arg(long)]
        finite: Option<u32>,
        /// Re-verify certificates from a JSON file instead of computing.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Sign of f_2(q) - 2 at every root of order r.
    ScanF2 {
        #[arg(long, default_value_t = 5)]
        rmin: u32,
        #[arg(long, default_value_t = 50)]
        rmax: u32,
    },
    /// Separating-twist scalars, the closed-form comparison, or N_(k,l) certificates.
    Hyper {
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        h: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        /// Compare the closed-form triviality conditions with direct scalars.
        #[arg(long)]
        report: bool,
        /// Power of the non-separating twist; selects N_(k,l) certification.
        #[arg(long)]
        k: Option<u32>,
        /// Power of the separating twists.
        #[arg(long)]
        l: Option<u32>,
        #[arg(long, default_value_t = 4)]
        rmin: u32,
        #[arg(long, default_value_t = 12)]
        rmax: u32,
        #[arg(long, default_value_t = 8)]
        gmax: u32,
        #[arg(long, default_value_t = 12)]
        mmax: u32,
        /// Stop at the first certificate.
        #[arg(long)]
        first: bool,
    },
    /// Index classification grid over genus and power.
    Table {
        #[arg(long, default_value_t = 22)]
        gmax: u32,
        #[arg(long, default_value_t = 10)]
        mmax: u32,
    },
    /// Run the invariant suite at desk scale.
    Selfcheck,
}

/// Validated invocation.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub precision: u32,
    pub jobs: Option<usize>,
    pub color: bool,
}

impl RunConfig {
    pub fn from_cli(cli: Cli, color: bool) -> Result<Self> {
        if !(16..=4096).contains(&cli.precision) {
            return Err(Error::Validation(format!("--precision must lie in 16..=4096, got {}", cli.precision)));
        }
        if cli.jobs == Some(0) {
            return Err(Error::Validation("--jobs must be positive".into()));
        }
        let default = match cli.command {
            Command::Table { .. } | Command::Selfcheck => Format::Ascii,
            _ => Format::Json,
        };
        Ok(RunConfig { format: cli.format.unwrap_or(default), precision: cli.precision, jobs: cli.jobs, color, command: cli.command })
    }
}

/// Parses `argv` (program name first), runs, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let color = std::env::var(COLOR_ENV).is_ok_and(|v| matches!(v.as_str(), "1" | "always" | "true"));
    let result = RunConfig::from_cli(cli, color).and_then(|cfg| {
        let jobs = cfg.jobs;
        scan::with_jobs(jobs, || {
            let mut buf = Vec::new();
            dispatch(&cfg, &mut buf).map(|code| (code, buf))
        })?
    });
    match result {
        Ok((code, buf)) => {
            if let Err(e) = out.write_all(&buf).and_then(|()| out.flush()) {
                let _ = writeln!(err, "error: {e}");
                return 1;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, doc: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)?;
    Ok(())
}

fn roots_for(r: u32, t: Option<u32>) -> Result<Vec<RootChoice>> {
    Ok(match t {
        Some(t) => vec![RootChoice::new(r, t)?],
        None => RootChoice::all(r)?,
    })
}

fn need<T>(v: Option<T>, flag: &str, ctx: &str) -> Result<T> {
    v.ok_or_else(|| Error::Validation(format!("{ctx} requires --{flag}")))
}

fn punctures_to_n(p: u32) -> Result<u32> {
    if p < 6 || !p.is_multiple_of(2) {
        return Err(Error::Validation(format!("--punctures must be even and at least 6, got {p}")));
    }
    Ok(p / 2)
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let bits = cfg.precision;
    let ascii = cfg.format == Format::Ascii;
    match &cfg.command {
        Command::Counts { n, r } => {
            let p = count_profile(*n, *r)?;
            if ascii {
                writeln!(out, "2n = {}, r = {}: dim = {}, k = {}, k' = {}, dim_Y = {}", 2 * n, r, p.total, p.k, p.k_prime, p.total_y)?;
                for (tag, c) in p.t_cells().into_iter().chain(p.y_cells()) {
                    writeln!(out, "  {:<10} {c}", tag.to_string())?;
                }
            } else {
                emit(out, &json::encode_counts(&p))?;
            }
        }
        Command::Matrix { element, n, r, t } => {
            let el = RepElement::from_str(element)?;
            let mut docs = Vec::new();
            for root in roots_for(*r, *t)? {
                let f = field_for(root);
                let m = el.represent(*n, &f)?;
                if ascii {
                    writeln!(out, "{el} on {} punctures at {root}: dim {}", 2 * n, m.dim())?;
                    writeln!(out, "  groups: {}", describe_groups(&m))?;
                    for (&(i, j), v) in m.entries() {
                        let (re, im) = v.to_complex_f64();
                        writeln!(out, "  [{i},{j}] {v}  ≈ {re:.9} {im:+.9}i")?;
                    }
                } else {
                    docs.push(json::encode_matrix(&m, el, *n, bits));
                }
            }
            if !ascii {
                emit(out, &docs)?;
            }
        }
        Command::Certify { punctures, power, rmax, r, t, element, finite, verify } => {
            if let Some(path) = verify {
                return verify_file(path, out, ascii);
            }
            let n = punctures_to_n(need(*punctures, "punctures", "certify")?)?;
            let certs = match (power, r) {
                (Some(m), None) => scan::power_subgroup(2 * n, *m, *rmax)?,
                (None, Some(r)) => {
                    let el = RepElement::from_str(element)?;
                    let mut v = Vec::new();
                    for root in roots_for(*r, *t)? {
                        let f = field_for(root);
                        let m = el.represent(n, &f)?;
                        v.push(infinite_order_certificate(&m, el, n)?);
                        if let Some(max) = finite {
                            v.push(finite_order_check(&m, el, n, *max)?);
                        }
                    }
                    v
                }
                _ => return Err(Error::Validation("certify needs exactly one of --power or --r".into())),
            };
            write_certificates(out, &certs, 2 * n, power.unwrap_or(0), *rmax, bits, ascii)?;
        }
        Command::ScanF2 { rmin, rmax } => {
            let rows = scan::f2_rows(*rmin, *rmax)?;
            if ascii {
                for row in &rows {
                    let pos = row.positive();
                    if pos.is_empty() {
                        writeln!(out, "r = {:>3}: f_2 <= 2 at every root", row.r)?;
                    } else {
                        writeln!(out, "r = {:>3}: f_2 > 2 at t in {pos:?}", row.r)?;
                    }
                }
            } else {
                emit(out, &json::encode_f2(&rows))?;
            }
        }
        Command::Hyper { g, h, m, r, t, report, k, l, rmin, rmax, gmax, mmax, first } => {
            if *report {
                let rep = scan::twist_report(*rmin, *rmax, *gmax, *mmax)?;
                let doc = json::encode_twist_report(&rep);
                if ascii {
                    writeln!(out, "rows checked: {}", doc.rows_checked)?;
                    writeln!(out, "all-h agreement: {}", doc.conjunction_agrees)?;
                    writeln!(out, "per-h differences: {}", doc.per_h_mismatches.len())?;
                    for row in &doc.per_h_mismatches {
                        writeln!(
                            out,
                            "  r={} t={} g={} h={} m={} case {}: closed form {} vs direct {}",
                            row.r, row.t, row.g, row.h, row.m, row.case, row.closed_form, row.direct
                        )?;
                    }
                } else {
                    emit(out, &doc)?;
                }
            } else if let Some(k) = k {
                let g = need(*g, "g", "N_(k,l) certification")?;
                let l = need(*l, "l", "N_(k,l) certification")?;
                let certs = scan::nkl(g, *k, l, *rmax, *first)?;
                if ascii {
                    for c in &certs {
                        writeln!(out, "g={} (k,l)=({},{}) at {}: {}", c.g, c.k, c.l, c.order.root, c.order.rationale)?;
                    }
                    if certs.is_empty() {
                        writeln!(out, "no certificate for r <= {rmax}")?;
                    }
                } else {
                    let docs: Vec<NklJson> = certs.iter().map(|c| json::encode_nkl(c, bits)).collect();
                    emit(out, &docs)?;
                }
            } else {
                let g = need(*g, "g", "hyper")?;
                let h = need(*h, "h", "hyper")?;
                let m = need(*m, "m", "hyper")?;
                let r = need(*r, "r", "hyper")?;
                let mut docs = Vec::new();
                for root in roots_for(r, *t)? {
                    let set = delta_scalar_set(g, h, m, &field_for(root))?;
                    if ascii {
                        let labels: Vec<u32> = set.scalars.iter().map(|(a, _)| *a).collect();
                        writeln!(
                            out,
                            "g={g} h={h} m={m} at {root}: labels {labels:?}, {} distinct scalar(s), trivial = {}",
                            set.distinct(),
                            set.is_trivial()
                        )?;
                    } else {
                        docs.push(json::encode_twist_set(&set, bits));
                    }
                }
                if !ascii {
                    emit(out, &docs)?;
                }
            }
        }
        Command::Table { gmax, mmax } => {
            let cells = scan::table(*gmax, *mmax)?;
            if ascii {
                write!(out, "{}", table::render(&cells, *gmax, *mmax, cfg.color))?;
            } else {
                emit(out, &json::encode_table(&cells, *gmax, *mmax, bits))?;
            }
        }
        Command::Selfcheck => {
            let outcomes = selfcheck::run_all();
            let ok = outcomes.iter().all(|o| o.passed);
            if ascii {
                for o in &outcomes {
                    let tag = if o.passed { "ok  " } else { "FAIL" };
                    writeln!(out, "{tag} {:<26} {:>8.2}s  {}", o.name, o.elapsed.as_secs_f64(), o.detail)?;
                }
            } else {
                #[derive(Serialize)]
                struct Row<'a> {
                    name: &'a str,
                    passed: bool,
                    seconds: f64,
                    detail: &'a str,
                }
                #[derive(Serialize)]
                struct Doc<'a> {
                    schema_version: u32,
                    passed: bool,
                    checks: Vec<Row<'a>>,
                }
                let checks = outcomes
                    .iter()
                    .map(|o| Row { name: o.name, passed: o.passed, seconds: o.elapsed.as_secs_f64(), detail: &o.detail })
                    .collect();
                emit(out, &Doc { schema_version: SCHEMA_VERSION, passed: ok, checks })?;
            }
            return Ok(if ok { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn write_certificates(
    out: &mut dyn Write,
    certs: &[OrderCertificate],
    punctures: u32,
    power: u32,
    r_max: u32,
    bits: u32,
    ascii: bool,
) -> Result<()> {
    if ascii {
        for c in certs {
            let a = c.witness.as_ref().and_then(|w| w.level).map(|a| format!(" a={a}")).unwrap_or_default();
            writeln!(out, "{} on {} punctures at {}: {}{a}; {}", c.element, 2 * c.n, c.root, c.kind, c.rationale)?;
        }
        if certs.is_empty() {
            writeln!(out, "no certificate found")?;
        }
        return Ok(());
    }
    let doc = CertificateList {
        schema_version: SCHEMA_VERSION,
        punctures,
        power,
        r_max,
        certificates: certs.iter().map(|c| json::encode_certificate(c, bits)).collect(),
    };
    emit(out, &doc)
}

/// Accepts a certificate list, a single certificate, or a list of
/// `N_(k,l)` certificates.
fn verify_file(path: &PathBuf, out: &mut dyn Write, ascii: bool) -> Result<i32> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let mut verified = 0usize;
    let mut skipped = 0usize;
    let mut check = |c: &OrderCertificate| -> Result<()> {
        if c.is_infinite() {
            verify_certificate(c)?;
            verified += 1;
        } else {
            skipped += 1;
        }
        Ok(())
    };
    if value.get("certificates").is_some() {
        let list: CertificateList = serde_json::from_value(value)?;
        for c in &list.certificates {
            check(&json::decode_certificate(c)?)?;
        }
    } else if value.is_array() {
        let list: Vec<NklJson> = serde_json::from_value(value)?;
        for c in &list {
            let cert = json::decode_nkl(c)?;
            verify_nkl(&cert)?;
            verified += 1;
        }
    } else {
        let c: CertificateJson = serde_json::from_value(value)?;
        check(&json::decode_certificate(&c)?)?;
    }
    if ascii {
        writeln!(out, "verified {verified} certificate(s); {skipped} without a witness")?;
    } else {
        emit(out, &serde_json::json!({ "schema_version": SCHEMA_VERSION, "verified": verified, "skipped": skipped }))?;
    }
    Ok(0)
}
