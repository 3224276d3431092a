//! Text rendering of the genus × power grid.

use std::fmt::Write;

use skeinrep_core::hyperelliptic::{CellStatus, TableCell};

pub const FINITE: char = '█';
pub const INFINITE: char = '▓';
pub const UNKNOWN: char = '·';

pub fn glyph(s: CellStatus) -> char {
    match s {
        CellStatus::Finite => FINITE,
        CellStatus::Infinite => INFINITE,
        CellStatus::Unknown => UNKNOWN,
    }
}

/// Powers run upward, genera to the right. `color` wraps glyphs in ANSI
/// escapes.
pub fn render(cells: &[TableCell], g_max: u32, m_max: u32, color: bool) -> String {
    let mut out = String::new();
    let at = |g: u32, m: u32| cells.iter().find(|c| c.g == g && c.m == m).map(|c| c.status);
    for m in (1..=m_max).rev() {
        let _ = write!(out, "{m:>3} |");
        for g in 1..=g_max {
            let s = at(g, m).unwrap_or(CellStatus::Unknown);
            let ch = glyph(s);
            match (color, s) {
                (true, CellStatus::Infinite) => {
                    let _ = write!(out, "  \x1b[36m{ch}\x1b[0m");
                }
                _ => {
                    let _ = write!(out, "  {ch}");
                }
            }
        }
        out.push('\n');
    }
    let _ = write!(out, "    +");
    out.push_str(&"---".repeat(g_max as usize));
    out.push('\n');
    let _ = write!(out, "  m  ");
    for g in 1..=g_max {
        let _ = write!(out, "{g:>3}");
    }
    out.push_str("  g\n");
    let _ = writeln!(out, "legend: {FINITE} finite index, {INFINITE} infinite index, {UNKNOWN} unknown");
    out
}
