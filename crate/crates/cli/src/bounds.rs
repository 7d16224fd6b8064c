//! Call and switch counts for both models, one row per `n`.

use std::fmt::Write;

use serde::Serialize;
use upn_core::switchnet::{benes_switch_count, triangular_switch_count, Log2FactorialAccumulator};

pub const MAX_N: usize = 1_000_000;
/// The Beneš column is left empty above this size.
pub const BENES_LIMIT: usize = 1 << 16;

pub const CSV_HEADER: &str = "n,baseline,zigzag,best_known,benes,triangular,switch_lower";

const KLEITMAN_NOTE: &str = "n^2 - C_eps * n^(7/4 + eps)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub n: usize,
    pub baseline: u64,
    pub zigzag: u64,
    pub best_known: u64,
    /// Set where `best_known` is only an upper bound from the formula.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_known_note: Option<&'static str>,
    pub benes: Option<u64>,
    pub triangular: u64,
    pub switch_lower: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeError(pub String);

impl std::fmt::Display for RangeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for RangeError {}

/// Shortest known complete-sequence length, stitched from the published
/// regimes. `n = 1, 2` use the exact values 1 and 3.
pub fn best_known(n: usize) -> u64 {
    let n = n as u64;
    match n {
        0 => 0,
        1 => 1,
        2 => 3,
        3..=9 => n * n - 2 * n + 4,
        10..=12 => n * n - 2 * n + 3,
        // ⌈n² − 7n/3 + 19/3⌉ in integers
        _ => (3 * n * n - 7 * n + 19).div_ceil(3),
    }
}

pub fn rows(n_min: usize, n_max: usize) -> Result<Vec<BoundsRow>, RangeError> {
    if n_min == 0 || n_min > n_max || n_max > MAX_N {
        return Err(RangeError(format!(
            "need 1 <= n-min <= n-max <= {MAX_N}, got {n_min}..{n_max}"
        )));
    }
    let mut acc = Log2FactorialAccumulator::default();
    for k in 2..n_min {
        acc.push(k);
    }
    let mut out = Vec::with_capacity(n_max - n_min + 1);
    for n in n_min..=n_max {
        if n >= 2 {
            acc.push(n);
        }
        let nn = n as u64;
        out.push(BoundsRow {
            n,
            baseline: nn * nn,
            zigzag: nn * nn - nn + 1,
            best_known: best_known(n),
            best_known_note: (8..=9).contains(&n).then_some("formula, not verified shortest"),
            benes: (n <= BENES_LIMIT).then(|| benes_switch_count(n)),
            triangular: triangular_switch_count(n),
            switch_lower: acc.ceil(),
        });
    }
    Ok(out)
}

pub fn render(rows: &[BoundsRow], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for r in rows {
                let benes = r.benes.map(|b| b.to_string()).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    r.n, r.baseline, r.zigzag, r.best_known, benes, r.triangular, r.switch_lower
                );
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string(rows).expect("rows serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>8} {:>14} {:>14} {:>14} {:>12} {:>14} {:>12}",
                "n", "baseline", "zigzag", "best_known", "benes", "triangular", "switch_lower"
            );
            let mut flagged = false;
            for r in rows {
                let benes = r.benes.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
                let mark = if r.best_known_note.is_some() {
                    flagged = true;
                    "*"
                } else {
                    ""
                };
                let _ = writeln!(
                    s,
                    "{:>8} {:>14} {:>14} {:>14} {:>12} {:>14} {:>12}",
                    r.n,
                    r.baseline,
                    r.zigzag,
                    format!("{}{mark}", r.best_known),
                    benes,
                    r.triangular,
                    r.switch_lower
                );
            }
            if flagged {
                let _ = writeln!(s, "* formula, not verified shortest");
            }
            let _ = writeln!(s, "calls lower bound (asymptotic): {KLEITMAN_NOTE}");
            let _ = writeln!(
                s,
                "switches: n*log2(n) - 2n <= switch_lower <= benes <= n*(log2(n) - 1/2)"
            );
            s
        }
    }
}
