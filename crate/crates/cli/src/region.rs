use genusgauge_core::obstruct::decide;
use genusgauge_core::{Context, EmbedQuery};
use serde::Serialize;

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub h: i64,
    pub e: i64,
    pub exact: bool,
}

/// Default half-width of the Euler window for contexts that leave `e`
/// unbounded.
pub fn default_e_max(h_max: i64) -> i64 {
    (2 * h_max).max(64)
}

/// Every unobstructed `(h, e)` with `1 ≤ h ≤ h_max`, ordered by `h` then `e`.
pub fn region(context: &Context, h_max: i64, e_max: Option<i64>) -> CliResult<Vec<Row>> {
    if h_max < 1 {
        return Err(CliError::Usage(format!(
            "--h-max must be at least 1, got {h_max}"
        )));
    }
    let e_max = e_max.unwrap_or_else(|| default_e_max(h_max));
    let mut rows = Vec::new();
    for h in 1..=h_max {
        let (lo, hi) = context.euler_window(h).unwrap_or((-e_max, e_max));
        for e in lo..=hi {
            let v = decide(&EmbedQuery::new(h, e, context.clone())?)?;
            if v.feasible {
                rows.push(Row {
                    h,
                    e,
                    exact: v.exact,
                });
            }
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::from("h,e,exact\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.h, r.e, r.exact));
    }
    out
}
