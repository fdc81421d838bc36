use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use genusgauge_core::verify::{Family, ScanBounds, ScanReport};
use rayon::prelude::*;

use crate::{CliError, CliResult};

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub family: Family,
    pub bounds: ScanBounds,
    /// Worker threads; `None` uses one per available core.
    pub workers: Option<usize>,
    /// Slices not started before this much time has passed are skipped.
    pub time_limit: Option<Duration>,
}

impl ScanOptions {
    pub fn new(family: Family) -> Self {
        ScanOptions {
            family,
            bounds: family.default_bounds(),
            workers: None,
            time_limit: None,
        }
    }
}

/// Run a family on a worker pool. Slices are merged in slice order, so the
/// report does not depend on the number of workers. The report is partial
/// (`!complete()`) when the time limit cut the scan short.
pub fn run_scan(opts: &ScanOptions) -> CliResult<ScanReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = opts.workers {
        if w == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;

    let family = opts.family;
    let bounds = opts.bounds;
    let slices = family.slices(&bounds);
    let start = Instant::now();
    let expired = AtomicBool::new(false);

    let results: Vec<_> = pool.install(|| {
        slices
            .par_iter()
            .map(|&s| {
                if let Some(limit) = opts.time_limit {
                    if expired.load(Ordering::Relaxed) || start.elapsed() >= limit {
                        expired.store(true, Ordering::Relaxed);
                        return None;
                    }
                }
                Some(family.run_slice(&bounds, s).map(|r| (s, r)))
            })
            .collect()
    });

    let mut report = ScanReport::new(family, bounds, slices.len() as u64);
    for r in results.into_iter().flatten() {
        let (slice, rep) = r?;
        report.merge(slice, rep);
    }
    Ok(report)
}

pub fn report_text(r: &ScanReport) -> String {
    let passed = r.checked - r.failures;
    let mut out = format!(
        "scan {}: checked {}, passed {}, failures {}\n",
        r.family.name(),
        r.checked,
        passed,
        r.failures
    );
    if let Some(c) = &r.counterexample {
        out.push_str(&format!("first counterexample: {c}\n"));
    }
    if !r.complete() {
        out.push_str(&format!(
            "time limit reached: partial report over {} of {} slices\n",
            r.slices_run, r.slices_total
        ));
    }
    out
}
