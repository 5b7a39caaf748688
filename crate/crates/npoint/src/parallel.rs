//! Concurrent drivers whose results do not depend on the worker count:
//! every shard owns its inputs and shards are merged in index order.

use npoint_core::kernels::KernelSpec;
use npoint_core::picknorm::{search_restart, SearchConfig, SearchResult, Symbol};
use npoint_core::shifts::{scan_range, Check, ScanConfig, ScanReport};
use npoint_core::{Error, Result};
use rayon::prelude::*;

/// Multistart search with restarts spread over the rayon pool.
pub fn search<S: Symbol + Sync + ?Sized>(k: &KernelSpec, phi: &S, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let runs: Vec<Result<SearchResult>> = (0..cfg.restarts).into_par_iter().map(|r| search_restart(k, phi, cfg, r)).collect();
    let mut best: Option<SearchResult> = None;
    for run in runs {
        let run = run?;
        if best.as_ref().map_or(true, |b| run.beats(b)) {
            best = Some(run);
        }
    }
    best.ok_or_else(|| Error::InvalidParameter("no restarts".into()))
}

/// Number of k-values per scan shard.
pub const SCAN_SHARD: u64 = 16;

/// One check over 0..=k_max, sharded in k.
pub fn scan(cfg: &ScanConfig, check: Check) -> Result<ScanReport> {
    let shards: Vec<(u64, u64)> =
        (0..=cfg.k_max / SCAN_SHARD).map(|i| (i * SCAN_SHARD, ((i + 1) * SCAN_SHARD - 1).min(cfg.k_max))).collect();
    let parts: Vec<Result<ScanReport>> = shards.par_iter().map(|&(lo, hi)| scan_range(cfg, check, lo, hi)).collect();
    let mut merged: Option<ScanReport> = None;
    for part in parts {
        let part = part?;
        merged = Some(match merged {
            None => part,
            Some(m) => m.merge(part, cfg.max_witnesses),
        });
    }
    merged.ok_or_else(|| Error::InvalidParameter("empty scan".into()))
}

/// All checks applicable at cfg.s.
pub fn scan_all(cfg: &ScanConfig) -> Result<Vec<ScanReport>> {
    Check::ALL.iter().filter(|c| c.applies(cfg.s)).map(|&c| scan(cfg, c)).collect()
}
