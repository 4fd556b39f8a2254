//! Exact verifiers for weak superimposed codes, locally thin systems and cover-free families.
//!
//! Subsets are always enumerated in canonical order: size ascending, then
//! lexicographic on the sorted index tuple. Reported violations and the
//! `subsets_checked` counter follow that order regardless of how many worker
//! threads the rayon pool provides.

mod cff;
mod exhaustive;

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::kernel::{SubsetScanner, Visit};
use crate::matrix::CodeMatrix;

pub use cff::{cff_first_violation, cff_verify, cff_verify_report, weak_from_cff_check};
pub use exhaustive::{max_code_exhaustive, EXHAUSTIVE_MAX_LENGTH};

/// Default bound on the number of violations kept in a [`VerificationResult`].
pub const DEFAULT_VIOLATION_CAP: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Weak,
    LocallyThin,
    Cff,
}

/// A column subset that fails the property under test.
///
/// For [`ViolationKind::Cff`], `subset` is the intersected family `X`, `excluded`
/// is the family `Y` and `weight_one_rows` is `|⋂X \ ⋃Y|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub subset: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<usize>,
    pub weight_one_rows: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub ok: bool,
    pub violations: Vec<ViolationReport>,
    /// Subsets examined, in canonical order, up to and including the last stored violation
    /// when the cap stopped enumeration; all subsets otherwise.
    pub subsets_checked: u64,
    /// Enumeration stopped because the violation cap was reached.
    pub truncated: bool,
}

/// `true` iff the subset has at most `d - 1` weight-one rows.
pub fn is_violated(m: &CodeMatrix, subset: &[usize], d: usize) -> Result<bool> {
    ensure!(subset.len() >= 2, Usage, "violation needs a subset of size >= 2, got {}", subset.len());
    ensure!(d >= 1, Domain, "d must be >= 1");
    Ok(m.weight_one_row_count(subset)? < d)
}

struct GroupOutcome {
    /// (1-based ordinal within the group, subset, count)
    hits: Vec<(u64, Vec<usize>, usize)>,
    visited: u64,
}

/// Scans all subsets of live columns with sizes in `sizes` and records those with fewer
/// than `threshold` weight-one rows. Work is split by smallest index across the rayon pool.
fn scan_violations(
    m: &CodeMatrix,
    sizes: std::ops::RangeInclusive<usize>,
    threshold: usize,
    kind: ViolationKind,
    cap: Option<usize>,
) -> VerificationResult {
    let live = m.live_indices();
    let max_size = (*sizes.end()).min(live.len());
    let cap_n = cap.unwrap_or(usize::MAX);
    let mut result = VerificationResult { ok: true, violations: Vec::new(), subsets_checked: 0, truncated: false };
    for size in *sizes.start()..=max_size {
        let saturated = AtomicUsize::new(usize::MAX);
        let groups: Vec<Option<GroupOutcome>> = live
            .par_iter()
            .enumerate()
            .map(|(g, &first)| {
                if g > saturated.load(Ordering::Relaxed) || live.len() - g < size {
                    return None;
                }
                let mut scanner = SubsetScanner::new(m, size);
                let mut out = GroupOutcome { hits: Vec::new(), visited: 0 };
                scanner.scan(size, first..first + 1, &mut |s: &[usize], count| {
                    out.visited += 1;
                    if count < threshold {
                        out.hits.push((out.visited, s.to_vec(), count));
                        if out.hits.len() >= cap_n {
                            saturated.fetch_min(g, Ordering::Relaxed);
                            return Visit::Stop;
                        }
                    }
                    Visit::Continue
                });
                Some(out)
            })
            .collect();
        for group in groups.into_iter().flatten() {
            let room = cap_n - result.violations.len();
            if group.hits.len() >= room {
                let last_ordinal = group.hits[room - 1].0;
                result.subsets_checked += last_ordinal;
                result.violations.extend(group.hits.into_iter().take(room).map(|(_, s, c)| ViolationReport {
                    subset: s,
                    excluded: Vec::new(),
                    weight_one_rows: c,
                    kind,
                }));
                result.truncated = true;
                result.ok = false;
                return result;
            }
            result.subsets_checked += group.visited;
            result.violations.extend(group.hits.into_iter().map(|(_, s, c)| ViolationReport {
                subset: s,
                excluded: Vec::new(),
                weight_one_rows: c,
                kind,
            }));
        }
    }
    result.ok = result.violations.is_empty();
    result
}

fn check_cap(cap: Option<usize>) -> Result<()> {
    ensure!(cap != Some(0), Usage, "violation cap must be >= 1");
    Ok(())
}

/// Checks the weak `(t, d)` property over the live columns.
///
/// `cap` bounds the stored violations (`None` keeps all of them); the verdict is
/// decided by the first violation either way.
pub fn verify_weak(m: &CodeMatrix, t: usize, d: usize, cap: Option<usize>) -> Result<VerificationResult> {
    ensure!(t >= 2, Domain, "strength t must be >= 2, got {t}");
    ensure!(d >= 1, Domain, "d must be >= 1, got {d}");
    check_cap(cap)?;
    Ok(scan_violations(m, 2..=t, d, ViolationKind::Weak, cap))
}

/// Shorthand for `verify_weak(m, t, d, Some(1))?.ok`.
pub fn is_weak_code(m: &CodeMatrix, t: usize, d: usize) -> Result<bool> {
    Ok(verify_weak(m, t, d, Some(1))?.ok)
}

/// Exact number of `(t, d)`-violated subsets among the live columns, single-threaded.
pub fn count_violated_subsets(m: &CodeMatrix, t: usize, d: usize) -> Result<u64> {
    ensure!(t >= 2, Domain, "strength t must be >= 2, got {t}");
    ensure!(d >= 1, Domain, "d must be >= 1, got {d}");
    let n = m.live_count();
    let mut scanner = SubsetScanner::new(m, t);
    let mut total = 0u64;
    for size in 2..=t.min(n) {
        scanner.scan(size, 0..m.size(), &mut |_: &[usize], count| {
            if count < d {
                total += 1;
            }
            Visit::Continue
        });
    }
    Ok(total)
}

/// Minimum Hamming distance over pairs of live columns.
pub fn min_distance(m: &CodeMatrix) -> Result<usize> {
    let live = m.live_indices();
    ensure!(live.len() >= 2, Domain, "minimum distance needs n >= 2, got {}", live.len());
    let mut best = usize::MAX;
    for (a, &i) in live.iter().enumerate() {
        for &j in &live[a + 1..] {
            best = best.min(m.distance_unchecked(i, j));
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

/// Report form of [`verify_locally_thin`].
pub fn verify_locally_thin_report(m: &CodeMatrix, u: usize, cap: Option<usize>) -> Result<VerificationResult> {
    ensure!(u >= 2, Domain, "u must be >= 2, got {u}");
    check_cap(cap)?;
    Ok(scan_violations(m, u..=u, 1, ViolationKind::LocallyThin, cap))
}

/// Every set of exactly `u` live columns has a row where exactly one of them is 1.
pub fn verify_locally_thin(m: &CodeMatrix, u: usize) -> Result<bool> {
    Ok(verify_locally_thin_report(m, u, Some(1))?.ok)
}
