//! Sample-and-alter construction for (w, r; d)-cover-free families.
//!
//! A violated structure is a disjoint pair `(X, Y)` of live columns, `|X| = w`,
//! `|Y| = r`, with fewer than `d` rows that are 1 on all of `X` and 0 on all of `Y`.
//! Pairs are visited once with `X` in lexicographic order and, for each `X`, `Y` in
//! lexicographic order over the other columns; a violated pair loses the largest
//! column of `X ∪ Y`.

use serde::{Deserialize, Serialize};

use super::{check_probability, sample_random_code, ConstructionLog, Deletion, LogConfig, DEFAULT_N_GUARD};
use crate::bounds;
use crate::error::{ensure, Error, Result};
use crate::matrix::CodeMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CffConfig {
    pub w: usize,
    pub r: usize,
    pub d: usize,
    pub l: usize,
    pub f: f64,
    pub seed: u64,
    /// Bit probability; `w / (w + r)` when absent.
    pub p_override: Option<f64>,
    pub n_override: Option<usize>,
    pub n_guard: usize,
}

impl CffConfig {
    pub fn new(w: usize, r: usize, d: usize, l: usize, f: f64, seed: u64) -> Self {
        Self { w, r, d, l, f, seed, p_override: None, n_override: None, n_guard: DEFAULT_N_GUARD }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n_override = Some(n);
        self
    }

    pub fn p(&self) -> f64 {
        self.p_override.unwrap_or(self.w as f64 / (self.w + self.r) as f64)
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.w >= 1 && self.r >= 1 && self.d >= 1, Domain, "w, r, d must all be >= 1");
        ensure!(self.l > self.d, Domain, "length l = {} must exceed d = {}", self.l, self.d);
        ensure!(self.f.is_finite() && self.f > 0.0, Domain, "f must be a positive real, got {}", self.f);
        check_probability(self.p())?;
        ensure!(self.n_override != Some(0), Domain, "n override must be >= 1");
        Ok(())
    }
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Canonical single deletion pass for `(w, r; d)` violations, in place.
pub fn alter_cff(m: &mut CodeMatrix, w: usize, r: usize, d: usize) -> Result<Vec<Deletion>> {
    ensure!(w >= 1 && r >= 1 && d >= 1, Domain, "w, r, d must all be >= 1");
    let n = m.size();
    let mut deletions = Vec::new();
    if n < w + r {
        return Ok(deletions);
    }
    let mut xi: Vec<usize> = (0..w).collect();
    let mut mask = vec![0u64; m.words_per_col()];
    loop {
        if xi.iter().all(|&c| m.is_live(c)) {
            mask.copy_from_slice(m.column_words(xi[0]));
            for &c in &xi[1..] {
                for (o, wd) in mask.iter_mut().zip(m.column_words(c)) {
                    *o &= wd;
                }
            }
            let pool: Vec<usize> = (0..n).filter(|c| !xi.contains(c)).collect();
            let mut yi: Vec<usize> = (0..r).collect();
            loop {
                let y: Vec<usize> = yi.iter().map(|&k| pool[k]).collect();
                if y.iter().all(|&c| m.is_live(c)) {
                    let mut count = 0;
                    for (k, &base) in mask.iter().enumerate() {
                        let mut v = base;
                        for &c in &y {
                            v &= !m.column_words(c)[k];
                        }
                        count += v.count_ones() as usize;
                    }
                    if count < d {
                        let removed = xi.iter().chain(&y).copied().max().expect("nonempty");
                        m.remove_column(removed)?;
                        deletions.push(Deletion { subset: xi.clone(), excluded: y, removed });
                        if xi.contains(&removed) {
                            break;
                        }
                    }
                }
                if !next_combination(&mut yi, pool.len()) {
                    break;
                }
            }
        }
        if !next_combination(&mut xi, n) {
            break;
        }
    }
    Ok(deletions)
}

/// Samples with `p = w/(w+r)` by default and alters to a `(w, r; d)`-cover-free family.
pub fn cff_alteration_construct(cfg: &CffConfig) -> Result<(CodeMatrix, ConstructionLog)> {
    cfg.validate()?;
    let target_rate: f64 = bounds::cff_finite_rate(cfg.w, cfg.r, cfg.d, cfg.l, cfg.f)?;
    let (n, formula_n) = match cfg.n_override {
        Some(n) => (n, None),
        None => {
            let exponent = target_rate * cfg.l as f64 + 1.0;
            let n = if exponent < 63.0 { (2f64).powf(exponent).ceil().max(1.0) } else { f64::INFINITY };
            if n > cfg.n_guard as f64 {
                return Err(Error::Capacity(format!(
                    "target size exceeds the guard of {} codewords (exponent r*l+1 = {exponent})",
                    cfg.n_guard
                )));
            }
            (n as usize, Some(n as usize))
        }
    };
    let p = cfg.p();
    let mut m = sample_random_code(cfg.l, n, p, cfg.seed)?;
    let deletions = alter_cff(&mut m, cfg.w, cfg.r, cfg.d)?;
    let final_n = m.live_count();
    let achieved_rate = (final_n as f64).log2() / cfg.l as f64;
    let log = ConstructionLog {
        config: LogConfig::Cff(cfg.clone()),
        p,
        formula_n,
        degenerate_n: formula_n.is_some_and(|n| n < cfg.w + cfg.r),
        initial_n: n,
        final_n,
        achieved_rate,
        target_rate,
        success: achieved_rate >= target_rate,
        deletions,
    };
    Ok((m, log))
}
