//! Seeded Monte-Carlo checks of the probabilistic claims at desk scale.
//!
//! Trial `i` draws from a ChaCha8 generator seeded with the master seed and switched to
//! stream `i`, so results do not depend on how trials are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::construct::{alteration_construct, sample_with_rng, target_size, ConstructionConfig, DEFAULT_N_GUARD};
use crate::error::{ensure, Error, Result};
use crate::scalar::binomial_exact;
use crate::verify::{count_violated_subsets, verify_weak};

/// Largest number of subsets a single success-probability trial may enumerate.
pub const MAX_SUBSETS_PER_TRIAL: u128 = 100_000_000;

/// Generator for trial `index` under `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn standard_error(rate: f64, trials: u64) -> f64 {
    (rate * (1.0 - rate) / trials as f64).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityEstimate {
    pub s: usize,
    pub p: f64,
    pub l: usize,
    pub d: usize,
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub standard_error: f64,
    /// Closed-form binomial tail for the same parameters.
    pub exact: f64,
}

impl ProbabilityEstimate {
    /// `|estimate - exact| <= k · standard_error`.
    pub fn within_standard_errors(&self, k: f64) -> bool {
        (self.estimate - self.exact).abs() <= k * self.standard_error
    }
}

/// Fraction of sampled `l × s` Bernoulli(`p`) matrices with at most `d - 1` weight-one rows.
pub fn estimate_violation_probability(
    s: usize,
    p: f64,
    l: usize,
    d: usize,
    trials: u64,
    seed: u64,
) -> Result<ProbabilityEstimate> {
    ensure!(trials >= 1, Domain, "trials must be >= 1");
    let exact: f64 = bounds::prob_violation(s, p, l, d)?;
    let cols: Vec<usize> = (0..s).collect();
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|i| {
            let m = sample_with_rng(l, s, p, &mut trial_rng(seed, i)).expect("validated parameters");
            u64::from(m.weight_one_rows_unchecked(&cols) < d)
        })
        .sum();
    let estimate = hits as f64 / trials as f64;
    Ok(ProbabilityEstimate {
        s,
        p,
        l,
        d,
        trials,
        hits,
        estimate,
        standard_error: standard_error(estimate, trials),
        exact,
    })
}

/// Outcome of repeated sampling against the `1 - 1/f` success guarantee.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub n: usize,
    pub trials: u64,
    /// Trials whose violated-subset count `X` satisfied `X < n/2`.
    pub successes: u64,
    pub success_rate: f64,
    /// `1 - 1/f`.
    pub threshold: f64,
    pub standard_error: f64,
    /// Exact `E(X)` for the sampled matrix.
    pub expected_violations: f64,
    /// `E(X) <= n / (2f)`, the hypothesis of the guarantee.
    pub guarantee_applicable: bool,
    pub mean_violations: f64,
    /// `success_rate >= threshold - 3 · standard_error`.
    pub passes: bool,
}

/// Samples the initial matrix of the construction `trials` times and counts violated
/// subsets exactly. Uses `cfg.n_override` when set, the formula size otherwise.
pub fn estimate_success_probability(cfg: &ConstructionConfig, trials: u64) -> Result<TrialSummary> {
    cfg.validate()?;
    ensure!(trials >= 1, Domain, "trials must be >= 1");
    let (n, _) = cfg.initial_size()?;
    let subsets: u128 = (2..=cfg.t.min(n))
        .map(|s| binomial_exact(n as u64, s as u64).unwrap_or(u128::MAX))
        .fold(0u128, u128::saturating_add);
    if subsets > MAX_SUBSETS_PER_TRIAL {
        return Err(Error::Capacity(format!(
            "{subsets} subsets per trial exceeds the limit of {MAX_SUBSETS_PER_TRIAL}"
        )));
    }
    let p = cfg.p();
    let expected: f64 = if n >= 2 { bounds::expected_violations(n, cfg.t, cfg.d, cfg.l, p)? } else { 0.0 };
    let counts: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let m = sample_with_rng(cfg.l, n, p, &mut trial_rng(cfg.seed, i)).expect("validated parameters");
            count_violated_subsets(&m, cfg.t, cfg.d).expect("validated parameters")
        })
        .collect();
    let successes = counts.iter().filter(|&&x| 2 * x < n as u64).count() as u64;
    let success_rate = successes as f64 / trials as f64;
    let se = standard_error(success_rate, trials);
    let threshold = 1.0 - 1.0 / cfg.f;
    Ok(TrialSummary {
        n,
        trials,
        successes,
        success_rate,
        threshold,
        standard_error: se,
        expected_violations: expected,
        guarantee_applicable: expected <= n as f64 / (2.0 * cfg.f),
        mean_violations: counts.iter().sum::<u64>() as f64 / trials as f64,
        passes: success_rate >= threshold - 3.0 * se,
    })
}

/// One construction in a length sweep. Failed rows carry `error` and no construction data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub l: usize,
    /// Formula size, absent when it overflowed the guard or the parameters were invalid.
    pub n_target: Option<usize>,
    pub n_used: Option<usize>,
    pub final_n: Option<usize>,
    pub achieved_rate: Option<f64>,
    pub finite_rate: Option<f64>,
    pub lower_new: f64,
    pub verified: Option<bool>,
    pub error: Option<String>,
}

/// Parameters shared by every row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub t: usize,
    pub d: usize,
    pub f: f64,
    pub seed: u64,
    pub p_override: Option<f64>,
    pub n_override: Option<usize>,
    pub n_guard: usize,
}

impl SweepConfig {
    pub fn new(t: usize, d: usize, f: f64, seed: u64) -> Self {
        Self { t, d, f, seed, p_override: None, n_override: None, n_guard: DEFAULT_N_GUARD }
    }
}

/// One alteration construction per length, all with the same seed. A row whose formula size
/// overflows the guard needs `n_override`; without it the row is marked failed.
pub fn rate_sweep(cfg: &SweepConfig, lengths: &[usize]) -> Result<Vec<SweepRow>> {
    let lower_new: f64 = bounds::rate_lower_new(cfg.t)?;
    Ok(lengths.iter().map(|&l| sweep_row(cfg, l, lower_new)).collect())
}

fn sweep_row(cfg: &SweepConfig, l: usize, lower_new: f64) -> SweepRow {
    let mut row = SweepRow {
        l,
        n_target: None,
        n_used: None,
        final_n: None,
        achieved_rate: None,
        finite_rate: bounds::finite_rate(cfg.t, cfg.d, l, cfg.f).ok(),
        lower_new,
        verified: None,
        error: None,
    };
    let target = target_size(cfg.t, cfg.d, l, cfg.f, cfg.n_guard);
    row.n_target = target.as_ref().ok().map(|t| t.n);
    let construction = ConstructionConfig {
        t: cfg.t,
        d: cfg.d,
        l,
        f: cfg.f,
        seed: cfg.seed,
        p_override: cfg.p_override,
        n_override: cfg.n_override,
        n_guard: cfg.n_guard,
    };
    let result =
        alteration_construct(&construction).and_then(|(m, log)| Ok((verify_weak(&m, cfg.t, cfg.d, Some(1))?.ok, log)));
    match result {
        Ok((ok, log)) => {
            row.n_used = Some(log.initial_n);
            row.final_n = Some(log.final_n);
            row.achieved_rate = Some(log.achieved_rate);
            row.verified = Some(ok);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// CSV with header `l,n_target,n_used,final_n,achieved_rate,finite_rate,lower_new,verified,error`.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Parses a `key = value` experiment config. Blank lines and `#` comments are skipped.
pub fn parse_kv_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse { line: i + 1, msg: format!("expected `key = value`, got {line:?}") })?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(Error::Parse { line: i + 1, msg: "empty key".into() });
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}
