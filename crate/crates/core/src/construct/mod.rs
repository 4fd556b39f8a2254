//! Randomized sample-and-alter construction.
//!
//! A random `l × n` matrix with i.i.d. Bernoulli(`p`) entries is sampled, then every
//! violated column subset loses a column. Subsets are visited once, in canonical
//! order (size ascending, then lexicographic); a subset is examined only if all of its
//! columns are still live, and a violated one loses its largest-index column. Whether a
//! subset is violated depends only on its own columns, so any subset that survives the
//! pass was live and unviolated when visited, and the output is always a valid code.

mod cff;

use rand::distributions::{Bernoulli, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{ensure, Error, Result};
use crate::kernel::{SubsetScanner, Visit};
use crate::matrix::CodeMatrix;

pub use cff::{alter_cff, cff_alteration_construct, CffConfig};

/// Default cap on the number of sampled codewords.
pub const DEFAULT_N_GUARD: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionConfig {
    pub t: usize,
    pub d: usize,
    pub l: usize,
    pub f: f64,
    pub seed: u64,
    /// Bit probability; `1/t` when absent.
    pub p_override: Option<f64>,
    /// Number of sampled codewords; the rate formula's size when absent.
    pub n_override: Option<usize>,
    pub n_guard: usize,
}

impl ConstructionConfig {
    pub fn new(t: usize, d: usize, l: usize, f: f64, seed: u64) -> Self {
        Self { t, d, l, f, seed, p_override: None, n_override: None, n_guard: DEFAULT_N_GUARD }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n_override = Some(n);
        self
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p_override = Some(p);
        self
    }

    pub fn p(&self) -> f64 {
        self.p_override.unwrap_or(1.0 / self.t as f64)
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.t >= 2, Domain, "strength t must be >= 2, got {}", self.t);
        ensure!(self.d >= 1, Domain, "d must be >= 1, got {}", self.d);
        ensure!(self.l > self.d, Domain, "length l = {} must exceed d = {}", self.l, self.d);
        ensure!(self.f.is_finite() && self.f > 0.0, Domain, "f must be a positive real, got {}", self.f);
        check_probability(self.p())?;
        ensure!(self.n_override != Some(0), Domain, "n override must be >= 1");
        ensure!(self.n_guard >= 1, Domain, "n guard must be >= 1");
        Ok(())
    }

    /// Initial number of sampled codewords and the formula size it came from, if any.
    pub fn initial_size(&self) -> Result<(usize, Option<TargetSize>)> {
        match self.n_override {
            Some(n) => Ok((n, None)),
            None => {
                let target = target_size(self.t, self.d, self.l, self.f, self.n_guard)?;
                Ok((target.n, Some(target)))
            }
        }
    }
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    ensure!(p > 0.0 && p < 1.0, Domain, "probability must lie in (0, 1), got {p}");
    Ok(())
}

/// `⌈2^(r·l + 1)⌉` for the finite-length rate `r = r(t, d, l, f)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetSize {
    pub n: usize,
    pub rate: f64,
    /// `r·l + 1`.
    pub exponent: f64,
    /// `n <= t`: the sample cannot contain a subset of size `t`.
    pub degenerate: bool,
}

pub fn target_size(t: usize, d: usize, l: usize, f: f64, n_guard: usize) -> Result<TargetSize> {
    let rate: f64 = bounds::finite_rate(t, d, l, f)?;
    let exponent = rate * l as f64 + 1.0;
    let n = if exponent < 63.0 { (2f64).powf(exponent).ceil().max(1.0) } else { f64::INFINITY };
    if n > n_guard as f64 {
        return Err(Error::Capacity(format!(
            "target size 2^{exponent} exceeds the guard of {n_guard} codewords (exponent r*l+1 = {exponent})"
        )));
    }
    let n = n as usize;
    Ok(TargetSize { n, rate, exponent, degenerate: n <= t })
}

/// `l × n` matrix with independent Bernoulli(`p`) bits from a ChaCha8 stream seeded with `seed`.
pub fn sample_random_code(l: usize, n: usize, p: f64, seed: u64) -> Result<CodeMatrix> {
    ensure!(n >= 1, Domain, "n must be >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with_rng(l, n, p, &mut rng)
}

/// Fills column by column, coordinate 0 first.
pub(crate) fn sample_with_rng<R: Rng>(l: usize, n: usize, p: f64, rng: &mut R) -> Result<CodeMatrix> {
    check_probability(p)?;
    let bern = Bernoulli::new(p).map_err(|e| Error::Domain(e.to_string()))?;
    let mut m = CodeMatrix::zeros(l, n)?;
    for j in 0..n {
        for i in 0..l {
            if bern.sample(rng) {
                m.set(i, j, true);
            }
        }
    }
    Ok(m)
}

/// One removal: the violated structure and the column taken out of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deletion {
    pub subset: Vec<usize>,
    /// The `Y` family for cover-free constructions; empty otherwise.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<usize>,
    pub removed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum LogConfig {
    Weak(ConstructionConfig),
    Cff(CffConfig),
}

/// Everything needed to reproduce and audit one construction run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionLog {
    pub config: LogConfig,
    pub p: f64,
    /// Size from the rate formula, when it was used.
    pub formula_n: Option<usize>,
    /// The formula size was at most the subset size, so nothing could be violated at full size.
    pub degenerate_n: bool,
    pub initial_n: usize,
    pub deletions: Vec<Deletion>,
    pub final_n: usize,
    /// `log2(final_n) / l`.
    pub achieved_rate: f64,
    pub target_rate: f64,
    pub success: bool,
}

impl ConstructionLog {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Runs the canonical single deletion pass for weak `(t, d)` violations over the live
/// columns of `m`, removing columns in place.
pub fn alter_weak(m: &mut CodeMatrix, t: usize, d: usize) -> Result<Vec<Deletion>> {
    ensure!(t >= 2, Domain, "strength t must be >= 2, got {t}");
    ensure!(d >= 1, Domain, "d must be >= 1, got {d}");
    let mut deletions = Vec::new();
    let alive = {
        let mut scanner = SubsetScanner::new(m, t);
        for size in 2..=t {
            scanner.scan(size, 0..m.size(), &mut |s: &[usize], count| {
                if count < d {
                    let removed = *s.last().expect("nonempty subset");
                    deletions.push(Deletion { subset: s.to_vec(), excluded: Vec::new(), removed });
                    Visit::KillLast
                } else {
                    Visit::Continue
                }
            });
        }
        scanner.alive().to_vec()
    };
    for (j, a) in alive.into_iter().enumerate() {
        if !a && m.is_live(j) {
            m.remove_column(j)?;
        }
    }
    Ok(deletions)
}

/// Samples and alters per `cfg`. The returned matrix keeps removed columns masked so that
/// indices in the log refer to the sampled matrix; use [`CodeMatrix::compact`] to drop them.
pub fn alteration_construct(cfg: &ConstructionConfig) -> Result<(CodeMatrix, ConstructionLog)> {
    cfg.validate()?;
    let (n, target) = cfg.initial_size()?;
    let p = cfg.p();
    let mut m = sample_random_code(cfg.l, n, p, cfg.seed)?;
    let deletions = alter_weak(&mut m, cfg.t, cfg.d)?;
    let final_n = m.live_count();
    let achieved_rate = (final_n as f64).log2() / cfg.l as f64;
    let target_rate: f64 = bounds::finite_rate(cfg.t, cfg.d, cfg.l, cfg.f)?;
    let log = ConstructionLog {
        config: LogConfig::Weak(cfg.clone()),
        p,
        formula_n: target.map(|t| t.n),
        degenerate_n: target.is_some_and(|t| t.degenerate),
        initial_n: n,
        final_n,
        achieved_rate,
        target_rate,
        success: achieved_rate >= target_rate,
        deletions,
    };
    Ok((m, log))
}
