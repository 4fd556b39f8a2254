//! Closed-form rate bounds and the probabilities behind the alteration argument.
//!
//! Rates are in bits per coordinate (`log2 |C| / l`). Everything here is generic over
//! [`Scalar`]; the binomial tails are summed in log space so they stay finite for
//! lengths in the thousands.

mod exact;
mod table;

use crate::error::{ensure, Result};
use crate::scalar::{ln_binomial, log_sum_exp, Scalar};

pub use exact::{cff_rate_alteration_exact, cff_rate_bui_exact, cff_rate_deng_exact};
pub use table::{cff_table, cff_table_csv, BoundRow, BoundTable, CffBoundRow};

fn check_strength(t: usize) -> Result<()> {
    ensure!(t >= 2, Domain, "strength t must be >= 2, got {t}");
    Ok(())
}

fn check_open_unit<T: Scalar>(p: T) -> Result<()> {
    ensure!(p > T::zero() && p < T::one(), Domain, "probability must lie in (0, 1), got {p}");
    Ok(())
}

/// `(1 - 1/t)^(t-1)`.
fn survival_factor<T: Scalar>(t: usize) -> T {
    let tf = T::from_count(t as u64);
    (T::from_count(t as u64 - 1) * (-tf.recip()).ln_1p()).exp()
}

/// Lower bound achieved by the alteration construction: `log2(e)/(t-1) · (1-1/t)^(t-1)`.
/// Independent of `d`.
pub fn rate_lower_new<T: Scalar>(t: usize) -> Result<T> {
    check_strength(t)?;
    Ok(T::LOG2_E() / T::from_count(t as u64 - 1) * survival_factor::<T>(t))
}

/// Earlier union-bound lower bound `log2(e)/t · (1-1/t)^(t-1)`.
pub fn rate_lower_prior<T: Scalar>(t: usize) -> Result<T> {
    check_strength(t)?;
    Ok(T::LOG2_E() / T::from_count(t as u64) * survival_factor::<T>(t))
}

/// `1 / ⌊t/2⌋`. The asymptotic rate is strictly below this value.
pub fn rate_upper<T: Scalar>(t: usize) -> Result<T> {
    check_strength(t)?;
    Ok(T::from_count((t / 2) as u64).recip())
}

/// Probability `s·p·(1-p)^(s-1)` that a row of `s` Bernoulli(p) columns has weight exactly one.
pub fn q<T: Scalar>(s: usize, p: T) -> Result<T> {
    ensure!(s >= 1, Domain, "s must be >= 1");
    check_open_unit(p)?;
    Ok(T::from_count(s as u64) * p * (T::from_count(s as u64 - 1) * (-p).ln_1p()).exp())
}

fn ln_prob_violation<T: Scalar>(s: usize, p: T, l: usize, d: usize) -> Result<T> {
    ensure!(s >= 2, Domain, "subset size s must be >= 2, got {s}");
    ensure!(d >= 1 && d <= l, Domain, "need 1 <= d <= l, got d = {d}, l = {l}");
    let q = q(s, p)?;
    let (ln_q, ln_1mq) = (q.ln(), (-q).ln_1p());
    let terms: Vec<T> = (0..d)
        .map(|i| {
            ln_binomial::<T>(l as u64, i as u64)
                + T::from_count(i as u64) * ln_q
                + T::from_count((l - i) as u64) * ln_1mq
        })
        .collect();
    Ok(log_sum_exp(&terms))
}

/// Probability that `s` random columns of length `l` have at most `d - 1` weight-one rows:
/// the lower tail `P(Bin(l, q(s, p)) <= d - 1)`.
pub fn prob_violation<T: Scalar>(s: usize, p: T, l: usize, d: usize) -> Result<T> {
    let v = ln_prob_violation(s, p, l, d)?.exp();
    Ok(v.max(T::zero()).min(T::one()))
}

/// Exact expected number of violated subsets of size `2..=min(t, n)` in a random
/// `l × n` matrix: `Σ_s C(n, s) · prob_violation(s, p, l, d)`.
pub fn expected_violations<T: Scalar>(n: usize, t: usize, d: usize, l: usize, p: T) -> Result<T> {
    ensure!(n >= 2, Domain, "n must be >= 2, got {n}");
    check_strength(t)?;
    let mut terms = Vec::with_capacity(t);
    for s in 2..=t.min(n) {
        terms.push(ln_binomial::<T>(n as u64, s as u64) + ln_prob_violation(s, p, l, d)?);
    }
    Ok(log_sum_exp(&terms).exp())
}

/// The looser estimate `d · l^d · Σ_{s=2..t} n^s (1 - q(s, 1/t))^l` that dominates
/// [`expected_violations`] at `p = 1/t`.
pub fn expected_violations_union_estimate<T: Scalar>(n: usize, t: usize, d: usize, l: usize) -> Result<T> {
    ensure!(n >= 2, Domain, "n must be >= 2, got {n}");
    check_strength(t)?;
    ensure!(d >= 1 && d <= l, Domain, "need 1 <= d <= l, got d = {d}, l = {l}");
    let p = T::from_count(t as u64).recip();
    let ln_n = T::from_count(n as u64).ln();
    let mut terms = Vec::with_capacity(t);
    for s in 2..=t {
        let qs = q(s, p)?;
        terms.push(T::from_count(s as u64) * ln_n + T::from_count(l as u64) * (-qs).ln_1p());
    }
    let prefix = T::from_count(d as u64).ln() + T::from_count(d as u64) * T::from_count(l as u64).ln();
    Ok((prefix + log_sum_exp(&terms)).exp())
}

/// Finite-length rate target
/// `r(t,d,l,f) = log2(e)/(t-1)·(1-1/t)^(t-1) - log2(2f(t-1)d·l^d)/l - 2/l`.
pub fn finite_rate<T: Scalar>(t: usize, d: usize, l: usize, f: T) -> Result<T> {
    check_strength(t)?;
    ensure!(d >= 1, Domain, "d must be >= 1, got {d}");
    ensure!(l > d, Domain, "length l = {l} must exceed d = {d}");
    ensure!(f.is_finite() && f > T::zero(), Domain, "f must be a positive real, got {f}");
    let lf = T::from_count(l as u64);
    let two = T::lit(2.0);
    let penalty = (two * f * T::from_count((t - 1) as u64) * T::from_count(d as u64)).log2()
        + T::from_count(d as u64) * lf.log2();
    Ok(rate_lower_new::<T>(t)? - penalty / lf - two / lf)
}

fn check_cff(w: usize, r: usize) -> Result<()> {
    ensure!(w >= 1 && r >= 1, Domain, "w and r must be >= 1, got w = {w}, r = {r}");
    Ok(())
}

/// `ln(w^w r^r / (w+r)^(w+r))`, the log of `q = p^w (1-p)^r` at `p = w/(w+r)`.
fn ln_cff_core<T: Scalar>(w: usize, r: usize) -> T {
    let (wf, rf) = (T::from_count(w as u64), T::from_count(r as u64));
    let sum = wf + rf;
    wf * wf.ln() + rf * rf.ln() - sum * sum.ln()
}

/// `w^w r^r / (w+r)^(w+r)`.
fn cff_core<T: Scalar>(w: usize, r: usize) -> T {
    if w + r <= 64 {
        let (wf, rf) = (T::from_count(w as u64), T::from_count(r as u64));
        let sum = wf + rf;
        return (wf / sum).powi(w as i32) * (rf / sum).powi(r as i32);
    }
    ln_cff_core::<T>(w, r).exp()
}

/// Alteration lower bound `w^w r^r / ((w+r-1)(w+r)^(w+r))` for cover-free families.
pub fn cff_rate_alteration<T: Scalar>(w: usize, r: usize) -> Result<T> {
    check_cff(w, r)?;
    if w + r <= 64 {
        return Ok(cff_core::<T>(w, r) / T::from_count((w + r - 1) as u64));
    }
    Ok((ln_cff_core::<T>(w, r) - T::from_count((w + r - 1) as u64).ln()).exp())
}

/// Lovász-Local-Lemma bound `w^w r^r / (8(w+r-1)(w+r)^(w+r))`.
pub fn cff_rate_deng<T: Scalar>(w: usize, r: usize) -> Result<T> {
    check_cff(w, r)?;
    if w + r <= 64 {
        return Ok(cff_core::<T>(w, r) / (T::lit(8.0) * T::from_count((w + r - 1) as u64)));
    }
    Ok((ln_cff_core::<T>(w, r) - T::lit(8.0).ln() - T::from_count((w + r - 1) as u64).ln()).exp())
}

/// Chernoff bound `w^w r^r / (w+r)^(w+r+1)`.
///
/// The three cover-free bounds switch to log space once `w + r > 64`.
pub fn cff_rate_bui<T: Scalar>(w: usize, r: usize) -> Result<T> {
    check_cff(w, r)?;
    if w + r <= 64 {
        return Ok(cff_core::<T>(w, r) / T::from_count((w + r) as u64));
    }
    Ok((ln_cff_core::<T>(w, r) - T::from_count((w + r) as u64).ln()).exp())
}

/// Finite-length target for the cover-free alteration at `p = w/(w+r)`:
/// `log2(e)·q/(w+r-1) - log2(2f·d·l^d)/l - 2/l` with `q = w^w r^r/(w+r)^(w+r)`.
pub fn cff_finite_rate<T: Scalar>(w: usize, r: usize, d: usize, l: usize, f: T) -> Result<T> {
    check_cff(w, r)?;
    ensure!(d >= 1, Domain, "d must be >= 1, got {d}");
    ensure!(l > d, Domain, "length l = {l} must exceed d = {d}");
    ensure!(f.is_finite() && f > T::zero(), Domain, "f must be a positive real, got {f}");
    let lf = T::from_count(l as u64);
    let two = T::lit(2.0);
    let main = T::LOG2_E() * cff_core::<T>(w, r) / T::from_count((w + r - 1) as u64);
    let penalty = (two * f * T::from_count(d as u64)).log2() + T::from_count(d as u64) * lf.log2();
    Ok(main - penalty / lf - two / lf)
}
