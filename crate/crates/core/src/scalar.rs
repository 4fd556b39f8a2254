//! Scalar abstraction and the log-space numerics shared by the bound calculators.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar the bound calculators are generic over (`f32` or `f64`).
pub trait Scalar: Float + FloatConst + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` literal; exact for `f64`, rounded for `f32`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("integer representable")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the gamma function for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma<T: Scalar>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // reflection: Γ(x)Γ(1−x) = π / sin(πx)
        let pi = T::PI();
        return (pi / (pi * x).sin()).abs().ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = T::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (x + T::from_count(i as u64));
    }
    let t = x + T::lit(LANCZOS_G) + half;
    half * (T::TAU()).ln() + (x + half) * t.ln() - t + acc.ln()
}

/// `C(n, k)` as an exact integer, or `None` when it does not fit in `u128`.
pub fn binomial_exact(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc * (n - j) is divisible by (j + 1) at every step
        acc = acc.checked_mul((n - j) as u128)? / (j as u128 + 1);
    }
    Some(acc)
}

/// `ln C(n, k)`; exact integer arithmetic when the coefficient fits, log-gamma otherwise.
/// Returns `-inf` for `k > n`.
pub fn ln_binomial<T: Scalar>(n: u64, k: u64) -> T {
    if k > n {
        return T::neg_infinity();
    }
    if let Some(c) = binomial_exact(n, k) {
        return T::from_u128(c).expect("finite").ln();
    }
    let one = T::one();
    let (nf, kf) = (T::from_count(n), T::from_count(k));
    ln_gamma(nf + one) - ln_gamma(kf + one) - ln_gamma(nf - kf + one)
}

/// `ln Σ exp(x_i)` with a max shift and Neumaier-compensated accumulation.
pub fn log_sum_exp<T: Scalar>(terms: &[T]) -> T {
    let max = terms.iter().copied().fold(T::neg_infinity(), T::max);
    if max == T::neg_infinity() {
        return max;
    }
    let mut sum = T::zero();
    let mut comp = T::zero();
    for &x in terms {
        let v = (x - max).exp();
        let s = sum + v;
        if sum.abs() >= v.abs() {
            comp = comp + ((sum - s) + v);
        } else {
            comp = comp + ((v - s) + sum);
        }
        sum = s;
    }
    max + (sum + comp).ln()
}
