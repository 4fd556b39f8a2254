//! Cover-free family rate bounds as exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use crate::error::{ensure, Result};

fn core(w: usize, r: usize) -> Result<(BigRational, BigInt)> {
    ensure!(w >= 1 && r >= 1, Domain, "w and r must be >= 1, got w = {w}, r = {r}");
    let num = Pow::pow(BigInt::from(w), w as u32) * Pow::pow(BigInt::from(r), r as u32);
    let den = Pow::pow(BigInt::from(w + r), (w + r) as u32);
    Ok((BigRational::new(num, den), BigInt::from(w + r - 1)))
}

/// `w^w r^r / ((w+r-1)(w+r)^(w+r))`.
pub fn cff_rate_alteration_exact(w: usize, r: usize) -> Result<BigRational> {
    let (q, span) = core(w, r)?;
    Ok(q / BigRational::from_integer(span))
}

/// `w^w r^r / (8(w+r-1)(w+r)^(w+r))`.
pub fn cff_rate_deng_exact(w: usize, r: usize) -> Result<BigRational> {
    let (q, span) = core(w, r)?;
    Ok(q / BigRational::from_integer(span * 8))
}

/// `w^w r^r / (w+r)^(w+r+1)`.
pub fn cff_rate_bui_exact(w: usize, r: usize) -> Result<BigRational> {
    let (q, _) = core(w, r)?;
    Ok(q / BigRational::from_integer(BigInt::from(w + r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, ToPrimitive};

    #[test]
    fn one_two() {
        let a = cff_rate_alteration_exact(1, 2).unwrap();
        assert_eq!(a, BigRational::new(4.into(), 54.into()));
    }

    #[test]
    fn ratios_are_exact() {
        for w in 1..=16 {
            for r in 1..=16 {
                let a = cff_rate_alteration_exact(w, r).unwrap();
                let d = cff_rate_deng_exact(w, r).unwrap();
                let b = cff_rate_bui_exact(w, r).unwrap();
                assert_eq!(&a / &d, BigRational::from_integer(8.into()));
                assert_eq!(&a / &b, BigRational::new(BigInt::from(w + r), BigInt::from(w + r - 1)));
                let f: f64 = crate::bounds::cff_rate_alteration(w, r).unwrap();
                let rel = (a.to_f64().unwrap() - f).abs() / f;
                assert!(rel < 1e-12, "w={w} r={r} rel={rel}");
                assert!(a > d && a > b && BigRational::one() > a);
            }
        }
    }
}
