use serde::{Deserialize, Serialize};

use super::{
    cff_rate_alteration, cff_rate_bui, cff_rate_deng, finite_rate, rate_lower_new, rate_lower_prior, rate_upper,
};
use crate::error::{ensure, Result};
use crate::scalar::Scalar;

/// One strength's bounds. `finite_rate` is present when a length was requested.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow<T> {
    pub t: usize,
    pub d: usize,
    pub lower_prior: T,
    pub lower_new: T,
    pub upper: T,
    pub finite_rate: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CffBoundRow<T> {
    pub w: usize,
    pub r: usize,
    pub alteration: T,
    pub deng: T,
    pub bui: T,
}

/// Rate bounds over a range of strengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundTable<T> {
    pub l: Option<usize>,
    pub f: T,
    pub rows: Vec<BoundRow<T>>,
}

impl<T: Scalar + Serialize> BoundTable<T> {
    /// Rows for `t` in `t_min..=t_max`; the finite-rate column is evaluated at `(l, f)` if `l` is given.
    pub fn weak(t_min: usize, t_max: usize, d: usize, l: Option<usize>, f: T) -> Result<Self> {
        ensure!(t_min >= 2, Domain, "t must start at 2 or above, got {t_min}");
        ensure!(t_max >= t_min, Domain, "empty strength range {t_min}..={t_max}");
        ensure!(d >= 1, Domain, "d must be >= 1, got {d}");
        let rows = (t_min..=t_max)
            .map(|t| {
                Ok(BoundRow {
                    t,
                    d,
                    lower_prior: rate_lower_prior(t)?,
                    lower_new: rate_lower_new(t)?,
                    upper: rate_upper(t)?,
                    finite_rate: l.map(|l| finite_rate(t, d, l, f)).transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { l, f, rows })
    }

    /// CSV with header `t,d,lower_prior,lower_new,upper,finite_rate`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            w.serialize(row)?;
        }
        if self.rows.is_empty() {
            w.write_record(["t", "d", "lower_prior", "lower_new", "upper", "finite_rate"])?;
        }
        finish_csv(w)
    }
}

/// `(w, r)` grid of cover-free rate bounds for `w, r` in `1..=max`.
pub fn cff_table<T: Scalar>(max: usize) -> Result<Vec<CffBoundRow<T>>> {
    let mut rows = Vec::new();
    for w in 1..=max {
        for r in 1..=max {
            rows.push(CffBoundRow {
                w,
                r,
                alteration: cff_rate_alteration(w, r)?,
                deng: cff_rate_deng(w, r)?,
                bui: cff_rate_bui(w, r)?,
            });
        }
    }
    Ok(rows)
}

pub fn cff_table_csv<T: Scalar + Serialize>(rows: &[CffBoundRow<T>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
