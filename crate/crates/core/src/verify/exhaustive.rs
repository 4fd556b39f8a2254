//! Exact maximum code size for tiny lengths by branch and bound over subsets of F_2^l.

use crate::error::{ensure, Result};
use crate::matrix::CodeMatrix;

/// Largest length accepted by [`max_code_exhaustive`].
pub const EXHAUSTIVE_MAX_LENGTH: usize = 4;

struct Search {
    t: usize,
    d: usize,
    universe: usize,
    chosen: Vec<u64>,
    best: Vec<u64>,
}

fn exactly_one_rows(vectors: &[u64]) -> u32 {
    let (mut ones, mut twos) = (0u64, 0u64);
    for &v in vectors {
        twos |= ones & v;
        ones |= v;
    }
    (ones & !twos).count_ones()
}

impl Search {
    /// Every subset of `chosen` of size 1..t-1, joined with `v`, keeps >= d weight-one rows.
    fn compatible(&self, v: u64) -> bool {
        let mut buf = Vec::with_capacity(self.t);
        buf.push(v);
        self.extend_ok(&mut buf, 0)
    }

    fn extend_ok(&self, buf: &mut Vec<u64>, start: usize) -> bool {
        if buf.len() == self.t {
            return true;
        }
        for i in start..self.chosen.len() {
            buf.push(self.chosen[i]);
            let ok = (exactly_one_rows(buf) as usize) >= self.d && self.extend_ok(buf, i + 1);
            buf.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    fn run(&mut self, next: u64) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        let remaining = self.universe as u64 - next;
        if self.chosen.len() as u64 + remaining <= self.best.len() as u64 {
            return;
        }
        for v in next..self.universe as u64 {
            if (self.chosen.len() as u64) + (self.universe as u64 - v) <= self.best.len() as u64 {
                return;
            }
            if self.compatible(v) {
                self.chosen.push(v);
                self.run(v + 1);
                self.chosen.pop();
            }
        }
    }
}

/// Maximum size `F(t, d; l)` of a weak `(t, d)` code of length `l <= 4` (a set of distinct
/// vectors), with a witness whose columns are listed in increasing binary value.
pub fn max_code_exhaustive(l: usize, t: usize, d: usize) -> Result<(usize, CodeMatrix)> {
    ensure!(l <= EXHAUSTIVE_MAX_LENGTH, Capability, "exhaustive search supports l <= {EXHAUSTIVE_MAX_LENGTH}, got {l}");
    ensure!(l >= 1, Domain, "l must be >= 1");
    ensure!(t >= 2, Domain, "strength t must be >= 2, got {t}");
    ensure!(d >= 1, Domain, "d must be >= 1, got {d}");
    let mut search = Search { t, d, universe: 1 << l, chosen: Vec::new(), best: Vec::new() };
    search.run(0);
    let columns: Vec<Vec<bool>> = search.best.iter().map(|&v| (0..l).map(|i| v >> i & 1 == 1).collect()).collect();
    Ok((search.best.len(), CodeMatrix::from_columns(l, &columns)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::verify::verify_weak;

    /// Independent oracle: every subset of F_2^l, checked straight from the definition.
    fn brute_force_max(l: usize, t: usize, d: usize) -> usize {
        let universe = 1usize << l;
        let mut best = 0;
        for code in 0u64..1 << universe {
            let members: Vec<usize> = (0..universe).filter(|&v| code >> v & 1 == 1).collect();
            if members.len() <= best {
                continue;
            }
            let mut ok = true;
            'outer: for sub in 1u64..1 << members.len() {
                let s = sub.count_ones() as usize;
                if s < 2 || s > t {
                    continue;
                }
                let picked: Vec<usize> =
                    (0..members.len()).filter(|&k| sub >> k & 1 == 1).map(|k| members[k]).collect();
                let rows = (0..l).filter(|&i| picked.iter().filter(|&&v| v >> i & 1 == 1).count() == 1).count();
                if rows < d {
                    ok = false;
                    break 'outer;
                }
            }
            if ok {
                best = members.len();
            }
        }
        best
    }

    #[test]
    fn small_values() {
        assert_eq!(max_code_exhaustive(2, 2, 1).unwrap().0, 4);
        assert_eq!(max_code_exhaustive(2, 2, 2).unwrap().0, 2);
        assert_eq!(max_code_exhaustive(3, 3, 1).unwrap().0, 5);
    }

    #[test]
    fn agrees_with_brute_force_for_l_up_to_3() {
        for l in 1..=3 {
            for t in 2..=4 {
                for d in 1..=l {
                    let (f, witness) = max_code_exhaustive(l, t, d).unwrap();
                    assert_eq!(f, brute_force_max(l, t, d), "l={l} t={t} d={d}");
                    assert_eq!(witness.size(), f);
                    assert!(verify_weak(&witness, t, d, Some(1)).unwrap().ok);
                }
            }
        }
    }

    #[test]
    fn rejects_large_l() {
        assert!(matches!(max_code_exhaustive(5, 2, 1), Err(Error::Capability(_))));
    }
}
