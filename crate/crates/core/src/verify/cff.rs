//! (w, r; d)-cover-free family verification.

use crate::error::{ensure, Result};
use crate::matrix::{popcount, CodeMatrix};

use super::{verify_weak, VerificationResult, ViolationKind, ViolationReport};

fn check_params(w: usize, r: usize, d: usize) -> Result<()> {
    ensure!(w >= 1, Domain, "w must be >= 1, got {w}");
    ensure!(r >= 1, Domain, "r must be >= 1, got {r}");
    ensure!(d >= 1, Domain, "d must be >= 1, got {d}");
    Ok(())
}

struct CffSearch<'a> {
    m: &'a CodeMatrix,
    live: Vec<usize>,
    w: usize,
    r: usize,
    d: usize,
    x: Vec<usize>,
    y: Vec<usize>,
    /// masks[k] = intersection of the first k+1 members of X; for Y levels, the running difference.
    masks: Vec<Vec<u64>>,
    x_sets: u64,
}

impl<'a> CffSearch<'a> {
    fn apply(&mut self, level: usize, col: usize, intersect: bool) {
        let words = self.m.column_words(col);
        let (before, after) = self.masks.split_at_mut(level);
        let dst = &mut after[0];
        if level == 0 {
            dst.copy_from_slice(words);
            return;
        }
        let src = &before[level - 1];
        for ((o, s), c) in dst.iter_mut().zip(src).zip(words) {
            *o = if intersect { s & c } else { s & !c };
        }
    }

    /// Completes a prefix of positions in `pool` to `want` entries using the smallest
    /// available later positions.
    fn complete(pool: &[usize], chosen: &mut Vec<usize>, after_pos: usize, want: usize) {
        let need = want - chosen.len();
        chosen.extend_from_slice(&pool[after_pos + 1..after_pos + 1 + need]);
    }

    fn report(&self, x: Vec<usize>, y: Vec<usize>) -> ViolationReport {
        let mut mask = self.m.column_words(x[0]).to_vec();
        for &c in &x[1..] {
            for (o, w) in mask.iter_mut().zip(self.m.column_words(c)) {
                *o &= w;
            }
        }
        for &c in &y {
            for (o, w) in mask.iter_mut().zip(self.m.column_words(c)) {
                *o &= !w;
            }
        }
        ViolationReport { subset: x, excluded: y, weight_one_rows: popcount(&mask), kind: ViolationKind::Cff }
    }

    fn search_x(&mut self, depth: usize, start: usize) -> Option<ViolationReport> {
        let n = self.live.len();
        for pos in start..=n - (self.w - depth) {
            let col = self.live[pos];
            self.x.push(col);
            self.apply(depth, col, true);
            if popcount(&self.masks[depth]) < self.d {
                // every completion of this X prefix with any Y is violated
                let mut x = self.x.clone();
                let live = self.live.clone();
                Self::complete(&live, &mut x, pos, self.w);
                let pool: Vec<usize> = live.iter().copied().filter(|c| !x.contains(c)).collect();
                let y = pool[..self.r].to_vec();
                self.x_sets += 1;
                return Some(self.report(x, y));
            }
            let found = if depth + 1 == self.w {
                self.x_sets += 1;
                let pool: Vec<usize> = self.live.iter().copied().filter(|c| !self.x.contains(c)).collect();
                self.search_y(&pool, 0, 0)
            } else {
                self.search_x(depth + 1, pos + 1)
            };
            if found.is_some() {
                return found;
            }
            self.x.pop();
        }
        None
    }

    fn search_y(&mut self, pool: &[usize], depth: usize, start: usize) -> Option<ViolationReport> {
        let level = self.w + depth;
        for pos in start..=pool.len() - (self.r - depth) {
            let col = pool[pos];
            self.y.push(col);
            self.apply(level, col, false);
            if popcount(&self.masks[level]) < self.d {
                let mut y = self.y.clone();
                Self::complete(pool, &mut y, pos, self.r);
                let x = self.x.clone();
                self.y.clear();
                return Some(self.report(x, y));
            }
            if depth + 1 < self.r {
                if let Some(v) = self.search_y(pool, depth + 1, pos + 1) {
                    return Some(v);
                }
            }
            self.y.pop();
        }
        None
    }
}

/// First violated `(X, Y)` pair in canonical order (X lexicographic, then Y
/// lexicographic among the remaining live columns), or `None` if the live columns form
/// a `(w, r; d)`-cover-free family. Vacuously `None` when fewer than `w + r` columns are live.
pub fn cff_first_violation(m: &CodeMatrix, w: usize, r: usize, d: usize) -> Result<Option<ViolationReport>> {
    Ok(cff_search(m, w, r, d)?.0)
}

fn cff_search(m: &CodeMatrix, w: usize, r: usize, d: usize) -> Result<(Option<ViolationReport>, u64)> {
    check_params(w, r, d)?;
    let live = m.live_indices();
    if live.len() < w + r {
        return Ok((None, 0));
    }
    let mut search = CffSearch {
        m,
        live,
        w,
        r,
        d,
        x: Vec::with_capacity(w),
        y: Vec::with_capacity(r),
        masks: vec![vec![0; m.words_per_col()]; w + r],
        x_sets: 0,
    };
    let found = search.search_x(0, 0);
    Ok((found, search.x_sets))
}

/// `true` iff for every disjoint `X`, `Y` of live columns with `|X| = w`, `|Y| = r`,
/// at least `d` rows are 1 on all of `X` and 0 on all of `Y`.
pub fn cff_verify(m: &CodeMatrix, w: usize, r: usize, d: usize) -> Result<bool> {
    Ok(cff_first_violation(m, w, r, d)?.is_none())
}

/// Report form of [`cff_verify`]. Holds at most the first violation; `subsets_checked`
/// counts the `X` families examined.
pub fn cff_verify_report(m: &CodeMatrix, w: usize, r: usize, d: usize) -> Result<VerificationResult> {
    let (found, x_sets) = cff_search(m, w, r, d)?;
    Ok(VerificationResult {
        ok: found.is_none(),
        violations: found.into_iter().collect(),
        subsets_checked: x_sets,
        truncated: false,
    })
}

/// Cross-check harness for "(1, r; 1)-cover-free implies weak (r, 1)": returns the
/// conjunction of both verdicts. Requires more than `r` live columns.
pub fn weak_from_cff_check(m: &CodeMatrix, r: usize) -> Result<bool> {
    ensure!(r >= 2, Domain, "r must be >= 2, got {r}");
    ensure!(m.live_count() > r, Precondition, "need n >= r + 1 = {} live columns, got {}", r + 1, m.live_count());
    let cff = cff_verify(m, 1, r, 1)?;
    let weak = verify_weak(m, r, 1, Some(1))?.ok;
    debug_assert!(!cff || weak, "(1,{r};1)-cover-free family is not weak ({r},1)");
    Ok(cff && weak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn m(cols: &[&str]) -> CodeMatrix {
        CodeMatrix::from_bit_strings(cols).unwrap()
    }

    /// Direct enumeration of all disjoint (X, Y) pairs.
    fn naive_cff(m: &CodeMatrix, w: usize, r: usize, d: usize) -> bool {
        let n = m.size();
        let l = m.length();
        let subsets = |k: usize, avoid: u64| -> Vec<u64> {
            (0u64..1 << n).filter(|s| s.count_ones() as usize == k && s & avoid == 0).collect()
        };
        for x in subsets(w, 0) {
            for y in subsets(r, x) {
                let good = (0..l)
                    .filter(|&i| {
                        (0..n).all(|j| x >> j & 1 == 0 || m.get(i, j))
                            && (0..n).all(|j| y >> j & 1 == 0 || !m.get(i, j))
                    })
                    .count();
                if good < d {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn examples() {
        let id = CodeMatrix::identity(3).unwrap();
        assert!(cff_verify(&id, 1, 1, 1).unwrap());
        assert!(!cff_verify(&m(&["110", "011", "110"]), 1, 1, 1).unwrap());
        assert!(!cff_verify(&id, 2, 1, 1).unwrap());
        // vacuous: n < w + r
        assert!(cff_verify(&m(&["11", "11"]), 2, 1, 1).unwrap());
    }

    #[test]
    fn first_violation_is_canonical() {
        let id = CodeMatrix::identity(4).unwrap();
        let v = cff_first_violation(&id, 2, 1, 1).unwrap().unwrap();
        assert_eq!((v.subset, v.excluded, v.weight_one_rows), (vec![0, 1], vec![2], 0));
        let v = cff_first_violation(&m(&["1100", "0110", "1110"]), 1, 1, 1).unwrap().unwrap();
        // 1100 \ 0110 = {0}, 1100 \ 1110 = {} -> X = {0}, Y = {2}
        assert_eq!((v.subset, v.excluded), (vec![0], vec![2]));
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        for seed in 0..300u64 {
            let n = 2 + (seed % 5) as usize;
            let l = 1 + (seed % 4) as usize;
            let p = [0.3, 0.5, 0.7][(seed % 3) as usize];
            let code = crate::construct::sample_random_code(l, n, p, seed).unwrap();
            for (w, r, d) in [(1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1), (1, 1, 2), (2, 1, 2)] {
                assert_eq!(
                    cff_verify(&code, w, r, d).unwrap(),
                    naive_cff(&code, w, r, d),
                    "seed={seed} w={w} r={r} d={d}"
                );
            }
        }
    }

    #[test]
    fn weak_from_cff_examples() {
        assert!(weak_from_cff_check(&CodeMatrix::identity(4).unwrap(), 2).unwrap());
        assert!(!weak_from_cff_check(&m(&["110", "011", "110"]), 2).unwrap());
        assert!(!weak_from_cff_check(&m(&["110", "011", "101", "111"]), 2).unwrap());
        assert!(matches!(weak_from_cff_check(&CodeMatrix::identity(2).unwrap(), 2), Err(Error::Precondition(_))));
    }
}
