//! Direct-count reference implementations, written from the definitions with plain loops
//! over `CodeMatrix::get` and sharing nothing with the library's kernels.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wsc::CodeMatrix;

/// All `k`-subsets of `items`, lexicographic.
pub fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

pub fn rows_with_exactly_one(m: &CodeMatrix, cols: &[usize]) -> usize {
    (0..m.length()).filter(|&i| cols.iter().filter(|&&j| m.get(i, j)).count() == 1).count()
}

pub fn naive_violations(m: &CodeMatrix, t: usize, d: usize) -> u64 {
    let live = m.live_indices();
    (2..=t).flat_map(|s| subsets(&live, s)).filter(|s| rows_with_exactly_one(m, s) < d).count() as u64
}

pub fn naive_is_weak(m: &CodeMatrix, t: usize, d: usize) -> bool {
    naive_violations(m, t, d) == 0
}

pub fn naive_min_distance(m: &CodeMatrix) -> usize {
    let live = m.live_indices();
    subsets(&live, 2)
        .iter()
        .map(|p| (0..m.length()).filter(|&i| m.get(i, p[0]) != m.get(i, p[1])).count())
        .min()
        .unwrap_or(usize::MAX)
}

pub fn naive_cff(m: &CodeMatrix, w: usize, r: usize, d: usize) -> bool {
    let live = m.live_indices();
    for x in subsets(&live, w) {
        let rest: Vec<usize> = live.iter().copied().filter(|c| !x.contains(c)).collect();
        for y in subsets(&rest, r) {
            let count =
                (0..m.length()).filter(|&i| x.iter().all(|&j| m.get(i, j)) && y.iter().all(|&j| !m.get(i, j))).count();
            if count < d {
                return false;
            }
        }
    }
    true
}

/// Independent sampler, not the library's: column-by-column Bernoulli bits via `gen_bool`.
pub fn random_matrix(rng: &mut ChaCha8Rng, l: usize, n: usize, p: f64) -> CodeMatrix {
    let cols: Vec<Vec<bool>> = (0..n).map(|_| (0..l).map(|_| rng.gen_bool(p)).collect()).collect();
    CodeMatrix::from_columns(l, &cols).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
