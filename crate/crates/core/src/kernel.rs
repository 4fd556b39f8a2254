//! Depth-first enumeration of column subsets with incremental "exactly one" accumulators.
//!
//! Level `k` of the accumulator stack holds, for the first `k + 1` chosen columns,
//! the rows covered at least once (`ones`) and at least twice (`twos`). Extending a
//! prefix by one column costs one pass over that column's words.

use std::ops::Range;

use crate::matrix::CodeMatrix;

/// What the scanner does after a subset has been visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Visit {
    Continue,
    Stop,
    /// Mark the largest column of the visited subset dead and continue.
    KillLast,
}

pub(crate) struct SubsetScanner<'a> {
    bits: &'a [u64],
    wpc: usize,
    n: usize,
    alive: Vec<bool>,
    ones: Vec<u64>,
    twos: Vec<u64>,
    stack: Vec<usize>,
}

impl<'a> SubsetScanner<'a> {
    pub fn new(m: &'a CodeMatrix, max_size: usize) -> Self {
        let wpc = m.words_per_col();
        let levels = max_size.max(1);
        Self {
            bits: m.raw_bits(),
            wpc,
            n: m.size(),
            alive: m.live_mask().to_vec(),
            ones: vec![0; levels * wpc],
            twos: vec![0; levels * wpc],
            stack: Vec::with_capacity(levels),
        }
    }

    pub fn alive(&self) -> &[bool] {
        &self.alive
    }

    /// Visits, in lexicographic order, every subset of `size` alive columns whose
    /// smallest index lies in `firsts`. `visit` receives the sorted subset and its
    /// weight-one row count. Returns `true` if a visit asked to stop.
    pub fn scan<F>(&mut self, size: usize, firsts: Range<usize>, visit: &mut F) -> bool
    where
        F: FnMut(&[usize], usize) -> Visit,
    {
        debug_assert!(size >= 1 && size * self.wpc <= self.ones.len());
        self.stack.clear();
        let hi = firsts.end.min(self.n);
        self.descend(size, 0, firsts.start, hi, visit)
    }

    fn descend<F>(&mut self, size: usize, depth: usize, lo: usize, hi: usize, visit: &mut F) -> bool
    where
        F: FnMut(&[usize], usize) -> Visit,
    {
        let remaining_after = size - depth - 1;
        let hi = hi.min(self.n.saturating_sub(remaining_after));
        for col in lo..hi {
            if !self.alive[col] {
                continue;
            }
            self.stack.push(col);
            if remaining_after == 0 {
                let count = self.leaf_count(depth, col);
                match visit(&self.stack, count) {
                    Visit::Continue => {}
                    Visit::Stop => {
                        self.stack.pop();
                        return true;
                    }
                    Visit::KillLast => self.alive[col] = false,
                }
            } else {
                self.store_level(depth, col);
                if self.descend(size, depth + 1, col + 1, self.n, visit) {
                    self.stack.pop();
                    return true;
                }
            }
            self.stack.pop();
        }
        false
    }

    fn column(&self, col: usize) -> &[u64] {
        &self.bits[col * self.wpc..(col + 1) * self.wpc]
    }

    fn store_level(&mut self, depth: usize, col: usize) {
        let w = self.wpc;
        let start = col * w;
        let c = &self.bits[start..start + w];
        if depth == 0 {
            self.ones[..w].copy_from_slice(c);
            self.twos[..w].fill(0);
            return;
        }
        let (prev_o, cur_o) = self.ones.split_at_mut(depth * w);
        let (prev_t, cur_t) = self.twos.split_at_mut(depth * w);
        let prev_o = &prev_o[(depth - 1) * w..];
        let prev_t = &prev_t[(depth - 1) * w..];
        for k in 0..w {
            cur_t[k] = prev_t[k] | (prev_o[k] & c[k]);
            cur_o[k] = prev_o[k] | c[k];
        }
    }

    fn leaf_count(&self, depth: usize, col: usize) -> usize {
        let c = self.column(col);
        if depth == 0 {
            return c.iter().map(|w| w.count_ones() as usize).sum();
        }
        let w = self.wpc;
        let base = (depth - 1) * w;
        let ones = &self.ones[base..base + w];
        let twos = &self.twos[base..base + w];
        ones.iter().zip(twos).zip(c).map(|((&o, &t), &x)| ((o | x) & !(t | (o & x))).count_ones() as usize).sum()
    }
}
