//! Hamiltonian paths over sets of basis strings under Hamming distance.

use crate::bits::BasisString;
use crate::error::{Error, Result};

/// Largest set [`optimal_path`] accepts.
pub const OPTIMAL_PATH_LIMIT: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathResult {
    pub order: Vec<BasisString>,
    /// Sum of Hamming distances between consecutive strings.
    pub length: usize,
}

impl PathResult {
    fn from_order(order: Vec<BasisString>) -> Self {
        let length = path_length(&order);
        PathResult { order, length }
    }
}

pub fn path_length(order: &[BasisString]) -> usize {
    order.windows(2).map(|w| w[0].hamming_distance(&w[1])).sum()
}

/// Sorted copy of `set`, rejecting empty input, duplicates and mixed lengths.
fn sorted_set(set: &[BasisString]) -> Result<Vec<BasisString>> {
    let Some(first) = set.first() else {
        return Err(Error::invalid("path over an empty set"));
    };
    if let Some(x) = set.iter().find(|x| x.len() != first.len()) {
        return Err(Error::invalid(format!(
            "string {x} has length {}, expected {}",
            x.len(),
            first.len()
        )));
    }
    let mut v = set.to_vec();
    v.sort();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::invalid(format!("duplicate string {}", w[0])));
    }
    Ok(v)
}

/// Nearest-neighbour path: start at the lightest string, then repeatedly move
/// to the closest unvisited one. Ties go to the lexicographically smaller string.
pub fn greedy_path(set: &[BasisString]) -> Result<PathResult> {
    let mut rest = sorted_set(set)?;
    let start = (0..rest.len())
        .min_by_key(|&i| rest[i].hamming_weight())
        .unwrap();
    let mut order = Vec::with_capacity(rest.len());
    order.push(rest.remove(start));
    while !rest.is_empty() {
        let cur = order.last().unwrap();
        // `rest` stays sorted, so min_by_key keeps the first (smallest) on ties
        let next = (0..rest.len())
            .min_by_key(|&i| cur.hamming_distance(&rest[i]))
            .unwrap();
        order.push(rest.remove(next));
    }
    Ok(PathResult::from_order(order))
}

/// Shortest Hamiltonian path by Held–Karp over all start points. Among
/// shortest paths the lexicographically smallest order is returned.
pub fn optimal_path(set: &[BasisString]) -> Result<PathResult> {
    if set.len() > OPTIMAL_PATH_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "exact path search is limited to {OPTIMAL_PATH_LIMIT} strings, got {}",
            set.len()
        )));
    }
    let v = sorted_set(set)?;
    let s = v.len();
    let d: Vec<Vec<u32>> = v
        .iter()
        .map(|a| v.iter().map(|b| a.hamming_distance(b) as u32).collect())
        .collect();
    let full = (1usize << s) - 1;
    // g[mask][u]: shortest completion from u once exactly `mask` is visited
    let mut g = vec![u32::MAX; (full + 1) * s];
    for mask in (1..=full).rev() {
        for u in (0..s).filter(|u| mask >> u & 1 == 1) {
            let best = if mask == full {
                0
            } else {
                (0..s)
                    .filter(|w| mask >> w & 1 == 0)
                    .map(|w| d[u][w] + g[(mask | 1 << w) * s + w])
                    .min()
                    .unwrap()
            };
            g[mask * s + u] = best;
        }
    }
    // walking forward and taking the smallest index that stays optimal gives
    // the lexicographically smallest order, since `v` is sorted
    let mut cur = (0..s).min_by_key(|&u| g[(1 << u) * s + u]).unwrap();
    let mut mask = 1usize << cur;
    let mut order = vec![v[cur].clone()];
    while mask != full {
        let here = g[mask * s + cur];
        let next = (0..s)
            .find(|&w| mask >> w & 1 == 0 && d[cur][w] + g[(mask | 1 << w) * s + w] == here)
            .unwrap();
        mask |= 1 << next;
        cur = next;
        order.push(v[cur].clone());
    }
    Ok(PathResult::from_order(order))
}

/// Binomial coefficient, or `None` when it does not fit in a `u64`.
pub fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// All weight-`k` strings of length `n` in revolving-door order: consecutive
/// strings differ by moving a single one. Loopless, O(1) work per step.
///
/// Iterating yields the strings; [`step`](Self::step) exposes the swap alone
/// for consumers that only need the transitions.
#[derive(Debug, Clone)]
pub struct ConstantWeightPath {
    k: usize,
    // c[1..=k] ascending, c[k + 1] = c[k + 2] = n as sentinels
    c: Vec<usize>,
    current: BasisString,
    started: bool,
    done: bool,
}

pub fn constant_weight_path(n: usize, k: usize) -> Result<ConstantWeightPath> {
    if k > n {
        return Err(Error::invalid(format!("weight {k} exceeds length {n}")));
    }
    let mut c: Vec<usize> = std::iter::once(0).chain(0..k).collect();
    c.extend([n, n]);
    Ok(ConstantWeightPath {
        k,
        c,
        current: BasisString::from_positions(n, 0..k),
        started: false,
        done: false,
    })
}

impl ConstantWeightPath {
    /// Number of strings the full path visits.
    pub fn count(n: usize, k: usize) -> Option<u64> {
        binomial(n, k)
    }

    /// The string the path currently sits on.
    pub fn current(&self) -> &BasisString {
        &self.current
    }

    /// Advances one string. Returns the two toggled positions, ascending, or
    /// `None` once the path is exhausted.
    pub fn step(&mut self) -> Option<[usize; 2]> {
        self.started = true;
        if self.done {
            return None;
        }
        let Some((out, inn)) = self.swap() else {
            self.done = true;
            return None;
        };
        self.current.toggle(out);
        self.current.toggle(inn);
        Some([out.min(inn), out.max(inn)])
    }

    fn swap(&mut self) -> Option<(usize, usize)> {
        let (k, c) = (self.k, &mut self.c);
        let n = c[k + 1];
        if k == 0 || k == n {
            return None;
        }
        if k % 2 == 1 {
            if c[1] + 1 < c[2] {
                c[1] += 1;
                return Some((c[1] - 1, c[1]));
            }
        } else if c[1] > 0 {
            c[1] -= 1;
            return Some((c[1] + 1, c[1]));
        }
        if k == 1 {
            return None;
        }
        let mut j = 2;
        let mut decrease = k % 2 == 1;
        loop {
            if decrease {
                if c[j] >= j {
                    let out = c[j];
                    c[j] = c[j - 1];
                    c[j - 1] = j - 2;
                    return Some((out, j - 2));
                }
            } else {
                if c[j] + 1 < c[j + 1] {
                    c[j - 1] = c[j];
                    c[j] += 1;
                    return Some((j - 2, c[j]));
                }
                if j + 1 > k {
                    return None;
                }
            }
            j += 1;
            decrease = !decrease;
        }
    }
}

impl Iterator for ConstantWeightPath {
    type Item = BasisString;

    fn next(&mut self) -> Option<BasisString> {
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        self.step().map(|_| self.current.clone())
    }
}
