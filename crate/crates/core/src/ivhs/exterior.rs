//! Exterior-power bases indexed by strictly increasing index tuples.
//!
//! A `k`-subset of `{0, .., n-1}` is stored as a `u32` bitmask; bases are
//! enumerated in lexicographic order of the sorted tuples.

use crate::error::{Error, Result};

/// Largest ambient dimension a bitmask can index.
pub const MAX_DIM: usize = 32;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// The `k`-subsets of an `n`-element index set, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combinations {
    n: usize,
    k: usize,
    masks: Vec<u32>,
    // binom[m][j] = C(m, j)
    binom: Vec<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::OrderOutOfRange(format!(
                "ambient dimension {n} exceeds {MAX_DIM}"
            )));
        }
        let binom = (0..=n)
            .map(|m| (0..=k).map(|j| binomial(m, j)).collect())
            .collect();
        let mut masks = Vec::with_capacity(binomial(n, k));
        if k <= n {
            let mut tuple: Vec<usize> = (0..k).collect();
            loop {
                masks.push(tuple.iter().fold(0u32, |m, &i| m | 1 << i));
                // advance to the next tuple in lex order
                let Some(pos) = (0..k).rev().find(|&i| tuple[i] < n - k + i) else {
                    break;
                };
                tuple[pos] += 1;
                for j in pos + 1..k {
                    tuple[j] = tuple[j - 1] + 1;
                }
            }
        }
        Ok(Combinations { n, k, masks, binom })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, i: usize) -> u32 {
        self.masks[i]
    }

    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    /// Lexicographic position of a `k`-subset.
    pub fn rank(&self, mask: u32) -> usize {
        debug_assert_eq!(mask.count_ones() as usize, self.k);
        let mut r = 0;
        let mut next = 0;
        for (i, c) in indices(mask).enumerate() {
            for j in next..c {
                r += self.binom[self.n - 1 - j][self.k - 1 - i];
            }
            next = c + 1;
        }
        r
    }
}

/// Sorted members of a subset.
pub fn indices(mask: u32) -> impl Iterator<Item = usize> {
    (0..MAX_DIM).filter(move |&i| mask & (1 << i) != 0)
}

/// Number of members strictly below `i`.
#[inline]
pub fn count_below(mask: u32, i: usize) -> usize {
    (mask & ((1u32 << i) - 1)).count_ones() as usize
}

/// `(-1)^e` as an `i64`.
#[inline]
pub fn parity_sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Wedges `e_i` onto the front of `e_mask`: returns the sorted mask and the
/// sign of the reordering, or `None` when `i` is already present.
#[inline]
pub fn wedge_front(i: usize, mask: u32) -> Option<(u32, i64)> {
    if mask & (1 << i) != 0 {
        return None;
    }
    Some((mask | 1 << i, parity_sign(count_below(mask, i))))
}

/// Comultiplication `e_I -> sum_k sign * e_k (x) e_{I \ k}`, dual to the wedge
/// `e*_k (x) e*_J -> e*_k ^ e*_J`.
pub fn comultiply(mask: u32) -> Vec<(usize, u32, i64)> {
    indices(mask)
        .map(|k| (k, mask & !(1 << k), parity_sign(count_below(mask, k))))
        .collect()
}
