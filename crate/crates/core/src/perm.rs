//! Permutations of `[n]` in one-line notation and their statistics.
//!
//! Positions and values are 1-based in every public interface. The slice
//! helpers (`exc_of`, `inv_of`, ...) take a one-line word directly so that
//! sweeps over large families can avoid building a `Perm` per member.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    word: Vec<u32>,
}

impl Perm {
    /// Validates that `word` is a bijection of `{1, ..., n}`.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::InvalidPerm(format!("value {v} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPerm(format!("value {v} repeated")));
            }
        }
        Ok(Perm { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Perm::new(word.clone()).is_ok());
        Perm { word }
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            word: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// `π_i` for 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn exc(&self) -> usize {
        exc_of(&self.word)
    }

    pub fn inv(&self) -> u64 {
        inv_of(&self.word)
    }

    pub fn sgn(&self) -> i8 {
        sgn_of(&self.word)
    }

    pub fn des(&self) -> usize {
        des_of(&self.word)
    }

    /// Positions `i` with `π_i = i`, ascending.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.word
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v as usize == i + 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_derangement(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize != i + 1)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Perm {
            word: other
                .word
                .iter()
                .map(|&j| self.word[j as usize - 1])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut word = vec![0; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v as usize - 1] = i as u32 + 1;
        }
        Perm { word }
    }
}

/// Number of positions `i` with `π_i > i`.
pub fn exc_of(word: &[u32]) -> usize {
    word.iter()
        .enumerate()
        .filter(|&(i, &v)| v as usize > i + 1)
        .count()
}

/// Number of positions `i < n` with `π_i > π_{i+1}`.
pub fn des_of(word: &[u32]) -> usize {
    word.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Inversion count by merge sort, `O(n log n)`.
pub fn inv_of(word: &[u32]) -> u64 {
    let mut buf = word.to_vec();
    let mut scratch = vec![0; word.len()];
    merge_count(&mut buf, &mut scratch)
}

fn merge_count(xs: &mut [u32], scratch: &mut [u32]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (lo, hi) = xs.split_at_mut(mid);
        let (s_lo, s_hi) = scratch.split_at_mut(mid);
        merge_count(lo, s_lo) + merge_count(hi, s_hi)
    };
    let (mut i, mut j) = (0, mid);
    for slot in scratch.iter_mut().take(n) {
        if j >= n || (i < mid && xs[i] <= xs[j]) {
            *slot = xs[i];
            i += 1;
        } else {
            *slot = xs[j];
            // every remaining left element exceeds xs[j]
            count += (mid - i) as u64;
            j += 1;
        }
    }
    xs.copy_from_slice(&scratch[..n]);
    count
}

/// Inversion count by scanning all pairs; the reference for [`inv_of`].
pub fn inv_by_pairs(word: &[u32]) -> u64 {
    let mut count = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                count += 1;
            }
        }
    }
    count
}

/// `(-1)^{inv}`.
pub fn sgn_of(word: &[u32]) -> i8 {
    if inv_of(word).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// One-line notation: digits without separators for `n <= 9`, comma-separated otherwise.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(ToString::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word = if s.contains(',') {
            s.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad entry {x:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Perm::new(word)
    }
}

/// All permutations of `[n]` in lexicographic order, by next-permutation stepping.
pub fn all_perms(n: usize) -> impl Iterator<Item = Perm> {
    let mut next = Some((1..=n as u32).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut w = current.clone();
        if let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) {
            let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).unwrap();
            w.swap(i - 1, j);
            w[i..].reverse();
            next = Some(w);
        }
        Some(Perm { word: current })
    })
}
