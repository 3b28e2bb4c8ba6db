//! The families `MP^k_{n,r}` (permutations with `π_i - i ≡ r-1 (mod k)`)
//! and their derangement subfamilies `MPD^k_{n,r}`.
//!
//! Every member maps each position residue class bijectively onto one value
//! residue class, so a member is a tuple of independent class bijections.
//! Enumeration walks exactly those tuples; it never filters `S_n`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    n: usize,
    k: usize,
    r: usize,
    derangement: bool,
}

impl FamilySpec {
    /// `MP^k_{n,r}`; requires `n >= 1`, `k >= 1`, `1 <= r <= k`.
    pub fn new(n: usize, k: usize, r: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("n must be positive".into()));
        }
        if k == 0 {
            return Err(Error::InvalidSpec("k must be positive".into()));
        }
        if r == 0 || r > k {
            return Err(Error::InvalidSpec(format!("r = {r} outside 1..={k}")));
        }
        Ok(FamilySpec {
            n,
            k,
            r,
            derangement: false,
        })
    }

    /// `MPD^k_{n,r}`.
    pub fn derangements(n: usize, k: usize, r: usize) -> Result<Self> {
        Ok(Self::new(n, k, r)?.with_derangement(true))
    }

    pub fn with_derangement(mut self, derangement: bool) -> Self {
        self.derangement = derangement;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_derangement(&self) -> bool {
        self.derangement
    }

    /// The family spec without the derangement restriction.
    pub fn ambient(&self) -> Self {
        self.with_derangement(false)
    }

    /// `(m, j)` with `n = m*k + j`, `0 <= j < k`.
    pub fn quot_rem(&self) -> (usize, usize) {
        (self.n / self.k, self.n % self.k)
    }

    pub fn k_divides_n(&self) -> bool {
        self.n.is_multiple_of(self.k)
    }

    /// Residue that value `π_i` must have given position `i`.
    fn value_residue(&self, position: usize) -> usize {
        (position + self.r - 1) % self.k
    }

    fn admits(&self, position: usize, value: usize) -> bool {
        value % self.k == self.value_residue(position) && !(self.derangement && value == position)
    }
}

pub fn is_member(p: &Perm, spec: &FamilySpec) -> Result<bool> {
    if p.len() != spec.n {
        return Err(Error::SizeMismatch {
            expected: spec.n,
            got: p.len(),
        });
    }
    Ok((1..=spec.n).all(|i| spec.admits(i, p.at(i))))
}

/// Position and value residue classes of a family.
///
/// Class `b` (for `b = 1..=k`, with `b = k` standing for residue 0) holds the
/// positions `≡ b (mod k)`; its matched value class holds the values
/// `≡ b + r - 1 (mod k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueClasses {
    n: usize,
    k: usize,
    position_classes: Vec<Vec<usize>>,
    value_classes: Vec<Vec<usize>>,
}

impl ResidueClasses {
    pub fn position_classes(&self) -> &[Vec<usize>] {
        &self.position_classes
    }

    pub fn value_classes(&self) -> &[Vec<usize>] {
        &self.value_classes
    }

    /// The family is nonempty only if every class meets a value class of equal size.
    pub fn is_compatible(&self) -> bool {
        self.position_classes
            .iter()
            .zip(&self.value_classes)
            .all(|(p, v)| p.len() == v.len())
    }

    /// The simultaneous row/column relabeling that sorts indices by residue
    /// class (classes `1, 2, ..., k-1`, then `0`). See [`proof_relabeling`].
    pub fn relabeling(&self) -> Vec<usize> {
        proof_relabeling(self.n, self.k)
    }
}

pub fn residue_classes(spec: &FamilySpec) -> ResidueClasses {
    let (n, k) = (spec.n, spec.k);
    let class_of = |x: usize| (x - 1) % k;
    let mut position_classes = vec![Vec::new(); k];
    let mut value_classes = vec![Vec::new(); k];
    for x in 1..=n {
        position_classes[class_of(x)].push(x);
    }
    for (c, values) in value_classes.iter_mut().enumerate() {
        let want = spec.value_residue(c + 1);
        *values = (1..=n).filter(|v| v % k == want).collect();
    }
    ResidueClasses {
        n,
        k,
        position_classes,
        value_classes,
    }
}

/// Index map `q -> σ(q)` (1-based, `result[q-1] = σ(q)`) used to block-diagonalize
/// the family matrices.
///
/// Writing `n = mk + j` and `q = ak + b` with `0 <= b < k`:
/// when `k ∤ n`, `0 < b <= j` maps to `a+1+(b-1)(m+1)`, `j < b <= k-1` maps to
/// `j(m+1)+a+1+(b-j-1)m` and `b = 0` maps to `n-(m-a)`; when `k | n`, `b != 0`
/// maps to `a+1+m(b-1)` and `b = 0` maps to `a+m(k-1)`.
pub fn proof_relabeling(n: usize, k: usize) -> Vec<usize> {
    let (m, j) = (n / k, n % k);
    (1..=n)
        .map(|q| {
            let (a, b) = (q / k, q % k);
            if j == 0 {
                if b != 0 {
                    a + 1 + m * (b - 1)
                } else {
                    a + m * (k - 1)
                }
            } else if b == 0 {
                n - (m - a)
            } else if b <= j {
                a + 1 + (b - 1) * (m + 1)
            } else {
                j * (m + 1) + a + 1 + (b - j - 1) * m
            }
        })
        .collect()
}

/// Depth-first walk over the class bijections, in lexicographic order of the
/// one-line word.
#[derive(Debug, Clone)]
pub struct FamilyIter {
    candidates: Vec<Vec<u32>>,
    cursor: Vec<usize>,
    word: Vec<u32>,
    used: Vec<bool>,
    depth: usize,
    started: bool,
    done: bool,
}

impl FamilyIter {
    fn new(spec: &FamilySpec, first: Option<u32>) -> Self {
        let n = spec.n;
        let mut candidates: Vec<Vec<u32>> = (1..=n)
            .map(|i| {
                (1..=n)
                    .filter(|&v| spec.admits(i, v))
                    .map(|v| v as u32)
                    .collect()
            })
            .collect();
        if let Some(v) = first {
            candidates[0].retain(|&c| c == v);
        }
        let done = !residue_classes(spec).is_compatible() || candidates.iter().any(Vec::is_empty);
        FamilyIter {
            candidates,
            cursor: vec![0; n],
            word: vec![0; n],
            used: vec![false; n + 1],
            depth: 0,
            started: false,
            done,
        }
    }

    /// Advances to the next complete word; returns it by reference.
    pub fn next_word(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        let n = self.word.len();
        if self.started {
            self.retreat();
        } else {
            self.started = true;
        }
        loop {
            if self.depth == n {
                return Some(&self.word);
            }
            let d = self.depth;
            let found = self.candidates[d][self.cursor[d]..]
                .iter()
                .position(|&v| !self.used[v as usize]);
            match found {
                Some(offset) => {
                    self.cursor[d] += offset;
                    let v = self.candidates[d][self.cursor[d]];
                    self.word[d] = v;
                    self.used[v as usize] = true;
                    self.depth += 1;
                    if self.depth < n {
                        self.cursor[self.depth] = 0;
                    }
                }
                None => {
                    if d == 0 {
                        self.done = true;
                        return None;
                    }
                    self.retreat();
                }
            }
        }
    }

    fn retreat(&mut self) {
        self.depth -= 1;
        let d = self.depth;
        self.used[self.word[d] as usize] = false;
        self.word[d] = 0;
        self.cursor[d] += 1;
    }
}

impl Iterator for FamilyIter {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        self.next_word()
            .map(|w| Perm::from_word_unchecked(w.to_vec()))
    }
}

/// Members of the family, lexicographically. Empty when the family is empty.
pub fn enumerate(spec: &FamilySpec) -> FamilyIter {
    FamilyIter::new(spec, None)
}

/// Disjoint sub-streams, one per admissible value of `π_1`, whose
/// concatenation is [`enumerate`].
pub fn shards(spec: &FamilySpec) -> Vec<FamilyIter> {
    (1..=spec.n)
        .filter(|&v| spec.admits(1, v))
        .map(|v| FamilyIter::new(spec, Some(v as u32)))
        .collect()
}

fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * i)
}

/// Size of the family ignoring the derangement restriction: the product of
/// the factorials of the class sizes, or zero if the classes are mismatched.
pub fn ambient_count(spec: &FamilySpec) -> BigUint {
    let classes = residue_classes(spec);
    if !classes.is_compatible() {
        return BigUint::zero();
    }
    classes
        .position_classes()
        .iter()
        .map(|c| factorial(c.len()))
        .product()
}

/// `|MP^k_{n,r}|` or `|MPD^k_{n,r}|`.
///
/// Uses the product formula except for `r = 1` derangements, which have no
/// closed form here and are counted by enumeration.
pub fn count(spec: &FamilySpec) -> BigUint {
    if spec.derangement && spec.r == 1 {
        return BigUint::from(enumerate(spec).count());
    }
    // for r >= 2 every member is already fixed-point free
    ambient_count(spec)
}

/// `(⌈n/k⌉!)^j (⌊n/k⌋!)^{k-j}` where `j = n mod k`: the size of `MP^k_n`.
pub fn mp_count_formula(n: usize, k: usize) -> BigUint {
    let (m, j) = (n / k, n % k);
    factorial(m + usize::from(j > 0)).pow(j as u32) * factorial(m).pow((k - j) as u32)
}
