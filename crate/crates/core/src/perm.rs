//! Permutations in one-line notation, transpositions acting on positions,
//! flattening and pattern containment.
//!
//! Positions and values are 1-based throughout the public API.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n` stored in one-line notation: `entries[i - 1] = w(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NonBijection { n });
            }
            seen[v] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(Permutation {
            entries: (1..=n).collect(),
        })
    }

    /// Builds from entries already known to be a bijection.
    pub(crate) fn from_raw(entries: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `w(i)` for a 1-based position `i`. Panics when `i` is out of range.
    #[inline]
    pub fn get(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    fn check_same_size(&self, other: &Permutation) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_same_size(other)?;
        Ok(Permutation {
            entries: other.entries.iter().map(|&v| self.get(v)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.entries.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { entries: inv }
    }

    /// Number of inversions, `#{i < j : w(i) > w(j)}`.
    pub fn length(&self) -> usize {
        // Fenwick tree over values; O(n log n).
        let n = self.len();
        let mut tree = vec![0usize; n + 1];
        let mut inversions = 0;
        for (seen, &v) in self.entries.iter().enumerate() {
            let mut le = 0;
            let mut i = v;
            while i > 0 {
                le += tree[i];
                i &= i - 1;
            }
            inversions += seen - le;
            let mut i = v;
            while i <= n {
                tree[i] += 1;
                i += i & i.wrapping_neg();
            }
        }
        inversions
    }

    /// Right action `w·t`: swaps the entries in positions `t.a()` and `t.b()`.
    pub fn apply_transposition_right(&self, t: Transposition) -> Result<Permutation> {
        if t.b() > self.len() {
            return Err(Error::OutOfRange {
                index: t.b(),
                n: self.len(),
            });
        }
        Ok(self.swapped(t.a(), t.b()))
    }

    /// Swaps positions `a` and `b` (1-based). Panics when out of range.
    #[inline]
    pub fn swapped(&self, a: usize, b: usize) -> Permutation {
        let mut entries = self.entries.clone();
        entries.swap(a - 1, b - 1);
        Permutation { entries }
    }

    /// `w ∘ σ` for the cycle `σ = (c_1, c_2, …, c_r)` sending `c_j ↦ c_{j+1}`.
    ///
    /// The result `x` satisfies `x(c_{j+1}) = w(c_j)` and `x(c_1) = w(c_r)`,
    /// so the entry sitting at `c_j` moves to `c_{j+1}`.
    pub fn apply_cycle(&self, cycle: &[usize]) -> Result<Permutation> {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        for &c in cycle {
            if c == 0 || c > n {
                return Err(Error::OutOfRange { index: c, n });
            }
            if seen[c] {
                return Err(Error::DuplicateCycleEntry(c));
            }
            seen[c] = true;
        }
        let mut entries = self.entries.clone();
        let r = cycle.len();
        for j in 0..r {
            entries[cycle[(j + 1) % r] - 1] = self.get(cycle[j]);
        }
        Ok(Permutation { entries })
    }

    /// The permutation of `1..=|z|` in the same relative order as
    /// `[w(z_1), …, w(z_k)]`.
    pub fn flatten(&self, z: &IndexSet) -> Result<Permutation> {
        if z.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        z.check_bounds(self.len())?;
        let values: Vec<usize> = z.iter().map(|i| self.get(i)).collect();
        Ok(Permutation::from_raw(flatten_values(&values)))
    }

    /// The unique permutation agreeing with `self` off `z` that flattens to `u` on `z`.
    pub fn unflatten(&self, z: &IndexSet, u: &Permutation) -> Result<Permutation> {
        if z.len() != u.len() {
            return Err(Error::SizeMismatch {
                left: z.len(),
                right: u.len(),
            });
        }
        z.check_bounds(self.len())?;
        let mut values: Vec<usize> = z.iter().map(|i| self.get(i)).collect();
        values.sort_unstable();
        let mut entries = self.entries.clone();
        for (j, i) in z.iter().enumerate() {
            entries[i - 1] = values[u.entries[j] - 1];
        }
        Ok(Permutation { entries })
    }

    /// All index sets on which `self` flattens to `pattern`, in lexicographic order.
    pub fn pattern_occurrences(&self, pattern: &Permutation) -> Vec<IndexSet> {
        let mut found = Vec::new();
        if pattern.len() > self.len() {
            return found;
        }
        let mut chosen = Vec::with_capacity(pattern.len());
        self.occurrence_search(pattern, &mut chosen, &mut |idx| {
            found.push(IndexSet {
                positions: idx.to_vec(),
            });
            true
        });
        found
    }

    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        if pattern.len() > self.len() {
            return false;
        }
        let mut hit = false;
        let mut chosen = Vec::with_capacity(pattern.len());
        self.occurrence_search(pattern, &mut chosen, &mut |_| {
            hit = true;
            false
        });
        hit
    }

    /// Depth-first scan over increasing index tuples; `visit` returns whether
    /// to keep going.
    fn occurrence_search(
        &self,
        pattern: &Permutation,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let j = chosen.len();
        let k = pattern.len();
        if j == k {
            return visit(chosen);
        }
        let start = chosen.last().map_or(1, |&i| i + 1);
        let remaining = k - j;
        for i in start..=(self.len() + 1 - remaining) {
            let v = self.get(i);
            let pj = pattern.get(j + 1);
            let consistent = chosen
                .iter()
                .enumerate()
                .all(|(jj, &ii)| (self.get(ii) < v) == (pattern.get(jj + 1) < pj));
            if consistent {
                chosen.push(i);
                let more = self.occurrence_search(pattern, chosen, visit);
                chosen.pop();
                if !more {
                    return false;
                }
            }
        }
        true
    }

    /// Comma-separated entries without brackets, e.g. `6,8,4,7,5,3,1,2`.
    pub fn to_one_line(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        parts.join(",")
    }
}

/// Ranks of `values` (distinct), as a 1-based one-line vector.
pub(crate) fn flatten_values(values: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by_key(|&i| values[i]);
    let mut out = vec![0; values.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank + 1;
    }
    out
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(entries: Vec<usize>) -> Result<Self> {
        Permutation::new(entries)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.entries
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts comma- or whitespace-separated positive integers with optional
    /// surrounding brackets: `"6,8,4,7"`, `"[6 8 4 7]"`.
    fn from_str(text: &str) -> Result<Self> {
        let mut body = text.trim();
        if let Some(rest) = body.strip_prefix('[') {
            body = rest
                .strip_suffix(']')
                .ok_or_else(|| Error::BadToken(text.to_string()))?;
        }
        let mut entries = Vec::new();
        for token in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            match token.parse::<usize>() {
                Ok(v) if v > 0 => entries.push(v),
                _ => return Err(Error::BadToken(token.to_string())),
            }
        }
        Permutation::new(entries)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_one_line())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The transposition `t_{a,b}` with `1 <= a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transposition {
    a: usize,
    b: usize,
}

impl Transposition {
    /// Accepts the two positions in either order.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a == b {
            return Err(Error::InvalidTransposition(a, b));
        }
        Ok(Transposition {
            a: a.min(b),
            b: a.max(b),
        })
    }

    /// The simple reflection `s_i = t_{i,i+1}`.
    pub fn simple(i: usize) -> Result<Self> {
        Transposition::new(i, i + 1)
    }

    #[inline]
    pub fn a(self) -> usize {
        self.a
    }

    #[inline]
    pub fn b(self) -> usize {
        self.b
    }

    pub fn is_simple(self) -> bool {
        self.b == self.a + 1
    }

    pub fn commutes_with(self, other: Transposition) -> bool {
        self.a != other.a && self.a != other.b && self.b != other.a && self.b != other.b
    }

    /// All `t_{a,b}` with `1 <= a < b <= n`, ordered by `(a, b)`.
    pub fn all(n: usize) -> impl Iterator<Item = Transposition> {
        (1..=n).flat_map(move |a| ((a + 1)..=n).map(move |b| Transposition { a, b }))
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t({},{})", self.a, self.b)
    }
}

impl fmt::Debug for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A strictly increasing set of 1-based positions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet {
    positions: Vec<usize>,
}

impl IndexSet {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.first() == Some(&0) || positions.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::InvalidIndexSet);
        }
        Ok(IndexSet { positions })
    }

    /// Sorts and deduplicates arbitrary positions.
    pub fn from_unsorted(mut positions: Vec<usize>) -> Result<Self> {
        positions.sort_unstable();
        positions.dedup();
        IndexSet::new(positions)
    }

    pub fn full(n: usize) -> Self {
        IndexSet {
            positions: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positions.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.positions.iter().all(|&i| other.contains(i))
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.positions.iter().copied()
    }

    fn check_bounds(&self, n: usize) -> Result<()> {
        match self.positions.last() {
            Some(&last) if last > n => Err(Error::OutOfRange { index: last, n }),
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;

    fn try_from(positions: Vec<usize>) -> Result<Self> {
        IndexSet::new(positions)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(z: IndexSet) -> Vec<usize> {
        z.positions
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.positions.iter()).finish()
    }
}

/// Every permutation of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> AllPermutations {
    AllPermutations {
        next: (n > 0).then(|| (1..=n).collect()),
    }
}

pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if let Some(i) = (0..succ.len().saturating_sub(1)).rev().find(|&i| succ[i] < succ[i + 1]) {
            let j = (i + 1..succ.len()).rev().find(|&j| succ[j] > succ[i]).unwrap();
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation { entries: current })
    }
}
