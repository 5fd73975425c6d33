//! Permutations in one-line notation, pattern containment, and brute-force
//! enumeration of avoider classes `S_n(R)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("values are not distinct: {0:?}")]
    NotDistinct(Vec<u32>),
    #[error("values {0:?} are not exactly 1..n")]
    NotCanonical(Vec<u32>),
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
}

/// A permutation of `1..=n` in one-line notation. The empty permutation is
/// allowed and renders as `e`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Checks that `values` is exactly a rearrangement of `1..=n`.
    pub fn new(values: Vec<u32>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let i = v as usize;
            if i == 0 || i > n {
                return Err(if has_duplicates(&values) {
                    PermError::NotDistinct(values)
                } else {
                    PermError::NotCanonical(values)
                });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(PermError::NotDistinct(values));
            }
        }
        Ok(Permutation(values))
    }

    /// Standardizes a sequence of distinct integers to the order-isomorphic
    /// permutation, e.g. `5,2,9 -> 2,1,3`.
    pub fn standardize(values: &[u32]) -> Result<Self, PermError> {
        if has_duplicates(values) {
            return Err(PermError::NotDistinct(values.to_vec()));
        }
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by_key(|&i| values[i]);
        let mut out = vec![0u32; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank as u32 + 1;
        }
        Ok(Permutation(out))
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn into_values(self) -> Vec<u32> {
        self.0
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n = self.0.len() as u32;
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0u32; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            out[v as usize - 1] = i as u32 + 1;
        }
        Permutation(out)
    }

    pub fn reverse_complement(&self) -> Self {
        self.reverse().complement()
    }

    pub fn symmetry(&self, which: Symmetry) -> Self {
        match which {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::Inverse => self.inverse(),
            Symmetry::ReverseComplement => self.reverse_complement(),
        }
    }

    /// Digit form `4213`, available when every value is at most 9.
    pub fn compact(&self) -> Option<String> {
        if self.0.is_empty() {
            return Some("e".to_string());
        }
        self.0
            .iter()
            .map(|&v| char::from_digit(v, 10).filter(|_| v <= 9))
            .collect()
    }

    /// Digit form when possible, otherwise `[10;9;1;...]`. This is the form
    /// pattern-set arguments use on the command line.
    pub fn to_pattern_token(&self) -> String {
        self.compact().unwrap_or_else(|| {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            format!("[{}]", parts.join(";"))
        })
    }
}

fn has_duplicates(values: &[u32]) -> bool {
    let set: BTreeSet<u32> = values.iter().copied().collect();
    set.len() != values.len()
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = PermError;

    fn try_from(values: Vec<u32>) -> Result<Self, PermError> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Permutation {
    /// Comma-separated one-line notation; `e` for the empty permutation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.compact() {
            Some(s) => write!(f, "{s}"),
            None => write!(f, "{self}"),
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts `4,2,1,3`, `4213`, `[4;2;1;3]` and `e`.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        let err = || PermError::Parse(s.to_string());
        if s == "e" || s.is_empty() {
            return Ok(Permutation::empty());
        }
        let values: Vec<u32> = if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            inner
                .split(';')
                .map(|t| t.trim().parse().map_err(|_| err()))
                .collect::<Result<_, _>>()?
        } else if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| err()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(err))
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Reverse,
    Complement,
    Inverse,
    ReverseComplement,
}

/// A finite, deduplicated set of forbidden patterns, iterated in
/// lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternSet(BTreeSet<Permutation>);

impl PatternSet {
    pub fn new() -> Self {
        PatternSet(BTreeSet::new())
    }

    pub fn insert(&mut self, p: Permutation) -> bool {
        self.0.insert(p)
    }

    pub fn extend<I: IntoIterator<Item = Permutation>>(&mut self, it: I) {
        self.0.extend(it);
    }

    pub fn union(&self, other: &PatternSet) -> PatternSet {
        PatternSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.0.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.0.iter()
    }

    /// Parses a comma-separated list of patterns such as `123,132,[10;9;1]`.
    pub fn parse_list(s: &str) -> Result<Self, PermError> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect()
    }
}

impl FromIterator<Permutation> for PatternSet {
    fn from_iter<I: IntoIterator<Item = Permutation>>(iter: I) -> Self {
        PatternSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a Permutation;
    type IntoIter = std::collections::btree_set::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Permutation::to_pattern_token).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Matcher for one pattern. For each pattern position `j` it records the
/// earlier positions holding the nearest smaller and nearest larger pattern
/// values; checking those two neighbours is enough to keep a partial
/// embedding order-isomorphic.
#[derive(Clone, Debug)]
struct Matcher {
    pattern: Vec<u32>,
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl Matcher {
    fn new(pattern: &[u32]) -> Self {
        let k = pattern.len();
        let mut below = vec![None; k];
        let mut above = vec![None; k];
        for j in 0..k {
            let v = pattern[j];
            below[j] = (0..j)
                .filter(|&t| pattern[t] < v)
                .max_by_key(|&t| pattern[t]);
            above[j] = (0..j)
                .filter(|&t| pattern[t] > v)
                .min_by_key(|&t| pattern[t]);
        }
        Matcher {
            pattern: pattern.to_vec(),
            below,
            above,
        }
    }

    /// Positions of an occurrence in `text`. With `anchored`, the last
    /// pattern entry must sit on the last entry of `text`.
    fn find(&self, text: &[u32], anchored: bool) -> Option<Vec<usize>> {
        let k = self.pattern.len();
        if k == 0 {
            return Some(Vec::new());
        }
        if k > text.len() {
            return None;
        }
        let mut chosen = vec![0usize; k];
        self.extend(text, anchored, 0, 0, &mut chosen)
            .then_some(chosen)
    }

    fn extend(
        &self,
        text: &[u32],
        anchored: bool,
        j: usize,
        start: usize,
        chosen: &mut [usize],
    ) -> bool {
        let k = self.pattern.len();
        let n = text.len();
        if j == k {
            return true;
        }
        let (lo, hi) = if anchored && j == k - 1 {
            (n - 1, n - 1)
        } else {
            // leave room for the remaining k - j - 1 entries
            let reserve = k - j - 1;
            if n < reserve + 1 {
                return false;
            }
            (start, n - 1 - reserve)
        };
        if lo > hi {
            return false;
        }
        for i in lo..=hi {
            let v = text[i];
            if let Some(t) = self.below[j] {
                if text[chosen[t]] > v {
                    continue;
                }
            }
            if let Some(t) = self.above[j] {
                if text[chosen[t]] < v {
                    continue;
                }
            }
            chosen[j] = i;
            if self.extend(text, anchored, j + 1, i + 1, chosen) {
                return true;
            }
        }
        false
    }
}

/// True iff `text` (any sequence of distinct integers) has a subsequence
/// order-isomorphic to `pattern`.
pub fn contains_slice(text: &[u32], pattern: &[u32]) -> bool {
    Matcher::new(pattern).find(text, false).is_some()
}

/// True iff `pi` contains `sigma`. The empty pattern is contained in
/// everything.
pub fn contains(pi: &Permutation, sigma: &Permutation) -> bool {
    contains_slice(pi.values(), sigma.values())
}

/// Positions (0-based) of some occurrence of `sigma` in `pi`.
pub fn find_occurrence(pi: &Permutation, sigma: &Permutation) -> Option<Vec<usize>> {
    Matcher::new(sigma.values()).find(pi.values(), false)
}

pub fn avoids_all(pi: &Permutation, r: &PatternSet) -> bool {
    r.iter().all(|sigma| !contains(pi, sigma))
}

/// The first pattern of `r` that `pi` contains, with an occurrence.
pub fn first_contained(pi: &Permutation, r: &PatternSet) -> Option<(Permutation, Vec<usize>)> {
    r.iter()
        .find_map(|sigma| find_occurrence(pi, sigma).map(|occ| (sigma.clone(), occ)))
}

/// Depth-first search over prefixes. A prefix is abandoned as soon as it
/// contains a pattern; only occurrences ending at the newest entry need
/// checking because the shorter prefix already passed.
struct AvoiderSearch {
    n: usize,
    matchers: Vec<Matcher>,
}

impl AvoiderSearch {
    fn new(n: usize, r: &PatternSet) -> Self {
        AvoiderSearch {
            n,
            matchers: r.iter().map(|p| Matcher::new(p.values())).collect(),
        }
    }

    fn prefix_ok(&self, prefix: &[u32]) -> bool {
        self.matchers.iter().all(|m| m.find(prefix, true).is_none())
    }

    fn walk<F: FnMut(&[u32])>(&self, prefix: &mut Vec<u32>, used: &mut [bool], visit: &mut F) {
        if prefix.len() == self.n {
            visit(prefix);
            return;
        }
        for v in 1..=self.n as u32 {
            if used[v as usize] {
                continue;
            }
            prefix.push(v);
            if self.prefix_ok(prefix) {
                used[v as usize] = true;
                self.walk(prefix, used, visit);
                used[v as usize] = false;
            }
            prefix.pop();
        }
    }

    fn count_from(&self, first: u32) -> u64 {
        let mut prefix = vec![first];
        if !self.prefix_ok(&prefix) {
            return 0;
        }
        let mut used = vec![false; self.n + 1];
        used[first as usize] = true;
        let mut count = 0u64;
        self.walk(&mut prefix, &mut used, &mut |_| count += 1);
        count
    }
}

/// `S_n(r)` in lexicographic order. `S_0(r)` is the empty permutation alone
/// (unless `r` contains the empty pattern).
pub fn enumerate_avoiders(n: usize, r: &PatternSet) -> Vec<Permutation> {
    let search = AvoiderSearch::new(n, r);
    if n == 0 {
        return if r.iter().all(|p| !p.is_empty()) {
            vec![Permutation::empty()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut used = vec![false; n + 1];
    search.walk(&mut Vec::with_capacity(n), &mut used, &mut |p| {
        out.push(Permutation(p.to_vec()))
    });
    out
}

/// `|S_n(r)|` without materializing the class. The search is split by the
/// first entry and the partial counts summed.
pub fn count_avoiders(n: usize, r: &PatternSet) -> BigInt {
    if r.iter().any(|p| p.is_empty()) {
        return BigInt::from(0);
    }
    if r.iter().all(|p| p.len() > n) {
        return factorial(n);
    }
    if n == 0 {
        return BigInt::one();
    }
    let search = AvoiderSearch::new(n, r);
    let total: u64 = (1..=n as u32)
        .into_par_iter()
        .map(|first| search.count_from(first))
        .sum();
    BigInt::from(total)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// All `n!` permutations of length `n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    enumerate_avoiders(n, &PatternSet::new())
}
