//! Permutation values, the length-3 patterns that parameterize the machine,
//! and the elementary transforms (standardization, reverse, complement,
//! position lookup).
//!
//! Positions are 1-based everywhere in the public API.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `1..=n`, `n >= 1`.
///
/// Ordering is lexicographic on the entries, which is the enumeration order
/// used throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Validates that `entries` is exactly `{1, ..., n}` with `n >= 1`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("a permutation needs at least one entry"));
        }
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &x in &entries {
            let i = x as usize;
            if x == 0 || i > n {
                return Err(Error::invalid(format!("entry {x} is outside 1..={n}")));
            }
            if seen[i] {
                return Err(Error::invalid(format!("entry {x} appears twice")));
            }
            seen[i] = true;
        }
        Ok(Permutation(entries))
    }

    /// Caller guarantees `entries` is a permutation of `1..=n`.
    pub(crate) fn from_vec_unchecked(entries: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation(entries)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity permutation needs n >= 1");
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        assert!(i >= 1 && i <= self.len(), "position {i} out of range");
        self.0[i - 1]
    }

    pub fn first(&self) -> u32 {
        self.0[0]
    }

    pub fn last(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    /// Entrywise `x -> n + 1 - x`.
    pub fn complement(&self) -> Self {
        let top = self.len() as u32 + 1;
        Permutation(self.0.iter().map(|&x| top - x).collect())
    }

    /// 1-based position of the entry `x`.
    pub fn index_of(&self, x: u32) -> Result<usize> {
        if x == 0 || x as usize > self.len() {
            return Err(Error::invalid(format!(
                "value {x} is outside 1..={}",
                self.len()
            )));
        }
        Ok(self
            .0
            .iter()
            .position(|&e| e == x)
            .expect("validated permutation")
            + 1)
    }

    /// Positions indexed by value: `positions()[x - 1]` is the 1-based
    /// position of `x`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            pos[x as usize - 1] = i + 1;
        }
        pos
    }
}

/// Replaces the i-th smallest entry of `seq` with `i`.
pub fn standardize<T: Ord>(seq: &[T]) -> Result<Permutation> {
    if seq.is_empty() {
        return Err(Error::invalid("cannot standardize an empty sequence"));
    }
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_by(|&a, &b| seq[a].cmp(&seq[b]));
    if order.windows(2).any(|w| seq[w[0]] == seq[w[1]]) {
        return Err(Error::invalid("standardization needs distinct entries"));
    }
    let mut out = vec![0u32; seq.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    Ok(Permutation(out))
}

impl fmt::Display for Permutation {
    /// Compact digits for `n <= 9`, space separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for x in &self.0 {
                write!(f, "{x}")?;
            }
        } else {
            for (i, x) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// A token containing a space or comma is read as separated entries;
    /// anything else is one digit per entry.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty permutation string"));
        }
        let entries = if s.contains([' ', ',']) {
            s.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::invalid(format!("`{t}` is not a positive integer")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::invalid(format!("`{c}` is not a digit")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One of the six permutations of length 3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern3([u8; 3]);

impl Pattern3 {
    pub const P123: Pattern3 = Pattern3([1, 2, 3]);
    pub const P132: Pattern3 = Pattern3([1, 3, 2]);
    pub const P213: Pattern3 = Pattern3([2, 1, 3]);
    pub const P231: Pattern3 = Pattern3([2, 3, 1]);
    pub const P312: Pattern3 = Pattern3([3, 1, 2]);
    pub const P321: Pattern3 = Pattern3([3, 2, 1]);

    /// All six patterns in lexicographic order.
    pub const ALL: [Pattern3; 6] = [
        Self::P123,
        Self::P132,
        Self::P213,
        Self::P231,
        Self::P312,
        Self::P321,
    ];

    pub fn new(entries: [u8; 3]) -> Result<Self> {
        let mut sorted = entries;
        sorted.sort_unstable();
        if sorted != [1, 2, 3] {
            return Err(Error::invalid(format!(
                "{entries:?} is not a permutation of 1, 2, 3"
            )));
        }
        Ok(Pattern3(entries))
    }

    pub fn entries(self) -> [u8; 3] {
        self.0
    }

    pub fn complement(self) -> Self {
        Pattern3(self.0.map(|x| 4 - x))
    }

    pub fn to_permutation(self) -> Permutation {
        Permutation(self.0.iter().map(|&x| x as u32).collect())
    }

    /// Whether `(a, b, c)` standardizes to this pattern. Inputs must be
    /// distinct.
    #[inline]
    pub fn matches(self, a: u32, b: u32, c: u32) -> bool {
        let ra = 1 + (a > b) as u8 + (a > c) as u8;
        let rb = 1 + (b > a) as u8 + (b > c) as u8;
        ra == self.0[0] && rb == self.0[1]
    }
}

impl fmt::Display for Pattern3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for Pattern3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern3({self})")
    }
}

impl FromStr for Pattern3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.trim().as_bytes();
        if bytes.len() != 3 {
            return Err(Error::invalid(format!(
                "pattern `{s}` must be one of 123, 132, 213, 231, 312, 321"
            )));
        }
        let mut entries = [0u8; 3];
        for (slot, &b) in entries.iter_mut().zip(bytes) {
            *slot = b.wrapping_sub(b'0');
        }
        Pattern3::new(entries).map_err(|_| {
            Error::invalid(format!(
                "pattern `{s}` must be one of 123, 132, 213, 231, 312, 321"
            ))
        })
    }
}

impl Serialize for Pattern3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pattern3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Rearranges `xs` into the next permutation in lexicographic order.
/// Returns false (leaving `xs` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Iterator over all of `S_n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct LexPermutations {
    current: Vec<u32>,
    done: bool,
}

impl LexPermutations {
    pub fn new(n: usize) -> Self {
        LexPermutations {
            current: (1..=n as u32).collect(),
            done: n == 0,
        }
    }
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = Permutation(self.current.clone());
        self.done = !next_permutation(&mut self.current);
        Some(out)
    }
}

/// All of `S_n`, lexicographic.
pub fn all_permutations(n: usize) -> LexPermutations {
    LexPermutations::new(n)
}

/// `n!`, for `n <= 20`.
pub fn factorial(n: usize) -> u64 {
    assert!(n <= 20, "{n}! overflows u64");
    (1..=n as u64).product()
}

/// Position of `p` in the lexicographic order of `S_n`, starting at 0.
pub fn lex_rank(p: &[u32]) -> usize {
    let n = p.len();
    let mut rank = 0usize;
    let mut fact = 1usize;
    // Lehmer code read right to left so the factorial grows incrementally.
    for i in (0..n).rev() {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank += smaller * fact;
        fact *= n - i;
    }
    rank
}

/// Inverse of [`lex_rank`].
pub fn lex_unrank(n: usize, mut rank: usize) -> Permutation {
    let mut pool: Vec<u32> = (1..=n as u32).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i) as usize;
        out.push(pool.remove(rank / f));
        rank %= f;
    }
    Permutation(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[4, 8, 2, 9]).unwrap(), p("2314"));
        assert_eq!(standardize(&[1, 2, 3]).unwrap(), p("123"));
        assert_eq!(standardize(&[7, 2, 9]).unwrap(), p("213"));
        assert_eq!(standardize(&[-5i64, 100, 0]).unwrap(), p("132"));
    }

    #[test]
    fn standardize_rejects_bad_input() {
        assert!(standardize::<u32>(&[]).is_err());
        assert!(standardize(&[3, 1, 3]).is_err());
    }

    #[test]
    fn reverse_and_complement_examples() {
        assert_eq!(p("3412").reverse(), p("2143"));
        assert_eq!(p("1").reverse(), p("1"));
        assert_eq!(p("123").reverse(), p("321"));
        assert_eq!(p("123").complement(), p("321"));
        assert_eq!(p("21").complement(), p("12"));
        assert_eq!(p("51243").complement(), p("15423"));
    }

    #[test]
    fn index_of_examples() {
        assert_eq!(p("51243").index_of(2).unwrap(), 3);
        assert_eq!(p("1").index_of(1).unwrap(), 1);
        assert_eq!(p("51243").index_of(5).unwrap(), 1);
        assert!(p("51243").index_of(0).is_err());
        assert!(p("51243").index_of(6).is_err());
    }

    #[test]
    fn new_rejects_non_permutations() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
    }

    #[test]
    fn text_format() {
        assert_eq!(p("52413").entries(), &[5, 2, 4, 1, 3]);
        assert_eq!(p("5,2,4,1,3"), p("52413"));
        let long = p("10 3 1 2 4 5 6 7 8 9");
        assert_eq!(long.len(), 10);
        assert_eq!(long.to_string(), "10 3 1 2 4 5 6 7 8 9");
        assert_eq!(p("10,3,1,2,4,5,6,7,8,9"), long);
        assert_eq!(p("987654321").to_string(), "987654321");
        assert!("12a".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("1 x".parse::<Permutation>().is_err());
        // compact form cannot express 10
        assert!("1023456789".parse::<Permutation>().is_err());
    }

    #[test]
    fn pattern_parsing_and_matching() {
        for s in ["123", "132", "213", "231", "312", "321"] {
            assert_eq!(s.parse::<Pattern3>().unwrap().to_string(), s);
        }
        for bad in ["12", "1234", "112", "abc", "124", ""] {
            assert!(bad.parse::<Pattern3>().is_err(), "{bad}");
        }
        assert!(Pattern3::P213.matches(4, 2, 5));
        assert!(!Pattern3::P213.matches(1, 4, 5));
        for sigma in Pattern3::ALL {
            let [a, b, c] = sigma.entries();
            assert!(sigma.matches(a as u32 * 10, b as u32 * 10, c as u32 * 10));
            let hits = Pattern3::ALL
                .iter()
                .filter(|s| s.matches(a as u32, b as u32, c as u32))
                .count();
            assert_eq!(hits, 1);
            assert_eq!(sigma.complement().complement(), sigma);
            assert_eq!(
                sigma.complement().to_permutation(),
                sigma.to_permutation().complement()
            );
        }
    }

    #[test]
    fn lex_iteration_and_rank() {
        let all: Vec<_> = all_permutations(4).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, q) in all.iter().enumerate() {
            assert_eq!(lex_rank(q.entries()), i);
            assert_eq!(&lex_unrank(4, i), q);
        }
        assert_eq!(all_permutations(1).count(), 1);
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(11), 39_916_800);
    }

    #[test]
    fn exhaustive_involutions_and_indexing() {
        for n in 1..=7 {
            for q in all_permutations(n) {
                assert_eq!(q.reverse().reverse(), q);
                assert_eq!(q.complement().complement(), q);
                assert_eq!(standardize(q.entries()).unwrap(), q);
                for i in 1..=n {
                    assert_eq!(q.index_of(q.at(i)).unwrap(), i);
                }
            }
        }
    }
}
