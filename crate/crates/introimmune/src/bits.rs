//! Binary strings and totalized finite binary oracles.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// A finite binary string. Ordering is lexicographic with `0 < 1`,
/// which on strings of equal length is the order used when picking
/// "the lexicographically least" candidate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BitString(pub Vec<bool>);

impl BitString {
    pub fn empty() -> Self {
        BitString(Vec::new())
    }

    pub fn zeros(len: usize) -> Self {
        BitString(vec![false; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0.get(i).copied().unwrap_or(false)
    }

    pub fn set(&mut self, i: usize, b: bool) {
        self.0[i] = b;
    }

    pub fn push(&mut self, b: bool) {
        self.0.push(b);
    }

    /// `self` followed by one extra bit.
    pub fn extended(&self, b: bool) -> Self {
        let mut v = self.0.clone();
        v.push(b);
        BitString(v)
    }

    pub fn prefix(&self, len: usize) -> Self {
        BitString(self.0[..len].to_vec())
    }

    /// Number of 1 bits.
    pub fn ones(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    /// Positions carrying a 1.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.get(i)).collect()
    }

    /// Pointwise `self(i) <= other(i)`; both strings must have equal length.
    pub fn pointwise_le(&self, other: &BitString) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| !*a || *b)
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// The `n`-th string of length `len` in lexicographic order
    /// (bit 0 is the most significant).
    pub fn nth_of_length(n: u64, len: usize) -> Self {
        let mut v = vec![false; len];
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = (n >> (len - 1 - i)) & 1 == 1;
        }
        BitString(v)
    }

    /// All strings of length `len` in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = BitString> {
        (0..(1u64 << len)).map(move |n| BitString::nth_of_length(n, len))
    }

    pub fn parse(s: &str) -> Option<Self> {
        let mut v = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => v.push(false),
                '1' => v.push(true),
                _ => return None,
            }
        }
        Some(BitString(v))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", if *b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        BitString::parse(&s).ok_or_else(|| D::Error::custom("expected a string of 0s and 1s"))
    }
}

/// A total oracle given by a finite binary string: positions beyond the
/// string answer 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBinaryOracle {
    bits: BitString,
}

impl FiniteBinaryOracle {
    pub fn new(bits: BitString) -> Self {
        FiniteBinaryOracle { bits }
    }

    pub fn empty() -> Self {
        FiniteBinaryOracle { bits: BitString::empty() }
    }

    /// Oracle whose 1s sit exactly at `ones`.
    pub fn from_ones(ones: &BTreeSet<u64>) -> Self {
        match ones.iter().next_back() {
            None => Self::empty(),
            Some(&max) => {
                let mut bits = BitString::zeros(max as usize + 1);
                for &p in ones {
                    bits.set(p as usize, true);
                }
                FiniteBinaryOracle { bits }
            }
        }
    }

    /// Oracle for a subset of `{0, ..., width-1}` given by a bit mask
    /// (bit `i` of the mask is position `i`).
    pub fn from_mask(mask: u64, width: u32) -> Self {
        let mut bits = BitString::zeros(width as usize);
        for i in 0..width {
            if (mask >> i) & 1 == 1 {
                bits.set(i as usize, true);
            }
        }
        FiniteBinaryOracle { bits }
    }

    pub fn answer(&self, pos: u64) -> bool {
        (pos as usize) < self.bits.len() && self.bits.get(pos as usize)
    }

    pub fn bits(&self) -> &BitString {
        &self.bits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_defaults_to_zero() {
        let o = FiniteBinaryOracle::new(BitString::parse("0001").unwrap());
        assert!(!o.answer(0));
        assert!(o.answer(3));
        assert!(!o.answer(4));
        assert!(!o.answer(1_000_000));
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<String> = BitString::all_of_length(2).map(|b| b.to_string()).collect();
        assert_eq!(all, vec!["00", "01", "10", "11"]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn pointwise_dominance() {
        let a = BitString::parse("0101").unwrap();
        let b = BitString::parse("0111").unwrap();
        assert!(a.pointwise_le(&b));
        assert!(!b.pointwise_le(&a));
    }

    #[test]
    fn from_ones_roundtrip() {
        let ones: BTreeSet<u64> = [1u64, 3, 4].into_iter().collect();
        let o = FiniteBinaryOracle::from_ones(&ones);
        assert_eq!(o.bits().to_string(), "01011");
    }
}
