//! Fixed-length bit strings naming computational basis states.
//!
//! Bit `0` is the leftmost character of the textual form, so `"100"` has bit
//! 0 set. Bits are packed most-significant-first into 64-bit words, which makes
//! the derived ordering coincide with lexicographic order of the text.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisString {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn mask(i: usize) -> u64 {
    1u64 << (WORD - 1 - i % WORD)
}

impl BasisString {
    pub fn zeros(len: usize) -> Self {
        BasisString {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = Self::zeros(len);
        for i in 0..len {
            s.set(i, true);
        }
        s
    }

    /// Builds a string of length `len` with ones exactly at `positions`.
    pub fn from_positions(len: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::zeros(len);
        for p in positions {
            s.set(p, true);
        }
        s
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_positions(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    /// Low `len` bits of `value`, with the most significant of them at position 0.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= 64);
        Self::from_positions(len, (0..len).filter(|&i| value >> (len - 1 - i) & 1 == 1))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] & mask(i) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        if value {
            self.words[i / WORD] |= mask(i);
        } else {
            self.words[i / WORD] &= !mask(i);
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= mask(i);
    }

    pub fn hamming_weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn hamming_distance(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "length mismatch");
        BasisString {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    /// Complements every bit.
    pub fn flip(&self) -> Self {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= !0u64 << (WORD - rem);
            }
        }
    }

    /// Positions holding a one, ascending.
    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let lead = rest.leading_zeros() as usize;
                rest &= !(1u64 << (WORD - 1 - lead));
                Some(wi * WORD + lead)
            })
        })
    }

    /// Positions where `self` and `other` differ, ascending.
    pub fn diff_positions(&self, other: &Self) -> Vec<usize> {
        self.xor(other).ones_positions().collect()
    }

    /// Copies `other` into positions `offset..offset + other.len()`.
    pub fn splice(&mut self, offset: usize, other: &Self) {
        assert!(offset + other.len <= self.len);
        for i in other.ones_positions() {
            self.set(offset + i, true);
        }
    }

    /// The bits in `range` as a new string.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        assert!(range.end <= self.len);
        Self::from_positions(
            range.len(),
            range
                .clone()
                .filter(|&i| self.get(i))
                .map(|i| i - range.start),
        )
    }

    /// True if every bit outside `range` is zero.
    pub fn is_zero_outside(&self, range: std::ops::Range<usize>) -> bool {
        self.ones_positions().all(|i| range.contains(&i))
    }
}

impl fmt::Display for BasisString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BasisString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>", self)
    }
}

impl FromStr for BasisString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => out.set(i, true),
                _ => {
                    return Err(Error::invalid(format!(
                        "bad character {c:?} at position {i} of bit string"
                    )))
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bs(s: &str) -> BasisString {
        s.parse().unwrap()
    }

    #[test]
    fn index_convention_is_leftmost_first() {
        let x = bs("100");
        assert!(x.get(0));
        assert!(!x.get(2));
        assert_eq!(x.to_string(), "100");
    }

    #[test]
    fn weight_distance_flip() {
        let x = bs("0110");
        let y = bs("1100");
        assert_eq!(x.hamming_weight(), 2);
        assert_eq!(x.hamming_distance(&y), 2);
        assert_eq!(x.flip(), bs("1001"));
        assert_eq!(x.diff_positions(&y), vec![0, 2]);
    }

    #[test]
    fn multiword_strings() {
        let mut x = BasisString::zeros(130);
        x.set(0, true);
        x.set(64, true);
        x.set(129, true);
        assert_eq!(x.ones_positions().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(x.flip().hamming_weight(), 127);
    }

    #[test]
    fn rejects_bad_chars() {
        assert!("01x".parse::<BasisString>().is_err());
    }

    #[test]
    fn from_u64_is_big_endian() {
        assert_eq!(BasisString::from_u64(0b110, 3), bs("110"));
    }

    proptest! {
        #[test]
        fn order_matches_text_order(
            (a, b) in (1usize..150).prop_flat_map(|n| {
                let bits = proptest::collection::vec(proptest::bool::ANY, n);
                (bits.clone(), bits)
            })
        ) {
            let text = |v: &[bool]| v.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>();
            let (a, b) = (text(&a), text(&b));
            prop_assert_eq!(bs(&a).cmp(&bs(&b)), a.cmp(&b));
        }

        #[test]
        fn text_round_trip(a in "[01]{0,200}") {
            prop_assert_eq!(bs(&a).to_string(), a);
        }
    }
}
