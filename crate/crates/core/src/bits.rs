//! Length-24 bit strings indexed by triangle labels.
//!
//! Position `k` (1-based, leftmost first) holds the membership of label `k`,
//! so label 1 is the most significant of the 24 bits. Hex renderings use
//! the same order: `800000` is the singleton `{1}`.

use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitsError {
    #[error("expected {hex} hex digits or {bits} binary digits, got {got} characters")]
    BadWidth { bits: u32, hex: u32, got: usize },
    #[error("invalid character `{0}`")]
    BadChar(char),
    #[error("label {0} outside 1..=24")]
    BadLabel(u32),
    #[error("value {value:#X} does not fit in {bits} bits")]
    TooLarge { value: u64, bits: u32 },
}

pub const WIDTH: u32 = 24;
const MASK: u32 = (1 << WIDTH) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString24(u32);

impl BitString24 {
    pub const ZERO: BitString24 = BitString24(0);
    pub const ALL_ONES: BitString24 = BitString24(MASK);

    /// From the raw 24-bit value (label 1 = bit 23). Higher bits are dropped.
    pub fn from_bits(bits: u32) -> Self {
        BitString24(bits & MASK)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    fn mask_of(label: u32) -> Result<u32, BitsError> {
        if (1..=WIDTH).contains(&label) {
            Ok(1 << (WIDTH - label))
        } else {
            Err(BitsError::BadLabel(label))
        }
    }

    pub fn from_labels<I>(labels: I) -> Result<Self, BitsError>
    where
        I: IntoIterator,
        I::Item: Into<u32>,
    {
        labels
            .into_iter()
            .try_fold(0u32, |acc, l| Ok(acc | Self::mask_of(l.into())?))
            .map(BitString24)
    }

    /// Member labels in increasing order.
    pub fn labels(self) -> Vec<u8> {
        (1..=WIDTH as u8)
            .filter(|&l| self.contains(l as u32))
            .collect()
    }

    pub fn contains(self, label: u32) -> bool {
        Self::mask_of(label).is_ok_and(|m| self.0 & m != 0)
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    pub fn flip(self, label: u32) -> Result<Self, BitsError> {
        Ok(BitString24(self.0 ^ Self::mask_of(label)?))
    }

    pub fn xor(self, other: Self) -> Self {
        self ^ other
    }

    /// 24 characters of `0`/`1`, label 1 first.
    pub fn to_binary_string(self) -> String {
        format!("{:024b}", self.0)
    }

    /// Six uppercase hex digits.
    pub fn to_hex(self) -> String {
        format!("{:06X}", self.0)
    }
}

impl BitXor for BitString24 {
    type Output = BitString24;

    fn bitxor(self, rhs: Self) -> Self {
        BitString24(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for BitString24 {
    fn bitxor_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl BitAnd for BitString24 {
    type Output = BitString24;

    fn bitand(self, rhs: Self) -> Self {
        BitString24(self.0 & rhs.0)
    }
}

impl fmt::Debug for BitString24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString24({})", self.to_binary_string())
    }
}

impl fmt::Display for BitString24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_binary_string())
    }
}

impl FromStr for BitString24 {
    type Err = BitsError;

    /// Accepts 6 hex digits or 24 binary digits, with optional `0x`/`0b`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s, WIDTH).map(BitString24)
    }
}

impl Serialize for BitString24 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_binary_string())
    }
}

/// Parses a `bits`-wide word given either as `bits / 4` hex digits or as
/// `bits` binary digits. A `0x` or `0b` prefix forces the radix.
pub fn parse_word(s: &str, bits: u32) -> Result<u32, BitsError> {
    let s = s.trim();
    let hex_width = bits.div_ceil(4);
    // Unprefixed widths win, so hex such as `0B1234` is not read as binary.
    let (digits, radix) = if s.len() == bits as usize && s.chars().all(|c| c == '0' || c == '1') {
        (s, 2)
    } else if s.len() == hex_width as usize {
        (s, 16)
    } else if let Some(rest) = s.strip_prefix("0x").or(s.strip_prefix("0X")) {
        (rest, 16)
    } else if let Some(rest) = s.strip_prefix("0b").or(s.strip_prefix("0B")) {
        (rest, 2)
    } else {
        (s, 16)
    };
    let expected = if radix == 16 { hex_width } else { bits };
    if digits.chars().count() != expected as usize {
        return Err(BitsError::BadWidth {
            bits,
            hex: hex_width,
            got: digits.chars().count(),
        });
    }
    let mut value: u64 = 0;
    for ch in digits.chars() {
        let d = ch.to_digit(radix).ok_or(BitsError::BadChar(ch))?;
        value = value * radix as u64 + d as u64;
    }
    if value >> bits != 0 {
        return Err(BitsError::TooLarge { value, bits });
    }
    Ok(value as u32)
}

pub fn format_hex(value: u32, bits: u32) -> String {
    format!("{:0width$X}", value, width = bits.div_ceil(4) as usize)
}
