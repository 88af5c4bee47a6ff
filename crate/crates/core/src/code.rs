//! Binary linear codes of length up to 64, a certificate for the extended
//! Golay code, and a syndrome-table codec for length-24 codes.
//!
//! Words are stored in `u64` with position 1 (the leftmost coordinate) in
//! the most significant of the `len` low bits, matching [`BitString24`].

use crate::bits::BitString24;
use serde::Serialize;
use std::io::{self, Read, Write};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("code length {0} is outside 1..=64")]
    BadLength(usize),
    #[error("generator row {row:#x} does not fit in {len} bits")]
    RowTooWide { row: u64, len: usize },
    #[error("rank {0} exceeds the enumeration limit of {max}", max = MAX_ENUMERATION_RANK)]
    EnumerationGuard(usize),
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("information word {info:#x} does not fit in {rank} bits")]
    InfoTooWide { info: u64, rank: usize },
    #[error("minimum distance {0} is too small to correct 3 errors")]
    Distance(usize),
    #[error("syndrome table: {0}")]
    BadTable(String),
}

/// Largest rank for which codewords are enumerated exhaustively.
pub const MAX_ENUMERATION_RANK: usize = 20;

fn position_mask(len: usize, pos: usize) -> u64 {
    1u64 << (len - 1 - pos)
}

/// Reduced row-echelon form over GF(2), pivots scanned left to right.
/// Zero rows are dropped; the result is unique for a given row space.
pub fn reduce(len: usize, rows: &[u64]) -> (Vec<u64>, Vec<usize>) {
    let mut rows: Vec<u64> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for pos in 0..len {
        let mask = position_mask(len, pos);
        let Some(found) = (r..rows.len()).find(|&i| rows[i] & mask != 0) else {
            continue;
        };
        rows.swap(r, found);
        let pivot_row = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && *row & mask != 0 {
                *row ^= pivot_row;
            }
        }
        pivots.push(pos);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Hamming-weight distribution `a_0..a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightEnumerator {
    pub coefficients: Vec<u64>,
}

impl WeightEnumerator {
    pub fn len(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn get(&self, weight: usize) -> u64 {
        self.coefficients.get(weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    /// `(weight, count)` for every nonzero coefficient.
    pub fn nonzero(&self) -> Vec<(usize, u64)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(w, &c)| (w, c))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }

    /// Polynomial form, e.g. `1 + 759q^8 + ...`.
    pub fn polynomial(&self) -> String {
        self.nonzero()
            .into_iter()
            .map(|(w, c)| match (w, c) {
                (0, c) => c.to_string(),
                (w, 1) => format!("q^{w}"),
                (w, c) => format!("{c}q^{w}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn binomial(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) / (i + 1))
}

/// Krawtchouk polynomial `K_j(i)` for length `n`.
fn krawtchouk(n: usize, j: usize, i: usize) -> i128 {
    let (n, j, i) = (n as i128, j as i128, i as i128);
    (0..=j)
        .map(|s| {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            sign * binomial(i, s) * binomial(n - i, j - s)
        })
        .sum()
}

/// Weight enumerator of the dual code, `B_j = 2^-k sum_i A_i K_j(i)`,
/// computed with exact integers. `None` if some `B_j` is not a
/// non-negative integer, which means `enumerator` is not the enumerator of
/// a linear code of that size.
pub fn macwilliams_transform(enumerator: &WeightEnumerator) -> Option<WeightEnumerator> {
    let n = enumerator.len();
    let size: i128 = enumerator.total() as i128;
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let sum: i128 = enumerator
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, &a)| a as i128 * krawtchouk(n, j, i))
            .sum();
        if size == 0 || sum % size != 0 || sum < 0 {
            return None;
        }
        out.push((sum / size) as u64);
    }
    Some(WeightEnumerator { coefficients: out })
}

/// A binary linear code given by generator rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    len: usize,
    generators: Vec<u64>,
    basis: Vec<u64>,
    pivots: Vec<usize>,
}

impl LinearCode {
    pub fn new(len: usize, generators: Vec<u64>) -> Result<Self, CodeError> {
        if !(1..=64).contains(&len) {
            return Err(CodeError::BadLength(len));
        }
        if let Some(&row) = generators.iter().find(|&&r| len < 64 && r >> len != 0) {
            return Err(CodeError::RowTooWide { row, len });
        }
        let (basis, pivots) = reduce(len, &generators);
        Ok(LinearCode {
            len,
            generators,
            basis,
            pivots,
        })
    }

    pub fn from_bitstrings(rows: &[BitString24]) -> Self {
        LinearCode::new(24, rows.iter().map(|r| r.bits() as u64).collect())
            .expect("24-bit rows fit a length-24 code")
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduced row-echelon basis; doubles as the systematic generator with
    /// information set [`info_positions`](Self::info_positions).
    pub fn echelon(&self) -> &[u64] {
        &self.basis
    }

    /// 0-based coordinates of the pivot columns, leftmost first.
    pub fn info_positions(&self) -> &[usize] {
        &self.pivots
    }

    pub fn parity_positions(&self) -> Vec<usize> {
        (0..self.len).filter(|p| !self.pivots.contains(p)).collect()
    }

    /// Parity-check rows, one per non-pivot column, in column order.
    pub fn parity_check(&self) -> Vec<u64> {
        self.parity_positions()
            .into_iter()
            .map(|q| {
                let qmask = position_mask(self.len, q);
                self.basis
                    .iter()
                    .zip(&self.pivots)
                    .filter(|(row, _)| *row & qmask != 0)
                    .fold(qmask, |h, (_, &p)| h | position_mask(self.len, p))
            })
            .collect()
    }

    pub fn contains(&self, word: u64) -> bool {
        self.parity_check()
            .iter()
            .all(|h| (h & word).count_ones().is_multiple_of(2))
    }

    /// Codeword with `info` (most significant bit first) on the information
    /// positions.
    pub fn encode(&self, info: u64) -> Result<u64, CodeError> {
        let k = self.rank();
        if k < 64 && info >> k != 0 {
            return Err(CodeError::InfoTooWide { info, rank: k });
        }
        Ok(self
            .basis
            .iter()
            .enumerate()
            .filter(|(i, _)| info >> (k - 1 - i) & 1 == 1)
            .fold(0, |acc, (_, row)| acc ^ row))
    }

    /// Reads the information positions of a word.
    pub fn extract_info(&self, word: u64) -> u64 {
        self.pivots.iter().fold(0, |acc, &p| {
            (acc << 1) | u64::from(word & position_mask(self.len, p) != 0)
        })
    }

    /// Calls `f` on every codeword, in Gray-code order starting at zero.
    pub fn for_each_codeword(&self, mut f: impl FnMut(u64)) -> Result<(), CodeError> {
        let k = self.rank();
        if k > MAX_ENUMERATION_RANK {
            return Err(CodeError::EnumerationGuard(k));
        }
        let mut word = 0u64;
        f(word);
        for i in 1u64..(1 << k) {
            word ^= self.basis[i.trailing_zeros() as usize];
            f(word);
        }
        Ok(())
    }

    pub fn weight_enumerator(&self) -> Result<WeightEnumerator, CodeError> {
        let mut coefficients = vec![0u64; self.len + 1];
        self.for_each_codeword(|w| coefficients[w.count_ones() as usize] += 1)?;
        Ok(WeightEnumerator { coefficients })
    }

    pub fn min_distance(&self) -> Result<usize, CodeError> {
        let e = self.weight_enumerator()?;
        (1..=self.len)
            .find(|&w| e.get(w) > 0)
            .ok_or(CodeError::ZeroCode)
    }

    fn pairwise_even(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, a)| {
            self.basis[i..]
                .iter()
                .all(|b| (a & b).count_ones() % 2 == 0)
        })
    }

    /// `C = C^perp`: dimension `n/2` and all basis inner products zero.
    pub fn is_self_dual(&self) -> bool {
        self.len.is_multiple_of(2) && 2 * self.rank() == self.len && self.pairwise_even()
    }

    /// Every codeword weight is divisible by 4. For a basis with weights
    /// divisible by 4 and even pairwise intersections this holds for all
    /// sums, since `wt(a+b) = wt(a) + wt(b) - 2 |a & b|`.
    pub fn is_doubly_even(&self) -> bool {
        self.basis.iter().all(|r| r.count_ones() % 4 == 0) && self.pairwise_even()
    }

    /// Parameter certificate for the extended Golay code: length 24,
    /// dimension 12, self-dual, doubly even, minimum distance 8. These
    /// determine the code up to a permutation of coordinates.
    pub fn identify_golay(&self) -> bool {
        self.len == 24
            && self.rank() == 12
            && self.is_self_dual()
            && self.is_doubly_even()
            && self.min_distance() == Ok(8)
    }
}

pub fn rank(code: &LinearCode) -> usize {
    code.rank()
}

pub fn weight_enumerator(code: &LinearCode) -> Result<WeightEnumerator, CodeError> {
    code.weight_enumerator()
}

pub fn min_distance(code: &LinearCode) -> Result<usize, CodeError> {
    code.min_distance()
}

pub fn identify_golay(code: &LinearCode) -> bool {
    code.identify_golay()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecodeStatus {
    Clean,
    Corrected,
    DetectedUncorrectable,
}

/// Outcome of decoding one received word.
///
/// For `DetectedUncorrectable`, `codeword` is the received word unchanged,
/// `info` is read from its information positions, and `error_positions`
/// is empty: no error pattern of weight at most 3 explains the word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    pub codeword: BitString24,
    pub info: u32,
    /// 1-based positions flipped by the correction.
    pub error_positions: Vec<u8>,
}

/// Marks syndromes whose cosets have no leader of weight at most 3.
pub const NO_LEADER: u32 = u32::MAX;

/// Errors of weight up to this are corrected.
pub const CORRECTION_RADIUS: u32 = 3;

/// Number of error patterns of weight at most 3 on 24 bits.
pub const LIGHT_PATTERNS: usize = 1 + 24 + 276 + 2024;

/// Systematic encoder and syndrome-table decoder for a length-24 code of
/// minimum distance at least 7. Corrects up to three errors; with distance
/// 8 every weight-4 error is also detected.
///
/// The table has `2^(24 - k)` entries for rank `k`, so 4096 for the
/// extended Golay code.
#[derive(Debug, Clone)]
pub struct SyndromeCodec {
    code: LinearCode,
    min_distance: usize,
    parity_check: Vec<u64>,
    table: Vec<u32>,
}

impl SyndromeCodec {
    pub fn new(code: LinearCode) -> Result<Self, CodeError> {
        if code.len() != 24 {
            return Err(CodeError::BadLength(code.len()));
        }
        let min_distance = code.min_distance()?;
        if min_distance < 2 * CORRECTION_RADIUS as usize + 1 {
            return Err(CodeError::Distance(min_distance));
        }
        let parity_check = code.parity_check();
        let table = vec![NO_LEADER; 1 << parity_check.len()];
        let mut codec = SyndromeCodec {
            code,
            min_distance,
            parity_check,
            table,
        };
        codec.build_table()?;
        Ok(codec)
    }

    fn build_table(&mut self) -> Result<(), CodeError> {
        let mut leaders: Vec<u32> = vec![0];
        for a in 0..24 {
            leaders.push(1 << a);
            for b in 0..a {
                leaders.push(1 << a | 1 << b);
                for c in 0..b {
                    leaders.push(1 << a | 1 << b | 1 << c);
                }
            }
        }
        for e in leaders {
            let s = self.syndrome(BitString24::from_bits(e)) as usize;
            if self.table[s] != NO_LEADER {
                return Err(CodeError::BadTable(format!(
                    "leaders {:06X} and {e:06X} share syndrome {s:X}",
                    self.table[s]
                )));
            }
            self.table[s] = e;
        }
        Ok(())
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn min_distance(&self) -> usize {
        self.min_distance
    }

    /// Width of information words in bits.
    pub fn info_bits(&self) -> u32 {
        self.code.rank() as u32
    }

    /// Width of syndromes in bits.
    pub fn syndrome_bits(&self) -> u32 {
        self.parity_check.len() as u32
    }

    /// Syndrome with the first parity-check row as its most significant bit.
    pub fn syndrome(&self, word: BitString24) -> u32 {
        let w = word.bits() as u64;
        self.parity_check
            .iter()
            .fold(0u32, |acc, h| (acc << 1) | ((h & w).count_ones() % 2))
    }

    pub fn syndrome_table(&self) -> &[u32] {
        &self.table
    }

    /// Number of syndromes with a leader of weight at most 3.
    pub fn correctable_syndromes(&self) -> usize {
        self.table.iter().filter(|&&e| e != NO_LEADER).count()
    }

    pub fn encode(&self, info: u32) -> Result<BitString24, CodeError> {
        self.code
            .encode(info as u64)
            .map(|w| BitString24::from_bits(w as u32))
    }

    pub fn extract_info(&self, word: BitString24) -> u32 {
        self.code.extract_info(word.bits() as u64) as u32
    }

    pub fn decode(&self, received: BitString24) -> DecodeResult {
        let s = self.syndrome(received);
        if s == 0 {
            return DecodeResult {
                status: DecodeStatus::Clean,
                codeword: received,
                info: self.extract_info(received),
                error_positions: Vec::new(),
            };
        }
        match self.table[s as usize] {
            NO_LEADER => DecodeResult {
                status: DecodeStatus::DetectedUncorrectable,
                codeword: received,
                info: self.extract_info(received),
                error_positions: Vec::new(),
            },
            leader => {
                let error = BitString24::from_bits(leader);
                let codeword = received ^ error;
                DecodeResult {
                    status: DecodeStatus::Corrected,
                    codeword,
                    info: self.extract_info(codeword),
                    error_positions: error.labels(),
                }
            }
        }
    }

    /// Writes the table as `2^(24 - k)` little-endian `u32` entries indexed
    /// by syndrome; each entry is a 24-bit leader or [`NO_LEADER`].
    pub fn write_syndrome_table(&self, mut out: impl Write) -> io::Result<()> {
        for &e in &self.table {
            out.write_all(&e.to_le_bytes())?;
        }
        Ok(())
    }
}

/// Reads a table in the layout of [`SyndromeCodec::write_syndrome_table`].
pub fn read_syndrome_table(
    mut input: impl Read,
    syndrome_bits: u32,
) -> Result<Vec<u32>, CodeError> {
    let mut bytes = Vec::new();
    input
        .read_to_end(&mut bytes)
        .map_err(|e| CodeError::BadTable(e.to_string()))?;
    let expected = 4usize << syndrome_bits;
    if bytes.len() != expected {
        return Err(CodeError::BadTable(format!(
            "expected {expected} bytes, found {}",
            bytes.len()
        )));
    }
    Ok(bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
        .collect())
}

pub fn encode(info: u32, codec: &SyndromeCodec) -> Result<BitString24, CodeError> {
    codec.encode(info)
}

pub fn decode(received: BitString24, codec: &SyndromeCodec) -> DecodeResult {
    codec.decode(received)
}

/// Extended quadratic-residue code of length 24: cyclic shifts of the
/// residues mod 23, each extended by a parity bit. A standard model of the
/// extended Golay code.
pub fn extended_qr_code() -> LinearCode {
    let residues: Vec<u32> = (1..23u32).map(|x| x * x % 23).collect();
    let rows = (0..23)
        .map(|shift| {
            let word = residues
                .iter()
                .fold(0u64, |w, &r| w | 1 << (23 - (r + shift) % 23));
            word | u64::from(word.count_ones() % 2 == 1)
        })
        .collect();
    LinearCode::new(24, rows).expect("24-bit rows")
}
