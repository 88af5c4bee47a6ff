//! Subsets of the 24 triangle labels and the 12x24 generator matrix built
//! from them.
//!
//! A quadrilateral label `i` collects itself, `3i`, its `sigma` partner and
//! that partner times 3, together with the `kappa` images of those two
//! triangles and their `T`-images in the hexagon. A hexagon label `j` does
//! the same with `delta`, multiplication by 4 and the `kappa` images
//! multiplied by 3. `R6` and `R12` split the quadrilateral along its two
//! ideal triangles, swapping half of each side through `kappa`.

use crate::billiard::{BilliardMaps, LabelMap};
use crate::bits::{BitString24, BitsError};
use crate::labeling::{check_range, mult3, mult4, LabelError, C1, C2, C4, C7};
use crate::report::Check;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Bits(#[from] BitsError),
    #[error("matrix text has {0} rows, expected 12")]
    RowCount(usize),
}

/// Where a subset comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "index")]
pub enum SubsetSource {
    S(u8),
    R6,
    R12,
}

impl fmt::Display for SubsetSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetSource::S(i) => write!(f, "S{i}"),
            SubsetSource::R6 => f.write_str("R6"),
            SubsetSource::R12 => f.write_str("R12"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleSubset {
    pub source: SubsetSource,
    pub bits: BitString24,
}

impl TriangleSubset {
    fn from_labels(
        source: SubsetSource,
        labels: impl IntoIterator<Item = u8>,
    ) -> Result<Self, ConstructionError> {
        Ok(TriangleSubset {
            source,
            bits: BitString24::from_labels(labels)?,
        })
    }

    /// Sorted member labels.
    pub fn members(&self) -> Vec<u8> {
        self.bits.labels()
    }

    pub fn len(&self) -> usize {
        self.bits.weight() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == BitString24::ZERO
    }

    /// Members in `1..=12` and in `13..=24`.
    pub fn block_counts(&self) -> (usize, usize) {
        let m = self.members();
        let low = m.iter().filter(|&&k| k <= 12).count();
        (low, m.len() - low)
    }
}

fn image(map: &LabelMap, k: u8) -> Result<u8, LabelError> {
    map.apply(k as u32)
}

/// The subset attached to a quadrilateral label.
pub fn subset_for_quad_with(
    maps: &BilliardMaps,
    i: u32,
) -> Result<TriangleSubset, ConstructionError> {
    let i = check_range(i, 1, 12)?;
    let s = image(&maps.sigma, i)?;
    let k = image(&maps.kappa, i)?;
    let sk = image(&maps.sigma, k)?;
    let members = [
        i,
        mult3(i as u32)?,
        s,
        mult3(s as u32)?,
        k,
        mult4(k as u32)?,
        sk,
        mult4(sk as u32)?,
    ];
    TriangleSubset::from_labels(SubsetSource::S(i), members)
}

/// The subset attached to a hexagon label.
pub fn subset_for_hex_with(
    maps: &BilliardMaps,
    j: u32,
) -> Result<TriangleSubset, ConstructionError> {
    let j = check_range(j, 13, 24)?;
    let d = image(&maps.delta, j)?;
    let k = image(&maps.kappa, j)?;
    let dk = image(&maps.delta, k)?;
    let members = [
        j,
        mult4(j as u32)?,
        d,
        mult4(d as u32)?,
        k,
        mult3(k as u32)?,
        dk,
        mult3(dk as u32)?,
    ];
    TriangleSubset::from_labels(SubsetSource::S(j), members)
}

/// The subset attached to any label `1..=24`.
pub fn subset_with(maps: &BilliardMaps, k: u32) -> Result<TriangleSubset, ConstructionError> {
    if (13..=24).contains(&k) {
        subset_for_hex_with(maps, k)
    } else {
        subset_for_quad_with(maps, k)
    }
}

pub fn subset_for_quad(i: u32) -> Result<TriangleSubset, ConstructionError> {
    subset_for_quad_with(&BilliardMaps::standard(), i)
}

pub fn subset_for_hex(j: u32) -> Result<TriangleSubset, ConstructionError> {
    subset_for_hex_with(&BilliardMaps::standard(), j)
}

fn kappa_image(maps: &BilliardMaps, coset: &[u8]) -> Result<Vec<u8>, LabelError> {
    coset.iter().map(|&c| image(&maps.kappa, c)).collect()
}

/// `C1 u kappa(C4) u kappa(C2) u C7`.
pub fn r6_with(maps: &BilliardMaps) -> Result<TriangleSubset, ConstructionError> {
    let mut labels = Vec::with_capacity(12);
    labels.extend(C1);
    labels.extend(kappa_image(maps, &C4)?);
    labels.extend(kappa_image(maps, &C2)?);
    labels.extend(C7);
    TriangleSubset::from_labels(SubsetSource::R6, labels)
}

/// `kappa(C1) u C4 u C2 u kappa(C7)`.
pub fn r12_with(maps: &BilliardMaps) -> Result<TriangleSubset, ConstructionError> {
    let mut labels = Vec::with_capacity(12);
    labels.extend(kappa_image(maps, &C1)?);
    labels.extend(C4);
    labels.extend(C2);
    labels.extend(kappa_image(maps, &C7)?);
    TriangleSubset::from_labels(SubsetSource::R12, labels)
}

pub fn r6() -> TriangleSubset {
    r6_with(&BilliardMaps::standard()).expect("standard tables are well formed")
}

pub fn r12() -> TriangleSubset {
    r12_with(&BilliardMaps::standard()).expect("standard tables are well formed")
}

/// Row sources of the generator matrix, in row order.
pub const ROW_SOURCES: [SubsetSource; 12] = [
    SubsetSource::S(1),
    SubsetSource::S(2),
    SubsetSource::S(3),
    SubsetSource::S(4),
    SubsetSource::S(5),
    SubsetSource::R6,
    SubsetSource::S(13),
    SubsetSource::S(15),
    SubsetSource::S(16),
    SubsetSource::S(17),
    SubsetSource::S(19),
    SubsetSource::R12,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorMatrix {
    rows: [BitString24; 12],
}

impl GeneratorMatrix {
    pub fn new(rows: [BitString24; 12]) -> Self {
        GeneratorMatrix { rows }
    }

    pub fn rows(&self) -> &[BitString24; 12] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> BitString24 {
        self.rows[i]
    }

    /// Number of positions where the two matrices differ.
    pub fn bit_distance(&self, other: &GeneratorMatrix) -> u32 {
        self.rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| (*a ^ *b).weight())
            .sum()
    }

    /// One line of 24 `0`/`1` characters per row.
    pub fn to_text(&self) -> String {
        self.rows.iter().map(|r| format!("{r}\n")).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let cells: Vec<&str> = r
                .to_binary_string()
                .chars()
                .map(|c| if c == '1' { "1" } else { "0" })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses 12 non-empty lines of 24 binary digits; blank lines and lines
/// starting with `#` are skipped.
impl FromStr for GeneratorMatrix {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows: Vec<BitString24> = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| crate::bits::parse_word(&format!("0b{l}"), 24).map(BitString24::from_bits))
            .collect::<Result<_, _>>()?;
        let rows: [BitString24; 12] = rows
            .try_into()
            .map_err(|v: Vec<_>| ConstructionError::RowCount(v.len()))?;
        Ok(GeneratorMatrix { rows })
    }
}

impl Serialize for GeneratorMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

const GOLDEN_MATRIX_TEXT: &str = include_str!("../data/generator_matrix.txt");

/// The reference generator matrix shipped in `data/generator_matrix.txt`.
pub fn reference_matrix() -> &'static GeneratorMatrix {
    static CELL: OnceLock<GeneratorMatrix> = OnceLock::new();
    CELL.get_or_init(|| {
        GOLDEN_MATRIX_TEXT
            .parse()
            .expect("bundled matrix is well formed")
    })
}

/// The twelve rows `S1..S5, R6, S13, S15, S16, S17, S19, R12`.
pub fn generating_family_with(maps: &BilliardMaps) -> Result<GeneratorMatrix, ConstructionError> {
    let mut rows = [BitString24::ZERO; 12];
    for (row, source) in rows.iter_mut().zip(ROW_SOURCES) {
        *row = match source {
            SubsetSource::S(k) => subset_with(maps, k as u32)?.bits,
            SubsetSource::R6 => r6_with(maps)?.bits,
            SubsetSource::R12 => r12_with(maps)?.bits,
        };
    }
    Ok(GeneratorMatrix { rows })
}

pub fn generating_family() -> GeneratorMatrix {
    generating_family_with(&BilliardMaps::standard()).expect("standard tables are well formed")
}

pub fn xor(a: BitString24, b: BitString24) -> BitString24 {
    a ^ b
}

/// The distinct subsets as listed in sorted form, keyed by their smallest
/// representative label.
pub const PUBLISHED_SUBSETS: [(u8, [u8; 8]); 12] = [
    (1, [1, 3, 8, 11, 14, 15, 19, 24]),
    (2, [2, 4, 6, 10, 13, 18, 22, 23]),
    (3, [3, 7, 9, 11, 13, 16, 17, 23]),
    (4, [4, 5, 6, 12, 14, 20, 21, 24]),
    (5, [2, 5, 10, 12, 15, 16, 17, 19]),
    (7, [1, 7, 8, 9, 18, 20, 21, 22]),
    (13, [3, 5, 6, 9, 13, 14, 16, 20]),
    (15, [1, 2, 3, 6, 15, 18, 23, 24]),
    (16, [7, 8, 10, 12, 15, 16, 18, 20]),
    (17, [1, 2, 5, 9, 17, 19, 21, 22]),
    (19, [4, 8, 10, 11, 13, 14, 19, 22]),
    (23, [4, 7, 11, 12, 17, 21, 23, 24]),
];

/// Every structural claim about the subsets and the matrix, for the given
/// tables.
pub fn verify_construction(maps: &BilliardMaps) -> Vec<Check> {
    let mut checks = Vec::new();

    let subsets: Result<Vec<TriangleSubset>, _> =
        (1..=24u32).map(|k| subset_with(maps, k)).collect();
    let subsets = match subsets {
        Ok(s) => s,
        Err(e) => {
            checks.push(Check::new(
                "subsets constructible",
                "S_i for every label",
                false,
                e.to_string(),
            ));
            return checks;
        }
    };
    let s = |k: u8| &subsets[k as usize - 1];

    for (k, members) in PUBLISHED_SUBSETS {
        checks.push(Check::compare(
            format!("S{k} members"),
            "sorted subset lists",
            &members.to_vec(),
            &s(k).members(),
        ));
    }

    let sizes_ok = subsets
        .iter()
        .all(|t| t.len() == 8 && t.block_counts() == (4, 4));
    checks.push(Check::new(
        "every S_i has 8 members, 4 in each block",
        "subsets of size 8",
        sizes_ok,
        "",
    ));

    for (family, range, partner, name) in [
        ("quadrilateral", 1..=12u8, &maps.sigma, "sigma"),
        ("hexagon", 13..=24u8, &maps.delta, "delta"),
    ] {
        let bad: Vec<u8> = range
            .clone()
            .filter(|&k| match image(partner, k) {
                Ok(p) if (1..=24).contains(&p) => s(k).bits != s(p).bits,
                _ => true,
            })
            .collect();
        checks.push(Check::new(
            format!("S_k = S_{name}(k) on the {family} labels"),
            format!("S_i = S_{name}(i)"),
            bad.is_empty(),
            if bad.is_empty() {
                String::new()
            } else {
                format!("fails at {bad:?}")
            },
        ));
        let distinct: BTreeSet<BitString24> = range.map(|k| s(k).bits).collect();
        checks.push(Check::compare(
            format!("{family} labels give 6 distinct subsets"),
            "twelve labels pair up into six subsets",
            &6,
            &distinct.len(),
        ));
    }

    let sum = |ks: &[u8]| ks.iter().fold(BitString24::ZERO, |acc, &k| acc ^ s(k).bits);
    checks.push(Check::compare(
        "S7 = S1 + S2 + S3 + S4 + S5",
        "S7 is the sum of S1..S5",
        &s(7).bits,
        &sum(&[1, 2, 3, 4, 5]),
    ));
    checks.push(Check::compare(
        "S23 = S13 + S15 + S16 + S17 + S19",
        "S23 is the sum of S13, S15, S16, S17, S19",
        &s(23).bits,
        &sum(&[13, 15, 16, 17, 19]),
    ));

    match (r6_with(maps), r12_with(maps)) {
        (Ok(r6), Ok(r12)) => {
            checks.push(Check::compare(
                "R6 and R12 have 12 members each",
                "R6 = C1 u C4' u C2' u C7, R12 = C1' u C4 u C2 u C7'",
                &(12, 12),
                &(r6.len(), r12.len()),
            ));
            checks.push(Check::compare(
                "R6 and R12 partition the 24 labels",
                "complementary halves of the quadrilateral",
                &BitString24::ALL_ONES,
                &(r6.bits ^ r12.bits),
            ));
        }
        (Err(e), _) | (_, Err(e)) => {
            checks.push(Check::new(
                "R6 and R12 constructible",
                "R6, R12",
                false,
                e.to_string(),
            ));
        }
    }

    match generating_family_with(maps) {
        Ok(m) => {
            let reference = reference_matrix();
            let dist = m.bit_distance(reference);
            checks.push(Check::new(
                "generator matrix matches reference",
                "12x24 generator matrix, bit for bit",
                dist == 0,
                if dist == 0 {
                    "all 288 bits agree".to_string()
                } else {
                    format!("{dist} of 288 bits differ")
                },
            ));
        }
        Err(e) => checks.push(Check::new(
            "generator matrix matches reference",
            "12x24 generator matrix, bit for bit",
            false,
            e.to_string(),
        )),
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(t: &TriangleSubset) -> Vec<u8> {
        t.members()
    }

    #[test]
    fn quad_examples() {
        assert_eq!(
            labels(&subset_for_quad(1).unwrap()),
            vec![1, 3, 8, 11, 14, 15, 19, 24]
        );
        assert_eq!(
            labels(&subset_for_quad(2).unwrap()),
            vec![2, 4, 6, 10, 13, 18, 22, 23]
        );
        assert_eq!(
            subset_for_quad(8).unwrap().bits,
            subset_for_quad(1).unwrap().bits
        );
        assert!(matches!(
            subset_for_quad(13),
            Err(ConstructionError::Label(_))
        ));
        assert!(subset_for_quad(0).is_err());
    }

    #[test]
    fn hex_examples() {
        assert_eq!(
            labels(&subset_for_hex(13).unwrap()),
            vec![3, 5, 6, 9, 13, 14, 16, 20]
        );
        assert_eq!(
            labels(&subset_for_hex(19).unwrap()),
            vec![4, 8, 10, 11, 13, 14, 19, 22]
        );
        assert_eq!(
            subset_for_hex(14).unwrap().bits,
            subset_for_hex(13).unwrap().bits
        );
        assert!(subset_for_hex(12).is_err());
        assert!(subset_for_hex(25).is_err());
    }

    #[test]
    fn r_subsets() {
        // Set oracle: C1 u kappa(C4) u kappa(C2) u C7 by hand from the tables.
        // kappa: 4->24, 12->16, 10->22, 2->18, 6->14, 5->17.
        let expected6: BTreeSet<u8> = [1, 3, 9, 24, 16, 22, 18, 14, 17, 8, 11, 7]
            .into_iter()
            .collect();
        assert_eq!(r6().members(), expected6.into_iter().collect::<Vec<_>>());
        assert_eq!(
            r6().members(),
            vec![1, 3, 7, 8, 9, 11, 14, 16, 17, 18, 22, 24]
        );
        assert_eq!(
            r12().members(),
            vec![2, 4, 5, 6, 10, 12, 13, 15, 19, 20, 21, 23]
        );
        assert_eq!(r6().bits & r12().bits, BitString24::ZERO);
        assert_eq!(r6().bits ^ r12().bits, BitString24::ALL_ONES);
    }

    #[test]
    fn matrix_rows() {
        let m = generating_family();
        assert_eq!(m.row(0).to_binary_string(), "101000010010011000100001");
        assert_eq!(m.row(5).to_binary_string(), "101000111010010111000101");
        assert_eq!(m.row(11).to_binary_string(), "010111000101101000111010");
        assert_eq!(&m, reference_matrix());
    }

    #[test]
    fn xor_identities() {
        let b = |k| subset_with(&BilliardMaps::standard(), k).unwrap().bits;
        let s7 = [1, 2, 3, 4, 5]
            .into_iter()
            .fold(BitString24::ZERO, |a, k| xor(a, b(k)));
        assert_eq!(s7.labels(), vec![1, 7, 8, 9, 18, 20, 21, 22]);
        assert_eq!(s7, b(7));
        let s23 = [13, 15, 16, 17, 19]
            .into_iter()
            .fold(BitString24::ZERO, |a, k| xor(a, b(k)));
        assert_eq!(s23, b(23));
        assert_eq!(xor(b(3), b(3)), BitString24::ZERO);
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = generating_family();
        assert_eq!(m.to_text().parse::<GeneratorMatrix>().unwrap(), m);
        assert_eq!(m.to_csv().lines().next().unwrap().split(',').count(), 24);
        assert_eq!(
            "101\n".parse::<GeneratorMatrix>(),
            Err(ConstructionError::Bits(BitsError::BadWidth {
                bits: 24,
                hex: 6,
                got: 3
            }))
        );
        let eleven: String = m
            .to_text()
            .lines()
            .skip(1)
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(
            eleven.parse::<GeneratorMatrix>(),
            Err(ConstructionError::RowCount(11))
        );
    }

    #[test]
    fn standard_construction_passes() {
        for c in verify_construction(&BilliardMaps::standard()) {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn printed_sigma_breaks_the_matrix() {
        let checks = verify_construction(&BilliardMaps::with_printed_sigma());
        let matrix = checks
            .iter()
            .find(|c| c.name == "generator matrix matches reference")
            .unwrap();
        assert!(!matrix.passed, "{}", matrix.detail);
        let s4 = checks.iter().find(|c| c.name == "S4 members").unwrap();
        assert!(!s4.passed);
    }
}
