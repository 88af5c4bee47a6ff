//! The three involutions `sigma`, `delta`, `kappa` on the 24 triangle labels.
//!
//! `sigma` reflects a composite triangle in its longer perpendicular,
//! `delta` in its shorter perpendicular, and `kappa` matches each
//! quadrilateral triangle with a hexagon triangle. They are fixed tables,
//! not derived here.
//!
//! **Note on `sigma`.** The commonly reproduced table pairs both 4 and 5
//! with 12 and leaves 6 unpaired, which is not a bijection. The table here
//! pairs `(4 6)(5 12)`: the only involutive completion that flips residue
//! class, commutes with `kappa`, and reproduces the subsets
//! `{4,5,6,12,14,20,21,24}` and `{2,5,10,12,15,16,17,19}` attached to
//! labels 4 and 5. [`PRINTED_SIGMA_PAIRS`] keeps the uncorrected list so
//! the effect of the typo can be checked.

use crate::labeling::{check_range, sign_class, LabelError};
use crate::report::Check;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error("label {0} is the image of more than one label")]
    NotInjective(u8),
}

pub const SIGMA_PAIRS: [(u8, u8); 12] = [
    (1, 8),
    (2, 10),
    (3, 11),
    (4, 6),
    (5, 12),
    (7, 9),
    (13, 23),
    (14, 24),
    (16, 17),
    (20, 21),
    (15, 19),
    (18, 22),
];

/// The uncorrected `sigma` list: `4 -> 12` and `5 -> 12`, so not a bijection.
pub const PRINTED_SIGMA_PAIRS: [(u8, u8); 12] = [
    (1, 8),
    (2, 10),
    (3, 11),
    (4, 12),
    (5, 12),
    (7, 9),
    (13, 23),
    (14, 24),
    (16, 17),
    (20, 21),
    (15, 19),
    (18, 22),
];

pub const DELTA_PAIRS: [(u8, u8); 12] = [
    (13, 14),
    (15, 18),
    (16, 20),
    (17, 21),
    (19, 22),
    (23, 24),
    (4, 11),
    (5, 9),
    (3, 6),
    (7, 12),
    (8, 10),
    (1, 2),
];

pub const KAPPA_PAIRS: [(u8, u8); 12] = [
    (1, 15),
    (2, 18),
    (3, 13),
    (4, 24),
    (5, 17),
    (6, 14),
    (7, 20),
    (8, 19),
    (9, 21),
    (10, 22),
    (11, 23),
    (12, 16),
];

/// FNV-1a (64-bit) over the image arrays of `sigma`, `delta`, `kappa`.
pub const TABLE_CHECKSUM: u64 = 0x656a_602c_6d2d_3251;

/// An arbitrary self-map of `{1, ..., 24}`. Not necessarily a bijection, so
/// that malformed tables can still be pushed through the construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelMap {
    images: [u8; 24],
}

impl LabelMap {
    pub fn identity() -> Self {
        let mut images = [0u8; 24];
        for (i, img) in images.iter_mut().enumerate() {
            *img = i as u8 + 1;
        }
        LabelMap { images }
    }

    pub fn from_images(images: [u8; 24]) -> Result<Self, LabelError> {
        for &img in &images {
            check_range(img as u32, 1, 24)?;
        }
        Ok(LabelMap { images })
    }

    /// Starts from the identity and, for each pair `(a, b)` in order, sets
    /// `a -> b` and `b -> a`. Later pairs overwrite earlier ones.
    pub fn from_pairs(pairs: &[(u8, u8)]) -> Result<Self, LabelError> {
        let mut map = Self::identity();
        for &(a, b) in pairs {
            let a = check_range(a as u32, 1, 24)?;
            let b = check_range(b as u32, 1, 24)?;
            map.images[a as usize - 1] = b;
            map.images[b as usize - 1] = a;
        }
        Ok(map)
    }

    /// Copy with a single image overridden.
    pub fn with_image(mut self, label: u8, image: u8) -> Result<Self, LabelError> {
        let label = check_range(label as u32, 1, 24)?;
        let image = check_range(image as u32, 1, 24)?;
        self.images[label as usize - 1] = image;
        Ok(self)
    }

    pub fn images(&self) -> &[u8; 24] {
        &self.images
    }

    pub fn apply(&self, label: u32) -> Result<u8, LabelError> {
        let label = check_range(label, 1, 24)?;
        Ok(self.images[label as usize - 1])
    }

    fn at(&self, label: u8) -> u8 {
        self.images[label as usize - 1]
    }

    /// `self after other`.
    pub fn compose(&self, other: &LabelMap) -> LabelMap {
        let mut images = [0u8; 24];
        for (i, img) in images.iter_mut().enumerate() {
            *img = self.at(other.images[i]);
        }
        LabelMap { images }
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = [false; 24];
        self.images
            .iter()
            .all(|&x| !std::mem::replace(&mut seen[x as usize - 1], true))
    }

    pub fn is_involution(&self) -> bool {
        (1..=24u8).all(|k| self.at(self.at(k)) == k)
    }

    pub fn fixed_points(&self) -> Vec<u8> {
        (1..=24u8).filter(|&k| self.at(k) == k).collect()
    }

    /// Whether `{1..12}` and `{13..24}` are each mapped into themselves.
    pub fn preserves_blocks(&self) -> bool {
        (1..=24u8).all(|k| (k <= 12) == (self.at(k) <= 12))
    }

    /// Whether `{1..12}` and `{13..24}` are mapped into each other.
    pub fn swaps_blocks(&self) -> bool {
        (1..=24u8).all(|k| (k <= 12) != (self.at(k) <= 12))
    }

    /// Two-element orbits `(a, b)` with `a < b`, sorted.
    pub fn transpositions(&self) -> Vec<(u8, u8)> {
        (1..=24u8)
            .filter(|&k| self.at(k) > k)
            .map(|k| (k, self.at(k)))
            .collect()
    }
}

impl fmt::Debug for LabelMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.images.iter()).finish()
    }
}

impl Serialize for LabelMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.images.serialize(serializer)
    }
}

/// A bijection of `{1, ..., 24}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation24(LabelMap);

impl Permutation24 {
    pub fn new(map: LabelMap) -> Result<Self, PermutationError> {
        let mut seen = [false; 24];
        for &x in map.images() {
            if std::mem::replace(&mut seen[x as usize - 1], true) {
                return Err(PermutationError::NotInjective(x));
            }
        }
        Ok(Permutation24(map))
    }

    pub fn from_pairs(pairs: &[(u8, u8)]) -> Result<Self, PermutationError> {
        Self::new(LabelMap::from_pairs(pairs)?)
    }

    pub fn apply(&self, label: u32) -> Result<u8, LabelError> {
        self.0.apply(label)
    }

    pub fn as_map(&self) -> &LabelMap {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut images = [0u8; 24];
        for (i, &img) in self.0.images().iter().enumerate() {
            images[img as usize - 1] = i as u8 + 1;
        }
        Permutation24(LabelMap { images })
    }
}

impl std::ops::Deref for Permutation24 {
    type Target = LabelMap;

    fn deref(&self) -> &LabelMap {
        &self.0
    }
}

pub fn sigma_permutation() -> Permutation24 {
    Permutation24::from_pairs(&SIGMA_PAIRS).expect("sigma table is a bijection")
}

pub fn delta_permutation() -> Permutation24 {
    Permutation24::from_pairs(&DELTA_PAIRS).expect("delta table is a bijection")
}

pub fn kappa_permutation() -> Permutation24 {
    Permutation24::from_pairs(&KAPPA_PAIRS).expect("kappa table is a bijection")
}

pub fn sigma(k: u32) -> Result<u8, LabelError> {
    sigma_permutation().apply(k)
}

pub fn delta(k: u32) -> Result<u8, LabelError> {
    delta_permutation().apply(k)
}

pub fn kappa(k: u32) -> Result<u8, LabelError> {
    kappa_permutation().apply(k)
}

/// The triple of maps fed into the subset construction. Held as plain
/// [`LabelMap`]s so that deliberately broken tables can be injected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BilliardMaps {
    pub sigma: LabelMap,
    pub delta: LabelMap,
    pub kappa: LabelMap,
}

impl BilliardMaps {
    pub fn standard() -> Self {
        BilliardMaps {
            sigma: *sigma_permutation().as_map(),
            delta: *delta_permutation().as_map(),
            kappa: *kappa_permutation().as_map(),
        }
    }

    /// The maps with `sigma` built from the uncorrected printed pairs.
    pub fn with_printed_sigma() -> Self {
        BilliardMaps {
            sigma: LabelMap::from_pairs(&PRINTED_SIGMA_PAIRS).expect("labels in range"),
            ..Self::standard()
        }
    }

    pub fn checksum(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for m in [&self.sigma, &self.delta, &self.kappa] {
            for &b in m.images() {
                h ^= b as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }
}

impl Default for BilliardMaps {
    fn default() -> Self {
        Self::standard()
    }
}

/// Involution, block, sign and commutation properties of the three maps.
pub fn verify_maps(maps: &BilliardMaps) -> Vec<Check> {
    let mut checks = vec![Check::compare(
        "table checksum",
        "tables embedded as constant data",
        &format!("{TABLE_CHECKSUM:016x}"),
        &format!("{:016x}", maps.checksum()),
    )];
    let sign = |k: u8| sign_class(k as u32).expect("label in range");
    for (name, m, swaps, flips_sign) in [
        ("sigma", &maps.sigma, false, true),
        ("delta", &maps.delta, false, true),
        ("kappa", &maps.kappa, true, false),
    ] {
        checks.push(Check::new(
            format!("{name} is a bijection"),
            "bijections on the composite triangles",
            m.is_bijection(),
            format!("{m:?}"),
        ));
        checks.push(Check::new(
            format!("{name} is a fixed-point-free involution"),
            "pairs k -> m -> k",
            m.is_involution() && m.fixed_points().is_empty(),
            format!("fixed points {:?}", m.fixed_points()),
        ));
        let (block_ok, block_desc) = if swaps {
            (
                m.swaps_blocks(),
                "exchanges the quadrilateral and hexagon labels",
            )
        } else {
            (
                m.preserves_blocks(),
                "preserves the quadrilateral and hexagon labels",
            )
        };
        checks.push(Check::new(
            format!("{name} {block_desc}"),
            block_desc,
            block_ok,
            "",
        ));
        let bad: Vec<u8> = (1..=24u8)
            .filter(|&k| (sign(k) != sign(m.at(k))) != flips_sign)
            .collect();
        checks.push(Check::new(
            format!(
                "{name} {} residue class",
                if flips_sign { "exchanges" } else { "preserves" }
            ),
            "positive and negative cells",
            bad.is_empty(),
            if bad.is_empty() {
                String::new()
            } else {
                format!("violated at {bad:?}")
            },
        ));
    }
    for (name, other) in [("sigma", &maps.sigma), ("delta", &maps.delta)] {
        let lhs = maps.kappa.compose(other);
        let rhs = other.compose(&maps.kappa);
        let bad: Vec<u8> = (1..=24u8).filter(|&k| lhs.at(k) != rhs.at(k)).collect();
        checks.push(Check::new(
            format!("kappa {name} = {name} kappa"),
            "kappa sigma = sigma kappa and kappa delta = delta kappa",
            bad.is_empty(),
            if bad.is_empty() {
                String::new()
            } else {
                format!("differ at {bad:?}")
            },
        ));
    }
    checks
}
