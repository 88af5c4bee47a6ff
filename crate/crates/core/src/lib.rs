//! A binary length-24 code derived from a labeling of the modular
//! tessellation by triangles, checked against the extended Golay parameters.
//!
//! The pipeline runs bottom-up: [`modular`] does exact PSL(2,Z) arithmetic
//! and the coset actions on six cosets, [`labeling`] names the 24 triangles
//! of the quadrilateral and hexagon, [`billiard`] holds the three label
//! permutations, [`construction`] turns these into a 12 x 24 generator
//! matrix, and [`code`] certifies and decodes the resulting code.

pub mod billiard;
pub mod bits;
pub mod code;
pub mod construction;
pub mod export;
pub mod labeling;
pub mod modular;
pub mod report;
pub mod verify;

pub use billiard::BilliardMaps;
pub use bits::BitString24;
pub use code::{DecodeResult, DecodeStatus, LinearCode, SyndromeCodec, WeightEnumerator};
pub use construction::{generating_family, GeneratorMatrix};
pub use modular::GroupElement;
pub use report::{Check, VerificationReport};
pub use verify::verify_all;
