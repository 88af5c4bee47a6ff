//! Labeled triangle decompositions of the two fundamental domains of the
//! commutator subgroup.
//!
//! The quadrilateral domain is tiled by twelve `(pi/2, pi/3, 0)` triangles,
//! labeled `1..=12`. Starting from the two halves `Delta_1`, `Delta_2` of
//! the standard modular fundamental domain and applying `T` and `S`
//! alternately walks through the quadratic residues mod 13 (from `Delta_1`)
//! and the non-residues (from `Delta_2`); every second step multiplies the
//! label by 3. The hexagonal domain carries labels `13..=24`, where `T`
//! acts on `j` as multiplication of `j - 12` by 4 mod 13.
//!
//! Hexagon triangles are kept as abstract slots: only the `T`-action on
//! them is used downstream, so no matrix representative is attached.

use crate::modular::{abelianization, GroupElement, Letter};
use crate::report::Check;
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("label {label} outside {lo}..={hi}")]
    OutOfRange { label: u32, lo: u8, hi: u8 },
    #[error("triangle sequence starting at label {0} does not close after six steps")]
    ClosureFailure(u8),
}

pub(crate) fn check_range(label: u32, lo: u8, hi: u8) -> Result<u8, LabelError> {
    if (lo as u32..=hi as u32).contains(&label) {
        Ok(label as u8)
    } else {
        Err(LabelError::OutOfRange { label, lo, hi })
    }
}

/// Nonzero quadratic residues mod 13, in the order they are visited from
/// `Delta_1`.
pub const RESIDUES: [u8; 6] = [1, 4, 3, 12, 9, 10];
/// Quadratic non-residues mod 13, in the order they are visited from
/// `Delta_2`.
pub const NON_RESIDUES: [u8; 6] = [2, 8, 6, 11, 5, 7];

/// Orbits of multiplication by 3 on the residues mod 13.
pub const C1: [u8; 3] = [1, 3, 9];
pub const C4: [u8; 3] = [4, 12, 10];
pub const C2: [u8; 3] = [2, 6, 5];
pub const C7: [u8; 3] = [8, 11, 7];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SignClass {
    /// Quadratic residue: a positive cell.
    Q,
    /// Quadratic non-residue: a negative cell.
    N,
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignClass::Q => "Q",
            SignClass::N => "N",
        })
    }
}

/// Which of the two halves of the modular fundamental domain a triangle is
/// an image of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    /// Image of `Delta_1 = (rho, i, inf)`.
    Delta1Base,
    /// Image of `Delta_2 = (i, rho + 1, inf)`.
    Delta2Base,
}

/// `(3 i) mod 13` on quadrilateral labels.
pub fn mult3(i: u32) -> Result<u8, LabelError> {
    let i = check_range(i, 1, 12)?;
    Ok(times_mod13(i, 3))
}

/// `4 (j - 12) mod 13 + 12` on hexagon labels.
pub fn mult4(j: u32) -> Result<u8, LabelError> {
    let j = check_range(j, 13, 24)?;
    Ok(times_mod13(j - 12, 4) + 12)
}

fn times_mod13(x: u8, k: u8) -> u8 {
    ((x as u32 * k as u32) % 13) as u8
}

pub fn is_quadratic_residue(r: u8) -> bool {
    (1..13u32).any(|x| (x * x) % 13 == r as u32 % 13) && !r.is_multiple_of(13)
}

pub fn sign_class(k: u32) -> Result<SignClass, LabelError> {
    let k = check_range(k, 1, 24)?;
    let residue = if k > 12 { k - 12 } else { k };
    Ok(if RESIDUES.contains(&residue) {
        SignClass::Q
    } else {
        SignClass::N
    })
}

/// Orbits of `f` on `domain`, each listed from its smallest element in
/// visiting order; orbits are sorted by their first element.
pub fn orbits(domain: impl IntoIterator<Item = u8>, f: impl Fn(u8) -> u8) -> Vec<Vec<u8>> {
    let mut domain: Vec<u8> = domain.into_iter().collect();
    domain.sort_unstable();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in &domain {
        if !seen.insert(start) {
            continue;
        }
        let mut orbit = vec![start];
        let mut x = f(start);
        while x != start {
            seen.insert(x);
            orbit.push(x);
            x = f(x);
        }
        out.push(orbit);
    }
    out
}

/// A triangle of the quadrilateral domain: the image `rep * Delta_b` of one
/// of the two base triangles. Equality ignores the label since the
/// orientation-preserving stabilizer of a base triangle is trivial.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Triangle {
    pub rep: GroupElement,
    pub parity: Parity,
    pub label: u8,
}

impl PartialEq for Triangle {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.parity == other.parity
    }
}

impl Eq for Triangle {}

impl std::hash::Hash for Triangle {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rep.hash(state);
        self.parity.hash(state);
    }
}

#[derive(Debug, Clone)]
pub struct QuadrilateralLabeling {
    // index = label - 1
    triangles: Vec<Triangle>,
}

impl QuadrilateralLabeling {
    pub fn get(&self, label: u32) -> Result<&Triangle, LabelError> {
        let label = check_range(label, 1, 12)?;
        Ok(&self.triangles[label as usize - 1])
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn reps(&self, parity: Parity) -> BTreeSet<GroupElement> {
        self.triangles
            .iter()
            .filter(|t| t.parity == parity)
            .map(|t| t.rep)
            .collect()
    }
}

/// Walk `T, S, T, S, ...` (or `S, T, ...`) from a base triangle. Each new
/// triangle is the previous one moved by the next letter, so its
/// representative is `letter * previous_rep`.
fn walk(
    parity: Parity,
    [first, second]: [Letter; 2],
    labels: &[u8; 6],
) -> Result<Vec<Triangle>, LabelError> {
    let mut rep = GroupElement::IDENTITY;
    let mut out = Vec::with_capacity(6);
    for (step, &label) in labels.iter().enumerate() {
        out.push(Triangle { rep, parity, label });
        let letter = if step % 2 == 0 { first } else { second };
        rep = letter.element() * rep;
    }
    if !rep.is_identity() {
        return Err(LabelError::ClosureFailure(labels[0]));
    }
    Ok(out)
}

/// Labels `1..=12` of the quadrilateral domain with their representatives.
///
/// From `Delta_1`: labels `1, 4, 3, 12, 9, 10` with representatives
/// `I, T, ST, TST, (ST)^2, T(ST)^2`. From `Delta_2`: labels
/// `2, 8, 6, 11, 5, 7` with `I, S, TS, STS, (TS)^2, S(TS)^2`. Both walks
/// close since `(ST)^3 = (TS)^3 = I`.
pub fn build_quadrilateral_labeling() -> Result<QuadrilateralLabeling, LabelError> {
    let mut triangles = walk(Parity::Delta1Base, [Letter::T, Letter::S], &RESIDUES)?;
    triangles.extend(walk(
        Parity::Delta2Base,
        [Letter::S, Letter::T],
        &NON_RESIDUES,
    )?);
    triangles.sort_by_key(|t| t.label);
    Ok(QuadrilateralLabeling { triangles })
}

/// A triangle of the hexagonal domain, known only by its label and the
/// label `T` sends it to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HexagonSlot {
    pub label: u8,
    pub t_image: u8,
    pub sign: SignClass,
}

#[derive(Debug, Clone)]
pub struct HexagonLabeling {
    slots: Vec<HexagonSlot>,
}

impl HexagonLabeling {
    pub fn get(&self, label: u32) -> Result<&HexagonSlot, LabelError> {
        let label = check_range(label, 13, 24)?;
        Ok(&self.slots[label as usize - 13])
    }

    pub fn slots(&self) -> &[HexagonSlot] {
        &self.slots
    }

    /// `T`-orbit of a hexagon label in visiting order.
    pub fn t_orbit(&self, label: u32) -> Result<Vec<u8>, LabelError> {
        let start = check_range(label, 13, 24)?;
        let mut orbit = vec![start];
        let mut x = self.get(start as u32)?.t_image;
        while x != start {
            orbit.push(x);
            x = self.get(x as u32)?.t_image;
        }
        Ok(orbit)
    }
}

pub fn build_hexagon_labeling() -> HexagonLabeling {
    let slots = (13u32..=24)
        .map(|j| HexagonSlot {
            label: j as u8,
            t_image: mult4(j).expect("hexagon label in range"),
            sign: sign_class(j).expect("hexagon label in range"),
        })
        .collect();
    HexagonLabeling { slots }
}

fn sorted(xs: &[u8]) -> Vec<u8> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v
}

/// Checks that the two walks produce the expected sets of coset
/// representatives, and that each set really is a transversal of both the
/// commutator subgroup and `Gamma(2)`.
pub fn verify_coset_representatives(quad: &QuadrilateralLabeling) -> Vec<Check> {
    let s = GroupElement::s();
    let t = GroupElement::t();
    let st = s * t;
    let ts = t * s;
    let expected1: BTreeSet<_> = [t, t * s * t, t * st.pow(2), st, st.pow(2), st.pow(3)]
        .into_iter()
        .collect();
    let expected2: BTreeSet<_> = [s, s * t * s, s * ts.pow(2), ts, ts.pow(2), ts.pow(3)]
        .into_iter()
        .collect();
    let reps1 = quad.reps(Parity::Delta1Base);
    let reps2 = quad.reps(Parity::Delta2Base);

    let mut checks = vec![
        Check::compare(
            "Delta_1 representatives",
            "{T, TST, T(ST)^2} u {ST, (ST)^2, (ST)^3}",
            &expected1,
            &reps1,
        ),
        Check::compare(
            "Delta_2 representatives",
            "{S, STS, S(TS)^2} u {TS, (TS)^2, (TS)^3}",
            &expected2,
            &reps2,
        ),
    ];
    let distinct: BTreeSet<_> = quad.triangles().iter().map(|t| (t.parity, t.rep)).collect();
    checks.push(Check::compare(
        "12 distinct quadrilateral triangles",
        "twelve triangles tile the quadrilateral",
        &12,
        &distinct.len(),
    ));
    for (name, reps) in [("Delta_1", &reps1), ("Delta_2", &reps2)] {
        let classes: BTreeSet<u8> = reps.iter().map(|g| abelianization(g).value()).collect();
        checks.push(Check::compare(
            format!("{name} representatives are a commutator-subgroup transversal"),
            "coset representatives for the commutator subgroup",
            &(0..6).collect::<BTreeSet<u8>>(),
            &classes,
        ));
        let mod2: BTreeSet<_> = reps.iter().map(|g| g.mod2()).collect();
        checks.push(Check::compare(
            format!("{name} representatives are a Gamma(2) transversal"),
            "coset representatives for Gamma(2)",
            &6,
            &mod2.len(),
        ));
    }
    checks
}

/// Residue / coset structure of the quadrilateral labeling.
pub fn verify_quadrilateral_structure(quad: &QuadrilateralLabeling) -> Vec<Check> {
    let mut checks = Vec::new();

    let squares: BTreeSet<u8> = (1..13u32).map(|x| ((x * x) % 13) as u8).collect();
    checks.push(Check::compare(
        "Q is the set of quadratic residues mod 13",
        "Q = {1, 4, 3, 12, 9, 10}",
        &squares,
        &RESIDUES.iter().copied().collect(),
    ));

    let m3 = |x: u8| mult3(x as u32).expect("label in range");
    let q_orbits = orbits(RESIDUES, m3);
    checks.push(Check::compare(
        "multiplication by 3 on Q",
        "Q = C1 u C4",
        &vec![sorted(&C1), sorted(&C4)],
        &q_orbits.iter().map(|o| sorted(o)).collect::<Vec<_>>(),
    ));
    let n_orbits = orbits(NON_RESIDUES, m3);
    checks.push(Check::compare(
        "multiplication by 3 on N",
        "N = C2 u C7",
        &vec![sorted(&C2), sorted(&C7)],
        &n_orbits.iter().map(|o| sorted(o)).collect::<Vec<_>>(),
    ));

    // Two steps along a walk multiply the label by 3.
    let mut two_step_ok = true;
    for seq in [RESIDUES, NON_RESIDUES] {
        for i in 0..6 {
            two_step_ok &= seq[(i + 2) % 6] == m3(seq[i]);
        }
    }
    checks.push(Check::new(
        "alternating T/S steps skip-two equals multiplication by 3",
        "arcs labeled 3 in the T/S sequences",
        two_step_ok,
        format!("{RESIDUES:?} and {NON_RESIDUES:?}"),
    ));

    let parity_matches = quad.triangles().iter().all(|t| {
        (t.parity == Parity::Delta1Base)
            == (sign_class(t.label as u32).expect("label in range") == SignClass::Q)
    });
    checks.push(Check::new(
        "Delta_1 images are exactly the Q labels",
        "S_1(Delta_1) corresponds to Q, S_2(Delta_2) to N",
        parity_matches,
        "",
    ));
    checks
}

/// `T`-orbits on the hexagon labels.
pub fn verify_hexagon_structure(hex: &HexagonLabeling) -> Vec<Check> {
    let shift = |xs: [u8; 6]| xs.map(|x| x + 12).to_vec();
    let mut checks = Vec::new();
    for (start, expected, sign) in [
        (13u32, shift(RESIDUES), SignClass::Q),
        (14u32, shift(NON_RESIDUES), SignClass::N),
    ] {
        let orbit = hex.t_orbit(start).unwrap_or_default();
        checks.push(Check::compare(
            format!("T-orbit of {start}"),
            "T acts as multiplication by 4 mod 13",
            &expected,
            &orbit,
        ));
        let all_same = orbit
            .iter()
            .all(|&j| hex.get(j as u32).map(|s| s.sign) == Ok(sign));
        checks.push(Check::new(
            format!("T-orbit of {start} has sign {sign}"),
            "T preserves positive and negative cells",
            all_same,
            "",
        ));
    }
    let all = orbits(13..=24, |j| mult4(j as u32).expect("label in range"));
    checks.push(Check::compare(
        "multiplication by 4 has two 6-cycles",
        "T has exactly two orbits on the hexagon",
        &vec![6, 6],
        &all.iter().map(Vec::len).collect::<Vec<_>>(),
    ));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mult3_examples() {
        assert_eq!(mult3(1), Ok(3));
        assert_eq!(mult3(9), Ok(27 % 13));
        assert_eq!(
            mult3(13),
            Err(LabelError::OutOfRange {
                label: 13,
                lo: 1,
                hi: 12
            })
        );
        assert!(mult3(0).is_err());
    }

    #[test]
    fn mult4_examples() {
        assert_eq!(mult4(13), Ok(16));
        assert_eq!(mult4(15), Ok(24));
        assert!(mult4(1).is_err());
        assert!(mult4(25).is_err());
        let mut j = 13;
        for _ in 0..6 {
            j = mult4(j).unwrap() as u32;
        }
        assert_eq!(j, 13);
    }

    #[test]
    fn residues_partition() {
        let q: BTreeSet<u8> = RESIDUES.into_iter().collect();
        let n: BTreeSet<u8> = NON_RESIDUES.into_iter().collect();
        assert!(q.is_disjoint(&n));
        assert_eq!(q.union(&n).count(), 12);
        for r in 1..13u8 {
            assert_eq!(is_quadratic_residue(r), q.contains(&r), "{r}");
        }
        let c: BTreeSet<u8> = C1.iter().chain(&C4).copied().collect();
        assert_eq!(c, q);
    }

    #[test]
    fn sign_class_examples() {
        assert_eq!(sign_class(1), Ok(SignClass::Q));
        assert_eq!(sign_class(8), Ok(SignClass::N));
        assert_eq!(sign_class(13), Ok(SignClass::Q));
        assert_eq!(sign_class(14), Ok(SignClass::N));
        assert!(sign_class(0).is_err());
        assert!(sign_class(25).is_err());
    }

    #[test]
    fn quadrilateral_reps() {
        let quad = build_quadrilateral_labeling().unwrap();
        let s = GroupElement::s();
        let t = GroupElement::t();
        let tri = |k| *quad.get(k).unwrap();
        assert_eq!(tri(1).rep, GroupElement::IDENTITY);
        assert_eq!((tri(4).rep, tri(4).parity), (t, Parity::Delta1Base));
        assert_eq!((tri(3).rep, tri(3).parity), (s * t, Parity::Delta1Base));
        assert_eq!(tri(12).rep, t * s * t);
        assert_eq!(tri(2).rep, GroupElement::IDENTITY);
        assert_eq!(tri(2).parity, Parity::Delta2Base);
        assert_eq!(tri(11).rep, s * t * s);
        assert_eq!(tri(7).rep, s * (t * s).pow(2));
        assert_ne!(tri(1), tri(2));
        for (i, t) in quad.triangles().iter().enumerate() {
            assert_eq!(t.label as usize, i + 1);
        }
    }

    #[test]
    fn broken_walk_fails_to_close() {
        assert_eq!(
            walk(Parity::Delta1Base, [Letter::T, Letter::T], &RESIDUES),
            Err(LabelError::ClosureFailure(1))
        );
        assert!(walk(Parity::Delta1Base, [Letter::T, Letter::S], &RESIDUES).is_ok());
    }

    #[test]
    fn hexagon_orbits() {
        let hex = build_hexagon_labeling();
        assert_eq!(hex.t_orbit(13).unwrap(), vec![13, 16, 15, 24, 21, 22]);
        assert_eq!(hex.t_orbit(14).unwrap(), vec![14, 20, 18, 23, 17, 19]);
        assert!(hex.t_orbit(12).is_err());
    }

    #[test]
    fn structure_checks_pass() {
        let quad = build_quadrilateral_labeling().unwrap();
        let hex = build_hexagon_labeling();
        for c in verify_coset_representatives(&quad)
            .into_iter()
            .chain(verify_quadrilateral_structure(&quad))
            .chain(verify_hexagon_structure(&hex))
        {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
