//! Exact arithmetic in PSL(2, Z).
//!
//! Elements are 2x2 integer matrices of determinant one, identified up to
//! sign. The abelianization PSL(2, Z) -> Z/6 is computed by decomposing an
//! element into a word in `S`, `T`, `T^-1` and summing letter weights; its
//! kernel is the commutator subgroup. Both the commutator subgroup and the
//! principal congruence subgroup of level 2 are normal of index 6, so their
//! coset actions are the left regular actions of the quotient groups `Z/6`
//! and `SL(2, F_2)`.

use crate::report::Check;
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("matrix [[{0}, {1}], [{2}, {3}]] does not have determinant 1")]
    NotUnimodular(i64, i64, i64, i64),
    #[error("integer overflow in matrix product")]
    Overflow,
    #[error("unknown subgroup `{0}` (expected `commutator` or `gamma2`)")]
    UnknownSubgroup(String),
    #[error("invalid letter `{0}` in word (expected S, T or t for T^-1)")]
    InvalidLetter(char),
}

/// An element of PSL(2, Z), stored with the first nonzero entry of
/// `(a, b, c)` positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, ModularError> {
        let det = a
            .checked_mul(d)
            .zip(b.checked_mul(c))
            .and_then(|(ad, bc)| ad.checked_sub(bc))
            .ok_or(ModularError::Overflow)?;
        if det != 1 {
            return Err(ModularError::NotUnimodular(a, b, c, d));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    fn canonical(a: i64, b: i64, c: i64, d: i64) -> Self {
        let lead = [a, b, c].into_iter().find(|&x| x != 0).unwrap_or(d);
        if lead < 0 {
            GroupElement {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            GroupElement { a, b, c, d }
        }
    }

    /// `S: z -> -1/z`.
    pub fn s() -> Self {
        GroupElement {
            a: 0,
            b: 1,
            c: -1,
            d: 0,
        }
    }

    /// `T: z -> z + 1`.
    pub fn t() -> Self {
        GroupElement {
            a: 1,
            b: 1,
            c: 0,
            d: 1,
        }
    }

    pub fn t_inv() -> Self {
        GroupElement {
            a: 1,
            b: -1,
            c: 0,
            d: 1,
        }
    }

    /// First generator of the commutator subgroup, `[[1, 1], [1, 2]]`.
    pub fn gen_a() -> Self {
        GroupElement {
            a: 1,
            b: 1,
            c: 1,
            d: 2,
        }
    }

    /// Second generator of the commutator subgroup, `[[1, -1], [-1, 2]]`.
    pub fn gen_b() -> Self {
        GroupElement {
            a: 1,
            b: -1,
            c: -1,
            d: 2,
        }
    }

    /// Entries as `[[a, b], [c, d]]` in canonical sign.
    pub fn entries(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn checked_compose(&self, rhs: &Self) -> Result<Self, ModularError> {
        let dot = |x: i64, y: i64, z: i64, w: i64| -> Option<i64> {
            x.checked_mul(y)?.checked_add(z.checked_mul(w)?)
        };
        let (l, r) = (self, rhs);
        let a = dot(l.a, r.a, l.b, r.c).ok_or(ModularError::Overflow)?;
        let b = dot(l.a, r.b, l.b, r.d).ok_or(ModularError::Overflow)?;
        let c = dot(l.c, r.a, l.d, r.c).ok_or(ModularError::Overflow)?;
        let d = dot(l.c, r.b, l.d, r.d).ok_or(ModularError::Overflow)?;
        Ok(Self::canonical(a, b, c, d))
    }

    /// Canonical product `self * rhs`.
    ///
    /// Panics on `i64` overflow; use [`checked_compose`](Self::checked_compose)
    /// for untrusted inputs.
    pub fn compose(&self, rhs: &Self) -> Self {
        self.checked_compose(rhs)
            .expect("PSL(2, Z) product overflowed i64")
    }

    pub fn inverse(&self) -> Self {
        Self::canonical(self.d, -self.b, -self.c, self.a)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::IDENTITY, |acc, _| acc.compose(self))
    }

    /// Reduction modulo 2, an element of `SL(2, F_2)`. Well defined on
    /// PSL(2, Z) since `-1 = 1` in `F_2`.
    pub fn mod2(&self) -> [[u8; 2]; 2] {
        let r = |x: i64| x.rem_euclid(2) as u8;
        [[r(self.a), r(self.b)], [r(self.c), r(self.d)]]
    }
}

impl Default for GroupElement {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    S,
    T,
    TInv,
}

impl Letter {
    pub fn element(self) -> GroupElement {
        match self {
            Letter::S => GroupElement::s(),
            Letter::T => GroupElement::t(),
            Letter::TInv => GroupElement::t_inv(),
        }
    }

    /// Image in `Z/6`: `T -> 1`, `T^-1 -> 5`, `S -> 3`.
    pub fn abelian_class(self) -> AbelianClass {
        match self {
            Letter::S => AbelianClass::new(3),
            Letter::T => AbelianClass::new(1),
            Letter::TInv => AbelianClass::new(5),
        }
    }
}

/// A word in the letters `S`, `T`, `T^-1`, read left to right as a product.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn evaluate(&self) -> GroupElement {
        self.try_evaluate()
            .expect("PSL(2, Z) product overflowed i64")
    }

    pub fn try_evaluate(&self) -> Result<GroupElement, ModularError> {
        self.0.iter().try_fold(GroupElement::IDENTITY, |acc, l| {
            acc.checked_compose(&l.element())
        })
    }

    /// Abelianization computed directly from the letters.
    pub fn abelian_class(&self) -> AbelianClass {
        self.0.iter().map(|l| l.abelian_class()).sum()
    }
}

/// Parses `S`, `T` and `t` (for `T^-1`); whitespace is ignored.
impl FromStr for Word {
    type Err = ModularError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'S' | 's' => Ok(Letter::S),
                'T' => Ok(Letter::T),
                't' => Ok(Letter::TInv),
                other => Err(ModularError::InvalidLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::S => "S",
                Letter::T => "T",
                Letter::TInv => "t",
            })?;
        }
        Ok(())
    }
}

pub fn evaluate_word(w: &Word) -> GroupElement {
    w.evaluate()
}

/// Writes `g` as a word in `S`, `T`, `T^-1`.
///
/// Euclidean reduction on the first column: left-multiplying by `T^k` brings
/// `|a| < |c|`, then `S` swaps the column entries, so `|c|` strictly
/// decreases with every `S` applied. When `c = 0` the remainder is a power
/// of `T`.
pub fn decompose(g: &GroupElement) -> Word {
    let [[mut a, mut b], [mut c, mut d]] = g.entries();
    // Left factors applied to g, in application order.
    let mut applied: Vec<i64> = Vec::new();
    while c != 0 {
        let k = -(a / c);
        a += k * c;
        b += k * d;
        // S * [[a, b], [c, d]] = [[c, d], [-a, -b]]
        (a, b, c, d) = (c, d, -a, -b);
        applied.push(k);
    }
    // Now [[a, b], [0, d]] with a = d = +-1, i.e. +-T^(b/a).
    let tail = b * a;

    // L g = T^tail with L = S T^k_m ... S T^k_1, so g = T^-k_1 S ... T^-k_m S T^tail.
    let mut letters = Vec::new();
    let push_t = |letters: &mut Vec<Letter>, n: i64| {
        let letter = if n >= 0 { Letter::T } else { Letter::TInv };
        letters.extend(std::iter::repeat_n(letter, n.unsigned_abs() as usize));
    };
    for &k in &applied {
        push_t(&mut letters, -k);
        letters.push(Letter::S);
    }
    push_t(&mut letters, tail);
    Word(letters)
}

/// An element of `Z/6`, the abelianization of PSL(2, Z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct AbelianClass(u8);

impl AbelianClass {
    pub const ZERO: AbelianClass = AbelianClass(0);

    pub fn new(value: i64) -> Self {
        AbelianClass(value.rem_euclid(6) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl Add for AbelianClass {
    type Output = AbelianClass;

    fn add(self, rhs: Self) -> Self {
        AbelianClass((self.0 + rhs.0) % 6)
    }
}

impl Neg for AbelianClass {
    type Output = AbelianClass;

    fn neg(self) -> Self {
        AbelianClass((6 - self.0) % 6)
    }
}

impl std::iter::Sum for AbelianClass {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(AbelianClass::ZERO, Add::add)
    }
}

pub fn abelianization(g: &GroupElement) -> AbelianClass {
    decompose(g).abelian_class()
}

pub fn is_in_commutator(g: &GroupElement) -> bool {
    abelianization(g) == AbelianClass::ZERO
}

/// The two index-6 normal subgroups whose coset actions are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Subgroup {
    /// The commutator subgroup; cosets are classes in `Z/6`.
    Commutator,
    /// The principal congruence subgroup of level 2; cosets are elements
    /// of `SL(2, F_2)`.
    Gamma2,
}

impl FromStr for Subgroup {
    type Err = ModularError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "commutator" | "gamma'" | "gamma-prime" => Ok(Subgroup::Commutator),
            "gamma2" | "gamma(2)" => Ok(Subgroup::Gamma2),
            _ => Err(ModularError::UnknownSubgroup(s.to_string())),
        }
    }
}

/// `SL(2, F_2)` in a fixed enumeration; index = coset number for `Gamma(2)`.
const SL2_F2: [[[u8; 2]; 2]; 6] = [
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[1, 1], [0, 1]],
    [[1, 0], [1, 1]],
    [[0, 1], [1, 1]],
    [[1, 1], [1, 0]],
];

fn mul_f2(x: [[u8; 2]; 2], y: [[u8; 2]; 2]) -> [[u8; 2]; 2] {
    let mut out = [[0u8; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (x[i][0] * y[0][j] + x[i][1] * y[1][j]) % 2;
        }
    }
    out
}

/// A permutation of the 6 cosets of an index-6 subgroup.
///
/// `images[i]` is the coset that coset `i` is sent to. Composition follows
/// function composition: `(p * q)(i) = p(q(i))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CosetPermutation {
    images: [u8; 6],
    subgroup: Subgroup,
}

impl CosetPermutation {
    pub fn identity(subgroup: Subgroup) -> Self {
        CosetPermutation {
            images: [0, 1, 2, 3, 4, 5],
            subgroup,
        }
    }

    pub fn images(&self) -> [u8; 6] {
        self.images
    }

    pub fn subgroup(&self) -> Subgroup {
        self.subgroup
    }

    pub fn apply(&self, coset: usize) -> usize {
        self.images[coset] as usize
    }

    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.subgroup, other.subgroup);
        let mut images = [0u8; 6];
        for (i, img) in images.iter_mut().enumerate() {
            *img = self.images[other.images[i] as usize];
        }
        CosetPermutation {
            images,
            subgroup: self.subgroup,
        }
    }

    /// Disjoint cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; 6];
        let mut out = Vec::new();
        for start in 0..6 {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths, sorted ascending (a partition of 6).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.sort_unstable();
        lens
    }
}

impl fmt::Display for CosetPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return f.write_str("()");
        }
        for c in nontrivial {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// Permutation of the cosets of `subgroup` induced by left multiplication
/// by `g`. This is a homomorphism: `perm(gh) = perm(g) * perm(h)`.
pub fn coset_permutation(g: &GroupElement, subgroup: Subgroup) -> CosetPermutation {
    let mut images = [0u8; 6];
    match subgroup {
        Subgroup::Commutator => {
            let shift = abelianization(g).value();
            for (i, img) in images.iter_mut().enumerate() {
                *img = (i as u8 + shift) % 6;
            }
        }
        Subgroup::Gamma2 => {
            let m = g.mod2();
            for (i, img) in images.iter_mut().enumerate() {
                let prod = mul_f2(m, SL2_F2[i]);
                *img = SL2_F2
                    .iter()
                    .position(|x| *x == prod)
                    .expect("SL(2, F_2) is closed under multiplication")
                    as u8;
            }
        }
    }
    CosetPermutation { images, subgroup }
}

pub fn cycle_type(p: &CosetPermutation) -> Vec<usize> {
    p.cycle_type()
}

/// Checks the defining relations of PSL(2, Z) and the relations tying `S`,
/// `T` to the commutator-subgroup generators `A`, `B`.
pub fn verify_group_identities() -> Vec<Check> {
    let s = GroupElement::s();
    let t = GroupElement::t();
    let a = GroupElement::gen_a();
    let b = GroupElement::gen_b();
    let st = s * t;
    let ts = t * s;
    let id = GroupElement::IDENTITY;

    let eq = |name: &str, anchor: &str, lhs: GroupElement, rhs: GroupElement| {
        Check::compare(name, anchor, &rhs, &lhs)
    };
    vec![
        eq("S^2 = I", "S has order 2", s.pow(2), id),
        eq("(ST)^3 = I", "ST has order 3", st.pow(3), id),
        eq("(TS)^3 = I", "TS has order 3", ts.pow(3), id),
        eq("ST = B(TS)", "ST = B(TS) = (TS)A", st, b * ts),
        eq("ST = (TS)A", "ST = B(TS) = (TS)A", st, ts * a),
        eq(
            "(ST)^2 = A^-1 (TS)^2",
            "(ST)^2 = A^-1 (TS)^2 = (TS)^2 B^-1",
            st.pow(2),
            a.inverse() * ts.pow(2),
        ),
        eq(
            "(ST)^2 = (TS)^2 B^-1",
            "(ST)^2 = A^-1 (TS)^2 = (TS)^2 B^-1",
            st.pow(2),
            ts.pow(2) * b.inverse(),
        ),
        Check::compare(
            "A in commutator subgroup",
            "A generates part of the commutator subgroup",
            &AbelianClass::ZERO,
            &abelianization(&a),
        ),
        Check::compare(
            "B in commutator subgroup",
            "B generates part of the commutator subgroup",
            &AbelianClass::ZERO,
            &abelianization(&b),
        ),
    ]
}

/// Cusp data of the two coset actions: cycle types of `x = perm(S)`,
/// `y = perm(ST)` and of their product `xy`.
pub fn verify_coset_actions() -> Vec<Check> {
    let s = GroupElement::s();
    let st = s * GroupElement::t();
    let mut checks = Vec::new();
    for (sub, label, x_type, y_type, xy_type, anchor) in [
        (
            Subgroup::Commutator,
            "commutator",
            vec![2, 2, 2],
            vec![3, 3],
            vec![6],
            "single cusp of width 6",
        ),
        (
            Subgroup::Gamma2,
            "Gamma(2)",
            vec![2, 2, 2],
            vec![3, 3],
            vec![2, 2, 2],
            "three cusps of width 2",
        ),
    ] {
        let x = coset_permutation(&s, sub);
        let y = coset_permutation(&st, sub);
        let xy = x.compose(&y);
        checks.push(Check::compare(
            format!("{label}: cycle type of x = perm(S)"),
            "x is an involution without fixed points",
            &x_type,
            &x.cycle_type(),
        ));
        checks.push(Check::compare(
            format!("{label}: cycle type of y = perm(ST)"),
            "y has order 3 without fixed points",
            &y_type,
            &y.cycle_type(),
        ));
        checks.push(Check::compare(
            format!("{label}: cycle type of xy"),
            anchor,
            &xy_type,
            &xy.cycle_type(),
        ));
        checks.push(Check::compare(
            format!("{label}: xy = perm(S * ST)"),
            "coset action is a homomorphism",
            &coset_permutation(&(s * st), sub),
            &xy,
        ));
    }
    checks
}
