//! Acceptance gate: one PASS/FAIL line per criterion, printed with
//! `cargo test --test acceptance -- --nocapture`.
//!
//! Three criteria fail on the reference data and are pinned in
//! `KNOWN_FAILING`: the twelve reference rows span a code of dimension 9,
//! so the weight distribution, the Golay certificate and the MacWilliams
//! fixed point cannot hold. The test fails if the set of failing criteria
//! changes in either direction.

use modular_golay::billiard::{verify_maps, BilliardMaps};
use modular_golay::bits::BitString24;
use modular_golay::code::{
    extended_qr_code, macwilliams_transform, DecodeStatus, LinearCode, SyndromeCodec,
};
use modular_golay::construction::{
    generating_family, reference_matrix, subset_for_hex, subset_for_quad, PUBLISHED_SUBSETS,
};
use modular_golay::labeling::{
    build_quadrilateral_labeling, mult3, mult4, orbits, Parity, C1, C2, C4, C7, NON_RESIDUES,
    RESIDUES,
};
use modular_golay::modular::{
    abelianization, coset_permutation, verify_group_identities, AbelianClass, GroupElement,
    Subgroup, Word,
};
use modular_golay::verify::light_error_patterns;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

const MATRIX_BUDGET: Duration = Duration::from_millis(1);
const ENUMERATOR_BUDGET: Duration = Duration::from_secs(1);
const CERTIFICATE_BUDGET: Duration = Duration::from_secs(1);
const DECODER_BUDGET: Duration = Duration::from_secs(10);
const DECODER_CODEWORDS: usize = 64;
const WEIGHT4_TRIALS: usize = 1000;
const SEED: u64 = 0x5EED_0024;

const KNOWN_FAILING: [u8; 3] = [2, 3, 10];

const GOLAY_ENUMERATOR: [(usize, u64); 5] = [(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)];
const OBSERVED_ENUMERATOR: [(usize, u64); 5] = [(0, 1), (8, 87), (12, 336), (16, 87), (24, 1)];

struct Outcome {
    id: u8,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn best_of<T>(runs: usize, mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut out = None;
    for _ in 0..runs {
        let start = Instant::now();
        let v = f();
        best = best.min(start.elapsed());
        out = Some(v);
    }
    (out.expect("at least one run"), best)
}

fn derived_code() -> LinearCode {
    LinearCode::from_bitstrings(generating_family().rows())
}

fn word(s: &str) -> GroupElement {
    s.parse::<Word>().expect("valid word").evaluate()
}

fn sets(groups: &[&[u8]]) -> BTreeSet<BTreeSet<u8>> {
    groups.iter().map(|g| g.iter().copied().collect()).collect()
}

fn matrix_identity() -> Outcome {
    let (matrix, elapsed) = best_of(5, generating_family);
    let dist = matrix.bit_distance(reference_matrix());
    Outcome {
        id: 1,
        name: "matrix identity",
        passed: dist == 0 && elapsed < MATRIX_BUDGET,
        detail: format!("{dist} of 288 bits differ, {elapsed:?} (budget {MATRIX_BUDGET:?})"),
    }
}

fn weight_distribution() -> Outcome {
    let code = derived_code();
    let (e, elapsed) = best_of(3, || code.weight_enumerator().expect("rank within guard"));
    // Independent count: XOR every subset of the twelve rows; each codeword
    // appears 2^(12 - rank) times.
    let rows = generating_family().rows().map(|r| r.bits());
    let mut brute = [0u64; 25];
    for m in 0u32..4096 {
        let w = (0..12)
            .filter(|i| m >> i & 1 == 1)
            .fold(0, |acc, i| acc ^ rows[i]);
        brute[w.count_ones() as usize] += 1;
    }
    let multiplicity = 1u64 << (12 - code.rank());
    let agrees = brute
        .iter()
        .zip(&e.coefficients)
        .all(|(&b, &a)| b == a * multiplicity);
    assert!(agrees, "enumerator disagrees with the brute-force count");
    assert_eq!(e.nonzero(), OBSERVED_ENUMERATOR);
    Outcome {
        id: 2,
        name: "weight distribution",
        passed: e.nonzero() == GOLAY_ENUMERATOR && elapsed < ENUMERATOR_BUDGET,
        detail: format!("{} codewords: {}, {elapsed:?}", e.total(), e.polynomial()),
    }
}

fn golay_certificate() -> Outcome {
    let code = derived_code();
    let ((rank, self_dual, doubly_even, d, golay), elapsed) = best_of(3, || {
        (
            code.rank(),
            code.is_self_dual(),
            code.is_doubly_even(),
            code.min_distance().expect("nonzero code"),
            code.identify_golay(),
        )
    });
    assert_eq!((rank, self_dual, doubly_even, d), (9, false, true, 8));
    Outcome {
        id: 3,
        name: "Golay certificate",
        passed: rank == 12 && self_dual && doubly_even && d == 8 && golay && elapsed < CERTIFICATE_BUDGET,
        detail: format!(
            "rank {rank}, self-dual {self_dual}, doubly even {doubly_even}, d {d}, identify_golay {golay}, {elapsed:?}"
        ),
    }
}

fn subset_reproduction() -> Outcome {
    let subset = |k: u8| {
        if k <= 12 {
            subset_for_quad(k as u32).expect("label in range")
        } else {
            subset_for_hex(k as u32).expect("label in range")
        }
    };
    let mismatched: Vec<u8> = PUBLISHED_SUBSETS
        .iter()
        .filter(|(k, members)| subset(*k).members() != members.to_vec())
        .map(|(k, _)| *k)
        .collect();
    let maps = BilliardMaps::standard();
    let paired: Vec<u8> = (1..=24u8)
        .filter(|&k| {
            let partner = if k <= 12 { &maps.sigma } else { &maps.delta };
            subset(k).bits != subset(partner.apply(k as u32).expect("label in range")).bits
        })
        .collect();
    let sum = |ks: &[u8]| {
        ks.iter()
            .fold(BitString24::ZERO, |acc, &k| acc ^ subset(k).bits)
    };
    let xor7 = subset(7).bits == sum(&[1, 2, 3, 4, 5]);
    let xor23 = subset(23).bits == sum(&[13, 15, 16, 17, 19]);
    Outcome {
        id: 4,
        name: "subset reproduction",
        passed: mismatched.is_empty() && paired.is_empty() && xor7 && xor23,
        detail: format!(
            "{} published lists, mismatches {mismatched:?}, pairing failures {paired:?}, S7 sum {xor7}, S23 sum {xor23}",
            PUBLISHED_SUBSETS.len()
        ),
    }
}

fn quadrilateral_structure() -> Outcome {
    let id = GroupElement::IDENTITY;
    let closes = word("STSTST") == id && word("TSTSTS") == id;
    let quad = build_quadrilateral_labeling().expect("walks close");
    let expected: BTreeSet<GroupElement> = ["", "T", "ST", "TST", "STST", "TSTST"]
        .iter()
        .map(|w| word(w))
        .collect();
    let reps_ok = quad.reps(Parity::Delta1Base) == expected;
    let found: Vec<Vec<u8>> = orbits(1..=12, |i| mult3(i as u32).expect("label in range"));
    let found: BTreeSet<BTreeSet<u8>> = found.iter().map(|o| o.iter().copied().collect()).collect();
    let orbits_ok = found == sets(&[&C1, &C4, &C2, &C7]);
    Outcome {
        id: 5,
        name: "quadrilateral structure",
        passed: closes && reps_ok && orbits_ok,
        detail: format!(
            "(ST)^3 = (TS)^3 = I {closes}, base reps {reps_ok}, mult3 orbits {orbits_ok}"
        ),
    }
}

fn hexagon_structure() -> Outcome {
    let found = orbits(13..=24, |j| mult4(j as u32).expect("label in range"));
    let shifted = |xs: &[u8]| xs.iter().map(|x| x + 12).collect::<Vec<_>>();
    let expected = sets(&[&shifted(&RESIDUES), &shifted(&NON_RESIDUES)]);
    let lengths: Vec<usize> = found.iter().map(Vec::len).collect();
    let found_sets: BTreeSet<BTreeSet<u8>> =
        found.iter().map(|o| o.iter().copied().collect()).collect();
    Outcome {
        id: 6,
        name: "hexagon structure",
        passed: lengths == [6, 6] && found_sets == expected,
        detail: format!("mult4 cycles {found:?}"),
    }
}

fn group_identities() -> Outcome {
    let checks = verify_group_identities();
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    // Direct restatement with explicit matrices.
    let a = GroupElement::new(1, 1, 1, 2).expect("unimodular");
    let b = GroupElement::new(1, -1, -1, 2).expect("unimodular");
    let (st, ts) = (word("ST"), word("TS"));
    let direct = st == b * ts
        && st == ts * a
        && st * st == a.inverse() * ts * ts
        && st * st == ts * ts * b.inverse()
        && word("SS") == GroupElement::IDENTITY
        && abelianization(&a) == AbelianClass::ZERO
        && abelianization(&b) == AbelianClass::ZERO;
    Outcome {
        id: 7,
        name: "group identities",
        passed: failed.is_empty() && direct,
        detail: format!(
            "{} checks, failed {failed:?}, direct restatement {direct}",
            checks.len()
        ),
    }
}

fn permutation_representations() -> Outcome {
    let (s, t) = (GroupElement::s(), GroupElement::t());
    let st = s * t;
    let t_comm = coset_permutation(&t, Subgroup::Commutator).cycle_type();
    let x2 = coset_permutation(&s, Subgroup::Gamma2);
    let y2 = coset_permutation(&st, Subgroup::Gamma2);
    let x_type = x2.cycle_type();
    let xy_type = x2.compose(&y2).cycle_type();
    Outcome {
        id: 8,
        name: "permutation representations",
        passed: t_comm == [6] && x_type == [2, 2, 2] && xy_type == [2, 2, 2],
        detail: format!(
            "commutator T {t_comm:?}, Gamma(2) S {x_type:?}, Gamma(2) S*ST {xy_type:?}"
        ),
    }
}

fn decoder() -> Outcome {
    let codec = SyndromeCodec::new(derived_code()).expect("distance 8");
    let patterns = light_error_patterns();
    assert_eq!(patterns.len(), 2325);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    let mut failures = 0usize;
    for _ in 0..DECODER_CODEWORDS {
        let info = rng.gen_range(0..1u32 << codec.info_bits());
        let c = codec.encode(info).expect("info fits the rank");
        for &e in &patterns {
            let out = codec.decode(c ^ e);
            if out.codeword != c || out.info != info {
                failures += 1;
            }
        }
    }
    let mut flagged = 0usize;
    for _ in 0..WEIGHT4_TRIALS {
        let info = rng.gen_range(0..1u32 << codec.info_bits());
        let c = codec.encode(info).expect("info fits the rank");
        let e = sample(&mut rng, 24, 4)
            .iter()
            .fold(BitString24::ZERO, |w, p| {
                w.flip(p as u32 + 1).expect("position in range")
            });
        if codec.decode(c ^ e).status == DecodeStatus::DetectedUncorrectable {
            flagged += 1;
        }
    }
    let elapsed = start.elapsed();
    let trials = DECODER_CODEWORDS * patterns.len();
    Outcome {
        id: 9,
        name: "decoder",
        passed: failures == 0 && flagged == WEIGHT4_TRIALS && elapsed < DECODER_BUDGET,
        detail: format!(
            "{trials} trials, {failures} failures; {flagged}/{WEIGHT4_TRIALS} weight-4 flagged; {elapsed:?}"
        ),
    }
}

fn property_suites() -> Outcome {
    let checks = verify_maps(&BilliardMaps::standard());
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    let code = derived_code();
    let e = code.weight_enumerator().expect("rank within guard");
    let transformed = macwilliams_transform(&e);
    let dual = LinearCode::new(24, code.parity_check()).expect("24-bit rows");
    let identity = transformed.as_ref() == dual.weight_enumerator().ok().as_ref();
    let fixed_point = transformed.as_ref() == Some(&e);
    assert!(
        identity,
        "MacWilliams transform disagrees with the enumerated dual"
    );
    Outcome {
        id: 10,
        name: "property suites",
        passed: failed.is_empty() && fixed_point,
        detail: format!(
            "{} map checks, failed {failed:?}; MacWilliams identity {identity}, fixed point {fixed_point}",
            checks.len()
        ),
    }
}

#[test]
fn acceptance() {
    let outcomes = [
        matrix_identity(),
        weight_distribution(),
        golay_certificate(),
        subset_reproduction(),
        quadrilateral_structure(),
        hexagon_structure(),
        group_identities(),
        permutation_representations(),
        decoder(),
        property_suites(),
    ];
    for o in &outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{mark}] {}: {}", o.id, o.name, o.detail);
    }
    let failing: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    println!(
        "{} of {} criteria pass; failing {failing:?}",
        outcomes.len() - failing.len(),
        outcomes.len()
    );
    assert_eq!(failing, KNOWN_FAILING);
}

/// Positive control for criteria 2, 3 and 10: the same machinery accepts
/// a genuine extended Golay code.
#[test]
fn golay_checks_accept_the_extended_qr_code() {
    let code = extended_qr_code();
    let e = code.weight_enumerator().expect("rank within guard");
    assert_eq!(e.nonzero(), GOLAY_ENUMERATOR);
    assert!(code.identify_golay());
    assert_eq!(macwilliams_transform(&e), Some(e.clone()));
    let codec = SyndromeCodec::new(code).expect("distance 8");
    assert_eq!(codec.syndrome_table().len(), 4096);
    assert_eq!(codec.correctable_syndromes(), 2325);
}
