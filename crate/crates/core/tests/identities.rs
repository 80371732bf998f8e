//! Structure identities and randomized profile properties at desk scale.

use cyclic_shape::arith::{divisors, is_prime_u64};
use cyclic_shape::coeffs::{coeff_literal, coeff_system, coeff_table};
use cyclic_shape::forms::{det_law_holds, full_form_invariants_hold, trace_zero_via_kronecker};
use cyclic_shape::lattice::is_positive_definite;
use cyclic_shape::matrix::{build_a_d, build_b, build_extended_a, congruence, kronecker_ones};
use cyclic_shape::ramification::Mode;
use cyclic_shape::{build_full_trace, build_trace_zero, FactoredDiscriminant, RamificationProfile};
use num_bigint::{BigInt, BigUint};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn kronecker_identity_all_m_up_to_30() {
    for m in 2u64..=30 {
        let b = build_b(m).unwrap();
        for d in divisors(m) {
            let lhs = congruence(&b, &build_a_d(m, d).unwrap()).unwrap();
            if d == m {
                assert!(lhs.is_zero(), "B^T A_m B != 0 at m = {m}");
            } else {
                let rhs = kronecker_ones(d, &build_extended_a(m / d).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "kronecker identity failed at m = {m}, d = {d}");
            }
        }
    }
}

/// Random strict profile: pick a nonempty set of divisors d > 1 of m and
/// attach one or two fresh primes p = 1 (mod d), p not dividing m, with
/// exponent m - m/d each.
pub fn random_strict_disc(m: u64, rng: &mut StdRng) -> FactoredDiscriminant {
    loop {
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        let mut used: Vec<u64> = Vec::new();
        for d in divisors(m).into_iter().skip(1) {
            if rng.gen_bool(0.5) {
                continue;
            }
            let count = rng.gen_range(1..=2);
            for _ in 0..count {
                let p = loop {
                    let t = rng.gen_range(1..=400u64);
                    let candidate = d * t + 1;
                    if is_prime_u64(candidate)
                        && m % candidate != 0
                        && !used.contains(&candidate)
                    {
                        break candidate;
                    }
                };
                used.push(p);
                factors.push((BigUint::from(p), (m - m / d) as u32));
            }
        }
        if factors.is_empty() {
            continue;
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        return FactoredDiscriminant::new(1, factors).unwrap();
    }
}

#[test]
fn randomized_profile_laws() {
    let mut rng = StdRng::seed_from_u64(0x5ca1ab1e);
    let degrees = [4u64, 6, 8, 9, 10, 12, 15, 16, 18, 20, 24];
    let mut checked = 0;
    for &m in &degrees {
        for _ in 0..5 {
            let d = random_strict_disc(m, &mut rng);
            let profile = RamificationProfile::validate(m, &d, Mode::Strict).unwrap();

            // conductor-discriminant reconstruction
            let mut acc = BigInt::from(1);
            for dd in divisors(m).into_iter().skip(1) {
                let (w, _) = profile.w_and_f(dd).unwrap();
                acc *= w.pow((m - m / dd) as u32);
            }
            assert_eq!(acc, d.value());

            // emitted table: literal entries where the closed form agrees,
            // recorded discrepancies (with the system value kept) where the
            // nested-chain erratum bites, and consistent bookkeeping
            let system = coeff_system(&profile).unwrap();
            let table = coeff_table(&profile).unwrap();
            for dd in divisors(m) {
                if dd == 1 || dd == m {
                    continue;
                }
                let lit = coeff_literal(&profile, dd).unwrap();
                let sys = system.get(dd).unwrap();
                assert_eq!(table.get(dd).unwrap(), sys);
                let flagged = table.discrepancies().iter().any(|x| x.divisor == dd);
                assert_eq!(lit != *sys, flagged, "discrepancy bookkeeping at d = {dd}");
            }
            assert_eq!(table.eigenvalue_on_class(m).unwrap(), BigInt::from(1));
            for g in divisors(m) {
                let mut rhs = BigInt::from(1);
                for dd in divisors(m).into_iter().skip(1) {
                    if g % dd != 0 {
                        rhs *= profile.w_and_f(dd).unwrap().0;
                    }
                }
                assert_eq!(table.eigenvalue_on_class(g).unwrap(), rhs);
            }

            // determinant laws and positivity
            let form = build_trace_zero(m, &d, Mode::Strict).unwrap();
            assert!(det_law_holds(&form), "det law at m = {m}, disc = {d}");
            assert!(is_positive_definite(form.gram()).unwrap());
            let full = build_full_trace(m, &d, Mode::Strict).unwrap();
            assert!(full_form_invariants_hold(&full));

            // the kronecker-sum route agrees entrywise
            let via = trace_zero_via_kronecker(&table, m).unwrap();
            assert_eq!(&via, form.gram());
            checked += 1;
        }
    }
    assert!(checked >= 50, "expected at least 50 randomized profiles");
}

#[test]
fn chain_free_degrees_never_disagree() {
    // for m whose proper divisors are prime, every P_d with d < m is a
    // single vector and the closed form provably equals the system
    let mut rng = StdRng::seed_from_u64(0xfeed);
    for &m in &[4u64, 6, 9, 10, 15] {
        for _ in 0..6 {
            let d = random_strict_disc(m, &mut rng);
            let profile = RamificationProfile::validate(m, &d, Mode::Strict).unwrap();
            let system = coeff_system(&profile).unwrap();
            for dd in divisors(m) {
                if dd == 1 || dd == m {
                    continue;
                }
                assert_eq!(
                    coeff_literal(&profile, dd).unwrap(),
                    *system.get(dd).unwrap(),
                    "m = {m}, d = {dd}, disc = {d}"
                );
            }
            assert!(coeff_table(&profile).unwrap().discrepancies().is_empty());
        }
    }
}

#[test]
fn negative_even_degree_profiles() {
    // m = 2 mod 4 admits negative discriminants; the determinant law holds
    // through the sign-aware system
    let cases = [
        (2u64, vec![(3u32, 1u32)]),
        (2, vec![(3, 1), (7, 1), (11, 1)]),
        (6, vec![(7, 5)]),
        (6, vec![(13, 3)]), // e_13 = 2: 6/(6-3)... 13 = 1 mod 2, v = 3 -> e = 2
        (10, vec![(11, 9)]),
    ];
    for (m, pairs) in cases {
        let d = FactoredDiscriminant::new(
            -1,
            pairs
                .iter()
                .map(|(p, e)| (BigUint::from(*p), *e))
                .collect(),
        )
        .unwrap();
        let form = build_trace_zero(m, &d, Mode::Strict).unwrap();
        assert!(det_law_holds(&form), "det law at m = {m}, disc = {d}");
        let full = build_full_trace(m, &d, Mode::Strict).unwrap();
        assert!(full_form_invariants_hold(&full));
    }
    // m = 0 mod 4 with negative sign is rejected outright
    let d = FactoredDiscriminant::new(-1, vec![(BigUint::from(5u32), 3)]).unwrap();
    assert!(build_trace_zero(4, &d, Mode::Strict).is_err());
}

#[test]
fn prime_degree_specialization_randomized() {
    let mut rng = StdRng::seed_from_u64(0xdeadbeef);
    for l in [3u64, 5, 7, 11] {
        for _ in 0..4 {
            let d = random_squarefree_conductor(l, &mut rng);
            let form = build_trace_zero(l, &d, Mode::Strict).unwrap();
            let expect = cyclic_shape::matrix::build_root_a(l - 1)
                .unwrap()
                .scaled(&d.radical());
            assert_eq!(form.gram(), &expect, "prime case failed at l = {l}");
        }
    }
}

pub fn random_squarefree_conductor(l: u64, rng: &mut StdRng) -> FactoredDiscriminant {
    let count = rng.gen_range(1..=3);
    let mut primes: Vec<u64> = Vec::new();
    while primes.len() < count {
        let t = rng.gen_range(1..=400u64);
        let p = l * t + 1;
        if is_prime_u64(p) && !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes.sort();
    FactoredDiscriminant::new(
        1,
        primes
            .into_iter()
            .map(|p| (BigUint::from(p), (l - 1) as u32))
            .collect(),
    )
    .unwrap()
}
