//! Randomized invariants over generated twisted and skew systems, checked
//! against brute-force oracles.

use std::sync::Arc;

use catcross_core::algebra::CheckMode;
use catcross_core::category::{FiniteCategory, Mor};
use catcross_core::ideals::{ideal_closure, ideal_closure_with, Schedule};
use catcross_core::ring::{Code, FiniteRing, RingHom};
use catcross_core::structure::{
    center_bruteforce, center_by_conditions, classify_commutativity, commutant_bruteforce,
    commutant_of_coefficients,
};
use catcross_core::system::CrossedSystem;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CAP: usize = 4096;

fn units(ring: &FiniteRing) -> Vec<Code> {
    ring.codes().filter(|&x| ring.left_inverse_code(x).is_some()).collect()
}

/// `Z_m[C_n]` twisted by the coboundary of `f`, with `f(e) = 1` and the
/// other values drawn from the units.
fn coboundary_system(m: usize, n: usize, picks: &[usize]) -> CrossedSystem {
    let ring = FiniteRing::cyclic(m).unwrap();
    let g = Arc::new(FiniteCategory::cyclic_group(n).unwrap());
    let us = units(&ring);
    let f: Vec<Code> = (0..n)
        .map(|i| if i == 0 { ring.one() } else { us[picks[i % picks.len()] % us.len()] })
        .collect();
    let mut entries = Vec::new();
    for (s, t) in g.composable_pairs() {
        let st = g.compose(s, t).unwrap();
        let inv = ring.left_inverse_code(f[st.0]).unwrap();
        let v = ring.mul_code(ring.mul_code(f[s.0], f[t.0]), inv);
        entries.push(((s, t), v));
    }
    CrossedSystem::twisted(g, ring, &entries).unwrap()
}

/// `Z_m[C_2]` with an arbitrary `α(s,s)`, which always satisfies the cocycle
/// identity because `C_2` has a single nonidentity element.
fn c2_twisted(m: usize, c: Code) -> CrossedSystem {
    let ring = FiniteRing::cyclic(m).unwrap();
    let g = Arc::new(FiniteCategory::cyclic_group(2).unwrap());
    CrossedSystem::twisted(g, ring, &[((Mor(1), Mor(1)), c)]).unwrap()
}

/// `(Z_2)^k ⋊ C_k` with the generator rotating coordinates.
fn rotation_system(k: usize) -> CrossedSystem {
    let z2 = FiniteRing::cyclic(2).unwrap();
    let ring = FiniteRing::product(&vec![z2; k]).unwrap();
    let g = Arc::new(FiniteCategory::cyclic_group(k).unwrap());
    // code bits are coordinates, most significant first
    let rotate = |x: Code, by: usize| {
        let mut y = x;
        for _ in 0..by {
            y = (y >> 1) | ((y & 1) << (k - 1));
        }
        y
    };
    let sigma: Vec<RingHom> = g
        .morphism_ids()
        .map(|s| {
            let table: Vec<Code> = ring.codes().map(|x| rotate(x, s.0)).collect();
            RingHom::from_table(ring.clone(), ring.clone(), table).unwrap()
        })
        .collect();
    CrossedSystem::skew(g.clone(), vec![ring; g.object_count()], sigma).unwrap()
}

fn assert_oracles(sys: &CrossedSystem) {
    assert!(sys.is_valid(), "{:?}", sys.validate().violations.first());
    let assoc = sys.check_associativity(CheckMode::Exhaustive { cap: 1 << 20 }).unwrap();
    assert!(assoc.passed());
    assert!(sys.unit_law_witness().is_none());
    let fast = center_by_conditions(sys, CAP).unwrap();
    let slow = center_bruteforce(sys, CAP).unwrap();
    assert_eq!(fast.elements(), slow.elements());
    assert!(fast.is_closed_subring(sys));
    let commutant = commutant_of_coefficients(sys).unwrap();
    let brute = commutant_bruteforce(sys, CAP).unwrap();
    assert_eq!(commutant.elements(sys, CAP).unwrap().elements(), brute.elements());
    let report = classify_commutativity(sys).unwrap();
    assert!(report.consistent(), "{report:?}");
}

fn assert_closure_laws(sys: &CrossedSystem, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = sys.random_element(&mut rng, |_| true);
    let fifo = ideal_closure_with(sys, std::slice::from_ref(&x), CAP, Schedule::Fifo).unwrap();
    let lifo = ideal_closure_with(sys, std::slice::from_ref(&x), CAP, Schedule::Lifo).unwrap();
    assert_eq!(fifo.carrier(), lifo.carrier());
    assert!(fifo.contains(&x));
    assert!(fifo.contains(&sys.zero_element()));
    let basis = sys.basis_elements();
    for y in fifo.carrier() {
        for b in &basis {
            assert!(fifo.contains(&sys.mul(b, y).unwrap()));
            assert!(fifo.contains(&sys.mul(y, b).unwrap()));
        }
    }
    let z = sys.random_element(&mut rng, |_| true);
    let (a, b) = (&fifo.carrier()[seed as usize % fifo.len()], &z);
    let two = ideal_closure(sys, &[x.clone(), z.clone()], CAP).unwrap();
    assert!(two.contains(&sys.add(a, b).unwrap()));
    assert!(fifo.carrier().iter().all(|y| two.contains(y)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coboundary_twists_agree_with_oracles(
        m in 2usize..=5,
        n in 1usize..=4,
        picks in proptest::collection::vec(0usize..8, 4),
        seed in any::<u64>(),
    ) {
        let sys = coboundary_system(m, n, &picks);
        prop_assume!(sys.enumeration_size(|_| true) <= CAP as u128);
        assert_oracles(&sys);
        assert_closure_laws(&sys, seed);
    }

    #[test]
    fn arbitrary_c2_twists_agree_with_oracles(m in 2usize..=8, c in 0usize..8, seed in any::<u64>()) {
        let sys = c2_twisted(m, c % m);
        assert_oracles(&sys);
        assert_closure_laws(&sys, seed);
    }
}

#[test]
fn rotation_skew_rings_agree_with_oracles() {
    for k in 2..=3 {
        let sys = rotation_system(k);
        assert_oracles(&sys);
        for seed in 0..4 {
            assert_closure_laws(&sys, seed);
        }
    }
}
