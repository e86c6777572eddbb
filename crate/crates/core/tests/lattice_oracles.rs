use std::collections::BTreeSet;

use kummer_core::intmat::IntMatrix;
use kummer_core::lattice::examples::{half_length_generators, kummer_generators};
use kummer_core::lattice::*;
use kummer_core::Rat;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every point of the grid `(1/den) Z^n / Z^n`.
fn grid(n: usize, den: i64) -> Vec<Vec<Rat>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..den).map(move |k| {
                    let mut q = p.clone();
                    q.push(Rat::new(k, den));
                    q
                })
            })
            .collect();
    }
    out
}

fn is_fixed(f: &AffineIsometry, x: &[Rat]) -> bool {
    f.apply(x).iter().zip(x).all(|(a, b)| (a - b).is_integer())
}

/// Fixed grid points found by brute force must be exactly the grid points on
/// the computed components, and every component must meet the grid.
fn assert_fixed_locus_matches_grid(f: &AffineIsometry, den: i64) {
    let comps = fixed_locus(f);
    for c in &comps {
        assert!(c.contains(c.basepoint()));
        let d = c.denominator();
        assert!(i64::try_from(d.clone()).map_or(false, |d| den % d == 0), "basepoint off grid: {c:?}");
    }
    for x in grid(f.dim(), den) {
        let brute = is_fixed(f, &x);
        let hits = comps.iter().filter(|c| c.contains(&x)).count();
        assert_eq!(brute, hits > 0, "{f:?} at {x:?}");
        assert!(hits <= 1, "components overlap at {x:?}");
    }
}

fn random_isometry(rng: &mut ChaCha8Rng, n: usize) -> AffineIsometry {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = IntMatrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    let t = (0..n).map(|_| Rat::new(rng.gen_range(0..4), 4)).collect();
    AffineIsometry::new(m, t).unwrap()
}

#[test]
fn group_mechanics_of_the_primary_action() {
    let g = generate_group(&kummer_generators()).unwrap();
    assert_eq!(g.order(), 8);
    assert!(g.is_abelian());
    assert_eq!(g.exponent(), 2);
    for name in ["alpha*beta", "alpha*gamma", "beta*gamma", "alpha*beta*gamma"] {
        let i = g.index_of_name(name).unwrap_or_else(|| panic!("missing {name}"));
        assert!(fixed_locus(g.element(i)).is_empty(), "{name} has fixed points");
    }
    for (name, gen) in kummer_generators() {
        let comps = fixed_locus(&gen);
        assert_eq!(comps.len(), 16, "{name}");
        assert!(comps.iter().all(|c| c.dimension() == 1));
    }
}

#[test]
fn census_of_the_primary_action() {
    let g = generate_group(&kummer_generators()).unwrap();
    let census = singular_census(&g, true).unwrap();
    assert_eq!(census.component_count(), 48);
    assert_eq!(census.orbit_count(), 12);
    for o in &census.orbits {
        assert_eq!(o.orbit_size(), 4);
        assert_eq!(o.local_model.label(), "S¹×(ℂ²/±1)");
        assert_eq!(o.quotient_length_factor, Rat::one());
    }
}

#[test]
fn census_of_the_half_length_action() {
    let g = generate_group(&half_length_generators()).unwrap();
    let census = singular_census(&g, true).unwrap();
    assert_eq!(census.orbit_count(), 16);
    let halved: Vec<&CensusOrbit> = census
        .orbits
        .iter()
        .filter(|o| o.translation_elements.iter().any(|(_, t)| *t == Rat::half()))
        .collect();
    assert_eq!(halved.len(), 8);
    assert!(halved.iter().all(|o| o.quotient_length_factor == Rat::half()));
    assert!(census
        .orbits
        .iter()
        .filter(|o| o.quotient_length_factor == Rat::one())
        .all(|o| o.translation_elements.is_empty()));
}

#[test]
fn certificate_passes_on_both_examples() {
    for gens in [kummer_generators(), half_length_generators()] {
        let g = generate_group(&gens).unwrap();
        let cert = pi1_certificate(&g);
        assert!(cert.passed(), "{cert:?}");
        assert!(cert.unreversed_directions().is_empty());
    }
}

#[test]
fn fixed_locus_of_examples_matches_brute_force() {
    let g = generate_group(&kummer_generators()).unwrap();
    for e in g.elements() {
        assert_fixed_locus_matches_grid(e, 4);
    }
}

#[test]
fn fixed_locus_of_random_t3_actions_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let f = random_isometry(&mut rng, 3);
        assert_fixed_locus_matches_grid(&f, 8);
    }
}

#[test]
fn compose_and_inverse_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts = grid(3, 4);
    for _ in 0..50 {
        let f = random_isometry(&mut rng, 3);
        let h = random_isometry(&mut rng, 3);
        let fh = f.compose(&h).unwrap();
        assert!(f.compose(&f.inverse()).unwrap().is_identity());
        for x in pts.iter().step_by(7) {
            assert_eq!(fh.apply(x), f.apply(&h.apply(x)));
        }
    }
}

#[test]
fn closure_matches_naive_word_enumeration() {
    for gens in [kummer_generators(), half_length_generators()] {
        let g = generate_group(&gens).unwrap();
        // naive closure: multiply until nothing new appears
        let mut seen: BTreeSet<(IntMatrix, Vec<Rat>)> = BTreeSet::new();
        let mut frontier = vec![AffineIsometry::identity(5)];
        while let Some(e) = frontier.pop() {
            let key = (e.linear().clone(), e.translation().to_vec());
            if !seen.insert(key) {
                continue;
            }
            for (_, s) in &gens {
                frontier.push(s.compose(&e).unwrap());
            }
        }
        assert_eq!(seen.len(), g.order());
        for e in g.elements() {
            assert!(seen.contains(&(e.linear().clone(), e.translation().to_vec())));
        }
    }
}

#[test]
fn closure_cap_is_enforced() {
    let gens = kummer_generators();
    assert!(matches!(generate_group_with_cap(&gens, 4), Err(kummer_core::Error::ClosureCap { cap: 4 })));
}
