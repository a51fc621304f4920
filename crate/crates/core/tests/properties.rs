use std::sync::Arc;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbitforge::cli::builtin_catalog;
use orbitforge::cohomology::{profile_in, InvariantComplex};
use orbitforge::levi::{betti_numbers, LeviDatum, SubsetKind};
use orbitforge::moduli::{path_values, solve_ff_standard, verify_ff};
use orbitforge::multivec::{
    bivector_from_coefficients, cartan_involution, coefficients_of, is_invariant, kks, schouten, schouten_closed_form,
    BracketCoefficients,
};
use orbitforge::rational::{frac, q, Q};
use orbitforge::rootsystem::RootSystem;

const TYPES: [&str; 10] = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"];

fn levi(ty: &str, gamma: &[usize]) -> LeviDatum {
    let rs = Arc::new(RootSystem::new(ty.parse().unwrap()).unwrap());
    LeviDatum::new(rs, gamma).unwrap()
}

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    frac(rng.gen_range(-10..=10), rng.gen_range(1..=10))
}

fn random_coefficients(l: &LeviDatum, rng: &mut ChaCha8Rng) -> BracketCoefficients {
    BracketCoefficients::from_fn(l, |_| random_q(rng))
}

fn coeffs_from(l: &LeviDatum, vals: &[(i64, i64)]) -> BracketCoefficients {
    let mut it = vals.iter().cycle();
    BracketCoefficients::from_fn(l, |_| {
        let (n, d) = it.next().unwrap();
        frac(*n, *d)
    })
}

fn small_q() -> impl Strategy<Value = (i64, i64)> {
    (-10i64..=10, 1i64..=10)
}

#[test]
fn root_system_tables() {
    for ty in TYPES {
        let rs = RootSystem::new(ty.parse().unwrap()).unwrap();
        let n = rs.rank();
        let mut sum = vec![0i64; n];
        for r in rs.roots() {
            for (s, c) in sum.iter_mut().zip(&r.0) {
                *s += *c as i64;
            }
        }
        assert!(sum.iter().all(|s| *s == 0), "{ty}");
        let count = rs.roots().len();
        for a in 0..count {
            let ka = rs.killing_pairing(a);
            assert!(ka.is_positive(), "{ty}");
            for b in 0..count {
                if rs.inner(&rs.roots()[a], &rs.roots()[a]) == rs.inner(&rs.roots()[b], &rs.roots()[b]) {
                    assert_eq!(ka, rs.killing_pairing(b), "{ty}");
                }
                assert_eq!(rs.n(a, b), -rs.n(rs.neg_index(a), rs.neg_index(b)), "{ty}");
            }
        }
    }
}

#[test]
fn quasiroot_fibers_and_positive_systems() {
    for ty in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"] {
        let rs = Arc::new(RootSystem::new(ty.parse().unwrap()).unwrap());
        let n = rs.rank();
        for mask in 0..(1u32 << n) - 1 {
            let gamma: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let l = LeviDatum::new(rs.clone(), &gamma).unwrap();
            let pos = l.standard_positive();
            assert_eq!(l.subset_classify(pos.positives()).unwrap().kind, SubsetKind::Semilinear, "{ty}{gamma:?}");
            let mut total = 0;
            for x in l.quasiroots() {
                let f = l.fiber(x).unwrap().len();
                assert_eq!(f, l.fiber(&x.neg()).unwrap().len());
                total += f;
            }
            assert_eq!(total, rs.roots().len() - l.levi_roots().len());
            assert_eq!(pos.simple().len(), n - gamma.len());
            if rs.dim() <= 28 && !(ty == "D4" && gamma.is_empty()) {
                assert_eq!(betti_numbers(&rs, &gamma).unwrap()[1], n - gamma.len());
            }
        }
    }
}

#[test]
fn closed_form_matches_direct_schouten() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for pair in builtin_catalog().pairs {
        let l = pair.levi().unwrap();
        for _ in 0..50 {
            let c = random_coefficients(&l, &mut rng);
            let d = random_coefficients(&l, &mut rng);
            let direct = schouten(&l, &bivector_from_coefficients(&l, &c), &bivector_from_coefficients(&l, &d)).unwrap();
            let closed = schouten_closed_form(&l, &c, &d).to_multivector(&l);
            assert_eq!(direct, closed, "{}", pair.key());
        }
    }
}

#[test]
fn paths_agree_and_seeds_are_generic() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for pair in builtin_catalog().pairs {
        let l = pair.levi().unwrap();
        let n = l.complement().len();
        let pos = l.standard_positive();
        let k = q(1);
        let mut admissible = 0;
        for _ in 0..200 {
            let seeds: Vec<Q> = (0..n).map(|_| random_q(&mut rng)).collect();
            let Ok(sol) = solve_ff_standard(&l, &seeds, &k) else { continue };
            admissible += 1;
            if admissible > 100 {
                continue;
            }
            assert!(verify_ff(&l, &sol.c, &k).unwrap().holds);
            for x in pos.positives() {
                let v = sol.c.value(x);
                assert!(path_values(pos, &sol.c, x, &k).iter().all(|(_, p)| *p == v), "{}", pair.key());
            }
            // c(a) + c(b) = 0 only at ±K, and ±K propagates along sums and differences
            for (a, b) in l.composable_pairs() {
                let (ca, cb) = (sol.c.value(&a), sol.c.value(&b));
                if (&ca + &cb).is_zero() {
                    assert_eq!(ca.abs(), k);
                }
                let sum = sol.c.value(&a.add(&b));
                if ca.abs() == k && cb.abs() != k {
                    assert_eq!(sum, ca);
                    if l.is_quasiroot(&a.sub(&b)) {
                        assert_eq!(sol.c.value(&a.sub(&b)), ca);
                    }
                }
                if ca.abs() == k && cb == ca {
                    assert_eq!(sum, ca);
                }
            }
        }
        assert!(admissible >= 180, "{}: {admissible}/200", pair.key());
    }
}

#[test]
fn cohomology_low_degrees_and_euler() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (ty, gamma) in [("A1", vec![]), ("A2", vec![]), ("A2", vec![1]), ("A3", vec![1, 3]), ("B2", vec![2]), ("B2", vec![])] {
        let l = levi(ty, &gamma);
        let cx = InvariantComplex::full(&l).unwrap();
        let n = l.complement().len();
        for _ in 0..4 {
            let seeds: Vec<Q> = (0..n).map(|_| random_q(&mut rng)).collect();
            let Ok(sol) = solve_ff_standard(&l, &seeds, &q(1)) else { continue };
            let p = profile_in(&cx, &l, &sol.c, &q(1)).unwrap();
            assert_eq!(p.h_dims[0], 1);
            assert_eq!(p.h_dims[1], 0);
            assert_eq!(p.h_dims[2], n);
            let (a, b) = p.euler_characteristics();
            assert_eq!(a, b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bivectors_are_invariant_and_round_trip(vals in prop::collection::vec(small_q(), 1..8), idx in 0usize..5) {
        let (ty, gamma): (&str, Vec<usize>) = [("A2", vec![]), ("B2", vec![]), ("G2", vec![]), ("A3", vec![2]), ("B3", vec![1])][idx].clone();
        let l = levi(ty, &gamma);
        let c = coeffs_from(&l, &vals);
        let f = bivector_from_coefficients(&l, &c);
        prop_assert!(is_invariant(&l, &f));
        prop_assert_eq!(coefficients_of(&l, &f).unwrap(), c);
    }

    #[test]
    fn theta_fixes_brackets_of_anti_invariant_bivectors(a in prop::collection::vec(small_q(), 4), b in prop::collection::vec(small_q(), 4)) {
        let l = levi("B2", &[]);
        let rs = l.root_system();
        let v = bivector_from_coefficients(&l, &coeffs_from(&l, &a));
        let w = bivector_from_coefficients(&l, &coeffs_from(&l, &b));
        prop_assert_eq!(cartan_involution(rs, &v), v.scale(&q(-1)));
        prop_assert_eq!(cartan_involution(rs, &w), w.scale(&q(-1)));
        let vw = schouten(&l, &v, &w).unwrap();
        prop_assert_eq!(cartan_involution(rs, &vw), vw);
    }

    #[test]
    fn schouten_is_bilinear_and_symmetric(a in prop::collection::vec(small_q(), 4), b in prop::collection::vec(small_q(), 4), c in prop::collection::vec(small_q(), 4), s in small_q()) {
        let l = levi("B2", &[]);
        let s = frac(s.0, s.1);
        let u = bivector_from_coefficients(&l, &coeffs_from(&l, &a));
        let v = bivector_from_coefficients(&l, &coeffs_from(&l, &b));
        let w = bivector_from_coefficients(&l, &coeffs_from(&l, &c));
        let lhs = schouten(&l, &u.scale(&s).add(&v).unwrap(), &w).unwrap();
        let rhs = schouten(&l, &u, &w).unwrap().scale(&s).add(&schouten(&l, &v, &w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(schouten(&l, &u, &v).unwrap(), schouten(&l, &v, &u).unwrap());
    }

    #[test]
    fn kks_is_poisson(lam in prop::collection::vec((1i64..=9, 1i64..=9), 2), idx in 0usize..4) {
        let (ty, gamma): (&str, Vec<usize>) = [("A2", vec![]), ("B2", vec![]), ("G2", vec![]), ("A3", vec![2])][idx].clone();
        let l = levi(ty, &gamma);
        let lambda: Vec<Q> = lam.iter().take(l.complement().len()).map(|(n, d)| frac(*n, *d)).collect();
        let s = bivector_from_coefficients(&l, &kks(&l, &lambda).unwrap());
        prop_assert!(schouten(&l, &s, &s).unwrap().is_zero());
    }
}
