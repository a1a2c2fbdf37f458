mod common;

use proptest::prelude::*;

use cmnf::levi::{delta, levi_form, Signature};
use cmnf::series::{solve_implicit_v, transform, BigradedSeries, VSeries};
use common::random::{near_identity_map, real_perturbation, rng, sparse_series};

const CAP: u32 = 6;

fn any_series(seed: u64, n: usize) -> BigradedSeries {
    sparse_series(&mut rng(seed), n, CAP, (0, CAP), 0.25, |_, _| true)
}

fn sig_for(pick: u8) -> Signature {
    let (n, e) = [(1, 1), (2, 1), (2, 2), (3, 2)][pick as usize % 4];
    Signature::new(n, e).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), n in 1usize..=2) {
        let (a, b, c) = (any_series(seed, n), any_series(seed ^ 1, n), any_series(seed ^ 2, n));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn conjugation_is_a_ring_involution(seed in any::<u64>(), n in 1usize..=2) {
        let (a, b) = (any_series(seed, n), any_series(seed ^ 7, n));
        prop_assert_eq!(a.mul(&b).unwrap().conjugate(), a.conjugate().mul(&b.conjugate()).unwrap());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert!(a.add(&a.conjugate()).unwrap().is_real());
    }

    #[test]
    fn type_components_sum_to_the_series(seed in any::<u64>(), n in 1usize..=2) {
        let a = any_series(seed, n);
        let mut sum = BigradedSeries::zero(n, CAP).unwrap();
        for s in 0..=CAP {
            for t in 0..=CAP - s {
                sum = sum.add(&a.type_component(s, t)).unwrap();
            }
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn delta_commutes_with_conjugation(seed in any::<u64>(), pick in 0u8..4) {
        let sig = sig_for(pick);
        let a = any_series(seed, sig.n());
        prop_assert_eq!(delta(&sig, &a.conjugate()).unwrap(), delta(&sig, &a).unwrap().conjugate());
    }

    #[test]
    fn transforms_of_real_surfaces_are_real(seed in any::<u64>(), pick in 0u8..2) {
        let sig = sig_for(pick);
        let n = sig.n();
        let mut r = rng(seed);
        let f = levi_form(&sig, CAP).unwrap().add(&real_perturbation(&mut r, n, CAP, 3, CAP, 0.3)).unwrap();
        let map = near_identity_map(&mut r, n, CAP);
        let image = transform(&f, &map, CAP).unwrap();
        prop_assert!(image.is_real());
        // Undoing the map recovers the surface.
        prop_assert_eq!(transform(&image, &map.inverse().unwrap(), CAP).unwrap(), f);
    }

    #[test]
    fn implicit_v_solutions_satisfy_the_equation(seed in any::<u64>(), n in 1usize..=2) {
        let mut r = rng(seed);
        let parts = [
            sparse_series(&mut r, n, CAP, (2, CAP), 0.3, |_, _| true),
            sparse_series(&mut r, n, CAP, (1, CAP - 2), 0.3, |_, _| true),
            sparse_series(&mut r, n, CAP, (0, CAP - 4), 0.3, |_, _| true),
        ];
        let rhs = VSeries::from_v_coefficients(n, CAP, &parts).unwrap();
        let v = solve_implicit_v(&rhs, CAP).unwrap();
        prop_assert_eq!(rhs.eval_v(&v).unwrap(), v);
    }
}
