mod common;

use cmnf::hyperquadric::GroupElement;
use cmnf::levi::{delta_pow, levi_form, Signature};
use cmnf::normal_forms::{alpha_baseline, check_conditions, check_faran, NormalFormSpec, ResidualReport};
use cmnf::normalize::{normalize, phi3_map, HypersurfaceJet};
use cmnf::series::{rat, BigradedSeries, HoloSeries, MultiIndex, Scalar};
use common::sample_11;

const SIGS: [(usize, usize); 4] = [(1, 1), (2, 1), (2, 2), (3, 2)];

fn mi(v: &[u32]) -> MultiIndex {
    MultiIndex(v.to_vec())
}

/// `k! n (n+1) ... (n+k-1)`, the value of `Delta^k <z,z>^k`.
fn rising(n: usize, k: u32) -> i64 {
    (0..k as i64).map(|j| (j + 1) * (n as i64 + j)).product()
}

#[test]
fn delta_powers_of_the_levi_form() {
    for (n, e) in SIGS {
        let sig = Signature::new(n, e).unwrap();
        let t = levi_form(&sig, 8).unwrap();
        for k in 1..=4u32 {
            let got = delta_pow(&sig, &t.pow(k), k).unwrap();
            let expect = BigradedSeries::constant(n, 0, Scalar::from_int(rising(n, k))).unwrap();
            assert_eq!(got.with_cap(0).unwrap(), expect, "({n},{e}) k={k}");
        }
    }
}

/// The (3,3) coefficient `c` with `c <z,z>^3` making the two Faran sides equal.
fn balancing_coefficient(sig: &Signature, h22: &BigradedSeries) -> Scalar {
    let n = sig.n();
    let sq = delta_pow(sig, &h22.mul(h22).unwrap(), 4).unwrap();
    let value = sq.coefficient(&MultiIndex::zeros(n), &MultiIndex::zeros(n), 0).unwrap();
    // Delta^3 (c t^3) / 36 = (1/216) Delta^4 (H22^2)
    value.checked_div(&Scalar::from_int(rising(n, 3) * 6)).unwrap()
}

#[test]
fn faran_sides_on_levi_powers_fix_beta() {
    // H22 = t^2, H33 = c t^3: equal sides exactly when c = 2(n+3)/3, which is
    // also where Delta^3 H33 = (1/6) Delta^4 (H22^2).
    for (n, e) in SIGS {
        let sig = Signature::new(n, e).unwrap();
        let t = levi_form(&sig, 8).unwrap();
        let h22 = t.pow(2);
        let c = balancing_coefficient(&sig, &h22);
        assert_eq!(c, Scalar::from_frac(2 * (n as i64 + 3), 3));
        let (l, r) = check_faran(&h22, &t.pow(3).scale(&c), &sig).unwrap();
        assert_eq!(l, r);
        let lhs = delta_pow(&sig, &t.pow(3).scale(&c), 3).unwrap();
        let rhs = delta_pow(&sig, &h22.mul(&h22).unwrap(), 4).unwrap().scale(&Scalar::from_frac(1, 6));
        assert_eq!(lhs.with_cap(0).unwrap(), rhs.with_cap(0).unwrap());
    }
}

/// `v = <z,z> + H22 + c <z,z>^3` with a traceless `H22` and balanced `c`.
fn faran_surface(cap: u32) -> (Signature, BigradedSeries, BigradedSeries) {
    let sig = Signature::new(2, 2).unwrap();
    let h22 = BigradedSeries::from_terms(
        2,
        cap,
        [
            (mi(&[2, 0]), mi(&[0, 2]), 0, Scalar::one()),
            (mi(&[0, 2]), mi(&[2, 0]), 0, Scalar::one()),
        ],
    )
    .unwrap();
    let c = balancing_coefficient(&sig, &h22);
    let h33 = levi_form(&sig, cap).unwrap().pow(3).scale(&c);
    (sig, h22, h33)
}

fn beta_spec(beta: num_rational::BigRational) -> NormalFormSpec {
    NormalFormSpec { alpha: rat(0, 1), beta }
}

#[test]
fn faran_checker_accepts_balanced_and_rejects_perturbed() {
    let (sig, h22, h33) = faran_surface(8);
    assert!(delta_pow(&sig, &h22, 1).unwrap().is_zero());
    let (l, r) = check_faran(&h22, &h33, &sig).unwrap();
    assert!(!l.is_zero());
    assert_eq!(l, r);
    let f = HypersurfaceJet::new(sig, levi_form(&sig, 8).unwrap().add(&h22).unwrap().add(&h33).unwrap()).unwrap();
    assert!(check_conditions(&f, &beta_spec(rat(1, 6))).unwrap().in_normal_form);
    assert!(!check_conditions(&f, &beta_spec(rat(1, 5))).unwrap().in_normal_form);
    assert!(!check_conditions(&f, &NormalFormSpec::classical()).unwrap().in_normal_form);

    let bump = BigradedSeries::from_terms(2, 8, [(mi(&[2, 1]), mi(&[2, 1]), 0, Scalar::from_frac(1, 10))]).unwrap();
    let (l, r) = check_faran(&h22, &h33.add(&bump).unwrap(), &sig).unwrap();
    assert_ne!(l, r);
    let g = HypersurfaceJet::new(sig, f.f.add(&bump).unwrap()).unwrap();
    assert!(!check_conditions(&g, &beta_spec(rat(1, 6))).unwrap().in_normal_form);
}

#[test]
fn faran_condition_survives_mobius_reparametrization() {
    let cap = 8;
    let (sig, h22, h33) = faran_surface(cap);
    let f = HypersurfaceJet::new(sig, levi_form(&sig, cap).unwrap().add(&h22).unwrap().add(&h33).unwrap()).unwrap();
    // q = rho u / (1 - r u) with rho = 4, C = 2 * (unitary).
    let (rho, r) = (Scalar::from_int(4), Scalar::from_frac(1, 2));
    let coeffs: Vec<Scalar> = (0..=cap / 2).map(|m| if m == 0 { Scalar::zero() } else { &rho * &r.pow(m - 1) }).collect();
    let q = HoloSeries::from_w_coeffs(2, cap, &coeffs).unwrap();
    let c = vec![
        vec![Scalar::gaussian((6, 5), (8, 5)), Scalar::zero()],
        vec![Scalar::zero(), Scalar::from_int(2)],
    ];
    let (_, image) = phi3_map(&f, &c, &q).unwrap();
    let g22 = image.f.type_component(2, 2);
    let g33 = image.f.type_component(3, 3);
    assert!(g22.max_u_power() > 0);
    let (l, r) = check_faran(&g22, &g33, &sig).unwrap();
    assert_eq!(l, r);
    assert!(check_conditions(&image, &beta_spec(rat(1, 6))).unwrap().in_normal_form);
}

#[test]
fn baseline_coefficients() {
    let sig = Signature::new(2, 1).unwrap();
    let t = levi_form(&sig, 8).unwrap();
    for alpha in [rat(0, 1), rat(1, 2), rat(-3, 4), rat(5, 3)] {
        let b = alpha_baseline(&sig, &alpha, 8).unwrap();
        let mut expect = BigradedSeries::zero(2, 8).unwrap();
        for k in 1..=4u32 {
            let c = (&alpha * rat(2, 1)).pow(k as i32 - 1) / rat(k as i64, 1);
            expect = expect.add(&t.pow(k).scale(&Scalar::real(c))).unwrap();
        }
        assert_eq!(b, expect);
    }
}

#[test]
fn pipeline_output_passes_the_classical_check() {
    let f = sample_11(8);
    let sigma = GroupElement::identity(f.sig);
    let out = normalize(&f, &sigma, 8).unwrap();
    let report = check_conditions(&out.normal_surface, &NormalFormSpec::classical()).unwrap();
    assert!(report.in_normal_form);
    assert!(!check_conditions(&f, &NormalFormSpec::classical()).is_ok_and(|r| r.in_normal_form));
}

#[test]
fn reports_and_results_round_trip_through_json() {
    let f = sample_11(6);
    let out = normalize(&f, &GroupElement::identity(f.sig), 6).unwrap();
    let text = serde_json::to_string(&out).unwrap();
    let back: cmnf::normalize::NormalizationResult = serde_json::from_str(&text).unwrap();
    assert_eq!(back, out);

    let spec = NormalFormSpec::classical();
    let report = check_conditions(&back.normal_surface, &spec).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let again: ResidualReport = serde_json::from_str(&text).unwrap();
    assert_eq!(again, report);
    assert_eq!(check_conditions(&back.normal_surface, &spec).unwrap(), report);
}
