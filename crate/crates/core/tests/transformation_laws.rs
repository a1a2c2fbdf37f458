//! Behaviour of the (2,2) and (3,3) parts under `z -> sqrt(q'/q'(0)) C z, w -> q(w)`.

mod common;

use cmnf::hyperquadric::GroupElement;
use cmnf::levi::levi_form;
use cmnf::normalize::{normalize, phi3_map, HypersurfaceJet};
use cmnf::series::{substitute, BigradedSeries, HoloSeries, Scalar, USeries};
use common::{linear, sample_21};
use num_traits::Signed;

const CAP: u32 = 8;

fn normal_surface() -> HypersurfaceJet {
    let f = sample_21(CAP);
    normalize(&f, &GroupElement::identity(f.sig), CAP).unwrap().normal_surface
}

/// Checks `H22 = q' H22*(Cz, q)` and
/// `H33 = sgn(rho) q'^2 H33*(Cz, q) + ((1/2)(q''/q')^2 - q'''/(3 q')) <z,z>^3`.
fn check_laws(h: &HypersurfaceJet, c: &[Vec<Scalar>], q_coeffs: &[Scalar]) {
    let sig = h.sig;
    let n = sig.n();
    let q = HoloSeries::from_w_coeffs(n, CAP, q_coeffs).unwrap();
    let (_, hs) = phi3_map(h, c, &q).unwrap();

    let zmap = linear(c, CAP);
    let zbar: Vec<HoloSeries> = zmap.iter().map(|s| s.conj_coeffs()).collect();
    let qu = q.at_real();
    let d1 = USeries::from_holo(&q).derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let real = |s: &USeries| -> BigradedSeries { s.to_holo(n, CAP).unwrap().at_real() };
    let qp = real(&d1);

    let h22 = substitute(&hs.f.type_component(2, 2), &zmap, &zbar, &qu).unwrap();
    assert_eq!(qp.mul(&h22).unwrap(), h.f.type_component(2, 2));

    let sign = if q_coeffs[1].re().is_positive() { 1 } else { -1 };
    let h33 = substitute(&hs.f.type_component(3, 3), &zmap, &zbar, &qu).unwrap();
    let inv = d1.inv().unwrap();
    let ratio = d2.mul(&inv);
    let schwarz = ratio.mul(&ratio).scale(&Scalar::from_frac(1, 2)).sub(&d3.mul(&inv).scale(&Scalar::from_frac(1, 3)));
    let t3 = levi_form(&sig, CAP).unwrap().pow(3);
    let rhs = qp
        .mul(&qp)
        .unwrap()
        .mul(&h33)
        .unwrap()
        .scale(&Scalar::from_int(sign))
        .add(&real(&schwarz).mul(&t3).unwrap())
        .unwrap();
    assert_eq!(rhs, h.f.type_component(3, 3));
}

fn swap() -> Vec<Vec<Scalar>> {
    vec![vec![Scalar::zero(), Scalar::one()], vec![Scalar::one(), Scalar::zero()]]
}

fn q_with(rho: i64) -> Vec<Scalar> {
    vec![
        Scalar::zero(),
        Scalar::from_int(rho),
        Scalar::from_frac(1, 3),
        Scalar::from_frac(1, 5),
        Scalar::from_frac(-1, 2),
    ]
}

#[test]
fn laws_hold_for_a_sign_reversing_reparametrization() {
    let h = normal_surface();
    assert!(!h.f.type_component(3, 3).is_zero());
    check_laws(&h, &swap(), &q_with(-1));
}

#[test]
fn laws_hold_for_an_orientation_preserving_reparametrization() {
    let h = normal_surface();
    let c = vec![
        vec![Scalar::from_int(1), Scalar::zero()],
        vec![Scalar::zero(), Scalar::from_int(-1)],
    ];
    check_laws(&h, &c, &q_with(1));
}
