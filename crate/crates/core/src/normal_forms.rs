//! The `(alpha, beta)` family of normal forms
//!
//! ```text
//! v = -(1/2 alpha) ln(1 - 2 alpha <z,z>) + sum_{s,t >= 2} G_st,
//! Delta G22 = Delta^2 G23 = 0,  Delta^3 G33 = beta Delta^4 (G22)^2,
//! ```
//!
//! with `<z,z>` as baseline for `alpha = 0`. Only checkers and baselines
//! live here; the normalization itself targets `(0, 0)`.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levi::{delta, delta_pow, levi_form, Signature};
use crate::normalize::HypersurfaceJet;
use crate::series::{transform, BigradedSeries, HoloSeries, MapJet, Scalar, USeries};

/// The pair `(alpha, beta)`; `(0, 0)` is the classical case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormSpec {
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl NormalFormSpec {
    pub fn classical() -> Self {
        NormalFormSpec {
            alpha: BigRational::zero(),
            beta: BigRational::zero(),
        }
    }
}

/// `-(1/2 alpha) ln(1 - 2 alpha t)` with `t = <z,z>`, i.e.
/// `sum_k (2 alpha)^{k-1} t^k / k`, to weight `cap`.
pub fn alpha_baseline(sig: &Signature, alpha: &BigRational, cap: u32) -> Result<BigradedSeries> {
    if cap < 2 {
        return Err(Error::Precondition("baseline needs weight cap >= 2".into()));
    }
    let t = levi_form(sig, cap)?;
    let two_alpha = Scalar::real(alpha * BigRational::from_integer(2.into()));
    let mut out = BigradedSeries::zero(sig.n(), cap)?;
    let mut power = t.clone();
    for k in 1..=(cap / 2) as i64 {
        let c = two_alpha.pow(k as u32 - 1).checked_div(&Scalar::from_int(k))?;
        out = out.add(&power.scale(&c))?;
        power = power.mul(&t)?;
    }
    Ok(out)
}

/// Residuals of the `(alpha, beta)` conditions; all zero iff the surface is
/// in that normal form to its weight cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualReport {
    #[serde(rename = "delta_G22")]
    pub delta_g22: BigradedSeries,
    #[serde(rename = "delta2_G23")]
    pub delta2_g23: BigradedSeries,
    #[serde(rename = "delta3_G33_minus_beta")]
    pub delta3_g33_minus_beta: BigradedSeries,
    pub in_normal_form: bool,
}

/// `G = F - baseline`, which must consist of types `(s, t)` with `s, t >= 2`.
pub fn remainder(f: &HypersurfaceJet, alpha: &BigRational) -> Result<BigradedSeries> {
    let g = f.f.sub(&alpha_baseline(&f.sig, alpha, f.weight_cap())?)?;
    if let Some((a, b, m, _)) = g.terms().find(|(a, b, _, _)| a.degree().min(b.degree()) < 2) {
        return Err(Error::Precondition(format!(
            "surface differs from the baseline by a term of type ({}, {}) with u^{}",
            a.degree(),
            b.degree(),
            m
        )));
    }
    Ok(g)
}

pub fn check_conditions(f: &HypersurfaceJet, spec: &NormalFormSpec) -> Result<ResidualReport> {
    let sig = &f.sig;
    let g = remainder(f, &spec.alpha)?;
    let g22 = g.type_component(2, 2);
    let delta_g22 = delta(sig, &g22)?;
    let delta2_g23 = delta_pow(sig, &g.type_component(2, 3), 2)?;
    let lhs = delta_pow(sig, &g.type_component(3, 3), 3)?;
    let sq = delta_pow(sig, &g22.mul(&g22)?, 4)?;
    let delta3_g33_minus_beta = lhs.sub(&sq.scale(&Scalar::real(spec.beta.clone())))?;
    let in_normal_form = delta_g22.is_zero() && delta2_g23.is_zero() && delta3_g33_minus_beta.is_zero();
    Ok(ResidualReport {
        delta_g22,
        delta2_g23,
        delta3_g33_minus_beta,
        in_normal_form,
    })
}

/// Contracted curvature sides `(Delta^3 H33 / 36, (4/9) Delta^4 (H22)^2 / 96)`.
///
/// Equal sides are the same condition as `beta = 1/6` in [`check_conditions`].
pub fn check_faran(h22: &BigradedSeries, h33: &BigradedSeries, sig: &Signature) -> Result<(BigradedSeries, BigradedSeries)> {
    let pure = |f: &BigradedSeries, s: u32| f.terms().all(|(a, b, _, _)| a.degree() == s && b.degree() == s);
    if !pure(h22, 2) || !pure(h33, 3) {
        return Err(Error::Precondition("expected series of types (2,2) and (3,3)".into()));
    }
    let lhs = delta_pow(sig, h33, 3)?.scale(&Scalar::from_frac(1, 36));
    let rhs = delta_pow(sig, &h22.mul(h22)?, 4)?.scale(&Scalar::from_frac(4, 9 * 96));
    let cap = lhs.weight_cap().min(rhs.weight_cap());
    Ok((lhs.truncate(cap).with_cap(cap)?, rhs.truncate(cap).with_cap(cap)?))
}

/// `q'''/(3q') - (q''/q')^2 / 2 + (alpha^2/6)(q'^2 - 1)` as a `w`-series.
pub fn projective_residual(q: &HoloSeries, alpha: &BigRational) -> Result<HoloSeries> {
    if q.terms().any(|(a, _, _)| a.degree() > 0) {
        return Err(Error::Precondition("q must depend on w only".into()));
    }
    let qs = USeries::from_holo(q);
    let d1 = qs.derivative();
    if d1.coeff(0).is_zero() {
        return Err(Error::Precondition("q'(0) must be nonzero".into()));
    }
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let deg = d3.deg();
    let inv = d1.inv()?.truncate(deg);
    let ratio = d2.mul(&inv);
    let a2 = Scalar::real(alpha * alpha);
    let res = d3
        .mul(&inv)
        .scale(&Scalar::from_frac(1, 3))
        .sub(&ratio.mul(&ratio).scale(&Scalar::from_frac(1, 2)))
        .add(&d1.mul(&d1).sub(&USeries::one(deg)).scale(&a2).scale(&Scalar::from_frac(1, 6)));
    HoloSeries::from_w_coeffs(q.dim(), q.weight_cap().saturating_sub(6), res.coeffs())
}

fn exp_series(x: &USeries) -> Result<USeries> {
    if !x.coeff(0).is_zero() {
        return Err(Error::Precondition("exponent must vanish at 0".into()));
    }
    let deg = x.deg();
    let mut out = USeries::one(deg);
    let mut term = USeries::one(deg);
    for k in 1..=deg as i64 {
        term = term.mul(x).scale(&Scalar::from_frac(1, k));
        out = out.add(&term);
    }
    Ok(out)
}

/// The map `z* = sqrt(q'(w)/q'(0)) C z exp((alpha i/2)(q(w) - w))`,
/// `w* = q(w)`, which preserves the `alpha` family, and the image of `f`.
pub fn alpha_form_map(f: &HypersurfaceJet, c: &[Vec<Scalar>], q: &HoloSeries, alpha: &BigRational) -> Result<(MapJet, HypersurfaceJet)> {
    let n = f.sig.n();
    let cap = f.weight_cap().min(q.weight_cap());
    let qs = USeries::from_holo(q);
    if q.terms().any(|(a, _, _)| a.degree() > 0) || !qs.coeff(0).is_zero() {
        return Err(Error::Precondition("q must depend on w only and vanish at 0".into()));
    }
    let d1 = qs.derivative();
    let q1 = d1.coeff(0);
    if q1.is_zero() {
        return Err(Error::Precondition("q'(0) must be nonzero".into()));
    }
    let root = d1.scale(&q1.inv()?).sqrt1()?;
    let shift = qs.sub(&USeries::t(qs.deg())).scale(&Scalar::real(alpha.clone()).mul_i().scale(&BigRational::new(1.into(), 2.into())));
    let factor = root.mul(&exp_series(&shift)?).to_holo(n, cap)?;
    let mut comps = Vec::with_capacity(n);
    for row in c {
        let mut acc = HoloSeries::zero(n, cap)?;
        for (j, cij) in row.iter().enumerate() {
            acc = acc.add(&HoloSeries::z(n, cap, j)?.scale(cij))?;
        }
        comps.push(acc.mul(&factor)?);
    }
    let map = MapJet::new(comps, q.truncate(cap))?;
    let image = transform(&f.f, &map, cap)?;
    Ok((map, HypersurfaceJet::new(f.sig, image)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rat, MultiIndex};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn baseline_examples() {
        let sig = Signature::new(1, 1).unwrap();
        assert_eq!(alpha_baseline(&sig, &rat(0, 1), 6).unwrap(), levi_form(&sig, 6).unwrap());
        let b = alpha_baseline(&sig, &rat(1, 1), 6).unwrap();
        let expect = BigradedSeries::from_terms(
            1,
            6,
            [
                (mi(&[1]), mi(&[1]), 0, Scalar::one()),
                (mi(&[2]), mi(&[2]), 0, Scalar::one()),
                (mi(&[3]), mi(&[3]), 0, Scalar::from_frac(4, 3)),
            ],
        )
        .unwrap();
        assert_eq!(b, expect);
        assert!(b.is_real());
    }

    #[test]
    fn quadric_is_in_every_beta_form() {
        let sig = Signature::new(2, 1).unwrap();
        let q = HypersurfaceJet::quadric(sig, 8).unwrap();
        for beta in [rat(0, 1), rat(1, 6), rat(-3, 2)] {
            let spec = NormalFormSpec { alpha: rat(0, 1), beta };
            assert!(check_conditions(&q, &spec).unwrap().in_normal_form);
        }
    }

    #[test]
    fn nonzero_trace_is_reported() {
        let sig = Signature::new(1, 1).unwrap();
        let extra = BigradedSeries::from_terms(1, 6, [(mi(&[2]), mi(&[2]), 0, Scalar::one())]).unwrap();
        let f = HypersurfaceJet::new(sig, levi_form(&sig, 6).unwrap().add(&extra).unwrap()).unwrap();
        let r = check_conditions(&f, &NormalFormSpec::classical()).unwrap();
        assert!(!r.in_normal_form);
        let four_zz = BigradedSeries::from_terms(1, 4, [(mi(&[1]), mi(&[1]), 0, Scalar::from_int(4))]).unwrap();
        assert_eq!(r.delta_g22, four_zz);
    }

    #[test]
    fn baseline_mismatch_is_an_error() {
        let sig = Signature::new(1, 1).unwrap();
        let extra = BigradedSeries::from_terms(1, 6, [(mi(&[2]), mi(&[1]), 0, Scalar::one()), (mi(&[1]), mi(&[2]), 0, Scalar::one())]).unwrap();
        let f = HypersurfaceJet::new(sig, levi_form(&sig, 6).unwrap().add(&extra).unwrap()).unwrap();
        assert!(check_conditions(&f, &NormalFormSpec::classical()).is_err());
    }

    #[test]
    fn projective_residual_examples() {
        let id = HoloSeries::w(1, 12).unwrap();
        assert!(projective_residual(&id, &rat(5, 2)).unwrap().is_zero());
        // Mobius u / (1 - r u) has vanishing bracket for alpha = 0.
        let r = Scalar::from_frac(2, 3);
        let coeffs: Vec<Scalar> = (0..=6).map(|m| if m == 0 { Scalar::zero() } else { r.pow(m - 1) }).collect();
        let mob = HoloSeries::from_w_coeffs(1, 12, &coeffs).unwrap();
        assert!(projective_residual(&mob, &rat(0, 1)).unwrap().is_zero());
        let two = HoloSeries::w(1, 12).unwrap().scale(&Scalar::from_int(2));
        let res = projective_residual(&two, &rat(1, 1)).unwrap();
        assert_eq!(res, HoloSeries::constant(1, 6, Scalar::from_frac(1, 2)).unwrap());
    }

    #[test]
    fn faran_sides_vanish_together() {
        let sig = Signature::new(2, 2).unwrap();
        let z = BigradedSeries::zero(2, 8).unwrap();
        let (l, r) = check_faran(&z, &z, &sig).unwrap();
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn alpha_map_with_identity_data_is_trivial() {
        let sig = Signature::new(1, 1).unwrap();
        let b = alpha_baseline(&sig, &rat(1, 2), 8).unwrap();
        let f = HypersurfaceJet::new(sig, b).unwrap();
        let id = HoloSeries::w(1, 8).unwrap();
        let (m, img) = alpha_form_map(&f, &[vec![Scalar::one()]], &id, &rat(1, 2)).unwrap();
        assert!(m.is_identity());
        assert_eq!(img, f);
    }
}
