//! Normalization of a real hypersurface jet `v = F(z, zbar, u)` to the
//! normal form `v = <z,z> + sum_{s,t >= 2} F_st` with
//! `Delta F22 = Delta^2 F23 = Delta^3 F33 = 0`.
//!
//! The map is assembled from three stages: removal of harmonic terms along a
//! curve `z = p(w)`, the substitution `z -> U(w) E(w) (z + D(z, w))`, and the
//! reparametrization `w -> q(w)`. The free data of the normalization are an
//! element `(C, a, rho, r)` of the isotropy group of the quadric.

mod json;
mod stages;

use serde::{Deserialize, Serialize};

pub use json::SeriesMatrixJson;
pub use stages::{
    adjoint, harmonic_part, hermitian_matrix, hermitian_series, phi1_map, phi2_map, phi3_map, q_from_kappa, solve_d,
    solve_e, solve_g, solve_q, solve_u,
};
pub(crate) use stages::u_degree;

use crate::error::{Error, Result};
use crate::hyperquadric::GroupElement;
use crate::levi::{delta, delta_pow, levi_form, Signature};
use crate::series::{BigradedSeries, HoloSeries, MapJet, MultiIndex, SeriesMatrix, MAX_CAP};
use stages::{de_map, matrix_map, stage1};

/// A real hypersurface `v = F(z, zbar, u)` through the origin.
///
/// `F` has no terms of weight below 2, no linear `u` term, and
/// `F11(z, zbar, 0) = <z,z>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawJet")]
pub struct HypersurfaceJet {
    #[serde(rename = "signature")]
    pub sig: Signature,
    #[serde(rename = "F")]
    pub f: BigradedSeries,
}

#[derive(Deserialize)]
struct RawJet {
    signature: Signature,
    #[serde(rename = "F")]
    f: BigradedSeries,
}

impl TryFrom<RawJet> for HypersurfaceJet {
    type Error = Error;
    fn try_from(r: RawJet) -> Result<Self> {
        HypersurfaceJet::new(r.signature, r.f)
    }
}

impl HypersurfaceJet {
    pub fn new(sig: Signature, f: BigradedSeries) -> Result<Self> {
        if f.dim() != sig.n() {
            return Err(Error::DimensionMismatch { left: f.dim(), right: sig.n() });
        }
        if f.weight_cap() < 2 {
            return Err(Error::Precondition("weight cap must be at least 2".into()));
        }
        if !f.is_real() {
            return Err(Error::Precondition("F is not real".into()));
        }
        let n = sig.n();
        let zeros = MultiIndex::zeros(n);
        if f.terms().any(|(a, b, m, _)| a.degree() + b.degree() + 2 * m < 2) {
            return Err(Error::Precondition("F or its first z-derivatives do not vanish at 0".into()));
        }
        if !f.coefficient(&zeros, &zeros, 1)?.is_zero() {
            return Err(Error::Precondition("F has a linear u term".into()));
        }
        let f11 = f.type_component(1, 1).u_component(0);
        if f11 != levi_form(&sig, f.weight_cap())? {
            return Err(Error::Precondition("F11 at u = 0 must equal <z,z>".into()));
        }
        Ok(HypersurfaceJet { sig, f })
    }

    pub(crate) fn unchecked(sig: Signature, f: BigradedSeries) -> Self {
        HypersurfaceJet { sig, f }
    }

    /// `v = <z,z>`.
    pub fn quadric(sig: Signature, cap: u32) -> Result<Self> {
        Ok(HypersurfaceJet {
            sig,
            f: levi_form(&sig, cap)?,
        })
    }

    pub fn weight_cap(&self) -> u32 {
        self.f.weight_cap()
    }

    pub fn truncate(&self, cap: u32) -> Self {
        HypersurfaceJet {
            sig: self.sig,
            f: self.f.truncate(cap),
        }
    }

    /// Changes the cap; when raising it the missing terms are taken to be 0.
    pub fn with_cap(&self, cap: u32) -> Result<Self> {
        Ok(HypersurfaceJet {
            sig: self.sig,
            f: self.f.with_cap(cap)?,
        })
    }
}

/// Output of the second stage.
pub(crate) struct Stage2 {
    pub d: Vec<HoloSeries>,
    pub e: SeriesMatrix,
    pub u: SeriesMatrix,
    pub de_map: MapJet,
    pub u_map: MapJet,
    pub surface: HypersurfaceJet,
}

fn shape_defect(sig: &Signature, f: &BigradedSeries) -> Result<Option<String>> {
    if !harmonic_part(f)?.is_zero() {
        return Ok(Some("harmonic terms present".into()));
    }
    if f.type_component(1, 1) != levi_form(sig, f.weight_cap())? {
        return Ok(Some("F11 differs from <z,z>".into()));
    }
    if f.terms().any(|(a, b, _, _)| a.degree().min(b.degree()) == 1 && a.degree() + b.degree() > 2) {
        return Ok(Some("terms of type (s,1) or (1,t) with s,t >= 2".into()));
    }
    Ok(None)
}

pub(crate) fn stage2(f1: &HypersurfaceJet) -> Result<Stage2> {
    let sig = f1.sig;
    let n = sig.n();
    let cap = f1.weight_cap();
    let d = solve_d(f1)?;
    let e = solve_e(&sig, &f1.f.type_component(1, 1))?;
    let dm = de_map(&d, &e, n, cap)?;
    let f2 = crate::series::transform(&f1.f, &dm, cap)?;
    if let Some(detail) = shape_defect(&sig, &f2)? {
        return Err(Error::Postcondition { stage: "D/E", detail });
    }
    let u = solve_u(&sig, &f2.type_component(2, 2))?;
    let um = matrix_map(&u, n, cap)?;
    let h = crate::series::transform(&f2, &um, cap)?;
    if !delta(&sig, &h.type_component(2, 2))?.is_zero() {
        return Err(Error::Postcondition {
            stage: "U",
            detail: "Delta H22 does not vanish".into(),
        });
    }
    Ok(Stage2 {
        d,
        e,
        u,
        de_map: dm,
        u_map: um,
        surface: HypersurfaceJet::unchecked(sig, h),
    })
}

/// `Delta^2 H23` after the first two stages along the curve `p`.
pub(crate) fn chain_residual(f: &HypersurfaceJet, p: &[HoloSeries]) -> Result<BigradedSeries> {
    let s1 = stage1(f, p)?;
    let s2 = stage2(&s1.surface)?;
    delta_pow(&f.sig, &s2.surface.f.type_component(2, 3), 2)
}

/// The stage data of a normalization, all as jets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stages {
    pub p: Vec<HoloSeries>,
    pub g: HoloSeries,
    #[serde(rename = "D")]
    pub d: Vec<HoloSeries>,
    #[serde(rename = "E")]
    pub e: SeriesMatrixJson,
    #[serde(rename = "U")]
    pub u: SeriesMatrixJson,
    pub q: HoloSeries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationResult {
    /// The normalizing map, old coordinates to normal ones.
    pub map: MapJet,
    pub normal_surface: HypersurfaceJet,
    pub stages: Stages,
}

/// Normalizes `f` with initial data `sigma`, exact to weight `cap`.
///
/// All stages run at `cap + 2`; the map, the surface and the stage data are
/// truncated to `cap` on output.
pub fn normalize(f: &HypersurfaceJet, sigma: &GroupElement, cap: u32) -> Result<NormalizationResult> {
    let sig = f.sig;
    if *sigma.sig() != sig {
        return Err(Error::Precondition("group element and surface have different signatures".into()));
    }
    let inner = cap + 2;
    if inner > MAX_CAP {
        return Err(Error::CapTooLarge { cap: inner, max: MAX_CAP });
    }
    let fk = f.with_cap(inner)?;
    let (psi, phi) = sigma.decompose();
    // Coefficients of w^k with 2k > cap + 1 do not reach the output, and the
    // last one at the inner cap would need a pass at weight inner + 1.
    let p = crate::chains::general_chain_jet(&fk, psi.a(), inner - 1)?
        .iter()
        .map(|h| h.with_cap(inner))
        .collect::<Result<Vec<_>>>()?;
    let s1 = stage1(&fk, &p)?;
    let s2 = stage2(&s1.surface)?;
    let h = &s2.surface;
    let res = delta_pow(&sig, &h.f.type_component(2, 3), 2)?;
    if let Some(w) = res.min_weight() {
        return Err(Error::Degenerate {
            stage: "p",
            order: w.div_ceil(2) as usize,
            detail: "Delta^2 H23 does not vanish along the computed curve".into(),
        });
    }
    let q = solve_q(&sig, &h.f.type_component(3, 3), phi.rho(), phi.r(), inner)?;
    let (m3, nf) = phi3_map(h, phi.c(), &q)?;
    let phi1 = s1.psi.inverse()?;
    let map = m3.compose(&s2.u_map.compose(&s2.de_map.compose(&phi1)?)?)?;
    let normal = nf.truncate(cap);
    if let Some(detail) = shape_defect(&sig, &normal.f)? {
        return Err(Error::Postcondition { stage: "q", detail });
    }
    for (k, r) in cm_residuals(&sig, &normal.f)?.iter().enumerate() {
        if !r.is_zero() {
            return Err(Error::Postcondition {
                stage: "q",
                detail: format!("normal-form residual {} does not vanish", k + 1),
            });
        }
    }
    let deg = u_degree(cap);
    Ok(NormalizationResult {
        map: map.truncate(cap),
        normal_surface: normal,
        stages: Stages {
            p: p.iter().map(|h| h.truncate(cap)).collect(),
            g: s1.g.truncate(cap),
            d: s2.d.iter().map(|h| h.truncate(cap)).collect(),
            e: SeriesMatrixJson::from(&s2.e.truncate(deg)),
            u: SeriesMatrixJson::from(&s2.u.truncate(deg)),
            q: q.truncate(cap),
        },
    })
}

/// `[Delta F22, Delta^2 F23, Delta^3 F33]`.
pub fn cm_residuals(sig: &Signature, f: &BigradedSeries) -> Result<[BigradedSeries; 3]> {
    Ok([
        delta(sig, &f.type_component(2, 2))?,
        delta_pow(sig, &f.type_component(2, 3), 2)?,
        delta_pow(sig, &f.type_component(3, 3), 3)?,
    ])
}

/// Whether `normalize(f, sigma)` equals `phi o normalize(f, psi)` as jets,
/// where `sigma = phi o psi` with `psi = (id, a, 1, 0)` and `phi = (C, 0, rho, r)`.
pub fn decompose_check(f: &HypersurfaceJet, sigma: &GroupElement, cap: u32) -> Result<bool> {
    let (psi, phi) = sigma.decompose();
    let full = normalize(f, sigma, cap)?.map;
    let part = normalize(f, &psi, cap)?.map;
    let composed = phi.jet_of(cap)?.compose(&part)?.truncate(cap);
    Ok(composed == full)
}
