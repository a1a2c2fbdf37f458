//! Substitution of holomorphic maps into real series, and pullback of
//! hypersurfaces `v = F(z, zbar, u)` under map jets.

use super::bigraded::BigradedSeries;
use super::holo::HoloSeries;
use super::mapjet::MapJet;
use super::poly::{compose, Poly};
use super::scalar::Scalar;
use super::vseries::{solve_implicit_v, VSeries};
use crate::error::{Error, Result};

/// `F(zmap(z, u), zbar_map(zbar, u), u_series)` on `v = 0`.
///
/// `zmap[k]` is holomorphic in `(z, w)` and `zbar_map[k]` is read as a
/// series in `(zbar, wbar)`; both are restricted to `w = wbar = u`.
pub fn substitute(
    f: &BigradedSeries,
    zmap: &[HoloSeries],
    zbar_map: &[HoloSeries],
    u_series: &BigradedSeries,
) -> Result<BigradedSeries> {
    let dim = f.dim();
    for len in [zmap.len(), zbar_map.len()] {
        if len != dim {
            return Err(Error::DimensionMismatch { left: len, right: dim });
        }
    }
    let mut cap = f.weight_cap().min(u_series.weight_cap());
    let mut slots: Vec<Poly> = Vec::with_capacity(2 * dim + 1);
    for h in zmap {
        cap = cap.min(h.weight_cap());
        slots.push(h.expand()?.at_v_zero().0);
    }
    for h in zbar_map {
        cap = cap.min(h.weight_cap());
        let barred = h.0.map_terms(|m, c| Some((m.swap_bars(dim), c.clone())));
        slots.push(barred);
    }
    slots.push(u_series.0.clone());
    let refs: Vec<Option<&Poly>> = slots.iter().map(Some).collect();
    Ok(BigradedSeries(compose(&f.0, &refs, dim, cap)?))
}

/// `F(zs, zbars, us)` with every slot holomorphic in `(z, w)`: the
/// complexified evaluation used when `z` and `zbar` are independent.
pub fn eval_holo(f: &BigradedSeries, zs: &[HoloSeries], zbars: &[HoloSeries], us: &HoloSeries) -> Result<HoloSeries> {
    let dim = f.dim();
    for len in [zs.len(), zbars.len()] {
        if len != dim {
            return Err(Error::DimensionMismatch { left: len, right: dim });
        }
    }
    let cap = zs
        .iter()
        .chain(zbars)
        .map(HoloSeries::weight_cap)
        .chain([f.weight_cap(), us.weight_cap()])
        .min()
        .unwrap_or(0);
    let refs: Vec<Option<&Poly>> = zs.iter().chain(zbars).chain([us]).map(|h| Some(&h.0)).collect();
    Ok(HoloSeries(compose(&f.0, &refs, dim, cap)?))
}

/// `F(f, conj f, Re g)` as a series in `(z, zbar, u, v)`, where the map
/// components are expanded at `w = u + i v`.
pub(crate) fn compose_real(f: &BigradedSeries, map: &MapJet, cap: u32) -> Result<VSeries> {
    let dim = f.dim();
    let mut slots: Vec<Poly> = Vec::with_capacity(2 * dim + 1);
    let ex: Vec<VSeries> = map.f.iter().map(HoloSeries::expand).collect::<Result<_>>()?;
    for e in &ex {
        slots.push(e.0.truncate(cap));
    }
    for e in &ex {
        slots.push(e.conjugate().0.truncate(cap));
    }
    slots.push(map.g.expand()?.real_part().0.truncate(cap));
    let refs: Vec<Option<&Poly>> = slots.iter().map(Some).collect();
    let cap = cap.min(f.weight_cap());
    Ok(VSeries(compose(&f.0, &refs, dim, cap)?))
}

/// Pullback of `v = F` under `psi` (old coordinates as functions of new ones):
/// the `F*` with `Im g = F(f, conj f, Re g)` on `v = F*`.
///
/// Writing `lambda = dg/dw(0)`, the equation is rearranged as
/// `v = v + (F(...) - Im g) / Re(lambda)`, which is contracting in `v`.
pub fn pullback(f: &BigradedSeries, psi: &MapJet, cap: u32) -> Result<BigradedSeries> {
    psi.validate()?;
    let dim = f.dim();
    if psi.dim() != dim {
        return Err(Error::DimensionMismatch { left: psi.dim(), right: dim });
    }
    let cap = cap.min(f.weight_cap()).min(psi.weight_cap());
    let lam = psi.linear_part().c;
    if num_traits::Zero::is_zero(lam.re()) {
        return Err(Error::Precondition("map is not transversal: Re dg/dw(0) = 0".into()));
    }
    let inv_re = Scalar::real(lam.re().clone()).inv()?;
    let fo = compose_real(f, psi, cap)?;
    let img = psi.g.expand()?.imag_part().truncate(cap);
    let v = VSeries::v(dim, cap)?;
    let rhs = v.add(&fo.sub(&img)?.scale(&inv_re))?;
    solve_implicit_v(&rhs, cap)
}

/// Image of `v = F` under `phi` (new coordinates as functions of old ones).
pub fn transform(f: &BigradedSeries, phi: &MapJet, cap: u32) -> Result<BigradedSeries> {
    pullback(f, &phi.inverse()?, cap)
}
