//! The individual stages: harmonic terms (`p`, `g`), the `(s,1)` terms and
//! the Levi form (`D`, `E`), `Delta H22` (`U`) and the parameter `q`.

use num_rational::BigRational;
use num_traits::Zero;

use super::HypersurfaceJet;
use crate::error::{Error, Result};
use crate::levi::{delta, delta_pow, Signature};
use crate::series::{
    eval_holo, mat_identity, mat_mul, mat_add, mat_scale, pullback, transform, BigradedSeries, HoloSeries, MapJet,
    MultiIndex, Scalar, SeriesMatrix, USeries,
};

/// Highest power of `u` visible at weight `cap`.
pub(crate) fn u_degree(cap: u32) -> usize {
    (cap / 2) as usize
}

pub(crate) fn zvars(n: usize, cap: u32) -> Result<Vec<HoloSeries>> {
    (0..n).map(|k| HoloSeries::z(n, cap, k)).collect()
}

fn unit_position(m: &MultiIndex) -> Option<usize> {
    (m.degree() == 1).then(|| m.0.iter().position(|&e| e == 1)).flatten()
}

/// Matrix `K(u)` of a type-(1,1) series `<K(u) z, z>`, so that
/// `K_ij = eps_i [z_j zbar_i]`.
pub fn hermitian_matrix(sig: &Signature, f11: &BigradedSeries, deg: usize) -> Result<SeriesMatrix> {
    let n = sig.n();
    let mut k = SeriesMatrix::zero(n, deg);
    for (alpha, beta, m, c) in f11.terms() {
        let (Some(j), Some(i)) = (unit_position(&alpha), unit_position(&beta)) else {
            return Err(Error::Precondition("series is not of type (1,1)".into()));
        };
        let c = if sig.eps(i) < 0 { -c.clone() } else { c.clone() };
        k.rows[i][j].set(m as usize, c);
    }
    Ok(k)
}

/// `<K(u) z, z>` as a series of weight cap `cap`.
pub fn hermitian_series(sig: &Signature, k: &SeriesMatrix, cap: u32) -> Result<BigradedSeries> {
    let n = sig.n();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (m, c) in k.rows[i][j].coeffs().iter().enumerate() {
                if c.is_zero() || 2 + 2 * m as u32 > cap {
                    continue;
                }
                let c = if sig.eps(i) < 0 { -c.clone() } else { c.clone() };
                terms.push((MultiIndex::unit(n, j), MultiIndex::unit(n, i), m as u32, c));
            }
        }
    }
    BigradedSeries::from_terms(n, cap, terms)
}

/// Adjoint with respect to `<.,.>`: `E M^H E`.
pub fn adjoint(sig: &Signature, m: &SeriesMatrix) -> SeriesMatrix {
    let n = m.n();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = m.rows[j][i].conj();
                    if sig.eps(i) * sig.eps(j) < 0 {
                        e.neg()
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    SeriesMatrix { rows }
}

/// `M(w) x` for a vector of holomorphic series.
pub(crate) fn apply_matrix(m: &SeriesMatrix, x: &[HoloSeries], cap: u32) -> Result<Vec<HoloSeries>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            let mut acc = HoloSeries::zero(n, cap)?;
            for (mij, xj) in m.rows[i].iter().zip(x) {
                if mij.is_zero() {
                    continue;
                }
                acc = acc.add(&mij.to_holo(n, cap)?.mul(&xj.with_cap(cap)?)?)?;
            }
            Ok(acc)
        })
        .collect()
}

/// `(z, w) -> (M(w) z, w)`.
pub(crate) fn matrix_map(m: &SeriesMatrix, n: usize, cap: u32) -> Result<MapJet> {
    MapJet::new(apply_matrix(m, &zvars(n, cap)?, cap)?, HoloSeries::w(n, cap)?)
}

/// Terms of type `(s, 0)` or `(0, t)`, including the pure `u` terms.
pub fn harmonic_part(f: &BigradedSeries) -> Result<BigradedSeries> {
    let n = f.dim();
    let terms = f
        .terms()
        .filter(|(a, b, _, _)| a.degree() == 0 || b.degree() == 0)
        .map(|(a, b, m, c)| (a, b, m, c.clone()))
        .collect::<Vec<_>>();
    BigradedSeries::from_terms(n, f.weight_cap(), terms)
}

fn check_curve(p: &[HoloSeries], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::DimensionMismatch { left: p.len(), right: n });
    }
    for h in p {
        if h.terms().any(|(a, m, _)| a.degree() > 0 || m == 0) {
            return Err(Error::Precondition("curve p(w) must depend on w only and vanish at 0".into()));
        }
    }
    Ok(())
}

/// The `g` of the harmonic stage: with `h(w) = F(p, conj p, w)`,
/// `g = -i h + 2i F(z + p, conj p, w + (g - i h)/2)`, so `g(0, w) = i h(w)`.
pub fn solve_g(f: &HypersurfaceJet, p: &[HoloSeries]) -> Result<HoloSeries> {
    let n = f.sig.n();
    check_curve(p, n)?;
    let cap = p.iter().map(HoloSeries::weight_cap).fold(f.f.weight_cap(), u32::min);
    let fs = f.f.truncate(cap);
    let w = HoloSeries::w(n, cap)?;
    let p: Vec<HoloSeries> = p.iter().map(|h| h.truncate(cap)).collect();
    let pbar: Vec<HoloSeries> = p.iter().map(HoloSeries::conj_coeffs).collect();
    let zs: Vec<HoloSeries> = zvars(n, cap)?
        .iter()
        .zip(&p)
        .map(|(z, pk)| z.add(pk))
        .collect::<Result<_>>()?;
    let ih = eval_holo(&fs, &p, &pbar, &w)?.scale(&Scalar::i());
    let half = Scalar::from_frac(1, 2);
    let two_i = Scalar::from_int(2).mul_i();
    let mut g = HoloSeries::zero(n, cap)?;
    for _ in 0..cap + 3 {
        let us = w.add(&g.sub(&ih)?.scale(&half))?;
        let next = eval_holo(&fs, &zs, &pbar, &us)?.scale(&two_i).sub(&ih)?;
        if next == g {
            return Ok(g);
        }
        g = next;
    }
    Err(Error::Contraction { weight: cap })
}

/// Output of the harmonic stage.
pub(crate) struct Stage1 {
    pub g: HoloSeries,
    /// `(z, w) -> (z + p(w), w + g(z, w))`, new coordinates to old ones.
    pub psi: MapJet,
    pub surface: HypersurfaceJet,
}

pub(crate) fn stage1(f: &HypersurfaceJet, p: &[HoloSeries]) -> Result<Stage1> {
    let n = f.sig.n();
    let g = solve_g(f, p)?;
    let cap = g.weight_cap();
    let fz: Vec<HoloSeries> = zvars(n, cap)?
        .iter()
        .zip(p)
        .map(|(z, pk)| z.add(&pk.truncate(cap)))
        .collect::<Result<_>>()?;
    let psi = MapJet::new(fz, HoloSeries::w(n, cap)?.add(&g)?)?;
    let f1 = pullback(&f.f, &psi, cap)?;
    let harm = harmonic_part(&f1)?;
    if !harm.is_zero() {
        return Err(Error::Postcondition {
            stage: "p/g",
            detail: format!("harmonic terms remain from weight {:?}", harm.min_weight()),
        });
    }
    Ok(Stage1 {
        g,
        psi,
        surface: HypersurfaceJet::unchecked(f.sig, f1),
    })
}

/// The map `(z, w) -> (z - p(w) + ..., w - g + ...)` removing the harmonic
/// terms along the curve `p`, and the transformed surface.
pub fn phi1_map(f: &HypersurfaceJet, p: &[HoloSeries]) -> Result<(MapJet, HypersurfaceJet)> {
    let s = stage1(f, p)?;
    Ok((s.psi.inverse()?, s.surface))
}

/// `D` with `F11(z + D(z,u), zbar, u) = sum_s F_s1(z, zbar, u)`, as series in
/// `(z, w)` read at `w = u`.
pub fn solve_d(fstar: &HypersurfaceJet) -> Result<Vec<HoloSeries>> {
    let sig = &fstar.sig;
    let n = sig.n();
    let f = &fstar.f;
    let cap = f.weight_cap();
    if !harmonic_part(f)?.is_zero() {
        return Err(Error::Precondition("surface has harmonic terms".into()));
    }
    let k = hermitian_matrix(sig, &f.type_component(1, 1), u_degree(cap))?;
    // Coefficient of zbar_i in sum_s F_s1, which equals eps_i (K Z)_i.
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        let unit = MultiIndex::unit(n, i);
        let terms = f
            .terms()
            .filter(|(_, b, _, _)| *b == unit)
            .map(|(a, _, m, v)| (a, m, if sig.eps(i) < 0 { -v.clone() } else { v.clone() }))
            .collect::<Vec<_>>();
        c.push(HoloSeries::from_terms(n, cap, terms)?);
    }
    let kinv = k.inv().map_err(|_| Error::Degenerate {
        stage: "D",
        order: 0,
        detail: "F11 is degenerate".into(),
    })?;
    let z = apply_matrix(&kinv, &c, cap)?;
    let d: Vec<HoloSeries> = z
        .iter()
        .zip(zvars(n, cap)?)
        .map(|(a, b)| a.sub(&b))
        .collect::<Result<_>>()?;
    if d.iter().any(|h| h.terms().any(|(a, _, _)| a.degree() < 2)) {
        return Err(Error::Postcondition {
            stage: "D",
            detail: "D has terms of z-degree below 2".into(),
        });
    }
    Ok(d)
}

/// The `<.,.>`-self-adjoint `E(u)` with `<E z, E z> = F11` and `E(0) = id`.
pub fn solve_e(sig: &Signature, f11: &BigradedSeries) -> Result<SeriesMatrix> {
    let n = sig.n();
    let deg = u_degree(f11.weight_cap());
    let k = hermitian_matrix(sig, f11, deg)?;
    if k.coeff_matrix(0) != mat_identity(n) {
        return Err(Error::Degenerate {
            stage: "E",
            order: 0,
            detail: "F11 at u = 0 is not <z,z>".into(),
        });
    }
    let id = SeriesMatrix::identity(n, deg);
    let nil = k.add(&id.scale(&Scalar::from_int(-1)));
    // Binomial series of (id + N)^{1/2}; N commutes with itself, so the sum
    // is self-adjoint whenever K is.
    let mut e = id.clone();
    let mut power = id;
    let mut coef = Scalar::one();
    for j in 1..=deg as i64 {
        coef = (&coef * &(Scalar::from_frac(1, 2) - Scalar::from_int(j - 1))).checked_div(&Scalar::from_int(j))?;
        power = power.mul(&nil);
        e = e.add(&power.scale(&coef));
    }
    Ok(e)
}

/// `U(u)` with `U(0) = id` and `<U z, U z> = <z, z>`, chosen so that the
/// substitution `z -> U(w) z` kills `Delta G22`.
///
/// Writing `Delta G22 = <P z, z>`, the generator is
/// `Y = (P/(2i) - tau) / (n + 2)` with `tau = Tr P / (4i (n+1))`, and
/// `U' = U Y`.
pub fn solve_u(sig: &Signature, g22: &BigradedSeries) -> Result<SeriesMatrix> {
    let n = sig.n();
    let deg = u_degree(g22.weight_cap());
    let p = hermitian_matrix(sig, &delta(sig, g22)?, deg)?;
    let nn = n as i64;
    let mut tr = USeries::zero(deg);
    for k in 0..n {
        tr = tr.add(&p.rows[k][k]);
    }
    let tau = tr.scale(&Scalar::from_int(4 * (nn + 1)).mul_i().inv()?);
    let mut y = p.scale(&Scalar::from_int(2).mul_i().inv()?);
    for k in 0..n {
        y.rows[k][k] = y.rows[k][k].sub(&tau);
    }
    let y = y.scale(&Scalar::from_frac(1, nn + 2));
    if !y.add(&adjoint(sig, &y)).rows.iter().flatten().all(USeries::is_zero) {
        return Err(Error::Postcondition {
            stage: "U",
            detail: "generator is not anti-self-adjoint".into(),
        });
    }
    let mut coeffs = vec![mat_identity(n)];
    for m in 0..deg {
        let mut s = vec![vec![Scalar::zero(); n]; n];
        for i in 0..=m {
            s = mat_add(&s, &mat_mul(&coeffs[i], &y.coeff_matrix(m - i)));
        }
        coeffs.push(mat_scale(&s, &Scalar::from_frac(1, m as i64 + 1)));
    }
    Ok(SeriesMatrix::from_coeff_matrices(n, deg, &coeffs))
}

/// `(z, w) -> (U(w) E(w) (z + D(z, w)), w)` and the transformed surface.
pub fn phi2_map(
    fstar: &HypersurfaceJet,
    d: &[HoloSeries],
    e: &SeriesMatrix,
    u: &SeriesMatrix,
) -> Result<(MapJet, HypersurfaceJet)> {
    let n = fstar.sig.n();
    let cap = fstar.f.weight_cap();
    let map = de_map(d, &u.mul(e), n, cap)?;
    let out = transform(&fstar.f, &map, cap)?;
    Ok((map, HypersurfaceJet::unchecked(fstar.sig, out)))
}

pub(crate) fn de_map(d: &[HoloSeries], e: &SeriesMatrix, n: usize, cap: u32) -> Result<MapJet> {
    let x: Vec<HoloSeries> = zvars(n, cap)?
        .iter()
        .zip(d)
        .map(|(z, dk)| z.add(&dk.with_cap(cap)?))
        .collect::<Result<_>>()?;
    MapJet::new(apply_matrix(e, &x, cap)?, HoloSeries::w(n, cap)?)
}

/// `q(u)` solving `q''' = 3 q' kappa + (3/2) q''^2 / q'` with `q(0) = 0`,
/// `q'(0) = rho`, `q''(0) = 2 rho r`, where
/// `kappa = -Delta^3 H33 / (6 n (n+1) (n+2))`.
pub fn solve_q(sig: &Signature, h33: &BigradedSeries, rho: &BigRational, r: &BigRational, cap: u32) -> Result<HoloSeries> {
    if rho.is_zero() {
        return Err(Error::Precondition("q'(0) must be nonzero".into()));
    }
    let n = sig.n();
    let d3 = delta_pow(sig, h33, 3)?;
    if d3.terms().any(|(a, b, _, c)| a.degree() > 0 || b.degree() > 0 || !c.is_real()) {
        return Err(Error::Postcondition {
            stage: "q",
            detail: "Delta^3 H33 is not a real function of u".into(),
        });
    }
    let deg = u_degree(cap);
    let zeros = MultiIndex::zeros(n);
    let kc = (0..=deg)
        .map(|m| d3.coefficient(&zeros, &zeros, m as u32))
        .collect::<Result<Vec<_>>>()?;
    let nn = n as i64;
    let kappa = USeries::from_coeffs(deg, &kc).scale(&Scalar::from_frac(-1, 6 * nn * (nn + 1) * (nn + 2)));
    q_from_kappa(&kappa, rho, r, deg).and_then(|q| HoloSeries::from_w_coeffs(n, cap, q.coeffs()))
}

/// Coefficientwise solution of the `q` equation for a given `kappa(u)`.
pub fn q_from_kappa(kappa: &USeries, rho: &BigRational, r: &BigRational, deg: usize) -> Result<USeries> {
    let mut q = vec![Scalar::zero(); deg + 1];
    let rho_s = Scalar::real(rho.clone());
    if deg >= 1 {
        q[1] = rho_s.clone();
    }
    if deg >= 2 {
        q[2] = &rho_s * &Scalar::real(r.clone());
    }
    let three = Scalar::from_int(3);
    let three_halves = Scalar::from_frac(3, 2);
    for m in 0..deg.saturating_sub(2) {
        let qs = USeries::from_coeffs(deg, &q);
        let d1 = qs.derivative();
        let d2 = d1.derivative();
        let rhs = d1
            .mul(kappa)
            .scale(&three)
            .add(&d2.mul(&d2).mul(&d1.inv()?).scale(&three_halves));
        let den = ((m + 1) * (m + 2) * (m + 3)) as i64;
        q[m + 3] = rhs.coeff(m).checked_div(&Scalar::from_int(den))?;
    }
    Ok(USeries::from_coeffs(deg, &q))
}

/// `(z, w) -> (sqrt(q'(w)/q'(0)) C z, q(w))` and the transformed surface.
///
/// With `C = sqrt|q'(0)| U0` this is `sqrt(sign q'(0) q'(w)) U0 z`, kept
/// rational by never splitting off `sqrt|q'(0)|`.
pub fn phi3_map(h: &HypersurfaceJet, c: &[Vec<Scalar>], q: &HoloSeries) -> Result<(MapJet, HypersurfaceJet)> {
    let n = h.sig.n();
    let cap = h.f.weight_cap().min(q.weight_cap());
    if q.terms().any(|(a, _, _)| a.degree() > 0) {
        return Err(Error::Precondition("q must depend on w only".into()));
    }
    let d1 = USeries::from_holo(q).derivative();
    let q1 = d1.coeff(0);
    if q1.is_zero() {
        return Err(Error::Precondition("q'(0) must be nonzero".into()));
    }
    let s = d1.scale(&q1.inv()?).sqrt1()?.to_holo(n, cap)?;
    let z = zvars(n, cap)?;
    let mut f = Vec::with_capacity(n);
    for row in c {
        let mut acc = HoloSeries::zero(n, cap)?;
        for (cij, zj) in row.iter().zip(&z) {
            acc = acc.add(&zj.scale(cij))?;
        }
        f.push(acc.mul(&s)?);
    }
    let map = MapJet::new(f, q.truncate(cap))?;
    let out = transform(&h.f, &map, cap)?;
    Ok((map, HypersurfaceJet::unchecked(h.sig, out)))
}
