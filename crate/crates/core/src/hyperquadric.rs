//! The isotropy group `H` of the hyperquadric `v = <z,z>`.
//!
//! An element `sigma = (C, a, rho, r)` acts by
//!
//! ```text
//! z* = C (z - a w) / (1 + delta),   w* = rho w / (1 + delta),
//! 1 + delta = 1 + 2i<z,a> - w (r + i<a,a>)
//! ```
//!
//! and is represented by the matrix acting on `(w, z, 1)`:
//!
//! ```text
//! [ rho             0      0 ]
//! [ -C a            C      0 ]
//! [ -r - i<a,a>  2i a^+    1 ]
//! ```
//!
//! with `a^+ z = <z, a>`. Composition is the matrix product.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::levi::{levi_form, levi_pair, Signature};
use crate::series::{
    format_rational, mat_identity, mat_inv, mat_mul, mat_vec, parse_rational, BigradedSeries, HoloSeries,
    MapJet, MultiIndex, Scalar, ScalarJson, VSeries,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    sig: Signature,
    c: Vec<Vec<Scalar>>,
    a: Vec<Scalar>,
    rho: BigRational,
    r: BigRational,
}

impl GroupElement {
    /// Validates `C^* E C = rho E` (`E = diag(eps)`) and `rho != 0`.
    pub fn new(sig: Signature, c: Vec<Vec<Scalar>>, a: Vec<Scalar>, rho: BigRational, r: BigRational) -> Result<Self> {
        let n = sig.n();
        if c.len() != n || c.iter().any(|row| row.len() != n) || a.len() != n {
            return Err(Error::NotInGroup(format!("parameter shapes do not match n = {n}")));
        }
        if rho.is_zero() {
            return Err(Error::NotInGroup("rho = 0".into()));
        }
        for i in 0..n {
            for j in 0..n {
                // (C^* E C)_{ij} = sum_k conj(C_ki) eps_k C_kj
                let mut s = Scalar::zero();
                for (k, row) in c.iter().enumerate() {
                    let t = &row[i].conj() * &row[j];
                    if sig.eps(k) > 0 {
                        s += &t;
                    } else {
                        s -= &t;
                    }
                }
                let want = if i == j {
                    Scalar::real(&rho * BigRational::from_integer(sig.eps(i).into()))
                } else {
                    Scalar::zero()
                };
                if s != want {
                    return Err(Error::NotInGroup("C is not a Levi similitude with factor rho".into()));
                }
            }
        }
        Ok(GroupElement { sig, c, a, rho, r })
    }

    pub fn identity(sig: Signature) -> Self {
        let n = sig.n();
        GroupElement {
            sig,
            c: mat_identity(n),
            a: vec![Scalar::zero(); n],
            rho: BigRational::from_integer(1.into()),
            r: BigRational::zero(),
        }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn c(&self) -> &[Vec<Scalar>] {
        &self.c
    }

    pub fn a(&self) -> &[Scalar] {
        &self.a
    }

    pub fn rho(&self) -> &BigRational {
        &self.rho
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElement::identity(self.sig)
    }

    fn aa(&self) -> Scalar {
        levi_pair(&self.sig, &self.a, &self.a).expect("shape checked")
    }

    /// `r + i<a,a>`.
    fn r_iaa(&self) -> Scalar {
        Scalar::real(self.r.clone()) + self.aa().mul_i()
    }

    pub fn to_matrix(&self) -> Vec<Vec<Scalar>> {
        let n = self.sig.n();
        let mut m = vec![vec![Scalar::zero(); n + 2]; n + 2];
        m[0][0] = Scalar::real(self.rho.clone());
        let ca = mat_vec(&self.c, &self.a);
        for i in 0..n {
            m[i + 1][0] = -&ca[i];
            for j in 0..n {
                m[i + 1][j + 1] = self.c[i][j].clone();
            }
        }
        m[n + 1][0] = -self.r_iaa();
        let two_i = Scalar::from_int(2).mul_i();
        for k in 0..n {
            m[n + 1][k + 1] = &(&two_i * &self.a[k].conj()) * &self.sig.eps_scalar(k);
        }
        m[n + 1][n + 1] = Scalar::one();
        m
    }

    /// Reads parameters back from a matrix, checking the block pattern.
    pub fn from_matrix(sig: Signature, m: &[Vec<Scalar>]) -> Result<Self> {
        let n = sig.n();
        let bad = |what: &str| Error::NotInGroup(format!("matrix violates the group pattern: {what}"));
        if m.len() != n + 2 || m.iter().any(|r| r.len() != n + 2) {
            return Err(bad("shape"));
        }
        if !m[0][0].is_real() || m[0][1..].iter().any(|x| !x.is_zero()) {
            return Err(bad("first row"));
        }
        if (1..=n).any(|i| !m[i][n + 1].is_zero()) || !m[n + 1][n + 1].is_one() {
            return Err(bad("last column"));
        }
        let rho = m[0][0].re().clone();
        let c: Vec<Vec<Scalar>> = (1..=n).map(|i| m[i][1..=n].to_vec()).collect();
        let col: Vec<Scalar> = (1..=n).map(|i| -&m[i][0]).collect();
        let a = mat_vec(&mat_inv(&c).map_err(|_| bad("singular C"))?, &col);
        let corner = &m[n + 1][0];
        let r = -corner.re().clone();
        let g = GroupElement::new(sig, c, a, rho, r)?;
        if g.to_matrix() != m {
            return Err(bad("last row"));
        }
        Ok(g)
    }

    /// `self o other`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.sig != other.sig {
            return Err(Error::NotInGroup("signatures differ".into()));
        }
        GroupElement::from_matrix(self.sig, &mat_mul(&self.to_matrix(), &other.to_matrix()))
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        GroupElement::from_matrix(self.sig, &mat_inv(&self.to_matrix())?)
    }

    /// `1 + 2i<z,a> - w (r + i<a,a>)`.
    fn denominator(&self, z: &[Scalar], w: &Scalar) -> Result<Scalar> {
        let za = levi_pair(&self.sig, z, &self.a)?;
        Ok(Scalar::one() + (Scalar::from_int(2) * za).mul_i() - w * &self.r_iaa())
    }

    /// The fractional-linear action on a point.
    pub fn apply_point(&self, z: &[Scalar], w: &Scalar) -> Result<(Vec<Scalar>, Scalar)> {
        let den = self.denominator(z, w)?;
        let inv = den.inv().map_err(|_| Error::Pole)?;
        let shifted: Vec<Scalar> = z.iter().zip(&self.a).map(|(zk, ak)| zk - &(ak * w)).collect();
        let zs = mat_vec(&self.c, &shifted).iter().map(|x| x * &inv).collect();
        let ws = &(&Scalar::real(self.rho.clone()) * w) * &inv;
        Ok((zs, ws))
    }

    /// `delta = 2i<z,a> - w (r + i<a,a>)` as a holomorphic series.
    fn delta_series(&self, cap: u32) -> Result<HoloSeries> {
        let n = self.sig.n();
        let two_i = Scalar::from_int(2).mul_i();
        let mut terms: Vec<(MultiIndex, u32, Scalar)> = (0..n)
            .map(|k| {
                let coef = &(&two_i * &self.a[k].conj()) * &self.sig.eps_scalar(k);
                (MultiIndex::unit(n, k), 0, coef)
            })
            .collect();
        terms.push((MultiIndex::zeros(n), 1, -self.r_iaa()));
        HoloSeries::from_terms(n, cap, terms)
    }

    /// `(1 + delta)^{-1}` as a geometric series.
    fn inv_denominator(&self, cap: u32) -> Result<HoloSeries> {
        let n = self.sig.n();
        let minus_delta = self.delta_series(cap)?.neg();
        let mut acc = HoloSeries::constant(n, cap, Scalar::one())?;
        let mut p = acc.clone();
        for _ in 0..cap {
            p = p.mul(&minus_delta)?;
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p)?;
        }
        Ok(acc)
    }

    /// Taylor jet of the action to weight `cap`.
    pub fn jet_of(&self, cap: u32) -> Result<MapJet> {
        let n = self.sig.n();
        let inv = self.inv_denominator(cap)?;
        let w = HoloSeries::w(n, cap)?;
        let mut f = Vec::with_capacity(n);
        for i in 0..n {
            let mut lin = HoloSeries::zero(n, cap)?;
            for j in 0..n {
                let zj_minus = HoloSeries::z(n, cap, j)?.sub(&w.scale(&self.a[j]))?;
                lin = lin.add(&zj_minus.scale(&self.c[i][j]))?;
            }
            f.push(lin.mul(&inv)?);
        }
        let g = w.scale(&Scalar::real(self.rho.clone())).mul(&inv)?;
        MapJet::new(f, g)
    }

    /// `sigma = phi o psi` with `psi = (id, a, 1, 0)` and `phi = (C, 0, rho, r)`.
    pub fn decompose(&self) -> (GroupElement, GroupElement) {
        let n = self.sig.n();
        let psi = GroupElement {
            sig: self.sig,
            c: mat_identity(n),
            a: self.a.clone(),
            rho: BigRational::from_integer(1.into()),
            r: BigRational::zero(),
        };
        let phi = GroupElement {
            sig: self.sig,
            c: self.c.clone(),
            a: vec![Scalar::zero(); n],
            rho: self.rho.clone(),
            r: self.r.clone(),
        };
        (psi, phi)
    }

    /// The multiplier `M` in `(v - <z,z>) o phi_sigma = M (v - <z,z>)`, as a
    /// series in `(z, zbar, u, v)` exact to weight `cap`.
    pub fn quadric_multiplier(&self, cap: u32) -> Result<VSeries> {
        let n = self.sig.n();
        let work = cap + 2;
        let jet = self.jet_of(work)?;
        let q = levi_form(&self.sig, work)?;
        // <f, f> with f expanded at w = u + iv.
        let ex: Vec<VSeries> = jet.f.iter().map(HoloSeries::expand).collect::<Result<_>>()?;
        let mut ff = VSeries::zero(n, work)?;
        for (k, e) in ex.iter().enumerate() {
            let t = e.mul(&e.conjugate())?;
            ff = if self.sig.eps(k) > 0 { ff.add(&t)? } else { ff.sub(&t)? };
        }
        let pulled = jet.g.expand()?.imag_part().sub(&ff)?;
        // Substitute v = s + <z,z>, divide by s, substitute back.
        let shifted = pulled.shift_v(&q)?;
        let m = shifted.div_v()?;
        m.shift_v(&q.neg())?.with_cap(cap)
    }

    /// The multiplier restricted to the quadric `v = <z,z>`.
    pub fn quadric_defect(&self, cap: u32) -> Result<BigradedSeries> {
        let m = self.quadric_multiplier(cap)?;
        m.eval_v(&levi_form(&self.sig, cap)?)
    }

    /// `rho (1 + delta)^{-1} (1 + conj delta)^{-1}` expanded at `w = u + iv`.
    pub fn expected_multiplier(&self, cap: u32) -> Result<VSeries> {
        let inv = self.inv_denominator(cap)?.expand()?;
        inv.mul(&inv.conjugate())
            .map(|s| s.scale(&Scalar::real(self.rho.clone())))
    }
}

/// Point of the chain `{v = <z,z>} ∩ C(a, 1)` with parameter `mu`:
/// `w = t / (1 - t(-r + i<a,a>))`, `z = a w`, `t = mu / rho`.
///
/// This is the preimage of the `u`-curve under `(C, a, rho, r)` for any `C`.
pub fn chain_line(sig: &Signature, a: &[Scalar], rho: &BigRational, r: &BigRational, mu: &BigRational) -> Result<(Vec<Scalar>, Scalar)> {
    if rho.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let aa = levi_pair(sig, a, a)?;
    let t = Scalar::real(mu / rho);
    let k = Scalar::real(-r.clone()) + aa.mul_i();
    let den = Scalar::one() - &t * &k;
    let w = t.checked_div(&den).map_err(|_| Error::Pole)?;
    let z = a.iter().map(|ak| ak * &w).collect();
    Ok((z, w))
}

/// JSON form: `{"C": [[[re, im], ...], ...], "a": [[re, im], ...], "rho": "p/q", "r": "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupElementJson {
    #[serde(rename = "C")]
    pub c: Vec<Vec<ScalarJson>>,
    pub a: Vec<ScalarJson>,
    pub rho: String,
    pub r: String,
}

impl From<&GroupElement> for GroupElementJson {
    fn from(g: &GroupElement) -> Self {
        GroupElementJson {
            c: g.c.iter().map(|row| row.iter().map(ScalarJson::from).collect()).collect(),
            a: g.a.iter().map(ScalarJson::from).collect(),
            rho: format_rational(&g.rho),
            r: format_rational(&g.r),
        }
    }
}

impl GroupElementJson {
    pub fn to_element(&self, sig: Signature) -> Result<GroupElement> {
        let c = self
            .c
            .iter()
            .map(|row| row.iter().map(Scalar::try_from).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let a = self.a.iter().map(Scalar::try_from).collect::<Result<Vec<_>>>()?;
        GroupElement::new(sig, c, a, parse_rational(&self.rho)?, parse_rational(&self.r)?)
    }
}
