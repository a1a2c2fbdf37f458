use super::bigraded::MultiIndex;
use super::holo::HoloSeries;
use super::scalar::Scalar;
use super::useries::mat_inv;
use crate::error::{Error, Result};

/// Truncated holomorphic map `(z, w) -> (f(z, w), g(z, w))` fixing the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapJet {
    pub f: Vec<HoloSeries>,
    pub g: HoloSeries,
}

/// First-order data: `f = A z + b w + ...`, `g = d.z + c w + ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPart {
    pub a: Vec<Vec<Scalar>>,
    pub b: Vec<Scalar>,
    pub d: Vec<Scalar>,
    pub c: Scalar,
}

impl MapJet {
    pub fn new(f: Vec<HoloSeries>, g: HoloSeries) -> Result<Self> {
        let m = MapJet { f, g };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(dim: usize, cap: u32) -> Result<Self> {
        let f = (0..dim)
            .map(|k| HoloSeries::z(dim, cap, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(MapJet {
            f,
            g: HoloSeries::w(dim, cap)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn weight_cap(&self) -> u32 {
        self.f
            .iter()
            .map(HoloSeries::weight_cap)
            .chain([self.g.weight_cap()])
            .min()
            .unwrap_or(0)
    }

    pub fn truncate(&self, cap: u32) -> Self {
        MapJet {
            f: self.f.iter().map(|h| h.truncate(cap)).collect(),
            g: self.g.truncate(cap),
        }
    }

    pub fn is_identity(&self) -> bool {
        MapJet::identity(self.dim(), self.weight_cap())
            .map(|id| id == self.truncate(self.weight_cap()))
            .unwrap_or(false)
    }

    pub fn linear_part(&self) -> LinearPart {
        let n = self.dim();
        let zero = MultiIndex::zeros(n);
        let coef = |h: &HoloSeries, a: &MultiIndex, m: u32| h.coefficient(a, m).unwrap_or_default();
        LinearPart {
            a: self
                .f
                .iter()
                .map(|fi| (0..n).map(|j| coef(fi, &MultiIndex::unit(n, j), 0)).collect())
                .collect(),
            b: self.f.iter().map(|fi| coef(fi, &zero, 1)).collect(),
            d: (0..n).map(|j| coef(&self.g, &MultiIndex::unit(n, j), 0)).collect(),
            c: coef(&self.g, &zero, 1),
        }
    }

    /// Origin-preserving, `g` free of `z`-linear terms, invertible Jacobian.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if self.f.len() != n {
            return Err(Error::DimensionMismatch {
                left: self.f.len(),
                right: n,
            });
        }
        for h in &self.f {
            if h.dim() != n {
                return Err(Error::DimensionMismatch { left: h.dim(), right: n });
            }
            if !h.constant_term().is_zero() {
                return Err(Error::Precondition("map does not fix the origin".into()));
            }
        }
        if !self.g.constant_term().is_zero() {
            return Err(Error::Precondition("map does not fix the origin".into()));
        }
        let lin = self.linear_part();
        if lin.d.iter().any(|x| !x.is_zero()) {
            return Err(Error::Precondition(
                "w-component has z-linear terms; the map does not preserve weights".into(),
            ));
        }
        if lin.c.is_zero() || mat_inv(&lin.a).is_err() {
            return Err(Error::Precondition("map jet has singular Jacobian".into()));
        }
        Ok(())
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &MapJet) -> Result<MapJet> {
        inner.validate()?;
        let f = self
            .f
            .iter()
            .map(|h| h.substitute(&inner.f, &inner.g))
            .collect::<Result<Vec<_>>>()?;
        let g = self.g.substitute(&inner.f, &inner.g)?;
        Ok(MapJet { f, g })
    }

    /// Applies `L^{-1}` (the inverse of the linear part) to the map `(x, y)`.
    fn apply_linear_inverse(lin: &LinearPart, ainv: &[Vec<Scalar>], x: &[HoloSeries], y: &HoloSeries) -> Result<MapJet> {
        let n = x.len();
        let cinv = lin.c.inv()?;
        let yc = y.scale(&cinv);
        let shifted: Vec<HoloSeries> = x
            .iter()
            .zip(&lin.b)
            .map(|(xi, bi)| xi.sub(&yc.scale(bi)))
            .collect::<Result<_>>()?;
        let mut f = Vec::with_capacity(n);
        for row in ainv.iter() {
            let mut acc = HoloSeries::zero(n, y.weight_cap())?;
            for (aij, sj) in row.iter().zip(&shifted) {
                acc = acc.add(&sj.scale(aij))?;
            }
            f.push(acc);
        }
        Ok(MapJet { f, g: yc })
    }

    /// Compositional inverse to the same weight cap.
    pub fn inverse(&self) -> Result<MapJet> {
        self.validate()?;
        let n = self.dim();
        let cap = self.weight_cap();
        let lin = self.linear_part();
        let ainv = mat_inv(&lin.a)?;
        let id = MapJet::identity(n, cap)?;
        // Nonlinear part N = self - L.
        let lmap = {
            let f = (0..n)
                .map(|i| {
                    let mut acc = HoloSeries::w(n, cap)?.scale(&lin.b[i]);
                    for j in 0..n {
                        acc = acc.add(&HoloSeries::z(n, cap, j)?.scale(&lin.a[i][j]))?;
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>>>()?;
            MapJet {
                f,
                g: HoloSeries::w(n, cap)?.scale(&lin.c),
            }
        };
        let nl = MapJet {
            f: self
                .f
                .iter()
                .zip(&lmap.f)
                .map(|(a, b)| a.sub(b))
                .collect::<Result<_>>()?,
            g: self.g.sub(&lmap.g)?,
        };
        let mut psi = Self::apply_linear_inverse(&lin, &ainv, &id.f, &id.g)?;
        for _ in 0..=cap + 1 {
            let np = nl.compose(&psi)?;
            let x: Vec<HoloSeries> = id
                .f
                .iter()
                .zip(&np.f)
                .map(|(a, b)| a.sub(b))
                .collect::<Result<_>>()?;
            let y = id.g.sub(&np.g)?;
            let next = Self::apply_linear_inverse(&lin, &ainv, &x, &y)?;
            if next == psi {
                return Ok(psi);
            }
            psi = next;
        }
        Err(Error::Contraction { weight: cap })
    }

    /// Exact evaluation of the truncated jet at a point.
    pub fn eval(&self, z: &[Scalar], w: &Scalar) -> Result<(Vec<Scalar>, Scalar)> {
        let n = self.dim();
        if z.len() != n {
            return Err(Error::DimensionMismatch { left: z.len(), right: n });
        }
        let ev = |h: &HoloSeries| {
            let mut acc = Scalar::zero();
            for (alpha, m, c) in h.terms() {
                let mut t = c.clone();
                for (k, e) in alpha.0.iter().enumerate() {
                    t = &t * &z[k].pow(*e);
                }
                t = &t * &w.pow(m);
                acc += &t;
            }
            acc
        };
        Ok((self.f.iter().map(ev).collect(), ev(&self.g)))
    }
}
