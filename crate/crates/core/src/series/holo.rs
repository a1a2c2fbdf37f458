use super::bigraded::{pack, unpack_z, MultiIndex};
use super::poly::{check_shape, compose, t_field, v_field, Poly};
use super::scalar::Scalar;
use super::vseries::VSeries;
use super::wrap::poly_wrapper;
use crate::error::Result;

/// Truncated holomorphic series in `(z, w)` with `|alpha| + 2m <= weight_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoloSeries(pub(crate) Poly);

poly_wrapper!(HoloSeries);

impl HoloSeries {
    pub fn from_terms<I>(dim: usize, cap: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, u32, Scalar)>,
    {
        check_shape(dim, cap)?;
        let mut pairs = Vec::new();
        for (a, m, c) in terms {
            pairs.push((pack(&a, None, m, dim)?, c));
        }
        Ok(HoloSeries(Poly::from_pairs(dim, cap, pairs)))
    }

    pub fn z(dim: usize, cap: u32, k: usize) -> Result<Self> {
        check_shape(dim, cap)?;
        Ok(HoloSeries(Poly::var(dim, cap, k)))
    }

    pub fn w(dim: usize, cap: u32) -> Result<Self> {
        check_shape(dim, cap)?;
        Ok(HoloSeries(Poly::var(dim, cap, t_field(dim))))
    }

    /// A series in `w` alone from its coefficients `c[m]` of `w^m`.
    pub fn from_w_coeffs(dim: usize, cap: u32, coeffs: &[Scalar]) -> Result<Self> {
        check_shape(dim, cap)?;
        let t = t_field(dim);
        Ok(HoloSeries(Poly::from_pairs(
            dim,
            cap,
            coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| (super::poly::Mono::var(t, m as u32), c.clone())),
        )))
    }

    pub fn coefficient(&self, alpha: &MultiIndex, m: u32) -> Result<Scalar> {
        Ok(self.0.coeff(pack(alpha, None, m, self.0.dim)?))
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, u32, &Scalar)> {
        let dim = self.0.dim;
        self.0
            .terms()
            .map(move |(m, c)| (unpack_z(m, dim), m.get(t_field(dim)), c))
    }

    /// Part homogeneous of degree `s` in `z`.
    pub fn z_component(&self, s: u32) -> Self {
        let dim = self.0.dim;
        HoloSeries(self.0.filter(|m| m.z_degree(dim) == s))
    }

    /// Coefficients of `w^m` in the `z`-free part, for `m = 0..=max`.
    pub fn w_coeffs(&self) -> Vec<Scalar> {
        let dim = self.0.dim;
        let t = t_field(dim);
        let top = (self.0.cap / 2) as usize;
        let mut out = vec![Scalar::zero(); top + 1];
        for (m, c) in self.0.terms() {
            if m.z_degree(dim) == 0 {
                out[m.get(t) as usize] = c.clone();
            }
        }
        out
    }

    pub fn d_z(&self, k: usize) -> Self {
        HoloSeries(self.0.derivative(k))
    }

    pub fn d_w(&self) -> Self {
        HoloSeries(self.0.derivative(t_field(self.0.dim)))
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Scalar {
        self.0.coeff(super::poly::Mono::ONE)
    }

    /// Expansion at `w = u + i v`, as a series in `(z, zbar, u, v)`.
    pub fn expand(&self) -> Result<VSeries> {
        self.expand_inner(false)
    }

    /// The conjugate function `conj(h(z, w))` expanded at `w = u + i v`:
    /// a series in `zbar` and `u - i v`.
    pub fn expand_conj(&self) -> Result<VSeries> {
        self.expand_inner(true)
    }

    fn expand_inner(&self, conj: bool) -> Result<VSeries> {
        let dim = self.0.dim;
        let cap = self.0.cap;
        let (t, v) = (t_field(dim), v_field(dim));
        let src = if conj {
            self.0.map_terms(|m, c| Some((m.swap_bars(dim), c.conj())))
        } else {
            self.0.clone()
        };
        let sign = if conj { Scalar::from_int(-1) } else { Scalar::one() };
        let w = Poly::var(dim, cap, t).add(&Poly::var(dim, cap, v).scale(&sign.mul_i()));
        let vars: Vec<Poly> = (0..2 * dim).map(|k| Poly::var(dim, cap, k)).collect();
        let mut slots: Vec<Option<&Poly>> = vars.iter().map(Some).collect();
        slots.push(Some(&w));
        Ok(VSeries(compose(&src, &slots, dim, cap)?))
    }

    /// Conjugates every coefficient: `p(w) -> conj(p)(w)`, the series of `conj(p(conj w))`.
    pub fn conj_coeffs(&self) -> Self {
        HoloSeries(self.0.map_terms(|m, c| Some((m, c.conj()))))
    }

    /// The same coefficients read as a series in `(z, u)`, i.e. restricted to `w = u`.
    pub fn at_real(&self) -> super::bigraded::BigradedSeries {
        super::bigraded::BigradedSeries(self.0.clone())
    }

    /// `self(zslots, wslot)` for holomorphic substitutions without constant terms.
    pub fn substitute(&self, zmap: &[HoloSeries], wmap: &HoloSeries) -> Result<HoloSeries> {
        let dim = self.0.dim;
        if zmap.len() != dim {
            return Err(crate::error::Error::DimensionMismatch {
                left: zmap.len(),
                right: dim,
            });
        }
        let out_dim = wmap.0.dim;
        let cap = zmap
            .iter()
            .map(|h| h.0.cap)
            .chain([wmap.0.cap, self.0.cap])
            .min()
            .unwrap_or(0);
        let mut slots: Vec<Option<&Poly>> = zmap.iter().map(|h| Some(&h.0)).collect();
        slots.extend(std::iter::repeat_n(None, dim));
        slots.push(Some(&wmap.0));
        Ok(HoloSeries(compose(&self.0, &slots, out_dim, cap)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expand_w_squared() {
        let w2 = HoloSeries::w(1, 4).unwrap().pow(2);
        let e = w2.expand().unwrap();
        let v2 = e.v_coefficients();
        // (u + iv)^2 = u^2 + 2iuv - v^2
        assert_eq!(v2.len(), 3);
        let u2 = super::super::BigradedSeries::u(1, 4).unwrap().pow(2);
        assert_eq!(v2[0], u2);
        assert_eq!(v2[2], super::super::BigradedSeries::constant(1, 0, Scalar::from_int(-1)).unwrap());
    }

    #[test]
    fn substitute_affine_shift() {
        let z = HoloSeries::z(1, 6, 0).unwrap();
        let w = HoloSeries::w(1, 6).unwrap();
        let f = z.pow(2);
        let zw = z.add(&w).unwrap();
        let g = f.substitute(&[zw.clone()], &w).unwrap();
        assert_eq!(g, zw.pow(2));
    }
}
