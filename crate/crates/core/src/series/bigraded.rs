use serde::{Deserialize, Serialize};

use super::poly::{check_shape, t_field, Mono, Poly};
use super::scalar::Scalar;
use super::wrap::poly_wrapper;
use crate::error::{Error, Result};

/// Exponent vector over the `n` holomorphic (or antiholomorphic) variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[k] = 1;
        MultiIndex(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub(crate) fn pack(alpha: &MultiIndex, beta: Option<&MultiIndex>, m: u32, dim: usize) -> Result<Mono> {
    if alpha.len() != dim {
        return Err(Error::DimensionMismatch {
            left: alpha.len(),
            right: dim,
        });
    }
    let mut mono = Mono::ONE;
    for (k, &e) in alpha.0.iter().enumerate() {
        mono = mono.with(k, e);
    }
    if let Some(beta) = beta {
        if beta.len() != dim {
            return Err(Error::DimensionMismatch {
                left: beta.len(),
                right: dim,
            });
        }
        for (k, &e) in beta.0.iter().enumerate() {
            mono = mono.with(dim + k, e);
        }
    }
    Ok(mono.with(t_field(dim), m))
}

pub(crate) fn unpack_z(m: Mono, dim: usize) -> MultiIndex {
    MultiIndex((0..dim).map(|k| m.get(k)).collect())
}

pub(crate) fn unpack_zbar(m: Mono, dim: usize) -> MultiIndex {
    MultiIndex((0..dim).map(|k| m.get(dim + k)).collect())
}

/// Truncated real-analytic series in `(z, zbar, u)`, truncated at the
/// Chern-Moser weight `|alpha| + |beta| + 2m <= weight_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedSeries(pub(crate) Poly);

poly_wrapper!(BigradedSeries);

impl BigradedSeries {
    pub fn from_terms<I>(dim: usize, cap: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, MultiIndex, u32, Scalar)>,
    {
        check_shape(dim, cap)?;
        let mut pairs = Vec::new();
        for (a, b, m, c) in terms {
            pairs.push((pack(&a, Some(&b), m, dim)?, c));
        }
        Ok(BigradedSeries(Poly::from_pairs(dim, cap, pairs)))
    }

    /// The coordinate function `z^k` (0-based `k`).
    pub fn z(dim: usize, cap: u32, k: usize) -> Result<Self> {
        check_shape(dim, cap)?;
        Ok(BigradedSeries(Poly::var(dim, cap, k)))
    }

    pub fn zbar(dim: usize, cap: u32, k: usize) -> Result<Self> {
        check_shape(dim, cap)?;
        Ok(BigradedSeries(Poly::var(dim, cap, dim + k)))
    }

    pub fn u(dim: usize, cap: u32) -> Result<Self> {
        check_shape(dim, cap)?;
        Ok(BigradedSeries(Poly::var(dim, cap, t_field(dim))))
    }

    pub fn coefficient(&self, alpha: &MultiIndex, beta: &MultiIndex, m: u32) -> Result<Scalar> {
        Ok(self.0.coeff(pack(alpha, Some(beta), m, self.0.dim)?))
    }

    /// Terms as `(alpha, beta, m, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, MultiIndex, u32, &Scalar)> {
        let dim = self.0.dim;
        self.0
            .terms()
            .map(move |(m, c)| (unpack_z(m, dim), unpack_zbar(m, dim), m.get(t_field(dim)), c))
    }

    /// Restriction to keys with `|alpha| = s` and `|beta| = t`.
    pub fn type_component(&self, s: u32, t: u32) -> Self {
        let dim = self.0.dim;
        BigradedSeries(
            self.0
                .filter(|m| m.z_degree(dim) == s && m.zbar_degree(dim) == t),
        )
    }

    /// Restriction to the coefficient of `u^m` (still multiplied by `u^m`).
    pub fn u_component(&self, m: u32) -> Self {
        let dim = self.0.dim;
        BigradedSeries(self.0.filter(|mono| mono.get(t_field(dim)) == m))
    }

    /// Complex conjugation: `(alpha, beta, m) -> (beta, alpha, m)` with
    /// conjugated coefficients.
    pub fn conjugate(&self) -> Self {
        let dim = self.0.dim;
        BigradedSeries(self.0.map_terms(|m, c| Some((m.swap_bars(dim), c.conj()))))
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// Real part `(F + conj F) / 2`.
    pub fn real_part(&self) -> Self {
        let half = Scalar::from_frac(1, 2);
        BigradedSeries(self.0.add(&self.conjugate().0).scale(&half))
    }

    pub fn d_z(&self, k: usize) -> Self {
        BigradedSeries(self.0.derivative(k))
    }

    pub fn d_zbar(&self, k: usize) -> Self {
        BigradedSeries(self.0.derivative(self.0.dim + k))
    }

    pub fn d_u(&self) -> Self {
        BigradedSeries(self.0.derivative(t_field(self.0.dim)))
    }

    /// Largest `m` with a nonzero `u^m` term.
    /// Reads a `zbar`-free series as holomorphic in `(z, w)` with `u -> w`.
    pub fn to_holo(&self) -> Result<super::holo::HoloSeries> {
        let dim = self.0.dim;
        if self.0.terms().any(|(m, _)| m.zbar_degree(dim) > 0) {
            return Err(Error::Precondition("series depends on zbar".into()));
        }
        Ok(super::holo::HoloSeries(self.0.clone()))
    }

    pub fn max_u_power(&self) -> u32 {
        self.0.max_exponent(t_field(self.0.dim))
    }
}
