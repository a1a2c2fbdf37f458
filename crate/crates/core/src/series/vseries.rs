use super::bigraded::{BigradedSeries, MultiIndex};
use super::poly::{check_shape, v_field, Mono, Poly};
use super::scalar::Scalar;
use super::wrap::poly_wrapper;
use crate::error::{Error, Result};

/// Truncated series in `(z, zbar, u, v)`; `v` has weight 2 like `u`.
///
/// This is the ambient ring for right-hand sides of `v = F(...)` before the
/// implicit equation is solved for `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VSeries(pub(crate) Poly);

poly_wrapper!(VSeries);

impl VSeries {
    pub fn v(dim: usize, cap: u32) -> Result<Self> {
        check_shape(dim, cap)?;
        Ok(VSeries(Poly::var(dim, cap, v_field(dim))))
    }

    pub fn coefficient(&self, alpha: &MultiIndex, beta: &MultiIndex, m: u32, k: u32) -> Result<Scalar> {
        let dim = self.0.dim;
        let mono = super::bigraded::pack(alpha, Some(beta), m, dim)?.with(v_field(dim), k);
        Ok(self.0.coeff(mono))
    }

    /// Splits `self = sum_k A_k v^k`. `A_k` carries cap `weight_cap - 2k`.
    pub fn v_coefficients(&self) -> Vec<BigradedSeries> {
        let dim = self.0.dim;
        let vf = v_field(dim);
        let top = self.0.max_exponent(vf);
        let mut buckets: Vec<Vec<(Mono, Scalar)>> = vec![Vec::new(); top as usize + 1];
        for (m, c) in self.0.terms() {
            let k = m.get(vf);
            buckets[k as usize].push((m.with(vf, 0), c.clone()));
        }
        buckets
            .into_iter()
            .enumerate()
            .map(|(k, pairs)| {
                let cap = self.0.cap.saturating_sub(2 * k as u32);
                BigradedSeries(Poly::from_pairs(dim, cap, pairs))
            })
            .collect()
    }

    /// Reassembles `sum_k A_k v^k` at the given cap.
    pub fn from_v_coefficients(dim: usize, cap: u32, parts: &[BigradedSeries]) -> Result<Self> {
        check_shape(dim, cap)?;
        let vf = v_field(dim);
        let mut pairs = Vec::new();
        for (k, a) in parts.iter().enumerate() {
            if a.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: a.dim(),
                    right: dim,
                });
            }
            for (m, c) in a.0.terms() {
                pairs.push((m.with(vf, k as u32), c.clone()));
            }
        }
        Ok(VSeries(Poly::from_pairs(dim, cap, pairs)))
    }

    /// Embeds a series in `(z, zbar, u)`.
    pub fn from_bigraded(f: &BigradedSeries) -> Self {
        VSeries(f.0.clone())
    }

    /// Restriction to `v = 0`.
    pub fn at_v_zero(&self) -> BigradedSeries {
        let vf = v_field(self.0.dim);
        BigradedSeries(self.0.filter(|m| m.get(vf) == 0))
    }

    pub fn conjugate(&self) -> Self {
        let dim = self.0.dim;
        VSeries(self.0.map_terms(|m, c| Some((m.swap_bars(dim), c.conj()))))
    }

    /// Real part `(F + conj F) / 2` (with `u`, `v` real).
    pub fn real_part(&self) -> Self {
        VSeries(self.0.add(&self.conjugate().0).scale(&Scalar::from_frac(1, 2)))
    }

    /// Imaginary part `(F - conj F) / 2i`.
    pub fn imag_part(&self) -> Self {
        let k = Scalar::gaussian((0, 1), (-1, 2));
        VSeries(self.0.sub(&self.conjugate().0).scale(&k))
    }

    /// `self(z, zbar, u, v + by)`; `by` must have no terms of weight below 2.
    pub fn shift_v(&self, by: &BigradedSeries) -> Result<VSeries> {
        let dim = self.0.dim;
        let cap = self.0.cap.min(by.weight_cap());
        let mut slots: Vec<Poly> = (0..2 * dim + 1).map(|k| Poly::var(dim, cap, k)).collect();
        slots.push(Poly::var(dim, cap, v_field(dim)).add(&by.0.with_cap(cap)));
        if by.min_weight().is_some_and(|w| w < 2) {
            return Err(Error::ConstantSlot { slot: v_field(dim) });
        }
        let refs: Vec<Option<&Poly>> = slots.iter().map(Some).collect();
        Ok(VSeries(super::poly::compose(&self.0, &refs, dim, cap)?))
    }

    /// Exact division by `v`; the cap drops by 2. Fails if a `v`-free term remains.
    pub fn div_v(&self) -> Result<VSeries> {
        let dim = self.0.dim;
        let vf = v_field(dim);
        if self.0.terms().any(|(m, _)| m.get(vf) == 0) {
            return Err(Error::Precondition("series is not divisible by v".into()));
        }
        let mut p = self.0.map_terms(|m, c| Some((m.with(vf, m.get(vf) - 1), c.clone())));
        p.cap = self.0.cap.saturating_sub(2);
        Ok(VSeries(p.truncate(p.cap)))
    }

    /// Substitutes `v := vval` (a series in `(z, zbar, u)` with no terms of
    /// weight below 2).
    pub fn eval_v(&self, vval: &BigradedSeries) -> Result<BigradedSeries> {
        let parts = self.v_coefficients();
        horner(&parts, vval, self.0.cap.min(vval.0.cap))
    }
}

/// `sum_k parts[k] * x^k` at `cap`, by Horner's rule.
fn horner(parts: &[BigradedSeries], x: &BigradedSeries, cap: u32) -> Result<BigradedSeries> {
    let dim = x.dim();
    let mut acc = Poly::zero(dim, cap);
    for a in parts.iter().rev() {
        acc = acc.mul_capped(&x.0, cap).with_cap(cap).add(&a.0.with_cap(cap));
    }
    Ok(BigradedSeries(acc.truncate(cap)))
}

/// Solves `v = rhs(z, zbar, u, v)` for `v = v*(z, zbar, u)` to weight `cap`.
///
/// Writing `rhs = A_0 + v A_1 + v^2 A_2 + ...`, the constant term `c` of
/// `A_1` is moved to the left, so the iteration is
/// `v <- (1 - c)^{-1} (rhs(v) - c v)`, which fixes one more weight level per
/// pass. Successive passes run at increasing caps.
pub fn solve_implicit_v(rhs: &VSeries, cap: u32) -> Result<BigradedSeries> {
    let dim = rhs.dim();
    let cap = cap.min(rhs.weight_cap());
    let mut parts = rhs.v_coefficients();
    let a0_min = parts[0].min_weight();
    if let Some(w) = a0_min {
        if w < 2 {
            return Err(Error::Contraction { weight: w });
        }
    }
    let mut c = Scalar::zero();
    if parts.len() > 1 {
        c = parts[1].0.coeff(Mono::ONE);
        parts[1] = BigradedSeries(parts[1].0.filter(|m| m != Mono::ONE));
    }
    let scale = (Scalar::one() - c)
        .inv()
        .map_err(|_| Error::Contraction { weight: 0 })?;
    let step = |x: &BigradedSeries, at: u32| -> Result<BigradedSeries> {
        Ok(horner(&parts, &x.with_cap(at)?, at)?.scale(&scale))
    };

    // `v` is exact up to weight `level`.
    let mut level = a0_min.unwrap_or(cap + 1).min(cap + 1) - 1;
    let mut v = BigradedSeries(Poly::zero(dim, cap));
    while level < cap {
        level += 1;
        v = step(&v, level)?;
    }
    let v = v.with_cap(cap)?;
    let check = step(&v, cap)?;
    if check != v {
        let diff = check.sub(&v)?;
        return Err(Error::Contraction {
            weight: diff.min_weight().unwrap_or(cap),
        });
    }
    Ok(v)
}
