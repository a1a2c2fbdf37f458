//! The Levi form `<z,z>` of signature `(e, n-e)` and its trace operator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{BigradedSeries, MultiIndex, Scalar};

/// Dimension `n` and index `e`, with `n/2 <= e <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSignature")]
pub struct Signature {
    n: usize,
    e: usize,
}

#[derive(Deserialize)]
struct RawSignature {
    n: usize,
    e: usize,
}

impl TryFrom<RawSignature> for Signature {
    type Error = Error;
    fn try_from(r: RawSignature) -> Result<Self> {
        Signature::new(r.n, r.e)
    }
}

impl Signature {
    pub fn new(n: usize, e: usize) -> Result<Self> {
        if n == 0 || n > crate::series::MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        if 2 * e < n || e > n {
            return Err(Error::Precondition(format!("index e={e} outside n/2..=n for n={n}")));
        }
        Ok(Signature { n, e })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// `+1` for the first `e` coordinates, `-1` after (0-based `k`).
    pub fn eps(&self, k: usize) -> i64 {
        if k < self.e {
            1
        } else {
            -1
        }
    }

    pub fn eps_scalar(&self, k: usize) -> Scalar {
        Scalar::from_int(self.eps(k))
    }
}

/// `sum_k eps_k z^k zbar^k`.
pub fn levi_form(sig: &Signature, cap: u32) -> Result<BigradedSeries> {
    let n = sig.n();
    BigradedSeries::from_terms(
        n,
        cap,
        (0..n).map(|k| (MultiIndex::unit(n, k), MultiIndex::unit(n, k), 0, sig.eps_scalar(k))),
    )
}

/// `<x, y> = sum_k eps_k x^k conj(y^k)`.
pub fn levi_pair(sig: &Signature, x: &[Scalar], y: &[Scalar]) -> Result<Scalar> {
    for len in [x.len(), y.len()] {
        if len != sig.n() {
            return Err(Error::DimensionMismatch { left: len, right: sig.n() });
        }
    }
    let mut acc = Scalar::zero();
    for k in 0..sig.n() {
        let t = &x[k] * &y[k].conj();
        if sig.eps(k) > 0 {
            acc += &t;
        } else {
            acc -= &t;
        }
    }
    Ok(acc)
}

/// `<A z, z> = sum_k eps_k (A z)^k zbar^k` for a constant matrix `A`.
pub fn hermitian_form(sig: &Signature, a: &[Vec<Scalar>], cap: u32) -> Result<BigradedSeries> {
    let n = sig.n();
    let mut terms = Vec::new();
    for (k, row) in a.iter().enumerate() {
        for (j, akj) in row.iter().enumerate() {
            terms.push((MultiIndex::unit(n, j), MultiIndex::unit(n, k), 0, akj * &sig.eps_scalar(k)));
        }
    }
    BigradedSeries::from_terms(n, cap, terms)
}

/// `<p, z> = sum_k eps_k p^k zbar^k` for a constant vector `p`.
pub fn pair_with_zbar(sig: &Signature, p: &[Scalar], cap: u32) -> Result<BigradedSeries> {
    let n = sig.n();
    BigradedSeries::from_terms(
        n,
        cap,
        p.iter()
            .enumerate()
            .map(|(k, pk)| (MultiIndex::zeros(n), MultiIndex::unit(n, k), 0, pk * &sig.eps_scalar(k))),
    )
}

/// `<z, p> = sum_k eps_k z^k conj(p^k)`.
pub fn pair_with_z(sig: &Signature, p: &[Scalar], cap: u32) -> Result<BigradedSeries> {
    Ok(pair_with_zbar(sig, p, cap)?.conjugate())
}

/// Plain trace of the linear map `z -> A z`.
pub fn trace(a: &[Vec<Scalar>]) -> Scalar {
    let mut t = Scalar::zero();
    for (k, row) in a.iter().enumerate() {
        t += &row[k];
    }
    t
}

/// `sum_k eps_k d^2 F / dz^k dzbar^k`. The weight cap drops by 2.
pub fn delta(sig: &Signature, f: &BigradedSeries) -> Result<BigradedSeries> {
    if f.dim() != sig.n() {
        return Err(Error::DimensionMismatch { left: f.dim(), right: sig.n() });
    }
    let n = sig.n();
    let mut acc = BigradedSeries::zero(n, f.weight_cap().saturating_sub(2))?;
    for k in 0..n {
        let d = f.d_z(k).d_zbar(k);
        acc = if sig.eps(k) > 0 { acc.add(&d)? } else { acc.sub(&d)? };
    }
    Ok(acc)
}

/// `k`-fold application of [`delta`].
pub fn delta_pow(sig: &Signature, f: &BigradedSeries, k: u32) -> Result<BigradedSeries> {
    let mut out = f.clone();
    for _ in 0..k {
        out = delta(sig, &out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex(v.to_vec())
    }

    #[test]
    fn signature_bounds() {
        assert!(Signature::new(2, 1).is_ok());
        assert!(Signature::new(3, 1).is_err());
        assert!(Signature::new(2, 3).is_err());
        assert!(Signature::new(0, 0).is_err());
    }

    #[test]
    fn levi_form_examples() {
        let s11 = Signature::new(1, 1).unwrap();
        let f = levi_form(&s11, 4).unwrap();
        assert_eq!(f.coefficient(&mi(&[1]), &mi(&[1]), 0).unwrap(), Scalar::one());
        assert_eq!(f.len(), 1);
        let s21 = Signature::new(2, 1).unwrap();
        let g = levi_form(&s21, 4).unwrap();
        assert_eq!(g.coefficient(&mi(&[0, 1]), &mi(&[0, 1]), 0).unwrap(), Scalar::from_int(-1));
        assert!(g.is_real());
    }

    #[test]
    fn levi_pair_examples() {
        let s11 = Signature::new(1, 1).unwrap();
        let s21 = Signature::new(2, 1).unwrap();
        let one = Scalar::one();
        assert_eq!(levi_pair(&s11, &[one.clone()], &[one.clone()]).unwrap(), one);
        let v = [one.clone(), one.clone()];
        assert!(levi_pair(&s21, &v, &v).unwrap().is_zero());
        assert_eq!(levi_pair(&s11, &[Scalar::i()], &[one.clone()]).unwrap(), Scalar::i());
        assert!(levi_pair(&s11, &v, &[one]).is_err());
    }

    #[test]
    fn delta_examples() {
        for (n, e) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            let sig = Signature::new(n, e).unwrap();
            let d = delta(&sig, &levi_form(&sig, 4).unwrap()).unwrap();
            assert_eq!(d, BigradedSeries::constant(n, 2, Scalar::from_int(n as i64)).unwrap());
        }
        let s11 = Signature::new(1, 1).unwrap();
        let z2 = BigradedSeries::from_terms(1, 4, [(mi(&[2]), mi(&[2]), 0, Scalar::one())]).unwrap();
        let d = delta(&s11, &z2).unwrap();
        assert_eq!(d.coefficient(&mi(&[1]), &mi(&[1]), 0).unwrap(), Scalar::from_int(4));
        let s21 = Signature::new(2, 1).unwrap();
        let off = BigradedSeries::from_terms(2, 4, [(mi(&[1, 0]), mi(&[0, 1]), 0, Scalar::one())]).unwrap();
        assert!(delta(&s21, &off).unwrap().is_zero());
    }
}
