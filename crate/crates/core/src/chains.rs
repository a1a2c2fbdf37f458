//! Chains: the transversality test, the hyperquadric chain equation
//! (numerically and as exact series), and chain jets of general surfaces.

use std::io::Write;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::levi::Signature;
use crate::normalize::{chain_residual, HypersurfaceJet};
use crate::series::{BigradedSeries, HoloSeries, MultiIndex, Scalar, USeries};

/// Denominator factors below this modulus abort the integration.
pub const SINGULAR_THRESHOLD: f64 = 1e-8;

/// A curve `Gamma` through 0 with tangent `(p1, q1)` is transversal to the
/// complex tangent plane iff `Re q1 / (1 + F_u(0)^2) != 0`, given that `F`
/// and its first `z`, `zbar` derivatives vanish at 0.
pub fn transversality_check(f: &BigradedSeries, p1: &[Scalar], q1: &Scalar) -> Result<bool> {
    let n = f.dim();
    if p1.len() != n {
        return Err(Error::DimensionMismatch { left: p1.len(), right: n });
    }
    let zero = MultiIndex::zeros(n);
    if !f.coefficient(&zero, &zero, 0)?.is_zero() {
        return Err(Error::Precondition("F(0) != 0".into()));
    }
    for k in 0..n {
        let e = MultiIndex::unit(n, k);
        if !f.coefficient(&e, &zero, 0)?.is_zero() || !f.coefficient(&zero, &e, 0)?.is_zero() {
            return Err(Error::Precondition("first z-derivatives of F do not vanish at 0".into()));
        }
    }
    let fu = f.coefficient(&zero, &zero, 1)?;
    let factor = (Scalar::one() + &fu * &fu).inv()?;
    let re = q1.re_part();
    Ok(!(&re * &factor).is_zero())
}

fn pair(sig: &Signature, x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter()
        .zip(y)
        .enumerate()
        .map(|(k, (a, b))| a * b.conj() * sig.eps(k) as f64)
        .sum()
}

/// Right-hand side of the hyperquadric chain equation in graph form
/// `z = p(u)`, `w = u + i<p,p>`:
///
/// ```text
/// p'' = 2i p' <p',p'> (1 - i<p,p'> - i<p',p>) / (1 + i<p,p'> - i<p',p>)
/// ```
///
/// Every complex line `z = b + a w` meets the quadric in a solution curve.
pub fn hyperquadric_chain_rhs(sig: &Signature, p: &[Complex64], dp: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = sig.n();
    for len in [p.len(), dp.len()] {
        if len != n {
            return Err(Error::DimensionMismatch { left: len, right: n });
        }
    }
    let i = Complex64::i();
    let ppd = pair(sig, p, dp);
    let pdp = pair(sig, dp, p);
    let dd = pair(sig, dp, dp);
    let den = 1.0 + i * ppd - i * pdp;
    if den.norm() < SINGULAR_THRESHOLD {
        return Err(Error::Singular { mu: f64::NAN, modulus: den.norm() });
    }
    let k = 2.0 * i * dd * (1.0 - i * ppd - i * pdp) / den;
    Ok(dp.iter().map(|x| x * k).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainSample {
    pub mu: f64,
    pub p: Vec<Complex64>,
    pub w: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainTrajectory {
    pub a: Vec<Complex64>,
    pub samples: Vec<ChainSample>,
    pub step: f64,
    /// Set when integration stopped early at a near-singular denominator.
    pub singular_at: Option<f64>,
}

impl ChainTrajectory {
    /// `|p(mu) - a w(mu)|` at each sample (Euclidean norm).
    pub fn line_residuals(&self) -> Vec<f64> {
        self.samples
            .iter()
            .map(|s| {
                s.p.iter()
                    .zip(&self.a)
                    .map(|(pk, ak)| (pk - ak * s.w).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }

    pub fn max_line_residual(&self) -> f64 {
        self.line_residuals().into_iter().fold(0.0, f64::max)
    }

    /// CSV with columns `mu, re(p_k), im(p_k) (k = 1..n), re(w), im(w), line_residual`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let n = self.a.len();
        let mut header = vec!["mu".to_string()];
        for k in 1..=n {
            header.push(format!("re_p{k}"));
            header.push(format!("im_p{k}"));
        }
        header.extend(["re_w", "im_w", "line_residual"].map(String::from));
        writeln!(out, "{}", header.join(","))?;
        for (s, res) in self.samples.iter().zip(self.line_residuals()) {
            let mut row = vec![format!("{:e}", s.mu)];
            for pk in &s.p {
                row.push(format!("{:e}", pk.re));
                row.push(format!("{:e}", pk.im));
            }
            row.push(format!("{:e}", s.w.re));
            row.push(format!("{:e}", s.w.im));
            row.push(format!("{res:e}"));
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Classical RK4 for `p'' = rhs(p, p')`, `p(0) = 0`, `p'(0) = a`, on
/// `[0, mu_max]` with step `h`; `w = mu + i<p,p>`.
pub fn integrate_chain(sig: &Signature, a: &[Complex64], mu_max: f64, h: f64) -> Result<ChainTrajectory> {
    let n = sig.n();
    if a.len() != n {
        return Err(Error::DimensionMismatch { left: a.len(), right: n });
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Precondition(format!("step size must be positive, got {h}")));
    }
    if !(mu_max >= 0.0) || !mu_max.is_finite() {
        return Err(Error::Precondition(format!("mu_max must be nonnegative, got {mu_max}")));
    }
    let steps = (mu_max / h).round() as usize;
    let sample = |mu: f64, p: &[Complex64]| ChainSample {
        mu,
        p: p.to_vec(),
        w: Complex64::new(mu, 0.0) + Complex64::i() * pair(sig, p, p),
    };
    let mut p = vec![Complex64::zero(); n];
    let mut dp = a.to_vec();
    let mut samples = vec![sample(0.0, &p)];
    let axpy = |x: &[Complex64], k: &[Complex64], s: f64| -> Vec<Complex64> {
        x.iter().zip(k).map(|(a, b)| a + b * s).collect()
    };
    let mut singular_at = None;
    for step in 0..steps {
        let mu = step as f64 * h;
        let f = |p: &[Complex64], dp: &[Complex64]| hyperquadric_chain_rhs(sig, p, dp);
        let res = (|| -> Result<(Vec<Complex64>, Vec<Complex64>)> {
            let k1p = dp.clone();
            let k1v = f(&p, &dp)?;
            let p2 = axpy(&p, &k1p, h / 2.0);
            let v2 = axpy(&dp, &k1v, h / 2.0);
            let k2v = f(&p2, &v2)?;
            let p3 = axpy(&p, &v2, h / 2.0);
            let v3 = axpy(&dp, &k2v, h / 2.0);
            let k3v = f(&p3, &v3)?;
            let p4 = axpy(&p, &v3, h);
            let v4 = axpy(&dp, &k3v, h);
            let k4v = f(&p4, &v4)?;
            let np: Vec<Complex64> = (0..n)
                .map(|k| p[k] + h / 6.0 * (k1p[k] + 2.0 * v2[k] + 2.0 * v3[k] + v4[k]))
                .collect();
            let nv: Vec<Complex64> = (0..n)
                .map(|k| dp[k] + h / 6.0 * (k1v[k] + 2.0 * k2v[k] + 2.0 * k3v[k] + k4v[k]))
                .collect();
            Ok((np, nv))
        })();
        match res {
            Ok((np, nv)) => {
                p = np;
                dp = nv;
                samples.push(sample((step + 1) as f64 * h, &p));
            }
            Err(Error::Singular { .. }) => {
                singular_at = Some(mu);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(ChainTrajectory {
        a: a.to_vec(),
        samples,
        step: h,
        singular_at,
    })
}

fn series_pair(sig: &Signature, x: &[USeries], y: &[USeries]) -> USeries {
    let deg = x[0].deg().min(y[0].deg());
    let mut acc = USeries::zero(deg);
    for k in 0..sig.n() {
        let t = x[k].mul(&y[k].conj());
        acc = acc.add(&t.scale(&sig.eps_scalar(k)));
    }
    acc
}

/// Exact right-hand side of the chain equation on series in the real variable `u`.
fn chain_rhs_series(sig: &Signature, p: &[USeries], dp: &[USeries]) -> Result<Vec<USeries>> {
    let deg = dp[0].deg();
    let p: Vec<USeries> = p.iter().map(|s| s.truncate(deg)).collect();
    let i = Scalar::i();
    let ppd = series_pair(sig, &p, dp);
    let pdp = series_pair(sig, dp, &p);
    let dd = series_pair(sig, dp, dp);
    let one = USeries::one(deg);
    let den = one.add(&ppd.sub(&pdp).scale(&i));
    let num = one.sub(&ppd.add(&pdp).scale(&i));
    let k = dd
        .mul(&num)
        .mul(&den.inv()?)
        .scale(&Scalar::from_int(2).mul_i());
    Ok(dp.iter().map(|x| x.mul(&k)).collect())
}

/// Exact series solution of the hyperquadric chain equation with
/// `p(0) = 0`, `p'(0) = a`, as series in `u` of degree `degree`.
pub fn chain_series_u(sig: &Signature, a: &[Scalar], degree: usize) -> Result<Vec<USeries>> {
    let n = sig.n();
    if a.len() != n {
        return Err(Error::DimensionMismatch { left: a.len(), right: n });
    }
    let lin: Vec<USeries> = a
        .iter()
        .map(|ak| USeries::t(degree).scale(ak))
        .collect();
    let mut p = lin.clone();
    // Each pass fixes at least one more coefficient.
    for _ in 0..=degree {
        let dp: Vec<USeries> = p.iter().map(USeries::derivative).collect();
        let rhs = chain_rhs_series(sig, &p, &dp)?;
        let next: Vec<USeries> = rhs
            .iter()
            .zip(&lin)
            .map(|(r, l)| l.add(&r.integral().integral().truncate(degree)))
            .collect();
        if next == p {
            break;
        }
        p = next;
    }
    Ok(p)
}

/// [`chain_series_u`] as `w`-series of weight cap `2 * degree`.
pub fn chain_series(sig: &Signature, a: &[Scalar], degree: usize) -> Result<Vec<HoloSeries>> {
    let cap = 2 * degree as u32;
    chain_series_u(sig, a, degree)?
        .iter()
        .map(|s| s.to_holo(sig.n(), cap))
        .collect()
}

/// The chain through the origin of an arbitrary jet, with `p'(0) = a`, to
/// weight `cap`: the curve along which the first two normalization stages
/// leave `Delta^2 H23 = 0`.
///
/// The coefficient `p_k` of `w^k` first enters `Delta^2 H23` through its
/// `zbar_j u^{k-2}` terms, with factor `-4 eps_j (n+1)(n+2) k (k-1)` relative
/// to `p_k^j`; each order is therefore solved from the residual left by the
/// lower ones. The residual at order `k` lives at weight `2k + 1`, so each
/// pass runs the stages at that cap.
pub fn general_chain_jet(f: &HypersurfaceJet, a: &[Scalar], cap: u32) -> Result<Vec<HoloSeries>> {
    let sig = f.sig;
    let n = sig.n();
    if a.len() != n {
        return Err(Error::DimensionMismatch { left: a.len(), right: n });
    }
    let mut coeffs: Vec<Vec<Scalar>> = a.iter().map(|ak| vec![Scalar::zero(), ak.clone()]).collect();
    let to_p = |coeffs: &[Vec<Scalar>], cap: u32| -> Result<Vec<HoloSeries>> {
        coeffs.iter().map(|c| HoloSeries::from_w_coeffs(n, cap, c)).collect()
    };
    let nn = n as i64;
    let zeros = MultiIndex::zeros(n);
    for k in 2..=(cap / 2) as usize {
        let at = 2 * k as u32 + 1;
        let fk = f.with_cap(at)?;
        let res = chain_residual(&fk, &to_p(&coeffs, at)?)?;
        let kk = k as i64;
        let den = Scalar::from_int(4 * (nn + 1) * (nn + 2) * kk * (kk - 1));
        for (j, c) in coeffs.iter_mut().enumerate() {
            let rj = res.coefficient(&zeros, &MultiIndex::unit(n, j), k as u32 - 2)?;
            let pk = rj.checked_div(&den)?;
            c.push(if sig.eps(j) < 0 { -pk } else { pk });
        }
    }
    to_p(&coeffs, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn transversality_examples() {
        let sig = Signature::new(1, 1).unwrap();
        let f = crate::levi::levi_form(&sig, 4).unwrap();
        let p1 = [Scalar::zero()];
        assert!(transversality_check(&f, &p1, &Scalar::one()).unwrap());
        assert!(!transversality_check(&f, &p1, &Scalar::i()).unwrap());
        assert!(!transversality_check(&f, &p1, &Scalar::zero()).unwrap());
        let bad = f.add(&BigradedSeries::z(1, 4, 0).unwrap()).unwrap();
        assert!(transversality_check(&bad, &p1, &Scalar::one()).is_err());
    }

    #[test]
    fn rhs_examples() {
        let sig = Signature::new(1, 1).unwrap();
        let a = c(0.5, -0.25);
        let r = hyperquadric_chain_rhs(&sig, &[c(0.0, 0.0)], &[a]).unwrap();
        let expect = 2.0 * Complex64::i() * a * a.norm_sqr();
        assert!((r[0] - expect).norm() < 1e-15);
        let zero = hyperquadric_chain_rhs(&sig, &[c(0.3, 0.1)], &[c(0.0, 0.0)]).unwrap();
        assert_eq!(zero[0], c(0.0, 0.0));
        let s21 = Signature::new(2, 1).unwrap();
        let null = hyperquadric_chain_rhs(&s21, &[c(0.0, 0.0); 2], &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(null.iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn zero_direction_gives_u_curve() {
        let sig = Signature::new(2, 1).unwrap();
        let t = integrate_chain(&sig, &[c(0.0, 0.0); 2], 0.1, 0.01).unwrap();
        assert_eq!(t.samples.len(), 11);
        assert!(t.samples.iter().all(|s| s.p.iter().all(|x| x.norm() == 0.0) && s.w.im == 0.0));
    }

    #[test]
    fn nonpositive_step_is_rejected() {
        let sig = Signature::new(1, 1).unwrap();
        assert!(integrate_chain(&sig, &[c(1.0, 0.0)], 0.5, 0.0).is_err());
    }

    #[test]
    fn series_second_coefficient() {
        let sig = Signature::new(1, 1).unwrap();
        let a = Scalar::gaussian((1, 2), (1, 3));
        let p = chain_series_u(&sig, &[a.clone()], 4).unwrap();
        assert_eq!(p[0].coeff(1), a);
        let aa = a.norm_sqr();
        assert_eq!(p[0].coeff(2), a.mul_i().scale(&aa));
        let zero = chain_series_u(&sig, &[Scalar::zero()], 4).unwrap();
        assert!(zero[0].is_zero());
    }

    #[test]
    fn csv_has_fixed_columns() {
        let sig = Signature::new(2, 2).unwrap();
        let t = integrate_chain(&sig, &[c(0.1, 0.0), c(0.0, 0.2)], 0.01, 0.005).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let first = text.lines().next().unwrap();
        assert_eq!(first, "mu,re_p1,im_p1,re_p2,im_p2,re_w,im_w,line_residual");
        assert_eq!(text.lines().count(), 4);
    }
}
