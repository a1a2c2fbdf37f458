//! Dense truncated power series in a single variable, and square matrices of them.

use super::holo::HoloSeries;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `sum_{m <= deg} c[m] t^m`; `c.len() == deg + 1` always.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries {
    c: Vec<Scalar>,
}

impl USeries {
    pub fn zero(deg: usize) -> Self {
        USeries {
            c: vec![Scalar::zero(); deg + 1],
        }
    }

    pub fn constant(deg: usize, a: Scalar) -> Self {
        let mut s = Self::zero(deg);
        s.c[0] = a;
        s
    }

    pub fn one(deg: usize) -> Self {
        Self::constant(deg, Scalar::one())
    }

    /// The variable `t` itself.
    pub fn t(deg: usize) -> Self {
        let mut s = Self::zero(deg);
        if deg >= 1 {
            s.c[1] = Scalar::one();
        }
        s
    }

    pub fn from_coeffs(deg: usize, coeffs: &[Scalar]) -> Self {
        let mut s = Self::zero(deg);
        for (m, a) in coeffs.iter().enumerate().take(deg + 1) {
            s.c[m] = a.clone();
        }
        s
    }

    pub fn deg(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, m: usize) -> Scalar {
        self.c.get(m).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, m: usize, a: Scalar) {
        if m < self.c.len() {
            self.c[m] = a;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    pub fn truncate(&self, deg: usize) -> Self {
        Self::from_coeffs(deg, &self.c)
    }

    pub fn add(&self, o: &Self) -> Self {
        let deg = self.deg().min(o.deg());
        USeries {
            c: (0..=deg).map(|m| &self.c[m] + &o.c[m]).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let deg = self.deg().min(o.deg());
        USeries {
            c: (0..=deg).map(|m| &self.c[m] - &o.c[m]).collect(),
        }
    }

    pub fn scale(&self, a: &Scalar) -> Self {
        USeries {
            c: self.c.iter().map(|x| x * a).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let deg = self.deg().min(o.deg());
        let mut c = vec![Scalar::zero(); deg + 1];
        for (i, a) in self.c.iter().enumerate().take(deg + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(deg + 1 - i) {
                c[i + j].add_mul(a, b);
            }
        }
        USeries { c }
    }

    pub fn conj(&self) -> Self {
        USeries {
            c: self.c.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.c.iter().all(Scalar::is_real)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let deg = self.deg();
        let a0inv = self.c[0].inv()?;
        let mut r = vec![Scalar::zero(); deg + 1];
        r[0] = a0inv.clone();
        for m in 1..=deg {
            let mut s = Scalar::zero();
            for j in 1..=m {
                s.add_mul(&self.c[j], &r[m - j]);
            }
            r[m] = -(&s * &a0inv);
        }
        Ok(USeries { c: r })
    }

    /// Square root with constant term 1; needs `self(0) = 1`.
    pub fn sqrt1(&self) -> Result<Self> {
        if !self.c[0].is_one() {
            return Err(Error::Precondition("square root needs constant term 1".into()));
        }
        let deg = self.deg();
        let mut r = vec![Scalar::zero(); deg + 1];
        r[0] = Scalar::one();
        let half = Scalar::from_frac(1, 2);
        for m in 1..=deg {
            // self_m = sum_{j} r_j r_{m-j} = 2 r_m + sum_{0<j<m} r_j r_{m-j}
            let mut s = self.c[m].clone();
            for j in 1..m {
                let p = &r[j] * &r[m - j];
                s -= &p;
            }
            r[m] = &s * &half;
        }
        Ok(USeries { c: r })
    }

    /// `d/dt`; the degree drops by one (and stays at least 0).
    pub fn derivative(&self) -> Self {
        let deg = self.deg().saturating_sub(1);
        let mut c: Vec<Scalar> = (1..self.c.len())
            .map(|m| &self.c[m] * &Scalar::from_int(m as i64))
            .collect();
        c.resize(deg + 1, Scalar::zero());
        USeries { c }
    }

    /// Antiderivative vanishing at 0; the degree rises by one.
    pub fn integral(&self) -> Self {
        let mut c = vec![Scalar::zero()];
        for (m, a) in self.c.iter().enumerate() {
            c.push(a * &Scalar::from_frac(1, m as i64 + 1));
        }
        USeries { c }
    }

    /// `self(inner)`; `inner` must vanish at 0.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.c[0].is_zero() {
            return Err(Error::ConstantSlot { slot: 0 });
        }
        let deg = self.deg().min(inner.deg());
        let inner = inner.truncate(deg);
        let mut acc = USeries::zero(deg);
        for a in self.c.iter().take(deg + 1).rev() {
            acc = acc.mul(&inner);
            acc.c[0] += a;
        }
        Ok(acc)
    }

    pub fn eval_c64(&self, t: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for a in self.c.iter().rev() {
            acc = acc * t + a.to_c64();
        }
        acc
    }

    /// Embeds as a `w`-only holomorphic series (weight `2m`), truncated at `cap`.
    pub fn to_holo(&self, dim: usize, cap: u32) -> Result<HoloSeries> {
        HoloSeries::from_w_coeffs(dim, cap, &self.c)
    }

    /// The `z`-free part of a holomorphic series as a series in `w`.
    pub fn from_holo(h: &HoloSeries) -> Self {
        let c = h.w_coeffs();
        USeries { c }
    }
}

/// Square matrix with series entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    pub rows: Vec<Vec<USeries>>,
}

impl SeriesMatrix {
    pub fn identity(n: usize, deg: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { USeries::one(deg) } else { USeries::zero(deg) })
                    .collect()
            })
            .collect();
        SeriesMatrix { rows }
    }

    pub fn zero(n: usize, deg: usize) -> Self {
        SeriesMatrix {
            rows: vec![vec![USeries::zero(deg); n]; n],
        }
    }

    /// Matrix whose `m`-th coefficient matrix is `coeffs[m]`.
    pub fn from_coeff_matrices(n: usize, deg: usize, coeffs: &[Vec<Vec<Scalar>>]) -> Self {
        let mut out = Self::zero(n, deg);
        for (m, mat) in coeffs.iter().enumerate().take(deg + 1) {
            for i in 0..n {
                for j in 0..n {
                    out.rows[i][j].set(m, mat[i][j].clone());
                }
            }
        }
        out
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn deg(&self) -> usize {
        self.rows
            .iter()
            .flatten()
            .map(USeries::deg)
            .min()
            .unwrap_or(0)
    }

    /// Coefficient matrix of `t^m`.
    pub fn coeff_matrix(&self, m: usize) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.coeff(m)).collect())
            .collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n();
        let deg = self.deg().min(o.deg());
        let mut out = Self::zero(n, deg);
        for i in 0..n {
            for j in 0..n {
                let mut acc = USeries::zero(deg);
                for k in 0..n {
                    acc = acc.add(&self.rows[i][k].mul(&o.rows[k][j]));
                }
                out.rows[i][j] = acc;
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        SeriesMatrix {
            rows: self
                .rows
                .iter()
                .zip(&o.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
                .collect(),
        }
    }

    pub fn scale(&self, a: &Scalar) -> Self {
        SeriesMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.scale(a)).collect())
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n();
        SeriesMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| self.rows[j][i].clone()).collect())
                .collect(),
        }
    }

    /// Entrywise conjugation of coefficients.
    pub fn conj(&self) -> Self {
        SeriesMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(USeries::conj).collect())
                .collect(),
        }
    }

    pub fn truncate(&self, deg: usize) -> Self {
        SeriesMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.truncate(deg)).collect())
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n(), self.deg())
    }

    /// Inverse, assuming the constant matrix is invertible.
    pub fn inv(&self) -> Result<Self> {
        let n = self.n();
        let deg = self.deg();
        let a0 = self.coeff_matrix(0);
        let a0inv = mat_inv(&a0)?;
        let mut r: Vec<Vec<Vec<Scalar>>> = vec![a0inv.clone()];
        for m in 1..=deg {
            let mut s = vec![vec![Scalar::zero(); n]; n];
            for j in 1..=m {
                let prod = mat_mul(&self.coeff_matrix(j), &r[m - j]);
                s = mat_add(&s, &prod);
            }
            let next = mat_mul(&a0inv, &s);
            r.push(mat_scale(&next, &Scalar::from_int(-1)));
        }
        Ok(Self::from_coeff_matrices(n, deg, &r))
    }
}

pub fn mat_identity(n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    let mut out = vec![vec![Scalar::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j].add_mul(&a[i][l], &b[l][j]);
            }
        }
    }
    out
}

pub fn mat_add(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

pub fn mat_scale(a: &[Vec<Scalar>], c: &Scalar) -> Vec<Vec<Scalar>> {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn mat_vec(a: &[Vec<Scalar>], x: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|r| {
            let mut s = Scalar::zero();
            for (p, q) in r.iter().zip(x) {
                s.add_mul(p, q);
            }
            s
        })
        .collect()
}

/// Gauss-Jordan inverse over exact scalars.
pub fn mat_inv(a: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a.to_vec();
    let mut inv = mat_identity(n);
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::DivisionByZero)?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].inv()?;
        for j in 0..n {
            m[col][j] = &m[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let d = &f * &m[col][j];
                m[r][j] -= &d;
                let d = &f * &inv[col][j];
                inv[r][j] -= &d;
            }
        }
    }
    Ok(inv)
}

/// Solves `a x = b` exactly.
pub fn mat_solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Vec<Scalar>> {
    Ok(mat_vec(&mat_inv(a)?, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_one_plus_t() {
        let s = USeries::one(4).add(&USeries::t(4)).sqrt1().unwrap();
        assert_eq!(s.coeff(1), Scalar::from_frac(1, 2));
        assert_eq!(s.coeff(2), Scalar::from_frac(-1, 8));
        assert_eq!(s.coeff(3), Scalar::from_frac(1, 16));
        assert_eq!(s.mul(&s), USeries::one(4).add(&USeries::t(4)));
    }

    #[test]
    fn inverse_of_geometric() {
        let one_minus_t = USeries::one(5).sub(&USeries::t(5));
        let g = one_minus_t.inv().unwrap();
        assert!(g.coeffs().iter().all(Scalar::is_one));
    }

    #[test]
    fn matrix_inverse_round_trip() {
        let a = vec![
            vec![Scalar::from_int(2), Scalar::i()],
            vec![Scalar::from_frac(1, 3), Scalar::from_int(-1)],
        ];
        let prod = mat_mul(&a, &mat_inv(&a).unwrap());
        assert_eq!(prod, mat_identity(2));
    }
}
