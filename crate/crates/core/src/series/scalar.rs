//! Exact complex-rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A complex number with arbitrary-precision rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Scalar::real(rat(num, den))
    }

    pub fn real(re: BigRational) -> Self {
        Scalar {
            re,
            im: BigRational::zero(),
        }
    }

    /// `re + i im` from two small fractions.
    pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Scalar {
            re: rat(re.0, re.1),
            im: rat(im.0, im.1),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Real part as a scalar.
    pub fn re_part(&self) -> Self {
        Scalar::real(self.re.clone())
    }

    /// Imaginary part as a (real) scalar.
    pub fn im_part(&self) -> Self {
        Scalar::real(self.im.clone())
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Scalar {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Scalar {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let d = self.norm_sqr();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar {
            re: &self.re / &d,
            im: -(&self.im / &d),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self += a * b` without an intermediate clone of `self`.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.im.is_zero() && b.im.is_zero() {
            self.re += &a.re * &b.re;
            return;
        }
        let re = &a.re * &b.re - &a.im * &b.im;
        let im = &a.re * &b.im + &a.im * &b.re;
        self.re += re;
        self.im += im;
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// Exact conversion of finite doubles (they are dyadic rationals).
    pub fn from_f64_exact(re: f64, im: f64) -> Result<Self> {
        let conv = |x: f64| {
            BigRational::from_float(x).ok_or_else(|| Error::Parse(format!("non-finite {x}")))
        };
        Ok(Scalar {
            re: conv(re)?,
            im: conv(im)?,
        })
    }
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Formats a rational as `p/q` (denominator always present).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(p, q))
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "({} {} {}i)", self.re, sign, self.im.abs())
            }
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::real(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::real(&self.re * &rhs.re);
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}


/// Unreduced sum of rationals `num / den`; `den` only grows when a new term's
/// denominator does not divide it, and the result is reduced once.
#[derive(Clone, Debug)]
struct FracSum {
    num: BigInt,
    den: BigInt,
}

impl Default for FracSum {
    fn default() -> Self {
        FracSum {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }
}

impl FracSum {
    fn add(&mut self, n: BigInt, d: BigInt) {
        if n.is_zero() {
            return;
        }
        if d == self.den {
            self.num += n;
            return;
        }
        let (q, r) = self.den.div_rem(&d);
        if r.is_zero() {
            self.num += n * q;
            return;
        }
        let g = self.den.gcd(&d);
        let grow = &d / &g;
        self.num *= &grow;
        self.den *= &grow;
        self.num += n * (&self.den / &d);
    }

    fn finish(self) -> BigRational {
        BigRational::new(self.num, self.den)
    }
}

/// Accumulator for sums of products of scalars with a single reduction at the end.
#[derive(Clone, Debug, Default)]
pub(crate) struct ProductSum {
    re: FracSum,
    im: FracSum,
}

impl ProductSum {
    pub(crate) fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        let part = |x: &BigRational, y: &BigRational| (x.numer() * y.numer(), x.denom() * y.denom());
        if !a.re.is_zero() && !b.re.is_zero() {
            let (n, d) = part(&a.re, &b.re);
            self.re.add(n, d);
        }
        if !a.im.is_zero() && !b.im.is_zero() {
            let (n, d) = part(&a.im, &b.im);
            self.re.add(-n, d);
        }
        if !a.re.is_zero() && !b.im.is_zero() {
            let (n, d) = part(&a.re, &b.im);
            self.im.add(n, d);
        }
        if !a.im.is_zero() && !b.re.is_zero() {
            let (n, d) = part(&a.im, &b.re);
            self.im.add(n, d);
        }
    }

    pub(crate) fn finish(self) -> Scalar {
        Scalar {
            re: self.re.finish(),
            im: self.im.finish(),
        }
    }
}
