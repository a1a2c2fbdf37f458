//! The closed-form low-type components of the solution of
//! `v = A + v B + v^2 C + O(v^3)` when `A` has no terms of type `(s, 0)` or `(0, t)`.

use cmnf::series::{BigradedSeries, Scalar, USeries};

pub struct Parts {
    pub a: BigradedSeries,
    pub b: BigradedSeries,
    pub c: BigradedSeries,
}

/// `(1 - B00)^{-k}` as a series in `u`.
fn inv_power(b00: &BigradedSeries, k: u32, n: usize, cap: u32) -> BigradedSeries {
    let deg = cap as usize / 2;
    let b = USeries::from_holo(&b00.with_cap(cap).unwrap().to_holo().unwrap()).truncate(deg);
    let inv = USeries::one(deg).sub(&b).inv().unwrap();
    let mut acc = USeries::one(deg);
    for _ in 0..k {
        acc = acc.mul(&inv);
    }
    acc.to_holo(n, cap).unwrap().at_real()
}

/// `[F11*, F12*, F13*, F22*, F23*]`.
pub fn components(p: &Parts, n: usize, cap: u32) -> [BigradedSeries; 5] {
    let a = |s, t| p.a.with_cap(cap).unwrap().type_component(s, t);
    let b = |s, t| p.b.with_cap(cap).unwrap().type_component(s, t);
    let c = |s, t| p.c.with_cap(cap).unwrap().type_component(s, t);
    let m = |x: &BigradedSeries, y: &BigradedSeries| x.mul(y).unwrap();
    let sum = |xs: &[BigradedSeries]| xs.iter().fold(BigradedSeries::zero(n, cap).unwrap(), |acc, x| acc.add(x).unwrap());
    let k = |x: i64| Scalar::from_int(x);
    let g = |j| inv_power(&b(0, 0), j, n, cap);
    let (a11, a12, a13, a21, a22, a23) = (a(1, 1), a(1, 2), a(1, 3), a(2, 1), a(2, 2), a(2, 3));
    let (b01, b02, b10, b11, b12) = (b(0, 1), b(0, 2), b(1, 0), b(1, 1), b(1, 2));
    let (c00, c01) = (c(0, 0), c(0, 1));

    let f11 = m(&g(1), &a11);
    let f12 = sum(&[m(&g(1), &a12), m(&g(2), &m(&a11, &b01))]);
    let f13 = sum(&[
        m(&g(1), &a13),
        m(&g(2), &sum(&[m(&a11, &b02), m(&a12, &b01)])),
        m(&g(3), &m(&a11, &m(&b01, &b01))),
    ]);
    let f22 = sum(&[
        m(&g(1), &a22),
        m(&g(2), &sum(&[m(&a11, &b11), m(&a12, &b10), m(&a21, &b01)])),
        m(&g(3), &sum(&[m(&a11, &m(&b01, &b10)).scale(&k(2)), m(&m(&a11, &a11), &c00)])),
    ]);
    let f23 = sum(&[
        m(&g(1), &a23),
        m(&g(2), &sum(&[m(&a11, &b12), m(&a12, &b11), m(&a21, &b02), m(&a13, &b10), m(&a22, &b01)])),
        m(
            &g(3),
            &sum(&[
                m(&a11, &m(&b01, &b11)).scale(&k(2)),
                m(&a11, &m(&b10, &b02)).scale(&k(2)),
                m(&a12, &m(&b01, &b10)).scale(&k(2)),
                m(&a21, &m(&b01, &b01)),
                m(&m(&a11, &a11), &c01),
                m(&a11, &m(&a12, &c00)).scale(&k(2)),
            ]),
        ),
        m(&g(4), &sum(&[m(&a11, &m(&b01, &m(&b01, &b10))), m(&m(&a11, &a11), &m(&b01, &c00))])).scale(&k(3)),
    ]);
    [f11, f12, f13, f22, f23]
}
