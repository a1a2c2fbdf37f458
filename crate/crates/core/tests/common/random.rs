use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cmnf::series::{rat, BigradedSeries, MultiIndex, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[-1, 1]` with denominator at most 6.
pub fn unit_rational(rng: &mut ChaCha8Rng) -> num_rational::BigRational {
    let d: i64 = rng.gen_range(1..=6);
    rat(rng.gen_range(-d..=d), d)
}

pub fn real_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::real(unit_rational(rng))
}

pub fn complex_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(unit_rational(rng), unit_rational(rng))
}

/// All multi-indices of total degree `d` in `n` variables.
pub fn indices(n: usize, d: u32) -> Vec<MultiIndex> {
    if n == 0 {
        return if d == 0 { vec![MultiIndex(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in indices(n - 1, d - first) {
            rest.0.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Monomials `z^alpha zbar^beta u^m` with weight in `lo..=hi`.
pub fn monomials(n: usize, lo: u32, hi: u32) -> Vec<(MultiIndex, MultiIndex, u32)> {
    let mut out = Vec::new();
    for s in 0..=hi {
        for t in 0..=hi - s {
            for m in 0..=(hi - s - t) / 2 {
                let w = s + t + 2 * m;
                if w < lo {
                    continue;
                }
                for a in indices(n, s) {
                    for b in indices(n, t) {
                        out.push((a.clone(), b, m));
                    }
                }
            }
        }
    }
    out
}

/// A sparse random complex series; each admissible monomial is kept with
/// probability `density`.
pub fn sparse_series(
    rng: &mut ChaCha8Rng,
    n: usize,
    cap: u32,
    weights: (u32, u32),
    density: f64,
    keep: impl Fn(u32, u32) -> bool,
) -> BigradedSeries {
    let mut terms = Vec::new();
    for (a, b, m) in monomials(n, weights.0, weights.1) {
        if keep(a.degree(), b.degree()) && rng.gen_bool(density) {
            terms.push((a, b, m, complex_scalar(rng)));
        }
    }
    BigradedSeries::from_terms(n, cap, terms).unwrap()
}

/// A real perturbation of weights `lo..=hi` whose coefficients have real and
/// imaginary parts in `[-1, 1]`.
pub fn real_perturbation(rng: &mut ChaCha8Rng, n: usize, cap: u32, lo: u32, hi: u32, density: f64) -> BigradedSeries {
    let mut terms = Vec::new();
    for (a, b, m) in monomials(n, lo, hi) {
        if a.0 > b.0 || !rng.gen_bool(density) {
            continue;
        }
        if a == b {
            terms.push((a, b, m, real_scalar(rng)));
        } else {
            let c = complex_scalar(rng);
            terms.push((b.clone(), a.clone(), m, c.conj()));
            terms.push((a, b, m, c));
        }
    }
    BigradedSeries::from_terms(n, cap, terms).unwrap()
}

/// A random holomorphic series with terms of weight `lo..=hi`.
pub fn holo_series(rng: &mut ChaCha8Rng, n: usize, cap: u32, lo: u32, hi: u32, density: f64) -> cmnf::series::HoloSeries {
    let mut terms = Vec::new();
    for s in 0..=hi {
        for m in 0..=(hi - s) / 2 {
            if s + 2 * m < lo {
                continue;
            }
            for a in indices(n, s) {
                if rng.gen_bool(density) {
                    terms.push((a, m, complex_scalar(rng)));
                }
            }
        }
    }
    cmnf::series::HoloSeries::from_terms(n, cap, terms).unwrap()
}

/// A weight-preserving map jet tangent to the identity.
pub fn near_identity_map(rng: &mut ChaCha8Rng, n: usize, cap: u32) -> cmnf::series::MapJet {
    use cmnf::series::HoloSeries;
    let f = (0..n)
        .map(|k| HoloSeries::z(n, cap, k).unwrap().add(&holo_series(rng, n, cap, 2, cap, 0.3)).unwrap())
        .collect();
    let g = HoloSeries::w(n, cap).unwrap().add(&holo_series(rng, n, cap, 3, cap, 0.3)).unwrap();
    cmnf::series::MapJet::new(f, g).unwrap()
}

/// A random isotropy element `(C, a, rho, r)` with rational entries. `C` is a
/// Levi similitude of the form `[[x, -conj y], [y, conj x]]` (definite) or
/// `[[x, conj y], [y, conj x]]` (indefinite) in dimension 2.
pub fn group_element(rng: &mut ChaCha8Rng, sig: cmnf::levi::Signature) -> cmnf::hyperquadric::GroupElement {
    use cmnf::hyperquadric::GroupElement;
    let n = sig.n();
    let a: Vec<Scalar> = (0..n).map(|_| complex_scalar(rng)).collect();
    let r = unit_rational(rng);
    loop {
        let x = complex_scalar(rng);
        let (c, rho) = match n {
            1 => (vec![vec![x.clone()]], x.norm_sqr()),
            2 => {
                let y = complex_scalar(rng);
                if sig.e() == 2 || sig.e() == 0 {
                    let rho = x.norm_sqr() + y.norm_sqr();
                    (vec![vec![x.clone(), -y.conj()], vec![y.clone(), x.conj()]], rho)
                } else {
                    let rho = x.norm_sqr() - y.norm_sqr();
                    (vec![vec![x.clone(), y.conj()], vec![y.clone(), x.conj()]], rho)
                }
            }
            _ => panic!("random group elements are generated for n <= 2"),
        };
        if let Ok(g) = GroupElement::new(sig, c, a.clone(), rho, r.clone()) {
            return g;
        }
    }
}
