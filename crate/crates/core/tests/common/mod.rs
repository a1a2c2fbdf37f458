#![allow(dead_code)]

use cmnf::levi::{levi_form, Signature};
use cmnf::normalize::HypersurfaceJet;
use cmnf::series::{BigradedSeries, HoloSeries, MultiIndex, Scalar};

pub type Term = (Vec<u32>, Vec<u32>, u32, Scalar);

/// `<z,z>` plus the real part of the listed terms `(alpha, beta, m, c)`.
pub fn perturbed(sig: Signature, cap: u32, terms: &[Term]) -> HypersurfaceJet {
    let mut all = Vec::new();
    for (a, b, m, c) in terms {
        all.push((MultiIndex(a.clone()), MultiIndex(b.clone()), *m, c.clone()));
        all.push((MultiIndex(b.clone()), MultiIndex(a.clone()), *m, c.conj()));
    }
    let extra = BigradedSeries::from_terms(sig.n(), cap, all).unwrap();
    HypersurfaceJet::new(sig, levi_form(&sig, cap).unwrap().add(&extra).unwrap()).unwrap()
}

pub fn sample_21(cap: u32) -> HypersurfaceJet {
    perturbed(
        Signature::new(2, 1).unwrap(),
        cap,
        &[
            (vec![1, 1], vec![1, 1], 0, Scalar::from_frac(1, 3)),
            (vec![2, 0], vec![0, 2], 0, Scalar::gaussian((1, 2), (1, 5))),
            (vec![2, 1], vec![1, 1], 0, Scalar::gaussian((2, 3), (0, 1))),
            (vec![2, 1], vec![0, 3], 0, Scalar::gaussian((1, 3), (-1, 2))),
            (vec![1, 1], vec![2, 0], 1, Scalar::gaussian((1, 7), (1, 1))),
        ],
    )
}

pub fn sample_11(cap: u32) -> HypersurfaceJet {
    perturbed(
        Signature::new(1, 1).unwrap(),
        cap,
        &[
            (vec![2], vec![1], 0, Scalar::gaussian((1, 2), (1, 3))),
            (vec![1], vec![1], 1, Scalar::from_frac(1, 4)),
            (vec![2], vec![2], 0, Scalar::from_frac(-1, 3)),
            (vec![3], vec![0], 0, Scalar::gaussian((0, 1), (1, 1))),
            (vec![0], vec![0], 2, Scalar::from_frac(1, 2)),
        ],
    )
}

/// The linear map `z -> C z` as holomorphic series.
pub fn linear(c: &[Vec<Scalar>], cap: u32) -> Vec<HoloSeries> {
    let n = c.len();
    (0..n)
        .map(|i| {
            let mut acc = HoloSeries::zero(n, cap).unwrap();
            for (j, cij) in c[i].iter().enumerate() {
                acc = acc.add(&HoloSeries::z(n, cap, j).unwrap().scale(cij)).unwrap();
            }
            acc
        })
        .collect()
}

pub mod implicit;
pub mod random;
