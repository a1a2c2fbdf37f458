//! Truncated power series with exact complex-rational coefficients.

mod bigraded;
mod holo;
mod json;
mod mapjet;
pub(crate) mod poly;
mod scalar;
mod subst;
mod useries;
mod vseries;
mod wrap;

pub use bigraded::{BigradedSeries, MultiIndex};
pub use holo::HoloSeries;
pub use json::ScalarJson;
pub use mapjet::{LinearPart, MapJet};
pub use poly::{MAX_CAP, MAX_DIM};
pub use scalar::{format_rational, parse_rational, rat, rat_to_f64, Scalar};
pub use subst::{eval_holo, pullback, substitute, transform};
pub use useries::{mat_add, mat_identity, mat_inv, mat_mul, mat_scale, mat_solve, mat_vec, SeriesMatrix, USeries};
pub use vseries::{solve_implicit_v, VSeries};
