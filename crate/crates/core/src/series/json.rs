//! JSON encoding of series and map jets with `"p/q"` rational strings.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::bigraded::{BigradedSeries, MultiIndex};
use super::holo::HoloSeries;
use super::mapjet::MapJet;
use super::poly::{check_shape, MAX_CAP};
use super::scalar::{format_rational, parse_rational, Scalar};
use crate::error::{Error, Result};

/// A complex scalar as a `[re, im]` pair of rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson(pub String, pub String);

impl From<&Scalar> for ScalarJson {
    fn from(s: &Scalar) -> Self {
        ScalarJson(format_rational(s.re()), format_rational(s.im()))
    }
}

impl TryFrom<&ScalarJson> for Scalar {
    type Error = Error;
    fn try_from(j: &ScalarJson) -> Result<Self> {
        Ok(Scalar::new(parse_rational(&j.0)?, parse_rational(&j.1)?))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TermJson {
    alpha: Vec<u32>,
    beta: Vec<u32>,
    m: u32,
    re: String,
    im: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SeriesJson {
    dim: usize,
    weight_cap: u32,
    terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct HoloTermJson {
    alpha: Vec<u32>,
    m: u32,
    re: String,
    im: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct HoloJson {
    dim: usize,
    weight_cap: u32,
    terms: Vec<HoloTermJson>,
}

fn check_key(alpha: &[u32], beta: &[u32], m: u32, dim: usize, cap: u32) -> Result<()> {
    if alpha.len() != dim || beta.len() != dim {
        return Err(Error::Parse(format!("multi-index length differs from dim {dim}")));
    }
    let w = alpha.iter().chain(beta).map(|&e| e as u64).sum::<u64>() + 2 * m as u64;
    if w > cap as u64 {
        return Err(Error::Parse(format!("term of weight {w} exceeds weight_cap {cap}")));
    }
    Ok(())
}

fn shape(dim: usize, cap: u32) -> Result<()> {
    check_shape(dim, cap).map_err(|e| match e {
        Error::CapTooLarge { .. } => Error::Parse(format!("weight_cap above {MAX_CAP}")),
        other => Error::Parse(other.to_string()),
    })
}

impl From<&BigradedSeries> for SeriesJson {
    fn from(f: &BigradedSeries) -> Self {
        SeriesJson {
            dim: f.dim(),
            weight_cap: f.weight_cap(),
            terms: f
                .terms()
                .map(|(a, b, m, c)| TermJson {
                    alpha: a.0,
                    beta: b.0,
                    m,
                    re: format_rational(c.re()),
                    im: format_rational(c.im()),
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesJson> for BigradedSeries {
    type Error = Error;
    fn try_from(j: SeriesJson) -> Result<Self> {
        shape(j.dim, j.weight_cap)?;
        let mut seen = HashSet::new();
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            check_key(&t.alpha, &t.beta, t.m, j.dim, j.weight_cap)?;
            if !seen.insert((t.alpha.clone(), t.beta.clone(), t.m)) {
                return Err(Error::Parse("duplicate term key".into()));
            }
            let c = Scalar::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
            terms.push((MultiIndex(t.alpha), MultiIndex(t.beta), t.m, c));
        }
        BigradedSeries::from_terms(j.dim, j.weight_cap, terms)
    }
}

impl From<&HoloSeries> for HoloJson {
    fn from(f: &HoloSeries) -> Self {
        HoloJson {
            dim: f.dim(),
            weight_cap: f.weight_cap(),
            terms: f
                .terms()
                .map(|(a, m, c)| HoloTermJson {
                    alpha: a.0,
                    m,
                    re: format_rational(c.re()),
                    im: format_rational(c.im()),
                })
                .collect(),
        }
    }
}

impl TryFrom<HoloJson> for HoloSeries {
    type Error = Error;
    fn try_from(j: HoloJson) -> Result<Self> {
        shape(j.dim, j.weight_cap)?;
        let mut seen = HashSet::new();
        let mut terms = Vec::with_capacity(j.terms.len());
        let zeros = vec![0; j.dim];
        for t in j.terms {
            check_key(&t.alpha, &zeros, t.m, j.dim, j.weight_cap)?;
            if !seen.insert((t.alpha.clone(), t.m)) {
                return Err(Error::Parse("duplicate term key".into()));
            }
            let c = Scalar::new(parse_rational(&t.re)?, parse_rational(&t.im)?);
            terms.push((MultiIndex(t.alpha), t.m, c));
        }
        HoloSeries::from_terms(j.dim, j.weight_cap, terms)
    }
}

impl Serialize for BigradedSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigradedSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        BigradedSeries::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Serialize for HoloSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HoloJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HoloSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = HoloJson::deserialize(d)?;
        HoloSeries::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapJetJson {
    f: Vec<HoloSeries>,
    g: HoloSeries,
}

impl Serialize for MapJet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapJetJson {
            f: self.f.clone(),
            g: self.g.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MapJet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MapJetJson::deserialize(d)?;
        MapJet::new(j.f, j.g).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_round_trip_is_bit_exact() {
        let f = BigradedSeries::from_terms(
            2,
            6,
            [
                (MultiIndex(vec![1, 0]), MultiIndex(vec![1, 0]), 0, Scalar::one()),
                (MultiIndex(vec![0, 2]), MultiIndex(vec![1, 1]), 0, Scalar::gaussian((-3, 7), (2, 9))),
                (MultiIndex(vec![0, 0]), MultiIndex(vec![1, 0]), 2, Scalar::i()),
            ],
        )
        .unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back: BigradedSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert!(text.contains("\"-3/7\""));
    }

    #[test]
    fn overweight_terms_are_rejected() {
        let text = r#"{"dim":1,"weight_cap":2,"terms":[{"alpha":[2],"beta":[1],"m":0,"re":"1/1","im":"0/1"}]}"#;
        assert!(serde_json::from_str::<BigradedSeries>(text).is_err());
    }

    #[test]
    fn decimals_are_rejected() {
        let text = r#"{"dim":1,"weight_cap":2,"terms":[{"alpha":[1],"beta":[1],"m":0,"re":"0.5","im":"0"}]}"#;
        assert!(serde_json::from_str::<BigradedSeries>(text).is_err());
    }
}
