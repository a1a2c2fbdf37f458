use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Scalar, ScalarJson, SeriesMatrix, USeries};

/// A matrix of `u`-series: `rows[i][j][m]` is the coefficient of `u^m` in
/// entry `(i, j)`, as a `[re, im]` pair of rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeriesMatrixJson(pub Vec<Vec<Vec<ScalarJson>>>);

impl From<&SeriesMatrix> for SeriesMatrixJson {
    fn from(m: &SeriesMatrix) -> Self {
        SeriesMatrixJson(
            m.rows
                .iter()
                .map(|r| r.iter().map(|e| e.coeffs().iter().map(ScalarJson::from).collect()).collect())
                .collect(),
        )
    }
}

impl TryFrom<&SeriesMatrixJson> for SeriesMatrix {
    type Error = Error;
    fn try_from(j: &SeriesMatrixJson) -> Result<Self> {
        let n = j.0.len();
        let mut deg = None;
        let mut rows = Vec::with_capacity(n);
        for r in &j.0 {
            if r.len() != n {
                return Err(Error::Parse("series matrix is not square".into()));
            }
            let mut row = Vec::with_capacity(n);
            for e in r {
                if e.is_empty() || deg.is_some_and(|d| d != e.len()) {
                    return Err(Error::Parse("series matrix entries differ in length".into()));
                }
                deg = Some(e.len());
                let c = e.iter().map(Scalar::try_from).collect::<Result<Vec<_>>>()?;
                row.push(USeries::from_coeffs(c.len() - 1, &c));
            }
            rows.push(row);
        }
        Ok(SeriesMatrix { rows })
    }
}
