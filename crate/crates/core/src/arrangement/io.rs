use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{Arrangement, ArrangementError};
use crate::exactmath::{CycloNum, RatNum};

/// `[a_num, a_den, b_num, b_den]` encoding `a_num/a_den + (b_num/b_den)·μ`.
pub type Coefficient = [i64; 4];

/// On-disk form of an arrangement: `{"lines": [[coef, coef, coef], ...]}`.
///
/// The file keeps the numbers exactly as written so that serializing a parsed
/// file reproduces it; normalization happens in [`ArrangementFile::to_arrangement`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementFile {
    pub lines: Vec<[Coefficient; 3]>,
}

fn decode(c: &Coefficient) -> Result<CycloNum, ArrangementError> {
    let part = |n: i64, d: i64| {
        RatNum::new(n, d).map_err(|_| ArrangementError::Parse(format!("zero denominator in {c:?}")))
    };
    Ok(CycloNum::new(part(c[0], c[1])?, part(c[2], c[3])?))
}

fn encode(c: &CycloNum) -> Result<Coefficient, ArrangementError> {
    let small = |q: &RatNum| -> Result<(i64, i64), ArrangementError> {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Ok((n, d)),
            _ => Err(ArrangementError::Parse(format!(
                "coefficient {q} does not fit in 64-bit integers"
            ))),
        }
    };
    let (an, ad) = small(&c.a)?;
    let (bn, bd) = small(&c.b)?;
    Ok([an, ad, bn, bd])
}

impl ArrangementFile {
    pub fn from_json(text: &str) -> Result<Self, ArrangementError> {
        serde_json::from_str(text).map_err(|e| ArrangementError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain integer arrays always serialize")
    }

    pub fn to_arrangement(&self) -> Result<Arrangement, ArrangementError> {
        let coeffs = self
            .lines
            .iter()
            .map(|l| Ok([decode(&l[0])?, decode(&l[1])?, decode(&l[2])?]))
            .collect::<Result<Vec<_>, ArrangementError>>()?;
        Arrangement::new(coeffs)
    }

    /// Writes the normalized coefficients of `arr`.
    pub fn from_arrangement(arr: &Arrangement) -> Result<Self, ArrangementError> {
        let lines = arr
            .lines()
            .iter()
            .map(|l| {
                let c = l.coeffs();
                Ok([encode(&c[0])?, encode(&c[1])?, encode(&c[2])?])
            })
            .collect::<Result<Vec<_>, ArrangementError>>()?;
        Ok(ArrangementFile { lines })
    }
}
