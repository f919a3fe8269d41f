use serde::{Deserialize, Serialize};

use super::{CharacterMap, CoverError};

/// On-disk form `{"p": 5, "m": 2, "weights": [[1,1],[1,0],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterFile {
    pub p: u32,
    pub m: usize,
    pub weights: Vec<Vec<i64>>,
}

impl CharacterFile {
    pub fn from_json(text: &str) -> Result<Self, CoverError> {
        serde_json::from_str(text).map_err(|e| CoverError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain integers always serialize")
    }

    pub fn to_character(&self) -> Result<CharacterMap, CoverError> {
        let c = CharacterMap::new(self.p, self.weights.clone())?;
        if c.m() != self.m {
            return Err(CoverError::Shape(format!(
                "declared m = {} but weights have length {}",
                self.m,
                c.m()
            )));
        }
        Ok(c)
    }

    pub fn from_character(c: &CharacterMap) -> Self {
        CharacterFile {
            p: c.p(),
            m: c.m(),
            weights: c
                .weights()
                .iter()
                .map(|w| w.iter().map(|&x| i64::from(x)).collect())
                .collect(),
        }
    }
}
