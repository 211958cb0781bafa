//! JSON form of word tables:
//! `{"schema": 1, "alphabet": {"left": [..], "right": [..]}, "degree_cap": n,
//!   "entries": [{"word": [["z1", "l"], ...], "value": x}, ...]}`.

use serde::{Deserialize, Serialize};

use super::table::{Alphabet, CumulantTable, MomentFunctional, Word};
use crate::bnc::Side;
use crate::error::{Error, Result};

pub const TABLE_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphabetJson {
    #[serde(default)]
    pub left: Vec<String>,
    #[serde(default)]
    pub right: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub word: Vec<(String, Side)>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub alphabet: AlphabetJson,
    pub degree_cap: usize,
    pub entries: Vec<EntryJson>,
    /// Free-form provenance written by producers; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

fn default_schema() -> u32 {
    TABLE_SCHEMA_VERSION
}

impl TableJson {
    pub fn parse(text: &str) -> Result<Self> {
        let table: TableJson = serde_json::from_str(text).map_err(|e| Error::TableParse(e.to_string()))?;
        if table.schema != TABLE_SCHEMA_VERSION {
            return Err(Error::TableParse(format!(
                "unsupported schema version {}",
                table.schema
            )));
        }
        Ok(table)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialization cannot fail")
    }

    fn resolve(&self) -> Result<(Alphabet, Vec<(Word, f64)>)> {
        let alphabet = Alphabet::new(self.alphabet.left.clone(), self.alphabet.right.clone())?;
        let entries = self
            .entries
            .iter()
            .map(|e| Ok((alphabet.parse_word(&e.word)?, e.value)))
            .collect::<Result<Vec<_>>>()?;
        Ok((alphabet, entries))
    }

    pub fn to_moments(&self) -> Result<MomentFunctional> {
        let (alphabet, entries) = self.resolve()?;
        MomentFunctional::from_entries(alphabet, self.degree_cap, entries)
    }

    pub fn to_cumulants(&self) -> Result<CumulantTable> {
        let (alphabet, entries) = self.resolve()?;
        CumulantTable::from_entries(alphabet, self.degree_cap, entries)
    }

    fn from_parts(alphabet: &Alphabet, degree_cap: usize, entries: impl Iterator<Item = (Word, f64)>) -> Self {
        TableJson {
            schema: TABLE_SCHEMA_VERSION,
            alphabet: AlphabetJson {
                left: alphabet.left_vars().to_vec(),
                right: alphabet.right_vars().to_vec(),
            },
            degree_cap,
            entries: entries
                .map(|(w, value)| EntryJson {
                    word: w
                        .letters()
                        .iter()
                        .map(|&v| (alphabet.name(v).to_string(), alphabet.side(v)))
                        .collect(),
                    value,
                })
                .collect(),
            meta: None,
        }
    }

    pub fn from_moments(m: &MomentFunctional) -> Self {
        TableJson::from_parts(m.alphabet(), m.degree_cap(), m.entries())
    }

    pub fn from_cumulants(k: &CumulantTable) -> Self {
        TableJson::from_parts(k.alphabet(), k.degree_cap(), k.entries())
    }
}
