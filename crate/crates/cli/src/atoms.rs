//! Joint atom lists written as `x1,x2,...:weight;...`.

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct AtomList {
    pub values: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl AtomList {
    pub fn arity(&self) -> usize {
        self.values[0].len()
    }
}

fn number(s: &str) -> CliResult<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Atoms(format!("`{}` is not a number", s.trim())))
}

pub fn parse_atoms(text: &str) -> CliResult<AtomList> {
    let mut values = Vec::new();
    let mut weights = Vec::new();
    for atom in text.split(';').map(str::trim).filter(|a| !a.is_empty()) {
        let (coords, weight) = atom
            .split_once(':')
            .ok_or_else(|| CliError::Atoms(format!("atom `{atom}` has no `:weight`")))?;
        let coords = coords.split(',').map(number).collect::<CliResult<Vec<f64>>>()?;
        if let Some(arity) = values.first().map(Vec::len) {
            if arity != coords.len() {
                return Err(CliError::Atoms(format!(
                    "atom `{atom}` has {} coordinates, expected {arity}",
                    coords.len()
                )));
            }
        }
        values.push(coords);
        weights.push(number(weight)?);
    }
    if values.is_empty() {
        return Err(CliError::Atoms("no atoms given".into()));
    }
    Ok(AtomList { values, weights })
}
