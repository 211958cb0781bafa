use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::partition::SetPartition;
use crate::error::{Error, Result};

/// Face of a variable in a two-faced family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "l")]
    Left,
    #[serde(rename = "r")]
    Right,
}

impl Side {
    pub fn tag(self) -> &'static str {
        match self {
            Side::Left => "l",
            Side::Right => "r",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l" | "L" | "left" => Ok(Side::Left),
            "r" | "R" | "right" => Ok(Side::Right),
            other => Err(Error::InvalidParameter(format!("unknown side tag `{other}`"))),
        }
    }
}

/// Parses a compact side string such as `"lrlr"`.
pub fn parse_sides(s: &str) -> Result<Vec<Side>> {
    s.chars().map(|c| c.to_string().parse()).collect()
}

pub fn sides_string(sides: &[Side]) -> String {
    sides.iter().map(|s| s.tag()).collect()
}

/// A side pattern `chi` on `{1..n}` together with its reordering permutation:
/// left positions ascending, then right positions descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChiShape {
    sides: Vec<Side>,
    s_chi: Vec<usize>,
    left_count: usize,
}

impl ChiShape {
    pub fn n(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// `s_chi` as a one-based image list: `s_chi()[k - 1] = s_chi(k)`.
    pub fn s_chi(&self) -> &[usize] {
        &self.s_chi
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    /// One-based inverse permutation of `s_chi`.
    pub fn s_chi_inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.s_chi.len()];
        for (k, &image) in self.s_chi.iter().enumerate() {
            inv[image - 1] = k + 1;
        }
        inv
    }
}

/// Builds the shape of a side pattern.
pub fn s_chi_of(sides: &[Side]) -> Result<ChiShape> {
    if sides.is_empty() {
        return Err(Error::InvalidParameter("side pattern must be nonempty".into()));
    }
    let mut s_chi: Vec<usize> = (1..=sides.len()).filter(|&k| sides[k - 1] == Side::Left).collect();
    let left_count = s_chi.len();
    s_chi.extend((1..=sides.len()).rev().filter(|&k| sides[k - 1] == Side::Right));
    Ok(ChiShape {
        sides: sides.to_vec(),
        s_chi,
        left_count,
    })
}

/// A bi-non-crossing partition: `s_chi^{-1}` of it is non-crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BncPartition {
    shape: ChiShape,
    partition: SetPartition,
}

impl BncPartition {
    pub fn new(shape: ChiShape, partition: SetPartition) -> Result<Self> {
        if shape.n() != partition.n() {
            return Err(Error::Shape(format!(
                "side pattern has length {} but partition is on {} points",
                shape.n(),
                partition.n()
            )));
        }
        let pre = partition.permute(&shape.s_chi_inverse());
        if !pre.is_noncrossing() {
            return Err(Error::NotNonCrossing(format!(
                "{partition} is not bi-non-crossing for chi = {}",
                sides_string(shape.sides())
            )));
        }
        Ok(BncPartition { shape, partition })
    }

    /// `s_chi o pi` for a non-crossing `pi`.
    pub fn from_noncrossing(shape: &ChiShape, pi: &SetPartition) -> Self {
        BncPartition {
            shape: shape.clone(),
            partition: pi.permute(shape.s_chi()),
        }
    }

    pub fn shape(&self) -> &ChiShape {
        &self.shape
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    /// The non-crossing preimage `s_chi^{-1} o sigma`.
    pub fn preimage(&self) -> SetPartition {
        self.partition.permute(&self.shape.s_chi_inverse())
    }
}
