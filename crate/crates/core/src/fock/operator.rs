use std::sync::Arc;

use super::basis::{FockBasis, FockVector};
use crate::bnc::Side;
use crate::error::{Error, Result};

/// Creation or annihilation of generator `gen` (one-based) on one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Create(Side, usize),
    Annihilate(Side, usize),
}

impl Elementary {
    /// Image of a single basis position, `None` when it is annihilated or
    /// pushed past the truncation depth.
    #[inline]
    fn apply(self, basis: &FockBasis, index: u64) -> Option<u64> {
        let (len, value) = basis.split(index);
        let d = basis.dim() as u64;
        match self {
            Elementary::Create(side, g) => {
                if len == basis.depth() {
                    return None;
                }
                let g = (g - 1) as u64;
                let value = match side {
                    Side::Left => g * basis.power(len) + value,
                    Side::Right => value * d + g,
                };
                Some(basis.join(len + 1, value))
            }
            Elementary::Annihilate(side, g) => {
                if len == 0 {
                    return None;
                }
                let g = (g - 1) as u64;
                let (letter, rest) = match side {
                    Side::Left => {
                        let p = basis.power(len - 1);
                        (value / p, value % p)
                    }
                    Side::Right => (value % d, value / d),
                };
                (letter == g).then(|| basis.join(len - 1, rest))
            }
        }
    }

    fn adjoint(self) -> Elementary {
        match self {
            Elementary::Create(s, g) => Elementary::Annihilate(s, g),
            Elementary::Annihilate(s, g) => Elementary::Create(s, g),
        }
    }
}

/// A linear combination of products of creation and annihilation operators,
/// applied lazily. Each monomial is written left to right as an operator
/// product, so its last factor acts first.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    basis: Arc<FockBasis>,
    terms: Vec<(f64, Vec<Elementary>)>,
}

impl SparseOperator {
    pub fn zero(basis: Arc<FockBasis>) -> Self {
        SparseOperator { basis, terms: Vec::new() }
    }

    pub fn identity(basis: Arc<FockBasis>) -> Self {
        SparseOperator::monomial(basis, 1.0, Vec::new())
    }

    pub fn monomial(basis: Arc<FockBasis>, coefficient: f64, factors: Vec<Elementary>) -> Self {
        SparseOperator {
            basis,
            terms: vec![(coefficient, factors)],
        }
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn terms(&self) -> &[(f64, Vec<Elementary>)] {
        &self.terms
    }

    fn check_same_basis(&self, other: &SparseOperator) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::Shape("operators live on different Fock bases".into()));
        }
        Ok(())
    }

    pub fn plus(mut self, other: &SparseOperator) -> Result<Self> {
        self.check_same_basis(other)?;
        self.terms.extend(other.terms.iter().cloned());
        Ok(self)
    }

    pub fn scaled(mut self, t: f64) -> Self {
        for term in &mut self.terms {
            term.0 *= t;
        }
        self
    }

    /// Operator product `self * other`.
    pub fn times(&self, other: &SparseOperator) -> Result<Self> {
        self.check_same_basis(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, fa) in &self.terms {
            for (b, fb) in &other.terms {
                terms.push((a * b, fa.iter().chain(fb).copied().collect()));
            }
        }
        Ok(SparseOperator {
            basis: self.basis.clone(),
            terms,
        })
    }

    pub fn adjoint(&self) -> Self {
        SparseOperator {
            basis: self.basis.clone(),
            terms: self
                .terms
                .iter()
                .map(|(c, f)| (*c, f.iter().rev().map(|e| e.adjoint()).collect()))
                .collect(),
        }
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (&index, &x) in &v.0 {
            'terms: for (c, factors) in &self.terms {
                let mut pos = index;
                for e in factors.iter().rev() {
                    match e.apply(&self.basis, pos) {
                        Some(p) => pos = p,
                        None => continue 'terms,
                    }
                }
                out.add(pos, c * x);
            }
        }
        out
    }
}

fn elementary(basis: &Arc<FockBasis>, e: Elementary, g: usize) -> Result<SparseOperator> {
    basis.check_generator(g)?;
    Ok(SparseOperator::monomial(basis.clone(), 1.0, vec![e]))
}

/// Left creation prepends generator `g`; right creation appends it.
/// Words already at the truncation depth are sent to zero.
pub fn creation(basis: &Arc<FockBasis>, side: Side, g: usize) -> Result<SparseOperator> {
    elementary(basis, Elementary::Create(side, g), g)
}

/// Adjoint of [`creation`]: removes a leading (left) or trailing (right)
/// letter equal to `g`, and sends every other word, and the vacuum, to zero.
pub fn annihilation(basis: &Arc<FockBasis>, side: Side, g: usize) -> Result<SparseOperator> {
    elementary(basis, Elementary::Annihilate(side, g), g)
}

/// `omega(T_1 ... T_m) = <T_1 ... T_m Omega, Omega>`.
pub fn vacuum_moment(ops: &[&SparseOperator]) -> Result<f64> {
    let mut v = FockVector::vacuum();
    if let Some(first) = ops.first() {
        for op in ops {
            first.check_same_basis(op)?;
        }
    }
    for op in ops.iter().rev() {
        v = op.apply(&v);
        if v.nnz() == 0 {
            return Ok(0.0);
        }
    }
    Ok(v.get(0))
}
