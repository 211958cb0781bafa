use std::collections::HashMap;

use nalgebra::Complex;
use rand::Rng;

use super::ensemble::trace;
use super::sampling::{mul, CMatrix};
use crate::bnc::Side;
use crate::error::{Error, Result};

/// Word in left and right multiplication operators; `(i, side)` refers to
/// matrix `i` of the family it is evaluated on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiMatrixWord {
    pub letters: Vec<(usize, Side)>,
}

impl BiMatrixWord {
    pub fn new(letters: Vec<(usize, Side)>) -> Self {
        BiMatrixWord { letters }
    }

    /// Matrices of the left letters in word order.
    pub fn left_sequence(&self) -> Vec<usize> {
        self.letters.iter().filter(|l| l.1 == Side::Left).map(|l| l.0).collect()
    }

    /// Matrices of the right letters in reverse word order, the order in
    /// which they end up multiplied.
    pub fn right_sequence(&self) -> Vec<usize> {
        self.letters.iter().rev().filter(|l| l.1 == Side::Right).map(|l| l.0).collect()
    }
}

fn check_family(matrices: &[CMatrix], word: &BiMatrixWord) -> Result<usize> {
    let n = matrices.first().map_or(0, |m| m.nrows());
    if matrices.iter().any(|m| m.nrows() != n || m.ncols() != n) {
        return Err(Error::Shape("matrices in a family must share one square size".into()));
    }
    if let Some(&(i, _)) = word.letters.iter().find(|l| l.0 >= matrices.len()) {
        return Err(Error::Shape(format!("letter refers to matrix {i} of {}", matrices.len())));
    }
    Ok(n)
}

/// `tr(A B)` without forming the product.
fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex<f64> {
    let n = a.nrows();
    let mut acc = Complex::new(0.0, 0.0);
    for j in 0..n {
        for i in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc / n as f64
}

/// Normalized trace of the word applied to the identity: left letters
/// multiply on the left in word order, right letters on the right in
/// reverse order, giving `tr(A_1 .. A_p B_q .. B_1)`.
pub fn evaluate_bimatrix_word(matrices: &[CMatrix], word: &BiMatrixWord) -> Result<Complex<f64>> {
    check_family(matrices, word)?;
    Ok(WordEvaluator::new(matrices).evaluate(word))
}

/// Applies the letters one at a time, last letter first, to the identity:
/// `L(A) eta = A eta`, `R(B) eta = eta B`.
pub fn apply_sequentially(matrices: &[CMatrix], word: &BiMatrixWord) -> Result<Complex<f64>> {
    let n = check_family(matrices, word)?;
    let mut eta = CMatrix::identity(n, n);
    for &(i, side) in word.letters.iter().rev() {
        eta = match side {
            Side::Left => mul(&matrices[i], &eta),
            Side::Right => mul(&eta, &matrices[i]),
        };
    }
    Ok(trace(&eta))
}

/// Evaluates many words on one family, memoizing ordered products.
pub struct WordEvaluator<'a> {
    matrices: &'a [CMatrix],
    products: HashMap<Vec<usize>, CMatrix>,
}

impl<'a> WordEvaluator<'a> {
    pub fn new(matrices: &'a [CMatrix]) -> Self {
        WordEvaluator {
            matrices,
            products: HashMap::new(),
        }
    }

    fn product(&mut self, seq: &[usize]) -> &CMatrix {
        if !self.products.contains_key(seq) {
            let value = match seq {
                [single] => self.matrices[*single].clone(),
                [head @ .., last] => {
                    let matrices = self.matrices;
                    mul(self.product(head), &matrices[*last])
                }
                [] => unreachable!("empty products are handled by the caller"),
            };
            self.products.insert(seq.to_vec(), value);
        }
        &self.products[seq]
    }

    /// Same contract as [`evaluate_bimatrix_word`]; the word must refer to
    /// matrices of this family.
    pub fn evaluate(&mut self, word: &BiMatrixWord) -> Complex<f64> {
        let left = word.left_sequence();
        let right = word.right_sequence();
        match (left.is_empty(), right.is_empty()) {
            (true, true) => Complex::new(1.0, 0.0),
            (false, true) => trace(self.product(&left)),
            (true, false) => trace(self.product(&right)),
            (false, false) => {
                self.product(&left);
                self.product(&right);
                trace_of_product(&self.products[&left], &self.products[&right])
            }
        }
    }
}

/// Largest `|value(w) - value(w')|` over the given words, where `w'` swaps
/// one adjacent left/right pair of `w`. Both values are computed by
/// [`apply_sequentially`].
pub fn commutation_check(matrices: &[CMatrix], words: &[BiMatrixWord]) -> Result<f64> {
    let mut worst = 0.0f64;
    for word in words {
        let base = apply_sequentially(matrices, word)?;
        for k in 0..word.letters.len().saturating_sub(1) {
            if word.letters[k].1 == word.letters[k + 1].1 {
                continue;
            }
            let mut swapped = word.clone();
            swapped.letters.swap(k, k + 1);
            worst = worst.max((apply_sequentially(matrices, &swapped)? - base).norm());
        }
    }
    Ok(worst)
}

/// `count` random words of length `1..=max_len`; matrix `i` carries side `sides[i]`.
pub fn random_words<R: Rng + ?Sized>(rng: &mut R, sides: &[Side], count: usize, max_len: usize) -> Vec<BiMatrixWord> {
    (0..count)
        .map(|_| {
            let len = rng.random_range(1..=max_len);
            BiMatrixWord::new(
                (0..len)
                    .map(|_| {
                        let i = rng.random_range(0..sides.len());
                        (i, sides[i])
                    })
                    .collect(),
            )
        })
        .collect()
}
