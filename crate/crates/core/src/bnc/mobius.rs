use super::partition::SetPartition;
use crate::error::{Error, Result};

/// `binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> u128 {
    let n = n as u128;
    let mut binom: u128 = 1;
    // binom(2n, k) built up incrementally; each step stays an integer.
    for k in 0..n {
        binom = binom * (2 * n - k) / (k + 1);
    }
    binom / (n + 1)
}

/// Kreweras complement of a non-crossing partition, computed as the cycles
/// of `P^{-1} o gamma` where `P` cycles each block in increasing order and
/// `gamma = (1 2 ... n)`.
pub fn kreweras_complement(pi: &SetPartition) -> SetPartition {
    let n = pi.n();
    let mut p_inv = vec![0usize; n + 1];
    for block in pi.blocks() {
        let k = block.len();
        for i in 0..k {
            p_inv[block[(i + 1) % k]] = block[i];
        }
    }
    let mut visited = vec![false; n + 1];
    let mut blocks = Vec::new();
    for start in 1..=n {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !visited[x] {
            visited[x] = true;
            cycle.push(x);
            x = p_inv[x % n + 1];
        }
        blocks.push(cycle);
    }
    SetPartition::from_blocks_unchecked(n, blocks)
}

fn signed_catalan(block_size: usize) -> i64 {
    let c = catalan(block_size - 1) as i64;
    if block_size % 2 == 1 {
        c
    } else {
        -c
    }
}

/// `mu(pi, 1_n)` on `NC(n)`: product over blocks `V` of the Kreweras
/// complement of `(-1)^{|V|-1} Catalan(|V|-1)`. `pi` must be non-crossing.
pub fn mobius_to_top(pi: &SetPartition) -> i64 {
    kreweras_complement(pi)
        .blocks()
        .iter()
        .map(|b| signed_catalan(b.len()))
        .product()
}

/// Möbius function of the interval `[pi, sigma]` in `NC(n)`; zero when
/// `pi` does not refine `sigma`.
///
/// The interval factors over the blocks `W` of `sigma` as
/// `prod_W [pi|_W, 1_W]`, each factor an interval of a smaller `NC` lattice.
pub fn mobius_nc(pi: &SetPartition, sigma: &SetPartition) -> Result<i64> {
    if pi.n() != sigma.n() {
        return Err(Error::Shape(format!(
            "partitions on {} and {} points",
            pi.n(),
            sigma.n()
        )));
    }
    for p in [pi, sigma] {
        if !p.is_noncrossing() {
            return Err(Error::NotNonCrossing(p.to_string()));
        }
    }
    if !pi.refines(sigma) {
        return Ok(0);
    }
    Ok(sigma
        .blocks()
        .iter()
        .map(|w| mobius_to_top(&pi.restrict(w)))
        .product())
}
