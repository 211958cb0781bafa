use bifree_core::bnc::Side;
use bifree_core::cbp::{convolve, Distribution};
use bifree_core::cumulants::{
    kappa_from_moments, moments_from_kappa, reorder_by_s_chi, Alphabet, CumulantTable, MomentFunctional, Word,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Alphabet of `k` variables; `mask` bit `i` set makes variable `i` a right variable.
fn alphabet(k: usize, mask: u8) -> Alphabet {
    let left: Vec<String> = (0..k).filter(|i| mask >> i & 1 == 0).map(|i| format!("x{i}")).collect();
    let right: Vec<String> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| format!("y{i}")).collect();
    Alphabet::new(left, right).unwrap()
}

fn table_strategy() -> impl Strategy<Value = MomentFunctional> {
    (1usize..=3, 1usize..=6, any::<u8>(), any::<u64>()).prop_map(|(k, cap, mask, seed)| {
        let mut state = ChaCha8Rng::seed_from_u64(seed);
        MomentFunctional::from_fn(alphabet(k, mask), cap, |_| uniform(&mut state)).unwrap()
    })
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-1.0..1.0)
}

/// Free cumulants through the first-block recursion
/// `phi(w) = sum_{V containing 1} kappa(w_V) prod_{gaps} phi(w_gap)`,
/// solved for the `V = {1..n}` term. No partition enumeration involved.
fn free_cumulant_by_recursion(phi: &MomentFunctional, word: &[usize], memo: &mut std::collections::HashMap<Vec<usize>, f64>) -> f64 {
    if let Some(&v) = memo.get(word) {
        return v;
    }
    let n = word.len();
    let mut rest = 0.0;
    // Subsets V containing position 0, other than the full set.
    for bits in 0u32..(1 << (n - 1)) {
        if bits == (1 << (n - 1)) - 1 {
            continue;
        }
        let mut positions = vec![0];
        positions.extend((1..n).filter(|i| bits >> (i - 1) & 1 == 1));
        let sub: Vec<usize> = positions.iter().map(|&p| word[p]).collect();
        let mut term = free_cumulant_by_recursion(phi, &sub, memo);
        let mut bounds = positions.clone();
        bounds.push(n);
        for pair in bounds.windows(2) {
            let gap = &word[pair[0] + 1..pair[1]];
            if !gap.is_empty() {
                term *= phi.value(gap).unwrap();
            }
        }
        rest += term;
    }
    let value = phi.value(word).unwrap() - rest;
    memo.insert(word.to_vec(), value);
    value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn moment_cumulant_round_trip(phi in table_strategy()) {
        let back = moments_from_kappa(&kappa_from_moments(&phi).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&phi).unwrap() < 1e-12);
    }

    #[test]
    fn cumulant_moment_round_trip(phi in table_strategy()) {
        // Same random numbers read as a cumulant table.
        let kappa = CumulantTable::from_fn(phi.alphabet().clone(), phi.degree_cap(), |w| phi.get(w).unwrap()).unwrap();
        let back = kappa_from_moments(&moments_from_kappa(&kappa).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&kappa).unwrap() < 1e-12);
    }

    #[test]
    fn single_face_matches_first_block_recursion(k in 1usize..=3, cap in 1usize..=6, seed in any::<u64>()) {
        let mut state = ChaCha8Rng::seed_from_u64(seed);
        let phi = MomentFunctional::from_fn(alphabet(k, 0), cap, |_| uniform(&mut state)).unwrap();
        let kappa = kappa_from_moments(&phi).unwrap();
        let mut memo = Default::default();
        for (word, value) in kappa.entries() {
            let oracle = free_cumulant_by_recursion(&phi, word.letters(), &mut memo);
            prop_assert!((value - oracle).abs() < 1e-12, "{} vs {}", value, oracle);
        }
    }

    #[test]
    fn cumulant_addition_is_convolution(a in table_strategy(), seed in any::<u64>()) {
        let mut state = ChaCha8Rng::seed_from_u64(seed);
        let b = MomentFunctional::from_fn(a.alphabet().clone(), a.degree_cap(), |_| uniform(&mut state)).unwrap();
        let ka = kappa_from_moments(&a).unwrap();
        let kb = kappa_from_moments(&b).unwrap();
        let direct = moments_from_kappa(&ka.add(&kb).unwrap()).unwrap();
        let conv = convolve(&Distribution::from_moments(a), &Distribution::from_moments(b)).unwrap();
        prop_assert!(conv.moments().max_abs_diff(&direct).unwrap() < 1e-12);
    }
}

/// Moments of a commuting family given by joint atoms: `atoms[t]` holds one
/// value per variable and `weights[t]` its probability.
fn atomic_law(ab: Alphabet, cap: usize, atoms: &[Vec<f64>], weights: &[f64]) -> MomentFunctional {
    MomentFunctional::from_fn(ab, cap, |w| {
        atoms
            .iter()
            .zip(weights)
            .map(|(atom, p)| p * w.letters().iter().map(|&v| atom[v]).product::<f64>())
            .sum()
    })
    .unwrap()
}

#[test]
fn reordering_agrees_on_commuting_families() {
    let mut state = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..6 {
        let ab = alphabet(2 + trial % 2, 0b110 ^ (trial as u8 & 1));
        let atoms: Vec<Vec<f64>> = (0..3).map(|_| (0..ab.len()).map(|_| uniform(&mut state)).collect()).collect();
        let raw: Vec<f64> = (0..3).map(|_| uniform(&mut state).abs() + 0.1).collect();
        let total: f64 = raw.iter().sum();
        let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
        let phi = atomic_law(ab, 5, &atoms, &weights);
        let kappa = kappa_from_moments(&phi).unwrap();
        for (word, value) in kappa.entries() {
            let reordered = reorder_by_s_chi(&phi, &word).unwrap();
            assert!((value - reordered).abs() < 1e-12, "{word}: {value} vs {reordered}");
        }
    }
}

#[test]
fn reordering_examples() {
    let ab = Alphabet::new(["a"], ["b"]).unwrap();
    let phi = atomic_law(ab.clone(), 3, &[vec![1.0, 2.0], vec![-0.5, 0.5]], &[0.25, 0.75]);
    let kappa = kappa_from_moments(&phi).unwrap();
    for letters in [vec![0], vec![0, 1], vec![1, 0], vec![0, 1, 0], vec![1, 0, 1]] {
        let w = Word(letters);
        assert!((kappa.get(&w).unwrap() - reorder_by_s_chi(&phi, &w).unwrap()).abs() < 1e-13);
    }
    let w = ab.parse_word(&[("a", Side::Left), ("b", Side::Right)]).unwrap();
    let cov = phi.get(&w).unwrap() - phi.value(&[0]).unwrap() * phi.value(&[1]).unwrap();
    assert!((kappa.get(&w).unwrap() - cov).abs() < 1e-14);
}
