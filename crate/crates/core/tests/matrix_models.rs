use bifree_core::bnc::{catalan, Side};
use bifree_core::cumulants::Alphabet;
use bifree_core::matrix::{
    build_diagonal_model, estimate_empirical_cumulants, evaluate_bimatrix_word, sample_gue, sample_haar_unitary,
    stream_rng, BiMatrixWord, EnsembleReport, EnsembleSpec, JointAtoms, Marginal,
};
use bifree_core::stats::{mean, standard_error};
use nalgebra::Complex;

fn normalized_trace(m: &bifree_core::matrix::CMatrix) -> Complex<f64> {
    m.diagonal().iter().sum::<Complex<f64>>() / m.nrows() as f64
}

#[test]
fn gue_entry_variance() {
    let draws: Vec<f64> = (0..10_000)
        .map(|t| sample_gue(4, &mut stream_rng(1, 4, t, 0))[(0, 0)].re.powi(2))
        .collect();
    let (m, se) = (mean(&draws), standard_error(&draws));
    assert!((m - 0.25).abs() < 3.0 * se, "{m} +- {se}");
    let off: Vec<f64> = (0..10_000)
        .map(|t| sample_gue(4, &mut stream_rng(2, 4, t, 0))[(0, 1)].im.powi(2))
        .collect();
    assert!((mean(&off) - 0.125).abs() < 3.0 * standard_error(&off));
}

#[test]
fn gue_second_moment_concentrates() {
    let x = sample_gue(256, &mut stream_rng(3, 256, 0, 0));
    let m2 = normalized_trace(&(&x * &x)).re;
    assert!((m2 - 1.0).abs() < 0.02, "{m2}");
}

#[test]
fn gue_even_moments_are_catalan() {
    let n = 128;
    let mut samples = vec![Vec::new(); 3];
    for t in 0..60 {
        let x = sample_gue(n, &mut stream_rng(4, n, t, 0));
        let x2 = &x * &x;
        let x4 = &x2 * &x2;
        let x6 = &x4 * &x2;
        for (k, m) in [x2, x4, x6].iter().enumerate() {
            samples[k].push(normalized_trace(m).re);
        }
    }
    for (k, s) in samples.iter().enumerate() {
        let want = catalan(k + 1) as f64;
        let (m, se) = (mean(s), standard_error(s));
        assert!((m - want).abs() < 3.0 * se, "moment {}: {m} +- {se}", 2 * (k + 1));
    }
}

#[test]
fn haar_trace_moments() {
    let n = 8;
    let (mut re, mut sq) = (Vec::new(), Vec::new());
    for t in 0..10_000 {
        let u = sample_haar_unitary(n, &mut stream_rng(5, n, t, 0));
        let tr: Complex<f64> = u.diagonal().iter().sum();
        re.push(tr.re);
        sq.push(tr.norm_sqr());
    }
    assert!(mean(&re).abs() < 3.0 * standard_error(&re));
    assert!((mean(&sq) - 1.0).abs() < 3.0 * standard_error(&sq), "{}", mean(&sq));
}

#[test]
fn tensor_diagonals_factor() {
    let m1 = Marginal::new(vec![-1.0, 1.0, 3.0], vec![0.2, 0.5, 0.3]).unwrap();
    let m2 = Marginal::new(vec![0.0, 2.0], vec![0.5, 0.5]).unwrap();
    let b = build_diagonal_model(&[m1.clone(), m2], 10).unwrap();
    let tr = |f: &dyn Fn(usize) -> f64| (0..b[0].len()).map(f).sum::<f64>() / b[0].len() as f64;
    let joint = tr(&|j| b[0][j] * b[0][j] * b[1][j]);
    let split = tr(&|j| b[0][j] * b[0][j]) * tr(&|j| b[1][j]);
    assert!((joint - split).abs() < 1e-12);

    // Quantile discretization converges to the marginal moments.
    let err = |n: usize| {
        let d = m1.quantile_diagonal(n);
        (d.iter().map(|x| x.powi(3)).sum::<f64>() / n as f64 - m1.moment(3)).abs()
    };
    assert!(err(1000) < err(7));
    assert!(err(1000) < 0.02);
}

fn single_variable(values: &[f64], weights: &[f64]) -> JointAtoms {
    JointAtoms::new(
        Alphabet::single_face(["a"]).unwrap(),
        values.iter().map(|&v| vec![v]).collect(),
        weights.to_vec(),
    )
    .unwrap()
}

fn pair(atoms: &[(f64, f64)], weights: &[f64]) -> JointAtoms {
    JointAtoms::new(
        Alphabet::new(["a"], ["b"]).unwrap(),
        atoms.iter().map(|&(x, y)| vec![x, y]).collect(),
        weights.to_vec(),
    )
    .unwrap()
}

fn spec(lambda: f64, law: JointAtoms, sizes: Vec<usize>, trials: usize, max_word_len: usize) -> EnsembleSpec {
    EnsembleSpec {
        lambda,
        law,
        sizes,
        trials,
        seed: 20261015,
        max_word_len,
    }
}

fn row<'a>(report: &'a EnsembleReport, size: usize, word: &str) -> &'a bifree_core::matrix::CumulantRow {
    report.sizes[size].rows.iter().find(|r| r.word == word).unwrap()
}

#[test]
fn projection_jump_law_second_cumulant() {
    let s = spec(1.0, single_variable(&[0.0, 1.0], &[0.5, 0.5]), vec![128], 200, 2);
    let report = estimate_empirical_cumulants(&s, 0).unwrap();
    let r = row(&report, 0, "a:l a:l");
    assert_eq!(r.target, 0.5);
    assert!(r.abs_err < 3.0 * r.std_err, "{r:?}");
    assert!(report.sizes[0].max_sample_imag < 1e-9);
}

#[test]
fn point_mass_bimatrix_cumulants() {
    let s = spec(1.0, pair(&[(1.0, 1.0)], &[1.0]), vec![128], 200, 2);
    let report = estimate_empirical_cumulants(&s, 0).unwrap();
    let size = &report.sizes[0];
    let r = row(&report, 0, "a:l b:r");
    assert_eq!(r.target, 1.0);
    assert!(r.abs_err < 3.0 * r.std_err.max(1e-12), "{r:?}");
    let lr = size.moments.value(&[0, 1]).unwrap();
    assert!((lr - 2.0).abs() < 0.05, "{lr}");
    assert!(size.commutation_deviation < 1e-10);
    assert!(size.max_sample_imag < 1e-9);
}

#[test]
fn bimatrix_word_reverses_right_letters() {
    let x = sample_gue(6, &mut stream_rng(9, 6, 0, 0));
    let y = sample_gue(6, &mut stream_rng(9, 6, 0, 1));
    let w = BiMatrixWord::new(vec![(0, Side::Right), (1, Side::Right)]);
    let v = evaluate_bimatrix_word(&[x.clone(), y.clone()], &w).unwrap();
    assert!((v - normalized_trace(&(&y * &x))).norm() < 1e-12);
}

#[test]
fn compressed_gaussian_reproduces_finite_traces() {
    // kappa_m(X B X, ..) matches tr(B^m) of the padded diagonal, including
    // the quantile discretization error at this size.
    let s = spec(0.5, single_variable(&[2.0, -1.0], &[0.3, 0.7]), vec![50], 200, 3);
    let report = estimate_empirical_cumulants(&s, 0).unwrap();
    for r in &report.sizes[0].rows {
        assert!((r.empirical - r.finite_target).abs() < 3.0 * r.std_err + 1e-3, "{r:?}");
    }
}

#[test]
fn reruns_are_identical_for_any_worker_count() {
    let s = spec(2.5, pair(&[(1.0, 1.0), (0.0, -1.0)], &[0.5, 0.5]), vec![8, 16], 6, 3);
    let a = estimate_empirical_cumulants(&s, 1).unwrap();
    let b = estimate_empirical_cumulants(&s, 3).unwrap();
    assert_eq!(a, b);
    let mut other = s.clone();
    other.seed += 1;
    assert_ne!(estimate_empirical_cumulants(&other, 1).unwrap(), a);
}

#[test]
fn single_face_errors_shrink_with_size() {
    // Per cumulant order, the worst error over words at the larger size stays
    // within one standard error (taken at the smaller size) of the worst
    // error at the smaller size.
    let law = JointAtoms::new(
        Alphabet::single_face(["a", "b"]).unwrap(),
        vec![vec![1.0, 1.0], vec![0.0, -1.0]],
        vec![0.5, 0.5],
    )
    .unwrap();
    for lambda in [0.5, 1.0, 2.5] {
        let report = estimate_empirical_cumulants(&spec(lambda, law.clone(), vec![32, 64, 128], 60, 4), 0).unwrap();
        for m in 1..=4 {
            let worst = |s: usize| {
                let rows = report.sizes[s].rows.iter().filter(|r| r.word.split(' ').count() == m);
                rows.fold((0.0f64, 0.0f64), |(e, se), r| (e.max(r.abs_err), se.max(r.std_err)))
            };
            for s in 1..3 {
                let (prev, se) = worst(s - 1);
                let (cur, _) = worst(s);
                assert!(cur <= prev + se, "lambda {lambda}, m {m}, size index {s}: {cur} > {prev} + {se}");
            }
        }
    }
}

#[test]
fn invalid_specs_rejected() {
    let law = single_variable(&[1.0], &[1.0]);
    assert!(estimate_empirical_cumulants(&spec(0.0, law.clone(), vec![8], 2, 2), 0).is_err());
    assert!(estimate_empirical_cumulants(&spec(1.0, law.clone(), vec![16, 8], 2, 2), 0).is_err());
    assert!(estimate_empirical_cumulants(&spec(1.0, law.clone(), vec![8], 0, 2), 0).is_err());
    assert!(estimate_empirical_cumulants(&spec(0.1, law, vec![4], 2, 2), 0).is_err());
}
