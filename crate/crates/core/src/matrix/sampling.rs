use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex<f64>>;

/// Self-adjoint Gaussian matrix with `E X_ii^2 = 1/n` and
/// `E (Re X_ij)^2 = E (Im X_ij)^2 = 1/(2n)` off the diagonal. The upper
/// triangle is drawn row by row and mirrored.
pub fn sample_gue<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let diag_sd = (1.0 / n as f64).sqrt();
    let off_sd = (0.5 / n as f64).sqrt();
    let mut x = CMatrix::zeros(n, n);
    for i in 0..n {
        let d: f64 = rng.sample(StandardNormal);
        x[(i, i)] = Complex::new(diag_sd * d, 0.0);
        for j in i + 1..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = Complex::new(off_sd * re, off_sd * im);
            x[(i, j)] = z;
            x[(j, i)] = z.conj();
        }
    }
    x
}

/// Haar unitary: QR of a complex Ginibre matrix, with the columns of `Q`
/// rotated so that `R` has a positive diagonal.
pub fn sample_haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let sd = std::f64::consts::FRAC_1_SQRT_2;
    let mut g = CMatrix::zeros(n, n);
    // Column-major fill keeps the draw order tied to storage order.
    for z in g.iter_mut() {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *z = Complex::new(sd * re, sd * im);
    }
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        if norm > 0.0 {
            let phase = d / norm;
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Complex product through four real products, which use the blocked real
/// kernel.
pub fn mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, Complex::new)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
