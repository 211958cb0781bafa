//! Compound bi-free Poisson laws and the operations built on cumulant tables:
//! bi-free additive convolution, convolution semigroups, compression by a
//! free projection, the combinatorial Poisson limit and Poisson approximation.

mod compression;
mod positivity;

pub use compression::{compress, compression_oracle};
pub use positivity::{psd_check, PsdReport, PSD_TOLERANCE};

use crate::cumulants::{kappa_from_moments, moments_from_kappa, CumulantTable, MomentFunctional};
use crate::error::{Error, Result};

/// Rate `lambda` and jump law `mu_a` of a compound bi-free Poisson law.
#[derive(Debug, Clone, PartialEq)]
pub struct CbpSpec {
    lambda: f64,
    jump_law: MomentFunctional,
}

impl CbpSpec {
    pub fn new(lambda: f64, jump_law: MomentFunctional) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
        }
        Ok(CbpSpec { lambda, jump_law })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn jump_law(&self) -> &MomentFunctional {
        &self.jump_law
    }
}

/// A distribution given by its moments, with the matching cumulants cached
/// when they are known.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    moments: MomentFunctional,
    cumulants: Option<CumulantTable>,
}

impl Distribution {
    pub fn from_moments(moments: MomentFunctional) -> Self {
        Distribution {
            moments,
            cumulants: None,
        }
    }

    pub fn from_cumulants(cumulants: CumulantTable) -> Result<Self> {
        let moments = moments_from_kappa(&cumulants)?;
        Ok(Distribution {
            moments,
            cumulants: Some(cumulants),
        })
    }

    pub fn moments(&self) -> &MomentFunctional {
        &self.moments
    }

    pub fn cached_cumulants(&self) -> Option<&CumulantTable> {
        self.cumulants.as_ref()
    }

    /// Cached cumulants, or a fresh Möbius inversion of the moments.
    pub fn cumulants(&self) -> Result<CumulantTable> {
        match &self.cumulants {
            Some(k) => Ok(k.clone()),
            None => kappa_from_moments(&self.moments),
        }
    }

    pub fn with_cumulants(mut self) -> Result<Self> {
        if self.cumulants.is_none() {
            self.cumulants = Some(kappa_from_moments(&self.moments)?);
        }
        Ok(self)
    }
}

/// `kappa_chi(z_w) = lambda * phi(a_w)` on every nonempty word.
pub fn cbp_cumulants(spec: &CbpSpec) -> CumulantTable {
    let jump = spec.jump_law.table();
    CumulantTable::from_fn(jump.alphabet().clone(), jump.degree_cap(), |w| {
        spec.lambda * jump.value(w.letters()).expect("word within cap")
    })
    .expect("same shape as an existing table")
}

pub fn cbp_moments(spec: &CbpSpec) -> Result<Distribution> {
    Distribution::from_cumulants(cbp_cumulants(spec))
}

/// Bi-free additive convolution: cumulant tables add.
pub fn convolve(mu: &Distribution, nu: &Distribution) -> Result<Distribution> {
    Distribution::from_cumulants(mu.cumulants()?.add(&nu.cumulants()?)?)
}

/// `nu_t`, the element of the convolution semigroup through `nu` at time `t`.
pub fn semigroup_element(nu: &Distribution, t: f64) -> Result<Distribution> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter(format!("semigroup time must be >= 0, got {t}")));
    }
    Distribution::from_cumulants(nu.cumulants()?.scaled(t))
}

/// Law of `S_N`, the sum of `N` bi-free copies of a family with moments
/// `(lambda / N) * phi_a` on nonempty words.
pub fn limit_theorem_moments(spec: &CbpSpec, n: usize) -> Result<Distribution> {
    let min = spec.lambda.ceil() as usize;
    if n < min.max(1) {
        return Err(Error::InvalidParameter(format!(
            "N = {n} is below ceil(lambda) = {min}"
        )));
    }
    let summand = spec.jump_law.scaled(spec.lambda / n as f64);
    let kappa = kappa_from_moments(&summand)?.scaled(n as f64);
    Distribution::from_cumulants(kappa)
}

/// Compound bi-free Poisson law with rate `n` and jump law `nu_{1/n}`.
pub fn poisson_approximation(nu: &Distribution, n: usize) -> Result<Distribution> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let jump = semigroup_element(nu, 1.0 / n as f64)?;
    let spec = CbpSpec::new(n as f64, jump.moments)?;
    cbp_moments(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cumulants::{Alphabet, Word};

    fn point_masses(alpha: f64, beta: f64, cap: usize) -> MomentFunctional {
        let ab = Alphabet::new(["a"], ["b"]).unwrap();
        MomentFunctional::from_fn(ab, cap, |w| {
            w.letters()
                .iter()
                .map(|&v| if v == 0 { alpha } else { beta })
                .product()
        })
        .unwrap()
    }

    #[test]
    fn point_mass_cumulants_and_moments() {
        let spec = CbpSpec::new(0.7, point_masses(2.0, -0.5, 3)).unwrap();
        let k = cbp_cumulants(&spec);
        assert!((k.value(&[0, 1, 0]).unwrap() - 0.7 * 4.0 * -0.5).abs() < 1e-15);
        let m = cbp_moments(&spec).unwrap();
        let lr = m.moments().value(&[0, 1]).unwrap();
        let want = 0.7 * -1.0 + 0.49 * -1.0;
        assert!((lr - want).abs() < 1e-14);
        assert!((m.moments().value(&[1]).unwrap() - 0.7 * -0.5).abs() < 1e-15);
    }

    #[test]
    fn free_poisson_second_moment() {
        let a = Alphabet::single_face(["a"]).unwrap();
        let jump = MomentFunctional::from_fn(a, 2, |_| 1.0).unwrap();
        let m = cbp_moments(&CbpSpec::new(3.0, jump).unwrap()).unwrap();
        assert!((m.moments().value(&[0, 0]).unwrap() - 12.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_parameters() {
        let jump = point_masses(1.0, 1.0, 2);
        assert!(CbpSpec::new(0.0, jump.clone()).is_err());
        assert!(CbpSpec::new(f64::NAN, jump.clone()).is_err());
        let spec = CbpSpec::new(2.5, jump).unwrap();
        assert!(limit_theorem_moments(&spec, 2).is_err());
        assert!(limit_theorem_moments(&spec, 3).is_ok());
        let d = cbp_moments(&spec).unwrap();
        assert!(semigroup_element(&d, -1.0).is_err());
        assert!(poisson_approximation(&d, 0).is_err());
    }

    #[test]
    fn semigroup_endpoints() {
        let d = cbp_moments(&CbpSpec::new(1.3, point_masses(1.0, 2.0, 3)).unwrap()).unwrap();
        let zero = semigroup_element(&d, 0.0).unwrap();
        assert!(zero.moments().entries().all(|(_, v)| v == 0.0));
        let one = semigroup_element(&d, 1.0).unwrap();
        assert!(one.moments().max_abs_diff(d.moments()).unwrap() < 1e-12);
    }

    #[test]
    fn first_moments_of_limit_are_exact() {
        let spec = CbpSpec::new(1.5, point_masses(0.5, 3.0, 2)).unwrap();
        for n in [2, 5, 40] {
            let d = limit_theorem_moments(&spec, n).unwrap();
            assert!((d.moments().value(&[0]).unwrap() - 0.75).abs() < 1e-14);
            assert!((d.moments().value(&[1]).unwrap() - 4.5).abs() < 1e-14);
        }
    }

    #[test]
    fn limit_second_cumulant_has_explicit_error() {
        let jump = point_masses(0.5, 3.0, 2);
        let spec = CbpSpec::new(1.5, jump.clone()).unwrap();
        let n = 7.0;
        let k = limit_theorem_moments(&spec, 7).unwrap().cumulants().unwrap();
        let w = Word(vec![0, 1]);
        let want = 1.5 * jump.get(&w).unwrap() - 1.5 * 1.5 / n * 0.5 * 3.0;
        assert!((k.get(&w).unwrap() - want).abs() < 1e-13);
    }
}
