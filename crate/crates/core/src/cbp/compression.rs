use crate::bnc::nc_level;
use crate::cumulants::{kappa_from_moments, Alphabet, CumulantTable, MomentFunctional};
use crate::error::{Error, Result};

fn check_fraction(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "compression parameter must lie in (0, 1], got {lambda}"
        )));
    }
    Ok(())
}

/// Cumulants of the compressed family `p z p` in the compressed space
/// `(pAp, phi(p . p) / lambda)`: the length-`n` entry is scaled by
/// `lambda^(n - 1)`.
pub fn compress(kappa: &CumulantTable, lambda: f64) -> Result<CumulantTable> {
    check_fraction(lambda)?;
    Ok(kappa.scaled_by_length(|n| lambda.powi(n as i32 - 1)))
}

/// Free cumulants of a single projection with trace `lambda`, lengths `0..=cap`.
fn projection_cumulants(lambda: f64, cap: usize) -> Result<Vec<f64>> {
    let p = Alphabet::single_face(["p"])?;
    let moments = MomentFunctional::from_fn(p, cap, |_| lambda)?;
    let kappa = kappa_from_moments(&moments)?;
    Ok((0..=cap).map(|n| kappa.value(&vec![0; n]).unwrap()).collect())
}

/// Brute-force compression: evaluates `phi(p z_1 p z_2 p ... z_n p)` for a
/// projection `p` of trace `lambda` free from the `z`s, directly from the
/// joint free cumulants (projection cumulants on `p`-blocks, the `z`
/// cumulants on `z`-blocks, zero on mixed blocks), divides by `lambda` and
/// inverts back to cumulants. Only defined for a single face.
pub fn compression_oracle(phi_z: &MomentFunctional, lambda: f64, max_deg: usize) -> Result<CumulantTable> {
    check_fraction(lambda)?;
    let alphabet = phi_z.alphabet();
    if alphabet.right_count() > 0 {
        return Err(Error::InvalidParameter(
            "compression oracle needs an alphabet without right variables".into(),
        ));
    }
    if max_deg > phi_z.degree_cap() {
        return Err(Error::DegreeOverflow {
            len: max_deg,
            cap: phi_z.degree_cap(),
        });
    }
    let kappa_z = kappa_from_moments(&phi_z.truncated(max_deg)?)?;
    let kappa_p = projection_cumulants(lambda, 2 * max_deg + 1)?;

    // Letters of the interleaved word: `None` is p, `Some(v)` is z_v.
    let joint_moment = |z_word: &[usize]| -> Result<f64> {
        let mut letters = vec![None];
        for &v in z_word {
            letters.push(Some(v));
            letters.push(None);
        }
        let level = nc_level(letters.len())?;
        let mut total = 0.0;
        'partitions: for blocks in &level.partitions {
            let mut prod = 1.0;
            for block in blocks {
                let first = letters[block[0]];
                let value = match first {
                    None if block.iter().all(|&i| letters[i].is_none()) => kappa_p[block.len()],
                    Some(_) if block.iter().all(|&i| letters[i].is_some()) => {
                        let sub: Vec<usize> = block.iter().map(|&i| letters[i].unwrap()).collect();
                        kappa_z.value(&sub).unwrap()
                    }
                    _ => 0.0,
                };
                prod *= value;
                if prod == 0.0 {
                    continue 'partitions;
                }
            }
            total += prod;
        }
        Ok(total)
    };

    let mut compressed = Vec::new();
    for len in 1..=max_deg {
        for word in kappa_z.table().words_of_len(len) {
            compressed.push((word.clone(), joint_moment(word.letters())? / lambda));
        }
    }
    let compressed = MomentFunctional::from_entries(alphabet.clone(), max_deg, compressed)?;
    kappa_from_moments(&compressed)
}
