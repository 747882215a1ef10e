//! Census mode: random height-1 presentations and their verdict statistics.

use largeness_core::error::{Error, Result};
use largeness_core::onerelator::{height1_largeness_driver, DriverBudget};
use largeness_core::presentation::Presentation;
use largeness_core::verdict::Status;
use largeness_core::word::Word;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use crate::doc::{CensusReport, Versions};

/// Uniform sample from [-bound, bound] minus 0.
fn sample_exponent(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let r = rng.gen_range(0..2 * bound);
    if r < bound {
        r - bound
    } else {
        r - bound + 1
    }
}

/// The height-1 presentation with relator `t a^i1 t^-1 a^i2 ... t a^i(2k-1) t^-1 a^i(2k)`.
pub fn height1_presentation(exponents: &[i64]) -> Result<Presentation> {
    if exponents.len() % 2 != 0 || exponents.is_empty() {
        return Err(Error::Invalid("need a positive even number of exponents".into()));
    }
    let mut w = Word::identity();
    for pair in exponents.chunks(2) {
        w = w
            .multiply(&Word::generator(1))
            .multiply(&Word::generator_pow(0, pair[0]))
            .multiply(&Word::generator_pow(1, -1))
            .multiply(&Word::generator_pow(0, pair[1]));
    }
    Presentation::new(vec!["a".into(), "t".into()], vec![w])
}

pub fn run_census(
    length: usize,
    bound: i64,
    samples: usize,
    seed: u64,
    budget: &DriverBudget,
) -> Result<CensusReport> {
    if length == 0 || bound <= 0 {
        return Err(Error::Invalid("census bounds must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut certified = 0usize;
    let mut unknown = 0usize;
    let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
    for _ in 0..samples {
        let exponents: Vec<i64> = (0..2 * length)
            .map(|_| sample_exponent(&mut rng, bound))
            .collect();
        let p = height1_presentation(&exponents)?;
        let verdict = height1_largeness_driver(&p, budget)?;
        match verdict.status {
            Status::LargeCertified => {
                certified += 1;
                let kind = verdict
                    .certificate
                    .as_ref()
                    .map(|c| c.kind().to_string())
                    .unwrap_or_else(|| "missing".into());
                *histogram.entry(kind).or_insert(0) += 1;
            }
            Status::Unknown => unknown += 1,
        }
    }
    let frac = |k: usize| {
        if samples == 0 {
            0.0
        } else {
            k as f64 / samples as f64
        }
    };
    Ok(CensusReport {
        length,
        bound,
        samples,
        certified_large: certified,
        unknown,
        certified_large_fraction: frac(certified),
        unknown_fraction: frac(unknown),
        certificate_histogram: histogram,
        seed,
        versions: Versions::current(),
    })
}
