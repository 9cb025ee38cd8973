use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::basis::{section_basis, SectionBasis};
use super::matrix::{minor_values, SectionMatrix};
use crate::error::{Error, Result};
use crate::scalar::{is_prime, Fp};
use crate::toric::{ToricThreefold, WeilDivisor};

/// Per-stratum record: number of vanishing minors at each trial's sample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub cone: Vec<usize>,
    pub samples: usize,
    pub vanishing_minors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailPoint {
    pub trial: usize,
    pub trial_seed: u64,
    pub cone: Vec<usize>,
    pub point: Vec<u64>,
    /// 1-based indices of the vanishing minors.
    pub vanishing: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidanceVerdict {
    pub k: usize,
    pub p: u64,
    pub seed: u64,
    pub trials: usize,
    pub strata: Vec<StratumRecord>,
    pub fail_points: Vec<FailPoint>,
    /// True when the variety is smooth and there is nothing to sample.
    pub vacuous: bool,
    pub pass: bool,
}

/// SplitMix64 step; derives independent trial seeds from one master seed.
pub fn split_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Cox point with `x_rho = 0` on the cone and uniform nonzero coordinates elsewhere.
fn sample_point(rng: &mut ChaCha8Rng, rays: usize, cone: &[usize], p: u64) -> Vec<Fp> {
    (0..rays).map(|r| if cone.contains(&r) { Fp::new(0, p) } else { Fp::new(rng.gen_range(1..p), p) }).collect()
}

fn vanishing(matrix: &SectionMatrix, basis: &SectionBasis, point: &[Fp]) -> Vec<usize> {
    let values = matrix.evaluate(basis, point);
    minor_values(&values).iter().enumerate().filter(|(_, v)| v.value() == 0).map(|(i, _)| i + 1).collect()
}

fn validate(x: &ToricThreefold, k: usize, p: u64, trials: usize) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::KTooSmall(k as i64));
    }
    if p < 1000 || !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let strata = x.singular_cones();
    if let Some(s) = strata.iter().find(|s| s.len() >= x.ray_count()) {
        return Err(Error::DegenerateStratum(s.clone()));
    }
    Ok(strata)
}

/// Sample every singular stratum once per trial with a fresh random matrix;
/// fail if any sample has two or more vanishing minors.
pub fn check_avoidance(
    x: &ToricThreefold,
    h: &WeilDivisor,
    k: usize,
    p: u64,
    trials: usize,
    seed: u64,
) -> Result<AvoidanceVerdict> {
    let strata = validate(x, k, p, trials)?;
    let basis = section_basis(x, h)?;
    let per_trial: Vec<Vec<(Vec<u64>, Vec<usize>)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trial_seed = split_seed(seed, t as u64);
            let matrix = SectionMatrix::random(&basis, k, p, trial_seed);
            let mut rng = ChaCha8Rng::seed_from_u64(split_seed(trial_seed, u64::MAX));
            strata
                .iter()
                .map(|cone| {
                    let point = sample_point(&mut rng, x.ray_count(), cone, p);
                    let v = vanishing(&matrix, &basis, &point);
                    (point.iter().map(Fp::value).collect(), v)
                })
                .collect()
        })
        .collect();
    let mut records: Vec<StratumRecord> = strata
        .iter()
        .map(|c| StratumRecord { cone: c.clone(), samples: trials, vanishing_minors: Vec::new() })
        .collect();
    let mut fail_points = Vec::new();
    for (t, samples) in per_trial.into_iter().enumerate() {
        for (s, (point, v)) in samples.into_iter().enumerate() {
            records[s].vanishing_minors.push(v.len());
            if v.len() >= 2 {
                fail_points.push(FailPoint {
                    trial: t,
                    trial_seed: split_seed(seed, t as u64),
                    cone: strata[s].clone(),
                    point,
                    vanishing: v,
                });
            }
        }
    }
    Ok(AvoidanceVerdict {
        k,
        p,
        seed,
        trials,
        vacuous: strata.is_empty(),
        pass: fail_points.is_empty(),
        strata: records,
        fail_points,
    })
}

/// A matrix whose first two rows are equal and vanish on the stratum, so
/// every minor vanishes there.
pub fn adversarial_matrix(basis: &SectionBasis, cone: &[usize], k: usize, p: u64, seed: u64) -> SectionMatrix {
    let mut m = SectionMatrix::random(basis, k, p, seed);
    for entry in m.entries[0].iter_mut() {
        for (i, c) in entry.iter_mut().enumerate() {
            if !basis.vanishes_on(i, cone) {
                *c = Fp::new(0, p);
            }
        }
    }
    m.entries[1] = m.entries[0].clone();
    m
}

/// Whether the detector flags the adversarial matrix on every singular
/// stratum. `None` when the variety is smooth.
pub fn adversarial_detected(x: &ToricThreefold, h: &WeilDivisor, k: usize, p: u64, seed: u64) -> Result<Option<bool>> {
    let strata = validate(x, k, p, 1)?;
    if strata.is_empty() {
        return Ok(None);
    }
    let basis = section_basis(x, h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (s, cone) in strata.iter().enumerate() {
        let m = adversarial_matrix(&basis, cone, k, p, split_seed(seed, s as u64));
        let point = sample_point(&mut rng, x.ray_count(), cone, p);
        if vanishing(&m, &basis, &point).len() < 2 {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}
