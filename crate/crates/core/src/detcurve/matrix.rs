use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::basis::SectionBasis;
use crate::linalg::determinant;
use crate::scalar::Fp;

/// `k x (k-1)` matrix whose entries are sections of `O(H)`, stored as
/// coefficient vectors over the section basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionMatrix {
    pub k: usize,
    pub p: u64,
    pub seed: u64,
    #[serde(skip)]
    pub entries: Vec<Vec<Vec<Fp>>>,
}

impl SectionMatrix {
    /// Uniform coefficients, reproducible from `(p, seed, basis)`.
    pub fn random(basis: &SectionBasis, k: usize, p: u64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries = (0..k)
            .map(|_| (0..k - 1).map(|_| (0..basis.len()).map(|_| Fp::new(rng.gen_range(0..p), p)).collect()).collect())
            .collect();
        SectionMatrix { k, p, seed, entries }
    }

    pub fn zero(basis: &SectionBasis, k: usize, p: u64) -> Self {
        let entries = vec![vec![vec![Fp::new(0, p); basis.len()]; k - 1]; k];
        SectionMatrix { k, p, seed: 0, entries }
    }

    /// Entry values at a Cox point.
    pub fn evaluate(&self, basis: &SectionBasis, point: &[Fp]) -> Vec<Vec<Fp>> {
        let mono = basis.evaluate(point);
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|coeffs| coeffs.iter().zip(&mono).fold(Fp::new(0, self.p), |acc, (&c, &m)| acc + c * m))
                    .collect()
            })
            .collect()
    }

    /// Minor with row `i` (1-based) removed, at a Cox point.
    pub fn minor(&self, basis: &SectionBasis, i: usize, point: &[Fp]) -> Fp {
        minor_of_values(&self.evaluate(basis, point), i)
    }
}

fn minor_of_values(values: &[Vec<Fp>], i: usize) -> Fp {
    assert!(i >= 1 && i <= values.len(), "row index {i} out of range");
    let rows: Vec<Vec<Fp>> =
        values.iter().enumerate().filter(|(r, _)| *r != i - 1).map(|(_, row)| row.clone()).collect();
    let det = determinant(&rows);
    // unbound constants only arise for the empty determinant
    if det.modulus() == 0 {
        Fp::new(det.value(), values[0][0].modulus())
    } else {
        det
    }
}

/// All `k` minors of an evaluated matrix, in row order.
pub fn minor_values(values: &[Vec<Fp>]) -> Vec<Fp> {
    (1..=values.len()).map(|i| minor_of_values(values, i)).collect()
}

/// Expansion of `D_{k-1}` and `D_k` along their last row against the
/// cofactors of the common top block, compared with direct evaluation.
pub fn laplace_consistent(values: &[Vec<Fp>]) -> bool {
    let k = values.len();
    let p = values[0][0].modulus();
    let top = &values[..k - 2];
    let cofactor = |j: usize| -> Fp {
        let rows: Vec<Vec<Fp>> =
            top.iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect()).collect();
        let det = determinant(&rows);
        Fp::new(det.value(), p)
    };
    let expand = |row: &[Fp]| -> Fp {
        let mut acc = Fp::new(0, p);
        for (j, &entry) in row.iter().enumerate() {
            // 1-based position (k-1, j+1) in the (k-1)x(k-1) minor
            let term = entry * cofactor(j);
            acc = if (k - 1 + j + 1).is_multiple_of(2) { acc + term } else { acc - term };
        }
        acc
    };
    let d_km1 = expand(&values[k - 1]);
    let d_k = expand(&values[k - 2]);
    let direct = minor_values(values);
    d_km1 == direct[k - 2] && d_k == direct[k - 1]
}
