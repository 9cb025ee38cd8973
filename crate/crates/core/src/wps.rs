//! Weighted projective 3-spaces `P[q0,q1,q2,q3]`.
//!
//! With `delta = lcm(q)` and `sigma = sum(q)`, the class `eta = delta eta0` is
//! the ample generator of Pic and `-K = sigma eta0`, so
//! `h^0(K + eta) = h^0((delta - sigma) eta0)` vanishes exactly when
//! `delta < sigma`.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::LatticeVector;
use crate::toric::{Fan, ToricThreefold, WeilDivisor};

/// Four positive weights, stored as given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightTuple(pub [i64; 4]);

impl fmt::Display for WeightTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "P[{a},{b},{c},{d}]")
    }
}

const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

impl WeightTuple {
    pub fn new(q: [i64; 4]) -> Result<Self> {
        if q.iter().any(|&x| x <= 0) {
            return Err(Error::NonPositiveWeight(q));
        }
        Ok(WeightTuple(q))
    }

    /// First 3-element subset with a common factor, if any.
    pub fn well_formedness_violation(&self) -> Option<([i64; 3], i64)> {
        TRIPLES.iter().find_map(|t| {
            let triple = t.map(|i| self.0[i]);
            let g = triple[0].gcd(&triple[1]).gcd(&triple[2]);
            (g != 1).then_some((triple, g))
        })
    }

    pub fn is_well_formed(&self) -> bool {
        self.well_formedness_violation().is_none()
    }

    pub fn check_well_formed(&self) -> Result<()> {
        match self.well_formedness_violation() {
            None => Ok(()),
            Some((triple, gcd)) => Err(Error::NotWellFormed { weights: self.0, triple, gcd }),
        }
    }

    pub fn sorted(&self) -> WeightTuple {
        let mut q = self.0;
        q.sort_unstable();
        WeightTuple(q)
    }

    pub fn delta(&self) -> i64 {
        self.0.iter().fold(1, |l, &q| l.lcm(&q))
    }

    pub fn sigma(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// `(lcm, sum, lcm < sum)`.
pub fn delta_sigma(q: &WeightTuple) -> (i64, i64, bool) {
    let (d, s) = (q.delta(), q.sigma());
    (d, s, d < s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WpsInvariants {
    pub delta: i64,
    pub sigma: i64,
    /// A divisor whose class generates `Cl = Z`.
    pub eta0: WeilDivisor,
    /// `delta * eta0`, represented as `(delta / q0) D_0`.
    pub eta: WeilDivisor,
}

/// Coefficients `c` with `sum c_i q_i = 1`.
fn bezout(q: &[i64; 4]) -> [i64; 4] {
    let mut coeffs = [0i64; 4];
    coeffs[0] = 1;
    let mut g = q[0];
    for i in 1..4 {
        let e = g.extended_gcd(&q[i]);
        for c in coeffs.iter_mut().take(i) {
            *c *= e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
    }
    if g < 0 {
        coeffs.iter_mut().for_each(|c| *c = -*c);
    }
    coeffs
}

pub fn invariants(q: &WeightTuple) -> WpsInvariants {
    let delta = q.delta();
    let eta0 = WeilDivisor::new(bezout(&q.0).to_vec());
    let mut eta = WeilDivisor::zero(4);
    eta.coeffs[0] = delta / q.0[0];
    WpsInvariants { delta, sigma: q.sigma(), eta0, eta }
}

/// Unimodular `U` with `U q = e_0` (row operations of the Euclidean algorithm).
fn unimodular_completion(q: [i64; 4]) -> [[i64; 4]; 4] {
    let mut v = q;
    let mut u = [[0i64; 4]; 4];
    for (i, row) in u.iter_mut().enumerate() {
        row[i] = 1;
    }
    loop {
        let nonzero: Vec<usize> = (0..4).filter(|&i| v[i] != 0).collect();
        if nonzero.len() == 1 {
            let p = nonzero[0];
            v.swap(0, p);
            u.swap(0, p);
            if v[0] < 0 {
                v[0] = -v[0];
                u[0] = u[0].map(|x| -x);
            }
            break;
        }
        let p = *nonzero.iter().min_by_key(|&&i| v[i].abs()).unwrap();
        for &j in &nonzero {
            if j == p {
                continue;
            }
            let f = v[j] / v[p];
            v[j] -= f * v[p];
            for c in 0..4 {
                u[j][c] -= f * u[p][c];
            }
        }
    }
    debug_assert_eq!(v, [1, 0, 0, 0]);
    u
}

/// Pairwise size reduction of the coordinate rows; a change of basis of `N`.
fn reduce_rows(rows: &mut [[i64; 4]; 3]) {
    let norm = |r: &[i64; 4]| r.iter().map(|x| x * x).sum::<i64>();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let nj = norm(&rows[j]);
                if nj == 0 {
                    continue;
                }
                let dot: i64 = (0..4).map(|c| rows[i][c] * rows[j][c]).sum();
                let f = Integer::div_floor(&(2 * dot + nj), &(2 * nj));
                if f != 0 {
                    let candidate: [i64; 4] = std::array::from_fn(|c| rows[i][c] - f * rows[j][c]);
                    if norm(&candidate) < norm(&rows[i]) {
                        rows[i] = candidate;
                        changed = true;
                    }
                }
            }
        }
    }
}

/// Fan of `P[q]`: primitive rays with `sum q_i u_i = 0`, one maximal cone per omitted ray.
pub fn wps_fan(q: &WeightTuple) -> Result<ToricThreefold> {
    q.check_well_formed()?;
    let w = q.0;
    let rays: Vec<LatticeVector> = if let Some(one) = w.iter().position(|&x| x == 1) {
        let others: Vec<usize> = (0..4).filter(|&i| i != one).collect();
        let mut rays = vec![LatticeVector::ZERO; 4];
        for (k, &i) in others.iter().enumerate() {
            let mut e = [0; 3];
            e[k] = 1;
            rays[i] = LatticeVector(e);
        }
        rays[one] = LatticeVector([-w[others[0]], -w[others[1]], -w[others[2]]]);
        rays
    } else {
        let u = unimodular_completion(w);
        let mut rows = [u[1], u[2], u[3]];
        reduce_rows(&mut rows);
        (0..4).map(|i| LatticeVector([rows[0][i], rows[1][i], rows[2][i]])).collect()
    };
    let fan = Fan::new(rays, vec![[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]);
    ToricThreefold::new(fan)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `P[1,1,1,q]`
    OnesAndQ,
    /// `P[1,2,2q-1,2q-1]`
    OneTwoOddPair,
    /// `P[2,2,2q-1,2q-1]`
    TwoTwoOddPair,
    /// `P[1,1,2,3]`, `P[3,3,4,4]`, `P[3,3,5,5]`, `P[1,2,2,3]`
    Sporadic,
    Unexpected,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::OnesAndQ => "P[1,1,1,q]",
            Family::OneTwoOddPair => "P[1,2,2q-1,2q-1]",
            Family::TwoTwoOddPair => "P[2,2,2q-1,2q-1]",
            Family::Sporadic => "sporadic",
            Family::Unexpected => "UNEXPECTED",
        })
    }
}

pub const SPORADIC: [[i64; 4]; 4] = [[1, 1, 2, 3], [3, 3, 4, 4], [3, 3, 5, 5], [1, 2, 2, 3]];

fn sorted_eq(a: [i64; 4], b: [i64; 4]) -> bool {
    WeightTuple(a).sorted() == WeightTuple(b).sorted()
}

/// Infinite families take precedence over the sporadic list.
pub fn classify(q: &WeightTuple) -> Family {
    let s = q.sorted().0;
    if s[0] == 1 && s[1] == 1 && s[2] == 1 {
        return Family::OnesAndQ;
    }
    let odd_pair = |r: i64| r > 0 && r % 2 == 1;
    // sorted forms of (1,2,r,r) and (2,2,r,r) with r odd
    for r in [s[0], s[2]] {
        if odd_pair(r) && sorted_eq(s, [1, 2, r, r]) {
            return Family::OneTwoOddPair;
        }
    }
    for r in [s[0], s[2]] {
        if odd_pair(r) && sorted_eq(s, [2, 2, r, r]) {
            return Family::TwoTwoOddPair;
        }
    }
    if SPORADIC.iter().any(|&t| sorted_eq(s, t)) {
        return Family::Sporadic;
    }
    Family::Unexpected
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub weights: WeightTuple,
    pub delta: i64,
    pub sigma: i64,
    pub family: Family,
}

/// Every well-formed non-decreasing tuple with entries `<= max_weight` and
/// `delta < sigma`, in lexicographic order.
pub fn scan(max_weight: i64) -> Result<Vec<ScanEntry>> {
    if max_weight < 1 {
        return Err(Error::EmptyScan);
    }
    let mut out: Vec<ScanEntry> = (1..=max_weight)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut local = Vec::new();
            for b in a..=max_weight {
                for c in b..=max_weight {
                    for d in c..=max_weight {
                        let q = WeightTuple([a, b, c, d]);
                        if !q.is_well_formed() {
                            continue;
                        }
                        let (delta, sigma, ok) = delta_sigma(&q);
                        if ok {
                            local.push(ScanEntry { weights: q, delta, sigma, family: classify(&q) });
                        }
                    }
                }
            }
            local
        })
        .collect();
    out.sort_by_key(|e| e.weights);
    Ok(out)
}
