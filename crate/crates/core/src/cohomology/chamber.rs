//! Sheaf cohomology of `O(D)` by summing reduced homology over sign chambers.
//!
//! In degree `m` of the torus grading, `H^p(X, O(D))_m` has dimension
//! `b~_{p-1}(V_{D,m})`, where `V_{D,m}` is the full subcomplex of the fan's
//! cone complex on the rays with `<m, u_rho> < -a_rho`. The set of such rays
//! is constant on each cell of the arrangement, so each ray subset `S` with
//! nonzero reduced homology contributes `b~ * #(lattice points of its cell)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::support::section_polytope;
use crate::error::{Error, Result};
use crate::geometry::{HalfSpace, RationalPolyhedron};
use crate::toric::{ToricThreefold, WeilDivisor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub h: [u64; 4],
    pub chi: i64,
}

impl CohomologyTable {
    pub fn new(h: [u64; 4]) -> Self {
        let chi = h[0] as i64 - h[1] as i64 + h[2] as i64 - h[3] as i64;
        CohomologyTable { h, chi }
    }

    pub fn h(&self, i: usize) -> u64 {
        self.h[i]
    }

    pub fn higher_vanish(&self) -> bool {
        self.h[1] == 0 && self.h[2] == 0 && self.h[3] == 0
    }
}

/// Lattice points `m` whose negative ray set is exactly `mask`.
pub fn chamber_region(x: &ToricThreefold, d: &WeilDivisor, mask: u64) -> RationalPolyhedron {
    let hs = x
        .rays()
        .iter()
        .zip(&d.coeffs)
        .enumerate()
        .map(|(i, (u, &a))| {
            if mask >> i & 1 == 1 {
                // <m, u> <= -a - 1
                HalfSpace::new(-*u, -a - 1)
            } else {
                HalfSpace::new(*u, a)
            }
        })
        .collect();
    RationalPolyhedron::new(hs)
}

/// `h^0(D) = #(P_D cap M)`.
pub fn h0(x: &ToricThreefold, d: &WeilDivisor) -> Result<u64> {
    section_polytope(x, d)?.count_lattice_points()
}

pub fn cohomology(x: &ToricThreefold, d: &WeilDivisor) -> Result<CohomologyTable> {
    x.check_divisor(d)?;
    let betti = x.subcomplex_betti();
    let contributions: Vec<Result<[u64; 4]>> = (0..betti.len() as u64)
        .into_par_iter()
        .filter(|&mask| !betti[mask as usize].is_zero())
        .map(|mask| {
            let b = &betti[mask as usize];
            let region = chamber_region(x, d, mask);
            if !region.is_bounded()? {
                let rays = (0..x.ray_count()).filter(|i| mask >> i & 1 == 1).collect();
                return Err(Error::UnboundedChamber(rays));
            }
            let count = region.count_lattice_points()?;
            let mut h = [0u64; 4];
            for (p, slot) in h.iter_mut().enumerate() {
                *slot = b.get(p as isize - 1) as u64 * count;
            }
            Ok(h)
        })
        .collect();
    let mut total = [0u64; 4];
    for c in contributions {
        let h = c?;
        for p in 0..4 {
            total[p] += h[p];
        }
    }
    Ok(CohomologyTable::new(total))
}

pub fn euler_char(x: &ToricThreefold, d: &WeilDivisor) -> Result<i64> {
    Ok(cohomology(x, d)?.chi)
}
