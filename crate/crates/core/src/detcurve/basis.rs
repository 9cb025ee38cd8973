use serde::Serialize;

use crate::cohomology::section_polytope;
use crate::error::{Error, Result};
use crate::geometry::LatticeVector;
use crate::scalar::Fp;
use crate::toric::{ToricThreefold, WeilDivisor};

/// Monomial basis of `H^0(O(D))` in Cox coordinates, one monomial per lattice
/// point of `P_D` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionBasis {
    pub divisor: WeilDivisor,
    pub points: Vec<LatticeVector>,
    /// Exponent of `x_rho` is `<m, u_rho> + a_rho`.
    pub monomials: Vec<Vec<u64>>,
}

pub fn section_basis(x: &ToricThreefold, d: &WeilDivisor) -> Result<SectionBasis> {
    let points = section_polytope(x, d)?.lattice_points()?;
    if points.is_empty() {
        return Err(Error::NoSections(d.coeffs.clone()));
    }
    let monomials =
        points.iter().map(|m| x.rays().iter().zip(&d.coeffs).map(|(u, &a)| (m.dot(u) + a) as u64).collect()).collect();
    Ok(SectionBasis { divisor: d.clone(), points, monomials })
}

impl SectionBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Values of every monomial at a Cox point.
    pub fn evaluate(&self, point: &[Fp]) -> Vec<Fp> {
        self.monomials
            .iter()
            .map(|e| e.iter().zip(point).fold(Fp::new(1, point[0].modulus()), |acc, (&k, &x)| acc * x.pow(k)))
            .collect()
    }

    /// Whether the monomial vanishes identically on the stratum `x_rho = 0, rho in cone`.
    pub fn vanishes_on(&self, monomial: usize, cone: &[usize]) -> bool {
        cone.iter().any(|&r| self.monomials[monomial][r] > 0)
    }
}
