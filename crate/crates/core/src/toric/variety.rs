use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::fan::Fan;
use crate::error::{Error, Result};
use crate::geometry::{LatticeVector, ReducedBetti, SimplicialComplex};
use crate::linalg::{mat_vec, smith_normal_form, solve};

/// A torus-invariant Weil divisor `sum a_rho D_rho`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeilDivisor {
    pub coeffs: Vec<i64>,
}

impl WeilDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        WeilDivisor { coeffs }
    }

    pub fn zero(rays: usize) -> Self {
        WeilDivisor { coeffs: vec![0; rays] }
    }

    /// The prime divisor `D_rho`.
    pub fn prime(rays: usize, rho: usize) -> Self {
        let mut coeffs = vec![0; rays];
        coeffs[rho] = 1;
        WeilDivisor { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        WeilDivisor { coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }
}

impl fmt::Debug for WeilDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl Add for &WeilDivisor {
    type Output = WeilDivisor;
    fn add(self, rhs: &WeilDivisor) -> WeilDivisor {
        assert_eq!(self.len(), rhs.len(), "divisors on different fans");
        WeilDivisor { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Add for WeilDivisor {
    type Output = WeilDivisor;
    fn add(self, rhs: WeilDivisor) -> WeilDivisor {
        &self + &rhs
    }
}

impl Sub for &WeilDivisor {
    type Output = WeilDivisor;
    fn sub(self, rhs: &WeilDivisor) -> WeilDivisor {
        self + &(-rhs)
    }
}

impl Sub for WeilDivisor {
    type Output = WeilDivisor;
    fn sub(self, rhs: WeilDivisor) -> WeilDivisor {
        &self - &rhs
    }
}

impl Neg for &WeilDivisor {
    type Output = WeilDivisor;
    fn neg(self) -> WeilDivisor {
        self.scale(-1)
    }
}

impl Neg for WeilDivisor {
    type Output = WeilDivisor;
    fn neg(self) -> WeilDivisor {
        self.scale(-1)
    }
}

/// Image of a divisor in `Cl(X) = Z^r + (torsion)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub free: Vec<i64>,
    /// Residues modulo the corresponding entries of `class_group_torsion`.
    pub torsion: Vec<i64>,
}

impl DivisorClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&x| x == 0)
    }
}

/// A validated complete simplicial toric threefold.
#[derive(Debug)]
pub struct ToricThreefold {
    fan: Fan,
    class_group_rank: usize,
    class_group_torsion: Vec<i64>,
    /// Rows of the left Smith transform: the first three rows map onto the
    /// cyclic factors, the remaining `rank` rows onto the free part.
    degree_map: Vec<Vec<i64>>,
    invariant_factors: Vec<i64>,
    boundary: SimplicialComplex,
    betti: OnceLock<Vec<ReducedBetti>>,
}

impl Clone for ToricThreefold {
    fn clone(&self) -> Self {
        ToricThreefold {
            fan: self.fan.clone(),
            class_group_rank: self.class_group_rank,
            class_group_torsion: self.class_group_torsion.clone(),
            degree_map: self.degree_map.clone(),
            invariant_factors: self.invariant_factors.clone(),
            boundary: self.boundary.clone(),
            betti: self.betti.clone(),
        }
    }
}

/// Validates a fan and computes its class group.
pub fn validate_fan(fan: Fan) -> Result<ToricThreefold> {
    ToricThreefold::new(fan)
}

impl ToricThreefold {
    pub fn new(fan: Fan) -> Result<Self> {
        fan.validate()?;
        let matrix: Vec<Vec<i64>> = fan.rays.iter().map(|r| r.0.to_vec()).collect();
        let snf = smith_normal_form(&matrix)?;
        let n = fan.rays.len();
        let invariant_factors = snf.diagonal.clone();
        let class_group_torsion = invariant_factors.iter().copied().filter(|&d| d > 1).collect();
        let boundary = SimplicialComplex::new(n, fan.max_cones.iter().map(|c| c.to_vec()).collect())?;
        Ok(ToricThreefold {
            class_group_rank: n - 3,
            class_group_torsion,
            degree_map: snf.p,
            invariant_factors,
            boundary,
            betti: OnceLock::new(),
            fan,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.fan.rays
    }

    pub fn ray_count(&self) -> usize {
        self.fan.rays.len()
    }

    pub fn max_cones(&self) -> &[[usize; 3]] {
        &self.fan.max_cones
    }

    pub fn class_group_rank(&self) -> usize {
        self.class_group_rank
    }

    pub fn class_group_torsion(&self) -> &[i64] {
        &self.class_group_torsion
    }

    pub fn degree_map(&self) -> &[Vec<i64>] {
        &self.degree_map
    }

    /// The fan's cones as a simplicial complex on the rays (a triangulated 2-sphere).
    pub fn boundary_complex(&self) -> &SimplicialComplex {
        &self.boundary
    }

    /// Reduced Betti numbers of the full subcomplex on every ray subset,
    /// indexed by bitmask.
    pub fn subcomplex_betti(&self) -> &[ReducedBetti] {
        self.betti.get_or_init(|| {
            let n = self.ray_count();
            (0u64..(1u64 << n))
                .map(|mask| {
                    let keep: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
                    self.boundary.induced(&keep).reduced_betti()
                })
                .collect()
        })
    }

    pub fn check_divisor(&self, d: &WeilDivisor) -> Result<()> {
        if d.len() != self.ray_count() {
            return Err(Error::DivisorLength { expected: self.ray_count(), got: d.len() });
        }
        Ok(())
    }

    pub fn canonical_divisor(&self) -> WeilDivisor {
        WeilDivisor::new(vec![-1; self.ray_count()])
    }

    /// `div(chi^m) = sum <m, u_rho> D_rho`.
    pub fn principal_divisor(&self, m: &LatticeVector) -> WeilDivisor {
        WeilDivisor::new(self.fan.rays.iter().map(|u| m.dot(u)).collect())
    }

    pub fn class_of(&self, d: &WeilDivisor) -> Result<DivisorClass> {
        self.check_divisor(d)?;
        let image = mat_vec(&self.degree_map, &d.coeffs)?;
        let free = image[3..].to_vec();
        let torsion = (0..3)
            .filter(|&i| self.invariant_factors[i] > 1)
            .map(|i| image[i].rem_euclid(self.invariant_factors[i]))
            .collect();
        Ok(DivisorClass { free, torsion })
    }

    /// Linear equivalence, tested integrally in `Cl(X)`.
    pub fn linearly_equivalent(&self, a: &WeilDivisor, b: &WeilDivisor) -> Result<bool> {
        Ok(self.class_of(&(a - b))?.is_zero())
    }

    /// Coordinates of the class of `d` in `Cl(X) (x) Q` with respect to `basis`,
    /// when the basis classes span and `d` lies in their span.
    pub fn rational_coordinates(&self, d: &WeilDivisor, basis: &[WeilDivisor]) -> Result<Option<Vec<BigRational>>> {
        let r = self.class_group_rank;
        if basis.len() != r {
            return Ok(None);
        }
        let to_q = |v: Vec<i64>| v.into_iter().map(|x| BigRational::from_integer(BigInt::from(x))).collect::<Vec<_>>();
        let columns: Vec<Vec<BigRational>> =
            basis.iter().map(|b| Ok(to_q(self.class_of(b)?.free))).collect::<Result<_>>()?;
        let matrix: Vec<Vec<BigRational>> = (0..r).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        let target = to_q(self.class_of(d)?.free);
        Ok(solve(&matrix, &target))
    }

    /// Stable content hash of the fan, used to key caches.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        for r in &self.fan.rays {
            for c in r.0 {
                h.update(c.to_le_bytes());
            }
        }
        h.update(b"|");
        for c in &self.fan.max_cones {
            for i in c {
                h.update((*i as u64).to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }

    /// Non-smooth cones of dimension two and three, as sorted ray-index sets.
    pub fn singular_cones(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (face, _) in self.fan.two_faces() {
            let a = self.fan.rays[face[0]];
            let b = self.fan.rays[face[1]];
            if a.cross(&b).content() != 1 {
                out.push(face.to_vec());
            }
        }
        for (c, cone) in self.fan.max_cones.iter().enumerate() {
            if self.fan.cone_determinant(c).abs() != 1 {
                let mut v = cone.to_vec();
                v.sort_unstable();
                out.push(v);
            }
        }
        out
    }

    pub fn is_smooth(&self) -> Verdict {
        match (0..self.fan.max_cones.len()).find(|&c| self.fan.cone_determinant(c).abs() != 1) {
            None => Verdict::holds("every maximal cone has ray determinant +-1"),
            Some(c) => Verdict::fails(
                format!("cone {c} {:?} has ray determinant {}", self.fan.max_cones[c], self.fan.cone_determinant(c)),
                Some(c),
            ),
        }
    }

    /// Simplicial fans give Q-factorial varieties.
    pub fn is_qfactorial(&self) -> Verdict {
        Verdict::holds("simplicial fan: every Weil divisor is Q-Cartier")
    }

    pub fn is_gorenstein(&self) -> Result<Verdict> {
        let cert = crate::cohomology::SupportFunctionCertificate::new(self, &self.canonical_divisor())?;
        Ok(match cert.non_integral_cone() {
            None => Verdict::holds("K is Cartier"),
            Some(c) => {
                Verdict::fails(format!("K is not Cartier on cone {c}: m_sigma = {:?}", cert.vertices()[c]), Some(c))
            }
        })
    }

    pub fn is_fano(&self) -> Result<Verdict> {
        let minus_k = -self.canonical_divisor();
        let cert = crate::cohomology::SupportFunctionCertificate::new(self, &minus_k)?;
        Ok(match cert.non_strict_pair() {
            None => Verdict::holds("-K is ample"),
            Some((c, r)) => Verdict::fails(format!("-K not strictly convex at cone {c}, ray {r}"), Some(c)),
        })
    }

    /// Helper for tests and catalog checks: `sum coeffs_i * D_i`.
    pub fn divisor(&self, coeffs: &[i64]) -> Result<WeilDivisor> {
        let d = WeilDivisor::new(coeffs.to_vec());
        self.check_divisor(&d)?;
        Ok(d)
    }
}

/// A boolean verdict with a human-readable justification or witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_cone: Option<usize>,
}

impl Verdict {
    pub fn holds(detail: impl Into<String>) -> Self {
        Verdict { holds: true, detail: detail.into(), witness_cone: None }
    }

    pub fn fails(detail: impl Into<String>, witness_cone: Option<usize>) -> Self {
        Verdict { holds: false, detail: detail.into(), witness_cone }
    }
}
