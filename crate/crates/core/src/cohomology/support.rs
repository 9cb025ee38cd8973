//! Support functions of torus-invariant divisors and the positivity tests built on them.

use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::lattice::intersect_planes;
use crate::geometry::{HalfSpace, LatticeVector, RatPoint, RationalPolyhedron};
use crate::toric::{ToricThreefold, Verdict, WeilDivisor};

/// Per-cone dual vectors `m_sigma` with `<m_sigma, u_rho> = -a_rho` on the rays of `sigma`.
#[derive(Debug, Clone)]
pub struct SupportFunctionCertificate {
    divisor: WeilDivisor,
    rays: Vec<LatticeVector>,
    cones: Vec<[usize; 3]>,
    vertices: Vec<RatPoint>,
    cartier: bool,
    index: i128,
}

impl SupportFunctionCertificate {
    pub fn new(x: &ToricThreefold, d: &WeilDivisor) -> Result<Self> {
        x.check_divisor(d)?;
        let mut vertices = Vec::with_capacity(x.max_cones().len());
        for cone in x.max_cones() {
            let normals = cone.map(|r| x.rays()[r]);
            let values = cone.map(|r| -d.coeffs[r]);
            let m = intersect_planes(normals, values)
                .ok_or_else(|| Error::NotQCartier(format!("cone {cone:?} has no local equation")))?;
            vertices.push(m);
        }
        let index = vertices.iter().fold(1i128, |l, v| l.lcm(&v.denominator()));
        Ok(SupportFunctionCertificate {
            divisor: d.clone(),
            rays: x.rays().to_vec(),
            cones: x.max_cones().to_vec(),
            cartier: index == 1,
            index,
            vertices,
        })
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn is_cartier(&self) -> bool {
        self.cartier
    }

    /// Smallest `k > 0` with `kD` Cartier.
    pub fn cartier_index(&self) -> i128 {
        self.index
    }

    pub fn non_integral_cone(&self) -> Option<usize> {
        self.vertices.iter().position(|v| !v.is_integral())
    }

    /// `den * (<m_sigma, u_rho> + a_rho)` for a ray outside the cone.
    fn slack(&self, cone: usize, ray: usize) -> i128 {
        let v = &self.vertices[cone];
        v.scaled_dot(&self.rays[ray]) + i128::from(self.divisor.coeffs[ray]) * v.denominator()
    }

    fn outside_rays(&self, cone: usize) -> impl Iterator<Item = usize> + '_ {
        let c = self.cones[cone];
        (0..self.rays.len()).filter(move |r| !c.contains(r))
    }

    /// First (cone, ray) pair violating convexity of the support function.
    pub fn non_convex_pair(&self) -> Option<(usize, usize)> {
        (0..self.cones.len()).find_map(|c| self.outside_rays(c).find(|&r| self.slack(c, r) < 0).map(|r| (c, r)))
    }

    /// First (cone, ray) pair where strict convexity fails.
    pub fn non_strict_pair(&self) -> Option<(usize, usize)> {
        (0..self.cones.len()).find_map(|c| self.outside_rays(c).find(|&r| self.slack(c, r) <= 0).map(|r| (c, r)))
    }
}

/// `P_D = { m : <m, u_rho> >= -a_rho }`.
pub fn section_polytope(x: &ToricThreefold, d: &WeilDivisor) -> Result<RationalPolyhedron> {
    x.check_divisor(d)?;
    Ok(RationalPolyhedron::new(x.rays().iter().zip(&d.coeffs).map(|(u, &a)| HalfSpace::new(*u, a)).collect()))
}

pub fn is_nef(x: &ToricThreefold, d: &WeilDivisor) -> Result<Verdict> {
    let cert = SupportFunctionCertificate::new(x, d)?;
    Ok(match cert.non_convex_pair() {
        None => Verdict::holds(format!("support function convex (Cartier index {})", cert.cartier_index())),
        Some((c, r)) => Verdict::fails(
            format!("<m_sigma, u_rho> < -a_rho for cone {c} {:?} and ray {r} {:?}", x.max_cones()[c], x.rays()[r]),
            Some(c),
        ),
    })
}

pub fn is_ample(x: &ToricThreefold, d: &WeilDivisor) -> Result<Verdict> {
    let cert = SupportFunctionCertificate::new(x, d)?;
    Ok(match cert.non_strict_pair() {
        None => Verdict::holds(format!("support function strictly convex (Cartier index {})", cert.cartier_index())),
        Some((c, r)) => Verdict::fails(
            format!("strict convexity fails for cone {c} {:?} and ray {r} {:?}", x.max_cones()[c], x.rays()[r]),
            Some(c),
        ),
    })
}

/// Global generation by the vertex criterion: every maximal cone needs a
/// lattice point of `P_D` meeting all of its facets' equalities. For Cartier
/// divisors this is nefness.
pub fn is_globally_generated(x: &ToricThreefold, d: &WeilDivisor) -> Result<Verdict> {
    let cert = SupportFunctionCertificate::new(x, d)?;
    if let Some(c) = cert.non_integral_cone() {
        return Ok(Verdict::fails(
            format!("no lattice point realizes the local equation on cone {c}: m_sigma = {:?}", cert.vertices()[c]),
            Some(c),
        ));
    }
    Ok(match cert.non_convex_pair() {
        None => Verdict::holds("every m_sigma is a lattice point of P_D"),
        Some((c, r)) => Verdict::fails(format!("m_sigma of cone {c} violates the inequality of ray {r}"), Some(c)),
    })
}

fn dual_generators(x: &ToricThreefold, cone: usize) -> [LatticeVector; 3] {
    let u = x.fan().cone_rays(cone);
    let mut w = [LatticeVector::ZERO; 3];
    for i in 0..3 {
        let c = u[(i + 1) % 3].cross(&u[(i + 2) % 3]).primitive().expect("independent rays");
        w[i] = if c.dot(&u[i]) > 0 { c } else { -c };
    }
    w
}

/// Lattice points `m` with `lo_i <= <m, u_i> - shift_i < lo_i + <w_i, u_i>` for the cone's rays.
fn half_open_parallelepiped(x: &ToricThreefold, cone: usize, base: [i64; 3]) -> Result<Vec<LatticeVector>> {
    let u = x.fan().cone_rays(cone);
    let w = dual_generators(x, cone);
    let mut hs = Vec::new();
    for i in 0..3 {
        let width = w[i].dot(&u[i]);
        hs.push(HalfSpace::new(u[i], -base[i]));
        hs.push(HalfSpace::new(-u[i], base[i] + width - 1));
    }
    RationalPolyhedron::new(hs).lattice_points()
}

/// Whether the global sections generate `O(D)` on every affine chart: the
/// minimal module generators of `H^0(U_sigma, O(D))` must each be reached from
/// a global section by a monomial of the chart.
pub fn sheaf_generated_by_sections(x: &ToricThreefold, d: &WeilDivisor) -> Result<Verdict> {
    let global = section_polytope(x, d)?.lattice_points()?;
    for (c, cone) in x.max_cones().iter().enumerate() {
        let u = x.fan().cone_rays(c);
        let base = cone.map(|r| -d.coeffs[r]);
        for g in half_open_parallelepiped(x, c, base)? {
            let reached = global.iter().any(|p| {
                let diff = g - *p;
                u.iter().all(|ui| diff.dot(ui) >= 0)
            });
            if !reached {
                return Ok(Verdict::fails(
                    format!("local generator {g:?} on cone {c} {cone:?} is not reached by a global section"),
                    Some(c),
                ));
            }
        }
    }
    Ok(Verdict::holds("global sections generate every chart"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum VeryAmpleness {
    VeryAmple,
    NotAmple {
        detail: String,
    },
    NotCartier {
        cone: usize,
    },
    /// Ample Cartier but the lattice points at this vertex do not generate
    /// the tangent cone's semigroup.
    NotVeryAmple {
        cone: usize,
        missing: LatticeVector,
    },
}

impl VeryAmpleness {
    pub fn is_very_ample(&self) -> bool {
        matches!(self, VeryAmpleness::VeryAmple)
    }

    pub fn describe(&self) -> String {
        match self {
            VeryAmpleness::VeryAmple => "very ample (semigroup saturated at every vertex)".into(),
            VeryAmpleness::NotAmple { detail } => format!("not ample: {detail}"),
            VeryAmpleness::NotCartier { cone } => format!("not Cartier on cone {cone}"),
            VeryAmpleness::NotVeryAmple { cone, missing } => {
                format!("ample but not very ample: {missing:?} not generated at the vertex of cone {cone}")
            }
        }
    }
}

/// Exact very-ampleness for Cartier divisors: `D` is very ample iff it is ample
/// and at each vertex `m_sigma` the differences `P_D cap M - m_sigma` generate
/// `sigma^vee cap M` as a semigroup.
pub fn very_ampleness(x: &ToricThreefold, d: &WeilDivisor) -> Result<VeryAmpleness> {
    let cert = SupportFunctionCertificate::new(x, d)?;
    if let Some(cone) = cert.non_integral_cone() {
        return Ok(VeryAmpleness::NotCartier { cone });
    }
    let ample = is_ample(x, d)?;
    if !ample.holds {
        return Ok(VeryAmpleness::NotAmple { detail: ample.detail });
    }
    let points = section_polytope(x, d)?.lattice_points()?;
    for c in 0..x.max_cones().len() {
        let vertex = cert.vertices()[c].to_lattice().expect("Cartier vertex is integral");
        let u = x.fan().cone_rays(c);
        let steps: Vec<LatticeVector> = points.iter().map(|p| *p - vertex).filter(|s| !s.is_zero()).collect();
        let mut memo: HashMap<LatticeVector, bool> = HashMap::new();
        let mut candidates: Vec<LatticeVector> = dual_generators(x, c).to_vec();
        candidates.extend(half_open_parallelepiped(x, c, [0; 3])?.into_iter().filter(|m| !m.is_zero()));
        for h in candidates {
            if !representable(h, &steps, &u, &mut memo) {
                return Ok(VeryAmpleness::NotVeryAmple { cone: c, missing: h });
            }
        }
    }
    Ok(VeryAmpleness::VeryAmple)
}

fn representable(
    target: LatticeVector,
    steps: &[LatticeVector],
    cone_rays: &[LatticeVector; 3],
    memo: &mut HashMap<LatticeVector, bool>,
) -> bool {
    if target.is_zero() {
        return true;
    }
    if let Some(&known) = memo.get(&target) {
        return known;
    }
    let mut result = false;
    for s in steps {
        let rest = target - *s;
        if cone_rays.iter().all(|u| rest.dot(u) >= 0) && representable(rest, steps, cone_rays, memo) {
            result = true;
            break;
        }
    }
    memo.insert(target, result);
    result
}
