//! Complete simplicial fans in `N_R = R^3` and their validation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::fm::{feasible, LinearConstraint};
use crate::geometry::LatticeVector;
use crate::linalg::det3;

/// Rays (primitive generators) and maximal cones (triples of ray indices).
///
/// The JSON form is `{"rays": [[x,y,z], ...], "max_cones": [[i,j,k], ...]}`
/// with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fan {
    pub rays: Vec<LatticeVector>,
    pub max_cones: Vec<[usize; 3]>,
}

impl Fan {
    pub fn new(rays: Vec<LatticeVector>, max_cones: Vec<[usize; 3]>) -> Self {
        Fan { rays, max_cones }
    }

    pub fn from_json(text: &str) -> std::result::Result<Fan, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn cone_rays(&self, cone: usize) -> [LatticeVector; 3] {
        self.max_cones[cone].map(|i| self.rays[i])
    }

    /// Determinant of the ray matrix of a maximal cone (its multiplicity up to sign).
    pub fn cone_determinant(&self, cone: usize) -> i128 {
        det3(self.cone_rays(cone).map(|r| r.0))
    }

    /// Checks primitivity, simpliciality, proper intersection and completeness.
    pub fn validate(&self) -> Result<()> {
        self.check_rays()?;
        self.check_cones()?;
        self.check_intersections()?;
        self.check_completeness()
    }

    fn check_rays(&self) -> Result<()> {
        for (i, r) in self.rays.iter().enumerate() {
            let p = r.primitive()?;
            if p != *r {
                return Err(Error::NonPrimitiveRay { index: i, ray: r.0, suggestion: p.0 });
            }
            if let Some(j) = self.rays[..i].iter().position(|s| s == r) {
                return Err(Error::DuplicateRay(j, i));
            }
        }
        Ok(())
    }

    fn check_cones(&self) -> Result<()> {
        let mut seen = BTreeMap::new();
        for (c, cone) in self.max_cones.iter().enumerate() {
            if let Some(&r) = cone.iter().find(|&&r| r >= self.rays.len()) {
                return Err(Error::UnknownRay { cone: c, ray: r });
            }
            let set: BTreeSet<usize> = cone.iter().copied().collect();
            if set.len() != 3 || self.cone_determinant(c) == 0 {
                return Err(Error::NotSimplicial { cone: c, rays: cone.to_vec() });
            }
            if let Some(&prev) = seen.get(&set) {
                return Err(Error::BadOverlap(prev, c));
            }
            seen.insert(set, c);
        }
        Ok(())
    }

    /// Two cones meet in a common face iff a linear form vanishes on their
    /// shared rays and strictly separates the remaining ones.
    fn meet_properly(&self, a: usize, b: usize) -> Result<bool> {
        let sa: BTreeSet<usize> = self.max_cones[a].iter().copied().collect();
        let sb: BTreeSet<usize> = self.max_cones[b].iter().copied().collect();
        let as_coeffs = |r: usize| self.rays[r].0.map(i128::from).to_vec();
        let neg = |v: Vec<i128>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
        let mut cs = Vec::new();
        for &r in sa.intersection(&sb) {
            cs.push(LinearConstraint::ge(as_coeffs(r), 0));
            cs.push(LinearConstraint::ge(neg(as_coeffs(r)), 0));
        }
        for &r in sa.difference(&sb) {
            cs.push(LinearConstraint::gt(as_coeffs(r), 0));
        }
        for &r in sb.difference(&sa) {
            cs.push(LinearConstraint::gt(neg(as_coeffs(r)), 0));
        }
        feasible(&cs)
    }

    fn check_intersections(&self) -> Result<()> {
        for a in 0..self.max_cones.len() {
            for b in a + 1..self.max_cones.len() {
                if !self.meet_properly(a, b)? {
                    return Err(Error::BadOverlap(a, b));
                }
            }
        }
        Ok(())
    }

    /// Two-dimensional faces with the maximal cones containing them.
    pub fn two_faces(&self) -> BTreeMap<[usize; 2], Vec<usize>> {
        let mut faces: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
        for (c, cone) in self.max_cones.iter().enumerate() {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let (x, y) = (cone[i].min(cone[j]), cone[i].max(cone[j]));
                faces.entry([x, y]).or_default().push(c);
            }
        }
        faces
    }

    /// Every two-dimensional face lies in exactly two maximal cones, every ray
    /// is used, and the cone complex is a connected sphere (Euler
    /// characteristic 2). Together with proper intersection this means the
    /// cones cover `R^3`.
    fn check_completeness(&self) -> Result<()> {
        if self.max_cones.is_empty() {
            return Err(Error::NotComplete { detail: "fan has no maximal cones".into(), cones: vec![] });
        }
        let faces = self.two_faces();
        for (face, cones) in &faces {
            if cones.len() != 2 {
                return Err(Error::NotComplete {
                    detail: format!(
                        "2-face on rays {:?} lies in {} maximal cone(s) {:?}, expected 2",
                        face,
                        cones.len(),
                        cones
                    ),
                    cones: cones.clone(),
                });
            }
        }
        let used: BTreeSet<usize> = self.max_cones.iter().flatten().copied().collect();
        if let Some(r) = (0..self.rays.len()).find(|r| !used.contains(r)) {
            return Err(Error::NotComplete { detail: format!("ray {r} lies in no maximal cone"), cones: vec![] });
        }
        let euler = self.rays.len() as i64 - faces.len() as i64 + self.max_cones.len() as i64;
        if euler != 2 || !self.cones_connected() {
            return Err(Error::NotComplete {
                detail: format!("cone complex is not a single sphere (Euler characteristic {euler})"),
                cones: vec![],
            });
        }
        Ok(())
    }

    fn cones_connected(&self) -> bool {
        let n = self.max_cones.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let faces = self.two_faces();
        while let Some(c) = stack.pop() {
            for cones in faces.values() {
                if cones.contains(&c) {
                    for &d in cones {
                        if !seen[d] {
                            seen[d] = true;
                            stack.push(d);
                        }
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Fan {
        Fan::new(
            vec![
                LatticeVector::new(-1, -1, -1),
                LatticeVector::new(1, 0, 0),
                LatticeVector::new(0, 1, 0),
                LatticeVector::new(0, 0, 1),
            ],
            vec![[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]],
        )
    }

    #[test]
    fn projective_space_is_valid() {
        p3().validate().unwrap();
    }

    #[test]
    fn missing_cone_is_incomplete() {
        let mut f = p3();
        f.max_cones.pop();
        let err = f.validate().unwrap_err();
        assert!(matches!(err, Error::NotComplete { .. }));
        assert!(err.to_string().starts_with("not complete"));
    }

    #[test]
    fn non_primitive_ray_suggests_fix() {
        let mut f = p3();
        f.rays[1] = LatticeVector::new(2, 0, 0);
        assert_eq!(f.validate(), Err(Error::NonPrimitiveRay { index: 1, ray: [2, 0, 0], suggestion: [1, 0, 0] }));
    }

    #[test]
    fn degenerate_cone_is_not_simplicial() {
        let f = Fan::new(
            vec![LatticeVector::new(1, 0, 0), LatticeVector::new(0, 1, 0), LatticeVector::new(1, 1, 0)],
            vec![[0, 1, 2]],
        );
        assert!(matches!(f.validate(), Err(Error::NotSimplicial { cone: 0, .. })));
    }

    #[test]
    fn overlapping_cones_detected() {
        // P^3 plus a cone that overlaps cone 0
        let mut f = p3();
        f.rays.push(LatticeVector::new(1, 1, 1));
        f.max_cones.push([1, 2, 4]);
        assert!(matches!(f.validate(), Err(Error::BadOverlap(0, 4))));
    }

    #[test]
    fn json_schema_round_trip() {
        let text = r#"{"rays": [[-1,-1,-1],[1,0,0],[0,1,0],[0,0,1]], "max_cones": [[1,2,3],[0,2,3],[0,1,3],[0,1,2]]}"#;
        assert_eq!(Fan::from_json(text).unwrap(), p3());
    }
}
