//! Rational polyhedra in `M_Q = Q^3` given by integral half-spaces.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::fm::{feasible, LinearConstraint};
use super::lattice::{intersect_planes, LatticeVector, RatPoint};
use crate::error::{Error, Result};
use crate::linalg::{determinant, rank};

/// The half-space `<m, normal> >= -offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: LatticeVector,
    pub offset: i64,
}

impl HalfSpace {
    pub fn new(normal: LatticeVector, offset: i64) -> Self {
        HalfSpace { normal, offset }
    }

    pub fn contains(&self, m: &LatticeVector) -> bool {
        m.dot(&self.normal) >= -self.offset
    }

    fn contains_rational(&self, p: &RatPoint) -> bool {
        p.scaled_dot(&self.normal) >= -i128::from(self.offset) * p.denominator()
    }

    fn on_boundary(&self, p: &RatPoint) -> bool {
        p.scaled_dot(&self.normal) == -i128::from(self.offset) * p.denominator()
    }
}

#[derive(Debug, Clone)]
enum Shape {
    Empty,
    Bounded(Vec<RatPoint>),
    Unbounded,
}

/// Intersection of finitely many integral half-spaces.
///
/// Emptiness, boundedness and the vertex set are computed on first use and
/// cached.
#[derive(Debug, Clone)]
pub struct RationalPolyhedron {
    inequalities: Vec<HalfSpace>,
    shape: OnceLock<Shape>,
}

impl PartialEq for RationalPolyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.inequalities == other.inequalities
    }
}

impl RationalPolyhedron {
    pub fn new(inequalities: Vec<HalfSpace>) -> Self {
        RationalPolyhedron { inequalities, shape: OnceLock::new() }
    }

    /// `conv{0, k e1, k e2, k e3}`.
    pub fn standard_simplex(k: i64) -> Self {
        RationalPolyhedron::new(vec![
            HalfSpace::new(LatticeVector::new(1, 0, 0), 0),
            HalfSpace::new(LatticeVector::new(0, 1, 0), 0),
            HalfSpace::new(LatticeVector::new(0, 0, 1), 0),
            HalfSpace::new(LatticeVector::new(-1, -1, -1), k),
        ])
    }

    pub fn inequalities(&self) -> &[HalfSpace] {
        &self.inequalities
    }

    pub fn contains(&self, m: &LatticeVector) -> bool {
        self.inequalities.iter().all(|h| h.contains(m))
    }

    /// `P + t`.
    pub fn translate(&self, t: &LatticeVector) -> Self {
        RationalPolyhedron::new(
            self.inequalities.iter().map(|h| HalfSpace::new(h.normal, h.offset - t.dot(&h.normal))).collect(),
        )
    }

    /// Image under `m -> g m` for `g` unimodular; `g_inv_t` is the inverse transpose of `g`.
    pub fn transform(&self, g_inv_t: &[[i64; 3]; 3]) -> Self {
        RationalPolyhedron::new(
            self.inequalities
                .iter()
                .map(|h| {
                    let n = h.normal.0;
                    let mut out = [0i64; 3];
                    for (i, row) in g_inv_t.iter().enumerate() {
                        out[i] = row[0] * n[0] + row[1] * n[1] + row[2] * n[2];
                    }
                    HalfSpace::new(LatticeVector(out), h.offset)
                })
                .collect(),
        )
    }

    fn shape(&self) -> Result<&Shape> {
        if let Some(s) = self.shape.get() {
            return Ok(s);
        }
        let computed = self.compute_shape()?;
        Ok(self.shape.get_or_init(|| computed))
    }

    fn recession_is_trivial(&self) -> bool {
        let normals: Vec<LatticeVector> = self.inequalities.iter().map(|h| h.normal).collect();
        let as_q: Vec<Vec<BigRational>> =
            normals.iter().map(|n| n.0.iter().map(|&c| BigRational::from_integer(c.into())).collect()).collect();
        if rank(&as_q) < 3 {
            return false;
        }
        // a nonzero pointed recession cone has an extreme ray on two independent facets
        for (i, a) in normals.iter().enumerate() {
            for b in &normals[i + 1..] {
                let c = a.cross(b);
                if c.is_zero() {
                    continue;
                }
                for dir in [c, -c] {
                    if normals.iter().all(|n| n.dot(&dir) >= 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn compute_shape(&self) -> Result<Shape> {
        if !self.recession_is_trivial() {
            let cs: Vec<LinearConstraint> = self
                .inequalities
                .iter()
                .map(|h| LinearConstraint::ge(h.normal.0.map(i128::from).to_vec(), -i128::from(h.offset)))
                .collect();
            return Ok(if feasible(&cs)? { Shape::Unbounded } else { Shape::Empty });
        }
        let hs = &self.inequalities;
        let mut vertices = BTreeSet::new();
        for i in 0..hs.len() {
            for j in i + 1..hs.len() {
                for k in j + 1..hs.len() {
                    let Some(p) = intersect_planes(
                        [hs[i].normal, hs[j].normal, hs[k].normal],
                        [-hs[i].offset, -hs[j].offset, -hs[k].offset],
                    ) else {
                        continue;
                    };
                    if hs.iter().all(|h| h.contains_rational(&p)) {
                        vertices.insert(p);
                    }
                }
            }
        }
        Ok(if vertices.is_empty() { Shape::Empty } else { Shape::Bounded(vertices.into_iter().collect()) })
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(matches!(self.shape()?, Shape::Empty))
    }

    /// Bounded (the empty set counts as bounded).
    pub fn is_bounded(&self) -> Result<bool> {
        Ok(!matches!(self.shape()?, Shape::Unbounded))
    }

    pub fn vertices(&self) -> Result<&[RatPoint]> {
        match self.shape()? {
            Shape::Empty => Ok(&[]),
            Shape::Bounded(v) => Ok(v),
            Shape::Unbounded => Err(Error::Unbounded),
        }
    }

    /// Integer bounding box `(lo, hi)`, `None` when empty.
    pub fn bounding_box(&self) -> Result<Option<([i64; 3], [i64; 3])>> {
        let vs = self.vertices()?;
        if vs.is_empty() {
            return Ok(None);
        }
        let mut lo = [i64::MAX; 3];
        let mut hi = [i64::MIN; 3];
        for v in vs {
            for a in 0..3 {
                lo[a] = lo[a].min(v.ceil(a));
                hi[a] = hi[a].max(v.floor(a));
            }
        }
        Ok(Some((lo, hi)))
    }

    /// All lattice points, in lexicographic order.
    pub fn lattice_points(&self) -> Result<Vec<LatticeVector>> {
        let mut out = Vec::new();
        self.for_each_lattice_point(|m| out.push(m))?;
        Ok(out)
    }

    pub fn count_lattice_points(&self) -> Result<u64> {
        let mut n = 0u64;
        self.for_each_lattice_point(|_| n += 1)?;
        Ok(n)
    }

    fn for_each_lattice_point(&self, mut f: impl FnMut(LatticeVector)) -> Result<()> {
        let Some((lo, hi)) = self.bounding_box()? else {
            return Ok(());
        };
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                for z in lo[2]..=hi[2] {
                    let m = LatticeVector::new(x, y, z);
                    if self.contains(&m) {
                        f(m);
                    }
                }
            }
        }
        Ok(())
    }

    /// `3!` times the Euclidean volume; zero for lower-dimensional polytopes.
    pub fn normalized_volume(&self) -> Result<BigRational> {
        let verts: Vec<RatPoint> = self.vertices()?.to_vec();
        if verts.len() < 4 {
            return Ok(BigRational::zero());
        }
        let big: Vec<[BigRational; 3]> = verts.iter().map(|v| v.to_big()).collect();
        let diffs: Vec<Vec<BigRational>> =
            big[1..].iter().map(|p| (0..3).map(|a| p[a].clone() - big[0][a].clone()).collect()).collect();
        if rank(&diffs) < 3 {
            return Ok(BigRational::zero());
        }

        // facets as vertex-index sets, apex = vertex 0
        let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for h in &self.inequalities {
            let on: Vec<usize> = (0..verts.len()).filter(|&i| h.on_boundary(&verts[i])).collect();
            if on.len() >= 3 {
                facets.insert(on);
            }
        }
        let mut total = BigRational::zero();
        for facet in &facets {
            if facet.contains(&0) {
                continue;
            }
            let normal = self
                .inequalities
                .iter()
                .find(|h| facet.iter().all(|&i| h.on_boundary(&verts[i])))
                .map(|h| h.normal)
                .expect("facet has a defining inequality");
            let ring = convex_polygon_order(facet, &big, &normal);
            for w in 1..ring.len().saturating_sub(1) {
                let rows: Vec<Vec<BigRational>> = [ring[0], ring[w], ring[w + 1]]
                    .iter()
                    .map(|&i| (0..3).map(|a| big[i][a].clone() - big[0][a].clone()).collect())
                    .collect();
                total += determinant(&rows).abs();
            }
        }
        Ok(total)
    }
}

fn orient(a: &[BigRational; 3], b: &[BigRational; 3], c: &[BigRational; 3], n: &LatticeVector) -> BigRational {
    let u: Vec<BigRational> = (0..3).map(|i| b[i].clone() - a[i].clone()).collect();
    let v: Vec<BigRational> = (0..3).map(|i| c[i].clone() - a[i].clone()).collect();
    let cross = [
        u[1].clone() * v[2].clone() - u[2].clone() * v[1].clone(),
        u[2].clone() * v[0].clone() - u[0].clone() * v[2].clone(),
        u[0].clone() * v[1].clone() - u[1].clone() * v[0].clone(),
    ];
    cross
        .iter()
        .zip(n.0.iter())
        .fold(BigRational::zero(), |acc, (x, &k)| acc + x.clone() * BigRational::from_integer(BigInt::from(k)))
}

/// Cyclic order of the vertices of a planar convex polygon (gift wrapping).
fn convex_polygon_order(facet: &[usize], pts: &[[BigRational; 3]], normal: &LatticeVector) -> Vec<usize> {
    let start = facet[0];
    let mut ring = vec![start];
    let mut current = start;
    loop {
        let mut candidate = *facet.iter().find(|&&i| i != current).unwrap();
        for &r in facet {
            if r == current || r == candidate {
                continue;
            }
            if orient(&pts[current], &pts[candidate], &pts[r], normal).is_negative() {
                candidate = r;
            }
        }
        if candidate == start {
            break;
        }
        ring.push(candidate);
        current = candidate;
        if ring.len() > facet.len() {
            break;
        }
    }
    ring
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn simplex_lattice_points() {
        assert_eq!(RationalPolyhedron::standard_simplex(1).lattice_points().unwrap().len(), 4);
        assert_eq!(RationalPolyhedron::standard_simplex(2).lattice_points().unwrap().len(), 10);
        let pts = RationalPolyhedron::standard_simplex(1).lattice_points().unwrap();
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted);
    }

    #[test]
    fn half_space_is_unbounded() {
        let p = RationalPolyhedron::new(vec![HalfSpace::new(LatticeVector::new(1, 0, 0), 0)]);
        assert_eq!(p.lattice_points(), Err(Error::Unbounded));
        assert!(!p.is_bounded().unwrap());
    }

    #[test]
    fn infeasible_unbounded_system_is_empty() {
        let p = RationalPolyhedron::new(vec![
            HalfSpace::new(LatticeVector::new(1, 0, 0), -2),
            HalfSpace::new(LatticeVector::new(-1, 0, 0), 1),
        ]);
        assert!(p.is_empty().unwrap());
        assert!(p.lattice_points().unwrap().is_empty());
    }

    #[test]
    fn simplex_volumes() {
        assert_eq!(RationalPolyhedron::standard_simplex(1).normalized_volume().unwrap(), q(1));
        for d in 1..6 {
            assert_eq!(RationalPolyhedron::standard_simplex(d).normalized_volume().unwrap(), q(d * d * d));
        }
    }

    #[test]
    fn cube_volume_and_flat_polytope() {
        let cube = RationalPolyhedron::new(
            (0..3)
                .flat_map(|a| {
                    let mut e = [0; 3];
                    e[a] = 1;
                    let v = LatticeVector(e);
                    [HalfSpace::new(v, 0), HalfSpace::new(-v, 2)]
                })
                .collect(),
        );
        assert_eq!(cube.normalized_volume().unwrap(), q(48));
        assert_eq!(cube.lattice_points().unwrap().len(), 27);
        let flat = RationalPolyhedron::new(vec![
            HalfSpace::new(LatticeVector::new(0, 0, 1), 0),
            HalfSpace::new(LatticeVector::new(0, 0, -1), 0),
            HalfSpace::new(LatticeVector::new(1, 0, 0), 0),
            HalfSpace::new(LatticeVector::new(0, 1, 0), 0),
            HalfSpace::new(LatticeVector::new(-1, -1, 0), 1),
        ]);
        assert_eq!(flat.normalized_volume().unwrap(), q(0));
        assert_eq!(flat.lattice_points().unwrap().len(), 3);
    }
}
