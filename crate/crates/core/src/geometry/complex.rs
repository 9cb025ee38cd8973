//! Finite abstract simplicial complexes and their reduced rational homology.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::rank;

/// A complex on vertices `0..vertex_count`, given by generating faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
}

/// Reduced Betti numbers `b~_{-1}, b~_0, b~_1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedBetti(Vec<usize>);

impl ReducedBetti {
    /// `b~_i` for `i >= -1`; zero beyond the top dimension.
    pub fn get(&self, i: isize) -> usize {
        usize::try_from(i + 1).ok().and_then(|k| self.0.get(k).copied()).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// `(b~_{-1}, b~_0, b~_1, b~_2)`.
    pub fn first_four(&self) -> [usize; 4] {
        [self.get(-1), self.get(0), self.get(1), self.get(2)]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl SimplicialComplex {
    pub fn new(vertex_count: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        for (fi, f) in facets.iter().enumerate() {
            if let Some(&v) = f.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::UnknownVertex { facet: fi, vertex: v });
            }
        }
        let facets = facets
            .into_iter()
            .map(|f| f.into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>())
            .filter(|f| !f.is_empty())
            .collect();
        Ok(SimplicialComplex { vertex_count, facets })
    }

    pub fn empty() -> Self {
        SimplicialComplex { vertex_count: 0, facets: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Nonempty faces grouped by dimension.
    pub fn faces(&self) -> Vec<Vec<Vec<usize>>> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for f in &self.facets {
            let n = f.len();
            for mask in 1u64..(1u64 << n) {
                let face: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(face);
            }
        }
        by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Full subcomplex on the vertices selected by `keep`.
    pub fn induced(&self, keep: &[bool]) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().copied().filter(|&v| keep[v]).collect::<Vec<_>>())
            .filter(|f| !f.is_empty())
            .collect();
        SimplicialComplex { vertex_count: self.vertex_count, facets }
    }

    /// Cone over the complex with a new apex vertex.
    pub fn cone(&self) -> SimplicialComplex {
        let apex = self.vertex_count;
        let mut facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g.push(apex);
                g
            })
            .collect();
        if facets.is_empty() {
            facets.push(vec![apex]);
        }
        SimplicialComplex { vertex_count: apex + 1, facets }
    }

    /// Reduced homology ranks over the rationals; the empty complex has `b~_{-1} = 1`.
    pub fn reduced_betti(&self) -> ReducedBetti {
        let faces = self.faces();
        // chain groups C_{-1} (the empty face), C_0, C_1, ...
        let mut dims = vec![1usize];
        dims.extend(faces.iter().map(Vec::len));
        let index: Vec<BTreeMap<&Vec<usize>, usize>> =
            faces.iter().map(|fs| fs.iter().enumerate().map(|(i, f)| (f, i)).collect()).collect();

        // rank of the boundary C_d -> C_{d-1}, stored at position d + 1
        let mut ranks = vec![0usize; dims.len() + 1];
        for d in 0..faces.len() {
            let rows = dims[d];
            let mut m = vec![vec![BigRational::zero(); faces[d].len()]; rows];
            for (j, face) in faces[d].iter().enumerate() {
                if d == 0 {
                    m[0][j] = BigRational::one();
                    continue;
                }
                for skip in 0..face.len() {
                    let sub: Vec<usize> =
                        face.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let row = index[d - 1][&sub];
                    let sign = if skip % 2 == 0 { 1 } else { -1 };
                    m[row][j] = BigRational::from_integer(sign.into());
                }
            }
            ranks[d + 1] = rank(&m);
        }
        let betti = (0..dims.len()).map(|k| dims[k] - ranks[k] - ranks[k + 1]).collect();
        ReducedBetti(betti)
    }
}
