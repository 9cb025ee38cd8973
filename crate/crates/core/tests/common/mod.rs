//! Independent oracles shared by the integration tests. Nothing here calls
//! into the chamber machinery; only fan data and divisors are read from the
//! library.

#![allow(dead_code)]

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_nl::toric::{ToricThreefold, WeilDivisor};

type Q = Ratio<i128>;

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, |row| row.len());
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c];
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c] / pivot;
                for j in c..cols {
                    let v = rows[r][j];
                    rows[i][j] -= f * v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Reduced Betti numbers `b~_{-1..2}` of the full subcomplex of the fan's
/// boundary sphere on the rays in `mask`.
pub fn induced_betti(x: &ToricThreefold, mask: u64) -> [usize; 4] {
    let inside = |r: usize| mask >> r & 1 == 1;
    let verts: Vec<usize> = (0..x.ray_count()).filter(|&r| inside(r)).collect();
    let mut edges: Vec<[usize; 2]> = Vec::new();
    for c in x.max_cones() {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let e = [c[i].min(c[j]), c[i].max(c[j])];
            if inside(e[0]) && inside(e[1]) && !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    let tris: Vec<[usize; 3]> = x
        .max_cones()
        .iter()
        .filter(|c| c.iter().all(|&r| inside(r)))
        .map(|c| {
            let mut s = *c;
            s.sort_unstable();
            s
        })
        .collect();
    // chain groups C_{-1} = Q, C_0 = verts, C_1 = edges, C_2 = tris
    let dims = [1, verts.len(), edges.len(), tris.len()];
    let d0: Vec<Vec<Q>> = vec![vec![Q::one(); verts.len()]];
    let vi = |v: usize| verts.iter().position(|&w| w == v).unwrap();
    let mut d1 = vec![vec![Q::zero(); edges.len()]; verts.len()];
    for (k, e) in edges.iter().enumerate() {
        d1[vi(e[0])][k] = -Q::one();
        d1[vi(e[1])][k] = Q::one();
    }
    let ei = |a: usize, b: usize| edges.iter().position(|e| *e == [a, b]).unwrap();
    let mut d2 = vec![vec![Q::zero(); tris.len()]; edges.len()];
    for (k, t) in tris.iter().enumerate() {
        d2[ei(t[1], t[2])][k] += Q::one();
        d2[ei(t[0], t[2])][k] -= Q::one();
        d2[ei(t[0], t[1])][k] += Q::one();
    }
    let ranks = [
        if verts.is_empty() { 0 } else { rank(d0) },
        if edges.is_empty() { 0 } else { rank(d1) },
        if tris.is_empty() { 0 } else { rank(d2) },
        0,
    ];
    // b~_i = dim C_i - rank(d_i) - rank(d_{i+1}); d_{-1} = 0
    let mut b = [0usize; 4];
    for i in 0..4 {
        let out = if i == 0 { 0 } else { ranks[i - 1] };
        b[i] = dims[i] - out - ranks[i];
    }
    b
}

/// `<m, u> = v` for three rays; exact rational solution.
fn solve3(n: [[i64; 3]; 3], v: [i64; 3]) -> Option<[Q; 3]> {
    let det = |a: [[i64; 3]; 3]| -> i128 {
        let a = a.map(|r| r.map(i128::from));
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det(n);
    if d == 0 {
        return None;
    }
    let mut out = [Q::zero(); 3];
    for (col, slot) in out.iter_mut().enumerate() {
        let mut m = n;
        for row in 0..3 {
            m[row][col] = v[row];
        }
        *slot = Q::new(det(m), d);
    }
    Some(out)
}

/// Radius of a box containing every vertex of every cell of the arrangement
/// `<m,u> = -a`, `<m,u> = -a-1`: all bounded cells lie inside it.
pub fn certified_radius(x: &ToricThreefold, d: &WeilDivisor) -> i64 {
    let mut planes: Vec<([i64; 3], i64)> = Vec::new();
    for (u, &a) in x.rays().iter().zip(&d.coeffs) {
        planes.push((u.0, -a));
        planes.push((u.0, -a - 1));
    }
    let mut r = 0i64;
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            for k in j + 1..planes.len() {
                let n = [planes[i].0, planes[j].0, planes[k].0];
                if let Some(p) = solve3(n, [planes[i].1, planes[j].1, planes[k].1]) {
                    for c in p {
                        let bound = num_traits::Signed::abs(&c).ceil().to_integer() as i64;
                        r = r.max(bound);
                    }
                }
            }
        }
    }
    r + 1
}

/// `h^p(O(D)) = sum_m b~_{p-1}(V_{D,m})` summed over a certified box.
pub fn brute_cohomology(x: &ToricThreefold, d: &WeilDivisor) -> [u64; 4] {
    let r = certified_radius(x, d);
    let mut memo: HashMap<u64, [usize; 4]> = HashMap::new();
    let mut h = [0u64; 4];
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let mut mask = 0u64;
                for (i, (u, &coef)) in x.rays().iter().zip(&d.coeffs).enumerate() {
                    if a * u.0[0] + b * u.0[1] + c * u.0[2] < -coef {
                        mask |= 1 << i;
                    }
                }
                let betti = *memo.entry(mask).or_insert_with(|| induced_betti(x, mask));
                for p in 0..4 {
                    h[p] += betti[p] as u64;
                }
            }
        }
    }
    h
}

/// Monomials of weighted degree `deg` for weights `q`, by dynamic programming.
pub fn weighted_monomials(q: &[i64], deg: i64) -> u64 {
    if deg < 0 {
        return 0;
    }
    let mut ways = vec![0u64; deg as usize + 1];
    ways[0] = 1;
    for &w in q {
        for t in w as usize..=deg as usize {
            ways[t] += ways[t - w as usize];
        }
    }
    ways[deg as usize]
}

pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_divisor(rng: &mut ChaCha8Rng, rays: usize, lo: i64, hi: i64) -> WeilDivisor {
    WeilDivisor::new((0..rays).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// Catalog used by the oracle suites.
pub const VARIETIES: [&str; 9] = [
    "P3",
    "P1xP1xP1",
    "P1xP2",
    "BlowupP3Line",
    "wps:1,1,2,3",
    "wps:1,1,2,2",
    "wps:1,1,1,2",
    "wps:1,2,2,3",
    "wps:3,3,4,4",
];
