//! Builtin varieties with named divisors.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::LatticeVector;
use crate::toric::{Fan, ToricThreefold, WeilDivisor};
use crate::wps::{self, WeightTuple};

/// A published expectation about a catalog variety, compared against the
/// computed verdict when reports are rendered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expectation {
    /// `"gorenstein"`, `"theorem1:i-iii"`, `"theorem3"` or `"theorem3:nef"`.
    pub check: String,
    pub holds: bool,
    pub statement: String,
}

#[derive(Debug, Clone)]
pub struct CatalogVariety {
    pub name: String,
    pub variety: ToricThreefold,
    /// Named divisors usable in expressions; always contains `K`.
    pub named: BTreeMap<String, WeilDivisor>,
    /// Names whose classes form a basis of `Cl(X) (x) Q`.
    pub basis: Vec<String>,
    pub default_h: String,
    pub expectations: Vec<Expectation>,
}

impl CatalogVariety {
    fn build(name: &str, variety: ToricThreefold, named: &[(&str, WeilDivisor)], basis: &[&str]) -> Self {
        let mut map: BTreeMap<String, WeilDivisor> = named.iter().map(|(n, d)| (n.to_string(), d.clone())).collect();
        map.insert("K".into(), variety.canonical_divisor());
        CatalogVariety {
            name: name.to_string(),
            variety,
            named: map,
            basis: basis.iter().map(|s| s.to_string()).collect(),
            default_h: "H".into(),
            expectations: Vec::new(),
        }
    }

    fn expect(mut self, check: &str, holds: bool, statement: &str) -> Self {
        self.expectations.push(Expectation { check: check.into(), holds, statement: statement.into() });
        self
    }

    pub fn get(&self, name: &str) -> Option<&WeilDivisor> {
        self.named.get(name)
    }

    pub fn default_h(&self) -> &WeilDivisor {
        &self.named[&self.default_h]
    }

    /// `sum c_i basis_i`.
    pub fn from_basis_coords(&self, coords: &[i64]) -> Result<WeilDivisor> {
        if coords.len() != self.basis.len() {
            return Err(Error::DivisorLength { expected: self.basis.len(), got: coords.len() });
        }
        let mut d = WeilDivisor::zero(self.variety.ray_count());
        for (c, b) in coords.iter().zip(&self.basis) {
            d = &d + &self.named[b].scale(*c);
        }
        Ok(d)
    }
}

pub const NAMES: [&str; 4] = ["P3", "P1xP1xP1", "P1xP2", "BlowupP3Line"];

fn v(x: i64, y: i64, z: i64) -> LatticeVector {
    LatticeVector::new(x, y, z)
}

fn prime(n: usize, i: usize) -> WeilDivisor {
    WeilDivisor::prime(n, i)
}

pub fn p3() -> Result<CatalogVariety> {
    let fan = Fan::new(
        vec![v(-1, -1, -1), v(1, 0, 0), v(0, 1, 0), v(0, 0, 1)],
        vec![[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]],
    );
    let x = ToricThreefold::new(fan)?;
    Ok(CatalogVariety::build("P3", x, &[("H", prime(4, 1))], &["H"]))
}

pub fn p1_p1_p1() -> Result<CatalogVariety> {
    let rays = vec![v(1, 0, 0), v(-1, 0, 0), v(0, 1, 0), v(0, -1, 0), v(0, 0, 1), v(0, 0, -1)];
    let mut cones = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                cones.push([a, b, c]);
            }
        }
    }
    let x = ToricThreefold::new(Fan::new(rays, cones))?;
    let (h1, h2, h3) = (prime(6, 0), prime(6, 2), prime(6, 4));
    let h = &(&h1 + &h2) + &h3;
    Ok(CatalogVariety::build("P1xP1xP1", x, &[("H1", h1), ("H2", h2), ("H3", h3), ("H", h)], &["H1", "H2", "H3"])
        .expect("theorem3", true, "satisfies the toric hypotheses with H = (1,1,1)"))
}

pub fn p1_p2() -> Result<CatalogVariety> {
    let rays = vec![v(1, 0, 0), v(-1, 0, 0), v(0, 1, 0), v(0, 0, 1), v(0, -1, -1)];
    let mut cones = Vec::new();
    for a in [0, 1] {
        for pair in [[2, 3], [3, 4], [2, 4]] {
            cones.push([a, pair[0], pair[1]]);
        }
    }
    let x = ToricThreefold::new(Fan::new(rays, cones))?;
    let (h1, h2) = (prime(5, 0), prime(5, 2));
    let h = &h1 + &h2;
    Ok(CatalogVariety::build("P1xP2", x, &[("H1", h1), ("H2", h2), ("H", h)], &["H1", "H2"]).expect(
        "theorem3",
        true,
        "satisfies the toric hypotheses with H = (1,1), -K-2H = (0,1)",
    ))
}

/// `P^3` blown up along the line `x1 = x2 = 0`: the extra ray `w = u0 + u3`
/// subdivides the cones containing both.
pub fn blowup_p3_line() -> Result<CatalogVariety> {
    let rays = vec![v(-1, -1, -1), v(1, 0, 0), v(0, 1, 0), v(0, 0, 1), v(-1, -1, 0)];
    let cones = vec![[1, 2, 3], [0, 1, 2], [0, 2, 4], [4, 2, 3], [0, 1, 4], [4, 1, 3]];
    let x = ToricThreefold::new(Fan::new(rays, cones))?;
    let eta1 = prime(5, 1);
    let eta2 = prime(5, 0);
    let e = prime(5, 4);
    let h = &eta1 + &eta2;
    Ok(CatalogVariety::build("BlowupP3Line", x, &[("eta1", eta1), ("eta2", eta2), ("E", e), ("H", h)], &["eta1", "E"])
        .expect("theorem3:nef", false, "-K-2H is not nef for H = eta1 + eta2"))
}

pub fn wps_variety(q: [i64; 4]) -> Result<CatalogVariety> {
    let w = WeightTuple::new(q)?;
    let x = wps::wps_fan(&w)?;
    let inv = wps::invariants(&w);
    let name = format!("wps:{},{},{},{}", q[0], q[1], q[2], q[3]);
    let mut c =
        CatalogVariety::build(&name, x, &[("eta0", inv.eta0), ("eta", inv.eta.clone()), ("H", inv.eta)], &["eta0"]);
    let sorted = w.sorted().0;
    if wps::classify(&w) != wps::Family::Unexpected {
        c = c.expect("theorem1:i-iii", true, "listed among the weights with h^0(K + eta) = 0");
    }
    if sorted == [1, 1, 1, 2] || sorted == [1, 1, 2, 2] {
        c = c.expect("gorenstein", true, "listed as satisfying the Gorenstein toric hypotheses").expect(
            "theorem3",
            true,
            "listed as satisfying the toric hypotheses with H = eta",
        );
    }
    Ok(c)
}

/// Resolve `P3`, `P1xP1xP1`, `P1xP2`, `BlowupP3Line` or `wps:q0,q1,q2,q3`.
pub fn catalog(name: &str) -> Result<CatalogVariety> {
    if let Some(rest) = name.strip_prefix("wps:") {
        let parts: Vec<i64> = rest
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::UnknownVariety(name.to_string()))?;
        let q: [i64; 4] = parts.try_into().map_err(|_| Error::UnknownVariety(name.to_string()))?;
        return wps_variety(q);
    }
    match name {
        "P3" => p3(),
        "P1xP1xP1" => p1_p1_p1(),
        "P1xP2" => p1_p2(),
        "BlowupP3Line" => blowup_p3_line(),
        _ => Err(Error::UnknownVariety(name.to_string())),
    }
}

/// Builtin names plus the weighted projective spaces used in the examples.
pub fn list() -> Vec<String> {
    let mut out: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
    for q in [[1, 1, 1, 2], [1, 1, 2, 2], [1, 1, 2, 3], [1, 2, 2, 3], [3, 3, 4, 4], [3, 3, 5, 5]] {
        out.push(format!("wps:{},{},{},{}", q[0], q[1], q[2], q[3]));
    }
    out
}
