use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize, Serializer};

use crate::cohomology::{is_globally_generated, triple_intersection};
use crate::error::{Error, Result};
use crate::nl::{Checker, HypothesisReport};
use crate::toric::{ToricThreefold, WeilDivisor};

fn as_string<S: Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub k: usize,
    /// `k(k-1)/2 * H^3`; absent when `H` is not nef Cartier.
    #[serde(serialize_with = "as_string")]
    pub degree: Option<BigRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_note: Option<String>,
    /// `k chi((1-k)H) - (k-1) chi(-kH)`.
    pub genus: i64,
    pub genus_label: String,
}

/// Degree and expected genus of the degeneracy locus of a general map
/// `O(-kH)^(k-1) -> O((1-k)H)^k`.
pub fn curve_invariants(checker: &Checker<'_>, h: &WeilDivisor, k: usize) -> Result<CurveInvariants> {
    if k < 2 {
        return Err(Error::KTooSmall(k as i64));
    }
    let x = checker.x;
    let ki = k as i64;
    let (degree, degree_note) = match triple_intersection(x, h, h, h) {
        Ok(h3) => (Some(h3 * BigRational::from_integer(BigInt::from(ki * (ki - 1) / 2))), None),
        Err(Error::NotNefCartier(why)) => (None, Some(format!("degree refused: {why}"))),
        Err(e) => return Err(e),
    };
    let chi_f = checker.table(&h.scale(1 - ki))?.chi;
    let chi_e = checker.table(&h.scale(-ki))?.chi;
    Ok(CurveInvariants {
        k,
        degree,
        degree_note,
        genus: ki * chi_f - (ki - 1) * chi_e,
        genus_label: "expected genus (generic matrix)".into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// `k = d`, `L = dH`
    Theorem1,
    /// `k = d + 2`, `L = -K + dH`
    Theorem3,
}

pub fn preset_parameters(preset: Preset, x: &ToricThreefold, h: &WeilDivisor, d: i64) -> Result<(usize, WeilDivisor)> {
    let (k, l) = match preset {
        Preset::Theorem1 => (d, h.scale(d)),
        Preset::Theorem3 => (d + 2, &-x.canonical_divisor() + &h.scale(d)),
    };
    if k < 2 {
        return Err(Error::KTooSmall(k));
    }
    Ok((k as usize, l))
}

/// Conditions (a)-(h) for the split bundles `E = O(-kH)^(k-1)`,
/// `F = O((1-k)H)^k`, each reduced to line-bundle cohomology.
pub fn determinantal_check(
    checker: &Checker<'_>,
    l: &WeilDivisor,
    h: &WeilDivisor,
    k: usize,
) -> Result<HypothesisReport> {
    if k < 2 {
        return Err(Error::KTooSmall(k as i64));
    }
    let x = checker.x;
    x.check_divisor(l)?;
    x.check_divisor(h)?;
    let ki = k as i64;
    let kx = x.canonical_divisor();
    let zero = WeilDivisor::zero(x.ray_count());
    let f = h.scale(1 - ki);
    let e = h.scale(-ki);
    let mut r = HypothesisReport {
        theorem_id: "determinantal".into(),
        conditions: Vec::new(),
        codim: None,
        bounds: None,
        notes: Vec::new(),
    };
    let mut push = |label: &str, ok: bool, witness: String| {
        r.conditions.push(crate::nl::Condition { label: label.into(), verdict: ok, witness });
    };

    let det_e_minus_det_f = &e.scale(ki - 1) - &f.scale(ki);
    let det_ok = x.class_of(&det_e_minus_det_f)?.is_zero();
    push("det E = det F", det_ok, format!("(k-1)(-k) + k(k-1) = 0 for k = {k}"));

    let o = checker.table(&zero)?;
    push("(a) h^i(O_X) = 0 for i > 0", o.higher_vanish(), format!("h(O_X) = {:?}", o.h));
    let b = checker.h(1, &(&f + l))?;
    push("(b) h^1((1-k)H + L) = 0", b == 0, format!("h^1 = {b}"));
    let c = checker.h(2, &(&e + l))?;
    push("(c) h^2(-kH + L) = 0", c == 0, format!("h^2 = {c}"));
    let td = checker.table(&(&(&kx + &f) + l))?;
    push("(d) h^0, h^1(K + (1-k)H + L) = 0", td.h[0] == 0 && td.h[1] == 0, format!("h = {:?}", td.h));
    let te = checker.table(&(&(&kx + &e) + l))?;
    push("(e) h^1, h^2(K - kH + L) = 0", te.h[1] == 0 && te.h[2] == 0, format!("h = {:?}", te.h));
    let h3 = checker.h(3, &-h.clone())?;
    push("(f) h^2(O_X) = 0 and h^3(-H) = 0", o.h[2] == 0 && h3 == 0, format!("h^2(O) = {}, h^3(-H) = {h3}", o.h[2]));
    let h1 = checker.h(1, h)?;
    push("(g) h^1(H) = 0 and h^2(O_X) = 0", h1 == 0 && o.h[2] == 0, format!("h^1(H) = {h1}, h^2(O) = {}", o.h[2]));
    let twist = l - &h.scale(ki);
    let gg = is_globally_generated(x, &twist)?;
    push("(h) L - kH globally generated", gg.holds, gg.detail);
    Ok(r)
}
