mod common;

use common::{rng, weighted_monomials};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use toric_nl::catalog::catalog;
use toric_nl::detcurve::{
    adversarial_detected, check_avoidance, curve_invariants, determinantal_check, laplace_consistent,
    preset_parameters, section_basis, Preset, SectionMatrix,
};
use toric_nl::nl::{rr_ledger, Checker, LedgerInput};
use toric_nl::{Error, Fp};

/// Coefficient of `h^2` in `(1 + (1-k)h)^k / (1 - kh)^(k-1)`, truncated at degree 2.
fn chern_c2(k: i64) -> i64 {
    let mul =
        |a: [i64; 3], b: [i64; 3]| [a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[0] * b[2] + a[1] * b[1] + a[2] * b[0]];
    let mut f = [1, 0, 0];
    for _ in 0..k {
        f = mul(f, [1, 1 - k, 0]);
    }
    // 1 / (1 - kh) = 1 + kh + k^2 h^2
    let mut e_inv = [1, 0, 0];
    for _ in 0..k - 1 {
        e_inv = mul(e_inv, [1, k, k * k]);
    }
    let total = mul(f, e_inv);
    assert_eq!(total[1], 0, "c1 of F - E vanishes");
    total[2]
}

#[test]
fn chern_oracle_matches_degree_formula() {
    for k in 2..=6 {
        assert_eq!(chern_c2(k), k * (k - 1) / 2);
    }
}

#[test]
fn section_basis_sizes() {
    let p3 = catalog("P3").unwrap();
    let b = section_basis(&p3.variety, p3.get("H").unwrap()).unwrap();
    assert_eq!(b.len(), 4);
    assert!(b.monomials.iter().all(|m| m.iter().sum::<u64>() == 1));

    let w = catalog("wps:1,1,2,3").unwrap();
    let b = section_basis(&w.variety, w.get("eta").unwrap()).unwrap();
    assert_eq!(b.len() as u64, weighted_monomials(&[1, 1, 2, 3], 6));
    assert_eq!(b.len(), 23);

    let c = catalog("P1xP2").unwrap();
    assert_eq!(section_basis(&c.variety, c.get("H").unwrap()).unwrap().len(), 6);

    let neg = p3.get("H").unwrap().scale(-1);
    assert!(matches!(section_basis(&p3.variety, &neg), Err(Error::NoSections(_))));
}

#[test]
fn laplace_identity_at_random_points() {
    let p = 10007;
    let w = catalog("wps:1,1,2,3").unwrap();
    let basis = section_basis(&w.variety, w.get("eta").unwrap()).unwrap();
    let mut r = rng(21);
    for k in 2..=6 {
        let m = SectionMatrix::random(&basis, k, p, 100 + k as u64);
        for _ in 0..100 {
            let point: Vec<Fp> = (0..4).map(|_| Fp::new(r.gen_range(0..p), p)).collect();
            assert!(laplace_consistent(&m.evaluate(&basis, &point)), "k={k}");
        }
    }
}

#[test]
fn projective_space_curve_invariants() {
    let p3 = catalog("P3").unwrap();
    let chk = Checker::new(&p3.variety);
    let h = p3.get("H").unwrap();
    // classical linear determinantal curves: line, twisted cubic, (6,3), (10,11)
    let classical = [(2, 1, 0), (3, 3, 0), (4, 6, 3), (5, 10, 11)];
    for (k, deg, genus) in classical {
        let inv = curve_invariants(&chk, h, k).unwrap();
        assert_eq!(inv.degree, Some(BigRational::from_integer(BigInt::from(deg))));
        assert_eq!(inv.genus, genus, "k={k}");
    }
    assert_eq!(curve_invariants(&chk, h, 6).unwrap().genus, 26);
    assert_eq!(curve_invariants(&chk, h, 7).unwrap().genus, 50);
    assert_eq!(curve_invariants(&chk, h, 1), Err(Error::KTooSmall(1)));
}

#[test]
fn ledger_closes_on_projective_space() {
    let p3 = catalog("P3").unwrap();
    let chk = Checker::new(&p3.variety);
    let h = p3.get("H").unwrap();
    for d in 0..=5i64 {
        let (k, _) = preset_parameters(Preset::Theorem3, &p3.variety, h, d).unwrap();
        let inv = curve_invariants(&chk, h, k).unwrap();
        let degree = inv.degree.unwrap().to_integer();
        let deg: i64 = (degree * BigInt::from(d)).try_into().unwrap();
        let target = chk.h(0, &h.scale(d)).unwrap() as i64;
        let r = rr_ledger(LedgerInput { deg_omega_l_c: deg, genus: inv.genus, h0_target: target });
        assert!(r.pass, "d={d}: {}", r.line);
        assert_eq!(r.implied_h1, 0, "d={d}: {}", r.line);
    }
}

#[test]
fn avoidance_on_smooth_space_is_vacuous() {
    let p3 = catalog("P3").unwrap();
    let v = check_avoidance(&p3.variety, p3.get("H").unwrap(), 3, 10007, 5, 1).unwrap();
    assert!(v.vacuous && v.pass);
    assert_eq!(adversarial_detected(&p3.variety, p3.get("H").unwrap(), 3, 10007, 1).unwrap(), None);
}

#[test]
fn avoidance_on_weighted_space() {
    let w = catalog("wps:1,1,2,3").unwrap();
    let eta = w.get("eta").unwrap();
    let v = check_avoidance(&w.variety, eta, 3, 10007, 20, 7).unwrap();
    assert!(!v.vacuous);
    assert!(v.pass, "{:?}", v.fail_points);
    assert_eq!(v.strata.len(), w.variety.singular_cones().len());
    assert!(v.strata.iter().all(|s| s.vanishing_minors.len() == 20));
    // deterministic given the seed
    assert_eq!(v, check_avoidance(&w.variety, eta, 3, 10007, 20, 7).unwrap());
    for k in 2..=4 {
        assert_eq!(adversarial_detected(&w.variety, eta, k, 10007, 3).unwrap(), Some(true), "k={k}");
    }
}

#[test]
fn avoidance_input_errors() {
    let w = catalog("wps:1,1,2,3").unwrap();
    let eta = w.get("eta").unwrap();
    assert_eq!(check_avoidance(&w.variety, eta, 1, 10007, 1, 0), Err(Error::KTooSmall(1)));
    assert_eq!(check_avoidance(&w.variety, eta, 2, 10001, 1, 0), Err(Error::BadPrime(10001)));
    assert_eq!(check_avoidance(&w.variety, eta, 2, 997, 1, 0), Err(Error::BadPrime(997)));
    assert_eq!(check_avoidance(&w.variety, eta, 2, 10007, 0, 0), Err(Error::NoTrials));
}

#[test]
fn determinantal_battery_examples() {
    let p3 = catalog("P3").unwrap();
    let h = p3.get("H").unwrap();
    let (k, l) = preset_parameters(Preset::Theorem3, &p3.variety, h, 1).unwrap();
    assert_eq!(k, 3);
    assert!(p3.variety.linearly_equivalent(&l, &h.scale(5)).unwrap());
    let r = determinantal_check(&Checker::new(&p3.variety), &l, h, k).unwrap();
    assert!(r.all_pass(), "{r:?}");

    let c = catalog("P1xP2").unwrap();
    let h = c.get("H").unwrap();
    let (k, l) = preset_parameters(Preset::Theorem3, &c.variety, h, 0).unwrap();
    assert_eq!(k, 2);
    let r = determinantal_check(&Checker::new(&c.variety), &l, h, k).unwrap();
    assert!(r.all_pass(), "{r:?}");

    let bl = catalog("BlowupP3Line").unwrap();
    let h = bl.get("H").unwrap();
    let (k, l) = preset_parameters(Preset::Theorem3, &bl.variety, h, 1).unwrap();
    let r = determinantal_check(&Checker::new(&bl.variety), &l, h, k).unwrap();
    let gg = r.condition("(h)").unwrap();
    assert!(!gg.verdict);
    assert!(r.condition("det E = det F").unwrap().verdict);
}

#[test]
fn presets() {
    let p3 = catalog("P3").unwrap();
    let h = p3.get("H").unwrap();
    assert_eq!(preset_parameters(Preset::Theorem1, &p3.variety, h, 4).unwrap(), (4, h.scale(4)));
    assert_eq!(preset_parameters(Preset::Theorem1, &p3.variety, h, 1), Err(Error::KTooSmall(1)));
}
