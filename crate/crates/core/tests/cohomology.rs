mod common;

use common::{binomial, brute_cohomology, random_divisor, rng, weighted_monomials};
use num_bigint::BigInt;
use num_rational::BigRational;
use toric_nl::catalog::catalog;
use toric_nl::cohomology::{
    cohomology, euler_char, h0, is_ample, is_globally_generated, is_nef, sheaf_generated_by_sections,
    triple_intersection, very_ampleness, CohomologyCache, SupportFunctionCertificate,
};
use toric_nl::toric::WeilDivisor;
use toric_nl::Error;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn projective_space_line_bundles() {
    let c = catalog("P3").unwrap();
    let h = c.get("H").unwrap();
    assert_eq!(cohomology(&c.variety, &h.scale(-4)).unwrap().h, [0, 0, 0, 1]);
    assert_eq!(cohomology(&c.variety, h).unwrap().h, [4, 0, 0, 0]);
    assert_eq!(euler_char(&c.variety, &h.scale(-2)).unwrap(), 0);
    assert_eq!(euler_char(&c.variety, &h.scale(-4)).unwrap(), -1);
    assert_eq!(euler_char(&c.variety, &h.scale(2)).unwrap(), 10);
    for d in 0..8 {
        assert_eq!(h0(&c.variety, &h.scale(d)).unwrap(), binomial(d + 3, 3));
    }
}

#[test]
fn kunneth_on_triple_product() {
    let c = catalog("P1xP1xP1").unwrap();
    let d = c.from_basis_coords(&[-2, 0, 0]).unwrap();
    assert_eq!(cohomology(&c.variety, &d).unwrap().h, [0, 1, 0, 0]);
    let h = c.get("H").unwrap();
    for d in 0..5 {
        assert_eq!(h0(&c.variety, &h.scale(d)).unwrap(), ((d + 1) * (d + 1) * (d + 1)) as u64);
    }
}

#[test]
fn wps_sections_match_weighted_monomials() {
    for w in [[1, 1, 2, 3], [1, 1, 2, 2], [3, 3, 4, 4], [3, 3, 5, 5], [1, 2, 2, 3], [2, 3, 5, 7]] {
        let name = format!("wps:{},{},{},{}", w[0], w[1], w[2], w[3]);
        let c = catalog(&name).unwrap();
        let eta0 = c.get("eta0").unwrap();
        let delta = w.iter().fold(1i64, |l, &x| num_integer::lcm(l, x));
        assert_eq!(h0(&c.variety, c.get("eta").unwrap()).unwrap(), weighted_monomials(&w, delta), "{name}");
        for t in -3..8 {
            assert_eq!(h0(&c.variety, &eta0.scale(t)).unwrap(), weighted_monomials(&w, t), "{name} t={t}");
        }
        let sigma: i64 = w.iter().sum();
        let k = c.get("K").unwrap();
        assert!(c.variety.linearly_equivalent(&-k.clone(), &eta0.scale(sigma)).unwrap());
    }
    let c = catalog("wps:1,1,2,3").unwrap();
    let k_plus_eta = c.get("K").unwrap() + c.get("eta").unwrap();
    assert_eq!(h0(&c.variety, &k_plus_eta).unwrap(), 0);
}

#[test]
fn positivity_examples() {
    let p3 = catalog("P3").unwrap();
    let h = p3.get("H").unwrap();
    assert!(is_ample(&p3.variety, h).unwrap().holds);
    assert!(is_nef(&p3.variety, h).unwrap().holds);
    assert!(is_globally_generated(&p3.variety, h).unwrap().holds);
    assert!(very_ampleness(&p3.variety, h).unwrap().is_very_ample());

    let p1p2 = catalog("P1xP2").unwrap();
    let d = p1p2.from_basis_coords(&[0, 1]).unwrap();
    let minus_k_2h = &-p1p2.get("K").unwrap().clone() - &p1p2.get("H").unwrap().scale(2);
    assert!(p1p2.variety.linearly_equivalent(&d, &minus_k_2h).unwrap());
    assert!(is_nef(&p1p2.variety, &minus_k_2h).unwrap().holds);
    assert!(!is_ample(&p1p2.variety, &minus_k_2h).unwrap().holds);

    let bl = catalog("BlowupP3Line").unwrap();
    let d = &-bl.get("K").unwrap().clone() - &bl.get("H").unwrap().scale(2);
    let v = is_nef(&bl.variety, &d).unwrap();
    assert!(!v.holds);
    assert!(v.witness_cone.is_some());
    assert!(very_ampleness(&bl.variety, bl.get("H").unwrap()).unwrap().is_very_ample());
}

#[test]
fn cartier_index_on_weighted_space() {
    let c = catalog("wps:1,1,2,3").unwrap();
    let eta0 = c.get("eta0").unwrap();
    let cert = SupportFunctionCertificate::new(&c.variety, eta0).unwrap();
    assert_eq!(cert.cartier_index(), 6);
    assert!(SupportFunctionCertificate::new(&c.variety, c.get("eta").unwrap()).unwrap().is_cartier());
    assert!(!c.variety.is_gorenstein().unwrap().holds);
    assert!(catalog("wps:1,1,2,2").unwrap().variety.is_gorenstein().unwrap().holds);
    assert!(!catalog("wps:1,1,1,2").unwrap().variety.is_gorenstein().unwrap().holds);
}

#[test]
fn triple_intersections() {
    let p3 = catalog("P3").unwrap();
    let h = p3.get("H").unwrap();
    assert_eq!(triple_intersection(&p3.variety, h, h, h).unwrap(), q(1));
    let p1p2 = catalog("P1xP2").unwrap();
    let h = p1p2.get("H").unwrap();
    assert_eq!(triple_intersection(&p1p2.variety, h, h, h).unwrap(), q(3));
    let w = catalog("wps:1,1,2,3").unwrap();
    let eta = w.get("eta").unwrap();
    assert_eq!(triple_intersection(&w.variety, eta, eta, eta).unwrap(), q(36));
    let bl = catalog("BlowupP3Line").unwrap();
    let e = bl.get("E").unwrap();
    assert!(matches!(triple_intersection(&bl.variety, e, e, e), Err(Error::NotNefCartier(_))));
    let eta0 = w.get("eta0").unwrap();
    assert!(matches!(triple_intersection(&w.variety, eta0, eta0, eta0), Err(Error::NotNefCartier(_))));
}

#[test]
fn chamber_method_matches_brute_force() {
    let mut r = rng(11);
    for name in ["P3", "P1xP2", "BlowupP3Line", "wps:1,1,2,3"] {
        let c = catalog(name).unwrap();
        for _ in 0..12 {
            let d = random_divisor(&mut r, c.variety.ray_count(), -4, 4);
            let fast = cohomology(&c.variety, &d).unwrap();
            assert_eq!(fast.h, brute_cohomology(&c.variety, &d), "{name} {d:?}");
            assert_eq!(fast.h[0], h0(&c.variety, &d).unwrap());
        }
    }
}

#[test]
fn serre_duality_and_chi_polynomial() {
    let mut r = rng(5);
    for name in common::VARIETIES {
        let c = catalog(name).unwrap();
        let k = c.get("K").unwrap();
        let h = c.get("H").unwrap();
        for _ in 0..6 {
            let d = random_divisor(&mut r, c.variety.ray_count(), -3, 3);
            let a = cohomology(&c.variety, &d).unwrap().h;
            let b = cohomology(&c.variety, &(k - &d)).unwrap().h;
            assert_eq!(a, [b[3], b[2], b[1], b[0]], "{name} {d:?}");
            // finite differences of order 4 vanish for a cubic polynomial in t
            let chi: Vec<i64> = (0..5).map(|t| euler_char(&c.variety, &(&d + &h.scale(t))).unwrap()).collect();
            let fourth = chi[4] - 4 * chi[3] + 6 * chi[2] - 4 * chi[1] + chi[0];
            assert_eq!(fourth, 0, "{name} {d:?}");
        }
    }
}

#[test]
fn vertex_criterion_against_module_generation() {
    // Cartier divisors: the two tests agree; non-Cartier ones may differ and
    // the disagreement is only recorded.
    let mut r = rng(3);
    for name in ["P3", "P1xP2", "BlowupP3Line", "wps:1,1,2,3"] {
        let c = catalog(name).unwrap();
        for _ in 0..20 {
            let d = random_divisor(&mut r, c.variety.ray_count(), -2, 3);
            let cert = SupportFunctionCertificate::new(&c.variety, &d).unwrap();
            if cert.is_cartier() {
                assert_eq!(
                    is_globally_generated(&c.variety, &d).unwrap().holds,
                    sheaf_generated_by_sections(&c.variety, &d).unwrap().holds,
                    "{name} {d:?}"
                );
            }
        }
    }
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let c = catalog("P3").unwrap();
    let d = c.get("H").unwrap().scale(2);
    let cache = CohomologyCache::open(dir.path()).unwrap();
    let t = cache.get_or_compute(&c.variety, &d).unwrap();
    assert_eq!(t.h, [10, 0, 0, 0]);
    let reopened = CohomologyCache::open(dir.path()).unwrap();
    assert_eq!(reopened.get(&c.variety, &d), Some(t));
    std::fs::write(reopened.path(), "{ not json").unwrap();
    let fresh = CohomologyCache::open(dir.path()).unwrap();
    assert!(fresh.is_empty());
    assert_eq!(fresh.get_or_compute(&c.variety, &d).unwrap(), t);
}

#[test]
fn wrong_length_divisor_is_rejected() {
    let c = catalog("P3").unwrap();
    assert!(cohomology(&c.variety, &WeilDivisor::new(vec![1, 2])).is_err());
}
