mod common;

use common::{random_divisor, rng, VARIETIES};
use rand::Rng;
use toric_nl::catalog::catalog;
use toric_nl::geometry::LatticeVector;
use toric_nl::toric::{Fan, ToricThreefold};
use toric_nl::Error;

#[test]
fn class_group_rank_is_rays_minus_three() {
    for name in VARIETIES {
        let c = catalog(name).unwrap();
        assert_eq!(c.variety.class_group_rank(), c.variety.ray_count() - 3, "{name}");
    }
}

#[test]
fn principal_divisors_have_zero_class() {
    let mut r = rng(2);
    for name in VARIETIES {
        let c = catalog(name).unwrap();
        for _ in 0..10 {
            let m = LatticeVector::new(r.gen_range(-5..=5), r.gen_range(-5..=5), r.gen_range(-5..=5));
            let d = c.variety.principal_divisor(&m);
            assert!(c.variety.class_of(&d).unwrap().is_zero(), "{name} {m:?}");
            let e = random_divisor(&mut r, c.variety.ray_count(), -4, 4);
            assert!(c.variety.linearly_equivalent(&e, &(&e + &d)).unwrap());
        }
    }
}

#[test]
fn smoothness_and_gorenstein_flags() {
    for name in ["P3", "P1xP1xP1", "P1xP2", "BlowupP3Line"] {
        let c = catalog(name).unwrap();
        assert!(c.variety.is_smooth().holds, "{name}");
        assert!(c.variety.singular_cones().is_empty());
        assert!(c.variety.is_gorenstein().unwrap().holds);
    }
    let w = catalog("wps:1,1,2,3").unwrap();
    assert!(!w.variety.is_smooth().holds);
    assert!(!w.variety.singular_cones().is_empty());
    assert!(catalog("P3").unwrap().variety.is_fano().unwrap().holds);
    assert!(catalog("BlowupP3Line").unwrap().variety.is_fano().unwrap().holds);
}

#[test]
fn json_fans_are_validated() {
    let good = r#"{"rays": [[-1,-1,-1],[1,0,0],[0,1,0],[0,0,1]], "max_cones": [[1,2,3],[0,2,3],[0,1,3],[0,1,2]]}"#;
    let fan = Fan::from_json(good).unwrap();
    let x = ToricThreefold::new(fan).unwrap();
    assert_eq!(x.content_hash(), catalog("P3").unwrap().variety.content_hash());

    let missing = r#"{"rays": [[-1,-1,-1],[1,0,0],[0,1,0],[0,0,1]], "max_cones": [[1,2,3],[0,2,3],[0,1,3]]}"#;
    let err = ToricThreefold::new(Fan::from_json(missing).unwrap()).unwrap_err();
    assert!(err.to_string().contains("not complete"), "{err}");

    let non_primitive =
        r#"{"rays": [[-1,-1,-1],[2,0,0],[0,1,0],[0,0,1]], "max_cones": [[1,2,3],[0,2,3],[0,1,3],[0,1,2]]}"#;
    let err = ToricThreefold::new(Fan::from_json(non_primitive).unwrap()).unwrap_err();
    assert!(matches!(err, Error::NonPrimitiveRay { index: 1, .. }), "{err}");
}

#[test]
fn canonical_divisor_is_minus_sum_of_boundary() {
    let c = catalog("P1xP2").unwrap();
    assert_eq!(c.variety.canonical_divisor().coeffs, vec![-1; 5]);
}
