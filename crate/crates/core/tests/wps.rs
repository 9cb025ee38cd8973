mod common;

use std::collections::BTreeSet;

use common::weighted_monomials;
use toric_nl::catalog::wps_variety;
use toric_nl::cohomology::h0;
use toric_nl::nl::Checker;
use toric_nl::wps::{classify, delta_sigma, scan, wps_fan, Family, WeightTuple};

fn well_formed_up_to(max: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in 1..=max {
        for b in a..=max {
            for c in b..=max {
                for d in c..=max {
                    if WeightTuple([a, b, c, d]).is_well_formed() {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn ray_degrees_are_the_weights() {
    for q in well_formed_up_to(6) {
        let x = wps_fan(&WeightTuple(q)).unwrap();
        let degrees: Vec<i64> =
            (0..4).map(|i| x.class_of(&toric_nl::toric::WeilDivisor::prime(4, i)).unwrap().free[0]).collect();
        let sign = degrees[0].signum();
        assert_eq!(degrees.iter().map(|d| d * sign).collect::<Vec<_>>(), q.to_vec(), "{q:?}");
    }
}

#[test]
fn anticanonical_class_is_sigma_eta0() {
    for q in well_formed_up_to(7) {
        let c = wps_variety(q).unwrap();
        let sigma: i64 = q.iter().sum();
        let minus_k = -c.get("K").unwrap().clone();
        assert!(c.variety.linearly_equivalent(&minus_k, &c.get("eta0").unwrap().scale(sigma)).unwrap(), "{q:?}");
    }
}

#[test]
fn sections_of_eta_count_weighted_monomials() {
    for q in well_formed_up_to(5) {
        let c = wps_variety(q).unwrap();
        let delta = delta_sigma(&WeightTuple(q)).0;
        assert_eq!(h0(&c.variety, c.get("eta").unwrap()).unwrap(), weighted_monomials(&q, delta), "{q:?}");
    }
}

#[test]
fn theorem1_third_condition_counts_monomials() {
    // (iii) is h^0((delta - sigma) eta0) = 0: implied by delta < sigma, and
    // also true when no monomial has weighted degree delta - sigma
    let mut beyond = Vec::new();
    for q in well_formed_up_to(5) {
        let c = wps_variety(q).unwrap();
        let r = Checker::new(&c.variety).theorem1(c.get("eta").unwrap(), 2).unwrap();
        assert!(r.condition("(i)").unwrap().verdict, "{q:?}");
        assert!(r.condition("(ii)").unwrap().verdict, "{q:?}");
        let (delta, sigma, below) = delta_sigma(&WeightTuple(q));
        let iii = r.condition("(iii)").unwrap().verdict;
        assert_eq!(iii, weighted_monomials(&q, delta - sigma) == 0, "{q:?}");
        assert!(!below || iii, "{q:?}");
        if iii && !below {
            beyond.push(q);
        }
    }
    assert!(beyond.contains(&[4, 4, 5, 5]), "{beyond:?}");
}

#[test]
fn scan_is_closed_under_permutation() {
    let listed: BTreeSet<[i64; 4]> = scan(8).unwrap().into_iter().map(|e| e.weights.0).collect();
    for q in well_formed_up_to(8) {
        // every permutation has the same delta, sigma and tag
        let mut p = q;
        p.reverse();
        let (_, _, ok) = delta_sigma(&WeightTuple(p));
        assert_eq!(listed.contains(&q), ok);
        assert_eq!(classify(&WeightTuple(p)), classify(&WeightTuple(q)));
    }
}

#[test]
fn scan_examples() {
    let three: Vec<[i64; 4]> = scan(3).unwrap().into_iter().map(|e| e.weights.0).collect();
    for q in [[1, 1, 1, 1], [1, 1, 1, 2], [1, 1, 1, 3], [1, 1, 2, 2], [1, 1, 2, 3]] {
        assert!(three.contains(&q), "{q:?}");
    }
    let ten = scan(10).unwrap();
    assert_eq!(ten.iter().find(|e| e.weights.0 == [1, 2, 9, 9]).unwrap().family, Family::OneTwoOddPair);
}
