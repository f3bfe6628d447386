use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::field::{PrimeField, Rationals};
use crate::groebner::IdealHandle;
use crate::poly::Ring;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ring(vars: &[&str]) -> Arc<Ring<Rationals>> {
    Ring::new(vars.iter().copied(), Rationals).unwrap()
}

fn ideal(r: &Arc<Ring<Rationals>>, gens: &[&str]) -> IdealHandle<Rationals> {
    IdealHandle::parse(r, gens).unwrap()
}

fn two_planes() -> IdealHandle<Rationals> {
    ideal(&ring(&["x", "y", "z", "w"]), &["x*z", "x*w", "y*z", "y*w"])
}

#[test]
fn newton_polyhedron_examples() {
    let r = ring(&["x", "y"]);
    let p = newton_polyhedron(&ideal(&r, &["x^2", "y^3"])).unwrap();
    assert_eq!(p.facets(), &[vec![q(1, 2), q(1, 3)]]);
    let p = newton_polyhedron(&ideal(&r, &["x", "y"])).unwrap();
    assert_eq!(p.facets(), &[vec![q(1, 1), q(1, 1)]]);

    let p = newton_polyhedron(&two_planes()).unwrap();
    let zero = q(0, 1);
    let one = q(1, 1);
    assert_eq!(
        p.facets(),
        &[
            vec![zero.clone(), zero.clone(), one.clone(), one.clone()],
            vec![one.clone(), one.clone(), zero.clone(), zero.clone()],
        ]
    );
    for pt in p.points() {
        let tight = p.facets().iter().filter(|w| polyhedron::dot(w, pt) == one).count();
        assert_eq!(tight, 2);
    }
}

#[test]
fn non_monomial_input_is_a_typed_error() {
    let r = ring(&["x", "y"]);
    let err = newton_polyhedron(&ideal(&r, &["x+y^2"])).unwrap_err();
    assert!(matches!(err, crate::error::Error::NonMonomial(_)));
    // a monomial ideal given by non-monomial generators is accepted
    assert_eq!(lct_monomial(&ideal(&r, &["x+y", "x-y"])).unwrap(), q(2, 1));
    assert!(newton_polyhedron(&ideal(&r, &["1"])).is_err());
}

#[test]
fn lct_examples() {
    let r = ring(&["x", "y"]);
    assert_eq!(lct_monomial(&ideal(&r, &["x", "y"])).unwrap(), q(2, 1));
    assert_eq!(lct_monomial(&ideal(&r, &["x^2", "y^3"])).unwrap(), q(5, 6));
    assert_eq!(lct_monomial(&two_planes()).unwrap(), q(2, 1));
    assert_eq!(lct_monomial(&ideal(&r, &["x"])).unwrap(), q(1, 1));
}

#[test]
fn glct_examples() {
    let r = ring(&["x", "y"]);
    let m = ideal(&r, &["x", "y"]);
    assert_eq!(glct_monomial(&m, &m, &q(1, 1)).unwrap(), q(3, 1));
    let cusp = ideal(&r, &["x^2", "y^3"]);
    assert_eq!(glct_monomial(&cusp, &m, &q(0, 1)).unwrap(), lct_monomial(&cusp).unwrap());
    assert!(glct_monomial(&m, &ideal(&r, &["1"]), &q(1, 1)).is_err());
    assert!(glct_monomial(&m, &m, &q(-1, 1)).is_err());
}

#[test]
fn mld_examples() {
    let r2 = ring(&["x", "y"]);
    let empty = FormalProduct::empty(&r2);
    let rep = mld_monomial_origin(&empty).unwrap();
    assert_eq!(rep.value, MldValue::Finite(q(2, 1)));
    assert!(rep.verified);

    let m2 = FormalProduct::new(&r2, vec![(ideal(&r2, &["x", "y"]), q(2, 1))]).unwrap();
    let rep = mld_monomial_origin(&m2).unwrap();
    assert_eq!(rep.value, MldValue::Finite(q(0, 1)));
    assert!(rep.verified);

    let x = two_planes();
    let sq = FormalProduct::new(x.ring(), vec![(x.clone(), q(2, 1))]).unwrap();
    let rep = mld_monomial_origin(&sq).unwrap();
    assert_eq!(rep.value, MldValue::Finite(q(0, 1)));
    assert_eq!(rep.minimizer.unwrap().weights(), &[1, 1, 1, 1]);

    let over = FormalProduct::new(&r2, vec![(ideal(&r2, &["x", "y"]), q(5, 2))]).unwrap();
    assert_eq!(mld_monomial_origin(&over).unwrap().value, MldValue::NegInfinity);

    let half = FormalProduct::new(&r2, vec![(ideal(&r2, &["x^2", "y^3"]), q(1, 2))]).unwrap();
    let rep = mld_monomial_origin(&half).unwrap();
    assert!(rep.verified);
    // v = (1, 1): 2 - 1/2 · 2 = 1
    assert_eq!(rep.value, MldValue::Finite(q(1, 1)));
}

#[test]
fn multiplier_ideal_examples() {
    let r = ring(&["x", "y"]);
    let a = ideal(&r, &["x^2", "y^2"]);
    let j = multiplier_ideal_monomial(&a, &q(3, 2)).unwrap();
    assert!(j.equals(&ideal(&r, &["x^2", "x*y", "y^2"])).unwrap());
    let m = ideal(&r, &["x", "y"]);
    assert!(multiplier_ideal_monomial(&m, &q(2, 1)).unwrap().equals(&m).unwrap());
    assert!(multiplier_ideal_monomial(&m, &q(19, 10)).unwrap().is_unit().unwrap());
    assert!(multiplier_ideal_monomial(&m, &q(0, 1)).unwrap().is_unit().unwrap());
}

#[test]
fn mldmj_examples() {
    let r = ring(&["x", "y"]);
    let p = FormalProduct::empty(&r);
    assert_eq!(mldmj_origin_monomial(&ideal(&r, &["x", "y"]), &p).unwrap().value, MldValue::Finite(q(0, 1)));
    let x = two_planes();
    assert_eq!(mldmj_origin_monomial(&x, &FormalProduct::empty(x.ring())).unwrap().value, MldValue::Finite(q(0, 1)));
    let r1 = ring(&["x"]);
    assert_eq!(mldmj_origin_monomial(&ideal(&r1, &["x"]), &FormalProduct::empty(&r1)).unwrap().value, MldValue::Finite(q(0, 1)));
}

#[test]
fn jet_ideal_examples() {
    let r = ring(&["x", "y"]);
    let j = jet_ideal(&ideal(&r, &["x*y"]), 1).unwrap();
    let jr = j.ring().clone();
    assert_eq!(jr.vars(), &["x_0", "y_0", "x_1", "y_1"]);
    let expected = IdealHandle::parse(&jr, &["x_0*y_0", "x_0*y_1 + x_1*y_0"]).unwrap();
    assert_eq!(j.generators(), expected.generators());

    let r1 = ring(&["x"]);
    let j = jet_ideal(&ideal(&r1, &["x"]), 2).unwrap();
    let expected = IdealHandle::parse(j.ring(), &["x_0", "x_1", "x_2"]).unwrap();
    assert_eq!(j.generators(), expected.generators());

    let j = jet_ideal(&ideal(&r, &["x^2-y"]), 1).unwrap();
    let expected = IdealHandle::parse(j.ring(), &["x_0^2 - y_0", "2*x_0*x_1 - y_1"]).unwrap();
    assert_eq!(j.generators(), expected.generators());
}

#[test]
fn jet_names_avoid_clashes() {
    let r = ring(&["x", "x_0"]);
    let jr = jet_ring(&r, 1).unwrap();
    assert_eq!(jr.vars(), &["x__0", "x_0__0", "x__1", "x_0__1"]);
}

#[test]
fn jet_ring_cap() {
    let r = ring(&["a", "b", "c", "d", "e"]);
    let err = jet_ideal(&ideal(&r, &["a"]), 8).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn jet_estimate_examples() {
    let r = Ring::new(["x", "y"], PrimeField::default()).unwrap();
    let est = lct_jet_estimate(&IdealHandle::parse(&r, &["x", "y"]).unwrap(), 2).unwrap();
    assert_eq!(est.estimate, Some(q(2, 1)));
    assert!(est.levels.iter().all(|l| l.normalized_codim == q(2, 1)));
    assert_eq!(est.minimizing_level, Some(0));

    let est = lct_jet_estimate(&IdealHandle::parse(&r, &["x*y"]).unwrap(), 2).unwrap();
    assert_eq!(est.estimate, Some(q(1, 1)));

    let est = lct_jet_estimate(&IdealHandle::parse(&r, &["x^2", "y^3"]).unwrap(), 5).unwrap();
    assert_eq!(est.estimate, Some(q(5, 6)));
    assert_eq!(est.minimizing_level, Some(5));
    assert!(est.is_complete());
}

#[test]
fn jet_estimate_reports_capped_levels() {
    let r = Ring::new(["a", "b", "c", "d", "e", "f", "g", "h"], PrimeField::default()).unwrap();
    let est = lct_jet_estimate(&IdealHandle::parse(&r, &["a", "b"]).unwrap(), 5).unwrap();
    assert!(!est.is_complete());
    assert_eq!(est.levels.len(), 5);
    assert_eq!(est.failed[0].level, 5);
    assert_eq!(est.estimate, Some(q(2, 1)));
}

#[test]
fn toric_valuation_rejects_zero_weights() {
    assert!(ToricValuation::new(vec![1, 0]).is_err());
    assert!(ToricValuation::new(vec![]).is_err());
    let v = ToricValuation::new(vec![2, 3]).unwrap();
    let r = ring(&["x", "y"]);
    assert_eq!(v.on_ideal(&ideal(&r, &["x^2", "y^3"])).unwrap(), 4);
}
