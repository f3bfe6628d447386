use super::*;
use super::ideal::max_independent_set;
use crate::field::Rationals;
use crate::poly::{MonomialOrder, Polynomial, Ring};

fn ring(vars: &[&str]) -> std::sync::Arc<Ring<Rationals>> {
    Ring::new(vars.iter().copied(), Rationals).unwrap()
}

#[test]
fn basis_examples() {
    let r = ring(&["x", "y"]);
    let i = IdealHandle::parse(&r, &["x+y", "x-y"]).unwrap();
    let gb = i.groebner_basis(MonomialOrder::Lex).unwrap();
    let expect = IdealHandle::parse(&r, &["y", "x"]).unwrap();
    assert_eq!(gb.generators(), expect.generators());

    let r4 = ring(&["x", "y", "z", "w"]);
    let x = IdealHandle::parse(&r4, &["x*z", "x*w", "y*z", "y*w"]).unwrap();
    let gb = x.gb().unwrap();
    assert_eq!(gb.len(), 4);
    for g in x.generators() {
        assert!(gb.generators().contains(g));
    }
    assert!(IdealHandle::zero(&r).gb().unwrap().is_empty());
}

#[test]
fn normal_form_examples() {
    let r = ring(&["x", "y"]);
    let i = IdealHandle::parse(&r, &["x^2-y"]).unwrap();
    let gb = i.groebner_basis(MonomialOrder::Lex).unwrap();
    let f = Polynomial::parse(&r, "x^2*y").unwrap();
    assert_eq!(gb.normal_form(&f).unwrap(), Polynomial::parse(&r, "y^2").unwrap());

    let i = IdealHandle::parse(&r, &["x"]).unwrap();
    assert!(i.normal_form(&Polynomial::parse(&r, "x").unwrap()).unwrap().is_zero());

    let i = IdealHandle::parse(&r, &["x^2"]).unwrap();
    let f = Polynomial::parse(&r, "x+1").unwrap();
    assert_eq!(i.normal_form(&f).unwrap(), f);
}

#[test]
fn homogeneity_examples() {
    let r = ring(&["u1", "u2", "u3", "u4"]);
    assert!(IdealHandle::parse(&r, &["u1*u4 - u2*u3"]).unwrap().is_homogeneous().unwrap());
    let r = ring(&["x", "y"]);
    assert!(!IdealHandle::parse(&r, &["x^2-y"]).unwrap().is_homogeneous().unwrap());
    assert!(IdealHandle::parse(&r, &["x^2-y", "y"]).unwrap().is_homogeneous().unwrap());
}

#[test]
fn radical_membership_examples() {
    let r = ring(&["x", "y"]);
    let i = IdealHandle::parse(&r, &["x^2"]).unwrap();
    assert!(i.radical_contains(&Polynomial::parse(&r, "x").unwrap()).unwrap());
    assert!(!i.radical_contains(&Polynomial::parse(&r, "y").unwrap()).unwrap());
    let j = IdealHandle::parse(&r, &["x^2", "y^2"]).unwrap();
    assert!(j.radical_contains(&Polynomial::parse(&r, "x+y").unwrap()).unwrap());
}

#[test]
fn budget_is_reported() {
    let r = ring(&["x", "y", "z"]);
    let i = IdealHandle::parse(&r, &["x^3 - y*z + 1", "y^3 - x*z", "z^3 - x*y + x"]).unwrap();
    let err = i.groebner_basis_with_budget(MonomialOrder::Lex, 5).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn independent_sets() {
    let m = |e: &[u32]| crate::poly::Monomial::new(e.to_vec());
    let (a, b) = (m(&[1, 0, 1, 0]), m(&[0, 1, 0, 1]));
    assert_eq!(max_independent_set(4, &[&a, &b]), 2);
    let c = m(&[0, 0, 0, 0]);
    assert_eq!(max_independent_set(4, &[&c]), 0);
    assert_eq!(max_independent_set(3, &[]), 3);
}
