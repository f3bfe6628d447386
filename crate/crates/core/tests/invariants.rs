mod common;

use std::sync::Arc;

use common::Lcg;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use resint::field::{Field, PrimeField, Rationals};
use resint::groebner::IdealHandle;
use resint::invariants::{
    glct_monomial, glct_objective, lct_jet_estimate, lct_monomial, mld_monomial_origin, mld_objective,
    multiplier_ideal_monomial, newton_polyhedron, FormalProduct, MldValue, ToricValuation,
};
use resint::poly::{Monomial, Polynomial, Ring};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn monomial_ideal<F: Field>(ring: &Arc<Ring<F>>, exps: &[Vec<u32>]) -> IdealHandle<F> {
    let gens = exps
        .iter()
        .map(|e| Polynomial::monomial(ring, Monomial::new(e.clone()), ring.field().from_i64(1)))
        .collect::<Vec<_>>();
    IdealHandle::new(ring, gens).unwrap()
}

/// Between 1 and `max_gens` random nonconstant exponent vectors.
fn random_exps(rng: &mut Lcg, n: usize, max_gens: u64, max_exp: u64) -> Vec<Vec<u32>> {
    let ngens = 1 + rng.below(max_gens) as usize;
    loop {
        let exps: Vec<Vec<u32>> = (0..ngens)
            .map(|_| (0..n).map(|_| rng.below(max_exp + 1) as u32).collect())
            .collect();
        if exps.iter().all(|e| e.iter().any(|&x| x > 0)) {
            return exps;
        }
    }
}

/// `min_v Σv / v(a)` over integer `v ∈ [0, B]ⁿ ∖ 0` with `v(a) > 0`.
fn lct_box_oracle(exps: &[Vec<u32>], n: usize, bound: u64) -> BigRational {
    glct_box_oracle(exps, None, &BigRational::zero(), n, bound)
}

fn glct_box_oracle(ax: &[Vec<u32>], az: Option<&[Vec<u32>]>, lambda: &BigRational, n: usize, bound: u64) -> BigRational {
    let val = |v: &[u64], exps: &[Vec<u32>]| exps.iter().map(|e| e.iter().zip(v).map(|(&a, &b)| u64::from(a) * b).sum::<u64>()).min().unwrap();
    let mut best: Option<BigRational> = None;
    let mut v = vec![0u64; n];
    loop {
        let mut i = 0;
        while i < n && v[i] == bound {
            v[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        v[i] += 1;
        let den = val(&v, ax);
        if den == 0 {
            continue;
        }
        let mut num = BigRational::from_integer(v.iter().sum::<u64>().into());
        if let Some(z) = az {
            num += lambda * BigRational::from_integer(val(&v, z).into());
        }
        let r = num / BigRational::from_integer(den.into());
        if best.as_ref().is_none_or(|b| &r < b) {
            best = Some(r);
        }
    }
    best.unwrap()
}

#[test]
fn lct_matches_box_oracle() {
    let mut rng = Lcg(31337);
    for _ in 0..40 {
        let n = 2 + rng.below(2) as usize;
        let exps = random_exps(&mut rng, n, 3, 3);
        let ring = Ring::new((0..n).map(|i| format!("x{i}")).collect::<Vec<_>>().iter().map(String::as_str), Rationals).unwrap();
        let a = monomial_ideal(&ring, &exps);
        let bound = if n == 2 { 60 } else { 24 };
        assert_eq!(lct_monomial(&a).unwrap(), lct_box_oracle(&exps, n, bound), "{exps:?}");
    }
}

#[test]
fn glct_matches_box_oracle() {
    let mut rng = Lcg(4242);
    let ring = Ring::new(["x", "y"], Rationals).unwrap();
    for _ in 0..30 {
        let ax = random_exps(&mut rng, 2, 3, 3);
        let az = random_exps(&mut rng, 2, 2, 2);
        let lambda = q(rng.below(7) as i64, 1 + rng.below(3) as i64);
        let exact = glct_monomial(&monomial_ideal(&ring, &ax), &monomial_ideal(&ring, &az), &lambda).unwrap();
        assert_eq!(exact, glct_box_oracle(&ax, Some(&az), &lambda, 2, 60), "{ax:?} {az:?} {lambda}");
    }
}

#[test]
fn howald_consistency_on_random_suite() {
    let mut rng = Lcg(2718);
    for case in 0..20 {
        let n = 2 + rng.below(2) as usize;
        let exps = random_exps(&mut rng, n, 3, 3);
        let ring = Ring::new((0..n).map(|i| format!("x{i}")).collect::<Vec<_>>().iter().map(String::as_str), Rationals).unwrap();
        let a = monomial_ideal(&ring, &exps);
        let lct = lct_monomial(&a).unwrap();
        let below = &lct - q(1, 7);
        let c = q(rng.below(12) as i64, 1 + rng.below(4) as i64);
        for c in [lct.clone(), below, c, &lct + q(1, 3)] {
            if c.is_negative() {
                continue;
            }
            let trivial = multiplier_ideal_monomial(&a, &c).unwrap().is_unit().unwrap();
            assert_eq!(trivial, c < lct, "case {case}: {exps:?} c = {c} lct = {lct}");
        }
    }
}

#[test]
fn lct_is_at_most_codimension() {
    let mut rng = Lcg(99);
    for _ in 0..30 {
        let n = 2 + rng.below(3) as usize;
        let exps = random_exps(&mut rng, n, 4, 3);
        let ring = Ring::new((0..n).map(|i| format!("x{i}")).collect::<Vec<_>>().iter().map(String::as_str), Rationals).unwrap();
        let a = monomial_ideal(&ring, &exps);
        let codim = a.codimension().unwrap().unwrap();
        assert!(lct_monomial(&a).unwrap() <= BigRational::from_integer(codim.into()));
    }
}

#[test]
fn mld_matches_brute_force() {
    let mut rng = Lcg(1618);
    let ring = Ring::new(["x", "y"], Rationals).unwrap();
    for case in 0..25 {
        let exps = random_exps(&mut rng, 2, 3, 3);
        let m = q(rng.below(9) as i64, 1 + rng.below(4) as i64);
        let a = monomial_ideal(&ring, &exps);
        let p = FormalProduct::new(&ring, vec![(a, m.clone())]).unwrap();
        let report = mld_monomial_origin(&p).unwrap();
        let mut brute: Option<BigRational> = None;
        for v1 in 1..=40u64 {
            for v2 in 1..=40u64 {
                let g = mld_objective(&p, &ToricValuation::new(vec![v1, v2]).unwrap()).unwrap();
                if brute.as_ref().is_none_or(|b| &g < b) {
                    brute = Some(g);
                }
            }
        }
        let brute = brute.unwrap();
        match &report.value {
            MldValue::NegInfinity => assert!(brute.is_negative(), "case {case}: {exps:?}^{m} brute {brute}"),
            MldValue::Finite(v) => {
                assert!(!brute.is_negative());
                assert_eq!(v, &brute, "case {case}: {exps:?}^{m}");
            }
        }
    }
}

#[test]
fn jet_estimates_match_polyhedron_when_level_is_reached() {
    let ring = Ring::new(["x", "y"], PrimeField::default()).unwrap();
    let cases: [(&[Vec<u32>], usize); 5] = [
        (&[vec![2, 0], vec![0, 3]], 5),
        (&[vec![1, 0], vec![0, 1]], 2),
        (&[vec![2, 0], vec![0, 2]], 2),
        (&[vec![1, 1]], 1),
        (&[vec![2, 0], vec![1, 1], vec![0, 2]], 1),
    ];
    for (exps, m_max) in cases {
        let a = monomial_ideal(&ring, exps);
        let est = lct_jet_estimate(&a, m_max).unwrap();
        assert_eq!(est.estimate.unwrap(), lct_monomial(&a).unwrap(), "{exps:?}");
    }
    let r4 = Ring::new(["x", "y", "z", "w"], PrimeField::default()).unwrap();
    let planes = IdealHandle::parse(&r4, &["x*z", "x*w", "y*z", "y*w"]).unwrap();
    assert_eq!(lct_jet_estimate(&planes, 1).unwrap().estimate.unwrap(), q(2, 1));
}

#[test]
fn jet_dimensions_agree_at_two_primes() {
    for gens in [&["x^2", "y^3"][..], &["x*y", "x^3 + y^2"][..], &["y^2 - x^3"][..]] {
        let a = Ring::new(["x", "y"], PrimeField::new(32003).unwrap()).unwrap();
        let b = Ring::new(["x", "y"], PrimeField::new(10007).unwrap()).unwrap();
        let ea = lct_jet_estimate(&IdealHandle::parse(&a, gens).unwrap(), 3).unwrap();
        let eb = lct_jet_estimate(&IdealHandle::parse(&b, gens).unwrap(), 3).unwrap();
        let da: Vec<_> = ea.levels.iter().map(|l| l.dim).collect();
        let db: Vec<_> = eb.levels.iter().map(|l| l.dim).collect();
        assert_eq!(da, db, "{gens:?}");
    }
}

#[test]
fn rational_ideals_reduce_to_the_default_prime() {
    let r = Ring::new(["x", "y"], Rationals).unwrap();
    let i = IdealHandle::parse(&r, &["1/2*x^2 - y^3"]).unwrap();
    let fp = i.to_prime_field(32003).unwrap();
    assert_eq!(lct_jet_estimate(&fp, 5).unwrap().estimate.unwrap(), q(5, 6));
    let bad = IdealHandle::parse(&r, &["1/32003*x"]).unwrap();
    assert!(bad.to_prime_field(32003).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn lct_is_monotone_under_inclusion(seed in any::<u64>()) {
        let mut rng = Lcg(seed);
        let n = 2 + rng.below(2) as usize;
        let b_exps = random_exps(&mut rng, n, 3, 2);
        // a ⊆ b: multiply each generator of b by a random monomial
        let a_exps: Vec<Vec<u32>> = b_exps
            .iter()
            .map(|e| e.iter().map(|&x| x + rng.below(2) as u32).collect())
            .collect();
        let ring = Ring::new((0..n).map(|i| format!("x{i}")).collect::<Vec<_>>().iter().map(String::as_str), Rationals).unwrap();
        let a = monomial_ideal(&ring, &a_exps);
        let b = monomial_ideal(&ring, &b_exps);
        prop_assert!(b.contains_ideal(&a).unwrap());
        prop_assert!(lct_monomial(&a).unwrap() <= lct_monomial(&b).unwrap());
    }

    #[test]
    fn objectives_scale_correctly(seed in any::<u64>(), w1 in 1u64..20, w2 in 1u64..20, k in 1u64..9) {
        let mut rng = Lcg(seed);
        let ring = Ring::new(["x", "y"], Rationals).unwrap();
        let ax = monomial_ideal(&ring, &random_exps(&mut rng, 2, 2, 3));
        let az = monomial_ideal(&ring, &random_exps(&mut rng, 2, 2, 3));
        let lambda = q(rng.below(5) as i64, 2);
        let v = ToricValuation::new(vec![w1, w2]).unwrap();
        let kv = v.scaled(k);
        prop_assert_eq!(glct_objective(&ax, &az, &lambda, &v).unwrap(), glct_objective(&ax, &az, &lambda, &kv).unwrap());
        let p = FormalProduct::new(&ring, vec![(ax, lambda.clone()), (az, q(1, 3))]).unwrap();
        let g = mld_objective(&p, &v).unwrap();
        prop_assert_eq!(mld_objective(&p, &kv).unwrap(), g * BigRational::from_integer(k.into()));
    }

    #[test]
    fn jet_estimate_dominates_lct(seed in any::<u64>()) {
        let mut rng = Lcg(seed);
        let ring = Ring::new(["x", "y"], PrimeField::default()).unwrap();
        let exps = random_exps(&mut rng, 2, 2, 3);
        let a = monomial_ideal(&ring, &exps);
        for m in 0..=2 {
            let est = lct_jet_estimate(&a, m).unwrap().estimate.unwrap();
            prop_assert!(est >= lct_monomial(&a).unwrap());
        }
    }

    #[test]
    fn newton_facets_are_tight_and_valid(seed in any::<u64>()) {
        let mut rng = Lcg(seed);
        let n = 2 + rng.below(2) as usize;
        let exps = random_exps(&mut rng, n, 4, 3);
        let ring = Ring::new((0..n).map(|i| format!("x{i}")).collect::<Vec<_>>().iter().map(String::as_str), Rationals).unwrap();
        let p = newton_polyhedron(&monomial_ideal(&ring, &exps)).unwrap();
        prop_assert!(!p.facets().is_empty());
        for pt in p.points() {
            prop_assert!(p.contains(pt));
        }
        for w in p.facets() {
            let tight_points = p.points().iter().filter(|pt| w.iter().zip(pt.iter()).map(|(a, b)| a * b).sum::<BigRational>() == BigRational::one()).count();
            let zero_coords = w.iter().filter(|c| c.is_zero()).count();
            prop_assert!(tight_points >= 1);
            prop_assert!(tight_points + zero_coords >= n);
        }
    }
}
