mod common;

use std::sync::Arc;

use common::Lcg;
use proptest::prelude::*;
use resint::field::{Field, PrimeField, Rationals};
use resint::ideal_ops::intersect;
use resint::poly::Ring;
use resint::residual::{
    augment_generators, check_decomposition, general_residual, predict_nonempty, singular_locus_check,
    GeneratorSystem, ResidualRun,
};

fn check_run<F: Field>(run: &ResidualRun<F>) {
    let x = run.system.ideal();
    assert!(x.contains_ideal(run.i_m()).unwrap(), "I_M ⊆ I_X");
    assert!(run.i_y.contains_ideal(run.i_m()).unwrap(), "I_M ⊆ I_Y");
    assert!(run.i_m().contains_ideal(run.i_h()).unwrap(), "I_H ⊆ I_M");
    assert_eq!(run.empty, run.i_y.is_unit().unwrap());
    let codim_m = run.i_m().codimension().unwrap();
    assert!(codim_m.is_some_and(|c| c <= run.t), "Krull bound");
    if !run.empty && run.stability.stable {
        assert_eq!(run.codim_y, Some(run.t));
    }
    if !run.empty && run.valid {
        assert!(check_decomposition(run).unwrap(), "√I_M = √(I_X ∩ I_Y)");
    }
}

fn two_planes<F: Field>(field: F) -> GeneratorSystem<F> {
    let r = Ring::new(["x", "y", "z", "w"], field).unwrap();
    GeneratorSystem::parse(&r, &["x*z", "x*w", "y*z", "y*w"]).unwrap()
}

#[test]
fn two_planes_standard_is_empty_on_every_seed() {
    let fs = two_planes(Rationals);
    let run = general_residual(&fs, 3, 42, 5).unwrap();
    assert!(run.empty && run.stability.stable);
    assert_eq!(run.stability.trials.len(), 5);
    assert!(run.stability.trials.iter().all(|t| t.empty));
    check_run(&run);
}

#[test]
fn two_planes_augmented_is_a_curve() {
    let fs = augment_generators(&two_planes(PrimeField::default())).unwrap();
    let run = general_residual(&fs, 3, 42, 5).unwrap();
    assert!(!run.empty && run.valid && run.stability.stable);
    assert_eq!(run.dim_y.value(), Some(1));
    assert_eq!(run.codim_y, Some(3));
    assert!(run.hu.ht_ok);
    check_run(&run);
    let p = predict_nonempty(&fs, 3).unwrap();
    assert!(p.nonempty);
    assert_eq!(p.dim_v, 4);
    let sing = singular_locus_check(&run).unwrap();
    assert!(sing.dim_sing.is_empty() && sing.bound_ok);
    assert_eq!(sing.bound, 5);
}

#[test]
fn link_of_two_planes_is_two_planes() {
    let fs = two_planes(Rationals);
    let run = general_residual(&fs, 2, 9, 2).unwrap();
    assert!(!run.empty && run.valid && run.stability.stable);
    assert_eq!(run.dim_y.value(), Some(2));
    assert!(run.hu.ht_ok && run.hu.agrees_with_saturation);
    check_run(&run);
}

#[test]
fn reports_are_deterministic() {
    let fs = augment_generators(&two_planes(Rationals)).unwrap();
    let a = general_residual(&fs, 2, 1234, 2).unwrap();
    let b = general_residual(&fs, 2, 1234, 2).unwrap();
    assert_eq!(a.sections.sections, b.sections.sections);
    assert_eq!(a.i_y.generators(), b.i_y.generators());
    assert_eq!(a.hu.j.generators(), b.hu.j.generators());
    assert_eq!(a.stability, b.stability);
    assert_eq!(a.saturation_exponent, b.saturation_exponent);
}

#[test]
fn singular_locus_literal_plane_augmented() {
    let r = Ring::new(["x", "y", "z", "w"], Rationals).unwrap();
    let fs = augment_generators(&GeneratorSystem::parse(&r, &["x", "y"]).unwrap()).unwrap();
    let run = general_residual(&fs, 3, 42, 3).unwrap();
    assert!(!run.empty && run.valid);
    let sing = singular_locus_check(&run).unwrap();
    assert!(sing.dim_sing.is_empty() && sing.bound_ok);
    assert!(sing.modulus.is_some());
}

fn random_system(rng: &mut Lcg, ring: &Arc<Ring<PrimeField>>) -> Option<GeneratorSystem<PrimeField>> {
    let r = 2 + rng.below(2) as usize;
    let gens = (0..r).map(|_| rng.poly(ring, 2, 2)).collect();
    GeneratorSystem::new(ring, gens).ok()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn random_runs_satisfy_invariants(seed in any::<u64>(), run_seed in any::<u64>()) {
        let ring = Ring::new(["x", "y", "z"], PrimeField::default()).unwrap();
        let mut rng = Lcg(seed);
        let Some(fs) = random_system(&mut rng, &ring) else { return Ok(()) };
        let c = fs.codim();
        let t = c + rng.below((3 - c + 1) as u64) as usize;
        let run = general_residual(&fs, t, run_seed, 1).unwrap();
        check_run(&run);
    }

    #[test]
    fn predictor_matches_residual_on_quadric_systems(seed in any::<u64>()) {
        // quadrics only, so V is a cone
        let ring = Ring::new(["x", "y", "z"], PrimeField::default()).unwrap();
        let mut rng = Lcg(seed);
        let mut gens = Vec::new();
        while gens.len() < 3 {
            let p = rng.poly(&ring, 2, 4);
            if let Some((_, q)) = p.homogeneous_parts().into_iter().find(|(d, _)| *d == 2) {
                gens.push(q);
            }
        }
        let Ok(fs) = GeneratorSystem::new(&ring, gens) else { return Ok(()) };
        for t in fs.codim()..=3 {
            let p = predict_nonempty(&fs, t).unwrap();
            prop_assert!(p.cone);
            let run = general_residual(&fs, t, seed, 1).unwrap();
            prop_assert!(run.stability.stable);
            prop_assert_eq!(p.nonempty, !run.empty, "{:?} t={}", fs.generators(), t);
        }
    }
}

#[test]
fn decomposition_on_links_of_small_varieties() {
    let cases: [(&[&str], &[&str]); 4] = [
        (&["x", "y", "z", "w"], &["x*z-y^2", "x*w-y*z", "y*w-z^2"]),
        (&["x", "y", "z"], &["x*y", "x*z", "y*z"]),
        (&["a", "b", "c", "d", "e"], &["a*c-b^2", "a*e-b*d", "b*e-c*d"]),
        (&["x", "y", "z"], &["z", "y^2-x^3"]),
    ];
    for (vars, gens) in cases {
        let r = Ring::new(vars.iter().copied(), Rationals).unwrap();
        let fs = GeneratorSystem::parse(&r, gens).unwrap();
        let run = general_residual(&fs, fs.codim(), 5, 2).unwrap();
        check_run(&run);
        if !run.empty {
            let union = intersect(fs.ideal(), &run.i_y).unwrap();
            assert!(run.i_m().same_radical(&union).unwrap());
        }
    }
}
