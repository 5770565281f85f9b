use pairshare::search::*;
use pairshare::Field;

fn planted(seed: u64) -> (PlantedInstance, ConstraintSystem) {
    let inst = plant(&default_plant_profile(), &Field::rationals(), seed).unwrap();
    let sys = inst.recovery_system().unwrap();
    (inst, sys)
}

#[test]
fn default_profile_counts() {
    let p = default_plant_profile();
    p.validate().unwrap();
    let sys = build_constraints(&p, &BuildOptions::new(&Field::rationals())).unwrap();
    assert_eq!(count_constraints(9, 9), 68);
    assert_eq!(sys.num_equations(), 68);
}

#[test]
fn planted_point_solves_shifted_system_exactly() {
    let (inst, sys) = planted(7);
    assert!(sys.shifted);
    assert_eq!(sys.num_equations(), 68);
    let truth = inst.assignment(&sys);
    assert!(sys.equations.iter().all(|e| e.poly.eval(&truth).is_zero()));
    for name in ["a3", "b3", "a4", "b4"] {
        assert!(sys.index_of(name).is_some(), "{name} must stay unknown");
    }
}

#[test]
fn plant_and_recover_two_seeds() {
    for seed in [1, 2] {
        let (inst, sys) = planted(seed);
        let run = plant_and_recover(&inst, &sys, seed, 8, 1e-2).unwrap();
        assert!(run.recovered, "seed {seed}: {run:?}");
        assert!(run.verified);
        assert!(run.residual.unwrap() < 1e-10);
    }
}

#[test]
fn search_is_deterministic() {
    let (inst, sys) = planted(3);
    let mut opts = SearchOptions::new(4, 99, 1e-10);
    opts.center = Some(inst.assignment(&sys).iter().map(|v| v.to_c64()).collect());
    let a = numeric_search(&sys, &opts).unwrap();
    let b = numeric_search(&sys, &opts).unwrap();
    assert_eq!(a, b);
    assert!(a.windows(2).all(|w| w[0].residual <= w[1].residual));
}

#[test]
fn perturbed_candidate_names_first_violation() {
    let (inst, sys) = planted(4);
    let mut truth = inst.assignment(&sys);
    let i = sys.index_of("A").or_else(|| sys.index_of("a3")).unwrap();
    truth[i] = &truth[i] + &Field::rationals().frac(1, 7);
    let cand = Candidate {
        assignment: truth.iter().map(|v| v.to_c64()).collect(),
        residual: 0.0,
        exact_lift: Some(truth.clone()),
        lift_error: None,
        monotone: true,
        degenerate: None,
    };
    let v = exact_verify(&cand, &sys).unwrap();
    let label = v.first_violation.clone().expect("perturbation breaks an equation");
    let pos = sys.equations.iter().position(|e| e.label == label).unwrap();
    assert!(!sys.equations[pos].poly.eval(&truth).is_zero());
    assert!(sys.equations[..pos].iter().all(|e| e.poly.eval(&truth).is_zero()));
    assert!(!v.verified());
}

#[test]
fn candidate_without_lift_is_an_error() {
    let (_inst, sys) = planted(5);
    let cand = Candidate {
        assignment: vec![],
        residual: 1.0,
        exact_lift: None,
        lift_error: Some("not rational".into()),
        monotone: false,
        degenerate: None,
    };
    assert!(exact_verify(&cand, &sys).is_err());
}

#[test]
fn top_order_must_survive_away_from_head() {
    let mut p = default_plant_profile();
    p.surviving_y[0] = 3;
    assert!(p.validate().is_err());
    assert!(build_constraints(&p, &BuildOptions::new(&Field::rationals())).is_err());
}

#[test]
fn fixed_tail_mode_drops_tail_unknowns() {
    let mut opts = BuildOptions::new(&Field::rationals());
    opts.tail = TailMode::Fixed;
    let sys = build_constraints(&default_plant_profile(), &opts).unwrap();
    assert_eq!(sys.num_unknowns(), 5);
    assert!(sys.is_overdetermined());
}
