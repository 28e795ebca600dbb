mod common;

use std::collections::BTreeSet;

use common::rel_err;
use pareto_prune::benchmarks::{make_e1, make_e2, make_quad, make_toy_constrained, oracle_front};
use pareto_prune::decomposition::enumerate_realizations;
use pareto_prune::prune::run_pipeline_detailed;
use pareto_prune::{
    hausdorff, nondominated_filter, run_pipeline, solve_scalarized, Decomposer, Epsilon,
    FrontScaling, ObjectivePoint, ParetoSolution, Phases, PipelineConfig, ProblemSpec, PruneReport,
    ScalarizedObjective, Solver, SolverConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn below_or_equal(u: &ObjectivePoint, p: &ObjectivePoint, tol: f64) -> bool {
    u.j1() <= p.j1() + tol && u.j2() <= p.j2() + tol
}

fn zset(front: &[ParetoSolution]) -> BTreeSet<Vec<u64>> {
    front
        .iter()
        .map(|s| s.realization.z.iter().map(|v| v.to_bits()).collect())
        .collect()
}

fn check_utopia_bounds(p: &ProblemSpec, stride: usize) {
    let dec = Decomposer::new(p, Solver::new(SolverConfig::default()));
    for r in enumerate_realizations(p, 10_000_000).unwrap().iter().step_by(stride) {
        let rec = dec.anchors_utopia(r).unwrap();
        let front = dec.subproblem_front(r, 21).unwrap();
        for s in front.iter().chain([&rec.anchor1, &rec.anchor2]) {
            assert!(
                below_or_equal(&rec.utopia, &s.point, 1e-9),
                "{} k={}: utopia {:?} above {:?}",
                p.name(),
                r.k,
                rec.utopia,
                s.point
            );
        }
        // The w = 1 and w = 0 solves reappear in the front or are beaten.
        for a in [&rec.anchor1, &rec.anchor2] {
            assert!(front.iter().any(|s| below_or_equal(&s.point, &a.point, 1e-9)));
        }
    }
}

#[test]
fn utopia_bounds_every_e1_subproblem() {
    check_utopia_bounds(&make_e1(), 1);
}

#[test]
fn utopia_bounds_sampled_e2_subproblems() {
    check_utopia_bounds(&make_e2(), 61);
}

fn check_structure(p: &ProblemSpec, phases: Phases) -> PruneReport {
    let cfg = PipelineConfig::default();
    let out = run_pipeline_detailed(p, phases, &cfg).unwrap();
    let r = &out.report;
    let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
    for v in [&r.k1m, &r.k1u, &r.k1c, &r.pruned_a, &r.pruned_b, &r.infeasible, &r.k1] {
        assert!(v.windows(2).all(|w| w[0] < w[1]), "index lists are sorted and unique");
    }
    let (m, u, c) = (set(&r.k1m), set(&r.k1u), set(&r.k1c));
    assert!(m.is_subset(&c) && c.is_subset(&u));
    assert!(u.iter().all(|&k| 1 <= k && k <= r.k_total));
    assert!(set(&r.pruned_a).is_disjoint(&u));
    let expected_c: BTreeSet<usize> = u.difference(&set(&r.pruned_b)).copied().collect();
    match phases {
        Phases::AB => assert_eq!(c, expected_c),
        Phases::AOnly => assert_eq!(c, u),
    }
    assert!(r.front.windows(2).all(|w| w[0].point.j1() <= w[1].point.j1()));

    // Prune soundness, re-checked from the records.
    let master: Vec<ParetoSolution> = out
        .records
        .iter()
        .filter(|rec| m.contains(&rec.k()))
        .flat_map(|rec| rec.front.clone().unwrap())
        .collect();
    let master = nondominated_filter(&master, Epsilon::ZERO);
    for &k in &r.pruned_a {
        let u = out.records[k - 1].utopia;
        assert!(master.iter().any(|s| below_or_equal(&s.point, &u, 0.0)), "k={k}");
    }

    // The final front is the filtered union of the retained fronts.
    let union: Vec<ParetoSolution> = out
        .records
        .iter()
        .filter(|rec| c.contains(&rec.k()))
        .flat_map(|rec| rec.front.clone().unwrap())
        .collect();
    let expect = nondominated_filter(&union, Epsilon::ZERO);
    assert_eq!(zset(&expect), zset(&r.front));
    assert_eq!(expect.len(), r.front.len());
    out.report
}

#[test]
fn report_structure_and_counts_e1() {
    let beta = 21;
    let ab = check_structure(&make_e1(), Phases::AB);
    assert_eq!(ab.k_total, 121);
    assert_eq!(ab.nlp.total, ab.expected_nlp_ab(beta));
    assert_eq!(ab.nlp.a1, 2 * 121);
    assert_eq!(ab.nlp.total, 331 - ab.k1m.len() as u64 - 21 * (4 - ab.k1c.len() as u64));

    let a = check_structure(&make_e1(), Phases::AOnly);
    assert_eq!(a.nlp.total, 2 * 121 + beta as u64 * a.k1u.len() as u64);
    assert_eq!((a.k1m.clone(), a.k1u.clone()), (ab.k1m.clone(), ab.k1u.clone()));
}

#[test]
fn report_structure_and_counts_e2() {
    let ab = check_structure(&make_e2(), Phases::AB);
    assert_eq!(ab.k_total, 4096);
    assert!(ab.infeasible.is_empty());
    assert_eq!(ab.nlp.total, ab.expected_nlp_ab(21));
}

fn assert_same_front(a: &PruneReport, b: &PruneReport, tol: f64) {
    let h = hausdorff(&a.front_points(), &b.front_points());
    assert!(h <= tol, "hausdorff {h:e}");
    assert_eq!(zset(&a.front), zset(&b.front));
}

#[test]
fn phase_a_alone_reproduces_oracle() {
    let cfg = PipelineConfig::default();
    for p in [make_quad(), make_toy_constrained(), make_e1()] {
        let oracle = oracle_front(&p, &cfg).unwrap();
        let a = run_pipeline(&p, Phases::AOnly, &cfg).unwrap();
        assert_same_front(&a, &oracle, 1e-4);
        assert_eq!(a.k1, oracle.k1, "{}", p.name());
    }
}

#[test]
fn single_realization_is_kept_throughout() {
    let p = make_quad();
    let cfg = PipelineConfig::default();
    let r = run_pipeline(&p, Phases::AB, &cfg).unwrap();
    assert_eq!((r.k1m.clone(), r.k1u.clone(), r.k1c.clone()), (vec![1], vec![1], vec![1]));
    let dec = Decomposer::new(&p, Solver::new(SolverConfig::default()));
    let front = dec.subproblem_front(&enumerate_realizations(&p, 10).unwrap()[0], 21).unwrap();
    assert_eq!(r.front, front);
    assert_eq!(r.nlp.total, 2 + 21);
}

#[test]
fn toy_constrained_prunes_by_center_and_reports_infeasible() {
    let r = run_pipeline(&make_toy_constrained(), Phases::AB, &PipelineConfig::default()).unwrap();
    assert_eq!(r.infeasible, vec![3]);
    assert_eq!(r.k1m, vec![1]);
    assert_eq!(r.k1u, vec![1, 2]);
    assert_eq!(r.pruned_b, vec![2]);
    assert_eq!(r.k1c, vec![1]);
    assert_eq!(r.k1, vec![1]);
    for s in &r.front {
        assert!(s.y[0] >= 0.5 - 1e-8, "feasible front point");
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let p = make_e1();
    let one = PipelineConfig { threads: 1, ..PipelineConfig::default() };
    let many = PipelineConfig { threads: 4, ..PipelineConfig::default() };
    let a = run_pipeline(&p, Phases::AB, &one).unwrap();
    let b = run_pipeline(&p, Phases::AB, &many).unwrap();
    let c = run_pipeline(&p, Phases::AB, &one).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn common_scaling_leaves_every_decision_unchanged() {
    let cfg = PipelineConfig::default();
    let p = make_e1();
    let base = run_pipeline(&p, Phases::AB, &cfg).unwrap();
    let scaled = run_pipeline(&p.scaled(2.5, 2.5).unwrap(), Phases::AB, &cfg).unwrap();
    assert_eq!(base.k1m, scaled.k1m);
    assert_eq!(base.pruned_a, scaled.pruned_a);
    assert_eq!(base.k1u, scaled.k1u);
    assert_eq!(base.pruned_b, scaled.pruned_b);
    assert_eq!(base.k1c, scaled.k1c);
    assert_eq!(base.k1, scaled.k1);
}

#[test]
fn separate_scaling_leaves_phase_a_unchanged() {
    let cfg = PipelineConfig { scaling: FrontScaling::AnchorRange, ..PipelineConfig::default() };
    for p in [make_e1(), make_e2()] {
        let base = run_pipeline(&p, Phases::AOnly, &cfg).unwrap();
        let scaled = run_pipeline(&p.scaled(2.5, 7.3).unwrap(), Phases::AOnly, &cfg).unwrap();
        assert_eq!(base.k1m, scaled.k1m, "{}", p.name());
        assert_eq!(base.pruned_a, scaled.pruned_a, "{}", p.name());
        assert_eq!(base.k1u, scaled.k1u, "{}", p.name());
    }
}

#[test]
fn solutions_are_locally_optimal_on_smooth_problems() {
    let p = make_e2();
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let reals = enumerate_realizations(&p, 10_000).unwrap();
    for _ in 0..60 {
        let r = &reals[rng.gen_range(0..reals.len())];
        let w: f64 = rng.gen_range(0.0..=1.0);
        let obj = ScalarizedObjective::new(&p, r, w, cfg.penalty_coefficient).unwrap();
        let res = solve_scalarized(&obj, &cfg).unwrap();
        let mut norm2 = 0.0;
        for (i, b) in p.bounds().iter().enumerate() {
            assert!(b.lower <= res.y_star[i] && res.y_star[i] <= b.upper);
            let h = 1e-6 * res.y_star[i].abs().max(1.0);
            let at = |t: f64| {
                let mut y = res.y_star.clone();
                y[i] = t;
                obj.value(&y)
            };
            let (lo, hi) = ((res.y_star[i] - h).max(b.lower), (res.y_star[i] + h).min(b.upper));
            let g = (at(hi) - at(lo)) / (hi - lo);
            let at_lower = res.y_star[i] - b.lower <= cfg.step_tol * (1.0 + b.lower.abs());
            let at_upper = b.upper - res.y_star[i] <= cfg.step_tol * (1.0 + b.upper.abs());
            let blocked = (at_lower && g > 0.0) || (at_upper && g < 0.0);
            if !blocked {
                norm2 += g * g;
            }
        }
        assert!(
            norm2.sqrt() <= 1e-4 * (1.0 + res.scalar_value.abs()),
            "k={} w={w}: projected gradient {:e}",
            r.k,
            norm2.sqrt()
        );
        let [j1, j2] = p.objectives(&res.y_star, &r.z);
        assert_eq!((res.point.j1(), res.point.j2()), (j1, j2));
        assert!(rel_err(res.scalar_value, w * j1 + (1.0 - w) * j2) < 1e-14);
    }
}
