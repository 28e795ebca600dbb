//! Solver and subproblem results checked against brute-force sampling.

mod common;

use common::{golden_section, grid_min_1d, pareto_dominates};
use pareto_prune::benchmarks::{make_e1, make_e2, make_quad};
use pareto_prune::decomposition::realization_from_index;
use pareto_prune::decomposition::index_of;
use pareto_prune::{
    solve_scalarized, Decomposer, ProblemSpec, Realization, ScalarizedObjective, Solver, SolverConfig,
};

fn realization(p: &ProblemSpec, z: &[f64]) -> Realization {
    let k = index_of(p, z).expect("z is a realization");
    realization_from_index(p, k).unwrap()
}

fn decomposer(p: &ProblemSpec) -> Decomposer<'_> {
    Decomposer::new(p, Solver::new(SolverConfig::default()))
}

#[test]
fn e1_equal_weight_solve_matches_dense_grid() {
    let p = make_e1();
    let r = realization(&p, &[0.0, 0.0]);
    let f = |x: f64| {
        let [j1, j2] = p.objectives(&[x], &r.z);
        0.5 * j1 + 0.5 * j2
    };
    let (x_grid, v_grid) = grid_min_1d(f, -5.0, 5.0, 1_000_001);

    let cfg = SolverConfig::default();
    let obj = ScalarizedObjective::new(&p, &r, 0.5, cfg.penalty_coefficient).unwrap();
    let res = solve_scalarized(&obj, &cfg).unwrap();
    assert!((res.scalar_value - v_grid).abs() <= 1e-6, "{} vs {}", res.scalar_value, v_grid);
    assert!((res.y_star[0] - x_grid).abs() <= 1e-3, "{} vs {}", res.y_star[0], x_grid);
}

#[test]
fn e1_utopia_matches_dense_grid() {
    let p = make_e1();
    let r = realization(&p, &[0.0, 0.0]);
    let rec = decomposer(&p).anchors_utopia(&r).unwrap();
    for (i, u) in [rec.utopia.j1(), rec.utopia.j2()].into_iter().enumerate() {
        let (_, v) = grid_min_1d(|x| p.objectives(&[x], &r.z)[i], -5.0, 5.0, 1_000_001);
        assert!((u - v).abs() <= 1e-6, "objective {}: {u} vs grid {v}", i + 1);
    }
}

#[test]
fn e1_front_is_not_dominated_by_dense_samples() {
    let p = make_e1();
    for z in [[0.0, 0.0], [-1.0, 0.0], [0.0, -2.0]] {
        let r = realization(&p, &z);
        let front = decomposer(&p).subproblem_front(&r, 21).unwrap();
        let n = 2_000_000;
        let samples: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let x = -5.0 + 10.0 * i as f64 / (n - 1) as f64;
                let [a, b] = p.objectives(&[x], &r.z);
                (a, b)
            })
            .collect();
        for s in &front {
            let q = (s.point.j1(), s.point.j2());
            assert!(
                !samples.iter().any(|&t| pareto_dominates(t, q)),
                "z={z:?}: front point {q:?} is dominated by a sample"
            );
        }
    }
}

#[test]
fn e2_extreme_weights_pin_to_bounds() {
    let p = make_e2();
    let lower = [2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];
    for k in [1, 777, 2406, 4096] {
        let r = realization_from_index(&p, k).unwrap();
        let rec = decomposer(&p).anchors_utopia(&r).unwrap();
        assert_eq!(rec.anchor1.y, lower);
        assert_eq!(rec.anchor2.y, [10.0, 10.0, 10.0]);
    }
    let r = realization(&p, &[1.0; 6]);
    let rec = decomposer(&p).anchors_utopia(&r).unwrap();
    let expected = 4.0 / 3.0 + 3.0 + 3.0 * 2f64.sqrt();
    assert!((rec.anchor1.point.j1() - expected).abs() < 1e-12);
}

/// 200^3 grid followed by cyclic golden-section refinement.
fn grid_descent_min(f: &dyn Fn(&[f64; 3]) -> f64, lo: [f64; 3], hi: [f64; 3]) -> [f64; 3] {
    let n = 200;
    let axis = |d: usize, i: usize| lo[d] + (hi[d] - lo[d]) * i as f64 / (n - 1) as f64;
    let mut best = ([lo[0], lo[1], lo[2]], f64::INFINITY);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let y = [axis(0, i), axis(1, j), axis(2, l)];
                let v = f(&y);
                if v < best.1 {
                    best = (y, v);
                }
            }
        }
    }
    let mut y = best.0;
    for _ in 0..30 {
        for d in 0..3 {
            let cell = (hi[d] - lo[d]) / (n - 1) as f64;
            let (a, b) = ((y[d] - 2.0 * cell).max(lo[d]), (y[d] + 2.0 * cell).min(hi[d]));
            let (x, _) = golden_section(
                |t| {
                    let mut yy = y;
                    yy[d] = t;
                    f(&yy)
                },
                a,
                b,
            );
            y[d] = x;
        }
    }
    y
}

#[test]
fn e2_center_matches_grid_descent() {
    let p = make_e2();
    let r = realization(&p, &[1.0; 6]);
    let dec = decomposer(&p);
    let rec = dec.anchors_utopia(&r).unwrap();
    let c = dec.center(&rec).unwrap();
    let f = |y: &[f64; 3]| {
        let [j1, j2] = p.objectives(y, &r.z);
        0.5 * j1 + 0.5 * j2
    };
    let y = grid_descent_min(&f, [2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], [10.0; 3]);
    let [j1, j2] = p.objectives(&y, &r.z);
    assert!((c.point.j1() - j1).abs() <= 1e-4, "{} vs {j1}", c.point.j1());
    assert!((c.point.j2() - j2).abs() <= 1e-4, "{} vs {j2}", c.point.j2());
}

#[test]
fn center_minimizes_equal_weights_over_front() {
    let e1 = make_e1();
    let e2 = make_e2();
    let cases: Vec<(&ProblemSpec, usize)> = vec![(&e1, 1), (&e1, 61), (&e1, 100), (&e2, 1), (&e2, 2000), (&e2, 4096)];
    for (p, k) in cases {
        let r = realization_from_index(p, k).unwrap();
        let dec = decomposer(p);
        let c = dec.center(&dec.anchors_utopia(&r).unwrap()).unwrap();
        let cv = 0.5 * (c.point.j1() + c.point.j2());
        for s in dec.subproblem_front(&r, 21).unwrap() {
            assert!(cv <= 0.5 * (s.point.j1() + s.point.j2()) + 1e-6, "{} k={k}", p.name());
        }
    }
}

#[test]
fn quad_center_and_front() {
    let p = make_quad();
    let r = realization_from_index(&p, 1).unwrap();
    let dec = decomposer(&p);
    let rec = dec.anchors_utopia(&r).unwrap();
    assert_eq!((rec.utopia.j1(), rec.utopia.j2()), (0.0, 0.0));
    let c = dec.center(&rec).unwrap();
    assert!((c.y[0] - 0.5).abs() < 1e-9);
    assert!((c.point.j1() - 0.25).abs() < 1e-9 && (c.point.j2() - 0.25).abs() < 1e-9);

    let front = dec.subproblem_front(&r, 21).unwrap();
    assert_eq!(front.len(), 21);
    let (first, last) = (&front[0].point, &front[20].point);
    assert_eq!((first.j1(), first.j2()), (0.0, 1.0));
    assert_eq!((last.j1(), last.j2()), (1.0, 0.0));
    // Closed form: y = 1 - w.
    for (i, s) in front.iter().enumerate() {
        let w = 1.0 - i as f64 / 20.0;
        assert!((s.y[0] - (1.0 - w)).abs() < 1e-9);
    }
}
