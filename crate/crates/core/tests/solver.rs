mod common;

use std::time::Duration;

use pitchopt_core::{
    build_graph, incumbent_log, solve_approx, solve_exact, solve_ga, validate_sequence, Error,
    GaConfig, Instance, Objective, PitchCatalog, SolveOptions, Symmetry,
};

fn single() -> SolveOptions {
    SolveOptions {
        threads: Some(1),
        ..SolveOptions::default()
    }
}

fn with(symmetry: Symmetry) -> SolveOptions {
    SolveOptions {
        symmetry,
        ..single()
    }
}

fn constrained_instances() -> Vec<Instance> {
    let cat = PitchCatalog::reference();
    let mut out = Vec::new();
    for n in [4, 6, 7] {
        let base = Instance::new(cat.clone(), n).unwrap();
        out.push(base.clone());
        out.push(base.clone().with_incompatible([(0, 2), (2, 0)]).unwrap());
        out.push(base.clone().with_max_seq(vec![Some(2); 3]).unwrap());
        out.push(
            base.clone()
                .with_max_seq(vec![None, Some(1), Some(2)])
                .unwrap()
                .with_incompatible([(1, 0)])
                .unwrap()
                .with_cyclic(false),
        );
        out.push(
            base.with_occurrences(vec![1, 0, 2], vec![3, n, n])
                .unwrap()
                .with_incompatible([(2, 2)])
                .unwrap(),
        );
    }
    out
}

#[test]
fn exact_matches_brute_force_under_constraints() {
    for inst in constrained_instances() {
        let got = solve_exact(&inst, &single());
        match common::brute_force(&inst, true) {
            None => assert!(matches!(got, Err(Error::Infeasible(_)))),
            Some((value, key)) => {
                let got = got.unwrap();
                assert!((got.exact_noise - value).abs() < 1e-9, "{inst:?}");
                assert_eq!(got.best_sequence.types(), key.as_slice(), "{inst:?}");
                assert!(validate_sequence(&got.best_sequence, &inst).passes(inst.cyclic()));
            }
        }
    }
}

#[test]
fn approx_matches_brute_force_under_constraints() {
    for inst in constrained_instances() {
        if let Some((value, key)) = common::brute_force(&inst, false) {
            let got = solve_approx(&inst, &single()).unwrap();
            assert!((got.approx_noise - value).abs() < 1e-9, "{inst:?}");
            assert_eq!(got.best_sequence.types(), key.as_slice());
        }
    }
}

#[test]
fn reference_triples_match_brute_force() {
    for (n, lo, hi) in [(6, 1, 4), (8, 2, 4), (9, 1, 7), (9, 3, 3)] {
        let inst = Instance::triple(n, lo, hi).unwrap();
        let (value, key) = common::brute_force(&inst, true).unwrap();
        let got = solve_exact(&inst, &SolveOptions::default()).unwrap();
        assert!((got.exact_noise - value).abs() < 1e-9);
        assert_eq!(got.best_sequence.types(), key.as_slice());
    }
}

#[test]
fn symmetry_options_agree() {
    for (n, lo, hi) in [(5, 1, 3), (7, 1, 5), (9, 2, 5), (11, 1, 9)] {
        let inst = Instance::triple(n, lo, hi).unwrap();
        let base = solve_exact(&inst, &with(Symmetry::None)).unwrap();
        for s in [Symmetry::FixFirst, Symmetry::RotationCuts] {
            let other = solve_exact(&inst, &with(s)).unwrap();
            assert!((other.exact_noise - base.exact_noise).abs() < 1e-9);
            assert_eq!(other.best_sequence, base.best_sequence);
            assert!(other.nodes_explored <= base.nodes_explored);
        }
    }
}

#[test]
fn symmetry_rejected_for_open_constraints() {
    let inst = Instance::triple(6, 1, 4)
        .unwrap()
        .with_incompatible([(0, 2)])
        .unwrap()
        .with_cyclic(false);
    assert!(solve_exact(&inst, &with(Symmetry::RotationCuts)).is_err());
    assert!(solve_exact(&inst, &with(Symmetry::None)).is_ok());
}

#[test]
fn wider_windows_never_hurt() {
    let mut last = f64::INFINITY;
    for (lo, hi) in [(3, 3), (2, 4), (2, 5), (1, 6), (0, 9)] {
        let inst = Instance::triple(9, lo, hi).unwrap();
        let got = solve_exact(&inst, &single()).unwrap();
        assert!(got.exact_noise <= last + 1e-12, "({lo},{hi})");
        last = got.exact_noise;
    }
}

#[test]
fn graph_minimum_per_length_matches_exhaustive_search() {
    let inst = Instance::triple(7, 0, 7).unwrap();
    let opts = SolveOptions {
        exhaustive_lengths: true,
        ..single()
    };
    let exact = solve_exact(&inst, &opts).unwrap();
    for j in 0..=inst.max_trailing() {
        let g = build_graph(
            inst.catalog(),
            inst.tire_length(j).unwrap(),
            inst.harmonics(),
        );
        let (_, value) = g.min_noise_path(7, Objective::Exact).unwrap();
        assert!((exact.per_length_best[&j] - value).abs() < 1e-9, "j={j}");
    }
}

#[test]
fn graph_path_counts_match_compositions() {
    let cat = PitchCatalog::reference();
    for t in 1..=40 {
        let g = build_graph(&cat, t, 3);
        for n in 1..=10 {
            assert_eq!(
                g.count_paths(n),
                common::compositions(t, n, cat.lengths()),
                "T={t} N={n}"
            );
        }
    }
}

#[test]
fn incumbent_history() {
    let inst = Instance::triple(9, 1, 7).unwrap();
    let res = solve_exact(&inst, &single()).unwrap();
    let log = incumbent_log(&res);
    assert_eq!(log.len() as u64, res.incumbent_updates);
    assert!(log.windows(2).all(|w| w[1].value < w[0].value));
    let last = log.last().unwrap();
    assert_eq!(last.sequence, res.best_sequence.to_string());
    assert!((last.value - res.exact_noise).abs() < 1e-9);

    let cat = PitchCatalog::from_lengths(&[3], 1.0, 0.1).unwrap();
    let mono = Instance::new(cat, 4).unwrap();
    let res = solve_exact(&mono, &single()).unwrap();
    assert_eq!(incumbent_log(&res).len(), 1);
    assert_eq!(res.best_sequence.to_string(), "1111");
}

#[test]
fn seeded_bound_keeps_optimum() {
    let inst = Instance::triple(8, 1, 6).unwrap();
    let free = solve_exact(&inst, &single()).unwrap();
    let seeded = solve_exact(
        &inst,
        &SolveOptions {
            seed_upper_bound: Some(free.exact_noise + 1e-6),
            ..single()
        },
    )
    .unwrap();
    assert_eq!(seeded.best_sequence, free.best_sequence);
    assert!(seeded.nodes_explored <= free.nodes_explored);
}

#[test]
fn time_limit_marks_result_non_optimal() {
    let inst = Instance::triple(24, 2, 20).unwrap();
    assert!(solve_exact(&inst, &SolveOptions::default()).is_err());
    let opts = SolveOptions {
        time_limit: Some(Duration::from_millis(200)),
        ..SolveOptions::default()
    };
    let res = solve_exact(&inst, &opts).unwrap();
    assert!(!res.optimal);
    assert!(validate_sequence(&res.best_sequence, &inst).is_valid());
}

#[test]
fn approx_solution_bounds() {
    for (n, lo, hi) in [(8, 1, 6), (9, 2, 4), (10, 1, 8)] {
        let inst = Instance::triple(n, lo, hi).unwrap();
        let exact = solve_exact(&inst, &SolveOptions::default()).unwrap();
        let approx = solve_approx(&inst, &SolveOptions::default()).unwrap();
        assert!(approx.exact_noise >= exact.exact_noise - 1e-9);
        assert!(approx.approx_noise <= exact.approx_noise + 1e-9);
        // the exact optimum is within sqrt 2 of the best approximated noise
        assert!(exact.exact_noise <= std::f64::consts::SQRT_2 * approx.approx_noise + 1e-9);
        let gap = pitchopt_core::gap_percent(approx.exact_noise, exact.exact_noise);
        assert!((0.0..=100.0 * (std::f64::consts::SQRT_2 - 1.0)).contains(&gap));
    }
}

#[test]
fn ga_never_beats_exact() {
    for (n, lo, hi) in [(8, 1, 6), (10, 2, 4)] {
        let inst = Instance::triple(n, lo, hi).unwrap();
        let exact = solve_exact(&inst, &SolveOptions::default()).unwrap();
        for seed in 0..3 {
            let cfg = GaConfig {
                population_size: 300,
                max_generations: 80,
                seed,
                ..GaConfig::default()
            };
            let ga = solve_ga(&inst, &cfg).unwrap();
            assert!(ga.exact_noise >= exact.exact_noise - 1e-9);
            assert!(validate_sequence(&ga.best_sequence, &inst).is_valid());
        }
    }
}
