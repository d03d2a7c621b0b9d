//! Acceptance suite: one test per shipped guarantee, each asserting the
//! documented tolerance and runtime budget. Run with
//! `cargo test -p hyperlap --test acceptance`.

use std::time::{Duration, Instant};

use hyperlap::chm::{
    chm_step, commutativity_check, ensemble_run, invariance_report, CouplingOperator,
    EnsembleSpec, EvalMode, ScalarMap,
};
use hyperlap::corpus::{self, random_hypergraph, random_oriented};
use hyperlap::harmonic::{check_maximum_principle, solve_dirichlet};
use hyperlap::ratio::{rat, rint, to_f64, Rat};
use hyperlap::spectral::{certify_chemical, certify_rw, eigen_decompose, Extremal};
use hyperlap::stochastic::{
    absorbing_walk, empirical_kernel, evolve_distribution, simulate_walk, EvolveMode,
    WalkSimulator, DEFAULT_ABSORPTION_CAP,
};
use hyperlap::{
    chemical, chemical_apply, factorize, graph_rw_laplacian, parse, parse_oriented,
    AnyHypergraph, ChemicalKind, Direction, Error, WalkVariant,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SYMMETRIC_VARIANTS: [WalkVariant; 3] = [
    WalkVariant::Simple,
    WalkVariant::TwoStep,
    WalkVariant::EdgeSizeBiased,
];

fn bundled(file: &str) -> AnyHypergraph {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/");
    let text = std::fs::read_to_string(format!("{path}{file}")).expect("bundled data file");
    parse(&text).expect("bundled data parses")
}

/// Minimum edge budget that lets the generator connect `n` vertices with
/// hyperedges of cardinality at most `card`.
fn min_edges(n: usize, card: usize) -> usize {
    if n > card {
        1 + (n - card).div_ceil(card - 1)
    } else {
        1
    }
}

/// 200 deterministic connected instances with 2..=10 vertices.
fn corpus_sizes() -> impl Iterator<Item = (usize, usize, usize, u64)> {
    (0..200).map(|i| {
        let n = 2 + (i * 7) % 9; // 2..=10
        let card = (2 + i % 3).min(n); // 2..=4, never above n
        let edges = min_edges(n, card) + i % 4;
        (n, edges, card, i as u64)
    })
}

fn budget(start: Instant, cap: Duration, label: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= cap,
        "{label} took {elapsed:?}, budget {cap:?}"
    );
}

/// Exact factorization of the bundled four-vertex example: degrees,
/// affinity halves, and the effective-graph weights, all as rationals.
#[test]
fn two_step_factorization_of_the_bundled_example_is_exact() {
    let start = Instant::now();
    let f = factorize(&bundled("fig1.hg"), WalkVariant::TwoStep).unwrap();

    assert_eq!(f.degrees(), &[rint(3), rint(2), rint(1), rint(1)]);
    let twice: [[i64; 4]; 4] = [[0, 3, 2, 1], [3, 0, 0, 1], [2, 0, 0, 0], [1, 1, 0, 0]];
    for (i, row) in twice.iter().enumerate() {
        for (j, &doubled) in row.iter().enumerate() {
            assert_eq!(f.affinity()[(i, j)], rat(doubled, 2), "affinity ({i},{j})");
        }
    }

    let g = f.effective_graph();
    let w = g.weights();
    assert_eq!(w[(0, 1)], rat(3, 2));
    assert_eq!(w[(0, 2)], rint(1));
    assert_eq!(w[(0, 3)], rat(1, 2));
    assert_eq!(w[(1, 3)], rat(1, 2));
    assert_eq!(w[(1, 2)], rint(0));
    assert_eq!(w[(2, 3)], rint(0));
    assert!(g.is_symmetric());

    budget(start, Duration::from_secs(1), "exact factorization");
    println!("PASS: bundled example factorizes exactly");
}

/// Every symmetric walk equals the random walk on its effective graph,
/// entrywise in exact arithmetic, across 200 random connected inputs.
#[test]
fn effective_graphs_reproduce_every_symmetric_walk_exactly() {
    let start = Instant::now();
    let mut checked = 0usize;
    for (n, edges, card, seed) in corpus_sizes() {
        let h = AnyHypergraph::from(random_hypergraph(n, edges, card, seed));
        for variant in SYMMETRIC_VARIANTS {
            let f = factorize(&h, variant).unwrap();
            let via_graph =
                graph_rw_laplacian(&f.effective_graph(), Direction::Forward).unwrap();
            assert_eq!(
                via_graph,
                *f.assemble().matrix(),
                "effective-graph walk differs (n={n}, edges={edges}, card={card}, seed={seed}, {variant:?})"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 600);
    budget(start, Duration::from_secs(30), "effective-graph equivalence");
    println!("PASS: {checked} effective-graph equalities, all exact");
}

/// Walk spectra are real in [0, 2], zero has a constant eigenfunction, and
/// the top is attained exactly for two-colorable effective graphs, with the
/// alternating sign pattern verified.
#[test]
fn walk_spectra_certify_their_interval_and_extremes() {
    let start = Instant::now();
    for (n, edges, card, seed) in corpus_sizes() {
        let h = AnyHypergraph::from(random_hypergraph(n, edges, card, seed));
        for variant in SYMMETRIC_VARIANTS {
            let f = factorize(&h, variant).unwrap();
            let cert = certify_rw(&f.assemble()).unwrap();
            let ctx = format!("n={n}, edges={edges}, card={card}, seed={seed}, {variant:?}");
            assert!(cert.lambda_min >= -1e-9, "lambda_min out of range ({ctx})");
            assert!(cert.lambda_max <= 2.0 + 1e-9, "lambda_max out of range ({ctx})");
            assert!(cert.zero_eigenvalue, "zero eigenvalue missing ({ctx})");
            assert_eq!(cert.constant_kernel, Some(true), "kernel not constant ({ctx})");
            let Extremal::RandomWalk {
                lambda_max_is_two,
                bipartite,
                matches,
                sign_pattern_ok,
            } = cert.extremal
            else {
                panic!("walk certificate has the wrong extremal family ({ctx})");
            };
            assert!(
                matches,
                "top eigenvalue {} vs two-colorable {} ({ctx})",
                cert.lambda_max, bipartite
            );
            if lambda_max_is_two {
                assert_eq!(sign_pattern_ok, Some(true), "sign pattern failed ({ctx})");
            }
            assert!(cert.ok, "certificate not ok ({ctx})");
        }
    }

    // both sides of the dichotomy on instances where the answer is known
    for (h, expect_two) in [
        (corpus::pair(), true),
        (corpus::cycle(4), true),
        (corpus::cycle(3), false),
    ] {
        let f = factorize(&h.into(), WalkVariant::Simple).unwrap();
        let cert = certify_rw(&f.assemble()).unwrap();
        let Extremal::RandomWalk { lambda_max_is_two, .. } = cert.extremal else {
            unreachable!()
        };
        assert_eq!(lambda_max_is_two, expect_two);
        assert!(cert.ok);
    }

    budget(start, Duration::from_secs(60), "spectral certification");
    println!("PASS: 600 walk spectra certified in [0, 2] with matching extremes");
}

/// The assembled signed operator agrees with its incidence (operator) form
/// to 1e-12, its spectrum stays in [0, psi], and the three-vertex reaction
/// has spectrum {0, 0, 3} with a non-constant function in its kernel.
#[test]
fn signed_operators_match_their_incidence_form_and_interval() {
    let start = Instant::now();
    for (n, edges, card, seed) in corpus_sizes() {
        let h = random_oriented(n, edges, card, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let f: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        for kind in [ChemicalKind::Normalized, ChemicalKind::DegreeNormalized] {
            let c = chemical(&h, kind).unwrap();
            let via_matrix = c.to_f64() * DVector::from_column_slice(&f);
            let via_incidence = chemical_apply(&h, kind, &f).unwrap();
            for v in 0..n {
                assert!(
                    (via_matrix[v] - via_incidence[v]).abs() < 1e-12,
                    "matrix vs incidence at vertex {v} (n={n}, seed={seed}, {kind:?}): {} vs {}",
                    via_matrix[v],
                    via_incidence[v]
                );
            }
            let cert = certify_chemical(&c).unwrap();
            assert!(cert.lambda_min >= -1e-9, "negative eigenvalue (seed={seed}, {kind:?})");
            assert!(
                cert.lambda_max <= cert.interval.1 + 1e-9,
                "eigenvalue above the cardinality bound (seed={seed}, {kind:?})"
            );
        }
    }

    // two inputs feeding one output: spectrum {0, 0, 3}, kernel (1, 1, 2)
    let h = parse_oriented("hypergraph oriented\nvertices v1 v2 v3\nedge e in:v1,v2 out:v3\n")
        .unwrap();
    let c = chemical(&h, ChemicalKind::Normalized).unwrap();
    let spectrum = eigen_decompose(&c.to_f64(), Some(&c.weights_f64())).unwrap();
    let (vals, _) = spectrum.real().expect("self-adjoint spectrum is real");
    let expected = [0.0, 0.0, 3.0];
    assert_eq!(vals.len(), 3);
    for (got, want) in vals.iter().zip(expected) {
        assert!((got - want).abs() < 1e-9, "eigenvalue {got} vs {want}");
    }
    let witness = [1.0, 1.0, 2.0];
    let image = c.to_f64() * DVector::from_column_slice(&witness);
    assert!(image.amax() < 1e-12, "witness is not in the kernel: {image}");
    let via_incidence = chemical_apply(&h, ChemicalKind::Normalized, &witness).unwrap();
    assert!(via_incidence.iter().all(|x| x.abs() < 1e-12));

    budget(start, Duration::from_secs(60), "signed-operator agreement");
    println!("PASS: 400 signed operators match their incidence form; reaction spectrum {{0, 0, 3}}");
}

/// Dirichlet solutions respect the boundary extremes on random walk
/// operators; the signed operator admits a non-constant harmonic function;
/// absorption frequencies reproduce the Dirichlet solution within 4
/// standard errors at 10^5 walkers.
#[test]
fn dirichlet_solutions_obey_the_maximum_principle_dichotomy() {
    let mut solved = 0usize;
    let mut attempt = 0u64;
    while solved < 100 {
        let i = attempt;
        attempt += 1;
        let n = 3 + (i as usize * 5) % 8; // 3..=10
        let card = (2 + i as usize % 3).min(n);
        let edges = min_edges(n, card) + i as usize % 4;
        let h = AnyHypergraph::from(random_hypergraph(n, edges, card, i));
        let variant = SYMMETRIC_VARIANTS[i as usize % 3];
        let f = factorize(&h, variant).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(i ^ 0xb0a2d);
        let k = rng.random_range(1..n);
        let picked = rand::seq::index::sample(&mut rng, n, k);
        let boundary: Vec<(usize, f64)> = picked
            .iter()
            .map(|v| (v, rng.random::<f64>() * 2.0 - 1.0))
            .collect();

        match solve_dirichlet(&f.assemble().to_f64(), &boundary) {
            Ok(sol) => {
                assert!(
                    sol.within_bounds,
                    "interior value escapes the boundary range (attempt {i})"
                );
                assert!(sol.residual < 1e-9, "interior residual {} (attempt {i})", sol.residual);
                solved += 1;
            }
            // removing the boundary may split the rest; not a counterexample
            Err(Error::DisconnectedInterior) => continue,
            Err(e) => panic!("unexpected Dirichlet failure (attempt {i}): {e}"),
        }
    }

    // the signed operator breaks the dichotomy: a harmonic non-constant
    // function exists, and the operator is outside the guarded class
    let h = parse_oriented("hypergraph oriented\nvertices v1 v2 v3\nedge e in:v1,v2 out:v3\n")
        .unwrap();
    let c = chemical(&h, ChemicalKind::Normalized).unwrap();
    let report = check_maximum_principle(&c.to_f64(), &[1.0, 1.0, 2.0]).unwrap();
    assert!(report.harmonic, "witness is harmonic");
    assert!(!report.constant, "witness is non-constant");
    assert!(!report.in_class, "signed operator must sit outside the class");
    assert!(report.spread > 0.5);

    // absorption frequencies vs the Dirichlet solution, fixed seed
    let f = factorize(&bundled("fig1.hg"), WalkVariant::TwoStep).unwrap();
    let m = f.assemble().to_f64();
    let sol = solve_dirichlet(&m, &[(2, 0.0), (3, 1.0)]).unwrap();
    let sim = WalkSimulator::new(&f.kernel_f64()).unwrap();
    let absorbed =
        absorbing_walk(&sim, 0, &[2, 3], 100_000, 2026, DEFAULT_ABSORPTION_CAP).unwrap();
    let hit_last = absorbed.frequency[1];
    let se = absorbed.std_err[1];
    assert!(
        (hit_last - sol.values[0]).abs() <= 4.0 * se,
        "absorption {hit_last} vs Dirichlet {} with se {se}",
        sol.values[0]
    );

    println!(
        "PASS: {solved} Dirichlet solutions within bounds; signed witness harmonic; absorption {hit_last:.4} vs {:.4} (4se = {:.4})",
        sol.values[0],
        4.0 * se
    );
}

/// A sampled million-step walk reproduces its kernel within four standard
/// errors; forward evolution conserves mass to 1e-12 over a thousand steps;
/// the two-vertex walk alternates exactly.
#[test]
fn sampled_walks_match_their_kernel_and_conserve_mass() {
    let f = factorize(&bundled("fig1.hg"), WalkVariant::TwoStep).unwrap();
    let kernel = f.kernel_f64();
    let n = kernel.nrows();
    let sim = WalkSimulator::new(&kernel).unwrap();

    let est = empirical_kernel(&sim, 0, 1_000_000, 4).unwrap();
    for i in 0..n {
        assert!(est.visits[i] > 0, "state {i} never visited");
        for j in 0..n {
            let p = kernel[(i, j)];
            if p == 0.0 {
                assert_eq!(est.p_hat[i][j], 0.0, "impossible transition ({i},{j}) sampled");
            } else {
                let gap = (est.p_hat[i][j] - p).abs();
                assert!(
                    gap <= 4.0 * est.std_err[i][j],
                    "({i},{j}): estimate {} vs {} exceeds 4 standard errors",
                    est.p_hat[i][j],
                    p
                );
            }
        }
    }

    let uniform = vec![1.0 / n as f64; n];
    let series = evolve_distribution(&kernel, &uniform, 1_000, EvolveMode::Forward).unwrap();
    assert_eq!(series.states.len(), 1_001);
    for (t, state) in series.states.iter().enumerate() {
        let total: f64 = state.iter().sum();
        assert!(
            (total - 1.0).abs() <= 1e-12,
            "mass {total} at step {t} drifted"
        );
    }

    // the two-vertex walk is deterministic: strict alternation
    let pair = factorize(&bundled("k2.hg"), WalkVariant::Simple).unwrap();
    let pk = pair.kernel_f64();
    let walk = simulate_walk(&WalkSimulator::new(&pk).unwrap(), 0, 50, 9).unwrap();
    for (t, &v) in walk.positions.iter().enumerate() {
        assert_eq!(v, t % 2, "walk left the alternation at step {t}");
    }
    let pulses = evolve_distribution(&pk, &[1.0, 0.0], 10, EvolveMode::Forward).unwrap();
    for (t, state) in pulses.states.iter().enumerate() {
        let expected = if t % 2 == 0 { [1.0, 0.0] } else { [0.0, 1.0] };
        assert_eq!(state.as_slice(), expected, "pulse at step {t}");
    }

    println!("PASS: million-step kernel estimate within 4 standard errors; mass conserved; alternation exact");
}

/// Unit-box invariance across the full (variant, eps, map) grid with zero
/// violations, and tight escape boxes with explicit escaping states for
/// eps outside [0, 1].
#[test]
fn unit_interval_invariance_and_escape_boxes() {
    let start = Instant::now();

    let mut undirected: Vec<AnyHypergraph> = vec![
        corpus::running_example().into(),
        corpus::pair().into(),
        corpus::cycle(4).into(),
        corpus::path(5).into(),
    ];
    for seed in 0..4u64 {
        let n = 4 + (seed as usize * 2) % 7;
        let card = 3.min(n);
        undirected.push(random_hypergraph(n, min_edges(n, card) + 2, card, seed).into());
    }
    let oriented: Vec<AnyHypergraph> = (0..3u64)
        .map(|seed| random_oriented(5 + seed as usize, 6, 3, seed).into())
        .collect();

    let mut combos: Vec<(AnyHypergraph, WalkVariant)> = Vec::new();
    for h in undirected {
        for variant in SYMMETRIC_VARIANTS {
            combos.push((h.clone(), variant));
        }
    }
    for h in oriented {
        combos.push((h, WalkVariant::OrientedWalk));
    }

    let maps = [
        ScalarMap::tent(4.0).unwrap(),
        ScalarMap::tent(2.3).unwrap(),
        ScalarMap::logistic(4.0).unwrap(),
        ScalarMap::logistic(3.1).unwrap(),
    ];
    let mut states_checked = 0usize;
    for (h, variant) in &combos {
        let l = factorize(h, *variant).unwrap().assemble();
        for tenth in 0..=10 {
            let eps = tenth as f64 / 10.0;
            let coupling = CouplingOperator::from_rw(&l, eps).unwrap();
            for map in &maps {
                let report = invariance_report(&coupling, map);
                assert!(
                    report.invariant && report.witness.is_none(),
                    "exact invariance failed ({variant:?}, eps={eps}, {:?})",
                    map.kind()
                );
                let mut rng = ChaCha8Rng::seed_from_u64((tenth * 31) as u64);
                let n = coupling.vertex_count();
                for _ in 0..50 {
                    let x: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
                    let y = chm_step(&coupling, map, &x, EvalMode::Strict).unwrap();
                    assert!(
                        y.iter().all(|&v| (0.0..=1.0).contains(&v)),
                        "output left [0,1] ({variant:?}, eps={eps}, {:?}): {y:?}",
                        map.kind()
                    );
                    states_checked += 1;
                }
            }
        }
    }

    // outside [0, 1] the attainable set is the predicted box, and a
    // concrete in-box state escapes
    let l = factorize(&bundled("fig1.hg"), WalkVariant::TwoStep)
        .unwrap()
        .assemble();
    let map = ScalarMap::tent(3.8).unwrap();
    let b = map.max_value();
    for eps in [-0.5, 1.5] {
        let coupling = CouplingOperator::from_rw(&l, eps).unwrap();
        let report = invariance_report(&coupling, &map);
        assert!(!report.invariant, "eps={eps} must not be invariant");
        let (lo, hi) = (-0.5 * b, 1.5 * b);
        for (i, &(a, z)) in report.coordinate_ranges.iter().enumerate() {
            assert!(
                (a - lo).abs() < 1e-9 && (z - hi).abs() < 1e-9,
                "coordinate {i} range ({a}, {z}) vs box ({lo}, {hi}) at eps={eps}"
            );
        }
        let witness = report.witness.expect("an escaping coordinate exists");
        assert!(
            witness.value < 0.0 || witness.value > 1.0,
            "witness value {} stayed inside [0,1]",
            witness.value
        );
        assert!(witness.state.iter().all(|&x| (0.0..=1.0).contains(&x)));
        let image = chm_step(&coupling, &map, &witness.state, EvalMode::Extended).unwrap();
        assert!(
            image.iter().any(|&v| !(0.0..=1.0).contains(&v)),
            "witness state failed to escape at eps={eps}"
        );
    }

    // the smallest case by hand: two vertices, eps = 1.5, map values (0, 1)
    let pair = factorize(&bundled("k2.hg"), WalkVariant::Simple)
        .unwrap()
        .assemble();
    let coupling = CouplingOperator::from_rw(&pair, 1.5).unwrap();
    let full = ScalarMap::tent(4.0).unwrap();
    let image = chm_step(&coupling, &full, &[0.0, 0.5], EvalMode::Extended).unwrap();
    assert!((image[0] - 1.5).abs() < 1e-12 && (image[1] + 0.5).abs() < 1e-12);

    budget(start, Duration::from_secs(60), "invariance grid");
    println!("PASS: zero violations over {states_checked} states; escape boxes tight at eps = -0.5 and 1.5");
}

/// Mixing and mapping commute on [0, 1/4]^N: stepping twice equals mixing
/// the squared map, to 1e-12, across a 5x5 (mu, eps) grid with 10^4 states
/// each; a hand-derived two-vertex point reproduces to 5 decimals.
#[test]
fn mixing_and_mapping_commute_on_the_linear_region() {
    let start = Instant::now();
    let l = factorize(&bundled("fig1.hg"), WalkVariant::TwoStep)
        .unwrap()
        .assemble();
    for i in 1..=5 {
        let mu = 0.8 * i as f64;
        let map = ScalarMap::tent(mu).unwrap();
        for j in 0..5 {
            let eps = j as f64 / 4.0;
            let coupling = CouplingOperator::from_rw(&l, eps).unwrap();
            let report = commutativity_check(&coupling, &map, 10_000, 17).unwrap();
            assert!(
                report.ok && report.max_deviation < 1e-12,
                "deviation {} at mu={mu}, eps={eps}",
                report.max_deviation
            );
        }
    }

    let pair = factorize(&bundled("k2.hg"), WalkVariant::Simple)
        .unwrap()
        .assemble();
    let coupling = CouplingOperator::from_rw(&pair, 0.3).unwrap();
    let map = ScalarMap::tent(3.8).unwrap();
    let one = chm_step(&coupling, &map, &[0.1, 0.2], EvalMode::Strict).unwrap();
    let two = chm_step(&coupling, &map, &one, EvalMode::Strict).unwrap();
    assert!((two[0] - 0.51262).abs() < 5e-6, "first coordinate {}", two[0]);
    assert!((two[1] - 0.57038).abs() < 5e-6, "second coordinate {}", two[1]);

    budget(start, Duration::from_secs(60), "commutativity grid");
    println!("PASS: 25 grid points commute to 1e-12; hand point (0.51262, 0.57038) reproduced");
}

/// Ensemble dynamics separate the operator families: the walk coupling
/// keeps every marginal inside [0, 1] for all 30 steps, the signed
/// coupling's realized range escapes within 30 steps.
#[test]
fn ensembles_separate_stochastic_from_signed_coupling() {
    let start = Instant::now();
    let any = bundled("fig2.hg");
    let AnyHypergraph::Oriented(h) = &any else {
        panic!("bundled reaction input must be oriented")
    };
    let map = ScalarMap::tent(3.8).unwrap();
    let spec = EnsembleSpec {
        states: 10_000,
        steps: 30,
        bins: 32,
        seed: 11,
        mode: EvalMode::Extended,
    };

    let walk = factorize(&any, WalkVariant::OrientedWalk).unwrap().assemble();
    let stochastic = CouplingOperator::from_rw(&walk, 0.3).unwrap();
    let contained = ensemble_run(&stochastic, &map, &spec).unwrap();
    assert!(!contained.domain_escaped, "walk coupling escaped [0, 1]");
    for (t, row) in contained.histograms.iter().enumerate() {
        for (v, hist) in row.iter().enumerate() {
            assert!(
                hist.min >= 0.0 && hist.max <= 1.0,
                "marginal ({t}, {v}) realized [{}, {}]",
                hist.min,
                hist.max
            );
        }
    }

    let signed = CouplingOperator::from_chemical(
        &chemical(h, ChemicalKind::Normalized).unwrap(),
        0.3,
    )
    .unwrap();
    let escaped = ensemble_run(&signed, &map, &spec).unwrap();
    assert!(escaped.domain_escaped, "signed coupling stayed in [0, 1]");
    let first_escape = escaped
        .histograms
        .iter()
        .position(|row| row.iter().any(|h| h.min < 0.0 || h.max > 1.0))
        .expect("escape must be visible in some realized range");
    assert!(first_escape <= 30);

    budget(start, Duration::from_secs(120), "ensemble separation");
    println!("PASS: walk ensemble contained; signed ensemble escapes at step {first_escape}");
}

/// Raw rationals from the exact layer round-trip the checks above.
#[test]
fn exact_arithmetic_backs_the_float_reports() {
    let f = factorize(&bundled("fig1.hg"), WalkVariant::TwoStep).unwrap();
    let exact: DMatrix<Rat> = f.assemble().matrix().clone();
    let floats = f.assemble().to_f64();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(floats[(i, j)], to_f64(exact[(i, j)]));
        }
    }
    println!("PASS: float reports are rounded exact rationals");
}
