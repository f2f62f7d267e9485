//! Acceptance suite: one test per criterion, each asserting its identities
//! exactly (zero tolerance) and its runtime budget, over the bundled model
//! corpus.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use kforge::commands;
use kforge::model::{ModelFile, ParsedGroup, ParsedModel};
use kforge_core::cstruct::{
    beltrami_of, lemma31_check, random_premise_instance, random_structure, structure_of,
    ComplexStructure,
};
use kforge_core::dgla::{Dgla, GradedElement};
use kforge_core::exactlin::{Matrix, Scalar};
use kforge_core::group::{
    average_metric, check_derivation_equivariance, check_operator_equivariance, close_group,
    is_metric_invariant, validate_action, GroupAction,
};
use kforge_core::hodge::{HermitianMetric, HodgeData};
use kforge_core::kuranishi::series::{MultiIndex, ScalarPoly, VectorSeries};
use kforge_core::kuranishi::{equivariance_report, residual_report, solve};
use kforge_core::rng::SplitMix64;

const HEALTHY_MODELS: &[&str] = &[
    "abelian", "heis", "witheq", "mixed", "swap3", "s3", "heis-swap", "heis-torus",
    "mixed-torus", "u1", "so3", "u1-mixed",
];

const BROKEN_MODELS: &[(&str, &str)] = &[
    ("badleibniz", "dgla.leibniz"),
    ("badd2", "dgla.d_squared"),
    ("badjacobi", "dgla.jacobi"),
    ("badantisym", "dgla.antisymmetry"),
    ("heis-badaction", "action.bracket_automorphism"),
    ("badmetric", "metric.positive_definite"),
];

const ACTION_MODELS: &[&str] = &["heis-swap", "heis-torus", "mixed-torus", "swap3", "s3"];

fn model_path(name: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("models");
    path.push(format!("{name}.model"));
    path.to_string_lossy().into_owned()
}

fn load(name: &str) -> ParsedModel {
    ModelFile::read(&model_path(name))
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .to_core()
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

fn action_of(model: &ParsedModel) -> Option<GroupAction> {
    match &model.group {
        None => None,
        Some(ParsedGroup::Generators(generators)) => Some(GroupAction::Finite(
            close_group(model.dgla.space(), generators, 10000).unwrap(),
        )),
        Some(ParsedGroup::Torus(torus)) => Some(GroupAction::Torus(torus.clone())),
    }
}

fn random_element(rng: &mut SplitMix64, dgla: &Dgla, degree: usize) -> GradedElement {
    GradedElement::new(
        degree,
        (0..dgla.space().dim(degree)).map(|_| rng.gaussian()).collect(),
    )
}

#[test]
fn criterion_1_dgla_axiom_suite() {
    for name in HEALTHY_MODELS {
        let start = Instant::now();
        let model = load(name);
        let report = model.dgla.validate();
        assert!(report.all_passed(), "{name}: {:?}", report.first_failure());
        assert!(
            start.elapsed() < Duration::from_secs(1),
            "{name}: validation exceeded 1 s"
        );
    }
    for (name, expected_check) in BROKEN_MODELS {
        let start = Instant::now();
        let report = commands::cmd_validate(&model_path(name), 10000).unwrap();
        assert!(!report.passed(), "{name} should fail validation");
        let failing: Vec<&str> = report
            .sections
            .iter()
            .filter_map(|section| match section {
                kforge::report::Section::Check { name, passed, .. } if !passed => {
                    Some(name.as_str())
                }
                _ => None,
            })
            .collect();
        assert!(
            failing.contains(expected_check),
            "{name}: expected {expected_check} among failures {failing:?}"
        );
        assert!(start.elapsed() < Duration::from_secs(1));
    }
    println!("criterion 1 (DGLA axiom suite): PASS");
}

#[test]
fn criterion_2_hodge_identity_suite() {
    let start = Instant::now();
    let mut rng = SplitMix64::new(42);
    for name in HEALTHY_MODELS {
        let model = load(name);
        let dgla = &model.dgla;
        let hodge = HodgeData::new(dgla, model.metric.clone()).unwrap();
        let top = dgla.max_degree();
        for p in 0..=top {
            for _ in 0..100 {
                let v = random_element(&mut rng, dgla, p);
                let w = random_element(&mut rng, dgla, p);
                let hv = hodge.project_harmonic(&v);
                let box_gv = hodge.apply_laplacian(&hodge.apply_green(&v));
                assert_eq!(hv.add(&box_gv), v, "{name}: v = Hv + box Gv in degree {p}");
                let box_gw = hodge.apply_laplacian(&hodge.apply_green(&w));
                assert!(
                    hodge.metric().inner(&hv, &box_gw).is_zero(),
                    "{name}: orthogonality in degree {p}"
                );
            }
            let h = hodge.projector_matrix(p);
            let g = hodge.green_matrix(p);
            let b = hodge.laplacian_matrix(p);
            let id = Matrix::identity(dgla.space().dim(p));
            assert_eq!(&(h * h), h, "{name}: H^2 = H");
            assert!((h * g).is_zero(), "{name}: HG = 0");
            assert!((g * h).is_zero(), "{name}: GH = 0");
            assert_eq!(g * b, &id - h, "{name}: G box = I - H");
            assert_eq!(b * g, &id - h, "{name}: box G = I - H");
        }
        for p in 0..top {
            assert_eq!(
                dgla.differential_matrix(p) * hodge.green_matrix(p),
                hodge.green_matrix(p + 1) * dgla.differential_matrix(p),
                "{name}: dG = Gd at degree {p}"
            );
        }
        for p in 1..=top {
            assert_eq!(
                hodge.codifferential_matrix(p) * hodge.green_matrix(p),
                hodge.green_matrix(p - 1) * hodge.codifferential_matrix(p),
                "{name}: d*G = Gd* at degree {p}"
            );
        }
        // rank-nullity oracle for the degree-1 harmonic dimension
        let expected = (dgla.space().dim(1) - dgla.differential_matrix(1).rank())
            - dgla.differential_matrix(0).rank();
        assert_eq!(hodge.harmonic_dims()[1], expected, "{name}: harmonic oracle");
    }
    assert!(
        start.elapsed() < Duration::from_secs(5),
        "hodge suite exceeded 5 s: {:?}",
        start.elapsed()
    );
    println!("criterion 2 (Hodge identity suite): PASS");
}

/// Brute-force expansion of `H[sum t_i h_i, sum t_j h_j]`, independent of the
/// solver and series arithmetic.
fn linear_obstruction_oracle(dgla: &Dgla, hodge: &HodgeData, order: usize) -> VectorSeries {
    let h1 = hodge.harmonic_basis_elements(1);
    let n = h1.len();
    let mut out = VectorSeries::zero(n, dgla.space().dim(2), order);
    for (i, hi) in h1.iter().enumerate() {
        for (j, hj) in h1.iter().enumerate() {
            let idx = MultiIndex::unit(n, i).add(&MultiIndex::unit(n, j));
            if idx.total() > order {
                continue;
            }
            let projected = hodge.project_harmonic(&dgla.bracket(hi, hj));
            if !projected.is_zero() {
                out.add_coeff(idx, &projected.coords);
            }
        }
    }
    out
}

#[test]
fn criterion_3_kuranishi_closed_forms() {
    // abelian: phi stays linear with zero obstruction at any order up to 8
    let abelian = load("abelian");
    let hodge = HodgeData::new(&abelian.dgla, abelian.metric.clone()).unwrap();
    for order in 1..=8 {
        let sol = solve(&abelian.dgla, &hodge, order).unwrap();
        assert_eq!(sol.phi, sol.linear_part());
        assert!(sol.obstruction.is_zero());
    }

    // heis at order 3: obstruction generator 2 t1 t2, against the
    // brute-force expansion of H[phi, phi]
    let heis = load("heis");
    let hodge = HodgeData::new(&heis.dgla, heis.metric.clone()).unwrap();
    let sol = solve(&heis.dgla, &hodge, 3).unwrap();
    assert_eq!(sol.phi, sol.linear_part());
    assert_eq!(sol.obstruction, linear_obstruction_oracle(&heis.dgla, &hodge, 3));
    let generators = sol.obstruction_generators();
    assert_eq!(generators.len(), 1);
    assert_eq!(generators[0].to_string(), "2*t1*t2");

    // witheq: phi = t1 e2, no obstruction
    let witheq = load("witheq");
    let hodge = HodgeData::new(&witheq.dgla, witheq.metric.clone()).unwrap();
    assert_eq!(hodge.harmonic_dims(), vec![0, 1, 0]);
    let sol = solve(&witheq.dgla, &hodge, 4).unwrap();
    let mut expected = VectorSeries::zero(1, 2, 4);
    expected.set_coeff(MultiIndex::unit(1, 0), vec![s("0"), s("1")]);
    assert_eq!(sol.phi, expected);
    assert!(sol.obstruction_generators().iter().all(ScalarPoly::is_zero));

    println!("criterion 3 (Kuranishi closed forms): PASS");
}

#[test]
fn criterion_4_residual_identity_suite() {
    let start = Instant::now();
    for name in HEALTHY_MODELS {
        let model = load(name);
        let hodge = HodgeData::new(&model.dgla, model.metric.clone()).unwrap();
        let sol = solve(&model.dgla, &hodge, 6).unwrap();
        let report = residual_report(&model.dgla, &hodge, &sol);
        assert!(
            report.all_passed(),
            "{name}: {:?}",
            report.first_failure()
        );
        for check in [
            "gauge_dstar_phi",
            "harmonic_part_linear",
            "inversion_round_trip",
            "harmonic_residual_matches_obstruction",
            "laplace_equation",
        ] {
            assert!(report.check(check).is_some(), "{name}: missing {check}");
        }
    }
    assert!(
        start.elapsed() < Duration::from_secs(30),
        "residual suite exceeded 30 s: {:?}",
        start.elapsed()
    );
    println!("criterion 4 (residual identity suite): PASS");
}

#[test]
fn criterion_5_equivariance_suite() {
    let start = Instant::now();
    // finite actions with averaged metrics: operator commutation for every
    // element, and E1/E2 through order 5
    for name in ["heis-swap", "s3", "swap3"] {
        let model = load(name);
        let action = action_of(&model).unwrap();
        assert!(validate_action(&model.dgla, &action).all_passed(), "{name}");
        let averaged = average_metric(&model.metric, &action);
        let hodge = HodgeData::new(&model.dgla, averaged).unwrap();
        let ops = check_operator_equivariance(&action, &hodge);
        assert!(ops.all_passed(), "{name}: {:?}", ops.first_failure());
        let sol = solve(&model.dgla, &hodge, 5).unwrap();
        let report = equivariance_report(&model.dgla, &hodge, &action, &sol);
        assert!(report.all_passed(), "{name}: {:?}", report.first_failure());
    }
    // torus weight checks
    for name in ["heis-torus", "mixed-torus"] {
        let model = load(name);
        let action = action_of(&model).unwrap();
        let averaged = average_metric(&model.metric, &action);
        let hodge = HodgeData::new(&model.dgla, averaged).unwrap();
        let sol = solve(&model.dgla, &hodge, 5).unwrap();
        let report = equivariance_report(&model.dgla, &hodge, &action, &sol);
        assert!(report.all_passed(), "{name}: {:?}", report.first_failure());
    }
    // negative control: a non-invariant metric must flip the G-equivariance
    // check to fail
    let model = load("swap3");
    let action = action_of(&model).unwrap();
    let skewed = HermitianMetric::new(vec![
        Matrix::zero(0, 0),
        Matrix::from_rows(vec![
            vec![s("2"), s("1"), s("0")],
            vec![s("1"), s("2"), s("0")],
            vec![s("0"), s("0"), s("1")],
        ])
        .unwrap(),
        Matrix::identity(1),
    ]);
    assert!(!is_metric_invariant(&skewed, &action));
    let hodge = HodgeData::new(&model.dgla, skewed).unwrap();
    let ops = check_operator_equivariance(&action, &hodge);
    assert!(!ops.check("green_equivariant").unwrap().passed);
    assert!(
        start.elapsed() < Duration::from_secs(30),
        "equivariance suite exceeded 30 s: {:?}",
        start.elapsed()
    );
    println!("criterion 5 (equivariance suite): PASS");
}

#[test]
fn criterion_6_weyl_averaging() {
    for name in ACTION_MODELS {
        let model = load(name);
        let action = action_of(&model).unwrap();
        // average a deliberately non-invariant starting metric as well as
        // the model's own
        let dims = model.dgla.space().dims();
        let mut skewed_mats = Vec::new();
        for (p, &n) in dims.iter().enumerate() {
            let mut m = Matrix::identity(n);
            for i in 0..n {
                m.set(i, i, Scalar::from_int(1 + (i as i64) + (p as i64)));
            }
            skewed_mats.push(m);
        }
        for metric in [model.metric.clone(), HermitianMetric::new(skewed_mats)] {
            let averaged = average_metric(&metric, &action);
            assert!(is_metric_invariant(&averaged, &action), "{name}: invariance");
            assert!(averaged.validate(dims).is_ok(), "{name}: positive definite");
            assert_eq!(
                average_metric(&averaged, &action),
                averaged,
                "{name}: idempotence"
            );
        }
    }
    println!("criterion 6 (Weyl averaging): PASS");
}

#[test]
fn criterion_7_complexification() {
    for name in ["u1", "so3", "u1-mixed"] {
        let model = load(name);
        let lie = model.lie.as_ref().unwrap();
        assert!(lie.validate().all_passed(), "{name}: real form");
        let complexified = lie.complexify();
        assert!(complexified.validate().all_passed(), "{name}: complexified");
        // restriction to real coefficients recovers rho
        for a in 0..lie.dim() {
            let mut coeffs = vec![Scalar::zero(); lie.dim()];
            coeffs[a] = Scalar::one();
            assert_eq!(
                complexified.rho_of(&coeffs),
                lie.rep_matrices(a).to_vec(),
                "{name}: real restriction"
            );
        }
        // C-linearity on a complex sample
        let z = s("2+3*i");
        let mut coeffs = vec![Scalar::zero(); lie.dim()];
        coeffs[0] = z.clone();
        let scaled = complexified.rho_of(&coeffs);
        for (p, m) in scaled.iter().enumerate() {
            assert_eq!(*m, lie.rep_matrices(0)[p].scale(&z), "{name}: rho(zX)");
        }
        // derivation chain: skew-adjoint, commutes with d, bracket
        // derivation, hence commutes with box, G and H
        let hodge = HodgeData::new(&model.dgla, model.metric.clone()).unwrap();
        let chain = check_derivation_equivariance(lie, &model.dgla, &hodge);
        assert!(chain.all_passed(), "{name}: {:?}", chain.first_failure());
    }
    // complexify command on the broken representation must fail
    let report = commands::cmd_complexify(&model_path("u1-broken")).unwrap();
    assert!(!report.passed());
    println!("criterion 7 (complexification): PASS");
}

#[test]
fn criterion_8_lemma31_suite() {
    let start = Instant::now();
    for (complex_dim, seed) in [(1usize, 11u64), (2, 22), (3, 33)] {
        let mut rng = SplitMix64::new(seed);
        let mut checked = 0;
        while checked < 100 {
            let j = random_structure(&mut rng, complex_dim);
            let (phi, m_map, n_map) = random_premise_instance(&mut rng, &j);
            if structure_of(&j, &n_map).is_err() {
                continue;
            }
            let report = lemma31_check(&phi, &j, &m_map, &n_map).unwrap();
            assert!(report.h1 && report.h2, "premises hold by construction");
            assert!(
                report.conclusion,
                "dim {}: conclusion failed",
                2 * complex_dim
            );
            checked += 1;
        }
    }
    // a recorded instance with H1, not H2, and a failing conclusion
    let j = ComplexStructure::standard(1);
    let phi = Matrix::identity(2).scale(&s("2"));
    let m_map = Matrix::from_rows(vec![vec![s("1/2")]]).unwrap();
    let n_map = Matrix::from_rows(vec![vec![s("1/3")]]).unwrap();
    let report = lemma31_check(&phi, &j, &m_map, &n_map).unwrap();
    assert!(report.h1 && !report.h2 && !report.conclusion);

    // Beltrami round trips, both directions
    let mut rng = SplitMix64::new(99);
    for complex_dim in [1usize, 2, 3] {
        let j = random_structure(&mut rng, complex_dim);
        for _ in 0..5 {
            let m_map = loop {
                let candidate = Matrix::from_fn(complex_dim, complex_dim, |_, _| rng.gaussian());
                if structure_of(&j, &candidate).is_ok() {
                    break candidate;
                }
            };
            let rebuilt = structure_of(&j, &m_map).unwrap();
            assert_eq!(beltrami_of(&j, &rebuilt).unwrap().map, m_map);
            let pair = beltrami_of(&j, &rebuilt).unwrap();
            assert_eq!(structure_of(&j, &pair.map).unwrap(), rebuilt);
        }
    }
    assert!(
        start.elapsed() < Duration::from_secs(10),
        "lemma31 suite exceeded 10 s: {:?}",
        start.elapsed()
    );
    println!("criterion 8 (complex-linearity criterion suite): PASS");
}

fn run_binary(args: &[&str]) -> (Vec<u8>, Vec<u8>, i32) {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_kforge"))
        .args(args)
        .env("KFORGE_MAX_GROUP", "10000")
        .output()
        .expect("binary runs");
    (
        output.stdout,
        output.stderr,
        output.status.code().unwrap_or(-1),
    )
}

#[test]
fn criterion_9_cli_determinism() {
    let mut invocations: Vec<Vec<String>> = Vec::new();
    for name in HEALTHY_MODELS {
        invocations.push(vec!["validate".into(), model_path(name)]);
        invocations.push(vec!["solve".into(), model_path(name)]);
        invocations.push(vec![
            "solve".into(),
            model_path(name),
            "--order".into(),
            "3".into(),
            "--json".into(),
        ]);
    }
    for (name, _) in BROKEN_MODELS {
        invocations.push(vec!["validate".into(), model_path(name)]);
    }
    invocations.push(vec!["validate".into(), model_path("badscalar")]);
    for name in ["heis-swap", "heis-torus", "mixed-torus", "swap3", "s3", "u1", "so3", "u1-mixed"] {
        invocations.push(vec!["equivariance".into(), model_path(name), "--order".into(), "5".into()]);
    }
    invocations.push(vec![
        "solve".into(),
        model_path("heis-swap"),
        "--invariant-metric".into(),
    ]);
    for name in ["u1", "so3", "u1-mixed", "u1-broken"] {
        invocations.push(vec!["complexify".into(), model_path(name)]);
    }
    for instance in ["lemma31-trivial", "lemma31-counterexample"] {
        let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
        path.push("models");
        path.push(format!("{instance}.instance"));
        invocations.push(vec!["lemma31".into(), path.to_string_lossy().into_owned()]);
    }
    invocations.push(vec![
        "lemma31".into(),
        "--random".into(),
        "--dim".into(),
        "4".into(),
        "--seed".into(),
        "7".into(),
        "--count".into(),
        "25".into(),
    ]);
    invocations.push(vec![
        "lemma31".into(),
        "--random".into(),
        "--dim".into(),
        "4".into(),
        "--seed".into(),
        "7".into(),
        "--count".into(),
        "25".into(),
        "--json".into(),
    ]);

    for args in &invocations {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run_binary(&argv);
        let second = run_binary(&argv);
        assert_eq!(first, second, "non-deterministic output for {args:?}");
    }

    // parse -> serialize -> parse is the identity on every bundled model
    for name in HEALTHY_MODELS.iter().chain(BROKEN_MODELS.iter().map(|(n, _)| n)) {
        let parsed = ModelFile::read(&model_path(name)).unwrap();
        let canonical = parsed.canonical_text();
        let reparsed = ModelFile::parse(&canonical).unwrap();
        assert_eq!(reparsed, parsed, "{name}: round trip");
        assert_eq!(reparsed.canonical_text(), canonical, "{name}: stable rendering");
    }

    // exit-code contract
    let (_, _, code) = run_binary(&["validate", &model_path("heis")]);
    assert_eq!(code, 0);
    let (_, _, code) = run_binary(&["validate", &model_path("badd2")]);
    assert_eq!(code, 1);
    let (_, _, code) = run_binary(&["validate", &model_path("badscalar")]);
    assert_eq!(code, 2);
    println!("criterion 9 (CLI determinism): PASS");
}
