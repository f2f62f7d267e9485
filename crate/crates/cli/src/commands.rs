//! Subcommand implementations. Each returns a [`Report`] (exit 0 on pass,
//! 1 on semantic failure) or a [`CommandError`] (exit 2 for parse/usage
//! problems, 1 for semantic ones surfaced before a report exists).

use sha2::{Digest, Sha256};
use thiserror::Error;

use kforge_core::cstruct::{
    lemma31_check, random_premise_instance, random_structure, structure_of, ComplexStructure,
};
use kforge_core::exactlin::{Matrix, Scalar};
use kforge_core::group::{
    average_metric, check_derivation_equivariance, close_group, validate_action, FiniteAction,
    GroupAction, LieAlgebraAction,
};
use kforge_core::hodge::HodgeData;
use kforge_core::kuranishi::{equivariance_report, solve, KuranishiSolution};
use kforge_core::rng::SplitMix64;
use kforge_core::ValidationReport;

use crate::model::{MatrixText, ModelError, ModelFile, ParsedGroup, ParsedModel};
use crate::report::Report;

pub const DEFAULT_GROUP_CAP: usize = 10000;

#[derive(Debug, Error)]
pub enum CommandError {
    /// Unreadable, unparseable, or structurally malformed input: exit 2.
    #[error("{0}")]
    Parse(String),
    /// Well-formed input that cannot be processed as requested: exit 1.
    #[error("{0}")]
    Semantic(String),
}

impl From<ModelError> for CommandError {
    fn from(e: ModelError) -> Self {
        CommandError::Parse(e.to_string())
    }
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Parse(_) => 2,
            CommandError::Semantic(_) => 1,
        }
    }
}

pub struct LoadedModel {
    pub file: ModelFile,
    pub parsed: ParsedModel,
    pub digest: String,
}

pub fn load_model(path: &str) -> Result<LoadedModel, CommandError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CommandError::Parse(format!("cannot read {path}: {e}")))?;
    let digest = hex_digest(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| CommandError::Parse(format!("{path} is not valid UTF-8")))?;
    let file = ModelFile::parse(&text)?;
    let parsed = file.to_core()?;
    Ok(LoadedModel {
        file,
        parsed,
        digest,
    })
}

fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn vector_string(v: &[Scalar]) -> String {
    let cells: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("({})", cells.join(", "))
}

fn matrix_string(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn dims_string(dims: &[usize]) -> String {
    dims.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Builds the group action from the model's group block, closing finite
/// generator sets under multiplication.
fn build_action(
    parsed: &ParsedModel,
    cap: usize,
) -> Result<Option<GroupAction>, String> {
    match &parsed.group {
        None => Ok(None),
        Some(ParsedGroup::Generators(generators)) => {
            let closed = close_group(parsed.dgla.space(), generators, cap)
                .map_err(|e| e.to_string())?;
            Ok(Some(GroupAction::Finite(closed)))
        }
        Some(ParsedGroup::Torus(torus)) => Ok(Some(GroupAction::Torus(torus.clone()))),
    }
}

/// DGLA axioms, metric positive-definiteness, action validity, Lie-algebra
/// validity: everything checkable without running the solver.
fn validation_sections(
    report: &mut Report,
    parsed: &ParsedModel,
    cap: usize,
) -> Result<(), CommandError> {
    report.checks_from("dgla", &parsed.dgla.validate());

    let metric_result = parsed.metric.validate(parsed.dgla.space().dims());
    report.check(
        "metric.positive_definite",
        metric_result.is_ok(),
        metric_result.err().map(|e| e.to_string()),
    );

    match build_action(parsed, cap) {
        Ok(None) => {}
        Ok(Some(action)) => report.checks_from("action", &validate_action(&parsed.dgla, &action)),
        Err(message) => report.check("action.closure", false, Some(message)),
    }

    if let Some(lie) = &parsed.lie {
        report.checks_from("lie", &lie.validate());
    }
    Ok(())
}

pub fn cmd_validate(path: &str, cap: usize) -> Result<Report, CommandError> {
    let loaded = load_model(path)?;
    let mut report = Report::new("validate").with_model(path, &loaded.digest);
    report.fact("dims", dims_string(loaded.parsed.dgla.space().dims()));
    validation_sections(&mut report, &loaded.parsed, cap)?;
    Ok(report)
}

pub struct SolveOptions {
    pub order: usize,
    pub invariant_metric: bool,
    pub cap: usize,
}

fn solution_sections(report: &mut Report, sol: &KuranishiSolution) {
    report.fact("order", sol.order);
    report.fact("phi variables", sol.num_vars());
    for (idx, coeff) in sol.phi.terms() {
        report.entry("phi", idx.monomial_string(), vector_string(coeff));
    }
    let generators = sol.obstruction_generators();
    if generators.iter().all(|g| g.is_zero()) {
        report.note(format!(
            "no obstructions; Kuranishi space is smooth of dimension {}",
            sol.num_vars()
        ));
    } else {
        for (j, generator) in generators.iter().enumerate() {
            report.entry("obstruction", j + 1, generator);
        }
    }
}

pub fn cmd_solve(path: &str, options: &SolveOptions) -> Result<Report, CommandError> {
    if options.order == 0 {
        return Err(CommandError::Parse("--order must be at least 1".into()));
    }
    let loaded = load_model(path)?;
    let mut report = Report::new("solve").with_model(path, &loaded.digest);
    report.fact("dims", dims_string(loaded.parsed.dgla.space().dims()));
    validation_sections(&mut report, &loaded.parsed, options.cap)?;
    if !report.passed() {
        return Ok(report);
    }

    let metric = if options.invariant_metric {
        let action = build_action(&loaded.parsed, options.cap)
            .map_err(CommandError::Semantic)?
            .ok_or_else(|| {
                CommandError::Semantic(
                    "--invariant-metric requires a group block in the model".into(),
                )
            })?;
        report.note("metric averaged over the group action");
        average_metric(&loaded.parsed.metric, &action)
    } else {
        if loaded.parsed.metric_is_default {
            report.note("using the identity metric");
        }
        loaded.parsed.metric.clone()
    };

    let hodge = HodgeData::new(&loaded.parsed.dgla, metric)
        .map_err(|e| CommandError::Semantic(e.to_string()))?;
    report.fact("harmonic dims", dims_string(&hodge.harmonic_dims()));
    let sol = solve(&loaded.parsed.dgla, &hodge, options.order)
        .map_err(|e| CommandError::Semantic(e.to_string()))?;
    solution_sections(&mut report, &sol);
    Ok(report)
}

pub fn cmd_equivariance(path: &str, order: usize, cap: usize) -> Result<Report, CommandError> {
    if order == 0 {
        return Err(CommandError::Parse("--order must be at least 1".into()));
    }
    let loaded = load_model(path)?;
    if loaded.parsed.group.is_none() && loaded.parsed.lie.is_none() {
        return Err(CommandError::Semantic(
            "model has neither a group block nor a lie_algebra block".into(),
        ));
    }
    let mut report = Report::new("equivariance").with_model(path, &loaded.digest);
    report.fact("dims", dims_string(loaded.parsed.dgla.space().dims()));
    validation_sections(&mut report, &loaded.parsed, cap)?;
    if !report.passed() {
        return Ok(report);
    }

    if let Some(action) = build_action(&loaded.parsed, cap).map_err(CommandError::Semantic)? {
        if let GroupAction::Finite(FiniteAction { elements }) = &action {
            report.fact("group order", elements.len());
        }
        let averaged = average_metric(&loaded.parsed.metric, &action);
        report.note("metric averaged over the group action");
        let hodge = HodgeData::new(&loaded.parsed.dgla, averaged)
            .map_err(|e| CommandError::Semantic(e.to_string()))?;
        report.fact("harmonic dims", dims_string(&hodge.harmonic_dims()));
        let sol = solve(&loaded.parsed.dgla, &hodge, order)
            .map_err(|e| CommandError::Semantic(e.to_string()))?;
        solution_sections(&mut report, &sol);
        report.checks_from(
            "equivariance",
            &equivariance_report(&loaded.parsed.dgla, &hodge, &action, &sol),
        );
    }

    if let Some(lie) = &loaded.parsed.lie {
        let hodge = HodgeData::new(&loaded.parsed.dgla, loaded.parsed.metric.clone())
            .map_err(|e| CommandError::Semantic(e.to_string()))?;
        report.checks_from(
            "derivation",
            &check_derivation_equivariance(lie, &loaded.parsed.dgla, &hodge),
        );
    }
    Ok(report)
}

fn lie_sections(report: &mut Report, lie: &LieAlgebraAction, max_degree: usize) {
    report.fact("lie dim", lie.dim());
    for ((a, b), out) in lie.structure() {
        let terms: Vec<String> = out
            .iter()
            .map(|(k, c)| format!("{c}*X{}", k + 1))
            .collect();
        let value = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        report.entry("structure", format!("X{},X{}", a + 1, b + 1), value);
    }
    for a in 0..lie.dim() {
        for p in 0..=max_degree {
            let m = &lie.rep_matrices(a)[p];
            if m.rows() == 0 {
                continue;
            }
            report.entry("rep", format!("X{} degree {p}", a + 1), matrix_string(m));
        }
    }
}

pub fn cmd_complexify(path: &str) -> Result<Report, CommandError> {
    let loaded = load_model(path)?;
    let lie = loaded
        .parsed
        .lie
        .as_ref()
        .ok_or_else(|| CommandError::Semantic("model has no lie_algebra block".into()))?;
    let mut report = Report::new("complexify").with_model(path, &loaded.digest);
    let top = loaded.parsed.dgla.max_degree();

    let complexified = lie.complexify();
    lie_sections(&mut report, &complexified, top);

    // the C-linear extension on a sample imaginary direction
    for a in 0..complexified.dim() {
        let mut coeffs = vec![Scalar::zero(); complexified.dim()];
        coeffs[a] = Scalar::i();
        let rho = complexified.rho_of(&coeffs);
        for (p, m) in rho.iter().enumerate() {
            if m.rows() == 0 {
                continue;
            }
            report.entry("rep", format!("i*X{} degree {p}", a + 1), matrix_string(m));
        }
    }

    report.checks_from("complexified", &complexified.validate());

    // restriction to real coefficients recovers the original representation
    let mut restriction = ValidationReport::new();
    let mut witness = None;
    for a in 0..lie.dim() {
        let mut coeffs = vec![Scalar::zero(); lie.dim()];
        coeffs[a] = Scalar::one();
        if complexified.rho_of(&coeffs) != lie.rep_matrices(a) {
            witness = Some(format!("X{}", a + 1));
            break;
        }
    }
    restriction.record("real_restriction", witness);
    report.checks_from("complexified", &restriction);
    Ok(report)
}

pub enum Lemma31Input {
    File(String),
    Random { dim: usize, seed: u64, count: usize },
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct Lemma31File {
    j: MatrixText,
    phi: MatrixText,
    m: MatrixText,
    n: MatrixText,
}

fn parse_text_matrix(text: &MatrixText, context: &str) -> Result<Matrix, CommandError> {
    Matrix::parse_rows(text).map_err(|e| CommandError::Parse(format!("{context}: {e}")))
}

pub fn cmd_lemma31(input: &Lemma31Input) -> Result<Report, CommandError> {
    match input {
        Lemma31Input::File(path) => {
            let bytes = std::fs::read(path)
                .map_err(|e| CommandError::Parse(format!("cannot read {path}: {e}")))?;
            let digest = hex_digest(&bytes);
            let parsed: Lemma31File = serde_json::from_slice(&bytes)
                .map_err(|e| CommandError::Parse(format!("invalid JSON: {e}")))?;
            let j_matrix = parse_text_matrix(&parsed.j, "j")?;
            let j = ComplexStructure::new(j_matrix)
                .map_err(|e| CommandError::Semantic(format!("j: {e}")))?;
            let phi = parse_text_matrix(&parsed.phi, "phi")?;
            let m = parse_text_matrix(&parsed.m, "m")?;
            let n = parse_text_matrix(&parsed.n, "n")?;
            let outcome = lemma31_check(&phi, &j, &m, &n)
                .map_err(|e| CommandError::Semantic(e.to_string()))?;
            let mut report = Report::new("lemma31").with_model(path, &digest);
            report.fact("dim", j.dim());
            report.fact("h1 commutes with j", outcome.h1);
            report.fact("h2 intertwines beltrami maps", outcome.h2);
            report.fact("conclusion complex linear", outcome.conclusion);
            report.check(
                "criterion_consistent",
                outcome.consistent(),
                (!outcome.consistent()).then(|| "premises hold but conclusion fails".to_string()),
            );
            Ok(report)
        }
        Lemma31Input::Random { dim, seed, count } => {
            if *dim == 0 || dim % 2 != 0 {
                return Err(CommandError::Parse(format!(
                    "--dim must be a positive even number, got {dim}"
                )));
            }
            let complex_dim = dim / 2;
            let mut rng = SplitMix64::new(*seed);
            let mut premise = 0usize;
            let mut conclusion = 0usize;
            let mut produced = 0usize;
            while produced < *count {
                let j = random_structure(&mut rng, complex_dim);
                let (phi, m_map, n_map) = random_premise_instance(&mut rng, &j);
                if structure_of(&j, &n_map).is_err() {
                    continue;
                }
                let outcome = lemma31_check(&phi, &j, &m_map, &n_map)
                    .map_err(|e| CommandError::Semantic(e.to_string()))?;
                produced += 1;
                if outcome.premise() {
                    premise += 1;
                    if outcome.conclusion {
                        conclusion += 1;
                    }
                }
            }
            let mut report = Report::new("lemma31");
            report.fact("dim", dim);
            report.fact("seed", seed);
            report.fact("instances", produced);
            report.fact("premise satisfied", premise);
            report.fact("conclusion holds", conclusion);
            report.check(
                "all_premise_instances_confirm_conclusion",
                premise == conclusion && premise == produced,
                (premise != conclusion).then(|| {
                    format!("{} premise instances, {} conclusions", premise, conclusion)
                }),
            );
            Ok(report)
        }
    }
}
