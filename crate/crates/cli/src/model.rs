//! The model file format: a single JSON document describing a DGLA model
//! with optional metric, group, and Lie-algebra blocks.
//!
//! Top-level keys: `dims`, `differential`, `bracket`, `metric`, `group`,
//! `lie_algebra`. Matrices are row-major arrays of scalar strings in the
//! scalar text format. Degrees are actual degree numbers; basis indices in
//! `bracket`, `out`, and `lie_algebra.structure` are 1-based. Bracket entries
//! follow the storage rule `p < q`, or `p == q` and `i <= j`.
//!
//! Parsing yields structurally validated core objects; the algebra axioms
//! are checked separately so that format errors and axiom failures stay
//! distinct. [`ModelFile::canonical_text`] emits a deterministic rendering;
//! parse -> serialize -> parse is the identity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use kforge_core::dgla::{Dgla, GradedVectorSpace};
use kforge_core::exactlin::Matrix;
use kforge_core::group::{GroupElement, LieAlgebraAction, TorusAction};
use kforge_core::hodge::HermitianMetric;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{context}: invalid scalar {text:?}")]
    Scalar { context: String, text: String },
    #[error("{context}: expected a {rows}x{cols} matrix")]
    MatrixShape {
        context: String,
        rows: usize,
        cols: usize,
    },
    #[error("bracket entry {index}: {message}")]
    Bracket { index: usize, message: String },
    #[error("{0}")]
    Structure(String),
}

pub type MatrixText = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub p: usize,
    pub i: usize,
    pub q: usize,
    pub j: usize,
    /// Output components as `[k, coefficient]` with 1-based `k`.
    pub out: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum GroupBlock {
    #[serde(rename = "finite")]
    Finite { generators: Vec<Vec<MatrixText>> },
    #[serde(rename = "torus")]
    Torus {
        rank: usize,
        weights: Vec<Vec<Vec<i64>>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieStructureEntry {
    pub a: usize,
    pub b: usize,
    pub out: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieBlock {
    pub dim: usize,
    #[serde(default)]
    pub structure: Vec<LieStructureEntry>,
    /// `rep[a]` lists the per-degree matrices of the a-th basis element.
    pub rep: Vec<Vec<MatrixText>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub dims: Vec<usize>,
    /// `differential[p]` is the matrix of `d_p` for `p` below the top degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<Vec<MatrixText>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bracket: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<MatrixText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie_algebra: Option<LieBlock>,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &str) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path).map_err(|source| ModelError::Io {
            path: path.to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Deterministic pretty rendering with a trailing newline.
    pub fn canonical_text(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }
}

fn parse_matrix(text: &MatrixText, rows: usize, cols: usize, context: &str) -> Result<Matrix, ModelError> {
    if text.len() != rows || text.iter().any(|r| r.len() != cols) {
        return Err(ModelError::MatrixShape {
            context: context.to_string(),
            rows,
            cols,
        });
    }
    if rows == 0 || cols == 0 {
        return Ok(Matrix::zero(rows, cols));
    }
    let mut parsed = Vec::with_capacity(rows);
    for row in text {
        let mut out_row = Vec::with_capacity(cols);
        for cell in row {
            out_row.push(cell.parse().map_err(|_| ModelError::Scalar {
                context: context.to_string(),
                text: cell.clone(),
            })?);
        }
        parsed.push(out_row);
    }
    Matrix::from_rows(parsed).map_err(|_| ModelError::MatrixShape {
        context: context.to_string(),
        rows,
        cols,
    })
}

fn parse_element(
    mats: &[MatrixText],
    space: &GradedVectorSpace,
    context: &str,
) -> Result<GroupElement, ModelError> {
    if mats.len() != space.max_degree() + 1 {
        return Err(ModelError::Structure(format!(
            "{context}: need one matrix per degree 0..={}",
            space.max_degree()
        )));
    }
    let mut per_degree = Vec::with_capacity(mats.len());
    for (p, text) in mats.iter().enumerate() {
        let n = space.dim(p);
        per_degree.push(parse_matrix(text, n, n, &format!("{context} degree {p}"))?);
    }
    Ok(GroupElement { per_degree })
}

/// Everything a command needs, parsed and structurally validated.
pub struct ParsedModel {
    pub dgla: Dgla,
    pub metric: HermitianMetric,
    pub metric_is_default: bool,
    pub group: Option<ParsedGroup>,
    pub lie: Option<LieAlgebraAction>,
}

pub enum ParsedGroup {
    /// Finite generators, not yet closed.
    Generators(Vec<GroupElement>),
    Torus(TorusAction),
}

impl ModelFile {
    pub fn to_core(&self) -> Result<ParsedModel, ModelError> {
        if self.dims.is_empty() {
            return Err(ModelError::Structure("dims must be nonempty".into()));
        }
        let space = GradedVectorSpace::new(self.dims.clone());
        let top = space.max_degree();

        let mut diff = Vec::with_capacity(top);
        match &self.differential {
            None => {
                for p in 0..top {
                    diff.push(Matrix::zero(space.dim(p + 1), space.dim(p)));
                }
            }
            Some(entries) => {
                if entries.len() != top {
                    return Err(ModelError::Structure(format!(
                        "differential must list {top} matrices (one per degree below the top), got {}",
                        entries.len()
                    )));
                }
                for (p, text) in entries.iter().enumerate() {
                    diff.push(parse_matrix(
                        text,
                        space.dim(p + 1),
                        space.dim(p),
                        &format!("differential[{p}]"),
                    )?);
                }
            }
        }

        let mut bracket = Vec::with_capacity(self.bracket.len());
        for (index, entry) in self.bracket.iter().enumerate() {
            let convert = |label: &str, one_based: usize, bound: usize| {
                if one_based == 0 || one_based > bound {
                    Err(ModelError::Bracket {
                        index,
                        message: format!("{label} = {one_based} out of range 1..={bound}"),
                    })
                } else {
                    Ok(one_based - 1)
                }
            };
            if entry.p > top || entry.q > top {
                return Err(ModelError::Bracket {
                    index,
                    message: format!("degrees ({}, {}) exceed the top degree {top}", entry.p, entry.q),
                });
            }
            let i = convert("i", entry.i, space.dim(entry.p))?;
            let j = convert("j", entry.j, space.dim(entry.q))?;
            let mut out = Vec::with_capacity(entry.out.len());
            for (k, c) in &entry.out {
                let k0 = convert("k", *k, space.dim(entry.p + entry.q))?;
                let scalar = c.parse().map_err(|_| ModelError::Scalar {
                    context: format!("bracket entry {index}"),
                    text: c.clone(),
                })?;
                out.push((k0, scalar));
            }
            bracket.push(((entry.p, i, entry.q, j), out));
        }

        let dgla = Dgla::new(space.clone(), diff, bracket)
            .map_err(|e| ModelError::Structure(e.to_string()))?;

        let (metric, metric_is_default) = match &self.metric {
            None => (HermitianMetric::identity(space.dims()), true),
            Some(entries) => {
                if entries.len() != top + 1 {
                    return Err(ModelError::Structure(format!(
                        "metric must list {} matrices (one per degree), got {}",
                        top + 1,
                        entries.len()
                    )));
                }
                let mut mats = Vec::with_capacity(entries.len());
                for (p, text) in entries.iter().enumerate() {
                    let n = space.dim(p);
                    mats.push(parse_matrix(text, n, n, &format!("metric[{p}]"))?);
                }
                (HermitianMetric::new(mats), false)
            }
        };

        let group = match &self.group {
            None => None,
            Some(GroupBlock::Finite { generators }) => {
                let mut parsed = Vec::with_capacity(generators.len());
                for (g, mats) in generators.iter().enumerate() {
                    parsed.push(parse_element(mats, &space, &format!("generator {g}"))?);
                }
                Some(ParsedGroup::Generators(parsed))
            }
            Some(GroupBlock::Torus { rank, weights }) => {
                let torus = TorusAction {
                    rank: *rank,
                    weights: weights.clone(),
                };
                torus
                    .check_shape(&space)
                    .map_err(|e| ModelError::Structure(e.to_string()))?;
                Some(ParsedGroup::Torus(torus))
            }
        };

        let lie = match &self.lie_algebra {
            None => None,
            Some(block) => {
                let mut structure = Vec::with_capacity(block.structure.len());
                for entry in &block.structure {
                    if entry.a == 0 || entry.b == 0 {
                        return Err(ModelError::Structure(
                            "lie_algebra.structure indices are 1-based".into(),
                        ));
                    }
                    let mut out = Vec::with_capacity(entry.out.len());
                    for (k, c) in &entry.out {
                        if *k == 0 || *k > block.dim {
                            return Err(ModelError::Structure(format!(
                                "lie_algebra.structure target {k} out of range"
                            )));
                        }
                        let scalar = c.parse().map_err(|_| ModelError::Scalar {
                            context: "lie_algebra.structure".to_string(),
                            text: c.clone(),
                        })?;
                        out.push((k - 1, scalar));
                    }
                    structure.push(((entry.a - 1, entry.b - 1), out));
                }
                let mut rep = Vec::with_capacity(block.rep.len());
                for (a, mats) in block.rep.iter().enumerate() {
                    rep.push(
                        parse_element(mats, &space, &format!("lie_algebra.rep[{a}]"))?.per_degree,
                    );
                }
                Some(
                    LieAlgebraAction::new(&space, block.dim, structure, rep)
                        .map_err(|e| ModelError::Structure(e.to_string()))?,
                )
            }
        };

        Ok(ParsedModel {
            dgla,
            metric,
            metric_is_default,
            group,
            lie,
        })
    }
}
