//! JSON file formats for Lie algebras, cup data, extension data, group
//! actions and minimal-model towers. Rationals are always strings `"p/q"`
//! or `"n"`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extension::{ExtensionDatum, ExtensionError};
use crate::exterior::binomial;
use crate::lie::{BracketEntry, LieAlgebra, LieError};
use crate::linalg::Matrix;
use crate::minimal_model::{CupData, CupDataError, HirschTower, TowerStatus};
use crate::rational::{Rational, RationalText};
use crate::transfer::{ActionError, FiniteGroupAction};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Lie(#[from] LieError),
    #[error("{0}")]
    Cup(#[from] CupDataError),
    #[error("{0}")]
    Extension(#[from] ExtensionError),
    #[error("{0}")]
    Action(#[from] ActionError),
    #[error("{0}")]
    Shape(String),
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketFile {
    pub i: usize,
    pub j: usize,
    /// Coefficients keyed by the decimal index of the basis vector.
    pub v: BTreeMap<String, RationalText>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketFile>,
}

impl LieFile {
    pub fn to_algebra(&self) -> Result<LieAlgebra, IoError> {
        let entries = self
            .brackets
            .iter()
            .map(|b| {
                let value =
                    b.v.iter()
                        .map(|(k, q)| {
                            k.parse::<usize>().map(|k| (k, q.0.clone())).map_err(|_| {
                                IoError::Shape(format!("bracket ({},{}) has non-index key {k:?}", b.i, b.j))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                Ok(BracketEntry::new(b.i, b.j, value))
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(LieAlgebra::from_brackets(self.dim, self.labels.clone(), &entries)?)
    }

    pub fn from_algebra(l: &LieAlgebra) -> Self {
        let brackets = l
            .nonzero_brackets()
            .into_iter()
            .map(|(i, j, v)| BracketFile {
                i,
                j,
                v: v.into_iter()
                    .enumerate()
                    .filter(|(_, q)| !num_traits::Zero::is_zero(q))
                    .map(|(k, q)| (k.to_string(), RationalText(q)))
                    .collect(),
            })
            .collect();
        LieFile {
            dim: l.dim(),
            labels: Some(l.labels().to_vec()),
            brackets,
        }
    }
}

pub fn parse_lie(text: &str) -> Result<LieAlgebra, IoError> {
    serde_json::from_str::<LieFile>(text)?.to_algebra()
}

pub fn read_lie(path: &Path) -> Result<LieAlgebra, IoError> {
    parse_lie(&read_text(path)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CupFile {
    pub b1: usize,
    pub b2: usize,
    /// `b2` rows indexed by lexicographic pairs `i < j` of `H¹`.
    pub cup: Vec<Vec<RationalText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge_split: Option<(usize, usize)>,
}

fn matrix_from_rows(cols: usize, rows: &[Vec<RationalText>], what: &str) -> Result<Matrix, IoError> {
    let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|q| q.0.clone()).collect()).collect();
    Matrix::from_rows(cols, &rows).map_err(|e| IoError::Shape(format!("{what}: {e}")))
}

pub fn parse_cup(text: &str) -> Result<CupData, IoError> {
    let f: CupFile = serde_json::from_str(text)?;
    let cup = matrix_from_rows(binomial(f.b1, 2), &f.cup, "cup matrix")?;
    Ok(CupData::new(f.b1, f.b2, cup, f.hodge_split)?)
}

pub fn read_cup(path: &Path) -> Result<CupData, IoError> {
    parse_cup(&read_text(path)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub v: RationalText,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    pub rank: usize,
    #[serde(default)]
    pub hodge_typed: bool,
    #[serde(default)]
    pub cl: Vec<PairEntry>,
}

impl ExtensionFile {
    pub fn from_datum(e: &ExtensionDatum) -> Self {
        ExtensionFile {
            rank: e.rank(),
            hodge_typed: e.hodge_typed(),
            cl: e
                .class_entries()
                .into_iter()
                .map(|(i, j, v)| PairEntry {
                    i,
                    j,
                    v: RationalText(v),
                })
                .collect(),
        }
    }
}

pub fn parse_extension(text: &str) -> Result<ExtensionDatum, IoError> {
    let f: ExtensionFile = serde_json::from_str(text)?;
    let entries: Vec<(usize, usize, Rational)> = f.cl.into_iter().map(|p| (p.i, p.j, p.v.0)).collect();
    Ok(ExtensionDatum::new(f.rank, f.hodge_typed, &entries)?)
}

pub fn read_extension(path: &Path) -> Result<ExtensionDatum, IoError> {
    parse_extension(&read_text(path)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LieSource {
    Inline(LieFile),
    Path(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieSource>,
    /// Each element as a row-major `n x n` matrix.
    pub elements: Vec<Vec<RationalText>>,
}

/// Parses an action file against `target`. An embedded `lie` (inline or a
/// path relative to `base_dir`) must describe the same structure constants.
pub fn parse_action(text: &str, target: &LieAlgebra, base_dir: &Path) -> Result<FiniteGroupAction, IoError> {
    let f: ActionFile = serde_json::from_str(text)?;
    if let Some(source) = &f.lie {
        let embedded = match source {
            LieSource::Inline(file) => file.to_algebra()?,
            LieSource::Path(p) => read_lie(&base_dir.join(p))?,
        };
        if embedded.bracket_matrix() != target.bracket_matrix() {
            return Err(IoError::Shape(
                "action file describes a different Lie algebra".to_string(),
            ));
        }
    }
    let n = target.dim();
    let elements = f
        .elements
        .iter()
        .enumerate()
        .map(|(e, flat)| {
            let data = flat.iter().map(|q| q.0.clone()).collect();
            Matrix::from_row_major(n, n, data)
                .map_err(|_| IoError::Shape(format!("element {e} has {} entries, expected {}", flat.len(), n * n)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteGroupAction::new(target.clone(), elements)?)
}

pub fn read_action(path: &Path, target: &LieAlgebra) -> Result<FiniteGroupAction, IoError> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_action(&read_text(path)?, target, base)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub label: String,
    pub weight: usize,
    /// Differential in lexicographic `Λ²` coordinates of earlier generators.
    pub differential: Vec<PairEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageFile {
    pub stage: usize,
    pub new_generators: usize,
    pub total_generators: usize,
    pub generators: Vec<GeneratorFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerFile {
    pub status: String,
    pub next_kernel_dim: usize,
    pub stages: Vec<StageFile>,
}

pub fn status_name(s: TowerStatus) -> &'static str {
    match s {
        TowerStatus::Stabilized => "stabilized",
        TowerStatus::StageLimit => "not stabilized",
        TowerStatus::BudgetExceeded => "budget exceeded",
    }
}

impl TowerFile {
    pub fn from_tower(t: &HirschTower) -> Self {
        let stages = (1..=t.stage_count())
            .map(|stage| StageFile {
                stage,
                new_generators: t.new_generators(stage),
                total_generators: t.total_generators(stage),
                generators: t.generators()[t.stage_range(stage)]
                    .iter()
                    .map(|g| GeneratorFile {
                        label: g.label.clone(),
                        weight: g.weight,
                        differential: g
                            .differential
                            .iter()
                            .map(|(i, j, v)| PairEntry {
                                i: *i,
                                j: *j,
                                v: RationalText(v.clone()),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        TowerFile {
            status: status_name(t.status()).to_string(),
            next_kernel_dim: t.next_kernel_dim(),
            stages,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog;
    use crate::rational::int;

    const H3: &str = r#"{"dim": 3, "labels": ["x", "y", "z"], "brackets": [{"i": 0, "j": 1, "v": {"2": "1"}}]}"#;

    #[test]
    fn lie_round_trip() {
        let l = parse_lie(H3).unwrap();
        assert_eq!(l, catalog::heisenberg());
        let back = serde_json::to_string(&LieFile::from_algebra(&l)).unwrap();
        assert_eq!(parse_lie(&back).unwrap(), l);
    }

    #[test]
    fn lie_errors() {
        let unordered = r#"{"dim": 3, "brackets": [{"i": 1, "j": 0, "v": {"2": "1"}}]}"#;
        assert!(matches!(
            parse_lie(unordered),
            Err(IoError::Lie(LieError::UnorderedPair { .. }))
        ));
        let bad_rational = r#"{"dim": 3, "brackets": [{"i": 0, "j": 1, "v": {"2": "1.5"}}]}"#;
        assert!(matches!(parse_lie(bad_rational), Err(IoError::Json(_))));
        assert!(matches!(parse_lie("{"), Err(IoError::Json(_))));
    }

    #[test]
    fn cup_parsing() {
        let c = parse_cup(r#"{"b1": 2, "b2": 1, "cup": [["1"]]}"#).unwrap();
        assert_eq!(c, CupData::torus(2));
        let c = parse_cup(r#"{"b1": 3, "b2": 0, "cup": []}"#).unwrap();
        assert_eq!(c, CupData::trivial_cup(3));
        assert!(parse_cup(r#"{"b1": 3, "b2": 1, "cup": [["1"]]}"#).is_err());
        assert!(parse_cup(r#"{"b1": 2, "b2": 1, "cup": [["1"]], "hodge_split": [1, 2]}"#).is_err());
    }

    #[test]
    fn extension_parsing() {
        let e = parse_extension(r#"{"rank": 2, "hodge_typed": false, "cl": [{"i": 0, "j": 1, "v": "1"}]}"#).unwrap();
        assert_eq!(e.class_entries(), vec![(0, 1, int(1))]);
        let back = serde_json::to_string(&ExtensionFile::from_datum(&e)).unwrap();
        assert_eq!(parse_extension(&back).unwrap(), e);
        assert!(parse_extension(r#"{"rank": 3, "hodge_typed": true, "cl": []}"#).is_err());
    }

    #[test]
    fn action_parsing() {
        let h3 = catalog::heisenberg();
        let text = format!(
            r#"{{"lie": {H3}, "elements": [["1","0","0","0","1","0","0","0","1"], ["-1","0","0","0","-1","0","0","0","1"]]}}"#
        );
        let a = parse_action(&text, &h3, Path::new(".")).unwrap();
        assert_eq!(a.order(), 2);
        let wrong = parse_action(&text, &LieAlgebra::abelian(3), Path::new("."));
        assert!(matches!(wrong, Err(IoError::Shape(_))));
        let short = r#"{"elements": [["1"]]}"#;
        assert!(matches!(
            parse_action(short, &h3, Path::new(".")),
            Err(IoError::Shape(_))
        ));
        let bad = r#"{"elements": [["1","0","0","0","1","0","0","0","1"], ["-1","0","0","0","1","0","0","0","1"]]}"#;
        let err = parse_action(bad, &h3, Path::new(".")).unwrap_err();
        assert!(err.to_string().starts_with("not an automorphism"));
    }
}
