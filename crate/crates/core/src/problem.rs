//! JSON problem files and the shipped catalog.
//!
//! ```json
//! {
//!   "name": "case5",
//!   "lie": { "dim": 3, "basis": ["x", "y", "z"],
//!            "brackets": [ { "left": "x", "right": "y", "value": { "y": "1" } } ] },
//!   "cocycle2": [ { "left": "y", "right": "z", "value": "1" } ],
//!   "cocycle1": { "x": "1" },
//!   "group": { "generators": [ [["0", "-1"], ["1", "0"]] ], "cap": 100 },
//!   "potential": { "expression": "x*y*z - y*x*z - y*z - x" },
//!   "normalize": ["z*y*x"],
//!   "query": "sridharan-cy"
//! }
//! ```
//!
//! Every scalar is a string in the scalar grammar (`"-1/2"`, `"1*z@3"`).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{LieAlgebra, LieError};
use crate::linalg::Matrix;
use crate::ncpoly::NCPolynomial;
use crate::potential::CyclicPotential;
use crate::scalar::Scalar;
use crate::sridharan::{build_sridharan, SridharanAlgebra, SridharanError, TwoCocycle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
    #[error("{location}: {source}")]
    Lie {
        location: String,
        #[source]
        source: LieError,
    },
    #[error("{location}: {source}")]
    Sridharan {
        location: String,
        #[source]
        source: SridharanError,
    },
    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> ProblemError {
    ProblemError::Invalid {
        location: location.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie: Option<LieSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle2: Option<Vec<CocycleEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle1: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub potential: Option<PotentialSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalize: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<Query>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSection {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleEntry {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialSection {
    pub expression: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Query {
    CheckLie,
    Classify,
    Homology,
    SridharanCy,
    SkewCy,
    IntegralInvariants,
    PotentialVerify,
}

/// A problem file with every section parsed and validated.
#[derive(Debug, Clone)]
pub struct Problem {
    pub name: Option<String>,
    pub lie: Option<LieAlgebra>,
    pub cocycle2: Option<TwoCocycle>,
    pub cocycle1: Option<Vec<Scalar>>,
    pub group_generators: Option<Vec<Matrix>>,
    pub cap: Option<usize>,
    pub potential: Option<CyclicPotential>,
    pub normalize: Vec<NCPolynomial>,
    pub query: Option<Query>,
}

fn parse_scalar(text: &str, location: &str) -> Result<Scalar, ProblemError> {
    text.parse()
        .map_err(|e: crate::scalar::ScalarError| invalid(location, e.to_string()))
}

fn basis_index(names: &[String], name: &str, location: &str) -> Result<usize, ProblemError> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| invalid(location, format!("unknown basis element {name:?}")))
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, ProblemError> {
        serde_json::from_str(text)
            .map_err(|e| invalid(format!("line {} column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self, ProblemError> {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(path.display().to_string(), e.to_string()))?;
        Self::from_json(&text).map_err(|e| match e {
            ProblemError::Invalid { location, message } => invalid(format!("{}: {location}", path.display()), message),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files serialize")
    }

    pub fn resolve(&self) -> Result<Problem, ProblemError> {
        let lie = match &self.lie {
            Some(section) => Some(resolve_lie(section)?),
            None => None,
        };
        let names = lie.as_ref().map(|l| l.names().to_vec());
        let require_names = |section: &str| {
            names
                .clone()
                .ok_or_else(|| invalid(section, "needs a \"lie\" section to name the basis"))
        };
        let cocycle2 = match &self.cocycle2 {
            Some(entries) => {
                let names = require_names("cocycle2")?;
                let mut parsed = Vec::new();
                for (n, e) in entries.iter().enumerate() {
                    let loc = format!("cocycle2[{n}]");
                    let i = basis_index(&names, &e.left, &loc)?;
                    let j = basis_index(&names, &e.right, &loc)?;
                    parsed.push((i, j, parse_scalar(&e.value, &loc)?));
                }
                Some(
                    TwoCocycle::new(names.len(), &parsed).map_err(|source| ProblemError::Sridharan {
                        location: "cocycle2".into(),
                        source,
                    })?,
                )
            }
            None => None,
        };
        let cocycle1 = match &self.cocycle1 {
            Some(map) => {
                let names = require_names("cocycle1")?;
                let mut v = vec![Scalar::zero(); names.len()];
                for (k, text) in map {
                    let loc = format!("cocycle1.{k}");
                    v[basis_index(&names, k, &loc)?] = parse_scalar(text, &loc)?;
                }
                Some(v)
            }
            None => None,
        };
        let (group_generators, cap) = match &self.group {
            Some(g) => {
                let mut mats = Vec::new();
                for (n, rows) in g.generators.iter().enumerate() {
                    let loc = format!("group.generators[{n}]");
                    let mut parsed = Vec::new();
                    for (r, row) in rows.iter().enumerate() {
                        let mut out = Vec::new();
                        for (c, s) in row.iter().enumerate() {
                            out.push(parse_scalar(s, &format!("{loc}[{r}][{c}]"))?);
                        }
                        parsed.push(out);
                    }
                    let m = Matrix::from_rows(parsed).map_err(|e| invalid(&loc, e.to_string()))?;
                    if !m.is_square() {
                        return Err(invalid(&loc, "generator is not square"));
                    }
                    mats.push(m);
                }
                (Some(mats), g.cap)
            }
            None => (None, None),
        };
        let potential = match &self.potential {
            Some(p) => {
                let names = require_names("potential")?;
                Some(
                    CyclicPotential::parse(&p.expression, &names)
                        .map_err(|e| invalid("potential.expression", e.to_string()))?,
                )
            }
            None => None,
        };
        let mut normalize = Vec::new();
        if let Some(list) = &self.normalize {
            let names = require_names("normalize")?;
            for (n, text) in list.iter().enumerate() {
                normalize.push(
                    NCPolynomial::parse(text, &names).map_err(|e| invalid(format!("normalize[{n}]"), e.to_string()))?,
                );
            }
        }
        Ok(Problem {
            name: self.name.clone(),
            lie,
            cocycle2,
            cocycle1,
            group_generators,
            cap,
            potential,
            normalize,
            query: self.query,
        })
    }

    /// Problem file describing `U_f(g)`, optionally with a potential.
    pub fn from_sridharan(name: &str, a: &SridharanAlgebra, potential: Option<&str>, query: Option<Query>) -> Self {
        let lie = a.lie();
        let names = lie.names();
        let cocycle: Vec<CocycleEntry> = a
            .cocycle()
            .entries()
            .into_iter()
            .map(|(i, j, v)| CocycleEntry {
                left: names[i].clone(),
                right: names[j].clone(),
                value: v.to_string(),
            })
            .collect();
        Self {
            name: Some(name.to_string()),
            lie: Some(lie_section(lie)),
            cocycle2: (!cocycle.is_empty()).then_some(cocycle),
            cocycle1: None,
            group: None,
            potential: potential.map(|e| PotentialSection {
                expression: e.to_string(),
            }),
            normalize: None,
            query,
        }
    }
}

pub fn lie_section(lie: &LieAlgebra) -> LieSection {
    let names = lie.names();
    let mut brackets = Vec::new();
    for i in 0..lie.dim() {
        for j in i + 1..lie.dim() {
            let v = lie.bracket_basis(i, j);
            if v.iter().all(Scalar::is_zero) {
                continue;
            }
            let value = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (names[k].clone(), c.to_string()))
                .collect();
            brackets.push(BracketEntry {
                left: names[i].clone(),
                right: names[j].clone(),
                value,
            });
        }
    }
    LieSection {
        dim: lie.dim(),
        basis: names.to_vec(),
        brackets,
    }
}

fn resolve_lie(section: &LieSection) -> Result<LieAlgebra, ProblemError> {
    if section.basis.len() != section.dim {
        return Err(invalid(
            "lie.basis",
            format!("{} names for dimension {}", section.basis.len(), section.dim),
        ));
    }
    if section.dim == 0 {
        return Err(invalid("lie.dim", "dimension must be positive"));
    }
    let mut entries = Vec::new();
    for (n, b) in section.brackets.iter().enumerate() {
        let loc = format!("lie.brackets[{n}]");
        let i = basis_index(&section.basis, &b.left, &loc)?;
        let j = basis_index(&section.basis, &b.right, &loc)?;
        for (k, text) in &b.value {
            let k_idx = basis_index(&section.basis, k, &format!("{loc}.value"))?;
            entries.push(((i, j, k_idx), parse_scalar(text, &format!("{loc}.value.{k}"))?));
        }
    }
    LieAlgebra::new(section.dim, section.basis.clone(), &entries).map_err(|source| ProblemError::Lie {
        location: "lie".into(),
        source,
    })
}

/// Built-in catalog files, embedded at compile time.
pub const CATALOG: &[(&str, &str)] = &[
    ("case1", include_str!("../catalog/case1.json")),
    ("case2", include_str!("../catalog/case2.json")),
    ("case3", include_str!("../catalog/case3.json")),
    ("case4", include_str!("../catalog/case4.json")),
    ("case5", include_str!("../catalog/case5.json")),
    ("case6", include_str!("../catalog/case6.json")),
    ("case7", include_str!("../catalog/case7.json")),
    ("sl2", include_str!("../catalog/sl2.json")),
    ("heisenberg", include_str!("../catalog/heisenberg.json")),
    ("abelian2", include_str!("../catalog/abelian2.json")),
    ("abelian3", include_str!("../catalog/abelian3.json")),
    ("solvable2b", include_str!("../catalog/solvable2b.json")),
    ("solvable3b", include_str!("../catalog/solvable3b.json")),
];

pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|(n, _)| *n)
}

pub fn catalog_text(name: &str) -> Result<&'static str, ProblemError> {
    CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| ProblemError::UnknownCatalogEntry(name.to_string()))
}

pub fn catalog_file(name: &str) -> Result<ProblemFile, ProblemError> {
    ProblemFile::from_json(catalog_text(name)?).map_err(|e| match e {
        ProblemError::Invalid { location, message } => invalid(format!("catalog:{name}: {location}"), message),
        other => other,
    })
}

/// One row of the 3-dimensional CY Sridharan table with its potential.
#[derive(Debug, Clone)]
pub struct CatalogCase {
    pub name: String,
    pub algebra: SridharanAlgebra,
    pub potential: Option<CyclicPotential>,
    pub potential_text: Option<String>,
}

impl CatalogCase {
    pub fn from_file(file: &ProblemFile) -> Result<Self, ProblemError> {
        let problem = file.resolve()?;
        let name = problem.name.clone().unwrap_or_default();
        let lie = problem
            .lie
            .ok_or_else(|| invalid("lie", "catalog case needs a Lie algebra"))?;
        let f = problem.cocycle2.unwrap_or_else(|| TwoCocycle::zero(lie.dim()));
        let algebra = build_sridharan(&lie, &f).map_err(|source| ProblemError::Sridharan {
            location: format!("{name}: cocycle2"),
            source,
        })?;
        Ok(Self {
            name,
            algebra,
            potential: problem.potential,
            potential_text: file.potential.as_ref().map(|p| p.expression.clone()),
        })
    }
}

/// The seven cases, loaded from the embedded files.
pub fn catalog_cases() -> Vec<CatalogCase> {
    (1..=7)
        .map(|k| {
            let file = catalog_file(&format!("case{k}")).expect("embedded catalog parses");
            CatalogCase::from_file(&file).expect("embedded catalog is valid")
        })
        .collect()
}

/// Loads `case1.json` .. `case7.json` from a directory.
pub fn catalog_cases_from_dir(dir: &Path) -> Result<Vec<CatalogCase>, ProblemError> {
    (1..=7)
        .map(|k| CatalogCase::from_file(&ProblemFile::from_path(&dir.join(format!("case{k}.json")))?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_name_resolves() {
        for name in catalog_names() {
            let file = catalog_file(name).unwrap();
            assert_eq!(file.name.as_deref(), Some(name));
            file.resolve().unwrap();
        }
        assert!(matches!(
            catalog_file("nope"),
            Err(ProblemError::UnknownCatalogEntry(_))
        ));
    }

    #[test]
    fn catalog_roundtrips_through_serialization() {
        for case in catalog_cases() {
            let file = ProblemFile::from_sridharan(
                &case.name,
                &case.algebra,
                case.potential_text.as_deref(),
                Some(Query::SridharanCy),
            );
            let back = CatalogCase::from_file(&ProblemFile::from_json(&file.to_json()).unwrap()).unwrap();
            assert_eq!(back.algebra.lie(), case.algebra.lie());
            assert_eq!(back.algebra.cocycle(), case.algebra.cocycle());
            assert_eq!(back.potential, case.potential);
        }
    }

    #[test]
    fn bad_inputs_name_the_location() {
        let text = r#"{"lie": {"dim": 2, "basis": ["x", "y"], "brackets": [{"left": "x", "right": "q", "value": {"y": "1"}}]}}"#;
        let err = ProblemFile::from_json(text).unwrap().resolve().unwrap_err();
        assert!(err.to_string().contains("lie.brackets[0]"), "{err}");
        let text = r#"{"lie": {"dim": 1, "basis": ["x"]}, "cocycle1": {"x": "1/0"}}"#;
        let err = ProblemFile::from_json(text).unwrap().resolve().unwrap_err();
        assert!(err.to_string().contains("cocycle1.x"), "{err}");
        assert!(ProblemFile::from_json(r#"{"bogus": 1}"#).is_err());
        let text = r#"{"potential": {"expression": "x"}}"#;
        assert!(ProblemFile::from_json(text).unwrap().resolve().is_err());
    }
}
