//! JSON file formats shared with the CLI.
//!
//! External permutations are 1-indexed: image arrays list the image of point
//! `i+1` at position `i`, and cycle strings use 1-based points. Image arrays
//! are emitted on output; both notations are accepted on input. Colors are
//! 1-indexed as well, matching the in-memory convention.

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::constructive::{NormalSeries, SeriesStepKind};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A permutation as either a 1-indexed image array or a cycle string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermSpec {
    Images(Vec<usize>),
    Cycles(String),
}

impl PermSpec {
    pub fn to_permutation(&self, degree: usize) -> Result<Permutation> {
        match self {
            PermSpec::Images(images) => {
                if images.len() != degree {
                    return Err(Error::InvalidPermutation(format!(
                        "image array has {} entries, expected {degree}",
                        images.len()
                    )));
                }
                let zero_indexed: Vec<usize> = images
                    .iter()
                    .map(|&v| {
                        if v == 0 || v > degree {
                            Err(Error::InvalidPermutation(format!(
                                "image {v} outside 1..={degree}"
                            )))
                        } else {
                            Ok(v - 1)
                        }
                    })
                    .collect::<Result<_>>()?;
                Permutation::from_images(zero_indexed)
            }
            PermSpec::Cycles(s) => Permutation::parse_cycles(degree, s),
        }
    }

    /// The emitted form: a 1-indexed image array.
    pub fn from_permutation(p: &Permutation) -> PermSpec {
        PermSpec::Images(p.images().iter().map(|&v| v + 1).collect())
    }
}

/// `{"degree": m, "generators": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionFile {
    pub degree: usize,
    pub generators: Vec<PermSpec>,
}

impl ActionFile {
    pub fn to_group(&self) -> Result<PermGroup> {
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| g.to_permutation(self.degree))
            .collect::<Result<_>>()?;
        PermGroup::closure(self.degree, gens)
    }

    pub fn from_group(g: &PermGroup) -> ActionFile {
        ActionFile {
            degree: g.degree(),
            generators: g.generators().iter().map(PermSpec::from_permutation).collect(),
        }
    }
}

/// `{"num_colors": r, "colors": [c_1, …, c_m]}` with colors aligned to
/// 1-indexed points in array order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColoringFile {
    pub num_colors: usize,
    pub colors: Vec<usize>,
}

impl ColoringFile {
    pub fn to_coloring(&self) -> Result<Coloring> {
        Coloring::new(self.num_colors, self.colors.clone())
    }

    pub fn from_coloring(c: &Coloring) -> ColoringFile {
        ColoringFile {
            num_colors: c.num_colors(),
            colors: c.assignment().to_vec(),
        }
    }
}

/// `{"terms": [[generator, …], …], "kinds": ["cyclic"|"central", …]}`; terms
/// run from the trivial subgroup to the full group, each as a generator list.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesFile {
    pub terms: Vec<Vec<PermSpec>>,
    pub kinds: Vec<String>,
}

impl SeriesFile {
    pub fn to_series(&self, degree: usize) -> Result<NormalSeries> {
        let terms: Vec<PermGroup> = self
            .terms
            .iter()
            .map(|gens| {
                let perms: Vec<Permutation> = gens
                    .iter()
                    .map(|g| g.to_permutation(degree))
                    .collect::<Result<_>>()?;
                PermGroup::closure(degree, perms)
            })
            .collect::<Result<_>>()?;
        let kinds: Vec<SeriesStepKind> = self
            .kinds
            .iter()
            .map(|k| match k.as_str() {
                "cyclic" => Ok(SeriesStepKind::Cyclic),
                "central" => Ok(SeriesStepKind::Central),
                other => Err(Error::InvalidSeries(format!(
                    "unknown step kind {other:?}, expected \"cyclic\" or \"central\""
                ))),
            })
            .collect::<Result<_>>()?;
        NormalSeries::new(terms, kinds)
    }

    pub fn from_series(s: &NormalSeries) -> SeriesFile {
        SeriesFile {
            terms: s
                .terms()
                .iter()
                .map(|t| t.generators().iter().map(PermSpec::from_permutation).collect())
                .collect(),
            kinds: s
                .kinds()
                .iter()
                .map(|k| {
                    match k {
                        SeriesStepKind::Cyclic => "cyclic",
                        SeriesStepKind::Central => "central",
                    }
                    .to_string()
                })
                .collect(),
        }
    }
}
