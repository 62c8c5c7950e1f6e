//! JSON input formats: arrangements, apartments and q-assignments.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_rational, QAssignment};
use crate::arrangement::{
    Apartment, Arrangement, Geometry, Hyperplane, Mode, Sign, SignVector, DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneSpec {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ArrangementSpec {
    Geometric {
        dim: usize,
        hyperplanes: Vec<HyperplaneSpec>,
    },
    Covectors {
        m: usize,
        mode: Mode,
        faces: Vec<String>,
    },
}

impl ArrangementSpec {
    pub fn build(&self) -> Result<Arrangement> {
        match self {
            ArrangementSpec::Geometric { dim, hyperplanes } => {
                let planes = hyperplanes
                    .iter()
                    .map(|h| {
                        Ok(Hyperplane {
                            normal: h
                                .normal
                                .iter()
                                .map(|c| parse_rational(c))
                                .collect::<Result<_>>()?,
                            offset: parse_rational(&h.offset)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Arrangement::from_geometry(Geometry::new(*dim, planes)?, DEFAULT_ENUMERATION_CAP)
            }
            ArrangementSpec::Covectors { m, mode, faces } => {
                let signs = faces
                    .iter()
                    .map(|f| f.parse())
                    .collect::<Result<Vec<SignVector>>>()?;
                Arrangement::from_covectors(*m, *mode, signs)
            }
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    serde_json::from_str::<ArrangementSpec>(text)
        .map_err(json_error)?
        .build()
}

pub fn load_arrangement(path: &Path) -> Result<Arrangement> {
    parse_arrangement(&read(path)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ApartmentSpec {
    constraints: BTreeMap<String, String>,
}

/// `{"constraints": {"1": "+", "3": "-"}}` with 1-based hyperplane keys.
pub fn parse_apartment(text: &str, m: usize) -> Result<Apartment> {
    let spec: ApartmentSpec = serde_json::from_str(text).map_err(json_error)?;
    let mut constraints = BTreeMap::new();
    for (key, value) in spec.constraints {
        let h: usize = key
            .trim()
            .parse()
            .ok()
            .filter(|&h| (1..=m).contains(&h))
            .ok_or_else(|| Error::Parse(format!("`{key}` is not a hyperplane index in 1..={m}")))?;
        let mut chars = value.trim().chars();
        let sign = match (chars.next(), chars.next()) {
            (Some(c), None) => Sign::from_char(c)?,
            _ => return Err(Error::Parse(format!("`{value}` is not a single sign"))),
        };
        constraints.insert(h - 1, sign);
    }
    Apartment::new(constraints)
}

pub fn load_apartment(path: &Path, m: usize) -> Result<Apartment> {
    parse_apartment(&read(path)?, m)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QSpec {
    q: Vec<(String, String)>,
}

/// `{"q": [["1/2", "1/3"], ...]}`, one `[q_H^+, q_H^-]` pair per hyperplane.
pub fn parse_q(text: &str, m: usize) -> Result<QAssignment> {
    let spec: QSpec = serde_json::from_str(text).map_err(json_error)?;
    if spec.q.len() != m {
        return Err(Error::LengthMismatch(m, spec.q.len()));
    }
    let values = spec
        .q
        .iter()
        .map(|(p, n)| Ok((parse_rational(p)?, parse_rational(n)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QAssignment::new(values))
}

pub fn load_q(path: &Path, m: usize) -> Result<QAssignment> {
    parse_q(&read(path)?, m)
}

pub fn q_to_json(q: &QAssignment) -> String {
    let spec = QSpec {
        q: q.pairs()
            .iter()
            .map(|(p, n)| (format_rational(p), format_rational(n)))
            .collect(),
    };
    serde_json::to_string(&spec).expect("serializable")
}
