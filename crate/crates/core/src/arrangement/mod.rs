//! Combinatorial model of a hyperplane arrangement.
//!
//! Faces are sign vectors; the arrangement is the validated face set together
//! with ranks, and, when built from rational hyperplanes, the geometry used
//! for boundedness questions. Hyperplanes are indexed from 0 internally and
//! printed from 1.

pub mod geometry;
pub mod sign;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use geometry::{Geometry, Hyperplane};
pub use sign::{Sign, SignVector};

use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Full,
    ChambersOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub sign: SignVector,
    pub rank: usize,
    pub is_chamber: bool,
}

/// A flat, as the set of hyperplanes containing it. The empty set is the
/// ambient space. Ordered by size, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Flat(Vec<usize>);

impl Flat {
    pub fn new(mut hyperplanes: Vec<usize>) -> Self {
        hyperplanes.sort_unstable();
        hyperplanes.dedup();
        Flat(hyperplanes)
    }

    pub fn ambient() -> Self {
        Flat(Vec::new())
    }

    pub fn hyperplanes(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, h: usize) -> bool {
        self.0.binary_search(&h).is_ok()
    }

    pub fn is_subset(&self, other: &Flat) -> bool {
        self.0.iter().all(|h| other.contains(*h))
    }

    pub fn of_face(sign: &SignVector) -> Self {
        Flat(sign.support())
    }
}

impl Ord for Flat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Flat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|h| (h + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl FromStr for Flat {
    type Err = Error;

    /// Parses a comma-separated list of 1-based hyperplane indices.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches('{').trim_end_matches('}');
        if text.trim().is_empty() {
            return Ok(Flat::ambient());
        }
        let hyperplanes = text
            .split(',')
            .map(|item| match item.trim().parse::<usize>() {
                Ok(h) if h >= 1 => Ok(h - 1),
                _ => Err(Error::Parse(format!(
                    "`{item}` is not a 1-based hyperplane index"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Flat::new(hyperplanes))
    }
}

/// Strict side constraints on some hyperplanes. Empty means the whole space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Apartment {
    constraints: BTreeMap<usize, Sign>,
}

impl Apartment {
    pub fn whole_space() -> Self {
        Apartment::default()
    }

    pub fn new(constraints: BTreeMap<usize, Sign>) -> Result<Self> {
        if constraints.values().any(|s| s.is_zero()) {
            return Err(Error::Invalid(
                "apartment constraints must be + or -".into(),
            ));
        }
        Ok(Apartment { constraints })
    }

    pub fn constraints(&self) -> &BTreeMap<usize, Sign> {
        &self.constraints
    }

    pub fn is_whole_space(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn contains(&self, sign: &SignVector) -> bool {
        self.constraints
            .iter()
            .all(|(&h, &s)| h < sign.len() && sign.get(h) == s)
    }
}

impl fmt::Display for Apartment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .constraints
            .iter()
            .map(|(h, s)| format!("{}:{}", h + 1, s.as_char()))
            .collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    pub check: &'static str,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub mode: Mode,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    m: usize,
    mode: Mode,
    faces: Vec<Face>,
    index: HashMap<SignVector, usize>,
    geometry: Option<Geometry>,
}

impl Arrangement {
    /// Builds an arrangement from raw sign vectors. Duplicates are kept so
    /// that [`Arrangement::validate`] can report them.
    pub fn from_covectors(m: usize, mode: Mode, signs: Vec<SignVector>) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|s| s.len() != m) {
            return Err(Error::LengthMismatch(m, bad.len()));
        }
        Ok(Arrangement::build(m, mode, signs, None))
    }

    /// All faces of a rational affine arrangement, by exact feasibility of
    /// every sign vector in `{+,0,-}^m`.
    pub fn from_geometry(geometry: Geometry, cap: usize) -> Result<Self> {
        let m = geometry.len();
        if m > cap {
            return Err(Error::CapExceeded { m, cap });
        }
        let mut signs = Vec::new();
        let mut word = vec![Sign::Plus; m];
        loop {
            let sigma = SignVector::new(word.clone());
            if geometry.feasible(&sigma) {
                signs.push(sigma);
            }
            // Odometer over {+, -, 0}^m.
            let mut pos = m;
            loop {
                if pos == 0 {
                    return Ok(Arrangement::build(m, Mode::Full, signs, Some(geometry)));
                }
                pos -= 1;
                word[pos] = match word[pos] {
                    Sign::Plus => Sign::Minus,
                    Sign::Minus => Sign::Zero,
                    Sign::Zero => Sign::Plus,
                };
                if word[pos] != Sign::Plus {
                    break;
                }
            }
        }
    }

    fn build(m: usize, mode: Mode, mut signs: Vec<SignVector>, geometry: Option<Geometry>) -> Self {
        signs.sort();
        let ranks = match mode {
            Mode::Full => longest_chain_ranks(&signs),
            Mode::ChambersOnly => vec![0; signs.len()],
        };
        let faces: Vec<Face> = signs
            .into_iter()
            .zip(ranks)
            .map(|(sign, rank)| Face {
                is_chamber: sign.is_chamber(),
                sign,
                rank,
            })
            .collect();
        let mut index = HashMap::with_capacity(faces.len());
        for (i, f) in faces.iter().enumerate() {
            index.entry(f.sign.clone()).or_insert(i);
        }
        Arrangement {
            m,
            mode,
            faces,
            index,
            geometry,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn geometry(&self) -> Option<&Geometry> {
        self.geometry.as_ref()
    }

    /// Faces sorted by sign string.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn chambers(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.is_chamber)
    }

    pub fn face(&self, sign: &SignVector) -> Option<&Face> {
        self.index.get(sign).map(|&i| &self.faces[i])
    }

    pub fn contains(&self, sign: &SignVector) -> bool {
        self.index.contains_key(sign)
    }

    pub(crate) fn require_full(&self, op: &'static str) -> Result<()> {
        match self.mode {
            Mode::Full => Ok(()),
            Mode::ChambersOnly => Err(Error::ModeError(op)),
        }
    }

    pub(crate) fn lookup(&self, sign: &SignVector) -> Result<&Face> {
        self.face(sign)
            .ok_or_else(|| Error::UnknownFace(sign.to_string()))
    }

    pub fn rank(&self, sign: &SignVector) -> Result<usize> {
        Ok(self.lookup(sign)?.rank)
    }

    /// Faces sorted by (rank, sign string).
    pub fn faces_by_rank(&self) -> Vec<&Face> {
        let mut out: Vec<&Face> = self.faces.iter().collect();
        out.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.sign.cmp(&b.sign)));
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let mut fail = |check: &'static str, witness: String| {
            if !failures
                .iter()
                .any(|f: &ValidationFailure| f.check == check)
            {
                failures.push(ValidationFailure { check, witness });
            }
        };
        for pair in self.faces.windows(2) {
            if pair[0].sign == pair[1].sign {
                fail("uniqueness", format!("duplicate face {}", pair[0].sign));
            }
        }
        for f in &self.faces {
            if f.is_chamber != f.sign.is_chamber() {
                fail(
                    "chamber_flag",
                    format!("face {} has a wrong chamber flag", f.sign),
                );
            }
        }
        match self.mode {
            Mode::ChambersOnly => {
                if let Some(f) = self.faces.iter().find(|f| !f.sign.is_chamber()) {
                    fail(
                        "no_zeros",
                        format!("chambers-only list contains {}", f.sign),
                    );
                }
            }
            Mode::Full => {
                'closure: for f in &self.faces {
                    for g in &self.faces {
                        let fg = f.sign.product(&g.sign);
                        if !self.contains(&fg) {
                            fail(
                                "composition_closure",
                                format!("({}, {}) -> {} missing", f.sign, g.sign, fg),
                            );
                            break 'closure;
                        }
                    }
                }
                for f in &self.faces {
                    let expected = self
                        .faces
                        .iter()
                        .filter(|g| g.sign.lt(&f.sign))
                        .map(|g| g.rank + 1)
                        .max()
                        .unwrap_or(0);
                    if f.rank != expected {
                        fail(
                            "rank",
                            format!(
                                "face {} has rank {} but longest chain {}",
                                f.sign, f.rank, expected
                            ),
                        );
                    }
                }
                for f in self.faces.iter().filter(|f| !f.is_chamber) {
                    if !self.chambers().any(|c| f.sign.leq(&c.sign)) {
                        fail(
                            "below_chamber",
                            format!("face {} lies below no chamber", f.sign),
                        );
                    }
                }
            }
        }
        ValidationReport {
            mode: self.mode,
            failures,
        }
    }

    /// Distinct supports of faces, ordered by (size, lex).
    pub fn flats(&self) -> Result<Vec<Flat>> {
        self.require_full("flats")?;
        let mut flats: Vec<Flat> = self.faces.iter().map(|f| Flat::of_face(&f.sign)).collect();
        flats.sort();
        flats.dedup();
        Ok(flats)
    }

    /// `A_F`: the hyperplanes containing `F`.
    pub fn centralization(&self, sign: &SignVector) -> Result<Flat> {
        self.require_full("centralization")?;
        Ok(Flat::of_face(&self.lookup(sign)?.sign))
    }

    pub fn min_faces(&self) -> Result<Vec<&Face>> {
        self.require_full("min_faces")?;
        Ok(self
            .faces
            .iter()
            .filter(|f| !self.faces.iter().any(|g| g.sign.lt(&f.sign)))
            .collect())
    }

    pub fn is_central(&self) -> Result<bool> {
        self.require_full("is_central")?;
        Ok(self.contains(&SignVector::zeros(self.m)))
    }

    /// The face with every sign negated.
    pub fn opposite(&self, sign: &SignVector) -> Result<&Face> {
        if !self.is_central()? {
            return Err(Error::NotCentral);
        }
        let neg = sign.negated();
        self.face(&neg)
            .ok_or_else(|| Error::OppositeMissing(sign.to_string()))
    }

    /// `G̃_base`: negate `G` on `s(base)`, keep it elsewhere.
    pub fn tilde(&self, base: &SignVector, g: &SignVector) -> Result<&Face> {
        self.require_full("tilde")?;
        if !base.leq(g) {
            return Err(Error::NotNested(base.to_string(), g.to_string()));
        }
        let flipped = g.flip_on(&base.support());
        self.face(&flipped)
            .ok_or_else(|| Error::TildeMissing(flipped.to_string()))
    }

    /// Chambers inside the apartment, in sign-string order. Works in both modes.
    pub fn apartment_chambers(&self, k: &Apartment) -> Result<Vec<&Face>> {
        let chambers: Vec<&Face> = self.chambers().filter(|c| k.contains(&c.sign)).collect();
        if chambers.is_empty() {
            return Err(Error::EmptyApartment);
        }
        Ok(chambers)
    }

    /// `(F_A^K, C_A^K)`.
    pub fn apartment_faces(&self, k: &Apartment) -> Result<(Vec<&Face>, Vec<&Face>)> {
        self.require_full("apartment_faces")?;
        let chambers = self.apartment_chambers(k)?;
        let faces = self.faces.iter().filter(|f| k.contains(&f.sign)).collect();
        Ok((faces, chambers))
    }

    fn require_flat(&self, x: &Flat) -> Result<()> {
        if x.hyperplanes().iter().any(|&h| h >= self.m) || !self.flats()?.contains(x) {
            return Err(Error::UnknownFlat(x.to_string()));
        }
        Ok(())
    }

    /// `C_{A^X}`: faces whose support is exactly `X`.
    pub fn restriction_chambers(&self, x: &Flat) -> Result<Vec<&Face>> {
        self.require_full("restriction_chambers")?;
        self.require_flat(x)?;
        Ok(self
            .faces
            .iter()
            .filter(|f| f.sign.support() == x.hyperplanes())
            .collect())
    }

    /// `F_{A^X}`: faces lying inside `X`, i.e. with support containing `X`.
    pub fn restriction_faces(&self, x: &Flat) -> Result<Vec<&Face>> {
        self.require_full("restriction_faces")?;
        self.require_flat(x)?;
        Ok(self
            .faces
            .iter()
            .filter(|f| x.hyperplanes().iter().all(|&h| f.sign.get(h).is_zero()))
            .collect())
    }

    /// Hyperplanes `H ∉ X` that meet `X`: some face inside `X` lies on `H`.
    pub fn restriction_separators(&self, x: &Flat) -> Result<Vec<usize>> {
        let inside = self.restriction_faces(x)?;
        Ok((0..self.m)
            .filter(|&h| !x.contains(h) && inside.iter().any(|f| f.sign.get(h).is_zero()))
            .collect())
    }
}

/// Rank of each face: length of the longest strict chain below it.
fn longest_chain_ranks(signs: &[SignVector]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..signs.len()).collect();
    // A strictly smaller face has strictly more zeros.
    order.sort_by_key(|&i| std::cmp::Reverse(signs[i].zero_count()));
    let mut ranks = vec![0; signs.len()];
    for (pos, &i) in order.iter().enumerate() {
        ranks[i] = order[..pos]
            .iter()
            .filter(|&&j| signs[j].lt(&signs[i]))
            .map(|&j| ranks[j] + 1)
            .max()
            .unwrap_or(0);
    }
    ranks
}
