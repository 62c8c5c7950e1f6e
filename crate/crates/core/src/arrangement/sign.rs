use std::fmt;
use std::str::FromStr;

use crate::algebra::Side;
use crate::error::{Error, Result};

/// One coordinate of a sign vector. Variant order matches the ASCII order of
/// the printed characters, so sorting vectors sorts their strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn side(self) -> Option<Side> {
        match self {
            Sign::Plus => Some(Side::Plus),
            Sign::Minus => Some(Side::Minus),
            Sign::Zero => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    pub fn from_char(c: char) -> Result<Sign> {
        match c {
            '+' => Ok(Sign::Plus),
            '-' | '−' => Ok(Sign::Minus),
            '0' => Ok(Sign::Zero),
            other => Err(Error::Parse(format!("`{other}` is not one of + 0 -"))),
        }
    }
}

/// A word over `{+, 0, -}`, one letter per hyperplane.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignVector(signs)
    }

    pub fn zeros(m: usize) -> Self {
        SignVector(vec![Sign::Zero; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn get(&self, h: usize) -> Sign {
        self.0[h]
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    pub fn is_chamber(&self) -> bool {
        !self.0.contains(&Sign::Zero)
    }

    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|s| s.is_zero()).count()
    }

    /// `s(F)`: 0-based indices of the hyperplanes this face lies on.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&h| self.0[h].is_zero()).collect()
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.neg()).collect())
    }

    /// Face product: our sign where nonzero, the other's otherwise.
    pub fn compose(&self, other: &SignVector) -> Result<SignVector> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.product(other))
    }

    pub(crate) fn product(&self, other: &SignVector) -> SignVector {
        debug_assert_eq!(self.len(), other.len());
        SignVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| if a.is_zero() { b } else { a })
                .collect(),
        )
    }

    /// `self ⪯ other`: every coordinate is 0 or agrees with `other`.
    pub fn leq(&self, other: &SignVector) -> bool {
        self.len() == other.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(&a, &b)| a.is_zero() || a == b)
    }

    pub fn lt(&self, other: &SignVector) -> bool {
        self != other && self.leq(other)
    }

    /// Negate the coordinates listed in `hyperplanes`, keep the rest.
    pub fn flip_on(&self, hyperplanes: &[usize]) -> SignVector {
        let mut out = self.0.clone();
        for &h in hyperplanes {
            out[h] = out[h].neg();
        }
        SignVector(out)
    }
}

impl FromIterator<Sign> for SignVector {
    fn from_iter<I: IntoIterator<Item = Sign>>(iter: I) -> Self {
        SignVector(iter.into_iter().collect())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        text.chars().map(Sign::from_char).collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}
