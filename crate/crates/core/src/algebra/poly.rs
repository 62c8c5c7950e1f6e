//! Sparse multivariate polynomials over the integers in the variables
//! `q_H^+`, `q_H^-`.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is the
//! graded-lex printing order: lower total degree first, then monomials that
//! use earlier variables first. The same order is a valid monomial order,
//! so the largest key doubles as the leading term for exact division.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Plus => Side::Minus,
            Side::Minus => Side::Plus,
        }
    }
}

/// `q_H^side`. The hyperplane index is 0-based internally and printed 1-based.
/// Field order gives the canonical order `(1,+) < (1,-) < (2,+) < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub hyperplane: usize,
    pub side: Side,
}

impl Variable {
    pub fn new(hyperplane: usize, side: Side) -> Self {
        Variable { hyperplane, side }
    }

    pub fn plus(hyperplane: usize) -> Self {
        Variable::new(hyperplane, Side::Plus)
    }

    pub fn minus(hyperplane: usize) -> Self {
        Variable::new(hyperplane, Side::Minus)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Plus => '+',
            Side::Minus => '-',
        };
        write!(f, "q{}{}", self.hyperplane + 1, side)
    }
}

/// Power product with strictly positive exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Variable) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut merged: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                let slot = merged.entry(v).or_insert(0);
                *slot = slot.checked_add(e).expect("monomial exponent overflow");
            }
        }
        Monomial(merged.into_iter().collect())
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a.1.checked_add(b.1).expect("monomial exponent overflow");
                    out.push((a.0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let d = other.0[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - d)),
                }
            } else {
                out.push((v, e));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a.0 != b.0 {
                    return a.0.cmp(&b.0);
                }
                if a.1 != b.1 {
                    return b.1.cmp(&a.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Values for every `q_H^±`, indexed by 0-based hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QAssignment {
    values: Vec<(Rational, Rational)>,
}

impl QAssignment {
    pub fn new(values: Vec<(Rational, Rational)>) -> Self {
        QAssignment { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn pairs(&self) -> &[(Rational, Rational)] {
        &self.values
    }

    pub fn get(&self, v: Variable) -> Option<&Rational> {
        self.values.get(v.hyperplane).map(|(p, m)| match v.side {
            Side::Plus => p,
            Side::Minus => m,
        })
    }

    /// The assignment with `q_H^+` and `q_H^-` exchanged for every `H`.
    pub fn swapped(&self) -> QAssignment {
        QAssignment {
            values: self
                .values
                .iter()
                .map(|(p, m)| (m.clone(), p.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Polynomial::term(c, Monomial::one())
    }

    pub fn var(v: Variable) -> Self {
        Polynomial::term(1, Monomial::var(v))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn mul_term(&self, m: &Monomial, c: &BigInt) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(n, d)| (n.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / divisor` in `Z[q]`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (lead_m, lead_c) = divisor.leading().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.checked_div(lead_m).ok_or(Error::NotDivisible)?;
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            rem -= &divisor.mul_term(&qm, &qc);
            quotient.add_term(qm, qc);
        }
        Ok(quotient)
    }

    pub fn eval(&self, q: &QAssignment) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut value = Rational::from_integer(c.clone());
            for &(v, e) in m.factors() {
                let x = q
                    .get(v)
                    .ok_or_else(|| Error::MissingAssignment(v.to_string()))?;
                value *= num_traits::pow(x.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vars: Vec<Variable> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }
}

impl From<Variable> for Polynomial {
    fn from(v: Variable) -> Self {
        Polynomial::var(v)
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::term(1, m)
    }
}

impl<'a> AddAssign<&'a Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> SubAssign<&'a Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -self.clone()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses the canonical printing format; term order in the input is free.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Polynomial::zero();
        let mut rest = text;
        let mut negative = false;
        if let Some(stripped) = rest.strip_prefix('-') {
            negative = true;
            rest = stripped.trim_start();
        }
        loop {
            let (chunk, next) = split_term(rest);
            let (m, c) = parse_term(chunk.trim())?;
            out.add_term(m, if negative { -c } else { c });
            match next {
                None => break,
                Some((neg, tail)) => {
                    negative = neg;
                    rest = tail;
                }
            }
        }
        Ok(out)
    }
}

/// Splits at the first top-level ` + ` or ` - ` separator.
fn split_term(text: &str) -> (&str, Option<(bool, &str)>) {
    let plus = text.find(" + ");
    let minus = text.find(" - ");
    let cut = match (plus, minus) {
        (Some(p), Some(m)) => Some(p.min(m)),
        (p, m) => p.or(m),
    };
    match cut {
        None => (text, None),
        Some(i) => (&text[..i], Some((&text[i..i + 3] == " - ", &text[i + 3..]))),
    }
}

fn parse_term(text: &str) -> Result<(Monomial, BigInt)> {
    let mut coeff = BigInt::one();
    let mut factors = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        if let Some(body) = factor.strip_prefix('q') {
            let (var, exp) = match body.split_once('^') {
                Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad_term(text))?),
                None => (body, 1),
            };
            let side = match var.chars().last() {
                Some('+') => Side::Plus,
                Some('-') => Side::Minus,
                _ => return Err(bad_term(text)),
            };
            let index: usize = var[..var.len() - 1].parse().map_err(|_| bad_term(text))?;
            if index == 0 {
                return Err(bad_term(text));
            }
            factors.push((Variable::new(index - 1, side), exp));
        } else {
            let c: BigInt = factor.parse().map_err(|_| bad_term(text))?;
            coeff *= c;
        }
    }
    Ok((Monomial::from_factors(factors), coeff))
}

fn bad_term(text: &str) -> Error {
    Error::Parse(format!("malformed polynomial term `{text}`"))
}
