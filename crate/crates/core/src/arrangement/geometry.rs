//! Rational affine hyperplanes and exact feasibility of sign conditions.
//!
//! A sign vector `σ` is realized by the point set
//! `{x : normal_H·x > offset_H if σ_H = +, = if 0, < if -}`. Equalities are
//! eliminated by rational Gaussian elimination; the remaining strict system
//! is decided by Fourier–Motzkin elimination, and a witness point is
//! recovered by back-substitution through the saved elimination stages.

use num_traits::{One, Signed, Zero};

use super::sign::{Sign, SignVector};
use crate::algebra::{RatMatrix, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometry {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

/// `coeffs · t > rhs` (strict) or `coeffs · t >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Inequality {
    coeffs: Vec<Rational>,
    rhs: Rational,
    strict: bool,
}

impl Inequality {
    /// Scale so the last nonzero coefficient has absolute value 1.
    fn normalized(mut self) -> Self {
        if let Some(c) = self.coeffs.iter().rev().find(|c| !c.is_zero()) {
            let scale = c.abs();
            if !scale.is_one() {
                for x in &mut self.coeffs {
                    *x /= &scale;
                }
                self.rhs /= &scale;
            }
        }
        self
    }
}

impl Geometry {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(Error::Invalid(format!(
                    "hyperplane {} has a normal of length {} in dimension {dim}",
                    i + 1,
                    h.normal.len()
                )));
            }
            if h.normal.iter().all(Zero::is_zero) {
                return Err(Error::Invalid(format!(
                    "hyperplane {} has a zero normal",
                    i + 1
                )));
            }
        }
        Ok(Geometry { dim, hyperplanes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Sign vector of the face containing `point`.
    pub fn sign_of(&self, point: &[Rational]) -> SignVector {
        self.hyperplanes
            .iter()
            .map(|h| {
                let value: Rational = h
                    .normal
                    .iter()
                    .zip(point)
                    .fold(Rational::zero(), |acc, (a, x)| acc + a * x);
                match value.cmp(&h.offset) {
                    std::cmp::Ordering::Greater => Sign::Plus,
                    std::cmp::Ordering::Less => Sign::Minus,
                    std::cmp::Ordering::Equal => Sign::Zero,
                }
            })
            .collect()
    }

    pub fn feasible(&self, sigma: &SignVector) -> bool {
        self.witness(sigma).is_some()
    }

    /// A rational point realizing `sigma`, if the face is nonempty.
    pub fn witness(&self, sigma: &SignVector) -> Option<Vec<Rational>> {
        assert_eq!(sigma.len(), self.len(), "sign vector length must equal m");
        let mut eq_rows = Vec::new();
        let mut eq_rhs = Vec::new();
        let mut strict = Vec::new();
        for (h, s) in self.hyperplanes.iter().zip(sigma.iter()) {
            match s {
                Sign::Zero => {
                    eq_rows.push(h.normal.clone());
                    eq_rhs.push(h.offset.clone());
                }
                Sign::Plus => strict.push((h.normal.clone(), h.offset.clone())),
                Sign::Minus => {
                    strict.push((h.normal.iter().map(|a| -a).collect(), -h.offset.clone()))
                }
            }
        }
        // x = base + directions · t parametrizes the equality constraints.
        let (base, directions) = if eq_rows.is_empty() {
            let identity = (0..self.dim)
                .map(|i| {
                    (0..self.dim)
                        .map(|j| {
                            if i == j {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            (vec![Rational::zero(); self.dim], identity)
        } else {
            let m = RatMatrix::new(eq_rows.len(), self.dim, eq_rows.concat()).ok()?;
            let sol = m.solve(&eq_rhs).ok()?;
            (sol.particular, sol.null_space)
        };
        let ineqs: Vec<Inequality> = strict
            .into_iter()
            .map(|(a, b)| {
                let coeffs = directions.iter().map(|d| dot(&a, d)).collect();
                let rhs = b - dot(&a, &base);
                Inequality {
                    coeffs,
                    rhs,
                    strict: true,
                }
            })
            .collect();
        let t = fourier_motzkin_point(ineqs, directions.len())?;
        let mut x = base;
        for (tk, d) in t.iter().zip(&directions) {
            for (xi, di) in x.iter_mut().zip(d) {
                *xi += tk * di;
            }
        }
        Some(x)
    }

    /// True iff the closure of the chamber `sigma` has trivial recession cone.
    pub fn is_bounded_chamber(&self, sigma: &SignVector) -> bool {
        assert!(sigma.is_chamber(), "boundedness is defined for chambers");
        let cone: Vec<Inequality> = self
            .hyperplanes
            .iter()
            .zip(sigma.iter())
            .map(|(h, s)| {
                let coeffs = match s {
                    Sign::Plus => h.normal.clone(),
                    _ => h.normal.iter().map(|a| -a).collect(),
                };
                Inequality {
                    coeffs,
                    rhs: Rational::zero(),
                    strict: false,
                }
            })
            .collect();
        for j in 0..self.dim {
            for dir in [Rational::one(), -Rational::one()] {
                let mut system = cone.clone();
                let mut coeffs = vec![Rational::zero(); self.dim];
                coeffs[j] = dir;
                system.push(Inequality {
                    coeffs,
                    rhs: Rational::zero(),
                    strict: true,
                });
                if fourier_motzkin_point(system, self.dim).is_some() {
                    return false;
                }
            }
        }
        true
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Decide `{t : all inequalities}` and return a point in it.
fn fourier_motzkin_point(system: Vec<Inequality>, nvars: usize) -> Option<Vec<Rational>> {
    // stages[k] holds the system over variables 0..=k, before eliminating k.
    let mut stages: Vec<Vec<Inequality>> = vec![Vec::new(); nvars];
    let mut current = dedup(system);
    for k in (0..nvars).rev() {
        let mut next = Vec::new();
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for ineq in &current {
            let c = &ineq.coeffs[k];
            if c.is_zero() {
                next.push(ineq.clone());
            } else if c.is_positive() {
                lower.push(ineq);
            } else {
                upper.push(ineq);
            }
        }
        for lo in &lower {
            for up in &upper {
                let a = lo.coeffs[k].abs();
                let b = up.coeffs[k].abs();
                let coeffs = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(x, y)| x / &a + y / &b)
                    .collect();
                next.push(Inequality {
                    coeffs,
                    rhs: &lo.rhs / &a + &up.rhs / &b,
                    strict: lo.strict || up.strict,
                });
            }
        }
        stages[k] = std::mem::replace(&mut current, dedup(next));
    }
    let consistent = current.iter().all(|ineq| {
        let zero = Rational::zero();
        if ineq.strict {
            zero > ineq.rhs
        } else {
            zero >= ineq.rhs
        }
    });
    if !consistent {
        return None;
    }
    let mut point = vec![Rational::zero(); nvars];
    for k in 0..nvars {
        let mut lo: Option<(Rational, bool)> = None;
        let mut hi: Option<(Rational, bool)> = None;
        for ineq in &stages[k] {
            let c = &ineq.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let rest = dot(&ineq.coeffs[..k], &point[..k]);
            let bound = (&ineq.rhs - rest) / c;
            if c.is_positive() {
                tighten(&mut lo, bound, ineq.strict, |new, old| new > old);
            } else {
                tighten(&mut hi, bound, ineq.strict, |new, old| new < old);
            }
        }
        point[k] = match (lo, hi) {
            (None, None) => Rational::zero(),
            (Some((l, _)), None) => l + Rational::one(),
            (None, Some((u, _))) => u - Rational::one(),
            (Some((l, ls)), Some((u, us))) => {
                if l < u {
                    (l + u) / Rational::from_integer(2.into())
                } else if l == u && !ls && !us {
                    l
                } else {
                    return None;
                }
            }
        };
    }
    Some(point)
}

fn tighten(
    slot: &mut Option<(Rational, bool)>,
    bound: Rational,
    strict: bool,
    better: impl Fn(&Rational, &Rational) -> bool,
) {
    match slot {
        None => *slot = Some((bound, strict)),
        Some((old, old_strict)) => {
            if better(&bound, old) {
                *slot = Some((bound, strict));
            } else if bound == *old {
                *old_strict |= strict;
            }
        }
    }
}

fn dedup(system: Vec<Inequality>) -> Vec<Inequality> {
    let mut out: Vec<Inequality> = Vec::with_capacity(system.len());
    for ineq in system.into_iter().map(Inequality::normalized) {
        if let Some(same) = out
            .iter_mut()
            .find(|o| o.coeffs == ineq.coeffs && o.rhs == ineq.rhs)
        {
            same.strict |= ineq.strict;
        } else {
            out.push(ineq);
        }
    }
    out
}
