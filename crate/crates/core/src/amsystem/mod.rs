//! The linear system `Σ_{GF=G} x_F 𝐯(F,G) = 0` over non-minimal faces `G`,
//! its solution dimension, and the recursive solver for central
//! arrangements.

pub mod witt;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Polynomial, QAssignment, RatMatrix, Rational};
use crate::arrangement::{Arrangement, SignVector};
use crate::error::{Error, Result};
use crate::varchenko::{distance_extended, varchenko_matrix_restriction};

pub use witt::{witt_check, IdentityTally, WittReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmSystem {
    rows: Vec<SignVector>,
    cols: Vec<SignVector>,
    entries: Vec<Vec<Polynomial>>,
}

impl AmSystem {
    /// Non-minimal faces, one equation each.
    pub fn rows(&self) -> &[SignVector] {
        &self.rows
    }

    /// All faces, one unknown each, in (rank, sign string) order.
    pub fn cols(&self) -> &[SignVector] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row][col]
    }

    pub fn eval(&self, q: &QAssignment) -> Result<RatMatrix> {
        let mut out = RatMatrix::zeros(self.rows.len(), self.cols.len());
        for (i, row) in self.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if !p.is_zero() {
                    out.set(i, j, p.eval(q)?);
                }
            }
        }
        Ok(out)
    }
}

fn is_minimal(a: &Arrangement, f: &SignVector) -> bool {
    !a.faces().iter().any(|g| g.sign.lt(f))
}

pub fn build_system(a: &Arrangement) -> Result<AmSystem> {
    a.require_full("build_system")?;
    let cols: Vec<SignVector> = a
        .faces_by_rank()
        .into_iter()
        .map(|f| f.sign.clone())
        .collect();
    let rows: Vec<SignVector> = cols.iter().filter(|g| !is_minimal(a, g)).cloned().collect();
    let entries = rows
        .iter()
        .map(|g| {
            cols.iter()
                .map(|f| {
                    if g.product(f) == *g {
                        distance_extended(a, f, g)
                    } else {
                        Ok(Polynomial::zero())
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AmSystem {
        rows,
        cols,
        entries,
    })
}

fn check_length(a: &Arrangement, q: &QAssignment) -> Result<()> {
    if q.len() != a.m() {
        return Err(Error::LengthMismatch(a.m(), q.len()));
    }
    Ok(())
}

/// `det S_A` at `q`, as the product of the evaluated flat blocks.
pub fn assembly_det_at(a: &Arrangement, q: &QAssignment) -> Result<Rational> {
    check_length(a, q)?;
    let mut det = Rational::one();
    for x in a.flats()? {
        det *= varchenko_matrix_restriction(a, &x)?
            .entries()
            .eval(q)?
            .det()?;
    }
    Ok(det)
}

/// Errors with [`Error::DegenerateAssignment`] when `det S_A` vanishes at `q`.
pub fn require_nondegenerate(a: &Arrangement, q: &QAssignment) -> Result<()> {
    if assembly_det_at(a, q)?.is_zero() {
        return Err(Error::DegenerateAssignment);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub dimension: usize,
    pub min_faces: usize,
}

impl DimensionReport {
    pub fn matches(&self) -> bool {
        self.dimension == self.min_faces
    }
}

/// `#cols - rank` of the system evaluated at `q`, alongside `#min F_A`.
pub fn solution_dimension(a: &Arrangement, q: &QAssignment) -> Result<DimensionReport> {
    require_nondegenerate(a, q)?;
    let system = build_system(a)?;
    let rank = system.eval(q)?.rank();
    Ok(DimensionReport {
        dimension: system.cols().len() - rank,
        min_faces: a.min_faces()?.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmSolution {
    pub values: BTreeMap<SignVector, Rational>,
    pub base: BTreeMap<SignVector, Rational>,
}

impl AmSolution {
    pub fn get(&self, f: &SignVector) -> Option<&Rational> {
        self.values.get(f)
    }
}

/// The recursion for central arrangements, starting from `x_O = x0`.
pub fn solve_central(a: &Arrangement, q: &QAssignment, x0: Rational) -> Result<AmSolution> {
    if !a.is_central()? {
        return Err(Error::NotCentral);
    }
    check_length(a, q)?;
    let origin = SignVector::zeros(a.m());
    let mut values: BTreeMap<SignVector, Rational> = BTreeMap::new();
    values.insert(origin.clone(), x0.clone());
    for g in a.faces_by_rank() {
        if g.sign == origin {
            continue;
        }
        let g_opp = &a.opposite(&g.sign)?.sign;
        let back = distance_extended(a, g_opp, &g.sign)?.eval(q)?;
        let forth = distance_extended(a, &g.sign, g_opp)?.eval(q)?;
        let denom = Rational::one() - &forth * &back;
        if denom.is_zero() {
            return Err(Error::PoleEncountered(g.sign.to_string()));
        }
        let sign = if g.rank % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let mut sum = Rational::zero();
        for f in a.faces().iter().filter(|f| f.sign.lt(&g.sign)) {
            let f_opp = &a.opposite(&f.sign)?.sign;
            sum += &values[&f.sign] + &sign * &values[f_opp] * &back;
        }
        values.insert(g.sign.clone(), -sum / denom);
    }
    Ok(AmSolution {
        values,
        base: BTreeMap::from([(origin, x0)]),
    })
}

/// Solves the system with every minimal face pinned to its value in `base`,
/// by exact elimination.
pub fn solve_by_elimination(
    a: &Arrangement,
    q: &QAssignment,
    base: &BTreeMap<SignVector, Rational>,
) -> Result<AmSolution> {
    check_length(a, q)?;
    let system = build_system(a)?;
    let evaluated = system.eval(q)?;
    let mins = a.min_faces()?;
    let n = system.cols().len();
    let mut rows: Vec<Vec<Rational>> = (0..evaluated.rows())
        .map(|i| evaluated.row(i).to_vec())
        .collect();
    let mut rhs = vec![Rational::zero(); rows.len()];
    for m in &mins {
        let value = base
            .get(&m.sign)
            .ok_or_else(|| Error::Invalid(format!("no base value for minimal face {}", m.sign)))?;
        let col = system
            .cols()
            .iter()
            .position(|c| *c == m.sign)
            .expect("face is a column");
        let mut row = vec![Rational::zero(); n];
        row[col] = Rational::one();
        rows.push(row);
        rhs.push(value.clone());
    }
    let solution = RatMatrix::from_rows(rows)?.solve(&rhs)?;
    if !solution.null_space.is_empty() {
        return Err(Error::DegenerateAssignment);
    }
    let values = system
        .cols()
        .iter()
        .cloned()
        .zip(solution.particular)
        .collect();
    Ok(AmSolution {
        values,
        base: mins
            .iter()
            .map(|m| (m.sign.clone(), base[&m.sign].clone()))
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    /// Every equation of the system has zero residual.
    pub system: bool,
    /// Every equation `Σ_{LF=G} x_F 𝐯(F,G) = 0` with `L ⪯ G` both
    /// non-minimal has zero residual.
    pub extended: bool,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.system && self.extended
    }
}

/// Substitutes `sol` into the system and into the larger nested system.
/// A face missing from `sol` counts as a failed check.
pub fn verify_solution(a: &Arrangement, q: &QAssignment, sol: &AmSolution) -> Result<Verification> {
    a.require_full("verify_solution")?;
    check_length(a, q)?;
    if a.faces().iter().any(|f| !sol.values.contains_key(&f.sign)) {
        return Ok(Verification {
            system: false,
            extended: false,
        });
    }
    let residual = |l: &SignVector, g: &SignVector| -> Result<Rational> {
        let mut total = Rational::zero();
        for f in a.faces() {
            if l.product(&f.sign) == *g {
                total += &sol.values[&f.sign] * distance_extended(a, &f.sign, g)?.eval(q)?;
            }
        }
        Ok(total)
    };
    let non_minimal: Vec<&SignVector> = a
        .faces()
        .iter()
        .map(|f| &f.sign)
        .filter(|f| !is_minimal(a, f))
        .collect();
    let mut system = true;
    for g in &non_minimal {
        system &= residual(g, g)?.is_zero();
    }
    let mut extended = true;
    for g in &non_minimal {
        for l in non_minimal.iter().filter(|l| l.leq(g)) {
            extended &= residual(l, g)?.is_zero();
        }
    }
    Ok(Verification { system, extended })
}
