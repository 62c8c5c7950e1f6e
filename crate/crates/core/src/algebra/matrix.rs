use std::fmt;

use super::linalg::RatMatrix;
use super::poly::{Polynomial, QAssignment};
use crate::error::{Error, Result};

/// Square matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let size = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != size) {
            return Err(Error::Shape(format!(
                "row of length {} in a {size}x{size} matrix",
                bad.len()
            )));
        }
        Ok(PolyMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { size, entries }
    }

    pub fn identity(size: usize) -> Self {
        PolyMatrix::from_fn(size, |i, j| {
            if i == j {
                Polynomial::one()
            } else {
                Polynomial::zero()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Polynomial]> {
        self.entries.chunks(self.size.max(1)).take(self.size)
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.size, |i, j| self.get(j, i).clone())
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(indices.len(), |i, j| {
            self.get(indices[i], indices[j]).clone()
        })
    }

    pub fn eval(&self, q: &QAssignment) -> Result<RatMatrix> {
        let values = self
            .entries
            .iter()
            .map(|p| p.eval(q))
            .collect::<Result<Vec<_>>>()?;
        RatMatrix::new(self.size, self.size, values)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// After step `k` every entry of the trailing block equals a
    /// `(k+1)`-minor of the input, so each division by the previous pivot is
    /// exact. A zero pivot is replaced by the first nonzero entry below it in
    /// the same column; if there is none the determinant is zero.
    pub fn det_bareiss(&self) -> Polynomial {
        let n = self.size;
        if n == 0 {
            return Polynomial::one();
        }
        let mut a: Vec<Vec<Polynomial>> = self.rows().map(<[Polynomial]>::to_vec).collect();
        let mut negate = false;
        let mut prev = Polynomial::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Polynomial::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let cross = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = cross
                        .exact_div(&prev)
                        .expect("Bareiss step divides exactly by the previous pivot");
                }
                a[i][k] = Polynomial::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }
}

impl fmt::Display for PolyMatrix {
    /// Aligned grid of poly-strings, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let mut widths = vec![0; self.size];
        for (k, cell) in cells.iter().enumerate() {
            let col = k % self.size;
            widths[col] = widths[col].max(cell.len());
        }
        for i in 0..self.size {
            let line: Vec<String> = (0..self.size)
                .map(|j| format!("{:<w$}", cells[i * self.size + j], w = widths[j]))
                .collect();
            writeln!(f, "[ {} ]", line.join("  ").trim_end())?;
        }
        Ok(())
    }
}
