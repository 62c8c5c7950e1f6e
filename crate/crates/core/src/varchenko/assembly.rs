use std::fmt;
use std::ops::Range;

use super::{conflict_monomial, varchenko_matrix_restriction};
use crate::algebra::{PolyMatrix, Polynomial};
use crate::arrangement::{Arrangement, Flat, SignVector};
use crate::error::{Error, Result};

/// Largest face count for which [`assembly_det`] also runs Bareiss on the
/// whole matrix.
pub const ASSEMBLY_CROSS_CHECK_CAP: usize = 12;

/// `S_A`, with faces grouped by support so the flat blocks are contiguous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyMatrix {
    faces: Vec<SignVector>,
    blocks: Vec<(Flat, Range<usize>)>,
    entries: PolyMatrix,
}

impl AssemblyMatrix {
    /// Faces ordered by (support size, support, sign string).
    pub fn face_order(&self) -> &[SignVector] {
        &self.faces
    }

    /// One index range per flat, in face order.
    pub fn blocks(&self) -> &[(Flat, Range<usize>)] {
        &self.blocks
    }

    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    /// The block on rows and columns of `range`.
    pub fn diagonal_block(&self, range: &Range<usize>) -> PolyMatrix {
        self.entries.submatrix(&range.clone().collect::<Vec<_>>())
    }

    /// True when every entry above the diagonal blocks is zero.
    pub fn is_block_lower_triangular(&self) -> bool {
        self.blocks.iter().all(|(_, rows)| {
            rows.clone()
                .all(|i| (rows.end..self.faces.len()).all(|j| self.entries.get(i, j).is_zero()))
        })
    }
}

impl fmt::Display for AssemblyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<String> = self.faces.iter().map(ToString::to_string).collect();
        writeln!(f, "faces: {}", order.join(" "))?;
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|(x, r)| format!("{x}:{}..{}", r.start, r.end))
            .collect();
        writeln!(f, "blocks: {}", blocks.join(" "))?;
        write!(f, "{}", self.entries)
    }
}

/// Entry `(F, G)` is `𝐯(F, G)` when `GF = G`, else 0.
pub fn assembly(a: &Arrangement) -> Result<AssemblyMatrix> {
    a.require_full("assembly")?;
    let mut faces: Vec<SignVector> = a.faces().iter().map(|f| f.sign.clone()).collect();
    faces.sort_by(|f, g| {
        Flat::of_face(f)
            .cmp(&Flat::of_face(g))
            .then_with(|| f.cmp(g))
    });
    let mut blocks: Vec<(Flat, Range<usize>)> = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        let x = Flat::of_face(f);
        match blocks.last_mut() {
            Some((y, range)) if *y == x => range.end = i + 1,
            _ => blocks.push((x, i..i + 1)),
        }
    }
    let entries = PolyMatrix::from_fn(faces.len(), |i, j| {
        let (f, g) = (&faces[i], &faces[j]);
        if g.product(f) == *g {
            conflict_monomial(f, g, 0..a.m()).into()
        } else {
            Polynomial::zero()
        }
    });
    Ok(AssemblyMatrix {
        faces,
        blocks,
        entries,
    })
}

/// `∏_X det V_{A^X}`, computed blockwise. When the arrangement has at most
/// [`ASSEMBLY_CROSS_CHECK_CAP`] faces the product is compared against Bareiss
/// on the full matrix.
pub fn assembly_det(a: &Arrangement) -> Result<Polynomial> {
    let mut det = Polynomial::one();
    for x in a.flats()? {
        det = &det * &varchenko_matrix_restriction(a, &x)?.det_bareiss();
    }
    if a.faces().len() <= ASSEMBLY_CROSS_CHECK_CAP {
        let full = assembly(a)?.entries().det_bareiss();
        if full != det {
            return Err(Error::Invalid(format!(
                "assembly determinant {full} differs from the blockwise product {det}"
            )));
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Mode;
    use crate::fixtures;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn one_hyperplane_assembly() {
        let a = fixtures::one_hyperplane();
        let s = assembly(&a).unwrap();
        let order: Vec<String> = s.face_order().iter().map(ToString::to_string).collect();
        assert_eq!(order, ["+", "-", "0"]);
        assert!(s.is_block_lower_triangular());
        assert!(s.entries().get(2, 0).is_one());
        assert!(s.entries().get(0, 2).is_zero());
        assert_eq!(assembly_det(&a).unwrap(), p("1 - q1+*q1-"));
    }

    #[test]
    fn two_crossing_lines_blocks() {
        let a = fixtures::two_crossing_lines();
        let s = assembly(&a).unwrap();
        let flats: Vec<String> = s.blocks().iter().map(|(x, _)| x.to_string()).collect();
        assert_eq!(flats, ["{}", "{1}", "{2}", "{1,2}"]);
        assert!(s.is_block_lower_triangular());
        let e1 = p("1 - q1+*q1-");
        let e2 = p("1 - q2+*q2-");
        let expected = &(&e1.pow(2) * &e2.pow(2)) * &(&e2 * &e1);
        assert_eq!(assembly_det(&a).unwrap(), expected);
    }

    #[test]
    fn empty_arrangement_assembly() {
        let a = Arrangement::from_covectors(0, Mode::Full, vec![SignVector::default()]).unwrap();
        let s = assembly(&a).unwrap();
        assert_eq!(s.entries().size(), 1);
        assert!(assembly_det(&a).unwrap().is_one());
    }
}
