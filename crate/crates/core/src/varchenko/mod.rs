//! Distances between faces, Varchenko matrices, face weights and
//! multiplicities, and the closed-form determinant products.

pub mod assembly;

use std::fmt;

use crate::algebra::{Monomial, PolyMatrix, Polynomial, Variable};
use crate::arrangement::{Apartment, Arrangement, Face, Flat, Sign, SignVector};
use crate::error::{Error, Result};

pub use assembly::{assembly, assembly_det, AssemblyMatrix};

fn q(h: usize, sign: Sign) -> Variable {
    Variable::new(h, sign.side().expect("nonzero sign"))
}

/// `∏ q_H^{f_H}` over `H` in `hyperplanes` with `f_H = -g_H ≠ 0`.
fn conflict_monomial(
    f: &SignVector,
    g: &SignVector,
    hyperplanes: impl IntoIterator<Item = usize>,
) -> Monomial {
    Monomial::from_factors(hyperplanes.into_iter().filter_map(|h| {
        let s = f.get(h);
        (!s.is_zero() && s == g.get(h).neg()).then(|| (q(h, s), 1))
    }))
}

/// `∏ q_H^+ q_H^-` over the given hyperplanes.
fn pair_monomial(hyperplanes: impl IntoIterator<Item = usize>) -> Monomial {
    Monomial::from_factors(
        hyperplanes
            .into_iter()
            .flat_map(|h| [(Variable::plus(h), 1), (Variable::minus(h), 1)]),
    )
}

fn chamber<'a>(a: &'a Arrangement, c: &SignVector) -> Result<&'a Face> {
    let face = a.lookup(c)?;
    if !face.is_chamber {
        return Err(Error::NotChamber(c.to_string()));
    }
    Ok(face)
}

/// `v(C, D)` for chambers `C`, `D`.
pub fn distance(a: &Arrangement, c: &SignVector, d: &SignVector) -> Result<Polynomial> {
    chamber(a, c)?;
    chamber(a, d)?;
    Ok(conflict_monomial(c, d, 0..a.m()).into())
}

/// `𝐯(F, G)` in reduced form: the conflict coordinates of `F` and `G`.
pub fn distance_extended(a: &Arrangement, f: &SignVector, g: &SignVector) -> Result<Polynomial> {
    a.require_full("distance_extended")?;
    a.lookup(f)?;
    a.lookup(g)?;
    Ok(conflict_monomial(f, g, 0..a.m()).into())
}

/// `𝐯(F, G) = v^{s(FG)}(FG, GF)`, computed literally through the restriction
/// to `s(FG)` and its separating hyperplanes.
pub fn distance_extended_literal(
    a: &Arrangement,
    f: &SignVector,
    g: &SignVector,
) -> Result<Polynomial> {
    a.require_full("distance_extended_literal")?;
    a.lookup(f)?;
    a.lookup(g)?;
    let fg = f.compose(g)?;
    let gf = g.compose(f)?;
    let x = Flat::of_face(&fg);
    let separators = a.restriction_separators(&x)?;
    Ok(conflict_monomial(&fg, &gf, separators).into())
}

/// A chamber-indexed distance matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarchenkoMatrix {
    chambers: Vec<SignVector>,
    entries: PolyMatrix,
}

impl VarchenkoMatrix {
    pub fn chamber_order(&self) -> &[SignVector] {
        &self.chambers
    }

    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.chambers.len()
    }

    pub fn det_bareiss(&self) -> Polynomial {
        self.entries.det_bareiss()
    }
}

impl fmt::Display for VarchenkoMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<String> = self.chambers.iter().map(ToString::to_string).collect();
        writeln!(f, "chambers: {}", order.join(" "))?;
        write!(f, "{}", self.entries)
    }
}

/// `V_A^K`; the whole-space apartment gives `V_A`.
pub fn varchenko_matrix(a: &Arrangement, k: &Apartment) -> Result<VarchenkoMatrix> {
    let chambers: Vec<SignVector> = a
        .apartment_chambers(k)?
        .into_iter()
        .map(|c| c.sign.clone())
        .collect();
    let entries = PolyMatrix::from_fn(chambers.len(), |i, j| {
        conflict_monomial(&chambers[i], &chambers[j], 0..a.m()).into()
    });
    Ok(VarchenkoMatrix { chambers, entries })
}

/// `V_{A^X}` over the faces with support exactly `X`.
pub fn varchenko_matrix_restriction(a: &Arrangement, x: &Flat) -> Result<VarchenkoMatrix> {
    let chambers: Vec<SignVector> = a
        .restriction_chambers(x)?
        .into_iter()
        .map(|c| c.sign.clone())
        .collect();
    let separators = a.restriction_separators(x)?;
    let entries = PolyMatrix::from_fn(chambers.len(), |i, j| {
        conflict_monomial(&chambers[i], &chambers[j], separators.iter().copied()).into()
    });
    Ok(VarchenkoMatrix { chambers, entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedFace {
    pub face: Face,
    pub weight: Polynomial,
    pub multiplicity: usize,
}

impl WeightedFace {
    /// `(1 - b_F)^{β_F}`.
    pub fn factor(&self) -> Polynomial {
        (&Polynomial::one() - &self.weight).pow(self.multiplicity as u32)
    }
}

fn non_chamber<'a>(a: &'a Arrangement, f: &SignVector) -> Result<&'a Face> {
    let face = a.lookup(f)?;
    if face.is_chamber {
        return Err(Error::ChamberHasNoWeight(f.to_string()));
    }
    Ok(face)
}

/// `b_F = ∏_{H ∈ s(F)} q_H^+ q_H^-`.
pub fn weight(a: &Arrangement, f: &SignVector) -> Result<Polynomial> {
    a.require_full("weight")?;
    non_chamber(a, f)?;
    Ok(pair_monomial(f.support()).into())
}

/// Chambers `C` over `F` whose closure meets `H` exactly in the closure of
/// `F`: every face of `C` on `H` lies below `F`.
fn meeting_count<'a>(
    a: &Arrangement,
    f: &SignVector,
    h: usize,
    chambers: impl Iterator<Item = &'a Face>,
) -> usize {
    chambers
        .filter(|c| f.leq(&c.sign))
        .filter(|c| {
            a.faces()
                .iter()
                .filter(|g| g.sign.get(h).is_zero() && g.sign.leq(&c.sign))
                .all(|g| g.sign.leq(f))
        })
        .count()
}

fn halve_counts(f: &SignVector, counts: Vec<usize>) -> Result<usize> {
    let first = counts[0];
    if !first.is_multiple_of(2) || counts.iter().any(|&c| c != first) {
        return Err(Error::MultiplicityInconsistent {
            face: f.to_string(),
            counts,
        });
    }
    Ok(first / 2)
}

/// Per-hyperplane chamber counts behind `β_F`, one per `H ∈ s(F)`.
pub fn multiplicity_counts(a: &Arrangement, f: &SignVector) -> Result<Vec<usize>> {
    a.require_full("multiplicity")?;
    non_chamber(a, f)?;
    Ok(f.support()
        .into_iter()
        .map(|h| meeting_count(a, f, h, a.chambers()))
        .collect())
}

/// `β_F`: half the common per-hyperplane count.
pub fn multiplicity(a: &Arrangement, f: &SignVector) -> Result<usize> {
    let counts = multiplicity_counts(a, f)?;
    halve_counts(f, counts)
}

/// All non-chamber faces in the apartment with global weight and multiplicity.
pub fn weights(a: &Arrangement, k: &Apartment) -> Result<Vec<WeightedFace>> {
    let (faces, _) = a.apartment_faces(k)?;
    faces
        .into_iter()
        .filter(|f| !f.is_chamber)
        .map(|f| {
            Ok(WeightedFace {
                face: f.clone(),
                weight: weight(a, &f.sign)?,
                multiplicity: multiplicity(a, &f.sign)?,
            })
        })
        .collect()
}

fn product(factors: &[WeightedFace]) -> Polynomial {
    factors
        .iter()
        .fold(Polynomial::one(), |acc, w| &acc * &w.factor())
}

/// `∏_{F ∈ F_A^K ∖ C_A^K} (1 - b_F)^{β_F}`.
pub fn closed_form_det(a: &Arrangement, k: &Apartment) -> Result<Polynomial> {
    Ok(product(&weights(a, k)?))
}

/// `b_F^X = ∏_{H ∈ s(F) ∖ X} q_H^+ q_H^-` for a face `F` inside `X`.
pub fn weight_in_flat(a: &Arrangement, f: &SignVector, x: &Flat) -> Result<Polynomial> {
    let face = restricted_non_chamber(a, f, x)?;
    Ok(pair_monomial(face.sign.support().into_iter().filter(|&h| !x.contains(h))).into())
}

/// `β_F^X`, counted over the chambers of `A^X` and hyperplanes `P ∈ s(F) ∖ X`.
pub fn multiplicity_in_flat(a: &Arrangement, f: &SignVector, x: &Flat) -> Result<usize> {
    let face = restricted_non_chamber(a, f, x)?;
    let chambers = a.restriction_chambers(x)?;
    let counts = face
        .sign
        .support()
        .into_iter()
        .filter(|&h| !x.contains(h))
        .map(|h| meeting_count(a, f, h, chambers.iter().copied()))
        .collect();
    halve_counts(f, counts)
}

fn restricted_non_chamber<'a>(a: &'a Arrangement, f: &SignVector, x: &Flat) -> Result<&'a Face> {
    a.require_full("weight_in_flat")?;
    let face = a.lookup(f)?;
    let inside = a.restriction_faces(x)?;
    if !inside.iter().any(|g| g.sign == *f) {
        return Err(Error::Invalid(format!("face {f} does not lie in flat {x}")));
    }
    if Flat::of_face(f) == *x {
        return Err(Error::ChamberHasNoWeight(f.to_string()));
    }
    Ok(face)
}

/// Faces of `A^X` that are not its chambers, with restricted weights.
pub fn weights_in_flat(a: &Arrangement, x: &Flat) -> Result<Vec<WeightedFace>> {
    a.restriction_faces(x)?
        .into_iter()
        .filter(|f| Flat::of_face(&f.sign) != *x)
        .map(|f| {
            Ok(WeightedFace {
                face: f.clone(),
                weight: weight_in_flat(a, &f.sign, x)?,
                multiplicity: multiplicity_in_flat(a, &f.sign, x)?,
            })
        })
        .collect()
}

/// `∏_{F ∈ F_{A^X} ∖ C_{A^X}} (1 - b_F^X)^{β_F^X}`.
pub fn closed_form_det_restriction(a: &Arrangement, x: &Flat) -> Result<Polynomial> {
    Ok(product(&weights_in_flat(a, x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Sign;
    use crate::fixtures;
    use std::collections::BTreeMap;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn grid(m: &VarchenkoMatrix) -> Vec<Vec<String>> {
        m.entries()
            .rows()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    #[test]
    fn distance_examples() {
        let a = fixtures::a_ex();
        assert_eq!(
            distance(&a, &sv("+---"), &sv("-+--")).unwrap(),
            p("q1+*q2-")
        );
        assert_eq!(distance(&a, &sv("+---"), &sv("----")).unwrap(), p("q1+"));
        assert!(distance(&a, &sv("+---"), &sv("+---")).unwrap().is_one());
        let b = fixtures::two_crossing_lines();
        assert_eq!(
            distance(&b, &sv("0+"), &sv("++")),
            Err(Error::NotChamber("0+".into()))
        );
    }

    #[test]
    fn extended_distance_examples() {
        let a = fixtures::two_crossing_lines();
        assert_eq!(
            distance_extended(&a, &sv("0+"), &sv("0-")).unwrap(),
            p("q2+")
        );
        assert!(distance_extended(&a, &sv("0+"), &sv("0+"))
            .unwrap()
            .is_one());
        assert_eq!(
            distance_extended(&a, &sv("+-"), &sv("-+")).unwrap(),
            distance(&a, &sv("+-"), &sv("-+")).unwrap()
        );
        assert_eq!(
            distance_extended(&fixtures::a_ex(), &sv("+---"), &sv("----")),
            Err(Error::ModeError("distance_extended"))
        );
    }

    #[test]
    fn one_hyperplane_matrix() {
        let a = fixtures::one_hyperplane();
        let v = varchenko_matrix(&a, &Apartment::whole_space()).unwrap();
        assert_eq!(grid(&v), [["1", "q1+"], ["q1-", "1"]]);
    }

    #[test]
    fn apartment_matrix() {
        let a = fixtures::two_crossing_lines();
        let k = Apartment::new(BTreeMap::from([(0, Sign::Plus)])).unwrap();
        let v = varchenko_matrix(&a, &k).unwrap();
        let order: Vec<String> = v.chamber_order().iter().map(ToString::to_string).collect();
        assert_eq!(order, ["++", "+-"]);
        assert_eq!(grid(&v), [["1", "q2+"], ["q2-", "1"]]);
        assert_eq!(closed_form_det(&a, &k).unwrap(), p("1 - q2+*q2-"));
        assert_eq!(v.det_bareiss(), p("1 - q2+*q2-"));
    }

    #[test]
    fn restriction_matrices() {
        let a = fixtures::two_crossing_lines();
        let v = varchenko_matrix_restriction(&a, &Flat::new(vec![0])).unwrap();
        assert_eq!(grid(&v), [["1", "q2+"], ["q2-", "1"]]);
        let point = varchenko_matrix_restriction(&a, &Flat::new(vec![0, 1])).unwrap();
        assert_eq!(grid(&point), [["1"]]);
        let whole = varchenko_matrix_restriction(&a, &Flat::ambient()).unwrap();
        assert_eq!(
            whole,
            varchenko_matrix(&a, &Apartment::whole_space()).unwrap()
        );
    }

    #[test]
    fn weights_and_multiplicities() {
        let a = fixtures::two_crossing_lines();
        assert_eq!(weight(&a, &sv("0+")).unwrap(), p("q1+*q1-"));
        assert_eq!(multiplicity(&a, &sv("0+")).unwrap(), 1);
        assert_eq!(weight(&a, &sv("00")).unwrap(), p("q1+*q1-*q2+*q2-"));
        assert_eq!(multiplicity(&a, &sv("00")).unwrap(), 0);
        assert_eq!(
            weight(&a, &sv("++")),
            Err(Error::ChamberHasNoWeight("++".into()))
        );
        let c = fixtures::three_concurrent_lines();
        assert_eq!(multiplicity(&c, &sv("000")).unwrap(), 1);
    }

    #[test]
    fn inconsistent_multiplicity_detected() {
        // Two crossing lines with the edge -0 removed: the counts on H1 and H2 differ.
        let faces = ["00", "0+", "0-", "+0", "++", "+-", "-+", "--"];
        let a = crate::arrangement::Arrangement::from_covectors(
            2,
            crate::arrangement::Mode::Full,
            faces.iter().map(|s| sv(s)).collect(),
        )
        .unwrap();
        assert!(matches!(
            multiplicity(&a, &sv("00")),
            Err(Error::MultiplicityInconsistent { .. })
        ));
    }

    #[test]
    fn closed_forms_on_small_fixtures() {
        let a = fixtures::two_crossing_lines();
        let whole = Apartment::whole_space();
        assert_eq!(
            closed_form_det(&a, &whole).unwrap(),
            &p("1 - q1+*q1-").pow(2) * &p("1 - q2+*q2-").pow(2)
        );
        let c = fixtures::three_concurrent_lines();
        let expected = &(&p("1 - q1+*q1-").pow(2) * &p("1 - q2+*q2-").pow(2))
            * &(&p("1 - q3+*q3-").pow(2) * &p("1 - q1+*q1-*q2+*q2-*q3+*q3-"));
        assert_eq!(closed_form_det(&c, &whole).unwrap(), expected);
    }

    #[test]
    fn restricted_weights() {
        let a = fixtures::two_crossing_lines();
        let x = Flat::new(vec![0]);
        assert_eq!(weight_in_flat(&a, &sv("00"), &x).unwrap(), p("q2+*q2-"));
        assert_eq!(multiplicity_in_flat(&a, &sv("00"), &x).unwrap(), 1);
        assert_eq!(
            closed_form_det_restriction(&a, &x).unwrap(),
            p("1 - q2+*q2-")
        );
        assert!(matches!(
            weight_in_flat(&a, &sv("0+"), &x),
            Err(Error::ChamberHasNoWeight(_))
        ));
        assert!(matches!(
            weight_in_flat(&a, &sv("+0"), &x),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn literal_and_reduced_distances_agree() {
        for (name, a) in fixtures::full_mode() {
            for f in a.faces() {
                for g in a.faces() {
                    assert_eq!(
                        distance_extended(&a, &f.sign, &g.sign).unwrap(),
                        distance_extended_literal(&a, &f.sign, &g.sign).unwrap(),
                        "{name}: {} {}",
                        f.sign,
                        g.sign
                    );
                }
            }
        }
    }
}
