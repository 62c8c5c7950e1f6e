//! Test-side oracles. They work on sign strings and brute force and share
//! no code with the library beyond its polynomial and rational types.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde_json::Value;
use varchenko::algebra::parse_rational;
use varchenko::{fixtures, Arrangement, PolyMatrix, Polynomial, QAssignment, Rational, Variable};

pub const GEOMETRIC: &[&str] = &[
    "one_hyperplane",
    "two_crossing_lines",
    "three_concurrent_lines",
    "two_points_on_a_line",
    "three_generic_lines",
    "boolean3",
];

pub type Plane = (Vec<Rational>, Rational);

pub fn planes(name: &str) -> (usize, Vec<Plane>) {
    let v: Value = serde_json::from_str(fixtures::source(name).unwrap()).unwrap();
    let dim = v["dim"].as_u64().unwrap() as usize;
    let hs = v["hyperplanes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| {
            let normal = h["normal"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| parse_rational(c.as_str().unwrap()).unwrap())
                .collect();
            (
                normal,
                parse_rational(h["offset"].as_str().unwrap()).unwrap(),
            )
        })
        .collect();
    (dim, hs)
}

pub fn signs_at(hs: &[Plane], p: &[Rational]) -> String {
    hs.iter()
        .map(|(n, b)| {
            let v: Rational = n.iter().zip(p).map(|(a, x)| a * x).sum();
            if v > *b {
                '+'
            } else if v < *b {
                '-'
            } else {
                '0'
            }
        })
        .collect()
}

/// Every face of the bundled fixtures meets the quarter-integer grid in [-3, 3]^d.
pub fn grid_faces(name: &str) -> BTreeSet<String> {
    let (dim, hs) = planes(name);
    let ticks: Vec<Rational> = (-12..=12)
        .map(|k| Rational::new(k.into(), 4.into()))
        .collect();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; dim];
    loop {
        let p: Vec<Rational> = idx.iter().map(|&i| ticks[i].clone()).collect();
        out.insert(signs_at(&hs, &p));
        let mut d = 0;
        while d < dim && idx[d] + 1 == ticks.len() {
            idx[d] = 0;
            d += 1;
        }
        if d == dim {
            return out;
        }
        idx[d] += 1;
    }
}

pub fn face_strings(a: &Arrangement) -> Vec<String> {
    a.faces().iter().map(|f| f.sign.to_string()).collect()
}

pub fn q(h: usize, c: char) -> Polynomial {
    Polynomial::var(if c == '+' {
        Variable::plus(h)
    } else {
        Variable::minus(h)
    })
}

pub fn leq(f: &str, g: &str) -> bool {
    f.chars().zip(g.chars()).all(|(x, y)| x == '0' || x == y)
}

/// `𝐯(F, G)`: `q_H^{F_H}` over the coordinates where both are nonzero and differ.
/// On chambers this is `v(C, D)`.
pub fn oracle_distance(f: &str, g: &str) -> Polynomial {
    f.chars()
        .zip(g.chars())
        .enumerate()
        .filter(|(_, (x, y))| *x != '0' && *y != '0' && x != y)
        .fold(Polynomial::one(), |acc, (h, (x, _))| &acc * &q(h, x))
}

/// `∏ q_H^+ q_H^-` over the zero coordinates of `f`.
pub fn oracle_weight(f: &str) -> Polynomial {
    f.char_indices()
        .filter(|(_, c)| *c == '0')
        .fold(Polynomial::one(), |acc, (h, _)| {
            &(&acc * &q(h, '+')) * &q(h, '-')
        })
}

/// Permutation expansion.
pub fn leibniz(m: &PolyMatrix) -> Polynomial {
    fn go(
        m: &PolyMatrix,
        row: usize,
        used: &mut Vec<bool>,
        odd: bool,
        acc: Polynomial,
        out: &mut Polynomial,
    ) {
        let n = m.size();
        if row == n {
            if odd {
                *out -= &acc;
            } else {
                *out += &acc;
            }
            return;
        }
        let mut skipped = 0;
        for col in 0..n {
            if used[col] {
                continue;
            }
            let entry = m.get(row, col);
            if !entry.is_zero() {
                used[col] = true;
                go(
                    m,
                    row + 1,
                    used,
                    odd ^ (skipped % 2 == 1),
                    &acc * entry,
                    out,
                );
                used[col] = false;
            }
            skipped += 1;
        }
    }
    let mut out = Polynomial::zero();
    let mut used = vec![false; m.size()];
    go(m, 0, &mut used, false, Polynomial::one(), &mut out);
    out
}

/// Per zero coordinate `h` of `f`: chambers `C ≥ F` such that every face
/// `G ≤ C` vanishing on `h` lies below `F`.
pub fn oracle_counts(faces: &[String], f: &str) -> Vec<usize> {
    let chambers: Vec<&String> = faces.iter().filter(|s| !s.contains('0')).collect();
    f.char_indices()
        .filter(|(_, c)| *c == '0')
        .map(|(h, _)| {
            chambers
                .iter()
                .filter(|c| leq(f, c))
                .filter(|c| {
                    faces
                        .iter()
                        .filter(|g| leq(g, c) && g.as_bytes()[h] == b'0')
                        .all(|g| leq(g, f))
                })
                .count()
        })
        .collect()
}

pub fn minimal_count(faces: &[String]) -> usize {
    faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g != *f && leq(g, f)))
        .count()
}

pub fn oracle_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let k = &rows[r][c] / &rows[rank][c];
                for j in c..cols {
                    let d = &k * &rows[rank][j];
                    rows[r][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn compose(f: &str, g: &str) -> String {
    f.chars()
        .zip(g.chars())
        .map(|(x, y)| if x == '0' { y } else { x })
        .collect()
}

/// The linear system rebuilt from strings: one row per non-minimal `G`,
/// columns in `faces` order, entry `𝐯(F, G)` at `q` wherever `GF = G`.
pub fn oracle_system(faces: &[String], qa: &QAssignment) -> Vec<Vec<Rational>> {
    let val = |h: usize, c: char| {
        let (p, n) = &qa.pairs()[h];
        if c == '+' {
            p.clone()
        } else {
            n.clone()
        }
    };
    let minimal = |f: &String| !faces.iter().any(|g| g != f && leq(g, f));
    faces
        .iter()
        .filter(|g| !minimal(g))
        .map(|g| {
            faces
                .iter()
                .map(|f| {
                    if compose(g, f) != *g {
                        return Rational::zero();
                    }
                    f.chars()
                        .zip(g.chars())
                        .enumerate()
                        .filter(|(_, (x, y))| *x != '0' && *y != '0' && x != y)
                        .fold(Rational::one(), |acc, (h, (x, _))| acc * val(h, x))
                })
                .collect()
        })
        .collect()
}

/// Unknowns minus rank of [`oracle_system`].
pub fn oracle_dimension(faces: &[String], qa: &QAssignment) -> usize {
    faces.len() - oracle_rank(oracle_system(faces, qa))
}

/// Length of a longest strict chain below each face.
pub fn oracle_ranks(faces: &[String]) -> std::collections::BTreeMap<String, usize> {
    let mut by_zeros: Vec<&String> = faces.iter().collect();
    by_zeros.sort_by_key(|f| std::cmp::Reverse(f.matches('0').count()));
    let mut ranks = std::collections::BTreeMap::new();
    for f in by_zeros {
        let r = faces
            .iter()
            .filter(|g| *g != f && leq(g, f))
            .map(|g| ranks[g] + 1)
            .max()
            .unwrap_or(0);
        ranks.insert(f.clone(), r);
    }
    ranks
}
