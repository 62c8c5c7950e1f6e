//! Coefficient-level checks of the Witt-type identities. Each identity is a
//! linear relation between sums of unknowns, so it holds iff the integer
//! coefficient of every unknown agrees on both sides; those coefficients are
//! what gets compared here.

use serde::Serialize;

use crate::algebra::RatMatrix;
use crate::arrangement::{Arrangement, Face, SignVector};
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityTally {
    pub name: &'static str,
    pub tuples: usize,
    pub violations: Vec<String>,
}

impl IdentityTally {
    fn new(name: &'static str) -> Self {
        IdentityTally {
            name,
            ..IdentityTally::default()
        }
    }

    fn record(&mut self, lhs: i64, rhs: i64, tuple: impl FnOnce() -> String) {
        self.tuples += 1;
        if lhs != rhs {
            self.violations
                .push(format!("{}: lhs {lhs}, rhs {rhs}", tuple()));
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WittReport {
    pub witt: IdentityTally,
    pub eqf1: IdentityTally,
    pub eqf2: IdentityTally,
    /// `None` when the arrangement carries no geometry.
    pub bounded: Option<IdentityTally>,
}

impl WittReport {
    pub fn passed(&self) -> bool {
        self.witt.passed()
            && self.eqf1.passed()
            && self.eqf2.passed()
            && self.bounded.as_ref().is_none_or(IdentityTally::passed)
    }
}

fn parity(rank: usize) -> i64 {
    if rank.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn interval<'a>(a: &'a Arrangement, lo: &'a SignVector, hi: &'a SignVector) -> Vec<&'a Face> {
    a.faces()
        .iter()
        .filter(|f| lo.leq(&f.sign) && f.sign.leq(hi))
        .collect()
}

/// For `A ⪯ D`, `D` a chamber, and every chamber `C`:
/// `Σ_{F ∈ [A,D], FC = D} (-1)^{rk F} = (-1)^{rk D} [AC = D̃_A]`.
pub fn check_witt(a: &Arrangement) -> Result<IdentityTally> {
    a.require_full("witt")?;
    let mut tally = IdentityTally::new("witt");
    for d in a.chambers() {
        for base in a.faces().iter().filter(|f| f.sign.leq(&d.sign)) {
            let range = interval(a, &base.sign, &d.sign);
            let d_tilde = &a.tilde(&base.sign, &d.sign)?.sign;
            for c in a.chambers() {
                let lhs: i64 = range
                    .iter()
                    .filter(|f| f.sign.product(&c.sign) == d.sign)
                    .map(|f| parity(f.rank))
                    .sum();
                let hit = base.sign.product(&c.sign) == *d_tilde;
                let rhs = if hit { parity(d.rank) } else { 0 };
                tally.record(lhs, rhs, || {
                    format!("A={} D={} C={}", base.sign, d.sign, c.sign)
                });
            }
        }
    }
    Ok(tally)
}

/// The two face-level corollaries, for `A ⪯ G` and every face `L`:
/// `Σ_{F ∈ [A,G], FL ⪯ G} (-1)^{rk F} = (-1)^{rk G} [AL = G̃_A]` and
/// `Σ_{F ∈ [A,G], FL = G} (-1)^{rk F} = (-1)^{rk G} [AL ⪯ G̃_A]`.
pub fn check_face_identities(a: &Arrangement) -> Result<(IdentityTally, IdentityTally)> {
    a.require_full("witt")?;
    let mut first = IdentityTally::new("eqf1");
    let mut second = IdentityTally::new("eqf2");
    for g in a.faces() {
        for base in a.faces().iter().filter(|f| f.sign.leq(&g.sign)) {
            let range = interval(a, &base.sign, &g.sign);
            let g_tilde = &a.tilde(&base.sign, &g.sign)?.sign;
            for l in a.faces() {
                let mut below = 0;
                let mut equal = 0;
                for f in &range {
                    let fl = f.sign.product(&l.sign);
                    if fl.leq(&g.sign) {
                        below += parity(f.rank);
                    }
                    if fl == g.sign {
                        equal += parity(f.rank);
                    }
                }
                let al = base.sign.product(&l.sign);
                let tuple = || format!("A={} G={} L={}", base.sign, g.sign, l.sign);
                first.record(
                    below,
                    if al == *g_tilde { parity(g.rank) } else { 0 },
                    tuple,
                );
                second.record(
                    equal,
                    if al.leq(g_tilde) { parity(g.rank) } else { 0 },
                    tuple,
                );
            }
        }
    }
    Ok((first, second))
}

/// For every bounded chamber `D` and every chamber `C`:
/// `Σ_{F ⪯ D, FC = D} (-1)^{rk F}` is `(-1)^c` when `C = D` and 0 otherwise,
/// where `c` is the dimension of the minimal faces. `None` without geometry.
pub fn check_bounded(a: &Arrangement) -> Result<Option<(IdentityTally, Vec<SignVector>)>> {
    a.require_full("prd")?;
    let Some(geometry) = a.geometry() else {
        return Ok(None);
    };
    let normals: Vec<Vec<_>> = geometry
        .hyperplanes()
        .iter()
        .map(|h| h.normal.clone())
        .collect();
    let rank = if normals.is_empty() {
        0
    } else {
        RatMatrix::from_rows(normals)?.rank()
    };
    let min_dim = geometry.dim() - rank;
    let mut tally = IdentityTally::new("bounded");
    let bounded: Vec<&Face> = a
        .chambers()
        .filter(|d| geometry.is_bounded_chamber(&d.sign))
        .collect();
    for d in &bounded {
        let closure: Vec<&Face> = a.faces().iter().filter(|f| f.sign.leq(&d.sign)).collect();
        for c in a.chambers() {
            let lhs: i64 = closure
                .iter()
                .filter(|f| f.sign.product(&c.sign) == d.sign)
                .map(|f| parity(f.rank))
                .sum();
            let rhs = if c.sign == d.sign { parity(min_dim) } else { 0 };
            tally.record(lhs, rhs, || format!("D={} C={}", d.sign, c.sign));
        }
    }
    Ok(Some((
        tally,
        bounded.into_iter().map(|d| d.sign.clone()).collect(),
    )))
}

pub fn witt_check(a: &Arrangement) -> Result<WittReport> {
    let witt = check_witt(a)?;
    let (eqf1, eqf2) = check_face_identities(a)?;
    let bounded = check_bounded(a)?.map(|(t, _)| t);
    Ok(WittReport {
        witt,
        eqf1,
        eqf2,
        bounded,
    })
}
