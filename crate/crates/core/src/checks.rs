//! Named property checks over one arrangement, as run by `check`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::rational::int;
use crate::algebra::{Monomial, Polynomial, QAssignment, Rational, Variable};
use crate::amsystem::{
    self, solution_dimension, solve_by_elimination, solve_central, verify_solution, witt,
};
use crate::arrangement::{Apartment, Arrangement, Mode, Sign, SignVector};
use crate::error::Result;
use crate::random::{q_sequence, random_q, rng};
use crate::varchenko::{
    assembly, closed_form_det, closed_form_det_restriction, distance, distance_extended,
    distance_extended_literal, multiplicity_counts, varchenko_matrix, varchenko_matrix_restriction,
};

/// Above this many chambers (or faces, for the assembly) determinants are
/// compared at random points instead of symbolically.
pub const SYMBOLIC_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Auto,
    Bareiss,
    Eval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Witt,
    Distance,
    Prd,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub trials: usize,
    pub points: usize,
    pub method: Method,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            trials: 5,
            points: 20,
            method: Method::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub name: &'static str,
    pub status: Status,
    /// Number of instances examined.
    pub cases: usize,
    /// Failing instances, or the reason for a skip.
    pub details: Vec<String>,
}

impl Outcome {
    fn from_cases(name: &'static str, cases: usize, failures: Vec<String>) -> Self {
        Outcome {
            name,
            status: if failures.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            cases,
            details: failures,
        }
    }

    fn skipped(name: &'static str, reason: &str) -> Self {
        Outcome {
            name,
            status: Status::Skipped,
            cases: 0,
            details: vec![reason.to_string()],
        }
    }

    fn errored(name: &'static str, error: crate::error::Error) -> Self {
        Outcome {
            name,
            status: Status::Fail,
            cases: 0,
            details: vec![error.to_string()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Outcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }
}

/// Tally of failures while looping over cases.
struct Cases {
    count: usize,
    failures: Vec<String>,
}

impl Cases {
    fn new() -> Self {
        Cases {
            count: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn finish(self, name: &'static str) -> Outcome {
        Outcome::from_cases(name, self.count, self.failures)
    }
}

fn run(name: &'static str, body: impl FnOnce() -> Result<Outcome>) -> Outcome {
    body().unwrap_or_else(|e| Outcome::errored(name, e))
}

fn full_only(
    a: &Arrangement,
    name: &'static str,
    body: impl FnOnce() -> Result<Outcome>,
) -> Outcome {
    if a.mode() != Mode::Full {
        return Outcome::skipped(name, "skipped: chambers-only input");
    }
    run(name, body)
}

fn central_only(
    a: &Arrangement,
    name: &'static str,
    body: impl FnOnce() -> Result<Outcome>,
) -> Outcome {
    full_only(a, name, || {
        if !a.is_central()? {
            return Ok(Outcome::skipped(
                name,
                "skipped: arrangement is not central",
            ));
        }
        body()
    })
}

pub fn run_group(a: &Arrangement, group: Group, opts: &Options) -> Report {
    let mut outcomes = Vec::new();
    if matches!(group, Group::All) {
        outcomes.push(run("validation", || validation(a)));
        outcomes.push(full_only(a, "semigroup", || semigroup(a)));
        outcomes.push(full_only(a, "multiplicity", || multiplicity(a)));
        outcomes.push(run("closed_form_det", || closed_form(a, opts)));
        outcomes.push(full_only(a, "restriction_det", || restriction_det(a, opts)));
        outcomes.push(full_only(a, "assembly_det", || assembly_check(a, opts)));
    }
    if matches!(group, Group::Distance | Group::All) {
        outcomes.push(run("reciprocity", || reciprocity(a)));
        outcomes.push(full_only(a, "chamber_factorization", || {
            chamber_factorization(a)
        }));
        outcomes.push(full_only(a, "extended_literal", || extended_literal(a)));
        outcomes.push(full_only(a, "absorb_product", || absorb_product(a)));
        outcomes.push(full_only(a, "split_through_product", || {
            split_through_product(a)
        }));
    }
    if matches!(group, Group::Witt | Group::All) {
        if a.mode() == Mode::Full {
            outcomes.push(run("witt", || Ok(tally(witt::check_witt(a)?))));
            match witt::check_face_identities(a) {
                Ok((first, second)) => outcomes.extend([tally(first), tally(second)]),
                Err(e) => outcomes.extend([
                    Outcome::errored("eqf1", e.clone()),
                    Outcome::errored("eqf2", e),
                ]),
            }
        } else {
            for name in ["witt", "eqf1", "eqf2"] {
                outcomes.push(Outcome::skipped(name, "skipped: chambers-only input"));
            }
        }
    }
    if matches!(group, Group::Prd | Group::All) {
        outcomes.push(full_only(a, "bounded", || {
            Ok(match witt::check_bounded(a)? {
                Some((t, _)) => tally(t),
                None => Outcome::skipped("bounded", "skipped: no geometry"),
            })
        }));
    }
    if matches!(group, Group::All) {
        outcomes.push(full_only(a, "am_dimension", || am_dimension(a, opts)));
        outcomes.push(central_only(a, "central_recursion", || {
            central_recursion(a, opts)
        }));
        outcomes.push(central_only(a, "opposite_symmetry", || {
            opposite_symmetry(a, opts)
        }));
        outcomes.push(central_only(a, "linearity", || linearity(a, opts)));
    }
    Report { outcomes }
}

fn tally(t: amsystem::IdentityTally) -> Outcome {
    Outcome::from_cases(t.name, t.tuples, t.violations)
}

fn validation(a: &Arrangement) -> Result<Outcome> {
    let report = a.validate();
    Ok(Outcome::from_cases(
        "validation",
        1,
        report
            .failures
            .iter()
            .map(|f| format!("{}: {}", f.check, f.witness))
            .collect(),
    ))
}

fn semigroup(a: &Arrangement) -> Result<Outcome> {
    let mut cases = Cases::new();
    for f in a.faces() {
        let (f, ff) = (&f.sign, f.sign.product(&f.sign));
        cases.check(ff == *f, || format!("FF != F for F={f}"));
        for g in a.faces() {
            let g = &g.sign;
            let fg = f.product(g);
            cases.check(fg.product(f) == fg, || format!("FGF != FG for F={f} G={g}"));
            for h in a.faces() {
                let h = &h.sign;
                cases.check(fg.product(h) == f.product(&g.product(h)), || {
                    format!("(FG)H != F(GH) for F={f} G={g} H={h}")
                });
            }
        }
    }
    Ok(cases.finish("semigroup"))
}

fn multiplicity(a: &Arrangement) -> Result<Outcome> {
    let mut cases = Cases::new();
    for f in a.faces().iter().filter(|f| !f.is_chamber) {
        let counts = multiplicity_counts(a, &f.sign)?;
        let consistent = counts.iter().all(|&c| c == counts[0] && c % 2 == 0);
        cases.check(consistent, || format!("F={} counts {counts:?}", f.sign));
    }
    Ok(cases.finish("multiplicity"))
}

/// Every apartment with at least one constraint and one chamber.
pub fn proper_apartments(a: &Arrangement) -> Vec<Apartment> {
    let m = a.m();
    let mut out = Vec::new();
    let total = 3usize.pow(m as u32);
    for code in 1..total {
        let mut rest = code;
        let mut constraints = BTreeMap::new();
        for h in 0..m {
            match rest % 3 {
                1 => {
                    constraints.insert(h, Sign::Plus);
                }
                2 => {
                    constraints.insert(h, Sign::Minus);
                }
                _ => {}
            }
            rest /= 3;
        }
        let k = Apartment::new(constraints).expect("signs are nonzero");
        if a.apartment_chambers(&k).is_ok() {
            out.push(k);
        }
    }
    out
}

fn use_symbolic(method: Method, size: usize) -> bool {
    match method {
        Method::Bareiss => true,
        Method::Eval => false,
        Method::Auto => size <= SYMBOLIC_CAP,
    }
}

/// Compares two determinants, either as polynomials or at `points` seeded
/// random points. `matrix_det_at` evaluates the matrix first and takes the
/// rational determinant, so the evaluated route never expands a polynomial
/// determinant.
fn compare_dets(
    symbolic: bool,
    points: usize,
    seed: u64,
    m: usize,
    lhs_symbolic: impl FnOnce() -> Polynomial,
    matrix_det_at: impl Fn(&QAssignment) -> Result<Rational>,
    rhs: &Polynomial,
) -> Result<Option<String>> {
    if symbolic {
        let lhs = lhs_symbolic();
        return Ok((lhs != *rhs).then(|| format!("det {lhs} != closed form {rhs}")));
    }
    for (i, q) in q_sequence(m, seed, points).iter().enumerate() {
        let (l, r) = (matrix_det_at(q)?, rhs.eval(q)?);
        if l != r {
            return Ok(Some(format!("point {i}: det {l} != closed form {r}")));
        }
    }
    Ok(None)
}

/// Determinant of `V_A^K` against the closed-form product, for `K` the whole
/// space and every proper apartment.
pub fn verify_closed_form(
    a: &Arrangement,
    k: &Apartment,
    method: Method,
    points: usize,
    seed: u64,
) -> Result<Option<String>> {
    let v = varchenko_matrix(a, k)?;
    let rhs = closed_form_det(a, k)?;
    compare_dets(
        use_symbolic(method, v.size()),
        points,
        seed,
        a.m(),
        || v.det_bareiss(),
        |q| v.entries().eval(q)?.det(),
        &rhs,
    )
}

fn closed_form(a: &Arrangement, opts: &Options) -> Result<Outcome> {
    if a.mode() != Mode::Full {
        return Ok(Outcome::skipped(
            "closed_form_det",
            "skipped: chambers-only input has no lower-dimensional faces",
        ));
    }
    let mut cases = Cases::new();
    let mut apartments = vec![Apartment::whole_space()];
    apartments.extend(proper_apartments(a));
    for k in &apartments {
        let mismatch = verify_closed_form(a, k, opts.method, opts.points, opts.seed)?;
        cases.check(mismatch.is_none(), || {
            format!("K={k}: {}", mismatch.unwrap_or_default())
        });
    }
    Ok(cases.finish("closed_form_det"))
}

fn restriction_det(a: &Arrangement, opts: &Options) -> Result<Outcome> {
    let mut cases = Cases::new();
    for x in a.flats()? {
        let v = varchenko_matrix_restriction(a, &x)?;
        let rhs = closed_form_det_restriction(a, &x)?;
        let mismatch = compare_dets(
            use_symbolic(opts.method, v.size()),
            opts.points,
            opts.seed,
            a.m(),
            || v.det_bareiss(),
            |q| v.entries().eval(q)?.det(),
            &rhs,
        )?;
        cases.check(mismatch.is_none(), || {
            format!("X={x}: {}", mismatch.unwrap_or_default())
        });
    }
    Ok(cases.finish("restriction_det"))
}

fn assembly_check(a: &Arrangement, opts: &Options) -> Result<Outcome> {
    let s = assembly(a)?;
    let mut cases = Cases::new();
    cases.check(s.is_block_lower_triangular(), || {
        "nonzero entry above the flat blocks".to_string()
    });
    let mut blocks = Vec::new();
    for (x, range) in s.blocks() {
        let v = varchenko_matrix_restriction(a, x)?;
        cases.check(s.diagonal_block(range) == *v.entries(), || {
            format!("diagonal block {x} differs from its restriction matrix")
        });
        blocks.push(v);
    }
    let symbolic = use_symbolic(opts.method, s.face_order().len());
    if symbolic {
        let product = blocks
            .iter()
            .fold(Polynomial::one(), |acc, v| &acc * &v.det_bareiss());
        let full = s.entries().det_bareiss();
        cases.check(full == product, || format!("det S_A {full} != {product}"));
    } else {
        for (i, q) in q_sequence(a.m(), opts.seed, opts.points).iter().enumerate() {
            let full = s.entries().eval(q)?.det()?;
            let mut product = int(1);
            for v in &blocks {
                product *= v.entries().eval(q)?.det()?;
            }
            cases.check(full == product, || {
                format!("point {i}: {full} != {product}")
            });
        }
    }
    Ok(cases.finish("assembly_det"))
}

fn separator_pairs(c: &SignVector, d: &SignVector) -> Polynomial {
    Monomial::from_factors(
        (0..c.len())
            .filter(|&h| c.get(h) != d.get(h))
            .flat_map(|h| [(Variable::plus(h), 1), (Variable::minus(h), 1)]),
    )
    .into()
}

fn reciprocity(a: &Arrangement) -> Result<Outcome> {
    let mut cases = Cases::new();
    for c in a.chambers() {
        for d in a.chambers() {
            let lhs = &distance(a, &c.sign, &d.sign)? * &distance(a, &d.sign, &c.sign)?;
            let rhs = separator_pairs(&c.sign, &d.sign);
            cases.check(lhs == rhs, || {
                format!("C={} D={}: {lhs} != {rhs}", c.sign, d.sign)
            });
        }
    }
    Ok(cases.finish("reciprocity"))
}

/// `v(C,D) = v(C,FD)·v(FD,D)` for chambers `C`, `D` and faces `F ⪯ C`.
fn chamber_factorization(a: &Arrangement) -> Result<Outcome> {
    let mut cases = Cases::new();
    for c in a.chambers() {
        for d in a.chambers() {
            for f in a.faces().iter().filter(|f| f.sign.leq(&c.sign)) {
                let fd = f.sign.product(&d.sign);
                let lhs = distance(a, &c.sign, &d.sign)?;
                let rhs = &distance(a, &c.sign, &fd)? * &distance(a, &fd, &d.sign)?;
                cases.check(lhs == rhs, || {
                    format!("C={} D={} F={}", c.sign, d.sign, f.sign)
                });
            }
        }
    }
    Ok(cases.finish("chamber_factorization"))
}

fn extended_literal(a: &Arrangement) -> Result<Outcome> {
    let mut cases = Cases::new();
    for f in a.faces() {
        for g in a.faces() {
            let reduced = distance_extended(a, &f.sign, &g.sign)?;
            let literal = distance_extended_literal(a, &f.sign, &g.sign)?;
            cases.check(reduced == literal, || format!("F={} G={}", f.sign, g.sign));
        }
    }
    Ok(cases.finish("extended_literal"))
}

/// `FG ⪯ L ⇒ 𝐯(F,G) = 𝐯(L,G)` and `𝐯(G,F) = 𝐯(G,L)`.
fn absorb_product(a: &Arrangement) -> Result<Outcome> {
    let mut cases = Cases::new();
    let v = |x: &SignVector, y: &SignVector| distance_extended(a, x, y);
    for f in a.faces() {
        for g in a.faces() {
            let fg = f.sign.product(&g.sign);
            for l in a.faces().iter().filter(|l| fg.leq(&l.sign)) {
                let (f, g, l) = (&f.sign, &g.sign, &l.sign);
                let ok = v(f, g)? == v(l, g)? && v(g, f)? == v(g, l)?;
                cases.check(ok, || format!("F={f} G={g} L={l}"));
            }
        }
    }
    Ok(cases.finish("absorb_product"))
}

/// `G ⪯ L ⇒ 𝐯(F,L) = 𝐯(F,GF)·𝐯(GF,L)`.
fn split_through_product(a: &Arrangement) -> Result<Outcome> {
    let mut cases = Cases::new();
    let v = |x: &SignVector, y: &SignVector| distance_extended(a, x, y);
    for g in a.faces() {
        for l in a.faces().iter().filter(|l| g.sign.leq(&l.sign)) {
            for f in a.faces() {
                let (f, g, l) = (&f.sign, &g.sign, &l.sign);
                let gf = g.product(f);
                let ok = v(f, l)? == &v(f, &gf)? * &v(&gf, l)?;
                cases.check(ok, || format!("F={f} G={g} L={l}"));
            }
        }
    }
    Ok(cases.finish("split_through_product"))
}

fn am_dimension(a: &Arrangement, opts: &Options) -> Result<Outcome> {
    let mut cases = Cases::new();
    for (i, q) in q_sequence(a.m(), opts.seed, opts.trials).iter().enumerate() {
        let r = solution_dimension(a, q)?;
        cases.check(r.matches(), || {
            format!(
                "trial {i}: dimension {} but {} minimal faces",
                r.dimension, r.min_faces
            )
        });
    }
    Ok(cases.finish("am_dimension"))
}

fn central_recursion(a: &Arrangement, opts: &Options) -> Result<Outcome> {
    let mut cases = Cases::new();
    let mut r = rng(opts.seed);
    for i in 0..opts.trials {
        let q = random_q(a.m(), &mut r);
        let x0 = crate::random::random_rational(&mut r);
        let sol = solve_central(a, &q, x0)?;
        let oracle = solve_by_elimination(a, &q, &sol.base)?;
        cases.check(sol == oracle, || {
            format!("trial {i}: recursion differs from elimination")
        });
        let verdict = verify_solution(a, &q, &sol)?;
        cases.check(verdict.passed(), || {
            format!("trial {i}: residuals {verdict:?}")
        });
    }
    Ok(cases.finish("central_recursion"))
}

/// Swapping every `q_H^+` with `q_H^-` swaps `x_G` with `x_{G̃}`.
fn opposite_symmetry(a: &Arrangement, opts: &Options) -> Result<Outcome> {
    let mut cases = Cases::new();
    for (i, q) in q_sequence(a.m(), opts.seed, opts.trials).iter().enumerate() {
        let sol = solve_central(a, q, int(1))?;
        let swapped = solve_central(a, &q.swapped(), int(1))?;
        for g in a.faces() {
            let g_opp = &a.opposite(&g.sign)?.sign;
            cases.check(swapped.values[g_opp] == sol.values[&g.sign], || {
                format!("trial {i}: G={}", g.sign)
            });
        }
    }
    Ok(cases.finish("opposite_symmetry"))
}

/// Solving from `x_O = c` gives `c` times the solution from `x_O = 1`.
fn linearity(a: &Arrangement, opts: &Options) -> Result<Outcome> {
    let mut cases = Cases::new();
    let mut r = rng(opts.seed);
    for i in 0..opts.trials {
        let q = random_q(a.m(), &mut r);
        let c = crate::random::random_rational(&mut r);
        let unit = solve_central(a, &q, int(1))?;
        let scaled = solve_central(a, &q, c.clone())?;
        let ok = unit.values.iter().all(|(f, x)| scaled.values[f] == x * &c);
        cases.check(ok, || format!("trial {i}: scaling by {c}"));
        let zero = solve_central(a, &q, Rational::zero())?;
        cases.check(zero.values.values().all(Zero::is_zero), || {
            format!("trial {i}: nonzero solution from x_O = 0")
        });
    }
    Ok(cases.finish("linearity"))
}
