//! Acceptance suite: one line per criterion, each with its time limit.
//! Exits nonzero if any criterion fails or overruns.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use num_traits::{One, Zero};
use varchenko::amsystem::{
    solution_dimension, solve_by_elimination, solve_central, verify_solution, witt,
};
use varchenko::checks::{self, Group, Options, Status};
use varchenko::random::q_sequence;
use varchenko::varchenko::{
    assembly, closed_form_det, distance_extended, multiplicity, multiplicity_counts,
    varchenko_matrix, varchenko_matrix_restriction,
};
use varchenko::{fixtures, Apartment, Arrangement, Mode, Polynomial, Rational, Sign, SignVector};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err(e: varchenko::Error) -> String {
    e.to_string()
}

const SEED: u64 = 0;

const SMALL: &[&str] = &[
    "one_hyperplane",
    "two_crossing_lines",
    "three_concurrent_lines",
    "two_points_on_a_line",
    "three_generic_lines",
];

fn load(name: &str) -> Arrangement {
    fixtures::by_name(name).expect("bundled fixture")
}

fn sv(s: &str) -> SignVector {
    s.parse().expect("sign vector")
}

fn four_line_matrix() -> Outcome {
    let chambers = ["+---", "-+--", "--+-", "---+", "----"];
    let a = Arrangement::from_covectors(
        4,
        Mode::ChambersOnly,
        chambers.iter().map(|c| sv(c)).collect(),
    )
    .map_err(err)?;
    let v = varchenko_matrix(&a, &Apartment::whole_space()).map_err(err)?;
    let expected = [
        ["1", "q1+*q2-", "q1+*q3-", "q1+*q4-", "q1+"],
        ["q1-*q2+", "1", "q2+*q3-", "q2+*q4-", "q2+"],
        ["q1-*q3+", "q2-*q3+", "1", "q3+*q4-", "q3+"],
        ["q1-*q4+", "q2-*q4+", "q3-*q4+", "1", "q4+"],
        ["q1-", "q2-", "q3-", "q4-", "1"],
    ];
    let order: Vec<String> = v.chamber_order().iter().map(ToString::to_string).collect();
    ensure!(order == chambers, "chamber order {order:?}");
    for (i, row) in expected.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let want: Polynomial = cell.parse().map_err(err)?;
            ensure!(
                v.entries().get(i, j) == &want,
                "entry ({i},{j}) is {}, expected {cell}",
                v.entries().get(i, j)
            );
        }
    }
    let product = (0..4).fold(Polynomial::one(), |acc, h| {
        &acc * &(Polynomial::one() - &q(h, '+') * &q(h, '-'))
    });
    let det = v.det_bareiss();
    ensure!(
        det == product,
        "det {det} differs from the product {product}"
    );
    ensure!(det == leibniz(v.entries()), "Bareiss and Leibniz disagree");
    Ok(format!(
        "5x5 matrix matches; det has {} terms",
        det.num_terms()
    ))
}

/// Every apartment with at least one constraint that keeps a chamber, built
/// from strings.
fn oracle_apartments(a: &Arrangement) -> Vec<Apartment> {
    let chambers: Vec<String> = a.chambers().map(|c| c.sign.to_string()).collect();
    let m = a.m();
    let mut out = Vec::new();
    for code in 1..3usize.pow(m as u32) {
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
        let inside = |c: &String| {
            constraints
                .iter()
                .all(|(&h, &s)| c.as_bytes()[h] as char == s.as_char())
        };
        if chambers.iter().any(inside) {
            out.push(Apartment::new(constraints).expect("strict constraints"));
        }
    }
    out
}

fn symbolic_determinants() -> Outcome {
    let mut notes = Vec::new();
    for name in SMALL {
        let a = load(name);
        let apartments = oracle_apartments(&a);
        ensure!(
            apartments.len() == checks::proper_apartments(&a).len(),
            "{name}: apartment enumerations disagree"
        );
        for k in std::iter::once(Apartment::whole_space()).chain(apartments.iter().cloned()) {
            let det = varchenko_matrix(&a, &k).map_err(err)?.det_bareiss();
            let closed = closed_form_det(&a, &k).map_err(err)?;
            ensure!(
                det == closed,
                "{name} on {k}: det {det} but closed form {closed}"
            );
        }
        let scarce = if apartments.len() < 3 {
            " (all that exist)"
        } else {
            ""
        };
        notes.push(format!(
            "{name}: whole space + {} apartments{scarce}",
            apartments.len()
        ));
    }
    Ok(notes.join(", "))
}

fn boolean_evaluation() -> Outcome {
    let a = load("boolean3");
    ensure!(a.chambers().count() == 8, "expected 8 chambers");
    ensure!(a.faces().len() == 27, "expected 27 faces");
    let v = varchenko_matrix(&a, &Apartment::whole_space()).map_err(err)?;
    let closed = closed_form_det(&a, &Apartment::whole_space()).map_err(err)?;
    let points = q_sequence(3, SEED, 20);
    for (i, qa) in points.iter().enumerate() {
        let det = v.entries().eval(qa).map_err(err)?.det().map_err(err)?;
        ensure!(
            det == closed.eval(qa).map_err(err)?,
            "point {i}: det differs from closed form"
        );
        // The matrix is a Kronecker product of three 2x2 blocks.
        let kron = qa.pairs().iter().fold(Rational::one(), |acc, (p, n)| {
            let d = Rational::one() - p * n;
            acc * &d * &d * &d * &d
        });
        ensure!(
            det == kron,
            "point {i}: det differs from the Kronecker product"
        );
    }
    Ok(format!("{} points agree", points.len()))
}

fn assembly_blocks() -> Outcome {
    let mut notes = Vec::new();
    for name in ["one_hyperplane", "two_crossing_lines"] {
        let a = load(name);
        let s = assembly(&a).map_err(err)?;
        let order: Vec<String> = s.face_order().iter().map(ToString::to_string).collect();
        for (i, g) in order.iter().enumerate() {
            for (j, f) in order.iter().enumerate() {
                let want = if compose(g, f) == *g {
                    oracle_distance(f, g)
                } else {
                    Polynomial::zero()
                };
                ensure!(
                    s.entries().get(j, i) == &want,
                    "{name}: entry at row F={f}, column G={g}"
                );
            }
        }
        let full = s.entries().det_bareiss();
        let product = a
            .flats()
            .map_err(err)?
            .iter()
            .map(|x| varchenko_matrix_restriction(&a, x).map(|v| v.det_bareiss()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?
            .iter()
            .fold(Polynomial::one(), |acc, d| &acc * d);
        ensure!(
            full == product,
            "{name}: det S {full} but block product {product}"
        );
        notes.push(format!("{name}: {}x{}", order.len(), order.len()));
    }
    Ok(notes.join(", "))
}

fn multiplicities() -> Outcome {
    let mut faces_checked = 0;
    for (name, a) in fixtures::full_mode() {
        let strings = face_strings(&a);
        for f in a.faces().iter().filter(|f| !f.is_chamber) {
            let counts = multiplicity_counts(&a, &f.sign).map_err(err)?;
            ensure!(
                counts.iter().all(|&c| c == counts[0] && c % 2 == 0),
                "{name} {}: counts {counts:?}",
                f.sign
            );
            ensure!(
                counts == oracle_counts(&strings, &f.sign.to_string()),
                "{name} {}: counts disagree with brute force",
                f.sign
            );
            faces_checked += 1;
        }
    }
    let lines = load("two_crossing_lines");
    for edge in ["+0", "-0", "0+", "0-"] {
        let b = multiplicity(&lines, &sv(edge)).map_err(err)?;
        ensure!(b == 1, "two crossing lines: beta at {edge} is {b}");
    }
    let b = multiplicity(&lines, &sv("00")).map_err(err)?;
    ensure!(b == 0, "two crossing lines: beta at the center is {b}");
    let b = multiplicity(&load("three_concurrent_lines"), &sv("000")).map_err(err)?;
    ensure!(b == 1, "three concurrent lines: beta at the center is {b}");
    Ok(format!("{faces_checked} faces consistent"))
}

fn dimensions() -> Outcome {
    let expected = [
        ("one_hyperplane", 1),
        ("two_crossing_lines", 1),
        ("two_points_on_a_line", 2),
        ("three_generic_lines", 3),
    ];
    for (name, want) in expected {
        let a = load(name);
        let strings = face_strings(&a);
        ensure!(minimal_count(&strings) == want, "{name}: minimal faces");
        for (i, qa) in q_sequence(a.m(), SEED, 5).iter().enumerate() {
            let r = solution_dimension(&a, qa).map_err(err)?;
            ensure!(
                r.dimension == want && r.min_faces == want,
                "{name} trial {i}: dimension {} with {} minimal faces",
                r.dimension,
                r.min_faces
            );
            ensure!(
                oracle_dimension(&strings, qa) == want,
                "{name} trial {i}: rebuilt system disagrees"
            );
        }
    }
    Ok("1, 1, 2, 3 at 5 assignments each".into())
}

fn central_recursion() -> Outcome {
    let mut solved = 0;
    for name in [
        "one_hyperplane",
        "two_crossing_lines",
        "three_concurrent_lines",
    ] {
        let a = load(name);
        let strings = face_strings(&a);
        for (i, qa) in q_sequence(a.m(), SEED, 10).iter().enumerate() {
            let sol = solve_central(&a, qa, Rational::one()).map_err(err)?;
            let center = sv(&"0".repeat(a.m()));
            let pinned = BTreeMap::from([(center, Rational::one())]);
            let oracle = solve_by_elimination(&a, qa, &pinned).map_err(err)?;
            ensure!(
                sol == oracle,
                "{name} trial {i}: recursion differs from elimination"
            );
            let check = verify_solution(&a, qa, &sol).map_err(err)?;
            ensure!(check.passed(), "{name} trial {i}: verification {check:?}");
            let x: Vec<Rational> = strings
                .iter()
                .map(|f| sol.get(&sv(f)).cloned().unwrap_or_default())
                .collect();
            for (r, row) in oracle_system(&strings, qa).iter().enumerate() {
                let residual: Rational = row.iter().zip(&x).map(|(c, v)| c * v).sum();
                ensure!(
                    residual.is_zero(),
                    "{name} trial {i}: rebuilt row {r} has residual {residual}"
                );
            }
            solved += 1;
        }
    }
    Ok(format!("{solved} solves agree"))
}

fn flip_on_zeros(base: &str, g: &str) -> String {
    base.chars()
        .zip(g.chars())
        .map(|(b, c)| match (b, c) {
            ('0', '+') => '-',
            ('0', '-') => '+',
            _ => c,
        })
        .collect()
}

fn parity(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// First identity over strings: for `A ≤ D`, `D` a chamber, every chamber `C`.
fn oracle_witt(strings: &[String]) -> Result<usize, String> {
    let ranks = oracle_ranks(strings);
    let chambers: Vec<&String> = strings.iter().filter(|s| !s.contains('0')).collect();
    let mut tuples = 0;
    for d in &chambers {
        for lo in strings.iter().filter(|f| leq(f, d)) {
            let tilde = flip_on_zeros(lo, d);
            for c in &chambers {
                let lhs: i64 = strings
                    .iter()
                    .filter(|f| leq(lo, f) && leq(f, d) && compose(f, c) == **d)
                    .map(|f| parity(ranks[f]))
                    .sum();
                let rhs = if compose(lo, c) == tilde {
                    parity(ranks[*d])
                } else {
                    0
                };
                ensure!(lhs == rhs, "A={lo} D={d} C={c}: {lhs} vs {rhs}");
                tuples += 1;
            }
        }
    }
    Ok(tuples)
}

fn witt_suite() -> Outcome {
    let mut total = 0;
    for (name, a) in fixtures::full_mode() {
        let report = witt::witt_check(&a).map_err(err)?;
        for t in [&report.witt, &report.eqf1, &report.eqf2] {
            ensure!(t.passed(), "{name} {}: {:?}", t.name, t.violations.first());
            total += t.tuples;
        }
        let tuples = oracle_witt(&face_strings(&a)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(tuples == report.witt.tuples, "{name}: tuple counts differ");
    }
    let a = load("three_generic_lines");
    let (tally, bounded) = witt::check_bounded(&a)
        .map_err(err)?
        .ok_or("three generic lines lost its geometry")?;
    ensure!(tally.passed(), "bounded chamber: {:?}", tally.violations);
    ensure!(bounded == vec![sv("++-")], "bounded chambers {bounded:?}");
    let strings = face_strings(&a);
    let ranks = oracle_ranks(&strings);
    let d = "++-";
    for c in strings.iter().filter(|s| !s.contains('0')) {
        let lhs: i64 = strings
            .iter()
            .filter(|f| leq(f, d) && compose(f, c) == d)
            .map(|f| parity(ranks[f]))
            .sum();
        // The minimal faces are points, so the sign on the diagonal is +1.
        let rhs = i64::from(c == d);
        ensure!(lhs == rhs, "triangle, C={c}: {lhs} vs {rhs}");
    }
    Ok(format!("{total} tuples, triangle ++- bounded"))
}

fn distance_lemmas() -> Outcome {
    let mut cases = 0;
    for (name, a) in fixtures::full_mode() {
        let report = checks::run_group(&a, Group::Distance, &Options::default());
        for o in &report.outcomes {
            ensure!(
                o.status == Status::Pass,
                "{name} {}: {:?}",
                o.name,
                o.details.first()
            );
            cases += o.cases;
        }
        let strings = face_strings(&a);
        for f in &strings {
            for g in &strings {
                let v = distance_extended(&a, &sv(f), &sv(g)).map_err(err)?;
                ensure!(v == oracle_distance(f, g), "{name}: distance {f} {g}");
            }
        }
        let v = |x: &str, y: &str| oracle_distance(x, y);
        let chambers: Vec<&String> = strings.iter().filter(|s| !s.contains('0')).collect();
        for c in &chambers {
            for d in &chambers {
                for f in strings.iter().filter(|f| leq(f, c)) {
                    let fd = compose(f, d);
                    ensure!(
                        v(c, d) == &v(c, &fd) * &v(&fd, d),
                        "{name}: chamber split C={c} D={d} F={f}"
                    );
                }
            }
        }
        for f in &strings {
            for g in &strings {
                let fg = compose(f, g);
                for l in strings.iter().filter(|l| leq(&fg, l)) {
                    ensure!(
                        v(f, g) == v(l, g) && v(g, f) == v(g, l),
                        "{name}: absorb F={f} G={g} L={l}"
                    );
                }
                for l in strings.iter().filter(|l| leq(g, l)) {
                    let gf = compose(g, f);
                    ensure!(
                        v(f, l) == &v(f, &gf) * &v(&gf, l),
                        "{name}: split F={f} G={g} L={l}"
                    );
                }
            }
        }
    }
    Ok(format!("{cases} cases"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "four-line chamber matrix and determinant",
        limit: Duration::from_secs(1),
        run: four_line_matrix,
    },
    Criterion {
        id: 2,
        name: "symbolic determinant equals closed form",
        limit: Duration::from_secs(30),
        run: symbolic_determinants,
    },
    Criterion {
        id: 3,
        name: "boolean arrangement, evaluation mode",
        limit: Duration::from_secs(60),
        run: boolean_evaluation,
    },
    Criterion {
        id: 4,
        name: "assembly determinant factors over flats",
        limit: Duration::from_secs(10),
        run: assembly_blocks,
    },
    Criterion {
        id: 5,
        name: "multiplicity consistency",
        limit: Duration::from_secs(5),
        run: multiplicities,
    },
    Criterion {
        id: 6,
        name: "solution dimension equals minimal faces",
        limit: Duration::from_secs(10),
        run: dimensions,
    },
    Criterion {
        id: 7,
        name: "central recursion matches elimination",
        limit: Duration::from_secs(20),
        run: central_recursion,
    },
    Criterion {
        id: 8,
        name: "Witt identities and bounded chamber",
        limit: Duration::from_secs(60),
        run: witt_suite,
    },
    Criterion {
        id: 9,
        name: "distance lemmas",
        limit: Duration::from_secs(30),
        run: distance_lemmas,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let timing = format!(
            "{:.2}s, limit {}s",
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        match result {
            Ok(detail) if elapsed < c.limit => {
                println!("[PASS] {} {}: {detail} ({timing})", c.id, c.name)
            }
            Ok(detail) => {
                failed += 1;
                println!("[FAIL] {} {}: over time; {detail} ({timing})", c.id, c.name)
            }
            Err(reason) => {
                failed += 1;
                println!("[FAIL] {} {}: {reason} ({timing})", c.id, c.name)
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
