use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use varchenko::algebra::{format_rational, parse_rational, QAssignment};
use varchenko::amsystem::{
    require_nondegenerate, solution_dimension, solve_by_elimination, solve_central, verify_solution,
};
use varchenko::arrangement::Mode;
use varchenko::checks::{self, Group, Method, Options, Status, SYMBOLIC_CAP};
use varchenko::io::{load_apartment, load_arrangement, load_q};
use varchenko::random::q_sequence;
use varchenko::varchenko::{
    closed_form_det, closed_form_det_restriction, varchenko_matrix, varchenko_matrix_restriction,
    weights as apartment_weights, weights_in_flat, VarchenkoMatrix, WeightedFace,
};
use varchenko::{Apartment, Arrangement, Error, Flat, Polynomial, Result};

use crate::{CheckGroup, MethodArg, Region, Sampling};

pub struct Output {
    pub text: String,
    pub json: Value,
    /// A check ran and found a violation.
    pub violations: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            violations: false,
        }
    }
}

enum Target {
    Apartment(Apartment),
    Flat(Flat),
}

impl Target {
    fn resolve(a: &Arrangement, region: &Region) -> Result<Target> {
        if let Some(text) = &region.flat {
            return Ok(Target::Flat(text.parse()?));
        }
        Ok(Target::Apartment(match &region.apartment {
            Some(path) => load_apartment(path, a.m())?,
            None => Apartment::whole_space(),
        }))
    }

    fn matrix(&self, a: &Arrangement) -> Result<VarchenkoMatrix> {
        match self {
            Target::Apartment(k) => varchenko_matrix(a, k),
            Target::Flat(x) => varchenko_matrix_restriction(a, x),
        }
    }

    /// Closed-form factors, or `None` for chambers-only input.
    fn weights(&self, a: &Arrangement) -> Result<Option<Vec<WeightedFace>>> {
        if a.mode() != Mode::Full {
            return Ok(None);
        }
        match self {
            Target::Apartment(k) => apartment_weights(a, k).map(Some),
            Target::Flat(x) => weights_in_flat(a, x).map(Some),
        }
    }

    fn closed_form(&self, a: &Arrangement) -> Result<Option<Polynomial>> {
        if a.mode() != Mode::Full {
            return Ok(None);
        }
        match self {
            Target::Apartment(k) => closed_form_det(a, k).map(Some),
            Target::Flat(x) => closed_form_det_restriction(a, x).map(Some),
        }
    }
}

fn weights_json(ws: &[WeightedFace]) -> Value {
    Value::Array(
        ws.iter()
            .map(|w| {
                json!({
                    "face": w.face.sign.to_string(),
                    "weight": w.weight.to_string(),
                    "multiplicity": w.multiplicity,
                })
            })
            .collect(),
    )
}

fn weights_text(ws: &[WeightedFace]) -> String {
    let width = ws.iter().map(|w| w.face.sign.len()).max().unwrap_or(0);
    ws.iter()
        .map(|w| {
            format!(
                "{:<width$}  weight {}  multiplicity {}\n",
                w.face.sign.to_string(),
                w.weight,
                w.multiplicity
            )
        })
        .collect()
}

/// `(1 - b)^k * ...`, equal weights merged, in order of first appearance.
fn factored(ws: &[WeightedFace]) -> String {
    let mut merged: Vec<(String, usize)> = Vec::new();
    for w in ws.iter().filter(|w| w.multiplicity > 0) {
        let b = w.weight.to_string();
        match merged.iter_mut().find(|(c, _)| *c == b) {
            Some((_, k)) => *k += w.multiplicity,
            None => merged.push((b, w.multiplicity)),
        }
    }
    if merged.is_empty() {
        return "1".to_string();
    }
    merged
        .iter()
        .map(|(b, k)| match k {
            1 => format!("(1 - {b})"),
            k => format!("(1 - {b})^{k}"),
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

fn matrix_json(v: &VarchenkoMatrix) -> Value {
    Value::Array(
        v.entries()
            .rows()
            .map(|r| Value::Array(r.iter().map(|p| Value::String(p.to_string())).collect()))
            .collect(),
    )
}

fn signs_json<'a>(signs: impl IntoIterator<Item = &'a varchenko::SignVector>) -> Value {
    Value::Array(
        signs
            .into_iter()
            .map(|s| Value::String(s.to_string()))
            .collect(),
    )
}

pub fn faces(input: &Path) -> Result<Output> {
    let a = load_arrangement(input)?;
    let full = a.mode() == Mode::Full;
    let mut text = String::new();
    let mut list = Vec::new();
    for f in a.faces() {
        let chamber = if f.is_chamber { "  chamber" } else { "" };
        if full {
            let _ = writeln!(text, "{}  rank {}{chamber}", f.sign, f.rank);
            list.push(json!({"sign": f.sign.to_string(), "rank": f.rank, "chamber": f.is_chamber}));
        } else {
            let _ = writeln!(text, "{}{chamber}", f.sign);
            list.push(json!({"sign": f.sign.to_string(), "chamber": f.is_chamber}));
        }
    }
    let mut out = json!({"m": a.m(), "mode": a.mode(), "count": a.faces().len(), "faces": list});
    if full {
        let flats: Vec<String> = a.flats()?.iter().map(ToString::to_string).collect();
        let mins: Vec<String> = a.min_faces()?.iter().map(|f| f.sign.to_string()).collect();
        let _ = writeln!(text, "flats: {}", flats.join(" "));
        let _ = writeln!(text, "minimal faces: {}", mins.join(" "));
        out["flats"] = json!(flats);
        out["min_faces"] = json!(mins);
    }
    Ok(Output::ok(text, out))
}

pub fn validate(input: &Path) -> Result<Output> {
    let a = load_arrangement(input)?;
    let report = a.validate();
    let mut text = String::new();
    if report.passed() {
        text.push_str("valid\n");
    }
    for f in &report.failures {
        let _ = writeln!(text, "invalid: {}: {}", f.check, f.witness);
    }
    Ok(Output {
        text,
        json: json!({"valid": report.passed(), "mode": report.mode, "failures": report.failures}),
        violations: !report.passed(),
    })
}

pub fn matrix(input: &Path, region: &Region) -> Result<Output> {
    let a = load_arrangement(input)?;
    let target = Target::resolve(&a, region)?;
    let v = target.matrix(&a)?;
    let det = v.det_bareiss();
    let ws = target.weights(&a)?;
    let mut text = format!("{v}det: {det}\n");
    let mut out = json!({
        "chambers": signs_json(v.chamber_order()),
        "matrix": matrix_json(&v),
        "det": det.to_string(),
    });
    if let Some(ws) = ws {
        let _ = writeln!(text, "closed form: {}", factored(&ws));
        text.push_str(&weights_text(&ws));
        out["closed_form"] = weights_json(&ws);
    }
    Ok(Output::ok(text, out))
}

pub fn det(
    input: &Path,
    region: &Region,
    method: Option<MethodArg>,
    points: usize,
    seed: u64,
) -> Result<Output> {
    let a = load_arrangement(input)?;
    let target = Target::resolve(&a, region)?;
    let v = target.matrix(&a)?;
    let closed = target.closed_form(&a)?;
    let ws = target.weights(&a)?;
    let symbolic = match method {
        Some(MethodArg::Bareiss) => true,
        Some(MethodArg::Eval) => false,
        None => v.size() <= SYMBOLIC_CAP || closed.is_none(),
    };
    let (det, verified) = if symbolic {
        let det = v.det_bareiss();
        let verified = closed.as_ref().map(|c| *c == det);
        (det, verified)
    } else {
        let closed = closed.clone().ok_or_else(|| {
            Error::Invalid(
                "evaluation mode needs a closed form, which needs full-mode input".into(),
            )
        })?;
        let mut agree = true;
        for q in q_sequence(a.m(), seed, points) {
            agree &= v.entries().eval(&q)?.det()? == closed.eval(&q)?;
        }
        (closed, Some(agree))
    };
    let method_name = if symbolic { "bareiss" } else { "eval" };
    let mut text = format!("{det}\n");
    let mut out = json!({"det": det.to_string(), "method": method_name});
    if let (Some(ws), Some(ok)) = (&ws, verified) {
        let _ = writeln!(text, "closed form: {}", factored(ws));
        let how = if symbolic {
            "symbolic".to_string()
        } else {
            format!("evaluated at {points} points")
        };
        let _ = writeln!(text, "{}: {how}", if ok { "verified" } else { "MISMATCH" });
        out["closed_form"] = json!(closed.map(|c| c.to_string()));
        out["verified"] = json!(ok);
        if !symbolic {
            out["points"] = json!(points);
        }
    }
    Ok(Output {
        text,
        json: out,
        violations: verified == Some(false),
    })
}

pub fn weights(input: &Path, region: &Region) -> Result<Output> {
    let a = load_arrangement(input)?;
    let target = Target::resolve(&a, region)?;
    let ws = target.weights(&a)?.ok_or(Error::ModeError("weights"))?;
    Ok(Output::ok(weights_text(&ws), weights_json(&ws)))
}

pub fn assembly(input: &Path) -> Result<Output> {
    let a = load_arrangement(input)?;
    let s = varchenko::varchenko::assembly(&a)?;
    let det = varchenko::varchenko::assembly_det(&a)?;
    let blocks: Vec<Value> = s
        .blocks()
        .iter()
        .map(|(x, range)| {
            json!({"flat": x.to_string(), "faces": signs_json(&s.face_order()[range.clone()])})
        })
        .collect();
    let matrix: Vec<Value> = s
        .entries()
        .rows()
        .map(|r| Value::Array(r.iter().map(|p| Value::String(p.to_string())).collect()))
        .collect();
    Ok(Output::ok(
        format!("{s}det: {det}\n"),
        json!({
            "faces": signs_json(s.face_order()),
            "blocks": blocks,
            "matrix": matrix,
            "det": det.to_string(),
        }),
    ))
}

fn sampled_q(a: &Arrangement, sampling: &Sampling) -> Result<QAssignment> {
    match &sampling.q {
        Some(path) => load_q(path, a.m()),
        None => Ok(q_sequence(a.m(), sampling.seed, 1).remove(0)),
    }
}

pub fn am_dim(input: &Path, sampling: &Sampling) -> Result<Output> {
    let a = load_arrangement(input)?;
    let q = sampled_q(&a, sampling)?;
    let r = solution_dimension(&a, &q)?;
    Ok(Output {
        text: format!("dimension {}\nmin_faces {}\n", r.dimension, r.min_faces),
        json: json!({"dimension": r.dimension, "min_faces": r.min_faces}),
        violations: !r.matches(),
    })
}

pub fn am_solve(input: &Path, sampling: &Sampling, x0: &str) -> Result<Output> {
    let a = load_arrangement(input)?;
    let q = sampled_q(&a, sampling)?;
    let x0 = parse_rational(x0)?;
    let sol = if a.is_central()? {
        solve_central(&a, &q, x0)?
    } else {
        require_nondegenerate(&a, &q)?;
        let base: BTreeMap<_, _> = a
            .min_faces()?
            .into_iter()
            .map(|f| (f.sign.clone(), x0.clone()))
            .collect();
        solve_by_elimination(&a, &q, &base)?
    };
    let verified = verify_solution(&a, &q, &sol)?.passed();
    let mut text = String::new();
    let mut x = serde_json::Map::new();
    for (f, value) in &sol.values {
        let _ = writeln!(text, "{f}  {}", format_rational(value));
        x.insert(f.to_string(), Value::String(format_rational(value)));
    }
    let _ = writeln!(text, "verified: {verified}");
    Ok(Output {
        text,
        json: json!({"x": x, "verified": verified}),
        violations: !verified,
    })
}

pub fn check(
    input: &Path,
    group: CheckGroup,
    seed: u64,
    trials: usize,
    points: usize,
    method: Option<MethodArg>,
) -> Result<Output> {
    let a = load_arrangement(input)?;
    let (group, name) = match group {
        CheckGroup::Witt => (Group::Witt, "witt"),
        CheckGroup::Distance => (Group::Distance, "distance"),
        CheckGroup::Prd => (Group::Prd, "prd"),
        CheckGroup::All => (Group::All, "all"),
    };
    let opts = Options {
        seed,
        trials,
        points,
        method: match method {
            None => Method::Auto,
            Some(MethodArg::Bareiss) => Method::Bareiss,
            Some(MethodArg::Eval) => Method::Eval,
        },
    };
    let report = checks::run_group(&a, group, &opts);
    let mut text = String::new();
    for o in &report.outcomes {
        let tag = match o.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let _ = writeln!(text, "[{tag}] {} ({} cases)", o.name, o.cases);
        for d in &o.details {
            let _ = writeln!(text, "    {d}");
        }
    }
    let failed = report
        .outcomes
        .iter()
        .filter(|o| o.status == Status::Fail)
        .count();
    let _ = writeln!(text, "{} checks, {failed} failed", report.outcomes.len());
    Ok(Output {
        text,
        json: json!({
            "group": name,
            "seed": seed,
            "passed": report.passed(),
            "checks": report.outcomes,
        }),
        violations: !report.passed(),
    })
}
