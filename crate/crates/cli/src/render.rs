//! Text and JSON renderings of reports. Both are deterministic: JSON
//! objects come out with sorted keys.

use pcp_core::algebra::{AlgebraConsistencyReport, AlgebraEquationResult};
use pcp_core::group_consistency::{ConsistencyReport, EquationResult};
use pcp_core::oracle::{AlgebraWitness, GroupWitness, OracleReport};
use pcp_core::presentation::GroupPresentation;
use pcp_core::{NormalVector, NormalWord, WeightAssignment};
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;

fn group_failure(r: &EquationResult) -> Value {
    json!({
        "tag": r.id.tag(),
        "indices": r.id.indices(),
        "lhs": r.lhs.to_string(),
        "rhs": r.rhs.to_string(),
        "lhs_nf": r.lhs_nf.to_string(),
        "rhs_nf": r.rhs_nf.to_string(),
    })
}

fn algebra_failure(r: &AlgebraEquationResult) -> Value {
    json!({
        "tag": r.id.tag(),
        "indices": r.id.indices(),
        "lhs": r.lhs.to_string(),
        "rhs": r.rhs.to_string(),
        "lhs_nf": r.lhs_nf.to_string(),
        "rhs_nf": r.rhs_nf.to_string(),
    })
}

pub fn group_report_json(report: &ConsistencyReport) -> Value {
    json!({
        "schema": SCHEMA,
        "mode": report.mode.to_string(),
        "consistent": report.is_consistent(),
        "failures": report.failures.iter().map(group_failure).collect::<Vec<_>>(),
        "counts": {
            "enumerated": report.counts.enumerated,
            "evaluated": report.counts.evaluated,
            "skipped_by_weight": report.counts.skipped_by_weight,
        },
    })
}

pub fn group_report_text(report: &ConsistencyReport) -> String {
    let mut out = String::new();
    for r in &report.failures {
        out.push_str(&format!(
            "FAIL {}: lhs {} != rhs {}\n",
            r.id, r.lhs_nf, r.rhs_nf
        ));
    }
    if report.is_consistent() {
        out.push_str(&format!(
            "CONSISTENT ({} equations checked)\n",
            report.counts.evaluated
        ));
    } else {
        out.push_str(&format!(
            "INCONSISTENT ({} of {} equations failed)\n",
            report.failures.len(),
            report.counts.evaluated
        ));
    }
    out
}

/// Algebra checks always filter by weight, so the mode is reported as
/// `nilpotent`.
pub fn algebra_report_json(report: &AlgebraConsistencyReport) -> Value {
    json!({
        "schema": SCHEMA,
        "mode": "nilpotent",
        "consistent": report.is_consistent(),
        "failures": report.failures.iter().map(algebra_failure).collect::<Vec<_>>(),
        "counts": { "evaluated": report.evaluated },
        "weights": report.weights.weights,
        "max_weight": report.weights.max_weight,
    })
}

pub fn algebra_report_text(report: &AlgebraConsistencyReport) -> String {
    let mut out = String::new();
    for r in &report.failures {
        out.push_str(&format!(
            "FAIL {}: lhs {} != rhs {}\n",
            r.id, r.lhs_nf, r.rhs_nf
        ));
    }
    if report.is_consistent() {
        out.push_str(&format!(
            "CONSISTENT ({} equations checked)\n",
            report.evaluated
        ));
    } else {
        out.push_str(&format!(
            "INCONSISTENT ({} of {} equations failed)\n",
            report.failures.len(),
            report.evaluated
        ));
    }
    out
}

pub fn weights_text(w: &WeightAssignment) -> String {
    let list: Vec<String> = w.weights.iter().map(u64::to_string).collect();
    format!("w = ({}) d = {}\n", list.join(","), w.max_weight)
}

pub fn weights_json(w: &WeightAssignment) -> Value {
    json!({
        "schema": SCHEMA,
        "weights": w.weights,
        "max_weight": w.max_weight,
    })
}

fn nw(w: &NormalWord) -> Value {
    Value::String(w.to_string())
}

fn group_witness_json(w: &GroupWitness) -> Value {
    match w {
        GroupWitness::Associativity {
            a,
            b,
            c,
            left,
            right,
        } => json!({
            "kind": "associativity",
            "elements": [nw(a), nw(b), nw(c)],
            "left": nw(left),
            "right": nw(right),
        }),
        GroupWitness::Identity { a, product } => json!({
            "kind": "identity",
            "elements": [nw(a)],
            "product": nw(product),
        }),
        GroupWitness::Inverse { a } => json!({
            "kind": "inverse",
            "elements": [nw(a)],
        }),
    }
}

fn group_witness_text(w: &GroupWitness) -> String {
    match w {
        GroupWitness::Associativity {
            a,
            b,
            c,
            left,
            right,
        } => format!("associativity fails for ({a}, {b}, {c}): {left} != {right}"),
        GroupWitness::Identity { a, product } => {
            format!("identity fails for {a}: product {product}")
        }
        GroupWitness::Inverse { a } => format!("{a} has no inverse"),
    }
}

fn nv(v: &NormalVector) -> Value {
    Value::String(v.to_string())
}

fn algebra_witness_json(w: &AlgebraWitness) -> Value {
    match w {
        AlgebraWitness::Associativity {
            i,
            j,
            k,
            left,
            right,
        } => json!({
            "kind": "associativity",
            "indices": [i + 1, j + 1, k + 1],
            "left": nv(left),
            "right": nv(right),
        }),
        AlgebraWitness::Module { i, j, left, right } => json!({
            "kind": "module",
            "indices": [i + 1, j + 1],
            "left": nv(left),
            "right": nv(right),
        }),
    }
}

fn algebra_witness_text(w: &AlgebraWitness) -> String {
    match w {
        AlgebraWitness::Associativity {
            i,
            j,
            k,
            left,
            right,
        } => format!(
            "(a{0}*a{1})*a{2} != a{0}*(a{1}*a{2}): {3} != {4}",
            i + 1,
            j + 1,
            k + 1,
            left,
            right
        ),
        AlgebraWitness::Module { i, j, left, right } => format!(
            "order compatibility fails for a{}*a{}: {} != {}",
            j + 1,
            i + 1,
            left,
            right
        ),
    }
}

pub fn group_oracle_json(r: &OracleReport<GroupWitness>) -> Value {
    json!({
        "schema": SCHEMA,
        "verdict": r.verdict,
        "order": r.order.to_string(),
        "witness": r.witness.as_ref().map(group_witness_json),
    })
}

pub fn algebra_oracle_json(r: &OracleReport<AlgebraWitness>) -> Value {
    json!({
        "schema": SCHEMA,
        "verdict": r.verdict,
        "order": r.order.to_string(),
        "witness": r.witness.as_ref().map(algebra_witness_json),
    })
}

pub fn group_oracle_text(r: &OracleReport<GroupWitness>) -> String {
    match &r.witness {
        None => format!("GROUP of order {}\n", r.order),
        Some(w) => format!("NOT A GROUP: {}\n", group_witness_text(w)),
    }
}

pub fn algebra_oracle_text(r: &OracleReport<AlgebraWitness>) -> String {
    match &r.witness {
        None => format!("ALGEBRA of dimension {}\n", r.order),
        Some(w) => format!("NOT ASSOCIATIVE: {}\n", algebra_witness_text(w)),
    }
}

/// The derived relations, as lines in the presentation syntax.
pub fn derived_lines(p: &GroupPresentation) -> Vec<String> {
    let Some(d) = p.derived() else {
        return Vec::new();
    };
    let tail = |t: &pcp_core::presentation::ExponentTail| {
        if t.is_trivial() {
            String::new()
        } else {
            format!("*{}", t.to_word())
        }
    };
    let mut lines = Vec::new();
    for (&(i, j), t) in &d.inverse_conjugate {
        lines.push(format!("g{}^-1*g{} = g{}{}", j + 1, i + 1, i + 1, tail(t)));
    }
    for (&(i, j), t) in &d.inverse_conjugate_by_inverse {
        lines.push(format!(
            "g{}^-1*g{}^-1 = g{}^-1{}",
            j + 1,
            i + 1,
            i + 1,
            tail(t)
        ));
    }
    for (&i, t) in &d.inverse_power {
        let r = p
            .order(i)
            .value()
            .expect("inverse power needs a finite order");
        let power = r - 1;
        let lead = if power == 0.into() {
            "1".to_string()
        } else if power == 1.into() {
            format!("g{}", i + 1)
        } else {
            format!("g{}^{}", i + 1, power)
        };
        let rest = tail(t);
        if lead == "1" && !rest.is_empty() {
            lines.push(format!("g{}^-1 = {}", i + 1, &rest[1..]));
        } else {
            lines.push(format!("g{}^-1 = {}{}", i + 1, lead, rest));
        }
    }
    lines
}
