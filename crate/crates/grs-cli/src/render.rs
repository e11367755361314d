//! Rendering of reports and verdicts in the two output formats.
//!
//! Documents are always JSON; this module covers everything else — axiom
//! reports, classifications, parity summaries, isomorphism witnesses,
//! decomposition summaries and oracle reports. Rational values appear in
//! JSON the same way they do inside documents: integers as numbers,
//! everything else as exact `"p/q"` strings.

use clap::ValueEnum;
use grs_core::analysis::{Correspondence, ParityFunction, SubsystemVerdict};
use grs_core::scalar::Scalar;
use grs_core::doc::NumberDoc;
use grs_core::finite::{AxiomReport, Violation};
use grs_core::iso::IsoWitness;
use grs_core::linalg::Vector;
use grs_core::oracle::OracleReport;
use grs_core::Rat;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn number(x: &Rat) -> Value {
    serde_json::to_value(NumberDoc::from_scalar(x)).expect("rationals serialize")
}

pub fn vector_value(v: &Vector<Rat>) -> Value {
    Value::Array(v.0.iter().map(number).collect())
}

fn violation_value(v: &Violation<Rat>) -> Value {
    json!({
        "axiom": format!("{:?}", v.axiom),
        "detail": v.detail,
        "witness": v.witness.iter().map(vector_value).collect::<Vec<_>>(),
    })
}

fn emit(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

pub fn print_axiom_report(format: Format, report: &AxiomReport<Rat>, skipped: Option<usize>) {
    match format {
        Format::Json => {
            let mut obj = json!({
                "is_weak_grs": report.is_weak_grs,
                "is_grs": report.is_grs,
                "is_rs": report.is_rs,
                "is_reduced": report.is_reduced,
                "is_irreducible": report.is_irreducible,
                "is_agrs": report.is_agrs,
                "violations": report.violations.iter().map(violation_value).collect::<Vec<_>>(),
            });
            if let Some(s) = skipped {
                obj["skipped"] = json!(s);
            }
            emit(&obj);
        }
        Format::Text => {
            println!("is_weak_grs:    {}", report.is_weak_grs);
            println!("is_grs:         {}", report.is_grs);
            println!("is_rs:          {}", report.is_rs);
            println!("is_reduced:     {}", report.is_reduced);
            println!("is_irreducible: {}", report.is_irreducible);
            if let Some(agrs) = report.is_agrs {
                println!("is_agrs:        {agrs}");
            }
            if let Some(s) = skipped {
                println!("skipped:        {s}");
            }
            if report.violations.is_empty() {
                println!("violations:     none");
            } else {
                println!("violations:");
                for v in &report.violations {
                    let witness: Vec<String> = v.witness.iter().map(Vector::render).collect();
                    println!("  {:?}: {} [{}]", v.axiom, v.detail, witness.join(", "));
                }
            }
        }
    }
}

pub fn print_classification(format: Format, c: &Correspondence<Rat>) {
    match format {
        Format::Json => emit(&json!({
            "tag": c.tag.to_string(),
            "lie_structure": c.lie_structure,
            "notes": c.notes,
        })),
        Format::Text => {
            println!("{}", c.tag);
            println!("corresponds to {}", c.lie_structure);
            if !c.notes.is_empty() {
                println!("({})", c.notes);
            }
        }
    }
}

pub fn print_root(format: Format, root: &Vector<Rat>) {
    match format {
        Format::Json => emit(&json!({ "root": vector_value(root) })),
        Format::Text => println!("{}", root.render()),
    }
}

pub fn print_orbits(format: Format, orbits: &[Vec<Vector<Rat>>]) {
    match format {
        Format::Json => {
            let arr: Vec<Value> = orbits
                .iter()
                .map(|o| Value::Array(o.iter().map(vector_value).collect()))
                .collect();
            emit(&json!({ "orbits": arr }));
        }
        Format::Text => {
            for (i, orbit) in orbits.iter().enumerate() {
                let roots: Vec<String> = orbit.iter().map(Vector::render).collect();
                println!("orbit {i} ({} roots): {}", orbit.len(), roots.join(" "));
            }
        }
    }
}

fn odd_roots(f: &ParityFunction<Rat>) -> Vec<&Vector<Rat>> {
    f.entries()
        .iter()
        .filter(|(_, odd)| *odd)
        .map(|(v, _)| v)
        .collect()
}

fn parity_value(f: &ParityFunction<Rat>) -> Value {
    Value::Array(odd_roots(f).into_iter().map(vector_value).collect())
}

/// Parity summary. `count` is `None` when the solution space is too large to
/// count in `u64`; `all` lists every function when enumeration is feasible.
pub struct ParitySummary {
    pub consistent: bool,
    pub dimension: Option<usize>,
    pub count: Option<u64>,
    pub default: Option<ParityFunction<Rat>>,
    pub all: Option<Vec<ParityFunction<Rat>>>,
    pub window_note: Option<String>,
    pub total_roots: usize,
}

pub fn print_parity(format: Format, s: &ParitySummary) {
    match format {
        Format::Json => {
            let mut obj = json!({
                "consistent": s.consistent,
                "dimension": s.dimension,
                "count": s.count,
                "roots": s.total_roots,
            });
            if let Some(d) = &s.default {
                obj["default_odd_roots"] = parity_value(d);
            }
            if let Some(all) = &s.all {
                obj["functions"] = Value::Array(all.iter().map(parity_value).collect());
            }
            if let Some(note) = &s.window_note {
                obj["window"] = json!(note);
            }
            emit(&obj);
        }
        Format::Text => {
            if let Some(note) = &s.window_note {
                println!("{note}");
            }
            if !s.consistent {
                println!("no parity function exists");
                return;
            }
            match (s.count, s.dimension) {
                (Some(c), Some(d)) => println!("parity functions: {c} (solution space of dimension {d})"),
                (None, Some(d)) => println!("parity functions: 2^{d}"),
                _ => {}
            }
            if let Some(d) = &s.default {
                let roots: Vec<String> = odd_roots(d).iter().map(|v| v.render()).collect();
                println!(
                    "default parity: {} of {} roots odd: {}",
                    d.odd_count(),
                    s.total_roots,
                    roots.join(" ")
                );
            }
            if let Some(all) = &s.all {
                for (i, f) in all.iter().enumerate() {
                    let roots: Vec<String> = odd_roots(f).iter().map(|v| v.render()).collect();
                    if roots.is_empty() {
                        println!("function {i}: odd on no roots");
                    } else {
                        println!("function {i}: odd on {}", roots.join(" "));
                    }
                }
            }
        }
    }
}

pub fn print_iso(format: Format, witness: Option<&IsoWitness<Rat>>) {
    match format {
        Format::Json => match witness {
            Some(w) => {
                let rows: Vec<Value> = (0..w.matrix.rows())
                    .map(|i| {
                        Value::Array(
                            (0..w.matrix.cols()).map(|j| number(w.matrix.at(i, j))).collect(),
                        )
                    })
                    .collect();
                emit(&json!({
                    "isomorphic": true,
                    "scale": number(&w.scale),
                    "matrix": rows,
                }));
            }
            None => emit(&json!({ "isomorphic": false })),
        },
        Format::Text => match witness {
            Some(w) => {
                println!("isomorphic");
                println!("form scale: {}", w.scale.format_rat());
                for i in 0..w.matrix.rows() {
                    let row: Vec<String> = (0..w.matrix.cols())
                        .map(|j| w.matrix.at(i, j).format_rat())
                        .collect();
                    println!("  [{}]", row.join(", "));
                }
            }
            None => println!("not isomorphic"),
        },
    }
}

pub fn print_subsystem(format: Format, is_subsystem: bool, verdict: &SubsystemVerdict<Rat>) {
    match format {
        Format::Json => emit(&json!({
            "is_subsystem": is_subsystem,
            "verdict": verdict.to_string(),
        })),
        Format::Text => {
            println!("{}", if is_subsystem { "subsystem" } else { "not a subsystem" });
            println!("{verdict}");
        }
    }
}

/// One written component document.
pub struct ComponentEntry {
    pub path: String,
    pub kind: &'static str,
    pub tag: Option<String>,
    /// Number of roots (finite) or of base classes (affine).
    pub roots: usize,
}

pub fn print_components(format: Format, entries: &[ComponentEntry]) {
    match format {
        Format::Json => {
            let arr: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "path": e.path,
                        "kind": e.kind,
                        "tag": e.tag,
                        "roots": e.roots,
                    })
                })
                .collect();
            emit(&json!({ "components": arr }));
        }
        Format::Text => {
            for e in entries {
                let tag = e.tag.as_deref().unwrap_or("unclassified");
                let unit = if e.kind == "affine" { "classes" } else { "roots" };
                println!("{} — {} ({}, {} {})", e.path, tag, e.kind, e.roots, unit);
            }
        }
    }
}

pub fn print_oracle_report(format: Format, report: &OracleReport<Rat>) {
    match format {
        Format::Json => {
            let mismatches: Vec<Value> = report
                .mismatches
                .iter()
                .map(|m| {
                    json!({
                        "witness": m.witness.iter().map(vector_value).collect::<Vec<_>>(),
                        "detail": m.detail,
                    })
                })
                .collect();
            emit(&json!({
                "checked": report.checked,
                "skipped": report.skipped,
                "mismatches": mismatches,
            }));
        }
        Format::Text => {
            println!("checked:    {}", report.checked);
            println!("skipped:    {}", report.skipped);
            if report.mismatches.is_empty() {
                println!("mismatches: none");
            } else {
                println!("mismatches:");
                for m in &report.mismatches {
                    let witness: Vec<String> = m.witness.iter().map(Vector::render).collect();
                    println!("  {} [{}]", m.detail, witness.join(", "));
                }
            }
        }
    }
}
