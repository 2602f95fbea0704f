//! Report, DOT and CSV rendering.

use std::fmt::Write as _;

use hn_core::engine::{HnReport, Vertex};
use hn_core::oracle::{CertificationReport, SuiteStatus};
use hn_core::slope::{SlopeViolation, ValidationReport};
use hn_core::{AdmissibleFamily, MemberId, SlopeFunction};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::instance::encode_value;

fn elements(family: &AdmissibleFamily, m: MemberId) -> Value {
    json!(family.subset(m).elements().collect::<Vec<_>>())
}

pub fn hn_report_json(sf: &SlopeFunction, report: &HnReport) -> Value {
    let fam = sf.family();
    let members = report.filtration.members();
    json!({
        "filtration": members.iter().map(|&m| elements(fam, m)).collect::<Vec<_>>(),
        "member_indices": members.iter().map(|m| m.0).collect::<Vec<_>>(),
        "slopes": report.step_slopes.iter().map(|v| encode_value(sf.poset(), v)).collect::<Vec<_>>(),
        "semistable": report.semistable,
        "mode": report.mode.name(),
        "axiom_checks": {
            "slope_inequality": report.axioms.slope_inequality,
            "strong_slope_inequality": report.axioms.strong_slope_inequality,
        },
        "hn_check": {
            "passed": report.check.passed(),
            "slope_chain": report.check.chain,
        },
    })
}

pub fn hn_report_text(sf: &SlopeFunction, report: &HnReport) -> String {
    let fam = sf.family();
    let mut out = String::new();
    let chain: Vec<String> = report.filtration.members().iter().map(|&m| fam.subset(m).to_string()).collect();
    writeln!(out, "mode: {}", report.mode.name()).unwrap();
    writeln!(out, "filtration: {}", chain.join(" < ")).unwrap();
    for (i, step) in report.check.steps.iter().enumerate() {
        writeln!(
            out,
            "step {}: {}/{} slope {} {}",
            i + 1,
            fam.subset(step.sup),
            fam.subset(step.sub),
            sf.poset().render(&step.slope),
            if step.semistability.is_semistable() { "semistable" } else { "unstable" }
        )
        .unwrap();
    }
    writeln!(out, "hn check: {}", if report.check.passed() { "pass" } else { "fail" }).unwrap();
    out
}

/// `mu(upper/lower)` with members shown as element sets.
pub fn violation_text(sf: &SlopeFunction, v: &SlopeViolation) -> String {
    let fam = sf.family();
    let p = sf.poset();
    format!(
        "mu({}/{}) = {} is not <= mu({}/{}) = {}",
        fam.subset(v.lower.sup),
        fam.subset(v.lower.sub),
        p.render(&v.lower_value),
        fam.subset(v.upper.sup),
        fam.subset(v.upper.sub),
        p.render(&v.upper_value)
    )
}

fn violation_json(sf: &SlopeFunction, v: &SlopeViolation) -> Value {
    let fam = sf.family();
    json!({
        "lower": {"sub": elements(fam, v.lower.sub), "sup": elements(fam, v.lower.sup), "value": encode_value(sf.poset(), &v.lower_value)},
        "upper": {"sub": elements(fam, v.upper.sub), "sup": elements(fam, v.upper.sup), "value": encode_value(sf.poset(), &v.upper_value)},
    })
}

pub fn validation_json(sf: &SlopeFunction, strong: bool, report: &ValidationReport<SlopeViolation>) -> Value {
    json!({
        "check": if strong { "strong_slope_inequality" } else { "slope_inequality" },
        "passed": report.passed(),
        "checked": report.checked,
        "violation_count": report.violation_count,
        "violations": report.violations.iter().map(|v| violation_json(sf, v)).collect::<Vec<_>>(),
    })
}

pub fn certification_json(sf: &SlopeFunction, report: &CertificationReport) -> Value {
    let fam = sf.family();
    let suites: Vec<Value> = report
        .suites
        .iter()
        .map(|s| {
            let mut v = json!({"name": s.suite.name(), "status": s.status.to_string(), "checked": s.checked});
            match &s.status {
                SuiteStatus::Failed { witness, violations } => {
                    v["witness"] = json!(witness.iter().map(|&m| elements(fam, m)).collect::<Vec<_>>());
                    v["violations"] = json!(violations);
                }
                SuiteStatus::HypothesisNotMet(why) => v["missing_hypothesis"] = json!(why),
                SuiteStatus::Finding { hn_count } => v["hn_count"] = json!(hn_count),
                SuiteStatus::Passed => {}
            }
            v
        })
        .collect();
    json!({
        "mode": report.mode.name(),
        "slope_inequality": report.slope_inequality,
        "strong_slope_inequality": report.strong_slope_inequality,
        "hn_count": report.hn_count(),
        "hn_filtrations": report
            .hn_filtrations
            .iter()
            .map(|f| f.members().iter().map(|&m| elements(fam, m)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "suites": suites,
        "passed": report.passed(),
    })
}

/// Hasse diagram of the family, bottom to top, with `highlight` members
/// double-circled.
pub fn hasse_dot(family: &AdmissibleFamily, highlight: &[MemberId]) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for &m in family.canonical() {
        let shape = if highlight.contains(&m) { ", shape=doublecircle" } else { "" };
        writeln!(out, "  m{} [label=\"{}\"{shape}];", m.0, family.subset(m)).unwrap();
    }
    for (a, b) in family.covers() {
        writeln!(out, "  m{} -> m{};", a.0, b.0).unwrap();
    }
    out.push_str("}\n");
    out
}

/// `x` with 12 significant digits, keeping trailing zeros; scientific
/// notation outside `[1e-5, 1e12)`.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        return sci;
    }
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest.replace('.', "")),
        None => ("", mantissa.replace('.', "")),
    };
    let body = if exp < 0 {
        format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
    } else {
        let point = exp as usize + 1;
        if point >= digits.len() {
            digits
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    };
    format!("{sign}{body}")
}

pub fn polygon_csv(vertices: &[Vertex]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rank", "degree"]).expect("in memory");
    for (rk, deg) in vertices {
        let d = deg.to_f64().unwrap_or(f64::NAN);
        w.write_record([rk.to_string(), sig12(d)]).expect("in memory");
    }
    String::from_utf8(w.into_inner().expect("in memory")).expect("ascii")
}
