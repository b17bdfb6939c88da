//! Deterministic text and CSV renderings of the analysis reports.
//!
//! Machine consumers should prefer `--format json`; these renderings exist
//! for terminals and are byte-stable for identical inputs all the same.

use std::fmt::Write;

use metromodel_core::energy::EnergyReport;
use metromodel_core::mec::CandidacyReport;
use metromodel_core::model::Violation;
use metromodel_core::recompose::{CoverageResult, PathTrace};
use metromodel_core::validate::{Diagnostic, Severity};

pub fn violations_text(violations: &[Violation]) -> String {
    let mut out = String::new();
    for v in violations {
        let _ = writeln!(out, "{v}");
    }
    let _ = writeln!(out, "{} structural error(s)", violations.len());
    out
}

pub fn diagnostics_text(diagnostics: &[Diagnostic]) -> String {
    if diagnostics.is_empty() {
        return "no findings\n".to_string();
    }
    let mut out = String::new();
    for d in diagnostics {
        let _ = writeln!(out, "{d}");
    }
    let errors = diagnostics.iter().filter(|d| d.severity == Severity::Error).count();
    let _ = writeln!(
        out,
        "{} error(s), {} warning(s)",
        errors,
        diagnostics.len() - errors
    );
    out
}

fn section(out: &mut String, title: &str, lines: &[String]) {
    let _ = writeln!(out, "{title}:");
    if lines.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for line in lines {
        let _ = writeln!(out, "  {line}");
    }
}

pub fn coverage_text(coverage: &CoverageResult) -> String {
    let mut out = String::new();
    section(
        &mut out,
        "assignments",
        &coverage
            .assignment
            .iter()
            .map(|(element, segment)| format!("{element} -> {segment}"))
            .collect::<Vec<_>>(),
    );
    section(
        &mut out,
        "straddlers",
        &coverage
            .straddlers
            .iter()
            .map(|(element, s)| {
                format!(
                    "{element}: split at {} (upstream {}, downstream {})",
                    s.rp_id, s.upstream_segment, s.downstream_segment
                )
            })
            .collect::<Vec<_>>(),
    );
    section(&mut out, "uncaptured", &coverage.uncaptured.clone());
    section(&mut out, "trace", &coverage.rp_trace.clone());
    section(&mut out, "warnings", &coverage.warnings.clone());
    out
}

pub fn trace_text(trace: &PathTrace, hidden: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "media layer: {}", trace.layer_id);
    let _ = writeln!(out, "path elements:");
    for e in &trace.elements {
        if e.visible_at_request_layer {
            let _ = writeln!(out, "  {}", e.id);
        } else {
            let _ = writeln!(out, "  {}  (introduced by expansion)", e.id);
        }
    }
    if hidden.is_empty() {
        let _ = writeln!(out, "hidden consumers: (none)");
    } else {
        let _ = writeln!(out, "hidden consumers: {}", hidden.join(", "));
    }
    out
}

pub fn energy_text(report: &EnergyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "interval: {} .. {}",
        report.interval.from_utc, report.interval.to_utc
    );
    if report.metadata.model_date.is_empty() {
        let _ = writeln!(
            out,
            "model: {} — {}",
            report.metadata.model_name, report.metadata.model_author
        );
    } else {
        let _ = writeln!(
            out,
            "model: {} — {} — {}",
            report.metadata.model_name, report.metadata.model_author, report.metadata.model_date
        );
    }
    if report.metadata.measurements.is_empty() {
        let _ = writeln!(out, "measurements: (none)");
    } else {
        let _ = writeln!(
            out,
            "measurements: {} .. {}",
            report.metadata.measurement_start_utc, report.metadata.measurement_end_utc
        );
        for m in &report.metadata.measurements {
            let _ = writeln!(
                out,
                "  {} measured at {} ({} .. {})",
                m.element_id, m.location, m.first_utc, m.last_utc
            );
        }
    }
    section(
        &mut out,
        "per segment (Wh)",
        &report
            .per_segment_wh
            .iter()
            .map(|(segment, wh)| format!("{segment}: {wh:.3}"))
            .collect::<Vec<_>>(),
    );
    section(
        &mut out,
        "per operator (Wh)",
        &report
            .per_operator_wh
            .iter()
            .map(|(operator, wh)| format!("{operator}: {wh:.3}"))
            .collect::<Vec<_>>(),
    );
    let _ = writeln!(out, "total: {:.3} Wh", report.total_wh);
    let _ = writeln!(out, "uncaptured: {:.3} Wh", report.uncaptured_wh);
    section(
        &mut out,
        "rated fallback (billed at rated draw)",
        &report.rated_fallback_elements.clone(),
    );
    section(&mut out, "hidden consumers", &report.hidden_consumer_notes.clone());
    section(&mut out, "warnings", &report.warnings.clone());
    out
}

pub fn energy_csv(report: &EnergyReport) -> String {
    let mut out = String::from("section,key,wh\n");
    for (segment, wh) in &report.per_segment_wh {
        let _ = writeln!(out, "segment,{segment},{wh}");
    }
    for (operator, wh) in &report.per_operator_wh {
        let _ = writeln!(out, "operator,{operator},{wh}");
    }
    let _ = writeln!(out, "uncaptured,,{}", report.uncaptured_wh);
    let _ = writeln!(out, "total,,{}", report.total_wh);
    out
}

pub fn mec_text(reports: &[CandidacyReport]) -> String {
    let mut out = String::new();
    for (position, report) in reports.iter().enumerate() {
        let verdict = if report.eligible { "eligible" } else { "ineligible" };
        let upgrades = if report.upgrades.is_empty() {
            "-".to_string()
        } else {
            report
                .upgrades
                .iter()
                .map(|u| u.token())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(
            out,
            "{} | {} | {} | {} | residual {} W | upgrades: {}",
            position + 1,
            report.site_id,
            report.classification.token(),
            verdict,
            report.residual_power_w,
            upgrades
        );
        for check in &report.criteria {
            let _ = writeln!(
                out,
                "    {}: {} ({} vs {})",
                check.criterion.token(),
                if check.passed { "pass" } else { "fail" },
                check.measured,
                check.required
            );
        }
    }
    out
}

pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}
