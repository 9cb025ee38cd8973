//! Markdown rendering of report values.

use std::fmt::Write;

use serde_json::Value;
use toric_nl::nl::HypothesisReport;
use toric_nl::wps::ScanEntry;

use crate::{RunConfig, SCHEMA_VERSION};

const FENCE_OPEN: &str = "```json run_config";

fn hypotheses(v: &Value) -> Option<String> {
    serde_json::from_value::<HypothesisReport>(v.clone()).ok().map(|r| r.to_markdown())
}

fn footer(cfg: &RunConfig) -> String {
    format!(
        "\n---\nschema_version: {SCHEMA_VERSION}\n\n{FENCE_OPEN}\n{}\n```\n",
        serde_json::to_string_pretty(cfg).expect("serializable")
    )
}

/// The run configuration block written by [`footer`].
pub fn fenced_config(text: &str) -> Option<String> {
    let start = text.find(FENCE_OPEN)? + FENCE_OPEN.len();
    let end = start + text[start..].find("\n```")?;
    Some(text[start..end].to_string())
}

pub fn markdown(cfg: &RunConfig, report: &Value) -> String {
    let mut s = String::new();
    let variety = report["variety"].as_str().unwrap_or_default();
    match report["kind"].as_str() {
        Some("cohomology") => {
            let _ = writeln!(s, "# Cohomology on {variety}\n\ndivisor: {}\n", report["divisor"]);
            let _ = writeln!(s, "| h^0 | h^1 | h^2 | h^3 | chi |\n|---|---|---|---|---|");
            let h = &report["h"];
            let _ = writeln!(s, "| {} | {} | {} | {} | {} |", h[0], h[1], h[2], h[3], report["chi"]);
        }
        Some("check") => {
            let _ = writeln!(s, "# Check on {variety}\n\ndivisor: {}\n", report["divisor"]);
            if let Some(b) = report.get("upper_bound") {
                let _ = writeln!(s, "upper bound: {b}\n");
            }
            s += &hypotheses(&report["hypotheses"]).unwrap_or_default();
        }
        Some("detcurve") => {
            let _ = writeln!(s, "# Determinantal curve on {variety}\n");
            let _ = writeln!(s, "H: {}, k: {}, L: {}\n", report["divisor"], report["k"], report["L"]);
            let inv = &report["invariants"];
            let _ = writeln!(s, "- degree: {}", inv["degree"].as_str().unwrap_or("undefined"));
            if let Some(n) = inv.get("degree_note").and_then(Value::as_str) {
                let _ = writeln!(s, "- degree note: {n}");
            }
            let _ = writeln!(s, "- {}: {}", inv["genus_label"].as_str().unwrap_or("genus"), inv["genus"]);
            let a = &report["avoidance"];
            let verdict = if a["vacuous"] == Value::Bool(true) {
                "vacuous (smooth)"
            } else if a["pass"] == Value::Bool(true) {
                "pass"
            } else {
                "FAIL"
            };
            let _ =
                writeln!(s, "- avoidance: {verdict} (p = {}, trials = {}, seed = {})", a["p"], a["trials"], a["seed"]);
            for f in a["fail_points"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    s,
                    "  - trial {} (seed {}), cone {}: minors {} vanish at {}",
                    f["trial"], f["trial_seed"], f["cone"], f["vanishing"], f["point"]
                );
            }
            if let Some(h) = hypotheses(&report["hypotheses"]) {
                s += "\n";
                s += &h;
            }
        }
        Some("catalog") => {
            let _ =
                writeln!(s, "# Catalog\n\n| name | rays | rank Cl | named divisors | basis |\n|---|---|---|---|---|");
            for v in report["varieties"].as_array().into_iter().flatten() {
                let names = |k: &str| -> String {
                    v[k].as_array().into_iter().flatten().filter_map(Value::as_str).collect::<Vec<_>>().join(", ")
                };
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} |",
                    v["name"].as_str().unwrap_or_default(),
                    v["rays"],
                    v["class_group_rank"],
                    names("named"),
                    names("basis")
                );
            }
        }
        _ => s += &serde_json::to_string_pretty(report).expect("serializable"),
    }
    s + &footer(cfg)
}

pub fn scan_markdown(cfg: &RunConfig, entries: &[ScanEntry], summary: &Value) -> String {
    let mut s =
        String::from("# Weight tuples with delta < sigma\n\n| weights | delta | sigma | family |\n|---|---|---|---|\n");
    for e in entries {
        let _ = writeln!(s, "| {:?} | {} | {} | {} |", e.weights.0, e.delta, e.sigma, e.family);
    }
    let sm = &summary["summary"];
    let _ = writeln!(s, "\ntotal: {}, UNEXPECTED: {}", sm["total"], sm["unexpected"]);
    s + &footer(cfg)
}
