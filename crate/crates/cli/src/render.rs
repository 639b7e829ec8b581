//! Text renderings of reports, sweep tables and calibration results.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::ValueEnum;
use dunwoody::report::{AnalysisReport, CalibrationItem, SweepRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

pub fn emit(format: Format, text: Result<String, String>) -> ExitCode {
    match text {
        Ok(t) => {
            print!("{t}");
            if format == Format::Json {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(super::EXIT_INTERNAL)
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value).map_err(|e| e.to_string())
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| e.to_string())?;
    for row in rows {
        w.write_record(row).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn md_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for row in rows {
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
    out
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".into(), T::to_string)
}

/// `"closed"`, or runs of equal genera such as `"2 × genus 2"`.
pub fn boundary_text(genera: &[usize]) -> String {
    if genera.is_empty() {
        return "closed".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < genera.len() {
        let g = genera[i];
        let run = genera[i..].iter().take_while(|&&x| x == g).count();
        parts.push(format!("{run} × genus {g}"));
        i += run;
    }
    parts.join(", ")
}

const REPORT_HEADER: &[&str] = &[
    "a",
    "b",
    "c",
    "n",
    "r",
    "s",
    "d",
    "genus",
    "csecond",
    "c",
    "ctilde",
    "mode",
    "h1",
    "boundary",
    "bound",
    "engine",
    "lower",
    "lower_applicable",
    "checks",
];

fn report_row(r: &AnalysisReport) -> Vec<String> {
    let p = &r.params;
    let passed = r.checks.iter().filter(|c| c.pass).count();
    vec![
        p.a.to_string(),
        p.b.to_string(),
        p.c.to_string(),
        p.n.to_string(),
        p.r.to_string(),
        p.s.to_string(),
        p.d.to_string(),
        r.genus.to_string(),
        r.systems.csecond.label.as_str().to_string(),
        r.complexity.c.to_string(),
        r.complexity.ctilde.to_string(),
        format!("{:?}", r.complexity.mode).to_lowercase(),
        r.homology.group.clone(),
        boundary_text(&r.boundary),
        opt(&r.bounds.upper_formula),
        r.bounds.upper_engine.to_string(),
        format!("{:.4}", r.bounds.lower),
        r.bounds.lower_applicable.to_string(),
        format!("{passed}/{}", r.checks.len()),
    ]
}

pub fn report(format: Format, r: &AnalysisReport) -> Result<String, String> {
    match format {
        Format::Json => json(r),
        Format::Csv => csv_table(REPORT_HEADER, &[report_row(r)]),
        Format::Md => Ok(report_md(r)),
    }
}

fn report_md(r: &AnalysisReport) -> String {
    let p = &r.params;
    let e = &r.equivalent;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# H({},{},{},{},{},{})  d = {}\n",
        p.a, p.b, p.c, p.n, p.r, p.s, p.d
    );
    if let Some(f) = &r.family {
        let fam: Vec<String> = f.family.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "family: {} ({})\n", f.tag.as_str(), fam.join(", "));
    }
    let rows = vec![
        vec![
            "equivalent".into(),
            format!("H({},{},{},{},{},{})", e.a, e.b, e.c, e.n, e.r, e.s),
        ],
        vec!["genus".into(), r.genus.to_string()],
        vec![
            "C′".into(),
            format!(
                "{} curves, {}",
                r.systems.cprime.count,
                r.systems.cprime.label.as_str()
            ),
        ],
        vec![
            "C″".into(),
            format!(
                "{} curves, {}",
                r.systems.csecond.count,
                r.systems.csecond.label.as_str()
            ),
        ],
        vec!["boundary".into(), boundary_text(&r.boundary)],
        vec!["c(H)".into(), r.complexity.c.to_string()],
        vec![
            "c̃(H)".into(),
            format!("{} ({:?})", r.complexity.ctilde, r.complexity.mode).to_lowercase(),
        ],
        vec![
            "witness".into(),
            format!(
                "forest {:?}, region {}, n(R) = {}, Σn(γ) = {}",
                r.complexity.witness.forest,
                r.complexity.witness.region,
                r.complexity.witness.n_r,
                r.complexity.witness.sum_n_gamma
            ),
        ],
        vec!["H1".into(), r.homology.group.clone()],
        vec!["bound".into(), opt(&r.bounds.upper_formula)],
        vec!["engine".into(), r.bounds.upper_engine.to_string()],
        vec![
            "lower".into(),
            format!(
                "{:.4} (ceil {}, {})",
                r.bounds.lower,
                r.bounds.lower_ceil,
                if r.bounds.lower_applicable {
                    "applicable"
                } else {
                    "informational"
                }
            ),
        ],
        vec![
            "lower formula".into(),
            r.bounds
                .lower_formula
                .map_or_else(|| "-".into(), |v| format!("{v:.4}")),
        ],
    ];
    out.push_str(&md_table(&["field", "value"], &rows));
    let curves: Vec<Vec<String>> = r
        .curves
        .iter()
        .map(|c| vec![c.id.clone(), c.system.clone(), c.crossings.to_string()])
        .collect();
    out.push('\n');
    out.push_str(&md_table(&["curve", "system", "crossings"], &curves));
    if !r.checks.is_empty() {
        let checks: Vec<Vec<String>> = r
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.name.clone(),
                    c.expected.clone(),
                    c.actual.clone(),
                    if c.pass { "pass" } else { "FAIL" }.into(),
                ]
            })
            .collect();
        out.push('\n');
        out.push_str(&md_table(
            &["check", "expected", "actual", "result"],
            &checks,
        ));
    }
    for f in &r.flags {
        let _ = writeln!(out, "\n> {f}");
    }
    out
}

const SWEEP_HEADER: &[&str] = &[
    "a",
    "b",
    "c",
    "n",
    "r",
    "s",
    "class",
    "c_h",
    "ctilde",
    "formula",
    "formula_match",
    "h1",
    "error",
];

fn sweep_row(r: &SweepRow) -> Vec<String> {
    let mut row: Vec<String> = r.input.iter().map(i64::to_string).collect();
    row.extend([
        r.class
            .map_or_else(|| "-".into(), |c| c.as_str().to_string()),
        opt(&r.c),
        opt(&r.ctilde),
        r.formula.clone(),
        opt(&r.formula_match),
        opt(&r.h1),
        r.error.clone().unwrap_or_default(),
    ]);
    row
}

pub fn sweep(format: Format, rows: &[SweepRow]) -> Result<String, String> {
    let table: Vec<Vec<String>> = rows.iter().map(sweep_row).collect();
    match format {
        Format::Json => json(&rows),
        Format::Csv => csv_table(SWEEP_HEADER, &table),
        Format::Md => Ok(md_table(SWEEP_HEADER, &table)),
    }
}

pub fn calibration(format: Format, items: &[CalibrationItem]) -> Result<String, String> {
    let table: Vec<Vec<String>> = items
        .iter()
        .map(|i| {
            vec![
                i.name.clone(),
                if i.pass { "pass" } else { "FAIL" }.into(),
                i.detail.clone(),
            ]
        })
        .collect();
    let header = &["item", "result", "detail"];
    match format {
        Format::Json => json(&items),
        Format::Csv => csv_table(header, &table),
        Format::Md => {
            let passed = items.iter().filter(|i| i.pass).count();
            let mut out = md_table(header, &table);
            let _ = writeln!(out, "\n{passed}/{} passed", items.len());
            Ok(out)
        }
    }
}
