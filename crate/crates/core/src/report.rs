//! Pipeline orchestration and report rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::classify::{
    classify, priority_threshold, table_cell, CbpClassification, PriorityClass, ThresholdMode,
};
use crate::model::{AnalysisModel, ProcessRisk};
use crate::prioritization::{prioritize_all, PriorityTable};
use crate::release::{select_release, ReleasePlan};
use crate::validate::{validate, ValidationReport};

/// Fixed disclosure of how the engine fills the method's open choices.
pub const METHOD_NOTES: [&str; 6] = [
    "Goal importance degree is the stakeholder-weighted mean of group-average ratings, in [1, N]; goal priority divides it by N once, in [1/N, 1].",
    "Process priority is the support-weighted sum of goal priorities.",
    "A process is high priority when its priority is at or above the threshold; the default threshold is the mean of all process priorities.",
    "'Can be CBP' defaults to CBP and 'Can't be CBP' defaults to not CBP; an architect override (cbp_override) changes either, and is ignored on the two 'Certainly' cells.",
    "Processes joined by dependencies with strength at or above the merge threshold ship as one unit, with the highest member priority and risk.",
    "Units are released by category (1 high priority/high risk, 2 high priority/low risk, 3 low priority/high risk, 4 low priority/low risk), then priority, then unit id. Category 3 is an extension of the usual three-category release scheme, placed after both high-priority categories and marked \"(extension)\" in reports.",
];

/// Effective configuration, including every value that was defaulted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub epsilon: f64,
    pub priority_threshold: f64,
    pub threshold_mode: ThresholdMode,
    pub merge_threshold: f64,
    /// `None` means unlimited.
    pub capacity: Option<usize>,
    /// Keys whose value came from the built-in defaults.
    pub defaulted: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub validation: ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub priorities: Option<PriorityTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classifications: Option<Vec<CbpClassification>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<ReleasePlan>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config_echo: Option<ConfigEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method_notes: Option<Vec<&'static str>>,
}

/// Report sections a caller may ask for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Validation,
    Priorities,
    Classifications,
    Plan,
}

impl AnalysisReport {
    /// 0 on success, 1 when validation found errors.
    pub fn exit_code(&self) -> i32 {
        if self.validation.has_errors() {
            1
        } else {
            0
        }
    }

    /// Keeps only the requested sections. The validation section, the
    /// configuration echo and the method notes always stay.
    pub fn restricted(mut self, sections: &[Section]) -> Self {
        if !sections.contains(&Section::Priorities) {
            self.priorities = None;
        }
        if !sections.contains(&Section::Classifications) {
            self.classifications = None;
        }
        if !sections.contains(&Section::Plan) {
            self.plan = None;
        }
        if sections == [Section::Validation] {
            self.config_echo = None;
            self.method_notes = None;
        }
        self
    }
}

/// Runs validation, prioritization, classification and release planning.
/// Validation errors stop the run with only the validation section filled.
pub fn run_pipeline(model: &AnalysisModel) -> AnalysisReport {
    let validation = validate(model);
    if validation.has_errors() {
        return AnalysisReport {
            validation,
            priorities: None,
            classifications: None,
            plan: None,
            config_echo: None,
            method_notes: None,
        };
    }

    let table = prioritize_all(model);
    let classifications = classify(model, &table);
    let plan = select_release(model, &table, &classifications);
    let config_echo = echo_config(model, &table);

    AnalysisReport {
        validation,
        priorities: Some(table),
        classifications: Some(classifications),
        plan: Some(plan),
        config_echo: Some(config_echo),
        method_notes: Some(METHOD_NOTES.to_vec()),
    }
}

fn echo_config(model: &AnalysisModel, table: &PriorityTable) -> ConfigEcho {
    let cfg = &model.config;
    let threshold = priority_threshold(model, table);
    let mut defaulted = Vec::new();
    if cfg.epsilon.is_none() {
        defaulted.push("epsilon");
    }
    if cfg.priority_threshold.is_none() {
        defaulted.push("priority_threshold");
    }
    if cfg.merge_threshold.is_none() {
        defaulted.push("merge_threshold");
    }
    if cfg.capacity.is_none() {
        defaulted.push("capacity");
    }
    ConfigEcho {
        epsilon: cfg.epsilon(),
        priority_threshold: threshold.value,
        threshold_mode: threshold.mode,
        merge_threshold: cfg.merge_threshold(),
        capacity: cfg.capacity(),
        defaulted,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown format `{0}`, expected `text` or `json`")]
pub struct UnknownFormat(pub String);

impl FromStr for Format {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(UnknownFormat(other.to_string())),
        }
    }
}

pub fn render(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut out =
                serde_json::to_string_pretty(report).expect("report serialization cannot fail");
            out.push('\n');
            out
        }
        Format::Text => render_text(report),
    }
}

/// Left-aligned columns separated by two spaces.
fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = widths[c] - cell.chars().count();
            line.extend(std::iter::repeat_n(' ', pad));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn heading(out: &mut String, title: &str) {
    if !out.is_empty() {
        out.push('\n');
    }
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "{}", "-".repeat(title.len()));
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".to_string()
    } else {
        items.join(", ")
    }
}

fn fixed(x: f64) -> String {
    format!("{x:.6}")
}

fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();

    let v = &report.validation;
    heading(&mut out, "Validation");
    let _ = writeln!(
        out,
        "{} error(s), {} warning(s)",
        v.error_count, v.warning_count
    );
    if !v.violations.is_empty() {
        let rows: Vec<Vec<String>> = v
            .violations
            .iter()
            .map(|x| {
                vec![
                    format!(
                        "  {}",
                        if x.severity == crate::validate::Severity::Error {
                            "error"
                        } else {
                            "warning"
                        }
                    ),
                    x.code.to_string(),
                    x.location.clone(),
                    x.message.clone(),
                ]
            })
            .collect();
        out.push_str(&columns(&rows));
    }

    if let Some(table) = &report.priorities {
        heading(&mut out, "Goal priorities");
        let mut rows = vec![vec!["goal".into(), "importance".into(), "priority".into()]];
        for (id, importance) in &table.goal_importance {
            rows.push(vec![
                id.clone(),
                fixed(*importance),
                fixed(table.goal_priority[id]),
            ]);
        }
        out.push_str(&columns(&rows));

        heading(&mut out, "Process priorities");
        let mut rows = vec![vec!["process".into(), "priority".into()]];
        for (id, priority) in &table.process_priority {
            rows.push(vec![id.clone(), fixed(*priority)]);
        }
        out.push_str(&columns(&rows));
        let _ = writeln!(out, "missing goals: {}", list_or_none(&table.missing_goals));
        let _ = writeln!(
            out,
            "useless processes: {}",
            list_or_none(&table.useless_processes)
        );
    }

    if let Some(rows) = &report.classifications {
        render_classifications(&mut out, report, rows);
    }

    if let Some(plan) = &report.plan {
        render_plan(&mut out, plan);
    }

    if let Some(echo) = &report.config_echo {
        heading(&mut out, "Configuration");
        let tag = |key: &str| {
            if echo.defaulted.contains(&key) {
                " (default)"
            } else {
                ""
            }
        };
        let mode = match echo.threshold_mode {
            ThresholdMode::Mean => "mean of process priorities",
            ThresholdMode::Absolute => "absolute",
        };
        let capacity = echo
            .capacity
            .map_or_else(|| "unlimited".to_string(), |c| c.to_string());
        let rows = vec![
            vec![
                "epsilon".into(),
                format!("{:e}{}", echo.epsilon, tag("epsilon")),
            ],
            vec![
                "priority threshold".into(),
                format!("{} ({mode})", fixed(echo.priority_threshold)),
            ],
            vec![
                "merge threshold".into(),
                format!("{}{}", echo.merge_threshold, tag("merge_threshold")),
            ],
            vec!["capacity".into(), format!("{capacity}{}", tag("capacity"))],
        ];
        out.push_str(&columns(&rows));
    }

    if let Some(notes) = &report.method_notes {
        heading(&mut out, "Method notes");
        for note in notes {
            let _ = writeln!(out, "- {note}");
        }
    }

    out
}

fn render_classifications(out: &mut String, report: &AnalysisReport, rows: &[CbpClassification]) {
    heading(out, "CBP classification");
    if let Some(echo) = &report.config_echo {
        let mode = match echo.threshold_mode {
            ThresholdMode::Mean => "mean of process priorities",
            ThresholdMode::Absolute => "absolute",
        };
        let _ = writeln!(
            out,
            "threshold: {} ({mode})",
            fixed(echo.priority_threshold)
        );
    }
    let mut table = vec![vec![
        " ".to_string(),
        "process".into(),
        "priority".into(),
        "class".into(),
        "risk".into(),
        "cell".into(),
        "CBP".into(),
    ]];
    for row in rows {
        table.push(vec![
            if row.override_applied { "*" } else { " " }.to_string(),
            row.process_id.clone(),
            fixed(row.priority),
            row.priority_class.as_str().into(),
            row.risk_input.as_str().into(),
            row.cell.label().into(),
            if row.resolved { "yes" } else { "no" }.into(),
        ]);
    }
    out.push_str(&columns(&table));
    if rows.iter().any(|r| r.override_applied) {
        let _ = writeln!(out, "(* = architect override applied)");
    }
    for row in rows.iter().filter(|r| r.override_ignored) {
        let _ = writeln!(
            out,
            "warning: override on {} ignored; \"{}\" is final",
            row.process_id,
            row.cell.label()
        );
    }

    heading(out, "Decision grid");
    let risks = [
        (ProcessRisk::High, "high risk"),
        (ProcessRisk::Low, "low risk"),
        (ProcessRisk::None, "no scenarios"),
    ];
    let mut grid = vec![std::iter::once(String::new())
        .chain(risks.iter().map(|(_, label)| label.to_string()))
        .collect::<Vec<_>>()];
    for (class, label) in [
        (PriorityClass::High, "high priority"),
        (PriorityClass::Low, "low priority"),
    ] {
        let mut line = vec![label.to_string()];
        for (risk, _) in risks {
            let members: Vec<String> = rows
                .iter()
                .filter(|r| r.priority_class == class && r.risk_input == risk)
                .map(|r| r.process_id.clone())
                .collect();
            let who = if members.is_empty() {
                "-".to_string()
            } else {
                members.join(", ")
            };
            line.push(format!("{}: {who}", table_cell(class, risk).label()));
        }
        grid.push(line);
    }
    out.push_str(&columns(&grid));
}

fn render_plan(out: &mut String, plan: &ReleasePlan) {
    heading(out, "Release plan");
    let _ = writeln!(out, "groups:");
    for group in &plan.groups {
        let _ = writeln!(out, "  {}: {}", group.id, group.members.join(", "));
    }
    let mut rows = vec![vec![
        "#".to_string(),
        "unit".into(),
        "group".into(),
        "category".into(),
        "priority".into(),
        "risk".into(),
        "release".into(),
    ]];
    for (i, u) in plan.units.iter().enumerate() {
        let category = if u.category.is_extension() {
            format!("{} (extension)", u.category.number())
        } else {
            u.category.number().to_string()
        };
        rows.push(vec![
            (i + 1).to_string(),
            u.unit.id.clone(),
            u.unit.group_id.clone(),
            category,
            fixed(u.unit.priority),
            u.unit.risk.as_str().into(),
            if i < plan.selected.len() {
                "selected"
            } else {
                "backlog"
            }
            .into(),
        ]);
    }
    out.push_str(&columns(&rows));
    let _ = writeln!(out, "selected: {}", list_or_none(&plan.selected));
    let _ = writeln!(out, "backlog: {}", list_or_none(&plan.backlog));
}
