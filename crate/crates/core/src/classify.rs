//! Decision-table classification of business processes as core business
//! processes (CBPs).
//!
//! ```text
//!                  high risk       low risk        no scenarios
//! high priority    Certainly CBP   Can be CBP      Can be CBP
//! low priority     Can't be CBP    Can't be CBP    Certainly not CBP
//! ```
//!
//! The two "certainly" cells are final. The other two default to their
//! label (CBP and not CBP respectively) and yield to an architect override.

use std::fmt;

use serde::Serialize;

use crate::error::AnalysisError;
use crate::goal_tree::risk_by_process;
use crate::model::{AnalysisModel, ProcessRisk};
use crate::prioritization::PriorityTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PriorityClass {
    Low,
    High,
}

impl PriorityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PriorityClass::Low => "low",
            PriorityClass::High => "high",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Cell {
    #[serde(rename = "CertainlyCBP")]
    CertainlyCbp,
    #[serde(rename = "CanBeCBP")]
    CanBeCbp,
    #[serde(rename = "CantBeCBP")]
    CantBeCbp,
    #[serde(rename = "CertainlyNotCBP")]
    CertainlyNotCbp,
}

impl Cell {
    pub const ALL: [Cell; 4] = [
        Cell::CertainlyCbp,
        Cell::CanBeCbp,
        Cell::CantBeCbp,
        Cell::CertainlyNotCbp,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Cell::CertainlyCbp => "Certainly CBP",
            Cell::CanBeCbp => "Can be CBP",
            Cell::CantBeCbp => "Can't be CBP",
            Cell::CertainlyNotCbp => "Certainly not CBP",
        }
    }

    /// Whether an architect override can change the verdict of this cell.
    pub fn is_overridable(self) -> bool {
        matches!(self, Cell::CanBeCbp | Cell::CantBeCbp)
    }

    fn default_verdict(self) -> bool {
        matches!(self, Cell::CertainlyCbp | Cell::CanBeCbp)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The decision table itself.
pub fn table_cell(priority: PriorityClass, risk: ProcessRisk) -> Cell {
    match (priority, risk) {
        (PriorityClass::High, ProcessRisk::High) => Cell::CertainlyCbp,
        (PriorityClass::High, ProcessRisk::Low | ProcessRisk::None) => Cell::CanBeCbp,
        (PriorityClass::Low, ProcessRisk::High | ProcessRisk::Low) => Cell::CantBeCbp,
        (PriorityClass::Low, ProcessRisk::None) => Cell::CertainlyNotCbp,
    }
}

/// Outcome of applying an optional architect override to a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub is_cbp: bool,
    pub override_applied: bool,
    /// An override was given on a cell that does not accept one.
    pub override_ignored: bool,
}

pub fn resolve(cell: Cell, cbp_override: Option<bool>) -> Resolution {
    match cbp_override {
        Some(verdict) if cell.is_overridable() => Resolution {
            is_cbp: verdict,
            override_applied: true,
            override_ignored: false,
        },
        Some(_) => Resolution {
            is_cbp: cell.default_verdict(),
            override_applied: false,
            override_ignored: true,
        },
        None => Resolution {
            is_cbp: cell.default_verdict(),
            override_applied: false,
            override_ignored: false,
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdMode {
    /// Mean of all process priorities.
    Mean,
    /// Fixed value from the configuration.
    Absolute,
}

/// The high/low priority cut actually used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Threshold {
    pub value: f64,
    pub mode: ThresholdMode,
}

impl Threshold {
    /// Priorities at the threshold classify high. The comparison tolerates
    /// `epsilon` so a mean of identical priorities still counts as a tie.
    pub fn classify(&self, priority: f64, epsilon: f64) -> PriorityClass {
        if priority + epsilon >= self.value {
            PriorityClass::High
        } else {
            PriorityClass::Low
        }
    }
}

/// Threshold from configuration, else the mean process priority (0 when the
/// model has no processes).
pub fn priority_threshold(model: &AnalysisModel, table: &PriorityTable) -> Threshold {
    match model.config.priority_threshold {
        Some(value) => Threshold {
            value,
            mode: ThresholdMode::Absolute,
        },
        None => {
            let priorities = &table.process_priority;
            let value = if priorities.is_empty() {
                0.0
            } else {
                priorities.values().sum::<f64>() / priorities.len() as f64
            };
            Threshold {
                value,
                mode: ThresholdMode::Mean,
            }
        }
    }
}

pub fn priority_class(
    model: &AnalysisModel,
    table: &PriorityTable,
    process: &str,
) -> Result<PriorityClass, AnalysisError> {
    let priority = table
        .process(process)
        .ok_or_else(|| AnalysisError::UnknownProcess(process.to_owned()))?;
    Ok(priority_threshold(model, table).classify(priority, model.config.epsilon()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CbpClassification {
    pub process_id: String,
    pub priority: f64,
    pub priority_class: PriorityClass,
    pub risk_input: ProcessRisk,
    pub cell: Cell,
    /// Final verdict: is this process a CBP.
    pub resolved: bool,
    pub override_applied: bool,
    pub override_ignored: bool,
}

/// Classifies every process, in declaration order.
pub fn classify(model: &AnalysisModel, table: &PriorityTable) -> Vec<CbpClassification> {
    let threshold = priority_threshold(model, table);
    let epsilon = model.config.epsilon();
    let risks = risk_by_process(model);
    model
        .processes
        .iter()
        .map(|process| {
            let priority = table.process(&process.id).unwrap_or(0.0);
            let priority_class = threshold.classify(priority, epsilon);
            let risk_input = risks.get(&process.id).copied().unwrap_or(ProcessRisk::None);
            let cell = table_cell(priority_class, risk_input);
            let resolution = resolve(cell, process.cbp_override);
            CbpClassification {
                process_id: process.id.clone(),
                priority,
                priority_class,
                risk_input,
                cell,
                resolved: resolution.is_cbp,
                override_applied: resolution.override_applied,
                override_ignored: resolution.override_ignored,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{m1, m1_with_p2_risk, single_goal_model};
    use crate::prioritization::prioritize_all;

    fn classes(model: &AnalysisModel) -> Vec<(String, PriorityClass)> {
        let table = prioritize_all(model);
        classify(model, &table)
            .into_iter()
            .map(|c| (c.process_id, c.priority_class))
            .collect()
    }

    #[test]
    fn mean_threshold_on_m1() {
        let m = m1();
        let table = prioritize_all(&m);
        let t = priority_threshold(&m, &table);
        assert_eq!(t.mode, ThresholdMode::Mean);
        assert!((t.value - 2.0 / 3.0).abs() < 1e-9);
        use PriorityClass::*;
        assert_eq!(
            classes(&m),
            [("P1".into(), Low), ("P2".into(), High), ("P3".into(), Low)]
        );
    }

    #[test]
    fn absolute_threshold() {
        let mut m = m1();
        m.config.priority_threshold = Some(0.5);
        assert!(classes(&m).iter().all(|(_, c)| *c == PriorityClass::High));
    }

    #[test]
    fn single_process_is_high() {
        let m = single_goal_model(3, &[2]);
        assert_eq!(classes(&m), [("P1".into(), PriorityClass::High)]);
    }

    #[test]
    fn equal_priorities_all_tie_high() {
        // Three identical priorities whose float mean drifts above them.
        let p = 0.1;
        let mean = (p + p + p) / 3.0;
        assert!(mean > p);
        let t = Threshold {
            value: mean,
            mode: ThresholdMode::Mean,
        };
        assert_eq!(t.classify(p, 1e-9), PriorityClass::High);
    }

    #[test]
    fn lookup_of_unknown_process_fails() {
        let m = m1();
        let table = prioritize_all(&m);
        assert_eq!(priority_class(&m, &table, "P2"), Ok(PriorityClass::High));
        assert!(priority_class(&m, &table, "nope").is_err());
    }

    #[test]
    fn worked_example_cells() {
        let m = m1_with_p2_risk();
        let table = prioritize_all(&m);
        let rows = classify(&m, &table);
        assert_eq!(rows[1].cell, Cell::CertainlyCbp);
        assert!(rows[1].resolved);
        assert_eq!(rows[0].cell, Cell::CertainlyNotCbp);
        assert_eq!(rows[2].cell, Cell::CertainlyNotCbp);
        assert!(!rows[0].resolved && !rows[2].resolved);
    }

    #[test]
    fn override_on_cant_be_cell() {
        let r = resolve(Cell::CantBeCbp, Some(true));
        assert!(r.is_cbp && r.override_applied && !r.override_ignored);
    }

    #[test]
    fn override_on_certain_cell_is_ignored() {
        let r = resolve(Cell::CertainlyNotCbp, Some(true));
        assert!(!r.is_cbp && !r.override_applied && r.override_ignored);
        let r = resolve(Cell::CertainlyCbp, Some(false));
        assert!(r.is_cbp && r.override_ignored);
    }

    #[test]
    fn low_priority_high_risk_with_override_in_model() {
        let mut m = m1_with_p2_risk();
        // Move the risk onto P3 and force P3 in.
        m.goal_trees[0].goal = "G3".into();
        m.processes[2].cbp_override = Some(true);
        let table = prioritize_all(&m);
        let row = classify(&m, &table).remove(2);
        assert_eq!(row.priority_class, PriorityClass::Low);
        assert_eq!(row.risk_input, ProcessRisk::High);
        assert_eq!(row.cell, Cell::CantBeCbp);
        assert!(row.resolved && row.override_applied);
    }
}
