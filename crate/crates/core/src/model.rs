//! Domain types for a complete analysis model.
//!
//! The types double as the on-disk schema: every struct rejects unknown
//! keys, and optional fields default to empty. An [`AnalysisModel`] is
//! treated as immutable once parsed; all analysis functions take it by
//! shared reference.

use serde::{Deserialize, Serialize};

/// Tolerance used for every sum-to-one check unless the model overrides it.
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Strength at or above which two dependent processes are merged into one unit.
pub const DEFAULT_MERGE_THRESHOLD: f64 = 0.7;

/// A stakeholder group with a weight and the representatives that rate goals on its behalf.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StakeholderGroup {
    pub id: String,
    pub name: String,
    /// Weight of the group in [0, 1]; weights across all groups sum to 1.
    pub importance_coefficient: f64,
    pub representatives: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BusinessGoal {
    pub id: String,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<BusinessGoalScenario>,
}

/// Structured statement of a business goal. Descriptive only; nothing computes on it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BusinessGoalScenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal_source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal_subject: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal_object: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub environment: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal_statement: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<String>,
}

/// One cell of the rating matrix: how important `representative` finds `goal`.
///
/// Ratings are integers in `[1, N]` where `N` is the number of goals;
/// larger means more important. Stored as `i64` so out-of-range values
/// survive parsing and are reported by validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rating {
    pub representative: String,
    pub goal: String,
    pub rating: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BusinessProcess {
    pub id: String,
    pub name: String,
    /// Architect decision for the ambiguous decision-table cells.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cbp_override: Option<bool>,
}

/// Share of `goal`'s satisfaction attributed to `process`. Absent pairs mean 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportEntry {
    pub process: String,
    pub goal: String,
    pub coefficient: f64,
}

/// Undirected dependency between two processes, with strength in (0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DependencyEdge {
    pub a: String,
    pub b: String,
    pub strength: f64,
}

/// Refinement tree rooted at one business goal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoalTree {
    pub goal: String,
    /// Depth-1 nodes; their labels name quality attributes.
    #[serde(rename = "nodes", default)]
    pub children: Vec<QaNode>,
}

/// A node of a goal tree. Interior nodes carry children, leaves carry a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QaNode {
    pub label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<QaNode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<LeafScenario>,
}

impl QaNode {
    pub fn interior(label: impl Into<String>, children: Vec<QaNode>) -> Self {
        Self {
            label: label.into(),
            children,
            scenario: None,
        }
    }

    pub fn leaf(label: impl Into<String>, scenario: LeafScenario) -> Self {
        Self {
            label: label.into(),
            children: Vec::new(),
            scenario: Some(scenario),
        }
    }
}

/// Scenario data as written at a goal-tree leaf.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeafScenario {
    pub id: String,
    pub risk: RiskLevel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub six_part: Option<SixPart>,
    /// Narrows the scenario to these processes. Absent means every
    /// process supporting the tree's goal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub applies_to: Option<Vec<String>>,
}

impl LeafScenario {
    pub fn new(id: impl Into<String>, risk: RiskLevel) -> Self {
        Self {
            id: id.into(),
            risk,
            description: None,
            six_part: None,
            applies_to: None,
        }
    }
}

/// The conventional six-part quality attribute scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SixPart {
    pub source: String,
    pub stimulus: String,
    pub artifact: String,
    pub environment: String,
    pub response: String,
    pub response_measure: String,
}

/// Architect-assigned risk of a quality attribute scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RiskLevel {
    Low,
    High,
}

/// Risk of a process: the highest risk among its applicable scenarios,
/// or `None` when no scenario applies. Ordered `None < Low < High`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProcessRisk {
    None,
    Low,
    High,
}

impl From<RiskLevel> for ProcessRisk {
    fn from(level: RiskLevel) -> Self {
        match level {
            RiskLevel::Low => ProcessRisk::Low,
            RiskLevel::High => ProcessRisk::High,
        }
    }
}

impl ProcessRisk {
    pub fn as_str(self) -> &'static str {
        match self {
            ProcessRisk::None => "none",
            ProcessRisk::Low => "low",
            ProcessRisk::High => "high",
        }
    }
}

/// Tunables. Every field is optional in the document; the accessors return
/// the effective value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// Absolute high/low priority cut in (0, 1]. Unset means the mean of
    /// all process priorities.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priority_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub merge_threshold: Option<f64>,
    /// Number of units in the current release. Unset means unlimited.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<i64>,
}

impl AnalysisConfig {
    pub fn epsilon(&self) -> f64 {
        self.epsilon.unwrap_or(DEFAULT_EPSILON)
    }

    pub fn merge_threshold(&self) -> f64 {
        self.merge_threshold.unwrap_or(DEFAULT_MERGE_THRESHOLD)
    }

    /// Capacity as a unit count; `None` when unlimited. Non-positive values
    /// are rejected by validation and read as zero here.
    pub fn capacity(&self) -> Option<usize> {
        self.capacity.map(|c| usize::try_from(c).unwrap_or(0))
    }
}

/// The complete declarative input of one analysis.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisModel {
    #[serde(default)]
    pub stakeholder_groups: Vec<StakeholderGroup>,
    #[serde(default)]
    pub goals: Vec<BusinessGoal>,
    #[serde(default)]
    pub ratings: Vec<Rating>,
    #[serde(default)]
    pub processes: Vec<BusinessProcess>,
    #[serde(default)]
    pub support: Vec<SupportEntry>,
    #[serde(default)]
    pub goal_trees: Vec<GoalTree>,
    #[serde(default)]
    pub dependencies: Vec<DependencyEdge>,
    #[serde(default)]
    pub config: AnalysisConfig,
}

impl AnalysisModel {
    /// Number of business goals (`N`).
    pub fn goal_count(&self) -> usize {
        self.goals.len()
    }

    pub fn goal(&self, id: &str) -> Option<&BusinessGoal> {
        self.goals.iter().find(|g| g.id == id)
    }

    pub fn process(&self, id: &str) -> Option<&BusinessProcess> {
        self.processes.iter().find(|p| p.id == id)
    }

    pub fn tree_for(&self, goal: &str) -> Option<&GoalTree> {
        self.goal_trees.iter().find(|t| t.goal == goal)
    }

    /// Support coefficient of `process` on `goal`; absent pairs are 0.
    pub fn support_coefficient(&self, process: &str, goal: &str) -> f64 {
        self.support
            .iter()
            .filter(|s| s.process == process && s.goal == goal)
            .map(|s| s.coefficient)
            .sum()
    }
}
