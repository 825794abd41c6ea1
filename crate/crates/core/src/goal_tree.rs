//! Goal trees: per-goal refinement trees whose leaves are risk-annotated
//! quality attribute scenarios, and the process risk derived from them.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::AnalysisError;
use crate::model::{
    AnalysisModel, GoalTree, LeafScenario, ProcessRisk, QaNode, RiskLevel, SixPart,
};

/// A leaf scenario together with where it sits in its goal tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QualityAttributeScenario {
    pub id: String,
    pub goal: String,
    /// Label of the depth-1 ancestor.
    pub quality_attribute: String,
    /// Interior labels from the quality attribute down to the leaf's parent,
    /// joined by `/`. A leaf hanging directly off the root uses its own label.
    pub path: String,
    pub risk: RiskLevel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub six_part: Option<SixPart>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub applies_to: Option<Vec<String>>,
}

impl QualityAttributeScenario {
    fn from_leaf(goal: &str, ancestors: &[&str], own_label: &str, leaf: &LeafScenario) -> Self {
        let (quality_attribute, path) = match ancestors.first() {
            Some(attribute) => (attribute.to_string(), ancestors.join("/")),
            None => (own_label.to_string(), own_label.to_string()),
        };
        Self {
            id: leaf.id.clone(),
            goal: goal.to_string(),
            quality_attribute,
            path,
            risk: leaf.risk,
            description: leaf.description.clone(),
            six_part: leaf.six_part.clone(),
            applies_to: leaf.applies_to.clone(),
        }
    }

    /// Whether this scenario attaches to `process`, given that the process
    /// supports the tree's goal.
    pub fn applies_to_process(&self, process: &str) -> bool {
        match &self.applies_to {
            Some(targets) => targets.iter().any(|t| t == process),
            None => true,
        }
    }
}

fn walk<'a>(
    goal: &str,
    node: &'a QaNode,
    ancestors: &mut Vec<&'a str>,
    out: &mut Vec<QualityAttributeScenario>,
    first_error: &mut Option<AnalysisError>,
) {
    if let Some(leaf) = &node.scenario {
        if node.children.is_empty() {
            out.push(QualityAttributeScenario::from_leaf(
                goal,
                ancestors,
                &node.label,
                leaf,
            ));
            return;
        }
        if first_error.is_none() {
            let mut path = ancestors.join("/");
            if !path.is_empty() {
                path.push('/');
            }
            path.push_str(&node.label);
            *first_error = Some(AnalysisError::MixedNode { path });
        }
    }
    ancestors.push(&node.label);
    for child in &node.children {
        walk(goal, child, ancestors, out, first_error);
    }
    ancestors.pop();
}

fn collect(tree: &GoalTree) -> (Vec<QualityAttributeScenario>, Option<AnalysisError>) {
    let mut out = Vec::new();
    let mut error = None;
    let mut ancestors = Vec::new();
    for node in &tree.children {
        walk(&tree.goal, node, &mut ancestors, &mut out, &mut error);
    }
    (out, error)
}

/// All leaf scenarios of `tree` in depth-first declaration order.
///
/// A node carrying both children and a scenario is a structural error.
pub fn extract_scenarios(tree: &GoalTree) -> Result<Vec<QualityAttributeScenario>, AnalysisError> {
    match collect(tree) {
        (_, Some(err)) => Err(err),
        (scenarios, None) => Ok(scenarios),
    }
}

/// Scenarios attached to `process` through the goals it supports, in goal
/// declaration order. A scenario id shared by several trees appears once.
pub fn scenarios_for_process(
    model: &AnalysisModel,
    process: &str,
) -> Vec<QualityAttributeScenario> {
    let mut seen = HashSet::new();
    let mut result = Vec::new();
    for goal in &model.goals {
        if model.support_coefficient(process, &goal.id) <= 0.0 {
            continue;
        }
        for tree in model.goal_trees.iter().filter(|t| t.goal == goal.id) {
            let (scenarios, _) = collect(tree);
            for scenario in scenarios {
                if scenario.applies_to_process(process) && seen.insert(scenario.id.clone()) {
                    result.push(scenario);
                }
            }
        }
    }
    result
}

/// Highest risk among the scenarios attached to `process`; `None` when the
/// process maps to no quality attribute scenario at all.
pub fn process_risk(model: &AnalysisModel, process: &str) -> ProcessRisk {
    scenarios_for_process(model, process)
        .iter()
        .map(|s| ProcessRisk::from(s.risk))
        .max()
        .unwrap_or(ProcessRisk::None)
}

/// [`process_risk`] for every declared process.
pub fn risk_by_process(model: &AnalysisModel) -> BTreeMap<String, ProcessRisk> {
    model
        .processes
        .iter()
        .map(|p| (p.id.clone(), process_risk(model, &p.id)))
        .collect()
}
