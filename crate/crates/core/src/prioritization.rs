//! Goal and process prioritization.
//!
//! A goal's importance degree is the stakeholder-weighted mean of each
//! group's average rating, so it lies in `[1, N]`. Its priority divides
//! that by `N` exactly once, landing in `[1/N, 1]`. A process's priority is
//! the support-weighted sum of the priorities of the goals it supports.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::AnalysisError;
use crate::model::AnalysisModel;

/// Computed priorities for every goal and process of a model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PriorityTable {
    pub goal_importance: BTreeMap<String, f64>,
    pub goal_priority: BTreeMap<String, f64>,
    pub process_priority: BTreeMap<String, f64>,
    /// Goals no process supports, in declaration order.
    pub missing_goals: Vec<String>,
    /// Processes that support no goal, in declaration order.
    pub useless_processes: Vec<String>,
}

impl PriorityTable {
    pub fn process(&self, id: &str) -> Option<f64> {
        self.process_priority.get(id).copied()
    }

    pub fn goal(&self, id: &str) -> Option<f64> {
        self.goal_priority.get(id).copied()
    }
}

struct RatingLookup<'a> {
    ratings: HashMap<(&'a str, &'a str), i64>,
}

impl<'a> RatingLookup<'a> {
    fn new(model: &'a AnalysisModel) -> Self {
        let ratings = model
            .ratings
            .iter()
            .map(|r| ((r.representative.as_str(), r.goal.as_str()), r.rating))
            .collect();
        Self { ratings }
    }

    fn importance(&self, model: &AnalysisModel, goal: &str) -> f64 {
        model
            .stakeholder_groups
            .iter()
            .map(|group| {
                let given: Vec<i64> = group
                    .representatives
                    .iter()
                    .filter_map(|rep| self.ratings.get(&(rep.as_str(), goal)).copied())
                    .collect();
                if given.is_empty() {
                    return 0.0;
                }
                let mean = given.iter().sum::<i64>() as f64 / given.len() as f64;
                mean * group.importance_coefficient
            })
            .sum()
    }
}

fn priority_from_importance(importance: f64, goal_count: usize) -> f64 {
    importance / goal_count as f64
}

/// Weighted importance degree of one goal, in `[1, N]` for a valid model.
pub fn goal_importance_degree(model: &AnalysisModel, goal: &str) -> Result<f64, AnalysisError> {
    model
        .goal(goal)
        .ok_or_else(|| AnalysisError::UnknownGoal(goal.to_owned()))?;
    Ok(RatingLookup::new(model).importance(model, goal))
}

/// Priority of one goal in `[1/N, 1]`.
pub fn goal_priority(model: &AnalysisModel, goal: &str) -> Result<f64, AnalysisError> {
    let importance = goal_importance_degree(model, goal)?;
    Ok(priority_from_importance(importance, model.goal_count()))
}

/// Priority of one process in `[0, 1]`; zero iff it supports no goal.
pub fn process_priority(model: &AnalysisModel, process: &str) -> Result<f64, AnalysisError> {
    model
        .process(process)
        .ok_or_else(|| AnalysisError::UnknownProcess(process.to_owned()))?;
    let table = prioritize_all(model);
    Ok(table.process_priority[process])
}

/// Computes the full priority table in one pass over the model.
pub fn prioritize_all(model: &AnalysisModel) -> PriorityTable {
    let lookup = RatingLookup::new(model);
    let n = model.goal_count();

    let mut goal_importance = BTreeMap::new();
    let mut goal_priority = BTreeMap::new();
    for goal in &model.goals {
        let importance = lookup.importance(model, &goal.id);
        goal_importance.insert(goal.id.clone(), importance);
        goal_priority.insert(goal.id.clone(), priority_from_importance(importance, n));
    }

    let mut process_priority: BTreeMap<String, f64> = model
        .processes
        .iter()
        .map(|p| (p.id.clone(), 0.0))
        .collect();
    let mut column_sum: HashMap<&str, f64> = HashMap::new();
    let mut row_sum: HashMap<&str, f64> = HashMap::new();
    for entry in &model.support {
        *column_sum.entry(&entry.goal).or_default() += entry.coefficient;
        *row_sum.entry(&entry.process).or_default() += entry.coefficient;
        if let (Some(priority), Some(slot)) = (
            goal_priority.get(&entry.goal),
            process_priority.get_mut(&entry.process),
        ) {
            *slot += entry.coefficient * priority;
        }
    }

    let missing_goals = model
        .goals
        .iter()
        .filter(|g| column_sum.get(g.id.as_str()).copied().unwrap_or(0.0) == 0.0)
        .map(|g| g.id.clone())
        .collect();
    let useless_processes = model
        .processes
        .iter()
        .filter(|p| row_sum.get(p.id.as_str()).copied().unwrap_or(0.0) == 0.0)
        .map(|p| p.id.clone())
        .collect();

    PriorityTable {
        goal_importance,
        goal_priority,
        process_priority,
        missing_goals,
        useless_processes,
    }
}
