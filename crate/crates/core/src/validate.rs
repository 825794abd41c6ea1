//! Whole-model validation.
//!
//! Every invariant of the model maps to one [`ViolationCode`]. Nothing here
//! fails: problems become report entries, sorted by code and location so
//! identical models yield identical reports.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::model::{AnalysisModel, GoalTree, LeafScenario, QaNode, DEFAULT_EPSILON};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationCode {
    ConfigRange,
    DependencyDuplicate,
    DependencySelfLoop,
    DependencyStrengthRange,
    GoalDuplicateId,
    GoalUnsupported,
    GroupDuplicateId,
    GroupNoRepresentatives,
    GroupWeightRange,
    GroupWeightSum,
    ProcessDuplicateId,
    ProcessUnsupporting,
    RatingDuplicate,
    RatingMissing,
    RatingRange,
    RepresentativeDuplicate,
    ScenarioAppliesTo,
    ScenarioDuplicateId,
    SupportDuplicate,
    SupportRange,
    SupportSum,
    TreeDuplicate,
    TreeNodeShape,
    UnknownReference,
}

impl ViolationCode {
    pub const ALL: [ViolationCode; 24] = [
        ViolationCode::ConfigRange,
        ViolationCode::DependencyDuplicate,
        ViolationCode::DependencySelfLoop,
        ViolationCode::DependencyStrengthRange,
        ViolationCode::GoalDuplicateId,
        ViolationCode::GoalUnsupported,
        ViolationCode::GroupDuplicateId,
        ViolationCode::GroupNoRepresentatives,
        ViolationCode::GroupWeightRange,
        ViolationCode::GroupWeightSum,
        ViolationCode::ProcessDuplicateId,
        ViolationCode::ProcessUnsupporting,
        ViolationCode::RatingDuplicate,
        ViolationCode::RatingMissing,
        ViolationCode::RatingRange,
        ViolationCode::RepresentativeDuplicate,
        ViolationCode::ScenarioAppliesTo,
        ViolationCode::ScenarioDuplicateId,
        ViolationCode::SupportDuplicate,
        ViolationCode::SupportRange,
        ViolationCode::SupportSum,
        ViolationCode::TreeDuplicate,
        ViolationCode::TreeNodeShape,
        ViolationCode::UnknownReference,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::ConfigRange => "CONFIG_RANGE",
            ViolationCode::DependencyDuplicate => "DEPENDENCY_DUPLICATE",
            ViolationCode::DependencySelfLoop => "DEPENDENCY_SELF_LOOP",
            ViolationCode::DependencyStrengthRange => "DEPENDENCY_STRENGTH_RANGE",
            ViolationCode::GoalDuplicateId => "GOAL_DUPLICATE_ID",
            ViolationCode::GoalUnsupported => "GOAL_UNSUPPORTED",
            ViolationCode::GroupDuplicateId => "GROUP_DUPLICATE_ID",
            ViolationCode::GroupNoRepresentatives => "GROUP_NO_REPRESENTATIVES",
            ViolationCode::GroupWeightRange => "GROUP_WEIGHT_RANGE",
            ViolationCode::GroupWeightSum => "GROUP_WEIGHT_SUM",
            ViolationCode::ProcessDuplicateId => "PROCESS_DUPLICATE_ID",
            ViolationCode::ProcessUnsupporting => "PROCESS_UNSUPPORTING",
            ViolationCode::RatingDuplicate => "RATING_DUPLICATE",
            ViolationCode::RatingMissing => "RATING_MISSING",
            ViolationCode::RatingRange => "RATING_RANGE",
            ViolationCode::RepresentativeDuplicate => "REPRESENTATIVE_DUPLICATE",
            ViolationCode::ScenarioAppliesTo => "SCENARIO_APPLIES_TO",
            ViolationCode::ScenarioDuplicateId => "SCENARIO_DUPLICATE_ID",
            ViolationCode::SupportDuplicate => "SUPPORT_DUPLICATE",
            ViolationCode::SupportRange => "SUPPORT_RANGE",
            ViolationCode::SupportSum => "SUPPORT_SUM",
            ViolationCode::TreeDuplicate => "TREE_DUPLICATE",
            ViolationCode::TreeNodeShape => "TREE_NODE_SHAPE",
            ViolationCode::UnknownReference => "UNKNOWN_REFERENCE",
        }
    }

    /// Unsupported goals and unsupporting processes are findings, not defects.
    pub fn severity(self) -> Severity {
        match self {
            ViolationCode::GoalUnsupported | ViolationCode::ProcessUnsupporting => {
                Severity::Warning
            }
            _ => Severity::Error,
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for ViolationCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub severity: Severity,
    pub location: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub error_count: usize,
    pub warning_count: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort_by(|x, y| {
            (x.code.as_str(), &x.location, &x.message).cmp(&(
                y.code.as_str(),
                &y.location,
                &y.message,
            ))
        });
        let error_count = violations
            .iter()
            .filter(|v| v.severity == Severity::Error)
            .count();
        Self {
            error_count,
            warning_count: violations.len() - error_count,
            violations,
        }
    }

    pub fn has_errors(&self) -> bool {
        self.error_count > 0
    }

    pub fn errors(&self) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(|v| v.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Violation> {
        self.violations
            .iter()
            .filter(|v| v.severity == Severity::Warning)
    }

    pub fn codes(&self) -> Vec<ViolationCode> {
        self.violations.iter().map(|v| v.code).collect()
    }
}

#[derive(Default)]
struct Collector {
    violations: Vec<Violation>,
}

impl Collector {
    fn push(
        &mut self,
        code: ViolationCode,
        location: impl Into<String>,
        message: impl Into<String>,
    ) {
        self.violations.push(Violation {
            code,
            severity: code.severity(),
            location: location.into(),
            message: message.into(),
        });
    }
}

fn in_unit_interval(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}

/// Checks every model invariant and returns the sorted list of violations.
pub fn validate(model: &AnalysisModel) -> ValidationReport {
    let mut out = Collector::default();
    let eps = match model.config.epsilon {
        Some(e) if e.is_finite() && e > 0.0 => e,
        _ => DEFAULT_EPSILON,
    };

    check_config(model, &mut out);
    check_duplicates(model, &mut out);
    check_groups(model, eps, &mut out);
    check_ratings(model, &mut out);
    check_support(model, eps, &mut out);
    check_dependencies(model, &mut out);
    check_trees(model, &mut out);

    ValidationReport::from_violations(out.violations)
}

fn check_config(model: &AnalysisModel, out: &mut Collector) {
    let cfg = &model.config;
    if let Some(e) = cfg.epsilon {
        if !(e.is_finite() && e > 0.0 && e < 1.0) {
            out.push(
                ViolationCode::ConfigRange,
                "config.epsilon",
                format!("epsilon {e} must lie in (0, 1)"),
            );
        }
    }
    for (key, value) in [
        ("priority_threshold", cfg.priority_threshold),
        ("merge_threshold", cfg.merge_threshold),
    ] {
        if let Some(x) = value {
            if !(x > 0.0 && x <= 1.0) {
                out.push(
                    ViolationCode::ConfigRange,
                    format!("config.{key}"),
                    format!("{key} {x} must lie in (0, 1]"),
                );
            }
        }
    }
    if let Some(c) = cfg.capacity {
        if c < 1 {
            out.push(
                ViolationCode::ConfigRange,
                "config.capacity",
                format!("capacity {c} must be a positive integer"),
            );
        }
    }
}

fn report_duplicates<'a>(
    ids: impl Iterator<Item = &'a str>,
    code: ViolationCode,
    kind: &str,
    out: &mut Collector,
) {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for id in ids {
        *counts.entry(id).or_default() += 1;
    }
    for (id, n) in counts.into_iter().filter(|(_, n)| *n > 1) {
        out.push(
            code,
            format!("{kind}:{id}"),
            format!("{kind} id `{id}` declared {n} times"),
        );
    }
}

fn check_duplicates(model: &AnalysisModel, out: &mut Collector) {
    report_duplicates(
        model.stakeholder_groups.iter().map(|g| g.id.as_str()),
        ViolationCode::GroupDuplicateId,
        "group",
        out,
    );
    report_duplicates(
        model.goals.iter().map(|g| g.id.as_str()),
        ViolationCode::GoalDuplicateId,
        "goal",
        out,
    );
    report_duplicates(
        model.processes.iter().map(|p| p.id.as_str()),
        ViolationCode::ProcessDuplicateId,
        "process",
        out,
    );
    report_duplicates(
        model
            .stakeholder_groups
            .iter()
            .flat_map(|g| g.representatives.iter().map(String::as_str)),
        ViolationCode::RepresentativeDuplicate,
        "representative",
        out,
    );
}

fn check_groups(model: &AnalysisModel, eps: f64, out: &mut Collector) {
    let mut all_in_range = true;
    for group in &model.stakeholder_groups {
        let w = group.importance_coefficient;
        if !in_unit_interval(w) {
            all_in_range = false;
            out.push(
                ViolationCode::GroupWeightRange,
                format!("group:{}", group.id),
                format!("importance coefficient {w} outside [0, 1]"),
            );
        }
        if group.representatives.is_empty() {
            out.push(
                ViolationCode::GroupNoRepresentatives,
                format!("group:{}", group.id),
                "group has no representatives",
            );
        }
    }
    // The sum is only meaningful once every weight is individually valid.
    if all_in_range {
        let sum: f64 = model
            .stakeholder_groups
            .iter()
            .map(|g| g.importance_coefficient)
            .sum();
        if (sum - 1.0).abs() > eps {
            out.push(
                ViolationCode::GroupWeightSum,
                "stakeholder_groups",
                format!("importance coefficients sum to {sum}, expected 1"),
            );
        }
    }
}

fn check_ratings(model: &AnalysisModel, out: &mut Collector) {
    let reps: HashSet<&str> = model
        .stakeholder_groups
        .iter()
        .flat_map(|g| g.representatives.iter().map(String::as_str))
        .collect();
    let goals: HashSet<&str> = model.goals.iter().map(|g| g.id.as_str()).collect();
    let n = model.goal_count() as i64;

    let mut seen: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for r in &model.ratings {
        let location = format!("rating:{}/{}", r.representative, r.goal);
        let mut resolved = true;
        if !reps.contains(r.representative.as_str()) {
            resolved = false;
            out.push(
                ViolationCode::UnknownReference,
                location.clone(),
                format!(
                    "rating names undeclared representative `{}`",
                    r.representative
                ),
            );
        }
        if !goals.contains(r.goal.as_str()) {
            resolved = false;
            out.push(
                ViolationCode::UnknownReference,
                location.clone(),
                format!("rating names undeclared goal `{}`", r.goal),
            );
        }
        if !resolved {
            continue;
        }
        *seen.entry((&r.representative, &r.goal)).or_default() += 1;
        if r.rating < 1 || r.rating > n {
            out.push(
                ViolationCode::RatingRange,
                location,
                format!("rating {} outside [1, {n}]", r.rating),
            );
        }
    }
    for ((rep, goal), count) in &seen {
        if *count > 1 {
            out.push(
                ViolationCode::RatingDuplicate,
                format!("rating:{rep}/{goal}"),
                format!("{count} ratings given for the same pair"),
            );
        }
    }
    for group in &model.stakeholder_groups {
        for rep in &group.representatives {
            for goal in &model.goals {
                if !seen.contains_key(&(rep.as_str(), goal.id.as_str())) {
                    out.push(
                        ViolationCode::RatingMissing,
                        format!("rating:{rep}/{}", goal.id),
                        format!("representative `{rep}` has not rated goal `{}`", goal.id),
                    );
                }
            }
        }
    }
}

fn check_support(model: &AnalysisModel, eps: f64, out: &mut Collector) {
    let processes: HashSet<&str> = model.processes.iter().map(|p| p.id.as_str()).collect();
    let goals: HashSet<&str> = model.goals.iter().map(|g| g.id.as_str()).collect();

    let mut seen: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    let mut column_sum: HashMap<&str, f64> = HashMap::new();
    let mut column_valid: HashMap<&str, bool> = HashMap::new();
    let mut row_sum: HashMap<&str, f64> = HashMap::new();

    for s in &model.support {
        let location = format!("support:{}/{}", s.process, s.goal);
        let mut resolved = true;
        if !processes.contains(s.process.as_str()) {
            resolved = false;
            out.push(
                ViolationCode::UnknownReference,
                location.clone(),
                format!("support entry names undeclared process `{}`", s.process),
            );
        }
        if !goals.contains(s.goal.as_str()) {
            resolved = false;
            out.push(
                ViolationCode::UnknownReference,
                location.clone(),
                format!("support entry names undeclared goal `{}`", s.goal),
            );
        }
        if !resolved {
            continue;
        }
        *seen.entry((&s.process, &s.goal)).or_default() += 1;
        *row_sum.entry(&s.process).or_default() += s.coefficient.abs();
        if !in_unit_interval(s.coefficient) {
            column_valid.insert(&s.goal, false);
            out.push(
                ViolationCode::SupportRange,
                location,
                format!("support coefficient {} outside [0, 1]", s.coefficient),
            );
            continue;
        }
        *column_sum.entry(&s.goal).or_default() += s.coefficient;
    }

    for ((process, goal), count) in &seen {
        if *count > 1 {
            out.push(
                ViolationCode::SupportDuplicate,
                format!("support:{process}/{goal}"),
                format!("{count} support entries for the same pair"),
            );
        }
    }

    for goal in &model.goals {
        if !column_valid.get(goal.id.as_str()).copied().unwrap_or(true) {
            continue;
        }
        let sum = column_sum.get(goal.id.as_str()).copied().unwrap_or(0.0);
        if sum == 0.0 {
            out.push(
                ViolationCode::GoalUnsupported,
                format!("goal:{}", goal.id),
                format!("no process supports goal `{}`", goal.id),
            );
        } else if (sum - 1.0).abs() > eps {
            out.push(
                ViolationCode::SupportSum,
                format!("goal:{}", goal.id),
                format!(
                    "support coefficients for goal `{}` sum to {sum}, expected 0 or 1",
                    goal.id
                ),
            );
        }
    }
    for process in &model.processes {
        if row_sum.get(process.id.as_str()).copied().unwrap_or(0.0) == 0.0 {
            out.push(
                ViolationCode::ProcessUnsupporting,
                format!("process:{}", process.id),
                format!("process `{}` supports no goal", process.id),
            );
        }
    }
}

fn check_dependencies(model: &AnalysisModel, out: &mut Collector) {
    let processes: HashSet<&str> = model.processes.iter().map(|p| p.id.as_str()).collect();
    let mut pairs: BTreeMap<(&str, &str), usize> = BTreeMap::new();

    for edge in &model.dependencies {
        let location = format!("dependency:{}-{}", edge.a, edge.b);
        let mut resolved = true;
        for end in [&edge.a, &edge.b] {
            if !processes.contains(end.as_str()) {
                resolved = false;
                out.push(
                    ViolationCode::UnknownReference,
                    location.clone(),
                    format!("dependency names undeclared process `{end}`"),
                );
            }
        }
        if !(edge.strength > 0.0 && edge.strength <= 1.0) {
            out.push(
                ViolationCode::DependencyStrengthRange,
                location.clone(),
                format!("dependency strength {} outside (0, 1]", edge.strength),
            );
        }
        if edge.a == edge.b {
            out.push(
                ViolationCode::DependencySelfLoop,
                location,
                format!("process `{}` depends on itself", edge.a),
            );
            continue;
        }
        if resolved {
            let key = if edge.a < edge.b {
                (edge.a.as_str(), edge.b.as_str())
            } else {
                (edge.b.as_str(), edge.a.as_str())
            };
            *pairs.entry(key).or_default() += 1;
        }
    }
    for ((a, b), count) in pairs {
        if count > 1 {
            out.push(
                ViolationCode::DependencyDuplicate,
                format!("dependency:{a}-{b}"),
                format!("{count} edges between the same pair of processes"),
            );
        }
    }
}

fn check_trees(model: &AnalysisModel, out: &mut Collector) {
    let goals: HashSet<&str> = model.goals.iter().map(|g| g.id.as_str()).collect();
    let processes: HashSet<&str> = model.processes.iter().map(|p| p.id.as_str()).collect();

    let mut per_goal: BTreeMap<&str, usize> = BTreeMap::new();
    for tree in &model.goal_trees {
        *per_goal.entry(&tree.goal).or_default() += 1;
    }
    for (goal, count) in per_goal {
        if count > 1 {
            out.push(
                ViolationCode::TreeDuplicate,
                format!("tree:{goal}"),
                format!("goal `{goal}` owns {count} goal trees"),
            );
        }
    }

    // A scenario id may recur across trees only as the same shared scenario.
    let mut by_id: BTreeMap<&str, Vec<&LeafScenario>> = BTreeMap::new();
    let mut per_tree_ids: BTreeSet<(usize, &str)> = BTreeSet::new();
    let mut dup_within_tree: BTreeSet<&str> = BTreeSet::new();

    for (tree_index, tree) in model.goal_trees.iter().enumerate() {
        if !goals.contains(tree.goal.as_str()) {
            out.push(
                ViolationCode::UnknownReference,
                format!("tree:{}", tree.goal),
                format!("goal tree rooted at undeclared goal `{}`", tree.goal),
            );
        }
        let mut leaves = Vec::new();
        for node in &tree.children {
            walk_shape(node, &tree.goal, out, &mut leaves);
        }
        for (path, leaf) in leaves {
            if !per_tree_ids.insert((tree_index, leaf.id.as_str())) {
                dup_within_tree.insert(&leaf.id);
            }
            by_id.entry(&leaf.id).or_default().push(leaf);
            check_applies_to(model, tree, &path, leaf, &processes, out);
        }
    }

    for (id, leaves) in by_id {
        let conflicting = leaves.windows(2).any(|w| w[0] != w[1]);
        if dup_within_tree.contains(id) || conflicting {
            out.push(
                ViolationCode::ScenarioDuplicateId,
                format!("scenario:{id}"),
                format!("scenario id `{id}` is reused for a different scenario"),
            );
        }
    }
}

fn walk_shape<'a>(
    node: &'a QaNode,
    prefix: &str,
    out: &mut Collector,
    leaves: &mut Vec<(String, &'a LeafScenario)>,
) {
    let path = format!("{prefix}/{}", node.label);
    match (&node.scenario, node.children.is_empty()) {
        (Some(_), false) => out.push(
            ViolationCode::TreeNodeShape,
            format!("tree:{path}"),
            "node has both children and a scenario",
        ),
        (None, true) => out.push(
            ViolationCode::TreeNodeShape,
            format!("tree:{path}"),
            "leaf node carries no scenario",
        ),
        (Some(leaf), true) => leaves.push((path.clone(), leaf)),
        (None, false) => {}
    }
    for child in &node.children {
        walk_shape(child, &path, out, leaves);
    }
}

fn check_applies_to(
    model: &AnalysisModel,
    tree: &GoalTree,
    path: &str,
    leaf: &LeafScenario,
    processes: &HashSet<&str>,
    out: &mut Collector,
) {
    let Some(targets) = &leaf.applies_to else {
        return;
    };
    for target in targets {
        let location = format!("scenario:{}", leaf.id);
        if !processes.contains(target.as_str()) {
            out.push(
                ViolationCode::UnknownReference,
                location,
                format!("scenario at `{path}` applies to undeclared process `{target}`"),
            );
        } else if model.support_coefficient(target, &tree.goal) <= 0.0 {
            out.push(
                ViolationCode::ScenarioAppliesTo,
                location,
                format!(
                    "scenario applies to `{target}`, which does not support goal `{}`",
                    tree.goal
                ),
            );
        }
    }
}
