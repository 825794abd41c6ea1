//! Small hand-checkable models used by the tests, the docs and the CLI smoke runs.

use crate::model::*;

fn group(id: &str, weight: f64, reps: &[&str]) -> StakeholderGroup {
    StakeholderGroup {
        id: id.into(),
        name: id.into(),
        importance_coefficient: weight,
        representatives: reps.iter().map(|r| r.to_string()).collect(),
    }
}

fn goal(id: &str) -> BusinessGoal {
    BusinessGoal {
        id: id.into(),
        name: id.into(),
        scenario: None,
    }
}

fn process(id: &str) -> BusinessProcess {
    BusinessProcess {
        id: id.into(),
        name: id.into(),
        cbp_override: None,
    }
}

fn rating(rep: &str, goal: &str, rating: i64) -> Rating {
    Rating {
        representative: rep.into(),
        goal: goal.into(),
        rating,
    }
}

fn support(process: &str, goal: &str, coefficient: f64) -> SupportEntry {
    SupportEntry {
        process: process.into(),
        goal: goal.into(),
        coefficient,
    }
}

/// The three-goal worked example.
///
/// Groups weigh 0.6 (r1, r2) and 0.4 (r3). Group means per goal are
/// G1 (3, 1), G2 (1.5, 3), G3 (1.5, 2), giving goal priorities
/// 0.733333, 0.7 and 0.566667. Support: G1 -> {P1: 0.7, P2: 0.3},
/// G2 -> {P2: 1}, G3 -> {P3: 1}.
pub fn m1() -> AnalysisModel {
    AnalysisModel {
        stakeholder_groups: vec![group("SG1", 0.6, &["r1", "r2"]), group("SG2", 0.4, &["r3"])],
        goals: vec![goal("G1"), goal("G2"), goal("G3")],
        ratings: vec![
            rating("r1", "G1", 3),
            rating("r2", "G1", 3),
            rating("r3", "G1", 1),
            rating("r1", "G2", 1),
            rating("r2", "G2", 2),
            rating("r3", "G2", 3),
            rating("r1", "G3", 2),
            rating("r2", "G3", 1),
            rating("r3", "G3", 2),
        ],
        processes: vec![process("P1"), process("P2"), process("P3")],
        support: vec![
            support("P1", "G1", 0.7),
            support("P2", "G1", 0.3),
            support("P2", "G2", 1.0),
            support("P3", "G3", 1.0),
        ],
        ..Default::default()
    }
}

/// [`m1`] with one high-risk scenario on G2, which only P2 supports.
pub fn m1_with_p2_risk() -> AnalysisModel {
    let mut model = m1();
    let mut scenario = LeafScenario::new("S1", RiskLevel::High);
    scenario.description = Some("peak order load handled within 2 s".into());
    model.goal_trees.push(GoalTree {
        goal: "G2".into(),
        children: vec![QaNode::interior(
            "performance",
            vec![QaNode::leaf("latency", scenario)],
        )],
    });
    model
}

/// One group of weight 1 whose representatives rate `G1` as given and every
/// other goal 1. A single process fully supports `G1`.
pub fn single_goal_model(goal_count: usize, g1_ratings: &[i64]) -> AnalysisModel {
    let reps: Vec<String> = (1..=g1_ratings.len()).map(|i| format!("r{i}")).collect();
    let rep_refs: Vec<&str> = reps.iter().map(String::as_str).collect();
    let goals: Vec<BusinessGoal> = (1..=goal_count).map(|i| goal(&format!("G{i}"))).collect();
    let mut ratings = Vec::new();
    for (rep, &r) in reps.iter().zip(g1_ratings) {
        for g in &goals {
            let value = if g.id == "G1" { r } else { 1 };
            ratings.push(rating(rep, &g.id, value));
        }
    }
    AnalysisModel {
        stakeholder_groups: vec![group("SG1", 1.0, &rep_refs)],
        goals,
        ratings,
        processes: vec![process("P1")],
        support: vec![support("P1", "G1", 1.0)],
        ..Default::default()
    }
}
