//! Random valid models and brute-force oracles shared by the integration tests.
//!
//! The oracles re-derive results from the raw model lists with plain loops
//! and never call into the library's computation paths.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use cbp_core::model::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_goals: usize,
    pub max_groups: usize,
    pub max_reps: usize,
    pub max_processes: usize,
}

pub const ACCEPTANCE_LIMITS: Limits = Limits {
    max_goals: 8,
    max_groups: 4,
    max_reps: 5,
    max_processes: 10,
};

/// Positive weights summing to one.
fn simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(1..=20) as f64).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

fn random_tree(
    rng: &mut ChaCha8Rng,
    goal: &str,
    supporters: &[String],
    next_id: &mut usize,
) -> GoalTree {
    const ATTRIBUTES: [&str; 4] = ["performance", "availability", "security", "modifiability"];
    let mut children = Vec::new();
    let count = rng.gen_range(0..=3);
    for attribute in ATTRIBUTES.choose_multiple(rng, count) {
        let mut leaves = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            *next_id += 1;
            let risk = if rng.gen_bool(0.4) {
                RiskLevel::High
            } else {
                RiskLevel::Low
            };
            let mut scenario = LeafScenario::new(format!("S{next_id}"), risk);
            if !supporters.is_empty() && rng.gen_bool(0.3) {
                let k = rng.gen_range(1..=supporters.len());
                let mut chosen: Vec<String> = supporters.choose_multiple(rng, k).cloned().collect();
                chosen.sort();
                scenario.applies_to = Some(chosen);
            }
            let leaf = QaNode::leaf(format!("leaf {next_id}"), scenario);
            if rng.gen_bool(0.3) {
                leaves.push(QaNode::interior("refinement", vec![leaf]));
            } else {
                leaves.push(leaf);
            }
        }
        children.push(QaNode::interior(*attribute, leaves));
    }
    GoalTree {
        goal: goal.to_string(),
        children,
    }
}

/// A random model with no validation errors.
pub fn random_model(seed: u64, limits: Limits) -> AnalysisModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_goals = rng.gen_range(1..=limits.max_goals);
    let n_groups = rng.gen_range(1..=limits.max_groups);
    let n_processes = rng.gen_range(1..=limits.max_processes);

    let weights = simplex(&mut rng, n_groups);
    let mut rep_counter = 0;
    let stakeholder_groups: Vec<StakeholderGroup> = weights
        .iter()
        .enumerate()
        .map(|(j, &w)| {
            let reps = (0..rng.gen_range(1..=limits.max_reps))
                .map(|_| {
                    rep_counter += 1;
                    format!("r{rep_counter}")
                })
                .collect();
            StakeholderGroup {
                id: format!("SG{}", j + 1),
                name: format!("group {}", j + 1),
                importance_coefficient: w,
                representatives: reps,
            }
        })
        .collect();

    let goals: Vec<BusinessGoal> = (1..=n_goals)
        .map(|i| BusinessGoal {
            id: format!("G{i}"),
            name: format!("goal {i}"),
            scenario: None,
        })
        .collect();
    let mut ratings = Vec::new();
    for group in &stakeholder_groups {
        for rep in &group.representatives {
            for goal in &goals {
                ratings.push(Rating {
                    representative: rep.clone(),
                    goal: goal.id.clone(),
                    rating: rng.gen_range(1..=n_goals as i64),
                });
            }
        }
    }
    ratings.shuffle(&mut rng);

    let processes: Vec<BusinessProcess> = (1..=n_processes)
        .map(|i| BusinessProcess {
            id: format!("P{i}"),
            name: format!("process {i}"),
            cbp_override: match rng.gen_range(0..6) {
                0 => Some(true),
                1 => Some(false),
                _ => None,
            },
        })
        .collect();

    let mut support = Vec::new();
    let mut goal_trees = Vec::new();
    let mut scenario_counter = 0;
    for goal in &goals {
        let mut supporters = Vec::new();
        if rng.gen_bool(0.85) {
            let k = rng.gen_range(1..=n_processes.min(4));
            let chosen: Vec<&BusinessProcess> = processes.choose_multiple(&mut rng, k).collect();
            for (p, c) in chosen.iter().zip(simplex(&mut rng, k)) {
                support.push(SupportEntry {
                    process: p.id.clone(),
                    goal: goal.id.clone(),
                    coefficient: c,
                });
                supporters.push(p.id.clone());
            }
        }
        if rng.gen_bool(0.6) {
            goal_trees.push(random_tree(
                &mut rng,
                &goal.id,
                &supporters,
                &mut scenario_counter,
            ));
        }
    }

    let mut dependencies = Vec::new();
    for i in 0..n_processes {
        for j in i + 1..n_processes {
            if rng.gen_bool(0.2) {
                let strength = rng.gen_range(1..=10) as f64 / 10.0;
                let (a, b) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
                dependencies.push(DependencyEdge {
                    a: processes[a].id.clone(),
                    b: processes[b].id.clone(),
                    strength,
                });
            }
        }
    }

    let config = AnalysisConfig {
        epsilon: None,
        priority_threshold: rng
            .gen_bool(0.3)
            .then(|| rng.gen_range(1..=100) as f64 / 100.0),
        merge_threshold: rng
            .gen_bool(0.5)
            .then(|| rng.gen_range(1..=10) as f64 / 10.0),
        capacity: rng.gen_bool(0.5).then(|| rng.gen_range(1..=12)),
    };

    AnalysisModel {
        stakeholder_groups,
        goals,
        ratings,
        processes,
        support,
        goal_trees,
        dependencies,
        config,
    }
}

/// Brute-force goal priorities: for each goal, walk every group, find each
/// representative's rating by linear scan, average, weight, then divide by N.
pub fn oracle_goal_priorities(model: &AnalysisModel) -> BTreeMap<String, f64> {
    let n = model.goals.len() as f64;
    let mut out = BTreeMap::new();
    for goal in &model.goals {
        let mut importance = 0.0;
        for group in &model.stakeholder_groups {
            let mut total = 0.0;
            let mut count = 0.0;
            for rep in &group.representatives {
                for r in &model.ratings {
                    if &r.representative == rep && r.goal == goal.id {
                        total += r.rating as f64;
                        count += 1.0;
                    }
                }
            }
            importance += group.importance_coefficient * (total / count);
        }
        out.insert(goal.id.clone(), importance / n);
    }
    out
}

/// Brute-force process priorities by scanning the support list per
/// (process, goal) pair.
pub fn oracle_process_priorities(model: &AnalysisModel) -> BTreeMap<String, f64> {
    let goal_priority = oracle_goal_priorities(model);
    let mut out = BTreeMap::new();
    for process in &model.processes {
        let mut priority = 0.0;
        for goal in &model.goals {
            for s in &model.support {
                if s.process == process.id && s.goal == goal.id {
                    priority += s.coefficient * goal_priority[&goal.id];
                }
            }
        }
        out.insert(process.id.clone(), priority);
    }
    out
}

/// Transitive closure by Floyd-Warshall over `n` nodes.
pub fn reachability(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in edges {
        reach[a][b] = true;
        reach[b][a] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    reach
}

/// A model of `n` processes with the given dependency edges (by index) and
/// nothing else of interest.
pub fn graph_model(n: usize, edges: &[(usize, usize)]) -> AnalysisModel {
    let processes: Vec<BusinessProcess> = (0..n)
        .map(|i| BusinessProcess {
            id: format!("P{i}"),
            name: String::new(),
            cbp_override: None,
        })
        .collect();
    let dependencies = edges
        .iter()
        .map(|&(a, b)| DependencyEdge {
            a: processes[a].id.clone(),
            b: processes[b].id.clone(),
            strength: 0.5,
        })
        .collect();
    AnalysisModel {
        processes,
        dependencies,
        ..Default::default()
    }
}
