//! Reading model documents.
//!
//! Parsing is structural (JSON syntax and schema, unknown keys rejected)
//! plus reference resolution: every id a document mentions must be
//! declared in it. Semantic checks belong to [`crate::validate`].

use std::collections::HashSet;
use std::path::Path;

use serde_json::error::Category;

use crate::error::ParseError;
use crate::model::{AnalysisModel, QaNode};

pub fn parse_model(path: impl AsRef<Path>) -> Result<AnalysisModel, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_str(&text)
}

pub fn parse_str(text: &str) -> Result<AnalysisModel, ParseError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let model: AnalysisModel = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        classify_json_error(path, inner)
    })?;
    de.end().map_err(|e| classify_json_error(".".into(), e))?;
    resolve_references(&model)?;
    Ok(model)
}

fn classify_json_error(path: String, err: serde_json::Error) -> ParseError {
    let (line, column) = (err.line(), err.column());
    match err.classify() {
        Category::Data => ParseError::Schema {
            path,
            line,
            column,
            message: strip_position(&err.to_string()),
        },
        Category::Syntax | Category::Eof | Category::Io => ParseError::Syntax {
            line,
            column,
            message: strip_position(&err.to_string()),
        },
    }
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn unresolved(path: String, kind: &'static str, id: &str) -> ParseError {
    ParseError::Reference {
        path,
        kind,
        id: id.to_string(),
    }
}

fn resolve_references(model: &AnalysisModel) -> Result<(), ParseError> {
    let reps: HashSet<&str> = model
        .stakeholder_groups
        .iter()
        .flat_map(|g| g.representatives.iter().map(String::as_str))
        .collect();
    let goals: HashSet<&str> = model.goals.iter().map(|g| g.id.as_str()).collect();
    let processes: HashSet<&str> = model.processes.iter().map(|p| p.id.as_str()).collect();

    for (i, r) in model.ratings.iter().enumerate() {
        if !reps.contains(r.representative.as_str()) {
            return Err(unresolved(
                format!("ratings[{i}].representative"),
                "representative",
                &r.representative,
            ));
        }
        if !goals.contains(r.goal.as_str()) {
            return Err(unresolved(format!("ratings[{i}].goal"), "goal", &r.goal));
        }
    }
    for (i, s) in model.support.iter().enumerate() {
        if !processes.contains(s.process.as_str()) {
            return Err(unresolved(
                format!("support[{i}].process"),
                "process",
                &s.process,
            ));
        }
        if !goals.contains(s.goal.as_str()) {
            return Err(unresolved(format!("support[{i}].goal"), "goal", &s.goal));
        }
    }
    for (i, tree) in model.goal_trees.iter().enumerate() {
        if !goals.contains(tree.goal.as_str()) {
            return Err(unresolved(
                format!("goal_trees[{i}].goal"),
                "goal",
                &tree.goal,
            ));
        }
        for (j, node) in tree.children.iter().enumerate() {
            resolve_node(node, format!("goal_trees[{i}].nodes[{j}]"), &processes)?;
        }
    }
    for (i, e) in model.dependencies.iter().enumerate() {
        for (end, id) in [("a", &e.a), ("b", &e.b)] {
            if !processes.contains(id.as_str()) {
                return Err(unresolved(
                    format!("dependencies[{i}].{end}"),
                    "process",
                    id,
                ));
            }
        }
    }
    Ok(())
}

fn resolve_node(node: &QaNode, path: String, processes: &HashSet<&str>) -> Result<(), ParseError> {
    if let Some(targets) = node.scenario.as_ref().and_then(|s| s.applies_to.as_ref()) {
        for (k, target) in targets.iter().enumerate() {
            if !processes.contains(target.as_str()) {
                return Err(unresolved(
                    format!("{path}.scenario.applies_to[{k}]"),
                    "process",
                    target,
                ));
            }
        }
    }
    for (j, child) in node.children.iter().enumerate() {
        resolve_node(child, format!("{path}.children[{j}]"), processes)?;
    }
    Ok(())
}
