//! Dependency-aware release planning.
//!
//! Processes linked by any dependency form independent groups. Inside a
//! group, processes joined by strong edges (strength at or above the merge
//! threshold) are combined into one unit that ships together. Units are then
//! placed in categories by priority class and risk, and the current release
//! takes units category first.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::{Serialize, Serializer};

use crate::classify::{CbpClassification, PriorityClass};
use crate::model::{AnalysisModel, ProcessRisk};
use crate::prioritization::PriorityTable;

/// Union-find over dense indices.
struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Components as index lists, each sorted by `key`, ordered by their smallest key.
    fn components<K: Ord>(&mut self, key: impl Fn(usize) -> K) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.parent.len() {
            let root = self.find(i);
            by_root.entry(root).or_default().push(i);
        }
        let mut components: Vec<Vec<usize>> = by_root.into_values().collect();
        for c in &mut components {
            c.sort_by_key(|&i| key(i));
        }
        components.sort_by_key(|c| key(c[0]));
        components
    }
}

/// Connected components over `ids` using the edges `pairs` (by id).
fn components_over<'a>(
    ids: &[&'a str],
    pairs: impl Iterator<Item = (&'a str, &'a str)>,
) -> Vec<Vec<String>> {
    let index: HashMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let mut sets = DisjointSets::new(ids.len());
    for (a, b) in pairs {
        if let (Some(&ia), Some(&ib)) = (index.get(a), index.get(b)) {
            sets.union(ia, ib);
        }
    }
    sets.components(|i| ids[i])
        .into_iter()
        .map(|c| c.into_iter().map(|i| ids[i].to_string()).collect())
        .collect()
}

/// A set of processes with no dependency on any process outside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DependencyGroup {
    pub id: String,
    /// Sorted by process id.
    pub members: Vec<String>,
}

/// Connected components of the dependency graph over all processes, ordered
/// by smallest member id. Isolated processes form singleton groups.
pub fn build_groups(model: &AnalysisModel) -> Vec<DependencyGroup> {
    let ids: Vec<&str> = model.processes.iter().map(|p| p.id.as_str()).collect();
    let edges = model
        .dependencies
        .iter()
        .filter(|e| e.strength > 0.0)
        .map(|e| (e.a.as_str(), e.b.as_str()));
    components_over(&ids, edges)
        .into_iter()
        .enumerate()
        .map(|(i, members)| DependencyGroup {
            id: format!("group-{}", i + 1),
            members,
        })
        .collect()
}

/// Processes merged because they depend strongly on each other.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProcessUnit {
    /// Member ids joined by `+`.
    pub id: String,
    pub members: Vec<String>,
    /// Highest member priority.
    pub priority: f64,
    /// High if any member classifies high.
    pub priority_class: PriorityClass,
    /// Highest member risk.
    pub risk: ProcessRisk,
    pub group_id: String,
}

/// Splits `group` into units along edges with strength at or above the
/// configured merge threshold.
pub fn merge_strong(
    model: &AnalysisModel,
    table: &PriorityTable,
    classifications: &[CbpClassification],
    group: &DependencyGroup,
) -> Vec<ProcessUnit> {
    let threshold = model.config.merge_threshold();
    let ids: Vec<&str> = group.members.iter().map(String::as_str).collect();
    let strong = model
        .dependencies
        .iter()
        .filter(|e| e.strength >= threshold)
        .map(|e| (e.a.as_str(), e.b.as_str()));
    let by_process: HashMap<&str, &CbpClassification> = classifications
        .iter()
        .map(|c| (c.process_id.as_str(), c))
        .collect();

    components_over(&ids, strong)
        .into_iter()
        .map(|members| {
            let priority = members
                .iter()
                .map(|m| table.process(m).unwrap_or(0.0))
                .fold(f64::NEG_INFINITY, f64::max);
            let priority_class = members
                .iter()
                .filter_map(|m| by_process.get(m.as_str()))
                .map(|c| c.priority_class)
                .max()
                .unwrap_or(PriorityClass::Low);
            let risk = members
                .iter()
                .filter_map(|m| by_process.get(m.as_str()))
                .map(|c| c.risk_input)
                .max()
                .unwrap_or(ProcessRisk::None);
            ProcessUnit {
                id: members.join("+"),
                members,
                priority,
                priority_class,
                risk,
                group_id: group.id.clone(),
            }
        })
        .collect()
}

/// Release categories, selected in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    /// High priority, high risk.
    HighPriorityHighRisk = 1,
    /// High priority, low or no risk.
    HighPriorityLowRisk = 2,
    /// Low priority, high risk. Not one of the method's three named
    /// categories; placed after all high-priority work.
    LowPriorityHighRisk = 3,
    /// Low priority, low or no risk.
    LowPriorityLowRisk = 4,
}

impl Category {
    pub fn of(priority_class: PriorityClass, risk: ProcessRisk) -> Self {
        match (priority_class, risk) {
            (PriorityClass::High, ProcessRisk::High) => Category::HighPriorityHighRisk,
            (PriorityClass::High, _) => Category::HighPriorityLowRisk,
            (PriorityClass::Low, ProcessRisk::High) => Category::LowPriorityHighRisk,
            (PriorityClass::Low, _) => Category::LowPriorityLowRisk,
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn label(self) -> &'static str {
        match self {
            Category::HighPriorityHighRisk => "high priority, high risk",
            Category::HighPriorityLowRisk => "high priority, low risk",
            Category::LowPriorityHighRisk => "low priority, high risk",
            Category::LowPriorityLowRisk => "low priority, low risk",
        }
    }

    pub fn is_extension(self) -> bool {
        self == Category::LowPriorityHighRisk
    }
}

impl Serialize for Category {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategorizedUnit {
    #[serde(flatten)]
    pub unit: ProcessUnit,
    pub category: Category,
}

pub fn categorize(units: Vec<ProcessUnit>) -> Vec<CategorizedUnit> {
    units
        .into_iter()
        .map(|unit| CategorizedUnit {
            category: Category::of(unit.priority_class, unit.risk),
            unit,
        })
        .collect()
}

/// Release order: category ascending, then priority descending, then unit id.
pub fn release_order(a: &CategorizedUnit, b: &CategorizedUnit) -> Ordering {
    a.category
        .cmp(&b.category)
        .then_with(|| b.unit.priority.total_cmp(&a.unit.priority))
        .then_with(|| a.unit.id.cmp(&b.unit.id))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReleasePlan {
    pub groups: Vec<DependencyGroup>,
    /// Every unit in release order.
    pub units: Vec<CategorizedUnit>,
    /// Unit ids chosen for the current release.
    pub selected: Vec<String>,
    /// Remaining unit ids, in release order.
    pub backlog: Vec<String>,
}

/// Builds groups and units, orders them, and cuts the current release at
/// the configured capacity.
pub fn select_release(
    model: &AnalysisModel,
    table: &PriorityTable,
    classifications: &[CbpClassification],
) -> ReleasePlan {
    let groups = build_groups(model);
    let mut units: Vec<CategorizedUnit> = groups
        .iter()
        .flat_map(|g| categorize(merge_strong(model, table, classifications, g)))
        .collect();
    units.sort_by(release_order);

    let cut = model
        .config
        .capacity()
        .map_or(units.len(), |c| c.min(units.len()));
    let ids: Vec<String> = units.iter().map(|u| u.unit.id.clone()).collect();
    let (selected, backlog) = ids.split_at(cut);
    ReleasePlan {
        groups,
        selected: selected.to_vec(),
        backlog: backlog.to_vec(),
        units,
    }
}
