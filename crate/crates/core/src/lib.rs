//! Identification of core business processes (CBPs) and release planning.
//!
//! The pipeline runs in five steps over one declarative [`AnalysisModel`]:
//!
//! 1. stakeholder groups rate business goals, giving goal priorities;
//! 2. support coefficients carry goal priorities onto business processes;
//! 3. per-goal trees attach risk-annotated quality attribute scenarios to processes;
//! 4. a decision table on priority class and risk classifies each process as CBP or not;
//! 5. dependent processes are grouped, strongly dependent ones merged, and a
//!    release is selected category first.
//!
//! Every function is pure over an immutable model.

pub mod classify;
pub mod error;
pub mod fixtures;
pub mod general_scenarios;
pub mod goal_tree;
pub mod model;
pub mod parse;
pub mod prioritization;
pub mod release;
pub mod report;
pub mod validate;

pub use classify::{classify, CbpClassification, Cell, PriorityClass};
pub use error::{AnalysisError, ParseError};
pub use model::AnalysisModel;
pub use parse::{parse_model, parse_str};
pub use prioritization::{prioritize_all, PriorityTable};
pub use release::{select_release, ReleasePlan};
pub use report::{render, run_pipeline, AnalysisReport, Format};
pub use validate::{validate, ValidationReport};
