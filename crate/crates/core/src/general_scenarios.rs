//! Shipped catalog of general scenario templates.
//!
//! Each template is a six-part stub with bracketed placeholders that a team
//! narrows into a concrete scenario for one goal tree leaf. The text is a
//! working aid only.

use crate::model::SixPart;

struct Template {
    source: &'static str,
    stimulus: &'static str,
    artifact: &'static str,
    environment: &'static str,
    response: &'static str,
    response_measure: &'static str,
}

impl Template {
    fn to_six_part(&self) -> SixPart {
        SixPart {
            source: self.source.into(),
            stimulus: self.stimulus.into(),
            artifact: self.artifact.into(),
            environment: self.environment.into(),
            response: self.response.into(),
            response_measure: self.response_measure.into(),
        }
    }
}

const PERFORMANCE: &[Template] = &[
    Template {
        source: "<internal or external: users, partner services, scheduled jobs>",
        stimulus: "<periodic, sporadic or bursty arrival of requests>",
        artifact: "<service, process step or whole system>",
        environment: "<normal load, peak load, overload>",
        response: "<requests processed, service level kept>",
        response_measure: "<latency, deadline, throughput, jitter, miss rate>",
    },
    Template {
        source: "<batch trigger>",
        stimulus: "<large volume of records to process>",
        artifact: "<batch service>",
        environment: "<off-peak window>",
        response: "<batch completes without degrading online traffic>",
        response_measure: "<completion time, records per second>",
    },
];

const AVAILABILITY: &[Template] = &[
    Template {
        source: "<internal or external to the system>",
        stimulus: "<omission, crash, timing fault, incorrect response>",
        artifact: "<service, data store, channel, processor>",
        environment: "<normal operation, degraded mode>",
        response: "<detect, record, notify, fail over, continue degraded>",
        response_measure: "<availability %, time to repair, degraded-mode window>",
    },
    Template {
        source: "<dependent external service>",
        stimulus: "<service becomes unreachable>",
        artifact: "<composite service>",
        environment: "<normal operation>",
        response: "<circuit opens, cached or fallback response returned>",
        response_measure: "<share of requests answered during the outage>",
    },
];

const SECURITY: &[Template] = &[
    Template {
        source: "<identified or unknown individual or system, internal or external>",
        stimulus: "<attempt to read, modify or deny access to data or services>",
        artifact: "<service, data in transit, data at rest>",
        environment: "<online or offline, connected or isolated>",
        response: "<authenticate, authorize, block, audit, notify>",
        response_measure: "<time to detect, share of attacks resisted, data exposed>",
    },
    Template {
        source: "<authorized partner>",
        stimulus: "<request outside the granted scope>",
        artifact: "<service contract>",
        environment: "<normal operation>",
        response: "<request rejected and logged>",
        response_measure: "<zero unauthorized operations, audit latency>",
    },
];

const MODIFIABILITY: &[Template] = &[
    Template {
        source: "<developer, administrator, end user>",
        stimulus: "<add, delete or change a function, quality or capacity>",
        artifact: "<service interface, implementation, composition, configuration>",
        environment: "<design time, build time, deploy time, runtime>",
        response: "<change made, tested and deployed without side effects>",
        response_measure: "<effort, elapsed time, number of services touched>",
    },
    Template {
        source: "<business analyst>",
        stimulus: "<business rule changes>",
        artifact: "<process orchestration>",
        environment: "<runtime>",
        response: "<rule updated without redeploying services>",
        response_measure: "<hours from request to production>",
    },
];

const USABILITY: &[Template] = &[
    Template {
        source: "<end user or operator>",
        stimulus: "<learn the system, use it efficiently, minimize errors, adapt it>",
        artifact: "<user-facing process step>",
        environment: "<runtime, configuration time>",
        response: "<guidance, undo, cancel, feedback given>",
        response_measure: "<task time, error count, satisfaction, time to learn>",
    },
    Template {
        source: "<first-time user>",
        stimulus: "<completes the main process for the first time>",
        artifact: "<user interface>",
        environment: "<runtime, no training>",
        response: "<task completed without assistance>",
        response_measure: "<completion rate, minutes to complete>",
    },
];

const TESTABILITY: &[Template] = &[
    Template {
        source: "<unit tester, integration tester, acceptance tester>",
        stimulus: "<completion of a service, composition or release increment>",
        artifact: "<service, composition, whole system>",
        environment: "<design, development, integration, deployment>",
        response: "<state observable, inputs controllable, faults isolatable>",
        response_measure: "<coverage, effort to test, time to isolate a fault>",
    },
    Template {
        source: "<integration tester>",
        stimulus: "<partner service not yet available>",
        artifact: "<service contract>",
        environment: "<integration>",
        response: "<stub generated from the contract and used in tests>",
        response_measure: "<hours to obtain a working stub>",
    },
];

/// Quality attributes covered by the catalog.
pub const CATALOG_ATTRIBUTES: [&str; 6] = [
    "performance",
    "availability",
    "security",
    "modifiability",
    "usability",
    "testability",
];

/// Template stubs for `quality_attribute` (case-insensitive). Unknown
/// attributes yield an empty list.
pub fn suggest_general_scenarios(quality_attribute: &str) -> Vec<SixPart> {
    let templates: &[Template] = match quality_attribute.trim().to_ascii_lowercase().as_str() {
        "performance" => PERFORMANCE,
        "availability" => AVAILABILITY,
        "security" => SECURITY,
        "modifiability" => MODIFIABILITY,
        "usability" => USABILITY,
        "testability" => TESTABILITY,
        _ => &[],
    };
    templates.iter().map(Template::to_six_part).collect()
}
