//! Proposition outcomes and their serialised form.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::group::{Group, Subgroup};

/// Why a passing check is trusted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Basis {
    /// Every hypothesis was verified on the instance itself.
    Instance,
    /// A boundary-condition hypothesis was taken from the static ledger.
    LedgerEstablished { citation: String },
    /// A boundary-condition hypothesis is only supported by corpus evidence.
    LedgerEvidence { critical_groups: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub value: String,
}

impl Witness {
    pub fn new(label: impl Into<String>, value: impl ToString) -> Self {
        Witness {
            label: label.into(),
            value: value.to_string(),
        }
    }

    pub fn subgroup(label: impl Into<String>, s: &Subgroup) -> Self {
        Witness::new(label, describe_subgroup(s))
    }
}

/// `order N [a,b,...]`: a compact, re-checkable subgroup rendering.
pub fn describe_subgroup(s: &Subgroup) -> String {
    let members: Vec<String> = s.elements().iter().map(|x| x.to_string()).collect();
    format!("order {} [{}]", s.order(), members.join(","))
}

/// Generators of a subgroup in the group's own notation.
pub fn describe_generators(g: &Group, s: &Subgroup) -> Vec<String> {
    g.subgroup_generators(s)
        .into_iter()
        .map(|x| g.describe_element(x))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Pass { basis: Basis },
    Skip { reason: String },
    Fail { witness: Vec<Witness> },
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome::Pass {
            basis: Basis::Instance,
        }
    }

    pub fn skip(reason: impl Into<String>) -> Self {
        Outcome::Skip {
            reason: reason.into(),
        }
    }

    /// A failure must carry at least one witness entry.
    pub fn fail(witness: Vec<Witness>) -> Self {
        assert!(!witness.is_empty(), "failures carry a witness");
        Outcome::Fail { witness }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass { .. })
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }

    pub fn is_skip(&self) -> bool {
        matches!(self, Outcome::Skip { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass { .. } => "pass",
            Outcome::Skip { .. } => "skip",
            Outcome::Fail { .. } => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub proposition: String,
    pub group: String,
    pub group_id: String,
    pub params: BTreeMap<String, String>,
    pub outcome: Outcome,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PropositionReport {
    pub fn new(proposition: &str, group: &str, g: Option<&Group>, params: BTreeMap<String, String>, outcome: Outcome) -> Self {
        PropositionReport {
            proposition: proposition.to_string(),
            group: group.to_string(),
            group_id: g.map(|g| g.id().to_string()).unwrap_or_default(),
            params,
            outcome,
            elapsed: Duration::ZERO,
        }
    }
}

/// Builds a parameter map from `(key, value)` pairs.
pub fn params<I, K, V>(pairs: I) -> BTreeMap<String, String>
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: ToString,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.into(), v.to_string()))
        .collect()
}
