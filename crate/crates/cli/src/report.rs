//! The output document and its text rendering.

use brauer_core::group::FiniteGroup;
use brauer_core::sharp::FieldDescriptor;
use brauer_core::supergroup::CheckReport;
use brauer_core::Budgets;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Cayley tables are echoed only up to this order.
const TABLE_ECHO: usize = 64;

/// Element indexing used by every index in the document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHeader {
    pub order: usize,
    pub identity: usize,
    pub generators: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
    pub elements: Vec<String>,
    /// Generator word of each element (indices into `generators`).
    pub words: Vec<Vec<usize>>,
}

impl GroupHeader {
    pub fn new(g: &FiniteGroup, u: Option<usize>) -> Self {
        GroupHeader {
            order: g.order(),
            identity: g.identity(),
            generators: g.generators().to_vec(),
            u,
            elements: (0..g.order()).map(|x| g.label(x)).collect(),
            words: (0..g.order()).map(|x| g.word(x)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    pub command: String,
    pub status: String,
    pub field: String,
    pub budgets: Budgets,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupHeader>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Document {
    pub fn new(command: &str, field: FieldDescriptor, budgets: Budgets, group: Option<GroupHeader>, result: Value, status: &str) -> Self {
        Document {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            status: status.to_string(),
            field: field.name().to_string(),
            budgets,
            seed: budgets.seed,
            group,
            result,
            error: None,
        }
    }

    pub fn error(command: &str, field: FieldDescriptor, budgets: Budgets, message: &str) -> Self {
        let mut d = Document::new(command, field, budgets, None, Value::Null, "error");
        d.error = Some(message.to_string());
        d
    }
}

/// "WeylTable { .. }" → "weyl-table".
pub fn command_name(debug: &str) -> String {
    let head: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
    let mut out = String::new();
    for (i, c) in head.chars().enumerate() {
        if c.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.extend(c.to_lowercase());
    }
    out
}

pub fn small_table(t: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    (t.len() <= TABLE_ECHO).then(|| t.to_vec())
}

pub fn merge_reports(parts: Vec<CheckReport>, check: &str) -> CheckReport {
    let mut out = CheckReport {
        check: check.to_string(),
        passed: true,
        mode: if parts.iter().all(|r| r.mode == "exhaustive") { "exhaustive" } else { "sampled" }.into(),
        checked: 0,
        counterexample: None,
    };
    for r in parts {
        out.checked += r.checked;
        if !r.passed && out.passed {
            out.passed = false;
            out.counterexample = Some(format!("{}: {}", r.check, r.counterexample.unwrap_or_default()));
        }
    }
    out
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().map(|x| inline(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn walk(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                // the element header and tables are for machines
                if matches!(k.as_str(), "words" | "cayley_table" | "representatives" | "representative" | "elements") {
                    if let Value::Array(a) = x {
                        out.push_str(&format!("{pad}{k}: ({} entries)\n", a.len()));
                        continue;
                    }
                }
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{i}]\n"));
                        walk(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

/// Indented key/value rendering of the document.
pub fn to_text(doc: &Value) -> String {
    let mut out = String::new();
    walk(doc, 0, &mut out);
    out.trim_end().to_string()
}
