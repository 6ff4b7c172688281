//! Reports: a list of sections, rendered as text or as JSON. The JSON form
//! deserializes back into the same [`Report`].

use std::fmt::Write as _;

use lea_core::EffectAlgebra;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED(cap)")]
    Skipped,
    #[serde(rename = "N/A")]
    NotApplicable,
    /// Plain output, not a check.
    #[serde(rename = "INFO")]
    Info,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED(cap)",
            Status::NotApplicable => "N/A",
            Status::Info => "INFO",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<String>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
}

impl Section {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Section { name: name.into(), status, lines: Vec::new(), data: serde_json::Value::Null }
    }

    pub fn info(name: impl Into<String>) -> Self {
        Self::new(name, Status::Info)
    }

    pub fn line(mut self, l: impl Into<String>) -> Self {
        self.lines.push(l.into());
        self
    }

    pub fn push(&mut self, l: impl Into<String>) {
        self.lines.push(l.into());
    }

    pub fn data(mut self, d: serde_json::Value) -> Self {
        self.data = d;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceInfo {
    /// SHA-256 of the canonical instance file, first 16 hex digits.
    pub digest: String,
    pub elements: Vec<String>,
}

impl InstanceInfo {
    pub fn of(e: &EffectAlgebra) -> Self {
        let hash = Sha256::digest(crate::instance::write(e).as_bytes());
        let digest = hash[..8].iter().map(|b| format!("{b:02x}")).collect();
        InstanceInfo { digest, elements: e.labels().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<InstanceInfo>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str, e: Option<&EffectAlgebra>) -> Self {
        Report { command: command.into(), instance: e.map(InstanceInfo::of), sections: Vec::new() }
    }

    pub fn add(&mut self, s: Section) {
        self.sections.push(s);
    }

    pub fn has(&self, status: Status) -> bool {
        self.sections.iter().any(|s| s.status == status)
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        if let Some(i) = &self.instance {
            let _ = writeln!(out, "instance {} ({} elements)", i.digest, i.elements.len());
        }
        for s in &self.sections {
            match s.status {
                Status::Info => {
                    let _ = writeln!(out, "{}:", s.name);
                }
                st => {
                    let _ = writeln!(out, "[{}] {}", st.tag(), s.name);
                }
            }
            for l in &s.lines {
                let _ = writeln!(out, "  {l}");
            }
        }
        out
    }

    pub fn machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
