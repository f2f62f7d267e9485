//! Deterministic report rendering: a stable plain-text line grammar and an
//! equivalent JSON form. Identical inputs and flags produce byte-identical
//! output.

use serde::Serialize;

pub const TOOL: &str = "kforge";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Section {
    Check {
        name: String,
        passed: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<String>,
    },
    Fact {
        key: String,
        value: String,
    },
    Entry {
        key: String,
        index: String,
        value: String,
    },
    Note {
        text: String,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
    pub sections: Vec<Section>,
    pub result: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            command: command.to_string(),
            model: None,
            digest: None,
            sections: Vec::new(),
            result: "pass".to_string(),
        }
    }

    pub fn with_model(mut self, path: &str, digest: &str) -> Self {
        self.model = Some(path.to_string());
        self.digest = Some(format!("sha256:{digest}"));
        self
    }

    pub fn fact(&mut self, key: &str, value: impl std::fmt::Display) {
        self.sections.push(Section::Fact {
            key: key.to_string(),
            value: value.to_string(),
        });
    }

    pub fn entry(&mut self, key: &str, index: impl std::fmt::Display, value: impl std::fmt::Display) {
        self.sections.push(Section::Entry {
            key: key.to_string(),
            index: index.to_string(),
            value: value.to_string(),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.sections.push(Section::Note { text: text.into() });
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>) {
        if !passed {
            self.result = "fail".to_string();
        }
        self.sections.push(Section::Check {
            name: name.into(),
            passed,
            witness,
        });
    }

    /// Appends every check of a validation report under a `prefix.` namespace.
    pub fn checks_from(&mut self, prefix: &str, report: &kforge_core::ValidationReport) {
        for c in &report.checks {
            self.check(format!("{prefix}.{}", c.name), c.passed, c.witness.clone());
        }
    }

    pub fn passed(&self) -> bool {
        self.result == "pass"
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.tool, self.version));
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(model) = &self.model {
            out.push_str(&format!("model: {model}\n"));
        }
        if let Some(digest) = &self.digest {
            out.push_str(&format!("digest: {digest}\n"));
        }
        for section in &self.sections {
            match section {
                Section::Check {
                    name,
                    passed,
                    witness,
                } => {
                    let status = if *passed { "PASS" } else { "FAIL" };
                    match witness {
                        Some(w) => out.push_str(&format!("check {name}: {status} ({w})\n")),
                        None => out.push_str(&format!("check {name}: {status}\n")),
                    }
                }
                Section::Fact { key, value } => out.push_str(&format!("{key}: {value}\n")),
                Section::Entry { key, index, value } => {
                    out.push_str(&format!("{key}[{index}] = {value}\n"))
                }
                Section::Note { text } => out.push_str(&format!("note: {text}\n")),
            }
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json()
        } else {
            self.to_text()
        }
    }
}
