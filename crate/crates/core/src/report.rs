//! The common report: a header of context pairs followed by one section per
//! check. Text and structured (JSON) renderings carry the same fields in the
//! same order, so both are byte-stable for a fixed run.

use std::fmt::Write as _;

use serde::Serialize;

/// Named parameters of one instance, in display order.
pub type Witness = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub params: Witness,
    pub verdict: bool,
    pub details: Witness,
}

impl Instance {
    pub fn new(params: Witness, verdict: bool, details: Witness) -> Self {
        Instance {
            params,
            verdict,
            details,
        }
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        lookup(&self.params, key)
    }

    pub fn detail(&self, key: &str) -> Option<&str> {
        lookup(&self.details, key)
    }
}

fn lookup<'a>(w: &'a Witness, key: &str) -> Option<&'a str> {
    w.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

/// One check. `evaluated` counts every instance looked at; `instances` holds
/// the ones worth printing, which always includes every failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Section {
    pub name: String,
    pub evaluated: usize,
    pub failed: usize,
    pub notes: Witness,
    pub instances: Vec<Instance>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section {
            name: name.into(),
            evaluated: 0,
            failed: 0,
            notes: Vec::new(),
            instances: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    /// Count an instance and keep it if it failed or `keep` is set.
    pub fn record(&mut self, instance: Instance, keep: bool) {
        self.evaluated += 1;
        if !instance.verdict {
            self.failed += 1;
        }
        if keep || !instance.verdict {
            self.instances.push(instance);
        }
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_string(), value.to_string()));
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub context: Witness,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: impl Into<String>, context: Witness) -> Self {
        Report {
            command: command.into(),
            context,
            sections: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.sections.iter().all(Section::passed)
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "report: {}", self.command);
        for (k, v) in &self.context {
            let _ = writeln!(out, "{k}: {v}");
        }
        for s in &self.sections {
            let _ = writeln!(
                out,
                "section {}: {} ({} evaluated, {} failed)",
                s.name,
                if s.passed() { "PASS" } else { "FAIL" },
                s.evaluated,
                s.failed
            );
            for (k, v) in &s.notes {
                let _ = writeln!(out, "  {k}: {v}");
            }
            for i in &s.instances {
                let _ = write!(out, "  [{}]", if i.verdict { "true" } else { "false" });
                for (k, v) in &i.params {
                    let _ = write!(out, " {k}={v}");
                }
                if !i.details.is_empty() {
                    out.push_str(" |");
                    for (k, v) in &i.details {
                        let _ = write!(out, " {k}={v}");
                    }
                }
                out.push('\n');
            }
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }

    pub fn to_structured(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            #[serde(flatten)]
            report: &'a Report,
            passed: bool,
        }
        let mut s = serde_json::to_string_pretty(&Doc {
            report: self,
            passed: self.passed(),
        })
        .expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn pair(key: &str, value: impl ToString) -> (String, String) {
    (key.to_string(), value.to_string())
}
