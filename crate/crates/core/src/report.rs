//! Machine-readable suite reports.

use serde::Serialize;

/// One checked instance of a relation or identity.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub key: String,
    pub pass: bool,
    /// witness or short description; the difference element on failure
    pub detail: String,
}

impl InstanceReport {
    pub fn pass(key: impl Into<String>) -> InstanceReport {
        InstanceReport {
            key: key.into(),
            pass: true,
            detail: String::new(),
        }
    }

    pub fn fail(key: impl Into<String>, detail: impl Into<String>) -> InstanceReport {
        InstanceReport {
            key: key.into(),
            pass: false,
            detail: detail.into(),
        }
    }

    pub fn check(key: impl Into<String>, ok: bool, witness: impl Fn() -> String) -> InstanceReport {
        if ok {
            InstanceReport::pass(key)
        } else {
            InstanceReport::fail(key, witness())
        }
    }
}

/// A named suite of instances; passes when every instance passes.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub instances: Vec<InstanceReport>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(name: impl Into<String>, mut instances: Vec<InstanceReport>) -> SuiteReport {
        instances.sort_by(|a, b| a.key.cmp(&b.key));
        let pass = instances.iter().all(|i| i.pass);
        SuiteReport {
            name: name.into(),
            instances,
            pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceReport> {
        self.instances.iter().filter(|i| !i.pass)
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} instances, {} failed)",
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.instances.len(),
            self.instances.iter().filter(|i| !i.pass).count()
        )
    }
}
