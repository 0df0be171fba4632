use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    Undecided,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Undecided => "UNDECIDED",
        })
    }
}

/// One named check. `bits` is the precision that decided an enclosure-based
/// check and `None` for exact ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub witness: String,
    pub bits: Option<u32>,
}

impl Check {
    pub fn exact(name: &str, status: CheckStatus, witness: String) -> Self {
        Self {
            name: name.to_string(),
            status,
            witness,
            bits: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl ConstraintReport {
    pub fn new(subject: String) -> Self {
        Self {
            subject,
            checks: Vec::new(),
        }
    }

    /// Appends a check; names are unique within a report.
    pub fn push(&mut self, check: Check) {
        assert!(
            self.get(&check.name).is_none(),
            "duplicate check {}",
            check.name
        );
        self.checks.push(check);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn all_pass(&self) -> bool {
        self.count(CheckStatus::Pass) == self.checks.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for ConstraintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            write!(
                f,
                "  {:<width$}  {:<9}  {}",
                c.name,
                c.status.to_string(),
                c.witness
            )?;
            if let Some(b) = c.bits {
                write!(f, "  [{b} bits]")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "  {} pass, {} fail, {} undecided",
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::Fail),
            self.count(CheckStatus::Undecided)
        )
    }
}
