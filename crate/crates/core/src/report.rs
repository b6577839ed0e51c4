use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Number {
    pub label: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub provenance: String,
}

/// Named pass/fail checks plus exact numbers, in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub numbers: Vec<Number>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        });
    }

    pub fn record(&mut self, name: impl Into<String>, witness: Option<String>) {
        match witness {
            None => self.pass(name),
            Some(w) => self.fail(name, w),
        }
    }

    /// Records a number; it is a check as well when `expected` is given.
    pub fn number(
        &mut self,
        label: impl Into<String>,
        value: &Scalar,
        expected: Option<&Scalar>,
        provenance: impl Into<String>,
    ) {
        let label = label.into();
        if let Some(e) = expected {
            if e == value {
                self.pass(label.clone());
            } else {
                self.fail(
                    label.clone(),
                    format!("expected {}, got {}", e.canonical(), value.canonical()),
                );
            }
        }
        self.numbers.push(Number {
            label,
            value: value.canonical(),
            expected: expected.map(|e| e.canonical()),
            provenance: provenance.into(),
        });
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
        for mut n in other.numbers {
            n.label = format!("{prefix}{}", n.label);
            self.numbers.push(n);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.get(name).map(|c| c.passed).unwrap_or(false)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            match &c.witness {
                Some(w) => writeln!(f, "{mark}  {}  ({w})", c.name)?,
                None => writeln!(f, "{mark}  {}", c.name)?,
            }
        }
        for n in &self.numbers {
            match &n.expected {
                Some(e) => writeln!(f, "  {} = {} (expected {e})", n.label, n.value)?,
                None => writeln!(f, "  {} = {}", n.label, n.value)?,
            }
        }
        Ok(())
    }
}
