use std::fmt;

use serde::{Deserialize, Serialize};

/// One violated law with the first element tuple that breaks it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawFailure {
    pub law: String,
    pub witness: Vec<usize>,
}

/// Outcome of checking a list of laws; every law is scanned and each failing
/// law records its first witness.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub checked: Vec<String>,
    pub failures: Vec<LawFailure>,
}

impl Verdict {
    pub fn new() -> Verdict {
        Verdict::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fails(&self, law: &str) -> bool {
        self.failures.iter().any(|f| f.law == law)
    }

    pub fn failure(&self, law: &str) -> Option<&LawFailure> {
        self.failures.iter().find(|f| f.law == law)
    }

    /// Records `law` as checked, failing with the first witness produced by
    /// `find_violation`, if any.
    pub fn check(&mut self, law: &str, find_violation: impl FnOnce() -> Option<Vec<usize>>) {
        self.checked.push(law.to_string());
        if let Some(witness) = find_violation() {
            self.failures.push(LawFailure {
                law: law.to_string(),
                witness,
            });
        }
    }

    pub fn merge(&mut self, other: Verdict) {
        self.checked.extend(other.checked);
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "PASS ({} laws)", self.checked.len())
        } else {
            write!(f, "FAIL")?;
            for fl in &self.failures {
                write!(f, " [{} at {:?}]", fl.law, fl.witness)?;
            }
            Ok(())
        }
    }
}

/// First element of `0..n` at which `f` and `g` disagree.
pub fn first_difference(n: usize, f: impl Fn(usize) -> usize, g: impl Fn(usize) -> usize) -> Option<Vec<usize>> {
    (0..n).find(|&x| f(x) != g(x)).map(|x| vec![x])
}
