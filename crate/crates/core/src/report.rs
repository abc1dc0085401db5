//! Outcomes of theorem checks.

use std::fmt;

use serde::Serialize;

use crate::qcf::{ClassValue, QsymClassFunction};

/// Where two sides of an identity first disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Conjugacy-class representative in cycle notation.
    pub class: Option<String>,
    pub composition: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

/// The verdict of one theorem check on one instance. A failing report
/// always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub theorem: String,
    pub instance: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Supplementary findings, e.g. which inequalities failed.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerdictReport {
    pub fn pass(theorem: &str, instance: &str) -> Self {
        VerdictReport {
            theorem: theorem.to_string(),
            instance: instance.to_string(),
            pass: true,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn fail(theorem: &str, instance: &str, witness: Witness) -> Self {
        VerdictReport {
            theorem: theorem.to_string(),
            instance: instance.to_string(),
            pass: false,
            witness: Some(witness),
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} on {}", self.theorem, self.instance)?;
        if let Some(w) = &self.witness {
            write!(f, " at")?;
            if let Some(c) = &w.class {
                write!(f, " class {c}")?;
            }
            if let Some(a) = &w.composition {
                write!(f, " composition {a}")?;
            }
            write!(f, ": {} != {}", w.lhs, w.rhs)?;
        }
        for n in &self.notes {
            write!(f, "; {n}")?;
        }
        Ok(())
    }
}

/// Compares two quasisymmetric class functions classwise, reporting the
/// first class and composition where they differ.
pub(crate) fn compare_qcf<R: ClassValue>(
    theorem: &str,
    instance: &str,
    lhs: &QsymClassFunction<R>,
    rhs: &QsymClassFunction<R>,
) -> VerdictReport {
    match lhs.first_difference(rhs) {
        None => VerdictReport::pass(theorem, instance),
        Some((k, alpha)) => {
            let (a, b) = (lhs.value(k), rhs.value(k));
            let (l, r) = match &alpha {
                Some(al) => (a.coeff(al).to_string(), b.coeff(al).to_string()),
                None => (a.to_string(), b.to_string()),
            };
            VerdictReport::fail(
                theorem,
                instance,
                Witness {
                    class: Some(lhs.group().class_label(k)),
                    composition: alpha.map(|a| a.to_string()),
                    lhs: l,
                    rhs: r,
                },
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_reports_carry_witnesses() {
        let w = Witness {
            class: Some("(a b)".into()),
            composition: Some("(1,1)".into()),
            lhs: "1".into(),
            rhs: "2".into(),
        };
        let r = VerdictReport::fail("reciprocity", "pair", w);
        assert!(!r.pass && r.witness.is_some());
        assert_eq!(
            r.to_string(),
            "FAIL reciprocity on pair at class (a b) composition (1,1): 1 != 2"
        );
        let p = VerdictReport::pass("reciprocity", "pair");
        assert_eq!(
            p.to_json(),
            serde_json::json!({
                "theorem": "reciprocity", "instance": "pair", "pass": true
            })
        );
    }
}
