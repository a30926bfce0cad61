//! Machine-readable outcomes of the verification procedures.  Every check
//! produces a [`CheckReport`]; a failing report always carries at least one
//! witness pinpointing the objects and morphism coordinates involved.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    Unsupported,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn pass(check: &str) -> Self {
        CheckReport {
            check: check.into(),
            verdict: Verdict::Pass,
            witnesses: vec![],
            notes: vec![],
        }
    }

    pub fn fail(check: &str, witness: serde_json::Value) -> Self {
        CheckReport {
            check: check.into(),
            verdict: Verdict::Fail,
            witnesses: vec![witness],
            notes: vec![],
        }
    }

    pub fn skipped(check: &str, note: &str) -> Self {
        CheckReport {
            check: check.into(),
            verdict: Verdict::Skipped,
            witnesses: vec![],
            notes: vec![note.into()],
        }
    }

    pub fn unsupported(check: &str, note: &str) -> Self {
        CheckReport {
            check: check.into(),
            verdict: Verdict::Unsupported,
            witnesses: vec![],
            notes: vec![note.into()],
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witnesses.push(witness);
        self
    }

    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// The three-valued reading used by the cross-validation suites:
    /// pass ↦ true, fail ↦ false, skipped/unsupported ↦ unknown.
    pub fn as_bool(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Pass => Some(true),
            Verdict::Fail => Some(false),
            Verdict::Skipped | Verdict::Unsupported => None,
        }
    }

    /// Fold a list of sub-outcomes into one report: any fail dominates,
    /// then unsupported, then skipped; witnesses and notes are pooled.
    pub fn merge(check: &str, parts: Vec<CheckReport>) -> Self {
        let mut out = CheckReport::pass(check);
        let mut rank = 0u8;
        for p in parts {
            let r = match p.verdict {
                Verdict::Pass => 0,
                Verdict::Skipped => 1,
                Verdict::Unsupported => 2,
                Verdict::Fail => 3,
            };
            if r > rank {
                rank = r;
                out.verdict = p.verdict;
            }
            out.witnesses.extend(p.witnesses);
            for n in p.notes {
                out.notes.push(format!("{}: {}", p.check, n));
            }
        }
        out
    }
}

/// Exit status for a batch of reports: 0 when nothing failed, 1 otherwise.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| r.is_fail()) {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_takes_the_worst_verdict() {
        let parts = vec![
            CheckReport::pass("x"),
            CheckReport::skipped("y", "no data"),
            CheckReport::fail("z", serde_json::json!({"at": 3})),
        ];
        let m = CheckReport::merge("suite", parts);
        assert_eq!(m.verdict, Verdict::Fail);
        assert_eq!(m.witnesses.len(), 1);
        assert!(m.notes.iter().any(|n| n.starts_with("y:")));
        assert_eq!(exit_code(&[m]), 1);
    }

    #[test]
    fn serialized_field_names_are_stable() {
        let r = CheckReport::fail("full", serde_json::json!({"pair": ["a", "b"]}));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["check"], "full");
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["witnesses"][0]["pair"][0], "a");
    }
}
