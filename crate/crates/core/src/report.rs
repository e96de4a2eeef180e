//! Check reports: one record per verified identity, serialized as
//! line-delimited JSON with a stable field order.

use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Annotations (conventions, amended table entries); never a failure.
    Info,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub detail: String,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    records: Vec<CheckRecord>,
}

/// Longest rendering kept in a failure record.
const DETAIL_LIMIT: usize = 4000;

fn clip(s: String) -> String {
    if s.len() <= DETAIL_LIMIT {
        return s;
    }
    let mut cut = DETAIL_LIMIT;
    while !s.is_char_boundary(cut) {
        cut -= 1;
    }
    format!("{}...", &s[..cut])
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, id: impl Into<String>, anchor: &str, status: Status, detail: impl Into<String>, seed: u64) {
        self.records.push(CheckRecord {
            id: id.into(),
            anchor: anchor.to_string(),
            status,
            detail: clip(detail.into()),
            seed,
        });
    }

    /// Records the outcome of comparing two renderings of the same quantity.
    pub fn compare(&mut self, id: impl Into<String>, anchor: &str, equal: bool, lhs: impl FnOnce() -> String, rhs: impl FnOnce() -> String, seed: u64) {
        if equal {
            self.push(id, anchor, Status::Pass, "", seed);
        } else {
            self.push(id, anchor, Status::Fail, format!("lhs = {} ; rhs = {}", lhs(), rhs()), seed);
        }
    }

    pub fn info(&mut self, id: impl Into<String>, anchor: &str, detail: impl Into<String>) {
        self.push(id, anchor, Status::Info, detail, 0);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// Prefixes every record id, used when nesting reports.
    pub fn prefixed(mut self, prefix: &str) -> Report {
        for r in &mut self.records {
            r.id = format!("{prefix}/{}", r.id);
        }
        self
    }

    pub fn records(&self) -> &[CheckRecord] {
        &self.records
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail).collect()
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn num_checks(&self) -> usize {
        self.records.iter().filter(|r| r.status != Status::Info).count()
    }

    /// Records sorted by id (stable for equal ids).
    pub fn sorted(mut self) -> Report {
        self.records.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Report, serde_json::Error> {
        let records = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(serde_json::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Report { records })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_field_order_and_roundtrip() {
        let mut r = Report::new();
        r.push("b", "law", Status::Fail, "x", 7);
        r.push("a", "law", Status::Pass, "", 7);
        let r = r.sorted();
        let text = r.to_jsonl();
        assert!(text.starts_with(r#"{"id":"a","anchor":"law","status":"pass","detail":"","seed":7}"#));
        assert_eq!(Report::from_jsonl(&text).unwrap(), r);
        assert!(!r.passed());
        assert_eq!(r.failures().len(), 1);
    }
}
