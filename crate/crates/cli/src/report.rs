//! Assertion reports: one entry per checked statement, rendered as text
//! or JSON. Rendering is deterministic given the entries.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub loc: String,
    pub desc: String,
    pub status: Status,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(
        &mut self,
        loc: impl Into<String>,
        desc: impl Into<String>,
        ok: bool,
        detail: Option<String>,
    ) {
        self.entries.push(ReportEntry {
            loc: loc.into(),
            desc: desc.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
        });
    }

    pub fn entries(&self) -> &[ReportEntry] {
        &self.entries
    }

    pub fn passed(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == Status::Pass)
            .count()
    }

    pub fn failed(&self) -> usize {
        self.entries.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("[{tag}] {}: {}\n", e.loc, e.desc));
            if let Some(detail) = &e.detail {
                for line in detail.lines() {
                    out.push_str(&format!("       {line}\n"));
                }
            }
        }
        out.push_str(&format!(
            "summary: {} passed, {} failed\n",
            self.passed(),
            self.failed()
        ));
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("report entries serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_entries() {
        let mut r = Report::new();
        r.push("line 1", "first", true, None);
        r.push("line 2", "second", false, Some("why".into()));
        assert_eq!(r.passed(), 1);
        assert_eq!(r.failed(), 1);
        assert!(!r.all_passed());
        let text = r.render_text();
        assert!(text.contains("[FAIL] line 2: second"));
        assert!(text.contains("summary: 1 passed, 1 failed"));
        let json = r.render_json();
        assert!(json.contains("\"status\": \"PASS\""));
        assert!(json.contains("\"detail\": \"why\""));
    }
}
