//! Report documents: `format: 1`, `kind: report`, scalar fields, then
//! indented sections. Nothing time- or thread-dependent goes in here.

use std::fmt::Write as _;

#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, String)>,
    sections: Vec<(String, Vec<String>)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.field("command", command);
        r
    }

    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn section(&mut self, key: &str, lines: impl IntoIterator<Item = String>) -> &mut Self {
        self.sections.push((key.to_string(), lines.into_iter().collect()));
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::from("format: 1\nkind: report\n");
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k}: {v}");
        }
        for (k, lines) in &self.sections {
            let _ = writeln!(out, "{k}:");
            for l in lines {
                let _ = writeln!(out, "  {l}");
            }
        }
        out
    }
}
