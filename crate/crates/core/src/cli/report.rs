//! Deterministic report rendering: aligned text or tab-separated rows.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Rows,
}

/// A titled list of fields, an optional table and an optional verbatim
/// block (documents, matrices).
#[derive(Clone, Debug, Default)]
pub struct Report {
    tag: String,
    summary: Vec<String>,
    fields: Vec<(String, String)>,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
    block: Option<String>,
}

impl Report {
    pub fn new(tag: &str) -> Self {
        Report { tag: tag.to_string(), ..Report::default() }
    }

    /// A free-text line printed under the tag.
    pub fn line(mut self, text: impl Into<String>) -> Self {
        self.summary.push(text.into());
        self
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn table(mut self, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some((headers.iter().map(|h| h.to_string()).collect(), rows));
        self
    }

    pub fn block(mut self, text: impl Into<String>) -> Self {
        self.block = Some(text.into());
        self
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                writeln!(out, "[{}]", self.tag).unwrap();
                for s in &self.summary {
                    writeln!(out, "{s}").unwrap();
                }
                for (k, v) in &self.fields {
                    writeln!(out, "{k}: {v}").unwrap();
                }
                if let Some((headers, rows)) = &self.table {
                    let widths: Vec<usize> = (0..headers.len())
                        .map(|c| rows.iter().map(|r| r[c].len()).chain([headers[c].len()]).max().unwrap_or(0))
                        .collect();
                    let line = |cells: &[String]| {
                        let padded: Vec<String> =
                            cells.iter().zip(&widths).map(|(cell, w)| format!("{cell:>w$}")).collect();
                        padded.join("  ")
                    };
                    writeln!(out, "{}", line(headers)).unwrap();
                    for r in rows {
                        writeln!(out, "{}", line(r)).unwrap();
                    }
                }
            }
            Format::Rows => {
                writeln!(out, "tag\t{}", self.tag).unwrap();
                for s in &self.summary {
                    writeln!(out, "note\t{s}").unwrap();
                }
                for (k, v) in &self.fields {
                    writeln!(out, "{k}\t{v}").unwrap();
                }
                if let Some((headers, rows)) = &self.table {
                    writeln!(out, "{}", headers.join("\t")).unwrap();
                    for r in rows {
                        writeln!(out, "{}", r.join("\t")).unwrap();
                    }
                }
            }
        }
        if let Some(b) = &self.block {
            out.push_str(b);
            if !b.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}
