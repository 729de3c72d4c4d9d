//! Report plumbing: every command emits a versioned structured-text
//! document and, on request, a machine-readable JSON twin of the same
//! payload.  The generation time is isolated in a single header field so
//! fixed-seed runs are byte-identical everywhere else.

use serde::Serialize;

pub const SCHEMA: &str = "report/1";

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub schema: &'static str,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    /// The only timestamp in the report.
    pub generated_at: String,
    pub seed: u64,
    pub data: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, seed: u64, data: T) -> Report<T> {
        Report {
            schema: SCHEMA,
            tool: "decstar",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            generated_at: humantime::format_rfc3339_seconds(std::time::SystemTime::now())
                .to_string(),
            seed,
            data,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Full-precision decimal form of a score or length (17 significant
/// digits, round-trips exactly).
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Key-value and table rendering for the text document.
pub struct TextDoc {
    out: String,
}

impl TextDoc {
    pub fn new<T: Serialize>(r: &Report<T>) -> TextDoc {
        let mut doc = TextDoc { out: String::new() };
        doc.kv("schema", r.schema);
        doc.kv("tool", format!("{} {}", r.tool, r.version));
        doc.kv("command", &r.command);
        doc.kv("generated", &r.generated_at);
        doc.kv("seed", r.seed);
        doc
    }

    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        self.out.push_str(&format!("{key}: {value}\n"));
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        self.out.push_str(text.as_ref());
        self.out.push('\n');
    }

    pub fn blank(&mut self) {
        self.out.push('\n');
    }

    pub fn section(&mut self, title: &str) {
        self.blank();
        self.line(title);
        self.line("-".repeat(title.len()));
    }

    /// Left-aligned table with two-space gutters.
    pub fn table(&mut self, header: &[&str], rows: &[Vec<String>]) {
        let cols = header.len();
        let mut w: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for row in rows {
            for (i, cell) in row.iter().enumerate().take(cols) {
                w[i] = w[i].max(cell.len());
            }
        }
        let fmt_row = |cells: &[String]| -> String {
            let mut line = String::new();
            for (i, cell) in cells.iter().enumerate().take(cols) {
                if i > 0 {
                    line.push_str("  ");
                }
                if i + 1 == cols {
                    line.push_str(cell);
                } else {
                    line.push_str(&format!("{cell:<width$}", width = w[i]));
                }
            }
            line
        };
        let head: Vec<String> = header.iter().map(|h| h.to_string()).collect();
        self.line(fmt_row(&head));
        let rule: Vec<String> = w.iter().map(|&n| "-".repeat(n)).collect();
        self.line(fmt_row(&rule));
        for row in rows {
            self.line(fmt_row(row));
        }
    }

    pub fn finish(self) -> String {
        self.out
    }
}
