//! Rendering a finished command into one of the output formats.

use std::time::Duration;

use serde_json::{json, Value};

use crate::Format;

/// Rows for the csv and record-stream forms, plus `key=value` footer lines
/// that are written after the rows, each prefixed with `# `.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    footer: Vec<String>,
}

impl Table {
    pub fn new<const N: usize>(header: [&str; N]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn row<const N: usize>(&mut self, cells: [String; N]) {
        debug_assert_eq!(N, self.header.len());
        self.rows.push(cells.to_vec());
    }

    pub fn footer(&mut self, lines: Vec<String>) {
        self.footer = lines;
    }

    fn write_csv(&self, with_header: bool) -> std::io::Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        if with_header {
            w.write_record(&self.header)?;
        }
        for r in &self.rows {
            w.write_record(r)?;
        }
        let mut out = w.into_inner().map_err(|e| e.into_error())?;
        for line in &self.footer {
            out.extend_from_slice(format!("# {line}\n").as_bytes());
        }
        Ok(out)
    }

    pub fn to_csv(&self) -> std::io::Result<Vec<u8>> {
        self.write_csv(true)
    }

    /// Comma-separated rows without a header, then the footer.
    pub fn to_plain(&self) -> String {
        let bytes = self.write_csv(false).expect("writing to memory");
        String::from_utf8(bytes).expect("utf-8 cells")
    }
}

/// Everything a command produced, held back until it is known to have
/// succeeded.
pub struct Output {
    command: &'static str,
    params: Value,
    result: Value,
    plain: String,
    table: Table,
    failed: bool,
}

impl Output {
    pub fn new(
        command: &'static str,
        params: Value,
        result: Value,
        plain: String,
        table: Table,
    ) -> Self {
        Output {
            command,
            params,
            result,
            plain,
            table,
            failed: false,
        }
    }

    /// Marks the output as reporting a counterexample.
    pub fn failed_if(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn exit_code(&self) -> u8 {
        if self.failed {
            3
        } else {
            0
        }
    }

    pub fn render(&self, format: Format, elapsed: Option<Duration>) -> std::io::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "params": self.params,
                    "result": self.result,
                    "duration_ms": elapsed.map(|d| d.as_millis() as u64),
                });
                let mut out = serde_json::to_vec_pretty(&doc)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => self.table.to_csv(),
            Format::Plain => Ok(self.plain.clone().into_bytes()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Output {
        let mut table = Table::new(["p", "q"]);
        table.row(["2".to_string(), "3".to_string()]);
        table.footer(vec!["counterexamples=1".into()]);
        Output::new(
            "demo",
            json!({"n": 1}),
            json!({"x": "1/2"}),
            "plain\n".into(),
            table,
        )
    }

    #[test]
    fn counterexamples_exit_3() {
        assert_eq!(sample().exit_code(), 0);
        assert_eq!(sample().failed_if(true).exit_code(), 3);
    }

    #[test]
    fn formats() {
        let out = sample();
        let csv = out.render(Format::Csv, None).unwrap();
        assert_eq!(csv, b"p,q\n2,3\n# counterexamples=1\n");
        let plain = out.table.to_plain();
        assert_eq!(plain, "2,3\n# counterexamples=1\n");
        let doc: Value = serde_json::from_slice(&out.render(Format::Json, None).unwrap()).unwrap();
        assert_eq!(doc["command"], "demo");
        assert!(doc["duration_ms"].is_null());
        let timed = out
            .render(Format::Json, Some(Duration::from_millis(42)))
            .unwrap();
        let doc: Value = serde_json::from_slice(&timed).unwrap();
        assert_eq!(doc["duration_ms"], 42);
    }
}
