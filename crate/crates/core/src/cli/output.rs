//! Rendering of command results as tables, CSV or JSON envelopes.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// What a command hands back for rendering.
pub struct Outcome {
    pub payload: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub table: String,
    /// `(n, clt_distance)` pairs for `--plot-data`.
    pub plot: Option<Vec<(usize, f64)>>,
    pub pass: bool,
}

impl Outcome {
    pub fn new<T: Serialize>(payload: &T) -> Self {
        Outcome {
            payload: serde_json::to_value(payload).expect("payload serializes"),
            header: Vec::new(),
            rows: Vec::new(),
            table: String::new(),
            plot: None,
            pass: true,
        }
    }

    pub fn csv<S: Into<String>>(mut self, header: impl IntoIterator<Item = S>, rows: Vec<Vec<String>>) -> Self {
        self.header = header.into_iter().map(Into::into).collect();
        self.rows = rows;
        self
    }

    pub fn table(mut self, text: String) -> Self {
        self.table = text;
        self
    }

    pub fn pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn plot(mut self, points: Vec<(usize, f64)>) -> Self {
        self.plot = Some(points);
        self
    }
}

/// Top-level JSON document; keys come out sorted.
#[derive(Serialize)]
pub struct Envelope<'a> {
    pub command: &'a str,
    pub format: Format,
    pub payload: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

pub fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

pub fn render(outcome: &Outcome, command: &str, format: Format, meta: bool) -> Result<Vec<u8>, String> {
    let mut buf = Vec::new();
    match format {
        Format::Json => {
            let env = Envelope {
                command,
                format,
                payload: &outcome.payload,
                timestamp: meta.then(unix_now),
            };
            let text = crate::json::to_canonical_string(&env).map_err(|e| e.to_string())?;
            buf.extend_from_slice(text.as_bytes());
            buf.push(b'\n');
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(&outcome.header).map_err(|e| e.to_string())?;
            for row in &outcome.rows {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            w.flush().map_err(|e| e.to_string())?;
        }
        Format::Table => {
            if meta {
                writeln!(buf, "# gpoly {command} (unix time {})", unix_now()).map_err(|e| e.to_string())?;
            }
            buf.extend_from_slice(outcome.table.as_bytes());
            if !outcome.table.ends_with('\n') {
                buf.push(b'\n');
            }
        }
    }
    Ok(buf)
}

/// Two whitespace-separated columns, one point per line.
pub fn plot_file(points: &[(usize, f64)]) -> String {
    let mut s = String::from("# n clt_distance\n");
    for (n, y) in points {
        s.push_str(&format!("{n} {y:.12e}\n"));
    }
    s
}

/// Left-aligned columns padded to the widest cell.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:<w$}", w = *w))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&line(rule.iter().map(String::as_str).collect()));
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let t = text_table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxyz  1\n");
    }

    #[test]
    fn json_envelope_sorted_without_meta() {
        let o = Outcome::new(&serde_json::json!({"z": 1, "a": 2}));
        let s = String::from_utf8(render(&o, "x", Format::Json, false).unwrap()).unwrap();
        assert_eq!(s, "{\"command\":\"x\",\"format\":\"json\",\"payload\":{\"a\":2,\"z\":1}}\n");
    }
}
