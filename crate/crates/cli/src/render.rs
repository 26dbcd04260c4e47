//! Rendering plumbing shared by every subcommand: scalar display styles,
//! aligned text tables, CSV records, and the canonical JSON envelope.

use netprod::scalar::{self, Scalar};
use netprod::{BipartiteNetwork, Side};
use serde_json::{json, Value};

/// How scalars are displayed in text and CSV output.
///
/// JSON is *not* affected: it always carries canonical exact forms so that
/// parsing and re-serializing the document is byte-identical and lossless.
#[derive(Clone, Copy, Debug)]
pub struct ScalarStyle {
    /// Render `p/q` / integers instead of decimals.
    pub exact: bool,
    /// Fixed decimal places (banker's rounding); `None` means 6
    /// significant digits.
    pub places: Option<usize>,
}

impl ScalarStyle {
    pub fn render(&self, x: &Scalar) -> String {
        if self.exact {
            scalar::to_exact(x)
        } else if let Some(places) = self.places {
            scalar::to_decimal(x, places)
        } else {
            scalar::to_significant(x, 6)
        }
    }
}

/// Exact string for JSON payloads: `p/q` in lowest terms, integers plain.
pub fn json_scalar(x: &Scalar) -> Value {
    Value::String(scalar::to_exact(x))
}

/// Column-aligned text table: every row padded to its column's width,
/// two-space gutters, no trailing whitespace, one line per row.
pub fn align(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            if i + 1 < row.len() {
                line.push_str(&format!("{cell:<width$}", width = widths[i]));
            } else {
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// The same rows as RFC-4180 CSV (header row included by the caller).
pub fn csv_string(rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.write_record(row).expect("writing to a Vec cannot fail");
    }
    let bytes = writer.into_inner().expect("flushing a Vec cannot fail");
    String::from_utf8(bytes).expect("CSV output is UTF-8")
}

fn network_json(network: &BipartiteNetwork) -> Value {
    json!({
        "k": network.k_size(),
        "labels": { "K": network.k_labels(), "M": network.m_labels() },
        "m": network.m_size(),
    })
}

/// The canonical JSON document every command emits in `--output json`:
/// `command`, `exact`, `network`, `params {delta, t}`, `result`. Keys are
/// stored in a sorted map, so serialization order is stable and re-parsing
/// plus re-rendering reproduces the bytes.
pub fn envelope(
    command: &str,
    network: Option<&BipartiteNetwork>,
    delta: Option<&Scalar>,
    t: Option<usize>,
    exact: bool,
    result: Value,
) -> Value {
    json!({
        "command": command,
        "exact": exact,
        "network": network.map(network_json).unwrap_or(Value::Null),
        "params": {
            "delta": delta.map(json_scalar).unwrap_or(Value::Null),
            "t": t.map(|t| json!(t)).unwrap_or(Value::Null),
        },
        "result": result,
    })
}

pub fn side_name(side: Side) -> &'static str {
    match side {
        Side::K => "K",
        Side::M => "M",
    }
}
