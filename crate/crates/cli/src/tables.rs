//! The bundled reference tables and their golden files.
//!
//! Each table is regenerated from the library on every run and rendered in
//! shortest exact form (integers, terminating decimals, else `p/q`; the
//! `x^t` table keeps pure fractions to match how those values are usually
//! quoted). The `paper-tables` command diffs the regenerated text against
//! the golden copies committed under `goldens/`, or rewrites them with
//! `--write`.

use std::fmt::Write as _;
use std::path::PathBuf;

use netprod::fan::{difference_value_sig, fan_value_sig};
use netprod::scalar::{frac, to_exact, to_shortest_exact, Scalar};
use netprod::{
    an_value_sig, difference_distribution, individual_productivity, lrp,
    productivity_allocation, shapley_closed, Allocation, AttenuationParams,
    BipartiteNetwork, Side, Signature,
};

use crate::render::align;

/// One regenerable reference table: the golden file is `<name>.txt`.
pub struct RefTable {
    pub name: &'static str,
    pub content: String,
}

/// All bundled tables, in file order.
pub fn all_tables() -> Vec<RefTable> {
    vec![
        table_01(),
        table_02(),
        table_03(),
        table_04(),
        table_05(),
        table_06(),
        table_07(),
        table_08(),
        table_10(),
        table_11(),
    ]
}

/// Where the golden copies live unless `--dir` overrides it.
pub fn default_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("goldens")
}

/// Outcome of diffing one regenerated table against its golden file.
pub enum TableStatus {
    Ok,
    Missing,
    Mismatch { diff: String },
}

impl TableStatus {
    pub fn label(&self) -> &'static str {
        match self {
            TableStatus::Ok => "ok",
            TableStatus::Missing => "missing",
            TableStatus::Mismatch { .. } => "mismatch",
        }
    }
}

/// Line-by-line comparison; the diff names the first difference.
pub fn compare(rendered: &str, golden: Option<&str>) -> TableStatus {
    let Some(golden) = golden else {
        return TableStatus::Missing;
    };
    if rendered == golden {
        return TableStatus::Ok;
    }
    let mut diff = String::new();
    let rendered_lines: Vec<&str> = rendered.lines().collect();
    let golden_lines: Vec<&str> = golden.lines().collect();
    for i in 0..rendered_lines.len().max(golden_lines.len()) {
        let want = golden_lines.get(i);
        let got = rendered_lines.get(i);
        if want != got {
            let _ = writeln!(diff, "first difference at line {}", i + 1);
            let _ = writeln!(diff, "  golden   | {}", want.unwrap_or(&"<end of file>"));
            let _ = writeln!(diff, "  rendered | {}", got.unwrap_or(&"<end of file>"));
            break;
        }
    }
    TableStatus::Mismatch { diff }
}

fn net(k: usize, m: usize) -> BipartiteNetwork {
    BipartiteNetwork::from_sizes(k, m).expect("fixed sizes are valid")
}

fn params(delta: Scalar, t: usize) -> AttenuationParams {
    AttenuationParams::new(delta, t).expect("fixed parameters are valid")
}

fn signatures(network: &BipartiteNetwork) -> Vec<Signature> {
    let mut sigs = Vec::new();
    for k in 0..=network.k_size() {
        for m in 0..=network.m_size() {
            sigs.push(Signature::new(k, m));
        }
    }
    sigs
}

fn build(name: &'static str, title: &str, rows: &[Vec<String>]) -> RefTable {
    RefTable { name, content: format!("# {name} — {title}\n{}", align(rows)) }
}

/// Header + one row per node, one column per allocation.
fn allocation_rows(network: &BipartiteNetwork, columns: &[(&str, &Allocation)]) -> Vec<Vec<String>> {
    let mut header = vec!["node".to_string()];
    header.extend(columns.iter().map(|(name, _)| name.to_string()));
    let mut rows = vec![header];
    for (label, _) in network.nodes() {
        let mut row = vec![label.to_string()];
        for (_, allocation) in columns {
            let value = allocation.get(label).expect("allocations cover the network");
            row.push(to_shortest_exact(value));
        }
        rows.push(row);
    }
    rows
}

/// Truncated game values at delta = 1/2 over all coalition shapes.
fn table_01() -> RefTable {
    let network = net(1, 2);
    let horizons = [0usize, 1, 2, 3, 10];
    let mut header = vec!["k".to_string(), "m".to_string()];
    header.extend(horizons.iter().map(|t| format!("v^{t}")));
    let mut rows = vec![header];
    for sig in signatures(&network) {
        let mut row =
            vec![sig.count(Side::K).to_string(), sig.count(Side::M).to_string()];
        for &t in &horizons {
            row.push(to_shortest_exact(&fan_value_sig(sig, &params(frac(1, 2), t))));
        }
        rows.push(row);
    }
    build(
        "table_01",
        "FAN game values on the (1,2) network at delta = 1/2, horizons 0, 1, 2, 3, 10",
        &rows,
    )
}

/// Node productivities in the grand coalition at delta = 1/2.
fn table_02() -> RefTable {
    let network = net(1, 2);
    let grand = network.grand();
    let horizons = [0usize, 1, 2, 3, 10];
    let mut header = vec!["node".to_string()];
    header.extend(horizons.iter().map(|t| format!("t={t}")));
    let mut rows = vec![header];
    for (label, _) in network.nodes() {
        let mut row = vec![label.to_string()];
        for &t in &horizons {
            let p = individual_productivity(&grand, label, &params(frac(1, 2), t));
            row.push(to_shortest_exact(&p));
        }
        rows.push(row);
    }
    build(
        "table_02",
        "productivity in the grand coalition on the (1,2) network at delta = 1/2",
        &rows,
    )
}

/// Truncated values converging to the limit game at delta = 1/2.
fn table_03() -> RefTable {
    let network = net(1, 2);
    let delta = frac(1, 2);
    let sigs = signatures(&network);
    let mut header = vec!["t".to_string()];
    header.extend(sigs.iter().map(|s| format!("({},{})", s.count(Side::K), s.count(Side::M))));
    let mut rows = vec![header];
    for t in [0usize, 1, 2, 3, 10] {
        let mut row = vec![t.to_string()];
        for &sig in &sigs {
            row.push(to_shortest_exact(&fan_value_sig(sig, &params(delta.clone(), t))));
        }
        rows.push(row);
    }
    let mut limit = vec!["limit".to_string()];
    for &sig in &sigs {
        let value = an_value_sig(sig, &delta).expect("every shape converges at 1/2");
        limit.push(to_shortest_exact(&value));
    }
    rows.push(limit);
    build(
        "table_03",
        "convergence of the FAN games to the AN game on the (1,2) network at delta = 1/2",
        &rows,
    )
}

/// Limit productivity against the Shapley value at delta = 1/2.
fn table_04() -> RefTable {
    let network = net(1, 2);
    let delta = frac(1, 2);
    let p = productivity_allocation(&network, &delta).expect("convergent");
    let phi = shapley_closed(&network, &delta).expect("convergent");
    let rows = allocation_rows(&network, &[("p(1/2)", &p), ("shapley(1/2)", &phi)]);
    build(
        "table_04",
        "productivity in the grand coalition vs Shapley value on the (1,2) network at delta = 1/2",
        &rows,
    )
}

/// Limit productivity against the Shapley value at delta = 1/3 on (1,3).
fn table_05() -> RefTable {
    let network = net(1, 3);
    let delta = frac(1, 3);
    let p = productivity_allocation(&network, &delta).expect("convergent");
    let phi = shapley_closed(&network, &delta).expect("convergent");
    let rows = allocation_rows(&network, &[("p(1/3)", &p), ("shapley(1/3)", &phi)]);
    build(
        "table_05",
        "productivity in the grand coalition vs Shapley value on the (1,3) network at delta = 1/3",
        &rows,
    )
}

/// Difference game values at delta = 1/2 over all coalition shapes.
fn table_06() -> RefTable {
    let network = net(1, 2);
    let delta = frac(1, 2);
    let sigs = signatures(&network);
    let mut header = vec!["t".to_string()];
    header.extend(sigs.iter().map(|s| format!("({},{})", s.count(Side::K), s.count(Side::M))));
    let mut rows = vec![header];
    for t in 1usize..=5 {
        let mut row = vec![t.to_string()];
        for &sig in &sigs {
            let value = difference_value_sig(sig, &delta, t).expect("t >= 1");
            row.push(to_shortest_exact(&value));
        }
        rows.push(row);
    }
    build("table_06", "difference games on the (1,2) network at delta = 1/2", &rows)
}

/// Distributions `x^t` at delta = 1/2, kept as fractions.
fn table_07() -> RefTable {
    let network = net(1, 2);
    let delta = frac(1, 2);
    let horizons = 1usize..=5;
    let distributions: Vec<Allocation> = horizons
        .clone()
        .map(|t| difference_distribution(&network, &delta, t).expect("t >= 1"))
        .collect();
    let mut header = vec!["node".to_string()];
    header.extend(horizons.map(|t| format!("x^{t}")));
    let mut rows = vec![header];
    for (label, _) in network.nodes() {
        let mut row = vec![label.to_string()];
        for x in &distributions {
            row.push(to_exact(x.get(label).expect("covers the network")));
        }
        rows.push(row);
    }
    build("table_07", "distributions x^t on the (1,2) network at delta = 1/2", &rows)
}

/// Productivity, Shapley value, and LRP distribution at delta = 1/2.
fn table_08() -> RefTable {
    let network = net(1, 2);
    let delta = frac(1, 2);
    let p = productivity_allocation(&network, &delta).expect("convergent");
    let phi = shapley_closed(&network, &delta).expect("convergent");
    let omega = lrp(&network, &delta).expect("convergent");
    let rows = allocation_rows(
        &network,
        &[("p(1/2)", &p), ("shapley(1/2)", &phi), ("lrp(1/2)", &omega)],
    );
    build(
        "table_08",
        "Shapley value vs LRP distribution on the (1,2) network at delta = 1/2",
        &rows,
    )
}

/// AN game values on the (1,3) network at both weights.
fn table_10() -> RefTable {
    let network = net(1, 3);
    let half = frac(1, 2);
    let third = frac(1, 3);
    let mut rows = vec![vec![
        "k".to_string(),
        "m".to_string(),
        "v(1/2)".to_string(),
        "v(1/3)".to_string(),
    ]];
    for sig in signatures(&network) {
        rows.push(vec![
            sig.count(Side::K).to_string(),
            sig.count(Side::M).to_string(),
            to_shortest_exact(&an_value_sig(sig, &half).expect("convergent")),
            to_shortest_exact(&an_value_sig(sig, &third).expect("convergent")),
        ]);
    }
    build("table_10", "AN games on the (1,3) network at delta = 1/2 and 1/3", &rows)
}

/// Productivity, Shapley value, and LRP distribution on (1,3), both weights.
fn table_11() -> RefTable {
    let network = net(1, 3);
    let half = frac(1, 2);
    let third = frac(1, 3);
    let p_half = productivity_allocation(&network, &half).expect("convergent");
    let phi_half = shapley_closed(&network, &half).expect("convergent");
    let omega_half = lrp(&network, &half).expect("convergent");
    let p_third = productivity_allocation(&network, &third).expect("convergent");
    let phi_third = shapley_closed(&network, &third).expect("convergent");
    let omega_third = lrp(&network, &third).expect("convergent");
    let rows = allocation_rows(
        &network,
        &[
            ("p(1/2)", &p_half),
            ("shapley(1/2)", &phi_half),
            ("lrp(1/2)", &omega_half),
            ("p(1/3)", &p_third),
            ("shapley(1/3)", &phi_third),
            ("lrp(1/3)", &omega_third),
        ],
    );
    build(
        "table_11",
        "productivity, Shapley value, and LRP distribution on the (1,3) network",
        &rows,
    )
}
