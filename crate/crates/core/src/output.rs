//! CSV rendering shared by the command-line front end and the tests.
//!
//! Numbers are written with 15 significant digits, `.` as decimal separator,
//! trailing zeros trimmed.

use crate::dqc1::Dqc1Row;
use crate::dynamics::{Channel, GapRow, Trajectory};
use crate::measures::CorrelationReport;

/// `%.15g`-style formatting.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: vec![],
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_number(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn trajectory_table(traj: &Trajectory) -> Table {
    let mut t = Table::new(&["t", "d_g", "q", "gap", "negativity"]);
    for (&time, r) in traj.times.iter().zip(&traj.reports) {
        t.push(vec![time, r.d_g, r.q, r.gap(), r.negativity]);
    }
    t
}

pub fn dqc1_table(rows: &[Dqc1Row]) -> Table {
    let mut t = Table::new(&["mu", "d_g", "q", "entropic"]);
    for r in rows {
        t.push(vec![r.mu, r.d_g, r.q, r.entropic]);
    }
    t
}

pub fn gap_table(param_name: &str, rows: &[GapRow]) -> Table {
    let mut t = Table::new(&[param_name, "t_max", "max_gap"]);
    for r in rows {
        t.push(vec![r.param, r.t_max, r.max_gap]);
    }
    t
}

pub fn scatter_table(reports: &[CorrelationReport]) -> Table {
    let mut t = Table::new(&["d_g", "q"]);
    for r in reports {
        t.push(vec![r.d_g, r.q]);
    }
    t
}

/// `channel_p1-v1_p2-v2.csv`, channel parameters first, then `extra`.
pub fn trajectory_filename(channel: &Channel, extra: &[(&str, f64)]) -> String {
    let mut name = channel.name().to_string();
    for (k, v) in channel.parameters().iter().chain(extra) {
        name.push_str(&format!("_{k}-{}", format_number(*v)));
    }
    name.push_str(".csv");
    name
}
