//! Solution files and their JSON encoding.

use std::collections::BTreeMap;
use std::io;

use serde::{Deserialize, Serialize};
use steiner_core::costs::COST_NOTE;
use steiner_core::{cost_report, CostSpec, Edge, Solution};

use crate::error::CliError;

/// Edge as `[u, v, weight]`; Steiner vertices follow the terminals.
pub type EdgeRow = (usize, usize, f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub n: usize,
    pub interval_count: usize,
    pub candidates_evaluated: u64,
    /// Only filled in under `--timing`, so that output stays reproducible.
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub mst_weight: f64,
    pub total_weight: f64,
    pub savings: f64,
    pub steiner_points: Vec<[f64; 2]>,
    pub edges: Vec<EdgeRow>,
    pub removed_mst_edges: Vec<EdgeRow>,
    pub cost_report: BTreeMap<String, f64>,
    #[serde(default)]
    pub cost_note: String,
    pub stats: Stats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub ok: bool,
    /// Totals recomputed from the solution's vertices.
    pub mst_weight: f64,
    pub total_weight: f64,
    pub checks: Vec<Check>,
}

fn row(e: &Edge) -> EdgeRow {
    (e.u, e.v, e.weight)
}

impl SolutionFile {
    pub fn from_solution(
        sol: &Solution,
        costs: &[CostSpec],
        wall_time_ms: Option<f64>,
    ) -> Result<Self, CliError> {
        let report = cost_report(&sol.tree, costs)?;
        Ok(SolutionFile {
            mst_weight: sol.baseline_mst_weight,
            total_weight: sol.total_weight,
            savings: sol.savings,
            steiner_points: sol.steiner_points.iter().map(|p| [p.x, p.y]).collect(),
            edges: sol.tree.edges().iter().map(row).collect(),
            removed_mst_edges: sol.removed_mst_edges.iter().map(row).collect(),
            cost_report: report
                .entries
                .iter()
                .map(|(spec, v)| (spec.to_string(), *v))
                .collect(),
            cost_note: COST_NOTE.to_string(),
            stats: Stats {
                n: sol.tree.terminal_count(),
                interval_count: sol.stats.interval_count,
                candidates_evaluated: sol.stats.candidates_evaluated,
                wall_time_ms,
            },
            verification: None,
        })
    }
}

/// `%.17g`: every finite `f64` survives a round trip through the text.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0" } else { "0.0" }.to_string();
    }
    let sci = format!("{:.16e}", x.abs());
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mant.chars().filter(char::is_ascii_digit).collect();
    let digits = digits.trim_end_matches('0');
    let body = if (-5..17).contains(&exp) {
        if exp >= 0 {
            let int_len = exp as usize + 1;
            if digits.len() > int_len {
                format!("{}.{}", &digits[..int_len], &digits[int_len..])
            } else {
                format!("{digits}{}.0", "0".repeat(int_len - digits.len()))
            }
        } else {
            format!("0.{}{digits}", "0".repeat((-exp - 1) as usize))
        }
    } else {
        let frac = if digits.len() > 1 { &digits[1..] } else { "0" };
        format!("{}.{frac}e{exp}", &digits[..1])
    };
    if x < 0.0 {
        format!("-{body}")
    } else {
        body
    }
}

/// Compact JSON with floats written by [`format_g17`].
struct G17;

impl serde_json::ser::Formatter for G17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_g17(value).as_bytes())
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17);
    value.serialize(&mut ser).expect("serializable");
    let mut s = String::from_utf8(buf).expect("utf-8");
    s.push('\n');
    s
}
