//! Instance files: terminals, constraints, `k` and the costs to report.

use std::path::Path;

use serde::Deserialize;
use steiner_core::geometry::validate_points;
use steiner_core::{CostSpec, Gamma, GammaKind, Point};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    points: Vec<[f64; 2]>,
    #[serde(default)]
    constraints: Vec<ConstraintFile>,
    #[serde(default = "default_k")]
    k: usize,
    #[serde(default = "default_costs")]
    costs: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintFile {
    kind: KindFile,
    origin: [f64; 2],
    direction: [f64; 2],
    /// `null` on either side stands for an infinite bound.
    #[serde(default)]
    range: Option<[Option<f64>; 2]>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindFile {
    Line,
    Ray,
    Segment,
}

fn default_k() -> usize {
    1
}

fn default_costs() -> Vec<String> {
    vec!["power_1".to_string()]
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub points: Vec<Point>,
    pub lines: Vec<Gamma>,
    pub k: usize,
    pub costs: Vec<CostSpec>,
}

impl Instance {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let points: Vec<Point> = file.points.iter().map(|&[x, y]| Point::new(x, y)).collect();
        if points.len() < 2 {
            return Err(format!(
                "at least 2 points are required, got {}",
                points.len()
            ));
        }
        validate_points(&points).map_err(|e| e.to_string())?;
        if file.constraints.is_empty() {
            return Err("at least one constraint is required".into());
        }
        let lines = file
            .constraints
            .iter()
            .enumerate()
            .map(|(i, c)| c.to_gamma().map_err(|e| format!("constraint {i}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if !(1..=2).contains(&file.k) {
            return Err(format!("k must be 1 or 2, got {}", file.k));
        }
        let costs = file
            .costs
            .iter()
            .map(|s| s.parse::<CostSpec>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Instance {
            points,
            lines,
            k: file.k,
            costs,
        })
    }
}

impl ConstraintFile {
    fn to_gamma(&self) -> steiner_core::Result<Gamma> {
        let kind = match self.kind {
            KindFile::Line => GammaKind::Line,
            KindFile::Ray => GammaKind::Ray,
            KindFile::Segment => GammaKind::Segment,
        };
        let range = self
            .range
            .map(|[lo, hi]| (lo.unwrap_or(f64::NEG_INFINITY), hi.unwrap_or(f64::INFINITY)));
        let [ox, oy] = self.origin;
        let [dx, dy] = self.direction;
        Gamma::new(kind, Point::new(ox, oy), Point::new(dx, dy), range)
    }
}
