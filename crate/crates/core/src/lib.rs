//! Minimum spanning trees with Steiner points restricted to given lines,
//! rays or segments.

pub mod bottleneck;
pub mod costs;
pub mod delaunay;
mod dsu;
mod envelope;
pub mod error;
pub mod geometry;
pub mod intervals;
pub mod ksteiner;
mod lca;
pub mod minimize;
pub mod oracle;
pub mod random;
pub mod steiner1;
pub mod tree;

pub use bottleneck::{build_bottleneck_tree, emst_with_bottleneck, BottleneckTree};
pub use costs::{cost_report, evaluate_cost, CostReport, CostSpec};
pub use error::{Result, SteinerError};
pub use geometry::{
    cone_contains, distance, gamma_point, orient2d, ConeIndex, Gamma, GammaKind, ParamRange, Point,
};
pub use intervals::{
    cone_visibility_range, labelled_intervals, labelled_intervals_par, LabelledInterval,
};
pub use ksteiner::{
    enumerate_topologies, fixed_topology_solve, min_f_fixed_tree, solve_k, solve_k_prepared,
    FixedTopologySolution, ForestCandidate, Slot, ViableForest,
};
pub use minimize::{minimize_on_interval, sum_dist};
pub use steiner1::{
    savings_delta, solve_multi_lines, solve_one_line, solve_prepared, Candidate, Placement,
    Prepared, Solution, SolveStats, SolverConfig,
};
pub use tree::{emst, emst_with_steiner, Edge, Tree};
