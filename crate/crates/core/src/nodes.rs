//! Node positions, node trajectories across a shear sweep and origin crossings.
//!
//! As `nu` decreases from 1 the whole classically allowed region slides to
//! the right, and the nodes of each eigenfunction slide with it. Each time a
//! node passes through `x = 0` the level touches the symmetric-potential
//! energy (exactly for the oscillator, approximately for the wedge).

use alloc::vec::Vec;

use crate::potentials::TurningPoints;
use crate::shooting::{solve_level_near, EigenSolution, Family, SolverConfig};
use crate::{Error, PotentialKind, Result};

const BISECT_ITER: usize = 60;
const MAX_REFINE_DEPTH: usize = 10;
const CROSSING_SOLVES: usize = 6;

/// Node positions of `solution`, refined below the grid spacing.
///
/// Each sign change is located by linear interpolation between the two
/// samples, then by bisection on a cubic through the four nearest samples.
pub fn extract_nodes(solution: &EigenSolution) -> Result<Vec<f64>> {
    let (x, y) = (&solution.grid, &solution.values);
    let mut nodes = Vec::with_capacity(solution.n);
    let mut last: Option<usize> = None;
    for k in 0..y.len() {
        if y[k] == 0.0 {
            continue;
        }
        if let Some(p) = last {
            if (y[k] < 0.0) != (y[p] < 0.0) {
                nodes.push(if k == p + 1 { refine_node(x, y, p) } else { x[(p + k) / 2] });
            }
        }
        last = Some(k);
    }
    if nodes.len() != solution.n {
        return Err(Error::NodeCountMismatch { expected: solution.n, found: nodes.len() });
    }
    Ok(nodes)
}

fn refine_node(x: &[f64], y: &[f64], k: usize) -> f64 {
    let start = k.saturating_sub(1).min(x.len().saturating_sub(4));
    let xs = &x[start..start + 4];
    let ys = &y[start..start + 4];
    let cubic = |t: f64| {
        let mut sum = 0.0;
        for a in 0..4 {
            let mut basis = 1.0;
            for b in 0..4 {
                if a != b {
                    basis *= (t - xs[b]) / (xs[a] - xs[b]);
                }
            }
            sum += ys[a] * basis;
        }
        sum
    };
    let (mut lo, mut hi) = (x[k], x[k + 1]);
    let mut f_lo = y[k];
    // Start from the secant estimate, then bisect the cubic.
    let mut mid = lo - y[k] * (hi - lo) / (y[k + 1] - y[k]);
    for _ in 0..BISECT_ITER {
        let fm = cubic(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
    }
    mid
}

/// Node positions of one level at one shear.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSample {
    pub nu: f64,
    pub energy: f64,
    /// Strictly increasing.
    pub nodes: Vec<f64>,
    pub turning_points: TurningPoints,
}

impl NodeSample {
    fn from_solution(nu: f64, sol: &EigenSolution) -> Self {
        Self { nu, energy: sol.energy, nodes: sol.nodes.clone(), turning_points: sol.turning_points }
    }
}

/// A node that moved left while `nu` decreased.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriftViolation {
    /// Index of the later of the two samples.
    pub sample: usize,
    pub node: usize,
    pub shift: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeTrajectory {
    pub kind: PotentialKind,
    pub n: usize,
    /// Ordered by descending `nu`. May contain shears inserted between grid
    /// points where the node motion was too fast to associate.
    pub samples: Vec<NodeSample>,
    pub drift_violations: Vec<DriftViolation>,
}

/// Solves level `n` over a descending shear grid and follows its nodes.
///
/// Nodes are associated with their nearest neighbor in the previous sample.
/// A jump larger than five times the largest displacement seen over the first
/// grid interval triggers local bisection in `nu`; if that does not resolve
/// it the trajectory is reported broken.
pub fn track_nodes(family: &Family, n: usize, nu_grid: &[f64], cfg: &SolverConfig) -> Result<NodeTrajectory> {
    cfg.validate()?;
    family.check_grid(nu_grid, cfg)?;
    let mut tracker = Tracker { family, n, cfg, threshold: f64::INFINITY, samples: Vec::new() };
    let first = tracker.solve(nu_grid[0], family.symmetric_level(n)?)?;
    tracker.samples.push(first);
    for (k, &nu) in nu_grid.iter().enumerate().skip(1) {
        if k == 1 {
            let sample = tracker.solve(nu, tracker.last().energy)?;
            let d0 = max_displacement(tracker.last(), &sample);
            tracker.threshold = (5.0 * d0).max(cfg.node_tol);
            tracker.samples.push(sample);
        } else {
            tracker.advance(nu, 0)?;
        }
    }
    let drift_violations = drift_violations(&tracker.samples);
    Ok(NodeTrajectory { kind: family.kind, n, samples: tracker.samples, drift_violations })
}

struct Tracker<'a> {
    family: &'a Family,
    n: usize,
    cfg: &'a SolverConfig,
    threshold: f64,
    samples: Vec<NodeSample>,
}

impl Tracker<'_> {
    fn last(&self) -> &NodeSample {
        self.samples.last().expect("tracker starts with one sample")
    }

    fn solve(&self, nu: f64, guess: f64) -> Result<NodeSample> {
        let model = self.family.at(nu)?;
        let sol = solve_level_near(&model, self.n, guess, self.cfg)?;
        Ok(NodeSample::from_solution(nu, &sol))
    }

    fn advance(&mut self, nu: f64, depth: usize) -> Result<()> {
        let prev = self.last();
        let sample = self.solve(nu, prev.energy)?;
        if associates(prev, &sample) && max_displacement(prev, &sample) <= self.threshold {
            self.samples.push(sample);
            return Ok(());
        }
        if depth == MAX_REFINE_DEPTH {
            return Err(Error::TrajectoryBreak { nu_from: prev.nu, nu_to: nu });
        }
        let mid = 0.5 * (prev.nu + nu);
        self.advance(mid, depth + 1)?;
        self.advance(nu, depth + 1)
    }
}

fn max_displacement(a: &NodeSample, b: &NodeSample) -> f64 {
    a.nodes.iter().zip(&b.nodes).map(|(p, q)| libm::fabs(q - p)).fold(0.0, f64::max)
}

/// True when every node's nearest predecessor is the node with the same index.
fn associates(prev: &NodeSample, next: &NodeSample) -> bool {
    next.nodes.iter().enumerate().all(|(k, &x)| {
        let nearest = prev
            .nodes
            .iter()
            .enumerate()
            .min_by(|a, b| libm::fabs(a.1 - x).total_cmp(&libm::fabs(b.1 - x)))
            .map(|(i, _)| i);
        nearest == Some(k)
    })
}

fn drift_violations(samples: &[NodeSample]) -> Vec<DriftViolation> {
    let mut out = Vec::new();
    for (s, w) in samples.windows(2).enumerate() {
        for (k, (a, b)) in w[0].nodes.iter().zip(&w[1].nodes).enumerate() {
            let shift = b - a;
            if shift < -1e-9 {
                out.push(DriftViolation { sample: s + 1, node: k, shift });
            }
        }
    }
    out
}

/// A shear at which one node of level `n` sits on the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectedCrossing {
    pub n: usize,
    /// Index of the crossing node in the sorted node list, which is also the
    /// number of nodes left of the origin just before the crossing.
    pub left_nodes: usize,
    pub nu_star: f64,
    pub energy: f64,
    /// True when the node was already within tolerance of the origin at the
    /// first sample (for example at `nu = 1` for odd levels).
    pub at_sample: bool,
    /// Shears of the two samples bracketing the crossing.
    pub bracket: (f64, f64),
}

impl DetectedCrossing {
    /// `(i, j)` labels of the crossing in the closed-form tables.
    pub fn indices(&self, kind: PotentialKind) -> (usize, usize) {
        match kind {
            PotentialKind::SplitHarmonic => (self.left_nodes, self.n - 1 - self.left_nodes),
            PotentialKind::SplitLinear => (self.left_nodes + 1, self.n - self.left_nodes),
        }
    }
}

/// Finds origin crossings in a trajectory by linear interpolation of node
/// position against `nu` between samples where a node changes sign. A node
/// already within `origin_tol` of zero at the first sample (odd levels at
/// `nu = 1`) is reported there instead. Sorted by descending `nu_star`.
pub fn detect_crossings(trajectory: &NodeTrajectory, origin_tol: f64) -> Vec<DetectedCrossing> {
    let samples = &trajectory.samples;
    let mut out = Vec::new();
    let Some(first) = samples.first() else {
        return out;
    };
    for node in 0..trajectory.n {
        let on_origin = libm::fabs(first.nodes[node]) <= origin_tol;
        if on_origin {
            out.push(on_sample(trajectory.n, node, first));
        }
        for (k, w) in samples.windows(2).enumerate() {
            let (a, b) = (&w[0], &w[1]);
            let (xa, xb) = (a.nodes[node], b.nodes[node]);
            if !(xa < 0.0 && xb >= 0.0) || (k == 0 && on_origin) {
                continue;
            }
            let t = -xa / (xb - xa);
            out.push(DetectedCrossing {
                n: trajectory.n,
                left_nodes: node,
                nu_star: a.nu + t * (b.nu - a.nu),
                energy: a.energy + t * (b.energy - a.energy),
                at_sample: false,
                bracket: (a.nu, b.nu),
            });
        }
    }
    out.sort_by(|a, b| b.nu_star.total_cmp(&a.nu_star));
    out
}

fn on_sample(n: usize, node: usize, s: &NodeSample) -> DetectedCrossing {
    DetectedCrossing { n, left_nodes: node, nu_star: s.nu, energy: s.energy, at_sample: true, bracket: (s.nu, s.nu) }
}

/// Sharpens interpolated crossings by re-solving at secant estimates of the
/// shear where the node sits at `x = 0` (regula falsi on node position).
pub fn refine_crossings(family: &Family, crossings: &[DetectedCrossing], cfg: &SolverConfig) -> Result<Vec<DetectedCrossing>> {
    crossings.iter().map(|c| if c.at_sample { Ok(*c) } else { refine_one(family, c, cfg) }).collect()
}

fn refine_one(family: &Family, c: &DetectedCrossing, cfg: &SolverConfig) -> Result<DetectedCrossing> {
    let node_at = |nu: f64, guess: f64| -> Result<(f64, f64)> {
        let sol = solve_level_near(&family.at(nu)?, c.n, guess, cfg)?;
        Ok((sol.nodes[c.left_nodes], sol.energy))
    };
    let (mut a, mut b) = c.bracket;
    let (mut xa, _) = node_at(a, c.energy)?;
    let (mut xb, _) = node_at(b, c.energy)?;
    let mut best = (c.nu_star, c.energy, f64::INFINITY);
    let mut side = 0i8;
    for _ in 0..CROSSING_SOLVES {
        if xa == xb {
            break;
        }
        let nu = a - xa * (b - a) / (xb - xa);
        let (x, e) = node_at(nu, best.1)?;
        if libm::fabs(x) < best.2 {
            best = (nu, e, libm::fabs(x));
        }
        if libm::fabs(x) < 1e-12 {
            break;
        }
        // Illinois modification keeps the bracket shrinking from both sides.
        if (x < 0.0) == (xa < 0.0) {
            a = nu;
            xa = x;
            if side == -1 {
                xb *= 0.5;
            }
            side = -1;
        } else {
            b = nu;
            xb = x;
            if side == 1 {
                xa *= 0.5;
            }
            side = 1;
        }
    }
    Ok(DetectedCrossing { nu_star: best.0, energy: best.1, ..*c })
}

/// Tracks level `n`, detects its origin crossings and refines them.
pub fn find_crossings(family: &Family, n: usize, nu_grid: &[f64], cfg: &SolverConfig) -> Result<(NodeTrajectory, Vec<DetectedCrossing>)> {
    let trajectory = track_nodes(family, n, nu_grid, cfg)?;
    let coarse = detect_crossings(&trajectory, cfg.node_tol);
    let refined = refine_crossings(family, &coarse, cfg)?;
    Ok((trajectory, refined))
}
