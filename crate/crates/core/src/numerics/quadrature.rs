//! Composite Gauss–Legendre quadrature.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`,
/// by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule.sort_by(|a, b| a.0.total_cmp(&b.0));
    rule
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureScheme {
    CompositeGaussLegendre,
}

/// A composite Gauss–Legendre rule: `node_count` nodes split evenly over
/// `panels` equal sub-intervals.
#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    node_count: usize,
    panels: usize,
    scheme: QuadratureScheme,
    rule: Arc<[(f64, f64)]>,
}

impl PartialEq for QuadratureSpec {
    fn eq(&self, other: &Self) -> bool {
        self.node_count == other.node_count && self.panels == other.panels
    }
}

pub const MIN_NODES: usize = 16;

impl QuadratureSpec {
    pub fn new(node_count: usize, panels: usize) -> Result<Self> {
        if node_count < MIN_NODES {
            return Err(Error::InvalidQuadrature(format!(
                "node_count must be at least {MIN_NODES}, got {node_count}"
            )));
        }
        if panels == 0 || !node_count.is_multiple_of(panels) {
            return Err(Error::InvalidQuadrature(format!(
                "{node_count} nodes do not split evenly over {panels} panels"
            )));
        }
        Ok(Self {
            node_count,
            panels,
            scheme: QuadratureScheme::CompositeGaussLegendre,
            rule: gauss_legendre(node_count / panels).into(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.node_count / self.panels
    }

    pub fn scheme(&self) -> QuadratureScheme {
        self.scheme
    }

    /// Convergence order in the panel width for smooth integrands.
    pub fn order(&self) -> usize {
        2 * self.nodes_per_panel()
    }

    /// Same rule with twice the panels (and nodes).
    pub fn refined(&self) -> Self {
        Self::new(2 * self.node_count, 2 * self.panels).expect("refinement keeps the rule valid")
    }

    /// `(node, weight)` pairs on `[a, b]`, ascending.
    pub fn nodes(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = (b - a) / self.panels as f64;
        (0..self.panels).flat_map(move |p| {
            let mid = a + (p as f64 + 0.5) * h;
            self.rule
                .iter()
                .map(move |&(x, w)| (mid + 0.5 * h * x, 0.5 * h * w))
        })
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.nodes(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

impl Default for QuadratureSpec {
    /// 64 nodes over 8 panels.
    fn default() -> Self {
        Self::new(64, 8).expect("default quadrature is valid")
    }
}
