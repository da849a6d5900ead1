//! Undirected weighted graphs and their variation operators.

mod generators;

pub use generators::{
    complete_bipartite, gen_circular, gen_random_bipartite, gen_random_bipartite_with,
    gen_random_sensor, gen_random_sensor_with, SensorParams, DEFAULT_BIPARTITE_EDGE_PROB,
    DEFAULT_SENSOR_NEIGHBORS, MAX_GENERATION_ATTEMPTS,
};

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Condition number above which the interior block of a Kron reduction is
/// treated as singular.
pub const KRON_CONDITION_LIMIT: f64 = 1e12;

/// Two disjoint vertex sets covering every vertex of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    v1: Vec<usize>,
    v2: Vec<usize>,
}

impl Bipartition {
    pub fn new(n: usize, v1: Vec<usize>, v2: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; n];
        for &v in v1.iter().chain(v2.iter()) {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if seen[v] {
                return Err(Error::InvalidGraph(format!("vertex {v} listed twice in bipartition")));
            }
            seen[v] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidGraph(format!("vertex {missing} missing from bipartition")));
        }
        Ok(Self { v1, v2 })
    }

    pub fn v1(&self) -> &[usize] {
        &self.v1
    }

    pub fn v2(&self) -> &[usize] {
        &self.v2
    }
}

/// Undirected weighted graph with dense symmetric weights and no self-loops.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    weights: DMatrix<f64>,
    bipartition: Option<Bipartition>,
}

impl Graph {
    /// Builds a graph from a weight matrix, checking symmetry, the zero
    /// diagonal, nonnegativity and the bipartition edge rule.
    pub fn from_weights(weights: DMatrix<f64>, bipartition: Option<Bipartition>) -> Result<Self> {
        let n = weights.nrows();
        if n == 0 || weights.ncols() != n {
            return Err(Error::InvalidGraph(format!(
                "weight matrix must be square and nonempty, got {}x{}",
                weights.nrows(),
                weights.ncols()
            )));
        }
        for i in 0..n {
            if weights[(i, i)] != 0.0 {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
            }
            for j in 0..i {
                let w = weights[(i, j)];
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::InvalidGraph(format!("weight ({i}, {j}) = {w} is not a finite nonnegative value")));
                }
                if w != weights[(j, i)] {
                    return Err(Error::InvalidGraph(format!("weights ({i}, {j}) and ({j}, {i}) differ")));
                }
            }
        }
        if let Some(bp) = &bipartition {
            let total = bp.v1.len() + bp.v2.len();
            if total != n {
                return Err(Error::InvalidGraph(format!("bipartition covers {total} of {n} vertices")));
            }
            for part in [&bp.v1, &bp.v2] {
                for (a, &i) in part.iter().enumerate() {
                    for &j in &part[a + 1..] {
                        if weights[(i, j)] != 0.0 {
                            return Err(Error::NotBipartite);
                        }
                    }
                }
            }
        }
        Ok(Self { weights, bipartition })
    }

    /// Builds a graph from `(m, n, weight)` triples. Repeated pairs accumulate.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)], bipartition: Option<Bipartition>) -> Result<Self> {
        let mut weights = DMatrix::zeros(n, n);
        for &(a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange { index: a.max(b), n });
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            weights[(a, b)] += w;
            weights[(b, a)] += w;
        }
        Self::from_weights(weights, bipartition)
    }

    pub fn n(&self) -> usize {
        self.weights.nrows()
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.weights
    }

    pub fn bipartition(&self) -> Option<&Bipartition> {
        self.bipartition.as_ref()
    }

    pub fn weight(&self, m: usize, n: usize) -> f64 {
        self.weights[(m, n)]
    }

    /// Edges `(m, n, w)` with `m < n` and `w > 0`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| ((i + 1)..n).filter_map(move |j| {
            let w = self.weights[(i, j)];
            (w > 0.0).then_some((i, j, w))
        }))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn degrees(&self) -> Vec<f64> {
        self.weights.row_iter().map(|r| r.sum()).collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for u in 0..n {
                if !seen[u] && self.weights[(v, u)] > 0.0 {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Combinatorial,
    SymmetricNormalized,
}

/// Real symmetric positive semidefinite graph variation operator.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationOperator {
    matrix: DMatrix<f64>,
    kind: OperatorKind,
}

impl VariationOperator {
    /// Wraps a matrix, checking that it is square and symmetric to 1e-12 relative.
    pub fn new(matrix: DMatrix<f64>, kind: OperatorKind) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: matrix.ncols() });
        }
        let scale = matrix.amax().max(f64::MIN_POSITIVE);
        let asym = (&matrix - matrix.transpose()).amax();
        if asym > 1e-12 * scale {
            return Err(Error::InvalidParameter(format!("operator is not symmetric (max asymmetry {asym:e})")));
        }
        Ok(Self { matrix, kind })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }
}

/// `L = D - A`.
pub fn combinatorial_laplacian(g: &Graph) -> VariationOperator {
    let mut l = -g.weights.clone();
    for (i, d) in g.degrees().into_iter().enumerate() {
        l[(i, i)] = d;
    }
    VariationOperator { matrix: l, kind: OperatorKind::Combinatorial }
}

/// `D^{-1/2} L D^{-1/2}`; eigenvalues lie in `[0, 2]`.
pub fn normalized_laplacian(g: &Graph) -> Result<VariationOperator> {
    let degrees = g.degrees();
    if let Some(i) = degrees.iter().position(|&d| d <= 0.0) {
        return Err(Error::IsolatedVertex(i));
    }
    let inv_sqrt: Vec<f64> = degrees.iter().map(|&d| 1.0 / libm::sqrt(d)).collect();
    let n = g.n();
    let matrix = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            1.0
        } else {
            -g.weights[(i, j)] * inv_sqrt[i] * inv_sqrt[j]
        }
    });
    Ok(VariationOperator { matrix, kind: OperatorKind::SymmetricNormalized })
}

/// Kron reduction onto `v1`: the Schur complement
/// `L_{11} - L_{12} L_{22}^{-1} L_{21}` where `2` is the complement of `v1`.
///
/// Rows and columns of the result follow the order of `v1`.
pub fn kron_reduce(op: &VariationOperator, v1: &[usize]) -> Result<VariationOperator> {
    let n = op.n();
    let mut keep = vec![false; n];
    for &v in v1 {
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
        if keep[v] {
            return Err(Error::InvalidParameter(format!("vertex {v} repeated in reduction set")));
        }
        keep[v] = true;
    }
    let v2: Vec<usize> = (0..n).filter(|&i| !keep[i]).collect();
    let m = &op.matrix;
    let l11 = m.select_rows(v1).select_columns(v1);
    if v2.is_empty() {
        return Ok(VariationOperator { matrix: l11, kind: op.kind });
    }
    let l12 = m.select_rows(v1).select_columns(&v2);
    let l22 = m.select_rows(&v2).select_columns(&v2);

    let eig = l22.clone().symmetric_eigenvalues();
    let big = eig.amax();
    let small = eig.iter().fold(f64::INFINITY, |acc, e| acc.min(e.abs()));
    let condition = if small > 0.0 { big / small } else { f64::INFINITY };
    if !(condition <= KRON_CONDITION_LIMIT) {
        return Err(Error::SingularInteriorBlock { condition });
    }
    let solved = l22
        .lu()
        .solve(&l12.transpose())
        .ok_or(Error::SingularInteriorBlock { condition })?;
    let reduced = l11 - &l12 * solved;
    // exact symmetry of the result
    let reduced = (&reduced + reduced.transpose()) * 0.5;
    Ok(VariationOperator { matrix: reduced, kind: op.kind })
}
