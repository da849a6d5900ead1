use alloc::format;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Bipartition, Graph};
use crate::error::{Error, Result};

/// Upper bound on resampling rounds for the random generators.
pub const MAX_GENERATION_ATTEMPTS: usize = 100;
pub const DEFAULT_SENSOR_NEIGHBORS: usize = 6;
pub const DEFAULT_BIPARTITE_EDGE_PROB: f64 = 0.5;

/// Unit-weight cycle on `n` vertices.
pub fn gen_circular(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("circular graph needs n >= 2, got {n}")));
    }
    let mut w = DMatrix::zeros(n, n);
    for i in 0..n {
        let j = (i + 1) % n;
        w[(i, j)] = 1.0;
        w[(j, i)] = 1.0;
    }
    Graph::from_weights(w, None)
}

/// Complete bipartite graph `K_{a,b}` with unit weights; `V1 = 0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    let n = a + b;
    let w = DMatrix::from_fn(n, n, |i, j| if (i < a) != (j < a) { 1.0 } else { 0.0 });
    let bp = Bipartition::new(n, (0..a).collect(), (a..n).collect())?;
    Graph::from_weights(w, Some(bp))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorParams {
    /// Neighbors per vertex before symmetrization.
    pub neighbors: usize,
}

impl Default for SensorParams {
    fn default() -> Self {
        Self { neighbors: DEFAULT_SENSOR_NEIGHBORS }
    }
}

/// Random sensor graph: `n` uniform points in the unit square, k-nearest
/// neighbor edges (union of both directions) weighted by
/// `exp(-d^2 / (2 theta^2))` with `theta` the mean k-NN distance.
pub fn gen_random_sensor(n: usize, seed: u64) -> Result<Graph> {
    gen_random_sensor_with(n, seed, SensorParams::default())
}

pub fn gen_random_sensor_with(n: usize, seed: u64, params: SensorParams) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("sensor graph needs n >= 2, got {n}")));
    }
    if params.neighbors == 0 {
        return Err(Error::InvalidParameter("sensor graph needs at least one neighbor".into()));
    }
    let k = params.neighbors.min(n - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_GENERATION_ATTEMPTS {
        let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
        let g = knn_gaussian_graph(&points, k)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::ConnectivityFailure { attempts: MAX_GENERATION_ATTEMPTS })
}

fn knn_gaussian_graph(points: &[(f64, f64)], k: usize) -> Result<Graph> {
    let n = points.len();
    let dist = |a: usize, b: usize| {
        let (dx, dy) = (points[a].0 - points[b].0, points[a].1 - points[b].1);
        libm::sqrt(dx * dx + dy * dy)
    };
    let mut neighbors: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n);
    let mut total = 0.0;
    for i in 0..n {
        let mut cand: Vec<(usize, f64)> = (0..n).filter(|&j| j != i).map(|j| (j, dist(i, j))).collect();
        // ties broken by index so the edge set is a pure function of the points
        cand.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        cand.truncate(k);
        total += cand.iter().map(|c| c.1).sum::<f64>();
        neighbors.push(cand);
    }
    let theta = total / (n * k) as f64;
    let denom = 2.0 * theta * theta;
    let mut w = DMatrix::zeros(n, n);
    for (i, list) in neighbors.iter().enumerate() {
        for &(j, d) in list {
            let weight = if denom > 0.0 { libm::exp(-d * d / denom) } else { 1.0 };
            w[(i, j)] = weight;
            w[(j, i)] = weight;
        }
    }
    Graph::from_weights(w, None)
}

/// Random bipartite graph with parts `V1 = 0..n_half`, `V2 = n_half..2 n_half`;
/// each cross edge is present with probability 0.5.
pub fn gen_random_bipartite(n_half: usize, seed: u64) -> Result<Graph> {
    gen_random_bipartite_with(n_half, seed, DEFAULT_BIPARTITE_EDGE_PROB)
}

pub fn gen_random_bipartite_with(n_half: usize, seed: u64, edge_prob: f64) -> Result<Graph> {
    if n_half == 0 {
        return Err(Error::InvalidParameter("bipartite graph needs n_half >= 1".into()));
    }
    if !(edge_prob > 0.0 && edge_prob <= 1.0) {
        return Err(Error::InvalidParameter(format!("edge probability {edge_prob} outside (0, 1]")));
    }
    let n = 2 * n_half;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_GENERATION_ATTEMPTS {
        let mut w = DMatrix::zeros(n, n);
        for i in 0..n_half {
            for j in n_half..n {
                if rng.random::<f64>() < edge_prob {
                    w[(i, j)] = 1.0;
                    w[(j, i)] = 1.0;
                }
            }
        }
        let bp = Bipartition::new(n, (0..n_half).collect(), (n_half..n).collect())?;
        let g = Graph::from_weights(w, Some(bp))?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::ConnectivityFailure { attempts: MAX_GENERATION_ATTEMPTS })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circular_has_n_edges() {
        let g = gen_circular(4).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, [(0, 1, 1.0), (0, 3, 1.0), (1, 2, 1.0), (2, 3, 1.0)]);
        assert!(g.degrees().iter().all(|&d| d == 2.0));
        assert!(gen_circular(1).is_err());
    }

    #[test]
    fn sensor_graph_is_deterministic_and_connected() {
        let a = gen_random_sensor(256, 7).unwrap();
        let b = gen_random_sensor(256, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.is_connected());
        let c = gen_random_sensor(256, 8).unwrap();
        assert_ne!(a, c);
        // every vertex keeps at least its own k nearest neighbors
        assert!(a.weights().row_iter().all(|r| r.iter().filter(|&&w| w > 0.0).count() >= DEFAULT_SENSOR_NEIGHBORS));
    }

    #[test]
    fn bipartite_graph_has_no_intra_part_edges() {
        let g = gen_random_bipartite(4, 11).unwrap();
        let bp = g.bipartition().unwrap();
        assert_eq!(bp.v1(), &[0, 1, 2, 3]);
        assert_eq!(bp.v2(), &[4, 5, 6, 7]);
        for (m, n, _) in g.edges() {
            assert!((m < 4) != (n < 4));
        }
        assert!(g.is_connected());
        assert_eq!(gen_random_bipartite(4, 11).unwrap(), g);
    }

    #[test]
    fn complete_bipartite_edges() {
        let g = complete_bipartite(2, 3).unwrap();
        assert_eq!(g.edge_count(), 6);
    }
}
