//! Seeded k-means (k-means++ initialization, Lloyd iterations, best of
//! several restarts).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;

pub const MAX_ITERATIONS: usize = 100;

/// Squared distances below this fraction of the largest squared norm count as
/// zero. A centroid of identical points is not bit-equal to them (the mean
/// rounds), and such a point must not be split off into an empty cluster.
const COINCIDENT: f64 = 1e-20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clustering {
    /// Cluster index per input point.
    pub assignment: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    /// Sum of squared Euclidean distances to the assigned centroid.
    pub inertia: f64,
    pub iterations: usize,
    /// Restart that produced this clustering.
    pub restart: usize,
}

impl Clustering {
    pub fn occupancy(&self) -> Vec<usize> {
        let mut counts = vec![0; self.centroids.len()];
        for &c in &self.assignment {
            counts[c] += 1;
        }
        counts
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Nearest centroid, ties resolved to the lowest index.
fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (i, c) in centroids.iter().enumerate() {
        let d = sq_dist(point, c);
        if d < best.1 {
            best = (i, d);
        }
    }
    best
}

fn plus_plus_init(points: &[&[f64]], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut centroids = vec![points[rng.gen_range(0..n)].to_vec()];
    let mut d2: Vec<f64> = points.iter().map(|p| sq_dist(p, &centroids[0])).collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut target = rng.gen::<f64>() * total;
            let mut chosen = d2.iter().rposition(|d| *d > 0.0).expect("total > 0");
            for (i, &d) in d2.iter().enumerate() {
                if d > 0.0 && target < d {
                    chosen = i;
                    break;
                }
                target -= d;
            }
            chosen
        } else {
            rng.gen_range(0..n)
        };
        centroids.push(points[pick].to_vec());
        let last = centroids.last().expect("just pushed");
        for (d, p) in d2.iter_mut().zip(points) {
            *d = d.min(sq_dist(p, last));
        }
    }
    centroids
}

/// Moves every non-empty centroid to the mean of its points; returns the
/// cluster sizes.
fn update_centroids(points: &[&[f64]], assignment: &[usize], centroids: &mut [Vec<f64>]) -> Vec<usize> {
    let k = centroids.len();
    let dim = points[0].len();
    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (p, &c) in points.iter().zip(assignment) {
        counts[c] += 1;
        sums[c].iter_mut().zip(p.iter()).for_each(|(s, x)| *s += x);
    }
    for c in 0..k {
        if counts[c] > 0 {
            centroids[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
        }
    }
    counts
}

fn lloyd(points: &[&[f64]], k: usize, seed: u64, restart: usize) -> Clustering {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    let mut centroids = plus_plus_init(points, k, &mut rng);
    let mut assignment: Vec<usize> = points.iter().map(|p| nearest(p, &centroids).0).collect();
    let scale = points
        .iter()
        .map(|p| p.iter().map(|x| x * x).sum::<f64>())
        .fold(0.0, f64::max);
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut counts = update_centroids(points, &assignment, &mut centroids);
        // empty clusters take the point farthest from its own centroid, as
        // long as that point is not already sitting on it
        for c in 0..k {
            if counts[c] > 0 {
                continue;
            }
            let far = (0..points.len())
                .filter(|&i| counts[assignment[i]] > 1)
                .map(|i| (i, sq_dist(points[i], &centroids[assignment[i]])))
                .fold(None, |best: Option<(usize, f64)>, cur| match best {
                    Some(b) if b.1 >= cur.1 => Some(b),
                    _ => Some(cur),
                });
            if let Some((i, d)) = far {
                if d > COINCIDENT * scale {
                    counts[assignment[i]] -= 1;
                    counts[c] = 1;
                    assignment[i] = c;
                    centroids[c] = points[i].to_vec();
                }
            }
        }
        // assignment step
        let next: Vec<usize> = points
            .iter()
            .zip(&assignment)
            .map(|(p, &cur)| {
                let (best, d) = nearest(p, &centroids);
                // keep the current cluster on exact ties
                if sq_dist(p, &centroids[cur]) <= d {
                    cur
                } else {
                    best
                }
            })
            .collect();
        if next == assignment {
            break;
        }
        assignment = next;
    }
    update_centroids(points, &assignment, &mut centroids);
    let inertia = points
        .iter()
        .zip(&assignment)
        .map(|(p, &c)| sq_dist(p, &centroids[c]))
        .sum();
    Clustering {
        assignment,
        centroids,
        inertia,
        iterations,
        restart,
    }
}

/// Runs `restarts` independent seeded k-means fits and keeps the one with the
/// lowest inertia (earliest restart on ties). Restart `r` draws from stream
/// `r` of a ChaCha8 generator seeded with `seed`, so results do not depend on
/// the execution strategy.
pub fn kmeans(points: &[&[f64]], k: usize, seed: u64, restarts: usize, exec: Execution) -> Result<Clustering> {
    if k == 0 || points.len() < k {
        return Err(Error::TooFewPoints {
            points: points.len(),
            k,
        });
    }
    if restarts == 0 {
        return Err(Error::InvalidConfig("restarts must be at least 1".into()));
    }
    let runs = exec.map_range(restarts, |r| lloyd(points, k, seed, r));
    let best = runs
        .into_iter()
        .reduce(|best, cur| if cur.inertia < best.inertia { cur } else { best })
        .expect("restarts >= 1");
    Ok(best)
}
