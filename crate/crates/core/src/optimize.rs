//! Deterministic derivative-free maximization over the unit sphere.
//!
//! A Fibonacci lattice seeds the search; the best lattice points are then
//! polished with Nelder–Mead in spherical coordinates. No randomness is
//! involved, so a given objective always yields the same answer.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerOptions {
    /// Size of the Fibonacci lattice scanned before refinement.
    pub lattice_points: usize,
    /// Number of lattice points used as Nelder–Mead starts.
    pub starts: usize,
    /// Stop once the simplex objective spread drops below this.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Initial simplex edge, in radians.
    pub initial_step: f64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            lattice_points: 4096,
            starts: 8,
            tolerance: 1e-10,
            max_iterations: 500,
            initial_step: 0.05,
        }
    }
}

const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653; // π(3 − √5)

/// Point `index` of an `n`-point Fibonacci lattice on S².
pub fn fibonacci_point(index: usize, n: usize) -> [f64; 3] {
    let z = 1.0 - (2.0 * index as f64 + 1.0) / n as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let phi = GOLDEN_ANGLE * index as f64;
    [r * phi.cos(), r * phi.sin(), z]
}

pub fn from_spherical(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

pub fn to_spherical(n: [f64; 3]) -> (f64, f64) {
    let theta = n[2].clamp(-1.0, 1.0).acos();
    let phi = n[1].atan2(n[0]);
    (theta, phi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereOptimum {
    pub value: f64,
    pub direction: [f64; 3],
}

/// Maximizes `f` over unit vectors.
pub fn maximize_on_sphere<F>(f: F, opts: &OptimizerOptions) -> SphereOptimum
where
    F: Fn([f64; 3]) -> f64,
{
    let n = opts.lattice_points.max(1);
    let mut scored: Vec<(usize, f64)> = (0..n).map(|i| (i, f(fibonacci_point(i, n)))).collect();
    // descending value, ties by lowest lattice index
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));

    let (first, first_val) = scored[0];
    let mut best = SphereOptimum {
        value: first_val,
        direction: fibonacci_point(first, n),
    };
    let neg = |p: &[f64]| -f(from_spherical(p[0], p[1]));
    for &(idx, _) in scored.iter().take(opts.starts) {
        let (theta, phi) = to_spherical(fibonacci_point(idx, n));
        let result = nelder_mead(
            neg,
            &[theta, phi],
            opts.initial_step,
            opts.tolerance,
            opts.max_iterations,
        );
        let value = -result.value;
        if value > best.value {
            best = SphereOptimum {
                value,
                direction: from_spherical(result.point[0], result.point[1]),
            };
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Nelder–Mead minimization with the standard coefficients
/// (reflection 1, expansion 2, contraction ½, shrink ½).
pub fn nelder_mead<F>(f: F, start: &[f64], step: f64, tolerance: f64, max_iterations: usize) -> SimplexResult
where
    F: Fn(&[f64]) -> f64,
{
    let dim = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(start.to_vec());
    for i in 0..dim {
        let mut v = start.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

    let mut iterations = 0;
    while iterations < max_iterations {
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if (values[dim] - values[0]).abs() < tolerance {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..dim)
            .map(|k| simplex[..dim].iter().map(|v| v[k]).sum::<f64>() / dim as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[dim])
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };

        let reflected = along(-1.0);
        let f_r = f(&reflected);
        if f_r < values[0] {
            let expanded = along(-2.0);
            let f_e = f(&expanded);
            if f_e < f_r {
                simplex[dim] = expanded;
                values[dim] = f_e;
            } else {
                simplex[dim] = reflected;
                values[dim] = f_r;
            }
            continue;
        }
        if f_r < values[dim - 1] {
            simplex[dim] = reflected;
            values[dim] = f_r;
            continue;
        }
        let (contracted, f_c) = if f_r < values[dim] {
            let p = along(-0.5);
            let v = f(&p);
            (p, v)
        } else {
            let p = along(0.5);
            let v = f(&p);
            (p, v)
        };
        if f_c < values[dim].min(f_r) {
            simplex[dim] = contracted;
            values[dim] = f_c;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=dim {
            simplex[i] = best.iter().zip(&simplex[i]).map(|(b, v)| b + 0.5 * (v - b)).collect();
            values[i] = f(&simplex[i]);
        }
    }

    let arg = (0..=dim).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    SimplexResult {
        point: simplex[arg].clone(),
        value: values[arg],
        iterations,
    }
}
