//! Direct minimisation of the measurement disturbance over von Neumann
//! measurements on the qubit. Used as an independent check of the closed form.

use crate::matrix::{kron, pauli, ComplexMatrix, C64};
use crate::states::DensityMatrix;
use std::f64::consts::PI;

fn unit_vector(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// `2‖ρ − Σ± (P±⊗I)ρ(P±⊗I)‖²` for `P± = (I ± n·σ)/2`.
pub fn measurement_disturbance(rho: &DensityMatrix, n: [f64; 3]) -> f64 {
    let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    let mut ns = ComplexMatrix::zeros(2);
    for (i, ni) in n.iter().enumerate() {
        ns = &ns + &pauli(i + 1).scale(ni / norm);
    }
    let id = ComplexMatrix::identity(2);
    let id_b = ComplexMatrix::identity(rho.dim_b());
    let half = C64::new(0.5, 0.0);
    let plus = kron(&(&id + &ns).scale_c(half), &id_b);
    let minus = kron(&(&id - &ns).scale_c(half), &id_b);
    let m = rho.matrix();
    let projected = &plus.matmul(m).matmul(&plus) + &minus.matmul(m).matmul(&minus);
    2.0 * (m - &projected).hs_norm_sq()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelderMeadResult {
    pub x: [f64; 2],
    pub value: f64,
    pub iterations: usize,
}

/// Two-parameter Nelder–Mead with standard coefficients. Stops once the
/// simplex diameter drops below `tol` or after `max_iter` iterations.
pub fn nelder_mead(
    f: impl Fn([f64; 2]) -> f64,
    start: [f64; 2],
    step: f64,
    tol: f64,
    max_iter: usize,
) -> NelderMeadResult {
    let mut simplex = [start, [start[0] + step, start[1]], [start[0], start[1] + step]];
    let mut values = simplex.map(&f);
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    let dist = |a: [f64; 2], b: [f64; 2]| ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();

    let mut iterations = 0;
    while iterations < max_iter {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.map(|i| simplex[i]);
        values = order.map(|i| values[i]);

        let diameter = dist(simplex[0], simplex[1]).max(dist(simplex[0], simplex[2]));
        if diameter < tol {
            break;
        }
        iterations += 1;

        let centroid = lerp(simplex[0], simplex[1], 0.5);
        let reflected = lerp(centroid, simplex[2], -1.0);
        let fr = f(reflected);
        if fr < values[0] {
            let expanded = lerp(centroid, simplex[2], -2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                values[2] = fe;
            } else {
                simplex[2] = reflected;
                values[2] = fr;
            }
        } else if fr < values[1] {
            simplex[2] = reflected;
            values[2] = fr;
        } else {
            let (contracted, fc) = if fr < values[2] {
                let c = lerp(centroid, reflected, 0.5);
                (c, f(c))
            } else {
                let c = lerp(centroid, simplex[2], 0.5);
                (c, f(c))
            };
            if fc < values[2].min(fr) {
                simplex[2] = contracted;
                values[2] = fc;
            } else {
                for i in 1..3 {
                    simplex[i] = lerp(simplex[0], simplex[i], 0.5);
                    values[i] = f(simplex[i]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    NelderMeadResult {
        x: simplex[best],
        value: values[best],
        iterations,
    }
}

/// `D_G` by coarse `grid_n × grid_n` search over `(θ, φ) ∈ [0,π]×[0,2π)`
/// followed by Nelder–Mead refinement to parameter tolerance `refine_tol`.
pub fn geometric_discord_bruteforce(rho: &DensityMatrix, grid_n: usize, refine_tol: f64) -> f64 {
    let grid_n = grid_n.max(2);
    let objective = |p: [f64; 2]| measurement_disturbance(rho, unit_vector(p[0], p[1]));

    let mut best = ([0.0, 0.0], f64::INFINITY);
    for i in 0..grid_n {
        let theta = PI * i as f64 / (grid_n - 1) as f64;
        for j in 0..grid_n {
            let phi = 2.0 * PI * j as f64 / grid_n as f64;
            let v = objective([theta, phi]);
            if v < best.1 {
                best = ([theta, phi], v);
            }
            if i == 0 || i == grid_n - 1 {
                // every φ is the same point at the poles
                break;
            }
        }
    }
    let step = PI / (grid_n - 1) as f64;
    let refined = nelder_mead(objective, best.0, step, refine_tol, 10_000);
    refined.value.min(best.1).max(0.0)
}
