//! Geometric discord, its observable lower bound `Q`, and negativity.
//!
//! Both `D_G` and `Q` are functions of the real symmetric 3×3 matrix
//! `S = (x xᵀ + t tᵀ)/(2d)`, where `t` is expressed in a Bob basis
//! normalised to `Tr[τᵢτⱼ] = d δᵢⱼ`:
//!
//! - `D_G = 2(Tr S − k_max) = ⅔(2 Tr S − √(6 Tr S² − 2 (Tr S)²) · cos(θ/3))`
//! - `Q   = ⅔(2 Tr S − √(6 Tr S² − 2 (Tr S)²))`
//!
//! With the Gell-Mann basis (`Tr[τᵢτⱼ] = 2δᵢⱼ`) the correlation block is
//! rescaled by `2/d` before entering `S`, so the closed forms agree with the
//! measurement-disturbance minimum computed by
//! [`geometric_discord_bruteforce`].

mod cubic;
mod oracle;

pub use cubic::{cubic_eigenvalues, theta_from_traces, CubicSolution};
pub use oracle::{geometric_discord_bruteforce, measurement_disturbance, nelder_mead, NelderMeadResult};

use crate::matrix::{partial_transpose_a, trace_norm};
use crate::exec::Execution;
use crate::states::{bloch_fano_decompose, gell_mann_basis, random_mixed, seeded_rng, BlochFano, DensityMatrix};
use rand::Rng;

/// Default coarse grid for the brute-force oracle.
pub const DEFAULT_GRID: usize = 60;
/// Default Nelder–Mead parameter tolerance for the brute-force oracle.
pub const DEFAULT_REFINE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SMatrix {
    pub s: [[f64; 3]; 3],
    pub tr_s: f64,
    pub tr_s2: f64,
    pub tr_s3: f64,
}

fn matmul3(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

impl SMatrix {
    pub fn new(s: [[f64; 3]; 3]) -> Self {
        let s2 = matmul3(&s, &s);
        let s3 = matmul3(&s2, &s);
        let tr = |m: &[[f64; 3]; 3]| m[0][0] + m[1][1] + m[2][2];
        Self {
            s,
            tr_s: tr(&s),
            tr_s2: tr(&s2),
            tr_s3: tr(&s3),
        }
    }

    /// `6 Tr[S²] − 2 Tr[S]²`, evaluated as
    /// `2[Σᵢ<ⱼ (sᵢᵢ − sⱼⱼ)² + 6 Σᵢ<ⱼ sᵢⱼ²]` so that it vanishes exactly for
    /// isotropic `S`.
    pub fn radicand(&self) -> f64 {
        let s = &self.s;
        let diag = (s[0][0] - s[1][1]).powi(2) + (s[1][1] - s[2][2]).powi(2) + (s[0][0] - s[2][2]).powi(2);
        let off = s[0][1].powi(2) + s[0][2].powi(2) + s[1][2].powi(2);
        2.0 * (diag + 6.0 * off)
    }
}

/// `S = (x xᵀ + (N/d)·t tᵀ)/(2d)` for a decomposition in a basis with
/// normalisation `N`.
pub fn s_matrix(bf: &BlochFano) -> SMatrix {
    let d = bf.d as f64;
    let t_weight = bf.normalization / d;
    let tt = bf.t_gram();
    let mut s = [[0.0; 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            s[i][k] = (bf.x[i] * bf.x[k] + t_weight * tt[i][k]) / (2.0 * d);
        }
    }
    SMatrix::new(s)
}

/// `S` of a state, via its Gell-Mann decomposition.
pub fn s_matrix_of(rho: &DensityMatrix) -> SMatrix {
    let basis = gell_mann_basis(rho.dim_b().max(2)).expect("d >= 2");
    if rho.dim_b() < 2 {
        // A qubit–trivial system has no correlations: S = x xᵀ/2.
        let bf = BlochFano {
            x: [1, 2, 3].map(|i| rho.expectation(&crate::matrix::pauli(i))),
            y: vec![],
            t: [vec![], vec![], vec![]],
            d: 1,
            normalization: 1.0,
        };
        return s_matrix(&bf);
    }
    s_matrix(&bloch_fano_decompose(rho, &basis).expect("basis matches"))
}

/// `D_G` from the closed form, `2(Tr S − k₁)`.
pub fn discord_from_s(s: &SMatrix) -> (f64, CubicSolution) {
    let sol = cubic_eigenvalues(s);
    let d_g = 2.0 * (s.tr_s - sol.k[0]);
    (d_g.max(0.0), sol)
}

/// `Q = ⅔(2 Tr S − √(6 Tr S² − 2 Tr S²))`.
pub fn q_from_s(s: &SMatrix) -> f64 {
    let q = 2.0 / 3.0 * (2.0 * s.tr_s - s.radicand().sqrt());
    q.max(0.0)
}

/// Cosine form of `D_G` evaluated from `(Tr S, Tr S², θ)`.
pub fn discord_cosine_form(tr_s: f64, radicand: f64, theta: f64) -> f64 {
    2.0 / 3.0 * (2.0 * tr_s - radicand.max(0.0).sqrt() * (theta / 3.0).cos())
}

pub fn geometric_discord_closed(rho: &DensityMatrix) -> f64 {
    discord_from_s(&s_matrix_of(rho)).0
}

pub fn q_measure(rho: &DensityMatrix) -> f64 {
    q_from_s(&s_matrix_of(rho))
}

/// `‖ρ^{T_A}‖₁ − 1`, clipped at zero; equals 1 on Bell states.
pub fn negativity(rho: &DensityMatrix) -> f64 {
    let pt = partial_transpose_a(rho.matrix(), &rho.layout()).expect("bipartite layout");
    (trace_norm(&pt) - 1.0).max(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationReport {
    pub d_g: f64,
    pub q: f64,
    pub theta: f64,
    pub negativity: f64,
    pub neg_sq: f64,
    pub tr_s: f64,
    pub tr_s2: f64,
}

impl CorrelationReport {
    pub fn gap(&self) -> f64 {
        self.d_g - self.q
    }

    pub fn zero() -> Self {
        Self {
            d_g: 0.0,
            q: 0.0,
            theta: 0.0,
            negativity: 0.0,
            neg_sq: 0.0,
            tr_s: 0.0,
            tr_s2: 0.0,
        }
    }
}

pub fn correlation_report(rho: &DensityMatrix) -> CorrelationReport {
    let s = s_matrix_of(rho);
    let (d_g, sol) = discord_from_s(&s);
    let n = negativity(rho);
    CorrelationReport {
        d_g,
        q: q_from_s(&s),
        theta: sol.theta,
        negativity: n,
        neg_sq: n * n,
        tr_s: s.tr_s,
        tr_s2: s.tr_s2,
    }
}

/// Reports for `samples` random two-qubit states. Sample `i` draws its rank
/// uniformly from `1..=4` and a Wishart state of that rank from the stream
/// `(seed, i)`, so the output does not depend on scheduling.
pub fn random_state_reports(samples: usize, seed: u64, exec: Execution) -> Vec<CorrelationReport> {
    exec.map_range(samples, |i| {
        let mut rng = seeded_rng(seed, i as u64);
        let rank = rng.random_range(1..=4);
        let rho = random_mixed(2, rank, &mut rng).expect("valid rank");
        correlation_report(&rho)
    })
}
