use super::SMatrix;

/// Below this value of `6 Tr S² − 2 (Tr S)²` the spectrum of `S` is treated as
/// a triple root. The radicand is evaluated without cancellation, so this only
/// catches genuinely isotropic `S`.
pub const DEGENERATE_RADICAND: f64 = 1e-24;

/// Roots of `k³ + a₀k² + a₁k + a₂ = 0`, the characteristic polynomial of `S`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicSolution {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    /// `(3a₁ − a₀²)/9`.
    pub q: f64,
    /// `(9a₀a₁ − 27a₂ − 2a₀³)/54`.
    pub r: f64,
    /// `arccos(r/√(−q³))` in `[0, π]`.
    pub theta: f64,
    /// Descending: `k[0] ≥ k[1] ≥ k[2]`.
    pub k: [f64; 3],
    pub degenerate: bool,
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Trigonometric solution of the cubic.
///
/// `r/√(−q³)` is evaluated as `det(B)/2` with `B = (S − (Tr S/3) I)/p`,
/// `p = √(−q)`, which is the same quantity without the cancellation in `r`.
pub fn cubic_eigenvalues(s: &SMatrix) -> CubicSolution {
    let a0 = -s.tr_s;
    let a1 = (s.tr_s * s.tr_s - s.tr_s2) / 2.0;
    let a2 = -(a1 * s.tr_s + a0 * s.tr_s2 + s.tr_s3) / 3.0;
    let q = (3.0 * a1 - a0 * a0) / 9.0;
    let r = (9.0 * a0 * a1 - 27.0 * a2 - 2.0 * a0.powi(3)) / 54.0;

    let mean = s.tr_s / 3.0;
    let radicand = s.radicand();
    if radicand < DEGENERATE_RADICAND {
        return CubicSolution {
            a0,
            a1,
            a2,
            q,
            r,
            theta: 0.0,
            k: [mean; 3],
            degenerate: true,
        };
    }
    // −q = radicand/36
    let p = radicand.sqrt() / 6.0;
    let mut b = s.s;
    for (i, row) in b.iter_mut().enumerate() {
        row[i] -= mean;
        for v in row.iter_mut() {
            *v /= p;
        }
    }
    let theta = (det3(&b) / 2.0).clamp(-1.0, 1.0).acos();
    let two_p = 2.0 * p;
    let tau = 2.0 * std::f64::consts::PI;
    let k = [
        mean + two_p * (theta / 3.0).cos(),
        mean + two_p * ((theta - tau) / 3.0).cos(),
        mean + two_p * ((theta + tau) / 3.0).cos(),
    ];
    CubicSolution {
        a0,
        a1,
        a2,
        q,
        r,
        theta,
        k,
        degenerate: false,
    }
}

/// `θ` straight from the power traces,
/// `arccos[(2(Tr S)³ − 9 Tr S Tr S² + 9 Tr S³)·√(2/(3 Tr S² − (Tr S)²)³)]`.
pub fn theta_from_traces(tr_s: f64, tr_s2: f64, tr_s3: f64) -> f64 {
    let denom = 3.0 * tr_s2 - tr_s * tr_s;
    if denom <= 0.0 {
        return 0.0;
    }
    let num = 2.0 * tr_s.powi(3) - 9.0 * tr_s * tr_s2 + 9.0 * tr_s3;
    (num * (2.0 / denom.powi(3)).sqrt()).clamp(-1.0, 1.0).acos()
}
