//! Two qubits, each coupled to its own environment.
//!
//! - Lorentzian amplitude damping: all elements of the state are
//!   polynomials in the decay factor `P_t` and its square roots.
//! - Phase flip along `σ₃`: Bell-diagonal states stay Bell-diagonal with
//!   `c₁, c₂ ∝ e^{−2γt}` and `c₃` constant.

use crate::exec::Execution;
use crate::matrix::{kron, pauli, ComplexMatrix, C64};
use crate::measures::{correlation_report, CorrelationReport};
use crate::states::{bell_diagonal, DensityMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzianParams {
    pub gamma0: f64,
    pub lambda: f64,
}

impl LorentzianParams {
    pub fn new(gamma0: f64, lambda: f64) -> Result<Self> {
        for (name, v) in [("gamma0", gamma0), ("lambda", lambda)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "(0, inf)",
                });
            }
        }
        Ok(Self { gamma0, lambda })
    }

    /// `Δ² = (2γ₀λ − λ²)/4`; negative in the overdamped regime `λ > 2γ₀`.
    pub fn delta_sq(&self) -> f64 {
        (2.0 * self.gamma0 * self.lambda - self.lambda * self.lambda) / 4.0
    }
}

/// `P_t = e^{−λt}[cos Δt + (λ/2Δ) sin Δt]`, continued to `cosh`/`sinh` for
/// `Δ² < 0` and to `1 + λt/2` at `Δ = 0`.
pub fn p_t(t: f64, params: &LorentzianParams) -> f64 {
    let lambda = params.lambda;
    let d2 = params.delta_sq();
    let envelope = (-lambda * t).exp();
    if d2 > 0.0 {
        let delta = d2.sqrt();
        envelope * ((delta * t).cos() + lambda / (2.0 * delta) * (delta * t).sin())
    } else if d2 < 0.0 {
        let kappa = (-d2).sqrt();
        envelope * ((kappa * t).cosh() + lambda / (2.0 * kappa) * (kappa * t).sinh())
    } else {
        envelope * (1.0 + lambda * t / 2.0)
    }
}

/// Standard index (`|00⟩, |01⟩, |10⟩, |11⟩`) of canonical element `k = 1..4`
/// in the ordering `|11⟩, |10⟩, |01⟩, |00⟩`.
fn std_index(k: usize) -> usize {
    4 - k
}

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    Ok(())
}

/// Entrywise evolution under independent Lorentzian environments at a given
/// decay factor `p ≥ 0`.
pub fn evolve_with_decay(rho0: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    require_two_qubit(rho0)?;
    let m0 = rho0.matrix();
    let r = |i: usize, j: usize| m0[(std_index(i), std_index(j))];
    let (sqrt_p, p32) = (p.sqrt(), p.powf(1.5));

    let mut m = ComplexMatrix::zeros(4);
    let mut set = |i: usize, j: usize, v: C64| {
        m[(std_index(i), std_index(j))] = v;
        m[(std_index(j), std_index(i))] = v.conj();
    };
    let r11 = r(1, 1) * p * p;
    let r22 = r(2, 2) * p + r(1, 1) * p * (1.0 - p);
    let r33 = r(3, 3) * p + r(1, 1) * p * (1.0 - p);
    set(1, 1, r11);
    set(2, 2, r22);
    set(3, 3, r33);
    set(4, 4, C64::new(1.0, 0.0) - r11 - r22 - r33);
    set(1, 2, r(1, 2) * p32);
    set(1, 3, r(1, 3) * p32);
    set(1, 4, r(1, 4) * p);
    set(2, 3, r(2, 3) * p);
    set(2, 4, (r(2, 4) + r(1, 3) * (1.0 - p)) * sqrt_p);
    set(3, 4, (r(3, 4) + r(1, 2) * (1.0 - p)) * sqrt_p);
    // diagonal entries must be real
    for i in 0..4 {
        m[(i, i)] = C64::new(m[(i, i)].re, 0.0);
    }
    Ok(DensityMatrix::new_unchecked(m, 2))
}

pub fn evolve_independent(rho0: &DensityMatrix, t: f64, params: &LorentzianParams) -> Result<DensityMatrix> {
    let p = p_t(t, params);
    if p < 0.0 {
        return Err(Error::NegativeDecayFactor { t, p_t: p });
    }
    evolve_with_decay(rho0, p)
}

/// Kraus pair of single-qubit amplitude damping with excited population
/// factor `p`; `|1⟩` is the excited state.
pub fn amplitude_damping_kraus(p: f64) -> [ComplexMatrix; 2] {
    [
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, p.sqrt()]]),
        ComplexMatrix::from_real_rows(&[&[0.0, (1.0 - p).sqrt()], &[0.0, 0.0]]),
    ]
}

/// Applies a single-qubit channel to each qubit independently.
pub fn apply_local_channels(rho: &DensityMatrix, kraus: &[ComplexMatrix]) -> Result<DensityMatrix> {
    require_two_qubit(rho)?;
    let mut out = ComplexMatrix::zeros(4);
    for ka in kraus {
        for kb in kraus {
            out = &out + &rho.matrix().conjugate_by(&kron(ka, kb));
        }
    }
    Ok(DensityMatrix::new_unchecked(out.hermitian_part(), 2))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseFlipParams {
    pub gamma: f64,
}

impl PhaseFlipParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::OutOfRange {
                name: "gamma",
                value: gamma,
                range: "(0, inf)",
            });
        }
        Ok(Self { gamma })
    }
}

/// `(c₁e^{−2γt}, c₂e^{−2γt}, c₃)`.
pub fn phase_flip_coefficients(c0: [f64; 3], t: f64, params: &PhaseFlipParams) -> [f64; 3] {
    let f = (-2.0 * params.gamma * t).exp();
    [c0[0] * f, c0[1] * f, c0[2]]
}

pub fn evolve_phase_flip(c0: [f64; 3], t: f64, params: &PhaseFlipParams) -> Result<DensityMatrix> {
    bell_diagonal(c0[0], c0[1], c0[2])?;
    let [c1, c2, c3] = phase_flip_coefficients(c0, t, params);
    bell_diagonal(c1, c2, c3)
}

/// Local dephasing `ρ → (1−q)ρ + q σ₃ρσ₃` on each qubit with
/// `1 − 2q = e^{−γt}`; reduces to [`evolve_phase_flip`] on Bell-diagonal
/// states and applies to any two-qubit state.
pub fn phase_flip_kraus(t: f64, params: &PhaseFlipParams) -> [ComplexMatrix; 2] {
    let q = (1.0 - (-params.gamma * t).exp()) / 2.0;
    [pauli(0).scale((1.0 - q).sqrt()), pauli(3).scale(q.sqrt())]
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Channel {
    Lorentzian(LorentzianParams),
    PhaseFlip(PhaseFlipParams),
}

impl Channel {
    pub fn name(&self) -> &'static str {
        match self {
            Channel::Lorentzian(_) => "lorentzian",
            Channel::PhaseFlip(_) => "phaseflip",
        }
    }

    /// Parameter names and values, in a fixed order.
    pub fn parameters(&self) -> Vec<(&'static str, f64)> {
        match self {
            Channel::Lorentzian(p) => vec![("gamma0", p.gamma0), ("lambda", p.lambda)],
            Channel::PhaseFlip(p) => vec![("gamma", p.gamma)],
        }
    }

    pub fn evolve(&self, rho0: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
        match self {
            Channel::Lorentzian(p) => evolve_independent(rho0, t, p),
            Channel::PhaseFlip(p) => apply_local_channels(rho0, &phase_flip_kraus(t, p)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub channel: Channel,
    pub times: Vec<f64>,
    pub reports: Vec<CorrelationReport>,
    /// First requested time at which the decay factor went negative.
    pub stopped_at: Option<f64>,
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::InvalidSubsystems("times must be finite and non-negative".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidSubsystems("times must be strictly increasing".into()));
    }
    Ok(())
}

/// Correlation reports along the evolution. Sampling stops at the first time
/// where the Lorentzian decay factor is negative; if that is the first
/// requested time the error is returned.
pub fn trajectory(initial: &DensityMatrix, channel: Channel, times: &[f64], exec: Execution) -> Result<Trajectory> {
    require_two_qubit(initial)?;
    check_times(times)?;
    let results = exec.map(times, |&t| channel.evolve(initial, t).map(|rho| correlation_report(&rho)));
    let mut out = Trajectory {
        channel,
        times: Vec::with_capacity(times.len()),
        reports: Vec::with_capacity(times.len()),
        stopped_at: None,
    };
    for (&t, r) in times.iter().zip(results) {
        match r {
            Ok(report) => {
                out.times.push(t);
                out.reports.push(report);
            }
            Err(e @ Error::NegativeDecayFactor { .. }) => {
                if out.times.is_empty() {
                    return Err(e);
                }
                out.stopped_at = Some(t);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapRow {
    pub param: f64,
    pub t_max: f64,
    pub max_gap: f64,
}

fn gap_at(initial: &DensityMatrix, channel: &Channel, t: f64) -> Option<f64> {
    channel.evolve(initial, t).ok().map(|rho| correlation_report(&rho).gap())
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    (x, f(x))
}

/// For each family parameter, `max_t (D_G − Q)` over `t_grid`, refined by
/// golden-section search between the neighbours of the best grid point.
pub fn max_gap<F>(family: F, params: &[f64], channel: Channel, t_grid: &[f64], exec: Execution) -> Result<Vec<GapRow>>
where
    F: Fn(f64) -> Result<DensityMatrix> + Sync,
{
    check_times(t_grid)?;
    let rows = exec.map(params, |&param| -> Result<GapRow> {
        let initial = family(param)?;
        let gaps: Vec<Option<f64>> = t_grid.iter().map(|&t| gap_at(&initial, &channel, t)).collect();
        let valid = gaps.iter().take_while(|g| g.is_some()).count();
        if valid == 0 {
            return Ok(GapRow {
                param,
                t_max: t_grid.first().copied().unwrap_or(0.0),
                max_gap: 0.0,
            });
        }
        let (best, best_gap) = gaps[..valid]
            .iter()
            .enumerate()
            .map(|(i, g)| (i, g.unwrap_or(f64::NEG_INFINITY)))
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        let lo = t_grid[best.saturating_sub(1)];
        let hi = t_grid[(best + 1).min(valid - 1)];
        let (t_ref, g_ref) = golden_max(
            |t| gap_at(&initial, &channel, t).unwrap_or(f64::NEG_INFINITY),
            lo,
            hi,
            1e-9,
        );
        Ok(if g_ref > best_gap {
            GapRow {
                param,
                t_max: t_ref,
                max_gap: g_ref,
            }
        } else {
            GapRow {
                param,
                t_max: t_grid[best],
                max_gap: best_gap,
            }
        })
    });
    rows.into_iter().collect()
}

/// Werner state `r|Ψ⁺⟩⟨Ψ⁺| + (1−r)I/4` as a family.
pub fn werner_family(r: f64) -> Result<DensityMatrix> {
    crate::states::werner(r)
}

/// Bell-diagonal family `c(0) = (1, −s, s)`.
pub fn phase_flip_family(s: f64) -> Result<DensityMatrix> {
    bell_diagonal(1.0, -s, s)
}

/// `ln(1/s)/(2γ)`: where `|c₁(t)|` drops to `|c₃|` for `c(0) = (1, −s, s)`.
pub fn phase_flip_kink_time(s: f64, params: &PhaseFlipParams) -> f64 {
    (1.0 / s).ln() / (2.0 * params.gamma)
}

/// Location of the largest `|f(tᵢ₋₁) − 2f(tᵢ) + f(tᵢ₊₁)|` on a uniform grid
/// of `points` over `[t0, t1]`, zoomed `rounds` times onto the neighbourhood
/// of the winner. Returns `(t, |Δ²f|/h²)` from the last round.
pub fn detect_kink(f: impl Fn(f64) -> f64, t0: f64, t1: f64, points: usize, rounds: usize) -> (f64, f64) {
    let points = points.max(5);
    let (mut a, mut b) = (t0, t1);
    let mut best = (a, 0.0);
    for _ in 0..rounds.max(1) {
        let h = (b - a) / (points - 1) as f64;
        let values: Vec<f64> = (0..points).map(|i| f(a + h * i as f64)).collect();
        let (i, strength) = (1..points - 1)
            .map(|i| (i, (values[i - 1] - 2.0 * values[i] + values[i + 1]).abs() / (h * h)))
            .fold((1, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        best = (a + h * i as f64, strength);
        let (na, nb) = (a + h * (i - 1) as f64, a + h * (i + 1) as f64);
        a = na;
        b = nb;
    }
    best
}

/// Second-order one-sided difference quotients `(f'(t⁻), f'(t⁺))`.
pub fn one_sided_slopes(f: impl Fn(f64) -> f64, t: f64, h: f64) -> (f64, f64) {
    let left = (3.0 * f(t) - 4.0 * f(t - h) + f(t - 2.0 * h)) / (2.0 * h);
    let right = (-3.0 * f(t) + 4.0 * f(t + h) - f(t + 2.0 * h)) / (2.0 * h);
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{random_mixed, seeded_rng, werner};

    fn lorentz(gamma0: f64, lambda: f64) -> LorentzianParams {
        LorentzianParams::new(gamma0, lambda).unwrap()
    }

    #[test]
    fn decay_factor_examples() {
        let p = lorentz(1.0, 1.0);
        assert_eq!(p_t(0.0, &p), 1.0);
        let expected = (-1.0f64).exp() * (0.5f64.cos() + 0.5f64.sin());
        assert!((p_t(1.0, &p) - expected).abs() < 1e-15);
        assert!((p_t(1.0, &p) - 0.499215381675065).abs() < 1e-12);

        let over = lorentz(1.0, 4.0);
        let mut prev = 1.0;
        for k in 1..50 {
            let v = p_t(k as f64 * 0.1, &over);
            assert!(v > 0.0 && v < prev);
            prev = v;
        }
        // critical point λ = 2γ₀ joins both branches continuously
        let crit = lorentz(1.0, 2.0);
        for t in [0.3, 1.0, 2.5] {
            let below = p_t(t, &lorentz(1.0, 2.0 - 1e-7));
            let above = p_t(t, &lorentz(1.0, 2.0 + 1e-7));
            assert!((p_t(t, &crit) - below).abs() < 1e-6 && (p_t(t, &crit) - above).abs() < 1e-6);
        }
        assert!(LorentzianParams::new(0.0, 1.0).is_err());
        assert!(LorentzianParams::new(1.0, -1.0).is_err());
    }

    #[test]
    fn overdamped_branch_matches_series() {
        // P_t = e^{−λt} Σ_n (−Δ²)ⁿ [t^{2n}/(2n)! + (λ/2) t^{2n+1}/(2n+1)!]
        let p = lorentz(1.0, 4.0);
        let k2 = -p.delta_sq();
        for t in [0.1f64, 0.5, 1.3] {
            let mut sum = 0.0;
            let mut fact = 1.0;
            for n in 0..40 {
                let k = 2 * n;
                if k > 0 {
                    fact *= (k - 1) as f64 * k as f64;
                }
                sum += k2.powi(n) * t.powi(k) / fact;
                sum += p.lambda / 2.0 * k2.powi(n) * t.powi(k + 1) / (fact * (k + 1) as f64);
            }
            assert!((p_t(t, &p) - (-p.lambda * t).exp() * sum).abs() < 1e-12);
        }
    }

    #[test]
    fn evolution_examples() {
        let p = lorentz(1.0, 1.0);
        let w = werner(0.75).unwrap();
        assert!(evolve_independent(&w, 0.0, &p).unwrap().matrix().max_abs_diff(w.matrix()) < 1e-15);

        let excited = DensityMatrix::from_pure(&[C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)], 2).unwrap();
        for t in [0.2, 1.0, 3.0] {
            let pt = p_t(t, &p);
            let rho = evolve_independent(&excited, t, &p).unwrap();
            assert!((rho.matrix()[(3, 3)].re - pt * pt).abs() < 1e-15);
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);
            assert!(rho.matrix()[(0, 0)].re > 0.0);
        }
    }

    #[test]
    fn negative_decay_factor_is_reported() {
        let p = lorentz(1.0, 0.1);
        let t_neg = (1..2000).map(|k| k as f64 * 0.01).find(|&t| p_t(t, &p) < 0.0).unwrap();
        let err = evolve_independent(&werner(0.5).unwrap(), t_neg, &p).unwrap_err();
        assert!(matches!(err, Error::NegativeDecayFactor { t, .. } if t == t_neg));

        let times: Vec<f64> = (0..2000).map(|k| k as f64 * 0.01).collect();
        let traj = trajectory(&werner(0.5).unwrap(), Channel::Lorentzian(p), &times, Execution::Sequential).unwrap();
        assert_eq!(traj.stopped_at, Some(t_neg));
        assert!(traj.times.iter().all(|&t| t < t_neg));
        assert!(trajectory(&werner(0.5).unwrap(), Channel::Lorentzian(p), &[t_neg], Execution::Sequential).is_err());
    }

    #[test]
    fn factorizes_into_single_qubit_maps() {
        for k in 0..20 {
            let rho = random_mixed(2, 4, &mut seeded_rng(101, k)).unwrap();
            for p in [1.0, 0.8, 0.3, 0.0] {
                let entrywise = evolve_with_decay(&rho, p).unwrap();
                let composed = apply_local_channels(&rho, &amplitude_damping_kraus(p)).unwrap();
                assert!(entrywise.matrix().max_abs_diff(composed.matrix()) < 1e-12);
            }
        }
    }

    #[test]
    fn channels_keep_states_valid() {
        let channels = [
            Channel::Lorentzian(lorentz(1.0, 0.1)),
            Channel::Lorentzian(lorentz(1.0, 1.0)),
            Channel::Lorentzian(lorentz(1.0, 4.0)),
            Channel::PhaseFlip(PhaseFlipParams::new(1.0).unwrap()),
        ];
        for ch in channels {
            for k in 0..10 {
                let rho = random_mixed(2, 1 + (k as usize) % 4, &mut seeded_rng(102, k)).unwrap();
                for t in (0..40).map(|i| i as f64 * 0.25) {
                    let Ok(out) = ch.evolve(&rho, t) else { continue };
                    assert!((out.matrix().trace().re - 1.0).abs() < 1e-14);
                    assert_eq!(out.matrix().hermiticity_error(), 0.0);
                    assert!(out.eigenvalues()[0] > -1e-9);
                }
            }
        }
    }

    #[test]
    fn phase_flip_examples() {
        let params = PhaseFlipParams::new(1.0).unwrap();
        let c0 = [1.0, -0.6, 0.6];
        let initial = bell_diagonal(1.0, -0.6, 0.6).unwrap();
        assert!(evolve_phase_flip(c0, 0.0, &params).unwrap().matrix().max_abs_diff(initial.matrix()) < 1e-15);
        let late = phase_flip_coefficients(c0, 50.0, &params);
        assert!(late[0].abs() < 1e-40 && late[1].abs() < 1e-40 && late[2] == 0.6);
        assert!(evolve_phase_flip([1.0, 1.0, 1.0], 0.1, &params).is_err());
        for t in [0.1, 0.5, 2.0] {
            let bell = evolve_phase_flip(c0, t, &params).unwrap();
            let kraus = apply_local_channels(&initial, &phase_flip_kraus(t, &params)).unwrap();
            assert!(bell.matrix().max_abs_diff(kraus.matrix()) < 1e-14);
            let half = ComplexMatrix::identity(2).scale(0.5);
            assert!(bell.reduced_a().max_abs_diff(&half) < 1e-15);
            assert!(bell.reduced_b().max_abs_diff(&half) < 1e-15);
        }
        assert!((phase_flip_kink_time(0.6, &params) - 0.25541281188299536).abs() < 1e-15);
    }

    #[test]
    fn maximally_mixed_is_fixed() {
        let mm = DensityMatrix::maximally_mixed(2);
        let times: Vec<f64> = (0..20).map(|k| k as f64 * 0.5).collect();
        for ch in [Channel::Lorentzian(lorentz(1.0, 1.0)), Channel::PhaseFlip(PhaseFlipParams::new(1.0).unwrap())] {
            let traj = trajectory(&mm, ch, &times, Execution::Sequential).unwrap();
            assert!(traj.reports.iter().all(|r| r.d_g.abs() < 1e-15 && r.q.abs() < 1e-15));
        }
    }

    #[test]
    fn time_grid_validation() {
        let mm = DensityMatrix::maximally_mixed(2);
        let ch = Channel::PhaseFlip(PhaseFlipParams::new(1.0).unwrap());
        assert!(trajectory(&mm, ch, &[0.0, 0.0], Execution::Sequential).is_err());
        assert!(trajectory(&mm, ch, &[-1.0], Execution::Sequential).is_err());
    }

    #[test]
    fn golden_section_and_kink_helpers() {
        let (x, fx) = golden_max(|t| -(t - 0.3).powi(2), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8 && fx.abs() < 1e-15);
        let (t, strength) = detect_kink(|t| (t - 0.4).abs(), 0.0, 1.0, 101, 6);
        assert!((t - 0.4).abs() < 1e-8 && strength > 1.0);
        let (l, r) = one_sided_slopes(|t| (t - 0.4).abs(), 0.4, 1e-4);
        assert!((l + 1.0).abs() < 1e-9 && (r - 1.0).abs() < 1e-9);
        let (l, r) = one_sided_slopes(|t| t * t, 0.4, 1e-4);
        assert!((l - r).abs() < 1e-9);
    }
}
