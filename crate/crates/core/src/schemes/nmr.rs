use super::{MulticopyOperator, ObservablePlan, PlanEntry, Setting};
use crate::matrix::{kron, pauli, ComplexMatrix, SubsystemLayout, C64};
use crate::measures::{discord_from_s, q_from_s, s_matrix};
use crate::states::{gell_mann_basis, BlochFano, DensityMatrix, OperatorBasis};
use crate::{Error, Result};
use std::collections::HashMap;

const AXES: [&str; 3] = ["X", "Y", "Z"];

fn label(nu: usize, bob: &str) -> String {
    format!("{}:{bob}", AXES[nu - 1])
}

/// All `σ_ν ⊗ τ_λ`, `ν = 1..3`, `λ = 0..d²−1` with `τ₀ = I`, in the
/// Gell-Mann basis.
pub fn nmr_plan(d: usize) -> Result<ObservablePlan> {
    nmr_plan_with_basis(&gell_mann_basis(d)?)
}

pub fn nmr_plan_with_basis(basis: &OperatorBasis) -> Result<ObservablePlan> {
    let d = basis.dim();
    let layout = SubsystemLayout::bipartite(2, d);
    let id = ComplexMatrix::identity(d);
    let mut observables = Vec::with_capacity(3 * d * d);
    for nu in 1..=3 {
        let bob = std::iter::once(("I", &id)).chain(basis.labels().iter().map(String::as_str).zip(basis.operators()));
        for (name, tau) in bob {
            let l = label(nu, name);
            observables.push(PlanEntry {
                operator: MulticopyOperator::dense(l.clone(), layout.clone(), kron(&pauli(nu), tau)),
                label: l,
                copies: 1,
            });
        }
    }
    Ok(ObservablePlan {
        setting: Setting::Nmr,
        d,
        observables,
        tomography_count: 4 * d * d - 1,
    })
}

/// Exact expectation of every plan entry on `rho`.
pub fn simulate_plan(plan: &ObservablePlan, rho: &DensityMatrix) -> Vec<(String, f64)> {
    plan.observables
        .iter()
        .map(|e| {
            let blocks = vec![rho.matrix(); e.copies];
            (e.label.clone(), e.operator.expectation_product(&blocks).re)
        })
        .collect()
}

/// `(D_G, Q)` from NMR expectations `⟨σ_ν ⊗ τ_λ⟩` keyed by plan label.
pub fn reconstruct_from_nmr(expectations: &HashMap<String, f64>, basis: &OperatorBasis) -> Result<(f64, f64)> {
    let d = basis.dim();
    let get = |key: String| expectations.get(&key).copied().ok_or(Error::MissingLabel(key));
    let scale = d as f64 / basis.normalization();
    let mut x = [0.0; 3];
    let mut t: [Vec<f64>; 3] = Default::default();
    for nu in 1..=3 {
        x[nu - 1] = get(label(nu, "I"))?;
        for name in basis.labels() {
            t[nu - 1].push(scale * get(label(nu, name))?);
        }
    }
    let bf = BlochFano {
        x,
        y: vec![],
        t,
        d,
        normalization: basis.normalization(),
    };
    let s = s_matrix(&bf);
    Ok((discord_from_s(&s).0, q_from_s(&s)))
}

fn rotation(phi: f64, n: [f64; 3]) -> ComplexMatrix {
    // exp(−iφ n·σ/2)
    let (c, s) = ((phi / 2.0).cos(), (phi / 2.0).sin());
    let mut m = pauli(0).scale(c);
    for (i, ni) in n.iter().enumerate() {
        m = &m + &pauli(i + 1).scale_c(C64::new(0.0, -s * ni));
    }
    m
}

/// `R` with `R σ_axis R† = σ₁`: identity, `R_z(−π/2)`, `R_y(π/2)`.
pub fn localizing_rotation(axis: usize) -> ComplexMatrix {
    use std::f64::consts::FRAC_PI_2;
    match axis {
        1 => pauli(0),
        2 => rotation(-FRAC_PI_2, [0.0, 0.0, 1.0]),
        3 => rotation(FRAC_PI_2, [0.0, 1.0, 0.0]),
        _ => panic!("axis {axis} out of range 1..=3"),
    }
}

fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalizationCheck {
    /// `Tr[(σ_ν ⊗ σ_λ) ρ]`.
    pub lhs: f64,
    /// `Tr[(σ₁ ⊗ I) ξ]` after the local rotations and the CNOT.
    pub rhs: f64,
}

/// Reads the two-body correlation `⟨σ_ν ⊗ σ_λ⟩` from a single-spin
/// measurement on Alice. Because `CNOT† (σ₁⊗I) CNOT = σ₁⊗σ₁`, both sides are
/// rotated onto `σ₁` first and Alice's `σ₁` is the measured axis.
pub fn nmr_localization_check(rho: &DensityMatrix, nu: usize, lambda: usize) -> Result<LocalizationCheck> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    for (name, v) in [("nu", nu), ("lambda", lambda)] {
        if !(1..=3).contains(&v) {
            return Err(Error::OutOfRange {
                name,
                value: v as f64,
                range: "1..=3",
            });
        }
    }
    let lhs = rho.expectation(&kron(&pauli(nu), &pauli(lambda)));
    let gate = cnot().matmul(&kron(&localizing_rotation(nu), &localizing_rotation(lambda)));
    let xi = rho.matrix().conjugate_by(&gate);
    let rhs = kron(&pauli(1), &pauli(0)).trace_product(&xi).re;
    Ok(LocalizationCheck { lhs, rhs })
}
