//! Validated qubit–qudit density matrices and the state families used
//! throughout the crate.

mod basis;
mod bloch;
pub mod io;
mod random;

pub use basis::{gell_mann_basis, pauli_product_basis, OperatorBasis};
pub use bloch::{bloch_fano_decompose, bloch_fano_reconstruct, BlochFano};
pub use random::{random_mixed, random_pure, random_unitary, seeded_rng, StateRng};

use crate::matrix::{herm_eigenvalues, kron, partial_trace, pauli, ComplexMatrix, SubsystemLayout, C64, ZERO};
use crate::{Error, Result, DEFAULT_TOL};

/// A density matrix on `C² ⊗ C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dim_b: usize,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity with [`DEFAULT_TOL`].
    pub fn new(matrix: ComplexMatrix, dim_b: usize) -> Result<Self> {
        Self::with_tol(matrix, dim_b, DEFAULT_TOL)
    }

    pub fn with_tol(matrix: ComplexMatrix, dim_b: usize, tol: f64) -> Result<Self> {
        if dim_b == 0 || matrix.dim() != 2 * dim_b {
            return Err(Error::InvalidState(format!(
                "matrix dimension {} is not 2·d for d = {dim_b}",
                matrix.dim()
            )));
        }
        let herm = matrix.hermiticity_error();
        if herm > tol {
            return Err(Error::InvalidState(format!(
                "not Hermitian (max deviation {herm:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::InvalidState(format!(
                "trace is {:.12} + {:.12}i, expected 1",
                tr.re, tr.im
            )));
        }
        let min = herm_eigenvalues(&matrix.hermitian_part())?[0];
        if min < -tol {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (minimum eigenvalue {min:e})"
            )));
        }
        Ok(Self { matrix, dim_b })
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix, dim_b: usize) -> Self {
        debug_assert_eq!(matrix.dim(), 2 * dim_b);
        Self { matrix, dim_b }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim_a(&self) -> usize {
        2
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn layout(&self) -> SubsystemLayout {
        SubsystemLayout::bipartite(2, self.dim_b)
    }

    pub fn reduced_a(&self) -> ComplexMatrix {
        partial_trace(&self.matrix, &self.layout(), &[0]).expect("layout matches")
    }

    pub fn reduced_b(&self) -> ComplexMatrix {
        partial_trace(&self.matrix, &self.layout(), &[1]).expect("layout matches")
    }

    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    /// `Re Tr[O ρ]`.
    pub fn expectation(&self, observable: &ComplexMatrix) -> f64 {
        observable.trace_product(&self.matrix).re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        herm_eigenvalues(&self.matrix.hermitian_part()).expect("density matrices are Hermitian")
    }

    /// `U ρ U†`, revalidated.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        Self::new(self.matrix.conjugate_by(u).hermitian_part(), self.dim_b)
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self::new_unchecked(ComplexMatrix::identity(2 * d).scale(0.5 / d as f64), d)
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalised) vector on `C² ⊗ C^d`.
    pub fn from_pure(psi: &[C64], d: usize) -> Result<Self> {
        if psi.len() != 2 * d {
            return Err(Error::DimensionMismatch {
                expected: 2 * d,
                found: psi.len(),
            });
        }
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self::new_unchecked(ComplexMatrix::projector(&v), d))
    }

    pub fn product(rho_a: &ComplexMatrix, rho_b: &ComplexMatrix) -> Result<Self> {
        if rho_a.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: rho_a.dim(),
            });
        }
        Self::new(kron(rho_a, rho_b), rho_b.dim())
    }
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name,
            value,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// `|Φ⁺⟩ = (|00⟩ + |11⟩)/√2`.
pub fn bell_phi_plus() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DensityMatrix::from_pure(&[C64::new(s, 0.0), ZERO, ZERO, C64::new(s, 0.0)], 2)
        .expect("valid vector")
}

/// `|Ψ⁺⟩ = (|01⟩ + |10⟩)/√2`, the Bell state of the Werner family.
pub fn bell_psi_plus() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DensityMatrix::from_pure(&[ZERO, C64::new(s, 0.0), C64::new(s, 0.0), ZERO], 2)
        .expect("valid vector")
}

/// Werner state `r|Ψ⁺⟩⟨Ψ⁺| + (1−r)I₄/4`.
pub fn werner(r: f64) -> Result<DensityMatrix> {
    check_unit_interval("r", r)?;
    let a = (1.0 - r) / 4.0;
    let b = (1.0 + r) / 4.0;
    let c = r / 2.0;
    let m = ComplexMatrix::from_real_rows(&[
        &[a, 0.0, 0.0, 0.0],
        &[0.0, b, c, 0.0],
        &[0.0, c, b, 0.0],
        &[0.0, 0.0, 0.0, a],
    ]);
    Ok(DensityMatrix::new_unchecked(m, 2))
}

/// Eigenvalues of the Bell-diagonal state, ordered
/// `(λ⁺_Ψ, λ⁻_Ψ, λ⁺_Φ, λ⁻_Φ)` with `λ±_Ψ = [1 ± c₁ ∓ c₂ + c₃]/4` and
/// `λ±_Φ = [1 ± c₁ ± c₂ − c₃]/4`.
pub fn bell_diagonal_eigenvalues(c: [f64; 3]) -> [f64; 4] {
    let [c1, c2, c3] = c;
    [
        (1.0 + c1 - c2 + c3) / 4.0,
        (1.0 - c1 + c2 + c3) / 4.0,
        (1.0 + c1 + c2 - c3) / 4.0,
        (1.0 - c1 - c2 - c3) / 4.0,
    ]
}

/// `(I₄ + Σ cᵢ σᵢ⊗σᵢ)/4`.
pub fn bell_diagonal(c1: f64, c2: f64, c3: f64) -> Result<DensityMatrix> {
    let ev = bell_diagonal_eigenvalues([c1, c2, c3]);
    if let Some(min) = ev.iter().copied().find(|&e| e < -DEFAULT_TOL) {
        return Err(Error::InvalidState(format!(
            "Bell-diagonal triple ({c1}, {c2}, {c3}) is unphysical (eigenvalue {min})"
        )));
    }
    let mut m = ComplexMatrix::identity(4);
    for (i, ci) in [c1, c2, c3].into_iter().enumerate() {
        m = &m + &kron(&pauli(i + 1), &pauli(i + 1)).scale(ci);
    }
    Ok(DensityMatrix::new_unchecked(m.scale(0.25), 2))
}

/// `√α|00⟩ + √(1−α)|11⟩` on `C² ⊗ C^d`.
pub fn pure_from_schmidt(alpha: f64, d: usize) -> Result<DensityMatrix> {
    check_unit_interval("alpha", alpha)?;
    if d < 2 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            range: "d >= 2",
        });
    }
    let mut psi = vec![ZERO; 2 * d];
    psi[0] = C64::new(alpha.sqrt(), 0.0);
    psi[d + 1] = C64::new((1.0 - alpha).sqrt(), 0.0);
    DensityMatrix::from_pure(&psi, d)
}

/// `Σᵢ pᵢ |i⟩⟨i| ⊗ ρ_Bi` in the computational basis of the qubit.
pub fn classical_quantum(p: [f64; 2], bob_states: [&ComplexMatrix; 2]) -> Result<DensityMatrix> {
    if p.iter().any(|&pi| pi < 0.0) || (p[0] + p[1] - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::InvalidState(format!(
            "probabilities {p:?} are not a normalised distribution"
        )));
    }
    let d = bob_states[0].dim();
    if bob_states[1].dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bob_states[1].dim(),
        });
    }
    let mut m = ComplexMatrix::zeros(2 * d);
    for (i, (&pi, rb)) in p.iter().zip(bob_states).enumerate() {
        let mut proj = ComplexMatrix::zeros(2);
        proj[(i, i)] = C64::new(pi, 0.0);
        m = &m + &kron(&proj, rb);
    }
    DensityMatrix::new(m, d)
}
