//! One-clean-qubit trace estimation on a three-qubit register.
//!
//! The ancilla starts as `(I + μσ₃)/2`, the register maximally mixed. After a
//! Hadamard and a controlled-`U` the joint state is
//! `(1/16)[[I, μU†], [μU, I]]` and the ancilla polarisations along `σ₁`, `σ₂`
//! give the real and imaginary parts of `Tr[U]/8`.

use crate::exec::Execution;
use crate::matrix::{kron, pauli, ComplexMatrix, C64, ONE};
use crate::measures::correlation_report;
use crate::states::DensityMatrix;
use crate::{Error, Result};

pub const REGISTER_QUBITS: usize = 3;
pub const REGISTER_DIM: usize = 1 << REGISTER_QUBITS;

/// `diag(a, a, b, 1, a, b, 1, 1)` with `a = −e^{−i12π/5}`, `b = e^{−i24π/5}`,
/// register ordered big-endian `|q₁q₂q₃⟩`.
pub fn designed_unitary() -> ComplexMatrix {
    let w = C64::from_polar(1.0, -3.0 * std::f64::consts::PI / 5.0);
    let a = -w.powu(4);
    let b = w.powu(8);
    ComplexMatrix::diag(&[a, a, b, ONE, a, b, ONE, ONE])
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dqc1Instance {
    mu: f64,
    u: ComplexMatrix,
}

impl Dqc1Instance {
    pub fn new(mu: f64, u: ComplexMatrix) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(Error::OutOfRange {
                name: "mu",
                value: mu,
                range: "[0, 1]",
            });
        }
        if u.dim() != REGISTER_DIM {
            return Err(Error::DimensionMismatch {
                expected: REGISTER_DIM,
                found: u.dim(),
            });
        }
        let err = u.unitarity_error();
        if err > 1e-10 {
            return Err(Error::NotUnitary(err));
        }
        Ok(Self { mu, u })
    }

    pub fn designed(mu: f64) -> Result<Self> {
        Self::new(mu, designed_unitary())
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.u
    }
}

fn block_matrix(blocks: [[&ComplexMatrix; 2]; 2]) -> ComplexMatrix {
    let n = blocks[0][0].dim();
    ComplexMatrix::from_fn(2 * n, |r, c| blocks[r / n][c / n][(r % n, c % n)])
}

/// `(1/16)[[I₈, μU†], [μU, I₈]]`.
pub fn dqc1_output_state(inst: &Dqc1Instance) -> DensityMatrix {
    let n = REGISTER_DIM;
    let id = ComplexMatrix::identity(n);
    let lower = inst.u.scale(inst.mu);
    let upper = lower.adjoint();
    let m = block_matrix([[&id, &upper], [&lower, &id]]).scale(1.0 / (2 * n) as f64);
    DensityMatrix::new_unchecked(m, n)
}

fn hadamard() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]])
}

fn controlled(u: &ComplexMatrix) -> ComplexMatrix {
    let id = ComplexMatrix::identity(u.dim());
    let zero = ComplexMatrix::zeros(u.dim());
    block_matrix([[&id, &zero], [&zero, u]])
}

/// Gate-by-gate evaluation: Hadamard on the ancilla, then controlled-`U`.
/// The second Hadamard of the circuit belongs to the readout, see
/// [`readout_polarisations`].
pub fn dqc1_circuit_state(inst: &Dqc1Instance) -> DensityMatrix {
    let n = REGISTER_DIM;
    let ancilla = (&pauli(0) + &pauli(3).scale(inst.mu)).scale(0.5);
    let register = ComplexMatrix::identity(n).scale(1.0 / n as f64);
    let rho_in = kron(&ancilla, &register);
    let h = kron(&hadamard(), &ComplexMatrix::identity(n));
    let gate = controlled(&inst.u).matmul(&h);
    let m = rho_in.conjugate_by(&gate).hermitian_part();
    DensityMatrix::new_unchecked(m, n)
}

/// `(⟨σ₁⟩, ⟨σ₂⟩)` of the ancilla read as `σ₃` after a final Hadamard, and
/// after `S†` then Hadamard.
pub fn readout_polarisations(rho_out: &DensityMatrix) -> (f64, f64) {
    let n = rho_out.dim_b();
    let id = ComplexMatrix::identity(n);
    let z = kron(&pauli(3), &id);
    let h = kron(&hadamard(), &id);
    let s_dag = kron(&ComplexMatrix::diag(&[ONE, C64::new(0.0, -1.0)]), &id);
    let real = rho_out.matrix().conjugate_by(&h).trace_product(&z).re;
    let imag = rho_out
        .matrix()
        .conjugate_by(&h.matmul(&s_dag))
        .trace_product(&z)
        .re;
    (real, imag)
}

/// `8(⟨σ₁⟩ + i⟨σ₂⟩)/μ`.
pub fn trace_estimate(rho_out: &DensityMatrix, mu: f64) -> Result<C64> {
    if mu <= 0.0 {
        return Err(Error::UnpolarisedAncilla);
    }
    let id = ComplexMatrix::identity(rho_out.dim_b());
    let s1 = rho_out.expectation(&kron(&pauli(1), &id));
    let s2 = rho_out.expectation(&kron(&pauli(2), &id));
    Ok(C64::new(s1, s2) * (rho_out.dim_b() as f64 / mu))
}

/// Binary entropy in bits, `h₂(0) = h₂(1) = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    term(p) + term(1.0 - p)
}

/// `2 − h₂((1−μ)/2) − log₂[1 + √(1−μ²)] − (1 − √(1−μ²)) log₂e`.
pub fn entropic_discord_dqc1(mu: f64) -> f64 {
    let root = (1.0 - mu * mu).max(0.0).sqrt();
    2.0 - binary_entropy((1.0 - mu) / 2.0) - (1.0 + root).log2() - (1.0 - root) * std::f64::consts::LOG2_E
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dqc1Row {
    pub mu: f64,
    pub d_g: f64,
    pub q: f64,
    pub entropic: f64,
}

pub fn dqc1_sweep(mu_grid: &[f64], exec: Execution) -> Result<Vec<Dqc1Row>> {
    let u = designed_unitary();
    exec.map(mu_grid, |&mu| {
        let inst = Dqc1Instance::new(mu, u.clone())?;
        let report = correlation_report(&dqc1_output_state(&inst));
        Ok(Dqc1Row {
            mu,
            d_g: report.d_g,
            q: report.q,
            entropic: entropic_discord_dqc1(mu),
        })
    })
    .into_iter()
    .collect()
}

/// Least-squares `c` in `y ≈ c·x²`.
pub fn quadratic_coefficient(xs: &[f64], ys: &[f64]) -> f64 {
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| x * x * y).sum();
    let den: f64 = xs.iter().map(|x| x.powi(4)).sum();
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// `n` evenly spaced points from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![start],
        _ => (0..n)
            .map(|i| start + (end - start) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// A diagonal unitary with the given phases.
pub fn diagonal_unitary(phases: &[f64]) -> ComplexMatrix {
    let entries: Vec<C64> = phases.iter().map(|&p| C64::from_polar(1.0, p)).collect();
    ComplexMatrix::diag(&entries)
}
