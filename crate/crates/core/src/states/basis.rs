use crate::matrix::{kron_all, pauli, ComplexMatrix, C64, ONE, ZERO};
use crate::{Error, Result};

/// Traceless Hermitian operators on `C^d`, pairwise orthogonal with
/// `Tr[τᵢτⱼ] = normalization·δᵢⱼ`. The identity is not a member.
#[derive(Clone, Debug)]
pub struct OperatorBasis {
    dim: usize,
    labels: Vec<String>,
    operators: Vec<ComplexMatrix>,
    normalization: f64,
}

impl OperatorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn operator(&self, j: usize) -> &ComplexMatrix {
        &self.operators[j]
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// `Tr[τᵢ τⱼ]` for all pairs.
    pub fn gram(&self) -> Vec<Vec<C64>> {
        self.operators
            .iter()
            .map(|a| self.operators.iter().map(|b| a.trace_product(b)).collect())
            .collect()
    }

    /// Expansion `m = c₀·I + Σⱼ cⱼ τⱼ`, returned as `(c₀, [cⱼ])`.
    pub fn expand(&self, m: &ComplexMatrix) -> (C64, Vec<C64>) {
        let c0 = m.trace() / self.dim as f64;
        let cs = self
            .operators
            .iter()
            .map(|t| t.trace_product(m) / self.normalization)
            .collect();
        (c0, cs)
    }
}

/// Generalised Gell-Mann matrices on `C^d`, normalised to `Tr[τᵢτⱼ] = 2δᵢⱼ`.
///
/// Ordering: for each pair `j < k` (lexicographic) the symmetric then the
/// antisymmetric matrix, followed by the `d − 1` diagonal matrices. For
/// `d = 2` this is exactly `(σ₁, σ₂, σ₃)`.
pub fn gell_mann_basis(d: usize) -> Result<OperatorBasis> {
    if d < 2 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d as f64,
            range: "d >= 2",
        });
    }
    let mut labels = Vec::with_capacity(d * d - 1);
    let mut operators = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let mut sym = ComplexMatrix::zeros(d);
            sym[(j, k)] = ONE;
            sym[(k, j)] = ONE;
            labels.push(format!("S{j}{k}"));
            operators.push(sym);

            let mut anti = ComplexMatrix::zeros(d);
            anti[(j, k)] = C64::new(0.0, -1.0);
            anti[(k, j)] = C64::new(0.0, 1.0);
            labels.push(format!("A{j}{k}"));
            operators.push(anti);
        }
    }
    for l in 1..d {
        let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut diag = vec![ZERO; d];
        for z in diag.iter_mut().take(l) {
            *z = C64::new(scale, 0.0);
        }
        diag[l] = C64::new(-(l as f64) * scale, 0.0);
        labels.push(format!("D{l}"));
        operators.push(ComplexMatrix::diag(&diag));
    }
    Ok(OperatorBasis {
        dim: d,
        labels,
        operators,
        normalization: 2.0,
    })
}

/// Non-identity Pauli products on `n` qubits, `Tr[τᵢτⱼ] = 2ⁿδᵢⱼ`.
///
/// Index `λ = Σₖ aₖ 4ᵏ` with `aₖ ∈ {0,1,2,3}` the Pauli index on qubit `k`,
/// so the first qubit runs fastest: `σ₁⊗I, σ₂⊗I, σ₃⊗I, I⊗σ₁, …, σ₃⊗…⊗σ₃`.
pub fn pauli_product_basis(n: usize) -> Result<OperatorBasis> {
    if n == 0 || n > 6 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            range: "1 <= n <= 6",
        });
    }
    const NAMES: [char; 4] = ['I', 'X', 'Y', 'Z'];
    let paulis: Vec<ComplexMatrix> = (0..4).map(pauli).collect();
    let count = 4usize.pow(n as u32);
    let mut labels = Vec::with_capacity(count - 1);
    let mut operators = Vec::with_capacity(count - 1);
    for lambda in 1..count {
        let digits: Vec<usize> = (0..n).map(|k| (lambda / 4usize.pow(k as u32)) % 4).collect();
        labels.push(digits.iter().map(|&a| NAMES[a]).collect());
        operators.push(kron_all(digits.iter().map(|&a| &paulis[a])));
    }
    Ok(OperatorBasis {
        dim: 1 << n,
        labels,
        operators,
        normalization: (1u64 << n) as f64,
    })
}
