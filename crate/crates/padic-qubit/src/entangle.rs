//! Entanglement diagnostics on C² ⊗ C².

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::clebsch::CgDecomposition;
use crate::linalg::{
    approx_eq, hermitian_eigenvalues, identity, is_hermitian, re, singular_values, trace,
    vec_to_pairs, CMatrix, CVector, TAU,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EntangleError {
    #[error("state has norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("expected {expected} amplitudes, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("not a density operator: {0}")]
    NotDensity(&'static str),
    #[error("block {label}: {reason}")]
    Classification { label: String, reason: String },
}

/// A pure state of two qubits, amplitudes indexed by 2i + j.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState2x2 {
    amplitudes: CVector,
}

impl PureState2x2 {
    pub fn new(amplitudes: CVector) -> Result<Self, EntangleError> {
        if amplitudes.len() != 4 {
            return Err(EntangleError::WrongLength { expected: 4, got: amplitudes.len() });
        }
        let n = amplitudes.norm();
        if (n - 1.0).abs() > TAU {
            return Err(EntangleError::NotNormalized(n));
        }
        Ok(PureState2x2 { amplitudes })
    }

    pub fn from_slice(a: &[Complex64]) -> Result<Self, EntangleError> {
        PureState2x2::new(CVector::from_column_slice(a))
    }

    /// The standard basis state |ij⟩.
    pub fn basis(i: usize, j: usize) -> Self {
        let mut v = CVector::zeros(4);
        v[2 * i + j] = re(1.0);
        PureState2x2 { amplitudes: v }
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// The 2×2 matrix ψ_{ij}.
    pub fn coefficient_matrix(&self) -> CMatrix {
        CMatrix::from_fn(2, 2, |i, j| self.amplitudes[2 * i + j])
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator { matrix: &self.amplitudes * self.amplitudes.adjoint() }
    }

    /// (U ⊗ V)|ψ⟩.
    pub fn apply_local(&self, u: &CMatrix, v: &CMatrix) -> Self {
        PureState2x2 { amplitudes: crate::linalg::kron(u, v) * &self.amplitudes }
    }
}

/// The four Bell states (|φ+⟩, |φ−⟩, |ψ+⟩, |ψ−⟩).
pub fn bell_states() -> [PureState2x2; 4] {
    let h = re(std::f64::consts::FRAC_1_SQRT_2);
    let z = re(0.0);
    let mk = |a: [Complex64; 4]| PureState2x2 { amplitudes: CVector::from_column_slice(&a) };
    [mk([h, z, z, h]), mk([h, z, z, -h]), mk([z, h, h, z]), mk([z, h, -h, z])]
}

/// Schmidt coefficients (descending) and local bases.
#[derive(Debug, Clone)]
pub struct Schmidt {
    pub coefficients: [f64; 2],
    pub rank: usize,
    /// Columns u_k of subsystem A.
    pub basis_a: CMatrix,
    /// Columns v_k of subsystem B, with ψ = Σ λ_k u_k ⊗ v_k.
    pub basis_b: CMatrix,
}

pub fn schmidt(state: &PureState2x2) -> Schmidt {
    let m = state.coefficient_matrix();
    let d = crate::linalg::svd(&m);
    let coefficients = [d.singular_values[0], d.singular_values[1]];
    let basis_a = d.u;
    let basis_b = d.v.map(|z| z.conj());
    Schmidt {
        coefficients,
        rank: coefficients.iter().filter(|&&c| c > TAU).count(),
        basis_a,
        basis_b,
    }
}

/// Hermitian, trace-one, positive semidefinite operator on C² ⊗ C².
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(matrix: CMatrix) -> Result<Self, EntangleError> {
        if matrix.shape() != (4, 4) {
            return Err(EntangleError::NotDensity("shape is not 4×4"));
        }
        if !is_hermitian(&matrix, TAU) {
            return Err(EntangleError::NotDensity("not Hermitian"));
        }
        if (trace(&matrix) - 1.0).norm() > TAU {
            return Err(EntangleError::NotDensity("trace is not 1"));
        }
        if hermitian_eigenvalues(&matrix)[0] < -TAU {
            return Err(EntangleError::NotDensity("not positive semidefinite"));
        }
        Ok(DensityOperator { matrix })
    }

    /// A projector of rank r divided by r.
    pub fn normalized_projector(p: &CMatrix) -> Result<Self, EntangleError> {
        let r = trace(p).re;
        DensityOperator::new(p / re(r))
    }

    pub fn maximally_mixed() -> Self {
        DensityOperator { matrix: identity(4) / re(4.0) }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subsystem {
    A,
    B,
}

/// Traces out `subsystem`.
pub fn partial_trace(rho: &DensityOperator, subsystem: Subsystem) -> CMatrix {
    let m = &rho.matrix;
    CMatrix::from_fn(2, 2, |r, c| match subsystem {
        Subsystem::A => (0..2).map(|i| m[(2 * i + r, 2 * i + c)]).sum(),
        Subsystem::B => (0..2).map(|j| m[(2 * r + j, 2 * c + j)]).sum(),
    })
}

/// Transpose on subsystem B.
pub fn partial_transpose(rho: &DensityOperator) -> CMatrix {
    let m = &rho.matrix;
    CMatrix::from_fn(4, 4, |r, c| {
        let (i, j) = (r / 2, r % 2);
        let (k, l) = (c / 2, c % 2);
        m[(2 * i + l, 2 * k + j)]
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PptVerdict {
    pub separable: bool,
    /// Smallest eigenvalue of the partial transpose.
    pub witness: f64,
}

/// Peres-Horodecki test, exact for two qubits.
pub fn ppt_separable(rho: &DensityOperator) -> PptVerdict {
    let witness = hermitian_eigenvalues(&partial_transpose(rho))[0];
    PptVerdict { separable: witness >= -TAU, witness }
}

/// Both reduced states equal I/2.
pub fn is_maximally_entangled(state: &PureState2x2) -> bool {
    let rho = state.density();
    let half = identity(2) / re(2.0);
    approx_eq(&partial_trace(&rho, Subsystem::A), &half, TAU)
        && approx_eq(&partial_trace(&rho, Subsystem::B), &half, TAU)
}

/// Both Schmidt coefficients equal 1/√2.
pub fn is_maximally_entangled_schmidt(state: &PureState2x2) -> bool {
    let s = schmidt(state);
    s.coefficients.iter().all(|c| (c - std::f64::consts::FRAC_1_SQRT_2).abs() <= TAU)
}

/// Per-block entanglement facts.
#[derive(Debug, Clone, Serialize)]
pub struct BlockEntanglement {
    pub label: String,
    pub dim: usize,
    pub spanning_basis: Vec<Vec<[f64; 2]>>,
    /// Every basis vector is maximally entangled.
    pub max_entangled: bool,
    pub projector_separable: bool,
    pub witness: f64,
    /// For doublets: an orthonormal pair of maximally entangled states spanning the block.
    pub entangled_pair: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntanglementReport {
    pub blocks: Vec<BlockEntanglement>,
}

/// A pair of orthonormal maximally entangled states spanning a 2-dimensional subspace, if one exists.
///
/// Searched over x = cos t·w₁ + e^{iφ} sin t·w₂ on a grid, then refined: the
/// reduced state of x is I/2 iff the 2×2 coefficient matrix is √2 times a unitary.
pub fn maximally_entangled_pair(w1: &CVector, w2: &CVector) -> Option<(CVector, CVector)> {
    let defect = |x: &CVector| {
        let m = CMatrix::from_fn(2, 2, |i, j| x[2 * i + j]);
        let g = m.adjoint() * &m;
        (g - identity(2) / re(2.0)).norm()
    };
    let candidate = |t: f64, phi: f64| w1 * re(t.cos()) + w2 * Complex64::from_polar(t.sin(), phi);
    let steps = 64;
    for a in 0..=steps {
        for b in 0..steps {
            let (mut t, mut phi) = (
                std::f64::consts::FRAC_PI_2 * a as f64 / steps as f64,
                2.0 * std::f64::consts::PI * b as f64 / steps as f64,
            );
            let mut h = 0.05;
            let mut best = defect(&candidate(t, phi));
            while h > 1e-13 && best > 1e-12 {
                let mut improved = false;
                for (dt, dp) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
                    let d = defect(&candidate(t + dt, phi + dp));
                    if d < best {
                        best = d;
                        t += dt;
                        phi += dp;
                        improved = true;
                    }
                }
                if !improved {
                    h /= 2.0;
                }
            }
            if best < 1e-10 {
                let x = candidate(t, phi);
                let y = orthogonal_partner(w1, w2, &x);
                if defect(&y) < 1e-9 {
                    return Some((x, y));
                }
            }
        }
    }
    None
}

fn orthogonal_partner(w1: &CVector, w2: &CVector, x: &CVector) -> CVector {
    let a = w1.dotc(x);
    let b = w2.dotc(x);
    // x = a w1 + b w2; the partner is −conj(b) w1 + conj(a) w2
    w1 * (-b.conj()) + w2 * a.conj()
}

/// Classifies every block of a coupled basis.
pub fn analyze_decomposition(decomp: &CgDecomposition) -> Result<EntanglementReport, EntangleError> {
    let mut blocks = Vec::new();
    for (k, blk) in decomp.blocks.iter().enumerate() {
        let cols = decomp.block_columns(k);
        let states: Vec<PureState2x2> = cols.iter().map(|c| PureState2x2::new(c.clone())).collect::<Result<_, _>>()?;
        let max_entangled = states.iter().all(is_maximally_entangled);
        let rho = DensityOperator::normalized_projector(&decomp.block_projector(k))?;
        let ppt = ppt_separable(&rho);
        let pair = if blk.dim == 2 { maximally_entangled_pair(&cols[0], &cols[1]) } else { None };
        let label = blk.label.to_string();
        match blk.dim {
            1 if !max_entangled => {
                return Err(EntangleError::Classification { label, reason: "singlet is not maximally entangled".into() })
            }
            d if d >= 2 && !ppt.separable => {
                return Err(EntangleError::Classification {
                    label,
                    reason: format!("projector fails PPT (witness {:e})", ppt.witness),
                })
            }
            2 if pair.is_none() => {
                return Err(EntangleError::Classification {
                    label,
                    reason: "no maximally entangled basis of the doublet".into(),
                })
            }
            _ => {}
        }
        blocks.push(BlockEntanglement {
            label,
            dim: blk.dim,
            spanning_basis: cols.iter().map(vec_to_pairs).collect(),
            max_entangled,
            projector_separable: ppt.separable,
            witness: ppt.witness,
            entangled_pair: pair.map(|(x, y)| vec![vec_to_pairs(&x), vec_to_pairs(&y)]),
        });
    }
    Ok(EntanglementReport { blocks })
}

/// Largest Schmidt coefficient.
pub fn schmidt_max(state: &PureState2x2) -> f64 {
    singular_values(&state.coefficient_matrix())[0]
}
