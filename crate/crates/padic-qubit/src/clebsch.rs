//! Clebsch-Gordan decompositions of two p-adic qubits.
//!
//! Multiplicities come from character inner products on D_n. Coupled bases
//! come from isotypic projectors of ρ_A ⊗ ρ_B, summed over the group.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::dihedral::DihedralGroup;
use crate::group::{conjugacy_classes, FiniteGroup};
use crate::linalg::{
    approx_eq, dagger, fix_phase, from_columns, from_real_rows, identity, is_unitary, kron, normal_eigenspaces,
    projector_basis, re, to_pairs, trace, CMatrix, CVector, CHAR_TOL, I, TAU, ZERO,
};
use crate::par::{self, Exec};
use crate::reps::{char_inner_product, character_of, dihedral_irreps, IrrepLabel, Representation, RepsError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClebschError {
    #[error("both factors must be two-dimensional (got {0} and {1})")]
    NotTwoDimensional(usize, usize),
    #[error("index ({j}, {l}) out of range for D_{n}")]
    InvalidIndex { n: u32, j: u32, l: u32 },
    #[error("no branch of the closed form covers D_{n} with ({j}, {l})")]
    Unclassified { n: u32, j: u32, l: u32 },
    #[error("{label}: isotypic projector has rank {got}, multiplicity predicts {expected}")]
    RankMismatch { label: String, expected: usize, got: usize },
    #[error("{label}: multiplicity {mult} of a two-dimensional constituent is not handled")]
    Multiplicity { label: String, mult: usize },
    #[error("{label}: no nonzero intertwiner with the reference irrep")]
    Intertwiner { label: String },
    #[error("element {element}: entry ({row}, {col}) = {value:e} lies off the blocks")]
    OffBlock { element: usize, row: usize, col: usize, value: f64 },
    #[error("element {element}: block {label} does not carry the claimed character")]
    BlockCharacter { element: usize, label: String },
    #[error("constituent dimensions sum to {0}, expected 4")]
    DimensionSum(usize),
    #[error(transparent)]
    Reps(#[from] RepsError),
}

/// One-dimensional and two-dimensional irreps of D_n, by label.
fn dn_label_dim(label: IrrepLabel) -> usize {
    match label {
        IrrepLabel::TwoDim(_) => 2,
        IrrepLabel::Induced { .. } => 0,
        IrrepLabel::Spin(tj) => tj as usize + 1,
        _ => 1,
    }
}

/// Sorts by (dimension ascending, label).
fn sort_constituents(v: &mut [(IrrepLabel, usize)]) {
    v.sort_by_key(|(l, _)| (dn_label_dim(*l), *l));
}

/// The character of σ^(j) ⊗ σ^(l) on the classes of D_n.
pub fn tensor_character_dn(n: u32, j: u32, l: u32) -> Result<crate::reps::Character, ClebschError> {
    check_index(n, j, l)?;
    let g = DihedralGroup::new(n);
    let classes = conjugacy_classes(&g);
    let rep = |k| crate::reps::DihedralIrrep { n, label: IrrepLabel::TwoDim(k) };
    Ok(character_of(&g, &rep(j), &classes).tensor(&character_of(&g, &rep(l), &classes)))
}

fn check_index(n: u32, j: u32, l: u32) -> Result<(), ClebschError> {
    if n < 4 || n % 2 != 0 || j == 0 || l == 0 || 2 * j > n - 2 || 2 * l > n - 2 {
        return Err(ClebschError::InvalidIndex { n, j, l });
    }
    Ok(())
}

/// Multiplicities of the irreps of D_n in σ^(j) ⊗ σ^(l), from character inner products.
pub fn cg_multiplicities(n: u32, j: u32, l: u32) -> Result<Vec<(IrrepLabel, usize)>, ClebschError> {
    check_index(n, j, l)?;
    let g = DihedralGroup::new(n);
    let classes = conjugacy_classes(&g);
    let chi = tensor_character_dn(n, j, l)?;
    let mut out = Vec::new();
    for irrep in dihedral_irreps(n)? {
        let m = char_inner_product(&chi, &character_of(&g, &irrep, &classes), &classes)?;
        let k = m.re.round();
        if (m - k).norm() > CHAR_TOL {
            return Err(ClebschError::Unclassified { n, j, l });
        }
        if k > 0.0 {
            out.push((irrep.label, k as usize));
        }
    }
    sort_constituents(&mut out);
    Ok(out)
}

/// The closed-form decomposition, by branch: n/4 squared, squares away from the
/// centre, pairs symmetric about n/4, and the remaining 2 ⊕ 2 products.
pub fn cg_closed_form(n: u32, j: u32, l: u32) -> Result<Vec<(IrrepLabel, usize)>, ClebschError> {
    check_index(n, j, l)?;
    let half = n / 2;
    let (lo, hi) = (j.min(l), j.max(l));
    let mut out = if lo == hi && 4 * lo == n {
        vec![(IrrepLabel::Triv, 1), (IrrepLabel::S, 1), (IrrepLabel::T, 1), (IrrepLabel::St, 1)]
    } else if lo == hi {
        let base = if 4 * lo < n { lo } else { half - lo };
        vec![(IrrepLabel::Triv, 1), (IrrepLabel::S, 1), (IrrepLabel::TwoDim(2 * base), 1)]
    } else if lo + hi == half {
        vec![(IrrepLabel::T, 1), (IrrepLabel::St, 1), (IrrepLabel::TwoDim(half - 2 * lo), 1)]
    } else {
        let mut found = None;
        'outer: for a in 1..=(n / 4).saturating_sub(1) {
            for b in (a + 1)..=(half - 1 - a) {
                let pairs = [(a, half - b), (b, half - a)];
                if pairs.iter().any(|&(x, y)| (x.min(y), x.max(y)) == (lo, hi)) {
                    found = Some((a, b));
                    break 'outer;
                }
            }
        }
        let (a, b) = found.ok_or(ClebschError::Unclassified { n, j, l })?;
        let (m1, m2) = (half - a - b, half + a - b);
        if m1 == m2 {
            vec![(IrrepLabel::TwoDim(m1), 2)]
        } else {
            vec![(IrrepLabel::TwoDim(m1), 1), (IrrepLabel::TwoDim(m2), 1)]
        }
    };
    sort_constituents(&mut out);
    Ok(out)
}

/// σ^(j) ⊗ σ^(l) ≃ σ^(m) ⊗ σ^(q), decided on characters.
pub fn tensor_equivalent(n: u32, jl: (u32, u32), mq: (u32, u32)) -> Result<bool, ClebschError> {
    let a = tensor_character_dn(n, jl.0, jl.1)?;
    let b = tensor_character_dn(n, mq.0, mq.1)?;
    Ok(a.approx_eq(&b, CHAR_TOL))
}

/// Closed-form value 4·cos(2πjk/n)·cos(2πlk/n) of χ_{j,l} on r^k.
pub fn chi_jl_rotation(n: u32, j: u32, l: u32, k: u32) -> f64 {
    let t = 2.0 * PI * k as f64 / n as f64;
    4.0 * (t * j as f64).cos() * (t * l as f64).cos()
}

/// A block of the coupled basis.
#[derive(Debug, Clone, Serialize)]
pub struct Block {
    pub label: IrrepLabel,
    pub dim: usize,
    /// First column of the block in T.
    pub offset: usize,
}

/// Constituents and a unitary T whose columns are the coupled basis.
#[derive(Debug, Clone)]
pub struct CgDecomposition {
    /// Ordered by (dimension ascending, label).
    pub constituents: Vec<(IrrepLabel, usize)>,
    pub basis_change: CMatrix,
    /// Blocks in the column order of T.
    pub blocks: Vec<Block>,
}

impl CgDecomposition {
    pub fn block_layout(&self) -> Vec<(IrrepLabel, usize)> {
        self.blocks.iter().map(|b| (b.label, b.dim)).collect()
    }

    pub fn block_columns(&self, k: usize) -> Vec<CVector> {
        let b = &self.blocks[k];
        (b.offset..b.offset + b.dim).map(|i| self.basis_change.column(i).into_owned()).collect()
    }

    /// Orthogonal projector onto block `k`.
    pub fn block_projector(&self, k: usize) -> CMatrix {
        let b = &self.blocks[k];
        let cols = self.basis_change.columns(b.offset, b.dim);
        &cols * cols.adjoint()
    }
}

#[derive(Serialize)]
struct CgJson {
    constituents: Vec<(IrrepLabel, usize)>,
    block_layout: Vec<(IrrepLabel, usize)>,
    #[serde(rename = "T")]
    t: Vec<Vec<[f64; 2]>>,
}

impl Serialize for CgDecomposition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CgJson {
            constituents: self.constituents.clone(),
            block_layout: self.block_layout(),
            t: to_pairs(&crate::linalg::cleanup(&self.basis_change, 1e-13)),
        }
        .serialize(serializer)
    }
}

/// The Bell frame (|φ+⟩, |ψ−⟩, |φ−⟩, |ψ+⟩) as the columns of T_2.
pub fn t2() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    from_real_rows(4, 4, &[h, 0.0, h, 0.0, 0.0, h, 0.0, h, 0.0, -h, 0.0, h, h, 0.0, -h, 0.0])
}

/// ρ_A ⊗ ρ_B at element `x`.
pub fn tensor_image<G: FiniteGroup, A: Representation<G>, B: Representation<G>>(
    group: &G,
    a: &A,
    b: &B,
    x: &G::Elem,
) -> CMatrix {
    kron(&a.eval(group, x), &b.eval(group, x))
}

/// Isotypic projector (d/|G|) Σ_g conj(χ(g)) (ρ_A ⊗ ρ_B)(g).
pub fn isotypic_projector<G, A, B, R>(group: &G, a: &A, b: &B, irrep: &R, exec: Exec) -> CMatrix
where
    G: FiniteGroup,
    A: Representation<G>,
    B: Representation<G>,
    R: Representation<G>,
{
    let els = group.elements();
    let n = a.dim() * b.dim();
    let sum = par::sum_matrices(exec, els.len(), n, n, |i| {
        let x = &els[i];
        tensor_image(group, a, b, x) * irrep.character_value(group, x).conj()
    });
    sum * re(irrep.dim() as f64 / els.len() as f64)
}

/// Coupled basis of ρ_A ⊗ ρ_B for two-dimensional irreps, given all irreps of the group.
pub fn coupled_basis<G, A, B, R>(group: &G, a: &A, b: &B, irreps: &[R]) -> Result<CgDecomposition, ClebschError>
where
    G: FiniteGroup,
    A: Representation<G>,
    B: Representation<G>,
    R: Representation<G>,
{
    coupled_basis_with(group, a, b, irreps, Exec::default())
}

pub fn coupled_basis_with<G, A, B, R>(
    group: &G,
    a: &A,
    b: &B,
    irreps: &[R],
    exec: Exec,
) -> Result<CgDecomposition, ClebschError>
where
    G: FiniteGroup,
    A: Representation<G>,
    B: Representation<G>,
    R: Representation<G>,
{
    if a.dim() != 2 || b.dim() != 2 {
        return Err(ClebschError::NotTwoDimensional(a.dim(), b.dim()));
    }
    let classes = conjugacy_classes(group);
    let chi = character_of(group, a, &classes).tensor(&character_of(group, b, &classes));
    let mut constituents = Vec::new();
    let mut raw_blocks: Vec<(IrrepLabel, Vec<CVector>)> = Vec::new();
    for irrep in irreps {
        let m = char_inner_product(&chi, &character_of(group, irrep, &classes), &classes)?;
        let mult = m.re.round() as usize;
        if mult == 0 {
            continue;
        }
        let label = irrep.label();
        constituents.push((label, mult));
        let p = isotypic_projector(group, a, b, irrep, exec);
        let expected = mult * irrep.dim();
        let got = normal_eigenspaces(&p, 1e-6)
            .iter()
            .filter(|s| (s.value - 1.0).norm() < 1e-6)
            .map(|s| s.multiplicity)
            .sum::<usize>();
        let basis = projector_basis(&p, expected, 1e-6);
        if got != expected || basis.len() != expected {
            return Err(ClebschError::RankMismatch { label: label.to_string(), expected, got });
        }
        match irrep.dim() {
            1 => {
                for v in basis {
                    raw_blocks.push((label, vec![fix_phase(&v, 1e-9)]));
                }
            }
            2 if mult == 1 => raw_blocks.push((label, align_doublet(group, a, b, irrep, &basis, exec)?)),
            _ => return Err(ClebschError::Multiplicity { label: label.to_string(), mult }),
        }
    }
    let total: usize = constituents.iter().map(|(l, m)| m * dim_of(irreps, *l)).sum();
    if total != 4 {
        return Err(ClebschError::DimensionSum(total));
    }
    sort_constituents(&mut constituents);
    let frame = t2();
    let bell_key = |cols: &[CVector]| {
        (0..4)
            .find(|&k| {
                let bk = frame.column(k);
                cols.iter().map(|w| bk.dotc(w).norm_sqr()).sum::<f64>() > 0.5
            })
            .unwrap_or(4)
    };
    raw_blocks.sort_by_key(|(label, cols)| (bell_key(cols), cols.len(), *label));
    let mut blocks = Vec::new();
    let mut cols = Vec::new();
    for (label, vs) in raw_blocks {
        blocks.push(Block { label, dim: vs.len(), offset: cols.len() });
        cols.extend(vs);
    }
    Ok(CgDecomposition { constituents, basis_change: from_columns(&cols), blocks })
}

fn dim_of<G: FiniteGroup, R: Representation<G>>(irreps: &[R], label: IrrepLabel) -> usize {
    irreps.iter().find(|r| r.label() == label).map(|r| r.dim()).unwrap_or(0)
}

/// Rotates an orthonormal basis of a multiplicity-one doublet so the block equals σ exactly.
fn align_doublet<G, A, B, R>(
    group: &G,
    a: &A,
    b: &B,
    sigma: &R,
    basis: &[CVector],
    exec: Exec,
) -> Result<Vec<CVector>, ClebschError>
where
    G: FiniteGroup,
    A: Representation<G>,
    B: Representation<G>,
    R: Representation<G>,
{
    let w = from_columns(basis);
    let els = group.elements();
    // M = Σ σ(g) Y B(g)† intertwines B with σ for any Y; retry if it vanishes.
    for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let mut y = CMatrix::zeros(2, 2);
        y[(r, c)] = re(1.0);
        let m = par::sum_matrices(exec, els.len(), 2, 2, |i| {
            let x = &els[i];
            let blk = dagger(&w) * tensor_image(group, a, b, x) * &w;
            sigma.eval(group, x) * &y * dagger(&blk)
        });
        let scale = (trace(&(&m * dagger(&m))).re / 2.0).sqrt();
        if scale < 1e-6 {
            continue;
        }
        let u = m / re(scale);
        let aligned = &w * dagger(&u);
        let first = aligned.column(0).into_owned();
        let pivot = first.iter().find(|z| z.norm() > 1e-9).copied().unwrap_or(re(1.0));
        let phase = pivot.conj() / pivot.norm();
        let aligned = aligned * phase;
        return Ok((0..2).map(|k| aligned.column(k).into_owned()).collect());
    }
    Err(ClebschError::Intertwiner { label: sigma.label().to_string() })
}

/// Result of checking a coupled basis on every group element.
#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub elements_checked: usize,
    pub max_off_block: f64,
    /// Every block equals its irrep's matrix exactly, not only up to an intertwiner.
    pub aligned: bool,
}

/// Checks that T†(ρ_A ⊗ ρ_B)(g)T is block diagonal with blocks carrying the claimed
/// characters, for every group element.
pub fn verify_block_diagonal<G, A, B, R>(
    decomp: &CgDecomposition,
    group: &G,
    a: &A,
    b: &B,
    irreps: &[R],
) -> Result<BlockReport, ClebschError>
where
    G: FiniteGroup,
    A: Representation<G>,
    B: Representation<G>,
    R: Representation<G>,
{
    let t = &decomp.basis_change;
    let td = dagger(t);
    let mut block_of = vec![0usize; t.ncols()];
    for (k, blk) in decomp.blocks.iter().enumerate() {
        for i in blk.offset..blk.offset + blk.dim {
            block_of[i] = k;
        }
    }
    let mut max_off: f64 = 0.0;
    let mut aligned = true;
    for (idx, x) in group.elements().iter().enumerate() {
        let m = &td * tensor_image(group, a, b, x) * t;
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                if block_of[r] != block_of[c] {
                    let v = m[(r, c)].norm();
                    max_off = max_off.max(v);
                    if v > TAU {
                        return Err(ClebschError::OffBlock { element: idx, row: r, col: c, value: v });
                    }
                }
            }
        }
        for blk in &decomp.blocks {
            let sub = m.view((blk.offset, blk.offset), (blk.dim, blk.dim)).into_owned();
            let irrep = irreps.iter().find(|r| r.label() == blk.label);
            let Some(irrep) = irrep else {
                return Err(ClebschError::BlockCharacter { element: idx, label: blk.label.to_string() });
            };
            if (trace(&sub) - irrep.character_value(group, x)).norm() > TAU {
                return Err(ClebschError::BlockCharacter { element: idx, label: blk.label.to_string() });
            }
            if !approx_eq(&sub, &irrep.eval(group, x), TAU) {
                aligned = false;
            }
        }
    }
    Ok(BlockReport { elements_checked: group.order(), max_off_block: max_off, aligned })
}

/// Checks only that the columns of T are orthonormal.
pub fn basis_is_unitary(decomp: &CgDecomposition) -> bool {
    is_unitary(&decomp.basis_change, TAU)
}

/// Spin-½ generators σ_k/2 of su(2).
pub fn spin_half_generators() -> [CMatrix; 3] {
    let h = re(0.5);
    [
        crate::linalg::from_rows(2, 2, &[ZERO, h, h, ZERO]),
        crate::linalg::from_rows(2, 2, &[ZERO, -I * 0.5, I * 0.5, ZERO]),
        crate::linalg::from_rows(2, 2, &[h, ZERO, ZERO, -h]),
    ]
}

/// Spin-1 matrices in the basis m = 1, 0, −1.
pub fn spin_one_generators() -> [CMatrix; 3] {
    let jp = from_real_rows(3, 3, &[0.0, 2f64.sqrt(), 0.0, 0.0, 0.0, 2f64.sqrt(), 0.0, 0.0, 0.0]);
    let jm = dagger(&jp);
    [
        (&jp + &jm) * re(0.5),
        (&jp - &jm) * Complex64::new(0.0, -0.5),
        from_real_rows(3, 3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0]),
    ]
}

/// The standard singlet/triplet coefficient matrix with columns |00⟩, |ψ+⟩, |11⟩, |ψ−⟩.
pub fn su2_reference_t() -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    from_real_rows(4, 4, &[1.0, 0.0, 0.0, 0.0, 0.0, h, 0.0, h, 0.0, h, 0.0, -h, 0.0, 0.0, 1.0, 0.0])
}

/// Total spin J_k = S_k ⊗ I + I ⊗ S_k.
pub fn total_spin() -> [CMatrix; 3] {
    let i2 = identity(2);
    spin_half_generators().map(|s| kron(&s, &i2) + kron(&i2, &s))
}

/// The 2 ⊗ 2 ≃ 1 ⊕ 3 decomposition of SU(2), triplet block first.
///
/// The triplet is built from the highest weight by the lowering operator; the
/// singlet spans the kernel of J².
pub fn su2_coupled_basis() -> CgDecomposition {
    let j = total_spin();
    let casimir = &j[0] * &j[0] + &j[1] * &j[1] + &j[2] * &j[2];
    let spaces = normal_eigenspaces(&casimir, 1e-6);
    let singlet_p = &spaces.iter().find(|s| s.value.norm() < 1e-6).expect("J² has a kernel").projector;
    let triplet_p = &spaces.iter().find(|s| (s.value - 2.0).norm() < 1e-6).expect("J² = 2 on the triplet").projector;
    let jz_on_triplet = triplet_p * &j[2] * triplet_p;
    let top = normal_eigenspaces(&jz_on_triplet, 1e-6)
        .into_iter()
        .find(|s| (s.value - 1.0).norm() < 1e-6)
        .expect("m = 1 in the triplet");
    let v1 = fix_phase(&projector_basis(&top.projector, 1, 1e-9)[0], 1e-9);
    let lower = &j[0] - &j[1] * I;
    let v0 = (&lower * &v1) / re(2f64.sqrt());
    let vm = (&lower * &v0) / re(2f64.sqrt());
    let s = fix_phase(&projector_basis(singlet_p, 1, 1e-9)[0], 1e-9);
    CgDecomposition {
        constituents: vec![(IrrepLabel::Spin(0), 1), (IrrepLabel::Spin(2), 1)],
        basis_change: from_columns(&[v1, v0, vm, s]),
        blocks: vec![
            Block { label: IrrepLabel::Spin(2), dim: 3, offset: 0 },
            Block { label: IrrepLabel::Spin(0), dim: 1, offset: 3 },
        ],
    }
}

/// Checks that T† J_k T is block diagonal with the spin-1 matrices and a zero singlet block.
pub fn verify_su2_blocks(t: &CMatrix) -> Result<BlockReport, ClebschError> {
    let spin1 = spin_one_generators();
    let mut max_off: f64 = 0.0;
    let mut aligned = true;
    for (k, jk) in total_spin().iter().enumerate() {
        let m = dagger(t) * jk * t;
        for r in 0..4 {
            for c in 0..4 {
                if (r == 3) != (c == 3) {
                    let v = m[(r, c)].norm();
                    max_off = max_off.max(v);
                    if v > TAU {
                        return Err(ClebschError::OffBlock { element: k, row: r, col: c, value: v });
                    }
                }
            }
        }
        let trip = m.view((0, 0), (3, 3)).into_owned();
        if (trace(&trip) - trace(&spin1[k])).norm() > TAU || m[(3, 3)].norm() > TAU {
            return Err(ClebschError::BlockCharacter { element: k, label: "spin".into() });
        }
        if !approx_eq(&trip, &spin1[k], TAU) {
            aligned = false;
        }
    }
    Ok(BlockReport { elements_checked: 3, max_off_block: max_off, aligned })
}

/// Column-wise equality up to a phase per column, after fixing each column's phase.
pub fn equal_up_to_column_phases(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    a.shape() == b.shape()
        && (0..a.ncols()).all(|k| {
            let x = fix_phase(&a.column(k).into_owned(), 1e-9);
            let y = fix_phase(&b.column(k).into_owned(), 1e-9);
            (x - y).iter().all(|z| z.norm() <= tol)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Gp;
    use crate::modp::make_context;
    use crate::reps::{all_irreps, d3_irreps, qubit_irreps, Irrep};

    fn labels(v: &[(IrrepLabel, usize)]) -> Vec<(IrrepLabel, usize)> {
        v.to_vec()
    }

    #[test]
    fn multiplicity_examples() {
        use IrrepLabel::*;
        assert_eq!(cg_multiplicities(4, 1, 1).unwrap(), vec![(Triv, 1), (S, 1), (T, 1), (St, 1)]);
        assert_eq!(cg_multiplicities(6, 1, 1).unwrap(), vec![(Triv, 1), (S, 1), (TwoDim(2), 1)]);
        assert_eq!(cg_multiplicities(8, 1, 2).unwrap(), vec![(TwoDim(1), 1), (TwoDim(3), 1)]);
        assert!(cg_multiplicities(8, 0, 1).is_err());
        assert!(cg_multiplicities(8, 4, 1).is_err());
    }

    #[test]
    fn closed_form_matches_characters() {
        for n in (4..=32).step_by(2) {
            for j in 1..=(n - 2) / 2 {
                for l in 1..=(n - 2) / 2 {
                    let a = cg_multiplicities(n, j, l).unwrap();
                    let b = cg_closed_form(n, j, l).unwrap();
                    assert_eq!(labels(&a), labels(&b), "n={n} j={j} l={l}");
                    let dim: usize = a.iter().map(|(lab, m)| m * dn_label_dim(*lab)).sum();
                    assert_eq!(dim, 4);
                }
            }
        }
    }

    #[test]
    fn tensor_character_values() {
        let d3 = DihedralGroup::new(3);
        let classes = conjugacy_classes(&d3);
        let s2 = character_of(&d3, &d3_irreps()[2], &classes);
        let sq = s2.tensor(&s2);
        assert!(sq.approx_eq(
            &crate::reps::Character { values: vec![re(4.0), re(1.0), re(0.0)] },
            1e-12
        ));
        assert!(chi_jl_rotation(8, 1, 2, 2).abs() < 1e-12);
        let triv = character_of(&d3, &d3_irreps()[0], &classes);
        assert!(triv.tensor(&s2).approx_eq(&s2, 1e-15));
    }

    #[test]
    fn character_value_oracle_on_rotations() {
        let g = DihedralGroup::new(10);
        let classes = conjugacy_classes(&g);
        let chi = tensor_character_dn(10, 2, 3).unwrap();
        for (c, &rep) in classes.representatives.iter().enumerate() {
            let x = g.elements()[rep];
            let want = if x.reflect { 0.0 } else { chi_jl_rotation(10, 2, 3, x.k) };
            assert!((chi.values[c] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn equivalence_matches_cosine_criterion() {
        for n in (4..=16u32).step_by(2) {
            let idx: Vec<u32> = (1..=(n - 2) / 2).collect();
            for &j in &idx {
                for &l in &idx {
                    for &m in &idx {
                        for &q in &idx {
                            let by_cos = (1..=n).all(|k| {
                                (chi_jl_rotation(n, j, l, k) - chi_jl_rotation(n, m, q, k)).abs() < 1e-9
                            });
                            assert_eq!(tensor_equivalent(n, (j, l), (m, q)).unwrap(), by_cos);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn d3_gives_bell_frame() {
        let d3 = DihedralGroup::new(3);
        let irreps = d3_irreps();
        let dec = coupled_basis(&d3, &irreps[2], &irreps[2], &irreps).unwrap();
        assert!(basis_is_unitary(&dec));
        assert!(equal_up_to_column_phases(&dec.basis_change, &t2(), 1e-9));
        let rep = verify_block_diagonal(&dec, &d3, &irreps[2], &irreps[2], &irreps).unwrap();
        assert!(rep.aligned);
        assert_eq!(
            dec.block_layout(),
            vec![(IrrepLabel::Triv, 1), (IrrepLabel::S, 1), (IrrepLabel::TwoDim(1), 2)]
        );
    }

    #[test]
    fn g3_four_singlets() {
        let gp = Gp::new(make_context(3).unwrap());
        let irreps: Vec<Irrep> = all_irreps(&gp);
        let q = &qubit_irreps(gp.ctx())[0];
        let dec = coupled_basis(&gp, q, q, &irreps).unwrap();
        assert_eq!(dec.blocks.len(), 4);
        assert!(dec.blocks.iter().all(|b| b.dim == 1));
        assert!(equal_up_to_column_phases(&dec.basis_change, &t2(), 1e-9));
        verify_block_diagonal(&dec, &gp, q, q, &irreps).unwrap();
        verify_block_diagonal(
            &CgDecomposition { basis_change: t2(), ..dec.clone() },
            &gp,
            q,
            q,
            &irreps,
        )
        .unwrap();
    }

    #[test]
    fn su2_reference_is_reproduced() {
        let dec = su2_coupled_basis();
        assert!(approx_eq(&dec.basis_change, &su2_reference_t(), 1e-12));
        let rep = verify_su2_blocks(&su2_reference_t()).unwrap();
        assert!(rep.aligned);
    }

    #[test]
    fn json_shape() {
        let d3 = DihedralGroup::new(3);
        let irreps = d3_irreps();
        let dec = coupled_basis(&d3, &irreps[2], &irreps[2], &irreps).unwrap();
        let v = serde_json::to_value(&dec).unwrap();
        assert_eq!(v["constituents"][2][0], "sigma(1)");
        assert_eq!(v["T"].as_array().unwrap().len(), 4);
        assert_eq!(v["T"][0][0].as_array().unwrap().len(), 2);
    }
}
