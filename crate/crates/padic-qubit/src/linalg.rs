//! Dense complex matrices and the handful of factorizations the toolkit needs.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Dense complex matrix, the common currency of representations and gates.
pub type CMatrix = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVector = DVector<Complex64>;
/// Dense real matrix.
pub type RMatrix = DMatrix<f64>;

/// Entrywise tolerance for matrix identities.
pub const TAU: f64 = 1e-9;
/// Tolerance for character values.
pub const CHAR_TOL: f64 = 1e-6;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// e^{iπt}, with the exact values at multiples of π/6 snapped in.
pub fn exp_i_pi(t: f64) -> Complex64 {
    let twelfths = t * 6.0;
    if (twelfths - twelfths.round()).abs() < 1e-12 {
        let k = (twelfths.round() as i64).rem_euclid(12);
        let h = 0.5;
        let r3 = 3f64.sqrt() / 2.0;
        let (cos, sin) = match k {
            0 => (1.0, 0.0),
            1 => (r3, h),
            2 => (h, r3),
            3 => (0.0, 1.0),
            4 => (-h, r3),
            5 => (-r3, h),
            6 => (-1.0, 0.0),
            7 => (-r3, -h),
            8 => (-h, -r3),
            9 => (0.0, -1.0),
            10 => (h, -r3),
            _ => (r3, -h),
        };
        return c(cos, sin);
    }
    Complex64::from_polar(1.0, std::f64::consts::PI * t)
}

/// Builds a matrix from row-major entries.
pub fn from_rows(n: usize, m: usize, entries: &[Complex64]) -> CMatrix {
    assert_eq!(entries.len(), n * m, "entry count");
    CMatrix::from_row_slice(n, m, entries)
}

/// Builds a complex matrix from real row-major entries.
pub fn from_real_rows(n: usize, m: usize, entries: &[f64]) -> CMatrix {
    CMatrix::from_iterator(m, n, entries.iter().map(|&x| re(x))).transpose()
}

/// Builds a matrix whose columns are the given vectors.
pub fn from_columns(cols: &[CVector]) -> CMatrix {
    CMatrix::from_columns(cols)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn dagger(a: &CMatrix) -> CMatrix {
    a.adjoint()
}

/// Max-abs entrywise distance.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn approx_eq(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    max_abs_diff(a, b) <= tol
}

/// Equality up to a global phase: finds the phase from the largest entry of `b`.
pub fn approx_eq_up_to_phase(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    if a.shape() != b.shape() {
        return false;
    }
    let (idx, pivot) = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .map(|(i, z)| (i, *z))
        .unwrap_or((0, ZERO));
    if pivot.norm() < tol {
        return a.iter().all(|z| z.norm() <= tol);
    }
    let ratio = a[idx] / pivot;
    if (ratio.norm() - 1.0).abs() > tol {
        return false;
    }
    let phase = ratio / ratio.norm();
    approx_eq(a, &(b * phase), tol)
}

pub fn is_unitary(a: &CMatrix, tol: f64) -> bool {
    a.is_square() && approx_eq(&(a.adjoint() * a), &identity(a.nrows()), tol)
}

pub fn is_hermitian(a: &CMatrix, tol: f64) -> bool {
    a.is_square() && approx_eq(a, &a.adjoint(), tol)
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

/// Frobenius inner product Tr(A†B).
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Sets entries with magnitude below `eps` (and the tiny parts of the rest) to exact zero.
pub fn cleanup(a: &CMatrix, eps: f64) -> CMatrix {
    a.map(|z| {
        let r = if z.re.abs() < eps { 0.0 } else { z.re };
        let i = if z.im.abs() < eps { 0.0 } else { z.im };
        c(r, i)
    })
}

/// Thin singular value decomposition `a = u · diag(s) · v†`, values descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMatrix,
    pub singular_values: Vec<f64>,
    pub v: CMatrix,
}

/// One-sided Jacobi SVD.
///
/// nalgebra 0.35 returns wrong singular values for some of the reshuffled gate
/// matrices once singular vectors are requested, so the decomposition is done here.
pub fn svd(a: &CMatrix) -> Svd {
    let (n, m) = a.shape();
    if m > n {
        let t = svd(&a.adjoint());
        return Svd { u: t.v, singular_values: t.singular_values, v: t.u };
    }
    let mut w = a.clone();
    let mut v = identity(m);
    let eps = f64::EPSILON;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..m {
            for q in p + 1..m {
                let alpha = w.column(p).norm_squared();
                let beta = w.column(q).norm_squared();
                let gamma = w.column(p).dotc(&w.column(q));
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() || g < f64::MIN_POSITIVE {
                    continue;
                }
                rotated = true;
                let e = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for mat in [&mut w, &mut v] {
                    for i in 0..mat.nrows() {
                        let xp = mat[(i, p)];
                        let xq = mat[(i, q)] * e.conj();
                        mat[(i, p)] = xp * cs - xq * sn;
                        mat[(i, q)] = xp * sn + xq * cs;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = (0..m).map(|j| w.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let scale = norms.iter().copied().fold(0.0, f64::max);
    let mut us: Vec<CVector> = Vec::with_capacity(m);
    let mut values = Vec::with_capacity(m);
    let mut vcols = Vec::with_capacity(m);
    for &j in &order {
        let sigma = norms[j];
        vcols.push(v.column(j).into_owned());
        values.push(sigma);
        if sigma > 1e-14 * scale && sigma > 0.0 {
            us.push(w.column(j) / re(sigma));
        }
    }
    // complete u over the null directions
    let mut e = 0;
    while us.len() < m {
        let mut x = CVector::zeros(n);
        x[e % n] = ONE;
        e += 1;
        for _ in 0..2 {
            for b in &us {
                let coeff = b.dotc(&x);
                x -= b * coeff;
            }
        }
        let norm = x.norm();
        if norm > 1e-6 {
            us.push(x / re(norm));
        }
    }
    Svd { u: from_columns(&us), singular_values: values, v: from_columns(&vcols) }
}

/// Singular values in descending order.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    svd(a).singular_values
}

/// Top singular triple (σ, u, v) with `a ≈ σ u v†`.
pub fn top_singular(a: &CMatrix) -> (f64, CVector, CVector) {
    let d = svd(a);
    (d.singular_values[0], d.u.column(0).into_owned(), d.v.column(0).into_owned())
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Vec<f64> {
    let h = (a + a.adjoint()) * re(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| x.total_cmp(y));
    ev
}

/// Schur form Q·T·Q† of a square matrix.
///
/// Normal matrices go through [`normal_diagonalize`]; nalgebra's unbounded Schur
/// iteration can cycle forever on exact signed-permutation products, so the general
/// iteration is bounded.
pub fn schur(a: &CMatrix) -> (CMatrix, CMatrix) {
    if let Some((v, d)) = normal_diagonalize(a) {
        return (v, CMatrix::from_diagonal(&CVector::from_vec(d)));
    }
    match a.clone().try_schur(f64::EPSILON, 10_000) {
        Some(s) => s.unpack(),
        None => panic!("Schur iteration did not converge for a {}×{} matrix", a.nrows(), a.ncols()),
    }
}

/// Unitary V and eigenvalues with A = V·diag(d)·V† for a normal matrix A.
///
/// Diagonalizes the Hermitian matrix Re(A) + ε·Im(A), whose eigenvalues Re λ + ε Im λ
/// separate distinct λ for generic ε; `None` when A is not normal or ε was unlucky for
/// every trial value.
pub fn normal_diagonalize(a: &CMatrix) -> Option<(CMatrix, Vec<Complex64>)> {
    if !a.is_square() {
        return None;
    }
    let scale = a.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let ad = a.adjoint();
    if max_abs_diff(&(a * &ad), &(&ad * a)) > 1e-10 * scale * scale {
        return None;
    }
    let herm = (a + &ad) * re(0.5);
    let anti = (a - &ad) * c(0.0, -0.5);
    for eps in [0.413_7, 1.739_1, -0.271_9] {
        let h = &herm + &anti * re(eps);
        let eig = h.symmetric_eigen();
        let v = eig.eigenvectors;
        let d = v.adjoint() * a * &v;
        let off = (0..d.nrows())
            .flat_map(|i| (0..d.ncols()).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|ij| d[ij].norm())
            .fold(0.0, f64::max);
        if off < 1e-10 * scale {
            let vals = d.diagonal().iter().copied().collect();
            return Some((v, vals));
        }
    }
    None
}

/// Eigenvalues of a general complex square matrix via the Schur form.
pub fn eigenvalues(a: &CMatrix) -> Vec<Complex64> {
    let (_, t) = schur(a);
    t.diagonal().iter().copied().collect()
}

/// Phase of a unit complex number in (−π, π].
pub fn phase(z: Complex64) -> f64 {
    let t = z.arg();
    if t <= -std::f64::consts::PI + 1e-9 {
        std::f64::consts::PI
    } else {
        t
    }
}

/// Eigenspace of a normal matrix for one cluster of equal eigenvalues.
#[derive(Debug, Clone)]
pub struct Eigenspace {
    pub value: Complex64,
    /// Orthogonal projector onto the eigenspace.
    pub projector: CMatrix,
    pub multiplicity: usize,
}

/// Eigenspaces of a normal matrix, sorted by eigenphase ascending in (−π, π].
///
/// The projectors do not depend on the Schur vectors the solver picked.
pub fn normal_eigenspaces(a: &CMatrix, cluster_tol: f64) -> Vec<Eigenspace> {
    let n = a.nrows();
    let (q, t) = schur(a);
    let values: Vec<Complex64> = t.diagonal().iter().copied().collect();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        match clusters
            .iter_mut()
            .find(|cl| (values[cl[0]] - v).norm() < cluster_tol)
        {
            Some(cl) => cl.push(i),
            None => clusters.push(vec![i]),
        }
    }
    let mut spaces: Vec<Eigenspace> = clusters
        .into_iter()
        .map(|cl| {
            let value = cl.iter().map(|&i| values[i]).sum::<Complex64>() / re(cl.len() as f64);
            let mut projector = CMatrix::zeros(n, n);
            for &i in &cl {
                let col = q.column(i);
                projector += &col * col.adjoint();
            }
            Eigenspace {
                value,
                projector,
                multiplicity: cl.len(),
            }
        })
        .collect();
    spaces.sort_by(|x, y| phase(x.value).total_cmp(&phase(y.value)));
    spaces
}

/// Orthonormal basis of the range of a projector: Gram-Schmidt on its columns in order.
pub fn projector_basis(p: &CMatrix, rank: usize, tol: f64) -> Vec<CVector> {
    let mut basis: Vec<CVector> = Vec::with_capacity(rank);
    for k in 0..p.ncols() {
        if basis.len() == rank {
            break;
        }
        let mut x: CVector = p.column(k).into_owned();
        for b in &basis {
            let coeff = b.dotc(&x);
            x -= b * coeff;
        }
        let norm = x.norm();
        if norm > tol {
            basis.push(x / re(norm));
        }
    }
    basis
}

/// Orthonormal eigenbasis of a normal matrix, eigenphases ascending.
pub fn normal_eigenbasis(a: &CMatrix) -> (CMatrix, Vec<Complex64>) {
    let spaces = normal_eigenspaces(a, 1e-6);
    let mut cols = Vec::with_capacity(a.nrows());
    let mut vals = Vec::with_capacity(a.nrows());
    for sp in &spaces {
        for v in projector_basis(&sp.projector, sp.multiplicity, 1e-6) {
            cols.push(v);
            vals.push(sp.value);
        }
    }
    (from_columns(&cols), vals)
}

/// Multiplies a vector by the phase making its first non-negligible coordinate real positive.
pub fn fix_phase(v: &CVector, tol: f64) -> CVector {
    match v.iter().find(|z| z.norm() > tol) {
        Some(z) => v * (z.conj() / z.norm()),
        None => v.clone(),
    }
}

/// Integer power by repeated squaring.
pub fn mat_pow(a: &CMatrix, mut k: u32) -> CMatrix {
    let mut base = a.clone();
    let mut acc = identity(a.nrows());
    while k > 0 {
        if k & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

pub fn to_real(a: &CMatrix) -> RMatrix {
    a.map(|z| z.re)
}

pub fn from_real(a: &RMatrix) -> CMatrix {
    a.map(re)
}

/// Row-major `[re, im]` pairs for serialization.
pub fn to_pairs(a: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| [a[(i, j)].re, a[(i, j)].im]).collect())
        .collect()
}

pub fn vec_to_pairs(v: &CVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

pub fn real_to_rows(a: &RMatrix) -> Vec<Vec<f64>> {
    (0..a.nrows())
        .map(|i| (0..a.ncols()).map(|j| a[(i, j)]).collect())
        .collect()
}

/// Serde adapter: a complex matrix as row-major `[re, im]` pairs with float noise removed.
pub fn serialize_matrix<S: serde::Serializer>(m: &CMatrix, s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    to_pairs(&cleanup(m, 1e-13)).serialize(s)
}

pub fn serialize_matrices<S: serde::Serializer>(ms: &[CMatrix], s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    ms.iter()
        .map(|m| to_pairs(&cleanup(m, 1e-13)))
        .collect::<Vec<_>>()
        .serialize(s)
}

/// Serde adapter: a real matrix as row-major rows with float noise removed.
pub fn serialize_real_matrix<S: serde::Serializer>(m: &RMatrix, s: S) -> Result<S::Ok, S::Error> {
    use serde::Serialize;
    real_to_rows(&m.map(|x| if x.abs() < 1e-13 { 0.0 } else { x })).serialize(s)
}
