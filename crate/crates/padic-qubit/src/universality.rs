//! Universality checks for gate sets: eigenphase certificates, Lie generators of
//! one-parameter closures, commutator closure, finite closure detection, Givens
//! decomposition and the real encoding of unitaries.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::closure::{bfs_closure, grid_key, KeyMode, GRID};
use crate::gates::constants;
use crate::linalg::{
    self, from_real, identity, kron, normal_eigenspaces, phase, serialize_real_matrix, to_pairs,
    CMatrix, CVector, RMatrix, I, TAU,
};
use crate::monomial;

/// Eigenvalue search bound for finite orders.
pub const KMAX: u64 = 10_000;
/// Largest denominator accepted for a rational cosine.
pub const NIVEN_MAX_DEN: i64 = 64;
/// Default element cap for closure enumeration.
pub const DEFAULT_CAP: usize = 200_000;
/// Singular value threshold for linear independence of Lie elements.
pub const RANK_TOL: f64 = 1e-8;
/// Environment variable naming the closure cache directory.
pub const CACHE_ENV: &str = "PADIC_QUBIT_CACHE";

#[derive(Debug, thiserror::Error)]
pub enum UniversalityError {
    #[error("expected a square matrix, got {0}×{1}")]
    NotSquare(usize, usize),
    #[error("matrix is not orthogonal (defect {0:e})")]
    NotOrthogonal(f64),
    #[error("matrix has determinant {0}, expected +1")]
    NotSpecial(f64),
    #[error("no certified irrational eigenphase")]
    NoIrrationalPhase,
    #[error("eigenphase {0} is neither of finite order nor certified irrational")]
    UnknownPhase(f64),
    #[error("more than one independent irrational eigenphase")]
    MultipleIrrationalPhases,
    #[error("gate set is empty")]
    EmptyGateSet,
    #[error("generators have mismatched dimensions")]
    DimensionMismatch,
    #[error("step {step} failed: {reason}")]
    Step { step: &'static str, reason: String },
    #[error("closure cache: {0}")]
    Cache(String),
}

// ---------------------------------------------------------------------------
// real encoding

/// Real 2m×2m image of an m×m unitary: entry U_ij becomes [[Re, −Im], [Im, Re]].
pub fn real_encode(u: &CMatrix) -> RMatrix {
    let (n, m) = u.shape();
    let mut o = RMatrix::zeros(2 * n, 2 * m);
    for i in 0..n {
        for j in 0..m {
            let z = u[(i, j)];
            o[(2 * i, 2 * j)] = z.re;
            o[(2 * i, 2 * j + 1)] = -z.im;
            o[(2 * i + 1, 2 * j)] = z.im;
            o[(2 * i + 1, 2 * j + 1)] = z.re;
        }
    }
    o
}

/// Real image of a state: ψ_j becomes (Re ψ_j, Im ψ_j) at coordinates (2j, 2j+1).
pub fn encode_state(psi: &CVector) -> nalgebra::DVector<f64> {
    nalgebra::DVector::from_fn(2 * psi.len(), |k, _| {
        let z = psi[k / 2];
        if k % 2 == 0 { z.re } else { z.im }
    })
}

// ---------------------------------------------------------------------------
// eigenphases

/// Proof that an eigenphase is an irrational multiple of π: its cosine is a rational
/// outside {0, ±1/2, ±1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NivenCertificate {
    pub phase: f64,
    pub cos_num: i64,
    pub cos_den: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhaseOrder {
    FiniteOrder { order: u64 },
    Irrational(NivenCertificate),
    Unknown,
}

/// Best rational approximation with denominator at most `max_den`, from continued-fraction convergents.
pub fn best_rational(x: f64, max_den: i64) -> (i64, i64) {
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let (p2, q2) = (a as i64 * p1 + p0, a as i64 * q1 + q0);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a;
        if frac.abs() < 1e-12 {
            break;
        }
        r = 1.0 / frac;
    }
    (p1, q1)
}

/// Finite order of λ up to `kmax`, or a Niven certificate of irrationality.
pub fn eigenphase_order(lambda: Complex64, kmax: u64) -> PhaseOrder {
    if (lambda.norm() - 1.0).abs() > TAU {
        return PhaseOrder::Unknown;
    }
    let theta = phase(lambda);
    let turns = theta / (2.0 * PI);
    for k in 1..=kmax {
        let x = k as f64 * turns;
        if (x - x.round()).abs() * 2.0 * PI < TAU {
            return PhaseOrder::FiniteOrder { order: k };
        }
    }
    let c = theta.cos();
    let (num, den) = best_rational(c, NIVEN_MAX_DEN);
    let exceptional = matches!((num, den), (0, 1) | (1, 2) | (-1, 2) | (1, 1) | (-1, 1));
    if (c - num as f64 / den as f64).abs() < TAU && !exceptional {
        PhaseOrder::Irrational(NivenCertificate { phase: theta, cos_num: num, cos_den: den })
    } else {
        PhaseOrder::Unknown
    }
}

// ---------------------------------------------------------------------------
// Lie elements

/// A real antisymmetric matrix with the expression that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct LieElement {
    pub expr: String,
    #[serde(serialize_with = "serialize_real_matrix")]
    pub matrix: RMatrix,
}

impl LieElement {
    pub fn new(expr: impl Into<String>, matrix: RMatrix) -> Self {
        LieElement { expr: expr.into(), matrix }
    }

    pub fn antisymmetry_defect(&self) -> f64 {
        (&self.matrix + self.matrix.transpose()).amax()
    }

    pub fn bracket(&self, other: &LieElement) -> LieElement {
        LieElement {
            expr: format!("[{},{}]", self.expr, other.expr),
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
        }
    }

    /// exp(t·A), through the eigendecomposition of the Hermitian matrix iA.
    pub fn exp(&self, t: f64) -> RMatrix {
        let h = from_real(&self.matrix) * I;
        let eig = h.symmetric_eigen();
        let d = CVector::from_iterator(
            eig.eigenvalues.len(),
            eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -t * l)),
        );
        let v = &eig.eigenvectors;
        let e = v * CMatrix::from_diagonal(&d) * v.adjoint();
        e.map(|z| z.re)
    }
}

/// Orthogonality defect ‖RᵀR − I‖_max and determinant of a real square matrix.
fn check_rotation(r: &RMatrix) -> Result<(), UniversalityError> {
    let (n, m) = r.shape();
    if n != m {
        return Err(UniversalityError::NotSquare(n, m));
    }
    let defect = (r.transpose() * r - RMatrix::identity(n, n)).amax();
    if defect > TAU {
        return Err(UniversalityError::NotOrthogonal(defect));
    }
    let det = r.determinant();
    if (det - 1.0).abs() > 1e-6 {
        return Err(UniversalityError::NotSpecial(det));
    }
    Ok(())
}

/// Generator A of the closure of ⟨R⟩ together with the certified angle.
#[derive(Debug, Clone, Serialize)]
pub struct LieGenerator {
    pub element: LieElement,
    pub theta: f64,
    pub certificate: NivenCertificate,
    /// ‖exp(θA) − R‖_max when every other eigenvalue of R is 1.
    pub exp_defect: Option<f64>,
}

/// A = i(P_θ − P_{−θ}) for the unique certified irrational pair e^{±iθ} of R, with θ
/// the first of the pair in ascending eigenphase order.
pub fn lie_generator(expr: &str, r: &RMatrix) -> Result<LieGenerator, UniversalityError> {
    check_rotation(r)?;
    let spaces = normal_eigenspaces(&from_real(r), 1e-6);
    let mut irrational = Vec::new();
    let mut rest_trivial = true;
    for sp in &spaces {
        match eigenphase_order(sp.value, KMAX) {
            PhaseOrder::Irrational(cert) => irrational.push((cert, sp)),
            PhaseOrder::FiniteOrder { order } => rest_trivial &= order == 1,
            PhaseOrder::Unknown => return Err(UniversalityError::UnknownPhase(phase(sp.value))),
        }
    }
    let Some(&(cert, first)) = irrational.first() else {
        return Err(UniversalityError::NoIrrationalPhase);
    };
    let theta = cert.phase;
    if irrational.iter().any(|(c, _)| (c.phase.abs() - theta.abs()).abs() > 1e-6) {
        return Err(UniversalityError::MultipleIrrationalPhases);
    }
    let partner = irrational
        .iter()
        .find(|(c, _)| (c.phase + theta).abs() < 1e-6)
        .map(|(_, sp)| *sp)
        .ok_or(UniversalityError::MultipleIrrationalPhases)?;
    let a = (&first.projector - &partner.projector) * I;
    let element = LieElement::new(expr, a.map(|z| z.re));
    let exp_defect = rest_trivial.then(|| (element.exp(theta) - r).amax());
    Ok(LieGenerator { element, theta, certificate: cert, exp_defect })
}

/// Incremental linear span of matrices, rank decided by singular values.
#[derive(Debug, Default, Clone)]
struct Span {
    rows: Vec<Vec<f64>>,
}

impl Span {
    fn rank_with(&self, extra: Option<&[f64]>) -> usize {
        let rows: Vec<&[f64]> = self.rows.iter().map(|r| r.as_slice()).chain(extra).collect();
        if rows.is_empty() {
            return 0;
        }
        let m = CMatrix::from_fn(rows.len(), rows[0].len(), |i, j| linalg::re(rows[i][j]));
        linalg::singular_values(&m).iter().filter(|&&s| s > RANK_TOL).count()
    }

    /// Adds the normalized matrix when it is independent of the span.
    fn try_add(&mut self, m: &RMatrix) -> bool {
        let norm = m.norm();
        if norm < RANK_TOL {
            return false;
        }
        let v: Vec<f64> = m.iter().map(|x| x / norm).collect();
        if self.rank_with(Some(&v)) > self.rows.len() {
            self.rows.push(v);
            true
        } else {
            false
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorClosure {
    pub basis: Vec<LieElement>,
    pub dim: usize,
    pub ambient_dim: usize,
}

/// Adjoins brackets [X_j, X_k], j < k, of the growing basis until it spans `ambient_dim`
/// dimensions or stops growing.
pub fn commutator_closure(seeds: &[LieElement], ambient_dim: usize) -> CommutatorClosure {
    let mut span = Span::default();
    let mut basis: Vec<LieElement> = Vec::new();
    for s in seeds {
        if basis.len() < ambient_dim && span.try_add(&s.matrix) {
            basis.push(s.clone());
        }
    }
    let mut k = 0;
    while k < basis.len() && basis.len() < ambient_dim {
        for j in 0..k {
            let b = basis[j].bracket(&basis[k]);
            if span.try_add(&b.matrix) {
                basis.push(b);
                if basis.len() == ambient_dim {
                    break;
                }
            }
        }
        k += 1;
    }
    let dim = basis.len();
    CommutatorClosure { basis, dim, ambient_dim }
}

/// Lie generators from every distinct real word of length ≤ `max_len` that has a
/// certified irrational eigenphase, followed by their commutator closure.
pub fn lie_closure_from_words(gens: &[CMatrix], max_len: usize) -> (Vec<LieGenerator>, CommutatorClosure) {
    let n = gens.first().map_or(0, |g| g.nrows());
    let ambient = n * n.saturating_sub(1) / 2;
    let mut found = Vec::new();
    let mut span = Span::default();
    let mut seen = crate::closure::MatrixSet::new(KeyMode::Exact);
    let mut layer = vec![identity(n)];
    seen.insert(&layer[0]);
    for len in 1..=max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in gens {
                let y = w * g;
                if !seen.insert(&y) {
                    continue;
                }
                if y.iter().all(|z| z.im.abs() < TAU) {
                    let r = y.map(|z| z.re);
                    if let Ok(lg) = lie_generator(&format!("W{}_{}", len, found.len()), &r) {
                        if span.try_add(&lg.element.matrix) {
                            found.push(lg);
                        }
                    }
                }
                next.push(y);
            }
        }
        layer = next;
    }
    let seeds: Vec<LieElement> = found.iter().map(|g| g.element.clone()).collect();
    let closure = commutator_closure(&seeds, ambient);
    (found, closure)
}

// ---------------------------------------------------------------------------
// finite closure

/// Generator with a display name.
#[derive(Debug, Clone, Serialize)]
pub struct NamedMatrix {
    pub name: String,
    #[serde(serialize_with = "linalg::serialize_matrix")]
    pub matrix: CMatrix,
}

impl NamedMatrix {
    pub fn new(name: impl Into<String>, matrix: CMatrix) -> Self {
        NamedMatrix { name: name.into(), matrix }
    }
}

/// An element of infinite order found during enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// Generator names, multiplied left to right.
    pub word: Vec<String>,
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub eigenvalue: [f64; 2],
    #[serde(flatten)]
    pub niven: NivenCertificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureMethod {
    Bfs,
    MonomialStabilizerChain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosureVerdict {
    Finite { order: u64, method: ClosureMethod },
    ExceedsCap { cap: usize, certificate: Option<Certificate> },
}

impl ClosureVerdict {
    pub fn finite_order(&self) -> Option<u64> {
        match self {
            ClosureVerdict::Finite { order, .. } => Some(*order),
            ClosureVerdict::ExceedsCap { .. } => None,
        }
    }
}

fn check_generators(gens: &[NamedMatrix]) -> Result<usize, UniversalityError> {
    let d = gens.first().ok_or(UniversalityError::EmptyGateSet)?.matrix.nrows();
    if gens.iter().any(|g| g.matrix.shape() != (d, d)) {
        return Err(UniversalityError::DimensionMismatch);
    }
    Ok(d)
}

/// Enumerates products on a 1e−6 grid; `Finite` if the set closes before `cap` elements,
/// otherwise `ExceedsCap` with the first enumerated element that has a certified
/// irrational eigenphase.
pub fn finite_closure(gens: &[NamedMatrix], cap: usize) -> Result<ClosureVerdict, UniversalityError> {
    check_generators(gens)?;
    let mats: Vec<CMatrix> = gens.iter().map(|g| g.matrix.clone()).collect();
    let run = bfs_closure(&mats, cap, KeyMode::Exact);
    if run.complete {
        return Ok(ClosureVerdict::Finite { order: run.elements.len() as u64, method: ClosureMethod::Bfs });
    }
    let certificate = run.elements.iter().enumerate().find_map(|(i, m)| {
        linalg::eigenvalues(m).into_iter().find_map(|l| match eigenphase_order(l, KMAX) {
            PhaseOrder::Irrational(niven) => Some(Certificate {
                word: run.word(i).into_iter().map(|g| gens[g].name.clone()).collect(),
                matrix: to_pairs(&linalg::cleanup(m, 1e-13)),
                eigenvalue: [l.re, l.im],
                niven,
            }),
            _ => None,
        })
    });
    Ok(ClosureVerdict::ExceedsCap { cap, certificate })
}

/// Closure verdict with monomial generator sets over roots of unity handled on
/// compact (permutation, phase) states: enumeration under `cap`, then an exact
/// stabilizer chain of their permutation action. Other sets go through [`finite_closure`].
pub fn closure_verdict(gens: &[NamedMatrix], cap: usize) -> Result<ClosureVerdict, UniversalityError> {
    check_generators(gens)?;
    let mats: Vec<CMatrix> = gens.iter().map(|g| g.matrix.clone()).collect();
    if monomial::as_monomials(&mats).is_none() {
        return finite_closure(gens, cap);
    }
    if let Some(order) = monomial::monomial_bfs_order(&mats, cap) {
        return Ok(ClosureVerdict::Finite { order: order as u64, method: ClosureMethod::Bfs });
    }
    let order = monomial::monomial_group_order(&mats).expect("monomial generators");
    Ok(ClosureVerdict::Finite { order: order as u64, method: ClosureMethod::MonomialStabilizerChain })
}

/// Cache key: sha256 over the cap and the grid keys of the generators.
pub fn cache_key(gens: &[NamedMatrix], cap: usize) -> String {
    let mut h = Sha256::new();
    h.update(b"closure-v1");
    h.update((cap as u64).to_le_bytes());
    for g in gens {
        h.update(g.name.as_bytes());
        h.update((g.matrix.nrows() as u64).to_le_bytes());
        for k in grid_key(&g.matrix, KeyMode::Exact, GRID) {
            h.update(k.to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

/// Cache directory from [`CACHE_ENV`].
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// [`closure_verdict`] through a directory of JSON files keyed by [`cache_key`].
/// Returns the verdict and whether it came from the cache.
///
/// Not safe to call concurrently on the same directory.
pub fn cached_closure_verdict(
    gens: &[NamedMatrix],
    cap: usize,
    cache_dir: Option<&Path>,
) -> Result<(ClosureVerdict, bool), UniversalityError> {
    let Some(dir) = cache_dir else {
        return Ok((closure_verdict(gens, cap)?, false));
    };
    let path = dir.join(format!("{}.json", cache_key(gens, cap)));
    if let Ok(bytes) = std::fs::read(&path) {
        if let Ok(v) = serde_json::from_slice::<ClosureVerdict>(&bytes) {
            return Ok((v, true));
        }
    }
    let v = closure_verdict(gens, cap)?;
    let cache_err = |e: std::io::Error| UniversalityError::Cache(format!("{}: {e}", path.display()));
    std::fs::create_dir_all(dir).map_err(cache_err)?;
    let json = serde_json::to_vec_pretty(&v).map_err(|e| UniversalityError::Cache(e.to_string()))?;
    std::fs::write(&path, json).map_err(cache_err)?;
    Ok((v, false))
}

/// One-qubit gates on every position and two-qubit gates on adjacent pairs of `n` qubits.
pub fn embed_gate_set(one: &[NamedMatrix], two: &[NamedMatrix], n: usize) -> Vec<NamedMatrix> {
    let id = |k: usize| identity(1 << k);
    let mut out = Vec::new();
    for g in one {
        for pos in 0..n {
            let m = kron(&kron(&id(pos), &g.matrix), &id(n - pos - 1));
            out.push(NamedMatrix::new(format!("{}@{}", g.name, pos), m));
        }
    }
    if n >= 2 {
        for g in two {
            for pos in 0..n - 1 {
                let m = kron(&kron(&id(pos), &g.matrix), &id(n - pos - 2));
                out.push(NamedMatrix::new(format!("{}@{},{}", g.name, pos, pos + 1), m));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Givens rotations

/// Plane rotation G_{jk}(θ), 1-based indices j < k.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Givens {
    pub j: usize,
    pub k: usize,
    pub theta: f64,
}

impl Givens {
    pub fn matrix(&self, m: usize) -> RMatrix {
        let mut g = RMatrix::identity(m, m);
        let (j, k) = (self.j - 1, self.k - 1);
        let (s, c) = self.theta.sin_cos();
        g[(j, j)] = c;
        g[(j, k)] = -s;
        g[(k, j)] = s;
        g[(k, k)] = c;
        g
    }
}

/// R = G_1·G_2⋯G_N with N = m(m−1)/2, zeroing each column below the diagonal in turn.
pub fn givens_decompose(r: &RMatrix) -> Result<Vec<Givens>, UniversalityError> {
    check_rotation(r)?;
    let m = r.nrows();
    let mut a = r.clone();
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for c in 0..m {
        for row in (c + 1..m).rev() {
            let theta = a[(row, c)].atan2(a[(c, c)]);
            let g = Givens { j: c + 1, k: row + 1, theta };
            a = g.matrix(m).transpose() * a;
            out.push(g);
        }
    }
    Ok(out)
}

pub fn givens_recompose(m: usize, factors: &[Givens]) -> RMatrix {
    factors.iter().fold(RMatrix::identity(m, m), |acc, g| acc * g.matrix(m))
}

// ---------------------------------------------------------------------------
// gate sets and the universality report

/// A's printed generator of the closure of ⟨R_1⟩.
pub fn printed_a1() -> RMatrix {
    let r3 = 3f64.sqrt();
    RMatrix::from_row_slice(4, 4, &[0.0, -1.0, -1.0, r3, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -r3, 0.0, 0.0, 0.0])
        / 5f64.sqrt()
}

/// The printed generator of the closure of ⟨R_2⟩.
pub fn printed_a2() -> RMatrix {
    let r3 = 3f64.sqrt();
    RMatrix::from_row_slice(4, 4, &[0.0, -1.0, 1.0, 0.0, 1.0, 0.0, -r3, 0.0, -1.0, r3, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
        / 5f64.sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedSet {
    /// {X, S, CZ~}.
    G1p3,
    /// {A, B, U_4, U_10}.
    Abu,
    /// {−X, Y, M}.
    B40,
}

impl NamedSet {
    pub const ALL: [NamedSet; 3] = [NamedSet::G1p3, NamedSet::Abu, NamedSet::B40];

    pub fn name(self) -> &'static str {
        match self {
            NamedSet::G1p3 => "g1p3",
            NamedSet::Abu => "abu",
            NamedSet::B40 => "b40",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }

    /// One-qubit and two-qubit gates.
    pub fn gates(self) -> (Vec<NamedMatrix>, Vec<NamedMatrix>) {
        use constants::*;
        match self {
            NamedSet::G1p3 => (
                vec![NamedMatrix::new("X", gate_x()), NamedMatrix::new("S", gate_s())],
                vec![NamedMatrix::new("CZ~", gate_cz_tilde())],
            ),
            NamedSet::Abu => (
                vec![NamedMatrix::new("A", gate_a()), NamedMatrix::new("B", gate_b())],
                vec![NamedMatrix::new("U4", u4()), NamedMatrix::new("U10", u10())],
            ),
            NamedSet::B40 => (
                vec![NamedMatrix::new("-X", -gate_x()), NamedMatrix::new("Y", gate_y_b40())],
                vec![NamedMatrix::new("M", gate_m_b40())],
            ),
        }
    }

    /// Qubit counts at which closures are reported.
    pub fn closure_qubits(self) -> std::ops::RangeInclusive<usize> {
        match self {
            NamedSet::G1p3 => 1..=2,
            NamedSet::Abu | NamedSet::B40 => 1..=4,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Infinite-order word used as a seed of the Lie algebra.
#[derive(Debug, Clone, Serialize)]
pub struct SeedReport {
    pub label: String,
    pub word: String,
    #[serde(serialize_with = "serialize_real_matrix")]
    pub matrix: RMatrix,
    pub eigenphases: Vec<f64>,
    pub generator: LieGenerator,
    /// Entrywise distance to the printed generator, minimized over the overall sign.
    pub printed_defect: Option<f64>,
    pub printed_sign: Option<i8>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureRecord {
    pub qubits: usize,
    pub dim: usize,
    pub generators: Vec<String>,
    pub verdict: ClosureVerdict,
    pub cached: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GivensReport {
    pub source: String,
    pub m: usize,
    pub factors: Vec<Givens>,
    pub recompose_defect: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct UniversalityReport {
    pub set: String,
    pub steps: Vec<Step>,
    pub seeds: Vec<SeedReport>,
    pub lie_basis: Vec<LieElement>,
    pub closure_dim: usize,
    pub ambient_dim: usize,
    pub dense_in_so4: bool,
    pub dense_in_o4: bool,
    pub det_minus_one: Vec<String>,
    pub verdicts: Vec<ClosureRecord>,
    pub givens: Option<GivensReport>,
    /// The argument from SO(4) density to universality, one claim per line.
    pub chain: Vec<String>,
    pub universal: bool,
}

#[derive(Debug, Clone)]
pub struct UniversalityOptions {
    pub cap: usize,
    pub cache_dir: Option<PathBuf>,
    /// Longest word tried when no explicit seeds are given.
    pub word_len: usize,
}

impl Default for UniversalityOptions {
    fn default() -> Self {
        UniversalityOptions { cap: DEFAULT_CAP, cache_dir: None, word_len: 6 }
    }
}

fn eigenphases(m: &CMatrix) -> Vec<f64> {
    let mut ph: Vec<f64> = linalg::eigenvalues(m).into_iter().map(phase).collect();
    ph.sort_by(f64::total_cmp);
    ph
}

fn signed_defect(a: &RMatrix, printed: &RMatrix) -> (f64, i8) {
    let plus = (a - printed).amax();
    let minus = (a + printed).amax();
    if plus <= minus { (plus, 1) } else { (minus, -1) }
}

fn seed(label: &str, word: &str, u: &CMatrix, printed: Option<RMatrix>) -> Result<SeedReport, UniversalityError> {
    let matrix = u.map(|z| z.re);
    let generator = lie_generator(label, &matrix)?;
    let (printed_defect, printed_sign) = match printed {
        Some(p) => {
            let (d, s) = signed_defect(&generator.element.matrix, &p);
            (Some(d), Some(s))
        }
        None => (None, None),
    };
    Ok(SeedReport {
        label: label.into(),
        word: word.into(),
        matrix,
        eigenphases: eigenphases(u),
        generator,
        printed_defect,
        printed_sign,
    })
}

fn step_err(step: &'static str, reason: impl Into<String>) -> UniversalityError {
    UniversalityError::Step { step, reason: reason.into() }
}

/// Runs the universality chain for one of the named gate sets.
pub fn verify_universality(set: NamedSet, opts: &UniversalityOptions) -> Result<UniversalityReport, UniversalityError> {
    let (one, two) = set.gates();
    match set {
        NamedSet::G1p3 => verify_g1p3(&one, &two, opts),
        _ => verify_gate_set(set.name(), &one, &two, set.closure_qubits(), opts),
    }
}

fn closure_records(
    one: &[NamedMatrix],
    two: &[NamedMatrix],
    qubits: std::ops::RangeInclusive<usize>,
    opts: &UniversalityOptions,
) -> Result<Vec<ClosureRecord>, UniversalityError> {
    qubits
        .map(|n| {
            let gens = embed_gate_set(one, two, n);
            let (verdict, cached) = cached_closure_verdict(&gens, opts.cap, opts.cache_dir.as_deref())?;
            Ok(ClosureRecord {
                qubits: n,
                dim: 1 << n,
                generators: gens.iter().map(|g| g.name.clone()).collect(),
                verdict,
                cached,
            })
        })
        .collect()
}

fn det_minus_one(gens: &[NamedMatrix]) -> Vec<String> {
    gens.iter()
        .filter(|g| (g.matrix.determinant() + linalg::ONE).norm() < 1e-9)
        .map(|g| g.name.clone())
        .collect()
}

fn verify_g1p3(one: &[NamedMatrix], two: &[NamedMatrix], opts: &UniversalityOptions) -> Result<UniversalityReport, UniversalityError> {
    let i2 = identity(2);
    let (s, cz) = (constants::gate_s(), constants::gate_cz_tilde());
    let mut steps = Vec::new();

    let w1 = kron(&s, &s) * &cz;
    let r1 = &w1 * &w1;
    let w2 = kron(&s, &i2) * &cz * kron(&i2, &s);
    let r2 = &w2 * &w2;
    let commutator = linalg::max_abs_diff(&(&r1 * &r2), &(&r2 * &r1));
    let real = |m: &CMatrix| m.iter().all(|z| z.im.abs() < TAU);
    if !real(&r1) || !real(&r2) || commutator < TAU {
        return Err(step_err("build_words", "R_1, R_2 must be real and non-commuting"));
    }
    steps.push(Step {
        name: "build_words",
        passed: true,
        detail: format!("R_1 = ((S⊗S)·CZ~)^2 and R_2 = ((S⊗I)·CZ~·(I⊗S))^2 in SO(4), ‖[R_1,R_2]‖_max = {commutator:.6}"),
    });

    let seeds = vec![
        seed("A1", "((S⊗S)·CZ~)^2", &r1, Some(printed_a1())).map_err(|e| step_err("certify_phases", e.to_string()))?,
        seed("A2", "((S⊗I)·CZ~·(I⊗S))^2", &r2, Some(printed_a2())).map_err(|e| step_err("certify_phases", e.to_string()))?,
    ];
    let certs: Vec<String> = seeds
        .iter()
        .map(|s| {
            let c = s.generator.certificate;
            format!("{} θ = {:.12}, cos θ = {}/{}", s.word, c.phase, c.cos_num, c.cos_den)
        })
        .collect();
    steps.push(Step { name: "certify_phases", passed: true, detail: certs.join("; ") });

    let worst = seeds.iter().filter_map(|s| s.printed_defect).fold(0.0, f64::max);
    if worst > TAU {
        return Err(step_err("lie_generators", format!("generators differ from the printed ones by {worst:e}")));
    }
    steps.push(Step {
        name: "lie_generators",
        passed: true,
        detail: format!(
            "A_1, A_2 match the printed matrices up to sign (signs {:?}), max defect {worst:.2e}",
            seeds.iter().map(|s| s.printed_sign.unwrap_or(0)).collect::<Vec<_>>()
        ),
    });

    let seed_elements: Vec<LieElement> = seeds.iter().map(|s| s.generator.element.clone()).collect();
    let closure = commutator_closure(&seed_elements, 6);
    if closure.dim != 6 {
        return Err(step_err("commutator_closure", format!("closure has dimension {}", closure.dim)));
    }
    steps.push(Step {
        name: "commutator_closure",
        passed: true,
        detail: format!(
            "basis {} spans so(4), dim 6: the closure of G_0 is SO(4)",
            closure.basis.iter().map(|b| b.expr.as_str()).collect::<Vec<_>>().join(", ")
        ),
    });

    let two_qubit = embed_gate_set(one, two, 2);
    let det_neg = det_minus_one(&two_qubit);
    if det_neg.is_empty() {
        return Err(step_err("determinant", "no generator with determinant −1"));
    }
    steps.push(Step {
        name: "determinant",
        passed: true,
        detail: format!("{} has determinant −1: the closure is O(4)", det_neg.join(", ")),
    });

    let verdicts = closure_records(one, two, NamedSet::G1p3.closure_qubits(), opts)?;
    let two_q = verdicts.iter().find(|v| v.qubits == 2).expect("two-qubit closure");
    if two_q.verdict.finite_order().is_some() {
        return Err(step_err("closure", "two-qubit closure is finite"));
    }
    steps.push(Step {
        name: "closure",
        passed: true,
        detail: format!(
            "two-qubit closure exceeds the cap {}{}",
            opts.cap,
            match &two_q.verdict {
                ClosureVerdict::ExceedsCap { certificate: Some(c), .. } =>
                    format!("; infinite-order word {} with cos θ = {}/{}", c.word.join("·"), c.niven.cos_num, c.niven.cos_den),
                _ => String::new(),
            }
        ),
    });

    let source = "real encoding of U_10".to_string();
    let target = real_encode(&constants::u10());
    let factors = givens_decompose(&target).map_err(|e| step_err("givens", e.to_string()))?;
    let recompose_defect = (givens_recompose(8, &factors) - &target).amax();
    if recompose_defect > TAU || factors.len() > 28 {
        return Err(step_err("givens", format!("recomposition defect {recompose_defect:e}")));
    }
    steps.push(Step {
        name: "givens",
        passed: true,
        detail: format!("{source} = product of {} Givens rotations, defect {recompose_defect:.2e}", factors.len()),
    });

    let chain = vec![
        "the closure of the two-qubit gate group contains SO(4) and a reflection, so it equals O(4)".into(),
        "SO(4)⊗I_2 and I_2⊗SO(4) act on overlapping coordinate planes of R^8 and together contain every Givens rotation needed to write an element of SO(8)".into(),
        "every element of SO(m) is a product of m(m−1)/2 Givens rotations".into(),
        "the real encoding embeds U(4) into SO(8) as a group homomorphism, so dense SO(8) approximates every two-qubit unitary".into(),
        "U(4) two-qubit unitaries with one-qubit gates are universal".into(),
    ];

    Ok(UniversalityReport {
        set: NamedSet::G1p3.name().into(),
        steps,
        seeds,
        lie_basis: closure.basis.clone(),
        closure_dim: closure.dim,
        ambient_dim: closure.ambient_dim,
        dense_in_so4: true,
        dense_in_o4: true,
        det_minus_one: det_neg,
        verdicts,
        givens: Some(GivensReport { source, m: 8, factors, recompose_defect }),
        chain,
        universal: true,
    })
}

/// The generic route: Lie generators from short words, then closures at each qubit count.
pub fn verify_gate_set(
    name: &str,
    one: &[NamedMatrix],
    two: &[NamedMatrix],
    qubits: std::ops::RangeInclusive<usize>,
    opts: &UniversalityOptions,
) -> Result<UniversalityReport, UniversalityError> {
    if one.is_empty() && two.is_empty() {
        return Err(UniversalityError::EmptyGateSet);
    }
    let gens = embed_gate_set(one, two, 2);
    let mats: Vec<CMatrix> = gens.iter().map(|g| g.matrix.clone()).collect();
    let (found, closure) = lie_closure_from_words(&mats, opts.word_len);
    let mut steps = vec![Step {
        name: "word_search",
        passed: true,
        detail: format!(
            "{} real words of length ≤ {} with certified irrational eigenphases",
            found.len(),
            opts.word_len
        ),
    }];
    let dense = closure.dim == closure.ambient_dim && closure.ambient_dim > 0;
    steps.push(Step {
        name: "commutator_closure",
        passed: dense,
        detail: format!("closure dimension {} of {}", closure.dim, closure.ambient_dim),
    });
    let verdicts = closure_records(one, two, qubits, opts)?;
    let all_finite = !verdicts.is_empty() && verdicts.iter().all(|v| v.verdict.finite_order().is_some());
    steps.push(Step {
        name: "closure",
        passed: !all_finite,
        detail: verdicts
            .iter()
            .map(|v| match &v.verdict {
                ClosureVerdict::Finite { order, .. } => format!("dim {}: finite of order {order}", v.dim),
                ClosureVerdict::ExceedsCap { cap, .. } => format!("dim {}: exceeds cap {cap}", v.dim),
            })
            .collect::<Vec<_>>()
            .join("; "),
    });
    let det_neg = det_minus_one(&gens);
    let chain = if all_finite {
        vec!["every closure is a finite group, so the set is not universal by this route".into()]
    } else {
        Vec::new()
    };
    Ok(UniversalityReport {
        set: name.into(),
        steps,
        seeds: Vec::new(),
        lie_basis: closure.basis,
        closure_dim: closure.dim,
        ambient_dim: closure.ambient_dim,
        dense_in_so4: dense,
        dense_in_o4: dense && !det_neg.is_empty(),
        det_minus_one: det_neg,
        verdicts,
        givens: None,
        chain,
        universal: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, exp_i_pi, from_rows, ONE, ZERO};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn theta3() -> f64 {
        (15f64.sqrt() / 7.0).atan() - PI
    }

    #[test]
    fn real_encode_examples() {
        assert_eq!(real_encode(&identity(3)), RMatrix::identity(6, 6));
        let u = from_rows(2, 2, &[I, ZERO, ZERO, ONE]);
        let o = real_encode(&u);
        assert_eq!(o.view((0, 0), (2, 2)), RMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]));
        assert_eq!(o.view((2, 2), (2, 2)), RMatrix::identity(2, 2));
        let psi = CVector::from_column_slice(&[c(0.6, 0.0), c(0.0, 0.8)]);
        let lhs = encode_state(&(&u * &psi));
        let rhs = &o * encode_state(&psi);
        assert!((lhs - rhs).amax() < 1e-15);
    }

    #[test]
    fn phase_orders() {
        assert_eq!(eigenphase_order(ONE, KMAX), PhaseOrder::FiniteOrder { order: 1 });
        assert_eq!(eigenphase_order(exp_i_pi(2.0 / 3.0), KMAX), PhaseOrder::FiniteOrder { order: 3 });
        assert_eq!(eigenphase_order(exp_i_pi(-1.0), KMAX), PhaseOrder::FiniteOrder { order: 2 });
        match eigenphase_order(Complex64::from_polar(1.0, theta3()), KMAX) {
            PhaseOrder::Irrational(cert) => assert_eq!((cert.cos_num, cert.cos_den), (-7, 8)),
            other => panic!("{other:?}"),
        }
        assert_eq!(eigenphase_order(Complex64::from_polar(1.0, 1.0), KMAX), PhaseOrder::Unknown);
        assert_eq!(eigenphase_order(c(2.0, 0.0), KMAX), PhaseOrder::Unknown);
    }

    #[test]
    fn best_rationals() {
        assert_eq!(best_rational(-0.875, 64), (-7, 8));
        assert_eq!(best_rational(1.0 / 3.0, 64), (1, 3));
        assert_eq!(best_rational(PI, 10), (22, 7));
        assert_eq!(best_rational(0.0, 64), (0, 1));
    }

    fn g1p3_words() -> (RMatrix, RMatrix) {
        let (s, cz, i2) = (constants::gate_s(), constants::gate_cz_tilde(), identity(2));
        let w1 = kron(&s, &s) * &cz;
        let w2 = kron(&s, &i2) * &cz * kron(&i2, &s);
        ((&w1 * &w1).map(|z| z.re), (&w2 * &w2).map(|z| z.re))
    }

    #[test]
    fn printed_generators() {
        let (r1, r2) = g1p3_words();
        let a1 = lie_generator("A1", &r1).unwrap();
        let a2 = lie_generator("A2", &r2).unwrap();
        assert!((a1.theta - theta3()).abs() < 1e-9);
        assert!((a2.theta - theta3()).abs() < 1e-9);
        assert!(signed_defect(&a1.element.matrix, &printed_a1()).0 < 1e-9);
        assert!(signed_defect(&a2.element.matrix, &printed_a2()).0 < 1e-9);
        assert!(a1.exp_defect.unwrap() < 1e-9 && a2.exp_defect.unwrap() < 1e-9);
        assert!(a1.element.antisymmetry_defect() < 1e-12);
    }

    #[test]
    fn generator_orbit_matches_powers() {
        // R^k = exp(kθA); the orbit point exp(tA) with t ≡ kθ mod 2π is the same matrix
        let (r1, _) = g1p3_words();
        let g = lie_generator("A1", &r1).unwrap();
        let k = 977u32;
        let t = (k as f64 * g.theta).rem_euclid(2.0 * PI);
        let rk = linalg::mat_pow(&from_real(&r1), k).map(|z| z.re);
        assert!((g.element.exp(t) - rk).amax() < 1e-9);
        let o = g.element.exp(0.731);
        assert!((o.transpose() * &o - RMatrix::identity(4, 4)).amax() < 1e-12);
        assert!((o.determinant() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lie_generator_rejections() {
        assert!(matches!(lie_generator("I", &RMatrix::identity(4, 4)), Err(UniversalityError::NoIrrationalPhase)));
        let flip = RMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, 1.0]));
        assert!(matches!(lie_generator("F", &flip), Err(UniversalityError::NotSpecial(_))));
        let bad = RMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert!(matches!(lie_generator("B", &bad), Err(UniversalityError::NotOrthogonal(_))));
        // two rotations with different irrational angles
        let (c1, s1) = (-7.0 / 8.0, (1.0f64 - 49.0 / 64.0).sqrt());
        let (c2, s2) = (1.0 / 3.0, (1.0f64 - 1.0 / 9.0).sqrt());
        let r = RMatrix::from_row_slice(4, 4, &[c1, -s1, 0.0, 0.0, s1, c1, 0.0, 0.0, 0.0, 0.0, c2, -s2, 0.0, 0.0, s2, c2]);
        assert!(matches!(lie_generator("R", &r), Err(UniversalityError::MultipleIrrationalPhases)));
    }

    fn so3_in_so4() -> Vec<LieElement> {
        let e = |i: usize, j: usize| {
            let mut m = RMatrix::zeros(4, 4);
            m[(i, j)] = 1.0;
            m[(j, i)] = -1.0;
            LieElement::new(format!("E{i}{j}"), m)
        };
        vec![e(0, 1), e(1, 2)]
    }

    #[test]
    fn commutator_closures() {
        let (r1, r2) = g1p3_words();
        let a1 = lie_generator("A1", &r1).unwrap().element;
        let a2 = lie_generator("A2", &r2).unwrap().element;
        let cl = commutator_closure(&[a1.clone(), a2.clone()], 6);
        assert_eq!(cl.dim, 6);
        let exprs: Vec<&str> = cl.basis.iter().map(|b| b.expr.as_str()).collect();
        assert_eq!(exprs, ["A1", "A2", "[A1,A2]", "[A1,[A1,A2]]", "[A2,[A1,A2]]", "[A2,[A1,[A1,A2]]]"]);
        // ad(A1)^3 = −c²·ad(A1) for a single-plane generator, so [A1,[A1,[A1,A2]]] adds nothing
        let b3 = a1.bracket(&a2);
        let b4 = a1.bracket(&b3);
        let listed = [a1.clone(), a2.clone(), b3.clone(), b4.clone(), a2.bracket(&b3), a1.bracket(&b4)];
        let mut span = Span::default();
        let rank = listed.iter().filter(|x| span.try_add(&x.matrix)).count();
        assert_eq!(rank, 5);
        assert_eq!(commutator_closure(&[a1.clone()], 6).dim, 1);
        assert_eq!(commutator_closure(&[a2, a1.clone(), a1], 6).dim, 6);
        let so3 = commutator_closure(&so3_in_so4(), 6);
        assert_eq!(so3.dim, 3);
        assert_eq!(commutator_closure(&[], 6).dim, 0);
    }

    #[test]
    fn words_reach_so4() {
        let (one, two) = NamedSet::G1p3.gates();
        let mats: Vec<CMatrix> = embed_gate_set(&one, &two, 2).into_iter().map(|g| g.matrix).collect();
        let (found, cl) = lie_closure_from_words(&mats, 6);
        assert!(!found.is_empty());
        assert_eq!(cl.dim, 6);
    }

    #[test]
    fn closure_verdicts() {
        let u4_gens: Vec<NamedMatrix> = constants::u4_generator_images()
            .into_iter()
            .enumerate()
            .map(|(i, m)| NamedMatrix::new(format!("g{}", i + 1), m))
            .collect();
        assert_eq!(
            finite_closure(&u4_gens, DEFAULT_CAP).unwrap(),
            ClosureVerdict::Finite { order: 72, method: ClosureMethod::Bfs }
        );

        let (one, two) = NamedSet::G1p3.gates();
        let gens = embed_gate_set(&one, &two, 2);
        let names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["X@0", "X@1", "S@0", "S@1", "CZ~@0,1"]);
        let v = finite_closure(&gens, 100).unwrap();
        let ClosureVerdict::ExceedsCap { cap: 100, certificate: Some(cert) } = v else { panic!("{v:?}") };
        let cos = cert.niven.cos_num as f64 / cert.niven.cos_den as f64;
        assert!((cert.niven.phase.cos() - cos).abs() < 1e-9);
        assert!(![0.0, 0.5, -0.5, 1.0, -1.0].contains(&cos));
        let prod = cert.word.iter().fold(identity(4), |acc, w| {
            acc * &gens.iter().find(|g| &g.name == w).unwrap().matrix
        });
        let stored = CMatrix::from_fn(4, 4, |i, j| c(cert.matrix[i][j][0], cert.matrix[i][j][1]));
        assert!(linalg::approx_eq(&prod, &stored, 1e-12));
    }

    #[test]
    fn closure_is_idempotent() {
        let (one, two) = NamedSet::Abu.gates();
        let gens = embed_gate_set(&one, &two, 1);
        let mats: Vec<CMatrix> = gens.iter().map(|g| g.matrix.clone()).collect();
        let run = bfs_closure(&mats, DEFAULT_CAP, KeyMode::Exact);
        assert!(run.complete);
        let again: Vec<NamedMatrix> =
            run.elements.iter().enumerate().map(|(i, m)| NamedMatrix::new(format!("e{i}"), m.clone())).collect();
        assert_eq!(finite_closure(&again, DEFAULT_CAP).unwrap().finite_order(), Some(run.elements.len() as u64));
        assert_eq!(run.elements.len(), 72);
    }

    #[test]
    fn monomial_route_beyond_cap() {
        let (one, two) = NamedSet::B40.gates();
        let gens = embed_gate_set(&one, &two, 2);
        let v = closure_verdict(&gens, 100).unwrap();
        assert_eq!(v, ClosureVerdict::Finite { order: 1296, method: ClosureMethod::MonomialStabilizerChain });
        assert_eq!(finite_closure(&gens, DEFAULT_CAP).unwrap().finite_order(), Some(1296));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("padic-qubit-cache-test-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let (one, two) = NamedSet::B40.gates();
        let gens = embed_gate_set(&one, &two, 2);
        let (v1, hit1) = cached_closure_verdict(&gens, 1000, Some(&dir)).unwrap();
        let (v2, hit2) = cached_closure_verdict(&gens, 1000, Some(&dir)).unwrap();
        assert!(!hit1 && hit2);
        assert_eq!(v1, v2);
        assert_ne!(cache_key(&gens, 1000), cache_key(&gens, 1001));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn givens_examples() {
        let t: f64 = 0.83;
        let r = RMatrix::from_row_slice(2, 2, &[t.cos(), -t.sin(), t.sin(), t.cos()]);
        let f = givens_decompose(&r).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].j, f[0].k), (1, 2));
        assert!((f[0].theta - t).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in [3, 8] {
            let g = RMatrix::from_fn(m, m, |_, _| rng.random::<f64>() - 0.5);
            let mut q = g.qr().q();
            if q.determinant() < 0.0 {
                q.column_mut(0).neg_mut();
            }
            let f = givens_decompose(&q).unwrap();
            assert!(f.len() <= m * (m - 1) / 2);
            assert!((givens_recompose(m, &f) - &q).amax() < 1e-9);
        }
        let reflection = RMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1.0, 1.0]));
        assert!(givens_decompose(&reflection).is_err());
        assert!(givens_decompose(&RMatrix::from_element(3, 3, 1.0)).is_err());
    }

    #[test]
    fn g1p3_report() {
        let r = verify_universality(NamedSet::G1p3, &UniversalityOptions { cap: 2000, ..Default::default() }).unwrap();
        assert!(r.universal && r.dense_in_so4 && r.dense_in_o4);
        assert_eq!(r.closure_dim, 6);
        assert_eq!(r.det_minus_one, ["CZ~@0,1"]);
        assert!(r.steps.iter().all(|s| s.passed));
        assert_eq!(r.givens.as_ref().unwrap().factors.len(), 28);
        assert_eq!(r.verdicts[0].verdict.finite_order(), Some(24));
        let json = serde_json::to_value(&r).unwrap();
        for key in ["steps", "lie_basis", "closure_dim", "verdicts"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn finite_sets_are_not_dense() {
        let opts = UniversalityOptions::default();
        let x = [NamedMatrix::new("X", constants::gate_x())];
        let r = verify_gate_set("x", &x, &[], 1..=2, &opts).unwrap();
        assert_eq!(r.closure_dim, 0);
        assert!(!r.dense_in_so4 && !r.universal);
        let r = verify_universality(NamedSet::B40, &opts).unwrap();
        let orders: Vec<Option<u64>> = r.verdicts.iter().map(|v| v.verdict.finite_order()).collect();
        assert_eq!(orders, [Some(36), Some(1296), Some(839_808), Some(88_159_684_608)]);
        assert!(!r.universal);
        assert!(matches!(verify_gate_set("e", &[], &[], 1..=1, &opts), Err(UniversalityError::EmptyGateSet)));
    }

    #[test]
    fn real_encode_is_homomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut haar = |m: usize| {
            let g = CMatrix::from_fn(m, m, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            g.qr().q()
        };
        let (u, v) = (haar(3), haar(3));
        let lhs = real_encode(&(&u * &v));
        let rhs = real_encode(&u) * real_encode(&v);
        assert!((lhs - rhs).amax() < 1e-12);
        let _ = exp_i_pi(0.0);
    }
}
