//! Gate extraction from the 4-dimensional irreps of G_3.
//!
//! The images of G_3 are tested for Kronecker factorization in the computational
//! basis of two qubits, rebased into eigenbases of single elements, and split into
//! cosets of H_3. The gate sets are read off from the factorizing pieces.

pub mod constants;
pub mod subgroups;

use std::collections::BTreeMap;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::closure::{bfs_closure, KeyMode, MatrixSet};
use crate::group::{g3_generators, FiniteGroup, Gp, GpElement};
use crate::linalg::{
    approx_eq, dagger, eigenvalues, from_rows, identity, is_unitary, kron, max_abs_diff,
    normal_eigenbasis, re, serialize_matrix, singular_values, top_singular, CMatrix, TAU, ZERO,
};
use crate::par::{self, Exec};

pub use subgroups::{identify, is_closed, SubgroupLabel, ALL_LABELS, U2_FACTORIZING, U4_FACTORIZING};

/// Rank-one threshold on the second singular value of the reshuffled matrix.
pub const KRON_TOL: f64 = 1e-8;
/// Tolerance for the pairwise eigenvalue products.
pub const SPECTRAL_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum GatesError {
    #[error("the gate analysis works over G_3, got p = {0}")]
    NotG3(u32),
    #[error("expected {expected}×{expected} matrices, got {got}×{got}")]
    Dimension { expected: usize, got: usize },
    #[error("generator image {0} is not unitary")]
    NotUnitary(usize),
    #[error("basis matrix is not unitary")]
    NonUnitaryBasis,
    #[error("generator images violate the group law at {element:?}·g{generator}")]
    NotHomomorphic { element: GpElement, generator: usize },
    #[error("{element:?} lies in {coset:?} but classifies as {got}")]
    Coset {
        element: GpElement,
        coset: CosetName,
        got: &'static str,
    },
    #[error("{0}")]
    Check(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Constant,
    Computed,
}

/// A unitary gate with its origin and, for representation images, its group label.
#[derive(Debug, Clone, Serialize)]
pub struct GateMatrix {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<GpElement>,
    pub provenance: Provenance,
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: CMatrix,
}

impl GateMatrix {
    pub fn constant(matrix: CMatrix) -> Self {
        GateMatrix { label: None, provenance: Provenance::Constant, matrix }
    }

    pub fn computed(matrix: CMatrix, label: Option<GpElement>) -> Self {
        GateMatrix { label, provenance: Provenance::Computed, matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

/// The image of G_3 under a unitary representation, indexed like `gp.elements()`.
#[derive(Debug, Clone, Serialize)]
pub struct RepImage {
    pub gates: Vec<GateMatrix>,
    /// Number of distinct matrices in the image.
    pub distinct: usize,
}

impl RepImage {
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn matrix(&self, gp: &Gp, x: &GpElement) -> &CMatrix {
        &self.gates[gp.index_of(x)].matrix
    }

    pub fn matrices(&self) -> Vec<CMatrix> {
        self.gates.iter().map(|g| g.matrix.clone()).collect()
    }

    pub fn is_faithful(&self) -> bool {
        self.distinct == self.gates.len()
    }

    pub fn rebase(&self, basis: &CMatrix) -> Result<RepImage, GatesError> {
        let gates = rebase(&self.gates, basis)?;
        Ok(RepImage { gates, distinct: self.distinct })
    }

    /// Largest entrywise defect of U(x)U(y) = U(xy) over all pairs.
    pub fn homomorphism_defect(&self, gp: &Gp, exec: Exec) -> f64 {
        let els = gp.elements();
        par::map_range(exec, els.len(), |i| {
            let mut worst = 0f64;
            for (j, y) in els.iter().enumerate() {
                let xy = gp.multiply(&els[i], y);
                let lhs = &self.gates[i].matrix * &self.gates[j].matrix;
                worst = worst.max(max_abs_diff(&lhs, self.matrix(gp, &xy)));
            }
            worst
        })
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn require_g3(gp: &Gp) -> Result<(), GatesError> {
    if gp.p() == 3 {
        Ok(())
    } else {
        Err(GatesError::NotG3(gp.p()))
    }
}

/// Extends images of the two G_3 generators to the whole group.
pub fn build_rep_image(gp: &Gp, images: &[CMatrix; 2]) -> Result<RepImage, GatesError> {
    require_g3(gp)?;
    let n = images[0].nrows();
    for (k, m) in images.iter().enumerate() {
        if !m.is_square() || m.nrows() != n {
            return Err(GatesError::Dimension { expected: n, got: m.nrows() });
        }
        if !is_unitary(m, TAU) {
            return Err(GatesError::NotUnitary(k + 1));
        }
    }
    let (g1, g2) = g3_generators(gp);
    let gens = [g1, g2];
    let mut mats: Vec<Option<CMatrix>> = vec![None; gp.order()];
    let e = gp.identity();
    mats[gp.index_of(&e)] = Some(identity(n));
    let mut queue = vec![e];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let mx = mats[gp.index_of(&x)].clone().expect("visited");
        for (k, g) in gens.iter().enumerate() {
            let y = gp.multiply(&x, g);
            let my = &mx * &images[k];
            let slot = &mut mats[gp.index_of(&y)];
            match slot {
                Some(known) if !approx_eq(known, &my, TAU) => {
                    return Err(GatesError::NotHomomorphic { element: x, generator: k + 1 })
                }
                Some(_) => {}
                None => {
                    *slot = Some(my);
                    queue.push(y);
                }
            }
        }
    }
    let gates: Vec<GateMatrix> = gp
        .elements()
        .iter()
        .zip(mats)
        .map(|(x, m)| GateMatrix::computed(m.expect("generators span G_3"), Some(*x)))
        .collect();
    let distinct = MatrixSet::from_matrices(
        &gates.iter().map(|g| g.matrix.clone()).collect::<Vec<_>>(),
        KeyMode::Exact,
    )
    .len();
    Ok(RepImage { gates, distinct })
}

/// Conjugates every gate by the basis: U ↦ B†UB.
pub fn rebase(images: &[GateMatrix], basis: &CMatrix) -> Result<Vec<GateMatrix>, GatesError> {
    if let Some(first) = images.first() {
        if basis.nrows() != first.dim() {
            return Err(GatesError::Dimension { expected: first.dim(), got: basis.nrows() });
        }
    }
    if !is_unitary(basis, TAU) {
        return Err(GatesError::NonUnitaryBasis);
    }
    let bd = dagger(basis);
    Ok(images
        .iter()
        .map(|g| GateMatrix::computed(&bd * &g.matrix * basis, g.label))
        .collect())
}

/// Whether the eigenvalues split into two pairs with equal products.
pub fn spectral_factorizable(u: &CMatrix) -> bool {
    if u.shape() != (4, 4) {
        return false;
    }
    let a = eigenvalues(u);
    [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)]
        .iter()
        .any(|&(i, j, k, l)| (a[i] * a[j] - a[k] * a[l]).norm() < SPECTRAL_TOL)
}

/// Rearranges a 4×4 matrix so that V⊗W becomes the rank-one matrix vec(V)·vec(W)ᵀ.
pub fn reshuffle(u: &CMatrix) -> CMatrix {
    let mut r = CMatrix::zeros(4, 4);
    for i1 in 0..2 {
        for i2 in 0..2 {
            for j1 in 0..2 {
                for j2 in 0..2 {
                    r[(2 * i1 + j1, 2 * i2 + j2)] = u[(2 * i1 + i2, 2 * j1 + j2)];
                }
            }
        }
    }
    r
}

/// Factors with `scalar · (v ⊗ w)` equal to the input.
#[derive(Debug, Clone, Serialize)]
pub struct KronFactors {
    #[serde(serialize_with = "serialize_matrix")]
    pub v: CMatrix,
    #[serde(serialize_with = "serialize_matrix")]
    pub w: CMatrix,
    #[serde(serialize_with = "serialize_complex")]
    pub scalar: Complex64,
}

impl KronFactors {
    pub fn reconstruct(&self) -> CMatrix {
        kron(&self.v, &self.w) * self.scalar
    }
}

fn serialize_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn det2(m: &CMatrix) -> Complex64 {
    Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]).determinant()
}

/// Nearest Kronecker product test.
///
/// V and W have |det| = 1, the first non-negligible entry of V (row-major) is real
/// positive, and the remaining phase sits in W, so the scalar is a positive real.
pub fn kron_factorize(u: &CMatrix) -> Option<KronFactors> {
    if u.shape() != (4, 4) {
        return None;
    }
    let r = reshuffle(u);
    let sv = singular_values(&r);
    if sv[0] == 0.0 || sv[1] > KRON_TOL * sv[0].max(1.0) {
        return None;
    }
    let (_, left, _) = top_singular(&r);
    let mut v = from_rows(2, 2, left.as_slice());
    let dv = det2(&v).norm();
    if dv < KRON_TOL {
        return None;
    }
    v /= re(dv.sqrt());
    if let Some(z) = v.transpose().iter().copied().find(|z| z.norm() > 1e-9) {
        v *= z.conj() / z.norm();
    }
    let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let mut w = CMatrix::zeros(2, 2);
    for i2 in 0..2 {
        for j2 in 0..2 {
            let mut acc = ZERO;
            for i1 in 0..2 {
                for j1 in 0..2 {
                    acc += v[(i1, j1)].conj() * u[(2 * i1 + i2, 2 * j1 + j2)];
                }
            }
            w[(i2, j2)] = acc / vv;
        }
    }
    let scalar = det2(&w).norm().sqrt();
    if scalar < KRON_TOL {
        return None;
    }
    w /= re(scalar);
    let f = KronFactors { v, w, scalar: re(scalar) };
    (max_abs_diff(&f.reconstruct(), u) <= KRON_TOL * scalar.max(1.0)).then_some(f)
}

#[derive(Debug, Clone)]
pub enum FactorizationVerdict {
    Product(KronFactors),
    /// U = scalar · (V⊗W) · SWAP.
    ProductTimesSwap(KronFactors),
    Entangling,
    /// Entangling, and no choice of basis makes it a product.
    SpectrallyUnfactorizable,
}

impl FactorizationVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            FactorizationVerdict::Product(_) => "product",
            FactorizationVerdict::ProductTimesSwap(_) => "product_times_swap",
            FactorizationVerdict::Entangling => "entangling",
            FactorizationVerdict::SpectrallyUnfactorizable => "spectrally_unfactorizable",
        }
    }

    pub fn is_entangling(&self) -> bool {
        matches!(
            self,
            FactorizationVerdict::Entangling | FactorizationVerdict::SpectrallyUnfactorizable
        )
    }

    pub fn factors(&self) -> Option<&KronFactors> {
        match self {
            FactorizationVerdict::Product(f) | FactorizationVerdict::ProductTimesSwap(f) => Some(f),
            _ => None,
        }
    }
}

impl Serialize for FactorizationVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            kind: &'static str,
            #[serde(flatten, skip_serializing_if = "Option::is_none")]
            factors: Option<&'a KronFactors>,
        }
        Json { kind: self.kind(), factors: self.factors() }.serialize(s)
    }
}

/// Product, SWAP times a product, or entangling.
pub fn classify_gate(u: &CMatrix) -> FactorizationVerdict {
    if let Some(f) = kron_factorize(u) {
        return FactorizationVerdict::Product(f);
    }
    if let Some(f) = kron_factorize(&(u * constants::swap())) {
        return FactorizationVerdict::ProductTimesSwap(f);
    }
    FactorizationVerdict::Entangling
}

/// As [`classify_gate`], with entangling gates that fail the spectral test marked as such.
pub fn classify_gate_strict(u: &CMatrix) -> FactorizationVerdict {
    match classify_gate(u) {
        FactorizationVerdict::Entangling if !spectral_factorizable(u) => {
            FactorizationVerdict::SpectrallyUnfactorizable
        }
        v => v,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepChoice {
    U2,
    U4,
}

impl RepChoice {
    pub fn generator_images(self) -> [CMatrix; 2] {
        match self {
            RepChoice::U2 => constants::u2_generator_images(),
            RepChoice::U4 => constants::u4_generator_images(),
        }
    }

    /// The factorizing subgroups listed for this representation.
    pub fn reference_subgroups(self) -> &'static [SubgroupLabel] {
        match self {
            RepChoice::U2 => &U2_FACTORIZING,
            RepChoice::U4 => &U4_FACTORIZING,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisChoice {
    Gap,
    B38,
    B1,
    B40,
}

impl BasisChoice {
    pub fn matrix(self) -> CMatrix {
        match self {
            BasisChoice::Gap => identity(4),
            BasisChoice::B38 => constants::basis_b38(),
            BasisChoice::B1 => constants::basis_b1(),
            BasisChoice::B40 => constants::basis_b40(),
        }
    }
}

/// The image of `rep` written in `basis`.
pub fn rep_image(gp: &Gp, rep: RepChoice, basis: BasisChoice) -> Result<RepImage, GatesError> {
    build_rep_image(gp, &rep.generator_images())?.rebase(&basis.matrix())
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizeEntry {
    pub element: GpElement,
    pub spectral: bool,
    pub verdict: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizeReport {
    pub elements: usize,
    pub spectrally_factorizable: usize,
    pub spectrally_unfactorizable: Vec<GpElement>,
    pub product: usize,
    pub product_times_swap: usize,
    pub entangling: usize,
    pub entries: Vec<FactorizeEntry>,
}

/// Spectral test and basis-dependent classification of every element.
pub fn factorize_report(image: &RepImage, exec: Exec) -> FactorizeReport {
    let entries: Vec<FactorizeEntry> = par::map(exec, &image.gates, |g| FactorizeEntry {
        element: g.label.unwrap_or_else(GpElement::identity),
        spectral: spectral_factorizable(&g.matrix),
        verdict: classify_gate(&g.matrix).kind(),
    });
    let count = |k: &str| entries.iter().filter(|e| e.verdict == k).count();
    FactorizeReport {
        elements: entries.len(),
        spectrally_factorizable: entries.iter().filter(|e| e.spectral).count(),
        spectrally_unfactorizable: entries.iter().filter(|e| !e.spectral).map(|e| e.element).collect(),
        product: count("product"),
        product_times_swap: count("product_times_swap"),
        entangling: count("entangling"),
        entries,
    }
}

/// How the four eigenvectors are grouped into the two tensor slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnPairing {
    /// Eigenvectors in eigenphase order.
    Canonical,
    /// Each of the three tensor structures on the eigenvectors.
    All,
}

/// One column order per way of splitting four eigenvectors into two qubits.
const PAIRINGS: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 3, 1, 2], [0, 2, 3, 1]];

#[derive(Debug, Clone, Serialize)]
pub struct FactorizingSubset {
    pub order: usize,
    pub is_subgroup: bool,
    /// A subgroup not strictly inside another subgroup found by the same search.
    pub maximal: bool,
    pub label: Option<SubgroupLabel>,
    /// Number of (element, pairing) bases yielding this subset.
    pub witnesses: usize,
    pub witness: GpElement,
    pub column_order: [usize; 4],
    #[serde(serialize_with = "serialize_matrix")]
    pub basis: CMatrix,
    pub elements: Vec<GpElement>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupSearch {
    pub pairing: ColumnPairing,
    pub subsets: Vec<FactorizingSubset>,
}

impl SubgroupSearch {
    pub fn subgroups(&self) -> impl Iterator<Item = &FactorizingSubset> {
        self.subsets.iter().filter(|s| s.is_subgroup)
    }

    pub fn max_subgroup_order(&self) -> usize {
        self.subgroups().map(|s| s.order).max().unwrap_or(0)
    }

    /// Subgroups of at least `min_order` elements.
    pub fn subgroups_of_order_at_least(&self, min_order: usize) -> Vec<&FactorizingSubset> {
        self.subgroups().filter(|s| s.order >= min_order).collect()
    }

    /// Subgroups of at least `min_order` elements whose label is not in `reference`.
    pub fn beyond(&self, reference: &[SubgroupLabel], min_order: usize) -> Vec<&FactorizingSubset> {
        self.subgroups_of_order_at_least(min_order)
            .into_iter()
            .filter(|s| s.label.is_none_or(|l| !reference.contains(&l)))
            .collect()
    }
}

/// For every element, rebases the image into that element's eigenbasis and records
/// which elements become Kronecker products there.
pub fn factorizing_subgroup_search(
    gp: &Gp,
    image: &RepImage,
    pairing: ColumnPairing,
    exec: Exec,
) -> SubgroupSearch {
    let orders: &[[usize; 4]] = match pairing {
        ColumnPairing::Canonical => &PAIRINGS[..1],
        ColumnPairing::All => &PAIRINGS,
    };
    let n = image.len();
    let candidates = par::map_range(exec, n * orders.len(), |t| {
        let (k, o) = (t / orders.len(), t % orders.len());
        let (eig, _) = normal_eigenbasis(&image.gates[k].matrix);
        let cols: Vec<_> = orders[o].iter().map(|&c| eig.column(c).into_owned()).collect();
        let basis = crate::linalg::from_columns(&cols);
        let bd = dagger(&basis);
        let members: Vec<usize> = (0..n)
            .filter(|&x| kron_factorize(&(&bd * &image.gates[x].matrix * &basis)).is_some())
            .collect();
        (members, k, o, basis)
    });
    let mut found: BTreeMap<Vec<usize>, (usize, usize, usize, CMatrix)> = BTreeMap::new();
    for (members, k, o, basis) in candidates {
        found
            .entry(members)
            .and_modify(|e| e.0 += 1)
            .or_insert((1, k, o, basis));
    }
    let els = gp.elements();
    let mut subsets: Vec<FactorizingSubset> = found
        .into_iter()
        .map(|(members, (witnesses, k, o, basis))| {
            let elements: Vec<GpElement> = members.iter().map(|&i| els[i]).collect();
            let is_subgroup = is_closed(gp, &elements);
            let label = if gp.p() == 3 { identify(gp, &elements) } else { None };
            FactorizingSubset {
                order: elements.len(),
                is_subgroup,
                maximal: false,
                label,
                witnesses,
                witness: els[k],
                column_order: orders[o],
                basis,
                elements,
            }
        })
        .collect();
    let groups: Vec<Vec<GpElement>> = subsets
        .iter()
        .filter(|s| s.is_subgroup)
        .map(|s| s.elements.clone())
        .collect();
    for s in subsets.iter_mut().filter(|s| s.is_subgroup) {
        s.maximal = !groups
            .iter()
            .any(|g| g.len() > s.order && s.elements.iter().all(|x| g.binary_search(x).is_ok()));
    }
    subsets.sort_by(|a, b| {
        b.order
            .cmp(&a.order)
            .then(a.label.cmp(&b.label))
            .then(a.elements.cmp(&b.elements))
    });
    SubgroupSearch { pairing, subsets }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CosetName {
    H3,
    Ent1,
    Ent2,
    S,
}

impl CosetName {
    pub const ALL: [CosetName; 4] = [CosetName::H3, CosetName::Ent1, CosetName::Ent2, CosetName::S];

    fn index(self) -> usize {
        self as usize
    }

    /// Verdict kind every member must have in the b38 basis.
    pub fn expected_kind(self) -> &'static str {
        match self {
            CosetName::H3 => "product",
            CosetName::Ent1 | CosetName::Ent2 => "entangling",
            CosetName::S => "product_times_swap",
        }
    }
}

/// Coset of H_3 containing a G_3 element.
pub fn coset_of(x: &GpElement) -> CosetName {
    match (x.b == 0, x.s == 1) {
        (true, true) => CosetName::H3,
        (true, false) => CosetName::S,
        (false, true) => CosetName::Ent1,
        (false, false) => CosetName::Ent2,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CosetSummary {
    pub name: CosetName,
    pub size: usize,
    pub expected: &'static str,
    pub members: Vec<GpElement>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CosetReport {
    pub cosets: Vec<CosetSummary>,
    pub entangling_total: usize,
    /// Distance of the generator images from the printed U_10 and U_4.
    pub u10_defect: f64,
    pub u4_defect: f64,
    /// Distance of U_10·U_4 from SWAP.
    pub swap_defect: f64,
    pub swap_element: GpElement,
    pub swap_in_s: bool,
    /// Pairs (x, y) ∈ Ent_1 × Ent_2 with U(x)U(y)·SWAP ∈ U(H_3).
    pub entangling_products_checked: usize,
    pub klein_table: [[CosetName; 4]; 4],
    pub is_klein: bool,
}

/// Splits the b38-rebased U^{(2)} image into the four cosets of H_3 and checks each.
pub fn coset_report(gp: &Gp, image: &RepImage, exec: Exec) -> Result<CosetReport, GatesError> {
    require_g3(gp)?;
    let els = gp.elements();
    let kinds = par::map(exec, &image.gates, |g| classify_gate(&g.matrix).kind());
    for (x, kind) in els.iter().zip(&kinds) {
        let coset = coset_of(x);
        if *kind != coset.expected_kind() {
            return Err(GatesError::Coset { element: *x, coset, got: kind });
        }
    }
    let cosets: Vec<CosetSummary> = CosetName::ALL
        .iter()
        .map(|&name| {
            let members: Vec<GpElement> = els.iter().copied().filter(|x| coset_of(x) == name).collect();
            CosetSummary { name, size: members.len(), expected: name.expected_kind(), members }
        })
        .collect();
    let (g1, g2) = g3_generators(gp);
    let m1 = image.matrix(gp, &g1);
    let m2 = image.matrix(gp, &g2);
    let swap = constants::swap();
    let swap_element = gp.multiply(&g1, &g2);

    let h3 = MatrixSet::from_matrices(
        &cosets[0].members.iter().map(|x| image.matrix(gp, x).clone()).collect::<Vec<_>>(),
        KeyMode::Exact,
    );
    let mut checked = 0;
    for x in &cosets[1].members {
        for y in &cosets[2].members {
            let prod = image.matrix(gp, x) * image.matrix(gp, y) * &swap;
            if !h3.contains(&prod) {
                return Err(GatesError::Check(format!(
                    "U({x:?})U({y:?}) is not a product times SWAP"
                )));
            }
            checked += 1;
        }
    }

    let mut table = [[CosetName::H3; 4]; 4];
    let mut filled = [[false; 4]; 4];
    for x in els {
        for y in els {
            let (cx, cy) = (coset_of(x).index(), coset_of(y).index());
            let cxy = coset_of(&gp.multiply(x, y));
            if filled[cx][cy] && table[cx][cy] != cxy {
                return Err(GatesError::Check("coset product is not well defined".into()));
            }
            table[cx][cy] = cxy;
            filled[cx][cy] = true;
        }
    }
    let is_klein = (0..4).all(|i| {
        table[i][i] == CosetName::H3
            && table[0][i] == CosetName::ALL[i]
            && (0..4).all(|j| table[i][j] == table[j][i])
    });

    Ok(CosetReport {
        entangling_total: kinds.iter().filter(|k| **k == "entangling").count(),
        cosets,
        u10_defect: max_abs_diff(m1, &constants::u10()),
        u4_defect: max_abs_diff(m2, &constants::u4()),
        swap_defect: max_abs_diff(&(m1 * m2), &swap),
        swap_element,
        swap_in_s: coset_of(&swap_element) == CosetName::S
            && approx_eq(image.matrix(gp, &swap_element), &swap, TAU),
        entangling_products_checked: checked,
        klein_table: table,
        is_klein,
    })
}

/// Whether SWAP lies in the image, and whether conjugating by SWAP maps the image to itself.
pub fn swap_invariance(image: &RepImage) -> (bool, bool) {
    let set = MatrixSet::from_matrices(&image.matrices(), KeyMode::Exact);
    let swap = constants::swap();
    let contains = set.contains(&swap);
    let preserved = image.gates.iter().all(|g| set.contains(&(&swap * &g.matrix * &swap)));
    (contains, preserved)
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedGate {
    pub name: &'static str,
    #[serde(flatten)]
    pub gate: GateMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct GateSet {
    pub name: &'static str,
    pub gates: Vec<NamedGate>,
}

impl GateSet {
    pub fn gate(&self, name: &str) -> Option<&CMatrix> {
        self.gates.iter().find(|g| g.name == name).map(|g| &g.gate.matrix)
    }

    pub fn matrices(&self) -> Vec<CMatrix> {
        self.gates.iter().map(|g| g.gate.matrix.clone()).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtractionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GateSets {
    pub sets: Vec<GateSet>,
    pub checks: Vec<ExtractionCheck>,
}

impl GateSets {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn set(&self, name: &str) -> Option<&GateSet> {
        self.sets.iter().find(|s| s.name == name)
    }
}

fn named(name: &'static str, m: CMatrix) -> NamedGate {
    NamedGate { name, gate: GateMatrix::constant(m) }
}

/// Kronecker factors of the image elements in `members`.
fn local_factors(gp: &Gp, image: &RepImage, members: &[GpElement]) -> Vec<CMatrix> {
    members
        .iter()
        .filter_map(|x| kron_factorize(image.matrix(gp, x)))
        .flat_map(|f| [f.v, f.w])
        .collect()
}

/// Checks that products in `image` are exactly the members of `label`, the rest entangling.
fn products_match(gp: &Gp, image: &RepImage, label: SubgroupLabel) -> (bool, String) {
    let mut products = 0;
    let mut entangling = 0;
    let mut ok = true;
    for x in gp.elements() {
        let kind = classify_gate(image.matrix(gp, x)).kind();
        if label.contains(x) {
            products += usize::from(kind == "product");
            ok &= kind == "product";
        } else {
            entangling += usize::from(kind == "entangling");
            ok &= kind == "entangling";
        }
    }
    (ok, format!("{products} products on {label}, {entangling} entangling outside"))
}

fn check(name: &'static str, passed: bool, detail: String) -> ExtractionCheck {
    ExtractionCheck { name, passed, detail }
}

/// The three gate sets and the computations tying each to its representation.
pub fn extract_gate_sets(gp: &Gp) -> Result<GateSets, GatesError> {
    use constants::*;
    require_g3(gp)?;
    let x = gate_x();
    let sets = vec![
        GateSet {
            name: "abu",
            gates: vec![named("A", gate_a()), named("B", gate_b()), named("U4", u4()), named("U10", u10())],
        },
        GateSet {
            name: "g1p3",
            gates: vec![named("X", x.clone()), named("S", gate_s()), named("CZ~", gate_cz_tilde())],
        },
        GateSet {
            name: "b40",
            gates: vec![named("-X", -x.clone()), named("Y", gate_y_b40()), named("M", gate_m_b40())],
        },
    ];

    let mut checks = Vec::new();
    let (g1, g2) = g3_generators(gp);
    let u2 = build_rep_image(gp, &u2_generator_images())?;
    let u4_gap = build_rep_image(gp, &u4_generator_images())?;

    let u2_b38 = u2.rebase(&basis_b38())?;
    let d = max_abs_diff(u2_b38.matrix(gp, &g1), &u10()).max(max_abs_diff(u2_b38.matrix(gp, &g2), &u4()));
    checks.push(check("u2_b38_generators_are_u10_u4", d <= 1e-12, format!("defect {d:.1e}")));

    let h3 = SubgroupLabel::H3.members(gp);
    let factors = local_factors(gp, &u2_b38, &h3);
    let from_factors = bfs_closure(&factors, 10_000, KeyMode::Projective);
    let from_ab = bfs_closure(&[gate_a(), gate_b()], 10_000, KeyMode::Projective);
    let fset = MatrixSet::from_matrices(&from_factors.elements, KeyMode::Projective);
    let same = from_factors.complete
        && from_ab.complete
        && from_factors.elements.len() == from_ab.elements.len()
        && from_ab.elements.iter().all(|m| fset.contains(m));
    let ab_in = fset.contains(&(gate_a() * gate_b()));
    checks.push(check(
        "h3_factors_generate_a_b_up_to_phase",
        same && ab_in && factors.len() == 2 * h3.len(),
        format!(
            "{} factors, projective closures of order {} and {}",
            factors.len(),
            from_factors.elements.len(),
            from_ab.elements.len()
        ),
    ));

    let i2 = identity(2);
    let local = [kron(&gate_a(), &i2), kron(&i2, &gate_a()), kron(&gate_b(), &i2), kron(&i2, &gate_b())];
    let local_group = bfs_closure(&local, 100_000, KeyMode::Exact);
    let lset = MatrixSet::from_matrices(&local_group.elements, KeyMode::Exact);
    let inside = h3.iter().all(|x| lset.contains(u2_b38.matrix(gp, x)));
    checks.push(check(
        "h3_inside_local_a_b_group",
        local_group.complete && inside,
        format!("local group of order {}", local_group.elements.len()),
    ));

    let u4_b1 = u4_gap.rebase(&basis_b1())?;
    let [w1, w2] = u4_wrt_b1_images();
    let d = max_abs_diff(u4_b1.matrix(gp, &g1), &w1).max(max_abs_diff(u4_b1.matrix(gp, &g2), &w2));
    checks.push(check("u4_b1_generators", d <= 1e-12, format!("defect {d:.1e}")));
    let (ok, detail) = products_match(gp, &u4_b1, SubgroupLabel::K3);
    checks.push(check("u4_b1_products_are_k3", ok, detail));
    let b1_set = MatrixSet::from_matrices(&u4_b1.matrices(), KeyMode::Exact);
    checks.push(check(
        "u4_b1_contains_cz_tilde",
        b1_set.contains(&gate_cz_tilde()),
        String::new(),
    ));
    let k3_factors =
        MatrixSet::from_matrices(&local_factors(gp, &u4_b1, &SubgroupLabel::K3.members(gp)), KeyMode::Projective);
    checks.push(check(
        "k3_factors_contain_x_s",
        k3_factors.contains(&x) && k3_factors.contains(&gate_s()),
        format!("{} factors up to phase", k3_factors.len()),
    ));

    let u4_b40 = u4_gap.rebase(&basis_b40())?;
    let (ok, detail) = products_match(gp, &u4_b40, SubgroupLabel::K4);
    checks.push(check("u4_b40_products_are_k4", ok, detail));
    let b40_set = MatrixSet::from_matrices(&u4_b40.matrices(), KeyMode::Exact);
    checks.push(check("u4_b40_contains_m", b40_set.contains(&gate_m_b40()), String::new()));
    let k4_factors =
        MatrixSet::from_matrices(&local_factors(gp, &u4_b40, &SubgroupLabel::K4.members(gp)), KeyMode::Projective);
    checks.push(check(
        "k4_factors_contain_minus_x_y",
        k4_factors.contains(&-x) && k4_factors.contains(&gate_y_b40()),
        format!("{} factors up to phase", k4_factors.len()),
    ));

    let mut invariant = Vec::new();
    for (name, img) in [("gap", &u4_gap), ("b1", &u4_b1), ("b40", &u4_b40)] {
        let (contains, preserved) = swap_invariance(img);
        if contains || preserved {
            invariant.push(name);
        }
    }
    checks.push(check(
        "u4_not_swap_invariant",
        invariant.is_empty(),
        format!("invariant bases: {invariant:?}"),
    ));

    Ok(GateSets { sets, checks })
}
