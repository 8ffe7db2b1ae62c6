//! The finite group G_p = SO(3)_p mod p, parametrized by tuples (a, b, c, d, s).
//!
//! An element is the matrix
//!
//! ```text
//! L(a,b,c,d,s) = [[a, s·v·b, 0],
//!                 [b, s·a,   0],
//!                 [c, d,     s]]   mod p,   a² − v·b² ≡ 1, s ≡ ±1.
//! ```

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dihedral::DihedralElement;
use crate::modp::{norm_one_group, PrimeContext};
use crate::par::{self, Exec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("matrix {0:?} is not in the image of F_p")]
    NotInImage([[u32; 2]; 2]),
    #[error("tuple {0:?} does not parametrize an element of G_p")]
    InvalidElement([i64; 5]),
    #[error("structure check failed: {0}")]
    Structure(String),
}

/// Common interface for the finite groups the toolkit sums over.
pub trait FiniteGroup: Sync {
    type Elem: Copy + Eq + Hash + Debug + Send + Sync;

    /// All elements in canonical order.
    fn elements(&self) -> &[Self::Elem];
    fn index_of(&self, x: &Self::Elem) -> usize;
    fn multiply(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inverse(&self, x: &Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
    /// A generating set.
    fn generators(&self) -> Vec<Self::Elem>;

    fn order(&self) -> usize {
        self.elements().len()
    }

    fn conjugate(&self, g: &Self::Elem, x: &Self::Elem) -> Self::Elem {
        self.multiply(&self.multiply(g, x), &self.inverse(g))
    }

    fn element_order(&self, x: &Self::Elem) -> usize {
        let e = self.identity();
        let mut y = *x;
        let mut k = 1;
        while y != e {
            y = self.multiply(&y, x);
            k += 1;
        }
        k
    }
}

/// The tuple (a, b, c, d, s) with s stored as the residue 1 or p − 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GpElement {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub s: u32,
}

impl GpElement {
    /// Builds an element from signed entries, checking the norm condition.
    pub fn new(ctx: &PrimeContext, a: i64, b: i64, c: i64, d: i64, s: i64) -> Result<Self, GroupError> {
        let s_res = ctx.reduce(s);
        let x = GpElement {
            a: ctx.reduce(a),
            b: ctx.reduce(b),
            c: ctx.reduce(c),
            d: ctx.reduce(d),
            s: s_res,
        };
        if !(s_res == 1 || s_res == ctx.p - 1) || !ctx.is_norm_one(x.a, x.b) {
            return Err(GroupError::InvalidElement([a, b, c, d, s]));
        }
        Ok(x)
    }

    pub fn identity() -> Self {
        GpElement { a: 1, b: 0, c: 0, d: 0, s: 1 }
    }

    /// s as ±1.
    pub fn sign(&self) -> i8 {
        if self.s == 1 {
            1
        } else {
            -1
        }
    }

    /// L(a,b,c,d,s) as a 3×3 matrix over Z/pZ.
    pub fn matrix(&self, ctx: &PrimeContext) -> [[u32; 3]; 3] {
        let svb = ctx.mul(self.s, ctx.mul(ctx.v, self.b));
        [
            [self.a, svb, 0],
            [self.b, ctx.mul(self.s, self.a), 0],
            [self.c, self.d, self.s],
        ]
    }

    pub fn from_matrix(m: &[[u32; 3]; 3]) -> Self {
        GpElement { a: m[0][0], b: m[1][0], c: m[2][0], d: m[2][1], s: m[2][2] }
    }

    /// Entries as signed representatives, s as ±1.
    pub fn signed(&self, ctx: &PrimeContext) -> [i64; 5] {
        [
            ctx.signed(self.a),
            ctx.signed(self.b),
            ctx.signed(self.c),
            ctx.signed(self.d),
            self.sign() as i64,
        ]
    }

    /// True when the element lies in N = {L(1,0,c,d,1)}.
    pub fn in_n(&self) -> bool {
        self.a == 1 && self.b == 0 && self.s == 1
    }

    /// True when the element lies in H = {L(a,b,0,0,s)}.
    pub fn in_h(&self) -> bool {
        self.c == 0 && self.d == 0
    }

    /// The H-component L(a,b,0,0,s) of the factorization x = n·h.
    pub fn h_part(&self) -> GpElement {
        GpElement { c: 0, d: 0, ..*self }
    }
}

impl Serialize for GpElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(5)?;
        t.serialize_element(&self.a)?;
        t.serialize_element(&self.b)?;
        t.serialize_element(&self.c)?;
        t.serialize_element(&self.d)?;
        t.serialize_element(&(self.sign() as i64))?;
        t.end()
    }
}

fn mat3_mul(ctx: &PrimeContext, x: &[[u32; 3]; 3], y: &[[u32; 3]; 3]) -> [[u32; 3]; 3] {
    let mut out = [[0u32; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let mut acc = 0u64;
            for k in 0..3 {
                acc += x[i][k] as u64 * y[k][j] as u64;
            }
            *entry = (acc % ctx.p as u64) as u32;
        }
    }
    out
}

/// Product of two elements: the 3×3 product mod p, re-read as a tuple.
pub fn multiply(x: &GpElement, y: &GpElement, ctx: &PrimeContext) -> GpElement {
    GpElement::from_matrix(&mat3_mul(ctx, &x.matrix(ctx), &y.matrix(ctx)))
}

/// Inverse: (a, −sb, −s(ca − sdb), −s(dsa − cvb), s).
pub fn inverse(x: &GpElement, ctx: &PrimeContext) -> GpElement {
    let s = x.s;
    let neg_s = ctx.neg(s);
    let sb = ctx.mul(s, x.b);
    let c1 = ctx.sub(ctx.mul(x.c, x.a), ctx.mul(x.d, sb));
    let d1 = ctx.sub(ctx.mul(x.d, ctx.mul(s, x.a)), ctx.mul(x.c, ctx.mul(ctx.v, x.b)));
    GpElement {
        a: x.a,
        b: ctx.neg(sb),
        c: ctx.mul(neg_s, c1),
        d: ctx.mul(neg_s, d1),
        s,
    }
}

/// All 2p²(p+1) elements, lexicographic on (a,b,c,d,s).
pub fn enumerate(ctx: &PrimeContext) -> Vec<GpElement> {
    let mut ab = norm_one_group(ctx);
    ab.sort();
    let p = ctx.p;
    let mut signs = [1, p - 1];
    signs.sort();
    let mut out = Vec::with_capacity(2 * (p as usize).pow(2) * (p as usize + 1));
    for &(a, b) in &ab {
        for c in 0..p {
            for d in 0..p {
                for &s in &signs {
                    out.push(GpElement { a, b, c, d, s });
                }
            }
        }
    }
    out
}

/// G_p with a dense index over its elements.
#[derive(Debug, Clone)]
pub struct Gp {
    ctx: PrimeContext,
    elements: Vec<GpElement>,
    lookup: Vec<u32>,
}

impl Gp {
    pub fn new(ctx: PrimeContext) -> Self {
        let elements = enumerate(&ctx);
        let p = ctx.p as usize;
        let mut lookup = vec![u32::MAX; p * p * p * p * 2];
        for (i, x) in elements.iter().enumerate() {
            lookup[Self::key(p, x)] = i as u32;
        }
        Gp { ctx, elements, lookup }
    }

    #[inline]
    fn key(p: usize, x: &GpElement) -> usize {
        ((((x.a as usize * p + x.b as usize) * p + x.c as usize) * p + x.d as usize) << 1)
            | usize::from(x.s != 1)
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn p(&self) -> u32 {
        self.ctx.p
    }

    /// Builds an element from signed entries.
    pub fn element(&self, a: i64, b: i64, c: i64, d: i64, s: i64) -> Result<GpElement, GroupError> {
        GpElement::new(&self.ctx, a, b, c, d, s)
    }

    /// The rotation generator L(a0,b0,0,0,1).
    pub fn rotation(&self) -> GpElement {
        GpElement { a: self.ctx.a0, b: self.ctx.b0, c: 0, d: 0, s: 1 }
    }

    /// The reflection L(1,0,0,0,−1).
    pub fn reflection(&self) -> GpElement {
        GpElement { a: 1, b: 0, c: 0, d: 0, s: self.ctx.p - 1 }
    }

    pub fn n_subgroup(&self) -> Vec<GpElement> {
        self.elements.iter().copied().filter(GpElement::in_n).collect()
    }

    pub fn h_subgroup(&self) -> Vec<GpElement> {
        self.elements.iter().copied().filter(GpElement::in_h).collect()
    }
}

impl FiniteGroup for Gp {
    type Elem = GpElement;

    fn elements(&self) -> &[GpElement] {
        &self.elements
    }

    fn index_of(&self, x: &GpElement) -> usize {
        self.lookup[Self::key(self.ctx.p as usize, x)] as usize
    }

    fn multiply(&self, x: &GpElement, y: &GpElement) -> GpElement {
        multiply(x, y, &self.ctx)
    }

    fn inverse(&self, x: &GpElement) -> GpElement {
        inverse(x, &self.ctx)
    }

    fn identity(&self) -> GpElement {
        GpElement::identity()
    }

    /// L(a0,b0,0,0,1) and the involution L(1,0,1,0,−1).
    fn generators(&self) -> Vec<GpElement> {
        vec![
            self.rotation(),
            GpElement { a: 1, b: 0, c: 1, d: 0, s: self.ctx.p - 1 },
        ]
    }
}

/// The two generators of G_3 as 3×3 matrices [[0,1,0],[−1,0,0],[0,0,1]] and [[0,1,0],[1,0,0],[1,0,−1]].
pub fn g3_generators(gp: &Gp) -> (GpElement, GpElement) {
    assert_eq!(gp.p(), 3, "G_3 generators need p = 3");
    let g1 = gp.element(0, -1, 0, 0, 1).expect("valid element");
    let g2 = gp.element(0, 1, 1, 0, -1).expect("valid element");
    (g1, g2)
}

/// Closure of a generating set, in breadth-first order from the identity.
pub fn generated_subgroup<G: FiniteGroup>(g: &G, gens: &[G::Elem]) -> Vec<G::Elem> {
    let mut seen = vec![false; g.order()];
    let e = g.identity();
    let mut out = vec![e];
    seen[g.index_of(&e)] = true;
    let mut head = 0;
    while head < out.len() {
        let x = out[head];
        head += 1;
        for s in gens {
            let y = g.multiply(&x, s);
            let iy = g.index_of(&y);
            if !seen[iy] {
                seen[iy] = true;
                out.push(y);
            }
        }
    }
    out
}

/// Conjugacy classes of a finite group.
#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyClassTable {
    /// Element index of each class representative (smallest in canonical order).
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Class id for every element index.
    pub class_of: Vec<usize>,
    pub group_order: usize,
}

impl ConjugacyClassTable {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn class_of_element<G: FiniteGroup>(&self, g: &G, x: &G::Elem) -> usize {
        self.class_of[g.index_of(x)]
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
        }
    }
}

/// Conjugacy classes by union-find over conjugation by the generators.
///
/// The identity class comes first; the rest are ordered by representative index.
pub fn conjugacy_classes<G: FiniteGroup>(g: &G) -> ConjugacyClassTable {
    conjugacy_classes_with(g, Exec::default())
}

pub fn conjugacy_classes_with<G: FiniteGroup>(g: &G, exec: Exec) -> ConjugacyClassTable {
    let n = g.order();
    let gens = g.generators();
    let images: Vec<Vec<usize>> = par::map_range(exec, n, |i| {
        let x = g.elements()[i];
        gens.iter().map(|s| g.index_of(&g.conjugate(s, &x))).collect()
    });
    let mut uf = UnionFind::new(n);
    for (i, imgs) in images.iter().enumerate() {
        for &j in imgs {
            uf.union(i, j);
        }
    }
    let e_idx = g.index_of(&g.identity());
    let mut roots: Vec<usize> = (0..n).filter(|&i| uf.find(i) == i).collect();
    let e_root = uf.find(e_idx);
    roots.sort_by_key(|&r| (r != e_root, r));
    let root_to_class: HashMap<usize, usize> =
        roots.iter().enumerate().map(|(k, &r)| (r, k)).collect();
    let mut class_of = vec![0; n];
    let mut sizes = vec![0; roots.len()];
    for (i, slot) in class_of.iter_mut().enumerate() {
        let k = root_to_class[&uf.find(i)];
        *slot = k;
        sizes[k] += 1;
    }
    ConjugacyClassTable {
        representatives: roots,
        sizes,
        class_of,
        group_order: n,
    }
}

/// F_p(x) = [[a, s·v·b], [b, s·a]].
pub fn f_p(x: &GpElement, ctx: &PrimeContext) -> [[u32; 2]; 2] {
    [
        [x.a, ctx.mul(x.s, ctx.mul(ctx.v, x.b))],
        [x.b, ctx.mul(x.s, x.a)],
    ]
}

/// φ_p: sends [[a0, v·b0],[b0, a0]] to r and diag(1,−1) to x, landing in D_{p+1}.
pub fn phi_p(m: &[[u32; 2]; 2], ctx: &PrimeContext) -> Result<DihedralElement, GroupError> {
    let (a, b) = (m[0][0] % ctx.p, m[1][0] % ctx.p);
    if !ctx.is_norm_one(a, b) {
        return Err(GroupError::NotInImage(*m));
    }
    let s = [1, ctx.p - 1]
        .into_iter()
        .find(|&s| m[0][1] % ctx.p == ctx.mul(s, ctx.mul(ctx.v, b)) && m[1][1] % ctx.p == ctx.mul(s, a))
        .ok_or(GroupError::NotInImage(*m))?;
    let orbit = norm_one_group(ctx);
    let k = orbit
        .iter()
        .position(|&z| z == (a, b))
        .ok_or(GroupError::NotInImage(*m))? as u32;
    let n = ctx.p + 1;
    Ok(if s == 1 {
        DihedralElement::rotation(k)
    } else {
        // rᵏ·x = x·r⁻ᵏ
        DihedralElement::reflection((n - k) % n)
    })
}

/// The composite G_p → D_{p+1}.
pub fn to_dihedral(x: &GpElement, ctx: &PrimeContext) -> DihedralElement {
    phi_p(&f_p(x, ctx), ctx).expect("F_p lands in the domain of phi_p")
}

/// Outcome of the semidirect-product checks.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub p: u32,
    pub order: usize,
    pub n_order: usize,
    pub n_normal: bool,
    pub n_abelian: bool,
    pub n_unique_sylow: bool,
    pub h_order: usize,
    pub n_cap_h_trivial: bool,
    pub nh_covers_group: bool,
    pub psi_rotation_matches: bool,
    pub psi_reflection_matches: bool,
    pub dihedral_quotient_kernel_is_n: bool,
}

impl StructureReport {
    pub fn all_pass(&self) -> bool {
        self.n_normal
            && self.n_abelian
            && self.n_unique_sylow
            && self.n_cap_h_trivial
            && self.nh_covers_group
            && self.psi_rotation_matches
            && self.psi_reflection_matches
            && self.dihedral_quotient_kernel_is_n
            && self.order == 2 * self.n_order * (self.p as usize + 1)
            && self.h_order == 2 * (self.p as usize + 1)
    }
}

/// Checks G_p ≅ N ⋊ H ≅ C_p² ⋊ D_{p+1}.
pub fn verify_structure(gp: &Gp) -> Result<StructureReport, GroupError> {
    let ctx = *gp.ctx();
    let p = ctx.p as usize;
    let n_set = gp.n_subgroup();
    let h_set = gp.h_subgroup();
    let gens = gp.generators();

    let n_normal = gens
        .iter()
        .all(|g| n_set.iter().all(|x| gp.conjugate(g, x).in_n()));
    let n_abelian = n_set
        .iter()
        .all(|x| n_set.iter().all(|y| gp.multiply(x, y) == gp.multiply(y, x)));
    let p_power = |k: usize| {
        let mut k = k;
        while k % p == 0 {
            k /= p;
        }
        k == 1
    };
    let p_elements = gp
        .elements()
        .iter()
        .filter(|x| p_power(gp.element_order(x)))
        .count();
    let n_unique_sylow = p_elements == n_set.len() && n_set.iter().all(|x| p_power(gp.element_order(x)));
    let n_cap_h_trivial = n_set.iter().filter(|x| x.in_h()).count() == 1;
    let mut covered = vec![false; gp.order()];
    for x in &n_set {
        for h in &h_set {
            covered[gp.index_of(&gp.multiply(x, h))] = true;
        }
    }
    let nh_covers_group = covered.iter().all(|&b| b);

    let rot = gp.rotation();
    let refl = gp.reflection();
    let mut psi_rotation_matches = true;
    let mut psi_reflection_matches = true;
    for x in &n_set {
        let (c, d) = (x.c, x.d);
        let expect_rot = GpElement {
            a: 1,
            b: 0,
            c: ctx.sub(ctx.mul(ctx.a0, c), ctx.mul(ctx.b0, d)),
            d: ctx.sub(ctx.mul(ctx.a0, d), ctx.mul(ctx.v, ctx.mul(ctx.b0, c))),
            s: 1,
        };
        psi_rotation_matches &= gp.conjugate(&rot, x) == expect_rot;
        let expect_refl = GpElement { a: 1, b: 0, c: ctx.neg(c), d, s: 1 };
        psi_reflection_matches &= gp.conjugate(&refl, x) == expect_refl;
    }

    let dn = crate::dihedral::DihedralGroup::new(ctx.p + 1);
    let mut hit = vec![false; 2 * (p + 1)];
    let mut kernel_is_n = true;
    for x in gp.elements() {
        let w = to_dihedral(x, &ctx);
        hit[FiniteGroup::index_of(&dn, &w)] = true;
        kernel_is_n &= (w == DihedralElement::IDENTITY) == x.in_n();
    }
    let homomorphic = gp.elements().iter().step_by(7).all(|x| {
        gp.elements().iter().step_by(5).all(|y| {
            to_dihedral(&gp.multiply(x, y), &ctx)
                == dn.mul(to_dihedral(x, &ctx), to_dihedral(y, &ctx))
        })
    });
    let dihedral_quotient_kernel_is_n = kernel_is_n && homomorphic && hit.iter().all(|&b| b);

    let report = StructureReport {
        p: ctx.p,
        order: gp.order(),
        n_order: n_set.len(),
        n_normal,
        n_abelian,
        n_unique_sylow,
        h_order: h_set.len(),
        n_cap_h_trivial,
        nh_covers_group,
        psi_rotation_matches,
        psi_reflection_matches,
        dihedral_quotient_kernel_is_n,
    };
    if !report.all_pass() {
        let claim = if !n_normal {
            "N is normal"
        } else if !n_abelian {
            "N is abelian"
        } else if !n_unique_sylow {
            "N is the unique Sylow p-subgroup"
        } else if !n_cap_h_trivial {
            "N ∩ H = {e}"
        } else if !nh_covers_group {
            "N·H = G_p"
        } else if !psi_rotation_matches {
            "rotation action on N"
        } else if !psi_reflection_matches {
            "reflection action on N"
        } else {
            "G_p / N ≅ D_{p+1}"
        };
        return Err(GroupError::Structure(claim.to_string()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::make_context;

    fn gp(p: u64) -> Gp {
        Gp::new(make_context(p).unwrap())
    }

    fn mat_mod(ctx: &PrimeContext, x: [[i64; 3]; 3], y: [[i64; 3]; 3]) -> [[u32; 3]; 3] {
        let mut out = [[0u32; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let s: i64 = (0..3).map(|k| x[i][k] * y[k][j]).sum();
                out[i][j] = ctx.reduce(s);
            }
        }
        out
    }

    #[test]
    fn orders() {
        for (p, n) in [(3, 72), (5, 300), (7, 784)] {
            assert_eq!(gp(p).order(), n);
        }
    }

    #[test]
    fn g3_generator_product_matches_direct_matrix_product() {
        let g = gp(3);
        let (g1, g2) = g3_generators(&g);
        let direct = mat_mod(
            g.ctx(),
            [[0, 1, 0], [-1, 0, 0], [0, 0, 1]],
            [[0, 1, 0], [1, 0, 0], [1, 0, -1]],
        );
        assert_eq!(g.multiply(&g1, &g2).matrix(g.ctx()), direct);
        assert_eq!(g1.matrix(g.ctx()), [[0, 1, 0], [2, 0, 0], [0, 0, 1]]);
        assert_eq!(g2.matrix(g.ctx()), [[0, 1, 0], [1, 0, 0], [1, 0, 2]]);
        assert_eq!(generated_subgroup(&g, &[g1, g2]).len(), 72);
    }

    #[test]
    fn n_translation_law() {
        let g = gp(5);
        for x in g.n_subgroup() {
            for y in g.n_subgroup() {
                let z = g.multiply(&x, &y);
                assert_eq!((z.c, z.d), (g.ctx().add(x.c, y.c), g.ctx().add(x.d, y.d)));
                assert!(z.in_n());
            }
        }
    }

    #[test]
    fn group_axioms_exhaustive_p3() {
        let g = gp(3);
        let e = g.identity();
        let els = g.elements();
        for x in els {
            assert_eq!(g.multiply(&e, x), *x);
            assert_eq!(g.multiply(x, &g.inverse(x)), e);
            assert_eq!(72 % g.element_order(x), 0);
            for y in els {
                let xy = g.multiply(x, y);
                assert!(g.ctx().is_norm_one(xy.a, xy.b));
                for z in els.iter().step_by(3) {
                    assert_eq!(g.multiply(&xy, z), g.multiply(x, &g.multiply(y, z)));
                }
            }
        }
    }

    #[test]
    fn generators_generate() {
        for p in [3, 5, 7, 11, 13] {
            let g = gp(p);
            assert_eq!(generated_subgroup(&g, &g.generators()).len(), g.order(), "p = {p}");
        }
    }

    #[test]
    fn class_counts() {
        let t3 = conjugacy_classes(&gp(3));
        assert_eq!(t3.len(), 9);
        assert_eq!(t3.sizes.iter().sum::<usize>(), 72);
        assert_eq!(t3.sizes[0], 1);
        assert_eq!(conjugacy_classes(&gp(5)).len(), 14);
        assert_eq!(conjugacy_classes(&gp(7)).len(), 4 + 3 + 12);
    }

    #[test]
    fn class_strategies_agree() {
        let g = gp(7);
        let a = conjugacy_classes_with(&g, Exec::Sequential);
        let b = conjugacy_classes_with(&g, Exec::Parallel);
        assert_eq!(a.class_of, b.class_of);
    }

    #[test]
    fn structure_holds() {
        for p in [3, 5, 7] {
            let r = verify_structure(&gp(p)).unwrap();
            assert!(r.all_pass());
        }
        let r3 = verify_structure(&gp(3)).unwrap();
        assert_eq!((r3.n_order, r3.h_order), (9, 8));
        assert_eq!(verify_structure(&gp(5)).unwrap().h_order, 12);
    }

    #[test]
    fn reflection_action_p3() {
        let g = gp(3);
        let x = g.element(1, 0, 1, 2, 1).unwrap();
        let y = g.conjugate(&g.reflection(), &x);
        assert_eq!(y, g.element(1, 0, -1, 2, 1).unwrap());
    }

    #[test]
    fn f_p_is_a_homomorphism_on_g3() {
        let g = gp(3);
        let ctx = *g.ctx();
        let mul2 = |x: [[u32; 2]; 2], y: [[u32; 2]; 2]| {
            let mut o = [[0u32; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    o[i][j] = ctx.add(ctx.mul(x[i][0], y[0][j]), ctx.mul(x[i][1], y[1][j]));
                }
            }
            o
        };
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(f_p(&g.multiply(x, y), &ctx), mul2(f_p(x, &ctx), f_p(y, &ctx)));
            }
        }
        let n = g.element(1, 0, 2, 1, 1).unwrap();
        assert_eq!(f_p(&n, &ctx), [[1, 0], [0, 1]]);
    }

    #[test]
    fn phi_p_examples() {
        let ctx = make_context(5).unwrap();
        assert_eq!(phi_p(&[[1, 0], [0, 4]], &ctx), Ok(DihedralElement::reflection(0)));
        assert_eq!(phi_p(&[[1, 0], [0, 1]], &ctx), Ok(DihedralElement::IDENTITY));
        let g = Gp::new(ctx);
        let r = f_p(&g.rotation(), &ctx);
        assert_eq!(r, [[ctx.a0, ctx.mul(ctx.v, ctx.b0)], [ctx.b0, ctx.a0]]);
        let r2 = f_p(&g.multiply(&g.rotation(), &g.rotation()), &ctx);
        assert_eq!(phi_p(&r2, &ctx), Ok(DihedralElement::rotation(2)));
        assert!(phi_p(&[[2, 0], [0, 2]], &ctx).is_err());
    }

    #[test]
    fn serializes_as_signed_tuple() {
        let g = gp(3);
        let x = g.element(0, 1, 1, 0, -1).unwrap();
        assert_eq!(serde_json::to_string(&x).unwrap(), "[0,1,1,0,-1]");
    }
}
