//! Unitary irreducible representations of D_n and G_p, characters and character tables.
//!
//! The irreps of G_p come in three families: four one-dimensional and (p−1)/2
//! two-dimensional lifts through G_p → D_{p+1}, and 2(p−1) irreps of dimension
//! p+1 induced from the C_2-stabilizers of nontrivial characters of N ≅ C_p².

mod dihedral;
mod induced;

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use dihedral::{d3_irreps, d3_sigma2_r, dihedral_irreps, DihedralIrrep};
pub use induced::{act_on_character, h_orbits, n_character, np2_characters, root_of_unity, InducedData};

use crate::group::{conjugacy_classes, g3_generators, to_dihedral, ConjugacyClassTable, FiniteGroup, Gp, GpElement};
use crate::linalg::{approx_eq, is_unitary, re, trace, CMatrix, CHAR_TOL, TAU, ZERO};
use crate::modp::PrimeContext;
use crate::par::{self, Exec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepsError {
    #[error("D_{0}: only even n >= 4 is handled generically (D_3 has dedicated constants)")]
    OddDihedral(u32),
    #[error("irrep of D_{got} cannot be lifted to G_p with p + 1 = {want}")]
    WrongDihedral { got: u32, want: u32 },
    #[error("the trivial character has stabilizer H; its irreps are lifts")]
    TrivialCharacter,
    #[error("character {0:?} has stabilizer of order {1}, expected 2")]
    Stabilizer((u32, u32), usize),
    #[error("characters live on class tables of different sizes ({0} vs {1})")]
    ClassMismatch(usize, usize),
    #[error("{label}: homomorphism fails at elements {x} and {y}")]
    NotHomomorphic { label: String, x: usize, y: usize },
    #[error("{label}: image of element {x} is not unitary")]
    NotUnitary { label: String, x: usize },
    #[error("no column matching reproduces the reference G_3 table")]
    NoAlignment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Structured name of an irrep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrepLabel {
    Triv,
    /// r ↦ 1, x ↦ −1.
    S,
    /// r ↦ −1, x ↦ 1.
    T,
    /// r ↦ −1, x ↦ −1.
    St,
    /// r ↦ rotation by 2πj/n, x ↦ diag(1, −1).
    TwoDim(u32),
    /// Induced from the N-character orbit with k1² − v·k2² ≡ q.
    Induced { q: u32, sign: Sign },
    /// Spin twice_j/2 of SU(2), for the reference singlet/triplet split.
    Spin(u32),
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::Triv => write!(f, "triv"),
            IrrepLabel::S => write!(f, "s"),
            IrrepLabel::T => write!(f, "t"),
            IrrepLabel::St => write!(f, "st"),
            IrrepLabel::TwoDim(j) => write!(f, "sigma({j})"),
            IrrepLabel::Induced { q, sign } => {
                write!(f, "ind({q},{})", if *sign == Sign::Plus { '+' } else { '-' })
            }
            IrrepLabel::Spin(tj) if tj % 2 == 0 => write!(f, "spin({})", tj / 2),
            IrrepLabel::Spin(tj) => write!(f, "spin({tj}/2)"),
        }
    }
}

impl Serialize for IrrepLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A representation of a finite group given by an evaluation map.
pub trait Representation<G: FiniteGroup>: Sync {
    fn dim(&self) -> usize;
    fn label(&self) -> IrrepLabel;
    fn eval(&self, group: &G, x: &G::Elem) -> CMatrix;

    fn character_value(&self, group: &G, x: &G::Elem) -> Complex64 {
        trace(&self.eval(group, x))
    }

    fn generator_images(&self, group: &G) -> Vec<CMatrix> {
        group.generators().iter().map(|x| self.eval(group, x)).collect()
    }
}

#[derive(Debug, Clone)]
enum IrrepKind {
    Lifted(DihedralIrrep),
    Induced(InducedData),
}

/// An irrep of G_p.
#[derive(Debug, Clone)]
pub struct Irrep {
    pub label: IrrepLabel,
    pub dim: usize,
    ctx: PrimeContext,
    kind: IrrepKind,
}

impl Irrep {
    pub fn evaluate(&self, gp: &Gp, x: &GpElement) -> CMatrix {
        match &self.kind {
            IrrepKind::Lifted(sigma) => sigma.eval_word(to_dihedral(x, &self.ctx)),
            IrrepKind::Induced(data) => data.eval(gp, x),
        }
    }

    /// The dihedral irrep this one is lifted from, if any.
    pub fn dihedral(&self) -> Option<&DihedralIrrep> {
        match &self.kind {
            IrrepKind::Lifted(s) => Some(s),
            IrrepKind::Induced(_) => None,
        }
    }

    pub fn induced_data(&self) -> Option<&InducedData> {
        match &self.kind {
            IrrepKind::Induced(d) => Some(d),
            IrrepKind::Lifted(_) => None,
        }
    }
}

impl Representation<Gp> for Irrep {
    fn dim(&self) -> usize {
        self.dim
    }

    fn label(&self) -> IrrepLabel {
        self.label
    }

    fn eval(&self, group: &Gp, x: &GpElement) -> CMatrix {
        self.evaluate(group, x)
    }

    fn character_value(&self, group: &Gp, x: &GpElement) -> Complex64 {
        match &self.kind {
            IrrepKind::Lifted(sigma) => sigma.character_word(to_dihedral(x, &self.ctx)),
            IrrepKind::Induced(data) => data.character(group, x),
        }
    }
}

/// σ ∘ φ_p ∘ F_p.
pub fn lift_to_gp(sigma: DihedralIrrep, ctx: &PrimeContext) -> Result<Irrep, RepsError> {
    if sigma.n != ctx.p + 1 {
        return Err(RepsError::WrongDihedral { got: sigma.n, want: ctx.p + 1 });
    }
    Ok(Irrep {
        label: sigma.label,
        dim: sigma.dim(),
        ctx: *ctx,
        kind: IrrepKind::Lifted(sigma),
    })
}

/// The (p+1)-dimensional irrep induced from χ_k extended by the stabilizer ↦ sign.
pub fn induce_irrep(gp: &Gp, k: (u32, u32), sign: Sign) -> Result<Irrep, RepsError> {
    let data = InducedData::new(gp, k, sign.value())?;
    Ok(Irrep {
        label: IrrepLabel::Induced { q: gp.ctx().quad_form(k.0, k.1), sign },
        dim: data.dim(),
        ctx: *gp.ctx(),
        kind: IrrepKind::Induced(data),
    })
}

/// The qubit irreps ρ^(j) = σ^(j) ∘ φ_p ∘ F_p, j = 1..(p−1)/2.
pub fn qubit_irreps(ctx: &PrimeContext) -> Vec<Irrep> {
    (1..=(ctx.p - 1) / 2)
        .map(|j| {
            lift_to_gp(DihedralIrrep { n: ctx.p + 1, label: IrrepLabel::TwoDim(j) }, ctx)
                .expect("n = p + 1")
        })
        .collect()
}

/// Every irrep of G_p: lifts first, then induced ones by orbit and sign.
pub fn all_irreps(gp: &Gp) -> Vec<Irrep> {
    let ctx = *gp.ctx();
    let mut out: Vec<Irrep> = dihedral_irreps(ctx.p + 1)
        .expect("p + 1 is even")
        .into_iter()
        .map(|s| lift_to_gp(s, &ctx).expect("n = p + 1"))
        .collect();
    for orbit in h_orbits(gp).iter().skip(1) {
        for sign in [Sign::Plus, Sign::Minus] {
            out.push(induce_irrep(gp, orbit[0], sign).expect("nontrivial orbit"));
        }
    }
    out
}

/// Character values on the classes of a table.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    pub values: Vec<Complex64>,
}

impl Character {
    pub fn dim(&self) -> f64 {
        self.values[0].re
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &Character) -> Character {
        Character {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn approx_eq(&self, other: &Character, tol: f64) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| (a - b).norm() <= tol)
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.values.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(serializer)
    }
}

/// Character of a representation on the classes of `classes`.
pub fn character_of<G: FiniteGroup, R: Representation<G> + ?Sized>(
    group: &G,
    rep: &R,
    classes: &ConjugacyClassTable,
) -> Character {
    Character {
        values: classes
            .representatives
            .iter()
            .map(|&i| rep.character_value(group, &group.elements()[i]))
            .collect(),
    }
}

/// (χ1, χ2) = (1/|G|) Σ_k |C_k| χ1(C_k) conj(χ2(C_k)).
pub fn char_inner_product(
    chi1: &Character,
    chi2: &Character,
    classes: &ConjugacyClassTable,
) -> Result<Complex64, RepsError> {
    if chi1.values.len() != classes.len() || chi2.values.len() != classes.len() {
        return Err(RepsError::ClassMismatch(chi1.values.len(), chi2.values.len()));
    }
    let sum: Complex64 = classes
        .sizes
        .iter()
        .zip(chi1.values.iter().zip(&chi2.values))
        .map(|(&size, (a, b))| re(size as f64) * a * b.conj())
        .sum();
    Ok(sum / classes.group_order as f64)
}

/// Irrep labels × conjugacy classes.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub labels: Vec<IrrepLabel>,
    pub dims: Vec<usize>,
    pub classes: ConjugacyClassTable,
    pub rows: Vec<Character>,
}

impl CharacterTable {
    pub fn row(&self, label: IrrepLabel) -> Option<&Character> {
        self.labels.iter().position(|l| *l == label).map(|i| &self.rows[i])
    }

    /// Gram matrix of the rows under the class inner product.
    pub fn gram(&self) -> Vec<Vec<Complex64>> {
        self.rows
            .iter()
            .map(|a| {
                self.rows
                    .iter()
                    .map(|b| char_inner_product(a, b, &self.classes).expect("same table"))
                    .collect()
            })
            .collect()
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.gram();
        let mut worst: f64 = 0.0;
        for (i, row) in g.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((z - want).norm());
            }
        }
        worst
    }

    /// Largest deviation from column orthogonality Σ_χ χ(C_i) conj(χ(C_j)) = δ_ij |G|/|C_i|.
    pub fn column_defect(&self) -> f64 {
        let k = self.classes.len();
        let mut worst: f64 = 0.0;
        for i in 0..k {
            for j in 0..k {
                let s: Complex64 = self.rows.iter().map(|r| r.values[i] * r.values[j].conj()).sum();
                let want = if i == j {
                    self.classes.group_order as f64 / self.classes.sizes[i] as f64
                } else {
                    0.0
                };
                worst = worst.max((s - want).norm());
            }
        }
        worst
    }

    /// CSV with class sizes in the second row.
    pub fn to_csv(&self, class_names: Option<&[String]>) -> String {
        self.to_csv_with(class_names, None)
    }

    /// [`Self::to_csv`] with the irrep column replaced by `row_names`.
    pub fn to_csv_with(&self, class_names: Option<&[String]>, row_names: Option<&[String]>) -> String {
        let quote = |f: &str| if f.contains(',') { format!("\"{f}\"") } else { f.to_string() };
        let k = self.classes.len();
        let names: Vec<String> = match class_names {
            Some(n) => n.to_vec(),
            None => (1..=k).map(|i| format!("C{i}")).collect(),
        };
        let mut out = String::new();
        out.push_str("irrep,dim,");
        out.push_str(&names.join(","));
        out.push('\n');
        out.push_str("class_size,,");
        out.push_str(&self.classes.sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","));
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            let name = row_names.map_or_else(|| self.labels[i].to_string(), |n| n[i].clone());
            out.push_str(&format!("{},{},", quote(&name), self.dims[i]));
            out.push_str(&row.values.iter().map(|z| format_value(*z)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    /// Copy with the classes permuted: new column c is old class `perm[c]`.
    pub fn permute_classes(&self, perm: &[usize]) -> CharacterTable {
        let mut inv = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let classes = ConjugacyClassTable {
            representatives: perm.iter().map(|&o| self.classes.representatives[o]).collect(),
            sizes: perm.iter().map(|&o| self.classes.sizes[o]).collect(),
            class_of: self.classes.class_of.iter().map(|&o| inv[o]).collect(),
            group_order: self.classes.group_order,
        };
        let rows = self
            .rows
            .iter()
            .map(|r| Character { values: perm.iter().map(|&o| r.values[o]).collect() })
            .collect();
        CharacterTable { labels: self.labels.clone(), dims: self.dims.clone(), classes, rows }
    }
}

/// Integers print as integers; everything else with 12 decimals.
pub fn format_value(z: Complex64) -> String {
    let fmt_real = |x: f64| {
        if (x - x.round()).abs() < 1e-9 {
            format!("{}", x.round() as i64)
        } else {
            format!("{x:.12}")
        }
    };
    if z.im.abs() < 1e-9 {
        fmt_real(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{}{}i", fmt_real(z.re), sign, fmt_real(z.im.abs()))
    }
}

/// Builds every irrep and takes traces on class representatives.
pub fn character_table(gp: &Gp) -> CharacterTable {
    character_table_with(gp, Exec::default())
}

pub fn character_table_with(gp: &Gp, exec: Exec) -> CharacterTable {
    let classes = conjugacy_classes(gp);
    let irreps = all_irreps(gp);
    let rows = par::map(exec, &irreps, |r| character_of(gp, r, &classes));
    CharacterTable {
        labels: irreps.iter().map(|r| r.label).collect(),
        dims: irreps.iter().map(|r| r.dim).collect(),
        classes,
        rows,
    }
}

/// Checks ρ(xy) = ρ(x)ρ(y) and unitarity on the given element-index pairs.
pub fn verify_homomorphism<G: FiniteGroup, R: Representation<G>>(
    group: &G,
    rep: &R,
    pairs: &[(usize, usize)],
    exec: Exec,
) -> Result<(), RepsError> {
    let els = group.elements();
    let label = rep.label().to_string();
    let images: Vec<CMatrix> = par::map(exec, els, |x| rep.eval(group, x));
    if let Some(x) = (0..els.len()).find(|&i| !is_unitary(&images[i], TAU)) {
        return Err(RepsError::NotUnitary { label, x });
    }
    let bad = par::find_first(exec, pairs.len(), |k| {
        let (i, j) = pairs[k];
        let xy = group.index_of(&group.multiply(&els[i], &els[j]));
        (!approx_eq(&images[xy], &(&images[i] * &images[j]), TAU)).then_some((i, j))
    });
    match bad {
        Some((x, y)) => Err(RepsError::NotHomomorphic { label, x, y }),
        None => Ok(()),
    }
}

/// All |G|² pairs.
pub fn all_pairs(order: usize) -> Vec<(usize, usize)> {
    (0..order).flat_map(|i| (0..order).map(move |j| (i, j))).collect()
}

/// Rows (triv, s, t, st, ρ, U1, U2, U3, U4) × columns (C1, …, C9) of the G_3 table.
pub const G3_REFERENCE_TABLE: [[i32; 9]; 9] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, -1, -1, -1, -1],
    [1, 1, 1, 1, -1, 1, 1, -1, -1],
    [1, 1, 1, 1, -1, -1, -1, 1, 1],
    [2, 2, 2, -2, 0, 0, 0, 0, 0],
    [4, 1, -2, 0, 0, -2, 1, 0, 0],
    [4, 1, -2, 0, 0, 2, -1, 0, 0],
    [4, -2, 1, 0, 0, 0, 0, -2, 1],
    [4, -2, 1, 0, 0, 0, 0, 2, -1],
];

/// Names of the reference rows.
pub const G3_REFERENCE_ROWS: [&str; 9] = ["triv", "s", "t", "st", "rho", "U1", "U2", "U3", "U4"];

/// Matching of the computed G_3 table against the reference one.
#[derive(Debug, Clone, Serialize)]
pub struct G3Alignment {
    /// Reference column c is computed class `columns[c]`.
    pub columns: [usize; 9],
    /// Reference row r is computed irrep `rows[r]`.
    pub rows: [usize; 9],
}

/// Finds the class matching with C1 = {e}, g1 ∈ C5 and g2 ∈ C9 that makes the
/// computed table equal the reference one, the named lifts matching their rows.
pub fn align_g3(gp: &Gp, table: &CharacterTable) -> Result<G3Alignment, RepsError> {
    if gp.p() != 3 || table.classes.len() != 9 || table.rows.len() != 9 {
        return Err(RepsError::NoAlignment);
    }
    let (g1, g2) = g3_generators(gp);
    let c_e = table.classes.class_of_element(gp, &gp.identity());
    let c_g1 = table.classes.class_of_element(gp, &g1);
    let c_g2 = table.classes.class_of_element(gp, &g2);
    let rest: Vec<usize> = (0..9).filter(|c| ![c_e, c_g1, c_g2].contains(c)).collect();
    if rest.len() != 6 {
        return Err(RepsError::NoAlignment);
    }
    let int_rows: Vec<Option<[i32; 9]>> = table
        .rows
        .iter()
        .map(|r| {
            let mut out = [0i32; 9];
            for (o, z) in out.iter_mut().zip(&r.values) {
                if z.im.abs() > CHAR_TOL || (z.re - z.re.round()).abs() > CHAR_TOL {
                    return None;
                }
                *o = z.re.round() as i32;
            }
            Some(out)
        })
        .collect();
    if int_rows.iter().any(Option::is_none) {
        return Err(RepsError::NoAlignment);
    }
    let int_rows: Vec<[i32; 9]> = int_rows.into_iter().map(Option::unwrap).collect();
    let named = [IrrepLabel::Triv, IrrepLabel::S, IrrepLabel::T, IrrepLabel::St, IrrepLabel::TwoDim(1)];

    for perm in permutations(&rest) {
        let mut columns = [0usize; 9];
        columns[0] = c_e;
        columns[4] = c_g1;
        columns[8] = c_g2;
        for (slot, &c) in [1usize, 2, 3, 5, 6, 7].iter().zip(&perm) {
            columns[*slot] = c;
        }
        let permuted: Vec<[i32; 9]> = int_rows
            .iter()
            .map(|r| {
                let mut o = [0; 9];
                for (k, &c) in columns.iter().enumerate() {
                    o[k] = r[c];
                }
                o
            })
            .collect();
        let mut rows = [usize::MAX; 9];
        let mut ok = true;
        for (ref_idx, ref_row) in G3_REFERENCE_TABLE.iter().enumerate() {
            let candidate = if ref_idx < 5 {
                table.labels.iter().position(|l| *l == named[ref_idx]).filter(|&i| permuted[i] == *ref_row)
            } else {
                (0..9).find(|&i| permuted[i] == *ref_row && !rows.contains(&i))
            };
            match candidate {
                Some(i) => rows[ref_idx] = i,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(G3Alignment { columns, rows });
        }
    }
    Err(RepsError::NoAlignment)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Zero character on a class table.
pub fn zero_character(classes: &ConjugacyClassTable) -> Character {
    Character { values: vec![ZERO; classes.len()] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::DihedralGroup;
    use crate::modp::make_context;

    fn gp(p: u64) -> Gp {
        Gp::new(make_context(p).unwrap())
    }

    #[test]
    fn census() {
        for p in [3u64, 5, 7] {
            let g = gp(p);
            let t = character_table(&g);
            let pp = p as usize;
            assert_eq!(t.rows.len(), 4 + (pp - 1) / 2 + 2 * (pp - 1));
            assert_eq!(t.rows.len(), t.classes.len());
            assert_eq!(t.dims.iter().map(|d| d * d).sum::<usize>(), g.order());
            assert!(t.orthonormality_defect() < 1e-9);
            assert!(t.column_defect() < 1e-9);
        }
    }

    #[test]
    fn g3_dims_and_u1_row() {
        let g = gp(3);
        let t = character_table(&g);
        assert_eq!(t.dims, vec![1, 1, 1, 1, 2, 4, 4, 4, 4]);
        let al = align_g3(&g, &t).unwrap();
        let u1 = &t.rows[al.rows[5]];
        let vals: Vec<f64> = al.columns.iter().map(|&c| u1.values[c].re.round()).collect();
        assert!(al.columns.iter().all(|&c| (u1.values[c].re - u1.values[c].re.round()).abs() < 1e-9));
        assert_eq!(vals, vec![4.0, 1.0, -2.0, 0.0, 0.0, -2.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn trivial_lift_is_one_everywhere() {
        let g = gp(3);
        let triv = lift_to_gp(DihedralIrrep { n: 4, label: IrrepLabel::Triv }, g.ctx()).unwrap();
        for x in g.elements() {
            assert_eq!(triv.evaluate(&g, x)[(0, 0)], re(1.0));
        }
        assert!(lift_to_gp(DihedralIrrep { n: 6, label: IrrepLabel::Triv }, g.ctx()).is_err());
    }

    #[test]
    fn p5_has_two_inequivalent_qubits() {
        let g = gp(5);
        let classes = conjugacy_classes(&g);
        let q = qubit_irreps(g.ctx());
        assert_eq!(q.len(), 2);
        let c1 = character_of(&g, &q[0], &classes);
        let c2 = character_of(&g, &q[1], &classes);
        assert!(char_inner_product(&c1, &c2, &classes).unwrap().norm() < 1e-12);
        assert!((char_inner_product(&c1, &c1, &classes).unwrap() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn every_irrep_of_g5_is_homomorphic() {
        let g = gp(5);
        let pairs = all_pairs(g.order());
        for r in &all_irreps(&g) {
            verify_homomorphism(&g, r, &pairs, Exec::default()).unwrap();
        }
    }

    #[test]
    fn d3_sigma2_squared_contains_sigma2_once() {
        let d3 = DihedralGroup::new(3);
        let classes = conjugacy_classes(&d3);
        let irreps = d3_irreps();
        let s2 = character_of(&d3, &irreps[2], &classes);
        let sq = s2.tensor(&s2);
        let vals: Vec<f64> = sq.values.iter().map(|z| z.re).collect();
        assert_eq!(vals, vec![4.0, 1.0, 0.0]);
        assert!((char_inner_product(&sq, &s2, &classes).unwrap() - 1.0).norm() < 1e-12);
        let t = character_of(&d3, &irreps[0], &classes);
        let s = character_of(&d3, &irreps[1], &classes);
        assert!(char_inner_product(&t, &s, &classes).unwrap().norm() < 1e-12);
    }

    #[test]
    fn inner_product_rejects_mismatched_tables() {
        let d3 = DihedralGroup::new(3);
        let classes = conjugacy_classes(&d3);
        let a = Character { values: vec![re(1.0); 2] };
        let b = Character { values: vec![re(1.0); 3] };
        assert!(char_inner_product(&a, &b, &classes).is_err());
    }

    #[test]
    fn csv_layout() {
        let t = character_table(&gp(3));
        let csv = t.to_csv(None);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2 + 9);
        assert!(lines[0].starts_with("irrep,dim,C1"));
        assert!(lines[1].starts_with("class_size,,1,"));
        assert!(lines.iter().any(|l| l.starts_with("\"ind(1,+)\",4,")));
        let named: Vec<String> = G3_REFERENCE_ROWS.iter().map(|s| s.to_string()).collect();
        let csv = t.to_csv_with(None, Some(&named));
        assert!(csv.lines().nth(10).unwrap().starts_with("U4,4,"));
        assert_eq!(format_value(Complex64::new(0.5, -0.25)), "0.500000000000-0.250000000000i");
    }
}
