//! Characters of N ≅ C_p², their H-orbits, and the (p+1)-dimensional induced irreps.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::RepsError;
use crate::group::{FiniteGroup, Gp, GpElement};
use crate::linalg::{CMatrix, ZERO};
use crate::modp::PrimeContext;

/// χ_{k1,k2}(c, d) = exp(2πi(k1·c + k2·d)/p).
pub fn n_character(ctx: &PrimeContext, k: (u32, u32), cd: (u32, u32)) -> Complex64 {
    let e = (k.0 as u64 * cd.0 as u64 + k.1 as u64 * cd.1 as u64) % ctx.p as u64;
    root_of_unity(ctx.p, e as u32)
}

/// exp(2πi·e/p).
pub fn root_of_unity(p: u32, e: u32) -> Complex64 {
    if e % p == 0 {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::from_polar(1.0, 2.0 * PI * (e % p) as f64 / p as f64)
}

/// All p² character labels (k1, k2), lexicographic.
pub fn np2_characters(ctx: &PrimeContext) -> Vec<(u32, u32)> {
    (0..ctx.p)
        .flat_map(|k1| (0..ctx.p).map(move |k2| (k1, k2)))
        .collect()
}

/// The label k' with χ_{k'}(n) = χ_k(h⁻¹ n h).
pub fn act_on_character(gp: &Gp, h: &GpElement, k: (u32, u32)) -> (u32, u32) {
    let ctx = gp.ctx();
    let hinv = gp.inverse(h);
    let conj = |c: u32, d: u32| {
        let n = GpElement { a: 1, b: 0, c, d, s: 1 };
        let m = gp.multiply(&gp.multiply(&hinv, &n), h);
        (m.c, m.d)
    };
    // columns of the linear map (c, d) ↦ (c', d')
    let (m00, m10) = conj(1, 0);
    let (m01, m11) = conj(0, 1);
    (
        ctx.add(ctx.mul(k.0, m00), ctx.mul(k.1, m10)),
        ctx.add(ctx.mul(k.0, m01), ctx.mul(k.1, m11)),
    )
}

/// Orbits of N-characters under H; the trivial orbit first, then by smallest member.
pub fn h_orbits(gp: &Gp) -> Vec<Vec<(u32, u32)>> {
    let h = gp.h_subgroup();
    let mut seen = std::collections::HashSet::new();
    let mut orbits = Vec::new();
    for k in np2_characters(gp.ctx()) {
        if seen.contains(&k) {
            continue;
        }
        let mut orbit: Vec<(u32, u32)> = h.iter().map(|x| act_on_character(gp, x, k)).collect();
        orbit.sort();
        orbit.dedup();
        seen.extend(orbit.iter().copied());
        orbits.push(orbit);
    }
    orbits
}

/// Data for Ind_{N⋊⟨h⟩}^{G_p} of χ_k extended by h ↦ ε.
#[derive(Debug, Clone)]
pub struct InducedData {
    pub k: (u32, u32),
    pub stabilizer: GpElement,
    pub eps: i8,
    pub coset_reps: Vec<GpElement>,
    /// H element ↦ (coset index i, whether it equals t_i·h).
    coset_of: HashMap<GpElement, (usize, bool)>,
}

impl InducedData {
    pub fn new(gp: &Gp, k: (u32, u32), eps: i8) -> Result<Self, RepsError> {
        if k == (0, 0) {
            return Err(RepsError::TrivialCharacter);
        }
        let h_set = gp.h_subgroup();
        let stab: Vec<GpElement> = h_set
            .iter()
            .copied()
            .filter(|x| *x != gp.identity() && act_on_character(gp, x, k) == k)
            .collect();
        let [h] = stab[..] else {
            return Err(RepsError::Stabilizer(k, stab.len() + 1));
        };
        let mut coset_of = HashMap::new();
        let mut coset_reps = Vec::new();
        for t in &h_set {
            if coset_of.contains_key(t) {
                continue;
            }
            let i = coset_reps.len();
            coset_reps.push(*t);
            coset_of.insert(*t, (i, false));
            coset_of.insert(gp.multiply(t, &h), (i, true));
        }
        Ok(InducedData { k, stabilizer: h, eps, coset_reps, coset_of })
    }

    pub fn dim(&self) -> usize {
        self.coset_reps.len()
    }

    /// Monomial matrix ρ(g)_{ij} = χ̃(t_i⁻¹ g t_j).
    pub fn eval(&self, gp: &Gp, g: &GpElement) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::from_element(n, n, ZERO);
        for (j, t_j) in self.coset_reps.iter().enumerate() {
            let y = gp.multiply(g, t_j);
            let (i, has_h) = self.coset_of[&y.h_part()];
            let z = gp.multiply(&gp.inverse(&self.coset_reps[i]), &y);
            let nz = if has_h { gp.multiply(&z, &self.stabilizer) } else { z };
            debug_assert!(nz.in_n());
            let mut val = n_character(gp.ctx(), self.k, (nz.c, nz.d));
            if has_h && self.eps < 0 {
                val = -val;
            }
            m[(i, j)] = val;
        }
        m
    }

    /// Character by the Frobenius formula, without building the matrix.
    pub fn character(&self, gp: &Gp, g: &GpElement) -> Complex64 {
        let mut acc = ZERO;
        for (j, t_j) in self.coset_reps.iter().enumerate() {
            let y = gp.multiply(g, t_j);
            let (i, has_h) = self.coset_of[&y.h_part()];
            if i != j {
                continue;
            }
            let z = gp.multiply(&gp.inverse(t_j), &y);
            let nz = if has_h { gp.multiply(&z, &self.stabilizer) } else { z };
            let mut val = n_character(gp.ctx(), self.k, (nz.c, nz.d));
            if has_h && self.eps < 0 {
                val = -val;
            }
            acc += val;
        }
        acc
    }
}
