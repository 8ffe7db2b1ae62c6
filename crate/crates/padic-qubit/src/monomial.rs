//! Monomial unitaries over roots of unity, as permutations and as compact BFS states.
//!
//! A monomial matrix with M[π(j), j] = ω^{e_j}, ω = e^{2πi/N}, acts faithfully on the
//! d·N points (j, t) ↔ ω^t e_j, which turns group orders into a permutation-group question.

use std::collections::HashSet;

use crate::linalg::CMatrix;
use crate::permgroup::{Perm, StabilizerChain};

/// Largest root-of-unity order tried when reading phases.
pub const MAX_ROOT_ORDER: u32 = 360;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    /// Column j has its nonzero entry in row perm[j].
    pub perm: Vec<u8>,
    /// That entry is ω^{phase[j]}.
    pub phase: Vec<u16>,
}

impl Monomial {
    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Monomial, roots: u32) -> Monomial {
        let d = self.dim();
        let mut perm = vec![0u8; d];
        let mut phase = vec![0u16; d];
        for j in 0..d {
            let k = other.perm[j] as usize;
            perm[j] = self.perm[k];
            phase[j] = ((other.phase[j] as u32 + self.phase[k] as u32) % roots) as u16;
        }
        Monomial { perm, phase }
    }

    pub fn identity(d: usize) -> Self {
        Monomial { perm: (0..d as u8).collect(), phase: vec![0; d] }
    }

    /// The permutation of the points (j, t) ↦ (π(j), t + e_j).
    pub fn to_perm(&self, roots: u32) -> Perm {
        let n = roots as usize;
        let mut img = vec![0u32; self.dim() * n];
        for j in 0..self.dim() {
            for t in 0..n {
                let tt = (t + self.phase[j] as usize) % n;
                img[j * n + t] = (self.perm[j] as usize * n + tt) as u32;
            }
        }
        Perm(img)
    }
}

/// Exponent k/n of a unit complex number z = e^{2πik/n} with n ≤ `max_order`.
fn root_exponent(z: num_complex::Complex64, max_order: u32) -> Option<(u32, u32)> {
    if (z.norm() - 1.0).abs() > 1e-9 {
        return None;
    }
    let turns = z.arg().rem_euclid(std::f64::consts::TAU) / std::f64::consts::TAU;
    (1..=max_order).find_map(|n| {
        let k = turns * n as f64;
        let r = k.round();
        ((k - r).abs() < 1e-7).then_some(((r as u32) % n, n))
    })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Reads a set of matrices as monomials over a common root-of-unity order N.
pub fn as_monomials(mats: &[CMatrix]) -> Option<(Vec<Monomial>, u32)> {
    let d = mats.first()?.nrows();
    if d > u8::MAX as usize {
        return None;
    }
    let mut entries: Vec<Vec<(u8, u32, u32)>> = Vec::with_capacity(mats.len());
    let mut roots = 1u32;
    for m in mats {
        if m.shape() != (d, d) {
            return None;
        }
        let mut cols = Vec::with_capacity(d);
        let mut rows_used = vec![false; d];
        for j in 0..d {
            let nz: Vec<usize> = (0..d).filter(|&i| m[(i, j)].norm() > 1e-9).collect();
            let [i] = nz[..] else { return None };
            if rows_used[i] {
                return None;
            }
            rows_used[i] = true;
            let (k, n) = root_exponent(m[(i, j)], MAX_ROOT_ORDER)?;
            roots = roots / gcd(roots, n) * n;
            if roots > MAX_ROOT_ORDER {
                return None;
            }
            cols.push((i as u8, k, n));
        }
        entries.push(cols);
    }
    let monos = entries
        .into_iter()
        .map(|cols| Monomial {
            perm: cols.iter().map(|c| c.0).collect(),
            phase: cols.iter().map(|&(_, k, n)| (k * (roots / n)) as u16).collect(),
        })
        .collect();
    Some((monos, roots))
}

/// Exact order of the group generated by monomial matrices, via a stabilizer chain.
pub fn monomial_group_order(mats: &[CMatrix]) -> Option<u128> {
    let (monos, roots) = as_monomials(mats)?;
    let degree = monos.first().map_or(0, |m| m.dim()) * roots as usize;
    let perms: Vec<Perm> = monos.iter().map(|m| m.to_perm(roots)).collect();
    Some(StabilizerChain::new(&perms, degree).order())
}

/// Breadth-first enumeration on (permutation, phase) pairs; `None` if not monomial or over the cap.
pub fn monomial_bfs_order(mats: &[CMatrix], cap: usize) -> Option<usize> {
    let (monos, roots) = as_monomials(mats)?;
    let d = monos.first()?.dim();
    let e = Monomial::identity(d);
    let mut seen: HashSet<Monomial> = HashSet::new();
    seen.insert(e.clone());
    let mut frontier = vec![e];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &monos {
                let y = x.mul(g, roots);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return None;
                    }
                    seen.insert(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Some(seen.len())
}
