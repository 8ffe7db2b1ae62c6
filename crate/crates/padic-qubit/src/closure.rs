//! Breadth-first closure of a finite set of matrices under multiplication.

use std::collections::HashMap;

use crate::linalg::{identity, CMatrix};

/// Default hashing grid for matrix entries.
pub const GRID: f64 = 1e-6;

/// Whether keys distinguish matrices that differ by a global phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyMode {
    Exact,
    /// Keys of the matrix rescaled so its first non-negligible entry is real positive.
    Projective,
}

/// Entries rounded to the grid, real parts then imaginary parts, row-major.
pub fn grid_key(m: &CMatrix, mode: KeyMode, grid: f64) -> Vec<i64> {
    let scaled;
    let m = match mode {
        KeyMode::Exact => m,
        KeyMode::Projective => {
            let pivot = m.transpose().iter().copied().find(|z| z.norm() > 1e3 * grid);
            scaled = match pivot {
                Some(z) => m * (z.conj() / z.norm()),
                None => m.clone(),
            };
            &scaled
        }
    };
    let snap = |x: f64| {
        let k = (x / grid).round() as i64;
        if k == 0 { 0 } else { k }
    };
    let mut key = Vec::with_capacity(2 * m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            key.push(snap(m[(i, j)].re));
            key.push(snap(m[(i, j)].im));
        }
    }
    key
}

/// Result of a capped closure run.
#[derive(Debug, Clone)]
pub struct ClosureRun {
    /// Elements in discovery order, identity first.
    pub elements: Vec<CMatrix>,
    /// False when the cap stopped the search.
    pub complete: bool,
    /// For each element after the identity: the element and generator index it came from.
    pub parents: Vec<Option<(usize, usize)>>,
}

impl ClosureRun {
    /// Generator indices whose left-to-right product is element `i`.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = i;
        while let Some((p, g)) = self.parents[cur] {
            w.push(g);
            cur = p;
        }
        w.reverse();
        w
    }
}

/// Index of distinct matrices under [`grid_key`].
#[derive(Debug, Default, Clone)]
pub struct MatrixSet {
    index: HashMap<Vec<i64>, usize>,
    mode: Option<KeyMode>,
}

impl MatrixSet {
    pub fn new(mode: KeyMode) -> Self {
        MatrixSet { index: HashMap::new(), mode: Some(mode) }
    }

    pub fn from_matrices(ms: &[CMatrix], mode: KeyMode) -> Self {
        let mut s = Self::new(mode);
        for m in ms {
            s.insert(m);
        }
        s
    }

    fn key(&self, m: &CMatrix) -> Vec<i64> {
        grid_key(m, self.mode.unwrap_or(KeyMode::Exact), GRID)
    }

    /// Inserts and returns true if the matrix was new.
    pub fn insert(&mut self, m: &CMatrix) -> bool {
        let k = self.key(m);
        let n = self.index.len();
        match self.index.entry(k) {
            std::collections::hash_map::Entry::Occupied(_) => false,
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(n);
                true
            }
        }
    }

    pub fn contains(&self, m: &CMatrix) -> bool {
        self.index.contains_key(&self.key(m))
    }

    /// Insertion index of a matrix in the set.
    pub fn position(&self, m: &CMatrix) -> Option<usize> {
        self.index.get(&self.key(m)).copied()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}

/// Closure of `gens` under right multiplication, stopping once `cap` elements are known.
pub fn bfs_closure(gens: &[CMatrix], cap: usize, mode: KeyMode) -> ClosureRun {
    let n = gens.first().map_or(1, |g| g.nrows());
    let mut seen = MatrixSet::new(mode);
    let e = identity(n);
    seen.insert(&e);
    let mut elements = vec![e];
    let mut parents = vec![None];
    let mut head = 0;
    while head < elements.len() {
        for (gi, g) in gens.iter().enumerate() {
            let y = &elements[head] * g;
            if seen.insert(&y) {
                elements.push(y);
                parents.push(Some((head, gi)));
                if elements.len() >= cap {
                    return ClosureRun { elements, complete: false, parents };
                }
            }
        }
        head += 1;
    }
    ClosureRun { elements, complete: true, parents }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{exp_i_pi, from_rows, ONE, ZERO};

    #[test]
    fn cyclic_closure() {
        let g = from_rows(2, 2, &[ONE, ZERO, ZERO, exp_i_pi(2.0 / 3.0)]);
        let run = bfs_closure(&[g.clone()], 100, KeyMode::Exact);
        assert!(run.complete);
        assert_eq!(run.elements.len(), 3);
        let phase = g * exp_i_pi(0.25);
        let run = bfs_closure(&[phase], 100, KeyMode::Projective);
        assert_eq!(run.elements.len(), 3);
    }

    #[test]
    fn cap_stops_search() {
        let g = from_rows(1, 1, &[exp_i_pi(2f64.sqrt())]);
        let run = bfs_closure(&[g], 50, KeyMode::Exact);
        assert!(!run.complete);
        assert_eq!(run.elements.len(), 50);
    }

    #[test]
    fn words_rebuild_elements() {
        let a = from_rows(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let b = from_rows(2, 2, &[ONE, ZERO, ZERO, exp_i_pi(0.5)]);
        let gens = [a, b];
        let run = bfs_closure(&gens, 100, KeyMode::Exact);
        assert_eq!(run.elements.len(), 32);
        for (i, m) in run.elements.iter().enumerate() {
            let w = run.word(i);
            let prod = w.iter().fold(crate::linalg::identity(2), |acc, &g| acc * &gens[g]);
            assert!(crate::linalg::approx_eq(&prod, m, 1e-12));
        }
    }
}
