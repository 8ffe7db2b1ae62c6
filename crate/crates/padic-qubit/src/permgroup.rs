//! Permutation groups via a deterministic Schreier–Sims stabilizer chain.

/// A permutation of `0..n`, stored as the image of each point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    /// Smallest moved point.
    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().position(|(i, &x)| i as u32 != x)
    }
}

#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    gens: Vec<Perm>,
    /// transversal[b] maps the base point to b.
    transversal: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Perm::identity(degree));
        Level { base_point, gens: Vec::new(), transversal, orbit: vec![base_point] }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Perm::identity(degree));
        self.orbit = vec![self.base_point];
        let mut head = 0;
        while head < self.orbit.len() {
            let b = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let c = s.apply(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().expect("orbit point").then(s);
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                }
            }
        }
    }
}

/// Base and strong generating set of a permutation group.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(gens: &[Perm], degree: usize) -> Self {
        let mut chain = StabilizerChain { degree, levels: Vec::new() };
        let gens: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in &gens {
            assert_eq!(g.degree(), degree, "generator degree");
        }
        if gens.is_empty() {
            return chain;
        }
        // every generator must move some base point
        for g in &gens {
            if chain.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
                let b = g.first_moved().expect("non-identity");
                chain.levels.push(Level::new(b, degree));
            }
        }
        for g in &gens {
            for i in 0..chain.levels.len() {
                chain.levels[i].gens.push(g.clone());
                if g.apply(chain.levels[i].base_point) != chain.levels[i].base_point {
                    break;
                }
            }
        }
        for l in chain.levels.iter_mut() {
            l.rebuild_orbit();
        }
        chain.complete();
        chain
    }

    /// Sifts `g` from level `start`; returns the residue and the level where sifting stopped.
    fn sift(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.apply(level.base_point);
            match &level.transversal[b] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            let mut restart = None;
            'scan: for oi in 0..self.levels[lvl].orbit.len() {
                let b = self.levels[lvl].orbit[oi];
                for si in 0..self.levels[lvl].gens.len() {
                    let s = self.levels[lvl].gens[si].clone();
                    let ub = self.levels[lvl].transversal[b].clone().expect("orbit point");
                    let c = s.apply(b);
                    let uc = self.levels[lvl].transversal[c].clone().expect("orbit is closed");
                    let schreier = ub.then(&s).then(&uc.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift(&schreier, lvl + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        if j == self.levels.len() {
                            let b = h.first_moved().expect("non-identity residue");
                            self.levels.push(Level::new(b, self.degree));
                        }
                        for l in lvl + 1..=j {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].rebuild_orbit();
                        }
                        restart = Some(j + 1);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(r) => i = r,
                None => i -= 1,
            }
        }
    }

    /// Group order as the product of the basic orbit lengths.
    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && {
            let (h, j) = self.sift(g, 0);
            j == self.levels.len() && h.is_identity()
        }
    }
}
