//! The dihedral group D_n = ⟨r, x | rⁿ = x² = e, xrx = r⁻¹⟩.

use serde::Serialize;

use crate::group::FiniteGroup;

/// Normal form xᵉ·rᵏ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DihedralElement {
    pub reflect: bool,
    pub k: u32,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement { reflect: false, k: 0 };

    pub fn rotation(k: u32) -> Self {
        DihedralElement { reflect: false, k }
    }

    pub fn reflection(k: u32) -> Self {
        DihedralElement { reflect: true, k }
    }
}

impl std::fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.reflect, self.k) {
            (false, 0) => write!(f, "e"),
            (true, 0) => write!(f, "x"),
            (false, k) => write!(f, "r^{k}"),
            (true, k) => write!(f, "x r^{k}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DihedralGroup {
    n: u32,
    elements: Vec<DihedralElement>,
}

impl DihedralGroup {
    /// D_n of order 2n, for n ≥ 3.
    pub fn new(n: u32) -> Self {
        assert!(n >= 3, "D_n needs n >= 3");
        let elements = (0..2 * n)
            .map(|i| DihedralElement { reflect: i >= n, k: i % n })
            .collect();
        DihedralGroup { n, elements }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// (xᵉ¹rᵏ¹)(xᵉ²rᵏ²) = xᵉ¹⁺ᵉ² r^{(−1)^{e2} k1 + k2}.
    pub fn mul(&self, x: DihedralElement, y: DihedralElement) -> DihedralElement {
        let n = self.n;
        let k1 = if y.reflect { (n - x.k % n) % n } else { x.k % n };
        DihedralElement {
            reflect: x.reflect ^ y.reflect,
            k: (k1 + y.k) % n,
        }
    }

    pub fn inv(&self, x: DihedralElement) -> DihedralElement {
        if x.reflect {
            x
        } else {
            DihedralElement::rotation((self.n - x.k % self.n) % self.n)
        }
    }
}

impl FiniteGroup for DihedralGroup {
    type Elem = DihedralElement;

    fn elements(&self) -> &[DihedralElement] {
        &self.elements
    }

    fn index_of(&self, x: &DihedralElement) -> usize {
        (x.k % self.n) as usize + if x.reflect { self.n as usize } else { 0 }
    }

    fn multiply(&self, x: &DihedralElement, y: &DihedralElement) -> DihedralElement {
        self.mul(*x, *y)
    }

    fn inverse(&self, x: &DihedralElement) -> DihedralElement {
        self.inv(*x)
    }

    fn identity(&self) -> DihedralElement {
        DihedralElement::IDENTITY
    }

    fn generators(&self) -> Vec<DihedralElement> {
        vec![DihedralElement::rotation(1), DihedralElement::reflection(0)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conjugacy_classes;

    #[test]
    fn presentation_holds() {
        for n in 3..12 {
            let d = DihedralGroup::new(n);
            let r = DihedralElement::rotation(1);
            let x = DihedralElement::reflection(0);
            let xrx = d.mul(d.mul(x, r), x);
            assert_eq!(xrx, d.inv(r));
            assert_eq!(d.mul(x, x), DihedralElement::IDENTITY);
            let mut rn = DihedralElement::IDENTITY;
            for _ in 0..n {
                rn = d.mul(rn, r);
            }
            assert_eq!(rn, DihedralElement::IDENTITY);
        }
    }

    #[test]
    fn associativity_exhaustive_small() {
        let d = DihedralGroup::new(6);
        for a in d.elements() {
            for b in d.elements() {
                for c in d.elements() {
                    assert_eq!(d.mul(d.mul(*a, *b), *c), d.mul(*a, d.mul(*b, *c)));
                }
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(conjugacy_classes(&DihedralGroup::new(3)).len(), 3);
        // n even: (n+6)/2 classes
        assert_eq!(conjugacy_classes(&DihedralGroup::new(4)).len(), 5);
        assert_eq!(conjugacy_classes(&DihedralGroup::new(8)).len(), 7);
    }
}
