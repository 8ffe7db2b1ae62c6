//! Membership predicates for the named subgroups of G_3.
//!
//! Predicates read the residues (a, b, c, d, s) mod 3, with s ∈ {1, 2} and 2 ≡ −1.

use serde::Serialize;

use crate::group::{FiniteGroup, Gp, GpElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SubgroupLabel {
    N1,
    N2,
    N3,
    H1,
    H2,
    H3,
    H4,
    H5,
    K1,
    K2,
    K3,
    K4,
    K5,
    K6,
    K7,
    K8,
    K9,
    K10,
    K11,
    K12,
}

use SubgroupLabel::*;

pub const ALL_LABELS: [SubgroupLabel; 20] = [
    N1, N2, N3, H1, H2, H3, H4, H5, K1, K2, K3, K4, K5, K6, K7, K8, K9, K10, K11, K12,
];

/// Labels of the factorizing subgroups listed for U^{(2)} (orders 36, 18, 12).
pub const U2_FACTORIZING: [SubgroupLabel; 5] = [N1, H3, K7, K8, K9];

/// Labels of the order-12 factorizing subgroups listed for U^{(4)}.
pub const U4_FACTORIZING: [SubgroupLabel; 5] = [K1, K2, K3, K4, K6];

const CP: [(u32, u32); 3] = [(0, 1), (1, 2), (2, 0)];

fn neg(x: u32) -> u32 {
    (3 - x) % 3
}

fn pm(x: u32) -> bool {
    x == 1 || x == 2
}

fn in_n1(x: &GpElement) -> bool {
    (pm(x.a) && x.b == 0 && x.s == 1) || (x.a == 0 && pm(x.b) && x.s == 2)
}

impl SubgroupLabel {
    pub fn name(self) -> &'static str {
        match self {
            N1 => "N1",
            N2 => "N2",
            N3 => "N3",
            H1 => "H1",
            H2 => "H2",
            H3 => "H3",
            H4 => "H4",
            H5 => "H5",
            K1 => "K1",
            K2 => "K2",
            K3 => "K3",
            K4 => "K4",
            K5 => "K5",
            K6 => "K6",
            K7 => "K7",
            K8 => "K8",
            K9 => "K9",
            K10 => "K10",
            K11 => "K11",
            K12 => "K12",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        ALL_LABELS.iter().copied().find(|l| l.name().eq_ignore_ascii_case(s))
    }

    pub fn contains(self, x: &GpElement) -> bool {
        let (a, b, c, d, s) = (x.a, x.b, x.c, x.d, x.s);
        let abs = (a, b, s);
        match self {
            N1 => in_n1(x),
            N2 => s == 1,
            N3 => pm(a) && b == 0,
            H1 => a == 1 && b == 0,
            H2 => matches!(abs, (1, 0, 1) | (2, 0, 2)),
            H3 => b == 0 && s == 1,
            H4 => matches!(abs, (1, 0, 1) | (0, 1, 2)),
            H5 => matches!(abs, (1, 0, 1) | (0, 2, 2)),
            K1 => b == 0 && c == 0,
            K2 => b == 0 && matches!((a, c, s), (1, 0, 1) | (2, 0, 2) | (1, 1, 2) | (2, 2, 1)),
            K3 => b == 0 && matches!((a, c, s), (1, 0, 1) | (2, 0, 2) | (1, 2, 2) | (2, 1, 1)),
            K4 => b == 0 && d == 0,
            K5 => {
                let sa: i64 = if a == 1 { 1 } else { -1 };
                let ss: i64 = if s == 1 { 1 } else { -1 };
                b == 0 && d as i64 == (ss * (1 - sa)).rem_euclid(3)
            }
            K6 => b == 0 && ((a == 1 && d == 0) || (a == 2 && d == s)),
            K7 => in_n1(x) && c == d,
            K8 | K9 => {
                let (twisted_b, twisted_a) = if self == K8 {
                    ((c, d), (neg(c), neg(d)))
                } else {
                    ((neg(c), neg(d)), (c, d))
                };
                match abs {
                    (0, 1, 2) | (1, 0, 1) => c == d,
                    (0, 2, 2) => CP.contains(&twisted_b),
                    (2, 0, 1) => CP.contains(&twisted_a),
                    _ => false,
                }
            }
            K10 => matches!(abs, (1, 0, 1) | (2, 0, 1) | (0, 1, 2) | (0, 2, 2)) && (c + d) % 3 == 0,
            K11 | K12 => {
                let (at_b1, at_a2) = if self == K11 { (1, 2) } else { (2, 1) };
                match abs {
                    (0, 1, 2) => (c + d) % 3 == at_b1,
                    (0, 2, 2) | (1, 0, 1) => (c + d) % 3 == 0,
                    (2, 0, 1) => (c + d) % 3 == at_a2,
                    _ => false,
                }
            }
        }
    }

    /// Members in the canonical element order of G_3.
    pub fn members(self, gp: &Gp) -> Vec<GpElement> {
        assert_eq!(gp.p(), 3, "the catalog describes subgroups of G_3");
        gp.elements().iter().copied().filter(|x| self.contains(x)).collect()
    }
}

impl std::fmt::Display for SubgroupLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The catalog label whose member set equals `set` exactly.
pub fn identify(gp: &Gp, set: &[GpElement]) -> Option<SubgroupLabel> {
    let mut sorted = set.to_vec();
    sorted.sort();
    ALL_LABELS.iter().copied().find(|l| {
        let mut m = l.members(gp);
        m.sort();
        m == sorted
    })
}

/// Whether a subset of a finite group is closed under multiplication.
pub fn is_closed<G: FiniteGroup>(g: &G, set: &[G::Elem]) -> bool {
    let mut member = vec![false; g.order()];
    for x in set {
        member[g.index_of(x)] = true;
    }
    !set.is_empty()
        && set
            .iter()
            .all(|x| set.iter().all(|y| member[g.index_of(&g.multiply(x, y))]))
}
