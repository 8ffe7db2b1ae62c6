//! Irreducible representations of D_n.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{IrrepLabel, Representation, RepsError};
use crate::dihedral::{DihedralElement, DihedralGroup};
use crate::linalg::{from_real_rows, re, CMatrix};

/// An irrep of D_n, evaluated on normal forms xᵉ·rᵏ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DihedralIrrep {
    pub n: u32,
    pub label: IrrepLabel,
}

impl DihedralIrrep {
    pub fn dim(&self) -> usize {
        match self.label {
            IrrepLabel::TwoDim(_) => 2,
            _ => 1,
        }
    }

    fn sign_k(k: u32) -> f64 {
        if k % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Image of r.
    pub fn r_image(&self) -> CMatrix {
        self.eval_word(DihedralElement::rotation(1))
    }

    /// Image of x.
    pub fn x_image(&self) -> CMatrix {
        self.eval_word(DihedralElement::reflection(0))
    }

    /// σ(xᵉ rᵏ) = σ(x)ᵉ σ(r)ᵏ.
    pub fn eval_word(&self, w: DihedralElement) -> CMatrix {
        let k = w.k % self.n;
        let e = w.reflect;
        let scalar = |v: f64| CMatrix::from_element(1, 1, re(v));
        match self.label {
            IrrepLabel::Triv => scalar(1.0),
            IrrepLabel::S => scalar(if e { -1.0 } else { 1.0 }),
            IrrepLabel::T => scalar(Self::sign_k(k)),
            IrrepLabel::St => scalar(Self::sign_k(k) * if e { -1.0 } else { 1.0 }),
            IrrepLabel::TwoDim(j) => {
                let t = 2.0 * PI * (j as f64) * (k as f64) / (self.n as f64);
                let (s, c) = exact_sin_cos(t);
                let rot = from_real_rows(2, 2, &[c, -s, s, c]);
                if e {
                    from_real_rows(2, 2, &[1.0, 0.0, 0.0, -1.0]) * rot
                } else {
                    rot
                }
            }
            _ => unreachable!("not a dihedral label"),
        }
    }

    /// Closed-form character value.
    pub fn character_word(&self, w: DihedralElement) -> Complex64 {
        let k = w.k % self.n;
        match self.label {
            IrrepLabel::TwoDim(j) => {
                if w.reflect {
                    re(0.0)
                } else {
                    let t = 2.0 * PI * (j as f64) * (k as f64) / (self.n as f64);
                    re(2.0 * exact_sin_cos(t).1)
                }
            }
            _ => self.eval_word(w)[(0, 0)],
        }
    }
}

/// sin and cos with exact zeros and halves at multiples of π/6 and π/4.
pub(crate) fn exact_sin_cos(t: f64) -> (f64, f64) {
    let (s, c) = t.sin_cos();
    let snap = |x: f64| {
        for target in [0.0, 0.5, -0.5, 1.0, -1.0] {
            if (x - target).abs() < 1e-13 {
                return target;
            }
        }
        x
    };
    (snap(s), snap(c))
}

impl Representation<DihedralGroup> for DihedralIrrep {
    fn dim(&self) -> usize {
        DihedralIrrep::dim(self)
    }

    fn label(&self) -> IrrepLabel {
        self.label
    }

    fn eval(&self, _group: &DihedralGroup, x: &DihedralElement) -> CMatrix {
        self.eval_word(*x)
    }

    fn character_value(&self, _group: &DihedralGroup, x: &DihedralElement) -> Complex64 {
        self.character_word(*x)
    }
}

/// The 4 + (n−2)/2 irreps of D_n for even n ≥ 4.
pub fn dihedral_irreps(n: u32) -> Result<Vec<DihedralIrrep>, RepsError> {
    if n < 4 || n % 2 != 0 {
        return Err(RepsError::OddDihedral(n));
    }
    let mut out: Vec<DihedralIrrep> = [IrrepLabel::Triv, IrrepLabel::S, IrrepLabel::T, IrrepLabel::St]
        .into_iter()
        .map(|label| DihedralIrrep { n, label })
        .collect();
    out.extend((1..=(n - 2) / 2).map(|j| DihedralIrrep { n, label: IrrepLabel::TwoDim(j) }));
    Ok(out)
}

/// TRIV, SIGN and the two-dimensional σ₂ of D_3, with
/// σ₂(r) = [[−1/2, −√3/2], [√3/2, −1/2]] and σ₂(x) = diag(1, −1).
pub fn d3_irreps() -> Vec<DihedralIrrep> {
    vec![
        DihedralIrrep { n: 3, label: IrrepLabel::Triv },
        DihedralIrrep { n: 3, label: IrrepLabel::S },
        DihedralIrrep { n: 3, label: IrrepLabel::TwoDim(1) },
    ]
}

/// The printed σ₂(r) of D_3.
pub fn d3_sigma2_r() -> CMatrix {
    let h = 3f64.sqrt() / 2.0;
    from_real_rows(2, 2, &[-0.5, -h, h, -0.5])
}
