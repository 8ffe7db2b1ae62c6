//! Printed matrices of the G_3 gate analysis, built from exact (cos, sin) phases.
//!
//! `e(t)` is e^{iπt}; every phase in this file is a multiple of π/6, so the
//! entries are exact up to the rounding of √2 and √3.

use crate::linalg::{c, exp_i_pi, from_columns, from_rows, re, CMatrix, CVector, I, ONE, ZERO};

fn e(t: f64) -> num_complex::Complex64 {
    exp_i_pi(t)
}

fn r2() -> f64 {
    2f64.sqrt()
}

fn r3() -> f64 {
    3f64.sqrt()
}

fn col(entries: [num_complex::Complex64; 4]) -> CVector {
    CVector::from_column_slice(&entries)
}

/// Images of the two G_3 generators in the representation U^{(2)}, as returned by GAP.
pub fn u2_generator_images() -> [CMatrix; 2] {
    let h = re(0.5);
    let s = re(1.0 / r2());
    let g1 = from_rows(
        4,
        4,
        &[
            e(1.0 / 3.0) * h, e(-5.0 / 6.0) * h, ZERO, e(-2.0 / 3.0) * s,
            I * h, e(-2.0 / 3.0) * h, ZERO, I * s,
            e(-2.0 / 3.0) * s, e(-5.0 / 6.0) * s, ZERO, ZERO,
            ZERO, ZERO, -ONE, ZERO,
        ],
    );
    let g2 = from_rows(
        4,
        4,
        &[
            ZERO, ZERO, e(2.0 / 3.0) * s, s,
            ZERO, ZERO, e(5.0 / 6.0) * s, e(-5.0 / 6.0) * s,
            e(2.0 / 3.0) * s, I * s, ZERO, ZERO,
            e(2.0 / 3.0) * s, -I * s, ZERO, ZERO,
        ],
    );
    [g1, g2]
}

/// Images of the two G_3 generators in the representation U^{(4)}, as returned by GAP.
pub fn u4_generator_images() -> [CMatrix; 2] {
    let h = 0.5;
    let t = r3() / 2.0;
    let g1 = crate::linalg::from_real_rows(
        4,
        4,
        &[
            0.0, -h, -t, 0.0,
            1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, -1.0,
            0.0, t, -h, 0.0,
        ],
    );
    let g2 = crate::linalg::from_real_rows(
        4,
        4,
        &[
            1.0, 0.0, 0.0, 0.0,
            0.0, -h, t, 0.0,
            0.0, -t, -h, 0.0,
            0.0, 0.0, 0.0, -1.0,
        ],
    );
    [g1, g2]
}

/// Eigenbasis in which U^{(2)}(H_3) consists of Kronecker products (columns v1..v4).
pub fn basis_b38() -> CMatrix {
    let s = 1.0 / r2();
    from_columns(&[
        col([ZERO, ZERO, ONE, ZERO]),
        col([ZERO, ZERO, ZERO, -I]),
        col([e(-1.0 / 6.0) * s, re(s), ZERO, ZERO]),
        col([e(5.0 / 6.0) * s, re(s), ZERO, ZERO]),
    ])
}

/// Real basis in which U^{(4)}(K_3) consists of Kronecker products.
pub fn basis_b1() -> CMatrix {
    let t = r3() / 2.0;
    from_columns(&[
        col([re(-t), ZERO, ZERO, re(0.5)]),
        col([re(0.5), ZERO, ZERO, re(t)]),
        col([ZERO, ZERO, ONE, ZERO]),
        col([ZERO, ONE, ZERO, ZERO]),
    ])
}

/// Basis in which U^{(4)}(K_4) consists of Kronecker products.
pub fn basis_b40() -> CMatrix {
    let s = 1.0 / r2();
    from_columns(&[
        col([c(0.0, -s), ZERO, ZERO, re(s)]),
        col([ZERO, c(0.0, s), re(s), ZERO]),
        col([c(0.0, s), ZERO, ZERO, re(s)]),
        col([ZERO, c(0.0, -s), re(s), ZERO]),
    ])
}

/// U_10: the image of g1 after rebasing U^{(2)} by [`basis_b38`].
pub fn u10() -> CMatrix {
    from_rows(
        4,
        4,
        &[
            ZERO, ZERO, e(-5.0 / 6.0), ZERO,
            -I, ZERO, ZERO, ZERO,
            ZERO, ZERO, ZERO, e(-2.0 / 3.0),
            ZERO, ONE, ZERO, ZERO,
        ],
    )
}

/// U_4: the image of g2 after rebasing U^{(2)} by [`basis_b38`].
pub fn u4() -> CMatrix {
    from_rows(
        4,
        4,
        &[
            ZERO, ZERO, I, ZERO,
            ZERO, ZERO, ZERO, ONE,
            e(5.0 / 6.0), ZERO, ZERO, ZERO,
            ZERO, e(2.0 / 3.0), ZERO, ZERO,
        ],
    )
}

/// Generator images of U^{(4)} after rebasing by [`basis_b1`].
pub fn u4_wrt_b1_images() -> [CMatrix; 2] {
    let h = 0.5;
    let t = r3() / 2.0;
    let g1 = crate::linalg::from_real_rows(
        4,
        4,
        &[
            0.0, 0.0, h, t,
            0.0, 0.0, -t, h,
            -h, -t, 0.0, 0.0,
            -t, h, 0.0, 0.0,
        ],
    );
    let g2 = crate::linalg::from_real_rows(
        4,
        4,
        &[
            h, -t, 0.0, 0.0,
            -t, -h, 0.0, 0.0,
            0.0, 0.0, -h, -t,
            0.0, 0.0, t, -h,
        ],
    );
    [g1, g2]
}

pub fn swap() -> CMatrix {
    crate::linalg::from_real_rows(
        4,
        4,
        &[
            1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
        ],
    )
}

/// A = diag(1, e^{2πi/3}).
pub fn gate_a() -> CMatrix {
    from_rows(2, 2, &[ONE, ZERO, ZERO, e(2.0 / 3.0)])
}

/// B = [[0, 1], [e^{5πi/6}, 0]].
pub fn gate_b() -> CMatrix {
    from_rows(2, 2, &[ZERO, ONE, e(5.0 / 6.0), ZERO])
}

pub fn gate_x() -> CMatrix {
    from_rows(2, 2, &[ZERO, ONE, ONE, ZERO])
}

/// S = [[−1/2, √3/2], [√3/2, 1/2]].
pub fn gate_s() -> CMatrix {
    let t = r3() / 2.0;
    crate::linalg::from_real_rows(2, 2, &[-0.5, t, t, 0.5])
}

/// CZ~ = diag(−1, 1, 1, 1).
pub fn gate_cz_tilde() -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(&[-ONE, ONE, ONE, ONE]))
}

/// Antidiagonal [[0, 1], [e^{−2πi/3}, 0]] of the third gate set.
pub fn gate_y_b40() -> CMatrix {
    from_rows(2, 2, &[ZERO, ONE, e(-2.0 / 3.0), ZERO])
}

/// The real two-qubit gate of the third gate set.
pub fn gate_m_b40() -> CMatrix {
    crate::linalg::from_real_rows(
        4,
        4,
        &[
            0.0, 0.0, -1.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            -1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
        ],
    )
}
