//! Acceptance run: one PASS/FAIL line per criterion; exits non-zero if any fails.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use padic_qubit::clebsch::{
    cg_closed_form, cg_multiplicities, coupled_basis, equal_up_to_column_phases, su2_coupled_basis, t2,
    verify_block_diagonal,
};
use padic_qubit::closure::{bfs_closure, KeyMode};
use padic_qubit::dihedral::DihedralGroup;
use padic_qubit::entangle::{
    analyze_decomposition, bell_states, partial_trace, ppt_separable, schmidt, DensityOperator, PureState2x2, Subsystem,
};
use padic_qubit::gates::{
    coset_report, factorize_report, factorizing_subgroup_search, rep_image, BasisChoice, ColumnPairing, RepChoice,
};
use padic_qubit::group::{conjugacy_classes, g3_generators, FiniteGroup, Gp, GpElement};
use padic_qubit::linalg::{c, identity, max_abs_diff, CMatrix, CVector, RMatrix};
use padic_qubit::modp::make_context;
use padic_qubit::monomial::{monomial_bfs_order, monomial_group_order};
use padic_qubit::par::Exec;
use padic_qubit::reps::{align_g3, all_irreps, character_table, d3_irreps, qubit_irreps, IrrepLabel, G3_REFERENCE_TABLE};
use padic_qubit::universality::{
    closure_verdict, embed_gate_set, givens_decompose, givens_recompose, real_encode, verify_universality,
    ClosureVerdict, NamedMatrix, NamedSet, UniversalityOptions,
};

const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn gp(p: u64) -> Gp {
    Gp::new(make_context(p).expect("prime"))
}

fn group_orders() -> Outcome {
    let start = Instant::now();
    for p in PRIMES {
        let g = gp(p);
        let want = 2 * p * p * (p + 1);
        ensure(g.order() as u64 == want, || format!("|G_{p}| = {}, expected {want}", g.order()))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2} s"))?;
    Ok(format!("2p²(p+1) for p = 3..13 in {secs:.2} s"))
}

fn g3_table() -> Outcome {
    let g = gp(3);
    let table = character_table(&g);
    let al = align_g3(&g, &table).map_err(|e| e.to_string())?;
    let classes = conjugacy_classes(&g);
    let (g1, g2) = g3_generators(&g);
    let id_class = classes.class_of[g.index_of(&GpElement::identity())];
    ensure(al.columns[0] == id_class, || "C1 is not the identity class".into())?;
    ensure(al.columns[4] == classes.class_of[g.index_of(&g1)], || "g1 not in C5".into())?;
    ensure(al.columns[8] == classes.class_of[g.index_of(&g2)], || "g2 not in C9".into())?;
    let dims: Vec<usize> = al.rows.iter().map(|&r| table.dims[r]).collect();
    ensure(dims == [1, 1, 1, 1, 2, 4, 4, 4, 4], || format!("dims {dims:?}"))?;
    for (r, ref_row) in G3_REFERENCE_TABLE.iter().enumerate() {
        for (col, &want) in ref_row.iter().enumerate() {
            let z = table.rows[al.rows[r]].values[al.columns[col]];
            let exact = z.im.abs() < 1e-9 && (z.re - want as f64).abs() < 1e-9;
            ensure(exact, || format!("entry ({r}, {col}) = {z}, expected {want}"))?;
        }
    }
    Ok("9×9 integer table equal after class matching".into())
}

fn irrep_census() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in PRIMES {
        let g = gp(p);
        let table = character_table(&g);
        let count = table.labels.len() as u64;
        let want = 4 + (p - 1) / 2 + 2 * (p - 1);
        ensure(count == want, || format!("p = {p}: {count} irreps, expected {want}"))?;
        let sq: usize = table.dims.iter().map(|d| d * d).sum();
        ensure(sq == g.order(), || format!("p = {p}: Σdim² = {sq}"))?;
        let irreps = all_irreps(&g);
        ensure(irreps.len() as u64 == want, || format!("p = {p}: constructed {} irreps", irreps.len()))?;
        let d = table.orthonormality_defect();
        worst = worst.max(d);
        ensure(d <= 1e-6, || format!("p = {p}: orthonormality defect {d:e}"))?;
    }
    Ok(format!("counts and Σdim² for p = 3..13, max defect {worst:.1e}"))
}

fn cg_closed_forms() -> Outcome {
    let mut cases = 0;
    for n in (4..=32).step_by(2) {
        for j in 1..n / 2 {
            for l in 1..n / 2 {
                let by_characters = cg_multiplicities(n, j, l).map_err(|e| e.to_string())?;
                let closed = cg_closed_form(n, j, l).map_err(|e| e.to_string())?;
                ensure(by_characters == closed, || format!("D_{n} ({j}, {l}): {by_characters:?} vs {closed:?}"))?;
                cases += 1;
            }
        }
    }
    use IrrepLabel::*;
    let specific = [
        (4, 1, 1, vec![(Triv, 1), (S, 1), (T, 1), (St, 1)]),
        (6, 1, 1, vec![(Triv, 1), (S, 1), (TwoDim(2), 1)]),
        (8, 1, 2, vec![(TwoDim(1), 1), (TwoDim(3), 1)]),
    ];
    for (n, j, l, want) in specific {
        let got = cg_multiplicities(n, j, l).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("D_{n} ({j}, {l}): {got:?}"))?;
    }
    Ok(format!("{cases} (n, j, l) cases, zero mismatches"))
}

/// Columns of T are (φ+, ψ−, φ−, ψ+) up to phase.
fn columns_are_bell(t: &CMatrix) -> bool {
    let bell = bell_states();
    [0, 3, 1, 2].iter().enumerate().all(|(k, &i)| {
        let b = &bell[i];
        let col: CVector = t.column(k).into_owned();
        let overlap = b.amplitudes().dotc(&col).norm();
        (overlap - 1.0).abs() < 1e-9
    })
}

fn coupled_bases() -> Outcome {
    let d3 = DihedralGroup::new(3);
    let irreps = d3_irreps();
    let dec = coupled_basis(&d3, &irreps[2], &irreps[2], &irreps).map_err(|e| e.to_string())?;
    verify_block_diagonal(&dec, &d3, &irreps[2], &irreps[2], &irreps).map_err(|e| e.to_string())?;
    ensure(equal_up_to_column_phases(&dec.basis_change, &t2(), 1e-9), || "D_3 surrogate differs from T_2".into())?;
    ensure(columns_are_bell(&dec.basis_change), || "D_3 columns are not the Bell frame".into())?;
    let mut cases = 1;
    for p in [3u64, 5, 7] {
        let g = gp(p);
        let all = all_irreps(&g);
        let q = qubit_irreps(g.ctx());
        for j in 0..q.len() {
            for l in 0..q.len() {
                let dec = coupled_basis(&g, &q[j], &q[l], &all).map_err(|e| e.to_string())?;
                verify_block_diagonal(&dec, &g, &q[j], &q[l], &all).map_err(|e| e.to_string())?;
                let ok = equal_up_to_column_phases(&dec.basis_change, &t2(), 1e-9) && columns_are_bell(&dec.basis_change);
                ensure(ok, || format!("p = {p} ({}, {}) is not T_2", j + 1, l + 1))?;
                cases += 1;
            }
        }
    }
    Ok(format!("T = T_2 up to column phases in {cases} cases (p = 2 surrogate, 3, 5, 7)"))
}

fn entanglement() -> Outcome {
    let half = identity(2) / c(2.0, 0.0);
    let mut blocks = 0;
    for p in PRIMES {
        let g = gp(p);
        let all = all_irreps(&g);
        let q = qubit_irreps(g.ctx());
        for j in 0..q.len() {
            for l in j..q.len() {
                let dec = coupled_basis(&g, &q[j], &q[l], &all).map_err(|e| e.to_string())?;
                analyze_decomposition(&dec).map_err(|e| format!("p = {p}: {e}"))?;
                for (k, b) in dec.blocks.iter().enumerate() {
                    let rho = DensityOperator::normalized_projector(&dec.block_projector(k)).map_err(|e| e.to_string())?;
                    if b.dim == 1 {
                        let a = max_abs_diff(&partial_trace(&rho, Subsystem::A), &half);
                        let bb = max_abs_diff(&partial_trace(&rho, Subsystem::B), &half);
                        ensure(a.max(bb) <= 1e-9, || format!("p = {p} singlet {}: reduced defect {:e}", b.label, a.max(bb)))?;
                    } else {
                        ensure(ppt_separable(&rho).separable, || format!("p = {p} block {} fails PPT", b.label))?;
                    }
                    blocks += 1;
                }
            }
        }
    }
    let su2 = su2_coupled_basis();
    let report = analyze_decomposition(&su2).map_err(|e| e.to_string())?;
    let singlet = report.blocks.iter().find(|b| b.dim == 1).ok_or("no singlet")?;
    let triplet = report.blocks.iter().find(|b| b.dim == 3).ok_or("no triplet")?;
    ensure(singlet.max_entangled, || "SU(2) singlet not maximally entangled".into())?;
    ensure(triplet.projector_separable, || "SU(2) triplet projector not separable".into())?;
    ensure(singlet.label == "spin(0)" && triplet.label == "spin(1)", || "SU(2) labels".into())?;
    Ok(format!("{blocks} blocks over p ∈ {{3,5,7,11,13}} plus the 1⊕3 reference"))
}

fn factorization() -> Outcome {
    let g = gp(3);
    let exec = Exec::default();
    for rep in [RepChoice::U2, RepChoice::U4] {
        let image = rep_image(&g, rep, BasisChoice::Gap).map_err(|e| e.to_string())?;
        let r = factorize_report(&image, exec);
        ensure(r.spectrally_unfactorizable.len() == 18, || format!("{rep:?}: {} unfactorizable", r.spectrally_unfactorizable.len()))?;
    }
    let image = rep_image(&g, RepChoice::U2, BasisChoice::B38).map_err(|e| e.to_string())?;
    let r = factorize_report(&image, exec);
    ensure(r.entangling == 36, || format!("{} entangling in b38", r.entangling))?;
    let cosets = coset_report(&g, &image, exec).map_err(|e| e.to_string())?;
    let sizes: Vec<usize> = cosets.cosets.iter().map(|c| c.size).collect();
    ensure(sizes == [18, 18, 18, 18], || format!("coset sizes {sizes:?}"))?;
    ensure(cosets.swap_defect <= 1e-9 && cosets.swap_in_s, || format!("SWAP defect {:e}", cosets.swap_defect))?;
    Ok(format!("18/18 unfactorizable, 36 entangling, 18×4 cosets, SWAP defect {:.1e}", cosets.swap_defect))
}

fn subgroup_search() -> Outcome {
    let g = gp(3);
    let mut summary = Vec::new();
    for rep in [RepChoice::U2, RepChoice::U4] {
        let image = rep_image(&g, rep, BasisChoice::Gap).map_err(|e| e.to_string())?;
        let search = factorizing_subgroup_search(&g, &image, ColumnPairing::Canonical, Exec::default());
        let found = search.subgroups_of_order_at_least(12);
        let mut labels = BTreeSet::new();
        for s in &found {
            let label = s.label.ok_or_else(|| format!("{rep:?}: unlabeled subgroup of order {}", s.order))?;
            let have: HashSet<GpElement> = s.elements.iter().copied().collect();
            let want: HashSet<GpElement> = label.members(&g).into_iter().collect();
            ensure(have == want, || format!("{rep:?}: elements of {} differ", label.name()))?;
            labels.insert(label.name());
        }
        let reference: BTreeSet<&str> = rep.reference_subgroups().iter().map(|l| l.name()).collect();
        ensure(reference.is_subset(&labels), || format!("{rep:?}: found {labels:?}, reference {reference:?}"))?;
        let orders: BTreeSet<usize> = found.iter().map(|s| s.order).collect();
        match rep {
            RepChoice::U2 => {
                ensure(labels == reference, || format!("U2: found {labels:?}"))?;
                ensure(orders == BTreeSet::from([12, 18, 36]), || format!("U2 orders {orders:?}"))?;
            }
            RepChoice::U4 => ensure(search.max_subgroup_order() == 12, || format!("U4 max order {}", search.max_subgroup_order()))?,
        }
        summary.push(format!("{rep:?} {labels:?}"));
    }
    Ok(summary.join(", "))
}

fn universality_chain() -> Outcome {
    let start = Instant::now();
    let report = verify_universality(NamedSet::G1p3, &UniversalityOptions::default()).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    let a1 = report.seeds.first().ok_or("no seeds")?;
    let defect = a1.printed_defect.ok_or("A1 not compared")?;
    ensure(defect <= 1e-9, || format!("A1 defect {defect:e}"))?;
    ensure(report.closure_dim == 6 && report.dense_in_so4, || format!("closure dim {}", report.closure_dim))?;
    let theta3 = (15f64.sqrt() / 7.0).atan() - std::f64::consts::PI;
    for s in &report.seeds {
        let cert = &s.generator.certificate;
        ensure((cert.cos_num, cert.cos_den) == (-7, 8), || format!("{}: cos = {}/{}", s.label, cert.cos_num, cert.cos_den))?;
        ensure((s.generator.theta.abs() - theta3.abs()).abs() < 1e-9, || format!("{}: θ = {}", s.label, s.generator.theta))?;
    }
    ensure(report.universal, || "chain not closed".into())?;
    ensure(secs < 10.0, || format!("took {secs:.2} s"))?;
    Ok(format!("A1 defect {defect:.1e}, dim 6, cos θ3 = −7/8, {secs:.2} s"))
}

fn closure_verdicts() -> Outcome {
    let [g1, g2] = RepChoice::U4.generator_images();
    let u4 = vec![NamedMatrix::new("g1", g1), NamedMatrix::new("g2", g2)];
    let v = closure_verdict(&u4, 200_000).map_err(|e| e.to_string())?;
    ensure(v.finite_order() == Some(72), || format!("U4 closure {v:?}"))?;

    let (one, two) = NamedSet::G1p3.gates();
    let gens = embed_gate_set(&one, &two, 2);
    match closure_verdict(&gens, 200_000).map_err(|e| e.to_string())? {
        ClosureVerdict::ExceedsCap { cap: 200_000, certificate: Some(cert) } => {
            let irrational = ![0, 1, 2].contains(&cert.niven.cos_den) || cert.niven.cos_num.abs() > cert.niven.cos_den;
            ensure(irrational, || format!("certificate cos {}/{}", cert.niven.cos_num, cert.niven.cos_den))?;
        }
        other => return Err(format!("g1p3 closure {other:?}")),
    }

    let (one, two) = NamedSet::B40.gates();
    let mut orders = Vec::new();
    for (n, want) in [(2usize, 1296u64), (3, 839_808), (4, 88_159_684_608)] {
        let gens = embed_gate_set(&one, &two, n);
        let mats: Vec<CMatrix> = gens.iter().map(|g| g.matrix.clone()).collect();
        let verdict = closure_verdict(&gens, 200_000).map_err(|e| e.to_string())?;
        ensure(verdict.finite_order() == Some(want), || format!("dim {}: {verdict:?}", 1 << n))?;
        let chain = monomial_group_order(&mats).ok_or("not monomial")?;
        ensure(chain == want as u128, || format!("dim {}: stabilizer chain {chain}", 1 << n))?;
        match n {
            2 => {
                let dense = bfs_closure(&mats, 10_000, KeyMode::Exact);
                ensure(dense.complete && dense.elements.len() as u64 == want, || "dense BFS disagrees at dim 4".into())?;
            }
            3 => {
                let bfs = monomial_bfs_order(&mats, 1_000_000);
                ensure(bfs == Some(want as usize), || format!("compact BFS gives {bfs:?} at dim 8"))?;
            }
            _ => {}
        }
        orders.push(format!("{}→{want}", 1 << n));
    }
    Ok(format!("U4 Finite(72), g1p3 ExceedsCap(200000) certified, b40 {}", orders.join(", ")))
}

fn random_unitary(rng: &mut ChaCha8Rng, m: usize) -> CMatrix {
    let z = CMatrix::from_fn(m, m, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    z.qr().q()
}

fn random_rotation(rng: &mut ChaCha8Rng, m: usize) -> RMatrix {
    let z = RMatrix::from_fn(m, m, |_, _| rng.sample(StandardNormal));
    let mut q = z.qr().q();
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst_givens: f64 = 0.0;
    for m in 2..=16 {
        for _ in 0..100 {
            let r = random_rotation(&mut rng, m);
            let factors = givens_decompose(&r).map_err(|e| e.to_string())?;
            ensure(factors.len() == m * (m - 1) / 2, || format!("m = {m}: {} factors", factors.len()))?;
            worst_givens = worst_givens.max((givens_recompose(m, &factors) - &r).amax());
        }
    }
    ensure(worst_givens < 1e-9, || format!("Givens defect {worst_givens:e}"))?;

    let mut worst_encode: f64 = 0.0;
    for i in 0..1000 {
        let m = if i % 2 == 0 { 2 } else { 4 };
        let (u, v) = (random_unitary(&mut rng, m), random_unitary(&mut rng, m));
        let (ru, rv) = (real_encode(&u), real_encode(&v));
        let hom = (real_encode(&(&u * &v)) - &ru * &rv).amax();
        let orth = (ru.transpose() * &ru - RMatrix::identity(2 * m, 2 * m)).amax();
        worst_encode = worst_encode.max(hom).max(orth);
    }
    ensure(worst_encode < 1e-9, || format!("real_encode defect {worst_encode:e}"))?;

    let mut worst_schmidt: f64 = 0.0;
    for _ in 0..100 {
        let raw = DVector::from_fn(4, |_, _| c(rng.sample(StandardNormal), rng.sample(StandardNormal)));
        let norm = raw.norm();
        let psi = PureState2x2::new(raw / c(norm, 0.0)).map_err(|e| e.to_string())?;
        let moved = psi.apply_local(&random_unitary(&mut rng, 2), &random_unitary(&mut rng, 2));
        let (a, b) = (schmidt(&psi).coefficients, schmidt(&moved).coefficients);
        worst_schmidt = worst_schmidt.max((a[0] - b[0]).abs()).max((a[1] - b[1]).abs());
    }
    ensure(worst_schmidt < 1e-9, || format!("Schmidt defect {worst_schmidt:e}"))?;
    Ok(format!(
        "Givens {worst_givens:.1e} (m = 2..16 ×100), real_encode {worst_encode:.1e} (×1000), Schmidt {worst_schmidt:.1e} (×100)"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("group orders", group_orders),
        ("G_3 character table", g3_table),
        ("irrep census", irrep_census),
        ("CG closed forms", cg_closed_forms),
        ("coupled bases", coupled_bases),
        ("entanglement classification", entanglement),
        ("factorization counts", factorization),
        ("subgroup search", subgroup_search),
        ("universality chain", universality_chain),
        ("closure verdicts", closure_verdicts),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{ms} ms]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{ms} ms]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
