//! Subcommand implementations; each returns its parameters, payload and optional CSV form.

use serde::Serialize;
use serde_json::{json, Value};

use padic_qubit::clebsch::{
    cg_closed_form, cg_multiplicities, coupled_basis, equal_up_to_column_phases, t2, verify_block_diagonal,
    ClebschError,
};
use padic_qubit::dihedral::DihedralGroup;
use padic_qubit::entangle::{analyze_decomposition, EntangleError};
use padic_qubit::gates::{
    coset_report, extract_gate_sets, factorize_report, factorizing_subgroup_search, rep_image, BasisChoice,
    ColumnPairing, GatesError, RepChoice,
};
use padic_qubit::group::{conjugacy_classes, verify_structure, FiniteGroup, Gp, GroupError};
use padic_qubit::modp::{is_prime, make_context, ModpError};
use padic_qubit::par::Exec;
use padic_qubit::reps::{
    align_g3, all_irreps, character_table, d3_irreps, qubit_irreps, Representation, G3_REFERENCE_ROWS,
};
use padic_qubit::universality::{cache_dir_from_env, verify_universality, NamedSet, UniversalityError, UniversalityOptions};

use crate::{Basis, Rep, Report, SetName};

/// Largest prime accepted by the group-level commands.
pub const MAX_P: u64 = 31;
/// Tolerance on character orthonormality.
const TABLE_TOL: f64 = 1e-9;
const T2_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum CmdError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Modp(#[from] ModpError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Reps(#[from] padic_qubit::reps::RepsError),
    #[error(transparent)]
    Clebsch(#[from] ClebschError),
    #[error(transparent)]
    Entangle(#[from] EntangleError),
    #[error(transparent)]
    Gates(#[from] GatesError),
    #[error(transparent)]
    Universality(#[from] UniversalityError),
    #[error("csv: {0}")]
    Csv(String),
}

impl CmdError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CmdError::Usage(_) => 2,
            _ => 3,
        }
    }
}

impl From<csv::Error> for CmdError {
    fn from(e: csv::Error) -> Self {
        CmdError::Csv(e.to_string())
    }
}

pub struct Output {
    pub params: Value,
    pub payload: Value,
    pub csv: Option<String>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

fn write_csv<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String, CmdError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CmdError::Csv(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

fn check_odd_prime(p: u64) -> Result<(), CmdError> {
    if p < 3 || p > MAX_P || !is_prime(p) {
        return Err(CmdError::Usage(format!("p must be an odd prime at most {MAX_P}, got {p}")));
    }
    Ok(())
}

fn gp(p: u64) -> Result<Gp, CmdError> {
    check_odd_prime(p)?;
    Ok(Gp::new(make_context(p)?))
}

#[derive(Serialize)]
struct ClassRow {
    class: usize,
    size: usize,
    representative: String,
}

pub fn group(p: u64, classes: bool, structure: bool) -> Result<Output, CmdError> {
    let g = gp(p)?;
    let mut payload = json!({ "p": p, "order": g.order() });
    let mut csv = None;
    if classes {
        let table = conjugacy_classes(&g);
        let els = g.elements();
        let rows: Vec<Value> = table
            .representatives
            .iter()
            .zip(&table.sizes)
            .map(|(&r, &s)| json!({ "representative": els[r], "size": s }))
            .collect();
        csv = Some(write_csv(table.representatives.iter().zip(&table.sizes).enumerate().map(|(i, (&r, &s))| {
            let [a, b, c, d, sign] = els[r].signed(g.ctx());
            ClassRow { class: i + 1, size: s, representative: format!("({a} {b} {c} {d} {sign})") }
        }))?);
        payload["class_count"] = json!(table.len());
        payload["classes"] = Value::Array(rows);
    }
    if structure {
        let report = verify_structure(&g)?;
        if !report.all_pass() {
            return Err(CmdError::Verification(format!("structure checks failed for p = {p}")));
        }
        payload["structure"] = to_value(&report);
        csv = None;
    }
    Ok(Output { params: json!({ "p": p, "classes": classes, "structure": structure }), payload, csv })
}

pub fn chartable(p: u64) -> Result<Output, CmdError> {
    let g = gp(p)?;
    let mut table = character_table(&g);
    let mut reference_rows = None;
    let mut class_names = None;
    if p == 3 {
        let al = align_g3(&g, &table)?;
        table = table.permute_classes(&al.columns);
        let order = al.rows;
        table.labels = order.iter().map(|&r| table.labels[r]).collect();
        table.dims = order.iter().map(|&r| table.dims[r]).collect();
        table.rows = order.iter().map(|&r| table.rows[r].clone()).collect();
        reference_rows = Some(G3_REFERENCE_ROWS.to_vec());
        class_names = Some((1..=9).map(|i| format!("C{i}")).collect::<Vec<_>>());
    }
    let defect = table.orthonormality_defect();
    let column_defect = table.column_defect();
    if defect > TABLE_TOL || column_defect > TABLE_TOL {
        return Err(CmdError::Verification(format!(
            "character table of G_{p} is not orthonormal (rows {defect:e}, columns {column_defect:e})"
        )));
    }
    let els = g.elements();
    let payload = json!({
        "p": p,
        "order": g.order(),
        "labels": table.labels,
        "reference_rows": reference_rows,
        "dims": table.dims,
        "class_sizes": table.classes.sizes,
        "class_representatives": table.classes.representatives.iter().map(|&r| els[r]).collect::<Vec<_>>(),
        "rows": table.rows.iter().map(|r| r.values.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "orthonormality_defect": defect,
        "column_defect": column_defect,
    });
    let row_names: Option<Vec<String>> = reference_rows.as_ref().map(|r| r.iter().map(|s| s.to_string()).collect());
    let csv = table.to_csv_with(class_names.as_deref(), row_names.as_deref());
    Ok(Output { params: json!({ "p": p }), payload, csv: Some(csv) })
}

fn cg_payload<G, R>(group: &G, a: &R, b: &R, irreps: &[R]) -> Result<Value, CmdError>
where
    G: FiniteGroup,
    R: Representation<G>,
{
    let dec = coupled_basis(group, a, b, irreps)?;
    let blocks = verify_block_diagonal(&dec, group, a, b, irreps)?;
    let entanglement = analyze_decomposition(&dec)?;
    Ok(json!({
        "decomposition": dec,
        "t2_match": equal_up_to_column_phases(&dec.basis_change, &t2(), T2_TOL),
        "block_check": blocks,
        "entanglement": entanglement,
    }))
}

pub fn cg(p: u64, j: u32, l: u32) -> Result<Output, CmdError> {
    let params = json!({ "p": p, "j": j, "l": l });
    if p == 2 {
        if (j, l) != (1, 1) {
            return Err(CmdError::Usage("p = 2 has a single qubit irrep, use j = l = 1".into()));
        }
        let d3 = DihedralGroup::new(3);
        let irreps = d3_irreps();
        let mut payload = cg_payload(&d3, &irreps[2], &irreps[2], &irreps)?;
        payload["group"] = json!("D3");
        payload["n"] = json!(3);
        return Ok(Output { params, payload, csv: None });
    }
    check_odd_prime(p)?;
    let half = (p as u32 - 1) / 2;
    if !(1..=half).contains(&j) || !(1..=half).contains(&l) {
        return Err(CmdError::Usage(format!("j and l must lie in 1..={half} for p = {p}")));
    }
    let n = p as u32 + 1;
    let multiplicities = cg_multiplicities(n, j, l)?;
    let closed_form = cg_closed_form(n, j, l)?;
    if multiplicities != closed_form {
        return Err(CmdError::Verification(format!("character count and closed form disagree for D_{n}, ({j}, {l})")));
    }
    let g = gp(p)?;
    let irreps = all_irreps(&g);
    let qubits = qubit_irreps(g.ctx());
    let mut payload = cg_payload(&g, &qubits[j as usize - 1], &qubits[l as usize - 1], &irreps)?;
    payload["group"] = json!(format!("G{p}"));
    payload["n"] = json!(n);
    payload["multiplicities"] = to_value(&multiplicities);
    Ok(Output { params, payload, csv: None })
}

#[derive(Serialize)]
struct FactorizeRow {
    element: String,
    spectral: bool,
    verdict: &'static str,
}

#[derive(Serialize)]
struct SubsetRow {
    order: usize,
    is_subgroup: bool,
    maximal: bool,
    label: String,
    witnesses: usize,
}

fn fmt_element(g: &Gp, x: &padic_qubit::group::GpElement) -> String {
    let [a, b, c, d, s] = x.signed(g.ctx());
    format!("({a} {b} {c} {d} {s})")
}

pub fn gates(rep: Rep, basis: Basis, report: Report, all_pairings: bool) -> Result<Output, CmdError> {
    let rep_c = match rep {
        Rep::U2 => RepChoice::U2,
        Rep::U4 => RepChoice::U4,
    };
    let basis_c = match basis {
        Basis::Gap => BasisChoice::Gap,
        Basis::B38 => BasisChoice::B38,
        Basis::B1 => BasisChoice::B1,
        Basis::B40 => BasisChoice::B40,
    };
    let params = json!({ "rep": rep, "basis": basis, "report": report, "all_pairings": all_pairings });
    let g = gp(3)?;
    let exec = Exec::default();
    let (payload, csv) = match report {
        Report::Factorize => {
            let image = rep_image(&g, rep_c, basis_c)?;
            let r = factorize_report(&image, exec);
            let csv = write_csv(r.entries.iter().map(|e| FactorizeRow {
                element: fmt_element(&g, &e.element),
                spectral: e.spectral,
                verdict: e.verdict,
            }))?;
            (to_value(&r), Some(csv))
        }
        Report::Cosets => {
            if (rep_c, basis_c) != (RepChoice::U2, BasisChoice::B38) {
                return Err(CmdError::Usage("the coset report needs --rep u2 --basis b38".into()));
            }
            let image = rep_image(&g, rep_c, basis_c)?;
            (to_value(&coset_report(&g, &image, exec)?), None)
        }
        Report::Subgroups => {
            let image = rep_image(&g, rep_c, basis_c)?;
            let pairing = if all_pairings { ColumnPairing::All } else { ColumnPairing::Canonical };
            let search = factorizing_subgroup_search(&g, &image, pairing, exec);
            let csv = write_csv(search.subsets.iter().map(|s| SubsetRow {
                order: s.order,
                is_subgroup: s.is_subgroup,
                maximal: s.maximal,
                label: s.label.map(|l| l.name().to_string()).unwrap_or_default(),
                witnesses: s.witnesses,
            }))?;
            let missing: Vec<&str> = rep_c
                .reference_subgroups()
                .iter()
                .filter(|l| !search.subgroups().any(|s| s.label == Some(**l)))
                .map(|l| l.name())
                .collect();
            let mut v = to_value(&search);
            v["max_subgroup_order"] = json!(search.max_subgroup_order());
            v["reference_subgroups"] = json!(rep_c.reference_subgroups().iter().map(|l| l.name()).collect::<Vec<_>>());
            v["missing_reference"] = json!(missing);
            (v, Some(csv))
        }
        Report::Gatesets => {
            let sets = extract_gate_sets(&g)?;
            if !sets.all_pass() {
                let failed: Vec<&str> = sets.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
                return Err(CmdError::Verification(format!("gate set checks failed: {}", failed.join(", "))));
            }
            (to_value(&sets), None)
        }
    };
    Ok(Output { params, payload, csv })
}

pub fn universality(set: SetName, cap: usize) -> Result<Output, CmdError> {
    if cap == 0 {
        return Err(CmdError::Usage("--cap must be positive".into()));
    }
    let named = match set {
        SetName::G1p3 => NamedSet::G1p3,
        SetName::Abu => NamedSet::Abu,
        SetName::B40 => NamedSet::B40,
    };
    let opts = UniversalityOptions { cap, cache_dir: cache_dir_from_env(), ..Default::default() };
    let report = verify_universality(named, &opts)?;
    Ok(Output { params: json!({ "set": set, "cap": cap }), payload: to_value(&report), csv: None })
}
