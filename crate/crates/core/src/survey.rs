//! Case-by-case survey of `|Π₀| ≤ 2` parabolics and comparison against the
//! committed golden tables.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chevbasis::{build_resigned_table, build_structure_table, StructureTable};
use crate::error::{Error, Result};
use crate::nilrad::{build_nilradical, is_abelian_nilradical, ParabolicSpec};
use crate::obstruct::{is_table1_member, Obstruction, Table1};
use crate::rootsys::{build_root_system, SimpleType};
use crate::symp::{
    case_seed, decide, extend_trivially, verify_symplectic, DecideOptions, Outcome, Target, Verdict, DEFAULT_SAMPLES,
};

#[derive(Debug, Clone, Copy)]
pub struct SurveyOptions {
    pub max_rank: usize,
    pub samples: usize,
    /// Mixed into every per-case seed when set.
    pub seed: Option<u64>,
    /// Use a re-signed structure table drawn from this seed.
    pub resign: Option<u64>,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions { max_rank: 8, samples: DEFAULT_SAMPLES, seed: None, resign: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub case: String,
    pub family: char,
    pub rank: usize,
    pub pi0: Vec<usize>,
    pub dim: usize,
    pub k: usize,
    pub abelian: bool,
    pub table1_member: bool,
    pub verdict_n: Verdict,
    pub verdict_ext: Verdict,
    pub evidence: String,
}

impl SurveyRow {
    pub fn symplectic(&self) -> bool {
        self.verdict_n.is_symplectic() || self.verdict_ext.is_symplectic()
    }
}

pub const CSV_HEADER: [&str; 12] = [
    "case",
    "family",
    "rank",
    "pi0",
    "dim",
    "k",
    "abelian",
    "table1_member",
    "verdict_n",
    "verdict_ext",
    "symplectic",
    "evidence",
];

fn case_opts(key: &str, target: Target, opts: &SurveyOptions) -> DecideOptions {
    let salt = opts.seed.map_or(String::new(), |s| format!("{s}/"));
    DecideOptions { samples: opts.samples, seed: case_seed(&format!("{salt}{key}/{target}")) }
}

fn evidence(v_n: &Verdict, v_ext: &Verdict) -> String {
    let one = |v: &Verdict| match &v.outcome {
        Outcome::SymplecticWitness { display, .. } => format!("{}: witness {display}", v.target),
        Outcome::ObstructedNo { obstruction } => format!("{}: {}", v.target, obstruction.summary()),
        Outcome::ProbablyNo { max_rank, failure_bound, .. } => {
            format!("{}: closed forms reach rank {max_rank} < {}, miss bound {failure_bound}", v.target, v.dim)
        }
        Outcome::OddDim => format!("{}: odd dimension {}", v.target, v.dim),
    };
    format!("{}; {}", one(v_n), one(v_ext))
}

/// One row; non-candidates skip the cohomology.
pub fn survey_case(spec: &ParabolicSpec, st: &StructureTable, opts: &SurveyOptions) -> SurveyRow {
    let rs = st.rs();
    let n = build_nilradical(spec, st);
    let key = spec.key();
    let abelian = is_abelian_nilradical(spec, rs);
    let member = is_table1_member(spec, rs);
    let (verdict_n, verdict_ext) = if member {
        (
            decide(&n, Target::N, &case_opts(&key, Target::N, opts)),
            decide(&n, Target::Ext, &case_opts(&key, Target::Ext, opts)),
        )
    } else {
        let cheap = |target: Target, dim: usize| {
            let outcome = if dim % 2 == 1 {
                Outcome::OddDim
            } else {
                Outcome::ObstructedNo { obstruction: Obstruction::Prop44Fail { pi0: spec.pi0_one_based() } }
            };
            Verdict { target, dim, outcome }
        };
        (cheap(Target::N, n.dim()), cheap(Target::Ext, n.dim() + 1))
    };
    SurveyRow {
        case: key,
        family: spec.ty().family().letter(),
        rank: spec.ty().rank(),
        pi0: spec.pi0_one_based(),
        dim: n.dim(),
        k: n.k(),
        abelian,
        table1_member: member,
        evidence: evidence(&verdict_n, &verdict_ext),
        verdict_n,
        verdict_ext,
    }
}

fn table_for(ty: SimpleType, opts: &SurveyOptions) -> StructureTable {
    let rs = build_root_system(ty);
    match opts.resign {
        Some(s) => build_resigned_table(&rs, s),
        None => build_structure_table(&rs),
    }
}

/// Rows for every type up to `max_rank` and `|Π₀| ∈ {1, 2}`, in type order
/// then `Π₀` order.
pub fn run_survey_rows(opts: &SurveyOptions) -> Vec<SurveyRow> {
    let types = SimpleType::enumerate(opts.max_rank);
    let tables: Vec<StructureTable> = types.par_iter().map(|&t| table_for(t, opts)).collect();
    let cases: Vec<(usize, ParabolicSpec)> = types
        .iter()
        .enumerate()
        .flat_map(|(i, &t)| ParabolicSpec::enumerate(t, &[1, 2]).into_iter().map(move |s| (i, s)))
        .collect();
    cases.par_iter().map(|(i, spec)| survey_case(spec, &tables[*i], opts)).collect()
}

pub fn table1_from_rows(rows: &[SurveyRow]) -> Table1 {
    let mut t: Table1 = BTreeMap::new();
    for r in rows {
        let entry = t.entry(format!("{}{}", r.family, r.rank)).or_default();
        if r.table1_member {
            if r.pi0.len() == 1 {
                entry.singletons.push(r.pi0.clone());
            } else {
                entry.pairs.push(r.pi0.clone());
            }
        }
    }
    t
}

/// Candidate case → symplectic (on `n` or `R ⊕ n`).
pub fn theorem45_from_rows(rows: &[SurveyRow]) -> BTreeMap<String, bool> {
    rows.iter().filter(|r| r.table1_member).map(|r| (r.case.clone(), r.symplectic())).collect()
}

/// Differences against golden tables restricted to the types that were
/// surveyed. Empty means both match.
pub fn compare_golden(rows: &[SurveyRow], golden_t1: &Table1, golden_t45: &BTreeMap<String, bool>) -> Vec<String> {
    let mut diffs = Vec::new();
    let ours = table1_from_rows(rows);
    for (ty, row) in &ours {
        let Some(g) = golden_t1.get(ty) else {
            diffs.push(format!("table1 {ty}: not in golden file"));
            continue;
        };
        for (what, a, b) in [("singletons", &row.singletons, &g.singletons), ("pairs", &row.pairs, &g.pairs)] {
            for x in a.iter().filter(|x| !b.contains(x)) {
                diffs.push(format!("table1 {ty} {what}: extra {x:?}"));
            }
            for x in b.iter().filter(|x| !a.contains(x)) {
                diffs.push(format!("table1 {ty} {what}: missing {x:?}"));
            }
        }
    }
    let t45 = theorem45_from_rows(rows);
    let surveyed: std::collections::BTreeSet<&str> = ours.keys().map(String::as_str).collect();
    for (case, want) in golden_t45 {
        let ty = case.split(':').next().unwrap_or_default();
        if !surveyed.contains(ty) {
            continue;
        }
        match t45.get(case) {
            Some(got) if got == want => {}
            Some(got) => diffs.push(format!("theorem45 {case}: symplectic = {got}, golden {want}")),
            None => diffs.push(format!("theorem45 {case}: not a candidate, golden {want}")),
        }
    }
    for case in t45.keys().filter(|c| !golden_t45.contains_key(*c)) {
        diffs.push(format!("theorem45 {case}: candidate missing from golden file"));
    }
    diffs
}

pub fn write_csv<W: std::io::Write>(rows: &[SurveyRow], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in rows {
        let pi0: Vec<String> = r.pi0.iter().map(ToString::to_string).collect();
        out.write_record([
            r.case.clone(),
            r.family.to_string(),
            r.rank.to_string(),
            pi0.join(" "),
            r.dim.to_string(),
            r.k.to_string(),
            r.abelian.to_string(),
            r.table1_member.to_string(),
            r.verdict_n.kind(),
            r.verdict_ext.kind(),
            r.symplectic().to_string(),
            r.evidence.clone(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Rebuilds each witness row's algebra and re-verifies the form exactly.
pub fn reverify_witnesses(rows: &[SurveyRow], resign: Option<u64>) -> Result<()> {
    rows.par_iter().try_for_each(|r| {
        for v in [&r.verdict_n, &r.verdict_ext] {
            let Some(form) = v.witness() else { continue };
            let spec =
                ParabolicSpec::parse(&format!("{}{}", r.family, r.rank), r.case.split(':').nth(1).unwrap_or(""))?;
            let opts = SurveyOptions { resign, ..SurveyOptions::default() };
            let n = build_nilradical(&spec, &table_for(spec.ty(), &opts));
            let target = match v.target {
                Target::N => n,
                Target::Ext => extend_trivially(&n),
            };
            if !verify_symplectic(&target, form)? {
                return Err(Error::Mismatch(format!("{} ({}): stored witness does not verify", r.case, v.target)));
            }
        }
        Ok(())
    })
}

pub fn load_golden(dir: &std::path::Path) -> Result<(Table1, BTreeMap<String, bool>)> {
    let t1: Table1 = serde_json::from_str(&std::fs::read_to_string(dir.join("table1.json"))?)?;
    let t45: BTreeMap<String, bool> = serde_json::from_str(&std::fs::read_to_string(dir.join("theorem45.json"))?)?;
    Ok((t1, t45))
}
