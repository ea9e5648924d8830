#![allow(dead_code)]

use nilsymp::chevbasis::{build_resigned_table, build_structure_table};
use nilsymp::fixtures::{heisenberg, heisenberg_plus_line, xyz_algebra, Pairing};
use nilsymp::nilrad::{build_nilradical, NilAlgebra, ParabolicSpec};
use nilsymp::rootsys::{build_root_system, SimpleType};

pub fn nil(ty: &str, pi0: &str) -> NilAlgebra {
    let spec = ParabolicSpec::parse(ty, pi0).unwrap();
    build_nilradical(&spec, &build_structure_table(&build_root_system(spec.ty())))
}

pub fn nil_resigned(spec: &ParabolicSpec, seed: u64) -> NilAlgebra {
    build_nilradical(spec, &build_resigned_table(&build_root_system(spec.ty()), seed))
}

/// Every `|Π₀| ∈ sizes` spec of every type up to `max_rank`.
pub fn specs(max_rank: usize, sizes: &[usize]) -> Vec<ParabolicSpec> {
    SimpleType::enumerate(max_rank)
        .into_iter()
        .filter(|t| t.rank() <= max_rank)
        .flat_map(|t| ParabolicSpec::enumerate(t, sizes))
        .collect()
}

/// Hand-written algebras plus every small nilradical up to rank 4.
pub fn fixtures(max_dim: usize) -> Vec<(String, NilAlgebra)> {
    let mut out: Vec<(String, NilAlgebra)> = vec![
        ("h3".into(), heisenberg()),
        ("h3+T".into(), heisenberg_plus_line()),
        ("xyz2 sym".into(), xyz_algebra(2, Pairing::Symmetric)),
        ("xyz3 sym".into(), xyz_algebra(3, Pairing::Symmetric)),
        ("xyz3 alt".into(), xyz_algebra(3, Pairing::Alternating)),
        ("xyz2 full".into(), xyz_algebra(2, Pairing::Full)),
    ];
    for spec in specs(4, &[1, 2]) {
        let st = build_structure_table(&build_root_system(spec.ty()));
        out.push((spec.key(), build_nilradical(&spec, &st)));
    }
    out.retain(|(_, n)| n.dim() <= max_dim);
    out
}
