//! Named setups and check suites run by `qschub verify`.

use super::{
    check_associativity, check_commutativity, check_coroot_formulas, check_cup_vanishing, check_example12,
    check_filtration, check_filtration_negative_control, check_grading_coincidence, check_product_invariants,
    check_prop_vu, check_psi_injective_surjective, check_psi_morphism, check_psi_welldefined, check_root_counts,
    check_squared_class, check_theorem_general, check_virtual_null_product, reproduce_table, CheckReport, Engines,
    SuiteReport, TableId, VerifyConfig,
};
use crate::error::{Error, Result};
use crate::grading::Grader;
use crate::parabolic::{CaseTag, ParabolicSetup};
use crate::rootsys::DynkinType;

/// A setup with a short stable name.
pub struct NamedSetup {
    pub name: &'static str,
    pub setup: ParabolicSetup,
}

/// Fixture setups, smallest first: small type-A parabolics (including a
/// disconnected one) and the presets of the case analysis small enough for
/// product computations.
pub fn standard_setups() -> Result<Vec<NamedSetup>> {
    use CaseTag::*;
    use DynkinType::*;
    let std = |name, letter, n, order: &[usize]| -> Result<NamedSetup> {
        Ok(NamedSetup { name, setup: ParabolicSetup::standard(letter, n, order)? })
    };
    let pre = |name, tag, r, amb| -> Result<NamedSetup> { Ok(NamedSetup { name, setup: ParabolicSetup::preset(tag, r, amb)? }) };
    Ok(vec![
        std("a2-p1", A, 2, &[0])?,
        std("a3-p12", A, 3, &[0, 1])?,
        std("a3-p13", A, 3, &[0, 2])?,
        std("a4-p13", A, 4, &[0, 2])?,
        pre("b3-c1b-r2", C1B, 2, Some((B, 3)))?,
        pre("b4-c1b-r2", C1B, 2, Some((B, 4)))?,
        pre("b4-c1b-r3", C1B, 3, Some((B, 4)))?,
        pre("c3-c1c-r2", C1C, 2, Some((C, 3)))?,
        pre("c4-c1c-r2", C1C, 2, Some((C, 4)))?,
        pre("c4-c1c-r3", C1C, 3, Some((C, 4)))?,
        pre("d4-c2-r3", C2, 3, Some((D, 4)))?,
        pre("f4-c9-r2", C9, 2, Some((F, 4)))?,
        pre("f4-c9-r3", C9, 3, Some((F, 4)))?,
        pre("f4-c10-r3", C10, 3, Some((F, 4)))?,
    ])
}

/// Setups too large for products; used for sampled grading checks.
fn large_setups() -> Result<Vec<NamedSetup>> {
    use CaseTag::*;
    Ok(vec![
        NamedSetup { name: "e6-c5-r5", setup: ParabolicSetup::preset(C5, 5, None)? },
        NamedSetup { name: "e6-c7-r4", setup: ParabolicSetup::preset(C7, 4, None)? },
    ])
}

const SUITES: &[(&str, &str)] = &[
    ("roots", "positive-root counts for all types up to rank 8"),
    ("tables", "reproduce the six case tables (select one with --which)"),
    ("gradings", "closed formulas for the simple-coroot grades"),
    ("coincidence", "gr = gr′ on every fixture setup (sampled for E6)"),
    ("filtration", "filtration compatibility of the quantum product"),
    ("psi", "well-definedness, injectivity and surjectivity of ψ"),
    ("morphism", "ψ is a morphism modulo J; σ^u ⋆ σ^{u′} and σ^v ⋆ σ^u"),
    ("example", "the worked A2 example"),
    ("theorem", "I, A and J and the quotient QH(G/B)/I ≅ QH(P/B)"),
    ("cup", "classical vanishing in H*(P/B)"),
    ("ring", "commutativity and associativity of the product"),
    ("invariants", "positivity, integrality, homogeneity of all computed products"),
    ("negative-control", "a corrupted grading must fail the filtration check"),
    ("corrupted-grading", "the filtration check run on a deliberately wrong grading; fails by design"),
    ("all", "every suite above except corrupted-grading"),
];

/// `(name, description)` for every suite.
pub fn suite_names() -> &'static [(&'static str, &'static str)] {
    SUITES
}

fn pick<'a>(setups: &'a [NamedSetup], names: &[&str]) -> Vec<&'a NamedSetup> {
    setups.iter().filter(|s| names.contains(&s.name)).collect()
}

fn within_cap(s: &NamedSetup, cfg: &VerifyConfig) -> bool {
    let rs = s.setup.root_system();
    rs.weyl_order(&rs.all_indices()) <= cfg.product_cap
}

/// Runs one suite; `which` restricts the `tables` suite to one table.
pub fn run_suite(name: &str, which: Option<TableId>, cfg: &VerifyConfig, engines: &Engines) -> Result<SuiteReport> {
    let setups = standard_setups()?;
    let mut reports: Vec<CheckReport> = Vec::new();
    let product_setups: Vec<&NamedSetup> = setups.iter().filter(|s| within_cap(s, cfg)).collect();
    let name = if name == "example12" { "example" } else { name };
    match name {
        "roots" => reports.push(check_root_counts()?),
        "tables" => {
            let ids: Vec<TableId> = match which {
                Some(t) => vec![t],
                None => TableId::ALL.to_vec(),
            };
            for t in ids {
                reports.push(reproduce_table(t, cfg, engines)?);
            }
        }
        "gradings" => {
            for s in setups.iter().chain(large_setups()?.iter()) {
                reports.push(check_coroot_formulas(&s.setup)?);
            }
        }
        "coincidence" => {
            for s in &setups {
                let sample = (!within_cap(s, cfg)).then_some(500);
                reports.push(check_grading_coincidence(&s.setup, sample, cfg)?);
            }
            for s in &large_setups()? {
                reports.push(check_grading_coincidence(&s.setup, Some(500), cfg)?);
            }
        }
        "filtration" => {
            for s in &product_setups {
                let engine = engines.full(s.setup.root_system())?;
                reports.push(check_filtration(&s.setup, &engine, &Grader::new(&s.setup), cfg)?);
            }
        }
        "psi" => {
            for s in &setups {
                reports.push(check_psi_welldefined(&s.setup, cfg)?);
                // F4 C9 r=3 has its first witness in degree 11
                reports.push(check_psi_injective_surjective(&s.setup, cfg.degree_bound.max(12), cfg)?);
            }
        }
        "morphism" => {
            for s in &product_setups {
                let engine = engines.full(s.setup.root_system())?;
                reports.push(check_psi_morphism(&s.setup, &engine, cfg)?);
                reports.push(check_squared_class(&s.setup, &engine)?);
                reports.push(check_prop_vu(&s.setup, &engine, cfg)?);
                reports.push(check_virtual_null_product(&s.setup, &engine, cfg)?);
            }
        }
        "example" => reports.push(check_example12(cfg)?),
        "theorem" => {
            for s in pick(&setups, &["a2-p1", "a3-p12", "b3-c1b-r2"]) {
                let engine = engines.full(s.setup.root_system())?;
                reports.push(check_theorem_general(&s.setup, &engine, cfg)?);
            }
        }
        "cup" => {
            for s in pick(&setups, &["a3-p12", "b3-c1b-r2", "c3-c1c-r2", "b4-c1b-r3", "f4-c9-r2", "f4-c9-r3", "f4-c10-r3"]) {
                reports.push(check_cup_vanishing(&s.setup, cfg)?);
            }
        }
        "ring" => {
            let mut seen = Vec::new();
            for s in &product_setups {
                let rs = s.setup.root_system();
                if seen.contains(&rs.name()) {
                    continue;
                }
                seen.push(rs.name());
                let engine = engines.full(rs)?;
                let big = engine.group().len() > cfg.full_pairs_limit;
                reports.push(check_commutativity(&engine, cfg)?);
                reports.push(check_associativity(&engine, if big { 30 } else { 200 }, cfg)?);
            }
        }
        "invariants" => reports.push(check_product_invariants()?),
        "negative-control" => {
            for s in pick(&setups, &["a2-p1", "b3-c1b-r2"]) {
                let engine = engines.full(s.setup.root_system())?;
                reports.push(check_filtration_negative_control(&s.setup, &engine, cfg)?);
            }
        }
        "corrupted-grading" => {
            for s in pick(&setups, &["a2-p1"]) {
                let engine = engines.full(s.setup.root_system())?;
                reports.push(check_filtration(&s.setup, &engine, &Grader::corrupted(&s.setup), cfg)?);
            }
        }
        "all" => {
            let skip = ["all", "invariants", "corrupted-grading"];
            for (n, _) in SUITES.iter().filter(|(n, _)| !skip.contains(n)) {
                reports.extend(run_suite(n, which, cfg, engines)?.reports);
            }
            reports.push(check_product_invariants()?);
        }
        other => return Err(Error::Usage(format!("unknown suite {other:?}"))),
    }
    Ok(SuiteReport::new(name, reports))
}
