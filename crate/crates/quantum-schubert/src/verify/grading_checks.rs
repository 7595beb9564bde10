//! Checks on root-system data and on the gradings `gr`, `gr′`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{show_elt, show_term, Check, CheckReport, VerifyConfig};
use crate::error::Result;
use crate::grading::{GradePrime, GradeVector, Grader};
use crate::parabolic::{CaseTag, ParabolicSetup};
use crate::qh::QhEngine;
use crate::rootsys::{build_root_system, DynkinType};
use crate::weyl::{random_element, WeylGroup};

/// `|R^+|` for the classical and exceptional types: `n(n+1)/2` for `A_n`,
/// `n²` for `B_n`/`C_n`, `n(n−1)` for `D_n`, and 36, 63, 120, 24, 6 for
/// `E_6`, `E_7`, `E_8`, `F_4`, `G_2`.
fn classical_positive_count(letter: DynkinType, n: usize) -> usize {
    use DynkinType::*;
    match letter {
        A => n * (n + 1) / 2,
        B | C => n * n,
        D => n * (n - 1),
        E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        F => 24,
        G => 6,
    }
}

/// Positive-root counts against the classical values.
pub fn check_root_counts() -> Result<CheckReport> {
    use DynkinType::*;
    let mut ck = Check::new("root-counts", "A1-A5, B2-B4, C2-C4, D4-D5, E6-E8, F4, G2");
    let cases: Vec<(DynkinType, usize)> = (1..=5)
        .map(|n| (A, n))
        .chain((2..=4).map(|n| (B, n)))
        .chain((2..=4).map(|n| (C, n)))
        .chain([(D, 4), (D, 5), (E, 6), (E, 7), (E, 8), (F, 4), (G, 2)])
        .collect();
    for (letter, n) in cases {
        let rs = build_root_system(letter, n)?;
        let got = rs.positive_roots().len();
        let want = classical_positive_count(letter, n);
        ck.count("types", 1);
        ck.expect(got == want, || format!("{letter}{n}: |R^+| = {got}, expected {want}"));
    }
    Ok(ck.finish())
}

/// Filtration compatibility: every term `q_λ σ^w` of `σ^u ⋆ σ^v` has
/// `gr(w, λ) ≤ gr(u, 0) + gr(v, 0)`. Exhaustive for groups up to
/// `cfg.full_pairs_limit`, otherwise over pairs with `ℓ(u) + ℓ(v)` capped;
/// each unordered pair is checked once.
pub fn check_filtration(
    setup: &ParabolicSetup,
    engine: &QhEngine,
    grader: &Grader,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let rs = setup.root_system();
    let n = rs.rank();
    let mut ck = Check::new("filtration", setup.label());
    let group = engine.group();
    let grades: Vec<GradeVector> = group.elements().iter().map(|w| grader.gr_w(w)).collect();
    let full = group.len() <= cfg.full_pairs_limit;
    if !full {
        ck.note(format!("pairs restricted to ℓ(u)+ℓ(v) ≤ {}", cfg.length_sum_cap));
    }
    // the product is commutative (checked separately), so unordered pairs suffice
    for a in 0..group.len() as u32 {
        for b in a..group.len() as u32 {
            let ls = (group.length_of(a) + group.length_of(b)) as usize;
            if !full && ls > cfg.length_sum_cap {
                continue;
            }
            let (x, y) = if group.length_of(a) <= group.length_of(b) { (a, b) } else { (b, a) };
            let prod = engine.mul_indices(x, y)?;
            let bound = &grades[a as usize] + &grades[b as usize];
            ck.count("pairs", 1);
            for &(w, q) in prod.keys() {
                ck.count("terms", 1);
                let mut g = grades[w as usize].clone();
                for i in 0..n {
                    if q.0[i] != 0 {
                        g += &grader.coroot_grade(i).scaled(q.0[i] as i64);
                    }
                }
                if g > bound {
                    let lam = q.to_coroot(n);
                    ck.fail(format!(
                        "{} occurs in {}⋆{} with gr {} > {}",
                        show_term(rs, group.element(w), &lam),
                        show_elt(rs, group.element(a)),
                        show_elt(rs, group.element(b)),
                        g,
                        bound
                    ));
                }
            }
        }
    }
    Ok(ck.finish())
}

/// The filtration check run with a deliberately corrupted grading; passes
/// exactly when the corruption is detected.
pub fn check_filtration_negative_control(
    setup: &ParabolicSetup,
    engine: &QhEngine,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let inner = check_filtration(setup, engine, &Grader::corrupted(setup), cfg)?;
    let mut ck = Check::new("filtration-negative-control", setup.label());
    ck.count("violations_detected", inner.counts.get("failures").copied().unwrap_or(0));
    match &inner.counterexample {
        Some(ce) => ck.note(format!("corrupted grading rejected: {ce}")),
        None => ck.fail("the corrupted grading passed the filtration check".into()),
    }
    Ok(ck.finish())
}

/// `gr = gr′`: equality of the simple-coroot grades and of `gr(w, 0)` for
/// every `w` (exhaustive, or `sample` random elements). By linearity in `λ`
/// this covers every pair `(w, α^∨)`.
pub fn check_grading_coincidence(
    setup: &ParabolicSetup,
    sample: Option<usize>,
    cfg: &VerifyConfig,
) -> Result<CheckReport> {
    let rs = setup.root_system();
    let id = if sample.is_some() { "grading-coincidence-sampled" } else { "grading-coincidence" };
    let mut ck = Check::new(id, setup.label());
    let g = Grader::new(setup);
    let gp = GradePrime::new(setup)?;
    for i in 0..rs.rank() {
        let (a, b) = (g.coroot_grade(i), gp.coroot_grade(i));
        ck.expect(a == b, || format!("gr(α_{}^∨) = {a} but gr′ = {b}", i + 1));
    }
    let elements = match sample {
        None => WeylGroup::enumerate(rs, &rs.all_indices(), cfg.group_cap)?.elements().to_vec(),
        Some(m) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let steps = 2 * rs.positive_roots().len();
            let all = rs.all_indices();
            (0..m).map(|_| random_element(rs, &all, steps, &mut rng)).collect()
        }
    };
    if let Some(m) = sample {
        ck.note(format!("{m} random elements, seed {}", cfg.seed));
    }
    for w in &elements {
        let (a, b) = (g.gr_w(w), gp.gr_w(w)?);
        ck.expect(a == b, || format!("gr({}) = {a} but gr′ = {b}", show_elt(rs, w)));
    }
    ck.count("elements", elements.len() as u64);
    ck.count("pairs", (elements.len() * rs.rank()) as u64);
    Ok(ck.finish())
}

/// The closed formulas for simple-coroot grades: `2e_{r+1}` for simple roots
/// not adjacent to `Δ_P`; `(1+j)e_j + (1−j)e_{j−1}` for `α_j`, `j ≤ r−1`
/// (connected `Δ_P`); the second boundary node for C7 (`r ≤ 6`) and C9
/// (`r = 2`); and `|gr(α^∨)| = 2` for every simple root.
pub fn check_coroot_formulas(setup: &ParabolicSetup) -> Result<CheckReport> {
    let rs = setup.root_system();
    let mut ck = Check::new("coroot-grade-formulas", setup.label());
    let g = Grader::new(setup);
    let r = setup.r();
    let len = r + 1;
    let unit = |j: usize| GradeVector::unit(len, j);
    let connected = setup.components().len() == 1;
    for i in setup.outside() {
        if connected && !setup.order().iter().any(|&j| rs.adjacent(i, j)) {
            let want = unit(r + 1).scaled(2);
            let got = g.coroot_grade(i);
            ck.count("non_adjacent", 1);
            ck.expect(*got == want, || format!("gr(α_{}^∨) = {got}, expected {want}", i + 1));
        }
    }
    if connected {
        for j in 1..r {
            let mut want = unit(j).scaled(1 + j as i64);
            if j > 1 {
                want = &want + &unit(j - 1).scaled(1 - j as i64);
            }
            let got = g.coroot_grade(setup.order()[j - 1]);
            ck.count("chain_roots", 1);
            ck.expect(*got == want, || format!("gr(α_{j}^∨) = {got}, expected {want}"));
        }
    }
    // the second boundary node, which presets place at index r + 1
    let second = (r + 1 < rs.rank() && setup.boundary().contains(&(r + 1))).then_some(r + 1);
    let want = match (setup.tag(), second) {
        (CaseTag::C7, Some(_)) if r <= 6 => {
            let mut w = &unit(r + 1).scaled(2 * r as i64) + &unit(r).scaled(1 - r as i64);
            for j in 1..r {
                w = &w - &unit(j);
            }
            Some(w)
        }
        (CaseTag::C9, Some(_)) if r == 2 => Some(GradeVector(vec![-1, -2, 5])),
        _ => None,
    };
    if let (Some(want), Some(i)) = (want, second) {
        let got = g.coroot_grade(i);
        ck.count("second_boundary", 1);
        ck.expect(*got == want, || format!("gr(α_{}^∨) = {got}, expected {want}", i + 1));
    }
    for i in 0..rs.rank() {
        let t = g.coroot_grade(i).total();
        ck.count("total_degree", 1);
        ck.expect(t == 2, || format!("|gr(α_{}^∨)| = {t}, expected 2", i + 1));
    }
    Ok(ck.finish())
}
