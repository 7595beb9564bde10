//! Checks on the map `ψ(q_{λ_P} σ^w) = q_{λ_B} σ^{w w_P w_{P'}}` and on the
//! products that make `Ψ` a morphism of algebras.

use std::collections::HashSet;

use num::{One, Zero};

use super::{levi_elements, min_reps, show_elt, show_term, Check, CheckReport, VerifyConfig};
use crate::error::Result;
use crate::grading::{GradeVector, Grader};
use crate::parabolic::{compositions, ParabolicSetup};
use crate::qh::{QHClass, QhEngine};
use crate::rootsys::{Coroot, DynkinType};
use crate::weyl::{WeylElement, WeylGroup};

fn add(a: &[i64], b: &[i64]) -> Coroot {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Every vector of `m` integers with entries in `[−b, b]`, in odometer order.
fn box_keys(m: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|k: Vec<i64>| {
                (-b..=b).map(move |x| {
                    let mut k2 = k.clone();
                    k2.push(x);
                    k2
                })
            })
            .collect();
    }
    out
}

/// Smallest radius whose box holds at least 50 classes.
fn default_radius(m: usize) -> i64 {
    if m == 0 {
        return 0;
    }
    (0..).find(|&b: &i64| (2 * b + 1).pow(m as u32) >= 50).unwrap()
}

/// `ψ` is well defined with values in grade `(0, …, 0, ∗)`: for every class
/// in a box of cosets (negative coordinates included) and every `w ∈ W^P`,
/// `gr_{[1,r]}(ψ(q_{λ_P} σ^w)) = 0`. Also checks the lifting conditions, that
/// `ψ` is injective on the box, and that adding a virtual null coroot shifts
/// lifts additively.
pub fn check_psi_welldefined(setup: &ParabolicSetup, cfg: &VerifyConfig) -> Result<CheckReport> {
    let rs = setup.root_system();
    let r = setup.r();
    let mut ck = Check::new("psi-well-defined", setup.label());
    let grader = Grader::new(setup);
    let m = setup.outside().len();
    let radius = cfg.box_radius.unwrap_or_else(|| default_radius(m));
    let keys = box_keys(m, radius);
    ck.note(format!("coset box radius {radius}: {} classes", keys.len()));
    let reps = min_reps(setup, cfg.group_cap)?;
    let roots_p: Vec<&Vec<i64>> = rs.positive_roots_in(setup.order()).into_iter().map(|k| &rs.positive_roots()[k]).collect();
    let mut images = HashSet::new();
    for key in &keys {
        let lam = setup.coset_representative(key);
        let lift = setup.pw_lift(&lam)?;
        let lb = &lift.lambda_b;
        ck.count("classes", 1);
        ck.expect(setup.coset_key(lb) == *key, || format!("lift {lb:?} of {key:?} leaves its coset"));
        for g in &roots_p {
            let p = rs.pairing(g, lb);
            ck.expect(p == 0 || p == -1, || format!("⟨{g:?}, {lb:?}⟩ = {p} for the lift of {key:?}"));
        }
        for w in &reps {
            let (l2, x) = setup.psi(&lam, w)?;
            let g = grader.gr(&x, &l2);
            ck.count("basis_elements", 1);
            ck.expect(g.truncate(1, r).is_zero(), || {
                format!("gr(ψ(q{key:?}{})) = gr({}) = {g}", show_elt(rs, w), show_term(rs, &x, &l2))
            });
            ck.expect(images.insert((l2.clone(), x.clone())), || format!("ψ not injective at {}", show_term(rs, &x, &l2)));
        }
    }
    let vn = setup.virtual_null_lattice();
    for mu in &vn.lb_basis {
        for key in keys.iter().take(50) {
            let lam = setup.coset_representative(key);
            let a = setup.pw_lift(&add(&lam, mu))?.lambda_b;
            let b = add(&setup.pw_lift(&lam)?.lambda_b, mu);
            ck.count("virtual_null_shifts", 1);
            ck.expect(a == b, || format!("lift(λ + {mu:?}) = {a:?} but lift(λ) + μ = {b:?} for λ = {lam:?}"));
        }
    }
    Ok(ck.finish())
}

/// Surjectivity prediction: every component of `Δ_P` is of type A, except
/// possibly one of type `B_2` containing `α_r` as its short root.
pub fn predict_surjective(setup: &ParabolicSetup) -> bool {
    let rs = setup.root_system();
    let non_a: Vec<&Vec<usize>> = setup
        .components()
        .iter()
        .filter(|c| rs.classify_connected(c).letter != DynkinType::A)
        .collect();
    match non_a.as_slice() {
        [] => true,
        [c] => {
            let last = setup.order()[setup.r() - 1];
            c.len() == 2 && c.contains(&last) && {
                let other = if c[0] == last { c[1] } else { c[0] };
                rs.cartan()[last][other] * rs.cartan()[other][last] == 2 && rs.norms()[last] < rs.norms()[other]
            }
        }
        _ => false,
    }
}

/// Injectivity and surjectivity of `Ψ` onto the grade-`(0,…,0,∗)` part, up
/// to a degree bound: every unlocalized `q_λ σ^w` of degree at most `bound`
/// with `gr_{[1,r]} = 0` is tested for membership in the image of `ψ`.
/// Passes when the outcome agrees with [`predict_surjective`].
pub fn check_psi_injective_surjective(setup: &ParabolicSetup, bound: i64, cfg: &VerifyConfig) -> Result<CheckReport> {
    let rs = setup.root_system();
    let n = rs.rank();
    let r = setup.r();
    let mut ck = Check::new("psi-surjectivity", setup.label());
    let predicted = predict_surjective(setup);
    let grader = Grader::new(setup);
    let group = WeylGroup::enumerate(rs, &rs.all_indices(), cfg.group_cap)?;
    let mut witness: Option<String> = None;
    let mut preimages = HashSet::new();
    for d in 0..=bound {
        for qdeg in 0..=(d / 2) as usize {
            let l = d - 2 * qdeg as i64;
            if l > group.max_length() as i64 {
                continue;
            }
            for c in compositions(qdeg, n) {
                let lam: Coroot = c.iter().map(|&x| x as i64).collect();
                for k in group.of_length(l as u32) {
                    let w = group.element(k);
                    if !grader.gr(w, &lam).truncate(1, r).is_zero() {
                        continue;
                    }
                    ck.count("candidates", 1);
                    match setup.psi_preimage(&lam, w)? {
                        Some((key, v)) => {
                            ck.count("in_image", 1);
                            let (l2, x) = setup.psi(&setup.coset_representative(&key), &v)?;
                            ck.expect(l2 == lam && x == *w, || format!("ψ(ψ⁻¹({})) differs", show_term(rs, w, &lam)));
                            ck.expect(preimages.insert((key, v)), || "two basis elements share a preimage".into());
                        }
                        None => {
                            ck.count("outside_image", 1);
                            if witness.is_none() {
                                witness = Some(format!("{} (degree {d})", show_term(rs, w, &lam)));
                            }
                        }
                    }
                }
            }
        }
    }
    let found = match &witness {
        Some(wt) => format!("not surjective: witness {wt}"),
        None => format!("surjective up to degree {bound}"),
    };
    ck.note(format!("predicted {}; {found}", if predicted { "surjective" } else { "not surjective" }));
    ck.expect(predicted == witness.is_none(), || format!("prediction disagrees with search: {found}"));
    Ok(ck.finish())
}

/// Splits a product at the target grade: the terms of grade exactly `top`
/// are returned, and any term above `top` is reported as a failure.
fn top_part(ck: &mut Check, setup: &ParabolicSetup, grader: &Grader, prod: &QHClass, top: &GradeVector, what: &str) -> QHClass {
    let rs = setup.root_system();
    let mut out = QHClass::zero();
    for (w, lam, c) in prod.terms() {
        let g = grader.gr(w, lam);
        if g == *top {
            out.add_term(w.clone(), lam.clone(), c.clone());
        } else if g > *top {
            ck.fail(format!("{what}: term {} has gr {g} above {top}", show_term(rs, w, lam)));
        }
    }
    out
}

/// Pairs `(a, b)` with `a ≤ b` over a list, restricted by total length
/// unless the ambient group is small.
fn pair_filter(full: bool, cap: usize, la: usize, lb: usize) -> bool {
    full || la + lb <= cap
}

/// Generators of `Q^∨/Q_P^∨` used for the `q`-parts of the morphism check:
/// the simple coroots outside `Δ_P` and one representative of every
/// nontrivial class modulo virtual null coroots.
fn q_generators(setup: &ParabolicSetup) -> Result<Vec<Coroot>> {
    let n = setup.root_system().rank();
    let mut out: Vec<Coroot> = setup.outside().into_iter().map(|i| crate::grading::simple_coroot(n, i)).collect();
    for row in setup.lifting_table()? {
        if !out.contains(&row.representative) {
            out.push(row.representative);
        }
    }
    Ok(out)
}

/// `Ψ` is a morphism of algebras: for `v′, v″ ∈ W^P` the top-grade part of
/// `ψ(σ^{v′}) ⋆ ψ(σ^{v″})` is `ψ(σ^{v′} ⋆_P σ^{v″})` (part 1); the same with a
/// quantum parameter `ψ(q_{λ_P}) = q_{λ_B} σ^u` on one side (part 2) or both
/// (part 3). Lower terms are required to be strictly lower.
pub fn check_psi_morphism(setup: &ParabolicSetup, engine: &QhEngine, cfg: &VerifyConfig) -> Result<CheckReport> {
    let rs = setup.root_system();
    let mut ck = Check::new("psi-morphism", setup.label());
    let grader = Grader::new(setup);
    let reps = min_reps(setup, cfg.group_cap)?;
    let full = engine.group().len() <= cfg.full_pairs_limit;
    if !full {
        ck.note(format!("pairs restricted to total length ≤ {}", cfg.length_sum_cap));
    }
    let lens: Vec<usize> = reps.iter().map(|w| w.length(rs)).collect();
    // part (1)
    for a in 0..reps.len() {
        for b in a..reps.len() {
            if !pair_filter(full, cfg.length_sum_cap, lens[a], lens[b]) {
                continue;
            }
            let (v1, v2) = (&reps[a], &reps[b]);
            let prod = engine.mul_basis(v1, v2)?;
            let top = &grader.gr_w(v1) + &grader.gr_w(v2);
            let what = format!("{}⋆{}", show_elt(rs, v1), show_elt(rs, v2));
            let lead = top_part(&mut ck, setup, &grader, &prod, &top, &what);
            ck.count("part1_pairs", 1);
            for (w, lam, _) in prod.terms() {
                let in_image = setup.psi_preimage(lam, w)?.is_some();
                let at_top = !lead.coeff(w, lam).is_zero();
                ck.expect(in_image == at_top, || {
                    format!(
                        "{what}: term {} is {} the ψ-image but {} top grade {top}",
                        show_term(rs, w, lam),
                        if in_image { "in" } else { "outside" },
                        if at_top { "at" } else { "below" }
                    )
                });
            }
        }
    }
    // part (2)
    let gens = q_generators(setup)?;
    let psi_q: Vec<(Coroot, WeylElement)> = gens
        .iter()
        .map(|g| setup.psi(g, &WeylElement::identity(rs.rank())))
        .collect::<Result<_>>()?;
    for (g, (lb, u)) in gens.iter().zip(&psi_q) {
        let lu = u.length(rs);
        for (v, &lv) in reps.iter().zip(&lens) {
            if !pair_filter(full, cfg.length_sum_cap, lu, lv) {
                continue;
            }
            let prod = engine.mul_basis(v, u)?.shift_q(lb);
            let top = &grader.gr_w(v) + &grader.gr(u, lb);
            let what = format!("ψ(q{g:?})⋆{}", show_elt(rs, v));
            let lead = top_part(&mut ck, setup, &grader, &prod, &top, &what);
            let (l2, x) = setup.psi(g, v)?;
            let want = QHClass::basis(x, l2);
            ck.count("part2_pairs", 1);
            ck.expect(lead == want, || format!("{what}: top part {} ≠ {}", lead.display(rs), want.display(rs)));
        }
    }
    // part (3)
    for a in 0..gens.len() {
        for b in a..gens.len() {
            let ((la, ua), (lb, ub)) = (&psi_q[a], &psi_q[b]);
            if !pair_filter(full, cfg.length_sum_cap, ua.length(rs), ub.length(rs)) {
                continue;
            }
            let prod = engine.mul_basis(ua, ub)?.shift_q(&add(la, lb));
            let top = &grader.gr(ua, la) + &grader.gr(ub, lb);
            let what = format!("ψ(q{:?})⋆ψ(q{:?})", gens[a], gens[b]);
            let lead = top_part(&mut ck, setup, &grader, &prod, &top, &what);
            let (l2, x) = setup.psi(&add(&gens[a], &gens[b]), &WeylElement::identity(rs.rank()))?;
            let want = QHClass::basis(x, l2);
            ck.count("part3_pairs", 1);
            ck.expect(lead == want, || format!("{what}: top part {} ≠ {}", lead.display(rs), want.display(rs)));
        }
    }
    Ok(ck.finish())
}

/// The squared-class identity `q_λσ^u ⋆ q_λσ^u = q_{μ_B} + (lower terms)` for
/// each class `λ` of order two in the lifting table, where
/// `μ_B` is the (virtual null) lift of `2λ`; equivalently
/// `N_{u,u}^{id, μ_B − 2λ_B} = 1` at the top grade.
pub fn check_squared_class(setup: &ParabolicSetup, engine: &QhEngine) -> Result<CheckReport> {
    let rs = setup.root_system();
    let n = rs.rank();
    let mut ck = Check::new("squared-class", setup.label());
    let grader = Grader::new(setup);
    let rows = setup.lifting_table()?;
    if rows.is_empty() {
        ck.note("every class is virtual null; nothing to square".into());
    }
    for row in rows {
        let (lb, u) = (&row.lambda_b, &row.u);
        let two: Coroot = row.representative.iter().map(|x| 2 * x).collect();
        let mu = setup.pw_lift(&two)?;
        if !setup.is_virtual_null(&mu.lambda_b) {
            ck.count("classes_not_of_order_two", 1);
            ck.note(format!("λ_B = {lb:?}: 2λ is not virtual null, so the identity does not apply"));
            continue;
        }
        let prod = engine.mul_basis(u, u)?;
        let diff: Coroot = mu.lambda_b.iter().zip(lb).map(|(m, l)| m - 2 * l).collect();
        let n_top = prod.coeff(&WeylElement::identity(n), &diff);
        ck.expect(n_top.is_one(), || format!("N_{{u,u}}^{{id,{diff:?}}} = {n_top} for u = {}", show_elt(rs, u)));
        let shifted = prod.shift_q(&add(lb, lb));
        let top = grader.gr(u, lb).scaled(2);
        let what = format!("(q{lb:?}{})²", show_elt(rs, u));
        let lead = top_part(&mut ck, setup, &grader, &shifted, &top, &what);
        let want = QHClass::basis(WeylElement::identity(n), mu.lambda_b.clone());
        ck.expect(lead == want, || format!("{what}: top part {} ≠ q{:?}", lead.display(rs), mu.lambda_b));
        ck.count("classes", 1);
        ck.note(format!("λ_B = {lb:?}, u = {}, μ_B = {:?}", show_elt(rs, u), mu.lambda_b));
    }
    Ok(ck.finish())
}

/// Elementary pairs `(v, u) ∈ W^P × W_P` for the two leading-term checks.
fn vu_pairs(
    setup: &ParabolicSetup,
    engine: &QhEngine,
    cfg: &VerifyConfig,
    ck: &mut Check,
) -> Result<Vec<(WeylElement, WeylElement)>> {
    let rs = setup.root_system();
    let reps = min_reps(setup, cfg.group_cap)?;
    let levi = levi_elements(setup, cfg.group_cap)?;
    let full = engine.group().len() <= cfg.full_pairs_limit;
    if !full {
        ck.note(format!("pairs restricted to ℓ(v)+ℓ(u) ≤ {}", cfg.length_sum_cap));
    }
    let mut out = Vec::new();
    for v in &reps {
        for u in &levi {
            if pair_filter(full, cfg.length_sum_cap, v.length(rs), u.length(rs)) {
                out.push((v.clone(), u.clone()));
            }
        }
    }
    Ok(out)
}

/// `σ^v ⋆ σ^u = σ^{vu} + (terms of strictly lower grade)` for `v ∈ W^P`,
/// `u ∈ W_P`.
pub fn check_prop_vu(setup: &ParabolicSetup, engine: &QhEngine, cfg: &VerifyConfig) -> Result<CheckReport> {
    let rs = setup.root_system();
    let n = rs.rank();
    let mut ck = Check::new("leading-term-vu", setup.label());
    let grader = Grader::new(setup);
    for (v, u) in vu_pairs(setup, engine, cfg, &mut ck)? {
        let vu = v.mul(&u);
        let prod = engine.mul_basis(&v, &u)?;
        let top = grader.gr_w(&vu);
        let sum = &grader.gr_w(&v) + &grader.gr_w(&u);
        ck.expect(top == sum, || format!("gr(vu) = {top} ≠ gr(v)+gr(u) = {sum}"));
        let c = prod.coeff(&vu, &vec![0; n]);
        ck.expect(c.is_one(), || format!("coefficient of σ^{{vu}} in {}⋆{} is {c}", show_elt(rs, &v), show_elt(rs, &u)));
        for (w, lam, _) in prod.terms() {
            if (w, lam.iter().all(|&x| x == 0)) == (&vu, true) {
                continue;
            }
            let g = grader.gr(w, lam);
            ck.expect(g < top, || {
                format!("{} in {}⋆{} has gr {g} ≥ {top}", show_term(rs, w, lam), show_elt(rs, &v), show_elt(rs, &u))
            });
        }
        ck.count("pairs", 1);
    }
    Ok(ck.finish())
}

/// For `v ∈ W^P`, `u ∈ W_P` and terms `q_λ σ^w` of `σ^v ⋆ σ^u` at the
/// critical grade `gr(u) + gr(v)`: when `λ` is virtual null the term must be
/// `σ^{vu}` with coefficient 1. Terms with non-null `λ` at that grade fall
/// outside the statement and are counted as inapplicable.
pub fn check_virtual_null_product(setup: &ParabolicSetup, engine: &QhEngine, cfg: &VerifyConfig) -> Result<CheckReport> {
    let rs = setup.root_system();
    let mut ck = Check::new("virtual-null-product", setup.label());
    let grader = Grader::new(setup);
    for (v, u) in vu_pairs(setup, engine, cfg, &mut ck)? {
        let vu = v.mul(&u);
        let prod = engine.mul_basis(&v, &u)?;
        let crit = &grader.gr_w(&v) + &grader.gr_w(&u);
        ck.count("pairs", 1);
        for (w, lam, c) in prod.terms() {
            if grader.gr(w, lam) != crit {
                continue;
            }
            if setup.is_virtual_null(lam) {
                ck.count("virtual_null_terms", 1);
                let ok = *w == vu && lam.iter().all(|&x| x == 0) && c.is_one();
                ck.expect(ok, || {
                    format!("{} with coefficient {c} at the critical grade of {}⋆{}", show_term(rs, w, lam), show_elt(rs, &v), show_elt(rs, &u))
                });
            } else {
                ck.count("inapplicable_terms", 1);
            }
        }
    }
    ck.count("lattice_generators", setup.virtual_null_lattice().lb_basis.len() as u64);
    Ok(ck.finish())
}
