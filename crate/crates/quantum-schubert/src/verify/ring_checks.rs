//! Ring-level checks: the ideals `I ⊆ QH^*(G/B)` and `J ⊆ A`, the quotient
//! `QH^*(G/B)/I ≅ QH^*(P/B)`, classical vanishing in `H^*(P/B)`, and the
//! axioms of the product itself.

use num::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{check_filtration, levi_elements, min_reps, show_elt, show_term, Check, CheckReport, VerifyConfig};
use crate::error::Result;
use crate::grading::{GradeVector, Grader};
use crate::parabolic::{CaseTag, ParabolicSetup};
use crate::qh::{classical_cup_pb, invariant_monitor, pb_engine, qhp_mul, record_violation, ExternalViolation, QHClass, QhEngine};
use crate::rootsys::{Coroot, DynkinType};
use crate::weyl::{bruhat_leq, longest_element, random_element, WeylElement};

/// All `λ ∈ Z_{≥0}^n` with entries at most `b`.
fn nonneg_box(n: usize, b: i64) -> Vec<Coroot> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|k: Vec<i64>| {
                (0..=b).map(move |x| {
                    let mut k2 = k.clone();
                    k2.push(x);
                    k2
                })
            })
            .collect();
    }
    out
}

fn add(a: &[i64], b: &[i64]) -> Coroot {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Membership predicates for the three subspaces spanned by basis elements.
struct Filtrations {
    r: usize,
}

impl Filtrations {
    /// `I`: `gr_{r+1} > 0`.
    fn in_i(&self, g: &GradeVector) -> bool {
        g.at(self.r + 1) > 0
    }

    /// `A`: `gr_{[1,r]} ≤_lex 0`.
    fn in_a(&self, g: &GradeVector) -> bool {
        g.truncate(1, self.r) <= GradeVector::zero(g.len())
    }

    /// `J`: `gr_{[1,r]} <_lex 0`.
    fn in_j(&self, g: &GradeVector) -> bool {
        g.truncate(1, self.r) < GradeVector::zero(g.len())
    }
}

/// The class with the terms failing `keep` removed.
fn reduce(class: &QHClass, grader: &Grader, keep: impl Fn(&GradeVector) -> bool) -> QHClass {
    let mut out = QHClass::zero();
    for (w, lam, c) in class.terms() {
        if keep(&grader.gr(w, lam)) {
            out.add_term(w.clone(), lam.clone(), c.clone());
        }
    }
    out
}

/// `I` is an ideal, `A` is a subring and `J` an ideal of `A`, checked on
/// basis elements `q_λ σ^w` with `0 ≤ λ_i ≤ radius`, and the basis of the
/// quotient by `I` is `{q_λ σ^w : w ∈ W_P, λ ∈ Q_P^{∨,≥0}}`.
fn check_ideals(ck: &mut Check, setup: &ParabolicSetup, engine: &QhEngine, grader: &Grader, radius: i64) -> Result<()> {
    let rs = setup.root_system();
    let n = rs.rank();
    let f = Filtrations { r: setup.r() };
    let els = engine.group().elements();
    let lams = nonneg_box(n, radius);
    let outside = setup.outside();
    // the generators q_j preserve I
    for j in 0..n {
        let g = grader.gr_q(&rs.simple_coroot(j));
        ck.expect(g.at(f.r + 1) >= 0, || format!("gr(q_{}) = {g} lowers gr_{}", j + 1, f.r + 1));
    }
    for w in els {
        for lam in &lams {
            let g = grader.gr(w, lam);
            let levi = w.lies_in(rs, setup.order()) && outside.iter().all(|&i| lam[i] == 0);
            ck.count("basis_elements", 1);
            ck.expect(f.in_i(&g) != levi, || {
                format!("{} has gr {g} but lies {} W_P × Q_P^{{≥0}}", show_term(rs, w, lam), if levi { "in" } else { "outside" })
            });
            if !f.in_i(&g) {
                continue;
            }
            for i in 0..n {
                let prod = engine.chevalley_mul(w, i)?.shift_q(lam);
                for (x, mu, _) in prod.terms() {
                    ck.expect(f.in_i(&grader.gr(x, mu)), || {
                        format!("{}⋆σ[{}] has the term {} outside I", show_term(rs, w, lam), i + 1, show_term(rs, x, mu))
                    });
                }
                ck.count("ideal_products", 1);
            }
        }
    }
    // A · A ⊆ A and J · A ⊆ J
    let grades: Vec<GradeVector> = els.iter().map(|w| grader.gr_w(w)).collect();
    let qgr: Vec<GradeVector> = lams.iter().map(|l| grader.gr_q(l)).collect();
    for (a, u) in els.iter().enumerate() {
        for (b, v) in els.iter().enumerate().skip(a) {
            let prod = engine.mul_basis(u, v)?;
            for (l1, q1) in lams.iter().zip(&qgr) {
                let g1 = &grades[a] + q1;
                if !f.in_a(&g1) {
                    continue;
                }
                for (l2, q2) in lams.iter().zip(&qgr) {
                    let g2 = &grades[b] + q2;
                    if !f.in_a(&g2) {
                        continue;
                    }
                    let in_j = f.in_j(&g1) || f.in_j(&g2);
                    let shift = &(q1 + q2);
                    ck.count("subring_pairs", 1);
                    for (x, mu, _) in prod.terms() {
                        let g = &grader.gr(x, mu) + shift;
                        let ok = if in_j { f.in_j(&g) } else { f.in_a(&g) };
                        if !ok {
                            ck.fail(format!(
                                "{}⋆{} has the term {} outside {}",
                                show_term(rs, u, l1),
                                show_term(rs, v, l2),
                                show_term(rs, x, &add(mu, &add(l1, l2))),
                                if in_j { "J" } else { "A" }
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `QH^*(G/B)/I ≅ QH^*(P/B)`: products of `σ^u, σ^v` with `u, v ∈ W_P`
/// reduced modulo `I` agree with the quantum product of `P/B`.
fn check_quotient(ck: &mut Check, setup: &ParabolicSetup, engine: &QhEngine, grader: &Grader, cfg: &VerifyConfig) -> Result<()> {
    let rs = setup.root_system();
    let pb = QhEngine::new(rs, setup.order(), true, cfg.product_cap)?;
    let f = Filtrations { r: setup.r() };
    let levi = levi_elements(setup, cfg.group_cap)?;
    for u in &levi {
        for v in &levi {
            let ours = reduce(&engine.mul_basis(u, v)?, grader, |g| !f.in_i(g));
            let theirs = pb.mul_basis(u, v)?;
            ck.count("quotient_products", 1);
            ck.expect(ours == theirs, || {
                format!("{}⋆{} mod I = {} but QH(P/B) gives {}", show_elt(rs, u), show_elt(rs, v), ours.display(rs), theirs.display(rs))
            });
        }
    }
    Ok(())
}

/// `ψ(x) ⋆ ψ(y) − ψ(x ⋆_P y) ∈ J` for Schubert classes `x, y` of `G/P`.
fn check_psi_mod_j(ck: &mut Check, setup: &ParabolicSetup, engine: &QhEngine, grader: &Grader, cfg: &VerifyConfig) -> Result<()> {
    let rs = setup.root_system();
    let f = Filtrations { r: setup.r() };
    let reps = min_reps(setup, cfg.group_cap)?;
    for u in &reps {
        for v in &reps {
            let mut diff = engine.mul_basis(u, v)?;
            for ((key, w), c) in qhp_mul(setup, engine, u, v)? {
                let (lb, x) = setup.psi(&setup.coset_representative(&key), &w)?;
                diff.add_term(x, lb, -c);
            }
            ck.count("psi_pairs", 1);
            for (x, lam, _) in diff.terms() {
                ck.expect(f.in_j(&grader.gr(x, lam)), || {
                    format!("ψ({0})⋆ψ({1}) − ψ({0}⋆_P {1}) has the term {2} outside J", show_elt(rs, u), show_elt(rs, v), show_term(rs, x, lam))
                });
            }
        }
    }
    Ok(())
}

/// The worked example `G = SL_3`, `Δ_P = {α_1}`: explicit gradings, the
/// relations `x² = q` in the quotient by `I`, `z² = σ^{s_1 s_2}` and
/// `z³ = q_2 σ^{s_1} = ψ(q)` modulo `J`, and the `q = 0` limit.
pub fn check_example12(cfg: &VerifyConfig) -> Result<CheckReport> {
    let setup = ParabolicSetup::standard(DynkinType::A, 2, &[0])?;
    let rs = setup.root_system();
    let mut ck = Check::new("worked-example-a2", setup.label());
    let engine = QhEngine::full(rs, cfg.product_cap)?;
    let grader = Grader::new(&setup);
    let f = Filtrations { r: 1 };
    let el = |w: &[usize]| WeylElement::from_word(rs, w);

    let expected: [(&[usize], [i64; 2]); 6] =
        [(&[], [0, 0]), (&[0], [1, 0]), (&[1], [0, 1]), (&[0, 1], [0, 2]), (&[1, 0], [1, 1]), (&[0, 1, 0], [1, 2])];
    for (word, g) in expected {
        let w = el(word)?;
        let got = grader.gr_w(&w);
        ck.count("gradings", 1);
        ck.expect(got.0 == g, || format!("gr({}) = {got}, expected {g:?}", show_elt(rs, &w)));
    }
    for (j, g) in [[2, 0], [-1, 3]].into_iter().enumerate() {
        let got = grader.gr_q(&rs.simple_coroot(j));
        ck.count("gradings", 1);
        ck.expect(got.0 == g, || format!("gr(q_{}) = {got}, expected {g:?}", j + 1));
    }

    let filt = check_filtration(&setup, &engine, &grader, cfg)?;
    ck.count("filtration_pairs", filt.counts.get("pairs").copied().unwrap_or(0));
    if let Some(ce) = filt.counterexample {
        ck.fail(format!("filtration: {ce}"));
    }
    check_ideals(&mut ck, &setup, &engine, &grader, 3)?;
    check_quotient(&mut ck, &setup, &engine, &grader, cfg)?;

    // x = σ^{s_1}: x² ≡ q_1 modulo I
    let x = el(&[0])?;
    let x2 = reduce(&engine.mul_basis(&x, &x)?, &grader, |g| !f.in_i(g));
    let want = QHClass::basis(WeylElement::identity(2), vec![1, 0]);
    ck.expect(x2 == want, || format!("σ[1]⋆σ[1] mod I = {}", x2.display(rs)));

    // z = ψ(σ^{s_2}) = σ^{s_2}; t = ψ(q) = q_2 σ^{s_1}
    let z = QHClass::schubert(el(&[1])?);
    let (lb, tw) = setup.psi(&[0, 1], &WeylElement::identity(2))?;
    let t = QHClass::basis(tw, lb);
    ck.expect(t == QHClass::basis(el(&[0])?, vec![0, 1]), || format!("ψ(q) = {}", t.display(rs)));
    let z2 = engine.qmul(&z, &z)?;
    let z2_mod = reduce(&z2, &grader, |g| !f.in_j(g));
    ck.expect(z2_mod == QHClass::schubert(el(&[0, 1])?), || format!("z² mod J = {}", z2_mod.display(rs)));
    let z3 = engine.qmul(&z2, &z)?;
    let z3_mod = reduce(&z3, &grader, |g| !f.in_j(g));
    ck.expect(z3_mod == t, || format!("z³ mod J = {}, expected ψ(q) = {}", z3_mod.display(rs), t.display(rs)));
    for (w, lam, _) in z3.terms() {
        ck.expect(f.in_a(&grader.gr(w, lam)), || format!("z³ has the term {} outside A", show_term(rs, w, lam)));
    }

    // A/J has basis t^a z^e (e ≤ 2): the basis elements of grade 0 in the
    // first coordinate are exactly the image of ψ.
    let mut power = QHClass::schubert(WeylElement::identity(2));
    let mut seen = Vec::new();
    for a in 0..3 {
        let mut m = power.clone();
        for _e in 0..3 {
            let red = reduce(&m, &grader, |g| !f.in_j(g));
            let terms: Vec<_> = red.terms().map(|(w, l, c)| (w.clone(), l.clone(), c.clone())).collect();
            ck.expect(terms.len() == 1 && terms[0].2.is_one(), || format!("t^{a} z^e mod J = {}", red.display(rs)));
            if let Some((w, l, _)) = terms.first() {
                ck.expect(setup.psi_preimage(l, w)?.is_some(), || format!("{} is not in the image of ψ", show_term(rs, w, l)));
                ck.expect(!seen.contains(&(w.clone(), l.clone())), || format!("{} repeats", show_term(rs, w, l)));
                seen.push((w.clone(), l.clone()));
            }
            m = reduce(&engine.qmul(&m, &z)?, &grader, |g| !f.in_j(g));
        }
        power = reduce(&engine.qmul(&power, &t)?, &grader, |g| !f.in_j(g));
    }
    ck.count("a_mod_j_monomials", seen.len() as u64);
    let reps = min_reps(&setup, cfg.group_cap)?;
    let mut images = Vec::new();
    for a in 0..3 {
        for w in &reps {
            let (lb, x) = setup.psi(&[0, a], w)?;
            images.push((x, lb));
        }
    }
    images.sort();
    seen.sort();
    ck.expect(images == seen, || "the monomials t^a z^e (a, e < 3) are not ψ(q^a σ^w), w ∈ W^P".into());
    for w in engine.group().elements() {
        for lam in nonneg_box(2, 3) {
            let g = grader.gr(w, &lam);
            let image = setup.psi_preimage(&lam, w)?.is_some();
            ck.expect((g.at(1) == 0) == image, || format!("{}: gr {g}, in the image of ψ: {image}", show_term(rs, w, &lam)));
        }
    }

    // q = 0: ψ(σ^w) = σ^w and H^*(G/P) is a subring of H^*(G/B)
    for u in &reps {
        let (lb, x) = setup.psi(&[0, 0], u)?;
        ck.expect(lb == vec![0, 0] && x == *u, || format!("ψ({}) = {}", show_elt(rs, u), show_term(rs, &x, &lb)));
        for v in &reps {
            let cl = engine.mul_basis(u, v)?.classical_part();
            for (w, _, _) in cl.terms() {
                ck.expect(reps.contains(w), || format!("σ^{}∪σ^{} contains {}", show_elt(rs, u), show_elt(rs, v), show_elt(rs, w)));
            }
        }
    }
    Ok(ck.finish())
}

/// The general statements for one setup: `I` is an ideal with quotient
/// `QH^*(P/B)`, `A` is a subring with ideal `J`, and `ψ` is multiplicative
/// modulo `J`.
pub fn check_theorem_general(setup: &ParabolicSetup, engine: &QhEngine, cfg: &VerifyConfig) -> Result<CheckReport> {
    let mut ck = Check::new("ideal-quotient-structure", setup.label());
    let grader = Grader::new(setup);
    let radius = if engine.group().len() <= 24 { 2 } else { 1 };
    ck.note(format!("basis elements q_λσ^w with 0 ≤ λ_i ≤ {radius}"));
    check_ideals(&mut ck, setup, engine, &grader, radius)?;
    check_quotient(&mut ck, setup, engine, &grader, cfg)?;
    check_psi_mod_j(&mut ck, setup, engine, &grader, cfg)?;
    Ok(ck.finish())
}

/// Classical vanishing in `H^*(P/B)`: `σ^w ∪ σ^v ≠ 0` exactly when
/// `w ≤ w_P v` in the Bruhat order. Also checks `σ^ũ ∪ σ^ũ = 0` for the
/// special classes of the B2 and F4 (C3 Levi) instances.
pub fn check_cup_vanishing(setup: &ParabolicSetup, cfg: &VerifyConfig) -> Result<CheckReport> {
    let rs = setup.root_system();
    let mut ck = Check::new("cup-vanishing", setup.label());
    let pb = pb_engine(setup, cfg.product_cap)?;
    let wp = longest_element(rs, setup.order());
    let levi = levi_elements(setup, cfg.group_cap)?;
    for w in &levi {
        for v in &levi {
            let nonzero = !classical_cup_pb(&pb, w, v)?.is_empty();
            let leq = bruhat_leq(rs, w, &wp.mul(v));
            ck.count("pairs", 1);
            if nonzero {
                ck.count("nonzero", 1);
            }
            ck.expect(nonzero == leq, || {
                format!("σ^{} ∪ σ^{} is {}zero but w ≤ w_P v is {leq}", show_elt(rs, w), show_elt(rs, v), if nonzero { "non" } else { "" })
            });
        }
    }
    let mut squares = Vec::new();
    if setup.tag() == CaseTag::C1B && setup.r() == 2 {
        squares.push(WeylElement::from_word(rs, &[0, 1])?);
    }
    if setup.tag() == CaseTag::C10 {
        for row in setup.lifting_table()? {
            squares.push(row.u.coset_decompose(rs, &setup.delta_j(setup.r() - 1)).0);
        }
    }
    for u in &squares {
        let sq = classical_cup_pb(&pb, u, u)?;
        ck.count("squares", 1);
        ck.expect(sq.is_empty(), || format!("σ^ũ ∪ σ^ũ = {} for ũ = {}", sq.display(rs), show_elt(rs, u)));
        ck.note(format!("σ^ũ ∪ σ^ũ = 0 for ũ = {}", show_elt(rs, u)));
    }
    Ok(ck.finish())
}

/// `σ^u ⋆ σ^v = σ^v ⋆ σ^u`, each side expanded through its first factor.
/// Exhaustive for small groups, otherwise pairs with `ℓ(u) + ℓ(v)` capped.
pub fn check_commutativity(engine: &QhEngine, cfg: &VerifyConfig) -> Result<CheckReport> {
    let rs = engine.root_system();
    let mut ck = Check::new("commutativity", &rs.name());
    let g = engine.group();
    let full = g.len() <= cfg.full_pairs_limit;
    for a in 0..g.len() as u32 {
        for b in a + 1..g.len() as u32 {
            if !full && (g.length_of(a) + g.length_of(b)) as usize > cfg.length_sum_cap {
                continue;
            }
            let (u, v) = (g.element(a), g.element(b));
            let (x, y) = (engine.mul_basis_ordered(u, v)?, engine.mul_basis_ordered(v, u)?);
            ck.count("pairs", 1);
            if x != y {
                let detail = format!("{}⋆{}: {} vs {}", show_elt(rs, u), show_elt(rs, v), x.display(rs), y.display(rs));
                record_violation(ExternalViolation::Commutativity, detail.clone());
                ck.fail(detail);
            }
        }
    }
    if !full {
        ck.note(format!("pairs restricted to ℓ(u)+ℓ(v) ≤ {}", cfg.length_sum_cap));
    }
    Ok(ck.finish())
}

/// `(σ^a ⋆ σ^b) ⋆ σ^c = σ^a ⋆ (σ^b ⋆ σ^c)` on `triples` seeded random
/// triples; in groups above `full_pairs_limit` the elements are drawn with
/// few steps so that products stay cheap.
pub fn check_associativity(engine: &QhEngine, triples: usize, cfg: &VerifyConfig) -> Result<CheckReport> {
    let rs = engine.root_system();
    let mut ck = Check::new("associativity", &rs.name());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let g = engine.group();
    let small = g.len() <= cfg.full_pairs_limit;
    let all = rs.all_indices();
    let steps = if small { 2 * rs.positive_roots().len() } else { 4 };
    ck.note(format!("{triples} random triples, seed {}, {steps} random steps per element", cfg.seed));
    for _ in 0..triples {
        let pick = |rng: &mut ChaCha8Rng| {
            if small {
                g.elements().choose(rng).expect("nonempty group").clone()
            } else {
                random_element(rs, &all, steps, rng)
            }
        };
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let (sa, sb, sc) = (QHClass::schubert(a.clone()), QHClass::schubert(b.clone()), QHClass::schubert(c.clone()));
        let left = engine.qmul(&engine.qmul(&sa, &sb)?, &sc)?;
        let right = engine.qmul(&sa, &engine.qmul(&sb, &sc)?)?;
        ck.count("triples", 1);
        if left != right {
            let detail = format!("({}⋆{})⋆{}", show_elt(rs, &a), show_elt(rs, &b), show_elt(rs, &c));
            record_violation(ExternalViolation::Associativity, detail.clone());
            ck.fail(detail);
        }
    }
    Ok(ck.finish())
}

/// Structure-constant invariants of every product computed so far in the
/// process: nonnegative, integral, homogeneous, and the `sgn` inequality.
pub fn check_product_invariants() -> Result<CheckReport> {
    let m = invariant_monitor();
    let mut ck = Check::new("product-invariants", "all computed products");
    ck.count("products", m.products);
    ck.count("coefficients", m.coefficients);
    ck.count("violations", m.violations());
    ck.expect(m.products > 0, || "no products were computed".into());
    if m.violations() > 0 {
        ck.fail(m.examples.first().cloned().unwrap_or_default());
        for e in m.examples.iter().skip(1) {
            ck.note(e.clone());
        }
    }
    Ok(ck.finish())
}
