//! Independent oracles for derived values.
//!
//! Everything here is recomputed from scratch with a different model than
//! the library uses: permutations for type A (quantum Monk formula),
//! subword enumeration for the Bruhat order, classical closed formulas for
//! root and group counts, and hand-computed small cases.

use std::collections::{BTreeMap, HashSet};

use num::{BigRational, One, Zero};
use quantum_schubert::lattice::smith_invariants;
use quantum_schubert::parabolic::ParabolicSetup;
use quantum_schubert::qh::{classical_cup_pb, pb_engine, qhp_mul, QhEngine};
use quantum_schubert::rootsys::{build_root_system, DynkinType, RootSystem};
use quantum_schubert::weyl::{bruhat_leq, longest_element, parse_word, WeylElement, WeylGroup};

const CAP: u128 = 1_000_000;

fn rs(letter: DynkinType, n: usize) -> RootSystem {
    build_root_system(letter, n).unwrap()
}

fn elt(rs: &RootSystem, one_based: &str) -> WeylElement {
    WeylElement::from_word(rs, &parse_word(one_based).unwrap()).unwrap()
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

// ---------------------------------------------------------------------------
// Counts

#[test]
fn positive_root_counts_match_closed_formulas() {
    use DynkinType::*;
    let expect = |letter, n: usize| match letter {
        A => n * (n + 1) / 2,
        B | C => n * n,
        D => n * (n - 1),
        E => [36, 63, 120][n - 6],
        F => 24,
        G => 6,
    };
    let cases = [(A, 1), (A, 2), (A, 5), (B, 2), (B, 4), (C, 3), (D, 4), (D, 5), (E, 6), (E, 7), (E, 8), (F, 4), (G, 2)];
    for (letter, n) in cases {
        assert_eq!(rs(letter, n).positive_roots().len(), expect(letter, n), "{letter:?}{n}");
    }
}

#[test]
fn weyl_group_orders_match_closed_formulas() {
    use DynkinType::*;
    let fact = |n: u128| (1..=n).product::<u128>();
    for (letter, n, order) in [
        (A, 3, fact(4)),
        (B, 3, 8 * fact(3)),
        (C, 4, 16 * fact(4)),
        (D, 4, 8 * fact(4)),
        (G, 2, 12),
        (F, 4, 1152),
    ] {
        let r = rs(letter, n);
        assert_eq!(r.weyl_order(&r.all_indices()), order);
        assert_eq!(WeylGroup::enumerate(&r, &r.all_indices(), CAP).unwrap().len() as u128, order);
    }
    let e8 = rs(E, 8);
    assert_eq!(e8.weyl_order(&e8.all_indices()), 696_729_600);
}

#[test]
fn longest_element_length_is_number_of_positive_roots() {
    use DynkinType::*;
    for (letter, n) in [(A, 4), (B, 3), (C, 3), (D, 5), (F, 4), (G, 2), (E, 6)] {
        let r = rs(letter, n);
        let w0 = longest_element(&r, &r.all_indices());
        assert_eq!(w0.length(&r), r.positive_roots().len());
        assert_eq!(w0.inversion_set(&r).len(), r.positive_roots().len());
    }
}

// ---------------------------------------------------------------------------
// Coroots

/// `⟨β, λ⟩` computed directly from the Cartan matrix.
fn pair(cartan: &[Vec<i64>], beta: &[i64], lambda: &[i64]) -> i64 {
    let n = beta.len();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| beta[i] * lambda[j] * cartan[j][i]).sum()
}

#[test]
fn every_root_pairs_to_two_with_its_coroot() {
    use DynkinType::*;
    for (letter, n) in [(B, 3), (C, 3), (F, 4), (G, 2), (D, 4)] {
        let r = rs(letter, n);
        for (b, c) in r.positive_roots().iter().zip(r.positive_coroots()) {
            assert_eq!(pair(r.cartan(), b, c), 2, "{letter:?}{n}: {b:?} / {c:?}");
        }
    }
}

#[test]
fn b2_coroots_by_hand() {
    // In B2 with one long and one short simple root, the positive roots are
    // long, short, long+short (short) and long+2·short (long). With
    // α^∨ = 2α/|α|², |long|² = 2, |short|² = 1:
    //   (long+short)^∨  = 2·long^∨ + short^∨
    //   (long+2short)^∨ = long^∨ + short^∨
    let r = rs(DynkinType::B, 2);
    let c = r.cartan();
    // ⟨α_l, α_s^∨⟩ = −2 for the long root l and the short root s
    let (l, s) = if c[0][1] == -2 { (1, 0) } else { (0, 1) };
    assert_eq!(c[l][s].abs() + c[s][l].abs(), 3);
    let vec = |a: i64, b: i64| {
        let mut v = vec![0; 2];
        v[l] = a;
        v[s] = b;
        v
    };
    let roots: BTreeMap<Vec<i64>, Vec<i64>> =
        r.positive_roots().iter().cloned().zip(r.positive_coroots().iter().cloned()).collect();
    assert_eq!(roots.len(), 4);
    assert_eq!(roots[&vec(1, 0)], vec(1, 0));
    assert_eq!(roots[&vec(0, 1)], vec(0, 1));
    assert_eq!(roots[&vec(1, 1)], vec(2, 1));
    assert_eq!(roots[&vec(1, 2)], vec(1, 1));
}

// ---------------------------------------------------------------------------
// Bruhat order via the subword property

fn subword_ideal(r: &RootSystem, v: &WeylElement) -> HashSet<Vec<i64>> {
    let word = v.reduced_word(r);
    let mut out = HashSet::new();
    for mask in 0u32..(1 << word.len()) {
        let sub: Vec<usize> = word.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
        out.insert(WeylElement::from_word(r, &sub).unwrap().action().to_vec());
    }
    out
}

#[test]
fn bruhat_order_matches_subword_property() {
    for (letter, n) in [(DynkinType::A, 3), (DynkinType::B, 3), (DynkinType::G, 2)] {
        let r = rs(letter, n);
        let g = WeylGroup::enumerate(&r, &r.all_indices(), CAP).unwrap();
        for v in g.elements() {
            let below = subword_ideal(&r, v);
            for u in g.elements() {
                assert_eq!(bruhat_leq(&r, u, v), below.contains(u.action()), "{letter:?}{n}");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Type A: quantum Monk formula on permutations

type Perm = Vec<usize>;

fn perm_of_word(n: usize, word: &[usize]) -> Perm {
    let mut p: Perm = (0..n).collect();
    for &i in word {
        p.swap(i, i + 1);
    }
    p
}

fn inversions(p: &Perm) -> usize {
    (0..p.len()).flat_map(|a| (a + 1..p.len()).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count()
}

/// `σ_{s_r} ⋆ σ_w` in `QH^*(Fl_n)`: transpositions `t_ab`, `a ≤ r < b`, that
/// raise the length by one, plus `q_a⋯q_{b−1}` times those that lower it by
/// `2(b−a)−1`.
fn quantum_monk(w: &Perm, r: usize) -> BTreeMap<(Perm, Vec<i64>), i64> {
    let n = w.len();
    let l = inversions(w) as i64;
    let mut out = BTreeMap::new();
    for a in 0..=r {
        for b in r + 1..n {
            let mut x = w.clone();
            x.swap(a, b);
            let lx = inversions(&x) as i64;
            let mut q = vec![0; n - 1];
            if lx == l + 1 {
                *out.entry((x, q)).or_insert(0) += 1;
            } else if lx == l - 2 * (b - a) as i64 + 1 {
                q[a..b].iter_mut().for_each(|e| *e = 1);
                *out.entry((x, q)).or_insert(0) += 1;
            }
        }
    }
    out
}

fn engine_class_as_perms(r: &RootSystem, c: &quantum_schubert::qh::QHClass) -> BTreeMap<(Perm, Vec<i64>), i64> {
    let n = r.rank() + 1;
    c.terms()
        .map(|(w, lam, k)| {
            assert!(k.is_integer());
            ((perm_of_word(n, &w.reduced_word(r)), lam.clone()), k.to_integer().try_into().unwrap())
        })
        .collect()
}

#[test]
fn chevalley_products_match_quantum_monk_in_type_a() {
    for n in 2..=4 {
        let r = rs(DynkinType::A, n);
        let engine = QhEngine::full(&r, CAP).unwrap();
        let g = WeylGroup::enumerate(&r, &r.all_indices(), CAP).unwrap();
        for w in g.elements() {
            let p = perm_of_word(n + 1, &w.reduced_word(&r));
            for i in 0..n {
                let got = engine_class_as_perms(&r, &engine.chevalley_mul(w, i).unwrap());
                assert_eq!(got, quantum_monk(&p, i), "A{n}: σ_s{} ⋆ σ_{p:?}", i + 1);
            }
        }
    }
}

/// Full products in `QH^*(Fl_n)` from the quantum Monk formula alone: each
/// Schubert class is written as a polynomial in the divisors by induction
/// on length (a linear solve over the classes of one length),
/// and products are evaluated by repeated Monk multiplication.
struct MonkRing {
    n: usize,
    /// `σ_w` as a combination of `(divisor word, q)` monomials.
    expr: BTreeMap<Perm, Expr>,
}

type Class = BTreeMap<(Perm, Vec<i64>), BigRational>;
type Expr = BTreeMap<(Vec<usize>, Vec<i64>), BigRational>;

impl MonkRing {
    fn apply_divisors(&self, word: &[usize], q: &[i64], v: &Perm) -> Class {
        let mut cur: Class = BTreeMap::new();
        cur.insert((v.clone(), q.to_vec()), BigRational::one());
        for &i in word.iter().rev() {
            let mut next = Class::new();
            for ((x, qx), c) in &cur {
                for ((y, qy), k) in quantum_monk(x, i) {
                    let qs: Vec<i64> = qx.iter().zip(&qy).map(|(a, b)| a + b).collect();
                    *next.entry((y, qs)).or_insert_with(BigRational::zero) += c * rat(k);
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        cur
    }

    fn mul(&self, u: &Perm, v: &Perm) -> Class {
        let mut out = Class::new();
        for ((word, q), c) in &self.expr[u] {
            for (k, d) in self.apply_divisors(word, q, v) {
                *out.entry(k).or_insert_with(BigRational::zero) += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn new(n: usize) -> MonkRing {
        let id: Perm = (0..n).collect();
        let mut ring = MonkRing { n, expr: BTreeMap::new() };
        ring.expr.insert(id.clone(), BTreeMap::from([((vec![], vec![0; n - 1]), BigRational::one())]));
        // Level by level: for ℓ(w) = k − 1 every Monk product σ_{s_r} ⋆ σ_w is
        // a combination of unknown classes of length k plus classes already
        // expressed; Gaussian elimination over these equations expresses
        // every class of length k.
        let mut level = vec![id];
        loop {
            let mut unknown: Vec<Perm> = Vec::new();
            let mut sparse: Vec<(BTreeMap<Perm, BigRational>, Expr)> = Vec::new();
            for w in &level {
                for r in 0..n - 1 {
                    let mut rhs = Expr::new();
                    for ((word, q), c) in &ring.expr[w] {
                        let mut wd = vec![r];
                        wd.extend(word);
                        *rhs.entry((wd, q.clone())).or_insert_with(BigRational::zero) += c;
                    }
                    let mut lhs: BTreeMap<Perm, BigRational> = BTreeMap::new();
                    for ((y, qy), k) in quantum_monk(w, r) {
                        if let Some(ey) = ring.expr.get(&y) {
                            for ((word, q), c) in ey {
                                let qs: Vec<i64> = q.iter().zip(&qy).map(|(a, b)| a + b).collect();
                                *rhs.entry((word.clone(), qs)).or_insert_with(BigRational::zero) -= c * rat(k);
                            }
                        } else {
                            assert!(qy.iter().all(|&t| t == 0), "unknown class with a q-term");
                            if !unknown.contains(&y) {
                                unknown.push(y.clone());
                            }
                            *lhs.entry(y).or_insert_with(BigRational::zero) += rat(k);
                        }
                    }
                    sparse.push((lhs, rhs));
                }
            }
            if unknown.is_empty() {
                break;
            }
            let mut rows: Vec<(Vec<BigRational>, Expr)> = sparse
                .into_iter()
                .map(|(lhs, rhs)| (unknown.iter().map(|x| lhs.get(x).cloned().unwrap_or_else(BigRational::zero)).collect(), rhs))
                .collect();
            // reduced row echelon form with expression right-hand sides
            let mut pivot_row = 0;
            for col in 0..unknown.len() {
                let Some(p) = (pivot_row..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
                    panic!("Monk equations do not determine {:?}", unknown[col]);
                };
                rows.swap(pivot_row, p);
                let inv = rows[pivot_row].0[col].recip();
                let (coeffs, rhs) = &mut rows[pivot_row];
                coeffs.iter_mut().for_each(|c| *c *= &inv);
                rhs.values_mut().for_each(|c| *c *= &inv);
                let (pc, pr) = rows[pivot_row].clone();
                for (i, (coeffs, rhs)) in rows.iter_mut().enumerate() {
                    if i == pivot_row || coeffs[col].is_zero() {
                        continue;
                    }
                    let f = coeffs[col].clone();
                    for (c, p) in coeffs.iter_mut().zip(&pc) {
                        *c -= &f * p;
                    }
                    for (k, v) in &pr {
                        *rhs.entry(k.clone()).or_insert_with(BigRational::zero) -= &f * v;
                    }
                }
                pivot_row += 1;
            }
            for (col, x) in unknown.iter().enumerate() {
                let mut e = rows[col].1.clone();
                e.retain(|_, c| !c.is_zero());
                ring.expr.insert(x.clone(), e);
            }
            level = unknown;
        }
        ring
    }
}

#[test]
fn full_products_match_monk_oracle_in_a2_and_a3() {
    for n in 2..=3 {
        let ring = MonkRing::new(n + 1);
        let r = rs(DynkinType::A, n);
        let engine = QhEngine::full(&r, CAP).unwrap();
        let g = WeylGroup::enumerate(&r, &r.all_indices(), CAP).unwrap();
        assert_eq!(ring.expr.len(), g.len(), "oracle reached every class of A{n}");
        for u in g.elements() {
            for v in g.elements() {
                let pu = perm_of_word(ring.n, &u.reduced_word(&r));
                let pv = perm_of_word(ring.n, &v.reduced_word(&r));
                let got: Class = engine
                    .mul_basis(u, v)
                    .unwrap()
                    .terms()
                    .map(|(w, lam, c)| ((perm_of_word(ring.n, &w.reduced_word(&r)), lam.clone()), c.clone()))
                    .collect();
                assert_eq!(got, ring.mul(&pu, &pv), "A{n}: {pu:?} ⋆ {pv:?}");
            }
        }
    }
}

#[test]
fn a2_divisor_square() {
    // σ^{s1} ⋆ σ^{s1} = σ^{s2 s1} + q_1
    let r = rs(DynkinType::A, 2);
    let engine = QhEngine::full(&r, CAP).unwrap();
    let s1 = elt(&r, "1");
    let p = engine.mul_basis(&s1, &s1).unwrap();
    assert_eq!(p.len(), 2);
    assert_eq!(p.coeff(&elt(&r, "2,1"), &[0, 0]), rat(1));
    assert_eq!(p.coeff(&elt(&r, ""), &[1, 0]), rat(1));
    assert_eq!(engine.gw_invariant(&s1, &s1, &elt(&r, ""), &[1, 0]).unwrap(), rat(1));
    assert_eq!(engine.gw_invariant(&s1, &s1, &elt(&r, "1,2"), &[0, 0]).unwrap(), rat(0));
}

#[test]
fn a2_relation_of_projective_plane_example() {
    // σ^{s2} ⋆ σ^{s1 s2} contains q_2 σ^{s1} with coefficient one
    let r = rs(DynkinType::A, 2);
    let engine = QhEngine::full(&r, CAP).unwrap();
    let p = engine.mul_basis(&elt(&r, "2"), &elt(&r, "1,2")).unwrap();
    assert_eq!(p.coeff(&elt(&r, "1"), &[0, 1]), rat(1));
}

// ---------------------------------------------------------------------------
// Projective plane: QH*(P²) = Q[z, t]/(z³ − t)

#[test]
fn projective_plane_products() {
    let setup = ParabolicSetup::standard(DynkinType::A, 2, &[0]).unwrap();
    let r = setup.root_system().clone();
    let engine = QhEngine::full(&r, CAP).unwrap();
    // W^P = {id, s2, s1 s2} represent 1, z, z²
    let z = [elt(&r, ""), elt(&r, "2"), elt(&r, "1,2")];
    for a in 0..3 {
        for b in 0..3 {
            let got = qhp_mul(&setup, &engine, &z[a], &z[b]).unwrap();
            // z^a z^b = t^{⌊(a+b)/3⌋} z^{(a+b) mod 3}
            let (t, e) = ((a + b) / 3, (a + b) % 3);
            assert_eq!(got.len(), 1, "z^{a} z^{b}");
            let ((key, w), c) = got.iter().next().unwrap();
            assert_eq!(*c, rat(1));
            assert_eq!(w, &z[e]);
            assert_eq!(key, &vec![t as i64], "q-exponent of z^{a} z^{b}");
        }
    }
}

// ---------------------------------------------------------------------------
// Classical cohomology of P/B: Poincaré duality

#[test]
fn poincare_duality_in_levi_flag_varieties() {
    for (letter, n, order) in [(DynkinType::B, 3, vec![0, 1]), (DynkinType::C, 3, vec![0, 1]), (DynkinType::A, 3, vec![0, 1])] {
        let setup = ParabolicSetup::standard(letter, n, &order).unwrap();
        let r = setup.root_system().clone();
        let e = pb_engine(&setup, CAP).unwrap();
        let wp = longest_element(&r, &order);
        let top = wp.length(&r);
        let g = WeylGroup::enumerate(&r, &order, CAP).unwrap();
        for u in g.elements() {
            for v in g.elements().iter().filter(|v| v.length(&r) + u.length(&r) == top) {
                // the dual of σ^u is σ^{w_P u}
                let expect = if *v == wp.mul(u) { 1 } else { 0 };
                let cup = classical_cup_pb(&e, u, v).unwrap();
                assert_eq!(cup.coeff(&wp, &vec![0; n]), rat(expect), "{letter:?}{n}");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Smith invariants via determinantal divisors

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        k => (0..k)
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..].iter().map(|row| (0..k).filter(|&j| j != c).map(|j| row[j]).collect()).collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

/// `d_k / d_{k−1}` where `d_k` is the gcd of the `k×k` minors.
fn smith_oracle(m: &[Vec<i64>]) -> Vec<i64> {
    let (rows, cols) = (m.len(), m[0].len());
    let mut d = vec![1];
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        d.push(g);
    }
    d.windows(2).map(|w| w[1] / w[0]).collect()
}

#[test]
fn smith_invariants_match_determinantal_divisors() {
    use DynkinType::*;
    let mut cases: Vec<Vec<Vec<i64>>> = vec![vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], vec![vec![6, 0], vec![0, 4]]];
    for (letter, n) in [(A, 3), (B, 3), (C, 4), (D, 4), (E, 6), (F, 4), (G, 2)] {
        cases.push(rs(letter, n).cartan().to_vec());
    }
    for m in cases {
        let got: Vec<i64> = smith_invariants(&m).into_iter().map(i64::abs).filter(|&x| x > 1).collect();
        let want: Vec<i64> = smith_oracle(&m).into_iter().map(i64::abs).filter(|&x| x > 1).collect();
        assert_eq!(got, want, "{m:?}");
    }
}
