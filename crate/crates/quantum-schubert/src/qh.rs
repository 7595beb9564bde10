//! Quantum cohomology products of flag varieties.
//!
//! [`QhEngine`] computes products in `QH^*(G_S/B_S)` for the Levi-type
//! subsystem spanned by a subset `S` of simple roots (`S = Δ` gives
//! `QH^*(G/B)`; a classical engine on `S = Δ_P` gives `H^*(P/B)`).
//!
//! The only input is the quantum Chevalley formula
//!
//! ```text
//! σ^u ⋆ σ^{s_i} = Σ_γ ⟨ω_i, γ^∨⟩ σ^{u s_γ} + Σ_γ ⟨ω_i, γ^∨⟩ q_{γ^∨} σ^{u s_γ},
//! ```
//!
//! the first sum over `γ ∈ R^+` with `ℓ(u s_γ) = ℓ(u) + 1`, the second over
//! `γ` with `ℓ(u s_γ) = ℓ(u) + 1 − ⟨2ρ, γ^∨⟩`. Because the divisor classes
//! generate the ring, for each degree `d` the classical Chevalley products
//! `σ^{u'} · σ^{s_i}` (`ℓ(u') = d − 1`) span the degree-`d` Schubert classes.
//! An invertible square selection of them, inverted exactly, expresses
//! each `σ^w` as a combination of `σ^{u'} ⋆ σ^{s_i}` minus known quantum
//! corrections, and products follow by recursion on `ℓ(w)`.
//!
//! Every basis product computed is checked against nonnegativity,
//! integrality, degree homogeneity and the `sgn_α` inequality; the results
//! are tallied in a process-wide [`InvariantMonitor`].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::Grader;
use crate::lattice;
use crate::parabolic::ParabolicSetup;
use crate::rootsys::{Coroot, RootSystem};
use crate::weyl::{format_word, WeylElement, WeylGroup};

/// Default cap on the order of the Weyl group used for products.
pub const DEFAULT_PRODUCT_CAP: u128 = 10_000;

/// Maximal rank handled by the fixed-size `q`-degree keys.
const MAX_RANK: usize = 8;

/// A `q`-exponent vector over the simple coroots, as a small copyable key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QDeg(pub [i32; MAX_RANK]);

impl QDeg {
    pub fn from_coroot(lambda: &[i64]) -> QDeg {
        let mut q = [0; MAX_RANK];
        for (a, &b) in q.iter_mut().zip(lambda) {
            *a = i32::try_from(b).expect("q-exponent fits in i32");
        }
        QDeg(q)
    }

    pub fn to_coroot(self, n: usize) -> Coroot {
        self.0[..n].iter().map(|&x| x as i64).collect()
    }

    /// `Σ λ_i`, so that `⟨2ρ, λ⟩ = 2 · sum`.
    pub fn sum(self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn is_nonnegative(self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }
}

impl std::ops::Add for QDeg {
    type Output = QDeg;

    fn add(self, o: QDeg) -> QDeg {
        let mut q = self.0;
        for (a, b) in q.iter_mut().zip(o.0) {
            *a += b;
        }
        QDeg(q)
    }
}

/// A finite rational combination of `q_λ σ^w`.
///
/// Terms with negative `q`-exponents are allowed (the localized ring); use
/// [`QHClass::is_localized`] to detect them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QHClass {
    terms: BTreeMap<(WeylElement, Coroot), BigRational>,
}

impl QHClass {
    pub fn zero() -> QHClass {
        QHClass::default()
    }

    /// The basis element `q_λ σ^w`.
    pub fn basis(w: WeylElement, lambda: Coroot) -> QHClass {
        let mut c = QHClass::zero();
        c.add_term(w, lambda, BigRational::one());
        c
    }

    /// `σ^w`.
    pub fn schubert(w: WeylElement) -> QHClass {
        let n = w.rank();
        QHClass::basis(w, vec![0; n])
    }

    pub fn add_term(&mut self, w: WeylElement, lambda: Coroot, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = (w, lambda);
        let e = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_class(&mut self, other: &QHClass, scale: &BigRational) {
        for ((w, l), c) in &other.terms {
            self.add_term(w.clone(), l.clone(), c * scale);
        }
    }

    /// Coefficient of `q_λ σ^w` (zero when absent).
    pub fn coeff(&self, w: &WeylElement, lambda: &[i64]) -> BigRational {
        self.terms
            .get(&(w.clone(), lambda.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylElement, &Coroot, &BigRational)> {
        self.terms.iter().map(|((w, l), c)| (w, l, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether some term has a negative `q`-exponent.
    pub fn is_localized(&self) -> bool {
        self.terms.keys().any(|(_, l)| l.iter().any(|&x| x < 0))
    }

    /// Multiplication by `q_μ`.
    pub fn shift_q(&self, mu: &[i64]) -> QHClass {
        let mut out = QHClass::zero();
        for ((w, l), c) in &self.terms {
            let l2: Coroot = l.iter().zip(mu).map(|(a, b)| a + b).collect();
            out.add_term(w.clone(), l2, c.clone());
        }
        out
    }

    /// The terms with `q`-exponent zero (the `q = 0` specialisation).
    pub fn classical_part(&self) -> QHClass {
        let mut out = QHClass::zero();
        for ((w, l), c) in &self.terms {
            if l.iter().all(|&x| x == 0) {
                out.add_term(w.clone(), l.clone(), c.clone());
            }
        }
        out
    }

    /// JSON form with terms ordered by grade (when a grader is supplied, else
    /// by degree), then by reduced word, then by `q`.
    pub fn to_json(&self, rs: &RootSystem, grader: Option<&Grader>) -> ClassJson {
        let mut rows: Vec<(Vec<i64>, Vec<usize>, Coroot, String)> = self
            .terms
            .iter()
            .map(|((w, l), c)| {
                let key = match grader {
                    Some(g) => g.gr(w, l).0,
                    None => vec![w.length(rs) as i64 + 2 * l.iter().sum::<i64>()],
                };
                (key, w.reduced_word(rs), l.clone(), lattice::rational_string(c))
            })
            .collect();
        rows.sort();
        ClassJson {
            terms: rows
                .into_iter()
                .map(|(_, word, q, coeff)| TermJson { word: word.iter().map(|i| i + 1).collect(), q, coeff })
                .collect(),
        }
    }

    /// Compact human-readable rendering, e.g. `1·σ[2,1] + 1·q(1,0)σ[]`.
    pub fn display(&self, rs: &RootSystem) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.to_json(rs, None)
            .terms
            .iter()
            .map(|t| {
                let q = if t.q.iter().all(|&x| x == 0) {
                    String::new()
                } else {
                    format!("q({})", t.q.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                };
                let coeff = t.coeff.strip_suffix("/1").unwrap_or(&t.coeff).to_string();
                let word: Vec<usize> = t.word.iter().map(|i| i - 1).collect();
                format!("{coeff}·{q}σ[{}]", format_word(&word))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Serialised form of a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassJson {
    pub terms: Vec<TermJson>,
}

/// One serialised term; `word` is 1-based, `coeff` is `"p/q"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub word: Vec<usize>,
    pub q: Coroot,
    pub coeff: String,
}

/// Process-wide tally of invariant checks on computed basis products.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InvariantMonitor {
    /// Number of basis products `σ^u ⋆ σ^v` checked.
    pub products: u64,
    /// Number of nonzero structure constants checked.
    pub coefficients: u64,
    pub negative: u64,
    pub non_integral: u64,
    pub inhomogeneous: u64,
    pub sgn_violations: u64,
    /// Failures of commutativity or associativity recorded by callers.
    pub commutativity: u64,
    pub associativity: u64,
    /// The first few violations, for reporting.
    pub examples: Vec<String>,
}

impl InvariantMonitor {
    pub fn violations(&self) -> u64 {
        self.negative
            + self.non_integral
            + self.inhomogeneous
            + self.sgn_violations
            + self.commutativity
            + self.associativity
    }
}

fn monitor() -> &'static Mutex<InvariantMonitor> {
    static M: OnceLock<Mutex<InvariantMonitor>> = OnceLock::new();
    M.get_or_init(|| Mutex::new(InvariantMonitor::default()))
}

/// A snapshot of the process-wide invariant tally.
pub fn invariant_monitor() -> InvariantMonitor {
    monitor().lock().unwrap().clone()
}

/// Kinds of violation detected outside the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExternalViolation {
    Commutativity,
    Associativity,
}

/// Records a violation detected by a caller comparing several products.
pub fn record_violation(kind: ExternalViolation, detail: String) {
    let mut m = monitor().lock().unwrap();
    match kind {
        ExternalViolation::Commutativity => m.commutativity += 1,
        ExternalViolation::Associativity => m.associativity += 1,
    }
    if m.examples.len() < 20 {
        m.examples.push(format!("{kind:?}: {detail}"));
    }
}

/// Sparse internal class: `(element index, q) → coefficient`.
pub type Poly = HashMap<(u32, QDeg), BigRational>;

fn poly_add(p: &mut Poly, key: (u32, QDeg), c: BigRational) {
    if c.is_zero() {
        return;
    }
    match p.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// One term of the Chevalley expansion of `σ^u ⋆ σ^{s_i}` (for all `i`).
#[derive(Clone, Debug)]
struct ChevTerm {
    target: u32,
    /// `γ^∨`, over all simple coroots.
    coroot: QDeg,
    /// Zero for classical terms, `γ^∨` for quantum terms.
    q: QDeg,
}

/// Exact relation expressing each degree-`d` Schubert class through
/// products `σ^{u'} ⋆ σ^{s_i}`.
#[derive(Debug)]
struct DegreeRelation {
    /// Selected rows `(u', i)`.
    rows: Vec<(u32, usize)>,
    /// For each element of length `d` (by index), its expansion
    /// `Σ_k a_k (row k)`.
    expansion: HashMap<u32, Vec<(usize, BigRational)>>,
}

/// A formal combination of `q`-monomials times commuting monomials in the
/// divisor classes; keys are `(q, sorted multiset of simple indices)`.
pub type DivisorExpression = BTreeMap<(Coroot, Vec<usize>), BigRational>;

/// Product engine for one root system and subset of simple roots.
#[derive(Debug)]
pub struct QhEngine {
    rs: RootSystem,
    subset: Vec<usize>,
    quantum: bool,
    group: WeylGroup,
    /// Positive roots of the subsystem: (position in `rs`, coroot key).
    roots: Vec<(usize, QDeg)>,
    reflections: Vec<WeylElement>,
    chev: Vec<OnceLock<Vec<ChevTerm>>>,
    relations: Mutex<HashMap<u32, Arc<DegreeRelation>>>,
    memo: Mutex<HashMap<(u32, u32), Arc<Poly>>>,
    div_memo: Mutex<HashMap<u32, Arc<DivisorExpression>>>,
}

impl QhEngine {
    /// Engine for `QH^*(G/B)` of the whole root system.
    pub fn full(rs: &RootSystem, cap: u128) -> Result<QhEngine> {
        QhEngine::new(rs, &rs.all_indices(), true, cap)
    }

    /// Engine for the subsystem spanned by `subset`; with `quantum = false`
    /// it computes classical cup products only.
    pub fn new(rs: &RootSystem, subset: &[usize], quantum: bool, cap: u128) -> Result<QhEngine> {
        if rs.rank() > MAX_RANK {
            return Err(Error::Config(format!("rank {} above {MAX_RANK}", rs.rank())));
        }
        let group = WeylGroup::enumerate(rs, subset, cap)?;
        let positions = rs.positive_roots_in(subset);
        let roots: Vec<(usize, QDeg)> = positions
            .iter()
            .map(|&k| (k, QDeg::from_coroot(&rs.positive_coroots()[k])))
            .collect();
        let reflections = positions.iter().map(|&k| WeylElement::reflection(rs, k)).collect();
        let chev = (0..group.len()).map(|_| OnceLock::new()).collect();
        Ok(QhEngine {
            rs: rs.clone(),
            subset: group.subset().to_vec(),
            quantum,
            group,
            roots,
            reflections,
            chev,
            relations: Mutex::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
            div_memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn is_quantum(&self) -> bool {
        self.quantum
    }

    /// Index of an element of `W_S`, or a usage error.
    pub fn index(&self, w: &WeylElement) -> Result<u32> {
        self.group
            .index_of(w)
            .ok_or_else(|| Error::Usage("element does not lie in the engine's Weyl group".into()))
    }

    fn chevalley_terms(&self, u: u32) -> &[ChevTerm] {
        self.chev[u as usize].get_or_init(|| {
            let w = self.group.element(u);
            let lu = self.group.length_of(u) as i64;
            let mut out = Vec::new();
            for (&(_, cor), refl) in self.roots.iter().zip(&self.reflections) {
                let x = w.mul(refl);
                let t = self.group.index_of(&x).expect("reflection stays in the subgroup");
                let lt = self.group.length_of(t) as i64;
                if lt == lu + 1 {
                    out.push(ChevTerm { target: t, coroot: cor, q: QDeg::default() });
                } else if self.quantum && lt == lu + 1 - 2 * cor.sum() {
                    out.push(ChevTerm { target: t, coroot: cor, q: cor });
                }
            }
            out
        })
    }

    /// `σ^u ⋆ σ^{s_i}` by the quantum Chevalley formula.
    pub fn chevalley_mul(&self, u: &WeylElement, i: usize) -> Result<QHClass> {
        if !self.subset.contains(&i) {
            return Err(Error::Usage(format!("simple index {} not in the engine's subset", i + 1)));
        }
        let k = self.index(u)?;
        let mut p = Poly::new();
        p.insert((k, QDeg::default()), BigRational::one());
        Ok(self.to_class(&self.times_divisor(&p, i)))
    }

    /// `p ⋆ σ^{s_i}` for an internal class.
    fn times_divisor(&self, p: &Poly, i: usize) -> Poly {
        let mut out = Poly::new();
        for (&(x, q), c) in p {
            for t in self.chevalley_terms(x) {
                let a = t.coroot.0[i];
                if a != 0 {
                    poly_add(&mut out, (t.target, q + t.q), c * BigRational::from_integer(a.into()));
                }
            }
        }
        out
    }

    fn relation(&self, d: u32) -> Result<Arc<DegreeRelation>> {
        if let Some(r) = self.relations.lock().unwrap().get(&d) {
            return Ok(r.clone());
        }
        let rel = Arc::new(self.build_relation(d)?);
        self.relations.lock().unwrap().insert(d, rel.clone());
        Ok(rel)
    }

    fn build_relation(&self, d: u32) -> Result<DegreeRelation> {
        let cols = self.group.of_length(d);
        let col_pos: HashMap<u32, usize> = cols.iter().enumerate().map(|(p, &w)| (w, p)).collect();
        let ncols = cols.len();
        let row_vec = |u: u32, i: usize| -> Vec<i64> {
            let mut v = vec![0i64; ncols];
            for t in self.chevalley_terms(u) {
                if t.q == QDeg::default() {
                    v[col_pos[&t.target]] += t.coroot.0[i] as i64;
                }
            }
            v
        };
        // candidates: first (w s_i, i) for each column w and right descent i,
        // then every remaining (u', i)
        let mut candidates: Vec<(u32, usize)> = Vec::new();
        for &w in &cols {
            for &i in &self.subset {
                if self.group.element(w).is_right_descent(i) {
                    candidates.push((self.group.right_mul(w, i), i));
                }
            }
        }
        for u in self.group.of_length(d - 1) {
            for &i in &self.subset {
                candidates.push((u, i));
            }
        }
        // greedy independent selection with an incremental echelon basis
        let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
        let mut rows: Vec<(u32, usize)> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (u, i) in candidates {
            if rows.len() == ncols {
                break;
            }
            if !seen.insert((u, i)) {
                continue;
            }
            let mut v: Vec<BigRational> = row_vec(u, i).into_iter().map(|x| BigRational::from_integer(x.into())).collect();
            for (p, e) in &echelon {
                if !v[*p].is_zero() {
                    let f = v[*p].clone() / &e[*p];
                    for (a, b) in v.iter_mut().zip(e) {
                        if !b.is_zero() {
                            *a -= &f * b;
                        }
                    }
                }
            }
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                echelon.push((p, v));
                rows.push((u, i));
            }
        }
        if rows.len() != ncols {
            return Err(Error::Internal(format!(
                "divisor classes fail to span degree {d} ({} of {ncols})",
                rows.len()
            )));
        }
        let b: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|&(u, i)| row_vec(u, i).into_iter().map(|x| BigRational::from_integer(x.into())).collect())
            .collect();
        let inv = lattice::invert_rational(&b).ok_or_else(|| Error::Internal("singular selection".into()))?;
        let mut expansion = HashMap::new();
        for (c, &w) in cols.iter().enumerate() {
            let e: Vec<(usize, BigRational)> =
                (0..ncols).filter(|&k| !inv[c][k].is_zero()).map(|k| (k, inv[c][k].clone())).collect();
            expansion.insert(w, e);
        }
        Ok(DegreeRelation { rows, expansion })
    }

    /// `σ^w ⋆ σ^v` on indices, expanding the first factor.
    pub fn mul_indices(&self, w: u32, v: u32) -> Result<Arc<Poly>> {
        if let Some(p) = self.memo.lock().unwrap().get(&(w, v)) {
            return Ok(p.clone());
        }
        let d = self.group.length_of(w);
        let result = if d == 0 {
            let mut p = Poly::new();
            p.insert((v, QDeg::default()), BigRational::one());
            p
        } else {
            let rel = self.relation(d)?;
            let mut out = Poly::new();
            for (k, a) in &rel.expansion[&w] {
                let (u1, i) = rel.rows[*k];
                let base = self.mul_indices(u1, v)?;
                for (key, c) in self.times_divisor(&base, i) {
                    poly_add(&mut out, key, c * a);
                }
                if self.quantum {
                    for t in self.chevalley_terms(u1) {
                        let coef = t.coroot.0[i];
                        if coef == 0 || t.q == QDeg::default() {
                            continue;
                        }
                        let sub = self.mul_indices(t.target, v)?;
                        let f = a * BigRational::from_integer(coef.into());
                        for (&(x, q), c) in sub.iter() {
                            poly_add(&mut out, (x, q + t.q), -(c * &f));
                        }
                    }
                }
            }
            out
        };
        self.check_invariants(w, v, &result);
        let result = Arc::new(result);
        self.memo.lock().unwrap().insert((w, v), result.clone());
        Ok(result)
    }

    fn check_invariants(&self, u: u32, v: u32, p: &Poly) {
        let lu = self.group.length_of(u) as i64;
        let lv = self.group.length_of(v) as i64;
        let eu = self.group.element(u);
        let ev = self.group.element(v);
        let mut m = monitor().lock().unwrap();
        m.products += 1;
        for (&(x, q), c) in p {
            m.coefficients += 1;
            let mut bad: Vec<&str> = Vec::new();
            if c.is_negative() {
                m.negative += 1;
                bad.push("negative");
            }
            if !c.is_integer() {
                m.non_integral += 1;
                bad.push("non-integral");
            }
            if self.group.length_of(x) as i64 + 2 * q.sum() != lu + lv {
                m.inhomogeneous += 1;
                bad.push("inhomogeneous");
            }
            let ex = self.group.element(x);
            let lam = q.to_coroot(self.rs.rank());
            let sgn_ok = self.subset.iter().all(|&a| {
                ex.sgn_alpha(a) as i64 + self.rs.simple_pairing(a, &lam)
                    <= eu.sgn_alpha(a) as i64 + ev.sgn_alpha(a) as i64
            });
            if !sgn_ok {
                m.sgn_violations += 1;
                bad.push("sgn inequality");
            }
            if !bad.is_empty() && m.examples.len() < 20 {
                let e = format!(
                    "{} in σ[{}]⋆σ[{}] at q{:?}σ[{}] (coeff {c})",
                    bad.join(", "),
                    format_word(&eu.reduced_word(&self.rs)),
                    format_word(&ev.reduced_word(&self.rs)),
                    lam,
                    format_word(&ex.reduced_word(&self.rs)),
                );
                m.examples.push(e);
            }
        }
    }

    /// `σ^u ⋆ σ^v`, expanding the shorter factor.
    pub fn mul_basis(&self, u: &WeylElement, v: &WeylElement) -> Result<QHClass> {
        let (a, b) = (self.index(u)?, self.index(v)?);
        let (a, b) = if self.group.length_of(a) <= self.group.length_of(b) { (a, b) } else { (b, a) };
        Ok(self.to_class(&*self.mul_indices(a, b)?))
    }

    /// `σ^u ⋆ σ^v` expanding `u` regardless of lengths (used to test
    /// commutativity non-trivially).
    pub fn mul_basis_ordered(&self, u: &WeylElement, v: &WeylElement) -> Result<QHClass> {
        Ok(self.to_class(&*self.mul_indices(self.index(u)?, self.index(v)?)?))
    }

    /// Bilinear product of two classes in the unlocalized ring.
    pub fn qmul(&self, a: &QHClass, b: &QHClass) -> Result<QHClass> {
        if a.is_localized() || b.is_localized() {
            return Err(Error::Usage("qmul is defined on the unlocalized ring".into()));
        }
        let mut out = QHClass::zero();
        for (u, l1, c1) in a.terms() {
            for (v, l2, c2) in b.terms() {
                let prod = self.mul_basis(u, v)?;
                let shift: Coroot = l1.iter().zip(l2).map(|(x, y)| x + y).collect();
                out.add_class(&prod.shift_q(&shift), &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// `N_{u,v}^{w,λ}`.
    pub fn gw_invariant(&self, u: &WeylElement, v: &WeylElement, w: &WeylElement, lambda: &[i64]) -> Result<BigRational> {
        Ok(self.mul_basis(u, v)?.coeff(w, lambda))
    }

    fn to_class(&self, p: &Poly) -> QHClass {
        let n = self.rs.rank();
        let mut out = QHClass::zero();
        for (&(x, q), c) in p {
            out.add_term(self.group.element(x).clone(), q.to_coroot(n), c.clone());
        }
        out
    }

    /// Expresses `σ^u` through divisor classes: `σ^u = Σ c · q_λ · Π σ^{s_i}`.
    pub fn divisor_expression(&self, u: &WeylElement) -> Result<DivisorExpression> {
        Ok((*self.div_expr(self.index(u)?)?).clone())
    }

    fn div_expr(&self, w: u32) -> Result<Arc<DivisorExpression>> {
        if let Some(e) = self.div_memo.lock().unwrap().get(&w) {
            return Ok(e.clone());
        }
        let n = self.rs.rank();
        let d = self.group.length_of(w);
        let mut out = DivisorExpression::new();
        let add = |out: &mut DivisorExpression, key: (Coroot, Vec<usize>), c: BigRational| {
            let e = out.entry(key.clone()).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                out.remove(&key);
            }
        };
        if d == 0 {
            out.insert((vec![0; n], Vec::new()), BigRational::one());
        } else {
            let rel = self.relation(d)?;
            for (k, a) in &rel.expansion[&w] {
                let (u1, i) = rel.rows[*k];
                for ((q, word), c) in self.div_expr(u1)?.iter() {
                    let mut wd = word.clone();
                    wd.push(i);
                    wd.sort_unstable();
                    add(&mut out, (q.clone(), wd), c * a);
                }
                if self.quantum {
                    for t in self.chevalley_terms(u1) {
                        let coef = t.coroot.0[i];
                        if coef == 0 || t.q == QDeg::default() {
                            continue;
                        }
                        let f = a * BigRational::from_integer(coef.into());
                        for ((q, word), c) in self.div_expr(t.target)?.iter() {
                            let q2: Coroot = q.iter().zip(t.q.to_coroot(n)).map(|(x, y)| x + y).collect();
                            add(&mut out, (q2, word.clone()), -(c * &f));
                        }
                    }
                }
            }
        }
        let out = Arc::new(out);
        self.div_memo.lock().unwrap().insert(w, out.clone());
        Ok(out)
    }

    /// Evaluates a divisor expression by iterated Chevalley multiplication
    /// from `σ^{id}`.
    pub fn evaluate_divisor_expression(&self, e: &DivisorExpression) -> QHClass {
        let mut total = Poly::new();
        for ((q, word), c) in e {
            let mut p = Poly::new();
            p.insert((0, QDeg::from_coroot(q)), BigRational::one());
            for &i in word {
                p = self.times_divisor(&p, i);
            }
            for (key, x) in p {
                poly_add(&mut total, key, x * c);
            }
        }
        self.to_class(&total)
    }
}

/// A term of a `QH^*(G/P)` class: `q_{λ_P} σ^w` with `w ∈ W^P` and `λ_P`
/// given by its coset key (coordinates outside `Δ_P`).
pub type ParabolicTerm = (Vec<i64>, WeylElement);

/// `σ^u ⋆_P σ^v` for `u, v ∈ W^P`, read off the `G/B` product through the
/// comparison formula `N_{u,v}^{w,λ_P} = N_{u,v}^{w w_P w_{P'}, λ_B}`.
pub fn qhp_mul(
    setup: &ParabolicSetup,
    engine: &QhEngine,
    u: &WeylElement,
    v: &WeylElement,
) -> Result<BTreeMap<ParabolicTerm, BigRational>> {
    let order = setup.order();
    if !u.is_min_coset_rep(order) || !v.is_min_coset_rep(order) {
        return Err(Error::Usage("qhp_mul takes minimal coset representatives".into()));
    }
    let prod = engine.mul_basis(u, v)?;
    let mut out = BTreeMap::new();
    for (x, lam, c) in prod.terms() {
        if let Some(pre) = setup.psi_preimage(lam, x)? {
            out.insert(pre, c.clone());
        }
    }
    Ok(out)
}

/// Classical cup product `σ^u ∪ σ^v` in `H^*(P/B)` for `u, v ∈ W_P`.
pub fn classical_cup_pb(pb_engine: &QhEngine, u: &WeylElement, v: &WeylElement) -> Result<QHClass> {
    if pb_engine.is_quantum() {
        return Err(Error::Usage("classical_cup_pb needs a classical engine".into()));
    }
    pb_engine.mul_basis(u, v)
}

/// Builds the classical engine on `Δ_P` for `H^*(P/B)`.
pub fn pb_engine(setup: &ParabolicSetup, cap: u128) -> Result<QhEngine> {
    QhEngine::new(setup.root_system(), setup.order(), false, cap)
}

/// Integer value of a rational known to be integral.
pub fn as_integer(c: &BigRational) -> Option<BigInt> {
    c.is_integer().then(|| c.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, DynkinType};

    #[test]
    fn a2_divisor_square() {
        let rs = build_root_system(DynkinType::A, 2).unwrap();
        let e = QhEngine::full(&rs, DEFAULT_PRODUCT_CAP).unwrap();
        let s1 = WeylElement::from_word(&rs, &[0]).unwrap();
        let p = e.mul_basis(&s1, &s1).unwrap();
        let s2s1 = WeylElement::from_word(&rs, &[1, 0]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&s2s1, &[0, 0]), BigRational::one());
        assert_eq!(p.coeff(&WeylElement::identity(2), &[1, 0]), BigRational::one());
    }
}
