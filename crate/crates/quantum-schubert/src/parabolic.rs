//! Ordered parabolic setups, the Peterson–Woodward lifting, the map ψ and
//! the lattice of virtual null coroots.
//!
//! A setup is an ordered list `Δ_P = (α_1, …, α_r)` of simple roots; its
//! prefixes give the chain `Δ_0 = ∅ ⊂ Δ_1 ⊂ … ⊂ Δ_r = Δ_P ⊂ Δ_{r+1} = Δ`.
//! The built-in presets relabel the ambient root system so that the simple
//! root with internal index `j − 1` is the `α_j` of the ordering.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice;
use crate::rootsys::{build_root_system, Coroot, DynkinType, Root, RootSystem};
use crate::weyl::{longest_element, WeylElement};

/// Shape of the ordered parabolic data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    C1B,
    C1C,
    C2,
    C4,
    C5,
    C7,
    C9,
    C10,
    /// `Δ_P` connected of type A (including the empty and rank-one cases).
    AType,
    /// `Δ_P` has several connected components.
    Disconnected,
    /// Connected, not of type A, and matching none of the listed shapes.
    Other,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::AType => "A-type",
            CaseTag::Disconnected => "disconnected",
            CaseTag::Other => "other",
            t => return write!(f, "{t:?}"),
        };
        f.write_str(s)
    }
}

impl FromStr for CaseTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "C1B" => CaseTag::C1B,
            "C1C" => CaseTag::C1C,
            "C2" => CaseTag::C2,
            "C4" => CaseTag::C4,
            "C5" => CaseTag::C5,
            "C7" => CaseTag::C7,
            "C9" => CaseTag::C9,
            "C10" => CaseTag::C10,
            other => return Err(Error::Config(format!("unknown case tag {other:?}"))),
        })
    }
}

/// Result of the Peterson–Woodward lifting of a class `λ_P ∈ Q^∨/Q_P^∨`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lift {
    /// The unique lift `λ_B` with `⟨γ, λ_B⟩ ∈ {0, −1}` for all `γ ∈ R_P^+`.
    pub lambda_b: Coroot,
    /// `Δ_{P'} = {α ∈ Δ_P : ⟨α, λ_B⟩ = 0}`, in the order of `Δ_P`.
    pub p_prime: Vec<usize>,
    /// `⟨α, λ_B⟩` for each `α ∈ Δ_P`, in the order of `Δ_P`.
    pub pairings: Vec<i64>,
}

/// Solver for lifts relative to a fixed ordered subset of simple roots.
///
/// Tries every sign pattern `ε ∈ {0, −1}^r` for the simple-root pairings,
/// solves the `r × r` Cartan system for the correction in `Q_P^∨ ⊗ Q`, keeps
/// integral solutions and filters by the full `R_P^+` condition.
#[derive(Clone, Debug)]
pub struct LiftSolver {
    subset: Vec<usize>,
    /// `det · A^{-1}` where `A[a][b] = ⟨α_{s_a}, α_{s_b}^∨⟩`.
    adj: Vec<Vec<i64>>,
    det: i64,
    roots_p: Vec<Root>,
}

impl LiftSolver {
    pub fn new(rs: &RootSystem, subset: &[usize]) -> LiftSolver {
        let r = subset.len();
        let c = rs.cartan();
        let a: Vec<Vec<BigRational>> = (0..r)
            .map(|x| (0..r).map(|y| BigRational::from_integer(c[subset[y]][subset[x]].into())).collect())
            .collect();
        let (adj, det) = if r == 0 {
            (Vec::new(), 1)
        } else {
            let inv = lattice::invert_rational(&a).expect("Cartan submatrix is nonsingular");
            // common denominator of the inverse
            let mut den = BigInt::one();
            for row in &inv {
                for x in row {
                    den = num::integer::lcm(den, x.denom().clone());
                }
            }
            let d: i64 = i64::try_from(den.clone()).expect("small determinant");
            let adj = inv
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| i64::try_from((x * BigRational::from_integer(den.clone())).to_integer()).unwrap())
                        .collect()
                })
                .collect();
            (adj, d)
        };
        let roots_p = rs.positive_roots_in(subset).into_iter().map(|k| rs.positive_roots()[k].clone()).collect();
        LiftSolver { subset: subset.to_vec(), adj, det, roots_p }
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// Lifts the class of `lambda` modulo the coroot lattice of the subset.
    pub fn lift(&self, rs: &RootSystem, lambda: &[i64]) -> Result<Lift> {
        let r = self.subset.len();
        let base: Vec<i64> = self.subset.iter().map(|&i| rs.simple_pairing(i, lambda)).collect();
        let mut found: Vec<Lift> = Vec::new();
        for mask in 0u32..(1u32 << r) {
            let rhs: Vec<i64> = (0..r)
                .map(|a| -(((mask >> a) & 1) as i64) - base[a])
                .collect();
            let mut delta = Vec::with_capacity(r);
            let mut integral = true;
            for row in &self.adj {
                let s: i64 = row.iter().zip(&rhs).map(|(x, y)| x * y).sum();
                if s % self.det != 0 {
                    integral = false;
                    break;
                }
                delta.push(s / self.det);
            }
            if !integral {
                continue;
            }
            let mut lb = lambda.to_vec();
            for (b, &i) in self.subset.iter().enumerate() {
                lb[i] += delta[b];
            }
            if self.roots_p.iter().all(|g| matches!(rs.pairing(g, &lb), 0 | -1)) {
                let pairings: Vec<i64> = self.subset.iter().map(|&i| rs.simple_pairing(i, &lb)).collect();
                let p_prime = self
                    .subset
                    .iter()
                    .zip(&pairings)
                    .filter(|(_, &p)| p == 0)
                    .map(|(&i, _)| i)
                    .collect();
                found.push(Lift { lambda_b: lb, p_prime, pairings });
            }
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            k => Err(Error::Internal(format!(
                "Peterson–Woodward lifting of {lambda:?} relative to {:?} found {k} candidates",
                self.subset
            ))),
        }
    }
}

/// Lifting relative to an arbitrary subset (used by the recursive grading).
pub fn pw_lift_relative(rs: &RootSystem, subset: &[usize], lambda: &[i64]) -> Result<Lift> {
    LiftSolver::new(rs, subset).lift(rs, lambda)
}

/// Virtual-null-coroot data of a setup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirtualNullData {
    /// HNF basis of `L_B = {λ ∈ Q^∨ : ⟨α, λ⟩ = 0 ∀ α ∈ Δ_P}`.
    pub lb_basis: Vec<Coroot>,
    /// HNF basis of `L ⊆ Q^∨/Q_P^∨`, in the coordinates of the simple
    /// coroots outside `Δ_P` (increasing index).
    pub l_basis: Vec<Vec<i64>>,
    /// Invariant factors `> 1` of `(Q^∨/Q_P^∨)/L`; empty when trivial.
    pub invariant_factors: Vec<i64>,
    /// Order of the quotient group.
    pub quotient_order: i64,
}

/// One row of the lifting table: a nontrivial class of `(Q^∨/Q_P^∨)/L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingRow {
    /// Representative of the class as a nonnegative combination of the
    /// boundary coroots.
    pub representative: Coroot,
    pub lambda_b: Coroot,
    /// `u = w_P w_{P'}`.
    pub u: WeylElement,
    /// Simple indices `k` (0-based) with `⟨α_k, λ_B⟩ = −1`.
    pub k: Vec<usize>,
}

/// Fundamental coweights of the semisimple Levi part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviCoweightData {
    /// `coweights[a]` is `ω_{α_a, P}^∨` over all simple coroots (zero
    /// outside `Δ_P`), for the `a`-th root of `Δ_P`.
    pub coweights: Vec<Vec<BigRational>>,
}

/// The ordered parabolic setup with its derived data and caches.
#[derive(Debug)]
pub struct ParabolicSetup {
    rs: RootSystem,
    order: Vec<usize>,
    /// For each simple index, its level `1..=r+1` in the chain.
    level: Vec<usize>,
    tag: CaseTag,
    boundary: Vec<usize>,
    components: Vec<Vec<usize>>,
    label: String,
    solver: LiftSolver,
    lift_cache: Mutex<HashMap<Vec<i64>, Lift>>,
    u_cache: Mutex<HashMap<Vec<usize>, WeylElement>>,
}

impl Clone for ParabolicSetup {
    fn clone(&self) -> Self {
        ParabolicSetup {
            rs: self.rs.clone(),
            order: self.order.clone(),
            level: self.level.clone(),
            tag: self.tag,
            boundary: self.boundary.clone(),
            components: self.components.clone(),
            label: self.label.clone(),
            solver: self.solver.clone(),
            lift_cache: Mutex::new(HashMap::new()),
            u_cache: Mutex::new(HashMap::new()),
        }
    }
}

/// Bourbaki labels, in preset order `α_1, α_2, …`, of each built-in preset.
pub fn preset_permutation(tag: CaseTag, r: usize, letter: DynkinType, n: usize) -> Result<Vec<usize>> {
    use DynkinType::*;
    let bad = || Error::Config(format!("case {tag} with r={r} is not realizable in {letter}{n}"));
    let chain = |n: usize, r: usize| -> Vec<usize> {
        let mut p: Vec<usize> = (n - r + 1..=n).collect();
        p.extend((1..=n - r).rev());
        p
    };
    let perm: Vec<usize> = match (tag, letter) {
        (CaseTag::C1B, B) if r >= 2 && n > r => chain(n, r),
        (CaseTag::C1C, C) if r >= 2 && n > r => chain(n, r),
        (CaseTag::C2, D) if r >= 3 && n > r => chain(n, r),
        (CaseTag::C4, E) => match (r, n) {
            (6, 7) => vec![6, 5, 4, 3, 1, 2, 7],
            (6, 8) => vec![6, 5, 4, 3, 1, 2, 7, 8],
            (7, 8) => vec![7, 6, 5, 4, 3, 1, 2, 8],
            _ => return Err(bad()),
        },
        (CaseTag::C5, E) if r == 5 => match n {
            6 => vec![1, 3, 4, 2, 5, 6],
            7 => vec![1, 3, 4, 2, 5, 6, 7],
            8 => vec![1, 3, 4, 2, 5, 6, 7, 8],
            _ => return Err(bad()),
        },
        (CaseTag::C7, E) => match (r, n) {
            (4, 6) => vec![3, 4, 2, 5, 6, 1],
            (4, 7) => vec![5, 4, 2, 3, 1, 6, 7],
            (4, 8) => vec![5, 4, 2, 3, 1, 6, 7, 8],
            (5, 6) => vec![6, 5, 4, 2, 3, 1],
            (5, 7) => vec![6, 5, 4, 2, 3, 1, 7],
            (5, 8) => vec![6, 5, 4, 2, 3, 1, 7, 8],
            (6, 7) => vec![7, 6, 5, 4, 2, 3, 1],
            (6, 8) => vec![7, 6, 5, 4, 2, 3, 1, 8],
            (7, 8) => vec![8, 7, 6, 5, 4, 2, 3, 1],
            _ => return Err(bad()),
        },
        (CaseTag::C9, F) => match r {
            2 => vec![2, 3, 4, 1],
            3 => vec![1, 2, 3, 4],
            _ => return Err(bad()),
        },
        (CaseTag::C10, F) if r == 3 => vec![4, 3, 2, 1],
        _ => return Err(bad()),
    };
    Ok(perm)
}

/// Smallest ambient type for each preset.
pub fn minimal_ambient(tag: CaseTag, r: usize) -> Result<(DynkinType, usize)> {
    use DynkinType::*;
    Ok(match tag {
        CaseTag::C1B => (B, r + 1),
        CaseTag::C1C => (C, r + 1),
        CaseTag::C2 => (D, (r + 1).max(4)),
        CaseTag::C4 => (E, r + 1),
        CaseTag::C5 => (E, 6),
        CaseTag::C7 => match r {
            4 => (E, 6),
            5 => (E, 7),
            _ => (E, 8),
        },
        CaseTag::C9 | CaseTag::C10 => (F, 4),
        _ => return Err(Error::Config(format!("no preset for {tag}"))),
    })
}

/// Detects the case tag of an (unordered) subset from the Dynkin diagram.
pub fn detect_tag(rs: &RootSystem, subset: &[usize]) -> CaseTag {
    let comps = rs.components(subset);
    if comps.len() > 1 {
        return CaseTag::Disconnected;
    }
    if subset.is_empty() {
        return CaseTag::AType;
    }
    let ct = rs.classify_connected(subset);
    let boundary: Vec<usize> = (0..rs.rank())
        .filter(|i| !subset.contains(i) && subset.iter().any(|&j| rs.adjacent(*i, j)))
        .collect();
    use DynkinType::*;
    match (ct.letter, rs.dynkin_type()) {
        (A, _) => CaseTag::AType,
        (B, B) => CaseTag::C1B,
        (B, C) if ct.rank == 2 => CaseTag::C1C,
        (C, C) => CaseTag::C1C,
        (B, F) => CaseTag::C9,
        (C, F) => CaseTag::C10,
        (D, D) => CaseTag::C2,
        (D, E) if ct.rank == 5 && boundary.len() == 1 => CaseTag::C5,
        (D, E) => CaseTag::C7,
        (E, E) => CaseTag::C4,
        _ => CaseTag::Other,
    }
}

impl ParabolicSetup {
    /// A setup from an explicit ordering of simple indices (0-based) in a
    /// given root system. For disconnected `Δ_P` the components must be
    /// contiguous in the ordering with any non-type-A component last.
    pub fn new(rs: RootSystem, order: Vec<usize>) -> Result<ParabolicSetup> {
        let tag = detect_tag(&rs, &order);
        Self::with_tag(rs, order, tag)
    }

    fn with_tag(rs: RootSystem, order: Vec<usize>, tag: CaseTag) -> Result<ParabolicSetup> {
        let n = rs.rank();
        let mut seen = vec![false; n];
        for &i in &order {
            if i >= n {
                return Err(Error::Config(format!("simple index {} out of range 1..={n}", i + 1)));
            }
            if seen[i] {
                return Err(Error::Config(format!("simple index {} repeated", i + 1)));
            }
            seen[i] = true;
        }
        let r = order.len();
        let mut level = vec![r + 1; n];
        for (pos, &i) in order.iter().enumerate() {
            level[i] = pos + 1;
        }
        let boundary: Vec<usize> = (0..n)
            .filter(|&i| !seen[i] && order.iter().any(|&j| rs.adjacent(i, j)))
            .collect();
        // components in the order of the setup, validated for contiguity
        let mut components: Vec<Vec<usize>> = Vec::new();
        for &i in &order {
            match components.last_mut() {
                Some(c) if c.iter().any(|&j| rs.adjacent(i, j)) => c.push(i),
                _ => components.push(vec![i]),
            }
        }
        if rs.components(&order).len() != components.len() {
            return Err(Error::Config(
                "each connected component of the parabolic subset must be listed contiguously, \
                 and each prefix of a component must be connected"
                    .into(),
            ));
        }
        for (k, c) in components.iter().enumerate() {
            if k + 1 < components.len() && rs.classify_connected(c).letter != DynkinType::A {
                return Err(Error::Config(
                    "the non-type-A component of a disconnected parabolic subset must come last".into(),
                ));
            }
        }
        let labels: Vec<String> = order.iter().map(|i| (i + 1).to_string()).collect();
        let label = format!("{} P=[{}] ({tag})", rs.name(), labels.join(","));
        let solver = LiftSolver::new(&rs, &order);
        Ok(ParabolicSetup {
            rs,
            order,
            level,
            tag,
            boundary,
            components,
            label,
            solver,
            lift_cache: Mutex::new(HashMap::new()),
            u_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Built-in preset: the ambient system relabelled so that the ordering
    /// is `α_1, …, α_r` with `α_{r+1}, α_{r+2}, …` as in the case's diagram.
    pub fn preset(tag: CaseTag, r: usize, ambient: Option<(DynkinType, usize)>) -> Result<ParabolicSetup> {
        let (letter, n) = match ambient {
            Some(a) => a,
            None => minimal_ambient(tag, r)?,
        };
        let perm = preset_permutation(tag, r, letter, n)?;
        let rs = build_root_system(letter, n)?.relabeled(&perm)?;
        let detected = detect_tag(&rs, &(0..r).collect::<Vec<_>>());
        if detected != tag && !(tag == CaseTag::C2 && r == 3) && !(detected == CaseTag::C5 && tag == CaseTag::C7) {
            return Err(Error::Internal(format!("preset {tag} r={r} detected as {detected}")));
        }
        Self::with_tag(rs, (0..r).collect(), tag)
    }

    /// Setup in the standard (Bourbaki) labelling from 0-based indices.
    pub fn standard(letter: DynkinType, n: usize, order: &[usize]) -> Result<ParabolicSetup> {
        Self::new(build_root_system(letter, n)?, order.to_vec())
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Ordered `Δ_P` (0-based indices).
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// `r = |Δ_P|`.
    pub fn r(&self) -> usize {
        self.order.len()
    }

    /// Level of a simple index in the chain (`1..=r+1`).
    pub fn level(&self, i: usize) -> usize {
        self.level[i]
    }

    pub fn tag(&self) -> CaseTag {
        self.tag
    }

    /// Simple roots outside `Δ_P` adjacent to `Δ_P`.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// Connected components of `Δ_P` in the order of the setup.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `Δ_j = {α_1, …, α_j}` for `0 ≤ j ≤ r + 1` (with `Δ_{r+1} = Δ`).
    pub fn delta_j(&self, j: usize) -> Vec<usize> {
        if j > self.r() {
            self.rs.all_indices()
        } else {
            self.order[..j].to_vec()
        }
    }

    /// The chain `Δ_0 ⊂ … ⊂ Δ_{r+1}`.
    pub fn chain(&self) -> Vec<Vec<usize>> {
        (0..=self.r() + 1).map(|j| self.delta_j(j)).collect()
    }

    /// Simple indices outside `Δ_P`, increasing.
    pub fn outside(&self) -> Vec<usize> {
        (0..self.rs.rank()).filter(|&i| self.level[i] == self.r() + 1).collect()
    }

    /// Normalised coset key of `λ + Q_P^∨`: the coordinates outside `Δ_P`.
    pub fn coset_key(&self, lambda: &[i64]) -> Vec<i64> {
        self.outside().iter().map(|&i| lambda[i]).collect()
    }

    /// Representative with zero `Δ_P`-coordinates of a coset key.
    pub fn coset_representative(&self, key: &[i64]) -> Coroot {
        let mut lam = vec![0; self.rs.rank()];
        for (&i, &c) in self.outside().iter().zip(key) {
            lam[i] = c;
        }
        lam
    }

    /// Peterson–Woodward lifting of `λ + Q_P^∨`.
    pub fn pw_lift(&self, lambda: &[i64]) -> Result<Lift> {
        let key = self.coset_key(lambda);
        if let Some(l) = self.lift_cache.lock().unwrap().get(&key) {
            return Ok(l.clone());
        }
        let l = self.solver.lift(&self.rs, &self.coset_representative(&key))?;
        self.lift_cache.lock().unwrap().insert(key, l.clone());
        Ok(l)
    }

    /// `w_P w_{P'}` for a subset `P' ⊆ Δ_P`.
    pub fn u_of(&self, p_prime: &[usize]) -> WeylElement {
        let mut key = p_prime.to_vec();
        key.sort_unstable();
        if let Some(u) = self.u_cache.lock().unwrap().get(&key) {
            return u.clone();
        }
        let u = longest_element(&self.rs, &self.order).mul(&longest_element(&self.rs, &key));
        self.u_cache.lock().unwrap().insert(key, u.clone());
        u
    }

    /// Longest element `w_P`.
    pub fn w_p(&self) -> WeylElement {
        longest_element(&self.rs, &self.order)
    }

    /// `ψ(q_{λ_P} σ^w) = q_{λ_B} σ^{w w_P w_{P'}}` for `w ∈ W^P`.
    pub fn psi(&self, lambda: &[i64], w: &WeylElement) -> Result<(Coroot, WeylElement)> {
        if !w.is_min_coset_rep(&self.order) {
            return Err(Error::Usage("ψ is defined on minimal coset representatives only".into()));
        }
        let lift = self.pw_lift(lambda)?;
        let u = self.u_of(&lift.p_prime);
        Ok((lift.lambda_b, w.mul(&u)))
    }

    /// Inverse of ψ on basis elements: `Some((λ_P key, w))` when
    /// `q_λ σ^x = ψ(q_{λ_P} σ^w)` for some `w ∈ W^P`.
    pub fn psi_preimage(&self, lambda: &[i64], x: &WeylElement) -> Result<Option<(Vec<i64>, WeylElement)>> {
        let lift = self.pw_lift(lambda)?;
        if lift.lambda_b != lambda {
            return Ok(None);
        }
        let u = self.u_of(&lift.p_prime);
        let w = x.mul(&u.inverse(&self.rs));
        if !w.is_min_coset_rep(&self.order) {
            return Ok(None);
        }
        Ok(Some((self.coset_key(lambda), w)))
    }

    /// `⟨α, λ⟩ = 0` for every `α ∈ Δ_P`.
    pub fn is_virtual_null(&self, lambda: &[i64]) -> bool {
        self.order.iter().all(|&i| self.rs.simple_pairing(i, lambda) == 0)
    }

    /// Whether the class `λ + Q_P^∨` is virtual null (via its lift).
    pub fn is_virtual_null_class(&self, lambda: &[i64]) -> Result<bool> {
        Ok(self.is_virtual_null(&self.pw_lift(lambda)?.lambda_b))
    }

    /// Integer kernel `L_B`, its image `L` and the quotient structure.
    pub fn virtual_null_lattice(&self) -> VirtualNullData {
        let n = self.rs.rank();
        let a: Vec<Vec<i64>> = self
            .order
            .iter()
            .map(|&i| (0..n).map(|k| self.rs.cartan()[k][i]).collect())
            .collect();
        let lb_basis = lattice::integer_kernel(&a, n);
        let outside = self.outside();
        let proj: Vec<Vec<i64>> = lb_basis.iter().map(|v| outside.iter().map(|&i| v[i]).collect()).collect();
        let l_basis = lattice::hnf(&proj);
        let inv = lattice::smith_invariants(&l_basis);
        let quotient_order = inv.iter().product::<i64>();
        let invariant_factors = inv.into_iter().filter(|&x| x > 1).collect();
        VirtualNullData { lb_basis, l_basis, invariant_factors, quotient_order }
    }

    /// One row per nontrivial class of `(Q^∨/Q_P^∨)/L`, with the smallest
    /// nonnegative boundary-coroot representative of each class (ordered by
    /// total degree, then by decreasing coefficient vector).
    pub fn lifting_table(&self) -> Result<Vec<LiftingRow>> {
        let vn = self.virtual_null_lattice();
        let want = (vn.quotient_order - 1) as usize;
        let b = self.boundary.clone();
        let mut rows: Vec<LiftingRow> = Vec::new();
        let mut classes: Vec<Vec<i64>> = Vec::new();
        let max_total = (vn.quotient_order as usize) * b.len().max(1);
        'outer: for total in 1..=max_total {
            let mut combos = compositions(total, b.len());
            combos.sort_by(|x, y| y.cmp(x));
            for c in combos {
                if rows.len() == want {
                    break 'outer;
                }
                let mut lam = vec![0; self.rs.rank()];
                for (&i, &x) in b.iter().zip(&c) {
                    lam[i] = x as i64;
                }
                let lift = self.pw_lift(&lam)?;
                if lift.pairings.iter().all(|&p| p == 0) || classes.contains(&lift.pairings) {
                    continue;
                }
                classes.push(lift.pairings.clone());
                let k = self
                    .order
                    .iter()
                    .zip(&lift.pairings)
                    .filter(|(_, &p)| p == -1)
                    .map(|(&i, _)| i)
                    .collect();
                rows.push(LiftingRow { representative: lam, u: self.u_of(&lift.p_prime), lambda_b: lift.lambda_b, k });
            }
        }
        if rows.len() != want {
            return Err(Error::Internal("could not realise every class of the quotient".into()));
        }
        Ok(rows)
    }

    /// Fundamental coweights of the Levi part.
    pub fn levi_coweights(&self) -> LeviCoweightData {
        let r = self.r();
        let c = self.rs.cartan();
        let a: Vec<Vec<BigRational>> = (0..r)
            .map(|x| (0..r).map(|y| BigRational::from_integer(c[self.order[y]][self.order[x]].into())).collect())
            .collect();
        let inv = if r == 0 { Vec::new() } else { lattice::invert_rational(&a).expect("nonsingular") };
        let coweights = (0..r)
            .map(|j| {
                let mut v = vec![BigRational::zero(); self.rs.rank()];
                for b in 0..r {
                    v[self.order[b]] = inv[b][j].clone();
                }
                v
            })
            .collect();
        LeviCoweightData { coweights }
    }
}

/// All vectors of `k` nonnegative integers summing to `total`.
pub fn compositions(total: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_a2_lift() {
        let s = ParabolicSetup::standard(DynkinType::A, 2, &[0]).unwrap();
        let l = s.pw_lift(&[0, 1]).unwrap();
        assert_eq!(l.lambda_b, vec![0, 1]);
        assert!(l.p_prime.is_empty());
        let (lam, w) = s.psi(&[0, 1], &WeylElement::identity(2)).unwrap();
        assert_eq!(lam, vec![0, 1]);
        assert_eq!(w, WeylElement::from_word(s.root_system(), &[0]).unwrap());
    }

    #[test]
    fn zero_lift_is_trivial() {
        let s = ParabolicSetup::preset(CaseTag::C9, 2, None).unwrap();
        let l = s.pw_lift(&[0, 0, 0, 0]).unwrap();
        assert_eq!(l.lambda_b, vec![0, 0, 0, 0]);
        assert_eq!(l.p_prime, vec![0, 1]);
    }

    #[test]
    fn presets_have_expected_shape() {
        for (tag, r) in [
            (CaseTag::C1B, 2),
            (CaseTag::C1C, 3),
            (CaseTag::C2, 4),
            (CaseTag::C4, 6),
            (CaseTag::C4, 7),
            (CaseTag::C5, 5),
            (CaseTag::C7, 4),
            (CaseTag::C7, 5),
            (CaseTag::C7, 6),
            (CaseTag::C7, 7),
            (CaseTag::C9, 2),
            (CaseTag::C9, 3),
            (CaseTag::C10, 3),
        ] {
            let s = ParabolicSetup::preset(tag, r, None).unwrap();
            // α_{r+1} is adjacent to Δ_P
            assert!(s.boundary().contains(&r), "{tag} {r}");
        }
    }

    #[test]
    fn disconnected_ordering_validated() {
        let rs = build_root_system(DynkinType::A, 4).unwrap();
        assert!(ParabolicSetup::new(rs.clone(), vec![0, 2]).is_ok());
        assert!(ParabolicSetup::new(rs, vec![0, 2, 1]).is_err());
        let b4 = build_root_system(DynkinType::B, 4).unwrap();
        assert!(ParabolicSetup::new(b4.clone(), vec![2, 3, 0]).is_err());
        assert!(ParabolicSetup::new(b4, vec![0, 2, 3]).is_ok());
    }
}
