//! The grading maps `gr` and `gr′` on `W × Q^∨`, grade vectors under the
//! lexicographic order, and the induced filtration.
//!
//! For an ordered setup `Δ_P = (α_1, …, α_r)` every positive root `β` has a
//! *level*: the smallest `i` with `β ∈ R^+_{P_i}`, i.e. the largest chain
//! position among the simple roots in its support (roots involving a simple
//! root outside `Δ_P` have level `r + 1`). Then
//!
//! ```text
//! gr(w, λ) = Σ_i ( |Inv(w) ∩ level i| + Σ_{β of level i} ⟨β, λ⟩ ) e_i .
//! ```
//!
//! [`Grader`] evaluates this directly and is the implementation of record.
//! [`GradePrime`] implements the recursive definition through the
//! Peterson–Woodward lifting along the chain and the component-wise
//! parabolic decomposition; it exists to test that both agree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use serde::Serialize;

use crate::error::Result;
use crate::parabolic::{pw_lift_relative, ParabolicSetup};
use crate::rootsys::{Coroot, RootSystem};
use crate::weyl::{longest_element, parabolic_decompose, WeylElement};

/// An element of `Z^{r+1}`; the derived order is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GradeVector(pub Vec<i64>);

impl GradeVector {
    pub fn zero(len: usize) -> GradeVector {
        GradeVector(vec![0; len])
    }

    /// The basis vector `e_j` (1-based).
    pub fn unit(len: usize, j: usize) -> GradeVector {
        let mut v = vec![0; len];
        v[j - 1] = 1;
        GradeVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// The coordinate at `e_j` (1-based).
    pub fn at(&self, j: usize) -> i64 {
        self.0[j - 1]
    }

    /// `|a| = Σ a_i`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `a_{[j,k]}`: coordinates outside `j..=k` (1-based) set to zero.
    pub fn truncate(&self, j: usize, k: usize) -> GradeVector {
        GradeVector(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &x)| if i + 1 >= j && i < k { x } else { 0 })
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, c: i64) -> GradeVector {
        GradeVector(self.0.iter().map(|x| x * c).collect())
    }

    /// Human-readable linear combination such as `7e4-3e3-e2-e1`, highest
    /// index first.
    pub fn formula(&self) -> String {
        let mut out = String::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            out.push_str(&format!("{sign}{mag}e{}", i + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for GradeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Add<&GradeVector> for &GradeVector {
    type Output = GradeVector;
    fn add(self, o: &GradeVector) -> GradeVector {
        GradeVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&GradeVector> for &GradeVector {
    type Output = GradeVector;
    fn sub(self, o: &GradeVector) -> GradeVector {
        GradeVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&GradeVector> for GradeVector {
    fn add_assign(&mut self, o: &GradeVector) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += b;
        }
    }
}

impl Neg for GradeVector {
    type Output = GradeVector;
    fn neg(self) -> GradeVector {
        GradeVector(self.0.into_iter().map(|x| -x).collect())
    }
}

/// Lexicographic comparison.
pub fn compare(a: &GradeVector, b: &GradeVector) -> Ordering {
    a.cmp(b)
}

/// Level of each positive root of `rs` with respect to the setup.
fn root_levels(setup: &ParabolicSetup) -> Vec<usize> {
    let rs = setup.root_system();
    rs.positive_roots()
        .iter()
        .map(|b| {
            b.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, _)| setup.level(i))
                .max()
                .expect("roots are nonzero")
        })
        .collect()
}

/// Direct evaluation of `gr` for one setup, with the per-root levels and the
/// grades `gr(id, α_i^∨)` precomputed.
#[derive(Clone, Debug)]
pub struct Grader {
    rs: RootSystem,
    len: usize,
    root_level: Vec<usize>,
    coroot_grades: Vec<GradeVector>,
}

impl Grader {
    pub fn new(setup: &ParabolicSetup) -> Grader {
        let rs = setup.root_system().clone();
        let len = setup.r() + 1;
        let root_level = root_levels(setup);
        let coroot_grades = (0..rs.rank())
            .map(|i| {
                let mut g = GradeVector::zero(len);
                for (b, &lvl) in rs.positive_roots().iter().zip(&root_level) {
                    g.0[lvl - 1] += rs.pairing_with_simple_coroot(b, i);
                }
                g
            })
            .collect();
        Grader { rs, len, root_level, coroot_grades }
    }

    /// A deliberately wrong grader (each `gr(id, α_i^∨)` shifted by `e_1`),
    /// used as a negative control for the harness.
    pub fn corrupted(setup: &ParabolicSetup) -> Grader {
        let mut g = Grader::new(setup);
        for c in &mut g.coroot_grades {
            c.0[0] += 1;
        }
        g
    }

    /// `r + 1`, the length of every grade vector.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Level (1-based) of the positive root at the given position.
    pub fn root_level(&self, k: usize) -> usize {
        self.root_level[k]
    }

    /// `gr(id, α_i^∨)` for a simple index `i` (0-based).
    pub fn coroot_grade(&self, i: usize) -> &GradeVector {
        &self.coroot_grades[i]
    }

    /// `gr(w, 0)`.
    pub fn gr_w(&self, w: &WeylElement) -> GradeVector {
        let mut g = GradeVector::zero(self.len);
        for k in w.inversion_set(&self.rs) {
            g.0[self.root_level[k] - 1] += 1;
        }
        g
    }

    /// `gr(id, λ)`; `λ` may have negative coordinates.
    pub fn gr_q(&self, lambda: &[i64]) -> GradeVector {
        let mut g = GradeVector::zero(self.len);
        for (i, &c) in lambda.iter().enumerate() {
            if c != 0 {
                for (a, b) in g.0.iter_mut().zip(&self.coroot_grades[i].0) {
                    *a += c * b;
                }
            }
        }
        g
    }

    /// `gr(w, λ)`.
    pub fn gr(&self, w: &WeylElement, lambda: &[i64]) -> GradeVector {
        &self.gr_w(w) + &self.gr_q(lambda)
    }
}

/// `gr(w, λ)` for a setup.
pub fn gr(setup: &ParabolicSetup, w: &WeylElement, lambda: &[i64]) -> GradeVector {
    Grader::new(setup).gr(w, lambda)
}

/// Whether `q_λ σ^w` lies in the filtration piece `F_a`, together with
/// whether it lies in the unlocalized ring (all `q`-exponents nonnegative).
pub fn filtration_leq(setup: &ParabolicSetup, w: &WeylElement, lambda: &[i64], a: &GradeVector) -> (bool, bool) {
    (gr(setup, w, lambda) <= *a, lambda.iter().all(|&x| x >= 0))
}

/// One connected component of `Δ_P`, occupying the chain positions
/// `offset + 1 ..= offset + roots.len()`.
#[derive(Clone, Debug)]
struct Component {
    offset: usize,
    roots: Vec<usize>,
}

/// The recursive grading `gr′`, built from the lifting at each step of the
/// chain within every component and, for simple roots outside `Δ_P`, from
/// the lifting relative to `Δ_P`.
#[derive(Clone, Debug)]
pub struct GradePrime {
    rs: RootSystem,
    order: Vec<usize>,
    len: usize,
    components: Vec<Component>,
    coroot_grades: Vec<GradeVector>,
}

impl GradePrime {
    pub fn new(setup: &ParabolicSetup) -> Result<GradePrime> {
        let rs = setup.root_system().clone();
        let len = setup.r() + 1;
        let mut components = Vec::new();
        let mut offset = 0;
        for c in setup.components() {
            components.push(Component { offset, roots: c.clone() });
            offset += c.len();
        }
        let mut gp = GradePrime {
            rs,
            order: setup.order().to_vec(),
            len,
            components,
            coroot_grades: vec![GradeVector::zero(len); setup.root_system().rank()],
        };
        // within each component, level by level
        for comp in gp.components.clone() {
            for j in 0..comp.roots.len() {
                let g = gp.recursive_step(&comp.roots[..j], comp.offset + j + 1, comp.roots[j])?;
                gp.coroot_grades[comp.roots[j]] = g;
            }
        }
        // simple roots outside Δ_P, relative to the whole of Δ_P
        for i in setup.outside() {
            let g = gp.recursive_step(&gp.order.clone(), len, i)?;
            gp.coroot_grades[i] = g;
        }
        Ok(gp)
    }

    /// `gr′(id, α^∨)` for `α` at chain position `pos`, where `below` is the
    /// subset it is lifted against:
    /// `(ℓ(u) + 2 + 2Σa_i) e_pos − gr′(u, 0) − Σ a_i gr′(id, α_i^∨)`.
    fn recursive_step(&self, below: &[usize], pos: usize, alpha: usize) -> Result<GradeVector> {
        let n = self.rs.rank();
        let mut simple = vec![0; n];
        simple[alpha] = 1;
        let lift = pw_lift_relative(&self.rs, below, &simple)?;
        let u = longest_element(&self.rs, below).mul(&longest_element(&self.rs, &lift.p_prime));
        let a: Vec<i64> = below.iter().map(|&i| lift.lambda_b[i]).collect();
        let mut g = GradeVector::unit(self.len, pos)
            .scaled(u.length(&self.rs) as i64 + 2 + 2 * a.iter().sum::<i64>());
        g = &g - &self.gr_w(&u)?;
        for (&i, &ai) in below.iter().zip(&a) {
            g = &g - &self.coroot_grades[i].scaled(ai);
        }
        Ok(g)
    }

    /// `gr′(w, 0)`: write `w = v_{m+1} v_m ⋯ v_1` with `v_{m+1} ∈ W^P` and
    /// `v_k` in the `k`-th component's Weyl group, then decompose each `v_k`
    /// along the prefixes of its component.
    pub fn gr_w(&self, w: &WeylElement) -> Result<GradeVector> {
        let rs = &self.rs;
        let mut g = GradeVector::zero(self.len);
        let (top, rest) = w.coset_decompose(rs, &self.order);
        g.0[self.len - 1] += top.length(rs) as i64;
        let word = rest.reduced_word(rs);
        for comp in &self.components {
            let letters: Vec<usize> = word.iter().copied().filter(|i| comp.roots.contains(i)).collect();
            if letters.is_empty() {
                continue;
            }
            let vk = WeylElement::from_word(rs, &letters)?;
            let chain: Vec<Vec<usize>> = (0..=comp.roots.len()).map(|j| comp.roots[..j].to_vec()).collect();
            let parts = parabolic_decompose(rs, &vk, &chain)?;
            // parts = [v_top, …, v_1] for the component's chain
            for (t, v) in parts.iter().rev().enumerate() {
                g.0[comp.offset + t] += v.length(rs) as i64;
            }
        }
        Ok(g)
    }

    /// `gr′(id, α_i^∨)`.
    pub fn coroot_grade(&self, i: usize) -> &GradeVector {
        &self.coroot_grades[i]
    }

    /// `gr′(w, λ) = gr′(w, 0) + Σ λ_i gr′(id, α_i^∨)`.
    pub fn gr(&self, w: &WeylElement, lambda: &[i64]) -> Result<GradeVector> {
        let mut g = self.gr_w(w)?;
        for (i, &c) in lambda.iter().enumerate() {
            if c != 0 {
                g += &self.coroot_grades[i].scaled(c);
            }
        }
        Ok(g)
    }
}

/// `gr′(w, λ)` for a setup.
pub fn gr_prime(setup: &ParabolicSetup, w: &WeylElement, lambda: &[i64]) -> Result<GradeVector> {
    GradePrime::new(setup)?.gr(w, lambda)
}

/// One entry of a grade table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradeEntry {
    /// 1-based simple index in the setup's labelling.
    pub index: usize,
    /// Chain level of the simple root (`r + 1` outside `Δ_P`).
    pub level: usize,
    pub grade: GradeVector,
    pub formula: String,
}

/// `gr(id, α^∨)` for every simple root: first `Δ_P` in order, then the rest
/// by increasing index.
pub fn grade_table(setup: &ParabolicSetup) -> Vec<GradeEntry> {
    let g = Grader::new(setup);
    let mut idx: Vec<usize> = setup.order().to_vec();
    idx.extend(setup.outside());
    idx.into_iter()
        .map(|i| GradeEntry {
            index: i + 1,
            level: setup.level(i),
            grade: g.coroot_grade(i).clone(),
            formula: g.coroot_grade(i).formula(),
        })
        .collect()
}

/// Convenience: the coroot `Σ λ_i α_i^∨` with a single nonzero entry.
pub fn simple_coroot(n: usize, i: usize) -> Coroot {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::DynkinType;

    #[test]
    fn lexicographic_order() {
        assert!(GradeVector(vec![0, 0, 0]) < GradeVector(vec![0, 0, 1]));
        assert!(GradeVector(vec![1, 0]) > GradeVector(vec![0, 5]));
        assert_eq!(GradeVector(vec![1, -2, 3]).total(), 2);
        assert_eq!(GradeVector(vec![1, -2, 3]).truncate(2, 3), GradeVector(vec![0, -2, 3]));
        assert_eq!(GradeVector(vec![-1, -1, -3, 7]).formula(), "7e4-3e3-e2-e1");
    }

    #[test]
    fn a2_gradings() {
        let s = ParabolicSetup::standard(DynkinType::A, 2, &[0]).unwrap();
        let g = Grader::new(&s);
        assert_eq!(g.coroot_grade(0), &GradeVector(vec![2, 0]));
        assert_eq!(g.coroot_grade(1), &GradeVector(vec![-1, 3]));
        let rs = s.root_system();
        let w = WeylElement::from_word(rs, &[0, 1]).unwrap();
        assert_eq!(g.gr_w(&w), GradeVector(vec![0, 2]));
        let gp = GradePrime::new(&s).unwrap();
        assert_eq!(gp.coroot_grade(1), g.coroot_grade(1));
    }
}
