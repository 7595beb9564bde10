//! Weyl group elements, lengths, inversion sets, reduced words, parabolic
//! cosets and the Bruhat order.
//!
//! An element is stored canonically by its integer action on the coroot
//! lattice (column `j` is the image of `α_j^∨`); the action on the root
//! lattice is carried alongside because most queries (descents, inversions)
//! are about roots.

use std::collections::{HashMap, VecDeque};

use rand::Rng;

use crate::error::{Error, Result};
use crate::rootsys::{Coroot, Root, RootSystem};

/// Default cap on the size of an enumerated group.
pub const DEFAULT_GROUP_CAP: u128 = 1_000_000;

/// An element of the Weyl group in canonical (matrix) form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    n: usize,
    /// Row-major action on the coroot lattice.
    coroot: Vec<i64>,
    /// Row-major action on the root lattice.
    root: Vec<i64>,
}

impl WeylElement {
    /// The identity of a rank-`n` Weyl group.
    pub fn identity(n: usize) -> WeylElement {
        let mut m = vec![0; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        WeylElement { n, coroot: m.clone(), root: m }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// The coroot action matrix, row-major (canonical form).
    pub fn action(&self) -> &[i64] {
        &self.coroot
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.n)
    }

    /// Product of simple reflections `s_{i_1} ⋯ s_{i_m}` (0-based indices).
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<WeylElement> {
        let mut w = WeylElement::identity(rs.rank());
        for &i in word {
            if i >= rs.rank() {
                return Err(Error::Usage(format!(
                    "simple index {} out of range 1..={}",
                    i + 1,
                    rs.rank()
                )));
            }
            w = w.mul_simple_right(rs, i);
        }
        Ok(w)
    }

    /// `w · s_i`.
    #[allow(clippy::needless_range_loop)]
    pub fn mul_simple_right(&self, rs: &RootSystem, i: usize) -> WeylElement {
        let n = self.n;
        let c = rs.cartan();
        let mut out = self.clone();
        for j in 0..n {
            // (w s_i)(α_j^∨) = w(α_j^∨) − ⟨α_i, α_j^∨⟩ w(α_i^∨)
            let a = c[j][i];
            if a != 0 && j != i {
                for k in 0..n {
                    out.coroot[k * n + j] -= a * self.coroot[k * n + i];
                }
            }
            // (w s_i)(α_j) = w(α_j) − ⟨α_j, α_i^∨⟩ w(α_i)
            let b = c[i][j];
            if b != 0 && j != i {
                for k in 0..n {
                    out.root[k * n + j] -= b * self.root[k * n + i];
                }
            }
        }
        for k in 0..n {
            out.coroot[k * n + i] = -self.coroot[k * n + i];
            out.root[k * n + i] = -self.root[k * n + i];
        }
        out
    }

    /// `s_i · w`.
    pub fn mul_simple_left(&self, rs: &RootSystem, i: usize) -> WeylElement {
        let n = self.n;
        let c = rs.cartan();
        let mut out = self.clone();
        for j in 0..n {
            // coroot column j: x ↦ x − ⟨α_i, x⟩ α_i^∨
            let p: i64 = (0..n).map(|k| self.coroot[k * n + j] * c[k][i]).sum();
            out.coroot[i * n + j] -= p;
            // root column j: β ↦ β − ⟨β, α_i^∨⟩ α_i
            let q: i64 = (0..n).map(|k| self.root[k * n + j] * c[i][k]).sum();
            out.root[i * n + j] -= q;
        }
        out
    }

    /// Group product `self · other`.
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        let n = self.n;
        let prod = |a: &[i64], b: &[i64]| {
            let mut m = vec![0; n * n];
            for i in 0..n {
                for k in 0..n {
                    let x = a[i * n + k];
                    if x != 0 {
                        for j in 0..n {
                            m[i * n + j] += x * b[k * n + j];
                        }
                    }
                }
            }
            m
        };
        WeylElement { n, coroot: prod(&self.coroot, &other.coroot), root: prod(&self.root, &other.root) }
    }

    /// The reflection `s_γ` for the positive root at position `k`:
    /// `λ ↦ λ − ⟨γ, λ⟩ γ^∨` on coroots and `β ↦ β − ⟨β, γ^∨⟩ γ` on roots.
    pub fn reflection(rs: &RootSystem, k: usize) -> WeylElement {
        let n = rs.rank();
        let gamma = &rs.positive_roots()[k];
        let gv = &rs.positive_coroots()[k];
        let mut w = WeylElement::identity(n);
        for j in 0..n {
            let p = rs.pairing_with_simple_coroot(gamma, j);
            let q = rs.simple_pairing(j, gv);
            for row in 0..n {
                w.coroot[row * n + j] -= p * gv[row];
                w.root[row * n + j] -= q * gamma[row];
            }
        }
        w
    }

    /// The inverse element.
    pub fn inverse(&self, rs: &RootSystem) -> WeylElement {
        let mut word = self.reduced_word(rs);
        word.reverse();
        WeylElement::from_word(rs, &word).expect("indices in range")
    }

    /// `w(β)` for a root-lattice vector.
    pub fn apply_root(&self, beta: &[i64]) -> Root {
        let n = self.n;
        (0..n).map(|k| (0..n).map(|j| self.root[k * n + j] * beta[j]).sum()).collect()
    }

    /// `w(λ)` for a coroot-lattice vector.
    pub fn apply_coroot(&self, lambda: &[i64]) -> Coroot {
        let n = self.n;
        (0..n).map(|k| (0..n).map(|j| self.coroot[k * n + j] * lambda[j]).sum()).collect()
    }

    /// Column sums of the root action: the sign of `sums · β` is the sign of
    /// the root `w(β)`.
    fn root_sign_functional(&self) -> Vec<i64> {
        let n = self.n;
        (0..n).map(|j| (0..n).map(|k| self.root[k * n + j]).sum()).collect()
    }

    /// Whether `ℓ(w s_i) < ℓ(w)`, i.e. `w(α_i) < 0`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        let n = self.n;
        (0..n).any(|k| self.root[k * n + i] < 0)
    }

    /// Whether `ℓ(s_i w) < ℓ(w)`, i.e. `w^{-1}(α_i) < 0`.
    pub fn is_left_descent(&self, rs: &RootSystem, i: usize) -> bool {
        // ⟨w^{-1} α_i, 2ρ^∨⟩ = ⟨α_i, w(2ρ^∨)⟩ and 2ρ^∨ = Σ γ^∨ over positive γ
        let two_rho_vee: Coroot = (0..self.n)
            .map(|k| rs.positive_coroots().iter().map(|g| g[k]).sum())
            .collect();
        rs.simple_pairing(i, &self.apply_coroot(&two_rho_vee)) < 0
    }

    /// `ℓ(w) = |Inv(w)|`.
    pub fn length(&self, rs: &RootSystem) -> usize {
        let f = self.root_sign_functional();
        rs.positive_roots()
            .iter()
            .filter(|b| b.iter().zip(&f).map(|(x, y)| x * y).sum::<i64>() < 0)
            .count()
    }

    /// `Inv(w) = {β ∈ R^+ : w(β) ∈ −R^+}`, as positions into
    /// [`RootSystem::positive_roots`].
    pub fn inversion_set(&self, rs: &RootSystem) -> Vec<usize> {
        let f = self.root_sign_functional();
        rs.positive_roots()
            .iter()
            .enumerate()
            .filter(|(_, b)| b.iter().zip(&f).map(|(x, y)| x * y).sum::<i64>() < 0)
            .map(|(k, _)| k)
            .collect()
    }

    /// Whether a positive root (given by position) is an inversion.
    pub fn inverts(&self, rs: &RootSystem, k: usize) -> bool {
        let beta = &rs.positive_roots()[k];
        self.apply_root(beta).iter().any(|&x| x < 0)
    }

    /// A reduced word, 0-based, obtained by always peeling the smallest right
    /// descent.
    pub fn reduced_word(&self, _rs: &RootSystem) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        while let Some(i) = (0..self.n).find(|&i| w.is_right_descent(i)) {
            w = w.mul_simple_right(_rs, i);
            rev.push(i);
        }
        rev.reverse();
        rev
    }

    /// `sgn_α(w)`: 1 when `ℓ(w s_α) < ℓ(w)`, else 0.
    pub fn sgn_alpha(&self, i: usize) -> u8 {
        u8::from(self.is_right_descent(i))
    }

    /// Minimal-length representative of the coset `w W_S` together with the
    /// `W_S` part: `w = rep · rest`.
    pub fn coset_decompose(&self, rs: &RootSystem, subset: &[usize]) -> (WeylElement, WeylElement) {
        let mut rep = self.clone();
        let mut peeled = Vec::new();
        loop {
            let mut best: Option<usize> = None;
            for &i in subset {
                if rep.is_right_descent(i) && best.is_none_or(|b| i < b) {
                    best = Some(i);
                }
            }
            match best {
                Some(i) => {
                    rep = rep.mul_simple_right(rs, i);
                    peeled.push(i);
                }
                None => break,
            }
        }
        peeled.reverse();
        let rest = WeylElement::from_word(rs, &peeled).expect("indices in range");
        (rep, rest)
    }

    /// Whether `w` is the minimal representative of `w W_S`.
    pub fn is_min_coset_rep(&self, subset: &[usize]) -> bool {
        subset.iter().all(|&i| !self.is_right_descent(i))
    }

    /// Whether `w ∈ W_S`.
    pub fn lies_in(&self, rs: &RootSystem, subset: &[usize]) -> bool {
        let mut mask = vec![false; self.n];
        for &i in subset {
            mask[i] = true;
        }
        self.reduced_word(rs).iter().all(|&i| mask[i])
    }
}

/// Longest element `w_S` of the parabolic subgroup `W_S`.
pub fn longest_element(rs: &RootSystem, subset: &[usize]) -> WeylElement {
    let mut w = WeylElement::identity(rs.rank());
    loop {
        let mut next = None;
        for &i in subset {
            if !w.is_right_descent(i) && next.is_none_or(|b| i < b) {
                next = Some(i);
            }
        }
        match next {
            Some(i) => w = w.mul_simple_right(rs, i),
            None => return w,
        }
    }
}

/// Factorisation `w = v_{r+1} ⋯ v_1` along a chain `Δ_0 ⊂ Δ_1 ⊂ … ⊂ Δ_{r+1}`
/// with `v_j ∈ W_{Δ_j}^{Δ_{j−1}}`.
///
/// `w` must lie in `W_{Δ_{r+1}}`. The result lists `[v_{r+1}, …, v_1]`, so
/// multiplying the list in order reassembles `w`.
pub fn parabolic_decompose(
    rs: &RootSystem,
    w: &WeylElement,
    chain: &[Vec<usize>],
) -> Result<Vec<WeylElement>> {
    for pair in chain.windows(2) {
        if !pair[0].iter().all(|i| pair[1].contains(i)) {
            return Err(Error::Usage("parabolic chain is not nested".into()));
        }
    }
    let top = chain.last().map(|c| c.as_slice()).unwrap_or(&[]);
    if !w.lies_in(rs, top) {
        return Err(Error::Usage("element does not lie in the top parabolic subgroup".into()));
    }
    let mut out = Vec::with_capacity(chain.len().saturating_sub(1));
    let mut cur = w.clone();
    for j in (1..chain.len()).rev() {
        let (v, rest) = cur.coset_decompose(rs, &chain[j - 1]);
        out.push(v);
        cur = rest;
    }
    Ok(out)
}

/// Bruhat order `u ≤ v` via the one-sided lifting recursion: for a right
/// descent `s` of `v`, `u ≤ v ⇔ min(u, us) ≤ vs`.
pub fn bruhat_leq(rs: &RootSystem, u: &WeylElement, v: &WeylElement) -> bool {
    let (lu, lv) = (u.length(rs), v.length(rs));
    bruhat_rec(rs, u.clone(), lu, v.clone(), lv)
}

fn bruhat_rec(rs: &RootSystem, u: WeylElement, lu: usize, v: WeylElement, lv: usize) -> bool {
    if lu > lv {
        return false;
    }
    if lu == 0 {
        return true;
    }
    if lu == lv {
        return u == v;
    }
    let s = (0..rs.rank()).find(|&i| v.is_right_descent(i)).expect("v is not the identity");
    let vs = v.mul_simple_right(rs, s);
    if u.is_right_descent(s) {
        bruhat_rec(rs, u.mul_simple_right(rs, s), lu - 1, vs, lv - 1)
    } else {
        bruhat_rec(rs, u, lu, vs, lv - 1)
    }
}

/// A uniformly random word of the given length over `subset`, multiplied out.
pub fn random_element<R: Rng>(rs: &RootSystem, subset: &[usize], steps: usize, rng: &mut R) -> WeylElement {
    let mut w = WeylElement::identity(rs.rank());
    if subset.is_empty() {
        return w;
    }
    for _ in 0..steps {
        let i = subset[rng.gen_range(0..subset.len())];
        w = w.mul_simple_right(rs, i);
    }
    w
}

/// An explicitly enumerated parabolic subgroup `W_S` with multiplication
/// tables for fast index-based work.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    subset: Vec<usize>,
    elements: Vec<WeylElement>,
    index: HashMap<WeylElement, u32>,
    lengths: Vec<u32>,
    /// `right[k * rank + i]` = index of `w_k s_i` (only for `i ∈ S`).
    right: Vec<u32>,
    rank: usize,
}

impl WeylGroup {
    /// Enumerates `W_S` breadth-first (so elements come in order of length).
    ///
    /// Fails with a resource error, reporting the exact order, when
    /// `|W_S| > cap`.
    pub fn enumerate(rs: &RootSystem, subset: &[usize], cap: u128) -> Result<WeylGroup> {
        let order = rs.weyl_order(subset);
        if order > cap {
            return Err(Error::Resource(format!(
                "parabolic subgroup has order {order}, above the cap {cap}"
            )));
        }
        let n = rs.rank();
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        let mut elements = vec![WeylElement::identity(n)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0u32);
        let mut lengths = vec![0u32];
        let mut right: Vec<u32> = vec![u32::MAX; n];
        let mut queue = VecDeque::from([0u32]);
        while let Some(k) = queue.pop_front() {
            for &i in &subset {
                if right[k as usize * n + i] != u32::MAX {
                    continue;
                }
                let w = elements[k as usize].mul_simple_right(rs, i);
                let j = match index.get(&w) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len() as u32;
                        let longer = !elements[k as usize].is_right_descent(i);
                        lengths.push(if longer { lengths[k as usize] + 1 } else { lengths[k as usize] - 1 });
                        index.insert(w.clone(), j);
                        elements.push(w);
                        right.extend(std::iter::repeat_n(u32::MAX, n));
                        queue.push_back(j);
                        j
                    }
                };
                right[k as usize * n + i] = j;
                right[j as usize * n + i] = k;
            }
        }
        debug_assert_eq!(elements.len() as u128, order);
        Ok(WeylGroup { subset, elements, index, lengths, right, rank: n })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, k: u32) -> &WeylElement {
        &self.elements[k as usize]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<u32> {
        self.index.get(w).copied()
    }

    pub fn length_of(&self, k: u32) -> u32 {
        self.lengths[k as usize]
    }

    /// Index of `w_k s_i`; `i` must belong to the subset.
    pub fn right_mul(&self, k: u32, i: usize) -> u32 {
        self.right[k as usize * self.rank + i]
    }

    /// Index of `w_k · s_{i_1} ⋯ s_{i_m}`.
    pub fn right_mul_word(&self, mut k: u32, word: &[usize]) -> u32 {
        for &i in word {
            k = self.right_mul(k, i);
        }
        k
    }

    /// Indices of all elements of a given length.
    pub fn of_length(&self, l: u32) -> Vec<u32> {
        (0..self.elements.len() as u32).filter(|&k| self.lengths[k as usize] == l).collect()
    }

    /// Maximal length (the length of the longest element).
    pub fn max_length(&self) -> u32 {
        *self.lengths.iter().max().unwrap_or(&0)
    }
}

/// Coset data along a chain `Δ_0 ⊂ Δ_1 ⊂ … ⊂ Δ_m`: for each step the
/// minimal representatives `W_{Δ_j}^{Δ_{j−1}}`, and the longest element of
/// each `W_{Δ_j}`.
#[derive(Clone, Debug)]
pub struct CosetTables {
    pub chain: Vec<Vec<usize>>,
    /// `layers[j − 1] = W_{Δ_j}^{Δ_{j−1}}` for `1 ≤ j ≤ m`.
    pub layers: Vec<Vec<WeylElement>>,
    /// `longest[j] = w_{Δ_j}` for `0 ≤ j ≤ m`.
    pub longest: Vec<WeylElement>,
}

impl CosetTables {
    pub fn build(rs: &RootSystem, chain: &[Vec<usize>], cap: u128) -> Result<CosetTables> {
        for pair in chain.windows(2) {
            if !pair[0].iter().all(|i| pair[1].contains(i)) {
                return Err(Error::Usage("parabolic chain is not nested".into()));
            }
        }
        let layers = chain
            .windows(2)
            .map(|p| min_coset_reps(rs, &p[1], &p[0], cap))
            .collect::<Result<Vec<_>>>()?;
        let longest = chain.iter().map(|s| longest_element(rs, s)).collect();
        Ok(CosetTables { chain: chain.to_vec(), layers, longest })
    }
}

/// All elements of `W_S`, deduplicated by canonical form.
pub fn enumerate_parabolic(rs: &RootSystem, subset: &[usize], cap: u128) -> Result<Vec<WeylElement>> {
    Ok(WeylGroup::enumerate(rs, subset, cap)?.elements)
}

/// Minimal-length representatives `W_{big}^{small}` of `W_{big}/W_{small}`.
pub fn min_coset_reps(rs: &RootSystem, big: &[usize], small: &[usize], cap: u128) -> Result<Vec<WeylElement>> {
    if !small.iter().all(|i| big.contains(i)) {
        return Err(Error::Usage("the smaller subset is not contained in the larger one".into()));
    }
    Ok(WeylGroup::enumerate(rs, big, cap)?
        .elements
        .into_iter()
        .filter(|w| w.is_min_coset_rep(small))
        .collect())
}

/// Parses a comma-separated, 1-based word such as `"1,2,1"` into 0-based
/// indices. The empty string is the empty word.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "id" || s == "e" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let k: usize = t
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("bad simple index {t:?}")))?;
            if k == 0 {
                Err(Error::Usage("simple indices are 1-based".into()))
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}

/// Parses compact words such as `"54362132436"` (one digit per letter,
/// 1-based), as printed in tables.
pub fn parse_digit_word(s: &str) -> Vec<usize> {
    s.chars()
        .filter_map(|c| c.to_digit(10))
        .map(|d| d as usize - 1)
        .collect()
}

/// Formats a 0-based word as a 1-based comma-separated string.
pub fn format_word(word: &[usize]) -> String {
    word.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, DynkinType};

    #[test]
    fn braid_relation_and_longest() {
        let rs = build_root_system(DynkinType::A, 2).unwrap();
        let a = WeylElement::from_word(&rs, &[0, 1, 0]).unwrap();
        let b = WeylElement::from_word(&rs, &[1, 0, 1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.length(&rs), 3);
        assert_eq!(a.reduced_word(&rs), vec![0, 1, 0]);
        assert_eq!(longest_element(&rs, &[0, 1]), a);
    }

    #[test]
    fn left_descent_matches_length() {
        let rs = build_root_system(DynkinType::B, 3).unwrap();
        let g = WeylGroup::enumerate(&rs, &rs.all_indices(), DEFAULT_GROUP_CAP).unwrap();
        for w in g.elements() {
            for i in 0..3 {
                let shorter = w.mul_simple_left(&rs, i).length(&rs) < w.length(&rs);
                assert_eq!(w.is_left_descent(&rs, i), shorter);
            }
        }
    }

    #[test]
    fn out_of_range_word() {
        let rs = build_root_system(DynkinType::A, 2).unwrap();
        assert!(matches!(WeylElement::from_word(&rs, &[2]), Err(Error::Usage(_))));
    }

    #[test]
    fn cap_reports_order() {
        let rs = build_root_system(DynkinType::E, 7).unwrap();
        let err = WeylGroup::enumerate(&rs, &rs.all_indices(), DEFAULT_GROUP_CAP).unwrap_err();
        assert!(err.to_string().contains("2903040"));
    }
}
