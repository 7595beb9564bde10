//! Finite crystallographic root systems of types A–G.
//!
//! Conventions used throughout the crate:
//!
//! * simple roots and coroots are indexed `0..rank` internally; every
//!   user-facing word or label is 1-based;
//! * `cartan[i][j] = ⟨α_j, α_i^∨⟩`, so `s_i(β) = β − ⟨β, α_i^∨⟩ α_i` and
//!   `s_i(λ) = λ − ⟨α_i, λ⟩ α_i^∨`;
//! * roots are integer tuples over the simple roots, coroots integer tuples
//!   over the simple coroots;
//! * the standard labelling is Bourbaki's; [`RootSystem::relabeled`] builds
//!   the same system under a permutation of the labels.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A root as coordinates over the simple roots.
pub type Root = Vec<i64>;
/// A coroot-lattice element as coordinates over the simple coroots.
pub type Coroot = Vec<i64>;

/// Cartan–Killing type letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(DynkinType::A),
            "B" => Ok(DynkinType::B),
            "C" => Ok(DynkinType::C),
            "D" => Ok(DynkinType::D),
            "E" => Ok(DynkinType::E),
            "F" => Ok(DynkinType::F),
            "G" => Ok(DynkinType::G),
            other => Err(Error::Config(format!("unknown Dynkin type {other:?}"))),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Type and rank of one connected component of a Dynkin diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentType {
    pub letter: DynkinType,
    pub rank: usize,
}

impl ComponentType {
    /// Order of the Weyl group of this component.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.letter {
            DynkinType::A => fact(n + 1),
            DynkinType::B | DynkinType::C => (1u128 << n) * fact(n),
            DynkinType::D => (1u128 << (n - 1)) * fact(n),
            DynkinType::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            DynkinType::F => 1152,
            DynkinType::G => 12,
        }
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// A finite root system with exact integer data.
#[derive(Clone, Debug)]
pub struct RootSystem {
    dynkin_type: DynkinType,
    rank: usize,
    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩`.
    cartan: Vec<Vec<i64>>,
    /// Squared lengths `(α_i, α_i)`, normalised so the short roots have 2.
    norms: Vec<i64>,
    /// Bourbaki label (1-based) of each internal index.
    labels: Vec<usize>,
    positive_roots: Vec<Root>,
    positive_coroots: Vec<Coroot>,
    root_index: HashMap<Root, usize>,
}

/// Checks that `(letter, rank)` names a finite type.
pub fn validate_type(letter: DynkinType, rank: usize) -> Result<()> {
    let ok = match letter {
        DynkinType::A => rank >= 1,
        DynkinType::B | DynkinType::C => rank >= 2,
        DynkinType::D => rank >= 4,
        DynkinType::E => (6..=8).contains(&rank),
        DynkinType::F => rank == 4,
        DynkinType::G => rank == 2,
    };
    if ok && rank <= 8 {
        Ok(())
    } else if ok {
        Err(Error::Config(format!("{letter}{rank}: ranks above 8 are not supported")))
    } else {
        Err(Error::Config(format!("{letter}{rank} is not a finite Dynkin type")))
    }
}

/// Builds the root system of the given type and rank in Bourbaki labelling.
pub fn build_root_system(letter: DynkinType, rank: usize) -> Result<RootSystem> {
    validate_type(letter, rank)?;
    let n = rank;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut norms = vec![2i64; n];
    match letter {
        DynkinType::A | DynkinType::B | DynkinType::C | DynkinType::F | DynkinType::G => {
            edges.extend((0..n - 1).map(|i| (i, i + 1)));
        }
        DynkinType::D => {
            edges.extend((0..n - 2).map(|i| (i, i + 1)));
            edges.push((n - 3, n - 1));
        }
        DynkinType::E => {
            edges.push((0, 2));
            edges.push((1, 3));
            edges.extend((2..n - 1).map(|i| (i, i + 1)));
        }
    }
    match letter {
        DynkinType::B => norms[..n - 1].iter_mut().for_each(|x| *x = 4),
        DynkinType::C => norms[n - 1] = 4,
        DynkinType::F => {
            norms[0] = 4;
            norms[1] = 4;
        }
        DynkinType::G => norms[1] = 6,
        _ => {}
    }
    let mut cartan = vec![vec![0i64; n]; n];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in &edges {
        // symmetrised form (α_i, α_j) = −max(|α_i|², |α_j|²)/2 for adjacent nodes
        let s = -norms[i].max(norms[j]) / 2;
        cartan[i][j] = 2 * s / norms[i];
        cartan[j][i] = 2 * s / norms[j];
    }
    Ok(RootSystem::from_parts(letter, cartan, norms, (1..=n).collect()))
}

impl RootSystem {
    fn from_parts(
        dynkin_type: DynkinType,
        cartan: Vec<Vec<i64>>,
        norms: Vec<i64>,
        labels: Vec<usize>,
    ) -> RootSystem {
        let rank = cartan.len();
        let mut rs = RootSystem {
            dynkin_type,
            rank,
            cartan,
            norms,
            labels,
            positive_roots: Vec::new(),
            positive_coroots: Vec::new(),
            root_index: HashMap::new(),
        };
        rs.generate_roots();
        rs
    }

    /// Breadth-first closure of the simple roots under simple reflections,
    /// keeping positive results; sorted by height, then by decreasing
    /// coordinates (so the simple roots come in index order).
    fn generate_roots(&mut self) {
        let n = self.rank;
        let mut seen: HashMap<Root, ()> = HashMap::new();
        let mut queue: std::collections::VecDeque<Root> = std::collections::VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let img = self.reflect_root(i, &beta);
                if img.iter().all(|&x| x >= 0) && img.iter().any(|&x| x > 0) && !seen.contains_key(&img) {
                    seen.insert(img.clone(), ());
                    queue.push_back(img);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_keys().collect();
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        self.root_index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        self.positive_coroots = roots
            .iter()
            .map(|r| self.coroot_of(r).expect("generated vector is a root"))
            .collect();
        self.positive_roots = roots;
    }

    /// Same root system with labels permuted: new index `k` is old label
    /// `perm[k]` (1-based). `perm` must be a permutation of `1..=rank`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<RootSystem> {
        let n = self.rank;
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::Config(format!("{perm:?} is not a permutation of 1..={n}")));
        }
        let p: Vec<usize> = perm.iter().map(|&x| x - 1).collect();
        let cartan = (0..n)
            .map(|i| (0..n).map(|j| self.cartan[p[i]][p[j]]).collect())
            .collect();
        let norms = p.iter().map(|&i| self.norms[i]).collect();
        let labels = p.iter().map(|&i| self.labels[i]).collect();
        Ok(RootSystem::from_parts(self.dynkin_type, cartan, norms, labels))
    }

    pub fn dynkin_type(&self) -> DynkinType {
        self.dynkin_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `cartan()[i][j] = ⟨α_j, α_i^∨⟩`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Squared root lengths of the simple roots (short roots have 2).
    pub fn norms(&self) -> &[i64] {
        &self.norms
    }

    /// Bourbaki label (1-based) of each internal index.
    pub fn bourbaki_labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Coroots of the positive roots, aligned with [`Self::positive_roots`].
    pub fn positive_coroots(&self) -> &[Coroot] {
        &self.positive_coroots
    }

    /// Position of a positive root in [`Self::positive_roots`].
    pub fn root_position(&self, beta: &[i64]) -> Option<usize> {
        self.root_index.get(beta).copied()
    }

    /// True when `beta` is a root (positive or negative).
    pub fn is_root(&self, beta: &[i64]) -> bool {
        if beta.len() != self.rank {
            return false;
        }
        if beta.iter().all(|&x| x >= 0) {
            self.root_index.contains_key(beta)
        } else {
            let neg: Root = beta.iter().map(|x| -x).collect();
            self.root_index.contains_key(&neg)
        }
    }

    /// Whether simple roots `i` and `j` are joined in the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    /// `⟨β, λ⟩`, the bilinear extension of the Cartan pairing.
    ///
    /// # Panics
    /// If the lengths do not match the rank; see [`Self::try_pairing`].
    pub fn pairing(&self, beta: &[i64], lambda: &[i64]) -> i64 {
        self.try_pairing(beta, lambda).expect("pairing of mismatched vectors")
    }

    /// Checked variant of [`Self::pairing`].
    pub fn try_pairing(&self, beta: &[i64], lambda: &[i64]) -> Result<i64> {
        if beta.len() != self.rank || lambda.len() != self.rank {
            return Err(Error::Usage(format!(
                "pairing expects vectors of length {}, got {} and {}",
                self.rank,
                beta.len(),
                lambda.len()
            )));
        }
        let mut s = 0;
        for (i, &l) in lambda.iter().enumerate() {
            if l != 0 {
                let row = &self.cartan[i];
                s += l * beta.iter().zip(row).map(|(b, c)| b * c).sum::<i64>();
            }
        }
        Ok(s)
    }

    /// `⟨α_i, λ⟩` for a simple root.
    pub fn simple_pairing(&self, i: usize, lambda: &[i64]) -> i64 {
        lambda.iter().enumerate().map(|(k, &l)| l * self.cartan[k][i]).sum()
    }

    /// `⟨β, α_i^∨⟩` for a simple coroot.
    pub fn pairing_with_simple_coroot(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().zip(&self.cartan[i]).map(|(b, c)| b * c).sum()
    }

    /// The symmetrised form `(β, γ)` on the root lattice.
    #[allow(clippy::needless_range_loop)]
    pub fn inner(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                if beta[i] != 0 && gamma[j] != 0 {
                    // (α_i, α_j) = cartan[i][j] · |α_i|² / 2
                    s += beta[i] * gamma[j] * self.cartan[i][j] * self.norms[i] / 2;
                }
            }
        }
        s
    }

    /// The coroot `γ^∨ = 2γ/(γ, γ)` in simple-coroot coordinates.
    pub fn coroot_of(&self, gamma: &[i64]) -> Result<Coroot> {
        if gamma.len() != self.rank || gamma.iter().all(|&x| x == 0) {
            return Err(Error::Domain(format!("{gamma:?} is not a root")));
        }
        if !self.root_index.is_empty() && !self.is_root(gamma) {
            return Err(Error::Domain(format!("{gamma:?} is not a root")));
        }
        let nn = self.inner(gamma, gamma);
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let num = gamma[i] * self.norms[i];
            if num % nn != 0 {
                return Err(Error::Domain(format!("{gamma:?} is not a root")));
            }
            out.push(num / nn);
        }
        Ok(out)
    }

    /// `s_i(β) = β − ⟨β, α_i^∨⟩ α_i`.
    pub fn reflect_root(&self, i: usize, beta: &[i64]) -> Root {
        let c = self.pairing_with_simple_coroot(beta, i);
        let mut out = beta.to_vec();
        out[i] -= c;
        out
    }

    /// `s_i(λ) = λ − ⟨α_i, λ⟩ α_i^∨`.
    pub fn reflect_coroot(&self, i: usize, lambda: &[i64]) -> Coroot {
        let c = self.simple_pairing(i, lambda);
        let mut out = lambda.to_vec();
        out[i] -= c;
        out
    }

    /// `⟨2ρ, λ⟩ = Σ_{β ∈ R^+} ⟨β, λ⟩`, which equals `2 Σ λ_i`.
    pub fn two_rho_pairing(&self, lambda: &[i64]) -> i64 {
        2 * lambda.iter().sum::<i64>()
    }

    /// Positive roots whose support lies inside `subset`.
    pub fn positive_roots_in(&self, subset: &[usize]) -> Vec<usize> {
        let mut mask = vec![false; self.rank];
        for &i in subset {
            mask[i] = true;
        }
        (0..self.positive_roots.len())
            .filter(|&k| {
                self.positive_roots[k]
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || mask[i])
            })
            .collect()
    }

    /// Highest root (the unique root of maximal height) of a connected
    /// sub-diagram.
    pub fn highest_root_in(&self, subset: &[usize]) -> Root {
        let idx = self.positive_roots_in(subset);
        self.positive_roots[*idx.last().expect("non-empty subset")].clone()
    }

    /// Connected components of the sub-diagram on `subset`, each listed in
    /// the order its members appear in `subset`.
    pub fn components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut comp_of: Vec<Option<usize>> = vec![None; subset.len()];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for start in 0..subset.len() {
            if comp_of[start].is_some() {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![start];
            comp_of[start] = Some(id);
            let mut members = vec![start];
            while let Some(a) = stack.pop() {
                for b in 0..subset.len() {
                    if comp_of[b].is_none() && self.adjacent(subset[a], subset[b]) {
                        comp_of[b] = Some(id);
                        members.push(b);
                        stack.push(b);
                    }
                }
            }
            members.sort_unstable();
            comps.push(members.into_iter().map(|k| subset[k]).collect());
        }
        comps
    }

    /// Cartan–Killing type of a connected sub-diagram.
    pub fn classify_connected(&self, comp: &[usize]) -> ComponentType {
        let n = comp.len();
        let mut max_bond = 1;
        let mut degree = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                if self.adjacent(comp[a], comp[b]) {
                    degree[a] += 1;
                    let m = self.cartan[comp[a]][comp[b]] * self.cartan[comp[b]][comp[a]];
                    max_bond = max_bond.max(m);
                }
            }
        }
        let letter = if n == 1 {
            DynkinType::A
        } else if max_bond == 3 {
            DynkinType::G
        } else if max_bond == 2 {
            let max_norm = comp.iter().map(|&i| self.norms[i]).max().unwrap();
            let long_count = comp.iter().filter(|&&i| self.norms[i] == max_norm).count();
            if n == 4 && long_count == 2 {
                DynkinType::F
            } else if n == 2 || long_count == n - 1 {
                DynkinType::B
            } else {
                DynkinType::C
            }
        } else if let Some(branch) = (0..n).find(|&a| degree[a] == 3) {
            // arm lengths from the branch node
            let mut arms = Vec::new();
            for b in 0..n {
                if self.adjacent(comp[branch], comp[b]) {
                    let mut len = 1;
                    let (mut prev, mut cur) = (branch, b);
                    loop {
                        let next = (0..n).find(|&x| x != prev && self.adjacent(comp[cur], comp[x]));
                        match next {
                            Some(x) => {
                                len += 1;
                                prev = cur;
                                cur = x;
                            }
                            None => break,
                        }
                    }
                    arms.push(len);
                }
            }
            arms.sort_unstable();
            if arms[0] == 1 && arms[1] == 1 {
                DynkinType::D
            } else {
                DynkinType::E
            }
        } else {
            DynkinType::A
        };
        ComponentType { letter, rank: n }
    }

    /// Order of the parabolic subgroup `W_S`.
    pub fn weyl_order(&self, subset: &[usize]) -> u128 {
        self.components(subset)
            .iter()
            .map(|c| self.classify_connected(c).weyl_order())
            .product()
    }

    /// All simple indices `0..rank`.
    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.rank).collect()
    }

    /// Unit coroot `α_i^∨`.
    pub fn simple_coroot(&self, i: usize) -> Coroot {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    /// Short description such as `F4` or `F4[2,3,4,1]` when relabelled.
    pub fn name(&self) -> String {
        let base = format!("{}{}", self.dynkin_type, self.rank);
        if self.labels.iter().enumerate().all(|(i, &l)| l == i + 1) {
            base
        } else {
            let l: Vec<String> = self.labels.iter().map(|x| x.to_string()).collect();
            format!("{base}[{}]", l.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_roots_and_pairings() {
        let rs = build_root_system(DynkinType::A, 2).unwrap();
        assert_eq!(rs.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rs.pairing(&[1, 0], &[1, 0]), 2);
        assert_eq!(rs.pairing(&[1, 1], &[1, 0]), 1);
        assert_eq!(rs.reflect_coroot(0, &[0, 1]), vec![1, 1]);
        assert_eq!(rs.coroot_of(&[1, 1]).unwrap(), vec![1, 1]);
    }

    #[test]
    fn b2_convention() {
        // α_1 long, α_2 short
        let rs = build_root_system(DynkinType::B, 2).unwrap();
        assert_eq!(rs.pairing(&[1, 0], &[0, 1]), -2);
        assert_eq!(rs.pairing(&[0, 1], &[1, 0]), -1);
        assert_eq!(rs.coroot_of(&[1, 2]).unwrap(), vec![1, 1]);
        assert_eq!(rs.coroot_of(&[1, 1]).unwrap(), vec![2, 1]);
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(matches!(build_root_system(DynkinType::E, 5), Err(Error::Config(_))));
        assert!(matches!(build_root_system(DynkinType::G, 3), Err(Error::Config(_))));
        assert!(matches!(build_root_system(DynkinType::B, 1), Err(Error::Config(_))));
    }

    #[test]
    fn classification_of_subdiagrams() {
        let f4 = build_root_system(DynkinType::F, 4).unwrap();
        assert_eq!(f4.classify_connected(&[0, 1, 2]).to_string(), "B3");
        assert_eq!(f4.classify_connected(&[1, 2, 3]).to_string(), "C3");
        assert_eq!(f4.classify_connected(&[1, 2]).to_string(), "B2");
        let e8 = build_root_system(DynkinType::E, 8).unwrap();
        assert_eq!(e8.classify_connected(&[0, 1, 2, 3, 4, 5]).to_string(), "E6");
        assert_eq!(e8.classify_connected(&[1, 2, 3, 4, 5]).to_string(), "D5");
        assert_eq!(e8.weyl_order(&e8.all_indices()), 696_729_600);
    }
}
