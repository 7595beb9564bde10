//! The verification harness: every checkable statement about gradings,
//! the map ψ and the quantum products becomes a named check producing a
//! [`CheckReport`].
//!
//! Checks are deterministic for a fixed [`VerifyConfig`]; randomized samples
//! draw from a ChaCha generator seeded by `config.seed`. A failing report
//! carries the first offending instance in the check's enumeration order,
//! which enumerates by increasing length so the instance is a small one.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::parabolic::ParabolicSetup;
use crate::qh::{QhEngine, DEFAULT_PRODUCT_CAP};
use crate::rootsys::RootSystem;
use crate::weyl::{WeylElement, WeylGroup, DEFAULT_GROUP_CAP};

mod grading_checks;
mod psi_checks;
mod ring_checks;
mod suites;
mod tables;

pub use grading_checks::{
    check_coroot_formulas, check_filtration, check_filtration_negative_control, check_grading_coincidence,
    check_root_counts,
};
pub use psi_checks::{
    check_prop_vu, check_psi_injective_surjective, check_psi_morphism, check_psi_welldefined,
    check_squared_class, check_virtual_null_product, predict_surjective,
};
pub use ring_checks::{
    check_associativity, check_commutativity, check_cup_vanishing, check_example12, check_product_invariants,
    check_theorem_general,
};
pub use suites::{run_suite, suite_names, standard_setups, NamedSetup};
pub use tables::{reproduce_table, table_ids, TableId};

/// Caps and sampling parameters shared by all checks.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    /// Largest Weyl group enumerated for grading checks.
    pub group_cap: u128,
    /// Largest Weyl group for which quantum products are computed.
    pub product_cap: u128,
    /// Degree bound for the surjectivity search.
    pub degree_bound: i64,
    /// Radius of the coset box for ψ checks; `None` picks the smallest box
    /// with at least 50 classes.
    pub box_radius: Option<i64>,
    /// Bound on `ℓ(u) + ℓ(v)` for product checks in groups larger than
    /// `full_pairs_limit`.
    pub length_sum_cap: usize,
    /// Groups up to this order get exhaustive pairwise product checks.
    pub full_pairs_limit: usize,
    /// Seed for every randomized sample.
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            group_cap: DEFAULT_GROUP_CAP,
            product_cap: DEFAULT_PRODUCT_CAP,
            degree_bound: 8,
            box_radius: None,
            length_sum_cap: 10,
            full_pairs_limit: 200,
            seed: 20240917,
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub setup: String,
    pub pass: bool,
    /// The first failing instance, when the check fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// Instance counts (pairs checked, terms inspected, …).
    pub counts: BTreeMap<String, u64>,
    /// Skipped parts, predictions, witnesses and other remarks.
    pub notes: Vec<String>,
    /// Wall time; excluded from JSON so that reports are byte-stable.
    #[serde(skip)]
    pub seconds: f64,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {} [{}]", self.id, self.setup)?;
        if !self.counts.is_empty() {
            let c: Vec<String> = self.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, " ({})", c.join(", "))?;
        }
        write!(f, " {:.2}s", self.seconds)?;
        if let Some(ce) = &self.counterexample {
            write!(f, "\n    counterexample: {ce}")?;
        }
        for n in &self.notes {
            write!(f, "\n    note: {n}")?;
        }
        Ok(())
    }
}

/// Incremental builder for a [`CheckReport`].
#[derive(Debug)]
pub struct Check {
    report: CheckReport,
    start: Instant,
}

impl Check {
    pub fn new(id: &str, setup: &str) -> Check {
        Check {
            report: CheckReport {
                id: id.to_string(),
                setup: setup.to_string(),
                pass: true,
                counterexample: None,
                counts: BTreeMap::new(),
                notes: Vec::new(),
                seconds: 0.0,
            },
            start: Instant::now(),
        }
    }

    /// Adds `n` to the named counter.
    pub fn count(&mut self, key: &str, n: u64) {
        *self.report.counts.entry(key.to_string()).or_insert(0) += n;
    }

    /// Records a failure; the first one becomes the counterexample.
    pub fn fail(&mut self, detail: String) {
        self.report.pass = false;
        self.count("failures", 1);
        if self.report.counterexample.is_none() {
            self.report.counterexample = Some(detail);
        }
    }

    /// Records a failure unless `ok` holds.
    pub fn expect(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.fail(detail());
        }
    }

    pub fn note(&mut self, s: String) {
        self.report.notes.push(s);
    }

    pub fn passed(&self) -> bool {
        self.report.pass
    }

    pub fn finish(mut self) -> CheckReport {
        self.report.seconds = self.start.elapsed().as_secs_f64();
        self.report
    }
}

/// Reports of a named suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub reports: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn new(suite: &str, reports: Vec<CheckReport>) -> SuiteReport {
        let pass = reports.iter().all(|r| r.pass);
        SuiteReport { suite: suite.to_string(), pass, reports }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.reports {
            writeln!(f, "{r}")?;
        }
        let failed = self.reports.iter().filter(|r| !r.pass).count();
        write!(
            f,
            "suite {}: {} ({} checks, {} failed)",
            self.suite,
            if self.pass { "PASS" } else { "FAIL" },
            self.reports.len(),
            failed
        )
    }
}

/// Shared product engines, one per root system (keyed by Cartan matrix).
#[derive(Debug)]
pub struct Engines {
    cap: u128,
    map: Mutex<HashMap<Vec<Vec<i64>>, Arc<QhEngine>>>,
}

impl Engines {
    pub fn new(cap: u128) -> Engines {
        Engines { cap, map: Mutex::new(HashMap::new()) }
    }

    /// The `QH^*(G/B)` engine of a root system, built on first use.
    pub fn full(&self, rs: &RootSystem) -> Result<Arc<QhEngine>> {
        let key = rs.cartan().to_vec();
        if let Some(e) = self.map.lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let e = Arc::new(QhEngine::full(rs, self.cap)?);
        self.map.lock().unwrap().insert(key, e.clone());
        Ok(e)
    }
}

/// Minimal coset representatives `W^P`, in order of increasing length.
pub fn min_reps(setup: &ParabolicSetup, cap: u128) -> Result<Vec<WeylElement>> {
    let rs = setup.root_system();
    Ok(WeylGroup::enumerate(rs, &rs.all_indices(), cap)?
        .elements()
        .iter()
        .filter(|w| w.is_min_coset_rep(setup.order()))
        .cloned()
        .collect())
}

/// The Levi Weyl group `W_P`, in order of increasing length.
pub fn levi_elements(setup: &ParabolicSetup, cap: u128) -> Result<Vec<WeylElement>> {
    Ok(WeylGroup::enumerate(setup.root_system(), setup.order(), cap)?.elements().to_vec())
}

/// `q_λ σ^w` rendered with a 1-based reduced word.
pub fn show_term(rs: &RootSystem, w: &WeylElement, lambda: &[i64]) -> String {
    let word = crate::weyl::format_word(&w.reduced_word(rs));
    if lambda.iter().all(|&x| x == 0) {
        format!("σ[{word}]")
    } else {
        format!("q{lambda:?}σ[{word}]")
    }
}

/// `σ^w` rendered with a 1-based reduced word.
pub fn show_elt(rs: &RootSystem, w: &WeylElement) -> String {
    format!("σ[{}]", crate::weyl::format_word(&w.reduced_word(rs)))
}
