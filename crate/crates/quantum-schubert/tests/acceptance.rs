//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact (rational or integer equality); each criterion
//! also has a wall-clock budget, and exceeding it is a failure. The process
//! exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use quantum_schubert::error::Result;
use quantum_schubert::grading::Grader;
use quantum_schubert::qh::invariant_monitor;
use quantum_schubert::verify::{
    check_associativity, check_commutativity, check_coroot_formulas, check_cup_vanishing, check_example12,
    check_filtration, check_grading_coincidence, check_product_invariants, check_psi_injective_surjective,
    check_psi_morphism, check_psi_welldefined, check_root_counts, check_squared_class, predict_surjective,
    reproduce_table, standard_setups, CheckReport, Engines, NamedSetup, TableId, VerifyConfig,
};
use quantum_schubert::parabolic::{CaseTag, ParabolicSetup};

struct Outcome {
    pass: bool,
    detail: String,
}

fn summarize(reports: &[CheckReport]) -> Outcome {
    let failed: Vec<&CheckReport> = reports.iter().filter(|r| !r.pass).collect();
    let detail = match failed.first() {
        Some(r) => format!(
            "{} of {} checks failed; first: {} on {}: {}",
            failed.len(),
            reports.len(),
            r.id,
            r.setup,
            r.counterexample.as_deref().unwrap_or("(no detail)")
        ),
        None => format!("{} checks", reports.len()),
    };
    Outcome { pass: failed.is_empty(), detail }
}

fn with_detail(mut o: Outcome, extra: String) -> Outcome {
    o.detail = format!("{}; {extra}", o.detail);
    o
}

fn count(r: &CheckReport, key: &str) -> u64 {
    r.counts.get(key).copied().unwrap_or(0)
}

fn named<'a>(setups: &'a [NamedSetup], name: &str) -> &'a ParabolicSetup {
    &setups.iter().find(|s| s.name == name).unwrap_or_else(|| panic!("fixture {name}")).setup
}

struct Run {
    failures: usize,
}

impl Run {
    fn criterion(&mut self, n: usize, title: &str, budget: Duration, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome { pass: false, detail: format!("error: {e}") });
        let took = start.elapsed();
        let in_time = took <= budget;
        let pass = outcome.pass && in_time;
        if !pass {
            self.failures += 1;
        }
        let timing = if in_time {
            format!("{:.1}s ≤ {}s", took.as_secs_f64(), budget.as_secs())
        } else {
            format!("{:.1}s EXCEEDS {}s", took.as_secs_f64(), budget.as_secs())
        };
        println!("{} [{n:>2}] {title}: {} ({timing})", if pass { "PASS" } else { "FAIL" }, outcome.detail);
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn main() {
    let cfg = VerifyConfig::default();
    let engines = Engines::new(cfg.product_cap);
    let setups = standard_setups().expect("fixture setups");
    let mut run = Run { failures: 0 };

    run.criterion(1, "positive-root counts", secs(5), || Ok(summarize(&[check_root_counts()?])));

    run.criterion(2, "simple-coroot grade table", secs(120), || {
        Ok(summarize(&[reproduce_table(TableId::CorootGrades, &cfg, &engines)?]))
    });

    run.criterion(3, "simple-coroot grade formulas", secs(60), || {
        let mut reports = Vec::new();
        for s in &setups {
            reports.push(check_coroot_formulas(&s.setup)?);
        }
        for (tag, r) in [(CaseTag::C5, 5), (CaseTag::C7, 4)] {
            reports.push(check_coroot_formulas(&ParabolicSetup::preset(tag, r, None)?)?);
        }
        Ok(summarize(&reports))
    });

    run.criterion(4, "gr = gr′ coincidence", secs(900), || {
        let mut reports = Vec::new();
        let mut exhaustive = 0;
        for s in &setups {
            reports.push(check_grading_coincidence(&s.setup, None, &cfg)?);
            exhaustive += 1;
        }
        let e6 = ParabolicSetup::preset(CaseTag::C5, 5, None)?;
        reports.push(check_grading_coincidence(&e6, Some(500), &cfg)?);
        Ok(with_detail(summarize(&reports), format!("{exhaustive} setups exhaustive, E6 sampled at 500 elements")))
    });

    run.criterion(5, "virtual-null lattice table", secs(60), || {
        Ok(summarize(&[reproduce_table(TableId::VirtualNull, &cfg, &engines)?]))
    });

    run.criterion(6, "lifting table", secs(300), || Ok(summarize(&[reproduce_table(TableId::Lifting, &cfg, &engines)?])));

    run.criterion(7, "level-sum and small-coefficient tables", secs(60), || {
        Ok(summarize(&[
            reproduce_table(TableId::LevelSums, &cfg, &engines)?,
            reproduce_table(TableId::SmallCoefficients, &cfg, &engines)?,
        ]))
    });

    run.criterion(8, "filtration compatibility (exhaustive)", secs(600), || {
        let mut reports = Vec::new();
        let mut notes = Vec::new();
        for name in ["a2-p1", "a3-p12", "b3-c1b-r2", "c3-c1c-r2"] {
            let setup = named(&setups, name);
            let engine = engines.full(setup.root_system())?;
            let n = engine.group().len() as u64;
            // each unordered pair once; the ordered pairs follow by commutativity
            let r = check_filtration(setup, &engine, &Grader::new(setup), &cfg)?;
            let pairs = count(&r, "pairs");
            let comm = check_commutativity(&engine, &cfg)?;
            let exhaustive = pairs == n * (n + 1) / 2 && comm.pass;
            notes.push(format!("{name}: {pairs} unordered of {} ordered pairs", n * n));
            let mut r = r;
            if !exhaustive {
                r.pass = false;
                r.counterexample = Some(format!("only {pairs} of {} unordered pairs checked", n * (n + 1) / 2));
            }
            reports.push(r);
            reports.push(comm);
        }
        Ok(with_detail(summarize(&reports), notes.join(", ")))
    });

    run.criterion(9, "ψ well-defined on a coset box", secs(600), || {
        let mut reports = Vec::new();
        let mut ok = true;
        for name in ["a2-p1", "a3-p12", "b3-c1b-r2", "c3-c1c-r2", "f4-c9-r2"] {
            let r = check_psi_welldefined(named(&setups, name), &cfg)?;
            ok &= count(&r, "classes") >= 50;
            reports.push(r);
        }
        let mut o = summarize(&reports);
        o.pass &= ok;
        Ok(with_detail(o, "every box has ≥ 50 classes".to_string()))
    });

    run.criterion(10, "ψ surjectivity dichotomy at degree bound 8", secs(1200), || {
        let mut reports = Vec::new();
        let mut notes = Vec::new();
        let mut ok = true;
        for (name, surjective) in [("b3-c1b-r2", true), ("f4-c9-r2", true), ("c3-c1c-r2", false), ("b4-c1b-r3", false)] {
            let setup = named(&setups, name);
            let r = check_psi_injective_surjective(setup, 8, &cfg)?;
            let found = count(&r, "outside_image") == 0;
            ok &= found == surjective && predict_surjective(setup) == surjective;
            notes.push(format!("{name}: {}", if found { "surjective" } else { "witness found" }));
            reports.push(r);
        }
        let mut o = summarize(&reports);
        o.pass &= ok;
        Ok(with_detail(o, notes.join(", ")))
    });

    run.criterion(11, "ψ morphism and squared class", secs(2700), || {
        let mut reports = Vec::new();
        for name in ["a2-p1", "a3-p12", "a3-p13", "b3-c1b-r2", "f4-c9-r2"] {
            let setup = named(&setups, name);
            let engine = engines.full(setup.root_system())?;
            reports.push(check_psi_morphism(setup, &engine, &cfg)?);
        }
        let f4 = named(&setups, "f4-c9-r2");
        let sq = check_squared_class(f4, &*engines.full(f4.root_system())?)?;
        let classes = count(&sq, "classes");
        let mut o = summarize(&reports.into_iter().chain([sq]).collect::<Vec<_>>());
        o.pass &= classes > 0;
        Ok(with_detail(o, format!("F4 pairs with ℓ(u)+ℓ(v) ≤ {}; {classes} squared classes", cfg.length_sum_cap)))
    });

    run.criterion(12, "projective-plane example end to end", secs(10), || Ok(summarize(&[check_example12(&cfg)?])));

    run.criterion(14, "classical cup vanishing", secs(300), || {
        let mut reports = Vec::new();
        for name in ["a3-p12", "b3-c1b-r2", "c3-c1c-r2", "b4-c1b-r3", "f4-c10-r3"] {
            reports.push(check_cup_vanishing(named(&setups, name), &cfg)?);
        }
        Ok(with_detail(summarize(&reports), "Levi types A2, B2, C2, B3, C3".into()))
    });

    // last, so that the monitor has seen every product of the run
    run.criterion(13, "product invariants over the whole run", secs(600), || {
        let mut reports = Vec::new();
        for name in ["a2-p1", "a3-p12", "b3-c1b-r2", "c3-c1c-r2", "d4-c2-r3"] {
            let engine = engines.full(named(&setups, name).root_system())?;
            reports.push(check_commutativity(&engine, &cfg)?);
            reports.push(check_associativity(&engine, 200, &cfg)?);
        }
        let inv = check_product_invariants()?;
        let checked = count(&inv, "products");
        let violations = invariant_monitor().violations();
        let mut o = summarize(&reports.into_iter().chain([inv]).collect::<Vec<_>>());
        o.pass &= violations == 0;
        Ok(with_detail(o, format!("{checked} products monitored, {violations} violations")))
    });

    if run.failures > 0 {
        println!("{} criteria failed", run.failures);
        std::process::exit(1);
    }
    println!("all criteria passed");
}
