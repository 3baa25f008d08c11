//! Seeded generation of model elements and the batch property harness.
//!
//! Every trial draws from its own ChaCha8 stream: the generator is seeded with
//! `seed` and switched to stream `(check_index << 32) | trial`. Trials are
//! therefore independent of scheduling and any single trial can be replayed.

mod checks;
mod gen;

pub use checks::{registry, Check, AXIOM_CHECKS};
pub use gen::{
    gen_cell, gen_clopen, gen_element, gen_flat, gen_inf_bump, gen_lambda, gen_positive, gen_rational,
    gen_rising_ramp_fn, gen_x, gen_x_element,
};

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::func::{fn_meet, TreeFn};
use crate::supcomp::Model;

/// A probability `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prob {
    pub num: u32,
    pub den: u32,
}

impl Prob {
    pub const fn new(num: u32, den: u32) -> Self {
        Prob { num, den }
    }
}

impl fmt::Display for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_depth: usize,
    pub ramp_probability: Prob,
    /// Numerators of generated rationals lie in `[-value_range, value_range]`,
    /// denominators in `1..=3`.
    pub value_range: i64,
    pub inf_probability: Prob,
    pub model: Model,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 42,
            max_depth: 6,
            ramp_probability: Prob::new(1, 4),
            value_range: 6,
            inf_probability: Prob::new(1, 8),
            model: Model::Full,
        }
    }
}

impl GenConfig {
    pub fn with_model(mut self, model: Model) -> Self {
        self.model = model;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.max_depth = depth;
        self
    }

    /// The random stream of one trial.
    pub fn rng(&self, check_index: usize, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((check_index as u64) << 32) | trial as u64);
        rng
    }
}

/// Operations under test that a fixture may replace.
#[derive(Clone, Copy)]
pub struct Ops {
    pub meet: fn(&TreeFn, &TreeFn) -> TreeFn,
}

impl Default for Ops {
    fn default() -> Self {
        Ops { meet: fn_meet }
    }
}

/// State of one trial: its random stream and the inputs drawn so far.
pub struct Trial<'a> {
    pub cfg: &'a GenConfig,
    pub rng: ChaCha8Rng,
    pub ops: Ops,
    inputs: Vec<(String, String)>,
}

impl<'a> Trial<'a> {
    pub fn new(cfg: &'a GenConfig, ops: Ops, check_index: usize, trial: usize) -> Self {
        Trial { cfg, rng: cfg.rng(check_index, trial), ops, inputs: Vec::new() }
    }

    /// Records an input for the failure report and passes it through.
    pub fn note<T: fmt::Display>(&mut self, name: &str, value: T) -> T {
        self.inputs.push((name.to_string(), value.to_string()));
        value
    }

    pub fn inputs(&self) -> &[(String, String)] {
        &self.inputs
    }
}

/// Result of one trial: `Ok` with optional tags counted in the report.
pub type Outcome = Result<Vec<&'static str>, String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub trial: usize,
    pub message: String,
    pub inputs: Vec<(String, String)>,
    pub model: Model,
    pub seed: u64,
    pub depth: usize,
}

impl Failure {
    /// One CLI call that replays this failure.
    pub fn reproducer(&self) -> String {
        format!(
            "supcone axioms --model {} --seed {} --depth {} --check {} --trial {}",
            self.model, self.seed, self.depth, self.check, self.trial
        )
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "failure: {} trial {}: {}", self.check, self.trial, self.message)?;
        for (k, v) in &self.inputs {
            writeln!(f, "  {k} = {v}")?;
        }
        write!(f, "  reproduce: {}", self.reproducer())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub tags: BTreeMap<String, usize>,
}

impl CheckReport {
    pub fn tag(&self, t: &str) -> usize {
        self.tags.get(t).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub config: GenConfig,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &Failure> {
        self.checks.iter().flat_map(|c| c.failures.iter())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "model: {}", c.model)?;
        writeln!(f, "seed: {}", c.seed)?;
        writeln!(f, "depth: {}", c.max_depth)?;
        for r in &self.checks {
            write!(f, "check {}: trials={} failures={}", r.name, r.trials, r.failures.len())?;
            for (t, n) in &r.tags {
                write!(f, " {t}={n}")?;
            }
            writeln!(f)?;
        }
        for fail in self.failures() {
            writeln!(f, "{fail}")?;
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Runs one trial of the check at `index` in the registry.
pub fn run_trial(cfg: &GenConfig, ops: Ops, index: usize, trial: usize) -> Result<Vec<&'static str>, Failure> {
    let check = &registry()[index];
    let mut t = Trial::new(cfg, ops, index, trial);
    (check.run)(&mut t).map_err(|message| Failure {
        check: check.name.to_string(),
        trial,
        message,
        inputs: t.inputs,
        model: cfg.model,
        seed: cfg.seed,
        depth: cfg.max_depth,
    })
}

/// Replays trial `trial` of the named check.
pub fn replay(cfg: &GenConfig, ops: Ops, check: &str, trial: usize) -> Option<Result<Vec<&'static str>, Failure>> {
    let index = registry().iter().position(|c| c.name == check)?;
    Some(run_trial(cfg, ops, index, trial))
}

type TrialResult = (usize, usize, Result<Vec<&'static str>, Failure>);

fn collect(cfg: &GenConfig, indices: &[usize], trials: usize, results: Vec<TrialResult>) -> SuiteReport {
    let reg = registry();
    let mut checks: Vec<CheckReport> = indices
        .iter()
        .map(|&i| CheckReport { name: reg[i].name.to_string(), trials, failures: Vec::new(), tags: BTreeMap::new() })
        .collect();
    for (slot, _, r) in results {
        let report = &mut checks[slot];
        match r {
            Ok(tags) => {
                for t in tags {
                    *report.tags.entry(t.to_string()).or_default() += 1;
                }
            }
            Err(f) => report.failures.push(f),
        }
    }
    for c in &mut checks {
        c.failures.sort_by_key(|f| f.trial);
    }
    SuiteReport { config: cfg.clone(), checks }
}

fn indices_of(names: &[&str]) -> Vec<usize> {
    let reg = registry();
    names.iter().map(|n| reg.iter().position(|c| c.name == *n).unwrap_or_else(|| panic!("unknown check {n}"))).collect()
}

fn jobs(indices: &[usize], trials: usize) -> Vec<(usize, usize, usize)> {
    indices.iter().enumerate().flat_map(|(slot, &i)| (0..trials).map(move |t| (slot, i, t))).collect()
}

/// Runs the named checks `trials` times each, one trial after another.
pub fn run_checks_sequential(cfg: &GenConfig, ops: Ops, names: &[&str], trials: usize) -> SuiteReport {
    let indices = indices_of(names);
    let results = jobs(&indices, trials).into_iter().map(|(slot, i, t)| (slot, t, run_trial(cfg, ops, i, t))).collect();
    collect(cfg, &indices, trials, results)
}

/// Runs the named checks `trials` times each, trials spread over the rayon
/// thread pool.
#[cfg(feature = "parallel")]
pub fn run_checks_parallel(cfg: &GenConfig, ops: Ops, names: &[&str], trials: usize) -> SuiteReport {
    use rayon::prelude::*;
    let indices = indices_of(names);
    let results =
        jobs(&indices, trials).into_par_iter().map(|(slot, i, t)| (slot, t, run_trial(cfg, ops, i, t))).collect();
    collect(cfg, &indices, trials, results)
}

/// Runs the named checks, in parallel when the `parallel` feature is on.
pub fn run_checks(cfg: &GenConfig, ops: Ops, names: &[&str], trials: usize) -> SuiteReport {
    #[cfg(feature = "parallel")]
    {
        run_checks_parallel(cfg, ops, names, trials)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_checks_sequential(cfg, ops, names, trials)
    }
}

fn all_names() -> Vec<&'static str> {
    registry().iter().map(|c| c.name).collect()
}

/// Every registered check, `trials` times each.
pub fn run_suite(cfg: &GenConfig, trials: usize) -> SuiteReport {
    run_checks(cfg, Ops::default(), &all_names(), trials.max(1))
}

pub fn run_suite_sequential(cfg: &GenConfig, trials: usize) -> SuiteReport {
    run_checks_sequential(cfg, Ops::default(), &all_names(), trials.max(1))
}

#[cfg(feature = "parallel")]
pub fn run_suite_parallel(cfg: &GenConfig, trials: usize) -> SuiteReport {
    run_checks_parallel(cfg, Ops::default(), &all_names(), trials.max(1))
}
