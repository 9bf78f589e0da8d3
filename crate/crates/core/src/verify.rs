//! Exhaustive and randomized checking of the extremal-tree claims.
//!
//! Sweeps walk every non-isomorphic tree in a range of orders (sorted by
//! canonical code), evaluate each tree on a worker pool and merge the
//! outcomes in input order, so reports do not depend on the worker count.
//! Every witness returned by a solver is re-checked by the certificates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificates::{is_dominating, is_packing, is_rds, is_ridf};
use crate::enumerate::all_trees_coded;
use crate::families::{
    canonical_ridf_f, recognize_f, recognize_h, replay, replay_prefixes, sample_trace, HVerdict,
    Op, Recognized, Replay, Step,
};
use crate::io::write_edge_list_line;
use crate::oracle::Oracle;
use crate::treedp::{gamma_r_tree, gamma_ri_tree, RdsSolution, RidfSolution};
use crate::{ConstructionTrace, Error, Family, FamilyState, Result, Tree, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Claim {
    /// Tree DP and brute force agree on `γ_r` and `γ_rI`.
    #[serde(rename = "oracle-dp")]
    OracleDp,
    /// `γ_r ≤ γ_rI ≤ 2γ_r`.
    #[serde(rename = "sandwich")]
    Sandwich,
    /// `γ_r = γ_rI` iff the tree is in H or is a star.
    #[serde(rename = "theorem-H")]
    TheoremH,
    /// `γ_rI = 2γ_r` iff the tree is in F.
    #[serde(rename = "theorem-F")]
    TheoremF,
    /// Structural properties of random H constructions.
    #[serde(rename = "lemmas-H")]
    LemmasH,
    /// Structural properties of random F constructions.
    #[serde(rename = "lemmas-F")]
    LemmasF,
}

impl Claim {
    pub const ALL: [Claim; 6] = [
        Claim::OracleDp,
        Claim::Sandwich,
        Claim::TheoremH,
        Claim::TheoremF,
        Claim::LemmasH,
        Claim::LemmasF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Claim::OracleDp => "oracle-dp",
            Claim::Sandwich => "sandwich",
            Claim::TheoremH => "theorem-H",
            Claim::TheoremF => "theorem-F",
            Claim::LemmasH => "lemmas-H",
            Claim::LemmasF => "lemmas-F",
        }
    }

    /// Case-insensitive; `_` and `-` are interchangeable.
    pub fn parse(name: &str) -> Result<Claim> {
        let wanted = name.to_ascii_lowercase().replace('_', "-");
        Claim::ALL
            .into_iter()
            .find(|c| c.name().to_ascii_lowercase() == wanted)
            .ok_or_else(|| Error::Parse(format!("unknown claim {name:?}")))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A self-contained counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub code: String,
    pub expected: String,
    pub got: String,
    pub edge_list: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ConstructionTrace>,
}

impl Failure {
    fn new(tree: &Tree, expected: impl Into<String>, got: impl Into<String>) -> Failure {
        Failure {
            code: tree.canonical_code(),
            expected: expected.into(),
            got: got.into(),
            edge_list: write_edge_list_line(tree),
            trace: None,
        }
    }

    fn with_trace(mut self, trace: &ConstructionTrace) -> Failure {
        self.trace = Some(trace.clone());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub claim: Claim,
    pub n_min: usize,
    pub n_max: usize,
    pub trees_checked: usize,
    /// Trees checked per order.
    pub trees_per_n: BTreeMap<usize, usize>,
    /// Solver witnesses re-checked by a certificate.
    pub witnesses_checked: usize,
    /// Witnesses that failed their certificate.
    pub witness_failures: usize,
    /// Trees additionally solved by brute force.
    pub oracle_checks: usize,
    pub failures: Vec<Failure>,
    pub pass: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SweepReport {
    fn absorb(&mut self, outcome: Outcome) {
        self.witnesses_checked += outcome.witnesses_checked;
        self.witness_failures += outcome.witness_failures;
        self.oracle_checks += outcome.oracle_checks;
        self.failures.extend(outcome.failures);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// Writes `<dir>/<claim>.json`.
    pub fn write_to(&self, dir: &std::path::Path) -> std::io::Result<std::path::PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.json", self.claim));
        std::fs::write(&path, self.to_json())?;
        Ok(path)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    /// Worker threads; 0 picks the number of CPUs.
    pub workers: usize,
    pub seed: u64,
    /// Fraction of trees per order re-solved by brute force (within caps).
    pub spot_check_rate: f64,
    pub oracle: Oracle,
}

impl SweepConfig {
    pub fn new(n_min: usize, n_max: usize) -> SweepConfig {
        SweepConfig {
            n_min,
            n_max,
            workers: 0,
            seed: 0,
            spot_check_rate: 0.01,
            oracle: Oracle::default(),
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// What one tree contributed to a sweep.
#[derive(Default)]
struct Outcome {
    witnesses_checked: usize,
    witness_failures: usize,
    oracle_checks: usize,
    failures: Vec<Failure>,
}

impl Outcome {
    fn fail(&mut self, failure: Failure) {
        self.failures.push(failure);
    }

    fn fail_witness(&mut self, failure: Failure) {
        self.witness_failures += 1;
        self.failures.push(failure);
    }

    fn absorb(&mut self, other: Outcome) {
        self.witnesses_checked += other.witnesses_checked;
        self.witness_failures += other.witness_failures;
        self.oracle_checks += other.oracle_checks;
        self.failures.extend(other.failures);
    }
}

struct Job {
    tree: Tree,
    spot: bool,
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Unsupported(format!("worker pool: {e}")))
}

/// Enumerates the trees of every order in range, marking a seeded sample of
/// each order for brute-force spot checks.
fn jobs(cfg: &SweepConfig) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    for n in cfg.n_min.max(1)..=cfg.n_max {
        let trees = all_trees_coded(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let picks = if cfg.spot_check_rate > 0.0 {
            ((trees.len() as f64 * cfg.spot_check_rate).ceil() as usize).min(trees.len())
        } else {
            0
        };
        let mut spot = vec![false; trees.len()];
        for i in sample(&mut rng, trees.len(), picks) {
            spot[i] = true;
        }
        jobs.extend(trees.into_iter().zip(spot).map(|((_, tree), spot)| Job { tree, spot }));
    }
    Ok(jobs)
}

fn run<F>(claim: Claim, cfg: &SweepConfig, jobs: Vec<Job>, check: F) -> Result<SweepReport>
where
    F: Fn(&Job) -> Outcome + Sync,
{
    let start = Instant::now();
    let outcomes: Vec<Outcome> = pool(cfg.workers)?.install(|| jobs.par_iter().map(&check).collect());
    let mut report = SweepReport {
        claim,
        n_min: cfg.n_min,
        n_max: cfg.n_max,
        trees_checked: jobs.len(),
        trees_per_n: BTreeMap::new(),
        witnesses_checked: 0,
        witness_failures: 0,
        oracle_checks: 0,
        failures: Vec::new(),
        pass: true,
        wall_time: Duration::ZERO,
    };
    for job in &jobs {
        *report.trees_per_n.entry(job.tree.order()).or_default() += 1;
    }
    let mut total = Outcome::default();
    for outcome in outcomes {
        total.absorb(outcome);
    }
    report.absorb(total);
    report.pass = report.failures.is_empty();
    report.wall_time = start.elapsed();
    Ok(report)
}

/// Solves a tree by DP and certifies both witnesses.
fn solve_certified(tree: &Tree, out: &mut Outcome) -> (RdsSolution, RidfSolution) {
    let rds = gamma_r_tree(tree);
    let ridf = gamma_ri_tree(tree);
    out.witnesses_checked += 2;
    if let Err(v) = is_rds(tree, &rds.set) {
        out.fail_witness(Failure::new(tree, "DP gamma_r witness is an RDS", v.to_string()));
    } else if rds.set.len() != rds.value {
        out.fail_witness(Failure::new(
            tree,
            format!("RDS witness of size {}", rds.value),
            format!("size {}", rds.set.len()),
        ));
    }
    if let Err(v) = is_ridf(tree, &ridf.assignment) {
        out.fail_witness(Failure::new(tree, "DP gamma_ri witness is an RIDF", v.to_string()));
    } else if ridf.assignment.weight() != ridf.value {
        out.fail_witness(Failure::new(
            tree,
            format!("RIDF witness of weight {}", ridf.value),
            format!("weight {}", ridf.assignment.weight()),
        ));
    }
    (rds, ridf)
}

fn certify_all<W: fmt::Debug>(
    tree: &Tree,
    witnesses: &[W],
    check: impl Fn(&W) -> crate::certificates::Check,
    what: &str,
    out: &mut Outcome,
) {
    for w in witnesses {
        out.witnesses_checked += 1;
        if let Err(v) = check(w) {
            out.fail_witness(Failure::new(tree, format!("{what} {w:?} is valid"), v.to_string()));
        }
    }
}

/// Compares DP values with brute force, as far as the oracle caps allow.
fn oracle_compare(
    tree: &Tree,
    oracle: &Oracle,
    ri_cap: usize,
    rds: &RdsSolution,
    ridf: &RidfSolution,
    out: &mut Outcome,
) {
    let n = tree.order();
    if n <= oracle.set_cap {
        out.oracle_checks += 1;
        match oracle.gamma_r(tree) {
            Ok(brute) if brute.value == rds.value => {
                certify_all(tree, &brute.witnesses, |w| is_rds(tree, w), "oracle RDS witness", out);
                if !brute.witnesses.iter().any(|w| w.same_members(&rds.set)) {
                    out.fail(Failure::new(tree, "DP RDS among the oracle witnesses", format!("{:?}", rds.set)));
                }
            }
            Ok(brute) => out.fail(Failure::new(
                tree,
                format!("gamma_r = {} (oracle)", brute.value),
                format!("gamma_r = {} (dp)", rds.value),
            )),
            Err(e) => out.fail(Failure::new(tree, "oracle gamma_r", e.to_string())),
        }
    }
    if n <= oracle.assignment_cap.min(ri_cap) {
        match oracle.gamma_ri(tree) {
            Ok(brute) if brute.value == ridf.value => {
                certify_all(tree, &brute.witnesses, |w| is_ridf(tree, w), "oracle RIDF witness", out);
                if !brute.witnesses.contains(&ridf.assignment) {
                    out.fail(Failure::new(
                        tree,
                        "DP RIDF among the oracle witnesses",
                        ridf.assignment.to_string(),
                    ));
                }
            }
            Ok(brute) => out.fail(Failure::new(
                tree,
                format!("gamma_ri = {} (oracle)", brute.value),
                format!("gamma_ri = {} (dp)", ridf.value),
            )),
            Err(e) => out.fail(Failure::new(tree, "oracle gamma_ri", e.to_string())),
        }
    }
}

fn spot_check(job: &Job, cfg: &SweepConfig, rds: &RdsSolution, ridf: &RidfSolution, out: &mut Outcome) {
    if job.spot {
        oracle_compare(&job.tree, &cfg.oracle, usize::MAX, rds, ridf, out);
    }
}

/// Brute force against the DP on every tree; `γ_rI` only up to `ri_n_max`.
pub fn verify_oracle_dp(cfg: &SweepConfig, ri_n_max: usize) -> Result<SweepReport> {
    if cfg.n_max > cfg.oracle.set_cap {
        return Err(Error::CapExceeded {
            what: "gamma_r oracle",
            order: cfg.n_max,
            cap: cfg.oracle.set_cap,
        });
    }
    if ri_n_max.min(cfg.n_max) > cfg.oracle.assignment_cap {
        return Err(Error::CapExceeded {
            what: "gamma_ri oracle",
            order: ri_n_max.min(cfg.n_max),
            cap: cfg.oracle.assignment_cap,
        });
    }
    run(Claim::OracleDp, cfg, jobs(cfg)?, |job| {
        let mut out = Outcome::default();
        let (rds, ridf) = solve_certified(&job.tree, &mut out);
        oracle_compare(&job.tree, &cfg.oracle, ri_n_max, &rds, &ridf, &mut out);
        out
    })
}

pub fn verify_bound_sandwich(cfg: &SweepConfig) -> Result<SweepReport> {
    run(Claim::Sandwich, cfg, jobs(cfg)?, |job| {
        let mut out = Outcome::default();
        let (rds, ridf) = solve_certified(&job.tree, &mut out);
        spot_check(job, cfg, &rds, &ridf, &mut out);
        let (r, ri) = (rds.value as u32, ridf.value);
        if !(r <= ri && ri <= 2 * r) {
            out.fail(Failure::new(
                &job.tree,
                "gamma_r <= gamma_ri <= 2 gamma_r",
                format!("gamma_r = {r}, gamma_ri = {ri}"),
            ));
        }
        out
    })
}

/// Replays a recognized trace and checks the vertex map is an isomorphism.
fn check_recognized(tree: &Tree, rec: &Recognized, out: &mut Outcome) {
    let ok = replay(&rec.trace).is_ok_and(|(built, _)| {
        built.order() == tree.order()
            && tree
                .edges()
                .all(|(u, v)| built.has_edge(rec.vertex_map[u], rec.vertex_map[v]))
    });
    out.witnesses_checked += 1;
    if !ok {
        out.fail_witness(
            Failure::new(tree, "trace replays to the input tree", "replay differs").with_trace(&rec.trace),
        );
    }
}

/// `γ_r = γ_rI` exactly on H and the stars (orders from 3).
pub fn verify_theorem_h(cfg: &SweepConfig) -> Result<SweepReport> {
    let cfg = SweepConfig {
        n_min: cfg.n_min.max(3),
        ..*cfg
    };
    run(Claim::TheoremH, &cfg, jobs(&cfg)?, |job| {
        let mut out = Outcome::default();
        let (rds, ridf) = solve_certified(&job.tree, &mut out);
        spot_check(job, &cfg, &rds, &ridf, &mut out);
        let equal = rds.value as u32 == ridf.value;
        let verdict = recognize_h(&job.tree);
        if let HVerdict::Member(rec) = &verdict {
            check_recognized(&job.tree, rec, &mut out);
        }
        if equal != verdict.is_equality_class() {
            let got = match &verdict {
                HVerdict::Member(_) => "member of H".to_string(),
                HVerdict::StarException { t } => format!("star K_1,{t}"),
                HVerdict::NonMember => "not in H and not a star".to_string(),
            };
            let mut failure = Failure::new(
                &job.tree,
                format!("gamma_r = {}, gamma_ri = {}", rds.value, ridf.value),
                got,
            );
            if let HVerdict::Member(rec) = &verdict {
                failure = failure.with_trace(&rec.trace);
            }
            out.fail(failure);
        }
        out
    })
}

/// `γ_rI = 2γ_r` exactly on F (orders from 4).
pub fn verify_theorem_f(cfg: &SweepConfig) -> Result<SweepReport> {
    let cfg = SweepConfig {
        n_min: cfg.n_min.max(4),
        ..*cfg
    };
    run(Claim::TheoremF, &cfg, jobs(&cfg)?, |job| {
        let mut out = Outcome::default();
        let (rds, ridf) = solve_certified(&job.tree, &mut out);
        spot_check(job, &cfg, &rds, &ridf, &mut out);
        let doubled = ridf.value == 2 * rds.value as u32;
        let rec = recognize_f(&job.tree);
        if let Some(rec) = &rec {
            check_recognized(&job.tree, rec, &mut out);
        }
        if doubled != rec.is_some() {
            let mut failure = Failure::new(
                &job.tree,
                format!("gamma_r = {}, gamma_ri = {}", rds.value, ridf.value),
                if rec.is_some() { "member of F" } else { "not in F" },
            );
            if let Some(rec) = &rec {
                failure = failure.with_trace(&rec.trace);
            }
            out.fail(failure);
        }
        out
    })
}

/// Parameters of a randomized construction check.
#[derive(Clone, Copy, Debug)]
pub struct TraceConfig {
    pub family: Family,
    pub count: usize,
    /// Order cap of the sampled trees.
    pub budget: usize,
    pub seed: u64,
    pub workers: usize,
    pub oracle: Oracle,
}

impl TraceConfig {
    pub fn new(family: Family, count: usize, budget: usize, seed: u64) -> TraceConfig {
        TraceConfig {
            family,
            count,
            budget,
            seed,
            workers: 0,
            oracle: Oracle::default(),
        }
    }
}

/// Samples `count` traces and checks the structural lemmas at every prefix.
pub fn verify_lemmas_on_traces(cfg: &TraceConfig) -> Result<SweepReport> {
    if cfg.budget > cfg.oracle.set_cap {
        return Err(Error::CapExceeded {
            what: "set oracle",
            order: cfg.budget,
            cap: cfg.oracle.set_cap,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let traces = (0..cfg.count)
        .map(|_| sample_trace(cfg.family, cfg.budget, rng.next_u64()))
        .collect::<Result<Vec<_>>>()?;
    let start = Instant::now();
    let outcomes: Vec<(Vec<usize>, Outcome)> = pool(cfg.workers)?.install(|| {
        traces
            .par_iter()
            .map(|trace| check_trace(trace, &cfg.oracle))
            .collect()
    });
    let mut report = SweepReport {
        claim: match cfg.family {
            Family::H => Claim::LemmasH,
            Family::F => Claim::LemmasF,
        },
        n_min: usize::MAX,
        n_max: 0,
        trees_checked: 0,
        trees_per_n: BTreeMap::new(),
        witnesses_checked: 0,
        witness_failures: 0,
        oracle_checks: 0,
        failures: Vec::new(),
        pass: true,
        wall_time: Duration::ZERO,
    };
    for (orders, outcome) in outcomes {
        for n in orders {
            report.trees_checked += 1;
            report.n_min = report.n_min.min(n);
            report.n_max = report.n_max.max(n);
            *report.trees_per_n.entry(n).or_default() += 1;
        }
        report.absorb(outcome);
    }
    if report.trees_checked == 0 {
        report.n_min = 0;
    }
    report.pass = report.failures.is_empty();
    report.wall_time = start.elapsed();
    Ok(report)
}

/// How much one operation raises both parameters in family H.
fn h_increment(step: &Step) -> u32 {
    match step.op {
        Op::O1 => (step.r.unwrap_or(0) + step.s.unwrap_or(0)) as u32,
        Op::O2 => step.t.unwrap_or(0) as u32,
    }
}

fn check_trace(trace: &ConstructionTrace, oracle: &Oracle) -> (Vec<usize>, Outcome) {
    let mut out = Outcome::default();
    let prefixes = match replay_prefixes(trace) {
        Ok(p) => p,
        Err(e) => {
            out.fail(Failure {
                code: String::new(),
                expected: "sampled trace replays".into(),
                got: e.to_string(),
                edge_list: String::new(),
                trace: Some(trace.clone()),
            });
            return (Vec::new(), out);
        }
    };
    let mut previous: Option<(u32, u32)> = None;
    for (i, (tree, state)) in prefixes.iter().enumerate() {
        let mut local = Outcome::default();
        let (rds, ridf) = solve_certified(tree, &mut local);
        let values = (rds.value as u32, ridf.value);
        match trace.family {
            Family::H => {
                if let (Some((r0, ri0)), Some(step)) = (previous, i.checked_sub(1).map(|k| &trace.steps[k])) {
                    let inc = h_increment(step);
                    if values != (r0 + inc, ri0 + inc) {
                        local.fail(Failure::new(
                            tree,
                            format!("step {} raises gamma_r and gamma_ri by {inc}", i - 1),
                            format!("({r0}, {ri0}) -> ({}, {})", values.0, values.1),
                        ));
                    }
                }
                check_h_state(tree, state, oracle, &mut local);
            }
            Family::F => check_f_state(tree, state, oracle, &ridf, &mut local),
        }
        previous = Some(values);
        for failure in &mut local.failures {
            failure.trace = Some(ConstructionTrace {
                steps: trace.steps[..i].to_vec(),
                ..trace.clone()
            });
        }
        out.absorb(local);
    }
    (prefixes.iter().map(|(t, _)| t.order()).collect(), out)
}

/// The only minimum RDS is LV; SV induces components of order at least 2.
fn check_h_state(tree: &Tree, state: &FamilyState, oracle: &Oracle, out: &mut Outcome) {
    let lv = &state.lv;
    out.oracle_checks += 1;
    match oracle.gamma_r(tree) {
        Ok(brute) => {
            if brute.witnesses.len() != 1 || !brute.witnesses[0].same_members(lv) {
                out.fail(Failure::new(
                    tree,
                    format!("LV = {lv:?} is the unique minimum RDS"),
                    format!("minimum RDSs {:?}", brute.witnesses),
                ));
            }
        }
        Err(e) => out.fail(Failure::new(tree, "oracle gamma_r", e.to_string())),
    }
    let Some(sv) = &state.sv else {
        out.fail(Failure::new(tree, "H state tracks SV", "no SV"));
        return;
    };
    // T[SV] is a forest; every vertex of it needs a neighbor inside SV.
    for v in sv.iter() {
        if !tree.adj(v).iter().any(|&w| sv.contains(w)) {
            out.fail(Failure::new(
                tree,
                "every component of T[SV] has at least 2 vertices",
                format!("isolated SV vertex {v}"),
            ));
        }
    }
}

/// The packing, neighborhood, domination and optimality properties of LV.
fn check_f_state(tree: &Tree, state: &FamilyState, oracle: &Oracle, ridf: &RidfSolution, out: &mut Outcome) {
    let lv = &state.lv;
    let n = tree.order();
    if let Err(v) = is_packing(tree, lv) {
        out.fail(Failure::new(tree, "LV is a packing", v.to_string()));
    }
    for v in (0..n).filter(|&v| !lv.contains(v)) {
        let in_lv = tree.adj(v).iter().filter(|&&w| lv.contains(w)).count();
        let outside = tree.adj(v).len() - in_lv;
        if in_lv != 1 || outside == 0 {
            out.fail(Failure::new(
                tree,
                format!("vertex {v} outside LV has exactly one LV neighbor and one non-LV neighbor"),
                format!("{in_lv} LV neighbors, {outside} others"),
            ));
        }
    }
    let mut covered = vec![0usize; n];
    for v in lv.iter() {
        covered[v] += 1;
        for &w in tree.adj(v) {
            covered[w] += 1;
        }
    }
    if let Some(v) = covered.iter().position(|&c| c != 1) {
        out.fail(Failure::new(
            tree,
            "closed neighborhoods of LV partition V",
            format!("vertex {v} covered {} times", covered[v]),
        ));
    }

    out.oracle_checks += 1;
    let unique = |name: &str, report: Result<crate::oracle::OptimalSetReport>, out: &mut Outcome| match report {
        Ok(brute) if brute.witnesses.len() == 1 && brute.witnesses[0].same_members(lv) => {}
        Ok(brute) => out.fail(Failure::new(
            tree,
            format!("LV = {lv:?} is the unique {name}-set"),
            format!("{name} = {}, optimal sets {:?}", brute.value, brute.witnesses),
        )),
        Err(e) => out.fail(Failure::new(tree, format!("oracle {name}"), e.to_string())),
    };
    unique("gamma_r", oracle.gamma_r(tree), out);
    unique("rho", oracle.rho(tree), out);
    out.witnesses_checked += 1;
    match (is_dominating(tree, lv), oracle.gamma(tree)) {
        (Ok(()), Ok(brute)) if brute.value == lv.len() => {}
        (Ok(()), Ok(brute)) => out.fail(Failure::new(
            tree,
            format!("LV is a minimum dominating set (gamma = {})", brute.value),
            format!("|LV| = {}", lv.len()),
        )),
        (Err(v), _) => out.fail(Failure::new(tree, "LV dominates", v.to_string())),
        (_, Err(e)) => out.fail(Failure::new(tree, "oracle gamma", e.to_string())),
    }

    out.witnesses_checked += 1;
    match canonical_ridf_f(tree, state) {
        Ok(f) => {
            if let Err(v) = is_ridf(tree, &f) {
                out.fail_witness(Failure::new(tree, "2 on LV, 0 elsewhere is an RIDF", v.to_string()));
            }
            let target = 2 * lv.len() as u32;
            if f.weight() != target || ridf.value != target {
                out.fail(Failure::new(
                    tree,
                    format!("gamma_ri = 2|LV| = {target}"),
                    format!("canonical weight {}, gamma_ri {}", f.weight(), ridf.value),
                ));
            }
        }
        Err(e) => out.fail(Failure::new(tree, "canonical assignment", e.to_string())),
    }
}

/// Canonical codes of every family member of order at most `n_max`, each
/// with one construction, found by expanding all traces.
pub fn family_members(family: Family, n_max: usize) -> Result<BTreeMap<String, ConstructionTrace>> {
    let mut found = BTreeMap::new();
    let bases: Vec<crate::families::Base> = match family {
        Family::H => (2..=n_max.saturating_sub(4))
            .flat_map(|l| (2..=n_max.saturating_sub(2 + l)).map(move |n| crate::families::Base::DoubleStar { l, n }))
            .collect(),
        Family::F if n_max >= 4 => vec![crate::families::Base::Path4],
        Family::F => Vec::new(),
    };
    for base in bases {
        let replay = Replay::start(family, base)?;
        expand(&mut found, ConstructionTrace::new(family, base), replay, n_max);
    }
    Ok(found)
}

fn expand(found: &mut BTreeMap<String, ConstructionTrace>, trace: ConstructionTrace, state: Replay, n_max: usize) {
    found.entry(state.tree().canonical_code()).or_insert_with(|| trace.clone());
    let room = n_max - state.order();
    let lv = state.state().lv.to_vec();
    let mut steps = Vec::new();
    match trace.family {
        Family::H => {
            for &x in &lv {
                for r in 1..=room.saturating_sub(4) {
                    for s in 2..=room.saturating_sub(2 + r) {
                        steps.push(Step::h_double_star(x, r, s));
                    }
                }
            }
            for x in state.state().sv.as_ref().map(VertexSet::to_vec).unwrap_or_default() {
                for t in 2..=room.saturating_sub(1) {
                    steps.push(Step::h_star(x, t));
                }
            }
        }
        Family::F => {
            for &x in &lv {
                if room >= 3 {
                    steps.push(Step::f_path(x));
                }
                for t in 2..=room.saturating_sub(1) / 2 {
                    steps.push(Step::f_spider(x, t));
                }
            }
        }
    }
    for step in steps {
        let mut next = state.clone();
        if next.apply(&step).is_ok() {
            let mut trace = trace.clone();
            trace.steps.push(step);
            expand(found, trace, next, n_max);
        }
    }
}

/// The canonical codes of all trees in the given order range.
pub fn codes_in_range(n_min: usize, n_max: usize) -> Result<BTreeSet<String>> {
    let mut codes = BTreeSet::new();
    for n in n_min.max(1)..=n_max {
        codes.extend(all_trees_coded(n)?.into_iter().map(|(c, _)| c));
    }
    Ok(codes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_names_round_trip() {
        for c in Claim::ALL {
            assert_eq!(Claim::parse(c.name()).unwrap(), c);
        }
        assert_eq!(Claim::parse("theorem_f").unwrap(), Claim::TheoremF);
        assert!(Claim::parse("nope").is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        let cfg = SweepConfig::new(1, 8).workers(1);
        assert!(verify_oracle_dp(&cfg, 8).unwrap().pass);
        let r = verify_bound_sandwich(&cfg).unwrap();
        assert!(r.pass);
        assert_eq!(r.trees_checked, 1 + 1 + 1 + 2 + 3 + 6 + 11 + 23);
        assert!(verify_theorem_h(&cfg).unwrap().pass);
        assert!(verify_theorem_f(&cfg).unwrap().pass);
    }

    #[test]
    fn reports_ignore_worker_count() {
        let a = verify_theorem_h(&SweepConfig::new(3, 9).workers(1).seed(5)).unwrap();
        let b = verify_theorem_h(&SweepConfig::new(3, 9).workers(3).seed(5)).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.trees_per_n[&9], 47);
        assert!(a.oracle_checks > 0);
    }

    #[test]
    fn lemma_checks_on_few_traces() {
        for family in [Family::H, Family::F] {
            let r = verify_lemmas_on_traces(&TraceConfig::new(family, 10, 12, 3)).unwrap();
            assert!(r.pass, "{}", r.to_json());
            assert!(r.trees_checked >= 10);
        }
    }

    #[test]
    fn closure_matches_recognition_on_small_orders() {
        let h = family_members(Family::H, 10).unwrap();
        let f = family_members(Family::F, 10).unwrap();
        for n in 3..=10 {
            for (code, tree) in all_trees_coded(n).unwrap() {
                let by_h = matches!(recognize_h(&tree), HVerdict::Member(_));
                assert_eq!(by_h, h.contains_key(&code), "H {code}");
                assert_eq!(recognize_f(&tree).is_some(), f.contains_key(&code), "F {code}");
            }
        }
    }

    #[test]
    fn failures_carry_reproductions() {
        let f = Failure::new(&Tree::path(3), "x", "y");
        assert_eq!(f.edge_list, "3 2 0 1 1 2");
        let json = serde_json::to_string(&f).unwrap();
        assert!(!json.contains("trace"));
    }
}
