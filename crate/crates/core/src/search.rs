//! Exact search over pitch sequences.
//!
//! The search mirrors a branch-and-cut run on the MILP without an LP engine:
//! every integral point (a complete sequence of a given tire length) has its
//! noise evaluated, an improving point becomes the incumbent and tightens the
//! cutoff `z <= z_ub`, and evaluated points are recorded as no-goods. Branching
//! is over the pitch type at each position, depth first, types ascending.
//!
//! A node is pruned when the partial Fourier sums are already too far from
//! zero for the remaining pitches to bring them back under the cutoff: at
//! harmonic `k` the remaining pitches can move the sum by at most
//! `sum_p rem_p |D_{k,p}|`.
//!
//! Work is split into jobs by occurrence-count vector and the first two pitch
//! types. Jobs run in parallel and share the cutoff; the answer is the global
//! minimum with ties resolved by the smallest rotation of the sequence, so it
//! does not depend on the order in which jobs finish.
//!
//! Rotations are the only symmetry used. Reading a sequence backwards moves
//! every groove to the other end of its pitch, which changes the spectrum.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::pitch::{format_types, min_rotation, Instance, PitchSequence};
use crate::spectrum::{profile_spectrum, Objective, SpectrumKernel};

/// Values closer than this are treated as ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Largest pitch count solved exactly without an explicit time limit.
pub const UNLIMITED_MAX_PITCHES: usize = 16;

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "PITCHOPT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    #[default]
    None,
    /// The first pitch is of type 1; needs `minOcc_1 >= 1`.
    FixFirst,
    /// Only the smallest rotation of each sequence is accepted, and every
    /// incumbent cuts off all of its rotations.
    RotationCuts,
}

impl std::str::FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Symmetry::None),
            "fix-first" | "fixFirst" => Ok(Symmetry::FixFirst),
            "rotation-cuts" | "rotationCuts" => Ok(Symmetry::RotationCuts),
            other => invalid(format!("unknown symmetry option {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub symmetry: Symmetry,
    /// Initial cutoff, e.g. the noise of a heuristic solution.
    pub seed_upper_bound: Option<f64>,
    pub time_limit: Option<Duration>,
    /// Worker threads; `None` reads `PITCHOPT_THREADS`, then uses all cores.
    pub threads: Option<usize>,
    /// Give every tire length its own cutoff so `per_length_best` holds the
    /// true optimum of each length. Slower.
    pub exhaustive_lengths: bool,
}

/// One incumbent update.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Incumbent {
    pub sequence: String,
    /// Value of the searched objective.
    pub value: f64,
    pub exact_noise: f64,
    pub elapsed_secs: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveResult {
    pub objective: Objective,
    #[serde(serialize_with = "ser_display")]
    pub best_sequence: PitchSequence,
    pub exact_noise: f64,
    pub exact_harmonic: usize,
    pub approx_noise: f64,
    pub approx_harmonic: usize,
    /// Trailing empty units `j` of the best sequence.
    pub trailing: u64,
    pub nodes_explored: u64,
    pub incumbent_updates: u64,
    pub no_good_hits: u64,
    #[serde(serialize_with = "ser_secs")]
    pub wall_time: Duration,
    /// Best objective value found per `j`. Lengths pruned entirely are absent
    /// unless `exhaustive_lengths` was set.
    pub per_length_best: BTreeMap<u64, f64>,
    /// False when the time limit stopped the search.
    pub optimal: bool,
    pub log: Vec<Incumbent>,
}

fn ser_display<S: serde::Serializer>(
    v: &PitchSequence,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_secs<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SolveResult {
    /// Value of the objective the search minimized.
    pub fn value(&self) -> f64 {
        match self.objective {
            Objective::Exact => self.exact_noise,
            Objective::Approx => self.approx_noise,
        }
    }
}

/// Incumbent history in discovery order; values strictly decrease and the
/// last entry is the returned sequence's orbit.
pub fn incumbent_log(result: &SolveResult) -> &[Incumbent] {
    &result.log
}

/// Relative gap in percent between the real noise of a heuristic sequence and
/// the optimal noise, measured against the heuristic's real noise.
pub fn gap_percent(real_noise: f64, optimal_noise: f64) -> f64 {
    100.0 * (real_noise - optimal_noise) / real_noise
}

/// Minimizes the exact noise over every tire length.
pub fn solve_exact(inst: &Instance, opts: &SolveOptions) -> Result<SolveResult> {
    if inst.pitches() > UNLIMITED_MAX_PITCHES && opts.time_limit.is_none() {
        return invalid(format!(
            "exact search with N > {UNLIMITED_MAX_PITCHES} needs an explicit time limit"
        ));
    }
    if opts.symmetry != Symmetry::None && !inst.rotation_invariant() {
        return invalid("symmetry options need rotation-invariant constraints (set cyclic = true)");
    }
    if opts.symmetry == Symmetry::FixFirst && inst.min_occ()[0] == 0 {
        return invalid("symmetry fix-first needs minOcc of type 1 to be at least 1");
    }
    run(inst, Objective::Exact, opts)
}

/// Minimizes the approximated noise `max_k max(|a_k|, |b_k|)` over every tire
/// length, i.e. the optimum of the MILP over all `j`. That measure is not
/// rotation invariant, so no symmetry reduction applies and the returned
/// sequence is reported as found (lexicographically smallest among ties).
pub fn solve_approx(inst: &Instance, opts: &SolveOptions) -> Result<SolveResult> {
    let opts = SolveOptions {
        symmetry: Symmetry::None,
        ..opts.clone()
    };
    run(inst, Objective::Approx, &opts)
}

struct Job {
    counts: Vec<usize>,
    prefix: Vec<usize>,
    period: u64,
}

struct Shared {
    cutoff: AtomicU64,
    stop: AtomicBool,
    log: Mutex<Vec<Incumbent>>,
    no_goods: Mutex<HashSet<Vec<usize>>>,
    no_good_hits: AtomicU64,
    nodes: AtomicU64,
    start: Instant,
    deadline: Option<Instant>,
}

impl Shared {
    fn new(seed: Option<f64>, start: Instant, deadline: Option<Instant>) -> Self {
        Self {
            cutoff: AtomicU64::new(seed.unwrap_or(f64::INFINITY).to_bits()),
            stop: AtomicBool::new(false),
            log: Mutex::new(Vec::new()),
            no_goods: Mutex::new(HashSet::new()),
            no_good_hits: AtomicU64::new(0),
            nodes: AtomicU64::new(0),
            start,
            deadline,
        }
    }

    fn cutoff(&self) -> f64 {
        f64::from_bits(self.cutoff.load(Ordering::Relaxed))
    }
}

/// Best leaf of one job.
#[derive(Debug, Clone)]
struct Candidate {
    value: f64,
    key: Vec<usize>,
    types: Vec<usize>,
    period: u64,
}

impl Candidate {
    fn beats(&self, other: &Candidate) -> bool {
        self.value < other.value - TIE_TOLERANCE
            || ((self.value - other.value).abs() <= TIE_TOLERANCE && self.key < other.key)
    }
}

fn pick(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.beats(&x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn worker_count(opts: &SolveOptions) -> usize {
    opts.threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1)
}

fn run(inst: &Instance, objective: Objective, opts: &SolveOptions) -> Result<SolveResult> {
    let start = Instant::now();
    let deadline = opts.time_limit.map(|d| start + d);
    let counts = inst.count_vectors();
    if counts.is_empty() {
        return Err(Error::Infeasible(
            "no occurrence vector satisfies the bounds".into(),
        ));
    }
    let catalog = inst.catalog();
    let lengths = catalog.lengths();
    let harmonics = inst.harmonics();

    let mut kernels: HashMap<u64, Arc<SpectrumKernel>> = HashMap::new();
    let mut jobs = Vec::new();
    for c in counts {
        let period: u64 = c.iter().zip(lengths).map(|(n, l)| *n as u64 * l).sum();
        kernels
            .entry(period)
            .or_insert_with(|| Arc::new(SpectrumKernel::new(catalog, period, harmonics)));
        for prefix in prefixes(inst, &c, opts.symmetry) {
            jobs.push(Job {
                counts: c.clone(),
                prefix,
                period,
            });
        }
    }

    let groups: Vec<Vec<&Job>> = if opts.exhaustive_lengths {
        let mut by_period: BTreeMap<u64, Vec<&Job>> = BTreeMap::new();
        for job in &jobs {
            by_period.entry(job.period).or_default().push(job);
        }
        by_period.into_values().rev().collect()
    } else {
        vec![jobs.iter().collect()]
    };

    let threads = worker_count(opts);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Validation(format!("cannot start worker pool: {e}")))?;

    let mut best: Option<Candidate> = None;
    let mut per_length_best: BTreeMap<u64, f64> = BTreeMap::new();
    let mut log = Vec::new();
    let (mut nodes, mut hits) = (0, 0);
    let mut stopped = false;
    for group in groups {
        let shared = Shared::new(opts.seed_upper_bound, start, deadline);
        let run_job = |job: &&Job| {
            let kernel = &kernels[&job.period];
            let mut dfs = Dfs::new(inst, objective, opts.symmetry, kernel, &shared, job);
            dfs.start(&job.prefix);
            shared.nodes.fetch_add(dfs.nodes, Ordering::Relaxed);
            dfs.best
        };
        let results: Vec<Option<Candidate>> = if threads == 1 {
            group.iter().map(run_job).collect()
        } else {
            pool.install(|| group.par_iter().map(run_job).collect())
        };
        for cand in results.into_iter().flatten() {
            let j = inst.max_length() - cand.period;
            let entry = per_length_best.entry(j).or_insert(f64::INFINITY);
            *entry = entry.min(cand.value);
            best = pick(best, Some(cand));
        }
        nodes += shared.nodes.load(Ordering::Relaxed);
        hits += shared.no_good_hits.load(Ordering::Relaxed);
        stopped |= shared.stop.load(Ordering::Relaxed);
        let mut group_log = shared.log.into_inner().unwrap();
        log.append(&mut group_log);
    }
    if opts.exhaustive_lengths {
        // per-length searches each keep their own history; keep the global descent
        let mut kept: Vec<Incumbent> = Vec::new();
        for entry in log {
            if kept.last().is_none_or(|last| entry.value < last.value) {
                kept.push(entry);
            }
        }
        log = kept;
    }

    let best = match best {
        Some(b) => b,
        None if stopped => {
            return Err(Error::Infeasible(
                "time limit reached before any solution".into(),
            ))
        }
        None if opts.seed_upper_bound.is_some() => {
            return Err(Error::Infeasible(
                "no sequence beats the seeded upper bound".into(),
            ))
        }
        None => {
            return Err(Error::Infeasible(
                "no sequence satisfies the instance constraints".into(),
            ))
        }
    };

    let types = match objective {
        Objective::Exact => best.key.clone(),
        Objective::Approx => best.types.clone(),
    };
    let sequence = PitchSequence::new(types, catalog)?;
    let spec = profile_spectrum(&sequence, catalog, harmonics)?;
    let exact = crate::spectrum::exact_noise(&spec);
    let approx = crate::spectrum::approx_noise(&spec);
    // the last log entry always names the returned orbit
    if let Some(last) = log.last_mut() {
        last.sequence = sequence.to_string();
    }
    Ok(SolveResult {
        objective,
        trailing: inst.max_length() - sequence.total_length(),
        best_sequence: sequence,
        exact_noise: exact.value,
        exact_harmonic: exact.harmonic,
        approx_noise: approx.value,
        approx_harmonic: approx.harmonic,
        nodes_explored: nodes,
        incumbent_updates: log.len() as u64,
        no_good_hits: hits,
        wall_time: start.elapsed(),
        per_length_best,
        optimal: !stopped,
        log,
    })
}

/// Job prefixes of length up to two, honoring counts, adjacency and the
/// symmetry restriction on the first pitch.
fn prefixes(inst: &Instance, counts: &[usize], symmetry: Symmetry) -> Vec<Vec<usize>> {
    let r = counts.len();
    let first_types: Vec<usize> = match symmetry {
        Symmetry::None => (0..r).filter(|&p| counts[p] > 0).collect(),
        Symmetry::FixFirst => vec![0],
        Symmetry::RotationCuts => counts.iter().position(|&c| c > 0).into_iter().collect(),
    };
    let mut out = Vec::new();
    for &f in &first_types {
        if counts[f] == 0 {
            continue;
        }
        if inst.pitches() == 1 {
            out.push(vec![f]);
            continue;
        }
        for s in 0..r {
            let need = if s == f { 2 } else { 1 };
            if counts[s] < need || inst.incompatible().contains(&(f, s)) {
                continue;
            }
            if s == f && inst.max_seq()[f] == Some(1) {
                continue;
            }
            out.push(vec![f, s]);
        }
    }
    out
}

struct Dfs<'a> {
    inst: &'a Instance,
    objective: Objective,
    symmetry: Symmetry,
    kernel: &'a SpectrumKernel,
    shared: &'a Shared,
    lengths: &'a [u64],
    harmonics: usize,
    rem: Vec<usize>,
    types: Vec<usize>,
    // partial sums after each depth, (N + 1) * K each
    sum_a: Vec<f64>,
    sum_b: Vec<f64>,
    nodes: u64,
    best: Option<Candidate>,
}

impl<'a> Dfs<'a> {
    fn new(
        inst: &'a Instance,
        objective: Objective,
        symmetry: Symmetry,
        kernel: &'a SpectrumKernel,
        shared: &'a Shared,
        job: &Job,
    ) -> Self {
        let n = inst.pitches();
        let k = inst.harmonics();
        Self {
            inst,
            objective,
            symmetry,
            kernel,
            shared,
            lengths: inst.catalog().lengths(),
            harmonics: k,
            rem: job.counts.clone(),
            types: Vec::with_capacity(n),
            sum_a: vec![0.0; (n + 1) * k],
            sum_b: vec![0.0; (n + 1) * k],
            nodes: 0,
            best: None,
        }
    }

    fn start(&mut self, prefix: &[usize]) {
        let mut offset = 0;
        for &t in prefix {
            self.push(t, offset);
            offset += self.lengths[t];
        }
        if !self.pruned() {
            self.descend(offset, 1);
        }
    }

    fn push(&mut self, t: usize, offset: u64) {
        let d = self.types.len();
        let k_max = self.harmonics;
        let (prev, next) = self.sum_a.split_at_mut((d + 1) * k_max);
        let (prev_b, next_b) = self.sum_b.split_at_mut((d + 1) * k_max);
        for k in 1..=k_max {
            let (da, db) = self.kernel.contribution(k, t, offset);
            next[k - 1] = prev[d * k_max + k - 1] + da;
            next_b[k - 1] = prev_b[d * k_max + k - 1] + db;
        }
        self.types.push(t);
        self.rem[t] -= 1;
        self.nodes += 1;
    }

    fn pop(&mut self) {
        let t = self.types.pop().unwrap();
        self.rem[t] += 1;
    }

    /// Lower bound on the objective of any completion of the current prefix.
    fn bound(&self) -> f64 {
        let d = self.types.len();
        let k_max = self.harmonics;
        let a = &self.sum_a[d * k_max..(d + 1) * k_max];
        let b = &self.sum_b[d * k_max..(d + 1) * k_max];
        let mut lb: f64 = 0.0;
        for k in 1..=k_max {
            let slack: f64 = self
                .rem
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(p, &c)| c as f64 * self.kernel.radius(k, p))
                .sum();
            lb = lb.max(self.objective.amplitude(a[k - 1], b[k - 1]) - slack);
        }
        lb
    }

    fn pruned(&self) -> bool {
        self.bound() > self.shared.cutoff() + TIE_TOLERANCE
    }

    /// `run` is the length of the run of equal types ending the prefix.
    fn descend(&mut self, offset: u64, run: usize) {
        if self.nodes & 0x3fff == 0 {
            if let Some(deadline) = self.shared.deadline {
                if Instant::now() >= deadline {
                    self.shared.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        if self.shared.stop.load(Ordering::Relaxed) {
            return;
        }
        if self.types.len() == self.inst.pitches() {
            self.leaf();
            return;
        }
        let last = *self.types.last().unwrap();
        let lowest = match self.symmetry {
            Symmetry::RotationCuts => self.types[0],
            _ => 0,
        };
        for t in lowest..self.rem.len() {
            if self.rem[t] == 0 || self.inst.incompatible().contains(&(last, t)) {
                continue;
            }
            let next_run = if t == last { run + 1 } else { 1 };
            if self.inst.max_seq()[t].is_some_and(|m| next_run > m) {
                continue;
            }
            self.push(t, offset);
            if !self.pruned() {
                self.descend(offset + self.lengths[t], next_run);
            }
            self.pop();
        }
    }

    fn leaf(&mut self) {
        let d = self.types.len();
        let k_max = self.harmonics;
        let a = &self.sum_a[d * k_max..(d + 1) * k_max];
        let b = &self.sum_b[d * k_max..(d + 1) * k_max];
        let value = a
            .iter()
            .zip(b)
            .map(|(x, y)| self.objective.amplitude(*x, *y))
            .fold(0.0, f64::max);
        if value > self.shared.cutoff() + TIE_TOLERANCE {
            return;
        }
        if !self.inst.admits_arrangement(&self.types) {
            return;
        }
        let key = match self.objective {
            Objective::Exact if self.inst.rotation_invariant() => min_rotation(&self.types),
            _ => self.types.clone(),
        };
        if self.symmetry == Symmetry::RotationCuts && key != self.types {
            return;
        }
        {
            // no-good record: rotation cuts exclude the whole orbit of an
            // evaluated point, plain cuts only the point itself
            let record = match self.symmetry {
                Symmetry::RotationCuts => key.clone(),
                _ => self.types.clone(),
            };
            let mut no_goods = self.shared.no_goods.lock().unwrap();
            if !no_goods.insert(record) {
                self.shared.no_good_hits.fetch_add(1, Ordering::Relaxed);
                return;
            }
        }
        let cand = Candidate {
            value,
            key,
            types: self.types.clone(),
            period: self.kernel.period(),
        };
        if value < self.shared.cutoff() {
            let mut log = self.shared.log.lock().unwrap();
            if value < self.shared.cutoff() {
                self.shared.cutoff.store(value.to_bits(), Ordering::Relaxed);
                let exact = match self.objective {
                    Objective::Exact => value,
                    Objective::Approx => self.kernel.exact_noise(&self.types, self.lengths),
                };
                log.push(Incumbent {
                    sequence: format_types(&self.types),
                    value,
                    exact_noise: exact,
                    elapsed_secs: self.shared.start.elapsed().as_secs_f64(),
                });
            }
        }
        if self.best.as_ref().is_none_or(|b| cand.beats(b)) {
            self.best = Some(cand);
        }
    }
}
