//! Two-phase convergence measurement.
//!
//! Phase one solves the problem to near machine precision with the fast
//! (α = 0) rule of the same mode. Phase two restarts every algorithm from a
//! shared random initialization and counts full sweeps until every player's
//! p1 = π/(π+1) lies within the criterion of the reference.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{validate, Algorithm, ComparisonData, Init, Mode, SolverSpec, Strengths, TiesModel};
use crate::solvers::{fit_from, initial_state, max_p1_change, prepare, rms_p1, sweep, UpdateRule};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchSpec {
    pub algorithms: Vec<SolverSpec>,
    pub criterion_tolerance: f64,
    pub replicates: usize,
    pub seed_base: u64,
    pub reference_tolerance: f64,
    pub max_sweeps: usize,
}

impl BenchSpec {
    pub fn new(algorithms: Vec<SolverSpec>) -> Self {
        BenchSpec {
            algorithms,
            criterion_tolerance: 1e-6,
            replicates: 100,
            seed_base: 0,
            reference_tolerance: 1e-13,
            max_sweeps: 100_000,
        }
    }

    /// The fast rule against Zermelo's for one mode / ties setting.
    pub fn newman_vs_zermelo(mode: Mode, ties: TiesModel) -> Self {
        let base = SolverSpec {
            mode,
            ties,
            ..SolverSpec::default()
        };
        let (fast, slow) = match ties {
            TiesModel::Davidson | TiesModel::NewmanTies => (
                SolverSpec { ties: TiesModel::NewmanTies, ..base },
                SolverSpec { ties: TiesModel::Davidson, ..base },
            ),
            TiesModel::None | TiesModel::HalfWin => (
                SolverSpec { algorithm: Algorithm::NEWMAN, ..base },
                SolverSpec { algorithm: Algorithm::ZERMELO, ..base },
            ),
        };
        Self::new(vec![fast, slow])
    }

    fn check(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(Error::InvalidSpec("no algorithms to benchmark".into()));
        }
        if !(self.criterion_tolerance > 0.0 && self.reference_tolerance > 0.0) {
            return Err(Error::InvalidSpec("tolerances must be positive".into()));
        }
        if self.reference_tolerance >= self.criterion_tolerance {
            return Err(Error::InvalidSpec(format!(
                "reference tolerance {:e} must be far below the criterion {:e}",
                self.reference_tolerance, self.criterion_tolerance
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmStats {
    pub label: String,
    pub spec: SolverSpec,
    pub mean: f64,
    /// Sample standard deviation (n − 1).
    pub std_dev: f64,
    /// Zermelo-type mean over this algorithm's mean, when that baseline ran.
    pub speed_up: Option<f64>,
    pub counts: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DataMode {
    /// One data set, replicates differ only in initialization.
    Fixed,
    /// A fresh data set per replicate.
    Regenerated,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub data_mode: DataMode,
    pub n_players: usize,
    pub n_games: f64,
    pub replicates: usize,
    pub seed_base: u64,
    pub criterion_tolerance: f64,
    pub reference_tolerance: f64,
    pub algorithms: Vec<AlgorithmStats>,
}

/// Solutions compared across algorithms must share a reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct ReferenceKey {
    mode: Mode,
    ties: TiesModel,
}

impl ReferenceKey {
    fn of(spec: &SolverSpec) -> Self {
        let ties = match spec.ties {
            TiesModel::Davidson => TiesModel::NewmanTies,
            t => t,
        };
        ReferenceKey { mode: spec.mode, ties }
    }

    fn reference_spec(self, tolerance: f64, max_sweeps: usize) -> SolverSpec {
        SolverSpec {
            algorithm: Algorithm::NEWMAN,
            mode: self.mode,
            ties: self.ties,
            init: Init::Ones,
            ..SolverSpec::default()
        }
        .with_tolerance(tolerance)
        .with_max_sweeps(max_sweeps)
    }
}

/// High-precision solution for the mode of `spec`, computed with the α = 0
/// rule (newman-ties for the ties model) from unit strengths.
pub fn reference_fit(
    data: &ComparisonData,
    spec: &SolverSpec,
    tolerance: f64,
    max_sweeps: usize,
) -> Result<Strengths> {
    let ref_spec = ReferenceKey::of(spec).reference_spec(tolerance, max_sweeps);
    validate(data, &ref_spec)?;
    let prepared = prepare(data, &ref_spec);
    let start = initial_state(&prepared, &ref_spec);
    let res = fit_from(&prepared, &ref_spec, start, false)?;
    match res.terminated {
        crate::model::Termination::Converged => Ok(res.strengths),
        crate::model::Termination::MaxSweeps => Err(Error::MaxSweepsExceeded(max_sweeps)),
    }
}

fn within(state: &Strengths, reference: &Strengths, tolerance: f64) -> bool {
    let nu_ok = match (state.nu, reference.nu) {
        (Some(a), Some(b)) => (a - b).abs() < tolerance,
        _ => true,
    };
    nu_ok && max_p1_change(&state.pi, &reference.pi) < tolerance
}

/// Full sweeps of `spec` from `start` until every |p1_i − p̂1_i| (and |ν − ν̂|)
/// is below `tolerance`.
pub fn iterations_to_convergence(
    data: &ComparisonData,
    spec: &SolverSpec,
    start: &Strengths,
    reference: &Strengths,
    tolerance: f64,
    max_sweeps: usize,
) -> Result<usize> {
    let prepared = prepare(data, spec);
    let rule = UpdateRule::for_spec(spec);
    let mut state = start.clone();
    for sweeps in 0..=max_sweeps {
        if within(&state, reference, tolerance) {
            return Ok(sweeps);
        }
        if sweeps < max_sweeps {
            sweep(&prepared, &mut state, rule)?;
        }
    }
    Err(Error::MaxSweepsExceeded(max_sweeps))
}

/// sqrt(mean_i (p1(π_i) − p1(π̂_i))²).
pub fn rms_p1_deviation(pi: &[f64], reference: &[f64]) -> Result<f64> {
    if pi.len() != reference.len() {
        return Err(Error::LengthMismatch(pi.len(), reference.len()));
    }
    Ok(rms_p1(pi, reference))
}

fn references(data: &ComparisonData, spec: &BenchSpec) -> Result<Vec<(ReferenceKey, Strengths)>> {
    let mut refs: Vec<(ReferenceKey, Strengths)> = Vec::new();
    for alg in &spec.algorithms {
        validate(data, alg)?;
        let key = ReferenceKey::of(alg);
        if refs.iter().all(|(k, _)| *k != key) {
            let r = reference_fit(data, alg, spec.reference_tolerance, spec.max_sweeps)?;
            refs.push((key, r));
        }
    }
    Ok(refs)
}

fn lookup(refs: &[(ReferenceKey, Strengths)], spec: &SolverSpec) -> Strengths {
    let key = ReferenceKey::of(spec);
    refs.iter()
        .find(|(k, _)| *k == key)
        .map(|(_, r)| r.clone())
        .expect("reference computed for every algorithm")
}

/// Start of replicate `r`: logistic strengths from seed `seed_base + r`,
/// identical for every algorithm, rescaled only for MLE rules.
pub fn replicate_start(data: &ComparisonData, spec: &SolverSpec, seed_base: u64, r: usize) -> Strengths {
    let init = Init::Logistic {
        seed: seed_base.wrapping_add(r as u64),
    };
    initial_state(&prepare(data, spec), &spec.with_init(init))
}

/// Runs every replicate on one data set and aggregates the sweep counts.
pub fn run_bench(data: &ComparisonData, spec: &BenchSpec) -> Result<BenchReport> {
    spec.check()?;
    let refs = references(data, spec)?;
    let per_replicate: Vec<Vec<usize>> = (0..spec.replicates)
        .into_par_iter()
        .map(|r| {
            spec.algorithms
                .iter()
                .map(|alg| {
                    let start = replicate_start(data, alg, spec.seed_base, r);
                    iterations_to_convergence(
                        data,
                        alg,
                        &start,
                        &lookup(&refs, alg),
                        spec.criterion_tolerance,
                        spec.max_sweeps,
                    )
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let counts = (0..spec.algorithms.len())
        .map(|a| per_replicate.iter().map(|row| row[a]).collect())
        .collect();
    Ok(BenchReport {
        data_mode: DataMode::Fixed,
        n_players: data.n_players(),
        n_games: data.total_games(),
        replicates: spec.replicates,
        seed_base: spec.seed_base,
        criterion_tolerance: spec.criterion_tolerance,
        reference_tolerance: spec.reference_tolerance,
        algorithms: aggregate(&spec.algorithms, counts),
    })
}

fn mean_std(counts: &[usize]) -> (f64, f64) {
    let n = counts.len() as f64;
    if counts.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / n;
    let std = if counts.len() > 1 {
        (counts.iter().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, std)
}

/// Mean, standard deviation and speed-up from raw per-replicate counts
/// (`counts[a][r]` for algorithm `a`, replicate `r`).
pub fn aggregate(algorithms: &[SolverSpec], counts: Vec<Vec<usize>>) -> Vec<AlgorithmStats> {
    let stats: Vec<(f64, f64)> = counts.iter().map(|c| mean_std(c)).collect();
    algorithms
        .iter()
        .zip(counts)
        .zip(&stats)
        .map(|((alg, counts), &(mean, std_dev))| {
            let key = ReferenceKey::of(alg);
            let baseline = algorithms
                .iter()
                .zip(&stats)
                .find(|(b, _)| b.is_zermelo_type() && ReferenceKey::of(b) == key)
                .map(|(_, &(m, _))| m);
            AlgorithmStats {
                label: alg.label(),
                spec: *alg,
                mean,
                std_dev,
                speed_up: baseline.map(|b| b / mean),
                counts,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub algorithm: String,
    pub sweep: usize,
    pub objective: f64,
    pub rms_p1: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TraceTable {
    pub rows: Vec<TraceRow>,
}

impl TraceTable {
    pub fn series(&self, label: &str) -> Vec<&TraceRow> {
        self.rows.iter().filter(|r| r.algorithm == label).collect()
    }
}

/// Objective and RMS p1 deviation from the reference after each of
/// `n_sweeps` sweeps (row 0 is the shared starting point).
pub fn trace_run(
    data: &ComparisonData,
    specs: &[SolverSpec],
    n_sweeps: usize,
    init_seed: u64,
    reference_tolerance: f64,
) -> Result<TraceTable> {
    let bench = BenchSpec {
        reference_tolerance,
        ..BenchSpec::new(specs.to_vec())
    };
    let refs = references(data, &bench)?;
    let mut rows = Vec::new();
    for spec in specs {
        let prepared = prepare(data, spec);
        let rule = UpdateRule::for_spec(spec);
        let objective = rule.objective();
        let reference = lookup(&refs, spec);
        let mut state = replicate_start(data, spec, init_seed, 0);
        let label = spec.label();
        for k in 0..=n_sweeps {
            if k > 0 {
                sweep(&prepared, &mut state, rule)?;
            }
            rows.push(TraceRow {
                algorithm: label.clone(),
                sweep: k,
                objective: objective.evaluate(&prepared, &state)?,
                rms_p1: rms_p1(&state.pi, &reference.pi),
            });
        }
    }
    Ok(TraceTable { rows })
}

/// Geometric-decay estimate of the per-sweep RMS contraction from the last
/// sweeps of a trace series whose deviations are still above `floor`.
pub fn late_contraction(series: &[&TraceRow], floor: f64) -> Option<f64> {
    let usable: Vec<f64> = series
        .iter()
        .map(|r| r.rms_p1)
        .take_while(|&v| v > floor)
        .collect();
    if usable.len() < 6 {
        return None;
    }
    let tail = &usable[usable.len() / 2..];
    let steps = (tail.len() - 1) as f64;
    Some((tail[tail.len() - 1] / tail[0]).powf(1.0 / steps))
}
