//! Command-line interface.
//!
//! Every command computes all of its output in memory first, then writes each
//! file through a temporary sibling and a rename. A failing command therefore
//! leaves the output directory untouched.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bench::{aggregate, run_bench, trace_run, BenchReport, BenchSpec, DataMode};
use crate::error::{Error, Result};
use crate::graph::{restrict_to_largest_scc, strongly_connected_components};
use crate::io::{fmt_f64, matches_csv, parse_matches, ranking_csv, ties_csv};
use crate::model::{Algorithm, ComparisonData, Init, Mode, SolverSpec, StopRule, TiesModel};
use crate::solvers::fit;
use crate::synth::{generate_tournament, generate_tournament_ties, RedrawPolicy, SynthSpec, SyntheticTournament};

#[derive(Debug, Parser)]
#[command(name = "pairrank", version, about = "Bradley-Terry ranking from pairwise comparisons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit strengths and write ranking.csv and summary.json.
    Fit(FitArgs),
    /// Generate a synthetic tournament.
    Synth(SynthArgs),
    /// Report strongly connected components; optionally keep the largest.
    Scc(SccArgs),
    /// Count sweeps to convergence for several algorithms.
    Bench(BenchArgs),
    /// Per-sweep objective and RMS deviation for several algorithms.
    Trace(TraceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Mle,
    Map,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TiesArg {
    None,
    Davidson,
    Newman,
    HalfWin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RedrawArg {
    /// Discard and redraw every game.
    Whole,
    /// Redraw outcomes of games touching players outside the largest component.
    Offending,
}

impl From<RedrawArg> for RedrawPolicy {
    fn from(r: RedrawArg) -> Self {
        match r {
            RedrawArg::Whole => RedrawPolicy::WholeSet,
            RedrawArg::Offending => RedrawPolicy::Offending,
        }
    }
}

/// Redraw settings for synthetic data that is not strongly connected.
#[derive(Debug, Args)]
struct RedrawArgs {
    #[arg(long, value_enum, default_value = "whole")]
    redraw: RedrawArg,
    #[arg(long, default_value_t = 1000)]
    max_redraws: usize,
}

impl RedrawArgs {
    fn apply(&self, mut spec: SynthSpec) -> SynthSpec {
        spec.redraw = self.redraw.into();
        spec.max_redraws = self.max_redraws;
        spec
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InitArg {
    Ones,
    Logistic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Mle => Mode::Mle,
            ModeArg::Map => Mode::Map,
        }
    }
}

impl From<TiesArg> for TiesModel {
    fn from(t: TiesArg) -> Self {
        match t {
            TiesArg::None => TiesModel::None,
            TiesArg::Davidson => TiesModel::Davidson,
            TiesArg::Newman => TiesModel::NewmanTies,
            TiesArg::HalfWin => TiesModel::HalfWin,
        }
    }
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse()
}

#[derive(Debug, Args)]
struct Input {
    /// Match file (`i,j,wins`).
    matches: PathBuf,
    /// Tie file (`i,j,ties`).
    #[arg(long)]
    tie_file: Option<PathBuf>,
}

impl Input {
    fn load(&self) -> Result<ComparisonData> {
        parse_matches(&self.matches, self.tie_file.as_deref())
    }
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum, default_value = "mle")]
    mode: ModeArg,
    /// How ties are modelled; `newman` is the fast ties iteration.
    #[arg(long, value_enum, default_value = "none")]
    ties: TiesArg,
}

#[derive(Debug, Args)]
struct SeedArg {
    #[arg(long, env = "PAIRRANK_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct OutputArg {
    /// Directory for output files (created if missing).
    #[arg(long, default_value = ".")]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct FitArgs {
    #[command(flatten)]
    input: Input,
    /// newman, zermelo, or alpha=<x>.
    #[arg(long, value_parser = parse_algorithm, default_value = "newman")]
    algorithm: Algorithm,
    #[command(flatten)]
    model: ModelArgs,
    /// Stop when no p1 = π/(π+1) (nor ν) moves by this much in a sweep.
    #[arg(long, default_value_t = StopRule::default().tolerance)]
    tol: f64,
    #[arg(long, default_value_t = StopRule::default().max_sweeps)]
    max_sweeps: usize,
    #[arg(long, value_enum, default_value = "ones")]
    init: InitArg,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long)]
    players: usize,
    #[arg(long)]
    games: usize,
    /// Draw ties from the Davidson model with this tie parameter.
    #[arg(long)]
    nu: Option<f64>,
    #[command(flatten)]
    redraw: RedrawArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Debug, Args)]
struct SccArgs {
    #[command(flatten)]
    input: Input,
    /// Also write matches.csv and ties.csv restricted to the largest component.
    #[arg(long)]
    restrict: bool,
    #[command(flatten)]
    output: OutputArg,
}

/// A data file, or synthetic data when no file is given.
#[derive(Debug, Args)]
struct DataSource {
    /// Match file; omit to generate synthetic data.
    matches: Option<PathBuf>,
    #[arg(long, requires = "matches")]
    tie_file: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    players: usize,
    #[arg(long, default_value_t = 50_000)]
    games: usize,
    /// True tie parameter of synthetic data when a ties model is benchmarked.
    #[arg(long, default_value_t = 0.5)]
    nu: f64,
    #[command(flatten)]
    redraw: RedrawArgs,
}

impl DataSource {
    fn synth_spec(&self, ties: TiesModel, seed: u64) -> SynthSpec {
        let spec = self.redraw.apply(SynthSpec::new(self.players, self.games, seed));
        if ties.estimates_nu() {
            spec.with_ties(self.nu)
        } else {
            spec
        }
    }

    fn load(&self, ties: TiesModel, seed: u64) -> Result<ComparisonData> {
        match &self.matches {
            Some(path) => parse_matches(path, self.tie_file.as_deref()),
            None => synthesize(&self.synth_spec(ties, seed)).map(|t| t.data),
        }
    }
}

fn synthesize(spec: &SynthSpec) -> Result<SyntheticTournament> {
    if spec.ties {
        generate_tournament_ties(spec)
    } else {
        generate_tournament(spec)
    }
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[command(flatten)]
    data: DataSource,
    /// Algorithm to time; repeatable. Defaults to the fast rule and
    /// Zermelo's (newman-ties and davidson for the ties model).
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Vec<Algorithm>,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 100)]
    replicates: usize,
    /// Convergence criterion on p1 (and ν).
    #[arg(long, default_value_t = 1e-6)]
    criterion_tol: f64,
    #[arg(long, default_value_t = 1e-13)]
    reference_tol: f64,
    #[arg(long, default_value_t = 100_000)]
    max_sweeps: usize,
    /// Generate a fresh synthetic data set for every replicate.
    #[arg(long, conflicts_with = "matches")]
    regenerate: bool,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[command(flatten)]
    data: DataSource,
    /// Algorithm to trace; repeatable. Defaults to α = 0, 0.5, 1, 2.
    #[arg(long, value_parser = parse_algorithm)]
    algorithm: Vec<Algorithm>,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 30)]
    sweeps: usize,
    #[arg(long, default_value_t = 1e-13)]
    reference_tol: f64,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    output: OutputArg,
}

/// Files produced by a command, in write order.
type Artifacts = Vec<(&'static str, String)>;

/// Parses `argv` (including the program name), runs the command, and returns
/// the process exit code: 0 success, 1 model or data error, 2 usage error.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let (dir, result) = match &cli.command {
        Command::Fit(a) => (&a.output.output, cmd_fit(a)),
        Command::Synth(a) => (&a.output.output, cmd_synth(a)),
        Command::Scc(a) => (&a.output.output, cmd_scc(a)),
        Command::Bench(a) => (&a.output.output, cmd_bench(a)),
        Command::Trace(a) => (&a.output.output, cmd_trace(a)),
    };
    match result.and_then(|files| write_all(dir, &files)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn write_all(dir: &Path, files: &Artifacts) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, content) in files {
        let tmp = dir.join(format!(".{name}.tmp"));
        if let Err(e) = fs::write(&tmp, content) {
            for (t, _) in &staged {
                let _ = fs::remove_file(t);
            }
            let _ = fs::remove_file(&tmp);
            return Err(Error::Io(format!("{}: {e}", tmp.display())));
        }
        staged.push((tmp, dir.join(name)));
    }
    for (tmp, dest) in staged {
        fs::rename(&tmp, &dest).map_err(|e| Error::Io(format!("{}: {e}", dest.display())))?;
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn cmd_fit(a: &FitArgs) -> Result<Artifacts> {
    let data = a.input.load()?;
    let init = match a.init {
        InitArg::Ones => Init::Ones,
        InitArg::Logistic => Init::Logistic { seed: a.seed.seed },
    };
    let spec = SolverSpec {
        algorithm: a.algorithm,
        mode: a.model.mode.into(),
        ties: a.model.ties.into(),
        init,
        stop: StopRule {
            tolerance: a.tol,
            max_sweeps: a.max_sweeps,
        },
    };
    let res = fit(&data, &spec)?;
    for w in &res.warnings {
        eprintln!("warning: {w}");
    }
    let summary = json!({
        "spec": spec,
        "label": spec.label(),
        "n_players": data.n_players(),
        "n_games": data.total_games(),
        "sweeps": res.sweeps_used,
        "objective": res.objective(),
        "termination": res.terminated,
        "nu": res.strengths.nu,
        "warnings": res.warnings,
    });
    Ok(vec![
        ("ranking.csv", ranking_csv(&data, &res.strengths)),
        ("summary.json", to_json(&summary)),
    ])
}

fn cmd_synth(a: &SynthArgs) -> Result<Artifacts> {
    let mut spec = SynthSpec::new(a.players, a.games, a.seed.seed);
    if let Some(nu) = a.nu {
        spec = spec.with_ties(nu);
    }
    let spec = a.redraw.apply(spec);
    let t = synthesize(&spec)?;
    let mut truth = String::from("id,score,pi\n");
    for (id, s) in t.data.ids().iter().zip(&t.true_scores) {
        truth.push_str(&format!("{id},{},{}\n", fmt_f64(*s), fmt_f64(s.exp())));
    }
    let info = json!({
        "spec": spec,
        "n_players": t.data.n_players(),
        "n_games": t.data.total_games(),
        "n_ties": t.data.total_ties(),
        "redraws": t.redraws,
    });
    Ok(vec![
        ("matches.csv", matches_csv(&t.data)),
        ("ties.csv", ties_csv(&t.data)),
        ("truth.csv", truth),
        ("synth.json", to_json(&info)),
    ])
}

fn cmd_scc(a: &SccArgs) -> Result<Artifacts> {
    let data = a.input.load()?;
    let components: Vec<Vec<&str>> = strongly_connected_components(&data)
        .into_iter()
        .map(|c| c.into_iter().map(|i| data.ids()[i].as_str()).collect())
        .collect();
    let sizes: Vec<usize> = components.iter().map(Vec::len).collect();
    let mut report = json!({
        "n_players": data.n_players(),
        "n_components": components.len(),
        "strongly_connected": components.len() == 1,
        "sizes": sizes,
        "components": components,
    });
    let mut files = Vec::new();
    if a.restrict {
        let (kept, removed) = restrict_to_largest_scc(&data);
        report["kept"] = json!(kept.n_players());
        report["removed"] = json!(removed);
        files.push(("matches.csv", matches_csv(&kept)));
        files.push(("ties.csv", ties_csv(&kept)));
    }
    files.push(("scc.json", to_json(&report)));
    Ok(files)
}

fn bench_algorithms(list: &[Algorithm], mode: Mode, ties: TiesModel) -> Vec<SolverSpec> {
    if list.is_empty() || ties.estimates_nu() {
        return BenchSpec::newman_vs_zermelo(mode, ties).algorithms;
    }
    list.iter()
        .map(|&algorithm| SolverSpec {
            algorithm,
            mode,
            ties,
            ..SolverSpec::default()
        })
        .collect()
}

fn cmd_bench(a: &BenchArgs) -> Result<Artifacts> {
    let mode: Mode = a.model.mode.into();
    let ties: TiesModel = a.model.ties.into();
    let spec = BenchSpec {
        criterion_tolerance: a.criterion_tol,
        replicates: a.replicates,
        seed_base: a.seed.seed,
        reference_tolerance: a.reference_tol,
        max_sweeps: a.max_sweeps,
        ..BenchSpec::new(bench_algorithms(&a.algorithm, mode, ties))
    };
    let report = if a.regenerate {
        regenerated_bench(a, &spec, ties)?
    } else {
        let data = a.data.load(ties, a.seed.seed)?;
        run_bench(&data, &spec)?
    };
    Ok(vec![("bench.json", to_json(&json!({ "spec": spec, "report": report })))])
}

/// Replicate r draws its own data set from seed `seed + r` and starts from
/// the logistic initialization with the same seed.
fn regenerated_bench(a: &BenchArgs, spec: &BenchSpec, ties: TiesModel) -> Result<BenchReport> {
    let mut counts = vec![Vec::with_capacity(spec.replicates); spec.algorithms.len()];
    let mut games = 0.0;
    for r in 0..spec.replicates {
        let seed = spec.seed_base.wrapping_add(r as u64);
        let data = a.data.load(ties, seed)?;
        games += data.total_games();
        let one = BenchSpec {
            replicates: 1,
            seed_base: seed,
            ..spec.clone()
        };
        let rep = run_bench(&data, &one)?;
        for (c, s) in counts.iter_mut().zip(rep.algorithms) {
            c.extend(s.counts);
        }
    }
    Ok(BenchReport {
        data_mode: DataMode::Regenerated,
        n_players: a.data.players,
        n_games: if spec.replicates > 0 { games / spec.replicates as f64 } else { 0.0 },
        replicates: spec.replicates,
        seed_base: spec.seed_base,
        criterion_tolerance: spec.criterion_tolerance,
        reference_tolerance: spec.reference_tolerance,
        algorithms: aggregate(&spec.algorithms, counts),
    })
}

fn cmd_trace(a: &TraceArgs) -> Result<Artifacts> {
    let mode: Mode = a.model.mode.into();
    let ties: TiesModel = a.model.ties.into();
    let algorithms: Vec<SolverSpec> = if ties.estimates_nu() {
        BenchSpec::newman_vs_zermelo(mode, ties).algorithms
    } else {
        let list = if a.algorithm.is_empty() {
            [0.0, 0.5, 1.0, 2.0].map(Algorithm::alpha).to_vec()
        } else {
            a.algorithm.clone()
        };
        bench_algorithms(&list, mode, ties)
    };
    let data = a.data.load(ties, a.seed.seed)?;
    let table = trace_run(&data, &algorithms, a.sweeps, a.seed.seed, a.reference_tol)?;
    let mut out = String::from("algorithm,sweep,objective,rms_p1\n");
    for r in &table.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.algorithm,
            r.sweep,
            fmt_f64(r.objective),
            fmt_f64(r.rms_p1)
        ));
    }
    Ok(vec![("trace.csv", out)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_command(["pairrank"]), 2);
        assert_eq!(run_command(["pairrank", "fit"]), 2);
        assert_eq!(run_command(["pairrank", "fit", "x.csv", "--algorithm", "fast"]), 2);
        assert_eq!(run_command(["pairrank", "fit", "x.csv", "--ties", "maybe"]), 2);
    }

    #[test]
    fn missing_file_exits_1() {
        let dir = std::env::temp_dir().join("pairrank-cli-missing");
        let out = dir.to_str().unwrap();
        assert_eq!(run_command(["pairrank", "fit", "/nonexistent/m.csv", "--output", out]), 1);
        assert!(!dir.join("ranking.csv").exists());
    }
}
