//! Synthetic tournaments: logistic true scores, uniformly random pairings,
//! Bradley-Terry (or Davidson ties) outcomes, and whole-set redraws until the
//! interaction network is strongly connected.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::strongly_connected_components;
use crate::model::{numbered_ids, ComparisonData};

// True scores and game outcomes use streams distinct from a plain
// `sample_logistic_scores(n, seed)`, so a fit initialized with the
// generator's seed does not start at the truth.
const SCORE_STREAM: u64 = 0x6a09_e667_f3bc_c909;
const GAME_STREAM: u64 = 0x9e37_79b9_7f4a_7c15;

/// True scores used by the generator for `(n, seed)`.
pub fn true_scores(n: usize, seed: u64) -> Vec<f64> {
    sample_logistic_scores(n, seed ^ SCORE_STREAM)
}

/// What is thrown away when a draw is not strongly connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RedrawPolicy {
    /// Discard every game and draw a new game set.
    #[default]
    WholeSet,
    /// Keep the pairings and redraw the outcomes of games that involve a
    /// player outside the largest strongly connected component.
    Offending,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub n_players: usize,
    pub n_games: usize,
    pub ties: bool,
    pub nu_true: f64,
    pub seed: u64,
    pub max_redraws: usize,
    pub redraw: RedrawPolicy,
}

impl SynthSpec {
    pub fn new(n_players: usize, n_games: usize, seed: u64) -> Self {
        SynthSpec {
            n_players,
            n_games,
            ties: false,
            nu_true: 0.5,
            seed,
            max_redraws: 1000,
            redraw: RedrawPolicy::WholeSet,
        }
    }

    pub fn with_ties(mut self, nu_true: f64) -> Self {
        self.ties = true;
        self.nu_true = nu_true;
        self
    }

    fn check(&self) -> Result<()> {
        if self.n_players < 2 {
            return Err(Error::InvalidSpec("need at least 2 players".into()));
        }
        if self.n_games < 1 {
            return Err(Error::InvalidSpec("need at least 1 game".into()));
        }
        if self.ties && !(self.nu_true >= 0.0 && self.nu_true.is_finite()) {
            return Err(Error::InvalidSpec(format!(
                "tie parameter must be finite and >= 0, got {}",
                self.nu_true
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticTournament {
    pub data: ComparisonData,
    pub true_scores: Vec<f64>,
    pub nu_true: Option<f64>,
    /// Discarded game sets before the accepted one.
    pub redraws: usize,
}

/// Inverse CDF of the standard logistic distribution.
pub fn logistic_quantile(u: f64) -> f64 {
    (u / (1.0 - u)).ln()
}

fn open_unit(rng: &mut Pcg64Mcg) -> f64 {
    loop {
        let u: f64 = rng.gen();
        if u > 0.0 {
            return u;
        }
    }
}

/// `n` i.i.d. standard logistic draws, deterministic per seed.
pub fn sample_logistic_scores(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = Pcg64Mcg::seed_from_u64(seed);
    (0..n).map(|_| logistic_quantile(open_unit(&mut rng))).collect()
}

/// Decisive-games tournament with logistic true scores drawn from `spec.seed`.
pub fn generate_tournament(spec: &SynthSpec) -> Result<SyntheticTournament> {
    spec.check()?;
    if spec.ties {
        return Err(Error::InvalidSpec(
            "spec asks for ties; use generate_tournament_ties".into(),
        ));
    }
    let scores = true_scores(spec.n_players, spec.seed);
    generate_with_scores(spec, scores)
}

/// Tournament with wins, losses and ties from the Davidson model at
/// `spec.nu_true`.
pub fn generate_tournament_ties(spec: &SynthSpec) -> Result<SyntheticTournament> {
    spec.check()?;
    if !spec.ties {
        return Err(Error::InvalidSpec(
            "spec has ties disabled; use generate_tournament".into(),
        ));
    }
    let scores = true_scores(spec.n_players, spec.seed);
    generate_with_scores(spec, scores)
}

#[derive(Debug, Clone, Copy)]
struct Game {
    i: usize,
    j: usize,
    outcome: Outcome,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Outcome {
    First,
    Second,
    Tie,
}

fn draw_pair(rng: &mut Pcg64Mcg, n: usize) -> (usize, usize) {
    loop {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j {
            return (i.min(j), i.max(j));
        }
    }
}

fn draw_outcome(rng: &mut Pcg64Mcg, scores: &[f64], nu: f64, i: usize, j: usize) -> Outcome {
    // probabilities scaled by 1/√(π_iπ_j) to stay finite
    let half = 0.5 * (scores[i] - scores[j]);
    let (up, down) = (half.exp(), (-half).exp());
    let u: f64 = rng.gen::<f64>() * (up + down + 2.0 * nu);
    if u < up {
        Outcome::First
    } else if u < up + down {
        Outcome::Second
    } else {
        Outcome::Tie
    }
}

fn tabulate(ids: &[String], games: &[Game]) -> Result<ComparisonData> {
    let mut wins: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut ties: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for g in games {
        let key = match g.outcome {
            Outcome::First => (g.i, g.j),
            Outcome::Second => (g.j, g.i),
            Outcome::Tie => {
                *ties.entry((g.i, g.j)).or_insert(0.0) += 1.0;
                continue;
            }
        };
        *wins.entry(key).or_insert(0.0) += 1.0;
    }
    ComparisonData::from_indexed(
        ids.to_vec(),
        wins.into_iter().map(|((i, j), c)| (i, j, c)),
        ties.into_iter().map(|((i, j), c)| (i, j, c)),
    )
}

/// Same protocol with caller-supplied true scores.
pub fn generate_with_scores(spec: &SynthSpec, scores: Vec<f64>) -> Result<SyntheticTournament> {
    spec.check()?;
    if scores.len() != spec.n_players {
        return Err(Error::LengthMismatch(scores.len(), spec.n_players));
    }
    let nu = if spec.ties { spec.nu_true } else { 0.0 };
    let n = spec.n_players;
    let ids = numbered_ids(n);
    let mut rng = Pcg64Mcg::seed_from_u64(spec.seed ^ GAME_STREAM);
    let mut games: Vec<Game> = Vec::with_capacity(spec.n_games);

    for attempt in 0..=spec.max_redraws {
        if attempt == 0 || spec.redraw == RedrawPolicy::WholeSet {
            games.clear();
            for _ in 0..spec.n_games {
                let (i, j) = draw_pair(&mut rng, n);
                let outcome = draw_outcome(&mut rng, &scores, nu, i, j);
                games.push(Game { i, j, outcome });
            }
        }
        let data = tabulate(&ids, &games)?;
        let components = strongly_connected_components(&data);
        if components.len() == 1 {
            return Ok(SyntheticTournament {
                data,
                true_scores: scores,
                nu_true: spec.ties.then_some(spec.nu_true),
                redraws: attempt,
            });
        }
        if spec.redraw == RedrawPolicy::Offending {
            let largest = components
                .iter()
                .enumerate()
                .max_by(|(a, x), (b, y)| x.len().cmp(&y.len()).then(b.cmp(a)))
                .map(|(k, _)| k)
                .unwrap_or(0);
            let mut inside = vec![false; n];
            for &p in &components[largest] {
                inside[p] = true;
            }
            for g in games.iter_mut().filter(|g| !(inside[g.i] && inside[g.j])) {
                g.outcome = draw_outcome(&mut rng, &scores, nu, g.i, g.j);
            }
        }
    }
    Err(Error::RedrawLimitExceeded(spec.max_redraws))
}
