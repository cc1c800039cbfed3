//! Domain types shared by every other module: comparison data with a dense
//! index mapping, strength vectors, solver settings and fit results.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph;

/// One opponent of a player, with the counts between them seen from the
/// player's side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pairing {
    pub opponent: usize,
    /// w_ij: games this player won against `opponent`.
    pub won: f64,
    /// w_ji: games this player lost against `opponent`.
    pub lost: f64,
    /// t_ij: games tied with `opponent`.
    pub tied: f64,
}

/// Sparse decisive-win and tie counts over N players.
///
/// Player `i` is `ids()[i]`; ids are kept in sorted order so the dense index
/// mapping is reproducible. Counts are non-negative reals. Ties are stored once
/// per unordered pair and read back symmetrically.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonData {
    ids: Vec<String>,
    wins: BTreeMap<(usize, usize), f64>,
    ties: BTreeMap<(usize, usize), f64>,
    adjacency: Vec<Vec<Pairing>>,
}

fn check_count(ids: &[String], i: usize, j: usize, count: f64) -> Result<()> {
    if !count.is_finite() || count < 0.0 {
        return Err(Error::NegativeCount {
            i: ids[i].clone(),
            j: ids[j].clone(),
            count,
        });
    }
    Ok(())
}

impl ComparisonData {
    /// Builds data from id-labelled records. Duplicate records are summed and
    /// zero counts dropped; the player set is the union of ids seen.
    pub fn from_named<W, T, S>(wins: W, ties: T) -> Result<Self>
    where
        W: IntoIterator<Item = (S, S, f64)>,
        T: IntoIterator<Item = (S, S, f64)>,
        S: Into<String>,
    {
        let wins: Vec<(String, String, f64)> = wins
            .into_iter()
            .map(|(a, b, c)| (a.into(), b.into(), c))
            .collect();
        let ties: Vec<(String, String, f64)> = ties
            .into_iter()
            .map(|(a, b, c)| (a.into(), b.into(), c))
            .collect();
        let mut ids: Vec<String> = wins
            .iter()
            .chain(ties.iter())
            .flat_map(|(a, b, _)| [a.clone(), b.clone()])
            .collect();
        ids.sort();
        ids.dedup();
        let index: BTreeMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(k, id)| (id.as_str(), k))
            .collect();
        let wins: Vec<(usize, usize, f64)> = wins
            .iter()
            .map(|(a, b, c)| (index[a.as_str()], index[b.as_str()], *c))
            .collect();
        let ties: Vec<(usize, usize, f64)> = ties
            .iter()
            .map(|(a, b, c)| (index[a.as_str()], index[b.as_str()], *c))
            .collect();
        Self::from_indexed(ids.clone(), wins, ties)
    }

    /// Builds data over an explicit, strictly ascending id list. Players
    /// without any games are kept.
    pub fn from_indexed<W, T>(ids: Vec<String>, wins: W, ties: T) -> Result<Self>
    where
        W: IntoIterator<Item = (usize, usize, f64)>,
        T: IntoIterator<Item = (usize, usize, f64)>,
    {
        if ids.is_empty() {
            return Err(Error::InvalidData("no players".into()));
        }
        if let Some(w) = ids.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidData(format!(
                "player ids must be unique and sorted (`{}` before `{}`)",
                w[0], w[1]
            )));
        }
        let n = ids.len();
        let check_index = |i: usize, j: usize| -> Result<()> {
            if i >= n || j >= n {
                return Err(Error::InvalidData(format!(
                    "player index out of range ({i}, {j}) for {n} players"
                )));
            }
            if i == j {
                return Err(Error::SelfMatch(ids[i].clone()));
            }
            Ok(())
        };

        let mut win_map = BTreeMap::new();
        for (i, j, c) in wins {
            check_index(i, j)?;
            check_count(&ids, i, j, c)?;
            if c > 0.0 {
                *win_map.entry((i, j)).or_insert(0.0) += c;
            }
        }
        let mut tie_map = BTreeMap::new();
        for (i, j, c) in ties {
            check_index(i, j)?;
            check_count(&ids, i, j, c)?;
            if c > 0.0 {
                *tie_map.entry((i.min(j), i.max(j))).or_insert(0.0) += c;
            }
        }
        Ok(Self::assemble(ids, win_map, tie_map))
    }

    fn assemble(
        ids: Vec<String>,
        wins: BTreeMap<(usize, usize), f64>,
        ties: BTreeMap<(usize, usize), f64>,
    ) -> Self {
        let mut rows: Vec<BTreeMap<usize, Pairing>> = vec![BTreeMap::new(); ids.len()];
        fn touch(rows: &mut [BTreeMap<usize, Pairing>], i: usize, j: usize) -> &mut Pairing {
            rows[i].entry(j).or_insert(Pairing {
                opponent: j,
                won: 0.0,
                lost: 0.0,
                tied: 0.0,
            })
        }
        for (&(i, j), &c) in &wins {
            touch(&mut rows, i, j).won += c;
            touch(&mut rows, j, i).lost += c;
        }
        for (&(i, j), &c) in &ties {
            touch(&mut rows, i, j).tied += c;
            touch(&mut rows, j, i).tied += c;
        }
        let adjacency = rows
            .into_iter()
            .map(|row| row.into_values().collect())
            .collect();
        ComparisonData {
            ids,
            wins,
            ties,
            adjacency,
        }
    }

    pub fn n_players(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|x| x.as_str().cmp(id)).ok()
    }

    /// w_ij.
    pub fn win(&self, i: usize, j: usize) -> f64 {
        self.wins.get(&(i, j)).copied().unwrap_or(0.0)
    }

    /// t_ij, symmetric in its arguments.
    pub fn tie(&self, i: usize, j: usize) -> f64 {
        self.ties
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    /// Positive win counts as `(winner, loser, count)`, in index order.
    pub fn wins(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.wins.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    /// Positive tie counts as `(i, j, count)` with `i < j`, in index order.
    pub fn ties(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.ties.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    /// Opponents of player `i` sorted by index.
    pub fn pairings(&self, i: usize) -> &[Pairing] {
        &self.adjacency[i]
    }

    pub fn total_wins(&self) -> f64 {
        self.wins.values().sum()
    }

    /// Σ over unordered pairs of t_ij.
    pub fn total_ties(&self) -> f64 {
        self.ties.values().sum()
    }

    /// M: decisive games plus tied games.
    pub fn total_games(&self) -> f64 {
        self.total_wins() + self.total_ties()
    }

    pub fn has_ties(&self) -> bool {
        !self.ties.is_empty()
    }

    /// Σ_j w_ij for player `i`.
    pub fn wins_of(&self, i: usize) -> f64 {
        self.adjacency[i].iter().map(|p| p.won).sum()
    }

    /// Rewrites every tie as half a win for each side and drops the ties.
    pub fn with_half_wins(&self) -> ComparisonData {
        let mut wins = self.wins.clone();
        for (&(i, j), &t) in &self.ties {
            *wins.entry((i, j)).or_insert(0.0) += 0.5 * t;
            *wins.entry((j, i)).or_insert(0.0) += 0.5 * t;
        }
        Self::assemble(self.ids.clone(), wins, BTreeMap::new())
    }

    /// Keeps only the listed players (ascending indices), dropping every count
    /// that touches a removed player.
    pub fn restrict(&self, keep: &[usize]) -> ComparisonData {
        let mut remap = vec![usize::MAX; self.n_players()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let ids = keep.iter().map(|&k| self.ids[k].clone()).collect();
        let pick = |m: &BTreeMap<(usize, usize), f64>| {
            m.iter()
                .filter(|(&(i, j), _)| remap[i] != usize::MAX && remap[j] != usize::MAX)
                .map(|(&(i, j), &c)| ((remap[i], remap[j]), c))
                .collect::<BTreeMap<_, _>>()
        };
        let wins = pick(&self.wins);
        let ties = pick(&self.ties);
        Self::assemble(ids, wins, ties)
    }
}

/// Zero-padded ids `p0..p{n-1}` whose lexicographic order is their numeric
/// order.
pub fn numbered_ids(n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|k| format!("p{k:0width$}")).collect()
}

/// Strength vector π, plus the tie parameter ν when the ties model is active.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Strengths {
    pub pi: Vec<f64>,
    pub nu: Option<f64>,
}

impl Strengths {
    pub fn new(pi: Vec<f64>) -> Self {
        Strengths { pi, nu: None }
    }

    pub fn ones(n: usize) -> Self {
        Self::new(vec![1.0; n])
    }

    /// s_i = ln π_i.
    pub fn scores(&self) -> Vec<f64> {
        self.pi.iter().map(|p| p.ln()).collect()
    }

    /// Probability of beating a strength-1 player, π/(π+1).
    pub fn p1(&self) -> Vec<f64> {
        self.pi.iter().map(|&p| p1(p)).collect()
    }
}

#[inline]
pub fn p1(pi: f64) -> f64 {
    pi / (pi + 1.0)
}

pub(crate) fn check_strengths(pi: &[f64]) -> Result<()> {
    match pi.iter().position(|&p| !(p > 0.0 && p.is_finite())) {
        Some(k) => Err(Error::InvalidStrengths(format!(
            "entry {k} is {} (must be positive and finite)",
            pi[k]
        ))),
        None => Ok(()),
    }
}

/// Rescales π so that its geometric mean is 1.
pub fn normalize_geometric_mean(pi: &[f64]) -> Result<Vec<f64>> {
    check_strengths(pi)?;
    let mean_log = pi.iter().map(|p| p.ln()).sum::<f64>() / pi.len() as f64;
    let scale = mean_log.exp();
    Ok(pi.iter().map(|p| p / scale).collect())
}

/// Member of the α-family of coordinate updates. α = 0 is the fast
/// iteration, α = 1 is Zermelo's.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Algorithm {
    pub alpha: f64,
}

impl Algorithm {
    pub const NEWMAN: Algorithm = Algorithm { alpha: 0.0 };
    pub const ZERMELO: Algorithm = Algorithm { alpha: 1.0 };

    pub fn alpha(alpha: f64) -> Self {
        Algorithm { alpha }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alpha == 0.0 {
            write!(f, "newman")
        } else if self.alpha == 1.0 {
            write!(f, "zermelo")
        } else {
            write!(f, "alpha={}", self.alpha)
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "newman" => Ok(Algorithm::NEWMAN),
            "zermelo" => Ok(Algorithm::ZERMELO),
            _ => {
                let v = s
                    .strip_prefix("alpha=")
                    .ok_or_else(|| format!("unknown algorithm `{s}` (newman|zermelo|alpha=<x>)"))?;
                let alpha: f64 = v.parse().map_err(|_| format!("bad alpha value `{v}`"))?;
                if !(alpha >= 0.0 && alpha.is_finite()) {
                    return Err(format!("alpha must be finite and >= 0, got {v}"));
                }
                Ok(Algorithm { alpha })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Mle,
    Map,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TiesModel {
    None,
    Davidson,
    NewmanTies,
    HalfWin,
}

impl TiesModel {
    /// Whether ν is estimated alongside π.
    pub fn estimates_nu(self) -> bool {
        matches!(self, TiesModel::Davidson | TiesModel::NewmanTies)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Init {
    Ones,
    Logistic { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StopRule {
    /// Threshold on max_i |Δ p1_i| (and |Δν|) between consecutive sweeps.
    pub tolerance: f64,
    pub max_sweeps: usize,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            tolerance: 1e-10,
            max_sweeps: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverSpec {
    /// Used by the plain and half-win models, in both MLE and MAP mode.
    pub algorithm: Algorithm,
    pub mode: Mode,
    pub ties: TiesModel,
    pub init: Init,
    pub stop: StopRule,
}

impl Default for SolverSpec {
    fn default() -> Self {
        SolverSpec {
            algorithm: Algorithm::NEWMAN,
            mode: Mode::Mle,
            ties: TiesModel::None,
            init: Init::Ones,
            stop: StopRule::default(),
        }
    }
}

impl SolverSpec {
    pub fn mle(algorithm: Algorithm) -> Self {
        SolverSpec {
            algorithm,
            ..Default::default()
        }
    }

    pub fn map(algorithm: Algorithm) -> Self {
        SolverSpec {
            algorithm,
            mode: Mode::Map,
            ..Default::default()
        }
    }

    pub fn ties(model: TiesModel) -> Self {
        SolverSpec {
            ties: model,
            ..Default::default()
        }
    }

    pub fn with_init(mut self, init: Init) -> Self {
        self.init = init;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.stop.tolerance = tolerance;
        self
    }

    pub fn with_max_sweeps(mut self, max_sweeps: usize) -> Self {
        self.stop.max_sweeps = max_sweeps;
        self
    }

    /// Short name used in reports, e.g. `newman`, `map-zermelo`, `davidson`.
    pub fn label(&self) -> String {
        match self.ties {
            TiesModel::Davidson => "davidson".into(),
            TiesModel::NewmanTies => "newman-ties".into(),
            TiesModel::None | TiesModel::HalfWin => {
                let base = self.algorithm.to_string();
                let base = match self.mode {
                    Mode::Mle => base,
                    Mode::Map => format!("map-{base}"),
                };
                if self.ties == TiesModel::HalfWin {
                    format!("half-win-{base}")
                } else {
                    base
                }
            }
        }
    }

    /// Whether this is a Zermelo-type rule: α = 1, or Davidson for the ties
    /// model.
    pub fn is_zermelo_type(&self) -> bool {
        match self.ties {
            TiesModel::Davidson => true,
            TiesModel::NewmanTies => false,
            TiesModel::None | TiesModel::HalfWin => self.algorithm.alpha == 1.0,
        }
    }

    fn check(&self) -> Result<()> {
        let alpha = self.algorithm.alpha;
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidSpec(format!(
                "alpha must be finite and >= 0, got {alpha}"
            )));
        }
        if !(self.stop.tolerance > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "tolerance must be positive, got {}",
                self.stop.tolerance
            )));
        }
        if self.mode == Mode::Map && self.ties.estimates_nu() {
            return Err(Error::InvalidSpec(
                "MAP estimation is not defined for the Davidson ties model; use --ties half-win or --mode mle".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Termination {
    Converged,
    MaxSweeps,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub sweep: usize,
    /// Log-likelihood, log-posterior or ties log-likelihood, per mode.
    pub objective: f64,
    /// RMS p1 deviation from the final state of the same run.
    pub rms_p1: f64,
    /// max_i |Δ p1_i| relative to the previous sweep; absent for sweep 0.
    pub max_delta_p1: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub strengths: Strengths,
    pub sweeps_used: usize,
    /// Entry 0 is the initial state, entry k the state after sweep k.
    pub trace: Vec<TracePoint>,
    pub terminated: Termination,
    pub warnings: Vec<String>,
}

impl FitResult {
    pub fn objective(&self) -> f64 {
        self.trace.last().map(|t| t.objective).unwrap_or(f64::NAN)
    }
}

/// Checks that `spec` can be fitted to `data`: settings are consistent, and
/// for maximum likelihood the interaction network is strongly connected.
pub fn validate(data: &ComparisonData, spec: &SolverSpec) -> Result<()> {
    spec.check()?;
    if data.has_ties() && spec.ties == TiesModel::None {
        return Err(Error::ModelMismatch(format!(
            "data contains {} tied games; choose a ties model (davidson, newman or half-win)",
            data.total_ties()
        )));
    }
    if spec.mode == Mode::Map {
        return Ok(());
    }
    if data.total_games() <= 0.0 {
        return Err(Error::NoComparisons);
    }
    let components = graph::strongly_connected_components(data);
    if components.len() > 1 {
        return Err(Error::NotStronglyConnected {
            components: components
                .iter()
                .map(|c| c.iter().map(|&k| data.ids()[k].clone()).collect())
                .collect(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn normalize_examples() {
        assert!(close(
            &normalize_geometric_mean(&[2.0, 8.0]).unwrap(),
            &[0.5, 2.0],
            1e-15
        ));
        assert_eq!(
            normalize_geometric_mean(&[1.0, 1.0, 1.0]).unwrap(),
            vec![1.0; 3]
        );
        let r3 = 3f64.sqrt();
        for c in [1e-3, 0.7, 5.0, 1e4] {
            let out = normalize_geometric_mean(&[r3 * c, c / r3]).unwrap();
            assert!(close(&out, &[r3, 1.0 / r3], 1e-14), "{out:?}");
        }
    }

    #[test]
    fn normalize_rejects_bad_entries() {
        for bad in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                normalize_geometric_mean(&[1.0, bad]),
                Err(Error::InvalidStrengths(_))
            ));
        }
    }

    #[test]
    fn ids_sorted_and_duplicates_summed() {
        let d = ComparisonData::from_named(
            [("b", "a", 1.0), ("a", "b", 2.0), ("a", "b", 1.0)],
            Vec::<(&str, &str, f64)>::new(),
        )
        .unwrap();
        assert_eq!(d.ids(), &["a", "b"]);
        assert_eq!(d.win(0, 1), 3.0);
        assert_eq!(d.win(1, 0), 1.0);
        assert_eq!(d.index_of("b"), Some(1));
        assert_eq!(d.pairings(0)[0].won, 3.0);
        assert_eq!(d.pairings(0)[0].lost, 1.0);
    }

    #[test]
    fn ties_are_symmetric() {
        let d = ComparisonData::from_named(
            [("a", "b", 1.0)],
            [("b", "a", 2.0), ("c", "a", 1.0)],
        )
        .unwrap();
        assert_eq!(d.tie(0, 1), 2.0);
        assert_eq!(d.tie(1, 0), 2.0);
        assert_eq!(d.tie(2, 0), 1.0);
        assert_eq!(d.total_ties(), 3.0);
        assert_eq!(d.total_games(), 4.0);
        let h = d.with_half_wins();
        assert!(!h.has_ties());
        assert_eq!(h.win(0, 1), 2.0);
        assert_eq!(h.win(1, 0), 1.0);
        assert_eq!(h.win(0, 2), 0.5);
    }

    #[test]
    fn rejects_self_match_and_bad_counts() {
        let none = Vec::<(&str, &str, f64)>::new();
        assert_eq!(
            ComparisonData::from_named([("a", "a", 1.0)], none.clone()),
            Err(Error::SelfMatch("a".into()))
        );
        assert!(matches!(
            ComparisonData::from_named([("a", "b", -1.0)], none.clone()),
            Err(Error::NegativeCount { .. })
        ));
        assert!(matches!(
            ComparisonData::from_named([("a", "b", f64::NAN)], none),
            Err(Error::NegativeCount { .. })
        ));
        assert!(matches!(
            ComparisonData::from_indexed(vec!["b".into(), "a".into()], [], []),
            Err(Error::InvalidData(_))
        ));
        assert!(matches!(
            ComparisonData::from_indexed(numbered_ids(2), [(0, 2, 1.0)], []),
            Err(Error::InvalidData(_))
        ));
    }

    #[test]
    fn numbered_ids_sort_numerically() {
        let ids = numbered_ids(12);
        assert_eq!(ids[0], "p00");
        assert_eq!(ids[11], "p11");
        assert!(ids.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn restrict_drops_touching_counts() {
        let d = ComparisonData::from_indexed(
            numbered_ids(3),
            [(0, 1, 2.0), (1, 0, 1.0), (2, 0, 1.0)],
            [(1, 2, 1.0)],
        )
        .unwrap();
        let r = d.restrict(&[0, 1]);
        assert_eq!(r.ids(), &["p0", "p1"]);
        assert_eq!(r.total_wins(), 3.0);
        assert!(!r.has_ties());
    }

    fn two_player(w12: f64, w21: f64) -> ComparisonData {
        ComparisonData::from_indexed(numbered_ids(2), [(0, 1, w12), (1, 0, w21)], []).unwrap()
    }

    #[test]
    fn validate_examples() {
        let cycle = ComparisonData::from_named(
            [("a", "b", 1.0), ("b", "c", 1.0), ("c", "a", 1.0)],
            Vec::<(&str, &str, f64)>::new(),
        )
        .unwrap();
        assert!(validate(&cycle, &SolverSpec::mle(Algorithm::NEWMAN)).is_ok());

        let one_way = two_player(5.0, 0.0);
        match validate(&one_way, &SolverSpec::mle(Algorithm::NEWMAN)) {
            Err(Error::NotStronglyConnected { components }) => {
                assert_eq!(components, vec![vec!["p0".to_string()], vec!["p1".to_string()]]);
            }
            other => panic!("expected NotStronglyConnected, got {other:?}"),
        }
        assert!(validate(&one_way, &SolverSpec::map(Algorithm::NEWMAN)).is_ok());
    }

    #[test]
    fn validate_spec_errors() {
        let d = two_player(3.0, 1.0);
        let mut s = SolverSpec::mle(Algorithm::alpha(-0.5));
        assert!(matches!(validate(&d, &s), Err(Error::InvalidSpec(_))));
        s = SolverSpec::default().with_tolerance(0.0);
        assert!(matches!(validate(&d, &s), Err(Error::InvalidSpec(_))));
        s = SolverSpec::ties(TiesModel::Davidson);
        s.mode = Mode::Map;
        assert!(matches!(validate(&d, &s), Err(Error::InvalidSpec(_))));

        let tied = ComparisonData::from_indexed(numbered_ids(2), [(0, 1, 1.0)], [(0, 1, 1.0)])
            .unwrap();
        assert!(matches!(
            validate(&tied, &SolverSpec::default()),
            Err(Error::ModelMismatch(_))
        ));
        // a tie is an edge both ways, so one win plus one tie is connected
        assert!(validate(&tied, &SolverSpec::ties(TiesModel::NewmanTies)).is_ok());
    }

    #[test]
    fn validate_rejects_empty_mle() {
        let lone = ComparisonData::from_indexed(vec!["solo".into()], [], []).unwrap();
        assert_eq!(
            validate(&lone, &SolverSpec::default()),
            Err(Error::NoComparisons)
        );
        assert!(validate(&lone, &SolverSpec::map(Algorithm::NEWMAN)).is_ok());
    }

    #[test]
    fn algorithm_parsing() {
        assert_eq!("newman".parse::<Algorithm>().unwrap(), Algorithm::NEWMAN);
        assert_eq!("zermelo".parse::<Algorithm>().unwrap(), Algorithm::ZERMELO);
        assert_eq!("alpha=0.5".parse::<Algorithm>().unwrap().alpha, 0.5);
        assert!("alpha=-1".parse::<Algorithm>().is_err());
        assert!("fast".parse::<Algorithm>().is_err());
        assert_eq!(Algorithm::alpha(2.0).to_string(), "alpha=2");
    }

    #[test]
    fn labels() {
        assert_eq!(SolverSpec::mle(Algorithm::NEWMAN).label(), "newman");
        assert_eq!(SolverSpec::map(Algorithm::ZERMELO).label(), "map-zermelo");
        assert_eq!(SolverSpec::ties(TiesModel::Davidson).label(), "davidson");
        assert!(SolverSpec::ties(TiesModel::Davidson).is_zermelo_type());
        assert!(!SolverSpec::mle(Algorithm::alpha(0.5)).is_zermelo_type());
    }
}
