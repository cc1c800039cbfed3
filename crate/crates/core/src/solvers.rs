//! Coordinate update rules, the asynchronous sweep, and the fit loop.
//!
//! Every rule maps the current strengths to a new value for one coordinate
//! π_i. A sweep applies the rule to each player in ascending index order,
//! each update seeing the values already updated in the same sweep, then
//! updates ν once when the ties model is active. Maximum-likelihood sweeps
//! finish by rescaling π to geometric mean 1; MAP sweeps never rescale.

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::likelihood::Objective;
use crate::model::{
    check_strengths, p1, validate, ComparisonData, FitResult, Init, Mode, SolverSpec, Strengths,
    Termination, TiesModel, TracePoint,
};
use crate::synth::sample_logistic_scores;

/// Strengths outside this band are reported as divergent.
pub const STRENGTH_FLOOR: f64 = 1e-280;
pub const STRENGTH_CEILING: f64 = 1e280;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TiesVariant {
    Davidson,
    NewmanTies,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpdateRule {
    /// α-family maximum-likelihood update.
    Alpha(f64),
    /// α-family update with the logistic prior; α = 0 is map-newman,
    /// α = 1 is map-zermelo.
    Map(f64),
    Ties(TiesVariant),
}

impl UpdateRule {
    pub const MAP_NEWMAN: UpdateRule = UpdateRule::Map(0.0);
    pub const MAP_ZERMELO: UpdateRule = UpdateRule::Map(1.0);

    pub fn for_spec(spec: &SolverSpec) -> Self {
        match (spec.ties, spec.mode) {
            (TiesModel::Davidson, _) => UpdateRule::Ties(TiesVariant::Davidson),
            (TiesModel::NewmanTies, _) => UpdateRule::Ties(TiesVariant::NewmanTies),
            (_, Mode::Mle) => UpdateRule::Alpha(spec.algorithm.alpha),
            (_, Mode::Map) => UpdateRule::Map(spec.algorithm.alpha),
        }
    }

    /// MAP removes the scale freedom, so only MLE rules rescale.
    pub fn normalizes(self) -> bool {
        !matches!(self, UpdateRule::Map(_))
    }

    pub fn objective(self) -> Objective {
        match self {
            UpdateRule::Alpha(_) => Objective::Likelihood,
            UpdateRule::Map(_) => Objective::Posterior,
            UpdateRule::Ties(_) => Objective::TiesLikelihood,
        }
    }
}

fn degenerate(data: &ComparisonData, i: usize, reason: impl Into<String>) -> Error {
    Error::DegenerateStrength {
        index: i,
        player: data.ids()[i].clone(),
        reason: reason.into(),
    }
}

fn check_input(data: &ComparisonData, pi: &[f64], i: usize) -> Result<()> {
    if pi.len() != data.n_players() {
        return Err(Error::LengthMismatch(pi.len(), data.n_players()));
    }
    if i >= pi.len() {
        return Err(Error::InvalidData(format!(
            "player index {i} out of range for {} players",
            pi.len()
        )));
    }
    Ok(())
}

fn check_positive(pi: &[f64], k: usize) -> Result<f64> {
    let v = pi[k];
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidStrengths(format!(
            "entry {k} is {v} (must be positive and finite)"
        )))
    }
}

fn finish(data: &ComparisonData, i: usize, num: f64, den: f64) -> Result<f64> {
    if den == 0.0 {
        return Err(degenerate(
            data,
            i,
            "no losses recorded, strength diverges to infinity",
        ));
    }
    if num == 0.0 {
        return Err(degenerate(data, i, "no wins recorded, strength collapses to zero"));
    }
    let v = num / den;
    if !(STRENGTH_FLOOR..=STRENGTH_CEILING).contains(&v) {
        return Err(degenerate(
            data,
            i,
            format!("strength {v:e} left the representable range"),
        ));
    }
    Ok(v)
}

/// α-family update for player `i`:
/// π_i′ = Σ_j w_ij(απ_i + π_j)/(π_i + π_j) / Σ_j (αw_ij + w_ji)/(π_i + π_j).
pub fn update_alpha(data: &ComparisonData, pi: &[f64], i: usize, alpha: f64) -> Result<f64> {
    check_input(data, pi, i)?;
    if !(alpha >= 0.0) {
        return Err(Error::InvalidSpec(format!("alpha must be >= 0, got {alpha}")));
    }
    let own = check_positive(pi, i)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for p in data.pairings(i) {
        let other = check_positive(pi, p.opponent)?;
        let sum = own + other;
        num += p.won * (alpha * own + other) / sum;
        den += (alpha * p.won + p.lost) / sum;
    }
    finish(data, i, num, den)
}

/// α-family update with the logistic prior, i.e. with one fictitious win and
/// one fictitious loss against a strength-1 opponent:
/// numerator gains (απ_i + 1)/(π_i + 1), denominator gains (α + 1)/(π_i + 1).
pub fn update_map(data: &ComparisonData, pi: &[f64], i: usize, alpha: f64) -> Result<f64> {
    check_input(data, pi, i)?;
    if !(alpha >= 0.0) {
        return Err(Error::InvalidSpec(format!("alpha must be >= 0, got {alpha}")));
    }
    let own = check_positive(pi, i)?;
    let mut num = (alpha * own + 1.0) / (own + 1.0);
    let mut den = (alpha + 1.0) / (own + 1.0);
    for p in data.pairings(i) {
        let other = check_positive(pi, p.opponent)?;
        let sum = own + other;
        num += p.won * (alpha * own + other) / sum;
        den += (alpha * p.won + p.lost) / sum;
    }
    finish(data, i, num, den)
}

/// Ties-model update of π_i at fixed ν (ν = 0 allowed, giving the no-ties
/// rules), with a_ij = w_ij + ½t_ij.
pub fn update_ties_pi(
    data: &ComparisonData,
    pi: &[f64],
    nu: f64,
    i: usize,
    variant: TiesVariant,
) -> Result<f64> {
    check_input(data, pi, i)?;
    if !(nu >= 0.0 && nu.is_finite()) {
        return Err(Error::InvalidStrengths(format!(
            "tie parameter must be finite and >= 0, got {nu}"
        )));
    }
    let own = check_positive(pi, i)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for p in data.pairings(i) {
        let other = check_positive(pi, p.opponent)?;
        let root = (own * other).sqrt();
        let d = own + other + 2.0 * nu * root;
        let a_ij = p.won + 0.5 * p.tied;
        let a_ji = p.lost + 0.5 * p.tied;
        // (1 + ν√(π_j/π_i)) / d
        let g = (1.0 + nu * root / own) / d;
        match variant {
            TiesVariant::Davidson => {
                num += a_ij;
                den += (a_ij + a_ji) * g;
            }
            TiesVariant::NewmanTies => {
                num += a_ij * (other + nu * root) / d;
                den += a_ji * g;
            }
        }
    }
    finish(data, i, num, den)
}

/// Ties-model update of ν at fixed π.
pub fn update_ties_nu(
    data: &ComparisonData,
    pi: &[f64],
    nu: f64,
    variant: TiesVariant,
) -> Result<f64> {
    if pi.len() != data.n_players() {
        return Err(Error::LengthMismatch(pi.len(), data.n_players()));
    }
    check_strengths(pi)?;
    if !(nu >= 0.0 && nu.is_finite()) {
        return Err(Error::InvalidStrengths(format!(
            "tie parameter must be finite and >= 0, got {nu}"
        )));
    }
    if !data.has_ties() {
        return Err(Error::ModelMismatch(
            "no tied games; the tie parameter is pinned at 0".into(),
        ));
    }
    if variant == TiesVariant::NewmanTies && data.total_wins() == 0.0 {
        return Err(Error::DegenerateNu(
            "every game is tied, the tie odds diverge".into(),
        ));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..data.n_players() {
        for p in data.pairings(i) {
            let (a, b) = (pi[i], pi[p.opponent]);
            let root = (a * b).sqrt();
            let d = a + b + 2.0 * nu * root;
            match variant {
                TiesVariant::Davidson => {
                    num += 0.5 * p.tied;
                    den += (p.won + 0.5 * p.tied) * 2.0 * root / d;
                }
                TiesVariant::NewmanTies => {
                    num += 0.5 * p.tied * (a + b) / d;
                    den += p.won * 2.0 * root / d;
                }
            }
        }
    }
    let v = num / den;
    if !(v > 0.0 && v <= STRENGTH_CEILING) {
        return Err(Error::DegenerateNu(format!("tie parameter became {v:e}")));
    }
    Ok(v)
}

/// Applies `rule` to one coordinate, leaving the others untouched.
pub fn update_coordinate(
    data: &ComparisonData,
    state: &Strengths,
    i: usize,
    rule: UpdateRule,
) -> Result<f64> {
    match rule {
        UpdateRule::Alpha(alpha) => update_alpha(data, &state.pi, i, alpha),
        UpdateRule::Map(alpha) => update_map(data, &state.pi, i, alpha),
        UpdateRule::Ties(variant) => {
            let nu = state.nu.ok_or_else(|| {
                Error::InvalidStrengths("ties rule needs a tie parameter".into())
            })?;
            update_ties_pi(data, &state.pi, nu, i, variant)
        }
    }
}

fn rescale_in_place(pi: &mut [f64]) {
    let mean_log = pi.iter().map(|p| p.ln()).sum::<f64>() / pi.len() as f64;
    let scale = mean_log.exp();
    for p in pi.iter_mut() {
        *p /= scale;
    }
}

/// One asynchronous sweep over all players, then the ν update (ties rules,
/// only when the data hold ties), then rescaling for MLE rules.
pub fn sweep(data: &ComparisonData, state: &mut Strengths, rule: UpdateRule) -> Result<()> {
    for i in 0..data.n_players() {
        state.pi[i] = update_coordinate(data, state, i, rule)?;
    }
    if let UpdateRule::Ties(variant) = rule {
        if data.has_ties() {
            let nu = state.nu.unwrap_or(1.0);
            state.nu = Some(update_ties_nu(data, &state.pi, nu, variant)?);
        }
    }
    if rule.normalizes() {
        rescale_in_place(&mut state.pi);
    }
    Ok(())
}

/// The data a rule actually sees: half-win preprocessing rewrites ties.
pub fn prepare<'a>(data: &'a ComparisonData, spec: &SolverSpec) -> Cow<'a, ComparisonData> {
    if spec.ties == TiesModel::HalfWin && data.has_ties() {
        Cow::Owned(data.with_half_wins())
    } else {
        Cow::Borrowed(data)
    }
}

/// Starting point for a fit: π from `spec.init`, ν = 1 for ties models (0
/// when the data hold no ties), rescaled for MLE rules.
pub fn initial_state(data: &ComparisonData, spec: &SolverSpec) -> Strengths {
    let n = data.n_players();
    let pi = match spec.init {
        Init::Ones => vec![1.0; n],
        Init::Logistic { seed } => sample_logistic_scores(n, seed)
            .into_iter()
            .map(f64::exp)
            .collect(),
    };
    let nu = spec
        .ties
        .estimates_nu()
        .then(|| if data.has_ties() { 1.0 } else { 0.0 });
    let mut state = Strengths { pi, nu };
    if UpdateRule::for_spec(spec).normalizes() {
        rescale_in_place(&mut state.pi);
    }
    state
}

/// max_i |p1(a_i) − p1(b_i)|.
pub fn max_p1_change(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (p1(x) - p1(y)).abs())
        .fold(0.0, f64::max)
}

pub(crate) fn rms_p1(pi: &[f64], reference: &[f64]) -> f64 {
    let sq: f64 = pi
        .iter()
        .zip(reference)
        .map(|(&x, &y)| (p1(x) - p1(y)).powi(2))
        .sum();
    (sq / pi.len() as f64).sqrt()
}

fn nu_change(a: Option<f64>, b: Option<f64>) -> f64 {
    match (a, b) {
        (Some(x), Some(y)) => (x - y).abs(),
        _ => 0.0,
    }
}

/// Fits `spec` to `data` from `spec.init` until the per-sweep change in p1
/// (and ν) drops below the tolerance, recording a full trace.
pub fn fit(data: &ComparisonData, spec: &SolverSpec) -> Result<FitResult> {
    validate(data, spec)?;
    let prepared = prepare(data, spec);
    let start = initial_state(&prepared, spec);
    fit_from(&prepared, spec, start, true)
}

/// Fit loop from an explicit starting state over already prepared data.
/// Without `record_trace` only the final objective is evaluated.
pub(crate) fn fit_from(
    data: &ComparisonData,
    spec: &SolverSpec,
    start: Strengths,
    record_trace: bool,
) -> Result<FitResult> {
    let rule = UpdateRule::for_spec(spec);
    let objective = rule.objective();
    let mut warnings = Vec::new();
    if spec.ties.estimates_nu() && !data.has_ties() {
        warnings.push(
            "model mismatch: data hold no ties, tie parameter fixed at 0 (plain Bradley-Terry fit)"
                .to_string(),
        );
    }

    let mut state = start.clone();
    let mut trace = Vec::new();
    if record_trace {
        trace.push(TracePoint {
            sweep: 0,
            objective: objective.evaluate(data, &state)?,
            rms_p1: 0.0,
            max_delta_p1: None,
        });
    }
    let mut terminated = Termination::MaxSweeps;
    let mut sweeps = 0;
    let mut prev = state.clone();
    while sweeps < spec.stop.max_sweeps {
        sweep(data, &mut state, rule)?;
        sweeps += 1;
        let delta = max_p1_change(&state.pi, &prev.pi);
        let dnu = nu_change(state.nu, prev.nu);
        if record_trace {
            trace.push(TracePoint {
                sweep: sweeps,
                objective: objective.evaluate(data, &state)?,
                rms_p1: 0.0,
                max_delta_p1: Some(delta),
            });
        }
        if delta < spec.stop.tolerance && dnu < spec.stop.tolerance {
            terminated = Termination::Converged;
            break;
        }
        prev.clone_from(&state);
    }
    if terminated == Termination::MaxSweeps {
        warnings.push(format!(
            "stopped after {} sweeps without reaching tolerance {:e}",
            spec.stop.max_sweeps, spec.stop.tolerance
        ));
    }

    if record_trace {
        // replay the identical trajectory to measure distance from the end state
        let mut replay = start;
        trace[0].rms_p1 = rms_p1(&replay.pi, &state.pi);
        for point in trace.iter_mut().skip(1) {
            sweep(data, &mut replay, rule)?;
            point.rms_p1 = rms_p1(&replay.pi, &state.pi);
        }
    } else {
        trace.push(TracePoint {
            sweep: sweeps,
            objective: objective.evaluate(data, &state)?,
            rms_p1: 0.0,
            max_delta_p1: None,
        });
    }

    Ok(FitResult {
        strengths: state,
        sweeps_used: sweeps,
        trace,
        terminated,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::likelihood::{gradient_residual, log_likelihood};
    use crate::model::{numbered_ids, Algorithm};

    fn data(n: usize, wins: &[(usize, usize, f64)], ties: &[(usize, usize, f64)]) -> ComparisonData {
        ComparisonData::from_indexed(numbered_ids(n), wins.to_vec(), ties.to_vec()).unwrap()
    }

    fn three_one() -> ComparisonData {
        data(2, &[(0, 1, 3.0), (1, 0, 1.0)], &[])
    }

    #[test]
    fn alpha_hand_values() {
        let d = three_one();
        assert_eq!(update_alpha(&d, &[1.0, 1.0], 0, 0.0).unwrap(), 3.0);
        assert_eq!(update_alpha(&d, &[1.0, 1.0], 0, 1.0).unwrap(), 1.5);
    }

    #[test]
    fn alpha_fixed_point_at_mle() {
        let d = three_one();
        let r = 3f64.sqrt();
        let pi = [r, 1.0 / r];
        for alpha in [0.0, 0.5, 1.0, 2.0] {
            for i in 0..2 {
                let v = update_alpha(&d, &pi, i, alpha).unwrap();
                assert!((v - pi[i]).abs() < 1e-14, "alpha {alpha} i {i}: {v}");
            }
        }
    }

    #[test]
    fn alpha_degenerate_players() {
        // p0 never loses, p1 never wins
        let d = data(2, &[(0, 1, 3.0)], &[]);
        assert!(matches!(
            update_alpha(&d, &[1.0, 1.0], 0, 0.0),
            Err(Error::DegenerateStrength { index: 0, .. })
        ));
        assert!(matches!(
            update_alpha(&d, &[1.0, 1.0], 1, 0.0),
            Err(Error::DegenerateStrength { index: 1, .. })
        ));
        assert!(matches!(
            update_alpha(&d, &[1.0, 1.0], 1, 1.0),
            Err(Error::DegenerateStrength { index: 1, .. })
        ));
        assert!(matches!(
            update_alpha(&three_one(), &[1.0, 1.0], 0, -1.0),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            update_alpha(&three_one(), &[1.0, -1.0], 0, 0.0),
            Err(Error::InvalidStrengths(_))
        ));
    }

    #[test]
    fn map_isolated_player() {
        let d = data(2, &[], &[]);
        for p in [0.01, 3.0, 250.0] {
            let v = update_map(&d, &[p, 1.0], 0, 0.0).unwrap();
            assert!((v - 1.0).abs() < 1e-15);
        }
        assert_eq!(update_map(&d, &[3.0, 1.0], 0, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn map_matches_written_rules() {
        let d = data(3, &[(0, 1, 2.0), (1, 2, 1.0), (2, 0, 4.0), (1, 0, 1.0)], &[]);
        let pi = [0.4, 1.3, 2.2];
        for i in 0..3 {
            let mut wn = 1.0 / (pi[i] + 1.0);
            let mut wd = 1.0 / (pi[i] + 1.0);
            let mut zn = 1.0;
            let mut zd = 2.0 / (pi[i] + 1.0);
            for j in 0..3 {
                if j == i {
                    continue;
                }
                let s = pi[i] + pi[j];
                wn += d.win(i, j) * pi[j] / s;
                wd += d.win(j, i) / s;
                zn += d.win(i, j);
                zd += (d.win(i, j) + d.win(j, i)) / s;
            }
            let newman = update_map(&d, &pi, i, 0.0).unwrap();
            let zermelo = update_map(&d, &pi, i, 1.0).unwrap();
            assert!((newman - wn / wd).abs() < 1e-14);
            assert!((zermelo - zn / zd).abs() < 1e-14);
        }
    }

    #[test]
    fn ties_hand_values() {
        let d = data(2, &[(0, 1, 1.0), (1, 0, 1.0)], &[(0, 1, 2.0)]);
        let pi = [1.0, 1.0];
        assert_eq!(update_ties_pi(&d, &pi, 1.0, 0, TiesVariant::NewmanTies).unwrap(), 1.0);
        assert_eq!(update_ties_pi(&d, &pi, 1.0, 0, TiesVariant::Davidson).unwrap(), 1.0);
        assert_eq!(update_ties_nu(&d, &pi, 1.0, TiesVariant::NewmanTies).unwrap(), 1.0);
        assert_eq!(update_ties_nu(&d, &pi, 1.0, TiesVariant::Davidson).unwrap(), 1.0);
    }

    #[test]
    fn ties_nu_fixed_point_is_tie_odds() {
        // evenly matched pair, tie fraction q = 1/4 -> ν = 1/3
        let d = data(2, &[(0, 1, 3.0), (1, 0, 3.0)], &[(0, 1, 2.0)]);
        for variant in [TiesVariant::Davidson, TiesVariant::NewmanTies] {
            let mut nu = 1.0;
            for _ in 0..200 {
                nu = update_ties_nu(&d, &[1.0, 1.0], nu, variant).unwrap();
            }
            assert!((nu - 1.0 / 3.0).abs() < 1e-12, "{variant:?}: {nu}");
        }
    }

    #[test]
    fn ties_nu_errors() {
        let all_tied = data(2, &[], &[(0, 1, 2.0)]);
        assert!(matches!(
            update_ties_nu(&all_tied, &[1.0, 1.0], 1.0, TiesVariant::NewmanTies),
            Err(Error::DegenerateNu(_))
        ));
        assert!(matches!(
            update_ties_nu(&three_one(), &[1.0, 1.0], 1.0, TiesVariant::Davidson),
            Err(Error::ModelMismatch(_))
        ));
    }

    #[test]
    fn one_sweep_reaches_two_player_mle() {
        let d = three_one();
        let mut s = Strengths::ones(2);
        sweep(&d, &mut s, UpdateRule::Alpha(0.0)).unwrap();
        let r = 3f64.sqrt();
        assert!((s.pi[0] - r).abs() < 1e-15);
        assert!((s.pi[1] - 1.0 / r).abs() < 1e-15);
    }

    #[test]
    fn sweep_at_fixed_point_is_identity() {
        let d = three_one();
        let r = 3f64.sqrt();
        for rule in [UpdateRule::Alpha(0.0), UpdateRule::Alpha(1.0), UpdateRule::Alpha(2.0)] {
            let mut s = Strengths::new(vec![r, 1.0 / r]);
            sweep(&d, &mut s, rule).unwrap();
            assert!((s.pi[0] - r).abs() < 1e-12 && (s.pi[1] - 1.0 / r).abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_does_not_decrease_likelihood() {
        let d = data(4, &[(0, 1, 2.0), (1, 2, 3.0), (2, 3, 1.0), (3, 0, 2.0), (2, 0, 1.0)], &[]);
        let mut s = Strengths::new(vec![0.2, 5.0, 1.0, 0.7]);
        let mut last = log_likelihood(&d, &s.pi).unwrap();
        for _ in 0..20 {
            sweep(&d, &mut s, UpdateRule::Alpha(0.5)).unwrap();
            let now = log_likelihood(&d, &s.pi).unwrap();
            assert!(now >= last - 1e-12 * last.abs());
            last = now;
        }
    }

    #[test]
    fn map_sweep_keeps_scale() {
        let d = data(2, &[(0, 1, 5.0)], &[]);
        let mut s = Strengths::new(vec![2.0, 2.0]);
        sweep(&d, &mut s, UpdateRule::MAP_NEWMAN).unwrap();
        let product: f64 = s.pi.iter().product();
        assert!((product - 1.0).abs() > 1e-6);
    }

    #[test]
    fn fit_two_player_newman() {
        let d = three_one();
        let res = fit(&d, &SolverSpec::mle(Algorithm::NEWMAN)).unwrap();
        let r = 3f64.sqrt();
        assert_eq!(res.terminated, Termination::Converged);
        assert_eq!(res.sweeps_used, 2);
        assert!((res.strengths.pi[0] - r).abs() < 1e-12);
        assert!((res.strengths.pi[1] - 1.0 / r).abs() < 1e-12);
        let p = res.strengths.p1();
        assert!((p[0] - 0.634).abs() < 1e-3 && (p[1] - 0.366).abs() < 1e-3);
        assert_eq!(res.trace.len(), 3);
        assert_eq!(res.trace[2].rms_p1, 0.0);
    }

    #[test]
    fn fit_symmetric_data_is_uniform() {
        let d = data(
            3,
            &[(0, 1, 2.0), (1, 0, 2.0), (1, 2, 3.0), (2, 1, 3.0), (0, 2, 1.0), (2, 0, 1.0)],
            &[],
        );
        let spec = SolverSpec::mle(Algorithm::ZERMELO).with_init(Init::Logistic { seed: 3 });
        let res = fit(&d, &spec).unwrap();
        for p in &res.strengths.pi {
            assert!((p - 1.0).abs() < 1e-8, "{p}");
        }
    }

    #[test]
    fn fit_rejects_unconnected_mle() {
        let d = data(2, &[(0, 1, 5.0)], &[]);
        assert!(matches!(
            fit(&d, &SolverSpec::mle(Algorithm::NEWMAN)),
            Err(Error::NotStronglyConnected { .. })
        ));
    }

    #[test]
    fn fit_flags_max_sweeps() {
        let d = data(3, &[(0, 1, 2.0), (1, 2, 3.0), (2, 0, 1.0), (1, 0, 1.0)], &[]);
        let spec = SolverSpec::mle(Algorithm::ZERMELO)
            .with_init(Init::Logistic { seed: 1 })
            .with_max_sweeps(2);
        let res = fit(&d, &spec).unwrap();
        assert_eq!(res.terminated, Termination::MaxSweeps);
        assert_eq!(res.sweeps_used, 2);
        assert_eq!(res.warnings.len(), 1);
    }

    #[test]
    fn fit_residuals_small_when_converged() {
        let d = data(4, &[(0, 1, 2.0), (1, 2, 3.0), (2, 3, 1.0), (3, 0, 2.0), (2, 0, 1.0)], &[]);
        for alpha in [0.0, 1.0] {
            let res = fit(&d, &SolverSpec::mle(Algorithm::alpha(alpha))).unwrap();
            for i in 0..4 {
                let g = gradient_residual(&d, &res.strengths.pi, i).unwrap();
                assert!(g.abs() < 1e-6 * (1.0 + d.wins_of(i)), "alpha {alpha} i {i}: {g}");
            }
        }
    }

    #[test]
    fn fit_ties_without_ties_warns() {
        let d = three_one();
        let res = fit(&d, &SolverSpec::ties(TiesModel::NewmanTies)).unwrap();
        assert_eq!(res.strengths.nu, Some(0.0));
        assert_eq!(res.warnings.len(), 1);
        let r = 3f64.sqrt();
        assert!((res.strengths.pi[0] - r).abs() < 1e-10);
    }

    #[test]
    fn half_win_matches_rewritten_data() {
        let d = data(3, &[(0, 1, 2.0), (1, 2, 1.0), (2, 0, 1.0)], &[(0, 2, 2.0), (0, 1, 1.0)]);
        let mut spec = SolverSpec::ties(TiesModel::HalfWin);
        spec.algorithm = Algorithm::NEWMAN;
        let a = fit(&d, &spec).unwrap();
        let b = fit(&d.with_half_wins(), &SolverSpec::mle(Algorithm::NEWMAN)).unwrap();
        assert_eq!(a.strengths.pi, b.strengths.pi);
    }

    #[test]
    fn fit_is_deterministic() {
        let d = data(4, &[(0, 1, 2.0), (1, 2, 3.0), (2, 3, 1.0), (3, 0, 2.0), (2, 0, 1.0)], &[]);
        let spec = SolverSpec::mle(Algorithm::alpha(0.5)).with_init(Init::Logistic { seed: 9 });
        assert_eq!(fit(&d, &spec).unwrap(), fit(&d, &spec).unwrap());
    }
}
