//! Objective functions: log-likelihood, log-posterior under the logistic
//! prior, and the Davidson ties log-likelihood, with the likelihood gradient.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_strengths, ComparisonData, Mode, SolverSpec, Strengths, TiesModel};

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Accumulator {
    sum: f64,
    carry: f64,
}

impl Accumulator {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(self) -> f64 {
        self.sum + self.carry
    }
}

/// Σ_ij w_ij [ln π_i − ln(π_i+π_j)].
pub fn log_likelihood(data: &ComparisonData, pi: &[f64]) -> Result<f64> {
    check_len(data, pi)?;
    check_strengths(pi)?;
    let mut acc = Accumulator::default();
    for (i, j, w) in data.wins() {
        acc.add(w * (pi[i].ln() - (pi[i] + pi[j]).ln()));
    }
    Ok(acc.total())
}

/// ∂(log-likelihood)/∂π_i = (1/π_i) Σ_j w_ij − Σ_j (w_ij + w_ji)/(π_i + π_j).
pub fn gradient_residual(data: &ComparisonData, pi: &[f64], i: usize) -> Result<f64> {
    check_len(data, pi)?;
    check_strengths(pi)?;
    let mut won = 0.0;
    let mut played = 0.0;
    for p in data.pairings(i) {
        won += p.won;
        played += (p.won + p.lost) / (pi[i] + pi[p.opponent]);
    }
    Ok(won / pi[i] - played)
}

/// Log-likelihood plus the logistic log-prior Σ_i [ln π_i − 2 ln(π_i + 1)].
pub fn log_posterior(data: &ComparisonData, pi: &[f64]) -> Result<f64> {
    let ll = log_likelihood(data, pi)?;
    let mut acc = Accumulator::default();
    acc.add(ll);
    for &p in pi {
        acc.add(p.ln() - 2.0 * (p + 1.0).ln());
    }
    Ok(acc.total())
}

/// ∂(log-posterior)/∂π_i.
pub fn posterior_gradient(data: &ComparisonData, pi: &[f64], i: usize) -> Result<f64> {
    Ok(gradient_residual(data, pi, i)? + 1.0 / pi[i] - 2.0 / (pi[i] + 1.0))
}

/// Davidson ties log-likelihood with a_ij = w_ij + ½t_ij, summed over
/// ordered pairs:
/// Σ a_ij ln π_i + ½ ln(2ν) Σ t_ij − Σ a_ij ln(π_i + π_j + 2ν√(π_iπ_j)).
pub fn log_likelihood_ties(data: &ComparisonData, pi: &[f64], nu: f64) -> Result<f64> {
    check_len(data, pi)?;
    check_strengths(pi)?;
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(Error::InvalidStrengths(format!(
            "tie parameter must be positive and finite, got {nu}"
        )));
    }
    let mut acc = Accumulator::default();
    let mut ties_ordered = 0.0;
    for i in 0..data.n_players() {
        for p in data.pairings(i) {
            let a = p.won + 0.5 * p.tied;
            if a == 0.0 {
                continue;
            }
            let j = p.opponent;
            let denom = pi[i] + pi[j] + 2.0 * nu * (pi[i] * pi[j]).sqrt();
            acc.add(a * (pi[i].ln() - denom.ln()));
            ties_ordered += p.tied;
        }
    }
    if ties_ordered > 0.0 {
        acc.add(0.5 * (2.0 * nu).ln() * ties_ordered);
    }
    Ok(acc.total())
}

/// ∂(ties log-likelihood)/∂ν; zero at the ν-stationary point.
pub fn nu_gradient(data: &ComparisonData, pi: &[f64], nu: f64) -> Result<f64> {
    check_len(data, pi)?;
    check_strengths(pi)?;
    let mut ties_ordered = 0.0;
    let mut rhs = Accumulator::default();
    for i in 0..data.n_players() {
        for p in data.pairings(i) {
            let j = p.opponent;
            let root = (pi[i] * pi[j]).sqrt();
            let denom = pi[i] + pi[j] + 2.0 * nu * root;
            ties_ordered += p.tied;
            rhs.add((p.won + 0.5 * p.tied) * 2.0 * root / denom);
        }
    }
    Ok(ties_ordered / (2.0 * nu) - rhs.total())
}

/// Which function a fit ascends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    Likelihood,
    Posterior,
    TiesLikelihood,
}

impl Objective {
    pub fn for_spec(spec: &SolverSpec) -> Self {
        if spec.ties.estimates_nu() {
            Objective::TiesLikelihood
        } else if spec.mode == Mode::Map {
            Objective::Posterior
        } else {
            Objective::Likelihood
        }
    }

    /// Evaluates against `data` as the solver sees it (half-win data already
    /// rewritten). The ties objective needs `strengths.nu`.
    pub fn evaluate(self, data: &ComparisonData, strengths: &Strengths) -> Result<f64> {
        match self {
            Objective::Likelihood => log_likelihood(data, &strengths.pi),
            Objective::Posterior => log_posterior(data, &strengths.pi),
            Objective::TiesLikelihood => {
                let nu = strengths.nu.ok_or_else(|| {
                    Error::InvalidStrengths("ties objective needs a tie parameter".into())
                })?;
                if nu == 0.0 && !data.has_ties() {
                    log_likelihood(data, &strengths.pi)
                } else {
                    log_likelihood_ties(data, &strengths.pi, nu)
                }
            }
        }
    }
}

impl From<TiesModel> for Objective {
    fn from(t: TiesModel) -> Self {
        if t.estimates_nu() {
            Objective::TiesLikelihood
        } else {
            Objective::Likelihood
        }
    }
}

fn check_len(data: &ComparisonData, pi: &[f64]) -> Result<()> {
    if pi.len() != data.n_players() {
        return Err(Error::LengthMismatch(pi.len(), data.n_players()));
    }
    Ok(())
}
