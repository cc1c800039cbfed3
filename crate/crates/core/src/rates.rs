//! Local convergence rates of the α-family at a fitted maximum.
//!
//! λ_i(α) is the derivative of the single-coordinate update map with respect
//! to its own coordinate at π̂. Errors in π_i shrink by that factor per update
//! near the solution, and the slowest player sets the asymptotic RMS decay.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::likelihood::gradient_residual;
use crate::model::ComparisonData;
use crate::solvers::update_alpha;

/// Relative step of the central differences.
pub const FD_STEP: f64 = 1e-6;

/// Scaled gradient residual π̂_i |∂L/∂π_i| / Σ_j w_ij must stay below this.
pub const CONVERGED_RESIDUAL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub alpha: f64,
    pub lambda_i: Vec<f64>,
    pub lambda_max: f64,
    pub at: Vec<f64>,
}

fn check_converged(data: &ComparisonData, pi_hat: &[f64]) -> Result<()> {
    for i in 0..data.n_players() {
        let g = gradient_residual(data, pi_hat, i)?;
        let scale = data.wins_of(i).max(f64::MIN_POSITIVE);
        let r = (g * pi_hat[i]).abs() / scale;
        if !(r < CONVERGED_RESIDUAL) {
            return Err(Error::NotConverged(format!(
                "scaled gradient residual {r:e} for player `{}`",
                data.ids()[i]
            )));
        }
    }
    Ok(())
}

fn lambda_unchecked(data: &ComparisonData, pi_hat: &[f64], i: usize, alpha: f64) -> Result<f64> {
    let h = FD_STEP * pi_hat[i];
    let mut probe = pi_hat.to_vec();
    probe[i] = pi_hat[i] + h;
    let up = update_alpha(data, &probe, i, alpha)?;
    probe[i] = pi_hat[i] - h;
    let down = update_alpha(data, &probe, i, alpha)?;
    Ok((up - down) / (2.0 * h))
}

/// λ_i(α) by central difference of the α-family update in π_i.
pub fn convergence_factor(data: &ComparisonData, pi_hat: &[f64], i: usize, alpha: f64) -> Result<f64> {
    check_converged(data, pi_hat)?;
    lambda_unchecked(data, pi_hat, i, alpha)
}

/// Closed form for Zermelo's update:
/// λ_i(1) = (1/Σ_j w_ij) Σ_j (w_ij + w_ji) (π̂_i/(π̂_i + π̂_j))².
pub fn zermelo_factor(data: &ComparisonData, pi_hat: &[f64], i: usize) -> f64 {
    let mut won = 0.0;
    let mut acc = 0.0;
    for p in data.pairings(i) {
        let share = pi_hat[i] / (pi_hat[i] + pi_hat[p.opponent]);
        won += p.won;
        acc += (p.won + p.lost) * share * share;
    }
    acc / won
}

/// λ_max(α) = max_i |λ_i(α)|.
pub fn convergence_factor_max(data: &ComparisonData, pi_hat: &[f64], alpha: f64) -> Result<f64> {
    Ok(rate_report(data, pi_hat, alpha)?.lambda_max)
}

pub fn rate_report(data: &ComparisonData, pi_hat: &[f64], alpha: f64) -> Result<RateReport> {
    check_converged(data, pi_hat)?;
    let lambda_i = (0..data.n_players())
        .map(|i| lambda_unchecked(data, pi_hat, i, alpha))
        .collect::<Result<Vec<_>>>()?;
    let lambda_max = lambda_i.iter().map(|l| l.abs()).fold(0.0, f64::max);
    Ok(RateReport {
        alpha,
        lambda_i,
        lambda_max,
        at: pi_hat.to_vec(),
    })
}

/// ∂λ_i/∂α = [Σ_j w_ij/(π̂_i+π̂_j) / Σ_j (αw_ij + w_ji)/(π̂_i+π̂_j)] (1 − λ_i(α)).
pub fn dlambda_dalpha(data: &ComparisonData, pi_hat: &[f64], i: usize, alpha: f64) -> Result<f64> {
    let lambda = convergence_factor(data, pi_hat, i, alpha)?;
    let mut won = 0.0;
    let mut den = 0.0;
    for p in data.pairings(i) {
        let sum = pi_hat[i] + pi_hat[p.opponent];
        won += p.won / sum;
        den += (alpha * p.won + p.lost) / sum;
    }
    Ok(won / den * (1.0 - lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::numbered_ids;

    fn three_one() -> (ComparisonData, Vec<f64>) {
        let d = ComparisonData::from_indexed(numbered_ids(2), [(0, 1, 3.0), (1, 0, 1.0)], []).unwrap();
        let r = 3f64.sqrt();
        (d, vec![r, 1.0 / r])
    }

    #[test]
    fn two_player_zermelo_factors() {
        let (d, pi) = three_one();
        let l1 = convergence_factor(&d, &pi, 0, 1.0).unwrap();
        let l2 = convergence_factor(&d, &pi, 1, 1.0).unwrap();
        assert!((l1 - 0.75).abs() < 1e-8, "{l1}");
        assert!((l2 - 0.25).abs() < 1e-8, "{l2}");
        assert!((zermelo_factor(&d, &pi, 0) - 0.75).abs() < 1e-15);
        assert!((zermelo_factor(&d, &pi, 1) - 0.25).abs() < 1e-15);
        assert!((convergence_factor_max(&d, &pi, 1.0).unwrap() - 0.75).abs() < 1e-8);
    }

    #[test]
    fn two_player_newman_factors_vanish() {
        let (d, pi) = three_one();
        for i in 0..2 {
            assert!(convergence_factor(&d, &pi, i, 0.0).unwrap().abs() < 1e-9);
        }
        assert!(convergence_factor_max(&d, &pi, 0.0).unwrap() < 1e-9);
    }

    #[test]
    fn two_player_slope() {
        let (d, pi) = three_one();
        let v = dlambda_dalpha(&d, &pi, 0, 1.0).unwrap();
        assert!((v - 3.0 / 16.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn rejects_unconverged_point() {
        let (d, _) = three_one();
        assert!(matches!(
            convergence_factor(&d, &[1.0, 1.0], 0, 1.0),
            Err(Error::NotConverged(_))
        ));
    }
}
