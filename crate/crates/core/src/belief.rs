//! The agent's posterior over the causal orientation, tracked as log-odds.
//!
//! The agent starts uninformed (both orientations at probability 1/2) and
//! updates only on interventional outcomes: after `do(X=x)` yields `y`, the
//! likelihood of `y` is `Q(y|x)` if X is the cause and `Q(y)` otherwise, so
//! the posterior odds shift by their ratio. Tracking evidence in bits of
//! log-odds turns sequential Bayes updates into addition.

use crate::joint::JointCounts;
use crate::log2_ratio;
use crate::world::Intervention;

/// Accumulated evidence for the X-causes-Y orientation over the reverse, in
/// bits of log-odds. Zero is the uninformed prior.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Belief {
    pub log_odds_bits: f64,
}

impl Belief {
    /// Uninformed prior: both orientations at 1/2.
    pub fn new() -> Self {
        Self::default()
    }

    /// Fold in the per-outcome gain of one intervention.
    ///
    /// `gain_bits` is evidence that the *intervened* variable is the cause,
    /// so it enters positively for X-interventions and negatively for
    /// Y-interventions.
    pub fn accumulate(self, iv: Intervention, gain_bits: f64) -> Self {
        let signed = if iv.targets_x() { gain_bits } else { -gain_bits };
        Self {
            log_odds_bits: self.log_odds_bits + signed,
        }
    }
}

/// Posterior probability that the intervened variable is the cause, after an
/// intervention produced an outcome with likelihood `p_y_given_x` under that
/// hypothesis and `p_y` under the alternative:
///
/// ```text
/// P(h | x̂, y) = P(y|x) P(h) / [P(y|x) P(h) + P(y) P(¬h)]
/// ```
///
/// # Panics
/// Panics unless `p_y_given_x` and `p_y` are in `(0, 1]` and `prior_h` is in
/// `(0, 1)`; those bounds keep the denominator nonzero.
pub fn posterior_h(prior_h: f64, p_y_given_x: f64, p_y: f64) -> f64 {
    assert!(
        prior_h > 0.0 && prior_h < 1.0,
        "prior_h must be in (0,1), got {prior_h}"
    );
    assert!(
        p_y_given_x > 0.0 && p_y_given_x <= 1.0,
        "p_y_given_x must be in (0,1], got {p_y_given_x}"
    );
    assert!(p_y > 0.0 && p_y <= 1.0, "p_y must be in (0,1], got {p_y}");
    let favored = p_y_given_x * prior_h;
    favored / (favored + p_y * (1.0 - prior_h))
}

/// Evidence, in bits, that the intervened variable is the cause, given that
/// the intervention produced `outcome` on the other variable:
/// `I = log2( Q(outcome | value) / Q(outcome) )`, with both terms from the
/// smoothed posterior predictive.
///
/// # Panics
/// Panics if the intervention value or the outcome is out of range.
pub fn per_outcome_gain(c: &JointCounts, iv: Intervention, outcome: usize) -> f64 {
    let (conditional, marginal) = match iv {
        Intervention::SetX(x) => (c.conditional_given_x(x), c.marginal_y()),
        Intervention::SetY(y) => (c.conditional_given_y(y), c.marginal_x()),
    };
    log2_ratio(conditional[outcome], marginal[outcome])
}

/// Log-odds change from a purely *observational* pair `(x, y)`.
///
/// The joint is specified without reference to the orientation, so the
/// likelihood of an observed pair is the same posterior-predictive value
/// under both hypotheses and the ratio is 1: observations never move the
/// belief. Returned as the (identically zero) log-ratio so that streams of
/// observations and interventions can share one update loop.
pub fn observational_gain(c: &JointCounts, x: usize, y: usize) -> f64 {
    let q = c.posterior_joint()[x * c.k_y() + y];
    log2_ratio(q, q)
}
