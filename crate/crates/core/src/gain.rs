//! The two headline quantities: the information gain an intervention is
//! *expected* to deliver before acting, and the gain toward the true
//! orientation it *realizes* on average once the world answers.
//!
//! Both are defined through the per-outcome evidence
//! `I(v̂ | out) = log2(Q(out|v) / Q(out))`. Averaging `I` over the agent's
//! own predictive produces half the Jeffrey divergence between the
//! predictive conditional and marginal ([`expected_gain`]); averaging the
//! evidence *toward the truth* over the true outcome law and a uniform prior
//! on the orientation produces [`realized_gain`]. Expected gain is never
//! negative; realized gain can be, when the data mislead the agent.
//!
//! Both quantities are reported in bits, on a common scale, so they can be
//! plotted against each other.

use crate::belief::per_outcome_gain;
use crate::joint::{Distribution, JointCounts};
use crate::log2_ratio;
use crate::world::{Intervention, TrueWorld};

/// Expected and (when a ground truth is available) realized gain of one
/// intervention, in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainReport {
    pub intervention: Intervention,
    pub expected_bits: f64,
    pub realized_bits: Option<f64>,
}

/// Jeffrey divergence in bits: `D_J(p, q) = sum_i (p_i - q_i) log2(p_i / q_i)`.
///
/// Symmetric in its arguments and nonnegative; every term is a product of two
/// factors with the same sign.
///
/// # Panics
/// Panics if the lengths differ or any entry of either distribution is zero;
/// callers must pass smoothed (strictly positive) distributions.
pub fn jeffrey_divergence(p: &Distribution, q: &Distribution) -> f64 {
    assert_eq!(p.len(), q.len(), "distributions must have equal length");
    p.iter()
        .zip(q.iter())
        .map(|(&pi, &qi)| {
            assert!(
                pi > 0.0 && qi > 0.0,
                "Jeffrey divergence needs strictly positive entries, got ({pi}, {qi})"
            );
            (pi - qi) * log2_ratio(pi, qi)
        })
        .sum()
}

/// Information gain, in bits, the agent anticipates from an intervention:
/// half the Jeffrey divergence between the posterior-predictive response to
/// the intervention and the posterior-predictive marginal of the outcome
/// variable. Always nonnegative; zero iff the predictive conditional equals
/// the marginal.
///
/// The 1/2 factor puts the anticipated value on the same scale as
/// [`realized_gain`], which averages over the two equally likely
/// orientations. Selection by argmax is unaffected by the constant.
pub fn expected_gain(c: &JointCounts, iv: Intervention) -> f64 {
    let (conditional, marginal) = match iv {
        Intervention::SetX(x) => (c.conditional_given_x(x), c.marginal_y()),
        Intervention::SetY(y) => (c.conditional_given_y(y), c.marginal_x()),
    };
    0.5 * jeffrey_divergence(&conditional, &marginal)
}

/// Information gain, in bits, toward the *true* orientation that the
/// intervention yields on average, with the orientation itself treated as a
/// fair coin:
///
/// ```text
/// realized(do(V=v)) = 1/2 * sum_out [P(out|v) - P(out)] * I(v̂ | out)
/// ```
///
/// where `P` comes from the true world and `I` from the agent's posterior
/// predictive. Signed: negative when the data steer the agent away from the
/// truth.
///
/// # Panics
/// Panics if the world and counts disagree on category sizes.
pub fn realized_gain(c: &JointCounts, w: &TrueWorld, iv: Intervention) -> f64 {
    assert!(
        w.matches(c),
        "world is {}x{} but counts are {}x{}",
        w.k_x(),
        w.k_y(),
        c.k_x(),
        c.k_y()
    );
    let (true_cond, true_marg) = match iv {
        Intervention::SetX(x) => (w.conditional_given_x(x), w.marginal_y()),
        Intervention::SetY(y) => (w.conditional_given_y(y), w.marginal_x()),
    };
    0.5 * (0..true_cond.len())
        .map(|out| (true_cond[out] - true_marg[out]) * per_outcome_gain(c, iv, out))
        .sum::<f64>()
}

/// Closed-form realized gain for the idealized correlated binary pair: true
/// joint `[[rho/2, (1-rho)/2], [(1-rho)/2, rho/2]]` with mean-field counts
/// `n = N * P`:
///
/// ```text
/// 1/2 * (rho - 1/2) * log2( (N rho + 2 alpha) / (N (1 - rho) + 2 alpha) )
/// ```
///
/// Uncorrelated (`rho = 1/2`) gives exactly 0; deterministic (`rho = 1`)
/// gives `1/4 * log2((N + 2 alpha) / (2 alpha))`, growing with `N`.
pub fn example1_closed_form(rho: f64, n_total: f64, alpha: f64) -> f64 {
    assert!((0.0..=1.0).contains(&rho), "rho must be in [0,1], got {rho}");
    assert!(n_total >= 0.0, "n_total must be nonnegative, got {n_total}");
    assert!(alpha > 0.0, "alpha must be positive, got {alpha}");
    let ratio = (n_total * rho + 2.0 * alpha) / (n_total * (1.0 - rho) + 2.0 * alpha);
    0.5 * (rho - 0.5) * ratio.log2()
}
