//! Bayesian causal induction for a pair of categorical variables.
//!
//! Exactly one of two orientations holds: X causes Y, or Y causes X.
//! Observational data alone cannot separate them, but interventions can.
//! This crate models the agent side with a Dirichlet–multinomial posterior
//! over the joint distribution ([`JointCounts`]) and quantifies, in bits:
//!
//! - [`expected_gain`] — how much evidence about the orientation an
//!   intervention is anticipated to produce *before* acting: half the
//!   Jeffrey divergence between the posterior-predictive response and the
//!   posterior-predictive marginal.
//! - [`realized_gain`] — how much evidence toward the *true* orientation the
//!   intervention produces on average once a ground-truth world
//!   ([`TrueWorld`]) answers it.
//!
//! Greedy selection of the intervention with the highest expected gain
//! ([`strategy`]) turns this into an active-learning loop; the
//! [`experiments`] module packages seeded Monte-Carlo runners around it.
//!
//! ```
//! use causalgain::{expected_gain, Intervention, JointCounts};
//!
//! let counts = JointCounts::from_rows(&[vec![9.0, 1.0], vec![1.0, 9.0]], 2.0)?;
//! let bits = expected_gain(&counts, Intervention::SetX(0));
//! assert!(bits > 0.0);
//! # Ok::<(), causalgain::Error>(())
//! ```

pub mod belief;
mod error;
pub mod experiments;
pub mod gain;
pub mod io;
pub mod joint;
pub mod rng;
pub mod strategy;
pub mod world;

pub use belief::{observational_gain, per_outcome_gain, posterior_h, Belief};
pub use error::{Error, Result};
pub use gain::{expected_gain, example1_closed_form, jeffrey_divergence, realized_gain, GainReport};
pub use joint::{Distribution, JointCounts};
pub use rng::Rng;
pub use strategy::{enumerate_interventions, gain_reports, select, Policy};
pub use world::{Intervention, Orientation, TrueWorld};

/// Single definition of the evidence unit: log-ratios in base 2, i.e. bits.
pub(crate) fn log2_ratio(p: f64, q: f64) -> f64 {
    (p / q).log2()
}
