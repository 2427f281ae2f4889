//! Intervention-selection policies over the full single-variable action set.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::gain::{expected_gain, realized_gain, GainReport};
use crate::joint::JointCounts;
use crate::rng::Rng;
use crate::world::{Intervention, TrueWorld};

/// How the next intervention is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    /// Highest expected gain; ties go to the first candidate in enumeration
    /// order.
    Greedy,
    /// Uniform draw over the action set.
    Random,
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Greedy => write!(f, "greedy"),
            Policy::Random => write!(f, "random"),
        }
    }
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "greedy" => Ok(Policy::Greedy),
            "random" => Ok(Policy::Random),
            other => Err(format!("unknown policy '{other}', expected greedy or random")),
        }
    }
}

/// All `K_X + K_Y` single-variable interventions in a fixed order:
/// `do(X=1) .. do(X=K_X)`, then `do(Y=1) .. do(Y=K_Y)`.
pub fn enumerate_interventions(k_x: usize, k_y: usize) -> Vec<Intervention> {
    assert!(k_x >= 2 && k_y >= 2, "need at least 2 categories per variable");
    (0..k_x)
        .map(Intervention::SetX)
        .chain((0..k_y).map(Intervention::SetY))
        .collect()
}

/// First index holding the maximum; `None` only for an empty slice.
fn argmax_first(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

/// Choose the next intervention. Greedy ignores the rng and is fully
/// determined by the counts; Random ignores the counts beyond their shape.
pub fn select(policy: Policy, c: &JointCounts, rng: &mut Rng) -> Intervention {
    let actions = enumerate_interventions(c.k_x(), c.k_y());
    match policy {
        Policy::Greedy => {
            let gains: Vec<f64> = actions.iter().map(|&iv| expected_gain(c, iv)).collect();
            actions[argmax_first(&gains).expect("nonempty action set")]
        }
        Policy::Random => actions[rng.below(actions.len())],
    }
}

/// Expected (and, with a ground truth, realized) gain for every intervention
/// in enumeration order.
///
/// # Panics
/// Panics if `world` is given and disagrees with the counts on category
/// sizes.
pub fn gain_reports(c: &JointCounts, world: Option<&TrueWorld>) -> Vec<GainReport> {
    enumerate_interventions(c.k_x(), c.k_y())
        .into_iter()
        .map(|iv| GainReport {
            intervention: iv,
            expected_bits: expected_gain(c, iv),
            realized_bits: world.map(|w| realized_gain(c, w, iv)),
        })
        .collect()
}
