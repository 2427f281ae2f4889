//! Simulator-side ground truth: the true joint `P(X, Y)`, the true causal
//! orientation, observational sampling, and intervention execution.
//!
//! An intervention clamps one variable. If it clamps the cause, the effect
//! responds through the true conditional; if it clamps the effect, the
//! mechanism into it is severed and the other variable keeps its marginal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::joint::{Distribution, JointCounts};
use crate::rng::Rng;

/// The true causal orientation: which variable drives the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "XtoY")]
    XToY,
    #[serde(rename = "YtoX")]
    YToX,
}

/// A do-action: clamp one variable to a value (0-based index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Intervention {
    SetX(usize),
    SetY(usize),
}

impl Intervention {
    pub fn targets_x(self) -> bool {
        matches!(self, Intervention::SetX(_))
    }

    pub fn value(self) -> usize {
        match self {
            Intervention::SetX(v) | Intervention::SetY(v) => v,
        }
    }
}

impl fmt::Display for Intervention {
    /// Human-facing form with 1-based category labels, e.g. `do(X=1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Intervention::SetX(v) => write!(f, "do(X={})", v + 1),
            Intervention::SetY(v) => write!(f, "do(Y={})", v + 1),
        }
    }
}

/// Hidden ground truth: a normalized joint over `(X, Y)` plus the true
/// orientation. Both marginals must be strictly positive so conditionals are
/// defined for every value.
#[derive(Debug, Clone, PartialEq)]
pub struct TrueWorld {
    joint: Vec<f64>, // row-major, k_x * k_y
    k_x: usize,
    k_y: usize,
    orientation: Orientation,
}

impl TrueWorld {
    pub fn new(rows: &[Vec<f64>], orientation: Orientation) -> Result<Self> {
        let k_x = rows.len();
        let k_y = rows.first().map_or(0, Vec::len);
        if k_x < 2 || k_y < 2 {
            return Err(Error::CategoryCount { k_x, k_y });
        }
        let mut joint = Vec::with_capacity(k_x * k_y);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != k_y {
                return Err(Error::ShapeMismatch {
                    k_x,
                    k_y,
                    got: row.len() * k_x,
                });
            }
            for (y, &p) in row.iter().enumerate() {
                if !p.is_finite() || p < 0.0 {
                    return Err(Error::InvalidEntry { x, y, value: p });
                }
                joint.push(p);
            }
        }
        Self::from_flat(joint, k_x, k_y, orientation)
    }

    pub fn from_flat(
        joint: Vec<f64>,
        k_x: usize,
        k_y: usize,
        orientation: Orientation,
    ) -> Result<Self> {
        if k_x < 2 || k_y < 2 {
            return Err(Error::CategoryCount { k_x, k_y });
        }
        if joint.len() != k_x * k_y {
            return Err(Error::ShapeMismatch {
                k_x,
                k_y,
                got: joint.len(),
            });
        }
        for (i, &p) in joint.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidEntry {
                    x: i / k_y,
                    y: i % k_y,
                    value: p,
                });
            }
        }
        let total: f64 = joint.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized(total));
        }
        let w = Self {
            joint,
            k_x,
            k_y,
            orientation,
        };
        for x in 0..k_x {
            if w.row_sum(x) <= 0.0 {
                return Err(Error::ZeroMarginal { axis: 'x', index: x });
            }
        }
        for y in 0..k_y {
            if w.col_sum(y) <= 0.0 {
                return Err(Error::ZeroMarginal { axis: 'y', index: y });
            }
        }
        Ok(w)
    }

    pub fn k_x(&self) -> usize {
        self.k_x
    }

    pub fn k_y(&self) -> usize {
        self.k_y
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Row-major view of the joint.
    pub fn joint(&self) -> &[f64] {
        &self.joint
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.joint[x * self.k_y + y]
    }

    /// True when the counts describe the same category sizes as this world.
    pub fn matches(&self, counts: &JointCounts) -> bool {
        self.k_x == counts.k_x() && self.k_y == counts.k_y()
    }

    fn row_sum(&self, x: usize) -> f64 {
        self.joint[x * self.k_y..(x + 1) * self.k_y].iter().sum()
    }

    fn col_sum(&self, y: usize) -> f64 {
        (0..self.k_x).map(|x| self.prob(x, y)).sum()
    }

    /// True conditional `P(y | x)`.
    pub fn conditional_given_x(&self, x: usize) -> Distribution {
        assert!(x < self.k_x, "x index {x} out of range for {}", self.k_x);
        let denom = self.row_sum(x);
        let probs = (0..self.k_y).map(|y| self.prob(x, y) / denom).collect();
        Distribution::new(probs).expect("normalized row")
    }

    /// True conditional `P(x | y)`.
    pub fn conditional_given_y(&self, y: usize) -> Distribution {
        assert!(y < self.k_y, "y index {y} out of range for {}", self.k_y);
        let denom = self.col_sum(y);
        let probs = (0..self.k_x).map(|x| self.prob(x, y) / denom).collect();
        Distribution::new(probs).expect("normalized column")
    }

    /// True marginal `P(x)`.
    pub fn marginal_x(&self) -> Distribution {
        let probs = (0..self.k_x).map(|x| self.row_sum(x)).collect();
        Distribution::new(probs).expect("normalized joint")
    }

    /// True marginal `P(y)`.
    pub fn marginal_y(&self) -> Distribution {
        let probs = (0..self.k_y).map(|y| self.col_sum(y)).collect();
        Distribution::new(probs).expect("normalized joint")
    }

    /// Distribution of the non-clamped variable after an intervention.
    ///
    /// Clamping the cause propagates through the true conditional; clamping
    /// the effect severs the mechanism, so the other variable keeps its
    /// marginal.
    ///
    /// # Panics
    /// Panics if the intervention value is out of range.
    pub fn true_response(&self, iv: Intervention) -> Distribution {
        match (iv, self.orientation) {
            (Intervention::SetX(x), Orientation::XToY) => self.conditional_given_x(x),
            (Intervention::SetX(x), Orientation::YToX) => {
                assert!(x < self.k_x, "x index {x} out of range for {}", self.k_x);
                self.marginal_y()
            }
            (Intervention::SetY(y), Orientation::YToX) => self.conditional_given_y(y),
            (Intervention::SetY(y), Orientation::XToY) => {
                assert!(y < self.k_y, "y index {y} out of range for {}", self.k_y);
                self.marginal_x()
            }
        }
    }

    /// Perform the intervention once and observe the other variable.
    pub fn intervene(&self, iv: Intervention, rng: &mut Rng) -> usize {
        self.true_response(iv).sample(rng)
    }

    /// Draw `n` joint observations (a multinomial count matrix, accumulated
    /// from `n` independent categorical draws) and package them with the
    /// given Dirichlet concentration.
    pub fn sample_observations(&self, n: u64, alpha: f64, rng: &mut Rng) -> Result<JointCounts> {
        let mut counts = JointCounts::new(self.k_x, self.k_y, alpha)?;
        // Cumulative joint once; each draw is a binary search.
        let mut cdf = Vec::with_capacity(self.joint.len());
        let mut acc = 0.0;
        for &p in &self.joint {
            acc += p;
            cdf.push(acc);
        }
        for _ in 0..n {
            let u = rng.uniform();
            let idx = cdf.partition_point(|&c| c <= u).min(cdf.len() - 1);
            counts.add_observation(idx / self.k_y, idx % self.k_y)?;
        }
        Ok(counts)
    }
}
