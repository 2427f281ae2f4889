//! Dirichlet–multinomial posterior over the joint distribution of two
//! categorical variables.
//!
//! The agent's data is a `K_X x K_Y` matrix of observation counts `n_xy` with
//! a symmetric Dirichlet prior of concentration `alpha` over the joint. The
//! smoothed posterior predictive is
//!
//! ```text
//! Q(x, y) = (n_xy + alpha) / (N + K_X * K_Y * alpha)
//! ```
//!
//! and every quantity the agent reasons with (conditionals, marginals) is a
//! marginal or conditional of this joint. Because `alpha > 0`, all returned
//! distributions are strictly positive, so log-ratios downstream are finite.
//!
//! Counts are real-valued: idealized "mean-field" count matrices equal to
//! `N * P` for a true joint `P` need fractional cells.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::rng::Rng;

/// A probability vector over a finite outcome set.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validates entries: nonnegative, finite, summing to 1 within `1e-9`.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidDistribution(format!(
                "need at least 2 outcomes, got {}",
                probs.len()
            )));
        }
        for (i, &p) in probs.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                return Err(Error::InvalidDistribution(format!(
                    "entry {i} is {p}, must be nonnegative and finite"
                )));
            }
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}, must sum to 1"
            )));
        }
        Ok(Self { probs })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.probs.iter()
    }

    /// Inverse-CDF draw. Zero-probability outcomes are never returned.
    pub fn sample(&self, rng: &mut Rng) -> usize {
        let u = rng.uniform();
        let mut acc = 0.0;
        for (i, &p) in self.probs.iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        // u fell into the rounding slack past the last cumulative sum.
        self.probs.len() - 1
    }
}

impl Index<usize> for Distribution {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.probs[i]
    }
}

/// Observation counts for a pair of categorical variables plus the symmetric
/// Dirichlet concentration `alpha`. All posterior-predictive queries live
/// here.
///
/// Indices are 0-based; `x` selects a row, `y` a column.
#[derive(Debug, Clone, PartialEq)]
pub struct JointCounts {
    counts: Vec<f64>, // row-major, k_x * k_y
    k_x: usize,
    k_y: usize,
    alpha: f64,
}

fn check_dims(k_x: usize, k_y: usize) -> Result<()> {
    if k_x < 2 || k_y < 2 {
        return Err(Error::CategoryCount { k_x, k_y });
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    Ok(())
}

impl JointCounts {
    /// All-zero count matrix.
    pub fn new(k_x: usize, k_y: usize, alpha: f64) -> Result<Self> {
        check_dims(k_x, k_y)?;
        check_alpha(alpha)?;
        Ok(Self {
            counts: vec![0.0; k_x * k_y],
            k_x,
            k_y,
            alpha,
        })
    }

    /// Build from explicit rows. Rows must be rectangular and at least 2x2;
    /// cells must be nonnegative and finite.
    pub fn from_rows(rows: &[Vec<f64>], alpha: f64) -> Result<Self> {
        let k_x = rows.len();
        let k_y = rows.first().map_or(0, Vec::len);
        check_dims(k_x, k_y)?;
        check_alpha(alpha)?;
        let mut counts = Vec::with_capacity(k_x * k_y);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != k_y {
                return Err(Error::ShapeMismatch {
                    k_x,
                    k_y,
                    got: row.len() * k_x,
                });
            }
            for (y, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidEntry { x, y, value: v });
                }
                counts.push(v);
            }
        }
        Ok(Self {
            counts,
            k_x,
            k_y,
            alpha,
        })
    }

    /// Idealized counts `n_xy = n_total * p_xy` for a normalized joint `p`
    /// given in row-major order. Rejects `p` whose entries do not sum to 1
    /// within `1e-9`.
    pub fn mean_field(
        joint: &[f64],
        k_x: usize,
        k_y: usize,
        n_total: f64,
        alpha: f64,
    ) -> Result<Self> {
        check_dims(k_x, k_y)?;
        check_alpha(alpha)?;
        if !n_total.is_finite() || n_total < 0.0 {
            return Err(Error::InvalidTotal(n_total));
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
        Ok(Self {
            counts: joint.iter().map(|&p| n_total * p).collect(),
            k_x,
            k_y,
            alpha,
        })
    }

    /// Same counts under a different concentration.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self {
            alpha,
            ..self.clone()
        })
    }

    /// Record one joint observation `(x, y)`.
    pub fn add_observation(&mut self, x: usize, y: usize) -> Result<()> {
        if x >= self.k_x {
            return Err(Error::IndexOutOfRange {
                axis: 'x',
                index: x,
                size: self.k_x,
            });
        }
        if y >= self.k_y {
            return Err(Error::IndexOutOfRange {
                axis: 'y',
                index: y,
                size: self.k_y,
            });
        }
        self.counts[x * self.k_y + y] += 1.0;
        Ok(())
    }

    pub fn k_x(&self) -> usize {
        self.k_x
    }

    pub fn k_y(&self) -> usize {
        self.k_y
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn count(&self, x: usize, y: usize) -> f64 {
        self.counts[x * self.k_y + y]
    }

    /// Row-major view of the count matrix.
    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    /// Total observation count `N`.
    pub fn total(&self) -> f64 {
        self.counts.iter().sum()
    }

    /// Counts with the roles of the two variables swapped.
    pub fn transposed(&self) -> Self {
        let mut counts = vec![0.0; self.counts.len()];
        for x in 0..self.k_x {
            for y in 0..self.k_y {
                counts[y * self.k_x + x] = self.counts[x * self.k_y + y];
            }
        }
        Self {
            counts,
            k_x: self.k_y,
            k_y: self.k_x,
            alpha: self.alpha,
        }
    }

    /// Posterior predictive over all `(x, y)` cells, row-major:
    /// `Q(x,y) = (n_xy + alpha) / (N + K_X K_Y alpha)`.
    pub fn posterior_joint(&self) -> Distribution {
        let denom = self.total() + (self.k_x * self.k_y) as f64 * self.alpha;
        let probs = self.counts.iter().map(|&n| (n + self.alpha) / denom);
        Distribution::new(probs.collect()).expect("smoothed joint is normalized")
    }

    /// Posterior predictive `Q(y | x) = (n_xy + alpha) / (sum_y n_xy + K_Y alpha)`.
    ///
    /// # Panics
    /// Panics if `x` is out of range.
    pub fn conditional_given_x(&self, x: usize) -> Distribution {
        assert!(x < self.k_x, "x index {x} out of range for {}", self.k_x);
        let row = &self.counts[x * self.k_y..(x + 1) * self.k_y];
        let denom = row.iter().sum::<f64>() + self.k_y as f64 * self.alpha;
        let probs = row.iter().map(|&n| (n + self.alpha) / denom);
        Distribution::new(probs.collect()).expect("smoothed conditional is normalized")
    }

    /// Posterior predictive `Q(x | y)`, the mirror image of
    /// [`conditional_given_x`](Self::conditional_given_x).
    ///
    /// # Panics
    /// Panics if `y` is out of range.
    pub fn conditional_given_y(&self, y: usize) -> Distribution {
        assert!(y < self.k_y, "y index {y} out of range for {}", self.k_y);
        let col: Vec<f64> = (0..self.k_x).map(|x| self.count(x, y)).collect();
        let denom = col.iter().sum::<f64>() + self.k_x as f64 * self.alpha;
        let probs = col.iter().map(|&n| (n + self.alpha) / denom);
        Distribution::new(probs.collect()).expect("smoothed conditional is normalized")
    }

    /// Posterior predictive marginal
    /// `Q(y) = (sum_x n_xy + K_X alpha) / (N + K_X K_Y alpha)`.
    ///
    /// The denominator is evaluated as the sum of the numerators (the same
    /// quantity), which keeps every y-side query bit-identical to the x-side
    /// query on the transposed counts.
    pub fn marginal_y(&self) -> Distribution {
        let nums: Vec<f64> = (0..self.k_y)
            .map(|y| {
                let col: f64 = (0..self.k_x).map(|x| self.count(x, y)).sum();
                col + self.k_x as f64 * self.alpha
            })
            .collect();
        let denom: f64 = nums.iter().sum();
        let probs = nums.iter().map(|n| n / denom).collect();
        Distribution::new(probs).expect("smoothed marginal is normalized")
    }

    /// Posterior predictive marginal `Q(x)`.
    pub fn marginal_x(&self) -> Distribution {
        let nums: Vec<f64> = (0..self.k_x)
            .map(|x| {
                let row: f64 = self.counts[x * self.k_y..(x + 1) * self.k_y].iter().sum();
                row + self.k_y as f64 * self.alpha
            })
            .collect();
        let denom: f64 = nums.iter().sum();
        let probs = nums.iter().map(|n| n / denom).collect();
        Distribution::new(probs).expect("smoothed marginal is normalized")
    }
}
