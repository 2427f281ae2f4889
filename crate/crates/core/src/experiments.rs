//! Built-in worlds and Monte-Carlo runners behind the CLI's `example1` ..
//! `example4` and `alpha-sweep` subcommands.
//!
//! Every runner is bit-reproducible from `(config, seed)` and independent of
//! thread count: replication `r` at sample size `n` always uses the child
//! stream derived from `(seed, n, r)`, per-replication results are collected
//! in replication order, and aggregation uses pairwise summation.

use rayon::prelude::*;
use serde::Serialize;

use crate::belief::{per_outcome_gain, Belief};
use crate::error::{Error, Result};
use crate::gain::{expected_gain, realized_gain};
use crate::rng::Rng;
use crate::strategy::{enumerate_interventions, select, Policy};
use crate::world::{Intervention, Orientation, TrueWorld};

/// Observation-count grid shared by the first two examples.
pub const DEFAULT_N_GRID: &[u64] = &[5, 10, 20, 50, 100, 200, 500, 1000];
/// Longer grid for the nearly-independent third example, which converges
/// slowly.
pub const EXTENDED_N_GRID: &[u64] = &[5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000];
/// Concentration grid for the prior sweep.
pub const DEFAULT_ALPHA_GRID: &[f64] = &[0.5, 1.0, 2.0, 4.0, 8.0];
/// Representative sample sizes for the prior sweep.
pub const SWEEP_N_GRID: &[u64] = &[20, 100, 500];

/// Knobs shared by all runners. Fields a runner does not use are ignored by
/// it (`alpha_grid` only drives the sweep, `k` and `policies` only the active
/// comparison).
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub rho: f64,
    pub alpha: f64,
    pub n_grid: Vec<u64>,
    pub reps: u64,
    pub seed: u64,
    /// Category count per variable for randomly generated worlds.
    pub k: usize,
    pub alpha_grid: Vec<f64>,
    pub policies: Vec<Policy>,
    /// Worker threads; 0 uses the default pool.
    pub threads: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            rho: 0.9,
            alpha: 2.0,
            n_grid: DEFAULT_N_GRID.to_vec(),
            reps: 1000,
            seed: 1,
            k: 8,
            alpha_grid: DEFAULT_ALPHA_GRID.to_vec(),
            policies: vec![Policy::Greedy, Policy::Random],
            threads: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidConfig("reps must be at least 1".into()));
        }
        if self.n_grid.is_empty() {
            return Err(Error::InvalidConfig("n-grid must be nonempty".into()));
        }
        if !self.alpha.is_finite() || self.alpha <= 0.0 {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        if !(0.0..=1.0).contains(&self.rho) {
            return Err(Error::InvalidConfig(format!(
                "rho must be in [0,1], got {}",
                self.rho
            )));
        }
        if self.k < 2 {
            return Err(Error::InvalidConfig(format!(
                "k must be at least 2, got {}",
                self.k
            )));
        }
        Ok(())
    }
}

/// Mean and standard deviation of expected and realized gain for one
/// intervention at one sample size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub n_obs: u64,
    pub intervention: Intervention,
    pub mean_expected: f64,
    pub std_expected: f64,
    pub mean_realized: f64,
    pub std_realized: f64,
}

/// Fraction of replications in which greedy selection picked `do(X=1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaSweepRow {
    pub alpha: f64,
    pub n_obs: u64,
    pub prob_best: f64,
}

/// Signed evidence toward the true orientation gathered by one policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActiveRow {
    pub n_obs: u64,
    pub policy: Policy,
    pub mean_gain: f64,
    pub std_gain: f64,
}

/// Outcome of the greedy-versus-random comparison. Overall means pool every
/// `(n, replication)` cell; a policy left out of the config reports `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct ActiveComparison {
    pub mean_gain_greedy: Option<f64>,
    pub mean_gain_random: Option<f64>,
    pub per_n: Vec<ActiveRow>,
}

fn check_rho(rho: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::InvalidConfig(format!(
            "rho must be in [0,1], got {rho}"
        )));
    }
    Ok(())
}

/// Correlated binary pair: `P = [[rho/2, (1-rho)/2], [(1-rho)/2, rho/2]]`,
/// X causes Y. `rho = 1/2` is independence, `rho = 1` is a deterministic
/// relationship.
pub fn example1_joint(rho: f64) -> Result<TrueWorld> {
    check_rho(rho)?;
    TrueWorld::new(
        &[
            vec![rho / 2.0, (1.0 - rho) / 2.0],
            vec![(1.0 - rho) / 2.0, rho / 2.0],
        ],
        Orientation::XToY,
    )
}

/// 4x4 world with one dominant cell: `P_11 = rho`, every other cell
/// `(1-rho)/15`. The frequent value is the *uninformative* one to clamp.
pub fn example2_joint(rho: f64) -> Result<TrueWorld> {
    check_rho(rho)?;
    let k = 4;
    let background = (1.0 - rho) / (k * k - 1) as f64;
    let rows: Vec<Vec<f64>> = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| if x == 0 && y == 0 { rho } else { background })
                .collect()
        })
        .collect();
    TrueWorld::new(&rows, Orientation::XToY)
}

/// 4x4 world with a single best intervention: five cells carry `rho/5` each
/// (an isolated peak at `(1,1)` plus the whole last row), the remaining 11
/// cells `(1-rho)/11`. Clamping X to its first value is strictly the most
/// informative action; the last row's X-clamps and all the other-value
/// clamps fall into three lower symmetry classes (`ŷ=1`, `ŷ≠1`, `x̂≠1`).
pub fn example3_joint(rho: f64) -> Result<TrueWorld> {
    check_rho(rho)?;
    let k = 4;
    let peak = rho / 5.0;
    let background = (1.0 - rho) / 11.0;
    let rows: Vec<Vec<f64>> = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| {
                    if x == k - 1 || (x == 0 && y == 0) {
                        peak
                    } else {
                        background
                    }
                })
                .collect()
        })
        .collect();
    TrueWorld::new(&rows, Orientation::XToY)
}

/// Random `k x k` world: i.i.d. uniform cell weights, normalized. X causes Y.
pub fn example4_random_joint(k: usize, rng: &mut Rng) -> TrueWorld {
    assert!(k >= 2, "need at least 2 categories, got {k}");
    let cells: Vec<f64> = (0..k * k).map(|_| rng.uniform()).collect();
    let total: f64 = cells.iter().sum();
    let joint = cells.iter().map(|c| c / total).collect();
    TrueWorld::from_flat(joint, k, k, Orientation::XToY)
        .expect("uniform cell weights give positive marginals")
}

/// Sum with pairwise splitting, so the result does not depend on chunking
/// and rounding drift stays `O(log n)`.
fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        xs.iter().sum()
    } else {
        let mid = xs.len() / 2;
        pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
    }
}

/// Mean and population standard deviation (a single replication reports 0).
fn mean_and_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = pairwise_sum(xs) / n;
    let sq: Vec<f64> = xs.iter().map(|x| (x - mean) * (x - mean)).collect();
    (mean, (pairwise_sum(&sq) / n).sqrt())
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        Ok(f())
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        Ok(pool.install(f))
    }
}

/// Sample `reps` count matrices per grid point and summarize expected and
/// realized gain for every intervention, in enumeration order.
pub fn run_gain_curves(world: &TrueWorld, cfg: &ExperimentConfig) -> Result<Vec<SummaryRow>> {
    cfg.validate()?;
    let actions = enumerate_interventions(world.k_x(), world.k_y());
    with_pool(cfg.threads, || {
        let mut rows = Vec::with_capacity(cfg.n_grid.len() * actions.len());
        for &n in &cfg.n_grid {
            let per_rep: Vec<Vec<(f64, f64)>> = (0..cfg.reps)
                .into_par_iter()
                .map(|rep| {
                    let mut rng = Rng::derive(cfg.seed, &[n, rep]);
                    let counts = world
                        .sample_observations(n, cfg.alpha, &mut rng)
                        .expect("validated alpha");
                    actions
                        .iter()
                        .map(|&iv| (expected_gain(&counts, iv), realized_gain(&counts, world, iv)))
                        .collect()
                })
                .collect();
            for (i, &iv) in actions.iter().enumerate() {
                let expected: Vec<f64> = per_rep.iter().map(|r| r[i].0).collect();
                let realized: Vec<f64> = per_rep.iter().map(|r| r[i].1).collect();
                let (mean_expected, std_expected) = mean_and_std(&expected);
                let (mean_realized, std_realized) = mean_and_std(&realized);
                rows.push(SummaryRow {
                    n_obs: n,
                    intervention: iv,
                    mean_expected,
                    std_expected,
                    mean_realized,
                    std_realized,
                });
            }
        }
        rows
    })
}

/// For each `(alpha, n)` pair, the frequency with which greedy selection on
/// sampled counts from the single-best-intervention world picks `do(X=1)`.
/// Replications share their sampled counts across the alpha grid, so the
/// sweep isolates the effect of the prior.
pub fn run_alpha_sweep(cfg: &ExperimentConfig) -> Result<Vec<AlphaSweepRow>> {
    cfg.validate()?;
    if cfg.alpha_grid.is_empty() {
        return Err(Error::InvalidConfig("alpha-grid must be nonempty".into()));
    }
    for &alpha in &cfg.alpha_grid {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidAlpha(alpha));
        }
    }
    let world = example3_joint(cfg.rho)?;
    let probs = with_pool(cfg.threads, || {
        let mut probs = vec![vec![0.0; cfg.n_grid.len()]; cfg.alpha_grid.len()];
        for (ni, &n) in cfg.n_grid.iter().enumerate() {
            let hits: Vec<Vec<bool>> = (0..cfg.reps)
                .into_par_iter()
                .map(|rep| {
                    let mut rng = Rng::derive(cfg.seed, &[n, rep]);
                    let base = world
                        .sample_observations(n, cfg.alpha_grid[0], &mut rng)
                        .expect("validated alpha");
                    cfg.alpha_grid
                        .iter()
                        .map(|&alpha| {
                            let counts = base.with_alpha(alpha).expect("validated alpha");
                            select(Policy::Greedy, &counts, &mut rng) == Intervention::SetX(0)
                        })
                        .collect()
                })
                .collect();
            for (ai, row) in probs.iter_mut().enumerate() {
                let wins = hits.iter().filter(|h| h[ai]).count();
                row[ni] = wins as f64 / cfg.reps as f64;
            }
        }
        probs
    })?;
    let mut rows = Vec::with_capacity(cfg.alpha_grid.len() * cfg.n_grid.len());
    for (ai, &alpha) in cfg.alpha_grid.iter().enumerate() {
        for (ni, &n) in cfg.n_grid.iter().enumerate() {
            rows.push(AlphaSweepRow {
                alpha,
                n_obs: n,
                prob_best: probs[ai][ni],
            });
        }
    }
    Ok(rows)
}

/// Greedy-versus-random single-shot comparison on random worlds.
///
/// Each replication draws a fresh world, samples `n` observations, lets each
/// policy pick one intervention, executes it, and records the signed
/// evidence toward the true (X causes Y) orientation.
pub fn run_active_comparison(cfg: &ExperimentConfig) -> Result<ActiveComparison> {
    cfg.validate()?;
    if cfg.policies.is_empty() {
        return Err(Error::InvalidConfig("policies must be nonempty".into()));
    }
    let per_rep_by_n = with_pool(cfg.threads, || {
        let mut per_rep_by_n = Vec::with_capacity(cfg.n_grid.len());
        for &n in &cfg.n_grid {
            let gains: Vec<Vec<f64>> = (0..cfg.reps)
                .into_par_iter()
                .map(|rep| {
                    let mut rng = Rng::derive(cfg.seed, &[n, rep]);
                    let world = example4_random_joint(cfg.k, &mut rng);
                    let counts = world
                        .sample_observations(n, cfg.alpha, &mut rng)
                        .expect("validated alpha");
                    cfg.policies
                        .iter()
                        .map(|&policy| {
                            let iv = select(policy, &counts, &mut rng);
                            let outcome = world.intervene(iv, &mut rng);
                            let gain = per_outcome_gain(&counts, iv, outcome);
                            Belief::new().accumulate(iv, gain).log_odds_bits
                        })
                        .collect()
                })
                .collect();
            per_rep_by_n.push((n, gains));
        }
        per_rep_by_n
    })?;

    let mut per_n = Vec::with_capacity(cfg.n_grid.len() * cfg.policies.len());
    let mut pooled: Vec<Vec<f64>> = vec![Vec::new(); cfg.policies.len()];
    for (n, gains) in &per_rep_by_n {
        for (pi, &policy) in cfg.policies.iter().enumerate() {
            let series: Vec<f64> = gains.iter().map(|g| g[pi]).collect();
            let (mean_gain, std_gain) = mean_and_std(&series);
            per_n.push(ActiveRow {
                n_obs: *n,
                policy,
                mean_gain,
                std_gain,
            });
            pooled[pi].extend_from_slice(&series);
        }
    }
    let overall = |policy: Policy| {
        cfg.policies
            .iter()
            .position(|&p| p == policy)
            .map(|pi| mean_and_std(&pooled[pi]).0)
    };
    Ok(ActiveComparison {
        mean_gain_greedy: overall(Policy::Greedy),
        mean_gain_random: overall(Policy::Random),
        per_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::joint::JointCounts;

    #[test]
    fn example1_joint_is_the_normalized_pair_matrix() {
        let w = example1_joint(0.9).unwrap();
        for (got, want) in w.joint().iter().zip([0.45, 0.05, 0.05, 0.45]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!((w.joint().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(w.orientation(), Orientation::XToY);
        assert!(example1_joint(1.2).is_err());
    }

    #[test]
    fn example2_joint_has_one_peak() {
        let w = example2_joint(0.9).unwrap();
        assert_eq!(w.prob(0, 0), 0.9);
        let background = 0.1 / 15.0;
        for x in 0..4 {
            for y in 0..4 {
                if (x, y) != (0, 0) {
                    assert!((w.prob(x, y) - background).abs() < 1e-15);
                }
            }
        }
        assert!((w.joint().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn example3_joint_structure() {
        let rho = 0.5;
        let w = example3_joint(rho).unwrap();
        let peak = rho / 5.0;
        let background = (1.0 - rho) / 11.0;
        let mut peaks = 0;
        let mut backgrounds = 0;
        for x in 0..4 {
            for y in 0..4 {
                let p = w.prob(x, y);
                if (p - peak).abs() < 1e-15 {
                    peaks += 1;
                } else if (p - background).abs() < 1e-15 {
                    backgrounds += 1;
                }
            }
        }
        assert_eq!(peaks, 5);
        assert_eq!(backgrounds, 11);
        assert!((w.prob(0, 0) - peak).abs() < 1e-15);
        for y in 0..4 {
            assert!((w.prob(3, y) - peak).abs() < 1e-15);
        }
        assert!((w.joint().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn example3_best_intervention_is_first_x() {
        // On idealized counts at large N the first X-clamp must strictly win.
        let w = example3_joint(0.5).unwrap();
        let c = JointCounts::mean_field(w.joint(), 4, 4, 1e6, 2.0).unwrap();
        let best = expected_gain(&c, Intervention::SetX(0));
        for iv in enumerate_interventions(4, 4) {
            if iv != Intervention::SetX(0) {
                assert!(
                    expected_gain(&c, iv) < best,
                    "{iv} ties or beats do(X=1)"
                );
            }
        }
    }

    #[test]
    fn example4_random_joint_is_reproducible() {
        let a = example4_random_joint(8, &mut Rng::from_seed(4));
        let b = example4_random_joint(8, &mut Rng::from_seed(4));
        assert_eq!(a.joint(), b.joint());
        assert!(a.joint().iter().all(|&p| p > 0.0));
        assert!((a.joint().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pairwise_sum_matches_naive() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-9);
    }

    #[test]
    fn mean_and_std_hand_values() {
        let (m, s) = mean_and_std(&[1.0, 2.0, 3.0, 4.0]);
        assert!((m - 2.5).abs() < 1e-15);
        assert!((s - 1.25f64.sqrt()).abs() < 1e-15);
        let (m, s) = mean_and_std(&[7.0]);
        assert_eq!(m, 7.0);
        assert_eq!(s, 0.0);
    }

    fn small_cfg() -> ExperimentConfig {
        ExperimentConfig {
            n_grid: vec![5, 20],
            reps: 40,
            seed: 11,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn gain_curves_single_rep_has_zero_std() {
        let w = example1_joint(0.9).unwrap();
        let cfg = ExperimentConfig {
            reps: 1,
            ..small_cfg()
        };
        for row in run_gain_curves(&w, &cfg).unwrap() {
            assert_eq!(row.std_expected, 0.0);
            assert_eq!(row.std_realized, 0.0);
        }
    }

    #[test]
    fn gain_curves_are_thread_count_independent() {
        let w = example2_joint(0.9).unwrap();
        let mut cfg = small_cfg();
        cfg.threads = 1;
        let serial = run_gain_curves(&w, &cfg).unwrap();
        cfg.threads = 4;
        let parallel = run_gain_curves(&w, &cfg).unwrap();
        assert_eq!(serial, parallel);

        cfg.threads = 0;
        assert_eq!(serial, run_gain_curves(&w, &cfg).unwrap());
    }

    #[test]
    fn gain_curves_rows_follow_grid_and_enumeration_order() {
        let w = example1_joint(0.8).unwrap();
        let rows = run_gain_curves(&w, &small_cfg()).unwrap();
        assert_eq!(rows.len(), 2 * 4);
        assert_eq!(rows[0].n_obs, 5);
        assert_eq!(rows[0].intervention, Intervention::SetX(0));
        assert_eq!(rows[4].n_obs, 20);
        assert_eq!(rows[7].intervention, Intervention::SetY(1));
    }

    #[test]
    fn alpha_sweep_probabilities_are_valid_and_reproducible() {
        let cfg = ExperimentConfig {
            rho: 0.5,
            n_grid: vec![20],
            alpha_grid: vec![0.5, 2.0],
            reps: 50,
            seed: 3,
            ..ExperimentConfig::default()
        };
        let rows = run_alpha_sweep(&cfg).unwrap();
        assert_eq!(rows.len(), 2);
        for row in &rows {
            assert!((0.0..=1.0).contains(&row.prob_best));
        }
        assert_eq!(rows, run_alpha_sweep(&cfg).unwrap());
    }

    #[test]
    fn active_comparison_single_rep_is_deterministic() {
        let cfg = ExperimentConfig {
            n_grid: vec![50],
            reps: 1,
            seed: 9,
            ..ExperimentConfig::default()
        };
        let a = run_active_comparison(&cfg).unwrap();
        let b = run_active_comparison(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.mean_gain_greedy.unwrap().is_finite());
        assert!(a.mean_gain_random.unwrap().is_finite());
        assert_eq!(a.per_n.len(), 2);
    }

    #[test]
    fn active_comparison_honors_policy_subset() {
        let cfg = ExperimentConfig {
            n_grid: vec![20],
            reps: 5,
            policies: vec![Policy::Random],
            ..ExperimentConfig::default()
        };
        let out = run_active_comparison(&cfg).unwrap();
        assert!(out.mean_gain_greedy.is_none());
        assert!(out.mean_gain_random.is_some());
        assert_eq!(out.per_n.len(), 1);
    }

    #[test]
    fn config_validation_rejects_bad_values() {
        let bad = [
            ExperimentConfig {
                reps: 0,
                ..ExperimentConfig::default()
            },
            ExperimentConfig {
                n_grid: Vec::new(),
                ..ExperimentConfig::default()
            },
            ExperimentConfig {
                rho: 1.5,
                ..ExperimentConfig::default()
            },
            ExperimentConfig {
                alpha: 0.0,
                ..ExperimentConfig::default()
            },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err());
        }
        assert!(ExperimentConfig::default().validate().is_ok());
    }
}
