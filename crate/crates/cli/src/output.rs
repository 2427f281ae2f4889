//! Deterministic file emission: fixed 6-decimal formatting, `.` decimal
//! separator, `\n` line endings. Reruns with the same seed produce
//! byte-identical CSVs; only the manifest carries a timestamp.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use causalgain::experiments::{ActiveComparison, AlphaSweepRow, SummaryRow};
use causalgain::{example1_closed_form, GainReport};

/// Fixed 6-decimal float; negative zero is normalized away.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

pub fn write_curves_csv(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    let mut out = String::from(
        "n_obs,intervention,mean_expected,std_expected,mean_realized,std_realized\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n_obs,
            r.intervention,
            fmt6(r.mean_expected),
            fmt6(r.std_expected),
            fmt6(r.mean_realized),
            fmt6(r.std_realized),
        ));
    }
    write_file(path, &out)
}

/// The idealized mean-field gain curve alongside the first example's
/// Monte-Carlo output.
pub fn write_closed_form_csv(path: &Path, rho: f64, alpha: f64, n_grid: &[u64]) -> Result<()> {
    let mut out = String::from("n_obs,closed_form_bits\n");
    for &n in n_grid {
        out.push_str(&format!(
            "{},{}\n",
            n,
            fmt6(example1_closed_form(rho, n as f64, alpha))
        ));
    }
    write_file(path, &out)
}

pub fn write_sweep_csv(path: &Path, rows: &[AlphaSweepRow]) -> Result<()> {
    let mut out = String::from("alpha,n_obs,prob_best_selected\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", fmt6(r.alpha), r.n_obs, fmt6(r.prob_best)));
    }
    write_file(path, &out)
}

pub fn write_active_csv(path: &Path, comparison: &ActiveComparison) -> Result<()> {
    let mut out = String::from("n_obs,policy,mean_gain,std_gain\n");
    for r in &comparison.per_n {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n_obs,
            r.policy,
            fmt6(r.mean_gain),
            fmt6(r.std_gain),
        ));
    }
    write_file(path, &out)
}

/// Everything needed to reproduce the run byte-for-byte: the argv echo, the
/// resolved config, the master seed, and the artifact version.
pub fn write_manifest(
    out_dir: &Path,
    subcommand: &str,
    config: serde_json::Value,
    seed: u64,
    outputs: &[PathBuf],
) -> Result<()> {
    let manifest = serde_json::json!({
        "command": std::env::args().collect::<Vec<_>>(),
        "subcommand": subcommand,
        "config": config,
        "seed": seed,
        "version": env!("CARGO_PKG_VERSION"),
        "start_unix_secs": SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        "outputs": outputs.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
    });
    let path = out_dir.join("manifest.json");
    write_file(&path, &(serde_json::to_string_pretty(&manifest)? + "\n"))
}

/// Ranked table for the ad-hoc gain query: sorted by expected gain
/// descending (stable, so ties keep enumeration order) with the greedy pick
/// starred.
pub fn render_gain_table(reports: &[GainReport]) -> String {
    let mut ranked: Vec<&GainReport> = reports.iter().collect();
    ranked.sort_by(|a, b| b.expected_bits.total_cmp(&a.expected_bits));
    let with_realized = ranked.iter().any(|r| r.realized_bits.is_some());

    let mut out = String::new();
    out.push_str("  intervention    expected_bits");
    if with_realized {
        out.push_str("   realized_bits");
    }
    out.push('\n');
    for (i, r) in ranked.iter().enumerate() {
        let marker = if i == 0 { '*' } else { ' ' };
        out.push_str(&format!(
            "{} {:<15} {:>14}",
            marker,
            r.intervention.to_string(),
            fmt6(r.expected_bits)
        ));
        if let Some(realized) = r.realized_bits {
            out.push_str(&format!(" {:>15}", fmt6(realized)));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use causalgain::Intervention;

    #[test]
    fn fmt6_is_fixed_width_and_locale_free() {
        assert_eq!(fmt6(0.5), "0.500000");
        assert_eq!(fmt6(-1.0 / 3.0), "-0.333333");
        assert_eq!(fmt6(-0.0), "0.000000");
        assert_eq!(fmt6(-1e-9), "0.000000");
    }

    #[test]
    fn gain_table_stars_first_max_in_enumeration_order() {
        let reports = vec![
            GainReport {
                intervention: Intervention::SetX(0),
                expected_bits: 0.25,
                realized_bits: None,
            },
            GainReport {
                intervention: Intervention::SetX(1),
                expected_bits: 0.25,
                realized_bits: None,
            },
            GainReport {
                intervention: Intervention::SetY(0),
                expected_bits: 0.1,
                realized_bits: None,
            },
        ];
        let table = render_gain_table(&reports);
        let lines: Vec<&str> = table.lines().collect();
        assert!(lines[1].starts_with("* do(X=1)"));
        assert!(lines[2].starts_with("  do(X=2)"));
        assert!(!table.contains("realized_bits"));
    }
}
