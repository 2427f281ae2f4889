//! File formats: count matrices as CSV, worlds as JSON.
//!
//! Counts CSV: header `x,y,count`, one row per nonzero cell, 1-based
//! indices; missing cells are zero and duplicate cells accumulate.
//!
//! World JSON: `{"k_x": .., "k_y": .., "joint": [[..]], "orientation":
//! "XtoY" | "YtoX"}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::joint::JointCounts;
use crate::world::{Orientation, TrueWorld};

fn format_err(path: &Path, msg: impl Into<String>) -> Error {
    Error::Format {
        path: path.display().to_string(),
        msg: msg.into(),
    }
}

/// Load a count matrix from `x,y,count` CSV. Category counts default to the
/// largest index seen (at least 2 per variable) unless given explicitly.
pub fn read_counts_csv(
    path: impl AsRef<Path>,
    alpha: f64,
    k_x: Option<usize>,
    k_y: Option<usize>,
) -> Result<JointCounts> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)?;
    let headers = reader.headers()?.clone();
    let expected = ["x", "y", "count"];
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        return Err(format_err(
            path,
            format!("expected header x,y,count, got {}", got.join(",")),
        ));
    }

    let mut cells: Vec<(usize, usize, f64)> = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let field = |i: usize| -> Result<&str> {
            record
                .get(i)
                .ok_or_else(|| format_err(path, format!("row {}: missing field {i}", line + 2)))
        };
        let x: usize = field(0)?
            .parse()
            .map_err(|_| format_err(path, format!("row {}: bad x index", line + 2)))?;
        let y: usize = field(1)?
            .parse()
            .map_err(|_| format_err(path, format!("row {}: bad y index", line + 2)))?;
        let count: f64 = field(2)?
            .parse()
            .map_err(|_| format_err(path, format!("row {}: bad count", line + 2)))?;
        if x == 0 || y == 0 {
            return Err(format_err(
                path,
                format!("row {}: indices are 1-based", line + 2),
            ));
        }
        if !count.is_finite() || count < 0.0 {
            return Err(format_err(
                path,
                format!("row {}: count must be nonnegative and finite", line + 2),
            ));
        }
        cells.push((x - 1, y - 1, count));
    }

    let seen_x = cells.iter().map(|c| c.0 + 1).max().unwrap_or(0);
    let seen_y = cells.iter().map(|c| c.1 + 1).max().unwrap_or(0);
    let k_x = k_x.unwrap_or(seen_x.max(2));
    let k_y = k_y.unwrap_or(seen_y.max(2));
    if seen_x > k_x || seen_y > k_y {
        return Err(format_err(
            path,
            format!("indices exceed the requested {k_x}x{k_y} shape"),
        ));
    }

    let mut rows = vec![vec![0.0; k_y]; k_x];
    for (x, y, count) in cells {
        rows[x][y] += count;
    }
    JointCounts::from_rows(&rows, alpha)
}

#[derive(Serialize, Deserialize)]
struct WorldFile {
    k_x: usize,
    k_y: usize,
    joint: Vec<Vec<f64>>,
    orientation: Orientation,
}

/// Load a world from JSON, cross-checking the declared shape.
pub fn read_world_json(path: impl AsRef<Path>) -> Result<TrueWorld> {
    let path = path.as_ref();
    let file: WorldFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    if file.joint.len() != file.k_x || file.joint.iter().any(|row| row.len() != file.k_y) {
        return Err(format_err(
            path,
            format!("joint shape does not match k_x={} k_y={}", file.k_x, file.k_y),
        ));
    }
    TrueWorld::new(&file.joint, file.orientation)
}

/// Write a world as JSON in the same schema `read_world_json` accepts.
pub fn write_world_json(path: impl AsRef<Path>, world: &TrueWorld) -> Result<()> {
    let rows: Vec<Vec<f64>> = (0..world.k_x())
        .map(|x| (0..world.k_y()).map(|y| world.prob(x, y)).collect())
        .collect();
    let file = WorldFile {
        k_x: world.k_x(),
        k_y: world.k_y(),
        joint: rows,
        orientation: world.orientation(),
    };
    fs::write(path, serde_json::to_string_pretty(&file)? + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        use std::io::Write;
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn counts_csv_round_trip() {
        let f = write_temp("x,y,count\n1,1,3\n1,2,1\n2,2,2\n");
        let c = read_counts_csv(f.path(), 1.0, None, None).unwrap();
        assert_eq!(c.k_x(), 2);
        assert_eq!(c.k_y(), 2);
        assert_eq!(c.count(0, 0), 3.0);
        assert_eq!(c.count(1, 0), 0.0);
        assert_eq!(c.count(1, 1), 2.0);
    }

    #[test]
    fn counts_csv_accepts_fractional_and_duplicates() {
        let f = write_temp("x,y,count\n1,1,1.5\n1,1,0.5\n");
        let c = read_counts_csv(f.path(), 2.0, None, None).unwrap();
        assert_eq!(c.count(0, 0), 2.0);
        assert_eq!(c.total(), 2.0);
    }

    #[test]
    fn counts_csv_explicit_shape_pads_missing_cells() {
        let f = write_temp("x,y,count\n1,1,4\n");
        let c = read_counts_csv(f.path(), 1.0, Some(3), Some(4)).unwrap();
        assert_eq!(c.k_x(), 3);
        assert_eq!(c.k_y(), 4);
        assert_eq!(c.total(), 4.0);
    }

    #[test]
    fn counts_csv_rejects_bad_input() {
        for content in [
            "a,b,c\n1,1,1\n",        // wrong header
            "x,y,count\n0,1,1\n",    // 0-based index
            "x,y,count\n1,1,-2\n",   // negative count
            "x,y,count\n1,one,2\n",  // non-numeric
            "x,y,count\n9,1,1\n",    // exceeds explicit shape (with k 2x2)
        ] {
            let f = write_temp(content);
            let explicit = content.starts_with("x,y,count\n9");
            let result = if explicit {
                read_counts_csv(f.path(), 1.0, Some(2), Some(2))
            } else {
                read_counts_csv(f.path(), 1.0, None, None)
            };
            assert!(result.is_err(), "accepted: {content:?}");
        }
    }

    #[test]
    fn empty_counts_csv_gives_minimal_zero_matrix() {
        let f = write_temp("x,y,count\n");
        let c = read_counts_csv(f.path(), 1.0, None, None).unwrap();
        assert_eq!((c.k_x(), c.k_y()), (2, 2));
        assert_eq!(c.total(), 0.0);
    }

    #[test]
    fn world_json_round_trip() {
        let w = TrueWorld::new(
            &[vec![0.45, 0.05], vec![0.05, 0.45]],
            Orientation::YToX,
        )
        .unwrap();
        let f = tempfile::NamedTempFile::new().unwrap();
        write_world_json(f.path(), &w).unwrap();
        let back = read_world_json(f.path()).unwrap();
        assert_eq!(w, back);
    }

    #[test]
    fn world_json_parses_documented_schema() {
        let f = write_temp(
            r#"{"k_x": 2, "k_y": 2, "joint": [[0.4, 0.1], [0.1, 0.4]], "orientation": "XtoY"}"#,
        );
        let w = read_world_json(f.path()).unwrap();
        assert_eq!(w.orientation(), Orientation::XToY);
        assert_eq!(w.prob(0, 0), 0.4);
    }

    #[test]
    fn world_json_rejects_shape_mismatch() {
        let f = write_temp(
            r#"{"k_x": 3, "k_y": 2, "joint": [[0.5, 0.5]], "orientation": "XtoY"}"#,
        );
        assert!(read_world_json(f.path()).is_err());
    }
}
