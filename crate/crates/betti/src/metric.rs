//! Point clouds, distance matrices, and the metrics used to build them.
//!
//! The rest of the pipeline only ever compares pairwise distances against a
//! scale threshold, so this module deliberately stores the metric structure
//! as a plain lower-triangular matrix and does not validate the triangle
//! inequality: a non-metric input still yields a well-defined filtration.

use std::io::BufRead;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MetricError {
    /// Malformed text input; `line` is 1-based over the original stream.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A point whose arity disagrees with the rest of the cloud.
    #[error("point {index} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    /// NaN or infinite coordinate.
    #[error("non-finite coordinate in point {index}")]
    NonFinite { index: usize },
}

/// Pairwise distance functions on `R^n`.
///
/// All three are translation invariant, which the test suite relies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    #[default]
    Euclidean,
    Manhattan,
    Chebyshev,
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Manhattan => "manhattan",
            Metric::Chebyshev => "chebyshev",
        }
    }

    /// Distance between two coordinate vectors of equal length.
    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        match self {
            Metric::Euclidean => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            Metric::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
            Metric::Chebyshev => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
        }
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euclidean" => Ok(Metric::Euclidean),
            "manhattan" => Ok(Metric::Manhattan),
            "chebyshev" => Ok(Metric::Chebyshev),
            other => Err(format!("unknown metric `{other}`")),
        }
    }
}

/// A finite set of points in `R^n`, indexed by their input order.
///
/// Immutable after construction; empty and singleton clouds are legal inputs
/// everywhere downstream.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
}

impl PointCloud {
    /// Builds a cloud from coordinate rows, checking that every row has the
    /// same arity and only finite entries.
    pub fn from_rows(points: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        if let Some(first) = points.first() {
            let expected = first.len();
            for (index, p) in points.iter().enumerate() {
                if p.len() != expected {
                    return Err(MetricError::DimensionMismatch {
                        index,
                        expected,
                        found: p.len(),
                    });
                }
                if p.iter().any(|c| !c.is_finite()) {
                    return Err(MetricError::NonFinite { index });
                }
            }
        }
        Ok(PointCloud { points })
    }

    /// Parses the CSV point format: one point per line, comma-separated
    /// decimal coordinates, optional comment lines starting with `#`.
    ///
    /// Row order of the source is preserved as point index order. An empty
    /// stream is a valid empty cloud.
    pub fn from_csv<R: BufRead>(reader: R) -> Result<Self, MetricError> {
        let mut points: Vec<Vec<f64>> = Vec::new();
        let mut expected: Option<usize> = None;
        for (lineno, line) in reader.lines().enumerate() {
            let line_number = lineno + 1;
            let text = line_text(line_number, line)?;
            let trimmed = text.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let coords = parse_numbers(trimmed, ",", line_number)?;
            match expected {
                None => expected = Some(coords.len()),
                Some(n) if n != coords.len() => {
                    return Err(MetricError::Parse {
                        line: line_number,
                        message: format!("expected {n} coordinates, found {}", coords.len()),
                    });
                }
                Some(_) => {}
            }
            points.push(coords);
        }
        Ok(PointCloud { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Coordinate dimension, or `None` for the empty cloud.
    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Vec::len)
    }

    pub fn point(&self, index: usize) -> &[f64] {
        &self.points[index]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }
}

/// Symmetric pairwise distances on `m` points, stored lower-triangular.
///
/// The storage shape enforces `d(i,j) = d(j,i)` and `d(i,i) = 0`; entries are
/// validated to be finite and nonnegative. The triangle inequality is *not*
/// checked.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    size: usize,
    // entry (i, j) with i > j lives at i*(i-1)/2 + j
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds a matrix from strictly-lower-triangular rows: `rows[k]` holds
    /// the `k + 1` distances from point `k + 1` to points `0..=k`.
    pub fn from_lower_rows(rows: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let size = if rows.is_empty() { 0 } else { rows.len() + 1 };
        let mut entries = Vec::with_capacity(size * size.saturating_sub(1) / 2);
        for (k, row) in rows.into_iter().enumerate() {
            let index = k + 1;
            if row.len() != index {
                return Err(MetricError::DimensionMismatch {
                    index,
                    expected: index,
                    found: row.len(),
                });
            }
            for d in row {
                if !d.is_finite() || d < 0.0 {
                    return Err(MetricError::NonFinite { index });
                }
                entries.push(d);
            }
        }
        Ok(DistanceMatrix { size, entries })
    }

    /// Parses the lower-triangular text format.
    ///
    /// Line `k` (over non-comment lines, starting at the second point) holds
    /// `k` comma- or whitespace-separated entries `d(k,0) .. d(k,k-1)`. A
    /// leading line with zero entries for the first point is tolerated but
    /// not required; an empty stream yields the empty matrix.
    pub fn from_lower_triangular<R: BufRead>(reader: R) -> Result<Self, MetricError> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        let mut expected = 1usize;
        let mut leading_blank_seen = false;
        for (lineno, line) in reader.lines().enumerate() {
            let line_number = lineno + 1;
            let text = line_text(line_number, line)?;
            let trimmed = text.trim();
            if trimmed.starts_with('#') {
                continue;
            }
            if trimmed.is_empty() {
                if rows.is_empty() && !leading_blank_seen {
                    // the optional zero-entry line for the first point
                    leading_blank_seen = true;
                    continue;
                }
                return Err(MetricError::Parse {
                    line: line_number,
                    message: format!("expected {expected} entries, found 0"),
                });
            }
            let sep = if trimmed.contains(',') { "," } else { " " };
            let values = parse_numbers(trimmed, sep, line_number)?;
            if values.len() != expected {
                return Err(MetricError::Parse {
                    line: line_number,
                    message: format!("expected {expected} entries, found {}", values.len()),
                });
            }
            if let Some(bad) = values.iter().find(|d| !d.is_finite() || **d < 0.0) {
                return Err(MetricError::Parse {
                    line: line_number,
                    message: format!("distance {bad} is not a finite nonnegative number"),
                });
            }
            rows.push(values);
            expected += 1;
        }
        let mut matrix = Self::from_lower_rows(rows)?;
        if matrix.size == 0 && leading_blank_seen {
            matrix.size = 1;
        }
        Ok(matrix)
    }

    /// Number of points.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Distance between points `i` and `j`; zero on the diagonal.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.size && j < self.size);
        if i == j {
            return 0.0;
        }
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        self.entries[hi * (hi - 1) / 2 + lo]
    }
}

/// Computes the full pairwise distance matrix of a cloud under `metric`.
///
/// Deterministic: entry `(i, j)` depends only on points `i` and `j`.
pub fn pairwise_distances(cloud: &PointCloud, metric: Metric) -> DistanceMatrix {
    let m = cloud.len();
    let mut entries = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 1..m {
        for j in 0..i {
            entries.push(metric.distance(cloud.point(i), cloud.point(j)));
        }
    }
    DistanceMatrix { size: m, entries }
}

fn line_text(line_number: usize, line: std::io::Result<String>) -> Result<String, MetricError> {
    line.map_err(|e| MetricError::Parse {
        line: line_number,
        message: e.to_string(),
    })
}

fn parse_numbers(text: &str, sep: &str, line: usize) -> Result<Vec<f64>, MetricError> {
    let tokens: Vec<&str> = if sep == "," {
        text.split(',').map(str::trim).collect()
    } else {
        text.split_whitespace().collect()
    };
    tokens
        .iter()
        .map(|tok| {
            let value: f64 = tok.parse().map_err(|_| MetricError::Parse {
                line,
                message: format!("`{tok}` is not a number"),
            })?;
            if !value.is_finite() {
                return Err(MetricError::Parse {
                    line,
                    message: format!("`{tok}` is not finite"),
                });
            }
            Ok(value)
        })
        .collect()
}
