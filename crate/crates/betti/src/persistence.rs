//! Scale-valued persistence pairs, barcodes, and persistence diagrams.
//!
//! The reduction works at the level of filtration indices; this module maps
//! its output back to scale values. A class born when simplex `b` enters and
//! killed when simplex `d` enters becomes the pair
//! `(value(b), value(d))` in dimension `dim(b)`; classes that never die get
//! death `+inf`. The barcode is the multiset of those intervals, and the
//! diagram is the same data as planar points above the diagonal, with
//! coincident points aggregated into multiplicities.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::Filtration;
use crate::homology::ReductionResult;
use crate::numfmt::round_sig12;

#[derive(Debug, Error)]
pub enum PersistenceError {
    #[error("infinity cap {cap} is below the largest finite death {max_death}")]
    CapBelowMaxDeath { cap: f64, max_death: f64 },
    #[error("malformed pairs file: {0}")]
    Malformed(String),
    #[error("pairs file I/O: {0}")]
    Io(#[from] std::io::Error),
}

/// A single homology class's lifetime: its dimension, the scale at which it
/// is born, and the scale at which it dies (`f64::INFINITY` for classes that
/// survive the whole filtration).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl PersistencePair {
    pub fn new(dim: usize, birth: f64, death: f64) -> Self {
        debug_assert!(birth <= death);
        PersistencePair { dim, birth, death }
    }

    /// `death - birth`; infinite exactly for essential classes.
    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    pub fn is_essential(&self) -> bool {
        self.death.is_infinite()
    }

    /// Born and killed at the same scale: structural noise that diagrams
    /// drop by default.
    pub fn is_zero_persistence(&self) -> bool {
        self.birth == self.death
    }
}

fn cmp_pairs(a: &PersistencePair, b: &PersistencePair) -> std::cmp::Ordering {
    a.dim
        .cmp(&b.dim)
        .then_with(|| a.birth.total_cmp(&b.birth))
        .then_with(|| a.death.total_cmp(&b.death))
}

/// Converts index-level reduction output into scale-valued pairs, sorted by
/// `(dimension, birth, death)`. Zero-persistence pairs are retained; filter
/// them with [`PersistencePair::is_zero_persistence`] when unwanted.
pub fn pairs_to_scales(result: &ReductionResult, filtration: &Filtration) -> Vec<PersistencePair> {
    let simplex = |i: usize| filtration.simplex(i);
    let mut out: Vec<PersistencePair> = result
        .pairs()
        .iter()
        .map(|&(b, d)| {
            PersistencePair::new(
                simplex(b).dimension(),
                simplex(b).value(),
                simplex(d).value(),
            )
        })
        .chain(result.essential().iter().map(|&e| {
            PersistencePair::new(simplex(e).dimension(), simplex(e).value(), f64::INFINITY)
        }))
        .collect();
    out.sort_by(cmp_pairs);
    out
}

/// Index-level variant of [`pairs_to_scales`]: births and deaths are
/// positions in the filtration's distinct-scale list instead of scale
/// values, for diagrams drawn over filtration steps rather than scales.
/// The resulting pairs feed [`build_diagram`] and the renderers unchanged.
pub fn pairs_to_scale_steps(
    result: &ReductionResult,
    filtration: &Filtration,
) -> Vec<PersistencePair> {
    let scales = filtration.scales();
    let step_of = |value: f64| (scales.partition_point(|&s| s <= value) - 1) as f64;
    let simplex = |i: usize| filtration.simplex(i);
    let mut out: Vec<PersistencePair> = result
        .pairs()
        .iter()
        .map(|&(b, d)| {
            PersistencePair::new(
                simplex(b).dimension(),
                step_of(simplex(b).value()),
                step_of(simplex(d).value()),
            )
        })
        .chain(result.essential().iter().map(|&e| {
            PersistencePair::new(simplex(e).dimension(), step_of(simplex(e).value()), f64::INFINITY)
        }))
        .collect();
    out.sort_by(cmp_pairs);
    out
}

/// The multiset of persistence intervals grouped by dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode {
    bars: Vec<PersistencePair>,
}

impl Barcode {
    /// Sorts the bars by `(dimension, birth, death)` for deterministic
    /// output.
    pub fn new(mut bars: Vec<PersistencePair>) -> Self {
        bars.sort_by(cmp_pairs);
        Barcode { bars }
    }

    pub fn bars(&self) -> &[PersistencePair] {
        &self.bars
    }

    pub fn bars_in_dim(&self, dim: usize) -> impl Iterator<Item = &PersistencePair> {
        self.bars.iter().filter(move |b| b.dim == dim)
    }

    /// Dimensions present, ascending.
    pub fn dims(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.bars.iter().map(|b| b.dim).collect();
        dims.dedup();
        dims
    }
}

/// One plotted diagram point: coincident `(birth, death, dim)` triples are
/// stored once with their multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramPoint {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
    pub multiplicity: usize,
}

/// A persistence diagram: aggregated points above the `x = y` diagonal.
/// The diagonal itself is a drawing element, not a stored point.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    points: Vec<DiagramPoint>,
    infinity_cap: Option<f64>,
}

impl PersistenceDiagram {
    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    /// Scale at which infinite deaths are drawn, when one was requested.
    pub fn infinity_cap(&self) -> Option<f64> {
        self.infinity_cap
    }
}

/// Aggregates pairs into a diagram.
///
/// Identical `(birth, death, dimension)` triples merge into one point with a
/// multiplicity. With `drop_zero` (the default in the pipeline) pairs on the
/// diagonal are discarded, so every stored point satisfies `birth < death`.
/// Points with infinite death are kept; when `infinity_cap` is given it must
/// be at least the largest finite death, and renderers draw the infinite
/// points on that cap line.
pub fn build_diagram(
    pairs: &[PersistencePair],
    drop_zero: bool,
    infinity_cap: Option<f64>,
) -> Result<PersistenceDiagram, PersistenceError> {
    if let Some(cap) = infinity_cap {
        let max_death = pairs
            .iter()
            .filter(|p| p.death.is_finite())
            .map(|p| p.death)
            .fold(f64::NEG_INFINITY, f64::max);
        if max_death.is_finite() && cap < max_death {
            return Err(PersistenceError::CapBelowMaxDeath { cap, max_death });
        }
    }
    let mut kept: Vec<PersistencePair> = pairs
        .iter()
        .filter(|p| !(drop_zero && p.is_zero_persistence()))
        .copied()
        .collect();
    kept.sort_by(cmp_pairs);
    let mut points: Vec<DiagramPoint> = Vec::new();
    for pair in kept {
        match points.last_mut() {
            Some(last)
                if (last.dim, last.birth, last.death) == (pair.dim, pair.birth, pair.death) =>
            {
                last.multiplicity += 1;
            }
            _ => points.push(DiagramPoint {
                dim: pair.dim,
                birth: pair.birth,
                death: pair.death,
                multiplicity: 1,
            }),
        }
    }
    Ok(PersistenceDiagram {
        points,
        infinity_cap,
    })
}

/// The `n` most persistent features: infinite persistence first, then by
/// decreasing persistence, ties broken by `(dimension, birth)`.
///
/// This is the signal-versus-noise split: long bars carry the structure,
/// short ones are noise.
pub fn top_features(pairs: &[PersistencePair], n: usize) -> Vec<PersistencePair> {
    let mut sorted: Vec<PersistencePair> = pairs.to_vec();
    sorted.sort_by(|a, b| {
        b.persistence()
            .total_cmp(&a.persistence())
            .then_with(|| a.dim.cmp(&b.dim))
            .then_with(|| a.birth.total_cmp(&b.birth))
    });
    sorted.truncate(n);
    sorted
}

#[derive(Debug, Serialize, Deserialize)]
struct PairRecord {
    dim: usize,
    birth: f64,
    death: Option<f64>,
}

/// Writes the structured pair export: a JSON array of
/// `{dim, birth, death | null}` records sorted by `(dim, birth, death)`,
/// decimals rounded to 12 significant digits, `null` for infinite deaths.
pub fn write_pairs<W: Write>(
    pairs: &[PersistencePair],
    mut writer: W,
) -> Result<(), PersistenceError> {
    let mut sorted: Vec<&PersistencePair> = pairs.iter().collect();
    sorted.sort_by(|a, b| cmp_pairs(a, b));
    let records: Vec<PairRecord> = sorted
        .into_iter()
        .map(|p| PairRecord {
            dim: p.dim,
            birth: round_sig12(p.birth),
            death: p.death.is_finite().then(|| round_sig12(p.death)),
        })
        .collect();
    serde_json::to_writer_pretty(&mut writer, &records)
        .map_err(|e| PersistenceError::Malformed(e.to_string()))?;
    writeln!(writer)?;
    Ok(())
}

/// Reads a pair export back. Infinite deaths come back as `f64::INFINITY`;
/// records must satisfy `0 <= birth <= death`.
pub fn read_pairs<R: Read>(reader: R) -> Result<Vec<PersistencePair>, PersistenceError> {
    let records: Vec<PairRecord> =
        serde_json::from_reader(reader).map_err(|e| PersistenceError::Malformed(e.to_string()))?;
    records
        .into_iter()
        .map(|r| {
            let death = r.death.unwrap_or(f64::INFINITY);
            if !r.birth.is_finite() || r.birth < 0.0 {
                return Err(PersistenceError::Malformed(format!(
                    "birth {} is not a finite nonnegative number",
                    r.birth
                )));
            }
            if death < r.birth {
                return Err(PersistenceError::Malformed(format!(
                    "death {} precedes birth {}",
                    death, r.birth
                )));
            }
            Ok(PersistencePair::new(r.dim, r.birth, death))
        })
        .collect()
}
