//! Abstract simplicial complexes and Vietoris-Rips filtrations.
//!
//! A [`Filtration`] is a flat, ordered list of simplices such that every
//! prefix of the list is itself a simplicial complex. The ordering is by
//! `(value, dimension, lexicographic vertices)`, which guarantees that faces
//! always precede cofaces and makes the construction deterministic.
//!
//! Scale convention: a vertex set is a simplex of the Rips complex at scale
//! `eps` when **all** of its pairwise distances are `<= eps`. The scale is
//! therefore a diameter, not a radius; no halving is applied anywhere.

use std::collections::HashMap;
use std::io;

use thiserror::Error;

use crate::metric::DistanceMatrix;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("simplex vertices must be strictly increasing, got {0:?}")]
    VerticesNotIncreasing(Vec<usize>),
    #[error("simplex value must be a finite nonnegative number, got {0}")]
    InvalidValue(f64),
    #[error("duplicate simplex {0:?}")]
    DuplicateSimplex(Vec<usize>),
    #[error("closure violated: face {face:?} of {simplex:?} is missing")]
    MissingFace {
        simplex: Vec<usize>,
        face: Vec<usize>,
    },
    #[error(
        "closure violated: face {face:?} has value {face_value} but its coface {simplex:?} appears at {simplex_value}"
    )]
    FaceValueExceedsCoface {
        simplex: Vec<usize>,
        face: Vec<usize>,
        simplex_value: f64,
        face_value: f64,
    },
}

/// A simplex: a strictly increasing vertex list plus the scale at which it
/// first appears in the filtration.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    vertices: Vec<usize>,
    value: f64,
}

impl Simplex {
    pub fn new(vertices: Vec<usize>, value: f64) -> Result<Self, ComplexError> {
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ComplexError::VerticesNotIncreasing(vertices));
        }
        if !value.is_finite() || value < 0.0 {
            return Err(ComplexError::InvalidValue(value));
        }
        Ok(Simplex { vertices, value })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// One less than the cardinality of the vertex set.
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The codimension-1 faces, in vertex-omission order: the `i`-th face
    /// drops the vertex at position `i`. A vertex has no faces.
    ///
    /// The omission order matters: the boundary operator attaches the
    /// coefficient `(-1)^i` to the `i`-th face of this list.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        if self.dimension() == 0 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|omit| {
                let mut face = self.vertices.clone();
                face.remove(omit);
                face
            })
            .collect()
    }
}

/// An ordered sequence of simplices realizing a nested family of complexes.
///
/// Invariants, checked on construction (or guaranteed by the Rips builder):
/// every face of a listed simplex appears earlier with a value no larger
/// than the simplex's own, and the sequence is sorted ascending by
/// `(value, dimension, vertices)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    simplices: Vec<Simplex>,
    scales: Vec<f64>,
    /// Dimension cap used by the Rips builder, if any. Simplices above the
    /// cap were never enumerated, so homology in dimension `cap` and above
    /// cannot be trusted; `None` means the complex is complete as given.
    dim_cap: Option<usize>,
}

impl Filtration {
    /// Builds a filtration from an explicit simplex list.
    ///
    /// The list is sorted into filtration order and the closure property is
    /// verified. The resulting filtration is treated as a complete complex
    /// (no dimension cap).
    pub fn from_simplices(mut simplices: Vec<Simplex>) -> Result<Self, ComplexError> {
        sort_filtration(&mut simplices);
        for w in simplices.windows(2) {
            if w[0].vertices == w[1].vertices {
                return Err(ComplexError::DuplicateSimplex(w[1].vertices.clone()));
            }
        }
        let positions: HashMap<&[usize], usize> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.vertices.as_slice(), i))
            .collect();
        for (i, s) in simplices.iter().enumerate() {
            for face in s.faces() {
                match positions.get(face.as_slice()) {
                    None => {
                        return Err(ComplexError::MissingFace {
                            simplex: s.vertices.clone(),
                            face,
                        });
                    }
                    Some(&j) => {
                        let f = &simplices[j];
                        if f.value > s.value {
                            return Err(ComplexError::FaceValueExceedsCoface {
                                simplex: s.vertices.clone(),
                                face,
                                simplex_value: s.value,
                                face_value: f.value,
                            });
                        }
                        debug_assert!(j < i, "sorted order must place faces first");
                    }
                }
            }
        }
        Ok(Self::assemble(simplices, None))
    }

    fn assemble(simplices: Vec<Simplex>, dim_cap: Option<usize>) -> Self {
        let mut scales: Vec<f64> = simplices.iter().map(Simplex::value).collect();
        scales.sort_by(f64::total_cmp);
        scales.dedup();
        Filtration {
            simplices,
            scales,
            dim_cap,
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, index: usize) -> &Simplex {
        &self.simplices[index]
    }

    /// The sorted distinct scale values at which simplices appear.
    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    /// Largest simplex dimension present, or `None` when empty.
    pub fn max_dimension(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dimension).max()
    }

    /// The Rips builder's dimension cap, if this filtration was built with
    /// one. See [`build_vr_filtration`].
    pub fn dim_cap(&self) -> Option<usize> {
        self.dim_cap
    }

    /// Writes the debug dump: one simplex per line, `value dim v0 v1 .. vk`,
    /// in filtration order.
    pub fn write_dump<W: io::Write>(&self, mut w: W) -> io::Result<()> {
        for s in &self.simplices {
            write!(w, "{} {}", s.value, s.dimension())?;
            for v in &s.vertices {
                write!(w, " {v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Builds the Vietoris-Rips filtration of a distance matrix.
///
/// Contains every simplex with at most `max_dim + 1` vertices whose diameter
/// (largest pairwise distance) is at most `max_eps`; the simplex's value is
/// exactly its diameter, and vertices enter at value 0. Pass
/// `f64::INFINITY` for an unbounded scale.
///
/// Simplices are enumerated by incremental expansion over the
/// `max_eps`-neighborhood graph rather than by scanning all vertex subsets,
/// so an aggressive `max_eps` keeps the enumeration small.
pub fn build_vr_filtration(dm: &DistanceMatrix, max_dim: usize, max_eps: f64) -> Filtration {
    let m = dm.size();
    let mut simplices: Vec<Simplex> = Vec::with_capacity(m);
    for v in 0..m {
        simplices.push(Simplex {
            vertices: vec![v],
            value: 0.0,
        });
    }

    if max_dim >= 1 {
        // lower[v] = neighbors u < v with d(u, v) <= max_eps, ascending
        let lower: Vec<Vec<usize>> = (0..m)
            .map(|v| (0..v).filter(|&u| dm.get(u, v) <= max_eps).collect())
            .collect();
        let mut current: Vec<usize> = Vec::with_capacity(max_dim + 1);
        for v in 0..m {
            current.push(v);
            expand(
                &mut simplices,
                &mut current,
                0.0,
                &lower[v],
                &lower,
                dm,
                max_dim,
            );
            current.pop();
        }
    }

    sort_filtration(&mut simplices);
    Filtration::assemble(simplices, Some(max_dim))
}

/// Grows `current` (ascending, all candidates smaller than its head) by one
/// vertex at a time, recording each extension.
fn expand(
    out: &mut Vec<Simplex>,
    current: &mut Vec<usize>,
    value: f64,
    candidates: &[usize],
    lower: &[Vec<usize>],
    dm: &DistanceMatrix,
    max_dim: usize,
) {
    for &u in candidates {
        let mut extended_value = value;
        for &w in current.iter() {
            extended_value = extended_value.max(dm.get(u, w));
        }
        current.insert(0, u);
        out.push(Simplex {
            vertices: current.clone(),
            value: extended_value,
        });
        if current.len() <= max_dim {
            let narrowed: Vec<usize> = intersect_sorted(candidates, &lower[u]);
            expand(out, current, extended_value, &narrowed, lower, dm, max_dim);
        }
        current.remove(0);
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn sort_filtration(simplices: &mut [Simplex]) {
    simplices.sort_unstable_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then_with(|| a.vertices.len().cmp(&b.vertices.len()))
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
}

/// Number of simplices with value `<= eps`; the prefix of that length is the
/// Rips complex at scale `eps`.
pub fn complex_at(filtration: &Filtration, eps: f64) -> usize {
    filtration.simplices.partition_point(|s| s.value <= eps)
}
