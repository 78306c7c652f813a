//! Persistent homology of finite metric point sets.
//!
//! `betti` turns a point cloud (or a ready-made distance matrix) into a
//! Vietoris-Rips filtration, reduces its boundary matrix over a prime field,
//! and reports the result as Betti numbers, persistence pairs, barcodes, and
//! persistence diagrams. The pipeline is deterministic end to end: the same
//! input bytes always produce the same output bytes.
//!
//! The stages mirror the module layout:
//!
//! 1. [`metric`] — load points, compute pairwise distances;
//! 2. [`complex`] — grow the Rips filtration up to a dimension and scale cap;
//! 3. [`homology`] — build and reduce the boundary matrix, extract
//!    birth/death pairs and Betti numbers (with an independent dense-rank
//!    [`homology::oracle`] for cross-checking);
//! 4. [`persistence`] — map index pairs to scale values, aggregate diagrams,
//!    rank features by persistence, read/write the pairs file;
//! 5. [`plot`] — render barcodes and diagrams as static SVG;
//! 6. [`cli`] — the `betti compute` / `betti plot` command-line verbs.
//!
//! # Example
//!
//! Four corners of the unit square carry one 1-dimensional hole that appears
//! when the sides close the loop (scale 1) and disappears when the diagonals
//! fill it (scale √2):
//!
//! ```
//! use betti::complex::build_vr_filtration;
//! use betti::field::PrimeField;
//! use betti::homology::{build_boundary_matrix, reduce};
//! use betti::metric::{pairwise_distances, Metric, PointCloud};
//! use betti::persistence::pairs_to_scales;
//!
//! let cloud = PointCloud::from_rows(vec![
//!     vec![0.0, 0.0],
//!     vec![1.0, 0.0],
//!     vec![1.0, 1.0],
//!     vec![0.0, 1.0],
//! ])?;
//! let distances = pairwise_distances(&cloud, Metric::Euclidean);
//! let filtration = build_vr_filtration(&distances, 2, f64::INFINITY);
//! let matrix = build_boundary_matrix(&filtration, PrimeField::default())?;
//! let pairs = pairs_to_scales(&reduce(&matrix), &filtration);
//!
//! let loops: Vec<_> = pairs
//!     .iter()
//!     .filter(|p| p.dim == 1 && !p.is_zero_persistence())
//!     .collect();
//! assert_eq!(loops.len(), 1);
//! assert_eq!(loops[0].birth, 1.0);
//! assert_eq!(loops[0].death, 2.0_f64.sqrt());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod complex;
pub mod field;
pub mod homology;
pub mod metric;
pub mod persistence;
pub mod plot;

mod numfmt;

pub use complex::{build_vr_filtration, complex_at, Filtration, Simplex};
pub use field::PrimeField;
pub use homology::{
    betti_numbers, build_boundary_matrix, persistent_betti, reduce, BoundaryMatrix, ReductionResult,
};
pub use metric::{pairwise_distances, DistanceMatrix, Metric, PointCloud};
pub use persistence::{
    build_diagram, pairs_to_scales, top_features, Barcode, PersistenceDiagram, PersistencePair,
};

#[cfg(doctest)]
mod book;
