//! Boundary matrices over a prime field, their reduction, and Betti numbers.
//!
//! The boundary matrix of a filtration has one sparse column per simplex, in
//! filtration order; column `j` lists the faces of simplex `j` with
//! alternating-sign coefficients. [`reduce`] performs the left-to-right
//! column reduction that pairs each homology class's birth simplex with the
//! simplex that kills it; everything else (Betti numbers, persistent Betti
//! numbers, barcodes) is bookkeeping over that pairing.
//!
//! The [`oracle`] submodule recomputes the same quantities by dense Gaussian
//! elimination on each boundary block. It shares no code with [`reduce`] and
//! exists so the two routes can be checked against each other.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::Filtration;
use crate::field::PrimeField;

#[derive(Debug, Error)]
pub enum HomologyError {
    /// A face absent from the filtration: the closure invariant was broken
    /// upstream.
    #[error("face {face:?} of simplex {simplex:?} is not in the filtration")]
    MissingFace {
        simplex: Vec<usize>,
        face: Vec<usize>,
    },
    /// Betti numbers in dimension `k` need `(k+1)`-simplices, which a capped
    /// Rips build may not have enumerated.
    #[error(
        "cannot certify homology in dimension {requested} from a filtration built with max_dim {cap}; raise max_dim"
    )]
    DimCapExceeded { requested: usize, cap: usize },
    #[error("scale index {index} is out of range: the filtration has {count} distinct scales")]
    ScaleIndexOutOfRange { index: usize, count: usize },
    #[error("the oracle refuses complexes over {cap} simplices (got {size}); it exists for tests")]
    OracleCapExceeded { size: usize, cap: usize },
}

/// A sparse boundary-matrix column: `(row, coefficient)` entries sorted by
/// row, coefficients nonzero elements of `F_p`.
pub type SparseColumn = Vec<(usize, u32)>;

/// The boundary operator of a filtration, one column per simplex in
/// filtration order. Row indices are filtration positions, so every entry of
/// column `j` sits in a row `< j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMatrix {
    field: PrimeField,
    columns: Vec<SparseColumn>,
    dims: Vec<usize>,
}

impl BoundaryMatrix {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Dimension of the simplex behind column `j`.
    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    pub fn column(&self, j: usize) -> &[(usize, u32)] {
        &self.columns[j]
    }

    /// The boundary matrix of the prefix complex: the first `prefix` columns
    /// (all of whose entries already live in rows `< prefix`).
    pub fn truncated(&self, prefix: usize) -> BoundaryMatrix {
        assert!(prefix <= self.len());
        BoundaryMatrix {
            field: self.field,
            columns: self.columns[..prefix].to_vec(),
            dims: self.dims[..prefix].to_vec(),
        }
    }
}

/// Builds the boundary matrix of a filtration over `F_p`.
///
/// Column `j` holds one entry per codimension-1 face of simplex `j`, the
/// `i`-th face (vertex-omission order) carrying coefficient `(-1)^i mod p`.
/// Vertices get empty columns. For `p = 2` every coefficient is 1.
pub fn build_boundary_matrix(
    filtration: &Filtration,
    field: PrimeField,
) -> Result<BoundaryMatrix, HomologyError> {
    build_prefix_matrix(filtration, field, filtration.len())
}

fn build_prefix_matrix(
    filtration: &Filtration,
    field: PrimeField,
    prefix: usize,
) -> Result<BoundaryMatrix, HomologyError> {
    assert!(prefix <= filtration.len());
    let mut positions: HashMap<&[usize], usize> = HashMap::with_capacity(prefix);
    let mut columns = Vec::with_capacity(prefix);
    let mut dims = Vec::with_capacity(prefix);
    for (j, simplex) in filtration.simplices()[..prefix].iter().enumerate() {
        let mut column: SparseColumn = Vec::with_capacity(simplex.vertices().len());
        for (omitted, face) in simplex.faces().into_iter().enumerate() {
            match positions.get(face.as_slice()) {
                Some(&row) => column.push((row, field.face_sign(omitted))),
                None => {
                    return Err(HomologyError::MissingFace {
                        simplex: simplex.vertices().to_vec(),
                        face,
                    });
                }
            }
        }
        column.sort_unstable_by_key(|&(row, _)| row);
        columns.push(column);
        dims.push(simplex.dimension());
        positions.insert(simplex.vertices(), j);
    }
    Ok(BoundaryMatrix {
        field,
        columns,
        dims,
    })
}

/// How [`reduce_with`] orders the column reduction. Both strategies produce
/// the identical [`ReductionResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReductionStrategy {
    /// Plain left-to-right column reduction.
    #[default]
    Standard,
    /// Process dimensions in decreasing order and clear each paired birth
    /// column instead of reducing it (the "twist" optimization).
    Twist,
}

/// Outcome of reducing a boundary matrix.
///
/// Every column index appears at most once across `pairs` and `essential`;
/// a pair `(b, d)` has `dim(b) = dim(d) - 1` and `b < d`. Zero-persistence
/// pairs (birth and death at the same scale) are retained here and filtered
/// only when building diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pairs: Vec<(usize, usize)>,
    essential: Vec<usize>,
    low: Vec<Option<usize>>,
}

impl ReductionResult {
    /// `(birth index, death index)` pairs, sorted by birth index.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Birth indices of classes that never die, ascending.
    pub fn essential(&self) -> &[usize] {
        &self.essential
    }

    /// For each column, the lowest row of its reduced form (`None` for
    /// columns that reduced to zero).
    pub fn low(&self) -> &[Option<usize>] {
        &self.low
    }
}

/// Left-to-right column reduction of the boundary matrix.
///
/// While a column shares its lowest nonzero row with an earlier reduced
/// column, the right multiple of that column is added to cancel the entry;
/// a column that ends nonzero with unique lowest row `i` yields the pair
/// `(i, j)`, and a column that ends zero and is never a death is essential.
pub fn reduce(matrix: &BoundaryMatrix) -> ReductionResult {
    reduce_with(matrix, ReductionStrategy::Standard)
}

pub fn reduce_with(matrix: &BoundaryMatrix, strategy: ReductionStrategy) -> ReductionResult {
    match strategy {
        ReductionStrategy::Standard => reduce_standard(matrix),
        ReductionStrategy::Twist => reduce_twist(matrix),
    }
}

fn reduce_standard(matrix: &BoundaryMatrix) -> ReductionResult {
    let n = matrix.len();
    let mut cols: Vec<SparseColumn> = matrix.columns.clone();
    let mut low_owner: Vec<Option<usize>> = vec![None; n];
    let mut pairs = Vec::new();
    for j in 0..n {
        cancel_lows(&mut cols, &low_owner, j, &matrix.field);
        if let Some(&(low, _)) = cols[j].last() {
            low_owner[low] = Some(j);
            pairs.push((low, j));
        }
    }
    assemble_result(cols, pairs)
}

fn reduce_twist(matrix: &BoundaryMatrix) -> ReductionResult {
    let n = matrix.len();
    let mut cols: Vec<SparseColumn> = matrix.columns.clone();
    let mut low_owner: Vec<Option<usize>> = vec![None; n];
    let mut pairs = Vec::new();
    let mut cleared = vec![false; n];
    let max_dim = matrix.dims.iter().copied().max().unwrap_or(0);
    for d in (1..=max_dim).rev() {
        for j in 0..n {
            if matrix.dims[j] != d {
                continue;
            }
            if cleared[j] {
                // known to reduce to zero: it already died as a birth column
                cols[j].clear();
                continue;
            }
            cancel_lows(&mut cols, &low_owner, j, &matrix.field);
            if let Some(&(low, _)) = cols[j].last() {
                low_owner[low] = Some(j);
                pairs.push((low, j));
                cleared[low] = true;
            }
        }
    }
    assemble_result(cols, pairs)
}

/// Repeatedly cancels the lowest entry of column `j` against the reduced
/// column that owns that row, until the row is unowned or the column is
/// zero.
fn cancel_lows(
    cols: &mut [SparseColumn],
    low_owner: &[Option<usize>],
    j: usize,
    field: &PrimeField,
) {
    while let Some(&(low, coeff)) = cols[j].last() {
        let Some(owner) = low_owner[low] else { break };
        let owner_coeff = cols[owner].last().expect("owner column is nonzero").1;
        let factor = field.neg(field.mul(coeff, field.inv(owner_coeff)));
        let target = std::mem::take(&mut cols[j]);
        cols[j] = add_scaled(&target, &cols[owner], factor, field);
    }
}

/// `target + factor * source` as sorted sparse columns, zeros dropped.
fn add_scaled(
    target: &SparseColumn,
    source: &SparseColumn,
    factor: u32,
    field: &PrimeField,
) -> SparseColumn {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut k) = (0, 0);
    while i < target.len() || k < source.len() {
        let take_target = match (target.get(i), source.get(k)) {
            (Some(t), Some(s)) => {
                if t.0 == s.0 {
                    let sum = field.add(t.1, field.mul(factor, s.1));
                    if sum != 0 {
                        out.push((t.0, sum));
                    }
                    i += 1;
                    k += 1;
                    continue;
                }
                t.0 < s.0
            }
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => unreachable!(),
        };
        if take_target {
            out.push(target[i]);
            i += 1;
        } else {
            let scaled = field.mul(factor, source[k].1);
            if scaled != 0 {
                out.push((source[k].0, scaled));
            }
            k += 1;
        }
    }
    out
}

fn assemble_result(cols: Vec<SparseColumn>, mut pairs: Vec<(usize, usize)>) -> ReductionResult {
    let n = cols.len();
    let mut is_birth = vec![false; n];
    for &(b, _) in &pairs {
        is_birth[b] = true;
    }
    let low: Vec<Option<usize>> = cols.iter().map(|c| c.last().map(|&(row, _)| row)).collect();
    let essential: Vec<usize> = (0..n)
        .filter(|&j| low[j].is_none() && !is_birth[j])
        .collect();
    pairs.sort_unstable();
    ReductionResult {
        pairs,
        essential,
        low,
    }
}

/// Betti numbers `beta_0 .. beta_{up_to_dim}` of the prefix complex.
///
/// `beta_k` is computed as `#k-simplices - rank d_k - rank d_{k+1}` over the
/// given field, with the ranks read off a reduction of the prefix's boundary
/// matrix. Errors when the filtration's Rips dimension cap means the needed
/// `(k+1)`-simplices were never built.
pub fn betti_numbers(
    filtration: &Filtration,
    prefix: usize,
    field: PrimeField,
    up_to_dim: usize,
) -> Result<Vec<usize>, HomologyError> {
    assert!(
        prefix <= filtration.len(),
        "prefix exceeds filtration length"
    );
    if let Some(cap) = filtration.dim_cap() {
        if up_to_dim + 1 > cap {
            return Err(HomologyError::DimCapExceeded {
                requested: up_to_dim,
                cap,
            });
        }
    }
    let matrix = build_prefix_matrix(filtration, field, prefix)?;
    let reduction = reduce(&matrix);
    let mut simplex_count = vec![0usize; up_to_dim + 2];
    for &d in &matrix.dims {
        if d < simplex_count.len() {
            simplex_count[d] += 1;
        }
    }
    // rank of d_k = number of pairs whose death column has dimension k
    let mut rank = vec![0usize; up_to_dim + 2];
    for &(_, death) in reduction.pairs() {
        let d = matrix.dims[death];
        if d < rank.len() {
            rank[d] += 1;
        }
    }
    Ok((0..=up_to_dim)
        .map(|k| {
            simplex_count[k]
                .checked_sub(rank[k] + rank[k + 1])
                .expect("rank bookkeeping underflow")
        })
        .collect())
}

/// The `p`-persistent Betti number: the rank of the classes of the complex
/// at scale index `i` that are still alive at scale index `i + p` (clamped
/// to the last scale).
///
/// Builds and reduces the boundary matrix internally; use
/// [`persistent_betti_from_reduction`] to reuse a reduction across queries.
pub fn persistent_betti(
    filtration: &Filtration,
    scale_index: usize,
    window: usize,
    field: PrimeField,
    dim: usize,
) -> Result<usize, HomologyError> {
    let matrix = build_boundary_matrix(filtration, field)?;
    let reduction = reduce(&matrix);
    persistent_betti_from_reduction(filtration, &reduction, scale_index, window, dim)
}

/// Fast-path persistent Betti number from a reduction of the *full*
/// filtration: counts the pairs born at scale `<= eps_i` that die at scale
/// `> eps_{i+p}`, plus the essential classes born at scale `<= eps_i`.
pub fn persistent_betti_from_reduction(
    filtration: &Filtration,
    reduction: &ReductionResult,
    scale_index: usize,
    window: usize,
    dim: usize,
) -> Result<usize, HomologyError> {
    let scales = filtration.scales();
    if scale_index >= scales.len() {
        return Err(HomologyError::ScaleIndexOutOfRange {
            index: scale_index,
            count: scales.len(),
        });
    }
    let eps_birth = scales[scale_index];
    let eps_death = scales[(scale_index + window).min(scales.len() - 1)];
    let simplices = filtration.simplices();
    let mut count = 0;
    for &(b, d) in reduction.pairs() {
        if simplices[b].dimension() == dim
            && simplices[b].value() <= eps_birth
            && simplices[d].value() > eps_death
        {
            count += 1;
        }
    }
    for &e in reduction.essential() {
        if simplices[e].dimension() == dim && simplices[e].value() <= eps_birth {
            count += 1;
        }
    }
    Ok(count)
}

/// Independent verification path: dense Gaussian elimination on each
/// boundary block.
///
/// Nothing here touches the sparse reduction machinery above — the module
/// does its own face enumeration, its own modular arithmetic, and its own
/// rank computation, so agreement between the two routes is meaningful.
pub mod oracle {
    use super::HomologyError;
    use crate::complex::{complex_at, Filtration};
    use crate::field::PrimeField;

    /// Largest prefix the oracle will accept by default.
    pub const DEFAULT_SIMPLEX_CAP: usize = 4096;

    /// Betti numbers of the prefix complex, one per dimension present, by
    /// dense rank computations.
    pub fn betti_numbers(
        filtration: &Filtration,
        prefix: usize,
        field: PrimeField,
    ) -> Result<Vec<usize>, HomologyError> {
        betti_numbers_with_cap(filtration, prefix, field, DEFAULT_SIMPLEX_CAP)
    }

    pub fn betti_numbers_with_cap(
        filtration: &Filtration,
        prefix: usize,
        field: PrimeField,
        cap: usize,
    ) -> Result<Vec<usize>, HomologyError> {
        assert!(prefix <= filtration.len());
        if prefix > cap {
            return Err(HomologyError::OracleCapExceeded { size: prefix, cap });
        }
        let p = field.characteristic() as u64;
        let top = match filtration.simplices()[..prefix]
            .iter()
            .map(|s| s.dimension())
            .max()
        {
            Some(top) => top,
            None => return Ok(Vec::new()),
        };
        let mut betti = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let cells = count_dim(filtration, prefix, k);
            let rank_k = rank(boundary_block(filtration, prefix, k, p), p);
            let rank_k1 = rank(boundary_block(filtration, prefix, k + 1, p), p);
            betti.push(
                cells
                    .checked_sub(rank_k + rank_k1)
                    .expect("oracle rank bookkeeping underflow"),
            );
        }
        Ok(betti)
    }

    /// `p`-persistent Betti number by rank arithmetic on two prefixes:
    /// `dim Z_k` of the smaller complex minus the dimension of the part of
    /// the larger complex's boundary space supported on the smaller one.
    pub fn persistent_betti(
        filtration: &Filtration,
        scale_index: usize,
        window: usize,
        field: PrimeField,
        dim: usize,
    ) -> Result<usize, HomologyError> {
        persistent_betti_with_cap(
            filtration,
            scale_index,
            window,
            field,
            dim,
            DEFAULT_SIMPLEX_CAP,
        )
    }

    pub fn persistent_betti_with_cap(
        filtration: &Filtration,
        scale_index: usize,
        window: usize,
        field: PrimeField,
        dim: usize,
        cap: usize,
    ) -> Result<usize, HomologyError> {
        let scales = filtration.scales();
        if scale_index >= scales.len() {
            return Err(HomologyError::ScaleIndexOutOfRange {
                index: scale_index,
                count: scales.len(),
            });
        }
        let p = field.characteristic() as u64;
        let prefix_small = complex_at(filtration, scales[scale_index]);
        let prefix_large = complex_at(
            filtration,
            scales[(scale_index + window).min(scales.len() - 1)],
        );
        if prefix_large > cap {
            return Err(HomologyError::OracleCapExceeded {
                size: prefix_large,
                cap,
            });
        }

        // dim Z_k of the smaller complex
        let cells_small = count_dim(filtration, prefix_small, dim);
        let rank_small = rank(boundary_block(filtration, prefix_small, dim, p), p);
        let cycles = cells_small - rank_small;

        // dim (B_k of the larger complex  ∩  chains of the smaller one):
        // boundaries of the larger complex, minus those with support on the
        // late rows. The late rows are exactly the k-simplices that entered
        // after the smaller prefix, which sit at the bottom of the block.
        let block_large = boundary_block(filtration, prefix_large, dim + 1, p);
        let rank_large = rank(block_large.clone(), p);
        let late_rows: Vec<Vec<u32>> = block_large.into_iter().skip(cells_small).collect();
        let rank_late = rank(late_rows, p);
        let boundaries_inside = rank_large - rank_late;

        Ok(cycles
            .checked_sub(boundaries_inside)
            .expect("oracle persistent rank underflow"))
    }

    fn count_dim(filtration: &Filtration, prefix: usize, k: usize) -> usize {
        filtration.simplices()[..prefix]
            .iter()
            .filter(|s| s.dimension() == k)
            .count()
    }

    /// Dense matrix of the boundary operator from `k`-simplices to
    /// `(k-1)`-simplices of the prefix complex. Rows and columns follow
    /// filtration order. `k = 0` (or an absent dimension) gives a matrix
    /// with no columns.
    fn boundary_block(filtration: &Filtration, prefix: usize, k: usize, p: u64) -> Vec<Vec<u32>> {
        if k == 0 {
            return Vec::new();
        }
        let simplices = &filtration.simplices()[..prefix];
        let mut row_of: std::collections::HashMap<&[usize], usize> =
            std::collections::HashMap::new();
        for s in simplices.iter() {
            if s.dimension() == k - 1 {
                let row = row_of.len();
                row_of.insert(s.vertices(), row);
            }
        }
        let columns: Vec<&crate::complex::Simplex> =
            simplices.iter().filter(|s| s.dimension() == k).collect();
        if columns.is_empty() {
            return Vec::new();
        }
        let mut dense = vec![vec![0u32; columns.len()]; row_of.len()];
        for (col, simplex) in columns.iter().enumerate() {
            let verts = simplex.vertices();
            for omit in 0..verts.len() {
                let face: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != omit)
                    .map(|(_, &v)| v)
                    .collect();
                let row = row_of[face.as_slice()];
                let sign = if omit % 2 == 0 { 1 } else { (p - 1) as u32 };
                dense[row][col] = sign;
            }
        }
        dense
    }

    /// Rank over `F_p` by plain row-echelon elimination.
    fn rank(mut matrix: Vec<Vec<u32>>, p: u64) -> usize {
        let rows = matrix.len();
        if rows == 0 {
            return 0;
        }
        let cols = matrix[0].len();
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| matrix[r][c] != 0) else {
                continue;
            };
            matrix.swap(rank, pivot);
            let inv = mod_pow(matrix[rank][c] as u64, p - 2, p);
            for x in &mut matrix[rank][c..] {
                *x = ((*x as u64) * inv % p) as u32;
            }
            let (upper, lower) = matrix.split_at_mut(rank + 1);
            let pivot_row = &upper[rank];
            for row in lower.iter_mut() {
                let factor = row[c] as u64;
                if factor == 0 {
                    continue;
                }
                for cc in c..cols {
                    let sub = factor * pivot_row[cc] as u64 % p;
                    row[cc] = ((row[cc] as u64 + p - sub) % p) as u32;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
        let mut acc = 1u64;
        base %= modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % modulus;
            }
            base = base * base % modulus;
            exp >>= 1;
        }
        acc
    }
}
