//! Exact arbitrary-precision rational arithmetic and the small amount of
//! linear algebra over Q that modular symbols need: kernel bases of sparse
//! matrices, continued-fraction convergents, and rational reconstruction
//! from high-precision real approximations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Reduced fraction with positive denominator; reduction is maintained by
/// the underlying `num_rational` type.
pub type BigRational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("matrix entry out of range: ({row}, {col})")]
    EntryOutOfRange { row: usize, col: usize },
    #[error("duplicate matrix entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("stored zero entry at ({row}, {col})")]
    StoredZero { row: usize, col: usize },
    #[error("no rational with denominator <= {den_bound} within the stated error")]
    NoReconstruction { den_bound: BigInt },
}

/// Sparse matrix over Q in coordinate form.
#[derive(Debug, Clone)]
pub struct SparseMatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, BigRational)>,
}

impl SparseMatrixQ {
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<(usize, usize, BigRational)>,
    ) -> Result<Self, ExactError> {
        let mut seen = std::collections::HashSet::new();
        for (r, c, v) in &entries {
            if *r >= rows || *c >= cols {
                return Err(ExactError::EntryOutOfRange { row: *r, col: *c });
            }
            if v.is_zero() {
                return Err(ExactError::StoredZero { row: *r, col: *c });
            }
            if !seen.insert((*r, *c)) {
                return Err(ExactError::DuplicateEntry { row: *r, col: *c });
            }
        }
        Ok(SparseMatrixQ { rows, cols, entries })
    }

    /// Build from dense rows, dropping zeros.
    pub fn from_dense(rows: Vec<Vec<BigRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    entries.push((i, j, v.clone()));
                }
            }
        }
        SparseMatrixQ { rows: nrows, cols: ncols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, BigRational)] {
        &self.entries
    }

    fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let mut m = vec![vec![BigRational::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            m[*r][*c] = v.clone();
        }
        m
    }

    /// Matrix-vector product (exact).
    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigRational::zero(); self.rows];
        for (r, c, a) in &self.entries {
            out[*r] += a * &v[*c];
        }
        out
    }
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in order. Deterministic: within each column the surviving
/// row with the smallest index is chosen as pivot, so the output is the
/// canonical RREF of the row space.
fn rref(m: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        // Find a pivot row; prefer the entry with the smallest bit size to
        // limit fraction blow-up (the resulting RREF is unique regardless).
        let mut pick: Option<(usize, u64)> = None;
        for r in rank..rows {
            if !m[r][col].is_zero() {
                let sz = m[r][col].numer().bits() + m[r][col].denom().bits();
                match pick {
                    Some((_, best)) if best <= sz => {}
                    _ => pick = Some((r, sz)),
                }
            }
        }
        let Some((prow, _)) = pick else { continue };
        m.swap(rank, prow);
        let inv = m[rank][col].clone().recip();
        for j in col..cols {
            let v = std::mem::take(&mut m[rank][j]);
            m[rank][j] = v * &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let factor = std::mem::take(&mut m[r][col]);
                for j in (col + 1)..cols {
                    let sub = &m[rank][j] * &factor;
                    m[r][j] -= sub;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    m.truncate(rank);
    pivots
}

/// Basis of the null space `{v : m v = 0}`, echelon-normalized: the basis,
/// viewed as rows of a matrix, is in reduced row echelon form, so each
/// vector has leading coefficient 1 and the choice is deterministic.
pub fn kernel_basis(m: &SparseMatrixQ) -> Vec<Vec<BigRational>> {
    let raw = if m.cols < 200 {
        kernel_dense(&mut m.to_dense(), m.cols)
    } else {
        kernel_sparse(m)
    };
    // Canonicalize: RREF of the basis rows.
    let mut rows = raw;
    rref(&mut rows);
    rows
}

fn kernel_dense(dense: &mut Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let pivots = rref(dense);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            let coef = &dense[row][free];
            if !coef.is_zero() {
                v[pc] = -coef.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Sparse elimination with Markowitz-style pivoting: among nonzero entries
/// of the next admissible column set, pick the one minimizing
/// (row_count - 1) * (col_count - 1) to limit fill-in. Falls back to the
/// same reduced kernel construction as the dense path.
fn kernel_sparse(m: &SparseMatrixQ) -> Vec<Vec<BigRational>> {
    use std::collections::HashMap;
    let cols = m.cols;
    // Row-major sparse representation.
    let mut rows: Vec<HashMap<usize, BigRational>> = vec![HashMap::new(); m.rows];
    for (r, c, v) in &m.entries {
        rows[*r].insert(*c, v.clone());
    }
    let mut pivot_of_col: HashMap<usize, usize> = HashMap::new(); // col -> row index in `reduced`
    let mut reduced: Vec<HashMap<usize, BigRational>> = Vec::new();
    let mut active: Vec<usize> = (0..m.rows).collect();
    loop {
        // Column occupancy among active rows.
        let mut col_count: HashMap<usize, usize> = HashMap::new();
        for &r in &active {
            for c in rows[r].keys() {
                *col_count.entry(*c).or_insert(0) += 1;
            }
        }
        // Markowitz score over all remaining nonzero entries.
        let mut best: Option<(usize, usize, usize)> = None; // (score, row, col)
        for &r in &active {
            if rows[r].is_empty() {
                continue;
            }
            let rc = rows[r].len();
            for c in rows[r].keys() {
                let score = (rc - 1) * (col_count[c] - 1);
                let cand = (score, r, *c);
                match best {
                    Some((s, br, bc)) if (s, br, bc) <= cand => {}
                    _ => best = Some(cand),
                }
            }
        }
        let Some((_, prow, pcol)) = best else { break };
        // Normalize pivot row.
        let inv = rows[prow][&pcol].clone().recip();
        let prow_data: HashMap<usize, BigRational> = rows[prow]
            .iter()
            .map(|(c, v)| (*c, v * &inv))
            .collect();
        // Eliminate from all other active rows.
        for &r in &active {
            if r == prow {
                continue;
            }
            if let Some(f) = rows[r].get(&pcol).cloned() {
                let row = &mut rows[r];
                for (c, v) in &prow_data {
                    let delta = v * &f;
                    let e = row.entry(*c).or_insert_with(BigRational::zero);
                    *e -= delta;
                    if e.is_zero() {
                        row.remove(c);
                    }
                }
            }
        }
        rows[prow].clear();
        pivot_of_col.insert(pcol, reduced.len());
        reduced.push(prow_data);
        active.retain(|&r| !rows[r].is_empty());
    }
    // Back-substitute to full reduction. A row created at step k was already
    // cleared of all pivots chosen before k, so it can only mention pivots
    // chosen later; clean rows in reverse creation order.
    let creation_pivot: Vec<usize> = {
        // creation index -> pivot column
        let mut v = vec![0usize; reduced.len()];
        for (col, idx) in &pivot_of_col {
            v[*idx] = *col;
        }
        v
    };
    for k in (0..reduced.len()).rev() {
        for later in (k + 1)..reduced.len() {
            let pc = creation_pivot[later];
            if let Some(f) = reduced[k].get(&pc).cloned() {
                let src = reduced[later].clone();
                for (c, v) in &src {
                    let delta = v * &f;
                    let e = reduced[k].entry(*c).or_insert_with(BigRational::zero);
                    *e -= delta;
                    if e.is_zero() {
                        reduced[k].remove(c);
                    }
                }
            }
        }
    }
    let pivot_cols: Vec<usize> = {
        let mut v: Vec<usize> = pivot_of_col.keys().copied().collect();
        v.sort_unstable();
        v
    };
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for &pc in &pivot_cols {
            if let Some(coef) = reduced[pivot_of_col[&pc]].get(&free) {
                v[pc] = -coef.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Continued-fraction convergents `p_k / q_k` of `r`, ending at `r` itself.
/// Consecutive convergents satisfy `p_k q_{k-1} - p_{k-1} q_k = (-1)^{k-1}`
/// (with the conceptual prefix 1/0).
pub fn contfrac_convergents(r: &BigRational) -> Vec<BigRational> {
    let mut out = Vec::new();
    // p_{-1}/q_{-1} = 1/0, p_0/q_0 = floor(r)/1.
    let mut p_prev = BigInt::one();
    let mut q_prev = BigInt::zero();
    let mut p = r.floor().to_integer();
    let mut q = BigInt::one();
    out.push(BigRational::new(p.clone(), q.clone()));
    let mut frac = r - r.floor();
    while !frac.is_zero() {
        let inv = frac.recip();
        let a = inv.floor().to_integer();
        frac = &inv - inv.floor();
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push(BigRational::new(p.clone(), q.clone()));
    }
    out
}

/// A real number known only approximately: `value` is exact (e.g. the dyadic
/// rational behind a big-float) and the true quantity lies within `err` of it.
#[derive(Debug, Clone)]
pub struct RealApprox {
    pub value: BigRational,
    pub err: BigRational,
}

impl RealApprox {
    pub fn new(value: BigRational, err: BigRational) -> Self {
        assert!(!err.is_negative(), "error bound must be nonnegative");
        RealApprox { value, err }
    }

    /// True when the approximation certifies the underlying value nonzero.
    pub fn is_certified_nonzero(&self) -> bool {
        self.value.abs() > self.err
    }
}

/// Unique rational `p/q` with `q <= den_bound` and `|x - p/q| <= x.err`,
/// found among the continued-fraction convergents of `x.value`. The caller
/// must ensure `x.err < 1 / (2 den_bound^2)`, which makes the answer unique.
pub fn rational_reconstruct(x: &RealApprox, den_bound: &BigInt) -> Result<BigRational, ExactError> {
    assert!(den_bound.is_positive(), "denominator bound must be positive");
    for conv in contfrac_convergents(&x.value) {
        if conv.denom() > den_bound {
            break;
        }
        if (&conv - &x.value).abs() <= x.err {
            return Ok(conv);
        }
    }
    Err(ExactError::NoReconstruction { den_bound: den_bound.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qi(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn kernel_rank_one_symmetric() {
        let m = SparseMatrixQ::from_dense(vec![vec![qi(1), qi(1)], vec![qi(1), qi(1)]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![qi(1), qi(-1)]]);
    }

    #[test]
    fn kernel_identity_is_trivial() {
        let mut rows = vec![vec![qi(0); 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = qi(1);
        }
        let m = SparseMatrixQ::from_dense(rows);
        assert!(kernel_basis(&m).is_empty());
    }

    #[test]
    fn kernel_single_relation_leading_one() {
        let m = SparseMatrixQ::from_dense(vec![vec![qi(2), qi(4)]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![qi(1), q(-1, 2)]]);
    }

    #[test]
    fn kernel_vectors_annihilate_exactly() {
        let m = SparseMatrixQ::from_dense(vec![
            vec![qi(1), qi(2), qi(3), qi(4)],
            vec![qi(2), qi(4), qi(6), qi(8)],
            vec![qi(0), qi(1), qi(1), qi(-1)],
        ]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            for e in m.mul_vec(v) {
                assert!(e.is_zero());
            }
        }
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        // Force the sparse path with >= 200 columns; compare against the
        // dense elimination on the same matrix.
        let cols = 210;
        let mut entries = Vec::new();
        // Band matrix with a few dependent rows.
        for r in 0..60usize {
            let c0 = (r * 3) % (cols - 2);
            entries.push((r, c0, qi(1 + (r % 5) as i64)));
            entries.push((r, c0 + 1, qi(-2)));
            entries.push((r, c0 + 2, qi((r % 3) as i64 + 1)));
        }
        let m = SparseMatrixQ::new(60, cols, entries).unwrap();
        let sparse = kernel_sparse(&m);
        let dense = kernel_dense(&mut m.to_dense(), cols);
        let mut sparse = sparse;
        let mut dense = dense;
        rref(&mut sparse);
        rref(&mut dense);
        assert_eq!(sparse, dense);
        let k = kernel_basis(&m);
        for v in &k {
            for e in m.mul_vec(v) {
                assert!(e.is_zero());
            }
        }
    }

    #[test]
    fn convergents_of_three_sevenths() {
        let cs = contfrac_convergents(&q(3, 7));
        assert_eq!(cs, vec![q(0, 1), q(1, 2), q(3, 7)]);
    }

    #[test]
    fn convergents_of_zero_and_integer() {
        assert_eq!(contfrac_convergents(&qi(0)), vec![qi(0)]);
        assert_eq!(contfrac_convergents(&qi(5)), vec![qi(5)]);
    }

    #[test]
    fn convergents_negative() {
        let cs = contfrac_convergents(&q(-3, 7));
        assert_eq!(*cs.last().unwrap(), q(-3, 7));
        check_unimodular(&cs);
    }

    fn check_unimodular(cs: &[BigRational]) {
        let mut pp = BigInt::one();
        let mut qq = BigInt::zero();
        for c in cs {
            let det = c.numer() * &qq - &pp * c.denom();
            assert!(det.abs() == BigInt::one(), "unimodularity");
            pp = c.numer().clone();
            qq = c.denom().clone();
        }
    }

    #[test]
    fn reconstruct_simple_decimals() {
        let x = RealApprox::new(q(2_000_000, 10_000_000), q(1, 1_000_000));
        assert_eq!(rational_reconstruct(&x, &BigInt::from(10)).unwrap(), q(1, 5));
        let x = RealApprox::new(q(3_333_333, 10_000_000), q(1, 1_000_000));
        assert_eq!(rational_reconstruct(&x, &BigInt::from(10)).unwrap(), q(1, 3));
    }

    #[test]
    fn reconstruct_failure() {
        let x = RealApprox::new(q(1_234_567, 10_000_000), q(1, 10_000_000));
        assert!(matches!(
            rational_reconstruct(&x, &BigInt::from(3)),
            Err(ExactError::NoReconstruction { .. })
        ));
    }

    #[test]
    fn malformed_matrices_rejected() {
        let e = SparseMatrixQ::new(2, 2, vec![(2, 0, qi(1))]);
        assert!(matches!(e, Err(ExactError::EntryOutOfRange { .. })));
        let e = SparseMatrixQ::new(2, 2, vec![(0, 0, qi(1)), (0, 0, qi(2))]);
        assert!(matches!(e, Err(ExactError::DuplicateEntry { .. })));
        let e = SparseMatrixQ::new(2, 2, vec![(0, 0, qi(0))]);
        assert!(matches!(e, Err(ExactError::StoredZero { .. })));
    }
}
