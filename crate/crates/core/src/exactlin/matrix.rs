use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use super::rational::{rat_size, Rat};

/// Sparse vector: index -> nonzero rational. Helpers below keep the
/// "no stored zero" invariant.
pub type SparseVec = BTreeMap<usize, Rat>;

pub fn vec_set(v: &mut SparseVec, i: usize, val: Rat) {
    if val.is_zero() {
        v.remove(&i);
    } else {
        v.insert(i, val);
    }
}

/// `dst += c * src`, pruning entries that cancel to zero.
pub fn vec_add_scaled(dst: &mut SparseVec, c: &Rat, src: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (i, val) in src {
        let add = c * val;
        match dst.get_mut(i) {
            Some(cur) => {
                *cur += add;
                if cur.is_zero() {
                    dst.remove(i);
                }
            }
            None => {
                dst.insert(*i, add);
            }
        }
    }
}

pub fn vec_scale(v: &mut SparseVec, c: &Rat) {
    if c.is_zero() {
        v.clear();
    } else {
        for val in v.values_mut() {
            *val *= c;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinError {
    DimensionMismatch { expected: usize, got: usize },
    /// `quotient_dimension` saw an image vector outside the kernel; upstream
    /// this means some d∘d ≠ 0.
    ImageNotInKernel { index: usize },
}

impl core::fmt::Display for LinError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LinError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            LinError::ImageNotInKernel { index } => {
                write!(f, "image vector {index} not contained in kernel (broken complex)")
            }
        }
    }
}

/// Sparse matrix over ℚ; only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Rat::from_integer(1.into()));
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, val: Rat) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        if val.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), val);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, val: &Rat) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of bounds");
        match self.entries.get_mut(&(r, c)) {
            Some(cur) => {
                *cur += val;
                if cur.is_zero() {
                    self.entries.remove(&(r, c));
                }
            }
            None => {
                if !val.is_zero() {
                    self.entries.insert((r, c), val.clone());
                }
            }
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn from_rows(rows: Vec<SparseVec>, cols: usize) -> Self {
        let mut m = SparseMatrix::new(rows.len(), cols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, val) in row {
                m.set(r, c, val);
            }
        }
        m
    }

    pub fn row(&self, r: usize) -> SparseVec {
        self.entries
            .range((r, 0)..=(r, usize::MAX))
            .map(|((_, c), v)| (*c, v.clone()))
            .collect()
    }

    pub fn to_rows(&self) -> Vec<SparseVec> {
        let mut rows = alloc::vec![SparseVec::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].insert(*c, v.clone());
        }
        rows
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols, self.rows);
        for ((r, c), v) in &self.entries {
            t.set(*c, *r, v.clone());
        }
        t
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for ((r, c), val) in &self.entries {
            if let Some(x) = v.get(c) {
                let add = val * x;
                match out.get_mut(r) {
                    Some(cur) => {
                        *cur += add;
                        if cur.is_zero() {
                            out.remove(r);
                        }
                    }
                    None => {
                        if !add.is_zero() {
                            out.insert(*r, add);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = SparseMatrix::new(self.rows, other.cols);
        let other_rows = other.to_rows();
        for ((r, k), a) in &self.entries {
            for (c, b) in &other_rows[*k] {
                out.add_to(*r, *c, &(a * b));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stacks matrices with equal column count on top of each other.
    pub fn vstack(blocks: &[SparseMatrix]) -> SparseMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = SparseMatrix::new(rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            for ((r, c), v) in &b.entries {
                out.set(offset + r, *c, v.clone());
            }
            offset += b.rows;
        }
        out
    }
}

/// Basis of a subspace of ℚ^ambient, stored in reduced row echelon form
/// with strictly increasing pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    vectors: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis { ambient_dim, vectors: Vec::new(), pivots: Vec::new() }
    }

    /// Echelonizes the given spanning set (dependent vectors are dropped).
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<SparseVec>) -> Self {
        let mut basis = SubspaceBasis::empty(ambient_dim);
        for v in vectors {
            basis.insert_reduced(v);
        }
        basis
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis; returns the coefficients along the
    /// basis vectors and the remainder.
    pub fn reduce(&self, v: &SparseVec) -> (Vec<Rat>, SparseVec) {
        let mut rem = v.clone();
        let mut coeffs = alloc::vec![Rat::zero(); self.vectors.len()];
        for (k, (vec, pivot)) in self.vectors.iter().zip(&self.pivots).enumerate() {
            if let Some(c) = rem.get(pivot).cloned() {
                coeffs[k] = c.clone();
                let neg = -c;
                vec_add_scaled(&mut rem, &neg, vec);
            }
        }
        (coeffs, rem)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).1.is_empty()
    }

    /// Adds `v` to the basis if independent; returns true when the basis grew.
    pub fn insert_reduced(&mut self, v: SparseVec) -> bool {
        let (_, mut rem) = self.reduce(&v);
        let Some((&pivot, _)) = rem.iter().next() else {
            return false;
        };
        let inv = {
            let lead = rem.get(&pivot).unwrap().clone();
            lead.recip()
        };
        vec_scale(&mut rem, &inv);
        // back-substitute to keep the stored rows fully reduced
        for (vec, _) in self.vectors.iter_mut().zip(&self.pivots) {
            if let Some(c) = vec.get(&pivot).cloned() {
                let neg = -c;
                vec_add_scaled(vec, &neg, &rem);
            }
        }
        let pos = self.pivots.partition_point(|p| *p < pivot);
        self.pivots.insert(pos, pivot);
        self.vectors.insert(pos, rem);
        true
    }
}

/// Row-reduces `m` and returns its rank together with an echelonized
/// kernel basis. Deterministic: pivot choice is by size then position.
pub fn rank_kernel(m: &SparseMatrix) -> (usize, SubspaceBasis) {
    let mut rows = m.to_rows();
    // pivot column -> row index holding that pivot
    let mut pivot_of_col: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used = alloc::vec![false; rows.len()];
    for col in 0..m.cols {
        let mut best: Option<(u64, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if used[r] {
                continue;
            }
            if let Some(v) = row.get(&col) {
                let size = rat_size(v);
                if best.map_or(true, |(bs, br)| size < bs || (size == bs && r < br)) {
                    best = Some((size, r));
                }
            }
        }
        let Some((_, r)) = best else { continue };
        used[r] = true;
        let inv = rows[r].get(&col).unwrap().clone().recip();
        vec_scale(&mut rows[r], &inv);
        let pivot_row = rows[r].clone();
        for (other, row) in rows.iter_mut().enumerate() {
            if other == r {
                continue;
            }
            if let Some(c) = row.get(&col).cloned() {
                let neg = -c;
                vec_add_scaled(row, &neg, &pivot_row);
            }
        }
        pivot_of_col.insert(col, r);
    }
    let rank = pivot_of_col.len();

    let mut kernel_vecs = Vec::new();
    for free in 0..m.cols {
        if pivot_of_col.contains_key(&free) {
            continue;
        }
        let mut v = SparseVec::new();
        v.insert(free, Rat::from_integer(1.into()));
        for (col, r) in &pivot_of_col {
            if let Some(c) = rows[*r].get(&free) {
                vec_set(&mut v, *col, -c.clone());
            }
        }
        kernel_vecs.push(v);
    }
    (rank, SubspaceBasis::from_vectors(m.cols, kernel_vecs))
}

/// Solves `A x = b` by elimination on the augmented matrix; returns one
/// solution when consistent.
pub fn solve(a: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    let mut aug = SparseMatrix::new(a.rows, a.cols + 1);
    for ((r, c), v) in a.iter() {
        aug.set(*r, *c, v.clone());
    }
    for (r, v) in b {
        aug.set(*r, a.cols, v.clone());
    }
    let mut rows = aug.to_rows();
    let mut pivot_of_col: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used = alloc::vec![false; rows.len()];
    for col in 0..a.cols {
        let mut best: Option<(u64, usize)> = None;
        for (r, row) in rows.iter().enumerate() {
            if used[r] {
                continue;
            }
            if let Some(v) = row.get(&col) {
                let size = rat_size(v);
                if best.map_or(true, |(bs, br)| size < bs || (size == bs && r < br)) {
                    best = Some((size, r));
                }
            }
        }
        let Some((_, r)) = best else { continue };
        used[r] = true;
        let inv = rows[r].get(&col).unwrap().clone().recip();
        vec_scale(&mut rows[r], &inv);
        let pivot_row = rows[r].clone();
        for (other, row) in rows.iter_mut().enumerate() {
            if other == r {
                continue;
            }
            if let Some(c) = row.get(&col).cloned() {
                let neg = -c;
                vec_add_scaled(row, &neg, &pivot_row);
            }
        }
        pivot_of_col.insert(col, r);
    }
    // inconsistent if a leftover row is (0 … 0 | nonzero)
    for (r, row) in rows.iter().enumerate() {
        if !used[r] && row.contains_key(&a.cols) && row.len() == 1 {
            return None;
        }
        if !used[r] && row.keys().all(|c| *c == a.cols) && !row.is_empty() {
            return None;
        }
    }
    let mut x = SparseVec::new();
    for (col, r) in &pivot_of_col {
        if let Some(v) = rows[*r].get(&a.cols) {
            x.insert(*col, v.clone());
        }
    }
    // verify (guards against free-variable bookkeeping mistakes)
    let mut check = a.mul_vec(&x);
    for (i, v) in b {
        match check.get_mut(i) {
            Some(cur) => {
                *cur -= v;
                if cur.is_zero() {
                    check.remove(i);
                }
            }
            None => {
                check.insert(*i, -v.clone());
            }
        }
    }
    if check.is_empty() {
        Some(x)
    } else {
        None
    }
}

/// Expresses `v` in the given basis, or reports that it is not a member.
pub fn membership(v: &SparseVec, s: &SubspaceBasis) -> Result<Option<Vec<Rat>>, LinError> {
    if let Some((&i, _)) = v.iter().next_back() {
        if i >= s.ambient_dim {
            return Err(LinError::DimensionMismatch { expected: s.ambient_dim, got: i + 1 });
        }
    }
    let (coeffs, rem) = s.reduce(v);
    Ok(if rem.is_empty() { Some(coeffs) } else { None })
}

/// dim(kernel) − dim(image), after checking image ⊆ kernel.
pub fn quotient_dimension(image: &SubspaceBasis, kernel: &SubspaceBasis) -> Result<usize, LinError> {
    for (i, v) in image.vectors().iter().enumerate() {
        if membership(v, kernel)?.is_none() {
            return Err(LinError::ImageNotInKernel { index: i });
        }
    }
    Ok(kernel.dim() - image.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(i, v)| (*i, rat(*v, 1))).collect()
    }

    #[test]
    fn empty_matrix() {
        let m = SparseMatrix::new(0, 0);
        let (rank, ker) = rank_kernel(&m);
        assert_eq!(rank, 0);
        assert_eq!(ker.dim(), 0);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = SparseMatrix::identity(3);
        let (rank, ker) = rank_kernel(&m);
        assert_eq!(rank, 3);
        assert_eq!(ker.dim(), 0);
    }

    #[test]
    fn rank_one_kernel() {
        // [[1,2],[2,4]]: rank 1, kernel spanned by (-2, 1)
        let mut m = SparseMatrix::new(2, 2);
        m.set(0, 0, rat(1, 1));
        m.set(0, 1, rat(2, 1));
        m.set(1, 0, rat(2, 1));
        m.set(1, 1, rat(4, 1));
        let (rank, ker) = rank_kernel(&m);
        assert_eq!(rank, 1);
        assert_eq!(ker.dim(), 1);
        assert!(ker.contains(&sv(&[(0, -2), (1, 1)])));
        for v in ker.vectors() {
            assert!(m.mul_vec(v).is_empty());
        }
    }

    #[test]
    fn membership_cases() {
        let basis = SubspaceBasis::from_vectors(2, alloc::vec![sv(&[(0, 1)])]);
        assert_eq!(membership(&SparseVec::new(), &basis).unwrap(), Some(alloc::vec![rat(0, 1)]));
        assert_eq!(membership(&sv(&[(0, 1)]), &basis).unwrap(), Some(alloc::vec![rat(1, 1)]));
        assert_eq!(membership(&sv(&[(0, 1), (1, 1)]), &basis).unwrap(), None);
        let too_big = sv(&[(5, 1)]);
        assert!(matches!(membership(&too_big, &basis), Err(LinError::DimensionMismatch { .. })));
    }

    #[test]
    fn quotient_dims() {
        let kernel = SubspaceBasis::from_vectors(3, alloc::vec![sv(&[(0, 1)]), sv(&[(1, 1)])]);
        let image = SubspaceBasis::from_vectors(3, alloc::vec![sv(&[(0, 2)])]);
        assert_eq!(quotient_dimension(&image, &kernel).unwrap(), 1);
        assert_eq!(quotient_dimension(&kernel, &kernel).unwrap(), 0);
        assert_eq!(quotient_dimension(&SubspaceBasis::empty(3), &kernel).unwrap(), 2);
        let outside = SubspaceBasis::from_vectors(3, alloc::vec![sv(&[(2, 1)])]);
        assert!(matches!(
            quotient_dimension(&outside, &kernel),
            Err(LinError::ImageNotInKernel { index: 0 })
        ));
    }

    #[test]
    fn deterministic_rank_kernel() {
        let mut m = SparseMatrix::new(3, 4);
        m.set(0, 0, rat(2, 3));
        m.set(0, 2, rat(5, 1));
        m.set(1, 1, rat(7, 2));
        m.set(1, 3, rat(-1, 1));
        m.set(2, 0, rat(4, 3));
        m.set(2, 2, rat(10, 1));
        let a = rank_kernel(&m);
        let b = rank_kernel(&m);
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
        assert_eq!(a.0, rank_kernel(&m.transpose()).0);
    }
}
