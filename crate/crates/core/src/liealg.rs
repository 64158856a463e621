//! Lie algebras given by structure constants over ℚ, their modules, and
//! Chevalley-Eilenberg (co)homology.
//!
//! Conventions used throughout the crate:
//! * the cohomology coboundary acts on right modules as
//!   `∂(v⊗ω) = Σ_i vX_i ⊗ θ^i∧ω + v ⊗ ∂_dR(ω)` with
//!   `∂_dR(θ^k) = ½ C^k_{ij} θ^i∧θ^j`,
//! * the homology boundary uses the `(−1)^{k+1}` / `(−1)^{k+l}` signs,
//! * multi-indices are strictly increasing, permutation signs by inversion
//!   count.
//! `∂∘∂ = 0` tests arbitrate these choices.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::exactlin::{
    membership, quotient_dimension, rank_kernel, rat, vec_add_scaled, LinError, Rat, SparseMatrix,
    SparseVec, SubspaceBasis,
};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieError {
    NotASubalgebra { violating: (usize, usize) },
    NotAComplex { degree: usize },
    Lin(LinError),
    ShapeMismatch { what: &'static str },
}

impl core::fmt::Display for LieError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LieError::NotASubalgebra { violating: (i, j) } => {
                write!(f, "h not a subalgebra: bracket of h-basis {i},{j} leaves span(h)")
            }
            LieError::NotAComplex { degree } => {
                write!(f, "not a complex: d∘d != 0 at degree {degree}")
            }
            LieError::Lin(e) => write!(f, "{e}"),
            LieError::ShapeMismatch { what } => write!(f, "shape mismatch: {what}"),
        }
    }
}

impl From<LinError> for LieError {
    fn from(e: LinError) -> Self {
        LieError::Lin(e)
    }
}

/// Finite-dimensional Lie algebra as a full structure-constant tensor.
/// The tensor is stored as given (possibly broken, for negative tests);
/// `check_jacobi` reports antisymmetry and Jacobi violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// brackets[i][j] = coefficients of [X_i, X_j] in the basis
    brackets: Vec<Vec<SparseVec>>,
}

impl LieAlgebra {
    /// Builds from the brackets `[X_i, X_j]` for `i < j`; the rest is
    /// filled in antisymmetrically.
    pub fn new(basis_names: Vec<String>, upper: &[((usize, usize), SparseVec)]) -> Self {
        let dim = basis_names.len();
        let mut brackets = alloc::vec![alloc::vec![SparseVec::new(); dim]; dim];
        for ((i, j), v) in upper {
            assert!(i < j && *j < dim, "bracket index out of range");
            brackets[*i][*j] = v.clone();
            let mut neg = v.clone();
            for val in neg.values_mut() {
                *val = -val.clone();
            }
            brackets[*j][*i] = neg;
        }
        LieAlgebra { dim, basis_names, brackets }
    }

    /// Builds from a full tensor without symmetrizing (negative fixtures).
    pub fn from_full(basis_names: Vec<String>, brackets: Vec<Vec<SparseVec>>) -> Self {
        let dim = basis_names.len();
        assert!(brackets.len() == dim && brackets.iter().all(|r| r.len() == dim));
        LieAlgebra { dim, basis_names, brackets }
    }

    pub fn abelian(basis_names: Vec<String>) -> Self {
        LieAlgebra::new(basis_names, &[])
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                vec_add_scaled(&mut out, &(a * b), &self.brackets[*i][*j]);
            }
        }
        out
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis_names[i]
    }
}

/// Reports every antisymmetry or Jacobi violation of the structure tensor.
pub fn check_jacobi(g: &LieAlgebra) -> Report {
    let mut report = Report::new();
    for i in 0..g.dim {
        for j in i..g.dim {
            let mut sum = g.brackets[i][j].clone();
            vec_add_scaled(&mut sum, &rat(1, 1), &g.brackets[j][i]);
            if !sum.is_empty() {
                report.push(
                    "antisymmetry",
                    alloc::format!("[{},{}] + [{},{}]", g.name(i), g.name(j), g.name(j), g.name(i)),
                    fmt_vec(&sum, &g.basis_names),
                    String::from("0"),
                );
            }
        }
    }
    for i in 0..g.dim {
        for j in (i + 1)..g.dim {
            for k in (j + 1)..g.dim {
                let mut sum = g.bracket(&g.brackets[i][j], &basis_vec(k));
                vec_add_scaled(&mut sum, &rat(1, 1), &g.bracket(&g.brackets[j][k], &basis_vec(i)));
                vec_add_scaled(&mut sum, &rat(1, 1), &g.bracket(&g.brackets[k][i], &basis_vec(j)));
                if !sum.is_empty() {
                    report.push(
                        "jacobi",
                        alloc::format!("({},{},{})", g.name(i), g.name(j), g.name(k)),
                        fmt_vec(&sum, &g.basis_names),
                        String::from("0"),
                    );
                }
            }
        }
    }
    report
}

pub fn basis_vec(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, rat(1, 1));
    v
}

pub fn fmt_vec(v: &SparseVec, names: &[String]) -> String {
    if v.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (k, (i, c)) in v.iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        out.push_str(&alloc::format!("{}*{}", crate::exactlin::rat_to_string(c), names[*i]));
    }
    out
}

/// `δ_g(X_i) = Tr(ad X_i) = Σ_k C^k_{i,k}`, the trace-of-adjoint character.
pub fn adjoint_trace_character(g: &LieAlgebra) -> Vec<Rat> {
    (0..g.dim)
        .map(|i| {
            let mut tr = Rat::zero();
            for k in 0..g.dim {
                if let Some(c) = g.brackets[i][k].get(&k) {
                    tr += c;
                }
            }
            tr
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Module over a Lie algebra by explicit action matrices, `ρ(X_i)` acting
/// on coefficient columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieModule {
    pub dim: usize,
    pub side: Side,
    pub action: Vec<SparseMatrix>,
}

impl LieModule {
    pub fn new(dim: usize, side: Side, action: Vec<SparseMatrix>) -> Self {
        assert!(action.iter().all(|m| m.rows == dim && m.cols == dim));
        LieModule { dim, side, action }
    }

    pub fn trivial(g: &LieAlgebra, dim: usize) -> Self {
        LieModule::new(dim, Side::Right, alloc::vec![SparseMatrix::new(dim, dim); g.dim])
    }

    /// The representation law `ρ([X,Y]) = ±(ρXρY − ρYρX)` for the stored side.
    pub fn check(&self, g: &LieAlgebra) -> Report {
        let mut report = Report::new();
        for i in 0..g.dim {
            for j in (i + 1)..g.dim {
                let mut lhs = SparseMatrix::new(self.dim, self.dim);
                for (k, c) in g.bracket_basis(i, j) {
                    for ((r, s), v) in self.action[*k].iter() {
                        lhs.add_to(*r, *s, &(c * v));
                    }
                }
                let ij = self.action[i].mul(&self.action[j]);
                let ji = self.action[j].mul(&self.action[i]);
                let mut rhs = SparseMatrix::new(self.dim, self.dim);
                let (pos, neg) = match self.side {
                    Side::Left => (&ij, &ji),
                    Side::Right => (&ji, &ij),
                };
                for ((r, s), v) in pos.iter() {
                    rhs.add_to(*r, *s, v);
                }
                for ((r, s), v) in neg.iter() {
                    rhs.add_to(*r, *s, &-v.clone());
                }
                if lhs != rhs {
                    report.push(
                        "module-law",
                        alloc::format!("rho([{},{}])", g.name(i), g.name(j)),
                        alloc::format!("{lhs:?}"),
                        alloc::format!("{rhs:?}"),
                    );
                }
            }
        }
        report
    }

    /// Right-module view: right actions stay as stored, a left action
    /// `X·m` becomes `m·X := −X·m`.
    pub fn act_right(&self, i: usize, v: &SparseVec) -> SparseVec {
        let mut out = self.action[i].mul_vec(v);
        if self.side == Side::Left {
            for val in out.values_mut() {
                *val = -val.clone();
            }
        }
        out
    }

    /// Left-module view, mirror of `act_right`.
    pub fn act_left(&self, i: usize, v: &SparseVec) -> SparseVec {
        let mut out = self.action[i].mul_vec(v);
        if self.side == Side::Right {
            for val in out.values_mut() {
                *val = -val.clone();
            }
        }
        out
    }
}

/// Element of `V ⊗ ∧^q g*` (or `V ⊗ ∧^q g`, the interpretation is the
/// caller's) in the expanded basis: (module index, increasing multi-index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtCochain {
    pub degree: usize,
    pub terms: BTreeMap<(usize, Vec<usize>), Rat>,
}

impl ExtCochain {
    pub fn zero(degree: usize) -> Self {
        ExtCochain { degree, terms: BTreeMap::new() }
    }

    pub fn term(degree: usize, module_index: usize, multi_index: Vec<usize>, coeff: Rat) -> Self {
        let mut c = ExtCochain::zero(degree);
        c.add_term(module_index, multi_index, coeff);
        c
    }

    pub fn add_term(&mut self, module_index: usize, multi_index: Vec<usize>, coeff: Rat) {
        debug_assert!(multi_index.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(multi_index.len(), self.degree);
        if coeff.is_zero() {
            return;
        }
        let key = (module_index, multi_index);
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl core::fmt::Display for ExtCochain {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, idx), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*m{}", crate::exactlin::rat_to_string(c), a)?;
            for i in idx {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

/// Inserts `i` into the increasing multi-index `idx`; returns the sign of
/// the wedge reordering, or None when `i` already occurs.
pub fn insert_index(idx: &[usize], i: usize) -> Option<(i8, Vec<usize>)> {
    let pos = idx.partition_point(|j| *j < i);
    if idx.get(pos) == Some(&i) {
        return None;
    }
    let mut out = Vec::with_capacity(idx.len() + 1);
    out.extend_from_slice(&idx[..pos]);
    out.push(i);
    out.extend_from_slice(&idx[pos..]);
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    Some((sign, out))
}

/// Sorts an arbitrary index tuple into an increasing multi-index with the
/// permutation sign; None when an index repeats.
pub fn sort_indices(idx: &[usize]) -> Option<(i8, Vec<usize>)> {
    let mut v: Vec<usize> = idx.to_vec();
    let mut sign = 1i8;
    // insertion sort, counting inversions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// Chevalley-Eilenberg coboundary for a right module `V`:
/// `∂(v⊗ω) = Σ_i vX_i ⊗ θ^i∧ω + v ⊗ ∂_dR(ω)`.
pub fn ce_coboundary(g: &LieAlgebra, v: &LieModule, omega: &ExtCochain) -> ExtCochain {
    let q = omega.degree;
    let mut out = ExtCochain::zero((q + 1).min(g.dim.max(q + 1)));
    if q >= g.dim {
        return ExtCochain::zero(q + 1);
    }
    out.degree = q + 1;
    for ((a, idx), c) in &omega.terms {
        // action part
        for i in 0..g.dim {
            if let Some((sign, new_idx)) = insert_index(idx, i) {
                let moved = v.act_right(i, &basis_vec(*a));
                for (b, amp) in &moved {
                    out.add_term(*b, new_idx.clone(), c * amp * rat(sign as i64, 1));
                }
            }
        }
        // de Rham part: replace slot t by ½ C^k_{ij} θ^i∧θ^j, derivation signs
        for (t, k) in idx.iter().enumerate() {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(s, _)| *s != t).map(|(_, j)| *j).collect();
            let slot_sign = if t % 2 == 0 { 1i8 } else { -1i8 };
            for i in 0..g.dim {
                for j in (i + 1)..g.dim {
                    let ck = g.bracket_basis(i, j).get(k).cloned().unwrap_or_else(Rat::zero);
                    if ck.is_zero() {
                        continue;
                    }
                    let Some((s1, with_i)) = insert_index(&rest, i) else { continue };
                    let Some((s2, with_ij)) = insert_index(&with_i, j) else { continue };
                    // θ^i comes before θ^j at the front of `rest`: the sign of
                    // placing (i, j) is s2 * (sign of inserting i after j was
                    // placed)... computed directly: wedge θ^i∧θ^j∧rest.
                    let mut tuple = alloc::vec![i, j];
                    tuple.extend_from_slice(&rest);
                    let Some((s_tuple, sorted)) = sort_indices(&tuple) else { continue };
                    debug_assert_eq!(sorted, with_ij);
                    let _ = (s1, s2);
                    out.add_term(
                        *a,
                        sorted,
                        c * ck * rat((slot_sign * s_tuple) as i64, 1),
                    );
                }
            }
        }
    }
    out
}

/// Chevalley-Eilenberg homology boundary for a right module `V` on
/// `V ⊗ ∧^p g`.
pub fn lie_homology_boundary(g: &LieAlgebra, v: &LieModule, chain: &ExtCochain) -> ExtCochain {
    let p = chain.degree;
    assert!(p >= 1, "homology boundary needs degree >= 1");
    let mut out = ExtCochain::zero(p - 1);
    for ((a, idx), c) in &chain.terms {
        for (t, i) in idx.iter().enumerate() {
            let sign = if t % 2 == 0 { rat(1, 1) } else { rat(-1, 1) }; // (−1)^{t+1} with 1-based t
            let dropped: Vec<usize> = idx.iter().enumerate().filter(|(s, _)| *s != t).map(|(_, j)| *j).collect();
            let moved = v.act_right(*i, &basis_vec(*a));
            for (b, amp) in &moved {
                out.add_term(*b, dropped.clone(), c * amp * &sign);
            }
        }
        for t in 0..idx.len() {
            for s in (t + 1)..idx.len() {
                let sign = if (t + s) % 2 == 0 { rat(1, 1) } else { rat(-1, 1) }; // (−1)^{k+l}, 1-based
                let rest: Vec<usize> =
                    idx.iter().enumerate().filter(|(r, _)| *r != t && *r != s).map(|(_, j)| *j).collect();
                for (k, ck) in g.bracket_basis(idx[t], idx[s]) {
                    if let Some((s2, new_idx)) = insert_index(&rest, *k) {
                        out.add_term(*a, new_idx, c * ck * &sign * rat(s2 as i64, 1));
                    }
                }
            }
        }
    }
    out
}

/// Indexes the basis of `V ⊗ ∧^q span(complement)` deterministically.
pub fn wedge_basis(complement: &[usize], q: usize, vdim: usize) -> Vec<(usize, Vec<usize>)> {
    let mut keys = Vec::new();
    let subsets = increasing_subsets(complement, q);
    for a in 0..vdim {
        for idx in &subsets {
            keys.push((a, idx.clone()));
        }
    }
    keys
}

pub fn increasing_subsets(pool: &[usize], q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(pool: &[usize], q: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == q {
            out.push(current.clone());
            return;
        }
        for t in start..pool.len() {
            current.push(pool[t]);
            rec(pool, q, t + 1, current, out);
            current.pop();
        }
    }
    rec(pool, q, 0, &mut current, &mut out);
    out
}

/// Per degree q, an echelonized basis of `(V ⊗ ∧^q (g/h)*)^h`, the joint
/// kernel of the Lie derivatives along the h-basis.
pub fn relative_invariant_basis(
    g: &LieAlgebra,
    h: &[usize],
    v: &LieModule,
) -> Result<Vec<SubspaceBasis>, LieError> {
    check_subalgebra(g, h)?;
    let complement: Vec<usize> = (0..g.dim).filter(|i| !h.contains(i)).collect();
    let mut result = Vec::new();
    for q in 0..=complement.len() {
        let keys = wedge_basis(&complement, q, v.dim);
        let index_of: BTreeMap<(usize, Vec<usize>), usize> =
            keys.iter().cloned().enumerate().map(|(n, k)| (k, n)).collect();
        if h.is_empty() {
            let full = (0..keys.len()).map(basis_vec).collect();
            result.push(SubspaceBasis::from_vectors(keys.len(), full));
            continue;
        }
        let mut blocks = Vec::new();
        for x in h {
            let mut mat = SparseMatrix::new(keys.len(), keys.len());
            for (col, (a, idx)) in keys.iter().enumerate() {
            // module part of the Lie derivative
                let moved = v.act_right(*x, &basis_vec(*a));
                for (b, amp) in &moved {
                    let row = index_of[&(*b, idx.clone())];
                    mat.add_to(row, col, amp);
                }
                // coadjoint part: slot c ↦ −Σ_{c'} ⟨θ^c, [X, X_{c'}]⟩ θ^{c'}
                for (t, c_idx) in idx.iter().enumerate() {
                    for c2 in &complement {
                        let coeff = g.bracket_basis(*x, *c2).get(c_idx).cloned().unwrap_or_else(Rat::zero);
                        if coeff.is_zero() {
                            continue;
                        }
                        let mut new_idx = idx.clone();
                        new_idx[t] = *c2;
                        if let Some((sign, sorted)) = sort_indices(&new_idx) {
                            let row = index_of[&(*a, sorted)];
                            mat.add_to(row, col, &(-coeff * rat(sign as i64, 1)));
                        }
                    }
                }
            }
            blocks.push(mat);
        }
        let stacked = SparseMatrix::vstack(&blocks);
        let (_, kernel) = rank_kernel(&stacked);
        result.push(kernel);
    }
    Ok(result)
}

pub fn check_subalgebra(g: &LieAlgebra, h: &[usize]) -> Result<(), LieError> {
    for (a, i) in h.iter().enumerate() {
        for j in h.iter().skip(a + 1) {
            let br = g.bracket_basis(*i, *j);
            if br.keys().any(|k| !h.contains(k)) {
                return Err(LieError::NotASubalgebra { violating: (*i, *j) });
            }
        }
    }
    Ok(())
}

/// Cohomology dimensions (and chosen representative cocycles) of a complex
/// given by consecutive coboundary matrices `d_q : C^q → C^{q+1}`.
pub struct CohomologyTable {
    pub dims: Vec<usize>,
    pub representatives: Vec<Vec<SparseVec>>,
}

pub fn cohomology_dims(complex: &[SparseMatrix]) -> Result<CohomologyTable, LieError> {
    for (q, pair) in complex.windows(2).enumerate() {
        if !pair[1].mul(&pair[0]).is_zero() {
            return Err(LieError::NotAComplex { degree: q });
        }
    }
    let n = complex.len();
    let mut dims = Vec::new();
    let mut reps = Vec::new();
    for q in 0..=n {
        let kernel = if q < n {
            rank_kernel(&complex[q]).1
        } else {
            let dim_last = complex.last().map_or(0, |d| d.rows);
            SubspaceBasis::from_vectors(dim_last, (0..dim_last).map(basis_vec).collect())
        };
        let image = if q == 0 {
            SubspaceBasis::empty(kernel.ambient_dim)
        } else {
            let d = &complex[q - 1];
            let cols = d.transpose().to_rows();
            SubspaceBasis::from_vectors(d.rows, cols)
        };
        let dim = quotient_dimension(&image, &kernel)?;
        dims.push(dim);
        let mut chosen = Vec::new();
        let mut span = image.clone();
        for v in kernel.vectors() {
            let before = span.dim();
            if span.insert_reduced(v.clone()) {
                debug_assert_eq!(span.dim(), before + 1);
                let (_, rem) = image.reduce(v);
                chosen.push(rem);
            }
        }
        debug_assert_eq!(chosen.len(), dim);
        reps.push(chosen);
    }
    Ok(CohomologyTable { dims, representatives: reps })
}

/// Checks `membership(v, basis)` semantics for callers that need an error
/// on dimension mismatch but treat non-membership as data.
pub fn in_span(v: &SparseVec, basis: &SubspaceBasis) -> bool {
    membership(v, basis).map(|m| m.is_some()).unwrap_or(false)
}

pub mod fixtures {
    use super::*;
    use alloc::string::ToString;

    pub fn sl2() -> LieAlgebra {
        // basis (H, E, F): [H,E] = 2E, [H,F] = −2F, [E,F] = H
        LieAlgebra::new(
            alloc::vec!["H".to_string(), "E".to_string(), "F".to_string()],
            &[
                ((0, 1), [(1usize, rat(2, 1))].into_iter().collect()),
                ((0, 2), [(2usize, rat(-2, 1))].into_iter().collect()),
                ((1, 2), [(0usize, rat(1, 1))].into_iter().collect()),
            ],
        )
    }

    pub fn borel() -> LieAlgebra {
        // basis (H, E): [H,E] = 2E
        LieAlgebra::new(
            alloc::vec!["H".to_string(), "E".to_string()],
            &[((0, 1), [(1usize, rat(2, 1))].into_iter().collect())],
        )
    }

    pub fn ax_b() -> LieAlgebra {
        // basis (X, Y): [X,Y] = Y
        LieAlgebra::new(
            alloc::vec!["X".to_string(), "Y".to_string()],
            &[((0, 1), [(1usize, rat(1, 1))].into_iter().collect())],
        )
    }

    pub fn adjoint_module(g: &LieAlgebra) -> LieModule {
        let mut mats = Vec::new();
        for i in 0..g.dim {
            let mut m = SparseMatrix::new(g.dim, g.dim);
            for j in 0..g.dim {
                for (k, c) in g.bracket_basis(i, j) {
                    m.add_to(*k, j, c);
                }
            }
            mats.push(m);
        }
        LieModule::new(g.dim, Side::Left, mats)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn jacobi_reports() {
        assert!(check_jacobi(&sl2()).ok());
        assert!(check_jacobi(&LieAlgebra::abelian(alloc::vec!["a".to_string(), "b".to_string()])).ok());
        // break one slot of sl2 without fixing the antisymmetric partner
        let mut broken = sl2();
        broken.brackets[1][2].insert(0, rat(2, 1));
        assert!(!check_jacobi(&broken).ok());
    }

    #[test]
    fn trace_character() {
        assert_eq!(adjoint_trace_character(&borel()), alloc::vec![rat(2, 1), rat(0, 1)]);
        assert_eq!(adjoint_trace_character(&sl2()), alloc::vec![rat(0, 1); 3]);
        let ab = LieAlgebra::abelian(alloc::vec!["a".to_string(), "b".to_string()]);
        assert_eq!(adjoint_trace_character(&ab), alloc::vec![rat(0, 1); 2]);
        // δ vanishes on brackets
        let g = sl2();
        let delta = adjoint_trace_character(&g);
        for i in 0..g.dim {
            for j in 0..g.dim {
                let mut s = Rat::zero();
                for (k, c) in g.bracket_basis(i, j) {
                    s += c * &delta[*k];
                }
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn coboundary_degree_zero() {
        // ∂0(v) = Σ vX_i ⊗ θ^i on the ax+b algebra with adjoint coefficients
        let g = ax_b();
        let v = adjoint_module(&g);
        let c = ExtCochain::term(0, 0, alloc::vec![], rat(1, 1)); // m = X
        let d = ce_coboundary(&g, &v, &c);
        // X·X = 0 (right conversion of left adjoint): m⊳X_i = −[X_i, X]
        // −[X,X] = 0, −[Y,X] = Y
        let mut expected = ExtCochain::zero(1);
        expected.add_term(1, alloc::vec![1], rat(1, 1));
        assert_eq!(d, expected);
    }

    #[test]
    fn de_rham_sign() {
        // For [X,Y] = Y and trivial coefficients: ∂(θ^Y) = θ^X∧θ^Y; ∂(θ^X) = 0.
        let g = ax_b();
        let v = LieModule::trivial(&g, 1);
        let dy = ce_coboundary(&g, &v, &ExtCochain::term(1, 0, alloc::vec![1], rat(1, 1)));
        assert_eq!(dy, ExtCochain::term(2, 0, alloc::vec![0, 1], rat(1, 1)));
        let dx = ce_coboundary(&g, &v, &ExtCochain::term(1, 0, alloc::vec![0], rat(1, 1)));
        assert!(dx.is_zero());
    }

    #[test]
    fn abelian_coboundary_vanishes() {
        let g = LieAlgebra::abelian(alloc::vec!["a".to_string(), "b".to_string()]);
        let v = LieModule::trivial(&g, 1);
        for q in 0..2 {
            for idx in increasing_subsets(&[0, 1], q) {
                let c = ExtCochain::term(q, 0, idx, rat(1, 1));
                assert!(ce_coboundary(&g, &v, &c).is_zero());
            }
        }
    }

    #[test]
    fn coboundary_squares_to_zero() {
        for (g, v) in [
            (sl2(), fixtures::adjoint_module(&sl2())),
            (sl2(), LieModule::trivial(&sl2(), 1)),
            (ax_b(), fixtures::adjoint_module(&ax_b())),
        ] {
            for q in 0..g.dim {
                for a in 0..v.dim {
                    for idx in increasing_subsets(&(0..g.dim).collect::<Vec<_>>(), q) {
                        let c = ExtCochain::term(q, a, idx, rat(1, 1));
                        let dd = ce_coboundary(&g, &v, &ce_coboundary(&g, &v, &c));
                        assert!(dd.is_zero(), "d²≠0 at q={q} a={a}");
                    }
                }
            }
        }
    }

    #[test]
    fn homology_boundary_examples() {
        let g = sl2();
        let v = LieModule::trivial(&g, 1);
        // ∂(v⊗E∧F) = −v⊗H with trivial coefficients
        let c = ExtCochain::term(2, 0, alloc::vec![1, 2], rat(1, 1));
        let d = lie_homology_boundary(&g, &v, &c);
        assert_eq!(d, ExtCochain::term(1, 0, alloc::vec![0], rat(-1, 1)));
        // p = 1 is the plain action
        let adj = adjoint_module(&g);
        let c1 = ExtCochain::term(1, 1, alloc::vec![0], rat(1, 1)); // m = E ⊗ H
        let d1 = lie_homology_boundary(&g, &adj, &c1);
        // E◁H = −[H,E] = −2E
        assert_eq!(d1, ExtCochain::term(0, 1, alloc::vec![], rat(-2, 1)));
        // ∂∘∂ = 0 on the full adjoint complex
        for p in 2..=3 {
            for a in 0..3 {
                for idx in increasing_subsets(&[0, 1, 2], p) {
                    let c = ExtCochain::term(p, a, idx, rat(1, 1));
                    let dd = lie_homology_boundary(&g, &adj, &lie_homology_boundary(&g, &adj, &c));
                    assert!(dd.is_zero());
                }
            }
        }
    }

    #[test]
    fn relative_invariants() {
        let g = sl2();
        let v = LieModule::trivial(&g, 1);
        // h = 0: full space in every degree
        let full = relative_invariant_basis(&g, &[], &v).unwrap();
        assert_eq!(full.iter().map(|b| b.dim()).collect::<Vec<_>>(), alloc::vec![1, 3, 3, 1]);
        // h = span{H}: no invariants in degree 1 (weights ±2)
        let rel = relative_invariant_basis(&g, &[0], &v).unwrap();
        assert_eq!(rel[1].dim(), 0);
        // h = g on the adjoint: degree 0 invariants = center = 0
        let adj = adjoint_module(&g);
        let all = relative_invariant_basis(&g, &[0, 1, 2], &adj).unwrap();
        assert_eq!(all[0].dim(), 0);
        // h not a subalgebra
        assert!(matches!(
            relative_invariant_basis(&g, &[1, 2], &v),
            Err(LieError::NotASubalgebra { .. })
        ));
    }

    fn ce_matrix(g: &LieAlgebra, v: &LieModule, q: usize) -> SparseMatrix {
        let all: Vec<usize> = (0..g.dim).collect();
        let dom = wedge_basis(&all, q, v.dim);
        let cod = wedge_basis(&all, q + 1, v.dim);
        let cod_index: BTreeMap<_, _> = cod.iter().cloned().enumerate().map(|(n, k)| (k, n)).collect();
        let mut m = SparseMatrix::new(cod.len(), dom.len());
        for (col, (a, idx)) in dom.iter().enumerate() {
            let image = ce_coboundary(g, v, &ExtCochain::term(q, *a, idx.clone(), rat(1, 1)));
            for ((b, jdx), c) in &image.terms {
                m.add_to(cod_index[&(*b, jdx.clone())], col, c);
            }
        }
        m
    }

    #[test]
    fn cohomology_tables() {
        let g = sl2();
        let triv = LieModule::trivial(&g, 1);
        let complex: Vec<SparseMatrix> = (0..3).map(|q| ce_matrix(&g, &triv, q)).collect();
        let table = cohomology_dims(&complex).unwrap();
        assert_eq!(table.dims, alloc::vec![1, 0, 0, 1]);

        let adj = adjoint_module(&g);
        let complex: Vec<SparseMatrix> = (0..3).map(|q| ce_matrix(&g, &adj, q)).collect();
        assert_eq!(cohomology_dims(&complex).unwrap().dims, alloc::vec![0, 0, 0, 0]);

        let g2 = ax_b();
        let triv2 = LieModule::trivial(&g2, 1);
        let complex: Vec<SparseMatrix> = (0..2).map(|q| ce_matrix(&g2, &triv2, q)).collect();
        let table = cohomology_dims(&complex).unwrap();
        assert_eq!(table.dims, alloc::vec![1, 1, 0]);
        // representative of H^1 is θ^X (closed, not exact)
        assert_eq!(table.representatives[1].len(), 1);

        // a non-complex is rejected
        let id = SparseMatrix::identity(2);
        assert!(matches!(
            cohomology_dims(&[id.clone(), id]),
            Err(LieError::NotAComplex { degree: 0 })
        ));
    }
}
