//! Matched pairs of Lie algebras, the double crossed sum `g1 ⋈ g2`, PBW
//! straightening in enveloping algebras, and the factorization
//! `Ψ: U(g2)⊗U(g1) → U(g1)⊗U(g2)` with the mutual actions it induces.
//!
//! PBW straightening rewrites `X_b X_a → X_a X_b + [X_b, X_a]` for `a < b`
//! in the fixed basis order and recurses on the lower-degree tail; it
//! terminates by the (total degree, inversion count) measure.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactlin::{rat, rat_to_string, vec_add_scaled, Rat, SparseVec};
use crate::liealg::{basis_vec, fmt_vec, LieAlgebra};
use crate::report::Report;

/// PBW monomial: exponent vector over the ordered generator list.
pub type PbwMonomial = Vec<u32>;

/// Element of an enveloping algebra in PBW normal form.
pub type UElement = BTreeMap<PbwMonomial, Rat>;

pub fn u_one(dim: usize) -> UElement {
    let mut u = UElement::new();
    u.insert(alloc::vec![0; dim], Rat::one());
    u
}

pub fn u_gen(dim: usize, i: usize) -> UElement {
    let mut m = alloc::vec![0u32; dim];
    m[i] = 1;
    let mut u = UElement::new();
    u.insert(m, Rat::one());
    u
}

pub fn u_add_term(u: &mut UElement, m: PbwMonomial, c: Rat) {
    if c.is_zero() {
        return;
    }
    match u.get_mut(&m) {
        Some(cur) => {
            *cur += c;
            if cur.is_zero() {
                u.remove(&m);
            }
        }
        None => {
            u.insert(m, c);
        }
    }
}

pub fn u_scale_into(dst: &mut UElement, src: &UElement, c: &Rat) {
    for (m, v) in src {
        u_add_term(dst, m.clone(), v * c);
    }
}

pub fn u_total_degree(u: &UElement) -> u32 {
    u.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
}

pub fn u_is_zero(u: &UElement) -> bool {
    u.is_empty()
}

pub fn fmt_monomial(m: &PbwMonomial, names: &[String]) -> String {
    let mut out = String::new();
    for (i, e) in m.iter().enumerate() {
        if *e == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(&names[i]);
        if *e > 1 {
            out.push_str(&alloc::format!("^{e}"));
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

pub fn fmt_u(u: &UElement, names: &[String]) -> String {
    if u.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (k, (m, c)) in u.iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        out.push_str(&rat_to_string(c));
        out.push('*');
        out.push_str(&fmt_monomial(m, names));
    }
    out
}

/// Enveloping-algebra operations for a fixed Lie algebra: product by
/// straightening, primitive coproduct, counit and antipode. Straightening
/// results are memoized per word.
pub struct UAlgebra<'a> {
    pub lie: &'a LieAlgebra,
    memo: core::cell::RefCell<BTreeMap<Vec<usize>, UElement>>,
}

impl<'a> UAlgebra<'a> {
    pub fn new(lie: &'a LieAlgebra) -> Self {
        UAlgebra { lie, memo: core::cell::RefCell::new(BTreeMap::new()) }
    }

    pub fn one(&self) -> UElement {
        u_one(self.lie.dim)
    }

    pub fn gen(&self, i: usize) -> UElement {
        u_gen(self.lie.dim, i)
    }

    fn monomial_to_word(m: &PbwMonomial) -> Vec<usize> {
        let mut w = Vec::new();
        for (i, e) in m.iter().enumerate() {
            for _ in 0..*e {
                w.push(i);
            }
        }
        w
    }

    /// Straightens a word of generator indices into PBW normal form.
    pub fn straighten(&self, word: &[usize]) -> UElement {
        // find the first descent
        let descent = word.windows(2).position(|w| w[0] > w[1]);
        let Some(t) = descent else {
            let mut m = alloc::vec![0u32; self.lie.dim];
            for i in word {
                m[*i] += 1;
            }
            let mut u = UElement::new();
            u.insert(m, Rat::one());
            return u;
        };
        if let Some(hit) = self.memo.borrow().get(word) {
            return hit.clone();
        }
        // X_b X_a = X_a X_b + [X_b, X_a]
        let mut swapped = word.to_vec();
        swapped.swap(t, t + 1);
        let mut out = self.straighten(&swapped);
        for (k, c) in self.lie.bracket_basis(word[t], word[t + 1]) {
            let mut shorter: Vec<usize> = Vec::with_capacity(word.len() - 1);
            shorter.extend_from_slice(&word[..t]);
            shorter.push(*k);
            shorter.extend_from_slice(&word[t + 2..]);
            let part = self.straighten(&shorter);
            u_scale_into(&mut out, &part, c);
        }
        self.memo.borrow_mut().insert(word.to_vec(), out.clone());
        out
    }

    pub fn mul(&self, a: &UElement, b: &UElement) -> UElement {
        let mut out = UElement::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let mut word = Self::monomial_to_word(ma);
                word.extend(Self::monomial_to_word(mb));
                let s = self.straighten(&word);
                u_scale_into(&mut out, &s, &(ca * cb));
            }
        }
        out
    }

    /// Left multiplication by a single generator, the common fast path.
    pub fn mul_gen_left(&self, i: usize, b: &UElement) -> UElement {
        self.mul(&self.gen(i), b)
    }

    pub fn counit(&self, u: &UElement) -> Rat {
        u.get(&alloc::vec![0u32; self.lie.dim]).cloned().unwrap_or_else(Rat::zero)
    }

    /// Primitive coproduct, expanded into the PBW basis of both legs.
    pub fn coproduct(&self, u: &UElement) -> BTreeMap<(PbwMonomial, PbwMonomial), Rat> {
        let mut out = BTreeMap::new();
        for (m, c) in u {
            for (left, right, mult) in split_monomial(m) {
                let v = c * &mult;
                add_pair(&mut out, (left, right), v);
            }
        }
        out
    }

    /// Iterated coproduct with `legs` tensor factors.
    pub fn coproduct_iter(&self, u: &UElement, legs: usize) -> BTreeMap<Vec<PbwMonomial>, Rat> {
        let mut out = BTreeMap::new();
        for (m, c) in u {
            for (parts, mult) in split_monomial_multi(m, legs) {
                let v = c * &mult;
                match out.get_mut(&parts) {
                    Some(cur) => {
                        *cur += v;
                        if Rat::is_zero(cur) {
                            out.remove(&parts);
                        }
                    }
                    None => {
                        if !v.is_zero() {
                            out.insert(parts, v);
                        }
                    }
                }
            }
        }
        out
    }

    /// Antipode: reverse the word with a sign, then re-straighten.
    pub fn antipode(&self, u: &UElement) -> UElement {
        let mut out = UElement::new();
        for (m, c) in u {
            let mut word = Self::monomial_to_word(m);
            word.reverse();
            let sign = if word.len() % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            let s = self.straighten(&word);
            u_scale_into(&mut out, &s, &(c * sign));
        }
        out
    }

    /// Algebra-map extension of a character on generators.
    pub fn character(&self, values: &[Rat], u: &UElement) -> Rat {
        let mut total = Rat::zero();
        for (m, c) in u {
            let mut prod = c.clone();
            for (i, e) in m.iter().enumerate() {
                for _ in 0..*e {
                    prod *= &values[i];
                }
            }
            total += prod;
        }
        total
    }
}

fn add_pair(
    out: &mut BTreeMap<(PbwMonomial, PbwMonomial), Rat>,
    key: (PbwMonomial, PbwMonomial),
    v: Rat,
) {
    if v.is_zero() {
        return;
    }
    match out.get_mut(&key) {
        Some(cur) => {
            *cur += v;
            if cur.is_zero() {
                out.remove(&key);
            }
        }
        None => {
            out.insert(key, v);
        }
    }
}

pub fn binomial(n: u32, k: u32) -> Rat {
    let mut out = Rat::one();
    for t in 0..k {
        out *= rat((n - t) as i64, 1);
        out /= rat((t + 1) as i64, 1);
    }
    out
}

/// All splittings `m = left + right` with the product of binomial weights.
pub fn split_monomial(m: &PbwMonomial) -> Vec<(PbwMonomial, PbwMonomial, Rat)> {
    let mut parts = alloc::vec![(Vec::new(), Vec::new(), Rat::one())];
    for e in m {
        let mut next = Vec::new();
        for (l, r, c) in &parts {
            for k in 0..=*e {
                let mut l2 = l.clone();
                let mut r2 = r.clone();
                l2.push(k);
                r2.push(e - k);
                next.push((l2, r2, c * binomial(*e, k)));
            }
        }
        parts = next;
    }
    parts
}

/// All splittings of `m` into `legs` parts with multinomial weights.
pub fn split_monomial_multi(m: &PbwMonomial, legs: usize) -> Vec<(Vec<PbwMonomial>, Rat)> {
    assert!(legs >= 1);
    let mut parts: Vec<(Vec<PbwMonomial>, Rat)> =
        alloc::vec![(alloc::vec![alloc::vec![0u32; m.len()]; legs], Rat::one())];
    for (i, e) in m.iter().enumerate() {
        let mut next = Vec::new();
        for (ms, c) in &parts {
            for comp in compositions(*e, legs) {
                let mut ms2 = ms.clone();
                let mut weight = c.clone();
                let mut rem = *e;
                for (leg, k) in comp.iter().enumerate() {
                    ms2[leg][i] = *k;
                    weight *= binomial(rem, *k);
                    rem -= k;
                }
                next.push((ms2, weight));
            }
        }
        parts = next;
    }
    parts
}

fn compositions(total: u32, legs: usize) -> Vec<Vec<u32>> {
    if legs == 1 {
        return alloc::vec![alloc::vec![total]];
    }
    let mut out = Vec::new();
    for k in 0..=total {
        for mut rest in compositions(total - k, legs - 1) {
            let mut v = alloc::vec![k];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Matched pair of Lie algebras with the mutual action tensors
/// `ζ_a ◁ X_i` (valued in g2) and `ζ_a ▷ X_i` (valued in g1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedPair {
    pub g1: LieAlgebra,
    pub g2: LieAlgebra,
    /// right_action[a][i] = ζ_a ◁ X_i ∈ g2
    pub right_action: Vec<Vec<SparseVec>>,
    /// left_action[a][i] = ζ_a ▷ X_i ∈ g1
    pub left_action: Vec<Vec<SparseVec>>,
}

impl MatchedPair {
    pub fn trivial(g1: LieAlgebra, g2: LieAlgebra) -> Self {
        let right = alloc::vec![alloc::vec![SparseVec::new(); g1.dim]; g2.dim];
        let left = alloc::vec![alloc::vec![SparseVec::new(); g1.dim]; g2.dim];
        MatchedPair { g1, g2, right_action: right, left_action: left }
    }

    /// `ζ ◁ X` extended bilinearly; ζ over g2, X over g1.
    pub fn act_right(&self, zeta: &SparseVec, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, c) in zeta {
            for (i, d) in x {
                vec_add_scaled(&mut out, &(c * d), &self.right_action[*a][*i]);
            }
        }
        out
    }

    /// `ζ ▷ X` extended bilinearly.
    pub fn act_left(&self, zeta: &SparseVec, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, c) in zeta {
            for (i, d) in x {
                vec_add_scaled(&mut out, &(c * d), &self.left_action[*a][*i]);
            }
        }
        out
    }
}

/// Verifies the four matched-pair axioms on all basis triples.
pub fn check_matched_pair(mp: &MatchedPair) -> Report {
    let mut report = Report::new();
    let n1 = mp.g1.dim;
    let n2 = mp.g2.dim;
    let g1n = &mp.g1.basis_names;
    let g2n = &mp.g2.basis_names;
    // mp-L-1: [ζ,ξ]▷X = ζ▷(ξ▷X) − ξ▷(ζ▷X)
    for a in 0..n2 {
        for b in 0..n2 {
            for i in 0..n1 {
                let za = basis_vec(a);
                let zb = basis_vec(b);
                let x = basis_vec(i);
                let lhs = mp.act_left(&mp.g2.bracket(&za, &zb), &x);
                let mut rhs = mp.act_left(&za, &mp.act_left(&zb, &x));
                vec_add_scaled(&mut rhs, &rat(-1, 1), &mp.act_left(&zb, &mp.act_left(&za, &x)));
                if lhs != rhs {
                    report.push(
                        "mp-L-1",
                        alloc::format!("(zeta,xi,X) = ({},{},{})", g2n[a], g2n[b], g1n[i]),
                        fmt_vec(&lhs, g1n),
                        fmt_vec(&rhs, g1n),
                    );
                }
            }
        }
    }
    // mp-L-2: ζ◁[X,Y] = (ζ◁X)◁Y − (ζ◁Y)◁X
    for a in 0..n2 {
        for i in 0..n1 {
            for j in 0..n1 {
                let z = basis_vec(a);
                let x = basis_vec(i);
                let y = basis_vec(j);
                let lhs = mp.act_right(&z, &mp.g1.bracket(&x, &y));
                let mut rhs = mp.act_right(&mp.act_right(&z, &x), &y);
                vec_add_scaled(&mut rhs, &rat(-1, 1), &mp.act_right(&mp.act_right(&z, &y), &x));
                if lhs != rhs {
                    report.push(
                        "mp-L-2",
                        alloc::format!("(zeta,X,Y) = ({},{},{})", g2n[a], g1n[i], g1n[j]),
                        fmt_vec(&lhs, g2n),
                        fmt_vec(&rhs, g2n),
                    );
                }
            }
        }
    }
    // mp-L-3: ζ▷[X,Y] = [ζ▷X,Y] + [X,ζ▷Y] + (ζ◁X)▷Y − (ζ◁Y)▷X
    for a in 0..n2 {
        for i in 0..n1 {
            for j in 0..n1 {
                let z = basis_vec(a);
                let x = basis_vec(i);
                let y = basis_vec(j);
                let lhs = mp.act_left(&z, &mp.g1.bracket(&x, &y));
                let mut rhs = mp.g1.bracket(&mp.act_left(&z, &x), &y);
                vec_add_scaled(&mut rhs, &rat(1, 1), &mp.g1.bracket(&x, &mp.act_left(&z, &y)));
                vec_add_scaled(&mut rhs, &rat(1, 1), &mp.act_left(&mp.act_right(&z, &x), &y));
                vec_add_scaled(&mut rhs, &rat(-1, 1), &mp.act_left(&mp.act_right(&z, &y), &x));
                if lhs != rhs {
                    report.push(
                        "mp-L-3",
                        alloc::format!("(zeta,X,Y) = ({},{},{})", g2n[a], g1n[i], g1n[j]),
                        fmt_vec(&lhs, g1n),
                        fmt_vec(&rhs, g1n),
                    );
                }
            }
        }
    }
    // mp-L-4: [ζ,ξ]◁X = [ζ◁X,ξ] + [ζ,ξ◁X] + ζ◁(ξ▷X) − ξ◁(ζ▷X)
    for a in 0..n2 {
        for b in 0..n2 {
            for i in 0..n1 {
                let za = basis_vec(a);
                let zb = basis_vec(b);
                let x = basis_vec(i);
                let lhs = mp.act_right(&mp.g2.bracket(&za, &zb), &x);
                let mut rhs = mp.g2.bracket(&mp.act_right(&za, &x), &zb);
                vec_add_scaled(&mut rhs, &rat(1, 1), &mp.g2.bracket(&za, &mp.act_right(&zb, &x)));
                vec_add_scaled(&mut rhs, &rat(1, 1), &mp.act_right(&za, &mp.act_left(&zb, &x)));
                vec_add_scaled(&mut rhs, &rat(-1, 1), &mp.act_right(&zb, &mp.act_left(&za, &x)));
                if lhs != rhs {
                    report.push(
                        "mp-L-4",
                        alloc::format!("(zeta,xi,X) = ({},{},{})", g2n[a], g2n[b], g1n[i]),
                        fmt_vec(&lhs, g2n),
                        fmt_vec(&rhs, g2n),
                    );
                }
            }
        }
    }
    report
}

/// The double crossed sum `g1 ⋈ g2` on `g1 ⊕ g2`, g1 indices first.
pub fn double_crossed_sum(mp: &MatchedPair) -> LieAlgebra {
    let n1 = mp.g1.dim;
    let n2 = mp.g2.dim;
    let dim = n1 + n2;
    let mut names = mp.g1.basis_names.clone();
    names.extend(mp.g2.basis_names.iter().cloned());
    let shift = |v: &SparseVec, by: usize| -> SparseVec { v.iter().map(|(i, c)| (i + by, c.clone())).collect() };
    let mut brackets = alloc::vec![alloc::vec![SparseVec::new(); dim]; dim];
    for p in 0..dim {
        for q in 0..dim {
            let (x, zeta) = split_basis(p, n1);
            let (z, xi) = split_basis(q, n1);
            // [X⊕ζ, Z⊕ξ] = ([X,Z] + ζ▷Z − ξ▷X) ⊕ ([ζ,ξ] + ζ◁Z − ξ◁X)
            let mut top = SparseVec::new();
            let mut bottom = SparseVec::new();
            if let (Some(i), Some(j)) = (x, z) {
                vec_add_scaled(&mut top, &rat(1, 1), mp.g1.bracket_basis(i, j));
            }
            if let (Some(a), Some(j)) = (zeta, z) {
                vec_add_scaled(&mut top, &rat(1, 1), &mp.left_action[a][j]);
                vec_add_scaled(&mut bottom, &rat(1, 1), &mp.right_action[a][j]);
            }
            if let (Some(b), Some(i)) = (xi, x) {
                vec_add_scaled(&mut top, &rat(-1, 1), &mp.left_action[b][i]);
                vec_add_scaled(&mut bottom, &rat(-1, 1), &mp.right_action[b][i]);
            }
            if let (Some(a), Some(b)) = (zeta, xi) {
                vec_add_scaled(&mut bottom, &rat(1, 1), mp.g2.bracket_basis(a, b));
            }
            let mut out = top;
            vec_add_scaled(&mut out, &rat(1, 1), &shift(&bottom, n1));
            brackets[p][q] = out;
        }
    }
    LieAlgebra::from_full(names, brackets)
}

fn split_basis(p: usize, n1: usize) -> (Option<usize>, Option<usize>) {
    if p < n1 {
        (Some(p), None)
    } else {
        (None, Some(p - n1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    PartNotSubalgebra { part: &'static str, violating: (usize, usize) },
}

impl core::fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DecomposeError::PartNotSubalgebra { part, violating: (i, j) } => {
                write!(f, "{part} part not a subalgebra at bracket ({i},{j})")
            }
        }
    }
}

/// Splits a Lie algebra along a basis partition into a matched pair;
/// the actions are read off `[ζ, X] = ζ▷X + ζ◁X`.
pub fn decompose(a: &LieAlgebra, part1: &[usize], part2: &[usize]) -> Result<MatchedPair, DecomposeError> {
    assert_eq!(part1.len() + part2.len(), a.dim, "partition must cover the basis");
    let sub = |indices: &[usize], name: &'static str| -> Result<LieAlgebra, DecomposeError> {
        let names = indices.iter().map(|i| a.basis_names[*i].clone()).collect();
        let pos: BTreeMap<usize, usize> = indices.iter().enumerate().map(|(t, i)| (*i, t)).collect();
        let mut brackets = alloc::vec![alloc::vec![SparseVec::new(); indices.len()]; indices.len()];
        for (t, i) in indices.iter().enumerate() {
            for (s, j) in indices.iter().enumerate() {
                for (k, c) in a.bracket_basis(*i, *j) {
                    match pos.get(k) {
                        Some(kk) => {
                            brackets[t][s].insert(*kk, c.clone());
                        }
                        None => return Err(DecomposeError::PartNotSubalgebra { part: name, violating: (*i, *j) }),
                    }
                }
            }
        }
        Ok(LieAlgebra::from_full(names, brackets))
    };
    let g1 = sub(part1, "first")?;
    let g2 = sub(part2, "second")?;
    let pos1: BTreeMap<usize, usize> = part1.iter().enumerate().map(|(t, i)| (*i, t)).collect();
    let pos2: BTreeMap<usize, usize> = part2.iter().enumerate().map(|(t, i)| (*i, t)).collect();
    let mut right = alloc::vec![alloc::vec![SparseVec::new(); g1.dim]; g2.dim];
    let mut left = alloc::vec![alloc::vec![SparseVec::new(); g1.dim]; g2.dim];
    for (t2, zeta) in part2.iter().enumerate() {
        for (t1, x) in part1.iter().enumerate() {
            for (k, c) in a.bracket_basis(*zeta, *x) {
                if let Some(kk) = pos1.get(k) {
                    left[t2][t1].insert(*kk, c.clone());
                } else {
                    right[t2][t1].insert(pos2[k], c.clone());
                }
            }
        }
    }
    Ok(MatchedPair { g1, g2, right_action: right, left_action: left })
}

/// `U(g1) ⊗ U(g2)` with both legs in PBW normal form.
pub type TensorUU = BTreeMap<(PbwMonomial, PbwMonomial), Rat>;

/// Factorization context: the double crossed sum and its enveloping algebra.
pub struct Factorization<'a> {
    pub mp: &'a MatchedPair,
    pub sum: LieAlgebra,
}

impl<'a> Factorization<'a> {
    pub fn new(mp: &'a MatchedPair) -> Self {
        Factorization { mp, sum: double_crossed_sum(mp) }
    }

    fn embed(&self, m: &PbwMonomial, offset: usize) -> PbwMonomial {
        let mut out = alloc::vec![0u32; self.sum.dim];
        for (i, e) in m.iter().enumerate() {
            out[i + offset] = *e;
        }
        out
    }

    /// `Ψ(v ⊗ u)`: multiply `i2(v) i1(u)` inside `U(g1 ⋈ g2)` and read the
    /// PBW factorization with g1 generators in front.
    pub fn psi(&self, v: &UElement, u: &UElement) -> TensorUU {
        let n1 = self.mp.g1.dim;
        let alg = UAlgebra::new(&self.sum);
        let mut big_v = UElement::new();
        for (m, c) in v {
            big_v.insert(self.embed(m, n1), c.clone());
        }
        let mut big_u = UElement::new();
        for (m, c) in u {
            big_u.insert(self.embed(m, 0), c.clone());
        }
        let product = alg.mul(&big_v, &big_u);
        let mut out = TensorUU::new();
        for (m, c) in product {
            let u_part: PbwMonomial = m[..n1].to_vec();
            let v_part: PbwMonomial = m[n1..].to_vec();
            add_pair(&mut out, (u_part, v_part), c);
        }
        out
    }

    /// Recombines the legs of a `U(g1)⊗U(g2)` element inside `U(g1 ⋈ g2)`.
    pub fn recombine(&self, t: &TensorUU) -> UElement {
        let n1 = self.mp.g1.dim;
        let alg = UAlgebra::new(&self.sum);
        let mut out = UElement::new();
        for ((u_part, v_part), c) in t {
            let prod = alg.mul(
                &[(self.embed(u_part, 0), Rat::one())].into_iter().collect(),
                &[(self.embed(v_part, n1), Rat::one())].into_iter().collect(),
            );
            u_scale_into(&mut out, &prod, c);
        }
        out
    }

    /// Image of `i2(v) i1(u)` in `U(g1 ⋈ g2)`, for the Ψ oracle.
    pub fn product_in_sum(&self, v: &UElement, u: &UElement) -> UElement {
        let n1 = self.mp.g1.dim;
        let alg = UAlgebra::new(&self.sum);
        let mut big_v = UElement::new();
        for (m, c) in v {
            big_v.insert(self.embed(m, n1), c.clone());
        }
        let mut big_u = UElement::new();
        for (m, c) in u {
            big_u.insert(self.embed(m, 0), c.clone());
        }
        alg.mul(&big_v, &big_u)
    }

    /// Mutual actions `(v▷u, v◁u)`, the two counit legs of Ψ.
    pub fn mutual_actions(&self, v: &UElement, u: &UElement) -> (UElement, UElement) {
        let psi = self.psi(v, u);
        let n1 = self.mp.g1.dim;
        let n2 = self.mp.g2.dim;
        let mut act_left = UElement::new(); // v▷u ∈ U(g1)
        let mut act_right = UElement::new(); // v◁u ∈ U(g2)
        for ((u_part, v_part), c) in &psi {
            if v_part.iter().all(|e| *e == 0) {
                u_add_term(&mut act_left, u_part.clone(), c.clone());
            }
            if u_part.iter().all(|e| *e == 0) {
                u_add_term(&mut act_right, v_part.clone(), c.clone());
            }
        }
        if act_left.is_empty() {
            let _ = n1;
        }
        if act_right.is_empty() {
            let _ = n2;
        }
        (act_left, act_right)
    }

    /// `f_i^j(v) = ⟨v▷X_i, θ^j⟩`, the matrix coefficient of the coaction.
    pub fn matrix_coefficient(&self, i: usize, j: usize, v: &UElement) -> Rat {
        let u = u_gen(self.mp.g1.dim, i);
        let (left, _) = self.mutual_actions(v, &u);
        let mut target = alloc::vec![0u32; self.mp.g1.dim];
        target[j] = 1;
        left.get(&target).cloned().unwrap_or_else(Rat::zero)
    }
}

/// Samples the mutual-pair axioms (mutual-1..3) and the Ψ recombination
/// identity on all PBW monomials up to the given degrees.
pub fn check_mutual_pair(mp: &MatchedPair, degree: u32) -> Report {
    let mut report = Report::new();
    let fact = Factorization::new(mp);
    let u1 = UAlgebra::new(&mp.g1);
    let u2 = UAlgebra::new(&mp.g2);
    let vs = monomials_up_to(mp.g2.dim, degree);
    let us = monomials_up_to(mp.g1.dim, degree);
    let names1 = &mp.g1.basis_names;
    let names2 = &mp.g2.basis_names;

    for vm in &vs {
        let v: UElement = [(vm.clone(), Rat::one())].into_iter().collect();
        // v▷1 = ε(v)1, and v◁ structure on 1
        let (l, r) = fact.mutual_actions(&v, &u1.one());
        let mut expect = UElement::new();
        u_add_term(&mut expect, alloc::vec![0; mp.g1.dim], u2.counit(&v));
        if l != expect {
            report.push(
                "mutual-2",
                alloc::format!("v = {}", fmt_monomial(vm, names2)),
                fmt_u(&l, names1),
                fmt_u(&expect, names1),
            );
        }
        let _ = r;
    }
    for um in &us {
        let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
        let (_, r) = fact.mutual_actions(&u2.one(), &u);
        let mut expect = UElement::new();
        u_add_term(&mut expect, alloc::vec![0; mp.g2.dim], u1.counit(&u));
        if r != expect {
            report.push(
                "mutual-1",
                alloc::format!("u = {}", fmt_monomial(um, names1)),
                fmt_u(&r, names2),
                fmt_u(&expect, names2),
            );
        }
    }

    // v▷(u¹u²) = (v(1)▷u¹(1))((v(2)◁u¹(2))▷u²)  [mutual-1]
    for vm in &vs {
        let v: UElement = [(vm.clone(), Rat::one())].into_iter().collect();
        for um1 in &us {
            if um1.iter().sum::<u32>() + vm.iter().sum::<u32>() > degree + 1 {
                continue;
            }
            let u1e: UElement = [(um1.clone(), Rat::one())].into_iter().collect();
            for um2 in &us {
                if um2.iter().sum::<u32>() > degree.saturating_sub(um1.iter().sum()) {
                    continue;
                }
                let u2e: UElement = [(um2.clone(), Rat::one())].into_iter().collect();
                let product = u1.mul(&u1e, &u2e);
                let (lhs, _) = fact.mutual_actions(&v, &product);
                let mut rhs = UElement::new();
                for ((v1, v2), cv) in cop_pairs(&u2, &v) {
                    for ((a1, a2), cu) in cop_pairs(&u1, &u1e) {
                        let (va, _) = fact.mutual_actions(&v1, &a1);
                        let (_, vb) = fact.mutual_actions(&v2, &a2);
                        let (inner, _) = fact.mutual_actions(&vb, &u2e);
                        let prod = u1.mul(&va, &inner);
                        u_scale_into(&mut rhs, &prod, &(&cv * &cu));
                    }
                }
                if lhs != rhs {
                    report.push(
                        "mutual-1",
                        alloc::format!(
                            "v = {}, u1 = {}, u2 = {}",
                            fmt_monomial(vm, names2),
                            fmt_monomial(um1, names1),
                            fmt_monomial(um2, names1)
                        ),
                        fmt_u(&lhs, names1),
                        fmt_u(&rhs, names1),
                    );
                }
            }
        }
    }

    // (v¹v²)◁u = (v¹◁(v²(1)▷u(1)))(v²(2)◁u(2))  [mutual-2]
    for vm1 in &vs {
        let v1e: UElement = [(vm1.clone(), Rat::one())].into_iter().collect();
        for vm2 in &vs {
            if vm2.iter().sum::<u32>() + vm1.iter().sum::<u32>() > degree + 1 {
                continue;
            }
            let v2e: UElement = [(vm2.clone(), Rat::one())].into_iter().collect();
            for um in &us {
                let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
                let product = u2.mul(&v1e, &v2e);
                let (_, lhs) = fact.mutual_actions(&product, &u);
                let mut rhs = UElement::new();
                for ((v21, v22), cv) in cop_pairs(&u2, &v2e) {
                    for ((a1, a2), cu) in cop_pairs(&u1, &u) {
                        let (inner, _) = fact.mutual_actions(&v21, &a1);
                        let (_, left) = fact.mutual_actions(&v1e, &inner);
                        let (_, right) = fact.mutual_actions(&v22, &a2);
                        let prod = u2.mul(&left, &right);
                        u_scale_into(&mut rhs, &prod, &(&cv * &cu));
                    }
                }
                if lhs != rhs {
                    report.push(
                        "mutual-2",
                        alloc::format!(
                            "v1 = {}, v2 = {}, u = {}",
                            fmt_monomial(vm1, names2),
                            fmt_monomial(vm2, names2),
                            fmt_monomial(um, names1)
                        ),
                        fmt_u(&lhs, names2),
                        fmt_u(&rhs, names2),
                    );
                }
            }
        }
    }

    // mutual-3: Σ v(1)◁u(1) ⊗ v(2)▷u(2) = Σ v(2)◁u(2) ⊗ v(1)▷u(1)
    for vm in &vs {
        let v: UElement = [(vm.clone(), Rat::one())].into_iter().collect();
        for um in &us {
            let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
            let mut lhs: BTreeMap<(PbwMonomial, PbwMonomial), Rat> = BTreeMap::new();
            let mut rhs: BTreeMap<(PbwMonomial, PbwMonomial), Rat> = BTreeMap::new();
            for ((v1, v2), cv) in cop_pairs(&u2, &v) {
                for ((a1, a2), cu) in cop_pairs(&u1, &u) {
                    let weight = &cv * &cu;
                    let (_, l_left) = fact.mutual_actions(&v1, &a1);
                    let (l_right, _) = fact.mutual_actions(&v2, &a2);
                    for (m1, c1) in &l_left {
                        for (m2, c2) in &l_right {
                            add_pair(&mut lhs, (m1.clone(), m2.clone()), &weight * c1 * c2);
                        }
                    }
                    let (_, r_left) = fact.mutual_actions(&v2, &a2);
                    let (r_right, _) = fact.mutual_actions(&v1, &a1);
                    for (m1, c1) in &r_left {
                        for (m2, c2) in &r_right {
                            add_pair(&mut rhs, (m1.clone(), m2.clone()), &weight * c1 * c2);
                        }
                    }
                }
            }
            if lhs != rhs {
                report.push(
                    "mutual-3",
                    alloc::format!("v = {}, u = {}", fmt_monomial(vm, names2), fmt_monomial(um, names1)),
                    alloc::format!("{} terms", lhs.len()),
                    alloc::format!("{} terms", rhs.len()),
                );
            }
        }
    }
    report
}

fn cop_pairs(alg: &UAlgebra<'_>, u: &UElement) -> Vec<((UElement, UElement), Rat)> {
    alg.coproduct(u)
        .into_iter()
        .map(|((l, r), c)| {
            let le: UElement = [(l, Rat::one())].into_iter().collect();
            let re: UElement = [(r, Rat::one())].into_iter().collect();
            ((le, re), c)
        })
        .collect()
}

/// All PBW monomials of total degree ≤ `degree`.
pub fn monomials_up_to(dim: usize, degree: u32) -> Vec<PbwMonomial> {
    let mut out = alloc::vec![alloc::vec![0u32; dim]];
    for _ in 0..degree {
        let mut next = Vec::new();
        for m in &out {
            for i in 0..dim {
                let mut m2 = m.clone();
                m2[i] += 1;
                if m2[..i].iter().zip(&m[..i]).all(|(a, b)| a == b) {
                    next.push(m2);
                }
            }
        }
        for m in next {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::fixtures::{ax_b, borel, sl2};

    fn e1_pair() -> MatchedPair {
        decompose(&sl2(), &[0, 1], &[2]).unwrap()
    }

    #[test]
    fn decompose_e1_values() {
        let mp = e1_pair();
        // F▷H = 0, F▷E = −H, F◁H = 2F, F◁E = 0
        assert!(mp.left_action[0][0].is_empty());
        assert_eq!(mp.left_action[0][1], [(0usize, rat(-1, 1))].into_iter().collect());
        assert_eq!(mp.right_action[0][0], [(0usize, rat(2, 1))].into_iter().collect());
        assert!(mp.right_action[0][1].is_empty());
        assert!(check_matched_pair(&mp).ok());
    }

    #[test]
    fn double_crossed_sum_roundtrip() {
        let mp = e1_pair();
        let sum = double_crossed_sum(&mp);
        assert!(check_jacobi(&sum).ok());
        assert_eq!(sum.bracket_basis(0, 1), sl2().bracket_basis(0, 1));
        assert_eq!(sum.bracket_basis(1, 2), sl2().bracket_basis(1, 2));
        let back = decompose(&sum, &[0, 1], &[2]).unwrap();
        assert_eq!(back, mp);

        // trivial actions give the direct sum
        let triv = MatchedPair::trivial(borel(), LieAlgebra::abelian(alloc::vec!["Z".into()]));
        assert!(check_matched_pair(&triv).ok());
        let s = double_crossed_sum(&triv);
        assert!(s.bracket_basis(0, 2).is_empty());

        // 2-dim nonabelian split {Y}|{X}
        let a = ax_b();
        let mp3 = decompose(&a, &[1], &[0]).unwrap();
        // X▷Y = Y: [X, Y] = Y lands in g1
        assert_eq!(mp3.left_action[0][0], [(0usize, rat(1, 1))].into_iter().collect());
        assert!(mp3.right_action[0][0].is_empty());
        assert_eq!(double_crossed_sum(&mp3).bracket_basis(1, 0), &[(0usize, rat(1, 1))].into_iter().collect());
        // {H,F} | {E} splits; {E,F} is not a subalgebra ([E,F] = H)
        assert!(decompose(&sl2(), &[0, 2], &[1]).is_ok());
        assert!(matches!(decompose(&sl2(), &[0], &[1, 2]), Err(DecomposeError::PartNotSubalgebra { .. })));
    }

    use crate::liealg::check_jacobi;

    #[test]
    fn straightening_basics() {
        let g = sl2();
        let alg = UAlgebra::new(&g);
        // EH = HE − 2E
        let eh = alg.straighten(&[1, 0]);
        let mut expect = UElement::new();
        expect.insert(alloc::vec![1, 1, 0], rat(1, 1));
        expect.insert(alloc::vec![0, 1, 0], rat(-2, 1));
        assert_eq!(eh, expect);
        // FE = EF − H
        let fe = alg.straighten(&[2, 1]);
        let mut expect = UElement::new();
        expect.insert(alloc::vec![0, 1, 1], rat(1, 1));
        expect.insert(alloc::vec![1, 0, 0], rat(-1, 1));
        assert_eq!(fe, expect);
        // associativity sample: (EF)H vs E(FH)
        let e = alg.gen(1);
        let f = alg.gen(2);
        let h = alg.gen(0);
        let left = alg.mul(&alg.mul(&e, &f), &h);
        let right = alg.mul(&e, &alg.mul(&f, &h));
        assert_eq!(left, right);
    }

    #[test]
    fn u_hopf_ops() {
        let g = borel();
        let alg = UAlgebra::new(&g);
        // Δ(X²) = X²⊗1 + 2X⊗X + 1⊗X²
        let mut x2 = UElement::new();
        x2.insert(alloc::vec![0, 2], rat(1, 1));
        let cop = alg.coproduct(&x2);
        assert_eq!(cop.len(), 3);
        assert_eq!(cop[&(alloc::vec![0, 1], alloc::vec![0, 1])], rat(2, 1));
        // S(XY) = S(Y)S(X) = YX re-straightened
        let xy = alg.straighten(&[0, 1]);
        let s = alg.antipode(&xy);
        let yx = alg.straighten(&[1, 0]);
        assert_eq!(s, yx);
        // S is an anti-homomorphism on a sample
        let a = alg.straighten(&[0]);
        let b = alg.straighten(&[1, 1]);
        assert_eq!(alg.antipode(&alg.mul(&a, &b)), alg.mul(&alg.antipode(&b), &alg.antipode(&a)));
    }

    #[test]
    fn psi_examples() {
        let mp = e1_pair();
        let fact = Factorization::new(&mp);
        let u2 = UAlgebra::new(&mp.g2);
        // Ψ(1⊗u) = u⊗1
        let u = UAlgebra::new(&mp.g1).straighten(&[0, 1]);
        let psi = fact.psi(&u2.one(), &u);
        assert_eq!(psi.len(), 1);
        assert_eq!(psi[&(alloc::vec![1, 1], alloc::vec![0])], rat(1, 1));
        // Ψ(F⊗E) = E⊗F − H⊗1
        let f = u2.gen(0);
        let e = u_gen(2, 1);
        let psi = fact.psi(&f, &e);
        assert_eq!(psi[&(alloc::vec![0, 1], alloc::vec![1])], rat(1, 1));
        assert_eq!(psi[&(alloc::vec![1, 0], alloc::vec![0])], rat(-1, 1));
        assert_eq!(psi.len(), 2);
        // Ψ(F²⊗E) = E⊗F² − 2H⊗F − 2·1⊗F
        let f2: UElement = [(alloc::vec![2u32], Rat::one())].into_iter().collect();
        let psi = fact.psi(&f2, &e);
        assert_eq!(psi[&(alloc::vec![0, 1], alloc::vec![2])], rat(1, 1));
        assert_eq!(psi[&(alloc::vec![1, 0], alloc::vec![1])], rat(-2, 1));
        assert_eq!(psi[&(alloc::vec![0, 0], alloc::vec![1])], rat(-2, 1));
        assert_eq!(psi.len(), 3);
    }

    #[test]
    fn mutual_action_values() {
        let mp = e1_pair();
        let fact = Factorization::new(&mp);
        let f = u_gen(1, 0);
        let e = u_gen(2, 1);
        let h = u_gen(2, 0);
        let (l, r) = fact.mutual_actions(&f, &e);
        assert_eq!(l, [(alloc::vec![1u32, 0], rat(-1, 1))].into_iter().collect::<UElement>());
        assert!(r.is_empty());
        // F^n▷H = 0, F^n◁H = 2n F^n
        for n in 1..=4u32 {
            let fn_: UElement = [(alloc::vec![n], Rat::one())].into_iter().collect();
            let (l, r) = fact.mutual_actions(&fn_, &h);
            assert!(l.is_empty());
            assert_eq!(r, [(alloc::vec![n], rat(2 * n as i64, 1))].into_iter().collect::<UElement>());
        }
        assert!(check_mutual_pair(&mp, 3).ok());
    }

    #[test]
    fn matrix_coefficients() {
        let mp = e1_pair();
        let fact = Factorization::new(&mp);
        // f_i^j(1) = δ_i^j
        for i in 0..2 {
            for j in 0..2 {
                let one = u_one(1);
                let expect = if i == j { rat(1, 1) } else { rat(0, 1) };
                assert_eq!(fact.matrix_coefficient(i, j, &one), expect);
            }
        }
        let f = u_gen(1, 0);
        assert_eq!(fact.matrix_coefficient(1, 0, &f), rat(-1, 1));
        let f2: UElement = [(alloc::vec![2u32], Rat::one())].into_iter().collect();
        assert_eq!(fact.matrix_coefficient(1, 0, &f2), rat(0, 1));
        // coproduct law f_i^j(v¹v²) = Σ_k f_k^j(v¹) f_i^k(v²)
        let u2 = UAlgebra::new(&mp.g2);
        for vm1 in monomials_up_to(1, 2) {
            for vm2 in monomials_up_to(1, 2) {
                let v1: UElement = [(vm1.clone(), Rat::one())].into_iter().collect();
                let v2: UElement = [(vm2.clone(), Rat::one())].into_iter().collect();
                let prod = u2.mul(&v1, &v2);
                for i in 0..2 {
                    for j in 0..2 {
                        let lhs = fact.matrix_coefficient(i, j, &prod);
                        let mut rhs = Rat::zero();
                        for k in 0..2 {
                            rhs += fact.matrix_coefficient(k, j, &v1) * fact.matrix_coefficient(i, k, &v2);
                        }
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn psi_recombination_oracle() {
        let mp = e1_pair();
        let fact = Factorization::new(&mp);
        for vm in monomials_up_to(1, 4) {
            for um in monomials_up_to(2, 4) {
                if vm.iter().sum::<u32>() + um.iter().sum::<u32>() > 4 {
                    continue;
                }
                let v: UElement = [(vm.clone(), Rat::one())].into_iter().collect();
                let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
                let psi = fact.psi(&v, &u);
                assert_eq!(fact.recombine(&psi), fact.product_in_sum(&v, &u));
            }
        }
    }

    #[test]
    fn broken_pair_cites_mp_l_3() {
        // F▷E = −H + E breaks exactly mp-L-3
        let mut mp = e1_pair();
        mp.left_action[0][1] = [(0usize, rat(-1, 1)), (1usize, rat(1, 1))].into_iter().collect();
        let report = check_matched_pair(&mp);
        assert!(!report.ok());
        assert!(report.violations.iter().all(|v| v.law == "mp-L-3"));
    }
}
