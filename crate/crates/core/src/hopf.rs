//! Finitely presented commutative Hopf algebras F, Lie-Hopf structure,
//! the coaction extension to U(g1), the bicrossed product H = F ▸◂ U(g1)
//! and its canonical modular pair in involution.
//!
//! F is free commutative on its generators; Laurent exponents are allowed
//! only on invertible generators, which must be group-like so that Δ, ε
//! and S extend uniquely to normal forms.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::{One, Zero};

use crate::exactlin::{rat, rat_to_string, Rat};
use crate::liealg::{adjoint_trace_character, LieAlgebra};
use crate::matched::{
    fmt_monomial, monomials_up_to, split_monomial_multi, u_add_term, u_gen, u_one, PbwMonomial,
    UAlgebra, UElement,
};
use crate::prng::SplitMix64;
use crate::report::Report;

/// Exponent vector over the generators of F; negative exponents only on
/// invertible generators.
pub type FMonomial = Vec<i64>;

/// Element of F in normal form: monomial -> nonzero coefficient.
pub type FElement = BTreeMap<FMonomial, Rat>;

/// Element of F ⊗ F.
pub type FxF = BTreeMap<(FMonomial, FMonomial), Rat>;

/// Element of U(g1) ⊗ F.
pub type UxF = BTreeMap<(PbwMonomial, FMonomial), Rat>;

/// Generator of a Hopf presentation with its structure data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub invertible: bool,
    pub epsilon: Rat,
    pub coproduct: FxF,
    pub antipode: FElement,
}

/// Free commutative Hopf presentation; the trivial Hopf algebra is the
/// empty presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPres {
    pub gens: Vec<Generator>,
}

pub fn f_add_term(f: &mut FElement, m: FMonomial, c: Rat) {
    if c.is_zero() {
        return;
    }
    match f.get_mut(&m) {
        Some(cur) => {
            *cur += c;
            if cur.is_zero() {
                f.remove(&m);
            }
        }
        None => {
            f.insert(m, c);
        }
    }
}

pub fn f_scale_into(dst: &mut FElement, src: &FElement, c: &Rat) {
    for (m, v) in src {
        f_add_term(dst, m.clone(), v * c);
    }
}

pub fn ff_add_term(f: &mut FxF, k: (FMonomial, FMonomial), c: Rat) {
    if c.is_zero() {
        return;
    }
    match f.get_mut(&k) {
        Some(cur) => {
            *cur += c;
            if cur.is_zero() {
                f.remove(&k);
            }
        }
        None => {
            f.insert(k, c);
        }
    }
}

impl FPres {
    pub fn trivial() -> Self {
        FPres { gens: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn one(&self) -> FElement {
        let mut f = FElement::new();
        f.insert(alloc::vec![0; self.n()], Rat::one());
        f
    }

    pub fn unit_monomial(&self) -> FMonomial {
        alloc::vec![0; self.n()]
    }

    pub fn gen(&self, g: usize) -> FElement {
        let mut m = alloc::vec![0i64; self.n()];
        m[g] = 1;
        let mut f = FElement::new();
        f.insert(m, Rat::one());
        f
    }

    pub fn mul_monomials(&self, a: &FMonomial, b: &FMonomial) -> FMonomial {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn mul(&self, a: &FElement, b: &FElement) -> FElement {
        let mut out = FElement::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                f_add_term(&mut out, self.mul_monomials(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn counit(&self, f: &FElement) -> Rat {
        let mut total = Rat::zero();
        for (m, c) in f {
            let mut prod = c.clone();
            for (g, e) in m.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let base = &self.gens[g].epsilon;
                if *e < 0 {
                    // invertible generators are group-like with ε = 1
                    debug_assert!(base.is_one());
                    continue;
                }
                for _ in 0..*e {
                    prod *= base;
                }
                if prod.is_zero() {
                    break;
                }
            }
            total += prod;
        }
        total
    }

    fn ff_mul(&self, a: &FxF, b: &FxF) -> FxF {
        let mut out = FxF::new();
        for ((la, ra), ca) in a {
            for ((lb, rb), cb) in b {
                ff_add_term(
                    &mut out,
                    (self.mul_monomials(la, lb), self.mul_monomials(ra, rb)),
                    ca * cb,
                );
            }
        }
        out
    }

    fn ff_one(&self) -> FxF {
        let mut out = FxF::new();
        out.insert((self.unit_monomial(), self.unit_monomial()), Rat::one());
        out
    }

    /// Multiplicative extension of the generator coproducts.
    pub fn coproduct(&self, f: &FElement) -> FxF {
        let mut out = FxF::new();
        for (m, c) in f {
            let mut term = self.ff_one();
            for (g, e) in m.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if *e > 0 {
                    for _ in 0..*e {
                        term = self.ff_mul(&term, &self.gens[g].coproduct);
                    }
                } else {
                    // group-like: Δ(g^e) = g^e ⊗ g^e for any integer e
                    let mut mono = alloc::vec![0i64; self.n()];
                    mono[g] = *e;
                    let mut glike = FxF::new();
                    glike.insert((mono.clone(), mono), Rat::one());
                    term = self.ff_mul(&term, &glike);
                }
            }
            for ((l, r), v) in term {
                ff_add_term(&mut out, (l, r), v * c);
            }
        }
        out
    }

    /// Inverse of a unit: a single monomial supported on invertible
    /// generators, with any nonzero coefficient.
    pub fn invert(&self, f: &FElement) -> Option<FElement> {
        if f.len() != 1 {
            return None;
        }
        let (m, c) = f.iter().next().unwrap();
        if c.is_zero() {
            return None;
        }
        for (g, e) in m.iter().enumerate() {
            if *e != 0 && !self.gens[g].invertible {
                return None;
            }
        }
        let inv_m: FMonomial = m.iter().map(|e| -e).collect();
        let mut out = FElement::new();
        out.insert(inv_m, c.clone().recip());
        Some(out)
    }

    pub fn pow(&self, f: &FElement, e: i64) -> Option<FElement> {
        if e == 0 {
            return Some(self.one());
        }
        let base = if e > 0 { f.clone() } else { self.invert(f)? };
        let mut out = self.one();
        for _ in 0..e.abs() {
            out = self.mul(&out, &base);
        }
        Some(out)
    }

    /// Antipode: algebra-map extension of the generator antipodes
    /// (F is commutative, so S is an algebra map).
    pub fn antipode(&self, f: &FElement) -> FElement {
        let mut out = FElement::new();
        for (m, c) in f {
            let mut term = self.one();
            for (g, e) in m.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let s = self
                    .pow(&self.gens[g].antipode, *e)
                    .expect("antipode of an invertible generator must be invertible");
                term = self.mul(&term, &s);
            }
            f_scale_into(&mut out, &term, c);
        }
        out
    }

    pub fn fmt_monomial(&self, m: &FMonomial) -> String {
        let mut out = String::new();
        for (g, e) in m.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&self.gens[g].name);
            if *e != 1 {
                out.push_str(&alloc::format!("^{e}"));
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    pub fn fmt(&self, f: &FElement) -> String {
        if f.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in f.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            out.push_str(&rat_to_string(c));
            out.push('*');
            out.push_str(&self.fmt_monomial(m));
        }
        out
    }

    /// All monomials of total absolute degree ≤ `degree`.
    pub fn monomials_up_to(&self, degree: i64) -> Vec<FMonomial> {
        let mut out = alloc::vec![alloc::vec![0i64; 0]];
        for g in 0..self.n() {
            let lo = if self.gens[g].invertible { -degree } else { 0 };
            let mut next = Vec::new();
            for m in &out {
                let used: i64 = m.iter().map(|e| e.abs()).sum();
                for e in lo..=degree {
                    if e.abs() + used <= degree {
                        let mut m2 = m.clone();
                        m2.push(e);
                        next.push(m2);
                    }
                }
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }
}

fn ff_fmt(pres: &FPres, f: &FxF) -> String {
    if f.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (k, ((l, r), c)) in f.iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        out.push_str(&alloc::format!(
            "{}*{}(x){}",
            rat_to_string(c),
            pres.fmt_monomial(l),
            pres.fmt_monomial(r)
        ));
    }
    out
}

/// Coassociativity, counit and antipode laws on all monomials of degree
/// ≤ `degree`, plus algebra-map compatibility of Δ, ε on sampled pairs.
pub fn check_hopf_axioms_f(pres: &FPres, degree: i64) -> Report {
    let mut report = Report::new();
    let monos = pres.monomials_up_to(degree);
    for m in &monos {
        let mut f = FElement::new();
        f.insert(m.clone(), Rat::one());
        let cop = pres.coproduct(&f);
        // coassociativity
        let mut left: BTreeMap<(FMonomial, FMonomial, FMonomial), Rat> = BTreeMap::new();
        let mut right: BTreeMap<(FMonomial, FMonomial, FMonomial), Rat> = BTreeMap::new();
        for ((l, r), c) in &cop {
            let mut fl = FElement::new();
            fl.insert(l.clone(), Rat::one());
            for ((l2, r2), c2) in pres.coproduct(&fl) {
                let key = (l2, r2, r.clone());
                let v = c * &c2;
                *left.entry(key.clone()).or_insert_with(Rat::zero) += v;
                if left[&key].is_zero() {
                    left.remove(&key);
                }
            }
            let mut fr = FElement::new();
            fr.insert(r.clone(), Rat::one());
            for ((l2, r2), c2) in pres.coproduct(&fr) {
                let key = (l.clone(), l2, r2);
                let v = c * &c2;
                *right.entry(key.clone()).or_insert_with(Rat::zero) += v;
                if right[&key].is_zero() {
                    right.remove(&key);
                }
            }
        }
        if left != right {
            report.push(
                "coassociativity",
                pres.fmt_monomial(m),
                alloc::format!("{} terms", left.len()),
                alloc::format!("{} terms", right.len()),
            );
        }
        // counit: (ε⊗id)Δ = id = (id⊗ε)Δ
        let mut left_counit = FElement::new();
        let mut right_counit = FElement::new();
        for ((l, r), c) in &cop {
            let mut fl = FElement::new();
            fl.insert(l.clone(), Rat::one());
            let mut fr = FElement::new();
            fr.insert(r.clone(), Rat::one());
            f_add_term(&mut right_counit, l.clone(), c * pres.counit(&fr));
            f_add_term(&mut left_counit, r.clone(), c * pres.counit(&fl));
        }
        if left_counit != f {
            report.push("counit", pres.fmt_monomial(m), pres.fmt(&left_counit), pres.fmt(&f));
        }
        if right_counit != f {
            report.push("counit", pres.fmt_monomial(m), pres.fmt(&right_counit), pres.fmt(&f));
        }
        // antipode: m(S⊗id)Δ = ε·1 = m(id⊗S)Δ
        let target = {
            let mut t = FElement::new();
            f_add_term(&mut t, pres.unit_monomial(), pres.counit(&f));
            t
        };
        let mut s_left = FElement::new();
        let mut s_right = FElement::new();
        for ((l, r), c) in &cop {
            let mut fl = FElement::new();
            fl.insert(l.clone(), Rat::one());
            let mut fr = FElement::new();
            fr.insert(r.clone(), Rat::one());
            let sl = pres.mul(&pres.antipode(&fl), &fr);
            f_scale_into(&mut s_left, &sl, c);
            let sr = pres.mul(&fl, &pres.antipode(&fr));
            f_scale_into(&mut s_right, &sr, c);
        }
        if s_left != target {
            report.push("antipode", pres.fmt_monomial(m), pres.fmt(&s_left), pres.fmt(&target));
        }
        if s_right != target {
            report.push("antipode", pres.fmt_monomial(m), pres.fmt(&s_right), pres.fmt(&target));
        }
    }
    // Δ and ε are algebra maps on sampled monomial pairs
    for a in monos.iter().take(6) {
        for b in monos.iter().take(6) {
            let mut fa = FElement::new();
            fa.insert(a.clone(), Rat::one());
            let mut fb = FElement::new();
            fb.insert(b.clone(), Rat::one());
            let prod = pres.mul(&fa, &fb);
            let lhs = pres.coproduct(&prod);
            let rhs = pres.ff_mul(&pres.coproduct(&fa), &pres.coproduct(&fb));
            if lhs != rhs {
                report.push(
                    "coproduct-multiplicative",
                    alloc::format!("{} , {}", pres.fmt_monomial(a), pres.fmt_monomial(b)),
                    ff_fmt(pres, &lhs),
                    ff_fmt(pres, &rhs),
                );
            }
            let le = pres.counit(&prod);
            let re = pres.counit(&fa) * pres.counit(&fb);
            if le != re {
                report.push(
                    "counit-multiplicative",
                    alloc::format!("{} , {}", pres.fmt_monomial(a), pres.fmt_monomial(b)),
                    rat_to_string(&le),
                    rat_to_string(&re),
                );
            }
        }
    }
    report
}

/// A Lie algebra g1, a commutative Hopf algebra F with a g1-action by
/// derivations, and the coaction matrix `∇X_i = Σ_j X_j ⊗ f_i^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieHopf {
    pub g1: LieAlgebra,
    pub pres: FPres,
    /// action[i][g] = X_i ▷ gen_g
    pub action: Vec<Vec<FElement>>,
    /// coaction[i][j] = f_i^j
    pub coaction: Vec<Vec<FElement>>,
    /// Replaces the trace character δ_g in the modular pair (negative
    /// fixtures only).
    pub delta_override: Option<Vec<Rat>>,
    /// Replaces det[f_i^j] as σ (negative fixtures only).
    pub sigma_override: Option<FElement>,
}

/// Element of H = F ▸◂ U(g1) in the expanded basis.
pub type HElement = BTreeMap<(FMonomial, PbwMonomial), Rat>;

pub type HxH = BTreeMap<((FMonomial, PbwMonomial), (FMonomial, PbwMonomial)), Rat>;

pub fn h_add_term(h: &mut HElement, k: (FMonomial, PbwMonomial), c: Rat) {
    if c.is_zero() {
        return;
    }
    match h.get_mut(&k) {
        Some(cur) => {
            *cur += c;
            if cur.is_zero() {
                h.remove(&k);
            }
        }
        None => {
            h.insert(k, c);
        }
    }
}

pub fn h_scale_into(dst: &mut HElement, src: &HElement, c: &Rat) {
    for (k, v) in src {
        h_add_term(dst, k.clone(), v * c);
    }
}

fn hh_add_term(h: &mut HxH, k: ((FMonomial, PbwMonomial), (FMonomial, PbwMonomial)), c: Rat) {
    if c.is_zero() {
        return;
    }
    match h.get_mut(&k) {
        Some(cur) => {
            *cur += c;
            if cur.is_zero() {
                h.remove(&k);
            }
        }
        None => {
            h.insert(k, c);
        }
    }
}

/// Operation context for a Lie-Hopf datum: U(g1) straightening, the
/// memoized coaction extension, and the canonical (δ, σ).
pub struct HopfOps<'a> {
    pub datum: &'a LieHopf,
    pub ualg: UAlgebra<'a>,
    /// δ_g on the g1-basis (trace character unless overridden)
    pub delta: Vec<Rat>,
    /// σ = det[f_i^j] (unless overridden)
    pub sigma: FElement,
    pub sigma_inv: Option<FElement>,
    coaction_memo: RefCell<BTreeMap<PbwMonomial, UxF>>,
    coaction_iter_memo: RefCell<BTreeMap<(PbwMonomial, usize), BTreeMap<(PbwMonomial, Vec<FMonomial>), Rat>>>,
    hmul_memo: RefCell<BTreeMap<((FMonomial, PbwMonomial), (FMonomial, PbwMonomial)), HElement>>,
    hcop_memo: RefCell<BTreeMap<(FMonomial, PbwMonomial), HxH>>,
    hanti_memo: RefCell<BTreeMap<(FMonomial, PbwMonomial), HElement>>,
}

impl<'a> HopfOps<'a> {
    pub fn new(datum: &'a LieHopf) -> Self {
        let delta = datum
            .delta_override
            .clone()
            .unwrap_or_else(|| adjoint_trace_character(&datum.g1));
        let sigma = datum.sigma_override.clone().unwrap_or_else(|| coaction_determinant(datum));
        let sigma_inv = datum.pres.invert(&sigma);
        HopfOps {
            datum,
            ualg: UAlgebra::new(&datum.g1),
            delta,
            sigma,
            sigma_inv,
            coaction_memo: RefCell::new(BTreeMap::new()),
            coaction_iter_memo: RefCell::new(BTreeMap::new()),
            hmul_memo: RefCell::new(BTreeMap::new()),
            hcop_memo: RefCell::new(BTreeMap::new()),
            hanti_memo: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn pres(&self) -> &FPres {
        &self.datum.pres
    }

    pub fn dim(&self) -> usize {
        self.datum.g1.dim
    }

    /// `X_i ▷ f`, the derivation extension of the generator action.
    pub fn act_gen(&self, i: usize, f: &FElement) -> FElement {
        let pres = self.pres();
        let mut out = FElement::new();
        for (m, c) in f {
            for (g, e) in m.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let mut lowered = m.clone();
                lowered[g] -= 1;
                let mut rest = FElement::new();
                rest.insert(lowered, c * rat(*e, 1));
                let part = pres.mul(&rest, &self.datum.action[i][g]);
                f_scale_into(&mut out, &part, &Rat::one());
            }
        }
        out
    }

    /// `u ▷ f` for a PBW monomial word, applied left-to-right.
    pub fn act_monomial(&self, m: &PbwMonomial, f: &FElement) -> FElement {
        let mut word = Vec::new();
        for (i, e) in m.iter().enumerate() {
            for _ in 0..*e {
                word.push(i);
            }
        }
        let mut out = f.clone();
        for i in word.into_iter().rev() {
            out = self.act_gen(i, &out);
        }
        out
    }

    pub fn act_u(&self, u: &UElement, f: &FElement) -> FElement {
        let mut out = FElement::new();
        for (m, c) in u {
            let part = self.act_monomial(m, f);
            f_scale_into(&mut out, &part, c);
        }
        out
    }

    /// `∇` on a PBW monomial, extended from the generators by
    /// `∇(X_i w) = Σ_j X_j w⟨0⟩ ⊗ f_i^j w⟨1⟩ + w⟨0⟩ ⊗ X_i ▷ w⟨1⟩`.
    pub fn coaction_monomial(&self, m: &PbwMonomial) -> UxF {
        if let Some(hit) = self.coaction_memo.borrow().get(m) {
            return hit.clone();
        }
        let n = self.dim();
        let result: UxF = if m.iter().all(|e| *e == 0) {
            let mut out = UxF::new();
            out.insert((alloc::vec![0; n], self.pres().unit_monomial()), Rat::one());
            out
        } else {
            let i = m.iter().position(|e| *e > 0).unwrap();
            let mut rest = m.clone();
            rest[i] -= 1;
            let inner = self.coaction_monomial(&rest);
            let mut out = UxF::new();
            for ((w0, w1), c) in &inner {
                let mut w1f = FElement::new();
                w1f.insert(w1.clone(), Rat::one());
                // Σ_j (X_j · w0) ⊗ f_i^j w1
                for j in 0..n {
                    let moved = self.ualg.mul_gen_left(j, &[(w0.clone(), Rat::one())].into_iter().collect());
                    let coeffs = self.pres().mul(&self.datum.coaction[i][j], &w1f);
                    for (mu, cu) in &moved {
                        for (mf, cf) in &coeffs {
                            uxf_add(&mut out, (mu.clone(), mf.clone()), c * cu * cf);
                        }
                    }
                }
                // w0 ⊗ X_i ▷ w1
                let acted = self.act_gen(i, &w1f);
                for (mf, cf) in &acted {
                    uxf_add(&mut out, (w0.clone(), mf.clone()), c * cf);
                }
            }
            out
        };
        self.coaction_memo.borrow_mut().insert(m.clone(), result.clone());
        result
    }

    pub fn coaction_u(&self, u: &UElement) -> UxF {
        let mut out = UxF::new();
        for (m, c) in u {
            for (k, v) in self.coaction_monomial(m) {
                uxf_add(&mut out, k, &v * c);
            }
        }
        out
    }

    fn coaction_iter_monomial(&self, m: &PbwMonomial, legs: usize) -> BTreeMap<(PbwMonomial, Vec<FMonomial>), Rat> {
        if legs == 0 {
            return [((m.clone(), Vec::new()), Rat::one())].into_iter().collect();
        }
        let memo_key = (m.clone(), legs);
        if let Some(hit) = self.coaction_iter_memo.borrow().get(&memo_key) {
            return hit.clone();
        }
        let mut out: BTreeMap<(PbwMonomial, Vec<FMonomial>), Rat> = BTreeMap::new();
        for ((w0, leg), c) in self.coaction_monomial(m) {
            for ((w00, inner_legs), c2) in self.coaction_iter_monomial(&w0, legs - 1) {
                let mut full = inner_legs.clone();
                full.push(leg.clone());
                let key = (w00, full);
                let v = &c * &c2;
                match out.get_mut(&key) {
                    Some(cur) => {
                        *cur += v;
                        if cur.is_zero() {
                            out.remove(&key);
                        }
                    }
                    None => {
                        if !v.is_zero() {
                            out.insert(key, v);
                        }
                    }
                }
            }
        }
        self.coaction_iter_memo.borrow_mut().insert(memo_key, out.clone());
        out
    }

    /// Iterated coaction with `legs` F-legs; legs[0] is the innermost
    /// (u⟨1⟩ in Sweedler indexing).
    pub fn coaction_iter(&self, u: &UElement, legs: usize) -> BTreeMap<(PbwMonomial, Vec<FMonomial>), Rat> {
        let mut out: BTreeMap<(PbwMonomial, Vec<FMonomial>), Rat> = BTreeMap::new();
        for (m, c) in u {
            for (key, v) in self.coaction_iter_monomial(m, legs) {
                let add = &v * c;
                match out.get_mut(&key) {
                    Some(cur) => {
                        *cur += add;
                        if cur.is_zero() {
                            out.remove(&key);
                        }
                    }
                    None => {
                        if !add.is_zero() {
                            out.insert(key, add);
                        }
                    }
                }
            }
        }
        out
    }

    /// δ_g as an algebra map on U(g1).
    pub fn delta_u(&self, u: &UElement) -> Rat {
        self.ualg.character(&self.delta, u)
    }

    /// δ(f ▸◂ u) = ε(f) δ_g(u) on H.
    pub fn delta_h(&self, h: &HElement) -> Rat {
        let mut total = Rat::zero();
        for ((fm, um), c) in h {
            let mut f = FElement::new();
            f.insert(fm.clone(), Rat::one());
            let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
            total += c * self.pres().counit(&f) * self.delta_u(&u);
        }
        total
    }

    pub fn h_one(&self) -> HElement {
        let mut h = HElement::new();
        h.insert((self.pres().unit_monomial(), alloc::vec![0; self.dim()]), Rat::one());
        h
    }

    pub fn h_from_f(&self, f: &FElement) -> HElement {
        let mut h = HElement::new();
        for (m, c) in f {
            h.insert((m.clone(), alloc::vec![0; self.dim()]), c.clone());
        }
        h
    }

    pub fn h_from_u(&self, u: &UElement) -> HElement {
        let mut h = HElement::new();
        for (m, c) in u {
            h.insert((self.pres().unit_monomial(), m.clone()), c.clone());
        }
        h
    }

    fn h_mul_basis(&self, ka: &(FMonomial, PbwMonomial), kb: &(FMonomial, PbwMonomial)) -> HElement {
        let memo_key = (ka.clone(), kb.clone());
        if let Some(hit) = self.hmul_memo.borrow().get(&memo_key) {
            return hit.clone();
        }
        let (fa, ua) = ka;
        let (fb, ub) = kb;
        let ua_el: UElement = [(ua.clone(), Rat::one())].into_iter().collect();
        let cop = self.ualg.coproduct(&ua_el);
        let mut fb_el = FElement::new();
        fb_el.insert(fb.clone(), Rat::one());
        let mut out = HElement::new();
        for ((u1, u2), cu) in &cop {
            let acted = self.act_monomial(u1, &fb_el);
            let mut fa_el = FElement::new();
            fa_el.insert(fa.clone(), Rat::one());
            let f_part = self.pres().mul(&fa_el, &acted);
            let u_part = self.ualg.mul(
                &[(u2.clone(), Rat::one())].into_iter().collect(),
                &[(ub.clone(), Rat::one())].into_iter().collect(),
            );
            for (mf, cf) in &f_part {
                for (mu2, cu2) in &u_part {
                    h_add_term(&mut out, (mf.clone(), mu2.clone()), cu * cf * cu2);
                }
            }
        }
        self.hmul_memo.borrow_mut().insert(memo_key, out.clone());
        out
    }

    /// `(f▸◂u)(g▸◂v) = f (u(1)▷g) ▸◂ u(2) v`.
    pub fn h_mul(&self, a: &HElement, b: &HElement) -> HElement {
        let mut out = HElement::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                let part = self.h_mul_basis(ka, kb);
                h_scale_into(&mut out, &part, &(ca * cb));
            }
        }
        out
    }

    fn h_coproduct_basis(&self, key: &(FMonomial, PbwMonomial)) -> HxH {
        if let Some(hit) = self.hcop_memo.borrow().get(key) {
            return hit.clone();
        }
        let (fm, um) = key;
        let mut f = FElement::new();
        f.insert(fm.clone(), Rat::one());
        let fcop = self.pres().coproduct(&f);
        let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
        let mut out = HxH::new();
        for ((u1, u2), cu) in self.ualg.coproduct(&u) {
            let nabla = self.coaction_monomial(&u1);
            for ((u10, u11), cn) in &nabla {
                for ((f1, f2), cf) in &fcop {
                    let right_f = self.pres().mul_monomials(f2, u11);
                    hh_add_term(&mut out, ((f1.clone(), u10.clone()), (right_f, u2.clone())), &cu * cn * cf);
                }
            }
        }
        self.hcop_memo.borrow_mut().insert(key.clone(), out.clone());
        out
    }

    /// `Δ(f▸◂u) = f(1) ▸◂ u(1)⟨0⟩ ⊗ f(2) u(1)⟨1⟩ ▸◂ u(2)`.
    pub fn h_coproduct(&self, h: &HElement) -> HxH {
        let mut out = HxH::new();
        for (key, c) in h {
            for (k, v) in self.h_coproduct_basis(key) {
                hh_add_term(&mut out, k, v * c);
            }
        }
        out
    }

    pub fn h_counit(&self, h: &HElement) -> Rat {
        let mut total = Rat::zero();
        for ((fm, um), c) in h {
            let mut f = FElement::new();
            f.insert(fm.clone(), Rat::one());
            let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
            total += c * self.pres().counit(&f) * self.ualg.counit(&u);
        }
        total
    }

    fn h_antipode_basis(&self, key: &(FMonomial, PbwMonomial)) -> HElement {
        if let Some(hit) = self.hanti_memo.borrow().get(key) {
            return hit.clone();
        }
        let (fm, um) = key;
        let nabla = self.coaction_monomial(um);
        let mut out = HElement::new();
        for ((u0, u1), cn) in &nabla {
            let su = self.ualg.antipode(&[(u0.clone(), Rat::one())].into_iter().collect());
            let mut fu1 = FElement::new();
            fu1.insert(self.pres().mul_monomials(fm, u1), Rat::one());
            let sf = self.pres().antipode(&fu1);
            let left = self.h_from_u(&su);
            let right = self.h_from_f(&sf);
            let prod = self.h_mul(&left, &right);
            h_scale_into(&mut out, &prod, cn);
        }
        self.hanti_memo.borrow_mut().insert(key.clone(), out.clone());
        out
    }

    /// `S(f▸◂u) = (1▸◂S(u⟨0⟩)) (S(f u⟨1⟩) ▸◂ 1)`.
    pub fn h_antipode(&self, h: &HElement) -> HElement {
        let mut out = HElement::new();
        for (key, c) in h {
            let part = self.h_antipode_basis(key);
            h_scale_into(&mut out, &part, c);
        }
        out
    }

    /// Iterated coproduct of H with `legs` factors.
    pub fn h_coproduct_iter(&self, h: &HElement, legs: usize) -> BTreeMap<Vec<(FMonomial, PbwMonomial)>, Rat> {
        let mut out: BTreeMap<Vec<(FMonomial, PbwMonomial)>, Rat> = BTreeMap::new();
        if legs == 1 {
            for (k, c) in h {
                let key = alloc::vec![k.clone()];
                match out.get_mut(&key) {
                    Some(cur) => *cur += c,
                    None => {
                        out.insert(key, c.clone());
                    }
                }
            }
            return out;
        }
        for (k, c) in h {
            let mut single = HElement::new();
            single.insert(k.clone(), Rat::one());
            for ((a, b), c2) in self.h_coproduct(&single) {
                let mut left = HElement::new();
                left.insert(a, Rat::one());
                for (mut parts, c3) in self.h_coproduct_iter(&left, legs - 1) {
                    parts.push(b.clone());
                    let v = c * &c2 * &c3;
                    match out.get_mut(&parts) {
                        Some(cur) => {
                            *cur += v;
                            if cur.is_zero() {
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
        }
        out
    }

    /// Twisted antipode `S_δ(h) = δ(h(1)) S(h(2))`.
    pub fn twisted_antipode(&self, h: &HElement) -> HElement {
        let mut out = HElement::new();
        for ((a, b), c) in self.h_coproduct(h) {
            let mut left = HElement::new();
            left.insert(a, Rat::one());
            let d = self.delta_h(&left);
            if d.is_zero() {
                continue;
            }
            let mut right = HElement::new();
            right.insert(b, Rat::one());
            let s = self.h_antipode(&right);
            h_scale_into(&mut out, &s, &(c * d));
        }
        out
    }

    pub fn fmt_h(&self, h: &HElement) -> String {
        if h.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, ((fm, um), c)) in h.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            out.push_str(&alloc::format!(
                "{}*{}|>{}",
                rat_to_string(c),
                self.pres().fmt_monomial(fm),
                fmt_monomial(um, &self.datum.g1.basis_names)
            ));
        }
        out
    }
}

fn uxf_add(out: &mut UxF, k: (PbwMonomial, FMonomial), c: Rat) {
    if c.is_zero() {
        return;
    }
    match out.get_mut(&k) {
        Some(cur) => {
            *cur += c;
            if cur.is_zero() {
                out.remove(&k);
            }
        }
        None => {
            out.insert(k, c);
        }
    }
}

fn uxf_fmt(ops: &HopfOps<'_>, t: &UxF) -> String {
    if t.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (k, ((u, f), c)) in t.iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        out.push_str(&alloc::format!(
            "{}*{}(x){}",
            rat_to_string(c),
            fmt_monomial(u, &ops.datum.g1.basis_names),
            ops.pres().fmt_monomial(f)
        ));
    }
    out
}

/// `σ_F = det[f_i^j]` by Leibniz expansion.
pub fn coaction_determinant(datum: &LieHopf) -> FElement {
    let n = datum.g1.dim;
    let pres = &datum.pres;
    if n == 0 {
        return pres.one();
    }
    let mut total = FElement::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut sign = 1i64;
        {
            let mut seen = perm.clone();
            for i in 1..seen.len() {
                let mut j = i;
                while j > 0 && seen[j - 1] > seen[j] {
                    seen.swap(j - 1, j);
                    sign = -sign;
                    j -= 1;
                }
            }
        }
        let mut term = pres.one();
        for (i, &pi) in perm.iter().enumerate() {
            term = pres.mul(&term, &datum.coaction[i][pi]);
        }
        f_scale_into(&mut total, &term, &rat(sign, 1));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    total
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The `u • (f1⊗…⊗fn)` action of U(g1) on F^{⊗n}: each Δ-leg of u acts on
/// its own slot through ▷ while its iterated-coaction F-legs multiply the
/// later slots.
pub fn bullet_tensor(ops: &HopfOps<'_>, u: &UElement, legs: &[FElement]) -> BTreeMap<Vec<FMonomial>, Rat> {
    let n = legs.len();
    let mut out: BTreeMap<Vec<FMonomial>, Rat> = BTreeMap::new();
    let mut add = |key: Vec<FMonomial>, v: Rat, out: &mut BTreeMap<Vec<FMonomial>, Rat>| {
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
    };
    if n == 0 {
        // F^{⊗0} = scalars: u acts by ε
        let eps = ops.ualg.counit(u);
        add(Vec::new(), eps, &mut out);
        return out;
    }
    for (m, c) in u {
        for (parts, weight) in split_monomial_multi(m, n) {
            let mut partials: Vec<(Vec<FElement>, Rat)> =
                alloc::vec![(alloc::vec![ops.pres().one(); n], c * weight)];
            for (j, part) in parts.iter().enumerate() {
                let uj: UElement = [(part.clone(), Rat::one())].into_iter().collect();
                let iter = ops.coaction_iter(&uj, n - 1 - j);
                let mut next: Vec<(Vec<FElement>, Rat)> = Vec::new();
                for ((core, flegs), cc) in &iter {
                    for (slots, pw) in &partials {
                        let mut slots2 = slots.clone();
                        let acted = ops.act_monomial(core, &legs[j]);
                        slots2[j] = ops.pres().mul(&slots2[j], &acted);
                        // leg i multiplies slot j+1+i
                        for (i, leg) in flegs.iter().enumerate() {
                            let mut lf = FElement::new();
                            lf.insert(leg.clone(), Rat::one());
                            slots2[j + 1 + i] = ops.pres().mul(&slots2[j + 1 + i], &lf);
                        }
                        next.push((slots2, pw * cc));
                    }
                }
                partials = next;
            }
            for (slots, pw) in partials {
                let mut tuples: Vec<(Vec<FMonomial>, Rat)> = alloc::vec![(Vec::new(), pw)];
                for slot in &slots {
                    let mut next = Vec::new();
                    for (prefix, cc) in &tuples {
                        for (mm, cm) in slot {
                            let mut p2 = prefix.clone();
                            p2.push(mm.clone());
                            next.push((p2, cc * cm));
                        }
                    }
                    tuples = next;
                }
                for (tuple, cc) in tuples {
                    add(tuple, cc, &mut out);
                }
            }
        }
    }
    out
}

pub fn fmt_ftensor(pres: &FPres, t: &BTreeMap<Vec<FMonomial>, Rat>) -> String {
    if t.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (k, (legs, c)) in t.iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        out.push_str(&rat_to_string(c));
        for leg in legs {
            out.push_str(&alloc::format!("(x){}", pres.fmt_monomial(leg)));
        }
    }
    out
}

/// Definition checks for a Lie-Hopf datum: derivation property, counit
/// vanishing, Δ-equivariance, the structure identity, and the comodule
/// laws of the coaction matrix.
pub fn check_lie_hopf(datum: &LieHopf, degree: i64) -> Report {
    let mut report = check_hopf_axioms_f(&datum.pres, degree);
    let ops = HopfOps::new(datum);
    let pres = &datum.pres;
    let n = datum.g1.dim;
    let names = &datum.g1.basis_names;
    let monos = pres.monomials_up_to(degree);

    // action by derivations on sampled products
    for a in monos.iter().take(6) {
        for b in monos.iter().take(6) {
            let mut fa = FElement::new();
            fa.insert(a.clone(), Rat::one());
            let mut fb = FElement::new();
            fb.insert(b.clone(), Rat::one());
            let prod = pres.mul(&fa, &fb);
            for i in 0..n {
                let lhs = ops.act_gen(i, &prod);
                let mut rhs = pres.mul(&ops.act_gen(i, &fa), &fb);
                let second = pres.mul(&fa, &ops.act_gen(i, &fb));
                f_scale_into(&mut rhs, &second, &Rat::one());
                if lhs != rhs {
                    report.push(
                        "action-derivation",
                        alloc::format!("{} |> {}*{}", names[i], pres.fmt_monomial(a), pres.fmt_monomial(b)),
                        pres.fmt(&lhs),
                        pres.fmt(&rhs),
                    );
                }
            }
        }
    }

    // ε(X ▷ f) = 0
    for m in &monos {
        let mut f = FElement::new();
        f.insert(m.clone(), Rat::one());
        for i in 0..n {
            let eps = pres.counit(&ops.act_gen(i, &f));
            if !eps.is_zero() {
                report.push(
                    "epsilon-action",
                    alloc::format!("{} |> {}", names[i], pres.fmt_monomial(m)),
                    rat_to_string(&eps),
                    String::from("0"),
                );
            }
        }
    }

    // Δ(X▷f) = X•Δ(f)
    for m in &monos {
        let mut f = FElement::new();
        f.insert(m.clone(), Rat::one());
        for i in 0..n {
            let lhs = pres.coproduct(&ops.act_gen(i, &f));
            let mut rhs = FxF::new();
            let x: UElement = u_gen(n, i);
            for ((l, r), c) in pres.coproduct(&f) {
                let mut lf = FElement::new();
                lf.insert(l, Rat::one());
                let mut rf = FElement::new();
                rf.insert(r, Rat::one());
                let acted = bullet_tensor(&ops, &x, &[lf, rf]);
                for (tuple, cc) in acted {
                    ff_add_term(&mut rhs, (tuple[0].clone(), tuple[1].clone()), cc * &c);
                }
            }
            if lhs != rhs {
                report.push(
                    "delta-equivariance",
                    alloc::format!("{} |> {}", names[i], pres.fmt_monomial(m)),
                    ff_fmt(pres, &lhs),
                    ff_fmt(pres, &rhs),
                );
            }
        }
    }

    // structure identity: f^k_{j,i} − f^k_{i,j} = Σ C^k_{s,r} f_i^r f_j^s + Σ C^l_{i,j} f_l^k
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut lhs = ops.act_gen(i, &datum.coaction[j][k]);
                let minus = ops.act_gen(j, &datum.coaction[i][k]);
                f_scale_into(&mut lhs, &minus, &rat(-1, 1));
                let mut rhs = FElement::new();
                for s in 0..n {
                    for r in 0..n {
                        let c = datum.g1.bracket_basis(s, r).get(&k).cloned().unwrap_or_else(Rat::zero);
                        if c.is_zero() {
                            continue;
                        }
                        let prod = pres.mul(&datum.coaction[i][r], &datum.coaction[j][s]);
                        f_scale_into(&mut rhs, &prod, &c);
                    }
                }
                for (l, c) in datum.g1.bracket_basis(i, j) {
                    f_scale_into(&mut rhs, &datum.coaction[*l][k], c);
                }
                if lhs != rhs {
                    report.push(
                        "structure-identity",
                        alloc::format!("(i,j,k) = ({},{},{})", names[i], names[j], names[k]),
                        pres.fmt(&lhs),
                        pres.fmt(&rhs),
                    );
                }
            }
        }
    }

    // coaction matrix: Δ(f_i^j) = Σ_k f_k^j ⊗ f_i^k and ε(f_i^j) = δ_ij
    for i in 0..n {
        for j in 0..n {
            let lhs = pres.coproduct(&datum.coaction[i][j]);
            let mut rhs = FxF::new();
            for k in 0..n {
                for (ml, cl) in &datum.coaction[k][j] {
                    for (mr, cr) in &datum.coaction[i][k] {
                        ff_add_term(&mut rhs, (ml.clone(), mr.clone()), cl * cr);
                    }
                }
            }
            if lhs != rhs {
                report.push(
                    "coaction-comodule",
                    alloc::format!("f_{}^{}", names[i], names[j]),
                    ff_fmt(pres, &lhs),
                    ff_fmt(pres, &rhs),
                );
            }
            let eps = pres.counit(&datum.coaction[i][j]);
            let expect = if i == j { Rat::one() } else { Rat::zero() };
            if eps != expect {
                report.push(
                    "coaction-counit",
                    alloc::format!("f_{}^{}", names[i], names[j]),
                    rat_to_string(&eps),
                    rat_to_string(&expect),
                );
            }
        }
    }
    report
}

/// Matched-pair (mp1–mp5, cc1–cc2, ma1–ma2) and Hopf-algebra checks for
/// H = F ▸◂ U(g1), on PBW/F monomials to `degree` plus seeded samples.
pub fn check_matched_pair_hopf(datum: &LieHopf, degree: i64, samples: usize, seed: u64) -> Report {
    let mut report = Report::new();
    let ops = HopfOps::new(datum);
    let pres = &datum.pres;
    let n = datum.g1.dim;
    let umonos = monomials_up_to(n, degree as u32);
    let fmonos = pres.monomials_up_to(degree);
    let names = &datum.g1.basis_names;

    // ma1 / mp1: u▷1 = ε(u)1 and ε(u▷f) = ε(u)ε(f)
    for um in &umonos {
        let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
        let lhs = ops.act_u(&u, &pres.one());
        let mut rhs = FElement::new();
        f_add_term(&mut rhs, pres.unit_monomial(), ops.ualg.counit(&u));
        if lhs != rhs {
            report.push("ma1", fmt_monomial(um, names), pres.fmt(&lhs), pres.fmt(&rhs));
        }
        for fm in &fmonos {
            let mut f = FElement::new();
            f.insert(fm.clone(), Rat::one());
            let le = pres.counit(&ops.act_u(&u, &f));
            let re = ops.ualg.counit(&u) * pres.counit(&f);
            if le != re {
                report.push(
                    "mp1",
                    alloc::format!("{} |> {}", fmt_monomial(um, names), pres.fmt_monomial(fm)),
                    rat_to_string(&le),
                    rat_to_string(&re),
                );
            }
        }
    }

    // ma2: u▷(fg) = (u(1)▷f)(u(2)▷g)
    for um in umonos.iter().filter(|m| m.iter().sum::<u32>() <= 2) {
        let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
        let cop = ops.ualg.coproduct(&u);
        for fa in fmonos.iter().take(5) {
            for fb in fmonos.iter().take(5) {
                let mut a = FElement::new();
                a.insert(fa.clone(), Rat::one());
                let mut b = FElement::new();
                b.insert(fb.clone(), Rat::one());
                let lhs = ops.act_u(&u, &pres.mul(&a, &b));
                let mut rhs = FElement::new();
                for ((u1, u2), c) in &cop {
                    let left = ops.act_monomial(u1, &a);
                    let right = ops.act_monomial(u2, &b);
                    let prod = pres.mul(&left, &right);
                    f_scale_into(&mut rhs, &prod, c);
                }
                if lhs != rhs {
                    report.push(
                        "ma2",
                        alloc::format!(
                            "{} |> {}*{}",
                            fmt_monomial(um, names),
                            pres.fmt_monomial(fa),
                            pres.fmt_monomial(fb)
                        ),
                        pres.fmt(&lhs),
                        pres.fmt(&rhs),
                    );
                }
            }
        }
    }

    // mp3 / coaction unit
    {
        let one = ops.coaction_u(&u_one(n));
        let mut expect = UxF::new();
        expect.insert((alloc::vec![0; n], pres.unit_monomial()), Rat::one());
        if one != expect {
            report.push("mp3", String::from("1"), uxf_fmt(&ops, &one), uxf_fmt(&ops, &expect));
        }
    }

    // coaction well-definedness: ∇(X_i X_j) − ∇(X_j X_i) = ∇([X_i, X_j])
    for i in 0..n {
        for j in 0..n {
            let xi = u_gen(n, i);
            let xj = u_gen(n, j);
            let a = ops.coaction_u(&ops.ualg.mul(&xi, &xj));
            let b = ops.coaction_u(&ops.ualg.mul(&xj, &xi));
            let mut lhs = a;
            for (k, v) in b {
                uxf_add(&mut lhs, k, -v);
            }
            let mut bracket = UElement::new();
            for (k, c) in datum.g1.bracket_basis(i, j) {
                let mut mono = alloc::vec![0u32; n];
                mono[*k] = 1;
                u_add_term(&mut bracket, mono, c.clone());
            }
            let rhs = ops.coaction_u(&bracket);
            if lhs != rhs {
                report.push(
                    "coaction-well-defined",
                    alloc::format!("[{},{}]", names[i], names[j]),
                    uxf_fmt(&ops, &lhs),
                    uxf_fmt(&ops, &rhs),
                );
            }
        }
    }

    // mp4: ∇(uv) = u(1)⟨0⟩ v⟨0⟩ ⊗ u(1)⟨1⟩ (u(2) ▷ v⟨1⟩)
    for um in umonos.iter().filter(|m| m.iter().sum::<u32>() <= 2) {
        for vm in umonos.iter().filter(|m| m.iter().sum::<u32>() <= 2) {
            let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
            let v: UElement = [(vm.clone(), Rat::one())].into_iter().collect();
            let lhs = ops.coaction_u(&ops.ualg.mul(&u, &v));
            let mut rhs = UxF::new();
            let nabla_v = ops.coaction_u(&v);
            for ((u1, u2), cu) in ops.ualg.coproduct(&u) {
                let nabla_u1 = ops.coaction_monomial(&u1);
                for ((u10, u11), c1) in &nabla_u1 {
                    for ((v0, v1), cv) in &nabla_v {
                        let mut v1e = FElement::new();
                        v1e.insert(v1.clone(), Rat::one());
                        let acted = ops.act_monomial(&u2, &v1e);
                        let mut u11e = FElement::new();
                        u11e.insert(u11.clone(), Rat::one());
                        let f_part = pres.mul(&u11e, &acted);
                        let u_part = ops.ualg.mul(
                            &[(u10.clone(), Rat::one())].into_iter().collect(),
                            &[(v0.clone(), Rat::one())].into_iter().collect(),
                        );
                        for (mu, cmu) in &u_part {
                            for (mf, cmf) in &f_part {
                                uxf_add(&mut rhs, (mu.clone(), mf.clone()), &cu * c1 * cv * cmu * cmf);
                            }
                        }
                    }
                }
            }
            if lhs != rhs {
                report.push(
                    "mp4",
                    alloc::format!("u = {}, v = {}", fmt_monomial(um, names), fmt_monomial(vm, names)),
                    uxf_fmt(&ops, &lhs),
                    uxf_fmt(&ops, &rhs),
                );
            }
        }
    }

    // cc2: ε(u⟨0⟩) u⟨1⟩ = ε(u) 1
    for um in &umonos {
        let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
        let mut lhs = FElement::new();
        for ((u0, u1), c) in ops.coaction_u(&u) {
            let eps = ops.ualg.counit(&[(u0, Rat::one())].into_iter().collect());
            f_add_term(&mut lhs, u1, c * eps);
        }
        let mut rhs = FElement::new();
        f_add_term(&mut rhs, pres.unit_monomial(), ops.ualg.counit(&u));
        if lhs != rhs {
            report.push("cc2", fmt_monomial(um, names), pres.fmt(&lhs), pres.fmt(&rhs));
        }
    }

    // cc1: u⟨0⟩(1) ⊗ u⟨0⟩(2) ⊗ u⟨1⟩ = u(1)⟨0⟩ ⊗ u(2)⟨0⟩ ⊗ u(1)⟨1⟩ u(2)⟨1⟩
    for um in &umonos {
        let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
        let mut lhs: BTreeMap<(PbwMonomial, PbwMonomial, FMonomial), Rat> = BTreeMap::new();
        for ((u0, u1), c) in ops.coaction_u(&u) {
            for ((a, b), c2) in ops.ualg.coproduct(&[(u0, Rat::one())].into_iter().collect()) {
                let key = (a, b, u1.clone());
                let v = &c * &c2;
                *lhs.entry(key.clone()).or_insert_with(Rat::zero) += v;
                if lhs[&key].is_zero() {
                    lhs.remove(&key);
                }
            }
        }
        let mut rhs: BTreeMap<(PbwMonomial, PbwMonomial, FMonomial), Rat> = BTreeMap::new();
        for ((u1m, u2m), c) in ops.ualg.coproduct(&u) {
            let n1 = ops.coaction_monomial(&u1m);
            let n2 = ops.coaction_monomial(&u2m);
            for ((a0, a1), ca) in &n1 {
                for ((b0, b1), cb) in &n2 {
                    let key = (a0.clone(), b0.clone(), pres.mul_monomials(a1, b1));
                    let v = &c * ca * cb;
                    *rhs.entry(key.clone()).or_insert_with(Rat::zero) += v;
                    if rhs[&key].is_zero() {
                        rhs.remove(&key);
                    }
                }
            }
        }
        if lhs != rhs {
            report.push(
                "cc1",
                fmt_monomial(um, names),
                alloc::format!("{} terms", lhs.len()),
                alloc::format!("{} terms", rhs.len()),
            );
        }
    }

    // mp2: Δ(u▷f) = u(1)⟨0⟩▷f(1) ⊗ u(1)⟨1⟩ (u(2)▷f(2))
    for um in umonos.iter().filter(|m| m.iter().sum::<u32>() <= 2) {
        let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
        for fm in fmonos.iter().take(6) {
            let mut f = FElement::new();
            f.insert(fm.clone(), Rat::one());
            let lhs = pres.coproduct(&ops.act_u(&u, &f));
            let mut rhs = FxF::new();
            let fcop = pres.coproduct(&f);
            for ((u1, u2), cu) in ops.ualg.coproduct(&u) {
                for ((u10, u11), c1) in &ops.coaction_monomial(&u1) {
                    for ((f1, f2), cf) in &fcop {
                        let mut f1e = FElement::new();
                        f1e.insert(f1.clone(), Rat::one());
                        let left = ops.act_monomial(u10, &f1e);
                        let mut f2e = FElement::new();
                        f2e.insert(f2.clone(), Rat::one());
                        let acted = ops.act_monomial(&u2, &f2e);
                        let mut u11e = FElement::new();
                        u11e.insert(u11.clone(), Rat::one());
                        let right = pres.mul(&u11e, &acted);
                        for (ml, cl) in &left {
                            for (mr, cr) in &right {
                                ff_add_term(&mut rhs, (ml.clone(), mr.clone()), &cu * c1 * cf * cl * cr);
                            }
                        }
                    }
                }
            }
            if lhs != rhs {
                report.push(
                    "mp2",
                    alloc::format!("{} |> {}", fmt_monomial(um, names), pres.fmt_monomial(fm)),
                    ff_fmt(pres, &lhs),
                    ff_fmt(pres, &rhs),
                );
            }
        }
    }

    // mp5: u(2)⟨0⟩ ⊗ (u(1)▷f) u(2)⟨1⟩ = u(1)⟨0⟩ ⊗ u(1)⟨1⟩ (u(2)▷f)
    for um in umonos.iter().filter(|m| m.iter().sum::<u32>() <= 2) {
        let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
        for fm in fmonos.iter().take(6) {
            let mut f = FElement::new();
            f.insert(fm.clone(), Rat::one());
            let mut lhs = UxF::new();
            let mut rhs = UxF::new();
            for ((u1, u2), cu) in ops.ualg.coproduct(&u) {
                let left_f = ops.act_monomial(&u1, &f);
                for ((u20, u21), c2) in &ops.coaction_monomial(&u2) {
                    let mut u21e = FElement::new();
                    u21e.insert(u21.clone(), Rat::one());
                    let prod = pres.mul(&left_f, &u21e);
                    for (mf, cf) in &prod {
                        uxf_add(&mut lhs, (u20.clone(), mf.clone()), &cu * c2 * cf);
                    }
                }
                let right_f = ops.act_monomial(&u2, &f);
                for ((u10, u11), c1) in &ops.coaction_monomial(&u1) {
                    let mut u11e = FElement::new();
                    u11e.insert(u11.clone(), Rat::one());
                    let prod = pres.mul(&u11e, &right_f);
                    for (mf, cf) in &prod {
                        uxf_add(&mut rhs, (u10.clone(), mf.clone()), &cu * c1 * cf);
                    }
                }
            }
            if lhs != rhs {
                report.push(
                    "mp5",
                    alloc::format!("u = {}, f = {}", fmt_monomial(um, names), pres.fmt_monomial(fm)),
                    uxf_fmt(&ops, &lhs),
                    uxf_fmt(&ops, &rhs),
                );
            }
        }
    }

    // H-level Hopf axioms on a spanning set plus seeded random elements
    let mut rng = SplitMix64::new(seed);
    let mut spanning: Vec<HElement> = Vec::new();
    for fm in fmonos.iter() {
        for um in &umonos {
            if fm.iter().map(|e| e.abs()).sum::<i64>() as u32 + um.iter().sum::<u32>() > degree as u32 {
                continue;
            }
            let mut h = HElement::new();
            h.insert((fm.clone(), um.clone()), Rat::one());
            spanning.push(h);
        }
    }
    for _ in 0..samples {
        let mut h = HElement::new();
        for _ in 0..2 {
            let fm = fmonos[rng.below(fmonos.len())].clone();
            let um = umonos[rng.below(umonos.len())].clone();
            h_add_term(&mut h, (fm, um), rat(rng.small_coeff(), 1));
        }
        if !h.is_empty() {
            spanning.push(h);
        }
    }
    for h in &spanning {
        // coassociativity via the two 3-fold coproducts
        let lhs = {
            let mut out: BTreeMap<Vec<(FMonomial, PbwMonomial)>, Rat> = BTreeMap::new();
            for ((a, b), c) in ops.h_coproduct(h) {
                let mut left = HElement::new();
                left.insert(a, Rat::one());
                for ((a1, a2), c2) in ops.h_coproduct(&left) {
                    let key = alloc::vec![a1, a2, b.clone()];
                    *out.entry(key.clone()).or_insert_with(Rat::zero) += &c * &c2;
                    if out[&key].is_zero() {
                        out.remove(&key);
                    }
                }
            }
            out
        };
        let rhs = {
            let mut out: BTreeMap<Vec<(FMonomial, PbwMonomial)>, Rat> = BTreeMap::new();
            for ((a, b), c) in ops.h_coproduct(h) {
                let mut right = HElement::new();
                right.insert(b, Rat::one());
                for ((b1, b2), c2) in ops.h_coproduct(&right) {
                    let key = alloc::vec![a.clone(), b1, b2];
                    *out.entry(key.clone()).or_insert_with(Rat::zero) += &c * &c2;
                    if out[&key].is_zero() {
                        out.remove(&key);
                    }
                }
            }
            out
        };
        if lhs != rhs {
            report.push(
                "h-coassociativity",
                ops.fmt_h(h),
                alloc::format!("{} terms", lhs.len()),
                alloc::format!("{} terms", rhs.len()),
            );
        }
        // counit laws
        let mut left_counit = HElement::new();
        let mut right_counit = HElement::new();
        for ((a, b), c) in ops.h_coproduct(h) {
            let mut ae = HElement::new();
            ae.insert(a.clone(), Rat::one());
            let mut be = HElement::new();
            be.insert(b.clone(), Rat::one());
            h_add_term(&mut left_counit, b, c.clone() * ops.h_counit(&ae));
            h_add_term(&mut right_counit, a, c * ops.h_counit(&be));
        }
        if &left_counit != h || &right_counit != h {
            report.push("h-counit", ops.fmt_h(h), ops.fmt_h(&left_counit), ops.fmt_h(&right_counit));
        }
        // antipode laws: m(S⊗id)Δ = ηε = m(id⊗S)Δ
        let mut s_left = HElement::new();
        let mut s_right = HElement::new();
        for ((a, b), c) in ops.h_coproduct(h) {
            let mut ae = HElement::new();
            ae.insert(a, Rat::one());
            let mut be = HElement::new();
            be.insert(b, Rat::one());
            let l = ops.h_mul(&ops.h_antipode(&ae), &be);
            h_scale_into(&mut s_left, &l, &c);
            let r = ops.h_mul(&ae, &ops.h_antipode(&be));
            h_scale_into(&mut s_right, &r, &c);
        }
        let mut target = HElement::new();
        h_add_term(&mut target, (pres.unit_monomial(), alloc::vec![0; n]), ops.h_counit(h));
        if s_left != target {
            report.push("h-antipode", ops.fmt_h(h), ops.fmt_h(&s_left), ops.fmt_h(&target));
        }
        if s_right != target {
            report.push("h-antipode", ops.fmt_h(h), ops.fmt_h(&s_right), ops.fmt_h(&target));
        }
    }
    // Δ is an algebra map on sampled pairs
    for a in spanning.iter().take(6) {
        for b in spanning.iter().take(6) {
            let lhs = ops.h_coproduct(&ops.h_mul(a, b));
            let mut rhs = HxH::new();
            for ((a1, a2), ca) in ops.h_coproduct(a) {
                let mut a1e = HElement::new();
                a1e.insert(a1, Rat::one());
                let mut a2e = HElement::new();
                a2e.insert(a2, Rat::one());
                for ((b1, b2), cb) in ops.h_coproduct(b) {
                    let mut b1e = HElement::new();
                    b1e.insert(b1, Rat::one());
                    let mut b2e = HElement::new();
                    b2e.insert(b2, Rat::one());
                    let left = ops.h_mul(&a1e, &b1e);
                    let right = ops.h_mul(&a2e, &b2e);
                    for (kl, cl) in &left {
                        for (kr, cr) in &right {
                            hh_add_term(&mut rhs, (kl.clone(), kr.clone()), &ca * &cb * cl * cr);
                        }
                    }
                }
            }
            if lhs != rhs {
                report.push(
                    "h-coproduct-multiplicative",
                    alloc::format!("{} , {}", ops.fmt_h(a), ops.fmt_h(b)),
                    alloc::format!("{} terms", lhs.len()),
                    alloc::format!("{} terms", rhs.len()),
                );
            }
        }
    }
    report
}

/// The canonical modular pair: δ(f▸◂u) = ε(f) δ_g(u) and σ = det[f_i^j].
pub fn canonical_mpi(datum: &LieHopf) -> (Vec<Rat>, FElement) {
    let ops = HopfOps::new(datum);
    (ops.delta.clone(), ops.sigma.clone())
}

/// Modular-pair-in-involution checks: σ group-like, δ(σ▸◂1) = 1, and
/// S_δ² = Ad_σ on generators and degree-≤D products.
pub fn check_mpi(datum: &LieHopf, degree: i64) -> Report {
    let mut report = Report::new();
    let ops = HopfOps::new(datum);
    let pres = &datum.pres;
    let n = datum.g1.dim;

    // σ group-like
    let cop = pres.coproduct(&ops.sigma);
    let mut expect = FxF::new();
    for (ml, cl) in &ops.sigma {
        for (mr, cr) in &ops.sigma {
            ff_add_term(&mut expect, (ml.clone(), mr.clone()), cl * cr);
        }
    }
    if cop != expect {
        report.push("sigma-group-like", pres.fmt(&ops.sigma), ff_fmt(pres, &cop), ff_fmt(pres, &expect));
    }

    // δ(σ ▸◂ 1) = 1
    let sigma_h = ops.h_from_f(&ops.sigma);
    let d = ops.delta_h(&sigma_h);
    if !d.is_one() {
        report.push("delta-sigma", pres.fmt(&ops.sigma), rat_to_string(&d), String::from("1"));
    }

    let Some(sigma_inv) = ops.sigma_inv.clone() else {
        report.push(
            "sigma-invertible",
            pres.fmt(&ops.sigma),
            String::from("no inverse in F"),
            String::from("unit monomial"),
        );
        return report;
    };

    // S_δ² = Ad_σ on generators and their products up to `degree` factors
    let mut gens: Vec<HElement> = Vec::new();
    for g in 0..pres.n() {
        gens.push(ops.h_from_f(&pres.gen(g)));
    }
    for i in 0..n {
        gens.push(ops.h_from_u(&u_gen(n, i)));
    }
    let mut elements = gens.clone();
    let mut frontier = gens.clone();
    for _ in 1..degree.max(1) {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &gens {
                next.push(ops.h_mul(a, b));
            }
        }
        elements.extend(next.iter().cloned());
        frontier = next;
    }
    let sig_h = ops.h_from_f(&ops.sigma);
    let sig_inv_h = ops.h_from_f(&sigma_inv);
    for h in &elements {
        let lhs = ops.twisted_antipode(&ops.twisted_antipode(h));
        let rhs = ops.h_mul(&ops.h_mul(&sig_h, h), &sig_inv_h);
        if lhs != rhs {
            report.push("twisted-antipode-involution", ops.fmt_h(h), ops.fmt_h(&lhs), ops.fmt_h(&rhs));
        }
    }
    report
}

pub mod fixtures {
    use super::*;
    use crate::liealg::fixtures::{borel, sl2};
    use alloc::string::ToString;

    /// E1: F = ℚ[f] over the Borel of sl2; H▷f = 2f, E▷f = f²,
    /// coaction matrix [[1, 0], [f, 1]].
    pub fn e1() -> LieHopf {
        let g1 = borel();
        let f_gen = Generator {
            name: "f".to_string(),
            invertible: false,
            epsilon: rat(0, 1),
            coproduct: [
                ((alloc::vec![1], alloc::vec![0]), rat(1, 1)),
                ((alloc::vec![0], alloc::vec![1]), rat(1, 1)),
            ]
            .into_iter()
            .collect(),
            antipode: [(alloc::vec![1], rat(-1, 1))].into_iter().collect(),
        };
        let pres = FPres { gens: alloc::vec![f_gen] };
        let two_f: FElement = [(alloc::vec![1], rat(2, 1))].into_iter().collect();
        let f_sq: FElement = [(alloc::vec![2], rat(1, 1))].into_iter().collect();
        let one = pres.one();
        let zero = FElement::new();
        let f: FElement = [(alloc::vec![1], rat(1, 1))].into_iter().collect();
        LieHopf {
            g1,
            pres,
            action: alloc::vec![alloc::vec![two_f], alloc::vec![f_sq]],
            coaction: alloc::vec![alloc::vec![one.clone(), zero], alloc::vec![f, one]],
            delta_override: None,
            sigma_override: None,
        }
    }

    /// E3: F = ℚ[e, e⁻¹] over the 1-dimensional g1 = span{Y}; trivial
    /// action, ∇Y = Y ⊗ e.
    pub fn e3() -> LieHopf {
        let g1 = LieAlgebra::abelian(alloc::vec!["Y".to_string()]);
        let e_gen = Generator {
            name: "e".to_string(),
            invertible: true,
            epsilon: rat(1, 1),
            coproduct: [((alloc::vec![1], alloc::vec![1]), rat(1, 1))].into_iter().collect(),
            antipode: [(alloc::vec![-1], rat(1, 1))].into_iter().collect(),
        };
        let pres = FPres { gens: alloc::vec![e_gen] };
        let e: FElement = [(alloc::vec![1], rat(1, 1))].into_iter().collect();
        LieHopf {
            g1,
            pres,
            action: alloc::vec![alloc::vec![FElement::new()]],
            coaction: alloc::vec![alloc::vec![e]],
            delta_override: None,
            sigma_override: None,
        }
    }

    /// E0: trivial F over sl2.
    pub fn e0() -> LieHopf {
        let g1 = sl2();
        let pres = FPres::trivial();
        let one = pres.one();
        let zero = FElement::new();
        let coaction = (0..3)
            .map(|i| (0..3).map(|j| if i == j { one.clone() } else { zero.clone() }).collect())
            .collect();
        LieHopf {
            g1,
            pres,
            action: alloc::vec![alloc::vec![]; 3],
            coaction,
            delta_override: None,
            sigma_override: None,
        }
    }

    /// E2: F = ℚ[t] over g1 = span{X} with X▷t = −t and trivial coaction.
    pub fn e2() -> LieHopf {
        let g1 = LieAlgebra::abelian(alloc::vec!["X".to_string()]);
        let t_gen = Generator {
            name: "t".to_string(),
            invertible: false,
            epsilon: rat(0, 1),
            coproduct: [
                ((alloc::vec![1], alloc::vec![0]), rat(1, 1)),
                ((alloc::vec![0], alloc::vec![1]), rat(1, 1)),
            ]
            .into_iter()
            .collect(),
            antipode: [(alloc::vec![1], rat(-1, 1))].into_iter().collect(),
        };
        let pres = FPres { gens: alloc::vec![t_gen] };
        let minus_t: FElement = [(alloc::vec![1], rat(-1, 1))].into_iter().collect();
        let one = pres.one();
        LieHopf {
            g1,
            pres,
            action: alloc::vec![alloc::vec![minus_t]],
            coaction: alloc::vec![alloc::vec![one]],
            delta_override: None,
            sigma_override: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn f_ops_basics() {
        let e1d = e1();
        let pres = &e1d.pres;
        // Δ(f) = f⊗1 + 1⊗f for the primitive generator
        let f = pres.gen(0);
        let cop = pres.coproduct(&f);
        assert_eq!(cop.len(), 2);
        // S(f²) = f²
        let f2 = pres.mul(&f, &f);
        assert_eq!(pres.antipode(&f2), f2);
        // E3: Δ(e⁻¹) = e⁻¹ ⊗ e⁻¹
        let e3d = e3();
        let e_inv: FElement = [(alloc::vec![-1], rat(1, 1))].into_iter().collect();
        let cop = e3d.pres.coproduct(&e_inv);
        assert_eq!(cop.len(), 1);
        assert_eq!(cop[&(alloc::vec![-1], alloc::vec![-1])], rat(1, 1));
        // only units are invertible
        assert!(e1d.pres.invert(&f2).is_none());
        assert!(e3d.pres.invert(&e_inv).is_some());
    }

    #[test]
    fn hopf_axioms_reports() {
        assert!(check_hopf_axioms_f(&e1().pres, 3).ok());
        assert!(check_hopf_axioms_f(&e3().pres, 3).ok());
        assert!(check_hopf_axioms_f(&FPres::trivial(), 3).ok());
        // group-like coproduct with ε = 0 breaks the counit law
        let bad = FPres {
            gens: alloc::vec![Generator {
                name: "f".into(),
                invertible: false,
                epsilon: rat(0, 1),
                coproduct: [((alloc::vec![1], alloc::vec![1]), rat(1, 1))].into_iter().collect(),
                antipode: [(alloc::vec![1], rat(-1, 1))].into_iter().collect(),
            }],
        };
        let report = check_hopf_axioms_f(&bad, 2);
        assert!(report.violations.iter().any(|v| v.law == "counit"));
    }

    #[test]
    fn lie_hopf_reports() {
        assert!(check_lie_hopf(&e1(), 3).ok());
        assert!(check_lie_hopf(&e3(), 3).ok());
        assert!(check_lie_hopf(&e0(), 3).ok());
        assert!(check_lie_hopf(&e2(), 3).ok());
        // E▷f = f breaks Δ-equivariance
        let mut broken = e1();
        broken.action[1][0] = [(alloc::vec![1], rat(1, 1))].into_iter().collect();
        let report = check_lie_hopf(&broken, 3);
        assert!(report.violations.iter().any(|v| v.law == "delta-equivariance"));
        // f_2^1 = f² breaks the structure identity
        let mut broken2 = e1();
        broken2.coaction[1][0] = [(alloc::vec![2], rat(1, 1))].into_iter().collect();
        let report2 = check_lie_hopf(&broken2, 3);
        assert!(report2.violations.iter().any(|v| v.law == "structure-identity"));
    }

    #[test]
    fn coaction_extension_values() {
        let datum = e1();
        let ops = HopfOps::new(&datum);
        // ∇X_i = Σ_j X_j ⊗ f_i^j
        let nabla_h = ops.coaction_monomial(&alloc::vec![1, 0]);
        assert_eq!(nabla_h.len(), 1);
        assert_eq!(nabla_h[&(alloc::vec![1, 0], alloc::vec![0])], rat(1, 1));
        let nabla_e = ops.coaction_monomial(&alloc::vec![0, 1]);
        assert_eq!(nabla_e.len(), 2);
        assert_eq!(nabla_e[&(alloc::vec![0, 1], alloc::vec![0])], rat(1, 1));
        assert_eq!(nabla_e[&(alloc::vec![1, 0], alloc::vec![1])], rat(1, 1));
        // ∇(HE) = HE⊗1 + H²⊗f + 2H⊗f
        let nabla_he = ops.coaction_monomial(&alloc::vec![1, 1]);
        assert_eq!(nabla_he[&(alloc::vec![1, 1], alloc::vec![0])], rat(1, 1));
        assert_eq!(nabla_he[&(alloc::vec![2, 0], alloc::vec![1])], rat(1, 1));
        assert_eq!(nabla_he[&(alloc::vec![1, 0], alloc::vec![1])], rat(2, 1));
        assert_eq!(nabla_he.len(), 3);
        // counit law of the extended coaction on PBW monomials
        for m in monomials_up_to(2, 3) {
            let u: UElement = [(m.clone(), Rat::one())].into_iter().collect();
            let mut recovered = UElement::new();
            for ((u0, u1), c) in ops.coaction_u(&u) {
                let mut f = FElement::new();
                f.insert(u1, Rat::one());
                u_add_term(&mut recovered, u0, c * ops.pres().counit(&f));
            }
            assert_eq!(recovered, u);
        }
    }

    #[test]
    fn bullet_values() {
        let datum = e1();
        let ops = HopfOps::new(&datum);
        let h = u_gen(2, 0);
        let e = u_gen(2, 1);
        let f = ops.pres().gen(0);
        // H • f = 2f
        let hf = bullet_tensor(&ops, &h, &[f.clone()]);
        assert_eq!(hf.len(), 1);
        assert_eq!(hf[&alloc::vec![alloc::vec![1]]], rat(2, 1));
        // E • (f⊗f) = f²⊗f + 3 f⊗f² (leg-expansion value)
        let eff = bullet_tensor(&ops, &e, &[f.clone(), f.clone()]);
        assert_eq!(eff[&alloc::vec![alloc::vec![2], alloc::vec![1]]], rat(1, 1));
        assert_eq!(eff[&alloc::vec![alloc::vec![1], alloc::vec![2]]], rat(3, 1));
        assert_eq!(eff.len(), 2);
        // bullet is an action: (HE)•f = H•(E•f)
        let he = ops.ualg.mul(&h, &e);
        let lhs = bullet_tensor(&ops, &he, &[f.clone()]);
        let e_f = bullet_tensor(&ops, &e, &[f.clone()]);
        let mut rhs: BTreeMap<Vec<FMonomial>, Rat> = BTreeMap::new();
        for (legs, c) in &e_f {
            let mut lf = FElement::new();
            lf.insert(legs[0].clone(), Rat::one());
            for (legs2, c2) in bullet_tensor(&ops, &h, &[lf]) {
                *rhs.entry(legs2).or_insert_with(Rat::zero) += c * &c2;
            }
        }
        rhs.retain(|_, v| !v.is_zero());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn h_ops_values() {
        let datum = e1();
        let ops = HopfOps::new(&datum);
        // (1▸◂X)(g▸◂1) = (X▷g)▸◂1 + g▸◂X for primitive X
        let x = ops.h_from_u(&u_gen(2, 0));
        let g = ops.h_from_f(&ops.pres().gen(0));
        let prod = ops.h_mul(&x, &g);
        let mut expect = HElement::new();
        expect.insert((alloc::vec![1], alloc::vec![0, 0]), rat(2, 1)); // H▷f = 2f
        expect.insert((alloc::vec![1], alloc::vec![1, 0]), rat(1, 1)); // f ▸◂ H
        assert_eq!(prod, expect);
        // ε(f▸◂u) = ε(f)ε(u)
        assert_eq!(ops.h_counit(&prod), rat(0, 1));
        assert_eq!(ops.h_counit(&ops.h_one()), rat(1, 1));
        // S(1▸◂E) = −1▸◂E + 2f▸◂1 + f▸◂H
        let e = ops.h_from_u(&u_gen(2, 1));
        let s = ops.h_antipode(&e);
        let mut expect = HElement::new();
        expect.insert((alloc::vec![0], alloc::vec![0, 1]), rat(-1, 1));
        expect.insert((alloc::vec![1], alloc::vec![0, 0]), rat(2, 1));
        expect.insert((alloc::vec![1], alloc::vec![1, 0]), rat(1, 1));
        assert_eq!(s, expect);
    }

    #[test]
    fn matched_pair_hopf_reports() {
        assert!(check_matched_pair_hopf(&e1(), 3, 5, 7).ok());
        assert!(check_matched_pair_hopf(&e3(), 3, 5, 7).ok());
        assert!(check_matched_pair_hopf(&e0(), 2, 3, 7).ok());
        // transposed coaction matrix breaks the U-coaction laws
        let mut broken = e1();
        broken.coaction = alloc::vec![
            alloc::vec![broken.pres.one(), [(alloc::vec![1], rat(1, 1))].into_iter().collect()],
            alloc::vec![FElement::new(), broken.pres.one()],
        ];
        let report = check_matched_pair_hopf(&broken, 2, 3, 7);
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "mp4" || v.law == "mp5" || v.law == "cc1" || v.law == "coaction-well-defined"));
    }

    #[test]
    fn mpi_values_and_checks() {
        let (delta, sigma) = canonical_mpi(&e1());
        assert_eq!(delta, alloc::vec![rat(2, 1), rat(0, 1)]);
        assert_eq!(sigma, e1().pres.one()); // det [[1, 0], [f, 1]] = 1
        let (_, sigma3) = canonical_mpi(&e3());
        assert_eq!(sigma3, [(alloc::vec![1], rat(1, 1))].into_iter().collect::<FElement>());
        let (delta0, sigma0) = canonical_mpi(&e0());
        assert_eq!(delta0, alloc::vec![rat(0, 1); 3]);
        assert_eq!(sigma0, e0().pres.one());

        assert!(check_mpi(&e1(), 2).ok());
        assert!(check_mpi(&e3(), 2).ok());
        assert!(check_mpi(&e2(), 2).ok());

        // mutate δ(E) from 0 to 1: S_δ² = Ad_σ fails
        let mut broken = e1();
        broken.delta_override = Some(alloc::vec![rat(2, 1), rat(1, 1)]);
        let report = check_mpi(&broken, 2);
        assert!(report.violations.iter().any(|v| v.law == "twisted-antipode-involution"));
    }

    #[test]
    fn mpi_e3_ad_sigma() {
        // Ad_e(1▸◂Y) = 1▸◂Y
        let datum = e3();
        let ops = HopfOps::new(&datum);
        let y = ops.h_from_u(&u_gen(1, 0));
        let sig = ops.h_from_f(&ops.sigma);
        let sig_inv = ops.h_from_f(&ops.sigma_inv.clone().unwrap());
        let ad = ops.h_mul(&ops.h_mul(&sig, &y), &sig_inv);
        assert_eq!(ad, y);
    }
}
