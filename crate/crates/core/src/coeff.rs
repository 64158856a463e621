//! Induced (g1, F)-modules, their Yetter-Drinfeld structure over
//! H = F ▸◂ U(g1), and the stable anti-Yetter-Drinfeld module ˢM_δ.
//!
//! The SAYD right action reads `m ◁ (f▸◂u) = ε(f) δ_g(u(2)) S(u(1))·m`:
//! the printed source formula carries a leg-index clash, and this is the
//! reading obtained from the tensor-product action `(n⊗m)h = nh(2)⊗mh(1)`
//! with n in ˢℚ_δ; the check suites arbitrate it.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exactlin::{rat, rat_to_string, Rat, SparseMatrix, SparseVec};
use crate::hopf::{
    f_scale_into, ff_add_term, h_add_term, FElement, FMonomial, FxF, HElement, HopfOps, LieHopf,
};
use crate::liealg::{basis_vec, fmt_vec, LieModule, Side};
use crate::matched::{fmt_monomial, monomials_up_to, PbwMonomial, UElement};
use crate::prng::SplitMix64;
use crate::report::Report;

/// Induced module datum: a g1-action, an F-coaction matrix, and an
/// optional g2-action used for pairing cross-checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedModule {
    pub name: String,
    pub dim: usize,
    /// g1_action[i] = ρ(X_i), a left action on coefficient columns
    pub g1_action: Vec<SparseMatrix>,
    /// f_coaction[b][a] = c_b^a with ∇m_a = Σ_b m_b ⊗ c_b^a
    pub f_coaction: Vec<Vec<FElement>>,
    pub g2_action: Option<Vec<SparseMatrix>>,
}

impl InducedModule {
    pub fn trivial(hopf: &LieHopf, name: &str) -> Self {
        InducedModule {
            name: String::from(name),
            dim: 1,
            g1_action: alloc::vec![SparseMatrix::new(1, 1); hopf.g1.dim],
            f_coaction: alloc::vec![alloc::vec![hopf.pres.one()]],
            g2_action: None,
        }
    }

    pub fn as_g1_module(&self) -> LieModule {
        LieModule::new(self.dim, Side::Left, self.g1_action.clone())
    }

    /// Left action of a PBW monomial of U(g1), word order.
    pub fn act_monomial(&self, m: &PbwMonomial, v: &SparseVec) -> SparseVec {
        let mut word = Vec::new();
        for (i, e) in m.iter().enumerate() {
            for _ in 0..*e {
                word.push(i);
            }
        }
        let mut out = v.clone();
        for i in word.into_iter().rev() {
            out = self.g1_action[i].mul_vec(&out);
        }
        out
    }

    pub fn act_u(&self, u: &UElement, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (m, c) in u {
            let moved = self.act_monomial(m, v);
            crate::exactlin::vec_add_scaled(&mut out, c, &moved);
        }
        out
    }

    /// `∇(v) = Σ_b m_b ⊗ (coefficient)`, linear extension of the matrix.
    pub fn coaction(&self, v: &SparseVec) -> Vec<(usize, FElement)> {
        let mut out: Vec<(usize, FElement)> = Vec::new();
        for b in 0..self.dim {
            let mut f = FElement::new();
            for (a, c) in v {
                f_scale_into(&mut f, &self.f_coaction[b][*a], c);
            }
            if !f.is_empty() {
                out.push((b, f));
            }
        }
        out
    }
}

/// `M ⊗ H` in the expanded basis.
pub type MxH = BTreeMap<(usize, (FMonomial, PbwMonomial)), Rat>;
/// `H ⊗ M` in the expanded basis.
pub type HxM = BTreeMap<((FMonomial, PbwMonomial), usize), Rat>;

pub fn mxh_add(out: &mut MxH, k: (usize, (FMonomial, PbwMonomial)), c: Rat) {
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

pub fn hxm_add(out: &mut HxM, k: ((FMonomial, PbwMonomial), usize), c: Rat) {
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

/// SAYD operations for ˢM_δ over H.
pub struct SaydOps<'a> {
    pub hopf: &'a HopfOps<'a>,
    pub module: &'a InducedModule,
}

impl<'a> SaydOps<'a> {
    pub fn new(hopf: &'a HopfOps<'a>, module: &'a InducedModule) -> Self {
        SaydOps { hopf, module }
    }

    /// Right SAYD action `m ◁ (f▸◂u) = ε(f) δ_g(u(2)) S(u(1))·m`.
    pub fn act(&self, v: &SparseVec, h: &HElement) -> SparseVec {
        let mut out = SparseVec::new();
        for ((fm, um), c) in h {
            let mut f = FElement::new();
            f.insert(fm.clone(), Rat::one());
            let eps = self.hopf.pres().counit(&f);
            if eps.is_zero() {
                continue;
            }
            let u: UElement = [(um.clone(), Rat::one())].into_iter().collect();
            for ((u1, u2), cu) in self.hopf.ualg.coproduct(&u) {
                let d = self.hopf.delta_u(&[(u2, Rat::one())].into_iter().collect());
                if d.is_zero() {
                    continue;
                }
                let su1 = self.hopf.ualg.antipode(&[(u1, Rat::one())].into_iter().collect());
                let moved = self.module.act_u(&su1, v);
                crate::exactlin::vec_add_scaled(&mut out, &(c * &eps * cu * d), &moved);
            }
        }
        out
    }

    /// SAYD left coaction `∇(m) = σ S(m⟨1⟩) ▸◂ 1 ⊗ m⟨0⟩`.
    pub fn coaction(&self, v: &SparseVec) -> HxM {
        let mut out = HxM::new();
        for (b, coeff) in self.module.coaction(v) {
            let s = self.hopf.pres().antipode(&coeff);
            let twisted = self.hopf.pres().mul(&self.hopf.sigma, &s);
            for (fm, c) in &twisted {
                hxm_add(&mut out, ((fm.clone(), alloc::vec![0; self.hopf.dim()]), b), c.clone());
            }
        }
        out
    }

    /// Left YD action `(f▸◂u)·m = ε(f) u·m`.
    pub fn yd_act(&self, h: &HElement, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for ((fm, um), c) in h {
            let mut f = FElement::new();
            f.insert(fm.clone(), Rat::one());
            let eps = self.hopf.pres().counit(&f);
            if eps.is_zero() {
                continue;
            }
            let moved = self.module.act_monomial(um, v);
            crate::exactlin::vec_add_scaled(&mut out, &(c * eps), &moved);
        }
        out
    }

    /// Right YD coaction `m ↦ m⟨0⟩ ⊗ (m⟨1⟩ ▸◂ 1)`.
    pub fn yd_coaction(&self, v: &SparseVec) -> MxH {
        let mut out = MxH::new();
        for (b, coeff) in self.module.coaction(v) {
            for (fm, c) in &coeff {
                mxh_add(&mut out, (b, (fm.clone(), alloc::vec![0; self.hopf.dim()])), c.clone());
            }
        }
        out
    }

    pub fn fmt_vec(&self, v: &SparseVec) -> String {
        let names: Vec<String> = (0..self.module.dim).map(|i| alloc::format!("m{i}")).collect();
        fmt_vec(v, &names)
    }
}

/// Induced-module checks: module/comodule laws, the induced condition
/// `∇(X·m) = X•∇(m)`, optional pairing consistency against the g2-action,
/// and the double-crossed-sum compatibility.
pub fn check_induced_module(
    datum: &LieHopf,
    module: &InducedModule,
    mp: Option<&crate::matched::MatchedPair>,
    pair_eval: Option<&dyn Fn(&FElement, &PbwMonomial) -> Rat>,
    degree: u32,
) -> Report {
    let mut report = Report::new();
    let ops = HopfOps::new(datum);
    let pres = &datum.pres;
    let n = datum.g1.dim;
    let names = &datum.g1.basis_names;

    // ρ is a g1-module
    report.merge(module.as_g1_module().check(&datum.g1));

    // comodule laws: Δ(c_k^a) = Σ_b c_k^b ⊗ c_b^a and ε(c_b^a) = δ_ba
    for k in 0..module.dim {
        for a in 0..module.dim {
            let lhs = pres.coproduct(&module.f_coaction[k][a]);
            let mut rhs = FxF::new();
            for b in 0..module.dim {
                for (ml, cl) in &module.f_coaction[k][b] {
                    for (mr, cr) in &module.f_coaction[b][a] {
                        ff_add_term(&mut rhs, (ml.clone(), mr.clone()), cl * cr);
                    }
                }
            }
            if lhs != rhs {
                report.push(
                    "module-comodule",
                    alloc::format!("c_{k}^{a}"),
                    alloc::format!("{} terms", lhs.len()),
                    alloc::format!("{} terms", rhs.len()),
                );
            }
            let eps = pres.counit(&module.f_coaction[k][a]);
            let expect = if k == a { Rat::one() } else { Rat::zero() };
            if eps != expect {
                report.push(
                    "module-comodule-counit",
                    alloc::format!("c_{k}^{a}"),
                    rat_to_string(&eps),
                    rat_to_string(&expect),
                );
            }
        }
    }

    // induced condition: ∇(X_i · m_a) = X_i • ∇(m_a)
    for i in 0..n {
        for a in 0..module.dim {
            let moved = module.g1_action[i].mul_vec(&basis_vec(a));
            let mut lhs: BTreeMap<(usize, FMonomial), Rat> = BTreeMap::new();
            let mut add = |key: (usize, FMonomial), v: Rat, out: &mut BTreeMap<(usize, FMonomial), Rat>| {
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
            for (b, f) in module.coaction(&moved) {
                for (m, c) in f {
                    add((b, m), c, &mut lhs);
                }
            }
            // X•(m⊗f) = X⟨0⟩m ⊗ X⟨1⟩f + m ⊗ X▷f
            let mut rhs: BTreeMap<(usize, FMonomial), Rat> = BTreeMap::new();
            for (b, f) in module.coaction(&basis_vec(a)) {
                for j in 0..n {
                    let moved_b = module.g1_action[j].mul_vec(&basis_vec(b));
                    let prod = pres.mul(&datum.coaction[i][j], &f);
                    for (bb, cb) in &moved_b {
                        for (mf, cf) in &prod {
                            add((*bb, mf.clone()), cb * cf, &mut rhs);
                        }
                    }
                }
                for (mf, cf) in ops.act_gen(i, &f) {
                    add((b, mf), cf, &mut rhs);
                }
            }
            if lhs != rhs {
                report.push(
                    "induced-condition",
                    alloc::format!("{} . m{a}", names[i]),
                    alloc::format!("{lhs:?}"),
                    alloc::format!("{rhs:?}"),
                );
            }
        }
    }

    // pairing consistency: v·m_a = Σ_b ⟨c_b^a, v⟩ m_b for PBW monomials of g2
    if let (Some(g2_action), Some(eval), Some(mp)) = (&module.g2_action, pair_eval, mp) {
        let g2_names = &mp.g2.basis_names;
        for vm in monomials_up_to(mp.g2.dim, degree) {
            for a in 0..module.dim {
                let mut lhs = basis_vec(a);
                {
                    let mut word = Vec::new();
                    for (i, e) in vm.iter().enumerate() {
                        for _ in 0..*e {
                            word.push(i);
                        }
                    }
                    for i in word.into_iter().rev() {
                        lhs = g2_action[i].mul_vec(&lhs);
                    }
                }
                let mut rhs = SparseVec::new();
                for b in 0..module.dim {
                    let value = eval(&module.f_coaction[b][a], &vm);
                    if !value.is_zero() {
                        crate::exactlin::vec_set(&mut rhs, b, value);
                    }
                }
                if lhs != rhs {
                    report.push(
                        "pairing-consistency",
                        alloc::format!("{} . m{a}", fmt_monomial(&vm, g2_names)),
                        alloc::format!("{lhs:?}"),
                        alloc::format!("{rhs:?}"),
                    );
                }
            }
        }
    }

    // double-crossed-sum compatibility: ζ(X m) − X(ζ m) = (ζ▷X)m + (ζ◁X)m
    if let (Some(g2_action), Some(mp)) = (&module.g2_action, mp) {
        for zeta in 0..mp.g2.dim {
            for i in 0..n {
                for a in 0..module.dim {
                    let m = basis_vec(a);
                    let xm = module.g1_action[i].mul_vec(&m);
                    let zm = g2_action[zeta].mul_vec(&m);
                    let mut lhs = g2_action[zeta].mul_vec(&xm);
                    crate::exactlin::vec_add_scaled(&mut lhs, &rat(-1, 1), &module.g1_action[i].mul_vec(&zm));
                    let mut rhs = SparseVec::new();
                    for (j, c) in &mp.left_action[zeta][i] {
                        crate::exactlin::vec_add_scaled(&mut rhs, c, &module.g1_action[*j].mul_vec(&m));
                    }
                    for (b, c) in &mp.right_action[zeta][i] {
                        crate::exactlin::vec_add_scaled(&mut rhs, c, &g2_action[*b].mul_vec(&m));
                    }
                    if lhs != rhs {
                        report.push(
                            "module-compatibility",
                            alloc::format!("({}, {}, m{a})", mp.g2.basis_names[zeta], names[i]),
                            alloc::format!("{lhs:?}"),
                            alloc::format!("{rhs:?}"),
                        );
                    }
                }
            }
        }
    }
    report
}

/// Yetter-Drinfeld condition `(h(2)·m)⟨0⟩ ⊗ (h(2)·m)⟨1⟩ h(1) =
/// h(1)·m⟨0⟩ ⊗ h(2) m⟨1⟩` on spanning elements plus seeded samples.
pub fn check_yd(datum: &LieHopf, module: &InducedModule, degree: i64, samples: usize, seed: u64) -> Report {
    let mut report = Report::new();
    let ops = HopfOps::new(datum);
    let sayd = SaydOps::new(&ops, module);
    for h in spanning_h(&ops, degree, samples, seed) {
        for a in 0..module.dim {
            let m = basis_vec(a);
            let mut lhs = MxH::new();
            let mut rhs = MxH::new();
            for ((h1, h2), c) in ops.h_coproduct(&h) {
                let mut h1e = HElement::new();
                h1e.insert(h1, Rat::one());
                let mut h2e = HElement::new();
                h2e.insert(h2, Rat::one());
                // lhs: coact on h(2)·m, multiply the H-leg by h(1) on the right
                let moved = sayd.yd_act(&h2e, &m);
                for ((b, hk), cv) in sayd.yd_coaction(&moved) {
                    let mut leg = HElement::new();
                    leg.insert(hk, Rat::one());
                    let prod = ops.h_mul(&leg, &h1e);
                    for (k2, c2) in &prod {
                        mxh_add(&mut lhs, (b, k2.clone()), &c * &cv * c2);
                    }
                }
                // rhs: h(1)·m⟨0⟩ ⊗ h(2) m⟨1⟩
                for ((b, hk), cv) in sayd.yd_coaction(&m) {
                    let moved = sayd.yd_act(&h1e, &basis_vec(b));
                    let mut leg = HElement::new();
                    leg.insert(hk, Rat::one());
                    let prod = ops.h_mul(&h2e, &leg);
                    for (bb, cb) in &moved {
                        for (k2, c2) in &prod {
                            mxh_add(&mut rhs, (*bb, k2.clone()), &c * &cv * cb * c2);
                        }
                    }
                }
            }
            if lhs != rhs {
                report.push(
                    "yd-condition",
                    alloc::format!("h = {}, m = m{a}", ops.fmt_h(&h)),
                    alloc::format!("{} terms", lhs.len()),
                    alloc::format!("{} terms", rhs.len()),
                );
            }
        }
    }
    report
}

/// Anti-Yetter-Drinfeld condition and stability for ˢM_δ.
pub fn check_sayd(datum: &LieHopf, module: &InducedModule, degree: i64, samples: usize, seed: u64) -> Report {
    let mut report = Report::new();
    let ops = HopfOps::new(datum);
    let sayd = SaydOps::new(&ops, module);

    for h in spanning_h(&ops, degree, samples, seed) {
        for a in 0..module.dim {
            let m = basis_vec(a);
            // LHS: ∇(m ◁ h)
            let acted = sayd.act(&m, &h);
            let mut lhs = HxM::new();
            for (b, c) in &acted {
                for (k, cv) in sayd.coaction(&basis_vec(*b)) {
                    hxm_add(&mut lhs, k, c * &cv);
                }
            }
            // RHS: S(h(3)) m⟨-1⟩ h(1) ⊗ m⟨0⟩ ◁ h(2)
            let mut rhs = HxM::new();
            for (legs, c) in ops.h_coproduct_iter(&h, 3) {
                let mut h1 = HElement::new();
                h1.insert(legs[0].clone(), Rat::one());
                let mut h2 = HElement::new();
                h2.insert(legs[1].clone(), Rat::one());
                let mut h3 = HElement::new();
                h3.insert(legs[2].clone(), Rat::one());
                let sh3 = ops.h_antipode(&h3);
                for ((mk, b), cv) in sayd.coaction(&m) {
                    let mut mk_e = HElement::new();
                    mk_e.insert(mk, Rat::one());
                    let left = ops.h_mul(&ops.h_mul(&sh3, &mk_e), &h1);
                    let right = sayd.act(&basis_vec(b), &h2);
                    for (kl, cl) in &left {
                        for (bb, cb) in &right {
                            hxm_add(&mut rhs, (kl.clone(), *bb), &c * &cv * cl * cb);
                        }
                    }
                }
            }
            if lhs != rhs {
                report.push(
                    "ayd-condition",
                    alloc::format!("h = {}, m = m{a}", ops.fmt_h(&h)),
                    alloc::format!("{} terms", lhs.len()),
                    alloc::format!("{} terms", rhs.len()),
                );
            }
        }
    }

    // stability: m⟨0⟩ ◁ m⟨-1⟩ = m
    for a in 0..module.dim {
        let m = basis_vec(a);
        let mut recovered = SparseVec::new();
        for ((hk, b), c) in sayd.coaction(&m) {
            let mut he = HElement::new();
            he.insert(hk, Rat::one());
            let acted = sayd.act(&basis_vec(b), &he);
            crate::exactlin::vec_add_scaled(&mut recovered, &c, &acted);
        }
        if recovered != m {
            report.push("stability", alloc::format!("m{a}"), sayd.fmt_vec(&recovered), sayd.fmt_vec(&m));
        }
    }
    report
}

/// Spanning H-elements to a degree, plus seeded random combinations.
pub fn spanning_h(ops: &HopfOps<'_>, degree: i64, samples: usize, seed: u64) -> Vec<HElement> {
    let fmonos = ops.pres().monomials_up_to(degree);
    let umonos = monomials_up_to(ops.dim(), degree as u32);
    let mut out = Vec::new();
    for fm in &fmonos {
        for um in &umonos {
            if fm.iter().map(|e| e.abs()).sum::<i64>() as u32 + um.iter().sum::<u32>() > degree as u32 {
                continue;
            }
            let mut h = HElement::new();
            h.insert((fm.clone(), um.clone()), Rat::one());
            out.push(h);
        }
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples {
        let mut h = HElement::new();
        for _ in 0..2 {
            let fm = fmonos[rng.below(fmonos.len())].clone();
            let um = umonos[rng.below(umonos.len())].clone();
            h_add_term(&mut h, (fm, um), rat(rng.small_coeff(), 1));
        }
        if !h.is_empty() {
            out.push(h);
        }
    }
    out
}

pub mod fixtures {
    use super::*;
    use crate::hopf::fixtures::e1;

    /// The adjoint sl2-module over the E1 datum: basis (H, E, F).
    pub fn e1_adjoint() -> InducedModule {
        let datum = e1();
        let pres = &datum.pres;
        let f: FElement = [(alloc::vec![1], rat(1, 1))].into_iter().collect();
        let minus_2f: FElement = [(alloc::vec![1], rat(-2, 1))].into_iter().collect();
        let minus_f2: FElement = [(alloc::vec![2], rat(-1, 1))].into_iter().collect();
        // ρ(H) = diag(0, 2, −2); ρ(E): H ↦ −2E, F ↦ H
        let mut rho_h = SparseMatrix::new(3, 3);
        rho_h.set(1, 1, rat(2, 1));
        rho_h.set(2, 2, rat(-2, 1));
        let mut rho_e = SparseMatrix::new(3, 3);
        rho_e.set(1, 0, rat(-2, 1));
        rho_e.set(0, 2, rat(1, 1));
        // g2-action ρ(F): H ↦ 2F, E ↦ −H
        let mut rho_f = SparseMatrix::new(3, 3);
        rho_f.set(2, 0, rat(2, 1));
        rho_f.set(0, 1, rat(-1, 1));
        // ∇H = H⊗1 − 2F⊗f; ∇E = E⊗1 + H⊗f − F⊗f²; ∇F = F⊗1
        let one = pres.one();
        let zero = FElement::new();
        let f_coaction = alloc::vec![
            alloc::vec![one.clone(), f, zero.clone()],
            alloc::vec![zero.clone(), one.clone(), zero.clone()],
            alloc::vec![minus_2f, minus_f2, one],
        ];
        InducedModule {
            name: String::from("adjoint"),
            dim: 3,
            g1_action: alloc::vec![rho_h, rho_e],
            f_coaction,
            g2_action: Some(alloc::vec![rho_f]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::e1_adjoint;
    use super::*;
    use crate::hopf::fixtures::{e1, e3};
    use crate::matched::{decompose, u_gen, Factorization, UAlgebra};

    #[test]
    fn trivial_module_passes() {
        let datum = e1();
        let module = InducedModule::trivial(&datum, "trivial");
        assert!(check_induced_module(&datum, &module, None, None, 3).ok());
        assert!(check_yd(&datum, &module, 2, 4, 7).ok());
        assert!(check_sayd(&datum, &module, 2, 4, 7).ok());
    }

    #[test]
    fn adjoint_module_passes() {
        let datum = e1();
        let module = e1_adjoint();
        let sl2 = crate::liealg::fixtures::sl2();
        let mp = decompose(&sl2, &[0, 1], &[2]).unwrap();
        let fact = Factorization::new(&mp);
        let g2 = mp.g2.clone();
        // the E1 pairing base value is the matrix coefficient f = f_E^H
        let eval = |f: &FElement, v: &PbwMonomial| -> Rat {
            let v_el: UElement = [(v.clone(), Rat::one())].into_iter().collect();
            let ualg2 = UAlgebra::new(&g2);
            let mut total = Rat::zero();
            for (m, c) in f {
                let k = m[0];
                assert!(k >= 0);
                if k == 0 {
                    total += c * ualg2.counit(&v_el);
                    continue;
                }
                for (legs, w) in ualg2.coproduct_iter(&v_el, k as usize) {
                    let mut prod = w;
                    for leg in &legs {
                        prod *= fact.matrix_coefficient(1, 0, &[(leg.clone(), Rat::one())].into_iter().collect());
                        if prod.is_zero() {
                            break;
                        }
                    }
                    total += c * prod;
                }
            }
            total
        };
        let report = check_induced_module(&datum, &module, Some(&mp), Some(&eval), 3);
        assert!(report.ok(), "{:?}", report.violations.first());
        assert!(check_yd(&datum, &module, 2, 4, 7).ok());
        assert!(check_sayd(&datum, &module, 2, 4, 7).ok());

        // dropping the −f² term breaks pairing consistency at v = F²
        let mut broken = module.clone();
        broken.f_coaction[2][1] = FElement::new();
        let report = check_induced_module(&datum, &broken, Some(&mp), Some(&eval), 3);
        assert!(report
            .violations
            .iter()
            .any(|v| v.law == "pairing-consistency" || v.law == "induced-condition"));
    }

    #[test]
    fn sayd_values() {
        // E1 trivial: m ◁ (1▸◂H) = δ(H) m = 2m
        let datum = e1();
        let ops = HopfOps::new(&datum);
        let module = InducedModule::trivial(&datum, "trivial");
        let sayd = SaydOps::new(&ops, &module);
        let m = basis_vec(0);
        let h = ops.h_from_u(&u_gen(2, 0));
        assert_eq!(sayd.act(&m, &h), [(0usize, rat(2, 1))].into_iter().collect::<SparseVec>());

        // E3 trivial: ∇(m) = e ▸◂ 1 ⊗ m
        let datum3 = e3();
        let ops3 = HopfOps::new(&datum3);
        let module3 = InducedModule::trivial(&datum3, "trivial");
        let sayd3 = SaydOps::new(&ops3, &module3);
        let co = sayd3.coaction(&m);
        assert_eq!(co.len(), 1);
        assert_eq!(co[&((alloc::vec![1], alloc::vec![0]), 0)], rat(1, 1));
        assert!(check_sayd(&datum3, &module3, 2, 4, 7).ok());
    }

    #[test]
    fn broken_sigma_breaks_stability() {
        // a σ with ε(σ) ≠ 1 cannot be stable
        let mut datum = e3();
        let two_e: FElement = [(alloc::vec![1], rat(2, 1))].into_iter().collect();
        datum.sigma_override = Some(two_e);
        let module = InducedModule::trivial(&datum, "trivial");
        let report = check_sayd(&datum, &module, 2, 2, 7);
        assert!(report.violations.iter().any(|v| v.law == "stability"));
    }
}
