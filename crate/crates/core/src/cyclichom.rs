//! The standard Hopf-cocyclic module C^q(H, ˢM_δ), the bicocyclic module
//! C^{p,q}(U, F, ˢM_δ), Hochschild b and Connes B, and the diagonal
//! identification Ψ_▸◂ between them.
//!
//! All three operator bundles implement one trait so a single relation
//! checker verifies the simplicial, degeneracy and cyclic identities,
//! τ^{q+1} = Id, and b² = B² = (b+B)² = 0 on seeded random cochains.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::coeff::SaydOps;
use crate::exactlin::{rat, Rat, SparseVec};
use crate::hopf::{FElement, FMonomial, HElement, HopfOps};
use crate::liealg::basis_vec;
use crate::matched::{PbwMonomial, UElement};
use crate::prng::SplitMix64;
use crate::report::Report;

/// Generic linear combination of basis keys.
pub type Cochain<K> = BTreeMap<K, Rat>;

pub fn cochain_add<K: Ord + Clone>(out: &mut Cochain<K>, k: K, c: Rat) {
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

pub fn cochain_scale_into<K: Ord + Clone>(dst: &mut Cochain<K>, src: &Cochain<K>, c: &Rat) {
    for (k, v) in src {
        cochain_add(dst, k.clone(), v * c);
    }
}

/// A cocyclic operator bundle: faces, degeneracies and the cyclic map on
/// basis keys, extended linearly by the helpers below.
pub trait CocyclicOps {
    type Key: Ord + Clone;

    fn degree(&self, key: &Self::Key) -> usize;
    fn face(&self, i: usize, key: &Self::Key) -> Cochain<Self::Key>;
    fn degeneracy(&self, j: usize, key: &Self::Key) -> Cochain<Self::Key>;
    fn cyclic(&self, key: &Self::Key) -> Cochain<Self::Key>;
    /// Seeded random cochain of the given degree.
    fn sample(&self, q: usize, rng: &mut SplitMix64) -> Cochain<Self::Key>;
    fn fmt(&self, c: &Cochain<Self::Key>) -> String;
}

pub fn apply<O: CocyclicOps, F>(c: &Cochain<O::Key>, f: F) -> Cochain<O::Key>
where
    F: Fn(&O::Key) -> Cochain<O::Key>,
{
    let mut out = Cochain::new();
    for (k, v) in c {
        cochain_scale_into(&mut out, &f(k), v);
    }
    out
}

pub fn face<O: CocyclicOps>(ops: &O, i: usize, c: &Cochain<O::Key>) -> Cochain<O::Key> {
    apply::<O, _>(c, |k| ops.face(i, k))
}

pub fn degeneracy<O: CocyclicOps>(ops: &O, j: usize, c: &Cochain<O::Key>) -> Cochain<O::Key> {
    apply::<O, _>(c, |k| ops.degeneracy(j, k))
}

pub fn cyclic<O: CocyclicOps>(ops: &O, c: &Cochain<O::Key>) -> Cochain<O::Key> {
    apply::<O, _>(c, |k| ops.cyclic(k))
}

/// `b = Σ (−1)^i ∂_i` from degree q.
pub fn hochschild_b<O: CocyclicOps>(ops: &O, q: usize, c: &Cochain<O::Key>) -> Cochain<O::Key> {
    let mut out = Cochain::new();
    for i in 0..=(q + 1) {
        let sign = if i % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        let part = face(ops, i, c);
        cochain_scale_into(&mut out, &part, &sign);
    }
    out
}

/// `B = (Σ_{i=0}^{q−1} (−1)^{(q−1)i} τ^i) σ_{q−1} τ` from degree q; zero at q = 0.
pub fn connes_b<O: CocyclicOps>(ops: &O, q: usize, c: &Cochain<O::Key>) -> Cochain<O::Key> {
    if q == 0 {
        return Cochain::new();
    }
    let t = cyclic(ops, c);
    let s = degeneracy(ops, q - 1, &t);
    let mut out = Cochain::new();
    let mut power = s;
    for i in 0..q {
        let sign = if ((q - 1) * i) % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        cochain_scale_into(&mut out, &power, &sign);
        if i + 1 < q {
            power = cyclic(ops, &power);
        }
    }
    out
}

/// Projection onto the conormalized subcomplex (joint kernel of the
/// degeneracies) along the degenerate part, by iterating the idempotents
/// `1 − ∂_{j+1} σ_j` until every degeneracy vanishes.
pub fn normalize<O: CocyclicOps>(ops: &O, q: usize, c: &Cochain<O::Key>) -> Cochain<O::Key> {
    let mut out = c.clone();
    for _ in 0..=q {
        let mut dirty = false;
        for j in 0..q {
            if degeneracy(ops, j, &out).is_empty() {
                continue;
            }
            dirty = true;
            let e = face(ops, j + 1, &degeneracy(ops, j, &out));
            let mut next = out.clone();
            cochain_scale_into(&mut next, &e, &rat(-1, 1));
            out = next;
        }
        if !dirty {
            break;
        }
    }
    out
}

/// Verifies the cocyclic-module relations, τ^{q+1} = Id and the
/// b/B identities on seeded random cochains of degree ≤ q_max. The
/// Connes-boundary identities B² = 0 and bB + Bb = 0 are checked on the
/// conormalized part, where the σ_{q−1}τ form of B is the right one.
pub fn check_cocyclic<O: CocyclicOps>(
    ops: &O,
    label: &str,
    q_max: usize,
    samples: usize,
    seed: u64,
) -> Report {
    let mut report = Report::new();
    let mut rng = SplitMix64::new(seed);
    for q in 0..=q_max {
        for _ in 0..samples.max(1) {
            let c = ops.sample(q, &mut rng);
            if c.is_empty() {
                continue;
            }
            let witness = |law: &str| alloc::format!("{label} q={q} {law}: c = {}", ops.fmt(&c));
            // ∂_j ∂_i = ∂_i ∂_{j-1} for i < j (composite lands in degree q+2)
            for i in 0..=(q + 1) {
                for j in (i + 1)..=(q + 2) {
                    let lhs = face(ops, j, &face(ops, i, &c));
                    let rhs = face(ops, i, &face(ops, j - 1, &c));
                    if lhs != rhs {
                        report.push("simplicial-face", witness("simplicial-face"), ops.fmt(&lhs), ops.fmt(&rhs));
                    }
                }
            }
            // σ_j σ_i = σ_i σ_{j+1} for i ≤ j
            if q >= 2 {
                for i in 0..=(q - 2) {
                    for j in i..=(q - 2) {
                        let lhs = degeneracy(ops, j, &degeneracy(ops, i, &c));
                        let rhs = degeneracy(ops, i, &degeneracy(ops, j + 1, &c));
                        if lhs != rhs {
                            report.push("degeneracy", witness("degeneracy"), ops.fmt(&lhs), ops.fmt(&rhs));
                        }
                    }
                }
            }
            // σ_j ∂_i mixed relations (∂ from degree q, σ on degree q+1)
            for i in 0..=(q + 1) {
                for j in 0..=q {
                    let lhs = degeneracy(ops, j, &face(ops, i, &c));
                    let rhs = if i < j {
                        if q == 0 {
                            continue;
                        }
                        face(ops, i, &degeneracy(ops, j - 1, &c))
                    } else if i == j || i == j + 1 {
                        c.clone()
                    } else {
                        face(ops, i - 1, &degeneracy(ops, j, &c))
                    };
                    if lhs != rhs {
                        report.push("face-degeneracy", witness("face-degeneracy"), ops.fmt(&lhs), ops.fmt(&rhs));
                    }
                }
            }
            // τ ∂_i = ∂_{i-1} τ for 1 ≤ i ≤ q, and τ ∂_0 = ∂_{q+1}
            for i in 1..=q {
                let lhs = cyclic(ops, &face(ops, i, &c));
                let rhs = face(ops, i - 1, &cyclic(ops, &c));
                if lhs != rhs {
                    report.push("tau-face", witness("tau-face"), ops.fmt(&lhs), ops.fmt(&rhs));
                }
            }
            {
                let lhs = cyclic(ops, &face(ops, 0, &c));
                let rhs = face(ops, q + 1, &c);
                if lhs != rhs {
                    report.push("tau-face-zero", witness("tau-face-zero"), ops.fmt(&lhs), ops.fmt(&rhs));
                }
            }
            // τ σ_i = σ_{i-1} τ for 1 ≤ i ≤ q−1, and τ σ_0 = σ_{q-1} τ²
            if q >= 1 {
                for i in 1..q {
                    let lhs = cyclic(ops, &degeneracy(ops, i, &c));
                    let rhs = degeneracy(ops, i - 1, &cyclic(ops, &c));
                    if lhs != rhs {
                        report.push("tau-degeneracy", witness("tau-degeneracy"), ops.fmt(&lhs), ops.fmt(&rhs));
                    }
                }
                let lhs = cyclic(ops, &degeneracy(ops, 0, &c));
                let rhs = degeneracy(ops, q - 1, &cyclic(ops, &cyclic(ops, &c)));
                if lhs != rhs {
                    report.push("tau-degeneracy-zero", witness("tau-degeneracy-zero"), ops.fmt(&lhs), ops.fmt(&rhs));
                }
            }
            // τ^{q+1} = Id
            {
                let mut t = c.clone();
                for _ in 0..=q {
                    t = cyclic(ops, &t);
                }
                if t != c {
                    report.push("tau-order", witness("tau-order"), ops.fmt(&t), ops.fmt(&c));
                }
            }
            // b² = 0
            {
                let bb = hochschild_b(ops, q + 1, &hochschild_b(ops, q, &c));
                if !bb.is_empty() {
                    report.push("b-squared", witness("b-squared"), ops.fmt(&bb), String::from("0"));
                }
            }
            // B² = 0 and bB + Bb = 0 on the conormalized part
            if q >= 1 {
                let p = normalize(ops, q, &c);
                if p.is_empty() {
                    continue;
                }
                for j in 0..q {
                    let s = degeneracy(ops, j, &p);
                    if !s.is_empty() {
                        report.push("normalization", witness("normalization"), ops.fmt(&s), String::from("0"));
                    }
                }
                let b1 = connes_b(ops, q, &p);
                if q >= 2 {
                    let bb = normalize(ops, q - 2, &connes_b(ops, q - 1, &b1));
                    if !bb.is_empty() {
                        report.push("B-squared", witness("B-squared"), ops.fmt(&bb), String::from("0"));
                    }
                }
                let mut anti = hochschild_b(ops, q - 1, &b1);
                let other = connes_b(ops, q + 1, &hochschild_b(ops, q, &p));
                cochain_scale_into(&mut anti, &other, &rat(1, 1));
                let anti = normalize(ops, q, &anti);
                if !anti.is_empty() {
                    report.push("bB-anticommute", witness("bB-anticommute"), ops.fmt(&anti), String::from("0"));
                }
            }
        }
    }
    report
}

/// Basis key of C^q(H, ˢM_δ): module index and q H-monomials.
pub type StdKey = (usize, Vec<(FMonomial, PbwMonomial)>);

/// Standard Hopf-cocyclic module of H with SAYD coefficients.
pub struct StdOps<'a> {
    pub hopf: &'a HopfOps<'a>,
    pub sayd: &'a SaydOps<'a>,
}

impl<'a> StdOps<'a> {
    pub fn new(hopf: &'a HopfOps<'a>, sayd: &'a SaydOps<'a>) -> Self {
        StdOps { hopf, sayd }
    }

    /// Diagonal action of an H element on a tuple of H monomials.
    fn diagonal(&self, x: &HElement, tuple: &[(FMonomial, PbwMonomial)]) -> Cochain<Vec<(FMonomial, PbwMonomial)>> {
        let mut out: Cochain<Vec<(FMonomial, PbwMonomial)>> = Cochain::new();
        if tuple.is_empty() {
            cochain_add(&mut out, Vec::new(), self.hopf.h_counit(x));
            return out;
        }
        for (legs, c) in self.hopf.h_coproduct_iter(x, tuple.len()) {
            let mut parts: Vec<(Vec<(FMonomial, PbwMonomial)>, Rat)> = alloc::vec![(Vec::new(), c)];
            for (leg, slot) in legs.iter().zip(tuple) {
                let mut le = HElement::new();
                le.insert(leg.clone(), Rat::one());
                let mut se = HElement::new();
                se.insert(slot.clone(), Rat::one());
                let prod = self.hopf.h_mul(&le, &se);
                let mut next = Vec::new();
                for (prefix, cp) in &parts {
                    for (k, cv) in &prod {
                        let mut p2 = prefix.clone();
                        p2.push(k.clone());
                        next.push((p2, cp * cv));
                    }
                }
                parts = next;
            }
            for (key, cv) in parts {
                cochain_add(&mut out, key, cv);
            }
        }
        out
    }
}

impl<'a> CocyclicOps for StdOps<'a> {
    type Key = StdKey;

    fn degree(&self, key: &StdKey) -> usize {
        key.1.len()
    }

    fn face(&self, i: usize, key: &StdKey) -> Cochain<StdKey> {
        let (a, tuple) = key;
        let q = tuple.len();
        let mut out = Cochain::new();
        if i == 0 {
            let mut t = tuple.clone();
            t.insert(0, (self.hopf.pres().unit_monomial(), alloc::vec![0; self.hopf.dim()]));
            cochain_add(&mut out, (*a, t), Rat::one());
        } else if i <= q {
            let mut he = HElement::new();
            he.insert(tuple[i - 1].clone(), Rat::one());
            for ((l, r), c) in self.hopf.h_coproduct(&he) {
                let mut t = tuple.clone();
                t[i - 1] = l;
                t.insert(i, r);
                cochain_add(&mut out, (*a, t), c);
            }
        } else {
            // ∂_{q+1}: append m⟨-1⟩, keep m⟨0⟩
            for ((hk, b), c) in self.sayd.coaction(&basis_vec(*a)) {
                let mut t = tuple.clone();
                t.push(hk);
                cochain_add(&mut out, (b, t), c);
            }
        }
        out
    }

    fn degeneracy(&self, j: usize, key: &StdKey) -> Cochain<StdKey> {
        let (a, tuple) = key;
        let mut he = HElement::new();
        he.insert(tuple[j].clone(), Rat::one());
        let eps = self.hopf.h_counit(&he);
        let mut out = Cochain::new();
        if !eps.is_zero() {
            let mut t = tuple.clone();
            t.remove(j);
            cochain_add(&mut out, (*a, t), eps);
        }
        out
    }

    fn cyclic(&self, key: &StdKey) -> Cochain<StdKey> {
        let (a, tuple) = key;
        let q = tuple.len();
        let mut out = Cochain::new();
        if q == 0 {
            cochain_add(&mut out, key.clone(), Rat::one());
            return out;
        }
        // ∇(m) = m⟨-1⟩ ⊗ m⟨0⟩ first, then m⟨0⟩·h¹(1) and the diagonal S(h¹(2)).
        for ((mk, b), cm) in self.sayd.coaction(&basis_vec(*a)) {
            let mut h1e = HElement::new();
            h1e.insert(tuple[0].clone(), Rat::one());
            for ((h11, h12), c) in self.hopf.h_coproduct(&h1e) {
                let mut h11e = HElement::new();
                h11e.insert(h11, Rat::one());
                let m_moved = self.sayd.act(&basis_vec(b), &h11e);
                let mut h12e = HElement::new();
                h12e.insert(h12, Rat::one());
                let s = self.hopf.h_antipode(&h12e);
                let mut rest: Vec<(FMonomial, PbwMonomial)> = tuple[1..].to_vec();
                rest.push(mk.clone());
                let acted = self.diagonal(&s, &rest);
                for (new_tuple, ct) in &acted {
                    for (bb, cb) in &m_moved {
                        cochain_add(&mut out, (*bb, new_tuple.clone()), &cm * &c * ct * cb);
                    }
                }
            }
        }
        out
    }

    fn sample(&self, q: usize, rng: &mut SplitMix64) -> Cochain<StdKey> {
        // degree-1 slot entries at q >= 3 keep the term growth in check;
        // the identities are multilinear in the slots
        let deg = if q >= 3 { 1 } else { 2 };
        let fmonos = self.hopf.pres().monomials_up_to(deg);
        let umonos = crate::matched::monomials_up_to(self.hopf.dim(), deg as u32);
        let mut out = Cochain::new();
        for _ in 0..2 {
            let a = rng.below(self.sayd.module.dim);
            let tuple: Vec<(FMonomial, PbwMonomial)> = (0..q)
                .map(|_| (fmonos[rng.below(fmonos.len())].clone(), umonos[rng.below(umonos.len())].clone()))
                .collect();
            cochain_add(&mut out, (a, tuple), rat(rng.small_coeff(), 1));
        }
        out
    }

    fn fmt(&self, c: &Cochain<StdKey>) -> String {
        if c.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (t, ((a, tuple), v)) in c.iter().enumerate() {
            if t > 0 {
                out.push_str(" + ");
            }
            out.push_str(&alloc::format!("{}*m{}", crate::exactlin::rat_to_string(v), a));
            for k in tuple {
                let mut he = HElement::new();
                he.insert(k.clone(), Rat::one());
                out.push_str(&alloc::format!("(x){}", self.hopf.fmt_h(&he)));
            }
        }
        out
    }
}

/// Basis key of C^{p,q}(U, F, ˢM_δ).
pub type BiKey = (usize, Vec<PbwMonomial>, Vec<FMonomial>);

/// Row (U-direction) operators at fixed q: the cocyclic module of U(g1)
/// with coefficients ˢM_δ ⊗ F^{⊗q}, trivial coaction.
pub struct RowOps<'a> {
    pub hopf: &'a HopfOps<'a>,
    pub sayd: &'a SaydOps<'a>,
    pub q: usize,
}

/// Column (F-direction) operators at fixed p: the cocyclic module of F
/// with coefficients ˢM_δ ⊗ U^{⊗p}, trivial action.
pub struct ColOps<'a> {
    pub hopf: &'a HopfOps<'a>,
    pub sayd: &'a SaydOps<'a>,
    pub p: usize,
}

impl<'a> RowOps<'a> {
    /// `(m ⊗ f̃) · u = δ(u(1)) S(u(2))·m ⊗ S(u(3)) • f̃`, fused with the
    /// diagonal action of S(u(4)) on the U-tuple for the cyclic operator.
    fn tau(&self, key: &BiKey) -> Cochain<BiKey> {
        let (a, us, fs) = key;
        let p = us.len();
        let mut out = Cochain::new();
        if p == 0 {
            cochain_add(&mut out, key.clone(), Rat::one());
            return out;
        }
        let u1: UElement = [(us[0].clone(), Rat::one())].into_iter().collect();
        for (legs, c) in self.hopf.ualg.coproduct_iter(&u1, 4) {
            let d = self.hopf.delta_u(&[(legs[0].clone(), Rat::one())].into_iter().collect());
            if d.is_zero() {
                continue;
            }
            let s2 = self.hopf.ualg.antipode(&[(legs[1].clone(), Rat::one())].into_iter().collect());
            let m_moved = self.sayd.module.act_u(&s2, &basis_vec(*a));
            let s3 = self.hopf.ualg.antipode(&[(legs[2].clone(), Rat::one())].into_iter().collect());
            let fs_el: Vec<FElement> = fs
                .iter()
                .map(|m| {
                    let mut f = FElement::new();
                    f.insert(m.clone(), Rat::one());
                    f
                })
                .collect();
            let bullet = crate::hopf::bullet_tensor(self.hopf, &s3, &fs_el);
            let s4 = self.hopf.ualg.antipode(&[(legs[3].clone(), Rat::one())].into_iter().collect());
            // diagonal action of s4 on (u², …, u^p, 1)
            let mut rest: Vec<PbwMonomial> = us[1..].to_vec();
            rest.push(alloc::vec![0; self.hopf.dim()]);
            let diag = self.u_diagonal(&s4, &rest);
            for (b, cb) in &m_moved {
                for (ftuple, cf) in &bullet {
                    for (utuple, cu) in &diag {
                        cochain_add(
                            &mut out,
                            (*b, utuple.clone(), ftuple.clone()),
                            &c * &d * cb * cf * cu,
                        );
                    }
                }
            }
        }
        out
    }

    fn u_diagonal(&self, x: &UElement, tuple: &[PbwMonomial]) -> Cochain<Vec<PbwMonomial>> {
        let mut out: Cochain<Vec<PbwMonomial>> = Cochain::new();
        if tuple.is_empty() {
            cochain_add(&mut out, Vec::new(), self.hopf.ualg.counit(x));
            return out;
        }
        for (legs, c) in self.hopf.ualg.coproduct_iter(x, tuple.len()) {
            let mut parts: Vec<(Vec<PbwMonomial>, Rat)> = alloc::vec![(Vec::new(), c)];
            for (leg, slot) in legs.iter().zip(tuple) {
                let prod = self.hopf.ualg.mul(
                    &[(leg.clone(), Rat::one())].into_iter().collect(),
                    &[(slot.clone(), Rat::one())].into_iter().collect(),
                );
                let mut next = Vec::new();
                for (prefix, cp) in &parts {
                    for (k, cv) in &prod {
                        let mut p2 = prefix.clone();
                        p2.push(k.clone());
                        next.push((p2, cp * cv));
                    }
                }
                parts = next;
            }
            for (key, cv) in parts {
                cochain_add(&mut out, key, cv);
            }
        }
        out
    }
}

impl<'a> CocyclicOps for RowOps<'a> {
    type Key = BiKey;

    fn degree(&self, key: &BiKey) -> usize {
        key.1.len()
    }

    fn face(&self, i: usize, key: &BiKey) -> Cochain<BiKey> {
        let (a, us, fs) = key;
        let p = us.len();
        let mut out = Cochain::new();
        if i == 0 {
            let mut t = us.clone();
            t.insert(0, alloc::vec![0; self.hopf.dim()]);
            cochain_add(&mut out, (*a, t, fs.clone()), Rat::one());
        } else if i <= p {
            let ue: UElement = [(us[i - 1].clone(), Rat::one())].into_iter().collect();
            for ((l, r), c) in self.hopf.ualg.coproduct(&ue) {
                let mut t = us.clone();
                t[i - 1] = l;
                t.insert(i, r);
                cochain_add(&mut out, (*a, t, fs.clone()), c);
            }
        } else {
            // trivial coaction of the coefficient: append 1
            let mut t = us.clone();
            t.push(alloc::vec![0; self.hopf.dim()]);
            cochain_add(&mut out, (*a, t, fs.clone()), Rat::one());
        }
        out
    }

    fn degeneracy(&self, j: usize, key: &BiKey) -> Cochain<BiKey> {
        let (a, us, fs) = key;
        let ue: UElement = [(us[j].clone(), Rat::one())].into_iter().collect();
        let eps = self.hopf.ualg.counit(&ue);
        let mut out = Cochain::new();
        if !eps.is_zero() {
            let mut t = us.clone();
            t.remove(j);
            cochain_add(&mut out, (*a, t, fs.clone()), eps);
        }
        out
    }

    fn cyclic(&self, key: &BiKey) -> Cochain<BiKey> {
        self.tau(key)
    }

    fn sample(&self, p: usize, rng: &mut SplitMix64) -> Cochain<BiKey> {
        let deg = if p + self.q >= 3 { 1 } else { 2 };
        let fmonos = self.hopf.pres().monomials_up_to(deg);
        let umonos = crate::matched::monomials_up_to(self.hopf.dim(), deg as u32);
        let mut out = Cochain::new();
        for _ in 0..2 {
            let a = rng.below(self.sayd.module.dim);
            let us: Vec<PbwMonomial> = (0..p).map(|_| umonos[rng.below(umonos.len())].clone()).collect();
            let fs: Vec<FMonomial> = (0..self.q).map(|_| fmonos[rng.below(fmonos.len())].clone()).collect();
            cochain_add(&mut out, (a, us, fs), rat(rng.small_coeff(), 1));
        }
        out
    }

    fn fmt(&self, c: &Cochain<BiKey>) -> String {
        fmt_bikey(self.hopf, c)
    }
}

pub fn fmt_bikey(hopf: &HopfOps<'_>, c: &Cochain<BiKey>) -> String {
    if c.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (t, ((a, us, fs), v)) in c.iter().enumerate() {
        if t > 0 {
            out.push_str(" + ");
        }
        out.push_str(&alloc::format!("{}*m{}", crate::exactlin::rat_to_string(v), a));
        for u in us {
            out.push_str(&alloc::format!("(x){}", crate::matched::fmt_monomial(u, &hopf.datum.g1.basis_names)));
        }
        for f in fs {
            out.push_str(&alloc::format!("(x){}", hopf.pres().fmt_monomial(f)));
        }
    }
    out
}

impl<'a> ColOps<'a> {
    /// Coaction of F on ˢM_δ ⊗ U^{⊗p}: m⟨0⟩ ⊗ ũ⟨0⟩ with leg S(ũ⟨1⟩ m⟨1⟩) σ.
    fn coefficient_coaction(&self, a: usize, us: &[PbwMonomial]) -> Vec<(usize, Vec<PbwMonomial>, FElement)> {
        let mut parts: Vec<(usize, Vec<PbwMonomial>, FElement)> = Vec::new();
        for (b, cm) in self.sayd.module.coaction(&basis_vec(a)) {
            parts.push((b, Vec::new(), cm));
        }
        for u in us {
            let mut next = Vec::new();
            for ((u0, u1), c) in self.hopf.coaction_monomial(u) {
                let mut u1f = FElement::new();
                u1f.insert(u1.clone(), c.clone());
                for (b, prefix, acc) in &parts {
                    let mut p2 = prefix.clone();
                    p2.push(u0.clone());
                    next.push((*b, p2, self.hopf.pres().mul(acc, &u1f)));
                }
            }
            parts = next;
        }
        // apply S(...)σ to the accumulated F-part
        parts
            .into_iter()
            .map(|(b, us2, acc)| {
                let s = self.hopf.pres().antipode(&acc);
                (b, us2, self.hopf.pres().mul(&self.hopf.sigma, &s))
            })
            .collect()
    }

    fn f_diagonal(&self, x: &FElement, tuple: &[FMonomial]) -> Cochain<Vec<FMonomial>> {
        let mut out: Cochain<Vec<FMonomial>> = Cochain::new();
        if tuple.is_empty() {
            cochain_add(&mut out, Vec::new(), self.hopf.pres().counit(x));
            return out;
        }
        // Δ^{(n-1)} then multiply slotwise
        fn iter_cop(
            pres: &crate::hopf::FPres,
            x: &FElement,
            legs: usize,
        ) -> Vec<(Vec<FMonomial>, Rat)> {
            if legs == 1 {
                return x.iter().map(|(m, c)| (alloc::vec![m.clone()], c.clone())).collect();
            }
            let mut out = Vec::new();
            for ((l, r), c) in pres.coproduct(x) {
                let mut le = FElement::new();
                le.insert(l, Rat::one());
                for (mut parts, c2) in iter_cop(pres, &le, legs - 1) {
                    parts.push(r.clone());
                    out.push((parts, &c * &c2));
                }
            }
            out
        }
        for (legs, c) in iter_cop(self.hopf.pres(), x, tuple.len()) {
            let key: Vec<FMonomial> =
                legs.iter().zip(tuple).map(|(l, s)| self.hopf.pres().mul_monomials(l, s)).collect();
            cochain_add(&mut out, key, c);
        }
        out
    }
}

impl<'a> CocyclicOps for ColOps<'a> {
    type Key = BiKey;

    fn degree(&self, key: &BiKey) -> usize {
        key.2.len()
    }

    fn face(&self, i: usize, key: &BiKey) -> Cochain<BiKey> {
        let (a, us, fs) = key;
        let q = fs.len();
        let mut out = Cochain::new();
        if i == 0 {
            let mut t = fs.clone();
            t.insert(0, self.hopf.pres().unit_monomial());
            cochain_add(&mut out, (*a, us.clone(), t), Rat::one());
        } else if i <= q {
            let mut fe = FElement::new();
            fe.insert(fs[i - 1].clone(), Rat::one());
            for ((l, r), c) in self.hopf.pres().coproduct(&fe) {
                let mut t = fs.clone();
                t[i - 1] = l;
                t.insert(i, r);
                cochain_add(&mut out, (*a, us.clone(), t), c);
            }
        } else {
            for (b, us2, leg) in self.coefficient_coaction(*a, us) {
                for (mf, cf) in &leg {
                    let mut t = fs.clone();
                    t.push(mf.clone());
                    cochain_add(&mut out, (b, us2.clone(), t), cf.clone());
                }
            }
        }
        out
    }

    fn degeneracy(&self, j: usize, key: &BiKey) -> Cochain<BiKey> {
        let (a, us, fs) = key;
        let mut fe = FElement::new();
        fe.insert(fs[j].clone(), Rat::one());
        let eps = self.hopf.pres().counit(&fe);
        let mut out = Cochain::new();
        if !eps.is_zero() {
            let mut t = fs.clone();
            t.remove(j);
            cochain_add(&mut out, (*a, us.clone(), t), eps);
        }
        out
    }

    fn cyclic(&self, key: &BiKey) -> Cochain<BiKey> {
        let (a, us, fs) = key;
        let q = fs.len();
        let mut out = Cochain::new();
        if q == 0 {
            cochain_add(&mut out, key.clone(), Rat::one());
            return out;
        }
        let mut f1 = FElement::new();
        f1.insert(fs[0].clone(), Rat::one());
        let s = self.hopf.pres().antipode(&f1);
        for (b, us2, leg) in self.coefficient_coaction(*a, us) {
            let mut rest: Vec<FMonomial> = fs[1..].to_vec();
            let _hold = &leg;
            // append the coaction leg, then act diagonally with S(f¹)
            for (mf, cf) in &leg {
                let mut tuple = rest.clone();
                tuple.push(mf.clone());
                for (new_tuple, c) in self.f_diagonal(&s, &tuple) {
                    cochain_add(&mut out, (b, us2.clone(), new_tuple), &c * cf);
                }
            }
            rest.clear();
        }
        out
    }

    fn sample(&self, q: usize, rng: &mut SplitMix64) -> Cochain<BiKey> {
        let deg = if q + self.p >= 3 { 1 } else { 2 };
        let fmonos = self.hopf.pres().monomials_up_to(deg);
        let umonos = crate::matched::monomials_up_to(self.hopf.dim(), deg as u32);
        let mut out = Cochain::new();
        for _ in 0..2 {
            let a = rng.below(self.sayd.module.dim);
            let us: Vec<PbwMonomial> = (0..self.p).map(|_| umonos[rng.below(umonos.len())].clone()).collect();
            let fs: Vec<FMonomial> = (0..q).map(|_| fmonos[rng.below(fmonos.len())].clone()).collect();
            cochain_add(&mut out, (a, us, fs), rat(rng.small_coeff(), 1));
        }
        out
    }

    fn fmt(&self, c: &Cochain<BiKey>) -> String {
        fmt_bikey(self.hopf, c)
    }
}

/// `Ψ_▸◂` from the diagonal of the bicocyclic module to C^n(H, ˢM_δ):
/// slot k becomes `f^k u¹⟨k-1⟩ ⋯ u^{k-1}⟨1⟩ ▸◂ u^k⟨0⟩`.
pub fn psi_diag(hopf: &HopfOps<'_>, c: &Cochain<BiKey>) -> Result<Cochain<StdKey>, &'static str> {
    let mut out: Cochain<StdKey> = Cochain::new();
    for ((a, us, fs), coeff) in c {
        let n = us.len();
        if fs.len() != n {
            return Err("bidegree mismatch: diagonal needs p = q");
        }
        // iterated coactions of each u^j with n - j legs (1-based j)
        let mut expansions: Vec<Vec<((PbwMonomial, Vec<FMonomial>), Rat)>> = Vec::new();
        for (j, u) in us.iter().enumerate() {
            let ue: UElement = [(u.clone(), Rat::one())].into_iter().collect();
            let it = hopf.coaction_iter(&ue, n - 1 - j);
            expansions.push(it.into_iter().collect());
        }
        let mut combos: Vec<(Vec<(PbwMonomial, Vec<FMonomial>)>, Rat)> = alloc::vec![(Vec::new(), Rat::one())];
        for exp in &expansions {
            let mut next = Vec::new();
            for (prefix, c0) in &combos {
                for ((core, legs), cv) in exp {
                    let mut p2 = prefix.clone();
                    p2.push((core.clone(), legs.clone()));
                    next.push((p2, c0 * cv));
                }
            }
            combos = next;
        }
        for (combo, cc) in combos {
            let mut tuple: Vec<(FMonomial, PbwMonomial)> = Vec::with_capacity(n);
            for k in 1..=n {
                // f-part: f^k times u^j⟨k-j⟩ for j < k
                let mut fm = fs[k - 1].clone();
                for j in 1..k {
                    let legs = &combo[j - 1].1;
                    fm = hopf.pres().mul_monomials(&fm, &legs[k - j - 1]);
                }
                tuple.push((fm, combo[k - 1].0.clone()));
            }
            cochain_add(&mut out, (*a, tuple), coeff * &cc);
        }
    }
    Ok(out)
}

/// Inverse of `Ψ_▸◂`: slot k ≥ 2 becomes `f^k S(u¹⟨n-k+1⟩ ⋯ u^{k-1}⟨n-k+1⟩)`.
pub fn psi_diag_inv(hopf: &HopfOps<'_>, c: &Cochain<StdKey>) -> Cochain<BiKey> {
    let mut out: Cochain<BiKey> = Cochain::new();
    for ((a, tuple), coeff) in c {
        let n = tuple.len();
        if n == 0 {
            cochain_add(&mut out, (*a, Vec::new(), Vec::new()), coeff.clone());
            continue;
        }
        let mut expansions: Vec<Vec<((PbwMonomial, Vec<FMonomial>), Rat)>> = Vec::new();
        for (j, (_, u)) in tuple.iter().enumerate() {
            let ue: UElement = [(u.clone(), Rat::one())].into_iter().collect();
            let it = hopf.coaction_iter(&ue, n - 1 - j);
            expansions.push(it.into_iter().collect());
        }
        let mut combos: Vec<(Vec<(PbwMonomial, Vec<FMonomial>)>, Rat)> = alloc::vec![(Vec::new(), Rat::one())];
        for exp in &expansions {
            let mut next = Vec::new();
            for (prefix, c0) in &combos {
                for ((core, legs), cv) in exp {
                    let mut p2 = prefix.clone();
                    p2.push((core.clone(), legs.clone()));
                    next.push((p2, c0 * cv));
                }
            }
            combos = next;
        }
        for (combo, cc) in combos {
            let us: Vec<PbwMonomial> = combo.iter().map(|(core, _)| core.clone()).collect();
            let mut fs: Vec<FElement> = Vec::with_capacity(n);
            {
                let mut f1 = FElement::new();
                f1.insert(tuple[0].0.clone(), Rat::one());
                fs.push(f1);
            }
            for k in 2..=n {
                let mut prod = hopf.pres().unit_monomial();
                for j in 1..k {
                    let legs = &combo[j - 1].1;
                    prod = hopf.pres().mul_monomials(&prod, &legs[n - k]);
                }
                let mut pe = FElement::new();
                pe.insert(prod, Rat::one());
                let s = hopf.pres().antipode(&pe);
                let mut fk = FElement::new();
                fk.insert(tuple[k - 1].0.clone(), Rat::one());
                fs.push(hopf.pres().mul(&fk, &s));
            }
            // expand the FElement slots into monomial tuples
            let mut tuples: Vec<(Vec<FMonomial>, Rat)> = alloc::vec![(Vec::new(), cc.clone())];
            for slot in &fs {
                let mut next = Vec::new();
                for (prefix, c0) in &tuples {
                    for (m, cv) in slot {
                        let mut p2 = prefix.clone();
                        p2.push(m.clone());
                        next.push((p2, c0 * cv));
                    }
                }
                tuples = next;
            }
            for (ftuple, cf) in tuples {
                cochain_add(&mut out, (*a, us.clone(), ftuple), coeff * &cf);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::fixtures::e1_adjoint;
    use crate::coeff::InducedModule;
    use crate::hopf::fixtures::{e1, e3};
    use crate::matched::u_gen;

    #[test]
    fn std_face_and_tau_values() {
        let datum = e1();
        let ops = HopfOps::new(&datum);
        let module = InducedModule::trivial(&datum, "trivial");
        let sayd = SaydOps::new(&ops, &module);
        let std = StdOps::new(&ops, &sayd);
        // ∂_0(m) = m ⊗ 1 at q = 0
        let c: Cochain<StdKey> = [((0usize, alloc::vec![]), Rat::one())].into_iter().collect();
        let d0 = face(&std, 0, &c);
        assert_eq!(d0.len(), 1);
        // τ(1 ⊗ (1▸◂H)) = 1 ⊗ (2·(1▸◂1) − 1▸◂H)
        let h_key = (datum.pres.unit_monomial(), alloc::vec![1u32, 0]);
        let c1: Cochain<StdKey> = [((0usize, alloc::vec![h_key.clone()]), Rat::one())].into_iter().collect();
        let t = cyclic(&std, &c1);
        let one_key = (datum.pres.unit_monomial(), alloc::vec![0u32, 0]);
        assert_eq!(t[&(0, alloc::vec![one_key])], rat(2, 1));
        assert_eq!(t[&(0, alloc::vec![h_key])], rat(-1, 1));
        assert_eq!(t.len(), 2);
        // τ² = Id there
        let tt = cyclic(&std, &t);
        assert_eq!(tt, c1);
        // τ(1⊗(1▸◂1)) = 1⊗(1▸◂1)
        let cu: Cochain<StdKey> = [((0usize, alloc::vec![(datum.pres.unit_monomial(), alloc::vec![0u32, 0])]), Rat::one())]
            .into_iter()
            .collect();
        assert_eq!(cyclic(&std, &cu), cu);
        // b(m) = 0 at q = 0 for trivial M, σ = 1
        let b = hochschild_b(&std, 0, &c);
        assert!(b.is_empty());
        // B at q = 1 of 1⊗(1▸◂1) = σ0 τ = ε-collapse
        let b1 = connes_b(&std, 1, &cu);
        assert_eq!(b1, [((0usize, alloc::vec![]), Rat::one())].into_iter().collect::<Cochain<StdKey>>());
    }

    #[test]
    fn std_cocyclic_relations_e1() {
        let datum = e1();
        let ops = HopfOps::new(&datum);
        for module in [InducedModule::trivial(&datum, "trivial"), e1_adjoint()] {
            let sayd = SaydOps::new(&ops, &module);
            let std = StdOps::new(&ops, &sayd);
            let report = check_cocyclic(&std, "std", 2, 2, 7);
            assert!(report.ok(), "{} {:?}", module.name, report.violations.first());
        }
    }

    #[test]
    fn std_cocyclic_relations_e3() {
        let datum = e3();
        let ops = HopfOps::new(&datum);
        let module = InducedModule::trivial(&datum, "trivial");
        let sayd = SaydOps::new(&ops, &module);
        let std = StdOps::new(&ops, &sayd);
        let report = check_cocyclic(&std, "std", 3, 2, 7);
        assert!(report.ok(), "{:?}", report.violations.first());
    }

    #[test]
    fn row_and_col_relations() {
        let datum = e1();
        let ops = HopfOps::new(&datum);
        let module = e1_adjoint();
        let sayd = SaydOps::new(&ops, &module);
        for q in 0..2 {
            let row = RowOps { hopf: &ops, sayd: &sayd, q };
            let report = check_cocyclic(&row, "row", 2, 2, 11);
            assert!(report.ok(), "row q={q}: {:?}", report.violations.first());
        }
        for p in 0..2 {
            let col = ColOps { hopf: &ops, sayd: &sayd, p };
            let report = check_cocyclic(&col, "col", 2, 2, 13);
            assert!(report.ok(), "col p={p}: {:?}", report.violations.first());
        }
    }

    #[test]
    fn bullet_restriction_in_row_tau() {
        // H•f = 2f shows up in the row cyclic operator at p = 1, q = 1
        let datum = e1();
        let ops = HopfOps::new(&datum);
        let module = InducedModule::trivial(&datum, "trivial");
        let sayd = SaydOps::new(&ops, &module);
        let row = RowOps { hopf: &ops, sayd: &sayd, q: 0 };
        // ↑∂_{q+1}-analogue: (m ⊗ 1_U ⊗ ∅) gains a trivial σ-leg
        let col = ColOps { hopf: &ops, sayd: &sayd, p: 1 };
        let key: BiKey = (0, alloc::vec![alloc::vec![0, 0]], alloc::vec![]);
        let d = col.face(1, &key);
        assert_eq!(d.len(), 1);
        assert_eq!(
            d[&(0, alloc::vec![alloc::vec![0, 0]], alloc::vec![datum.pres.unit_monomial()])],
            Rat::one()
        );
        let _ = row;
    }

    #[test]
    fn psi_roundtrip_and_intertwining() {
        let datum = e1();
        let ops = HopfOps::new(&datum);
        let module = e1_adjoint();
        let sayd = SaydOps::new(&ops, &module);
        let std = StdOps::new(&ops, &sayd);
        // n = 1 value: Ψ(m⊗H⊗f) = m⊗(f▸◂H)
        let c: Cochain<BiKey> =
            [((0usize, alloc::vec![alloc::vec![1u32, 0]], alloc::vec![alloc::vec![1i64]]), Rat::one())]
                .into_iter()
                .collect();
        let psi = psi_diag(&ops, &c).unwrap();
        assert_eq!(psi.len(), 1);
        assert_eq!(psi[&(0, alloc::vec![(alloc::vec![1i64], alloc::vec![1u32, 0])])], Rat::one());
        // n = 0: identity
        let c0: Cochain<BiKey> = [((1usize, alloc::vec![], alloc::vec![]), rat(3, 1))].into_iter().collect();
        assert_eq!(psi_diag_inv(&ops, &psi_diag(&ops, &c0).unwrap()), c0);
        // seeded round trips at n = 1, 2 in both orders
        let mut rng = SplitMix64::new(5);
        for n in 1..=2usize {
            let row = RowOps { hopf: &ops, sayd: &sayd, q: n };
            for _ in 0..4 {
                let c = row.sample(n, &mut rng);
                let forward = psi_diag(&ops, &c).unwrap();
                assert_eq!(psi_diag_inv(&ops, &forward), c);
                let back = psi_diag_inv(&ops, &forward);
                assert_eq!(psi_diag(&ops, &back).unwrap(), forward);
            }
        }
        // Ψ intertwines the diagonal faces/τ with the standard ones at n = 1
        let mut rng = SplitMix64::new(17);
        for _ in 0..4 {
            let row1 = RowOps { hopf: &ops, sayd: &sayd, q: 1 };
            let c = row1.sample(1, &mut rng);
            // diagonal face ∂_i = →∂_i ∘ ↑∂_i
            for i in 0..=2usize {
                let colp = ColOps { hopf: &ops, sayd: &sayd, p: 1 };
                let up = apply::<ColOps, _>(&c, |k| colp.face(i, k));
                let row2 = RowOps { hopf: &ops, sayd: &sayd, q: 2 };
                let diag = apply::<RowOps, _>(&up, |k| row2.face(i, k));
                let std_side = face(&std, i, &psi_diag(&ops, &c).unwrap());
                assert_eq!(psi_diag(&ops, &diag).unwrap(), std_side, "face {i}");
            }
            // diagonal τ = →τ ∘ ↑τ
            let colp = ColOps { hopf: &ops, sayd: &sayd, p: 1 };
            let up = apply::<ColOps, _>(&c, |k| colp.cyclic(k));
            let row1b = RowOps { hopf: &ops, sayd: &sayd, q: 1 };
            let diag = apply::<RowOps, _>(&up, |k| row1b.cyclic(k));
            let std_side = cyclic(&std, &psi_diag(&ops, &c).unwrap());
            assert_eq!(psi_diag(&ops, &diag).unwrap(), std_side, "tau");
        }
    }

    #[test]
    fn delta_twist_removal_breaks_tau_order() {
        // replacing δ by 0 must break τ^{q+1} = Id somewhere in q ≤ 3
        let mut datum = e1();
        datum.delta_override = Some(alloc::vec![rat(0, 1), rat(0, 1)]);
        let ops = HopfOps::new(&datum);
        let module = InducedModule::trivial(&datum, "trivial");
        let sayd = SaydOps::new(&ops, &module);
        let std = StdOps::new(&ops, &sayd);
        let report = check_cocyclic(&std, "std", 3, 4, 7);
        assert!(
            report.violations.iter().any(|v| v.law == "tau-order" || v.law == "tau-face-zero"),
            "expected a cyclic-order failure, got {:?}",
            report.violations.first()
        );
        let _ = u_gen(2, 0);
    }
}
