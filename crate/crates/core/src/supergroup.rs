//! Modified supergroup algebras k[G] ⋉ ΛV with exact structure constants, their
//! R-matrices, lazy 2-cocycles and the verification engines.
//!
//! Conventions. The basis element `g·2ⁿ + mask` is g·v_P, with v_P the product of
//! the v_i (i ∈ P) in increasing order. The action is g.v = ρ(g)v, realized by
//! g v g⁻¹ = g.v, so (g v_P)(h v_Q) = gh (h⁻¹.v_P) v_Q. Group elements are
//! grouplike and Δ(v) = v⊗1 + u⊗v, which is E(n)'s Δ(x) = 1⊗x + x⊗c under
//! c ↦ u, x ↦ uv. The antipode is S(g) = g⁻¹, S(v) = −uv, extended
//! anti-multiplicatively. Cocycles are left cocycles
//! σ(a₁,b₁)σ(a₂b₂,c) = σ(b₁,c₁)σ(a,b₂c₂) unless stated otherwise.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budgets;
use crate::cohomology::{h2_closed_field, CohomologyGroup};
use crate::error::{Error, Result};
use crate::forms::{acts_as_minus_one, first_non_invariant_generator, invariant_symmetric_forms, Representation, SymFormSpace};
use crate::group::{abelianization, quotient_by_central_involution, CentralInvolution, FiniteGroup};
use crate::rational::{QMatrix, Q};
use crate::sharp::{bm_group, BmGroup, FieldDescriptor};

/// An element of H as a sparse coefficient map over basis indices.
pub type HVec = BTreeMap<usize, Q>;

type T3 = BTreeMap<(usize, usize, usize), Q>;

/// Largest |G|·4ⁿ for which wedge actions are tabulated.
const STRUCTURE_LIMIT: usize = 1 << 22;
/// Largest dimension for a cached product table.
const PRODUCT_CACHE_DIM: usize = 256;
/// Largest dimension for dense cochains.
const DENSE_COCHAIN_DIM: usize = 2048;

fn add_term<K: Ord>(map: &mut BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn basis_vec(i: usize) -> HVec {
    BTreeMap::from([(i, Q::one())])
}

/// (−1) to the number of pairs r ∈ R, q ∈ Q with r > q.
fn wedge_sign(r: usize, qm: usize) -> bool {
    let mut inversions = 0u32;
    let mut m = qm;
    while m != 0 {
        let b = m.trailing_zeros();
        inversions += (r >> (b + 1)).count_ones();
        m &= m - 1;
    }
    inversions % 2 == 1
}

fn bits(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).collect()
}

fn choose2_odd(k: usize) -> bool {
    (k * k.saturating_sub(1) / 2) % 2 == 1
}

/// det_{PQ}(M) for all P, Q of equal size.
fn subset_minors(m: &QMatrix) -> Vec<Vec<Q>> {
    let n = m.rows();
    let size = 1 << n;
    let mut out = vec![vec![Q::zero(); size]; size];
    for p in 0..size {
        for qm in 0..size {
            if p.count_ones() == qm.count_ones() {
                out[p][qm] = m.minor(&bits(p), &bits(qm));
            }
        }
    }
    out
}

/// An element of H⊗H.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HTensor {
    pub terms: BTreeMap<(usize, usize), Q>,
}

impl HTensor {
    pub fn add_term(&mut self, a: usize, b: usize, c: Q) {
        add_term(&mut self.terms, (a, b), c);
    }

    pub fn flip(&self) -> HTensor {
        HTensor { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &HTensor) -> HTensor {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, -c.clone());
        }
        out
    }
}

/// Result of a verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    /// "exhaustive" or "sampled".
    pub mode: String,
    pub checked: u64,
    pub counterexample: Option<String>,
}

impl CheckReport {
    fn new(check: &str, exhaustive: bool) -> Self {
        CheckReport {
            check: check.to_string(),
            passed: true,
            mode: if exhaustive { "exhaustive" } else { "sampled" }.into(),
            checked: 0,
            counterexample: None,
        }
    }

    fn fail(&mut self, what: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(what);
        }
    }

    fn merge(reports: Vec<CheckReport>, check: &str) -> CheckReport {
        let mut out = CheckReport::new(check, reports.iter().all(|r| r.mode == "exhaustive"));
        for r in reports {
            out.checked += r.checked;
            if !r.passed {
                out.fail(format!("{}: {}", r.check, r.counterexample.unwrap_or_default()));
            }
        }
        out
    }
}

/// k[G] ⋉ ΛV.
#[derive(Clone, Debug)]
pub struct SupergroupAlgebra {
    inv: CentralInvolution,
    rep: Representation,
    n: usize,
    dim: usize,
    /// wedge[g][P]: the expansion of g.v_P.
    wedge: Vec<Vec<Vec<(usize, Q)>>>,
    products: Option<Vec<HVec>>,
    coproducts: Vec<HTensor>,
}

pub fn build_supergroup(g: &FiniteGroup, inv: &CentralInvolution, rep: &Representation) -> Result<SupergroupAlgebra> {
    if !g.same_as(&inv.group) || !rep.group().same_as(g) {
        return Err(Error::Invalid("group, involution and representation must share the group".into()));
    }
    if !acts_as_minus_one(rep, inv) {
        return Err(Error::NotMinusOne);
    }
    let n = rep.dim();
    let size = 1usize << n;
    let work = g.order().saturating_mul(size).saturating_mul(size);
    if n >= 16 || work > STRUCTURE_LIMIT {
        return Err(Error::BudgetExceeded { what: "supergroup structure constants", needed: work as u64, limit: STRUCTURE_LIMIT as u64 });
    }
    let wedge = (0..g.order())
        .map(|x| {
            let minors = subset_minors(rep.matrix(x));
            (0..size)
                .map(|p| (0..size).filter(|&r| !minors[r][p].is_zero()).map(|r| (r, minors[r][p].clone())).collect())
                .collect()
        })
        .collect();
    let mut h = SupergroupAlgebra {
        inv: inv.clone(),
        rep: rep.clone(),
        n,
        dim: g.order() * size,
        wedge,
        products: None,
        coproducts: Vec::new(),
    };
    if h.dim <= PRODUCT_CACHE_DIM {
        let table = (0..h.dim * h.dim).map(|k| h.mul_basis_uncached(k / h.dim, k % h.dim)).collect();
        h.products = Some(table);
    }
    h.coproducts = (0..h.dim).map(|a| h.coproduct_uncached(a)).collect();
    Ok(h)
}

/// E(n) = k[ℤ₂] ⋉ ΛV with u acting as −1 on V = kⁿ.
pub fn e_n(n: usize) -> SupergroupAlgebra {
    let g = FiniteGroup::cyclic(2);
    let inv = CentralInvolution::new(&g, 1).expect("generator of Z2");
    let rep = Representation::new(&g, vec![QMatrix::identity(n).neg()]).expect("sign representation");
    build_supergroup(&g, &inv, &rep).expect("E(n) within budget")
}

impl SupergroupAlgebra {
    pub fn group(&self) -> &FiniteGroup {
        &self.inv.group
    }

    pub fn involution(&self) -> &CentralInvolution {
        &self.inv
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    /// dim V.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self, g: usize, mask: usize) -> usize {
        (g << self.n) | mask
    }

    /// (g, P) of a basis index.
    pub fn split(&self, a: usize) -> (usize, usize) {
        (a >> self.n, a & ((1 << self.n) - 1))
    }

    pub fn one(&self) -> usize {
        self.index(self.group().identity(), 0)
    }

    pub fn u(&self) -> usize {
        self.index(self.inv.u, 0)
    }

    /// v_i (zero-based i).
    pub fn v(&self, i: usize) -> usize {
        self.index(self.group().identity(), 1 << i)
    }

    pub fn label(&self, a: usize) -> String {
        let (g, p) = self.split(a);
        let mut s = if g == self.group().identity() && p != 0 { String::new() } else { self.group().label(g) };
        for i in bits(p) {
            s.push_str(&format!("v{}", i + 1));
        }
        s
    }

    fn mul_basis_uncached(&self, a: usize, b: usize) -> HVec {
        let (g, p) = self.split(a);
        let (h, qm) = self.split(b);
        let grp = self.group();
        let gh = grp.mul(g, h);
        let mut out = HVec::new();
        for (r, c) in &self.wedge[grp.inv(h)][p] {
            if r & qm == 0 {
                let c = if wedge_sign(*r, qm) { -c.clone() } else { c.clone() };
                add_term(&mut out, self.index(gh, r | qm), c);
            }
        }
        out
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> HVec {
        match &self.products {
            Some(t) => t[a * self.dim + b].clone(),
            None => self.mul_basis_uncached(a, b),
        }
    }

    pub fn mul(&self, x: &HVec, y: &HVec) -> HVec {
        let mut out = HVec::new();
        for (&a, ca) in x {
            for (&b, cb) in y {
                for (k, c) in self.mul_basis(a, b) {
                    add_term(&mut out, k, c * ca * cb);
                }
            }
        }
        out
    }

    pub fn tensor_mul(&self, x: &HTensor, y: &HTensor) -> HTensor {
        let mut out = HTensor::default();
        for (&(a1, a2), ca) in &x.terms {
            for (&(b1, b2), cb) in &y.terms {
                let c = ca * cb;
                let l = self.mul_basis(a1, b1);
                let r = self.mul_basis(a2, b2);
                for (i, ci) in &l {
                    for (j, cj) in &r {
                        out.add_term(*i, *j, &c * ci * cj);
                    }
                }
            }
        }
        out
    }

    fn coproduct_uncached(&self, a: usize) -> HTensor {
        let (g, p) = self.split(a);
        let e = self.group().identity();
        let gb = self.index(g, 0);
        let mut acc = HTensor::default();
        acc.add_term(gb, gb, Q::one());
        for i in bits(p) {
            let mut dv = HTensor::default();
            dv.add_term(self.index(e, 1 << i), self.one(), Q::one());
            dv.add_term(self.u(), self.index(e, 1 << i), Q::one());
            acc = self.tensor_mul(&acc, &dv);
        }
        acc
    }

    pub fn coproduct(&self, a: usize) -> &HTensor {
        &self.coproducts[a]
    }

    pub fn coproduct_of(&self, x: &HVec) -> HTensor {
        let mut out = HTensor::default();
        for (&a, c) in x {
            for (&(i, j), d) in &self.coproducts[a].terms {
                out.add_term(i, j, c * d);
            }
        }
        out
    }

    pub fn counit(&self, a: usize) -> Q {
        if self.split(a).1 == 0 {
            Q::one()
        } else {
            Q::zero()
        }
    }

    pub fn counit_of(&self, x: &HVec) -> Q {
        x.iter().map(|(&a, c)| self.counit(a) * c).sum()
    }

    /// S(g v_P) = S(v_{p_s})⋯S(v_{p_1}) g⁻¹.
    pub fn antipode(&self, a: usize) -> HVec {
        let (g, p) = self.split(a);
        let e = self.group().identity();
        let mut acc = basis_vec(self.one());
        for i in bits(p).into_iter().rev() {
            let mut sv = HVec::new();
            sv.insert(self.index(self.inv.u, 1 << i), -Q::one());
            acc = self.mul(&acc, &sv);
        }
        let _ = e;
        self.mul(&acc, &basis_vec(self.index(self.group().inv(g), 0)))
    }

    pub fn antipode_of(&self, x: &HVec) -> HVec {
        let mut out = HVec::new();
        for (&a, c) in x {
            for (k, d) in self.antipode(a) {
                add_term(&mut out, k, d * c);
            }
        }
        out
    }

    fn exhaustive(&self, budgets: &Budgets) -> bool {
        self.dim <= budgets.hopf_dim
    }

    /// Basis tuples to test: all of them within budget, else a seeded sample.
    fn tuples(&self, arity: usize, budgets: &Budgets) -> Vec<Vec<usize>> {
        let d = self.dim;
        let total = (d as u64).checked_pow(arity as u32).unwrap_or(u64::MAX);
        if self.exhaustive(budgets) || total <= budgets.hopf_samples as u64 {
            (0..total as usize)
                .map(|mut k| {
                    let mut t = vec![0; arity];
                    for slot in t.iter_mut() {
                        *slot = k % d;
                        k /= d;
                    }
                    t
                })
                .collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(budgets.seed ^ arity as u64);
            (0..budgets.hopf_samples).map(|_| (0..arity).map(|_| rng.gen_range(0..d)).collect()).collect()
        }
    }

    fn is_full(&self, arity: usize, budgets: &Budgets) -> bool {
        let total = (self.dim as u64).checked_pow(arity as u32).unwrap_or(u64::MAX);
        self.exhaustive(budgets) || total <= budgets.hopf_samples as u64
    }

    fn tensor3_of(&self, t: &HTensor, left: bool) -> T3 {
        // (Δ⊗id)t if left, else (id⊗Δ)t
        let mut out = T3::new();
        for (&(a, b), c) in &t.terms {
            if left {
                for (&(i, j), d) in &self.coproducts[a].terms {
                    add_term(&mut out, (i, j, b), c * d);
                }
            } else {
                for (&(i, j), d) in &self.coproducts[b].terms {
                    add_term(&mut out, (a, i, j), c * d);
                }
            }
        }
        out
    }

    fn mul3(&self, x: &T3, y: &T3) -> T3 {
        let mut out = T3::new();
        for (&(a1, a2, a3), ca) in x {
            for (&(b1, b2, b3), cb) in y {
                let c = ca * cb;
                let p1 = self.mul_basis(a1, b1);
                let p2 = self.mul_basis(a2, b2);
                let p3 = self.mul_basis(a3, b3);
                for (i, ci) in &p1 {
                    for (j, cj) in &p2 {
                        for (k, ck) in &p3 {
                            add_term(&mut out, (*i, *j, *k), &c * ci * cj * ck);
                        }
                    }
                }
            }
        }
        out
    }

    /// Associativity, unit, Δ multiplicative, coassociativity, counit, antipode,
    /// u grouplike and Δ(v_i) = v_i⊗1 + u⊗v_i.
    pub fn verify_hopf(&self, budgets: &Budgets) -> CheckReport {
        let mut reports = Vec::new();
        let one = basis_vec(self.one());

        let mut r = CheckReport::new("associativity", self.is_full(3, budgets));
        for t in self.tuples(3, budgets) {
            let (a, b, c) = (basis_vec(t[0]), basis_vec(t[1]), basis_vec(t[2]));
            r.checked += 1;
            if self.mul(&self.mul(&a, &b), &c) != self.mul(&a, &self.mul(&b, &c)) {
                r.fail(self.describe(&t));
                break;
            }
        }
        reports.push(r);

        let mut r = CheckReport::new("coproduct multiplicative", self.is_full(2, budgets));
        for t in self.tuples(2, budgets) {
            r.checked += 1;
            let lhs = self.coproduct_of(&self.mul_basis(t[0], t[1]));
            let rhs = self.tensor_mul(&self.coproducts[t[0]], &self.coproducts[t[1]]);
            if lhs != rhs {
                r.fail(self.describe(&t));
                break;
            }
        }
        reports.push(r);

        let mut r = CheckReport::new("unit, counit, coassociativity, antipode", self.is_full(1, budgets));
        for t in self.tuples(1, budgets) {
            let a = t[0];
            let av = basis_vec(a);
            r.checked += 1;
            let d = &self.coproducts[a];
            let mut left_counit = HVec::new();
            let mut right_counit = HVec::new();
            let mut s_left = HVec::new();
            let mut s_right = HVec::new();
            for (&(i, j), c) in &d.terms {
                add_term(&mut left_counit, j, self.counit(i) * c);
                add_term(&mut right_counit, i, self.counit(j) * c);
                for (k, x) in self.mul(&self.antipode(i), &basis_vec(j)) {
                    add_term(&mut s_left, k, x * c);
                }
                for (k, x) in self.mul(&basis_vec(i), &self.antipode(j)) {
                    add_term(&mut s_right, k, x * c);
                }
            }
            let mut eps_one = HVec::new();
            add_term(&mut eps_one, self.one(), self.counit(a));
            let coassoc = self.tensor3_of(d, true) == self.tensor3_of(d, false);
            let units = self.mul(&one, &av) == av && self.mul(&av, &one) == av;
            if !(units && left_counit == av && right_counit == av && coassoc && s_left == eps_one && s_right == eps_one) {
                r.fail(self.label(a));
                break;
            }
        }
        reports.push(r);

        let mut r = CheckReport::new("generators", true);
        let mut uu = HTensor::default();
        uu.add_term(self.u(), self.u(), Q::one());
        if self.coproducts[self.u()] != uu {
            r.fail("u".into());
        }
        for i in 0..self.n {
            r.checked += 1;
            let mut dv = HTensor::default();
            dv.add_term(self.v(i), self.one(), Q::one());
            dv.add_term(self.u(), self.v(i), Q::one());
            if self.coproducts[self.v(i)] != dv {
                r.fail(format!("v{}", i + 1));
            }
        }
        reports.push(r);
        CheckReport::merge(reports, "hopf")
    }

    fn describe(&self, t: &[usize]) -> String {
        t.iter().map(|&a| self.label(a)).collect::<Vec<_>>().join(", ")
    }

    /// (Δ⊗id)R = R₁₃R₂₃, (id⊗Δ)R = R₁₃R₁₂ and RΔ(a) = Δᵒᵖ(a)R with R invertible.
    pub fn verify_quasitriangular(&self, r: &HTensor, budgets: &Budgets) -> CheckReport {
        let mut reports = Vec::new();
        let e = self.one();
        let r13: T3 = r.terms.iter().map(|(&(a, b), c)| ((a, e, b), c.clone())).collect();
        let r23: T3 = r.terms.iter().map(|(&(a, b), c)| ((e, a, b), c.clone())).collect();
        let r12: T3 = r.terms.iter().map(|(&(a, b), c)| ((a, b, e), c.clone())).collect();
        let mut rep = CheckReport::new("(D x id)R = R13 R23", true);
        rep.checked = 1;
        if self.tensor3_of(r, true) != self.mul3(&r13, &r23) {
            rep.fail("R".into());
        }
        reports.push(rep);
        let mut rep = CheckReport::new("(id x D)R = R13 R12", true);
        rep.checked = 1;
        if self.tensor3_of(r, false) != self.mul3(&r13, &r12) {
            rep.fail("R".into());
        }
        reports.push(rep);
        let mut rep = CheckReport::new("R D(a) = D^op(a) R", self.is_full(1, budgets));
        for t in self.tuples(1, budgets) {
            rep.checked += 1;
            let d = &self.coproducts[t[0]];
            if self.tensor_mul(r, d) != self.tensor_mul(&d.flip(), r) {
                rep.fail(self.label(t[0]));
                break;
            }
        }
        reports.push(rep);
        let mut rep = CheckReport::new("R invertible", true);
        rep.checked = 1;
        if !self.tensor_invertible(r) {
            rep.fail("R".into());
        }
        reports.push(rep);
        CheckReport::merge(reports, "quasitriangular")
    }

    /// Quasitriangular and R₂₁R = 1⊗1.
    pub fn verify_triangular(&self, r: &HTensor, budgets: &Budgets) -> CheckReport {
        let mut rep = self.verify_quasitriangular(r, budgets);
        rep.check = "triangular".into();
        rep.checked += 1;
        let mut one = HTensor::default();
        one.add_term(self.one(), self.one(), Q::one());
        if self.tensor_mul(&r.flip(), r) != one {
            rep.fail("R21 R != 1 x 1".into());
        }
        rep
    }

    /// Whether left multiplication by R on H⊗H is injective, via the rank of
    /// the products R·(a⊗b) restricted to R's support closure. For triangular
    /// candidates R₂₁ is an explicit inverse, so this is only reached otherwise.
    fn tensor_invertible(&self, r: &HTensor) -> bool {
        let mut one = HTensor::default();
        one.add_term(self.one(), self.one(), Q::one());
        if self.tensor_mul(&r.flip(), r) == one {
            return true;
        }
        // R is invertible iff R·x = 1⊗1 is solvable; solve over the subalgebra
        // spanned by the supports of R's powers.
        let mut span: Vec<(usize, usize)> = r.terms.keys().cloned().collect();
        span.push((self.one(), self.one()));
        span.sort();
        span.dedup();
        let mut grew = true;
        while grew && span.len() <= 4096 {
            grew = false;
            let mut basis = HTensor::default();
            for &(a, b) in &span {
                basis.add_term(a, b, Q::one());
            }
            let mut prod = self.tensor_mul(r, &basis);
            for &(a, b) in r.terms.keys() {
                let mut s = HTensor::default();
                s.add_term(a, b, Q::one());
                for (&k, c) in &self.tensor_mul(&s, &s).terms {
                    prod.add_term(k.0, k.1, c.clone());
                }
            }
            for k in prod.terms.keys() {
                if span.binary_search(k).is_err() {
                    span.push(*k);
                    grew = true;
                }
            }
            span.sort();
        }
        let cols = span.len();
        let idx = |k: &(usize, usize)| span.binary_search(k).ok();
        let mut rows = vec![vec![Q::zero(); cols + 1]; cols];
        for (j, &(a, b)) in span.iter().enumerate() {
            let mut x = HTensor::default();
            x.add_term(a, b, Q::one());
            for (k, c) in &self.tensor_mul(r, &x).terms {
                match idx(k) {
                    Some(i) => rows[i][j] = c.clone(),
                    None => return false,
                }
            }
        }
        let target = idx(&(self.one(), self.one())).expect("unit in span");
        rows[target][cols] = Q::one();
        crate::rational::rank(&rows.iter().map(|r| r[..cols].to_vec()).collect::<Vec<_>>(), cols)
            == crate::rational::rank(&rows, cols + 1)
    }
}

/// R_u = ½(1⊗1 + 1⊗u + u⊗1 − u⊗u).
pub fn r_matrix_u(h: &SupergroupAlgebra) -> HTensor {
    r_matrix_ra_unchecked(h, &QMatrix::zeros(h.rank(), h.rank()))
}

/// The triangular structure R_A on E(n) for a symmetric n×n matrix A:
/// ½ Σ_{|P|=|F|} (−1)^{C(|P|,2)} det_{PF}(A) (v_P⊗v_F + uv_P⊗v_F + (−1)^{|P|} v_P⊗uv_F − (−1)^{|P|} uv_P⊗uv_F).
pub fn r_matrix_ra(h: &SupergroupAlgebra, a: &QMatrix) -> Result<HTensor> {
    if a.rows() != h.rank() || !a.is_square() || !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(r_matrix_ra_unchecked(h, a))
}

fn r_matrix_ra_unchecked(h: &SupergroupAlgebra, a: &QMatrix) -> HTensor {
    let e = h.group().identity();
    let u = h.inv.u;
    let minors = subset_minors(a);
    let half = Q::new(1.into(), 2.into());
    let mut out = HTensor::default();
    for p in 0..1usize << h.rank() {
        for f in 0..1usize << h.rank() {
            let s = p.count_ones() as usize;
            if s != f.count_ones() as usize || minors[p][f].is_zero() {
                continue;
            }
            let mut c = &half * &minors[p][f];
            if choose2_odd(s) {
                c = -c;
            }
            let odd = s % 2 == 1;
            let sg = |x: Q, flip: bool| if flip { -x } else { x };
            out.add_term(h.index(e, p), h.index(e, f), c.clone());
            out.add_term(h.index(u, p), h.index(e, f), c.clone());
            out.add_term(h.index(e, p), h.index(u, f), sg(c.clone(), odd));
            out.add_term(h.index(u, p), h.index(u, f), sg(c.clone(), !odd));
        }
    }
    out
}

/// A bilinear form on H, stored densely over basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCochain2 {
    dim: usize,
    values: Vec<Q>,
}

impl HCochain2 {
    pub fn zero(dim: usize) -> Result<Self> {
        if dim > DENSE_COCHAIN_DIM {
            return Err(Error::BudgetExceeded { what: "dense H-cochain", needed: dim as u64, limit: DENSE_COCHAIN_DIM as u64 });
        }
        Ok(HCochain2 { dim, values: vec![Q::zero(); dim * dim] })
    }

    /// ε⊗ε, the unit of the convolution algebra.
    pub fn counit(h: &SupergroupAlgebra) -> Result<Self> {
        let mut s = HCochain2::zero(h.dim())?;
        for a in 0..h.dim() {
            for b in 0..h.dim() {
                s.set(a, b, h.counit(a) * h.counit(b));
            }
        }
        Ok(s)
    }

    pub fn from_fn(h: &SupergroupAlgebra, f: impl Fn(usize, usize) -> Q) -> Result<Self> {
        let mut s = HCochain2::zero(h.dim())?;
        for a in 0..h.dim() {
            for b in 0..h.dim() {
                s.set(a, b, f(a, b));
            }
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> &Q {
        &self.values[a * self.dim + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: Q) {
        self.values[a * self.dim + b] = v;
    }

    pub fn eval(&self, x: &HVec, y: &HVec) -> Q {
        let mut s = Q::zero();
        for (&a, ca) in x {
            for (&b, cb) in y {
                let v = self.get(a, b);
                if !v.is_zero() {
                    s += v * ca * cb;
                }
            }
        }
        s
    }

    /// Nonzero entries, for reporting.
    pub fn sparse(&self) -> Vec<((usize, usize), Q)> {
        (0..self.dim * self.dim)
            .filter(|&k| !self.values[k].is_zero())
            .map(|k| ((k / self.dim, k % self.dim), self.values[k].clone()))
            .collect()
    }

    /// σ(1,x) = σ(x,1) = ε(x).
    pub fn is_normalized(&self, h: &SupergroupAlgebra) -> bool {
        let one = h.one();
        (0..self.dim).all(|a| *self.get(one, a) == h.counit(a) && *self.get(a, one) == h.counit(a))
    }
}

/// ω_Σ on E(n): ω(u^a v_P, u^c v_Q) = (−1)^{c|P|} (−1)^{C(|P|,2)} det_{PQ}(Σ), zero when |P| ≠ |Q|.
pub fn omega_sigma(h: &SupergroupAlgebra, sigma: &QMatrix) -> Result<HCochain2> {
    if h.group().order() != 2 {
        return Err(Error::Invalid("omega_sigma is defined on E(n), whose group is Z2".into()));
    }
    check_symmetric(h, sigma)?;
    let base = omega_table(sigma);
    let u = h.inv.u;
    HCochain2::from_fn(h, |a, b| {
        let (_, p) = h.split(a);
        let (c, qm) = h.split(b);
        let v = base[p][qm].clone();
        if c == u && p.count_ones() % 2 == 1 {
            -v
        } else {
            v
        }
    })
}

fn check_symmetric(h: &SupergroupAlgebra, sigma: &QMatrix) -> Result<()> {
    if !sigma.is_square() || sigma.rows() != h.rank() || !sigma.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(())
}

/// ω(v_P, v_Q) = (−1)^{C(|P|,2)} det_{PQ}(Σ).
fn omega_table(sigma: &QMatrix) -> Vec<Vec<Q>> {
    let mut t = subset_minors(sigma);
    for (p, row) in t.iter_mut().enumerate() {
        if choose2_odd(p.count_ones() as usize) {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    t
}

/// λ(g v_P, h v_Q) = ω_Σ(h⁻¹.v_P, v_Q) for G-invariant Σ.
pub fn lambda_cocycle(h: &SupergroupAlgebra, sigma: &QMatrix) -> Result<HCochain2> {
    check_symmetric(h, sigma)?;
    if let Some(generator) = first_non_invariant_generator(&h.rep, sigma) {
        return Err(Error::NotInvariant { generator });
    }
    lambda_cocycle_unchecked(h, sigma)
}

/// λ without the invariance precondition, for exhibiting what fails without it.
pub fn lambda_cocycle_unchecked(h: &SupergroupAlgebra, sigma: &QMatrix) -> Result<HCochain2> {
    check_symmetric(h, sigma)?;
    let base = omega_table(sigma);
    let grp = h.group();
    HCochain2::from_fn(h, |a, b| {
        let (_, p) = h.split(a);
        let (y, qm) = h.split(b);
        h.wedge[grp.inv(y)][p].iter().map(|(r, c)| c * &base[*r][qm]).sum()
    })
}

fn check_dense(h: &SupergroupAlgebra, sigma: &HCochain2) -> Result<()> {
    if sigma.dim() != h.dim() {
        return Err(Error::Invalid("cochain dimension does not match the algebra".into()));
    }
    Ok(())
}

/// Σσ(a₁,b₁)σ(a₂b₂,c) = Σσ(b₁,c₁)σ(a,b₂c₂) on basis triples.
pub fn is_left_cocycle(h: &SupergroupAlgebra, sigma: &HCochain2, budgets: &Budgets) -> Result<CheckReport> {
    check_dense(h, sigma)?;
    let mut rep = CheckReport::new("left cocycle", h.is_full(3, budgets));
    for t in h.tuples(3, budgets) {
        let (a, b, c) = (t[0], t[1], t[2]);
        rep.checked += 1;
        let cv = basis_vec(c);
        let av = basis_vec(a);
        let mut lhs = Q::zero();
        for (&(a1, a2), ca) in &h.coproducts[a].terms {
            for (&(b1, b2), cb) in &h.coproducts[b].terms {
                let s = sigma.get(a1, b1);
                if !s.is_zero() {
                    lhs += s * ca * cb * sigma.eval(&h.mul_basis(a2, b2), &cv);
                }
            }
        }
        let mut rhs = Q::zero();
        for (&(b1, b2), cb) in &h.coproducts[b].terms {
            for (&(c1, c2), cc) in &h.coproducts[c].terms {
                let s = sigma.get(b1, c1);
                if !s.is_zero() {
                    rhs += s * cb * cc * sigma.eval(&av, &h.mul_basis(b2, c2));
                }
            }
        }
        if lhs != rhs {
            rep.fail(format!("{} ({} != {})", h.describe(&t), lhs, rhs));
            break;
        }
    }
    Ok(rep)
}

/// Σσ(a₁b₁,c)σ(a₂,b₂) = Σσ(a,b₁c₁)σ(b₂,c₂) on basis triples.
pub fn is_right_cocycle(h: &SupergroupAlgebra, sigma: &HCochain2, budgets: &Budgets) -> Result<CheckReport> {
    check_dense(h, sigma)?;
    let mut rep = CheckReport::new("right cocycle", h.is_full(3, budgets));
    for t in h.tuples(3, budgets) {
        let (a, b, c) = (t[0], t[1], t[2]);
        rep.checked += 1;
        let cv = basis_vec(c);
        let av = basis_vec(a);
        let mut lhs = Q::zero();
        for (&(a1, a2), ca) in &h.coproducts[a].terms {
            for (&(b1, b2), cb) in &h.coproducts[b].terms {
                let s = sigma.get(a2, b2);
                if !s.is_zero() {
                    lhs += s * ca * cb * sigma.eval(&h.mul_basis(a1, b1), &cv);
                }
            }
        }
        let mut rhs = Q::zero();
        for (&(b1, b2), cb) in &h.coproducts[b].terms {
            for (&(c1, c2), cc) in &h.coproducts[c].terms {
                let s = sigma.get(b2, c2);
                if !s.is_zero() {
                    rhs += s * cb * cc * sigma.eval(&av, &h.mul_basis(b1, c1));
                }
            }
        }
        if lhs != rhs {
            rep.fail(format!("{} ({} != {})", h.describe(&t), lhs, rhs));
            break;
        }
    }
    Ok(rep)
}

/// Σσ(a₁,b₁)a₂b₂ = Σσ(a₂,b₂)a₁b₁ on basis pairs.
pub fn is_lazy(h: &SupergroupAlgebra, sigma: &HCochain2, budgets: &Budgets) -> Result<CheckReport> {
    check_dense(h, sigma)?;
    let mut rep = CheckReport::new("lazy", h.is_full(2, budgets));
    for t in h.tuples(2, budgets) {
        rep.checked += 1;
        let mut lhs = HVec::new();
        let mut rhs = HVec::new();
        for (&(a1, a2), ca) in &h.coproducts[t[0]].terms {
            for (&(b1, b2), cb) in &h.coproducts[t[1]].terms {
                let c = ca * cb;
                let s = sigma.get(a1, b1);
                if !s.is_zero() {
                    for (k, x) in h.mul_basis(a2, b2) {
                        add_term(&mut lhs, k, x * s * &c);
                    }
                }
                let s = sigma.get(a2, b2);
                if !s.is_zero() {
                    for (k, x) in h.mul_basis(a1, b1) {
                        add_term(&mut rhs, k, x * s * &c);
                    }
                }
            }
        }
        if lhs != rhs {
            rep.fail(h.describe(&t));
            break;
        }
    }
    Ok(rep)
}

/// (σ*τ)(a,b) = Σσ(a₁,b₁)τ(a₂,b₂).
pub fn convolve(h: &SupergroupAlgebra, sigma: &HCochain2, tau: &HCochain2) -> Result<HCochain2> {
    check_dense(h, sigma)?;
    check_dense(h, tau)?;
    HCochain2::from_fn(h, |a, b| {
        let mut s = Q::zero();
        for (&(a1, a2), ca) in &h.coproducts[a].terms {
            for (&(b1, b2), cb) in &h.coproducts[b].terms {
                let x = sigma.get(a1, b1);
                if !x.is_zero() {
                    s += x * ca * cb * tau.get(a2, b2);
                }
            }
        }
        s
    })
}

/// Solves σ*τ = ε⊗ε by back-substitution over |P|+|Q|; the diagonal
/// coefficient of τ(g v_P, h v_Q) is σ(g u^{|P|}, h u^{|Q|}), so σ is invertible
/// iff it does not vanish on G×G. Both σ*τ and τ*σ are then checked.
pub fn convolution_inverse(h: &SupergroupAlgebra, sigma: &HCochain2, budgets: &Budgets) -> Result<Option<HCochain2>> {
    check_dense(h, sigma)?;
    let d = h.dim();
    let pairs = (d as u64) * (d as u64);
    let limit = budgets.cohomology_unknowns.max((budgets.hopf_dim * budgets.hopf_dim) as u64);
    if pairs > limit {
        return Err(Error::BudgetExceeded { what: "convolution inverse unknowns", needed: pairs, limit });
    }
    let mut order: Vec<(usize, usize)> = (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).collect();
    let degree = |x: usize| (x & ((1 << h.rank()) - 1)).count_ones();
    order.sort_by_key(|&(a, b)| degree(a) + degree(b));
    let mut tau = HCochain2::zero(d)?;
    for (a, b) in order {
        let mut rest = h.counit(a) * h.counit(b);
        let mut diag = Q::zero();
        for (&(a1, a2), ca) in &h.coproducts[a].terms {
            for (&(b1, b2), cb) in &h.coproducts[b].terms {
                let x = sigma.get(a1, b1);
                if x.is_zero() {
                    continue;
                }
                if (a2, b2) == (a, b) {
                    diag += x * ca * cb;
                } else {
                    debug_assert!(degree(a2) + degree(b2) < degree(a) + degree(b));
                    rest -= x * ca * cb * tau.get(a2, b2);
                }
            }
        }
        if diag.is_zero() {
            return Ok(None);
        }
        tau.set(a, b, rest / diag);
    }
    let unit = HCochain2::counit(h)?;
    if convolve(h, sigma, &tau)? != unit || convolve(h, &tau, sigma)? != unit {
        return Ok(None);
    }
    Ok(Some(tau))
}

pub fn is_convolution_invertible(h: &SupergroupAlgebra, sigma: &HCochain2, budgets: &Budgets) -> Result<bool> {
    Ok(convolution_inverse(h, sigma, budgets)?.is_some())
}

/// H²_L(H) ≅ S²(V*)^G × H²(G/U, k·), or H²(G, k·) when V = 0.
#[derive(Clone, Debug)]
pub struct LazyCohomology {
    pub linear_dim: usize,
    pub linear_basis: SymFormSpace,
    pub group_part: CohomologyGroup,
    /// "G/U", or "G" when V = 0.
    pub group_part_of: &'static str,
    /// K(H) = 1, i.e. some χ: G → k· has χ(u) = −1 (u ∉ [G,G]).
    pub k_trivial: bool,
}

pub fn lazy_cohomology_parts(inv: &CentralInvolution, rep: &Representation, budgets: &Budgets) -> Result<LazyCohomology> {
    let g = &inv.group;
    if rep.dim() == 0 {
        return Ok(LazyCohomology {
            linear_dim: 0,
            linear_basis: SymFormSpace { basis: Vec::new() },
            group_part: h2_closed_field(g, budgets)?,
            group_part_of: "G",
            k_trivial: true,
        });
    }
    if !acts_as_minus_one(rep, inv) {
        return Err(Error::NotMinusOne);
    }
    let forms = invariant_symmetric_forms(rep);
    let q = quotient_by_central_involution(inv)?;
    let group_part = h2_closed_field(&q.quotient, budgets)?;
    let k_trivial = abelianization(g).projection[inv.u].iter().any(|&c| c != 0);
    Ok(LazyCohomology { linear_dim: forms.dim(), linear_basis: forms, group_part, group_part_of: "G/U", k_trivial })
}

pub fn lazy_cohomology(h: &SupergroupAlgebra, budgets: &Budgets) -> Result<LazyCohomology> {
    lazy_cohomology_parts(&h.inv, &h.rep, budgets)
}

/// BM(k, k[G]⋉ΛV, R_u) ≅ BM(k, k[G], R_u) × S²(V*)^G.
#[derive(Clone, Debug)]
pub struct BmSupergroup {
    pub finite: BmGroup,
    pub linear_dim: usize,
    pub linear_basis: SymFormSpace,
}

impl BmSupergroup {
    /// "Z2^3 x C" style summary.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let inv = &self.finite.group.invariants;
        let mut i = 0;
        while i < inv.len() {
            let j = inv[i..].iter().take_while(|&&x| x == inv[i]).count();
            parts.push(if j == 1 { format!("Z{}", inv[i]) } else { format!("Z{}^{}", inv[i], j) });
            i += j;
        }
        if self.linear_dim > 0 {
            let k = match self.finite.field.kind {
                crate::sharp::FieldKind::AlgClosedChar0 => "C",
                crate::sharp::FieldKind::RealClosed => "R",
            };
            parts.push(if self.linear_dim == 1 { k.to_string() } else { format!("{k}^{}", self.linear_dim) });
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" x ")
        }
    }
}

pub fn bm_supergroup(inv: &CentralInvolution, rep: &Representation, field: FieldDescriptor, budgets: &Budgets) -> Result<BmSupergroup> {
    if rep.dim() > 0 && !acts_as_minus_one(rep, inv) {
        return Err(Error::NotMinusOne);
    }
    let finite = bm_group(&inv.group, inv, field, budgets)?;
    let linear_basis = if rep.dim() > 0 { invariant_symmetric_forms(rep) } else { SymFormSpace { basis: Vec::new() } };
    Ok(BmSupergroup { finite, linear_dim: linear_basis.dim(), linear_basis })
}

/// Sign of a rational, as used in reports.
pub fn sign_of(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweedler() {
        let h = e_n(1);
        assert_eq!(h.dim(), 4);
        let b = Budgets::default();
        assert!(h.verify_hopf(&b).passed);
        assert!(h.verify_triangular(&r_matrix_u(&h), &b).passed);
        // v² = 0, uv = −vu
        assert!(h.mul_basis(h.v(0), h.v(0)).is_empty());
        let uv = h.mul_basis(h.u(), h.v(0));
        let vu = h.mul_basis(h.v(0), h.u());
        assert_eq!(uv.values().next().cloned(), vu.values().next().map(|c| -c.clone()));

    }
}
