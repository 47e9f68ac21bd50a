//! Second cohomology of finite groups with trivial cyclic coefficients.
//!
//! A normalized cocycle is gauge fixed along a breadth-first spanning tree
//! `x = s·h` (s a generator) so that σ(s,h) = 0 on tree edges. The cocycle
//! identity then gives σ(x,l) = σ(h,l) + σ(s,hl), so σ is determined by the rows
//! σ(s,·). The remaining cocycle conditions, one for every non-tree pair (s,h)
//! and every l, are linear in these rows. They are solved modulo each prime power
//! of N after a random projection; kernel vectors are certified against the full
//! constraint stream before use.

use std::collections::VecDeque;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::group::{abelianization, FiniteGroup, GroupCharacter, QuotientData};
use crate::modular::{column_smith, factorize, inv_mod, invariant_factors, ColumnSmith, PrimePower};

/// Additive ℤ_N, identified with the N-th roots of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CoefficientModule {
    pub n: u64,
}

impl CoefficientModule {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        CoefficientModule { n }
    }

    /// The element −1 of μ_N, when N is even.
    pub fn minus_one(&self) -> Option<u64> {
        self.n.is_multiple_of(2).then_some(self.n / 2)
    }
}

/// Normalized 2-cochain with values in ℤ_N, stored as a full |G|×|G| table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain2 {
    modulus: u64,
    order: usize,
    values: Vec<u64>,
}

impl Cochain2 {
    pub fn zero(order: usize, modulus: u64) -> Self {
        Cochain2 { modulus, order, values: vec![0; order * order] }
    }

    /// Builds σ(g,h) = f(g,h) mod N; fails if the result is not normalized.
    pub fn from_fn(g: &FiniteGroup, modulus: u64, f: impl Fn(usize, usize) -> i64) -> Result<Self> {
        let n = g.order();
        let m = modulus as i64;
        let values = (0..n * n).map(|k| f(k / n, k % n).rem_euclid(m) as u64).collect();
        let c = Cochain2 { modulus, order: n, values };
        if !c.is_normalized(g.identity()) {
            return Err(Error::Invalid("cochain is not normalized".into()));
        }
        Ok(c)
    }

    /// Sparse constructor: unlisted pairs are zero.
    pub fn from_sparse(g: &FiniteGroup, modulus: u64, entries: &[((usize, usize), u64)]) -> Result<Self> {
        let mut c = Cochain2::zero(g.order(), modulus);
        for &((a, b), v) in entries {
            if a >= g.order() || b >= g.order() {
                return Err(Error::Invalid(format!("pair ({a},{b}) out of range")));
            }
            c.set(a, b, v % modulus);
        }
        if !c.is_normalized(g.identity()) {
            return Err(Error::Invalid("cochain is not normalized".into()));
        }
        Ok(c)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.values[a * self.order + b]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, v: u64) {
        self.values[a * self.order + b] = v % self.modulus;
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Nonzero entries in row-major order.
    pub fn sparse(&self) -> Vec<((usize, usize), u64)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(k, &v)| ((k / self.order, k % self.order), v))
            .collect()
    }

    pub fn is_normalized(&self, identity: usize) -> bool {
        (0..self.order).all(|g| self.get(identity, g) == 0 && self.get(g, identity) == 0)
    }

    pub fn add(&self, other: &Cochain2) -> Cochain2 {
        assert_eq!((self.modulus, self.order), (other.modulus, other.order));
        let m = self.modulus;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % m).collect();
        Cochain2 { modulus: m, order: self.order, values }
    }

    pub fn neg(&self) -> Cochain2 {
        let m = self.modulus;
        Cochain2 { modulus: m, order: self.order, values: self.values.iter().map(|&a| (m - a) % m).collect() }
    }

    pub fn scale(&self, k: u64) -> Cochain2 {
        let m = self.modulus;
        let k = k % m;
        Cochain2 { modulus: m, order: self.order, values: self.values.iter().map(|&a| a * k % m).collect() }
    }

    /// Image under ℤ_N → ℤ_{N·k}, x ↦ kx.
    pub fn widen(&self, k: u64) -> Cochain2 {
        let m = self.modulus * k;
        Cochain2 { modulus: m, order: self.order, values: self.values.iter().map(|&a| a * k).collect() }
    }

    /// Reduction modulo a divisor of N.
    pub fn reduce(&self, m: u64) -> Cochain2 {
        assert_eq!(self.modulus % m, 0);
        Cochain2 { modulus: m, order: self.order, values: self.values.iter().map(|&a| a % m).collect() }
    }

    /// Pullback along a map of element sets.
    pub fn pullback(&self, map: &[usize]) -> Cochain2 {
        let n = map.len();
        let values = (0..n * n).map(|k| self.get(map[k / n], map[k % n])).collect();
        Cochain2 { modulus: self.modulus, order: n, values }
    }
}

/// ∂γ(g,h) = γ(g) + γ(h) − γ(gh).
pub fn coboundary(g: &FiniteGroup, modulus: u64, gamma: &[u64]) -> Result<Cochain2> {
    if gamma.len() != g.order() || !gamma[g.identity()].is_multiple_of(modulus) {
        return Err(Error::Invalid("1-cochain must have one value per element and vanish at 1".into()));
    }
    let m = modulus;
    Cochain2::from_fn(g, m, |a, b| ((gamma[a] + gamma[b]) % m + m - gamma[g.mul(a, b)] % m) as i64)
}

/// σ(g,h) + σ(gh,l) = σ(h,l) + σ(g,hl) for all triples.
pub fn is_cocycle(g: &FiniteGroup, sigma: &Cochain2) -> bool {
    first_cocycle_failure(g, sigma).is_none()
}

/// First triple violating the cocycle identity.
pub fn first_cocycle_failure(g: &FiniteGroup, sigma: &Cochain2) -> Option<(usize, usize, usize)> {
    let n = g.order();
    if sigma.order != n {
        return Some((0, 0, 0));
    }
    let m = sigma.modulus;
    for a in 0..n {
        for b in 0..n {
            let ab = g.mul(a, b);
            let sab = sigma.get(a, b);
            for c in 0..n {
                let lhs = sab + sigma.get(ab, c);
                let rhs = sigma.get(b, c) + sigma.get(a, g.mul(b, c));
                if !(lhs + m - rhs % m).is_multiple_of(m) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Spanning tree and unknown layout shared by all prime components.
struct Gauge {
    n: usize,
    identity: usize,
    gens: Vec<usize>,
    /// x = gens[tree_gen[x]] · tree_parent[x]
    tree_gen: Vec<u32>,
    tree_parent: Vec<u32>,
    bfs: Vec<usize>,
    /// unknown index of (s, z) at s * n + z, NONE when fixed to zero
    unknown: Vec<u32>,
    n_unknowns: usize,
    /// (generator position, h) for every non-tree pair with h ≠ 1
    free_pairs: Vec<(usize, usize)>,
}

const NONE: u32 = u32::MAX;

/// The unknown count grows linearly with the number of generators and the
/// elimination cubically, so a short generating set pays off. Tries seeded
/// random tuples of increasing length and falls back to the given generators.
fn small_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let e = g.identity();
    let mut given: Vec<usize> = Vec::new();
    for &s in g.generators() {
        if s != e && !given.contains(&s) {
            given.push(s);
        }
    }
    let n = g.order();
    if given.len() <= 2 || n <= 2 {
        return given;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e6e);
    for k in 1..given.len() {
        for _ in 0..64 {
            let cand: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
            if cand.contains(&e) {
                continue;
            }
            if g.subgroup(&cand).len() == n {
                let mut out: Vec<usize> = Vec::new();
                for x in cand {
                    if !out.contains(&x) {
                        out.push(x);
                    }
                }
                return out;
            }
        }
    }
    given
}

impl Gauge {
    fn new(g: &FiniteGroup) -> Gauge {
        let n = g.order();
        let e = g.identity();
        let gens = small_generating_set(g);
        let mut tree_gen = vec![NONE; n];
        let mut tree_parent = vec![NONE; n];
        tree_parent[e] = e as u32;
        let mut bfs = vec![e];
        let mut queue = VecDeque::from([e]);
        while let Some(h) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                let x = g.mul(s, h);
                if tree_parent[x] == NONE {
                    tree_parent[x] = h as u32;
                    tree_gen[x] = i as u32;
                    bfs.push(x);
                    queue.push_back(x);
                }
            }
        }
        assert_eq!(bfs.len(), n);
        let mut unknown = vec![NONE; gens.len() * n];
        let mut n_unknowns = 0;
        let mut free_pairs = Vec::new();
        for (i, &s) in gens.iter().enumerate() {
            for z in 0..n {
                if z == e {
                    continue;
                }
                let x = g.mul(s, z);
                let tree_edge = tree_gen[x] == i as u32 && tree_parent[x] == z as u32;
                if !tree_edge {
                    unknown[i * n + z] = n_unknowns as u32;
                    n_unknowns += 1;
                    free_pairs.push((i, z));
                }
            }
        }
        Gauge { n, identity: e, gens, tree_gen, tree_parent, bfs, unknown, n_unknowns, free_pairs }
    }

    /// Appends the terms of σ(x, l) = Σ σ(sᵢ, hᵢ·l) along the tree path of x.
    fn expand(&self, g: &FiniteGroup, x: usize, l: usize, negate: bool, out: &mut Vec<(u32, bool)>) {
        let mut y = x;
        while y != self.identity {
            let s = self.tree_gen[y] as usize;
            let h = self.tree_parent[y] as usize;
            let u = self.unknown[s * self.n + g.mul(h, l)];
            if u != NONE {
                out.push((u, negate));
            }
            y = h;
        }
    }

    /// Terms of the cocycle condition at (s, h, l): σ(sh,l) − σ(h,l) − σ(s,hl) + σ(s,h).
    fn constraint(&self, g: &FiniteGroup, si: usize, h: usize, l: usize, out: &mut Vec<(u32, bool)>) {
        out.clear();
        let s = self.gens[si];
        self.expand(g, g.mul(s, h), l, false, out);
        self.expand(g, h, l, true, out);
        let u = self.unknown[si * self.n + g.mul(h, l)];
        if u != NONE {
            out.push((u, true));
        }
        let u = self.unknown[si * self.n + h];
        if u != NONE {
            out.push((u, false));
        }
    }

    fn constraints_hold(&self, g: &FiniteGroup, x: &[u64], m: u64) -> bool {
        let mut terms = Vec::new();
        for &(si, h) in &self.free_pairs {
            for l in 0..self.n {
                if l == self.identity {
                    continue;
                }
                self.constraint(g, si, h, l, &mut terms);
                let mut acc = 0u64;
                for &(u, neg) in &terms {
                    let v = x[u as usize];
                    acc = if neg { (acc + m - v) % m } else { (acc + v) % m };
                }
                if acc != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Full cocycle table (mod m) determined by the row unknowns.
    fn expand_table(&self, g: &FiniteGroup, x: &[u64], m: u64) -> Vec<u64> {
        let n = self.n;
        let mut t = vec![0u64; n * n];
        for &y in &self.bfs[1..] {
            let s = self.tree_gen[y] as usize;
            let h = self.tree_parent[y] as usize;
            for l in 0..n {
                let u = self.unknown[s * n + g.mul(h, l)];
                let r = if u == NONE { 0 } else { x[u as usize] };
                t[y * n + l] = (t[h * n + l] + r) % m;
            }
        }
        t
    }

    /// Row unknowns of the gauge-fixed representative of σ (values mod m).
    fn gauge_fix(&self, g: &FiniteGroup, sigma: &Cochain2, m: u64) -> Vec<u64> {
        let n = self.n;
        let sg = |a: usize, b: usize| sigma.get(a, b) % m;
        // γ(x) = γ(h) − σ(s,h) along tree edges x = s·h, γ = 0 on generators
        let mut gamma = vec![0u64; n];
        for &y in &self.bfs[1..] {
            let s = self.gens[self.tree_gen[y] as usize];
            let h = self.tree_parent[y] as usize;
            gamma[y] = if h == self.identity { 0 } else { (gamma[h] + m - sg(s, h)) % m };
        }
        let mut x = vec![0u64; self.n_unknowns];
        for (si, &s) in self.gens.iter().enumerate() {
            for z in 0..n {
                let u = self.unknown[si * n + z];
                if u != NONE {
                    // σ'(s,z) = σ(s,z) − γ(s) − γ(z) + γ(sz), with γ(s) = 0
                    x[u as usize] = (sg(s, z) + m - gamma[z] + gamma[g.mul(s, z)]) % m;
                }
            }
        }
        x
    }

    /// ∂γ_t for the 1-cochain counting occurrences of generator t in tree words.
    fn generator_coboundaries(&self, g: &FiniteGroup, m: u64) -> Vec<Vec<u64>> {
        let n = self.n;
        (0..self.gens.len())
            .map(|t| {
                let mut gamma = vec![0u64; n];
                for &y in &self.bfs[1..] {
                    let h = self.tree_parent[y] as usize;
                    gamma[y] = (gamma[h] + (self.tree_gen[y] as usize == t) as u64) % m;
                }
                let mut x = vec![0u64; self.n_unknowns];
                for si in 0..self.gens.len() {
                    let s = self.gens[si];
                    for z in 0..n {
                        let u = self.unknown[si * n + z];
                        if u != NONE {
                            x[u as usize] = (gamma[s] + gamma[z] + m - gamma[g.mul(s, z)]) % m;
                        }
                    }
                }
                x
            })
            .collect()
    }
}

/// One prime-power summand H²(G, ℤ/p^e).
#[derive(Clone)]
struct Component {
    ring: PrimePower,
    /// kernel columns of the row system: (index into Q⁻¹ rows, order exponent)
    kernel: Vec<(usize, u32)>,
    smith: Arc<ColumnSmith>,
    /// kernel coordinates → class coordinates: z_k = Σ_i c_i class_matrix[i][k]
    class_matrix: Vec<Vec<u64>>,
    class_orders: Vec<u64>,
    /// gauge vectors representing the class generators
    lifts: Vec<Vec<u64>>,
}

impl Component {
    fn kernel_coords(&self, x: &[u64]) -> Option<Vec<u64>> {
        let r = self.ring;
        let y = self.smith.apply_qinv(x);
        let in_kernel: std::collections::HashSet<usize> = self.kernel.iter().map(|k| k.0).collect();
        if y.iter().enumerate().any(|(j, &v)| v != 0 && !in_kernel.contains(&j)) {
            return None;
        }
        let mut c = Vec::with_capacity(self.kernel.len());
        for &(j, a) in &self.kernel {
            let s = r.pow(r.e - a);
            if !y[j].is_multiple_of(s) {
                return None;
            }
            c.push(y[j] / s);
        }
        Some(c)
    }

    fn class_coords(&self, c: &[u64]) -> Vec<u64> {
        let m = self.ring.modulus;
        self.class_orders
            .iter()
            .enumerate()
            .map(|(k, &ord)| {
                let mut acc = 0u64;
                for (i, &ci) in c.iter().enumerate() {
                    acc = (acc + ci * self.class_matrix[i][k]) % m;
                }
                acc % ord
            })
            .collect()
    }

    /// Quotient by additional relations given in class coordinates.
    fn quotient(&mut self, relations: &[Vec<u64>]) {
        let r = self.ring;
        let k = self.class_orders.len();
        if k == 0 {
            return;
        }
        let mut rows: Vec<Vec<u64>> = relations.iter().map(|v| v.iter().map(|&a| a % r.modulus).collect()).collect();
        for (j, &ord) in self.class_orders.iter().enumerate() {
            let mut row = vec![0; k];
            row[j] = ord % r.modulus;
            rows.push(row);
        }
        let s = column_smith(rows, k, r);
        let mut new_matrix = vec![Vec::new(); self.class_matrix.len()];
        let mut new_orders = Vec::new();
        let mut new_lifts = Vec::new();
        for (j, &v) in s.valuations.iter().enumerate() {
            if v == 0 {
                continue;
            }
            new_orders.push(r.pow(v));
            for (i, row) in self.class_matrix.iter().enumerate() {
                let mut acc = 0;
                for (t, &a) in row.iter().enumerate() {
                    acc = (acc + a * s.q_cols[j][t]) % r.modulus;
                }
                new_matrix[i].push(acc);
            }
            let len = self.lifts.first().map_or(0, Vec::len);
            let mut lift = vec![0u64; len];
            for (t, old) in self.lifts.iter().enumerate() {
                let f = s.qinv_rows[j][t];
                if f != 0 {
                    for (a, &b) in lift.iter_mut().zip(old) {
                        *a = (*a + f * b) % r.modulus;
                    }
                }
            }
            new_lifts.push(lift);
        }
        self.class_matrix = new_matrix;
        self.class_orders = new_orders;
        self.lifts = new_lifts;
    }
}

/// Which realization of H² a [`CohomologyGroup`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CohomologyKind {
    /// H²(G, ℤ_N).
    Cyclic,
    /// H²(G, ℂ·) through ℤ_M with M = |G| modulo the connecting map.
    ClosedField,
}

/// H²(G, ℤ_N) (or its closed-field quotient) with representatives and a class map.
#[derive(Clone)]
pub struct CohomologyGroup {
    group: FiniteGroup,
    coeff: CoefficientModule,
    kind: CohomologyKind,
    gauge: Arc<Gauge>,
    components: Vec<Component>,
    reps: Vec<Cochain2>,
}

impl std::fmt::Debug for CohomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CohomologyGroup")
            .field("group_order", &self.group.order())
            .field("modulus", &self.coeff.n)
            .field("kind", &self.kind)
            .field("orders", &self.orders())
            .finish()
    }
}

/// A class, given by coordinates modulo the cyclic orders of its group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohomologyClass {
    pub coords: Vec<u64>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

fn check_budget(g: &FiniteGroup, budgets: &Budgets) -> Result<()> {
    let n = g.order() as u64;
    let needed = (n - 1) * (n - 1);
    if needed > budgets.cohomology_unknowns {
        return Err(Error::BudgetExceeded {
            what: "cohomology unknowns (|G|-1)^2",
            needed,
            limit: budgets.cohomology_unknowns,
        });
    }
    Ok(())
}

/// H²(G, ℤ_N).
pub fn h2(g: &FiniteGroup, coeff: CoefficientModule, budgets: &Budgets) -> Result<CohomologyGroup> {
    check_budget(g, budgets)?;
    let gauge = Arc::new(Gauge::new(g));
    let mut components = Vec::new();
    for (p, e) in factorize(coeff.n) {
        components.push(solve_component(g, &gauge, PrimePower::new(p, e), budgets.seed)?);
    }
    let mut out = CohomologyGroup {
        group: g.clone(),
        coeff,
        kind: CohomologyKind::Cyclic,
        gauge,
        components,
        reps: Vec::new(),
    };
    out.rebuild_reps();
    Ok(out)
}

/// H²(G, k·) for algebraically closed k of characteristic 0 (the Schur multiplier).
///
/// Computes H²(G, ℤ_M) with M = |G| and divides by the image of the connecting
/// map of 0 → ℤ_M → k· → k· → 0 (z ↦ z^M), which is generated by δφ for φ running
/// over generators of Hom(G, ℤ_M). Since |G| annihilates H²(G, k·), the quotient
/// is all of it.
pub fn h2_closed_field(g: &FiniteGroup, budgets: &Budgets) -> Result<CohomologyGroup> {
    closed_field_with_modulus(g, g.order() as u64, budgets)
}

/// The closed-field construction through ℤ_M for a multiple M of |G|.
pub fn closed_field_with_modulus(g: &FiniteGroup, m: u64, budgets: &Budgets) -> Result<CohomologyGroup> {
    if !m.is_multiple_of(g.order() as u64) {
        return Err(Error::Invalid(format!("{m} is not a multiple of |G| = {}", g.order())));
    }
    let mut h = h2(g, CoefficientModule::new(m), budgets)?;
    h.kind = CohomologyKind::ClosedField;
    let ab = abelianization(g);
    let deltas: Vec<Cochain2> = ab.character_generators(m).iter().map(|phi| connecting_image(g, phi)).collect();
    h.quotient_by(&deltas);
    Ok(h)
}

/// δφ(g,h) = (φ̃(g) + φ̃(h) − φ̃(gh)) / M for φ: G → ℤ_M lifted to [0, M).
pub fn connecting_image(g: &FiniteGroup, phi: &GroupCharacter) -> Cochain2 {
    let m = phi.target_order;
    Cochain2::from_fn(g, m, |a, b| {
        let s = phi.values[a] + phi.values[b];
        let c = phi.values[g.mul(a, b)];
        ((s - c) / m) as i64
    })
    .expect("normalized")
}

fn solve_component(g: &FiniteGroup, gauge: &Gauge, ring: PrimePower, seed: u64) -> Result<Component> {
    let n = gauge.n_unknowns;
    let m = ring.modulus;
    let mut extra = 24;
    for attempt in 0..4u64 {
        let rows = project(g, gauge, ring, n + extra, seed ^ (attempt << 32) ^ m);
        let smith = column_smith(rows, n, ring);
        let kernel_vectors = smith.kernel();
        if kernel_vectors.iter().all(|(v, _)| gauge.constraints_hold(g, v, m)) {
            return Ok(finish_component(g, gauge, ring, smith));
        }
        extra *= 2;
    }
    Err(Error::Invalid("random projection failed to certify the cocycle space".into()))
}

/// `rows` random combinations of the constraint stream, as a dense matrix.
fn project(g: &FiniteGroup, gauge: &Gauge, ring: PrimePower, rows: usize, seed: u64) -> Vec<Vec<u64>> {
    let n = gauge.n_unknowns;
    let m = ring.modulus;
    let mut acc = vec![0u64; n * rows];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![0u64; rows];
    let mut neg = vec![0u64; rows];
    let mut terms = Vec::new();
    let limit = u64::MAX / (2 * m) - 1;
    let mut added = 0u64;
    for &(si, h) in &gauge.free_pairs {
        for l in 0..gauge.n {
            if l == gauge.identity {
                continue;
            }
            gauge.constraint(g, si, h, l, &mut terms);
            if terms.is_empty() {
                continue;
            }
            for (c, nc) in coeffs.iter_mut().zip(neg.iter_mut()) {
                *c = rng.gen_range(0..m);
                *nc = m - *c;
            }
            for &(u, negate) in &terms {
                let row = &mut acc[u as usize * rows..(u as usize + 1) * rows];
                let src = if negate { &neg } else { &coeffs };
                for (a, &b) in row.iter_mut().zip(src) {
                    *a += b;
                }
            }
            added += terms.len() as u64;
            if added >= limit {
                for a in acc.iter_mut() {
                    *a %= m;
                }
                added = 0;
            }
        }
    }
    (0..rows).map(|r| (0..n).map(|u| acc[u * rows + r] % m).collect()).collect()
}

fn finish_component(g: &FiniteGroup, gauge: &Gauge, ring: PrimePower, smith: ColumnSmith) -> Component {
    let kernel: Vec<(usize, u32)> =
        smith.valuations.iter().enumerate().filter(|(_, &v)| v > 0).map(|(j, &v)| (j, v)).collect();
    let kernel_vectors: Vec<Vec<u64>> = smith.kernel().into_iter().map(|(v, _)| v).collect();
    let k = kernel.len();
    let mut comp = Component {
        ring,
        kernel: kernel.clone(),
        smith: Arc::new(smith),
        class_matrix: (0..k).map(|i| (0..k).map(|j| (i == j) as u64).collect()).collect(),
        class_orders: kernel.iter().map(|&(_, a)| ring.pow(a)).collect(),
        lifts: kernel_vectors,
    };
    let relations: Vec<Vec<u64>> = gauge
        .generator_coboundaries(g, ring.modulus)
        .iter()
        .map(|b| comp.kernel_coords(b).expect("coboundaries are cocycles"))
        .collect();
    comp.quotient(&relations);
    comp
}

impl CohomologyGroup {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn coefficients(&self) -> CoefficientModule {
        self.coeff
    }

    pub fn modulus(&self) -> u64 {
        self.coeff.n
    }

    pub fn kind(&self) -> CohomologyKind {
        self.kind
    }

    /// Orders of the cyclic factors the coordinates refer to (prime powers).
    pub fn orders(&self) -> Vec<u64> {
        self.components.iter().flat_map(|c| c.class_orders.iter().copied()).collect()
    }

    /// Invariant factors d₁ | d₂ | …, ascending, trivial group ↦ empty.
    pub fn invariants(&self) -> Vec<u64> {
        invariant_factors(&self.orders())
    }

    pub fn size(&self) -> u64 {
        self.orders().iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders().is_empty()
    }

    /// Representative cocycles of the coordinate generators.
    pub fn reps(&self) -> &[Cochain2] {
        &self.reps
    }

    pub fn zero(&self) -> CohomologyClass {
        CohomologyClass { coords: vec![0; self.orders().len()] }
    }

    pub fn add(&self, a: &CohomologyClass, b: &CohomologyClass) -> CohomologyClass {
        let coords = self.orders().iter().enumerate().map(|(i, &o)| (a.coords[i] + b.coords[i]) % o).collect();
        CohomologyClass { coords }
    }

    pub fn neg(&self, a: &CohomologyClass) -> CohomologyClass {
        let coords = self.orders().iter().zip(&a.coords).map(|(&o, &c)| (o - c) % o).collect();
        CohomologyClass { coords }
    }

    /// All classes, coordinates in lexicographic order.
    pub fn elements(&self) -> Vec<CohomologyClass> {
        let orders = self.orders();
        let mut out = vec![CohomologyClass { coords: Vec::new() }];
        for &o in &orders {
            out = out
                .into_iter()
                .flat_map(|c| {
                    (0..o).map(move |v| {
                        let mut c = c.clone();
                        c.coords.push(v);
                        c
                    })
                })
                .collect();
        }
        out
    }

    /// The canonical representative Σ coordᵢ·repᵢ.
    pub fn representative(&self, cls: &CohomologyClass) -> Cochain2 {
        let mut out = Cochain2::zero(self.group.order(), self.coeff.n);
        for (rep, &c) in self.reps.iter().zip(&cls.coords) {
            if c != 0 {
                out = out.add(&rep.scale(c));
            }
        }
        out
    }

    /// Class of a cocycle with values in ℤ_{N'}, N' | N (embedded by x ↦ (N/N')x).
    pub fn class_of(&self, sigma: &Cochain2) -> Result<CohomologyClass> {
        if sigma.order() != self.group.order() || !self.coeff.n.is_multiple_of(sigma.modulus()) {
            return Err(Error::Invalid("cochain does not match the cohomology group".into()));
        }
        if !is_cocycle(&self.group, sigma) {
            return Err(Error::NotCocycle);
        }
        Ok(self.class_of_cocycle(sigma))
    }

    /// As [`class_of`](Self::class_of) without re-checking the cocycle identity.
    pub fn class_of_cocycle(&self, sigma: &Cochain2) -> CohomologyClass {
        let widened;
        let sigma = if sigma.modulus() == self.coeff.n {
            sigma
        } else {
            widened = sigma.widen(self.coeff.n / sigma.modulus());
            &widened
        };
        let mut coords = Vec::new();
        for comp in &self.components {
            let m = comp.ring.modulus;
            let x = self.gauge.gauge_fix(&self.group, sigma, m);
            let c = comp.kernel_coords(&x).expect("cocycle lies in the kernel");
            coords.extend(comp.class_coords(&c));
        }
        CohomologyClass { coords }
    }

    /// Divides by the subgroup generated by the classes of the given cocycles.
    pub fn quotient_by(&mut self, cocycles: &[Cochain2]) {
        let classes: Vec<CohomologyClass> = cocycles.iter().map(|c| self.class_of_cocycle(c)).collect();
        let mut offset = 0;
        for comp in self.components.iter_mut() {
            let k = comp.class_orders.len();
            let rel: Vec<Vec<u64>> = classes.iter().map(|c| c.coords[offset..offset + k].to_vec()).collect();
            offset += k;
            comp.quotient(&rel);
        }
        self.rebuild_reps();
    }

    fn rebuild_reps(&mut self) {
        let n = self.coeff.n;
        let mut reps = Vec::new();
        for comp in &self.components {
            let pe = comp.ring.modulus;
            let cofactor = n / pe;
            let scale = inv_mod(cofactor % pe, pe).expect("coprime cofactor");
            for lift in &comp.lifts {
                let table = self.gauge.expand_table(&self.group, lift, pe);
                let values = table.iter().map(|&v| cofactor * (v * scale % pe)).collect();
                reps.push(Cochain2 { modulus: n, order: self.group.order(), values });
            }
        }
        self.reps = reps;
    }

    /// The same construction for another group (used for quotients and subgroups).
    pub fn same_kind_for(&self, g: &FiniteGroup, budgets: &Budgets) -> Result<CohomologyGroup> {
        match self.kind {
            CohomologyKind::Cyclic => h2(g, self.coeff, budgets),
            CohomologyKind::ClosedField => h2_closed_field(g, budgets),
        }
    }
}

/// Pullback of a class of H²(G/U) to H²(G); `target` must be a cohomology group of G
/// whose modulus is a multiple of the source modulus.
pub fn inflation(
    q: &QuotientData,
    source: &CohomologyGroup,
    cls: &CohomologyClass,
    target: &CohomologyGroup,
) -> Result<CohomologyClass> {
    if !source.group().same_as(&q.quotient) || !target.group().same_as(&q.group) {
        return Err(Error::Invalid("cohomology groups do not match the quotient data".into()));
    }
    if !target.modulus().is_multiple_of(source.modulus()) {
        return Err(Error::Invalid("coefficient modules do not match".into()));
    }
    let rep = source.representative(cls);
    Ok(target.class_of_cocycle(&rep.pullback(&q.projection)))
}

/// The subgroup U = {1, u} as a group (index 0 = 1, index 1 = u).
pub fn involution_subgroup() -> FiniteGroup {
    FiniteGroup::cyclic(2)
}

/// Restriction to U = {1,u}, classified in the cohomology of U of the same kind
/// as `source`. Returns that cohomology group together with the class.
pub fn restriction(
    inv: &crate::group::CentralInvolution,
    source: &CohomologyGroup,
    cls: &CohomologyClass,
    budgets: &Budgets,
) -> Result<(CohomologyGroup, CohomologyClass)> {
    let u_group = involution_subgroup();
    let target = match source.kind() {
        CohomologyKind::Cyclic => h2(&u_group, source.coefficients(), budgets)?,
        CohomologyKind::ClosedField => closed_field_with_modulus(&u_group, source.modulus(), budgets)?,
    };
    let rep = source.representative(cls);
    let restricted = rep.pullback(&[inv.group.identity(), inv.u]);
    let c = target.class_of_cocycle(&restricted);
    Ok((target, c))
}

/// T(f)(a,b) = f(φ(a)φ(b)φ(ab)⁻¹) for the minimal-index section φ, classified in
/// `target`, a cohomology group of G/U. `f_u` is f(u) in ℤ_{modulus}.
pub fn transgression(
    f_u: u64,
    modulus: u64,
    q: &QuotientData,
    target: &CohomologyGroup,
) -> Result<CohomologyClass> {
    transgression_with_section(f_u, modulus, q, &q.section, target)
}

/// Transgression for an arbitrary section of G → G/U.
pub fn transgression_with_section(
    f_u: u64,
    modulus: u64,
    q: &QuotientData,
    section: &[usize],
    target: &CohomologyGroup,
) -> Result<CohomologyClass> {
    if !target.group().same_as(&q.quotient) || !target.modulus().is_multiple_of(modulus) {
        return Err(Error::Invalid("target does not match the quotient".into()));
    }
    if !(2 * f_u).is_multiple_of(modulus) {
        return Err(Error::Invalid("f is not a character of U".into()));
    }
    let g = &q.group;
    let qg = &q.quotient;
    let cocycle = Cochain2::from_fn(qg, modulus, |a, b| {
        let x = g.mul(g.mul(section[a], section[b]), g.inv(section[qg.mul(a, b)]));
        if x == g.identity() {
            0
        } else {
            debug_assert_eq!(x, q.u);
            f_u as i64
        }
    })?;
    target.class_of(&cocycle)
}

/// Transgression of a character of U given as a [`GroupCharacter`] on the
/// two-element group from [`involution_subgroup`].
pub fn transgression_of(f: &GroupCharacter, q: &QuotientData, target: &CohomologyGroup) -> Result<CohomologyClass> {
    if f.group.order() != 2 {
        return Err(Error::Invalid("f must be defined on U = {1,u}".into()));
    }
    transgression(f.values[1], f.target_order, q, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        let b = Budgets::default();
        for n in 1..=6 {
            for m in 1..=6u64 {
                let g = FiniteGroup::cyclic(n);
                let h = h2(&g, CoefficientModule::new(m), &b).unwrap();
                let d = crate::modular::gcd(n as u64, m);
                let expect: Vec<u64> = if d > 1 { vec![d] } else { vec![] };
                assert_eq!(h.invariants(), expect, "Z{n} with Z{m}");
                for (i, r) in h.reps().iter().enumerate() {
                    assert!(is_cocycle(&g, r));
                    let c = h.class_of(r).unwrap();
                    let mut unit = vec![0; h.orders().len()];
                    unit[i] = 1;
                    assert_eq!(c.coords, unit);
                }
            }
        }
    }

    #[test]
    fn klein_four() {
        let b = Budgets::default();
        let g = FiniteGroup::abelian_product(&[2, 2]);
        assert_eq!(h2(&g, CoefficientModule::new(2), &b).unwrap().invariants(), vec![2, 2, 2]);
        assert_eq!(h2_closed_field(&g, &b).unwrap().invariants(), vec![2]);
        assert!(h2_closed_field(&FiniteGroup::cyclic(2), &b).unwrap().is_trivial());
    }
}
