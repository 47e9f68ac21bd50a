//! Finite groups, central involutions, quotients and characters.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::Arc;

use crate::abelian::{self, AbelianStructure};
use crate::error::{Error, Result};
use crate::rational::QMatrix;

/// Groups up to this order keep a full multiplication table.
pub const TABLE_LIMIT: usize = 4096;

struct Inner {
    order: usize,
    identity: usize,
    generators: Vec<usize>,
    /// right[x * ngens + i] = x * generators[i]
    right: Vec<u32>,
    /// spanning tree: x = parent[x] * generators[via[x]]
    parent: Vec<u32>,
    via: Vec<u32>,
    inverse: Vec<u32>,
    table: Option<Vec<u32>>,
    labels: Option<Vec<String>>,
}

/// A finite group on the indices `0..order`.
///
/// Cloning is cheap; the data is shared.
#[derive(Clone)]
pub struct FiniteGroup(Arc<Inner>);

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("generators", &self.0.generators)
            .finish()
    }
}

/// Generators accepted by [`close_generators`].
#[derive(Clone, Debug)]
pub enum Generators {
    /// Images of `0..n`; the product is composition, `(a·b)(i) = a(b(i))`.
    Permutations(Vec<Vec<usize>>),
    Matrices(Vec<QMatrix>),
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn identity(&self) -> usize {
        self.0.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.0.generators
    }

    pub fn has_table(&self) -> bool {
        self.0.table.is_some()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.0.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.0.labels {
            Some(l) => l[x].clone(),
            None => format!("g{x}"),
        }
    }

    pub fn same_as(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// x times the i-th generator.
    #[inline]
    pub fn right_gen(&self, x: usize, i: usize) -> usize {
        self.0.right[x * self.0.generators.len() + i] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.0.table {
            Some(t) => t[a * self.0.order + b] as usize,
            None => {
                let mut x = a;
                for i in self.word(b) {
                    x = self.right_gen(x, i);
                }
                x
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a] as usize
    }

    /// Generator positions whose product (left to right) is `x`.
    pub fn word(&self, x: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut y = x;
        while y != self.0.identity {
            w.push(self.0.via[y] as usize);
            y = self.0.parent[y] as usize;
        }
        w.reverse();
        w
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != self.identity() {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Central iff it commutes with every generator.
    pub fn is_central(&self, x: usize) -> bool {
        self.generators().iter().all(|&s| self.commutes(x, s))
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().all(|&a| g.iter().all(|&b| self.commutes(a, b)))
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(ab, self.inv(ba))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[self.identity()] = true;
        let mut out = vec![self.identity()];
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Smallest normal subgroup containing `elements`.
    pub fn normal_closure(&self, elements: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut inside = vec![false; self.order()];
        inside[self.identity()] = true;
        let mut members = vec![self.identity()];
        let mut pending: VecDeque<usize> = elements.iter().copied().collect();
        while let Some(c) = pending.pop_front() {
            if inside[c] {
                continue;
            }
            gens.push(c);
            let mut queue: VecDeque<usize> = members.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            // conjugates of the new generator by the group generators
            for &s in self.generators() {
                let conj = self.mul(self.mul(self.inv(s), c), s);
                if !inside[conj] {
                    pending.push_back(conj);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Checks identity, inverse and associativity laws: exhaustively when
    /// `|G| ≤ exhaustive_limit`, otherwise on generator triples.
    pub fn verify_axioms(&self, exhaustive_limit: usize) -> bool {
        let n = self.order();
        let e = self.identity();
        let all: Vec<usize> = (0..n).collect();
        if !all.iter().all(|&x| self.mul(e, x) == x && self.mul(x, e) == x) {
            return false;
        }
        if !all.iter().all(|&x| self.mul(x, self.inv(x)) == e && self.mul(self.inv(x), x) == e) {
            return false;
        }
        let sample: Vec<usize> = if n <= exhaustive_limit { all } else { self.generators().to_vec() };
        for &a in &sample {
            for &b in &sample {
                let ab = self.mul(a, b);
                for &c in &sample {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Builds a group from the right action of its generators on the element set.
    pub(crate) fn from_right_action(
        order: usize,
        identity: usize,
        generators: Vec<usize>,
        right: Vec<u32>,
        table: Option<Vec<u32>>,
        labels: Option<Vec<String>>,
    ) -> FiniteGroup {
        let ng = generators.len();
        let mut parent = vec![u32::MAX; order];
        let mut via = vec![0u32; order];
        let mut bfs = Vec::with_capacity(order);
        parent[identity] = identity as u32;
        bfs.push(identity);
        let mut head = 0;
        while head < bfs.len() {
            let x = bfs[head];
            head += 1;
            for i in 0..ng {
                let y = right[x * ng + i] as usize;
                if parent[y] == u32::MAX {
                    parent[y] = x as u32;
                    via[y] = i as u32;
                    bfs.push(y);
                }
            }
        }
        assert_eq!(bfs.len(), order, "generators do not span the group");
        let table = table.or_else(|| {
            (order <= TABLE_LIMIT).then(|| {
                let mut t = vec![0u32; order * order];
                for a in 0..order {
                    t[a * order + identity] = a as u32;
                    for &b in &bfs[1..] {
                        let pb = parent[b] as usize;
                        let prev = t[a * order + pb] as usize;
                        t[a * order + b] = right[prev * ng + via[b] as usize];
                    }
                }
                t
            })
        });
        let inverse = match &table {
            Some(t) => (0..order)
                .map(|a| (0..order).find(|&b| t[a * order + b] as usize == identity).unwrap() as u32)
                .collect(),
            None => {
                // s⁻¹ acts as s^(ord(s)-1)
                let gen_order: Vec<usize> = (0..ng)
                    .map(|i| {
                        let mut y = right[identity * ng + i] as usize;
                        let mut k = 1;
                        while y != identity {
                            y = right[y * ng + i] as usize;
                            k += 1;
                        }
                        k
                    })
                    .collect();
                (0..order)
                    .map(|x| {
                        let mut w = Vec::new();
                        let mut y = x;
                        while y != identity {
                            w.push(via[y] as usize);
                            y = parent[y] as usize;
                        }
                        // w lists the word of x from its last letter backwards
                        let mut z = identity;
                        for &i in &w {
                            for _ in 1..gen_order[i] {
                                z = right[z * ng + i] as usize;
                            }
                        }
                        z as u32
                    })
                    .collect()
            }
        };
        FiniteGroup(Arc::new(Inner { order, identity, generators, right, parent, via, inverse, table, labels }))
    }

    /// Group from a full multiplication table. Validates closure, identity,
    /// inverses and associativity on all triples.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("multiplication table must be square with entries in range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Invalid("table has no identity".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity && table[b][a] == identity) {
                return Err(Error::Invalid(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Invalid(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Invalid("label count differs from the order".into()));
            }
        }
        let generators = abelian::greedy_generators(n, identity, |a, b| table[a][b]);
        let ng = generators.len();
        let mut right = vec![0u32; n * ng];
        for x in 0..n {
            for (i, &g) in generators.iter().enumerate() {
                right[x * ng + i] = table[x][g] as u32;
            }
        }
        let flat = (n <= TABLE_LIMIT).then(|| table.iter().flatten().map(|&x| x as u32).collect());
        Ok(FiniteGroup::from_right_action(n, identity, generators, right, flat, labels))
    }

    /// Full multiplication table as nested vectors.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|a| (0..self.order()).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// The cyclic group ℤ_n with element k ↦ index k.
    pub fn cyclic(n: usize) -> FiniteGroup {
        Self::abelian_product(&[n])
    }

    /// ℤ_{n₁} × … × ℤ_{n_r}; element index is the mixed-radix encoding with the
    /// first factor least significant.
    pub fn abelian_product(orders: &[usize]) -> FiniteGroup {
        let n: usize = orders.iter().product();
        let decode = |mut x: usize| -> Vec<usize> {
            orders
                .iter()
                .map(|&o| {
                    let c = x % o;
                    x /= o;
                    c
                })
                .collect()
        };
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let (ca, cb) = (decode(a), decode(b));
                        let mut x = 0;
                        for i in (0..orders.len()).rev() {
                            x = x * orders[i] + (ca[i] + cb[i]) % orders[i];
                        }
                        x
                    })
                    .collect()
            })
            .collect();
        let labels = (0..n).map(|x| format!("{:?}", decode(x))).collect();
        Self::from_table(table, Some(labels)).expect("abelian product is a group")
    }

    /// Direct product; element (a, b) has index a + |G|·b.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let (m, n) = (g.order(), h.order());
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| g.mul(x % m, y % m) + m * h.mul(x / m, y / m))
                    .collect()
            })
            .collect();
        let labels = (0..m * n).map(|x| format!("({},{})", g.label(x % m), h.label(x / m))).collect();
        Self::from_table(table, Some(labels)).expect("direct product is a group")
    }
}

/// Breadth-first closure from the identity, generators tried in order. Returns
/// the elements in index order and the right action table.
pub fn closure<K: Clone + Eq + Hash>(
    identity: K,
    gens: &[K],
    mul: impl Fn(&K, &K) -> K,
    cap: usize,
) -> Result<(Vec<K>, Vec<u32>)> {
    let mut index: HashMap<K, u32> = HashMap::new();
    let mut elements = vec![identity.clone()];
    index.insert(identity, 0);
    let mut right: Vec<u32> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for s in gens {
            let y = mul(&x, s);
            let next = index.len() as u32;
            let id = *index.entry(y.clone()).or_insert_with(|| next);
            if id == next {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                elements.push(y);
            }
            right.push(id);
        }
    }
    Ok((elements, right))
}

/// Closure of generators with deterministic breadth-first indexing.
pub fn close_generators(gens: &Generators, cap: usize) -> Result<FiniteGroup> {
    match gens {
        Generators::Permutations(p) => close_permutations(p, cap),
        Generators::Matrices(m) => close_matrices(m, cap).map(|(g, _)| g),
    }
}

pub fn close_permutations(perms: &[Vec<usize>], cap: usize) -> Result<FiniteGroup> {
    let degree = perms.first().map_or(0, Vec::len);
    for (k, p) in perms.iter().enumerate() {
        let mut seen = vec![false; degree];
        if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Invalid(format!("generator {k} is not a permutation of 0..{degree}")));
        }
    }
    let id: Vec<usize> = (0..degree).collect();
    let (elements, right) = closure(id, perms, |a, b| b.iter().map(|&i| a[i]).collect(), cap)?;
    let labels = elements.iter().map(|p| cycle_notation(p)).collect();
    let generators = perms.iter().map(|p| elements.iter().position(|e| e == p).unwrap()).collect();
    Ok(FiniteGroup::from_right_action(elements.len(), 0, generators, right, None, Some(labels)))
}

/// Closure of rational matrices; also returns the matrix of every element.
pub fn close_matrices(mats: &[QMatrix], cap: usize) -> Result<(FiniteGroup, Vec<QMatrix>)> {
    let n = mats.first().map_or(0, QMatrix::rows);
    for (k, m) in mats.iter().enumerate() {
        if !m.is_square() || m.rows() != n {
            return Err(Error::Invalid(format!("generator {k} is not an {n}×{n} matrix")));
        }
        if m.inverse().is_none() {
            return Err(Error::NotInvertible { index: k });
        }
    }
    let (elements, right) = closure(QMatrix::identity(n), mats, |a, b| a.mul(b), cap)?;
    let generators = mats.iter().map(|m| elements.iter().position(|e| e == m).unwrap()).collect();
    let g = FiniteGroup::from_right_action(elements.len(), 0, generators, right, None, None);
    Ok((g, elements))
}

/// Closure of small integer matrices stored row-major as `i8`; entries must stay
/// within range (true for Weyl groups in the root basis).
pub fn close_int_matrices(mats: &[Vec<i8>], n: usize, cap: usize) -> Result<(FiniteGroup, Vec<Vec<i8>>)> {
    let mut id = vec![0i8; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    let (elements, right) = closure(id, mats, |a, b| int_mat_mul(a, b, n), cap)?;
    let generators = mats.iter().map(|m| elements.iter().position(|e| e == m).unwrap()).collect();
    let g = FiniteGroup::from_right_action(elements.len(), 0, generators, right, None, None);
    Ok((g, elements))
}

pub fn int_mat_mul(a: &[i8], b: &[i8], n: usize) -> Vec<i8> {
    let mut out = vec![0i8; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s: i32 = 0;
            for k in 0..n {
                s += a[i * n + k] as i32 * b[k * n + j] as i32;
            }
            out[i * n + j] = i8::try_from(s).expect("matrix entry out of range");
        }
    }
    out
}

/// Cycle notation on points 1..n, "()" for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = p[x];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// A central element u with u² = 1.
#[derive(Clone, Debug)]
pub struct CentralInvolution {
    pub group: FiniteGroup,
    pub u: usize,
}

impl CentralInvolution {
    pub fn new(group: &FiniteGroup, u: usize) -> Result<Self> {
        if u >= group.order() || group.mul(u, u) != group.identity() || !group.is_central(u) {
            return Err(Error::NotCentralInvolution { u });
        }
        Ok(CentralInvolution { group: group.clone(), u })
    }

    pub fn is_trivial(&self) -> bool {
        self.u == self.group.identity()
    }
}

/// G/U with the projection and the minimal-index section.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub group: FiniteGroup,
    pub u: usize,
    pub quotient: FiniteGroup,
    pub projection: Vec<usize>,
    pub section: Vec<usize>,
}

pub fn quotient_by_central_involution(inv: &CentralInvolution) -> Result<QuotientData> {
    if inv.is_trivial() {
        return Err(Error::TrivialInvolution);
    }
    let g = &inv.group;
    let n = g.order();
    let mut projection = vec![usize::MAX; n];
    let mut section = Vec::with_capacity(n / 2);
    for x in 0..n {
        if projection[x] == usize::MAX {
            let c = section.len();
            projection[x] = c;
            projection[g.mul(x, inv.u)] = c;
            section.push(x);
        }
    }
    let ng = g.generators().len();
    let m = section.len();
    let mut right = vec![0u32; m * ng];
    for c in 0..m {
        for i in 0..ng {
            right[c * ng + i] = projection[g.right_gen(section[c], i)] as u32;
        }
    }
    let generators = g.generators().iter().map(|&s| projection[s]).collect();
    let quotient = FiniteGroup::from_right_action(m, projection[g.identity()], generators, right, None, None);
    Ok(QuotientData { group: g.clone(), u: inv.u, quotient, projection, section })
}

/// A homomorphism G → ℤ_N written additively.
#[derive(Clone, Debug)]
pub struct GroupCharacter {
    pub group: FiniteGroup,
    pub target_order: u64,
    pub values: Vec<u64>,
}

impl GroupCharacter {
    pub fn trivial(group: &FiniteGroup, target_order: u64) -> Self {
        GroupCharacter { group: group.clone(), target_order, values: vec![0; group.order()] }
    }

    pub fn is_homomorphism(&self) -> bool {
        let g = &self.group;
        let n = self.target_order;
        (0..g.order()).all(|a| {
            g.generators()
                .iter()
                .all(|&s| (self.values[a] + self.values[s]) % n == self.values[g.mul(a, s)])
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &GroupCharacter) -> GroupCharacter {
        assert_eq!(self.target_order, other.target_order);
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % self.target_order).collect();
        GroupCharacter { group: self.group.clone(), target_order: self.target_order, values }
    }
}

/// Cyclic decomposition of G/[G,G] with a coordinate vector for every element of G.
#[derive(Clone, Debug)]
pub struct AbelianInvariants {
    pub group: FiniteGroup,
    pub cyclic_orders: Vec<u64>,
    pub projection: Vec<Vec<u64>>,
}

impl AbelianInvariants {
    pub fn order(&self) -> u64 {
        self.cyclic_orders.iter().product()
    }

    /// Characters g ↦ (N/gcd)·coordᵢ(g) generating Hom(G, ℤ_N).
    pub fn character_generators(&self, n: u64) -> Vec<GroupCharacter> {
        self.cyclic_orders
            .iter()
            .enumerate()
            .filter_map(|(i, &d)| {
                let g = crate::modular::gcd(d, n);
                (g > 1).then(|| GroupCharacter {
                    group: self.group.clone(),
                    target_order: n,
                    values: self.projection.iter().map(|c| (n / g) * (c[i] % g) % n).collect(),
                })
            })
            .collect()
    }

    /// Every character G → ℤ₂, the trivial one first.
    pub fn characters_to_z2(&self) -> Vec<GroupCharacter> {
        let gens = self.character_generators(2);
        let mut out = vec![GroupCharacter::trivial(&self.group, 2)];
        for g in gens {
            let more: Vec<GroupCharacter> = out.iter().map(|c| c.add(&g)).collect();
            out.extend(more);
        }
        out
    }
}

/// G^ab via the derived subgroup, which is the normal closure of the commutators
/// of generators (the same subgroup as the one generated by all commutators).
pub fn abelianization(g: &FiniteGroup) -> AbelianInvariants {
    let gens = g.generators();
    let comms: Vec<usize> =
        gens.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
    let derived = g.normal_closure(&comms);
    let n = g.order();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset[x] == usize::MAX {
            let c = reps.len();
            reps.push(x);
            for &d in &derived {
                coset[g.mul(x, d)] = c;
            }
        }
    }
    let m = reps.len();
    let ng = gens.len();
    let mut right = vec![0u32; m * ng];
    for c in 0..m {
        for i in 0..ng {
            right[c * ng + i] = coset[g.right_gen(reps[c], i)] as u32;
        }
    }
    let s: AbelianStructure = abelian::from_right_action(m, coset[g.identity()], ng, &right);
    AbelianInvariants {
        group: g.clone(),
        cyclic_orders: s.invariants,
        projection: coset.iter().map(|&c| s.coords[c].clone()).collect(),
    }
}

/// A character χ: G → ℤ₂ with χ(u) = 1, if the image of u in G^ab is not a square.
pub fn splitting_character(inv: &CentralInvolution) -> Result<Option<GroupCharacter>> {
    if inv.is_trivial() {
        return Err(Error::TrivialInvolution);
    }
    let ab = abelianization(&inv.group);
    let coords = &ab.projection[inv.u];
    let j = ab.cyclic_orders.iter().zip(coords).position(|(&d, &c)| d % 2 == 0 && c % 2 == 1);
    Ok(j.map(|j| GroupCharacter {
        group: inv.group.clone(),
        target_order: 2,
        values: ab.projection.iter().map(|c| c[j] % 2).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize) -> FiniteGroup {
        let mut gens = Vec::new();
        for i in 0..n - 1 {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(i, i + 1);
            gens.push(p);
        }
        close_permutations(&gens, 1000).unwrap()
    }

    #[test]
    fn symmetric_groups() {
        let s3 = s(3);
        assert_eq!(s3.order(), 6);
        assert!(s3.verify_axioms(200));
        assert_eq!(abelianization(&s(4)).cyclic_orders, vec![2]);
        assert_eq!(abelianization(&FiniteGroup::cyclic(6)).cyclic_orders, vec![6]);
    }

    #[test]
    fn word_multiplication_matches_table() {
        let g = s(4);
        for a in 0..g.order() {
            for b in 0..g.order() {
                let mut x = a;
                for i in g.word(b) {
                    x = g.right_gen(x, i);
                }
                assert_eq!(x, g.mul(a, b));
            }
        }
    }

    #[test]
    fn quotient_of_z4() {
        let z4 = FiniteGroup::cyclic(4);
        let inv = CentralInvolution::new(&z4, 2).unwrap();
        let q = quotient_by_central_involution(&inv).unwrap();
        assert_eq!(q.quotient.order(), 2);
        assert_eq!(q.section, vec![0, 1]);
        assert!(splitting_character(&inv).unwrap().is_none());
        let z2z2 = FiniteGroup::abelian_product(&[2, 2]);
        let inv = CentralInvolution::new(&z2z2, 1).unwrap();
        assert!(splitting_character(&inv).unwrap().is_some());
    }

    #[test]
    fn cap_is_enforced() {
        let gens = vec![vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]];
        assert_eq!(close_permutations(&gens, 100).unwrap_err(), Error::CapExceeded { cap: 100 });
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = QMatrix::from_i64(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(close_matrices(&[m], 10).unwrap_err(), Error::NotInvertible { index: 0 });
    }
}
