//! The θ grading, the ♯-product, H²♯(G, k·), Q(k,G) and BM(k, k[G], R_u).

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::{self, AbelianStructure};
use crate::budget::Budgets;
use crate::cohomology::{h2, h2_closed_field, is_cocycle, Cochain2, CoefficientModule, CohomologyClass, CohomologyGroup};
use crate::error::{Error, Result};
use crate::group::{
    abelianization, quotient_by_central_involution, splitting_character, CentralInvolution, FiniteGroup,
    GroupCharacter, QuotientData,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    /// Algebraically closed of characteristic 0 (ℂ).
    AlgClosedChar0,
    /// Real closed (ℝ).
    RealClosed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
}

impl FieldDescriptor {
    pub const CLOSED: FieldDescriptor = FieldDescriptor { kind: FieldKind::AlgClosedChar0 };
    pub const REAL: FieldDescriptor = FieldDescriptor { kind: FieldKind::RealClosed };

    /// |k·/(k·)²|.
    pub fn square_class_order(&self) -> u8 {
        match self.kind {
            FieldKind::AlgClosedChar0 => 1,
            FieldKind::RealClosed => 2,
        }
    }

    /// |Br(k)|.
    pub fn brauer_order(&self) -> u8 {
        self.square_class_order()
    }

    pub fn minus_one_is_square(&self) -> bool {
        self.kind == FieldKind::AlgClosedChar0
    }

    /// The coefficient module used for H²(G, k·): ℤ_|G| for ℂ, ℤ₂ for ℝ.
    pub fn coeff(&self, g: &FiniteGroup) -> CoefficientModule {
        match self.kind {
            FieldKind::AlgClosedChar0 => CoefficientModule::new(g.order() as u64),
            FieldKind::RealClosed => CoefficientModule::new(2),
        }
    }

    /// H²(G, k·) in the realization matching this field.
    pub fn cohomology(&self, g: &FiniteGroup, budgets: &Budgets) -> Result<CohomologyGroup> {
        match self.kind {
            FieldKind::AlgClosedChar0 => h2_closed_field(g, budgets),
            FieldKind::RealClosed => h2(g, CoefficientModule::new(2), budgets),
        }
    }

    /// Square class of x ∈ μ_N ⊂ k· (0 = square, 1 = not a square).
    pub fn square_class(&self, x: u64, modulus: u64) -> u8 {
        match self.kind {
            FieldKind::AlgClosedChar0 => 0,
            // the only real roots of unity are ±1
            FieldKind::RealClosed => u8::from(!x.is_multiple_of(modulus)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            FieldKind::AlgClosedChar0 => "closed",
            FieldKind::RealClosed => "real",
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// ⟨a, b / k⟩ in Br(k) for square classes a, b.
pub fn quaternion_symbol(a: u8, b: u8, field: FieldDescriptor) -> u8 {
    match field.kind {
        FieldKind::AlgClosedChar0 => 0,
        FieldKind::RealClosed => u8::from(a == 1 && b == 1),
    }
}

/// The degree |g|_σ ∈ ℤ₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGrading {
    pub degree: Vec<u8>,
}

impl ZGrading {
    pub fn is_trivial(&self) -> bool {
        self.degree.iter().all(|&d| d == 0)
    }

    pub fn is_homomorphism(&self, g: &FiniteGroup) -> bool {
        (0..g.order()).all(|a| (0..g.order()).all(|b| self.degree[g.mul(a, b)] == self.degree[a] ^ self.degree[b]))
    }
}

fn require_even(sigma: &Cochain2) -> Result<u64> {
    let n = sigma.modulus();
    if !n.is_multiple_of(2) {
        return Err(Error::OddModulus(n));
    }
    Ok(n / 2)
}

/// θ(σ)(g) = σ(g,u) − σ(u,g), an element of {0, N/2}.
pub fn theta(sigma: &Cochain2, inv: &CentralInvolution) -> Result<ZGrading> {
    require_even(sigma)?;
    if !is_cocycle(&inv.group, sigma) {
        return Err(Error::NotCocycle);
    }
    Ok(theta_unchecked(sigma, inv))
}

pub fn theta_unchecked(sigma: &Cochain2, inv: &CentralInvolution) -> ZGrading {
    let n = sigma.modulus();
    let degree = (0..inv.group.order())
        .map(|g| {
            let d = (sigma.get(g, inv.u) + n - sigma.get(inv.u, g)) % n;
            debug_assert!(d == 0 || 2 * d == n, "θ takes values in ±1");
            u8::from(d != 0)
        })
        .collect();
    ZGrading { degree }
}

/// (σ♯ω)(g,h) = σ(g,h) + ω(g,h) + (N/2)|g|_σ|h|_ω.
pub fn sharp(sigma: &Cochain2, omega: &Cochain2, inv: &CentralInvolution) -> Result<Cochain2> {
    if sigma.modulus() != omega.modulus() {
        return Err(Error::Invalid("cochains have different coefficient modules".into()));
    }
    require_even(sigma)?;
    if !is_cocycle(&inv.group, sigma) || !is_cocycle(&inv.group, omega) {
        return Err(Error::NotCocycle);
    }
    Ok(sharp_unchecked(sigma, omega, &theta_unchecked(sigma, inv), &theta_unchecked(omega, inv)))
}

pub fn sharp_unchecked(sigma: &Cochain2, omega: &Cochain2, ts: &ZGrading, to: &ZGrading) -> Cochain2 {
    let n = sigma.order();
    let half = sigma.modulus() / 2;
    let mut out = sigma.add(omega);
    for g in 0..n {
        if ts.degree[g] == 1 {
            for h in 0..n {
                if to.degree[h] == 1 {
                    out.set(g, h, out.get(g, h) + half);
                }
            }
        }
    }
    out
}

/// σ′(g,h) = −σ(g,h) + (N/2)|g|_σ|h|_σ, the ♯-inverse.
pub fn sharp_inverse(sigma: &Cochain2, inv: &CentralInvolution) -> Result<Cochain2> {
    let t = theta(sigma, inv)?;
    let half = sigma.modulus() / 2;
    let mut out = sigma.neg();
    for g in 0..sigma.order() {
        for h in 0..sigma.order() {
            if t.degree[g] == 1 && t.degree[h] == 1 {
                out.set(g, h, out.get(g, h) + half);
            }
        }
    }
    Ok(out)
}

/// A finite group given by an enumerated Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedGroup {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    /// Invariant factors, ascending; empty for the trivial group.
    pub invariants: Vec<u64>,
    /// Elements realizing the invariant factors.
    pub basis: Vec<usize>,
    /// "exhaustive" or "sampled".
    pub associativity_check: String,
}

impl EnumeratedGroup {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.table[y][x];
            k += 1;
        }
        k
    }

    pub fn is_cyclic_generated_by(&self, x: usize) -> bool {
        self.element_order(x) == self.order() as u64
    }
}

/// Builds the Cayley table and checks the group axioms and commutativity.
pub fn enumerate_abelian_group(
    labels: Vec<String>,
    identity: usize,
    mul: impl Fn(usize, usize) -> usize,
    seed: u64,
) -> Result<EnumeratedGroup> {
    let n = labels.len();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
    let fail = |what: &str| Err(Error::Invalid(format!("enumerated product is not an abelian group: {what}")));
    for a in 0..n {
        if table[identity][a] != a || table[a][identity] != a {
            return fail("identity");
        }
        if !table[a].contains(&identity) {
            return fail("inverse");
        }
        for b in 0..n {
            if table[a][b] != table[b][a] {
                return fail("commutativity");
            }
        }
    }
    let exhaustive = n <= 256;
    let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
    if exhaustive {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !assoc(a, b, c) {
                        return fail("associativity");
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200_000 {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if !assoc(a, b, c) {
                return fail("associativity");
            }
        }
    }
    let s: AbelianStructure = abelian::from_cayley_table(&table, identity);
    let orders: Vec<u64> = (0..n)
        .map(|x| {
            let mut y = x;
            let mut k = 1;
            while y != identity {
                y = table[y][x];
                k += 1;
            }
            k
        })
        .collect();
    debug_assert_eq!(
        crate::modular::invariant_factors(&abelian::elementary_divisors_by_orders(&orders)),
        s.invariants
    );
    Ok(EnumeratedGroup {
        labels,
        table,
        identity,
        invariants: s.invariants,
        basis: s.basis,
        associativity_check: if exhaustive { "exhaustive" } else { "sampled" }.into(),
    })
}

fn check_enumeration(size: u64, budgets: &Budgets) -> Result<()> {
    if size > budgets.class_enumeration {
        return Err(Error::BudgetExceeded { what: "enumerated classes", needed: size, limit: budgets.class_enumeration });
    }
    Ok(())
}

/// H²♯(G, k·): the classes of H²(G, k·) under the ♯-product.
#[derive(Clone, Debug)]
pub struct H2Sharp {
    pub field: FieldDescriptor,
    pub cohomology: CohomologyGroup,
    pub classes: Vec<CohomologyClass>,
    pub reps: Vec<Cochain2>,
    pub group: EnumeratedGroup,
}

/// Representatives and gradings for every class, with a lookup from class to index.
struct ClassTable {
    classes: Vec<CohomologyClass>,
    reps: Vec<Cochain2>,
    thetas: Vec<ZGrading>,
    index: HashMap<CohomologyClass, usize>,
}

impl ClassTable {
    fn new(h: &CohomologyGroup, inv: &CentralInvolution) -> ClassTable {
        let classes = h.elements();
        let reps: Vec<Cochain2> = classes.iter().map(|c| h.representative(c)).collect();
        let thetas = reps.iter().map(|r| theta_unchecked(r, inv)).collect();
        let index = classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        ClassTable { classes, reps, thetas, index }
    }

    fn sharp_index(&self, h: &CohomologyGroup, i: usize, j: usize) -> usize {
        let prod = sharp_unchecked(&self.reps[i], &self.reps[j], &self.thetas[i], &self.thetas[j]);
        self.index[&h.class_of_cocycle(&prod)]
    }
}

fn class_label(c: &CohomologyClass) -> String {
    format!("{:?}", c.coords)
}

pub fn h2_sharp(g: &FiniteGroup, inv: &CentralInvolution, field: FieldDescriptor, budgets: &Budgets) -> Result<H2Sharp> {
    let h = field.cohomology(g, budgets)?;
    if h.modulus() % 2 != 0 {
        return Err(Error::OddModulus(h.modulus()));
    }
    check_enumeration(h.size(), budgets)?;
    let ct = ClassTable::new(&h, inv);
    let labels = ct.classes.iter().map(class_label).collect();
    let identity = ct.index[&h.zero()];
    let group = enumerate_abelian_group(labels, identity, |a, b| ct.sharp_index(&h, a, b), budgets.seed)?;
    Ok(H2Sharp { field, cohomology: h, classes: ct.classes, reps: ct.reps, group })
}

/// An element (σ̄, χ, square class, parity) of Q(k,G).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QkGElement {
    pub quotient_class: Vec<u64>,
    /// Index into [`QkG::characters`].
    pub chi: usize,
    pub square_class: u8,
    pub parity: u8,
}

#[derive(Clone, Debug)]
pub struct QkG {
    pub field: FieldDescriptor,
    pub quotient: QuotientData,
    pub cohomology: CohomologyGroup,
    pub characters: Vec<GroupCharacter>,
    pub elements: Vec<QkGElement>,
    pub group: EnumeratedGroup,
}

/// c_{χ,χ′}(a,b) = (N/2)χ(a)χ′(b) on G/U.
fn character_cocycle(q: &FiniteGroup, modulus: u64, chi: &GroupCharacter, chi2: &GroupCharacter) -> Cochain2 {
    let half = modulus / 2;
    Cochain2::from_fn(q, modulus, |a, b| (half * chi.values[a] * chi2.values[b]) as i64).expect("normalized")
}

/// Q(k,G) with (σ,χ,t,e)(ω,χ′,s,f) = (σ+ω+c_{χ,χ′}, χ+χ′, s+t+ef, e+f).
pub fn q_group(g: &FiniteGroup, inv: &CentralInvolution, field: FieldDescriptor, budgets: &Budgets) -> Result<QkG> {
    if !g.same_as(&inv.group) {
        return Err(Error::Invalid("involution belongs to another group".into()));
    }
    if splitting_character(inv)?.is_none() {
        return Err(Error::NotSplit);
    }
    let quotient = quotient_by_central_involution(inv)?;
    let qg = quotient.quotient.clone();
    let h = field.cohomology(&qg, budgets)?;
    let characters = abelianization(&qg).characters_to_z2();
    let sq = field.square_class_order();
    let size = h.size() * characters.len() as u64 * sq as u64 * 2;
    check_enumeration(size, budgets)?;
    let classes = h.elements();
    let class_index: HashMap<CohomologyClass, usize> = classes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let nchi = characters.len();
    // class of c_{χ,χ′} for every pair
    let c_class: Vec<Vec<CohomologyClass>> = characters
        .iter()
        .map(|a| {
            characters
                .iter()
                .map(|b| {
                    if h.modulus() % 2 == 0 {
                        h.class_of_cocycle(&character_cocycle(&qg, h.modulus(), a, b))
                    } else {
                        h.zero()
                    }
                })
                .collect()
        })
        .collect();
    let chi_index = |v: &[u64]| characters.iter().position(|c| c.values == v).expect("closed under sums");
    let mut elements = Vec::new();
    for c in &classes {
        for chi in 0..nchi {
            for t in 0..sq {
                for e in 0..2u8 {
                    elements.push(QkGElement { quotient_class: c.coords.clone(), chi, square_class: t, parity: e });
                }
            }
        }
    }
    let elem_index: HashMap<QkGElement, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mul = |a: usize, b: usize| {
        let (x, y) = (&elements[a], &elements[b]);
        let cx = &classes[class_index[&CohomologyClass { coords: x.quotient_class.clone() }]];
        let cy = CohomologyClass { coords: y.quotient_class.clone() };
        let cls = h.add(&h.add(cx, &cy), &c_class[x.chi][y.chi]);
        let chi = chi_index(&characters[x.chi].add(&characters[y.chi]).values);
        let t = (x.square_class + y.square_class + x.parity * y.parity) % sq;
        let e = (x.parity + y.parity) % 2;
        elem_index[&QkGElement { quotient_class: cls.coords, chi, square_class: t, parity: e }]
    };
    let labels = elements
        .iter()
        .map(|e| format!("({:?},chi{},{},{})", e.quotient_class, e.chi, if e.square_class == 1 { "-" } else { "+" }, e.parity))
        .collect();
    let identity = elem_index[&QkGElement { quotient_class: h.zero().coords, chi: 0, square_class: 0, parity: 0 }];
    let group = enumerate_abelian_group(labels, identity, mul, budgets.seed)?;
    Ok(QkG { field, quotient, cohomology: h, characters, elements, group })
}

/// [b][A^σ][C(1)]^a: Brauer part, class in H²(G, k·) and parity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BMElement {
    pub brauer: u8,
    pub class: Vec<u64>,
    /// Square class of σ(u,u) for the stored representative.
    pub square_class: u8,
    pub parity: u8,
}

#[derive(Clone, Debug)]
pub struct BmGroup {
    pub field: FieldDescriptor,
    pub split: bool,
    pub cohomology: CohomologyGroup,
    pub splitting_character: Option<GroupCharacter>,
    pub elements: Vec<BMElement>,
    pub group: EnumeratedGroup,
    /// Br(k) is central; the quotient is H²♯(G,k·) (non-split) or Q-type with parity (split).
    pub extension: String,
}

impl BmGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub fn bm_group(g: &FiniteGroup, inv: &CentralInvolution, field: FieldDescriptor, budgets: &Budgets) -> Result<BmGroup> {
    if !g.same_as(&inv.group) {
        return Err(Error::Invalid("involution belongs to another group".into()));
    }
    let h = field.cohomology(g, budgets)?;
    if h.modulus() % 2 != 0 {
        return Err(Error::OddModulus(h.modulus()));
    }
    let chi = splitting_character(inv)?;
    let split = chi.is_some();
    let br = field.brauer_order();
    let size = br as u64 * h.size() * if split { 2 } else { 1 };
    check_enumeration(size, budgets)?;
    let ct = ClassTable::new(&h, inv);
    let n = h.modulus();
    let u = inv.u;
    let sq_of = |i: usize| field.square_class(ct.reps[i].get(u, u), n);
    // σ_C(g,h) = (N/2)χ(g)χ(h): the class of [C(1)][C(1)], equal to −1 at (u,u)
    let c_index = chi.as_ref().map(|c| {
        let sc = Cochain2::from_fn(g, n, |a, b| ((n / 2) * c.values[a] * c.values[b]) as i64).expect("normalized");
        ct.index[&h.class_of_cocycle(&sc)]
    });
    let mut elements = Vec::new();
    for b in 0..br {
        for (i, c) in ct.classes.iter().enumerate() {
            for a in 0..if split { 2u8 } else { 1 } {
                elements.push(BMElement { brauer: b, class: c.coords.clone(), square_class: sq_of(i), parity: a });
            }
        }
    }
    let elem_index: HashMap<(u8, usize, u8), usize> = elements
        .iter()
        .enumerate()
        .map(|(k, e)| ((e.brauer, ct.index[&CohomologyClass { coords: e.class.clone() }], e.parity), k))
        .collect();
    let mul = |x: usize, y: usize| {
        let (ex, ey) = (&elements[x], &elements[y]);
        let (i, j) = (ct.index[&CohomologyClass { coords: ex.class.clone() }], ct.index[&CohomologyClass { coords: ey.class.clone() }]);
        let mut b = (ex.brauer + ey.brauer + quaternion_symbol(sq_of(i), sq_of(j), field)) % br;
        let mut k = ct.sharp_index(&h, i, j);
        if ex.parity == 1 && ey.parity == 1 {
            let c = c_index.expect("parity only when split");
            b = (b + quaternion_symbol(sq_of(k), sq_of(c), field)) % br;
            k = ct.sharp_index(&h, k, c);
        }
        elem_index[&(b, k, ex.parity ^ ey.parity)]
    };
    let labels = elements
        .iter()
        .map(|e| format!("[{}]{:?}C^{}", if e.brauer == 1 { "H" } else { "1" }, e.class, e.parity))
        .collect();
    let identity = elem_index[&(0, ct.index[&h.zero()], 0)];
    let group = enumerate_abelian_group(labels, identity, mul, budgets.seed)?;
    let extension = if split {
        "1 -> Br(k) -> BM -> Q(k,G) -> 1".to_string()
    } else {
        "1 -> Br(k) -> BM -> H2sharp(G,k) -> 1".to_string()
    };
    Ok(BmGroup { field, split, cohomology: h, splitting_character: chi, elements, group, extension })
}

/// k_σ[G]: basis f_g with f_g f_h = ζ^{σ(g,h)} f_{gh}.
#[derive(Clone, Debug)]
pub struct TwistedGroupAlgebra {
    pub group: FiniteGroup,
    pub sigma: Cochain2,
}

impl TwistedGroupAlgebra {
    /// f_g·f_h as (exponent of ζ, gh).
    pub fn product(&self, g: usize, h: usize) -> (u64, usize) {
        (self.sigma.get(g, h), self.group.mul(g, h))
    }

    /// (f_a f_b) f_c = f_a (f_b f_c) for all basis triples.
    pub fn is_associative(&self) -> bool {
        is_cocycle(&self.group, &self.sigma)
    }

    /// χ_h(g) = σ(g,h) − σ(h,g).
    pub fn degree(&self, h: usize) -> Vec<u64> {
        let n = self.sigma.modulus();
        (0..self.group.order()).map(|g| (self.sigma.get(g, h) + n - self.sigma.get(h, g)) % n).collect()
    }

    /// Whether every χ_h is a character of G.
    pub fn degrees_are_characters(&self) -> bool {
        let g = &self.group;
        let n = self.sigma.modulus();
        (0..g.order()).all(|h| {
            let d = self.degree(h);
            (0..g.order()).all(|a| (0..g.order()).all(|b| (d[a] + d[b]) % n == d[g.mul(a, b)]))
        })
    }
}

pub fn twisted_group_algebra(g: &FiniteGroup, sigma: &Cochain2, _field: FieldDescriptor) -> Result<TwistedGroupAlgebra> {
    if !is_cocycle(g, sigma) {
        return Err(Error::NotCocycle);
    }
    Ok(TwistedGroupAlgebra { group: g.clone(), sigma: sigma.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda(g: &FiniteGroup, n: u64) -> Cochain2 {
        // elements of ℤ2×ℤ2: index = t + 2s for x^t y^s
        Cochain2::from_fn(g, n, |a, b| ((n / 2) * (a % 2) as u64 * (b / 2) as u64) as i64).unwrap()
    }

    #[test]
    fn lambda_grading() {
        let g = FiniteGroup::abelian_product(&[2, 2]);
        let inv = CentralInvolution::new(&g, 1).unwrap();
        let t = theta(&lambda(&g, 2), &inv).unwrap();
        assert_eq!(t.degree, vec![0, 0, 1, 1]);
    }

    #[test]
    fn real_bw_is_z8() {
        let b = Budgets::default();
        let g = FiniteGroup::cyclic(2);
        let inv = CentralInvolution::new(&g, 1).unwrap();
        let bm = bm_group(&g, &inv, FieldDescriptor::REAL, &b).unwrap();
        assert_eq!(bm.group.invariants, vec![8]);
        let c1 = bm.elements.iter().position(|e| e.parity == 1 && e.brauer == 0 && e.class.iter().all(|&c| c == 0)).unwrap();
        assert!(bm.group.is_cyclic_generated_by(c1));
    }
}
