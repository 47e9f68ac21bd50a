//! Root systems, Weyl groups in the simple-root basis, and the group data G(Φ).

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::forms::{acts_as_minus_one, invariant_symmetric_forms, Representation};
use crate::group::{close_int_matrices, int_mat_mul, splitting_character, CentralInvolution, FiniteGroup};
use crate::rational::{q, qfrac, QMatrix, Q};
use crate::sharp::FieldDescriptor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::Invalid(format!("no root system of type {family:?}{rank}")));
        }
        Ok(RootSystemType { family, rank })
    }

    /// |W(Φ)| from the classical formulas.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Types whose longest element is −1.
    pub fn w0_is_minus_one(&self) -> bool {
        match self.family {
            Family::A => self.rank == 1,
            Family::D => self.rank.is_multiple_of(2),
            Family::E => self.rank != 6,
            _ => true,
        }
    }

    /// Gram matrix of the simple roots (Bourbaki numbering).
    pub fn gram_matrix(&self) -> QMatrix {
        let n = self.rank;
        let mut b = QMatrix::zeros(n, n);
        let mut edge = |i: usize, j: usize, v: Q| {
            b.set(i - 1, j - 1, v.clone());
            b.set(j - 1, i - 1, v);
        };
        match self.family {
            Family::A | Family::B => {
                for i in 1..n {
                    edge(i, i + 1, q(-1));
                }
            }
            Family::D => {
                for i in 1..n - 1 {
                    edge(i, i + 1, q(-1));
                }
                edge(n - 2, n, q(-1));
            }
            Family::E => {
                edge(1, 3, q(-1));
                edge(2, 4, q(-1));
                for i in 3..n {
                    edge(i, i + 1, q(-1));
                }
            }
            Family::F => {
                edge(1, 2, q(-1));
                edge(2, 3, q(-1));
                edge(3, 4, qfrac(-1, 2));
            }
            Family::G => edge(1, 2, q(-3)),
        }
        for i in 0..n {
            let len = match (self.family, i) {
                (Family::B, i) if i == n - 1 => q(1),
                (Family::F, 2) | (Family::F, 3) => q(1),
                (Family::G, 1) => q(6),
                _ => q(2),
            };
            b.set(i, i, len);
        }
        b
    }

    /// C[i][j] = 2(αᵢ,αⱼ)/(αᵢ,αᵢ).
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let b = self.gram_matrix();
        let n = self.rank;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = q(2) * b.get(i, j) / b.get(i, i);
                        assert!(c.is_integer());
                        c.to_integer().try_into().unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    /// Simple reflections sᵢ(αⱼ) = αⱼ − C[i][j]αᵢ as row-major integer matrices
    /// acting on coordinates in the simple-root basis.
    pub fn simple_reflections(&self) -> Vec<Vec<i8>> {
        let c = self.cartan_matrix();
        let n = self.rank;
        (0..n)
            .map(|i| {
                let mut m = vec![0i8; n * n];
                for k in 0..n {
                    m[k * n + k] = 1;
                }
                for j in 0..n {
                    m[i * n + j] -= c[i][j] as i8;
                }
                m
            })
            .collect()
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Invalid(format!("unknown root system type {s:?}"));
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let rank = chars.as_str().parse().map_err(|_| bad())?;
        RootSystemType::new(family, rank)
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroupData {
    pub root_type: RootSystemType,
    pub group: FiniteGroup,
    /// Matrix of every element in the simple-root basis.
    pub matrices: Vec<Vec<i8>>,
    pub simple_reflections: Vec<usize>,
    pub w0: usize,
    pub coxeter_number: u64,
    pub w0_is_minus_one: bool,
}

/// Options that unlock expensive constructions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylOptions {
    /// Permit enumerating W(E7) (2 903 040 elements).
    pub allow_e7: bool,
    /// Compute the B4 table row instead of reading it from the literature table.
    pub compute_b4: bool,
}

pub fn build_weyl(t: RootSystemType, budgets: &Budgets, options: &WeylOptions) -> Result<WeylGroupData> {
    if t.family == Family::E && t.rank == 8 {
        return Err(Error::E8Refused);
    }
    let mut cap = budgets.enumeration_cap;
    if t.family == Family::E && t.rank == 7 {
        if !options.allow_e7 {
            return Err(Error::OptInRequired("enumerating W(E7)".into()));
        }
        cap = cap.max(t.weyl_order() as usize);
    }
    if t.weyl_order() > cap as u128 {
        return Err(Error::CapExceeded { cap });
    }
    let n = t.rank;
    let gens = t.simple_reflections();
    let (group, matrices) = close_int_matrices(&gens, n, cap)?;
    debug_assert_eq!(group.order() as u128, t.weyl_order());
    // a root is negative iff all its coordinates are ≤ 0
    let w0 = (0..group.order())
        .find(|&x| matrices[x].iter().all(|&a| a <= 0))
        .expect("longest element exists");
    let coxeter = gens.iter().skip(1).fold(gens[0].clone(), |acc, s| int_mat_mul(&acc, s, n));
    let coxeter_number = int_matrix_order(&coxeter, n);
    let w0_is_minus_one = is_minus_identity(&matrices[w0], n);
    Ok(WeylGroupData {
        root_type: t,
        simple_reflections: group.generators().to_vec(),
        group,
        matrices,
        w0,
        coxeter_number,
        w0_is_minus_one,
    })
}

pub fn int_matrix_order(m: &[i8], n: usize) -> u64 {
    let mut acc = m.to_vec();
    let mut k = 1;
    while !is_identity(&acc, n) {
        acc = int_mat_mul(&acc, m, n);
        k += 1;
    }
    k
}

fn is_identity(m: &[i8], n: usize) -> bool {
    (0..n * n).all(|k| m[k] == (k / n == k % n) as i8)
}

fn is_minus_identity(m: &[i8], n: usize) -> bool {
    (0..n * n).all(|k| m[k] == -((k / n == k % n) as i8))
}

pub fn int_to_q(m: &[i8], n: usize) -> QMatrix {
    QMatrix::from_i64(&(0..n).map(|i| (0..n).map(|j| m[i * n + j] as i64).collect()).collect::<Vec<_>>())
}

/// G(Φ) with u and the reflection representation extended to it.
#[derive(Clone, Debug)]
pub struct GroupDatum {
    pub root_type: RootSystemType,
    pub weyl: WeylGroupData,
    pub group: FiniteGroup,
    pub inv: CentralInvolution,
    pub rep: Representation,
    /// The diagram automorphism ϑ = −w₀ when it had to be adjoined.
    pub theta: Option<usize>,
}

pub fn group_datum(t: RootSystemType, budgets: &Budgets, options: &WeylOptions) -> Result<GroupDatum> {
    let weyl = build_weyl(t, budgets, options)?;
    let n = t.rank;
    let (group, matrices, theta) = if weyl.w0_is_minus_one {
        (weyl.group.clone(), weyl.matrices.clone(), None)
    } else {
        let theta: Vec<i8> = weyl.matrices[weyl.w0].iter().map(|&a| -a).collect();
        let mut gens = t.simple_reflections();
        gens.push(theta.clone());
        let (g, mats) = close_int_matrices(&gens, n, budgets.enumeration_cap.max(2 * weyl.group.order()))?;
        if g.order() != 2 * weyl.group.order() {
            return Err(Error::Invalid("adjoining the diagram automorphism did not double the order".into()));
        }
        let th = *g.generators().last().unwrap();
        (g, mats, Some(th))
    };
    let u = (0..group.order()).find(|&x| is_minus_identity(&matrices[x], n)).expect("−1 lies in G(Φ)");
    let inv = CentralInvolution::new(&group, u)?;
    let rep = Representation::from_elements(&group, matrices.iter().map(|m| int_to_q(m, n)).collect())?;
    if !rep.is_faithful() || !acts_as_minus_one(&rep, &inv) {
        return Err(Error::Invalid("extended representation is not faithful or u ≠ −1".into()));
    }
    Ok(GroupDatum { root_type: t, weyl, group, inv, rep, theta })
}

/// An entry "ℤ₂^k × ℂ^d" style: torsion invariants plus a linear dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupShape {
    pub torsion: Vec<u64>,
    pub linear_dim: usize,
}

impl GroupShape {
    pub fn z2_power(k: usize, linear_dim: usize) -> Self {
        GroupShape { torsion: vec![2; k], linear_dim }
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z{d}")).collect();
        match self.linear_dim {
            0 => {}
            1 => parts.push("C".into()),
            d => parts.push(format!("C^{d}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowMode {
    Computed,
    Literature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub root_type: String,
    pub mode: RowMode,
    pub h2l: GroupShape,
    pub bm: GroupShape,
    /// Whether U is a direct factor of G(Φ).
    pub split: bool,
    /// The published entries for this type.
    pub published_h2l: GroupShape,
    pub published_bm: GroupShape,
    pub notes: Vec<String>,
}

/// U splits off G(Φ) exactly for A1, B_odd, E7, G2, and whenever w₀ ≠ −1.
pub fn published_split(t: RootSystemType) -> bool {
    if !t.w0_is_minus_one() {
        return true;
    }
    match t.family {
        Family::A => true,
        Family::B => t.rank % 2 == 1,
        Family::E => t.rank == 7,
        Family::G => true,
        _ => false,
    }
}

/// Published Schur multipliers H²(W(Φ), ℂ·) as a number of ℤ₂ factors.
pub fn published_schur_rank(t: RootSystemType) -> usize {
    let n = t.rank;
    match t.family {
        Family::A => usize::from(n >= 3),
        Family::B => match n {
            2 => 1,
            3 => 2,
            _ => 3,
        },
        Family::D => {
            if n == 4 {
                3
            } else {
                2
            }
        }
        Family::E | Family::G => 1,
        Family::F => 2,
    }
}

/// Published H²_L(H(Φ)) torsion rank (number of ℤ₂ factors).
pub fn published_h2l_rank(t: RootSystemType) -> usize {
    let n = t.rank;
    match t.family {
        Family::A => usize::from(n >= 3),
        Family::G => 0,
        Family::B => match n {
            2 | 3 => 1,
            _ if n % 2 == 1 => 2,
            _ => 3,
        },
        Family::D => {
            if n == 4 {
                3
            } else {
                2
            }
        }
        Family::E => 1,
        Family::F => 2,
    }
}

/// Published BM(ℂ, H(Φ), R_u) torsion rank.
pub fn published_bm_rank(t: RootSystemType) -> usize {
    let n = t.rank;
    match t.family {
        Family::A => {
            if n <= 2 {
                1
            } else {
                2
            }
        }
        Family::B => match n {
            2 => 1,
            3 => 3,
            _ if n.is_multiple_of(2) => 3,
            _ => 4,
        },
        Family::D => {
            if n == 4 || n % 2 == 1 {
                3
            } else {
                2
            }
        }
        Family::E => {
            if n == 8 {
                1
            } else {
                2
            }
        }
        Family::F | Family::G => 2,
    }
}

/// BM rank obtained from the Schur list and the split criterion:
/// |BM| = 2^split · |H²(G(Φ))| with H²(W × U) ≅ H²(W) × ℤ₂ when w₀ ≠ −1.
pub fn derived_bm_rank(t: RootSystemType) -> usize {
    let h2g = published_schur_rank(t) + usize::from(!t.w0_is_minus_one());
    h2g + usize::from(published_split(t))
}

/// Types computed by default.
pub fn computed_by_default(t: RootSystemType) -> bool {
    matches!(
        (t.family, t.rank),
        (Family::A, 1..=4) | (Family::B, 2) | (Family::B, 3) | (Family::D, 4) | (Family::G, 2)
    )
}

/// One row of the final tables, computed when the type is within budget.
pub fn table_row(t: RootSystemType, field: FieldDescriptor, budgets: &Budgets, options: &WeylOptions) -> Result<TableRow> {
    let published_h2l = GroupShape::z2_power(published_h2l_rank(t), 1);
    let published_bm = GroupShape::z2_power(published_bm_rank(t), 1);
    let compute = computed_by_default(t) || (options.compute_b4 && t.family == Family::B && t.rank == 4);
    let mut notes = Vec::new();
    if !compute {
        let derived = derived_bm_rank(t);
        if derived != published_bm_rank(t) {
            notes.push(format!(
                "published BM has {} factors Z2; the Schur multiplier list with H2(W x U) = H2(W) x Z2 gives {}",
                published_bm_rank(t),
                derived
            ));
        }
        return Ok(TableRow {
            root_type: t.to_string(),
            mode: RowMode::Literature,
            h2l: published_h2l.clone(),
            bm: published_bm.clone(),
            split: published_split(t),
            published_h2l,
            published_bm,
            notes,
        });
    }
    let datum = group_datum(t, budgets, options)?;
    let lazy = crate::supergroup::lazy_cohomology_parts(&datum.inv, &datum.rep, budgets)?;
    let bm = crate::supergroup::bm_supergroup(&datum.inv, &datum.rep, field, budgets)?;
    let split = splitting_character(&datum.inv)?.is_some();
    if split != published_split(t) {
        notes.push("split criterion disagrees with the published list".into());
    }
    let h2l = GroupShape { torsion: lazy.group_part.invariants(), linear_dim: lazy.linear_dim };
    let bm_shape = GroupShape { torsion: bm.finite.group.invariants.clone(), linear_dim: bm.linear_dim };
    if bm_shape != published_bm {
        notes.push(format!("computed BM {bm_shape} differs from the published {published_bm}"));
    }
    if h2l != published_h2l {
        notes.push(format!("computed H2_L {h2l} differs from the published {published_h2l}"));
    }
    Ok(TableRow {
        root_type: t.to_string(),
        mode: RowMode::Computed,
        h2l,
        bm: bm_shape,
        split,
        published_h2l,
        published_bm,
        notes,
    })
}

/// The invariant form spanning S²(V*)^W for the reflection representation:
/// the Gram matrix itself, which must be positive definite.
pub fn invariant_form_is_gram(datum: &GroupDatum) -> bool {
    let space = invariant_symmetric_forms(&datum.rep);
    if space.dim() != 1 {
        return false;
    }
    let gram = datum.root_type.gram_matrix();
    let s = &space.basis[0];
    // gram = c·s for some rational c
    let (i, j) = (0..s.rows())
        .flat_map(|i| (0..s.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !s.get(i, j).is_zero())
        .unwrap();
    let c = gram.get(i, j) / s.get(i, j);
    s.scale(&c) == gram && gram.is_positive_definite()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_weyl_groups() {
        let b = Budgets::default();
        let o = WeylOptions::default();
        for (t, order, h) in [("A1", 2, 2), ("A2", 6, 3), ("B2", 8, 4), ("G2", 12, 6), ("B3", 48, 6), ("D4", 192, 6)] {
            let t: RootSystemType = t.parse().unwrap();
            let w = build_weyl(t, &b, &o).unwrap();
            assert_eq!(w.group.order(), order);
            assert_eq!(w.coxeter_number, h);
            assert_eq!(w.w0_is_minus_one, t.w0_is_minus_one(), "{t}");
        }
        assert_eq!(build_weyl("E8".parse().unwrap(), &b, &o).unwrap_err(), Error::E8Refused);
    }

    #[test]
    fn type_parsing() {
        assert!("D3".parse::<RootSystemType>().is_err());
        assert_eq!("f4".parse::<RootSystemType>().unwrap().to_string(), "F4");
    }
}
