//! Linear representations over ℚ and their invariant symmetric bilinear forms.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{CentralInvolution, FiniteGroup};
use crate::rational::{canonical_basis, nullspace, QMatrix, Q};

/// ρ: G → GL_n(ℚ), given on generators and extended to all elements.
#[derive(Clone, Debug)]
pub struct Representation {
    group: FiniteGroup,
    dim: usize,
    generator_matrices: Vec<QMatrix>,
    elements: Vec<QMatrix>,
}

impl Representation {
    /// Extends generator matrices along words and checks ρ(x·s) = ρ(x)ρ(s) for all
    /// elements x and generators s.
    pub fn new(group: &FiniteGroup, generator_matrices: Vec<QMatrix>) -> Result<Self> {
        if generator_matrices.len() != group.generators().len() {
            return Err(Error::Invalid(format!(
                "{} matrices for {} generators",
                generator_matrices.len(),
                group.generators().len()
            )));
        }
        let dim = generator_matrices.first().map_or(0, QMatrix::rows);
        if generator_matrices.iter().any(|m| !m.is_square() || m.rows() != dim) {
            return Err(Error::Invalid("generator matrices must be square of equal size".into()));
        }
        let elements = (0..group.order())
            .map(|x| {
                group
                    .word(x)
                    .into_iter()
                    .fold(QMatrix::identity(dim), |acc, i| acc.mul(&generator_matrices[i]))
            })
            .collect();
        let rep = Representation { group: group.clone(), dim, generator_matrices, elements };
        if !rep.is_homomorphism() {
            return Err(Error::Invalid("matrices do not define a representation".into()));
        }
        Ok(rep)
    }

    /// Uses precomputed element matrices (for instance from a matrix closure).
    pub fn from_elements(group: &FiniteGroup, elements: Vec<QMatrix>) -> Result<Self> {
        if elements.len() != group.order() {
            return Err(Error::Invalid("one matrix per element required".into()));
        }
        let dim = elements.first().map_or(0, QMatrix::rows);
        let generator_matrices = group.generators().iter().map(|&s| elements[s].clone()).collect();
        let rep = Representation { group: group.clone(), dim, generator_matrices, elements };
        if !rep.is_homomorphism() {
            return Err(Error::Invalid("matrices do not define a representation".into()));
        }
        Ok(rep)
    }

    pub fn trivial(group: &FiniteGroup, dim: usize) -> Self {
        Representation {
            group: group.clone(),
            dim,
            generator_matrices: vec![QMatrix::identity(dim); group.generators().len()],
            elements: vec![QMatrix::identity(dim); group.order()],
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_matrices(&self) -> &[QMatrix] {
        &self.generator_matrices
    }

    pub fn matrix(&self, x: usize) -> &QMatrix {
        &self.elements[x]
    }

    pub fn is_homomorphism(&self) -> bool {
        let g = &self.group;
        self.elements[g.identity()].is_identity()
            && (0..g.order()).all(|x| {
                (0..g.generators().len())
                    .all(|i| self.elements[g.right_gen(x, i)] == self.elements[x].mul(&self.generator_matrices[i]))
            })
    }

    /// Trivial kernel.
    pub fn is_faithful(&self) -> bool {
        let e = self.group.identity();
        (0..self.group.order()).all(|x| x == e || !self.elements[x].is_identity())
    }

    /// Same representation in another basis: P⁻¹ρ(g)P.
    pub fn change_basis(&self, p: &QMatrix) -> Result<Self> {
        let pinv = p.inverse().ok_or(Error::NotInvertible { index: 0 })?;
        let conj = |m: &QMatrix| pinv.mul(m).mul(p);
        Ok(Representation {
            group: self.group.clone(),
            dim: self.dim,
            generator_matrices: self.generator_matrices.iter().map(conj).collect(),
            elements: self.elements.iter().map(conj).collect(),
        })
    }
}

/// ρ(u) = −I exactly.
pub fn acts_as_minus_one(rep: &Representation, inv: &CentralInvolution) -> bool {
    rep.group().same_as(&inv.group) && *rep.matrix(inv.u) == QMatrix::identity(rep.dim()).neg()
}

/// A basis of S²(V*)^G as symmetric matrices, in reduced row-echelon order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFormSpace {
    pub basis: Vec<QMatrix>,
}

impl SymFormSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Σ is invariant when ρ(g)ᵗ Σ ρ(g) = Σ; `None` if it is, else the first failing generator.
pub fn first_non_invariant_generator(rep: &Representation, sigma: &QMatrix) -> Option<usize> {
    rep.generator_matrices().iter().position(|m| m.transpose().mul(sigma).mul(m) != *sigma)
}

pub fn is_invariant_form(rep: &Representation, sigma: &QMatrix) -> bool {
    first_non_invariant_generator(rep, sigma).is_none()
}

fn sym_index(n: usize) -> Vec<(usize, usize)> {
    let mut idx = Vec::new();
    for i in 0..n {
        for j in i..n {
            idx.push((i, j));
        }
    }
    idx
}

/// Nullspace of ρ(g)ᵗΣρ(g) − Σ over the generators, within symmetric matrices.
pub fn invariant_symmetric_forms(rep: &Representation) -> SymFormSpace {
    let n = rep.dim();
    let idx = sym_index(n);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for m in rep.generator_matrices() {
        for &(a, b) in &idx {
            let mut row = vec![Q::zero(); idx.len()];
            for (k, &(i, j)) in idx.iter().enumerate() {
                let mut c = m.get(i, a) * m.get(j, b);
                if i != j {
                    c += m.get(j, a) * m.get(i, b);
                }
                if (i, j) == (a, b) {
                    c -= Q::one();
                }
                row[k] = c;
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let mut vectors = nullspace(&rows, idx.len());
    canonical_basis(&mut vectors, idx.len());
    let basis = vectors
        .into_iter()
        .map(|v| {
            let mut s = QMatrix::zeros(n, n);
            for (k, &(i, j)) in idx.iter().enumerate() {
                s.set(i, j, v[k].clone());
                s.set(j, i, v[k].clone());
            }
            s
        })
        .collect();
    SymFormSpace { basis }
}

/// Checks every basis form against every group element.
pub fn verify_on_all_elements(rep: &Representation, space: &SymFormSpace) -> bool {
    space.basis.iter().all(|s| {
        (0..rep.group().order()).all(|x| {
            let m = rep.matrix(x);
            m.transpose().mul(s).mul(m) == *s
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn trivial_and_sign() {
        let g = FiniteGroup::cyclic(1);
        let rep = Representation::trivial(&g, 3);
        assert_eq!(invariant_symmetric_forms(&rep).dim(), 6);

        let z2 = FiniteGroup::cyclic(2);
        let m = QMatrix::from_i64(&[vec![1, 0], vec![0, -1]]);
        let rep = Representation::new(&z2, vec![m]).unwrap();
        let space = invariant_symmetric_forms(&rep);
        assert_eq!(space.dim(), 2);
        assert!(verify_on_all_elements(&rep, &space));
        assert_eq!(*space.basis[0].get(0, 0), q(1));
    }
}
