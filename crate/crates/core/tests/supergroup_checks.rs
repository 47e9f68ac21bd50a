//! Hopf structure, R-matrices and lazy cocycles on k[G] ⋉ ΛV.

mod common;

use brauer_core::forms::{invariant_symmetric_forms, Representation};
use brauer_core::group::{close_matrices, CentralInvolution, FiniteGroup};
use brauer_core::rational::{q, qfrac, QMatrix, Q};
use brauer_core::sharp::FieldDescriptor;
use brauer_core::supergroup::*;
use brauer_core::weyl::{group_datum, RootSystemType, WeylOptions};
use brauer_core::{Budgets, Error};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn b() -> Budgets {
    Budgets::default()
}

fn t(s: &str) -> RootSystemType {
    s.parse().unwrap()
}

fn weyl_algebra(s: &str) -> SupergroupAlgebra {
    let d = group_datum(t(s), &b(), &WeylOptions::default()).unwrap();
    build_supergroup(&d.group, &d.inv, &d.rep).unwrap()
}

fn vec1(a: usize) -> HVec {
    let mut v = HVec::new();
    v.insert(a, Q::one());
    v
}

/// A random symmetric matrix with entries p/q, |p| ≤ 4, 1 ≤ q ≤ 3.
fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = qfrac(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            m.set(i, j, x.clone());
            m.set(j, i, x);
        }
    }
    m
}

/// W(B2) on ℝ² in the orthonormal basis, where Σ = I is invariant.
fn b2_orthonormal() -> (FiniteGroup, CentralInvolution, Representation) {
    let swap = QMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
    let flip = QMatrix::from_i64(&[vec![1, 0], vec![0, -1]]);
    let (g, mats) = close_matrices(&[swap, flip], 100).unwrap();
    assert_eq!(g.order(), 8);
    let u = (0..8).find(|&x| mats[x] == QMatrix::identity(2).neg()).unwrap();
    let inv = CentralInvolution::new(&g, u).unwrap();
    let rep = Representation::from_elements(&g, mats).unwrap();
    (g, inv, rep)
}

#[test]
fn hopf_axioms_small_algebras() {
    let mut algebras: Vec<(String, SupergroupAlgebra)> = (1..=4).map(|n| (format!("E({n})"), e_n(n))).collect();
    for s in ["A1", "A2", "B2", "G2"] {
        algebras.push((format!("H({s})"), weyl_algebra(s)));
    }
    let (g, inv, rep) = b2_orthonormal();
    algebras.push(("H(B2) orthonormal".into(), build_supergroup(&g, &inv, &rep).unwrap()));
    for (name, h) in &algebras {
        assert!(h.dim() <= 64, "{name}");
        let r = h.verify_hopf(&b());
        assert!(r.passed, "{name}: {:?}", r.counterexample);
        assert_eq!(r.mode, "exhaustive", "{name}");
        let r = h.verify_triangular(&r_matrix_u(h), &b());
        assert!(r.passed, "{name} R_u: {:?}", r.counterexample);
    }
}

#[test]
fn sweedler_and_dimensions() {
    let h = e_n(1);
    assert_eq!(h.dim(), 4);
    assert_eq!(weyl_algebra("A1").dim(), 4);
    assert_eq!(weyl_algebra("B2").dim(), 32);
    assert_eq!(weyl_algebra("G2").dim(), 48);
}

#[test]
fn e_n_relations_under_the_isomorphism() {
    for n in 1..=4 {
        let h = e_n(n);
        let c = vec1(h.u());
        let one = vec1(h.one());
        let x: Vec<HVec> = (0..n).map(|i| h.mul(&c, &vec1(h.v(i)))).collect();
        assert_eq!(h.mul(&c, &c), one);
        for i in 0..n {
            let anti = |a: &HVec, b: &HVec| {
                let mut s = h.mul(a, b);
                for (k, v) in h.mul(b, a) {
                    *s.entry(k).or_insert_with(Q::zero) += v;
                }
                s.retain(|_, v| !v.is_zero());
                s
            };
            assert!(anti(&c, &x[i]).is_empty(), "c x_i + x_i c = 0");
            for j in 0..n {
                assert!(anti(&x[i], &x[j]).is_empty(), "x_i x_j + x_j x_i = 0");
            }
            // Δ(x_i) = 1⊗x_i + x_i⊗c
            let mut expect = HTensor::default();
            for (&k, v) in &x[i] {
                expect.add_term(h.one(), k, v.clone());
                expect.add_term(k, h.u(), v.clone());
            }
            assert!(h.coproduct_of(&x[i]).sub(&expect).is_zero(), "Δ(x_{i})");
            // S(c) = c, S(x_i) = c x_i
            assert_eq!(h.antipode_of(&c), c);
            assert_eq!(h.antipode_of(&x[i]), h.mul(&c, &x[i]));
            // v_i v_j = −v_j v_i in the exterior part
            for j in 0..n {
                let (vi, vj) = (vec1(h.v(i)), vec1(h.v(j)));
                let mut s = h.mul(&vi, &vj);
                for (k, v) in h.mul(&vj, &vi) {
                    *s.entry(k).or_insert_with(Q::zero) += v;
                }
                s.retain(|_, v| !v.is_zero());
                assert!(s.is_empty());
            }
        }
    }
}

#[test]
fn r_a_family_is_triangular() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa11ce);
    for n in 1..=3 {
        let h = e_n(n);
        let zero = r_matrix_ra(&h, &QMatrix::zeros(n, n)).unwrap();
        assert_eq!(zero, r_matrix_u(&h), "A = 0 gives R_u");
        let id = r_matrix_ra(&h, &QMatrix::identity(n)).unwrap();
        assert!(h.verify_triangular(&id, &b()).passed);
        for k in 0..20 {
            let a = random_symmetric(&mut rng, n);
            let r = r_matrix_ra(&h, &a).unwrap();
            let rep = h.verify_triangular(&r, &b());
            assert!(rep.passed, "n={n} sample {k}: {:?}", rep.counterexample);
            assert_eq!(rep.mode, "exhaustive");
        }
    }
    let mut bad = QMatrix::zeros(2, 2);
    bad.set(0, 1, q(1));
    assert_eq!(r_matrix_ra(&e_n(2), &bad), Err(Error::NotSymmetric));
}

/// Terms of a 1×1 R_A built by hand from the P = F = {1} summand with sign pattern (s₁, s₂, s₃, s₄).
fn rank_one_r(h: &SupergroupAlgebra, a: &Q, signs: [i64; 4]) -> HTensor {
    let mut r = r_matrix_u(h);
    let half = a * qfrac(1, 2);
    let (v, uv) = (h.v(0), h.index(h.involution().u, 1));
    for ((x, y), s) in [(v, v), (uv, v), (v, uv), (uv, uv)].into_iter().zip(signs) {
        r.add_term(x, y, &half * q(s));
    }
    r
}

#[test]
fn r_a_rank_one_expansion() {
    let h = e_n(1);
    let a = q(3);
    let am = QMatrix::from_rows(vec![vec![a.clone()]]).unwrap();
    // R_u + (a/2)(v⊗v + uv⊗v − v⊗uv + uv⊗uv)
    let expanded = rank_one_r(&h, &a, [1, 1, -1, 1]);
    assert!(r_matrix_ra(&h, &am).unwrap().sub(&expanded).is_zero());
    assert!(h.verify_triangular(&expanded, &b()).passed);
    // the sign pattern v⊗uv, −uv⊗uv is not even quasitriangular
    let other = rank_one_r(&h, &a, [1, 1, 1, -1]);
    assert!(!h.verify_quasitriangular(&other, &b()).passed);
}

#[test]
fn r_a_printed_last_term_is_not_an_r_matrix() {
    // read literally, the last two summands cancel and only v_P⊗v_F + uv_P⊗v_F remain
    let h = e_n(2);
    let a = QMatrix::identity(2);
    let corrected = r_matrix_ra(&h, &a).unwrap();
    let mut literal = HTensor::default();
    for (&(x, y), c) in &corrected.terms {
        if h.split(y).0 == h.group().identity() {
            literal.add_term(x, y, c.clone());
        }
    }
    assert!(!h.verify_quasitriangular(&literal, &b()).passed);
}

#[test]
fn trivial_r_is_not_quasitriangular_on_e1() {
    let h = e_n(1);
    let mut r = HTensor::default();
    r.add_term(h.one(), h.one(), Q::one());
    let rep = h.verify_quasitriangular(&r, &b());
    assert!(!rep.passed);
}

#[test]
fn omega_sigma_exhaustive() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e6a);
    for n in 1..=3 {
        let h = e_n(n);
        let unit = HCochain2::counit(&h).unwrap();
        assert_eq!(omega_sigma(&h, &QMatrix::zeros(n, n)).unwrap(), unit);
        for _ in 0..8 {
            let s = random_symmetric(&mut rng, n);
            let w = omega_sigma(&h, &s).unwrap();
            assert!(w.is_normalized(&h));
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(w.get(h.v(i), h.v(j)), s.get(i, j));
                }
            }
            for a in 0..h.dim() {
                for c in 0..h.dim() {
                    let (pa, pc) = (h.split(a).1.count_ones(), h.split(c).1.count_ones());
                    if pa != pc {
                        assert!(w.get(a, c).is_zero());
                    }
                }
            }
            for rep in [is_left_cocycle(&h, &w, &b()).unwrap(), is_right_cocycle(&h, &w, &b()).unwrap(), is_lazy(&h, &w, &b()).unwrap()] {
                assert!(rep.passed, "n={n} {}: {:?}", rep.check, rep.counterexample);
                assert_eq!(rep.mode, "exhaustive");
            }
            assert!(is_convolution_invertible(&h, &w, &b()).unwrap());
            // λ on E(n) is ω_Σ
            assert_eq!(lambda_cocycle(&h, &s).unwrap(), w);
        }
    }
}

#[test]
fn perturbed_omega_fails() {
    let h = e_n(2);
    let s = QMatrix::from_i64(&[vec![1, 2], vec![2, -1]]);
    let mut w = omega_sigma(&h, &s).unwrap();
    let (p, qq) = (h.v(0), h.v(1));
    let old = w.get(p, qq).clone();
    w.set(p, qq, old + q(1));
    assert!(!is_left_cocycle(&h, &w, &b()).unwrap().passed);
}

#[test]
fn counit_cochain_is_everything() {
    let h = e_n(2);
    let e = HCochain2::counit(&h).unwrap();
    assert!(is_left_cocycle(&h, &e, &b()).unwrap().passed);
    assert!(is_lazy(&h, &e, &b()).unwrap().passed);
    assert!(is_convolution_invertible(&h, &e, &b()).unwrap());
}

#[test]
fn lambda_on_b2_with_identity_form() {
    let (g, inv, rep) = b2_orthonormal();
    let h = build_supergroup(&g, &inv, &rep).unwrap();
    assert_eq!(h.dim(), 32);
    let sigma = QMatrix::identity(2);
    let lam = lambda_cocycle(&h, &sigma).unwrap();
    for x in 0..g.order() {
        for y in 0..g.order() {
            assert_eq!(*lam.get(h.index(x, 0), h.index(y, 0)), Q::one());
        }
    }
    for rep in [is_left_cocycle(&h, &lam, &b()).unwrap(), is_right_cocycle(&h, &lam, &b()).unwrap(), is_lazy(&h, &lam, &b()).unwrap()] {
        assert!(rep.passed, "{}: {:?}", rep.check, rep.counterexample);
        assert_eq!(rep.mode, "exhaustive");
        assert!(rep.checked >= 32 * 32);
    }
    assert!(is_convolution_invertible(&h, &lam, &b()).unwrap());

    // off the invariant line: rejected up front, and the unchecked cochain fails
    let off = QMatrix::from_i64(&[vec![1, 1], vec![1, 2]]);
    assert!(matches!(lambda_cocycle(&h, &off), Err(Error::NotInvariant { .. })));
    let bad = lambda_cocycle_unchecked(&h, &off).unwrap();
    let left = is_left_cocycle(&h, &bad, &b()).unwrap();
    assert!(!left.passed);
    assert!(left.counterexample.is_some());
}

#[test]
fn lambda_on_b2_root_basis() {
    let d = group_datum(t("B2"), &b(), &WeylOptions::default()).unwrap();
    let h = build_supergroup(&d.group, &d.inv, &d.rep).unwrap();
    // I is not invariant in the simple-root basis
    assert!(matches!(lambda_cocycle(&h, &QMatrix::identity(2)), Err(Error::NotInvariant { .. })));
    let forms = invariant_symmetric_forms(&d.rep);
    assert_eq!(forms.dim(), 1);
    let lam = lambda_cocycle(&h, &forms.basis[0]).unwrap();
    assert!(is_left_cocycle(&h, &lam, &b()).unwrap().passed);
    assert!(is_lazy(&h, &lam, &b()).unwrap().passed);
}

#[test]
fn lazy_cohomology_examples() {
    let h4 = lazy_cohomology(&e_n(1), &b()).unwrap();
    assert_eq!(h4.linear_dim, 1);
    assert!(h4.group_part.invariants().is_empty());
    // u is not a commutator in ℤ2
    assert!(h4.k_trivial);
    let b2 = lazy_cohomology(&weyl_algebra("B2"), &b()).unwrap();
    assert!(!b2.k_trivial, "u = r² is a commutator in D4");
}

#[test]
fn lazy_cohomology_weyl_examples() {
    let a3 = group_datum(t("A3"), &b(), &WeylOptions::default()).unwrap();
    let l = lazy_cohomology_parts(&a3.inv, &a3.rep, &b()).unwrap();
    assert_eq!(l.linear_dim, 1);
    assert_eq!(l.group_part.invariants(), vec![2]);
    assert_eq!(l.group_part_of, "G/U");
    // V = 0 gives H²(G)
    let v0 = lazy_cohomology_parts(&a3.inv, &Representation::trivial(&a3.group, 0), &b()).unwrap();
    assert_eq!(v0.group_part_of, "G");
    // H²(S4 × ℤ2) = M(S4) × (S4^ab ⊗ ℤ2)
    assert_eq!(v0.group_part.invariants(), vec![2, 2]);
}

#[test]
fn bm_supergroup_examples() {
    let z2 = FiniteGroup::cyclic(2);
    let inv = CentralInvolution::new(&z2, 1).unwrap();
    let sign = Representation::new(&z2, vec![QMatrix::identity(1).neg()]).unwrap();
    assert_eq!(bm_supergroup(&inv, &sign, FieldDescriptor::CLOSED, &b()).unwrap().describe(), "Z2 x C");
    for (s, expect) in [("B3", "Z2^3 x C"), ("G2", "Z2^2 x C")] {
        let d = group_datum(t(s), &b(), &WeylOptions::default()).unwrap();
        assert_eq!(bm_supergroup(&d.inv, &d.rep, FieldDescriptor::CLOSED, &b()).unwrap().describe(), expect, "{s}");
    }
    // the finite part does not depend on V
    let d = group_datum(t("B2"), &b(), &WeylOptions::default()).unwrap();
    let with_v = bm_supergroup(&d.inv, &d.rep, FieldDescriptor::CLOSED, &b()).unwrap();
    let without = bm_supergroup(&d.inv, &Representation::trivial(&d.group, 0), FieldDescriptor::CLOSED, &b()).unwrap();
    assert_eq!(with_v.finite.group.invariants, without.finite.group.invariants);
    assert_eq!(with_v.finite.group.invariants, vec![2]);
}

#[test]
fn build_rejects_bad_data() {
    let z2 = FiniteGroup::cyclic(2);
    let inv = CentralInvolution::new(&z2, 1).unwrap();
    let triv = Representation::new(&z2, vec![QMatrix::identity(1)]).unwrap();
    assert!(matches!(build_supergroup(&z2, &inv, &triv), Err(Error::NotMinusOne)));
}
