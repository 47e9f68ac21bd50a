//! Weyl group data against root counts, centers and the classical tables.

use std::collections::{BTreeSet, HashSet};

use brauer_core::weyl::{
    build_weyl, derived_bm_rank, group_datum, invariant_form_is_gram, published_bm_rank, table_row, GroupShape,
    RootSystemType, RowMode, WeylOptions,
};
use brauer_core::sharp::FieldDescriptor;
use brauer_core::Budgets;

const ENUMERATED: [&str; 11] = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "D5", "G2", "F4"];

fn t(s: &str) -> RootSystemType {
    s.parse().unwrap()
}

fn apply(m: &[i8], v: &[i64]) -> Vec<i64> {
    let n = v.len();
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] as i64 * v[j]).sum()).collect()
}

/// Φ as the orbit of the simple roots.
fn roots(gens: &[Vec<i8>], n: usize) -> HashSet<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut stack: Vec<_> = seen.iter().cloned().collect();
    while let Some(v) = stack.pop() {
        for g in gens {
            let w = apply(g, &v);
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    seen
}

fn coxeter_number(s: &str) -> u64 {
    let ty = t(s);
    let n = ty.rank as u64;
    match s.as_bytes()[0] {
        b'A' => n + 1,
        b'B' => 2 * n,
        b'D' => 2 * n - 2,
        b'E' => [12, 18, 30][ty.rank - 6],
        b'F' => 12,
        _ => 6,
    }
}

#[test]
fn orders_roots_and_coxeter_numbers() {
    let b = Budgets::default();
    for s in ENUMERATED.iter().copied().chain(["E6"]) {
        let ty = t(s);
        let n = ty.rank;
        let w = build_weyl(ty, &b, &WeylOptions::default()).unwrap();
        assert_eq!(w.group.order() as u128, ty.weyl_order(), "{s}");
        assert_eq!(w.coxeter_number, coxeter_number(s), "{s}");
        let phi = roots(&ty.simple_reflections(), n);
        // |Φ| = n·h, and every root is positive or negative in the simple basis
        assert_eq!(phi.len() as u64, n as u64 * w.coxeter_number, "{s}");
        assert!(phi.iter().all(|r| r.iter().all(|&c| c >= 0) || r.iter().all(|&c| c <= 0)), "{s}");
        // reflections are the conjugates of the simple ones, one per positive root
        let reflections: BTreeSet<usize> = w
            .simple_reflections
            .iter()
            .flat_map(|&r| (0..w.group.order()).map(move |x| (x, r)))
            .map(|(x, r)| w.group.mul(w.group.mul(x, r), w.group.inv(x)))
            .collect();
        assert_eq!(reflections.len(), phi.len() / 2, "{s}");
    }
}

#[test]
fn longest_element_and_center() {
    let b = Budgets::default();
    for s in ENUMERATED.iter().copied().chain(["E6"]) {
        let ty = t(s);
        let n = ty.rank;
        let w = build_weyl(ty, &b, &WeylOptions::default()).unwrap();
        let g = &w.group;
        assert_eq!(g.mul(w.w0, w.w0), g.identity(), "{s}");
        // −w₀ permutes the simple roots
        let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let images: BTreeSet<Vec<i64>> = simple.iter().map(|v| apply(&w.matrices[w.w0], v).iter().map(|c| -c).collect()).collect();
        assert_eq!(images, simple.iter().cloned().collect(), "{s}");
        let center = (0..g.order()).filter(|&x| g.is_central(x)).count();
        assert_eq!(center, if ty.w0_is_minus_one() { 2 } else { 1 }, "{s}");
        assert_eq!(w.w0_is_minus_one, ty.w0_is_minus_one(), "{s}");
    }
}

#[test]
fn group_data_and_invariant_forms() {
    let b = Budgets::default();
    for s in ENUMERATED {
        let ty = t(s);
        let d = group_datum(ty, &b, &WeylOptions::default()).unwrap();
        let factor = if ty.w0_is_minus_one() { 1 } else { 2 };
        assert_eq!(d.group.order(), factor * d.weyl.group.order(), "{s}");
        assert_eq!(d.theta.is_some(), !ty.w0_is_minus_one(), "{s}");
        assert!(d.group.is_central(d.inv.u), "{s}");
        assert!(invariant_form_is_gram(&d), "{s}: the invariant form is not the Gram matrix");
    }
}

#[test]
fn opt_ins_and_refusals() {
    let b = Budgets::default();
    let o = WeylOptions::default();
    assert_eq!(build_weyl(t("E8"), &b, &o).unwrap_err(), brauer_core::Error::E8Refused);
    assert!(matches!(build_weyl(t("E7"), &b, &o), Err(brauer_core::Error::OptInRequired(_))));
    let small = Budgets { enumeration_cap: 40, ..Budgets::default() };
    assert!(matches!(build_weyl(t("B3"), &small, &o), Err(brauer_core::Error::CapExceeded { .. })));
    for bad in ["D3", "B1", "E9", "F3", "G3", "A0", "X2"] {
        assert!(bad.parse::<RootSystemType>().is_err(), "{bad}");
    }
}

#[test]
fn computed_b4_matches_the_printed_row() {
    let o = WeylOptions { compute_b4: true, ..WeylOptions::default() };
    let row = table_row(t("B4"), FieldDescriptor::CLOSED, &Budgets::default(), &o).unwrap();
    assert_eq!(row.mode, RowMode::Computed);
    assert_eq!(row.h2l, GroupShape::z2_power(3, 1));
    assert_eq!(row.bm, row.published_bm);
    assert!(!row.split);
}

#[test]
fn literature_rows_carry_notes_where_counts_disagree() {
    let b = Budgets::default();
    let o = WeylOptions::default();
    for s in ["B4", "D5", "F4", "E6", "E7", "E8"] {
        let ty = t(s);
        let row = table_row(ty, FieldDescriptor::CLOSED, &b, &o).unwrap();
        assert_eq!(row.mode, RowMode::Literature, "{s}");
        assert_eq!(row.notes.is_empty(), derived_bm_rank(ty) == published_bm_rank(ty), "{s}");
    }
    assert_eq!(derived_bm_rank(t("D5")), 4);
    assert_eq!(derived_bm_rank(t("E6")), 3);
}
