//! Small groups with explicit indexing, and brute-force oracles that share no
//! code with the library's elimination.

#![allow(dead_code)]

use brauer_core::group::{close_permutations, CentralInvolution, FiniteGroup};

pub struct Case {
    pub name: String,
    pub group: FiniteGroup,
    pub u: usize,
}

impl Case {
    pub fn inv(&self) -> CentralInvolution {
        CentralInvolution::new(&self.group, self.u).unwrap()
    }
}

fn case(name: &str, group: FiniteGroup, u: usize) -> Case {
    Case { name: name.to_string(), group, u }
}

/// ℤ_a × ℤ_b with (x, y) ↦ x + a·y, the library's mixed-radix convention.
pub fn zz(a: usize, b: usize) -> FiniteGroup {
    FiniteGroup::abelian_product(&[a, b])
}

pub fn zz_index(a: usize, x: usize, y: usize) -> usize {
    x + a * y
}

/// Dihedral group of order 2n: r^k s^e ↦ k + n·e.
pub fn dihedral(n: usize) -> FiniteGroup {
    let table = (0..2 * n)
        .map(|a| {
            (0..2 * n)
                .map(|b| {
                    let (ka, ea) = (a % n, a / n);
                    let (kb, eb) = (b % n, b / n);
                    let k = if ea == 0 { (ka + kb) % n } else { (ka + n - kb) % n };
                    k + n * ((ea + eb) % 2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table, None).unwrap()
}

/// Quaternion group: sign·unit ↦ unit + 4·[sign = −1], units 1, i, j, k.
pub fn quaternion() -> FiniteGroup {
    // unit products as (sign, unit)
    let units = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let table = (0..8)
        .map(|a: usize| {
            (0..8)
                .map(|b: usize| {
                    let (s, w) = units[a % 4][b % 4];
                    w + 4 * ((s + a / 4 + b / 4) % 2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table, None).unwrap()
}

pub fn symmetric(n: usize) -> FiniteGroup {
    let mut t: Vec<usize> = (0..n).collect();
    t.swap(0, 1);
    let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    close_permutations(&[t, c], 1000).unwrap()
}

/// Every (G, u) with |G| ≤ 8 used by the exhaustive suites.
pub fn small_cases() -> Vec<Case> {
    vec![
        case("Z2", FiniteGroup::cyclic(2), 1),
        case("Z4", FiniteGroup::cyclic(4), 2),
        case("Z6", FiniteGroup::cyclic(6), 3),
        case("Z8", FiniteGroup::cyclic(8), 4),
        case("Z2xZ2", zz(2, 2), zz_index(2, 1, 0)),
        case("Z2xZ4 u=(1,0)", zz(2, 4), zz_index(2, 1, 0)),
        case("Z2xZ4 u=(0,2)", zz(2, 4), zz_index(2, 0, 2)),
        case("Z2xZ4 u=(1,2)", zz(2, 4), zz_index(2, 1, 2)),
        case("Z2^3", FiniteGroup::abelian_product(&[2, 2, 2]), 1),
        case("D4", dihedral(4), 2),
        case("Q8", quaternion(), 4),
    ]
}

/// Test groups beyond order 8 for the cheaper suites.
pub fn larger_cases() -> Vec<Case> {
    let s3 = symmetric(3);
    let s3z2 = FiniteGroup::direct_product(&s3, &FiniteGroup::cyclic(2));
    let u = s3.identity() + s3.order();
    vec![
        case("S3xZ2", s3z2, u),
        case("D6", dihedral(6), 3),
        case("Z4xZ4 u=(2,0)", zz(4, 4), zz_index(4, 2, 0)),
        case("D8", dihedral(8), 4),
    ]
}

pub fn all_cases() -> Vec<Case> {
    let mut v = small_cases();
    v.extend(larger_cases());
    v
}

/// Order of the derived subgroup by closing the set of all commutators.
pub fn derived_order(g: &FiniteGroup) -> usize {
    let n = g.order();
    let mut inside = vec![false; n];
    let mut list = vec![g.identity()];
    inside[g.identity()] = true;
    let comms: Vec<usize> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &c in &comms {
            let y = g.mul(x, c);
            if !inside[y] {
                inside[y] = true;
                list.push(y);
            }
        }
        i += 1;
    }
    list.len()
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn inv_mod(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1, mut s0, mut s1) = (a.rem_euclid(m), m, 1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "not a unit");
    s0.rem_euclid(m)
}

fn valuation(x: i64, p: i64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    let mut y = x;
    while y % p == 0 && v < e {
        y /= p;
        v += 1;
    }
    v
}

/// log_p of the number of solutions of A·x ≡ 0 over ℤ/p^e, by naive Smith reduction.
pub fn kernel_log(rows: &[Vec<i64>], ncols: usize, p: u64, e: u32) -> u32 {
    let m = (p as i64).pow(e);
    let pi = p as i64;
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(m)).collect()).collect();
    a.retain(|r| r.iter().any(|&x| x != 0));
    a.sort();
    a.dedup();
    let nrows = a.len();
    let mut logs = 0u32;
    let mut rank = 0usize;
    let mut done_rows = vec![false; nrows];
    let mut done_cols = vec![false; ncols];
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate() {
            if done_rows[i] {
                continue;
            }
            for (j, &x) in row.iter().enumerate() {
                if !done_cols[j] && x != 0 {
                    let v = valuation(x, pi, e);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pr, pc)) = best else { break };
        let pv = pi.pow(v);
        let w = inv_mod(a[pr][pc] / pv, m);
        // clear the pivot column with row operations
        for i in 0..nrows {
            if i != pr && !done_rows[i] && a[i][pc] != 0 {
                let c = (a[i][pc] / pv) * w % m;
                for j in 0..ncols {
                    a[i][j] = (a[i][j] - c * a[pr][j]).rem_euclid(m);
                }
            }
        }
        // column operations only change the basis of the unknowns
        for j in 0..ncols {
            if j != pc && !done_cols[j] && a[pr][j] != 0 {
                a[pr][j] = 0;
            }
        }
        done_rows[pr] = true;
        done_cols[pc] = true;
        logs += v;
        rank += 1;
    }
    logs + e * (ncols - rank) as u32
}

/// Normalized 2-cocycle equations, unknowns (g,h) with g,h ≠ 1.
fn cocycle_rows(g: &FiniteGroup) -> (Vec<Vec<i64>>, usize) {
    let n = g.order();
    let id = g.identity();
    let others: Vec<usize> = (0..n).filter(|&x| x != id).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in others.iter().enumerate() {
        pos[x] = i;
    }
    let k = others.len();
    let var = |a: usize, b: usize| (a != id && b != id).then(|| pos[a] * k + pos[b]);
    let mut rows = Vec::new();
    for &a in &others {
        for &b in &others {
            for &c in &others {
                let mut r = vec![0i64; k * k];
                // σ(a,b) + σ(ab,c) − σ(b,c) − σ(a,bc)
                for (x, y, s) in [(a, b, 1), (g.mul(a, b), c, 1), (b, c, -1), (a, g.mul(b, c), -1)] {
                    if let Some(t) = var(x, y) {
                        r[t] += s;
                    }
                }
                rows.push(r);
            }
        }
    }
    (rows, k * k)
}

/// Homomorphism equations γ(ab) = γ(a) + γ(b) on normalized 1-cochains.
fn hom_rows(g: &FiniteGroup) -> (Vec<Vec<i64>>, usize) {
    let n = g.order();
    let id = g.identity();
    let others: Vec<usize> = (0..n).filter(|&x| x != id).collect();
    let mut pos = vec![usize::MAX; n];
    for (i, &x) in others.iter().enumerate() {
        pos[x] = i;
    }
    let k = others.len();
    let mut rows = Vec::new();
    for &a in &others {
        for &b in &others {
            let mut r = vec![0i64; k];
            r[pos[a]] += 1;
            r[pos[b]] += 1;
            let ab = g.mul(a, b);
            if ab != id {
                r[pos[ab]] -= 1;
            }
            rows.push(r);
        }
    }
    (rows, k)
}

/// |H²(G, ℤ_N)| = |Z²| / |B²| with |B²| = N^{|G|−1} / |Hom(G, ℤ_N)|.
pub fn h2_order(g: &FiniteGroup, modulus: u64) -> u64 {
    let (zr, zc) = cocycle_rows(g);
    let (hr, hc) = hom_rows(g);
    let mut total = 1u64;
    for (p, e) in factor(modulus) {
        let z = kernel_log(&zr, zc, p, e);
        let h1 = kernel_log(&hr, hc, p, e);
        let b = e * hc as u32 - h1;
        total *= p.pow(z - b);
    }
    total
}

/// Schur multiplier order: the sequence 0 → Hom(G,ℂ·) → H²(G,ℤ_M) → H²(G,ℂ·) → 0 for M = |G|.
pub fn schur_order(g: &FiniteGroup) -> u64 {
    let m = g.order() as u64;
    let ab = (g.order() / derived_order(g)) as u64;
    h2_order(g, m) / ab
}

/// Every normalized 2-cochain mod N on G, as flat (|G|-1)² vectors, filtered to cocycles.
pub fn brute_cocycles(g: &FiniteGroup, modulus: u64) -> Vec<Vec<u64>> {
    let n = g.order();
    let id = g.identity();
    let others: Vec<usize> = (0..n).filter(|&x| x != id).collect();
    let k = others.len();
    let total = (modulus as u128).pow((k * k) as u32);
    assert!(total <= 1 << 20, "brute enumeration too large");
    let mut out = Vec::new();
    for code in 0..total as u64 {
        let mut c = code;
        let vals: Vec<u64> = (0..k * k)
            .map(|_| {
                let d = c % modulus;
                c /= modulus;
                d
            })
            .collect();
        let f = |a: usize, b: usize| -> u64 {
            if a == id || b == id {
                0
            } else {
                vals[others.iter().position(|&x| x == a).unwrap() * k + others.iter().position(|&x| x == b).unwrap()]
            }
        };
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|cc| {
                    (f(a, b) + f(g.mul(a, b), cc)) % modulus == (f(b, cc) + f(a, g.mul(b, cc))) % modulus
                })
            })
        });
        if ok {
            out.push(vals);
        }
    }
    out
}
