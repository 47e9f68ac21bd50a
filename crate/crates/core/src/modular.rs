//! Arithmetic modulo prime powers and a Smith normal form that tracks column
//! transformations.

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Solves x = r_i mod m_i for pairwise coprime moduli.
pub fn crt(residues: &[(u64, u64)]) -> (u64, u64) {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(r, mi) in residues {
        let mi = mi as u128;
        // x + m*t = r mod mi
        let diff = ((r as u128 % mi) + mi - x % mi) % mi;
        let minv = inv_mod((m % mi) as u64, mi as u64).expect("moduli must be coprime") as u128;
        let t = diff * minv % mi;
        x += m * t;
        m *= mi;
    }
    (x as u64, m as u64)
}

/// The ring ℤ/p^e.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
    pub modulus: u64,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Self {
        assert!(e >= 1);
        let modulus = p.checked_pow(e).expect("prime power overflow");
        assert!(modulus < 1 << 31, "prime power too large for word arithmetic");
        PrimePower { p, e, modulus }
    }

    pub fn pow(&self, k: u32) -> u64 {
        self.p.pow(k)
    }

    /// p-adic valuation of `x` as an element of ℤ/p^e (e for zero).
    pub fn valuation(&self, x: u64) -> u32 {
        let mut x = x % self.modulus;
        if x == 0 {
            return self.e;
        }
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }

    pub fn unit_inverse(&self, a: u64) -> u64 {
        inv_mod(a, self.modulus).expect("not a unit")
    }
}

/// Result of [`column_smith`]: `P·A·Q = D` with `D` diagonal, `diag[j] = p^valuations[j]`
/// (valuation `e` meaning a zero pivot). Only `Q` and `Q⁻¹` are kept.
#[derive(Clone, Debug)]
pub struct ColumnSmith {
    pub ring: PrimePower,
    pub valuations: Vec<u32>,
    /// Columns of Q.
    pub q_cols: Vec<Vec<u64>>,
    /// Rows of Q⁻¹.
    pub qinv_rows: Vec<Vec<u64>>,
}

impl ColumnSmith {
    /// Generators of `{x : A x = 0}`: column j contributes `p^(e-v_j) Q e_j`, of order `p^v_j`.
    pub fn kernel(&self) -> Vec<(Vec<u64>, u32)> {
        let r = self.ring;
        self.valuations
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(j, &v)| {
                let s = r.pow(r.e - v);
                (self.q_cols[j].iter().map(|&x| r.mul(x, s)).collect(), v)
            })
            .collect()
    }

    /// `Q⁻¹ x`, one entry per column index.
    pub fn apply_qinv(&self, x: &[u64]) -> Vec<u64> {
        self.qinv_rows.iter().map(|row| dot(row, x, self.ring.modulus)).collect()
    }

    /// `x Q` for a row vector x.
    pub fn apply_q_row(&self, x: &[u64]) -> Vec<u64> {
        self.q_cols.iter().map(|col| dot(col, x, self.ring.modulus)).collect()
    }
}

pub fn dot(a: &[u64], b: &[u64], m: u64) -> u64 {
    let mut acc: u64 = 0;
    for (x, y) in a.iter().zip(b) {
        acc = (acc + x * y) % m;
    }
    acc
}

/// Smith normal form of a dense matrix over ℤ/p^e, tracking column operations.
///
/// Pivots are chosen with minimal valuation, so the diagonal valuations are
/// nondecreasing and form a divisibility chain. Entries must already be reduced.
pub fn column_smith(mut rows: Vec<Vec<u64>>, ncols: usize, ring: PrimePower) -> ColumnSmith {
    let m = ring.modulus;
    let mut q_cols: Vec<Vec<u64>> = (0..ncols).map(|j| unit(ncols, j)).collect();
    let mut qinv_rows: Vec<Vec<u64>> = (0..ncols).map(|j| unit(ncols, j)).collect();
    let mut valuations = vec![ring.e; ncols];
    let nrows = rows.len();
    let powers: Vec<u64> = (0..=ring.e).map(|k| ring.pow(k)).collect();

    for t in 0..ncols.min(nrows) {
        // pivot search
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for (i, row) in rows.iter().enumerate().skip(t) {
            for (j, &a) in row.iter().enumerate().skip(t) {
                if a == 0 {
                    continue;
                }
                let v = ring.valuation(a);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        rows.swap(t, pi);
        if pj != t {
            for row in rows.iter_mut() {
                row.swap(t, pj);
            }
            q_cols.swap(t, pj);
            qinv_rows.swap(t, pj);
        }
        let pv = powers[v as usize];
        let unit_part = rows[t][t] / pv;
        let uinv = inv_mod(unit_part, m).expect("unit part invertible");
        for a in rows[t][t..].iter_mut() {
            *a = *a * uinv % m;
        }
        let (head, tail) = rows.split_at_mut(t + 1);
        let pivot_row = &head[t];
        for row in tail.iter_mut() {
            let a = row[t];
            if a == 0 {
                continue;
            }
            let f = m - a / pv;
            for (x, &y) in row[t..].iter_mut().zip(&pivot_row[t..]) {
                *x = (*x + f * y) % m;
            }
        }
        // column clearing: only row t carries entries in columns > t
        for j in t + 1..ncols {
            let a = rows[t][j];
            if a == 0 {
                continue;
            }
            let f = a / pv;
            rows[t][j] = 0;
            let nf = m - f;
            let (left, right) = q_cols.split_at_mut(j);
            for (x, &y) in right[0].iter_mut().zip(&left[t]) {
                *x = (*x + nf * y) % m;
            }
            let (left, right) = qinv_rows.split_at_mut(j);
            for (x, &y) in left[t].iter_mut().zip(&right[0]) {
                *x = (*x + f * y) % m;
            }
        }
        valuations[t] = v;
    }
    ColumnSmith { ring, valuations, q_cols, qinv_rows }
}

fn unit(n: usize, j: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[j] = 1;
    v
}

/// Combines prime-power cyclic factors into invariant factors d₁ | d₂ | …, ascending,
/// with trivial factors dropped.
pub fn invariant_factors(prime_powers: &[u64]) -> Vec<u64> {
    let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &q in prime_powers {
        if q > 1 {
            let p = factorize(q)[0].0;
            by_prime.entry(p).or_default().push(q);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for list in by_prime.values_mut() {
        list.sort_unstable_by(|a, b| b.cmp(a));
        for (k, q) in list.iter().enumerate() {
            out[k] *= q;
        }
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(192), vec![(2, 6), (3, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn crt_combines() {
        let (x, m) = crt(&[(1, 4), (2, 3)]);
        assert_eq!((x, m), (5, 12));
    }

    #[test]
    fn invariant_factor_chain() {
        assert_eq!(invariant_factors(&[2, 4, 3]), vec![2, 12]);
        assert_eq!(invariant_factors(&[2, 2, 2]), vec![2, 2, 2]);
        assert_eq!(invariant_factors(&[]), Vec::<u64>::new());
    }

    #[test]
    fn smith_kernel_mod_4() {
        let ring = PrimePower::new(2, 2);
        // x + 2y = 0, 2x = 0 over ℤ/4
        let rows = vec![vec![1, 2], vec![2, 0]];
        let s = column_smith(rows.clone(), 2, ring);
        let mut vals = s.valuations.clone();
        vals.sort();
        assert_eq!(vals, vec![0, 2]);
        for (k, _) in s.kernel() {
            for r in &rows {
                assert_eq!(dot(r, &k, 4), 0);
            }
        }
        // Q⁻¹ Q = I
        for i in 0..2 {
            for j in 0..2 {
                let x = dot(&s.qinv_rows[i], &s.q_cols[j], 4);
                assert_eq!(x, (i == j) as u64);
            }
        }
    }
}
