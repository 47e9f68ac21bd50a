//! Structure of finite abelian groups given by a Cayley table or a right action
//! of generators.

use std::collections::{BTreeMap, VecDeque};

use crate::modular::{column_smith, crt, factorize, PrimePower};

/// Invariant factors (ascending, each dividing the next, trivial ones dropped)
/// with a coordinate vector for every element and a basis realizing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianStructure {
    pub invariants: Vec<u64>,
    pub coords: Vec<Vec<u64>>,
    pub basis: Vec<usize>,
}

impl AbelianStructure {
    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Element with the given coordinates.
    pub fn element_of(&self, coords: &[u64]) -> Option<usize> {
        self.coords.iter().position(|c| c.as_slice() == coords)
    }
}

/// Abelian group on `0..order` where `right[x * ngens + i]` is x plus the i-th generator.
pub fn from_right_action(order: usize, identity: usize, ngens: usize, right: &[u32]) -> AbelianStructure {
    // exponent vectors along a spanning tree
    let mut vec_of: Vec<Option<Vec<i64>>> = vec![None; order];
    vec_of[identity] = Some(vec![0; ngens]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for i in 0..ngens {
            let y = right[x * ngens + i] as usize;
            if vec_of[y].is_none() {
                let mut v = vec_of[x].clone().unwrap();
                v[i] += 1;
                vec_of[y] = Some(v);
                queue.push_back(y);
            }
        }
    }
    let vecs: Vec<Vec<i64>> = vec_of.into_iter().map(|v| v.expect("generators span")).collect();
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for x in 0..order {
        for i in 0..ngens {
            let y = right[x * ngens + i] as usize;
            let rel: Vec<i64> = (0..ngens).map(|k| vecs[x][k] + (k == i) as i64 - vecs[y][k]).collect();
            if rel.iter().any(|&a| a != 0) {
                relations.push(rel);
            }
        }
    }

    // prime-power components: (prime, order, coordinate of every element)
    let mut comps: BTreeMap<u64, Vec<(u64, Vec<u64>)>> = BTreeMap::new();
    for (p, a) in factorize(order as u64) {
        let ring = PrimePower::new(p, a);
        let rows: Vec<Vec<u64>> =
            relations.iter().map(|r| r.iter().map(|&x| ring.reduce(x)).collect()).collect();
        let smith = column_smith(rows, ngens, ring);
        for (j, &v) in smith.valuations.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let ord = ring.pow(v);
            let coords = vecs
                .iter()
                .map(|x| {
                    let s: i64 = x
                        .iter()
                        .zip(&smith.q_cols[j])
                        .map(|(&a, &b)| a.rem_euclid(ring.modulus as i64) * b as i64 % ring.modulus as i64)
                        .sum();
                    (s.rem_euclid(ord as i64)) as u64
                })
                .collect();
            comps.entry(p).or_default().push((ord, coords));
        }
    }
    for list in comps.values_mut() {
        list.sort_by(|a, b| b.0.cmp(&a.0));
    }
    let len = comps.values().map(Vec::len).max().unwrap_or(0);
    let mut invariants = Vec::with_capacity(len);
    let mut columns: Vec<Vec<u64>> = Vec::with_capacity(len);
    for k in 0..len {
        let parts: Vec<&(u64, Vec<u64>)> = comps.values().filter_map(|l| l.get(k)).collect();
        let d: u64 = parts.iter().map(|p| p.0).product();
        let col = (0..order)
            .map(|x| crt(&parts.iter().map(|p| (p.1[x], p.0)).collect::<Vec<_>>()).0)
            .collect();
        invariants.push(d);
        columns.push(col);
    }
    invariants.reverse();
    columns.reverse();
    let coords: Vec<Vec<u64>> = (0..order).map(|x| columns.iter().map(|c| c[x]).collect()).collect();
    let basis = (0..invariants.len())
        .map(|k| {
            coords
                .iter()
                .position(|c| c.iter().enumerate().all(|(i, &v)| v == (i == k) as u64))
                .expect("coordinates are a bijection")
        })
        .collect();
    AbelianStructure { invariants, coords, basis }
}

/// Abelian group given by its full Cayley table (additive notation).
pub fn from_cayley_table(table: &[Vec<usize>], identity: usize) -> AbelianStructure {
    let n = table.len();
    let gens = greedy_generators(n, identity, |a, b| table[a][b]);
    let mut right = vec![0u32; n * gens.len()];
    for x in 0..n {
        for (i, &g) in gens.iter().enumerate() {
            right[x * gens.len() + i] = table[x][g] as u32;
        }
    }
    from_right_action(n, identity, gens.len(), &right)
}

/// Elements added in index order whenever they are outside the subgroup generated so far.
pub fn greedy_generators(n: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut inside = vec![false; n];
    inside[identity] = true;
    let mut members = vec![identity];
    let mut gens = Vec::new();
    for x in 0..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        // re-close the subgroup under right multiplication by all generators
        let mut queue: VecDeque<usize> = members.iter().copied().collect();
        while let Some(y) = queue.pop_front() {
            for &g in &gens {
                let z = mul(y, g);
                if !inside[z] {
                    inside[z] = true;
                    members.push(z);
                    queue.push_back(z);
                }
            }
        }
    }
    gens
}

/// Elementary divisors of an abelian group from element order statistics:
/// the number of cyclic factors of order ≥ p^k is log_p(|G[p^k]| / |G[p^(k-1)]|).
pub fn elementary_divisors_by_orders(element_orders: &[u64]) -> Vec<u64> {
    let n = element_orders.len() as u64;
    let mut out = Vec::new();
    for (p, a) in factorize(n) {
        // counts[k] = #{x : p^k x = 0} restricted to the p-part
        let count = |k: u32| -> u64 {
            let pk = p.pow(k);
            element_orders.iter().filter(|&&o| pk % o == 0).count() as u64
        };
        let mut at_least = Vec::new();
        for k in 1..=a {
            let ratio = count(k) / count(k - 1);
            at_least.push(log_p(ratio, p));
        }
        // at_least[k-1] = number of factors of order ≥ p^k
        for k in 1..=a as usize {
            let here = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            for _ in 0..here {
                out.push(p.pow(k as u32));
            }
        }
    }
    out.sort_unstable();
    out
}

fn log_p(mut x: u64, p: u64) -> u64 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product_table(orders: &[u64]) -> Vec<Vec<usize>> {
        let n: u64 = orders.iter().product();
        let decode = |mut x: u64| -> Vec<u64> {
            orders
                .iter()
                .map(|&o| {
                    let c = x % o;
                    x /= o;
                    c
                })
                .collect()
        };
        let encode = |c: &[u64]| -> usize {
            let mut x = 0;
            for (i, &o) in orders.iter().enumerate().rev() {
                x = x * o + c[i];
            }
            x as usize
        };
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let (ca, cb) = (decode(a), decode(b));
                        let c: Vec<u64> = ca.iter().zip(&cb).zip(orders).map(|((x, y), o)| (x + y) % o).collect();
                        encode(&c)
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn structure_of_products() {
        for (orders, expect) in [
            (vec![2, 3], vec![6]),
            (vec![4, 2], vec![2, 4]),
            (vec![2, 2, 2], vec![2, 2, 2]),
            (vec![6, 4], vec![2, 12]),
            (vec![1], vec![]),
        ] {
            let t = product_table(&orders);
            let s = from_cayley_table(&t, 0);
            assert_eq!(s.invariants, expect, "{orders:?}");
            // coordinates form a homomorphism
            for a in 0..t.len() {
                for b in 0..t.len() {
                    for (k, &d) in s.invariants.iter().enumerate() {
                        assert_eq!((s.coords[a][k] + s.coords[b][k]) % d, s.coords[t[a][b]][k]);
                    }
                }
            }
        }
    }

    #[test]
    fn order_statistics() {
        let t = product_table(&[4, 2]);
        let n = t.len();
        let orders: Vec<u64> = (0..n)
            .map(|x| {
                let mut y = x;
                let mut k = 1;
                while y != 0 {
                    y = t[y][x];
                    k += 1;
                }
                k
            })
            .collect();
        assert_eq!(elementary_divisors_by_orders(&orders), vec![2, 4]);
    }
}
