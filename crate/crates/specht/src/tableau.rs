//! Young tableaux, tabloids and polytabloids.
//!
//! A tabloid is stored as a `u128` key holding the row index of every entry
//! in five bits, so shapes are limited to 25 boxes.

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use twistlab_core::Partition;

use crate::perm::{all_perms, Perm};

/// Largest `d` a tabloid key can hold.
pub const MAX_BOXES: usize = 25;
const BITS: usize = 5;

pub type TabloidKey = u128;

/// Multiplicative hasher for tabloid keys; the default SipHash dominates
/// the run time of coordinate checks.
#[derive(Default, Clone, Copy)]
pub struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u64(&mut self, x: u64) {
        let h = (self.0.rotate_left(5) ^ x).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        self.0 = h ^ (h >> 29);
    }

    fn write_u128(&mut self, x: u128) {
        self.write_u64(x as u64);
        self.write_u64((x >> 64) as u64);
    }
}

pub type KeyMap<V> = HashMap<TabloidKey, V, BuildHasherDefault<KeyHasher>>;

/// Entries `0..d` placed in the boxes of a shape, row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Self {
        Tableau { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Replaces each entry `x` by `g(x)`.
    pub fn apply(&self, g: &Perm) -> Tableau {
        Tableau {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&x| g[x]).collect())
                .collect(),
        }
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|j| {
                self.rows
                    .iter()
                    .take_while(|r| r.len() > j)
                    .map(|r| r[j])
                    .collect()
            })
            .collect()
    }

    /// Rows and columns increase.
    pub fn is_standard(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
            && self
                .columns()
                .iter()
                .all(|c| c.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn tabloid(&self) -> TabloidKey {
        let mut key = 0;
        for (i, row) in self.rows.iter().enumerate() {
            for &x in row {
                key |= (i as u128) << (BITS * x);
            }
        }
        key
    }
}

/// Row of entry `x` in the tabloid.
pub fn tabloid_row(key: TabloidKey, x: usize) -> usize {
    ((key >> (BITS * x)) & 0x1f) as usize
}

/// The tabloid `g{t}`: entry `g(x)` sits in the row that held `x`.
pub fn act_on_tabloid(key: TabloidKey, g: &Perm) -> TabloidKey {
    let mut out = 0;
    for (x, &gx) in g.iter().enumerate() {
        out |= (tabloid_row(key, x) as u128) << (BITS * gx);
    }
    out
}

/// All tabloids of the given shape, in increasing key order.
pub fn all_tabloids(shape: &Partition) -> Vec<TabloidKey> {
    let d = shape.size() as usize;
    let mut remaining: Vec<usize> = shape.parts().iter().map(|&x| x as usize).collect();
    let mut out = Vec::new();
    fn go(x: usize, d: usize, key: u128, remaining: &mut [usize], out: &mut Vec<u128>) {
        if x == d {
            out.push(key);
            return;
        }
        for i in 0..remaining.len() {
            if remaining[i] > 0 {
                remaining[i] -= 1;
                go(x + 1, d, key | (i as u128) << (BITS * x), remaining, out);
                remaining[i] += 1;
            }
        }
    }
    go(0, d, 0, &mut remaining, &mut out);
    out.sort_unstable();
    out
}

/// Standard tableaux of the given shape. Entries are placed in increasing
/// order, trying rows from the top.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    let lens: Vec<usize> = shape.parts().iter().map(|&x| x as usize).collect();
    let d: usize = lens.iter().sum();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); lens.len()];
    let mut out = Vec::new();
    fn go(x: usize, d: usize, lens: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if x == d {
            out.push(Tableau::new(rows.clone()));
            return;
        }
        for i in 0..lens.len() {
            let len = rows[i].len();
            if len < lens[i] && (i == 0 || rows[i - 1].len() > len) {
                rows[i].push(x);
                go(x + 1, d, lens, rows, out);
                rows[i].pop();
            }
        }
    }
    go(0, d, &lens, &mut rows, &mut out);
    out
}

fn prime_exponents_of_factorial(n: u64, into: &mut HashMap<u64, i64>, sign: i64) {
    for k in 2..=n {
        add_prime_factors(k, into, sign);
    }
}

fn add_prime_factors(mut k: u64, into: &mut HashMap<u64, i64>, sign: i64) {
    let mut q = 2;
    while q * q <= k {
        while k % q == 0 {
            *into.entry(q).or_default() += sign;
            k /= q;
        }
        q += 1;
    }
    if k > 1 {
        *into.entry(k).or_default() += sign;
    }
}

fn from_prime_exponents(exps: &HashMap<u64, i64>) -> Option<u128> {
    let mut acc: u128 = 1;
    for (&q, &e) in exps {
        assert!(e >= 0, "non-integral quotient");
        for _ in 0..e {
            acc = acc.checked_mul(q as u128)?;
        }
    }
    Some(acc)
}

/// `d! / prod(hook lengths)`; `None` on overflow.
pub fn hook_length_dim(shape: &Partition) -> Option<u128> {
    let conj = shape.conjugate();
    let mut exps = HashMap::new();
    prime_exponents_of_factorial(shape.size(), &mut exps, 1);
    for (i, &row) in shape.parts().iter().enumerate() {
        for j in 0..row as usize {
            let hook = row - j as u64 + conj.part(j) - i as u64 - 1;
            add_prime_factors(hook, &mut exps, -1);
        }
    }
    from_prime_exponents(&exps)
}

/// Number of standard tableaux, by removing corners recursively;
/// `None` on overflow.
pub fn count_standard_tableaux(shape: &Partition) -> Option<u128> {
    fn go(parts: Vec<u64>, memo: &mut HashMap<Vec<u64>, Option<u128>>) -> Option<u128> {
        if parts.iter().sum::<u64>() <= 1 {
            return Some(1);
        }
        if let Some(&v) = memo.get(&parts) {
            return v;
        }
        let mut total: Option<u128> = Some(0);
        for i in 0..parts.len() {
            let next = parts.get(i + 1).copied().unwrap_or(0);
            if parts[i] > next {
                let mut smaller = parts.clone();
                smaller[i] -= 1;
                if smaller[i] == 0 {
                    smaller.pop();
                }
                total = match (total, go(smaller, memo)) {
                    (Some(a), Some(b)) => a.checked_add(b),
                    _ => None,
                };
            }
        }
        memo.insert(parts, total);
        total
    }
    go(shape.parts().to_vec(), &mut HashMap::new())
}

/// Dimension of `S^lambda`, computed two ways; the two counts must agree.
pub fn dim_specht(shape: &Partition) -> Option<u128> {
    let count = count_standard_tableaux(shape);
    let hooks = hook_length_dim(shape);
    assert_eq!(count, hooks, "tableau count and hook formula disagree for {shape}");
    count
}

/// Number of tabloids, `d! / prod(lambda_i!)`; `None` on overflow.
pub fn dim_permutation_module(shape: &Partition) -> Option<u128> {
    let mut exps = HashMap::new();
    prime_exponents_of_factorial(shape.size(), &mut exps, 1);
    for &row in shape.parts() {
        prime_exponents_of_factorial(row, &mut exps, -1);
    }
    from_prime_exponents(&exps)
}

/// Permutations of each column height, shared across polytabloids of one
/// shape.
pub struct ColumnPerms {
    by_height: Vec<Vec<(Perm, i8)>>,
}

impl ColumnPerms {
    pub fn new(max_height: usize) -> Self {
        ColumnPerms {
            by_height: (0..=max_height).map(all_perms).collect(),
        }
    }

    /// Order of the column stabiliser of a tableau of this shape.
    pub fn group_order(shape: &Partition) -> Option<u128> {
        let mut acc: u128 = 1;
        for &h in shape.conjugate().parts() {
            for k in 2..=h as u128 {
                acc = acc.checked_mul(k)?;
            }
        }
        Some(acc)
    }

    /// `e_t = sum over column permutations s of sign(s) {s t}`, as
    /// `(tabloid, sign)` terms. Distinct terms have distinct tabloids.
    pub fn polytabloid(&self, t: &Tableau) -> Vec<(TabloidKey, i8)> {
        let mut terms: Vec<(TabloidKey, i8)> = vec![(0, 1)];
        for col in t.columns() {
            let options: Vec<(TabloidKey, i8)> = self.by_height[col.len()]
                .iter()
                .map(|(pi, s)| {
                    let mut key = 0u128;
                    for (k, &x) in col.iter().enumerate() {
                        key |= (pi[k] as u128) << (BITS * x);
                    }
                    (key, *s)
                })
                .collect();
            if options.len() == 1 {
                let (key, _) = options[0];
                terms.iter_mut().for_each(|(k, _)| *k |= key);
                continue;
            }
            terms = terms
                .iter()
                .flat_map(|&(k, s)| options.iter().map(move |&(k2, s2)| (k | k2, s * s2)))
                .collect();
        }
        terms
    }
}
