//! Permutations of `{0, .., d-1}` stored as image lists.

pub type Perm = Vec<usize>;

pub fn identity(d: usize) -> Perm {
    (0..d).collect()
}

/// Swaps `a` and `b`.
pub fn transposition(d: usize, a: usize, b: usize) -> Perm {
    let mut p = identity(d);
    p.swap(a, b);
    p
}

/// `i -> i + 1 mod d`.
pub fn long_cycle(d: usize) -> Perm {
    (0..d).map(|i| (i + 1) % d).collect()
}

/// `(a * b)(x) = a(b(x))`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(a: &Perm) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// `+1` or `-1`.
pub fn sign(a: &Perm) -> i8 {
    let mut seen = vec![false; a.len()];
    let mut even = true;
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = a[x];
            len += 1;
        }
        if len % 2 == 0 {
            even = !even;
        }
    }
    if even {
        1
    } else {
        -1
    }
}

/// The two generators used throughout: `(0 1)` and the long cycle. Both
/// are the identity on fewer than two points.
pub fn generators(d: usize) -> Vec<Perm> {
    if d < 2 {
        vec![identity(d), identity(d)]
    } else {
        vec![transposition(d, 0, 1), long_cycle(d)]
    }
}

/// All permutations of `0..n` in lexicographic order, each with its sign.
pub fn all_perms(n: usize) -> Vec<(Perm, i8)> {
    let mut out = Vec::new();
    let mut cur = identity(n);
    loop {
        let s = sign(&cur);
        out.push((cur.clone(), s));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}
