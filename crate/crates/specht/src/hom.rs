//! Spaces of module homomorphisms `X` with `X A(g) = B(g) X`.
//!
//! [`hom_basis`] spins a generating set of `A` into a basis of words
//! `w_k = A(g_1 .. g_j) w_seed`. A homomorphism is fixed by the images of
//! the seeds, and each word's image is the matching word in `B` applied to
//! those images. Every linear relation between spun vectors of `A` becomes
//! a linear condition on the seed images, so the solve runs in a parameter
//! space of size `dim B` per seed instead of `dim A * dim B`.
//!
//! [`hom_dim_kronecker`] solves the full stacked system and
//! [`hom_dim_in_permutation_module`] computes the same space as maps into
//! `M^mu` whose image lies in the span of the polytabloids. Both exist as
//! cross-checks at small sizes.

use twistlab_core::Partition;

use crate::error::{Error, Result};
use crate::gf::{inv_mod, GfMatrix};
use crate::module::{build_permutation_module, build_specht_with, Representation, SpechtOptions};

/// Largest unknown count accepted by [`hom_dim_kronecker`].
pub const KRONECKER_MAX_UNKNOWNS: usize = 1024;

/// Semi-echelon basis that remembers how each stored row combines the
/// inserted vectors.
struct Echelon {
    p: u32,
    rows: Vec<(usize, Vec<u32>, Vec<u32>)>,
    inserted: usize,
}

enum Reduced {
    /// Coefficients over the inserted vectors.
    Dependent(Vec<u32>),
    Independent { pivot: usize, residue: Vec<u32>, comb: Vec<u32> },
}

impl Echelon {
    fn new(p: u32) -> Self {
        Echelon {
            p,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    fn reduce(&self, v: &[u32]) -> Reduced {
        let p = self.p as u64;
        let mut residue = v.to_vec();
        // residue = v - sum f_i row_i, and row_i = sum comb_i w
        let mut coeffs = vec![0u32; self.inserted + 1];
        for (pivot, row, comb) in &self.rows {
            let f = residue[*pivot] as u64;
            if f == 0 {
                continue;
            }
            for (x, &y) in residue.iter_mut().zip(row) {
                *x = ((*x as u64 + (p - f) * y as u64) % p) as u32;
            }
            for (x, &y) in coeffs.iter_mut().zip(comb) {
                *x = ((*x as u64 + f * y as u64) % p) as u32;
            }
        }
        match residue.iter().position(|&x| x != 0) {
            None => {
                coeffs.truncate(self.inserted);
                Reduced::Dependent(coeffs)
            }
            Some(pivot) => {
                // residue = w_new - coeffs . w
                let mut comb: Vec<u32> = coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
                comb[self.inserted] = 1;
                Reduced::Independent {
                    pivot,
                    residue,
                    comb,
                }
            }
        }
    }

    fn insert(&mut self, pivot: usize, mut residue: Vec<u32>, mut comb: Vec<u32>) {
        let p = self.p as u64;
        let inv = inv_mod(residue[pivot], self.p) as u64;
        for x in residue.iter_mut().chain(comb.iter_mut()) {
            *x = (*x as u64 * inv % p) as u32;
        }
        self.rows.push((pivot, residue, comb));
        self.inserted += 1;
    }
}

/// Multiplies each parameter matrix by `basis` (columns of a kernel).
fn restrict(z: &mut [GfMatrix], basis: &GfMatrix) {
    for m in z.iter_mut() {
        *m = m.mul(basis);
    }
}

/// Basis of the equivariant maps `A -> B`, each a `dim B x dim A` matrix.
pub fn hom_basis(a: &Representation, b: &Representation) -> Result<Vec<GfMatrix>> {
    a.compatible(b)?;
    let p = a.p();
    let (n, m) = (a.dim(), b.dim());
    if n == 0 || m == 0 {
        return Ok(Vec::new());
    }
    let mut ech = Echelon::new(p);
    let mut words: Vec<Vec<u32>> = Vec::with_capacity(n);
    // z[k]: image of word k as a function of the parameters (m x t)
    let mut z: Vec<GfMatrix> = Vec::with_capacity(n);
    let mut t = 0usize;
    let mut next = 0usize;
    while words.len() < n || next < words.len() {
        if next == words.len() {
            let seed = (0..n)
                .map(|i| {
                    let mut v = vec![0u32; n];
                    v[i] = 1;
                    v
                })
                .find_map(|v| match ech.reduce(&v) {
                    Reduced::Independent {
                        pivot,
                        residue,
                        comb,
                    } => Some((v, pivot, residue, comb)),
                    Reduced::Dependent(_) => None,
                })
                .expect("words do not span yet");
            let (v, pivot, residue, comb) = seed;
            ech.insert(pivot, residue, comb);
            words.push(v);
            for zk in z.iter_mut() {
                let mut wider = GfMatrix::zeros(p, m, t + m);
                for i in 0..m {
                    for j in 0..t {
                        wider.set(i, j, zk.get(i, j));
                    }
                }
                *zk = wider;
            }
            let mut fresh = GfMatrix::zeros(p, m, t + m);
            for i in 0..m {
                fresh.set(i, t + i, 1);
            }
            z.push(fresh);
            t += m;
        }
        let w = words[next].clone();
        for (ag, bg) in a.generators().iter().zip(b.generators()) {
            let v = ag.mul_vec(&w);
            let image = bg.mul(&z[next]);
            match ech.reduce(&v) {
                Reduced::Independent {
                    pivot,
                    residue,
                    comb,
                } => {
                    ech.insert(pivot, residue, comb);
                    words.push(v);
                    z.push(image);
                }
                Reduced::Dependent(coeffs) => {
                    let mut excess = image;
                    for (j, &c) in coeffs.iter().enumerate() {
                        if c != 0 {
                            excess.add_scaled_assign(p - c, &z[j]);
                        }
                    }
                    if excess.is_zero() {
                        continue;
                    }
                    let kernel = excess.nullspace();
                    if kernel.is_empty() {
                        return Ok(Vec::new());
                    }
                    let basis = GfMatrix::from_columns(p, t, &kernel);
                    restrict(&mut z, &basis);
                    t = kernel.len();
                }
            }
        }
        next += 1;
    }
    let w_inv = GfMatrix::from_columns(p, n, &words)
        .inverse()
        .ok_or_else(|| Error::Internal("spun words are not a basis".into()))?;
    let mut out = Vec::with_capacity(t);
    for alpha in 0..t {
        let columns: Vec<Vec<u32>> = z.iter().map(|zk| zk.column(alpha)).collect();
        let x = GfMatrix::from_columns(p, m, &columns).mul(&w_inv);
        out.push(x);
    }
    for x in &out {
        if !is_homomorphism(x, a, b) {
            return Err(Error::Internal("solution fails the equivariance check".into()));
        }
    }
    Ok(out)
}

pub fn is_homomorphism(x: &GfMatrix, a: &Representation, b: &Representation) -> bool {
    a.generators()
        .iter()
        .zip(b.generators())
        .all(|(ag, bg)| x.mul(ag) == bg.mul(x))
}

pub fn hom_dim(a: &Representation, b: &Representation) -> Result<usize> {
    Ok(hom_basis(a, b)?.len())
}

/// Basis of the endomorphism algebra.
pub fn end_ring(a: &Representation) -> Result<Vec<GfMatrix>> {
    hom_basis(a, a)
}

/// Nullity of the stacked system `X A(g) - B(g) X = 0` in the
/// `dim A * dim B` entries of `X`.
pub fn hom_dim_kronecker(a: &Representation, b: &Representation) -> Result<usize> {
    hom_dim_kronecker_bounded(a, b, KRONECKER_MAX_UNKNOWNS)
}

/// [`hom_dim_kronecker`] with a caller-chosen cap on the unknown count.
pub fn hom_dim_kronecker_bounded(
    a: &Representation,
    b: &Representation,
    max_unknowns: usize,
) -> Result<usize> {
    a.compatible(b)?;
    let p = a.p();
    let (n, m) = (a.dim(), b.dim());
    let unknowns = n * m;
    if unknowns > max_unknowns {
        return Err(Error::TooLarge {
            what: "stacked equivariance system".into(),
            size: unknowns as u128,
            bound: max_unknowns as u128,
        });
    }
    let gens = a.generators().len();
    let mut sys = GfMatrix::zeros(p, gens * unknowns, unknowns);
    for (g, (ag, bg)) in a.generators().iter().zip(b.generators()).enumerate() {
        for i in 0..m {
            for j in 0..n {
                let row = g * unknowns + i * n + j;
                for k in 0..n {
                    let col = i * n + k;
                    sys.set(row, col, (sys.get(row, col) + ag.get(k, j)) % p);
                }
                for k in 0..m {
                    let col = k * n + j;
                    sys.set(row, col, (sys.get(row, col) + p - bg.get(i, k)) % p);
                }
            }
        }
    }
    Ok(unknowns - sys.rank())
}

/// `dim Hom(S^lambda, S^mu)` computed as maps `S^lambda -> M^mu` whose
/// image is orthogonal to every vector killed by the polytabloid matrix
/// of `S^mu`.
pub fn hom_dim_in_permutation_module(
    lambda: &Partition,
    mu: &Partition,
    p: u64,
    opts: &SpechtOptions,
) -> Result<usize> {
    let source = build_specht_with(lambda, p, opts)?;
    let target = build_specht_with(mu, p, opts)?;
    let perm_module = build_permutation_module(mu, p, opts)?;
    let into_m = hom_basis(source.representation(), perm_module.representation())?;
    if into_m.is_empty() {
        return Ok(0);
    }
    let q = source.p();
    // vectors u with B u = 0 span the orthogonal complement of S^mu
    let complement = target.embedding(&perm_module)?.nullspace();
    if complement.is_empty() {
        return Ok(into_m.len());
    }
    let k = GfMatrix::from_columns(q, perm_module.dim(), &complement).transpose();
    // conditions K (sum a_alpha X_alpha) = 0, one column per alpha
    let images: Vec<GfMatrix> = into_m.iter().map(|x| k.mul(x)).collect();
    let entries = images[0].rows() * images[0].cols();
    let mut sys = GfMatrix::zeros(q, entries, images.len());
    for (alpha, img) in images.iter().enumerate() {
        for i in 0..img.rows() {
            for j in 0..img.cols() {
                sys.set(i * img.cols() + j, alpha, img.get(i, j));
            }
        }
    }
    Ok(images.len() - sys.rank())
}
