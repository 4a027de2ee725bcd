//! Matrix representations of `S_d` on two generators, Specht modules on
//! the standard polytabloid basis, and permutation modules on tabloids.

use serde::{Deserialize, Serialize};
use twistlab_core::Partition;

use crate::error::{Error, Result};
use crate::gf::{is_prime, GfMatrix};
use crate::perm::{self, Perm};
use crate::tableau::{
    act_on_tabloid, all_tabloids, dim_permutation_module, dim_specht, standard_tableaux,
    ColumnPerms, KeyMap, Tableau, TabloidKey, MAX_BOXES,
};

/// Environment variable overriding [`SpechtOptions::max_dim`].
pub const MAX_DIM_ENV: &str = "TWISTLAB_MAX_DIM";

/// Cap on the number of polytabloid terms held by one module.
const MAX_TERMS: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpechtOptions {
    /// Largest permutation module `M^lambda` we agree to build.
    pub max_dim: u128,
    /// Largest `p^dim End` searched exhaustively for idempotents.
    pub enumeration_bound: u64,
    pub fitting_samples: usize,
    pub seed: u64,
}

impl Default for SpechtOptions {
    fn default() -> Self {
        SpechtOptions {
            max_dim: 100_000,
            enumeration_bound: 1 << 20,
            fitting_samples: 64,
            seed: 0,
        }
    }
}

impl SpechtOptions {
    /// Defaults, with `max_dim` taken from `TWISTLAB_MAX_DIM` when set.
    pub fn from_env() -> Self {
        let mut opts = Self::default();
        if let Some(bound) = std::env::var(MAX_DIM_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            opts.max_dim = bound;
        }
        opts
    }
}

fn check_prime(p: u64) -> Result<u32> {
    match u32::try_from(p) {
        Ok(q) if q < (1 << 16) && is_prime(q) => Ok(q),
        Ok(q) if is_prime(q) => Err(Error::TooLarge {
            what: "prime".into(),
            size: p as u128,
            bound: 1 << 16,
        }),
        _ => Err(Error::NotPrime(p)),
    }
}

/// A representation of `S_d` given by matrices for a fixed list of
/// generating permutations. Matrices act on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    p: u32,
    degree: usize,
    perms: Vec<Perm>,
    gens: Vec<GfMatrix>,
}

impl Representation {
    pub fn new(p: u32, degree: usize, perms: Vec<Perm>, gens: Vec<GfMatrix>) -> Result<Self> {
        if perms.len() != gens.len() {
            return Err(Error::SizeMismatch(format!(
                "{} permutations but {} matrices",
                perms.len(),
                gens.len()
            )));
        }
        let dim = gens.first().map_or(0, GfMatrix::rows);
        for g in &gens {
            if !g.is_square() || g.rows() != dim || g.p() != p {
                return Err(Error::SizeMismatch("generator matrices differ in shape or field".into()));
            }
        }
        if perms.iter().any(|g| g.len() != degree) {
            return Err(Error::SizeMismatch("permutation of the wrong degree".into()));
        }
        Ok(Representation {
            p,
            degree,
            perms,
            gens,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `d` for a representation of `S_d`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.gens.first().map_or(0, GfMatrix::rows)
    }

    pub fn generators(&self) -> &[GfMatrix] {
        &self.gens
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    /// Tensor with the sign representation.
    pub fn sign_twist(&self) -> Self {
        let gens = self
            .gens
            .iter()
            .zip(&self.perms)
            .map(|(g, pi)| {
                if perm::sign(pi) < 0 {
                    g.scale(self.p - 1)
                } else {
                    g.clone()
                }
            })
            .collect();
        Representation {
            gens,
            ..self.clone()
        }
    }

    /// Contragredient: `g` acts by the inverse transpose.
    pub fn dual(&self) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                g.inverse()
                    .map(|inv| inv.transpose())
                    .ok_or_else(|| Error::Internal("generator matrix is singular".into()))
            })
            .collect::<Result<_>>()?;
        Ok(Representation {
            gens,
            ..self.clone()
        })
    }

    /// Both representations are of the same group on the same generators
    /// over the same field.
    pub fn compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::SizeMismatch(format!(
                "fields F_{} and F_{}",
                self.p, other.p
            )));
        }
        if self.degree != other.degree || self.perms != other.perms {
            return Err(Error::SizeMismatch(format!(
                "groups S_{} and S_{}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// Checks a presentation of `S_d` on the transposition `s = (0 1)` and
    /// the long cycle `c`: `s^2 = c^d = 1`, `(c s)^(d-1) = 1`, and the
    /// conjugates `s_k = c^k s c^-k = (k k+1)` satisfy the Coxeter
    /// relations. Only meaningful for the standard generator pair.
    pub fn presentation_holds(&self) -> bool {
        let d = self.degree;
        if self.gens.len() != 2 {
            return false;
        }
        let (s, c) = (&self.gens[0], &self.gens[1]);
        if !s.is_invertible() || !c.is_invertible() {
            return false;
        }
        if d < 2 {
            return s.is_identity() && c.is_identity();
        }
        if !s.mul(s).is_identity() || !c.pow(d as u64).is_identity() {
            return false;
        }
        if !c.mul(s).pow(d as u64 - 1).is_identity() {
            return false;
        }
        let c_inv = c.pow(d as u64 - 1);
        let mut coxeter = Vec::with_capacity(d - 1);
        let (mut ck, mut ck_inv) = (GfMatrix::identity(self.p, self.dim()), GfMatrix::identity(self.p, self.dim()));
        for _ in 0..d - 1 {
            coxeter.push(ck.mul(s).mul(&ck_inv));
            ck = ck.mul(c);
            ck_inv = ck_inv.mul(&c_inv);
        }
        for i in 0..coxeter.len() {
            for j in i + 1..coxeter.len() {
                let order = if j == i + 1 { 3 } else { 2 };
                if !coxeter[i].mul(&coxeter[j]).pow(order).is_identity() {
                    return false;
                }
            }
        }
        true
    }
}

/// The Specht module `S^lambda` over `F_p` on the standard polytabloid
/// basis.
///
/// Coordinates of a vector of `M^lambda` lying in `S^lambda` are read off
/// the tabloids `{t}` of the standard tableaux `t`, where the matrix of
/// coefficients is unitriangular, and then checked against the full
/// expansion.
pub struct SpechtModule {
    shape: Partition,
    p: u32,
    basis: Vec<Tableau>,
    polytabloids: Vec<Vec<(TabloidKey, i8)>>,
    pivots: KeyMap<usize>,
    /// Transposed inverse of the matrix of `{t_l}`-coefficients of `e_{t_k}`.
    pivot_inverse: GfMatrix,
    column_perms: ColumnPerms,
    rep: Representation,
}

impl std::fmt::Debug for SpechtModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpechtModule")
            .field("shape", &self.shape)
            .field("p", &self.p)
            .field("dim", &self.dim())
            .finish()
    }
}

pub fn build_specht(shape: &Partition, p: u64) -> Result<SpechtModule> {
    build_specht_with(shape, p, &SpechtOptions::from_env())
}

pub fn build_specht_with(shape: &Partition, p: u64, opts: &SpechtOptions) -> Result<SpechtModule> {
    let p = check_prime(p)?;
    let d = shape.size() as usize;
    check_size(shape, opts)?;
    let dim = dim_specht(shape).expect("bounded by the permutation module") as usize;
    let group = ColumnPerms::group_order(shape).unwrap_or(u128::MAX);
    let terms = group.saturating_mul(dim as u128);
    if terms > MAX_TERMS {
        return Err(Error::TooLarge {
            what: format!("polytabloid expansion of S^({shape})"),
            size: terms,
            bound: MAX_TERMS,
        });
    }
    let column_perms = ColumnPerms::new(shape.conjugate().first() as usize);
    let basis = standard_tableaux(shape);
    let polytabloids: Vec<_> = basis.iter().map(|t| column_perms.polytabloid(t)).collect();
    let pivots: KeyMap<usize> = basis
        .iter()
        .enumerate()
        .map(|(l, t)| (t.tabloid(), l))
        .collect();
    let mut pivot_matrix = GfMatrix::zeros(p, dim, dim);
    for (k, terms) in polytabloids.iter().enumerate() {
        for &(key, s) in terms {
            if let Some(&l) = pivots.get(&key) {
                pivot_matrix.set(k, l, signed(s, p));
            }
        }
    }
    let pivot_inverse = pivot_matrix
        .inverse()
        .ok_or_else(|| Error::Internal(format!("pivot matrix of S^({shape}) is singular")))?
        .transpose();
    let mut module = SpechtModule {
        shape: shape.clone(),
        p,
        basis,
        polytabloids,
        pivots,
        pivot_inverse,
        column_perms,
        rep: Representation {
            p,
            degree: d,
            perms: Vec::new(),
            gens: Vec::new(),
        },
    };
    let perms = perm::generators(d);
    let gens = perms
        .iter()
        .map(|g| module.action(g))
        .collect::<Result<Vec<_>>>()?;
    module.rep = Representation::new(p, d, perms, gens)?;
    Ok(module)
}

fn check_size(shape: &Partition, opts: &SpechtOptions) -> Result<()> {
    let d = shape.size() as usize;
    if d > MAX_BOXES {
        return Err(Error::TooLarge {
            what: "partition size".into(),
            size: d as u128,
            bound: MAX_BOXES as u128,
        });
    }
    let m_dim = dim_permutation_module(shape).unwrap_or(u128::MAX);
    if m_dim > opts.max_dim {
        return Err(Error::TooLarge {
            what: format!("permutation module M^({shape})"),
            size: m_dim,
            bound: opts.max_dim,
        });
    }
    Ok(())
}

fn signed(s: i8, p: u32) -> u32 {
    if s > 0 {
        1 % p
    } else {
        p - 1
    }
}

impl SpechtModule {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Standard tableaux indexing the basis.
    pub fn basis(&self) -> &[Tableau] {
        &self.basis
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn into_representation(self) -> Representation {
        self.rep
    }

    /// Matrix of `g` on the basis; column `k` holds the coordinates of
    /// `g e_k`.
    pub fn action(&self, g: &Perm) -> Result<GfMatrix> {
        let n = self.dim();
        let mut columns = Vec::with_capacity(n);
        for t in &self.basis {
            let image = self.column_perms.polytabloid(&t.apply(g));
            columns.push(self.coordinates(&image)?);
        }
        Ok(GfMatrix::from_columns(self.p, n, &columns))
    }

    /// Coordinates of a vector of `M^lambda` (sparse, distinct tabloids)
    /// in the polytabloid basis. Fails if the vector is not in `S^lambda`.
    pub fn coordinates(&self, v: &[(TabloidKey, i8)]) -> Result<Vec<u32>> {
        let p = self.p;
        let n = self.dim();
        let mut restricted = vec![0u32; n];
        for &(key, s) in v {
            if let Some(&l) = self.pivots.get(&key) {
                restricted[l] = (restricted[l] + signed(s, p)) % p;
            }
        }
        let coords = self.pivot_inverse.mul_vec(&restricted);
        // expand and compare
        let mut acc: KeyMap<u32> = KeyMap::default();
        acc.reserve(v.len());
        for (k, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(key, s) in &self.polytabloids[k] {
                let e = acc.entry(key).or_insert(0);
                *e = (*e + c * signed(s, p)) % p;
            }
        }
        for &(key, s) in v {
            let have = acc.remove(&key).unwrap_or(0);
            if have != signed(s, p) {
                return Err(Error::Internal(format!(
                    "vector is not in the span of the polytabloids of S^({})",
                    self.shape
                )));
            }
        }
        if acc.values().any(|&x| x != 0) {
            return Err(Error::Internal(format!(
                "vector is not in the span of the polytabloids of S^({})",
                self.shape
            )));
        }
        Ok(coords)
    }

    /// Rows are the basis polytabloids written in the tabloid basis of
    /// `module`.
    pub fn embedding(&self, module: &PermutationModule) -> Result<GfMatrix> {
        if module.shape != self.shape || module.p != self.p {
            return Err(Error::SizeMismatch("embedding into a different permutation module".into()));
        }
        let mut b = GfMatrix::zeros(self.p, self.dim(), module.dim());
        for (k, terms) in self.polytabloids.iter().enumerate() {
            for &(key, s) in terms {
                b.set(k, module.index[&key], signed(s, self.p));
            }
        }
        Ok(b)
    }
}

/// The permutation module `M^lambda` on tabloids.
pub struct PermutationModule {
    shape: Partition,
    p: u32,
    tabloids: Vec<TabloidKey>,
    index: KeyMap<usize>,
    rep: Representation,
}

pub fn build_permutation_module(shape: &Partition, p: u64, opts: &SpechtOptions) -> Result<PermutationModule> {
    let p = check_prime(p)?;
    check_size(shape, opts)?;
    let d = shape.size() as usize;
    let tabloids = all_tabloids(shape);
    let index: KeyMap<usize> = tabloids.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let perms = perm::generators(d);
    let n = tabloids.len();
    let gens = perms
        .iter()
        .map(|g| {
            let mut m = GfMatrix::zeros(p, n, n);
            for (j, &key) in tabloids.iter().enumerate() {
                m.set(index[&act_on_tabloid(key, g)], j, 1);
            }
            m
        })
        .collect();
    let rep = Representation::new(p, d, perms, gens)?;
    Ok(PermutationModule {
        shape: shape.clone(),
        p,
        tabloids,
        index,
        rep,
    })
}

impl PermutationModule {
    pub fn dim(&self) -> usize {
        self.tabloids.len()
    }

    pub fn tabloids(&self) -> &[TabloidKey] {
        &self.tabloids
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn small_modules() {
        let m = build_specht(&p(&[2, 1]), 3).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.representation().generators().iter().all(|g| g.rows() == 2));
        assert!(m.representation().presentation_holds());

        let triv = build_specht(&p(&[5]), 7).unwrap();
        assert_eq!(triv.dim(), 1);
        assert!(triv.representation().generators().iter().all(GfMatrix::is_identity));

        let sign = build_specht(&p(&[1, 1]), 2).unwrap();
        assert!(sign.representation().generators().iter().all(GfMatrix::is_identity));
        let sign3 = build_specht(&p(&[1, 1]), 3).unwrap();
        assert_eq!(sign3.representation().generators()[0].get(0, 0), 2);
    }

    #[test]
    fn bounds() {
        let opts = SpechtOptions {
            max_dim: 10,
            ..SpechtOptions::default()
        };
        assert!(matches!(
            build_specht_with(&p(&[3, 2]), 2, &opts),
            Ok(_)
        ));
        assert!(matches!(
            build_specht_with(&p(&[3, 2, 1]), 2, &opts),
            Err(Error::TooLarge { .. })
        ));
        assert_eq!(build_specht(&p(&[2]), 4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn permutation_module_contains_specht() {
        let shape = p(&[3, 2]);
        let s = build_specht(&shape, 3).unwrap();
        let m = build_permutation_module(&shape, 3, &SpechtOptions::default()).unwrap();
        let b = s.embedding(&m).unwrap();
        assert_eq!(b.rank(), s.dim());
        // P_g B^T = B^T rho(g)
        let bt = b.transpose();
        for (pg, rg) in m
            .representation()
            .generators()
            .iter()
            .zip(s.representation().generators())
        {
            assert_eq!(pg.mul(&bt), bt.mul(rg));
        }
    }
}
