//! Decomposability through the endomorphism algebra, fixed points, and the
//! sign/dual comparison.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use twistlab_core::Partition;

use crate::error::{Error, Result};
use crate::gf::GfMatrix;
use crate::hom::{end_ring, hom_basis};
use crate::module::{build_specht_with, Representation, SpechtOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Every element of the endomorphism algebra was tested.
    Enumerated,
    /// Random elements were tested for a nontrivial Fitting decomposition.
    Fitting,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub decomposable: bool,
    pub method: Method,
    pub end_dim: usize,
    /// An idempotent other than 0 and 1 (enumeration), or an endomorphism
    /// that is neither nilpotent nor invertible (sampling).
    pub witness: Option<GfMatrix>,
}

/// An endomorphism algebra with coordinates: products of basis elements
/// are expanded back in the basis.
pub struct EndAlgebra {
    p: u32,
    basis: Vec<GfMatrix>,
    /// `structure[i][j]` = coordinates of `basis[i] * basis[j]`.
    structure: Vec<Vec<Vec<u32>>>,
    identity: Vec<u32>,
}

impl EndAlgebra {
    pub fn new(p: u32, basis: Vec<GfMatrix>) -> Result<Self> {
        let k = basis.len();
        let n = basis.first().map_or(0, GfMatrix::rows);
        // pick k entry positions on which the basis is independent
        let flat = GfMatrix::from_fn(p, k, n * n, |i, e| basis[i].get(e / n.max(1), e % n.max(1)));
        let mut reduced = flat.clone();
        let pivots = reduced.rref();
        if pivots.len() != k {
            return Err(Error::Internal("endomorphism basis is dependent".into()));
        }
        // coordinates of Y: solve c * flat[:, pivots] = Y[pivots]
        let square = GfMatrix::from_fn(p, k, k, |i, j| flat.get(i, pivots[j]));
        let solve = square
            .inverse()
            .ok_or_else(|| Error::Internal("pivot block is singular".into()))?
            .transpose();
        let coords = |y: &GfMatrix| -> Result<Vec<u32>> {
            let at: Vec<u32> = pivots.iter().map(|&e| y.get(e / n, e % n)).collect();
            let c = solve.mul_vec(&at);
            let mut back = GfMatrix::zeros(p, n, n);
            for (ci, bi) in c.iter().zip(&basis) {
                back.add_scaled_assign(*ci, bi);
            }
            if &back != y {
                return Err(Error::Internal("product leaves the endomorphism algebra".into()));
            }
            Ok(c)
        };
        let mut structure = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                structure[i][j] = coords(&basis[i].mul(&basis[j]))?;
            }
        }
        let identity = coords(&GfMatrix::identity(p, n))?;
        Ok(EndAlgebra {
            p,
            basis,
            structure,
            identity,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GfMatrix] {
        &self.basis
    }

    pub fn product(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let k = self.dim();
        let mut out = vec![0u64; k];
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            for j in 0..k {
                let f = x[i] as u64 * y[j] as u64 % p;
                if f == 0 {
                    continue;
                }
                for (o, &s) in out.iter_mut().zip(&self.structure[i][j]) {
                    *o += f * s as u64;
                }
            }
            out.iter_mut().for_each(|o| *o %= p);
        }
        out.into_iter().map(|o| (o % p) as u32).collect()
    }

    pub fn matrix(&self, x: &[u32]) -> GfMatrix {
        let n = self.basis[0].rows();
        let mut out = GfMatrix::zeros(self.p, n, n);
        for (c, b) in x.iter().zip(&self.basis) {
            out.add_scaled_assign(*c, b);
        }
        out
    }

    /// First idempotent other than 0 and 1 in enumeration order.
    pub fn find_idempotent(&self) -> Option<Vec<u32>> {
        let k = self.dim();
        let mut x = vec![0u32; k];
        loop {
            // increment in base p
            let mut i = 0;
            loop {
                if i == k {
                    return None;
                }
                x[i] += 1;
                if x[i] == self.p {
                    x[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            if x != self.identity && self.product(&x, &x) == x {
                return Some(x.clone());
            }
        }
    }
}

pub fn is_decomposable(a: &Representation, opts: &SpechtOptions) -> Result<Decomposition> {
    let basis = end_ring(a)?;
    let end_dim = basis.len();
    let p = a.p() as u64;
    let size = (0..end_dim).try_fold(1u64, |acc, _| acc.checked_mul(p));
    if matches!(size, Some(s) if s <= opts.enumeration_bound) {
        let algebra = EndAlgebra::new(a.p(), basis)?;
        let found = algebra.find_idempotent();
        return Ok(Decomposition {
            decomposable: found.is_some(),
            method: Method::Enumerated,
            end_dim,
            witness: found.map(|x| algebra.matrix(&x)),
        });
    }
    let n = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.fitting_samples {
        let mut theta = GfMatrix::zeros(a.p(), n, n);
        for b in &basis {
            theta.add_scaled_assign(rng.gen_range(0..a.p()), b);
        }
        // theta^n has the rank of the Fitting image
        let rank = theta.pow(n as u64).rank();
        if rank != 0 && rank != n {
            return Ok(Decomposition {
                decomposable: true,
                method: Method::Fitting,
                end_dim,
                witness: Some(theta),
            });
        }
    }
    Err(Error::Inconclusive {
        samples: opts.fitting_samples,
    })
}

/// Dimension of the common fixed space of the generators.
pub fn invariants_dim(a: &Representation) -> usize {
    let n = a.dim();
    if n == 0 {
        return 0;
    }
    let identity = GfMatrix::identity(a.p(), n);
    let stacked = a
        .generators()
        .iter()
        .map(|g| g.sub(&identity))
        .reduce(|acc, m| acc.vstack(&m))
        .unwrap_or_else(|| GfMatrix::zeros(a.p(), 0, n));
    n - stacked.rank()
}

/// Looks for an invertible equivariant map from `S^lambda` twisted by the
/// sign to the dual of `S^lambda'`.
pub fn sign_dual_check(lambda: &Partition, p: u64, opts: &SpechtOptions) -> Result<bool> {
    let source = build_specht_with(lambda, p, opts)?.into_representation().sign_twist();
    let target = build_specht_with(&lambda.conjugate(), p, opts)?
        .into_representation()
        .dual()?;
    if source.dim() != target.dim() {
        return Ok(false);
    }
    let basis = hom_basis(&source, &target)?;
    Ok(find_invertible(&basis, source.p(), opts).is_some())
}

/// An invertible combination of `basis`, by enumeration when the space is
/// small and by seeded sampling otherwise.
pub fn find_invertible(basis: &[GfMatrix], p: u32, opts: &SpechtOptions) -> Option<GfMatrix> {
    let k = basis.len();
    let first = basis.first()?;
    let combine = |c: &[u32]| {
        let mut x = GfMatrix::zeros(p, first.rows(), first.cols());
        for (ci, b) in c.iter().zip(basis) {
            x.add_scaled_assign(*ci, b);
        }
        x
    };
    if let Some(x) = basis.iter().find(|b| b.is_invertible()) {
        return Some(x.clone());
    }
    let size = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(p as u64));
    if matches!(size, Some(s) if s <= 1 << 12) {
        let mut c = vec![0u32; k];
        loop {
            let mut i = 0;
            loop {
                if i == k {
                    return None;
                }
                c[i] += 1;
                if c[i] == p {
                    c[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            let x = combine(&c);
            if x.is_invertible() {
                return Some(x);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    (0..opts.fitting_samples).find_map(|_| {
        let c: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p)).collect();
        let x = combine(&c);
        x.is_invertible().then_some(x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::build_specht;

    fn p(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn trivial_module() {
        let opts = SpechtOptions::default();
        for prime in [2, 3, 5] {
            let a = build_specht(&p(&[4]), prime).unwrap().into_representation();
            let dec = is_decomposable(&a, &opts).unwrap();
            assert!(!dec.decomposable);
            assert_eq!((dec.method, dec.end_dim), (Method::Enumerated, 1));
            assert_eq!(invariants_dim(&a), 1);
        }
    }

    #[test]
    fn invariants_examples() {
        let a = build_specht(&p(&[2, 2]), 3).unwrap().into_representation();
        assert_eq!(invariants_dim(&a), 1);
        let b = build_specht(&p(&[6, 3]), 3).unwrap().into_representation();
        assert_eq!(invariants_dim(&b), 0);
    }

    #[test]
    fn sign_dual_examples() {
        let opts = SpechtOptions::default();
        assert!(sign_dual_check(&p(&[2, 1]), 3, &opts).unwrap());
        assert!(sign_dual_check(&p(&[3, 1]), 2, &opts).unwrap());
        assert!(sign_dual_check(&p(&[4]), 3, &opts).unwrap());
        assert!(sign_dual_check(&p(&[4]), 2, &opts).unwrap());
    }
}
