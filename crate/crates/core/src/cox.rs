//! Cox presentation data of a stacky fan.
//!
//! The ray vectors define `𝔾_m^N → T`, `e_i ↦ β_i`. Its kernel `L` is
//! described through its character group `Z^N / B·V`: the free rank is
//! `N - rank(B)` and the torsion is given by the invariant factors of `B`.
//! Works for any fan in `Z^r`, chamber-supported or not.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::IMat;
use crate::polyhedral::combinations;
use crate::snf::{hermite_rows, smith_normal_form};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxData {
    pub n_rays: usize,
    pub rank: usize,
    /// `N x r`, row `i` is `β_i`.
    pub matrix: IMat,
    pub matrix_rank: usize,
    pub free_rank: usize,
    pub invariant_factors: Vec<i64>,
    /// Basis of the cocharacter lattice of `L`: integer relations among the
    /// ray vectors, in Hermite normal form.
    pub kernel_basis: IMat,
    /// `left * matrix * right` is diagonal.
    pub left: IMat,
    pub right: IMat,
    /// The ray vectors span `Λ ⊗ Q`.
    pub exact_at_t: bool,
}

/// Stabilizer of a point stratum: `(free rank, torsion invariant factors)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Stabilizer {
    pub free_rank: usize,
    pub invariant_factors: Vec<i64>,
}

impl Stabilizer {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn torsion_order(&self) -> i64 {
        self.invariant_factors.iter().product()
    }

    /// Necessary condition for `self` to embed in `other`.
    pub fn fits_in(&self, other: &Stabilizer) -> bool {
        self.free_rank < other.free_rank
            || (self.free_rank == other.free_rank && other.torsion_order() % self.torsion_order() == 0)
    }
}

impl CoxData {
    pub fn from_rays(rank: usize, rays: &[Vec<i64>]) -> Result<Self> {
        for (i, v) in rays.iter().enumerate() {
            if v.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: v.len() });
            }
            if v.iter().all(|&x| x == 0) {
                return Err(Error::InvalidFan(format!("ray vector {i} is zero")));
            }
        }
        let n = rays.len();
        let matrix: IMat = rays.to_vec();
        let snf = smith_normal_form(&matrix, rank)?;
        let kernel_rows: IMat = snf.left[snf.rank..].to_vec();
        let kernel_basis = hermite_rows(&kernel_rows, n)?;
        Ok(CoxData {
            n_rays: n,
            rank,
            matrix_rank: snf.rank,
            free_rank: n - snf.rank,
            invariant_factors: snf.torsion(),
            kernel_basis,
            left: snf.left,
            right: snf.right,
            exact_at_t: snf.rank == rank,
            matrix,
        })
    }

    pub fn from_fan(fan: &Fan) -> Result<Self> {
        CoxData::from_rays(fan.ambient(), fan.ray_vectors())
    }

    /// Subgroup of `L` fixing a point whose zero coordinates are exactly
    /// `vanishing`: the kernel of the rows of `B` indexed by it.
    pub fn stabilizer_of(&self, vanishing: &[usize]) -> Result<Stabilizer> {
        let rows: IMat = vanishing
            .iter()
            .map(|&i| self.matrix.get(i).cloned().ok_or(Error::IndexOutOfRange { index: i, count: self.n_rays }))
            .collect::<Result<_>>()?;
        let snf = smith_normal_form(&rows, self.rank)?;
        Ok(Stabilizer { free_rank: rows.len() - snf.rank, invariant_factors: snf.torsion() })
    }
}

/// `S` may vanish iff it is contained in the rays of one maximal cone.
pub fn vanishing_allowed(fan: &Fan, vanishing: &[usize]) -> bool {
    fan.maximal_cones().iter().any(|c| vanishing.iter().all(|i| c.contains(i)))
}

/// Inclusion-minimal forbidden vanishing sets, sorted by size then
/// lexicographically.
pub fn irrelevant_collections(fan: &Fan) -> Vec<Vec<usize>> {
    let n = fan.n_rays();
    let mut out = Vec::new();
    for k in 1..=n {
        for s in combinations(n, k) {
            if vanishing_allowed(fan, &s) {
                continue;
            }
            let minimal = (0..s.len()).all(|drop| {
                let sub: Vec<usize> = s.iter().enumerate().filter(|(j, _)| *j != drop).map(|(_, &x)| x).collect();
                vanishing_allowed(fan, &sub)
            });
            if minimal {
                out.push(s);
            }
        }
    }
    out
}

pub fn stratum_stabilizer(cox: &CoxData, fan: &Fan, vanishing: &[usize]) -> Result<Stabilizer> {
    if !vanishing_allowed(fan, vanishing) {
        return Err(Error::VanishingNotAllowed(vanishing.to_vec()));
    }
    cox.stabilizer_of(vanishing)
}

/// Dimension bookkeeping of `(𝔸⁰_β × T) / 𝔾_β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDims {
    pub affine_dim: usize,
    pub torus_dim: usize,
    pub group_dim: usize,
    pub quotient_dim: usize,
    /// The classical presentation `𝔸⁰_β / L` also applies.
    pub classical_applies: bool,
}

pub fn equivariant_quotient_dims(cox: &CoxData) -> QuotientDims {
    QuotientDims {
        affine_dim: cox.n_rays,
        torus_dim: cox.rank,
        group_dim: cox.n_rays,
        quotient_dim: cox.n_rays + cox.rank - cox.n_rays,
        classical_applies: cox.exact_at_t,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GitFlags {
    pub applicable: bool,
    pub semistable_equals_stable: bool,
}

pub fn git_flags(fan: &Fan) -> Result<GitFlags> {
    let mut simplicial = true;
    for i in 0..fan.maximal_cones().len() {
        simplicial &= fan.maximal_cone(i)?.is_simplicial();
    }
    Ok(GitFlags { applicable: fan.is_polar()?, semistable_equals_stable: simplicial })
}

/// Stabilizers of every allowed vanishing set, keyed by the set.
pub fn all_stabilizers(cox: &CoxData, fan: &Fan) -> Result<Vec<(Vec<usize>, Stabilizer)>> {
    let mut allowed: Vec<Vec<usize>> = Vec::new();
    for c in fan.maximal_cones() {
        for k in 0..=c.len() {
            for s in combinations(c.len(), k) {
                allowed.push(s.iter().map(|&j| c[j]).collect());
            }
        }
    }
    allowed.sort();
    allowed.dedup();
    allowed.into_iter().map(|s| cox.stabilizer_of(&s).map(|st| (s, st))).collect()
}
