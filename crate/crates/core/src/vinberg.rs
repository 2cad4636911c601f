//! Lattice data of the Vinberg monoid of a reductive group.
//!
//! Characters of the enhanced group are pairs `(λ, μ) ∈ V²` with
//! `μ - λ = Σ m_i α_i`, `m_i ∈ Z`. The cone `Q_G` asks `m_i >= 0`; the
//! grading support of the coordinate ring additionally asks a dominance
//! condition, selected by [`Dominance`].

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg;
use crate::rational::{q_to_i64, to_qvec, IVec, QVec};
use crate::root_datum::RootDatum;

/// Which entries of `(λ, μ)` must be dominant weights.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    #[default]
    Lambda,
    Mu,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VinbergQuery {
    pub in_lattice: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<IVec>,
    #[serde(rename = "in_QG")]
    pub in_qg: bool,
    pub in_support: bool,
}

#[derive(Clone, Debug)]
pub struct VinbergLatticeData {
    rd: RootDatum,
    dominance: Dominance,
}

impl VinbergLatticeData {
    pub fn new(rd: RootDatum) -> Self {
        VinbergLatticeData { rd, dominance: Dominance::default() }
    }

    pub fn with_dominance(rd: RootDatum, dominance: Dominance) -> Self {
        VinbergLatticeData { rd, dominance }
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn semisimple_rank(&self) -> usize {
        self.rd.semisimple_rank()
    }

    pub fn enhanced_rank(&self) -> usize {
        2 * self.rd.rank()
    }

    /// Integer coefficients of `μ - λ` in the simple roots, if they exist.
    pub fn enh_lattice_member(&self, lambda: &[i64], mu: &[i64]) -> Result<Option<IVec>> {
        if lambda.len() != self.rd.rank() || mu.len() != self.rd.rank() {
            return Err(Error::DimensionMismatch { expected: self.rd.rank(), got: lambda.len().max(mu.len()) });
        }
        let diff: IVec = mu.iter().zip(lambda).map(|(a, b)| a - b).collect();
        let Some(coeffs) = self.rd.root_coordinates(&diff)? else { return Ok(None) };
        Ok(coeffs.iter().map(q_to_i64).collect())
    }

    pub fn in_qg(&self, lambda: &[i64], mu: &[i64]) -> Result<(bool, Option<IVec>)> {
        let m = self.enh_lattice_member(lambda, mu)?;
        Ok((m.as_ref().is_some_and(|m| m.iter().all(|&x| x >= 0)), m))
    }

    pub fn in_sg_support(&self, lambda: &[i64], mu: &[i64]) -> Result<bool> {
        let (in_qg, _) = self.in_qg(lambda, mu)?;
        if !in_qg {
            return Ok(false);
        }
        Ok(match self.dominance {
            Dominance::Lambda => self.rd.is_dominant_weight(lambda)?,
            Dominance::Mu => self.rd.is_dominant_weight(mu)?,
            Dominance::Both => self.rd.is_dominant_weight(lambda)? && self.rd.is_dominant_weight(mu)?,
        })
    }

    pub fn query(&self, lambda: &[i64], mu: &[i64]) -> Result<VinbergQuery> {
        let (in_qg, m) = self.in_qg(lambda, mu)?;
        Ok(VinbergQuery { in_lattice: m.is_some(), m, in_qg, in_support: self.in_sg_support(lambda, mu)? })
    }
}

/// Toric data of the abelianization `𝔸`: the cone spanned by the
/// fundamental coweights of the adjoint quotient, in their own coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianizationData {
    pub dim: usize,
    pub rays: Vec<IVec>,
    pub determinant: i64,
    pub smooth: bool,
}

pub fn abelianization_data(rd: &RootDatum) -> Result<AbelianizationData> {
    let s = rd.semisimple_rank();
    // pairings <α_i, ω_j^∨> express the rays in the adjoint cocharacter basis
    let coweights = rd.fundamental_coweights();
    let mut rays = Vec::with_capacity(s);
    let mut rows: Vec<QVec> = Vec::with_capacity(s);
    for w in &coweights {
        let row: QVec = rd.simple_roots().iter().map(|a| crate::rational::dot(&to_qvec(a), w)).collect();
        let ints: Option<IVec> = row.iter().map(q_to_i64).collect();
        rays.push(ints.ok_or_else(|| Error::InvalidRootDatum("fundamental coweights pair non-integrally".into()))?);
        rows.push(row);
    }
    let det = if s == 0 { 1 } else { q_to_i64(&linalg::det(&rows)).unwrap_or(0) };
    Ok(AbelianizationData { dim: s, rays, determinant: det, smooth: det.abs() == 1 })
}

/// Exponents `<α_j, β>` of the monoid map `𝔸¹ → 𝔸` defined by a dominant
/// ray vector.
pub fn beta_to_a(rd: &RootDatum, beta: &[i64]) -> Result<IVec> {
    let p = rd.root_pairings(beta)?;
    if p.iter().any(|x| x.is_negative()) {
        return Err(Error::NotDominant(beta.to_vec()));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionLedger {
    pub n_rays: usize,
    pub rank: usize,
    pub semisimple_rank: usize,
    pub n_positive_roots: usize,
    pub dim_g: usize,
    pub dim_g_enh: usize,
    pub dim_s_g: usize,
    pub dim_s_g_beta: usize,
    pub stack_dim: usize,
}

pub fn cox_vinberg_dims(rd: &RootDatum, n_rays: usize) -> Result<DimensionLedger> {
    let pos = rd.positive_roots()?.len();
    let r = rd.rank();
    let s = rd.semisimple_rank();
    let dim_g = r + 2 * pos;
    // (G x T) / Z_G with dim Z_G = r - s
    let dim_g_enh = dim_g + s;
    let dim_s_g = dim_g_enh;
    let dim_s_g_beta = n_rays + dim_s_g - s;
    Ok(DimensionLedger {
        n_rays,
        rank: r,
        semisimple_rank: s,
        n_positive_roots: pos,
        dim_g,
        dim_g_enh,
        dim_s_g,
        dim_s_g_beta,
        stack_dim: dim_s_g_beta - n_rays,
    })
}

pub fn cox_vinberg_dims_for_fan(rd: &RootDatum, fan: &Fan) -> Result<DimensionLedger> {
    cox_vinberg_dims(rd, fan.n_rays())
}
