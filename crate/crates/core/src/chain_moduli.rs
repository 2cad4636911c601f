//! Splitting types of framed bundle chains and their stability.
//!
//! A splitting type is a tuple of cocharacters, one per node of the chain,
//! taken up to the diagonal Weyl action. It is stable for a stacky fan `Σ`
//! when one Weyl element carries it onto distinct ray vectors of a single
//! cone of `Σ`, listed in the fan's order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyhedral::combinations;
use crate::rational::IVec;
use crate::root_datum::{RootDatum, WeylElement};
use crate::stacky_fan::{orbit_poset, OrbitPoset, StackClassification, StackyFan};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SplittingType {
    pub entries: Vec<IVec>,
}

impl SplittingType {
    pub fn new(entries: Vec<IVec>) -> Self {
        SplittingType { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entrywise action of a Weyl element.
    pub fn act(&self, w: &WeylElement) -> SplittingType {
        SplittingType { entries: self.entries.iter().map(|e| w.act(e)).collect() }
    }

    fn check(&self, rd: &RootDatum) -> Result<()> {
        for e in &self.entries {
            if e.len() != rd.rank() {
                return Err(Error::DimensionMismatch { expected: rd.rank(), got: e.len() });
            }
        }
        Ok(())
    }
}

/// Cocharacters at the fixed points `p_0 = p_+, ..., p_n = p_-` of an
/// unframed equivariant chain of `n` lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivariantChainClass {
    pub fixed_point_weights: Vec<IVec>,
}

impl EquivariantChainClass {
    pub fn new(fixed_point_weights: Vec<IVec>) -> Result<Self> {
        if fixed_point_weights.len() < 2 {
            return Err(Error::InvalidFan("an equivariant chain has at least two fixed points".into()));
        }
        Ok(EquivariantChainClass { fixed_point_weights })
    }

    /// The framed chain with the given node weights: zero at both ends.
    pub fn framed(st: &SplittingType, rank: usize) -> Self {
        let zero = vec![0; rank];
        let mut w = vec![zero.clone()];
        w.extend(st.entries.iter().cloned());
        w.push(zero);
        EquivariantChainClass { fixed_point_weights: w }
    }

    /// Clutching cocharacter of each line, from `p_+` towards `p_-`.
    pub fn clutchings(&self) -> Vec<IVec> {
        self.fixed_point_weights.windows(2).map(|p| clutching(&p[0], &p[1])).collect()
    }

    /// The node weights, dropping the two endpoints.
    pub fn splitting_type(&self) -> SplittingType {
        let n = self.fixed_point_weights.len();
        SplittingType::new(self.fixed_point_weights[1..n - 1].to_vec())
    }
}

/// `ρ₊ − ρ₋`; the line bundle is trivial iff this vanishes.
pub fn clutching(rho_plus: &[i64], rho_minus: &[i64]) -> IVec {
    rho_plus.iter().zip(rho_minus).map(|(a, b)| a - b).collect()
}

/// Lexicographically smallest tuple in the diagonal Weyl orbit.
pub fn canonicalize(rd: &RootDatum, st: &SplittingType) -> Result<SplittingType> {
    st.check(rd)?;
    Ok(rd.weyl_group()?.iter().map(|w| st.act(w)).min().expect("group contains the identity"))
}

/// Every `w` moving all entries into the dominant chamber.
pub fn same_chamber_witnesses(rd: &RootDatum, st: &SplittingType) -> Result<Vec<WeylElement>> {
    st.check(rd)?;
    let mut out = Vec::new();
    for w in rd.weyl_group()? {
        if st.entries.iter().all(|e| rd.is_dominant(&w.act(e)).unwrap_or(false)) {
            out.push(w.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityWitness {
    pub word: Vec<usize>,
    /// Index of a maximal cone containing the named rays.
    pub cone: usize,
    pub ray_indices: Vec<usize>,
}

impl StabilityWitness {
    /// Re-checks by substitution.
    pub fn verify(&self, st: &SplittingType, fan: &StackyFan) -> bool {
        let Ok(w) = fan.root_datum().element_from_word(&self.word) else { return false };
        let Some(cone) = fan.maximal_cones().get(self.cone) else { return false };
        self.ray_indices.len() == st.len()
            && st
                .entries
                .iter()
                .zip(&self.ray_indices)
                .all(|(e, &i)| fan.ray_vectors().get(i) == Some(&w.act(e)) && cone.contains(&i))
            && self.ray_indices.windows(2).all(|p| fan.position(p[0]) < fan.position(p[1]))
    }
}

/// Furthest test reached by the best Weyl element, in order of the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Instability {
    /// No Weyl element puts every entry in the dominant chamber.
    Chamber,
    /// Some entry is not a ray vector.
    NotRayVectors,
    /// Two entries name the same ray vector.
    Repeated,
    /// No single cone contains all named rays.
    Cone,
    /// The rays occur out of the chosen order.
    Order,
}

impl Instability {
    pub fn as_str(self) -> &'static str {
        match self {
            Instability::Chamber => "chamber",
            Instability::NotRayVectors => "not_ray_vectors",
            Instability::Repeated => "repeated",
            Instability::Cone => "cone",
            Instability::Order => "order",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable(StabilityWitness),
    Unstable(Instability),
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::Stable(_))
    }

    pub fn witness(&self) -> Option<&StabilityWitness> {
        match self {
            Stability::Stable(w) => Some(w),
            Stability::Unstable(_) => None,
        }
    }
}

/// Brute force over the Weyl group in breadth-first order.
pub fn is_stable(st: &SplittingType, fan: &StackyFan) -> Result<Stability> {
    let rd = fan.root_datum();
    st.check(rd)?;
    if st.is_empty() {
        return Ok(Stability::Stable(StabilityWitness { word: vec![], cone: 0, ray_indices: vec![] }));
    }
    let mut furthest = Instability::Chamber;
    for w in rd.weyl_group()? {
        let images: Vec<IVec> = st.entries.iter().map(|e| w.act(e)).collect();
        if !images.iter().all(|v| rd.is_dominant(v).unwrap_or(false)) {
            continue;
        }
        let found: Option<Vec<usize>> =
            images.iter().map(|v| fan.ray_vectors().iter().position(|b| b == v)).collect();
        let Some(idx) = found else {
            furthest = furthest.max(Instability::NotRayVectors);
            continue;
        };
        if BTreeSet::from_iter(idx.iter()).len() != idx.len() {
            furthest = furthest.max(Instability::Repeated);
            continue;
        }
        let Some(cone) = fan.maximal_cones().iter().position(|c| idx.iter().all(|i| c.contains(i))) else {
            furthest = furthest.max(Instability::Cone);
            continue;
        };
        if !idx.windows(2).all(|p| fan.position(p[0]) < fan.position(p[1])) {
            furthest = furthest.max(Instability::Order);
            continue;
        }
        return Ok(Stability::Stable(StabilityWitness { word: w.word().to_vec(), cone, ray_indices: idx }));
    }
    Ok(Stability::Unstable(furthest))
}

/// All stable classes: for each subset of the rays of some maximal cone,
/// the tuple of its ray vectors in the fan's order. Sorted by length, then
/// lexicographically; duplicates across cones removed.
pub fn enumerate_stable(fan: &StackyFan) -> Vec<SplittingType> {
    let mut out: BTreeSet<(usize, SplittingType)> = BTreeSet::new();
    for cone in fan.maximal_cones() {
        let mut ordered = cone.clone();
        ordered.sort_by_key(|&i| fan.position(i));
        for k in 0..=ordered.len() {
            for subset in combinations(ordered.len(), k) {
                let entries: Vec<IVec> = subset.iter().map(|&j| fan.ray_vectors()[ordered[j]].clone()).collect();
                out.insert((k, SplittingType::new(entries)));
            }
        }
    }
    if out.is_empty() {
        out.insert((0, SplittingType::default()));
    }
    out.into_iter().map(|(_, st)| st).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableClass {
    pub entries: Vec<IVec>,
    pub witness: StabilityWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliReport {
    /// `"group"`, `"deligne_mumford"` or `"artin_good_moduli"`.
    pub kind: String,
    pub classification: StackClassification,
    pub coarse_orbits: OrbitPoset,
    pub stable_classes: Vec<StableClass>,
    pub n_cones: usize,
    pub n_orbits: usize,
    pub n_stable: usize,
}

pub fn moduli_report(fan: &StackyFan) -> Result<ModuliReport> {
    let classification = fan.classify()?;
    let coarse_orbits = orbit_poset(&fan.apply_longest()?)?;
    let mut stable_classes = Vec::new();
    for st in enumerate_stable(fan) {
        match is_stable(&st, fan)? {
            Stability::Stable(witness) => stable_classes.push(StableClass { entries: st.entries, witness }),
            Stability::Unstable(r) => {
                return Err(Error::InvalidFan(format!("census class {:?} fails stability ({})", st.entries, r.as_str())))
            }
        }
    }
    let kind = if fan.maximal_cones().iter().all(|c| c.is_empty()) {
        "group"
    } else if classification.dm_tame {
        "deligne_mumford"
    } else {
        "artin_good_moduli"
    };
    Ok(ModuliReport {
        kind: kind.into(),
        n_cones: fan.fan().all_cones()?.len(),
        n_orbits: coarse_orbits.len(),
        n_stable: stable_classes.len(),
        classification,
        coarse_orbits,
        stable_classes,
    })
}
