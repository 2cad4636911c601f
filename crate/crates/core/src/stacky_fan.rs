//! Stacky fans in the dominant Weyl chamber.
//!
//! A [`StackyFan`] couples a root datum with a fan in `Λ` whose support lies
//! in the dominant chamber, one chosen ray vector per ray, and a total order
//! on the ray vectors. This module classifies the resulting compactification
//! (tame, proper, polar, convex Weyl-saturated support), builds the fan
//! `w₀Σ` of the coarse space, and completes a single cone to a polar fan
//! whose Weyl saturation has convex support.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{Fan, Issue, SupportFunction, ValidationReport};
use crate::linalg;
use crate::polyhedral::{Cone, Inequality, Polyhedron, Space};
use crate::rational::{dot, primitive_i, q, to_qvec, IVec, Q, QVec};
use crate::root_datum::RootDatum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFan {
    rd: RootDatum,
    fan: Fan,
    ordering: Vec<usize>,
}

/// JSON form: `{"ray_vectors": [...], "maximal_cones": [...], "ordering": [...]}`.
/// A missing ordering means the listed order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackyFanJson {
    pub ray_vectors: Vec<IVec>,
    pub maximal_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeFlags {
    pub rays: Vec<usize>,
    pub simplicial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackClassification {
    pub cones: Vec<ConeFlags>,
    pub proper: bool,
    pub polar: bool,
    pub w_support_convex: bool,
    pub dm_tame: bool,
    pub artin_good_moduli: bool,
    pub git_semiprojective: bool,
}

/// Cones of a fan ordered by the face relation. `covers` lists pairs
/// `(face, cone)` where `face` is a facet of `cone`; the orbit of `cone`
/// lies in the closure of the orbit of `face`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPoset {
    pub cones: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
    pub counts_by_dim: Vec<usize>,
    pub covers: Vec<(usize, usize)>,
}

impl OrbitPoset {
    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }
}

/// Result of completing a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub fan: StackyFan,
    /// Ray indices of the input cone in the output fan.
    pub cone_rays: Vec<usize>,
    pub epsilon: Q,
    pub delta: Q,
    /// Ray vectors adjoined to make the input full-dimensional.
    pub adjoined: Vec<QVec>,
    /// Some input ray vector was not primitive.
    pub non_primitive_input: bool,
}

/// The dominant chamber `{λ : <α_i, λ> >= 0}` as a cone in `Λ`.
pub fn dominant_chamber(rd: &RootDatum) -> Cone {
    Cone::from_h(Space::Cocharacter, rd.rank(), rd.simple_roots(), &[]).expect("simple roots have the ambient length")
}

impl StackyFan {
    pub fn new(rd: RootDatum, ray_vectors: Vec<IVec>, maximal_cones: Vec<Vec<usize>>, ordering: Option<Vec<usize>>) -> Result<Self> {
        let n = ray_vectors.len();
        for v in &ray_vectors {
            if v.len() != rd.rank() {
                return Err(Error::DimensionMismatch { expected: rd.rank(), got: v.len() });
            }
        }
        for c in &maximal_cones {
            if let Some(&i) = c.iter().find(|&&i| i >= n) {
                return Err(Error::IndexOutOfRange { index: i, count: n });
            }
        }
        let ordering = ordering.unwrap_or_else(|| (0..n).collect());
        let mut sorted = ordering.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidFan(format!("ordering {ordering:?} is not a permutation of 0..{n}")));
        }
        let fan = Fan::new(rd.rank(), ray_vectors, maximal_cones);
        Ok(StackyFan { rd, fan, ordering })
    }

    pub fn from_json(rd: RootDatum, json: &StackyFanJson) -> Result<Self> {
        StackyFan::new(rd, json.ray_vectors.clone(), json.maximal_cones.clone(), json.ordering.clone())
    }

    pub fn to_json(&self) -> StackyFanJson {
        StackyFanJson {
            ray_vectors: self.fan.ray_vectors().to_vec(),
            maximal_cones: self.fan.maximal_cones().to_vec(),
            ordering: Some(self.ordering.clone()),
        }
    }

    /// The fan `{0}`.
    pub fn trivial(rd: RootDatum) -> Self {
        StackyFan::new(rd, vec![], vec![vec![]], None).expect("trivial fan")
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn ray_vectors(&self) -> &[IVec] {
        self.fan.ray_vectors()
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        self.fan.maximal_cones()
    }

    /// Ray indices from smallest to largest.
    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    /// Position of ray `i` in the total order.
    pub fn position(&self, i: usize) -> usize {
        self.ordering.iter().position(|&k| k == i).expect("ordering is a permutation")
    }

    pub fn with_ordering(&self, ordering: Vec<usize>) -> Result<Self> {
        StackyFan::new(self.rd.clone(), self.ray_vectors().to_vec(), self.maximal_cones().to_vec(), Some(ordering))
    }

    /// Fan axioms plus the chamber condition on ray vectors.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.fan.validate();
        for (i, v) in self.ray_vectors().iter().enumerate() {
            if !self.rd.is_dominant(v).unwrap_or(false) {
                rep.issues.push(Issue {
                    kind: "not_dominant".into(),
                    cones: vec![],
                    rays: vec![i],
                    detail: "ray vector lies outside the dominant chamber".into(),
                });
            }
        }
        rep.valid = rep.issues.is_empty();
        rep
    }

    pub fn support_is_full_chamber(&self) -> Result<bool> {
        self.fan.support_equals(&dominant_chamber(&self.rd))
    }

    /// `w₀Σ`: every ray vector moved by the longest element.
    pub fn apply_longest(&self) -> Result<Fan> {
        let w0 = self.rd.longest_element()?;
        Ok(self.fan.transform(w0.matrix()))
    }

    pub fn orbit_poset(&self) -> Result<OrbitPoset> {
        orbit_poset(&self.fan)
    }

    pub fn polar_certificate(&self) -> Result<Option<SupportFunction>> {
        self.fan.polar_certificate()
    }

    pub fn is_polar(&self) -> Result<bool> {
        self.fan.is_polar()
    }

    /// `WΣ = {wσ}`: ray vectors are the distinct images `w·β_i`.
    pub fn weyl_saturation(&self) -> Result<Fan> {
        let mut index: BTreeMap<IVec, usize> = BTreeMap::new();
        let mut rays: Vec<IVec> = Vec::new();
        let mut cones: BTreeSet<Vec<usize>> = BTreeSet::new();
        for w in self.rd.weyl_group()? {
            for cone in self.maximal_cones() {
                let mut img: Vec<usize> = cone
                    .iter()
                    .map(|&i| {
                        let v = w.act(&self.ray_vectors()[i]);
                        *index.entry(v.clone()).or_insert_with(|| {
                            rays.push(v);
                            rays.len() - 1
                        })
                    })
                    .collect();
                img.sort_unstable();
                cones.insert(img);
            }
        }
        // canonical order: rays sorted, cones reindexed and sorted
        let mut perm: Vec<usize> = (0..rays.len()).collect();
        perm.sort_by(|&a, &b| rays[a].cmp(&rays[b]));
        let mut new_index = vec![0; rays.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted_rays: Vec<IVec> = perm.iter().map(|&i| rays[i].clone()).collect();
        let mut cones: Vec<Vec<usize>> = cones
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|i| new_index[i]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        cones.sort();
        Ok(Fan::new(self.rd.rank(), sorted_rays, cones))
    }

    /// True iff `WΣ` is a fan whose support is convex. Evaluated relative
    /// to the span of the support, so lower-dimensional supports are decided
    /// rather than refused.
    pub fn w_support_convex(&self) -> Result<bool> {
        let wf = self.weyl_saturation()?;
        if !wf.validate().valid {
            return Ok(false);
        }
        wf.has_convex_support()
    }

    pub fn classify(&self) -> Result<StackClassification> {
        let valid = self.validate().valid;
        let mut cones = Vec::new();
        for idx in self.maximal_cones() {
            let c = self.fan.cone_of(idx)?;
            cones.push(ConeFlags { rays: idx.clone(), simplicial: c.is_simplicial() });
        }
        let polar = self.is_polar()?;
        let w_support_convex = self.w_support_convex()?;
        Ok(StackClassification {
            dm_tame: cones.iter().all(|c| c.simplicial),
            cones,
            proper: self.support_is_full_chamber()?,
            polar,
            w_support_convex,
            artin_good_moduli: valid,
            git_semiprojective: polar && w_support_convex,
        })
    }
}

pub fn orbit_poset(fan: &Fan) -> Result<OrbitPoset> {
    let cones = fan.all_cones()?;
    let dims: Vec<usize> = cones.iter().map(|c| fan.cone_of(c).map(|k| k.dim())).collect::<Result<_>>()?;
    let mut counts_by_dim = vec![0; fan.ambient() + 1];
    for &d in &dims {
        counts_by_dim[d] += 1;
    }
    let mut covers = Vec::new();
    for (a, ca) in cones.iter().enumerate() {
        for (b, cb) in cones.iter().enumerate() {
            if dims[b] == dims[a] + 1 && ca.iter().all(|i| cb.contains(i)) {
                covers.push((a, b));
            }
        }
    }
    Ok(OrbitPoset { cones, dims, counts_by_dim, covers })
}

const DELTA_BUDGET: usize = 20;
const EPSILON_BUDGET: usize = 30;

/// Extends `σ` to a polar stacky fan `Σ` in the dominant chamber with
/// `σ ∈ Σ` and `WΣ` of convex support.
///
/// `σ` is made full-dimensional by adjoining perturbed fundamental coweights
/// (and central directions), `v̄` is the sum of the primitive generators of
/// the dual of the enlarged cone, moved into the open dominant chamber of
/// `V` if necessary, and `P = (v̄ - σ_full^∨) ∩ {<x, α_i^∨> <= (1+ε)<v̄, α_i^∨>}`.
/// `Σ` is the normal fan of `P` cut by the chamber. `ε` is halved until the
/// combinatorial type repeats and every postcondition holds.
pub fn complete_cone(rd: &RootDatum, ray_vectors: &[IVec]) -> Result<Completion> {
    let r = rd.rank();
    for v in ray_vectors {
        if v.len() != r {
            return Err(Error::DimensionMismatch { expected: r, got: v.len() });
        }
        if !rd.is_dominant(v)? {
            return Err(Error::NotDominant(v.clone()));
        }
    }
    let sigma = Cone::new(Space::Cocharacter, r, ray_vectors)?;
    if !sigma.is_strongly_convex() {
        return Err(Error::InvalidCone("cone is not strongly convex".into()));
    }
    let prims: Vec<IVec> = ray_vectors.iter().map(|v| primitive_i(v)).collect();
    if ray_vectors.iter().any(|v| v.iter().all(|&x| x == 0)) {
        return Err(Error::InvalidCone("ray vectors must be nonzero".into()));
    }
    if prims.iter().any(|p| !sigma.rays().contains(p)) || BTreeSet::from_iter(prims.iter()).len() != prims.len() {
        return Err(Error::InvalidCone("ray vectors must span distinct extreme rays".into()));
    }
    let non_primitive_input = ray_vectors.iter().zip(&prims).any(|(v, p)| v != p);

    let (full, adjoined, delta) = full_dimensionalize(rd, &sigma)?;
    let vbar = choose_vbar(rd, &full)?;

    let mut previous: Option<(Vec<IVec>, Vec<BTreeSet<IVec>>)> = None;
    let mut epsilon = Q::one();
    let mut last_failure = String::from("no iteration ran");
    for _ in 0..=EPSILON_BUDGET {
        let attempt = chamber_normal_fan(rd, &full, &vbar, &epsilon);
        match attempt {
            Ok((rays, cones)) => {
                let signature = (rays.clone(), cones.clone());
                if previous.as_ref() == Some(&signature) {
                    match assemble(rd, ray_vectors, &prims, &sigma, &rays, &cones) {
                        Ok((fan, cone_rays)) => {
                            return Ok(Completion {
                                fan,
                                cone_rays,
                                epsilon,
                                delta,
                                adjoined,
                                non_primitive_input,
                            })
                        }
                        Err(e) => last_failure = e.to_string(),
                    }
                }
                previous = Some(signature);
            }
            Err(e) => {
                last_failure = e.to_string();
                previous = None;
            }
        }
        epsilon /= q(2);
    }
    Err(Error::CompletionFailed(format!("epsilon budget exhausted: {last_failure}")))
}

/// Adjoins `ω_j^∨ + δc` (then central directions `+ δc`) whenever the
/// candidate leaves the current span, checking that `σ` stays a face.
fn full_dimensionalize(rd: &RootDatum, sigma: &Cone) -> Result<(Cone, Vec<QVec>, Q)> {
    let r = rd.rank();
    let c = to_qvec(&sigma.relative_interior_point());
    let mut candidates: Vec<QVec> = rd.fundamental_coweights();
    candidates.extend(rd.central_directions().iter().map(|v| to_qvec(v)));
    let mut delta = Q::one();
    for _ in 0..=DELTA_BUDGET {
        let mut gens: Vec<QVec> = sigma.rays().iter().map(|v| to_qvec(v)).collect();
        let mut adjoined = Vec::new();
        for cand in &candidates {
            if linalg::rank(&gens, r) == r {
                break;
            }
            let v: QVec = cand.iter().zip(&c).map(|(a, b)| a + &delta * b).collect();
            let mut next = gens.clone();
            next.push(v.clone());
            if linalg::rank(&next, r) > linalg::rank(&gens, r) {
                gens = next;
                adjoined.push(v);
            }
        }
        let full = Cone::from_rational(Space::Cocharacter, r, &gens)?;
        if full.dim() == r && full.is_strongly_convex() && sigma.is_face_of(&full)? {
            return Ok((full, adjoined, delta));
        }
        delta /= q(2);
    }
    Err(Error::CompletionFailed("could not make the cone full-dimensional while keeping it a face".into()))
}

/// Sum of the primitive generators of `σ_full^∨`, shifted by a multiple of
/// `ρ = Σ ω_i` until `<v̄, α_i^∨> > 0` for every simple coroot.
fn choose_vbar(rd: &RootDatum, full: &Cone) -> Result<QVec> {
    let r = rd.rank();
    let mut vbar = vec![Q::zero(); r];
    for g in full.dual().generators() {
        for (a, b) in vbar.iter_mut().zip(g) {
            *a += q(*b);
        }
    }
    let rho: QVec = rd
        .fundamental_weights()
        .iter()
        .fold(vec![Q::zero(); r], |acc, w| acc.iter().zip(w).map(|(a, b)| a + b).collect());
    let pair = |v: &QVec| -> Vec<Q> { rd.simple_coroots().iter().map(|c| dot(v, &to_qvec(c))).collect() };
    let mut k = 0i64;
    loop {
        let v: QVec = vbar.iter().zip(&rho).map(|(a, b)| a + q(k) * b).collect();
        if pair(&v).iter().all(|p| p.is_positive()) {
            return Ok(v);
        }
        k += 1;
        if k > 1_000_000 {
            return Err(Error::CompletionFailed("no strictly dominant shift found".into()));
        }
    }
}

/// Rays and maximal cones (as sets of primitive ray vectors) of the normal
/// fan of `P` intersected with the dominant chamber.
fn chamber_normal_fan(rd: &RootDatum, full: &Cone, vbar: &QVec, epsilon: &Q) -> Result<(Vec<IVec>, Vec<BTreeSet<IVec>>)> {
    let r = rd.rank();
    let mut ineqs = Vec::new();
    for g in full.rays() {
        let gq = to_qvec(g);
        ineqs.push(Inequality { bound: dot(vbar, &gq), normal: gq });
    }
    let scale = Q::one() + epsilon;
    for c in rd.simple_coroots() {
        let cq = to_qvec(c);
        ineqs.push(Inequality { bound: &scale * dot(vbar, &cq), normal: cq });
    }
    let p = Polyhedron::new(Space::Character, r, ineqs);
    let nf = p.normal_fan()?;
    let chamber = dominant_chamber(rd);
    let mut cones: BTreeSet<BTreeSet<IVec>> = BTreeSet::new();
    for idx in &nf.maximal_cones {
        let gens: Vec<IVec> = idx.iter().map(|&i| nf.rays[i].clone()).collect();
        let normal_cone = Cone::new(Space::Cocharacter, r, &gens)?;
        let piece = normal_cone.intersect(&chamber)?;
        if piece.dim() == r {
            cones.insert(piece.rays().iter().cloned().collect());
        }
    }
    let rays: BTreeSet<IVec> = cones.iter().flatten().cloned().collect();
    Ok((rays.into_iter().collect(), cones.into_iter().collect()))
}

/// Builds the stacky fan (input ray vectors first, then new primitive rays
/// in sorted order) and verifies every postcondition.
fn assemble(
    rd: &RootDatum,
    ray_vectors: &[IVec],
    prims: &[IVec],
    sigma: &Cone,
    rays: &[IVec],
    cones: &[BTreeSet<IVec>],
) -> Result<(StackyFan, Vec<usize>)> {
    let mut vectors: Vec<IVec> = ray_vectors.to_vec();
    let mut index: BTreeMap<IVec, usize> = prims.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    for ray in rays {
        if !index.contains_key(ray) {
            index.insert(ray.clone(), vectors.len());
            vectors.push(ray.clone());
        }
    }
    let maximal: Vec<Vec<usize>> = cones
        .iter()
        .map(|c| {
            let mut v: Vec<usize> = c.iter().map(|ray| index[ray]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    let fan = StackyFan::new(rd.clone(), vectors, maximal, None)?;
    let report = fan.validate();
    if !report.valid {
        return Err(Error::CompletionFailed(format!("output fan is invalid: {:?}", report.issues)));
    }
    let mut cone_rays: Vec<usize> = (0..prims.len()).collect();
    cone_rays.sort_unstable();
    let contains_sigma = prims.iter().all(|p| rays.contains(p))
        && fan.fan().all_cones()?.contains(&cone_rays)
        && fan.fan().cone_of(&cone_rays)? == *sigma;
    if !contains_sigma {
        return Err(Error::CompletionFailed("input cone is not a cone of the output".into()));
    }
    if !fan.is_polar()? {
        return Err(Error::CompletionFailed("output fan is not polar".into()));
    }
    if !fan.w_support_convex()? {
        return Err(Error::CompletionFailed("Weyl saturation has non-convex support".into()));
    }
    Ok((fan, cone_rays))
}
