//! Rational fans given by ray vectors and maximal cones.
//!
//! A fan here is a list of nonzero integer ray vectors, one per ray, and a
//! list of maximal cones, each an index set into the ray vectors. Cones are
//! materialized on demand as [`Cone`] values in `Λ`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, IMat};
use crate::lp::{self, Constraint, LpOutcome, Relation};
use crate::polyhedral::{Cone, Space};
use crate::rational::{dot_i, primitive_i, q, to_qvec, IVec, Q, QVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient: usize,
    ray_vectors: Vec<IVec>,
    maximal_cones: Vec<Vec<usize>>,
}

/// One violated fan invariant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Issue {
    pub kind: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub cones: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub rays: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    fn push(&mut self, kind: &str, cones: Vec<usize>, rays: Vec<usize>, detail: String) {
        self.issues.push(Issue { kind: kind.into(), cones, rays, detail });
    }
}

/// Certificate of polarity: a support function with values `h` on the ray
/// vectors and linear pieces `m` on the maximal cones, strictly convex by
/// `margin`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFunction {
    pub values: QVec,
    pub slopes: Vec<QVec>,
    pub margin: Q,
}

impl Fan {
    /// Stores the data as given; call [`Fan::validate`] before relying on
    /// the fan axioms. Maximal cones are normalized to sorted index lists.
    pub fn new(ambient: usize, ray_vectors: Vec<IVec>, maximal_cones: Vec<Vec<usize>>) -> Self {
        let maximal_cones = maximal_cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        Fan { ambient, ray_vectors, maximal_cones }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn ray_vectors(&self) -> &[IVec] {
        &self.ray_vectors
    }

    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.maximal_cones
    }

    pub fn n_rays(&self) -> usize {
        self.ray_vectors.len()
    }

    /// The cone spanned by the given ray indices.
    pub fn cone_of(&self, rays: &[usize]) -> Result<Cone> {
        let gens: Vec<IVec> = rays
            .iter()
            .map(|&i| {
                self.ray_vectors.get(i).cloned().ok_or(Error::IndexOutOfRange { index: i, count: self.ray_vectors.len() })
            })
            .collect::<Result<_>>()?;
        Cone::new(Space::Cocharacter, self.ambient, &gens)
    }

    pub fn maximal_cone(&self, i: usize) -> Result<Cone> {
        self.cone_of(&self.maximal_cones[i])
    }

    /// Checks every fan axiom and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::default();
        let n = self.ray_vectors.len();
        for (i, v) in self.ray_vectors.iter().enumerate() {
            if v.len() != self.ambient {
                rep.push("dimension", vec![], vec![i], format!("ray vector has length {}, expected {}", v.len(), self.ambient));
            } else if v.iter().all(|&x| x == 0) {
                rep.push("zero_ray_vector", vec![], vec![i], "ray vectors must be nonzero".into());
            }
        }
        for (c, cone) in self.maximal_cones.iter().enumerate() {
            if let Some(&bad) = cone.iter().find(|&&i| i >= n) {
                rep.push("index_out_of_range", vec![c], vec![bad], format!("cone refers to ray {bad} of {n}"));
            }
        }
        if !rep.issues.is_empty() {
            return rep;
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.ray_vectors[i] == self.ray_vectors[j] {
                    rep.push("duplicate_ray_vector", vec![], vec![i, j], "ray vectors must be distinct".into());
                } else if primitive_i(&self.ray_vectors[i]) == primitive_i(&self.ray_vectors[j]) {
                    rep.push("shared_ray", vec![], vec![i, j], "two ray vectors lie on the same ray".into());
                }
            }
        }
        let used: BTreeSet<usize> = self.maximal_cones.iter().flatten().copied().collect();
        for i in (0..n).filter(|i| !used.contains(i)) {
            rep.push("unused_ray", vec![], vec![i], "ray vector belongs to no cone".into());
        }
        let mut cones = Vec::with_capacity(self.maximal_cones.len());
        for (c, idx) in self.maximal_cones.iter().enumerate() {
            let cone = self.cone_of(idx).expect("indices checked");
            if !cone.is_strongly_convex() {
                rep.push("not_strongly_convex", vec![c], vec![], "cone contains a line".into());
            } else {
                for &i in idx {
                    let p = primitive_i(&self.ray_vectors[i]);
                    if !cone.rays().contains(&p) {
                        rep.push(
                            "ray_not_extreme",
                            vec![c],
                            vec![i],
                            "ray vector does not span an extreme ray of its cone".into(),
                        );
                    }
                }
            }
            cones.push(cone);
        }
        for a in 0..cones.len() {
            for b in a + 1..cones.len() {
                if self.maximal_cones[a] == self.maximal_cones[b] {
                    rep.push("duplicate_cone", vec![a, b], vec![], "maximal cone listed twice".into());
                    continue;
                }
                let (sa, sb) = (&self.maximal_cones[a], &self.maximal_cones[b]);
                if sa.iter().all(|i| sb.contains(i)) || sb.iter().all(|i| sa.contains(i)) {
                    rep.push("not_maximal", vec![a, b], vec![], "one listed cone is contained in another".into());
                    continue;
                }
                if !cones[a].is_strongly_convex() || !cones[b].is_strongly_convex() {
                    continue;
                }
                let common: Vec<usize> = sa.iter().filter(|i| sb.contains(i)).copied().collect();
                if self.separated_along(sa, sb, &common, &cones[a], &cones[b]) {
                    continue;
                }
                let expected = self.cone_of(&common).expect("indices checked");
                let meet = cones[a].intersect(&cones[b]).expect("same ambient");
                let ok = meet == expected
                    && expected.is_face_of(&cones[a]).unwrap_or(false)
                    && expected.is_face_of(&cones[b]).unwrap_or(false);
                if !ok {
                    rep.push(
                        "bad_intersection",
                        vec![a, b],
                        common,
                        "intersection is not the common face spanned by shared rays".into(),
                    );
                }
            }
        }
        rep.valid = rep.issues.is_empty();
        rep
    }

    /// Certifies `a ∩ b = cone(common)` with one hyperplane `u` from either
    /// H-rep, `u >= 0` on `a` and `u <= 0` on `b`. If only shared rays of `b`
    /// lie on `u`, then `b ∩ {u = 0}` is the face spanned by `common`, which
    /// is then the intersection; it remains to see it is a face of `a` (and
    /// symmetrically).
    fn separated_along(&self, sa: &[usize], sb: &[usize], common: &[usize], ca: &Cone, cb: &Cone) -> bool {
        let own = |c: &Cone| c.facet_normals().iter().chain(c.equations()).cloned().collect::<Vec<_>>();
        let mut candidates: Vec<IVec> = own(ca);
        candidates.extend(own(cb).into_iter().map(|u| u.iter().map(|x| -x).collect()));
        candidates.extend(ca.equations().iter().map(|u| u.iter().map(|x| -x).collect()));
        candidates.extend(cb.equations().iter().cloned());
        let face_of = |c: &Cone| common.is_empty() || self.cone_of(common).and_then(|f| f.is_face_of(c)).unwrap_or(false);
        for u in candidates {
            let vals = |idx: &[usize]| idx.iter().map(|&i| (i, dot_i(&u, &self.ray_vectors[i]))).collect::<Vec<_>>();
            let (va, vb) = (vals(sa), vals(sb));
            if va.iter().any(|&(_, v)| v < 0) || vb.iter().any(|&(_, v)| v > 0) {
                continue;
            }
            let strict = |v: &[(usize, i64)]| v.iter().all(|&(i, x)| x != 0 || common.contains(&i));
            match (strict(&va), strict(&vb)) {
                (true, true) => return true,
                (false, true) => return face_of(ca),
                (true, false) => return face_of(cb),
                (false, false) => {}
            }
        }
        false
    }

    /// Fan indices of the rays of a cone whose rays are all fan rays.
    pub fn ray_indices_of(&self, cone: &Cone) -> Vec<usize> {
        let lookup: BTreeMap<IVec, usize> =
            self.ray_vectors.iter().enumerate().map(|(i, v)| (primitive_i(v), i)).collect();
        let mut out: Vec<usize> = cone.rays().iter().filter_map(|r| lookup.get(r).copied()).collect();
        out.sort_unstable();
        out
    }

    /// Every cone of the fan as a sorted ray-index set, `{0}` included.
    /// Sorted by dimension, then lexicographically.
    pub fn all_cones(&self) -> Result<Vec<Vec<usize>>> {
        let mut all = BTreeSet::new();
        all.insert(vec![]);
        for idx in &self.maximal_cones {
            let cone = self.cone_of(idx)?;
            let local: Vec<usize> = cone
                .rays()
                .iter()
                .map(|r| idx.iter().copied().find(|&i| primitive_i(&self.ray_vectors[i]) == *r).expect("rays of a valid cone"))
                .collect();
            for face in cone.face_ray_sets()? {
                let mut f: Vec<usize> = face.iter().map(|&k| local[k]).collect();
                f.sort_unstable();
                all.insert(f);
            }
        }
        let mut out: Vec<Vec<usize>> = all.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Number of cones in each dimension `0..=ambient`.
    pub fn cone_counts_by_dim(&self) -> Result<Vec<usize>> {
        let mut counts = vec![0; self.ambient + 1];
        for c in self.all_cones()? {
            counts[self.cone_of(&c)?.dim()] += 1;
        }
        Ok(counts)
    }

    /// True iff the support of a valid fan equals `target`. Works relative
    /// to the linear span of `target`: every maximal cone must have the
    /// target's dimension and lie inside it, and every facet of a maximal
    /// cone must lie on the target's boundary or be shared by exactly two
    /// maximal cones.
    pub fn support_equals(&self, target: &Cone) -> Result<bool> {
        let d = target.dim();
        if self.maximal_cones.is_empty() {
            return Ok(false);
        }
        let cones: Vec<Cone> = (0..self.maximal_cones.len()).map(|i| self.maximal_cone(i)).collect::<Result<_>>()?;
        if cones.iter().any(|c| c.dim() != d || !target.contains_cone(c)) {
            return Ok(false);
        }
        if d == 0 {
            return Ok(true);
        }
        let boundary: Vec<QVec> = target.facet_normals().iter().map(|u| to_qvec(u)).collect();
        for (ci, cone) in cones.iter().enumerate() {
            for u in cone.facet_normals() {
                let facet_rays: Vec<usize> = self.maximal_cones[ci]
                    .iter()
                    .copied()
                    .filter(|&i| dot_i(u, &self.ray_vectors[i]) == 0)
                    .collect();
                let on_boundary = boundary.iter().any(|b| {
                    facet_rays.iter().all(|&i| crate::rational::dot(b, &to_qvec(&self.ray_vectors[i])).is_zero())
                });
                if on_boundary {
                    continue;
                }
                let sharing = self
                    .maximal_cones
                    .iter()
                    .enumerate()
                    .filter(|(k, other)| *k != ci && facet_rays.iter().all(|i| other.contains(i)))
                    .count();
                if sharing != 1 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The cone generated by all ray vectors.
    pub fn ray_hull(&self) -> Result<Cone> {
        Cone::new(Space::Cocharacter, self.ambient, &self.ray_vectors)
    }

    pub fn has_convex_support(&self) -> Result<bool> {
        self.support_equals(&self.ray_hull()?)
    }

    /// Decides whether a valid fan is the normal fan of a polyhedron. The
    /// support must be convex, and an exact LP must find `h`, `m_σ` with
    /// `<m_σ, β> = h_β` for `β` in `σ` and `<m_σ, β> + t <= h_β` otherwise,
    /// at positive margin `t`.
    pub fn polar_certificate(&self) -> Result<Option<SupportFunction>> {
        if !self.has_convex_support()? {
            return Ok(None);
        }
        let n = self.ray_vectors.len();
        let r = self.ambient;
        let mc = self.maximal_cones.len();
        // free variables h (n), m (mc * r), t (1); each split as x+ - x-
        let nfree = n + mc * r + 1;
        let col_h = |i: usize| i;
        let col_m = |s: usize, k: usize| n + s * r + k;
        let col_t = n + mc * r;
        let mut constraints = Vec::new();
        let mut push = |coeffs: Vec<(usize, i64)>, rel: Relation, rhs: Q| {
            let mut row = vec![Q::zero(); 2 * nfree];
            for (c, a) in coeffs {
                row[2 * c] += q(a);
                row[2 * c + 1] -= q(a);
            }
            constraints.push(Constraint { coeffs: row, rel, rhs });
        };
        for (s, cone) in self.maximal_cones.iter().enumerate() {
            for (i, beta) in self.ray_vectors.iter().enumerate() {
                let mut coeffs: Vec<(usize, i64)> = (0..r).map(|k| (col_m(s, k), beta[k])).collect();
                coeffs.push((col_h(i), -1));
                if cone.contains(&i) {
                    push(coeffs, Relation::Eq, Q::zero());
                } else {
                    coeffs.push((col_t, 1));
                    push(coeffs, Relation::Le, Q::zero());
                }
            }
        }
        push(vec![(col_t, 1)], Relation::Le, Q::one());
        let mut obj = vec![Q::zero(); 2 * nfree];
        obj[2 * col_t] = Q::one();
        obj[2 * col_t + 1] = -Q::one();
        match lp::maximize(&obj, &constraints) {
            LpOutcome::Optimal { value, x } if value.is_positive() => {
                let get = |c: usize| &x[2 * c] - &x[2 * c + 1];
                Ok(Some(SupportFunction {
                    values: (0..n).map(|i| get(col_h(i))).collect(),
                    slopes: (0..mc).map(|s| (0..r).map(|k| get(col_m(s, k))).collect()).collect(),
                    margin: value,
                }))
            }
            _ => Ok(None),
        }
    }

    pub fn is_polar(&self) -> Result<bool> {
        Ok(self.polar_certificate()?.is_some())
    }

    /// Applies an integer matrix to every ray vector.
    pub fn transform(&self, m: &IMat) -> Fan {
        Fan::new(self.ambient, self.ray_vectors.iter().map(|v| linalg::mat_vec_i(m, v)).collect(), self.maximal_cones.clone())
    }
}

impl SupportFunction {
    /// Re-checks the certificate against the fan by substitution.
    pub fn verify(&self, fan: &Fan) -> bool {
        if !self.margin.is_positive() || self.slopes.len() != fan.maximal_cones().len() {
            return false;
        }
        fan.maximal_cones().iter().zip(&self.slopes).all(|(cone, m)| {
            fan.ray_vectors().iter().enumerate().all(|(i, beta)| {
                let v = crate::rational::dot(m, &to_qvec(beta));
                if cone.contains(&i) {
                    v == self.values[i]
                } else {
                    v + &self.margin <= self.values[i]
                }
            })
        })
    }
}
