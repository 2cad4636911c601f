//! Exact rational cones and polyhedra.
//!
//! A [`Cone`] is stored in canonical form: a basis of its lineality space
//! (both signs) followed by the extreme rays of its pointed part, every
//! vector scaled to a primitive integer vector and the list sorted. Two cones
//! are equal as sets iff they are structurally equal. The H-representation
//! (equations and facet normals) is computed alongside by brute-force
//! enumeration of supporting hyperplanes, which is adequate for the handful
//! of generators that occur here.
//!
//! Pairings between a space and its dual are the standard dot product, so a
//! cone in `Λ` dualizes to a cone in `V` and vice versa.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot, is_zero_vec, primitive, q, to_qvec, IVec, Q, QVec, Rat};

/// Which lattice a vector or cone lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    /// The cocharacter lattice `Λ`.
    Cocharacter,
    /// The character lattice `V`.
    Character,
}

impl Space {
    pub fn dual(self) -> Space {
        match self {
            Space::Cocharacter => Space::Character,
            Space::Character => Space::Cocharacter,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    space: Space,
    ambient: usize,
    generators: Vec<IVec>,
    lineality: Vec<IVec>,
    rays: Vec<IVec>,
    equations: Vec<IVec>,
    facets: Vec<IVec>,
    dim: usize,
}

/// Equations and facet normals of the cone generated by `gens`:
/// `<e, x> = 0` and `<u, x> >= 0`.
fn h_representation(gens: &[QVec], ambient: usize) -> (Vec<IVec>, Vec<IVec>, usize) {
    let (span, _) = linalg::rref(gens, ambient);
    let d = span.len();
    let equations: Vec<IVec> = {
        let ns = linalg::nullspace(gens, ambient);
        let (red, _) = linalg::rref(&ns, ambient);
        red.iter().map(|v| primitive(v).expect("small vectors")).collect()
    };
    let mut facets = BTreeSet::new();
    if d == 0 {
        return (equations, vec![], 0);
    }
    // one generator per direction
    let mut dirs: BTreeSet<IVec> = BTreeSet::new();
    let gens: Vec<&QVec> = gens.iter().filter(|g| dirs.insert(primitive(g).expect("small vectors"))).collect();
    let mut seen_hyperplanes: BTreeSet<IVec> = BTreeSet::new();
    for subset in combinations(gens.len(), d - 1) {
        let chosen: Vec<QVec> = subset.iter().map(|&i| gens[i].clone()).collect();
        if linalg::rank(&chosen, ambient) != d - 1 {
            continue;
        }
        // u = sum c_j b_j with <u, g> = 0 for the chosen generators
        let m: Vec<QVec> = chosen.iter().map(|g| span.iter().map(|b| dot(b, g)).collect()).collect();
        let c = linalg::nullspace(&m, d);
        debug_assert_eq!(c.len(), 1);
        let u: QVec = (0..ambient)
            .map(|k| c[0].iter().zip(&span).fold(Q::zero(), |acc, (cj, b)| acc + cj * &b[k]))
            .collect();
        // sign-normalized primitive normal identifies the hyperplane
        let mut key = primitive(&u).expect("small vectors");
        if key.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            key.iter_mut().for_each(|x| *x = -*x);
        }
        if !seen_hyperplanes.insert(key) {
            continue;
        }
        let (mut pos, mut neg) = (false, false);
        for g in &gens {
            let p = dot(&u, g);
            pos |= p.is_positive();
            neg |= p.is_negative();
        }
        match (pos, neg) {
            (true, false) => {
                facets.insert(primitive(&u).expect("small vectors"));
            }
            (false, true) => {
                let nu: QVec = u.iter().map(|x| -x).collect();
                facets.insert(primitive(&nu).expect("small vectors"));
            }
            _ => {}
        }
    }
    (equations, facets.into_iter().collect(), d)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl Cone {
    /// The cone generated by rational vectors, canonicalized.
    pub fn from_rational(space: Space, ambient: usize, gens: &[QVec]) -> Result<Self> {
        for g in gens {
            if g.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: g.len() });
            }
        }
        let gens: Vec<QVec> = gens.iter().filter(|g| !is_zero_vec(g)).cloned().collect();
        let (equations, facets, dim) = h_representation(&gens, ambient);

        // lineality: points of the span on which every facet vanishes
        let mut cut: Vec<QVec> = equations.iter().map(|e| to_qvec(e)).collect();
        cut.extend(facets.iter().map(|f| to_qvec(f)));
        let lin_basis = linalg::nullspace(&cut, ambient);
        let (lin_rref, _) = linalg::rref(&lin_basis, ambient);
        let lineality: Vec<IVec> = lin_rref.iter().map(|v| primitive(v).expect("small vectors")).collect();

        // extreme rays of the pointed part (projection orthogonal to the lineality)
        let lin_q: Vec<QVec> = lineality.iter().map(|v| to_qvec(v)).collect();
        let pointed_dim = dim - lineality.len();
        let mut rays = BTreeSet::new();
        for g in &gens {
            let p = project_out(g, &lin_q, ambient);
            if is_zero_vec(&p) {
                continue;
            }
            let tight: Vec<QVec> = facets.iter().map(|f| to_qvec(f)).filter(|f| dot(f, &p).is_zero()).collect();
            if pointed_dim >= 1 && linalg::rank(&tight, ambient) == pointed_dim - 1 {
                rays.insert(primitive(&p)?);
            }
        }
        let rays: Vec<IVec> = rays.into_iter().collect();
        let mut generators: Vec<IVec> = lineality
            .iter()
            .flat_map(|l| [l.clone(), l.iter().map(|x| -x).collect()])
            .chain(rays.iter().cloned())
            .collect();
        generators.sort();
        Ok(Cone { space, ambient, generators, lineality, rays, equations, facets, dim })
    }

    pub fn new(space: Space, ambient: usize, gens: &[IVec]) -> Result<Self> {
        let gq: Vec<QVec> = gens.iter().map(|g| to_qvec(g)).collect();
        Cone::from_rational(space, ambient, &gq)
    }

    pub fn zero(space: Space, ambient: usize) -> Self {
        Cone::new(space, ambient, &[]).expect("zero cone")
    }

    pub fn full(space: Space, ambient: usize) -> Self {
        let gens: Vec<IVec> = (0..ambient)
            .flat_map(|i| {
                let e: IVec = (0..ambient).map(|k| i64::from(k == i)).collect();
                [e.clone(), e.iter().map(|x| -x).collect()]
            })
            .collect();
        Cone::new(space, ambient, &gens).expect("full space")
    }

    /// `{x : <u, x> >= 0 for u in inequalities, <e, x> = 0 for e in equations}`.
    pub fn from_h(space: Space, ambient: usize, inequalities: &[IVec], equations: &[IVec]) -> Result<Self> {
        let mut normals: Vec<IVec> = inequalities.to_vec();
        for e in equations {
            normals.push(e.clone());
            normals.push(e.iter().map(|x| -x).collect());
        }
        Ok(Cone::new(space.dual(), ambient, &normals)?.dual())
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Canonical generating set (lineality basis with both signs, then rays).
    pub fn generators(&self) -> &[IVec] {
        &self.generators
    }

    /// Extreme rays of the pointed part.
    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IVec] {
        &self.lineality
    }

    pub fn equations(&self) -> &[IVec] {
        &self.equations
    }

    pub fn facet_normals(&self) -> &[IVec] {
        &self.facets
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }

    /// Pointed with exactly `dim` extreme rays.
    pub fn is_simplicial(&self) -> bool {
        self.is_strongly_convex() && self.rays.len() == self.dim
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        x.len() == self.ambient
            && self.equations.iter().all(|e| dot(&to_qvec(e), x).is_zero())
            && self.facets.iter().all(|u| !dot(&to_qvec(u), x).is_negative())
    }

    pub fn contains_int(&self, x: &[i64]) -> bool {
        self.contains(&to_qvec(x))
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators.iter().all(|g| self.contains_int(g))
    }

    /// Interior point of the relative interior (sum of generators).
    pub fn relative_interior_point(&self) -> IVec {
        let mut p = vec![0i64; self.ambient];
        for g in &self.rays {
            for (a, b) in p.iter_mut().zip(g) {
                *a += b;
            }
        }
        p
    }

    /// `σ^∨ = {u : <u, x> >= 0 for all x in σ}`, in the dual space.
    pub fn dual(&self) -> Cone {
        let mut gens: Vec<IVec> = self.facets.clone();
        for e in &self.equations {
            gens.push(e.clone());
            gens.push(e.iter().map(|x| -x).collect());
        }
        Cone::new(self.space.dual(), self.ambient, &gens).expect("dual generators are well formed")
    }

    pub fn negate(&self) -> Cone {
        let gens: Vec<IVec> = self.generators.iter().map(|g| g.iter().map(|x| -x).collect()).collect();
        Cone::new(self.space, self.ambient, &gens).expect("negated generators are well formed")
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.space != other.space || self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!(
                "{:?}^{} vs {:?}^{}",
                self.space, self.ambient, other.space, other.ambient
            )));
        }
        let ineq: Vec<IVec> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eq: Vec<IVec> = self.equations.iter().chain(&other.equations).cloned().collect();
        Cone::from_h(self.space, self.ambient, &ineq, &eq)
    }

    /// Faces as subsets of [`Self::rays`] (indices), from `{0}` up to the
    /// whole cone. Requires a strongly convex cone.
    pub fn face_ray_sets(&self) -> Result<Vec<Vec<usize>>> {
        if !self.is_strongly_convex() {
            return Err(Error::InvalidCone("face lattice requires a strongly convex cone".into()));
        }
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|u| {
                let uq = to_qvec(u);
                (0..self.rays.len()).filter(|&i| dot(&uq, &to_qvec(&self.rays[i])).is_zero()).collect()
            })
            .collect();
        let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        faces.insert(all.clone());
        let mut frontier = vec![all];
        while let Some(f) = frontier.pop() {
            for fs in &facet_sets {
                let g: BTreeSet<usize> = f.intersection(fs).copied().collect();
                if faces.insert(g.clone()) {
                    frontier.push(g);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = faces.into_iter().map(|s| s.into_iter().collect()).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// All faces, including `{0}` and the cone itself.
    pub fn face_lattice(&self) -> Result<Vec<Cone>> {
        self.face_ray_sets()?
            .iter()
            .map(|s| {
                let gens: Vec<IVec> = s.iter().map(|&i| self.rays[i].clone()).collect();
                Cone::new(self.space, self.ambient, &gens)
            })
            .collect()
    }

    pub fn is_face_of(&self, other: &Cone) -> Result<bool> {
        Ok(other.face_lattice()?.iter().any(|f| f == self))
    }

    /// `{x + v : x in σ}` as a polyhedron in the same space.
    pub fn shift(&self, v: &[Q]) -> Result<Polyhedron> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: v.len() });
        }
        let mut ineqs = Vec::new();
        for u in &self.facets {
            // <u, y - v> >= 0  <=>  <-u, y> <= -<u, v>
            let uq = to_qvec(u);
            ineqs.push(Inequality { normal: uq.iter().map(|x| -x).collect(), bound: -dot(&uq, v) });
        }
        for e in &self.equations {
            let eq = to_qvec(e);
            let c = dot(&eq, v);
            ineqs.push(Inequality { normal: eq.clone(), bound: c.clone() });
            ineqs.push(Inequality { normal: eq.iter().map(|x| -x).collect(), bound: -c });
        }
        Ok(Polyhedron::new(self.space, self.ambient, ineqs))
    }
}

fn project_out(g: &[Q], lin: &[QVec], ambient: usize) -> QVec {
    if lin.is_empty() {
        return g.to_vec();
    }
    // orthogonal projection onto the complement of span(lin)
    let gram: Vec<QVec> = lin.iter().map(|a| lin.iter().map(|b| dot(a, b)).collect()).collect();
    let rhs: QVec = lin.iter().map(|a| dot(a, g)).collect();
    let c = linalg::solve(&gram, &rhs, lin.len()).expect("lineality basis is independent");
    (0..ambient)
        .map(|k| &g[k] - c.iter().zip(lin).fold(Q::zero(), |acc, (ci, l)| acc + ci * &l[k]))
        .collect()
}

/// `<normal, x> <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub normal: QVec,
    pub bound: Q,
}

impl Inequality {
    pub fn holds(&self, x: &[Q]) -> bool {
        dot(&self.normal, x) <= self.bound
    }

    pub fn is_tight(&self, x: &[Q]) -> bool {
        dot(&self.normal, x) == self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    space: Space,
    ambient: usize,
    inequalities: Vec<Inequality>,
}

/// Normal fan of a polyhedron: rays are primitive outward facet normals,
/// maximal cones are the normal cones at vertices (index lists into `rays`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFan {
    pub space: Space,
    pub rays: Vec<IVec>,
    pub maximal_cones: Vec<Vec<usize>>,
    pub vertices: Vec<QVec>,
}

impl Polyhedron {
    pub fn new(space: Space, ambient: usize, inequalities: Vec<Inequality>) -> Self {
        Polyhedron { space, ambient, inequalities }
    }

    /// The whole ambient space.
    pub fn ambient_space(space: Space, ambient: usize) -> Self {
        Polyhedron::new(space, ambient, vec![])
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.inequalities.iter().all(|i| i.holds(x))
    }

    /// Rows `(-u, c)` of the homogenization plus the row `t >= 0`.
    fn homogenizing_rows(&self) -> Vec<IVec> {
        let mut rows: Vec<IVec> = self
            .inequalities
            .iter()
            .map(|i| {
                let mut row: QVec = i.normal.iter().map(|x| -x).collect();
                row.push(i.bound.clone());
                primitive(&row).expect("small vectors")
            })
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let mut t = vec![0; self.ambient + 1];
        t[self.ambient] = 1;
        rows.push(t);
        rows
    }

    /// `{(x, t) : <u, x> <= c t, t >= 0}`.
    pub fn homogenization(&self) -> Cone {
        Cone::new(self.space, self.ambient + 1, &self.homogenizing_rows())
            .expect("rows are well formed")
            .dual()
    }

    pub fn is_empty(&self) -> bool {
        self.homogenization().generators().iter().all(|g| g[self.ambient] == 0)
    }

    /// Affine dimension; `None` for the empty polyhedron.
    pub fn dim(&self) -> Option<usize> {
        let h = self.homogenization();
        if h.generators().iter().all(|g| g[self.ambient] == 0) {
            None
        } else {
            Some(h.dim() - 1)
        }
    }

    pub fn recession_cone(&self) -> Cone {
        let rows: Vec<IVec> = self
            .inequalities
            .iter()
            .map(|i| primitive(&i.normal.iter().map(|x| -x).collect::<QVec>()).expect("small vectors"))
            .collect();
        Cone::new(self.space.dual(), self.ambient, &rows).expect("rows are well formed").dual()
    }

    pub fn is_bounded(&self) -> bool {
        self.recession_cone().dim() == 0
    }

    pub fn shift(&self, v: &[Q]) -> Polyhedron {
        let inequalities = self
            .inequalities
            .iter()
            .map(|i| Inequality { normal: i.normal.clone(), bound: &i.bound + dot(&i.normal, v) })
            .collect();
        Polyhedron::new(self.space, self.ambient, inequalities)
    }

    /// Canonical irredundant system. The empty polyhedron becomes `0 <= -1`.
    pub fn canonical(&self) -> Polyhedron {
        if self.is_empty() {
            let mut z = vec![Q::zero(); self.ambient];
            z.truncate(self.ambient);
            return Polyhedron::new(self.space, self.ambient, vec![Inequality { normal: z, bound: -Q::one() }]);
        }
        let k = Cone::new(self.space, self.ambient + 1, &self.homogenizing_rows()).expect("rows are well formed");
        let mut ineqs: Vec<Inequality> = k
            .generators()
            .iter()
            .filter(|g| g[..self.ambient].iter().any(|&x| x != 0))
            .map(|g| Inequality { normal: g[..self.ambient].iter().map(|&x| q(-x)).collect(), bound: q(g[self.ambient]) })
            .collect();
        ineqs.sort();
        ineqs.dedup();
        Polyhedron::new(self.space, self.ambient, ineqs)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        if self.space != other.space || self.ambient != other.ambient {
            return Err(Error::AmbientMismatch("polyhedra live in different spaces".into()));
        }
        let ineqs = self.inequalities.iter().chain(&other.inequalities).cloned().collect();
        Ok(Polyhedron::new(self.space, self.ambient, ineqs).canonical())
    }

    /// Vertices by enumerating full-rank active subsets of inequalities.
    pub fn vertices(&self) -> Result<Vec<QVec>> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        Ok(vertices_of(&self.inequalities, self.ambient))
    }

    /// The normal fan; cones live in the dual space. Refuses empty and
    /// lower-dimensional polyhedra.
    pub fn normal_fan(&self) -> Result<NormalFan> {
        let dim = self.dim().ok_or(Error::EmptyPolyhedron)?;
        if dim < self.ambient {
            return Err(Error::LowerDimensional { dim, ambient: self.ambient });
        }
        let canon = self.canonical();
        // primitive outward normals, bounds rescaled to match
        let mut facets: Vec<(IVec, Q)> = canon
            .inequalities
            .iter()
            .map(|i| {
                let n = primitive(&i.normal).expect("small vectors");
                let scale = n.iter().zip(&i.normal).find(|(_, x)| !x.is_zero()).map(|(&a, x)| q(a) / x).expect("nonzero normal");
                (n, &i.bound * scale)
            })
            .collect();
        facets.sort();
        let lineality = linalg::nullspace(&facets.iter().map(|(n, _)| to_qvec(n)).collect::<Vec<_>>(), self.ambient);
        let mut system: Vec<Inequality> =
            facets.iter().map(|(n, c)| Inequality { normal: to_qvec(n), bound: c.clone() }).collect();
        for l in &lineality {
            system.push(Inequality { normal: l.clone(), bound: Q::zero() });
            system.push(Inequality { normal: l.iter().map(|x| -x).collect(), bound: Q::zero() });
        }
        let vertices = vertices_of(&system, self.ambient);
        let mut cones: Vec<Vec<usize>> = vertices
            .iter()
            .map(|x| {
                facets
                    .iter()
                    .enumerate()
                    .filter(|(_, (n, c))| dot(&to_qvec(n), x) == *c)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        cones.sort();
        cones.dedup();
        Ok(NormalFan {
            space: self.space.dual(),
            rays: facets.into_iter().map(|(n, _)| n).collect(),
            maximal_cones: cones,
            vertices,
        })
    }
}

fn vertices_of(ineqs: &[Inequality], ambient: usize) -> Vec<QVec> {
    let mut out = BTreeSet::new();
    if ambient == 0 {
        return vec![vec![]];
    }
    for subset in combinations(ineqs.len(), ambient) {
        let a: Vec<QVec> = subset.iter().map(|&i| ineqs[i].normal.clone()).collect();
        if linalg::rank(&a, ambient) != ambient {
            continue;
        }
        let b: QVec = subset.iter().map(|&i| ineqs[i].bound.clone()).collect();
        let Some(x) = linalg::solve(&a, &b, ambient) else { continue };
        if ineqs.iter().all(|i| i.holds(&x)) {
            out.insert(x);
        }
    }
    out.into_iter().collect()
}

/// JSON form of a cone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeJson {
    pub generators: Vec<Vec<Rat>>,
}

impl ConeJson {
    pub fn from_cone(c: &Cone) -> Self {
        ConeJson { generators: c.generators().iter().map(|g| g.iter().map(|&x| Rat(q(x))).collect()).collect() }
    }

    pub fn to_cone(&self, space: Space, ambient: usize) -> Result<Cone> {
        let gens: Vec<QVec> = self.generators.iter().map(|g| g.iter().map(|r| r.0.clone()).collect()).collect();
        Cone::from_rational(space, ambient, &gens)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityJson {
    pub normal: Vec<Rat>,
    pub bound: Rat,
}

/// JSON form of a polyhedron.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyhedronJson {
    pub inequalities: Vec<InequalityJson>,
}

impl PolyhedronJson {
    pub fn from_polyhedron(p: &Polyhedron) -> Self {
        PolyhedronJson {
            inequalities: p
                .inequalities()
                .iter()
                .map(|i| InequalityJson { normal: i.normal.iter().cloned().map(Rat).collect(), bound: Rat(i.bound.clone()) })
                .collect(),
        }
    }

    pub fn to_polyhedron(&self, space: Space, ambient: usize) -> Result<Polyhedron> {
        let mut ineqs = Vec::new();
        for i in &self.inequalities {
            if i.normal.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, got: i.normal.len() });
            }
            ineqs.push(Inequality { normal: i.normal.iter().map(|r| r.0.clone()).collect(), bound: i.bound.0.clone() });
        }
        Ok(Polyhedron::new(space, ambient, ineqs))
    }
}
