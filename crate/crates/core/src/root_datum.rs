//! Root data of split reductive groups in fixed coordinates, and the Weyl
//! group acting on the cocharacter lattice `Λ = Z^r` and the character
//! lattice `V = Z^r` (standard dot product as the perfect pairing).
//!
//! Conventions:
//! * the Cartan matrix is `C[i][j] = <α_i, α_j^∨>`;
//! * simply connected data use the coroot basis of `Λ` (`α_j^∨ = e_j`, so
//!   `α_i` is row `i` of `C`);
//! * adjoint data use the fundamental coweight basis (`α_i = e_i`, so
//!   `α_j^∨` is column `j` of `C`);
//! * Weyl words are lists of 1-based simple reflection indices and act
//!   right-to-left, `[i1, i2] = s_i1 ∘ s_i2`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, identity_i, mat_mul_i, mat_vec_i, IMat};
use crate::rational::{dot_i, primitive, q, to_qvec, IVec, Q, QVec};

/// Order cap for materialized Weyl groups (the order of `W(E_6)`).
pub const DEFAULT_WEYL_CAP: usize = 51840;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    G,
    Torus,
}

impl Series {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Series::A),
            "B" | "b" => Ok(Series::B),
            "C" | "c" => Ok(Series::C),
            "D" | "d" => Ok(Series::D),
            "G" | "g" => Ok(Series::G),
            "torus" | "T" => Ok(Series::Torus),
            other => Err(Error::UnknownLabel(other.to_string())),
        }
    }

    fn min_rank(self) -> usize {
        match self {
            Series::A => 1,
            Series::B | Series::C | Series::G => 2,
            Series::D => 3,
            Series::Torus => 0,
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::G => "G",
            Series::Torus => "torus",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    GeneralLinear,
}

impl Isogeny {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "simply_connected" | "sc" => Ok(Isogeny::SimplyConnected),
            "adjoint" | "adj" => Ok(Isogeny::Adjoint),
            "general_linear" | "gl" => Ok(Isogeny::GeneralLinear),
            other => Err(Error::UnknownLabel(format!("isogeny {other}"))),
        }
    }
}

/// Gram matrix of a Euclidean realization of the simple roots.
fn gram(series: Series, n: usize) -> Result<Vec<Vec<i64>>> {
    if n < series.min_rank() || (series == Series::G && n != 2) {
        return Err(Error::RankOutOfRange { series: series.to_string(), rank: n });
    }
    let mut g = vec![vec![0i64; n]; n];
    // chain bonds i -- i+1 with (α_i, α_i) = 2, (α_i, α_{i+1}) = -1 unless overridden
    for i in 0..n {
        g[i][i] = 2;
        if i + 1 < n {
            g[i][i + 1] = -1;
            g[i + 1][i] = -1;
        }
    }
    match series {
        Series::A => {}
        Series::B => {
            // α_n short
            g[n - 1][n - 1] = 1;
        }
        Series::C => {
            // α_n long
            g[n - 1][n - 1] = 4;
            g[n - 2][n - 1] = -2;
            g[n - 1][n - 2] = -2;
        }
        Series::D => {
            // α_n attached to α_{n-2}
            g[n - 2][n - 1] = 0;
            g[n - 1][n - 2] = 0;
            g[n - 3][n - 1] = -1;
            g[n - 1][n - 3] = -1;
        }
        Series::G => {
            // α_1 short, α_2 long
            g[1][1] = 6;
            g[0][1] = -3;
            g[1][0] = -3;
        }
        Series::Torus => unreachable!(),
    }
    Ok(g)
}

fn cartan_from_gram(g: &[Vec<i64>]) -> IMat {
    let n = g.len();
    (0..n).map(|i| (0..n).map(|j| 2 * g[i][j] / g[j][j]).collect()).collect()
}

/// A split reductive group presented by its root datum on `Z^r`.
#[derive(Clone)]
pub struct RootDatum {
    rank: usize,
    simple_roots: Vec<IVec>,
    simple_coroots: Vec<IVec>,
    label: Option<String>,
    weyl: OnceLock<Result<Arc<Vec<WeylElement>>>>,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootDatum")
            .field("rank", &self.rank)
            .field("simple_roots", &self.simple_roots)
            .field("simple_coroots", &self.simple_coroots)
            .field("label", &self.label)
            .finish()
    }
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.simple_roots == other.simple_roots
            && self.simple_coroots == other.simple_coroots
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    /// Builds a root datum from explicit matrices, validating the Cartan
    /// invariant.
    pub fn new(
        rank: usize,
        simple_roots: Vec<IVec>,
        simple_coroots: Vec<IVec>,
        label: Option<String>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidRootDatum("rank must be positive".into()));
        }
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::InvalidRootDatum(format!(
                "{} simple roots but {} simple coroots",
                simple_roots.len(),
                simple_coroots.len()
            )));
        }
        if simple_roots.len() > rank {
            return Err(Error::InvalidRootDatum("more simple roots than the rank".into()));
        }
        for v in simple_roots.iter().chain(&simple_coroots) {
            if v.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: v.len() });
            }
        }
        let rd = RootDatum { rank, simple_roots, simple_coroots, label, weyl: OnceLock::new() };
        rd.check_cartan()?;
        Ok(rd)
    }

    fn check_cartan(&self) -> Result<()> {
        let s = self.semisimple_rank();
        let c = self.cartan_matrix();
        for i in 0..s {
            if c[i][i] != 2 {
                return Err(Error::InvalidRootDatum(format!("<α_{0}, α_{0}^∨> = {1} ≠ 2", i + 1, c[i][i])));
            }
            for j in 0..s {
                if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                    return Err(Error::InvalidRootDatum(format!(
                        "Cartan entries ({},{}) = {}, ({},{}) = {} are not a generalized Cartan pattern",
                        i + 1,
                        j + 1,
                        c[i][j],
                        j + 1,
                        i + 1,
                        c[j][i]
                    )));
                }
            }
        }
        // finite type <=> every principal minor is positive
        for mask in 1u32..(1u32 << s) {
            let idx: Vec<usize> = (0..s).filter(|i| mask & (1 << i) != 0).collect();
            let minor: Vec<QVec> = idx.iter().map(|&i| idx.iter().map(|&j| q(c[i][j])).collect()).collect();
            if !linalg::det(&minor).is_positive() {
                return Err(Error::InvalidRootDatum("Cartan matrix is not of finite type".into()));
            }
        }
        let roots: Vec<QVec> = self.simple_roots.iter().map(|v| to_qvec(v)).collect();
        let coroots: Vec<QVec> = self.simple_coroots.iter().map(|v| to_qvec(v)).collect();
        if linalg::rank(&roots, self.rank) != s || linalg::rank(&coroots, self.rank) != s {
            return Err(Error::InvalidRootDatum("simple roots or coroots are linearly dependent".into()));
        }
        Ok(())
    }

    /// Named constructor: Cartan series and rank of type, an isogeny
    /// convention and extra central torus rank. For `Series::Torus` the
    /// type rank and isogeny are ignored and the result has rank
    /// `extra_central_rank`.
    pub fn build(series: Series, rank_of_type: usize, isogeny: Isogeny, extra_central_rank: usize) -> Result<Self> {
        if series == Series::Torus {
            if extra_central_rank == 0 {
                return Err(Error::RankOutOfRange { series: "torus".into(), rank: 0 });
            }
            let label = format!("T{extra_central_rank}");
            return RootDatum::new(extra_central_rank, vec![], vec![], Some(label));
        }
        let n = rank_of_type;
        let (mut roots, mut coroots, base_rank, tag) = match isogeny {
            Isogeny::GeneralLinear => {
                if series != Series::A {
                    return Err(Error::UnknownLabel(format!("general_linear {series}{n}")));
                }
                if n < 1 {
                    return Err(Error::RankOutOfRange { series: "A".into(), rank: n });
                }
                let r = n + 1;
                let v: Vec<IVec> = (0..n)
                    .map(|i| (0..r).map(|k| i64::from(k == i) - i64::from(k == i + 1)).collect())
                    .collect();
                (v.clone(), v, r, format!("GL{r}"))
            }
            Isogeny::SimplyConnected => {
                let c = cartan_from_gram(&gram(series, n)?);
                (c.clone(), identity_i(n), n, format!("{series}{n} sc"))
            }
            Isogeny::Adjoint => {
                let c = cartan_from_gram(&gram(series, n)?);
                let cols = linalg::transpose(&c, n);
                (identity_i(n), cols, n, format!("{series}{n} adj"))
            }
        };
        for v in roots.iter_mut().chain(coroots.iter_mut()) {
            v.extend(std::iter::repeat_n(0, extra_central_rank));
        }
        let label = if extra_central_rank > 0 { format!("{tag} x T{extra_central_rank}") } else { tag };
        RootDatum::new(base_rank + extra_central_rank, roots, coroots, Some(label))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots `s`.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn central_rank(&self) -> usize {
        self.rank - self.semisimple_rank()
    }

    pub fn simple_roots(&self) -> &[IVec] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[IVec] {
        &self.simple_coroots
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn cartan_matrix(&self) -> IMat {
        let s = self.semisimple_rank();
        (0..s)
            .map(|i| (0..s).map(|j| dot_i(&self.simple_roots[i], &self.simple_coroots[j])).collect())
            .collect()
    }

    fn check_dim(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank {
            Err(Error::DimensionMismatch { expected: self.rank, got: v.len() })
        } else {
            Ok(())
        }
    }

    /// `<α_i, λ>` for every simple root.
    pub fn root_pairings(&self, lambda: &[i64]) -> Result<IVec> {
        self.check_dim(lambda)?;
        Ok(self.simple_roots.iter().map(|a| dot_i(a, lambda)).collect())
    }

    pub fn is_dominant(&self, lambda: &[i64]) -> Result<bool> {
        Ok(self.root_pairings(lambda)?.iter().all(|&p| p >= 0))
    }

    /// Dominance for rational cocharacters.
    pub fn is_dominant_q(&self, lambda: &[Q]) -> bool {
        self.simple_roots.iter().all(|a| !crate::rational::dot(&to_qvec(a), lambda).is_negative())
    }

    /// Dominance of a character: `<v, α_i^∨> >= 0` for every simple coroot.
    pub fn is_dominant_weight(&self, v: &[i64]) -> Result<bool> {
        self.check_dim(v)?;
        Ok(self.simple_coroots.iter().all(|c| dot_i(v, c) >= 0))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        let s = self.semisimple_rank();
        if i == 0 || i > s {
            Err(Error::IndexOutOfRange { index: i, count: s })
        } else {
            Ok(())
        }
    }

    /// `s_i(λ) = λ - <α_i, λ> α_i^∨` (1-based `i`).
    pub fn simple_reflection(&self, i: usize, lambda: &[i64]) -> Result<IVec> {
        self.check_index(i)?;
        self.check_dim(lambda)?;
        let p = dot_i(&self.simple_roots[i - 1], lambda);
        Ok(lambda.iter().zip(&self.simple_coroots[i - 1]).map(|(l, c)| l - p * c).collect())
    }

    /// `s_i(v) = v - <v, α_i^∨> α_i` on characters.
    pub fn simple_reflection_weight(&self, i: usize, v: &[i64]) -> Result<IVec> {
        self.check_index(i)?;
        self.check_dim(v)?;
        let p = dot_i(v, &self.simple_coroots[i - 1]);
        Ok(v.iter().zip(&self.simple_roots[i - 1]).map(|(x, a)| x - p * a).collect())
    }

    fn generator_matrices(&self, i: usize) -> (IMat, IMat) {
        let r = self.rank;
        let (a, c) = (&self.simple_roots[i], &self.simple_coroots[i]);
        let on_lambda = (0..r)
            .map(|k| (0..r).map(|l| i64::from(k == l) - c[k] * a[l]).collect())
            .collect();
        let on_v = (0..r)
            .map(|k| (0..r).map(|l| i64::from(k == l) - a[k] * c[l]).collect())
            .collect();
        (on_lambda, on_v)
    }

    pub fn identity_element(&self) -> WeylElement {
        WeylElement { word: vec![], matrix: identity_i(self.rank), weight_matrix: identity_i(self.rank) }
    }

    /// The element named by a word of 1-based simple reflection indices.
    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElement> {
        let mut e = self.identity_element();
        for &i in word.iter().rev() {
            self.check_index(i)?;
            let (m, mv) = self.generator_matrices(i - 1);
            e = WeylElement {
                word: std::iter::once(i).chain(e.word).collect(),
                matrix: mat_mul_i(&m, &e.matrix),
                weight_matrix: mat_mul_i(&mv, &e.weight_matrix),
            };
        }
        Ok(e)
    }

    /// Breadth-first closure of the simple reflections. Identity first;
    /// each element carries a shortest word, generators tried in index order.
    pub fn weyl_group_with_cap(&self, cap: usize) -> Result<Vec<WeylElement>> {
        let gens: Vec<(IMat, IMat)> = (0..self.semisimple_rank()).map(|i| self.generator_matrices(i)).collect();
        let id = self.identity_element();
        let mut seen: HashMap<IMat, ()> = HashMap::new();
        seen.insert(id.matrix.clone(), ());
        let mut out = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (i, (m, mv)) in gens.iter().enumerate() {
                let cur = &out[k];
                let matrix = mat_mul_i(m, &cur.matrix);
                if seen.contains_key(&matrix) {
                    continue;
                }
                if out.len() >= cap {
                    return Err(Error::WeylCapExceeded { cap });
                }
                seen.insert(matrix.clone(), ());
                let word = std::iter::once(i + 1).chain(cur.word.iter().copied()).collect();
                let weight_matrix = mat_mul_i(mv, &cur.weight_matrix);
                out.push(WeylElement { word, matrix, weight_matrix });
                queue.push_back(out.len() - 1);
            }
        }
        Ok(out)
    }

    /// The Weyl group under the default cap, computed once per datum.
    pub fn weyl_group(&self) -> Result<&[WeylElement]> {
        match self.weyl.get_or_init(|| self.weyl_group_with_cap(DEFAULT_WEYL_CAP).map(Arc::new)) {
            Ok(v) => Ok(v.as_slice()),
            Err(e) => Err(e.clone()),
        }
    }

    /// Unique dominant element of the orbit and the first element (in
    /// breadth-first order) carrying `λ` there.
    pub fn to_dominant(&self, lambda: &[i64]) -> Result<(IVec, WeylElement)> {
        self.check_dim(lambda)?;
        for w in self.weyl_group()? {
            let image = w.act(lambda);
            if self.is_dominant(&image)? {
                return Ok((image, w.clone()));
            }
        }
        unreachable!("every Weyl orbit meets the dominant chamber")
    }

    pub fn longest_element(&self) -> Result<WeylElement> {
        let group = self.weyl_group()?;
        Ok(group.iter().max_by_key(|w| w.length()).cloned().expect("group contains the identity"))
    }

    pub fn weyl_orbit(&self, lambda: &[i64]) -> Result<BTreeSet<IVec>> {
        self.check_dim(lambda)?;
        Ok(self.weyl_group()?.iter().map(|w| w.act(lambda)).collect())
    }

    pub fn stabilizer(&self, lambda: &[i64]) -> Result<Vec<WeylElement>> {
        self.check_dim(lambda)?;
        Ok(self.weyl_group()?.iter().filter(|w| w.act(lambda) == lambda).cloned().collect())
    }

    /// Positive roots in `V`, from the Weyl saturation of the simple roots,
    /// keeping those with nonnegative simple-root coefficients.
    pub fn positive_roots(&self) -> Result<Vec<IVec>> {
        let mut all = BTreeSet::new();
        for w in self.weyl_group()? {
            for a in &self.simple_roots {
                all.insert(w.act_weight(a));
            }
        }
        let basis: Vec<QVec> = linalg::transpose(&self.simple_roots.iter().map(|v| to_qvec(v)).collect::<Vec<_>>(), self.rank);
        Ok(all
            .into_iter()
            .filter(|root| {
                let coeffs = linalg::solve(&basis, &to_qvec(root), self.semisimple_rank()).expect("roots lie in the root span");
                coeffs.iter().all(|c| !c.is_negative())
            })
            .collect())
    }

    /// Fundamental coweights `ω_j^∨` in `Λ_Q`, taken in the coroot span.
    pub fn fundamental_coweights(&self) -> Vec<QVec> {
        let s = self.semisimple_rank();
        let c = self.cartan_matrix();
        let cq: Vec<QVec> = c.iter().map(|r| to_qvec(r)).collect();
        (0..s)
            .map(|j| {
                let e: QVec = (0..s).map(|i| if i == j { Q::one() } else { Q::zero() }).collect();
                let coeff = linalg::solve(&cq, &e, s).expect("Cartan matrix is invertible");
                (0..self.rank)
                    .map(|k| coeff.iter().zip(&self.simple_coroots).fold(Q::zero(), |acc, (x, v)| acc + x * q(v[k])))
                    .collect()
            })
            .collect()
    }

    /// Fundamental weights `ω_j` in `V_Q`, taken in the root span.
    pub fn fundamental_weights(&self) -> Vec<QVec> {
        let s = self.semisimple_rank();
        let ct = linalg::transpose(&self.cartan_matrix(), s);
        let cq: Vec<QVec> = ct.iter().map(|r| to_qvec(r)).collect();
        (0..s)
            .map(|j| {
                let e: QVec = (0..s).map(|i| if i == j { Q::one() } else { Q::zero() }).collect();
                let coeff = linalg::solve(&cq, &e, s).expect("Cartan matrix is invertible");
                (0..self.rank)
                    .map(|k| coeff.iter().zip(&self.simple_roots).fold(Q::zero(), |acc, (x, v)| acc + x * q(v[k])))
                    .collect()
            })
            .collect()
    }

    /// Integer basis of the central directions `{λ : <α_i, λ> = 0}`.
    pub fn central_directions(&self) -> Vec<IVec> {
        let rows: Vec<QVec> = self.simple_roots.iter().map(|v| to_qvec(v)).collect();
        linalg::nullspace(&rows, self.rank)
            .iter()
            .map(|v| primitive(v).expect("small vectors"))
            .collect()
    }

    /// Simple-root coefficients of a character in the root span, if any.
    pub fn root_coordinates(&self, v: &[i64]) -> Result<Option<QVec>> {
        self.check_dim(v)?;
        let basis: Vec<QVec> = linalg::transpose(&self.simple_roots.iter().map(|a| to_qvec(a)).collect::<Vec<_>>(), self.rank);
        Ok(linalg::solve(&basis, &to_qvec(v), self.semisimple_rank()))
    }
}

/// An element of the Weyl group with its action on both lattices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: IMat,
    weight_matrix: IMat,
}

impl WeylElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Action on `Λ`.
    pub fn matrix(&self) -> &IMat {
        &self.matrix
    }

    /// Action on `V` (the inverse transpose of [`Self::matrix`]).
    pub fn weight_matrix(&self) -> &IMat {
        &self.weight_matrix
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity_i(self.matrix.len())
    }

    pub fn act(&self, lambda: &[i64]) -> IVec {
        mat_vec_i(&self.matrix, lambda)
    }

    pub fn act_weight(&self, v: &[i64]) -> IVec {
        mat_vec_i(&self.weight_matrix, v)
    }

    pub fn act_q(&self, lambda: &[Q]) -> QVec {
        linalg::mat_vec_q(&self.matrix, lambda)
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            word: self.word.iter().chain(&other.word).copied().collect(),
            matrix: mat_mul_i(&self.matrix, &other.matrix),
            weight_matrix: mat_mul_i(&self.weight_matrix, &other.weight_matrix),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let r = self.matrix.len();
        // W acts orthogonally for the pairing: the inverse on Λ is the transpose of the V-action
        WeylElement {
            word: self.word.iter().rev().copied().collect(),
            matrix: linalg::transpose(&self.weight_matrix, r),
            weight_matrix: linalg::transpose(&self.matrix, r),
        }
    }
}

/// JSON description of a root datum: named or explicit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RootDatumSpec {
    Named {
        series: String,
        #[serde(default)]
        rank_of_type: usize,
        #[serde(default)]
        isogeny: Option<String>,
        #[serde(default)]
        central_rank: usize,
    },
    Explicit {
        rank: usize,
        simple_roots: Vec<IVec>,
        simple_coroots: Vec<IVec>,
        #[serde(default)]
        label: Option<String>,
    },
}

impl RootDatumSpec {
    pub fn build(&self) -> Result<RootDatum> {
        match self {
            RootDatumSpec::Named { series, rank_of_type, isogeny, central_rank } => {
                let series = Series::parse(series)?;
                let isogeny = match isogeny {
                    Some(s) => Isogeny::parse(s)?,
                    None if series == Series::Torus => Isogeny::Adjoint,
                    None => return Err(Error::Parse("missing isogeny".into())),
                };
                RootDatum::build(series, *rank_of_type, isogeny, *central_rank)
            }
            RootDatumSpec::Explicit { rank, simple_roots, simple_coroots, label } => {
                RootDatum::new(*rank, simple_roots.clone(), simple_coroots.clone(), label.clone())
            }
        }
    }

    pub fn from_datum(rd: &RootDatum) -> Self {
        RootDatumSpec::Explicit {
            rank: rd.rank,
            simple_roots: rd.simple_roots.clone(),
            simple_coroots: rd.simple_coroots.clone(),
            label: rd.label.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(series: Series, n: usize, iso: Isogeny) -> RootDatum {
        RootDatum::build(series, n, iso, 0).unwrap()
    }

    #[test]
    fn a1_conventions() {
        let sc = rd(Series::A, 1, Isogeny::SimplyConnected);
        assert_eq!((sc.simple_coroots()[0].clone(), sc.simple_roots()[0].clone()), (vec![1], vec![2]));
        let adj = rd(Series::A, 1, Isogeny::Adjoint);
        assert_eq!((adj.simple_coroots()[0].clone(), adj.simple_roots()[0].clone()), (vec![2], vec![1]));
        let t = RootDatum::build(Series::Torus, 0, Isogeny::Adjoint, 3).unwrap();
        assert_eq!((t.rank(), t.semisimple_rank()), (3, 0));
    }

    #[test]
    fn cartan_types() {
        let b2 = rd(Series::B, 2, Isogeny::Adjoint).cartan_matrix();
        assert_eq!(b2, vec![vec![2, -2], vec![-1, 2]]);
        let g2 = rd(Series::G, 2, Isogeny::Adjoint).cartan_matrix();
        assert_eq!(g2, vec![vec![2, -1], vec![-3, 2]]);
        let d4 = rd(Series::D, 4, Isogeny::SimplyConnected).cartan_matrix();
        assert_eq!(d4[1], vec![-1, 2, -1, -1]);
        let gl3 = RootDatum::build(Series::A, 2, Isogeny::GeneralLinear, 0).unwrap();
        assert_eq!((gl3.rank(), gl3.semisimple_rank()), (3, 2));
        assert_eq!(gl3.cartan_matrix(), vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(RootDatum::build(Series::B, 1, Isogeny::Adjoint, 0), Err(Error::RankOutOfRange { .. })));
        assert!(matches!(RootDatum::build(Series::G, 3, Isogeny::Adjoint, 0), Err(Error::RankOutOfRange { .. })));
        assert!(Series::parse("E").is_err());
        // affine A_1^(1) pattern is not finite type
        let bad = RootDatum::new(2, vec![vec![2, -2], vec![-2, 2]], vec![vec![1, 0], vec![0, 1]], None);
        assert!(bad.is_err());
        let dep = RootDatum::new(2, vec![vec![2, 0], vec![2, 0]], vec![vec![1, 0], vec![1, 0]], None);
        assert!(dep.is_err());
    }

    #[test]
    fn group_orders() {
        let orders = [
            (Series::A, 1, 2),
            (Series::A, 2, 6),
            (Series::A, 3, 24),
            (Series::B, 2, 8),
            (Series::B, 3, 48),
            (Series::C, 3, 48),
            (Series::D, 4, 192),
            (Series::G, 2, 12),
        ];
        for (s, n, order) in orders {
            let g = rd(s, n, Isogeny::Adjoint);
            assert_eq!(g.weyl_group().unwrap().len(), order, "{s}{n}");
        }
        let t = RootDatum::build(Series::Torus, 0, Isogeny::Adjoint, 2).unwrap();
        assert_eq!(t.weyl_group().unwrap().len(), 1);
        let small_cap = rd(Series::B, 3, Isogeny::Adjoint).weyl_group_with_cap(10);
        assert_eq!(small_cap, Err(Error::WeylCapExceeded { cap: 10 }));
    }

    #[test]
    fn reflections_and_dominance() {
        let a1 = rd(Series::A, 1, Isogeny::SimplyConnected);
        assert_eq!(a1.simple_reflection(1, &[3]).unwrap(), vec![-3]);
        let a2 = rd(Series::A, 2, Isogeny::Adjoint);
        assert_eq!(a2.simple_reflection(1, &[1, 0]).unwrap(), vec![-1, 1]);
        assert_eq!(a2.simple_reflection(2, &[0, 0]).unwrap(), vec![0, 0]);
        assert!(a2.simple_reflection(3, &[0, 0]).is_err());
        assert!(a2.is_dominant(&[1, 1]).unwrap());
        let a1adj = rd(Series::A, 1, Isogeny::Adjoint);
        assert!(a1adj.is_dominant(&[0]).unwrap());
        assert!(!a1adj.is_dominant(&[-1]).unwrap());
        assert!(a1adj.is_dominant(&[1, 2]).is_err());

        let (d, w) = a1.to_dominant(&[-3]).unwrap();
        assert_eq!((d, w.word().to_vec()), (vec![3], vec![1]));
        let (d, w) = a2.to_dominant(&[-1, 1]).unwrap();
        assert_eq!((d, w.word().to_vec()), (vec![1, 0], vec![1]));
        let (d, w) = a2.to_dominant(&[2, 3]).unwrap();
        assert_eq!(d, vec![2, 3]);
        assert!(w.is_identity());
    }

    #[test]
    fn longest_and_orbits() {
        let a2 = rd(Series::A, 2, Isogeny::Adjoint);
        let w0 = a2.longest_element().unwrap();
        assert_eq!(w0.length(), 3);
        assert!(w0.compose(&w0).is_identity());
        // -w0 swaps the fundamental coweights
        assert_eq!(w0.act(&[1, 0]), vec![0, -1]);
        assert_eq!(w0.act(&[0, 1]), vec![-1, 0]);
        let a1 = rd(Series::A, 1, Isogeny::SimplyConnected);
        assert_eq!(a1.longest_element().unwrap().word(), &[1]);
        let t = RootDatum::build(Series::Torus, 0, Isogeny::Adjoint, 1).unwrap();
        assert!(t.longest_element().unwrap().is_identity());

        assert_eq!(a1.weyl_orbit(&[2]).unwrap(), BTreeSet::from([vec![2], vec![-2]]));
        assert_eq!(a2.weyl_orbit(&[0, 0]).unwrap().len(), 1);
        assert_eq!(a2.weyl_orbit(&[1, 1]).unwrap().len(), 6);
        assert_eq!(a2.weyl_orbit(&[1, 0]).unwrap().len(), 3);
    }

    #[test]
    fn roots_and_coweights() {
        let a2 = rd(Series::A, 2, Isogeny::SimplyConnected);
        assert_eq!(a2.positive_roots().unwrap().len(), 3);
        let g2 = rd(Series::G, 2, Isogeny::Adjoint);
        assert_eq!(g2.positive_roots().unwrap().len(), 6);
        let b3 = rd(Series::B, 3, Isogeny::SimplyConnected);
        assert_eq!(b3.positive_roots().unwrap().len(), 9);
        for (j, w) in a2.fundamental_coweights().iter().enumerate() {
            for (i, a) in a2.simple_roots().iter().enumerate() {
                let p = crate::rational::dot(&to_qvec(a), w);
                assert_eq!(p, if i == j { Q::one() } else { Q::zero() });
            }
        }
        let gl2 = RootDatum::build(Series::A, 1, Isogeny::GeneralLinear, 0).unwrap();
        assert_eq!(gl2.central_directions(), vec![vec![1, 1]]);
    }

    #[test]
    fn json_description() {
        let s: RootDatumSpec =
            serde_json::from_str(r#"{"series":"A","rank_of_type":2,"isogeny":"adjoint","central_rank":0}"#).unwrap();
        assert_eq!(s.build().unwrap(), rd(Series::A, 2, Isogeny::Adjoint));
        let e: RootDatumSpec =
            serde_json::from_str(r#"{"rank":1,"simple_roots":[[2]],"simple_coroots":[[1]]}"#).unwrap();
        assert_eq!(e.build().unwrap(), rd(Series::A, 1, Isogeny::SimplyConnected));
        let t: RootDatumSpec = serde_json::from_str(r#"{"series":"torus","central_rank":2}"#).unwrap();
        assert_eq!(t.build().unwrap().rank(), 2);
    }
}
