//! Bound quiver algebras `kQ/I` for length-homogeneous ideals `I`.
//!
//! Because every relation is homogeneous, `kQ/I` is graded by path length and its radical
//! filtration is the length filtration. The algebra is built one degree at a time: degree
//! `d + 1` is spanned by products `s * a` of standard paths `s` of degree `d` with arrows `a`,
//! modulo the span of `s' * r` for relations `r` and standard `s'` of complementary degree.
//! Row reduction of that span (columns in lexicographic path order) eliminates the pivot
//! candidates; the others become the standard paths of degree `d + 1`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Matrix, Rref};
use crate::quiver::{AlgebraSpec, Path, Quiver};
use crate::scalar::{Field, FieldError, Scalar};

/// Degree cap used when none is given.
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// Sparse coordinates over the standard basis, sorted by index, without zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("quotient is still nonzero in degree {cap}; the ideal may not be admissible")]
    NotAdmissibleWithinCap { cap: usize },
    #[error("algebra over {spec} cannot be built with scalars of another field")]
    FieldMismatch { spec: Field },
    #[error(transparent)]
    Coefficient(#[from] FieldError),
    #[error("degree cap must be at least 2, got {0}")]
    DegreeCapTooSmall(usize),
    #[error("operands belong to different algebras")]
    MixedAlgebras,
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
}

/// `kQ/I` with a graded standard-path basis and multiplication tables.
pub struct BoundQuiverAlgebra<S> {
    spec: AlgebraSpec,
    basis: Vec<Path>,
    degree_start: Vec<usize>,
    index: HashMap<Path, usize>,
    /// `right_action[b][a]`: normal form of `basis[b] * a`.
    right_action: Vec<Vec<SparseVec<S>>>,
    between: Vec<Vec<Vec<usize>>>,
    loewy_length: usize,
    relations: Vec<Vec<(Path, S)>>,
    local: Vec<usize>,
    one: S,
    opposite: OnceLock<Arc<BoundQuiverAlgebra<S>>>,
    pub(crate) projective_cache: OnceLock<Vec<crate::repmod::ProjectiveData<S>>>,
}

impl<S> std::fmt::Debug for BoundQuiverAlgebra<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundQuiverAlgebra")
            .field("name", &self.spec.name)
            .field("dim", &self.basis.len())
            .field("loewy_length", &self.loewy_length)
            .finish()
    }
}

fn accumulate<S: Scalar>(acc: &mut BTreeMap<usize, S>, i: usize, c: &S, x: &S) {
    let mut t = c.clone();
    t *= x;
    if t.is_zero() {
        return;
    }
    let e = acc.entry(i).or_insert_with(S::zero);
    *e += &t;
    if e.is_zero() {
        acc.remove(&i);
    }
}

fn into_sparse<S>(acc: BTreeMap<usize, S>) -> SparseVec<S> {
    acc.into_iter().collect()
}

impl<S: Scalar> BoundQuiverAlgebra<S> {
    /// Builds `kQ/I` degree by degree. Fails if the quotient is still nonzero in degree
    /// `degree_cap`.
    pub fn build(spec: &AlgebraSpec, degree_cap: usize) -> Result<Arc<Self>, AlgebraError> {
        if degree_cap < 2 {
            return Err(AlgebraError::DegreeCapTooSmall(degree_cap));
        }
        if !S::supports(spec.field) {
            return Err(AlgebraError::FieldMismatch { spec: spec.field });
        }
        let q = &spec.quiver;
        let n = q.vertex_count();
        // field-bound unit, so that sums of units are reduced modulo p
        let one = S::from_i64(1, spec.field)?;
        let relations: Vec<Vec<(Path, S)>> = spec
            .relations
            .iter()
            .map(|r| {
                r.terms()
                    .map(|(p, c)| Ok((p.clone(), S::from_rational(c, spec.field)?)))
                    .collect::<Result<Vec<_>, FieldError>>()
            })
            .collect::<Result<_, _>>()?;

        let mut basis: Vec<Path> = (0..n).map(Path::trivial).collect();
        let mut degree_start = vec![0, n];
        let mut right_action: Vec<Vec<SparseVec<S>>> = Vec::new();
        for v in 0..n {
            let mut row = vec![Vec::new(); q.arrow_count()];
            for a in q.arrows_from(v) {
                row[a] = vec![(n + a, one.clone())];
            }
            right_action.push(row);
        }
        basis.extend((0..q.arrow_count()).map(|a| q.arrow_path(a)));
        degree_start.push(basis.len());
        right_action.extend((0..q.arrow_count()).map(|_| vec![Vec::new(); q.arrow_count()]));

        let loewy_length = if n == 0 {
            0
        } else {
            let mut deg = 1;
            loop {
                let current = degree_start[deg]..degree_start[deg + 1];
                if current.is_empty() {
                    break deg;
                }
                if deg == degree_cap {
                    return Err(AlgebraError::NotAdmissibleWithinCap { cap: degree_cap });
                }
                let mut candidates: Vec<(usize, usize)> = Vec::new();
                let mut cand_index: HashMap<(usize, usize), usize> = HashMap::new();
                for s in current.clone() {
                    for a in q.arrows_from(basis[s].target()) {
                        cand_index.insert((s, a), candidates.len());
                        candidates.push((s, a));
                    }
                }
                let mut rows: Vec<Vec<S>> = Vec::new();
                for r in &relations {
                    let len = r[0].0.len();
                    if len > deg + 1 {
                        continue;
                    }
                    let d0 = deg + 1 - len;
                    let src = r[0].0.source();
                    for s0 in degree_start[d0]..degree_start[d0 + 1] {
                        if basis[s0].target() != src {
                            continue;
                        }
                        let mut row = vec![S::zero(); candidates.len()];
                        for (p, mu) in r {
                            let (last, prefix) = p.arrows().split_last().unwrap();
                            let nf = Self::right_mul_arrows(&right_action, s0, prefix, &one);
                            for (b, c) in nf {
                                let col = cand_index[&(b, *last)];
                                let mut t = c;
                                t *= mu;
                                row[col] += &t;
                            }
                        }
                        if row.iter().any(|x| !x.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
                let rref = if rows.is_empty() {
                    Rref {
                        reduced: Matrix::zeros(0, candidates.len()),
                        pivots: Vec::new(),
                        rank: 0,
                    }
                } else {
                    Matrix::from_rows(candidates.len(), rows).unwrap().rref()
                };
                let mut pivot_row = vec![None; candidates.len()];
                for (r, &p) in rref.pivots.iter().enumerate() {
                    pivot_row[p] = Some(r);
                }
                let mut new_index = vec![usize::MAX; candidates.len()];
                for (j, &(s, a)) in candidates.iter().enumerate() {
                    if pivot_row[j].is_none() {
                        new_index[j] = basis.len();
                        basis.push(basis[s].extend(a, q.arrows()[a].target));
                        right_action.push(vec![Vec::new(); q.arrow_count()]);
                    }
                }
                for (j, &(s, a)) in candidates.iter().enumerate() {
                    let nf = match pivot_row[j] {
                        None => vec![(new_index[j], one.clone())],
                        Some(r) => {
                            let mut out = Vec::new();
                            for (k, x) in rref.reduced.row(r).iter().enumerate() {
                                if k != j && !x.is_zero() {
                                    debug_assert!(pivot_row[k].is_none());
                                    out.push((new_index[k], -x.clone()));
                                }
                            }
                            out.sort_by_key(|e| e.0);
                            out
                        }
                    };
                    right_action[s][a] = nf;
                }
                degree_start.push(basis.len());
                deg += 1;
            }
        };
        degree_start.truncate(loewy_length + 1);
        if n == 0 {
            degree_start = vec![0];
        }

        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut between = vec![vec![Vec::new(); n]; n];
        let mut local = Vec::with_capacity(basis.len());
        for (i, p) in basis.iter().enumerate() {
            let cell: &mut Vec<usize> = &mut between[p.source()][p.target()];
            local.push(cell.len());
            cell.push(i);
        }
        Ok(Arc::new(BoundQuiverAlgebra {
            spec: spec.clone(),
            basis,
            degree_start,
            index,
            right_action,
            between,
            loewy_length,
            relations,
            local,
            one,
            opposite: OnceLock::new(),
            projective_cache: OnceLock::new(),
        }))
    }

    fn right_mul_arrows(
        table: &[Vec<SparseVec<S>>],
        start: usize,
        arrows: &[usize],
        one: &S,
    ) -> SparseVec<S> {
        let mut cur: SparseVec<S> = vec![(start, one.clone())];
        for &a in arrows {
            let mut acc = BTreeMap::new();
            for (b, c) in &cur {
                for (k, x) in &table[*b][a] {
                    accumulate(&mut acc, *k, c, x);
                }
            }
            cur = into_sparse(acc);
            if cur.is_empty() {
                break;
            }
        }
        cur
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn field(&self) -> Field {
        self.spec.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.spec.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.spec.quiver.vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.spec.quiver.arrow_count()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Loewy length: the nilpotency index of the radical.
    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    /// Standard paths, grouped by degree.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    /// Basis indices of degree `d`.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.degree_start.len() {
            return self.basis.len()..self.basis.len();
        }
        self.degree_start[d]..self.degree_start[d + 1]
    }

    pub fn basis_sizes(&self) -> Vec<usize> {
        self.degree_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Basis index of a standard path.
    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis index of the arrow `a` (arrows are always standard).
    pub fn arrow_index(&self, a: usize) -> usize {
        self.vertex_count() + a
    }

    /// Standard paths from `u` to `v`, i.e. a basis of `e_u Λ e_v`.
    pub fn paths_between(&self, u: usize, v: usize) -> &[usize] {
        &self.between[u][v]
    }

    pub fn hom_space_dim(&self, u: usize, v: usize) -> Result<usize, AlgebraError> {
        let n = self.vertex_count();
        for x in [u, v] {
            if x >= n {
                return Err(AlgebraError::UnknownVertex(x));
            }
        }
        Ok(self.between[u][v].len())
    }

    /// Position of basis element `b` within [`Self::paths_between`] of its endpoints.
    pub fn local_index(&self, b: usize) -> usize {
        self.local[b]
    }

    /// The unit of the ground field.
    pub fn one(&self) -> S {
        self.one.clone()
    }

    /// Image of an integer in the ground field.
    pub fn scalar(&self, v: i64) -> S {
        S::from_i64(v, self.spec.field).expect("integers embed in every field")
    }

    pub fn is_trivial_index(&self, i: usize) -> bool {
        i < self.vertex_count()
    }

    /// Relations with coefficients in the ground field.
    pub fn relations(&self) -> &[Vec<(Path, S)>] {
        &self.relations
    }

    /// Normal form of `basis[b] * a`.
    pub fn right_arrow_action(&self, b: usize, a: usize) -> &SparseVec<S> {
        &self.right_action[b][a]
    }

    /// Normal form of an arbitrary path of the quiver.
    pub fn reduce_path(&self, p: &Path) -> SparseVec<S> {
        Self::right_mul_arrows(&self.right_action, p.source(), p.arrows(), &self.one)
    }

    /// Normal form of a linear combination of arbitrary paths.
    pub fn reduce(&self, terms: &[(Path, S)]) -> SparseVec<S> {
        let mut acc = BTreeMap::new();
        for (p, c) in terms {
            for (k, x) in self.reduce_path(p) {
                accumulate(&mut acc, k, c, &x);
            }
        }
        into_sparse(acc)
    }

    /// Product of two basis elements.
    pub fn multiply_basis(&self, i: usize, j: usize) -> SparseVec<S> {
        let (p, q) = (&self.basis[i], &self.basis[j]);
        if p.target() != q.source() {
            return Vec::new();
        }
        Self::right_mul_arrows(&self.right_action, i, q.arrows(), &self.one)
    }

    /// Product of sparse elements.
    pub fn multiply_sparse(&self, x: &[(usize, S)], y: &[(usize, S)]) -> SparseVec<S> {
        let mut acc = BTreeMap::new();
        for (i, c) in x {
            for (j, d) in y {
                let mut cd = c.clone();
                cd *= d;
                for (k, v) in self.multiply_basis(*i, *j) {
                    accumulate(&mut acc, k, &cd, &v);
                }
            }
        }
        into_sparse(acc)
    }

    /// `1 = Σ e_i`.
    pub fn unit(self: &Arc<Self>) -> AlgebraElement<S> {
        AlgebraElement::from_sparse(
            self,
            (0..self.vertex_count())
                .map(|v| (v, self.one.clone()))
                .collect(),
        )
    }

    pub fn element(self: &Arc<Self>, i: usize) -> AlgebraElement<S> {
        AlgebraElement::from_sparse(self, vec![(i, self.one.clone())])
    }

    /// Whether two algebras are built from the same spec.
    pub fn same_as(&self, other: &BoundQuiverAlgebra<S>) -> bool {
        std::ptr::eq(self, other) || self.spec == other.spec
    }

    /// Loewy lengths of the indecomposable projectives `Λe_i`.
    pub fn loewy_profile(&self) -> LoewyProfile {
        let n = self.vertex_count();
        let mut per_vertex = vec![0; n];
        for p in &self.basis {
            let t = p.target();
            per_vertex[t] = per_vertex[t].max(p.len() + 1);
        }
        let non_maximal = (0..n)
            .filter(|&i| per_vertex[i] < self.loewy_length)
            .collect();
        LoewyProfile {
            loewy_length: self.loewy_length,
            per_vertex,
            non_maximal,
        }
    }

    /// The opposite algebra, built from the reversed spec and cached.
    pub fn opposite(&self) -> Arc<BoundQuiverAlgebra<S>> {
        self.opposite
            .get_or_init(|| {
                let cap = (self.loewy_length + 1).max(2);
                BoundQuiverAlgebra::build(&self.spec.opposite(), cap)
                    .expect("opposite of a finite-dimensional algebra")
            })
            .clone()
    }

    pub fn summary(&self) -> AlgebraSummary {
        AlgebraSummary {
            name: self.spec.name.clone(),
            field: self.spec.field.to_string(),
            vertices: self.vertex_count(),
            arrows: self.arrow_count(),
            relations: self.spec.relations.len(),
            dimension: self.dim(),
            loewy_length: self.loewy_length,
            basis_sizes: self.basis_sizes(),
        }
    }
}

/// JSON summary of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub field: String,
    pub vertices: usize,
    pub arrows: usize,
    pub relations: usize,
    pub dimension: usize,
    pub loewy_length: usize,
    pub basis_sizes: Vec<usize>,
}

/// Loewy lengths of all indecomposable projectives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoewyProfile {
    pub loewy_length: usize,
    /// `Ll(Λe_i)` per vertex.
    pub per_vertex: Vec<usize>,
    /// Vertices whose projective has non-maximal Loewy length; their idempotents sum to
    /// `f_{n.m}`.
    pub non_maximal: Vec<usize>,
}

impl LoewyProfile {
    pub fn is_uniform(&self) -> bool {
        self.non_maximal.is_empty()
    }
}

/// An element of a bound quiver algebra in standard coordinates.
#[derive(Clone)]
pub struct AlgebraElement<S> {
    algebra: Arc<BoundQuiverAlgebra<S>>,
    coeffs: SparseVec<S>,
}

impl<S: Scalar> std::fmt::Debug for AlgebraElement<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl<S: Scalar> std::fmt::Display for AlgebraElement<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let q = self.algebra.quiver();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, c)| format!("{}*{}", c, q.path_string(&self.algebra.basis[*i])))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar> PartialEq for AlgebraElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero(algebra: &Arc<BoundQuiverAlgebra<S>>) -> Self {
        AlgebraElement {
            algebra: algebra.clone(),
            coeffs: Vec::new(),
        }
    }

    /// From coordinates; duplicate indices are summed and zeros dropped.
    pub fn from_sparse(algebra: &Arc<BoundQuiverAlgebra<S>>, coeffs: SparseVec<S>) -> Self {
        let mut acc = BTreeMap::new();
        for (i, c) in coeffs {
            assert!(i < algebra.dim(), "basis index out of range");
            let e = acc.entry(i).or_insert_with(S::zero);
            *e += &c;
            if e.is_zero() {
                acc.remove(&i);
            }
        }
        AlgebraElement {
            algebra: algebra.clone(),
            coeffs: into_sparse(acc),
        }
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra<S>> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[(usize, S)] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> S {
        self.coeffs
            .iter()
            .find(|e| e.0 == i)
            .map_or_else(S::zero, |e| e.1.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_dense(&self) -> Vec<S> {
        let mut v = vec![S::zero(); self.algebra.dim()];
        for (i, c) in &self.coeffs {
            v[*i] = c.clone();
        }
        v
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(AlgebraError::MixedAlgebras);
        }
        let mut all = self.coeffs.clone();
        all.extend(other.coeffs.iter().cloned());
        Ok(Self::from_sparse(&self.algebra, all))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_sparse(
            &self.algebra,
            self.coeffs
                .iter()
                .map(|(i, x)| {
                    let mut t = x.clone();
                    t *= c;
                    (*i, t)
                })
                .collect(),
        )
    }

    /// Bilinear extension of compose-then-reduce.
    pub fn multiply(&self, other: &Self) -> Result<Self, AlgebraError> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(AlgebraError::MixedAlgebras);
        }
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.algebra.multiply_sparse(&self.coeffs, &other.coeffs),
        })
    }

    /// Whether all coordinates on trivial paths vanish, i.e. the element lies in the radical.
    pub fn in_radical(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(i, _)| !self.algebra.is_trivial_index(*i))
    }
}
