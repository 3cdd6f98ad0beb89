//! Finite-dimensional left modules as quiver representations, and their minimal projective
//! resolutions.
//!
//! A representation has a space `M_v = e_v M` at every vertex and, for every arrow
//! `a : v -> w`, a matrix `M_a` of size `dim M_v x dim M_w` acting on column vectors, so that
//! `m |-> a*m` maps `M_w` to `M_v`. With left-to-right composition, the matrix of a path
//! `a1 ... ak` is `M_a1 * ... * M_ak`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::BoundQuiverAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::quiver::Path;
use crate::scalar::Scalar;

/// Default resolution length cap.
pub const DEFAULT_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("unknown vertex index {0}")]
    UnknownVertex(usize),
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("matrix of arrow {arrow} is {found:?}, expected {expected:?}")]
    ArrowShape {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("relation {0} does not act as zero")]
    RelationViolated(usize),
    #[error("map does not commute with arrow {0}")]
    NotAMorphism(String),
    #[error("modules over different algebras")]
    MixedAlgebras,
    #[error("the zero module has no projective cover")]
    ZeroModule,
}

/// `n` or "at least `cap`"; infinitude is never asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedNat {
    Finite(usize),
    /// Not determined within the cap: the value exceeds `cap`.
    AtLeast(usize),
}

impl ExtendedNat {
    pub fn finite(self) -> Option<usize> {
        match self {
            ExtendedNat::Finite(n) => Some(n),
            ExtendedNat::AtLeast(_) => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedNat::Finite(_))
    }

    /// Maximum, where any cap-out dominates.
    pub fn max(self, other: ExtendedNat) -> ExtendedNat {
        use ExtendedNat::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.max(b)),
            (AtLeast(a), AtLeast(b)) => AtLeast(a.max(b)),
            (AtLeast(a), Finite(_)) | (Finite(_), AtLeast(a)) => AtLeast(a),
        }
    }

    /// Sum, where any cap-out dominates.
    pub fn add(self, other: ExtendedNat) -> ExtendedNat {
        use ExtendedNat::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (AtLeast(a), Finite(b)) | (Finite(b), AtLeast(a)) => AtLeast(a + b),
            (AtLeast(a), AtLeast(b)) => AtLeast(a + b),
        }
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(n) => write!(f, "finite:{n}"),
            ExtendedNat::AtLeast(c) => write!(f, "at_least:{c}"),
        }
    }
}

impl Serialize for ExtendedNat {
    fn serialize<Z: serde::Serializer>(&self, s: Z) -> Result<Z::Ok, Z::Error> {
        s.collect_str(self)
    }
}

/// Arrow matrices of an indecomposable projective `Λe_i`.
pub struct ProjectiveData<S> {
    dims: Vec<usize>,
    maps: Vec<Matrix<S>>,
}

fn projective_data<S: Scalar>(alg: &BoundQuiverAlgebra<S>) -> &[ProjectiveData<S>] {
    alg.projective_cache.get_or_init(|| {
        let n = alg.vertex_count();
        let q = alg.quiver();
        (0..n)
            .map(|i| {
                let dims: Vec<usize> = (0..n).map(|v| alg.paths_between(v, i).len()).collect();
                let maps = q
                    .arrows()
                    .iter()
                    .enumerate()
                    .map(|(a, arrow)| {
                        let (v, w) = (arrow.source, arrow.target);
                        let mut m = Matrix::zeros(dims[v], dims[w]);
                        for (col, &p) in alg.paths_between(w, i).iter().enumerate() {
                            for (b, c) in alg.multiply_basis(alg.arrow_index(a), p) {
                                m[(alg.local_index(b), col)] = c;
                            }
                        }
                        m
                    })
                    .collect();
                ProjectiveData { dims, maps }
            })
            .collect()
    })
}

/// A finite-dimensional left module.
#[derive(Clone)]
pub struct Representation<S> {
    algebra: Arc<BoundQuiverAlgebra<S>>,
    dims: Vec<usize>,
    maps: Vec<Matrix<S>>,
}

impl<S: Scalar> fmt::Debug for Representation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("algebra", &self.algebra.name())
            .field("dims", &self.dims)
            .finish()
    }
}

impl<S: Scalar> Representation<S> {
    /// Validates shapes and that every relation acts as zero.
    pub fn new(
        algebra: &Arc<BoundQuiverAlgebra<S>>,
        dims: Vec<usize>,
        maps: Vec<Matrix<S>>,
    ) -> Result<Self, RepError> {
        let q = algebra.quiver();
        if dims.len() != q.vertex_count() {
            return Err(RepError::Shape {
                expected: q.vertex_count(),
                found: dims.len(),
            });
        }
        if maps.len() != q.arrow_count() {
            return Err(RepError::Shape {
                expected: q.arrow_count(),
                found: maps.len(),
            });
        }
        for (arrow, m) in q.arrows().iter().zip(&maps) {
            let expected = (dims[arrow.source], dims[arrow.target]);
            if (m.rows(), m.cols()) != expected {
                return Err(RepError::ArrowShape {
                    arrow: arrow.id.clone(),
                    expected,
                    found: (m.rows(), m.cols()),
                });
            }
        }
        let rep = Self::new_unchecked(algebra, dims, maps);
        if let Some(r) = rep.violated_relation() {
            return Err(RepError::RelationViolated(r));
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(
        algebra: &Arc<BoundQuiverAlgebra<S>>,
        dims: Vec<usize>,
        maps: Vec<Matrix<S>>,
    ) -> Self {
        Representation {
            algebra: algebra.clone(),
            dims,
            maps,
        }
    }

    fn violated_relation(&self) -> Option<usize> {
        self.algebra.relations().iter().position(|r| {
            let (s, t) = (r[0].0.source(), r[0].0.target());
            let mut total = Matrix::zeros(self.dims[s], self.dims[t]);
            for (p, mu) in r {
                total = total.add(&self.path_matrix(p).scale(mu)).unwrap();
            }
            !total.is_zero()
        })
    }

    pub fn zero(algebra: &Arc<BoundQuiverAlgebra<S>>) -> Self {
        let q = algebra.quiver();
        let maps = q.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Self::new_unchecked(algebra, vec![0; q.vertex_count()], maps)
    }

    pub fn algebra(&self) -> &Arc<BoundQuiverAlgebra<S>> {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn maps(&self) -> &[Matrix<S>] {
        &self.maps
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix<S> {
        &self.maps[a]
    }

    /// Matrix of a path, `dim M_s x dim M_t`.
    pub fn path_matrix(&self, p: &Path) -> Matrix<S> {
        let v = p.source();
        let mut m = Matrix::identity(self.dims[v]);
        for &a in p.arrows() {
            m = m.mul(&self.maps[a]).unwrap();
        }
        m
    }

    /// `p * x` for `x` in `M_t(p)`.
    pub fn apply_path(&self, p: &Path, x: &[S]) -> Vec<S> {
        let mut v = x.to_vec();
        for &a in p.arrows().iter().rev() {
            v = self.maps[a].mul_vec(&v).unwrap();
        }
        v
    }

    pub fn direct_sum(algebra: &Arc<BoundQuiverAlgebra<S>>, parts: &[Representation<S>]) -> Self {
        let q = algebra.quiver();
        let dims = (0..q.vertex_count())
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let maps = (0..q.arrow_count())
            .map(|a| {
                let blocks: Vec<Matrix<S>> = parts.iter().map(|p| p.maps[a].clone()).collect();
                Matrix::block_diagonal(&blocks)
            })
            .collect();
        Self::new_unchecked(algebra, dims, maps)
    }

    /// Whether the relations act as zero (always true for modules built by this crate).
    pub fn satisfies_relations(&self) -> bool {
        self.violated_relation().is_none()
    }

    /// Whether all arrow maps vanish.
    pub fn is_semisimple(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// Radical series dimensions `dim rad^k M / rad^{k+1} M`, ending at the last nonzero layer.
    pub fn loewy_layers(&self) -> Vec<usize> {
        let mut layers = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let tr = top_and_radical(&cur);
            layers.push(tr.top.dim());
            cur = tr.radical;
        }
        layers
    }

    pub fn loewy_length(&self) -> usize {
        self.loewy_layers().len()
    }
}

impl<S: Scalar> PartialEq for Representation<S> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.dims == other.dims && self.maps == other.maps
    }
}

/// A module homomorphism, one matrix `dim N_v x dim M_v` per vertex.
#[derive(Clone)]
pub struct ModuleMap<S> {
    pub source: Representation<S>,
    pub target: Representation<S>,
    pub components: Vec<Matrix<S>>,
}

impl<S: Scalar> fmt::Debug for ModuleMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuleMap")
            .field("source", &self.source.dims)
            .field("target", &self.target.dims)
            .finish()
    }
}

impl<S: Scalar> ModuleMap<S> {
    /// Checks shapes and commutation with every arrow.
    pub fn new(
        source: Representation<S>,
        target: Representation<S>,
        components: Vec<Matrix<S>>,
    ) -> Result<Self, RepError> {
        if !source.algebra.same_as(&target.algebra) {
            return Err(RepError::MixedAlgebras);
        }
        let f = ModuleMap {
            source,
            target,
            components,
        };
        if f.components.len() != f.source.dims.len() {
            return Err(RepError::Shape {
                expected: f.source.dims.len(),
                found: f.components.len(),
            });
        }
        for (v, c) in f.components.iter().enumerate() {
            if c.rows() != f.target.dims[v] || c.cols() != f.source.dims[v] {
                return Err(RepError::Shape {
                    expected: f.target.dims[v] * f.source.dims[v],
                    found: c.rows() * c.cols(),
                });
            }
        }
        if let Some(a) = f.non_commuting_arrow() {
            return Err(RepError::NotAMorphism(a));
        }
        Ok(f)
    }

    fn non_commuting_arrow(&self) -> Option<String> {
        let q = self.source.algebra.quiver();
        q.arrows().iter().enumerate().find_map(|(a, arrow)| {
            let (v, w) = (arrow.source, arrow.target);
            let lhs = self.components[v].mul(&self.source.maps[a]).unwrap();
            let rhs = self.target.maps[a].mul(&self.components[w]).unwrap();
            (lhs != rhs).then(|| arrow.id.clone())
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.components
            .iter()
            .zip(&self.target.dims)
            .all(|(c, &d)| c.rank() == d)
    }

    pub fn is_injective(&self) -> bool {
        self.components
            .iter()
            .zip(&self.source.dims)
            .all(|(c, &d)| c.rank() == d)
    }

    pub fn rank(&self) -> Vec<usize> {
        self.components.iter().map(Matrix::rank).collect()
    }
}

fn check_vertex<S: Scalar>(alg: &BoundQuiverAlgebra<S>, i: usize) -> Result<(), RepError> {
    if i < alg.vertex_count() {
        Ok(())
    } else {
        Err(RepError::UnknownVertex(i))
    }
}

/// `P(i) = Λe_i`; the basis at `v` is the standard paths from `v` to `i`.
pub fn projective<S: Scalar>(
    alg: &Arc<BoundQuiverAlgebra<S>>,
    i: usize,
) -> Result<Representation<S>, RepError> {
    check_vertex(alg, i)?;
    let data = &projective_data(alg)[i];
    Ok(Representation::new_unchecked(
        alg,
        data.dims.clone(),
        data.maps.clone(),
    ))
}

/// `S(i)`: one-dimensional at `i`.
pub fn simple<S: Scalar>(
    alg: &Arc<BoundQuiverAlgebra<S>>,
    i: usize,
) -> Result<Representation<S>, RepError> {
    check_vertex(alg, i)?;
    let q = alg.quiver();
    let dims: Vec<usize> = (0..q.vertex_count()).map(|v| usize::from(v == i)).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(dims[a.source], dims[a.target]))
        .collect();
    Ok(Representation::new_unchecked(alg, dims, maps))
}

/// Top, radical and the canonical maps `M -> top M` and `rad M -> M`.
pub struct TopRadical<S> {
    pub top: Representation<S>,
    pub radical: Representation<S>,
    pub projection: ModuleMap<S>,
    pub inclusion: ModuleMap<S>,
}

pub(crate) fn radical_subspaces<S: Scalar>(m: &Representation<S>) -> Vec<Subspace<S>> {
    let q = m.algebra.quiver();
    (0..q.vertex_count())
        .map(|v| {
            let cols: Vec<Vec<S>> = q
                .arrows_from(v)
                .flat_map(|a| (0..m.maps[a].cols()).map(move |j| m.maps[a].column(j)))
                .collect();
            Subspace::span(m.dims[v], cols)
        })
        .collect()
}

/// `rad M = Σ_a Im M_a` and `top M = M / rad M`.
pub fn top_and_radical<S: Scalar>(m: &Representation<S>) -> TopRadical<S> {
    let alg = &m.algebra;
    let q = alg.quiver();
    let rad = radical_subspaces(m);
    let rad_dims: Vec<usize> = rad.iter().map(Subspace::dim).collect();
    let rad_maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let (v, w) = (arrow.source, arrow.target);
            let cols: Vec<Vec<S>> = rad[w]
                .basis()
                .iter()
                .map(|y| rad[v].coords(&m.maps[a].mul_vec(y).unwrap()))
                .collect();
            Matrix::from_columns(rad_dims[v], &cols)
        })
        .collect();
    let radical = Representation::new_unchecked(alg, rad_dims, rad_maps);
    let top_dims: Vec<usize> = (0..q.vertex_count())
        .map(|v| m.dims[v] - rad[v].dim())
        .collect();
    let top_maps = q
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(top_dims[a.source], top_dims[a.target]))
        .collect();
    let top = Representation::new_unchecked(alg, top_dims.clone(), top_maps);
    let projection = (0..q.vertex_count())
        .map(|v| {
            let cols: Vec<Vec<S>> = (0..m.dims[v])
                .map(|j| {
                    let mut e = vec![S::zero(); m.dims[v]];
                    e[j] = alg.one();
                    rad[v].quotient_coords(&e)
                })
                .collect();
            Matrix::from_columns(top_dims[v], &cols)
        })
        .collect();
    let inclusion = rad.iter().map(Subspace::to_matrix).collect();
    TopRadical {
        projection: ModuleMap {
            source: m.clone(),
            target: top.clone(),
            components: projection,
        },
        inclusion: ModuleMap {
            source: radical.clone(),
            target: m.clone(),
            components: inclusion,
        },
        top,
        radical,
    }
}

/// One projective cover computed in resolution coordinates.
struct CoverStep<S> {
    vertices: Vec<usize>,
    /// `offsets[w][g]`: start of generator `g`'s block in `P_w`.
    offsets: Vec<Vec<usize>>,
    pdims: Vec<usize>,
    components: Vec<Matrix<S>>,
    kernels: Vec<Subspace<S>>,
}

fn cover_step<S: Scalar>(m: &Representation<S>) -> CoverStep<S> {
    let alg = &m.algebra;
    let n = alg.vertex_count();
    let rad = radical_subspaces(m);
    // generators: unit vectors completing the radical, vertex by vertex
    let mut vertices = Vec::new();
    let mut gens: Vec<Vec<S>> = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        for c in r.complement_positions() {
            let mut e = vec![S::zero(); m.dims[v]];
            e[c] = alg.one();
            vertices.push(v);
            gens.push(e);
        }
    }
    let mut offsets = vec![Vec::with_capacity(vertices.len()); n];
    let mut pdims = vec![0; n];
    for (w, offs) in offsets.iter_mut().enumerate() {
        for &v in &vertices {
            offs.push(pdims[w]);
            pdims[w] += alg.paths_between(w, v).len();
        }
    }
    let components: Vec<Matrix<S>> = (0..n)
        .map(|w| {
            let mut cols = Vec::with_capacity(pdims[w]);
            for (g, &v) in vertices.iter().enumerate() {
                for &p in alg.paths_between(w, v) {
                    cols.push(m.apply_path(alg.basis_path(p), &gens[g]));
                }
            }
            Matrix::from_columns(m.dims[w], &cols)
        })
        .collect();
    let kernels = components.iter().map(Matrix::kernel).collect();
    CoverStep {
        vertices,
        offsets,
        pdims,
        components,
        kernels,
    }
}

impl<S: Scalar> CoverStep<S> {
    /// `P_a y` for `y` in `P_t(a)`, blockwise.
    fn apply_arrow(&self, alg: &BoundQuiverAlgebra<S>, a: usize, y: &[S]) -> Vec<S> {
        let arrow = &alg.quiver().arrows()[a];
        let (v, w) = (arrow.source, arrow.target);
        let data = projective_data(alg);
        let mut out = vec![S::zero(); self.pdims[v]];
        for (g, &i) in self.vertices.iter().enumerate() {
            let block = &data[i].maps[a];
            let (ow, ov) = (self.offsets[w][g], self.offsets[v][g]);
            for c in 0..block.cols() {
                let x = &y[ow + c];
                if x.is_zero() {
                    continue;
                }
                for r in 0..block.rows() {
                    let e = &block[(r, c)];
                    if !e.is_zero() {
                        let mut t = e.clone();
                        t *= x;
                        out[ov + r] += &t;
                    }
                }
            }
        }
        out
    }

    fn projective(&self, alg: &Arc<BoundQuiverAlgebra<S>>) -> Representation<S> {
        let parts: Vec<Representation<S>> = self
            .vertices
            .iter()
            .map(|&i| projective(alg, i).unwrap())
            .collect();
        Representation::direct_sum(alg, &parts)
    }

    fn syzygy(&self, alg: &Arc<BoundQuiverAlgebra<S>>) -> Representation<S> {
        let q = alg.quiver();
        let dims: Vec<usize> = self.kernels.iter().map(Subspace::dim).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let (v, w) = (arrow.source, arrow.target);
                let cols: Vec<Vec<S>> = self.kernels[w]
                    .basis()
                    .iter()
                    .map(|y| self.kernels[v].coords(&self.apply_arrow(alg, a, y)))
                    .collect();
                Matrix::from_columns(dims[v], &cols)
            })
            .collect();
        Representation::new_unchecked(alg, dims, maps)
    }

    fn kernel_is_zero(&self) -> bool {
        self.kernels.iter().all(|k| k.dim() == 0)
    }

    /// Kernel inside `rad P`: every kernel vector vanishes on the trivial-path coordinates.
    fn kernel_in_radical(&self) -> bool {
        self.kernels.iter().enumerate().all(|(w, k)| {
            self.vertices
                .iter()
                .enumerate()
                .all(|(g, &i)| i != w || k.basis().iter().all(|y| y[self.offsets[w][g]].is_zero()))
        })
    }
}

/// A projective cover `P -> M`.
pub struct ProjectiveCover<S> {
    /// Vertices `i` of the summands `P(i)`, in order.
    pub vertices: Vec<usize>,
    pub projective: Representation<S>,
    pub map: ModuleMap<S>,
}

pub fn projective_cover<S: Scalar>(m: &Representation<S>) -> Result<ProjectiveCover<S>, RepError> {
    if m.is_zero() {
        return Err(RepError::ZeroModule);
    }
    let step = cover_step(m);
    let projective = step.projective(&m.algebra);
    Ok(ProjectiveCover {
        map: ModuleMap {
            source: projective.clone(),
            target: m.clone(),
            components: step.components,
        },
        vertices: step.vertices,
        projective,
    })
}

/// First syzygy `Ω(M)`: the kernel of the projective cover. Zero for `M = 0`.
pub fn syzygy<S: Scalar>(m: &Representation<S>) -> Representation<S> {
    if m.is_zero() {
        return m.clone();
    }
    cover_step(m).syzygy(&m.algebra)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResolutionStatus {
    Terminated(usize),
    CapReached(usize),
}

impl ResolutionStatus {
    pub fn dimension(self) -> ExtendedNat {
        match self {
            ResolutionStatus::Terminated(n) => ExtendedNat::Finite(n),
            ResolutionStatus::CapReached(c) => ExtendedNat::AtLeast(c),
        }
    }
}

/// Step `k`: `P_k` and the differential `d_k : P_k -> P_{k-1}` (`P_{-1} = M`).
#[derive(Clone)]
pub struct ResolutionStep<S> {
    pub vertices: Vec<usize>,
    pub dims: Vec<usize>,
    /// Per-vertex matrices of `d_k`.
    pub differential: Vec<Matrix<S>>,
    /// Dimension vector of the kernel of `d_k`.
    pub kernel_dims: Vec<usize>,
    /// Kernel of `d_k` inside `rad P_k`.
    pub minimal: bool,
}

/// A truncated minimal projective resolution.
#[derive(Clone)]
pub struct Resolution<S> {
    pub module_dims: Vec<usize>,
    pub steps: Vec<ResolutionStep<S>>,
    pub status: ResolutionStatus,
    pub cap: usize,
}

impl<S: Scalar> fmt::Debug for ResolutionStep<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ResolutionStep")
            .field("vertices", &self.vertices)
            .field("dims", &self.dims)
            .field("minimal", &self.minimal)
            .finish()
    }
}

impl<S: Scalar> fmt::Debug for Resolution<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Resolution")
            .field("status", &self.status)
            .field("steps", &self.steps)
            .finish()
    }
}

fn resolve<S: Scalar>(m: &Representation<S>, cap: usize) -> Resolution<S> {
    let alg = &m.algebra;
    let n = alg.vertex_count();
    let mut steps = Vec::new();
    let mut current = m.clone();
    let mut inclusion: Option<Vec<Matrix<S>>> = None;
    let status = if m.is_zero() {
        ResolutionStatus::Terminated(0)
    } else {
        let mut k = 0;
        loop {
            let step = cover_step(&current);
            let differential = if let Some(inc) = &inclusion {
                (0..n)
                    .map(|w| inc[w].mul(&step.components[w]).unwrap())
                    .collect()
            } else {
                step.components.clone()
            };
            steps.push(ResolutionStep {
                vertices: step.vertices.clone(),
                dims: step.pdims.clone(),
                differential,
                kernel_dims: step.kernels.iter().map(Subspace::dim).collect(),
                minimal: step.kernel_in_radical(),
            });
            if step.kernel_is_zero() {
                break ResolutionStatus::Terminated(k);
            }
            if k == cap {
                break ResolutionStatus::CapReached(cap);
            }
            current = step.syzygy(alg);
            inclusion = Some(step.kernels.iter().map(Subspace::to_matrix).collect());
            k += 1;
        }
    };
    Resolution {
        module_dims: m.dims.clone(),
        steps,
        status,
        cap,
    }
}

/// Minimal projective resolution computed through `P_cap`.
pub fn minimal_resolution<S: Scalar>(m: &Representation<S>, cap: usize) -> Resolution<S> {
    resolve(m, cap)
}

impl<S: Scalar> Resolution<S> {
    pub fn dimension(&self) -> ExtendedNat {
        self.status.dimension()
    }

    /// Vertex multisets of `P_0, P_1, ...`.
    pub fn vertex_sequence(&self) -> Vec<Vec<usize>> {
        self.steps.iter().map(|s| s.vertices.clone()).collect()
    }

    pub fn is_minimal(&self) -> bool {
        self.steps.iter().all(|s| s.minimal)
    }

    /// `rank d_k + rank d_{k+1} = dim P_k` vertex-wise, and `d_0` is onto `M`, checked on the
    /// stored differentials.
    pub fn is_exact(&self) -> bool {
        let ranks: Vec<Vec<usize>> = self
            .steps
            .iter()
            .map(|s| s.differential.iter().map(Matrix::rank).collect())
            .collect();
        if ranks.iter().any(Vec::is_empty) && !self.steps.is_empty() {
            return false;
        }
        if let Some(r0) = ranks.first() {
            if r0 != &self.module_dims {
                return false;
            }
        }
        for k in 0..self.steps.len() {
            let dims = &self.steps[k].dims;
            for v in 0..dims.len() {
                let next = ranks
                    .get(k + 1)
                    .map_or(self.steps[k].kernel_dims[v], |r| r[v]);
                if ranks[k][v] + next != dims[v] {
                    return false;
                }
            }
        }
        // the final kernel is zero exactly when terminated
        match (self.status, self.steps.last()) {
            (ResolutionStatus::Terminated(_), Some(s)) => s.kernel_dims.iter().all(|&d| d == 0),
            _ => true,
        }
    }

    /// `Σ (-1)^k dim P_k` per vertex.
    pub fn euler_characteristic(&self) -> Vec<i64> {
        let n = self.module_dims.len();
        (0..n)
            .map(|v| {
                self.steps
                    .iter()
                    .enumerate()
                    .map(|(k, s)| {
                        if k % 2 == 0 {
                            s.dims[v] as i64
                        } else {
                            -(s.dims[v] as i64)
                        }
                    })
                    .sum()
            })
            .collect()
    }

    pub fn report(&self, alg: &BoundQuiverAlgebra<S>) -> ResolutionReport {
        let q = alg.quiver();
        ResolutionReport {
            module_dims: self.module_dims.clone(),
            status: self.dimension().to_string(),
            cap: self.cap,
            steps: self
                .steps
                .iter()
                .map(|s| StepReport {
                    projectives: s
                        .vertices
                        .iter()
                        .map(|&v| q.vertex_name(v).to_string())
                        .collect(),
                    dims: s.dims.clone(),
                    differential_shapes: s
                        .differential
                        .iter()
                        .map(|m| [m.rows(), m.cols()])
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub projectives: Vec<String>,
    pub dims: Vec<usize>,
    pub differential_shapes: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub module_dims: Vec<usize>,
    pub status: String,
    pub cap: usize,
    pub steps: Vec<StepReport>,
}

/// Splits `m` along the cyclic submodules `Λx` generated by a top basis when their sum is
/// direct, each piece written canonically as `P(v) / ann(x)`.
fn split_cyclic<S: Scalar>(
    m: &Representation<S>,
    step: &CoverStep<S>,
) -> Option<Vec<Representation<S>>> {
    let alg = &m.algebra;
    let n = alg.vertex_count();
    let blocks = |g: usize, w: usize| {
        let start = step.offsets[w][g];
        let len = alg.paths_between(w, step.vertices[g]).len();
        (start..start + len).collect::<Vec<_>>()
    };
    let direct = (0..n).all(|w| {
        let total: usize = (0..step.vertices.len())
            .map(|g| step.components[w].select_columns(&blocks(g, w)).rank())
            .sum();
        total == m.dims[w]
    });
    if !direct {
        return None;
    }
    let pieces = step
        .vertices
        .iter()
        .enumerate()
        .map(|(g, &v)| {
            let ann: Vec<Subspace<S>> = (0..n)
                .map(|w| step.components[w].select_columns(&blocks(g, w)).kernel())
                .collect();
            quotient(&projective(alg, v).unwrap(), &ann)
        })
        .collect();
    Some(pieces)
}

/// Endomorphism problems larger than this many unknowns are not attempted.
const DECOMPOSE_LIMIT: usize = 6000;

/// Basis of `Hom_Λ(M, N)`, each element given by its matrices `M_v -> N_v`.
pub fn hom_basis<S: Scalar>(
    m: &Representation<S>,
    n: &Representation<S>,
) -> Result<Vec<Vec<Matrix<S>>>, RepError> {
    if !m.algebra.same_as(&n.algebra) {
        return Err(RepError::MixedAlgebras);
    }
    let nv = m.dims.len();
    let mut off = vec![0; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = off[nv];
    let mut rows = Vec::new();
    // F_s M_a = N_a F_t for every arrow a : s -> t
    for (a, arrow) in m.algebra.quiver().arrows().iter().enumerate() {
        let (s, t) = (arrow.source, arrow.target);
        let (ma, na) = (&m.maps[a], &n.maps[a]);
        for i in 0..n.dims[s] {
            for j in 0..m.dims[t] {
                let mut row = vec![S::zero(); unknowns];
                for k in 0..m.dims[s] {
                    row[off[s] + i * m.dims[s] + k] += &ma[(k, j)];
                }
                for l in 0..n.dims[t] {
                    row[off[t] + l * m.dims[t] + j] -= &na[(i, l)];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..unknowns)
            .map(|u| {
                let mut e = vec![S::zero(); unknowns];
                e[u] = m.algebra.one();
                e
            })
            .collect()
    } else {
        Matrix::from_rows(unknowns, rows).unwrap().kernel_basis()
    };
    Ok(basis
        .into_iter()
        .map(|x| {
            (0..nv)
                .map(|v| {
                    Matrix::from_vec(n.dims[v], m.dims[v], x[off[v]..off[v + 1]].to_vec()).unwrap()
                })
                .collect()
        })
        .collect())
}

fn combine<S: Scalar>(
    alg: &BoundQuiverAlgebra<S>,
    basis: &[Vec<Matrix<S>>],
    coef: &[i64],
) -> Vec<Matrix<S>> {
    let mut out: Vec<Matrix<S>> = basis[0]
        .iter()
        .map(|f| Matrix::zeros(f.rows(), f.cols()))
        .collect();
    for (f, &c) in basis.iter().zip(coef) {
        if c != 0 {
            for (o, fv) in out.iter_mut().zip(f) {
                *o = o.add(&fv.scale(&alg.scalar(c))).unwrap();
            }
        }
    }
    out
}

/// Whether `M ≅ N`, decided by testing random homomorphisms; a `false` may be wrong, a
/// `true` never is.
pub fn is_isomorphic<S: Scalar>(m: &Representation<S>, n: &Representation<S>) -> bool {
    if m.dims != n.dims || !m.algebra.same_as(&n.algebra) {
        return false;
    }
    let unknowns: usize = m.dims.iter().map(|d| d * d).sum();
    if unknowns > DECOMPOSE_LIMIT {
        return m == n;
    }
    let basis = hom_basis(m, n).unwrap();
    if basis.is_empty() {
        return m.is_zero();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    (0..4).any(|_| {
        let coef: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-3..=3)).collect();
        combine(&m.algebra, &basis, &coef)
            .iter()
            .all(|f| f.rank() == f.rows())
    })
}

/// The submodule given by subspaces, in their coordinates.
fn restrict<S: Scalar>(m: &Representation<S>, subs: &[Subspace<S>]) -> Representation<S> {
    let dims: Vec<usize> = subs.iter().map(Subspace::dim).collect();
    let maps = m
        .algebra
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let (s, t) = (arrow.source, arrow.target);
            let cols: Vec<Vec<S>> = subs[t]
                .basis()
                .iter()
                .map(|y| subs[s].coords(&m.maps[a].mul_vec(y).unwrap()))
                .collect();
            Matrix::from_columns(dims[s], &cols)
        })
        .collect();
    Representation::new_unchecked(&m.algebra, dims, maps)
}

/// `M = ker g^N ⊕ im g^N` for an endomorphism `g`, when both parts are nonzero.
fn fitting<S: Scalar>(
    m: &Representation<S>,
    g: &[Matrix<S>],
) -> Option<(Representation<S>, Representation<S>)> {
    let mut kers = Vec::new();
    let mut ims = Vec::new();
    for (v, gv) in g.iter().enumerate() {
        let mut power = Matrix::identity(m.dims[v]);
        for _ in 0..m.dims[v] {
            power = power.mul(gv).unwrap();
        }
        kers.push(power.kernel());
        ims.push(Subspace::column_space(&power));
    }
    if kers.iter().all(|k| k.dim() == 0) || ims.iter().all(|i| i.dim() == 0) {
        return None;
    }
    Some((restrict(m, &kers), restrict(m, &ims)))
}

/// Looks for an endomorphism killing a top vector without being nilpotent.
fn fitting_split<S: Scalar>(
    m: &Representation<S>,
) -> Option<(Representation<S>, Representation<S>)> {
    let unknowns: usize = m.dims.iter().map(|d| d * d).sum();
    if unknowns > DECOMPOSE_LIMIT {
        return None;
    }
    let basis = hom_basis(m, m).unwrap();
    if basis.len() <= 1 {
        return None;
    }
    let rad = radical_subspaces(m);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (v, r) in rad.iter().enumerate() {
        for c in r.complement_positions() {
            let cols: Vec<Vec<S>> = basis
                .iter()
                .map(|f| r.quotient_coords(&f[v].column(c)))
                .collect();
            let kills = Matrix::from_columns(m.dims[v] - r.dim(), &cols).kernel_basis();
            if kills.is_empty() {
                continue;
            }
            for _ in 0..3 {
                // integer combinations of a rational kernel basis
                let mut coef = vec![S::zero(); basis.len()];
                for k in &kills {
                    let t = m.algebra.scalar(rng.gen_range(1..=5));
                    for (x, y) in coef.iter_mut().zip(k) {
                        *x += &(t.clone() * y.clone());
                    }
                }
                let mut g: Vec<Matrix<S>> = basis[0]
                    .iter()
                    .map(|f| Matrix::zeros(f.rows(), f.cols()))
                    .collect();
                for (f, x) in basis.iter().zip(&coef) {
                    if !x.is_zero() {
                        for (o, fv) in g.iter_mut().zip(f) {
                            *o = o.add(&fv.scale(x)).unwrap();
                        }
                    }
                }
                if let Some(split) = fitting(m, &g) {
                    return Some(split);
                }
            }
        }
    }
    None
}

/// Splits `m` into summands, indecomposable as far as the search can tell. Cyclic summands
/// come out in canonical coordinates.
pub fn decompose<S: Scalar>(m: &Representation<S>) -> Vec<Representation<S>> {
    if m.is_zero() {
        return Vec::new();
    }
    let step = cover_step(m);
    if let Some(pieces) = split_cyclic(m, &step) {
        return pieces;
    }
    match fitting_split(m) {
        Some((a, b)) => {
            let mut out = decompose(&a);
            out.extend(decompose(&b));
            out
        }
        None => vec![m.clone()],
    }
}

fn module_key<S: Scalar>(m: &Representation<S>) -> String {
    let mut key = format!("{:?}", m.dims);
    for a in &m.maps {
        for x in a.entries() {
            key.push(' ');
            key.push_str(&x.to_string());
        }
        key.push(';');
    }
    key
}

/// Summands met while resolving, each with the vertices of its projective cover and the
/// summands of its syzygy (with repetition).
struct SyzygyGraph<S> {
    classes: Vec<Representation<S>>,
    index: std::collections::HashMap<String, usize>,
    by_dims: std::collections::HashMap<Vec<usize>, Vec<usize>>,
    expanded: Vec<Option<(Vec<usize>, Vec<usize>)>>,
}

impl<S: Scalar> SyzygyGraph<S> {
    fn new() -> Self {
        SyzygyGraph {
            classes: Vec::new(),
            index: std::collections::HashMap::new(),
            by_dims: std::collections::HashMap::new(),
            expanded: Vec::new(),
        }
    }

    fn intern(&mut self, m: Representation<S>) -> usize {
        let key = module_key(&m);
        if let Some(&c) = self.index.get(&key) {
            return c;
        }
        let bucket = self.by_dims.entry(m.dims.clone()).or_default();
        if let Some(&c) = bucket
            .iter()
            .find(|&&c| is_isomorphic(&m, &self.classes[c]))
        {
            self.index.insert(key, c);
            return c;
        }
        bucket.push(self.classes.len());
        self.index.insert(key, self.classes.len());
        self.classes.push(m);
        self.expanded.push(None);
        self.classes.len() - 1
    }

    fn roots(&mut self, m: &Representation<S>) -> Vec<usize> {
        if m.is_zero() {
            return Vec::new();
        }
        decompose(m).into_iter().map(|p| self.intern(p)).collect()
    }

    fn expand(&mut self, level: &[usize]) {
        let todo: Vec<usize> = level
            .iter()
            .copied()
            .filter(|&c| self.expanded[c].is_none())
            .collect();
        let results: Vec<(Vec<usize>, Vec<Representation<S>>)> = todo
            .par_iter()
            .map(|&c| {
                let m = &self.classes[c];
                let step = cover_step(m);
                let pieces = if step.kernel_is_zero() {
                    Vec::new()
                } else {
                    decompose(&step.syzygy(&m.algebra))
                };
                (step.vertices, pieces)
            })
            .collect();
        for (c, (tops, pieces)) in todo.into_iter().zip(results) {
            let children = pieces.into_iter().map(|p| self.intern(p)).collect();
            self.expanded[c] = Some((tops, children));
        }
    }

    fn node(&self, c: usize) -> &(Vec<usize>, Vec<usize>) {
        self.expanded[c].as_ref().expect("expanded")
    }
}

/// Vertex multiplicities of the terms of a minimal resolution, without the maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionProfile {
    /// `steps[k][v]`: the number of summands `P(v)` in `P_k`, saturating.
    pub steps: Vec<Vec<u64>>,
    pub status: ResolutionStatus,
    /// Distinct syzygy summands encountered.
    pub summand_classes: usize,
}

impl ResolutionProfile {
    pub fn dimension(&self) -> ExtendedNat {
        self.status.dimension()
    }
}

/// Resolves summand by summand, so that modules whose syzygies repeat can be followed far
/// beyond the size a full resolution could reach.
pub fn resolution_profile<S: Scalar>(m: &Representation<S>, cap: usize) -> ResolutionProfile {
    let n = m.algebra.vertex_count();
    let mut graph = SyzygyGraph::new();
    let mut level: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
    for c in graph.roots(m) {
        *level.entry(c).or_default() += 1;
    }
    let mut steps = Vec::new();
    let status = if level.is_empty() {
        steps.push(vec![0; n]);
        ResolutionStatus::Terminated(0)
    } else {
        let mut k = 0;
        loop {
            graph.expand(&level.keys().copied().collect::<Vec<_>>());
            let mut counts = vec![0u64; n];
            let mut next = std::collections::BTreeMap::new();
            for (&c, &mult) in &level {
                let (tops, children) = graph.node(c);
                for &v in tops {
                    counts[v] = counts[v].saturating_add(mult);
                }
                for &d in children {
                    let e: &mut u64 = next.entry(d).or_default();
                    *e = e.saturating_add(mult);
                }
            }
            steps.push(counts);
            if next.is_empty() {
                break ResolutionStatus::Terminated(k);
            }
            if k == cap {
                break ResolutionStatus::CapReached(cap);
            }
            level = next;
            k += 1;
        }
    };
    ResolutionProfile {
        steps,
        status,
        summand_classes: graph.classes.len(),
    }
}

/// Projective dimension, exact when at most `cap`.
pub fn proj_dim<S: Scalar>(m: &Representation<S>, cap: usize) -> ExtendedNat {
    let mut graph = SyzygyGraph::new();
    let mut level: std::collections::BTreeSet<usize> = graph.roots(m).into_iter().collect();
    if level.is_empty() {
        return ExtendedNat::Finite(0);
    }
    let mut seen = std::collections::HashSet::new();
    for k in 0..=cap {
        // the sets of summands of successive syzygies are determined by their predecessor
        if !seen.insert(level.iter().copied().collect::<Vec<_>>()) {
            return ExtendedNat::AtLeast(cap);
        }
        graph.expand(&level.iter().copied().collect::<Vec<_>>());
        let next: std::collections::BTreeSet<usize> = level
            .iter()
            .flat_map(|&c| graph.node(c).1.iter().copied())
            .collect();
        if next.is_empty() {
            return ExtendedNat::Finite(k);
        }
        level = next;
    }
    ExtendedNat::AtLeast(cap)
}

/// `idim S(i)` as the projective dimension of the simple `S(i)` over the opposite algebra.
pub fn inj_dim_simple<S: Scalar>(
    alg: &Arc<BoundQuiverAlgebra<S>>,
    i: usize,
    cap: usize,
) -> Result<ExtendedNat, RepError> {
    check_vertex(alg, i)?;
    Ok(proj_dim(&simple(&alg.opposite(), i)?, cap))
}

/// Projective dimensions of all simples, computed in parallel.
pub fn simple_proj_dims<S: Scalar>(
    alg: &Arc<BoundQuiverAlgebra<S>>,
    cap: usize,
) -> Vec<ExtendedNat> {
    (0..alg.vertex_count())
        .into_par_iter()
        .map(|i| proj_dim(&simple(alg, i).unwrap(), cap))
        .collect()
}

/// `gd Λ = max_i pd S(i)`.
pub fn global_dim<S: Scalar>(alg: &Arc<BoundQuiverAlgebra<S>>, cap: usize) -> ExtendedNat {
    simple_proj_dims(alg, cap)
        .into_iter()
        .fold(ExtendedNat::Finite(0), ExtendedNat::max)
}

/// `D M` over the opposite algebra: the same spaces with transposed matrices.
pub fn dualize<S: Scalar>(m: &Representation<S>) -> Representation<S> {
    let op = m.algebra.opposite();
    Representation::new_unchecked(
        &op,
        m.dims.clone(),
        m.maps.iter().map(Matrix::transpose).collect(),
    )
}

/// Whether the right regular module has a simple submodule `S_{Λ^op}(i)`: a nonzero
/// `x = x e_i` with `x a = 0` for all arrows `a`.
pub fn simple_embeds_in_regular_right<S: Scalar>(
    alg: &BoundQuiverAlgebra<S>,
    i: usize,
) -> Result<bool, RepError> {
    check_vertex(alg, i)?;
    let vars: Vec<usize> = (0..alg.dim())
        .filter(|&b| alg.basis_path(b).target() == i)
        .collect();
    let out: Vec<usize> = alg.quiver().arrows_from(i).collect();
    if out.is_empty() {
        return Ok(!vars.is_empty());
    }
    let mut m = Matrix::zeros(out.len() * alg.dim(), vars.len());
    for (k, &a) in out.iter().enumerate() {
        for (col, &b) in vars.iter().enumerate() {
            for (r, c) in alg.right_arrow_action(b, a) {
                m[(k * alg.dim() + r, col)] = c.clone();
            }
        }
    }
    Ok(m.rank() < vars.len())
}

/// The submodule of `P` generated by `gens` (vectors at vertices), as subspaces.
fn generated_submodule<S: Scalar>(
    p: &Representation<S>,
    gens: Vec<(usize, Vec<S>)>,
) -> Vec<Subspace<S>> {
    let n = p.dims.len();
    let mut spanning: Vec<Vec<Vec<S>>> = vec![Vec::new(); n];
    for (v, x) in gens {
        spanning[v].push(x);
    }
    let mut sub: Vec<Subspace<S>> = (0..n)
        .map(|v| Subspace::span(p.dims[v], spanning[v].clone()))
        .collect();
    loop {
        let mut changed = false;
        for (a, arrow) in p.algebra.quiver().arrows().iter().enumerate() {
            let (v, w) = (arrow.source, arrow.target);
            let images: Vec<Vec<S>> = sub[w]
                .basis()
                .iter()
                .map(|y| p.maps[a].mul_vec(y).unwrap())
                .filter(|z| !sub[v].contains(z))
                .collect();
            if !images.is_empty() {
                let mut all = sub[v].basis().to_vec();
                all.extend(images);
                sub[v] = Subspace::span(p.dims[v], all);
                changed = true;
            }
        }
        if !changed {
            return sub;
        }
    }
}

/// `P / U` for a submodule `U` given by subspaces.
fn quotient<S: Scalar>(p: &Representation<S>, sub: &[Subspace<S>]) -> Representation<S> {
    let q = p.algebra.quiver();
    let comp: Vec<Vec<usize>> = sub.iter().map(Subspace::complement_positions).collect();
    let dims = comp.iter().map(Vec::len).collect::<Vec<_>>();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let (v, w) = (arrow.source, arrow.target);
            let cols: Vec<Vec<S>> = comp[w]
                .iter()
                .map(|&c| sub[v].quotient_coords(&p.maps[a].column(c)))
                .collect();
            Matrix::from_columns(dims[v], &cols)
        })
        .collect();
    Representation::new_unchecked(&p.algebra, dims, maps)
}

/// A random quotient of a sum of at most `size_hint` indecomposable projectives by a random
/// submodule of its radical. Deterministic in `seed`.
pub fn random_module<S: Scalar>(
    alg: &Arc<BoundQuiverAlgebra<S>>,
    seed: u64,
    size_hint: usize,
) -> Representation<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = alg.vertex_count();
    if n == 0 {
        return Representation::zero(alg);
    }
    let summands = rng.gen_range(1..=size_hint.max(1));
    let vertices: Vec<usize> = (0..summands).map(|_| rng.gen_range(0..n)).collect();
    let parts: Vec<Representation<S>> = vertices
        .iter()
        .map(|&i| projective(alg, i).unwrap())
        .collect();
    let p = Representation::direct_sum(alg, &parts);
    // vertices where rad P is nonzero
    let candidates: Vec<usize> = (0..n)
        .filter(|&w| {
            vertices.iter().any(|&i| {
                alg.paths_between(w, i)
                    .iter()
                    .any(|&b| !alg.is_trivial_index(b))
            })
        })
        .collect();
    if candidates.is_empty() {
        return p;
    }
    let ngens = rng.gen_range(1..=summands + 1);
    let mut gens = Vec::new();
    for _ in 0..ngens {
        let w = candidates[rng.gen_range(0..candidates.len())];
        // coordinates on non-trivial paths only, so the generator lies in rad P
        let mut x = Vec::with_capacity(p.dims[w]);
        for &i in &vertices {
            for &b in alg.paths_between(w, i) {
                x.push(if alg.is_trivial_index(b) || rng.gen_bool(0.4) {
                    S::zero()
                } else {
                    alg.scalar(rng.gen_range(-2..=2))
                });
            }
        }
        gens.push((w, x));
    }
    let sub = generated_submodule(&p, gens);
    quotient(&p, &sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_DEGREE_CAP;
    use crate::quiver::parse_algebra;
    use crate::scalar::Rational;

    type Alg = BoundQuiverAlgebra<Rational>;

    const E1: &str =
        "algebra E1\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nrelations\n  a*b\nend\n";
    const LOOP: &str = "algebra L\nvertices v\narrow x : v -> v\nrelations\n  x^2\nend\n";

    fn build(text: &str) -> Arc<Alg> {
        Alg::build(&parse_algebra(text).unwrap(), DEFAULT_DEGREE_CAP).unwrap()
    }

    #[test]
    fn e1_projectives() {
        let alg = build(E1);
        let p3 = projective(&alg, 2).unwrap();
        assert_eq!(p3.dims(), &[0, 1, 1]);
        let tr = top_and_radical(&p3);
        assert_eq!(tr.top.dims(), &[0, 0, 1]);
        assert_eq!(tr.radical.dims(), &[0, 1, 0]);
        assert_eq!(p3.loewy_length(), 2);
        assert!(p3.satisfies_relations());
        assert!(projective(&alg, 5).is_err());
    }

    #[test]
    fn e1_resolutions() {
        let alg = build(E1);
        let s3 = simple(&alg, 2).unwrap();
        let res = minimal_resolution(&s3, 10);
        assert_eq!(res.status, ResolutionStatus::Terminated(2));
        assert_eq!(res.vertex_sequence(), vec![vec![2], vec![1], vec![0]]);
        assert!(res.is_exact());
        assert!(res.is_minimal());
        assert_eq!(res.euler_characteristic(), vec![0, 0, 1]);
        assert_eq!(global_dim(&alg, 10), ExtendedNat::Finite(2));
        assert_eq!(syzygy(&s3).dims(), &[0, 1, 0]);
        assert_eq!(syzygy(&simple(&alg, 1).unwrap()).dims(), &[1, 0, 0]);
        assert_eq!(
            proj_dim(&projective(&alg, 1).unwrap(), 3),
            ExtendedNat::Finite(0)
        );
    }

    #[test]
    fn cover_of_radical() {
        let alg = build(E1);
        let rad = top_and_radical(&projective(&alg, 2).unwrap()).radical;
        let cover = projective_cover(&rad).unwrap();
        assert_eq!(cover.vertices, vec![1]);
        assert!(cover.map.is_surjective());
        assert_eq!(syzygy(&rad).dims(), &[1, 0, 0]);
        assert!(projective_cover(&Representation::zero(&alg)).is_err());
    }

    #[test]
    fn loop_algebra() {
        let alg = build(LOOP);
        let s = simple(&alg, 0).unwrap();
        assert_eq!(proj_dim(&s, 7), ExtendedNat::AtLeast(7));
        assert!(simple_embeds_in_regular_right(&alg, 0).unwrap());
        let res = minimal_resolution(&s, 4);
        assert!(res.is_exact() && res.is_minimal());
        assert_eq!(res.steps.len(), 5);
    }

    #[test]
    fn dual_of_projective() {
        let alg = build(E1);
        let d = dualize(&projective(&alg, 2).unwrap());
        assert_eq!(d.dim(), 2);
        assert!(d.satisfies_relations());
        let dd = dualize(&d);
        assert_eq!(dd, projective(&alg, 2).unwrap());
        assert_eq!(
            dualize(&simple(&alg, 0).unwrap()),
            simple(&alg.opposite(), 0).unwrap()
        );
    }

    #[test]
    fn relation_check() {
        let alg = build(E1);
        let one = Matrix::identity(1);
        assert_eq!(
            Representation::new(&alg, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err(),
            RepError::RelationViolated(0)
        );
    }

    #[test]
    fn random_modules_are_deterministic() {
        let alg = build(E1);
        let a = random_module(&alg, 7, 3);
        let b = random_module(&alg, 7, 3);
        assert_eq!(a, b);
        assert!(a.satisfies_relations());
    }

    #[test]
    fn extended_nat_display() {
        assert_eq!(ExtendedNat::Finite(3).to_string(), "finite:3");
        assert_eq!(ExtendedNat::AtLeast(30).to_string(), "at_least:30");
        assert_eq!(
            ExtendedNat::Finite(3).max(ExtendedNat::AtLeast(5)),
            ExtendedNat::AtLeast(5)
        );
    }
}
