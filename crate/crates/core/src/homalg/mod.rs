//! Homomorphisms between bound quiver algebras.
//!
//! A homomorphism `φ: A -> B` is given on trivial paths, as `φ(e_i) = Σ e_w` over a set of
//! vertices of `B`, and on arrows. Radical preservation only needs checking on arrows: `J(A)`
//! is the ideal generated by the arrows, so `φ(J(A)) ⊆ B φ(arrows) B`, which lies in `J(B)`
//! as soon as every arrow image does.

mod parse;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, BoundQuiverAlgebra, SparseVec};
use crate::linalg::{Matrix, Subspace};
use crate::quiver::{AlgebraSpec, LinComb, ParseError, Quiver, SpecError};
use crate::repmod::{
    self, minimal_resolution, proj_dim, projective_cover, top_and_radical, ExtendedNat, RepError,
    Representation,
};
use crate::scalar::Scalar;

pub use parse::{parse_hom, HomSpec, ImageTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("hom refers to algebra `{found}`, expected `{expected}`")]
    NameMismatch { expected: String, found: String },
    #[error("source and target are over different fields")]
    FieldMismatch,
    #[error("no image given for `{0}`")]
    Missing(String),
    #[error("image of `{0}` given twice")]
    Duplicate(String),
    #[error("vertex `{0}` of the target lies in two vertex images")]
    Overlapping(String),
    #[error("vertex `{0}` of the target lies in no vertex image")]
    Incomplete(String),
    #[error("image of arrow `{0}` is not in φ(e_s) B φ(e_t)")]
    NotSandwiched(String),
    #[error("relation {0} of the source does not map to zero")]
    RelationNotKilled(usize),
    #[error("homomorphism is not radical-preserving")]
    NotRadicalPreserving,
    #[error("kernel is not contained in the radical")]
    KernelNotSuperfluous,
    #[error("module is over a different algebra")]
    MixedAlgebras,
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A homomorphism of bound quiver algebras with its materialized matrix.
#[derive(Clone)]
pub struct AlgebraHom<S> {
    name: String,
    source: Arc<BoundQuiverAlgebra<S>>,
    target: Arc<BoundQuiverAlgebra<S>>,
    vertex_images: Vec<Vec<usize>>,
    arrow_images: Vec<AlgebraElement<S>>,
    /// `dim B x dim A`; column `j` is the image of the `j`-th standard path of `A`.
    matrix: Matrix<S>,
}

impl<S: Scalar> fmt::Debug for AlgebraHom<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgebraHom({}: {} -> {})",
            self.name,
            self.source.name(),
            self.target.name()
        )
    }
}

impl<S: Scalar> AlgebraHom<S> {
    /// Checks that the vertex images are orthogonal and complete, that arrow images are
    /// sandwiched between the images of their endpoints, and that every relation dies.
    pub fn new(
        name: impl Into<String>,
        source: &Arc<BoundQuiverAlgebra<S>>,
        target: &Arc<BoundQuiverAlgebra<S>>,
        vertex_images: Vec<Vec<usize>>,
        arrow_images: Vec<AlgebraElement<S>>,
    ) -> Result<Self, HomError> {
        let h = Self::new_unchecked(name, source, target, vertex_images, arrow_images)?;
        h.validate()?;
        Ok(h)
    }

    /// Builds the linear map without checking that it is a ring homomorphism. Used to probe
    /// statements whose converse needs maps outside the checked class.
    pub fn new_unchecked(
        name: impl Into<String>,
        source: &Arc<BoundQuiverAlgebra<S>>,
        target: &Arc<BoundQuiverAlgebra<S>>,
        vertex_images: Vec<Vec<usize>>,
        arrow_images: Vec<AlgebraElement<S>>,
    ) -> Result<Self, HomError> {
        if source.field() != target.field() {
            return Err(HomError::FieldMismatch);
        }
        let qa = source.quiver();
        if vertex_images.len() != qa.vertex_count() {
            return Err(HomError::Missing(format!("{} vertices", qa.vertex_count())));
        }
        if arrow_images.len() != qa.arrow_count() {
            return Err(HomError::Missing(format!("{} arrows", qa.arrow_count())));
        }
        if arrow_images.iter().any(|x| !x.algebra().same_as(target)) {
            return Err(HomError::MixedAlgebras);
        }
        let mut h = AlgebraHom {
            name: name.into(),
            source: source.clone(),
            target: target.clone(),
            vertex_images,
            arrow_images,
            matrix: Matrix::zeros(target.dim(), source.dim()),
        };
        let cols: Vec<Vec<S>> = (0..source.dim())
            .map(|j| {
                let mut v = vec![S::zero(); target.dim()];
                for (i, c) in
                    h.image_of_path(source.basis_path(j).arrows(), source.basis_path(j).source())
                {
                    v[i] = c;
                }
                v
            })
            .collect();
        h.matrix = Matrix::from_columns(target.dim(), &cols);
        Ok(h)
    }

    fn trivial_image(&self, v: usize) -> SparseVec<S> {
        self.vertex_images[v]
            .iter()
            .map(|&w| (w, self.target.one()))
            .collect()
    }

    /// `φ(a1) ... φ(ak)`, or `φ(e_v)` for the empty path at `v`.
    fn image_of_path(&self, arrows: &[usize], v: usize) -> SparseVec<S> {
        let Some((&first, rest)) = arrows.split_first() else {
            let mut t = self.trivial_image(v);
            t.sort_by_key(|e| e.0);
            return t;
        };
        let mut acc = self.arrow_images[first].coeffs().to_vec();
        for &a in rest {
            if acc.is_empty() {
                break;
            }
            acc = self
                .target
                .multiply_sparse(&acc, self.arrow_images[a].coeffs());
        }
        acc
    }

    fn validate(&self) -> Result<(), HomError> {
        let (qa, qb) = (self.source.quiver(), self.target.quiver());
        let mut owner = vec![None; qb.vertex_count()];
        for (v, ws) in self.vertex_images.iter().enumerate() {
            for &w in ws {
                if owner[w].replace(v).is_some() {
                    return Err(HomError::Overlapping(qb.vertex_name(w).into()));
                }
            }
        }
        if let Some(w) = owner.iter().position(Option::is_none) {
            return Err(HomError::Incomplete(qb.vertex_name(w).into()));
        }
        for (a, arrow) in qa.arrows().iter().enumerate() {
            let ok = self.arrow_images[a].coeffs().iter().all(|(b, _)| {
                let p = self.target.basis_path(*b);
                owner[p.source()] == Some(arrow.source) && owner[p.target()] == Some(arrow.target)
            });
            if !ok {
                return Err(HomError::NotSandwiched(arrow.id.clone()));
            }
        }
        for (k, r) in self.source.relations().iter().enumerate() {
            let mut total: Vec<(usize, S)> = Vec::new();
            for (p, mu) in r {
                for (i, c) in self.image_of_path(p.arrows(), p.source()) {
                    let mut t = c;
                    t *= mu;
                    total.push((i, t));
                }
            }
            if !AlgebraElement::from_sparse(&self.target, total).is_zero() {
                return Err(HomError::RelationNotKilled(k));
            }
        }
        Ok(())
    }

    pub fn identity(alg: &Arc<BoundQuiverAlgebra<S>>) -> Self {
        let vertices = (0..alg.vertex_count()).map(|v| vec![v]).collect();
        let arrows = (0..alg.arrow_count())
            .map(|a| alg.element(alg.arrow_index(a)))
            .collect();
        Self::new(format!("id_{}", alg.name()), alg, alg, vertices, arrows).expect("identity")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<BoundQuiverAlgebra<S>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BoundQuiverAlgebra<S>> {
        &self.target
    }

    pub fn vertex_images(&self) -> &[Vec<usize>] {
        &self.vertex_images
    }

    pub fn arrow_images(&self) -> &[AlgebraElement<S>] {
        &self.arrow_images
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    /// `φ(x)`.
    pub fn apply(&self, x: &AlgebraElement<S>) -> Result<AlgebraElement<S>, HomError> {
        if !x.algebra().same_as(&self.source) {
            return Err(HomError::MixedAlgebras);
        }
        Ok(AlgebraElement::from_sparse(
            &self.target,
            self.apply_sparse(x.coeffs()),
        ))
    }

    fn apply_sparse(&self, x: &[(usize, S)]) -> SparseVec<S> {
        let mut out = Vec::new();
        for (j, c) in x {
            for i in 0..self.matrix.rows() {
                let e = &self.matrix[(i, *j)];
                if !e.is_zero() {
                    let mut t = e.clone();
                    t *= c;
                    out.push((i, t));
                }
            }
        }
        AlgebraElement::from_sparse(&self.target, out)
            .coeffs()
            .to_vec()
    }

    /// `psi ∘ self`.
    pub fn then(&self, psi: &AlgebraHom<S>) -> Result<AlgebraHom<S>, HomError> {
        if !psi.source.same_as(&self.target) {
            return Err(HomError::MixedAlgebras);
        }
        let vertices = self
            .vertex_images
            .iter()
            .map(|ws| {
                let mut out: Vec<usize> = ws
                    .iter()
                    .flat_map(|&w| psi.vertex_images[w].clone())
                    .collect();
                out.sort_unstable();
                out
            })
            .collect();
        let arrows = self
            .arrow_images
            .iter()
            .map(|x| AlgebraElement::from_sparse(&psi.target, psi.apply_sparse(x.coeffs())))
            .collect();
        AlgebraHom::new(
            format!("{}_{}", self.name, psi.name),
            &self.source,
            &psi.target,
            vertices,
            arrows,
        )
    }

    /// Every arrow image has zero coefficients on the trivial paths of the target.
    pub fn is_radical_preserving(&self) -> bool {
        self.arrow_images.iter().all(AlgebraElement::in_radical)
    }

    pub fn kernel(&self) -> Subspace<S> {
        self.matrix.kernel()
    }

    /// `Ker φ ⊆ J(A)`.
    pub fn has_superfluous_kernel(&self) -> bool {
        let n = self.source.vertex_count();
        self.kernel()
            .basis()
            .iter()
            .all(|v| v[..n].iter().all(|x| x.is_zero()))
    }
}

/// Resolves a parsed `.bqhom` against its algebras.
pub fn build_hom<S: Scalar>(
    spec: &HomSpec,
    source: &Arc<BoundQuiverAlgebra<S>>,
    target: &Arc<BoundQuiverAlgebra<S>>,
) -> Result<AlgebraHom<S>, HomError> {
    for (expected, found) in [(source.name(), &spec.source), (target.name(), &spec.target)] {
        if expected != found {
            return Err(HomError::NameMismatch {
                expected: expected.into(),
                found: found.clone(),
            });
        }
    }
    let (qa, qb) = (source.quiver(), target.quiver());
    let invalid = |line: usize, col: usize, source: SpecError| {
        HomError::Parse(ParseError::Invalid { line, col, source })
    };
    let mut vertex_images: Vec<Option<Vec<usize>>> = vec![None; qa.vertex_count()];
    for (v, ws, line) in &spec.vertices {
        let i = qa.vertex(v).map_err(|e| invalid(*line, 1, e))?;
        let images = ws
            .iter()
            .map(|w| qb.vertex(w).map_err(|e| invalid(*line, 1, e)))
            .collect::<Result<Vec<_>, _>>()?;
        if vertex_images[i].replace(images).is_some() {
            return Err(HomError::Duplicate(v.clone()));
        }
    }
    let mut arrow_images: Vec<Option<AlgebraElement<S>>> = vec![None; qa.arrow_count()];
    for (a, terms, line, col) in &spec.arrows {
        let i = qa.arrow(a).map_err(|e| invalid(*line, 1, e))?;
        let mut coeffs = Vec::new();
        for t in terms {
            let path = resolve_factors(qb, &t.factors).map_err(|e| invalid(*line, *col, e))?;
            let c = S::from_rational(&t.coeff, target.field()).map_err(|source| {
                HomError::Parse(ParseError::Field {
                    line: *line,
                    col: *col,
                    source,
                })
            })?;
            for (b, x) in target.reduce_path(&path) {
                let mut y = x;
                y *= &c;
                coeffs.push((b, y));
            }
        }
        if arrow_images[i]
            .replace(AlgebraElement::from_sparse(target, coeffs))
            .is_some()
        {
            return Err(HomError::Duplicate(a.clone()));
        }
    }
    let vertex_images = vertex_images
        .into_iter()
        .enumerate()
        .map(|(v, x)| x.ok_or_else(|| HomError::Missing(qa.vertex_name(v).into())))
        .collect::<Result<Vec<_>, _>>()?;
    let arrow_images = arrow_images
        .into_iter()
        .enumerate()
        .map(|(a, x)| x.ok_or_else(|| HomError::Missing(qa.arrow_name(a).into())))
        .collect::<Result<Vec<_>, _>>()?;
    AlgebraHom::new(
        spec.name.clone(),
        source,
        target,
        vertex_images,
        arrow_images,
    )
}

/// The path through `factors`, each an arrow id or `e_<vertex>`.
fn resolve_factors(q: &Quiver, factors: &[String]) -> Result<crate::quiver::Path, SpecError> {
    let broken = || SpecError::NotComposable(factors.join("*"));
    let mut arrows = Vec::new();
    let mut at: Option<usize> = None;
    for f in factors {
        let (s, t, arrow) = match q.arrow(f) {
            Ok(a) => (q.arrows()[a].source, q.arrows()[a].target, Some(a)),
            Err(e) => {
                let v = f
                    .strip_prefix("e_")
                    .and_then(|v| q.vertex(v).ok())
                    .ok_or(e)?;
                (v, v, None)
            }
        };
        if at.is_some_and(|h| h != s) {
            return Err(broken());
        }
        arrows.extend(arrow);
        at = Some(t);
    }
    match at {
        None => Err(broken()),
        Some(v) if arrows.is_empty() => Ok(crate::quiver::Path::trivial(v)),
        Some(_) => q.path(&arrows).ok_or_else(broken),
    }
}

/// `.bqhom` text for a homomorphism.
pub fn serialize_hom<S: Scalar>(h: &AlgebraHom<S>) -> String {
    let (qa, qb) = (h.source.quiver(), h.target.quiver());
    let mut out = format!(
        "hom {} : {} -> {}\n",
        h.name,
        h.source.name(),
        h.target.name()
    );
    for (v, ws) in h.vertex_images.iter().enumerate() {
        let rhs = if ws.is_empty() {
            "0".to_string()
        } else {
            ws.iter()
                .map(|&w| qb.vertex_name(w))
                .collect::<Vec<_>>()
                .join(" + ")
        };
        out.push_str(&format!("vertex {} -> {}\n", qa.vertex_name(v), rhs));
    }
    for (a, x) in h.arrow_images.iter().enumerate() {
        let z = LinComb::from_terms(
            x.coeffs()
                .iter()
                .map(|(b, c)| (h.target.basis_path(*b).clone(), c.to_rational())),
        );
        out.push_str(&format!(
            "arrow {} -> {}\n",
            qa.arrow_name(a),
            qb.lincomb_string(&z)
        ));
    }
    out.push_str("end\n");
    out
}

/// The quotient `A -> A/K` where `K` is generated by the arrows in `killed` and the extra
/// (homogeneous, length ≥ 2) relations `extra` written over the arrows of `A`.
pub fn quotient_hom<S: Scalar>(
    alg: &Arc<BoundQuiverAlgebra<S>>,
    killed: &[usize],
    extra: &[LinComb],
    name: &str,
) -> Result<AlgebraHom<S>, HomError> {
    let q = alg.quiver();
    let kept: Vec<usize> = (0..q.arrow_count())
        .filter(|a| !killed.contains(a))
        .collect();
    let mut new_index = vec![None; q.arrow_count()];
    for (k, &a) in kept.iter().enumerate() {
        new_index[a] = Some(k);
    }
    let quiver = Quiver::new(
        q.vertices().to_vec(),
        kept.iter().map(|&a| {
            let arrow = &q.arrows()[a];
            (
                arrow.id.clone(),
                q.vertex_name(arrow.source).to_string(),
                q.vertex_name(arrow.target).to_string(),
            )
        }),
    )?;
    let remap = |z: &LinComb| -> LinComb {
        LinComb::from_terms(z.terms().filter_map(|(p, c)| {
            let arrows: Option<Vec<usize>> = p.arrows().iter().map(|&a| new_index[a]).collect();
            Some((quiver.path(&arrows?)?, c.clone()))
        }))
    };
    let relations: Vec<LinComb> = alg
        .spec()
        .relations
        .iter()
        .chain(extra)
        .map(remap)
        .filter(|z| !z.is_zero())
        .collect();
    let spec = AlgebraSpec::new(name.to_string(), alg.field(), quiver, relations)?;
    let target = BoundQuiverAlgebra::build(&spec, (alg.loewy_length() + 1).max(2))?;
    let vertices = (0..q.vertex_count()).map(|v| vec![v]).collect();
    let arrows = (0..q.arrow_count())
        .map(|a| match new_index[a] {
            Some(k) => target.element(target.arrow_index(k)),
            None => AlgebraElement::zero(&target),
        })
        .collect();
    AlgebraHom::new(format!("pi_{name}"), alg, &target, vertices, arrows)
}

/// `A -> A/J(A)`, the semisimple algebra on the same vertices.
pub fn semisimple_quotient<S: Scalar>(
    alg: &Arc<BoundQuiverAlgebra<S>>,
) -> Result<AlgebraHom<S>, HomError> {
    let all: Vec<usize> = (0..alg.arrow_count()).collect();
    quotient_hom(alg, &all, &[], &format!("{}_top", alg.name()))
}

/// Radical preservation, kernel and `pd B_A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomAnalysis {
    pub radical_preserving: bool,
    pub kernel_dim: usize,
    pub superfluous_kernel: bool,
    pub pd_right_target: ExtendedNat,
}

pub fn analyze<S: Scalar>(phi: &AlgebraHom<S>, cap: usize) -> HomAnalysis {
    HomAnalysis {
        radical_preserving: phi.is_radical_preserving(),
        kernel_dim: phi.kernel().dim(),
        superfluous_kernel: phi.has_superfluous_kernel(),
        pd_right_target: proj_dim(&right_module_of_target(phi), cap),
    }
}

/// `B` as a right `A`-module, i.e. a left module over `A^op`: the component at `i` is
/// `B φ(e_i)` and an arrow `a` of `A` acts by right multiplication with `φ(a)`.
pub fn right_module_of_target<S: Scalar>(phi: &AlgebraHom<S>) -> Representation<S> {
    let b = &phi.target;
    let op = phi.source.opposite();
    let n = phi.source.vertex_count();
    let mut owner = vec![usize::MAX; b.vertex_count()];
    for (v, ws) in phi.vertex_images.iter().enumerate() {
        for &w in ws {
            owner[w] = v;
        }
    }
    let mut components: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut local = vec![0; b.dim()];
    for (i, p) in b.basis().iter().enumerate() {
        let v = owner[p.target()];
        if v != usize::MAX {
            local[i] = components[v].len();
            components[v].push(i);
        }
    }
    let dims: Vec<usize> = components.iter().map(Vec::len).collect();
    let maps = phi
        .source
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let (i, j) = (arrow.source, arrow.target);
            let mut m = Matrix::zeros(dims[j], dims[i]);
            for (col, &x) in components[i].iter().enumerate() {
                for (y, c) in b.multiply_sparse(&[(x, b.one())], phi.arrow_images[a].coeffs()) {
                    m[(local[y], col)] = c;
                }
            }
            m
        })
        .collect();
    Representation::new_unchecked(&op, dims, maps)
}

/// `B ⊗_A M` in coordinates: at each vertex `x` of `B`, the span of `b ⊗ m` with `b` a path
/// from `x` into `φ(e_v)` and `m ∈ M_v`, modulo the relations `bφ(a) ⊗ m - b ⊗ am`.
struct Induced<S> {
    rep: Representation<S>,
    offsets: Vec<HashMap<(usize, usize), usize>>,
    subs: Vec<Subspace<S>>,
}

fn induce_full<S: Scalar>(phi: &AlgebraHom<S>, m: &Representation<S>) -> Induced<S> {
    let b = &phi.target;
    let qa = phi.source.quiver();
    let nb = b.vertex_count();
    let mut offsets = vec![HashMap::new(); nb];
    let mut coord: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); nb];
    for x in 0..nb {
        for (v, ws) in phi.vertex_images.iter().enumerate() {
            for &w in ws {
                for &p in b.paths_between(x, w) {
                    offsets[x].insert((v, p), coord[x].len());
                    coord[x].extend((0..m.dims()[v]).map(|r| (v, p, r)));
                }
            }
        }
    }
    let subs: Vec<Subspace<S>> = (0..nb)
        .map(|x| {
            let ambient = coord[x].len();
            let mut rows = Vec::new();
            for (a, arrow) in qa.arrows().iter().enumerate() {
                let (v, w) = (arrow.source, arrow.target);
                for &wv in &phi.vertex_images[v] {
                    for &p in b.paths_between(x, wv) {
                        let pa = b.multiply_sparse(&[(p, b.one())], phi.arrow_images[a].coeffs());
                        for col in 0..m.dims()[w] {
                            let mut row = vec![S::zero(); ambient];
                            // terms outside φ(e_w) vanish in B φ(e_w) ⊗ M_w
                            for (q, c) in &pa {
                                if let Some(&o) = offsets[x].get(&(w, *q)) {
                                    row[o + col] += c;
                                }
                            }
                            let base = offsets[x][&(v, p)];
                            for r in 0..m.dims()[v] {
                                row[base + r] -= &m.arrow_map(a)[(r, col)];
                            }
                            rows.push(row);
                        }
                    }
                }
            }
            Subspace::span(ambient, rows)
        })
        .collect();
    let comps: Vec<Vec<usize>> = subs.iter().map(Subspace::complement_positions).collect();
    let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
    let maps = b
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(d, arrow)| {
            let (x, y) = (arrow.source, arrow.target);
            let cols: Vec<Vec<S>> = comps[y]
                .iter()
                .map(|&c| {
                    let (v, p, r) = coord[y][c];
                    let mut vec = vec![S::zero(); coord[x].len()];
                    for (q, e) in b.multiply_basis(b.arrow_index(d), p) {
                        vec[offsets[x][&(v, q)] + r] += &e;
                    }
                    subs[x].quotient_coords(&vec)
                })
                .collect();
            Matrix::from_columns(dims[x], &cols)
        })
        .collect();
    Induced {
        rep: Representation::new_unchecked(b, dims, maps),
        offsets,
        subs,
    }
}

/// The induced module `B ⊗_A M`.
pub fn induce<S: Scalar>(
    phi: &AlgebraHom<S>,
    m: &Representation<S>,
) -> Result<Representation<S>, HomError> {
    if !m.algebra().same_as(&phi.source) {
        return Err(HomError::MixedAlgebras);
    }
    Ok(induce_full(phi, m).rep)
}

/// Outcome of inducing a projective cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCheck {
    pub surjective: bool,
    pub kernel_in_radical: bool,
    pub top_isomorphic: bool,
}

impl CoverCheck {
    pub fn holds(&self) -> bool {
        self.surjective && self.kernel_in_radical && self.top_isomorphic
    }
}

/// Whether `B ⊗_A (P -> M)` is a projective cover of `B ⊗_A M`, for any `φ`.
pub fn cover_preservation_probe<S: Scalar>(
    phi: &AlgebraHom<S>,
    m: &Representation<S>,
) -> Result<CoverCheck, HomError> {
    if !m.algebra().same_as(&phi.source) {
        return Err(HomError::MixedAlgebras);
    }
    if m.is_zero() {
        return Ok(CoverCheck {
            surjective: true,
            kernel_in_radical: true,
            top_isomorphic: true,
        });
    }
    let cover = projective_cover(m)?;
    let a = &phi.source;
    let b = &phi.target;
    let fm = induce_full(phi, m);
    // B ⊗_A P(i) is modelled as Bφ(e_i); generator g goes to the class of e ⊗ m_g
    let gens: Vec<Vec<S>> = cover
        .vertices
        .iter()
        .enumerate()
        .map(|(g, &ig)| {
            let col = cover.vertices[..g]
                .iter()
                .map(|&h| a.paths_between(ig, h).len())
                .sum::<usize>();
            cover.map.components[ig].column(col)
        })
        .collect();
    let mut surjective = true;
    let mut kernel_in_radical = true;
    let mut top_p = vec![0; b.vertex_count()];
    for x in 0..b.vertex_count() {
        let mut cols = Vec::new();
        let mut trivial = Vec::new();
        for (g, &ig) in cover.vertices.iter().enumerate() {
            for &w in &phi.vertex_images[ig] {
                for &p in b.paths_between(x, w) {
                    let mut vec = vec![S::zero(); fm.subs[x].ambient()];
                    let base = fm.offsets[x][&(ig, p)];
                    for (k, c) in gens[g].iter().enumerate() {
                        vec[base + k] += c;
                    }
                    if b.basis_path(p).is_trivial() {
                        trivial.push(cols.len());
                    }
                    cols.push(fm.subs[x].quotient_coords(&vec));
                }
            }
        }
        top_p[x] = trivial.len();
        let f = Matrix::from_columns(fm.rep.dims()[x], &cols);
        surjective &= f.rank() == fm.rep.dims()[x];
        kernel_in_radical &= f
            .kernel_basis()
            .iter()
            .all(|v| trivial.iter().all(|&t| v[t].is_zero()));
    }
    let top_isomorphic = top_and_radical(&fm.rep).top.dims() == top_p.as_slice();
    Ok(CoverCheck {
        surjective,
        kernel_in_radical,
        top_isomorphic,
    })
}

/// The cover-preservation check for a radical-preserving `φ`; other maps are rejected.
pub fn cover_preservation_check<S: Scalar>(
    phi: &AlgebraHom<S>,
    m: &Representation<S>,
) -> Result<bool, HomError> {
    if !phi.is_radical_preserving() {
        return Err(HomError::NotRadicalPreserving);
    }
    Ok(cover_preservation_probe(phi, m)?.holds())
}

/// `dim Tor_k^A(B, M)` for `k = 0..=k_max`, from the induced minimal resolution, using
/// `B ⊗_A Ae_i ≅ Bφ(e_i)`.
pub fn tor_dimension<S: Scalar>(
    phi: &AlgebraHom<S>,
    m: &Representation<S>,
    k_max: usize,
) -> Result<Vec<usize>, HomError> {
    if !m.algebra().same_as(&phi.source) {
        return Err(HomError::MixedAlgebras);
    }
    let a = &phi.source;
    let b = &phi.target;
    if m.is_zero() {
        return Ok(vec![0; k_max + 1]);
    }
    let res = minimal_resolution(m, k_max + 1);
    // basis of Bφ(e_i): paths of B ending in φ(e_i)
    let mut block: Vec<Vec<usize>> = vec![Vec::new(); a.vertex_count()];
    let mut local = vec![0; b.dim()];
    let mut owner = vec![usize::MAX; b.vertex_count()];
    for (v, ws) in phi.vertex_images.iter().enumerate() {
        for &w in ws {
            owner[w] = v;
        }
    }
    for (i, p) in b.basis().iter().enumerate() {
        let v = owner[p.target()];
        if v != usize::MAX {
            local[i] = block[v].len();
            block[v].push(i);
        }
    }
    let fdim = |vs: &[usize]| vs.iter().map(|&v| block[v].len()).sum::<usize>();
    let dims: Vec<usize> = (0..=k_max + 1)
        .map(|k| res.steps.get(k).map_or(0, |s| fdim(&s.vertices)))
        .collect();
    // rank of B ⊗ d_k for k >= 1
    let mut ranks = vec![0; k_max + 3];
    for k in 1..res.steps.len() {
        let (gens, prev) = (&res.steps[k].vertices, &res.steps[k - 1].vertices);
        let prev_off: Vec<usize> = prev
            .iter()
            .scan(0, |acc, &v| {
                let o = *acc;
                *acc += block[v].len();
                Some(o)
            })
            .collect();
        let mut cols = Vec::new();
        for (g, &ig) in gens.iter().enumerate() {
            // the image of generator g in P_{k-1}, read at vertex i_g
            let col = gens[..g]
                .iter()
                .map(|&h| a.paths_between(ig, h).len())
                .sum::<usize>();
            let d = &res.steps[k].differential[ig];
            let mut start = 0;
            let mut pieces: Vec<SparseVec<S>> = Vec::new();
            for &ih in prev {
                let paths = a.paths_between(ig, ih);
                let elem: SparseVec<S> = paths
                    .iter()
                    .enumerate()
                    .filter_map(|(t, &p)| {
                        let c = d[(start + t, col)].clone();
                        (!c.is_zero()).then_some((p, c))
                    })
                    .collect();
                pieces.push(phi.apply_sparse(&elem));
                start += paths.len();
            }
            for &x in &block[ig] {
                let mut v = vec![S::zero(); dims[k - 1]];
                for (h, piece) in pieces.iter().enumerate() {
                    for (y, c) in b.multiply_sparse(&[(x, b.one())], piece) {
                        v[prev_off[h] + local[y]] += &c;
                    }
                }
                cols.push(v);
            }
        }
        ranks[k] = Matrix::from_columns(dims[k - 1], &cols).rank();
    }
    Ok((0..=k_max)
        .map(|k| dims[k] - ranks[k] - ranks[k + 1])
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremAVerdict {
    Verified,
    VacuouslyConsistent,
    Violated,
}

/// `gd A ≤ gd B + pd B_A` at the computable instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremAReport {
    pub gd_source: ExtendedNat,
    pub gd_target: ExtendedNat,
    pub pd_right_target: ExtendedNat,
    pub verdict: TheoremAVerdict,
}

pub fn check_theorem_a<S: Scalar>(
    phi: &AlgebraHom<S>,
    cap: usize,
) -> Result<TheoremAReport, HomError> {
    if !phi.is_radical_preserving() {
        return Err(HomError::NotRadicalPreserving);
    }
    if !phi.has_superfluous_kernel() {
        return Err(HomError::KernelNotSuperfluous);
    }
    let gd_source = repmod::global_dim(&phi.source, cap);
    let gd_target = repmod::global_dim(&phi.target, cap);
    let pd_right_target = proj_dim(&right_module_of_target(phi), cap);
    // an infinite gd A says nothing about fpd A, so only the all-finite case is decisive
    let verdict = match (gd_source, gd_target, pd_right_target) {
        (ExtendedNat::Finite(a), ExtendedNat::Finite(b), ExtendedNat::Finite(p)) => {
            if a <= b + p {
                TheoremAVerdict::Verified
            } else {
                TheoremAVerdict::Violated
            }
        }
        _ => TheoremAVerdict::VacuouslyConsistent,
    };
    Ok(TheoremAReport {
        gd_source,
        gd_target,
        pd_right_target,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_DEGREE_CAP;
    use crate::quiver::parse_algebra;
    use crate::repmod::{projective, simple};
    use crate::scalar::Rational;

    type Alg = BoundQuiverAlgebra<Rational>;

    const E1: &str =
        "algebra E1\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nrelations\n  a*b\nend\n";
    const LOOP: &str = "algebra L\nvertices v\narrow x : v -> v\nrelations\n  x^2\nend\n";

    fn build(text: &str) -> Arc<Alg> {
        Alg::build(&parse_algebra(text).unwrap(), DEFAULT_DEGREE_CAP).unwrap()
    }

    #[test]
    fn identity_hom() {
        let alg = build(E1);
        let id = AlgebraHom::identity(&alg);
        let an = analyze(&id, 10);
        assert!(an.radical_preserving && an.superfluous_kernel);
        assert_eq!(an.kernel_dim, 0);
        assert_eq!(an.pd_right_target, ExtendedNat::Finite(0));
        let m = simple(&alg, 2).unwrap();
        assert_eq!(induce(&id, &m).unwrap().dims(), m.dims());
        assert_eq!(tor_dimension(&id, &m, 3).unwrap(), vec![1, 0, 0, 0]);
        let r = check_theorem_a(&id, 10).unwrap();
        assert_eq!(r.verdict, TheoremAVerdict::Verified);
    }

    #[test]
    fn semisimple_quotient_of_e1() {
        let alg = build(E1);
        let pi = semisimple_quotient(&alg).unwrap();
        let an = analyze(&pi, 10);
        assert!(an.radical_preserving && an.superfluous_kernel);
        assert_eq!(an.kernel_dim, 2);
        assert_eq!(an.pd_right_target, ExtendedNat::Finite(2));
        let r = check_theorem_a(&pi, 10).unwrap();
        assert_eq!(
            (r.gd_source, r.gd_target),
            (ExtendedNat::Finite(2), ExtendedNat::Finite(0))
        );
        assert_eq!(r.verdict, TheoremAVerdict::Verified);
        // B ⊗ P(3) ≅ B e_3
        let p3 = projective(&alg, 2).unwrap();
        assert_eq!(induce(&pi, &p3).unwrap().dims(), &[0, 0, 1]);
        assert!(cover_preservation_check(&pi, &simple(&alg, 1).unwrap()).unwrap());
    }

    #[test]
    fn hom_text_round_trip() {
        let alg = build(E1);
        let pi = semisimple_quotient(&alg).unwrap();
        let text = serialize_hom(&pi);
        let spec = parse_hom(&text).unwrap();
        let again = build_hom(&spec, &alg, pi.target()).unwrap();
        assert_eq!(serialize_hom(&again), text);
        assert_eq!(again.matrix(), pi.matrix());
    }

    #[test]
    fn rejects_bad_homs() {
        let alg = build(E1);
        let bad = "hom f : E1 -> E1\nvertex 1 -> 1\nvertex 2 -> 2\nvertex 3 -> 3\narrow a -> b\narrow b -> b\nend\n";
        let e = build_hom(&parse_hom(bad).unwrap(), &alg, &alg).unwrap_err();
        assert_eq!(e, HomError::NotSandwiched("a".into()));
        let overlap = "hom f : E1 -> E1\nvertex 1 -> 1\nvertex 2 -> 1\nvertex 3 -> 3\narrow a -> 0\narrow b -> 0\nend\n";
        assert!(matches!(
            build_hom(&parse_hom(overlap).unwrap(), &alg, &alg),
            Err(HomError::Overlapping(_))
        ));
    }

    #[test]
    fn non_radical_preserving_probe() {
        let alg = build(LOOP);
        let img = AlgebraElement::from_sparse(&alg, vec![(0, alg.one()), (1, alg.one())]);
        let spec = "hom f : L -> L\nvertex v -> v\narrow x -> e_v + x\nend\n";
        assert_eq!(
            build_hom(&parse_hom(spec).unwrap(), &alg, &alg).unwrap_err(),
            HomError::RelationNotKilled(0)
        );
        let phi = AlgebraHom::new_unchecked("f", &alg, &alg, vec![vec![0]], vec![img]).unwrap();
        assert!(!phi.is_radical_preserving());
        let top = simple(&alg, 0).unwrap();
        assert_eq!(
            cover_preservation_check(&phi, &top).unwrap_err(),
            HomError::NotRadicalPreserving
        );
        // B ⊗ A/J collapses while Bφ(e_v) = B does not
        assert!(induce(&phi, &top).unwrap().is_zero());
        let probe = cover_preservation_probe(&phi, &top).unwrap();
        assert!(probe.surjective && !probe.kernel_in_radical && !probe.top_isomorphic);
        assert!(!probe.holds());
    }
}
