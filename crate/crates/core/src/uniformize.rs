//! Uniformization: adding a truncated loop at every vertex whose projective has short Loewy
//! length, the quasi-uniform classifier, and the `Λ_{n,m}` family.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, BoundQuiverAlgebra, LoewyProfile};
use crate::homalg::{analyze, AlgebraHom, HomError};
use crate::quiver::{AlgebraSpec, LinComb, Path, Quiver, SpecError};
use crate::repmod::{
    inj_dim_simple, proj_dim, random_module, simple_embeds_in_regular_right, ExtendedNat,
};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniformizeError {
    #[error("family needs n a multiple of 5 with n >= 10 and m >= 1, got n = {n}, m = {m}")]
    FamilyParameters { n: usize, m: usize },
    #[error("algebra `{0}` does not have uniform Loewy length")]
    NotUniform(String),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hom(#[from] HomError),
}

/// `Λ*` together with the inclusion `ι: Λ -> Λ*` and the retraction `π: Λ* -> Λ`.
#[derive(Clone)]
pub struct UniformizationResult<S> {
    pub base: Arc<BoundQuiverAlgebra<S>>,
    pub star: Arc<BoundQuiverAlgebra<S>>,
    /// `(vertex, arrow index of the loop in Λ*)`.
    pub loops: Vec<(usize, usize)>,
    /// The added relations.
    pub t_u: Vec<LinComb>,
    pub iota: AlgebraHom<S>,
    pub pi: AlgebraHom<S>,
}

impl<S: Scalar> std::fmt::Debug for UniformizationResult<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UniformizationResult")
            .field("star", &self.star.name())
            .field("loops", &self.loops)
            .finish()
    }
}

fn loop_name(q: &Quiver, v: usize) -> String {
    let mut name = format!("u{}", q.vertex_name(v));
    while q.arrow(&name).is_ok() {
        name.push('_');
    }
    name
}

/// The spec of `Λ*`, the loop arrows and the added relations. Loops are appended after the
/// arrows of `Λ`, so arrow indices of `Λ` stay valid in `Λ*`.
pub fn uniformization_spec<S: Scalar>(
    alg: &BoundQuiverAlgebra<S>,
) -> Result<(AlgebraSpec, Vec<(usize, usize)>, Vec<LinComb>), UniformizeError> {
    let q = alg.quiver();
    let l = alg.loewy_length();
    let non_maximal = alg.loewy_profile().non_maximal;
    let mut arrows: Vec<(String, String, String)> = q
        .arrows()
        .iter()
        .map(|a| {
            (
                a.id.clone(),
                q.vertex_name(a.source).into(),
                q.vertex_name(a.target).into(),
            )
        })
        .collect();
    let mut loops = Vec::new();
    for &v in &non_maximal {
        let name = loop_name(q, v);
        let vn = q.vertex_name(v).to_string();
        loops.push((v, arrows.len()));
        arrows.push((name, vn.clone(), vn));
    }
    let quiver = Quiver::new(q.vertices().to_vec(), arrows)?;
    let mut t_u = Vec::new();
    for &(v, lam) in &loops {
        t_u.push(LinComb::monomial(quiver.path(&vec![lam; l]).expect("loop")));
        for g in q.arrows_into(v) {
            t_u.push(LinComb::monomial(
                quiver.path(&[g, lam]).expect("composable"),
            ));
        }
        for d in q.arrows_from(v) {
            t_u.push(LinComb::monomial(
                quiver.path(&[lam, d]).expect("composable"),
            ));
        }
    }
    let mut relations = alg.spec().relations.clone();
    relations.extend(t_u.iter().cloned());
    let spec = AlgebraSpec::new(
        format!("{}_star", alg.name()),
        alg.field(),
        quiver,
        relations,
    )?;
    Ok((spec, loops, t_u))
}

/// Builds `Λ*`, `ι` and `π` from a (possibly modified) spec of `Λ*` whose first arrows are
/// those of `Λ`.
pub fn assemble<S: Scalar>(
    alg: &Arc<BoundQuiverAlgebra<S>>,
    star_spec: &AlgebraSpec,
    loops: Vec<(usize, usize)>,
    t_u: Vec<LinComb>,
) -> Result<UniformizationResult<S>, UniformizeError> {
    let star = BoundQuiverAlgebra::build(star_spec, 2 * alg.loewy_length() + 2)?;
    let n = alg.vertex_count();
    let vertices: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let iota_arrows = (0..alg.arrow_count())
        .map(|a| star.element(star.arrow_index(a)))
        .collect();
    let iota = AlgebraHom::new(
        format!("iota_{}", alg.name()),
        alg,
        &star,
        vertices.clone(),
        iota_arrows,
    )?;
    let pi_arrows = (0..star.arrow_count())
        .map(|a| {
            if a < alg.arrow_count() {
                alg.element(alg.arrow_index(a))
            } else {
                AlgebraElement::zero(alg)
            }
        })
        .collect();
    let pi = AlgebraHom::new(
        format!("pi_{}", alg.name()),
        &star,
        alg,
        vertices,
        pi_arrows,
    )?;
    Ok(UniformizationResult {
        base: alg.clone(),
        star,
        loops,
        t_u,
        iota,
        pi,
    })
}

/// `Λ*`: one loop `λ_i` at each non-maximal vertex with `λ_i^l = γλ_i = λ_iδ = 0`. A uniform
/// algebra is returned unchanged with identity maps.
pub fn uniformize<S: Scalar>(
    alg: &Arc<BoundQuiverAlgebra<S>>,
) -> Result<UniformizationResult<S>, UniformizeError> {
    if alg.loewy_profile().is_uniform() {
        return Ok(UniformizationResult {
            base: alg.clone(),
            star: alg.clone(),
            loops: Vec::new(),
            t_u: Vec::new(),
            iota: AlgebraHom::identity(alg),
            pi: AlgebraHom::identity(alg),
        });
    }
    let (spec, loops, t_u) = uniformization_spec(alg)?;
    assemble(alg, &spec, loops, t_u)
}

/// Independent checks on a uniformization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformizationChecklist {
    /// `dim Λ* = dim Λ + (l - 1) · #loops`.
    pub dimension_formula: bool,
    /// Standard paths of `Λ` stay standard in `Λ*` and `ι` is injective.
    pub iota_injective: bool,
    /// Every path of `Λ` reduces identically in `Λ*`.
    pub normal_forms_kept: bool,
    pub pi_surjective: bool,
    pub pi_iota_identity: bool,
    /// `Ll(Λ*) = Ll(Λ)` and every projective of `Λ*` reaches it.
    pub uniform_same_length: bool,
    /// `λ_i^{l-1} ≠ 0` for every loop.
    pub loop_powers_nonzero: bool,
    pub iota_radical_preserving: bool,
    pub pi_radical_preserving: bool,
}

impl UniformizationChecklist {
    pub fn all_pass(&self) -> bool {
        self.dimension_formula
            && self.iota_injective
            && self.normal_forms_kept
            && self.pi_surjective
            && self.pi_iota_identity
            && self.uniform_same_length
            && self.loop_powers_nonzero
            && self.iota_radical_preserving
            && self.pi_radical_preserving
    }
}

pub fn verify_uniformization<S: Scalar>(res: &UniformizationResult<S>) -> UniformizationChecklist {
    let (base, star) = (&res.base, &res.star);
    let l = base.loewy_length();
    let basis_kept = base.basis().iter().all(|p| star.index_of(p).is_some());
    // every path of Λ of length < l + 1, i.e. everything the relations of Λ see
    let mut normal_forms_kept = true;
    let mut frontier: Vec<Path> = (0..base.vertex_count()).map(Path::trivial).collect();
    'outer: for _ in 0..=l {
        let mut next = Vec::new();
        for p in &frontier {
            let mut image: Vec<(usize, S)> = base
                .reduce_path(p)
                .into_iter()
                .map(|(i, c)| (star.index_of(base.basis_path(i)).unwrap_or(usize::MAX), c))
                .collect();
            image.sort_by_key(|t| t.0);
            if image != star.reduce_path(p) {
                normal_forms_kept = false;
                break 'outer;
            }
            for a in base.quiver().arrows_from(p.target()) {
                next.push(p.extend(a, base.quiver().arrows()[a].target));
            }
        }
        frontier = next;
    }
    let composite = res.iota.then(&res.pi).ok();
    let pi_iota_identity = composite
        .map(|h| *h.matrix() == crate::linalg::Matrix::identity(base.dim()))
        .unwrap_or(false);
    let star_profile = star.loewy_profile();
    UniformizationChecklist {
        dimension_formula: star.dim() == base.dim() + (l - 1) * res.loops.len(),
        iota_injective: basis_kept && res.iota.kernel().dim() == 0,
        normal_forms_kept,
        pi_surjective: res.pi.matrix().rank() == base.dim(),
        pi_iota_identity,
        uniform_same_length: star.loewy_length() == l && star_profile.is_uniform(),
        loop_powers_nonzero: res.loops.iter().all(|&(_, lam)| {
            star.quiver()
                .path(&vec![lam; l - 1])
                .is_some_and(|p| star.index_of(&p).is_some())
        }),
        iota_radical_preserving: res.iota.is_radical_preserving(),
        pi_radical_preserving: res.pi.is_radical_preserving(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuasiUniformVerdict {
    Uniform,
    QuasiUniformCertified,
    /// Some non-maximal vertex has a simple whose injective dimension caps out.
    NotCertified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiUniformReport {
    pub profile: LoewyProfile,
    /// `idim S(i)` per vertex.
    pub idims: Vec<ExtendedNat>,
    /// Vertices whose simple has injective dimension beyond the cap.
    pub presumed_e_infinity: Vec<usize>,
    pub verdict: QuasiUniformVerdict,
    /// Maximum of `idim S(i)` over the non-maximal vertices.
    pub fpd_upper_bound: ExtendedNat,
    /// Some simple right module does not embed in the right regular module.
    pub fpd_positive: bool,
    /// `pd Λ*_Λ` along `ι`.
    pub iota_pd: ExtendedNat,
    /// Present when both the bound and `pd Λ*_Λ` are finite.
    pub bound_matches_iota: Option<bool>,
}

pub fn quasi_uniform_report<S: Scalar>(
    alg: &Arc<BoundQuiverAlgebra<S>>,
    cap: usize,
) -> Result<QuasiUniformReport, UniformizeError> {
    let profile = alg.loewy_profile();
    // warm the cached opposite before the parallel section
    alg.opposite();
    let idims: Vec<ExtendedNat> = (0..alg.vertex_count())
        .into_par_iter()
        .map(|i| inj_dim_simple(alg, i, cap).expect("vertex in range"))
        .collect();
    let presumed_e_infinity = (0..idims.len())
        .filter(|&i| !idims[i].is_finite())
        .collect();
    let fpd_upper_bound = profile
        .non_maximal
        .iter()
        .map(|&i| idims[i])
        .fold(ExtendedNat::Finite(0), ExtendedNat::max);
    let verdict = if profile.is_uniform() {
        QuasiUniformVerdict::Uniform
    } else if fpd_upper_bound.is_finite() {
        QuasiUniformVerdict::QuasiUniformCertified
    } else {
        QuasiUniformVerdict::NotCertified
    };
    let mut fpd_positive = false;
    for i in 0..alg.vertex_count() {
        if !simple_embeds_in_regular_right(alg, i).expect("vertex in range") {
            fpd_positive = true;
            break;
        }
    }
    let iota_pd = analyze(&uniformize(alg)?.iota, cap).pd_right_target;
    let bound_matches_iota = match (fpd_upper_bound, iota_pd) {
        (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) => Some(a == b),
        _ => None,
    };
    Ok(QuasiUniformReport {
        profile,
        idims,
        presumed_e_infinity,
        verdict,
        fpd_upper_bound,
        fpd_positive,
        iota_pd,
        bound_matches_iota,
    })
}

/// The algebra `Λ_{n,m}`: an `n`-cycle with a doubled arrow `5 -> 6`, a chain of `m` extra
/// vertices hanging off vertex 2 and fed from vertex 4, and loops at the vertices `≡ 0, 4`
/// (mod 5) and at the end of the chain.
pub fn family(n: usize, m: usize) -> Result<AlgebraSpec, UniformizeError> {
    if n < 10 || !n.is_multiple_of(5) || m == 0 {
        return Err(UniformizeError::FamilyParameters { n, m });
    }
    let vname = |i: usize| i.to_string();
    // cycle index, 1-based and cyclic
    let cyc = |i: usize| (i + n - 1) % n + 1;
    let alpha = |i: usize| {
        if i == 5 {
            "a5_1".to_string()
        } else {
            format!("a{i}")
        }
    };
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for i in 1..=n {
        if i == 5 {
            arrows.push(("a5_1".into(), vname(5), vname(6)));
            arrows.push(("a5_2".into(), vname(5), vname(6)));
        } else {
            arrows.push((alpha(i), vname(i), vname(cyc(i + 1))));
        }
    }
    arrows.push(("b1".into(), vname(n + 1), vname(2)));
    for j in 2..=m {
        arrows.push((format!("b{j}"), vname(n + j), vname(n + j - 1)));
    }
    for j in 1..=m {
        arrows.push((format!("g{j}"), vname(4), vname(n + j)));
    }
    let loop_vertices: Vec<usize> = (1..=n).filter(|i| i % 5 == 0 || i % 5 == 4).collect();
    for &i in &loop_vertices {
        arrows.push((format!("l{i}"), vname(i), vname(i)));
    }
    arrows.push((format!("l{}", n + m), vname(n + m), vname(n + m)));
    let quiver = Quiver::new((1..=n + m).map(vname), arrows)?;

    let path = |ids: &[String]| -> Path {
        let idx: Vec<usize> = ids
            .iter()
            .map(|s| quiver.arrow(s).expect("declared"))
            .collect();
        quiver.path(&idx).expect("composable")
    };
    let mono = |ids: &[String]| LinComb::monomial(path(ids));
    let window = |start: usize, len: usize| -> Vec<String> {
        (0..len).map(|k| alpha(cyc(start + k))).collect()
    };
    let s = |x: &str| x.to_string();

    let mut rel = vec![mono(&window(n - 2, 3))];
    for start in [n - 1, n].into_iter().chain(1..=n - 5) {
        rel.push(mono(&window(start, 5)));
    }
    rel.push(LinComb::binomial(
        path(&[s("a4"), s("a5_1")]),
        path(&[s("a4"), s("a5_2")]),
    ));
    rel.push(LinComb::binomial(
        path(&[s("a5_1"), s("a6")]),
        path(&[s("a5_2"), s("a6")]),
    ));
    rel.push(mono(&[s("b1"), s("a2")]));
    for j in 2..=m {
        rel.push(mono(&[format!("b{j}"), format!("b{}", j - 1)]));
    }
    for j in 1..=m {
        rel.push(mono(&[format!("g{j}"), format!("b{j}")]));
    }
    for j in 1..=m {
        let mut p = window(n, 4);
        p.push(format!("g{j}"));
        rel.push(mono(&p));
        rel.push(mono(&[s("l4"), format!("g{j}")]));
    }
    for &i in &loop_vertices {
        let l = format!("l{i}");
        rel.push(mono(&[l.clone(), l.clone()]));
        rel.push(mono(&[alpha(cyc(i - 1)), l.clone()]));
        if i == 5 {
            rel.push(mono(&[l.clone(), s("a5_1")]));
            rel.push(mono(&[l.clone(), s("a5_2")]));
        } else {
            rel.push(mono(&[l.clone(), alpha(i)]));
        }
    }
    let l = format!("l{}", n + m);
    rel.push(mono(&[l.clone(), l.clone()]));
    rel.push(mono(&[format!("g{m}"), l.clone()]));
    rel.push(mono(&[l, format!("b{m}")]));

    Ok(AlgebraSpec::new(
        format!("lambda_{n}_{m}"),
        Field::Rational,
        quiver,
        rel,
    )?)
}

/// Outcome of the random-module harness on a uniform algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub trials: usize,
    pub projective: usize,
    pub capped: usize,
    /// `(seed, pd)` of every module with finite positive projective dimension.
    pub falsifications: Vec<(u64, usize)>,
}

impl HarnessReport {
    pub fn passes(&self) -> bool {
        self.falsifications.is_empty()
    }
}

/// Resolves `trials` random modules over a uniform algebra; each must be projective or cap
/// out.
pub fn fpd_zero_harness<S: Scalar>(
    alg: &Arc<BoundQuiverAlgebra<S>>,
    trials: usize,
    cap: usize,
    seed: u64,
) -> Result<HarnessReport, UniformizeError> {
    if !alg.loewy_profile().is_uniform() {
        return Err(UniformizeError::NotUniform(alg.name().to_string()));
    }
    let outcomes: Vec<(u64, ExtendedNat)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let s = seed.wrapping_add(t);
            (s, proj_dim(&random_module(alg, s, 3), cap))
        })
        .collect();
    let mut report = HarnessReport {
        trials,
        projective: 0,
        capped: 0,
        falsifications: Vec::new(),
    };
    for (s, d) in outcomes {
        match d {
            ExtendedNat::Finite(0) => report.projective += 1,
            ExtendedNat::Finite(d) => report.falsifications.push((s, d)),
            ExtendedNat::AtLeast(_) => report.capped += 1,
        }
    }
    Ok(report)
}
