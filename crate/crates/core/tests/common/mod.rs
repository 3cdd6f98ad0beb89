#![allow(dead_code)]

use std::sync::Arc;

use num_traits::One;
use quiverdim::algebra::DEFAULT_DEGREE_CAP;
use quiverdim::homalg::{quotient_hom, AlgebraHom};
use quiverdim::quiver::{parse_algebra, AlgebraSpec, LinComb, Path, Quiver};
use quiverdim::{Field, QAlgebra, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const E1: &str =
    "algebra E1\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nrelations\n  a*b\nend\n";
pub const LOOP: &str = "algebra L\nvertices v\narrow x : v -> v\nrelations\n  x^2\nend\n";

pub fn build(text: &str) -> Arc<QAlgebra> {
    QAlgebra::build(&parse_algebra(text).unwrap(), DEFAULT_DEGREE_CAP).unwrap()
}

pub fn build_spec(spec: &AlgebraSpec) -> Arc<QAlgebra> {
    QAlgebra::build(spec, DEFAULT_DEGREE_CAP).unwrap()
}

/// All paths of length `len` in `q`.
pub fn paths_of_length(q: &Quiver, len: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|p| {
                q.arrows_from(p.target())
                    .map(|a| p.compose(&q.arrow_path(a)).unwrap())
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn random_relations(rng: &mut ChaCha8Rng, q: &Quiver, max_len: usize) -> Vec<LinComb> {
    let mut rels = Vec::new();
    for len in 2..=max_len {
        let paths = paths_of_length(q, len);
        for (i, p) in paths.iter().enumerate() {
            let roll: f64 = rng.gen();
            if roll < 0.3 {
                rels.push(LinComb::monomial(p.clone()));
            } else if roll < 0.45 {
                // a binomial with a later parallel path, when there is one
                let partner = paths[i + 1..]
                    .iter()
                    .find(|r| r.source() == p.source() && r.target() == p.target());
                if let Some(r) = partner {
                    let c = Rational::from_integer(rng.gen_range(1i64..4).into());
                    rels.push(LinComb::from_terms([
                        (p.clone(), Rational::one()),
                        (r.clone(), -c),
                    ]));
                }
            }
        }
    }
    rels
}

fn random_quiver(rng: &mut ChaCha8Rng, loops: bool) -> Quiver {
    let n = rng.gen_range(1..=5);
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let k = match rng.gen_range(0..10) {
                0..=3 => 0,
                4..=8 => 1,
                _ => 2,
            };
            for _ in 0..k {
                arrows.push((format!("x{}", arrows.len()), i.to_string(), j.to_string()));
            }
        }
        if loops && rng.gen_bool(0.2) {
            arrows.push((format!("x{}", arrows.len()), i.to_string(), i.to_string()));
        }
    }
    if arrows.is_empty() && n > 1 && rng.gen_bool(0.8) {
        arrows.push(("x0".into(), "0".into(), (n - 1).to_string()));
    }
    Quiver::new((0..n).map(|v| v.to_string()), arrows).unwrap()
}

/// A random algebra on an acyclic quiver with at most `max_dim` basis elements.
pub fn random_acyclic(seed: u64, max_dim: usize) -> Arc<QAlgebra> {
    random_algebra(seed, max_dim, false)
}

/// Like [`random_acyclic`] but quivers may carry loops, which get `x^2` among their relations.
pub fn random_algebra(seed: u64, max_dim: usize, loops: bool) -> Arc<QAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let q = random_quiver(&mut rng, loops);
        let mut rels = random_relations(&mut rng, &q, 3);
        for (a, arrow) in q.arrows().iter().enumerate() {
            if arrow.source == arrow.target {
                let p = q.arrow_path(a);
                rels.push(LinComb::monomial(p.compose(&p).unwrap()));
            }
        }
        let Ok(spec) = AlgebraSpec::new(format!("R{seed}"), Field::Rational, q, rels) else {
            continue;
        };
        if let Ok(alg) = QAlgebra::build(&spec, 12) {
            if alg.dim() <= max_dim {
                return alg;
            }
        }
    }
}

/// A random quotient `A -> A/K` with `K` inside the radical: some arrows are killed and some
/// random monomials of length 2 are added as relations.
pub fn random_quotient(alg: &Arc<QAlgebra>, seed: u64) -> AlgebraHom<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = alg.quiver();
    let killed: Vec<usize> = (0..q.arrow_count())
        .filter(|_| rng.gen_bool(0.25))
        .collect();
    let extra: Vec<LinComb> = paths_of_length(q, 2)
        .into_iter()
        .filter(|_| rng.gen_bool(0.2))
        .map(LinComb::monomial)
        .collect();
    quotient_hom(alg, &killed, &extra, &format!("{}_q{seed}", alg.name())).unwrap()
}
