//! Brute-force cross-checks for the engine: raw path coordinates with ideal membership tests,
//! and projective dimension read off Ext groups of a deliberately wasteful free resolution.

use std::collections::HashMap;

use thiserror::Error;

use crate::linalg::{Matrix, Subspace};
use crate::quiver::{AlgebraSpec, Path, Quiver};
use crate::repmod::{ExtendedNat, Representation};
use crate::scalar::{Field, FieldError, Fp, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("paths of length {0} are not all in the ideal")]
    CapExceeded(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("free resolution exceeded the size budget before any Ext group was known")]
    Budget,
}

struct Degree<S> {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    /// The degree-`d` part of the ideal, in path coordinates.
    ideal: Subspace<S>,
}

/// `kQ/I` kept in raw path coordinates, degree by degree.
pub struct OracleAlgebra<S> {
    quiver: Quiver,
    one: S,
    degrees: Vec<Degree<S>>,
}

impl<S: Scalar> OracleAlgebra<S> {
    /// Enumerates paths up to the first degree lying entirely in the ideal.
    pub fn new(spec: &AlgebraSpec, cap: usize) -> Result<Self, OracleError> {
        let q = spec.quiver.clone();
        let one = S::from_i64(1, spec.field)?;
        let relations: Vec<Vec<(Path, S)>> = spec
            .relations
            .iter()
            .map(|r| {
                r.terms()
                    .map(|(p, c)| Ok((p.clone(), S::from_rational(c, spec.field)?)))
                    .collect::<Result<_, FieldError>>()
            })
            .collect::<Result<_, _>>()?;
        let mut degrees: Vec<Degree<S>> = Vec::new();
        let mut paths: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
        for d in 0..=cap {
            let index: HashMap<Path, usize> = paths
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, p)| (p, i))
                .collect();
            // p * r * s for every relation r and paths p, s of the right lengths
            let mut spanning = Vec::new();
            for r in &relations {
                let e = r[0].0.len();
                if e > d {
                    continue;
                }
                let (u, v) = (r[0].0.source(), r[0].0.target());
                for i in 0..=d - e {
                    let lefts: Vec<&Path> = degrees
                        .get(i)
                        .map_or(&paths[..0], |g| &g.paths[..])
                        .iter()
                        .filter(|p| p.target() == u)
                        .collect();
                    let rights: Vec<&Path> = degrees
                        .get(d - e - i)
                        .map_or(&paths[..0], |g| &g.paths[..])
                        .iter()
                        .filter(|p| p.source() == v)
                        .collect();
                    for p in &lefts {
                        for s in &rights {
                            let mut row = vec![S::zero(); paths.len()];
                            for (z, c) in r {
                                let full =
                                    p.compose(z).and_then(|x| x.compose(s)).expect("composable");
                                row[index[&full]] += c;
                            }
                            spanning.push(row);
                        }
                    }
                }
            }
            let ideal = Subspace::span(paths.len(), spanning);
            let full = ideal.dim() == paths.len();
            let next: Vec<Path> = paths
                .iter()
                .flat_map(|p| {
                    q.arrows_from(p.target())
                        .map(|a| p.extend(a, q.arrows()[a].target))
                        .collect::<Vec<_>>()
                })
                .collect();
            degrees.push(Degree {
                paths,
                index,
                ideal,
            });
            if full {
                return Ok(OracleAlgebra {
                    quiver: q,
                    one,
                    degrees,
                });
            }
            paths = next;
        }
        Err(OracleError::CapExceeded(cap))
    }

    pub fn dim(&self) -> usize {
        self.degrees
            .iter()
            .map(|g| g.paths.len() - g.ideal.dim())
            .sum()
    }

    /// Whether a homogeneous combination of paths of degree `d` lies in the ideal.
    pub fn in_ideal(&self, d: usize, terms: &[(Path, S)]) -> bool {
        let Some(g) = self.degrees.get(d) else {
            return true;
        };
        let mut v = vec![S::zero(); g.paths.len()];
        for (p, c) in terms {
            v[g.index[p]] += c;
        }
        g.ideal.contains(&v)
    }

    /// Cosets of paths `u -> v` of degree `d`: the representatives outside the pivots of the
    /// ideal.
    fn coset_paths(&self, d: usize, u: usize, v: usize) -> Vec<usize> {
        let g = &self.degrees[d];
        g.ideal
            .complement_positions()
            .into_iter()
            .filter(|&i| g.paths[i].source() == u && g.paths[i].target() == v)
            .collect()
    }
}

/// `dim kQ/I` from path counts and ideal ranks.
pub fn naive_dim(spec: &AlgebraSpec, cap: usize) -> Result<usize, OracleError> {
    match spec.field {
        Field::Rational => Ok(OracleAlgebra::<Rational>::new(spec, cap)?.dim()),
        Field::Prime(_) => Ok(OracleAlgebra::<Fp>::new(spec, cap)?.dim()),
    }
}

/// `Λe_w` in oracle coordinates: at `u`, classes of paths `u -> w` of all degrees.
struct FreeBlock {
    /// `(degree, path index)` per basis element, grouped by vertex.
    basis: Vec<Vec<(usize, usize)>>,
}

fn free_block<S: Scalar>(alg: &OracleAlgebra<S>, w: usize) -> FreeBlock {
    let n = alg.quiver.vertex_count();
    let basis = (0..n)
        .map(|u| {
            (0..alg.degrees.len())
                .flat_map(|d| alg.coset_paths(d, u, w).into_iter().map(move |i| (d, i)))
                .collect()
        })
        .collect();
    FreeBlock { basis }
}

/// Column of `a * p` in the block, for `p` a basis path at the target of `a`.
fn arrow_times<S: Scalar>(
    alg: &OracleAlgebra<S>,
    block: &FreeBlock,
    a: usize,
    d: usize,
    i: usize,
) -> Vec<S> {
    let arrow = &alg.quiver.arrows()[a];
    let s = arrow.source;
    let mut out = vec![S::zero(); block.basis[s].len()];
    let Some(g) = alg.degrees.get(d + 1) else {
        return out;
    };
    let p = Path::trivial(s)
        .compose(&alg.quiver.arrow_path(a))
        .and_then(|x| x.compose(&alg.degrees[d].paths[i]))
        .expect("composable");
    let mut v = vec![S::zero(); g.paths.len()];
    v[g.index[&p]] = alg.one.clone();
    let r = g.ideal.reduce(&v);
    for (k, &(dd, ii)) in block.basis[s].iter().enumerate() {
        if dd == d + 1 {
            out[k] = r[ii].clone();
        }
    }
    out
}

/// A module as plain matrices, `maps[a]` of size `dims[s(a)] x dims[t(a)]`.
struct Module<S> {
    dims: Vec<usize>,
    maps: Vec<Matrix<S>>,
}

impl<S: Scalar> Module<S> {
    fn path_apply(&self, p: &Path, x: &[S]) -> Vec<S> {
        let mut y = x.to_vec();
        for &a in p.arrows().iter().rev() {
            y = self.maps[a].mul_vec(&y).unwrap();
        }
        y
    }
}

/// One free term `F_k` with the kernel of `F_k -> K_{k-1}`.
struct FreeTerm<S> {
    /// `(vertex, index)` of the basis vector of `K_{k-1}` behind each generator.
    gens: Vec<(usize, usize)>,
    /// `offsets[u][g]`: start of generator `g`'s block at vertex `u`.
    offsets: Vec<Vec<usize>>,
    kernels: Vec<Subspace<S>>,
}

impl<S: Scalar> FreeTerm<S> {
    fn build(
        alg: &OracleAlgebra<S>,
        blocks: &[FreeBlock],
        current: &Module<S>,
    ) -> (Self, Vec<usize>) {
        let n = current.dims.len();
        let gens: Vec<(usize, usize)> = (0..n)
            .flat_map(|w| (0..current.dims[w]).map(move |j| (w, j)))
            .collect();
        let mut offsets = vec![Vec::with_capacity(gens.len()); n];
        let mut fdims = vec![0; n];
        for u in 0..n {
            for &(w, _) in &gens {
                offsets[u].push(fdims[u]);
                fdims[u] += blocks[w].basis[u].len();
            }
        }
        let kernels = (0..n)
            .map(|u| {
                let mut cols = Vec::with_capacity(fdims[u]);
                for &(w, j) in &gens {
                    let mut e = vec![S::zero(); current.dims[w]];
                    e[j] = alg.one.clone();
                    for &(d, i) in &blocks[w].basis[u] {
                        cols.push(current.path_apply(&alg.degrees[d].paths[i], &e));
                    }
                }
                Matrix::from_columns(current.dims[u], &cols).kernel()
            })
            .collect();
        (
            FreeTerm {
                gens,
                offsets,
                kernels,
            },
            fdims,
        )
    }

    /// Generators at `j`.
    fn count(&self, j: usize) -> usize {
        self.gens.iter().filter(|g| g.0 == j).count()
    }

    /// Rank at `j` of `Hom(F_k, S_j) -> Hom(F_{k+1}, S_j)`: the trivial-path coefficients of
    /// the kernel vectors at `j` on the generators at `j`. The trivial path sits first in
    /// every block.
    fn next_rank(&self, j: usize) -> usize {
        let cols: Vec<usize> = (0..self.gens.len())
            .filter(|&g| self.gens[g].0 == j)
            .collect();
        let rows: Vec<Vec<S>> = self.kernels[j]
            .basis()
            .iter()
            .map(|y| {
                cols.iter()
                    .map(|&g| y[self.offsets[j][g]].clone())
                    .collect()
            })
            .collect();
        if rows.is_empty() || cols.is_empty() {
            return 0;
        }
        Matrix::from_rows(cols.len(), rows).unwrap().rank()
    }

    /// The kernel as a module.
    fn kernel_module(
        &self,
        alg: &OracleAlgebra<S>,
        blocks: &[FreeBlock],
        fdims: &[usize],
    ) -> Module<S> {
        let q = &alg.quiver;
        let dims: Vec<usize> = self.kernels.iter().map(Subspace::dim).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let (s, t) = (arrow.source, arrow.target);
                let cols: Vec<Vec<S>> = self.kernels[t]
                    .basis()
                    .iter()
                    .map(|y| {
                        let mut out = vec![S::zero(); fdims[s]];
                        for (g, &(w, _)) in self.gens.iter().enumerate() {
                            for (c, &(d, i)) in blocks[w].basis[t].iter().enumerate() {
                                let x = &y[self.offsets[t][g] + c];
                                if x.is_zero() {
                                    continue;
                                }
                                for (r, z) in arrow_times(alg, &blocks[w], a, d, i)
                                    .into_iter()
                                    .enumerate()
                                {
                                    if !z.is_zero() {
                                        out[self.offsets[s][g] + r] += &(z * x.clone());
                                    }
                                }
                            }
                        }
                        self.kernels[s].coords(&out)
                    })
                    .collect();
                Matrix::from_columns(dims[s], &cols)
            })
            .collect();
        Module { dims, maps }
    }
}

/// Projective dimension as the largest `k` with `Ext^k(M, Λ/J) ≠ 0`, from the free module on
/// every basis vector at each step. Once a free term would exceed `budget` basis elements the
/// best lower bound known so far is returned.
pub fn ext_based_pd<S: Scalar>(
    m: &Representation<S>,
    cap: usize,
    budget: usize,
) -> Result<ExtendedNat, OracleError> {
    if m.is_zero() {
        return Ok(ExtendedNat::Finite(0));
    }
    let alg = OracleAlgebra::<S>::new(m.algebra().spec(), m.algebra().loewy_length() + 1)?;
    let n = alg.quiver.vertex_count();
    let blocks: Vec<FreeBlock> = (0..n).map(|w| free_block(&alg, w)).collect();
    let block_sizes: Vec<usize> = blocks
        .iter()
        .map(|b| b.basis.iter().map(Vec::len).sum())
        .collect();
    let mut current = Module {
        dims: m.dims().to_vec(),
        maps: m.maps().to_vec(),
    };
    let mut rank_in = vec![0usize; n];
    for k in 0..=cap + 1 {
        let total: usize = (0..n).map(|w| current.dims[w] * block_sizes[w]).sum();
        if total > budget {
            // Ext^{k-1} ≠ 0 is known, so pd ≥ k - 1
            return if k >= 2 {
                Ok(ExtendedNat::AtLeast(k - 2))
            } else {
                Err(OracleError::Budget)
            };
        }
        let (term, fdims) = FreeTerm::build(&alg, &blocks, &current);
        let rank_out: Vec<usize> = (0..n).map(|j| term.next_rank(j)).collect();
        let ext_zero = (0..n).all(|j| term.count(j) == rank_out[j] + rank_in[j]);
        if ext_zero {
            // k ≥ 1 here: Ext^0(M, Λ/J) = Hom(M, Λ/J) is nonzero
            return Ok(ExtendedNat::Finite(k - 1));
        }
        if k == cap + 1 {
            break;
        }
        current = term.kernel_module(&alg, &blocks, &fdims);
        rank_in = rank_out;
    }
    Ok(ExtendedNat::AtLeast(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BoundQuiverAlgebra, DEFAULT_DEGREE_CAP};
    use crate::quiver::parse_algebra;
    use crate::repmod::{projective, simple};
    use crate::scalar::Rational;

    const E1: &str =
        "algebra E1\nvertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nrelations\n  a*b\nend\n";

    #[test]
    fn e1_values() {
        let spec = parse_algebra(E1).unwrap();
        assert_eq!(naive_dim(&spec, 10).unwrap(), 5);
        let alg = BoundQuiverAlgebra::<Rational>::build(&spec, DEFAULT_DEGREE_CAP).unwrap();
        let pd = |m| ext_based_pd(&m, 10, 10_000).unwrap();
        assert_eq!(pd(simple(&alg, 2).unwrap()), ExtendedNat::Finite(2));
        assert_eq!(pd(simple(&alg, 1).unwrap()), ExtendedNat::Finite(1));
        assert_eq!(pd(projective(&alg, 1).unwrap()), ExtendedNat::Finite(0));
    }

    #[test]
    fn no_arrows_and_unbounded() {
        let spec = parse_algebra("algebra K\nvertices 1 2 3\nend\n").unwrap();
        assert_eq!(naive_dim(&spec, 4).unwrap(), 3);
        let spec = parse_algebra("algebra C\nvertices v\narrow x : v -> v\nend\n").unwrap();
        assert_eq!(naive_dim(&spec, 6), Err(OracleError::CapExceeded(6)));
    }

    #[test]
    fn loop_simple_caps_out() {
        let spec =
            parse_algebra("algebra L\nvertices v\narrow x : v -> v\nrelations\n  x^2\nend\n")
                .unwrap();
        let alg = BoundQuiverAlgebra::<Rational>::build(&spec, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(
            ext_based_pd(&simple(&alg, 0).unwrap(), 3, 10_000).unwrap(),
            ExtendedNat::AtLeast(3)
        );
    }
}
