mod common;

use std::sync::Arc;

use quiverdim::algebra::{BoundQuiverAlgebra, DEFAULT_DEGREE_CAP};
use quiverdim::oracle::{ext_based_pd, naive_dim};
use quiverdim::repmod::{proj_dim, random_module, simple, ExtendedNat};
use quiverdim::{Field, Fp, Scalar};

const CAP: usize = 8;
const BUDGET: usize = 20_000;

/// `Ok` when the oracle value is consistent with the engine value.
fn consistent(engine: ExtendedNat, oracle: ExtendedNat) -> bool {
    match (engine, oracle) {
        (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) => a == b,
        (ExtendedNat::Finite(a), ExtendedNat::AtLeast(b)) => a >= b,
        (ExtendedNat::AtLeast(_), ExtendedNat::Finite(_)) => false,
        (ExtendedNat::AtLeast(_), ExtendedNat::AtLeast(_)) => true,
    }
}

fn check_pair<S: Scalar>(alg: &Arc<BoundQuiverAlgebra<S>>, seed: u64) -> usize {
    let mut modules = vec![random_module(alg, seed, 2)];
    modules.extend((0..alg.vertex_count()).map(|i| simple(alg, i).unwrap()));
    let mut compared = 0;
    for m in modules.into_iter().filter(|m| m.dim() <= 12) {
        let engine = proj_dim(&m, CAP);
        let oracle = ext_based_pd(&m, CAP, BUDGET).unwrap();
        assert!(
            consistent(engine, oracle),
            "seed {seed}: engine {engine} oracle {oracle} on {:?}",
            m.dims()
        );
        compared += 1;
    }
    compared
}

#[test]
fn random_pairs_agree() {
    let mut compared = 0;
    for seed in 0..100u64 {
        let alg = common::random_algebra(seed, 40, true);
        assert_eq!(naive_dim(alg.spec(), 16).unwrap(), alg.dim(), "seed {seed}");
        compared += check_pair(&alg, seed);
    }
    assert!(compared >= 100);
}

#[test]
fn prime_field_pairs_agree() {
    for seed in 0..20u64 {
        let mut spec = common::random_algebra(1000 + seed, 30, true).spec().clone();
        spec.field = Field::prime(if seed % 2 == 0 { 2 } else { 3 }).unwrap();
        let alg = BoundQuiverAlgebra::<Fp>::build(&spec, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(naive_dim(&spec, 16).unwrap(), alg.dim(), "seed {seed}");
        check_pair(&alg, seed);
    }
}

#[test]
fn e1_agrees() {
    let alg = common::build(common::E1);
    assert_eq!(naive_dim(alg.spec(), 16).unwrap(), 5);
    for i in 0..3 {
        let s = simple(&alg, i).unwrap();
        assert_eq!(ext_based_pd(&s, CAP, BUDGET).unwrap(), proj_dim(&s, CAP));
    }
}
