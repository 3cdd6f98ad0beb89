//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line before asserting.

mod common;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use quiverdim::homalg::{
    analyze, check_theorem_a, cover_preservation_check, cover_preservation_probe, AlgebraHom,
    HomError, TheoremAVerdict,
};
use quiverdim::oracle::{ext_based_pd, naive_dim};
use quiverdim::repmod::{
    global_dim, inj_dim_simple, minimal_resolution, proj_dim, random_module, simple,
    simple_embeds_in_regular_right, simple_proj_dims, ExtendedNat, ResolutionStatus,
};
use quiverdim::uniformize::{
    family, fpd_zero_harness, quasi_uniform_report, uniformize, verify_uniformization,
    QuasiUniformVerdict, UniformizationResult,
};
use quiverdim::{AlgebraElement, QAlgebra, Rational};

/// Resolution cap standing in for infinity.
const CAP: usize = 30;
/// Random modules per algebra in the fpd-zero harness.
const HARNESS_TRIALS: usize = 200;
/// Random algebras for the property-style criteria.
const RANDOM_ALGEBRAS: u64 = 50;
/// Random modules per hom in the cover-preservation criterion.
const MODULES_PER_HOM: u64 = 10;
/// Random oracle instances.
const ORACLE_INSTANCES: u64 = 100;
/// Per-criterion wall-clock limit.
const TIME_LIMIT_SECS: f64 = 60.0;

fn lambda(n: usize, m: usize) -> Arc<QAlgebra> {
    common::build_spec(&family(n, m).unwrap())
}

fn lambda_10_1() -> &'static Arc<QAlgebra> {
    static ALG: OnceLock<Arc<QAlgebra>> = OnceLock::new();
    ALG.get_or_init(|| lambda(10, 1))
}

fn star_10_1() -> &'static UniformizationResult<Rational> {
    static RES: OnceLock<UniformizationResult<Rational>> = OnceLock::new();
    RES.get_or_init(|| uniformize(lambda_10_1()).unwrap())
}

fn report(n: usize, what: &str, ok: bool, detail: String, start: Instant) {
    let secs = start.elapsed().as_secs_f64();
    let ok = ok && secs < TIME_LIMIT_SECS;
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("{tag} criterion {n:>2} ({what}): {detail} [{secs:.1}s]");
    assert!(ok, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_01_family_loewy_values() {
    let start = Instant::now();
    let alg = lambda_10_1();
    let p = alg.loewy_profile();
    let others_max = p.per_vertex[2..].iter().all(|&l| l == 5);
    let ok = p.loewy_length == 5
        && p.per_vertex[0] == 3
        && p.per_vertex[1] == 4
        && others_max
        && p.non_maximal == vec![0, 1];
    let detail = format!(
        "Ll {} per vertex {:?} non-maximal {:?}",
        p.loewy_length, p.per_vertex, p.non_maximal
    );
    report(1, "family Loewy values", ok, detail, start);
}

#[test]
fn criterion_02_injective_dimensions() {
    let start = Instant::now();
    let cases = [(10, 1, 3), (15, 1, 5), (15, 3, 5), (20, 2, 7)];
    let mut ok = true;
    let mut detail = Vec::new();
    for (n, m, expected) in cases {
        let alg = lambda(n, m);
        let i1 = inj_dim_simple(&alg, 0, CAP).unwrap();
        let i2 = inj_dim_simple(&alg, 1, CAP).unwrap();
        ok &= i1 == ExtendedNat::Finite(expected) && i2 == ExtendedNat::Finite(expected);
        detail.push(format!("({n},{m}) {i1}/{i2}"));
    }
    report(2, "injective dimensions", ok, detail.join(", "), start);
}

#[test]
fn criterion_03_resolution_shapes() {
    let start = Instant::now();
    let op = lambda_10_1().opposite();
    let r1 = minimal_resolution(&simple(&op, 0).unwrap(), CAP);
    let r2 = minimal_resolution(&simple(&op, 1).unwrap(), CAP);
    let ok = r1.vertex_sequence() == vec![vec![0], vec![1], vec![5], vec![6]]
        && r2.vertex_sequence() == vec![vec![1], vec![2], vec![6], vec![7]]
        && r1.status == ResolutionStatus::Terminated(3)
        && r2.status == ResolutionStatus::Terminated(3)
        && r1.is_exact()
        && r2.is_exact()
        && r1.is_minimal()
        && r2.is_minimal();
    // vertex indices are 0-based; the family labels them from 1
    let label = |s: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        s.into_iter()
            .map(|v| v.into_iter().map(|i| i + 1).collect())
            .collect()
    };
    let detail = format!(
        "{:?} {:?} / {:?} {:?}",
        label(r1.vertex_sequence()),
        r1.status,
        label(r2.vertex_sequence()),
        r2.status
    );
    report(3, "resolution shapes", ok, detail, start);
}

#[test]
fn criterion_04_chain_identity() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for (n, m) in [(10usize, 2usize), (15, 3)] {
        let nu = n / 5;
        let alg = lambda(n, m);
        let chain = proj_dim(&simple(&alg.opposite(), n + m - 2).unwrap(), CAP);
        let bound = quasi_uniform_report(&alg, CAP).unwrap().fpd_upper_bound;
        let gap_ok = match (chain, bound) {
            (ExtendedNat::Finite(c), ExtendedNat::Finite(b)) => c >= b && c - b >= m - 1,
            _ => false,
        };
        ok &= chain == ExtendedNat::Finite(2 * nu + m - 2) && gap_ok;
        detail.push(format!("({n},{m}) pd {chain} bound {bound}"));
    }
    report(4, "chain identity", ok, detail.join(", "), start);
}

#[test]
fn criterion_05_infinite_pd_cap_outs() {
    let start = Instant::now();
    let pds = simple_proj_dims(lambda_10_1(), CAP);
    let ok = pds.iter().all(|&d| d == ExtendedNat::AtLeast(CAP));
    let shown: Vec<String> = pds.iter().map(ToString::to_string).collect();
    report(5, "left simples cap out", ok, shown.join(" "), start);
}

#[test]
fn criterion_06_uniformization() {
    let start = Instant::now();
    let res = star_10_1();
    let base = lambda_10_1();
    let checks = verify_uniformization(res);
    let star_profile = res.star.loewy_profile();
    let iota = analyze(&res.iota, 1);
    let lam = res.loops[0].1;
    let top_power = res.star.quiver().path(&[lam; 4]).unwrap();
    let ok = res.star.dim() == base.dim() + 8
        && star_profile.is_uniform()
        && star_profile.loewy_length == 5
        && checks.all_pass()
        && res.star.index_of(&top_power).is_some()
        && iota.kernel_dim == 0
        && iota.radical_preserving;
    let detail = format!(
        "dim {} -> {}, Ll {} uniform {}, checks {}",
        base.dim(),
        res.star.dim(),
        star_profile.loewy_length,
        star_profile.is_uniform(),
        checks.all_pass()
    );
    report(6, "uniformization", ok, detail, start);
}

#[test]
fn criterion_07_bound_equality() {
    let start = Instant::now();
    let pd = analyze(&star_10_1().iota, CAP).pd_right_target;
    let rep = quasi_uniform_report(lambda_10_1(), CAP).unwrap();
    let ok = pd == ExtendedNat::Finite(3)
        && rep.fpd_upper_bound == ExtendedNat::Finite(3)
        && rep.verdict == QuasiUniformVerdict::QuasiUniformCertified
        && rep.fpd_positive
        && rep.bound_matches_iota == Some(true);
    let detail = format!(
        "pd along inclusion {pd}, bound {}, fpd positive {} so 1 <= Fpd <= 3",
        rep.fpd_upper_bound, rep.fpd_positive
    );
    report(7, "bound equality", ok, detail, start);
}

#[test]
fn criterion_08_fpd_zero_property() {
    let start = Instant::now();
    let star = fpd_zero_harness(&star_10_1().star, HARNESS_TRIALS, CAP, 0).unwrap();
    let looped = fpd_zero_harness(&common::build(common::LOOP), HARNESS_TRIALS, CAP, 0).unwrap();
    let loop_simple = proj_dim(&simple(&common::build(common::LOOP), 0).unwrap(), CAP);
    let ok = star.passes()
        && looped.passes()
        && star.projective + star.capped == HARNESS_TRIALS
        && looped.projective + looped.capped == HARNESS_TRIALS
        && loop_simple == ExtendedNat::AtLeast(CAP);
    let detail = format!(
        "star {}+{} loop {}+{} (projective+capped), falsifications {}",
        star.projective,
        star.capped,
        looped.projective,
        looped.capped,
        star.falsifications.len() + looped.falsifications.len()
    );
    report(8, "fpd-zero property", ok, detail, start);
}

#[test]
fn criterion_09_bass_positivity() {
    let start = Instant::now();
    let embeds = simple_embeds_in_regular_right(lambda_10_1(), 0).unwrap();
    let ok = !embeds && quasi_uniform_report(lambda_10_1(), 1).unwrap().fpd_positive;
    report(
        9,
        "Bass positivity",
        ok,
        format!("S(1) embeds: {embeds}"),
        start,
    );
}

#[test]
fn criterion_10_gd_via_simples() {
    let start = Instant::now();
    let mut ok = true;
    let mut gds = Vec::new();
    for seed in 0..RANDOM_ALGEBRAS {
        let alg = common::random_acyclic(seed, 30);
        let pds = simple_proj_dims(&alg, CAP);
        assert!(
            pds.iter().all(|d| d.is_finite()),
            "acyclic algebra with infinite pd"
        );
        let max_pd = pds
            .iter()
            .copied()
            .fold(ExtendedNat::Finite(0), ExtendedNat::max);
        let max_idim = (0..alg.vertex_count())
            .map(|i| inj_dim_simple(&alg, i, CAP).unwrap())
            .fold(ExtendedNat::Finite(0), ExtendedNat::max);
        let gd = global_dim(&alg, CAP);
        // no module may exceed the bound read off the simples
        let modules_ok = (0..5).all(|s| {
            let d = proj_dim(&random_module(&alg, seed * 10 + s, 3), CAP);
            d.is_finite() && d.max(gd) == gd
        });
        ok &= gd == max_pd && gd == max_idim && modules_ok;
        gds.push(gd.finite().unwrap_or(usize::MAX));
    }
    let detail = format!(
        "{RANDOM_ALGEBRAS} algebras, gd values {:?}",
        histogram(&gds)
    );
    report(10, "gd via simples", ok, detail, start);
}

#[test]
fn criterion_11_change_of_rings_inequality() {
    let start = Instant::now();
    let mut verified = 0;
    let mut violated = 0;
    for seed in 0..RANDOM_ALGEBRAS {
        let alg = common::random_acyclic(seed, 30);
        let phi = common::random_quotient(&alg, seed);
        let r = check_theorem_a(&phi, CAP).unwrap();
        match r.verdict {
            TheoremAVerdict::Verified => verified += 1,
            TheoremAVerdict::Violated => violated += 1,
            TheoremAVerdict::VacuouslyConsistent => {}
        }
    }
    let ok = violated == 0 && verified == RANDOM_ALGEBRAS as usize;
    let detail = format!("{verified} verified, {violated} violated");
    report(11, "change-of-rings inequality", ok, detail, start);
}

#[test]
fn criterion_12_cover_preservation() {
    let start = Instant::now();
    let holds_on = |phi: &AlgebraHom<Rational>, seed: u64| -> bool {
        let a = phi.source();
        let simples = (0..a.vertex_count()).map(|i| simple(a, i).unwrap());
        let randoms = (0..MODULES_PER_HOM).map(|s| random_module(a, seed * 100 + s, 3));
        simples
            .chain(randoms)
            .all(|m| cover_preservation_check(phi, &m).unwrap())
    };
    let mut ok = holds_on(&star_10_1().iota, 0);
    let mut homs = 0;
    for seed in 0..RANDOM_ALGEBRAS {
        let alg = common::random_algebra(seed, 30, true);
        let phi = common::random_quotient(&alg, seed);
        ok &= phi.is_radical_preserving() && phi.has_superfluous_kernel() && holds_on(&phi, seed);
        homs += 1;
    }
    // x -> e + x on k[x]/(x^2) is linear but sends the radical outside itself
    let alg = common::build(common::LOOP);
    let img = AlgebraElement::from_sparse(&alg, vec![(0, alg.one()), (1, alg.one())]);
    let bad = AlgebraHom::new_unchecked("f", &alg, &alg, vec![vec![0]], vec![img]).unwrap();
    let top = simple(&alg, 0).unwrap();
    let control = !bad.is_radical_preserving()
        && cover_preservation_check(&bad, &top) == Err(HomError::NotRadicalPreserving)
        && !cover_preservation_probe(&bad, &top).unwrap().holds();
    let detail = format!("inclusion and {homs} quotients hold; control fails: {control}");
    report(12, "cover preservation", ok && control, detail, start);
}

#[test]
fn criterion_13_oracle_agreement() {
    let start = Instant::now();
    let mut ok = true;
    let mut compared = 0;
    for seed in 0..ORACLE_INSTANCES {
        let alg = common::random_algebra(500 + seed, 40, true);
        ok &= naive_dim(alg.spec(), 16).unwrap() == alg.dim();
        let m = random_module(&alg, seed, 2);
        if m.dim() > 12 {
            continue;
        }
        let engine = proj_dim(&m, CAP);
        let oracle = ext_based_pd(&m, CAP, 20_000).unwrap();
        ok &= match (engine, oracle) {
            (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) => a == b,
            (ExtendedNat::Finite(a), ExtendedNat::AtLeast(b)) => a >= b,
            (ExtendedNat::AtLeast(_), ExtendedNat::Finite(_)) => false,
            (ExtendedNat::AtLeast(_), ExtendedNat::AtLeast(_)) => true,
        };
        compared += 1;
    }
    let e1 = common::build(common::E1);
    let e1_pds: Vec<ExtendedNat> = (0..3)
        .map(|i| ext_based_pd(&simple(&e1, i).unwrap(), CAP, 20_000).unwrap())
        .collect();
    let e1_gd = e1_pds
        .iter()
        .copied()
        .fold(ExtendedNat::Finite(0), ExtendedNat::max);
    ok &= naive_dim(e1.spec(), 16).unwrap() == 5
        && e1.dim() == 5
        && e1_gd == ExtendedNat::Finite(2)
        && global_dim(&e1, CAP) == e1_gd;
    let detail = format!("{ORACLE_INSTANCES} dimensions, {compared} pd pairs, E1 dim 5 gd {e1_gd}");
    report(13, "oracle agreement", ok, detail, start);
}

fn histogram(values: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &v in values {
        *h.entry(v).or_default() += 1;
    }
    h
}
