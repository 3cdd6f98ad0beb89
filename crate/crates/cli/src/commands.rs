use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use quiverdim::algebra::{BoundQuiverAlgebra, DEFAULT_DEGREE_CAP};
use quiverdim::homalg::{
    self, build_hom, check_theorem_a, cover_preservation_check, parse_hom, serialize_hom, HomError,
};
use quiverdim::oracle::{ext_based_pd, naive_dim};
use quiverdim::quiver::{parse_algebra, AlgebraSpec};
use quiverdim::repmod::{
    proj_dim, random_module, resolution_profile, simple, simple_proj_dims, ExtendedNat,
};
use quiverdim::uniformize::{
    self, fpd_zero_harness, quasi_uniform_report, uniformize as uniformize_alg,
    verify_uniformization,
};
use quiverdim::{Field, Fp, Rational, Scalar};
use serde_json::{json, Map, Value};

use crate::render::markdown;
use crate::{CliError, Config, Format};

/// Random modules resolved by the fpd-zero harness in `analyze`.
const HARNESS_TRIALS: usize = 50;
/// Random modules compared by `oracle-compare`.
const ORACLE_MODULES: u64 = 5;
/// Size budget of the oracle's free resolutions.
const ORACLE_BUDGET: usize = 20_000;
/// Resolution terms with more summands than this are reported by counts only.
const EXPAND_LIMIT: u64 = 64;

type Alg<S> = Arc<BoundQuiverAlgebra<S>>;

/// Runs `$body` with `$alg` built over the field of `$spec`.
macro_rules! with_algebra {
    ($spec:expr, |$alg:ident| $body:expr) => {
        match $spec.field {
            Field::Rational => {
                let $alg = build::<Rational>(&$spec)?;
                $body
            }
            Field::Prime(_) => {
                let $alg = build::<Fp>(&$spec)?;
                $body
            }
        }
    };
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Build(format!("{}: {e}", path.display())))
}

fn load_spec(cfg: &Config, path: &Path) -> Result<AlgebraSpec, CliError> {
    let mut spec = parse_algebra(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}:{e}", path.display())))?;
    if let Some(f) = cfg.field {
        spec.field = f;
    }
    Ok(spec)
}

fn build<S: Scalar>(spec: &AlgebraSpec) -> Result<Alg<S>, CliError> {
    BoundQuiverAlgebra::build(spec, DEFAULT_DEGREE_CAP)
        .map_err(|e| CliError::Build(format!("{}: {e}", spec.name)))
}

fn cap(cfg: &Config) -> usize {
    cfg.cap as usize
}

fn skeleton(cfg: &Config, command: &str, field: Field) -> Map<String, Value> {
    let mut r = Map::new();
    r.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    r.insert(
        "run".into(),
        json!({ "command": command, "cap": cfg.cap, "seed": cfg.seed, "field": field.to_string() }),
    );
    for key in ["algebra", "loewy", "quasi_uniform", "bounds"] {
        r.insert(key.into(), Value::Null);
    }
    r.insert("resolutions".into(), json!([]));
    r.insert("checks".into(), json!({}));
    r
}

fn emit(cfg: &Config, report: Map<String, Value>, to_stdout: bool) -> Result<(), CliError> {
    let text = match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Value::Object(report)).expect("json");
            s.push('\n');
            s
        }
        Format::Md => markdown(&report),
    };
    match &cfg.output {
        Some(path) if !to_stdout => write(path, &text),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn summary<S: Scalar>(alg: &Alg<S>) -> Value {
    let mut v = to_value(&alg.summary());
    let q = alg.quiver();
    v["vertex_names"] = json!(q.vertices());
    v["strongly_connected"] = json!(q.is_strongly_connected());
    v
}

fn loewy<S: Scalar>(alg: &Alg<S>) -> Value {
    let q = alg.quiver();
    let p = alg.loewy_profile();
    json!({
        "loewy_length": p.loewy_length,
        "per_vertex": (0..q.vertex_count())
            .map(|v| json!({ "vertex": q.vertex_name(v), "loewy_length": p.per_vertex[v] }))
            .collect::<Vec<_>>(),
        "non_maximal": p.non_maximal.iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>(),
        "uniform": p.is_uniform(),
        "loewy_length_above_3": p.loewy_length > 3,
    })
}

pub fn analyze(cfg: &Config, file: &Path) -> Result<(), CliError> {
    let spec = load_spec(cfg, file)?;
    let mut r = skeleton(cfg, "analyze", spec.field);
    with_algebra!(spec, |alg| analyze_into(cfg, &alg, &mut r))?;
    emit(cfg, r, false)
}

fn analyze_into<S: Scalar>(
    cfg: &Config,
    alg: &Alg<S>,
    r: &mut Map<String, Value>,
) -> Result<(), CliError> {
    let q = alg.quiver();
    let rep = quasi_uniform_report(alg, cap(cfg)).map_err(|e| CliError::Build(e.to_string()))?;
    let mut qu = to_value(&rep);
    qu["vertices"] = (0..q.vertex_count())
        .map(|v| {
            json!({
                "vertex": q.vertex_name(v),
                "loewy_length": rep.profile.per_vertex[v],
                "idim": rep.idims[v],
            })
        })
        .collect();
    let lower = if rep.fpd_positive { 1 } else { 0 };
    let bounds = json!({
        "fpd_lower_bound": lower,
        "fpd_upper_bound": rep.fpd_upper_bound,
        "fpd_positive": rep.fpd_positive,
        "iota_pd": rep.iota_pd,
        "bound_matches_iota": rep.bound_matches_iota,
        "loewy_length_above_3": rep.profile.loewy_length > 3,
        "strongly_connected": q.is_strongly_connected(),
    });
    let left = simple_proj_dims(alg, cap(cfg));
    let mut resolutions = Vec::new();
    for v in 0..q.vertex_count() {
        resolutions.push(
            json!({ "module": format!("S({})", q.vertex_name(v)), "side": "left", "pd": left[v] }),
        );
        resolutions.push(json!({ "module": format!("S({})", q.vertex_name(v)), "side": "right", "pd": rep.idims[v] }));
    }
    let res = uniformize_alg(alg).map_err(|e| CliError::Build(e.to_string()))?;
    let harness = fpd_zero_harness(&res.star, HARNESS_TRIALS, cap(cfg), cfg.seed)
        .map_err(|e| CliError::Build(e.to_string()))?;
    r["algebra"] = summary(alg);
    r["loewy"] = loewy(alg);
    r["quasi_uniform"] = qu;
    r["bounds"] = bounds;
    r["resolutions"] = Value::Array(resolutions);
    r["checks"] = json!({
        "uniformization": verify_uniformization(&res),
        "uniformized_fpd_zero": harness,
    });
    Ok(())
}

pub fn resolve(cfg: &Config, file: &Path, vertex: &str, op: bool) -> Result<(), CliError> {
    let spec = load_spec(cfg, file)?;
    let v = spec
        .quiver
        .vertex(vertex)
        .map_err(|e| CliError::Input(format!("{}: {e}", file.display())))?;
    let mut r = skeleton(cfg, "resolve", spec.field);
    with_algebra!(spec, |alg| {
        let side_alg = if op { alg.opposite() } else { alg.clone() };
        let m = simple(&side_alg, v).map_err(|e| CliError::Build(e.to_string()))?;
        let profile = resolution_profile(&m, cap(cfg));
        let q = alg.quiver();
        let steps: Vec<Value> = profile
            .steps
            .iter()
            .enumerate()
            .map(|(k, counts)| {
                let total: u64 = counts.iter().fold(0u64, |a, &c| a.saturating_add(c));
                let mut by_vertex = Map::new();
                let mut expanded = Vec::new();
                for (w, &c) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
                    by_vertex.insert(q.vertex_name(w).into(), json!(c));
                    if total <= EXPAND_LIMIT {
                        expanded.extend((0..c).map(|_| q.vertex_name(w).to_string()));
                    }
                }
                let shown = if total <= EXPAND_LIMIT {
                    json!(expanded)
                } else {
                    Value::Null
                };
                json!({ "k": k, "projectives": shown, "counts": by_vertex })
            })
            .collect();
        r["algebra"] = summary(&alg);
        r["resolutions"] = json!([{
            "module": format!("S({vertex})"),
            "side": if op { "right" } else { "left" },
            "algebra": side_alg.name(),
            "pd": profile.dimension(),
            "status": profile.status,
            "summand_classes": profile.summand_classes,
            "steps": steps,
        }]);
    });
    emit(cfg, r, false)
}

fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}{suffix}"))
}

pub fn uniformize(cfg: &Config, file: &Path) -> Result<(), CliError> {
    let spec = load_spec(cfg, file)?;
    let mut r = skeleton(cfg, "uniformize", spec.field);
    with_algebra!(spec, |alg| {
        let res = uniformize_alg(&alg).map_err(|e| CliError::Build(e.to_string()))?;
        let out = cfg
            .output
            .clone()
            .unwrap_or_else(|| file.with_file_name(format!("{}.bqa", res.star.name())));
        let iota_path = sibling(&out, "_iota.bqhom");
        let pi_path = sibling(&out, "_pi.bqhom");
        write(&out, &res.star.spec().serialize())?;
        write(&iota_path, &serialize_hom(&res.iota))?;
        write(&pi_path, &serialize_hom(&res.pi))?;
        let star_q = res.star.quiver();
        let mut algebra = summary(&res.star);
        algebra["added_loops"] = res
            .loops
            .iter()
            .map(
                |&(v, a)| json!({ "vertex": star_q.vertex_name(v), "arrow": star_q.arrow_name(a) }),
            )
            .collect();
        algebra["added_relations"] = res
            .t_u
            .iter()
            .map(|z| json!(star_q.lincomb_string(z)))
            .collect();
        r["run"]["outputs"] = json!([out, iota_path, pi_path]);
        r["algebra"] = algebra;
        r["loewy"] = loewy(&res.star);
        r["checks"] = json!({
            "uniformization": verify_uniformization(&res),
            "iota": homalg::analyze(&res.iota, cap(cfg)),
            "pi": homalg::analyze(&res.pi, cap(cfg)),
        });
    });
    emit(cfg, r, true)
}

pub fn family(cfg: &Config, n: usize, m: usize) -> Result<(), CliError> {
    let mut spec = uniformize::family(n, m).map_err(|e| CliError::Input(e.to_string()))?;
    if let Some(f) = cfg.field {
        spec.field = f;
    }
    let text = spec.serialize();
    let Some(out) = &cfg.output else {
        print!("{text}");
        return Ok(());
    };
    write(out, &text)?;
    let mut r = skeleton(cfg, "family", spec.field);
    r["run"]["outputs"] = json!([out]);
    with_algebra!(spec, |alg| {
        r["algebra"] = summary(&alg);
        r["loewy"] = loewy(&alg);
    });
    emit(cfg, r, true)
}

/// The `.bqa` next to `hom_file` whose header names `name`.
fn find_algebra(hom_file: &Path, name: &str) -> Result<PathBuf, CliError> {
    let dir = match hom_file.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut entries: Vec<PathBuf> = fs::read_dir(&dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "bqa"))
        .collect();
    entries.sort();
    entries
        .into_iter()
        .find(|p| {
            fs::read_to_string(p)
                .ok()
                .and_then(|t| parse_algebra(&t).ok())
                .is_some_and(|s| s.name == name)
        })
        .ok_or_else(|| {
            CliError::Input(format!("no .bqa for algebra `{name}` in {}", dir.display()))
        })
}

fn hom_error(file: &Path, e: HomError) -> CliError {
    match e {
        HomError::Parse(p) => CliError::Input(format!("{}:{p}", file.display())),
        other => CliError::Build(format!("{}: {other}", file.display())),
    }
}

pub fn check_hom(
    cfg: &Config,
    file: &Path,
    source: Option<&Path>,
    target: Option<&Path>,
) -> Result<(), CliError> {
    let hom = parse_hom(&read(file)?).map_err(|e| hom_error(file, e.into()))?;
    let source = match source {
        Some(p) => p.to_path_buf(),
        None => find_algebra(file, &hom.source)?,
    };
    let target = match target {
        Some(p) => p.to_path_buf(),
        None => find_algebra(file, &hom.target)?,
    };
    let a_spec = load_spec(cfg, &source)?;
    let b_spec = load_spec(cfg, &target)?;
    if a_spec.field != b_spec.field {
        return Err(CliError::Build(format!(
            "{} is over {} but {} is over {}",
            source.display(),
            a_spec.field,
            target.display(),
            b_spec.field
        )));
    }
    let mut r = skeleton(cfg, "check-hom", a_spec.field);
    with_algebra!(a_spec, |a| {
        let b = if b_spec == a_spec {
            a.clone()
        } else {
            build(&b_spec)?
        };
        let phi = build_hom(&hom, &a, &b).map_err(|e| hom_error(file, e))?;
        let analysis = homalg::analyze(&phi, cap(cfg));
        let q = a.quiver();
        let cover = if analysis.radical_preserving {
            let mut per = Map::new();
            for v in 0..q.vertex_count() {
                let s = simple(&a, v).map_err(|e| CliError::Build(e.to_string()))?;
                let ok = cover_preservation_check(&phi, &s).map_err(|e| hom_error(file, e))?;
                per.insert(format!("S({})", q.vertex_name(v)), json!(ok));
            }
            Value::Object(per)
        } else {
            Value::Null
        };
        let theorem = if analysis.radical_preserving && analysis.superfluous_kernel {
            to_value(&check_theorem_a(&phi, cap(cfg)).map_err(|e| hom_error(file, e))?)
        } else {
            Value::Null
        };
        r["algebra"] = json!({ "source": summary(&a), "target": summary(&b) });
        r["bounds"] = json!({ "pd_right_target": analysis.pd_right_target });
        r["checks"] = json!({
            "hom": phi.name(),
            "radical_preserving": analysis.radical_preserving,
            "kernel_dim": analysis.kernel_dim,
            "superfluous_kernel": analysis.superfluous_kernel,
            "cover_preservation": cover,
            "change_of_rings": theorem,
        });
    });
    emit(cfg, r, false)
}

fn consistent(engine: ExtendedNat, oracle: ExtendedNat) -> bool {
    match (engine, oracle) {
        (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) => a == b,
        (ExtendedNat::Finite(a), ExtendedNat::AtLeast(b)) => a >= b,
        (ExtendedNat::AtLeast(_), ExtendedNat::Finite(_)) => false,
        (ExtendedNat::AtLeast(_), ExtendedNat::AtLeast(_)) => true,
    }
}

pub fn oracle_compare(cfg: &Config, file: &Path) -> Result<(), CliError> {
    let spec = load_spec(cfg, file)?;
    let mut r = skeleton(cfg, "oracle-compare", spec.field);
    let oracle_dim =
        naive_dim(&spec, DEFAULT_DEGREE_CAP).map_err(|e| CliError::Build(e.to_string()))?;
    let mut rows = Vec::new();
    with_algebra!(spec, |alg| {
        rows.push(json!({
            "quantity": "dimension",
            "engine": alg.dim(),
            "oracle": oracle_dim,
            "agree": alg.dim() == oracle_dim,
        }));
        let q = alg.quiver();
        let mut modules: Vec<(String, _)> = (0..q.vertex_count())
            .map(|v| {
                (
                    format!("pd S({})", q.vertex_name(v)),
                    simple(&alg, v).unwrap(),
                )
            })
            .collect();
        modules.extend((0..ORACLE_MODULES).map(|t| {
            let s = cfg.seed.wrapping_add(t);
            (format!("pd random module {s}"), random_module(&alg, s, 2))
        }));
        for (name, m) in modules {
            let engine = proj_dim(&m, cap(cfg));
            let oracle = match ext_based_pd(&m, cap(cfg), ORACLE_BUDGET) {
                Ok(d) => d,
                // too large to say anything; the row carries no information
                Err(_) => continue,
            };
            rows.push(json!({
                "quantity": name,
                "engine": engine,
                "oracle": oracle,
                "agree": consistent(engine, oracle),
            }));
        }
        r["algebra"] = summary(&alg);
    });
    let all = rows.iter().all(|row| row["agree"] == json!(true));
    r["checks"] = json!({ "oracle": rows, "all_agree": all });
    emit(cfg, r, false)?;
    if all {
        Ok(())
    } else {
        Err(CliError::Disagreement("engine and oracle disagree".into()))
    }
}
