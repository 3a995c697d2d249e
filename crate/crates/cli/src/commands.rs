use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::Path;

use grascluster_core::algebra::rat_int;
use grascluster_core::classify::{
    analyze_finite, case_shape, classify_matrix, correspondence_check, fixture, recognize_dynkin,
    Classification, ClassifyError, Quiver, PROBE_SEED,
};
use grascluster_core::cluster::modp::ProbeMatrices;
use grascluster_core::cluster::{read_cache, write_cache, ClusterError};
use grascluster_core::comb::{
    build_initial_seed, fan_triangulation, numbered_seed, triangulation_seed, zigzag_triangulation,
    CombError,
};
use grascluster_core::verify::{
    name_variables, point_rng, positivity_check, random_schur_instance, toric_roundtrip,
    totally_positive_point, verify_compound_determinants, verify_exploration_exchanges,
    verify_explicit_relations, verify_schur_analogue, ConfigMatrix, Report, VerifyError,
};
use grascluster_core::{explore, Exploration, ExploreOptions, ExtMatrix, Rat, Seed, VarId, VariableRegistry};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::manifest::{FileDigest, RunManifest};
use crate::{ClassifyArgs, ExploreArgs, SeedArgs, Suite, Triangulation, VerifyArgs};

pub const SEED_SCHEMA: &str = "grascluster.seed/1";
pub const EXPLORE_SCHEMA: &str = "grascluster.explore/1";
pub const CLASSIFY_SCHEMA: &str = "grascluster.classify/1";
pub const REPORT_SCHEMA: &str = "grascluster.report/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("bad input: {0}")]
    Input(String),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 3,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn comb_err(e: CombError) -> CliError {
    match e {
        CombError::BadShape { .. } | CombError::BadAmbient(_) | CombError::CapExceeded(..) => {
            CliError::Usage(e.to_string())
        }
        e => CliError::Input(e.to_string()),
    }
}

/// A command's primary output in both formats.
pub struct Outcome {
    pub json: Value,
    pub csv: String,
    pub passed: bool,
}

pub fn shape(k: Option<usize>, n: Option<usize>) -> Result<(usize, usize), CliError> {
    match (k, n) {
        (Some(k), Some(n)) => Ok((k, n)),
        _ => Err(CliError::Usage("both k and n are required".into())),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeedFile {
    pub schema: String,
    pub k: usize,
    pub n: usize,
    pub flavor: String,
    pub rank: usize,
    /// Row labels: mutable first, then frozen.
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<i32>>,
    pub cluster: Vec<String>,
    pub coefficients: Vec<String>,
}

impl SeedFile {
    pub fn from_seed(k: usize, n: usize, flavor: &str, s: &Seed) -> SeedFile {
        let m = &s.matrix;
        let names = |vs: &[VarId]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>();
        SeedFile {
            schema: SEED_SCHEMA.to_string(),
            k,
            n,
            flavor: flavor.to_string(),
            rank: s.rank(),
            labels: names(m.row_labels()),
            matrix: (0..m.nrows()).map(|r| m.row(r)).collect(),
            cluster: names(s.cluster()),
            coefficients: names(s.coefficients()),
        }
    }

    pub fn to_seed(&self) -> Result<Seed, CliError> {
        if self.schema != SEED_SCHEMA {
            return Err(CliError::Input(format!("schema {:?}, want {SEED_SCHEMA}", self.schema)));
        }
        let rows = self
            .labels
            .iter()
            .map(|l| VarId::parse(l, self.n).map_err(|e| CliError::Input(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if self.rank > rows.len()
            || self.matrix.len() != rows.len()
            || self.matrix.iter().any(|r| r.len() != self.rank)
        {
            return Err(CliError::Input("matrix shape does not match labels and rank".into()));
        }
        let m = ExtMatrix::from_rows(rows, self.rank, &self.matrix);
        if !m.is_principal_skew_symmetric() {
            return Err(CliError::Input("principal part is not skew-symmetric".into()));
        }
        Ok(Seed::new(m))
    }
}

fn read_seed_file(path: &Path, manifest: &mut RunManifest) -> Result<SeedFile, CliError> {
    let bytes = std::fs::read(path).map_err(io_err(path))?;
    manifest
        .inputs
        .push(FileDigest::of_bytes(&path.display().to_string(), &bytes));
    serde_json::from_slice(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// The seed given by a file, or the `A_{k,n}` seed.
fn load_seed(
    file: Option<&Path>,
    k: Option<usize>,
    n: Option<usize>,
    manifest: &mut RunManifest,
) -> Result<(usize, usize, Seed, bool), CliError> {
    match file {
        Some(p) => {
            let f = read_seed_file(p, manifest)?;
            let s = f.to_seed()?;
            Ok((f.k, f.n, s, true))
        }
        None => {
            let (k, n) = shape(k, n)?;
            Ok((k, n, build_initial_seed(k, n).map_err(comb_err)?, false))
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let line = |fs: &mut dyn Iterator<Item = &str>| fs.map(csv_field).collect::<Vec<_>>().join(",");
    let mut out = line(&mut header.iter().copied());
    out.push('\n');
    for r in rows {
        out.push_str(&line(&mut r.iter().map(|s| s.as_str())));
        out.push('\n');
    }
    out
}

pub fn cmd_seed(a: &SeedArgs) -> Result<Outcome, CliError> {
    let (k, n) = shape(a.k.or(a.k_flag), a.n.or(a.n_flag))?;
    let (flavor, seed) = match a.triangulation {
        Some(t) => {
            if k != 2 {
                return Err(CliError::Usage("triangulation seeds exist only for k = 2".into()));
            }
            if n < 4 {
                return Err(CliError::Usage("need n >= 4".into()));
            }
            let (name, tri) = match t {
                Triangulation::Fan => ("triangulation:fan", fan_triangulation(n, 1)),
                Triangulation::Zigzag => ("triangulation:zigzag", zigzag_triangulation(2, n)),
            };
            (name, triangulation_seed(&tri).map_err(comb_err)?)
        }
        None => ("akn", build_initial_seed(k, n).map_err(comb_err)?),
    };
    let file = SeedFile::from_seed(k, n, flavor, &seed);
    let mut header = vec!["label".to_string()];
    header.extend(file.cluster.iter().cloned());
    let rows: Vec<Vec<String>> = file
        .labels
        .iter()
        .zip(&file.matrix)
        .map(|(l, r)| std::iter::once(l.clone()).chain(r.iter().map(|x| x.to_string())).collect())
        .collect();
    let header: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    Ok(Outcome {
        csv: csv_rows(&header, &rows),
        json: serde_json::to_value(&file).expect("seed serializes"),
        passed: true,
    })
}

struct Explored {
    k: usize,
    n: usize,
    registry: VariableRegistry,
    exploration: Exploration,
}

fn k_of(registry: &VariableRegistry) -> Option<usize> {
    registry.initial().iter().find_map(|v| v.as_pluecker()).map(|s| s.k())
}

fn run_explore(
    file: Option<&Path>,
    k: Option<usize>,
    n: Option<usize>,
    opts: &ExploreOptions,
    cache: Option<&Path>,
    manifest: &mut RunManifest,
) -> Result<Explored, CliError> {
    if let Some(p) = cache.filter(|p| p.exists()) {
        let f = File::open(p).map_err(io_err(p))?;
        let (cn, registry, exploration) = read_cache(&mut BufReader::new(f))?;
        manifest.inputs.push(FileDigest::of_file(p).map_err(io_err(p))?);
        let ck = k_of(&registry).ok_or_else(|| CliError::Input("cache has no Plücker variables".into()))?;
        if k.is_some_and(|k| k != ck) || n.is_some_and(|n| n != cn) {
            return Err(CliError::Input(format!("cache holds G({ck},{cn})")));
        }
        return Ok(Explored {
            k: ck,
            n: cn,
            registry,
            exploration,
        });
    }
    let (k, n, seed, _) = load_seed(file, k, n, manifest)?;
    if let Some(v) = seed.matrix.row_labels().iter().find(|v| !v.is_pluecker()) {
        return Err(CliError::Input(format!("{v} is not a Plücker label")));
    }
    let probes = ProbeMatrices::new(k, n, PROBE_SEED);
    let mut registry = VariableRegistry::grassmannian(seed.matrix.row_labels(), &probes);
    let exploration = explore(&seed, &mut registry, opts)?;
    if let Some(p) = cache {
        let f = File::create(p).map_err(io_err(p))?;
        write_cache(&mut BufWriter::new(f), n, &registry, &exploration)?;
        manifest.outputs.push(FileDigest::of_file(p).map_err(io_err(p))?);
    }
    Ok(Explored {
        k,
        n,
        registry,
        exploration,
    })
}

fn explore_options(max_seeds: usize, max_vars: usize, exact: bool) -> ExploreOptions {
    ExploreOptions {
        max_seeds,
        max_variables: max_vars,
        exact_every_mutation: exact,
        ..ExploreOptions::default()
    }
}

#[derive(Serialize)]
struct ExploreSummary {
    schema: &'static str,
    k: usize,
    n: usize,
    closed: bool,
    seed_count: usize,
    variable_count: usize,
    plucker_count: usize,
    non_plucker_count: usize,
    regular: bool,
    max_depth: u32,
}

pub fn cmd_explore(a: &ExploreArgs, manifest: &mut RunManifest) -> Result<Outcome, CliError> {
    let opts = explore_options(a.max_seeds, a.max_vars, a.exact);
    let e = run_explore(a.seed.as_deref(), a.k, a.n, &opts, a.cache.as_deref(), manifest)?;
    let vars = e.exploration.graph.cluster_variables();
    let plucker = vars.iter().filter(|v| v.is_pluecker()).count();
    let s = ExploreSummary {
        schema: EXPLORE_SCHEMA,
        k: e.k,
        n: e.n,
        closed: e.exploration.closed,
        seed_count: e.exploration.seed_count(),
        variable_count: vars.len(),
        plucker_count: plucker,
        non_plucker_count: vars.len() - plucker,
        regular: e.exploration.graph.is_regular(),
        max_depth: e.exploration.graph.seeds.iter().map(|r| r.depth).max().unwrap_or(0),
    };
    let csv = csv_rows(
        &["k", "n", "closed", "seed_count", "variable_count", "plucker_count", "non_plucker_count", "regular", "max_depth"],
        &[vec![
            s.k.to_string(),
            s.n.to_string(),
            s.closed.to_string(),
            s.seed_count.to_string(),
            s.variable_count.to_string(),
            s.plucker_count.to_string(),
            s.non_plucker_count.to_string(),
            s.regular.to_string(),
            s.max_depth.to_string(),
        ]],
    );
    Ok(Outcome {
        json: serde_json::to_value(&s).expect("summary serializes"),
        csv,
        passed: true,
    })
}

pub fn cmd_classify(a: &ClassifyArgs, manifest: &mut RunManifest) -> Result<Outcome, CliError> {
    let (k, n, seed, from_file) = load_seed(a.seed.as_deref(), a.k, a.n, manifest)?;
    let known = if from_file { None } else { numbered_seed(k, n).ok() };
    let out = if let Some(ps) = known {
        let m = ps.seed.mutate_matrix_sequence(&ps.sequence)?;
        let spec = recognize_dynkin(&Quiver::from_matrix(&m)).ok_or(ClassifyError::NotDynkin)?;
        json!({
            "schema": CLASSIFY_SCHEMA,
            "k": k, "n": n,
            "finite": true,
            "type": spec.ty.to_string(),
            "path": ps.sequence,
            "certificate": {
                "kind": "dynkin-path",
                "path": ps.sequence,
                "vertices": ps.vertices.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            },
        })
    } else {
        let one_based = |p: &[usize]| p.iter().map(|x| x + 1).collect::<Vec<_>>();
        match classify_matrix(&seed.matrix.principal(), a.depth, a.max_nodes) {
            Classification::Finite { path, spec } => json!({
                "schema": CLASSIFY_SCHEMA,
                "k": k, "n": n,
                "finite": true,
                "type": spec.ty.to_string(),
                "path": one_based(&path),
                "certificate": {"kind": "dynkin-path", "path": one_based(&path)},
            }),
            Classification::Infinite(w) => json!({
                "schema": CLASSIFY_SCHEMA,
                "k": k, "n": n,
                "finite": false,
                "type": null,
                "path": null,
                "certificate": {
                    "kind": "affine-subgraph",
                    "affine_type": w.kind.to_string(),
                    "path": one_based(&w.path),
                    "vertices": one_based(&w.vertices),
                    "induced": w.vertices.iter()
                        .map(|&i| w.vertices.iter().map(|&j| w.matrix[i][j]).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                },
            }),
            Classification::Unknown => json!({
                "schema": CLASSIFY_SCHEMA,
                "k": k, "n": n,
                "finite": null,
                "type": null,
                "path": null,
                "certificate": null,
            }),
        }
    };
    let show = |v: &Value| match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
        v => v.to_string(),
    };
    let csv = csv_rows(
        &["k", "n", "finite", "type", "path"],
        &[vec![
            k.to_string(),
            n.to_string(),
            show(&out["finite"]),
            show(&out["type"]),
            show(&out["path"]),
        ]],
    );
    Ok(Outcome {
        json: out,
        csv,
        passed: true,
    })
}

fn random_point_with_chart(
    registry: &VariableRegistry,
    k: usize,
    n: usize,
    seed: u64,
    trial: u64,
) -> ConfigMatrix {
    let mut rng = point_rng(seed, trial);
    loop {
        let m = ConfigMatrix::random(k, n, &mut rng);
        let ok = registry.initial().iter().all(|v| {
            v.as_pluecker()
                .is_some_and(|s| m.minor(&s).is_ok_and(|x| x != rat_int(0)))
        });
        if ok {
            return m;
        }
    }
}

fn suite_reports(
    a: &VerifyArgs,
    rng_seed: u64,
    manifest: &mut RunManifest,
) -> Result<(Vec<Report>, Value), CliError> {
    match a.suite {
        Suite::Plucker | Suite::Positivity | Suite::Toric => {
            let opts = explore_options(a.max_seeds, a.max_vars, false);
            let e = run_explore(None, a.k, a.n, &opts, a.cache.as_deref(), manifest)?;
            let (k, n) = (e.k, e.n);
            let details = json!({
                "k": k, "n": n,
                "closed": e.exploration.closed,
                "seed_count": e.exploration.seed_count(),
            });
            let reports = match a.suite {
                Suite::Plucker => {
                    let mut functions = HashMap::new();
                    if e.registry.ids().iter().any(|v| !v.is_pluecker()) {
                        let probes = ProbeMatrices::new(k, n, PROBE_SEED);
                        for (v, nm) in name_variables(&e.registry, &probes, k, n, rng_seed)? {
                            functions.insert(v, nm.function);
                        }
                    }
                    vec![verify_exploration_exchanges(&e.exploration, &functions, k, n, a.trials, rng_seed)?]
                }
                Suite::Positivity => {
                    let mut reps = vec![positivity_check(&e.registry, k, n, a.points)?];
                    let bad: Vec<String> = e
                        .registry
                        .ids()
                        .into_iter()
                        .filter(|&v| !e.registry.value(v).is_some_and(|p| p.has_positive_coefficients()))
                        .map(|v| v.to_string())
                        .collect();
                    // numerator positivity is asserted only for k = 2
                    if k == 2 {
                        reps.push(Report {
                            check: "numerator-positivity".into(),
                            params: json!({"k": k, "n": n}),
                            trials: e.registry.len(),
                            failures: bad.len(),
                            witness: bad.first().cloned(),
                        });
                    }
                    return Ok((reps, json!({"k": k, "n": n, "closed": e.exploration.closed, "non_positive_numerators": bad})));
                }
                _ => {
                    if !e.exploration.closed {
                        return Err(CliError::Input("toric round-trip needs a closed exploration".into()));
                    }
                    let params: Vec<Rat> = (1..=n as i64).map(rat_int).collect();
                    let tp = totally_positive_point(k, &params)?;
                    let mut reps = vec![toric_roundtrip(&e.registry, k, n, &tp, true)?];
                    for t in 0..a.trials {
                        let m = random_point_with_chart(&e.registry, k, n, rng_seed, t as u64);
                        reps.push(toric_roundtrip(&e.registry, k, n, &m, false)?);
                    }
                    reps
                }
            };
            Ok((reports, details))
        }
        Suite::Tables => {
            let case = a
                .case
                .as_deref()
                .ok_or_else(|| CliError::Usage("--case d4|e6|e8 is required".into()))?;
            let (k, n) = case_shape(case).ok_or_else(|| CliError::Usage(format!("unknown case {case}")))?;
            let table = fixture(case).expect("shipped case");
            let fc = analyze_finite(k, n, &ExploreOptions::default())?;
            let rep = correspondence_check(&fc, &table);
            let failures = rep.mismatches.len() + usize::from(!rep.bijective);
            let report = Report {
                check: format!("correspondence-{case}"),
                params: json!({"case": case, "k": k, "n": n, "type": fc.spec.ty.to_string()}),
                trials: table.len(),
                failures,
                witness: rep.mismatches.first().cloned(),
            };
            Ok((vec![report], serde_json::to_value(&rep).expect("report serializes")))
        }
        Suite::Schur => {
            let mut reps = Vec::new();
            for c in 0..a.cases {
                let inst = random_schur_instance(rng_seed, c as u64);
                reps.push(verify_schur_analogue(
                    &inst.core,
                    inst.ij,
                    inst.st,
                    inst.vars,
                    a.trials,
                    rng_seed.wrapping_add(c as u64),
                )?);
            }
            Ok((reps, json!({"cases": a.cases})))
        }
        Suite::Determinants => {
            let mut reps = verify_compound_determinants(a.trials, rng_seed);
            reps.extend(verify_explicit_relations(a.trials, rng_seed));
            Ok((reps, Value::Null))
        }
    }
}

pub fn cmd_verify(a: &VerifyArgs, rng_seed: u64, manifest: &mut RunManifest) -> Result<Outcome, CliError> {
    let suite = serde_json::to_value(a.suite).expect("suite name");
    let (reports, details, error) = match suite_reports(a, rng_seed, manifest) {
        Ok((r, d)) => (r, d, None),
        Err(e @ CliError::Usage(_)) => return Err(e),
        Err(e) => (Vec::new(), Value::Null, Some(e.to_string())),
    };
    let passed = error.is_none() && reports.iter().all(Report::passed);
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.check.clone(),
                r.trials.to_string(),
                r.failures.to_string(),
                r.passed().to_string(),
            ]
        })
        .collect();
    Ok(Outcome {
        json: json!({
            "schema": REPORT_SCHEMA,
            "suite": suite,
            "passed": passed,
            "error": error,
            "reports": reports,
            "details": details,
        }),
        csv: csv_rows(&["check", "trials", "failures", "passed"], &rows),
        passed,
    })
}
