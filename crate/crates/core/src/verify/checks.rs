use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::config::{ConfigMatrix, PluckerVector};
use super::special::{special_function, translate, triple, Dihedral, Special, Vec3};
use super::VerifyError;
use crate::algebra::{rat, AlgebraError, LaurentPoly, Rat, VarId};
use crate::cluster::{Exploration, VariableRegistry};
use crate::comb::{all_ksubsets, KSubset};

/// Outcome of a randomized or exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub params: serde_json::Value,
    pub trials: usize,
    pub failures: usize,
    /// CSV of the first failing point, if any.
    pub witness: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Per-trial RNG stream split deterministically from `seed`.
pub fn point_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(trial);
    r
}

/// Value of a polynomial in Plücker ids at a point.
pub fn eval_on_point(p: &LaurentPoly, pv: &PluckerVector) -> Result<Rat, AlgebraError> {
    p.eval_with(|v| v.as_pluecker().and_then(|s| pv.values.get(&s).cloned()))
}

/// `lhs = rhs` as functions on `G(k, n)`, both written in Plücker ids.
#[derive(Clone, Debug)]
pub struct Identity {
    pub name: String,
    pub k: usize,
    pub n: usize,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

fn run_trials(
    trials: usize,
    seed: u64,
    k: usize,
    n: usize,
    holds: impl Fn(&ConfigMatrix) -> bool + Sync,
) -> (usize, Option<String>) {
    let results: Vec<(usize, bool, ConfigMatrix)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let m = ConfigMatrix::random(k, n, &mut point_rng(seed, t as u64));
            let ok = holds(&m);
            (t, ok, m)
        })
        .collect();
    let failures = results.iter().filter(|r| !r.1).count();
    let witness = results.iter().find(|r| !r.1).map(|r| r.2.to_csv());
    (failures, witness)
}

pub fn verify_identity(id: &Identity, trials: usize, seed: u64) -> Report {
    let (failures, witness) = run_trials(trials, seed, id.k, id.n, |m| {
        let pv = m.plucker_vector();
        match (eval_on_point(&id.lhs, &pv), eval_on_point(&id.rhs, &pv)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    });
    Report {
        check: id.name.clone(),
        params: json!({"k": id.k, "n": id.n, "seed": seed}),
        trials,
        failures,
        witness,
    }
}

fn pl(n: usize, bits: u64) -> LaurentPoly {
    LaurentPoly::var(VarId::Pluecker(KSubset::from_bits(n, bits)))
}

/// `Δ^{Iac}Δ^{Ibd} = Δ^{Iab}Δ^{Icd} + Δ^{Iad}Δ^{Ibc}` for the crossing pairs
/// `{i,j}`, `{s,t}` sorted as `a < b < c < d`.
pub fn short_plucker_relation(
    n: usize,
    core: &[usize],
    (i, j): (usize, usize),
    (s, t): (usize, usize),
) -> Result<Identity, VerifyError> {
    let mut four = [i, j, s, t];
    if let Some(&x) = four.iter().chain(core).find(|&&x| x == 0 || x > n) {
        return Err(VerifyError::BadIndex(x));
    }
    let set: BTreeSet<usize> = four.iter().chain(core).copied().collect();
    if set.len() != 4 + core.len() {
        return Err(VerifyError::NotCrossing);
    }
    let (lo, hi) = (i.min(j), i.max(j));
    if (lo < s && s < hi) == (lo < t && t < hi) {
        return Err(VerifyError::NotCrossing);
    }
    four.sort_unstable();
    let [a, b, c, d] = four;
    let cb: u64 = core.iter().map(|&x| 1u64 << (x - 1)).sum();
    let lab = |x: usize, y: usize| pl(n, cb | (1 << (x - 1)) | (1 << (y - 1)));
    Ok(Identity {
        name: "short-plucker".to_string(),
        k: core.len() + 2,
        n,
        lhs: &lab(a, c) * &lab(b, d),
        rhs: &(&lab(a, b) * &lab(c, d)) + &(&lab(a, d) * &lab(b, c)),
    })
}

/// Checks `lhs = rhs` on `trials` random full-rank points.
pub fn verify_exchange_on_points(id: &Identity, trials: usize, seed: u64) -> Report {
    verify_identity(id, trials, seed)
}

fn chart_error(e: AlgebraError) -> VerifyError {
    match e {
        AlgebraError::ZeroToNegativePower(v) => VerifyError::ChartSingular(v),
        AlgebraError::MissingVariable(v) => VerifyError::Missing(v),
        other => VerifyError::Parse(other.to_string()),
    }
}

/// Value at `point` of a variable's Laurent expansion in the registry's
/// initial (Plücker) cluster.
pub fn evaluate_variable(
    v: VarId,
    registry: &VariableRegistry,
    point: &ConfigMatrix,
) -> Result<Rat, VerifyError> {
    let p = registry.value(v).ok_or(VerifyError::Missing(v))?;
    p.eval_with(|u| u.as_pluecker().and_then(|s| point.minor(&s).ok()))
        .map_err(chart_error)
}

/// Plücker coordinates from chart values, via the Laurent expansions of the
/// Plücker ids stored in `registry`.
pub fn reconstruct_plucker(
    registry: &VariableRegistry,
    k: usize,
    n: usize,
    chart: &HashMap<VarId, Rat>,
) -> Result<PluckerVector, VerifyError> {
    let mut values = std::collections::BTreeMap::new();
    for s in all_ksubsets(k, n) {
        let v = VarId::Pluecker(s);
        let p = registry.value(v).ok_or(VerifyError::Missing(v))?;
        values.insert(s, p.eval(chart).map_err(chart_error)?);
    }
    Ok(PluckerVector { values })
}

/// Point → chart coordinates (the initial cluster and coefficients) → every
/// Plücker coordinate, compared with the minors of the point. On a totally
/// positive point the chart coordinates must also be positive.
pub fn toric_roundtrip(
    registry: &VariableRegistry,
    k: usize,
    n: usize,
    point: &ConfigMatrix,
    expect_positive: bool,
) -> Result<Report, VerifyError> {
    let mut chart = HashMap::new();
    for v in registry.initial() {
        let s = v.as_pluecker().ok_or(VerifyError::Missing(v))?;
        let x = point.minor(&s)?;
        if x.is_zero() {
            return Err(VerifyError::ChartSingular(v));
        }
        chart.insert(v, x);
    }
    let rec = reconstruct_plucker(registry, k, n, &chart)?;
    let direct = point.plucker_vector();
    let mut failures = rec
        .values
        .iter()
        .filter(|(s, x)| direct.values.get(s) != Some(x))
        .count();
    if expect_positive {
        failures += chart.values().filter(|x| !x.is_positive()).count();
    }
    Ok(Report {
        check: "toric-roundtrip".to_string(),
        params: json!({"k": k, "n": n, "chart_size": chart.len()}),
        trials: 1,
        failures,
        witness: (failures > 0).then(|| point.to_csv()),
    })
}

/// Every registered variable is positive on `points` totally positive points.
pub fn positivity_check(
    registry: &VariableRegistry,
    k: usize,
    n: usize,
    points: usize,
) -> Result<Report, VerifyError> {
    let mut failures = 0;
    let mut witness = None;
    for t in 0..points {
        let params: Vec<Rat> = (1..=n as i64)
            .map(|j| rat(j * (j + t as i64), 1 + t as i64))
            .collect();
        let m = super::config::totally_positive_point(k, &params)?;
        let bad = registry
            .ids()
            .par_iter()
            .map(|&v| evaluate_variable(v, registry, &m).map(|x| !x.is_positive()))
            .collect::<Result<Vec<bool>, _>>()?
            .into_iter()
            .filter(|&b| b)
            .count();
        if bad > 0 && witness.is_none() {
            witness = Some(m.to_csv());
        }
        failures += bad;
    }
    Ok(Report {
        check: "positivity".to_string(),
        params: json!({"k": k, "n": n, "variables": registry.len()}),
        trials: points,
        failures,
        witness,
    })
}

/// Every distinct exchange relation of an exploration, with each variable
/// replaced by a function in Plücker ids (`functions`; Plücker ids default to
/// themselves), checked on random points.
pub fn verify_exploration_exchanges(
    exp: &Exploration,
    functions: &HashMap<VarId, LaurentPoly>,
    k: usize,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<Report, VerifyError> {
    let rels = exp.graph.exchange_relations();
    let mut vars: BTreeSet<VarId> = BTreeSet::new();
    for (z, w, r) in &rels {
        vars.insert(*z);
        vars.insert(*w);
        vars.extend(r.plus.iter().chain(&r.minus).map(|x| x.0));
    }
    let fns: Vec<(VarId, LaurentPoly)> = vars
        .into_iter()
        .map(|v| match functions.get(&v) {
            Some(p) => Ok((v, p.clone())),
            None if v.is_pluecker() => Ok((v, LaurentPoly::var(v))),
            None => Err(VerifyError::Unnamed(v)),
        })
        .collect::<Result<_, _>>()?;
    let mono = |vals: &HashMap<VarId, Rat>, m: &[(VarId, u32)]| -> Rat {
        m.iter()
            .map(|(v, e)| num_traits::pow(vals[v].clone(), *e as usize))
            .fold(Rat::one(), |a, b| a * b)
    };
    let (failures, witness) = run_trials(trials, seed, k, n, |m| {
        let pv = m.plucker_vector();
        let vals: HashMap<VarId, Rat> = fns
            .iter()
            .map(|(v, p)| (*v, eval_on_point(p, &pv).expect("polynomial")))
            .collect();
        rels.iter().all(|(z, w, r)| {
            &vals[z] * &vals[w] == mono(&vals, &r.plus) + mono(&vals, &r.minus)
        })
    });
    Ok(Report {
        check: "exchange-relations".to_string(),
        params: json!({"k": k, "n": n, "relations": rels.len(), "seed": seed}),
        trials,
        failures,
        witness,
    })
}

fn cols(m: &ConfigMatrix) -> Vec<Vec3> {
    (1..=m.n).map(|j| Vec3::from_slice(&m.column(j))).collect()
}

fn special_at(f: Special, image: &[usize], m: &ConfigMatrix) -> Rat {
    let p = special_function(f, image, m.n).expect("arity");
    eval_on_point(&p, &m.plucker_vector()).expect("polynomial")
}

fn compound_report(
    name: &str,
    n: usize,
    trials: usize,
    seed: u64,
    f: impl Fn(&ConfigMatrix) -> bool + Sync,
) -> Report {
    let (failures, witness) = run_trials(trials, seed, 3, n, f);
    Report {
        check: name.to_string(),
        params: json!({"k": 3, "n": n, "seed": seed}),
        trials,
        failures,
        witness,
    }
}

const ID6: [usize; 6] = [1, 2, 3, 4, 5, 6];
const ID8: [usize; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

/// Three-line point of the plane: columns `v1, v2` on one line through a
/// common point `c`, `v3, v4` on a second and `v5, v6` on a third.
pub fn concurrent_lines_point(rng: &mut impl Rng) -> ConfigMatrix {
    let mut r = || rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
    loop {
        let c: Vec<Rat> = (0..3).map(|_| r()).collect();
        let mut columns = Vec::new();
        for _ in 0..3 {
            let p: Vec<Rat> = (0..3).map(|_| r()).collect();
            let (a, b) = (r(), r());
            let q: Vec<Rat> = (0..3).map(|i| &a * &c[i] + &b * &p[i]).collect();
            columns.push(p);
            columns.push(q);
        }
        let m = ConfigMatrix::from_columns(&columns);
        // pairwise distinct points of the plane
        let v = cols(&m);
        let distinct = (0..6).all(|i| (i + 1..6).all(|j| !v[i].cross(&v[j]).is_zero()));
        if distinct && !c.iter().all(|x| x.is_zero()) {
            return m;
        }
    }
}

/// `Y = det(v6×v1, v2×v3, v4×v5)`, `X = det(v1×v2, v3×v4, v5×v6)`,
/// `A = det((v1×v2)×(v3×v4), (v1×v8)×(v6×v7), v5)` (and the same with the
/// determinant negated, which is the form that holds for the explicit `A`), plus the vanishing of
/// `X` on concurrent-line configurations and of `A` at `v5 = (v1×v2)×(v3×v4)`.
pub fn verify_compound_determinants(trials: usize, seed: u64) -> Vec<Report> {
    let mut out = vec![
        compound_report("compound-X", 6, trials, seed, |m| {
            let v = cols(m);
            let d = triple(&v[0].cross(&v[1]), &v[2].cross(&v[3]), &v[4].cross(&v[5]));
            d == special_at(Special::X, &ID6, m)
        }),
        compound_report("compound-Y", 6, trials, seed, |m| {
            let v = cols(m);
            let d = triple(&v[5].cross(&v[0]), &v[1].cross(&v[2]), &v[3].cross(&v[4]));
            d == special_at(Special::Y, &ID6, m)
        }),
        compound_report("compound-A", 8, trials, seed, |m| {
            let v = cols(m);
            let p = v[0].cross(&v[1]).cross(&v[2].cross(&v[3]));
            let q = v[0].cross(&v[7]).cross(&v[5].cross(&v[6]));
            triple(&p, &q, &v[4]) == special_at(Special::A, &ID8, m)
        }),
        compound_report("compound-A-negated", 8, trials, seed, |m| {
            let v = cols(m);
            let p = v[0].cross(&v[1]).cross(&v[2].cross(&v[3]));
            let q = v[0].cross(&v[7]).cross(&v[5].cross(&v[6]));
            -triple(&p, &q, &v[4]) == special_at(Special::A, &ID8, m)
        }),
    ];
    let mut failures = 0;
    let mut witness = None;
    for t in 0..trials {
        let m = concurrent_lines_point(&mut point_rng(seed, t as u64));
        if !special_at(Special::X, &ID6, &m).is_zero() {
            failures += 1;
            witness.get_or_insert_with(|| m.to_csv());
        }
    }
    out.push(Report {
        check: "concurrent-lines-X".to_string(),
        params: json!({"k": 3, "n": 6, "seed": seed}),
        trials,
        failures,
        witness,
    });
    out.push(compound_report("A-vanishes-at-intersection", 8, trials, seed, |m| {
        let v = cols(m);
        let p = v[0].cross(&v[1]).cross(&v[2].cross(&v[3]));
        let mut columns: Vec<Vec<Rat>> = v.iter().map(|c| c.0.to_vec()).collect();
        columns[4] = p.0.to_vec();
        special_at(Special::A, &ID8, &ConfigMatrix::from_columns(&columns)).is_zero()
    }));
    out
}

fn d(n: usize, m: &[usize]) -> LaurentPoly {
    LaurentPoly::var(VarId::Pluecker(KSubset::new(n, m).expect("valid label")))
}

fn sp(f: Special, image: &[usize], n: usize) -> LaurentPoly {
    special_function(f, image, n).expect("arity")
}

fn prod(fs: &[LaurentPoly]) -> LaurentPoly {
    fs.iter().fold(LaurentPoly::one(), |a, b| &a * b)
}

/// The stated exchange relations for `Y`, `A`, `B`, `B·B^σ`, and the
/// alternative formula for `B`.
pub fn explicit_relations() -> Vec<Identity> {
    let sigma = Dihedral {
        reflect: true,
        rot: 0,
    };
    let b = sp(Special::B, &ID8, 8);
    let a = sp(Special::A, &ID8, 8);
    vec![
        Identity {
            name: "D346*Y".to_string(),
            k: 3,
            n: 6,
            lhs: &d(6, &[3, 4, 6]) * &sp(Special::Y, &ID6, 6),
            rhs: &prod(&[d(6, &[1, 4, 6]), d(6, &[2, 3, 6]), d(6, &[3, 4, 5])])
                + &prod(&[d(6, &[1, 3, 6]), d(6, &[2, 3, 4]), d(6, &[4, 5, 6])]),
        },
        Identity {
            name: "D578*A".to_string(),
            k: 3,
            n: 8,
            lhs: &d(8, &[5, 7, 8]) * &a,
            rhs: &prod(&[d(8, &[1, 7, 8]), d(8, &[5, 6, 7]), sp(Special::X, &[1, 2, 3, 4, 5, 8], 8)])
                + &prod(&[d(8, &[1, 5, 8]), d(8, &[6, 7, 8]), sp(Special::X, &[1, 2, 3, 4, 5, 7], 8)]),
        },
        Identity {
            name: "D158*B".to_string(),
            k: 3,
            n: 8,
            lhs: &d(8, &[1, 5, 8]) * &b,
            rhs: &prod(&[d(8, &[1, 2, 8]), d(8, &[5, 6, 7]), sp(Special::X, &[1, 2, 3, 4, 5, 8], 8)])
                + &(&d(8, &[2, 5, 8]) * &a),
        },
        Identity {
            name: "B-alternative".to_string(),
            k: 3,
            n: 8,
            lhs: b.clone(),
            rhs: &prod(&[d(8, &[2, 5, 8]), d(8, &[1, 3, 4]), d(8, &[2, 6, 7])])
                - &(&d(8, &[2, 3, 4])
                    * &(&(&d(8, &[1, 5, 8]) * &d(8, &[2, 6, 7]))
                        + &(&d(8, &[6, 7, 8]) * &d(8, &[1, 2, 5])))),
        },
        Identity {
            name: "B*Bsigma".to_string(),
            k: 3,
            n: 8,
            lhs: &b * &translate(Special::B, &sigma.image(8), 8).expect("arity"),
            rhs: &prod(&[d(8, &[2, 5, 8]), sp(Special::Y, &[2, 3, 4, 6, 7, 8], 8), a.clone()])
                + &prod(&[
                    d(8, &[1, 2, 8]),
                    d(8, &[1, 2, 8]),
                    d(8, &[5, 6, 7]),
                    d(8, &[6, 7, 8]),
                    d(8, &[2, 3, 4]),
                    d(8, &[3, 4, 5]),
                ]),
        },
    ]
}

pub fn verify_explicit_relations(trials: usize, seed: u64) -> Vec<Report> {
    explicit_relations()
        .iter()
        .map(|id| verify_identity(id, trials, seed))
        .collect()
}
