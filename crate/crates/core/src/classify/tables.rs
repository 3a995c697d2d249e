use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::quiver::{recognize_dynkin, CartanSpec, Quiver};
use super::roots::{almost_positive_roots, RootVec};
use super::ClassifyError;
use crate::algebra::VarId;
use crate::cluster::modp::ProbeMatrices;
use crate::cluster::{explore, Exploration, ExploreOptions, Seed, VariableRegistry};
use crate::comb::{build_initial_seed, numbered_seed, NumberedSeed};
use crate::verify::{name_variables, toral_weight, translate, Dihedral, Naming, Special};

/// Fixed seed for probe matrices.
pub const PROBE_SEED: u64 = 0x6772_6173;

/// One table row: root coefficients and the variable name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub root: RootVec,
    pub name: String,
}

pub fn parse_table(text: &str) -> Result<Vec<TableRow>, ClassifyError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (coef, name) = l
                .split_once('|')
                .ok_or_else(|| ClassifyError::Fixture(l.to_string()))?;
            let root = coef
                .split_whitespace()
                .map(|c| c.parse::<i32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| ClassifyError::Fixture(l.to_string()))?;
            Ok(TableRow {
                root,
                name: name.trim().to_string(),
            })
        })
        .collect()
}

/// Shipped tables: `"d4"`, `"e6"`, `"e8"`.
pub fn fixture(case: &str) -> Option<Vec<TableRow>> {
    let text = match case {
        "d4" => include_str!("fixtures/d4.txt"),
        "e6" => include_str!("fixtures/e6.txt"),
        "e8" => include_str!("fixtures/e8.txt"),
        _ => return None,
    };
    Some(parse_table(text).expect("shipped fixtures parse"))
}

/// `(k, n)` of a table case.
pub fn case_shape(case: &str) -> Option<(usize, usize)> {
    match case {
        "d4" => Some((3, 6)),
        "e6" => Some((3, 7)),
        "e8" => Some((3, 8)),
        _ => None,
    }
}

/// Toral weight of a registered variable from its Laurent expansion in Plücker ids.
pub fn toral_weight_of(
    v: VarId,
    registry: &VariableRegistry,
    n: usize,
) -> Result<Vec<i32>, ClassifyError> {
    let p = registry.value(v).ok_or(ClassifyError::NotHomogeneous(v))?;
    toral_weight(p, n).ok_or(ClassifyError::NotHomogeneous(v))
}

/// Denominator vector of every cluster variable in the cluster of `dynkin`.
///
/// Re-explores from `dynkin` with its cluster and coefficients as
/// indeterminates; fingerprints and ids are carried over from `registry`.
pub fn denominator_vectors(
    dynkin: &Seed,
    registry: &VariableRegistry,
    opts: &ExploreOptions,
) -> Result<(BTreeMap<VarId, RootVec>, VariableRegistry), ClassifyError> {
    let init = dynkin
        .matrix
        .row_labels()
        .iter()
        .map(|&v| {
            registry
                .fingerprint(v)
                .map(|fp| (v, fp))
                .ok_or(ClassifyError::Cluster(crate::cluster::ClusterError::UnknownVariable(v)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut local = VariableRegistry::new(init);
    local.set_catalog(registry.fingerprint_map());
    let exp = explore(dynkin, &mut local, opts)?;
    let cluster = dynkin.cluster().to_vec();
    let out = exp
        .graph
        .cluster_variables()
        .into_iter()
        .map(|v| (v, local.value(v).unwrap().denominator_vector(&cluster)))
        .collect();
    Ok((out, local))
}

/// A closed exploration of a finite-type Grassmannian with its Dynkin seed,
/// denominator vectors and variable names.
#[derive(Clone, Debug)]
pub struct FiniteCase {
    pub k: usize,
    pub n: usize,
    pub probes: ProbeMatrices,
    pub registry: VariableRegistry,
    pub exploration: Exploration,
    pub numbered: NumberedSeed,
    pub dynkin: Seed,
    pub spec: CartanSpec,
    pub denominators: BTreeMap<VarId, RootVec>,
    pub names: BTreeMap<VarId, Naming>,
}

pub fn analyze_finite(k: usize, n: usize, opts: &ExploreOptions) -> Result<FiniteCase, ClassifyError> {
    let s0 = build_initial_seed(k, n)?;
    let probes = ProbeMatrices::new(k, n, PROBE_SEED);
    let mut registry = VariableRegistry::grassmannian(s0.matrix.row_labels(), &probes);
    let exploration = explore(&s0, &mut registry, opts)?;
    let numbered = numbered_seed(k, n)?;
    let dynkin = numbered.seed.run_mutation_sequence(&numbered.sequence, &mut registry)?;
    let spec = recognize_dynkin(&Quiver::from_seed(&dynkin)).ok_or(ClassifyError::NotDynkin)?;
    let (denominators, _) = denominator_vectors(&dynkin, &registry, opts)?;
    let names = name_variables(&registry, &probes, k, n, PROBE_SEED)?;
    Ok(FiniteCase {
        k,
        n,
        probes,
        registry,
        exploration,
        numbered,
        dynkin,
        spec,
        denominators,
        names,
    })
}

/// `"A^sr5"` → (`A`, σρ⁵).
pub fn parse_translate_name(name: &str) -> Option<(Special, Dihedral)> {
    let (head, sup) = match name.split_once('^') {
        Some((h, s)) => (h, s),
        None => (name, ""),
    };
    let f = match head {
        "A" => Special::A,
        "B" => Special::B,
        _ => return None,
    };
    let (reflect, rest) = match sup.strip_prefix('s') {
        Some(r) => (true, r),
        None => (false, sup),
    };
    let rot = match rest {
        "" => 0,
        "r" => 1,
        r => r.strip_prefix('r')?.parse().ok()?,
    };
    Some((f, Dihedral { reflect, rot }))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    /// Cluster variables ↔ almost positive roots via denominator vectors.
    pub bijective: bool,
    pub exact_rows: usize,
    pub exact_matches: usize,
    pub orbit_rows: usize,
    pub orbit_matches: usize,
    pub mismatches: Vec<String>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.bijective
            && self.exact_matches == self.exact_rows
            && self.orbit_matches == self.orbit_rows
            && self.mismatches.is_empty()
    }
}

/// Compares computed denominator vectors and names with a table. Plücker,
/// `X` and `Y` rows must match by name; `A`/`B` rows must match by letter
/// and toral weight.
pub fn correspondence_check(case: &FiniteCase, table: &[TableRow]) -> CorrespondenceReport {
    let mut rep = CorrespondenceReport::default();
    let roots: BTreeSet<RootVec> = almost_positive_roots(&case.spec).into_iter().collect();
    let by_root: BTreeMap<&RootVec, VarId> =
        case.denominators.iter().map(|(v, r)| (r, *v)).collect();
    let image: BTreeSet<RootVec> = case.denominators.values().cloned().collect();
    rep.bijective = image == roots && by_root.len() == case.denominators.len();
    for row in table {
        let orbit = parse_translate_name(&row.name);
        if orbit.is_some() {
            rep.orbit_rows += 1;
        } else {
            rep.exact_rows += 1;
        }
        let Some(v) = by_root.get(&row.root) else {
            rep.mismatches.push(format!("{:?} {}: no variable", row.root, row.name));
            continue;
        };
        let Some(named) = case.names.get(v) else {
            rep.mismatches.push(format!("{:?} {}: unnamed", row.root, row.name));
            continue;
        };
        match orbit {
            None if named.name == row.name => rep.exact_matches += 1,
            None => rep
                .mismatches
                .push(format!("{:?}: table {} computed {}", row.root, row.name, named.name)),
            Some((f, g)) => {
                let want = translate(f, &g.image(case.n), case.n)
                    .ok()
                    .and_then(|p| toral_weight(&p, case.n));
                let got = toral_weight(&named.function, case.n);
                if named.name.starts_with(&f.to_string()) && want.is_some() && want == got {
                    rep.orbit_matches += 1;
                } else {
                    rep.mismatches.push(format!(
                        "{:?}: table {} computed {} (weights {:?} vs {:?})",
                        row.root, row.name, named.name, want, got
                    ));
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load() {
        assert_eq!(fixture("d4").unwrap().len(), 16);
        assert_eq!(fixture("e6").unwrap().len(), 42);
        assert_eq!(fixture("e8").unwrap().len(), 128);
        assert!(fixture("e7").is_none());
    }

    #[test]
    fn translate_names() {
        assert_eq!(
            parse_translate_name("B^sr5"),
            Some((Special::B, Dihedral { reflect: true, rot: 5 }))
        );
        assert_eq!(
            parse_translate_name("A^r"),
            Some((Special::A, Dihedral { reflect: false, rot: 1 }))
        );
        assert_eq!(
            parse_translate_name("A"),
            Some((Special::A, Dihedral { reflect: false, rot: 0 }))
        );
        assert_eq!(parse_translate_name("X123456"), None);
    }
}
