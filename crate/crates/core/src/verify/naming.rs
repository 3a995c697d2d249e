use std::collections::{BTreeMap, HashMap};

use super::checks::{eval_on_point, evaluate_variable, point_rng};
use super::config::ConfigMatrix;
use super::special::catalog;
use super::VerifyError;
use num_traits::Zero;

use crate::algebra::{rat_int, LaurentPoly, VarId};
use crate::cluster::modp::{self, Fingerprint, ProbeMatrices, PROBES};
use crate::cluster::VariableRegistry;

/// A cluster variable identified with `sign · (named function)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naming {
    pub name: String,
    pub sign: i64,
    /// The variable as a polynomial in Plücker ids, sign included.
    pub function: LaurentPoly,
}

/// Value of a polynomial in Plücker ids at the probe matrices.
pub fn fingerprint_of(p: &LaurentPoly, probes: &ProbeMatrices) -> Option<Fingerprint> {
    let mut out = [0u64; PROBES];
    for (m, c) in p.terms() {
        let c = modp::from_rat(c)?;
        for (t, slot) in out.iter_mut().enumerate() {
            let mut v = c;
            for &(x, e) in m.factors() {
                let f = probes.minor(&x.as_pluecker()?)[t];
                v = modp::mul(v, modp::pow_i(f, e)?);
            }
            *slot = modp::add(*slot, v);
        }
    }
    Some(out)
}

/// Names every variable of a Grassmannian registry (fingerprinted by `probes`)
/// from the catalog, matching up to sign by fingerprint and confirming each
/// match exactly at rational points. The first catalog entry that matches wins.
pub fn name_variables(
    registry: &VariableRegistry,
    probes: &ProbeMatrices,
    k: usize,
    n: usize,
    seed: u64,
) -> Result<BTreeMap<VarId, Naming>, VerifyError> {
    let mut by_fp: HashMap<Fingerprint, (usize, i64)> = HashMap::new();
    let cat = catalog(k, n);
    for (i, f) in cat.iter().enumerate() {
        let fp = fingerprint_of(&f.poly, probes).expect("catalog functions are polynomials");
        by_fp.entry(fp).or_insert((i, 1));
        by_fp.entry(fp.map(modp::neg)).or_insert((i, -1));
    }
    let points: Vec<ConfigMatrix> = (0..2)
        .map(|t| {
            let mut rng = point_rng(seed, t);
            loop {
                let m = ConfigMatrix::random(k, n, &mut rng);
                let ok = registry
                    .initial()
                    .iter()
                    .all(|v| v.as_pluecker().is_some_and(|s| m.minor(&s).is_ok_and(|x| !x.is_zero())));
                if ok {
                    return m;
                }
            }
        })
        .collect();
    let pvs: Vec<_> = points.iter().map(|m| m.plucker_vector()).collect();
    let mut out = BTreeMap::new();
    for r in registry.records() {
        let &(i, sign) = by_fp.get(&r.fp).ok_or(VerifyError::Unnamed(r.id))?;
        let function = cat[i].poly.scale(&rat_int(sign));
        for (m, pv) in points.iter().zip(&pvs) {
            let want = eval_on_point(&function, pv).expect("polynomial");
            if evaluate_variable(r.id, registry, m)? != want {
                return Err(VerifyError::Unnamed(r.id));
            }
        }
        out.insert(
            r.id,
            Naming {
                name: cat[i].name.clone(),
                sign,
                function,
            },
        );
    }
    Ok(out)
}
