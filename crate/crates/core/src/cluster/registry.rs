use std::collections::HashMap;

use super::modp::{self, Fingerprint, ProbeMatrices, PROBES};
use super::ClusterError;
use crate::algebra::{LaurentPoly, Monomial, VarId};

#[derive(Clone, Debug)]
pub struct VarRecord {
    pub id: VarId,
    /// Laurent expansion in the registry's initial variables.
    pub poly: LaurentPoly,
    pub fp: Fingerprint,
    pub initial: bool,
}

/// Counters kept by the registry while resolving exchanges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegistryStats {
    pub exact_divisions: u64,
    pub not_divisible: u64,
}

/// Bijection between cluster variables and their canonical Laurent expansions.
///
/// Every variable also carries a fingerprint (its values at fixed probe
/// points mod a large prime). A mutation computes the fingerprint of the new
/// variable first; the exact Laurent division runs only for variables not
/// seen before, or on every mutation when `exact_every_mutation` is set.
#[derive(Clone, Debug)]
pub struct VariableRegistry {
    records: Vec<VarRecord>,
    index: HashMap<VarId, usize>,
    by_fp: HashMap<Fingerprint, VarId>,
    table: HashMap<LaurentPoly, VarId>,
    catalog: HashMap<Fingerprint, VarId>,
    next_anon: u32,
    pub exact_every_mutation: bool,
    pub stats: RegistryStats,
}

impl VariableRegistry {
    /// Registry whose initial variables are indeterminates with the given fingerprints.
    pub fn new(initial: Vec<(VarId, Fingerprint)>) -> VariableRegistry {
        let mut r = VariableRegistry {
            records: Vec::new(),
            index: HashMap::new(),
            by_fp: HashMap::new(),
            table: HashMap::new(),
            catalog: HashMap::new(),
            next_anon: 0,
            exact_every_mutation: false,
            stats: RegistryStats::default(),
        };
        for (id, fp) in initial {
            r.insert(id, LaurentPoly::var(id), fp, true);
        }
        r
    }

    /// Registry for a Grassmannian seed: initial Plücker variables are
    /// fingerprinted by probe minors, and every minor is in the catalog so
    /// that new variables equal to a Plücker coordinate get its id.
    pub fn grassmannian(initial: &[VarId], probes: &ProbeMatrices) -> VariableRegistry {
        let init = initial
            .iter()
            .map(|&v| {
                let s = v.as_pluecker().expect("Grassmannian seeds use Plücker ids");
                (v, probes.minor(&s))
            })
            .collect();
        let mut r = VariableRegistry::new(init);
        for (s, fp) in probes.all_minors() {
            r.catalog.insert(fp, VarId::Pluecker(s));
        }
        r
    }

    /// Names to give new variables whose fingerprint matches.
    pub fn set_catalog(&mut self, catalog: HashMap<Fingerprint, VarId>) {
        self.catalog = catalog;
        for v in self.catalog.values() {
            if let VarId::Anon(a) = v {
                self.next_anon = self.next_anon.max(a + 1);
            }
        }
    }

    fn insert(&mut self, id: VarId, poly: LaurentPoly, fp: Fingerprint, initial: bool) {
        if let VarId::Anon(a) = id {
            self.next_anon = self.next_anon.max(a + 1);
        }
        self.index.insert(id, self.records.len());
        self.by_fp.insert(fp, id);
        self.table.insert(poly.clone(), id);
        self.records.push(VarRecord {
            id,
            poly,
            fp,
            initial,
        });
    }

    pub(crate) fn push_record(&mut self, r: VarRecord) {
        self.insert(r.id, r.poly, r.fp, r.initial);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[VarRecord] {
        &self.records
    }

    pub fn ids(&self) -> Vec<VarId> {
        self.records.iter().map(|r| r.id).collect()
    }

    pub fn initial(&self) -> Vec<VarId> {
        self.records.iter().filter(|r| r.initial).map(|r| r.id).collect()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn record(&self, v: VarId) -> Option<&VarRecord> {
        self.index.get(&v).map(|&i| &self.records[i])
    }

    pub fn value(&self, v: VarId) -> Option<&LaurentPoly> {
        self.record(v).map(|r| &r.poly)
    }

    pub fn fingerprint(&self, v: VarId) -> Option<Fingerprint> {
        self.record(v).map(|r| r.fp)
    }

    pub fn lookup_poly(&self, p: &LaurentPoly) -> Option<VarId> {
        self.table.get(p).copied()
    }

    pub fn lookup_fp(&self, fp: &Fingerprint) -> Option<VarId> {
        self.by_fp.get(fp).copied()
    }

    /// Fingerprint → id for every registered variable.
    pub fn fingerprint_map(&self) -> HashMap<Fingerprint, VarId> {
        self.records.iter().map(|r| (r.fp, r.id)).collect()
    }

    fn monomial_fp(&self, mono: &[(VarId, u32)]) -> Result<Fingerprint, ClusterError> {
        let mut out = [1u64; PROBES];
        for &(v, e) in mono {
            let fp = self
                .fingerprint(v)
                .ok_or(ClusterError::UnknownVariable(v))?;
            for t in 0..PROBES {
                out[t] = modp::mul(out[t], modp::pow(fp[t], e as u64));
            }
        }
        Ok(out)
    }

    fn monomial_poly(&self, mono: &[(VarId, u32)]) -> Result<LaurentPoly, ClusterError> {
        let mut acc = LaurentPoly::one();
        for &(v, e) in mono {
            let p = self.value(v).ok_or(ClusterError::UnknownVariable(v))?;
            if let Some(m) = p.as_monomial() {
                acc = acc.mul_monomial(&m.pow(e as i32));
            } else {
                acc = &acc * &p.pow(e);
            }
        }
        Ok(acc)
    }

    /// Resolves `z' = (plus + minus) / z`; returns the id and whether it is new.
    pub fn resolve_exchange(
        &mut self,
        z: VarId,
        plus: &[(VarId, u32)],
        minus: &[(VarId, u32)],
    ) -> Result<(VarId, bool), ClusterError> {
        let fz = self.fingerprint(z).ok_or(ClusterError::UnknownVariable(z))?;
        let fp_p = self.monomial_fp(plus)?;
        let fp_m = self.monomial_fp(minus)?;
        let mut fp = [0u64; PROBES];
        for t in 0..PROBES {
            let iz = modp::inv(fz[t]).ok_or(ClusterError::FingerprintDegenerate(z))?;
            fp[t] = modp::mul(modp::add(fp_p[t], fp_m[t]), iz);
        }
        let known = self.by_fp.get(&fp).copied();
        if let Some(v) = known {
            if !self.exact_every_mutation {
                return Ok((v, false));
            }
        }
        let num = &self.monomial_poly(plus)? + &self.monomial_poly(minus)?;
        let den = self.value(z).unwrap().clone();
        self.stats.exact_divisions += 1;
        let poly = match num.div_exact(&den) {
            Ok(q) => q,
            Err(source) => {
                self.stats.not_divisible += 1;
                return Err(ClusterError::LaurentViolation { var: z, source });
            }
        };
        if let Some(v) = known {
            if self.value(v) != Some(&poly) {
                return Err(ClusterError::FingerprintCollision(v));
            }
            return Ok((v, false));
        }
        if let Some(v) = self.table.get(&poly).copied() {
            return Err(ClusterError::FingerprintCollision(v));
        }
        let id = match self.catalog.get(&fp) {
            Some(&v) if !self.index.contains_key(&v) => v,
            _ => {
                let a = VarId::Anon(self.next_anon);
                self.next_anon += 1;
                a
            }
        };
        self.insert(id, poly, fp, false);
        Ok((id, true))
    }

    /// Monomial whose exponents are those of `mono`, as a Laurent monomial.
    pub fn exchange_monomial(mono: &[(VarId, u32)]) -> Monomial {
        Monomial::from_factors(mono.iter().map(|&(v, e)| (v, e as i32)))
    }
}
