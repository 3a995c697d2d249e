use super::{ClusterError, ExtMatrix, VariableRegistry};
use crate::algebra::{LaurentPoly, VarId};

/// A seed: the cluster and coefficients are the row labels of the matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Seed {
    pub matrix: ExtMatrix,
}

/// `z z' = ∏ x^{b_xz > 0} + ∏ x^{-b_xz < 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeRelation {
    pub z: VarId,
    pub plus: Vec<(VarId, u32)>,
    pub minus: Vec<(VarId, u32)>,
}

impl ExchangeRelation {
    /// Both monomials, each sorted, smaller first; independent of global sign.
    pub fn monomial_pair(&self) -> (Vec<(VarId, u32)>, Vec<(VarId, u32)>) {
        let mut a = self.plus.clone();
        let mut b = self.minus.clone();
        a.sort();
        b.sort();
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// Result of one seed mutation.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub seed: Seed,
    pub relation: ExchangeRelation,
    pub new_var: VarId,
    pub discovered: bool,
}

impl Seed {
    pub fn new(matrix: ExtMatrix) -> Seed {
        Seed { matrix }
    }

    pub fn rank(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn cluster(&self) -> &[VarId] {
        self.matrix.col_labels()
    }

    pub fn coefficients(&self) -> &[VarId] {
        self.matrix.frozen_labels()
    }

    /// Sorted cluster: the seed's identity in an exchange graph.
    pub fn key(&self) -> Vec<VarId> {
        let mut k = self.cluster().to_vec();
        k.sort();
        k
    }

    pub fn values<'a>(&self, registry: &'a VariableRegistry) -> Vec<(VarId, &'a LaurentPoly)> {
        self.cluster()
            .iter()
            .map(|&v| (v, registry.value(v).expect("cluster variable registered")))
            .collect()
    }

    pub fn exchange_relation(&self, pos: usize) -> ExchangeRelation {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (r, &v) in self.matrix.row_labels().iter().enumerate() {
            let b = self.matrix.get(r, pos);
            if b > 0 {
                plus.push((v, b as u32));
            } else if b < 0 {
                minus.push((v, (-b) as u32));
            }
        }
        ExchangeRelation {
            z: self.cluster()[pos],
            plus,
            minus,
        }
    }

    /// Mutation at cluster position `pos`.
    pub fn mutate_at(
        &self,
        pos: usize,
        registry: &mut VariableRegistry,
    ) -> Result<Mutation, ClusterError> {
        if pos >= self.rank() {
            return Err(ClusterError::BadIndex(pos + 1));
        }
        let relation = self.exchange_relation(pos);
        let (new_var, discovered) =
            registry.resolve_exchange(relation.z, &relation.plus, &relation.minus)?;
        let mut m = self.matrix.mutate_at(pos);
        m.relabel(pos, new_var);
        Ok(Mutation {
            seed: Seed { matrix: m },
            relation,
            new_var,
            discovered,
        })
    }

    /// Mutation in the direction of cluster variable `z`.
    pub fn seed_mutate(
        &self,
        z: VarId,
        registry: &mut VariableRegistry,
    ) -> Result<Mutation, ClusterError> {
        match self.matrix.position(z) {
            Some(p) if p < self.rank() => self.mutate_at(p, registry),
            Some(_) => Err(ClusterError::NotMutable(z)),
            None => Err(ClusterError::UnknownVariable(z)),
        }
    }

    /// Applies mutations at 1-based vertex numbers in order.
    pub fn run_mutation_sequence(
        &self,
        seq: &[usize],
        registry: &mut VariableRegistry,
    ) -> Result<Seed, ClusterError> {
        let mut s = self.clone();
        for &v in seq {
            if v == 0 || v > s.rank() {
                return Err(ClusterError::BadIndex(v));
            }
            s = s.mutate_at(v - 1, registry)?.seed;
        }
        Ok(s)
    }

    /// The same mutations on the matrix only.
    pub fn mutate_matrix_sequence(&self, seq: &[usize]) -> Result<ExtMatrix, ClusterError> {
        let mut m = self.matrix.clone();
        for &v in seq {
            if v == 0 || v > m.ncols() {
                return Err(ClusterError::BadIndex(v));
            }
            m = m.mutate_at(v - 1);
        }
        Ok(m)
    }
}
