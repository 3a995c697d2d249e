use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use super::ClusterError;
use crate::algebra::VarId;

/// Extended exchange matrix: rows are the mutable labels followed by the
/// frozen ones, columns are the mutable labels in the same order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtMatrix {
    rows: Vec<VarId>,
    ncols: usize,
    entries: Vec<i32>,
}

impl ExtMatrix {
    pub fn new(rows: Vec<VarId>, ncols: usize, entries: Vec<i32>) -> ExtMatrix {
        assert!(ncols <= rows.len(), "more columns than rows");
        assert_eq!(entries.len(), rows.len() * ncols, "entry count");
        ExtMatrix {
            rows,
            ncols,
            entries,
        }
    }

    pub fn zeros(rows: Vec<VarId>, ncols: usize) -> ExtMatrix {
        let len = rows.len() * ncols;
        ExtMatrix::new(rows, ncols, vec![0; len])
    }

    pub fn from_rows(rows: Vec<VarId>, ncols: usize, data: &[Vec<i32>]) -> ExtMatrix {
        let entries = data.iter().flat_map(|r| r.iter().copied()).collect();
        ExtMatrix::new(rows, ncols, entries)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row_labels(&self) -> &[VarId] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[VarId] {
        &self.rows[..self.ncols]
    }

    pub fn frozen_labels(&self) -> &[VarId] {
        &self.rows[self.ncols..]
    }

    pub fn get(&self, r: usize, c: usize) -> i32 {
        self.entries[r * self.ncols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i32) {
        self.entries[r * self.ncols + c] = v;
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn position(&self, v: VarId) -> Option<usize> {
        self.rows.iter().position(|&x| x == v)
    }

    pub fn relabel(&mut self, idx: usize, v: VarId) {
        self.rows[idx] = v;
    }

    pub fn column(&self, c: usize) -> Vec<i32> {
        (0..self.nrows()).map(|r| self.get(r, c)).collect()
    }

    pub fn row(&self, r: usize) -> Vec<i32> {
        (0..self.ncols).map(|c| self.get(r, c)).collect()
    }

    /// The mutable × mutable block.
    pub fn principal(&self) -> Vec<Vec<i32>> {
        (0..self.ncols).map(|r| self.row(r)).collect()
    }

    pub fn is_principal_skew_symmetric(&self) -> bool {
        (0..self.ncols).all(|i| (0..self.ncols).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Mutation in direction `z`; labels are unchanged.
    pub fn matrix_mutate(&self, z: VarId) -> Result<ExtMatrix, ClusterError> {
        match self.position(z) {
            Some(k) if k < self.ncols => Ok(self.mutate_at(k)),
            Some(_) => Err(ClusterError::NotMutable(z)),
            None => Err(ClusterError::UnknownVariable(z)),
        }
    }

    pub fn mutate_at(&self, k: usize) -> ExtMatrix {
        assert!(k < self.ncols, "column {k} out of range");
        let mut out = self.clone();
        for x in 0..self.nrows() {
            let bxk = self.get(x, k);
            for y in 0..self.ncols {
                let v = if x == k || y == k {
                    -self.get(x, y)
                } else {
                    mutated_entry(self.get(x, y), bxk, self.get(k, y))
                };
                out.set(x, y, v);
            }
        }
        out
    }

    /// Entries keyed by `(row label, column label)`, zeros omitted.
    pub fn as_label_map(&self) -> HashMap<(VarId, VarId), i32> {
        let mut m = HashMap::new();
        for r in 0..self.nrows() {
            for c in 0..self.ncols {
                let v = self.get(r, c);
                if v != 0 {
                    m.insert((self.rows[r], self.rows[c]), v);
                }
            }
        }
        m
    }

    /// Equal up to a simultaneous permutation of rows and columns.
    pub fn same_up_to_relabeling(&self, other: &ExtMatrix) -> bool {
        if self.ncols != other.ncols || self.nrows() != other.nrows() {
            return false;
        }
        let pos: HashMap<VarId, usize> = other
            .rows
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let perm: Option<Vec<usize>> = self.rows.iter().map(|v| pos.get(v).copied()).collect();
        let perm = match perm {
            Some(p) => p,
            None => return false,
        };
        if (0..self.ncols).any(|c| perm[c] >= other.ncols) {
            return false;
        }
        (0..self.nrows())
            .all(|r| (0..self.ncols).all(|c| self.get(r, c) == other.get(perm[r], perm[c])))
    }

    /// Reorders the mutable labels by `order` (a permutation of `0..ncols`).
    pub fn permute_mutable(&self, order: &[usize]) -> ExtMatrix {
        assert_eq!(order.len(), self.ncols);
        let mut rows: Vec<VarId> = order.iter().map(|&i| self.rows[i]).collect();
        rows.extend_from_slice(&self.rows[self.ncols..]);
        let mut rmap: Vec<usize> = order.to_vec();
        rmap.extend(self.ncols..self.nrows());
        let mut out = ExtMatrix::zeros(rows, self.ncols);
        for r in 0..self.nrows() {
            for c in 0..self.ncols {
                out.set(r, c, self.get(rmap[r], order[c]));
            }
        }
        out
    }

    pub fn negated(&self) -> ExtMatrix {
        ExtMatrix {
            rows: self.rows.clone(),
            ncols: self.ncols,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Debug for ExtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.nrows() {
            write!(f, "{:>12} |", self.rows[r].to_string())?;
            for c in 0..self.ncols {
                write!(f, " {:>2}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// `b_xy + (|b_xk| b_ky + b_xk |b_ky|) / 2`; panics if the result leaves `i32`.
fn mutated_entry(bxy: i32, bxk: i32, bky: i32) -> i32 {
    let (bxy, bxk, bky) = (i64::from(bxy), i64::from(bxk), i64::from(bky));
    let v = bxy + (bxk.abs() * bky + bxk * bky.abs()) / 2;
    i32::try_from(v).expect("exchange matrix entry overflows i32")
}

/// Mutation of a bare square (or extended) integer matrix at column `k`.
pub fn mutate_square(b: &[Vec<i32>], k: usize) -> Vec<Vec<i32>> {
    let n = b.len();
    let mut out = b.to_vec();
    for x in 0..n {
        for y in 0..b[x].len() {
            out[x][y] = if x == k || y == k {
                -b[x][y]
            } else {
                mutated_entry(b[x][y], b[x][k], b[k][y])
            };
        }
    }
    out
}

/// A positive integer diagonal `D` with `DB` skew-symmetric, if one exists.
pub fn check_skew_symmetrizable(b: &[Vec<i64>]) -> Option<Vec<u64>> {
    let n = b.len();
    if b.iter().any(|r| r.len() != n) {
        return None;
    }
    for i in 0..n {
        if b[i][i] != 0 {
            return None;
        }
        for j in 0..n {
            // sign pattern: b_ij and b_ji are both zero or of opposite signs
            if (b[i][j] == 0) != (b[j][i] == 0) || b[i][j] * b[j][i] > 0 {
                return None;
            }
        }
    }
    // d_i b_ij = -d_j b_ji, so d_j = d_i * b_ij / -b_ji
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Ratio::from_integer(1));
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if b[i][j] == 0 {
                    continue;
                }
                let dj = di * Ratio::new(b[i][j], -b[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(old) if old != dj => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().map(Option::unwrap).collect();
    let l = d.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
    let ints: Vec<i64> = d.iter().map(|r| (r * l).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Some(ints.iter().map(|&x| (x / g) as u64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizers() {
        assert_eq!(
            check_skew_symmetrizable(&[vec![0, 1], vec![-1, 0]]),
            Some(vec![1, 1])
        );
        assert_eq!(
            check_skew_symmetrizable(&[vec![0, 1], vec![-2, 0]]),
            Some(vec![2, 1])
        );
        assert_eq!(check_skew_symmetrizable(&[vec![0, 1], vec![1, 0]]), None);
    }

    #[test]
    fn zero_matrix_is_fixed() {
        let rows: Vec<VarId> = (0..5).map(VarId::Anon).collect();
        let m = ExtMatrix::zeros(rows, 3);
        assert_eq!(m.mutate_at(1), m);
    }

    #[test]
    fn frozen_direction_rejected() {
        let rows: Vec<VarId> = (0..3).map(VarId::Anon).collect();
        let m = ExtMatrix::zeros(rows, 2);
        assert!(matches!(
            m.matrix_mutate(VarId::Anon(2)),
            Err(ClusterError::NotMutable(_))
        ));
    }
}
