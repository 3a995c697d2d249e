use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::VerifyError;
use crate::algebra::{rat, rat_from_text, rat_to_text, Rat};
use crate::comb::{all_ksubsets, KSubset};

/// A `k × n` rational matrix; column `j` is the vector `v_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigMatrix {
    pub k: usize,
    pub n: usize,
    pub entries: Vec<Vec<Rat>>,
}

/// Determinant by Gaussian elimination over ℚ.
pub fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    match n {
        0 => return Rat::one(),
        1 => return m[0][0].clone(),
        2 => return &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        3 => {
            return &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
        }
        _ => {}
    }
    let mut d = Rat::one();
    for c in 0..n {
        let piv = match (c..n).find(|&r| !m[r][c].is_zero()) {
            Some(r) => r,
            None => return Rat::zero(),
        };
        if piv != c {
            m.swap(piv, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for cc in c..n {
                let t = &f * &m[c][cc];
                m[r][cc] -= t;
            }
        }
    }
    d
}

impl ConfigMatrix {
    pub fn new(entries: Vec<Vec<Rat>>) -> ConfigMatrix {
        let k = entries.len();
        let n = entries.first().map_or(0, |r| r.len());
        assert!(entries.iter().all(|r| r.len() == n), "ragged matrix");
        ConfigMatrix { k, n, entries }
    }

    pub fn from_columns(cols: &[Vec<Rat>]) -> ConfigMatrix {
        let k = cols.first().map_or(0, |c| c.len());
        let entries = (0..k)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        ConfigMatrix::new(entries)
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        self.entries.iter().map(|r| r[j - 1].clone()).collect()
    }

    /// Determinant of the columns in the given order (1-based; repeats give 0).
    pub fn minor_cols(&self, cols: &[usize]) -> Result<Rat, VerifyError> {
        if cols.len() != self.k {
            return Err(VerifyError::BadArity {
                expected: self.k,
                got: cols.len(),
            });
        }
        if let Some(&c) = cols.iter().find(|&&c| c == 0 || c > self.n) {
            return Err(VerifyError::BadIndex(c));
        }
        let m = self
            .entries
            .iter()
            .map(|row| cols.iter().map(|&c| row[c - 1].clone()).collect())
            .collect();
        Ok(det(m))
    }

    pub fn minor(&self, s: &KSubset) -> Result<Rat, VerifyError> {
        if s.n() != self.n {
            return Err(VerifyError::BadIndex(s.n()));
        }
        self.minor_cols(&s.members())
    }

    pub fn plucker_vector(&self) -> PluckerVector {
        PluckerVector {
            values: all_ksubsets(self.k, self.n)
                .into_iter()
                .map(|s| {
                    let v = self.minor(&s).unwrap();
                    (s, v)
                })
                .collect(),
        }
    }

    pub fn is_full_rank(&self) -> bool {
        all_ksubsets(self.k, self.n)
            .iter()
            .any(|s| !self.minor(s).unwrap().is_zero())
    }

    /// Entries `num/den` with `num ∈ [−9, 9]`, `den ∈ [1, 9]`; redrawn until full rank.
    pub fn random(k: usize, n: usize, rng: &mut impl Rng) -> ConfigMatrix {
        loop {
            let entries = (0..k)
                .map(|_| {
                    (0..n)
                        .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=9)))
                        .collect()
                })
                .collect();
            let m = ConfigMatrix::new(entries);
            if m.is_full_rank() {
                return m;
            }
        }
    }

    /// Rows separated by newlines, cells `num/den` separated by commas.
    pub fn to_csv(&self) -> String {
        self.entries
            .iter()
            .map(|r| r.iter().map(rat_to_text).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn from_csv(s: &str) -> Result<ConfigMatrix, VerifyError> {
        let mut rows = Vec::new();
        for line in s.lines().filter(|l| !l.trim().is_empty()) {
            let row = line
                .split(',')
                .map(rat_from_text)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| VerifyError::Parse(e.to_string()))?;
            rows.push(row);
        }
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return Err(VerifyError::Parse("ragged rows".to_string()));
        }
        Ok(ConfigMatrix::new(rows))
    }
}

/// Generalized Vandermonde matrix with rows `x_j^{i-1}`; every maximal minor is positive.
pub fn totally_positive_point(k: usize, params: &[Rat]) -> Result<ConfigMatrix, VerifyError> {
    if params.is_empty() || !params[0].is_positive() || params.windows(2).any(|w| w[0] >= w[1]) {
        return Err(VerifyError::ParametersNotIncreasing);
    }
    let entries: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            params
                .iter()
                .map(|x| num_traits::pow(x.clone(), i))
                .collect()
        })
        .collect();
    let m = ConfigMatrix::new(entries);
    assert!(
        m.plucker_vector().values.values().all(|v| v.is_positive()),
        "Vandermonde minors must be positive"
    );
    Ok(m)
}

/// Plücker coordinates of a point, keyed by k-subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerVector {
    pub values: BTreeMap<KSubset, Rat>,
}

impl PluckerVector {
    /// Every short Plücker relation `Δ^{Iac}Δ^{Ibd} = Δ^{Iab}Δ^{Icd} + Δ^{Iad}Δ^{Ibc}`
    /// with `a < b < c < d` outside `I`; returns the number of violations.
    pub fn three_term_violations(&self, k: usize, n: usize) -> usize {
        if k < 2 {
            return 0;
        }
        let get = |s: KSubset| self.values.get(&s).cloned().unwrap_or_else(Rat::zero);
        let mut bad = 0;
        let cores: Vec<u64> = if k == 2 {
            vec![0]
        } else {
            all_ksubsets(k - 2, n).iter().map(|s| s.bits()).collect()
        };
        for core in cores {
            let free: Vec<usize> = (1..=n).filter(|&x| core & (1 << (x - 1)) == 0).collect();
            let lab = |x: usize, y: usize| {
                KSubset::from_bits(n, core | (1 << (x - 1)) | (1 << (y - 1)))
            };
            for (p, &a) in free.iter().enumerate() {
                for (q, &b) in free.iter().enumerate().skip(p + 1) {
                    for (r, &c) in free.iter().enumerate().skip(q + 1) {
                        for &d in free.iter().skip(r + 1) {
                            let lhs = get(lab(a, c)) * get(lab(b, d));
                            let rhs = get(lab(a, b)) * get(lab(c, d))
                                + get(lab(a, d)) * get(lab(b, c));
                            if lhs != rhs {
                                bad += 1;
                            }
                        }
                    }
                }
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    #[test]
    fn two_by_four_minors() {
        let (a, b, c, d) = (rat_int(2), rat_int(3), rat_int(5), rat_int(7));
        let m = ConfigMatrix::new(vec![
            vec![rat_int(1), rat_int(0), a.clone(), b.clone()],
            vec![rat_int(0), rat_int(1), c.clone(), d.clone()],
        ]);
        let k12 = KSubset::new(4, &[1, 2]).unwrap();
        let k34 = KSubset::new(4, &[3, 4]).unwrap();
        assert_eq!(m.minor(&k12).unwrap(), rat_int(1));
        assert_eq!(m.minor(&k34).unwrap(), &a * &d - &b * &c);
        assert_eq!(m.minor_cols(&[4, 3]).unwrap(), -(&a * &d - &b * &c));
        assert_eq!(m.plucker_vector().three_term_violations(2, 4), 0);
    }

    #[test]
    fn vandermonde_rejects_bad_parameters() {
        assert!(totally_positive_point(2, &[rat_int(2), rat_int(1)]).is_err());
        let p = totally_positive_point(1, &[rat_int(1), rat_int(3)]).unwrap();
        assert_eq!(p.entries, vec![vec![rat_int(1), rat_int(1)]]);
    }

    #[test]
    fn csv_round_trip() {
        let m = ConfigMatrix::new(vec![vec![rat(1, 2), rat(-3, 1)], vec![rat(0, 1), rat(7, 9)]]);
        assert_eq!(ConfigMatrix::from_csv(&m.to_csv()).unwrap(), m);
    }
}
