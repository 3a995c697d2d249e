use std::cmp::Ordering;
use std::fmt;

use super::VarId;

/// A Laurent monomial: variables with nonzero (possibly negative) exponents.
///
/// Factors are kept sorted by [`VarId`] with no zero exponents, so the
/// representation is canonical and the derived `Eq`/`Hash` are structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(VarId, i32)>,
    degree: i32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: VarId, e: i32) -> Self {
        if e == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: vec![(v, e)],
            degree: e,
        }
    }

    /// Builds from arbitrary `(var, exp)` pairs, merging repeats and dropping zeros.
    pub fn from_factors(pairs: impl IntoIterator<Item = (VarId, i32)>) -> Self {
        let mut v: Vec<(VarId, i32)> = pairs.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut factors: Vec<(VarId, i32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match factors.last_mut() {
                Some(last) if last.0 == var => last.1 += e,
                _ => factors.push((var, e)),
            }
        }
        factors.retain(|&(_, e)| e != 0);
        let degree = factors.iter().map(|&(_, e)| e).sum();
        Monomial { factors, degree }
    }

    pub fn factors(&self) -> &[(VarId, i32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total degree (sum of exponents, may be negative).
    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn exponent(&self, v: VarId) -> i32 {
        match self.factors.binary_search_by(|(x, _)| x.cmp(&v)) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.combine(other, |a, b| a + b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.combine(other, |a, b| a - b)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial {
            factors: self.factors.iter().map(|&(v, e)| (v, -e)).collect(),
            degree: -self.degree,
        }
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: self.factors.iter().map(|&(v, e)| (v, e * k)).collect(),
            degree: self.degree * k,
        }
    }

    /// True iff every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e >= 0)
    }

    /// Componentwise minimum of exponents, treating absent variables as 0.
    pub fn min_with(&self, other: &Monomial) -> Monomial {
        self.combine(other, |a, b| a.min(b))
    }

    /// True iff `self / other` has no negative exponent.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => {
                    if a[i].1 < 0 {
                        return false;
                    }
                    i += 1;
                }
                Ordering::Greater => {
                    if b[j].1 > 0 {
                        return false;
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    if a[i].1 < b[j].1 {
                        return false;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        true
    }

    fn combine(&self, other: &Monomial, op: impl Fn(i32, i32) -> i32) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, e) = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => {
                        i += 1;
                        (x.0, op(x.1, 0))
                    }
                    Ordering::Greater => {
                        j += 1;
                        (y.0, op(0, y.1))
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (x.0, op(x.1, y.1))
                    }
                },
                (Some(x), None) => {
                    i += 1;
                    (x.0, op(x.1, 0))
                }
                (None, Some(y)) => {
                    j += 1;
                    (y.0, op(0, y.1))
                }
                (None, None) => unreachable!(),
            };
            if e != 0 {
                out.push((v, e));
            }
        }
        let degree = out.iter().map(|&(_, e)| e).sum();
        Monomial {
            factors: out,
            degree,
        }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// smallest variable where the two differ (larger exponent is greater).
    fn cmp(&self, other: &Self) -> Ordering {
        if self.degree != other.degree {
            return self.degree.cmp(&other.degree);
        }
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(x), None) => return x.1.cmp(&0),
                (None, Some(y)) => return 0.cmp(&y.1),
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => return x.1.cmp(&0),
                    Ordering::Greater => return 0.cmp(&y.1),
                    Ordering::Equal => {
                        if x.1 != y.1 {
                            return x.1.cmp(&y.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> VarId {
        VarId::Anon(0)
    }
    fn y() -> VarId {
        VarId::Anon(1)
    }

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial::var_pow(x(), 2);
        let xy = Monomial::from_factors([(x(), 1), (y(), 1)]);
        let y2 = Monomial::var_pow(y(), 2);
        let xinv = Monomial::var_pow(x(), -1);
        assert!(x2 > xy && xy > y2);
        assert!(Monomial::one() > xinv);
        assert!(Monomial::var(y()) < Monomial::var(x()));
    }

    #[test]
    fn arithmetic_drops_zero_exponents() {
        let m = Monomial::from_factors([(x(), 1), (y(), -2)]);
        assert!(m.mul(&m.inverse()).is_one());
        assert_eq!(m.exponent(y()), -2);
        assert!(!m.is_polynomial());
        assert!(Monomial::var_pow(x(), 3).divisible_by(&Monomial::var(x())));
        assert!(!Monomial::var(x()).divisible_by(&Monomial::var(y())));
    }
}
