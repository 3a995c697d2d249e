use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use sha2::{Digest, Sha256};

use super::{rat_from_text, rat_pow, rat_to_text, AlgebraError, Monomial, Rat, VarId};

/// Sparse Laurent polynomial with rational coefficients.
///
/// Terms live in a `BTreeMap` keyed by [`Monomial`], so iteration order is the
/// global graded-lex order and two polynomials are equal iff their maps are.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        LaurentPoly::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        LaurentPoly::term(Rat::one(), Monomial::var(v))
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPoly::term(Rat::one(), m)
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Leading term in the global order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Returns `Some(m)` when the polynomial is `1·m`.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn vars(&self) -> Vec<VarId> {
        let mut v: Vec<VarId> = self.terms.keys().flat_map(|m| m.vars()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Componentwise minimum exponent over all terms (the largest monomial
    /// dividing every term in the Laurent sense).
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        it.fold(first, |acc, m| acc.min_with(m))
    }

    /// Exact quotient in the Laurent polynomial ring.
    pub fn div_exact(&self, den: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivideByZero);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if den.len() == 1 {
            let (m, c) = den.leading().unwrap();
            let inv = c.recip();
            let mi = m.inverse();
            return Ok(LaurentPoly {
                terms: self
                    .terms
                    .iter()
                    .map(|(t, a)| (t.mul(&mi), a * &inv))
                    .collect(),
            });
        }
        // After shifting both sides by their minimal monomials the divisor has
        // no monomial factor, so any Laurent quotient is a polynomial and plain
        // multivariate division decides divisibility.
        let sn = self.min_monomial();
        let sd = den.min_monomial();
        let num = self.mul_monomial(&sn.inverse());
        let d = den.mul_monomial(&sd.inverse());
        let (ld_m, ld_c) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = num.terms;
        let mut quo = LaurentPoly::zero();
        while let Some((lm, lc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divisible_by(&ld_m) {
                return Err(AlgebraError::NotDivisible);
            }
            let qm = lm.div(&ld_m);
            let qc = &lc / &ld_c;
            for (m, c) in d.terms.iter() {
                let t = m.mul(&qm);
                let v = rem.entry(t).or_insert_with(Rat::zero);
                *v -= c * &qc;
                if v.is_zero() {
                    let key = m.mul(&qm);
                    rem.remove(&key);
                }
            }
            quo.add_term(qm, qc);
        }
        Ok(quo.mul_monomial(&sn.div(&sd)))
    }

    /// Evaluates with values from `lookup`.
    pub fn eval_with(&self, lookup: impl Fn(VarId) -> Option<Rat>) -> Result<Rat, AlgebraError> {
        let mut cache: HashMap<VarId, Rat> = HashMap::new();
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.factors() {
                let val = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = lookup(v).ok_or(AlgebraError::MissingVariable(v))?;
                        cache.insert(v, x.clone());
                        x
                    }
                };
                if e < 0 && val.is_zero() {
                    return Err(AlgebraError::ZeroToNegativePower(v));
                }
                t *= rat_pow(&val, e)?;
            }
            total += t;
        }
        Ok(total)
    }

    pub fn eval(&self, assignment: &HashMap<VarId, Rat>) -> Result<Rat, AlgebraError> {
        self.eval_with(|v| assignment.get(&v).cloned())
    }

    /// Substitutes a Laurent polynomial for every variable.
    pub fn substitute(
        &self,
        f: impl Fn(VarId) -> Option<LaurentPoly>,
    ) -> Result<LaurentPoly, AlgebraError> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut t = LaurentPoly::constant(c.clone());
            for &(v, e) in m.factors() {
                let val = f(v).ok_or(AlgebraError::MissingVariable(v))?;
                let p = if e >= 0 {
                    val.pow(e as u32)
                } else {
                    let mono = val.as_single_term().ok_or(AlgebraError::NotDivisible)?;
                    mono.pow((-e) as u32)
                        .into_inverse_term()
                        .ok_or(AlgebraError::DivideByZero)?
                };
                t = &t * &p;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    fn as_single_term(&self) -> Option<LaurentPoly> {
        (self.len() == 1).then(|| self.clone())
    }

    fn into_inverse_term(self) -> Option<LaurentPoly> {
        let (m, c) = self.leading()?;
        Some(LaurentPoly::term(c.recip(), m.inverse()))
    }

    /// For each cluster variable, the exponent of its monomial denominator:
    /// `−min` over terms of its exponent (absent counts as 0).
    pub fn denominator_vector(&self, cluster: &[VarId]) -> Vec<i32> {
        cluster
            .iter()
            .map(|&v| {
                let min = self.terms.keys().map(|m| m.exponent(v)).min().unwrap_or(0);
                -min
            })
            .collect()
    }

    /// True iff every coefficient is positive.
    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Canonical text form: terms in descending order, `coef*monomial`, joined by ` + `.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if m.is_one() {
                    rat_to_text(c)
                } else {
                    format!("{}*{}", rat_to_text(c), m)
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// Inverse of [`LaurentPoly::to_text`]; `n` is the ambient size for Plücker ids.
    pub fn parse(s: &str, n: usize) -> Result<LaurentPoly, AlgebraError> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut p = LaurentPoly::zero();
        for part in s.split(" + ") {
            let mut pieces = part.split('*');
            let c = rat_from_text(pieces.next().unwrap_or(""))?;
            let mut factors = Vec::new();
            for f in pieces {
                let (v, e) = match f.split_once('^') {
                    Some((v, e)) => (
                        v,
                        e.parse::<i32>()
                            .map_err(|_| AlgebraError::Parse(f.to_string()))?,
                    ),
                    None => (f, 1),
                };
                factors.push((VarId::parse(v, n)?, e));
            }
            p.add_term(Monomial::from_factors(factors), c);
        }
        Ok(p)
    }

    /// SHA-256 of the canonical text, truncated to 64 bits.
    pub fn stable_hash(&self) -> u64 {
        let digest = Sha256::digest(self.to_text().as_bytes());
        u64::from_be_bytes(digest[..8].try_into().unwrap())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    fn x() -> LaurentPoly {
        LaurentPoly::var(VarId::Anon(0))
    }
    fn y() -> LaurentPoly {
        LaurentPoly::var(VarId::Anon(1))
    }
    fn xinv() -> LaurentPoly {
        LaurentPoly::monomial(Monomial::var_pow(VarId::Anon(0), -1))
    }

    #[test]
    fn add_cancels_and_merges() {
        assert_eq!(&(&x() + &y()) + &(&x() - &y()), x().scale(&rat_int(2)));
        assert_eq!(&x() + &LaurentPoly::zero(), x());
        let lhs = &(&xinv() + &LaurentPoly::one()) + &xinv();
        assert_eq!(lhs, &xinv().scale(&rat_int(2)) + &LaurentPoly::one());
    }

    #[test]
    fn mul_basics() {
        let d = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(d, &(&x() * &x()) - &(&y() * &y()));
        assert_eq!(&x() * &xinv(), LaurentPoly::one());
        assert!((&x() * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn exact_division() {
        let num = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(num.div_exact(&(&x() + &y())).unwrap(), &x() - &y());
        let num = &(&x() * &y()) + &(&y() * &y());
        assert_eq!(num.div_exact(&y()).unwrap(), &x() + &y());
        assert_eq!(
            (&x() + &y()).div_exact(&(&x() - &y())),
            Err(AlgebraError::NotDivisible)
        );
        assert_eq!(x().div_exact(&LaurentPoly::zero()), Err(AlgebraError::DivideByZero));
        // shifted divisor: (x^-1 + y) * (x + 1)
        let a = &xinv() + &y();
        let b = &x() + &LaurentPoly::one();
        assert_eq!((&a * &b).div_exact(&a).unwrap(), b);
    }

    #[test]
    fn evaluation() {
        let mut asg = HashMap::new();
        asg.insert(VarId::Anon(0), rat_int(3));
        asg.insert(VarId::Anon(1), rat_int(3));
        assert!((&x() - &y()).eval(&asg).unwrap().is_zero());
        asg.insert(VarId::Anon(0), rat_int(2));
        asg.insert(VarId::Anon(1), rat_int(6));
        assert_eq!((&xinv() * &y()).eval(&asg).unwrap(), rat_int(3));
        asg.insert(VarId::Anon(0), rat_int(0));
        assert!(matches!(
            xinv().eval(&asg),
            Err(AlgebraError::ZeroToNegativePower(_))
        ));
        assert!(matches!(
            LaurentPoly::var(VarId::Anon(9)).eval(&asg),
            Err(AlgebraError::MissingVariable(_))
        ));
    }

    #[test]
    fn denominator_vector_of_cluster_variable() {
        let cl = [VarId::Anon(0), VarId::Anon(1)];
        assert_eq!(x().denominator_vector(&cl), vec![-1, 0]);
        let p = (&x() + &y()).mul_monomial(&Monomial::var_pow(VarId::Anon(0), -2));
        assert_eq!(p.denominator_vector(&cl), vec![2, 0]);
    }

    #[test]
    fn text_round_trip() {
        let p = &(&xinv().scale(&crate::algebra::rat(-3, 4)) + &y())
            + &LaurentPoly::var(VarId::pluecker(6, &[1, 3, 6]));
        let s = p.to_text();
        assert_eq!(LaurentPoly::parse(&s, 6).unwrap(), p);
        assert_eq!(LaurentPoly::parse("0", 6).unwrap(), LaurentPoly::zero());
        assert_eq!(p.stable_hash(), LaurentPoly::parse(&s, 6).unwrap().stable_hash());
    }
}
