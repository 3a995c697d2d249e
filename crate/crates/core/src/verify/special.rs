use std::fmt;

use num_traits::{Signed, Zero};

use super::checks::eval_on_point;
use super::config::totally_positive_point;
use super::VerifyError;
use crate::algebra::{rat_int, LaurentPoly, Monomial, Rat, VarId};
use crate::comb::{all_ksubsets, KSubset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Special {
    X,
    Y,
    A,
    B,
}

impl Special {
    pub fn arity(self) -> usize {
        match self {
            Special::X | Special::Y => 6,
            Special::A | Special::B => 8,
        }
    }

    fn terms(self) -> &'static [(i64, &'static [[usize; 3]])] {
        match self {
            Special::X => &[(1, &[[1, 3, 4], [2, 5, 6]]), (-1, &[[1, 5, 6], [2, 3, 4]])],
            Special::Y => &[(1, &[[2, 3, 6], [1, 4, 5]]), (-1, &[[1, 2, 3], [4, 5, 6]])],
            Special::A => &[
                (1, &[[1, 3, 4], [2, 5, 8], [1, 6, 7]]),
                (-1, &[[1, 3, 4], [6, 7, 8], [1, 2, 5]]),
                (-1, &[[1, 5, 8], [2, 3, 4], [1, 6, 7]]),
            ],
            Special::B => &[
                (1, &[[2, 5, 8], [1, 3, 4], [2, 6, 7]]),
                (-1, &[[2, 3, 4], [1, 2, 8], [5, 6, 7]]),
                (-1, &[[2, 3, 4], [2, 5, 8], [1, 6, 7]]),
            ],
        }
    }
}

impl fmt::Display for Special {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Special::X => "X",
            Special::Y => "Y",
            Special::A => "A",
            Special::B => "B",
        };
        f.write_str(c)
    }
}

/// `±Δ` on the given (unsorted) columns, or `None` when two coincide.
pub fn signed_pluecker(n: usize, cols: &[usize]) -> Result<Option<(i64, KSubset)>, VerifyError> {
    if let Some(&c) = cols.iter().find(|&&c| c == 0 || c > n) {
        return Err(VerifyError::BadIndex(c));
    }
    let mut v = cols.to_vec();
    let mut sign = 1i64;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return Ok(None);
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    Ok(Some((sign, KSubset::new(n, &v).expect("validated"))))
}

/// `X`, `Y`, `A` or `B` with formula index `i` replaced by `image[i-1]`,
/// as a polynomial in Plücker ids over `[1..n]`.
pub fn special_function(f: Special, image: &[usize], n: usize) -> Result<LaurentPoly, VerifyError> {
    if image.len() != f.arity() {
        return Err(VerifyError::BadArity {
            expected: f.arity(),
            got: image.len(),
        });
    }
    let mut out = LaurentPoly::zero();
    'terms: for &(c, factors) in f.terms() {
        let mut coef = c;
        let mut mono = Monomial::one();
        for fac in factors {
            let cols: Vec<usize> = fac.iter().map(|&i| image[i - 1]).collect();
            match signed_pluecker(n, &cols)? {
                None => continue 'terms,
                Some((s, k)) => {
                    coef *= s;
                    mono = mono.mul(&Monomial::var(VarId::Pluecker(k)));
                }
            }
        }
        out.add_term(mono, rat_int(coef));
    }
    Ok(out)
}

/// `f` with indices permuted by `g`, with the sign chosen so that the value at
/// the totally positive point `x_j = j` is positive (as for cluster variables).
pub fn translate(f: Special, image: &[usize], n: usize) -> Result<LaurentPoly, VerifyError> {
    let p = special_function(f, image, n)?;
    let params: Vec<Rat> = (1..=n as i64).map(rat_int).collect();
    let pv = totally_positive_point(3, &params)?.plucker_vector();
    let v = eval_on_point(&p, &pv).expect("polynomial");
    Ok(if v.is_negative() { -&p } else { p })
}

/// Element `σ^r ρ^m` of the dihedral group of `[1..n]`: `ρ(i) = i + 1`,
/// `σ(i) = 2 − i` (mod n), with `ρ^m` applied first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dihedral {
    pub reflect: bool,
    pub rot: usize,
}

impl Dihedral {
    pub fn all(n: usize) -> Vec<Dihedral> {
        let mut v: Vec<Dihedral> = (0..n).map(|rot| Dihedral { reflect: false, rot }).collect();
        v.extend((0..n).map(|rot| Dihedral { reflect: true, rot }));
        v
    }

    pub fn apply(&self, i: usize, n: usize) -> usize {
        let r = (i - 1 + self.rot) % n + 1;
        if self.reflect {
            (2 * n + 2 - r - 1) % n + 1
        } else {
            r
        }
    }

    pub fn image(&self, n: usize) -> Vec<usize> {
        (1..=n).map(|i| self.apply(i, n)).collect()
    }

    /// Superscript such as `""`, `"^r3"`, `"^s"`, `"^sr5"`.
    pub fn suffix(&self) -> String {
        match (self.reflect, self.rot) {
            (false, 0) => String::new(),
            (false, 1) => "^r".to_string(),
            (false, m) => format!("^r{m}"),
            (true, 0) => "^s".to_string(),
            (true, 1) => "^sr".to_string(),
            (true, m) => format!("^sr{m}"),
        }
    }
}

fn digits(s: &[usize]) -> String {
    s.iter().map(|d| d.to_string()).collect()
}

/// A named regular function on `G(3, n)`.
#[derive(Clone, Debug)]
pub struct NamedFunction {
    pub name: String,
    pub poly: LaurentPoly,
}

/// Candidate names for cluster variables of `G(k, n)`: every `Δ`; for `k = 3`
/// also every `X^S`, `Y^S` over sorted 6-subsets `S`, and for `n = 8` the
/// dihedral translates of `A` and `B` (rotations first, duplicates up to sign dropped).
pub fn catalog(k: usize, n: usize) -> Vec<NamedFunction> {
    let mut out: Vec<NamedFunction> = all_ksubsets(k, n)
        .into_iter()
        .map(|s| NamedFunction {
            name: format!("D{}", digits(&s.members())),
            poly: LaurentPoly::var(VarId::Pluecker(s)),
        })
        .collect();
    if k != 3 {
        return out;
    }
    if n >= 6 {
        for s in all_ksubsets(6, n) {
            let m = s.members();
            for f in [Special::X, Special::Y] {
                out.push(NamedFunction {
                    name: format!("{f}{}", digits(&m)),
                    poly: special_function(f, &m, n).unwrap(),
                });
            }
        }
    }
    if n == 8 {
        for f in [Special::A, Special::B] {
            let mut seen: Vec<LaurentPoly> = Vec::new();
            for g in Dihedral::all(n) {
                let p = translate(f, &g.image(n), n).unwrap();
                if seen.iter().any(|q| *q == p || *q == -&p) {
                    continue;
                }
                seen.push(p.clone());
                out.push(NamedFunction {
                    name: format!("{f}{}", g.suffix()),
                    poly: p,
                });
            }
        }
    }
    out
}

/// Toral weight of a homogeneous polynomial in Plücker ids: the column
/// multiplicities of any term. `None` if terms disagree or a variable is not Plücker.
pub fn toral_weight(p: &LaurentPoly, n: usize) -> Option<Vec<i32>> {
    let mut w: Option<Vec<i32>> = None;
    for (m, _) in p.terms() {
        let mut v = vec![0i32; n];
        for &(x, e) in m.factors() {
            let s = x.as_pluecker()?;
            for c in s.iter() {
                v[c - 1] += e;
            }
        }
        match &w {
            None => w = Some(v),
            Some(prev) if *prev != v => return None,
            Some(_) => {}
        }
    }
    w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vec3(pub [Rat; 3]);

impl Vec3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Vec3 {
        Vec3([x, y, z])
    }

    pub fn from_slice(v: &[Rat]) -> Vec3 {
        Vec3([v[0].clone(), v[1].clone(), v[2].clone()])
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a, b, c] = &self.0;
        let [x, y, z] = &o.0;
        Vec3([b * z - c * y, c * x - a * z, a * y - b * x])
    }

    pub fn dot(&self, o: &Vec3) -> Rat {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

/// `u · (v × w)`, which is `det(u v w)`.
pub fn triple(u: &Vec3, v: &Vec3, w: &Vec3) -> Rat {
    u.dot(&v.cross(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, m: &[usize]) -> LaurentPoly {
        LaurentPoly::var(VarId::Pluecker(KSubset::new(n, m).unwrap()))
    }

    #[test]
    fn y_is_a_rotated_x() {
        // equal only modulo the Plücker relations, so compare values
        use crate::verify::{eval_on_point, point_rng, ConfigMatrix};
        let y = special_function(Special::Y, &[6, 1, 2, 3, 4, 5], 6).unwrap();
        let x = special_function(Special::X, &[1, 2, 3, 4, 5, 6], 6).unwrap();
        let mut signs = std::collections::BTreeSet::new();
        for t in 0..5 {
            let pv = ConfigMatrix::random(3, 6, &mut point_rng(3, t)).plucker_vector();
            let (a, b) = (eval_on_point(&y, &pv).unwrap(), eval_on_point(&x, &pv).unwrap());
            assert!(a == b || a == -&b);
            signs.insert(a == b);
        }
        assert_eq!(signs.len(), 1);
        assert!(special_function(Special::X, &[1, 2, 3], 6).is_err());
    }

    #[test]
    fn repeated_columns_vanish() {
        let p = special_function(Special::X, &[1, 2, 1, 4, 5, 6], 6).unwrap();
        assert_eq!(p, &d(6, &[1, 5, 6]) * &d(6, &[1, 2, 4]));
        assert_eq!(signed_pluecker(6, &[3, 1, 2]).unwrap().unwrap().0, 1);
        assert_eq!(signed_pluecker(6, &[2, 1, 3]).unwrap().unwrap().0, -1);
    }

    #[test]
    fn dihedral_convention() {
        let s = Dihedral { reflect: true, rot: 0 };
        assert_eq!(s.image(8), vec![1, 8, 7, 6, 5, 4, 3, 2]);
        let r = Dihedral { reflect: false, rot: 1 };
        assert_eq!(r.image(8), vec![2, 3, 4, 5, 6, 7, 8, 1]);
        let sr = Dihedral { reflect: true, rot: 1 };
        assert_eq!(sr.apply(1, 8), 8);
        assert_eq!(Dihedral::all(8).len(), 16);
    }

    #[test]
    fn weights() {
        let b = special_function(Special::B, &[1, 2, 3, 4, 5, 6, 7, 8], 8).unwrap();
        assert_eq!(toral_weight(&b, 8), Some(vec![1, 2, 1, 1, 1, 1, 1, 1]));
        let x = special_function(Special::X, &[1, 2, 3, 4, 5, 8], 8).unwrap();
        assert_eq!(toral_weight(&x, 8), Some(vec![1, 1, 1, 1, 1, 0, 0, 1]));
    }

    #[test]
    fn cross_basics() {
        let e = |i: usize| {
            let mut v = [rat_int(0), rat_int(0), rat_int(0)];
            v[i] = rat_int(1);
            Vec3(v)
        };
        assert_eq!(e(0).cross(&e(1)), e(2));
        assert_eq!(triple(&e(0), &e(1), &e(2)), rat_int(1));
    }
}
