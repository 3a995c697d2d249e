use num_traits::Zero;
use rand::Rng;
use serde_json::json;

use super::checks::{point_rng, Report};
use super::config::det;
use super::VerifyError;
use crate::algebra::{rat, Rat};

/// `λ_J = (j_k − k, …, j_1 − 1)` for `J = {j_1 < … < j_k}`.
pub fn lambda_of(j: &[usize]) -> Vec<usize> {
    let mut s = j.to_vec();
    s.sort_unstable();
    let mut l: Vec<usize> = s.iter().enumerate().map(|(r, &x)| x - (r + 1)).collect();
    l.reverse();
    l
}

/// Schur polynomial at `xs` (pairwise distinct) via the bialternant formula.
pub fn schur_eval(lambda: &[usize], xs: &[Rat]) -> Rat {
    let m = xs.len();
    let parts: Vec<usize> = lambda.iter().copied().filter(|&p| p > 0).collect();
    if parts.len() > m {
        return Rat::zero();
    }
    let mut l = parts;
    l.resize(m, 0);
    let alt = |shift: &dyn Fn(usize) -> usize| {
        det(xs
            .iter()
            .map(|x| (0..m).map(|c| num_traits::pow(x.clone(), shift(c))).collect())
            .collect())
    };
    alt(&|c| l[c] + m - 1 - c) / alt(&|c| m - 1 - c)
}

/// `s_{λ(Iac)} s_{λ(Ibd)} = s_{λ(Iab)} s_{λ(Icd)} + s_{λ(Iad)} s_{λ(Ibc)}` at
/// `trials` random points in `vars` variables, with `{a,…,d} = {i,j,s,t}` sorted.
pub fn verify_schur_analogue(
    core: &[usize],
    (i, j): (usize, usize),
    (s, t): (usize, usize),
    vars: usize,
    trials: usize,
    seed: u64,
) -> Result<Report, VerifyError> {
    let (lo, hi) = (i.min(j), i.max(j));
    let mut four = vec![i, j, s, t];
    four.sort_unstable();
    four.dedup();
    if four.len() != 4 || four.iter().any(|x| core.contains(x)) || (lo < s && s < hi) == (lo < t && t < hi) {
        return Err(VerifyError::NotCrossing);
    }
    let (a, b, c, d) = (four[0], four[1], four[2], four[3]);
    let lam = |x: usize, y: usize| {
        let mut v = core.to_vec();
        v.push(x);
        v.push(y);
        lambda_of(&v)
    };
    let mut failures = 0;
    for trial in 0..trials {
        let mut rng = point_rng(seed, trial as u64);
        let xs: Vec<Rat> = loop {
            let xs: Vec<Rat> = (0..vars)
                .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=9)))
                .collect();
            if (0..vars).all(|p| (p + 1..vars).all(|q| xs[p] != xs[q])) {
                break xs;
            }
        };
        let e = |x: usize, y: usize| schur_eval(&lam(x, y), &xs);
        if e(a, c) * e(b, d) != e(a, b) * e(c, d) + e(a, d) * e(b, c) {
            failures += 1;
        }
    }
    Ok(Report {
        check: "schur-analogue".to_string(),
        params: json!({"core": core, "i": i, "j": j, "s": s, "t": t, "vars": vars, "seed": seed}),
        trials,
        failures,
        witness: None,
    })
}

/// A crossing configuration `(I, {i,j}, {s,t})` with a variable count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurInstance {
    pub core: Vec<usize>,
    pub ij: (usize, usize),
    pub st: (usize, usize),
    pub vars: usize,
}

/// Random crossing instance number `index` drawn from `seed`: ground set
/// `[1..n]` with `6 <= n <= 10`, `|I| <= 3`, and `|I| + 2` variables or one more.
pub fn random_schur_instance(seed: u64, index: u64) -> SchurInstance {
    let mut rng = point_rng(seed ^ 0x5c4u64, index);
    let n = rng.gen_range(6..=10usize);
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut pick = |rng: &mut rand_chacha::ChaCha8Rng| pool.swap_remove(rng.gen_range(0..pool.len()));
    let mut four: Vec<usize> = (0..4).map(|_| pick(&mut rng)).collect();
    four.sort_unstable();
    let size = rng.gen_range(0..=3usize.min(n - 4));
    let mut core: Vec<usize> = (0..size).map(|_| pick(&mut rng)).collect();
    core.sort_unstable();
    let vars = core.len() + 2 + rng.gen_range(0..=1usize);
    SchurInstance {
        core,
        ij: (four[0], four[2]),
        st: (four[1], four[3]),
        vars,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_int;

    #[test]
    fn trivial_partition() {
        assert_eq!(lambda_of(&[1, 2, 3]), vec![0, 0, 0]);
        assert_eq!(schur_eval(&[0, 0], &[rat_int(2), rat_int(5)]), rat_int(1));
    }

    #[test]
    fn small_schur_values() {
        // s_(1) = x + y, s_(1,1) = xy, s_(2) = x² + xy + y²
        let xs = [rat_int(2), rat_int(3)];
        assert_eq!(schur_eval(&[1], &xs), rat_int(5));
        assert_eq!(schur_eval(&[1, 1], &xs), rat_int(6));
        assert_eq!(schur_eval(&[2], &xs), rat_int(19));
        assert_eq!(schur_eval(&[1, 1, 1], &xs), rat_int(0));
    }
}
