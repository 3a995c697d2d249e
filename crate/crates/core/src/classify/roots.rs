use std::collections::{BTreeSet, HashSet, VecDeque};

use super::quiver::{CartanSpec, Sign};

/// Coefficients over the simple roots.
pub type RootVec = Vec<i32>;

/// Positive roots of a simply-laced Cartan matrix, closing the simple roots
/// under simple reflections; sorted by height, then lexicographically.
pub fn positive_roots(cartan: &[Vec<i32>]) -> Vec<RootVec> {
    let n = cartan.len();
    let simple = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let mut seen: HashSet<RootVec> = (0..n).map(simple).collect();
    let mut queue: VecDeque<RootVec> = (0..n).map(simple).collect();
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let pairing: i32 = (0..n).map(|j| b[j] * cartan[j][i]).sum();
            let mut r = b.clone();
            r[i] -= pairing;
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut out: Vec<RootVec> = seen.into_iter().collect();
    out.sort_by_key(|r| (r.iter().sum::<i32>(), r.clone()));
    out
}

/// Exponents as the partition dual to the numbers of positive roots of each height.
pub fn exponents_from_heights(pos: &[RootVec]) -> Vec<usize> {
    let max_h = pos.iter().map(|r| r.iter().sum::<i32>() as usize).max().unwrap_or(0);
    let mut count = vec![0usize; max_h + 2];
    for r in pos {
        count[r.iter().sum::<i32>() as usize] += 1;
    }
    let mut out = Vec::new();
    for h in 1..=max_h {
        for _ in count[h + 1]..count[h] {
            out.push(h);
        }
    }
    out
}

/// Positive roots followed by the negative simple roots.
pub fn almost_positive_roots(spec: &CartanSpec) -> Vec<RootVec> {
    let n = spec.rank();
    let mut out = positive_roots(&spec.cartan);
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = -1;
        out.push(v);
    }
    out
}

pub fn is_almost_positive(alpha: &[i32], spec: &CartanSpec) -> bool {
    let neg: Vec<usize> = (0..alpha.len()).filter(|&i| alpha[i] < 0).collect();
    if neg.is_empty() {
        return positive_roots(&spec.cartan).iter().any(|r| r == alpha);
    }
    neg.len() == 1 && alpha[neg[0]] == -1 && alpha.iter().filter(|&&x| x != 0).count() == 1
}

/// `[τ_ε α : α_i] = −[α : α_i] − Σ_{j≠i} a_ij max([α : α_j], 0)` when
/// `ε(i) = sign`, unchanged otherwise. Panics on a non-bipartite spec.
pub fn tau(sign: Sign, alpha: &[i32], spec: &CartanSpec) -> RootVec {
    let eps = spec.epsilon.as_ref().expect("bipartite quiver");
    let n = alpha.len();
    (0..n)
        .map(|i| {
            if eps[i] == sign {
                let s: i32 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| spec.cartan[i][j] * alpha[j].max(0))
                    .sum();
                -alpha[i] - s
            } else {
                alpha[i]
            }
        })
        .collect()
}

/// Orbits of `⟨τ₊, τ₋⟩` on the almost positive roots, in order of first element.
pub fn tau_orbits(spec: &CartanSpec) -> Vec<Vec<RootVec>> {
    let all = almost_positive_roots(spec);
    let mut done: HashSet<RootVec> = HashSet::new();
    let mut out = Vec::new();
    for r in &all {
        if done.contains(r) {
            continue;
        }
        let mut orbit: BTreeSet<RootVec> = BTreeSet::new();
        let mut stack = vec![r.clone()];
        while let Some(x) = stack.pop() {
            if !orbit.insert(x.clone()) {
                continue;
            }
            for s in [Sign::Plus, Sign::Minus] {
                let y = tau(s, &x, spec);
                if !orbit.contains(&y) {
                    stack.push(y);
                }
            }
        }
        done.extend(orbit.iter().cloned());
        out.push(orbit.into_iter().collect());
    }
    out
}

/// `∏ (e_i + h + 1) / (e_i + 1)`: the number of clusters of finite type.
pub fn cluster_count(exponents: &[usize], h: usize) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for &e in exponents {
        num *= (e + h + 1) as u128;
        den *= (e + 1) as u128;
    }
    num / den
}
