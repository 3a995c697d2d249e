use std::collections::BTreeSet;

use super::{all_ksubsets, CombError, KSubset};

/// True iff `I − J` and `J − I` do not interleave around the cycle.
pub fn weakly_separated(i: &KSubset, j: &KSubset) -> bool {
    let a = i.minus(j);
    let b = j.minus(i);
    let n = i.n();
    // count colour changes around the cycle among elements of a ∪ b
    let mut seq = Vec::new();
    for t in 0..n {
        let bit = 1u64 << t;
        if a & bit != 0 {
            seq.push(true);
        } else if b & bit != 0 {
            seq.push(false);
        }
    }
    if seq.len() < 2 {
        return true;
    }
    let changes = (0..seq.len())
        .filter(|&t| seq[t] != seq[(t + 1) % seq.len()])
        .count();
    changes <= 2
}

/// The n cyclic intervals `[i..i+k-1]`.
pub fn frozen_intervals(k: usize, n: usize) -> Vec<KSubset> {
    (1..=n).map(|i| KSubset::interval(n, i, k)).collect()
}

/// A pairwise weakly separated collection containing the boundary intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WSCollection {
    pub k: usize,
    pub n: usize,
    pub labels: BTreeSet<KSubset>,
}

impl WSCollection {
    pub fn new(k: usize, n: usize, labels: impl IntoIterator<Item = KSubset>) -> Self {
        let mut set: BTreeSet<KSubset> = labels.into_iter().collect();
        set.extend(frozen_intervals(k, n));
        WSCollection { k, n, labels: set }
    }

    pub fn frozen(&self) -> Vec<KSubset> {
        frozen_intervals(self.k, self.n)
    }

    pub fn is_frozen(&self, s: &KSubset) -> bool {
        s.is_interval()
    }

    pub fn mutable(&self) -> Vec<KSubset> {
        self.labels
            .iter()
            .filter(|s| !self.is_frozen(s))
            .copied()
            .collect()
    }

    pub fn contains(&self, s: &KSubset) -> bool {
        self.labels.contains(s)
    }

    pub fn is_pairwise_ws(&self) -> bool {
        let v: Vec<&KSubset> = self.labels.iter().collect();
        v.iter()
            .enumerate()
            .all(|(t, a)| v[t + 1..].iter().all(|b| weakly_separated(a, b)))
    }

    pub fn max_size(&self) -> usize {
        self.k * (self.n - self.k) + 1
    }

    pub fn replace(&self, old: &KSubset, new: KSubset) -> WSCollection {
        let mut labels = self.labels.clone();
        labels.remove(old);
        labels.insert(new);
        WSCollection {
            k: self.k,
            n: self.n,
            labels,
        }
    }

    /// One label per line in the text form `[i1,i2,...]`.
    pub fn to_text(&self) -> String {
        self.labels.iter().map(|s| format!("{s}\n")).collect()
    }
}

/// A (2,4)-exchange `L = Iac ↔ L' = Ibd` with `a < b < c < d` up to rotation.
///
/// `minus` holds `{Iab, Icd}` and `plus` holds `{Iad, Ibc}`; this split fixes
/// the sign convention of the derived exchange matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exchange {
    pub label: KSubset,
    pub partner: KSubset,
    pub minus: [KSubset; 2],
    pub plus: [KSubset; 2],
}

/// Finds the unique `Ist` replacing the mutable label `L = Iij` in `c`.
pub fn unique_exchange(c: &WSCollection, l: &KSubset) -> Result<Exchange, CombError> {
    if !c.contains(l) {
        return Err(CombError::NotInCollection(*l));
    }
    if c.is_frozen(l) {
        return Err(CombError::Frozen(*l));
    }
    let n = c.n;
    let inside: Vec<usize> = l.iter().collect();
    let outside: Vec<usize> = (1..=n).filter(|&x| !l.contains(x)).collect();
    let mut found: Option<Exchange> = None;
    for (p, &i) in inside.iter().enumerate() {
        for &j in &inside[p + 1..] {
            for (q, &s) in outside.iter().enumerate() {
                for &t in &outside[q + 1..] {
                    // {i, j} and {s, t} must interleave
                    let between = |x: usize| i < x && x < j;
                    if between(s) == between(t) {
                        continue;
                    }
                    let core = l.bits() & !(1u64 << (i - 1)) & !(1u64 << (j - 1));
                    let lab = |x: usize, y: usize| {
                        KSubset::from_bits(n, core | (1u64 << (x - 1)) | (1u64 << (y - 1)))
                    };
                    let partner = lab(s, t);
                    if c.contains(&partner) {
                        continue;
                    }
                    let sides = [lab(i, s), lab(j, t), lab(i, t), lab(j, s)];
                    if !sides.iter().all(|x| c.contains(x)) {
                        continue;
                    }
                    if !c
                        .labels
                        .iter()
                        .filter(|x| *x != l)
                        .all(|x| weakly_separated(x, &partner))
                    {
                        continue;
                    }
                    let ex = orient(*l, partner, core, [i, j, s, t]);
                    match &found {
                        None => found = Some(ex),
                        Some(prev) if *prev == ex => {}
                        Some(_) => return Err(CombError::Ambiguous(*l)),
                    }
                }
            }
        }
    }
    found.ok_or(CombError::NoExchange(*l))
}

fn orient(label: KSubset, partner: KSubset, core: u64, four: [usize; 4]) -> Exchange {
    let mut w = four;
    w.sort_unstable();
    let n = label.n();
    let lab = |x: usize, y: usize| KSubset::from_bits(n, core | (1u64 << (x - 1)) | (1u64 << (y - 1)));
    // rotate so that the label holds positions a and c
    let (a, b, c, d) = if label.contains(w[0]) {
        (w[0], w[1], w[2], w[3])
    } else {
        (w[1], w[2], w[3], w[0])
    };
    let mut minus = [lab(a, b), lab(c, d)];
    let mut plus = [lab(a, d), lab(b, c)];
    minus.sort();
    plus.sort();
    Exchange {
        label,
        partner,
        minus,
        plus,
    }
}

/// All maximal pairwise weakly separated collections containing the boundary
/// intervals, by Bron–Kerbosch over the compatibility graph; refuses
/// instances with `k(n-k) > cap`.
pub fn enumerate_maximal_ws(k: usize, n: usize, cap: usize) -> Result<Vec<WSCollection>, CombError> {
    if k * (n - k) > cap {
        return Err(CombError::CapExceeded(k * (n - k), cap));
    }
    let frozen = frozen_intervals(k, n);
    let cand: Vec<KSubset> = all_ksubsets(k, n)
        .into_iter()
        .filter(|s| !s.is_interval())
        .collect();
    let m = cand.len();
    let adj: Vec<Vec<bool>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| a != b && weakly_separated(&cand[a], &cand[b]))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(&adj, &mut r, (0..m).collect(), Vec::new(), &mut |clique| {
        out.push(WSCollection::new(
            k,
            n,
            clique.iter().map(|&i| cand[i]).chain(frozen.iter().copied()),
        ))
    });
    out.sort_by(|a, b| a.labels.cmp(&b.labels));
    Ok(out)
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: &mut Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if p.is_empty() && x.is_empty() {
        emit(r);
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count())
        .unwrap();
    let mut p = p;
    let mut x = x;
    let branch: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
    for v in branch {
        r.push(v);
        let np = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r, np, nx, emit);
        r.pop();
        p.retain(|&w| w != v);
        x.push(v);
    }
}
