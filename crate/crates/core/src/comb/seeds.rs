use std::collections::{HashMap, HashSet};

use super::{akn_labels, unique_exchange, CombError, KSubset, Triangulation, WSCollection};
use crate::algebra::VarId;
use crate::cluster::{ExtMatrix, Seed};

fn row_order(c: &WSCollection, mutable: &[KSubset]) -> Vec<KSubset> {
    let mut rows = mutable.to_vec();
    rows.extend(c.frozen());
    rows
}

/// Exchange matrix of a collection whose mutable labels all admit a
/// (2,4)-exchange. Column `L` is `−1` on `{Iab, Icd}` and `+1` on `{Iad, Ibc}`
/// times a sign `s_L`; the signs are propagated so the principal part is
/// skew-symmetric, with the first column of each component keeping `s_L = +1`.
pub fn exchange_sign_matrix(c: &WSCollection, mutable: &[KSubset]) -> Result<ExtMatrix, CombError> {
    let rows = row_order(c, mutable);
    let pos: HashMap<KSubset, usize> = rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let nc = mutable.len();
    let mut raw = vec![vec![0i32; nc]; rows.len()];
    for (col, l) in mutable.iter().enumerate() {
        let ex = unique_exchange(c, l)?;
        for s in ex.minus {
            raw[pos[&s]][col] = -1;
        }
        for s in ex.plus {
            raw[pos[&s]][col] = 1;
        }
    }
    let mut sign: Vec<Option<i32>> = vec![None; nc];
    for root in 0..nc {
        if sign[root].is_some() {
            continue;
        }
        sign[root] = Some(1);
        let mut stack = vec![root];
        while let Some(l) = stack.pop() {
            let sl = sign[l].unwrap();
            for m in 0..nc {
                let (a, b) = (raw[m][l], raw[l][m]);
                if a == 0 && b == 0 {
                    continue;
                }
                if a == 0 || b == 0 {
                    return Err(CombError::SignConflict(mutable[l], mutable[m]));
                }
                // s_l * a = -s_m * b
                let sm = -sl * a / b;
                match sign[m] {
                    None => {
                        sign[m] = Some(sm);
                        stack.push(m);
                    }
                    Some(x) if x != sm => {
                        return Err(CombError::SignConflict(mutable[l], mutable[m]))
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let labels: Vec<VarId> = rows.iter().map(|s| VarId::Pluecker(*s)).collect();
    let mut m = ExtMatrix::zeros(labels, nc);
    for (r, row) in raw.iter().enumerate() {
        for col in 0..nc {
            m.set(r, col, row[col] * sign[col].unwrap());
        }
    }
    Ok(m)
}

/// Seed of a maximal weakly separated collection with the mutable labels in `order`.
pub fn seed_from_collection(c: &WSCollection, order: &[KSubset]) -> Result<Seed, CombError> {
    let set: HashSet<KSubset> = order.iter().copied().collect();
    let want: HashSet<KSubset> = c.mutable().into_iter().collect();
    if set != want || set.len() != order.len() {
        return Err(CombError::Parse(
            "order must list each mutable label once".to_string(),
        ));
    }
    Ok(Seed::new(exchange_sign_matrix(c, order)?))
}

/// The seed of `A_{k,n}`: interior labels in row-major grid order, then the
/// boundary intervals `[1..k], [2..k+1], …`.
pub fn build_initial_seed(k: usize, n: usize) -> Result<Seed, CombError> {
    let a = akn_labels(k, n)?;
    let c = WSCollection::new(k, n, a.all());
    seed_from_collection(&c, &a.interior())
}

/// Seed of a triangulation of the n-gon (vertices labeled clockwise):
/// `b_{[ij],[ik]} = +1` when `i, j, k` run counter-clockwise, `−1` otherwise,
/// for `[ij]` and `[ik]` two sides of one triangle.
pub fn triangulation_seed(t: &Triangulation) -> Result<Seed, CombError> {
    let n = t.n;
    if n < 4 || !t.is_maximal() {
        return Err(CombError::BadTriangulation("not maximal".to_string()));
    }
    let ks = |i: usize, j: usize| KSubset::new(n, &[i, j]).unwrap();
    let mutable: Vec<KSubset> = t.chords.iter().map(|c| ks(c.a, c.b)).collect();
    let mut rows = mutable.clone();
    rows.extend((1..=n).map(|i| KSubset::interval(n, i, 2)));
    let pos: HashMap<KSubset, usize> = rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let labels: Vec<VarId> = rows.iter().map(|s| VarId::Pluecker(*s)).collect();
    let mut m = ExtMatrix::zeros(labels, mutable.len());
    // going increasingly from i, k is met before j
    let ccw = |i: usize, j: usize, k: usize| (k + n - i) % n < (j + n - i) % n;
    for (col, c) in t.chords.iter().enumerate() {
        let (p, q) = t
            .quadrilateral(*c)
            .ok_or_else(|| CombError::BadTriangulation(format!("{c:?}")))?;
        for apex in [p, q] {
            for (i, k) in [(c.a, c.b), (c.b, c.a)] {
                let j = apex;
                let row = pos[&ks(i, j)];
                m.set(row, col, if ccw(i, j, k) { 1 } else { -1 });
            }
        }
    }
    Ok(Seed::new(m))
}

/// Quiver of a collection read off its white cliques: for each `(k-1)`-set
/// `K`, the labels `K ∪ a` in the collection, ordered by `a`, form a cycle with
/// arrows `K∪a_{i+1} → K∪a_i`. Each arrow crosses one edge of the plabic graph,
/// so the black cliques carry no further information. Opposite arrows cancel,
/// arrows between two boundary labels are dropped. Independent of
/// [`exchange_sign_matrix`].
pub fn plabic_quiver(c: &WSCollection) -> HashMap<(KSubset, KSubset), i32> {
    let n = c.n;
    let mut arrows: HashMap<(KSubset, KSubset), i32> = HashMap::new();
    let mut add = |x: KSubset, y: KSubset| {
        if x.is_interval() && y.is_interval() {
            return;
        }
        *arrows.entry((x, y)).or_insert(0) += 1;
        *arrows.entry((y, x)).or_insert(0) -= 1;
    };
    let mut white: HashSet<u64> = HashSet::new();
    for s in &c.labels {
        for a in s.iter() {
            white.insert(s.bits() & !(1u64 << (a - 1)));
        }
    }
    let mut white: Vec<u64> = white.into_iter().collect();
    white.sort_unstable();
    for kb in white {
        let mem: Vec<KSubset> = (1..=n)
            .filter(|&a| kb & (1u64 << (a - 1)) == 0)
            .map(|a| KSubset::from_bits(n, kb | (1u64 << (a - 1))))
            .filter(|s| c.contains(s))
            .collect();
        if mem.len() >= 3 {
            for i in 0..mem.len() {
                add(mem[(i + 1) % mem.len()], mem[i]);
            }
        }
    }
    arrows.retain(|_, v| *v != 0);
    arrows
}

/// Initial seed with the vertex numbering used by the known Dynkin sequences.
#[derive(Clone, Debug)]
pub struct NumberedSeed {
    pub k: usize,
    pub n: usize,
    pub seed: Seed,
    /// `vertices[v-1]` is the label at vertex `v`.
    pub vertices: Vec<KSubset>,
    /// Mutation sequence (1-based vertices) reaching a bipartite Dynkin quiver.
    pub sequence: Vec<usize>,
    pub dynkin: &'static str,
}

/// Numbered seeds for G(3,6), G(3,7), G(3,8).
///
/// For G(3,7) the collection is `A_{3,7}` reflected by `i ↦ 5 − i (mod 7)`.
pub fn numbered_seed(k: usize, n: usize) -> Result<NumberedSeed, CombError> {
    let (labels, sequence, dynkin): (&[&[usize]], Vec<usize>, &'static str) = match (k, n) {
        (3, 6) => (
            &[&[2, 3, 6], &[3, 4, 6], &[1, 3, 6], &[3, 5, 6]],
            vec![4, 2, 4, 1],
            "D4",
        ),
        (3, 7) => (
            &[
                &[1, 5, 6],
                &[1, 2, 5],
                &[1, 2, 4],
                &[1, 4, 5],
                &[2, 4, 5],
                &[1, 5, 7],
            ],
            vec![2, 4, 3, 5, 6, 5, 1],
            "E6",
        ),
        (3, 8) => (
            &[
                &[1, 4, 5],
                &[1, 3, 4],
                &[1, 4, 8],
                &[1, 5, 8],
                &[5, 7, 8],
                &[5, 6, 8],
                &[4, 5, 8],
                &[1, 2, 4],
            ],
            vec![1, 3, 7, 6, 5, 2, 4, 3, 8, 7, 6, 8],
            "E8",
        ),
        _ => return Err(CombError::NoNumberedSeed { k, n }),
    };
    let vertices: Vec<KSubset> = labels
        .iter()
        .map(|m| KSubset::new(n, m))
        .collect::<Result<_, _>>()?;
    let c = WSCollection::new(k, n, vertices.iter().copied());
    let seed = seed_from_collection(&c, &vertices)?;
    Ok(NumberedSeed {
        k,
        n,
        seed,
        vertices,
        sequence,
        dynkin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_entries_per_column() {
        let s = build_initial_seed(3, 8).unwrap();
        for c in 0..s.rank() {
            let col = s.matrix.column(c);
            assert_eq!(col.iter().filter(|&&v| v == 1).count(), 2);
            assert_eq!(col.iter().filter(|&&v| v == -1).count(), 2);
        }
        assert!(s.matrix.is_principal_skew_symmetric());
    }

    #[test]
    fn numbered_seeds_build() {
        for (k, n) in [(3, 6), (3, 7), (3, 8)] {
            let p = numbered_seed(k, n).unwrap();
            assert_eq!(p.seed.rank(), (k - 1) * (n - k - 1));
        }
        assert!(numbered_seed(3, 9).is_err());
    }
}
