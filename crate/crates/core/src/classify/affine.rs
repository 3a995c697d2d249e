use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::quiver::{recognize_dynkin, CartanSpec, Quiver};
use crate::cluster::mutate_square;

fn refine(b: &[Vec<i32>], mut colors: Vec<usize>) -> Vec<usize> {
    let n = b.len();
    let mut classes = colors.iter().collect::<HashSet<_>>().len();
    loop {
        let sigs: Vec<(usize, Vec<(usize, i32)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(usize, i32)> = (0..n)
                    .filter(|&w| b[v][w] != 0)
                    .map(|w| (colors[w], b[v][w]))
                    .collect();
                s.sort_unstable();
                (colors[v], s)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colors = sigs
            .iter()
            .map(|s| distinct.binary_search(s).unwrap())
            .collect();
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

fn search(b: &[Vec<i32>], colors: Vec<usize>, best: &mut Option<Vec<i32>>) {
    let colors = refine(b, colors);
    let n = b.len();
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c] += 1;
    }
    let target = (0..n).filter(|&c| size[c] > 1).min_by_key(|&c| (size[c], c));
    match target {
        None => {
            let mut m = vec![0i32; n * n];
            for i in 0..n {
                for j in 0..n {
                    m[colors[i] * n + colors[j]] = b[i][j];
                }
            }
            if best.as_ref().is_none_or(|x| m < *x) {
                *best = Some(m);
            }
        }
        Some(c) => {
            for v in (0..n).filter(|&v| colors[v] == c) {
                let split = colors
                    .iter()
                    .enumerate()
                    .map(|(u, &x)| 2 * x + usize::from(x == c && u != v))
                    .collect();
                search(b, split, best);
            }
        }
    }
}

/// Canonical form of a square matrix under simultaneous row/column
/// permutation: color refinement plus individualization, keeping the
/// lexicographically least flattened matrix.
pub fn canonical_form(b: &[Vec<i32>]) -> Vec<i32> {
    if b.is_empty() {
        return Vec::new();
    }
    let mut best = None;
    search(b, vec![0; b.len()], &mut best);
    best.unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineKind {
    /// Two vertices joined by an arrow of weight at least 2.
    Kronecker,
    /// Non-oriented cycle on `m + 1` vertices.
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for AffineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineKind::Kronecker => write!(f, "~A1"),
            AffineKind::A(m) => write!(f, "~A{m}"),
            AffineKind::D(m) => write!(f, "~D{m}"),
            AffineKind::E(m) => write!(f, "~E{m}"),
        }
    }
}

fn arm_lengths(adj: &[Vec<usize>], center: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for &start in &adj[center] {
        let (mut prev, mut cur, mut len) = (center, start, 1);
        while adj[cur].len() == 2 {
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            prev = cur;
            cur = next;
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// Affine type of the subgraph induced on `s`, if it is an acyclically
/// oriented simply-laced affine diagram.
pub fn induced_affine(b: &[Vec<i32>], s: &[usize]) -> Option<AffineKind> {
    let m = s.len();
    if m == 2 && b[s[0]][s[1]].abs() >= 2 {
        return Some(AffineKind::Kronecker);
    }
    if m < 3 || s.iter().any(|&i| s.iter().any(|&j| b[i][j].abs() >= 2)) {
        return None;
    }
    let adj: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).filter(|&j| b[s[i]][s[j]] != 0).collect())
        .collect();
    let edges: usize = adj.iter().map(|a| a.len()).sum::<usize>() / 2;
    let mut seen = vec![false; m];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if !seen.iter().all(|&x| x) {
        return None;
    }
    let deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    if edges == m {
        if deg.iter().any(|&d| d != 2) {
            return None;
        }
        let out_deg = |i: usize| (0..m).filter(|&j| b[s[i]][s[j]] > 0).count();
        let oriented = (0..m).all(|i| out_deg(i) == 1);
        return (!oriented).then_some(AffineKind::A(m - 1));
    }
    if edges + 1 != m {
        return None;
    }
    let branch: Vec<usize> = (0..m).filter(|&i| deg[i] >= 3).collect();
    match branch.as_slice() {
        [c] if deg[*c] == 4 && m == 5 => Some(AffineKind::D(4)),
        [c] if deg[*c] == 3 => match arm_lengths(&adj, *c).as_slice() {
            [2, 2, 2] => Some(AffineKind::E(6)),
            [1, 3, 3] => Some(AffineKind::E(7)),
            [1, 2, 5] => Some(AffineKind::E(8)),
            _ => None,
        },
        [u, v] if deg[*u] == 3 && deg[*v] == 3 => {
            let leaves = |x: usize| adj[x].iter().filter(|&&w| deg[w] == 1).count();
            (leaves(*u) == 2 && leaves(*v) == 2).then_some(AffineKind::D(m - 1))
        }
        _ => None,
    }
}

/// Smallest induced affine subdiagram (vertex subsets of size at most 9).
pub fn find_affine_subgraph(b: &[Vec<i32>]) -> Option<(Vec<usize>, AffineKind)> {
    let n = b.len();
    for i in 0..n {
        for j in i + 1..n {
            if b[i][j].abs() >= 2 {
                return Some((vec![i, j], AffineKind::Kronecker));
            }
        }
    }
    for size in 3..=n.min(9) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if let Some(kind) = induced_affine(b, &idx) {
                return Some((idx, kind));
            }
            // next combination in lexicographic order
            let mut p = size;
            while p > 0 && idx[p - 1] == n - size + p - 1 {
                p -= 1;
            }
            if p == 0 {
                break;
            }
            idx[p - 1] += 1;
            for q in p..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineWitness {
    /// 0-based mutation positions from the starting matrix.
    pub path: Vec<usize>,
    pub matrix: Vec<Vec<i32>>,
    pub vertices: Vec<usize>,
    pub kind: AffineKind,
}

/// Breadth-first search of the mutation class of `b0` (matrices up to
/// relabeling), at most `depth_cap` mutations deep and `max_nodes` classes.
/// `visit` gets each matrix with its 0-based path and stops the search by
/// returning `true`; the result says whether it did.
pub(crate) fn search_class(
    b0: &[Vec<i32>],
    depth_cap: usize,
    max_nodes: usize,
    mut visit: impl FnMut(&[Vec<i32>], &[usize]) -> bool,
) -> bool {
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let mut queue: VecDeque<(Vec<Vec<i32>>, Vec<usize>)> = VecDeque::new();
    seen.insert(canonical_form(b0));
    queue.push_back((b0.to_vec(), Vec::new()));
    while let Some((b, path)) = queue.pop_front() {
        if visit(&b, &path) {
            return true;
        }
        if path.len() >= depth_cap {
            continue;
        }
        for k in 0..b.len() {
            let m = mutate_square(&b, k);
            if seen.len() < max_nodes && seen.insert(canonical_form(&m)) {
                let mut p = path.clone();
                p.push(k);
                queue.push_back((m, p));
            }
        }
    }
    false
}

pub fn find_affine_certificate(
    b0: &[Vec<i32>],
    depth_cap: usize,
    max_nodes: usize,
) -> Option<AffineWitness> {
    let mut out = None;
    search_class(b0, depth_cap, max_nodes, |b, path| {
        if let Some((vertices, kind)) = find_affine_subgraph(b) {
            out = Some(AffineWitness {
                path: path.to_vec(),
                matrix: b.to_vec(),
                vertices,
                kind,
            });
            return true;
        }
        false
    });
    out
}

/// Mutation path (0-based) to a quiver whose underlying graph is Dynkin.
pub fn find_dynkin_path(
    b0: &[Vec<i32>],
    depth_cap: usize,
    max_nodes: usize,
) -> Option<(Vec<usize>, CartanSpec)> {
    let mut out = None;
    search_class(b0, depth_cap, max_nodes, |b, path| {
        out = recognize_dynkin(&Quiver::from_square(b.to_vec())).map(|s| (path.to_vec(), s));
        out.is_some()
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_ignores_labels() {
        let b = vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]];
        let c = vec![vec![0, 0, -1], vec![0, 0, 1], vec![1, -1, 0]];
        assert_eq!(canonical_form(&b), canonical_form(&c));
        let cyc = vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]];
        assert_ne!(canonical_form(&b), canonical_form(&cyc));
    }

    #[test]
    fn affine_shapes() {
        let cyc = vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]];
        assert_eq!(find_affine_subgraph(&cyc), None);
        let acyc = vec![vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]];
        assert_eq!(find_affine_subgraph(&acyc), Some((vec![0, 1, 2], AffineKind::A(2))));
        let kr = vec![vec![0, 2], vec![-2, 0]];
        assert_eq!(find_affine_subgraph(&kr).unwrap().1, AffineKind::Kronecker);
        let mut star = vec![vec![0; 5]; 5];
        for j in 1..5 {
            star[0][j] = 1;
            star[j][0] = -1;
        }
        assert_eq!(find_affine_subgraph(&star).unwrap().1, AffineKind::D(4));
    }

    #[test]
    fn a3_class_has_no_certificate() {
        let b = vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]];
        assert!(find_affine_certificate(&b, 10, 1000).is_none());
        let (path, spec) = find_dynkin_path(&b, 3, 100).unwrap();
        assert!(path.is_empty());
        assert_eq!(spec.ty.to_string(), "A3");
    }
}
