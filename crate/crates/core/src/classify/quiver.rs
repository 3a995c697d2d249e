use std::fmt;

use crate::algebra::VarId;
use crate::cluster::{ExtMatrix, Seed};

/// Mutable part of a seed as a weighted digraph: `x → y` iff `b[x][y] > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<VarId>,
    pub b: Vec<Vec<i32>>,
}

impl Quiver {
    pub fn from_seed(s: &Seed) -> Quiver {
        Quiver::from_matrix(&s.matrix)
    }

    pub fn from_matrix(m: &ExtMatrix) -> Quiver {
        let nc = m.ncols();
        Quiver {
            vertices: m.col_labels().to_vec(),
            b: (0..nc).map(|i| (0..nc).map(|j| m.get(i, j)).collect()).collect(),
        }
    }

    pub fn from_square(b: Vec<Vec<i32>>) -> Quiver {
        let vertices = (0..b.len() as u32).map(VarId::Anon).collect();
        Quiver { vertices, b }
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.b[i][j] != 0).collect()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.b.iter().flatten().all(|x| x.abs() <= 1)
    }

    pub fn reversed(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            b: self.b.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    /// No arrow leaves `i`.
    pub fn is_sink(&self, i: usize) -> bool {
        self.b[i].iter().all(|&x| x <= 0)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.b[i].iter().all(|&x| x >= 0)
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(r) | DynkinType::D(r) | DynkinType::E(r) => r,
        }
    }

    pub fn coxeter_number(&self) -> usize {
        match *self {
            DynkinType::A(r) => r + 1,
            DynkinType::D(r) => 2 * r - 2,
            DynkinType::E(6) => 12,
            DynkinType::E(7) => 18,
            DynkinType::E(8) => 30,
            DynkinType::E(r) => panic!("no E{r}"),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(r) => write!(f, "A{r}"),
            DynkinType::D(r) => write!(f, "D{r}"),
            DynkinType::E(r) => write!(f, "E{r}"),
        }
    }
}

/// Sign attached to a vertex of a bipartite quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// Root datum of a recognized quiver, indexed by the quiver's vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanSpec {
    pub ty: DynkinType,
    pub cartan: Vec<Vec<i32>>,
    pub exponents: Vec<usize>,
    pub coxeter: usize,
    /// `Plus` on sinks, `Minus` on sources; `None` if some vertex is neither.
    pub epsilon: Option<Vec<Sign>>,
}

impl CartanSpec {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn is_bipartite(&self) -> bool {
        self.epsilon.is_some()
    }
}

/// Arm lengths at the unique branch vertex of a tree, sorted ascending.
fn arms(q: &Quiver, center: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for start in q.neighbors(center) {
        let (mut prev, mut cur, mut len) = (center, start, 1);
        loop {
            let next: Vec<usize> = q.neighbors(cur).into_iter().filter(|&w| w != prev).collect();
            match next.as_slice() {
                [] => break,
                [w] => {
                    prev = cur;
                    cur = *w;
                    len += 1;
                }
                _ => return Vec::new(),
            }
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// Shape of the underlying simple graph of a simply-laced connected tree.
pub fn dynkin_shape(q: &Quiver) -> Option<DynkinType> {
    let n = q.len();
    if n == 0 || !q.is_simply_laced() || !q.is_connected() {
        return None;
    }
    let edges: usize = q.b.iter().flatten().filter(|&&x| x != 0).count() / 2;
    if edges + 1 != n {
        return None;
    }
    let deg: Vec<usize> = (0..n).map(|i| q.neighbors(i).len()).collect();
    let branch: Vec<usize> = (0..n).filter(|&i| deg[i] >= 3).collect();
    match branch.as_slice() {
        [] => Some(DynkinType::A(n)),
        [c] if deg[*c] == 3 => match arms(q, *c).as_slice() {
            [1, 1, r] => Some(DynkinType::D(r + 3)),
            [1, 2, 2] => Some(DynkinType::E(6)),
            [1, 2, 3] => Some(DynkinType::E(7)),
            [1, 2, 4] => Some(DynkinType::E(8)),
            _ => None,
        },
        _ => None,
    }
}

/// Recognizes a Dynkin quiver; exponents come from the root system.
pub fn recognize_dynkin(q: &Quiver) -> Option<CartanSpec> {
    let ty = dynkin_shape(q)?;
    let n = q.len();
    let cartan: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 2 } else { -q.b[i][j].abs() })
                .collect()
        })
        .collect();
    let epsilon: Option<Vec<Sign>> = (0..n)
        .map(|i| {
            if q.is_sink(i) {
                Some(Sign::Plus)
            } else if q.is_source(i) {
                Some(Sign::Minus)
            } else {
                None
            }
        })
        .collect();
    let pos = super::roots::positive_roots(&cartan);
    let exponents = super::roots::exponents_from_heights(&pos);
    let coxeter = 2 * pos.len() / n;
    debug_assert_eq!(coxeter, ty.coxeter_number());
    Some(CartanSpec {
        ty,
        cartan,
        exponents,
        coxeter,
        epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Quiver {
        let mut b = vec![vec![0; n]; n];
        for i in 0..n - 1 {
            b[i][i + 1] = 1;
            b[i + 1][i] = -1;
        }
        Quiver::from_square(b)
    }

    #[test]
    fn shapes() {
        assert_eq!(dynkin_shape(&path(1)), Some(DynkinType::A(1)));
        assert_eq!(dynkin_shape(&path(5)), Some(DynkinType::A(5)));
        let mut b = vec![vec![0; 4]; 4];
        for j in 1..4 {
            b[0][j] = 1;
            b[j][0] = -1;
        }
        let q = Quiver::from_square(b);
        let spec = recognize_dynkin(&q).unwrap();
        assert_eq!(spec.ty, DynkinType::D(4));
        assert_eq!(spec.coxeter, 6);
        assert_eq!(spec.exponents, vec![1, 3, 3, 5]);
        assert_eq!(recognize_dynkin(&q.reversed()).unwrap().ty, DynkinType::D(4));
    }

    #[test]
    fn triangle_is_not_dynkin() {
        let b = vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]];
        assert!(recognize_dynkin(&Quiver::from_square(b)).is_none());
    }
}
