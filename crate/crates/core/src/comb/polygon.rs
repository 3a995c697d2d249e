use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::{cyc, CombError};

/// Segment between two distinct vertices of the labeled n-gon; stored with `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub a: usize,
    pub b: usize,
}

impl Chord {
    pub fn new(i: usize, j: usize) -> Chord {
        assert!(i != j, "chord endpoints must differ");
        Chord {
            a: i.min(j),
            b: i.max(j),
        }
    }

    pub fn is_side(&self, n: usize) -> bool {
        self.b - self.a == 1 || (self.a == 1 && self.b == n)
    }

    pub fn has(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

impl fmt::Debug for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// True iff the endpoints strictly interleave; a shared endpoint never crosses.
pub fn chords_cross(x: Chord, y: Chord) -> bool {
    let inside = |v: usize| x.a < v && v < x.b;
    if x.has(y.a) || x.has(y.b) {
        return false;
    }
    inside(y.a) != inside(y.b)
}

/// A set of pairwise non-crossing internal chords of the n-gon.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Triangulation {
    pub n: usize,
    pub chords: Vec<Chord>,
}

impl Triangulation {
    pub fn new(n: usize, chords: Vec<Chord>) -> Result<Triangulation, CombError> {
        for c in &chords {
            if c.b > n || c.a == 0 || c.is_side(n) {
                return Err(CombError::BadTriangulation(format!("{c:?} is not internal")));
            }
        }
        for (i, x) in chords.iter().enumerate() {
            for y in &chords[i + 1..] {
                if x == y || chords_cross(*x, *y) {
                    return Err(CombError::BadTriangulation(format!("{x:?} vs {y:?}")));
                }
            }
        }
        Ok(Triangulation { n, chords })
    }

    pub fn is_maximal(&self) -> bool {
        self.chords.len() + 3 == self.n
    }

    /// Chords sorted, for use as a set key.
    pub fn key(&self) -> Vec<Chord> {
        let mut v = self.chords.clone();
        v.sort();
        v
    }

    fn is_edge(&self, i: usize, j: usize) -> bool {
        let c = Chord::new(i, j);
        c.is_side(self.n) || self.chords.contains(&c)
    }

    /// The two apexes of the triangles on either side of `c`.
    pub fn quadrilateral(&self, c: Chord) -> Option<(usize, usize)> {
        let apexes: Vec<usize> = (1..=self.n)
            .filter(|&v| !c.has(v) && self.is_edge(c.a, v) && self.is_edge(c.b, v))
            .collect();
        match apexes.as_slice() {
            [p, q] => Some((*p, *q)),
            _ => None,
        }
    }

    /// Replaces `c` by the other diagonal of its quadrilateral.
    pub fn flip(&self, c: Chord) -> Option<(Triangulation, Chord)> {
        let pos = self.chords.iter().position(|&x| x == c)?;
        let (p, q) = self.quadrilateral(c)?;
        let d = Chord::new(p, q);
        let mut chords = self.chords.clone();
        chords[pos] = d;
        Some((
            Triangulation {
                n: self.n,
                chords,
            },
            d,
        ))
    }
}

/// Internal chords of the zig-zag triangulation in chain order.
pub fn zigzag_triangulation(k: usize, n: usize) -> Triangulation {
    let chain = super::zigzag_chain(k, n);
    let chords = chain.windows(2).map(|w| Chord::new(w[0], w[1])).collect();
    Triangulation { n, chords }
}

/// All chords from vertex `apex`.
pub fn fan_triangulation(n: usize, apex: usize) -> Triangulation {
    let chords = (2..n - 1)
        .map(|t| Chord::new(apex, cyc(n, apex + t)))
        .collect();
    Triangulation { n, chords }
}

/// Every triangulation of the n-gon, found by flip-graph BFS from the fan,
/// together with the flip adjacency (indices into the returned list).
pub fn enumerate_triangulations(n: usize) -> (Vec<Triangulation>, Vec<Vec<usize>>) {
    let start = fan_triangulation(n, 1);
    let mut seen: HashMap<Vec<Chord>, usize> = HashMap::new();
    let mut out = vec![start.clone()];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
    seen.insert(start.key(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let t = out[i].clone();
        for &c in &t.chords {
            let (u, _) = t.flip(c).expect("internal chord of a triangulation flips");
            let key = u.key();
            let j = match seen.get(&key) {
                Some(&j) => j,
                None => {
                    let j = out.len();
                    seen.insert(key, j);
                    out.push(u);
                    adj.push(Vec::new());
                    queue.push_back(j);
                    j
                }
            };
            adj[i].push(j);
        }
    }
    (out, adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_rules() {
        assert!(chords_cross(Chord::new(1, 3), Chord::new(2, 4)));
        assert!(!chords_cross(Chord::new(1, 2), Chord::new(3, 4)));
        assert!(!chords_cross(Chord::new(1, 3), Chord::new(3, 5)));
    }

    #[test]
    fn zigzag_chords() {
        let t = zigzag_triangulation(3, 8);
        let got: Vec<(usize, usize)> = t.chords.iter().map(|c| (c.a, c.b)).collect();
        assert_eq!(got, vec![(5, 7), (5, 8), (4, 8), (1, 4), (1, 3)]);
        assert!(Triangulation::new(8, t.chords.clone()).is_ok());
        let t = zigzag_triangulation(3, 6);
        let got: Vec<(usize, usize)> = t.chords.iter().map(|c| (c.a, c.b)).collect();
        assert_eq!(got, vec![(3, 5), (3, 6), (2, 6)]);
        let t = zigzag_triangulation(2, 5);
        assert!(t.is_maximal());
        assert!(Triangulation::new(5, t.chords).is_ok());
    }

    #[test]
    fn flip_in_octagon() {
        let t = Triangulation::new(
            8,
            vec![
                Chord::new(2, 4),
                Chord::new(4, 6),
                Chord::new(6, 8),
                Chord::new(2, 8),
                Chord::new(4, 8),
            ],
        )
        .unwrap();
        let (u, d) = t.flip(Chord::new(4, 8)).unwrap();
        assert_eq!(d, Chord::new(2, 6));
        assert!(Triangulation::new(8, u.chords).is_ok());
    }

    #[test]
    fn catalan_counts() {
        for (n, c) in [(4, 2), (5, 5), (6, 14), (7, 42), (8, 132)] {
            let (all, adj) = enumerate_triangulations(n);
            assert_eq!(all.len(), c);
            assert!(adj.iter().all(|a| a.len() == n - 3));
        }
    }
}
