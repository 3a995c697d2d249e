use super::{cyc, cyc_i, frozen_intervals, CombError, KSubset};

/// Vertices `s_0, s_1, …, s_{n-3}` of the zig-zag path: even positions climb
/// from `n-k+2`, odd positions descend from `n-k`. Chord `m` joins `s_{m-1}` and `s_m`.
pub fn zigzag_chain(k: usize, n: usize) -> Vec<usize> {
    (0..n - 2)
        .map(|t| {
            let m = (t / 2) as i64;
            let base = (n - k) as i64;
            if t % 2 == 0 {
                cyc_i(n, base + 2 + m)
            } else {
                cyc_i(n, base - m)
            }
        })
        .collect()
}

/// Labels of the quadrilateral arrangement `A_{k,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AknLabels {
    pub k: usize,
    pub n: usize,
    /// `grid[i-1][j-1]` is cell `(i, j)`.
    pub grid: Vec<Vec<KSubset>>,
    pub frozen: Vec<KSubset>,
}

impl AknLabels {
    /// Interior labels in row-major order.
    pub fn interior(&self) -> Vec<KSubset> {
        self.grid.iter().flatten().copied().collect()
    }

    pub fn all(&self) -> Vec<KSubset> {
        let mut v = self.interior();
        v.extend(self.frozen.iter().copied());
        v
    }
}

fn check_shape(k: usize, n: usize) -> Result<(), CombError> {
    if k < 2 || n < k + 2 || n > 64 {
        return Err(CombError::BadShape { k, n });
    }
    Ok(())
}

/// Cell `(i, j)` gets `[u..u+i-1] ⊔ [v..v+k-i-1]` where chord `i+j-1` of the
/// zig-zag chain joins `u` (descending side) and `v` (ascending side).
pub fn akn_labels(k: usize, n: usize) -> Result<AknLabels, CombError> {
    check_shape(k, n)?;
    let chain = zigzag_chain(k, n);
    let mut grid = Vec::with_capacity(k - 1);
    for i in 1..k {
        let mut row = Vec::with_capacity(n - k - 1);
        for j in 1..n - k {
            let m = i + j - 1;
            let (a, b) = (chain[m - 1], chain[m]);
            // odd chain positions lie on the descending side
            let (u, v) = if (m - 1) % 2 == 1 { (a, b) } else { (b, a) };
            row.push(double_interval(n, u, i, v, k - i)?);
        }
        grid.push(row);
    }
    Ok(AknLabels {
        k,
        n,
        grid,
        frozen: frozen_intervals(k, n),
    })
}

fn double_interval(
    n: usize,
    u: usize,
    len_u: usize,
    v: usize,
    len_v: usize,
) -> Result<KSubset, CombError> {
    let mut members: Vec<usize> = (0..len_u).map(|t| cyc(n, u + t)).collect();
    members.extend((0..len_v).map(|t| cyc(n, v + t)));
    KSubset::new(n, &members)
}

/// The closed-form endpoint rule `p = ρ^{2-⌈i/2⌉-⌈j/2⌉}(n-k)`,
/// `p' = ρ^{⌊i/2⌋+⌊j/2⌋}(n-k+2)` with `ρ(x) = x + 1`, label
/// `[p..p+i-1] ⊔ [p'..p'+k-i-1]`. Kept as a cross-check of [`akn_labels`];
/// cells where the two intervals overlap come back as `Err`.
pub fn akn_closed_form_labels(
    k: usize,
    n: usize,
) -> Result<Vec<Vec<Result<KSubset, CombError>>>, CombError> {
    check_shape(k, n)?;
    let ceil = |x: usize| x.div_ceil(2) as i64;
    let mut grid = Vec::new();
    for i in 1..k {
        let mut row = Vec::new();
        for j in 1..n - k {
            let p = cyc_i(n, (n - k) as i64 + 2 - ceil(i) - ceil(j));
            let q = cyc_i(n, (n - k + 2 + i / 2 + j / 2) as i64);
            row.push(double_interval(n, p, i, q, k - i));
        }
        grid.push(row);
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits(v: &[KSubset]) -> Vec<String> {
        v.iter().map(|s| s.digits()).collect()
    }

    #[test]
    fn chain_examples() {
        assert_eq!(zigzag_chain(3, 8), vec![7, 5, 8, 4, 1, 3]);
        assert_eq!(zigzag_chain(3, 6), vec![5, 3, 6, 2]);
    }

    #[test]
    fn small_grids() {
        let a = akn_labels(3, 6).unwrap();
        assert_eq!(digits(&a.grid[0]), vec!["356", "136"]);
        assert_eq!(digits(&a.grid[1]), vec!["346", "236"]);
        let a = akn_labels(3, 7).unwrap();
        assert_eq!(digits(&a.grid[0]), vec!["467", "147", "137"]);
        assert_eq!(digits(&a.grid[1]), vec!["457", "347", "134"]);
    }

    #[test]
    fn k2_is_a_triangulation() {
        let a = akn_labels(2, 7).unwrap();
        let t = super::super::zigzag_triangulation(2, 7);
        let chords: Vec<KSubset> = t
            .chords
            .iter()
            .map(|c| KSubset::new(7, &[c.a, c.b]).unwrap())
            .collect();
        let mut got = a.interior();
        got.sort();
        let mut want = chords;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn rejects_small_n() {
        assert!(akn_labels(3, 4).is_err());
        assert!(akn_labels(1, 5).is_err());
    }
}
