use std::cmp::Ordering;
use std::fmt;

use super::CombError;

/// A k-element subset of `[1..n]`, stored as a bitmask (bit `i - 1` is index `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSubset {
    n: u8,
    bits: u64,
}

impl KSubset {
    pub fn new(n: usize, members: &[usize]) -> Result<Self, CombError> {
        if n == 0 || n > 64 {
            return Err(CombError::BadAmbient(n));
        }
        let mut bits = 0u64;
        for &m in members {
            if m == 0 || m > n {
                return Err(CombError::IndexOutOfRange { index: m, n });
            }
            let bit = 1u64 << (m - 1);
            if bits & bit != 0 {
                return Err(CombError::RepeatedIndex(m));
            }
            bits |= bit;
        }
        if bits == 0 {
            return Err(CombError::Empty);
        }
        Ok(KSubset { n: n as u8, bits })
    }

    /// Builds a subset from raw bits; panics on bits outside `[1..n]`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        assert!(n >= 1 && n <= 64, "ambient size {n} out of range");
        assert!(bits != 0, "empty subset");
        if n < 64 {
            assert!(bits >> n == 0, "bits outside [1..{n}]");
        }
        KSubset { n: n as u8, bits }
    }

    /// Cyclic interval `[start .. start+len-1]` with indices taken mod n in `[1..n]`.
    pub fn interval(n: usize, start: usize, len: usize) -> Self {
        let members: Vec<usize> = (0..len).map(|t| cyc(n, start + t)).collect();
        KSubset::new(n, &members).expect("interval longer than n")
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn k(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.n() && self.bits & (1u64 << (i - 1)) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (1..=self.n()).filter(move |i| bits & (1u64 << (i - 1)) != 0)
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn minus(&self, other: &KSubset) -> u64 {
        self.bits & !other.bits
    }

    pub fn with(&self, i: usize) -> KSubset {
        KSubset::from_bits(self.n(), self.bits | (1u64 << (i - 1)))
    }

    pub fn without(&self, i: usize) -> KSubset {
        KSubset::from_bits(self.n(), self.bits & !(1u64 << (i - 1)))
    }

    /// Image under a permutation of `[1..n]` given as a 1-based map.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> KSubset {
        let members: Vec<usize> = self.iter().map(f).collect();
        KSubset::new(self.n(), &members).expect("map must be a permutation of [1..n]")
    }

    /// True iff the subset is a cyclic interval of `[1..n]`.
    pub fn is_interval(&self) -> bool {
        let k = self.k();
        if k == self.n() {
            return true;
        }
        (1..=self.n()).any(|s| KSubset::interval(self.n(), s, k) == *self)
    }

    /// Parses the text form `[i1,i2,...]`.
    pub fn parse(s: &str, n: usize) -> Result<Self, CombError> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| CombError::Parse(s.to_string()))?;
        let mut members = Vec::new();
        for part in body.split(',') {
            let v: usize = part
                .trim()
                .parse()
                .map_err(|_| CombError::Parse(s.to_string()))?;
            members.push(v);
        }
        KSubset::new(n, &members)
    }

    /// Compact digit string, e.g. `145`; only unambiguous for `n <= 9`.
    pub fn digits(&self) -> String {
        self.iter().map(|i| i.to_string()).collect()
    }
}

/// Reduces `i` (any integer) into `[1..n]` cyclically.
pub fn cyc(n: usize, i: usize) -> usize {
    ((i + n - 1) % n) + 1
}

/// Signed variant of [`cyc`].
pub fn cyc_i(n: usize, i: i64) -> usize {
    let n = n as i64;
    (((i - 1) % n + n) % n + 1) as usize
}

impl Ord for KSubset {
    // (k, lexicographic sorted members, n)
    fn cmp(&self, other: &Self) -> Ordering {
        self.k()
            .cmp(&other.k())
            .then_with(|| {
                let d = self.bits ^ other.bits;
                if d == 0 {
                    Ordering::Equal
                } else if self.bits & (d & d.wrapping_neg()) != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All k-subsets of `[1..n]` in the repository-wide order.
pub fn all_ksubsets(k: usize, n: usize) -> Vec<KSubset> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<KSubset>) {
        if cur.len() == k {
            out.push(KSubset::new(n, cur).unwrap());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, k, n, cur, out);
            cur.pop();
        }
    }
    if k >= 1 && k <= n {
        rec(1, k, n, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_by_size_then_lex() {
        let a = KSubset::new(6, &[1, 2, 6]).unwrap();
        let b = KSubset::new(6, &[1, 3, 4]).unwrap();
        let c = KSubset::new(6, &[1, 2]).unwrap();
        assert!(a < b);
        assert!(c < a);
        let all = all_ksubsets(3, 6);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all.len(), 20);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let s = KSubset::parse("[1,3,6]", 8).unwrap();
        assert_eq!(s.to_string(), "[1,3,6]");
        assert_eq!(s.k(), 3);
        assert!(KSubset::parse("[1,1,6]", 8).is_err());
        assert!(KSubset::parse("[0,2]", 8).is_err());
        assert!(KSubset::parse("1,2", 8).is_err());
    }

    #[test]
    fn wraparound_intervals() {
        let i = KSubset::interval(8, 7, 3);
        assert_eq!(i.members(), vec![1, 7, 8]);
        assert!(i.is_interval());
        assert!(!KSubset::new(8, &[1, 3, 4]).unwrap().is_interval());
    }
}
