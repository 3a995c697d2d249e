/// Reduced words for the longest element `w0 ∈ S_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleWord {
    pub r: Vec<usize>,
    pub r_prime: Vec<usize>,
    /// `R′R`.
    pub w: Vec<usize>,
}

/// `R` walks from 1 towards the targets `k-1, 1, k-2, 2, …` one step at a
/// time until it has `k(k-1)/2` letters; `R′` is `R` under `i ↦ k-i`, reversed.
pub fn double_reduced_word(k: usize) -> DoubleWord {
    assert!(k >= 2, "need k >= 2");
    let len = k * (k - 1) / 2;
    let mut r = vec![1usize];
    let (mut lo, mut hi) = (1usize, k - 1);
    let mut up = true;
    while r.len() < len {
        let target = if up { hi } else { lo };
        let cur = *r.last().unwrap();
        if cur == target {
            if up {
                hi -= 1;
            } else {
                lo += 1;
            }
            up = !up;
            continue;
        }
        r.push(if cur < target { cur + 1 } else { cur - 1 });
    }
    let r_prime: Vec<usize> = r.iter().rev().map(|&i| k - i).collect();
    let mut w = r_prime.clone();
    w.extend(&r);
    DoubleWord { r, r_prime, w }
}

/// True iff `word` in the simple transpositions of `S_k` has length
/// `k(k-1)/2` and multiplies out to the order-reversing permutation.
pub fn is_reduced_for_longest(word: &[usize], k: usize) -> bool {
    if word.len() != k * (k - 1) / 2 || word.iter().any(|&i| i == 0 || i >= k) {
        return false;
    }
    let mut perm: Vec<usize> = (0..k).collect();
    for &i in word {
        perm.swap(i - 1, i);
    }
    perm.iter().enumerate().all(|(p, &v)| v == k - 1 - p)
}
