use std::collections::HashMap;

use grascluster_core::algebra::{rat, rat_int};
use grascluster_core::classify::{
    almost_positive_roots, recognize_dynkin, tau, Quiver, RootVec, Sign,
};
use grascluster_core::cluster::modp::ProbeMatrices;
use grascluster_core::cluster::{mutate_square, read_cache, write_cache};
use grascluster_core::comb::{build_initial_seed, numbered_seed, KSubset};
use grascluster_core::verify::ConfigMatrix;
use grascluster_core::{
    explore, ExploreOptions, ExtMatrix, LaurentPoly, Monomial, Rat, VarId, VariableRegistry,
};
use proptest::prelude::*;

fn skew(n: usize, upper: &[i32]) -> Vec<Vec<i32>> {
    let mut b = vec![vec![0; n]; n];
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            let x = *it.next().unwrap();
            b[i][j] = x;
            b[j][i] = -x;
        }
    }
    b
}

fn square() -> impl Strategy<Value = Vec<Vec<i32>>> {
    (2usize..7).prop_flat_map(|n| {
        prop::collection::vec(-2i32..=2, n * (n - 1) / 2).prop_map(move |u| skew(n, &u))
    })
}

fn extended() -> impl Strategy<Value = ExtMatrix> {
    (square(), 0usize..4).prop_flat_map(|(b, f)| {
        let n = b.len();
        prop::collection::vec(-2i32..=2, f * n).prop_map(move |fr| {
            let rows: Vec<VarId> = (0..(n + f) as u32).map(VarId::Anon).collect();
            let mut data = b.clone();
            data.extend(fr.chunks(n).map(|c| c.to_vec()));
            ExtMatrix::from_rows(rows, n, &data)
        })
    })
}

fn is_skew(b: &[Vec<i32>]) -> bool {
    (0..b.len()).all(|i| (0..b.len()).all(|j| b[i][j] == -b[j][i]))
}

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    let term = (-5i64..=5, 1i64..=4, prop::collection::vec(-2i32..=2, 3));
    prop::collection::vec(term, 1..5).prop_map(|ts| {
        let mut p = LaurentPoly::zero();
        for (c, d, e) in ts {
            let m = Monomial::from_factors(e.iter().enumerate().map(|(i, &x)| (VarId::Anon(i as u32), x)));
            p.add_term(m, rat(c, d));
        }
        p
    })
}

fn point(vals: &[(i64, i64)]) -> HashMap<VarId, Rat> {
    vals.iter()
        .enumerate()
        .map(|(i, &(a, b))| (VarId::Anon(i as u32), rat(a, b)))
        .collect()
}

proptest! {
    #[test]
    fn matrix_mutation_is_an_involution(m in extended(), k in 0usize..6) {
        let k = k % m.ncols();
        prop_assert_eq!(m.mutate_at(k).mutate_at(k), m);
    }

    #[test]
    fn mutation_keeps_skew_symmetry(b in square(), seq in prop::collection::vec(0usize..6, 0..12)) {
        let mut b = b;
        for k in seq {
            // wild classes grow fast; stay well inside i32
            if b.iter().flatten().any(|x| x.abs() > 10_000) {
                break;
            }
            let k = k % b.len();
            b = mutate_square(&b, k);
            prop_assert!(is_skew(&b));
        }
    }

    #[test]
    fn extended_and_square_mutation_agree(m in extended(), k in 0usize..6) {
        let k = k % m.ncols();
        prop_assert_eq!(m.mutate_at(k).principal(), mutate_square(&m.principal(), k));
    }

    #[test]
    fn laurent_ring_laws(p in small_poly(), q in small_poly(), r in small_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn laurent_exact_division(p in small_poly(), q in small_poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).div_exact(&q).unwrap(), p);
    }

    #[test]
    fn laurent_evaluation_is_a_homomorphism(
        p in small_poly(),
        q in small_poly(),
        x in prop::collection::vec((1i64..=9, 1i64..=9), 3),
    ) {
        let a = point(&x);
        let (u, v) = (p.eval(&a).unwrap(), q.eval(&a).unwrap());
        prop_assert_eq!((&p * &q).eval(&a).unwrap(), &u * &v);
        prop_assert_eq!((&p + &q).eval(&a).unwrap(), &u + &v);
    }

    #[test]
    fn laurent_text_round_trip(p in small_poly()) {
        // anonymous ids round-trip through the text form
        let back = LaurentPoly::parse(&p.to_text(), 8).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn minors_alternate(
        seed in any::<u64>(),
        cols in prop::sample::subsequence((1usize..=7).collect::<Vec<_>>(), 3),
        swap in 0usize..2,
    ) {
        let mut rng = grascluster_core::verify::point_rng(seed, 0);
        let m = ConfigMatrix::random(3, 7, &mut rng);
        let mut c = cols.clone();
        c.swap(swap, swap + 1);
        prop_assert_eq!(m.minor_cols(&c).unwrap(), -m.minor_cols(&cols).unwrap());
        let rep = [cols[0], cols[1], cols[0]];
        prop_assert_eq!(m.minor_cols(&rep).unwrap(), rat_int(0));
    }

    #[test]
    fn seed_mutation_is_an_involution(case in 0usize..3, seq in prop::collection::vec(0usize..8, 0..8), k in 0usize..8) {
        let (kk, n) = [(2, 7), (3, 6), (3, 7)][case];
        let s0 = build_initial_seed(kk, n).unwrap();
        let probes = ProbeMatrices::new(kk, n, 11);
        let mut reg = VariableRegistry::grassmannian(s0.matrix.row_labels(), &probes);
        let mut s = s0;
        for p in seq {
            s = s.mutate_at(p % s.rank(), &mut reg).unwrap().seed;
        }
        let k = k % s.rank();
        let there = s.mutate_at(k, &mut reg).unwrap();
        let back = there.seed.mutate_at(k, &mut reg).unwrap();
        prop_assert_eq!(&back.seed, &s);
        prop_assert_eq!(back.new_var, s.cluster()[k]);
        prop_assert!(!back.discovered);
    }
}

fn random_vec(rng: &mut impl rand::Rng, n: usize) -> RootVec {
    (0..n).map(|_| rng.gen_range(-4..=4)).collect()
}

#[test]
fn tau_is_an_involution_on_200_roots() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(200);
    for (k, n) in [(3, 6), (3, 7), (3, 8)] {
        let ps = numbered_seed(k, n).unwrap();
        let m = ps.seed.mutate_matrix_sequence(&ps.sequence).unwrap();
        let spec = recognize_dynkin(&Quiver::from_matrix(&m)).unwrap();
        let roots = almost_positive_roots(&spec);
        for t in 0..200 {
            let a = if t % 2 == 0 {
                roots[rng.gen_range(0..roots.len())].clone()
            } else {
                random_vec(&mut rng, spec.rank())
            };
            for s in [Sign::Plus, Sign::Minus] {
                assert_eq!(tau(s, &tau(s, &a, &spec), &spec), a);
            }
        }
    }
}

#[test]
fn cache_round_trip_keeps_canonical_forms() {
    for (k, n) in [(2, 6), (3, 6), (3, 7)] {
        let s0 = build_initial_seed(k, n).unwrap();
        let probes = ProbeMatrices::new(k, n, 5);
        let mut reg = VariableRegistry::grassmannian(s0.matrix.row_labels(), &probes);
        let exp = explore(&s0, &mut reg, &ExploreOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_cache(&mut buf, n, &reg, &exp).unwrap();
        let (n2, reg2, exp2) = read_cache(&mut buf.as_slice()).unwrap();
        assert_eq!(n2, n);
        assert_eq!(reg2.canonical_forms(), reg.canonical_forms());
        assert_eq!(exp2.closed, exp.closed);
        assert_eq!(exp2.graph.edges, exp.graph.edges);
        assert_eq!(exp2.seed_count(), exp.seed_count());
        let mut again = Vec::new();
        write_cache(&mut again, n2, &reg2, &exp2).unwrap();
        assert_eq!(again, buf);
    }
}

#[test]
fn plucker_ids_in_registry_are_minors() {
    let s0 = build_initial_seed(3, 6).unwrap();
    let probes = ProbeMatrices::new(3, 6, 9);
    let mut reg = VariableRegistry::grassmannian(s0.matrix.row_labels(), &probes);
    explore(&s0, &mut reg, &ExploreOptions::default()).unwrap();
    for r in reg.records() {
        if let Some(s) = r.id.as_pluecker() {
            assert_eq!(r.fp, probes.minor(&s), "{s}");
        }
    }
    assert!(reg.contains(VarId::Pluecker(KSubset::new(6, &[1, 3, 5]).unwrap())));
}
