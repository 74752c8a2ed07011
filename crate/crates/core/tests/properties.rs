use std::collections::BTreeSet;

use positroid_lab::amplituhedron::{
    b_embed, chamber_of, membership_signflip, point_in_tile, random_tp_matrix, random_weights, sample_cell_point,
    tnn_representative, twistor_matrix,
};
use positroid_lab::cluster::verify_exchange;
use positroid_lab::exact::{rat, twisted_shift, vandermonde_positive};
use positroid_lab::hypersimplex::{moment_map, simplex_in_tree_by_area, simplex_in_tree_by_parity, w_simplex};
use positroid_lab::permutations::{enumerate_d, sort_collection};
use positroid_lab::plabic::enumerate_subdivisions;
use positroid_lab::tilings::BitSet;
use positroid_lab::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn tile(k: usize, n: usize, pick: usize) -> BicoloredSubdivision {
    let all = enumerate_subdivisions(k, n).unwrap();
    all[pick % all.len()].clone()
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((1, 5)), Just((1, 6)), Just((2, 6)), Just((2, 7)), Just((3, 7))]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn plucker_alternates(entries in prop::collection::vec(-9i64..=9, 16), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let rows: Vec<Vec<i64>> = entries.chunks(4).map(<[i64]>::to_vec).collect();
        let m = ExactMatrix::from_i64(&rows);
        let mut labels = vec![1, 2, 3, 4];
        let base = m.plucker(&labels).unwrap();
        labels.swap(i, j);
        prop_assert_eq!(m.plucker(&labels).unwrap(), -base);
    }

    #[test]
    fn twisted_shift_keeps_positivity(n in 3usize..=7, p in 1usize..=4, steps in 0usize..8) {
        prop_assume!(p <= n);
        let z = vandermonde_positive(n, p).unwrap();
        prop_assert!(twisted_shift(&z, steps % n).transpose().all_maximal_minors_positive());
    }

    #[test]
    fn t_dual_round_trip(n in 3usize..=7, seed in any::<u64>()) {
        let all = DecoratedPermutation::all(n);
        let mut r = rng(seed);
        for _ in 0..10 {
            let pi = &all[rand::Rng::gen_range(&mut r, 0..all.len())];
            if pi.is_loopless() {
                let hat = pi.t_dual().unwrap();
                prop_assert!(hat.is_coloopless());
                prop_assert_eq!(hat.k() + 1, pi.k());
                prop_assert_eq!(&hat.t_dual_inverse().unwrap(), pi);
            }
        }
    }

    #[test]
    fn moves_preserve_trip_and_bases(n in 4usize..=7, seed in any::<u64>()) {
        let mut r = rng(seed);
        let all: Vec<_> = DecoratedPermutation::all(n).into_iter().filter(|p| p.k() >= 1 && p.k() < n).collect();
        let pi = &all[rand::Rng::gen_range(&mut r, 0..all.len())];
        let mut g = PlabicGraph::from_permutation(pi).unwrap();
        let trip = g.trip_permutation().unwrap();
        let bases = g.positroid_bases().unwrap();
        for _ in 0..6 {
            let moves = g.applicable_moves();
            if moves.is_empty() {
                break;
            }
            g = g.apply_move(&moves[rand::Rng::gen_range(&mut r, 0..moves.len())]).unwrap();
            prop_assert_eq!(&g.trip_permutation().unwrap(), &trip);
        }
        prop_assert_eq!(g.positroid_bases().unwrap(), bases);
    }

    #[test]
    fn moment_map_lies_in_hypersimplex(seed in any::<u64>(), (k, n) in shape()) {
        let mut r = rng(seed);
        let a = random_tp_matrix(&mut r, k + 1, n);
        let x = moment_map(&a).unwrap();
        let total: Rational = x.iter().sum();
        prop_assert_eq!(total, rat(k as i64 + 1));
        for h in 1..=n {
            for len in 1..=n {
                let iv = CyclicInterval::new(h, (h + len - 2) % n + 1, n);
                let sum: Rational = iv.members().iter().map(|&i| x[i - 1].clone()).sum();
                prop_assert!(sum <= rat(len.min(k + 1) as i64));
            }
        }
    }

    #[test]
    fn sign_rule_and_inverse_problem(pick in any::<usize>(), seed in any::<u64>(), (k, n) in shape()) {
        let s = tile(k, n, pick);
        let mut r = rng(seed);
        let z = ZMatrix::random(&mut r, n, k);
        let ts = s.triangulations();
        let t = &ts[rand::Rng::gen_range(&mut r, 0..ts.len())];
        let c = sample_cell_point(t, &random_weights(&mut r, 3 * k)).unwrap();
        let y = YPoint::from_c(&c, &z).unwrap();
        let table = TwistorTable::new(&y, &z);
        prop_assert!(point_in_tile(&table, &s));
        prop_assert!(positroid_lab::amplituhedron::compatible_signs_hold(&table, &s));
        let ctw = tnn_representative(&twistor_matrix(&table, t));
        let back = TwistorTable::new(&YPoint::from_c(&ctw, &z).unwrap(), &z);
        let lambda = table.ratio_to(&back);
        prop_assert!(lambda.is_some_and(|l| l > rat(0)));
    }

    #[test]
    fn b_embed_is_proportional(seed in any::<u64>(), (k, n) in shape()) {
        let mut r = rng(seed);
        let z = ZMatrix::random(&mut r, n, k);
        let y = YPoint::from_c(&random_tp_matrix(&mut r, k, n), &z).unwrap();
        let table = TwistorTable::new(&y, &z);
        let other = TwistorTable::from_plucker(&b_embed(&y, &z), k);
        prop_assert!(table.ratio_to(&other).is_some());
    }

    #[test]
    fn positive_points_flip_correctly(seed in any::<u64>(), (k, n) in shape()) {
        let mut r = rng(seed);
        let z = ZMatrix::vandermonde(n, k).unwrap();
        let y = YPoint::from_c(&random_tp_matrix(&mut r, k, n), &z).unwrap();
        let table = TwistorTable::new(&y, &z);
        for a in 1..=n {
            prop_assert!(membership_signflip(&table, a));
        }
        if let Ok(w) = chamber_of(&table) {
            prop_assert!(sort_collection(&w.vertex_sets()).is_some());
            prop_assert_eq!(w.k(), k);
        }
    }

    #[test]
    fn hat_matches_twisted_shift(seed in any::<u64>(), (k, n) in shape(), a in 1usize..=8, j in 1usize..=8) {
        prop_assume!(a <= n && j <= n && j < a);
        let mut r = rng(seed);
        let z = ZMatrix::random(&mut r, n, k);
        let y = YPoint::from_c(&random_tp_matrix(&mut r, k, n), &z).unwrap();
        let table = TwistorTable::new(&y, &z);
        let zhat = twisted_shift(z.matrix(), n);
        let mut stack = y.matrix().clone();
        stack.push_row(z.row(a));
        stack.push_row(zhat.row(j - 1));
        prop_assert_eq!(stack.det(), table.hat(a, j));
    }

    #[test]
    fn containment_criteria_agree(pick in any::<usize>(), w_pick in any::<usize>(), (k, n) in shape()) {
        let s = tile(k, n, pick);
        let ws = enumerate_d(k, n).unwrap();
        let w = &ws[w_pick % ws.len()];
        let simplex = w_simplex(w).unwrap();
        prop_assert_eq!(simplex_in_tree_by_area(&simplex, &s), simplex_in_tree_by_parity(&simplex, &s));
    }

    #[test]
    fn exchange_relation_at_random_points(pick in any::<usize>(), seed in any::<u64>(), (k, n) in shape()) {
        let s = tile(k, n, pick);
        let mut r = rng(seed);
        let z = ZMatrix::random(&mut r, n, k);
        let y = YPoint::from_c(&random_tp_matrix(&mut r, k, n), &z).unwrap();
        for t in s.triangulations() {
            for arc in t.flippable_arcs() {
                prop_assert!(verify_exchange(&y, &z, &t, arc).unwrap());
            }
        }
    }

    #[test]
    fn bitset_matches_model(len in 1usize..200, a in prop::collection::btree_set(0usize..200, 0..40), b in prop::collection::btree_set(0usize..200, 0..40)) {
        let a: BTreeSet<usize> = a.into_iter().filter(|&x| x < len).collect();
        let b: BTreeSet<usize> = b.into_iter().filter(|&x| x < len).collect();
        let mut sa = BitSet::empty(len);
        a.iter().for_each(|&x| sa.insert(x));
        let mut sb = BitSet::empty(len);
        b.iter().for_each(|&x| sb.insert(x));
        prop_assert_eq!(sa.and(&sb).iter().collect::<BTreeSet<_>>(), a.intersection(&b).copied().collect());
        prop_assert_eq!(sa.minus(&sb).iter().collect::<BTreeSet<_>>(), a.difference(&b).copied().collect());
        prop_assert_eq!(sa.is_disjoint(&sb), a.is_disjoint(&b));
        prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        prop_assert_eq!(sa.count(), a.len());
    }
}
