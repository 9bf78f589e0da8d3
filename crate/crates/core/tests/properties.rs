//! Invariants over random trees and random vertex sets.

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::Index;

use rdlab::certificates::{is_dominating, is_rds, is_ridf};
use rdlab::io::{parse_edge_list, parse_graph6, to_graph6, write_edge_list};
use rdlab::treedp::{gamma_r_tree, gamma_ri_tree};
use rdlab::{Assignment, Tree, VertexSet};

/// Random labelled tree: vertex `i` hangs off a random earlier vertex.
fn tree(max_n: usize) -> impl Strategy<Value = Tree> {
    (1..=max_n).prop_flat_map(|n| {
        vec(any::<Index>(), n - 1).prop_map(move |picks| {
            let edges = picks.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1));
            Tree::from_edges(n, edges).unwrap()
        })
    })
}

fn tree_and_perm(max_n: usize) -> impl Strategy<Value = (Tree, Vec<usize>)> {
    tree(max_n).prop_flat_map(|t| {
        let n = t.order();
        (Just(t), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn tree_and_mask(max_n: usize) -> impl Strategy<Value = (Tree, Vec<bool>)> {
    tree(max_n).prop_flat_map(|t| {
        let n = t.order();
        (Just(t), vec(any::<bool>(), n))
    })
}

fn tree_and_labels(max_n: usize) -> impl Strategy<Value = (Tree, Vec<u8>)> {
    tree(max_n).prop_flat_map(|t| {
        let n = t.order();
        (Just(t), vec(0u8..=2, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn degree_sum_is_twice_the_size(t in tree(60)) {
        let sum: usize = (0..t.order()).map(|v| t.degree(v)).sum();
        prop_assert_eq!(sum, 2 * t.size());
        prop_assert_eq!(t.size(), t.order() - 1);
    }

    #[test]
    fn canonical_code_ignores_labels((t, perm) in tree_and_perm(40)) {
        let relabelled = t.relabel(&perm).unwrap();
        prop_assert_eq!(t.canonical_code(), relabelled.canonical_code());
    }

    #[test]
    fn diametral_path_is_a_longest_path(t in tree(40)) {
        prop_assume!(t.order() >= 2);
        let path = t.diametral_path_max_penultimate().unwrap();
        prop_assert_eq!(path.len(), t.diameter());
        let dist = t.distance_matrix();
        let brute = dist.iter().flatten().max().copied().unwrap();
        prop_assert_eq!(path.len(), brute);
        for w in path.vertices.windows(2) {
            prop_assert!(t.has_edge(w[0], w[1]));
        }
        // no diametral path has a penultimate vertex of larger degree
        for (x0, row) in dist.iter().enumerate() {
            for xd in (0..t.order()).filter(|&v| row[v] == brute) {
                let pen = t.path_between(x0, xd)[brute - 1];
                prop_assert!(t.degree(pen) <= t.degree(path.from_end(1)));
            }
        }
    }

    #[test]
    fn restrained_sets_dominate((t, mask) in tree_and_mask(30)) {
        let s = VertexSet::from_members(t.order(), (0..t.order()).filter(|&v| mask[v]));
        if is_rds(&t, &s).is_ok() {
            prop_assert!(is_dominating(&t, &s).is_ok());
        }
    }

    #[test]
    fn ridf_support_dominates((t, labels) in tree_and_labels(30)) {
        let f = Assignment::new(labels).unwrap();
        if is_ridf(&t, &f).is_ok() {
            prop_assert!(is_dominating(&t, &f.support()).is_ok());
        }
    }

    #[test]
    fn doubling_a_minimum_rds_gives_an_ridf(t in tree(50)) {
        let rds = gamma_r_tree(&t);
        let f = Assignment::from_classes(t.order(), &VertexSet::new(t.order()), &rds.set).unwrap();
        prop_assert!(is_ridf(&t, &f).is_ok());
        let ridf = gamma_ri_tree(&t);
        prop_assert!(ridf.value <= f.weight());
        prop_assert!(rds.value as u32 <= ridf.value);
    }

    #[test]
    fn dp_witnesses_certify(t in tree(80)) {
        let rds = gamma_r_tree(&t);
        prop_assert!(is_rds(&t, &rds.set).is_ok());
        prop_assert_eq!(rds.set.len(), rds.value);
        let ridf = gamma_ri_tree(&t);
        prop_assert!(is_ridf(&t, &ridf.assignment).is_ok());
        prop_assert_eq!(ridf.assignment.weight(), ridf.value);
    }

    #[test]
    fn dp_values_ignore_labels((t, perm) in tree_and_perm(40)) {
        let relabelled = t.relabel(&perm).unwrap();
        prop_assert_eq!(gamma_r_tree(&t).value, gamma_r_tree(&relabelled).value);
        prop_assert_eq!(gamma_ri_tree(&t).value, gamma_ri_tree(&relabelled).value);
    }

    #[test]
    fn graph6_round_trips(t in tree(120)) {
        prop_assert_eq!(&parse_graph6(&to_graph6(&t)).unwrap(), t.as_graph());
    }

    #[test]
    fn edge_list_round_trips(t in tree(60)) {
        prop_assert_eq!(&parse_edge_list(&write_edge_list(&t)).unwrap(), t.as_graph());
    }
}

#[test]
fn canonical_code_survives_many_relabellings() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let t = Tree::from_edges(12, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 6), (0, 7), (7, 8), (8, 9), (8, 10), (10, 11)]).unwrap();
    let code = t.canonical_code();
    let mut perm: Vec<usize> = (0..12).collect();
    for _ in 0..200 {
        perm.shuffle(&mut rng);
        assert_eq!(t.relabel(&perm).unwrap().canonical_code(), code);
    }
}
