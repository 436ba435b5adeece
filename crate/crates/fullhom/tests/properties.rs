//! Randomized checks of the public API against brute-force oracles and
//! against the raw definitions.

mod common;

use common::{brute_isomorphic, oracle_solve, relabel};
use fullhom::{
    distinguishes, extend_partition_homogeneous, find_full_homomorphism, is_homogeneous,
    is_point_determining, satisfiable, solve_mpartition, twin_type, validate_partition, Digraph,
    ExtendError, PatternMatrix, TwinClassification, VertexSet,
};
use proptest::prelude::*;

fn arbitrary_digraph(min_n: usize, max_n: usize) -> impl Strategy<Value = Digraph> {
    (min_n..=max_n, any::<u64>()).prop_map(|(n, mask)| {
        let arcs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .collect();
        Digraph::new(n, &arcs).expect("arcs are loop-free and in range")
    })
}

fn arbitrary_matrix(max_m: usize) -> impl Strategy<Value = PatternMatrix> {
    (0..=max_m, any::<u16>()).prop_map(|(m, bits)| {
        let rows: Vec<Vec<u8>> = (0..m)
            .map(|i| (0..m).map(|j| (bits >> (i * m + j) & 1) as u8).collect())
            .collect();
        PatternMatrix::new(&rows).expect("entries are bits")
    })
}

fn digraph_with_permutation(max_n: usize) -> impl Strategy<Value = (Digraph, Vec<usize>)> {
    arbitrary_digraph(0, max_n).prop_flat_map(|d| {
        let n = d.order();
        let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (Just(d), perm)
    })
}

fn digraph_with_pair(max_n: usize) -> impl Strategy<Value = (Digraph, usize, usize)> {
    arbitrary_digraph(2, max_n).prop_flat_map(|d| {
        let n = d.order();
        (Just(d), 0..n, 0..n).prop_filter("vertices must differ", |(_, u, v)| u != v)
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(d in arbitrary_digraph(0, 6)) {
        prop_assert_eq!(d.complement().complement(), d);
    }

    #[test]
    fn text_codec_round_trips(d in arbitrary_digraph(0, 6)) {
        prop_assert_eq!(Digraph::parse(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn canonical_form_is_relabeling_invariant((d, perm) in digraph_with_permutation(5)) {
        let r = relabel(&d, &perm);
        prop_assert_eq!(d.canonical_form(), r.canonical_form());
        prop_assert!(d.are_isomorphic(&r));
    }

    #[test]
    fn canonical_representative_is_isomorphic(d in arbitrary_digraph(0, 5)) {
        let c = d.canonical();
        prop_assert!(brute_isomorphic(&c, &d));
        prop_assert_eq!(c.canonical(), c);
    }

    #[test]
    fn form_equality_matches_brute_isomorphism(
        a in arbitrary_digraph(0, 4),
        b in arbitrary_digraph(0, 4),
    ) {
        prop_assert_eq!(
            a.canonical_form() == b.canonical_form(),
            brute_isomorphic(&a, &b)
        );
    }

    #[test]
    fn deletion_matches_induced_subdigraph(d in arbitrary_digraph(1, 6)) {
        for v in d.vertices() {
            let (del, relab) = d.delete_vertex(v).unwrap();
            let keep: VertexSet = d.vertices().filter(|&u| u != v).collect();
            let (ind, _) = d.induced_subdigraph(keep).unwrap();
            prop_assert_eq!(&del, &ind);
            prop_assert_eq!(relab.len(), d.order() - 1);
        }
    }

    #[test]
    fn twin_classification_is_symmetric_and_witnessed((d, u, v) in digraph_with_pair(6)) {
        let t = twin_type(&d, u, v).unwrap();
        prop_assert_eq!(&t, &twin_type(&d, v, u).unwrap());
        let arcs = (d.arc(u, v), d.arc(v, u));
        match t {
            TwinClassification::NotTwins { witness } => {
                prop_assert!(distinguishes(&d, witness, u, v).unwrap());
                for w in 0..witness {
                    if w != u && w != v {
                        prop_assert!(!distinguishes(&d, w, u, v).unwrap());
                    }
                }
            }
            TwinClassification::FalseTwins => prop_assert_eq!(arcs, (false, false)),
            TwinClassification::TrueTwins => prop_assert_eq!(arcs, (true, true)),
            TwinClassification::MixedTwins => prop_assert!(arcs.0 != arcs.1),
        }
    }

    #[test]
    fn true_twins_flip_to_false_twins_in_the_complement((d, u, v) in digraph_with_pair(6)) {
        let here = twin_type(&d, u, v).unwrap();
        let there = twin_type(&d.complement(), u, v).unwrap();
        prop_assert_eq!(
            matches!(here, TwinClassification::TrueTwins),
            matches!(there, TwinClassification::FalseTwins)
        );
    }

    #[test]
    fn point_determining_means_no_false_twins(d in arbitrary_digraph(0, 6)) {
        let n = d.order();
        let naive = (0..n).all(|u| {
            (u + 1..n).all(|v| {
                !matches!(twin_type(&d, u, v).unwrap(), TwinClassification::FalseTwins)
            })
        });
        prop_assert_eq!(is_point_determining(&d), naive);
    }

    #[test]
    fn homogeneity_matches_distinguisher_freeness(
        d in arbitrary_digraph(0, 5),
        mask in any::<u64>(),
    ) {
        let s: VertexSet = d.vertices().filter(|v| mask >> v & 1 == 1).collect();
        let members = s.to_vec();
        let naive = d.vertices().filter(|v| !s.contains(*v)).all(|w| {
            members.iter().enumerate().all(|(i, &u)| {
                members[i + 1..]
                    .iter()
                    .all(|&v| !distinguishes(&d, w, u, v).unwrap())
            })
        });
        prop_assert_eq!(is_homogeneous(&d, s).unwrap(), naive);
    }

    #[test]
    fn solver_agrees_with_exhaustive_search(
        d in arbitrary_digraph(0, 4),
        m in arbitrary_matrix(2),
    ) {
        let oracle = oracle_solve(&d, &m);
        let got = solve_mpartition(&d, &m);
        match (&got, &oracle) {
            (None, None) => {}
            (Some(p), Some(parts)) => {
                prop_assert!(validate_partition(&d, &m, p).unwrap().is_valid());
                prop_assert_eq!(p.as_slice(), parts.as_slice());
            }
            _ => prop_assert!(false, "solver {:?} oracle {:?}", got, oracle),
        }
        prop_assert_eq!(find_full_homomorphism(&d, &m).is_some(), oracle.is_some());
        prop_assert_eq!(satisfiable(&d, &m, &[]), oracle.is_some());
    }

    #[test]
    fn pinned_satisfiability_implies_unpinned(
        d in arbitrary_digraph(1, 4),
        m in arbitrary_matrix(2),
        seed in any::<u64>(),
    ) {
        let n = d.order();
        let pins: Vec<Option<usize>> = (0..n)
            .map(|v| {
                let bits = seed >> (2 * v) & 3;
                (m.size() > 0 && bits != 3).then(|| bits as usize % m.size())
            })
            .collect();
        if satisfiable(&d, &m, &pins) {
            prop_assert!(satisfiable(&d, &m, &[]));
        }
    }

    #[test]
    fn extension_over_a_duplicated_vertex_is_valid(
        (d, u) in arbitrary_digraph(1, 4).prop_flat_map(|d| {
            let n = d.order();
            (Just(d), 0..n)
        }),
        m in arbitrary_matrix(2),
    ) {
        let n = d.order();
        let mut arcs = d.arcs();
        for w in d.vertices() {
            if d.arc(u, w) {
                arcs.push((n, w));
            }
            if d.arc(w, u) {
                arcs.push((w, n));
            }
        }
        let dup = Digraph::new(n + 1, &arcs).unwrap();
        let pair = VertexSet::from_members(&[u, n]);
        let Some(base) = solve_mpartition(&d, &m) else {
            return Ok(());
        };
        match extend_partition_homogeneous(&dup, &m, n, &base, pair) {
            Ok(full) => {
                prop_assert!(validate_partition(&dup, &m, &full).unwrap().is_valid());
                prop_assert_eq!(&full.as_slice()[..n], base.as_slice());
            }
            Err(ExtendError::NoMatchingPart) => {
                let p = base.part_of(u);
                prop_assert!(m.entry(p, p));
            }
            Err(other) => prop_assert!(false, "unexpected error {other:?}"),
        }
    }
}
