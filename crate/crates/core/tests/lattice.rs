use cdm_core::codec::{decode_labeled, decode_structured, encode, graphs_on, graphs_up_to, isomorphic, Graph};
use cdm_core::group::{automorphisms, is_normal};
use cdm_core::groups::{dp_group, w_group};
use cdm_core::subgroups::{enumerate_normal, subgroup_lattice};
use cdm_core::{FiniteGroup, System, TableGroup};

/// Canonical form of a labelled graph: the least edge mask over all vertex
/// relabellings.
fn canonical(n: usize, edges: &[(usize, usize)]) -> u32 {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let bit = |a: usize, b: usize| pairs.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u32::MAX;
    loop {
        let mask = edges.iter().fold(0u32, |m, &(a, b)| m | 1 << bit(perm[a], perm[b]));
        best = best.min(mask);
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    best
}

fn type_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<_> = (0..pairs.len()).filter(|k| mask >> k & 1 == 1).map(|k| pairs[k]).collect();
        seen.insert(canonical(n, &edges));
    }
    seen.len()
}

#[test]
fn graph_type_counts_match_brute_force() {
    for n in 0..=4 {
        assert_eq!(graphs_on(n).len(), type_count(n), "n = {n}");
    }
    assert_eq!(graphs_up_to(4).len(), (0..=4).map(type_count).sum::<usize>());
}

#[test]
fn normal_subgroups_of_w_agree_with_full_lattice() {
    let w = w_group(3, 5);
    let mut from_lattice: Vec<_> = subgroup_lattice(&w, 10_000)
        .unwrap()
        .into_iter()
        .filter(|s| is_normal(&w, s))
        .collect();
    let mut direct: Vec<_> = enumerate_normal(&w, 10_000).unwrap().into_iter().map(|n| n.elements).collect();
    from_lattice.sort_by_key(|s| s.ones().collect::<Vec<_>>());
    direct.sort_by_key(|s| s.ones().collect::<Vec<_>>());
    assert_eq!(from_lattice, direct);
}

#[test]
fn system_sizes_are_sums_of_indices() {
    for g in [dp_group(3), TableGroup::cyclic(6), TableGroup::elementary_abelian(2)] {
        let ns = enumerate_normal(&g, 1000).unwrap();
        let want: usize = ns.iter().map(|n| g.order() / n.order).sum();
        let sys = System::build(g, 3, 5, ns).unwrap();
        assert_eq!(sys.element_count(), want);
    }
    let d3 = dp_group(3);
    let ns = enumerate_normal(&d3, 1000).unwrap();
    // trivial, rotations, whole group: 6 + 2 + 1
    assert_eq!(System::build(d3, 3, 5, ns).unwrap().element_count(), 9);
}

#[test]
fn automorphism_counts() {
    // Aut(D_3) ≅ D_3 and Aut(C_2²) ≅ S_3.
    assert_eq!(automorphisms(&dp_group(3)).len(), 6);
    assert_eq!(automorphisms(&TableGroup::elementary_abelian(2)).len(), 6);
    assert_eq!(automorphisms(&TableGroup::cyclic(9)).len(), 6);
}

#[test]
fn encoding_round_trips_on_small_graphs() {
    for g in graphs_up_to(2) {
        for extra in 0..=1 {
            let group = encode(&g, extra, 3, 5).unwrap();
            assert!(isomorphic(&decode_structured(&group).unwrap(), &g), "{g:?}");
            let ns = enumerate_normal(&group, 10_000).unwrap();
            let sys = System::build(group, 3, 5, ns).unwrap();
            assert!(isomorphic(&decode_labeled(&sys).unwrap(), &g), "{g:?}");
        }
    }
    let path = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
    assert!(isomorphic(&decode_structured(&encode(&path, 0, 3, 5).unwrap()).unwrap(), &path));
}
