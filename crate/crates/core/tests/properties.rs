use cdm_core::gf2::{in_span, independent, rank, F2Vector};
use cdm_core::logic::parse_formula;
use proptest::prelude::*;

/// Size of the span by enumerating every subset sum.
fn span_size(vs: &[F2Vector], len: usize) -> usize {
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << vs.len()) {
        let mut acc = F2Vector::zero(len);
        for (i, v) in vs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc.add_assign(v);
            }
        }
        seen.insert(acc.support());
    }
    seen.len()
}

fn vectors(len: usize) -> impl Strategy<Value = Vec<F2Vector>> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), len), 0..7)
        .prop_map(|rows| rows.into_iter().map(F2Vector::from_bits).collect())
}

fn formula_text() -> impl Strategy<Value = String> {
    let var = prop::sample::select(vec!["a", "b", "c"]);
    let leaf = prop_oneof![
        Just("true".to_string()),
        Just("false".to_string()),
        (var.clone(), var.clone()).prop_map(|(x, y)| format!("leq({x}, {y})")),
        (var.clone(), var.clone()).prop_map(|(x, y)| format!("c({x}, {y})")),
        (var.clone(), var.clone(), var.clone()).prop_map(|(x, y, z)| format!("p({x}, {y}, {z})")),
        (var.clone(), var.clone()).prop_map(|(x, y)| format!("{x} = {y}")),
        (var.clone(), 1u64..200).prop_map(|(x, n)| format!("in({x}, X[{n}])")),
        (var.clone(), prop::sample::select(vec!["Dp", "W", "C2", "C2^3", "Trivial", "DpxDp", "Cq"]))
            .prop_map(|(x, t)| format!("iso({x}, {t})")),
    ];
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| format!("!({f})")),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| format!("({f}) & ({g})")),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| format!("({f}) | ({g})")),
            (inner.clone(), inner.clone()).prop_map(|(f, g)| format!("({f}) -> ({g})")),
            (prop::sample::select(vec!["exists", "forall"]), var.clone(), 1u64..50, inner.clone())
                .prop_map(|(q, x, n, f)| format!("{q} {x}:X[{n}]. ({f})")),
        ]
    })
}

proptest! {
    #[test]
    fn rank_matches_span_size(vs in vectors(6)) {
        let r = rank(&vs);
        prop_assert_eq!(1usize << r, span_size(&vs, 6));
        prop_assert_eq!(independent(&vs), r == vs.len());
    }

    #[test]
    fn span_membership(vs in vectors(5), target in prop::collection::vec(any::<bool>(), 5)) {
        let t = F2Vector::from_bits(target);
        let mut with = vs.clone();
        with.push(t.clone());
        prop_assert_eq!(in_span(&vs, &t), rank(&with) == rank(&vs));
    }

    #[test]
    fn addition_is_a_group(a in prop::collection::vec(any::<bool>(), 9), b in prop::collection::vec(any::<bool>(), 9)) {
        let (a, b) = (F2Vector::from_bits(a), F2Vector::from_bits(b));
        prop_assert!(a.add(&a).is_zero());
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).weight(), a.weight() + b.weight() - 2 * (0..9).filter(|&i| a.get(i) && b.get(i)).count());
    }

    #[test]
    fn formulas_print_and_reparse(text in formula_text()) {
        let f = parse_formula(&text).unwrap();
        let printed = f.to_string();
        let again = parse_formula(&printed).unwrap();
        prop_assert_eq!(&f, &again);
        prop_assert_eq!(again.to_string(), printed);
        prop_assert_eq!(f.free_vars(), again.free_vars());
    }
}
