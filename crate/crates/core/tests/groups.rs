use std::sync::Arc;

use cdm_core::codec::{encode, Graph};
use cdm_core::{DpElement, FiniteGroup, StructuredElement, StructuredGroup, WElement};
use proptest::prelude::*;

const P: u32 = 3;
const Q: u32 = 5;

fn path3() -> StructuredGroup {
    let g = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
    encode(&g, 1, P, Q).unwrap()
}

fn dp() -> impl Strategy<Value = DpElement> {
    (0..P, 0u8..2).prop_map(|(y, x)| DpElement::new(P, y, x))
}

fn w() -> impl Strategy<Value = WElement> {
    (0..Q, dp(), dp()).prop_map(|(z, b, c)| WElement::new(Q, z, b, c))
}

/// The product computed coordinate by coordinate through the factor groups.
fn product_form_mul(a: &StructuredElement, b: &StructuredElement) -> StructuredElement {
    let (fa, fb) = (a.to_product_form(), b.to_product_form());
    let mut out = fa.clone();
    for (o, (x, y)) in out.vertices.iter_mut().zip(fa.vertices.iter().zip(&fb.vertices)) {
        *o = x.mul(*y);
    }
    for (o, (x, y)) in out.edges.iter_mut().zip(fa.edges.iter().zip(&fb.edges)) {
        *o = x.mul(*y);
    }
    for (o, (x, y)) in out.extra.iter_mut().zip(fa.extra.iter().zip(&fb.extra)) {
        *o = x ^ y;
    }
    StructuredElement::from_product_form(a.params(), &out).unwrap()
}

proptest! {
    #[test]
    fn dp_laws(a in dp(), b in dp(), c in dp()) {
        prop_assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
        prop_assert!(a.mul(a.inv()).is_identity());
        prop_assert_eq!(DpElement::decode(P, a.encode()), a);
        prop_assert_eq!(a.encode(), 2 * a.y as usize + a.x as usize);
    }

    #[test]
    fn w_laws(a in w(), b in w(), c in w()) {
        prop_assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
        prop_assert!(a.mul(a.inv()).is_identity());
        prop_assert_eq!(WElement::decode(P, Q, a.encode()), a);
        let (lb, lc) = a.lambda();
        let (mb, mc) = b.lambda();
        prop_assert_eq!(a.mul(b).lambda(), (lb.mul(mb), lc.mul(mc)));
    }

    #[test]
    fn structured_group_laws(a in 0usize..10800, b in 0usize..10800, c in 0usize..10800) {
        let g = path3();
        prop_assert_eq!(g.order(), 10800);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        prop_assert_eq!(g.mul(0, a), a);
        let (ea, eb) = (g.element(a), g.element(b));
        prop_assert_eq!(ea.encode(), a);
        prop_assert_eq!(product_form_mul(&ea, &eb).encode(), g.mul(a, b));
        prop_assert_eq!(ea.mul(&eb).unwrap().encode(), g.mul(a, b));
    }

    #[test]
    fn product_form_round_trip(a in 0usize..10800) {
        let g = path3();
        let e = g.element(a);
        let back = StructuredElement::from_product_form(g.params(), &e.to_product_form()).unwrap();
        prop_assert_eq!(back.encode(), a);
        prop_assert_eq!(StructuredElement::decode(g.params(), a).unwrap(), e);
    }
}

#[test]
fn element_orders_divide_group_order() {
    let g = path3();
    for a in (0..g.order()).step_by(7) {
        let k = cdm_core::group::element_order(&g, a);
        assert_eq!(g.order() % k, 0);
        assert_eq!(g.element(a).order(), k as u64);
    }
}

#[test]
fn projections_are_homomorphisms() {
    let g = path3();
    let params = Arc::clone(g.params());
    let pv = g.vertex_projection(1);
    let pe = g.edge_projection(0);
    for a in (0..g.order()).step_by(11) {
        for b in (0..g.order()).step_by(13) {
            let ab = g.mul(a, b);
            let d = DpElement::decode(P, pv.apply(a)).mul(DpElement::decode(P, pv.apply(b)));
            assert_eq!(pv.apply(ab), d.encode());
            let e = WElement::decode(P, Q, pe.apply(a)).mul(WElement::decode(P, Q, pe.apply(b)));
            assert_eq!(pe.apply(ab), e.encode());
        }
    }
    assert_eq!(params.order(), 10800);
}
