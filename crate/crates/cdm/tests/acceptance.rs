//! Acceptance suite: thirteen criteria, each with a time limit, one result
//! line per criterion. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cdm_core::automorphism::{coordinate_change, factor, reconstruct_bottom, SystemAutomorphism};
use cdm_core::bounding::check_bounding;
use cdm_core::codec::{decode, decode_labeled, decode_structured, encode, graphs_up_to, isomorphic};
use cdm_core::lemmas::{verify, Instance, LabConfig, LemmaId, Status};
use cdm_core::subgroups::{enumerate_normal, iso_tag, quotient, DEFAULT_MAX_ORDER};
use cdm_core::{FiniteGroup, IsoTag, StructuredElement, StructuredGroup, System, TableGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

struct Criterion {
    number: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

const P: u32 = 3;
const Q: u32 = 5;

fn cfg() -> LabConfig {
    LabConfig::default()
}

fn inst(text: &str) -> Instance {
    Instance::parse(text).expect("instance")
}

fn system(g: StructuredGroup) -> System<StructuredGroup> {
    let ns = enumerate_normal(&g, DEFAULT_MAX_ORDER).expect("enumeration");
    System::build(g, P, Q, ns).expect("system")
}

/// Runs the lemma on every instance and fails on the first non-PASS.
fn lemma_on(id: LemmaId, instances: &[&str]) -> Check {
    let mut checked = 0;
    for text in instances {
        let r = verify(id, &inst(text), &cfg()).map_err(|e| format!("{id} on {text}: {e}"))?;
        if r.status != Status::Pass {
            return Err(format!("{id} on {text}: {}", r.counterexample.unwrap_or_default()));
        }
        checked += r.checked_count;
    }
    Ok(format!("{id}: {} instances, {checked} cases", instances.len()))
}

fn all_of(parts: Vec<Check>) -> Check {
    let mut notes = Vec::new();
    for p in parts {
        notes.push(p?);
    }
    Ok(notes.join("; "))
}

fn round_trip() -> Check {
    let graphs = graphs_up_to(4);
    let four = graphs.iter().filter(|g| g.vertices().len() == 4).count();
    if four != 11 {
        return Err(format!("{four} isomorphism types on 4 vertices"));
    }
    for g in &graphs {
        for k in 0..=2 {
            let group = encode(g, k, P, Q).map_err(|e| e.to_string())?;
            let back = decode_structured(&group).map_err(|e| e.to_string())?;
            if back != *g || !isomorphic(&back, g) {
                return Err(format!("{} with {k} extra factors", Instance::new(g.clone(), 0)));
            }
        }
    }
    Ok(format!("{} graphs (11 on four vertices) x 3 extra counts", graphs.len()))
}

const CRITERION_2: [&str; 5] = ["empty", "a", "a,b", "a-b", "a-b,b-c"];

fn oracle_decode() -> Check {
    for text in CRITERION_2 {
        let g = inst(text).graph;
        let sys = system(encode(&g, 0, P, Q).map_err(|e| e.to_string())?);
        let structured = decode_structured(sys.group()).map_err(|e| e.to_string())?;
        let labeled = decode_labeled(&sys).map_err(|e| e.to_string())?;
        let bare = decode(&sys).map_err(|e| e.to_string())?;
        if labeled != structured || structured != g || !isomorphic(&bare, &g) {
            return Err(format!("{text}: oracle gave {}", Instance::new(labeled, 0)));
        }
    }
    Ok("graphs on at most 2 vertices and the 3-vertex path (order 5400)".into())
}

fn no_unexpected() -> Check {
    lemma_on(
        LemmaId::NoUnexpected,
        &["+1", "+2", "a", "a+1", "a+2", "a,b", "a,b+1", "a,b+2"],
    )
}

fn frattini() -> Check {
    lemma_on(LemmaId::FrattiniTrivial, &["a", "a,b", "a-b"])
}

fn dq_quotient() -> Check {
    let w = encode(&inst("a-b").graph, 0, P, Q).map_err(|e| e.to_string())?;
    let ns = enumerate_normal(&w, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
    let m = ns
        .iter()
        .find(|n| n.index == 2 * Q as usize && iso_tag(&quotient(&w, n), P, Q) == IsoTag::Dq)
        .ok_or("no normal subgroup with quotient D_q")?;
    let r = check_bounding(&w, m).map_err(|e| e.to_string())?;
    if r.v3 != ["a", "b"] || r.v3.len() as u32 > 2 * r.m || r.m != 1 || !r.passed() {
        return Err(format!("V3 = {:?}, m = {}, claims {:?}", r.v3, r.m, r.claims));
    }
    Ok(format!("M = [{}], V3 = {{a,b}}, m = 1", m.golden_line()))
}

fn bounding() -> Check {
    lemma_on(LemmaId::Bounding, &["a-b", "a-b+1"])
}

fn sylow() -> Check {
    all_of(vec![
        lemma_on(LemmaId::NormalSylow, &["a-b", "a,b+1"]),
        lemma_on(LemmaId::SylowIntersect, &["a-b", "a,b+1"]),
    ])
}

fn modular() -> Check {
    all_of(vec![lemma_on(LemmaId::ModularLaw, &["a-b"]), lemma_on(LemmaId::FiberIso, &["a-b"])])
}

fn dictionary() -> Check {
    lemma_on(LemmaId::Dictionary, &CRITERION_2)
}

const CRITERION_10: [&str; 8] = ["empty", "+1", "a", "a+1", "a,b", "a,b+1", "a-b", "a-b+1"];

fn exchange() -> Check {
    all_of(vec![
        lemma_on(LemmaId::Exchange, &CRITERION_10),
        lemma_on(LemmaId::C2Generation, &CRITERION_10),
    ])
}

fn formulas() -> Check {
    lemma_on(LemmaId::WidthDefinability, &CRITERION_10)
}

fn automorphisms() -> Check {
    let extend = lemma_on(LemmaId::ExtendAuts, &["a-b"])?;
    let w = encode(&inst("a-b").graph, 0, P, Q).map_err(|e| e.to_string())?;
    let swap = coordinate_change(&w, &[1, 0]).map_err(|e| e.to_string())?;
    let (f, sigma) = factor(&w, &swap).map_err(|e| e.to_string())?;
    if f != [1, 0] || sigma.images != (0..w.order()).collect::<Vec<_>>() {
        return Err("the swap does not factor as a pure coordinate change".into());
    }
    let sys = system(w.clone());
    let auto = SystemAutomorphism::from_group_automorphism(&sys, &swap).map_err(|e| e.to_string())?;
    let vertex_classes: Vec<usize> = (0..2)
        .map(|v| sys.find_subgroup(&w.vertex_projection(v).kernel()).expect("vertex class"))
        .collect();
    let edge_class = sys.find_subgroup(&w.edge_projection(0).kernel()).expect("edge class");
    if auto.class_map[vertex_classes[0]] != vertex_classes[1] || !auto.preserves_structure(&sys) {
        return Err("the swap does not exchange the two D_p classes".into());
    }
    let fixed = [vertex_classes[0], vertex_classes[1], edge_class];
    let bottom = sys.class_elements(sys.class_count() - 1);
    if reconstruct_bottom(&sys, &fixed, &auto).as_deref() != Some(&auto.element_map[bottom]) {
        return Err("the swap is not determined by its vertex and edge classes".into());
    }
    let unique = lemma_on(LemmaId::UniqueAut, &["a", "a-b"])?;
    Ok(format!("{extend}; swap reconstructed; {unique}"))
}

fn group_axioms() -> Check {
    let mut exhaustive = 0;
    for base in ["empty", "a", "a,b", "a-b", "a,b,c"] {
        for k in 0..=2 {
            let g = encode(&inst(base).graph, k, P, Q).map_err(|e| e.to_string())?;
            if g.order() > 1000 {
                continue;
            }
            let t = TableGroup::from_group(&g);
            let inverses = (0..g.order()).all(|a| g.mul(a, g.inv(a)) == 0 && g.mul(g.inv(a), a) == 0);
            let identity = (0..g.order()).all(|a| g.mul(0, a) == a && g.mul(a, 0) == a);
            if !t.is_associative() || !inverses || !identity {
                return Err(format!("group axioms fail for {base}+{k}"));
            }
            exhaustive += 1;
        }
    }
    let triangle = encode(&inst("a-b,b-c,a-c").graph, 0, P, Q).map_err(|e| e.to_string())?;
    if triangle.order() != 27000 {
        return Err(format!("triangle group has order {}", triangle.order()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let n = triangle.order();
    for _ in 0..100_000 {
        let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
        let left = triangle.mul(triangle.mul(a, b), c);
        let right = triangle.mul(a, triangle.mul(b, c));
        // Cross-check the product against coordinatewise multiplication.
        let (ea, eb) = (triangle.element(a), triangle.element(b));
        let (fa, fb) = (ea.to_product_form(), eb.to_product_form());
        let mut prod = fa.clone();
        for (x, y) in prod.vertices.iter_mut().zip(&fb.vertices) {
            *x = x.mul(*y);
        }
        for (x, y) in prod.edges.iter_mut().zip(&fb.edges) {
            *x = x.mul(*y);
        }
        let coordinatewise = StructuredElement::from_product_form(triangle.params(), &prod)
            .map_err(|e| e.to_string())?
            .encode();
        if left != right || coordinatewise != triangle.mul(a, b) || triangle.mul(a, triangle.inv(a)) != 0 {
            return Err(format!("triple ({a}, {b}, {c}) in the triangle group"));
        }
    }
    Ok(format!("{exhaustive} groups of order <= 1000 exhaustively; 100000 seeded triples in order 27000"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { number: 1, title: "encode/decode round trip", limit: Duration::from_secs(10), run: round_trip },
        Criterion { number: 2, title: "oracle decode agreement", limit: Duration::from_secs(300), run: oracle_decode },
        Criterion { number: 3, title: "no unexpected quotients", limit: Duration::from_secs(60), run: no_unexpected },
        Criterion { number: 4, title: "trivial Frattini subgroup", limit: Duration::from_secs(60), run: frattini },
        Criterion { number: 5, title: "W/M is D_q", limit: Duration::from_secs(5), run: dq_quotient },
        Criterion { number: 6, title: "bounding claims", limit: Duration::from_secs(120), run: bounding },
        Criterion { number: 7, title: "Sylow identities", limit: Duration::from_secs(120), run: sylow },
        Criterion { number: 8, title: "modular law and fiber products", limit: Duration::from_secs(120), run: modular },
        Criterion { number: 9, title: "dictionary and width", limit: Duration::from_secs(120), run: dictionary },
        Criterion { number: 10, title: "exchange and C2 generation", limit: Duration::from_secs(120), run: exchange },
        Criterion { number: 11, title: "formula/algebra agreement", limit: Duration::from_secs(300), run: formulas },
        Criterion { number: 12, title: "automorphism assembly", limit: Duration::from_secs(30), run: automorphisms },
        Criterion { number: 13, title: "group axioms", limit: Duration::from_secs(60), run: group_axioms },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= c.limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time limit; {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {:>2} {status} {} ({:.2} s, limit {} s): {detail}",
            c.number,
            c.title,
            took.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
