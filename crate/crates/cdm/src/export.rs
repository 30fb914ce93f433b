//! System exports: a JSON document with the subgroup and element tables, and
//! a DOT drawing of the class poset.

use std::fmt::Write as _;

use cdm_core::subgroups::normal_closure;
use cdm_core::{FiniteGroup, StructuredGroup, System};
use serde::{Deserialize, Serialize};

use crate::graph_file::{GraphFile, GraphJson};
use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
pub struct SystemJson {
    pub params: ParamsJson,
    pub subgroups: Vec<SubgroupJson>,
    pub elements: Vec<ElementJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ParamsJson {
    pub p: u32,
    pub q: u32,
    pub order: usize,
    pub graph: GraphJson,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SubgroupJson {
    pub id: usize,
    pub order: usize,
    pub index: usize,
    pub generators: Vec<usize>,
    pub iso_tag: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ElementJson {
    pub id: usize,
    pub subgroup_id: usize,
    pub rep: usize,
}

pub fn system_json(sys: &System<StructuredGroup>, file: &GraphFile) -> SystemJson {
    let (p, q) = sys.primes();
    let subgroups = (0..sys.class_count())
        .map(|s| {
            let n = sys.subgroup(s);
            SubgroupJson {
                id: s,
                order: n.order,
                index: n.index,
                generators: n.gens.clone(),
                iso_tag: sys.tag(s).name(),
            }
        })
        .collect();
    let elements = (0..sys.element_count())
        .map(|id| {
            let e = sys.element(id);
            ElementJson {
                id,
                subgroup_id: e.subgroup,
                rep: e.rep,
            }
        })
        .collect();
    SystemJson {
        params: ParamsJson {
            p,
            q,
            order: sys.group().order(),
            graph: file.to_json(),
        },
        subgroups,
        elements,
    }
}

/// Rebuilds a system from its JSON export: the group from the parameters,
/// each subgroup as the normal closure of its generators. The stored orders
/// must match what the generators give.
pub fn system_from_json(doc: SystemJson, max_order: usize) -> Result<(System<StructuredGroup>, GraphFile), CliError> {
    let file = GraphFile::from_json(doc.params.graph)?;
    let g = cdm_core::codec::encode(&file.graph, file.c2, doc.params.p, doc.params.q)?;
    if g.order() != doc.params.order {
        return Err(CliError::Input(format!(
            "stored order {} does not match the parameters (order {})",
            doc.params.order,
            g.order()
        )));
    }
    if g.order() > max_order {
        return Err(cdm_core::Error::Budget {
            what: "system import",
            size: g.order() as u64,
            limit: max_order as u64,
        }
        .into());
    }
    let mut family = Vec::with_capacity(doc.subgroups.len());
    for s in &doc.subgroups {
        if let Some(&bad) = s.generators.iter().find(|&&c| c >= g.order()) {
            return Err(CliError::Input(format!("subgroup {}: generator {bad} out of range", s.id)));
        }
        let n = normal_closure(&g, &s.generators, max_order)?;
        if n.order != s.order || n.index != s.index {
            return Err(CliError::Input(format!(
                "subgroup {}: generators give order {}, stored {}",
                s.id, n.order, s.order
            )));
        }
        family.push(n);
    }
    let sys = System::build(g, doc.params.p, doc.params.q, family)?;
    Ok((sys, file))
}

/// The class poset as a DOT digraph: one node per class labelled with its
/// id, iso tag and index, and an arrow `s -> t` when `N_s` is a maximal
/// proper subgroup of `N_t` within the family.
pub fn dot(sys: &System<StructuredGroup>) -> String {
    let k = sys.class_count();
    let mut out = String::from("digraph classes {\n  rankdir=BT;\n");
    for s in 0..k {
        let _ = writeln!(
            out,
            "  c{s} [label=\"{s}: {} (index {})\"];",
            sys.tag(s),
            sys.subgroup(s).index
        );
    }
    for s in 0..k {
        for t in 0..k {
            if s == t || !sys.subset(s, t) {
                continue;
            }
            let covered = (0..k).any(|u| u != s && u != t && sys.subset(s, u) && sys.subset(u, t));
            if !covered {
                let _ = writeln!(out, "  c{s} -> c{t};");
            }
        }
    }
    out.push_str("}\n");
    out
}
