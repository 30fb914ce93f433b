//! Graphs, their coding groups, and reading graphs back out of groups and
//! systems.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{Closure, FiniteGroup};
use crate::groups::{dp_group, w_group, Params, StructuredGroup};
use crate::subgroups::IsoTag;
use crate::system::System;

/// A finite simple graph with sorted labels; edges are stored with the
/// smaller label first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    vertices: Vec<String>,
    edges: BTreeSet<(String, String)>,
}

impl Graph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut g = Graph::default();
        for v in vertices {
            g.add_vertex(v.as_ref())?;
        }
        for (a, b) in edges {
            g.add_edge(a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: &str) -> Result<()> {
        match self.vertices.binary_search_by(|x| x.as_str().cmp(v)) {
            Ok(_) => Err(Error::Params(alloc::format!("duplicate vertex `{v}`"))),
            Err(i) => {
                self.vertices.insert(i, v.to_string());
                Ok(())
            }
        }
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<()> {
        for v in [a, b] {
            if !self.has_vertex(v) {
                return Err(Error::Params(alloc::format!("edge endpoint `{v}` is not a vertex")));
            }
        }
        if a == b {
            return Err(Error::Params(alloc::format!("self-loop at `{a}`")));
        }
        let e = if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        if !self.edges.insert(e) {
            return Err(Error::Params(alloc::format!("duplicate edge `{a}`-`{b}`")));
        }
        Ok(())
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).is_ok()
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        let e = if a < b { (a, b) } else { (b, a) };
        self.edges.iter().any(|(x, y)| (x.as_str(), y.as_str()) == e)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn from_params(p: &Params) -> Self {
        Graph {
            vertices: p.vertices().to_vec(),
            edges: (0..p.edges().len())
                .map(|r| {
                    let (a, b) = p.edge_label(r);
                    (a.to_string(), b.to_string())
                })
                .collect(),
        }
    }

    /// The subgraph induced on the given labels.
    pub fn induced(&self, keep: &[String]) -> Graph {
        let mut g = Graph::default();
        for v in keep {
            if self.has_vertex(v) && !g.has_vertex(v) {
                g.add_vertex(v).expect("fresh vertex");
            }
        }
        g.edges = self
            .edges
            .iter()
            .filter(|(a, b)| g.has_vertex(a) && g.has_vertex(b))
            .cloned()
            .collect();
        g
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let idx = |v: &str| self.vertices.binary_search_by(|x| x.as_str().cmp(v)).unwrap();
        let mut adj = vec![vec![false; n]; n];
        for (a, b) in self.edges() {
            let (i, j) = (idx(a), idx(b));
            adj[i][j] = true;
            adj[j][i] = true;
        }
        adj
    }
}

/// Labels of the extra `C₂` factors: `i0, i1, ...`.
pub fn extra_labels(k: usize) -> Vec<String> {
    (0..k).map(|i| alloc::format!("i{i}")).collect()
}

/// `G_Γ × C₂^K`.
pub fn encode(graph: &Graph, k: usize, p: u32, q: u32) -> Result<StructuredGroup> {
    let edges: Vec<(&str, &str)> = graph.edges().collect();
    let verts: Vec<&str> = graph.vertices().iter().map(String::as_str).collect();
    let extra = extra_labels(k);
    let extra: Vec<&str> = extra.iter().map(String::as_str).collect();
    Ok(StructuredGroup::new(Params::new(p, q, &verts, &edges, &extra)?))
}

/// `Γ(S)`: vertices are the `D_p` classes, and two of them are adjacent when
/// some class lying below both is tagged `W`. Vertices are labelled by
/// `label(subgroup id)`.
pub fn decode_with<G: FiniteGroup>(sys: &System<G>, mut label: impl FnMut(usize) -> String) -> Result<Graph> {
    let dp: Vec<usize> = (0..sys.class_count()).filter(|&s| sys.tag(s) == IsoTag::Dp).collect();
    let names: Vec<String> = dp.iter().map(|&s| label(s)).collect();
    let mut g = Graph::default();
    for n in &names {
        g.add_vertex(n)?;
    }
    for i in 0..dp.len() {
        for j in i + 1..dp.len() {
            let edge = (0..sys.class_count())
                .any(|b| sys.tag(b) == IsoTag::W && sys.subset(b, dp[i]) && sys.subset(b, dp[j]));
            if edge {
                g.add_edge(&names[i], &names[j])?;
            }
        }
    }
    Ok(g)
}

/// [`decode_with`] labelling each vertex by its subgroup id.
pub fn decode<G: FiniteGroup>(sys: &System<G>) -> Result<Graph> {
    decode_with(sys, |s| alloc::format!("{s}"))
}

/// Decodes the system of an encoded group, naming the class `ker π_v` by
/// `v`. A `D_p` class that is no `ker π_v` keeps its subgroup id as label.
pub fn decode_labeled(sys: &System<StructuredGroup>) -> Result<Graph> {
    let g = sys.group();
    let params = g.params().clone();
    let kernels: Vec<_> = (0..params.vertices().len())
        .map(|v| g.vertex_projection(v).kernel())
        .collect();
    decode_with(sys, |s| {
        kernels
            .iter()
            .position(|k| *k == sys.subgroup(s).elements)
            .map(|v| params.vertices()[v].clone())
            .unwrap_or_else(|| alloc::format!("{s}"))
    })
}

/// Reads the graph off an encoded group from generator images alone: `v` is
/// a vertex when `π_v` maps the generators onto `D_p`, and `u, v` are
/// adjacent when some edge coordinate over them maps the generators onto `W`.
pub fn decode_structured(g: &StructuredGroup) -> Result<Graph> {
    let params = g.params();
    let (p, q) = (params.p(), params.q());
    let gens: Vec<_> = g.generators().into_iter().map(|c| g.element(c)).collect();
    let dp = dp_group(p);
    let w = w_group(p, q);
    let mut out = Graph::default();
    for v in 0..params.vertices().len() {
        let imgs: Vec<usize> = gens.iter().map(|e| e.vertex_part(v).encode()).collect();
        if Closure::generated(&dp, &imgs).order() == dp.order() {
            out.add_vertex(&params.vertices()[v])?;
        }
    }
    for (r, &(u, v)) in params.edges().iter().enumerate() {
        let imgs: Vec<usize> = gens.iter().map(|e| e.edge_part(r).encode()).collect();
        if Closure::generated(&w, &imgs).order() == w.order() {
            out.add_edge(&params.vertices()[u], &params.vertices()[v])?;
        }
    }
    Ok(out)
}

/// A vertex bijection `a → b` preserving adjacency, as a map from indices of
/// `a`'s sorted vertices to indices of `b`'s.
pub fn find_graph_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    let n = a.vertices.len();
    if n != b.vertices.len() || a.edge_count() != b.edge_count() {
        return None;
    }
    let (aa, ab) = (a.adjacency(), b.adjacency());
    let deg = |adj: &Vec<Vec<bool>>, i: usize| adj[i].iter().filter(|&&x| x).count();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        aa: &[Vec<bool>],
        ab: &[Vec<bool>],
        ok: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if i == map.len() {
            return true;
        }
        for j in 0..map.len() {
            if used[j] || !ok(i, j) || (0..i).any(|k| aa[i][k] != ab[j][map[k]]) {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if go(i + 1, map, used, aa, ab, ok) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    let ok = |i: usize, j: usize| deg(&aa, i) == deg(&ab, j);
    go(0, &mut map, &mut used, &aa, &ab, &ok).then_some(map)
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    find_graph_isomorphism(a, b).is_some()
}

/// Vertex labels `a, b, c, ...` for small graphs.
pub fn letter_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// One graph per isomorphism type on exactly `n` vertices, labelled
/// `a, b, ...`, in order of first appearance by edge bitmask.
pub fn graphs_on(n: usize) -> Vec<Graph> {
    let labels = letter_labels(n);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut reps: Vec<Graph> = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(&str, &str)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &(i, j))| (labels[i].as_str(), labels[j].as_str()))
            .collect();
        let verts: Vec<&str> = labels.iter().map(String::as_str).collect();
        let g = Graph::new(&verts, &edges).expect("valid small graph");
        if !reps.iter().any(|r| isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

/// All isomorphism types with at most `n` vertices.
pub fn graphs_up_to(n: usize) -> Vec<Graph> {
    (0..=n).flat_map(graphs_on).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroups::{enumerate_normal, iso_tag, DEFAULT_MAX_ORDER};

    #[test]
    fn graph_validation() {
        assert!(Graph::new(&["a"], &[("a", "a")]).is_err());
        assert!(Graph::new(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(Graph::new(&["a"], &[("a", "c")]).is_err());
    }

    #[test]
    fn isomorphism_type_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| graphs_on(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11]);
    }

    #[test]
    fn encode_orders() {
        let one = Graph::new(&["a"], &[]).unwrap();
        assert_eq!(encode(&one, 0, 3, 5).unwrap().order(), 6);
        let edge = Graph::new(&["a", "b"], &[("a", "b")]).unwrap();
        let w = encode(&edge, 0, 3, 5).unwrap();
        assert_eq!(w.order(), 180);
        assert_eq!(iso_tag(&w, 3, 5), IsoTag::W);
        assert_eq!(encode(&Graph::default(), 0, 3, 5).unwrap().order(), 1);
    }

    #[test]
    fn oracle_and_structured_decode_agree_on_edge() {
        let edge = Graph::new(&["a", "b"], &[("a", "b")]).unwrap();
        let g = encode(&edge, 1, 3, 5).unwrap();
        assert_eq!(decode_structured(&g).unwrap(), edge);
        let ns = enumerate_normal(&g, DEFAULT_MAX_ORDER).unwrap();
        let sys = System::build(g, 3, 5, ns).unwrap();
        assert_eq!(decode_labeled(&sys).unwrap(), edge);
        assert!(isomorphic(&decode(&sys).unwrap(), &edge));
    }

    #[test]
    fn path_is_not_triangle() {
        let path = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let bent = Graph::new(&["x", "y", "z"], &[("x", "z"), ("z", "y")]).unwrap();
        let tri = Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert!(isomorphic(&path, &bent));
        assert!(!isomorphic(&path, &tri));
    }
}
