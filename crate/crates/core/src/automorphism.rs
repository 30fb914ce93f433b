//! Automorphisms of `D_p`, their extension to `W`, coordinate changes along
//! graph automorphisms, and assembling automorphisms of a structured group
//! and of its complete system from per-coordinate data.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{automorphisms, ElementSet, FiniteGroup, Hom};
use crate::groups::{dp_group, w_group, DpElement, ProductForm, StructuredElement, StructuredGroup, WElement};
use crate::system::System;

/// `Aut(D_p)` on `D_p` codes, in search order (the identity first).
pub fn dp_automorphisms(p: u32) -> Vec<Hom> {
    let mut auts = automorphisms(&dp_group(p));
    auts.sort_by(|a, b| a.images.cmp(&b.images));
    auts
}

fn check_automorphism<G: FiniteGroup>(g: &G, h: &Hom) -> Result<()> {
    if !h.is_bijective() {
        return Err(Error::Contract("map is not a bijection".into()));
    }
    Hom::from_images_checked(g, g, h.images.clone()).map(|_| ())
}

/// `ν = id × σ₁ × σ₂` on `W`, checked to be an automorphism with
/// `λ ∘ ν = (σ₁ × σ₂) ∘ λ`.
pub fn extend_w_automorphism(p: u32, q: u32, s1: &Hom, s2: &Hom) -> Result<Hom> {
    let dp = dp_group(p);
    check_automorphism(&dp, s1)?;
    check_automorphism(&dp, s2)?;
    for a in DpElement::all(p) {
        for s in [s1, s2] {
            if DpElement::decode(p, s.apply(a.encode())).tau() != a.tau() {
                return Err(Error::Contract("automorphism moves the sign".into()));
            }
        }
    }
    let images: Vec<usize> = WElement::all(p, q)
        .map(|w| {
            let b = DpElement::decode(p, s1.apply(w.b.encode()));
            let c = DpElement::decode(p, s2.apply(w.c.encode()));
            WElement::new(q, w.z, b, c).encode()
        })
        .collect();
    let nu = Hom {
        images,
        target_order: (4 * p * p * q) as usize,
    };
    check_automorphism(&w_group(p, q), &nu)?;
    for w in WElement::all(p, q) {
        let v = WElement::decode(p, q, nu.apply(w.encode()));
        let (b, c) = w.lambda();
        let want = (
            DpElement::decode(p, s1.apply(b.encode())),
            DpElement::decode(p, s2.apply(c.encode())),
        );
        if v.lambda() != want {
            return Err(Error::Contract("square does not commute".into()));
        }
    }
    Ok(nu)
}

/// `(z, b, c) ↦ (z, c, b)`, needed when a graph map reverses an edge's
/// stored orientation.
pub fn w_slot_swap(p: u32, q: u32) -> Hom {
    Hom {
        images: WElement::all(p, q)
            .map(|w| WElement::new(q, w.z, w.c, w.b).encode())
            .collect(),
        target_order: (4 * p * p * q) as usize,
    }
}

fn check_graph_automorphism(g: &StructuredGroup, f: &[usize]) -> Result<Vec<usize>> {
    let params = g.params();
    let nv = params.vertices().len();
    let mut seen = vec![false; nv];
    if f.len() != nv || f.iter().any(|&v| v >= nv || core::mem::replace(&mut seen[v], true)) {
        return Err(Error::Contract("not a permutation of the vertices".into()));
    }
    params
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (f[u], f[v]);
            params
                .edges()
                .binary_search(&(a.min(b), a.max(b)))
                .map_err(|_| Error::Contract("vertex map does not preserve edges".into()))
        })
        .collect()
}

/// Per-coordinate data for [`assemble`]: a vertex permutation `f` and, for
/// each vertex and edge of the source, an automorphism of `D_p` or `W`
/// applied before moving the coordinate to its image under `f`.
#[derive(Debug, Clone)]
pub struct CoordinateMaps {
    pub vertex_perm: Vec<usize>,
    pub vertex: Vec<Hom>,
    pub edge: Vec<Hom>,
}

impl CoordinateMaps {
    pub fn identity(g: &StructuredGroup) -> Self {
        let params = g.params();
        let id_dp = Hom {
            images: (0..2 * params.p() as usize).collect(),
            target_order: 2 * params.p() as usize,
        };
        let wn = (4 * params.p() * params.p() * params.q()) as usize;
        let id_w = Hom {
            images: (0..wn).collect(),
            target_order: wn,
        };
        CoordinateMaps {
            vertex_perm: (0..params.vertices().len()).collect(),
            vertex: vec![id_dp; params.vertices().len()],
            edge: vec![id_w; params.edges().len()],
        }
    }
}

/// The automorphism `g ↦ h` with `π_{f(v)}(h) = σ_v(π_v(g))` and
/// `π_{f(r)}(h) = σ_r(π_r(g))` (slots swapped if `f` reverses `r`). Fails if
/// some `σ_r` is incompatible with its endpoints.
pub fn assemble(g: &StructuredGroup, maps: &CoordinateMaps) -> Result<Hom> {
    let params = g.params().clone();
    let (p, q) = (params.p(), params.q());
    let edge_image = check_graph_automorphism(g, &maps.vertex_perm)?;
    if maps.vertex.len() != params.vertices().len() || maps.edge.len() != params.edges().len() {
        return Err(Error::Contract("coordinate maps have the wrong shape".into()));
    }
    let swap = w_slot_swap(p, q);
    let mut images = Vec::with_capacity(g.order());
    for c in 0..g.order() {
        let form = g.element(c).to_product_form();
        let mut out = ProductForm {
            vertices: vec![DpElement::identity(p); form.vertices.len()],
            edges: vec![WElement::identity(p, q); form.edges.len()],
            extra: form.extra.clone(),
        };
        for (v, a) in form.vertices.iter().enumerate() {
            out.vertices[maps.vertex_perm[v]] = DpElement::decode(p, maps.vertex[v].apply(a.encode()));
        }
        for (r, b) in form.edges.iter().enumerate() {
            let (u, v) = params.edges()[r];
            let mut code = maps.edge[r].apply(b.encode());
            if maps.vertex_perm[u] > maps.vertex_perm[v] {
                code = swap.apply(code);
            }
            out.edges[edge_image[r]] = WElement::decode(p, q, code);
        }
        images.push(StructuredElement::from_product_form(&params, &out)?.encode());
    }
    let hom = Hom {
        images,
        target_order: g.order(),
    };
    let gens = g.generators();
    let imgs: Vec<usize> = gens.iter().map(|&s| hom.apply(s)).collect();
    match Hom::from_generator_images(g, g, &gens, &imgs) {
        Some(h) if h == hom && h.is_bijective() => Ok(hom),
        _ => Err(Error::Contract("assembled map is not an automorphism".into())),
    }
}

/// The coordinate-change automorphism `φ_f`.
pub fn coordinate_change(g: &StructuredGroup, f: &[usize]) -> Result<Hom> {
    let mut maps = CoordinateMaps::identity(g);
    maps.vertex_perm = f.to_vec();
    assemble(g, &maps)
}

/// The graph map `Γ(φ)`: `v ↦ w` when `φ` carries `ker π_v` onto
/// `ker π_w`. Fails if some vertex kernel is not sent to a vertex kernel.
pub fn induced_graph_map(g: &StructuredGroup, phi: &Hom) -> Result<Vec<usize>> {
    let kernels: Vec<ElementSet> = (0..g.params().vertices().len())
        .map(|v| g.vertex_projection(v).kernel())
        .collect();
    kernels
        .iter()
        .map(|k| {
            let img = phi.image_of(k);
            kernels
                .iter()
                .position(|k2| *k2 == img)
                .ok_or_else(|| Error::Contract("vertex kernel not preserved".into()))
        })
        .collect()
}

/// Splits `φ = σ̄ ∘ φ_f` with `f = Γ(φ)` and checks that `σ̄` fixes every
/// vertex and edge kernel, so it acts coordinatewise.
pub fn factor(g: &StructuredGroup, phi: &Hom) -> Result<(Vec<usize>, Hom)> {
    let f = induced_graph_map(g, phi)?;
    let phi_f = coordinate_change(g, &f)?;
    let inv = phi_f.inverse().ok_or_else(|| Error::Contract("coordinate change not bijective".into()))?;
    let sigma = inv.then(phi);
    let params = g.params();
    for v in 0..params.vertices().len() {
        let k = g.vertex_projection(v).kernel();
        if sigma.image_of(&k) != k {
            return Err(Error::Contract("residual map moves a vertex kernel".into()));
        }
    }
    for r in 0..params.edges().len() {
        let k = g.edge_projection(r).kernel();
        if sigma.image_of(&k) != k {
            return Err(Error::Contract("residual map moves an edge kernel".into()));
        }
    }
    Ok((f, sigma))
}

/// Reads the per-coordinate maps off a map that fixes every coordinate:
/// `σ_v(d) = π_v(σ((d)_v))` and likewise on edges. The vertex permutation is
/// the identity. Assembling the result gives `σ` back exactly when `σ` acts
/// coordinatewise.
pub fn coordinate_maps_of(g: &StructuredGroup, sigma: &Hom) -> CoordinateMaps {
    let params = g.params();
    let (p, q) = (params.p(), params.q());
    let mut maps = CoordinateMaps::identity(g);
    for v in 0..params.vertices().len() {
        let images = DpElement::all(p)
            .map(|d| g.element(sigma.apply(g.vertex_code(v, d))).vertex_part(v).encode())
            .collect();
        maps.vertex[v] = Hom {
            images,
            target_order: 2 * p as usize,
        };
    }
    for r in 0..params.edges().len() {
        let images: Vec<usize> = WElement::all(p, q)
            .map(|w| g.element(sigma.apply(g.edge_code(r, w))).edge_part(r).encode())
            .collect();
        let n = images.len();
        maps.edge[r] = Hom { images, target_order: n };
    }
    maps
}

/// An automorphism of a complete system, as permutations of classes and of
/// element ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemAutomorphism {
    pub class_map: Vec<usize>,
    pub element_map: Vec<usize>,
}

impl SystemAutomorphism {
    /// The dual of a group automorphism: `gN ↦ φ(g)φ(N)`.
    pub fn from_group_automorphism<G: FiniteGroup>(sys: &System<G>, phi: &Hom) -> Result<Self> {
        let mut class_map = Vec::with_capacity(sys.class_count());
        for s in 0..sys.class_count() {
            let img = phi.image_of(&sys.subgroup(s).elements);
            class_map.push(
                sys.find_subgroup(&img)
                    .ok_or_else(|| Error::Closure("image of a family member".into()))?,
            );
        }
        let mut element_map = vec![0; sys.element_count()];
        for s in 0..sys.class_count() {
            let t = class_map[s];
            let start = sys.class_elements(t).start;
            for (k, id) in sys.class_elements(s).enumerate() {
                let rep = sys.cosets(s).reps[k];
                element_map[id] = start + sys.cosets(t).coset_of(phi.apply(rep));
            }
        }
        Ok(SystemAutomorphism { class_map, element_map })
    }

    /// Checks bijectivity and that `≤`, `C` and `P` are preserved.
    pub fn preserves_structure<G: FiniteGroup>(&self, sys: &System<G>) -> bool {
        let n = sys.element_count();
        let mut seen = vec![false; n];
        if self.element_map.iter().any(|&y| core::mem::replace(&mut seen[y], true)) {
            return false;
        }
        let m = &self.element_map;
        for a in 0..n {
            for b in 0..n {
                if sys.leq(a, b) != sys.leq(m[a], m[b]) || sys.c(a, b) != sys.c(m[a], m[b]) {
                    return false;
                }
            }
        }
        // The third argument of `P` is read off the coset product instead of
        // searched for.
        let g = sys.group();
        (0..sys.class_count()).all(|s| {
            let r = sys.class_elements(s);
            let cosets = sys.cosets(s);
            r.clone().all(|a| {
                r.clone().all(|b| {
                    let prod = g.mul(cosets.reps[a - r.start], cosets.reps[b - r.start]);
                    let c = r.start + cosets.coset_of(prod);
                    sys.p(m[a], m[b], m[c])
                })
            })
        })
    }
}

/// Rebuilds the action on the bottom class from the action on the given
/// classes: each bottom element goes to the unique bottom element whose
/// `C`-images in those classes are the prescribed ones. Returns `None` when
/// some element has no or several candidates.
pub fn reconstruct_bottom<G: FiniteGroup>(
    sys: &System<G>,
    classes: &[usize],
    partial: &SystemAutomorphism,
) -> Option<Vec<usize>> {
    let bottom = sys.class_count() - 1;
    let images_in = |x: usize, among: &[usize]| -> Vec<usize> {
        among
            .iter()
            .map(|&s| sys.class_elements(s).find(|&y| sys.c(x, y)).expect("C is a map"))
            .collect()
    };
    // Targets are keyed by their images in the image classes, which may be
    // a permutation of `classes`.
    let targets: Vec<usize> = classes.iter().map(|&s| partial.class_map[s]).collect();
    let mut index: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for y in sys.class_elements(bottom) {
        index.entry(images_in(y, &targets)).or_default().push(y);
    }
    sys.class_elements(bottom)
        .map(|x| {
            let want: Vec<usize> = images_in(x, classes).iter().map(|&a| partial.element_map[a]).collect();
            match index.get(&want).map(Vec::as_slice) {
                Some(&[y]) => Some(y),
                _ => None,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Params;
    use crate::subgroups::{enumerate_normal, DEFAULT_MAX_ORDER};

    fn edge_group() -> StructuredGroup {
        StructuredGroup::new(Params::new(3, 5, &["a", "b"], &[("a", "b")], &[]).unwrap())
    }

    #[test]
    fn aut_d3_has_six_elements_and_extends() {
        let auts = dp_automorphisms(3);
        assert_eq!(auts.len(), 6);
        let id = &auts[0];
        assert_eq!(id.images, (0..6).collect::<Vec<_>>());
        let nu = extend_w_automorphism(3, 5, id, id).unwrap();
        assert_eq!(nu.images, (0..180).collect::<Vec<_>>());
        let bad = Hom {
            images: vec![0, 0, 0, 0, 0, 0],
            target_order: 6,
        };
        assert!(extend_w_automorphism(3, 5, &bad, id).is_err());
    }

    #[test]
    fn swap_is_a_coordinate_change() {
        let g = edge_group();
        let phi = coordinate_change(&g, &[1, 0]).unwrap();
        let (f, sigma) = factor(&g, &phi).unwrap();
        assert_eq!(f, vec![1, 0]);
        assert_eq!(sigma.images, (0..180).collect::<Vec<_>>());
        let ns = enumerate_normal(&g, DEFAULT_MAX_ORDER).unwrap();
        let sys = System::build(g, 3, 5, ns).unwrap();
        let auto = SystemAutomorphism::from_group_automorphism(&sys, &phi).unwrap();
        assert!(auto.preserves_structure(&sys));
    }
}
