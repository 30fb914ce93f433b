//! The bounding analysis of a quotient `A = G/N` of a structured group: which
//! vertices and edges `N` leaves alive, and the four size bounds on them.

use alloc::string::String;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup};
use crate::groups::{DpElement, StructuredGroup, WElement};
use crate::subgroups::NormalSubgroup;

/// The image `π_v(N)`, one of the three normal subgroups of `D_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexImage {
    Trivial,
    Rotations,
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundingReport {
    /// `|A| = 2^k p^n q^m`.
    pub k: u32,
    pub n: u32,
    pub m: u32,
    pub images: Vec<VertexImage>,
    /// Edges `r` with `π_r(N) ∩ C_q = 1`, as label pairs.
    pub r_prime: Vec<(String, String)>,
    pub v0: Vec<String>,
    pub v1: Vec<String>,
    pub v2: Vec<String>,
    pub v3: Vec<String>,
    /// Rank of the elementary abelian factor in `A`'s cover `G_{Γ₀} × C₂^ℓ`.
    pub ell: u32,
    pub claims: Vec<Claim>,
}

impl BoundingReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

fn valuation(mut x: usize, p: usize) -> u32 {
    let mut k = 0;
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    k
}

fn claim(name: &'static str, holds: bool, detail: String) -> Claim {
    Claim { name, holds, detail }
}

/// Computes `V₀` (with the edge condition), its partition by `π_v(N)`, and
/// checks the claims: `|V₁| ≤ min(k, n)`, `|V₂| ≤ k`, `|V₃| ≤ 2m` with
/// `|R′| = m`, the containment `C_p^{V∖V₀} C_q^{R∖R₀} ⊆ N`, and
/// `ℓ ≤ log₂(|A| |G_{Γ₀}|)` where `A` is a quotient of `G_{Γ₀} × C₂^ℓ`.
pub fn check_bounding(g: &StructuredGroup, n: &NormalSubgroup) -> Result<BoundingReport> {
    let params = g.params().clone();
    let (p, q) = (params.p() as usize, params.q() as usize);
    let index = n.index;
    let (k, pn, m) = (valuation(index, 2), valuation(index, p), valuation(index, q));
    if 2usize.pow(k) * p.pow(pn) * q.pow(m) != index {
        return Err(Error::Contract("quotient order has a foreign prime".into()));
    }
    let nv = params.vertices().len();
    let nr = params.edges().len();
    let members: Vec<_> = n.members().map(|c| g.element(c)).collect();

    let images: Vec<VertexImage> = (0..nv)
        .map(|v| {
            let mut seen = FixedBitSet::with_capacity(2 * p);
            for e in &members {
                seen.insert(e.vertex_part(v).encode());
            }
            match seen.count_ones(..) {
                1 => VertexImage::Trivial,
                c if c == p => VertexImage::Rotations,
                _ => VertexImage::Full,
            }
        })
        .collect();
    let mut r_prime_idx = Vec::new();
    for r in 0..nr {
        let meets_cq = members.iter().any(|e| {
            let w = e.edge_part(r);
            w.z != 0 && w.b.is_identity() && w.c.is_identity()
        });
        if !meets_cq {
            r_prime_idx.push(r);
        }
    }
    let mut in_v0 = FixedBitSet::with_capacity(nv);
    for v in 0..nv {
        if images[v] != VertexImage::Full {
            in_v0.insert(v);
        }
    }
    for &r in &r_prime_idx {
        let (u, v) = params.edges()[r];
        in_v0.insert(u);
        in_v0.insert(v);
    }
    let label = |v: usize| params.vertices()[v].clone();
    let v0: Vec<String> = in_v0.ones().map(label).collect();
    let part = |want: VertexImage| -> Vec<String> { in_v0.ones().filter(|&v| images[v] == want).map(label).collect() };
    let (v1, v2, v3) = (part(VertexImage::Trivial), part(VertexImage::Rotations), part(VertexImage::Full));
    let r0: Vec<usize> = (0..nr)
        .filter(|&r| {
            let (u, v) = params.edges()[r];
            in_v0.contains(u) && in_v0.contains(v)
        })
        .collect();

    let mut claims = Vec::new();
    claims.push(claim(
        "v1-bound",
        v1.len() as u32 <= k.min(pn),
        alloc::format!("|V1| = {} <= min({k}, {pn})", v1.len()),
    ));
    claims.push(claim("v2-bound", v2.len() as u32 <= k, alloc::format!("|V2| = {} <= {k}", v2.len())));
    claims.push(claim(
        "v3-bound",
        v3.len() as u32 <= 2 * m,
        alloc::format!("|V3| = {} <= 2*{m}", v3.len()),
    ));
    claims.push(claim(
        "r-prime-count",
        r_prime_idx.len() as u32 == m,
        alloc::format!("|R'| = {} = {m}", r_prime_idx.len()),
    ));

    let gamma = DpElement::gamma(params.p());
    let delta = WElement::delta(params.p(), params.q());
    let dead_vertices = (0..nv).filter(|&v| !in_v0.contains(v));
    let dead_edges = (0..nr).filter(|r| !r0.contains(r));
    let mut contained = true;
    for v in dead_vertices {
        contained &= n.contains(g.vertex_code(v, gamma));
    }
    for r in dead_edges {
        contained &= n.contains(g.edge_code(r, delta));
    }
    claims.push(claim(
        "dead-coordinates",
        contained,
        "C_p^(V-V0) C_q^(R-R0) lies in N".into(),
    ));

    // N' = elements of N trivial on every coordinate of Γ₀.
    let x_off = nv;
    let mut n_prime = ElementSet::with_capacity(g.order());
    let mut m_bits: Vec<Vec<u8>> = Vec::new();
    for (c, e) in n.members().zip(&members) {
        let trivial_on_g0 =
            r0.iter().all(|&r| e.z[r] == 0) && in_v0.ones().all(|v| e.y[v] == 0 && e.x[v] == 0);
        if trivial_on_g0 {
            n_prime.insert(c);
            let bits: Vec<u8> = (0..nv)
                .filter(|&v| !in_v0.contains(v))
                .map(|v| e.x[v])
                .chain(e.x[x_off..].iter().copied())
                .collect();
            m_bits.push(bits);
        }
    }
    m_bits.sort();
    m_bits.dedup();
    let free_bits = (nv - in_v0.count_ones(..) + params.extra().len()) as u32;
    let dim_m = m_bits.len().trailing_zeros();
    let ell = free_bits - dim_m;
    let g0_order = (q as u128).pow(r0.len() as u32) * (2 * p as u128).pow(in_v0.count_ones(..) as u32);
    let cover_order = g.order() / n_prime.count_ones(..);
    claims.push(claim(
        "cover-order",
        m_bits.len().is_power_of_two() && cover_order as u128 == (1u128 << ell) * g0_order,
        alloc::format!("|G/N'| = {cover_order} = 2^{ell} * {g0_order}"),
    ));
    claims.push(claim(
        "ell-bound",
        (1u128 << ell) <= index as u128 * g0_order,
        alloc::format!("2^{ell} <= {index} * {g0_order}"),
    ));

    let r_prime = r_prime_idx
        .iter()
        .map(|&r| {
            let (a, b) = params.edge_label(r);
            (String::from(a), String::from(b))
        })
        .collect();
    Ok(BoundingReport {
        k,
        n: pn,
        m,
        images,
        r_prime,
        v0,
        v1,
        v2,
        v3,
        ell,
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Params;
    use crate::subgroups::{enumerate_normal, DEFAULT_MAX_ORDER};

    #[test]
    fn w_modulo_m_puts_both_vertices_in_v3() {
        let w = StructuredGroup::new(Params::new(3, 5, &["a", "b"], &[("a", "b")], &[]).unwrap());
        let ns = enumerate_normal(&w, DEFAULT_MAX_ORDER).unwrap();
        let m = ns.iter().find(|n| n.index == 10).unwrap();
        let r = check_bounding(&w, m).unwrap();
        assert!(r.passed(), "{:?}", r.claims);
        assert_eq!(r.v3, vec!["a", "b"]);
        assert_eq!(r.m, 1);
        // The images alone would leave V0 empty.
        assert!(r.images.iter().all(|&i| i == VertexImage::Full));
        let whole = check_bounding(&w, &ns[0]).unwrap();
        assert!(whole.v0.is_empty() && whole.passed());
        for n in &ns {
            assert!(check_bounding(&w, n).unwrap().passed());
        }
    }
}
