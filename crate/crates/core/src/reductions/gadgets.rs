//! Reductions from graph colouring.

use super::graph::Graph;
use crate::abelian::{FiniteAbelianGroup, GroupElement};
use crate::error::{Error, Result};
use crate::problem::{Certificate, ProblemInstance};

/// The colour set used by [`gadget_s01`].
pub const COLORS: usize = 3;

/// Position offsets of the four blocks `V×C`, `V`, `V`, `E×C` in the
/// instance built by [`gadget_s01`]. Vertex `v` and colour `c` (both
/// 1-based) sit at `vc + (v-1)*3 + (c-1)`; edge `j` (0-based, in stored
/// order) at `ec + j*3 + (c-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetLayout {
    pub vc: usize,
    pub sigma: usize,
    pub sigma_shifted: usize,
    pub ec: usize,
    pub t: usize,
}

impl GadgetLayout {
    pub fn new(vertices: usize, edges: usize) -> Self {
        let vc = 0;
        let sigma = vc + COLORS * vertices;
        let sigma_shifted = sigma + vertices;
        let ec = sigma_shifted + vertices;
        GadgetLayout { vc, sigma, sigma_shifted, ec, t: ec + COLORS * edges }
    }

    /// Index of the generator for vertex `v` and colour `c`.
    pub fn generator(&self, v: usize, c: usize) -> usize {
        (v - 1) * COLORS + (c - 1)
    }
}

fn cyclic_order(g: &FiniteAbelianGroup) -> Result<i64> {
    if !g.is_presented_cyclic() {
        return Err(Error::Precondition(format!("{g} is not presented as Z/n")));
    }
    let n = g.moduli()[0];
    // -1 and 2 must both avoid {0, 1}
    if n < 3 {
        return Err(Error::Precondition(format!("Z/{n} is too small: need n >= 3")));
    }
    Ok(n)
}

/// 3-colourability to the problem for `S = {0, 1}` over `Z/n`, `n >= 3`.
pub fn gadget_s01(graph: &Graph, g: &FiniteAbelianGroup) -> Result<(ProblemInstance, GadgetLayout)> {
    let n = cyclic_order(g)?;
    let nv = graph.n();
    let layout = GadgetLayout::new(nv, graph.edges().len());
    let zero = GroupElement(vec![0]);
    let one = GroupElement(vec![1]);
    let mut xstar = vec![zero.clone(); layout.t];
    for v in 0..nv {
        xstar[layout.sigma_shifted + v] = GroupElement(vec![n - 1]);
    }
    let mut hgens = Vec::with_capacity(nv * COLORS);
    for v in 1..=nv {
        for c in 1..=COLORS {
            let mut h = vec![zero.clone(); layout.t];
            h[layout.vc + layout.generator(v, c)] = one.clone();
            h[layout.sigma + v - 1] = one.clone();
            h[layout.sigma_shifted + v - 1] = one.clone();
            for (j, &(a, b)) in graph.edges().iter().enumerate() {
                if a == v || b == v {
                    h[layout.ec + j * COLORS + c - 1] = one.clone();
                }
            }
            hgens.push(h);
        }
    }
    Ok((ProblemInstance::new(g.clone(), xstar, hgens)?, layout))
}

/// Certificate for [`gadget_s01`] from a proper 3-colouring.
pub fn gadget_s01_certificate(graph: &Graph, colors: &[usize]) -> Result<Certificate> {
    if !graph.is_proper_coloring(colors, COLORS) {
        return Err(Error::Precondition("not a proper 3-colouring".into()));
    }
    Ok(Certificate(
        colors.iter().flat_map(|&col| (1..=COLORS).map(move |c| i64::from(col == c))).collect(),
    ))
}

/// `|G|`-colourability to the problem for `S = G ∖ {0}`: one position per
/// edge `(u, v)` holding `g_u - g_v`.
pub fn gadget_coloring_full(graph: &Graph, g: &FiniteAbelianGroup) -> Result<ProblemInstance> {
    if g.order() < 3 {
        return Err(Error::Precondition(format!("{g} has fewer than 3 elements")));
    }
    let t = graph.edges().len();
    let mut hgens = Vec::new();
    for v in 1..=graph.n() {
        for j in 0..g.rank() {
            let e = g.basis(j);
            let h = graph
                .edges()
                .iter()
                .map(|&(a, b)| {
                    if a == v {
                        e.clone()
                    } else if b == v {
                        g.neg(&e)
                    } else {
                        g.zero()
                    }
                })
                .collect();
            hgens.push(h);
        }
    }
    ProblemInstance::pi(g.clone(), t, hgens)
}

/// Certificate for [`gadget_coloring_full`]: colour `c` is the element with
/// lexicographic index `c - 1`.
pub fn gadget_coloring_full_certificate(
    graph: &Graph,
    g: &FiniteAbelianGroup,
    colors: &[usize],
) -> Result<Certificate> {
    let k = g.order() as usize;
    if !graph.is_proper_coloring(colors, k) {
        return Err(Error::Precondition(format!("not a proper {k}-colouring")));
    }
    Ok(Certificate(colors.iter().flat_map(|&c| g.element_at(c - 1).0).collect()))
}

/// Pads a graph with `k - 3` new vertices adjacent to everything, so that it
/// is `k`-colourable iff the input is 3-colourable.
pub fn kcol_from_3col(graph: &Graph, k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::Precondition(format!("k = {k} is below 3")));
    }
    let n = graph.n();
    let total = n + k - 3;
    let mut edges = graph.edges().to_vec();
    for u in n + 1..=total {
        for v in 1..u {
            edges.push((v, u));
        }
    }
    Graph::new(total, edges)
}

/// Extends a 3-colouring to the padded graph, giving the new vertices
/// colours `4..=k`.
pub fn kcol_extend_coloring(colors: &[usize], k: usize) -> Vec<usize> {
    let mut out = colors.to_vec();
    out.extend(4..=k);
    out
}
