use crate::error::{Error, Result};

/// Simple undirected graph on vertices `1..=n`. Edges are stored as
/// `(min, max)`, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut out = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Precondition(format!("self-loop at vertex {u}")));
            }
            if u < 1 || v < 1 || u > n || v > n {
                return Err(Error::Precondition(format!("edge ({u},{v}) outside 1..={n}")));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Graph { n, edges: out })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("valid edges")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::new(n, (1..=n).map(|u| (u, u % n + 1))).expect("valid edges")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|u| (u, u + 1))).expect("valid edges")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// True when `colors[v-1]` is in `1..=k` for every vertex and adjacent
    /// vertices differ.
    pub fn is_proper_coloring(&self, colors: &[usize], k: usize) -> bool {
        colors.len() == self.n
            && colors.iter().all(|&c| (1..=k).contains(&c))
            && self.edges.iter().all(|&(u, v)| colors[u - 1] != colors[v - 1])
    }

    /// Some proper `k`-colouring by backtracking, lowest colours first.
    pub fn find_coloring(&self, k: usize) -> Option<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[v - 1].push(u - 1);
            adj[u - 1].push(v - 1);
        }
        let mut colors = vec![0usize; self.n];
        let mut v = 0usize;
        while v < self.n {
            let next = (colors[v] + 1..=k).find(|&c| adj[v].iter().all(|&w| w >= v || colors[w] != c));
            match next {
                Some(c) => {
                    colors[v] = c;
                    v += 1;
                }
                None => {
                    colors[v] = 0;
                    if v == 0 {
                        return None;
                    }
                    v -= 1;
                }
            }
        }
        Some(colors)
    }
}
