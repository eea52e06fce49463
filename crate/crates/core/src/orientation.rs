//! Petrie graphs and their good orientations.
//!
//! An orientation is good when every vertex other than the last one has
//! exactly one outgoing edge. Such orientations exist only when the
//! component of the last vertex is a tree and every other component has
//! exactly one cycle; each cycle can then be run in two directions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::PetrieMatrix;

/// Vertices `0..=nverts`, one edge `{a, b}` per matrix row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PetrieGraph {
    nverts: usize,
    edges: Vec<(usize, usize)>,
}

impl PetrieGraph {
    pub fn new(nverts: usize, edges: Vec<(usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        Self { nverts, edges }
    }

    /// Index of the last vertex; the vertices are `0..=nverts`.
    pub fn nverts(&self) -> usize {
        self.nverts
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.nverts + 1];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push(e);
            if a != b {
                inc[b].push(e);
            }
        }
        inc
    }

    /// Tail of edge `e` when it is reversed or not.
    pub fn tail(&self, e: usize, reversed: bool) -> usize {
        let (a, b) = self.edges[e];
        if reversed {
            b
        } else {
            a
        }
    }

    pub fn head(&self, e: usize, reversed: bool) -> usize {
        self.tail(e, !reversed)
    }
}

impl fmt::Display for PetrieGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nverts={}", self.nverts)?;
        for (i, (a, b)) in self.edges.iter().enumerate() {
            writeln!(f, "{}: {} {}", i + 1, a, b)?;
        }
        Ok(())
    }
}

pub fn graph_of(m: &PetrieMatrix) -> PetrieGraph {
    PetrieGraph::new(m.ncols(), m.rows().iter().map(|r| (r.a, r.b)).collect())
}

/// One direction per edge; `reversed[e]` means edge `e` runs from `b` to `a`.
/// For a self-loop the flag still distinguishes its two orientations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GoodOrientation {
    reversed: Vec<bool>,
}

impl GoodOrientation {
    /// Wraps the flags after checking that they give a good orientation.
    pub fn new(g: &PetrieGraph, reversed: Vec<bool>) -> Result<Self> {
        let o = Self { reversed };
        check_good(g, &o)?;
        Ok(o)
    }

    pub fn reversed(&self) -> &[bool] {
        &self.reversed
    }

    /// The word `c_1 … c_n` of tails in row order.
    pub fn word(&self, g: &PetrieGraph) -> Vec<usize> {
        (0..g.edges.len())
            .map(|e| g.tail(e, self.reversed[e]))
            .collect()
    }

    /// Orientation dump in the graph format with `->` markers.
    pub fn render(&self, g: &PetrieGraph) -> String {
        let mut out = format!("nverts={}\n", g.nverts);
        for e in 0..g.edges.len() {
            let r = self.reversed[e];
            out += &format!("{}: {} -> {}\n", e + 1, g.tail(e, r), g.head(e, r));
        }
        out
    }
}

fn check_good(g: &PetrieGraph, o: &GoodOrientation) -> Result<()> {
    if o.reversed.len() != g.edges.len() {
        return Err(Error::NotGood(format!(
            "{} flags for {} edges",
            o.reversed.len(),
            g.edges.len()
        )));
    }
    if g.edges.len() != g.nverts {
        return Err(Error::NotGood(format!(
            "{} edges for {} non-root vertices",
            g.edges.len(),
            g.nverts
        )));
    }
    let mut seen = vec![false; g.nverts + 1];
    for c in o.word(g) {
        if c == g.nverts || seen[c] {
            return Err(Error::NotGood(format!(
                "vertex {c} has the wrong out-degree"
            )));
        }
        seen[c] = true;
    }
    Ok(())
}

/// Size, inversions and sign of a good orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientationStats {
    pub size: usize,
    pub inv: usize,
    pub weight: i8,
}

pub fn inversions(word: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            n += (word[i] > word[j]) as usize;
        }
    }
    n
}

pub fn orientation_stats(g: &PetrieGraph, o: &GoodOrientation) -> Result<OrientationStats> {
    check_good(g, o)?;
    let size = o.reversed.iter().filter(|&&r| r).count();
    let inv = inversions(&o.word(g));
    let weight = if (size + inv).is_multiple_of(2) {
        1
    } else {
        -1
    };
    Ok(OrientationStats { size, inv, weight })
}

/// How a graph splits into the root tree and the unicyclic components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodStructure {
    /// Flags of the orientation taking every cycle in its first direction.
    pub base: Vec<bool>,
    /// Cycle edges of each non-root component, in traversal order, components
    /// sorted by their smallest vertex.
    pub cycles: Vec<Vec<usize>>,
}

/// Returns `None` when the graph has no good orientation.
pub fn good_structure(g: &PetrieGraph) -> Option<GoodStructure> {
    let nv = g.nverts + 1;
    let root = g.nverts;
    if g.edges.len() != g.nverts {
        return None;
    }
    let inc = g.incidence();
    let mut degree: Vec<usize> = (0..nv)
        .map(|v| {
            inc[v]
                .iter()
                .map(|&e| if g.edges[e].0 == g.edges[e].1 { 2 } else { 1 })
                .sum()
        })
        .collect();
    let mut removed = vec![false; g.edges.len()];
    let mut reversed = vec![false; g.edges.len()];
    let mut oriented = vec![false; nv];
    // peel leaves: a leaf must point along its only edge
    let mut stack: Vec<usize> = (0..nv).filter(|&v| v != root && degree[v] == 1).collect();
    while let Some(v) = stack.pop() {
        let Some(&e) = inc[v].iter().find(|&&e| !removed[e]) else {
            continue;
        };
        removed[e] = true;
        oriented[v] = true;
        let (a, b) = g.edges[e];
        reversed[e] = v == b;
        let w = if v == a { b } else { a };
        degree[v] -= 1;
        degree[w] -= 1;
        if w != root && degree[w] == 1 {
            stack.push(w);
        }
    }
    // the root component is now bare; everything left must be disjoint cycles
    if inc[root].iter().any(|&e| !removed[e]) {
        return None;
    }
    let mut cycles = Vec::new();
    let mut used = vec![false; g.edges.len()];
    for start in 0..nv {
        if start == root || oriented[start] {
            continue;
        }
        if degree[start] != 2 {
            return None;
        }
        let Some(&e0) = inc[start].iter().find(|&&e| !removed[e] && !used[e]) else {
            continue;
        };
        // walk the cycle, taking the smallest edge forwards first
        let mut cycle = Vec::new();
        let mut e = e0;
        let mut cur = start;
        loop {
            used[e] = true;
            cycle.push(e);
            let (a, b) = g.edges[e];
            reversed[e] = cur == b && a != b;
            oriented[cur] = true;
            cur = if cur == a { b } else { a };
            match inc[cur].iter().find(|&&f| !removed[f] && !used[f]) {
                Some(&f) => e = f,
                None => break,
            }
        }
        let smallest = *cycle.iter().min().expect("nonempty cycle");
        if reversed[smallest] {
            for &f in &cycle {
                reversed[f] = !reversed[f];
            }
        }
        cycles.push(cycle);
    }
    if oriented.iter().enumerate().any(|(v, &o)| v != root && !o) {
        return None;
    }
    // order the cycles by the smallest vertex of their component
    let low = component_minima(g);
    cycles.sort_by_key(|c| low[g.edges[c[0]].0]);
    let out = GoodStructure {
        base: reversed,
        cycles,
    };
    debug_assert!(check_good(
        g,
        &GoodOrientation {
            reversed: out.base.clone()
        }
    )
    .is_ok());
    Some(out)
}

/// Smallest vertex in the component of each vertex.
fn component_minima(g: &PetrieGraph) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..=g.nverts).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for &(a, b) in &g.edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        // keep the smaller label as the representative
        parent[ra.max(rb)] = ra.min(rb);
    }
    (0..=g.nverts).map(|v| find(&mut parent, v)).collect()
}

/// All good orientations, the `i`-th cycle flipped when bit `i` of the index is set.
pub fn enumerate_good_orientations(g: &PetrieGraph) -> Vec<GoodOrientation> {
    let Some(s) = good_structure(g) else {
        return Vec::new();
    };
    let m = s.cycles.len();
    (0..1usize << m)
        .map(|mask| {
            let mut reversed = s.base.clone();
            for (i, cycle) in s.cycles.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for &e in cycle {
                        reversed[e] = !reversed[e];
                    }
                }
            }
            GoodOrientation { reversed }
        })
        .collect()
}

/// `det(m)` as the signed count of good orientations.
pub fn det_by_orientations(m: &PetrieMatrix) -> Result<i64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let g = graph_of(m);
    enumerate_good_orientations(&g)
        .iter()
        .map(|o| orientation_stats(&g, o).map(|s| s.weight as i64))
        .sum()
}

/// Reverses a directed cycle of a good orientation.
pub fn reverse_cycle(
    g: &PetrieGraph,
    o: &GoodOrientation,
    cycle: &[usize],
) -> Result<GoodOrientation> {
    check_good(g, o)?;
    let bad = |why: &str| Err(Error::NotACycle(why.to_string()));
    if cycle.is_empty() {
        return bad("empty edge set");
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cycle.len() || *sorted.last().unwrap() >= g.edges.len() {
        return bad("repeated or unknown edge");
    }
    // follow tails to heads; a directed cycle returns to its start after all edges
    let next = |v: usize| {
        sorted
            .iter()
            .copied()
            .find(|&e| g.tail(e, o.reversed[e]) == v)
    };
    let start = g.tail(sorted[0], o.reversed[sorted[0]]);
    let mut v = start;
    let mut steps = 0;
    loop {
        let Some(e) = next(v) else {
            return bad("a cycle vertex has no outgoing cycle edge");
        };
        v = g.head(e, o.reversed[e]);
        steps += 1;
        if v == start || steps > sorted.len() {
            break;
        }
    }
    if v != start || steps != sorted.len() {
        return bad("edges do not form one directed cycle");
    }
    let mut reversed = o.reversed.clone();
    for &e in &sorted {
        reversed[e] = !reversed[e];
    }
    Ok(GoodOrientation { reversed })
}
