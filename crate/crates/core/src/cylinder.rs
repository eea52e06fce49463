//! The cell graph drawn on a cylinder and the `(t, q)` generating function
//! of good orientations.
//!
//! Cells are integers. Cell `i` is joined to `i + k` by a vertical edge when
//! `a_{−i} = 1` in the Maya diagram of `λ`, and merged with `i + 1` when
//! `b_{−i} = 0` in the Maya diagram of `μ`. Everything at or above `−μ_1` is
//! one top cluster; everything at or below the matrix size is the bottom
//! vertex. Contracting the merges gives the Petrie graph of `Pet_k(λ, μ)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maya::maya_of;
use crate::orientation::{enumerate_good_orientations, orientation_stats, PetrieGraph};
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellGraph {
    k: usize,
    top: i64,
    bottom: i64,
    /// Row `r` (index `r − 1`) joins cell `x` to cell `x + k`.
    vertical: Vec<i64>,
    /// Cells `i` with `i` and `i + 1` merged.
    merges: Vec<i64>,
}

impl CellGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Lowest cell label of the top cluster (`−μ_1`).
    pub fn top(&self) -> i64 {
        self.top
    }

    /// Label of the bottom vertex.
    pub fn bottom(&self) -> i64 {
        self.bottom
    }

    /// Upper cell of each vertical edge, in row order.
    pub fn vertical(&self) -> &[i64] {
        &self.vertical
    }

    /// Horizontal merge edges `{i, i+1}` listed by `i`.
    pub fn merges(&self) -> &[i64] {
        &self.merges
    }

    /// Cluster index of a cell after contracting all merges.
    pub fn cluster(&self, x: i64) -> usize {
        let x = x.clamp(self.top, self.bottom);
        ((self.top + 1)..=x)
            .filter(|j| !self.merges.contains(&(j - 1)))
            .count()
    }

    /// The contracted multigraph, edges labelled by row.
    pub fn contract(&self) -> PetrieGraph {
        let n = self.cluster(self.bottom);
        let edges = self
            .vertical
            .iter()
            .map(|&x| (self.cluster(x), self.cluster(x + self.k as i64)))
            .collect();
        PetrieGraph::new(n, edges)
    }
}

/// Builds the cell graph of `Pet_k(λ, μ)` at its default size.
pub fn cell_graph(lam: &Partition, mu: &Partition, k: usize) -> CellGraph {
    let n = lam.len().max(mu.len()) as i64;
    let top = -(mu.first() as i64);
    let a = maya_of(lam);
    // the r-th bead from the top sits at λ_r − r + 1; its cell is the negative
    let vertical = a
        .beads_desc()
        .into_iter()
        .chain((i64::MIN..a.window_lo()).rev())
        .take(n as usize)
        .map(|p| -p)
        .collect();
    let b = maya_of(mu);
    let merges = (top..n).filter(|&i| !b.get(-i)).collect();
    CellGraph {
        k,
        top,
        bottom: n,
        vertical,
        merges,
    }
}

/// Counts of contractible and non-contractible cycles.
///
/// Each fundamental cycle is walked once; a vertical edge walked from its
/// upper cell to its lower cell counts as down. Winding once around the
/// cylinder leaves one more edge in one direction than the other.
pub fn classify_cycles(cg: &CellGraph) -> Result<(usize, usize)> {
    let g = cg.contract();
    let nv = g.nverts() + 1;
    let edges = g.edges();
    // cluster of the upper end of each edge, to tell walking directions apart
    let upper: Vec<usize> = cg.vertical.iter().map(|&x| cg.cluster(x)).collect();
    let mut adj = vec![Vec::new(); nv];
    for (e, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((e, b));
        if a != b {
            adj[b].push((e, a));
        }
    }
    // BFS forest: parent edge and depth
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut depth = vec![usize::MAX; nv];
    let mut tree_edge = vec![false; edges.len()];
    for s in 0..nv {
        if depth[s] != usize::MAX {
            continue;
        }
        depth[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((e, v));
                    tree_edge[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    // +1 when edge e is walked from `from` downwards, −1 upwards
    let step = |e: usize, from: usize| -> i64 {
        let (a, b) = edges[e];
        if a == b || from == upper[e] {
            1
        } else {
            -1
        }
    };
    let (mut c, mut nc) = (0, 0);
    for (e, &(a, b)) in edges.iter().enumerate() {
        if tree_edge[e] {
            continue;
        }
        // walk e from a to b, then climb the tree from b back to a
        let mut balance = step(e, a);
        let (mut x, mut y) = (b, a);
        let mut down_from_x = Vec::new();
        while x != y {
            if depth[x] >= depth[y] {
                let (pe, p) = parent[x].expect("non-root has a parent");
                balance += step(pe, x);
                x = p;
            } else {
                let (pe, p) = parent[y].expect("non-root has a parent");
                down_from_x.push((pe, p));
                y = p;
            }
        }
        for (pe, p) in down_from_x {
            balance += step(pe, p);
        }
        match balance.abs() {
            0 => c += 1,
            1 => nc += 1,
            d => {
                return Err(Error::Invariant(format!(
                    "cycle through row {} winds {d} times",
                    e + 1
                )))
            }
        }
    }
    Ok((c, nc))
}

/// Integer polynomial in `t` and `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPoly2 {
    terms: BTreeMap<(usize, usize), i64>,
}

impl IntPoly2 {
    pub fn monomial(t: usize, q: usize, coeff: i64) -> Self {
        let mut p = Self::default();
        p.add_term(t, q, coeff);
        p
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn add_term(&mut self, t: usize, q: usize, coeff: i64) {
        let c = self.terms.entry((t, q)).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&(t, q));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (&(t1, q1), &c1) in &self.terms {
            for (&(t2, q2), &c2) in &other.terms {
                out.add_term(t1 + t2, q1 + q2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Value at `t = q = −1`.
    pub fn signed_sum(&self) -> i64 {
        self.terms
            .iter()
            .map(|(&(t, q), &c)| if (t + q) % 2 == 0 { c } else { -c })
            .sum()
    }
}

impl fmt::Display for IntPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(t, q), c) in &self.terms {
            writeln!(f, "t^{t} q^{q} : {c}")?;
        }
        Ok(())
    }
}

/// Exponents of `t^a q^b (1+q)^c (1+t)^nc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factored {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub nc: usize,
}

impl Factored {
    pub fn expand(&self) -> IntPoly2 {
        let one_q = {
            let mut p = IntPoly2::one();
            p.add_term(0, 1, 1);
            p
        };
        let one_t = {
            let mut p = IntPoly2::one();
            p.add_term(1, 0, 1);
            p
        };
        IntPoly2::monomial(self.a, self.b, 1)
            .mul(&one_q.pow(self.c))
            .mul(&one_t.pow(self.nc))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenFunc {
    pub poly: IntPoly2,
    /// `None` when there is no good orientation.
    pub factored: Option<Factored>,
}

/// `∑ t^{|σ|} q^{inv σ}` over good orientations of `Pet_k(λ, μ)`, checked
/// against `t^a q^b (1+q)^c (1+t)^nc`.
pub fn genfunc_tq(lam: &Partition, mu: &Partition, k: usize) -> Result<GenFunc> {
    let cg = cell_graph(lam, mu, k);
    let g = cg.contract();
    let mut poly = IntPoly2::default();
    let mut least: Option<(usize, usize)> = None;
    for o in enumerate_good_orientations(&g) {
        let s = orientation_stats(&g, &o)?;
        poly.add_term(s.size, s.inv, 1);
        least = Some(least.map_or((s.size, s.inv), |m| m.min((s.size, s.inv))));
    }
    let Some((a, b)) = least else {
        return Ok(GenFunc {
            poly,
            factored: None,
        });
    };
    let (c, nc) = classify_cycles(&cg)?;
    let factored = Factored { a, b, c, nc };
    if factored.expand() != poly {
        return Err(Error::Factorization(format!(
            "{lam}/{mu}, k={k}: {factored:?} vs\n{poly}"
        )));
    }
    Ok(GenFunc {
        poly,
        factored: Some(factored),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_pet_k, pet_k};
    use crate::orientation::graph_of;
    use crate::partition::{partitions_up_to, subpartitions};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(parts: &[usize]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn nine_row_merges() {
        let lam = p(&[6, 6, 6, 6, 5, 5, 4, 4, 2]);
        let mu = p(&[4, 2, 2, 2, 2, 1, 1, 1]);
        let cg = cell_graph(&lam, &mu, 5);
        assert_eq!(cg.merges(), &[-3, -2, 3, 7]);
        assert_eq!((cg.top(), cg.bottom()), (-4, 9));
        let m = build_pet_k(&lam, &mu, 5, None).unwrap();
        assert_eq!(cg.contract(), graph_of(&m));
    }

    #[test]
    fn empty_inner_shape_has_no_merges() {
        let lam = p(&[4, 4, 4, 3, 2, 2, 2, 1, 1]);
        let cg = cell_graph(&lam, &Partition::empty(), 5);
        assert!(cg.merges().is_empty());
        // edges from vertex j to j + k, clamped at the bottom
        assert_eq!(cg.vertical()[4], 2);
        assert_eq!(classify_cycles(&cg).unwrap(), (0, 0));
    }

    #[test]
    fn contraction_matches_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let parts: Vec<usize> = (0..rng.gen_range(0..8))
                .map(|_| rng.gen_range(1..8))
                .collect();
            let lam = Partition::from_unsorted(parts);
            let subs = subpartitions(&lam);
            let mu = subs[rng.gen_range(0..subs.len())].clone();
            let k = rng.gen_range(0..7);
            let cg = cell_graph(&lam, &mu, k);
            assert_eq!(
                cg.contract(),
                graph_of(&build_pet_k(&lam, &mu, k, None).unwrap()),
                "{lam}/{mu} k={k}"
            );
        }
    }

    #[test]
    fn contractible_and_loop_examples() {
        // two rows sharing both clusters: a square with two verticals
        let g = genfunc_tq(&p(&[2, 2]), &p(&[1]), 2).unwrap();
        let f = g.factored.unwrap();
        assert_eq!((f.c, f.nc), (1, 0));
        // a strip row of length k closes a vertical edge inside one cluster
        let g = genfunc_tq(&p(&[4]), &p(&[1]), 3).unwrap();
        let f = g.factored.unwrap();
        assert_eq!((f.c, f.nc), (0, 1));
    }

    #[test]
    fn fig6_generating_function() {
        let lam = p(&[6, 6, 6, 6, 5, 5, 4, 4, 2]);
        let mu = p(&[4, 2, 2, 2, 2, 1, 1, 1]);
        let g = genfunc_tq(&lam, &mu, 5).unwrap();
        assert!(g.poly.terms().contains_key(&(5, 5)));
        assert!(g.poly.terms().contains_key(&(5, 6)));
    }

    #[test]
    fn factorisation_and_signed_sum() {
        for lam in partitions_up_to(9) {
            for mu in subpartitions(&lam) {
                for k in 1..=5 {
                    let g = genfunc_tq(&lam, &mu, k).unwrap();
                    assert_eq!(g.poly.signed_sum(), pet_k(&lam, &mu, k) as i64);
                }
            }
        }
    }

    #[test]
    fn poly_format() {
        let f = Factored {
            a: 1,
            b: 0,
            c: 1,
            nc: 0,
        }
        .expand();
        assert_eq!(f.to_string(), "t^1 q^0 : 1\nt^1 q^1 : 1\n");
    }
}
