//! Good pairs, justified ribbon tilings and the pet-number formulas built on them.
//!
//! A good pair for `λ/μ` is a partition `ν` with `ν/μ` a horizontal strip
//! together with a tiling of `λ/ν` by k-ribbons that each start in the
//! leftmost cell of their row of `λ/ν`. Good pairs correspond one-to-one
//! with good orientations of `Pet_k(λ, μ)`: each reversed edge is one ribbon.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::build_pet_k;
use crate::maya::{add_ribbon, k_core, removable_ribbons, remove_ribbon, Ribbon};
use crate::orientation::{
    enumerate_good_orientations, good_structure, graph_of, GoodOrientation, PetrieGraph,
};
use crate::partition::{is_horizontal_strip, Partition};

/// Where a ribbon has to sit relative to the inner shape `μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Justify {
    /// The bottom-left box has no cell of the tiled region to its left.
    Left,
    /// The top-right box has no cell of `λ/μ` directly above it.
    Top,
}

/// Rows `r` where `big` and `small` differ, as `(first, last)`.
fn row_span(big: &Partition, small: &Partition) -> (usize, usize) {
    let rows: Vec<usize> = (1..=big.len())
        .filter(|&r| big.part(r) != small.part(r))
        .collect();
    (rows[0], *rows.last().expect("ribbon is nonempty"))
}

/// Is the ribbon `big/small` justified with respect to `mu`?
fn justified(big: &Partition, small: &Partition, mu: &Partition, how: Justify) -> bool {
    let (top, bottom) = row_span(big, small);
    match how {
        Justify::Left => small.part(bottom) <= mu.part(bottom),
        Justify::Top => top == 1 || big.part(top) <= mu.part(top - 1),
    }
}

/// Justified k-ribbon tilings of `lam/base`; justification is measured against `lam/mu`.
///
/// Left-justified ribbons are peeled from `lam` by increasing start content,
/// top-justified ones by decreasing start content; that fixes one removal
/// order per tiling. Each tiling is returned by decreasing start content.
pub fn justified_tilings(
    lam: &Partition,
    base: &Partition,
    mu: &Partition,
    k: usize,
    how: Justify,
) -> Vec<Vec<Ribbon>> {
    #[allow(clippy::too_many_arguments)]
    fn go(
        cur: &Partition,
        base: &Partition,
        mu: &Partition,
        k: usize,
        how: Justify,
        last: Option<i64>,
        acc: &mut Vec<Ribbon>,
        out: &mut Vec<Vec<Ribbon>>,
    ) {
        if cur == base {
            let mut t = acc.clone();
            t.sort_by_key(|r| std::cmp::Reverse(r.start));
            out.push(t);
            return;
        }
        for (s, next, height) in removable_ribbons(cur, k) {
            let in_order = match (how, last) {
                (_, None) => true,
                (Justify::Left, Some(l)) => s > l,
                (Justify::Top, Some(l)) => s < l,
            };
            if !in_order || !next.contains(base) || !justified(cur, &next, mu, how) {
                continue;
            }
            acc.push(Ribbon {
                start: s,
                k,
                height,
            });
            go(&next, base, mu, k, how, Some(s), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 || !lam.contains(base) || !(lam.size() - base.size()).is_multiple_of(k) {
        return out;
    }
    go(lam, base, mu, k, how, None, &mut Vec::new(), &mut out);
    out
}

/// A horizontal strip `ν/μ` plus a left-justified k-ribbon tiling of `λ/ν`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GoodPair {
    pub nu: Partition,
    /// Ribbons by strictly decreasing start content.
    pub ribbons: Vec<Ribbon>,
}

impl GoodPair {
    /// `∏ (−1)^{ht + 1}`.
    pub fn sign(&self) -> i64 {
        self.ribbons
            .iter()
            .map(|r| if r.height % 2 == 0 { -1 } else { 1 })
            .product()
    }

    pub fn total_height(&self) -> usize {
        self.ribbons.iter().map(|r| r.height).sum()
    }

    /// The chain `ν = λ_0 ⊂ λ_1 ⊂ ⋯ ⊂ λ_n = λ`, adding larger start contents first.
    pub fn decomposition(&self) -> Result<KDecomposition> {
        let mut chain = vec![self.nu.clone()];
        for r in &self.ribbons {
            let last = chain.last().expect("chain starts nonempty");
            let (next, h) = add_ribbon(last, r.start, r.k).ok_or_else(|| {
                Error::NotAGoodPair(format!("ribbon at {} does not fit", r.start))
            })?;
            if h != r.height {
                return Err(Error::NotAGoodPair(format!(
                    "ribbon at {} has height {h}, not {}",
                    r.start, r.height
                )));
            }
            chain.push(next);
        }
        Ok(KDecomposition {
            chain,
            heights: self.ribbons.iter().map(|r| r.height).collect(),
        })
    }
}

impl fmt::Display for GoodPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nu={}", self.nu)?;
        for r in &self.ribbons {
            writeln!(f, "start={} height={}", r.start, r.height)?;
        }
        Ok(())
    }
}

/// A chain of partitions, each step a k-ribbon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KDecomposition {
    pub chain: Vec<Partition>,
    pub heights: Vec<usize>,
}

impl KDecomposition {
    pub fn total_height(&self) -> usize {
        self.heights.iter().sum()
    }
}

/// Partitions `ν ⊆ λ` with `ν/μ` a horizontal strip.
fn strips_between(lam: &Partition, mu: &Partition) -> Vec<Partition> {
    #[allow(clippy::too_many_arguments)]
    fn go(
        lam: &Partition,
        mu: &Partition,
        row: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if row > lam.len() {
            out.push(Partition::from_unsorted(cur.clone()));
            return;
        }
        let hi = if row == 1 {
            lam.part(1)
        } else {
            lam.part(row).min(mu.part(row - 1))
        };
        for v in mu.part(row)..=hi {
            cur.push(v);
            go(lam, mu, row + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lam.contains(mu) {
        go(lam, mu, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// All good pairs by direct search, sorted by `ν` then ribbons.
pub fn enumerate_good_pairs(lam: &Partition, mu: &Partition, k: usize) -> Vec<GoodPair> {
    if k == 0 {
        return if lam == mu {
            vec![GoodPair {
                nu: mu.clone(),
                ribbons: Vec::new(),
            }]
        } else {
            Vec::new()
        };
    }
    let mut out: Vec<GoodPair> = strips_between(lam, mu)
        .into_iter()
        .flat_map(|nu| {
            justified_tilings(lam, &nu, &nu, k, Justify::Left)
                .into_iter()
                .map(move |ribbons| GoodPair {
                    nu: nu.clone(),
                    ribbons,
                })
        })
        .collect();
    out.sort();
    out
}

/// Good pairs as the image of the good orientations, sorted like the direct search.
pub fn good_pairs_via_orientations(
    lam: &Partition,
    mu: &Partition,
    k: usize,
) -> Result<Vec<GoodPair>> {
    let g = graph_of(&build_pet_k(lam, mu, k, None)?);
    let mut out = enumerate_good_orientations(&g)
        .iter()
        .map(|o| orientation_to_good_pair(o, lam, mu, k))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Bead positions `λ_r − r + 1` for the rows of a size-`n` matrix.
fn row_beads(lam: &Partition, n: usize) -> Vec<i64> {
    (1..=n).map(|r| lam.part(r) as i64 - r as i64 + 1).collect()
}

fn matrix_size(lam: &Partition, mu: &Partition) -> usize {
    lam.len().max(mu.len())
}

/// Sends each reversed row one step down its abacus runner; the moves are
/// the ribbons of the pair.
pub fn orientation_to_good_pair(
    o: &GoodOrientation,
    lam: &Partition,
    mu: &Partition,
    k: usize,
) -> Result<GoodPair> {
    let beads = row_beads(lam, matrix_size(lam, mu));
    if o.reversed().len() != beads.len() {
        return Err(Error::NotGood(format!(
            "{} flags for {} rows",
            o.reversed().len(),
            beads.len()
        )));
    }
    let mut starts: Vec<i64> = (0..beads.len())
        .filter(|&r| o.reversed()[r])
        .map(|r| beads[r] - k as i64)
        .collect();
    starts.sort_unstable();
    let mut chain = vec![lam.clone()];
    let mut ribbons = Vec::new();
    for s in starts {
        let cur = chain.last().expect("chain starts nonempty");
        let (next, height) = remove_ribbon(cur, s, k)
            .ok_or_else(|| Error::NotGood(format!("no {k}-ribbon starts at {s} in {cur}")))?;
        ribbons.push(Ribbon {
            start: s,
            k,
            height,
        });
        chain.push(next);
    }
    ribbons.reverse();
    let cur = chain.pop().expect("chain starts nonempty");
    chain.push(cur.clone());
    if chain
        .windows(2)
        .any(|w| !justified(&w[0], &w[1], &cur, Justify::Left))
    {
        return Err(Error::NotGood("ribbons are not left-justified".into()));
    }
    if !cur.contains(mu) || !is_horizontal_strip(&cur, mu) {
        return Err(Error::NotGood(format!(
            "{cur}/{mu} is not a horizontal strip"
        )));
    }
    Ok(GoodPair { nu: cur, ribbons })
}

/// Adds the ribbons back and reverses the rows whose beads moved.
pub fn good_pair_to_orientation(
    gp: &GoodPair,
    lam: &Partition,
    mu: &Partition,
    k: usize,
) -> Result<GoodOrientation> {
    if !gp.nu.contains(mu) || !is_horizontal_strip(&gp.nu, mu) {
        return Err(Error::NotAGoodPair(format!(
            "{}/{mu} is not a horizontal strip",
            gp.nu
        )));
    }
    if gp.ribbons.windows(2).any(|w| w[0].start <= w[1].start)
        || gp.ribbons.iter().any(|r| r.k != k)
    {
        return Err(Error::NotAGoodPair(
            "ribbons are not distinct k-ribbons in decreasing order".into(),
        ));
    }
    let chain = gp.decomposition()?.chain;
    for w in chain.windows(2) {
        if !justified(&w[1], &w[0], &gp.nu, Justify::Left) {
            return Err(Error::NotAGoodPair(format!(
                "ribbon {}/{} is not left-justified",
                w[1], w[0]
            )));
        }
    }
    if chain.last() != Some(lam) {
        return Err(Error::NotAGoodPair(format!(
            "ribbons build {}, not {lam}",
            chain.last().unwrap()
        )));
    }
    let beads = row_beads(lam, matrix_size(lam, mu));
    let mut reversed = vec![false; beads.len()];
    for r in &gp.ribbons {
        let row = beads
            .iter()
            .position(|&p| p == r.start + k as i64)
            .ok_or_else(|| {
                Error::NotAGoodPair(format!("ribbon at {} moves no row bead", r.start))
            })?;
        reversed[row] = true;
    }
    let g = graph_of(&build_pet_k(lam, mu, k, None)?);
    GoodOrientation::new(&g, reversed).map_err(|e| Error::NotAGoodPair(e.to_string()))
}

/// `pet_k(λ, μ)` as the signed count of good pairs.
pub fn pet_by_good_pairs(lam: &Partition, mu: &Partition, k: usize) -> i64 {
    enumerate_good_pairs(lam, mu, k)
        .iter()
        .map(GoodPair::sign)
        .sum()
}

/// `pet_k(λ, ∅)` from the k-core: zero unless `λ_1 < k` and the core has at
/// most one part, otherwise the sign of any ribbon tiling down to the core.
pub fn pet_core_formula(lam: &Partition, k: usize) -> Result<i64> {
    if lam.first() >= k {
        return Ok(0);
    }
    if k_core(lam, k)?.len() >= 2 {
        return Ok(0);
    }
    let mut cur = lam.clone();
    let mut sign = 1;
    while let Some((_, next, height)) = removable_ribbons(&cur, k).into_iter().next() {
        if height % 2 == 0 {
            sign = -sign;
        }
        cur = next;
    }
    Ok(sign)
}

/// Whether the all-forward orientation of `P_k(ν, μ)` is good, and whether
/// that graph is moreover a tree.
pub fn base_graph_check(nu: &Partition, mu: &Partition, k: usize) -> (bool, bool) {
    let Ok(m) = build_pet_k(nu, mu, k, None) else {
        return (false, false);
    };
    let g: PetrieGraph = graph_of(&m);
    let forward = vec![false; g.edges().len()];
    let is_base = GoodOrientation::new(&g, forward).is_ok();
    let is_tree = is_base && good_structure(&g).is_some_and(|s| s.cycles.is_empty());
    (is_base, is_tree)
}

/// `∑ t^{|ν/μ|}` over good pairs, as exponent → count.
pub fn strip_series(lam: &Partition, mu: &Partition, k: usize) -> BTreeMap<usize, i64> {
    let mut out = BTreeMap::new();
    for gp in enumerate_good_pairs(lam, mu, k) {
        *out.entry(gp.nu.size() - mu.size()).or_insert(0) += 1;
    }
    out
}

/// Signed sum over ways to add `n` justified k-ribbons to `mu`:
/// shape → `∑ (−1)^{total height}`.
pub fn signed_ribbon_additions(
    mu: &Partition,
    n: usize,
    k: usize,
    how: Justify,
) -> BTreeMap<Partition, i64> {
    // additions run in the opposite order to the peeling in `justified_tilings`
    #[allow(clippy::too_many_arguments)]
    fn go(
        cur: &Partition,
        mu: &Partition,
        left: usize,
        k: usize,
        how: Justify,
        last: Option<i64>,
        height: usize,
        out: &mut BTreeMap<Partition, i64>,
    ) {
        if left == 0 {
            *out.entry(cur.clone()).or_insert(0) += if height.is_multiple_of(2) { 1 } else { -1 };
            return;
        }
        let lo = -(cur.len() as i64) - k as i64;
        let hi = cur.first() as i64 + 1;
        for s in lo..=hi {
            let in_order = match (how, last) {
                (_, None) => true,
                (Justify::Left, Some(l)) => s < l,
                (Justify::Top, Some(l)) => s > l,
            };
            if !in_order {
                continue;
            }
            if let Some((next, h)) = add_ribbon(cur, s, k) {
                if justified(&next, cur, mu, how) {
                    go(&next, mu, left - 1, k, how, Some(s), height + h, out);
                }
            }
        }
    }
    let mut out = BTreeMap::new();
    if k == 0 {
        return out;
    }
    go(mu, mu, n, k, how, None, 0, &mut out);
    out.retain(|_, v| *v != 0);
    out
}
