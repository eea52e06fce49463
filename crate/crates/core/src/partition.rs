//! Integer partitions and skew shapes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive parts. Trailing zeros are stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting sequences that increase somewhere.
    /// Zero parts at the end are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::ParsePartition(format!("{parts:?}")));
        }
        Ok(Self { parts })
    }

    /// Sorts arbitrary nonnegative entries into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The `i`-th part, 1-indexed; zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return usize::MAX;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.part(1)
    }

    pub fn conjugate(&self) -> Self {
        let width = self.first();
        let parts = (1..=width)
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Self { parts }
    }

    /// True when every part of `other` fits under the matching part of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    /// Multiplies every part by `k`.
    pub fn scaled(&self, k: usize) -> Self {
        Self::from_unsorted(self.parts.iter().map(|p| p * k).collect())
    }

    /// Cells `(row, col)` of the diagram, 1-indexed, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (1..=p).map(move |c| (r + 1, c)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        let text: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        f.write_str(&text.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" || s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::ParsePartition(s.to_string()))?;
        Self::new(parts).map_err(|_| Error::ParsePartition(s.to_string()))
    }
}

impl From<&[usize]> for Partition {
    /// Panics on increasing input; meant for literals in tests and fixtures.
    fn from(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("weakly decreasing parts")
    }
}

/// The cells of `outer` that are not in `inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::NotContained);
        }
        Ok(Self { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        (1..=self.outer.len())
            .flat_map(|r| (self.inner.part(r) + 1..=self.outer.part(r)).map(move |c| (r, c)))
            .collect()
    }

    /// Edge-connected components, each cut down to its own rows.
    ///
    /// Rows of a skew shape are intervals, so a component is a run of
    /// consecutive nonempty rows whose column ranges overlap.
    pub fn components(&self) -> Vec<SkewShape> {
        let mut out = Vec::new();
        let mut run: Vec<usize> = Vec::new();
        let flush = |run: &mut Vec<usize>, out: &mut Vec<SkewShape>| {
            if run.is_empty() {
                return;
            }
            let outer = Partition::new(run.iter().map(|&r| self.outer.part(r)).collect());
            let inner = Partition::new(run.iter().map(|&r| self.inner.part(r)).collect());
            out.push(SkewShape {
                outer: outer.expect("subsequence of a partition"),
                inner: inner.expect("subsequence of a partition"),
            });
            run.clear();
        };
        for r in 1..=self.outer.len() {
            if self.outer.part(r) == self.inner.part(r) {
                flush(&mut run, &mut out);
                continue;
            }
            if let Some(&prev) = run.last() {
                if self.inner.part(prev) >= self.outer.part(r) {
                    flush(&mut run, &mut out);
                }
            }
            run.push(r);
        }
        flush(&mut run, &mut out);
        out
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

impl FromStr for SkewShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (o, i) = s.split_once('/').unwrap_or((s, "-"));
        Self::new(o.parse()?, i.parse()?)
    }
}

/// Interlacing test `outer_1 ≥ inner_1 ≥ outer_2 ≥ inner_2 ≥ ⋯`.
pub fn is_horizontal_strip(outer: &Partition, inner: &Partition) -> bool {
    let n = outer.len().max(inner.len());
    (1..=n).all(|i| outer.part(i) >= inner.part(i) && inner.part(i) >= outer.part(i + 1))
}

/// All partitions of `n`, in lexicographically decreasing order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// All partitions contained in `outer`, including the empty one and `outer` itself.
pub fn subpartitions(outer: &Partition) -> Vec<Partition> {
    fn go(
        outer: &Partition,
        row: usize,
        cap: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if row > outer.len() {
            out.push(Partition::from_unsorted(cur.clone()));
            return;
        }
        for p in 0..=cap.min(outer.part(row)) {
            cur.push(p);
            go(outer, row + 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(outer, 1, usize::MAX, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn conjugate_fixtures() {
        assert_eq!(p(&[6, 4, 4, 2, 1]).conjugate(), p(&[5, 4, 3, 3, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[3]).conjugate(), p(&[1, 1, 1]));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(
            "6,4,4,2,1".parse::<Partition>().unwrap(),
            p(&[6, 4, 4, 2, 1])
        );
        assert_eq!("-".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[3, 1]).to_string(), "3,1");
        assert_eq!(Partition::empty().to_string(), "-");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        let s: SkewShape = "3,1/2".parse().unwrap();
        assert_eq!(s.to_string(), "3,1/2");
        assert!("2/3".parse::<SkewShape>().is_err());
    }

    #[test]
    fn strips() {
        assert!(is_horizontal_strip(&p(&[3, 1]), &p(&[2, 1])));
        assert!(!is_horizontal_strip(&p(&[2, 2]), &p(&[1])));
        assert!(!is_horizontal_strip(&p(&[2]), &p(&[3])));
    }

    #[test]
    fn strip_matches_column_count() {
        for outer in partitions_up_to(10) {
            for inner in subpartitions(&outer) {
                let shape = SkewShape::new(outer.clone(), inner.clone()).unwrap();
                let mut cols = std::collections::HashMap::new();
                for (_, c) in shape.cells() {
                    *cols.entry(c).or_insert(0) += 1;
                }
                let by_cells = cols.values().all(|&n| n <= 1);
                assert_eq!(is_horizontal_strip(&outer, &inner), by_cells, "{shape}");
            }
        }
    }

    #[test]
    fn component_fixtures() {
        let s: SkewShape = "3,1/2".parse().unwrap();
        let parts = s.components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].cells(), vec![(1, 3)]);
        assert_eq!(parts[1].cells(), vec![(1, 1)]);
        let c: SkewShape = "3,2/1".parse().unwrap();
        assert_eq!(c.components(), vec![c.clone()]);
    }

    #[test]
    fn components_match_flood_fill() {
        for outer in partitions_up_to(8) {
            for inner in subpartitions(&outer) {
                let shape = SkewShape::new(outer.clone(), inner).unwrap();
                let cells = shape.cells();
                // union-find over adjacent cells
                let idx = |rc: (usize, usize)| cells.iter().position(|&x| x == rc);
                let mut parent: Vec<usize> = (0..cells.len()).collect();
                fn root(p: &mut [usize], i: usize) -> usize {
                    let mut i = i;
                    while p[i] != i {
                        i = p[i];
                    }
                    i
                }
                for (i, &(r, c)) in cells.iter().enumerate() {
                    for nb in [(r + 1, c), (r, c + 1)] {
                        if let Some(j) = idx(nb) {
                            let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                            parent[a] = b;
                        }
                    }
                }
                let mut roots: Vec<usize> =
                    (0..cells.len()).map(|i| root(&mut parent, i)).collect();
                roots.sort_unstable();
                roots.dedup();
                let comps = shape.components();
                assert_eq!(comps.len(), roots.len(), "{shape}");
                assert_eq!(
                    comps.iter().map(SkewShape::size).sum::<usize>(),
                    shape.size()
                );
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(subpartitions(&p(&[2, 1])).len(), 5);
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(parts in proptest::collection::vec(1usize..9, 0..9)) {
            let lam = Partition::from_unsorted(parts);
            prop_assert_eq!(lam.conjugate().conjugate(), lam.clone());
            prop_assert_eq!(lam.conjugate().size(), lam.size());
        }
    }
}
