//! Maya diagrams, k-abaci, ribbons and k-cores.
//!
//! Index `i` of the Maya diagram of `λ` carries a bead when
//! `i = λ_j − j + 1` for some `j ≥ 1`. Removing a k-ribbon that starts at
//! content `i` moves the bead at `i + k` down to the empty slot `i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A finite window of a Maya diagram. Indices below the window are beads,
/// indices above it are gaps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MayaDiagram {
    lo: i64,
    bits: Vec<bool>,
}

impl MayaDiagram {
    /// Builds a diagram from explicit bits starting at index `lo`.
    pub fn from_bits(lo: i64, bits: Vec<bool>) -> Self {
        Self { lo, bits }
    }

    pub fn window_lo(&self) -> i64 {
        self.lo
    }

    pub fn window_hi(&self) -> i64 {
        self.lo + self.bits.len() as i64 - 1
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: i64) -> bool {
        if i < self.lo {
            true
        } else {
            self.bits
                .get((i - self.lo) as usize)
                .copied()
                .unwrap_or(false)
        }
    }

    /// Widens the window so that `[lo, hi]` is covered.
    fn cover(&mut self, lo: i64, hi: i64) {
        if lo < self.lo {
            let extra = (self.lo - lo) as usize;
            let mut bits = vec![true; extra];
            bits.append(&mut self.bits);
            self.bits = bits;
            self.lo = lo;
        }
        if hi > self.window_hi() {
            let len = (hi - self.lo + 1) as usize;
            self.bits.resize(len, false);
        }
    }

    fn set(&mut self, i: i64, v: bool) {
        self.cover(i, i);
        let at = (i - self.lo) as usize;
        self.bits[at] = v;
    }

    /// Number of beads strictly between two indices.
    pub fn beads_between(&self, lo: i64, hi: i64) -> usize {
        (lo + 1..hi).filter(|&i| self.get(i)).count()
    }

    /// Bead positions inside the window, largest first.
    pub fn beads_desc(&self) -> Vec<i64> {
        (self.lo..=self.window_hi())
            .rev()
            .filter(|&i| self.get(i))
            .collect()
    }
}

/// Maya diagram of `p` over the window `[−len−1, λ_1+1]`.
pub fn maya_of(p: &Partition) -> MayaDiagram {
    let lo = -(p.len() as i64) - 1;
    let hi = p.first() as i64 + 1;
    let mut bits = vec![false; (hi - lo + 1) as usize];
    for j in 1..=p.len() + 2 {
        let i = p.part(j) as i64 - j as i64 + 1;
        if i >= lo {
            bits[(i - lo) as usize] = true;
        }
    }
    MayaDiagram { lo, bits }
}

/// Reads the partition back from a Maya diagram.
///
/// The diagram must have charge zero: as many gaps at indices `≤ 0` as
/// beads at indices `> 0`.
pub fn partition_of_maya(m: &MayaDiagram) -> Result<Partition> {
    let hi = m.window_hi();
    let gaps_left = (m.lo..=hi.min(0)).filter(|&i| !m.get(i)).count();
    let beads_right = (1.max(m.lo)..=hi).filter(|&i| m.get(i)).count();
    if gaps_left != beads_right {
        return Err(Error::MalformedMaya(format!(
            "charge {} is not zero",
            beads_right as i64 - gaps_left as i64
        )));
    }
    let mut parts = Vec::new();
    let mut beads = m.beads_desc().into_iter().chain((i64::MIN..m.lo).rev());
    for j in 1.. {
        let pos = beads.next().expect("infinitely many beads");
        let part = pos + j - 1;
        if part <= 0 {
            break;
        }
        parts.push(part as usize);
    }
    Partition::new(parts).map_err(|e| Error::MalformedMaya(e.to_string()))
}

/// A Maya diagram wrapped onto `k` runners: index `i` sits on runner
/// `i mod k` at level `⌊i / k⌋`, with `a_0` on runner 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abacus {
    k: usize,
    level_lo: i64,
    /// `runners[r][l]` is the slot at level `level_lo + l` on runner `r`.
    runners: Vec<Vec<bool>>,
}

impl Abacus {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn level_lo(&self) -> i64 {
        self.level_lo
    }

    pub fn runner(&self, r: usize) -> &[bool] {
        &self.runners[r]
    }

    /// Bead at runner `r`, level `level`; levels below the stored range are full.
    pub fn bead(&self, r: usize, level: i64) -> bool {
        if level < self.level_lo {
            return true;
        }
        self.runners[r]
            .get((level - self.level_lo) as usize)
            .copied()
            .unwrap_or(false)
    }

    /// Reads the runners back row by row into a Maya diagram.
    pub fn to_maya(&self) -> MayaDiagram {
        let levels = self.runners[0].len() as i64;
        let lo = self.level_lo * self.k as i64;
        let mut bits = Vec::with_capacity((levels as usize) * self.k);
        for level in self.level_lo..self.level_lo + levels {
            for r in 0..self.k {
                bits.push(self.bead(r, level));
            }
        }
        MayaDiagram { lo, bits }
    }

    /// Pushes every bead to the bottom of its runner.
    pub fn settled(&self) -> Abacus {
        let runners = self
            .runners
            .iter()
            .map(|run| {
                let count = run.iter().filter(|&&b| b).count();
                (0..run.len()).map(|l| l < count).collect()
            })
            .collect();
        Abacus {
            k: self.k,
            level_lo: self.level_lo,
            runners,
        }
    }
}

pub fn abacus_of(p: &Partition, k: usize) -> Result<Abacus> {
    if k == 0 {
        return Err(Error::InvalidRunnerCount(k));
    }
    let m = maya_of(p);
    let kk = k as i64;
    let level_lo = m.window_lo().div_euclid(kk);
    let level_hi = m.window_hi().div_euclid(kk);
    let runners = (0..k)
        .map(|r| {
            (level_lo..=level_hi)
                .map(|l| m.get(l * kk + r as i64))
                .collect()
        })
        .collect();
    Ok(Abacus {
        k,
        level_lo,
        runners,
    })
}

/// The k-core: what is left after all k-ribbons are removed.
pub fn k_core(p: &Partition, k: usize) -> Result<Partition> {
    let settled = abacus_of(p, k)?.settled();
    partition_of_maya(&settled.to_maya())
}

/// A k-ribbon identified by the content of its bottom-left box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ribbon {
    pub start: i64,
    pub k: usize,
    pub height: usize,
}

/// Removes the k-ribbon starting at content `start`, if there is one.
/// Returns the smaller partition and the ribbon height.
pub fn remove_ribbon(p: &Partition, start: i64, k: usize) -> Option<(Partition, usize)> {
    swap_beads(p, start, k, true)
}

/// Adds a k-ribbon starting at content `start`, if it fits.
pub fn add_ribbon(p: &Partition, start: i64, k: usize) -> Option<(Partition, usize)> {
    swap_beads(p, start, k, false)
}

fn swap_beads(p: &Partition, start: i64, k: usize, remove: bool) -> Option<(Partition, usize)> {
    if k == 0 {
        return None;
    }
    let end = start + k as i64;
    let mut m = maya_of(p);
    // removal moves a bead from `end` down to `start`; addition the reverse
    if m.get(start) == remove || m.get(end) != remove {
        return None;
    }
    let height = m.beads_between(start, end);
    m.set(start, remove);
    m.set(end, !remove);
    let q = partition_of_maya(&m).expect("a bead swap keeps the charge");
    Some((q, height))
}

/// All k-ribbons removable from `p`, by increasing start content.
pub fn removable_ribbons(p: &Partition, k: usize) -> Vec<(i64, Partition, usize)> {
    let lo = -(p.len() as i64) - k as i64;
    let hi = p.first() as i64;
    (lo..=hi)
        .filter_map(|s| remove_ribbon(p, s, k).map(|(q, h)| (s, q, h)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{partitions_up_to, Partition};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn p(parts: &[usize]) -> Partition {
        Partition::from(parts)
    }

    fn bits_between(m: &MayaDiagram, lo: i64, hi: i64) -> Vec<u8> {
        (lo..=hi).map(|i| m.get(i) as u8).collect()
    }

    #[test]
    fn maya_fixture() {
        let m = maya_of(&p(&[4, 4, 3, 1]));
        assert_eq!(bits_between(&m, -4, 5), vec![1, 0, 1, 0, 0, 1, 0, 1, 1, 0]);
        assert_eq!(partition_of_maya(&m).unwrap(), p(&[4, 4, 3, 1]));
        let e = maya_of(&Partition::empty());
        assert!((-20..=0).all(|i| e.get(i)) && (1..20).all(|i| !e.get(i)));
        let bits = MayaDiagram::from_bits(-3, vec![true, true, true, true, false, false]);
        assert_eq!(partition_of_maya(&bits).unwrap(), Partition::empty());
    }

    #[test]
    fn malformed_maya_rejected() {
        let shifted = MayaDiagram::from_bits(0, vec![true, true, false]);
        assert!(partition_of_maya(&shifted).is_err());
    }

    #[test]
    fn maya_from_conjugate_reading() {
        // gaps sit at i = j − λ'_j
        for lam in partitions_up_to(10) {
            let m = maya_of(&lam);
            let conj = lam.conjugate();
            for i in m.window_lo()..=m.window_hi() {
                let gap =
                    (1..=conj.len() + m.bits().len()).any(|j| j as i64 - conj.part(j) as i64 == i);
                assert_eq!(!m.get(i), gap, "{lam} at {i}");
            }
        }
    }

    #[test]
    fn abacus_fixture() {
        // 4-abacus of (4,4,3,1): beads at 4,3,1,−2,−4,−5,...
        let a = abacus_of(&p(&[4, 4, 3, 1]), 4).unwrap();
        let on = |r: usize, l: i64| a.bead(r, l);
        assert!(on(0, 1) && on(3, 0) && on(1, 0) && on(2, -1) && on(0, -1));
        assert!(!on(0, 0) && !on(2, 0) && !on(3, -1) && !on(1, -1) && !on(1, 1));
        let e = abacus_of(&Partition::empty(), 3).unwrap();
        for r in 0..3 {
            for level in -3..3 {
                assert_eq!(e.bead(r, level), level * 3 + r as i64 <= 0);
            }
        }
        assert!(abacus_of(&Partition::empty(), 0).is_err());
    }

    #[test]
    fn abacus_round_trip() {
        for lam in partitions_up_to(12) {
            let m = maya_of(&lam);
            for k in 1..=6 {
                let back = abacus_of(&lam, k).unwrap().to_maya();
                for i in m.window_lo() - k as i64..=m.window_hi() + k as i64 {
                    assert_eq!(back.get(i), m.get(i));
                }
                assert_eq!(partition_of_maya(&back).unwrap(), lam);
            }
        }
    }

    #[test]
    fn core_fixture() {
        assert_eq!(k_core(&p(&[6, 4, 4, 2, 1]), 3).unwrap(), p(&[3, 1, 1]));
        assert_eq!(k_core(&p(&[2, 1]), 5).unwrap(), p(&[2, 1]));
    }

    fn cells_rows(outer: &Partition, inner: &Partition) -> usize {
        (1..=outer.len())
            .filter(|&r| outer.part(r) > inner.part(r))
            .count()
    }

    #[test]
    fn ribbon_fixtures() {
        assert_eq!(remove_ribbon(&p(&[3]), 0, 3), Some((Partition::empty(), 0)));
        assert_eq!(
            remove_ribbon(&p(&[1, 1, 1]), -2, 3),
            Some((Partition::empty(), 2))
        );
        assert_eq!(add_ribbon(&Partition::empty(), 0, 2), Some((p(&[2]), 0)));
        assert_eq!(
            add_ribbon(&Partition::empty(), -1, 2),
            Some((p(&[1, 1]), 1))
        );
        let lam = p(&[6, 4, 4, 2, 1]);
        let all = removable_ribbons(&lam, 3);
        assert!(!all.is_empty());
        for (s, q, h) in all {
            assert_eq!(q.size(), 14);
            assert_eq!(add_ribbon(&q, s, 3), Some((lam.clone(), h)));
        }
    }

    #[test]
    fn ribbon_height_and_shape_from_cells() {
        for lam in partitions_up_to(10) {
            for k in 1..=5 {
                for (s, q, h) in removable_ribbons(&lam, k) {
                    assert!(lam.contains(&q));
                    assert_eq!(lam.size() - q.size(), k);
                    assert_eq!(h + 1, cells_rows(&lam, &q), "{lam} − {q}");
                    // bottom-left cell has content s
                    let bottom = (1..=lam.len())
                        .filter(|&r| lam.part(r) > q.part(r))
                        .max()
                        .unwrap();
                    assert_eq!(q.part(bottom) as i64 + 1 - bottom as i64, s);
                    assert_eq!(add_ribbon(&q, s, k), Some((lam.clone(), h)));
                }
            }
        }
    }

    #[test]
    fn core_is_end_of_every_removal_order() {
        fn ends(
            lam: &Partition,
            k: usize,
            seen: &mut BTreeSet<Partition>,
            out: &mut BTreeSet<Partition>,
        ) {
            if !seen.insert(lam.clone()) {
                return;
            }
            let next = removable_ribbons(lam, k);
            if next.is_empty() {
                out.insert(lam.clone());
            }
            for (_, q, _) in next {
                ends(&q, k, seen, out);
            }
        }
        for lam in partitions_up_to(10) {
            for k in 1..=5 {
                let mut out = BTreeSet::new();
                ends(&lam, k, &mut BTreeSet::new(), &mut out);
                let core = k_core(&lam, k).unwrap();
                assert_eq!(out.into_iter().collect::<Vec<_>>(), vec![core.clone()]);
                assert_eq!(k_core(&core, k).unwrap(), core);
                assert!(removable_ribbons(&core, k).is_empty());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn maya_round_trip(parts in proptest::collection::vec(1usize..12, 0..10)) {
            let lam = Partition::from_unsorted(parts);
            prop_assume!(lam.size() <= 30);
            prop_assert_eq!(partition_of_maya(&maya_of(&lam)).unwrap(), lam);
        }

        #[test]
        fn add_then_remove(parts in proptest::collection::vec(1usize..6, 0..6), k in 1usize..6, s in -12i64..12) {
            let lam = Partition::from_unsorted(parts);
            if let Some((big, h)) = add_ribbon(&lam, s, k) {
                prop_assert_eq!(remove_ribbon(&big, s, k), Some((lam, h)));
                prop_assert!(h < k);
            }
        }
    }
}
