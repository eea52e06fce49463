//! Petrie matrices, `Pet_k(λ, μ)`, and exact determinants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// The row `v[a,b]`: ones in columns `a+1..=b` (1-indexed). `a == b` is a zero row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RowInterval {
    pub a: usize,
    pub b: usize,
}

impl RowInterval {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a <= b, "interval [{a},{b}] is reversed");
        Self { a, b }
    }

    /// Entry in 1-indexed column `j`.
    pub fn entry(&self, j: usize) -> u8 {
        (self.a < j && j <= self.b) as u8
    }

    pub fn is_zero(&self) -> bool {
        self.a == self.b
    }
}

/// A 0/1 matrix whose rows are consecutive-ones intervals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PetrieMatrix {
    ncols: usize,
    rows: Vec<RowInterval>,
}

impl PetrieMatrix {
    pub fn new(ncols: usize, rows: Vec<RowInterval>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.a > r.b || r.b > ncols) {
            return Err(Error::BadInterval {
                a: r.a,
                b: r.b,
                ncols,
            });
        }
        Ok(Self { ncols, rows })
    }

    /// Convenience constructor from `(a, b)` pairs.
    pub fn from_pairs(ncols: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(a, b)) = pairs.iter().find(|(a, b)| a > b) {
            return Err(Error::BadInterval { a, b, ncols });
        }
        Self::new(
            ncols,
            pairs.iter().map(|&(a, b)| RowInterval { a, b }).collect(),
        )
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[RowInterval] {
        &self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn dense(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| (1..=self.ncols).map(|j| r.entry(j) as i64).collect())
            .collect()
    }

    /// Human-readable 0/1 dump.
    pub fn dense_string(&self) -> String {
        self.dense()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| if *x == 1 { '1' } else { '0' })
                    .collect::<String>()
                    + "\n"
            })
            .collect()
    }

    /// The same rows with `extra` zero columns appended on the right.
    pub fn with_extra_columns(&self, extra: usize) -> Self {
        Self {
            ncols: self.ncols + extra,
            rows: self.rows.clone(),
        }
    }
}

impl fmt::Display for PetrieMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ncols={}", self.ncols)?;
        for r in &self.rows {
            writeln!(f, "{} {}", r.a, r.b)?;
        }
        Ok(())
    }
}

impl FromStr for PetrieMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |line: &str| Error::Unknown {
            kind: "matrix line",
            name: line.to_string(),
        };
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| bad(""))?;
        let ncols = header
            .strip_prefix("ncols=")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| bad(header))?;
        let mut pairs = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => pairs.push((a, b)),
                _ => return Err(bad(line)),
            }
        }
        Self::from_pairs(ncols, &pairs)
    }
}

/// `Pet_k(λ, μ)` of the given size: entry `(i, j)` is 1 iff
/// `0 ≤ λ_i − i − μ_j + j < k`.
///
/// The size defaults to the longer of the two lengths.
pub fn build_pet_k(
    lam: &Partition,
    mu: &Partition,
    k: usize,
    size: Option<usize>,
) -> Result<PetrieMatrix> {
    let longest = lam.len().max(mu.len());
    let n = size.unwrap_or(longest);
    if n < longest {
        return Err(Error::InvalidPadding {
            size: n,
            len: longest,
        });
    }
    // μ_j − j is strictly decreasing, so the ones of row i are the columns
    // whose value lies in (λ_i − i − k, λ_i − i].
    let col: Vec<i64> = (1..=n).map(|j| mu.part(j) as i64 - j as i64).collect();
    let rows = (1..=n)
        .map(|i| {
            let top = lam.part(i) as i64 - i as i64;
            let a = col.iter().take_while(|&&c| c > top).count();
            let b = col.iter().take_while(|&&c| c > top - k as i64).count();
            RowInterval { a, b }
        })
        .collect();
    PetrieMatrix::new(n, rows)
}

/// Exact determinant of a square integer matrix by fraction-free elimination.
pub fn det_exact(m: &[Vec<i64>]) -> Result<BigInt> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    Ok(match bareiss_i128(m) {
        Some(d) => BigInt::from(d),
        None => bareiss_big(m),
    })
}

/// Bareiss over `i128`; `None` on overflow.
fn bareiss_i128(m: &[Vec<i64>]) -> Option<i128> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return Some(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j].checked_mul(a[k][k])?;
                let y = a[i][k].checked_mul(a[k][j])?;
                a[i][j] = x.checked_sub(y)? / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Some(if n == 0 { 1 } else { sign * a[n - 1][n - 1] })
}

fn bareiss_big(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 {
        BigInt::one()
    } else {
        a[n - 1][n - 1].clone()
    };
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant of a square Petrie matrix.
pub fn det_petrie(m: &PetrieMatrix) -> Result<i64> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let d = det_exact(&m.dense())?;
    d.to_i64()
        .ok_or_else(|| Error::Invariant(format!("Petrie determinant {d} out of range")))
}

/// `pet_k(λ, μ) = det Pet_k(λ, μ)`, always in `{−1, 0, 1}`.
pub fn pet_k(lam: &Partition, mu: &Partition, k: usize) -> i8 {
    let m = build_pet_k(lam, mu, k, None).expect("default size always fits");
    let d = det_petrie(&m).expect("square by construction");
    assert!(
        (-1..=1).contains(&d),
        "Petrie determinant {d} outside {{-1,0,1}}"
    );
    d as i8
}

/// Which entries count as the upper-right / lower-left quadrant of a zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Quadrant {
    /// Same row or column included (the entry itself excluded).
    #[default]
    Weak,
    /// Strictly above and right, resp. strictly below and left.
    Strict,
}

/// Every zero entry has an all-zero upper-right or lower-left quadrant.
pub fn is_totally_petrie(m: &PetrieMatrix, mode: Quadrant) -> bool {
    let d = m.dense();
    let (nr, nc) = (d.len(), m.ncols());
    // prefix sums over the dense matrix make each quadrant query O(1)
    let mut s = vec![vec![0i64; nc + 1]; nr + 1];
    for i in 0..nr {
        for j in 0..nc {
            s[i + 1][j + 1] = d[i][j] + s[i][j + 1] + s[i + 1][j] - s[i][j];
        }
    }
    // ones in rows r0..r1, columns c0..c1 (half-open, 0-indexed)
    let rect = |r0: usize, r1: usize, c0: usize, c1: usize| -> i64 {
        if r0 >= r1 || c0 >= c1 {
            return 0;
        }
        s[r1][c1] - s[r0][c1] - s[r1][c0] + s[r0][c0]
    };
    (0..nr).all(|i| {
        (0..nc).all(|j| {
            if d[i][j] != 0 {
                return true;
            }
            let (upper_right, lower_left) = match mode {
                Quadrant::Weak => (rect(0, i + 1, j, nc), rect(i, nr, 0, j + 1)),
                Quadrant::Strict => (rect(0, i, j + 1, nc), rect(i + 1, nr, 0, j)),
            };
            upper_right == 0 || lower_left == 0
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{partitions_up_to, subpartitions};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(parts: &[usize]) -> Partition {
        Partition::from(parts)
    }

    /// Cofactor expansion along the first row.
    fn det_cofactor(m: &[Vec<i64>]) -> i64 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det_cofactor(&minor)
            })
            .sum()
    }

    pub(crate) fn fig4() -> PetrieMatrix {
        build_pet_k(
            &p(&[4, 4, 4, 3, 2, 2, 2, 1, 1]),
            &Partition::empty(),
            5,
            None,
        )
        .unwrap()
    }

    #[test]
    fn fig4_matrix() {
        let m = fig4();
        let want = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 5),
            (2, 7),
            (3, 8),
            (4, 9),
            (6, 9),
            (7, 9),
        ];
        assert_eq!(m, PetrieMatrix::from_pairs(9, &want).unwrap());
        assert_eq!(det_petrie(&m).unwrap(), -1);
    }

    #[test]
    fn fig5_matrix_after_column_deletion() {
        let m = build_pet_k(
            &p(&[6, 6, 6, 6, 5, 5, 4, 4, 2]),
            &p(&[4, 2, 2, 2, 2, 1, 1, 1]),
            5,
            None,
        )
        .unwrap();
        let want = [
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (1, 5),
            (2, 6),
            (4, 8),
            (5, 8),
            (7, 9),
        ];
        assert_eq!(m, PetrieMatrix::from_pairs(9, &want).unwrap());
    }

    #[test]
    fn unitriangular_on_diagonal_shapes() {
        for mu in partitions_up_to(8) {
            for k in 1..4 {
                let d = build_pet_k(&mu, &mu, k, None).unwrap().dense();
                for (i, row) in d.iter().enumerate() {
                    assert_eq!(row[i], 1);
                    assert!(row[..i].iter().all(|&x| x == 0));
                }
            }
        }
    }

    #[test]
    fn padding_errors() {
        assert!(build_pet_k(&p(&[2, 1]), &Partition::empty(), 2, Some(1)).is_err());
        assert_eq!(
            build_pet_k(&p(&[2, 1]), &Partition::empty(), 2, Some(4))
                .unwrap()
                .nrows(),
            4
        );
    }

    #[test]
    fn determinant_fixtures() {
        let id: Vec<Vec<i64>> = (0..6)
            .map(|i| (0..6).map(|j| (i == j) as i64).collect())
            .collect();
        assert_eq!(det_exact(&id).unwrap(), BigInt::from(1));
        let six_rows =
            PetrieMatrix::from_pairs(6, &[(0, 4), (2, 4), (3, 6), (1, 5), (0, 1), (2, 5)]).unwrap();
        assert_eq!(det_cofactor(&six_rows.dense()), 0);
        assert_eq!(det_petrie(&six_rows).unwrap(), 0);
        assert!(det_exact(&[vec![1, 2]]).is_err());
        assert_eq!(det_exact(&[]).unwrap(), BigInt::from(1));
    }

    #[test]
    fn pet_fixtures() {
        assert_eq!(pet_k(&p(&[2, 1]), &Partition::empty(), 3), 1);
        assert_eq!(pet_k(&p(&[1, 1, 1]), &Partition::empty(), 3), -1);
        assert_eq!(pet_k(&p(&[3]), &Partition::empty(), 3), 0);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let n = rng.gen_range(0..=5);
            let m: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
                .collect();
            assert_eq!(
                det_exact(&m).unwrap(),
                BigInt::from(det_cofactor(&m)),
                "{m:?}"
            );
        }
    }

    #[test]
    fn big_determinants_fall_back_to_bigint() {
        // the Vandermonde determinant on 1..=14 does not fit in i128
        let n = 14;
        let m: Vec<Vec<i64>> = (1..=n)
            .map(|x: i64| (0..n).map(|e| x.pow(e as u32)).collect())
            .collect();
        let mut want = BigInt::one();
        for i in 1..=n {
            for j in i + 1..=n {
                want *= BigInt::from(j - i);
            }
        }
        assert_eq!(det_exact(&m).unwrap(), want);
    }

    #[test]
    fn zero_rows_kill_the_determinant() {
        let m = PetrieMatrix::from_pairs(3, &[(0, 3), (1, 1), (0, 2)]).unwrap();
        assert_eq!(det_petrie(&m).unwrap(), 0);
    }

    #[test]
    fn totally_petrie_conventions() {
        let ones = PetrieMatrix::from_pairs(3, &[(0, 3), (0, 3), (0, 3)]).unwrap();
        assert!(is_totally_petrie(&ones, Quadrant::Weak));
        let fixture = PetrieMatrix::from_pairs(2, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!is_totally_petrie(&fixture, Quadrant::Weak));
        assert!(is_totally_petrie(&fixture, Quadrant::Strict));
        for lam in partitions_up_to(8) {
            for mu in subpartitions(&lam) {
                for k in 0..5 {
                    let m = build_pet_k(&lam, &mu, k, None).unwrap();
                    assert!(is_totally_petrie(&m, Quadrant::Weak), "{lam}/{mu} k={k}");
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let m = fig4();
        let text = m.to_string();
        assert!(text.starts_with("ncols=9\n0 1\n"));
        assert_eq!(text.parse::<PetrieMatrix>().unwrap(), m);
        assert!("ncols=2\n3 1\n".parse::<PetrieMatrix>().is_err());
        assert_eq!(
            PetrieMatrix::from_pairs(2, &[(0, 1)])
                .unwrap()
                .dense_string(),
            "10\n"
        );
    }
}
