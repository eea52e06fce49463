//! Degree-bounded symmetric functions in the monomial basis.
//!
//! Used as an independent oracle for Schur expansions: products are exact,
//! Schur functions come from Jacobi-Trudi, and Schur coefficients are read
//! off by leading-term elimination.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::pet_k;
use crate::partition::{partitions_of, partitions_up_to, Partition};
use crate::ribbon::{signed_ribbon_additions, Justify};

/// Default cap on the degree of any symmetric function.
pub const DEFAULT_DEGREE_BOUND: usize = 16;

/// Environment variable overriding [`DEFAULT_DEGREE_BOUND`].
pub const DEGREE_BOUND_VAR: &str = "PETRIE_DEGREE_BOUND";

/// `∑ c_λ m_λ` with every `|λ|` at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly {
    bound: usize,
    coeffs: BTreeMap<Partition, BigInt>,
}

impl SymPoly {
    pub fn zero(bound: usize) -> Self {
        Self {
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(bound: usize) -> Self {
        Self::monomial(bound, Partition::empty()).expect("degree zero always fits")
    }

    /// `m_λ`.
    pub fn monomial(bound: usize, lam: Partition) -> Result<Self> {
        let mut out = Self::zero(bound);
        out.add_term(lam, BigInt::one())?;
        Ok(out)
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, lam: &Partition) -> BigInt {
        self.coeffs.get(lam).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, lam: Partition, c: BigInt) -> Result<()> {
        if lam.size() > self.bound {
            return Err(Error::DegreeOverflow {
                degree: lam.size(),
                bound: self.bound,
            });
        }
        let slot = self.coeffs.entry(lam).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (lam, c) in &other.coeffs {
            out.add_term(lam.clone(), c.clone())
                .expect("both operands respect the bound");
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> SymPoly {
        let mut out = Self::zero(self.bound);
        if !c.is_zero() {
            out.coeffs = self
                .coeffs
                .iter()
                .map(|(l, v)| (l.clone(), v * c))
                .collect();
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.coeffs.keys().map(Partition::size).collect();
        d.sort_unstable();
        d.dedup();
        d
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (lam, c) in self.coeffs.iter().rev() {
            writeln!(f, "m[{lam}] : {c}")?;
        }
        Ok(())
    }
}

/// Schur coefficients `λ ↦ c_λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurExpansion {
    pub terms: BTreeMap<Partition, BigInt>,
}

impl SchurExpansion {
    pub fn coeff(&self, lam: &Partition) -> BigInt {
        self.terms.get(lam).cloned().unwrap_or_default()
    }

    pub fn from_i64(terms: impl IntoIterator<Item = (Partition, i64)>) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(l, c)| (l, BigInt::from(c)))
            .collect();
        Self { terms }
    }
}

/// One `partition : coeff` line per term, partitions lex descending.
impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (lam, c) in self.terms.iter().rev() {
            writeln!(f, "{lam} : {c}")?;
        }
        Ok(())
    }
}

/// A coefficient where two computations disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub shape: Partition,
    pub expected: BigInt,
    pub got: BigInt,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expected {}, got {}",
            self.shape, self.expected, self.got
        )
    }
}

/// Outcome of comparing an oracle expansion with a combinatorial one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionCheck {
    pub expansion: SchurExpansion,
    pub mismatches: Vec<Mismatch>,
}

impl ExpansionCheck {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn compare(
        expansion: SchurExpansion,
        expected: &SchurExpansion,
        support: impl IntoIterator<Item = Partition>,
    ) -> Self {
        let mut shapes: Vec<Partition> = support.into_iter().collect();
        shapes.extend(expansion.terms.keys().cloned());
        shapes.extend(expected.terms.keys().cloned());
        shapes.sort();
        shapes.dedup();
        let mismatches = shapes
            .into_iter()
            .filter_map(|shape| {
                let (e, g) = (expected.coeff(&shape), expansion.coeff(&shape));
                (e != g).then_some(Mismatch {
                    shape,
                    expected: e,
                    got: g,
                })
            })
            .collect();
        Self {
            expansion,
            mismatches,
        }
    }
}

/// `∏ h_{α_i}` as a sorted multiset of positive indices.
type HWord = Vec<usize>;

/// Symmetric-function arithmetic with memoised `h` products and Schur functions.
pub struct SymEngine {
    bound: usize,
    h_words: Mutex<HashMap<HWord, SymPoly>>,
    schurs: Mutex<HashMap<(Partition, Partition), SymPoly>>,
}

impl Default for SymEngine {
    fn default() -> Self {
        Self::new(DEFAULT_DEGREE_BOUND)
    }
}

impl SymEngine {
    pub fn new(bound: usize) -> Self {
        Self {
            bound,
            h_words: Mutex::new(HashMap::new()),
            schurs: Mutex::new(HashMap::new()),
        }
    }

    /// Bound from `PETRIE_DEGREE_BOUND`, else the default.
    pub fn from_env() -> Result<Self> {
        match std::env::var(DEGREE_BOUND_VAR) {
            Ok(v) => v.trim().parse().map(Self::new).map_err(|_| Error::Unknown {
                kind: "degree bound",
                name: v,
            }),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.bound {
            return Err(Error::DegreeOverflow {
                degree,
                bound: self.bound,
            });
        }
        Ok(())
    }

    pub fn m(&self, lam: &Partition) -> Result<SymPoly> {
        SymPoly::monomial(self.bound, lam.clone())
    }

    pub fn e(&self, n: usize) -> Result<SymPoly> {
        self.m(&Partition::from(vec![1; n].as_slice()))
    }

    pub fn h(&self, n: usize) -> Result<SymPoly> {
        self.check_degree(n)?;
        let mut out = SymPoly::zero(self.bound);
        for lam in partitions_of(n) {
            out.add_term(lam, BigInt::one())?;
        }
        Ok(out)
    }

    pub fn p(&self, n: usize) -> Result<SymPoly> {
        self.m(&Partition::from_unsorted(vec![n]))
    }

    /// Exact product. The coefficient of `m_ν` is the coefficient of `x^ν`,
    /// a sum over splittings of the exponent vector `ν = α + β`.
    pub fn multiply(&self, f: &SymPoly, g: &SymPoly) -> Result<SymPoly> {
        let mut out = SymPoly::zero(self.bound);
        for df in f.degrees() {
            for dg in g.degrees() {
                self.check_degree(df + dg)?;
                for nu in partitions_of(df + dg) {
                    let c = split_sum(nu.parts(), f, g, df);
                    if !c.is_zero() {
                        out.add_term(nu, c)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `∏ h_{α_i}` in the monomial basis.
    fn h_word(&self, word: &[usize]) -> Result<SymPoly> {
        if let Some(v) = self.h_words.lock().expect("cache lock").get(word) {
            return Ok(v.clone());
        }
        let value = match word.split_last() {
            None => SymPoly::one(self.bound),
            Some((&last, rest)) => self.multiply(&self.h_word(rest)?, &self.h(last)?)?,
        };
        self.h_words
            .lock()
            .expect("cache lock")
            .insert(word.to_vec(), value.clone());
        Ok(value)
    }

    /// `s_{λ/μ} = det(h_{λ_i − i − μ_j + j})`; zero when `μ ⊄ λ`.
    pub fn skew_schur(&self, lam: &Partition, mu: &Partition) -> Result<SymPoly> {
        if !lam.contains(mu) {
            return Ok(SymPoly::zero(self.bound));
        }
        self.check_degree(lam.size() - mu.size())?;
        let key = (lam.clone(), mu.clone());
        if let Some(v) = self.schurs.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let n = lam.len();
        let entry = |i: usize, j: usize| -> Option<usize> {
            let d = lam.part(i + 1) as i64 - (i as i64) - mu.part(j + 1) as i64 + j as i64;
            usize::try_from(d).ok()
        };
        let mut out = SymPoly::zero(self.bound);
        for (word, c) in jacobi_trudi(n, &entry) {
            out = out.add(&self.h_word(&word)?.scale(&c));
        }
        self.schurs
            .lock()
            .expect("cache lock")
            .insert(key, out.clone());
        Ok(out)
    }

    pub fn schur(&self, lam: &Partition) -> Result<SymPoly> {
        self.skew_schur(lam, &Partition::empty())
    }

    /// `G(k, n) = ∑ m_λ` over `λ ⊢ n` with all parts below `k`.
    pub fn petrie_g(&self, k: usize, n: usize) -> Result<SymPoly> {
        self.check_degree(n)?;
        let mut out = SymPoly::zero(self.bound);
        for lam in partitions_of(n) {
            if lam.first() < k {
                out.add_term(lam, BigInt::one())?;
            }
        }
        Ok(out)
    }

    /// `f ∘ p_k`, i.e. `m_λ ↦ m_{kλ}`.
    pub fn plethysm_pk(&self, f: &SymPoly, k: usize) -> Result<SymPoly> {
        if k == 0 {
            return Err(Error::Invariant("plethysm with p_0".into()));
        }
        let mut out = SymPoly::zero(self.bound);
        for (lam, c) in &f.coeffs {
            out.add_term(lam.scaled(k), c.clone())?;
        }
        Ok(out)
    }

    /// Schur coefficients by repeatedly removing the lex-largest monomial.
    pub fn schur_expand(&self, f: &SymPoly) -> Result<SchurExpansion> {
        let budget = partitions_up_to(self.bound).len() + 1;
        let mut rest = f.clone();
        let mut terms = BTreeMap::new();
        for _ in 0..budget {
            let Some((lead, c)) = rest
                .coeffs
                .iter()
                .next_back()
                .map(|(l, c)| (l.clone(), c.clone()))
            else {
                return Ok(SchurExpansion { terms });
            };
            rest = rest.sub(&self.schur(&lead)?.scale(&c));
            if rest.coeffs.contains_key(&lead) {
                return Err(Error::NonTerminating);
            }
            terms.insert(lead, c);
        }
        Err(Error::NonTerminating)
    }

    /// `∑ c_λ s_λ` back in the monomial basis.
    pub fn from_schur(&self, x: &SchurExpansion) -> Result<SymPoly> {
        let mut out = SymPoly::zero(self.bound);
        for (lam, c) in &x.terms {
            out = out.add(&self.schur(lam)?.scale(c));
        }
        Ok(out)
    }

    /// Compares the Schur expansion of `G(k, n)·s_μ` with `pet_k(λ, μ)`.
    pub fn verify_grinberg(&self, k: usize, n: usize, mu: &Partition) -> Result<ExpansionCheck> {
        let lhs = self.schur_expand(&self.multiply(&self.petrie_g(k, n)?, &self.schur(mu)?)?)?;
        let shapes = partitions_of(n + mu.size());
        let expected = SchurExpansion::from_i64(
            shapes
                .iter()
                .map(|lam| (lam.clone(), pet_k(lam, mu, k) as i64)),
        );
        Ok(ExpansionCheck::compare(lhs, &expected, shapes))
    }

    /// Compares `(e_n ∘ p_k)·s_μ` with the signed sum over left-justified ribbon additions.
    pub fn verify_plethystic_mn(
        &self,
        n: usize,
        k: usize,
        mu: &Partition,
    ) -> Result<ExpansionCheck> {
        self.ribbon_rule(&self.e(n)?, n, k, mu, Justify::Left)
    }

    /// Compares `(h_n ∘ p_k)·s_μ` with the signed sum over top-justified ribbon additions.
    pub fn verify_plethystic_mn_h(
        &self,
        n: usize,
        k: usize,
        mu: &Partition,
    ) -> Result<ExpansionCheck> {
        self.ribbon_rule(&self.h(n)?, n, k, mu, Justify::Top)
    }

    fn ribbon_rule(
        &self,
        f: &SymPoly,
        n: usize,
        k: usize,
        mu: &Partition,
        how: Justify,
    ) -> Result<ExpansionCheck> {
        self.check_degree(n * k + mu.size())?;
        let lhs = self.schur_expand(&self.multiply(&self.plethysm_pk(f, k)?, &self.schur(mu)?)?)?;
        let expected = SchurExpansion::from_i64(signed_ribbon_additions(mu, n, k, how));
        Ok(ExpansionCheck::compare(lhs, &expected, []))
    }
}

/// `∑_{α+β=ν} f[α] g[β]` with `|α| = df`, over exponent vectors padded to `len ν`.
fn split_sum(nu: &[usize], f: &SymPoly, g: &SymPoly, df: usize) -> BigInt {
    fn go(
        nu: &[usize],
        i: usize,
        left: usize,
        a: &mut Vec<usize>,
        f: &SymPoly,
        g: &SymPoly,
        acc: &mut BigInt,
    ) {
        if i == nu.len() {
            if left == 0 {
                let alpha =
                    Partition::from_unsorted(a.iter().copied().filter(|&x| x > 0).collect());
                let Some(cf) = f.coeffs.get(&alpha) else {
                    return;
                };
                let beta = Partition::from_unsorted(
                    nu.iter()
                        .zip(a.iter())
                        .map(|(n, x)| n - x)
                        .filter(|&x| x > 0)
                        .collect(),
                );
                if let Some(cg) = g.coeffs.get(&beta) {
                    *acc += cf * cg;
                }
            }
            return;
        }
        let rest: usize = nu[i + 1..].iter().sum();
        for x in left.saturating_sub(rest)..=nu[i].min(left) {
            a.push(x);
            go(nu, i + 1, left - x, a, f, g, acc);
            a.pop();
        }
    }
    let mut acc = BigInt::zero();
    go(nu, 0, df, &mut Vec::with_capacity(nu.len()), f, g, &mut acc);
    acc
}

/// Laplace expansion of `det(h_{entry(i,j)})` over `h`-words, memoised on used columns.
fn jacobi_trudi(
    n: usize,
    entry: &dyn Fn(usize, usize) -> Option<usize>,
) -> BTreeMap<HWord, BigInt> {
    fn go(
        row: usize,
        used: u32,
        n: usize,
        entry: &dyn Fn(usize, usize) -> Option<usize>,
        memo: &mut HashMap<u32, BTreeMap<HWord, BigInt>>,
    ) -> BTreeMap<HWord, BigInt> {
        if row == n {
            return BTreeMap::from([(Vec::new(), BigInt::one())]);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut out: BTreeMap<HWord, BigInt> = BTreeMap::new();
        let mut free_before = 0;
        for j in 0..n {
            if used & (1 << j) != 0 {
                continue;
            }
            if let Some(d) = entry(row, j) {
                let minor = go(row + 1, used | (1 << j), n, entry, memo);
                for (word, c) in minor {
                    let mut w = word;
                    if d > 0 {
                        let at = w.partition_point(|&x| x < d);
                        w.insert(at, d);
                    }
                    let slot = out.entry(w).or_default();
                    if free_before % 2 == 0 {
                        *slot += c;
                    } else {
                        *slot -= c;
                    }
                }
            }
            free_before += 1;
        }
        out.retain(|_, c| !c.is_zero());
        memo.insert(used, out.clone());
        out
    }
    assert!(n < 32, "Jacobi-Trudi matrix too large");
    go(0, 0, n, entry, &mut HashMap::new())
}

/// Is every coefficient of the expansion in `{0, 1}`?
pub fn is_zero_one(x: &SchurExpansion) -> bool {
    x.terms.values().all(|c| c.is_zero() || c.is_one())
}
