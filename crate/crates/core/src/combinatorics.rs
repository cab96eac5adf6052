//! Subsets of a ground set `[n] = {1, …, n}`, binomial coefficients, the
//! colex order and the cascade (m-binomial) representation of integers.
//!
//! A [`Subset`] is a single machine word: element `i` is bit `i - 1`. With
//! that encoding two subsets of the same size compare in colex order exactly
//! when their words compare as integers, which is what makes most of the
//! crate cheap.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::johnson::Family;

/// Largest supported ground set.
pub const MAX_GROUND: u32 = 64;

/// A subset of `[n]`, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a subset from 1-based elements. Duplicates are rejected.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > MAX_GROUND {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    n: MAX_GROUND,
                });
            }
            let bit = 1u64 << (e - 1);
            if bits & bit != 0 {
                return Err(invalid(format!("element {e} repeated")));
            }
            bits |= bit;
        }
        Ok(Subset(bits))
    }

    /// `{1, …, m}`, the colex-least m-subset.
    pub fn initial(m: u32) -> Self {
        assert!(m <= MAX_GROUND);
        Subset(low_mask(m))
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: u32) -> bool {
        (1..=MAX_GROUND).contains(&element) && self.0 & (1 << (element - 1)) != 0
    }

    pub fn with(self, element: u32) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&element));
        Subset(self.0 | 1 << (element - 1))
    }

    pub fn without(self, element: u32) -> Self {
        debug_assert!((1..=MAX_GROUND).contains(&element));
        Subset(self.0 & !(1 << (element - 1)))
    }

    /// Largest element, or `None` for the empty set.
    pub fn max_element(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// True when every element lies in `[1, n]`.
    pub fn fits(self, n: u32) -> bool {
        self.0 & !low_mask(n) == 0
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }
}

impl From<Subset> for Vec<u32> {
    fn from(s: Subset) -> Self {
        s.elements().collect()
    }
}

impl TryFrom<Vec<u32>> for Subset {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Subset::from_elements(v)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

pub(crate) const fn low_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn check_ground(n: u32) -> Result<()> {
    if n > MAX_GROUND {
        Err(Error::GroundTooLarge(n as u64))
    } else {
        Ok(())
    }
}

/// Next word with the same popcount (Gosper's hack), i.e. the colex successor.
pub(crate) fn next_same_weight(x: u64) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some((((r ^ x) >> 2) / c) | r)
}

/// All m-subsets of `[n]` in colex order.
pub fn level(n: u32, m: u32) -> impl Iterator<Item = Subset> {
    let bound = low_mask(n.min(MAX_GROUND));
    let first = (m <= n && m <= MAX_GROUND).then(|| low_mask(m));
    std::iter::successors(first, move |&x| {
        if x == 0 {
            None
        } else {
            next_same_weight(x).filter(|&y| y & !bound == 0)
        }
    })
    .map(Subset)
}

// Pascal triangle up to row 64; C(64, 32) < 2^64.
fn pascal() -> &'static [[u64; 65]; 65] {
    static TABLE: OnceLock<Box<[[u64; 65]; 65]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; 65]; 65]);
        for a in 0..65 {
            t[a][0] = 1;
            for b in 1..=a {
                t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
            }
        }
        t
    })
}

/// `C(a, b)` from a precomputed table. Panics for `a > 64`.
pub(crate) fn choose(a: u32, b: u32) -> u64 {
    if b > a {
        0
    } else {
        pascal()[a as usize][b as usize]
    }
}

/// Exact binomial coefficient; `C(a, b) = 0` when `b < 0` or `b > a`.
pub fn binom(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Fixed-width `C(a, b)`, or `None` on overflow.
pub fn binom_u64(a: u64, b: u64) -> Option<u64> {
    if b > a {
        return Some(0);
    }
    if a <= 64 {
        return Some(choose(a as u32, b as u32));
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1)
        acc = acc.checked_mul((a - i) as u128)? / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Compares two subsets of equal size in colex order: `x < y` iff the
/// largest element of the symmetric difference belongs to `y`.
pub fn colex_compare(x: Subset, y: Subset) -> Result<Ordering> {
    if x.len() != y.len() {
        return Err(Error::LevelMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(x.0.cmp(&y.0))
}

/// Position of `x` among the `|x|`-subsets in colex order, starting at 0.
/// Independent of the ground set size.
pub fn colex_rank(x: Subset) -> u64 {
    x.elements()
        .enumerate()
        .map(|(j, a)| choose(a - 1, j as u32 + 1))
        .sum()
}

/// Inverse of [`colex_rank`].
pub fn colex_unrank(rank: u64, m: u32) -> Result<Subset> {
    if m > MAX_GROUND {
        return Err(Error::GroundTooLarge(m as u64));
    }
    if rank >= choose(MAX_GROUND, m) {
        return Err(invalid(format!(
            "rank {rank} is not representable for {m}-subsets of a 64-element ground set"
        )));
    }
    let mut rem = rank;
    let mut bits = 0u64;
    for j in (1..=m).rev() {
        let mut c = j - 1;
        while c + 1 < MAX_GROUND && choose(c + 1, j) <= rem {
            c += 1;
        }
        rem -= choose(c, j);
        bits |= 1 << c;
    }
    Ok(Subset(bits))
}

/// The first `k` m-subsets in colex order, as a family on the smallest
/// ground set that contains them.
pub fn initial_segment(k: u64, m: u32) -> Result<Family> {
    if k == 0 {
        return Err(invalid("initial segment length must be positive"));
    }
    if m > MAX_GROUND || k > choose(MAX_GROUND, m) {
        return Err(invalid(format!(
            "segment of length {k} at level {m} does not fit a 64-element ground set"
        )));
    }
    let members: Vec<Subset> = level(MAX_GROUND, m).take(k as usize).collect();
    let n = members
        .last()
        .and_then(|s| s.max_element())
        .unwrap_or(0)
        .max(m);
    Ok(Family::from_sorted(n, m, members))
}

/// One term `C(top, bottom)` of a cascade representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepTerm {
    pub top: u64,
    pub bottom: u32,
}

/// `k = C(k_0, m) + C(k_1, m-1) + … + C(k_r, m-r)` with
/// `k_0 > k_1 > … > k_r >= m - r > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialRep {
    m: u32,
    terms: Vec<RepTerm>,
}

impl BinomialRep {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn terms(&self) -> &[RepTerm] {
        &self.terms
    }

    /// Number of terms, `r + 1`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Index of the last term.
    pub fn r(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn k0(&self) -> u64 {
        self.terms[0].top
    }

    /// `k_r`, the top of the last term.
    pub fn last_top(&self) -> u64 {
        self.terms[self.terms.len() - 1].top
    }

    pub fn tops(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.iter().map(|t| t.top)
    }

    /// The represented integer.
    pub fn value(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| binom_u64(t.top, t.bottom as u64).expect("term fits by construction"))
            .sum()
    }
}

impl fmt::Display for BinomialRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "C({},{})", t.top, t.bottom)?;
        }
        Ok(())
    }
}

// Largest a with C(a, j) <= rem, for rem >= 1 and j >= 1.
fn largest_top(rem: u64, j: u32) -> u64 {
    if j == 1 {
        return rem;
    }
    let fits = |a: u64| binom_u64(a, j as u64).is_some_and(|v| v <= rem);
    let mut lo = j as u64;
    let mut hi = lo + 1;
    while fits(hi) {
        lo = hi;
        hi = hi.saturating_mul(2);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// The greedy cascade representation of `k` at level `m`.
pub fn binomial_representation(k: u64, m: u32) -> Result<BinomialRep> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    if m == 0 {
        return Err(invalid("level m must be positive"));
    }
    let mut terms = Vec::new();
    let mut rem = k;
    let mut j = m;
    while rem > 0 {
        let top = largest_top(rem, j);
        rem -= binom_u64(top, j as u64).expect("checked in largest_top");
        terms.push(RepTerm { top, bottom: j });
        j -= 1;
    }
    Ok(BinomialRep { m, terms })
}

/// True when the representation of `k` has exactly `m` terms.
pub fn is_critical(k: u64, m: u32) -> Result<bool> {
    Ok(binomial_representation(k, m)?.len() == m as usize)
}

/// The blocks `I_0, …, I_r` of the initial segment of length `k`, built
/// directly from the representation: `I_0` is every m-subset of `[k_0]`, and
/// `I_j` adjoins `{k_0 + 1, …, k_{j-1} + 1}` to every (m-j)-subset of `[k_j]`.
pub fn segment_blocks(k: u64, m: u32) -> Result<Vec<Family>> {
    let rep = binomial_representation(k, m)?;
    let n = (rep.k0() + u64::from(rep.len() > 1)).max(m as u64);
    if n > MAX_GROUND as u64 {
        return Err(Error::GroundTooLarge(n));
    }
    let n = n as u32;
    let mut prefix = Subset::EMPTY;
    let mut blocks = Vec::with_capacity(rep.len());
    for (i, term) in rep.terms().iter().enumerate() {
        let members = level(term.top as u32, term.bottom)
            .map(|a| a.union(prefix))
            .collect();
        blocks.push(Family::from_sorted(n, m, members));
        if i + 1 < rep.len() {
            prefix = prefix.with(term.top as u32 + 1);
        }
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[u32]) -> Subset {
        Subset::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn binom_values() {
        assert_eq!(binom(5, 3), BigUint::from(10u32));
        assert_eq!(binom(4, 0), BigUint::from(1u32));
        assert_eq!(binom(3, 5), BigUint::zero());
        assert_eq!(binom(3, -1), BigUint::zero());
        assert_eq!(binom_u64(64, 32), Some(1_832_624_140_942_590_534));
        assert_eq!(binom_u64(100, 50), None);
        assert_eq!(binom(100, 50).to_string(), "100891344545564193334812497256");
        for a in 0..80u64 {
            for b in 0..=a {
                if let Some(v) = binom_u64(a, b) {
                    assert_eq!(BigUint::from(v), binom(a, b as i64));
                }
            }
        }
    }

    #[test]
    fn colex_compare_examples() {
        assert_eq!(
            colex_compare(s(&[1, 2]), s(&[1, 3])).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            colex_compare(s(&[2, 3]), s(&[1, 4])).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            colex_compare(s(&[1, 3, 5]), s(&[1, 3, 5])).unwrap(),
            Ordering::Equal
        );
        assert!(colex_compare(s(&[1]), s(&[1, 2])).is_err());
    }

    // Brute-force colex listing straight from the symmetric-difference
    // definition, independent of the bitmask encoding.
    fn colex_listing(n: u32, m: u32) -> Vec<Vec<u32>> {
        fn combos(n: u32, m: u32, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == m as usize {
                out.push(cur.clone());
                return;
            }
            for e in start..=n {
                cur.push(e);
                combos(n, m, e + 1, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        combos(n, m, 1, &mut Vec::new(), &mut all);
        all.sort_by(|x, y| {
            let max_diff = x
                .iter()
                .filter(|e| !y.contains(e))
                .chain(y.iter().filter(|e| !x.contains(e)))
                .max()
                .copied();
            match max_diff {
                None => Ordering::Equal,
                Some(d) if y.contains(&d) => Ordering::Less,
                Some(_) => Ordering::Greater,
            }
        });
        all
    }

    #[test]
    fn rank_matches_brute_force_listing() {
        let listing = colex_listing(5, 3);
        assert_eq!(listing[0], vec![1, 2, 3]);
        assert_eq!(listing[1], vec![1, 2, 4]);
        assert_eq!(colex_rank(s(&[1, 2, 4])), 1);
        for n in 1..=8 {
            for m in 0..=n {
                for (i, x) in colex_listing(n, m).iter().enumerate() {
                    let x = s(x);
                    assert_eq!(colex_rank(x), i as u64);
                    assert_eq!(colex_unrank(i as u64, m).unwrap(), x);
                }
            }
        }
        assert_eq!(colex_rank(Subset::initial(6)), 0);
    }

    #[test]
    fn unrank_rejects_unrepresentable() {
        assert!(colex_unrank(choose(64, 3), 3).is_err());
        assert_eq!(
            colex_unrank(choose(64, 3) - 1, 3).unwrap(),
            s(&[62, 63, 64])
        );
    }

    #[test]
    fn level_enumerates_in_colex() {
        let all: Vec<_> = level(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(level(4, 0).collect::<Vec<_>>(), vec![Subset::EMPTY]);
        assert_eq!(level(3, 4).count(), 0);
        assert_eq!(level(64, 63).count(), 64);
        assert_eq!(level(64, 64).count(), 1);
    }

    #[test]
    fn initial_segment_examples() {
        let one = initial_segment(1, 4).unwrap();
        assert_eq!(one.members(), &[Subset::initial(4)]);
        let ten = initial_segment(10, 3).unwrap();
        assert_eq!(ten.members(), level(5, 3).collect::<Vec<_>>().as_slice());
        assert_eq!(ten.n(), 5);
        let five = initial_segment(5, 3).unwrap();
        let mut expected: Vec<_> = level(4, 3).collect();
        expected.push(s(&[1, 2, 5]));
        assert_eq!(five.members(), expected.as_slice());
        assert!(initial_segment(0, 3).is_err());
    }

    #[test]
    fn representation_examples() {
        let r = binomial_representation(10, 3).unwrap();
        assert_eq!(r.terms(), &[RepTerm { top: 5, bottom: 3 }]);
        let r = binomial_representation(40, 3).unwrap();
        assert_eq!(
            r.tops().collect::<Vec<_>>(),
            vec![7, 3, 2],
            "35 + 3 + 2 = 40"
        );
        assert_eq!(r.to_string(), "C(7,3) + C(3,2) + C(2,1)");
        let r = binomial_representation(1, 5).unwrap();
        assert_eq!(r.terms(), &[RepTerm { top: 5, bottom: 5 }]);
        assert!(binomial_representation(0, 3).is_err());
        assert!(binomial_representation(3, 0).is_err());
    }

    #[test]
    fn representation_of_huge_values() {
        let k = u64::MAX / 3;
        for m in 1..=6 {
            assert_eq!(binomial_representation(k, m).unwrap().value(), k);
        }
    }

    #[test]
    fn critical_examples() {
        assert!(is_critical(40, 3).unwrap());
        assert!(!is_critical(10, 3).unwrap());
        assert!(is_critical(4, 2).unwrap());
    }

    #[test]
    fn representation_invariants_exhaustive() {
        for m in 1..=6u32 {
            for k in 1..=5000u64 {
                let rep = binomial_representation(k, m).unwrap();
                assert_eq!(rep.value(), k);
                assert!(rep.len() <= m as usize);
                assert!(rep.terms().windows(2).all(|w| w[0].top > w[1].top));
                let r = rep.r() as u64;
                assert!(rep.last_top() >= m as u64 - r && m as u64 - r > 0);
                for (i, t) in rep.terms().iter().enumerate() {
                    assert_eq!(t.bottom, m - i as u32);
                }
            }
        }
    }

    #[test]
    fn blocks_partition_the_segment() {
        for m in 1..=5u32 {
            for k in 1..=300u64.min(binom_u64(20, m as u64).unwrap()) {
                let seg = initial_segment(k, m).unwrap();
                let rep = binomial_representation(k, m).unwrap();
                let blocks = segment_blocks(k, m).unwrap();
                let mut all: Vec<Subset> = Vec::new();
                for (b, t) in blocks.iter().zip(rep.terms()) {
                    assert_eq!(b.len() as u64, binom_u64(t.top, t.bottom as u64).unwrap());
                    all.extend(b.members());
                }
                all.sort();
                assert_eq!(all.as_slice(), seg.members(), "k={k} m={m}");
            }
        }
    }
}
