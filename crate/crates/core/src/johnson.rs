//! Families of m-subsets viewed as vertex sets of the Johnson graph `J(n, m)`.
//!
//! Nothing here materializes the graph. Two m-subsets are adjacent when one
//! is obtained from the other by swapping a single element, so boundaries,
//! balls and shadows are all computed member by member from bit swaps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{check_ground, choose, colex_rank, level, Subset};
use crate::error::{Error, Result};

/// A deduplicated, colex-sorted family of m-subsets of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Family {
    n: u32,
    m: u32,
    members: Vec<Subset>,
}

impl Family {
    /// Validates, sorts and deduplicates.
    pub fn new<I: IntoIterator<Item = Subset>>(n: u32, m: u32, members: I) -> Result<Self> {
        check_ground(n)?;
        let mut members: Vec<Subset> = members.into_iter().collect();
        for &x in &members {
            if x.len() != m {
                return Err(Error::LevelMismatch {
                    expected: m,
                    found: x.len(),
                });
            }
            if !x.fits(n) {
                return Err(Error::ElementOutOfRange {
                    element: x.max_element().unwrap_or(0),
                    n,
                });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(Family { n, m, members })
    }

    /// Caller guarantees sorted, distinct, level-`m` members inside `[n]`.
    pub(crate) fn from_sorted(n: u32, m: u32, members: Vec<Subset>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|x| x.len() == m && x.fits(n)));
        Family { n, m, members }
    }

    pub(crate) fn from_unsorted(n: u32, m: u32, mut members: Vec<Subset>) -> Self {
        members.sort_unstable();
        members.dedup();
        Family::from_sorted(n, m, members)
    }

    /// Every vertex of `J(n, m)`.
    pub fn full_level(n: u32, m: u32) -> Result<Self> {
        check_ground(n)?;
        Ok(Family::from_sorted(n, m, level(n, m).collect()))
    }

    pub fn empty(n: u32, m: u32) -> Self {
        Family {
            n,
            m,
            members: Vec::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Subset> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, x: Subset) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Union of all members.
    pub fn support(&self) -> Subset {
        self.members
            .iter()
            .fold(Subset::EMPTY, |acc, &x| acc.union(x))
    }

    /// Largest element used by any member (0 for an empty family).
    pub fn support_max(&self) -> u32 {
        self.members
            .last()
            .and_then(|x| x.max_element())
            .unwrap_or(0)
    }

    /// The same family regarded inside a different ground set `[n]`.
    pub fn with_ground(&self, n: u32) -> Result<Self> {
        check_ground(n)?;
        if self.support_max() > n {
            return Err(Error::ElementOutOfRange {
                element: self.support_max(),
                n,
            });
        }
        Ok(Family {
            n,
            m: self.m,
            members: self.members.clone(),
        })
    }

    pub fn is_subset_of(&self, other: &Family) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        self.same_space(other)?;
        Ok(Family::from_sorted(
            self.n,
            self.m,
            merge_union(&self.members, &other.members),
        ))
    }

    pub fn difference(&self, other: &Family) -> Result<Family> {
        self.same_space(other)?;
        Ok(Family::from_sorted(
            self.n,
            self.m,
            merge_difference(&self.members, &other.members),
        ))
    }

    fn same_space(&self, other: &Family) -> Result<()> {
        if self.m != other.m {
            return Err(Error::LevelMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        if self.n != other.n {
            return Err(Error::GroundMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn require_graph(&self) -> Result<()> {
        require_graph(self.n, self.m)
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J({},{})", self.n, self.m)?;
        f.debug_set().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a Subset;
    type IntoIter = std::slice::Iter<'a, Subset>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

fn require_graph(n: u32, m: u32) -> Result<()> {
    if m == 0 || m >= n {
        return Err(Error::InvalidArgument(format!(
            "J({n},{m}) needs 0 < m < n for adjacency to be defined"
        )));
    }
    check_ground(n)
}

pub(crate) fn merge_union(a: &[Subset], b: &[Subset]) -> Vec<Subset> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub(crate) fn merge_difference(a: &[Subset], b: &[Subset]) -> Vec<Subset> {
    let mut out = Vec::with_capacity(a.len());
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            out.push(x);
        }
    }
    out
}

/// Calls `visit` on every neighbor of `x` in `J(n, |x|)`.
#[inline]
pub(crate) fn for_each_neighbor(x: Subset, n: u32, mut visit: impl FnMut(Subset)) {
    let bits = x.bits();
    let outside = !bits & crate::combinatorics::low_mask(n);
    let mut ins = bits;
    while ins != 0 {
        let i = ins & ins.wrapping_neg();
        ins ^= i;
        let mut outs = outside;
        while outs != 0 {
            let j = outs & outs.wrapping_neg();
            outs ^= j;
            visit(Subset::from_bits(bits ^ i ^ j));
        }
    }
}

/// The `m(n - m)` neighbors of `x` in `J(n, m)`.
pub fn neighbors(x: Subset, n: u32) -> Result<Family> {
    let m = x.len();
    require_graph(n, m)?;
    if !x.fits(n) {
        return Err(Error::ElementOutOfRange {
            element: x.max_element().unwrap_or(0),
            n,
        });
    }
    let mut out = Vec::with_capacity((m * (n - m)) as usize);
    for_each_neighbor(x, n, |y| out.push(y));
    Ok(Family::from_unsorted(n, m, out))
}

/// Families whose level has at most this many vertices use a presence
/// bitmap indexed by colex rank; larger ones sort and merge.
pub const BITMAP_LIMIT: u64 = 1 << 24;

/// Vertices outside `S` adjacent to some member of `S`.
pub fn boundary(s: &Family) -> Result<Family> {
    if s.is_empty() {
        return Err(Error::EmptyFamily);
    }
    s.require_graph()?;
    let vertices = choose(s.n, s.m);
    Ok(if vertices <= BITMAP_LIMIT {
        boundary_bitmap(s, vertices)
    } else {
        boundary_sorted(s)
    })
}

pub(crate) fn boundary_bitmap(s: &Family, vertices: u64) -> Family {
    let mut seen = vec![0u64; vertices.div_ceil(64) as usize];
    let mark = |seen: &mut [u64], x: Subset| -> bool {
        let r = colex_rank(x) as usize;
        let (w, b) = (r / 64, 1u64 << (r % 64));
        let fresh = seen[w] & b == 0;
        seen[w] |= b;
        fresh
    };
    for &x in &s.members {
        mark(&mut seen, x);
    }
    let mut out = Vec::new();
    for &x in &s.members {
        for_each_neighbor(x, s.n, |y| {
            if mark(&mut seen, y) {
                out.push(y);
            }
        });
    }
    out.sort_unstable();
    Family::from_sorted(s.n, s.m, out)
}

pub(crate) fn boundary_sorted(s: &Family) -> Family {
    let mut all = Vec::with_capacity(s.len() * (s.m * (s.n - s.m)) as usize);
    for &x in &s.members {
        for_each_neighbor(x, s.n, |y| all.push(y));
    }
    all.sort_unstable();
    all.dedup();
    Family::from_sorted(s.n, s.m, merge_difference(&all, &s.members))
}

/// `S` together with its boundary.
pub fn ball(s: &Family) -> Result<Family> {
    let b = boundary(s)?;
    Ok(Family::from_sorted(
        s.n,
        s.m,
        merge_union(&s.members, &b.members),
    ))
}

/// `(m-1)`-subsets contained in some member.
pub fn lower_shadow(s: &Family) -> Result<Family> {
    if s.m == 0 {
        return Err(Error::InvalidArgument("level 0 has no lower shadow".into()));
    }
    let mut out = Vec::with_capacity(s.len() * s.m as usize);
    for &x in &s.members {
        out.extend(x.elements().map(|e| x.without(e)));
    }
    Ok(Family::from_unsorted(s.n, s.m - 1, out))
}

/// `(m+1)`-subsets of `[n]` containing some member.
pub fn upper_shadow(s: &Family) -> Result<Family> {
    if s.m >= s.n {
        return Err(Error::InvalidArgument(format!(
            "level {} of [{}] has no upper shadow",
            s.m, s.n
        )));
    }
    let mut out = Vec::with_capacity(s.len() * (s.n - s.m) as usize);
    for &x in &s.members {
        out.extend((1..=s.n).filter(|&e| !x.contains(e)).map(|e| x.with(e)));
    }
    Ok(Family::from_unsorted(s.n, s.m + 1, out))
}

/// The ball computed as the upper shadow of the lower shadow.
pub fn ball_via_shadows(s: &Family) -> Result<Family> {
    s.require_graph()?;
    if s.is_empty() {
        return Err(Error::EmptyFamily);
    }
    upper_shadow(&lower_shadow(s)?)
}

/// The ball computed as the lower shadow of the upper shadow.
pub fn ball_via_upper_shadow(s: &Family) -> Result<Family> {
    s.require_graph()?;
    if s.is_empty() {
        return Err(Error::EmptyFamily);
    }
    lower_shadow(&upper_shadow(s)?)
}

/// Sum of element labels.
pub fn weight(x: Subset) -> u64 {
    x.elements().map(u64::from).sum()
}

pub fn family_weight(s: &Family) -> u64 {
    s.iter().map(weight).sum()
}

/// Vertices at distance exactly two from `S`: the boundary of its ball.
pub fn distance_two_set(s: &Family) -> Result<Family> {
    let b = ball(s)?;
    boundary(&b)
}

/// `|B(S)|` in `J(n, m)` for `m <= n`, treating `J(m, m)` as a single
/// isolated vertex.
pub(crate) fn ball_size_allowing_trivial(s: &Family) -> Result<usize> {
    if s.m == s.n {
        return Ok(s.len());
    }
    Ok(ball(s)?.len())
}
