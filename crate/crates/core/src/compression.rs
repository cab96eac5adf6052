//! The ij-shift and the compression loop built on it.
//!
//! `shift(S, i, j)` replaces `i` by `j` in every member that contains `i` but
//! not `j`, unless the result is already in `S`. Shifting towards smaller
//! labels (`i > j`) never grows the ball of a family and strictly lowers its
//! weight whenever it moves anything, so repeated sweeps reach a family that
//! every such shift fixes. Those fixed families are exactly the down-sets of
//! the order generated by the elementary moves `a -> a - 1`; the solver
//! searches over them.

use crate::combinatorics::Subset;
use crate::error::{invalid, Error, Result};
use crate::johnson::Family;

/// The ij-shift of a family.
pub fn shift(s: &Family, i: u32, j: u32) -> Result<Family> {
    if i == j {
        return Err(invalid("shift needs two distinct elements"));
    }
    for e in [i, j] {
        if e == 0 || e > s.n() {
            return Err(Error::ElementOutOfRange {
                element: e,
                n: s.n(),
            });
        }
    }
    Ok(shift_unchecked(s, i, j))
}

pub(crate) fn shift_unchecked(s: &Family, i: u32, j: u32) -> Family {
    let mut out: Vec<Subset> = s
        .iter()
        .map(|x| {
            if x.contains(i) && !x.contains(j) {
                let y = x.without(i).with(j);
                if !s.contains(y) {
                    return y;
                }
            }
            x
        })
        .collect();
    out.sort_unstable();
    // The shift is injective, so no dedup is needed.
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
    Family::from_sorted(s.n(), s.m(), out)
}

/// True when every shift with `i > j` fixes the family.
pub fn is_compressed(s: &Family) -> bool {
    s.iter().all(|x| {
        x.elements().all(|i| {
            (1..i)
                .filter(|&j| !x.contains(j))
                .all(|j| s.contains(x.without(i).with(j)))
        })
    })
}

/// Applies shifts with `i > j`, sweeping pairs in lexicographic order of
/// `(j, i)`, until a whole sweep changes nothing.
pub fn compress(s: &Family) -> Family {
    let mut cur = s.clone();
    let n = s.n();
    loop {
        let mut changed = false;
        for j in 1..=n {
            for i in j + 1..=n {
                let next = shift_unchecked(&cur, i, j);
                if next != cur {
                    changed = true;
                    cur = next;
                }
            }
        }
        if !changed {
            return cur;
        }
    }
}

/// The largest element used by a compressed family. Any compressed family
/// with a member containing `n_0` also contains every shift of that member
/// moving `n_0` onto a free smaller label, which forces `n_0 <= m + k + 1`.
pub fn support_bound(s: &Family) -> Result<u32> {
    if !is_compressed(s) {
        return Err(Error::NotCompressed);
    }
    let n0 = s.support_max();
    assert!(
        n0 as u64 <= s.m() as u64 + s.len() as u64 + 1,
        "compressed family with support {n0} exceeds m + k + 1"
    );
    Ok(n0)
}

/// Members covered by `x` in the shift order: one element `a` moved to
/// `a - 1` when that label is free.
pub fn lower_covers(x: Subset) -> impl Iterator<Item = Subset> {
    x.elements()
        .filter(move |&a| a > 1 && !x.contains(a - 1))
        .map(move |a| x.without(a).with(a - 1))
}

/// Members covering `x` in the shift order inside `[n]`.
pub fn upper_covers(x: Subset, n: u32) -> impl Iterator<Item = Subset> {
    x.elements()
        .filter(move |&a| a < n && !x.contains(a + 1))
        .map(move |a| x.without(a).with(a + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{binom_u64, initial_segment, level};
    use crate::johnson::{ball, boundary, family_weight};

    fn s(e: &[u32]) -> Subset {
        Subset::from_elements(e.iter().copied()).unwrap()
    }

    fn fam(n: u32, m: u32, sets: &[&[u32]]) -> Family {
        Family::new(n, m, sets.iter().map(|e| s(e))).unwrap()
    }

    #[test]
    fn shift_examples() {
        let f = fam(4, 2, &[&[3, 4]]);
        assert_eq!(shift(&f, 3, 1).unwrap(), fam(4, 2, &[&[1, 4]]));
        let both = fam(4, 2, &[&[3, 4], &[1, 4]]);
        assert_eq!(shift(&both, 3, 1).unwrap(), both);
        assert!(shift(&f, 2, 2).is_err());
        assert!(shift(&f, 5, 1).is_err());
    }

    #[test]
    fn compressed_examples() {
        assert!(!is_compressed(&fam(4, 2, &[&[2, 3]])));
        for n in 2..=8 {
            for m in 1..n {
                assert!(is_compressed(&Family::full_level(n, m).unwrap()));
            }
        }
        for m in 1..=5 {
            for k in 1..=120u64.min(binom_u64(12, m as u64).unwrap()) {
                assert!(
                    is_compressed(&initial_segment(k, m).unwrap()),
                    "k={k} m={m}"
                );
            }
        }
    }

    #[test]
    fn compress_examples() {
        let f = fam(4, 2, &[&[2, 3]]);
        assert_eq!(compress(&f), fam(4, 2, &[&[1, 2]]));
        for m in 1..=4 {
            for k in 1..=60 {
                let seg = initial_segment(k, m).unwrap();
                assert_eq!(compress(&seg), seg);
            }
        }
    }

    #[test]
    fn support_bound_examples() {
        let seg = initial_segment(10, 3).unwrap();
        assert_eq!(support_bound(&seg).unwrap(), 5);
        assert_eq!(support_bound(&fam(6, 3, &[&[1, 2, 3]])).unwrap(), 3);
        let three = compress(&fam(9, 2, &[&[5, 9], &[2, 7], &[1, 8]]));
        assert!(support_bound(&three).unwrap() <= 6);
        assert!(matches!(
            support_bound(&fam(4, 2, &[&[2, 3]])),
            Err(Error::NotCompressed)
        ));
    }

    // Compressed families are down-sets for the elementary moves.
    #[test]
    fn compressed_iff_closed_under_lower_covers() {
        for (n, m) in [(5, 2), (5, 3), (6, 2), (4, 2)] {
            let all: Vec<Subset> = level(n, m).collect();
            for mask in 1u64..(1 << all.len()) {
                let members = (0..all.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| all[i])
                    .collect();
                let f = Family::from_sorted(n, m, members);
                let closed = f.iter().all(|x| lower_covers(x).all(|y| f.contains(y)));
                assert_eq!(closed, is_compressed(&f));
            }
        }
    }

    #[test]
    fn shift_properties_exhaustive_j52() {
        let all: Vec<Subset> = level(5, 2).collect();
        for mask in 1u64..(1 << all.len()) {
            let members = (0..all.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            let f = Family::from_sorted(5, 2, members);
            let bf = ball(&f).unwrap();
            for i in 1..=5 {
                for j in 1..=5 {
                    if i == j {
                        continue;
                    }
                    let t = shift(&f, i, j).unwrap();
                    assert_eq!(t.len(), f.len());
                    let bt = ball(&t).unwrap();
                    assert!(bt.is_subset_of(&shift(&bf, i, j).unwrap()));
                    assert!(boundary(&t).unwrap().len() <= boundary(&f).unwrap().len());
                    if i > j {
                        let (wt, wf) = (family_weight(&t), family_weight(&f));
                        assert!(wt <= wf);
                        assert_eq!(wt == wf, t == f);
                    }
                }
            }
        }
    }
}
