//! Revolving-door enumeration of the t-combinations of `{0, …, n-1}`: each
//! successor differs from its predecessor by one element leaving and one
//! entering, which lets the exhaustive search update ball sizes in
//! `O(degree)` per step.

/// One revolving-door step: `out` left the combination, `enter` joined it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Swap {
    pub out: usize,
    pub enter: usize,
}

/// Knuth's Algorithm R (TAOCP 7.2.1.3).
#[derive(Clone, Debug)]
pub struct RevolvingDoor {
    // c[1..=t] ascending, c[t + 1] = n as a sentinel; c[0] unused.
    c: Vec<usize>,
    t: usize,
    done: bool,
}

impl RevolvingDoor {
    /// Starts at `{0, …, t-1}`. Requires `1 <= t <= n`.
    pub fn new(n: usize, t: usize) -> Self {
        assert!(t >= 1 && t <= n, "need 1 <= t <= n");
        let mut c: Vec<usize> = std::iter::once(0).chain(0..t).collect();
        c.push(n);
        RevolvingDoor { c, t, done: false }
    }

    /// The current combination, ascending.
    pub fn current(&self) -> &[usize] {
        &self.c[1..=self.t]
    }

    /// Moves to the next combination and reports the swap, or `None` once
    /// every combination has been visited.
    pub fn advance(&mut self) -> Option<Swap> {
        if self.done {
            return None;
        }
        let t = self.t;
        let c = &mut self.c;
        // R3
        if t % 2 == 1 {
            if c[1] + 1 < c[2] {
                let out = c[1];
                c[1] += 1;
                return Some(Swap { out, enter: c[1] });
            }
        } else if c[1] > 0 {
            let out = c[1];
            c[1] -= 1;
            return Some(Swap { out, enter: c[1] });
        }
        let mut j = 2;
        let mut try_decrease = t % 2 == 1;
        loop {
            if j > t {
                self.done = true;
                return None;
            }
            if try_decrease {
                // R4: here c[j] = c[j-1] + 1
                if c[j] >= j {
                    let out = c[j];
                    c[j] = c[j - 1];
                    c[j - 1] = j - 2;
                    return Some(Swap { out, enter: j - 2 });
                }
                j += 1;
            } else {
                // R5: here c[j-1] = j - 2
                if c[j] + 1 < c[j + 1] {
                    let out = j - 2;
                    c[j - 1] = c[j];
                    c[j] += 1;
                    return Some(Swap { out, enter: c[j] });
                }
                j += 1;
            }
            try_decrease = !try_decrease;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binom_u64;
    use std::collections::HashSet;

    #[test]
    fn visits_every_combination_once_with_single_swaps() {
        for n in 1..=10 {
            for t in 1..=n {
                let mut rd = RevolvingDoor::new(n, t);
                let mut seen = HashSet::new();
                let mut cur: Vec<usize> = rd.current().to_vec();
                seen.insert(cur.clone());
                while let Some(sw) = rd.advance() {
                    let next = rd.current().to_vec();
                    assert!(next.windows(2).all(|w| w[0] < w[1]));
                    assert!(*next.last().unwrap() < n);
                    let left: Vec<_> = cur.iter().filter(|x| !next.contains(x)).copied().collect();
                    let came: Vec<_> = next.iter().filter(|x| !cur.contains(x)).copied().collect();
                    assert_eq!(left, vec![sw.out], "n={n} t={t}");
                    assert_eq!(came, vec![sw.enter], "n={n} t={t}");
                    assert!(seen.insert(next.clone()), "repeat n={n} t={t}");
                    cur = next;
                }
                assert_eq!(
                    seen.len() as u64,
                    binom_u64(n as u64, t as u64).unwrap(),
                    "n={n} t={t}"
                );
            }
        }
    }
}
