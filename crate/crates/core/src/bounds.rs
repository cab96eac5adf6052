//! Closed forms: the boundary size of colex initial segments, the bound for
//! critical cardinalities, the λ-sequence and the cardinalities
//! `g(t, m) = C(t, m) + 3 C(t, m-1)` at which a ball beats the colex segment.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::combinatorics::{
    binom, binom_u64, binomial_representation, check_ground, initial_segment, is_critical, level,
};
use crate::error::{invalid, Error, Result};
use crate::johnson::{ball, ball_size_allowing_trivial, boundary, lower_shadow, Family};

/// Boundary size of the colex initial segment of length `k` in `J(n, m)`.
///
/// With `k = C(k_0, m) + … + C(k_r, m-r)` this is
/// `C(k_0, m-1)(n - k_0) + Σ_{i>=1} [C(k_i, m-i-1)(n - k_0 - 1) - C(k_i, m-i)]`.
/// `k = 0` is accepted and gives 0.
pub fn f_bound(k: u64, n: u32, m: u32) -> Result<u64> {
    check_ground(n)?;
    if m == 0 || m > n {
        return Err(invalid(format!("level {m} is not in [1, {n}]")));
    }
    let total = binom_u64(n as u64, m as u64).expect("n <= 64");
    if k > total {
        return Err(invalid(format!("k = {k} exceeds C({n},{m}) = {total}")));
    }
    if k == 0 {
        return Ok(0);
    }
    let rep = binomial_representation(k, m)?;
    let c = |a: u64, b: i64| -> i128 {
        if b < 0 {
            0
        } else {
            binom_u64(a, b as u64).expect("a <= 64") as i128
        }
    };
    let n = n as i128;
    let k0 = rep.k0() as i128;
    let mut value = c(rep.k0(), m as i64 - 1) * (n - k0);
    for t in &rep.terms()[1..] {
        value += c(t.top, t.bottom as i64 - 1) * (n - k0 - 1) - c(t.top, t.bottom as i64);
    }
    debug_assert!(value >= 0);
    Ok(value as u64)
}

/// `f(k - k_r, n, m) + k_r` for a critical `k`.
pub fn mu_upper_critical(k: u64, n: u32, m: u32) -> Result<u64> {
    if !is_critical(k, m)? {
        return Err(Error::NotCritical { k, m });
    }
    let kr = binomial_representation(k, m)?.last_top();
    Ok(f_bound(k - kr, n, m)? + kr)
}

/// Prefix `λ_0, λ_1, …` of the λ-sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaSeq {
    #[serde(serialize_with = "decimal_strings")]
    values: Vec<BigInt>,
}

fn decimal_strings<S: Serializer>(values: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

impl LambdaSeq {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&BigInt> {
        self.values.get(i)
    }

    /// Checks `g(t, m) = Σ_{i<m} C(t - λ_i, m - i) + 1` with polynomial
    /// binomials, so tops below the bottom (including negative ones) follow
    /// `C(x, j) = x(x-1)…(x-j+1)/j!`. `None` if the prefix is shorter than `m`.
    pub fn identity_holds(&self, t: i64, m: u32) -> Option<bool> {
        if m == 0 || self.values.len() < m as usize {
            return None;
        }
        let t = BigInt::from(t);
        let rhs: BigInt = (0..m as usize)
            .map(|i| poly_binom(&(&t - &self.values[i]), m - i as u32))
            .sum::<BigInt>()
            + 1;
        let g = poly_binom(&t, m) + 3 * poly_binom(&t, m - 1);
        Some(g == rhs)
    }

    /// The tops the representation of `g(t, m)` should have: `t - λ_i`,
    /// with the trailing `+ 1` absorbed into the last (bottom-1) term.
    pub fn expected_tops(&self, t: u64, m: u32) -> Option<Vec<BigInt>> {
        (m >= 1 && self.values.len() >= m as usize).then(|| {
            let mut tops: Vec<BigInt> = (0..m as usize)
                .map(|i| BigInt::from(t) - &self.values[i])
                .collect();
            *tops.last_mut().expect("m >= 1") += 1;
            tops
        })
    }
}

/// `x(x-1)…(x-j+1) / j!` for any integer `x`.
fn poly_binom(x: &BigInt, j: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j {
        acc *= x - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `C(a, j)` for a nonnegative arbitrary-precision top.
fn binom_big(a: &BigUint, j: u32) -> BigUint {
    if *a < BigUint::from(j) {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..j {
        acc *= a - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// The first `count` terms: `λ_0 = -2`, `λ_1 = 2`, then
/// `λ_{m-1} = Σ_{j=2}^{m-1} (-1)^j C(λ_{m-j} + j - 1, j) + 1`.
pub fn lambda_sequence(count: usize) -> LambdaSeq {
    let mut values: Vec<BigInt> = vec![BigInt::from(-2), BigInt::from(2)];
    values.truncate(count);
    while values.len() < count {
        let idx = values.len(); // computing λ_idx, i.e. m = idx + 1
        let mut acc = BigInt::one();
        for j in 2..=idx as u32 {
            let top = &values[idx + 1 - j as usize] + BigInt::from(j - 1);
            let top = top.to_biguint().expect("λ_i >= 2 for i >= 1");
            let term = BigInt::from_biguint(Sign::Plus, binom_big(&top, j));
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        values.push(acc);
    }
    LambdaSeq { values }
}

/// `C(t, m) + 3 C(t, m-1)`.
pub fn g_value(t: u64, m: u32) -> BigUint {
    binom(t, m as i64) + 3u32 * binom(t, m as i64 - 1)
}

/// Whether `g(t, m)` agrees with its λ-expansion.
pub fn g_identity_check(t: u64, m: u32) -> bool {
    if m == 0 {
        return false;
    }
    lambda_sequence((m as usize).max(2))
        .identity_holds(t as i64, m)
        .expect("prefix has m terms")
}

/// The ball of `C([t], m)` inside `J(t + 3, m)`, compared with the colex
/// segment of the same size, and carried to `J(n, m)` for `n > t + 3`.
#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub t: u32,
    pub m: u32,
    pub n: u32,
    /// `t + 3`, the ground set the construction lives in.
    pub base_n: u32,
    pub k: u64,
    pub family: Family,
    pub ball_size_construction: u64,
    pub ball_size_colex: u64,
    pub boundary_construction: u64,
    pub boundary_colex: u64,
    pub shadow_construction: u64,
    pub shadow_colex: u64,
    /// Construction ball strictly smaller than the colex ball.
    pub strict: bool,
    /// `t <= λ_{m-1}`: the λ-expansion need not be the cascade representation.
    pub below_threshold: bool,
    /// Sizes for `n > t + 3` come from the support decomposition rather than
    /// enumeration.
    pub extrapolated: bool,
}

pub fn counterexample(t: u32, m: u32, n: u32) -> Result<CounterexampleReport> {
    if m < 2 {
        return Err(invalid(format!(
            "level {m}: the ball construction needs m >= 2 (and gives equality at m = 2)"
        )));
    }
    if t < m {
        return Err(invalid(format!("t = {t} must be at least m = {m}")));
    }
    let base_n = t + 3;
    if n < base_n {
        return Err(invalid(format!(
            "n = {n} must be at least t + 3 = {base_n}"
        )));
    }
    check_ground(n)?;
    let lambda = lambda_sequence(m as usize);
    let below_threshold = BigInt::from(t) <= lambda.values()[m as usize - 1];

    let core = Family::new(base_n, m, level(t, m))?;
    let s = ball(&core)?;
    let k = s.len() as u64;
    debug_assert_eq!(BigUint::from(k), g_value(t as u64, m));
    let colex = initial_segment(k, m)?.with_ground(base_n)?;

    let base_ball_s = s.len() as u64 + boundary(&s)?.len() as u64;
    let base_ball_i = ball(&colex)?.len() as u64;
    let shadow_s = lower_shadow(&s)?.len() as u64;
    let shadow_i = lower_shadow(&colex)?.len() as u64;
    let extra = (n - base_n) as u64;
    let ball_size_construction = base_ball_s + extra * shadow_s;
    let ball_size_colex = base_ball_i + extra * shadow_i;

    Ok(CounterexampleReport {
        t,
        m,
        n,
        base_n,
        k,
        family: s,
        ball_size_construction,
        ball_size_colex,
        boundary_construction: ball_size_construction - k,
        boundary_colex: ball_size_colex - k,
        shadow_construction: shadow_s,
        shadow_colex: shadow_i,
        strict: ball_size_construction < ball_size_colex,
        below_threshold,
        extrapolated: n > base_n,
    })
}

/// `|B(S)|` in `J(n, m)` from the ball inside the support of `S`: with
/// `n_0` the largest element used, `|B(S)| = |B_0(S)| + (n - n_0)|Δ(S)|`.
pub fn ball_size_by_support(s: &Family, n: u32) -> Result<u64> {
    if s.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n0 = s.support_max().max(s.m());
    if n < n0 {
        return Err(invalid(format!("n = {n} is below the support {n0}")));
    }
    let local = s.with_ground(n0)?;
    let base = ball_size_allowing_trivial(&local)? as u64;
    let shadow = lower_shadow(&local)?.len() as u64;
    Ok(base + (n - n0) as u64 * shadow)
}

/// `(m+1) m (m-1)^2 / 48`: how much smaller the unit-ball boundary is than
/// the colex boundary in `J(3(m+1)/2, m)` for odd `m`.
pub fn unit_ball_gap(m: u32) -> u64 {
    let m = m as u64;
    (m + 1) * m * (m - 1) * (m - 1) / 48
}

/// Converts a small λ value for use as a ground-set size.
pub fn lambda_as_u64(v: &BigInt) -> Option<u64> {
    if v.is_negative() {
        None
    } else {
        v.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Subset;

    #[test]
    fn f_bound_examples() {
        for n in 2..=10 {
            for m in 1..n {
                assert_eq!(f_bound(1, n, m).unwrap(), (m * (n - m)) as u64);
            }
        }
        assert_eq!(f_bound(10, 6, 3).unwrap(), 10);
        assert_eq!(f_bound(40, 8, 3).unwrap(), 16);
        assert_eq!(f_bound(20, 6, 3).unwrap(), 0);
        assert!(f_bound(21, 6, 3).is_err());
        assert!(f_bound(3, 6, 0).is_err());
    }

    #[test]
    fn f_bound_matches_enumeration_small() {
        for n in 2..=8 {
            for m in 1..n {
                let total = binom_u64(n as u64, m as u64).unwrap();
                for k in 1..=total {
                    let seg = initial_segment(k, m).unwrap().with_ground(n).unwrap();
                    let enumerated = if k == total {
                        0
                    } else {
                        boundary(&seg).unwrap().len() as u64
                    };
                    assert_eq!(f_bound(k, n, m).unwrap(), enumerated, "n={n} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn critical_bound_examples() {
        assert_eq!(
            mu_upper_critical(40, 20, 3).unwrap(),
            f_bound(38, 20, 3).unwrap() + 2
        );
        assert_eq!(
            mu_upper_critical(4, 6, 2).unwrap(),
            f_bound(3, 6, 2).unwrap() + 1
        );
        assert!(matches!(
            mu_upper_critical(10, 8, 3),
            Err(Error::NotCritical { .. })
        ));
    }

    #[test]
    fn lambda_first_values() {
        let seq = lambda_sequence(8);
        let got: Vec<String> = seq.values().iter().map(|v| v.to_string()).collect();
        assert_eq!(got, ["-2", "2", "4", "7", "14", "51", "928", "409625"]);
        assert_eq!(lambda_sequence(1).len(), 1);
        assert!(lambda_sequence(0).is_empty());
    }

    #[test]
    fn lambda_growth() {
        let seq = lambda_sequence(12);
        let v = seq.values();
        for i in 0..v.len() - 1 {
            assert!(v[i + 1] > &v[i] + 1, "gap at {i}");
        }
        for i in 2..v.len() {
            assert!(v[i] >= &v[i - 1] + 2);
            assert!(
                BigInt::from(4) * &v[i] >= &v[i - 1] * &v[i - 1],
                "quadratic growth at {i}"
            );
        }
        assert!(v[8] > BigInt::from(u64::MAX) || v[9] > BigInt::from(u64::MAX));
    }

    #[test]
    fn g_examples() {
        for t in 1..30u64 {
            assert_eq!(g_value(t, 1), BigUint::from(t + 3));
            if t >= 2 {
                let expect = binom(t + 2, 2) + binom(t - 2, 1) + 1u32;
                assert_eq!(g_value(t, 2), expect);
            }
        }
        assert_eq!(g_value(5, 3), BigUint::from(40u32));
    }

    #[test]
    fn g_identity_sweep() {
        assert!(g_identity_check(5, 3));
        let seq = lambda_sequence(8);
        for m in 1..=8u32 {
            for t in m as i64..=40 {
                assert_eq!(seq.identity_holds(t, m), Some(true), "t={t} m={m}");
            }
        }
        assert_eq!(seq.identity_holds(5, 9), None);
    }

    // Above the threshold the λ-expansion is the cascade representation, so
    // g(t, m) has m terms.
    #[test]
    fn g_is_critical_above_threshold() {
        let seq = lambda_sequence(5);
        for m in 1..=5u32 {
            let threshold = lambda_as_u64(&seq.values()[m as usize - 1]).unwrap_or(0);
            for t in (threshold + 1).max(m as u64)..threshold + 12 {
                let g = g_value(t, m).to_u64().unwrap();
                let rep = binomial_representation(g, m).unwrap();
                let tops: Vec<BigInt> = rep.tops().map(BigInt::from).collect();
                assert_eq!(Some(tops), seq.expected_tops(t, m), "t={t} m={m}");
                assert!(is_critical(g, m).unwrap());
            }
        }
    }

    #[test]
    fn counterexample_m3() {
        let r = counterexample(5, 3, 8).unwrap();
        assert_eq!(r.k, 40);
        assert_eq!((r.boundary_construction, r.boundary_colex), (15, 16));
        assert_eq!(r.shadow_construction, r.shadow_colex);
        assert!(r.strict && !r.below_threshold && !r.extrapolated);

        let r = counterexample(6, 3, 9).unwrap();
        assert_eq!(r.k, 65);
        assert!(r.strict);
    }

    #[test]
    fn counterexample_formulas() {
        for m in 3..=5u32 {
            let t0 = lambda_as_u64(&lambda_sequence(m as usize).values()[m as usize - 1]).unwrap()
                as u32;
            for t in [t0 + 1, t0 + 2] {
                let r = counterexample(t, m, t + 3).unwrap();
                let c = |a: u32, b: u32| binom_u64(a as u64, b as u64).unwrap();
                assert_eq!(r.boundary_construction, 3 * c(t, m - 2));
                assert_eq!(r.boundary_colex, c(t + 1, m - 2) + 2 * c(t, m - 2));
                assert_eq!(BigUint::from(r.k), g_value(t as u64, m));
                assert!(r.strict);
            }
        }
    }

    #[test]
    fn counterexample_m2_is_equality() {
        let r = counterexample(5, 2, 8).unwrap();
        assert_eq!((r.boundary_construction, r.boundary_colex), (3, 3));
        assert!(!r.strict);
    }

    #[test]
    fn counterexample_extrapolation_matches_enumeration() {
        for n in 8..=12 {
            let r = counterexample(5, 3, n).unwrap();
            let s = r.family.with_ground(n).unwrap();
            assert_eq!(ball(&s).unwrap().len() as u64, r.ball_size_construction);
            let i = initial_segment(r.k, 3).unwrap().with_ground(n).unwrap();
            assert_eq!(ball(&i).unwrap().len() as u64, r.ball_size_colex);
            assert_eq!(r.ball_size_colex - r.ball_size_construction, 1);
        }
    }

    #[test]
    fn counterexample_preconditions() {
        assert!(counterexample(5, 1, 8).is_err());
        assert!(counterexample(5, 3, 7).is_err());
        assert!(counterexample(2, 3, 7).is_err());
        assert!(counterexample(4, 3, 7).unwrap().below_threshold);
    }

    #[test]
    fn support_decomposition_single_vertex() {
        let v = Family::new(3, 3, [Subset::initial(3)]).unwrap();
        for n in 3..10 {
            assert_eq!(ball_size_by_support(&v, n).unwrap(), 1 + 3 * (n as u64 - 3));
        }
    }

    #[test]
    fn unit_ball_gap_values() {
        assert_eq!(unit_ball_gap(3), 1);
        assert_eq!(unit_ball_gap(5), 10);
        assert_eq!(unit_ball_gap(7), 42);
    }
}
