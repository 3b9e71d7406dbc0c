//! Degree bounds for `K = Q(alpha)` over a real cyclotomic field.
//!
//! The witness `alpha` is a totally real algebraic integer whose conjugates
//! lie in `(0, a * sin^2(pi/l))` (single field `F_l`) or
//! `(0, a * sin^2(pi/k) sin^2(pi/s))` (compositum `F_{k,s}`), except the
//! identity embedding, which lies in `(b1, b2)`.
//!
//! Two bounds are available:
//!
//! * **Method B** uses `|N(alpha)| >= 1`. It needs a positive per-degree
//!   loss (`ln(2/sqrt a) - ln gamma(l)/phi(l)` for one field,
//!   `ln(4/sqrt a) - ln gamma(k)/phi(k) - ln gamma(s)/phi(s)` for a pair);
//!   parameters where this loss is not positive are *exceptional*.
//! * **Method A** is the least natural `n` with
//!   `n M ln(1/R) - M ln(n+1) - ln B >= ln S`, valid whenever `R < 1`.
//!
//! All comparisons are guarded by [`NumericPolicy::epsilon`]: a quantity
//! within epsilon of its threshold is *borderline*. Borderline exceptionality
//! counts as exceptional, borderline candidate filters count as satisfied,
//! and a method B ratio within epsilon of an integer has its floor decided by
//! [`crate::precise`].

use alloc::vec::Vec;
use core::f64::consts::{E, LN_2, PI};

use crate::cyclotomic::{
    degree_fks, euler_phi, gamma_norm, ln_discr_fks, ln_discr_real_subfield, log_gamma_per_phi, FieldSpec,
};
use crate::math::{floor, ln, sin, sqrt};
use crate::precise::Precise;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericPolicy {
    pub epsilon: f64,
    pub precision_digits: u32,
    pub method_a_cap: u64,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        NumericPolicy {
            epsilon: 1e-9,
            precision_digits: 30,
            method_a_cap: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    /// Ground field `F_l`.
    Case1,
    /// Ground field `F_{k,s}`.
    Case2,
}

/// Interval data bounding the conjugates of the witness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseParams {
    pub kind: CaseKind,
    pub a: f64,
    pub b1: f64,
    pub b2: f64,
    /// Smallest admissible `s`; always 3 for [`CaseKind::Case1`].
    pub s0: u64,
}

impl CaseParams {
    pub fn case1(a: f64, b1: f64, b2: f64) -> Result<Self> {
        if !(a > 0.0 && a < 4.0) {
            return Err(Error::InvalidArgument {
                what: "case 1 needs 0 < a < 4",
                value: a as i64,
            });
        }
        Self::checked(CaseParams {
            kind: CaseKind::Case1,
            a,
            b1,
            b2,
            s0: 3,
        })
    }

    pub fn case2(a: f64, b1: f64, b2: f64, s0: u64) -> Result<Self> {
        if !(a > 0.0 && a < 16.0) {
            return Err(Error::InvalidArgument {
                what: "case 2 needs 0 < a < 16",
                value: a as i64,
            });
        }
        if s0 < 3 {
            return Err(Error::InvalidArgument {
                what: "case 2 needs s0 >= 3",
                value: s0 as i64,
            });
        }
        Self::checked(CaseParams {
            kind: CaseKind::Case2,
            a,
            b1,
            b2,
            s0,
        })
    }

    fn checked(p: Self) -> Result<Self> {
        if p.b1.is_nan() || p.b2.is_nan() || p.b1 >= p.b2 {
            return Err(Error::InvalidArgument {
                what: "need b1 < b2",
                value: p.b1 as i64,
            });
        }
        if p.a > p.b() {
            return Err(Error::InvalidArgument {
                what: "need a <= max(|b1|, |b2|)",
                value: p.b() as i64,
            });
        }
        Ok(p)
    }

    pub fn b(&self) -> f64 {
        self.b1.abs().max(self.b2.abs())
    }

    /// `ln sqrt(b/a)`, the constant part of the norm inequality.
    fn ln_sqrt_b_over_a(&self) -> f64 {
        ln(self.b() / self.a) / 2.0
    }

    /// `ln(2e max{a, b2, a - b1}) - ln a`, the `l`-independent part of `ln S`.
    fn ln_s_base(&self) -> f64 {
        let r = self.a.max(self.b2).max(self.a - self.b1);
        ln(2.0 * E * r) - ln(self.a)
    }

    fn require(&self, kind: CaseKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::InvalidArgument {
                what: "parameters are for the other case",
                value: 0,
            });
        }
        Ok(())
    }
}

fn ln_sin_pi_over(l: u64) -> f64 {
    ln(sin(PI / l as f64))
}

// -------------------------------------------------------------------------
// Method A

/// The quadruple `(M, R, B, S)` of the least-solution inequality, in logs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodAInputs {
    pub m: u64,
    pub ln_r: f64,
    pub ln_b: f64,
    pub ln_s: f64,
}

impl MethodAInputs {
    /// `n M ln(1/R) - M ln(n+1) - ln B - ln S`; nonnegative iff `n` is a solution.
    pub fn slack(&self, n: u64) -> f64 {
        let m = self.m as f64;
        let n = n as f64;
        n * m * (-self.ln_r) - m * ln(n + 1.0) - self.ln_b - self.ln_s
    }
}

/// Least `n >= 1` solving the method A inequality.
pub fn method_a_least_n(inputs: &MethodAInputs, cap: u64) -> Result<u64> {
    if cap == 0 {
        return Err(Error::InvalidArgument {
            what: "cap must be positive",
            value: 0,
        });
    }
    if inputs.m == 0 {
        return Err(Error::InvalidArgument {
            what: "M must be positive",
            value: 0,
        });
    }
    if inputs.ln_r.is_nan() || inputs.ln_r >= 0.0 {
        return Err(Error::InapplicableMethod("R >= 1"));
    }
    (1..=cap)
        .find(|&n| inputs.slack(n) >= 0.0)
        .ok_or(Error::CappedSearch { cap })
}

/// `(M, R, B, S)` for `F = F_l`.
pub fn case1_method_a_inputs(l: u64, p: &CaseParams) -> Result<MethodAInputs> {
    p.require(CaseKind::Case1)?;
    let phi = euler_phi(l)?;
    let m = phi / 2;
    let ln_r = m as f64 * (log_gamma_per_phi(l)? + ln(sqrt(p.a) / 4.0));
    if ln_r.is_nan() || ln_r >= 0.0 {
        return Err(Error::InapplicableMethod("R >= 1"));
    }
    Ok(MethodAInputs {
        m,
        ln_r,
        ln_b: LN_2 + ln_discr_real_subfield(l)? / 2.0,
        ln_s: p.ln_s_base() - 2.0 * ln_sin_pi_over(l),
    })
}

/// `(M, R, B, S)` for `F = F_{k,s}`.
pub fn case2_method_a_inputs(k: u64, s: u64, p: &CaseParams) -> Result<MethodAInputs> {
    p.require(CaseKind::Case2)?;
    let m = degree_fks(k, s)?;
    let ln_r = m as f64 * (log_gamma_per_phi(k)? + log_gamma_per_phi(s)? + ln(sqrt(p.a) / 8.0));
    if ln_r.is_nan() || ln_r >= 0.0 {
        return Err(Error::InapplicableMethod("R >= 1"));
    }
    Ok(MethodAInputs {
        m,
        ln_r,
        ln_b: LN_2 + ln_discr_fks(k, s)? / 2.0,
        ln_s: p.ln_s_base() - 2.0 * ln_sin_pi_over(s) - 2.0 * ln_sin_pi_over(k),
    })
}

// -------------------------------------------------------------------------
// Exceptionality

/// `ln(2/sqrt a) - ln gamma(l)/phi(l)`; `l` is exceptional when this is `<= 0`.
pub fn case1_exceptional_margin(l: u64, a: f64) -> Result<f64> {
    Ok(ln(2.0 / sqrt(a)) - log_gamma_per_phi(l)?)
}

pub fn case1_is_exceptional(l: u64, a: f64, epsilon: f64) -> Result<bool> {
    Ok(case1_exceptional_margin(l, a)? <= epsilon)
}

/// `ln(4/sqrt a) - ln gamma(l)/phi(l)`.
pub fn case2_l_margin(l: u64, a: f64) -> Result<f64> {
    Ok(ln(4.0 / sqrt(a)) - log_gamma_per_phi(l)?)
}

pub fn case2_is_exceptional_l(l: u64, a: f64, epsilon: f64) -> Result<bool> {
    Ok(case2_l_margin(l, a)? <= epsilon)
}

/// `ln(4/sqrt a) - ln gamma(k)/phi(k) - ln gamma(s)/phi(s)`.
pub fn case2_pair_margin(k: u64, s: u64, a: f64) -> Result<f64> {
    Ok(pair_loss(
        ln(4.0 / sqrt(a)),
        log_gamma_per_phi(k)?,
        log_gamma_per_phi(s)?,
    ))
}

/// Whether a pair of individually non-exceptional `k, s` is exceptional.
pub fn case2_is_exceptional_pair(k: u64, s: u64, a: f64, epsilon: f64) -> Result<bool> {
    for l in [k, s] {
        if case2_is_exceptional_l(l, a, epsilon)? {
            return Err(Error::InvalidArgument {
                what: "pair exceptionality needs non-exceptional members",
                value: l as i64,
            });
        }
    }
    Ok(case2_pair_margin(k, s, a)? <= epsilon)
}

#[inline]
pub(crate) fn pair_loss(base: f64, lg_k: f64, lg_s: f64) -> f64 {
    base - lg_k - lg_s
}

#[inline]
pub(crate) fn pair_rhs(ln_sqrt_ba: f64, ln_sin_k: f64, ln_sin_s: f64) -> f64 {
    ln_sqrt_ba - ln_sin_k - ln_sin_s
}

// -------------------------------------------------------------------------
// Method B

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodB {
    /// Bound on `[K : F]`.
    pub n0: u64,
    /// Bound on `[K : Q]`.
    pub n: u64,
    pub ratio: f64,
    /// `rhs - degree * loss` of the norm inequality; positive for candidates.
    pub slack: f64,
    /// The floor was decided at high precision.
    pub rechecked: bool,
    /// The high-precision floor differs from the double one.
    pub floor_disagreed: bool,
}

fn method_b_from_parts(
    degree: u64,
    loss: f64,
    rhs: f64,
    policy: &NumericPolicy,
    precise_ratio: impl FnOnce(&mut Precise) -> Result<astro_float::BigFloat>,
) -> Result<MethodB> {
    if loss <= policy.epsilon {
        return Err(Error::InapplicableMethod(
            "exceptional: norm bound has nonpositive loss",
        ));
    }
    let slack = rhs - degree as f64 * loss;
    if slack <= -policy.epsilon {
        return Err(Error::InapplicableMethod("norm inequality admits no degree"));
    }
    let ratio = rhs / (degree as f64 * loss);
    let mut n0 = floor(ratio) as u64;
    let mut rechecked = false;
    let mut floor_disagreed = false;
    if (ratio - libm::round(ratio)).abs() < policy.epsilon {
        let mut hp = Precise::with_digits(policy.precision_digits);
        let exact = precise_ratio(&mut hp)?;
        if let Some(f) = hp.floor_near(&exact, ratio) {
            floor_disagreed = f != n0;
            n0 = f;
        }
        rechecked = true;
    }
    let n0 = n0.max(1);
    Ok(MethodB {
        n0,
        n: n0 * degree,
        ratio,
        slack,
        rechecked,
        floor_disagreed,
    })
}

/// Norm bound for `F = F_l`.
pub fn case1_method_b(l: u64, p: &CaseParams, policy: &NumericPolicy) -> Result<MethodB> {
    p.require(CaseKind::Case1)?;
    let degree = euler_phi(l)? / 2;
    let loss = case1_exceptional_margin(l, p.a)?;
    let rhs = p.ln_sqrt_b_over_a() - ln_sin_pi_over(l);
    let (a, b) = (p.a, p.b());
    method_b_from_parts(degree, loss, rhs, policy, |hp| hp.case1_ratio(l, a, b))
}

/// Norm bound for `F = F_{k,s}`.
pub fn case2_method_b(k: u64, s: u64, p: &CaseParams, policy: &NumericPolicy) -> Result<MethodB> {
    p.require(CaseKind::Case2)?;
    if case2_is_exceptional_l(k, p.a, policy.epsilon)? || case2_is_exceptional_l(s, p.a, policy.epsilon)? {
        return Err(Error::InapplicableMethod("exceptional member of the pair"));
    }
    let degree = degree_fks(k, s)?;
    let loss = case2_pair_margin(k, s, p.a)?;
    let rhs = pair_rhs(p.ln_sqrt_b_over_a(), ln_sin_pi_over(k), ln_sin_pi_over(s));
    let (a, b) = (p.a, p.b());
    method_b_from_parts(degree, loss, rhs, policy, |hp| hp.case2_ratio(k, s, a, b, degree))
}

// -------------------------------------------------------------------------
// Per-candidate evaluation

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodABound {
    pub n0: u64,
    pub n: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodBBound {
    pub n0: u64,
    pub n: u64,
}

/// Outcome of both methods for one candidate field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub candidate: FieldSpec,
    pub exceptional: bool,
    pub method_b: Option<MethodBBound>,
    pub method_a: Option<MethodABound>,
    /// Minimum over the available method bounds.
    pub final_n: u64,
    /// The guarded quantity closest to its threshold among those that decided
    /// this candidate (exceptionality, the norm filter, the floor, method A).
    pub margin: f64,
    pub borderline: bool,
    /// Method B alone would exceed the family's field-degree target, or the
    /// candidate is exceptional. Set by the scan driver.
    pub escalated: bool,
}

struct Closest(f64);

impl Closest {
    fn offer(&mut self, x: f64) {
        if x.abs() < self.0.abs() {
            self.0 = x;
        }
    }
}

fn method_a_bound(
    inputs: Result<MethodAInputs>,
    policy: &NumericPolicy,
    closest: &mut Closest,
) -> Result<Option<MethodABound>> {
    let inputs = match inputs {
        Ok(i) => i,
        Err(Error::InapplicableMethod(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let n0 = method_a_least_n(&inputs, policy.method_a_cap)?;
    closest.offer(inputs.slack(n0));
    if n0 > 1 {
        closest.offer(inputs.slack(n0 - 1));
    }
    Ok(Some(MethodABound { n0, n: n0 * inputs.m }))
}

fn finish(
    candidate: FieldSpec,
    exceptional: bool,
    method_b: Option<MethodB>,
    method_a: Option<MethodABound>,
    closest: Closest,
    policy: &NumericPolicy,
) -> Result<BoundResult> {
    let final_n = match (method_b.map(|b| b.n), method_a.map(|a| a.n)) {
        (Some(b), Some(a)) => b.min(a),
        (Some(b), None) => b,
        (None, Some(a)) => a,
        (None, None) => return Err(Error::InapplicableMethod("neither method applies")),
    };
    let floor_disagreed = method_b.is_some_and(|b| b.floor_disagreed);
    Ok(BoundResult {
        candidate,
        exceptional,
        method_b: method_b.map(|b| MethodBBound { n0: b.n0, n: b.n }),
        method_a,
        final_n,
        margin: closest.0,
        borderline: closest.0.abs() < policy.epsilon || floor_disagreed,
        escalated: false,
    })
}

fn offer_method_b(b: &MethodB, closest: &mut Closest) {
    closest.offer(b.slack);
    closest.offer(b.ratio - libm::round(b.ratio));
}

/// Evaluates `F_l` as a candidate; `None` when the norm inequality rules it out.
pub fn evaluate_case1(l: u64, p: &CaseParams, policy: &NumericPolicy) -> Result<Option<BoundResult>> {
    p.require(CaseKind::Case1)?;
    let exc_margin = case1_exceptional_margin(l, p.a)?;
    let exceptional = exc_margin <= policy.epsilon;
    let mut closest = Closest(exc_margin);
    let method_b = if exceptional {
        None
    } else {
        match case1_method_b(l, p, policy) {
            Ok(b) => Some(b),
            Err(Error::InapplicableMethod(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    };
    if let Some(b) = &method_b {
        offer_method_b(b, &mut closest);
    }
    let method_a = method_a_bound(case1_method_a_inputs(l, p), policy, &mut closest)?;
    finish(FieldSpec::single(l)?, exceptional, method_b, method_a, closest, policy).map(Some)
}

/// Evaluates `F_{k,s}` for individually non-exceptional `k >= s`; `None` when
/// the norm inequality rules the pair out.
pub fn evaluate_case2(k: u64, s: u64, p: &CaseParams, policy: &NumericPolicy) -> Result<Option<BoundResult>> {
    p.require(CaseKind::Case2)?;
    let exc_margin = case2_pair_margin(k, s, p.a)?;
    let exceptional = case2_is_exceptional_pair(k, s, p.a, policy.epsilon)?;
    let mut closest = Closest(exc_margin);
    let method_b = if exceptional {
        None
    } else {
        match case2_method_b(k, s, p, policy) {
            Ok(b) => Some(b),
            Err(Error::InapplicableMethod(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    };
    if let Some(b) = &method_b {
        offer_method_b(b, &mut closest);
    }
    let method_a = method_a_bound(case2_method_a_inputs(k, s, p), policy, &mut closest)?;
    finish(FieldSpec::pair(k, s)?, exceptional, method_b, method_a, closest, policy).map(Some)
}

// -------------------------------------------------------------------------
// Thresholds

/// `C = phi(6) ln(ln 6) / 6`, a lower bound for `phi(l) ln ln l / l` at `l >= 6`.
pub fn constant_c() -> f64 {
    2.0 * ln(ln(6.0)) / 6.0
}

/// `(C/2) coeff L - (ln L + ln(sqrt(b/a)/pi)) ln ln L`.
pub fn case1_threshold_slack(l: u64, coeff: f64, p: &CaseParams) -> f64 {
    let x = l as f64;
    constant_c() / 2.0 * coeff * x - (ln(x) + ln(sqrt(p.b() / p.a) / PI)) * ln(ln(x))
}

/// `(C/2) coeff K - (2 ln K + ln(sqrt(b/a)/pi^2)) ln ln K`.
pub fn case2_threshold_slack(k: u64, coeff: f64, p: &CaseParams) -> f64 {
    let x = k as f64;
    constant_c() / 2.0 * coeff * x - (2.0 * ln(x) + ln(sqrt(p.b() / p.a) / (PI * PI))) * ln(ln(x))
}

/// Least `n >= start` such that `holds` is true on every integer from `n` up
/// to a horizon well past the first solution. The slack functions used here
/// are linear minus `O(ln n ln ln n)`, so solutions past the horizon persist.
fn least_eventual_solution(start: u64, holds: impl Fn(u64) -> bool) -> Result<u64> {
    const LIMIT: u64 = 1 << 32;
    let first = (start..LIMIT)
        .find(|&n| holds(n))
        .ok_or(Error::CappedSearch { cap: LIMIT })?;
    let horizon = (16 * first).max(first + 1000);
    let last_failure = (first..=horizon).rev().find(|&n| !holds(n));
    Ok(last_failure.map_or(first, |n| n + 1))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case1Thresholds {
    pub l0: u64,
    pub l1: u64,
    pub delta: f64,
    /// The prime power attaining `delta`.
    pub delta_at: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case2Thresholds {
    pub k0: u64,
    pub k1: u64,
    pub delta1: f64,
    /// The pair `(k, s)` attaining `delta1`.
    pub delta_at: (u64, u64),
}

/// Width of the window scanned for `Delta`, as a multiple of its left end.
const DELTA_WINDOW: u64 = 10;

fn check_window(at: u64, start: u64, what: &'static str) -> Result<()> {
    let end = DELTA_WINDOW * start;
    // The last tenth of the window is too close to trust as a global minimum.
    if at >= end - (end - start) / 10 {
        return Err(Error::ThresholdWindow {
            family: what,
            at,
            edge: end,
        });
    }
    Ok(())
}

/// `Delta(a)`: the least positive exceptionality margin over prime powers
/// `l >= l0`, computed on `[l0, 10 l0]`.
pub fn case1_delta(l0: u64, p: &CaseParams) -> Result<(f64, u64)> {
    let mut best: Option<(f64, u64)> = None;
    for l in l0.max(3)..=DELTA_WINDOW * l0 {
        if gamma_norm(l)? == 1 {
            continue;
        }
        let m = case1_exceptional_margin(l, p.a)?;
        if m > 0.0 && best.is_none_or(|(b, _)| m < b) {
            best = Some((m, l));
        }
    }
    let (delta, at) = best.ok_or(Error::InapplicableMethod("no prime power in the Delta window"))?;
    check_window(at, l0, "case 1 Delta window")?;
    Ok((delta, at))
}

/// `Delta_1(a)`: the least positive pair margin over `k >= s >= s0`,
/// `k >= k0`, with non-exceptional members and `gamma(k) gamma(s) > 1`,
/// computed for `k` in `[k0, 10 k0]`.
pub fn case2_delta(k0: u64, p: &CaseParams, epsilon: f64) -> Result<(f64, (u64, u64))> {
    let end = DELTA_WINDOW * k0;
    let base = ln(4.0 / sqrt(p.a));
    // (log_gamma_per_phi(l), usable as a pair member)
    let mut terms = Vec::with_capacity(end as usize + 1);
    terms.push((0.0, false));
    for l in 1..=end {
        if l < 3 {
            terms.push((0.0, false));
            continue;
        }
        let ok = !case2_is_exceptional_l(l, p.a, epsilon)?;
        terms.push((log_gamma_per_phi(l)?, ok));
    }
    let mut best: Option<(f64, (u64, u64))> = None;
    // Largest ln gamma(s)/phi(s) over usable s in [s0, k], maintained as k grows.
    let mut prefix: Option<(f64, u64)> = None;
    for k in p.s0..=end {
        let (lg_k, ok_k) = terms[k as usize];
        if ok_k && prefix.is_none_or(|(v, _)| lg_k > v) {
            prefix = Some((lg_k, k));
        }
        if k < k0 || !ok_k {
            continue;
        }
        let Some((lg_s, s)) = prefix else { continue };
        let mut candidate = (pair_loss(base, lg_k, lg_s), (k, s));
        if candidate.0 <= 0.0 {
            // The greediest partner overshoots; fall back to an exhaustive row.
            let row = (p.s0..=k)
                .filter(|&s| terms[s as usize].1)
                .map(|s| (pair_loss(base, lg_k, terms[s as usize].0), (k, s)))
                .filter(|(m, _)| *m > 0.0)
                .min_by(|x, y| x.0.total_cmp(&y.0));
            match row {
                Some(c) => candidate = c,
                None => continue,
            }
        }
        if lg_k == 0.0 && terms[candidate.1 .1 as usize].0 == 0.0 {
            continue;
        }
        if best.is_none_or(|(b, _)| candidate.0 < b) {
            best = Some(candidate);
        }
    }
    let (delta, at) = best.ok_or(Error::InapplicableMethod("no admissible pair in the Delta window"))?;
    check_window(at.0, k0, "case 2 Delta window")?;
    Ok((delta, at))
}

/// `(L0, L1, Delta)` for a single-field family.
pub fn solve_threshold_case1(p: &CaseParams) -> Result<Case1Thresholds> {
    p.require(CaseKind::Case1)?;
    let coeff0 = ln(2.0 / sqrt(p.a));
    let l0 = least_eventual_solution(4, |l| case1_threshold_slack(l, coeff0, p) >= 0.0)?;
    let (delta, delta_at) = case1_delta(l0, p)?;
    let l1 = least_eventual_solution(l0, |l| case1_threshold_slack(l, delta, p) >= 0.0)?;
    Ok(Case1Thresholds {
        l0,
        l1,
        delta,
        delta_at,
    })
}

/// `(K0, K1, Delta_1)` for a pair family.
pub fn solve_threshold_case2(p: &CaseParams, epsilon: f64) -> Result<Case2Thresholds> {
    p.require(CaseKind::Case2)?;
    let coeff0 = ln(4.0 / sqrt(p.a));
    let k0 = least_eventual_solution(4, |k| case2_threshold_slack(k, coeff0, p) >= 0.0)?;
    let (delta1, delta_at) = case2_delta(k0, p, epsilon)?;
    let k1 = least_eventual_solution(k0, |k| case2_threshold_slack(k, delta1, p) >= 0.0)?;
    Ok(Case2Thresholds {
        k0,
        k1,
        delta1,
        delta_at,
    })
}
