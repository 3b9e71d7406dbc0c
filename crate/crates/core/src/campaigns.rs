//! Scan drivers for the five V-arithmetic pentagon graph families.
//!
//! Each family fixes the interval data of its witness and one of the two
//! ground-field shapes. A scan finds the exceptional parameters, solves the
//! thresholds that make the candidate set finite, walks every parameter below
//! the final threshold, and bounds `[K : Q]` for each surviving candidate by
//! the better of methods A and B.

use alloc::vec::Vec;
use core::f64::consts::{E, PI};

use crate::bounds::{
    self, case1_is_exceptional, case2_is_exceptional_l, evaluate_case1, evaluate_case2, method_a_least_n, pair_loss,
    pair_rhs, BoundResult, Case1Thresholds, Case2Thresholds, CaseParams, MethodAInputs, NumericPolicy,
};
use crate::cyclotomic::{euler_phi, gcd, log_gamma_per_phi, FieldKind};
use crate::math::{floor, ln, pow, sin, sqrt};
use crate::{Error, Result, GAMMA0};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    Gamma6_1,
    Gamma6_2,
    Gamma6_3,
    Gamma7_1,
    Gamma7_2,
    /// Plane arithmetic groups with a pentagon fundamental polygon.
    FuchsianPentagon,
}

impl FamilyId {
    /// The graph families scanned by [`run_family`], in report order.
    pub const GRAPHS: [FamilyId; 5] = [
        FamilyId::Gamma6_1,
        FamilyId::Gamma6_2,
        FamilyId::Gamma6_3,
        FamilyId::Gamma7_1,
        FamilyId::Gamma7_2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Gamma6_1 => "gamma6_1",
            FamilyId::Gamma6_2 => "gamma6_2",
            FamilyId::Gamma6_3 => "gamma6_3",
            FamilyId::Gamma7_1 => "gamma7_1",
            FamilyId::Gamma7_2 => "gamma7_2",
            FamilyId::FuchsianPentagon => "fuchsian_pentagon",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        [
            FamilyId::Gamma6_1,
            FamilyId::Gamma6_2,
            FamilyId::Gamma6_3,
            FamilyId::Gamma7_1,
            FamilyId::Gamma7_2,
            FamilyId::FuchsianPentagon,
        ]
        .into_iter()
        .find(|f| f.name() == name)
    }

    /// Interval data of the family's witness. `Gamma7_2` shares the data of
    /// `Gamma6_3`.
    pub fn params(self) -> Option<CaseParams> {
        let p14_4 = 14f64 * 14.0 * 14.0 * 14.0;
        let p = match self {
            FamilyId::Gamma6_1 => CaseParams::case2(4.0, 12.0, 28.0 * 28.0, 3),
            FamilyId::Gamma6_2 => CaseParams::case1(GAMMA0, -14.0 * p14_4, -32.0),
            FamilyId::Gamma6_3 | FamilyId::Gamma7_2 => CaseParams::case2(2.0 * GAMMA0, -32.0 * p14_4, -64.0, 4),
            FamilyId::Gamma7_1 => CaseParams::case2(GAMMA0, -14.0 * p14_4, -32.0, 3),
            FamilyId::FuchsianPentagon => return None,
        };
        p.ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Thresholds {
    Case1(Case1Thresholds),
    Case2(Case2Thresholds),
}

impl Thresholds {
    /// Exclusive upper end of the scanned parameter range.
    pub fn scan_limit(&self) -> u64 {
        match self {
            Thresholds::Case1(t) => t.l1,
            Thresholds::Case2(t) => t.k1,
        }
    }
}

/// Extent of the candidate set actually found by a scan.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Window {
    /// Largest candidate `l` (single-field families).
    pub max_l: Option<u64>,
    /// Largest candidate `s` (pair families).
    pub max_s: Option<u64>,
    /// Largest candidate `k` (pair families).
    pub max_k: Option<u64>,
    /// `(s, largest candidate k with this s)` for every `s` with candidates.
    pub rows: Vec<(u64, u64)>,
}

impl Window {
    /// Largest candidate `k` over rows with `s >= s_min`.
    pub fn max_k_for_s_at_least(&self, s_min: u64) -> Option<u64> {
        self.rows.iter().filter(|(s, _)| *s >= s_min).map(|(_, k)| *k).max()
    }
}

/// A bound that enters a family (or the aggregate) from outside its scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contribution {
    pub label: &'static str,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub family: FamilyId,
    pub params: CaseParams,
    pub gamma0: f64,
    pub exceptional_ls: Vec<u64>,
    pub exceptional_pairs: Vec<(u64, u64)>,
    pub thresholds: Thresholds,
    pub window: Window,
    pub results: Vec<BoundResult>,
    /// Largest `[F : Q]` among candidates, and where it occurs.
    pub max_field_degree: u64,
    pub max_field_degree_at: Option<FieldKind>,
    /// Largest method B bound on `[K : Q]`, and where it occurs.
    pub max_method_b: Option<(u64, FieldKind)>,
    pub max_total_bound: u64,
    pub max_total_at: Option<FieldKind>,
    pub borderline_count: usize,
    pub special: Vec<Contribution>,
    /// Set when this report reuses the scan of another family.
    pub delegated_from: Option<FamilyId>,
}

impl ScanReport {
    /// `(largest s, largest k)` (or `(None, largest l)`) over escalated candidates.
    pub fn escalation_zone(&self) -> (Option<u64>, Option<u64>) {
        let mut s_max = None;
        let mut top = None;
        for r in self.results.iter().filter(|r| r.escalated) {
            match r.candidate.kind {
                FieldKind::Single { l } => top = top.max(Some(l)),
                FieldKind::Pair { k, s } => {
                    s_max = s_max.max(Some(s));
                    top = top.max(Some(k));
                }
            }
        }
        (s_max, top)
    }

    pub fn result_for(&self, kind: FieldKind) -> Option<&BoundResult> {
        self.results.iter().find(|r| r.candidate.kind == kind)
    }
}

/// Bound for `Gamma6_3` when one of the two orders is 3: the witness
/// `alpha = a14^2` lies in `(0, 3)` away from the identity and in `(4, 14^2)`
/// at it, so method A applies over `Q` with `M = 1`, `B = 2`, `R = sqrt3/2`,
/// `S = 2e 14^2 / 3`.
pub fn gamma63_special_s3(policy: &NumericPolicy) -> Result<u64> {
    let inputs = MethodAInputs {
        m: 1,
        ln_r: ln(sqrt(3.0) / 2.0),
        ln_b: ln(2.0),
        ln_s: ln(2.0 * E * 196.0 / 3.0),
    };
    method_a_least_n(&inputs, policy.method_a_cap)
}

/// Fuchsian degree bound `floor((b + ln C(g,t)) / ln(a / (2 pi)^(4/3)))` with
/// `a = 29.099`, `b = 8.3185` and `C(g,t) = 2^(2g+t-2) (2g+t-2)^(2/3)`.
pub fn takeuchi_degree_bound(genus: u32, cusps: u32) -> Result<u64> {
    let chi = 2 * genus as i64 + cusps as i64 - 2;
    if chi < 1 {
        return Err(Error::InvalidSignature { genus, cusps });
    }
    const A: f64 = 29.099;
    const B: f64 = 8.3185;
    let chi = chi as f64;
    let ln_c = chi * core::f64::consts::LN_2 + 2.0 / 3.0 * ln(chi);
    let n0 = (B + ln_c) / ln(A / pow(2.0 * PI, 4.0 / 3.0));
    Ok(floor(n0) as u64)
}

/// Degree bounds of field sets carried over from the dimension `n >= 6` case.
pub const PRIOR_BOUNDS: [Contribution; 8] = [
    Contribution { label: "FL4", bound: 2 },
    Contribution { label: "FT", bound: 5 },
    Contribution {
        label: "FGamma4_1(14)",
        bound: 22,
    },
    Contribution {
        label: "FGamma4_2(14)",
        bound: 39,
    },
    Contribution {
        label: "FGamma4_3(14)",
        bound: 53,
    },
    Contribution {
        label: "FGamma4_4(14)",
        bound: 56,
    },
    Contribution {
        label: "FGamma4_5(14)",
        bound: 54,
    },
    Contribution {
        label: "FGamma2_4(14)",
        bound: 11,
    },
];

/// Maximum over a set of contributions.
pub fn aggregate_bound(contributions: &[Contribution]) -> u64 {
    contributions.iter().map(|c| c.bound).max().unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregate {
    pub bound: u64,
    pub contributions: Vec<Contribution>,
}

/// Bound on the ground-field degree in dimensions `n >= 4`, from all five
/// family reports, the `s = 3` special case, the Fuchsian pentagon bound and
/// the prior field sets.
pub fn aggregate_theorem_bound(reports: &[ScanReport], policy: &NumericPolicy) -> Result<Aggregate> {
    let mut contributions = Vec::new();
    for family in FamilyId::GRAPHS {
        let report = reports
            .iter()
            .find(|r| r.family == family)
            .ok_or(Error::IncompleteCampaign(family.name()))?;
        contributions.push(Contribution {
            label: family.name(),
            bound: report.max_total_bound,
        });
    }
    contributions.push(Contribution {
        label: "gamma6_3 s=3",
        bound: gamma63_special_s3(policy)?,
    });
    contributions.push(Contribution {
        label: FamilyId::FuchsianPentagon.name(),
        bound: takeuchi_degree_bound(0, 5)?,
    });
    contributions.extend_from_slice(&PRIOR_BOUNDS);
    Ok(Aggregate {
        bound: aggregate_bound(&contributions),
        contributions,
    })
}

// -------------------------------------------------------------------------

/// Per-`l` quantities shared by every pair containing `l`.
struct LTable {
    phi: Vec<u64>,
    log_gamma: Vec<f64>,
    ln_sin: Vec<f64>,
    exceptional: Vec<bool>,
}

impl LTable {
    fn new(limit: u64, a: f64, epsilon: f64) -> Result<Self> {
        let n = limit as usize;
        let mut t = LTable {
            phi: Vec::with_capacity(n),
            log_gamma: Vec::with_capacity(n),
            ln_sin: Vec::with_capacity(n),
            exceptional: Vec::with_capacity(n),
        };
        for l in 0..limit {
            if l < 3 {
                t.phi.push(0);
                t.log_gamma.push(0.0);
                t.ln_sin.push(0.0);
                t.exceptional.push(true);
                continue;
            }
            t.phi.push(euler_phi(l)?);
            t.log_gamma.push(log_gamma_per_phi(l)?);
            t.ln_sin.push(ln(sin(PI / l as f64)));
            t.exceptional.push(case2_is_exceptional_l(l, a, epsilon)?);
        }
        Ok(t)
    }
}

fn window_error(family: FamilyId, e: Error) -> Error {
    match e {
        Error::ThresholdWindow { at, edge, .. } => Error::ThresholdWindow {
            family: family.name(),
            at,
            edge,
        },
        other => other,
    }
}

fn scan_case1(family: FamilyId, p: CaseParams, policy: &NumericPolicy) -> Result<ScanReport> {
    let t = bounds::solve_threshold_case1(&p).map_err(|e| window_error(family, e))?;
    let mut exceptional_ls = Vec::new();
    let mut results = Vec::new();
    for l in 3..t.l1 {
        if case1_is_exceptional(l, p.a, policy.epsilon)? {
            exceptional_ls.push(l);
        }
        if let Some(r) = evaluate_case1(l, &p, policy)? {
            results.push(r);
        }
    }
    let window = Window {
        max_l: results.iter().filter_map(single_l).max(),
        ..Window::default()
    };
    Ok(assemble(
        family,
        p,
        exceptional_ls,
        Vec::new(),
        Thresholds::Case1(t),
        window,
        results,
    ))
}

fn single_l(r: &BoundResult) -> Option<u64> {
    match r.candidate.kind {
        FieldKind::Single { l } => Some(l),
        FieldKind::Pair { .. } => None,
    }
}

fn scan_case2(family: FamilyId, p: CaseParams, policy: &NumericPolicy) -> Result<ScanReport> {
    let t = bounds::solve_threshold_case2(&p, policy.epsilon).map_err(|e| window_error(family, e))?;
    let limit = t.k1;
    let table = LTable::new(limit, p.a, policy.epsilon)?;
    let base = ln(4.0 / sqrt(p.a));
    let ln_sqrt_ba = ln(p.b() / p.a) / 2.0;

    let exceptional_ls: Vec<u64> = (3..limit).filter(|&l| table.exceptional[l as usize]).collect();
    let mut exceptional_pairs = Vec::new();
    let mut results = Vec::new();
    let mut rows = Vec::new();
    for s in p.s0..limit {
        let si = s as usize;
        if table.exceptional[si] {
            continue;
        }
        let mut row_max = None;
        for k in s..limit {
            let ki = k as usize;
            if table.exceptional[ki] {
                continue;
            }
            let loss = pair_loss(base, table.log_gamma[ki], table.log_gamma[si]);
            let exceptional = loss <= policy.epsilon;
            if exceptional {
                exceptional_pairs.push((k, s));
            } else {
                // phi(lcm) phi(gcd) = phi(k) phi(s)
                let g = gcd(k, s);
                let rho = if 2 % g == 0 { 2 } else { 1 };
                let degree = table.phi[ki] * table.phi[si] / table.phi_of(g)? / (2 * rho);
                let rhs = pair_rhs(ln_sqrt_ba, table.ln_sin[ki], table.ln_sin[si]);
                if rhs - degree as f64 * loss <= -policy.epsilon {
                    continue;
                }
            }
            if let Some(r) = evaluate_case2(k, s, &p, policy)? {
                results.push(r);
                row_max = Some(k);
            }
        }
        if let Some(k) = row_max {
            rows.push((s, k));
        }
    }
    let window = Window {
        max_l: None,
        max_s: rows.iter().map(|(s, _)| *s).max(),
        max_k: rows.iter().map(|(_, k)| *k).max(),
        rows,
    };
    Ok(assemble(
        family,
        p,
        exceptional_ls,
        exceptional_pairs,
        Thresholds::Case2(t),
        window,
        results,
    ))
}

impl LTable {
    fn phi_of(&self, g: u64) -> Result<u64> {
        match self.phi.get(g as usize) {
            Some(&v) if g >= 3 => Ok(v),
            _ => euler_phi(g),
        }
    }
}

fn assemble(
    family: FamilyId,
    params: CaseParams,
    exceptional_ls: Vec<u64>,
    exceptional_pairs: Vec<(u64, u64)>,
    thresholds: Thresholds,
    window: Window,
    mut results: Vec<BoundResult>,
) -> ScanReport {
    let (max_field_degree, max_field_degree_at) = results.iter().fold((0, None), |acc, r| {
        if r.candidate.degree > acc.0 {
            (r.candidate.degree, Some(r.candidate.kind))
        } else {
            acc
        }
    });
    for r in &mut results {
        r.escalated = r.exceptional || r.method_b.is_some_and(|b| b.n > max_field_degree);
    }
    let max_method_b = results
        .iter()
        .filter_map(|r| r.method_b.map(|b| (b.n, r.candidate.kind)))
        .fold(
            None,
            |acc: Option<(u64, FieldKind)>, x| if acc.is_none_or(|a| x.0 > a.0) { Some(x) } else { acc },
        );
    let (max_total_bound, max_total_at) = results.iter().fold((0, None), |acc, r| {
        if r.final_n > acc.0 {
            (r.final_n, Some(r.candidate.kind))
        } else {
            acc
        }
    });
    let borderline_count = results.iter().filter(|r| r.borderline).count();
    ScanReport {
        family,
        params,
        gamma0: GAMMA0,
        exceptional_ls,
        exceptional_pairs,
        thresholds,
        window,
        results,
        max_field_degree,
        max_field_degree_at,
        max_method_b,
        max_total_bound,
        max_total_at,
        borderline_count,
        special: Vec::new(),
        delegated_from: None,
    }
}

/// Runs the scan of one graph family.
pub fn run_family(family: FamilyId, policy: &NumericPolicy) -> Result<ScanReport> {
    let params = family.params().ok_or(Error::InvalidArgument {
        what: "the Fuchsian pentagon family has no scan; use takeuchi_degree_bound",
        value: 0,
    })?;
    match family {
        FamilyId::Gamma7_2 => Ok(delegate(run_family(FamilyId::Gamma6_3, policy)?, FamilyId::Gamma7_2)),
        FamilyId::Gamma6_2 => scan_case1(family, params, policy),
        FamilyId::Gamma6_3 => {
            let mut report = scan_case2(family, params, policy)?;
            let special = gamma63_special_s3(policy)?;
            report.special.push(Contribution {
                label: "s=3",
                bound: special,
            });
            report.max_total_bound = report.max_total_bound.max(special);
            Ok(report)
        }
        _ => scan_case2(family, params, policy),
    }
}

fn delegate(mut source: ScanReport, to: FamilyId) -> ScanReport {
    source.delegated_from = Some(source.family);
    source.family = to;
    source
}

/// Runs all five graph families, scanning the shared `Gamma6_3` data once.
pub fn run_all(policy: &NumericPolicy) -> Result<Vec<ScanReport>> {
    let mut out = Vec::with_capacity(5);
    for family in FamilyId::GRAPHS {
        let report = match family {
            FamilyId::Gamma7_2 => {
                let source = out
                    .iter()
                    .find(|r: &&ScanReport| r.family == FamilyId::Gamma6_3)
                    .cloned()
                    .ok_or(Error::IncompleteCampaign(FamilyId::Gamma6_3.name()))?;
                delegate(source, family)
            }
            _ => run_family(family, policy)?,
        };
        out.push(report);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in FamilyId::GRAPHS {
            assert_eq!(FamilyId::parse(f.name()), Some(f));
        }
        assert_eq!(FamilyId::parse("bogus"), None);
        assert!(FamilyId::FuchsianPentagon.params().is_none());
    }

    #[test]
    fn special_case_is_76() {
        assert_eq!(gamma63_special_s3(&NumericPolicy::default()).unwrap(), 76);
        let ln_s = ln(2.0 * E * 196.0 / 3.0);
        let r = -ln(sqrt(3.0) / 2.0);
        let lhs = |n: f64| n * r - ln(n + 1.0) - ln(2.0);
        assert!(lhs(75.0) < ln_s);
        assert!(lhs(76.0) >= ln_s);
    }

    #[test]
    fn takeuchi_examples() {
        assert_eq!(takeuchi_degree_bound(0, 5).unwrap(), 12);
        assert_eq!(takeuchi_degree_bound(0, 4).unwrap(), 11);
        assert_eq!(takeuchi_degree_bound(0, 3).unwrap(), 9);
        assert_eq!(
            takeuchi_degree_bound(0, 2),
            Err(Error::InvalidSignature { genus: 0, cusps: 2 })
        );
    }

    #[test]
    fn aggregate_of_constants() {
        assert_eq!(aggregate_bound(&PRIOR_BOUNDS), 56);
        let partial = [75, 56, 42, 12, 76].map(|bound| Contribution { label: "x", bound });
        let mut all = PRIOR_BOUNDS.to_vec();
        all.extend_from_slice(&partial);
        assert_eq!(aggregate_bound(&all), 76);
    }

    #[test]
    fn aggregate_needs_every_family() {
        let policy = NumericPolicy::default();
        assert_eq!(
            aggregate_theorem_bound(&[], &policy),
            Err(Error::IncompleteCampaign("gamma6_1"))
        );
    }

    #[test]
    fn fuchsian_family_has_no_scan() {
        assert!(run_family(FamilyId::FuchsianPentagon, &NumericPolicy::default()).is_err());
    }
}
