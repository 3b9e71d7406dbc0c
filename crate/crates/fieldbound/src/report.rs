//! Serializable scan reports.
//!
//! The document types mirror the core `ScanReport` but only use plain data,
//! so that `parse(emit(report)) == report` holds field for field.

use std::fmt::Write as _;

use anyhow::Result;
use serde::{Deserialize, Serialize};

use fieldbound_core::bounds::{BoundResult, CaseKind, CaseParams};
use fieldbound_core::campaigns::{Aggregate, ScanReport, Thresholds};
use fieldbound_core::cyclotomic::FieldKind;

use crate::config::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldKey {
    Pair { k: u64, s: u64 },
    Single { l: u64 },
}

impl From<FieldKind> for FieldKey {
    fn from(kind: FieldKind) -> Self {
        match kind {
            FieldKind::Single { l } => FieldKey::Single { l },
            FieldKind::Pair { k, s } => FieldKey::Pair { k, s },
        }
    }
}

impl std::fmt::Display for FieldKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldKey::Single { l } => write!(f, "l={l}"),
            FieldKey::Pair { k, s } => write!(f, "(k,s)=({k},{s})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub case: u8,
    pub a: f64,
    pub b1: f64,
    pub b2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s0: Option<u64>,
}

impl From<&CaseParams> for ParamsDoc {
    fn from(p: &CaseParams) -> Self {
        let (case, s0) = match p.kind {
            CaseKind::Case1 => (1, None),
            CaseKind::Case2 => (2, Some(p.s0)),
        };
        ParamsDoc {
            case,
            a: p.a,
            b1: p.b1,
            b2: p.b2,
            s0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThresholdsDoc {
    Case1 {
        l0: u64,
        l1: u64,
        delta: f64,
        delta_at: u64,
    },
    Case2 {
        k0: u64,
        k1: u64,
        delta1: f64,
        delta_at: [u64; 2],
    },
}

impl From<&Thresholds> for ThresholdsDoc {
    fn from(t: &Thresholds) -> Self {
        match t {
            Thresholds::Case1(t) => ThresholdsDoc::Case1 {
                l0: t.l0,
                l1: t.l1,
                delta: t.delta,
                delta_at: t.delta_at,
            },
            Thresholds::Case2(t) => ThresholdsDoc::Case2 {
                k0: t.k0,
                k1: t.k1,
                delta1: t.delta1,
                delta_at: [t.delta_at.0, t.delta_at.1],
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalDoc {
    pub ls: Vec<u64>,
    /// `[k, s]` pairs.
    pub pairs: Vec<[u64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowDoc {
    pub scan_limit: u64,
    pub max_l: Option<u64>,
    pub max_s: Option<u64>,
    pub max_k: Option<u64>,
    /// `[s, largest k]` per row.
    pub rows: Vec<[u64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodDoc {
    pub n0: u64,
    pub n: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateDoc {
    #[serde(flatten)]
    pub field: FieldKey,
    pub degree: u64,
    pub ln_abs_discr: f64,
    pub exceptional: bool,
    pub method_b: Option<MethodDoc>,
    pub method_a: Option<MethodDoc>,
    #[serde(rename = "final")]
    pub final_n: u64,
    pub margin: f64,
    pub borderline: bool,
    pub escalated: bool,
}

impl From<&BoundResult> for CandidateDoc {
    fn from(r: &BoundResult) -> Self {
        CandidateDoc {
            field: r.candidate.kind.into(),
            degree: r.candidate.degree,
            ln_abs_discr: r.candidate.ln_abs_discr,
            exceptional: r.exceptional,
            method_b: r.method_b.map(|b| MethodDoc { n0: b.n0, n: b.n }),
            method_a: r.method_a.map(|a| MethodDoc { n0: a.n0, n: a.n }),
            final_n: r.final_n,
            margin: r.margin,
            borderline: r.borderline,
            escalated: r.escalated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundAt {
    pub bound: u64,
    pub at: FieldKey,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionDoc {
    pub label: String,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delegated_from: Option<String>,
    pub params: ParamsDoc,
    pub gamma0: f64,
    pub thresholds: ThresholdsDoc,
    pub exceptional: ExceptionalDoc,
    pub window: WindowDoc,
    pub candidates: Vec<CandidateDoc>,
    pub max_field_degree: Option<BoundAt>,
    pub max_method_b: Option<BoundAt>,
    pub special: Vec<ContributionDoc>,
    pub borderline_count: usize,
    pub max_total_bound: u64,
}

impl From<&ScanReport> for ReportDoc {
    fn from(r: &ScanReport) -> Self {
        ReportDoc {
            family: r.family.name().to_owned(),
            delegated_from: r.delegated_from.map(|f| f.name().to_owned()),
            params: (&r.params).into(),
            gamma0: r.gamma0,
            thresholds: (&r.thresholds).into(),
            exceptional: ExceptionalDoc {
                ls: r.exceptional_ls.clone(),
                pairs: r.exceptional_pairs.iter().map(|&(k, s)| [k, s]).collect(),
            },
            window: WindowDoc {
                scan_limit: r.thresholds.scan_limit(),
                max_l: r.window.max_l,
                max_s: r.window.max_s,
                max_k: r.window.max_k,
                rows: r.window.rows.iter().map(|&(s, k)| [s, k]).collect(),
            },
            candidates: r.results.iter().map(CandidateDoc::from).collect(),
            max_field_degree: r.max_field_degree_at.map(|at| BoundAt {
                bound: r.max_field_degree,
                at: at.into(),
            }),
            max_method_b: r.max_method_b.map(|(bound, at)| BoundAt { bound, at: at.into() }),
            special: r
                .special
                .iter()
                .map(|c| ContributionDoc {
                    label: c.label.to_owned(),
                    bound: c.bound,
                })
                .collect(),
            borderline_count: r.borderline_count,
            max_total_bound: r.max_total_bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateDoc {
    pub bound: u64,
    pub contributions: Vec<ContributionDoc>,
}

impl From<&Aggregate> for AggregateDoc {
    fn from(a: &Aggregate) -> Self {
        AggregateDoc {
            bound: a.bound,
            contributions: a
                .contributions
                .iter()
                .map(|c| ContributionDoc {
                    label: c.label.to_owned(),
                    bound: c.bound,
                })
                .collect(),
        }
    }
}

/// Output of `scan --family all`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignDoc {
    pub reports: Vec<ReportDoc>,
    pub aggregate: AggregateDoc,
}

impl ReportDoc {
    pub fn has_borderline(&self) -> bool {
        self.borderline_count > 0
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

const CSV_HEADER: [&str; 16] = [
    "family",
    "l",
    "k",
    "s",
    "degree",
    "ln_abs_discr",
    "exceptional",
    "method_b_n0",
    "method_b_n",
    "method_a_n0",
    "method_a_n",
    "final",
    "margin",
    "borderline",
    "escalated",
    "delegated_from",
];

/// One row per candidate across all reports.
pub fn to_csv(reports: &[ReportDoc]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    let opt = |x: Option<u64>| x.map(|v| v.to_string()).unwrap_or_default();
    for r in reports {
        for c in &r.candidates {
            let (l, k, s) = match c.field {
                FieldKey::Single { l } => (Some(l), None, None),
                FieldKey::Pair { k, s } => (None, Some(k), Some(s)),
            };
            w.write_record([
                r.family.clone(),
                opt(l),
                opt(k),
                opt(s),
                c.degree.to_string(),
                c.ln_abs_discr.to_string(),
                c.exceptional.to_string(),
                opt(c.method_b.map(|m| m.n0)),
                opt(c.method_b.map(|m| m.n)),
                opt(c.method_a.map(|m| m.n0)),
                opt(c.method_a.map(|m| m.n)),
                c.final_n.to_string(),
                c.margin.to_string(),
                c.borderline.to_string(),
                c.escalated.to_string(),
                r.delegated_from.clone().unwrap_or_default(),
            ])?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn to_text(reports: &[ReportDoc], aggregate: Option<&AggregateDoc>) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "family {}", r.family);
        if let Some(src) = &r.delegated_from {
            let _ = writeln!(out, "  same inequalities as {src}; report reused");
        }
        let p = &r.params;
        let _ = write!(out, "  case {}  a={}  b1={}  b2={}", p.case, p.a, p.b1, p.b2);
        match p.s0 {
            Some(s0) => {
                let _ = writeln!(out, "  s0={s0}");
            }
            None => out.push('\n'),
        }
        let _ = match &r.thresholds {
            ThresholdsDoc::Case1 {
                l0,
                l1,
                delta,
                delta_at,
            } => {
                writeln!(out, "  L0={l0}  L1={l1}  Delta={delta} (at l={delta_at})")
            }
            ThresholdsDoc::Case2 {
                k0,
                k1,
                delta1,
                delta_at,
            } => writeln!(
                out,
                "  K0={k0}  K1={k1}  Delta1={delta1} (at k={}, s={})",
                delta_at[0], delta_at[1]
            ),
        };
        if !r.exceptional.ls.is_empty() {
            let _ = writeln!(out, "  exceptional l: {:?}", r.exceptional.ls);
        }
        if !r.exceptional.pairs.is_empty() {
            let pairs: Vec<String> = r.exceptional.pairs.iter().map(|[k, s]| format!("({k},{s})")).collect();
            let _ = writeln!(out, "  exceptional (k,s): {}", pairs.join(" "));
        }
        let w = &r.window;
        match (w.max_l, w.max_s, w.max_k) {
            (Some(l), _, _) => {
                let _ = writeln!(out, "  candidates: {} with l <= {l}", r.candidates.len());
            }
            (None, Some(s), Some(k)) => {
                let _ = writeln!(out, "  candidates: {} with s <= {s}, k <= {k}", r.candidates.len());
            }
            _ => {
                let _ = writeln!(out, "  candidates: {}", r.candidates.len());
            }
        }
        if let Some(d) = &r.max_field_degree {
            let _ = writeln!(out, "  largest [F:Q] = {} at {}", d.bound, d.at);
        }
        if let Some(b) = &r.max_method_b {
            let _ = writeln!(out, "  largest method B bound = {} at {}", b.bound, b.at);
        }
        for c in &r.special {
            let _ = writeln!(out, "  special {}: {}", c.label, c.bound);
        }
        for c in r.candidates.iter().filter(|c| c.borderline) {
            let _ = writeln!(
                out,
                "  borderline {} margin={:e} final={}",
                c.field, c.margin, c.final_n
            );
        }
        let _ = writeln!(out, "  [K:Q] <= {}", r.max_total_bound);
    }
    if let Some(a) = aggregate {
        let parts: Vec<String> = a
            .contributions
            .iter()
            .map(|c| format!("{}={}", c.label, c.bound))
            .collect();
        let _ = writeln!(out, "aggregate [K:Q] <= {}", a.bound);
        let _ = writeln!(out, "  {}", parts.join(" "));
    }
    out
}

/// Renders reports in the requested format.
pub fn render(format: Format, reports: &[ReportDoc], aggregate: Option<&AggregateDoc>) -> Result<String> {
    match (format, aggregate) {
        (Format::Json, Some(a)) => to_json(&CampaignDoc {
            reports: reports.to_vec(),
            aggregate: a.clone(),
        }),
        (Format::Json, None) if reports.len() == 1 => to_json(&reports[0]),
        (Format::Json, None) => to_json(&reports),
        (Format::Csv, _) => to_csv(reports),
        (Format::Text, a) => Ok(to_text(reports, a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportDoc {
        ReportDoc {
            family: "gamma6_2".into(),
            delegated_from: None,
            params: ParamsDoc {
                case: 1,
                a: 2.885_438_199_983_175_7,
                b1: -537824.0,
                b2: -32.0,
                s0: None,
            },
            gamma0: 2.885_438_199_983_175_7,
            thresholds: ThresholdsDoc::Case1 {
                l0: 1540,
                l1: 1595,
                delta: 0.158_547_777_637_648_88,
                delta_at: 1543,
            },
            exceptional: ExceptionalDoc {
                ls: vec![3, 4],
                pairs: vec![],
            },
            window: WindowDoc {
                scan_limit: 1595,
                max_l: Some(510),
                max_s: None,
                max_k: None,
                rows: vec![],
            },
            candidates: vec![CandidateDoc {
                field: FieldKey::Single { l: 19 },
                degree: 9,
                ln_abs_discr: 22.081_289_437_064_33,
                exceptional: true,
                method_b: None,
                method_a: Some(MethodDoc { n0: 7, n: 63 }),
                final_n: 63,
                margin: -0.000_271_151_477_933_782,
                borderline: false,
                escalated: true,
            }],
            max_field_degree: Some(BoundAt {
                bound: 9,
                at: FieldKey::Single { l: 19 },
            }),
            max_method_b: None,
            special: vec![],
            borderline_count: 0,
            max_total_bound: 63,
        }
    }

    #[test]
    fn json_round_trip() {
        let doc = sample();
        let back: ReportDoc = serde_json::from_str(&to_json(&doc).unwrap()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn candidate_keys_are_flat() {
        let v = serde_json::to_value(&sample().candidates[0]).unwrap();
        assert_eq!(v["l"], 19);
        assert_eq!(v["final"], 63);
        assert!(v.get("k").is_none());
    }

    #[test]
    fn csv_has_one_row_per_candidate() {
        let csv = to_csv(&[sample()]).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("gamma6_2,19,,,9,"));
    }
}
