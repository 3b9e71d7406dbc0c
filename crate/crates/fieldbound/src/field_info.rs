use std::fmt;

use serde::{Deserialize, Serialize};

use fieldbound_core::cyclotomic::{self, exact, FieldSpec};
use fieldbound_core::Result;

use crate::report::FieldKey;

/// Exact discriminants are printed only up to this `l`; beyond it the
/// integer has thousands of digits.
pub const EXACT_DISCR_LIMIT: u64 = 2000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub l: u64,
    pub phi: u64,
    pub gamma: u64,
    pub gamma_tilde: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldInfo {
    #[serde(flatten)]
    pub field: FieldKey,
    pub degree: u64,
    pub ln_abs_discr: f64,
    /// Decimal `|discr|` when it was computed exactly.
    pub discr: Option<String>,
    pub rho: Option<u64>,
    pub factors: Vec<Factor>,
}

fn factor(l: u64) -> Result<Factor> {
    Ok(Factor {
        l,
        phi: cyclotomic::euler_phi(l)?,
        gamma: cyclotomic::gamma_norm(l)?,
        gamma_tilde: cyclotomic::gamma_tilde(l)?,
    })
}

/// `F_l`.
pub fn single(l: u64) -> Result<FieldInfo> {
    let spec = FieldSpec::single(l)?;
    let discr = if l <= EXACT_DISCR_LIMIT {
        Some(exact::discr_real_subfield(l)?.to_string())
    } else {
        None
    };
    Ok(FieldInfo {
        field: FieldKey::Single { l },
        degree: spec.degree,
        ln_abs_discr: spec.ln_abs_discr,
        discr,
        rho: None,
        factors: vec![factor(l)?],
    })
}

/// `F_{k,s}`.
pub fn pair(k: u64, s: u64) -> Result<FieldInfo> {
    let spec = FieldSpec::pair(k, s)?;
    let (k, s) = (k.max(s), k.min(s));
    let rho = cyclotomic::rho(k, s)?;
    let m = cyclotomic::lcm(k, s);
    // With rho = 1 the compositum is F_lcm and its discriminant is exact.
    let discr = if rho == 1 && m <= EXACT_DISCR_LIMIT {
        Some(exact::discr_real_subfield(m)?.to_string())
    } else {
        None
    };
    Ok(FieldInfo {
        field: FieldKey::Pair { k, s },
        degree: spec.degree,
        ln_abs_discr: spec.ln_abs_discr,
        discr,
        rho: Some(rho),
        factors: vec![factor(k)?, factor(s)?],
    })
}

impl fmt::Display for FieldInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            FieldKey::Single { l } => writeln!(f, "field F_{l}")?,
            FieldKey::Pair { k, s } => writeln!(f, "field F_{{{k},{s}}}")?,
        }
        writeln!(f, "  degree        {}", self.degree)?;
        writeln!(f, "  ln|discr|     {}", self.ln_abs_discr)?;
        if let Some(d) = &self.discr {
            writeln!(f, "  |discr|       {d}")?;
        }
        if let Some(r) = self.rho {
            writeln!(f, "  rho           {r}")?;
        }
        for c in &self.factors {
            writeln!(
                f,
                "  l={}: phi={} gamma={} gamma~={}",
                c.l, c.phi, c.gamma, c.gamma_tilde
            )?;
        }
        Ok(())
    }
}
