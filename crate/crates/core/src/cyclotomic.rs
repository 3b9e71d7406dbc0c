//! Arithmetic of cyclotomic fields and their totally real subfields.
//!
//! `F_l = Q(cos 2pi/l)` has degree `phi(l)/2` for `l >= 3`, and
//! `F_{k,s} = Q(cos 2pi/k, cos 2pi/s)` has degree `phi(m) / (2 rho(k,s))`
//! with `m = lcm(k, s)`. Discriminants are evaluated in the log domain;
//! [`exact`] holds a big-integer evaluator for cross-checking small `l`.

use alloc::vec::Vec;

use crate::math::{ln, sin};
use crate::{Error, Result};

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing prime order. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Euler's totient.
pub fn euler_phi(l: u64) -> Result<u64> {
    if l == 0 {
        return Err(Error::InvalidArgument {
            what: "euler_phi needs l >= 1",
            value: 0,
        });
    }
    Ok(factorize(l).into_iter().fold(l, |acc, (p, _)| acc / p * (p - 1)))
}

/// The prime `p` if `l = p^t` with `t >= 1`, otherwise `None`.
pub fn prime_power_base(l: u64) -> Option<u64> {
    match factorize(l).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

fn check_at_least_3(l: u64, what: &'static str) -> Result<()> {
    if l < 3 {
        return Err(Error::InvalidArgument { what, value: l as i64 });
    }
    Ok(())
}

/// `gamma(l) = N_{F_l/Q}(4 sin^2(pi/l))`: `p` when `l = p^t`, else 1.
pub fn gamma_norm(l: u64) -> Result<u64> {
    check_at_least_3(l, "gamma_norm needs l >= 3")?;
    Ok(prime_power_base(l).unwrap_or(1))
}

/// `N_{F_l/Q}(4 sin^2(2pi/l))`.
pub fn gamma_tilde(l: u64) -> Result<u64> {
    check_at_least_3(l, "gamma_tilde needs l >= 3")?;
    if l == 4 {
        return Ok(4);
    }
    if l % 2 == 1 {
        return gamma_norm(l);
    }
    let half = l / 2;
    let g = gamma_norm(half)?;
    Ok(if half % 2 == 1 { g } else { g * g })
}

/// `ln gamma(l) / phi(l)`, the per-factor loss that decides exceptionality.
pub fn log_gamma_per_phi(l: u64) -> Result<f64> {
    Ok(ln(gamma_norm(l)? as f64) / euler_phi(l)? as f64)
}

/// Natural log of `|discr Q(zeta_l)| = l^phi(l) / prod_{p | l} p^(phi(l)/(p-1))`.
pub fn ln_discr_cyclotomic(l: u64) -> Result<f64> {
    check_at_least_3(l, "ln_discr_cyclotomic needs l >= 3")?;
    let phi = euler_phi(l)? as f64;
    let correction: f64 = factorize(l)
        .into_iter()
        .map(|(p, _)| phi / (p - 1) as f64 * ln(p as f64))
        .sum();
    Ok(phi * ln(l as f64) - correction)
}

/// Natural log of `|discr F_l|`.
pub fn ln_discr_real_subfield(l: u64) -> Result<f64> {
    Ok((ln_discr_cyclotomic(l)? - ln(gamma_tilde(l)? as f64)) / 2.0)
}

/// 2 when `gcd(k, s)` divides 2, otherwise 1.
pub fn rho(k: u64, s: u64) -> Result<u64> {
    check_at_least_3(k, "rho needs k >= 3")?;
    check_at_least_3(s, "rho needs s >= 3")?;
    Ok(if 2 % gcd(k, s) == 0 { 2 } else { 1 })
}

/// `[F_{k,s} : Q] = phi(lcm(k, s)) / (2 rho(k, s))`.
pub fn degree_fks(k: u64, s: u64) -> Result<u64> {
    let r = rho(k, s)?;
    Ok(euler_phi(lcm(k, s))? / (2 * r))
}

/// Natural log of `|discr F_{k,s}|`.
pub fn ln_discr_fks(k: u64, s: u64) -> Result<f64> {
    if rho(k, s)? == 1 {
        // F_{k,s} = F_m
        return ln_discr_real_subfield(lcm(k, s));
    }
    let half_phi_k = (euler_phi(k)? / 2) as f64;
    let half_phi_s = (euler_phi(s)? / 2) as f64;
    Ok(half_phi_s * ln_discr_real_subfield(k)? + half_phi_k * ln_discr_real_subfield(s)?)
}

/// Numeric norm of `4 sin^2(numerator * pi * j / l)` over one `j` from each
/// `{j, -j}` class of units mod `l`. With numerator 1 this is `gamma(l)`,
/// with numerator 2 it is `gamma_tilde(l)`.
pub fn norm_oracle(l: u64, angle_numerator: u32) -> Result<f64> {
    check_at_least_3(l, "norm_oracle needs l >= 3")?;
    let mut prod = 1.0;
    // j and l - j are the same class, so 1 <= j < l/2 covers each once.
    for j in (1..l).take_while(|j| 2 * j < l) {
        if gcd(j, l) != 1 {
            continue;
        }
        let x = sin(angle_numerator as f64 * core::f64::consts::PI * j as f64 / l as f64);
        prod *= 4.0 * x * x;
    }
    Ok(prod)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldKind {
    /// `F_l`.
    Single { l: u64 },
    /// `F_{k,s}`, stored with `k >= s`.
    Pair { k: u64, s: u64 },
}

/// A real cyclotomic field together with its degree and log-discriminant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub degree: u64,
    pub ln_abs_discr: f64,
}

impl FieldSpec {
    pub fn single(l: u64) -> Result<Self> {
        Ok(FieldSpec {
            kind: FieldKind::Single { l },
            degree: euler_phi(l)? / 2,
            ln_abs_discr: ln_discr_real_subfield(l)?,
        })
    }

    /// The compositum of `F_k` and `F_s`; arguments may come in either order.
    pub fn pair(k: u64, s: u64) -> Result<Self> {
        let (k, s) = if k >= s { (k, s) } else { (s, k) };
        Ok(FieldSpec {
            kind: FieldKind::Pair { k, s },
            degree: degree_fks(k, s)?,
            ln_abs_discr: ln_discr_fks(k, s)?,
        })
    }
}

/// Exact big-integer discriminants, feasible for small `l`.
pub mod exact {
    use num_bigint::BigUint;
    use num_traits::{One, ToPrimitive};

    use super::{euler_phi, factorize, gamma_tilde};
    use crate::math::ln;
    use crate::{Error, Result};

    /// `|discr Q(zeta_l)|` as an exact integer.
    pub fn discr_cyclotomic(l: u64) -> Result<BigUint> {
        let phi = euler_phi(l)?;
        let mut num = BigUint::from(l).pow(phi as u32);
        let mut den = BigUint::one();
        for (p, _) in factorize(l) {
            den *= BigUint::from(p).pow((phi / (p - 1)) as u32);
        }
        if &num % &den != BigUint::ZERO {
            return Err(Error::InvalidArgument {
                what: "non-integral cyclotomic discriminant",
                value: l as i64,
            });
        }
        num /= den;
        Ok(num)
    }

    /// `|discr F_l|`, requiring the quotient by `gamma_tilde(l)` to be a
    /// perfect square.
    pub fn discr_real_subfield(l: u64) -> Result<BigUint> {
        let full = discr_cyclotomic(l)?;
        let gt = BigUint::from(gamma_tilde(l)?);
        if &full % &gt != BigUint::ZERO {
            return Err(Error::InvalidArgument {
                what: "gamma_tilde does not divide the discriminant",
                value: l as i64,
            });
        }
        let quotient = full / gt;
        let root = quotient.sqrt();
        if &root * &root != quotient {
            return Err(Error::InvalidArgument {
                what: "discriminant quotient is not a square",
                value: l as i64,
            });
        }
        Ok(root)
    }

    /// Natural log of a positive big integer, accurate to double precision.
    pub fn ln_big(x: &BigUint) -> f64 {
        let bits = x.bits();
        if bits <= 63 {
            return ln(x.to_u64().unwrap_or(0) as f64);
        }
        let shift = bits - 63;
        let top = (x >> shift).to_u64().unwrap_or(0) as f64;
        ln(top) + shift as f64 * core::f64::consts::LN_2
    }
}
