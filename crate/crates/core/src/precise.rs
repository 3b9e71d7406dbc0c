//! Arbitrary-precision re-evaluation of the norm-bound ratio.
//!
//! Used when a double-precision ratio lands within epsilon of an integer, so
//! that its floor is decided at 30+ significant digits instead.

use astro_float::{BigFloat, Consts, RoundingMode};

use crate::cyclotomic::{euler_phi, gamma_norm};
use crate::Result;

const RM: RoundingMode = RoundingMode::ToEven;

pub struct Precise {
    bits: usize,
    cc: Consts,
}

impl Precise {
    /// An evaluator carrying at least `digits` significant decimal digits.
    pub fn with_digits(digits: u32) -> Self {
        // log2(10) bits per digit plus two guard words
        let bits = (digits as usize * 3322).div_ceil(1000) + 128;
        Precise {
            bits,
            cc: Consts::new().expect("constant cache allocation"),
        }
    }

    pub fn from_f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.bits)
    }

    pub fn from_u64(&self, x: u64) -> BigFloat {
        BigFloat::from_u64(x, self.bits)
    }

    pub fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(self.bits, RM, &mut self.cc)
    }

    pub fn div(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.div(y, self.bits, RM)
    }

    pub fn mul(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.mul(y, self.bits, RM)
    }

    pub fn sub(&self, x: &BigFloat, y: &BigFloat) -> BigFloat {
        x.sub(y, self.bits, RM)
    }

    /// `ln sin(pi / l)`.
    pub fn ln_sin_pi_over(&mut self, l: u64) -> BigFloat {
        let pi = self.cc.pi(self.bits, RM);
        let angle = self.div(&pi, &self.from_u64(l));
        let s = angle.sin(self.bits, RM, &mut self.cc);
        self.ln(&s)
    }

    /// `ln gamma(l) / phi(l)`.
    pub fn log_gamma_per_phi(&mut self, l: u64) -> Result<BigFloat> {
        let g = self.from_u64(gamma_norm(l)?);
        let lg = self.ln(&g);
        Ok(self.div(&lg, &self.from_u64(euler_phi(l)?)))
    }

    /// `ln(c / sqrt(a))`.
    fn ln_c_over_sqrt(&mut self, c: u64, a: f64) -> BigFloat {
        let root = self.from_f64(a).sqrt(self.bits, RM);
        let q = self.div(&self.from_u64(c), &root);
        self.ln(&q)
    }

    /// `ln sqrt(b / a)`.
    fn ln_sqrt_ratio(&mut self, b: f64, a: f64) -> BigFloat {
        let q = self.div(&self.from_f64(b), &self.from_f64(a));
        let l = self.ln(&q);
        self.div(&l, &self.from_u64(2))
    }

    /// The single-field norm-bound ratio whose floor bounds `[K : F_l]`.
    pub fn case1_ratio(&mut self, l: u64, a: f64, b: f64) -> Result<BigFloat> {
        let mut num = self.ln_sqrt_ratio(b, a);
        let ls = self.ln_sin_pi_over(l);
        num = self.sub(&num, &ls);
        let base = self.ln_c_over_sqrt(2, a);
        let lg = self.log_gamma_per_phi(l)?;
        let den = self.mul(&self.from_u64(euler_phi(l)? / 2), &self.sub(&base, &lg));
        Ok(self.div(&num, &den))
    }

    /// The pair norm-bound ratio whose floor bounds `[K : F_{k,s}]`.
    pub fn case2_ratio(&mut self, k: u64, s: u64, a: f64, b: f64, degree: u64) -> Result<BigFloat> {
        let mut num = self.ln_sqrt_ratio(b, a);
        let lk = self.ln_sin_pi_over(k);
        let ls = self.ln_sin_pi_over(s);
        num = self.sub(&self.sub(&num, &lk), &ls);
        let mut den = self.ln_c_over_sqrt(4, a);
        let gk = self.log_gamma_per_phi(k)?;
        let gs = self.log_gamma_per_phi(s)?;
        den = self.sub(&self.sub(&den, &gk), &gs);
        den = self.mul(&self.from_u64(degree), &den);
        Ok(self.div(&num, &den))
    }

    /// Floor of a nonnegative value, given a nearby double approximation.
    pub fn floor_near(&self, x: &BigFloat, approx: f64) -> Option<u64> {
        let f = x.floor();
        let guess = crate::math::floor(approx).max(0.0) as u64;
        (guess.saturating_sub(2)..=guess + 2).find(|&n| f.cmp(&self.from_u64(n)) == Some(0))
    }

    /// Sign of `x` as -1, 0 or 1.
    pub fn signum(x: &BigFloat) -> i8 {
        if x.is_zero() {
            0
        } else if x.is_negative() {
            -1
        } else {
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_of_simple_ratio() {
        let mut p = Precise::with_digits(30);
        let x = p.div(&p.from_u64(7), &p.from_u64(2));
        assert_eq!(p.floor_near(&x, 3.5), Some(3));
        let l = p.ln(&p.from_u64(1));
        assert_eq!(Precise::signum(&l), 0);
    }

    #[test]
    fn ln_sin_matches_double() {
        let mut p = Precise::with_digits(30);
        let v = p.ln_sin_pi_over(7);
        let d = (core::f64::consts::PI / 7.0).sin().ln();
        let diff = p.sub(&v, &p.from_f64(d));
        let tol = p.from_f64(1e-15);
        assert!(diff.abs().cmp(&tol) == Some(-1));
    }
}
