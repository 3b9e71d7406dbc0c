//! Right-angled hyperbolic pentagons and the pentagon with one angle `pi/k`.
//!
//! For a right-angled pentagon with consecutive sides `beta_1..beta_5`, the
//! non-adjacent Gram entries `b_ij` satisfy five quadratic relations. In the
//! coordinates `q_ij = 4 - b_ij^2` they read `q14 = 4 - q13 q24 / 4` and its
//! cyclic shifts. Taking `x = q13`, `y = q24` as free variables, the product
//! `A = q13 q14 q24 q25 q35` equals `2^6 F(x, y)` along the constraint set,
//! and the Gram product `gamma = -A / 2^5` is minimised where `F` peaks.

use crate::math::{cos, sqrt};
use crate::{Error, Result};

/// Gram entries across non-adjacent sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PentagonGram {
    pub b13: f64,
    pub b14: f64,
    pub b24: f64,
    pub b25: f64,
    pub b35: f64,
}

impl PentagonGram {
    /// Residuals of `4 b14^2 = (4 - b13^2)(4 - b24^2)` and its cyclic shifts.
    pub fn residuals(&self) -> [f64; 5] {
        let g = |x: f64| 4.0 - x * x;
        [
            4.0 * self.b14 * self.b14 - g(self.b13) * g(self.b24),
            4.0 * self.b24 * self.b24 - g(self.b14) * g(self.b25),
            4.0 * self.b25 * self.b25 - g(self.b24) * g(self.b35),
            4.0 * self.b35 * self.b35 - g(self.b25) * g(self.b13),
            4.0 * self.b13 * self.b13 - g(self.b35) * g(self.b14),
        ]
    }

    pub fn product(&self) -> f64 {
        self.b13 * self.b14 * self.b24 * self.b25 * self.b35
    }
}

/// `q_ij = 4 - b_ij^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QCoordinates {
    pub q13: f64,
    pub q14: f64,
    pub q24: f64,
    pub q25: f64,
    pub q35: f64,
}

impl QCoordinates {
    pub fn product(&self) -> f64 {
        self.q13 * self.q14 * self.q24 * self.q25 * self.q35
    }

    /// Positive square roots `b_ij = sqrt(4 - q_ij)`.
    pub fn to_gram(&self) -> PentagonGram {
        let b = |q: f64| sqrt(4.0 - q);
        PentagonGram {
            b13: b(self.q13),
            b14: b(self.q14),
            b24: b(self.q24),
            b25: b(self.q25),
            b35: b(self.q35),
        }
    }

    /// The Gram product `gamma = -A / 2^5`.
    pub fn gamma(&self) -> f64 {
        -self.product() / 32.0
    }
}

pub fn pentagon_residuals(q: &QCoordinates) -> [f64; 5] {
    [
        q.q14 - 4.0 + q.q13 * q.q24 / 4.0,
        q.q24 - 4.0 + q.q14 * q.q25 / 4.0,
        q.q25 - 4.0 + q.q24 * q.q35 / 4.0,
        q.q35 - 4.0 + q.q25 * q.q13 / 4.0,
        q.q13 - 4.0 + q.q35 * q.q14 / 4.0,
    ]
}

/// Solves the first, fifth and third relations for `q14`, `q35`, `q25`
/// given `q13 = x` and `q24 = y`. The second and fourth relations are left
/// as residuals.
pub fn complete_right_pentagon(x: f64, y: f64) -> Result<QCoordinates> {
    let q14 = 4.0 - x * y / 4.0;
    if q14 == 0.0 {
        return Err(Error::DegenerateConfiguration);
    }
    let q35 = 4.0 * (4.0 - x) / q14;
    let q25 = 4.0 - y * q35 / 4.0;
    Ok(QCoordinates {
        q13: x,
        q14,
        q24: y,
        q25,
        q35,
    })
}

/// `F(x, y) = (x^2 y^2 + 16xy - 4x^2 y - 4xy^2) / (16 - xy)`.
pub fn objective_f(x: f64, y: f64) -> Result<f64> {
    let den = 16.0 - x * y;
    if den == 0.0 {
        return Err(Error::SingularInput);
    }
    Ok((x * x * y * y + 16.0 * x * y - 4.0 * x * x * y - 4.0 * x * y * y) / den)
}

/// Closed-form partial derivatives of [`objective_f`].
pub fn objective_f_gradient(x: f64, y: f64) -> Result<(f64, f64)> {
    let den = 16.0 - x * y;
    if den == 0.0 {
        return Err(Error::SingularInput);
    }
    let d2 = den * den;
    let (x2, y2) = (x * x, y * y);
    let fx = (-x2 * y2 * y + 4.0 * x2 * y2 + 32.0 * y2 * x - 128.0 * x * y - 64.0 * y2 + 256.0 * y) / d2;
    let fy = (-x2 * x * y2 + 4.0 * x2 * y2 + 32.0 * x2 * y - 128.0 * x * y - 64.0 * x2 + 256.0 * x) / d2;
    Ok((fx, fy))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMaximum {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

/// Maximum of `F` on the interior grid `{step, 2 step, ...} ^ 2` of `(0, 4)^2`.
/// Ties keep the lexicographically smallest `(x, y)`.
pub fn grid_maximum(step: f64) -> GridMaximum {
    let n = (4.0 / step) as u64;
    let mut best = GridMaximum {
        x: f64::NAN,
        y: f64::NAN,
        value: f64::NEG_INFINITY,
    };
    for i in 1..n {
        let x = i as f64 * step;
        for j in 1..n {
            let y = j as f64 * step;
            if let Ok(v) = objective_f(x, y) {
                if v > best.value {
                    best = GridMaximum { x, y, value: v };
                }
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaMinimum {
    pub argmin: QCoordinates,
    /// `min gamma = -2 F_max`.
    pub min_value: f64,
    pub f_max: f64,
    pub grid: GridMaximum,
    /// Largest `F` seen on a sampling of the boundary of `[0, 4]^2`.
    pub boundary_max: f64,
    pub newton_steps: u32,
}

/// Grid step of the coarse search.
pub const GRID_STEP: f64 = 1e-3;
/// Step-size tolerance of the refinement.
pub const REFINE_TOL: f64 = 1e-12;

/// Minimum of the right-angled pentagon Gram product: coarse grid on
/// `(0, 4)^2`, then damped Newton on the closed-form gradient.
pub fn minimize_gamma() -> Result<GammaMinimum> {
    let grid = grid_maximum(GRID_STEP);
    let (mut x, mut y) = (grid.x, grid.y);
    let mut f = grid.value;
    let mut steps = 0;
    for _ in 0..100 {
        steps += 1;
        let (gx, gy) = objective_f_gradient(x, y)?;
        // Hessian by central differences of the exact gradient.
        let h = 1e-6;
        let (gxp, gyp) = objective_f_gradient(x + h, y)?;
        let (gxm, gym) = objective_f_gradient(x - h, y)?;
        let (gxq, gyq) = objective_f_gradient(x, y + h)?;
        let (gxr, gyr) = objective_f_gradient(x, y - h)?;
        let hxx = (gxp - gxm) / (2.0 * h);
        let hyy = (gyq - gyr) / (2.0 * h);
        let hxy = 0.5 * ((gyp - gym) + (gxq - gxr)) / (2.0 * h);
        let det = hxx * hyy - hxy * hxy;
        if det == 0.0 {
            break;
        }
        let dx = -(hyy * gx - hxy * gy) / det;
        let dy = -(hxx * gy - hxy * gx) / det;
        // Damp until the step stays inside the box and does not lose ground.
        let mut t = 1.0;
        let accepted = loop {
            let (nx, ny) = (x + t * dx, y + t * dy);
            if nx > 0.0 && nx < 4.0 && ny > 0.0 && ny < 4.0 {
                let nf = objective_f(nx, ny)?;
                if nf >= f - 1e-15 {
                    break Some((nx, ny, nf));
                }
            }
            t *= 0.5;
            if t < 1e-6 {
                break None;
            }
        };
        let Some((nx, ny, nf)) = accepted else { break };
        let moved = libm::hypot(nx - x, ny - y);
        (x, y, f) = (nx, ny, nf);
        if moved < REFINE_TOL {
            break;
        }
    }
    let argmin = complete_right_pentagon(x, y)?;
    Ok(GammaMinimum {
        argmin,
        min_value: -2.0 * f,
        f_max: f,
        grid,
        boundary_max: boundary_maximum(),
        newton_steps: steps,
    })
}

fn boundary_maximum() -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..=4000 {
        let t = i as f64 * 1e-3;
        for (x, y) in [(0.0, t), (4.0, t), (t, 0.0), (t, 4.0)] {
            if let Ok(v) = objective_f(x, y) {
                best = best.max(v);
            }
        }
    }
    best
}

/// Determinant of the Gram matrix of `beta_1, beta_2, beta_4` for the
/// pentagon with one angle `pi/k`, where `c = 2 cos(pi/k)`.
pub fn gram_det_124(c: f64, b14: f64, b24: f64) -> f64 {
    -8.0 + 2.0 * c * b14 * b24 + 2.0 * b14 * b14 + 2.0 * b24 * b24 + 2.0 * c * c
}

/// `a14^2 + a24^2 + 2 cos(pi/k) a14 a24`.
pub fn gamma61_alpha(a14: f64, a24: f64, k: u64) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidArgument {
            what: "gamma61_alpha needs k >= 2",
            value: k as i64,
        });
    }
    let c = cos(core::f64::consts::PI / k as f64);
    Ok(a14 * a14 + a24 * a24 + 2.0 * c * a14 * a24)
}

/// Strict upper bound for the average number of faces adjacent to a
/// codimension-two face: `4 + 4/(n-2)` for even `n`, `4 + 4/(n-3)` for odd `n`.
pub fn average_face_bound(n: u64) -> Result<f64> {
    if n < 4 {
        return Err(Error::InvalidArgument {
            what: "average_face_bound needs n >= 4",
            value: n as i64,
        });
    }
    let d = if n.is_multiple_of(2) { n - 2 } else { n - 3 };
    Ok(4.0 + 4.0 / d as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GAMMA0;

    const X_STAR: f64 = 2.472_135_954_999_579; // 2 (sqrt 5 - 1)

    #[test]
    fn residuals_vanish_at_equal_coordinates() {
        let q = QCoordinates {
            q13: X_STAR,
            q14: X_STAR,
            q24: X_STAR,
            q25: X_STAR,
            q35: X_STAR,
        };
        assert!(pentagon_residuals(&q).iter().all(|r| r.abs() < 1e-12));
        let g = q.to_gram();
        assert!(g.residuals().iter().all(|r| r.abs() < 1e-10));
    }

    #[test]
    fn residuals_on_boundary() {
        // A degenerate solution on the boundary of the box: every relation
        // holds, but the product collapses to zero.
        let q = QCoordinates {
            q13: 4.0,
            q14: 0.0,
            q24: 4.0,
            q25: 4.0,
            q35: 0.0,
        };
        assert_eq!(pentagon_residuals(&q), [0.0; 5]);
        assert_eq!(q.product(), 0.0);
    }

    #[test]
    fn completion_examples() {
        let q = complete_right_pentagon(X_STAR, X_STAR).unwrap();
        assert!(pentagon_residuals(&q).iter().all(|r| r.abs() < 1e-12));
        assert_eq!(complete_right_pentagon(4.0, 4.0), Err(Error::DegenerateConfiguration));
        let q = complete_right_pentagon(2.0, 2.0).unwrap();
        assert_eq!(q.q14, 3.0);
        assert!((q.q35 - 8.0 / 3.0).abs() < 1e-15 && (q.q25 - 8.0 / 3.0).abs() < 1e-15);
        // the two leftover relations close as well: the system has two degrees of freedom
        assert!(pentagon_residuals(&q).iter().all(|r| r.abs() < 1e-14));
        let q = complete_right_pentagon(1.3, 0.7).unwrap();
        assert!(pentagon_residuals(&q).iter().all(|r| r.abs() < 1e-13));
    }

    #[test]
    fn objective_examples() {
        let peak = objective_f(X_STAR, X_STAR).unwrap();
        assert!((peak - GAMMA0 / 2.0).abs() < 1e-12);
        assert!((peak - 1.442_719_1).abs() < 1e-7);
        assert_eq!(objective_f(0.0, 1.7).unwrap(), 0.0);
        assert!((objective_f(2.0, 2.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(objective_f(4.0, 4.0), Err(Error::SingularInput));
    }

    #[test]
    fn gamma_minimum() {
        let m = minimize_gamma().unwrap();
        assert!((m.min_value + GAMMA0).abs() < 1e-9, "{m:?}");
        for q in [m.argmin.q13, m.argmin.q14, m.argmin.q24, m.argmin.q25, m.argmin.q35] {
            assert!((q - X_STAR).abs() < 1e-6);
        }
        let (gx, gy) = objective_f_gradient(m.argmin.q13, m.argmin.q24).unwrap();
        assert!(gx.abs() < 1e-8 && gy.abs() < 1e-8);
        assert!(m.boundary_max < m.f_max);
        assert!((m.argmin.gamma() - m.min_value).abs() < 1e-9);
    }

    #[test]
    fn det_124_examples() {
        assert_eq!(gram_det_124(0.0, 0.0, 0.0), -8.0);
        assert!((gram_det_124(1.0, 2.5, 2.5) - 31.5).abs() < 1e-12);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(gamma61_alpha(0.0, 0.0, 3).unwrap(), 0.0);
        assert!((gamma61_alpha(2.0, 2.0, 3).unwrap() - 12.0).abs() < 1e-12);
        let near_limit = gamma61_alpha(14.0, 14.0, 1_000_000).unwrap();
        assert!(near_limit < 784.0 && near_limit > 783.99);
        assert!(gamma61_alpha(1.0, 1.0, 1).is_err());
    }

    #[test]
    fn face_bound_examples() {
        assert_eq!(average_face_bound(4).unwrap(), 6.0);
        assert_eq!(average_face_bound(5).unwrap(), 6.0);
        assert_eq!(average_face_bound(6).unwrap(), 5.0);
        assert!(average_face_bound(3).is_err());
    }
}
