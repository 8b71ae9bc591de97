//! The model twist profile on the annulus of the Dehn twist.
//!
//! The profile is `R̃(t) = t/2 - ¼√(1 + 4t²)` (base radius fixed at one). Its
//! derivative is the slope of the Reeb flow on the torus `{|x| = t}`; a
//! rational slope `p/q` is realised by exactly one torus on each side of the
//! vanishing cycle.

use serde::Serialize;

use crate::{Error, Result};

/// Default half-width of the twist annulus.
pub const DEFAULT_LAMBDA: f64 = 10.0;

/// Global model parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwistProfile {
    fiber_genus: u32,
    degree_bound: u32,
    fiber_area: f64,
    lambda: f64,
}

impl TwistProfile {
    pub fn new(fiber_genus: u32, degree_bound: u32, fiber_area: f64, lambda: f64) -> Result<Self> {
        if fiber_genus < 2 {
            return Err(Error::Profile(format!(
                "fiber genus must be at least 2, got {fiber_genus}"
            )));
        }
        if degree_bound == 0 {
            return Err(Error::Profile("degree bound must be positive".into()));
        }
        if degree_bound + 1 == fiber_genus {
            return Err(Error::Profile(format!(
                "degree bound {degree_bound} equals g(F) - 1 = {}",
                fiber_genus - 1
            )));
        }
        if !(fiber_area.is_finite() && fiber_area > degree_bound as f64) {
            return Err(Error::Profile(format!(
                "fiber area {fiber_area} must exceed the degree bound {degree_bound}"
            )));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::Profile(format!("annulus half-width {lambda} must be positive")));
        }
        Ok(TwistProfile {
            fiber_genus,
            degree_bound,
            fiber_area,
            lambda,
        })
    }

    /// Profile with fiber area `4Q` and the default annulus.
    pub fn with_defaults(fiber_genus: u32, degree_bound: u32) -> Result<Self> {
        Self::new(
            fiber_genus,
            degree_bound,
            4.0 * degree_bound as f64,
            DEFAULT_LAMBDA,
        )
    }

    pub fn fiber_genus(&self) -> u32 {
        self.fiber_genus
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn fiber_area(&self) -> f64 {
        self.fiber_area
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Like [`position_of_slope`], but rejects tori outside this annulus.
    pub fn position_of_slope(&self, s: f64) -> Result<f64> {
        let x0 = position_of_slope(s)?;
        if x0.abs() > self.lambda {
            return Err(Error::OutsideAnnulus {
                x0: x0.abs(),
                lambda: self.lambda,
            });
        }
        Ok(x0)
    }
}

fn check_nonnegative(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("profile argument must be a finite t >= 0, got {t}")))
    }
}

/// `R̃_r(t) = t/2 - ¼√(r² + 4t²)` for a general base radius `r`.
///
/// Evaluated as `-r² / (8t + 4√(r² + 4t²))` to avoid cancellation at large t.
pub fn r_tilde_radius(r: f64, t: f64) -> f64 {
    let root = (r * r + 4.0 * t * t).sqrt();
    -(r * r) / (8.0 * t + 4.0 * root)
}

/// The profile at unit base radius; lies in `(-1/4, 0)`.
pub fn r_tilde(t: f64) -> Result<f64> {
    check_nonnegative(t)?;
    Ok(r_tilde_radius(1.0, t))
}

/// `R̃'(t) = 1/2 - t/√(1 + 4t²)`, strictly decreasing with values in `(0, 1/2]`.
pub fn slope_at(t: f64) -> Result<f64> {
    check_nonnegative(t)?;
    let root = (1.0 + 4.0 * t * t).sqrt();
    Ok(0.5 / (root * (root + 2.0 * t)))
}

/// Signed annulus coordinate of the Morse–Bott torus of slope `s`.
///
/// Slopes below one half sit at `x0 > 0` with `R̃'(x0) = s`; slopes above one
/// half sit at `x0 < 0` with `R̃'(-x0) = 1 - s`.
pub fn position_of_slope(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("slope {s} is not in the open interval (0, 1)")));
    }
    if s > 0.5 {
        return Ok(-position_of_slope(1.0 - s)?);
    }
    Ok((1.0 - 2.0 * s) / (4.0 * (s * (1.0 - s)).sqrt()))
}

/// The constant `h >= 0` with `cosh²h = √(x0² + 1/4) + 1/2`, i.e. `sinh(2h)/2 = |x0|`.
pub fn h_of_position(x0: f64) -> f64 {
    (2.0 * x0.abs()).asinh() / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn r_tilde_values() {
        assert_eq!(r_tilde(0.0).unwrap(), -0.25);
        let t = 1.0 / (2.0 * 3f64.sqrt());
        assert!(rel_close(r_tilde(t).unwrap(), -1.0 / (4.0 * 3f64.sqrt()), 1e-14));
        for &t in &[1e-6, 0.1, 1.0, 10.0, 1e6] {
            let v = r_tilde(t).unwrap();
            assert!(v > -0.25 && v < 0.0, "{t} -> {v}");
            // direct closed form agrees away from the cancellation regime
            if t < 100.0 {
                assert!((v - (t / 2.0 - 0.25 * (1.0 + 4.0 * t * t).sqrt())).abs() < 1e-14);
            }
        }
        assert!(r_tilde(-0.1).is_err());
    }

    #[test]
    fn slope_values() {
        assert_eq!(slope_at(0.0).unwrap(), 0.5);
        let t = 1.0 / (2.0 * 3f64.sqrt());
        assert!(rel_close(slope_at(t).unwrap(), 0.25, 1e-14));
        assert!(slope_at(f64::NAN).is_err());
    }

    #[test]
    fn slope_is_derivative_of_profile() {
        let h = 1e-5;
        for i in 1..200 {
            let t = i as f64 * 0.05;
            let fd = (r_tilde(t + h).unwrap() - r_tilde(t - h).unwrap()) / (2.0 * h);
            assert!((fd - slope_at(t).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn monotone_and_concave_on_grid() {
        let grid: Vec<f64> = (0..=400).map(|i| i as f64 * 0.025).collect();
        let r: Vec<f64> = grid.iter().map(|&t| r_tilde(t).unwrap()).collect();
        let s: Vec<f64> = grid.iter().map(|&t| slope_at(t).unwrap()).collect();
        for w in r.windows(2) {
            assert!(w[1] > w[0]);
        }
        for w in r.windows(3) {
            assert!(w[2] - 2.0 * w[1] + w[0] <= 0.0);
        }
        for w in s.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn position_values() {
        assert_eq!(position_of_slope(0.5).unwrap(), 0.0);
        let x = 1.0 / (2.0 * 3f64.sqrt());
        assert!(rel_close(position_of_slope(0.25).unwrap(), x, 1e-14));
        assert!(rel_close(position_of_slope(0.75).unwrap(), -x, 1e-14));
        assert!(position_of_slope(0.0).is_err());
        assert!(position_of_slope(1.0).is_err());
        assert!(position_of_slope(1.5).is_err());
    }

    #[test]
    fn position_inverts_slope() {
        for q in 2..=12u32 {
            for p in 1..q {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let s = p as f64 / q as f64;
                let x0 = position_of_slope(s).unwrap();
                let back = slope_at(x0.abs()).unwrap();
                assert!(rel_close(back, s.min(1.0 - s), 1e-12), "{p}/{q}");
                assert_eq!(x0 >= 0.0, s <= 0.5);
            }
        }
    }

    #[test]
    fn h_values() {
        assert_eq!(h_of_position(0.0), 0.0);
        assert!((h_of_position(2f64.sinh() / 2.0) - 1.0).abs() < 1e-14);
        assert_eq!(h_of_position(-0.7), h_of_position(0.7));
        for i in 0..100 {
            let x = i as f64 * 0.1 - 5.0;
            let c2 = h_of_position(x).cosh().powi(2);
            assert!(rel_close(c2, (x * x + 0.25).sqrt() + 0.5, 1e-12));
            if x != 0.0 {
                assert!(rel_close(c2 * (c2 - 1.0), x * x, 1e-12));
            }
        }
    }

    #[test]
    fn profile_invariants() {
        assert!(TwistProfile::with_defaults(1, 3).is_err());
        assert!(TwistProfile::with_defaults(4, 3).is_err());
        assert!(TwistProfile::with_defaults(3, 0).is_err());
        assert!(TwistProfile::new(5, 3, 3.0, 10.0).is_err());
        let p = TwistProfile::with_defaults(5, 3).unwrap();
        assert_eq!(p.fiber_area(), 12.0);
        assert_eq!(p.lambda(), DEFAULT_LAMBDA);
    }

    #[test]
    fn annulus_guard() {
        let p = TwistProfile::new(2, 3, 20.0, 0.5).unwrap();
        assert!(p.position_of_slope(0.4).is_ok());
        assert!(matches!(
            p.position_of_slope(1.0 / 16.0),
            Err(Error::OutsideAnnulus { .. })
        ));
        // every slope with q <= 16 fits the default annulus
        let wide = TwistProfile::with_defaults(2, 16).unwrap();
        assert!(wide.position_of_slope(1.0 / 16.0).is_ok());
        assert!(wide.position_of_slope(15.0 / 16.0).is_ok());
    }
}
