//! Complex-pair model of the Lefschetz neighbourhood.
//!
//! A point `z = (x1, x2)` of `C²` projects to `π(z) = x1² + x2²`. Off the
//! vanishing cycle it is sent to `(π, x, y)` with annulus coordinate
//! `x = Im(x1·conj x2)` and angle `y` (in turns). Reeb orbits on the torus
//! `{x = x0}` pull back to explicit curves, checked here to round-trip.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::orbit::Slope;
use crate::profile::{h_of_position, position_of_slope, r_tilde_radius};
use crate::report::{Check, VerificationReport};
use crate::{Error, Result};

const TAU: f64 = 2.0 * PI;
const SINGULAR_EPS: f64 = 1e-12;

/// Side of the vanishing cycle: `x > 0` or `x < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Positive,
    Negative,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Positive => 1.0,
            Side::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSample {
    pub tau: f64,
    pub x1: Complex64,
    pub x2: Complex64,
}

/// Sampled preimage of the orbit of slope `p/q` through angle `y0`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitCurve {
    pub p: u32,
    pub q: u32,
    pub x0: f64,
    pub y0: f64,
    pub h: f64,
    pub side: Side,
    pub samples: Vec<OrbitSample>,
}

fn cis(turns: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * turns)
}

/// Circular distance between two angles measured in turns.
fn turn_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Signed difference `a - b` wrapped into `[-1/2, 1/2)`.
fn wrap_turns(d: f64) -> f64 {
    (d + 0.5).rem_euclid(1.0) - 0.5
}

/// The point at parameter `τ` on the orbit curve; both sides agree when `h = 0`.
fn orbit_point(side: Side, p: f64, q: f64, y0: f64, h: f64, tau: f64) -> (Complex64, Complex64) {
    let fwd = cis(y0 + p * tau / q);
    let back = cis(-y0 + (q - p) * tau / q);
    let (eh, emh) = (h.exp(), (-h).exp());
    let i = Complex64::i();
    match side {
        Side::Positive => (
            0.5 * (eh * fwd + emh * back),
            -0.5 * i * eh * fwd + 0.5 * i * emh * back,
        ),
        Side::Negative => (
            0.5 * (eh * back + emh * fwd),
            0.5 * i * (eh * back - emh * fwd),
        ),
    }
}

/// Samples `τ_k = qk/n`, `k = 0..n`, on the preimage of the orbit of slope `p/q`.
pub fn parametrize_orbit(p: u32, q: u32, y0: f64, n_samples: usize) -> Result<OrbitCurve> {
    let slope = Slope::new(p, q)?;
    if slope.is_boundary() {
        return Err(Error::Domain(format!(
            "slope {slope} has no interior Morse-Bott torus"
        )));
    }
    if n_samples < 8 * q as usize {
        return Err(Error::Domain(format!(
            "need at least {} samples for q = {q}, got {n_samples}",
            8 * q
        )));
    }
    if !y0.is_finite() {
        return Err(Error::Domain(format!("y0 = {y0} is not finite")));
    }
    let y0 = y0.rem_euclid(1.0);
    let x0 = position_of_slope(slope.value())?;
    let h = h_of_position(x0);
    let side = if x0 >= 0.0 { Side::Positive } else { Side::Negative };
    let (pf, qf) = (p as f64, q as f64);
    let samples = (0..n_samples)
        .map(|k| {
            let tau = qf * k as f64 / n_samples as f64;
            let (x1, x2) = orbit_point(side, pf, qf, y0, h, tau);
            OrbitSample { tau, x1, x2 }
        })
        .collect();
    Ok(OrbitCurve {
        p,
        q,
        x0,
        y0,
        h,
        side,
        samples,
    })
}

pub fn base_projection(x1: Complex64, x2: Complex64) -> Complex64 {
    x1 * x1 + x2 * x2
}

/// Coordinates of a point off the vanishing cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiImage {
    pub base_re: f64,
    pub base_im: f64,
    /// `arg π / 2π` in `(-1/2, 1/2]`.
    pub t: f64,
    pub x: f64,
    /// Angle in turns, in `[0, 1)`.
    pub y: f64,
    pub p_hat_norm2: f64,
    pub q_hat_norm2: f64,
}

impl PhiImage {
    pub fn base(&self) -> Complex64 {
        Complex64::new(self.base_re, self.base_im)
    }
}

/// Coordinates with the side fixed by the sign of `x`.
pub fn phi(x1: Complex64, x2: Complex64) -> Result<PhiImage> {
    let x = (x1 * x2.conj()).im;
    if x.abs() < SINGULAR_EPS {
        return Err(Error::SingularLocus(format!(
            "({x1}, {x2}) lies on the vanishing cycle; use an explicit side"
        )));
    }
    phi_on_side(x1, x2, if x > 0.0 { Side::Positive } else { Side::Negative })
}

/// Coordinates read on a chosen side; extends [`phi`] continuously up to `x = 0`.
pub fn phi_on_side(x1: Complex64, x2: Complex64, side: Side) -> Result<PhiImage> {
    let base = base_projection(x1, x2);
    if base.norm() < SINGULAR_EPS {
        return Err(Error::SingularLocus(format!("({x1}, {x2}) projects to the critical value")));
    }
    let t = base.arg() / TAU;
    let rot = cis(-t / 2.0);
    let (h1, h2) = (rot * x1, rot * x2);
    let (p1, p2) = (h1.re, h2.re);
    let (q1, q2) = (h1.im, h2.im);
    let p_norm2 = p1 * p1 + p2 * p2;
    if p_norm2 < SINGULAR_EPS * SINGULAR_EPS {
        return Err(Error::SingularLocus(format!("({x1}, {x2}) has Re(x̂) = 0")));
    }
    let y = (p2.atan2(p1) / TAU + side.sign() * t / 2.0).rem_euclid(1.0);
    Ok(PhiImage {
        base_re: base.re,
        base_im: base.im,
        t,
        x: p2 * q1 - p1 * q2,
        y,
        p_hat_norm2: p_norm2,
        q_hat_norm2: q1 * q1 + q2 * q2,
    })
}

/// Round-trip checks of an orbit curve against its torus and slope law.
pub fn verify_orbit(p: u32, q: u32, y0: f64, n_samples: usize, tol: f64) -> Result<VerificationReport> {
    let curve = parametrize_orbit(p, q, y0, n_samples)?;
    let rate = match curve.side {
        Side::Positive => p as f64 / q as f64,
        Side::Negative => p as f64 / q as f64 - 1.0,
    };
    let mut err = [0.0f64; 6];
    for s in &curve.samples {
        let img = phi_on_side(s.x1, s.x2, curve.side)?;
        let base = img.base();
        let worst = [
            (base.norm() - 1.0).abs(),
            turn_distance(img.t, s.tau),
            (img.x - curve.x0).abs(),
            turn_distance(img.y, curve.y0 + rate * s.tau),
            (img.p_hat_norm2 - img.q_hat_norm2 - 1.0).abs(),
            (img.p_hat_norm2 * img.q_hat_norm2 - img.x * img.x).abs(),
        ];
        for (e, w) in err.iter_mut().zip(worst) {
            // NaN propagates so that a broken sample fails
            *e = if w.is_nan() || e.is_nan() { f64::NAN } else { e.max(w) };
        }
    }
    let names = [
        "base_modulus",
        "base_argument",
        "annulus_coordinate",
        "y_advance",
        "hat_normalization",
        "cosh_sinh_relation",
    ];
    Ok(VerificationReport::new(
        names.iter().zip(err).map(|(n, e)| Check::new(*n, e, tol)).collect(),
    ))
}

/// Random sample points and tangent directions for the pullback check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PullbackSampleSpec {
    pub points: usize,
    pub step: f64,
    pub seed: u64,
}

impl Default for PullbackSampleSpec {
    fn default() -> Self {
        PullbackSampleSpec {
            points: 100,
            step: 1e-5,
            seed: 0x5eed,
        }
    }
}

/// Smallest finite-difference step accepted; below it rounding dominates.
pub const MIN_STEP: f64 = 1e-8;

/// `θ(v) = ½ Σ Im(conj(z_k) v_k)`, the standard primitive of the symplectic form.
pub fn theta_c2(z: [Complex64; 2], v: [Complex64; 2]) -> f64 {
    0.5 * (z[0].conj() * v[0] + z[1].conj() * v[1]).im
}

/// A point with `1/4 <= |π| <= 4`, kept away from the vanishing cycle.
fn sample_point<R: Rng>(rng: &mut R) -> [Complex64; 2] {
    loop {
        let mut c = || Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let z = [c(), c()];
        let base = base_projection(z[0], z[1]).norm();
        let x = (z[0] * z[1].conj()).im;
        if !(0.25..=4.0).contains(&base) || x.abs() < 0.05 {
            continue;
        }
        if let Ok(img) = phi(z[0], z[1]) {
            if img.p_hat_norm2 > 0.01 {
                return z;
            }
        }
    }
}

fn sample_direction<R: Rng>(rng: &mut R) -> [Complex64; 2] {
    loop {
        let c: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = c.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 0.1 {
            return [Complex64::new(c[0] / n, c[1] / n), Complex64::new(c[2] / n, c[3] / n)];
        }
    }
}

/// Discrepancy between `θ(v)` and `2π (x dy - R̃_r(|x|) dt)(Φ_* v)` at one
/// point, with `Φ_*` taken by central differences of step `step`.
pub fn pullback_discrepancy(z: [Complex64; 2], v: [Complex64; 2], step: f64) -> Result<f64> {
    let at = |s: f64| phi(z[0] + s * v[0], z[1] + s * v[1]);
    let (mid, plus, minus) = (at(0.0)?, at(step)?, at(-step)?);
    let dy = wrap_turns(plus.y - minus.y) / (2.0 * step);
    let dt = wrap_turns(plus.t - minus.t) / (2.0 * step);
    let r = mid.base().norm();
    let rhs = TAU * (mid.x * dy - r_tilde_radius(r, mid.x.abs()) * dt);
    Ok((theta_c2(z, v) - rhs).abs())
}

fn pullback_max_error(spec: &PullbackSampleSpec) -> Result<f64> {
    if !spec.step.is_finite() || spec.step < MIN_STEP {
        return Err(Error::StepUnderflow(spec.step));
    }
    if spec.step > 0.1 {
        return Err(Error::Domain(format!("step {} is too coarse", spec.step)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut worst = 0.0f64;
    for _ in 0..spec.points {
        let z = sample_point(&mut rng);
        let v = sample_direction(&mut rng);
        worst = worst.max(pullback_discrepancy(z, v, spec.step)?);
    }
    Ok(worst)
}

/// Checks the pullback of the standard primitive at seeded random points.
pub fn verify_oneform_pullback(spec: &PullbackSampleSpec, tol: f64) -> Result<VerificationReport> {
    let err = pullback_max_error(spec)?;
    Ok(VerificationReport::new(vec![Check::new("oneform_pullback", err, tol)]))
}

/// Errors at two steps on the same sample set and the observed order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Convergence {
    pub coarse_step: f64,
    pub fine_step: f64,
    pub coarse_error: f64,
    pub fine_error: f64,
    pub observed_order: f64,
}

pub fn pullback_convergence(points: usize, seed: u64, coarse_step: f64, fine_step: f64) -> Result<Convergence> {
    let coarse_error = pullback_max_error(&PullbackSampleSpec {
        points,
        step: coarse_step,
        seed,
    })?;
    let fine_error = pullback_max_error(&PullbackSampleSpec {
        points,
        step: fine_step,
        seed,
    })?;
    let observed_order = (coarse_error / fine_error).ln() / (coarse_step / fine_step).ln();
    Ok(Convergence {
        coarse_step,
        fine_step,
        coarse_error,
        fine_error,
        observed_order,
    })
}
