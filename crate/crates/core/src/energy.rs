//! Energy of orbit sets and the admissibility of relative classes.

use serde::Serialize;

use crate::orbit::{OrbitKind, OrbitSet};
use crate::profile::{position_of_slope, r_tilde, slope_at, TwistProfile};
use crate::{Error, Result};

/// `q(|x0| R̃'(|x0|) - R̃(|x0|))` for interior slopes; zero for boundary and Morse orbits.
pub fn orbit_energy(kind: &OrbitKind) -> f64 {
    match kind.slope() {
        Some(s) if !s.is_boundary() => {
            let x = position_of_slope(s.value())
                .expect("interior slope lies in (0, 1)")
                .abs();
            let (rp, r) = (
                slope_at(x).expect("|x0| >= 0"),
                r_tilde(x).expect("|x0| >= 0"),
            );
            s.q() as f64 * (x * rp - r)
        }
        _ => 0.0,
    }
}

/// `E(α + m[F]) = Σ mult · E(orbit) + m · area(F)`.
pub fn orbitset_energy(alpha: &OrbitSet, m: i64, profile: &TwistProfile) -> f64 {
    let base: f64 = alpha
        .entries()
        .iter()
        .map(|(k, mult)| *mult as f64 * orbit_energy(k))
        .sum();
    base + m as f64 * profile.fiber_area()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub energy: f64,
    pub reason: Option<String>,
}

/// A class `Z_α + m[F]` can carry a holomorphic current only if its energy is nonnegative.
pub fn is_admissible_class(alpha: &OrbitSet, m: i64, profile: &TwistProfile) -> Result<Admissibility> {
    let q = profile.degree_bound();
    if alpha.degree() > q as u64 {
        return Err(Error::Precondition(format!(
            "degree {} of {alpha} exceeds the bound {q}",
            alpha.degree()
        )));
    }
    if profile.fiber_area() <= q as f64 {
        return Err(Error::Precondition(format!(
            "fiber area {} must exceed {q}",
            profile.fiber_area()
        )));
    }
    let energy = orbitset_energy(alpha, m, profile);
    Ok(if energy < 0.0 {
        Admissibility {
            admissible: false,
            energy,
            reason: Some("negative energy".into()),
        }
    } else {
        Admissibility {
            admissible: true,
            energy,
            reason: None,
        }
    })
}
