//! Values of the cobordism map induced by the elementary Lefschetz fibration.
//!
//! Above the critical degree the chain map counts index-zero horizontal
//! sections, one per generator built from `e0`, `e1` and interior minima.
//! Far below it only `e0^a e1^b` survives, as the class `e^Q`.

use serde::Serialize;

use crate::index::{ech_index_components, ech_index_shifted, ech_index_sum, fiber_class_shift};
use crate::orbit::{enumerate_generators_capped, MorseConfig, OrbitKind, OrbitSet, DEFAULT_ENUMERATION_CAP};
use crate::profile::TwistProfile;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// `Q > g(F) - 1`
    HighDegree,
    /// `2Q < g(F) - 1`
    LowDegree,
    /// `g(F) - 1 <= 2Q` and `Q < g(F) - 1`
    Intermediate,
    /// `Q = g(F) - 1`
    Excluded,
}

pub fn regime(degree: u32, fiber_genus: u32) -> Regime {
    let (q, g1) = (degree as i64, fiber_genus as i64 - 1);
    if q == g1 {
        Regime::Excluded
    } else if q > g1 {
        Regime::HighDegree
    } else if 2 * q < g1 {
        Regime::LowDegree
    } else {
        Regime::Intermediate
    }
}

fn profile_regime(profile: &TwistProfile) -> Regime {
    regime(profile.degree_bound(), profile.fiber_genus())
}

fn require(profile: &TwistProfile, wanted: Regime) -> Result<()> {
    let r = profile_regime(profile);
    if r != wanted {
        return Err(Error::Regime(format!(
            "Q = {}, g(F) = {} is {r:?}, expected {wanted:?}",
            profile.degree_bound(),
            profile.fiber_genus()
        )));
    }
    Ok(())
}

/// Kinds allowed in the index-zero family.
fn is_index_zero_kind(kind: &OrbitKind) -> bool {
    matches!(kind, OrbitKind::MorsePositive(_)) || *kind == OrbitKind::e0() || *kind == OrbitKind::e1()
}

/// All multisets of total degree `q` over `e0`, `e1` and the interior minima.
pub fn index_zero_family(q: u32, morse: &MorseConfig) -> Vec<OrbitSet> {
    let mut kinds = vec![OrbitKind::e1(), OrbitKind::e0()];
    kinds.extend(
        morse
            .orbits()
            .into_iter()
            .filter(|k| matches!(k, OrbitKind::MorsePositive(_))),
    );
    let mut out = Vec::new();
    let mut mults = vec![0u32; kinds.len()];
    compositions(q, 0, &mut mults, &mut |m| {
        out.push(OrbitSet::from_terms(kinds.iter().cloned().zip(m.iter().copied())));
    });
    out.sort();
    out
}

fn compositions(rest: u32, i: usize, mults: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32])) {
    if i + 1 == mults.len() {
        mults[i] = rest;
        emit(mults);
        return;
    }
    for k in 0..=rest {
        mults[i] = k;
        compositions(rest - k, i + 1, mults, emit);
    }
}

/// Generators of degree `Q` with `I = 0`, checked against [`index_zero_family`].
pub fn index_zero_generators(profile: &TwistProfile, morse: &MorseConfig) -> Result<Vec<OrbitSet>> {
    require(profile, Regime::HighDegree)?;
    let q = profile.degree_bound();
    let filtered: Vec<OrbitSet> = enumerate_generators_capped(q, morse, DEFAULT_ENUMERATION_CAP)?
        .into_iter()
        .filter(|a| ech_index_sum(a) == 0)
        .collect();
    let closed = index_zero_family(q, morse);
    if filtered != closed {
        return Err(Error::Consistency(format!(
            "index-zero filter found {} generators, closed form {}",
            filtered.len(),
            closed.len()
        )));
    }
    Ok(filtered)
}

fn check_labels(alpha: &OrbitSet, morse: &MorseConfig) -> Result<()> {
    for (kind, _) in alpha.morse_entries() {
        if !morse.contains(kind) {
            return Err(Error::Semantic(format!(
                "{kind} is not a critical point of the configured Morse function"
            )));
        }
    }
    Ok(())
}

fn check_generator(alpha: &OrbitSet, profile: &TwistProfile, morse: &MorseConfig) -> Result<()> {
    check_labels(alpha, morse)?;
    if !alpha.is_ech_generator() {
        return Err(Error::NotGenerator(alpha.to_string()));
    }
    let q = profile.degree_bound() as u64;
    if alpha.degree() != q {
        return Err(Error::DegreeMismatch {
            expected: q,
            found: alpha.degree(),
        });
    }
    Ok(())
}

/// Chain-level value on a generator of degree `Q` in the high-degree regime.
pub fn chain_map_value(alpha: &OrbitSet, profile: &TwistProfile, morse: &MorseConfig) -> Result<u8> {
    require(profile, Regime::HighDegree)?;
    check_generator(alpha, profile, morse)?;
    Ok(alpha.entries().iter().all(|(k, _)| is_index_zero_kind(k)) as u8)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HomologyValue {
    Value(u8),
    /// The map exists for this degree but its value is not determined.
    NotComputed,
}

/// Homology-level value on a representative, low-degree regime.
pub fn homology_map_value(alpha: &OrbitSet, profile: &TwistProfile, morse: &MorseConfig) -> Result<HomologyValue> {
    match profile_regime(profile) {
        Regime::LowDegree => {}
        Regime::Intermediate => return Ok(HomologyValue::NotComputed),
        _ => require(profile, Regime::LowDegree)?,
    }
    if morse.n_positive > 0 {
        log::warn!(
            "{} interior minima configured in the low-degree regime",
            morse.n_positive
        );
    }
    check_generator(alpha, profile, morse)?;
    let only_boundary = alpha
        .entries()
        .iter()
        .all(|(k, _)| *k == OrbitKind::e0() || *k == OrbitKind::e1());
    Ok(HomologyValue::Value(only_boundary as u8))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub generators: usize,
    pub classes: usize,
    pub violations: Vec<String>,
    pub clean: bool,
}

/// Checks `I_m < 2Q - 2mQ` for `0 <= m <= max_m` and that `I_0 = 0` exactly on `e0^a e1^b`.
pub fn low_degree_index_audit(profile: &TwistProfile, morse: &MorseConfig, max_m: u32) -> Result<AuditReport> {
    require(profile, Regime::LowDegree)?;
    let q = profile.degree_bound();
    let gens = enumerate_generators_capped(q, morse, DEFAULT_ENUMERATION_CAP)?;
    let q = q as i64;
    let mut violations = Vec::new();
    let mut classes = 0;
    for alpha in &gens {
        let i0 = ech_index_components(alpha)?;
        let boundary_only = alpha
            .entries()
            .iter()
            .all(|(k, _)| *k == OrbitKind::e0() || *k == OrbitKind::e1());
        if (i0 == 0) != boundary_only {
            violations.push(format!("{alpha}: I_0 = {i0}"));
        }
        for m in 0..=max_m as i64 {
            classes += 1;
            let im = ech_index_shifted(alpha, m, profile);
            if im != i0 + fiber_class_shift(alpha.degree(), m, profile.fiber_genus()) {
                violations.push(format!("{alpha}, m = {m}: shift mismatch"));
            }
            if im >= 2 * q - 2 * m * q {
                violations.push(format!("{alpha}, m = {m}: I = {im} >= {}", 2 * q - 2 * m * q));
            }
            if m > 0 && im >= 0 {
                violations.push(format!("{alpha}, m = {m}: I = {im} is not negative"));
            }
        }
    }
    Ok(AuditReport {
        generators: gens.len(),
        classes,
        clean: violations.is_empty(),
        violations,
    })
}
