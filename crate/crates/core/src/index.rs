//! ECH index calculus for orbit sets with empty negative end.
//!
//! The index is computed three ways: the closed form over the flat list of
//! slope vectors, the lattice-path area form, and the component sum
//! `c_τ + Q_τ + ΣCZ`. Morse orbits always contribute `0`, `2m` or `m`.

use serde::Serialize;

use crate::orbit::{OrbitKind, OrbitSet, Slope};
use crate::profile::TwistProfile;
use crate::{Error, Result};

/// Conley–Zehnder values per orbit kind, overridable for fault injection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CzTable {
    pub slope_elliptic: i64,
    pub slope_hyperbolic: i64,
    pub morse_positive: i64,
    pub morse_negative: i64,
    pub morse_saddle: i64,
}

impl Default for CzTable {
    fn default() -> Self {
        CzTable {
            slope_elliptic: -1,
            slope_hyperbolic: 0,
            morse_positive: -1,
            morse_negative: 1,
            morse_saddle: 0,
        }
    }
}

impl CzTable {
    pub fn value(&self, kind: &OrbitKind) -> i64 {
        match kind {
            OrbitKind::SlopeElliptic(_) => self.slope_elliptic,
            OrbitKind::SlopeHyperbolic(_) => self.slope_hyperbolic,
            OrbitKind::MorsePositive(_) => self.morse_positive,
            OrbitKind::MorseNegative(_) => self.morse_negative,
            OrbitKind::MorseSaddle(_) => self.morse_saddle,
        }
    }
}

/// `CZ_τ` of the `k`-th iterate, valid for `1 <= k <= Q`.
pub fn conley_zehnder(kind: &OrbitKind, k: u32, degree_bound: u32) -> Result<i64> {
    if k == 0 {
        return Err(Error::Domain("iterate must be at least 1".into()));
    }
    if kind.is_elliptic() && k > degree_bound {
        return Err(Error::Domain(format!(
            "iterate {k} of {kind} exceeds the degree bound {degree_bound}"
        )));
    }
    Ok(CzTable::default().value(kind))
}

/// `c_τ`: total degree of the slope part plus the Morse multiplicity.
pub fn relative_chern(alpha: &OrbitSet) -> i64 {
    alpha
        .entries()
        .iter()
        .map(|(k, m)| k.degree() as i64 * *m as i64)
        .sum()
}

fn check_coprime(p: i64, q: i64) -> Result<()> {
    if q < 1 || p < 0 || p > q || num_integer::gcd(p, q) != 1 {
        return Err(Error::Domain(format!("{p}/{q} is not a reduced slope in [0, 1]")));
    }
    Ok(())
}

/// `Q_τ` pairing of two slope orbits with `p/q >= p2/q2`.
pub fn q_tau_pair(p: i64, q: i64, p2: i64, q2: i64) -> Result<i64> {
    check_coprime(p, q)?;
    check_coprime(p2, q2)?;
    if p * q2 < p2 * q {
        return Err(Error::OrderViolation(format!("{p}/{q}"), format!("{p2}/{q2}")));
    }
    Ok((p * (q2 - p2)).min(p2 * (q - p)))
}

/// Symmetric form of [`q_tau_pair`].
pub fn q_tau_pair_sorted(a: Slope, b: Slope) -> i64 {
    let (hi, lo) = if a.cmp_value(b).is_ge() { (a, b) } else { (b, a) };
    let (p, q, p2, q2) = (hi.p() as i64, hi.q() as i64, lo.p() as i64, lo.q() as i64);
    (p * (q2 - p2)).min(p2 * (q - p))
}

/// Flat-list form `P(Q - P) - Σ_{i<j} (p_i q_j - p_j q_i)` over slope vectors.
fn q_tau_flat(flat: &[(i64, i64)]) -> i64 {
    let p_tot: i64 = flat.iter().map(|v| v.0).sum();
    let q_tot: i64 = flat.iter().map(|v| v.1).sum();
    p_tot * (q_tot - p_tot) - cross_sum(flat)
}

/// `Σ_{i<j} (p_i q_j - p_j q_i)` in linear time via prefix sums.
fn cross_sum(flat: &[(i64, i64)]) -> i64 {
    let (mut pp, mut pq, mut acc) = (0i64, 0i64, 0i64);
    for &(p, q) in flat {
        acc += pp * q - p * pq;
        pp += p;
        pq += q;
    }
    acc
}

/// `Q_τ` of the slope part, computed bilinearly and by the flat form.
pub fn q_tau_total(alpha: &OrbitSet) -> Result<i64> {
    let entries: Vec<(Slope, i64)> = alpha.slope_entries().map(|(_, s, m)| (s, m as i64)).collect();
    let mut bilinear = 0i64;
    for (i, &(a, ma)) in entries.iter().enumerate() {
        bilinear += ma * ma * q_tau_pair_sorted(a, a);
        for &(b, mb) in &entries[i + 1..] {
            bilinear += 2 * ma * mb * q_tau_pair_sorted(a, b);
        }
    }
    let flat = q_tau_flat(&alpha.flat_slopes());
    if flat != bilinear {
        return Err(Error::Consistency(format!(
            "Q_tau of {alpha}: bilinear {bilinear} != flat {flat}"
        )));
    }
    Ok(flat)
}

/// Index contribution of the Morse entries: `0`, `2m`, `m` by type.
fn morse_index(alpha: &OrbitSet) -> i64 {
    alpha
        .morse_entries()
        .map(|(k, m)| match k {
            OrbitKind::MorseNegative(_) => 2 * m as i64,
            OrbitKind::MorseSaddle(_) => m as i64,
            _ => 0,
        })
        .sum()
}

fn slope_elliptic_count(alpha: &OrbitSet) -> i64 {
    alpha
        .slope_entries()
        .filter(|(k, _, _)| k.is_elliptic())
        .map(|(_, _, m)| m as i64)
        .sum()
}

/// Closed form `Q + P(Q - P) - Σ cross - e` on the slope part plus Morse terms.
pub fn ech_index_sum(alpha: &OrbitSet) -> i64 {
    let flat = alpha.flat_slopes();
    let q_tot: i64 = flat.iter().map(|v| v.1).sum();
    q_tot + q_tau_flat(&flat) - slope_elliptic_count(alpha) + morse_index(alpha)
}

/// Twice the area of the region bounded by the slope path, the vertical
/// segment down to `(P, 0)` and the horizontal axis.
pub fn path_area2(alpha: &OrbitSet) -> i64 {
    let mut vertices = vec![(0i64, 0i64)];
    let mut w = (0i64, 0i64);
    for (p, q) in alpha.flat_slopes() {
        w = (w.0 + p, w.1 + q);
        vertices.push(w);
    }
    vertices.push((w.0, 0));
    let n = vertices.len();
    let twice: i64 = (0..n)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum();
    twice.abs()
}

/// Area form `Q + 2Area(Λ) - P² - e` on the slope part plus Morse terms.
pub fn ech_index_area(alpha: &OrbitSet) -> i64 {
    let flat = alpha.flat_slopes();
    let p_tot: i64 = flat.iter().map(|v| v.0).sum();
    let q_tot: i64 = flat.iter().map(|v| v.1).sum();
    q_tot + path_area2(alpha) - p_tot * p_tot - slope_elliptic_count(alpha) + morse_index(alpha)
}

/// The three summands of the defining index formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexComponents {
    pub chern: i64,
    pub q_tau: i64,
    pub cz_sum: i64,
}

impl IndexComponents {
    pub fn total(&self) -> i64 {
        self.chern + self.q_tau + self.cz_sum
    }
}

/// `c_τ`, `Q_τ` and `Σ_i Σ_{k ≤ m_i} CZ(α_i^k)` under the given CZ table.
pub fn index_components(alpha: &OrbitSet, cz: &CzTable) -> Result<IndexComponents> {
    let cz_sum = alpha
        .entries()
        .iter()
        .map(|(k, m)| cz.value(k) * *m as i64)
        .sum();
    Ok(IndexComponents {
        chern: relative_chern(alpha),
        q_tau: q_tau_total(alpha)?,
        cz_sum,
    })
}

/// Component form of the index; errors if it disagrees with [`ech_index_sum`].
pub fn ech_index_components(alpha: &OrbitSet) -> Result<i64> {
    let total = index_components(alpha, &CzTable::default())?.total();
    let closed = ech_index_sum(alpha);
    if total != closed {
        return Err(Error::Consistency(format!(
            "index of {alpha}: components {total} != closed form {closed}"
        )));
    }
    Ok(total)
}

/// Index change `2m(Q + 1 - g)` from adding `m` fiber classes.
pub fn fiber_class_shift(degree: u64, m: i64, fiber_genus: u32) -> i64 {
    2 * m * (degree as i64 + 1 - fiber_genus as i64)
}

/// `I_m(α) = I_0(α) + 2m(Q + 1 - g(F))` with `Q = deg α`.
pub fn ech_index_shifted(alpha: &OrbitSet, m: i64, profile: &TwistProfile) -> i64 {
    ech_index_sum(alpha) + fiber_class_shift(alpha.degree(), m, profile.fiber_genus())
}

/// Topological data of a holomorphic curve in the cobordism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurveData {
    pub genus: u32,
    pub hyperbolic_ends: u32,
    pub q_positive_ends: u32,
    pub q_negative_mult: u32,
    pub double_points: u32,
    pub degree: u32,
    pub fiber_mult: i64,
}

impl CurveData {
    pub fn new(
        genus: u32,
        hyperbolic_ends: u32,
        q_positive_ends: u32,
        q_negative_mult: u32,
        double_points: u32,
        degree: u32,
        fiber_mult: i64,
    ) -> Result<Self> {
        let c = CurveData {
            genus,
            hyperbolic_ends,
            q_positive_ends,
            q_negative_mult,
            double_points,
            degree,
            fiber_mult,
        };
        c.validate()?;
        Ok(c)
    }

    /// The special plane: one end at a simple Q-negative elliptic orbit.
    pub fn special_plane() -> Self {
        CurveData {
            genus: 0,
            hyperbolic_ends: 0,
            q_positive_ends: 0,
            q_negative_mult: 1,
            double_points: 0,
            degree: 1,
            fiber_mult: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ends = self.hyperbolic_ends as u64 + self.q_positive_ends as u64 + self.q_negative_mult as u64;
        if ends > self.degree as u64 {
            return Err(Error::Domain(format!(
                "{ends} ends cannot fit in degree {}",
                self.degree
            )));
        }
        Ok(())
    }

    pub fn is_special_plane(&self) -> bool {
        *self == CurveData::special_plane()
    }
}

/// `ind C = 2g - 2 + h + 2q + 4m(1 - g(F)) + 2e₊`.
pub fn fredholm_index(c: &CurveData, profile: &TwistProfile) -> i64 {
    2 * c.genus as i64 - 2
        + c.hyperbolic_ends as i64
        + 2 * c.degree as i64
        + 4 * c.fiber_mult * (1 - profile.fiber_genus() as i64)
        + 2 * c.q_positive_ends as i64
}

/// `2C·C = 2g - 2 + ind C + h + 2e_Q + 4δ`.
pub fn self_intersection_doubled(c: &CurveData, profile: &TwistProfile) -> i64 {
    2 * c.genus as i64 - 2
        + fredholm_index(c, profile)
        + c.hyperbolic_ends as i64
        + 2 * c.q_negative_mult as i64
        + 4 * c.double_points as i64
}

/// Caps for the curve search; degree and ends are bounded by `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub max_genus: u32,
    pub max_double_points: u32,
    pub max_fiber_mult: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_genus: 3,
            max_double_points: 3,
            max_fiber_mult: 2,
        }
    }
}

/// Every curve within the bounds accepted by `keep`.
///
/// A curve of degree zero is closed and must carry a positive fiber class.
pub fn search_curves<F>(profile: &TwistProfile, bounds: &SearchBounds, mut keep: F) -> Vec<CurveData>
where
    F: FnMut(&CurveData) -> bool,
{
    let big_q = profile.degree_bound();
    let mut out = Vec::new();
    for genus in 0..=bounds.max_genus {
        for degree in 0..=big_q {
            for m in 0..=bounds.max_fiber_mult as i64 {
                if degree == 0 && m == 0 {
                    continue;
                }
                for h in 0..=degree {
                    for ep in 0..=degree - h {
                        for eq in 0..=degree - h - ep {
                            for delta in 0..=bounds.max_double_points {
                                let c = CurveData {
                                    genus,
                                    hyperbolic_ends: h,
                                    q_positive_ends: ep,
                                    q_negative_mult: eq,
                                    double_points: delta,
                                    degree,
                                    fiber_mult: m,
                                };
                                if keep(&c) {
                                    out.push(c);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// All curves with `ind = 0` and `C·C = 0`; requires `Q < g(F) - 1`.
pub fn classify_index_zero_curves(profile: &TwistProfile, bounds: &SearchBounds) -> Result<Vec<CurveData>> {
    if profile.degree_bound() + 1 >= profile.fiber_genus() {
        return Err(Error::Regime(format!(
            "curve classification needs Q < g(F) - 1, got Q = {}, g(F) = {}",
            profile.degree_bound(),
            profile.fiber_genus()
        )));
    }
    Ok(search_curves(profile, bounds, |c| {
        fredholm_index(c, profile) == 0 && self_intersection_doubled(c, profile) == 0
    }))
}
