//! The aggregated invariant suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cobordism::{
    chain_map_value, homology_map_value, index_zero_family, index_zero_generators, low_degree_index_audit,
    HomologyValue,
};
use crate::energy::{is_admissible_class, orbit_energy, orbitset_energy};
use crate::geometry::{pullback_convergence, verify_oneform_pullback, verify_orbit, PullbackSampleSpec};
use crate::homology::{cokernel, dehn_twist_action, h1_mapping_torus, smith_normal_form, IntegerMatrix};
use crate::index::{
    classify_index_zero_curves, ech_index_area, ech_index_shifted, ech_index_sum, index_components, path_area2,
    CurveData, CzTable, SearchBounds,
};
use crate::orbit::{enumerate_generators, farey, MorseConfig, OrbitKind, OrbitSet, Slope};
use crate::polygon::{area2, hull, minkowski_sum, mixed_volume, q_tau_oracle, LatticePolygon};
use crate::profile::TwistProfile;

/// Sizes of the exhaustive sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ranges {
    pub max_degree: u32,
    pub max_q: u32,
    pub max_genus: u32,
    pub max_morse_per_type: u32,
    pub geometry_max_q: u32,
    pub pullback_points: usize,
    pub seed: u64,
}

impl Default for Ranges {
    fn default() -> Self {
        Ranges {
            max_degree: 8,
            max_q: 12,
            max_genus: 8,
            max_morse_per_type: 2,
            geometry_max_q: 8,
            pullback_points: 100,
            seed: 2024,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteEntry {
    pub check: String,
    pub passed: u64,
    pub failed: u64,
    pub pass: bool,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<SuiteEntry>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn get(&self, name: &str) -> Option<&SuiteEntry> {
        self.checks.iter().find(|c| c.check == name)
    }
}

struct Tally {
    check: &'static str,
    passed: u64,
    failed: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn new(check: &'static str) -> Self {
        Tally {
            check,
            passed: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(msg());
            }
        }
    }

    fn finish(self) -> SuiteEntry {
        SuiteEntry {
            check: self.check.to_string(),
            passed: self.passed,
            failed: self.failed,
            pass: self.failed == 0,
            first_failure: self.first_failure,
        }
    }
}

fn boundary_only(a: &OrbitSet) -> bool {
    a.entries()
        .iter()
        .all(|(k, _)| *k == OrbitKind::e0() || *k == OrbitKind::e1())
}

fn morse_configs(max: u32) -> Vec<MorseConfig> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                out.push(MorseConfig::new(a, b, c));
            }
        }
    }
    out
}

fn index_checks(r: &Ranges, cz: &CzTable, out: &mut Vec<SuiteEntry>) {
    let mut triple = Tally::new("index_triple_agreement");
    let mut parity = Tally::new("index_parity");
    for morse in morse_configs(r.max_morse_per_type) {
        for q in 0..=r.max_degree {
            let Ok(gens) = enumerate_generators(q, &morse) else {
                triple.record(false, || format!("enumeration failed at Q = {q}"));
                continue;
            };
            for a in &gens {
                let s = ech_index_sum(a);
                let area = ech_index_area(a);
                let comp = index_components(a, cz).map(|c| c.total());
                triple.record(comp.as_ref().is_ok_and(|&c| c == s) && area == s, || {
                    format!("{a}: sum {s}, area {area}, components {comp:?}")
                });
                let h = a.hyperbolic_multiplicity() as i64;
                parity.record((s - h) % 2 == 0, || format!("{a}: I = {s}, {h} hyperbolic"));
            }
        }
    }
    out.push(triple.finish());
    out.push(parity.finish());

    let none = MorseConfig::default();
    let mut nonneg = Tally::new("index_nonnegative_slope_generators");
    let mut area = Tally::new("area_dominates_p_squared");
    let mut identify = Tally::new("boundary_orbit_identification");
    for q in 0..=r.max_degree {
        let gens = enumerate_generators(q, &none).unwrap_or_default();
        let mut zeros = Vec::new();
        for a in &gens {
            let i = ech_index_sum(a);
            nonneg.record(i >= 0, || format!("{a}: I = {i}"));
            if i == 0 {
                zeros.push(a.clone());
            }
            let p: i64 = a.flat_slopes().iter().map(|v| v.0).sum();
            area.record(p * p <= path_area2(a), || format!("{a}: P = {p}"));
            if q < r.max_degree {
                for (kind, delta) in [
                    (OrbitKind::e0(), 0),
                    (OrbitKind::e1(), 0),
                    (OrbitKind::h0(), 1),
                    (OrbitKind::h1(), 1),
                ] {
                    if kind.is_hyperbolic() && a.multiplicity(&kind) > 0 {
                        continue;
                    }
                    let b = OrbitSet::from_terms(a.entries().iter().cloned().chain([(kind.clone(), 1)]));
                    let d = ech_index_sum(&b) - i;
                    identify.record(d == delta, || format!("{a} + {kind}: change {d}"));
                }
            }
        }
        let ok = zeros.len() == q as usize + 1 && zeros.iter().all(boundary_only);
        nonneg.record(ok, || format!("Q = {q}: {} index-zero generators", zeros.len()));
    }
    out.push(nonneg.finish());
    out.push(area.finish());
    out.push(identify.finish());

    let mut positive = Tally::new("high_degree_shifted_positivity");
    for g in 2..=r.max_genus {
        for q in g..=r.max_degree {
            let Ok(profile) = TwistProfile::with_defaults(g, q) else { continue };
            for a in enumerate_generators(q, &none).unwrap_or_default() {
                for m in 0..=2 {
                    let i = ech_index_shifted(&a, m, &profile);
                    positive.record(i >= 0, || format!("{a}, m = {m}, g = {g}: I = {i}"));
                }
            }
        }
    }
    out.push(positive.finish());

    let mut rng = ChaCha8Rng::seed_from_u64(r.seed);
    let mut linear = Tally::new("fiber_shift_linearity");
    let gens: Vec<OrbitSet> = (1..=r.max_degree.min(6))
        .flat_map(|q| enumerate_generators(q, &none).unwrap_or_default())
        .collect();
    if !gens.is_empty() {
        for _ in 0..200 {
            let a = &gens[rng.gen_range(0..gens.len())];
            let m = rng.gen_range(-5..=5);
            let g = rng.gen_range(2..=12u32);
            let q = a.degree() as u32;
            let Ok(profile) = TwistProfile::new(g, q.max(1), 4.0 * q.max(1) as f64, 10.0).or_else(|_| {
                TwistProfile::new(g + 1, q.max(1), 4.0 * q.max(1) as f64, 10.0)
            }) else {
                continue;
            };
            let g = profile.fiber_genus() as i64;
            let d = ech_index_shifted(a, m + 1, &profile) - ech_index_shifted(a, m, &profile);
            linear.record(d == 2 * (q as i64 + 1 - g), || format!("{a}, m = {m}, g = {g}: step {d}"));
        }
    }
    out.push(linear.finish());

    let mut curves = Tally::new("index_zero_curve_classification");
    for (q, g) in [(3u32, 6u32), (2, 10)] {
        if q > r.max_degree {
            continue;
        }
        let found = TwistProfile::with_defaults(g, q)
            .and_then(|p| classify_index_zero_curves(&p, &SearchBounds::default()));
        curves.record(
            found.as_ref().is_ok_and(|v| v == &[CurveData::special_plane()]),
            || format!("Q = {q}, g = {g}: {found:?}"),
        );
    }
    out.push(curves.finish());
}

fn oracle_checks(r: &Ranges, out: &mut Vec<SuiteEntry>) {
    let mut oracle = Tally::new("q_tau_oracle_sweep");
    let slopes = farey(r.max_q);
    for (i, a) in slopes.iter().enumerate() {
        for b in &slopes[..=i] {
            let (p, q, p2, q2) = (a.p() as i64, a.q() as i64, b.p() as i64, b.q() as i64);
            let got = q_tau_oracle(p, q, p2, q2);
            let want = (p * (q2 - p2)).min(p2 * (q - p));
            oracle.record(got.as_ref().is_ok_and(|&v| v == want), || {
                format!("{a}, {b}: oracle {got:?}, closed {want}")
            });
        }
        let diag = q_tau_oracle(a.p() as i64, a.q() as i64, a.p() as i64, a.q() as i64);
        let want = a.p() as i64 * (a.q() as i64 - a.p() as i64);
        oracle.record(diag.as_ref().is_ok_and(|&v| v == want), || format!("diagonal {a}: {diag:?}"));
    }
    out.push(oracle.finish());

    let mut legs = Tally::new("leg_triangle_mixed_volume");
    for a in 1..=10 {
        for b in 1..=10 {
            for c in 1..=10 {
                for d in 1..=10 {
                    let mv = mixed_volume(&LatticePolygon::leg_triangle(a, b), &LatticePolygon::leg_triangle(c, d));
                    legs.record(mv.as_ref().is_ok_and(|&v| v == (a * d).max(b * c)), || {
                        format!("T({a},{b}), T({c},{d}): {mv:?}")
                    });
                }
            }
        }
    }
    out.push(legs.finish());

    let mut rng = ChaCha8Rng::seed_from_u64(r.seed ^ 0x9011);
    let mut polys = Tally::new("minkowski_and_mixed_area");
    for _ in 0..1000 {
        let cloud = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..8);
            let pts: Vec<(i64, i64)> = (0..n).map(|_| (rng.gen_range(-6..=6), rng.gen_range(-6..=6))).collect();
            (hull(&pts).expect("nonempty"), pts)
        };
        let (a, pa) = cloud(&mut rng);
        let (b, pb) = cloud(&mut rng);
        let sums: Vec<(i64, i64)> = pa.iter().flat_map(|x| pb.iter().map(move |y| (x.0 + y.0, x.1 + y.1))).collect();
        let direct = hull(&sums).expect("nonempty");
        let merged = minkowski_sum(&a, &b);
        let diff = area2(&merged) - area2(&a) - area2(&b);
        let mv_ab = mixed_volume(&a, &b);
        let mv_ba = mixed_volume(&b, &a);
        let ok = merged == direct && diff % 2 == 0 && mv_ab.is_ok() && mv_ab == mv_ba && diff >= 0;
        polys.record(ok, || format!("{a} + {b}: merged {merged}, direct {direct}"));
    }
    out.push(polys.finish());
}

fn geometry_checks(r: &Ranges, out: &mut Vec<SuiteEntry>) {
    let mut orbits = Tally::new("orbit_round_trip");
    for s in farey(r.geometry_max_q).into_iter().filter(|s| !s.is_boundary()) {
        for y0 in [0.0, 0.3, 0.7] {
            let rep = verify_orbit(s.p(), s.q(), y0, 256 * s.q() as usize, 1e-9);
            orbits.record(rep.as_ref().is_ok_and(|v| v.pass), || format!("{s}, y0 = {y0}: {rep:?}"));
        }
    }
    out.push(orbits.finish());

    let mut pull = Tally::new("oneform_pullback");
    let spec = PullbackSampleSpec {
        points: r.pullback_points,
        step: 1e-5,
        seed: r.seed,
    };
    let rep = verify_oneform_pullback(&spec, 1e-6);
    pull.record(rep.as_ref().is_ok_and(|v| v.pass), || format!("{rep:?}"));
    let conv = pullback_convergence(r.pullback_points, r.seed, 1e-2, 1e-3);
    pull.record(conv.as_ref().is_ok_and(|c| c.observed_order > 1.8), || format!("{conv:?}"));
    out.push(pull.finish());
}

fn energy_checks(r: &Ranges, out: &mut Vec<SuiteEntry>) {
    let mut energy = Tally::new("energy_values_and_bounds");
    let e = |p, q| orbit_energy(&OrbitKind::SlopeElliptic(Slope::new(p, q).expect("reduced")));
    energy.record((e(1, 2) - 0.5).abs() <= 1e-12, || format!("E(e[1/2]) = {}", e(1, 2)));
    energy.record((e(1, 4) - 3f64.sqrt() / 2.0).abs() <= 1e-12, || format!("E(e[1/4]) = {}", e(1, 4)));
    for s in farey(64) {
        let kinds = [OrbitKind::SlopeElliptic(s), OrbitKind::SlopeHyperbolic(s)];
        for k in kinds {
            let v = orbit_energy(&k);
            let ok = if s.is_boundary() {
                v == 0.0
            } else {
                v > 0.0 && v / s.q() as f64 <= 0.25 + 1e-15
            };
            energy.record(ok, || format!("{k}: E = {v}"));
        }
        if !s.is_boundary() {
            let mirror = e(s.q() - s.p(), s.q());
            energy.record((e(s.p(), s.q()) - mirror).abs() <= 1e-12, || format!("{s}: asymmetric"));
        }
    }
    for kind in MorseConfig::new(1, 1, 1).orbits() {
        energy.record(orbit_energy(&kind) == 0.0, || format!("{kind} has energy"));
    }
    let none = MorseConfig::default();
    for q in 1..=r.max_degree {
        let Ok(profile) = TwistProfile::with_defaults(q + 2, q) else { continue };
        for a in enumerate_generators(q, &none).unwrap_or_default() {
            let v = orbitset_energy(&a, 0, &profile);
            energy.record(v <= q as f64 && v <= q as f64 / 4.0 + 1e-12, || format!("{a}: E = {v}"));
            let step = orbitset_energy(&a, 1, &profile) - v;
            energy.record((step - profile.fiber_area()).abs() < 1e-9, || format!("{a}: shift {step}"));
        }
    }
    out.push(energy.finish());

    let mut admiss = Tally::new("negative_fiber_classes_inadmissible");
    for q in 1..=r.max_degree.min(6) {
        let Ok(profile) = TwistProfile::with_defaults(q + 2, q) else { continue };
        for a in enumerate_generators(q, &none).unwrap_or_default() {
            for m in [-3i64, -2, -1, 0, 1] {
                let res = is_admissible_class(&a, m, &profile);
                let ok = res.as_ref().is_ok_and(|v| v.admissible == (m >= 0));
                admiss.record(ok, || format!("{a}, m = {m}: {res:?}"));
            }
        }
    }
    out.push(admiss.finish());
}

fn homology_checks(r: &Ranges, out: &mut Vec<SuiteEntry>) {
    let mut h1 = Tally::new("mapping_torus_homology");
    for g in 1..=r.max_genus as usize {
        let group = h1_mapping_torus(g);
        h1.record(
            group.as_ref().is_ok_and(|v| v.is_free() && v.free_rank == 2 * g),
            || format!("g = {g}: {group:?}"),
        );
        let coker = dehn_twist_action(g).map(|m| cokernel(&IntegerMatrix::identity(2 * g).sub(&m).expect("square")));
        h1.record(
            coker.as_ref().is_ok_and(|c| c.is_free() && c.free_rank == 2 * g - 1),
            || format!("g = {g}: coker {coker:?}"),
        );
    }
    out.push(h1.finish());

    let mut snf = Tally::new("smith_form_unimodular");
    let mut rng = ChaCha8Rng::seed_from_u64(r.seed ^ 0x5af);
    for _ in 0..100 {
        let (rows, cols) = (rng.gen_range(1..6), rng.gen_range(1..6));
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = IntegerMatrix::from_rows(&data).expect("rectangular");
        let s = smith_normal_form(&m);
        let product = s.u.mul(&m).and_then(|um| um.mul(&s.v));
        let unimodular = |x: &IntegerMatrix| x.determinant().is_ok_and(|d| d == 1.into() || d == (-1).into());
        let f = s.invariant_factors();
        let divides = f.windows(2).all(|w| (&w[1] % &w[0]) == 0.into());
        let diagonal = (0..rows).all(|i| (0..cols).all(|j| i == j || s.d.get(i, j) == &0.into()));
        let ok = product.as_ref() == Ok(&s.d) && unimodular(&s.u) && unimodular(&s.v) && divides && diagonal;
        snf.record(ok, || format!("{m}"));
    }
    out.push(snf.finish());
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
}

fn cobordism_checks(r: &Ranges, out: &mut Vec<SuiteEntry>) {
    let mut high = Tally::new("high_degree_chain_map");
    for (q, g) in [(3u32, 2u32), (5, 3), (6, 4)] {
        if q > r.max_degree {
            continue;
        }
        let Ok(profile) = TwistProfile::with_defaults(g, q) else {
            high.record(false, || format!("profile Q = {q}, g = {g}"));
            continue;
        };
        for n_pos in 0..=1 {
            let morse = MorseConfig::new(n_pos, 1, 1);
            let zero = MorseConfig::new(n_pos, 0, 0);
            let family = index_zero_family(q, &morse);
            let filtered = index_zero_generators(&profile, &morse);
            high.record(filtered.as_ref() == Ok(&family), || format!("Q = {q}: {filtered:?}"));
            high.record(index_zero_generators(&profile, &zero).is_ok(), || format!("Q = {q}: no saddles"));
            let mut total = 0u64;
            for a in enumerate_generators(q, &morse).unwrap_or_default() {
                let v = chain_map_value(&a, &profile, &morse);
                let want = (ech_index_sum(&a) == 0) as u8;
                high.record(v.as_ref() == Ok(&want), || format!("{a}: {v:?}, I = {}", ech_index_sum(&a)));
                total += *v.as_ref().unwrap_or(&0) as u64;
            }
            let want = binomial(q as u64 + n_pos as u64 + 1, q as u64);
            high.record(total == want, || format!("Q = {q}: total {total} != {want}"));
        }
    }
    out.push(high.finish());

    let mut low = Tally::new("low_degree_homology_map");
    let none = MorseConfig::default();
    for (q, g) in [(1u32, 4u32), (2, 8), (3, 9)] {
        if q > r.max_degree {
            continue;
        }
        let Ok(profile) = TwistProfile::with_defaults(g, q) else { continue };
        let audit = low_degree_index_audit(&profile, &none, 3);
        low.record(audit.as_ref().is_ok_and(|a| a.clean), || format!("Q = {q}: {audit:?}"));
        for a in enumerate_generators(q, &none).unwrap_or_default() {
            let v = homology_map_value(&a, &profile, &none);
            let want = HomologyValue::Value(boundary_only(&a) as u8);
            low.record(v.as_ref() == Ok(&want), || format!("{a}: {v:?}"));
            // e0 and e1 are homologous
            let swapped = OrbitSet::from_terms(a.entries().iter().map(|(k, m)| {
                let k = if *k == OrbitKind::e0() {
                    OrbitKind::e1()
                } else if *k == OrbitKind::e1() {
                    OrbitKind::e0()
                } else {
                    k.clone()
                };
                (k, *m)
            }));
            let w = homology_map_value(&swapped, &profile, &none);
            low.record(v.is_ok() && v.as_ref().ok() == w.as_ref().ok(), || format!("{a}: swap changes value"));
        }
    }
    out.push(low.finish());
}

/// Runs every invariant; `cz` replaces the Conley–Zehnder table in the component form.
pub fn run_all(ranges: &Ranges, cz: &CzTable) -> SuiteReport {
    let mut checks = Vec::new();
    index_checks(ranges, cz, &mut checks);
    oracle_checks(ranges, &mut checks);
    geometry_checks(ranges, &mut checks);
    energy_checks(ranges, &mut checks);
    homology_checks(ranges, &mut checks);
    cobordism_checks(ranges, &mut checks);
    let pass = checks.iter().all(|c| c.pass);
    SuiteReport { checks, pass }
}
