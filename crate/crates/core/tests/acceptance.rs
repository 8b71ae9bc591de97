//! Acceptance gate: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pfhkit::cobordism::{chain_map_value, homology_map_value, index_zero_generators, low_degree_index_audit, HomologyValue};
use pfhkit::energy::{is_admissible_class, orbit_energy, orbitset_energy};
use pfhkit::geometry::{parametrize_orbit, phi, pullback_convergence, verify_oneform_pullback, verify_orbit, PullbackSampleSpec};
use pfhkit::homology::{h1_mapping_torus, smith_normal_form, dehn_twist_action, IntegerMatrix};
use pfhkit::index::{
    classify_index_zero_curves, ech_index_area, ech_index_components, ech_index_shifted, ech_index_sum, CurveData,
    SearchBounds,
};
use pfhkit::orbit::enumerate_generators;
use pfhkit::polygon::{mixed_volume, newton_polygons_for_pair, q_tau_oracle, LatticePolygon};
use pfhkit::{MorseConfig, OrbitKind, OrbitSet, TwistProfile};

type Outcome = Result<String, String>;

/// Independent reference computations, sharing no code with the library.
mod oracle {
    use super::*;

    pub fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    /// Reduced fractions in `[0, 1]` with denominator `<= n`, by brute force.
    pub fn slopes(n: u32) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = (1..=n)
            .flat_map(|q| (0..=q).map(move |p| (p, q)))
            .filter(|&(p, q)| gcd(p, q) == 1)
            .collect();
        out.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
        out
    }

    /// Morse kinds: 0 minimum, 1 maximum, 2 saddle.
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    pub enum Orbit {
        Slope { p: u32, q: u32, hyperbolic: bool },
        Morse { kind: u8, index: u32 },
    }

    impl Orbit {
        pub fn degree(self) -> u32 {
            match self {
                Orbit::Slope { q, .. } => q,
                Orbit::Morse { .. } => 1,
            }
        }

        pub fn hyperbolic(self) -> bool {
            match self {
                Orbit::Slope { hyperbolic, .. } => hyperbolic,
                Orbit::Morse { kind, .. } => kind == 2,
            }
        }

        pub fn to_kind(self) -> OrbitKind {
            match self {
                Orbit::Slope { p, q, hyperbolic: false } => OrbitKind::elliptic(p, q).unwrap(),
                Orbit::Slope { p, q, hyperbolic: true } => OrbitKind::hyperbolic(p, q).unwrap(),
                Orbit::Morse { kind: 0, index } => OrbitKind::MorsePositive(format!("min{index}")),
                Orbit::Morse { kind: 1, index } => OrbitKind::MorseNegative(format!("max{index}")),
                Orbit::Morse { index, .. } => OrbitKind::MorseSaddle(format!("sad{index}")),
            }
        }
    }

    pub fn roster(q: u32, morse: (u32, u32, u32)) -> Vec<Orbit> {
        let mut out = Vec::new();
        for (p, d) in slopes(q) {
            out.push(Orbit::Slope { p, q: d, hyperbolic: false });
            out.push(Orbit::Slope { p, q: d, hyperbolic: true });
        }
        for (kind, n) in [(0u8, morse.0), (1, morse.1), (2, morse.2)] {
            out.extend((1..=n).map(|index| Orbit::Morse { kind, index }));
        }
        out
    }

    /// All generators of degree `q` as multiplicity vectors over the roster.
    pub fn generators(q: u32, morse: (u32, u32, u32)) -> Vec<Vec<(Orbit, u32)>> {
        fn rec(r: &[Orbit], rest: u32, cur: &mut Vec<(Orbit, u32)>, out: &mut Vec<Vec<(Orbit, u32)>>) {
            let Some((&first, tail)) = r.split_first() else {
                if rest == 0 {
                    out.push(cur.clone());
                }
                return;
            };
            let max = if first.hyperbolic() { 1 } else { rest / first.degree() };
            for m in 0..=max.min(rest / first.degree()) {
                if m > 0 {
                    cur.push((first, m));
                }
                rec(tail, rest - m * first.degree(), cur, out);
                if m > 0 {
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&roster(q, morse), q, &mut Vec::new(), &mut out);
        out
    }

    pub fn to_set(g: &[(Orbit, u32)]) -> OrbitSet {
        OrbitSet::from_terms(g.iter().map(|&(o, m)| (o.to_kind(), m)))
    }

    /// Index from the defining sum `c + Q + ΣCZ`, with the pairing evaluated pairwise.
    pub fn index(g: &[(Orbit, u32)]) -> i64 {
        let mut flat: Vec<(i64, i64, bool)> = Vec::new();
        let mut morse = 0i64;
        for &(o, m) in g {
            match o {
                Orbit::Slope { p, q, hyperbolic } => {
                    flat.extend(std::iter::repeat_n((p as i64, q as i64, hyperbolic), m as usize))
                }
                Orbit::Morse { kind, .. } => {
                    // c = m per disk, CZ = -1, +1, 0 by type
                    let cz = [-1, 1, 0][kind as usize];
                    morse += m as i64 * (1 + cz);
                }
            }
        }
        let chern: i64 = flat.iter().map(|v| v.1).sum();
        let cz: i64 = flat.iter().map(|v| if v.2 { 0 } else { -1 }).sum();
        let mut qt = 0;
        // Q(α, α) over ordered pairs, the diagonal included
        for a in &flat {
            for b in &flat {
                let (hi, lo) = if a.0 * b.1 >= b.0 * a.1 { (a, b) } else { (b, a) };
                qt += (hi.0 * (lo.1 - lo.0)).min(lo.0 * (hi.1 - hi.0));
            }
        }
        chern + qt + cz + morse
    }

    /// Twice the area of a lattice polygon given as a point cloud, via brute-force hull.
    pub fn hull_area2(points: &[(i64, i64)]) -> i64 {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return 0;
        }
        // gift wrapping
        let start = pts[0];
        let mut hull = vec![start];
        let mut cur = start;
        loop {
            let mut next = if pts[0] == cur { pts[1] } else { pts[0] };
            for &p in &pts {
                let c = (next.0 - cur.0) * (p.1 - cur.1) - (next.1 - cur.1) * (p.0 - cur.0);
                let farther = (p.0 - cur.0).pow(2) + (p.1 - cur.1).pow(2) > (next.0 - cur.0).pow(2) + (next.1 - cur.1).pow(2);
                if c < 0 || (c == 0 && farther) {
                    next = p;
                }
            }
            if next == start {
                break;
            }
            hull.push(next);
            cur = next;
        }
        let n = hull.len();
        (0..n)
            .map(|i| hull[i].0 * hull[(i + 1) % n].1 - hull[i].1 * hull[(i + 1) % n].0)
            .sum::<i64>()
            .abs()
    }

    pub fn mixed_volume(a: &[(i64, i64)], b: &[(i64, i64)]) -> i64 {
        let sums: Vec<(i64, i64)> = a.iter().flat_map(|x| b.iter().map(move |y| (x.0 + y.0, x.1 + y.1))).collect();
        (hull_area2(&sums) - hull_area2(a) - hull_area2(b)) / 2
    }

    /// Profile slope `1/2 - t/√(1+4t²)` and profile value, written out directly.
    pub fn r_prime(t: f64) -> f64 {
        0.5 - t / (1.0 + 4.0 * t * t).sqrt()
    }

    pub fn r_value(t: f64) -> f64 {
        t / 2.0 - 0.25 * (1.0 + 4.0 * t * t).sqrt()
    }

    /// Solves `R'(t) = s` for `s <= 1/2` by bisection.
    pub fn torus_position(s: f64) -> f64 {
        let (mut lo, mut hi) = (0.0f64, 1e6f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if r_prime(mid) > s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

fn morse_tuples(max: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                out.push((a, b, c));
            }
        }
    }
    out
}

fn config(t: (u32, u32, u32)) -> MorseConfig {
    MorseConfig::new(t.0, t.1, t.2)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_triple_agreement() -> Outcome {
    let mut n = 0usize;
    for morse in morse_tuples(2) {
        for q in 0..=8 {
            let lib = enumerate_generators(q, &config(morse)).map_err(|e| e.to_string())?;
            let reference: BTreeSet<OrbitSet> = oracle::generators(q, morse).iter().map(|g| oracle::to_set(g)).collect();
            let lib_set: BTreeSet<OrbitSet> = lib.iter().cloned().collect();
            ensure(lib_set == reference && lib.len() == reference.len(), || {
                format!("generator sets differ at Q = {q}, Morse {morse:?}")
            })?;
            for a in &lib {
                let s = ech_index_sum(a);
                let area = ech_index_area(a);
                let comp = ech_index_components(a).map_err(|e| e.to_string())?;
                ensure(s == area && s == comp, || format!("{a}: sum {s}, area {area}, components {comp}"))?;
                n += 1;
            }
        }
    }
    for morse in [(0, 0, 0), (1, 1, 1), (2, 2, 2)] {
        for q in 0..=6 {
            for g in oracle::generators(q, morse) {
                let set = oracle::to_set(&g);
                let (want, got) = (oracle::index(&g), ech_index_sum(&set));
                ensure(want == got, || format!("{set}: reference index {want}, library {got}"))?;
            }
        }
    }
    Ok(format!("{n} generators, 27 Morse configurations"))
}

fn c2_nonnegativity() -> Outcome {
    let mut n = 0;
    for q in 0..=8u32 {
        let mut zeros = BTreeSet::new();
        for g in oracle::generators(q, (0, 0, 0)) {
            let set = oracle::to_set(&g);
            let i = oracle::index(&g);
            ensure(i == ech_index_sum(&set), || format!("{set}: index mismatch"))?;
            ensure(i >= 0, || format!("{set}: I = {i}"))?;
            if i == 0 {
                zeros.insert(set);
            }
            n += 1;
        }
        let expected: BTreeSet<OrbitSet> = (0..=q)
            .map(|m| OrbitSet::from_terms([(OrbitKind::e1(), m), (OrbitKind::e0(), q - m)]))
            .collect();
        ensure(zeros == expected && zeros.len() == q as usize + 1, || {
            format!("Q = {q}: zero set {:?}", zeros.iter().map(|s| s.to_string()).collect::<Vec<_>>())
        })?;
    }
    Ok(format!("{n} slope generators"))
}

fn c3_q_tau_oracle() -> Outcome {
    let slopes = oracle::slopes(12);
    let mut n = 0;
    for &(p, q) in &slopes {
        for &(p2, q2) in &slopes {
            if p * q2 < p2 * q {
                continue;
            }
            let (p, q, p2, q2) = (p as i64, q as i64, p2 as i64, q2 as i64);
            let got = q_tau_oracle(p, q, p2, q2).map_err(|e| e.to_string())?;
            let want = (p * (q2 - p2)).min(p2 * (q - p));
            ensure(got == want, || format!("{p}/{q}, {p2}/{q2}: {got} != {want}"))?;
            let (_, a, b) = newton_polygons_for_pair(p, q, p2, q2).map_err(|e| e.to_string())?;
            let independent = oracle::mixed_volume(a.vertices(), b.vertices()) - (p * q2 - p2 * q).abs();
            ensure(independent == want, || format!("{p}/{q}, {p2}/{q2}: reference count {independent}"))?;
            if (p, q) == (p2, q2) {
                ensure(got == p * (q - p), || format!("diagonal {p}/{q}: {got}"))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} ordered pairs"))
}

fn c4_leg_triangles() -> Outcome {
    for a in 1..=10 {
        for b in 1..=10 {
            for c in 1..=10 {
                for d in 1..=10 {
                    let (s, t) = (LatticePolygon::leg_triangle(a, b), LatticePolygon::leg_triangle(c, d));
                    let mv = mixed_volume(&s, &t).map_err(|e| e.to_string())?;
                    let reference = oracle::mixed_volume(&[(0, 0), (a, 0), (0, b)], &[(0, 0), (c, 0), (0, d)]);
                    ensure(mv == (a * d).max(b * c) && reference == mv, || {
                        format!("T({a},{b}), T({c},{d}): {mv}, reference {reference}")
                    })?;
                }
            }
        }
    }
    Ok("10^4 triangle pairs".into())
}

fn c5_orbit_round_trip() -> Outcome {
    let mut n = 0;
    for (p, q) in oracle::slopes(8).into_iter().filter(|&(p, q)| p != 0 && p != q) {
        for y0 in [0.0, 0.3, 0.7] {
            let rep = verify_orbit(p, q, y0, 256 * q as usize, 1e-9).map_err(|e| e.to_string())?;
            ensure(rep.pass, || format!("{p}/{q}, y0 = {y0}: {rep:?}"))?;
            for name in ["base_modulus", "annulus_coordinate", "y_advance"] {
                ensure(rep.get(name).is_some(), || format!("missing check {name}"))?;
            }
            // independent torus position and direct evaluation of Im(x1 conj x2)
            let s = p as f64 / q as f64;
            let x0 = if s <= 0.5 {
                oracle::torus_position(s)
            } else {
                -oracle::torus_position(1.0 - s)
            };
            let curve = parametrize_orbit(p, q, y0, 256 * q as usize).map_err(|e| e.to_string())?;
            for smp in &curve.samples {
                let x = (smp.x1 * smp.x2.conj()).im;
                let base = smp.x1 * smp.x1 + smp.x2 * smp.x2;
                ensure((x - x0).abs() <= 1e-9 && (base.norm() - 1.0).abs() <= 1e-9, || {
                    format!("{p}/{q}: x = {x}, reference {x0}")
                })?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} orbits at tolerance 1e-9"))
}

fn c6_pullback() -> Outcome {
    let spec = PullbackSampleSpec {
        points: 100,
        step: 1e-5,
        seed: 17,
    };
    let rep = verify_oneform_pullback(&spec, 1e-6).map_err(|e| e.to_string())?;
    ensure(rep.pass, || format!("{rep:?}"))?;
    let conv = pullback_convergence(100, 17, 1e-2, 1e-3).map_err(|e| e.to_string())?;
    ensure(conv.observed_order >= 1.8, || format!("observed order {conv:?}"))?;

    // reference left side i/4 Σ (z dz̄ - z̄ dz) against the coordinate form
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst = 0.0f64;
    let mut count = 0;
    while count < 100 {
        let mut c = || Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let z = [c(), c()];
        let v = [c(), c()];
        let Ok(mid) = phi(z[0], z[1]) else { continue };
        let r = mid.base().norm();
        if !(0.25..=4.0).contains(&r) || mid.x.abs() < 0.05 || mid.p_hat_norm2 < 0.01 {
            continue;
        }
        let h = 1e-5;
        let (Ok(plus), Ok(minus)) = (
            phi(z[0] + h * v[0], z[1] + h * v[1]),
            phi(z[0] - h * v[0], z[1] - h * v[1]),
        ) else {
            continue;
        };
        let wrap = |d: f64| d - d.round();
        let dy = wrap(plus.y - minus.y) / (2.0 * h);
        let dt = wrap(plus.t - minus.t) / (2.0 * h);
        let i = Complex64::i();
        let lhs = (i / 4.0 * (z[0] * v[0].conj() - z[0].conj() * v[0] + z[1] * v[1].conj() - z[1].conj() * v[1])).re;
        let ax = mid.x.abs();
        let r_tilde = ax / 2.0 - 0.25 * (r * r + 4.0 * ax * ax).sqrt();
        let rhs = 2.0 * std::f64::consts::PI * (mid.x * dy - r_tilde * dt);
        worst = worst.max((lhs - rhs).abs());
        count += 1;
    }
    ensure(worst <= 1e-6, || format!("reference discrepancy {worst:e}"))?;
    Ok(format!(
        "max error {:.2e}, order {:.2}, reference {worst:.2e}",
        rep.checks[0].max_error, conv.observed_order
    ))
}

fn c7_energy() -> Outcome {
    let e = |p, q| orbit_energy(&OrbitKind::elliptic(p, q).unwrap());
    ensure((e(1, 2) - 0.5).abs() <= 1e-12, || format!("E(e[1/2]) = {}", e(1, 2)))?;
    ensure((e(1, 4) - 3f64.sqrt() / 2.0).abs() <= 1e-12, || format!("E(e[1/4]) = {}", e(1, 4)))?;
    for (p, q) in oracle::slopes(16) {
        let got = e(p, q);
        if p == 0 || p == q {
            ensure(got == 0.0, || format!("{p}/{q}: E = {got}"))?;
            continue;
        }
        let s = p as f64 / q as f64;
        let x = oracle::torus_position(s.min(1.0 - s));
        let want = q as f64 * (x * oracle::r_prime(x) - oracle::r_value(x));
        ensure(got > 0.0 && (got - want).abs() <= 1e-9, || format!("{p}/{q}: E = {got}, reference {want}"))?;
    }
    let mut n = 0;
    for q in 1..=8u32 {
        let profile = TwistProfile::with_defaults(q + 2, q).map_err(|e| e.to_string())?;
        for a in enumerate_generators(q, &MorseConfig::default()).map_err(|e| e.to_string())? {
            let v = orbitset_energy(&a, 0, &profile);
            ensure(v <= q as f64 && v >= 0.0, || format!("{a}: E = {v} > {q}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} generators bounded by Q"))
}

fn c8_admissibility() -> Outcome {
    let mut n = 0;
    for q in 1..=6u32 {
        let profile = TwistProfile::with_defaults(q + 2, q).map_err(|e| e.to_string())?;
        ensure(profile.fiber_area() == 4.0 * q as f64, || "fiber area".into())?;
        for a in enumerate_generators(q, &MorseConfig::default()).map_err(|e| e.to_string())? {
            for m in -6i64..0 {
                let adm = is_admissible_class(&a, m, &profile).map_err(|e| e.to_string())?;
                ensure(!adm.admissible, || format!("{a}, m = {m} admitted"))?;
                n += 1;
            }
            // lower-degree sets below the bound are also in scope
            if q > 1 {
                let low = OrbitSet::single(OrbitKind::e0(), q - 1);
                ensure(!is_admissible_class(&low, -1, &profile).map_err(|e| e.to_string())?.admissible, || {
                    "e0^(Q-1), m = -1 admitted".into()
                })?;
            }
        }
    }
    Ok(format!("{n} negative classes rejected"))
}

fn c9_homology() -> Outcome {
    for g in 1..=8usize {
        let h = h1_mapping_torus(g).map_err(|e| e.to_string())?;
        ensure(h.is_free() && h.free_rank == 2 * g, || format!("g = {g}: {h}"))?;
        let phi = dehn_twist_action(g).map_err(|e| e.to_string())?;
        let one_minus = IntegerMatrix::identity(2 * g).sub(&phi).map_err(|e| e.to_string())?;
        let s = smith_normal_form(&one_minus);
        let product = s.u.mul(&one_minus).and_then(|m| m.mul(&s.v)).map_err(|e| e.to_string())?;
        ensure(product == s.d && s.rank() == 1, || format!("g = {g}: bad Smith form"))?;
        // reference: 1 - φ has a single nonzero entry, -1, above the diagonal
        let rows = one_minus.to_i64_rows().unwrap();
        let nonzero: Vec<i64> = rows.iter().flatten().copied().filter(|&v| v != 0).collect();
        ensure(nonzero == [-1], || format!("g = {g}: 1 - φ = {one_minus}"))?;
    }
    Ok("free of rank 2g for g = 1..8".into())
}

fn c10_high_degree() -> Outcome {
    let mut n = 0;
    for (q, g) in [(3u32, 2u32), (5, 3), (6, 4)] {
        let profile = TwistProfile::with_defaults(g, q).map_err(|e| e.to_string())?;
        for n_pos in 0..=1u32 {
            let morse = MorseConfig::new(n_pos, 0, 0);
            let zero_set: BTreeSet<OrbitSet> = index_zero_generators(&profile, &morse)
                .map_err(|e| e.to_string())?
                .into_iter()
                .collect();
            for gen in oracle::generators(q, (n_pos, 0, 0)) {
                let a = oracle::to_set(&gen);
                let in_family = gen.iter().all(|(o, _)| {
                    matches!(
                        o,
                        oracle::Orbit::Slope { p: 0, q: 1, hyperbolic: false }
                            | oracle::Orbit::Slope { p: 1, q: 1, hyperbolic: false }
                            | oracle::Orbit::Morse { kind: 0, .. }
                    )
                });
                let v = chain_map_value(&a, &profile, &morse).map_err(|e| e.to_string())?;
                let zero = oracle::index(&gen) == 0;
                ensure(v == in_family as u8 && zero == in_family && zero_set.contains(&a) == zero, || {
                    format!("Q = {q}, g = {g}: {a} value {v}, family {in_family}, I = 0 {zero}")
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} generators"))
}

fn c11_low_degree() -> Outcome {
    let mut n = 0;
    for (q, g) in [(1u32, 4u32), (2, 8), (3, 9)] {
        let profile = TwistProfile::with_defaults(g, q).map_err(|e| e.to_string())?;
        let none = MorseConfig::default();
        let audit = low_degree_index_audit(&profile, &none, 3).map_err(|e| e.to_string())?;
        ensure(audit.clean, || format!("Q = {q}: {:?}", audit.violations))?;
        for gen in oracle::generators(q, (0, 0, 0)) {
            let a = oracle::to_set(&gen);
            let boundary = gen
                .iter()
                .all(|(o, _)| matches!(o, oracle::Orbit::Slope { hyperbolic: false, q: 1, .. }));
            let v = homology_map_value(&a, &profile, &none).map_err(|e| e.to_string())?;
            ensure(v == HomologyValue::Value(boundary as u8), || format!("Q = {q}: {a} -> {v:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} generators, audits clean"))
}

fn c12_curve_classification() -> Outcome {
    for (q, g) in [(3u32, 6u32), (2, 10)] {
        let profile = TwistProfile::with_defaults(g, q).map_err(|e| e.to_string())?;
        let found = classify_index_zero_curves(&profile, &SearchBounds::default()).map_err(|e| e.to_string())?;
        let plane = CurveData {
            genus: 0,
            hyperbolic_ends: 0,
            q_positive_ends: 0,
            q_negative_mult: 1,
            double_points: 0,
            degree: 1,
            fiber_mult: 0,
        };
        ensure(found == [plane], || format!("Q = {q}, g = {g}: {found:?}"))?;
        // reference search written from the two displayed formulas
        let gf = g as i64;
        let mut hits = Vec::new();
        for gc in 0..=3i64 {
            for deg in 0..=q as i64 {
                for m in 0..=2i64 {
                    if deg == 0 && m == 0 {
                        continue;
                    }
                    for h in 0..=deg {
                        for ep in 0..=deg - h {
                            for eq in 0..=deg - h - ep {
                                for d in 0..=3i64 {
                                    let ind = 2 * gc - 2 + h + 2 * deg + 4 * m * (1 - gf) + 2 * ep;
                                    let cc2 = 2 * gc - 2 + ind + h + 2 * eq + 4 * d;
                                    if ind == 0 && cc2 == 0 {
                                        hits.push((gc, h, ep, eq, d, deg, m));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        ensure(hits == [(0, 0, 0, 1, 0, 1, 0)], || format!("reference search: {hits:?}"))?;
    }
    Ok("special plane only".into())
}

fn c13_linearity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let pool: Vec<OrbitSet> = (1..=6)
        .flat_map(|q| enumerate_generators(q, &MorseConfig::new(1, 1, 1)).unwrap())
        .collect();
    let mut n = 0;
    while n < 200 {
        let a = &pool[(rng.next_u32() as usize) % pool.len()];
        let q = a.degree() as u32;
        let g = rng.gen_range(2..=14u32);
        let m = rng.gen_range(-6..=6i64);
        let Ok(profile) = TwistProfile::with_defaults(g, q) else { continue };
        let step = ech_index_shifted(a, m + 1, &profile) - ech_index_shifted(a, m, &profile);
        ensure(step == 2 * (q as i64 + 1 - g as i64), || format!("{a}, m = {m}, g = {g}: step {step}"))?;
        n += 1;
    }
    Ok("200 random triples".into())
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("index triple agreement", 30, c1_triple_agreement),
        ("index nonnegativity and zero set", 30, c2_nonnegativity),
        ("Q_tau intersection oracle", 10, c3_q_tau_oracle),
        ("leg-triangle mixed volume", 5, c4_leg_triangles),
        ("orbit round trip", 20, c5_orbit_round_trip),
        ("one-form pullback", 10, c6_pullback),
        ("energy values and bound", 10, c7_energy),
        ("negative fiber classes inadmissible", 10, c8_admissibility),
        ("mapping torus homology", 5, c9_homology),
        ("high-degree chain map", 30, c10_high_degree),
        ("low-degree homology map", 30, c11_low_degree),
        ("index-zero curve classification", 10, c12_curve_classification),
        ("fiber-class index linearity", 5, c13_linearity),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        match (&outcome, over) {
            (Ok(detail), false) => println!("[PASS] {:>2} {name}: {detail} ({:.2?})", i + 1, elapsed),
            (Ok(detail), true) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {detail}, over the {budget} s budget ({:.2?})", i + 1, elapsed);
            }
            (Err(why), _) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {why} ({:.2?})", i + 1, elapsed);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
