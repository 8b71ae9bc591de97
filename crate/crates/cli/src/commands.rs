use pfhkit::cobordism::{chain_map_value, homology_map_value, regime, HomologyValue, Regime};
use pfhkit::energy::{is_admissible_class, orbitset_energy};
use pfhkit::geometry::{verify_oneform_pullback, verify_orbit, PullbackSampleSpec};
use pfhkit::homology::{cokernel, dehn_twist_action, h1_mapping_torus, lefschetz_constants, IntegerMatrix};
use pfhkit::index::{ech_index_components, ech_index_shifted, fiber_class_shift, index_components, q_tau_pair_sorted, CzTable};
use pfhkit::orbit::{enumerate_generators_capped, farey, parse_orbitset, DEFAULT_ENUMERATION_CAP};
use pfhkit::polygon::q_tau_oracle;
use pfhkit::report::VerificationReport;
use pfhkit::selfcheck::{run_all, Ranges};
use pfhkit::{Error, OrbitSet, Slope};

use crate::config::RunConfig;
use crate::output::{Cell, Output, Table};
use crate::CliError;

fn parse_slope(text: &str) -> Result<Slope, CliError> {
    let bad = || CliError::Slope(text.to_string());
    let (p, q) = text.trim().split_once('/').ok_or_else(bad)?;
    let p: u32 = p.trim().parse().map_err(|_| bad())?;
    let q: u32 = q.trim().parse().map_err(|_| bad())?;
    Ok(Slope::new(p, q)?)
}

fn required_set(c: &RunConfig) -> Result<OrbitSet, CliError> {
    let text = c.set.as_deref().ok_or(CliError::Missing("--set"))?;
    Ok(parse_orbitset(text)?)
}

fn generators_for(c: &RunConfig) -> Result<Vec<OrbitSet>, CliError> {
    let q = c.require_degree()?;
    let cap = c.cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
    Ok(enumerate_generators_capped(q, &c.morse(), cap)?)
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::HighDegree => "high",
        Regime::LowDegree => "low",
        Regime::Intermediate => "intermediate",
        Regime::Excluded => "excluded",
    }
}

pub fn generators(c: &RunConfig) -> Result<Output, CliError> {
    let gens = generators_for(c)?;
    let shift = match c.fiber_mult {
        Some(m) => Some((m, c.require_genus()?)),
        None => None,
    };
    let mut cols = vec!["generator", "degree", "hyperbolic", "index"];
    if shift.is_some() {
        cols.extend(["m", "index_shifted"]);
    }
    let mut t = Table::new(cols);
    for a in gens {
        let i = ech_index_components(&a)?;
        let mut row = vec![a.to_string().into(), a.degree().into(), a.hyperbolic_multiplicity().into(), i.into()];
        if let Some((m, g)) = shift {
            row.extend([m.into(), (i + fiber_class_shift(a.degree(), m, g)).into()]);
        }
        t.push(row);
    }
    Ok(Output::rows(t))
}

/// The plain index needs no model profile; the fiber shift does.
pub fn index(c: &RunConfig) -> Result<Output, CliError> {
    let a = required_set(c)?;
    let parts = index_components(&a, &CzTable::default())?;
    let i = ech_index_components(&a)?;
    let mut cols = vec!["set", "degree", "chern", "q_tau", "cz_sum", "index"];
    let mut row: Vec<Cell> = vec![
        a.to_string().into(),
        a.degree().into(),
        parts.chern.into(),
        parts.q_tau.into(),
        parts.cz_sum.into(),
        i.into(),
    ];
    if let Some(m) = c.fiber_mult {
        let profile = c.profile()?;
        cols.extend(["m", "index_shifted"]);
        row.extend([m.into(), ech_index_shifted(&a, m, &profile).into()]);
    }
    let mut t = Table::new(cols);
    t.push(row);
    Ok(Output::rows(t))
}

pub fn qtau(c: &RunConfig) -> Result<Output, CliError> {
    let slopes = farey(c.max_q.unwrap_or(12));
    let pairs: Vec<(Slope, Slope)> = match c.slope.as_deref() {
        Some(s) => {
            let a = parse_slope(s)?;
            slopes.iter().map(|&b| (a, b)).collect()
        }
        None => slopes
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| slopes[i..].iter().map(move |&b| (a, b)))
            .collect(),
    };
    let mut cols = vec!["slope_a", "slope_b", "q_tau"];
    if c.verify_oracle {
        cols.extend(["oracle", "agree"]);
    }
    let mut t = Table::new(cols);
    let mut pass = true;
    for (a, b) in pairs {
        let q = q_tau_pair_sorted(a, b);
        let mut row: Vec<Cell> = vec![a.to_string().into(), b.to_string().into(), q.into()];
        if c.verify_oracle {
            let (hi, lo) = if a.cmp_value(b).is_ge() { (a, b) } else { (b, a) };
            let oracle = match q_tau_oracle(hi.p() as i64, hi.q() as i64, lo.p() as i64, lo.q() as i64) {
                Ok(v) => Some(v),
                Err(Error::Consistency(msg)) => {
                    log::error!("{msg}");
                    None
                }
                Err(e) => return Err(e.into()),
            };
            let agree = oracle == Some(q);
            pass &= agree;
            row.extend([oracle.into(), agree.into()]);
        }
        t.push(row);
    }
    Ok(Output::Rows { table: t, pass })
}

pub fn energy(c: &RunConfig) -> Result<Output, CliError> {
    let profile = c.profile()?;
    let m = c.fiber_mult.unwrap_or(0);
    let sets = match c.set {
        Some(_) => vec![required_set(c)?],
        None => generators_for(c)?,
    };
    let mut t = Table::new(vec!["set", "energy", "m", "total", "admissible"]);
    for a in sets {
        let adm = is_admissible_class(&a, m, &profile)?;
        t.push(vec![
            a.to_string().into(),
            orbitset_energy(&a, 0, &profile).into(),
            m.into(),
            adm.energy.into(),
            adm.admissible.into(),
        ]);
    }
    Ok(Output::rows(t))
}

fn report_output(report: &VerificationReport) -> Result<Output, CliError> {
    let mut t = Table::new(vec!["check", "max_error", "tol", "pass"]);
    for ch in &report.checks {
        t.push(vec![ch.check.clone().into(), ch.max_error.into(), ch.tol.into(), ch.pass.into()]);
    }
    Ok(Output::Report {
        json: serde_json::to_value(report)?,
        table: t,
        pass: report.pass,
    })
}

/// One slope, or every interior slope up to `--max-q` (default 8).
pub fn verify_orbit_cmd(c: &RunConfig) -> Result<Output, CliError> {
    let slopes = match c.slope.as_deref() {
        Some(s) => vec![parse_slope(s)?],
        None => farey(c.max_q.unwrap_or(8)).into_iter().filter(|s| !s.is_boundary()).collect(),
    };
    let y0 = c.y0.unwrap_or(0.0);
    let tol = c.tol.unwrap_or(1e-9);
    let single = slopes.len() == 1;
    let mut checks = Vec::new();
    for s in slopes {
        let n = c.samples.unwrap_or(256 * s.q() as usize);
        let r = verify_orbit(s.p(), s.q(), y0, n, tol)?;
        for mut ch in r.checks {
            if !single {
                ch.check = format!("{s} {}", ch.check);
            }
            checks.push(ch);
        }
    }
    report_output(&VerificationReport::new(checks))
}

pub fn verify_pullback(c: &RunConfig) -> Result<Output, CliError> {
    let d = PullbackSampleSpec::default();
    let spec = PullbackSampleSpec {
        points: c.samples.unwrap_or(d.points),
        step: c.step.unwrap_or(d.step),
        seed: c.seed.unwrap_or(d.seed),
    };
    report_output(&verify_oneform_pullback(&spec, c.tol.unwrap_or(1e-6))?)
}

pub fn homology(c: &RunConfig) -> Result<Output, CliError> {
    let g = c.require_genus()? as usize;
    let phi = dehn_twist_action(g)?;
    let coinvariants = cokernel(&IntegerMatrix::identity(2 * g).sub(&phi)?);
    let lf = lefschetz_constants(g)?;
    let mut t = Table::new(vec![
        "genus",
        "coinvariants",
        "mapping_torus_h1",
        "lefschetz_h1",
        "lefschetz_h2",
        "lefschetz_h2_relative",
    ]);
    t.push(vec![
        (g as u64).into(),
        coinvariants.to_string().into(),
        h1_mapping_torus(g)?.to_string().into(),
        lf.h1.to_string().into(),
        lf.h2.to_string().into(),
        lf.h2_relative.to_string().into(),
    ]);
    Ok(Output::rows(t))
}

pub fn cobordism(c: &RunConfig) -> Result<Output, CliError> {
    let profile = c.profile()?;
    let morse = c.morse();
    let r = regime(profile.degree_bound(), profile.fiber_genus());
    let mut t = Table::new(vec!["generator", "regime", "value"]);
    for a in generators_for(c)? {
        let value: Option<u8> = match r {
            Regime::HighDegree => Some(chain_map_value(&a, &profile, &morse)?),
            Regime::LowDegree => match homology_map_value(&a, &profile, &morse)? {
                HomologyValue::Value(v) => Some(v),
                HomologyValue::NotComputed => None,
            },
            Regime::Intermediate | Regime::Excluded => None,
        };
        t.push(vec![a.to_string().into(), regime_name(r).into(), value.map(|v| v as u32).into()]);
    }
    Ok(Output::rows(t))
}

pub fn selfcheck(c: &RunConfig) -> Result<Output, CliError> {
    let d = Ranges::default();
    let ranges = Ranges {
        max_degree: c.degree.unwrap_or(d.max_degree),
        max_q: c.max_q.unwrap_or(d.max_q),
        max_genus: c.genus.unwrap_or(d.max_genus),
        pullback_points: c.samples.unwrap_or(d.pullback_points),
        seed: c.seed.unwrap_or(d.seed),
        ..d
    };
    let report = run_all(&ranges, &CzTable::default());
    let mut t = Table::new(vec!["check", "passed", "failed", "pass", "first_failure"]);
    for e in &report.checks {
        t.push(vec![
            e.check.clone().into(),
            e.passed.into(),
            e.failed.into(),
            e.pass.into(),
            e.first_failure.clone().into(),
        ]);
    }
    Ok(Output::Report {
        json: serde_json::to_value(&report)?,
        table: t,
        pass: report.pass,
    })
}
