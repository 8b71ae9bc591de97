//! Periodic orbits of the perturbed Dehn-twist mapping torus and orbit sets.
//!
//! After perturbation every Morse–Bott torus of rational slope `p/q` leaves
//! one elliptic orbit `e_{p/q}` and one positive hyperbolic orbit `h_{p/q}`,
//! both of degree `q`. The boundary orbits `e0, e1, h0, h1` are identified
//! with slopes `0/1` and `1/1`. Interior critical points of the Morse function
//! on the trivial part of the fiber give degree-one orbits, recorded only by
//! their Hessian type.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::ParseError;
use crate::{Error, Result};

/// Default cap on the number of generators [`enumerate_generators`] may emit.
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

/// A reduced fraction `p/q` with `0 <= p <= q` and `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: u32,
    q: u32,
}

impl Slope {
    pub const ZERO: Slope = Slope { p: 0, q: 1 };
    pub const ONE: Slope = Slope { p: 1, q: 1 };

    pub fn new(p: u32, q: u32) -> Result<Slope> {
        if q == 0 {
            return Err(Error::Semantic(format!("slope {p}/{q} has zero denominator")));
        }
        if p > q {
            return Err(Error::Semantic(format!("slope {p}/{q} lies outside [0, 1]")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::Semantic(format!("slope {p}/{q} is not in lowest terms")));
        }
        Ok(Slope { p, q })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn q(self) -> u32 {
        self.q
    }

    pub fn value(self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// `true` for `0/1` and `1/1`, which carry no interior Morse–Bott torus.
    pub fn is_boundary(self) -> bool {
        self.p == 0 || self.p == self.q
    }

    /// Compares by numerical value.
    pub fn cmp_value(self, other: Slope) -> Ordering {
        (self.p as u64 * other.q as u64).cmp(&(other.p as u64 * self.q as u64))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Farey fractions of order `n` on `[0, 1]`, ascending.
pub fn farey(n: u32) -> Vec<Slope> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = vec![Slope::ZERO];
    let (mut a, mut b, mut c, mut d) = (0u32, 1u32, 1u32, n);
    while c <= n {
        out.push(Slope { p: c, q: d });
        let k = (n + b) / d;
        let (na, nb) = (c, d);
        c = k * c - a;
        d = k * d - b;
        a = na;
        b = nb;
    }
    out
}

/// One periodic orbit of the roster.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OrbitKind {
    SlopeElliptic(Slope),
    SlopeHyperbolic(Slope),
    /// Interior minimum (`∇²f > 0`): elliptic, Q-negative.
    MorsePositive(String),
    /// Interior maximum (`∇²f < 0`): elliptic, Q-positive.
    MorseNegative(String),
    /// Interior saddle: positive hyperbolic.
    MorseSaddle(String),
}

impl OrbitKind {
    pub fn e0() -> Self {
        OrbitKind::SlopeElliptic(Slope::ZERO)
    }

    pub fn e1() -> Self {
        OrbitKind::SlopeElliptic(Slope::ONE)
    }

    pub fn h0() -> Self {
        OrbitKind::SlopeHyperbolic(Slope::ZERO)
    }

    pub fn h1() -> Self {
        OrbitKind::SlopeHyperbolic(Slope::ONE)
    }

    pub fn elliptic(p: u32, q: u32) -> Result<Self> {
        Ok(OrbitKind::SlopeElliptic(Slope::new(p, q)?))
    }

    pub fn hyperbolic(p: u32, q: u32) -> Result<Self> {
        Ok(OrbitKind::SlopeHyperbolic(Slope::new(p, q)?))
    }

    pub fn slope(&self) -> Option<Slope> {
        match self {
            OrbitKind::SlopeElliptic(s) | OrbitKind::SlopeHyperbolic(s) => Some(*s),
            _ => None,
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        matches!(self, OrbitKind::SlopeHyperbolic(_) | OrbitKind::MorseSaddle(_))
    }

    pub fn is_elliptic(&self) -> bool {
        !self.is_hyperbolic()
    }

    /// Slope orbits have degree `q`, Morse orbits degree one.
    pub fn degree(&self) -> u64 {
        self.slope().map_or(1, |s| s.q as u64)
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            OrbitKind::MorsePositive(l) | OrbitKind::MorseNegative(l) | OrbitKind::MorseSaddle(l) => {
                Some(l)
            }
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            OrbitKind::SlopeElliptic(_) => 0,
            OrbitKind::SlopeHyperbolic(_) => 1,
            OrbitKind::MorsePositive(_) => 2,
            OrbitKind::MorseNegative(_) => 3,
            OrbitKind::MorseSaddle(_) => 4,
        }
    }
}

impl Ord for OrbitKind {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.slope(), other.slope()) {
            // descending slope, elliptic before hyperbolic
            (Some(a), Some(b)) => b
                .cmp_value(a)
                .then_with(|| self.rank().cmp(&other.rank())),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self
                .rank()
                .cmp(&other.rank())
                .then_with(|| self.label().cmp(&other.label())),
        }
    }
}

impl PartialOrd for OrbitKind {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrbitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitKind::SlopeElliptic(s) | OrbitKind::SlopeHyperbolic(s) => {
                let letter = if self.is_elliptic() { 'e' } else { 'h' };
                if *s == Slope::ZERO {
                    write!(f, "{letter}0")
                } else if *s == Slope::ONE {
                    write!(f, "{letter}1")
                } else {
                    write!(f, "{letter}[{s}]")
                }
            }
            OrbitKind::MorsePositive(l) => write!(f, "e-:{l}"),
            OrbitKind::MorseNegative(l) => write!(f, "e+:{l}"),
            OrbitKind::MorseSaddle(l) => write!(f, "h:{l}"),
        }
    }
}

/// Census of interior critical points by Hessian type.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct MorseConfig {
    pub n_positive: u32,
    pub n_negative: u32,
    pub n_saddle: u32,
}

impl MorseConfig {
    pub fn new(n_positive: u32, n_negative: u32, n_saddle: u32) -> Self {
        MorseConfig {
            n_positive,
            n_negative,
            n_saddle,
        }
    }

    /// Labels are `min<i>`, `max<i>` and `sad<i>`, numbered from one.
    pub fn orbits(&self) -> Vec<OrbitKind> {
        let mut out = Vec::new();
        out.extend((1..=self.n_positive).map(|i| OrbitKind::MorsePositive(format!("min{i}"))));
        out.extend((1..=self.n_negative).map(|i| OrbitKind::MorseNegative(format!("max{i}"))));
        out.extend((1..=self.n_saddle).map(|i| OrbitKind::MorseSaddle(format!("sad{i}"))));
        out.sort();
        out
    }

    pub fn contains(&self, kind: &OrbitKind) -> bool {
        kind.slope().is_some() || self.orbits().contains(kind)
    }
}

/// A finite multiset of orbits in canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitSet {
    entries: Vec<(OrbitKind, u32)>,
}

impl OrbitSet {
    pub fn empty() -> Self {
        OrbitSet::default()
    }

    /// Builds the canonical set, merging repeated kinds and dropping zero multiplicities.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (OrbitKind, u32)>,
    {
        let mut entries: Vec<(OrbitKind, u32)> = terms.into_iter().filter(|(_, m)| *m > 0).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(OrbitKind, u32)> = Vec::with_capacity(entries.len());
        for (kind, m) in entries {
            match merged.last_mut() {
                Some((last, lm)) if *last == kind => *lm += m,
                _ => merged.push((kind, m)),
            }
        }
        OrbitSet { entries: merged }
    }

    pub fn single(kind: OrbitKind, multiplicity: u32) -> Self {
        Self::from_terms([(kind, multiplicity)])
    }

    pub fn entries(&self) -> &[(OrbitKind, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, kind: &OrbitKind) -> u32 {
        self.entries
            .iter()
            .find(|(k, _)| k == kind)
            .map_or(0, |(_, m)| *m)
    }

    /// Slope entries in canonical (descending slope) order.
    pub fn slope_entries(&self) -> impl Iterator<Item = (&OrbitKind, Slope, u32)> + '_ {
        self.entries
            .iter()
            .filter_map(|(k, m)| k.slope().map(|s| (k, s, *m)))
    }

    pub fn morse_entries(&self) -> impl Iterator<Item = (&OrbitKind, u32)> + '_ {
        self.entries
            .iter()
            .filter(|(k, _)| k.slope().is_none())
            .map(|(k, m)| (k, *m))
    }

    /// The slope entries as a flat list of edge vectors `(p, q)`, each
    /// repeated by multiplicity, in canonical order.
    pub fn flat_slopes(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (_, s, m) in self.slope_entries() {
            out.extend(std::iter::repeat_n((s.p as i64, s.q as i64), m as usize));
        }
        out
    }

    /// Sub-multiset of slope entries.
    pub fn slope_part(&self) -> OrbitSet {
        OrbitSet {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| k.slope().is_some())
                .cloned()
                .collect(),
        }
    }

    /// Total multiplicity of elliptic orbits, Morse ones included.
    pub fn elliptic_multiplicity(&self) -> u64 {
        self.entries
            .iter()
            .filter(|(k, _)| k.is_elliptic())
            .map(|(_, m)| *m as u64)
            .sum()
    }

    pub fn hyperbolic_multiplicity(&self) -> u64 {
        self.entries
            .iter()
            .filter(|(k, _)| k.is_hyperbolic())
            .map(|(_, m)| *m as u64)
            .sum()
    }

    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|(k, m)| k.degree() * *m as u64).sum()
    }

    /// Every hyperbolic orbit appears with multiplicity one.
    pub fn is_ech_generator(&self) -> bool {
        self.entries
            .iter()
            .all(|(k, m)| !k.is_hyperbolic() || *m == 1)
    }
}

pub fn degree(alpha: &OrbitSet) -> u64 {
    alpha.degree()
}

pub fn is_ech_generator(alpha: &OrbitSet) -> bool {
    alpha.is_ech_generator()
}

impl fmt::Display for OrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("empty");
        }
        for (i, (kind, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{kind}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for OrbitSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for OrbitSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_orbitset(s)
    }
}

/// Parses the orbit-set grammar.
///
/// ```text
/// orbitset := term (WS term)* | "empty"
/// term     := kind ("^" INT)?
/// kind     := ("e"|"h") "[" INT "/" INT "]" | "e+:" IDENT | "e-:" IDENT | "h:" IDENT
///           | "e0" | "e1" | "h0" | "h1"
/// ```
pub fn parse_orbitset(text: &str) -> Result<OrbitSet> {
    let mut parser = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        len: text.len(),
    };
    parser.skip_ws();
    if parser.rest_is("empty") {
        parser.pos += "empty".len();
        parser.skip_ws();
        if !parser.at_end() {
            return Err(parser.error(&["end of input"]).into());
        }
        return Ok(OrbitSet::empty());
    }
    let mut terms = Vec::new();
    loop {
        terms.push(parser.term()?);
        let before = parser.pos;
        parser.skip_ws();
        if parser.at_end() {
            break;
        }
        if parser.pos == before {
            return Err(parser.error(&["whitespace", "end of input"]).into());
        }
    }
    let mut seen: Vec<(OrbitKind, u32)> = Vec::new();
    for (kind, m) in terms {
        if let Some(label) = kind.label() {
            // one label cannot name two different critical points
            if let Some(clash) = seen
                .iter()
                .find(|(k, _)| k.label() == Some(label) && *k != kind)
            {
                return Err(Error::Semantic(format!(
                    "label {label:?} used for both {} and {kind}",
                    clash.0
                )));
            }
        }
        seen.push((kind, m));
    }
    Ok(OrbitSet::from_terms(seen))
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(o, _)| o)
    }

    fn rest_is(&self, word: &str) -> bool {
        let rest: String = self.chars[self.pos.min(self.chars.len())..]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        rest.starts_with(word)
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            position: self.offset(),
            expected: expected.to_vec(),
            found: self.peek(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char, name: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn int(&mut self) -> Result<u32> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["integer"]).into());
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        digits
            .parse::<u32>()
            .map_err(|_| Error::Semantic(format!("integer {digits} is out of range")))
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.pos += 1,
            _ => return Err(self.error(&["identifier"])),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn bracket_slope(&mut self) -> Result<Slope> {
        self.expect('[', "'['")?;
        let p = self.int()?;
        self.expect('/', "'/'")?;
        let q = self.int()?;
        self.expect(']', "']'")?;
        Slope::new(p, q)
    }

    fn kind(&mut self) -> Result<OrbitKind> {
        match self.peek() {
            Some('e') => {
                self.pos += 1;
                match self.peek() {
                    Some('[') => Ok(OrbitKind::SlopeElliptic(self.bracket_slope()?)),
                    Some('0') => {
                        self.pos += 1;
                        Ok(OrbitKind::e0())
                    }
                    Some('1') => {
                        self.pos += 1;
                        Ok(OrbitKind::e1())
                    }
                    Some(sign @ ('+' | '-')) => {
                        self.pos += 1;
                        self.expect(':', "':'")?;
                        let label = self.ident()?;
                        Ok(if sign == '+' {
                            OrbitKind::MorseNegative(label)
                        } else {
                            OrbitKind::MorsePositive(label)
                        })
                    }
                    _ => Err(self.error(&["'['", "'0'", "'1'", "'+'", "'-'"]).into()),
                }
            }
            Some('h') => {
                self.pos += 1;
                match self.peek() {
                    Some('[') => Ok(OrbitKind::SlopeHyperbolic(self.bracket_slope()?)),
                    Some('0') => {
                        self.pos += 1;
                        Ok(OrbitKind::h0())
                    }
                    Some('1') => {
                        self.pos += 1;
                        Ok(OrbitKind::h1())
                    }
                    Some(':') => {
                        self.pos += 1;
                        Ok(OrbitKind::MorseSaddle(self.ident()?))
                    }
                    _ => Err(self.error(&["'['", "'0'", "'1'", "':'"]).into()),
                }
            }
            _ => Err(self.error(&["'e'", "'h'", "\"empty\""]).into()),
        }
    }

    fn term(&mut self) -> Result<(OrbitKind, u32)> {
        let kind = self.kind()?;
        let mut m = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            m = self.int()?;
            if m == 0 {
                return Err(Error::Semantic(format!("multiplicity of {kind} must be positive")));
            }
        }
        Ok((kind, m))
    }
}

/// The orbit roster of degree at most `max_degree`, in canonical order.
pub fn roster(max_degree: u32, morse: &MorseConfig) -> Vec<OrbitKind> {
    let mut out: Vec<OrbitKind> = farey(max_degree)
        .into_iter()
        .flat_map(|s| [OrbitKind::SlopeElliptic(s), OrbitKind::SlopeHyperbolic(s)])
        .collect();
    if max_degree >= 1 {
        out.extend(morse.orbits());
    }
    out.sort();
    out
}

/// Number of ECH generators of degree exactly `degree`, by dynamic programming.
pub fn count_generators(degree: u32, morse: &MorseConfig) -> u128 {
    let target = degree as usize;
    let mut ways = vec![0u128; target + 1];
    ways[0] = 1;
    for kind in roster(degree, morse) {
        let d = kind.degree() as usize;
        let max_mult = if kind.is_hyperbolic() { 1 } else { target / d };
        let mut next = ways.clone();
        for total in 0..=target {
            for m in 1..=max_mult {
                if m * d > total {
                    break;
                }
                next[total] = next[total].saturating_add(ways[total - m * d]);
            }
        }
        ways = next;
    }
    ways[target]
}

/// All ECH generators of degree exactly `degree`, strictly increasing in canonical order.
pub fn enumerate_generators(degree: u32, morse: &MorseConfig) -> Result<Vec<OrbitSet>> {
    enumerate_generators_capped(degree, morse, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_generators_capped(degree: u32, morse: &MorseConfig, cap: usize) -> Result<Vec<OrbitSet>> {
    let count = count_generators(degree, morse);
    if count > cap as u128 {
        return Err(Error::ResourceGuard { count, cap });
    }
    let roster = roster(degree, morse);
    let mut out = Vec::with_capacity(count as usize);
    let mut current: Vec<(OrbitKind, u32)> = Vec::new();
    fill(&roster, 0, degree as u64, &mut current, &mut out);
    out.sort();
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

fn fill(
    roster: &[OrbitKind],
    start: usize,
    remaining: u64,
    current: &mut Vec<(OrbitKind, u32)>,
    out: &mut Vec<OrbitSet>,
) {
    if remaining == 0 {
        // roster order is canonical, so `current` already is too
        out.push(OrbitSet {
            entries: current.clone(),
        });
        return;
    }
    for (i, kind) in roster.iter().enumerate().skip(start) {
        let d = kind.degree();
        if d > remaining {
            continue;
        }
        let max_mult = if kind.is_hyperbolic() { 1 } else { remaining / d };
        for m in 1..=max_mult {
            current.push((kind.clone(), m as u32));
            fill(roster, i + 1, remaining - m * d, current, out);
            current.pop();
        }
    }
}

/// Rotation class of an elliptic orbit of degree `q` relative to the bound `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EllipticClass {
    QPositive,
    QNegative,
    Neither,
}

/// Classifies a rotation number. When `q/Q > 1/2` the two intervals overlap
/// and Q-positive takes precedence.
pub fn classify_elliptic(theta: f64, q: u32, degree_bound: u32) -> Result<EllipticClass> {
    if degree_bound == 0 || q == 0 || q > degree_bound {
        return Err(Error::Domain(format!(
            "need 1 <= q <= Q, got q = {q}, Q = {degree_bound}"
        )));
    }
    if !theta.is_finite() {
        return Err(Error::Domain(format!("rotation number {theta} is not finite")));
    }
    let frac = theta.rem_euclid(1.0);
    let width = q as f64 / degree_bound as f64;
    Ok(if frac > 0.0 && frac < width {
        EllipticClass::QPositive
    } else if frac > 1.0 - width && frac < 1.0 {
        EllipticClass::QNegative
    } else {
        EllipticClass::Neither
    })
}
