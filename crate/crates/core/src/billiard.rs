//! Cubic billiard words: the half-line `{ t·d + ρ : t ≥ 0 }` coded by the
//! faces of the integer unit cubes it crosses.
//!
//! Face `i` is crossed whenever coordinate `i` is an integer, at times
//! `t = (m − ρ_i)/d_i`. The crossing at `t = 0` counts when `ρ_i = 0`, since
//! the half-line starts on the face. Crossings at exactly equal times fuse
//! into one event whose letters are emitted in ascending order.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{parse_expr, ExprError, SqrtBasisNumber};
use crate::stream::{LetterSource, SourceKind, StreamError, WordStream};
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BilliardError {
    #[error("invalid billiard configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Direction `d` and intercept `ρ` of a half-line in ℝ³.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilliardConfig {
    d: [SqrtBasisNumber; 3],
    rho: [SqrtBasisNumber; 3],
}

impl BilliardConfig {
    /// Requires `d_i ≥ 0`, `d ≠ 0` and `0 ≤ ρ_i < 1`.
    pub fn new(d: [SqrtBasisNumber; 3], rho: [SqrtBasisNumber; 3]) -> Result<Self, BilliardError> {
        if d.iter().any(|x| x.signum() < 0) {
            return Err(BilliardError::Config("direction coordinates must be non-negative".into()));
        }
        if d.iter().all(|x| x.is_zero()) {
            return Err(BilliardError::Config("direction must be nonzero".into()));
        }
        let one = SqrtBasisNumber::one();
        if let Some(r) = rho.iter().find(|r| r.signum() < 0 || **r >= one) {
            return Err(BilliardError::Config(format!("intercept {r} is outside [0, 1)")));
        }
        Ok(BilliardConfig { d, rho })
    }

    /// Parses `"<expr>,<expr>,<expr>"` for both vectors.
    pub fn parse(d: &str, rho: &str) -> Result<Self, BilliardError> {
        BilliardConfig::new(parse_triple(d)?, parse_triple(rho)?)
    }

    pub fn direction(&self) -> &[SqrtBasisNumber; 3] {
        &self.d
    }

    pub fn intercept(&self) -> &[SqrtBasisNumber; 3] {
        &self.rho
    }

    /// The configuration with `d_i` and `ρ_i` set to zero: the orthogonal
    /// projection onto the other two coordinates. `None` if nothing moves.
    pub fn project_out(&self, i: Letter) -> Option<BilliardConfig> {
        let mut c = self.clone();
        c.d[i as usize] = SqrtBasisNumber::zero();
        c.rho[i as usize] = SqrtBasisNumber::zero();
        (!c.d.iter().all(|x| x.is_zero())).then_some(c)
    }
}

/// Parses three comma-separated number expressions.
pub fn parse_triple(text: &str) -> Result<[SqrtBasisNumber; 3], BilliardError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(BilliardError::Config(format!("expected three comma-separated values, got {:?}", text)));
    }
    let mut out = [SqrtBasisNumber::zero(), SqrtBasisNumber::zero(), SqrtBasisNumber::zero()];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = parse_expr(part.trim())?;
    }
    Ok(out)
}

/// One crossing: time `t` and the faces `Ω` crossed at that time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingEvent {
    pub t: SqrtBasisNumber,
    #[serde(rename = "omega")]
    pub faces: Vec<Letter>,
}

impl fmt::Display for CrossingEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let faces: Vec<String> = self.faces.iter().map(|a| a.to_string()).collect();
        write!(f, "t={} omega={{{}}}", self.t, faces.join(","))
    }
}

/// The infinite, time-ordered crossing events of a configuration.
pub struct EventStream {
    /// Next crossing time per moving face.
    next: [Option<SqrtBasisNumber>; 3],
    /// `1/d_i`, the gap between consecutive crossings of face `i`.
    step: [Option<SqrtBasisNumber>; 3],
}

pub fn event_stream(c: &BilliardConfig) -> EventStream {
    let mut next = [None, None, None];
    let mut step = [None, None, None];
    for i in 0..3 {
        if c.d[i].is_zero() {
            continue;
        }
        let inv = c.d[i].inverse().expect("nonzero direction");
        // first integer m ≥ ρ_i: 0 if ρ_i = 0, else 1
        let m = if c.rho[i].is_zero() { 0 } else { 1 };
        next[i] = Some(&(&SqrtBasisNumber::from_bigint(BigInt::from(m)) - &c.rho[i]) * &inv);
        step[i] = Some(inv);
    }
    EventStream { next, step }
}

impl Iterator for EventStream {
    type Item = CrossingEvent;

    fn next(&mut self) -> Option<CrossingEvent> {
        let mut faces: Vec<Letter> = Vec::with_capacity(3);
        let mut best: Option<&SqrtBasisNumber> = None;
        for (i, t) in self.next.iter().enumerate() {
            let Some(t) = t else { continue };
            match best.map(|b| t.cmp(b)) {
                None | Some(std::cmp::Ordering::Less) => {
                    best = Some(t);
                    faces.clear();
                    faces.push(i as Letter);
                }
                Some(std::cmp::Ordering::Equal) => faces.push(i as Letter),
                Some(std::cmp::Ordering::Greater) => {}
            }
        }
        let t = best?.clone();
        for &i in &faces {
            let i = i as usize;
            let (Some(cur), Some(step)) = (&self.next[i], &self.step[i]) else { unreachable!() };
            self.next[i] = Some(cur + step);
        }
        Some(CrossingEvent { t, faces })
    }
}

struct BilliardLetters {
    events: EventStream,
}

impl LetterSource for BilliardLetters {
    fn extend(&mut self, buf: &mut Vec<Letter>, target: usize) -> Result<(), StreamError> {
        while buf.len() < target {
            let event = self.events.next().expect("a nonzero direction crosses faces forever");
            buf.extend_from_slice(&event.faces);
        }
        Ok(())
    }
}

/// The coded word: the faces of each event, concatenated.
pub fn billiard_word(c: &BilliardConfig) -> WordStream {
    WordStream::from_source(SourceKind::Billiard, Box::new(BilliardLetters { events: event_stream(c) }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BilliardClass {
    /// All ratios between moving coordinates are rational.
    Periodic,
    /// One coordinate is zero and the other two have an irrational ratio.
    SturmianProjection,
    /// All coordinates move and every pairwise ratio is irrational.
    WseCandidate,
    /// Only one coordinate moves, or the ratios are mixed.
    Degenerate,
}

impl fmt::Display for BilliardClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BilliardClass::Periodic => "Periodic",
            BilliardClass::SturmianProjection => "SturmianProjection",
            BilliardClass::WseCandidate => "WSECandidate",
            BilliardClass::Degenerate => "Degenerate",
        })
    }
}

fn rational_ratio(a: &SqrtBasisNumber, b: &SqrtBasisNumber) -> bool {
    a.checked_div(b).expect("nonzero coordinate").is_rational()
}

pub fn classify(c: &BilliardConfig) -> BilliardClass {
    let moving: Vec<&SqrtBasisNumber> = c.d.iter().filter(|x| !x.is_zero()).collect();
    if moving.len() < 2 {
        return BilliardClass::Degenerate;
    }
    let mut rational = 0;
    let mut pairs = 0;
    for i in 0..moving.len() {
        for j in i + 1..moving.len() {
            pairs += 1;
            rational += rational_ratio(moving[i], moving[j]) as usize;
        }
    }
    match (moving.len(), rational) {
        (_, r) if r == pairs => BilliardClass::Periodic,
        (2, 0) => BilliardClass::SturmianProjection,
        (3, 0) => BilliardClass::WseCandidate,
        _ => BilliardClass::Degenerate,
    }
}

/// JSON log `[{"t": …, "omega": […]}, …]` of the first `count` events.
pub fn event_log_json(c: &BilliardConfig, count: usize) -> String {
    let events: Vec<CrossingEvent> = event_stream(c).take(count).collect();
    serde_json::to_string(&events).expect("events serialize")
}
