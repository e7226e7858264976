//! Lazily extended prefixes of infinite words.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::exactnum::SqrtBasisNumber;
use crate::morphism::{phi, Morphism, MorphismError};
use crate::word::{FiniteWord, Letter};

/// Input letters pulled per requested output letter before a morphic image
/// is declared bounded.
pub const DEFAULT_PULL_FACTOR: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error("stream is bounded: requested {requested} letters, only {produced} available")]
    BoundedOutput { requested: usize, produced: usize },
    #[error("seed {seed} is not prolongable: {reason}")]
    NotProlongable { seed: Letter, reason: String },
    #[error("parameter out of range: {0}")]
    ParameterRange(String),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    FixedPoint,
    Mechanical,
    Billiard,
    MorphicImage,
    Literal,
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SourceKind::FixedPoint => "fixed-point",
            SourceKind::Mechanical => "mechanical",
            SourceKind::Billiard => "billiard",
            SourceKind::MorphicImage => "morphic-image",
            SourceKind::Literal => "literal",
        })
    }
}

/// A generator appending letters to a stream's buffer.
pub(crate) trait LetterSource: Send {
    /// Grows `buf` to at least `target` letters, or fails if the word ends first.
    fn extend(&mut self, buf: &mut Vec<Letter>, target: usize) -> Result<(), StreamError>;
}

/// An infinite word, materialized one prefix at a time.
pub struct WordStream {
    kind: SourceKind,
    buf: Vec<Letter>,
    source: Box<dyn LetterSource>,
}

impl fmt::Debug for WordStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WordStream").field("kind", &self.kind).field("buffered", &self.buf.len()).finish()
    }
}

impl WordStream {
    pub(crate) fn from_source(kind: SourceKind, source: Box<dyn LetterSource>) -> Self {
        WordStream { kind, buf: Vec::new(), source }
    }

    pub fn kind(&self) -> SourceKind {
        self.kind
    }

    /// The prefix of length `len`.
    pub fn prefix(&mut self, len: usize) -> Result<FiniteWord, StreamError> {
        Ok(FiniteWord::from_vec_unchecked(self.letters(len)?.to_vec()))
    }

    pub(crate) fn letters(&mut self, len: usize) -> Result<&[Letter], StreamError> {
        if self.buf.len() < len {
            self.source.extend(&mut self.buf, len)?;
        }
        Ok(&self.buf[..len])
    }

    /// A finite word viewed as a stream; asking past its end is an error.
    pub fn literal(w: FiniteWord) -> Self {
        Self::from_source(SourceKind::Literal, Box::new(Literal(w)))
    }
}

struct Literal(FiniteWord);

impl LetterSource for Literal {
    fn extend(&mut self, buf: &mut Vec<Letter>, target: usize) -> Result<(), StreamError> {
        let end = target.min(self.0.len());
        if buf.len() < end {
            buf.extend_from_slice(&self.0[buf.len()..end]);
        }
        if target > self.0.len() {
            return Err(StreamError::BoundedOutput { requested: target, produced: self.0.len() });
        }
        Ok(())
    }
}

/// The fixed point of a prolongable morphism, produced as `x = f(x)`: the
/// buffer is read at a cursor and each letter's image is appended.
struct FixedPoint {
    f: Morphism,
    seed: Letter,
    cursor: usize,
}

impl LetterSource for FixedPoint {
    fn extend(&mut self, buf: &mut Vec<Letter>, target: usize) -> Result<(), StreamError> {
        if buf.is_empty() {
            buf.extend_from_slice(self.f.image(self.seed));
            self.cursor = 1;
        }
        while buf.len() < target {
            let a = buf[self.cursor];
            buf.extend_from_slice(self.f.image(a));
            self.cursor += 1;
        }
        Ok(())
    }
}

/// The Fibonacci word, fixed point of `φ`.
pub fn fibonacci_stream() -> WordStream {
    fixed_point_stream(phi(), 0).expect("φ is prolongable on 0")
}

/// The fixed point of `f` beginning with `seed`.
///
/// Requires `f(seed) = seed·u` with `u` nonempty and `f` non-erasing on every
/// letter reachable from `seed`.
pub fn fixed_point_stream(f: Morphism, seed: Letter) -> Result<WordStream, StreamError> {
    if seed as usize >= f.domain() {
        return Err(StreamError::NotProlongable { seed, reason: "seed is outside the domain".into() });
    }
    let img = f.image(seed);
    if img.first() != Some(&seed) || img.len() < 2 {
        return Err(StreamError::NotProlongable {
            seed,
            reason: format!("f({seed}) = {img} must start with {seed} and have length at least 2"),
        });
    }
    let mut reachable = vec![false; f.codomain()];
    let mut todo = vec![seed];
    while let Some(a) = todo.pop() {
        if std::mem::replace(&mut reachable[a as usize], true) {
            continue;
        }
        if a as usize >= f.domain() {
            return Err(StreamError::NotProlongable { seed, reason: format!("letter {a} is outside the domain") });
        }
        if f.image(a).is_empty() {
            return Err(StreamError::NotProlongable { seed, reason: format!("reachable letter {a} is erased") });
        }
        todo.extend(f.image(a).iter().copied());
    }
    Ok(WordStream::from_source(SourceKind::FixedPoint, Box::new(FixedPoint { f, seed, cursor: 0 })))
}

/// `s(n) = ⌊(n+1)α + ρ⌋ − ⌊nα + ρ⌋`, tracked exactly: `value = nα + ρ` and
/// its floor advance together, the floor moving by at most one per step.
struct Mechanical {
    alpha: SqrtBasisNumber,
    value: SqrtBasisNumber,
    floor: BigInt,
}

impl LetterSource for Mechanical {
    fn extend(&mut self, buf: &mut Vec<Letter>, target: usize) -> Result<(), StreamError> {
        while buf.len() < target {
            self.value = &self.value + &self.alpha;
            let next = &self.floor + BigInt::one();
            if (&self.value - &SqrtBasisNumber::from_bigint(next.clone())).signum() >= 0 {
                self.floor = next;
                buf.push(1);
            } else {
                buf.push(0);
            }
        }
        Ok(())
    }
}

/// The mechanical word of slope `alpha ∈ (0,1)` and intercept `rho ∈ [0,1)`.
pub fn mechanical_stream(alpha: SqrtBasisNumber, rho: SqrtBasisNumber) -> Result<WordStream, StreamError> {
    let one = SqrtBasisNumber::one();
    if alpha.signum() <= 0 || alpha >= one {
        return Err(StreamError::ParameterRange(format!("slope {alpha} must lie in (0, 1)")));
    }
    if rho.signum() < 0 || rho >= one {
        return Err(StreamError::ParameterRange(format!("intercept {rho} must lie in [0, 1)")));
    }
    let floor = rho.floor();
    Ok(WordStream::from_source(
        SourceKind::Mechanical,
        Box::new(Mechanical { alpha, value: rho, floor }),
    ))
}

struct MorphicImage {
    f: Morphism,
    inner: WordStream,
    consumed: usize,
    pull_factor: usize,
}

impl LetterSource for MorphicImage {
    fn extend(&mut self, buf: &mut Vec<Letter>, target: usize) -> Result<(), StreamError> {
        let budget = self.pull_factor.saturating_mul(target);
        while buf.len() < target {
            if self.consumed >= budget {
                return Err(StreamError::BoundedOutput { requested: target, produced: buf.len() });
            }
            let chunk = (target - buf.len()).max(64).min(budget - self.consumed);
            let upto = self.consumed + chunk;
            // a finite inner word yields what it has before the error
            let exhausted = match self.inner.letters(upto) {
                Ok(_) => false,
                Err(StreamError::BoundedOutput { .. }) => true,
                Err(e) => return Err(e),
            };
            let have = self.inner.buf.len().min(upto);
            for &a in &self.inner.buf[self.consumed..have] {
                if a as usize >= self.f.domain() {
                    return Err(MorphismError::LetterOutsideDomain { letter: a, domain: self.f.domain() }.into());
                }
                buf.extend_from_slice(self.f.image(a));
            }
            self.consumed = have;
            if exhausted && buf.len() < target {
                return Err(StreamError::BoundedOutput { requested: target, produced: buf.len() });
            }
        }
        Ok(())
    }
}

/// The image `f(s)`, pulled lazily from `s`.
pub fn apply_stream(f: Morphism, s: WordStream) -> WordStream {
    apply_stream_with_factor(f, s, DEFAULT_PULL_FACTOR)
}

/// As [`apply_stream`], failing with `BoundedOutput` once `pull_factor · L`
/// input letters have produced fewer than `L` output letters.
pub fn apply_stream_with_factor(f: Morphism, s: WordStream, pull_factor: usize) -> WordStream {
    WordStream::from_source(
        SourceKind::MorphicImage,
        Box::new(MorphicImage { f, inner: s, consumed: 0, pull_factor: pull_factor.max(1) }),
    )
}
