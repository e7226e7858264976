//! Letter-to-word morphisms, their composition and incidence matrices.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::word::{FiniteWord, Letter, ALPHABET_SIZE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("letter {letter} is outside the domain of a morphism on {domain} letters")]
    LetterOutsideDomain { letter: Letter, domain: usize },
    #[error("cannot compose: image letter {letter} is outside the domain of the outer morphism ({domain} letters)")]
    AlphabetMismatch { letter: Letter, domain: usize },
    #[error("a morphism needs a domain of 1 to 3 letters, got {0}")]
    BadDomain(usize),
    #[error("matrix is {rows}x{cols}, determinant needs a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("cannot multiply a {0}x{1} matrix by a {2}x{3} matrix")]
    DimensionMismatch(usize, usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismParseError {
    #[error("in morphism {text:?} at position {position}: expected {expected}")]
    Syntax { text: String, position: usize, expected: &'static str },
    #[error("in morphism {text:?}: letter {letter} is defined twice")]
    DuplicateLetter { text: String, letter: Letter },
    #[error("in morphism {text:?}: letter {letter} has no image")]
    MissingLetter { text: String, letter: Letter },
}

/// A morphism `f : {0..domain} → {0..codomain}*`.
///
/// Equality and hashing are extensional: two morphisms are equal when their
/// images agree letter by letter, whatever codomain they were declared with.
#[derive(Debug, Clone)]
pub struct Morphism {
    images: Vec<FiniteWord>,
    codomain: usize,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for Morphism {}

impl Hash for Morphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl Morphism {
    /// Builds a morphism on `images.len()` letters; the codomain is the
    /// smallest alphabet containing both the domain and every image letter.
    pub fn new(images: Vec<FiniteWord>) -> Result<Self, MorphismError> {
        let domain = images.len();
        if domain == 0 || domain > ALPHABET_SIZE {
            return Err(MorphismError::BadDomain(domain));
        }
        let top = images
            .iter()
            .flat_map(|w| w.iter())
            .map(|&l| l as usize + 1)
            .max()
            .unwrap_or(0);
        Ok(Morphism { images, codomain: domain.max(top) })
    }

    /// Builds from digit-string images; panics on malformed input.
    pub fn from_images(images: &[&str]) -> Self {
        Self::new(images.iter().map(|s| s.parse().expect("digit string")).collect())
            .expect("valid morphism")
    }

    pub fn identity(domain: usize) -> Self {
        Self::new((0..domain as Letter).map(|a| FiniteWord::from_vec_unchecked(vec![a])).collect())
            .expect("domain in range")
    }

    /// Same images, viewed as a map into a larger alphabet.
    pub fn with_codomain(&self, codomain: usize) -> Self {
        Morphism { images: self.images.clone(), codomain: codomain.max(self.codomain) }
    }

    pub fn domain(&self) -> usize {
        self.images.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn image(&self, a: Letter) -> &FiniteWord {
        &self.images[a as usize]
    }

    pub fn images(&self) -> &[FiniteWord] {
        &self.images
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.domain() as Letter
    }

    pub fn is_erasing(&self) -> bool {
        self.images.iter().any(|w| w.is_empty())
    }

    /// Total length of all images.
    pub fn size(&self) -> usize {
        self.images.iter().map(|w| w.len()).sum()
    }

    /// True when `f` maps the domain bijectively onto single letters of the same alphabet.
    pub fn is_permutation(&self) -> bool {
        let mut seen = [false; ALPHABET_SIZE];
        self.images.iter().all(|w| {
            w.len() == 1 && (w[0] as usize) < self.domain() && !std::mem::replace(&mut seen[w[0] as usize], true)
        })
    }

    pub fn apply(&self, w: &[Letter]) -> Result<FiniteWord, MorphismError> {
        let mut out = Vec::new();
        for &a in w {
            let img = self
                .images
                .get(a as usize)
                .ok_or(MorphismError::LetterOutsideDomain { letter: a, domain: self.domain() })?;
            out.extend_from_slice(img);
        }
        Ok(FiniteWord::from_vec_unchecked(out))
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism, MorphismError> {
        let images = inner
            .images
            .iter()
            .map(|w| {
                self.apply(w).map_err(|_| {
                    let letter = *w.iter().find(|&&l| l as usize >= self.domain()).expect("bad letter");
                    MorphismError::AlphabetMismatch { letter, domain: self.domain() }
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Morphism { images, codomain: self.codomain })
    }

    /// `f^n`; requires the images to stay inside the domain.
    pub fn power(&self, n: u32) -> Result<Morphism, MorphismError> {
        let mut acc = Morphism::identity(self.domain());
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `M_f` with `m[i][j] = |f(j)|_i`, of size codomain × domain.
    pub fn incidence(&self) -> IncidenceMatrix {
        let rows = self.codomain;
        let cols = self.domain();
        let mut entries = vec![BigUint::zero(); rows * cols];
        for (j, w) in self.images.iter().enumerate() {
            for &i in w.iter() {
                entries[i as usize * cols + j] += 1u32;
            }
        }
        IncidenceMatrix { rows, cols, entries }
    }

    /// Letters occurring in `f(a)`, as a bit set.
    pub(crate) fn image_letters(&self, a: Letter) -> u8 {
        self.image(a).iter().fold(0, |m, &l| m | (1 << l))
    }
}

/// `E`: exchanges 0 and 1.
pub fn exchange() -> Morphism {
    Morphism::from_images(&["1", "0"])
}

/// `φ`: 0 ↦ 01, 1 ↦ 0.
pub fn phi() -> Morphism {
    Morphism::from_images(&["01", "0"])
}

/// `φ̃`: 0 ↦ 10, 1 ↦ 0.
pub fn phi_tilde() -> Morphism {
    Morphism::from_images(&["10", "0"])
}

/// `φ₁`: `φ` extended to three letters with 2 ↦ ε.
pub fn phi1() -> Morphism {
    Morphism::from_images(&["01", "0", ""]).with_codomain(3)
}

/// `φ̃₁`: `φ̃` extended to three letters with 2 ↦ ε.
pub fn phi1_tilde() -> Morphism {
    Morphism::from_images(&["10", "0", ""]).with_codomain(3)
}

/// `E_i`: the transposition of `A3` fixing `i`.
pub fn transposition(fixed: Letter) -> Morphism {
    let images: Vec<FiniteWord> = (0..3u8)
        .map(|a| {
            let b = if a == fixed { a } else { 3 - fixed - a };
            FiniteWord::from_vec_unchecked(vec![b])
        })
        .collect();
    Morphism::new(images).expect("three letters")
}

/// `π_i` as a morphism on `A3`.
pub fn erasure(i: Letter) -> Morphism {
    let images = (0..3u8)
        .map(|a| FiniteWord::from_vec_unchecked(if a == i { vec![] } else { vec![a] }))
        .collect();
    Morphism::new(images).expect("three letters").with_codomain(3)
}

/// All six permutations of `A3`.
pub fn permutations() -> Vec<Morphism> {
    const P: [[Letter; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    P.iter()
        .map(|p| Morphism::new(p.iter().map(|&b| FiniteWord::from_vec_unchecked(vec![b])).collect()).unwrap())
        .collect()
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, w) in self.images.iter().enumerate() {
            if a > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}={w}")?;
        }
        Ok(())
    }
}

/// Parses `letter=image` entries separated by commas, e.g. `0=02,1=10,2=`.
impl FromStr for Morphism {
    type Err = MorphismParseError;

    fn from_str(text: &str) -> Result<Self, MorphismParseError> {
        let bytes = text.as_bytes();
        let syntax = |position, expected| MorphismParseError::Syntax { text: text.to_string(), position, expected };
        let mut images: [Option<FiniteWord>; ALPHABET_SIZE] = Default::default();
        let mut pos = 0;
        loop {
            let letter = match bytes.get(pos) {
                Some(c @ b'0'..=b'2') => c - b'0',
                _ => return Err(syntax(pos, "a letter 0, 1 or 2")),
            };
            pos += 1;
            if bytes.get(pos) != Some(&b'=') {
                return Err(syntax(pos, "'='"));
            }
            pos += 1;
            let start = pos;
            while matches!(bytes.get(pos), Some(b'0'..=b'2')) {
                pos += 1;
            }
            let img: FiniteWord = text[start..pos].parse().expect("digits checked");
            if images[letter as usize].replace(img).is_some() {
                return Err(MorphismParseError::DuplicateLetter { text: text.to_string(), letter });
            }
            match bytes.get(pos) {
                None => break,
                Some(b',') => pos += 1,
                Some(_) => return Err(syntax(pos, "an image letter 0, 1 or 2, ',' or end of input")),
            }
        }
        let domain = images.iter().rposition(Option::is_some).map_or(0, |i| i + 1);
        let images = images[..domain]
            .iter()
            .enumerate()
            .map(|(a, w)| {
                w.clone().ok_or(MorphismParseError::MissingLetter { text: text.to_string(), letter: a as Letter })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Morphism::new(images).expect("domain is 1..=3"))
    }
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Morphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Occurrence-count matrix with arbitrary-precision entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigUint>,
}

impl IncidenceMatrix {
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IncidenceMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().map(BigUint::from).collect(),
        }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigUint>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IncidenceMatrix { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IncidenceMatrix { rows: n, cols: n, entries: vec![BigUint::zero(); n * n] };
        for i in 0..n {
            m.entries[i * n + i] = 1u32.into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i * self.cols + j]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigUint>> {
        self.entries.chunks(self.cols.max(1)).map(<[BigUint]>::to_vec).collect()
    }

    pub fn column_sum(&self, j: usize) -> BigUint {
        (0..self.rows).map(|i| self.get(i, j)).sum()
    }

    pub fn mul(&self, rhs: &IncidenceMatrix) -> Result<IncidenceMatrix, MorphismError> {
        if self.cols != rhs.rows {
            return Err(MorphismError::DimensionMismatch(self.rows, self.cols, rhs.rows, rhs.cols));
        }
        let mut entries = vec![BigUint::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    entries[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(IncidenceMatrix { rows: self.rows, cols: rhs.cols, entries })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, MorphismError> {
        if self.rows != self.cols {
            return Err(MorphismError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = self
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { sign } else { sign * &a[n - 1][n - 1] })
    }
}

/// JSON row arrays; entries beyond `u64` are written as decimal strings.
impl Serialize for IncidenceMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for row in self.row_vecs() {
            let row: Vec<serde_json::Value> = row
                .iter()
                .map(|x| match x.to_u64() {
                    Some(v) => v.into(),
                    None => x.to_string().into(),
                })
                .collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IncidenceMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct RowsVisitor;
        impl<'de> Visitor<'de> for RowsVisitor {
            type Value = Vec<Vec<serde_json::Value>>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of matrix rows")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut rows = Vec::new();
                while let Some(r) = seq.next_element()? {
                    rows.push(r);
                }
                Ok(rows)
            }
        }
        let raw = d.deserialize_seq(RowsVisitor)?;
        let rows = raw
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|v| match v {
                        serde_json::Value::Number(n) => n.as_u64().map(BigUint::from).ok_or("not a non-negative integer"),
                        serde_json::Value::String(s) => s.parse().map_err(|_| "bad integer string"),
                        _ => Err("expected an integer"),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(de::Error::custom)?;
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(de::Error::custom("ragged matrix"));
        }
        Ok(IncidenceMatrix::from_big_rows(rows))
    }
}
