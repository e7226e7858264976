//! Membership in the monoid `St` generated by `E`, `φ` and `φ̃`, decided by
//! peeling generators off the left and certified by the factor sequence.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::morphism::{exchange, phi, phi_tilde, Morphism};
use crate::word::{FiniteWord, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    #[serde(rename = "E")]
    E,
    #[serde(rename = "phi")]
    Phi,
    #[serde(rename = "phit")]
    PhiTilde,
}

impl Generator {
    pub fn morphism(self) -> Morphism {
        match self {
            Generator::E => exchange(),
            Generator::Phi => phi(),
            Generator::PhiTilde => phi_tilde(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::E => "E",
            Generator::Phi => "phi",
            Generator::PhiTilde => "phit",
        })
    }
}

/// A factorization `f = F₁ ∘ F₂ ∘ … ∘ F_k` over the generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StCertificate {
    pub factors: Vec<Generator>,
}

impl StCertificate {
    pub fn new(factors: Vec<Generator>) -> Self {
        StCertificate { factors }
    }

    /// Number of `φ`/`φ̃` factors; an upper bound on the degree of the morphism.
    pub fn degree(&self) -> usize {
        self.factors.iter().filter(|&&g| g != Generator::E).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum StRejection {
    #[error("not a morphism from {{0,1}} to {{0,1}}*")]
    NotBinary,
    #[error("letter {letter} has an empty image")]
    Erasing { letter: Letter },
    #[error("incidence determinant is {det}, members of St have determinant ±1")]
    Determinant { det: String },
    #[error("no factorization over E, phi, phit")]
    NoDecomposition,
}

/// The two codes whose decoding inverts `φ` and `φ̃`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Code {
    /// `{01 → 0, 0 → 1}`
    Phi,
    /// `{10 → 0, 0 → 1}`
    PhiTilde,
}

/// Decodes `w` as `φ(w')` or `φ̃(w')`; `None` if `w` is not such an image.
pub fn decode_over_code(w: &[Letter], code: Code) -> Option<FiniteWord> {
    let mut out = Vec::with_capacity(w.len());
    let mut i = 0;
    while i < w.len() {
        match (code, w[i], w.get(i + 1)) {
            (Code::Phi, 0, Some(1)) => {
                out.push(0);
                i += 2;
            }
            (Code::Phi, 0, _) => {
                out.push(1);
                i += 1;
            }
            (Code::PhiTilde, 1, Some(0)) => {
                out.push(0);
                i += 2;
            }
            (Code::PhiTilde, 0, _) => {
                out.push(1);
                i += 1;
            }
            _ => return None,
        }
    }
    FiniteWord::new(out).ok()
}

fn decode_morphism(f: &Morphism, code: Code) -> Option<Morphism> {
    let images = f.images().iter().map(|w| decode_over_code(w, code)).collect::<Option<Vec<_>>>()?;
    Morphism::new(images).ok()
}

fn swap_letters(f: &Morphism) -> Morphism {
    let images = f.images().iter().map(|w| w.relabel(&[1, 0, 2])).collect();
    Morphism::new(images).expect("same domain")
}

/// Decides `f ∈ St` for a morphism on `{0, 1}`.
///
/// Erasing morphisms and morphisms whose incidence determinant is not `±1`
/// are rejected up front. Otherwise the search writes `f` as `G ∘ f'` or
/// `E ∘ G ∘ f'` with `G ∈ {φ, φ̃}` by decoding the images, and recurses on
/// `f'` until it reaches `Id` or `E`. A visited set bounds the search.
pub fn st_membership(f: &Morphism) -> Result<StCertificate, StRejection> {
    if f.domain() != 2 || f.images().iter().any(|w| w.iter().any(|&l| l > 1)) {
        return Err(StRejection::NotBinary);
    }
    if let Some(letter) = f.letters().find(|&a| f.image(a).is_empty()) {
        return Err(StRejection::Erasing { letter });
    }
    let det = f.with_codomain(2).incidence().determinant().expect("square 2x2");
    if det.abs() != BigInt::from(1) {
        return Err(StRejection::Determinant { det: det.to_string() });
    }
    let mut visited = HashSet::new();
    let factors = peel(f, &mut visited).ok_or(StRejection::NoDecomposition)?;
    let cert = StCertificate::new(factors);
    debug_assert_eq!(&recompose(&cert), f);
    Ok(cert)
}

fn peel(f: &Morphism, visited: &mut HashSet<Morphism>) -> Option<Vec<Generator>> {
    if *f == Morphism::identity(2) {
        return Some(Vec::new());
    }
    if *f == exchange() {
        return Some(vec![Generator::E]);
    }
    if !visited.insert(f.clone()) {
        return None;
    }
    let twisted = swap_letters(f);
    let attempts = [
        (None, Generator::Phi, Code::Phi, f),
        (None, Generator::PhiTilde, Code::PhiTilde, f),
        (Some(Generator::E), Generator::Phi, Code::Phi, &twisted),
        (Some(Generator::E), Generator::PhiTilde, Code::PhiTilde, &twisted),
    ];
    for (twist, gen, code, target) in attempts {
        if let Some(rest) = decode_morphism(target, code) {
            if let Some(tail) = peel(&rest, visited) {
                let mut out: Vec<Generator> = twist.into_iter().collect();
                out.push(gen);
                out.extend(tail);
                return Some(out);
            }
        }
    }
    None
}

/// Left-to-right composition of the certificate's factors.
pub fn recompose(c: &StCertificate) -> Morphism {
    c.factors
        .iter()
        .rev()
        .fold(Morphism::identity(2), |acc, g| g.morphism().compose(&acc).expect("binary morphisms"))
}

pub fn st_degree(c: &StCertificate) -> usize {
    c.degree()
}
