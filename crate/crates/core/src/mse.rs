//! Morphisms with Sturmian erasures (MSE): exact membership, the length
//! pre-filter, intercalation, the `ψₙ` prime family and prime/composite
//! certificates in `MSE_i`.
//!
//! # Deciding membership
//!
//! An MSE morphism either permutes `A3` or erases some letter `i`. In the
//! erasing case `f(x) = f(π_i(x))` and `π_i(x)` ranges over all Sturmian
//! words, so `f` is MSE exactly when, for each `j`, the two-letter morphism
//! `h_j = π_j ∘ f` restricted to `A3 \ {i}` maps Sturmian words to Sturmian
//! words. After recoding `A3 \ {i}` and `A3 \ {j}` onto `{0, 1}`
//! (order-preserving), that is membership of `h_j` in `St`, which
//! [`st_membership`] decides with a certificate. Composing with `E` does not
//! change `St` membership, so the recoding choice does not affect verdicts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::is_unit;
use crate::morphism::{erasure, phi1, phi1_tilde, transposition, Morphism, MorphismError};
use crate::st::{st_membership, StCertificate, StRejection};
use crate::word::{erase, FiniteWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MseError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("psi index must be at least 1, got {0}")]
    PsiIndex(usize),
    #[error("psi({n}) failed its projection check: {detail}")]
    ProjectionMismatch { n: usize, detail: String },
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// St certificate of one projection `h_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionCertificate {
    pub projection: Letter,
    pub recoded: Morphism,
    pub certificate: StCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum MseRejection {
    /// Only morphisms on three letters are considered.
    NotTernary { domain: usize },
    /// Neither a permutation nor erasing.
    NotPermutationNoErasedLetter,
    /// `h_j` is not in St.
    Projection { erased: Letter, projection: Letter, recoded: Morphism, cause: StRejection },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MseVerdict {
    Permutation,
    ErasingMember { erased: Letter, certificates: Vec<ProjectionCertificate> },
    Rejected { rejection: MseRejection },
}

impl MseVerdict {
    pub fn is_member(&self) -> bool {
        !matches!(self, MseVerdict::Rejected { .. })
    }
}

/// The two letters of `A3 \ {i}`, ascending.
fn others(i: Letter) -> [Letter; 2] {
    match i {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

/// Order-preserving map `A3 \ {j} → {0, 1}`.
fn recoding(j: Letter) -> [Letter; 3] {
    let [c, d] = others(j);
    let mut map = [2; 3];
    map[c as usize] = 0;
    map[d as usize] = 1;
    map
}

/// `h_j`: `π_j ∘ f` on `A3 \ {i}`, recoded onto `{0, 1}` on both sides.
pub fn recoded_projection(f: &Morphism, erased: Letter, projection: Letter) -> Morphism {
    let map = recoding(projection);
    let images = others(erased)
        .iter()
        .map(|&a| erase(f.image(a), projection).relabel(&map))
        .collect();
    Morphism::new(images).expect("two letters")
}

pub fn mse_membership(f: &Morphism) -> MseVerdict {
    if f.domain() != 3 {
        return MseVerdict::Rejected { rejection: MseRejection::NotTernary { domain: f.domain() } };
    }
    if f.is_permutation() {
        return MseVerdict::Permutation;
    }
    let Some(erased) = f.letters().find(|&a| f.image(a).is_empty()) else {
        return MseVerdict::Rejected { rejection: MseRejection::NotPermutationNoErasedLetter };
    };
    let mut certificates = Vec::with_capacity(3);
    for projection in 0..3 {
        let recoded = recoded_projection(f, erased, projection);
        match st_membership(&recoded) {
            Ok(certificate) => certificates.push(ProjectionCertificate { projection, recoded, certificate }),
            Err(cause) => {
                return MseVerdict::Rejected {
                    rejection: MseRejection::Projection { erased, projection, recoded, cause },
                }
            }
        }
    }
    MseVerdict::ErasingMember { erased, certificates }
}

/// Why a morphism erasing 2 fails the length pre-filter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "fails", rename_all = "snake_case")]
pub enum LengthWitness {
    /// `|f(a)| < 2`.
    ShortImage { letter: Letter, length: usize },
    /// `|f(a)|₀ + |f(a)|₁ = 0`.
    NoBinaryLetter { letter: Letter },
    /// `|f(01)|_a = 0`.
    LetterMissing { letter: Letter },
}

/// Necessary conditions for membership in `MSE_2`: for `a ∈ {0, 1}`,
/// `|f(a)| ≥ 2`, `|f(a)|₀ + |f(a)|₁ ≥ 1` and `|f(01)|_a ≥ 1`.
pub fn longueur_filter(f: &Morphism) -> Result<Result<(), LengthWitness>, MseError> {
    if f.domain() != 3 || !f.image(2).is_empty() {
        return Err(MseError::Precondition("the length filter needs a morphism on A3 with f(2) = ε".into()));
    }
    for a in 0..2 {
        let img = f.image(a);
        if img.len() < 2 {
            return Ok(Err(LengthWitness::ShortImage { letter: a, length: img.len() }));
        }
        if img.count(0) + img.count(1) == 0 {
            return Ok(Err(LengthWitness::NoBinaryLetter { letter: a }));
        }
    }
    let both = f.image(0).concat(f.image(1));
    if let Some(letter) = (0..2).find(|&a| both.count(a) == 0) {
        return Ok(Err(LengthWitness::LetterMissing { letter }));
    }
    Ok(Ok(()))
}

/// `σ ∘ f ∘ σ` with `σ` exchanging `erased` and 2, so the result erases 2.
pub fn relabel_erased_to_two(f: &Morphism, erased: Letter) -> Morphism {
    if erased == 2 {
        return f.clone();
    }
    let sigma = transposition(1 - erased);
    sigma.compose(f).and_then(|g| g.compose(&sigma)).expect("A3 endomorphisms")
}

/// Rebuilds `x` from `π₂(x) = u`, `π₁(x) = v` and `π₀(x) = w`.
///
/// At each step at most one letter can be emitted: 0 needs `u` and `v` to
/// start with 0, 1 needs `u` and `w` to start with 1, 2 needs `v` and `w` to
/// start with 2. Returns `Ok(None)` when no letter applies before all three
/// words are used up together.
pub fn intercalate(u: &FiniteWord, v: &FiniteWord, w: &FiniteWord) -> Result<Option<FiniteWord>, MseError> {
    for (word, banned, name) in [(u, 2, "u"), (v, 1, "v"), (w, 0, "w")] {
        if word.count(banned) > 0 {
            return Err(MseError::Precondition(format!("{name} = {word} must not contain {banned}")));
        }
    }
    let (mut i, mut j, mut k) = (0, 0, 0);
    let mut out = Vec::with_capacity(u.len() + v.len().max(w.len()));
    loop {
        let (a, b, c) = (u.get(i).copied(), v.get(j).copied(), w.get(k).copied());
        match (a, b, c) {
            (None, None, None) => return Ok(Some(FiniteWord::new(out).expect("letters in range"))),
            (Some(0), Some(0), _) => {
                out.push(0);
                i += 1;
                j += 1;
            }
            (Some(1), _, Some(1)) => {
                out.push(1);
                i += 1;
                k += 1;
            }
            (_, Some(2), Some(2)) => {
                out.push(2);
                j += 1;
                k += 1;
            }
            _ => return Ok(None),
        }
    }
}

/// `ψₙ` with its three projections `f_n = π₂∘ψₙ`, `g_n = π₁∘ψₙ`, `h_n = π₀∘ψₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiFamily {
    pub n: usize,
    pub psi: Morphism,
    pub f: Morphism,
    pub g: Morphism,
    pub h: Morphism,
}

fn erase_two(f: Morphism) -> Morphism {
    let mut images = f.images().to_vec();
    images[2] = FiniteWord::empty();
    Morphism::new(images).expect("three letters").with_codomain(3)
}

/// `f_n = φ₁ⁿ`.
pub fn psi_component_f(n: usize) -> Result<Morphism, MseError> {
    Ok(erase_two(phi1().power(n as u32)?))
}

/// `g_n = E₀ ∘ φ̃₁ ∘ E₂ ∘ φ̃₁^{n−1}`.
pub fn psi_component_g(n: usize) -> Result<Morphism, MseError> {
    let tail = phi1_tilde().power(n as u32 - 1)?;
    Ok(erase_two(transposition(0).compose(&phi1_tilde())?.compose(&transposition(2))?.compose(&tail)?))
}

/// `h_n = E₂ ∘ E₀ ∘ φ̃₁^{n−1}`, with 2 ↦ ε.
pub fn psi_component_h(n: usize) -> Result<Morphism, MseError> {
    let tail = phi1_tilde().power(n as u32 - 1)?;
    Ok(erase_two(transposition(2).compose(&transposition(0))?.compose(&tail)?))
}

fn psi_images(n: usize) -> [FiniteWord; 2] {
    let w = |s: &str| s.parse::<FiniteWord>().expect("digits");
    let mut prev = [w("01"), w("20")];
    if n == 1 {
        return prev;
    }
    let mut cur = [w("2010"), w("01")];
    for _ in 2..n {
        // ψ_{m+1}(0) = ψ_{m−1}(0)ψ_{m−1}(1)ψ_{m−1}(0), ψ_{m+1}(1) = ψ_m(0)
        let zero = prev[0].concat(&prev[1]).concat(&prev[0]);
        let next = [zero, cur[0].clone()];
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Builds `ψₙ` by its recurrence and checks it against the independently
/// built projections, both by projecting and by intercalating them.
pub fn psi(n: usize) -> Result<PsiFamily, MseError> {
    if n < 1 {
        return Err(MseError::PsiIndex(n));
    }
    let [zero, one] = psi_images(n);
    let psi = Morphism::new(vec![zero, one, FiniteWord::empty()])?.with_codomain(3);
    let fam = PsiFamily { n, f: psi_component_f(n)?, g: psi_component_g(n)?, h: psi_component_h(n)?, psi };
    for (proj, component, name) in [(2, &fam.f, "f"), (1, &fam.g, "g"), (0, &fam.h, "h")] {
        if erasure(proj).compose(&fam.psi)? != *component {
            return Err(MseError::ProjectionMismatch { n, detail: format!("pi_{proj} o psi != {name}_{n}") });
        }
    }
    for a in 0..3 {
        let rebuilt = intercalate(fam.f.image(a), fam.g.image(a), fam.h.image(a))?;
        if rebuilt.as_ref() != Some(fam.psi.image(a)) {
            return Err(MseError::ProjectionMismatch { n, detail: format!("intercalation differs at letter {a}") });
        }
    }
    Ok(fam)
}

/// `f(j)` and `f(k)` for `A3 = {i, j, k}`, none a prefix or suffix of the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixSuffixWitness {
    pub erased: Letter,
    pub letters: [Letter; 2],
    pub images: [FiniteWord; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PrimalityVerdict {
    PrimeCertified { witness: PrefixSuffixWitness },
    /// `f = outer ∘ inner`, both in MSE, `inner` not a unit.
    CompositeCertified { outer: Morphism, inner: Morphism },
    Unknown { note: String },
}

fn related(x: &FiniteWord, y: &FiniteWord) -> bool {
    x.is_prefix_of(y) || x.is_suffix_of(y)
}

fn single(a: Letter) -> FiniteWord {
    FiniteWord::new(vec![a]).expect("letter")
}

fn morphism_from(assign: [(Letter, FiniteWord); 3]) -> Morphism {
    let mut images = vec![FiniteWord::empty(); 3];
    for (a, w) in assign {
        images[a as usize] = w;
    }
    Morphism::new(images).expect("three letters").with_codomain(3)
}

/// Prime/composite certificate for `f ∈ MSE_i`.
///
/// Prime when neither of `f(j)`, `f(k)` is a prefix or suffix of the other.
/// Otherwise, under `|f(012)|_j > |f(012)|_k ≥ |f(012)|_i`, the shorter image
/// is split off the longer one to build `f = g ∘ h`; the factorization is
/// verified before it is reported. Anything else is `Unknown`.
pub fn primality(f: &Morphism) -> Result<PrimalityVerdict, MseError> {
    let erased = match mse_membership(f) {
        MseVerdict::ErasingMember { erased, .. } => erased,
        MseVerdict::Permutation => {
            return Ok(PrimalityVerdict::Unknown {
                note: "permutations are units of MSE and are not prime".into(),
            })
        }
        MseVerdict::Rejected { .. } => {
            return Err(MseError::Precondition("primality needs a morphism in MSE with an erased letter".into()))
        }
    };
    let [j, k] = others(erased);
    let (fj, fk) = (f.image(j), f.image(k));
    if !related(fj, fk) && !related(fk, fj) {
        return Ok(PrimalityVerdict::PrimeCertified {
            witness: PrefixSuffixWitness { erased, letters: [j, k], images: [fj.clone(), fk.clone()] },
        });
    }

    let counts = FiniteWord::concat(&f.image(0).concat(f.image(1)), f.image(2)).counts();
    let (hi, lo) = if counts[j as usize] >= counts[k as usize] { (j, k) } else { (k, j) };
    if !(counts[hi as usize] > counts[lo as usize] && counts[lo as usize] >= counts[erased as usize]) {
        return Ok(PrimalityVerdict::Unknown {
            note: "the images are prefix/suffix related but the letter counts are outside the decidable regime".into(),
        });
    }

    for (long, short) in [(j, k), (k, j)] {
        let (fl, fs) = (f.image(long), f.image(short));
        let candidates = [
            // f(long) = u·v, f(short) = u
            fs.is_prefix_of(fl).then(|| {
                let v = FiniteWord::new(fl[fs.len()..].to_vec()).expect("letters");
                (
                    morphism_from([(long, fs.clone()), (short, v), (erased, FiniteWord::empty())]),
                    morphism_from([
                        (long, single(long).concat(&single(short))),
                        (short, single(long).concat(&single(erased))),
                        (erased, FiniteWord::empty()),
                    ]),
                )
            }),
            // f(long) = v·u, f(short) = u
            fs.is_suffix_of(fl).then(|| {
                let v = FiniteWord::new(fl[..fl.len() - fs.len()].to_vec()).expect("letters");
                (
                    morphism_from([(long, fs.clone()), (short, v), (erased, FiniteWord::empty())]),
                    morphism_from([
                        (long, single(short).concat(&single(long))),
                        (short, single(erased).concat(&single(long))),
                        (erased, FiniteWord::empty()),
                    ]),
                )
            }),
        ];
        for (outer, inner) in candidates.into_iter().flatten() {
            if outer.compose(&inner)? == *f
                && mse_membership(&outer).is_member()
                && mse_membership(&inner).is_member()
                && !is_unit(&inner)
            {
                return Ok(PrimalityVerdict::CompositeCertified { outer, inner });
            }
        }
    }
    Ok(PrimalityVerdict::Unknown { note: "no verified factorization found".into() })
}
