//! Nilpotent, permuting and expansive letters of an endomorphism, and the
//! unit / nilpotent / expansive tests built on them.
//!
//! Letter sets are bit masks over the domain. The classification is computed
//! structurally (fixpoints over image letter sets) and cross-checked against
//! the growth of reduced image lengths obtained from incidence-matrix powers.

use serde::{Deserialize, Serialize};

use crate::morphism::Morphism;
use crate::word::Letter;

/// A set of letters as a bit mask.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Letter>", from = "Vec<Letter>")]
pub struct LetterSet(u8);

impl LetterSet {
    pub fn contains(self, a: Letter) -> bool {
        self.0 & (1 << a) != 0
    }

    pub fn insert(&mut self, a: Letter) {
        self.0 |= 1 << a;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: LetterSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: LetterSet) -> LetterSet {
        LetterSet(self.0 | other.0)
    }

    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..8).filter(move |&a| self.contains(a))
    }

    fn all(n: usize) -> LetterSet {
        LetterSet(((1u16 << n) - 1) as u8)
    }
}

impl From<LetterSet> for Vec<Letter> {
    fn from(s: LetterSet) -> Self {
        s.letters().collect()
    }
}

impl From<Vec<Letter>> for LetterSet {
    fn from(v: Vec<Letter>) -> Self {
        let mut s = LetterSet::default();
        v.into_iter().for_each(|a| s.insert(a));
        s
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut s = LetterSet::default();
        iter.into_iter().for_each(|a| s.insert(a));
        s
    }
}

/// `N_f`, `P'_f`, `P_f` and the expansive letters, with the exponent that
/// witnesses each letter's membership (`None` for expansive letters).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterClassification {
    pub nilpotent: LetterSet,
    pub permuting_core: LetterSet,
    pub permuting: LetterSet,
    pub expansive: LetterSet,
    pub witness_exponent: Vec<Option<u32>>,
}

/// Iteration cap `2^|A| + |A|`.
fn exponent_cap(n: usize) -> u32 {
    (1u32 << n) + n as u32
}

/// Classifies the letters of an endomorphism (`images` must stay in the domain).
pub fn classify_letters(f: &Morphism) -> LetterClassification {
    let n = f.domain();
    assert!(
        f.images().iter().all(|w| w.iter().all(|&l| (l as usize) < n)),
        "classification needs an endomorphism, got {f}"
    );
    let cap = exponent_cap(n);
    let image_set = |a: Letter| LetterSet(f.image_letters(a));
    let image_of_set = |s: LetterSet| s.letters().fold(LetterSet::default(), |acc, b| acc.union(image_set(b)));

    // N_f: least fixpoint of {a : f(a) ∈ N*}
    let mut nilpotent = LetterSet::default();
    loop {
        let next: LetterSet = f.letters().filter(|&a| image_set(a).is_subset(nilpotent)).collect();
        if next == nilpotent {
            break;
        }
        nilpotent = next;
    }

    // P'_f: cycles of the reduced map a ↦ π_N(f(a)) through single letters
    let reduced_single = |a: Letter| -> Option<Letter> {
        let mut it = f.image(a).iter().copied().filter(|&b| !nilpotent.contains(b));
        match (it.next(), it.next()) {
            (Some(b), None) => Some(b),
            _ => None,
        }
    };
    let mut witness_exponent = vec![None; n];
    let mut permuting_core = LetterSet::default();
    for a in f.letters().filter(|&a| !nilpotent.contains(a)) {
        let mut cur = a;
        for k in 1..=n as u32 {
            match reduced_single(cur) {
                Some(b) if b == a => {
                    permuting_core.insert(a);
                    witness_exponent[a as usize] = Some(k);
                    break;
                }
                Some(b) => cur = b,
                None => break,
            }
        }
    }

    // P_f: some iterate's letter set lies in (N ∪ P')* and is not inside N*
    let settled = nilpotent.union(permuting_core);
    let mut permuting = permuting_core;
    for a in f.letters().filter(|&a| !nilpotent.contains(a) && !permuting_core.contains(a)) {
        let mut s = LetterSet::default();
        s.insert(a);
        for k in 1..=cap {
            s = image_of_set(s);
            if s.is_subset(settled) && !s.is_subset(nilpotent) {
                permuting.insert(a);
                witness_exponent[a as usize] = Some(k);
                break;
            }
        }
    }

    // nilpotency exponent: first k with f^k(a) = ε
    for a in nilpotent.letters() {
        let mut s = LetterSet::default();
        s.insert(a);
        for k in 1..=cap {
            s = image_of_set(s);
            if s.is_empty() {
                witness_exponent[a as usize] = Some(k);
                break;
            }
        }
    }

    let expansive = LetterSet(LetterSet::all(n).0 & !nilpotent.0 & !permuting.0);
    debug_assert_eq!(growth_expansive(f, nilpotent), expansive, "growth cross-check failed for {f}");
    LetterClassification { nilpotent, permuting_core, permuting, expansive, witness_exponent }
}

/// Expansive letters by growth: the reduced length `|π_N(f^k(a))|` is
/// non-decreasing, and it still increases between exponents `cap` and `2·cap`
/// exactly when it is unbounded.
fn growth_expansive(f: &Morphism, nilpotent: LetterSet) -> LetterSet {
    let n = f.domain();
    let cap = exponent_cap(n) as usize;
    let m = f.incidence();
    let reduced: Vec<Vec<u128>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if nilpotent.contains(i as Letter) || nilpotent.contains(j as Letter) {
                        0
                    } else {
                        u128::try_from(m.get(i, j)).unwrap_or(u128::MAX)
                    }
                })
                .collect()
        })
        .collect();
    f.letters()
        .filter(|&a| !nilpotent.contains(a))
        .filter(|&a| {
            let mut v = vec![0u128; n];
            v[a as usize] = 1;
            let mut at_cap = 0;
            for k in 1..=2 * cap {
                v = (0..n)
                    .map(|i| (0..n).fold(0u128, |s, j| s.saturating_add(reduced[i][j].saturating_mul(v[j]))))
                    .collect();
                let len = v.iter().fold(0u128, |s, &x| s.saturating_add(x));
                if k == cap {
                    at_cap = len;
                }
                if k == 2 * cap {
                    return len > at_cap;
                }
            }
            unreachable!()
        })
        .collect()
}

/// `f(A) ⊆ N_f*`.
pub fn is_nilpotent_morphism(f: &Morphism) -> bool {
    let c = classify_letters(f);
    f.letters().all(|a| c.nilpotent.contains(a))
}

/// Some letter is expansive.
pub fn is_expansive(f: &Morphism) -> bool {
    !classify_letters(f).expansive.is_empty()
}

/// Neither nilpotent nor expansive.
pub fn is_unit(f: &Morphism) -> bool {
    let c = classify_letters(f);
    c.expansive.is_empty() && !f.letters().all(|a| c.nilpotent.contains(a))
}
