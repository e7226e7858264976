//! Sturmian words, words with Sturmian erasures and the morphisms that
//! preserve them, with exact arithmetic for mechanical and billiard codings.
//!
//! Every membership verdict comes with a certificate that can be checked
//! independently: St factorizations recompose to the input, MSE verdicts
//! carry one St certificate per projection, and composite verdicts carry
//! their verified factors.

pub mod analysis;
pub mod billiard;
pub mod classify;
pub mod exactnum;
pub mod fibonacci;
pub mod morphism;
pub mod mse;
pub mod st;
pub mod stream;
pub mod word;

pub use analysis::{
    analyze_sturmian, balance_order, complexity, wse_verdict, BalanceProfile, ComplexityProfile, SturmianVerdict,
    Witness, WseVerdict,
};
pub use billiard::{billiard_word, classify, event_stream, BilliardClass, BilliardConfig, CrossingEvent};
pub use classify::{classify_letters, LetterClassification};
pub use exactnum::SqrtBasisNumber;
pub use morphism::{IncidenceMatrix, Morphism};
pub use mse::{intercalate, mse_membership, primality, psi, MseVerdict, PrimalityVerdict};
pub use st::{st_membership, StCertificate};
pub use stream::{apply_stream, fibonacci_stream, fixed_point_stream, mechanical_stream, WordStream};
pub use word::{erase, FiniteWord, Letter};
