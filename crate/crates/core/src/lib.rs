//! Finite presheaf toposes and a strict universe of propositions.
//!
//! The crate builds, from the ground up:
//!
//! * [`fincat`] — finite categories given by explicit composition tables;
//! * [`presheaf`] — finite presheaves on such a category, natural
//!   transformations, and finite-limit machinery (terminal, products,
//!   pullbacks, images, monomorphism tests);
//! * [`topos`] — the subobject classifier Ω built from sieves, classifying
//!   maps, and the Heyting algebra of subobjects;
//! * [`natmodel`] — types over a context presented as local-universe
//!   diagrams Γ → V ← E with strictly functorial substitution, context
//!   extension, and terms as sections;
//! * [`propquot`] — the universe of propositions Γ → 1 ← Ω, the El/name
//!   retract, the quotient of types by judgemental isomorphism of
//!   subsingletons, and propositional extensionality;
//! * [`sample`] — seeded random generators for all of the above, used by
//!   the law-checking harness.
//!
//! Everything is finite and checked eagerly: constructors verify
//! functoriality, naturality, and closure conditions exhaustively, so a
//! value that exists is a value that satisfies its laws.
//!
//! The central fact, in executable form:
//!
//! ```
//! use std::sync::Arc;
//! use propcoh_core::fincat::{builtin_base, BaseName};
//! use propcoh_core::presheaf::Presheaf;
//! use propcoh_core::propquot::{el, name, retract_counterexample, top_code, types_equal_q};
//!
//! // Before the quotient, el ∘ name is not the identity on diagrams…
//! let (a, b) = retract_counterexample();
//! assert_ne!(a, b);
//! // …but the quotient identifies exactly such pairs…
//! assert!(types_equal_q(&a, &b).unwrap());
//! // …while the other composite is the identity on the nose.
//! let gamma = Presheaf::constant(Arc::new(builtin_base(BaseName::Pt)), &["x", "y"]);
//! let code = top_code(&gamma);
//! assert_eq!(name(&el(&code)).unwrap(), code);
//! ```

pub mod fincat;
pub mod natmodel;
pub mod presheaf;
pub mod propquot;
pub mod sample;
pub mod topos;

use thiserror::Error;

/// Errors shared by every layer of the model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed category: {0}")]
    MalformedCategory(String),
    #[error("unknown builtin base `{0}`")]
    UnknownBase(String),
    #[error("morphisms `{g}` and `{f}` are not composable")]
    NotComposable { g: String, f: String },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("malformed presheaf: {0}")]
    MalformedPresheaf(String),
    #[error("values live over different base categories")]
    BaseMismatch,
    #[error("components are not natural at morphism `{witness}`")]
    NotNatural { witness: String },
    #[error("natural transformation does not target Ω")]
    TargetNotOmega,
    #[error("subobjects or codes live over different ambient contexts")]
    AmbientMismatch,
    #[error("diagram legs do not meet at the required object: {0}")]
    EndpointMismatch(String),
    #[error("candidate map is not a section of the extension projection")]
    NotASection,
    #[error("type is not a proposition (its extension is not a subsingleton)")]
    NotAProposition,
    #[error("term does not belong to the universe of propositions")]
    WrongType,
    #[error("search space too large: {0}")]
    SizeLimitExceeded(String),
}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
