//! Types over a context as local-universe diagrams, with strictly
//! functorial substitution.
//!
//! A type over Γ is a diagram Γ → V ← E: the anchor `f: Γ → V` points
//! into a little universe `V` whose universal family is `p: E → V`.
//! Substitution along `σ: Δ → Γ` only recomposes the anchor leg and never
//! touches `V`, `E`, or `p` — which is exactly why `A[id] = A` and
//! `A[σ][δ] = A[σ∘δ]` hold as literal structural equalities rather than
//! up to isomorphism. The elements of the type are recovered by the
//! chosen pullback of `p` along `f` (context extension); terms are
//! sections of the extension projection.

use std::fmt;

use crate::presheaf::{
    compose_nat, is_mono, pair_label, pullback, sections_of, NatTrans, Presheaf,
};
use crate::{Error, Result};

/// A type over a context, presented as a diagram `Γ → V ← E`.
///
/// Equality is structural equality of all four constituents; this is the
/// pre-quotient judgemental equality of types.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalType {
    // ctx and base_obj/total are recoverable from the two legs; the legs
    // are stored whole so equality compares the entire diagram.
    proj: NatTrans,
    anchor: NatTrans,
}

impl LocalType {
    /// Validates and assembles a diagram `Γ → V ← E`.
    pub fn new(
        ctx: &Presheaf,
        base_obj: &Presheaf,
        total: &Presheaf,
        proj: &NatTrans,
        anchor: &NatTrans,
    ) -> Result<LocalType> {
        if !ctx.same_base(base_obj) || !ctx.same_base(total) {
            return Err(Error::BaseMismatch);
        }
        if proj.source() != total || proj.target() != base_obj {
            return Err(Error::EndpointMismatch("p must run E → V".into()));
        }
        if anchor.source() != ctx || anchor.target() != base_obj {
            return Err(Error::EndpointMismatch("f must run Γ → V".into()));
        }
        Ok(LocalType {
            proj: proj.clone(),
            anchor: anchor.clone(),
        })
    }

    pub fn ctx(&self) -> &Presheaf {
        self.anchor.source()
    }

    /// The local universe `V`.
    pub fn base_obj(&self) -> &Presheaf {
        self.anchor.target()
    }

    /// The total space `E` of the universal family.
    pub fn total(&self) -> &Presheaf {
        self.proj.source()
    }

    pub fn proj(&self) -> &NatTrans {
        &self.proj
    }

    pub fn anchor(&self) -> &NatTrans {
        &self.anchor
    }
}

impl fmt::Display for LocalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Γ = [{}]  V = [{}]  E = [{}]  f = [{}]  p = [{}]",
            self.ctx(),
            self.base_obj(),
            self.total(),
            self.anchor,
            self.proj
        )
    }
}

/// Substitution `A[σ]`: recomposes the anchor with `σ` and reuses the
/// rest of the diagram untouched.
pub fn subst_type(a: &LocalType, sigma: &NatTrans) -> Result<LocalType> {
    if sigma.target() != a.ctx() {
        return Err(Error::EndpointMismatch(
            "substitution must target the type's context".into(),
        ));
    }
    let anchor = compose_nat(a.anchor(), sigma)?;
    LocalType::new(sigma.source(), a.base_obj(), a.total(), a.proj(), &anchor)
}

/// Context extension: the chosen pullback of `p: E → V` along `f: Γ → V`.
///
/// Returns the extension presheaf (pairs `(x, e)` with `f(x) = p(e)` in
/// canonical pair form), the projection back to Γ, and the second
/// projection to E.
pub fn ctx_extend(a: &LocalType) -> (Presheaf, NatTrans, NatTrans) {
    pullback(a.anchor(), a.proj()).expect("extension pullback of a validated diagram")
}

/// A term of `A`: a section of the extension projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    of: LocalType,
    section: NatTrans,
}

impl Term {
    /// Checks that `section` really is a section of `ext(A) → Γ`.
    pub fn new(of: &LocalType, section: &NatTrans) -> Result<Term> {
        let (ext, proj_ext, _) = ctx_extend(of);
        if section.source() != of.ctx() || section.target() != &ext {
            return Err(Error::NotASection);
        }
        let roundtrip = compose_nat(&proj_ext, section)?;
        if !roundtrip.is_identity() {
            return Err(Error::NotASection);
        }
        Ok(Term {
            of: of.clone(),
            section: section.clone(),
        })
    }

    pub fn of(&self) -> &LocalType {
        &self.of
    }

    pub fn section(&self) -> &NatTrans {
        &self.section
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "section [{}]", self.section)
    }
}

/// Term substitution `t[σ]`: the section sending `d` to `(d, e)` where
/// `e` is the fibre component of `t` at `σ(d)`.
pub fn subst_term(t: &Term, sigma: &NatTrans) -> Result<Term> {
    let new_type = subst_type(t.of(), sigma)?;
    let (_, _, snd) = ctx_extend(t.of());
    let components = sigma
        .source()
        .base()
        .objects()
        .iter()
        .map(|o| {
            let comp: std::collections::BTreeMap<String, String> = sigma
                .source()
                .elements_at(o)
                .iter()
                .map(|d| {
                    let upstairs = t.section().apply(o, sigma.apply(o, d));
                    (d.clone(), pair_label(d, snd.apply(o, upstairs)))
                })
                .collect();
            (o.clone(), comp)
        })
        .collect();
    let (ext, _, _) = ctx_extend(&new_type);
    let section = NatTrans::new(sigma.source().clone(), ext, components)?;
    Term::new(&new_type, &section)
}

/// A type is a proposition when its extension projection is a mono:
/// at most one element sits over every point of the context.
pub fn is_subsingleton(a: &LocalType) -> bool {
    let (_, proj_ext, _) = ctx_extend(a);
    is_mono(&proj_ext)
}

/// All terms of `A`, via exhaustive section search with naturality
/// propagation; deterministic order.
pub fn terms_of(a: &LocalType) -> Result<Vec<Term>> {
    let (_, proj_ext, _) = ctx_extend(a);
    sections_of(&proj_ext)?
        .into_iter()
        .map(|s| Term::new(a, &s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{builtin_base, BaseName};
    use crate::presheaf::{terminal, unique_to_terminal, NatTrans, Presheaf};
    use crate::topos::Subpresheaf;
    use std::collections::{BTreeMap, BTreeSet};
    use std::sync::Arc;

    fn pt() -> Arc<crate::fincat::FiniteCategory> {
        Arc::new(builtin_base(BaseName::Pt))
    }

    fn gamma3() -> Presheaf {
        Presheaf::constant(pt(), &["0", "1", "2"])
    }

    fn p01(gamma: &Presheaf) -> Subpresheaf {
        Subpresheaf::new(
            gamma.clone(),
            BTreeMap::from([(
                "o".to_string(),
                BTreeSet::from(["0".to_string(), "1".to_string()]),
            )]),
        )
        .unwrap()
    }

    /// The Γ3-based two-point-universe example: V = {t,u}, E = {e} ↦ t,
    /// anchor constant at t.
    fn two_point_universe_type(gamma: &Presheaf, anchor_to: &[&str]) -> LocalType {
        let base = gamma.base().clone();
        let v = Presheaf::constant(base.clone(), &["t", "u"]);
        let e = Presheaf::constant(base.clone(), &["e"]);
        let p = NatTrans::new(
            e.clone(),
            v.clone(),
            BTreeMap::from([(
                "o".to_string(),
                BTreeMap::from([("e".to_string(), "t".to_string())]),
            )]),
        )
        .unwrap();
        let components = BTreeMap::from([(
            "o".to_string(),
            gamma
                .elements_at("o")
                .iter()
                .zip(anchor_to)
                .map(|(x, v)| (x.clone(), v.to_string()))
                .collect::<BTreeMap<_, _>>(),
        )]);
        let f = NatTrans::new(gamma.clone(), v.clone(), components).unwrap();
        LocalType::new(gamma, &v, &e, &p, &f).unwrap()
    }

    fn el_form(sub: &Subpresheaf) -> LocalType {
        let gamma = sub.ambient();
        let (e, incl) = sub.to_presheaf();
        LocalType::new(gamma, gamma, &e, &incl, &NatTrans::identity(gamma)).unwrap()
    }

    #[test]
    fn two_point_universe_is_subsingleton_with_full_extension() {
        let gamma = gamma3();
        let a = two_point_universe_type(&gamma, &["t", "t", "t"]);
        assert!(is_subsingleton(&a));
        let (ext, _, _) = ctx_extend(&a);
        assert_eq!(ext.total_size(), 3);
    }

    #[test]
    fn el_form_extension_matches_subobject() {
        let gamma = gamma3();
        let a = el_form(&p01(&gamma));
        let (ext, proj_ext, _) = ctx_extend(&a);
        assert_eq!(ext.total_size(), 2);
        assert!(is_mono(&proj_ext));
        assert!(is_subsingleton(&a));
    }

    #[test]
    fn mismatched_bases_rejected() {
        let gamma = gamma3();
        let arr = Arc::new(builtin_base(BaseName::Arr));
        let v = terminal(&arr);
        let e = terminal(&arr);
        let p = NatTrans::identity(&v);
        let f = unique_to_terminal(&v);
        assert_eq!(
            LocalType::new(&gamma, &v, &e, &p, &f).unwrap_err(),
            Error::BaseMismatch
        );
    }

    #[test]
    fn subst_laws_are_structural_identities() {
        let gamma = gamma3();
        let a = two_point_universe_type(&gamma, &["t", "u", "t"]);

        // A[id] = A.
        let id = NatTrans::identity(&gamma);
        assert_eq!(subst_type(&a, &id).unwrap(), a);

        // A[σ][δ] = A[σ∘δ] with σ: Γ1 → Γ3 picking 2 and δ = id.
        let gamma1 = Presheaf::constant(pt(), &["*"]);
        let sigma = NatTrans::new(
            gamma1.clone(),
            gamma.clone(),
            BTreeMap::from([(
                "o".to_string(),
                BTreeMap::from([("*".to_string(), "2".to_string())]),
            )]),
        )
        .unwrap();
        let restricted = subst_type(&a, &sigma).unwrap();
        assert_eq!(restricted.anchor().apply("o", "*"), "t");

        let delta = NatTrans::identity(&gamma1);
        let lhs = subst_type(&restricted, &delta).unwrap();
        let rhs = subst_type(&a, &compose_nat(&sigma, &delta).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sections_exist_exactly_when_fibres_are_inhabited() {
        let gamma = gamma3();

        // el-form of the full subobject: exactly one term.
        let full = el_form(&Subpresheaf::full(&gamma));
        assert_eq!(terms_of(&full).unwrap().len(), 1);

        // el-form of P01: element 2 has an empty fibre, so no terms, and
        // every candidate section is rejected.
        let partial = el_form(&p01(&gamma));
        assert_eq!(terms_of(&partial).unwrap().len(), 0);
        let (ext, _, _) = ctx_extend(&partial);
        let bogus = NatTrans::new(
            gamma.clone(),
            ext,
            BTreeMap::from([(
                "o".to_string(),
                BTreeMap::from([
                    ("0".to_string(), pair_label("0", "0")),
                    ("1".to_string(), pair_label("1", "1")),
                    ("2".to_string(), pair_label("0", "0")),
                ]),
            )]),
        )
        .unwrap();
        assert_eq!(Term::new(&partial, &bogus).unwrap_err(), Error::NotASection);
    }

    #[test]
    fn empty_total_space_gives_empty_extension() {
        let gamma = gamma3();
        let a = el_form(&Subpresheaf::empty(&gamma));
        let (ext, _, _) = ctx_extend(&a);
        assert!(ext.is_empty());
        assert!(is_subsingleton(&a));
        assert_eq!(terms_of(&a).unwrap().len(), 0);
    }

    #[test]
    fn term_substitution_is_strict() {
        let gamma = gamma3();
        let full = el_form(&Subpresheaf::full(&gamma));
        let t = terms_of(&full).unwrap().into_iter().next().unwrap();

        let id = NatTrans::identity(&gamma);
        assert_eq!(subst_term(&t, &id).unwrap(), t);

        let gamma1 = Presheaf::constant(pt(), &["*"]);
        let sigma = NatTrans::new(
            gamma1.clone(),
            gamma.clone(),
            BTreeMap::from([(
                "o".to_string(),
                BTreeMap::from([("*".to_string(), "1".to_string())]),
            )]),
        )
        .unwrap();
        let delta = NatTrans::identity(&gamma1);
        let lhs = subst_term(&subst_term(&t, &sigma).unwrap(), &delta).unwrap();
        let rhs = subst_term(&t, &compose_nat(&sigma, &delta).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn non_subsingleton_detected_over_inhabited_context() {
        let gamma = gamma3();
        let base = gamma.base().clone();
        let v = terminal(&base);
        let e = Presheaf::constant(base.clone(), &["e0", "e1"]);
        let p = unique_to_terminal(&e);
        let f = unique_to_terminal(&gamma);
        let a = LocalType::new(&gamma, &v, &e, &p, &f).unwrap();
        assert!(!is_subsingleton(&a));
    }
}
