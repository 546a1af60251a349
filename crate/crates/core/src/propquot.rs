//! The universe of propositions and the quotient that makes it strict.
//!
//! The candidate universe over Γ is the diagram Γ → 1 ← Ω. Its terms
//! biject with codes (maps Γ → Ω, equivalently subobjects of Γ), `el`
//! sends a code `P ↪ Γ` to the diagram Γ → Γ ← P, and `name` sends a
//! subsingleton type to the code of the image of its extension
//! projection. Before any quotient this is only a retract: `name(el(c)) =
//! c` on the nose, but `el(name(A))` generally differs from `A`
//! structurally. Quotienting types by "equal, or both subsingletons with
//! the same associated subobject" — represented here by canonical forms —
//! turns the retract into an isomorphism and validates propositional
//! extensionality, while substitution stability of the equivalence comes
//! for free.

use std::collections::BTreeMap;
use std::fmt;

use crate::natmodel::{ctx_extend, is_subsingleton, subst_type, terms_of, LocalType, Term};
use crate::presheaf::{
    compose_nat, enumerate_elements, image, pair_into_product, pair_label, product_of_maps,
    terminal, unique_to_terminal, yoneda_map, Element, NatTrans, Presheaf,
};
use crate::topos::{classify, implies, meet, omega, sub_eq, subobject_of_char, Subpresheaf};
use crate::{Error, Result};

/// A proposition code over Γ: a map Γ → Ω, canonically interconvertible
/// with a subobject of Γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropCode {
    char: NatTrans,
}

impl PropCode {
    /// Wraps a classifying map; the target must be Ω of the right base.
    pub fn from_char(char: NatTrans) -> Result<PropCode> {
        if *char.target() != omega(char.source().base()) {
            return Err(Error::TargetNotOmega);
        }
        Ok(PropCode { char })
    }

    /// The code of a canonical subobject.
    pub fn from_subobject(p: &Subpresheaf) -> PropCode {
        PropCode { char: classify(p) }
    }

    pub fn ctx(&self) -> &Presheaf {
        self.char.source()
    }

    pub fn char(&self) -> &NatTrans {
        &self.char
    }

    /// The canonical subobject this code classifies.
    pub fn subobject(&self) -> Subpresheaf {
        subobject_of_char(&self.char).expect("code targets Ω by construction")
    }
}

impl fmt::Display for PropCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "code of [{}]", self.subobject())
    }
}

/// Quotient representative of a type: subsingletons collapse to their
/// associated subobject, everything else stays as raw diagram data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalType {
    Raw(LocalType),
    Prop(Subpresheaf),
}

impl CanonicalType {
    pub fn is_prop(&self) -> bool {
        matches!(self, CanonicalType::Prop(_))
    }
}

impl fmt::Display for CanonicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalType::Raw(a) => write!(f, "raw {a}"),
            CanonicalType::Prop(p) => write!(f, "prop [{p}]"),
        }
    }
}

/// Per-probe inhabitation of a type: for every element `x ∈ Γ(j)`,
/// whether the restricted type has a term over the representable probe.
///
/// Computed by section search only, so it can serve as an oracle against
/// the subobject route.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFamily {
    support: BTreeMap<Element, bool>,
}

impl SupportFamily {
    pub fn is_supported(&self, el: &Element) -> Option<bool> {
        self.support.get(el).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Element, bool)> {
        self.support.iter().map(|(e, b)| (e, *b))
    }
}

/// The candidate propositional universe over Γ: the diagram Γ → 1 ← Ω.
pub fn prop_universe(gamma: &Presheaf) -> LocalType {
    let base = gamma.base();
    let one = terminal(base);
    let omega_ps = omega(base);
    let p = unique_to_terminal(&omega_ps);
    let f = unique_to_terminal(gamma);
    LocalType::new(gamma, &one, &omega_ps, &p, &f).expect("universe diagram is well formed")
}

/// Extracts the code of a term of the universe: the Ω-component of its
/// section.
pub fn code_of_term(t: &Term) -> Result<PropCode> {
    if *t.of() != prop_universe(t.of().ctx()) {
        return Err(Error::WrongType);
    }
    let (_, _, snd) = ctx_extend(t.of());
    let char = compose_nat(&snd, t.section())?;
    PropCode::from_char(char)
}

/// The term of the universe corresponding to a code; inverse to
/// [`code_of_term`].
pub fn term_of_code(c: &PropCode) -> Term {
    let gamma = c.ctx();
    let universe = prop_universe(gamma);
    let (ext, _, _) = ctx_extend(&universe);
    let components = gamma
        .base()
        .objects()
        .iter()
        .map(|o| {
            let comp: BTreeMap<String, String> = gamma
                .elements_at(o)
                .iter()
                .map(|x| (x.clone(), pair_label(x, c.char.apply(o, x))))
                .collect();
            (o.clone(), comp)
        })
        .collect();
    let section = NatTrans::new(gamma.clone(), ext, components).expect("code section is natural");
    Term::new(&universe, &section).expect("code section projects to the identity")
}

/// `El`: a code `P ↪ Γ` becomes the diagram Γ → Γ ← P with the identity
/// anchor. Always a subsingleton.
pub fn el(c: &PropCode) -> LocalType {
    el_of_subobject(&c.subobject())
}

/// The el-form type of a canonical subobject.
pub fn el_of_subobject(p: &Subpresheaf) -> LocalType {
    let gamma = p.ambient();
    let (e, incl) = p.to_presheaf();
    LocalType::new(gamma, gamma, &e, &incl, &NatTrans::identity(gamma))
        .expect("el diagram is well formed")
}

/// `name`: the code of a subsingleton type, via the image of its
/// extension projection. The image is the literal pointwise one, so
/// `name` is deterministic and `name(el(c)) = c` holds on the nose.
pub fn name(a: &LocalType) -> Result<PropCode> {
    if !is_subsingleton(a) {
        return Err(Error::NotAProposition);
    }
    let (_, proj_ext, _) = ctx_extend(a);
    Ok(PropCode::from_subobject(&image(&proj_ext)))
}

/// A pair of types witnessing that El∘name is not the identity before
/// the quotient: `A` presents the full proposition over a point context
/// through a two-element universe, while `el(name(A))` presents it
/// through the context itself. They differ structurally but are equal in
/// the quotient.
pub fn retract_counterexample() -> (LocalType, LocalType) {
    let base = std::sync::Arc::new(crate::fincat::builtin_base(crate::fincat::BaseName::Pt));
    let gamma = Presheaf::constant(base.clone(), &["0"]);
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
    .expect("p is natural over a point");
    let f = NatTrans::new(
        gamma.clone(),
        v.clone(),
        BTreeMap::from([(
            "o".to_string(),
            BTreeMap::from([("0".to_string(), "t".to_string())]),
        )]),
    )
    .expect("f is natural over a point");
    let a = LocalType::new(&gamma, &v, &e, &p, &f).expect("counterexample diagram");
    let b = el(&name(&a).expect("a is a subsingleton"));
    (a, b)
}

/// Canonical form of a type under the quotient: subsingletons are
/// identified with the subobject supporting them, everything else only
/// with itself.
pub fn canon(a: &LocalType) -> CanonicalType {
    if is_subsingleton(a) {
        let (_, proj_ext, _) = ctx_extend(a);
        CanonicalType::Prop(image(&proj_ext))
    } else {
        CanonicalType::Raw(a.clone())
    }
}

/// Quotient equality of types: equal canonical forms.
pub fn types_equal_q(a: &LocalType, b: &LocalType) -> Result<bool> {
    if a.ctx() != b.ctx() {
        return Err(Error::AmbientMismatch);
    }
    Ok(canon(a) == canon(b))
}

/// Judgemental isomorphism of two subsingletons over the same context,
/// decided by equality of their associated subobjects.
pub fn judgemental_iso(a: &LocalType, b: &LocalType) -> Result<bool> {
    if a.ctx() != b.ctx() {
        return Err(Error::AmbientMismatch);
    }
    if !is_subsingleton(a) || !is_subsingleton(b) {
        return Err(Error::NotAProposition);
    }
    let (_, pa, _) = ctx_extend(a);
    let (_, pb, _) = ctx_extend(b);
    sub_eq(&image(&pa), &image(&pb))
}

/// The independent route to the same information: for every representable
/// probe `x: y(j) → Γ`, search for a term of `A[x̄]` directly.
pub fn support_family(a: &LocalType) -> Result<SupportFamily> {
    if !is_subsingleton(a) {
        return Err(Error::NotAProposition);
    }
    let gamma = a.ctx();
    let mut support = BTreeMap::new();
    for el in enumerate_elements(gamma) {
        let probe = yoneda_map(gamma, &el)?;
        let restricted = subst_type(a, &probe)?;
        let inhabited = !terms_of(&restricted)?.is_empty();
        support.insert(el, inhabited);
    }
    let family = SupportFamily { support };
    assert!(
        support_closed(gamma, &family),
        "support must be closed under restriction"
    );
    Ok(family)
}

fn support_closed(gamma: &Presheaf, family: &SupportFamily) -> bool {
    let supported = |at: &str, value: &str| {
        family
            .is_supported(&Element {
                at: at.to_string(),
                value: value.to_string(),
            })
            .unwrap_or(false)
    };
    gamma.base().morphisms().iter().all(|m| {
        gamma
            .elements_at(&m.tgt)
            .iter()
            .all(|x| !supported(&m.tgt, x) || supported(&m.src, gamma.restrict_elem(&m.id, x)))
    })
}

/// Substitution stability of the quotient: `A ≈ B` over Γ implies
/// `A[σ] ≈ B[σ]` over Δ. Evaluates the implication concretely.
pub fn quotient_subst_stable(a: &LocalType, b: &LocalType, sigma: &NatTrans) -> Result<bool> {
    if a.ctx() != b.ctx() {
        return Err(Error::AmbientMismatch);
    }
    if sigma.target() != a.ctx() {
        return Err(Error::EndpointMismatch(
            "substitution must target the types' context".into(),
        ));
    }
    if !types_equal_q(a, b)? {
        return Ok(true);
    }
    types_equal_q(&subst_type(a, sigma)?, &subst_type(b, sigma)?)
}

/// At most one term over every representable probe: the property that
/// lets the quotient identify terms alongside types.
pub fn quotient_term_unique(a: &LocalType) -> Result<bool> {
    if !is_subsingleton(a) {
        return Err(Error::NotAProposition);
    }
    let gamma = a.ctx();
    for el in enumerate_elements(gamma) {
        let probe = yoneda_map(gamma, &el)?;
        let restricted = subst_type(a, &probe)?;
        if terms_of(&restricted)?.len() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Code of the always-true proposition over Γ.
pub fn top_code(gamma: &Presheaf) -> PropCode {
    PropCode::from_subobject(&Subpresheaf::full(gamma))
}

/// Code of the conjunction of two codes.
pub fn meet_code(c1: &PropCode, c2: &PropCode) -> Result<PropCode> {
    if c1.ctx() != c2.ctx() {
        return Err(Error::AmbientMismatch);
    }
    Ok(PropCode::from_subobject(&meet(
        &c1.subobject(),
        &c2.subobject(),
    )?))
}

/// Code of the Heyting implication of two codes.
pub fn implies_code(c1: &PropCode, c2: &PropCode) -> Result<PropCode> {
    if c1.ctx() != c2.ctx() {
        return Err(Error::AmbientMismatch);
    }
    Ok(PropCode::from_subobject(&implies(
        &c1.subobject(),
        &c2.subobject(),
    )?))
}

/// The pointwise-pullback product of two types over the same context:
/// V and E are binary products and both legs act componentwise. For
/// subsingletons this realizes conjunction, and its canonical form agrees
/// with `el(meet_code(..))`.
pub fn pair_type(a: &LocalType, b: &LocalType) -> Result<LocalType> {
    if a.ctx() != b.ctx() {
        return Err(Error::AmbientMismatch);
    }
    let p = product_of_maps(a.proj(), b.proj())?;
    let f = pair_into_product(a.anchor(), b.anchor())?;
    LocalType::new(a.ctx(), p.target(), p.source(), &p, &f)
}

/// Propositional extensionality, evaluated: if the implication
/// propositions both ways are inhabited, the types are equal in the
/// quotient. Returns the implication's truth value (vacuously true when
/// the hypothesis fails).
pub fn propext_check(a: &LocalType, b: &LocalType) -> Result<bool> {
    if a.ctx() != b.ctx() {
        return Err(Error::AmbientMismatch);
    }
    let ca = name(a)?;
    let cb = name(b)?;
    let forward = !terms_of(&el(&implies_code(&ca, &cb)?))?.is_empty();
    let backward = !terms_of(&el(&implies_code(&cb, &ca)?))?.is_empty();
    if forward && backward {
        types_equal_q(a, b)
    } else {
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{builtin_base, BaseName, FiniteCategory};
    use crate::presheaf::yoneda;
    use crate::topos::{all_subobjects, sub_leq};
    use std::collections::BTreeSet;
    use std::sync::Arc;

    fn pt() -> Arc<FiniteCategory> {
        Arc::new(builtin_base(BaseName::Pt))
    }

    fn gamma1() -> Presheaf {
        Presheaf::constant(pt(), &["0"])
    }

    fn gamma3() -> Presheaf {
        Presheaf::constant(pt(), &["0", "1", "2"])
    }

    fn yb() -> Presheaf {
        yoneda(&Arc::new(builtin_base(BaseName::Arr)), "b").unwrap()
    }

    fn sub(gamma: &Presheaf, elems: &[(&str, &[&str])]) -> Subpresheaf {
        let subsets = elems
            .iter()
            .map(|(o, es)| {
                (
                    o.to_string(),
                    es.iter().map(|e| e.to_string()).collect::<BTreeSet<_>>(),
                )
            })
            .collect();
        Subpresheaf::new(gamma.clone(), subsets).unwrap()
    }

    #[test]
    fn universe_extension_and_term_counts() {
        let g1 = gamma1();
        let u1 = prop_universe(&g1);
        let (ext, _, _) = ctx_extend(&u1);
        assert_eq!(ext.total_size(), 2);
        assert_eq!(terms_of(&u1).unwrap().len(), 2);
        assert!(!is_subsingleton(&u1));

        let g3 = gamma3();
        let u3 = prop_universe(&g3);
        let (ext, _, _) = ctx_extend(&u3);
        assert_eq!(ext.total_size(), 6);
        assert_eq!(terms_of(&u3).unwrap().len(), 8);
    }

    #[test]
    fn codes_and_terms_are_mutually_inverse() {
        let g3 = gamma3();
        let u3 = prop_universe(&g3);
        // Term → code → term over all 8 terms.
        for t in terms_of(&u3).unwrap() {
            let c = code_of_term(&t).unwrap();
            assert_eq!(term_of_code(&c), t);
        }
        // Code → term → code over all 8 subobjects.
        for p in all_subobjects(&g3).unwrap() {
            let c = PropCode::from_subobject(&p);
            assert_eq!(code_of_term(&term_of_code(&c)).unwrap(), c);
        }
    }

    #[test]
    fn code_extraction_rejects_foreign_terms() {
        let g3 = gamma3();
        let full = el_of_subobject(&Subpresheaf::full(&g3));
        let t = terms_of(&full).unwrap().into_iter().next().unwrap();
        assert_eq!(code_of_term(&t).unwrap_err(), Error::WrongType);
    }

    #[test]
    fn el_extensions() {
        let g3 = gamma3();
        let full = el(&top_code(&g3));
        let (ext, _, _) = ctx_extend(&full);
        assert_eq!(ext.total_size(), 3);
        assert_eq!(terms_of(&full).unwrap().len(), 1);

        let empty = el(&PropCode::from_subobject(&Subpresheaf::empty(&g3)));
        let (ext, _, _) = ctx_extend(&empty);
        assert!(ext.is_empty());
        assert_eq!(terms_of(&empty).unwrap().len(), 0);

        let y = yb();
        let pa = sub(&y, &[("a", &["f"]), ("b", &[])]);
        let el_pa = el(&PropCode::from_subobject(&pa));
        let (ext, _, _) = ctx_extend(&el_pa);
        assert_eq!(ext.elements_at("a").len(), 1);
        assert_eq!(ext.elements_at("b").len(), 0);
    }

    #[test]
    fn name_after_el_is_the_identity_on_codes() {
        for gamma in [gamma1(), gamma3(), yb()] {
            for p in all_subobjects(&gamma).unwrap() {
                let c = PropCode::from_subobject(&p);
                assert_eq!(name(&el(&c)).unwrap(), c);
            }
        }
    }

    #[test]
    fn name_of_two_point_universe_presentation() {
        let (a, _) = retract_counterexample();
        assert_eq!(name(&a).unwrap(), top_code(a.ctx()));
    }

    #[test]
    fn name_rejects_non_subsingletons() {
        let u = prop_universe(&gamma1());
        assert_eq!(name(&u).unwrap_err(), Error::NotAProposition);
    }

    #[test]
    fn retract_failure_before_quotient() {
        let (a, b) = retract_counterexample();
        assert_ne!(a, b, "El(name(A)) differs from A structurally");
        assert_eq!(a.base_obj().total_size(), 2);
        assert_eq!(b.base_obj(), b.ctx());
        assert_eq!(name(&a).unwrap(), name(&b).unwrap());
        assert!(types_equal_q(&a, &b).unwrap());
        assert!(judgemental_iso(&a, &b).unwrap());
    }

    #[test]
    fn quotient_equality_cases() {
        let (a, b) = retract_counterexample();
        assert!(types_equal_q(&a, &a).unwrap());
        assert!(types_equal_q(&b, &a).unwrap());

        // Two non-subsingleton presentations differing only in V labels
        // stay distinct: clause (a) is literal identity.
        let g1 = gamma1();
        let base = g1.base().clone();
        let mk = |v_labels: &[&str]| {
            let v = Presheaf::constant(base.clone(), v_labels);
            let e = Presheaf::constant(base.clone(), &["e0", "e1"]);
            let p = NatTrans::new(
                e.clone(),
                v.clone(),
                BTreeMap::from([(
                    "o".to_string(),
                    BTreeMap::from([
                        ("e0".to_string(), v_labels[0].to_string()),
                        ("e1".to_string(), v_labels[0].to_string()),
                    ]),
                )]),
            )
            .unwrap();
            let f = NatTrans::new(
                g1.clone(),
                v.clone(),
                BTreeMap::from([(
                    "o".to_string(),
                    BTreeMap::from([("0".to_string(), v_labels[0].to_string())]),
                )]),
            )
            .unwrap();
            LocalType::new(&g1, &v, &e, &p, &f).unwrap()
        };
        let raw1 = mk(&["t", "u"]);
        let raw2 = mk(&["v", "w"]);
        assert!(!is_subsingleton(&raw1));
        assert!(!types_equal_q(&raw1, &raw2).unwrap());
        assert!(matches!(canon(&raw1), CanonicalType::Raw(_)));
    }

    #[test]
    fn iso_oracle_agreement_on_fixed_pairs() {
        let g3 = gamma3();
        let p01 = sub(&g3, &[("o", &["0", "1"])]);

        // Same subobject through two different presentations: the el-form
        // and a two-point universe whose anchor sends 0,1 ↦ t and 2 ↦ u.
        let a = el_of_subobject(&p01);
        let base = g3.base().clone();
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
        let f = NatTrans::new(
            g3.clone(),
            v.clone(),
            BTreeMap::from([(
                "o".to_string(),
                BTreeMap::from([
                    ("0".to_string(), "t".to_string()),
                    ("1".to_string(), "t".to_string()),
                    ("2".to_string(), "u".to_string()),
                ]),
            )]),
        )
        .unwrap();
        let b = LocalType::new(&g3, &v, &e, &p, &f).unwrap();

        assert!(judgemental_iso(&a, &b).unwrap());
        assert_eq!(support_family(&a).unwrap(), support_family(&b).unwrap());

        // Different subobjects disagree, on both routes.
        let c = el_of_subobject(&Subpresheaf::full(&g3));
        assert!(!judgemental_iso(&a, &c).unwrap());
        assert_ne!(support_family(&a).unwrap(), support_family(&c).unwrap());
    }

    #[test]
    fn support_family_of_el_pa_frozen() {
        let y = yb();
        let pa = sub(&y, &[("a", &["f"]), ("b", &[])]);
        let fam = support_family(&el_of_subobject(&pa)).unwrap();
        assert_eq!(
            fam.is_supported(&Element {
                at: "a".into(),
                value: "f".into()
            }),
            Some(true)
        );
        assert_eq!(
            fam.is_supported(&Element {
                at: "b".into(),
                value: "id_b".into()
            }),
            Some(false)
        );
    }

    #[test]
    fn term_uniqueness_for_propositions() {
        let g3 = gamma3();
        let full = el_of_subobject(&Subpresheaf::full(&g3));
        assert!(quotient_term_unique(&full).unwrap());
        let p01 = el_of_subobject(&sub(&g3, &[("o", &["0", "1"])]));
        assert!(quotient_term_unique(&p01).unwrap());

        let (a, b) = retract_counterexample();
        assert!(quotient_term_unique(&a).unwrap());
        assert!(quotient_term_unique(&b).unwrap());
        assert_eq!(
            support_family(&a).unwrap(),
            support_family(&b).unwrap(),
            "retract pair has identical per-probe supports"
        );
    }

    #[test]
    fn substitution_stability_of_the_quotient() {
        let (a, b) = retract_counterexample();
        let gamma = a.ctx().clone();
        // Pull back along the probe of the only element.
        let probe = yoneda_map(
            &gamma,
            &Element {
                at: "o".into(),
                value: "0".into(),
            },
        )
        .unwrap();
        assert!(quotient_subst_stable(&a, &b, &probe).unwrap());
        assert!(quotient_subst_stable(&a, &b, &NatTrans::identity(&gamma)).unwrap());
    }

    #[test]
    fn connective_codes() {
        let g3 = gamma3();
        let p01 = PropCode::from_subobject(&sub(&g3, &[("o", &["0", "1"])]));
        let q12 = PropCode::from_subobject(&sub(&g3, &[("o", &["1", "2"])]));

        let met = meet_code(&p01, &q12).unwrap();
        assert_eq!(met.subobject(), sub(&g3, &[("o", &["1"])]));

        // el(meet) agrees with the pointwise-pullback pair type.
        let pair = pair_type(&el(&p01), &el(&q12)).unwrap();
        assert!(types_equal_q(&el(&met), &pair).unwrap());

        // implies(P01, full) is full; its el has one global term.
        let imp = implies_code(&p01, &top_code(&g3)).unwrap();
        assert_eq!(imp.subobject(), Subpresheaf::full(&g3));
        assert_eq!(terms_of(&el(&imp)).unwrap().len(), 1);

        // implies(full, P01) is {0,1}; its el has no global terms.
        let imp = implies_code(&top_code(&g3), &p01).unwrap();
        assert_eq!(imp.subobject(), sub(&g3, &[("o", &["0", "1"])]));
        assert_eq!(terms_of(&el(&imp)).unwrap().len(), 0);
    }

    #[test]
    fn implication_inhabited_iff_subobject_order() {
        let g3 = gamma3();
        for p in all_subobjects(&g3).unwrap() {
            for q in all_subobjects(&g3).unwrap() {
                let cp = PropCode::from_subobject(&p);
                let cq = PropCode::from_subobject(&q);
                let inhabited = !terms_of(&el(&implies_code(&cp, &cq).unwrap()))
                    .unwrap()
                    .is_empty();
                assert_eq!(inhabited, sub_leq(&p, &q).unwrap());
            }
        }
    }

    #[test]
    fn propext_on_mutually_implying_presentations() {
        let (a, b) = retract_counterexample();
        assert!(propext_check(&a, &b).unwrap());

        // Hypothesis fails: no claim is made, and the types indeed differ.
        let g3 = gamma3();
        let small = el_of_subobject(&sub(&g3, &[("o", &["0", "1"])]));
        let big = el_of_subobject(&Subpresheaf::full(&g3));
        assert!(propext_check(&small, &big).unwrap());
        assert!(!types_equal_q(&small, &big).unwrap());

        // Intuitionistic case over yb: P ≤ ¬¬P only, so no claim, and
        // the quotient keeps them distinct.
        let y = yb();
        let pa = sub(&y, &[("a", &["f"]), ("b", &[])]);
        let cpa = PropCode::from_subobject(&pa);
        let bot = PropCode::from_subobject(&Subpresheaf::empty(&y));
        let negneg = implies_code(&implies_code(&cpa, &bot).unwrap(), &bot).unwrap();
        let a = el(&cpa);
        let b = el(&negneg);
        assert!(propext_check(&a, &b).unwrap());
        assert!(!types_equal_q(&a, &b).unwrap());
    }

    #[test]
    fn prop_classed_canonical_types_biject_with_codes() {
        for gamma in [gamma1(), gamma3(), yb()] {
            let subs = all_subobjects(&gamma).unwrap();
            let mut seen = Vec::new();
            for p in &subs {
                let canonical = canon(&el(&PropCode::from_subobject(p)));
                assert_eq!(canonical, CanonicalType::Prop(p.clone()));
                assert!(!seen.contains(&canonical), "map must be injective");
                seen.push(canonical);
            }
            assert_eq!(seen.len(), subs.len());
        }
    }
}
