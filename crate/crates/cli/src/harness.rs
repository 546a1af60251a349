//! Randomized law harness: generates desk-scale random instances over a
//! builtin base and checks every law the model is supposed to satisfy.
//! Reports are reproducible byte for byte from the seed.

use std::sync::Arc;

use propcoh_core::fincat::{builtin_base, BaseName};
use propcoh_core::natmodel::{subst_term, subst_type, LocalType};
use propcoh_core::presheaf::{compose_nat, image, pullback, NatTrans, Presheaf};
use propcoh_core::propquot::{
    el, judgemental_iso, name, propext_check, quotient_subst_stable, support_family, types_equal_q,
    PropCode,
};
use propcoh_core::sample::{
    case_rng, random_local_type, random_presheaf, random_subobject, random_subsingleton,
    random_substitution, random_term,
};
use propcoh_core::topos::{classify, implies, meet, sub_leq, subobject_of_char, truth};

use crate::report::Report;

type CaseResult = Result<(), String>;

struct Family {
    slug: &'static str,
    desc: &'static str,
    run: fn(&Arc<propcoh_core::fincat::FiniteCategory>, &mut rand_chacha::ChaCha8Rng) -> CaseResult,
}

const FAMILIES: &[Family] = &[
    Family {
        slug: "cwf-substitution",
        desc: "strict substitution laws",
        run: check_cwf,
    },
    Family {
        slug: "classifier-round-trip",
        desc: "classify and subobject_of_char are mutually inverse",
        run: check_classifier,
    },
    Family {
        slug: "heyting-adjunction",
        desc: "meet ⊣ implies on subobjects",
        run: check_adjunction,
    },
    Family {
        slug: "quotient-equivalence",
        desc: "quotient equality is an equivalence relation",
        run: check_equivalence,
    },
    Family {
        slug: "substitution-stability",
        desc: "quotient equality is stable under substitution",
        run: check_stability,
    },
    Family {
        slug: "iso-oracle-agreement",
        desc: "subobject equality agrees with the section-search oracle",
        run: check_oracle,
    },
    Family {
        slug: "quotient-coquand",
        desc: "El and name are mutually inverse in the quotient",
        run: check_coquand,
    },
    Family {
        slug: "propext",
        desc: "mutually implying propositions are equal",
        run: check_propext,
    },
];

/// Runs `cases` random instances of each law family over the named base.
pub fn laws_harness(base_name: BaseName, cases: u32, seed: u64) -> Report {
    let base = Arc::new(builtin_base(base_name));
    let mut report = Report::new();
    for (fi, family) in FAMILIES.iter().enumerate() {
        let mut failure = None;
        for case in 0..cases {
            let mut rng = case_rng(seed, (fi as u64) * 1_000_003 + case as u64);
            if let Err(msg) = (family.run)(&base, &mut rng) {
                failure = Some(format!("case {case}: {msg}"));
                break;
            }
        }
        report.push(
            family.slug,
            format!(
                "{} (base {base_name}, {cases} cases, seed {seed})",
                family.desc
            ),
            failure.is_none(),
            failure,
        );
    }
    report
}

fn check_cwf(
    base: &Arc<propcoh_core::fincat::FiniteCategory>,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> CaseResult {
    let gamma = random_presheaf(base, 4, rng);
    let a = random_local_type(&gamma, 3, rng);
    let sigma = random_substitution(&gamma, 3, rng);
    let delta = random_substitution(sigma.source(), 3, rng);

    let id = NatTrans::identity(&gamma);
    if subst_type(&a, &id).map_err(|e| e.to_string())? != a {
        return Err("A[id] ≠ A".into());
    }
    let lhs = subst_type(&subst_type(&a, &sigma).map_err(|e| e.to_string())?, &delta)
        .map_err(|e| e.to_string())?;
    let rhs = subst_type(&a, &compose_nat(&sigma, &delta).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    if lhs != rhs {
        return Err("A[σ][δ] ≠ A[σ∘δ]".into());
    }
    if let Some(t) = random_term(&a, rng) {
        if subst_term(&t, &id).map_err(|e| e.to_string())? != t {
            return Err("t[id] ≠ t".into());
        }
        let lhs = subst_term(&subst_term(&t, &sigma).map_err(|e| e.to_string())?, &delta)
            .map_err(|e| e.to_string())?;
        let rhs = subst_term(&t, &compose_nat(&sigma, &delta).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err("t[σ][δ] ≠ t[σ∘δ]".into());
        }
    }
    Ok(())
}

fn check_classifier(
    base: &Arc<propcoh_core::fincat::FiniteCategory>,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> CaseResult {
    let gamma = random_presheaf(base, 4, rng);
    let p = random_subobject(&gamma, rng);
    let chi = classify(&p);
    let back = subobject_of_char(&chi).map_err(|e| e.to_string())?;
    if back != p {
        return Err(format!(
            "round trip lost the subobject: [{p}] became [{back}]"
        ));
    }
    let (_, leg, _) = pullback(&chi, &truth(base)).map_err(|e| e.to_string())?;
    if image(&leg) != p {
        return Err("pullback of truth along classify(P) does not have image P".into());
    }
    Ok(())
}

fn check_adjunction(
    base: &Arc<propcoh_core::fincat::FiniteCategory>,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> CaseResult {
    let gamma = random_presheaf(base, 4, rng);
    let r = random_subobject(&gamma, rng);
    let p = random_subobject(&gamma, rng);
    let q = random_subobject(&gamma, rng);
    let lhs = sub_leq(&meet(&r, &p).map_err(|e| e.to_string())?, &q).map_err(|e| e.to_string())?;
    let rhs =
        sub_leq(&r, &implies(&p, &q).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if lhs != rhs {
        return Err(format!("adjunction broken for R=[{r}] P=[{p}] Q=[{q}]"));
    }
    Ok(())
}

fn mixed_type(gamma: &Presheaf, rng: &mut rand_chacha::ChaCha8Rng) -> LocalType {
    use rand::Rng;
    if rng.gen_bool(0.5) {
        random_subsingleton(gamma, 3, rng)
    } else {
        random_local_type(gamma, 2, rng)
    }
}

fn check_equivalence(
    base: &Arc<propcoh_core::fincat::FiniteCategory>,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> CaseResult {
    let gamma = random_presheaf(base, 3, rng);
    let a = mixed_type(&gamma, rng);
    let b = mixed_type(&gamma, rng);
    let c = mixed_type(&gamma, rng);
    let eq = |x: &LocalType, y: &LocalType| types_equal_q(x, y).map_err(|e| e.to_string());
    if !eq(&a, &a)? {
        return Err("reflexivity failed".into());
    }
    if eq(&a, &b)? != eq(&b, &a)? {
        return Err("symmetry failed".into());
    }
    if eq(&a, &b)? && eq(&b, &c)? && !eq(&a, &c)? {
        return Err("transitivity failed".into());
    }
    Ok(())
}

fn check_stability(
    base: &Arc<propcoh_core::fincat::FiniteCategory>,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> CaseResult {
    use rand::Rng;
    let gamma = random_presheaf(base, 3, rng);
    let a = random_subsingleton(&gamma, 3, rng);
    let b = if rng.gen_bool(0.5) {
        el(&name(&a).map_err(|e| e.to_string())?)
    } else {
        random_subsingleton(&gamma, 3, rng)
    };
    let sigma = random_substitution(&gamma, 3, rng);
    if !quotient_subst_stable(&a, &b, &sigma).map_err(|e| e.to_string())? {
        return Err("A ≈ B but A[σ] ≉ B[σ]".into());
    }
    Ok(())
}

fn check_oracle(
    base: &Arc<propcoh_core::fincat::FiniteCategory>,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> CaseResult {
    use rand::Rng;
    let gamma = random_presheaf(base, 3, rng);
    let a = random_subsingleton(&gamma, 3, rng);
    let b = if rng.gen_bool(0.5) {
        el(&name(&a).map_err(|e| e.to_string())?)
    } else {
        random_subsingleton(&gamma, 3, rng)
    };
    let via_subobjects = judgemental_iso(&a, &b).map_err(|e| e.to_string())?;
    let via_sections = support_family(&a).map_err(|e| e.to_string())?
        == support_family(&b).map_err(|e| e.to_string())?;
    if via_subobjects != via_sections {
        return Err("subobject route and section-search oracle disagree".into());
    }
    Ok(())
}

fn check_coquand(
    base: &Arc<propcoh_core::fincat::FiniteCategory>,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> CaseResult {
    let gamma = random_presheaf(base, 3, rng);
    let a = random_subsingleton(&gamma, 3, rng);
    let c = name(&a).map_err(|e| e.to_string())?;
    if !types_equal_q(&el(&c), &a).map_err(|e| e.to_string())? {
        return Err("El(name(A)) ≉ A".into());
    }
    let b = el(&c);
    if name(&b).map_err(|e| e.to_string())? != c {
        return Err("name does not respect quotient classes".into());
    }
    let code = PropCode::from_subobject(&random_subobject(&gamma, rng));
    if name(&el(&code)).map_err(|e| e.to_string())? != code {
        return Err("name(El(c)) ≠ c".into());
    }
    Ok(())
}

fn check_propext(
    base: &Arc<propcoh_core::fincat::FiniteCategory>,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> CaseResult {
    use rand::Rng;
    let gamma = random_presheaf(base, 3, rng);
    let a = random_subsingleton(&gamma, 3, rng);
    let b = if rng.gen_bool(0.5) {
        el(&name(&a).map_err(|e| e.to_string())?)
    } else {
        random_subsingleton(&gamma, 3, rng)
    };
    if !propext_check(&a, &b).map_err(|e| e.to_string())? {
        return Err("mutually implying propositions differ in the quotient".into());
    }
    Ok(())
}
