//! Canned demonstrations: the retract failure and its repair, repaired
//! propositional extensionality, and the intuitionistic ¬¬ example.

use std::collections::BTreeMap;
use std::sync::Arc;

use propcoh_core::fincat::{builtin_base, BaseName};
use propcoh_core::natmodel::{terms_of, LocalType};
use propcoh_core::presheaf::{yoneda, NatTrans, Presheaf};
use propcoh_core::propquot::{
    el, el_of_subobject, implies_code, name, propext_check, retract_counterexample, types_equal_q,
    PropCode,
};
use propcoh_core::topos::{all_subobjects, implies, sub_eq, sub_leq, Subpresheaf};

use crate::report::Report;
use crate::CliError;

/// Runs the named demonstration.
pub fn demo_cmd(name_arg: &str) -> Result<Report, CliError> {
    match name_arg {
        "retract" => Ok(demo_retract()),
        "propext" => Ok(demo_propext()),
        "negneg" => Ok(demo_negneg()),
        other => Err(CliError::UnknownDemo(other.to_string())),
    }
}

fn demo_retract() -> Report {
    let mut report = Report::new();
    let (a, b) = retract_counterexample();
    report.push(
        "retract",
        "el(name(A)) differs from A structurally (pre-quotient retract failure)",
        a != b,
        Some(format!("A            = {a}\nel(name(A))  = {b}")),
    );
    report.push(
        "retract",
        "the same pair is identified by the quotient: eq-q holds",
        types_equal_q(&a, &b).unwrap_or(false),
        Some(format!(
            "name(A)           = {}\nname(el(name(A))) = {}",
            name(&a)
                .map(|c| c.to_string())
                .unwrap_or_else(|e| e.to_string()),
            name(&b)
                .map(|c| c.to_string())
                .unwrap_or_else(|e| e.to_string()),
        )),
    );

    // The other inverse law needs no quotient at all: name(el(c)) = c,
    // checked exhaustively over all 8 codes on a three-point context.
    let gamma3 = Presheaf::constant(Arc::new(builtin_base(BaseName::Pt)), &["0", "1", "2"]);
    let subs = all_subobjects(&gamma3).expect("dozens of subsets at most");
    let all_codes_round_trip = subs.iter().all(|p| {
        let c = PropCode::from_subobject(p);
        name(&el(&c)).map(|back| back == c).unwrap_or(false)
    });
    report.push(
        "retract",
        format!(
            "name(el(c)) = c for all {} codes over a three-point context",
            subs.len()
        ),
        all_codes_round_trip && subs.len() == 8,
        None,
    );
    report
}

fn demo_propext() -> Report {
    let mut report = Report::new();
    // Two presentations of the proposition {0,1} over a three-point
    // context: the el-form, and a detour through a two-point universe.
    let base = Arc::new(builtin_base(BaseName::Pt));
    let gamma = Presheaf::constant(base.clone(), &["0", "1", "2"]);
    let p01 = Subpresheaf::new(
        gamma.clone(),
        BTreeMap::from([(
            "o".to_string(),
            ["0", "1"].into_iter().map(String::from).collect(),
        )]),
    )
    .expect("subsets of a point-based context are closed");
    let a = el_of_subobject(&p01);

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
    .expect("constant components are natural");
    let f = NatTrans::new(
        gamma.clone(),
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
    .expect("components into a constant presheaf are natural");
    let b = LocalType::new(&gamma, &v, &e, &p, &f).expect("diagram legs agree");

    report.push(
        "propext",
        "two structurally different presentations of the same proposition",
        a != b,
        Some(format!("A = {a}\nB = {b}")),
    );

    let ca = name(&a).expect("a is a proposition");
    let cb = name(&b).expect("b is a proposition");
    let forward = !terms_of(&el(&implies_code(&ca, &cb).expect("same context")))
        .expect("desk scale")
        .is_empty();
    let backward = !terms_of(&el(&implies_code(&cb, &ca).expect("same context")))
        .expect("desk scale")
        .is_empty();
    report.push(
        "propext",
        "both implication propositions are inhabited",
        forward && backward,
        Some(format!(
            "A → B inhabited: {forward}\nB → A inhabited: {backward}"
        )),
    );
    report.push(
        "propext",
        "therefore the two types are equal in the quotient",
        propext_check(&a, &b).unwrap_or(false) && types_equal_q(&a, &b).unwrap_or(false),
        Some(format!("name(A) = {ca}\nname(B) = {cb}")),
    );
    report
}

fn demo_negneg() -> Report {
    let mut report = Report::new();
    let base = Arc::new(builtin_base(BaseName::Arr));
    let yb = yoneda(&base, "b").expect("b is an object of arr");
    let pa = Subpresheaf::new(
        yb.clone(),
        BTreeMap::from([
            ("a".to_string(), ["f".to_string()].into_iter().collect()),
            ("b".to_string(), Default::default()),
        ]),
    )
    .expect("Pa is closed under restriction");
    let bottom = Subpresheaf::empty(&yb);
    let neg = implies(&pa, &bottom).expect("same ambient");
    let negneg = implies(&neg, &bottom).expect("same ambient");

    report.push(
        "negneg",
        "P is the a-component of the representable over arr",
        true,
        Some(format!("P   = [{pa}]\n¬P  = [{neg}]\n¬¬P = [{negneg}]")),
    );
    report.push(
        "negneg",
        "¬¬P is full but P is not: the logic is intuitionistic, not Boolean",
        sub_eq(&negneg, &Subpresheaf::full(&yb)).unwrap_or(false)
            && !sub_eq(&pa, &negneg).unwrap_or(true),
        None,
    );
    report.push(
        "negneg",
        "P ≤ ¬¬P holds while ¬¬P ≤ P fails",
        sub_leq(&pa, &negneg).unwrap_or(false) && !sub_leq(&negneg, &pa).unwrap_or(true),
        None,
    );
    report.push(
        "negneg",
        "accordingly el(P) and el(¬¬P) stay distinct in the quotient",
        !types_equal_q(&el_of_subobject(&pa), &el_of_subobject(&negneg)).unwrap_or(true),
        None,
    );
    report
}
