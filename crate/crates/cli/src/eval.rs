//! Evaluation of the assertion forms against an elaborated model.

use propcoh_core::natmodel::{ctx_extend, is_subsingleton, terms_of, LocalType};
use propcoh_core::propquot::{canon, el_of_subobject, propext_check, types_equal_q};
use propcoh_core::topos::{sub_leq, Subpresheaf};

use crate::model::{render_judgement, Judgement, Model, ParsedModel};
use crate::report::Report;
use crate::CliError;

/// Runs every assertion of the file, in order. Evaluation errors (for
/// example `name` of a non-proposition) abort with the assertion's
/// location; ordinary failures become FAIL entries with a rendered
/// counterexample.
pub fn run_assertions(model: &Model, parsed: &ParsedModel) -> Result<Report, CliError> {
    let mut report = Report::new();
    for (i, judgement) in parsed.file.asserts.iter().enumerate() {
        let loc = format!("line {}", parsed.assert_lines[i]);
        let desc = render_judgement(judgement);
        let wrap = |e: CliError| match e {
            CliError::Core(source) => CliError::Eval {
                loc: loc.clone(),
                source,
            },
            other => other,
        };
        let (ok, detail) = eval_judgement(model, judgement).map_err(wrap)?;
        report.push(loc, desc, ok, detail);
    }
    Ok(report)
}

fn eval_judgement(
    model: &Model,
    judgement: &Judgement,
) -> Result<(bool, Option<String>), CliError> {
    match judgement {
        Judgement::Eq(t1, t2) => {
            let a = model.eval_type(t1)?;
            let b = model.eval_type(t2)?;
            let ok = a == b;
            let detail = (!ok).then(|| format!("left:  {a}\nright: {b}"));
            Ok((ok, detail))
        }
        Judgement::EqQ(t1, t2) => {
            let a = model.eval_type(t1)?;
            let b = model.eval_type(t2)?;
            let ok = types_equal_q(&a, &b).map_err(CliError::Core)?;
            let detail = (!ok).then(|| {
                format!(
                    "left canonical form:  {}\nright canonical form: {}",
                    canon(&a),
                    canon(&b)
                )
            });
            Ok((ok, detail))
        }
        Judgement::Leq(p, q) => {
            let sp = model.eval_prop(p)?;
            let sq = model.eval_prop(q)?;
            let ok = sub_leq(&sp, &sq).map_err(CliError::Core)?;
            let detail = (!ok).then(|| leq_witness(&sp, &sq));
            Ok((ok, detail))
        }
        Judgement::Holds(p) => {
            let sp = model.eval_prop(p)?;
            let ty = el_of_subobject(&sp);
            let ok = !terms_of(&ty).map_err(CliError::Core)?.is_empty();
            let detail = (!ok).then(|| format!("no global section: the proposition is [{sp}]"));
            Ok((ok, detail))
        }
        Judgement::Propext(t1, t2) => {
            let a = model.eval_type(t1)?;
            let b = model.eval_type(t2)?;
            let ok = propext_check(&a, &b).map_err(CliError::Core)?;
            let detail = (!ok).then(|| {
                format!(
                    "left canonical form:  {}\nright canonical form: {}",
                    canon(&a),
                    canon(&b)
                )
            });
            Ok((ok, detail))
        }
        Judgement::Subsingleton(t) => {
            let a = model.eval_type(t)?;
            let ok = is_subsingleton(&a);
            let detail = (!ok).then(|| subsingleton_witness(&a));
            Ok((ok, detail))
        }
    }
}

fn leq_witness(p: &Subpresheaf, q: &Subpresheaf) -> String {
    for o in p.ambient().base().objects() {
        for x in p.subset_at(o) {
            if !q.contains(o, x) {
                return format!(
                    "witness: `{x}` at `{o}` is in the left but not the right\nleft:  [{p}]\nright: [{q}]"
                );
            }
        }
    }
    format!("left:  [{p}]\nright: [{q}]")
}

fn subsingleton_witness(a: &LocalType) -> String {
    let (ext, proj, _) = ctx_extend(a);
    for o in ext.base().objects() {
        let elems = ext.elements_at(o);
        for (i, e1) in elems.iter().enumerate() {
            for e2 in &elems[i + 1..] {
                if proj.apply(o, e1) == proj.apply(o, e2) {
                    return format!(
                        "witness: extension elements `{e1}` and `{e2}` at `{o}` sit over the same point `{}`",
                        proj.apply(o, e1)
                    );
                }
            }
        }
    }
    "no witness found".into()
}
