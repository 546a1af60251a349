//! The model-description language: declarations of a base category, one
//! context, propositions, types, and assertions, as s-expressions.
//!
//! A file looks like:
//!
//! ```text
//! (base pt)
//! (context G3 (carriers (o (0 1 2))) (restrict))
//! (prop P (sub (o (0 1))))
//! (type A (el P))
//! (assert (eq-q (el (name A)) A))
//! ```
//!
//! Parsing enforces scoping (identifiers defined before use, no
//! duplicates, exactly one base and one context); elaboration builds the
//! validated semantic objects through the core constructors, so any
//! malformed table is reported with the constructor's reason.

use std::collections::BTreeMap;
use std::sync::Arc;

use propcoh_core::fincat::{builtin_base, BaseName, FiniteCategory, Morphism};
use propcoh_core::natmodel::LocalType;
use propcoh_core::presheaf::{NatTrans, Presheaf};
use propcoh_core::propquot::{el_of_subobject, name};
use propcoh_core::topos::{implies, join, meet, Subpresheaf};

use crate::sexpr::{read_all, Pos, Sexp};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseDecl {
    Builtin(BaseName),
    Explicit {
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        compose: Vec<(String, String, String)>,
    },
}

/// Carriers and (non-identity) restrictions of a presheaf declaration.
/// Per-key pair lists: restrictions keyed by morphism, or component
/// maps keyed by object.
pub type ComponentClauses = Vec<(String, Vec<(String, String)>)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafBody {
    pub carriers: Vec<(String, Vec<String>)>,
    pub restricts: ComponentClauses,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextDecl {
    pub id: String,
    pub body: PresheafBody,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropExpr {
    Ref(String),
    Top,
    Bot,
    Sub(Vec<(String, Vec<String>)>),
    And(Box<PropExpr>, Box<PropExpr>),
    Or(Box<PropExpr>, Box<PropExpr>),
    Implies(Box<PropExpr>, Box<PropExpr>),
    Name(Box<TypeExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeExpr {
    Ref(String),
    El(Box<PropExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropDecl {
    pub id: String,
    pub expr: PropExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeBody {
    El(PropExpr),
    Diagram {
        v: PresheafBody,
        e: PresheafBody,
        p: ComponentClauses,
        f: ComponentClauses,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDecl {
    pub id: String,
    pub body: TypeBody,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Judgement {
    Eq(TypeExpr, TypeExpr),
    EqQ(TypeExpr, TypeExpr),
    Leq(PropExpr, PropExpr),
    Holds(PropExpr),
    Propext(TypeExpr, TypeExpr),
    Subsingleton(TypeExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFile {
    pub base: BaseDecl,
    pub context: ContextDecl,
    pub props: Vec<PropDecl>,
    pub types: Vec<TypeDecl>,
    pub asserts: Vec<Judgement>,
}

/// A parsed file plus the source line of every assertion, for reports.
#[derive(Debug, Clone)]
pub struct ParsedModel {
    pub file: ModelFile,
    pub assert_lines: Vec<usize>,
}

fn invalid(pos: Pos, msg: impl Into<String>) -> CliError {
    CliError::Invalid {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

fn expect_sym<'a>(form: &'a Sexp, what: &str) -> Result<&'a str, CliError> {
    form.as_sym()
        .ok_or_else(|| invalid(form.pos(), format!("expected {what}, found a list")))
}

fn expect_list<'a>(form: &'a Sexp, what: &str) -> Result<&'a [Sexp], CliError> {
    form.as_list()
        .ok_or_else(|| invalid(form.pos(), format!("expected {what}")))
}

/// Names that cannot be used for props or types because they are bare
/// keywords in expression position.
const RESERVED: [&str; 2] = ["top", "bot"];

struct FileParser {
    base: Option<BaseDecl>,
    context: Option<ContextDecl>,
    props: Vec<PropDecl>,
    types: Vec<TypeDecl>,
    asserts: Vec<Judgement>,
    assert_lines: Vec<usize>,
    defined: Vec<String>,
}

impl FileParser {
    fn is_defined(&self, id: &str) -> bool {
        self.defined.iter().any(|d| d == id)
    }

    fn declare(&mut self, id: &str, pos: Pos) -> Result<(), CliError> {
        if RESERVED.contains(&id) {
            return Err(invalid(pos, format!("`{id}` is a reserved word")));
        }
        if self.is_defined(id) {
            return Err(CliError::Duplicate(id.to_string()));
        }
        self.defined.push(id.to_string());
        Ok(())
    }

    fn top_form(&mut self, form: &Sexp) -> Result<(), CliError> {
        let items = expect_list(form, "a declaration")?;
        let head = items
            .first()
            .and_then(Sexp::as_sym)
            .ok_or_else(|| invalid(form.pos(), "a declaration keyword"))?;
        match head {
            "base" => {
                if self.base.is_some() {
                    return Err(invalid(form.pos(), "base already declared"));
                }
                self.base = Some(parse_base(&items[1..], form.pos())?);
            }
            "context" => {
                if self.context.is_some() {
                    return Err(invalid(form.pos(), "a file has exactly one context"));
                }
                if items.len() < 2 {
                    return Err(invalid(form.pos(), "expected (context <id> ...)"));
                }
                let id = expect_sym(&items[1], "context id")?.to_string();
                self.declare(&id, items[1].pos())?;
                let body = parse_presheaf_body(&items[2..], form.pos())?;
                self.context = Some(ContextDecl { id, body });
            }
            "prop" => {
                if items.len() != 3 {
                    return Err(invalid(form.pos(), "expected (prop <id> <expr>)"));
                }
                let id = expect_sym(&items[1], "prop id")?.to_string();
                let expr = self.parse_prop_expr(&items[2])?;
                self.declare(&id, items[1].pos())?;
                self.props.push(PropDecl { id, expr });
            }
            "type" => {
                if items.len() < 3 {
                    return Err(invalid(form.pos(), "expected (type <id> <body>)"));
                }
                let id = expect_sym(&items[1], "type id")?.to_string();
                let body = self.parse_type_body(&items[2..], form.pos())?;
                self.declare(&id, items[1].pos())?;
                self.types.push(TypeDecl { id, body });
            }
            "assert" => {
                if items.len() != 2 {
                    return Err(invalid(form.pos(), "expected (assert <judgement>)"));
                }
                let judgement = self.parse_judgement(&items[1])?;
                self.asserts.push(judgement);
                self.assert_lines.push(form.pos().line);
            }
            other => {
                return Err(invalid(
                    form.pos(),
                    format!("unknown declaration `{other}`"),
                ));
            }
        }
        Ok(())
    }

    fn parse_prop_expr(&self, form: &Sexp) -> Result<PropExpr, CliError> {
        match form {
            Sexp::Sym(s, _) => match s.as_str() {
                "top" => Ok(PropExpr::Top),
                "bot" => Ok(PropExpr::Bot),
                id => {
                    if !self.is_defined(id) {
                        return Err(CliError::Unbound(id.to_string()));
                    }
                    Ok(PropExpr::Ref(id.to_string()))
                }
            },
            Sexp::List(items, pos) => {
                let head = items
                    .first()
                    .and_then(Sexp::as_sym)
                    .ok_or_else(|| invalid(*pos, "a proposition operator"))?;
                match head {
                    "sub" => {
                        let mut clauses = Vec::new();
                        for clause in &items[1..] {
                            let parts = expect_list(clause, "(object (elements...))")?;
                            if parts.len() != 2 {
                                return Err(invalid(
                                    clause.pos(),
                                    "expected (object (elements...))",
                                ));
                            }
                            let obj = expect_sym(&parts[0], "object id")?.to_string();
                            let elems = expect_list(&parts[1], "(elements...)")?
                                .iter()
                                .map(|e| expect_sym(e, "element label").map(String::from))
                                .collect::<Result<Vec<_>, _>>()?;
                            clauses.push((obj, elems));
                        }
                        Ok(PropExpr::Sub(clauses))
                    }
                    "and" | "or" | "implies" => {
                        if items.len() != 3 {
                            return Err(invalid(*pos, format!("expected ({head} e e)")));
                        }
                        let lhs = Box::new(self.parse_prop_expr(&items[1])?);
                        let rhs = Box::new(self.parse_prop_expr(&items[2])?);
                        Ok(match head {
                            "and" => PropExpr::And(lhs, rhs),
                            "or" => PropExpr::Or(lhs, rhs),
                            _ => PropExpr::Implies(lhs, rhs),
                        })
                    }
                    "name" => {
                        if items.len() != 2 {
                            return Err(invalid(*pos, "expected (name <type>)"));
                        }
                        Ok(PropExpr::Name(Box::new(self.parse_type_expr(&items[1])?)))
                    }
                    other => Err(invalid(
                        *pos,
                        format!("unknown proposition operator `{other}`"),
                    )),
                }
            }
        }
    }

    fn parse_type_expr(&self, form: &Sexp) -> Result<TypeExpr, CliError> {
        match form {
            Sexp::Sym(id, _) => {
                if !self.is_defined(id) {
                    return Err(CliError::Unbound(id.to_string()));
                }
                Ok(TypeExpr::Ref(id.to_string()))
            }
            Sexp::List(items, pos) => {
                let head = items
                    .first()
                    .and_then(Sexp::as_sym)
                    .ok_or_else(|| invalid(*pos, "a type operator"))?;
                if head != "el" || items.len() != 2 {
                    return Err(invalid(*pos, "expected (el <prop>)"));
                }
                Ok(TypeExpr::El(Box::new(self.parse_prop_expr(&items[1])?)))
            }
        }
    }

    fn parse_type_body(&self, items: &[Sexp], pos: Pos) -> Result<TypeBody, CliError> {
        if items.len() == 1 {
            if let Some(inner) = items[0].as_list() {
                if inner.first().and_then(Sexp::as_sym) == Some("el") {
                    if inner.len() != 2 {
                        return Err(invalid(items[0].pos(), "expected (el <prop>)"));
                    }
                    return Ok(TypeBody::El(self.parse_prop_expr(&inner[1])?));
                }
                if inner.first().and_then(Sexp::as_sym) == Some("diagram") {
                    return self.parse_diagram(&inner[1..], items[0].pos());
                }
            }
        }
        Err(invalid(pos, "expected (el <prop>) or (diagram ...)"))
    }

    fn parse_diagram(&self, items: &[Sexp], pos: Pos) -> Result<TypeBody, CliError> {
        let mut v = None;
        let mut e = None;
        let mut p = None;
        let mut f = None;
        for clause in items {
            let parts = expect_list(clause, "a diagram clause")?;
            let head = parts
                .first()
                .and_then(Sexp::as_sym)
                .ok_or_else(|| invalid(clause.pos(), "v, e, p, or f"))?;
            match head {
                "v" => v = Some(parse_presheaf_body(&parts[1..], clause.pos())?),
                "e" => e = Some(parse_presheaf_body(&parts[1..], clause.pos())?),
                "p" => p = Some(parse_component_map(&parts[1..])?),
                "f" => f = Some(parse_component_map(&parts[1..])?),
                other => {
                    return Err(invalid(
                        clause.pos(),
                        format!("unknown diagram clause `{other}`"),
                    ))
                }
            }
        }
        match (v, e, p, f) {
            (Some(v), Some(e), Some(p), Some(f)) => Ok(TypeBody::Diagram { v, e, p, f }),
            _ => Err(invalid(pos, "diagram needs v, e, p, and f clauses")),
        }
    }

    fn parse_judgement(&self, form: &Sexp) -> Result<Judgement, CliError> {
        let items = expect_list(form, "a judgement")?;
        let head = items
            .first()
            .and_then(Sexp::as_sym)
            .ok_or_else(|| invalid(form.pos(), "a judgement keyword"))?;
        let want = |n: usize| -> Result<(), CliError> {
            if items.len() != n + 1 {
                return Err(invalid(
                    form.pos(),
                    format!("`{head}` takes {n} argument(s)"),
                ));
            }
            Ok(())
        };
        match head {
            "eq" => {
                want(2)?;
                Ok(Judgement::Eq(
                    self.parse_type_expr(&items[1])?,
                    self.parse_type_expr(&items[2])?,
                ))
            }
            "eq-q" => {
                want(2)?;
                Ok(Judgement::EqQ(
                    self.parse_type_expr(&items[1])?,
                    self.parse_type_expr(&items[2])?,
                ))
            }
            "leq" => {
                want(2)?;
                Ok(Judgement::Leq(
                    self.parse_prop_expr(&items[1])?,
                    self.parse_prop_expr(&items[2])?,
                ))
            }
            "holds" => {
                want(1)?;
                Ok(Judgement::Holds(self.parse_prop_expr(&items[1])?))
            }
            "propext" => {
                want(2)?;
                Ok(Judgement::Propext(
                    self.parse_type_expr(&items[1])?,
                    self.parse_type_expr(&items[2])?,
                ))
            }
            "subsingleton" => {
                want(1)?;
                Ok(Judgement::Subsingleton(self.parse_type_expr(&items[1])?))
            }
            other => Err(invalid(form.pos(), format!("unknown judgement `{other}`"))),
        }
    }
}

fn parse_base(items: &[Sexp], pos: Pos) -> Result<BaseDecl, CliError> {
    match items {
        [Sexp::Sym(name, _)] => Ok(BaseDecl::Builtin(name.parse().map_err(CliError::Core)?)),
        clauses if !clauses.is_empty() => {
            let mut objects = None;
            let mut morphisms = None;
            let mut compose = Vec::new();
            for clause in clauses {
                let parts = expect_list(clause, "a base clause")?;
                let head = parts
                    .first()
                    .and_then(Sexp::as_sym)
                    .ok_or_else(|| invalid(clause.pos(), "objects, morphisms, or compose"))?;
                match head {
                    "objects" => {
                        objects = Some(
                            parts[1..]
                                .iter()
                                .map(|s| expect_sym(s, "object id").map(String::from))
                                .collect::<Result<Vec<_>, _>>()?,
                        );
                    }
                    "morphisms" => {
                        morphisms = Some(
                            parts[1..]
                                .iter()
                                .map(|m| parse_triple(m, "(id src tgt)"))
                                .collect::<Result<Vec<_>, _>>()?,
                        );
                    }
                    "compose" => {
                        compose = parts[1..]
                            .iter()
                            .map(|m| parse_triple(m, "(g f composite)"))
                            .collect::<Result<Vec<_>, _>>()?;
                    }
                    other => {
                        return Err(invalid(
                            clause.pos(),
                            format!("unknown base clause `{other}`"),
                        ))
                    }
                }
            }
            match (objects, morphisms) {
                (Some(objects), Some(morphisms)) => Ok(BaseDecl::Explicit {
                    objects,
                    morphisms,
                    compose,
                }),
                _ => Err(invalid(
                    pos,
                    "explicit base needs objects and morphisms clauses",
                )),
            }
        }
        _ => Err(invalid(
            pos,
            "expected (base <name>) or (base (objects ...) ...)",
        )),
    }
}

fn parse_triple(form: &Sexp, what: &str) -> Result<(String, String, String), CliError> {
    let parts = expect_list(form, what)?;
    if parts.len() != 3 {
        return Err(invalid(form.pos(), format!("expected {what}")));
    }
    Ok((
        expect_sym(&parts[0], "an id")?.to_string(),
        expect_sym(&parts[1], "an id")?.to_string(),
        expect_sym(&parts[2], "an id")?.to_string(),
    ))
}

fn parse_presheaf_body(items: &[Sexp], pos: Pos) -> Result<PresheafBody, CliError> {
    let mut carriers = None;
    let mut restricts = Vec::new();
    for clause in items {
        let parts = expect_list(clause, "carriers or restrict clause")?;
        let head = parts
            .first()
            .and_then(Sexp::as_sym)
            .ok_or_else(|| invalid(clause.pos(), "carriers or restrict"))?;
        match head {
            "carriers" => {
                let mut out = Vec::new();
                for c in &parts[1..] {
                    let cp = expect_list(c, "(object (labels...))")?;
                    if cp.len() != 2 {
                        return Err(invalid(c.pos(), "expected (object (labels...))"));
                    }
                    let obj = expect_sym(&cp[0], "object id")?.to_string();
                    let labels = expect_list(&cp[1], "(labels...)")?
                        .iter()
                        .map(|l| expect_sym(l, "label").map(String::from))
                        .collect::<Result<Vec<_>, _>>()?;
                    out.push((obj, labels));
                }
                carriers = Some(out);
            }
            "restrict" => {
                restricts.extend(parse_component_map(&parts[1..])?);
            }
            other => return Err(invalid(clause.pos(), format!("unknown clause `{other}`"))),
        }
    }
    match carriers {
        Some(carriers) => Ok(PresheafBody {
            carriers,
            restricts,
        }),
        None => Err(invalid(pos, "missing carriers clause")),
    }
}

/// Parses `(key (x y) (x2 y2)) ...` clauses into per-key pair lists; used
/// for restrictions (key = morphism) and components (key = object).
fn parse_component_map(items: &[Sexp]) -> Result<ComponentClauses, CliError> {
    let mut out = Vec::new();
    for clause in items {
        let parts = expect_list(clause, "(key (x y) ...)")?;
        let key = expect_sym(
            parts
                .first()
                .ok_or_else(|| invalid(clause.pos(), "a key"))?,
            "a key",
        )?
        .to_string();
        let mut pairs = Vec::new();
        for pair in &parts[1..] {
            let pp = expect_list(pair, "(x y)")?;
            if pp.len() != 2 {
                return Err(invalid(pair.pos(), "expected (x y)"));
            }
            pairs.push((
                expect_sym(&pp[0], "a label")?.to_string(),
                expect_sym(&pp[1], "a label")?.to_string(),
            ));
        }
        out.push((key, pairs));
    }
    Ok(out)
}

/// Parses a whole model file.
pub fn parse_model(text: &str) -> Result<ParsedModel, CliError> {
    let forms = read_all(text)?;
    let mut parser = FileParser {
        base: None,
        context: None,
        props: Vec::new(),
        types: Vec::new(),
        asserts: Vec::new(),
        assert_lines: Vec::new(),
        defined: Vec::new(),
    };
    for form in &forms {
        parser.top_form(form)?;
    }
    let origin = Pos { line: 1, col: 1 };
    let base = parser
        .base
        .ok_or_else(|| invalid(origin, "missing (base ...)"))?;
    let context = parser
        .context
        .ok_or_else(|| invalid(origin, "missing (context ...)"))?;
    Ok(ParsedModel {
        file: ModelFile {
            base,
            context,
            props: parser.props,
            types: parser.types,
            asserts: parser.asserts,
        },
        assert_lines: parser.assert_lines,
    })
}

// ---------------------------------------------------------------------
// Rendering (canonical form; parse ∘ render is the identity).

fn render_labels(labels: &[String]) -> String {
    format!("({})", labels.join(" "))
}

fn render_pairs(pairs: &[(String, String)]) -> String {
    pairs.iter().map(|(x, y)| format!(" ({x} {y})")).collect()
}

fn render_component_map(entries: &ComponentClauses) -> String {
    entries
        .iter()
        .map(|(key, pairs)| format!(" ({key}{})", render_pairs(pairs)))
        .collect()
}

fn render_presheaf_body(body: &PresheafBody) -> String {
    let carriers: String = body
        .carriers
        .iter()
        .map(|(o, ls)| format!(" ({o} {})", render_labels(ls)))
        .collect();
    format!(
        "(carriers{carriers}) (restrict{})",
        render_component_map(&body.restricts)
    )
}

pub fn render_prop_expr(e: &PropExpr) -> String {
    match e {
        PropExpr::Ref(id) => id.clone(),
        PropExpr::Top => "top".into(),
        PropExpr::Bot => "bot".into(),
        PropExpr::Sub(clauses) => {
            let body: String = clauses
                .iter()
                .map(|(o, es)| format!(" ({o} {})", render_labels(es)))
                .collect();
            format!("(sub{body})")
        }
        PropExpr::And(a, b) => format!("(and {} {})", render_prop_expr(a), render_prop_expr(b)),
        PropExpr::Or(a, b) => format!("(or {} {})", render_prop_expr(a), render_prop_expr(b)),
        PropExpr::Implies(a, b) => {
            format!("(implies {} {})", render_prop_expr(a), render_prop_expr(b))
        }
        PropExpr::Name(t) => format!("(name {})", render_type_expr(t)),
    }
}

pub fn render_type_expr(e: &TypeExpr) -> String {
    match e {
        TypeExpr::Ref(id) => id.clone(),
        TypeExpr::El(p) => format!("(el {})", render_prop_expr(p)),
    }
}

pub fn render_judgement(j: &Judgement) -> String {
    match j {
        Judgement::Eq(a, b) => format!("(eq {} {})", render_type_expr(a), render_type_expr(b)),
        Judgement::EqQ(a, b) => format!("(eq-q {} {})", render_type_expr(a), render_type_expr(b)),
        Judgement::Leq(p, q) => format!("(leq {} {})", render_prop_expr(p), render_prop_expr(q)),
        Judgement::Holds(p) => format!("(holds {})", render_prop_expr(p)),
        Judgement::Propext(a, b) => {
            format!("(propext {} {})", render_type_expr(a), render_type_expr(b))
        }
        Judgement::Subsingleton(t) => format!("(subsingleton {})", render_type_expr(t)),
    }
}

/// Renders a model file in canonical formatting.
pub fn render_model(file: &ModelFile) -> String {
    let mut out = String::new();
    match &file.base {
        BaseDecl::Builtin(name) => out.push_str(&format!("(base {name})\n")),
        BaseDecl::Explicit {
            objects,
            morphisms,
            compose,
        } => {
            let objs = objects.join(" ");
            let mors: String = morphisms
                .iter()
                .map(|(m, s, t)| format!(" ({m} {s} {t})"))
                .collect();
            let comp: String = compose
                .iter()
                .map(|(g, f, h)| format!(" ({g} {f} {h})"))
                .collect();
            out.push_str(&format!(
                "(base (objects {objs}) (morphisms{mors}) (compose{comp}))\n"
            ));
        }
    }
    out.push_str(&format!(
        "(context {} {})\n",
        file.context.id,
        render_presheaf_body(&file.context.body)
    ));
    for p in &file.props {
        out.push_str(&format!("(prop {} {})\n", p.id, render_prop_expr(&p.expr)));
    }
    for t in &file.types {
        match &t.body {
            TypeBody::El(p) => {
                out.push_str(&format!("(type {} (el {}))\n", t.id, render_prop_expr(p)))
            }
            TypeBody::Diagram { v, e, p, f } => {
                out.push_str(&format!(
                    "(type {} (diagram (v {}) (e {}) (p{}) (f{})))\n",
                    t.id,
                    render_presheaf_body(v),
                    render_presheaf_body(e),
                    render_component_map(p),
                    render_component_map(f),
                ));
            }
        }
    }
    for j in &file.asserts {
        out.push_str(&format!("(assert {})\n", render_judgement(j)));
    }
    out
}

// ---------------------------------------------------------------------
// Elaboration into core values.

/// A fully validated model: every declaration has been pushed through the
/// core constructors.
pub struct Model {
    pub category: Arc<FiniteCategory>,
    pub context: Presheaf,
    pub props: Vec<(String, Subpresheaf)>,
    pub types: Vec<(String, LocalType)>,
}

impl Model {
    pub fn prop(&self, id: &str) -> Result<&Subpresheaf, CliError> {
        self.props
            .iter()
            .find(|(p, _)| p == id)
            .map(|(_, s)| s)
            .ok_or_else(|| CliError::Unbound(id.to_string()))
    }

    pub fn typ(&self, id: &str) -> Result<&LocalType, CliError> {
        self.types
            .iter()
            .find(|(t, _)| t == id)
            .map(|(_, a)| a)
            .ok_or_else(|| CliError::Unbound(id.to_string()))
    }

    /// Evaluates a proposition expression to a canonical subobject of the
    /// file's context.
    pub fn eval_prop(&self, e: &PropExpr) -> Result<Subpresheaf, CliError> {
        match e {
            PropExpr::Ref(id) => Ok(self.prop(id)?.clone()),
            PropExpr::Top => Ok(Subpresheaf::full(&self.context)),
            PropExpr::Bot => Ok(Subpresheaf::empty(&self.context)),
            PropExpr::Sub(clauses) => {
                let mut subsets: BTreeMap<String, std::collections::BTreeSet<String>> = self
                    .category
                    .objects()
                    .iter()
                    .map(|o| (o.clone(), Default::default()))
                    .collect();
                for (obj, elems) in clauses {
                    let slot = subsets
                        .get_mut(obj)
                        .ok_or_else(|| CliError::Model(format!("unknown object `{obj}`")))?;
                    slot.extend(elems.iter().cloned());
                }
                Subpresheaf::new(self.context.clone(), subsets).map_err(CliError::Core)
            }
            PropExpr::And(a, b) => {
                meet(&self.eval_prop(a)?, &self.eval_prop(b)?).map_err(CliError::Core)
            }
            PropExpr::Or(a, b) => {
                join(&self.eval_prop(a)?, &self.eval_prop(b)?).map_err(CliError::Core)
            }
            PropExpr::Implies(a, b) => {
                implies(&self.eval_prop(a)?, &self.eval_prop(b)?).map_err(CliError::Core)
            }
            PropExpr::Name(t) => {
                let ty = self.eval_type(t)?;
                Ok(name(&ty).map_err(CliError::Core)?.subobject())
            }
        }
    }

    /// Evaluates a type expression to a local type over the context.
    pub fn eval_type(&self, e: &TypeExpr) -> Result<LocalType, CliError> {
        match e {
            TypeExpr::Ref(id) => {
                // A bare identifier may refer to a type or to a prop; a
                // prop is lifted through el.
                if let Ok(a) = self.typ(id) {
                    return Ok(a.clone());
                }
                Ok(el_of_subobject(self.prop(id)?))
            }
            TypeExpr::El(p) => Ok(el_of_subobject(&self.eval_prop(p)?)),
        }
    }
}

/// Declared carriers are capped so that exhaustive section searches stay
/// desk-scale: 5 per object for contexts and total spaces, 4 for local
/// universes.
const MAX_CARRIER: usize = 5;
const MAX_UNIVERSE_CARRIER: usize = 4;

fn build_presheaf(
    category: &Arc<FiniteCategory>,
    body: &PresheafBody,
    max_carrier: usize,
) -> Result<Presheaf, CliError> {
    let mut carrier: BTreeMap<String, Vec<String>> = category
        .objects()
        .iter()
        .map(|o| (o.clone(), Vec::new()))
        .collect();
    for (obj, labels) in &body.carriers {
        if labels.len() > max_carrier {
            return Err(CliError::Core(propcoh_core::Error::SizeLimitExceeded(
                format!(
                    "carrier at `{obj}` has {} elements, the limit is {max_carrier}",
                    labels.len()
                ),
            )));
        }
        match carrier.get_mut(obj) {
            Some(slot) => *slot = labels.clone(),
            None => {
                return Err(CliError::Model(format!(
                    "unknown object `{obj}` in carriers"
                )))
            }
        }
    }
    let mut restrict: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    for m in category.morphisms() {
        if category.is_identity(&m.id) {
            restrict.insert(
                m.id.clone(),
                carrier[&m.tgt]
                    .iter()
                    .map(|x| (x.clone(), x.clone()))
                    .collect(),
            );
        } else {
            restrict.insert(m.id.clone(), BTreeMap::new());
        }
    }
    for (mor, pairs) in &body.restricts {
        let slot = restrict
            .get_mut(mor)
            .ok_or_else(|| CliError::Model(format!("unknown morphism `{mor}` in restrict")))?;
        for (x, y) in pairs {
            slot.insert(x.clone(), y.clone());
        }
    }
    Presheaf::new(category.clone(), carrier, restrict).map_err(CliError::Core)
}

fn build_component_map(
    entries: &ComponentClauses,
    source: &Presheaf,
    target: &Presheaf,
) -> Result<NatTrans, CliError> {
    let mut components: BTreeMap<String, BTreeMap<String, String>> = source
        .base()
        .objects()
        .iter()
        .map(|o| (o.clone(), BTreeMap::new()))
        .collect();
    for (obj, pairs) in entries {
        let slot = components
            .get_mut(obj)
            .ok_or_else(|| CliError::Model(format!("unknown object `{obj}` in component map")))?;
        for (x, y) in pairs {
            slot.insert(x.clone(), y.clone());
        }
    }
    NatTrans::new(source.clone(), target.clone(), components).map_err(CliError::Core)
}

/// Validates all declarations of a parsed file through the core
/// constructors.
pub fn elaborate(parsed: &ParsedModel) -> Result<Model, CliError> {
    let file = &parsed.file;
    let category = Arc::new(match &file.base {
        BaseDecl::Builtin(name) => builtin_base(*name),
        BaseDecl::Explicit {
            objects,
            morphisms,
            compose,
        } => FiniteCategory::new(
            objects.clone(),
            morphisms
                .iter()
                .map(|(id, src, tgt)| Morphism::new(id.clone(), src.clone(), tgt.clone()))
                .collect(),
            compose.clone(),
        )
        .map_err(CliError::Core)?,
    });
    let context = build_presheaf(&category, &file.context.body, MAX_CARRIER)?;
    let mut model = Model {
        category,
        context,
        props: Vec::new(),
        types: Vec::new(),
    };
    for decl in &file.props {
        let sub = model.eval_prop(&decl.expr)?;
        model.props.push((decl.id.clone(), sub));
    }
    for decl in &file.types {
        let ty = match &decl.body {
            TypeBody::El(p) => el_of_subobject(&model.eval_prop(p)?),
            TypeBody::Diagram { v, e, p, f } => {
                let v_ps = build_presheaf(&model.category, v, MAX_UNIVERSE_CARRIER)?;
                let e_ps = build_presheaf(&model.category, e, MAX_CARRIER)?;
                let p_map = build_component_map(p, &e_ps, &v_ps)?;
                let f_map = build_component_map(f, &model.context, &v_ps)?;
                LocalType::new(&model.context, &v_ps, &e_ps, &p_map, &f_map)
                    .map_err(CliError::Core)?
            }
        };
        model.types.push((decl.id.clone(), ty));
    }
    Ok(model)
}
