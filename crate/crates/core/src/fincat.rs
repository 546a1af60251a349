//! Finite categories presented by explicit composition tables.
//!
//! A [`FiniteCategory`] is the index category over which everything else
//! is built. It is given by ordered lists of objects and morphisms plus a
//! total table of composites; all category laws are checked eagerly and
//! exhaustively at construction, which is decidable because everything is
//! finite.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::{Error, Result};

/// A composition-table row `(g, f, h)` meaning `g ∘ f = h`.
pub type ComposeEntry = (String, String, String);

/// A declared morphism `id: src → tgt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

impl Morphism {
    pub fn new(id: impl Into<String>, src: impl Into<String>, tgt: impl Into<String>) -> Self {
        Morphism {
            id: id.into(),
            src: src.into(),
            tgt: tgt.into(),
        }
    }
}

/// A finite category: objects, morphisms, and a composition table that is
/// total exactly on the composable pairs.
///
/// Identities are not declared separately; validation locates, for every
/// object, the unique endomorphism that is neutral on both sides.
/// Declaration order of objects and morphisms is significant: every
/// enumeration downstream follows it, so canonical forms are reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: BTreeMap<String, String>,
    compose: BTreeMap<(String, String), String>,
}

impl FiniteCategory {
    /// Validates and builds a category from raw tables.
    ///
    /// `table` lists entries `(g, f, h)` meaning `g ∘ f = h`. The table
    /// must mention every composable pair exactly once and nothing else.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        table: Vec<ComposeEntry>,
    ) -> Result<Self> {
        let bad = |reason: String| Error::MalformedCategory(reason);
        if objects.is_empty() {
            return Err(bad("a category needs at least one object".into()));
        }
        let mut obj_set = BTreeSet::new();
        for o in &objects {
            if !obj_set.insert(o.clone()) {
                return Err(bad(format!("duplicate object id `{o}`")));
            }
        }
        let mut mor_by_id: BTreeMap<String, &Morphism> = BTreeMap::new();
        for m in &morphisms {
            if !obj_set.contains(&m.src) {
                return Err(bad(format!(
                    "morphism `{}` has undeclared source `{}`",
                    m.id, m.src
                )));
            }
            if !obj_set.contains(&m.tgt) {
                return Err(bad(format!(
                    "morphism `{}` has undeclared target `{}`",
                    m.id, m.tgt
                )));
            }
            if mor_by_id.insert(m.id.clone(), m).is_some() {
                return Err(bad(format!("duplicate morphism id `{}`", m.id)));
            }
        }

        let mut compose = BTreeMap::new();
        for (g, f, h) in table {
            let gm = mor_by_id
                .get(&g)
                .ok_or_else(|| bad(format!("table references undeclared morphism `{g}`")))?;
            let fm = mor_by_id
                .get(&f)
                .ok_or_else(|| bad(format!("table references undeclared morphism `{f}`")))?;
            let hm = mor_by_id
                .get(&h)
                .ok_or_else(|| bad(format!("table references undeclared morphism `{h}`")))?;
            if fm.tgt != gm.src {
                return Err(bad(format!("table entry `{g} ∘ {f}` is not composable")));
            }
            if hm.src != fm.src || hm.tgt != gm.tgt {
                return Err(bad(format!(
                    "composite of `{g} ∘ {f}` is `{h}`, which has the wrong endpoints"
                )));
            }
            if compose.insert((g.clone(), f.clone()), h).is_some() {
                return Err(bad(format!("duplicate table entry for `{g} ∘ {f}`")));
            }
        }

        // Totality on composable pairs.
        for g in &morphisms {
            for f in &morphisms {
                if f.tgt == g.src && !compose.contains_key(&(g.id.clone(), f.id.clone())) {
                    return Err(bad(format!("missing composite `{} ∘ {}`", g.id, f.id)));
                }
            }
        }

        // Identities: the unique endomorphism neutral on both sides.
        let mut identity = BTreeMap::new();
        for o in &objects {
            let mut found = None;
            'candidates: for e in morphisms.iter().filter(|m| m.src == *o && m.tgt == *o) {
                for f in morphisms.iter().filter(|m| m.tgt == *o) {
                    if compose[&(e.id.clone(), f.id.clone())] != f.id {
                        continue 'candidates;
                    }
                }
                for g in morphisms.iter().filter(|m| m.src == *o) {
                    if compose[&(g.id.clone(), e.id.clone())] != g.id {
                        continue 'candidates;
                    }
                }
                found = Some(e.id.clone());
                break;
            }
            match found {
                Some(e) => {
                    identity.insert(o.clone(), e);
                }
                None => return Err(bad(format!("object `{o}` has no identity morphism"))),
            }
        }

        // Associativity over every composable triple.
        for f in &morphisms {
            for g in morphisms.iter().filter(|g| g.src == f.tgt) {
                for h in morphisms.iter().filter(|h| h.src == g.tgt) {
                    let gf = &compose[&(g.id.clone(), f.id.clone())];
                    let hg = &compose[&(h.id.clone(), g.id.clone())];
                    if compose[&(h.id.clone(), gf.clone())] != compose[&(hg.clone(), f.id.clone())]
                    {
                        return Err(bad(format!(
                            "composition is not associative on `{} ∘ {} ∘ {}`",
                            h.id, g.id, f.id
                        )));
                    }
                }
            }
        }

        Ok(FiniteCategory {
            objects,
            morphisms,
            identity,
            compose,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn has_object(&self, obj: &str) -> bool {
        self.objects.iter().any(|o| o == obj)
    }

    pub fn morphism(&self, id: &str) -> Option<&Morphism> {
        self.morphisms.iter().find(|m| m.id == id)
    }

    /// Identity morphism on `obj`.
    pub fn identity_of(&self, obj: &str) -> Result<&str> {
        self.identity
            .get(obj)
            .map(String::as_str)
            .ok_or_else(|| Error::UnknownObject(obj.into()))
    }

    pub fn is_identity(&self, mor: &str) -> bool {
        self.identity.values().any(|m| m == mor)
    }

    /// Table lookup of `g ∘ f`.
    pub fn compose(&self, g: &str, f: &str) -> Result<&str> {
        self.compose
            .get(&(g.to_string(), f.to_string()))
            .map(String::as_str)
            .ok_or_else(|| Error::NotComposable {
                g: g.into(),
                f: f.into(),
            })
    }

    /// All morphisms with target `obj`, in declaration order.
    pub fn hom_into(&self, obj: &str) -> Result<Vec<&str>> {
        if !self.has_object(obj) {
            return Err(Error::UnknownObject(obj.into()));
        }
        Ok(self
            .morphisms
            .iter()
            .filter(|m| m.tgt == obj)
            .map(|m| m.id.as_str())
            .collect())
    }

    /// All morphisms `a → b`, in declaration order.
    pub fn hom(&self, a: &str, b: &str) -> Vec<&str> {
        self.morphisms
            .iter()
            .filter(|m| m.src == a && m.tgt == b)
            .map(|m| m.id.as_str())
            .collect()
    }

    /// Raw parts, suitable for feeding back into [`FiniteCategory::new`].
    pub fn parts(&self) -> (Vec<String>, Vec<Morphism>, Vec<ComposeEntry>) {
        let table = self
            .compose
            .iter()
            .map(|((g, f), h)| (g.clone(), f.clone(), h.clone()))
            .collect();
        (self.objects.clone(), self.morphisms.clone(), table)
    }
}

impl fmt::Display for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "objects: {}; morphisms:", self.objects.join(", "))?;
        for m in &self.morphisms {
            write!(f, " {}: {} → {}", m.id, m.src, m.tgt)?;
        }
        Ok(())
    }
}

/// The builtin index categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseName {
    /// One object, one morphism.
    Pt,
    /// Two objects `a`, `b` and one arrow `f: a → b`.
    Arr,
    /// Three objects with legs `l: s → a`, `r: s → b`.
    Span,
    /// The poset `0 → 1 → 2`.
    Chain3,
}

impl BaseName {
    pub const ALL: [BaseName; 4] = [
        BaseName::Pt,
        BaseName::Arr,
        BaseName::Span,
        BaseName::Chain3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BaseName::Pt => "pt",
            BaseName::Arr => "arr",
            BaseName::Span => "span",
            BaseName::Chain3 => "chain3",
        }
    }
}

impl std::str::FromStr for BaseName {
    type Err = Error;

    fn from_str(s: &str) -> Result<BaseName> {
        match s {
            "pt" => Ok(BaseName::Pt),
            "arr" => Ok(BaseName::Arr),
            "span" => Ok(BaseName::Span),
            "chain3" => Ok(BaseName::Chain3),
            other => Err(Error::UnknownBase(other.into())),
        }
    }
}

impl fmt::Display for BaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Returns the named builtin category with deterministic ids.
pub fn builtin_base(name: BaseName) -> FiniteCategory {
    let cat = match name {
        BaseName::Pt => poset(&["o"], &[]),
        BaseName::Arr => poset(&["a", "b"], &[("f", "a", "b")]),
        BaseName::Span => poset(&["s", "a", "b"], &[("l", "s", "a"), ("r", "s", "b")]),
        BaseName::Chain3 => poset(
            &["0", "1", "2"],
            &[("m01", "0", "1"), ("m12", "1", "2"), ("m02", "0", "2")],
        ),
    };
    cat.expect("builtin bases validate")
}

/// Builds a poset-like category (at most one morphism between any two
/// objects) from identities plus the given non-identity arrows; the
/// composition table is forced and derived automatically.
fn poset(objects: &[&str], arrows: &[(&str, &str, &str)]) -> Result<FiniteCategory> {
    let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
    let mut morphisms: Vec<Morphism> = objects
        .iter()
        .map(|o| Morphism::new(format!("id_{o}"), o.clone(), o.clone()))
        .collect();
    for (id, src, tgt) in arrows {
        morphisms.push(Morphism::new(*id, *src, *tgt));
    }
    let mut table = Vec::new();
    for g in &morphisms {
        for f in &morphisms {
            if f.tgt != g.src {
                continue;
            }
            let composite = morphisms
                .iter()
                .find(|h| h.src == f.src && h.tgt == g.tgt)
                .ok_or_else(|| {
                    Error::MalformedCategory(format!("no arrow {} → {}", f.src, g.tgt))
                })?;
            table.push((g.id.clone(), f.id.clone(), composite.id.clone()));
        }
    }
    FiniteCategory::new(objects, morphisms, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shapes() {
        let pt = builtin_base(BaseName::Pt);
        assert_eq!(pt.objects().len(), 1);
        assert_eq!(pt.morphisms().len(), 1);

        let arr = builtin_base(BaseName::Arr);
        assert_eq!(arr.objects().len(), 2);
        assert_eq!(arr.morphisms().len(), 3);

        let chain3 = builtin_base(BaseName::Chain3);
        assert_eq!(chain3.objects().len(), 3);
        assert_eq!(chain3.morphisms().len(), 6);
    }

    #[test]
    fn compose_examples() {
        let pt = builtin_base(BaseName::Pt);
        assert_eq!(pt.compose("id_o", "id_o").unwrap(), "id_o");

        let arr = builtin_base(BaseName::Arr);
        assert_eq!(arr.compose("id_b", "f").unwrap(), "f");
        assert_eq!(arr.compose("f", "id_a").unwrap(), "f");
        assert_eq!(
            arr.compose("f", "id_b"),
            Err(Error::NotComposable {
                g: "f".into(),
                f: "id_b".into()
            })
        );

        let chain3 = builtin_base(BaseName::Chain3);
        assert_eq!(chain3.compose("m12", "m01").unwrap(), "m02");
    }

    #[test]
    fn hom_into_declaration_order() {
        let arr = builtin_base(BaseName::Arr);
        assert_eq!(arr.hom_into("b").unwrap(), vec!["id_b", "f"]);
        assert_eq!(arr.hom_into("a").unwrap(), vec!["id_a"]);
        assert!(matches!(arr.hom_into("z"), Err(Error::UnknownObject(_))));

        let span = builtin_base(BaseName::Span);
        assert_eq!(span.hom_into("a").unwrap(), vec!["id_a", "l"]);
    }

    #[test]
    fn hom_into_counts_match_declarations() {
        for name in BaseName::ALL {
            let cat = builtin_base(name);
            for o in cat.objects() {
                let declared = cat.morphisms().iter().filter(|m| m.tgt == *o).count();
                assert_eq!(cat.hom_into(o).unwrap().len(), declared);
            }
        }
    }

    #[test]
    fn builtins_round_trip_through_validation() {
        for name in BaseName::ALL {
            let cat = builtin_base(name);
            let (objects, morphisms, table) = cat.parts();
            let rebuilt = FiniteCategory::new(objects, morphisms, table).unwrap();
            assert_eq!(rebuilt, cat);
        }
    }

    #[test]
    fn rejects_missing_identity() {
        // Two objects but no endomorphism on `b`.
        let err = FiniteCategory::new(
            vec!["a".into(), "b".into()],
            vec![
                Morphism::new("id_a", "a", "a"),
                Morphism::new("f", "a", "b"),
            ],
            vec![
                ("id_a".into(), "id_a".into(), "id_a".into()),
                ("f".into(), "id_a".into(), "f".into()),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedCategory(_)));
    }

    #[test]
    fn rejects_incomplete_table() {
        let err = FiniteCategory::new(
            vec!["a".into()],
            vec![Morphism::new("id_a", "a", "a")],
            vec![],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedCategory(_)));
    }

    #[test]
    fn rejects_ill_typed_composite() {
        let err = FiniteCategory::new(
            vec!["a".into(), "b".into()],
            vec![
                Morphism::new("id_a", "a", "a"),
                Morphism::new("id_b", "b", "b"),
                Morphism::new("f", "a", "b"),
            ],
            vec![
                ("id_a".into(), "id_a".into(), "id_a".into()),
                ("id_b".into(), "id_b".into(), "id_b".into()),
                ("f".into(), "id_a".into(), "f".into()),
                // g ∘ f must land a → b; id_a does not.
                ("id_b".into(), "f".into(), "id_a".into()),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedCategory(_)));
    }

    #[test]
    fn accepts_two_element_group_as_one_object_category() {
        // e∘e = id is Z/2; every law holds.
        let cat = FiniteCategory::new(
            vec!["a".into()],
            vec![
                Morphism::new("id_a", "a", "a"),
                Morphism::new("e", "a", "a"),
            ],
            vec![
                ("id_a".into(), "id_a".into(), "id_a".into()),
                ("id_a".into(), "e".into(), "e".into()),
                ("e".into(), "id_a".into(), "e".into()),
                ("e".into(), "e".into(), "id_a".into()),
            ],
        )
        .unwrap();
        assert_eq!(cat.identity_of("a").unwrap(), "id_a");
    }

    #[test]
    fn rejects_non_associative_table() {
        // id_a is a genuine identity, but (e∘e)∘e = u∘e = id_a while
        // e∘(e∘e) = e∘u = u.
        let err = FiniteCategory::new(
            vec!["a".into()],
            vec![
                Morphism::new("id_a", "a", "a"),
                Morphism::new("e", "a", "a"),
                Morphism::new("u", "a", "a"),
            ],
            vec![
                ("id_a".into(), "id_a".into(), "id_a".into()),
                ("id_a".into(), "e".into(), "e".into()),
                ("id_a".into(), "u".into(), "u".into()),
                ("e".into(), "id_a".into(), "e".into()),
                ("u".into(), "id_a".into(), "u".into()),
                ("e".into(), "e".into(), "u".into()),
                ("e".into(), "u".into(), "u".into()),
                ("u".into(), "e".into(), "id_a".into()),
                ("u".into(), "u".into(), "u".into()),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedCategory(_)));
    }

    #[test]
    fn unknown_base_name() {
        assert!(matches!(
            "cube".parse::<BaseName>(),
            Err(Error::UnknownBase(_))
        ));
    }
}
