//! Finite presheaves and natural transformations.
//!
//! A [`Presheaf`] on a [`FiniteCategory`] assigns to every object a finite
//! ordered set of element labels and to every morphism `f: a → b` a
//! restriction function `carrier(b) → carrier(a)`. These are the objects
//! of the ambient topos; natural transformations are its morphisms
//! (contexts and substitutions live here).
//!
//! Functoriality and naturality are verified exhaustively at construction,
//! so any value you can get your hands on satisfies them. Equality is
//! label-based structural equality throughout: the strict laws downstream
//! (`A[σ][δ] = A[σ∘δ]` and friends) are literal data equality, so every
//! construction here is careful to be deterministic. Pair carriers
//! (products, pullbacks) are ordered lexicographically by the component
//! positions in the declared carriers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::fincat::FiniteCategory;
use crate::topos::Subpresheaf;
use crate::{Error, Result};

/// Hard cap on exhaustive map searches; anything beyond this is refused
/// with [`Error::SizeLimitExceeded`] rather than ground through.
const MAX_SEARCH_SPACE: u128 = 2_000_000;

/// A finite contravariant set-valued functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    base: Arc<FiniteCategory>,
    carrier: BTreeMap<String, Vec<String>>,
    restrict: BTreeMap<String, BTreeMap<String, String>>,
}

impl Presheaf {
    /// Validates carriers and restriction maps and checks functoriality
    /// exhaustively.
    ///
    /// `carrier` must cover exactly the base's objects; `restrict` must
    /// give, for every morphism `f: a → b`, a total function
    /// `carrier(b) → carrier(a)`. Identity morphisms must restrict to the
    /// identity and composites must restrict contravariantly.
    pub fn new(
        base: Arc<FiniteCategory>,
        carrier: BTreeMap<String, Vec<String>>,
        restrict: BTreeMap<String, BTreeMap<String, String>>,
    ) -> Result<Self> {
        let bad = |reason: String| Error::MalformedPresheaf(reason);
        for o in base.objects() {
            let elems = carrier
                .get(o)
                .ok_or_else(|| bad(format!("missing carrier for object `{o}`")))?;
            let mut seen = std::collections::BTreeSet::new();
            for e in elems {
                if !seen.insert(e) {
                    return Err(bad(format!("duplicate element label `{e}` at `{o}`")));
                }
            }
        }
        for o in carrier.keys() {
            if !base.has_object(o) {
                return Err(bad(format!("carrier given for undeclared object `{o}`")));
            }
        }
        for m in base.morphisms() {
            let map = restrict
                .get(&m.id)
                .ok_or_else(|| bad(format!("missing restriction along `{}`", m.id)))?;
            let dom = &carrier[&m.tgt];
            let cod = &carrier[&m.src];
            if map.len() != dom.len() {
                return Err(bad(format!("restriction along `{}` is not total", m.id)));
            }
            for (x, y) in map {
                if !dom.contains(x) {
                    return Err(bad(format!(
                        "restriction along `{}` defined on `{x}` ∉ carrier({})",
                        m.id, m.tgt
                    )));
                }
                if !cod.contains(y) {
                    return Err(bad(format!(
                        "restriction along `{}` sends `{x}` to `{y}` ∉ carrier({})",
                        m.id, m.src
                    )));
                }
            }
        }
        for mor in restrict.keys() {
            if base.morphism(mor).is_none() {
                return Err(bad(format!(
                    "restriction given for undeclared morphism `{mor}`"
                )));
            }
        }

        // restrict(id) = id.
        for o in base.objects() {
            let id = base.identity_of(o)?;
            for x in &carrier[o] {
                if &restrict[id][x] != x {
                    return Err(bad(format!(
                        "restriction along identity `{id}` moves `{x}`"
                    )));
                }
            }
        }
        // restrict(g∘f) = restrict(f) ∘ restrict(g) for f: a→b, g: b→c.
        for f in base.morphisms() {
            for g in base.morphisms().iter().filter(|g| g.src == f.tgt) {
                let h = base.compose(&g.id, &f.id)?;
                for x in &carrier[&g.tgt] {
                    let via_h = &restrict[h][x];
                    let via_fg = &restrict[&f.id][&restrict[&g.id][x]];
                    if via_h != via_fg {
                        return Err(bad(format!(
                            "restriction is not functorial on `{} ∘ {}` at `{x}`",
                            g.id, f.id
                        )));
                    }
                }
            }
        }

        Ok(Presheaf {
            base,
            carrier,
            restrict,
        })
    }

    /// Constant presheaf: the same carrier at every object, identity
    /// restrictions.
    pub fn constant(base: Arc<FiniteCategory>, labels: &[&str]) -> Presheaf {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let carrier = base
            .objects()
            .iter()
            .map(|o| (o.clone(), labels.clone()))
            .collect::<BTreeMap<_, _>>();
        let restrict = base
            .morphisms()
            .iter()
            .map(|m| {
                (
                    m.id.clone(),
                    labels.iter().map(|l| (l.clone(), l.clone())).collect(),
                )
            })
            .collect();
        Presheaf::new(base, carrier, restrict).expect("constant presheaf is functorial")
    }

    pub fn base(&self) -> &Arc<FiniteCategory> {
        &self.base
    }

    pub fn same_base(&self, other: &Presheaf) -> bool {
        self.base == other.base
    }

    /// Elements at `obj`, in carrier order.
    pub fn elements_at(&self, obj: &str) -> &[String] {
        self.carrier
            .get(obj)
            .map(Vec::as_slice)
            .unwrap_or_else(|| panic!("presheaf has no carrier at `{obj}`"))
    }

    pub fn contains(&self, obj: &str, label: &str) -> bool {
        self.carrier
            .get(obj)
            .map(|c| c.iter().any(|l| l == label))
            .unwrap_or(false)
    }

    /// Applies the restriction along `mor` to a label in carrier(tgt mor).
    pub fn restrict_elem(&self, mor: &str, label: &str) -> &str {
        self.restrict
            .get(mor)
            .and_then(|m| m.get(label))
            .unwrap_or_else(|| panic!("no restriction of `{label}` along `{mor}`"))
    }

    /// Total number of elements across all objects.
    pub fn total_size(&self) -> usize {
        self.carrier.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.total_size() == 0
    }
}

impl fmt::Display for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for o in self.base.objects() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{o}:{{{}}}", self.carrier[o].join(","))?;
        }
        Ok(())
    }
}

/// An element `x ∈ X(at)`, equivalently a map `y(at) → X`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Element {
    pub at: String,
    pub value: String,
}

/// A natural transformation between presheaves on the same base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    source: Presheaf,
    target: Presheaf,
    components: BTreeMap<String, BTreeMap<String, String>>,
}

impl NatTrans {
    /// Validates totality of the components and checks naturality on every
    /// morphism of the base.
    pub fn new(
        source: Presheaf,
        target: Presheaf,
        components: BTreeMap<String, BTreeMap<String, String>>,
    ) -> Result<Self> {
        if !source.same_base(&target) {
            return Err(Error::BaseMismatch);
        }
        let base = source.base.clone();
        for o in base.objects() {
            let comp = components
                .get(o)
                .ok_or_else(|| Error::MalformedPresheaf(format!("missing component at `{o}`")))?;
            let dom = source.elements_at(o);
            if comp.len() != dom.len() {
                return Err(Error::MalformedPresheaf(format!(
                    "component at `{o}` is not total"
                )));
            }
            for (x, y) in comp {
                if !dom.contains(x) {
                    return Err(Error::MalformedPresheaf(format!(
                        "component at `{o}` defined on foreign element `{x}`"
                    )));
                }
                if !target.contains(o, y) {
                    return Err(Error::MalformedPresheaf(format!(
                        "component at `{o}` sends `{x}` outside the target"
                    )));
                }
            }
        }
        for o in components.keys() {
            if !base.has_object(o) {
                return Err(Error::MalformedPresheaf(format!(
                    "component given at undeclared object `{o}`"
                )));
            }
        }
        // Naturality: target.restrict(f) ∘ component(b) = component(a) ∘ source.restrict(f).
        for m in base.morphisms() {
            for x in source.elements_at(&m.tgt) {
                let down_then_across = &components[&m.src][source.restrict_elem(&m.id, x)];
                let across_then_down = target.restrict_elem(&m.id, &components[&m.tgt][x]);
                if down_then_across != across_then_down {
                    return Err(Error::NotNatural {
                        witness: m.id.clone(),
                    });
                }
            }
        }
        Ok(NatTrans {
            source,
            target,
            components,
        })
    }

    /// Identity transformation on `x`.
    pub fn identity(x: &Presheaf) -> NatTrans {
        let components = x
            .base
            .objects()
            .iter()
            .map(|o| {
                (
                    o.clone(),
                    x.elements_at(o)
                        .iter()
                        .map(|e| (e.clone(), e.clone()))
                        .collect(),
                )
            })
            .collect();
        NatTrans::new(x.clone(), x.clone(), components).expect("identity is natural")
    }

    pub fn source(&self) -> &Presheaf {
        &self.source
    }

    pub fn target(&self) -> &Presheaf {
        &self.target
    }

    /// Applies the component at `obj` to an element label.
    pub fn apply(&self, obj: &str, label: &str) -> &str {
        self.components
            .get(obj)
            .and_then(|c| c.get(label))
            .unwrap_or_else(|| panic!("no component value for `{label}` at `{obj}`"))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .components
                .values()
                .all(|c| c.iter().all(|(x, y)| x == y))
    }
}

impl fmt::Display for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for o in self.source.base().objects() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let maps: Vec<String> = self.components[o]
                .iter()
                .map(|(x, y)| format!("{x}↦{y}"))
                .collect();
            write!(f, "{o}:[{}]", maps.join(","))?;
        }
        Ok(())
    }
}

/// Composes `g ∘ f`; the middle presheaves must be structurally equal.
pub fn compose_nat(g: &NatTrans, f: &NatTrans) -> Result<NatTrans> {
    if f.target != g.source {
        return Err(Error::EndpointMismatch(
            "compose_nat: target of the first map differs from source of the second".into(),
        ));
    }
    let components = f
        .source
        .base()
        .objects()
        .iter()
        .map(|o| {
            let comp: BTreeMap<String, String> = f.components[o]
                .iter()
                .map(|(x, y)| (x.clone(), g.components[o][y].clone()))
                .collect();
            (o.clone(), comp)
        })
        .collect();
    NatTrans::new(f.source.clone(), g.target.clone(), components)
}

/// The representable presheaf `y(obj)`: carrier(o) = hom(o, obj), with
/// restriction by precomposition.
pub fn yoneda(base: &Arc<FiniteCategory>, obj: &str) -> Result<Presheaf> {
    if !base.has_object(obj) {
        return Err(Error::UnknownObject(obj.into()));
    }
    let carrier: BTreeMap<String, Vec<String>> = base
        .objects()
        .iter()
        .map(|o| {
            (
                o.clone(),
                base.hom(o, obj).into_iter().map(String::from).collect(),
            )
        })
        .collect();
    let mut restrict = BTreeMap::new();
    for m in base.morphisms() {
        // g: tgt(m) → obj restricts to g∘m: src(m) → obj.
        let mut map = BTreeMap::new();
        for g in &carrier[&m.tgt] {
            map.insert(g.clone(), base.compose(g, &m.id)?.to_string());
        }
        restrict.insert(m.id.clone(), map);
    }
    Presheaf::new(base.clone(), carrier, restrict)
}

/// Terminal presheaf: singleton `*` everywhere.
pub fn terminal(base: &Arc<FiniteCategory>) -> Presheaf {
    Presheaf::constant(base.clone(), &["*"])
}

/// The unique map `x → terminal`.
pub fn unique_to_terminal(x: &Presheaf) -> NatTrans {
    let one = terminal(x.base());
    let components = x
        .base()
        .objects()
        .iter()
        .map(|o| {
            (
                o.clone(),
                x.elements_at(o)
                    .iter()
                    .map(|e| (e.clone(), "*".to_string()))
                    .collect(),
            )
        })
        .collect();
    NatTrans::new(x.clone(), one, components).expect("terminal map is natural")
}

/// Canonical injective label for a pair. Components are escaped so nested
/// pairs stay unambiguous.
pub fn pair_label(x: &str, y: &str) -> String {
    fn esc(s: &str, out: &mut String) {
        for c in s.chars() {
            if matches!(c, '(' | ')' | ',' | '\\') {
                out.push('\\');
            }
            out.push(c);
        }
    }
    let mut out = String::with_capacity(x.len() + y.len() + 3);
    out.push('(');
    esc(x, &mut out);
    out.push(',');
    esc(y, &mut out);
    out.push(')');
    out
}

/// Binary product with projection maps. Pairs at each object are ordered
/// lexicographically by component positions.
pub fn product(x: &Presheaf, y: &Presheaf) -> Result<(Presheaf, NatTrans, NatTrans)> {
    if !x.same_base(y) {
        return Err(Error::BaseMismatch);
    }
    span_limit(x, y, |_, _, _| true)
}

/// Pullback of `f: X → Z` and `g: Y → Z`: the subpresheaf of `X × Y` of
/// pairs agreeing in `Z`, with the two projections. The carrier order and
/// labels are canonical, which is what makes downstream substitution laws
/// literal data equality.
pub fn pullback(f: &NatTrans, g: &NatTrans) -> Result<(Presheaf, NatTrans, NatTrans)> {
    if !f.source().same_base(g.source()) {
        return Err(Error::BaseMismatch);
    }
    if f.target() != g.target() {
        return Err(Error::EndpointMismatch(
            "pullback legs target different presheaves".into(),
        ));
    }
    span_limit(f.source(), g.source(), |o, a, b| {
        f.apply(o, a) == g.apply(o, b)
    })
}

/// Shared carrier construction for products and pullbacks: keeps the
/// pairs `(a, b)` at each object that satisfy `keep`.
fn span_limit(
    x: &Presheaf,
    y: &Presheaf,
    keep: impl Fn(&str, &str, &str) -> bool,
) -> Result<(Presheaf, NatTrans, NatTrans)> {
    let base = x.base().clone();
    let mut carrier = BTreeMap::new();
    let mut fst = BTreeMap::new();
    let mut snd = BTreeMap::new();
    for o in base.objects() {
        let mut elems = Vec::new();
        let mut fst_o = BTreeMap::new();
        let mut snd_o = BTreeMap::new();
        for a in x.elements_at(o) {
            for b in y.elements_at(o) {
                if keep(o, a, b) {
                    let label = pair_label(a, b);
                    fst_o.insert(label.clone(), a.clone());
                    snd_o.insert(label.clone(), b.clone());
                    elems.push(label);
                }
            }
        }
        carrier.insert(o.clone(), elems);
        fst.insert(o.clone(), fst_o);
        snd.insert(o.clone(), snd_o);
    }
    let mut restrict = BTreeMap::new();
    for m in base.morphisms() {
        let mut map = BTreeMap::new();
        for p in &carrier[&m.tgt] {
            let a = &fst[&m.tgt][p];
            let b = &snd[&m.tgt][p];
            map.insert(
                p.clone(),
                pair_label(x.restrict_elem(&m.id, a), y.restrict_elem(&m.id, b)),
            );
        }
        restrict.insert(m.id.clone(), map);
    }
    let limit = Presheaf::new(base, carrier, restrict)?;
    let p1 = NatTrans::new(limit.clone(), x.clone(), fst)?;
    let p2 = NatTrans::new(limit.clone(), y.clone(), snd)?;
    Ok((limit, p1, p2))
}

/// Pairing `⟨f, g⟩: W → X × Y` of two maps out of a common source, landing
/// in the canonical product.
pub fn pair_into_product(f: &NatTrans, g: &NatTrans) -> Result<NatTrans> {
    if f.source() != g.source() {
        return Err(Error::EndpointMismatch(
            "pairing requires a common source".into(),
        ));
    }
    let (prod, _, _) = product(f.target(), g.target())?;
    let components = f
        .source()
        .base()
        .objects()
        .iter()
        .map(|o| {
            let comp: BTreeMap<String, String> = f
                .source()
                .elements_at(o)
                .iter()
                .map(|w| (w.clone(), pair_label(f.apply(o, w), g.apply(o, w))))
                .collect();
            (o.clone(), comp)
        })
        .collect();
    NatTrans::new(f.source().clone(), prod, components)
}

/// `f × g: X₁ × X₂ → Y₁ × Y₂` acting componentwise on canonical pairs.
pub fn product_of_maps(f: &NatTrans, g: &NatTrans) -> Result<NatTrans> {
    let (dom, d1, d2) = product(f.source(), g.source())?;
    let (cod, _, _) = product(f.target(), g.target())?;
    let components = dom
        .base()
        .objects()
        .iter()
        .map(|o| {
            let comp: BTreeMap<String, String> = dom
                .elements_at(o)
                .iter()
                .map(|p| {
                    let a = d1.apply(o, p);
                    let b = d2.apply(o, p);
                    (p.clone(), pair_label(f.apply(o, a), g.apply(o, b)))
                })
                .collect();
            (o.clone(), comp)
        })
        .collect();
    NatTrans::new(dom, cod, components)
}

/// True iff every component of `f` is injective; in presheaf categories
/// this is exactly the categorical monomorphisms.
pub fn is_mono(f: &NatTrans) -> bool {
    f.source().base().objects().iter().all(|o| {
        let mut seen = std::collections::BTreeSet::new();
        f.source()
            .elements_at(o)
            .iter()
            .all(|x| seen.insert(f.apply(o, x)))
    })
}

/// Pointwise image of `f` as a canonical subobject of its target.
pub fn image(f: &NatTrans) -> Subpresheaf {
    let subsets = f
        .source()
        .base()
        .objects()
        .iter()
        .map(|o| {
            let img: std::collections::BTreeSet<String> = f
                .source()
                .elements_at(o)
                .iter()
                .map(|x| f.apply(o, x).to_string())
                .collect();
            (o.clone(), img)
        })
        .collect();
    Subpresheaf::new(f.target().clone(), subsets)
        .expect("image of a natural map is closed under restriction")
}

/// All elements of `x` in deterministic order: objects in declaration
/// order, then carrier order.
pub fn enumerate_elements(x: &Presheaf) -> Vec<Element> {
    let mut out = Vec::with_capacity(x.total_size());
    for o in x.base().objects() {
        for e in x.elements_at(o) {
            out.push(Element {
                at: o.clone(),
                value: e.clone(),
            });
        }
    }
    out
}

/// The Yoneda transform of an element `x ∈ X(j)`: the map `y(j) → X`
/// sending `g: o → j` to `x · g`.
pub fn yoneda_map(x: &Presheaf, el: &Element) -> Result<NatTrans> {
    if !x.contains(&el.at, &el.value) {
        return Err(Error::MalformedPresheaf(format!(
            "element `{}` does not live at `{}`",
            el.value, el.at
        )));
    }
    let probe = yoneda(x.base(), &el.at)?;
    let components = x
        .base()
        .objects()
        .iter()
        .map(|o| {
            let comp: BTreeMap<String, String> = probe
                .elements_at(o)
                .iter()
                .map(|g| (g.clone(), x.restrict_elem(g, &el.value).to_string()))
                .collect();
            (o.clone(), comp)
        })
        .collect();
    NatTrans::new(probe, x.clone(), components)
}

/// Exhaustively enumerates all natural transformations `x → y` by
/// backtracking with naturality propagation; deterministic order.
pub fn all_nat_trans(x: &Presheaf, y: &Presheaf) -> Result<Vec<NatTrans>> {
    if !x.same_base(y) {
        return Err(Error::BaseMismatch);
    }
    search_maps(x, y, |_, _| None)
}

/// All sections of `p: E → B`, i.e. maps `s: B → E` with `p ∘ s = id`.
pub fn sections_of(p: &NatTrans) -> Result<Vec<NatTrans>> {
    search_maps(p.target(), p.source(), |o, x| {
        Some(
            p.source()
                .elements_at(o)
                .iter()
                .filter(|e| p.apply(o, e) == x)
                .cloned()
                .collect::<Vec<_>>(),
        )
    })
}

/// Backtracking enumeration of natural maps `x → y`. `fiber` may shrink
/// the candidate set per slot (used for section search); `None` means the
/// whole carrier of `y` at that object.
fn search_maps(
    x: &Presheaf,
    y: &Presheaf,
    fiber: impl Fn(&str, &str) -> Option<Vec<String>>,
) -> Result<Vec<NatTrans>> {
    let slots: Vec<Element> = enumerate_elements(x);
    let mut candidates: Vec<Vec<String>> = Vec::with_capacity(slots.len());
    let mut space: u128 = 1;
    for s in &slots {
        let cands = match fiber(&s.at, &s.value) {
            Some(c) => c,
            None => y.elements_at(&s.at).to_vec(),
        };
        space = space.saturating_mul(cands.len().max(1) as u128);
        if space > MAX_SEARCH_SPACE {
            return Err(Error::SizeLimitExceeded(format!(
                "map search space exceeds {MAX_SEARCH_SPACE} assignments"
            )));
        }
        candidates.push(cands);
    }
    let index: BTreeMap<(String, String), usize> = slots
        .iter()
        .enumerate()
        .map(|(i, s)| ((s.at.clone(), s.value.clone()), i))
        .collect();

    // Naturality constraints between slots: for m: a → b and e ∈ X(b),
    // the choice v at slot (b, e) forces slot (a, e·m) to be v·m.
    let mut outgoing: Vec<Vec<(usize, String)>> = vec![Vec::new(); slots.len()];
    let mut incoming: Vec<Vec<(usize, String)>> = vec![Vec::new(); slots.len()];
    for m in x.base().morphisms() {
        if x.base().is_identity(&m.id) {
            continue;
        }
        for e in x.elements_at(&m.tgt) {
            let from = index[&(m.tgt.clone(), e.clone())];
            let to = index[&(m.src.clone(), x.restrict_elem(&m.id, e).to_string())];
            outgoing[from].push((to, m.id.clone()));
            incoming[to].push((from, m.id.clone()));
        }
    }

    struct Search<'a> {
        slots: &'a [Element],
        candidates: &'a [Vec<String>],
        outgoing: &'a [Vec<(usize, String)>],
        incoming: &'a [Vec<(usize, String)>],
        y: &'a Presheaf,
        assignment: Vec<Option<String>>,
        found: Vec<BTreeMap<String, BTreeMap<String, String>>>,
    }
    impl Search<'_> {
        fn consistent(&self, i: usize, cand: &str) -> bool {
            for (to, mor) in &self.outgoing[i] {
                let decided = if *to == i {
                    Some(cand)
                } else {
                    self.assignment[*to].as_deref()
                };
                if let Some(v) = decided {
                    if self.y.restrict_elem(mor, cand) != v {
                        return false;
                    }
                }
            }
            for (from, mor) in &self.incoming[i] {
                let decided = if *from == i {
                    Some(cand)
                } else {
                    self.assignment[*from].as_deref()
                };
                if let Some(v) = decided {
                    if self.y.restrict_elem(mor, v) != cand {
                        return false;
                    }
                }
            }
            true
        }

        fn go(&mut self, i: usize) {
            if i == self.slots.len() {
                let mut components: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
                for (s, v) in self.slots.iter().zip(self.assignment.iter()) {
                    components
                        .entry(s.at.clone())
                        .or_default()
                        .insert(s.value.clone(), v.clone().unwrap());
                }
                self.found.push(components);
                return;
            }
            for c in 0..self.candidates[i].len() {
                let cand = self.candidates[i][c].clone();
                if !self.consistent(i, &cand) {
                    continue;
                }
                self.assignment[i] = Some(cand);
                self.go(i + 1);
                self.assignment[i] = None;
            }
        }
    }

    let mut search = Search {
        slots: &slots,
        candidates: &candidates,
        outgoing: &outgoing,
        incoming: &incoming,
        y,
        assignment: vec![None; slots.len()],
        found: Vec::new(),
    };
    search.go(0);
    let found = search.found;

    // Components with no elements at some object still need (empty) maps.
    let empty_template: BTreeMap<String, BTreeMap<String, String>> = x
        .base()
        .objects()
        .iter()
        .map(|o| (o.clone(), BTreeMap::new()))
        .collect();
    found
        .into_iter()
        .map(|mut comps| {
            for (o, m) in &empty_template {
                comps.entry(o.clone()).or_insert_with(|| m.clone());
            }
            NatTrans::new(x.clone(), y.clone(), comps)
        })
        .collect()
}
