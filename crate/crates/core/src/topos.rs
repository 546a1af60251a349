//! The subobject classifier and the Heyting algebra of subobjects.
//!
//! In a presheaf topos the classifier Ω has, at each object `j`, the set
//! of sieves on `j` (sets of morphisms into `j` closed under
//! precomposition); restriction along `f: a → b` sends a sieve `S` on `b`
//! to `{g | f∘g ∈ S}`. Subobjects are kept in canonical form — literal
//! subsets of the ambient carriers — so subobject equality is structural
//! comparison, which is exactly what the type quotient downstream needs
//! to be decidable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::fincat::FiniteCategory;
use crate::presheaf::{terminal, NatTrans, Presheaf};
use crate::{Error, Result};

/// Refuse sieve/subobject enumerations beyond this many raw subsets.
const MAX_SUBSET_SPACE: u128 = 1 << 22;

/// A sieve on `at`: a set of morphisms with target `at` closed under
/// precomposition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sieve {
    pub at: String,
    pub members: BTreeSet<String>,
}

impl Sieve {
    /// Canonical carrier label: members sorted and braced, with the same
    /// escaping as pair labels so arbitrary ids stay unambiguous.
    pub fn label(&self) -> String {
        let mut out = String::from("{");
        let mut first = true;
        for m in &self.members {
            if !first {
                out.push(',');
            }
            first = false;
            for c in m.chars() {
                if matches!(c, '(' | ')' | ',' | '\\' | '{' | '}') {
                    out.push('\\');
                }
                out.push(c);
            }
        }
        out.push('}');
        out
    }
}

/// All sieves on `obj`, ordered by size then lexicographically by member
/// list. Brute force over subsets of `hom_into(obj)` with a closure check.
pub fn sieves_on(cat: &FiniteCategory, obj: &str) -> Result<Vec<Sieve>> {
    let hom = cat.hom_into(obj)?;
    if hom.len() >= 22 {
        return Err(Error::SizeLimitExceeded(format!(
            "too many morphisms into `{obj}` to enumerate sieves"
        )));
    }
    let mut sieves = Vec::new();
    'subsets: for mask in 0u32..(1 << hom.len()) {
        let members: BTreeSet<String> = hom
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, m)| m.to_string())
            .collect();
        for g in &members {
            let g_src = &cat.morphism(g).expect("declared morphism").src;
            for h in cat.hom_into(g_src)? {
                if !members.contains(cat.compose(g, h)?) {
                    continue 'subsets;
                }
            }
        }
        sieves.push(Sieve {
            at: obj.to_string(),
            members,
        });
    }
    sieves.sort_by(|a, b| {
        a.members
            .len()
            .cmp(&b.members.len())
            .then_with(|| a.members.cmp(&b.members))
    });
    Ok(sieves)
}

/// The maximal sieve on `obj` (all morphisms into it).
pub fn maximal_sieve(cat: &FiniteCategory, obj: &str) -> Result<Sieve> {
    Ok(Sieve {
        at: obj.to_string(),
        members: cat.hom_into(obj)?.into_iter().map(String::from).collect(),
    })
}

/// The subobject classifier Ω as a presheaf of sieve labels.
pub fn omega(cat: &Arc<FiniteCategory>) -> Presheaf {
    let mut carrier = BTreeMap::new();
    let mut sieves: BTreeMap<String, Vec<Sieve>> = BTreeMap::new();
    for o in cat.objects() {
        let ss = sieves_on(cat, o).expect("builtin-scale sieve enumeration");
        carrier.insert(o.clone(), ss.iter().map(Sieve::label).collect());
        sieves.insert(o.clone(), ss);
    }
    let mut restrict = BTreeMap::new();
    for m in cat.morphisms() {
        // S on tgt restricts to {g: x → src | m∘g ∈ S}.
        let mut map = BTreeMap::new();
        for s in &sieves[&m.tgt] {
            let members: BTreeSet<String> = cat
                .hom_into(&m.src)
                .expect("declared object")
                .into_iter()
                .filter(|g| {
                    s.members
                        .contains(cat.compose(&m.id, g).expect("composable"))
                })
                .map(String::from)
                .collect();
            let restricted = Sieve {
                at: m.src.clone(),
                members,
            };
            map.insert(s.label(), restricted.label());
        }
        restrict.insert(m.id.clone(), map);
    }
    Presheaf::new(cat.clone(), carrier, restrict).expect("Ω is functorial")
}

/// The truth point `1 → Ω`, picking the maximal sieve at each object.
pub fn truth(cat: &Arc<FiniteCategory>) -> NatTrans {
    let omega_ps = omega(cat);
    let one = terminal(cat);
    let components = cat
        .objects()
        .iter()
        .map(|o| {
            let max = maximal_sieve(cat, o).expect("declared object").label();
            (o.clone(), BTreeMap::from([("*".to_string(), max)]))
        })
        .collect();
    NatTrans::new(one, omega_ps, components).expect("truth is natural")
}

/// A subobject of a fixed ambient presheaf, in canonical subset form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subpresheaf {
    of: Presheaf,
    subsets: BTreeMap<String, BTreeSet<String>>,
}

impl Subpresheaf {
    /// Validates membership and closure under restriction.
    pub fn new(of: Presheaf, subsets: BTreeMap<String, BTreeSet<String>>) -> Result<Self> {
        let bad = |reason: String| Error::MalformedPresheaf(reason);
        for o in of.base().objects() {
            let sub = subsets
                .get(o)
                .ok_or_else(|| bad(format!("missing subset at `{o}`")))?;
            for x in sub {
                if !of.contains(o, x) {
                    return Err(bad(format!(
                        "`{x}` is not an element of the ambient at `{o}`"
                    )));
                }
            }
        }
        for o in subsets.keys() {
            if !of.base().has_object(o) {
                return Err(bad(format!("subset given at undeclared object `{o}`")));
            }
        }
        for m in of.base().morphisms() {
            for x in &subsets[&m.tgt] {
                let restricted = of.restrict_elem(&m.id, x);
                if !subsets[&m.src].contains(restricted) {
                    return Err(bad(format!(
                        "subset not closed under restriction: `{x}`·{} = `{restricted}` escapes",
                        m.id
                    )));
                }
            }
        }
        Ok(Subpresheaf { of, subsets })
    }

    /// The full subobject of `ambient`.
    pub fn full(ambient: &Presheaf) -> Subpresheaf {
        let subsets = ambient
            .base()
            .objects()
            .iter()
            .map(|o| (o.clone(), ambient.elements_at(o).iter().cloned().collect()))
            .collect();
        Subpresheaf {
            of: ambient.clone(),
            subsets,
        }
    }

    /// The empty subobject of `ambient`.
    pub fn empty(ambient: &Presheaf) -> Subpresheaf {
        let subsets = ambient
            .base()
            .objects()
            .iter()
            .map(|o| (o.clone(), BTreeSet::new()))
            .collect();
        Subpresheaf {
            of: ambient.clone(),
            subsets,
        }
    }

    pub fn ambient(&self) -> &Presheaf {
        &self.of
    }

    pub fn subset_at(&self, obj: &str) -> &BTreeSet<String> {
        self.subsets
            .get(obj)
            .unwrap_or_else(|| panic!("subobject has no subset at `{obj}`"))
    }

    pub fn contains(&self, obj: &str, label: &str) -> bool {
        self.subsets
            .get(obj)
            .map(|s| s.contains(label))
            .unwrap_or(false)
    }

    pub fn total_size(&self) -> usize {
        self.subsets.values().map(BTreeSet::len).sum()
    }

    /// Realizes the subobject as a presheaf plus its inclusion into the
    /// ambient. Carrier order follows the ambient's.
    pub fn to_presheaf(&self) -> (Presheaf, NatTrans) {
        let base = self.of.base().clone();
        let carrier: BTreeMap<String, Vec<String>> = base
            .objects()
            .iter()
            .map(|o| {
                let elems: Vec<String> = self
                    .of
                    .elements_at(o)
                    .iter()
                    .filter(|e| self.subsets[o].contains(*e))
                    .cloned()
                    .collect();
                (o.clone(), elems)
            })
            .collect();
        let restrict = base
            .morphisms()
            .iter()
            .map(|m| {
                let map: BTreeMap<String, String> = carrier[&m.tgt]
                    .iter()
                    .map(|x| (x.clone(), self.of.restrict_elem(&m.id, x).to_string()))
                    .collect();
                (m.id.clone(), map)
            })
            .collect();
        let ps = Presheaf::new(base.clone(), carrier, restrict)
            .expect("restriction-closed subsets form a presheaf");
        let components = base
            .objects()
            .iter()
            .map(|o| {
                let comp: BTreeMap<String, String> = ps
                    .elements_at(o)
                    .iter()
                    .map(|e| (e.clone(), e.clone()))
                    .collect();
                (o.clone(), comp)
            })
            .collect();
        let inclusion =
            NatTrans::new(ps.clone(), self.of.clone(), components).expect("inclusion is natural");
        (ps, inclusion)
    }
}

impl fmt::Display for Subpresheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for o in self.of.base().objects() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let members: Vec<&str> = self
                .of
                .elements_at(o)
                .iter()
                .filter(|e| self.subsets[o].contains(*e))
                .map(String::as_str)
                .collect();
            write!(f, "{o}:{{{}}}", members.join(","))?;
        }
        Ok(())
    }
}

/// The classifying map `Γ → Ω` of a subobject: `x` at `j` goes to the
/// sieve of morphisms pulling `x` into the subobject.
pub fn classify(p: &Subpresheaf) -> NatTrans {
    let gamma = p.ambient();
    let cat = gamma.base();
    let omega_ps = omega(cat);
    let components = cat
        .objects()
        .iter()
        .map(|j| {
            let comp: BTreeMap<String, String> = gamma
                .elements_at(j)
                .iter()
                .map(|x| {
                    let members: BTreeSet<String> = cat
                        .hom_into(j)
                        .expect("declared object")
                        .into_iter()
                        .filter(|f| {
                            let src = &cat.morphism(f).expect("declared").src;
                            p.contains(src, gamma.restrict_elem(f, x))
                        })
                        .map(String::from)
                        .collect();
                    (
                        x.clone(),
                        Sieve {
                            at: j.clone(),
                            members,
                        }
                        .label(),
                    )
                })
                .collect();
            (j.clone(), comp)
        })
        .collect();
    NatTrans::new(gamma.clone(), omega_ps, components).expect("classifying maps are natural")
}

/// Recovers the canonical subobject from a map into Ω: the elements sent
/// to the maximal sieve. Inverse to [`classify`].
pub fn subobject_of_char(chi: &NatTrans) -> Result<Subpresheaf> {
    let cat = chi.source().base().clone();
    if *chi.target() != omega(&cat) {
        return Err(Error::TargetNotOmega);
    }
    let subsets = cat
        .objects()
        .iter()
        .map(|j| {
            let max = maximal_sieve(&cat, j).expect("declared object").label();
            let sub: BTreeSet<String> = chi
                .source()
                .elements_at(j)
                .iter()
                .filter(|x| chi.apply(j, x) == max)
                .cloned()
                .collect();
            (j.clone(), sub)
        })
        .collect();
    Subpresheaf::new(chi.source().clone(), subsets)
}

fn check_same_ambient(p: &Subpresheaf, q: &Subpresheaf) -> Result<()> {
    if p.ambient() != q.ambient() {
        return Err(Error::AmbientMismatch);
    }
    Ok(())
}

/// Pointwise inclusion of canonical subobjects.
pub fn sub_leq(p: &Subpresheaf, q: &Subpresheaf) -> Result<bool> {
    check_same_ambient(p, q)?;
    Ok(p.subsets
        .iter()
        .all(|(o, sub)| sub.iter().all(|x| q.contains(o, x))))
}

/// Structural equality of canonical subobjects.
pub fn sub_eq(p: &Subpresheaf, q: &Subpresheaf) -> Result<bool> {
    check_same_ambient(p, q)?;
    Ok(p == q)
}

/// Pointwise intersection.
pub fn meet(p: &Subpresheaf, q: &Subpresheaf) -> Result<Subpresheaf> {
    check_same_ambient(p, q)?;
    let subsets = p
        .subsets
        .iter()
        .map(|(o, sub)| {
            (
                o.clone(),
                sub.intersection(&q.subsets[o]).cloned().collect(),
            )
        })
        .collect();
    Subpresheaf::new(p.of.clone(), subsets)
}

/// Pointwise union.
pub fn join(p: &Subpresheaf, q: &Subpresheaf) -> Result<Subpresheaf> {
    check_same_ambient(p, q)?;
    let subsets = p
        .subsets
        .iter()
        .map(|(o, sub)| (o.clone(), sub.union(&q.subsets[o]).cloned().collect()))
        .collect();
    Subpresheaf::new(p.of.clone(), subsets)
}

/// Heyting implication: `x ∈ (P ⇒ Q)(j)` iff every restriction of `x`
/// that lands in `P` also lands in `Q`.
pub fn implies(p: &Subpresheaf, q: &Subpresheaf) -> Result<Subpresheaf> {
    check_same_ambient(p, q)?;
    let gamma = p.ambient();
    let cat = gamma.base();
    let subsets = cat
        .objects()
        .iter()
        .map(|j| {
            let sub: BTreeSet<String> = gamma
                .elements_at(j)
                .iter()
                .filter(|x| {
                    cat.hom_into(j)
                        .expect("declared object")
                        .into_iter()
                        .all(|f| {
                            let src = &cat.morphism(f).expect("declared").src;
                            let y = gamma.restrict_elem(f, x);
                            !p.contains(src, y) || q.contains(src, y)
                        })
                })
                .cloned()
                .collect();
            (j.clone(), sub)
        })
        .collect();
    Subpresheaf::new(gamma.clone(), subsets)
}

/// Every subobject of `gamma`, enumerated by brute force over
/// restriction-closed subset families, in a deterministic order.
pub fn all_subobjects(gamma: &Presheaf) -> Result<Vec<Subpresheaf>> {
    let cat = gamma.base();
    let mut space: u128 = 1;
    for o in cat.objects() {
        space = space.saturating_mul(1u128 << gamma.elements_at(o).len().min(64));
        if space > MAX_SUBSET_SPACE {
            return Err(Error::SizeLimitExceeded(
                "too many subset families to enumerate subobjects".into(),
            ));
        }
    }
    let objects = cat.objects().to_vec();
    let mut out = Vec::new();
    let mut masks = vec![0u32; objects.len()];
    loop {
        let subsets: BTreeMap<String, BTreeSet<String>> = objects
            .iter()
            .zip(&masks)
            .map(|(o, mask)| {
                let sub: BTreeSet<String> = gamma
                    .elements_at(o)
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, e)| e.clone())
                    .collect();
                (o.clone(), sub)
            })
            .collect();
        if let Ok(sub) = Subpresheaf::new(gamma.clone(), subsets) {
            out.push(sub);
        }
        // Odometer over per-object masks, last object fastest.
        let mut i = objects.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            masks[i] += 1;
            if masks[i] < (1u32 << gamma.elements_at(&objects[i]).len()) {
                break;
            }
            masks[i] = 0;
            if i == 0 {
                return Ok(out);
            }
        }
    }
}
