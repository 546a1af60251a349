//! Seeded random generation of presheaves, subobjects, types, and
//! substitutions, for the law-checking harness.
//!
//! Everything is driven by a caller-supplied RNG; with a fixed seed the
//! generated instances, and therefore every report downstream, are
//! reproducible byte for byte. Generators that need a natural map use
//! randomized backtracking and fall back to maps that always exist
//! (identities, representable probes) when the random search comes up
//! empty, so they are total.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fincat::FiniteCategory;
use crate::natmodel::{ctx_extend, LocalType, Term};
use crate::presheaf::{enumerate_elements, yoneda_map, NatTrans, Presheaf};
use crate::propquot::PropCode;
use crate::topos::Subpresheaf;

/// Derives an independent per-case RNG from a harness seed and a case
/// index (splitmix64 over the combined word).
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// A random presheaf with carrier sizes in `1..=max_carrier`.
///
/// Restrictions are sampled freely and then repaired along composites;
/// if the repaired tables still fail functoriality the draw is retried,
/// and after a bounded number of retries the constant presheaf on one
/// element is returned.
pub fn random_presheaf(
    base: &Arc<FiniteCategory>,
    max_carrier: usize,
    rng: &mut impl Rng,
) -> Presheaf {
    for _ in 0..32 {
        let carrier: BTreeMap<String, Vec<String>> = base
            .objects()
            .iter()
            .map(|o| {
                let n = rng.gen_range(1..=max_carrier.max(1));
                (o.clone(), (0..n).map(|i| format!("x{i}")).collect())
            })
            .collect();
        let mut restrict: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        for m in base.morphisms() {
            let map: BTreeMap<String, String> = carrier[&m.tgt]
                .iter()
                .map(|x| {
                    let to = if base.is_identity(&m.id) {
                        x.clone()
                    } else {
                        let cod = &carrier[&m.src];
                        cod[rng.gen_range(0..cod.len())].clone()
                    };
                    (x.clone(), to)
                })
                .collect();
            restrict.insert(m.id.clone(), map);
        }
        // Repair pass: force restrict(g∘f) = restrict(f)∘restrict(g) on
        // non-identity composites, iterating to a fixpoint.
        for _ in 0..base.morphisms().len() {
            let mut changed = false;
            for f in base.morphisms() {
                for g in base.morphisms().iter().filter(|g| g.src == f.tgt) {
                    if base.is_identity(&f.id) || base.is_identity(&g.id) {
                        continue;
                    }
                    let h = base.compose(&g.id, &f.id).expect("composable").to_string();
                    for x in &carrier[&g.tgt] {
                        let forced = restrict[&f.id][&restrict[&g.id][x]].clone();
                        let slot = restrict.get_mut(&h).unwrap().get_mut(x).unwrap();
                        if *slot != forced {
                            *slot = forced;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if let Ok(ps) = Presheaf::new(base.clone(), carrier, restrict) {
            return ps;
        }
    }
    Presheaf::constant(base.clone(), &["x0"])
}

/// A random subobject: random seeds closed off under restriction.
pub fn random_subobject(gamma: &Presheaf, rng: &mut impl Rng) -> Subpresheaf {
    let base = gamma.base();
    let mut subsets: BTreeMap<String, std::collections::BTreeSet<String>> = base
        .objects()
        .iter()
        .map(|o| {
            let seed: std::collections::BTreeSet<String> = gamma
                .elements_at(o)
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .cloned()
                .collect();
            (o.clone(), seed)
        })
        .collect();
    loop {
        let mut changed = false;
        for m in base.morphisms() {
            let in_tgt: Vec<String> = subsets[&m.tgt].iter().cloned().collect();
            for x in in_tgt {
                let down = gamma.restrict_elem(&m.id, &x).to_string();
                if subsets.get_mut(&m.src).unwrap().insert(down) {
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Subpresheaf::new(gamma.clone(), subsets).expect("closure produces a subobject")
}

/// Randomized backtracking search for one natural transformation
/// `x → y`; candidate order is shuffled, so the result is a uniform-ish
/// sample over an implicit tree, deterministic for a fixed RNG state.
pub fn random_nat_trans(x: &Presheaf, y: &Presheaf, rng: &mut impl Rng) -> Option<NatTrans> {
    random_map_search(x, y, |_, _| None, rng)
}

/// Random section of `p: E → B`, if one exists.
pub fn random_section(p: &NatTrans, rng: &mut impl Rng) -> Option<NatTrans> {
    let total = p.source().clone();
    let base_ps = p.target().clone();
    random_map_search(
        &base_ps,
        &total.clone(),
        move |o, x| {
            Some(
                total
                    .elements_at(o)
                    .iter()
                    .filter(|e| p.apply(o, e) == x)
                    .cloned()
                    .collect(),
            )
        },
        rng,
    )
}

fn random_map_search(
    x: &Presheaf,
    y: &Presheaf,
    fiber: impl Fn(&str, &str) -> Option<Vec<String>>,
    rng: &mut impl Rng,
) -> Option<NatTrans> {
    let slots = enumerate_elements(x);
    let mut candidates: Vec<Vec<String>> = Vec::with_capacity(slots.len());
    for s in &slots {
        let mut cands = match fiber(&s.at, &s.value) {
            Some(c) => c,
            None => y.elements_at(&s.at).to_vec(),
        };
        cands.shuffle(rng);
        candidates.push(cands);
    }
    let index: BTreeMap<(String, String), usize> = slots
        .iter()
        .enumerate()
        .map(|(i, s)| ((s.at.clone(), s.value.clone()), i))
        .collect();
    let mut edges: Vec<(usize, usize, String)> = Vec::new();
    for m in x.base().morphisms() {
        if x.base().is_identity(&m.id) {
            continue;
        }
        for e in x.elements_at(&m.tgt) {
            let from = index[&(m.tgt.clone(), e.clone())];
            let to = index[&(m.src.clone(), x.restrict_elem(&m.id, e).to_string())];
            edges.push((from, to, m.id.clone()));
        }
    }

    fn go(
        i: usize,
        slots: &[crate::presheaf::Element],
        candidates: &[Vec<String>],
        edges: &[(usize, usize, String)],
        y: &Presheaf,
        assignment: &mut Vec<Option<String>>,
        budget: &mut u32,
    ) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if i == slots.len() {
            return true;
        }
        'next: for cand in &candidates[i] {
            for (from, to, mor) in edges {
                let (fv, tv) = (
                    if *from == i {
                        Some(cand.as_str())
                    } else {
                        assignment[*from].as_deref()
                    },
                    if *to == i {
                        Some(cand.as_str())
                    } else {
                        assignment[*to].as_deref()
                    },
                );
                if let (Some(fv), Some(tv)) = (fv, tv) {
                    if y.restrict_elem(mor, fv) != tv {
                        continue 'next;
                    }
                }
            }
            assignment[i] = Some(cand.clone());
            if go(i + 1, slots, candidates, edges, y, assignment, budget) {
                return true;
            }
            assignment[i] = None;
        }
        false
    }

    let mut assignment: Vec<Option<String>> = vec![None; slots.len()];
    let mut budget = 200_000u32;
    if !go(
        0,
        &slots,
        &candidates,
        &edges,
        y,
        &mut assignment,
        &mut budget,
    ) {
        return None;
    }
    let mut components: BTreeMap<String, BTreeMap<String, String>> = x
        .base()
        .objects()
        .iter()
        .map(|o| (o.clone(), BTreeMap::new()))
        .collect();
    for (s, v) in slots.iter().zip(assignment) {
        components
            .get_mut(&s.at)
            .unwrap()
            .insert(s.value.clone(), v.unwrap());
    }
    NatTrans::new(x.clone(), y.clone(), components).ok()
}

/// A random type over `gamma` with `|V| ≤ max_v` per object; the fallback
/// presentation is an el-form over the context itself, so the generator
/// is total.
pub fn random_local_type(gamma: &Presheaf, max_v: usize, rng: &mut impl Rng) -> LocalType {
    let base = gamma.base();
    for _ in 0..8 {
        let v = random_presheaf(base, max_v, rng);
        let e = random_presheaf(base, max_v, rng);
        let (Some(p), Some(f)) = (
            random_nat_trans(&e, &v, rng),
            random_nat_trans(gamma, &v, rng),
        ) else {
            continue;
        };
        if let Ok(a) = LocalType::new(gamma, &v, &e, &p, &f) {
            return a;
        }
    }
    fallback_el_form(gamma, rng)
}

/// A random subsingleton over `gamma`: a random universe `V`, a random
/// subobject of it included as the total space (inclusions are monos, so
/// the extension projection is one too), and a random anchor.
pub fn random_subsingleton(gamma: &Presheaf, max_v: usize, rng: &mut impl Rng) -> LocalType {
    let base = gamma.base();
    for _ in 0..8 {
        let v = random_presheaf(base, max_v, rng);
        let w = random_subobject(&v, rng);
        let (e, incl) = w.to_presheaf();
        let Some(f) = random_nat_trans(gamma, &v, rng) else {
            continue;
        };
        if let Ok(a) = LocalType::new(gamma, &v, &e, &incl, &f) {
            return a;
        }
    }
    fallback_el_form(gamma, rng)
}

fn fallback_el_form(gamma: &Presheaf, rng: &mut impl Rng) -> LocalType {
    let w = random_subobject(gamma, rng);
    let (e, incl) = w.to_presheaf();
    LocalType::new(gamma, gamma, &e, &incl, &NatTrans::identity(gamma))
        .expect("el-form diagram is well formed")
}

/// A random substitution into `gamma`: usually a random map from a random
/// context, sometimes a representable probe, falling back to the identity.
pub fn random_substitution(gamma: &Presheaf, max_delta: usize, rng: &mut impl Rng) -> NatTrans {
    if !gamma.is_empty() && rng.gen_bool(0.25) {
        let elements = enumerate_elements(gamma);
        let el = &elements[rng.gen_range(0..elements.len())];
        return yoneda_map(gamma, el).expect("probe of an enumerated element");
    }
    for _ in 0..8 {
        let delta = random_presheaf(gamma.base(), max_delta, rng);
        if let Some(sigma) = random_nat_trans(&delta, gamma, rng) {
            return sigma;
        }
    }
    NatTrans::identity(gamma)
}

/// A random proposition code over `gamma`.
pub fn random_prop_code(gamma: &Presheaf, rng: &mut impl Rng) -> PropCode {
    PropCode::from_subobject(&random_subobject(gamma, rng))
}

/// A random term of `a`, if `a` has any.
pub fn random_term(a: &LocalType, rng: &mut impl Rng) -> Option<Term> {
    let (_, proj_ext, _) = ctx_extend(a);
    let section = random_section(&proj_ext, rng)?;
    Term::new(a, &section).ok()
}
