//! Induced actions and the classification of transitive actions of
//! product-form groupoids.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::Action;
use crate::builders::{GroupAction, ProductForm};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::relation::{FinRel, Universe};

/// The action `l_Y` of `Γ` on the classes `Y` of `{(γ, x) : e_R(γ) = ρ(x)}`.
#[derive(Debug, Clone)]
pub struct Induced {
    pub universe: Arc<Universe>,
    pub action: Action,
    /// Members `(γ, x)` of each class, indexed like `universe`.
    pub classes: Vec<BTreeSet<(usize, usize)>>,
}

/// Induces an action of `Γ` from an action of a subgroupoid `Δ`, where the
/// elements of `Δ` are identified with those of `Γ` by label.
pub fn induced_action(g: &Arc<Groupoid>, phi: &Action) -> Result<Induced> {
    let d = phi.groupoid();
    let emb: Vec<usize> = (0..d.len())
        .map(|x| {
            g.elem(d.label(x)).map_err(|_| {
                Error::Precondition(format!("{} is not an element of `{}`", d.label(x), g.name()))
            })
        })
        .collect::<Result<_>>()?;
    for a in 0..d.len() {
        let same_unit = d.is_unit(a) == g.is_unit(emb[a]);
        if !same_unit || emb[d.inverse(a)] != g.inverse(emb[a]) {
            return Err(Error::Precondition(format!(
                "`{}` is not a subgroupoid of `{}` at {}",
                d.name(),
                g.name(),
                d.label(a)
            )));
        }
        for b in 0..d.len() {
            if d.product(a, b).map(|c| emb[c]) != g.product(emb[a], emb[b]) {
                return Err(Error::Precondition(format!(
                    "`{}` is not a subgroupoid of `{}` at {}·{}",
                    d.name(),
                    g.name(),
                    d.label(a),
                    d.label(b)
                )));
            }
        }
    }
    let hit: BTreeSet<usize> = phi.base().iter().copied().collect();
    if let Some(&f) = d.units().iter().find(|f| !hit.contains(f)) {
        return Err(Error::Precondition(format!("ρ does not reach the unit {}", d.label(f))));
    }
    let x = phi.carrier();
    let hat: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|c| (0..x.len()).map(move |p| (c, p)))
        .filter(|&(c, p)| g.right(c) == emb[phi.rho(p)])
        .collect();
    let index: BTreeMap<(usize, usize), usize> = hat.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut related: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, &(c1, x1)) in hat.iter().enumerate() {
        for delta in 0..d.len() {
            let Some(y) = phi.act(delta, x1) else { continue };
            if let Some(c) = g.product(c1, g.inverse(emb[delta])) {
                related.insert((index[&(c, y)], i));
            }
        }
    }
    let mut class_of = vec![usize::MAX; hat.len()];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..hat.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let block: Vec<usize> = (0..hat.len()).filter(|&j| related.contains(&(j, i))).collect();
        for &j in &block {
            let closed = (0..hat.len()).all(|k| related.contains(&(k, j)) == block.contains(&k));
            if class_of[j] != usize::MAX || !closed {
                return Err(Error::Internal("≃ is not an equivalence".into()));
            }
            class_of[j] = blocks.len();
        }
        blocks.push(block);
    }
    let member = |i: usize| format!("({}|{})", g.label(hat[i].0), x.name(hat[i].1));
    let names: Vec<String> = blocks
        .iter()
        .map(|b| format!("[{}]", b.iter().map(|&i| member(i)).min().expect("nonempty")))
        .collect();
    let universe = Arc::new(Universe::new(format!("{}⊗{}", g.name(), x.id()), names.iter().cloned())?);
    let position: Vec<usize> = names.iter().map(|n| universe.lookup(n)).collect::<Result<_>>()?;
    let mut table: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, &(c, p)) in hat.iter().enumerate() {
        for a in 0..g.len() {
            let Some(ac) = g.product(a, c) else { continue };
            let target = position[class_of[index[&(ac, p)]]];
            let source = position[class_of[i]];
            if *table.entry((a, source)).or_insert(target) != target {
                return Err(Error::Internal(format!(
                    "l_Y is not well defined at {} on {}",
                    g.label(a),
                    names[class_of[i]]
                )));
            }
        }
    }
    let action = Action::validate(
        Arc::clone(g),
        Arc::clone(&universe),
        table.iter().map(|(&(a, y), &z)| (z, a, y)),
    )?;
    let mut classes = vec![BTreeSet::new(); blocks.len()];
    for (k, block) in blocks.iter().enumerate() {
        classes[position[k]] = block.iter().map(|&i| hat[i]).collect();
    }
    Ok(Induced {
        universe,
        action,
        classes,
    })
}

/// `{((e1|gz); (e1|g|e2), (e2|z))}`: the action of `E × G × E` on `E × Z`
/// induced from a `G`-action on `Z`.
pub fn induced_product_form_action(form: &ProductForm, action: &GroupAction) -> Result<Action> {
    if form.group() != action.group() {
        return Err(Error::UniverseMismatch {
            left: form.group().name().to_string(),
            right: action.group().name().to_string(),
        });
    }
    let e = form.units();
    let z = action.carrier();
    let name = |a: usize, p: usize| format!("({}|{})", e.name(a), z.name(p));
    let carrier = Arc::new(Universe::new(
        format!("{}×{}", e.id(), z.id()),
        (0..e.len()).flat_map(|a| (0..z.len()).map(move |p| name(a, p))),
    )?);
    let g = Arc::new(form.groupoid().clone());
    let mut triples = Vec::new();
    for el in 0..g.len() {
        let (e1, h, e2) = form.coords(el);
        for p in 0..z.len() {
            triples.push((
                carrier.lookup(&name(e1, action.act(h, p)))?,
                el,
                carrier.lookup(&name(e2, p))?,
            ));
        }
    }
    Action::validate(g, carrier, triples)
}

/// A transitive action of `E × G × E` on `Z` written as the induced action
/// `Φ̃` on `E × Z̃` with `Z̃ = ρ⁻¹(e0)`.
#[derive(Debug, Clone)]
pub struct TransitiveClassification {
    pub z0: usize,
    pub e0: usize,
    /// Points of `Z` over `e0`, with their names.
    pub z_tilde: Arc<Universe>,
    pub group_action: GroupAction,
    pub induced: Action,
    /// `Ψ : E × Z̃ → Z`, indexed like the carrier of `induced`.
    pub psi: Vec<usize>,
}

/// `z0` defaults to the least point of the carrier.
pub fn classify_transitive_action(
    form: &ProductForm,
    phi: &Action,
    z0: Option<usize>,
) -> Result<TransitiveClassification> {
    let g = phi.groupoid();
    if **g != *form.groupoid() {
        return Err(Error::UniverseMismatch {
            left: g.name().to_string(),
            right: form.groupoid().name().to_string(),
        });
    }
    let z = phi.carrier();
    if z.is_empty() {
        return Err(Error::Precondition("the carrier is empty".into()));
    }
    if !phi.is_transitive() {
        return Err(Error::Precondition("the action is not transitive".into()));
    }
    let z0 = z0.unwrap_or(0);
    if z0 >= z.len() {
        return Err(Error::UnknownElement {
            universe: z.id().to_string(),
            element: format!("#{z0}"),
        });
    }
    let e0 = phi.rho(z0);
    let (b, _, _) = form.coords(e0);
    let fiber: Vec<usize> = (0..z.len()).filter(|&p| phi.rho(p) == e0).collect();
    let z_tilde = Universe::new(format!("{}~", z.id()), fiber.iter().map(|&p| z.name(p).into_owned()))?;
    let local = |p: usize| z_tilde.lookup(&z.name(p));
    let group = form.group().clone();
    let mut table = vec![0; group.len() * fiber.len()];
    for h in 0..group.len() {
        for &p in &fiber {
            let q = phi.act(form.element(b, h, b), p).expect("ρ(p) = e0");
            table[h * fiber.len() + local(p)?] = local(q)?;
        }
    }
    let n = fiber.len();
    let group_action = GroupAction::new(group, z_tilde, |h, p| table[h * n + p])?;
    let z_tilde = Arc::clone(group_action.carrier());
    let induced = induced_product_form_action(form, &group_action)?;
    let unit = form.group().unit();
    let e = form.units();
    let mut psi = vec![0; induced.carrier().len()];
    for a in 0..e.len() {
        for p in 0..z_tilde.len() {
            let point = induced.carrier().lookup(&format!("({}|{})", e.name(a), z_tilde.name(p)))?;
            let original = z.lookup(&z_tilde.name(p))?;
            psi[point] = phi.act(form.element(a, unit, b), original).expect("ρ(z̃) = e0");
        }
    }
    let distinct: BTreeSet<usize> = psi.iter().copied().collect();
    if distinct.len() != psi.len() || psi.len() != z.len() {
        return Err(Error::Internal("Ψ is not a bijection".into()));
    }
    let psi_rel = FinRel::from_fn(Arc::clone(induced.carrier()), Arc::clone(z), |i| psi[i]);
    let id_g = FinRel::identity(Arc::clone(g.universe()));
    phi.relation()
        .compose(&id_g.product(&psi_rel))?
        .check_equal(&psi_rel.compose(induced.relation())?)
        .map_err(|w| Error::Internal(format!("Φ(id × Ψ) ≠ ΨΦ̃ at {w}")))?;
    Ok(TransitiveClassification {
        z0,
        e0,
        z_tilde,
        group_action,
        induced,
        psi,
    })
}
