//! The standard morphisms: regular representation, inclusions and
//! projections, the map to the orbit relation, functors and group actions.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::Morphism;
use crate::builders::{group_groupoid, pair_groupoid, GroupAction};
use crate::error::{Error, Result};
use crate::groupoid::{cartesian_product, disjoint_union, Groupoid};
use crate::relation::Universe;

/// The units of `Γ` as a plain universe, named by their labels.
pub(crate) fn unit_universe(g: &Groupoid) -> Result<Universe> {
    Universe::new(
        format!("E({})", g.name()),
        g.units().iter().map(|&u| g.label(u).to_string()),
    )
}

fn pair(a: &str, b: &str) -> String {
    format!("({a}|{b})")
}

/// The left regular representation `l : Γ ⊸ Γ²`, `l = {(g, h; k) : g = kh}`.
pub fn left_regular(g: &Arc<Groupoid>) -> Result<Morphism> {
    let elements = Universe::new(
        g.name().to_string(),
        (0..g.len()).map(|x| g.label(x).to_string()),
    )?;
    let target = Arc::new(pair_groupoid(&elements)?);
    let mut graph = Vec::new();
    for (k, h) in g.composable_pairs() {
        let kh = g.mul(k, h);
        graph.push((target.elem(&pair(g.label(kh), g.label(h)))?, k));
    }
    Morphism::validate(Arc::clone(g), target, graph)
}

/// `γ ↦ (e_L(γ), e_R(γ)) ∈ E²`.
pub fn to_orbit_pair(g: &Arc<Groupoid>) -> Result<Morphism> {
    let target = Arc::new(pair_groupoid(&unit_universe(g)?)?);
    to_unit_pairs(g, target)
}

/// `π : Γ ⊸ R`, `γ ↦ (e_L(γ), e_R(γ))` into the orbit relation.
pub fn to_orbit_relation(g: &Arc<Groupoid>) -> Result<Morphism> {
    let target = Arc::new(g.orbit_relation()?);
    to_unit_pairs(g, target)
}

fn to_unit_pairs(g: &Arc<Groupoid>, target: Arc<Groupoid>) -> Result<Morphism> {
    let graph = (0..g.len())
        .map(|x| {
            let name = pair(g.label(g.left(x)), g.label(g.right(x)));
            target.elem(&name).map(|d| (d, x))
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::validate(Arc::clone(g), target, graph)
}

/// `iᵀ : Γ ⊸ Γ1` for a union of transitive components `Γ1`.
pub fn component_projection(g: &Arc<Groupoid>, members: &BTreeSet<usize>) -> Result<Morphism> {
    if !g.is_union_of_components(members) {
        return Err(Error::Precondition(format!(
            "subset of `{}` is not a union of transitive components",
            g.name()
        )));
    }
    let sub = Arc::new(g.subgroupoid(members, format!("{}|D", g.name()))?);
    let graph = members
        .iter()
        .map(|&x| sub.elem(g.label(x)).map(|y| (y, x)))
        .collect::<Result<Vec<_>>>()?;
    Morphism::validate(Arc::clone(g), sub, graph)
}

/// The inclusion `i : Γ1 → Γ` of a wide subgroupoid.
pub fn wide_inclusion(g: &Arc<Groupoid>, members: &BTreeSet<usize>) -> Result<Morphism> {
    if !g.is_wide(members) {
        return Err(Error::Precondition(format!(
            "subset of `{}` is not a wide subgroupoid",
            g.name()
        )));
    }
    let sub = Arc::new(g.subgroupoid(members, format!("{}'", g.name()))?);
    let graph = members
        .iter()
        .map(|&x| sub.elem(g.label(x)).map(|y| (x, y)))
        .collect::<Result<Vec<_>>>()?;
    Morphism::validate(sub, Arc::clone(g), graph)
}

/// `h|_{D(h)} : D(h) ⊸ Δ`.
pub fn restrict_to_domain(h: &Morphism) -> Result<Morphism> {
    let g = h.source();
    let sub = Arc::new(g.subgroupoid(h.domain(), format!("D({})", g.name()))?);
    let graph = h
        .graph()
        .iter()
        .map(|&(d, x)| sub.elem(g.label(x)).map(|y| (d, y)))
        .collect::<Result<Vec<_>>>()?;
    Morphism::validate(sub, Arc::clone(h.target()), graph)
}

/// `i1 = {(g1, e2; g1)}` and `i2 = {(e1, g2; g2)}` into `Γ1 × Γ2`.
pub fn product_injections(a: &Arc<Groupoid>, b: &Arc<Groupoid>) -> Result<(Morphism, Morphism)> {
    let target = Arc::new(cartesian_product(a, b)?);
    let mut g1 = Vec::new();
    for x in 0..a.len() {
        for &e in b.units() {
            g1.push((target.elem(&pair(a.label(x), b.label(e)))?, x));
        }
    }
    let mut g2 = Vec::new();
    for y in 0..b.len() {
        for &e in a.units() {
            g2.push((target.elem(&pair(a.label(e), b.label(y)))?, y));
        }
    }
    Ok((
        Morphism::validate(Arc::clone(a), Arc::clone(&target), g1)?,
        Morphism::validate(Arc::clone(b), target, g2)?,
    ))
}

/// The canonical projections `Γ1 ⊔ Γ2 ⊸ Γ1` and `Γ1 ⊔ Γ2 ⊸ Γ2`.
pub fn union_projections(
    a: &Arc<Groupoid>,
    b: &Arc<Groupoid>,
) -> Result<(Arc<Groupoid>, Morphism, Morphism)> {
    let union = Arc::new(disjoint_union(a, b)?);
    let project = |part: &Arc<Groupoid>, tag: &str| {
        let graph = (0..part.len())
            .map(|x| union.elem(&format!("{tag}:{}", part.label(x))).map(|u| (x, u)))
            .collect::<Result<Vec<_>>>()?;
        Morphism::validate(Arc::clone(&union), Arc::clone(part), graph)
    };
    let p1 = project(a, "L")?;
    let p2 = project(b, "R")?;
    Ok((union, p1, p2))
}

/// Checks that a total map preserves units, inverses and products.
pub(crate) fn check_functor(g: &Groupoid, d: &Groupoid, map: &[usize]) -> Result<()> {
    if map.len() != g.len() || map.iter().any(|&y| y >= d.len()) {
        return Err(Error::NotFunctor("map is not total".into()));
    }
    for x in 0..g.len() {
        if g.is_unit(x) && !d.is_unit(map[x]) {
            return Err(Error::NotFunctor(format!("unit {} ↦ non-unit", g.label(x))));
        }
        if map[g.inverse(x)] != d.inverse(map[x]) {
            return Err(Error::NotFunctor(format!("inverse of {}", g.label(x))));
        }
    }
    for (a, b) in g.composable_pairs() {
        if d.product(map[a], map[b]) != Some(map[g.mul(a, b)]) {
            return Err(Error::NotFunctor(format!("product {}·{}", g.label(a), g.label(b))));
        }
    }
    Ok(())
}

/// The graph of a functor `Φ : Γ → Δ`, which is a morphism iff `Φ` is a
/// bijection on units.
pub fn functor_to_morphism(g: &Arc<Groupoid>, d: &Arc<Groupoid>, map: &[usize]) -> Result<Morphism> {
    check_functor(g, d, map)?;
    let images: BTreeSet<usize> = g.units().iter().map(|&u| map[u]).collect();
    if images.len() != g.units().len() || images.len() != d.units().len() {
        return Err(Error::NotUnitBijective(format!(
            "{} units of `{}` onto {} units of `{}`",
            g.units().len(),
            g.name(),
            d.units().len(),
            d.name()
        )));
    }
    Morphism::validate(Arc::clone(g), Arc::clone(d), (0..g.len()).map(|x| (map[x], x)))
}

/// `h = {(gx, x; g)} : G ⊸ X²`.
pub fn group_action_morphism(action: &GroupAction) -> Result<Morphism> {
    let group = Arc::new(group_groupoid(action.group())?);
    let x = action.carrier();
    let target = Arc::new(pair_groupoid(x)?);
    let mut graph = Vec::new();
    for gi in 0..action.group().len() {
        let g = group.elem(action.group().label(gi))?;
        for p in 0..x.len() {
            let name = pair(&x.name(action.act(gi, p)), &x.name(p));
            graph.push((target.elem(&name)?, g));
        }
    }
    Morphism::validate(group, target, graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{set_groupoid, GroupTable};
    use crate::catalog;

    #[test]
    fn left_regular_examples() {
        let z2 = Arc::new(catalog::z2());
        let l = left_regular(&z2).unwrap();
        assert_eq!(l.graph().len(), 4);
        assert_eq!(l.kernel(), &z2.unit_set());
        assert!(l.is_mono());

        let s = Arc::new(set_groupoid(&Universe::new("X", ["a", "b"]).unwrap()).unwrap());
        let l = left_regular(&s).unwrap();
        let names: BTreeSet<(String, String)> = l.named_graph().into_iter().collect();
        let diag: BTreeSet<(String, String)> = ["a", "b"]
            .iter()
            .map(|x| (format!("({x}|{x})"), x.to_string()))
            .collect();
        assert_eq!(names, diag);
    }

    #[test]
    fn orbit_pair_kernel_is_isotropy() {
        for (_, g) in catalog::catalog() {
            let g = Arc::new(g);
            let h = to_orbit_pair(&g).unwrap();
            assert_eq!(h.kernel(), g.isotropy_bundle().members());
            let r = to_orbit_relation(&g).unwrap();
            assert!(r.is_surjective());
        }
        let p2 = Arc::new(catalog::p2());
        assert!(to_orbit_pair(&p2).unwrap().is_bijective());
    }

    #[test]
    fn injections_and_projections() {
        let z2 = Arc::new(catalog::z2());
        let (i1, i2) = product_injections(&z2, &z2).unwrap();
        assert_eq!(i1.graph().len(), 2);
        assert_eq!(i2.graph().len(), 2);
        let (_, p1, p2) = union_projections(&z2, &Arc::new(catalog::p2())).unwrap();
        assert!(p1.is_surjective() && p2.is_surjective());
    }

    #[test]
    fn inclusions_and_components() {
        let u = Arc::new(disjoint_union(&catalog::p2(), &catalog::z2()).unwrap());
        let comp = u.transitive_components()[0].members().clone();
        let pi = component_projection(&u, &comp).unwrap();
        assert!(pi.is_surjective());
        let units = u.unit_set();
        assert!(component_projection(&u, &units).is_err());
        let inc = wide_inclusion(&u, &units).unwrap();
        assert!(inc.is_mono() && !inc.is_surjective());
        let r = restrict_to_domain(&pi).unwrap();
        assert_eq!(r.domain().len(), r.source().len());
    }

    #[test]
    fn functors() {
        let g = Arc::new(catalog::p2());
        let id: Vec<usize> = (0..g.len()).collect();
        assert_eq!(functor_to_morphism(&g, &g, &id).unwrap(), Morphism::identity(&g));
        let pairs = to_orbit_pair(&g).unwrap();
        let map: Vec<usize> = (0..g.len()).map(|x| pairs.apply(x)[0]).collect();
        functor_to_morphism(&g, pairs.target(), &map).unwrap();
        let t = Arc::new(catalog::trivial_group());
        assert!(matches!(
            functor_to_morphism(&g, &t, &vec![0; g.len()]),
            Err(Error::NotUnitBijective(_))
        ));
        let units_swapped: Vec<usize> = (0..g.len())
            .map(|x| if g.is_unit(x) { g.units()[0] + g.units()[1] - x } else { x })
            .collect();
        assert!(matches!(
            functor_to_morphism(&g, &g, &units_swapped),
            Err(Error::NotFunctor(_))
        ));
    }

    #[test]
    fn group_actions() {
        let h = group_action_morphism(&catalog::z2_swap_action()).unwrap();
        assert!(h.is_mono());
        let fixed = GroupAction::trivial(GroupTable::cyclic(2), Universe::new("X", ["p", "q"]).unwrap()).unwrap();
        let h = group_action_morphism(&fixed).unwrap();
        assert!(!h.is_mono());
        assert_eq!(h.kernel().len(), 2);
        for &f in h.target().units() {
            assert_eq!(h.rho(f), h.source().units()[0]);
        }
        let one = GroupAction::trivial(GroupTable::trivial(), Universe::new("X", ["p", "q"]).unwrap()).unwrap();
        let h = group_action_morphism(&one).unwrap();
        assert!(h.graph().iter().all(|&(d, _)| h.target().is_unit(d)));
        assert!(h.is_mono());
    }
}
