//! Factorizations of morphisms and morphisms into groups or disjoint unions.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::standard::{component_projection, restrict_to_domain};
use super::Morphism;
use crate::action::quotient_groupoid;
use crate::error::{Error, Result};
use crate::groupoid::{disjoint_union, Groupoid};

/// A morphism `Γ ⊸ G` into a group, as a one-point orbit `{e0}` and a
/// homomorphism from the isotropy group at `e0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupClassification {
    pub e0: usize,
    /// `γ ↦ h(γ)` on the isotropy group at `e0`.
    pub hom: BTreeMap<usize, usize>,
}

pub fn classify_into_group(h: &Morphism) -> Result<GroupClassification> {
    let (g, t) = (h.source(), h.target());
    if t.units().len() != 1 {
        return Err(Error::Precondition(format!("`{}` is not a group", t.name())));
    }
    let e0 = h.rho(t.units()[0]);
    let mut hom = BTreeMap::new();
    for &x in g.isotropy(e0)?.members() {
        match h.apply(x).as_slice() {
            [y] => {
                hom.insert(x, *y);
            }
            _ => return Err(Error::Internal(format!("h is not single-valued at {}", g.label(x)))),
        }
    }
    let c = GroupClassification { e0, hom };
    if morphism_into_group(g, t, &c)? != *h {
        return Err(Error::Internal("classification does not reproduce h".into()));
    }
    Ok(c)
}

/// Rebuilds the morphism from a one-point orbit and a homomorphism.
pub fn morphism_into_group(g: &Arc<Groupoid>, t: &Arc<Groupoid>, c: &GroupClassification) -> Result<Morphism> {
    if g.component_of(c.e0).len() != g.isotropy(c.e0)?.members().len() {
        return Err(Error::Precondition(format!(
            "the orbit of `{}` is not a single point",
            g.label(c.e0)
        )));
    }
    Morphism::validate(Arc::clone(g), Arc::clone(t), c.hom.iter().map(|(&x, &y)| (y, x)))
}

/// `h = h̃ ∘ π` with `π : Γ ⊸ Γ/ker(h)` and `h̃` mono, for `D(h) = Γ`.
pub fn quotient_by_kernel(h: &Morphism) -> Result<(Morphism, Morphism)> {
    let g = h.source();
    if h.domain().len() != g.len() {
        return Err(Error::Precondition("the morphism is not defined on the whole groupoid".into()));
    }
    let q = quotient_groupoid(g, h.kernel())?;
    let graph: BTreeSet<(usize, usize)> = h
        .graph()
        .iter()
        .map(|&(d, x)| (d, q.class_of[x]))
        .collect();
    let reduced = Morphism::validate(Arc::clone(&q.groupoid), Arc::clone(h.target()), graph)?;
    if !reduced.is_mono() {
        return Err(Error::Internal("reduced morphism is not mono".into()));
    }
    if reduced.compose(&q.projection)? != *h {
        return Err(Error::Internal("h ≠ h̃π".into()));
    }
    Ok((q.projection, reduced))
}

/// `h = h2 ∘ h1` with `h1` surjective (`π ∘ iᵀ`) and `h2` mono.
pub fn epi_mono_factorization(h: &Morphism) -> Result<(Morphism, Morphism)> {
    let restricted = restrict_to_domain(h)?;
    let projection = component_projection(h.source(), h.domain())?;
    let (pi, reduced) = quotient_by_kernel(&restricted)?;
    let h1 = pi.compose(&projection)?;
    if !h1.is_surjective() || !reduced.is_mono() || reduced.compose(&h1)? != *h {
        return Err(Error::Internal("factorization failed".into()));
    }
    Ok((h1, reduced))
}

/// The morphism `Λ ⊸ Γ1 ⊔ Γ2` whose two projections are `p1` and `p2`.
pub fn product_pairing(p1: &Morphism, p2: &Morphism) -> Result<Morphism> {
    if p1.source() != p2.source() {
        return Err(Error::UniverseMismatch {
            left: p1.source().name().to_string(),
            right: p2.source().name().to_string(),
        });
    }
    let target = Arc::new(disjoint_union(p1.target(), p2.target())?);
    let mut graph = Vec::new();
    for (p, tag) in [(p1, "L"), (p2, "R")] {
        for &(d, x) in p.graph() {
            graph.push((target.elem(&format!("{tag}:{}", p.target().label(d)))?, x));
        }
    }
    Morphism::validate(Arc::clone(p1.source()), target, graph)
}
