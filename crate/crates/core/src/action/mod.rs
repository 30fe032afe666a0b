//! Relational groupoid actions `Φ : Γ×X ⊸ X`.
//!
//! An action is stored as triples `(y; γ, x)`, output first. Validation checks
//! `Φ(m×id) = Φ(id×Φ)` and `Φ(e×id) = id` literally and then computes the
//! base map `ρ : X → E` and the domain `D(Φ)`.

mod coset;
mod functor;
mod induced;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub use coset::{coset_space, homogeneous_identification, quotient_groupoid, CosetSpace, Homogeneous, Quotient};
pub use functor::{action_groupoid, action_groupoid_functor, functor_to_zm, ActionGroupoid, GroupoidFunctor};
pub use induced::{
    classify_transitive_action, induced_action, induced_product_form_action, Induced, TransitiveClassification,
};

use crate::builders::pair_groupoid;
use crate::error::{ActionAxiom, Error, Result};
use crate::groupoid::Groupoid;
use crate::morphism::Morphism;
use crate::relation::{FinRel, Universe};

/// A validated action of `Γ` on a finite set `X`.
#[derive(Debug, Clone)]
pub struct Action {
    groupoid: Arc<Groupoid>,
    carrier: Arc<Universe>,
    rel: FinRel,
    base: Vec<usize>,
    /// `γ·x` at `γ * |X| + x`, `None` off `D(Φ)`.
    map: Vec<Option<usize>>,
}

/// A set with a validated action of a fixed groupoid.
pub type GammaSet = Action;

impl PartialEq for Action {
    fn eq(&self, other: &Self) -> bool {
        self.rel == other.rel && self.groupoid == other.groupoid
    }
}

impl Eq for Action {}

fn fail(axiom: ActionAxiom, witness: impl Into<String>) -> Error {
    Error::ActionAxiom {
        axiom,
        witness: witness.into(),
    }
}

impl Action {
    /// Validates `(y, γ, x)` index triples.
    pub fn validate(
        groupoid: Arc<Groupoid>,
        carrier: Arc<Universe>,
        triples: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Action> {
        let nx = carrier.len();
        let source = Arc::new(Universe::product(groupoid.universe(), &carrier));
        let rel = FinRel::new(
            source,
            Arc::clone(&carrier),
            triples.into_iter().map(|(y, g, x)| (y, g * nx + x)),
        )?;
        Self::from_rel(groupoid, carrier, rel)
    }

    /// Validates `(y, γ, x)` name triples.
    pub fn from_names<'a>(
        groupoid: Arc<Groupoid>,
        carrier: Arc<Universe>,
        triples: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    ) -> Result<Action> {
        let mut out = Vec::new();
        for (y, g, x) in triples {
            out.push((carrier.lookup(y)?, groupoid.elem(g)?, carrier.lookup(x)?));
        }
        Self::validate(groupoid, carrier, out)
    }

    pub fn from_rel(groupoid: Arc<Groupoid>, carrier: Arc<Universe>, rel: FinRel) -> Result<Action> {
        let gx = Universe::product(groupoid.universe(), &carrier);
        if **rel.source() != gx || **rel.target() != *carrier {
            return Err(Error::UniverseMismatch {
                left: format!("{} ⊸ {}", rel.source().id(), rel.target().id()),
                right: format!("{} ⊸ {}", gx.id(), carrier.id()),
            });
        }
        let id_x = FinRel::identity(Arc::clone(&carrier));
        let id_g = FinRel::identity(Arc::clone(groupoid.universe()));
        rel.compose(&groupoid.mult_relation().product(&id_x))?
            .check_equal(&rel.compose(&id_g.product(&rel))?)
            .map_err(|w| fail(ActionAxiom::Associativity, w))?;
        rel.compose(&groupoid.unit_relation().product(&id_x))?
            .compose(&FinRel::left_unitor(&carrier))?
            .check_equal(&id_x)
            .map_err(|w| fail(ActionAxiom::Units, w))?;
        Self::derive(groupoid, carrier, rel)
    }

    fn derive(groupoid: Arc<Groupoid>, carrier: Arc<Universe>, rel: FinRel) -> Result<Action> {
        let g = &groupoid;
        let nx = carrier.len();
        let xn = |x: usize| carrier.name(x).into_owned();
        let mut map = vec![None; g.len() * nx];
        for &(y, i) in rel.graph() {
            if map[i].replace(y).is_some() {
                return Err(fail(
                    ActionAxiom::Derived,
                    format!("{}·{} has two values", g.label(i / nx), xn(i % nx)),
                ));
            }
        }
        let mut base = Vec::with_capacity(nx);
        for x in 0..nx {
            let fixing: Vec<usize> = g
                .units()
                .iter()
                .copied()
                .filter(|&e| map[e * nx + x] == Some(x))
                .collect();
            match fixing.as_slice() {
                [e] => base.push(*e),
                _ => return Err(fail(ActionAxiom::Derived, format!("no unique unit fixes {}", xn(x)))),
            }
        }
        for gi in 0..g.len() {
            for x in 0..nx {
                let defined = map[gi * nx + x].is_some();
                if defined != (g.right(gi) == base[x]) {
                    return Err(fail(
                        ActionAxiom::Derived,
                        format!("D(Φ) at ({}, {})", g.label(gi), xn(x)),
                    ));
                }
                if let Some(y) = map[gi * nx + x] {
                    if base[y] != g.left(gi) {
                        return Err(fail(ActionAxiom::Derived, format!("ρ({}) ≠ e_L({})", xn(y), g.label(gi))));
                    }
                    if map[g.inverse(gi) * nx + y] != Some(x) {
                        return Err(fail(
                            ActionAxiom::Derived,
                            format!("symmetry at ({}; {}, {})", xn(y), g.label(gi), xn(x)),
                        ));
                    }
                }
            }
        }
        let action = Action {
            groupoid,
            carrier,
            rel,
            base,
            map,
        };
        action.check_classical()?;
        Ok(action)
    }

    /// `ρ(x)x = x` and `γ1(γ2x) = (γ1γ2)x` on the partial map.
    fn check_classical(&self) -> Result<()> {
        let g = &self.groupoid;
        for x in 0..self.carrier.len() {
            if self.act(self.base[x], x) != Some(x) {
                return Err(fail(ActionAxiom::Classical, format!("ρ(x)x at {}", self.carrier.name(x))));
            }
        }
        for (a, b) in g.composable_pairs() {
            for x in 0..self.carrier.len() {
                let Some(bx) = self.act(b, x) else { continue };
                if self.act(a, bx) != self.act(g.mul(a, b), x) {
                    return Err(fail(
                        ActionAxiom::Classical,
                        format!("{}({}{})", g.label(a), g.label(b), self.carrier.name(x)),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn groupoid(&self) -> &Arc<Groupoid> {
        &self.groupoid
    }

    pub fn carrier(&self) -> &Arc<Universe> {
        &self.carrier
    }

    /// The relation `Γ×X ⊸ X`.
    pub fn relation(&self) -> &FinRel {
        &self.rel
    }

    /// `(y, γ, x)` in canonical order.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let nx = self.carrier.len();
        let mut out: Vec<_> = self.rel.graph().iter().map(|&(y, i)| (y, i / nx, i % nx)).collect();
        out.sort_unstable();
        out
    }

    pub fn named_triples(&self) -> Vec<(String, String, String)> {
        self.triples()
            .into_iter()
            .map(|(y, g, x)| {
                (
                    self.carrier.name(y).into_owned(),
                    self.groupoid.label(g).to_string(),
                    self.carrier.name(x).into_owned(),
                )
            })
            .collect()
    }

    /// `ρ : X → E`.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn rho(&self, x: usize) -> usize {
        self.base[x]
    }

    /// `γx`, defined iff `e_R(γ) = ρ(x)`.
    pub fn act(&self, g: usize, x: usize) -> Option<usize> {
        self.map[g * self.carrier.len() + x]
    }

    /// `D(Φ)` as `(γ, x)` pairs.
    pub fn domain(&self) -> Vec<(usize, usize)> {
        let nx = self.carrier.len();
        (0..self.map.len())
            .filter(|&i| self.map[i].is_some())
            .map(|i| (i / nx, i % nx))
            .collect()
    }

    /// The classical data `(ρ, (γ, x) ↦ γx)`.
    pub fn as_mapping(&self) -> (Vec<usize>, BTreeMap<(usize, usize), usize>) {
        let act = self
            .domain()
            .into_iter()
            .map(|(g, x)| ((g, x), self.act(g, x).expect("in domain")))
            .collect();
        (self.base.clone(), act)
    }

    /// Orbits of the action, as blocks of the carrier listed by least member.
    pub fn orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.carrier.len()];
        let mut out = Vec::new();
        for x in 0..self.carrier.len() {
            if seen[x] {
                continue;
            }
            let orbit: BTreeSet<usize> = (0..self.groupoid.len()).filter_map(|g| self.act(g, x)).collect();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (y, g, x)) in self.named_triples().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({y}; {g}, {x})")?;
        }
        f.write_str("}")
    }
}

pub fn validate_action(
    groupoid: Arc<Groupoid>,
    carrier: Arc<Universe>,
    triples: impl IntoIterator<Item = (usize, usize, usize)>,
) -> Result<Action> {
    Action::validate(groupoid, carrier, triples)
}

/// The relation `{(γx; γ, x)}` of a classical fibered action.
pub fn classical_to_relational(
    groupoid: &Arc<Groupoid>,
    carrier: &Arc<Universe>,
    rho: &[usize],
    act: &BTreeMap<(usize, usize), usize>,
) -> Result<Action> {
    let g = groupoid;
    let nx = carrier.len();
    if rho.len() != nx || rho.iter().any(|&e| e >= g.len() || !g.is_unit(e)) {
        return Err(fail(ActionAxiom::Classical, "ρ is not a map into the units"));
    }
    for gi in 0..g.len() {
        for x in 0..nx {
            let expected = g.right(gi) == rho[x];
            match act.get(&(gi, x)) {
                Some(&y) if !expected || y >= nx => {
                    return Err(fail(
                        ActionAxiom::Classical,
                        format!("{}·{} is defined off e_R(γ) = ρ(x)", g.label(gi), carrier.name(x)),
                    ))
                }
                None if expected => {
                    return Err(fail(
                        ActionAxiom::Classical,
                        format!("{}·{} is undefined", g.label(gi), carrier.name(x)),
                    ))
                }
                _ => {}
            }
        }
    }
    for x in 0..nx {
        if act[&(rho[x], x)] != x {
            return Err(fail(ActionAxiom::Classical, format!("ρ(x)x ≠ x at {}", carrier.name(x))));
        }
    }
    for (a, b) in g.composable_pairs() {
        for x in 0..nx {
            let Some(&bx) = act.get(&(b, x)) else { continue };
            if act.get(&(a, bx)) != act.get(&(g.mul(a, b), x)) {
                return Err(fail(
                    ActionAxiom::Classical,
                    format!("{}({}{}) ≠ ({}{}){}", g.label(a), g.label(b), carrier.name(x), g.label(a), g.label(b), carrier.name(x)),
                ));
            }
        }
    }
    Action::validate(
        Arc::clone(g),
        Arc::clone(carrier),
        act.iter().map(|(&(gi, x), &y)| (y, gi, x)),
    )
}

fn pair_index(x2: &Groupoid, carrier: &Universe) -> Result<Vec<(usize, usize)>> {
    let mut out = vec![(0, 0); x2.len()];
    for a in 0..carrier.len() {
        for b in 0..carrier.len() {
            out[x2.elem(&format!("({}|{})", carrier.name(a), carrier.name(b)))?] = (a, b);
        }
    }
    Ok(out)
}

/// `h = {(x1, x2; γ) : (x1; γ, x2) ∈ Φ} : Γ ⊸ X²`.
pub fn action_to_pair_morphism(phi: &Action) -> Result<Morphism> {
    let x2 = Arc::new(pair_groupoid(phi.carrier())?);
    let mut graph = Vec::new();
    for (y, g, x) in phi.triples() {
        graph.push((x2.elem(&format!("({}|{})", phi.carrier.name(y), phi.carrier.name(x)))?, g));
    }
    Morphism::validate(Arc::clone(phi.groupoid()), x2, graph)
}

/// The inverse of [`action_to_pair_morphism`] for a morphism into `X²`.
pub fn morphism_to_action(h: &Morphism, carrier: &Arc<Universe>) -> Result<Action> {
    let x2 = pair_groupoid(carrier)?;
    if **h.target() != x2 {
        return Err(Error::Precondition(format!(
            "`{}` is not the pair groupoid on `{}`",
            h.target().name(),
            carrier.id()
        )));
    }
    let pairs = pair_index(&x2, carrier)?;
    Action::validate(
        Arc::clone(h.source()),
        Arc::clone(carrier),
        h.graph().iter().map(|&(d, g)| (pairs[d].0, g, pairs[d].1)),
    )
}

/// The morphism `h = {(Φ(γ, e_L(δ)); γ)}` of an action of `Γ` on the elements
/// of `Δ` that commutes with right multiplication in `Δ`.
pub fn right_commuting_to_morphism(phi: &Action, delta: &Arc<Groupoid>) -> Result<Morphism> {
    let d = delta;
    if **phi.carrier() != **d.universe() {
        return Err(Error::UniverseMismatch {
            left: phi.carrier().id().to_string(),
            right: d.name().to_string(),
        });
    }
    let id_g = FinRel::identity(Arc::clone(phi.groupoid().universe()));
    let id_d = FinRel::identity(Arc::clone(d.universe()));
    let lhs = phi.relation().compose(&id_g.product(&d.mult_relation()))?;
    let rhs = d.mult_relation().compose(&phi.relation().product(&id_d))?;
    lhs.check_equal(&rhs)
        .map_err(|w| Error::Precondition(format!("Φ(id×m) ≠ m(Φ×id) at {w}")))?;
    let mut graph = BTreeSet::new();
    for (g, x) in phi.domain() {
        let y = phi.act(g, x).expect("in domain");
        let via_unit = phi
            .act(g, d.left(x))
            .ok_or_else(|| Error::Internal(format!("Φ undefined at e_L({})", d.label(x))))?;
        if d.product(y, d.inverse(x)) != Some(via_unit) {
            return Err(Error::Internal(format!("Φ(γ,δ)s(δ) ≠ Φ(γ,e_L(δ)) at {}", d.label(x))));
        }
        graph.insert((via_unit, g));
    }
    Morphism::validate(Arc::clone(phi.groupoid()), Arc::clone(d), graph)
}

/// `Φ∘(h×id)`: the action of `Δ` obtained from a morphism `h : Δ ⊸ Γ`.
pub fn pullback_action(h: &Morphism, s: &Action) -> Result<Action> {
    if h.target() != s.groupoid() {
        return Err(Error::UniverseMismatch {
            left: h.target().name().to_string(),
            right: s.groupoid().name().to_string(),
        });
    }
    let id_x = FinRel::identity(Arc::clone(s.carrier()));
    let rel = s.relation().compose(&h.relation().product(&id_x))?;
    Action::from_rel(Arc::clone(h.source()), Arc::clone(s.carrier()), rel)
}

/// `fΦ = Ψ(id × f)` for a map `f : X → Y`.
pub fn is_equivariant(f: &[usize], s1: &Action, s2: &Action) -> Result<bool> {
    if s1.groupoid() != s2.groupoid() {
        return Err(Error::UniverseMismatch {
            left: s1.groupoid().name().to_string(),
            right: s2.groupoid().name().to_string(),
        });
    }
    if f.len() != s1.carrier().len() || f.iter().any(|&y| y >= s2.carrier().len()) {
        return Err(Error::Precondition("f is not a map between the carriers".into()));
    }
    let frel = FinRel::from_fn(Arc::clone(s1.carrier()), Arc::clone(s2.carrier()), |x| f[x]);
    let id_g = FinRel::identity(Arc::clone(s1.groupoid().universe()));
    let lhs = frel.compose(s1.relation())?;
    let rhs = s2.relation().compose(&id_g.product(&frel))?;
    Ok(lhs == rhs)
}

/// Left multiplication of `Γ` on its own elements.
pub fn left_multiplication(g: &Arc<Groupoid>) -> Result<Action> {
    Action::validate(
        Arc::clone(g),
        Arc::clone(g.universe()),
        g.composable_pairs().into_iter().map(|(a, b)| (g.mul(a, b), a, b)),
    )
}

/// `(e_L(γ); γ, e_R(γ))` on the units.
pub fn unit_action(g: &Arc<Groupoid>) -> Result<Action> {
    let e = Arc::new(crate::morphism::unit_universe(g)?);
    let idx = |u: usize| e.lookup(g.label(u));
    let triples = (0..g.len())
        .map(|x| Ok((idx(g.left(x))?, x, idx(g.right(x))?)))
        .collect::<Result<Vec<_>>>()?;
    Action::validate(Arc::clone(g), e, triples)
}

/// Conjugation `(γγ′s(γ); γ, γ′)` on the isotropy bundle.
pub fn conjugation_action(g: &Arc<Groupoid>) -> Result<Action> {
    let bundle = g.isotropy_bundle();
    let carrier = Arc::new(Universe::new(
        format!("Is({})", g.name()),
        bundle.members().iter().map(|&x| g.label(x).to_string()),
    )?);
    let idx = |x: usize| carrier.lookup(g.label(x));
    let mut triples = Vec::new();
    for a in 0..g.len() {
        for &b in bundle.members() {
            if g.right(a) == g.left(b) {
                let c = g.mul(g.mul(a, b), g.inverse(a));
                triples.push((idx(c)?, a, idx(b)?));
            }
        }
    }
    Action::validate(Arc::clone(g), carrier, triples)
}
