//! Action groupoids, and morphisms as functors out of them.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{morphism_to_action, Action};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidData};
use crate::morphism::{check_functor, to_orbit_pair, unit_universe, Morphism};

/// `Γ ×_Φ X` on `D(Φ)`, with arrows `(γ|x) : x → γx`.
#[derive(Debug, Clone)]
pub struct ActionGroupoid {
    pub groupoid: Arc<Groupoid>,
    /// `(γ, x)` of each element.
    pub coords: Vec<(usize, usize)>,
}

impl ActionGroupoid {
    pub fn element(&self, g: usize, x: usize) -> Option<usize> {
        self.coords.iter().position(|&c| c == (g, x))
    }
}

pub fn action_groupoid(phi: &Action) -> Result<ActionGroupoid> {
    let g = phi.groupoid();
    let x = phi.carrier();
    let name = |a: usize, p: usize| format!("({}|{})", g.label(a), x.name(p));
    let domain = phi.domain();
    let mut data = GroupoidData {
        name: format!("{}⋉{}", g.name(), x.id()),
        ..GroupoidData::default()
    };
    for &(a, p) in &domain {
        let ap = phi.act(a, p).expect("in domain");
        data.elements.push(name(a, p));
        data.inverse.push((name(a, p), name(g.inverse(a), ap)));
        for b in 0..g.len() {
            if let Some(c) = g.product(b, a) {
                data.compose.push((name(b, ap), name(a, p), name(c, p)));
            }
        }
    }
    data.units = (0..x.len()).map(|p| name(phi.rho(p), p)).collect();
    let groupoid = Arc::new(Groupoid::validate(&data)?);
    let mut coords = vec![(0, 0); groupoid.len()];
    for &(a, p) in &domain {
        coords[groupoid.elem(&name(a, p))?] = (a, p);
    }
    Ok(ActionGroupoid { groupoid, coords })
}

/// The action `φ_h` of `Γ` on the units `F` of `Δ`, its action groupoid and
/// the functor `(γ, f) ↦ h_f^R(γ)` into `Δ`.
#[derive(Debug, Clone)]
pub struct GroupoidFunctor {
    pub action: Action,
    pub action_groupoid: ActionGroupoid,
    pub map: Vec<usize>,
}

pub fn action_groupoid_functor(h: &Morphism) -> Result<GroupoidFunctor> {
    let d = h.target();
    let f_universe = Arc::new(unit_universe(d)?);
    let phi_h = morphism_to_action(&to_orbit_pair(d)?.compose(h)?, &f_universe)?;
    let ag = action_groupoid(&phi_h)?;
    let mut map = Vec::with_capacity(ag.groupoid.len());
    for &(g, fi) in &ag.coords {
        let f = d.elem(&f_universe.name(fi))?;
        let fiber = h.fiber_map_right(f)?;
        let image = fiber
            .iter()
            .find(|&&(x, _)| x == g)
            .map(|&(_, y)| y)
            .ok_or_else(|| Error::Internal(format!("h_f^R undefined at {}", h.source().label(g))))?;
        map.push(image);
    }
    check_functor(&ag.groupoid, d, &map)?;
    Ok(GroupoidFunctor {
        action: phi_h,
        action_groupoid: ag,
        map,
    })
}

/// `Gr(h) = {(K(γ, f), γ)}` for a functor `K : Γ ×_φ F → Δ` with `K(e, f) = f`.
pub fn functor_to_zm(phi: &Action, delta: &Arc<Groupoid>, k: &[usize]) -> Result<Morphism> {
    let ag = action_groupoid(phi)?;
    check_functor(&ag.groupoid, delta, k)?;
    let f_universe = unit_universe(delta)?;
    if f_universe != **phi.carrier() {
        return Err(Error::Precondition(format!(
            "the carrier is not the unit set of `{}`",
            delta.name()
        )));
    }
    for &u in ag.groupoid.units() {
        let (_, fi) = ag.coords[u];
        if delta.label(k[u]) != phi.carrier().name(fi) {
            return Err(Error::NotFunctor(format!(
                "K(e, f) ≠ f at {}",
                ag.groupoid.label(u)
            )));
        }
    }
    let graph: BTreeSet<(usize, usize)> = ag.coords.iter().enumerate().map(|(z, &(g, _))| (k[z], g)).collect();
    Morphism::validate(Arc::clone(phi.groupoid()), Arc::clone(delta), graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{left_multiplication, unit_action};
    use crate::builders::transformation_groupoid;
    use crate::catalog;
    use crate::morphism::group_action_morphism;
    use crate::search::find_isomorphism;

    #[test]
    fn swap_action_groupoid_is_transformation_groupoid() {
        let swap = catalog::z2_swap_action();
        let phi = morphism_to_action(&group_action_morphism(&swap).unwrap(), swap.carrier()).unwrap();
        let ag = action_groupoid(&phi).unwrap();
        assert!(find_isomorphism(&ag.groupoid, &transformation_groupoid(&swap).unwrap()).is_some());
    }

    #[test]
    fn unit_action_groupoid_is_isomorphic() {
        for (_, g) in catalog::catalog() {
            let g = Arc::new(g);
            let ag = action_groupoid(&unit_action(&g).unwrap()).unwrap();
            assert_eq!(ag.groupoid.len(), g.len());
            assert!(find_isomorphism(&ag.groupoid, &g).is_some());
        }
    }

    #[test]
    fn left_multiplication_domain() {
        let g = Arc::new(catalog::p3());
        let ag = action_groupoid(&left_multiplication(&g).unwrap()).unwrap();
        assert_eq!(ag.groupoid.len(), g.composable_pairs().len());
    }

    #[test]
    fn identity_gives_first_projection() {
        for (_, g) in catalog::catalog() {
            let g = Arc::new(g);
            let id = Morphism::identity(&g);
            let fd = action_groupoid_functor(&id).unwrap();
            for (z, &(a, _)) in fd.action_groupoid.coords.iter().enumerate() {
                assert_eq!(fd.map[z], a);
            }
            assert_eq!(functor_to_zm(&fd.action, &g, &fd.map).unwrap(), id);
        }
    }

    #[test]
    fn rejects_bad_unit_condition() {
        let g = Arc::new(catalog::s2());
        let fd = action_groupoid_functor(&Morphism::identity(&g)).unwrap();
        let swapped: Vec<usize> = fd.map.iter().map(|&x| 1 - x).collect();
        assert!(functor_to_zm(&fd.action, &g, &swapped).is_err());
    }
}
