//! Coset spaces `Γ/G`, quotient groupoids and homogeneous spaces.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::Action;
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidData};
use crate::morphism::Morphism;
use crate::relation::{FinRel, Universe};

/// The classes of `γ1 ∼ γ2 ⇔ s(γ1)γ2 ∈ G` with the action `m̃_G` of `Γ`.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    pub groupoid: Arc<Groupoid>,
    pub sub: BTreeSet<usize>,
    /// Indexed like `universe`; each class is named `[least member]`.
    pub classes: Vec<BTreeSet<usize>>,
    /// `π : Γ → Γ/G`.
    pub class_of: Vec<usize>,
    pub universe: Arc<Universe>,
    pub action: Action,
}

impl CosetSpace {
    /// `π` as a relation `Γ ⊸ Γ/G`.
    pub fn projection(&self) -> FinRel {
        FinRel::from_fn(
            Arc::clone(self.groupoid.universe()),
            Arc::clone(&self.universe),
            |x| self.class_of[x],
        )
    }
}

pub fn coset_space(g: &Arc<Groupoid>, sub: &BTreeSet<usize>) -> Result<CosetSpace> {
    if !g.is_wide(sub) {
        return Err(Error::Precondition(format!(
            "subset of `{}` is not a wide subgroupoid",
            g.name()
        )));
    }
    let related = |a: usize, b: usize| g.product(g.inverse(a), b).is_some_and(|c| sub.contains(&c));
    let mut blocks: Vec<BTreeSet<usize>> = Vec::new();
    let mut block_of = vec![usize::MAX; g.len()];
    for a in 0..g.len() {
        if block_of[a] != usize::MAX {
            continue;
        }
        let block: BTreeSet<usize> = (0..g.len()).filter(|&b| related(a, b)).collect();
        for &b in &block {
            if block_of[b] != usize::MAX || (0..g.len()).any(|c| related(b, c) != block.contains(&c)) {
                return Err(Error::Internal(format!(
                    "∼ is not an equivalence at {}",
                    g.label(b)
                )));
            }
            block_of[b] = blocks.len();
        }
        blocks.push(block);
    }
    let names: Vec<String> = blocks
        .iter()
        .map(|b| format!("[{}]", g.label(*b.first().expect("nonempty"))))
        .collect();
    let universe = Arc::new(Universe::new(format!("{}/G", g.name()), names.iter().cloned())?);
    let position: Vec<usize> = names.iter().map(|n| universe.lookup(n)).collect::<Result<_>>()?;
    let mut classes = vec![BTreeSet::new(); blocks.len()];
    for (i, b) in blocks.into_iter().enumerate() {
        classes[position[i]] = b;
    }
    let class_of: Vec<usize> = block_of.iter().map(|&i| position[i]).collect();
    let triples: Vec<(usize, usize, usize)> = g
        .composable_pairs()
        .into_iter()
        .map(|(a, b)| (class_of[g.mul(a, b)], a, class_of[b]))
        .collect();
    let action = Action::validate(Arc::clone(g), Arc::clone(&universe), triples)?;
    Ok(CosetSpace {
        groupoid: Arc::clone(g),
        sub: sub.clone(),
        classes,
        class_of,
        universe,
        action,
    })
}

/// `Γ/G` as a groupoid together with the projection `π : Γ ⊸ Γ/G`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub groupoid: Arc<Groupoid>,
    pub projection: Morphism,
    /// `γ ↦ [γ]` as an element of `groupoid`.
    pub class_of: Vec<usize>,
    pub cosets: CosetSpace,
}

/// Requires `G` wide, inside the isotropy bundle and normal in every
/// isotropy group.
pub fn quotient_groupoid(g: &Arc<Groupoid>, sub: &BTreeSet<usize>) -> Result<Quotient> {
    if !g.is_wide(sub) {
        return Err(Error::Precondition(format!(
            "subset of `{}` is not a wide subgroupoid",
            g.name()
        )));
    }
    if let Some(&x) = sub.iter().find(|&&x| g.left(x) != g.right(x)) {
        return Err(Error::Precondition(format!(
            "{} at unit {} is not in the isotropy bundle",
            g.label(x),
            g.label(g.right(x))
        )));
    }
    for &e in g.units() {
        let iso = g.isotropy(e)?;
        let normal: BTreeSet<usize> = iso.members().intersection(sub).copied().collect();
        for &a in iso.members() {
            for &n in &normal {
                if !normal.contains(&g.mul(g.mul(a, n), g.inverse(a))) {
                    return Err(Error::Precondition(format!(
                        "G is not normal in the isotropy group at unit {}",
                        g.label(e)
                    )));
                }
            }
        }
    }
    let cosets = coset_space(g, sub)?;
    let pi = &cosets.class_of;
    let mut table: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (a, b) in g.composable_pairs() {
        let c = pi[g.mul(a, b)];
        if *table.entry((pi[a], pi[b])).or_insert(c) != c {
            return Err(Error::Internal(format!(
                "m_G is not single-valued at ({}, {})",
                g.label(a),
                g.label(b)
            )));
        }
    }
    let mut inverse: Vec<Option<usize>> = vec![None; cosets.classes.len()];
    for x in 0..g.len() {
        let s = pi[g.inverse(x)];
        if *inverse[pi[x]].get_or_insert(s) != s {
            return Err(Error::Internal(format!("s_G is not well defined at {}", g.label(x))));
        }
    }
    let nm = |c: usize| cosets.universe.name(c).into_owned();
    let data = GroupoidData {
        name: format!("{}/G", g.name()),
        elements: (0..cosets.classes.len()).map(nm).collect(),
        units: g.units().iter().map(|&e| nm(pi[e])).collect::<BTreeSet<_>>().into_iter().collect(),
        inverse: inverse
            .iter()
            .enumerate()
            .map(|(c, s)| (nm(c), nm(s.expect("every class is hit"))))
            .collect(),
        compose: table.iter().map(|(&(a, b), &c)| (nm(a), nm(b), nm(c))).collect(),
    };
    let groupoid = Arc::new(Groupoid::validate(&data)?);
    let class_of: Vec<usize> = pi
        .iter()
        .map(|&c| groupoid.elem(&nm(c)))
        .collect::<Result<_>>()?;
    let projection = Morphism::validate(
        Arc::clone(g),
        Arc::clone(&groupoid),
        (0..g.len()).map(|x| (class_of[x], x)),
    )?;
    if !projection.is_surjective() {
        return Err(Error::Internal("π is not surjective".into()));
    }
    Ok(Quotient {
        groupoid,
        projection,
        class_of,
        cosets,
    })
}

/// The subgroupoid `G` and bijection `ψ : X → Γ/G` for a transitive action
/// with a saturating section `p` of `ρ`.
#[derive(Debug, Clone)]
pub struct Homogeneous {
    pub sub: BTreeSet<usize>,
    pub cosets: CosetSpace,
    /// `x ↦ [γ_x]` as an index into `cosets.universe`.
    pub psi: Vec<usize>,
}

/// `p` maps each unit of `Γ` to a point of the carrier.
pub fn homogeneous_identification(phi: &Action, p: &BTreeMap<usize, usize>) -> Result<Homogeneous> {
    let g = phi.groupoid();
    let x = phi.carrier();
    if !g.is_transitive() {
        return Err(Error::NotTransitive(g.name().to_string()));
    }
    for &e in g.units() {
        match p.get(&e) {
            Some(&px) if px < x.len() && phi.rho(px) == e => {}
            _ => {
                return Err(Error::Precondition(format!(
                    "p is not a section of ρ at {}",
                    g.label(e)
                )))
            }
        }
    }
    let reach = |c: usize| phi.act(c, p[&g.right(c)]).expect("ρ(p(e_R γ)) = e_R γ");
    let mut witness: Vec<Option<usize>> = vec![None; x.len()];
    for c in 0..g.len() {
        witness[reach(c)].get_or_insert(c);
    }
    if let Some(missing) = witness.iter().position(Option::is_none) {
        return Err(Error::Precondition(format!(
            "Φ(Γ × p(E)) misses {}",
            x.name(missing)
        )));
    }
    let sub: BTreeSet<usize> = (0..g.len()).filter(|&c| reach(c) == p[&g.left(c)]).collect();
    let cosets = coset_space(g, &sub)
        .map_err(|e| Error::Internal(format!("G is not a wide subgroupoid: {e}")))?;
    let psi: Vec<usize> = witness
        .iter()
        .map(|w| cosets.class_of[w.expect("saturated")])
        .collect();
    if psi.iter().collect::<BTreeSet<_>>().len() != cosets.classes.len() || psi.len() != cosets.classes.len() {
        return Err(Error::Internal("ψ is not a bijection".into()));
    }
    let psi_rel = FinRel::from_fn(Arc::clone(x), Arc::clone(&cosets.universe), |i| psi[i]);
    let id_g = FinRel::identity(Arc::clone(g.universe()));
    let lhs = cosets.action.relation().compose(&id_g.product(&psi_rel))?;
    let rhs = psi_rel.compose(phi.relation())?;
    lhs.check_equal(&rhs)
        .map_err(|w| Error::Internal(format!("m̃_G(id × ψ) ≠ ψΦ at {w}")))?;
    Ok(Homogeneous { sub, cosets, psi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{left_multiplication, unit_action};
    use crate::catalog;
    use crate::search::find_isomorphism;

    #[test]
    fn whole_groupoid_gives_units() {
        for (_, g) in catalog::catalog() {
            let g = Arc::new(g);
            let all: BTreeSet<usize> = (0..g.len()).collect();
            let c = coset_space(&g, &all).unwrap();
            assert_eq!(c.classes.len(), g.units().len());
            for x in 0..g.len() {
                assert!(c.classes[c.class_of[x]].contains(&g.left(x)));
            }
        }
    }

    #[test]
    fn units_give_singletons() {
        let g = Arc::new(catalog::p3());
        let c = coset_space(&g, &g.unit_set()).unwrap();
        assert!(c.classes.iter().all(|b| b.len() == 1));
        assert!(coset_space(&g, &BTreeSet::new()).is_err());
    }

    #[test]
    fn quotient_by_units_is_relabeling() {
        let g = Arc::new(catalog::z2_swap());
        let q = quotient_groupoid(&g, &g.unit_set()).unwrap();
        assert!(q.projection.is_bijective());
        assert!(find_isomorphism(&q.groupoid, &g).is_some());
    }

    #[test]
    fn z4_mod_two() {
        let z4 = Arc::new(catalog::z4());
        let sub: BTreeSet<usize> = ["0", "2"].iter().map(|n| z4.elem(n).unwrap()).collect();
        let q = quotient_groupoid(&z4, &sub).unwrap();
        assert!(find_isomorphism(&q.groupoid, &catalog::z2()).is_some());
    }

    #[test]
    fn quotient_rejects_non_isotropy() {
        let g = Arc::new(catalog::p2());
        let all: BTreeSet<usize> = (0..g.len()).collect();
        assert!(matches!(quotient_groupoid(&g, &all), Err(Error::Precondition(_))));
    }

    #[test]
    fn left_multiplication_is_homogeneous_over_units() {
        let g = Arc::new(catalog::p3());
        let phi = left_multiplication(&g).unwrap();
        let p: BTreeMap<usize, usize> = g.units().iter().map(|&e| (e, e)).collect();
        let h = homogeneous_identification(&phi, &p).unwrap();
        assert_eq!(h.sub, g.unit_set());
    }

    #[test]
    fn unit_action_is_homogeneous_over_everything() {
        let g = Arc::new(catalog::p2());
        let phi = unit_action(&g).unwrap();
        let p: BTreeMap<usize, usize> = g
            .units()
            .iter()
            .map(|&e| (e, phi.carrier().lookup(g.label(e)).unwrap()))
            .collect();
        let h = homogeneous_identification(&phi, &p).unwrap();
        assert_eq!(h.sub.len(), g.len());
        assert_eq!(h.cosets.classes.len(), 2);
    }

    #[test]
    fn homogeneous_rejects_intransitive() {
        let g = Arc::new(catalog::s2());
        let phi = left_multiplication(&g).unwrap();
        let p: BTreeMap<usize, usize> = g.units().iter().map(|&e| (e, e)).collect();
        assert!(matches!(homogeneous_identification(&phi, &p), Err(Error::NotTransitive(_))));
    }
}
