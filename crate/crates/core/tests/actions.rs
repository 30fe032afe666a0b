mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::oracles::{check_consequences, triple_set};
use common::{arc_catalog, family_morphisms};
use zgroupoid::action::{
    action_groupoid, action_groupoid_functor, action_to_pair_morphism, classical_to_relational,
    conjugation_action, functor_to_zm, is_equivariant, left_multiplication, morphism_to_action,
    pullback_action, right_commuting_to_morphism, unit_action,
};
use zgroupoid::builders::{pair_groupoid, set_groupoid, transformation_groupoid};
use zgroupoid::catalog;
use zgroupoid::morphism::{group_action_morphism, to_orbit_pair, wide_inclusion};
use zgroupoid::search::{enum_actions, enum_actions_classical, enum_morphisms, find_isomorphism};
use zgroupoid::{Action, Error, Groupoid, Universe};

fn carriers() -> Vec<Arc<Universe>> {
    (0..=3)
        .map(|n| Arc::new(Universe::new(format!("X{n}"), (1..=n).map(|i| format!("x{i}"))).unwrap()))
        .collect()
}

fn catalog_actions(max_groupoid: usize) -> Vec<Action> {
    let mut out = Vec::new();
    for (_, g) in arc_catalog().into_iter().filter(|(_, g)| g.len() <= max_groupoid) {
        for x in carriers() {
            out.extend(enum_actions(&g, &x).unwrap());
        }
    }
    out
}

#[test]
fn consequences_hold_for_every_enumerated_action() {
    let all = catalog_actions(9);
    assert!(all.len() > 100);
    for phi in &all {
        check_consequences(phi);
        let (rho, map) = phi.as_mapping();
        assert_eq!(classical_to_relational(phi.groupoid(), phi.carrier(), &rho, &map).unwrap(), *phi);
    }
}

#[test]
fn pair_morphism_round_trips() {
    for (_, g) in arc_catalog() {
        for x in carriers() {
            let x2 = Arc::new(pair_groupoid(&x).unwrap());
            let hs = enum_morphisms(&g, &x2).unwrap();
            let actions = enum_actions(&g, &x).unwrap();
            assert_eq!(hs.len(), actions.len());
            for h in &hs {
                let phi = morphism_to_action(h, &x).unwrap();
                assert_eq!(action_to_pair_morphism(&phi).unwrap(), *h);
            }
            for phi in &actions {
                let h = action_to_pair_morphism(phi).unwrap();
                assert_eq!(morphism_to_action(&h, &x).unwrap(), *phi);
            }
        }
    }
}

#[test]
fn two_enumerators_agree() {
    for (name, g) in arc_catalog() {
        for x in carriers() {
            let a: BTreeSet<_> = enum_actions(&g, &x).unwrap().iter().map(triple_set).collect();
            let b: BTreeSet<_> = enum_actions_classical(&g, &x).unwrap().iter().map(triple_set).collect();
            assert_eq!(a, b, "{name} on {}", x.id());
        }
    }
}

#[test]
fn standard_actions_validate() {
    for (_, g) in arc_catalog() {
        for phi in [
            left_multiplication(&g).unwrap(),
            unit_action(&g).unwrap(),
            conjugation_action(&g).unwrap(),
        ] {
            check_consequences(&phi);
        }
        let units = unit_action(&g).unwrap();
        let h = action_to_pair_morphism(&units).unwrap();
        assert_eq!(h, to_orbit_pair(&g).unwrap());
    }
}

#[test]
fn group_action_reproduces_group_action_morphism() {
    let swap = catalog::z2_swap_action();
    let h = group_action_morphism(&swap).unwrap();
    let phi = morphism_to_action(&h, swap.carrier()).unwrap();
    assert_eq!(action_to_pair_morphism(&phi).unwrap(), h);
    let ag = action_groupoid(&phi).unwrap();
    let tg = transformation_groupoid(&swap).unwrap();
    assert_eq!(ag.groupoid.len(), tg.len());
    assert!(find_isomorphism(&ag.groupoid, &tg).is_some());
}

#[test]
fn action_groupoids_validate() {
    for phi in catalog_actions(4) {
        let ag = action_groupoid(&phi).unwrap();
        assert_eq!(ag.groupoid.len(), phi.domain().len());
        assert_eq!(ag.groupoid.units().len(), phi.carrier().len());
    }
}

#[test]
fn functor_round_trip_on_family() {
    for h in family_morphisms() {
        let fd = action_groupoid_functor(&h).unwrap();
        assert_eq!(functor_to_zm(&fd.action, h.target(), &fd.map).unwrap(), h);
    }
}

/// `(h0(γ)δ; γ, δ)`: left multiplication of `Δ` pulled back along `h0`.
fn composite_with_left_multiplication(h0: &zgroupoid::Morphism) -> Action {
    let d = h0.target();
    let mut triples = Vec::new();
    for &(dg, g) in h0.graph() {
        for x in 0..d.len() {
            if let Some(y) = d.product(dg, x) {
                triples.push((y, g, x));
            }
        }
    }
    Action::validate(Arc::clone(h0.source()), Arc::clone(d.universe()), triples).unwrap()
}

#[test]
fn right_commuting_actions_give_morphisms() {
    for h0 in family_morphisms() {
        let phi = composite_with_left_multiplication(&h0);
        assert_eq!(phi, pullback_action(&h0, &left_multiplication(h0.target()).unwrap()).unwrap());
        assert_eq!(right_commuting_to_morphism(&phi, h0.target()).unwrap(), h0);
    }
    for (_, g) in arc_catalog() {
        let l = left_multiplication(&g).unwrap();
        assert_eq!(right_commuting_to_morphism(&l, &g).unwrap(), zgroupoid::Morphism::identity(&g));
    }
}

#[test]
fn unit_action_does_not_commute_with_right_multiplication() {
    let p2 = Arc::new(catalog::p2());
    let phi = unit_action(&p2).unwrap();
    let e = Arc::new(set_groupoid(phi.carrier()).unwrap());
    assert!(matches!(right_commuting_to_morphism(&phi, &e), Err(Error::Precondition(_))));
}

#[test]
fn pullbacks_are_functorial() {
    let ms = family_morphisms();
    for h in &ms {
        let id = zgroupoid::Morphism::identity(h.target());
        for x in carriers().into_iter().take(3) {
            for s in enum_actions(h.target(), &x).unwrap() {
                assert_eq!(pullback_action(&id, &s).unwrap(), s);
                let hs = pullback_action(h, &s).unwrap();
                for k in ms.iter().filter(|k| k.target() == h.source()) {
                    let lhs = pullback_action(&h.compose(k).unwrap(), &s).unwrap();
                    assert_eq!(lhs, pullback_action(k, &hs).unwrap());
                }
            }
        }
    }
}

#[test]
fn pullback_along_wide_inclusion_restricts() {
    let g = Arc::new(catalog::z2_swap());
    let units = g.unit_set();
    let i = wide_inclusion(&g, &units).unwrap();
    let s = left_multiplication(&g).unwrap();
    let pulled = pullback_action(&i, &s).unwrap();
    let sub = i.source();
    let expected: BTreeSet<(usize, usize, usize)> = s
        .triples()
        .into_iter()
        .filter(|&(_, a, _)| units.contains(&a))
        .map(|(y, a, x)| (y, sub.elem(g.label(a)).unwrap(), x))
        .collect();
    assert_eq!(triple_set(&pulled), expected);
}

#[test]
fn pullback_preserves_equivariance() {
    let g: Arc<Groupoid> = Arc::new(catalog::z2());
    let x = &carriers()[2];
    let actions = enum_actions(&g, x).unwrap();
    let maps: Vec<Vec<usize>> = vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]];
    for h in enum_morphisms(&Arc::new(catalog::z2()), &g).unwrap() {
        for s1 in &actions {
            for s2 in &actions {
                for f in &maps {
                    if is_equivariant(f, s1, s2).unwrap() {
                        let p1 = pullback_action(&h, s1).unwrap();
                        let p2 = pullback_action(&h, s2).unwrap();
                        assert!(is_equivariant(f, &p1, &p2).unwrap());
                    }
                }
            }
        }
    }
}
