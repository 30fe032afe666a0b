//! Small named groupoids used throughout the tests and the CLI.

use std::sync::Arc;

use crate::builders::{
    equivalence_groupoid, group_bundle, group_groupoid, pair_groupoid, set_groupoid,
    transformation_groupoid, GroupAction, GroupTable, ProductForm,
};
use crate::groupoid::Groupoid;
use crate::relation::Universe;

fn universe(id: &str, names: &[&str]) -> Universe {
    Universe::new(id, names.iter().copied()).expect("catalog universe")
}

pub fn one_point() -> Groupoid {
    set_groupoid(&universe("pt", &["*"])).unwrap().with_name("pt")
}

/// The set groupoid on two points.
pub fn s2() -> Groupoid {
    set_groupoid(&universe("S2", &["a", "b"])).unwrap()
}

pub fn p2() -> Groupoid {
    pair_groupoid(&universe("P", &["1", "2"])).unwrap().with_name("P2")
}

pub fn p3() -> Groupoid {
    pair_groupoid(&universe("P", &["1", "2", "3"])).unwrap().with_name("P3")
}

pub fn trivial_group() -> Groupoid {
    group_groupoid(&GroupTable::trivial()).unwrap()
}

pub fn z2() -> Groupoid {
    group_groupoid(&GroupTable::cyclic(2)).unwrap()
}

pub fn z4() -> Groupoid {
    group_groupoid(&GroupTable::cyclic(4)).unwrap()
}

pub fn klein() -> Groupoid {
    group_groupoid(&GroupTable::klein()).unwrap()
}

pub fn bundle_z2_trivial() -> Groupoid {
    group_bundle(&[GroupTable::cyclic(2), GroupTable::trivial()])
        .unwrap()
        .with_name("Z2⊔1")
}

pub fn z2_swap_action() -> GroupAction {
    GroupAction::shift(GroupTable::cyclic(2), universe("X", &["p", "q"])).unwrap()
}

/// The transformation groupoid of `Z2` swapping `p` and `q`.
pub fn z2_swap() -> Groupoid {
    transformation_groupoid(&z2_swap_action()).unwrap().with_name("Z2⋉pq")
}

pub fn product_form_xy_z2() -> ProductForm {
    ProductForm::new(Arc::new(universe("E", &["x", "y"])), GroupTable::cyclic(2)).unwrap()
}

pub fn equivalence_12_3() -> Groupoid {
    equivalence_groupoid(&universe("X", &["1", "2", "3"]), &[vec!["1", "2"], vec!["3"]])
        .unwrap()
        .with_name("R12|3")
}

/// Every catalog groupoid with a short name.
pub fn catalog() -> Vec<(&'static str, Groupoid)> {
    vec![
        ("pt", one_point()),
        ("s2", s2()),
        ("p2", p2()),
        ("p3", p3()),
        ("z2", z2()),
        ("z4", z4()),
        ("klein", klein()),
        ("bundle", bundle_z2_trivial()),
        ("swap", z2_swap()),
        ("pf", product_form_xy_z2().groupoid().clone().with_name("E×Z2×E")),
        ("equiv", equivalence_12_3()),
    ]
}

pub fn by_name(name: &str) -> Option<Groupoid> {
    match name {
        "trivial" => Some(trivial_group()),
        _ => catalog().into_iter().find(|(n, _)| *n == name).map(|(_, g)| g),
    }
}
