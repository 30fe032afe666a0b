#![allow(dead_code)]

pub mod oracles;

use std::collections::BTreeSet;
use std::sync::Arc;

use zgroupoid::catalog;
use zgroupoid::search::enum_morphisms;
use zgroupoid::{Groupoid, Morphism};

pub fn arc_catalog() -> Vec<(&'static str, Arc<Groupoid>)> {
    catalog::catalog().into_iter().map(|(n, g)| (n, Arc::new(g))).collect()
}

/// Catalog groupoids with at most `n` elements.
pub fn catalog_up_to(n: usize) -> Vec<(&'static str, Arc<Groupoid>)> {
    arc_catalog().into_iter().filter(|(_, g)| g.len() <= n).collect()
}

/// S2, Z2, P2 and the one-point groupoid.
pub fn small_family() -> Vec<Arc<Groupoid>> {
    vec![
        Arc::new(catalog::s2()),
        Arc::new(catalog::z2()),
        Arc::new(catalog::p2()),
        Arc::new(catalog::one_point()),
    ]
}

/// Every morphism between every ordered pair of the small family.
pub fn family_morphisms() -> Vec<Morphism> {
    let fam = small_family();
    let mut out = Vec::new();
    for g in &fam {
        for d in &fam {
            out.extend(enum_morphisms(g, d).unwrap());
        }
    }
    out
}

/// All subsets of `0..n` as sets.
pub fn subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0u64..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

pub fn elems(g: &Groupoid, names: &[&str]) -> BTreeSet<usize> {
    names.iter().map(|n| g.elem(n).unwrap()).collect()
}
