mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use common::{arc_catalog, elems};
use zgroupoid::action::{coset_space, is_equivariant, quotient_groupoid, unit_action};
use zgroupoid::catalog;
use zgroupoid::morphism::{
    epi_mono_factorization, find_non_epi_witness, quotient_by_kernel, to_orbit_pair, to_orbit_relation,
};
use zgroupoid::search::{enum_morphisms, find_isomorphism};
use zgroupoid::Morphism;

fn catalog_morphisms() -> Vec<Morphism> {
    let all = arc_catalog();
    let mut out = Vec::new();
    for (_, g) in &all {
        for (_, d) in &all {
            if g.len() * d.len() <= 20 {
                out.extend(enum_morphisms(g, d).unwrap());
            }
        }
    }
    out
}

#[test]
fn whole_groupoid_cosets_are_units() {
    for (name, g) in arc_catalog() {
        let all: BTreeSet<usize> = (0..g.len()).collect();
        let c = coset_space(&g, &all).unwrap();
        let units = unit_action(&g).unwrap();
        // [γ] ↦ e_L(γ)
        let to_unit: Vec<usize> = c
            .classes
            .iter()
            .map(|cls| {
                let lefts: BTreeSet<usize> = cls.iter().map(|&x| g.left(x)).collect();
                assert_eq!(lefts.len(), 1, "{name}");
                units.carrier().lookup(g.label(*lefts.first().unwrap())).unwrap()
            })
            .collect();
        assert_eq!(to_unit.iter().collect::<BTreeSet<_>>().len(), g.units().len(), "{name}");
        assert!(is_equivariant(&to_unit, &c.action, &units).unwrap(), "{name}");
    }
}

#[test]
fn isotropy_cosets_are_the_orbit_relation() {
    for (name, g) in arc_catalog() {
        let bundle = g.isotropy_bundle().members().clone();
        let c = coset_space(&g, &bundle).unwrap();
        let pair_of: Vec<(usize, usize)> = c
            .classes
            .iter()
            .map(|cls| {
                let pairs: BTreeSet<(usize, usize)> = cls.iter().map(|&x| (g.left(x), g.right(x))).collect();
                assert_eq!(pairs.len(), 1, "{name}");
                *pairs.first().unwrap()
            })
            .collect();
        let relation: BTreeSet<(usize, usize)> = (0..g.len()).map(|x| (g.left(x), g.right(x))).collect();
        assert_eq!(pair_of.iter().copied().collect::<BTreeSet<_>>(), relation, "{name}");
        assert_eq!(pair_of.len(), relation.len(), "{name}");
        let got: BTreeSet<((usize, usize), usize, (usize, usize))> = c
            .action
            .triples()
            .into_iter()
            .map(|(y, a, x)| (pair_of[y], a, pair_of[x]))
            .collect();
        let mut expected = BTreeSet::new();
        for a in 0..g.len() {
            for &e in g.units() {
                if relation.contains(&(g.right(a), e)) {
                    expected.insert(((g.left(a), e), a, (g.right(a), e)));
                }
            }
        }
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn pair_groupoid_over_equivalence_relation() {
    let x2 = Arc::new(catalog::p3());
    let r = elems(&x2, &["(1|1)", "(1|2)", "(2|1)", "(2|2)", "(3|3)"]);
    let c = coset_space(&x2, &r).unwrap();
    let block = |p: char| if p == '3' { 1 } else { 0 };
    let coords = |i: usize| {
        let name: Vec<char> = x2.label(i).chars().collect();
        (name[1], name[3])
    };
    // [(x1|x2)] ↦ (x1, [x2])
    let xy: Vec<(char, usize)> = c
        .classes
        .iter()
        .map(|cls| {
            let images: BTreeSet<(char, usize)> = cls
                .iter()
                .map(|&m| {
                    let (x1, x2) = coords(m);
                    (x1, block(x2))
                })
                .collect();
            assert_eq!(images.len(), 1);
            *images.first().unwrap()
        })
        .collect();
    assert_eq!(xy.iter().collect::<BTreeSet<_>>().len(), 6);
    let got: BTreeSet<((char, usize), usize, (char, usize))> = c
        .action
        .triples()
        .into_iter()
        .map(|(y, a, x)| (xy[y], a, xy[x]))
        .collect();
    let mut expected = BTreeSet::new();
    for a in 0..x2.len() {
        let (x1, x2c) = coords(a);
        for y in [0, 1] {
            expected.insert(((x1, y), a, (x2c, y)));
        }
    }
    assert_eq!(got, expected);
}

#[test]
fn z4_modulo_its_order_two_subgroup() {
    let z4 = Arc::new(catalog::z4());
    let q = quotient_groupoid(&z4, &elems(&z4, &["0", "2"])).unwrap();
    assert_eq!(q.groupoid.len(), 2);
    assert!(find_isomorphism(&q.groupoid, &catalog::z2()).is_some());
    assert!(q.projection.is_surjective());
}

#[test]
fn isotropy_quotient_is_orbit_relation() {
    for (name, g) in arc_catalog() {
        let q = quotient_groupoid(&g, g.isotropy_bundle().members()).unwrap();
        assert!(find_isomorphism(&q.groupoid, &g.orbit_relation().unwrap()).is_some(), "{name}");
        let units = quotient_groupoid(&g, &g.unit_set()).unwrap();
        assert!(units.projection.is_bijective(), "{name}");
    }
}

#[test]
fn kernel_factorization_of_full_domain_morphisms() {
    let mut seen = 0;
    for h in catalog_morphisms().into_iter().filter(|h| h.domain().len() == h.source().len()) {
        let (pi, reduced) = quotient_by_kernel(&h).unwrap();
        assert!(reduced.is_mono());
        assert!(pi.is_surjective());
        assert_eq!(reduced.compose(&pi).unwrap(), h);
        let by_class: BTreeMap<usize, BTreeSet<usize>> = h
            .graph()
            .iter()
            .map(|&(d, x)| (pi.apply(x)[0], d))
            .fold(BTreeMap::new(), |mut acc, (c, d)| {
                acc.entry(c).or_insert_with(BTreeSet::new).insert(d);
                acc
            });
        for (c, ds) in by_class {
            assert_eq!(reduced.apply(c).into_iter().collect::<BTreeSet<_>>(), ds);
        }
        seen += 1;
    }
    assert!(seen > 50);
}

#[test]
fn epi_mono_factorization_of_every_morphism() {
    for h in catalog_morphisms() {
        let (h1, h2) = epi_mono_factorization(&h).unwrap();
        assert!(h1.is_surjective());
        assert!(h2.is_mono());
        assert_eq!(h2.compose(&h1).unwrap(), h);
        assert!(find_non_epi_witness(&h1).unwrap().is_none());
    }
}

#[test]
fn orbit_pair_factors_through_orbit_relation() {
    for (name, g) in arc_catalog() {
        let h = to_orbit_pair(&g).unwrap();
        let (h1, h2) = epi_mono_factorization(&h).unwrap();
        let r = to_orbit_relation(&g).unwrap();
        assert!(find_isomorphism(h1.target(), r.target()).is_some(), "{name}");
        assert_eq!(h1.target().len(), r.target().len(), "{name}");
        assert!(h2.is_mono(), "{name}");
    }
}

#[test]
fn z4_onto_z2() {
    let (z4, z2) = (Arc::new(catalog::z4()), Arc::new(catalog::z2()));
    let onto: Vec<Morphism> = enum_morphisms(&z4, &z2).unwrap().into_iter().filter(Morphism::is_surjective).collect();
    assert_eq!(onto.len(), 1);
    let (pi, reduced) = quotient_by_kernel(&onto[0]).unwrap();
    assert_eq!(pi.target().len(), 2);
    assert!(reduced.is_bijective());
}
