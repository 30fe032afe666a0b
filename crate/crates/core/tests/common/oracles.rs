//! Independent oracles shared by the test suites and the acceptance run.

use std::collections::{BTreeMap, BTreeSet};

use zgroupoid::{Action, Error, Groupoid, GroupoidAxiom, GroupoidData, Morphism};

pub type Triple = (String, String, String);

/// First failing axiom of raw data, checked pointwise in the library's order.
pub fn oracle(data: &GroupoidData) -> Option<GroupoidAxiom> {
    let el: BTreeSet<&str> = data.elements.iter().map(String::as_str).collect();
    let units: BTreeSet<&str> = data.units.iter().map(String::as_str).collect();
    let s: BTreeMap<&str, &str> = data.inverse.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let m: BTreeSet<(&str, &str, &str)> = data
        .compose
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    let out = |a: &str, b: &str| -> BTreeSet<&str> {
        m.iter().filter(|t| t.0 == a && t.1 == b).map(|t| t.2).collect()
    };

    if el.iter().any(|x| s.get(s[x]) != Some(x)) {
        return Some(GroupoidAxiom::Involution);
    }
    for &x in &el {
        let left: BTreeSet<&str> = units.iter().flat_map(|u| out(u, x)).collect();
        let right: BTreeSet<&str> = units.iter().flat_map(|u| out(x, u)).collect();
        if left != BTreeSet::from([x]) || right != BTreeSet::from([x]) {
            return Some(GroupoidAxiom::UnitLaw);
        }
    }
    for &a in &el {
        for &b in &el {
            for &c in &el {
                let lhs: BTreeSet<&str> = out(a, b).into_iter().flat_map(|t| out(t, c)).collect();
                let rhs: BTreeSet<&str> = out(b, c).into_iter().flat_map(|t| out(a, t)).collect();
                if lhs != rhs {
                    return Some(GroupoidAxiom::Associativity);
                }
            }
        }
    }
    for &a in &el {
        for &b in &el {
            let lhs: BTreeSet<&str> = out(a, b).into_iter().map(|c| s[c]).collect();
            if lhs != out(s[b], s[a]) {
                return Some(GroupoidAxiom::AntiHomomorphism);
            }
        }
    }
    for &x in &el {
        let o = out(s[x], x);
        if o.is_empty() || !o.is_subset(&units) {
            return Some(GroupoidAxiom::InverseUnits);
        }
    }
    let single = |a: &str, b: &str| {
        let o = out(a, b);
        (o.len() == 1).then(|| *o.first().unwrap())
    };
    for &a in &el {
        for &b in &el {
            if out(a, b).len() > 1 {
                return Some(GroupoidAxiom::Composability);
            }
        }
    }
    for &a in &el {
        for &b in &el {
            let er = single(s[a], a).unwrap();
            let el_b = single(b, s[b]).unwrap();
            if single(a, b).is_some() != (er == el_b) {
                return Some(GroupoidAxiom::Composability);
            }
        }
    }
    None
}

pub fn axiom_of(data: &GroupoidData) -> Option<GroupoidAxiom> {
    match Groupoid::validate(data) {
        Ok(_) => None,
        Err(Error::GroupoidAxiom { axiom, .. }) => Some(axiom),
        Err(other) => panic!("unexpected error {other}"),
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Mutation {
    DropTriple,
    BreakInvolution,
    BreakUnitLaw,
    AddStray,
    RemoveUnit,
}

pub const ALL: [Mutation; 5] = [
    Mutation::DropTriple,
    Mutation::BreakInvolution,
    Mutation::BreakUnitLaw,
    Mutation::AddStray,
    Mutation::RemoveUnit,
];

/// Applies the `k`-th instance (mod the number of instances) of a mutation.
pub fn mutate(data: &GroupoidData, mutation: Mutation, k: usize) -> Option<GroupoidData> {
    let mut d = data.clone();
    let n = d.elements.len();
    match mutation {
        Mutation::DropTriple => {
            let i = k % d.compose.len();
            d.compose.remove(i);
        }
        Mutation::BreakInvolution => {
            if n < 2 {
                return None;
            }
            let i = k % n;
            let current = d.inverse[i].1.clone();
            let others: Vec<&String> = d.elements.iter().filter(|e| **e != current).collect();
            d.inverse[i].1 = others[(k / n) % others.len()].clone();
        }
        Mutation::BreakUnitLaw => {
            if n < 2 {
                return None;
            }
            let positions: Vec<usize> = (0..d.compose.len())
                .filter(|&i| d.units.contains(&d.compose[i].0))
                .collect();
            let i = positions[k % positions.len()];
            let x = d.compose[i].1.clone();
            let others: Vec<&String> = d.elements.iter().filter(|e| **e != x).collect();
            d.compose[i].2 = others[(k / positions.len()) % others.len()].clone();
        }
        Mutation::AddStray => {
            let present: BTreeSet<Triple> = d.compose.iter().cloned().collect();
            let mut absent = Vec::new();
            for a in &d.elements {
                for b in &d.elements {
                    for c in &d.elements {
                        let t = (a.clone(), b.clone(), c.clone());
                        if !present.contains(&t) {
                            absent.push(t);
                        }
                    }
                }
            }
            if absent.is_empty() {
                return None;
            }
            d.compose.push(absent[k % absent.len()].clone());
        }
        Mutation::RemoveUnit => {
            let i = k % d.units.len();
            d.units.remove(i);
        }
    }
    Some(d)
}

/// Source elements related only to units.
pub fn kernel_oracle(h: &Morphism) -> BTreeSet<usize> {
    let d = h.target();
    (0..h.source().len())
        .filter(|&x| {
            let related: Vec<usize> = h.graph().iter().filter(|p| p.1 == x).map(|p| p.0).collect();
            !related.is_empty() && related.iter().all(|&y| d.is_unit(y))
        })
        .collect()
}

/// Exactly one member in every left fiber and in every right fiber over `E`.
pub fn section_oracle(g: &Groupoid, a: &BTreeSet<usize>) -> bool {
    g.units().iter().all(|&e| {
        a.iter().filter(|&&x| g.left(x) == e).count() == 1 && a.iter().filter(|&&x| g.right(x) == e).count() == 1
    })
}

pub fn triple_set(phi: &Action) -> BTreeSet<(usize, usize, usize)> {
    phi.triples().into_iter().collect()
}

/// Items (1) to (5) recomputed from the triples alone.
pub fn check_consequences(phi: &Action) {
    let g = phi.groupoid();
    let x = phi.carrier();
    let t = triple_set(phi);
    for p in 0..x.len() {
        let units: Vec<usize> = g.units().iter().copied().filter(|&e| t.contains(&(p, e, p))).collect();
        assert_eq!(units, vec![phi.rho(p)]);
    }
    let domain: BTreeSet<(usize, usize)> = t.iter().map(|&(_, a, p)| (a, p)).collect();
    let expected: BTreeSet<(usize, usize)> = (0..g.len())
        .flat_map(|a| (0..x.len()).map(move |p| (a, p)))
        .filter(|&(a, p)| g.right(a) == phi.rho(p))
        .collect();
    assert_eq!(domain, expected);
    for &(y, a, p) in &t {
        assert_eq!(phi.rho(y), g.left(a));
        assert!(t.contains(&(p, g.inverse(a), y)));
        assert_eq!(t.iter().filter(|u| u.1 == a && u.2 == p).count(), 1);
        assert_eq!(phi.act(a, p), Some(y));
    }
    for p in 0..x.len() {
        assert_eq!(phi.act(phi.rho(p), p), Some(p));
        for (a, b) in g.composable_pairs() {
            let lhs = phi.act(b, p).and_then(|q| phi.act(a, q));
            let rhs = phi.act(g.product(a, b).unwrap(), p);
            assert_eq!(lhs, rhs);
        }
    }
}

