//! Group tables, group actions and the standard groupoid families.
//!
//! Element names built here never contain the reserved separator: pairs are
//! written `(x|y)`, product-form triples `(x|g|y)`, transformation-groupoid
//! arrows `(g|x)`, bundle fibers `i:g`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidData};
use crate::relation::Universe;

/// A finite group given by its full Cayley table.
#[derive(Debug, Clone)]
pub struct GroupTable {
    name: String,
    universe: Arc<Universe>,
    unit: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.unit == other.unit && self.table == other.table
    }
}

impl Eq for GroupTable {}

impl GroupTable {
    /// Builds a group from `(a, b, ab)` triples; the table must be total.
    pub fn from_triples<'a>(
        name: impl Into<String>,
        elements: impl IntoIterator<Item = &'a str>,
        unit: &str,
        triples: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    ) -> Result<Self> {
        let name = name.into();
        let universe = Arc::new(Universe::new(name.clone(), elements)?);
        let n = universe.len();
        let mut table = vec![None; n * n];
        for (a, b, c) in triples {
            let (a, b, c) = (universe.lookup(a)?, universe.lookup(b)?, universe.lookup(c)?);
            if table[a * n + b].replace(c).is_some_and(|old| old != c) {
                return Err(Error::GroupAxiom {
                    name,
                    reason: format!("{}·{} has two values", universe.name(a), universe.name(b)),
                });
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| Error::GroupAxiom {
                    name: name.clone(),
                    reason: format!(
                        "{}·{} is undefined",
                        universe.name(i / n),
                        universe.name(i % n)
                    ),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let unit = universe.lookup(unit)?;
        Self::from_table(name, universe, unit, table)
    }

    /// Builds a group from named elements and a multiplication closure.
    pub fn from_fn<S: Into<String>>(
        name: impl Into<String>,
        elements: impl IntoIterator<Item = S>,
        unit: &str,
        mul: impl Fn(&str, &str) -> String,
    ) -> Result<Self> {
        let name = name.into();
        let universe = Arc::new(Universe::new(name.clone(), elements)?);
        let n = universe.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(universe.lookup(&mul(&universe.name(a), &universe.name(b)))?);
            }
        }
        let unit = universe.lookup(unit)?;
        Self::from_table(name, universe, unit, table)
    }

    fn from_table(name: String, universe: Arc<Universe>, unit: usize, table: Vec<usize>) -> Result<Self> {
        let n = universe.len();
        let fail = |reason: String| {
            Err(Error::GroupAxiom {
                name: name.clone(),
                reason,
            })
        };
        let nm = |x: usize| universe.name(x).into_owned();
        for a in 0..n {
            if table[unit * n + a] != a || table[a * n + unit] != a {
                return fail(format!("unit law fails at {}", nm(a)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a * n + b] * n + c] != table[a * n + table[b * n + c]] {
                        return fail(format!("({}·{})·{} ≠ {}·({}·{})", nm(a), nm(b), nm(c), nm(a), nm(b), nm(c)));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == unit && table[b * n + a] == unit) {
                Some(b) => inverse.push(b),
                None => return fail(format!("{} has no inverse", nm(a))),
            }
        }
        Ok(Self {
            name,
            universe,
            unit,
            table,
            inverse,
        })
    }

    /// `Z_n` on the names `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        Self::from_fn(format!("Z{n}"), (0..n).map(|i| i.to_string()), "0", |a, b| {
            let (a, b): (usize, usize) = (a.parse().unwrap(), b.parse().unwrap());
            ((a + b) % n).to_string()
        })
        .expect("cyclic group")
    }

    pub fn trivial() -> Self {
        Self::from_fn("1", ["e"], "e", |_, _| "e".to_string()).expect("trivial group")
    }

    /// The Klein four-group on `e, a, b, c`.
    pub fn klein() -> Self {
        Self::from_fn("V4", ["e", "a", "b", "c"], "e", |x, y| {
            if x == "e" {
                y.to_string()
            } else if y == "e" {
                x.to_string()
            } else if x == y {
                "e".to_string()
            } else {
                ["a", "b", "c"]
                    .into_iter()
                    .find(|z| *z != x && *z != y)
                    .unwrap()
                    .to_string()
            }
        })
        .expect("klein group")
    }

    /// The symmetric group on `1..=n` (n ≤ 9); permutations are written in
    /// one-line notation and composed right to left.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=9).contains(&n), "symmetric group degree out of range");
        let mut perms: Vec<Vec<u8>> = vec![Vec::new()];
        for _ in 0..n {
            perms = perms
                .into_iter()
                .flat_map(|p| {
                    (1..=n as u8)
                        .filter(|d| !p.contains(d))
                        .map(|d| {
                            let mut q = p.clone();
                            q.push(d);
                            q
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        let show = |p: &[u8]| p.iter().map(|d| char::from(b'0' + d)).collect::<String>();
        let identity: String = show(&(1..=n as u8).collect::<Vec<_>>());
        Self::from_fn(
            format!("S{n}"),
            perms.iter().map(|p| show(p)),
            &identity,
            |a, b| {
                let (a, b) = (a.as_bytes(), b.as_bytes());
                b.iter()
                    .map(|&d| char::from(a[(d - b'1') as usize]))
                    .collect()
            },
        )
        .expect("symmetric group")
    }

    /// `G × H` on the names `(g|h)`.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<Self> {
        let pair = |x: &str, y: &str| format!("({x}|{y})");
        let split = |p: &str| -> (usize, usize) {
            let inner = &p[1..p.len() - 1];
            // names of `a` may themselves contain `|`, so try every split
            for (i, _) in inner.match_indices('|') {
                if let (Some(x), Some(y)) = (a.universe.index_of(&inner[..i]), b.universe.index_of(&inner[i + 1..])) {
                    return (x, y);
                }
            }
            unreachable!("not a product element")
        };
        let names: Vec<String> = (0..a.len())
            .flat_map(|x| (0..b.len()).map(move |y| (x, y)))
            .map(|(x, y)| pair(a.label(x), b.label(y)))
            .collect();
        Self::from_fn(
            format!("{}×{}", a.name, b.name),
            names,
            &pair(a.label(a.unit), b.label(b.unit)),
            |p, q| {
                let ((x1, y1), (x2, y2)) = (split(p), split(q));
                pair(a.label(a.mul(x1, x2)), b.label(b.mul(y1, y2)))
            },
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn label(&self, g: usize) -> &str {
        self.universe.atomic_name(g).expect("atomic")
    }

    pub fn elem(&self, name: &str) -> Result<usize> {
        self.universe.lookup(name)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.len() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_subgroup(&self, set: &BTreeSet<usize>) -> bool {
        set.contains(&self.unit)
            && set.iter().all(|&a| set.contains(&self.inverse[a]))
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, set: &BTreeSet<usize>) -> bool {
        self.is_subgroup(set)
            && (0..self.len()).all(|g| {
                set.iter()
                    .all(|&h| set.contains(&self.mul(self.mul(g, h), self.inverse[g])))
            })
    }

    /// The subgroup generated by `gens`.
    pub fn generated(&self, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([self.unit]);
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut frontier: Vec<usize> = vec![self.unit];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// All subgroups, sorted by size and then lexicographically.
    pub fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![BTreeSet::from([self.unit])];
        found.insert(vec![self.unit]);
        while let Some(h) = frontier.pop() {
            for g in 0..self.len() {
                if h.contains(&g) {
                    continue;
                }
                let bigger = self.generated(h.iter().copied().chain([g]));
                if found.insert(bigger.iter().copied().collect()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut out: Vec<BTreeSet<usize>> = found
            .into_iter()
            .map(|v| v.into_iter().collect())
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// `G/H` for a normal subgroup `H`. Cosets are named `[g]` after their
    /// least member; the second component maps each element to its coset.
    pub fn quotient(&self, normal: &BTreeSet<usize>) -> Result<(GroupTable, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::Precondition(format!(
                "subgroup of `{}` is not normal",
                self.name
            )));
        }
        let rep: Vec<usize> = (0..self.len())
            .map(|g| normal.iter().map(|&h| self.mul(g, h)).min().expect("nonempty"))
            .collect();
        let name_of = |g: usize| format!("[{}]", self.label(rep[g]));
        let names: BTreeSet<String> = (0..self.len()).map(name_of).collect();
        let by_name: HashMap<String, usize> = (0..self.len()).map(|g| (name_of(g), g)).collect();
        let q = GroupTable::from_fn(
            format!("{}/H", self.name),
            names,
            &name_of(self.unit),
            |a, b| name_of(self.mul(by_name[a], by_name[b])),
        )?;
        let proj = (0..self.len())
            .map(|g| q.elem(&name_of(g)).expect("coset"))
            .collect();
        Ok((q, proj))
    }

    /// `(a, b, ab)` triples in index order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.len();
        (0..n * n).map(move |i| (i / n, i % n, self.table[i]))
    }
}

/// A left action of a group on a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: GroupTable,
    carrier: Arc<Universe>,
    table: Vec<usize>,
}

impl GroupAction {
    /// Checks `e·x = x` and `g(hx) = (gh)x`.
    pub fn new(group: GroupTable, carrier: Universe, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let nx = carrier.len();
        let mut table = Vec::with_capacity(group.len() * nx);
        for g in 0..group.len() {
            for x in 0..nx {
                let y = act(g, x);
                if y >= nx {
                    return Err(Error::NotGroupAction(format!("{}·{} is outside the carrier", group.label(g), carrier.name(x))));
                }
                table.push(y);
            }
        }
        let action = Self {
            group,
            carrier: Arc::new(carrier),
            table,
        };
        action.check()?;
        Ok(action)
    }

    /// Builds an action from `(gx, g, x)` name triples.
    pub fn from_triples<'a>(
        group: GroupTable,
        carrier: Universe,
        triples: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    ) -> Result<Self> {
        let nx = carrier.len();
        let mut table = vec![None; group.len() * nx];
        for (y, g, x) in triples {
            let (y, g, x) = (carrier.lookup(y)?, group.elem(g)?, carrier.lookup(x)?);
            if table[g * nx + x].replace(y).is_some_and(|old| old != y) {
                return Err(Error::NotGroupAction(format!(
                    "{}·{} has two values",
                    group.label(g),
                    carrier.name(x)
                )));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, y)| {
                y.ok_or_else(|| {
                    Error::NotGroupAction(format!(
                        "{}·{} is undefined",
                        group.label(i / nx),
                        carrier.name(i % nx)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let action = Self {
            group,
            carrier: Arc::new(carrier),
            table,
        };
        action.check()?;
        Ok(action)
    }

    fn check(&self) -> Result<()> {
        let g = &self.group;
        let nm = |x: usize| self.carrier.name(x).into_owned();
        for x in 0..self.carrier.len() {
            if self.act(g.unit(), x) != x {
                return Err(Error::NotGroupAction(format!("e·{} ≠ {}", nm(x), nm(x))));
            }
            for a in 0..g.len() {
                for b in 0..g.len() {
                    if self.act(a, self.act(b, x)) != self.act(g.mul(a, b), x) {
                        return Err(Error::NotGroupAction(format!(
                            "{}({}·{}) ≠ ({}{})·{}",
                            g.label(a),
                            g.label(b),
                            nm(x),
                            g.label(a),
                            g.label(b),
                            nm(x)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: GroupTable, carrier: Universe) -> Result<Self> {
        Self::new(group, carrier, |_, x| x)
    }

    /// `Z_n` acting on a carrier of size `k` dividing `n` by `i·x = x + i (mod k)`
    /// in index order.
    pub fn shift(group: GroupTable, carrier: Universe) -> Result<Self> {
        let k = carrier.len();
        let steps: Vec<usize> = (0..group.len())
            .map(|g| group.label(g).parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Precondition(format!("`{}` is not a cyclic group", group.name())))?;
        Self::new(group, carrier, |g, x| (x + steps[g]) % k.max(1))
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: GroupTable) -> Result<Self> {
        let carrier = Universe::new(group.name().to_string(), (0..group.len()).map(|g| group.label(g).to_string()))?;
        let g2 = group.clone();
        Self::new(group, carrier, move |a, b| g2.mul(a, b))
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn carrier(&self) -> &Arc<Universe> {
        &self.carrier
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.table[g * self.carrier.len() + x]
    }

    /// Only the unit acts as the identity.
    pub fn is_effective(&self) -> bool {
        (0..self.group.len())
            .filter(|&g| g != self.group.unit())
            .all(|g| (0..self.carrier.len()).any(|x| self.act(g, x) != x))
    }

    pub fn stabilizer(&self, x: usize) -> BTreeSet<usize> {
        (0..self.group.len()).filter(|&g| self.act(g, x) == x).collect()
    }
}

fn pair_name(x: &str, y: &str) -> String {
    format!("({x}|{y})")
}

fn assemble(
    name: String,
    elements: Vec<String>,
    units: Vec<String>,
    inverse: Vec<(String, String)>,
    compose: Vec<(String, String, String)>,
) -> Result<Groupoid> {
    Groupoid::validate(&GroupoidData {
        name,
        elements,
        units,
        inverse,
        compose,
    })
}

fn atoms(x: &Universe) -> Vec<String> {
    x.names().map(|n| n.into_owned()).collect()
}

/// The pair groupoid `X²`: `(x|y)(y|z) = (x|z)`, `s(x|y) = (y|x)`.
pub fn pair_groupoid(x: &Universe) -> Result<Groupoid> {
    let atoms = atoms(x);
    let blocks: Vec<Vec<String>> = if atoms.is_empty() { Vec::new() } else { vec![atoms] };
    equivalence_groupoid(x, &blocks).map(|g| g.with_name(format!("{}²", x.id())))
}

/// The groupoid in which every element is a unit.
pub fn set_groupoid(x: &Universe) -> Result<Groupoid> {
    let names = atoms(x);
    assemble(
        x.id().to_string(),
        names.clone(),
        names.clone(),
        names.iter().map(|a| (a.clone(), a.clone())).collect(),
        names.iter().map(|a| (a.clone(), a.clone(), a.clone())).collect(),
    )
}

pub fn group_groupoid(t: &GroupTable) -> Result<Groupoid> {
    let nm = |g: usize| t.label(g).to_string();
    assemble(
        t.name().to_string(),
        (0..t.len()).map(nm).collect(),
        vec![nm(t.unit())],
        (0..t.len()).map(|g| (nm(g), nm(t.inv(g)))).collect(),
        t.triples().map(|(a, b, c)| (nm(a), nm(b), nm(c))).collect(),
    )
}

/// Disjoint union of groups; fiber `i` element `g` is named `i:g`.
pub fn group_bundle(fibers: &[GroupTable]) -> Result<Groupoid> {
    let mut data = GroupoidData {
        name: format!(
            "bundle[{}]",
            fibers.iter().map(GroupTable::name).collect::<Vec<_>>().join(" ")
        ),
        ..GroupoidData::default()
    };
    for (i, t) in fibers.iter().enumerate() {
        let nm = |g: usize| format!("{i}:{}", t.label(g));
        data.elements.extend((0..t.len()).map(nm));
        data.units.push(nm(t.unit()));
        data.inverse.extend((0..t.len()).map(|g| (nm(g), nm(t.inv(g)))));
        data.compose
            .extend(t.triples().map(|(a, b, c)| (nm(a), nm(b), nm(c))));
    }
    Groupoid::validate(&data)
}

/// The subgroupoid of `X²` of pairs in a common block.
pub fn equivalence_groupoid<S: AsRef<str>>(x: &Universe, blocks: &[Vec<S>]) -> Result<Groupoid> {
    let mut seen = BTreeSet::new();
    for b in blocks {
        for e in b {
            x.lookup(e.as_ref())?;
            if !seen.insert(e.as_ref()) {
                return Err(Error::Precondition(format!(
                    "`{}` occurs in two blocks",
                    e.as_ref()
                )));
            }
        }
    }
    if seen.len() != x.len() || blocks.iter().any(Vec::is_empty) {
        return Err(Error::Precondition(format!(
            "blocks do not partition `{}`",
            x.id()
        )));
    }
    let mut data = GroupoidData {
        name: format!("R({})", x.id()),
        ..GroupoidData::default()
    };
    for b in blocks {
        for p in b {
            let p = p.as_ref();
            data.units.push(pair_name(p, p));
            for q in b {
                let q = q.as_ref();
                data.elements.push(pair_name(p, q));
                data.inverse.push((pair_name(p, q), pair_name(q, p)));
                for r in b {
                    let r = r.as_ref();
                    data.compose
                        .push((pair_name(p, q), pair_name(q, r), pair_name(p, r)));
                }
            }
        }
    }
    Groupoid::validate(&data)
}

/// `E × G × E` with `(x|g|y)(y|h|z) = (x|gh|z)`, together with the
/// coordinate maps.
#[derive(Debug, Clone)]
pub struct ProductForm {
    units: Arc<Universe>,
    group: GroupTable,
    groupoid: Groupoid,
    coords: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl ProductForm {
    pub fn new(units: Arc<Universe>, group: GroupTable) -> Result<Self> {
        let ne = units.len();
        let ng = group.len();
        let name = |(x, g, y): (usize, usize, usize)| {
            format!("({}|{}|{})", units.name(x), group.label(g), units.name(y))
        };
        let all: Vec<(usize, usize, usize)> = (0..ne)
            .flat_map(|x| (0..ng).flat_map(move |g| (0..ne).map(move |y| (x, g, y))))
            .collect();
        let mut data = GroupoidData {
            name: format!("{}×{}×{}", units.id(), group.name(), units.id()),
            ..GroupoidData::default()
        };
        for &(x, g, y) in &all {
            data.elements.push(name((x, g, y)));
            if x == y && g == group.unit() {
                data.units.push(name((x, g, y)));
            }
            data.inverse.push((name((x, g, y)), name((y, group.inv(g), x))));
            for z in 0..ne {
                for h in 0..ng {
                    data.compose.push((
                        name((x, g, y)),
                        name((y, h, z)),
                        name((x, group.mul(g, h), z)),
                    ));
                }
            }
        }
        let groupoid = Groupoid::validate(&data)?;
        let mut coords = vec![(0, 0, 0); groupoid.len()];
        let mut index = HashMap::new();
        for c in all {
            let z = groupoid.elem(&name(c))?;
            coords[z] = c;
            index.insert(c, z);
        }
        Ok(Self {
            units,
            group,
            groupoid,
            coords,
            index,
        })
    }

    pub fn units(&self) -> &Arc<Universe> {
        &self.units
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    /// `(x, g, y)` of an element.
    pub fn coords(&self, z: usize) -> (usize, usize, usize) {
        self.coords[z]
    }

    pub fn element(&self, x: usize, g: usize, y: usize) -> usize {
        self.index[&(x, g, y)]
    }
}

pub fn product_form(units: &Universe, group: &GroupTable) -> Result<Groupoid> {
    Ok(ProductForm::new(Arc::new(units.clone()), group.clone())?.groupoid)
}

/// `G × X` with arrows `(g|x) : x → gx` and `(g|hx)(h|x) = (gh|x)`.
pub fn transformation_groupoid(action: &GroupAction) -> Result<Groupoid> {
    let g = action.group();
    let x = action.carrier();
    let name = |a: usize, p: usize| pair_name(g.label(a), &x.name(p));
    let mut data = GroupoidData {
        name: format!("{}⋉{}", g.name(), x.id()),
        ..GroupoidData::default()
    };
    for a in 0..g.len() {
        for p in 0..x.len() {
            data.elements.push(name(a, p));
            data.inverse.push((name(a, p), name(g.inv(a), action.act(a, p))));
            for b in 0..g.len() {
                let q = action.act(b, p);
                data.compose.push((name(a, q), name(b, p), name(g.mul(a, b), p)));
            }
        }
    }
    data.units = (0..x.len()).map(|p| name(g.unit(), p)).collect();
    Groupoid::validate(&data)
}
