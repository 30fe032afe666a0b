//! The groupoid value type.
//!
//! A groupoid is the quadruple `(Γ, m, s, e)`: a finite element set, a
//! multiplication relation `m : Γ×Γ ⊸ Γ`, an inverse `s : Γ ⊸ Γ` and a unit
//! relation `e : {1} ⊸ Γ`. [`Groupoid::validate`] checks the five relational
//! axioms as literal [`FinRel`] equalities and then the small-category laws
//! that must follow from them.

use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::builders::{self, GroupTable, ProductForm};
use crate::error::{Error, GroupoidAxiom, Result};
use crate::relation::{FinRel, Universe};

/// Unvalidated groupoid data, as read from a document or produced by a builder.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupoidData {
    pub name: String,
    pub elements: Vec<String>,
    pub units: Vec<String>,
    /// `(γ, s(γ))`
    pub inverse: Vec<(String, String)>,
    /// `(a, b, ab)`
    pub compose: Vec<(String, String, String)>,
}

/// Index-level raw data.
#[derive(Debug, Clone)]
pub(crate) struct RawGroupoid {
    pub name: String,
    pub universe: Arc<Universe>,
    pub units: BTreeSet<usize>,
    pub inverse: Vec<usize>,
    /// `(a, b, ab)`
    pub triples: BTreeSet<(usize, usize, usize)>,
}

/// A validated finite groupoid. Elements are indices into an atomic
/// [`Universe`], so index order is the canonical (lexicographic) order.
#[derive(Debug, Clone)]
pub struct Groupoid {
    name: String,
    universe: Arc<Universe>,
    units: Vec<usize>,
    is_unit: Vec<bool>,
    inverse: Vec<usize>,
    table: Vec<Option<usize>>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl PartialEq for Groupoid {
    /// Structural equality; the display name is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe
            && self.units == other.units
            && self.inverse == other.inverse
            && self.table == other.table
    }
}

impl Eq for Groupoid {}

impl Groupoid {
    pub fn validate(data: &GroupoidData) -> Result<Groupoid> {
        let name = data.name.clone();
        let structure = |witness: String| Error::GroupoidAxiom {
            name: name.clone(),
            axiom: GroupoidAxiom::Structure,
            witness,
        };
        let universe = Arc::new(Universe::new(name.clone(), data.elements.iter().cloned())?);
        let units = data
            .units
            .iter()
            .map(|u| universe.lookup(u))
            .collect::<Result<BTreeSet<_>>>()?;
        let mut inverse: Vec<Option<usize>> = vec![None; universe.len()];
        for (g, sg) in &data.inverse {
            let (g, sg) = (universe.lookup(g)?, universe.lookup(sg)?);
            if inverse[g].replace(sg).is_some() {
                return Err(structure(format!("two inverses for `{}`", universe.name(g))));
            }
        }
        let inverse = inverse
            .iter()
            .enumerate()
            .map(|(g, s)| s.ok_or_else(|| structure(format!("no inverse for `{}`", universe.name(g)))))
            .collect::<Result<Vec<_>>>()?;
        let mut triples = BTreeSet::new();
        for (a, b, c) in &data.compose {
            triples.insert((universe.lookup(a)?, universe.lookup(b)?, universe.lookup(c)?));
        }
        Self::from_raw(RawGroupoid {
            name,
            universe,
            units,
            inverse,
            triples,
        })
    }

    pub(crate) fn from_raw(raw: RawGroupoid) -> Result<Groupoid> {
        let RawGroupoid {
            name,
            universe,
            units,
            inverse,
            triples,
        } = raw;
        let n = universe.len();
        let fail = |axiom: GroupoidAxiom, witness: String| Error::GroupoidAxiom {
            name: name.clone(),
            axiom,
            witness,
        };
        if inverse.len() != n || inverse.iter().any(|&s| s >= n) {
            return Err(fail(GroupoidAxiom::Structure, "inverse table".into()));
        }

        let g = Arc::clone(&universe);
        let point = Arc::new(Universe::point());
        let m = mult_relation(&g, &triples);
        let s = FinRel::from_fn(Arc::clone(&g), Arc::clone(&g), |x| inverse[x]);
        let e = FinRel::from_graph(point, Arc::clone(&g), units.iter().map(|&u| (u, 0)).collect());
        let id = FinRel::identity(Arc::clone(&g));

        s.compose(&s)?
            .check_equal(&id)
            .map_err(|w| fail(GroupoidAxiom::Involution, w))?;

        let left_unit = m
            .compose(&e.product(&id))?
            .compose(&FinRel::left_unitor(&g))?;
        left_unit
            .check_equal(&id)
            .map_err(|w| fail(GroupoidAxiom::UnitLaw, w))?;
        let right_unit = m
            .compose(&id.product(&e))?
            .compose(&FinRel::right_unitor(&g))?;
        right_unit
            .check_equal(&id)
            .map_err(|w| fail(GroupoidAxiom::UnitLaw, w))?;

        let lhs = m.compose(&m.product(&id))?;
        let rhs = m.compose(&id.product(&m))?;
        lhs.check_equal(&rhs)
            .map_err(|w| fail(GroupoidAxiom::Associativity, w))?;

        let lhs = s.compose(&m)?;
        let rhs = m
            .compose(&FinRel::flip(&g, &g))?
            .compose(&s.product(&s))?;
        lhs.check_equal(&rhs)
            .map_err(|w| fail(GroupoidAxiom::AntiHomomorphism, w))?;

        let mut outputs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for &(a, b, c) in &triples {
            outputs.entry((a, b)).or_default().push(c);
        }
        for x in 0..n {
            let out = outputs.get(&(inverse[x], x)).map(Vec::as_slice).unwrap_or(&[]);
            if out.is_empty() || out.iter().any(|c| !units.contains(c)) {
                return Err(fail(
                    GroupoidAxiom::InverseUnits,
                    format!("γ = {}", universe.name(x)),
                ));
            }
        }

        let mut table = vec![None; n * n];
        for (&(a, b), cs) in &outputs {
            if cs.len() != 1 {
                return Err(fail(
                    GroupoidAxiom::Composability,
                    format!("m({}, {}) is multivalued", universe.name(a), universe.name(b)),
                ));
            }
            table[a * n + b] = Some(cs[0]);
        }
        let left: Vec<usize> = (0..n).map(|x| table[x * n + inverse[x]].unwrap_or(x)).collect();
        let right: Vec<usize> = (0..n).map(|x| table[inverse[x] * n + x].unwrap_or(x)).collect();
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b].is_some() != (right[a] == left[b]) {
                    return Err(fail(
                        GroupoidAxiom::Composability,
                        format!("({}, {})", universe.name(a), universe.name(b)),
                    ));
                }
            }
        }

        let mut is_unit = vec![false; n];
        for &u in &units {
            is_unit[u] = true;
        }
        let groupoid = Groupoid {
            name,
            universe,
            units: units.into_iter().collect(),
            is_unit,
            inverse,
            table,
            left,
            right,
        };
        groupoid.check_category_laws()?;
        Ok(groupoid)
    }

    /// Checks the small-category description against the table: composable
    /// iff `d(γ1) = r(γ2)`, source/target of products, unit and inverse laws,
    /// `s(γ1γ2) = s(γ2)s(γ1)`, and associativity in the both-sides-defined sense.
    pub fn check_category_laws(&self) -> Result<()> {
        let n = self.len();
        let fail = |w: String| Error::GroupoidAxiom {
            name: self.name.clone(),
            axiom: GroupoidAxiom::CategoryLaw,
            witness: w,
        };
        let nm = |x: usize| self.label(x);
        for &u in &self.units {
            if self.left[u] != u || self.right[u] != u || self.inverse[u] != u {
                return Err(fail(format!("unit {} is not an identity", nm(u))));
            }
        }
        for x in 0..n {
            let (l, r, s) = (self.left[x], self.right[x], self.inverse[x]);
            if !self.is_unit[l] || !self.is_unit[r] {
                return Err(fail(format!("source/target of {} not units", nm(x))));
            }
            if self.product(l, x) != Some(x) || self.product(x, r) != Some(x) {
                return Err(fail(format!("unit laws at {}", nm(x))));
            }
            if self.inverse[s] != x
                || self.right[s] != l
                || self.left[s] != r
                || self.product(x, s) != Some(l)
                || self.product(s, x) != Some(r)
            {
                return Err(fail(format!("inverse laws at {}", nm(x))));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.product(a, b);
                if ab.is_some() != (self.right[a] == self.left[b]) {
                    return Err(fail(format!("composability of ({}, {})", nm(a), nm(b))));
                }
                let Some(ab) = ab else { continue };
                if self.left[ab] != self.left[a] || self.right[ab] != self.right[b] {
                    return Err(fail(format!("source/target of {}·{}", nm(a), nm(b))));
                }
                if Some(self.inverse[ab]) != self.product(self.inverse[b], self.inverse[a]) {
                    return Err(fail(format!("s({}·{})", nm(a), nm(b))));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.product(a, b).and_then(|ab| self.product(ab, c));
                    let rhs = self.product(b, c).and_then(|bc| self.product(a, bc));
                    if lhs != rhs {
                        return Err(fail(format!("({}·{})·{}", nm(a), nm(b), nm(c))));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        self.universe
            .atomic_name(x)
            .expect("groupoid universes are atomic")
    }

    pub fn elem(&self, name: &str) -> Result<usize> {
        self.universe.lookup(name)
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn unit_set(&self) -> BTreeSet<usize> {
        self.units.iter().copied().collect()
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.is_unit[x]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// `e_L(γ) = γ s(γ)`, the target.
    pub fn left(&self, x: usize) -> usize {
        self.left[x]
    }

    /// `e_R(γ) = s(γ) γ`, the source.
    pub fn right(&self, x: usize) -> usize {
        self.right[x]
    }

    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        self.table[a * self.len() + b]
    }

    /// The product `ab`, which must be defined.
    pub(crate) fn mul(&self, a: usize, b: usize) -> usize {
        self.product(a, b).unwrap_or_else(|| {
            panic!(
                "{}·{} is not composable in {}",
                self.label(a),
                self.label(b),
                self.name
            )
        })
    }

    /// Multiplication as a relation `Γ×Γ ⊸ Γ`.
    pub fn mult_relation(&self) -> FinRel {
        mult_relation(&self.universe, &self.triples())
    }

    pub fn inverse_relation(&self) -> FinRel {
        FinRel::from_fn(
            Arc::clone(&self.universe),
            Arc::clone(&self.universe),
            |x| self.inverse[x],
        )
    }

    /// The unit relation `{1} ⊸ Γ`.
    pub fn unit_relation(&self) -> FinRel {
        FinRel::from_graph(
            Arc::new(Universe::point()),
            Arc::clone(&self.universe),
            self.units.iter().map(|&u| (u, 0)).collect(),
        )
    }

    pub(crate) fn triples(&self) -> BTreeSet<(usize, usize, usize)> {
        self.composable_pairs()
            .into_iter()
            .map(|(a, b)| (a, b, self.mul(a, b)))
            .collect()
    }


    /// Named data in canonical order (elements, units and table rows sorted).
    pub fn to_data(&self) -> GroupoidData {
        let nm = |x: usize| self.label(x).to_string();
        GroupoidData {
            name: self.name.clone(),
            elements: (0..self.len()).map(nm).collect(),
            units: self.units.iter().map(|&u| nm(u)).collect(),
            inverse: (0..self.len()).map(|x| (nm(x), nm(self.inverse[x]))).collect(),
            compose: self
                .triples()
                .into_iter()
                .map(|(a, b, c)| (nm(a), nm(b), nm(c)))
                .collect(),
        }
    }

    /// `Γ^(2)`, the pairs with `e_R(γ1) = e_L(γ2)`.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.right[a] == self.left[b])
            .collect()
    }

    /// The orbits, as a partition of the units. Blocks are sorted and
    /// listed by their least member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for x in 0..n {
            let (a, b) = (find(&mut parent, self.left[x]), find(&mut parent, self.right[x]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of: HashMap<usize, usize> = HashMap::new();
        for &u in &self.units {
            let root = find(&mut parent, u);
            let k = *block_of.entry(root).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[k].push(u);
        }
        blocks
    }

    /// Orbit index of every unit, keyed by element.
    pub(crate) fn orbit_index(&self) -> HashMap<usize, usize> {
        self.orbits()
            .iter()
            .enumerate()
            .flat_map(|(k, o)| o.iter().map(move |&u| (u, k)))
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    fn require_unit(&self, e: usize) -> Result<()> {
        if e < self.len() && self.is_unit[e] {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "`{}` is not a unit of `{}`",
                self.universe.name(e.min(self.len().saturating_sub(1))),
                self.name
            )))
        }
    }

    pub fn isotropy(&self, e: usize) -> Result<SubgroupoidRef<'_>> {
        self.require_unit(e)?;
        let members = (0..self.len())
            .filter(|&x| self.left[x] == e && self.right[x] == e)
            .collect();
        Ok(SubgroupoidRef::new_unchecked(self, members))
    }

    pub fn isotropy_bundle(&self) -> SubgroupoidRef<'_> {
        let members = (0..self.len())
            .filter(|&x| self.left[x] == self.right[x])
            .collect();
        SubgroupoidRef::new_unchecked(self, members)
    }

    /// `e_R⁻¹(O)` for every orbit `O`, in orbit order.
    pub fn transitive_components(&self) -> Vec<SubgroupoidRef<'_>> {
        let orbit = self.orbit_index();
        let mut comps = vec![BTreeSet::new(); self.orbits().len()];
        for x in 0..self.len() {
            comps[orbit[&self.right[x]]].insert(x);
        }
        comps
            .into_iter()
            .map(|c| SubgroupoidRef::new_unchecked(self, c))
            .collect()
    }

    /// The transitive component containing `x`.
    pub fn component_of(&self, x: usize) -> BTreeSet<usize> {
        let orbit = self.orbit_index();
        let k = orbit[&self.right[x]];
        (0..self.len()).filter(|&y| orbit[&self.right[y]] == k).collect()
    }

    /// True iff `set` is a union of transitive components.
    pub fn is_union_of_components(&self, set: &BTreeSet<usize>) -> bool {
        let orbit = self.orbit_index();
        let hit: BTreeSet<usize> = set.iter().map(|&x| orbit[&self.right[x]]).collect();
        (0..self.len()).all(|x| set.contains(&x) == hit.contains(&orbit[&self.right[x]]))
    }

    pub fn is_subgroupoid(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&g| g < self.len() && set.contains(&self.inverse[g]))
            && set.iter().all(|&a| {
                set.iter()
                    .all(|&b| self.product(a, b).map_or(true, |ab| set.contains(&ab)))
            })
    }

    pub fn is_wide(&self, set: &BTreeSet<usize>) -> bool {
        self.is_subgroupoid(set) && self.units.iter().all(|u| set.contains(u))
    }

    /// The groupoid structure induced on a subgroupoid; element names are kept.
    pub fn subgroupoid(&self, set: &BTreeSet<usize>, name: impl Into<String>) -> Result<Groupoid> {
        if !self.is_subgroupoid(set) {
            return Err(Error::Precondition(format!(
                "subset of `{}` is not a subgroupoid",
                self.name
            )));
        }
        let name = name.into();
        let universe = Arc::new(Universe::new(
            name.clone(),
            set.iter().map(|&x| self.label(x).to_string()),
        )?);
        let re = |x: usize| universe.index_of(self.label(x)).expect("member");
        let inverse = set.iter().map(|&x| re(self.inverse[x])).collect();
        let units = set.iter().filter(|&&x| self.is_unit[x]).map(|&x| re(x)).collect();
        let mut triples = BTreeSet::new();
        for &a in set {
            for &b in set {
                if let Some(c) = self.product(a, b) {
                    triples.insert((re(a), re(b), re(c)));
                }
            }
        }
        Groupoid::from_raw(RawGroupoid {
            name,
            universe: Arc::clone(&universe),
            units,
            inverse,
            triples,
        })
    }

    /// `e_L⁻¹(F) ∩ e_R⁻¹(F)`, a groupoid with unit set `F`.
    pub fn restrict(&self, units: &BTreeSet<usize>) -> Result<Groupoid> {
        if let Some(&bad) = units.iter().find(|&&u| u >= self.len() || !self.is_unit[u]) {
            self.require_unit(bad)?;
        }
        let members = (0..self.len())
            .filter(|&x| units.contains(&self.left[x]) && units.contains(&self.right[x]))
            .collect();
        self.subgroupoid(&members, format!("{}|F", self.name))
    }

    /// The equivalence-relation groupoid of the orbits on the units.
    pub fn orbit_relation(&self) -> Result<Groupoid> {
        let units = Universe::new(
            format!("E({})", self.name),
            self.units.iter().map(|&u| self.label(u).to_string()),
        )?;
        let blocks: Vec<Vec<&str>> = self
            .orbits()
            .iter()
            .map(|o| o.iter().map(|&u| self.label(u)).collect())
            .collect();
        builders::equivalence_groupoid(&units, &blocks)
    }

    /// The product-form decomposition `E × G0 × E ≅ Γ` of a transitive groupoid.
    ///
    /// The section `p : E → e_L⁻¹(e0)` of `e_R` picks the least element in
    /// each fiber, with `p(e0) = e0`. The returned map sends `(x, g, y)` to
    /// `s(p(x)) g p(y)` and is checked to be an isomorphism.
    pub fn decompose_transitive(&self, base: usize) -> Result<TransitiveDecomposition> {
        self.require_unit(base)?;
        if !self.is_transitive() {
            return Err(Error::NotTransitive(self.name.clone()));
        }
        let units = Arc::new(Universe::new(
            format!("E({})", self.name),
            self.units.iter().map(|&u| self.label(u).to_string()),
        )?);
        let section: Vec<usize> = self
            .units
            .iter()
            .map(|&e| {
                if e == base {
                    base
                } else {
                    (0..self.len())
                        .find(|&x| self.left[x] == base && self.right[x] == e)
                        .expect("transitive")
                }
            })
            .collect();
        let iso = self.isotropy(base)?;
        let members: Vec<usize> = iso.members().iter().copied().collect();
        let group = GroupTable::from_fn(
            format!("{}_{}", self.name, self.label(base)),
            members.iter().map(|&g| self.label(g).to_string()),
            self.label(base),
            |a, b| {
                let (a, b) = (self.elem(a).expect("member"), self.elem(b).expect("member"));
                self.label(self.mul(a, b)).to_string()
            },
        )?;
        let form = ProductForm::new(Arc::clone(&units), group)?;
        let pf = form.groupoid();
        // units of E are ordered like self.units, so position k ↔ self.units[k]
        let map: Vec<usize> = (0..pf.len())
            .map(|z| {
                let (x, g, y) = form.coords(z);
                let g = self.elem(form.group().label(g)).expect("isotropy element");
                let left = self.inverse[section[x]];
                self.mul(self.mul(left, g), section[y])
            })
            .collect();
        let decomposition = TransitiveDecomposition {
            base,
            section: self.units.iter().copied().zip(section).collect(),
            form,
            map,
        };
        decomposition.check(self)?;
        Ok(decomposition)
    }
}

fn mult_relation(g: &Arc<Universe>, triples: &BTreeSet<(usize, usize, usize)>) -> FinRel {
    let n = g.len();
    let gg = Arc::new(Universe::product(g, g));
    FinRel::from_graph(
        gg,
        Arc::clone(g),
        triples.iter().map(|&(a, b, c)| (c, a * n + b)).collect(),
    )
}

/// A subset of a groupoid closed under inverse and defined products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupoidRef<'a> {
    parent: &'a Groupoid,
    members: BTreeSet<usize>,
}

impl<'a> SubgroupoidRef<'a> {
    pub fn new(parent: &'a Groupoid, members: BTreeSet<usize>) -> Result<Self> {
        if parent.is_subgroupoid(&members) {
            Ok(Self { parent, members })
        } else {
            Err(Error::Precondition(format!(
                "subset of `{}` is not a subgroupoid",
                parent.name
            )))
        }
    }

    fn new_unchecked(parent: &'a Groupoid, members: BTreeSet<usize>) -> Self {
        debug_assert!(parent.is_subgroupoid(&members));
        Self { parent, members }
    }

    pub fn parent(&self) -> &'a Groupoid {
        self.parent
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn into_members(self) -> BTreeSet<usize> {
        self.members
    }

    pub fn labels(&self) -> Vec<Cow<'a, str>> {
        self.members
            .iter()
            .map(|&x| Cow::Borrowed(self.parent.label(x)))
            .collect()
    }

    pub fn is_wide(&self) -> bool {
        self.parent.is_wide(&self.members)
    }

    pub fn to_groupoid(&self, name: impl Into<String>) -> Result<Groupoid> {
        self.parent.subgroupoid(&self.members, name)
    }
}

/// Result of [`Groupoid::decompose_transitive`].
#[derive(Debug, Clone)]
pub struct TransitiveDecomposition {
    pub base: usize,
    /// `(e, p(e))` for every unit `e`.
    pub section: Vec<(usize, usize)>,
    pub form: ProductForm,
    /// Product-form element index → element of the decomposed groupoid.
    pub map: Vec<usize>,
}

impl TransitiveDecomposition {
    fn check(&self, g: &Groupoid) -> Result<()> {
        let pf = self.form.groupoid();
        let bad = |what: &str| Err(Error::Internal(format!("product-form map {what}")));
        let image: BTreeSet<usize> = self.map.iter().copied().collect();
        if image.len() != g.len() || self.map.len() != g.len() {
            return bad("is not a bijection");
        }
        for z in 0..pf.len() {
            let x = self.map[z];
            if pf.is_unit(z) != g.is_unit(x) || self.map[pf.inverse(z)] != g.inverse(x) {
                return bad("does not preserve units or inverses");
            }
            for w in 0..pf.len() {
                let lhs = pf.product(z, w).map(|zw| self.map[zw]);
                if lhs != g.product(x, self.map[w]) {
                    return bad("does not preserve composition");
                }
            }
        }
        Ok(())
    }
}

/// `Γ1 ⊔ Γ2`, elements tagged `L:` and `R:`.
pub fn disjoint_union(a: &Groupoid, b: &Groupoid) -> Result<Groupoid> {
    let name = format!("{}⊔{}", a.name, b.name);
    let tag = |t: &str, g: &Groupoid, x: usize| format!("{t}:{}", g.label(x));
    let universe = Arc::new(Universe::new(
        name.clone(),
        (0..a.len())
            .map(|x| tag("L", a, x))
            .chain((0..b.len()).map(|x| tag("R", b, x))),
    )?);
    let la = |x: usize| universe.index_of(&tag("L", a, x)).expect("tagged");
    let lb = |x: usize| universe.index_of(&tag("R", b, x)).expect("tagged");
    let mut inverse = vec![0; universe.len()];
    let mut units = BTreeSet::new();
    let mut triples = BTreeSet::new();
    for (g, re) in [(a, &la as &dyn Fn(usize) -> usize), (b, &lb)] {
        for x in 0..g.len() {
            inverse[re(x)] = re(g.inverse(x));
        }
        units.extend(g.units().iter().map(|&u| re(u)));
        triples.extend(g.triples().into_iter().map(|(p, q, r)| (re(p), re(q), re(r))));
    }
    Groupoid::from_raw(RawGroupoid {
        name,
        universe,
        units,
        inverse,
        triples,
    })
}

/// `Γ1 × Γ2` with multiplication `(m1 × m2)(id × σ × id)`; elements `(a|b)`.
pub fn cartesian_product(a: &Groupoid, b: &Groupoid) -> Result<Groupoid> {
    let name = format!("{}×{}", a.name, b.name);
    let (ua, ub) = (a.universe(), b.universe());
    let pair = |x: usize, y: usize| format!("({}|{})", a.label(x), b.label(y));
    let universe = Arc::new(Universe::new(
        name.clone(),
        (0..a.len()).flat_map(|x| (0..b.len()).map(move |y| pair(x, y))),
    )?);
    // tuple index x*|b| + y  →  atomic index of "(x|y)"
    let atom: Vec<usize> = (0..a.len())
        .flat_map(|x| (0..b.len()).map(move |y| (x, y)))
        .map(|(x, y)| universe.index_of(&pair(x, y)).expect("pair"))
        .collect();

    let middle_flip = FinRel::identity(Arc::clone(ua))
        .product(&FinRel::flip(ub, ua))
        .product(&FinRel::identity(Arc::clone(ub)));
    let mult = a.mult_relation().product(&b.mult_relation()).compose(&middle_flip)?;
    let nab = a.len() * b.len();
    let triples = mult
        .graph()
        .iter()
        .map(|&(out, input)| (atom[input / nab], atom[input % nab], atom[out]))
        .collect();
    let inverse_tuple: Vec<usize> = (0..nab)
        .map(|t| a.inverse(t / b.len()) * b.len() + b.inverse(t % b.len()))
        .collect();
    let mut inverse = vec![0; nab];
    for t in 0..nab {
        inverse[atom[t]] = atom[inverse_tuple[t]];
    }
    let units = a
        .units()
        .iter()
        .flat_map(|&x| b.units().iter().map(move |&y| x * b.len() + y))
        .map(|t| atom[t])
        .collect();
    Groupoid::from_raw(RawGroupoid {
        name,
        universe,
        units,
        inverse,
        triples,
    })
}
