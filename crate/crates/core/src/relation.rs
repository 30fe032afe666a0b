//! Finite relations between finite universes.
//!
//! A relation `r : X ⊸ Y` is stored as its graph `Gr(r) ⊂ Y × X`: every pair
//! is `(output, input)`. Composition, transposition and cartesian products
//! follow that convention throughout the crate.

use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Joins the components of a product-universe element.
pub const SEPARATOR: char = ',';

#[derive(Debug, Clone)]
enum Kind {
    Atomic {
        elements: Vec<String>,
        index: HashMap<String, usize>,
    },
    /// Flattened list of atomic factors, at least two of them. Indices are
    /// mixed-radix with the first factor most significant, so `(X×Y)×Z` and
    /// `X×(Y×Z)` are the same universe.
    Product { factors: Vec<Arc<Universe>> },
}

/// A finite ordered set of named elements.
///
/// Atomic universes keep their elements sorted lexicographically; product
/// universes order tuples lexicographically by component index.
#[derive(Debug, Clone)]
pub struct Universe {
    id: String,
    len: usize,
    kind: Kind,
}

impl Universe {
    pub fn new<I, S>(id: impl Into<String>, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let id = id.into();
        let mut elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if let Some(bad) = elements.iter().find(|e| e.contains(SEPARATOR)) {
            return Err(Error::ReservedSeparator(bad.clone()));
        }
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement {
                universe: id,
                element: w[0].clone(),
            });
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(Self {
            id,
            len: elements.len(),
            kind: Kind::Atomic { elements, index },
        })
    }

    /// The one-point set `{1}`.
    pub fn point() -> Self {
        Self::new("{1}", ["1"]).expect("static universe")
    }

    pub fn product(left: &Arc<Universe>, right: &Arc<Universe>) -> Self {
        let mut factors = left.factors();
        factors.extend(right.factors());
        Self {
            id: format!("{}×{}", left.id, right.id),
            len: left.len * right.len,
            kind: Kind::Product { factors },
        }
    }

    fn factors(self: &Arc<Self>) -> Vec<Arc<Universe>> {
        match &self.kind {
            Kind::Atomic { .. } => vec![Arc::clone(self)],
            Kind::Product { factors } => factors.clone(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_product(&self) -> bool {
        matches!(self.kind, Kind::Product { .. })
    }

    pub fn name(&self, i: usize) -> Cow<'_, str> {
        match &self.kind {
            Kind::Atomic { elements, .. } => Cow::Borrowed(&elements[i]),
            Kind::Product { factors } => {
                let mut parts = Vec::with_capacity(factors.len());
                let mut rest = i;
                for f in factors.iter().rev() {
                    parts.push(f.name(rest % f.len).into_owned());
                    rest /= f.len;
                }
                parts.reverse();
                Cow::Owned(parts.join(&SEPARATOR.to_string()))
            }
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        match &self.kind {
            Kind::Atomic { index, .. } => index.get(name).copied(),
            Kind::Product { factors } => {
                let parts: Vec<&str> = name.split(SEPARATOR).collect();
                if parts.len() != factors.len() {
                    return None;
                }
                let mut acc = 0;
                for (f, p) in factors.iter().zip(parts) {
                    acc = acc * f.len + f.index_of(p)?;
                }
                Some(acc)
            }
        }
    }

    /// The element name of an atomic universe; `None` for products.
    pub fn atomic_name(&self, i: usize) -> Option<&str> {
        match &self.kind {
            Kind::Atomic { elements, .. } => elements.get(i).map(String::as_str),
            Kind::Product { .. } => None,
        }
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownElement {
            universe: self.id.clone(),
            element: name.to_string(),
        })
    }

    pub fn names(&self) -> impl Iterator<Item = Cow<'_, str>> + '_ {
        (0..self.len).map(move |i| self.name(i))
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        if self.len != other.len {
            return false;
        }
        match (&self.kind, &other.kind) {
            (Kind::Atomic { elements: a, .. }, Kind::Atomic { elements: b, .. }) => a == b,
            (Kind::Product { factors: a }, Kind::Product { factors: b }) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| Arc::ptr_eq(x, y) || x == y)
            }
            _ => false,
        }
    }
}

impl Eq for Universe {}

fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::UniverseMismatch {
            left: a.id.clone(),
            right: b.id.clone(),
        })
    }
}

/// A relation `X ⊸ Y` between finite universes, stored as `Gr ⊂ Y × X`.
#[derive(Debug, Clone)]
pub struct FinRel {
    source: Arc<Universe>,
    target: Arc<Universe>,
    graph: BTreeSet<(usize, usize)>,
}

impl FinRel {
    pub fn new(
        source: Arc<Universe>,
        target: Arc<Universe>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let graph: BTreeSet<_> = pairs.into_iter().collect();
        if let Some(&(y, x)) = graph
            .iter()
            .find(|&&(y, x)| y >= target.len || x >= source.len)
        {
            let (universe, element) = if y >= target.len {
                (target.id.clone(), format!("#{y}"))
            } else {
                (source.id.clone(), format!("#{x}"))
            };
            return Err(Error::UnknownElement { universe, element });
        }
        Ok(Self {
            source,
            target,
            graph,
        })
    }

    /// Builds a relation from `(output, input)` name pairs.
    pub fn from_names<'a>(
        source: Arc<Universe>,
        target: Arc<Universe>,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut graph = BTreeSet::new();
        for (y, x) in pairs {
            graph.insert((target.lookup(y)?, source.lookup(x)?));
        }
        Ok(Self {
            source,
            target,
            graph,
        })
    }

    pub(crate) fn from_graph(
        source: Arc<Universe>,
        target: Arc<Universe>,
        graph: BTreeSet<(usize, usize)>,
    ) -> Self {
        debug_assert!(graph
            .iter()
            .all(|&(y, x)| y < target.len && x < source.len));
        Self {
            source,
            target,
            graph,
        }
    }

    /// The graph of a mapping `f : X → Y`.
    pub fn from_fn(source: Arc<Universe>, target: Arc<Universe>, f: impl Fn(usize) -> usize) -> Self {
        let graph = (0..source.len).map(|x| (f(x), x)).collect();
        Self::from_graph(source, target, graph)
    }

    pub fn identity(universe: Arc<Universe>) -> Self {
        let graph = (0..universe.len).map(|x| (x, x)).collect();
        Self::from_graph(Arc::clone(&universe), universe, graph)
    }

    /// The flip `σ : X × Y → Y × X`.
    pub fn flip(x: &Arc<Universe>, y: &Arc<Universe>) -> Self {
        let source = Arc::new(Universe::product(x, y));
        let target = Arc::new(Universe::product(y, x));
        let (nx, ny) = (x.len, y.len);
        let graph = (0..nx)
            .flat_map(|i| (0..ny).map(move |j| (j * nx + i, i * ny + j)))
            .collect();
        Self::from_graph(source, target, graph)
    }

    /// The canonical bijection `X → {1} × X`.
    pub fn left_unitor(x: &Arc<Universe>) -> Self {
        let point = Arc::new(Universe::point());
        let target = Arc::new(Universe::product(&point, x));
        Self::from_fn(Arc::clone(x), target, |i| i)
    }

    /// The canonical bijection `X → X × {1}`.
    pub fn right_unitor(x: &Arc<Universe>) -> Self {
        let point = Arc::new(Universe::point());
        let target = Arc::new(Universe::product(x, &point));
        Self::from_fn(Arc::clone(x), target, |i| i)
    }

    pub fn source(&self) -> &Arc<Universe> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Universe> {
        &self.target
    }

    pub fn graph(&self) -> &BTreeSet<(usize, usize)> {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn contains(&self, y: usize, x: usize) -> bool {
        self.graph.contains(&(y, x))
    }

    /// `sr`: first `r`, then `self`.
    pub fn compose(&self, r: &FinRel) -> Result<FinRel> {
        same_universe(&r.target, &self.source)?;
        let mut by_input: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(z, y) in &self.graph {
            by_input.entry(y).or_default().push(z);
        }
        let mut graph = BTreeSet::new();
        for &(y, x) in &r.graph {
            if let Some(zs) = by_input.get(&y) {
                graph.extend(zs.iter().map(|&z| (z, x)));
            }
        }
        Ok(Self::from_graph(
            Arc::clone(&r.source),
            Arc::clone(&self.target),
            graph,
        ))
    }

    pub fn transpose(&self) -> FinRel {
        let graph = self.graph.iter().map(|&(y, x)| (x, y)).collect();
        Self::from_graph(Arc::clone(&self.target), Arc::clone(&self.source), graph)
    }

    /// `r × r1 : X × X1 ⊸ Y × Y1`.
    pub fn product(&self, other: &FinRel) -> FinRel {
        let source = Arc::new(Universe::product(&self.source, &other.source));
        let target = Arc::new(Universe::product(&self.target, &other.target));
        let (nx1, ny1) = (other.source.len, other.target.len);
        let mut graph = BTreeSet::new();
        for &(y, x) in &self.graph {
            for &(y1, x1) in &other.graph {
                graph.insert((y * ny1 + y1, x * nx1 + x1));
            }
        }
        Self::from_graph(source, target, graph)
    }

    pub fn domain(&self) -> BTreeSet<usize> {
        self.graph.iter().map(|&(_, x)| x).collect()
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.graph.iter().map(|&(y, _)| y).collect()
    }

    pub fn apply_index(&self, x: usize) -> Vec<usize> {
        self.graph
            .iter()
            .filter(|&&(_, x1)| x1 == x)
            .map(|&(y, _)| y)
            .collect()
    }

    pub fn apply(&self, x: &str) -> Result<BTreeSet<String>> {
        let i = self.source.lookup(x)?;
        Ok(self
            .apply_index(i)
            .into_iter()
            .map(|y| self.target.name(y).into_owned())
            .collect())
    }

    /// True iff every input has exactly one output.
    pub fn is_mapping(&self) -> bool {
        let mut counts = vec![0usize; self.source.len];
        for &(_, x) in &self.graph {
            counts[x] += 1;
        }
        counts.iter().all(|&c| c == 1)
    }

    /// Smallest pair present in exactly one of the two graphs.
    pub fn first_difference(&self, other: &FinRel) -> Option<(usize, usize)> {
        self.graph
            .symmetric_difference(&other.graph)
            .next()
            .copied()
    }

    pub fn render_pair(&self, (y, x): (usize, usize)) -> String {
        format!("({}; {})", self.target.name(y), self.source.name(x))
    }

    /// Ok if the relations are equal, otherwise the rendered first difference.
    pub(crate) fn check_equal(&self, other: &FinRel) -> std::result::Result<(), String> {
        if let Err(e) = same_universe(&self.source, &other.source)
            .and_then(|_| same_universe(&self.target, &other.target))
        {
            return Err(e.to_string());
        }
        match self.first_difference(other) {
            None => Ok(()),
            Some(p) => Err(self.render_pair(p)),
        }
    }
}

impl PartialEq for FinRel {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.source == other.source && self.target == other.target
    }
}

impl Eq for FinRel {}

impl fmt::Display for FinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &p) in self.graph.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&self.render_pair(p))?;
        }
        f.write_str("}")
    }
}
