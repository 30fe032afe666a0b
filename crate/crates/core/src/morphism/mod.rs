//! Zakrzewski morphisms: relations `h : Γ ⊸ Δ` with `hm = m'(h×h)`,
//! `hs = s'h` and `he = e'`.

mod epi;
mod factor;
mod mono;
mod standard;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, MorphismAxiom, Result};
use crate::groupoid::Groupoid;
use crate::relation::FinRel;

pub use epi::{find_non_epi_witness, separating_pair, SeparatingBranch, SeparatingPair};
pub use factor::{
    classify_into_group, epi_mono_factorization, morphism_into_group, product_pairing,
    quotient_by_kernel, GroupClassification,
};
pub use mono::{mono_witness, CancellationWitness, Side};
pub use standard::{
    component_projection, functor_to_morphism, group_action_morphism, left_regular,
    product_injections, restrict_to_domain, to_orbit_pair, to_orbit_relation, union_projections,
    wide_inclusion,
};
pub(crate) use standard::{check_functor, unit_universe};

/// A validated morphism together with its derived data.
#[derive(Debug, Clone)]
pub struct Morphism {
    source: Arc<Groupoid>,
    target: Arc<Groupoid>,
    rel: FinRel,
    base: BTreeMap<usize, usize>,
    domain: BTreeSet<usize>,
    image: BTreeSet<usize>,
    kernel: BTreeSet<usize>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.rel == other.rel && self.source == other.source && self.target == other.target
    }
}

impl Eq for Morphism {}

impl Morphism {
    /// Validates a graph of `(δ, γ)` pairs, `δ ∈ Δ`, `γ ∈ Γ`.
    pub fn validate(
        source: Arc<Groupoid>,
        target: Arc<Groupoid>,
        graph: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Morphism> {
        let rel = FinRel::new(
            Arc::clone(source.universe()),
            Arc::clone(target.universe()),
            graph,
        )?;
        Self::from_rel(source, target, rel)
    }

    /// Validates a graph given by `(δ, γ)` element names.
    pub fn from_names<'a>(
        source: Arc<Groupoid>,
        target: Arc<Groupoid>,
        graph: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Morphism> {
        let rel = FinRel::from_names(
            Arc::clone(source.universe()),
            Arc::clone(target.universe()),
            graph,
        )?;
        Self::from_rel(source, target, rel)
    }

    pub fn from_rel(source: Arc<Groupoid>, target: Arc<Groupoid>, rel: FinRel) -> Result<Morphism> {
        if **rel.source() != **source.universe() || **rel.target() != **target.universe() {
            return Err(Error::UniverseMismatch {
                left: format!("{} ⊸ {}", rel.source().id(), rel.target().id()),
                right: format!("{} ⊸ {}", source.name(), target.name()),
            });
        }
        let fail = |axiom, witness| Error::MorphismAxiom { axiom, witness };
        rel.compose(&source.unit_relation())?
            .check_equal(&target.unit_relation())
            .map_err(|w| fail(MorphismAxiom::Units, w))?;
        rel.compose(&source.inverse_relation())?
            .check_equal(&target.inverse_relation().compose(&rel)?)
            .map_err(|w| fail(MorphismAxiom::Inverse, w))?;
        rel.compose(&source.mult_relation())?
            .check_equal(&target.mult_relation().compose(&rel.product(&rel))?)
            .map_err(|w| fail(MorphismAxiom::Multiplicative, w))?;
        Self::derive(source, target, rel)
    }

    /// Computes `ρ_h`, `D(h)`, `Im(h)` and the kernel of a relation already
    /// known to satisfy the three equalities, checking their stated properties.
    fn derive(source: Arc<Groupoid>, target: Arc<Groupoid>, rel: FinRel) -> Result<Morphism> {
        let derived = |w: String| Error::MorphismAxiom {
            axiom: MorphismAxiom::Derived,
            witness: w,
        };
        let mut related: Vec<Vec<usize>> = vec![Vec::new(); target.len()];
        let mut related_to: Vec<Vec<usize>> = vec![Vec::new(); source.len()];
        for &(d, g) in rel.graph() {
            related[d].push(g);
            related_to[g].push(d);
        }
        let mut base = BTreeMap::new();
        for &f in target.units() {
            let units: Vec<usize> = related[f].iter().copied().filter(|&e| source.is_unit(e)).collect();
            match units.as_slice() {
                [e] => {
                    base.insert(f, *e);
                }
                _ => return Err(derived(format!("base map at {}", target.label(f)))),
            }
        }
        let domain: BTreeSet<usize> = (0..source.len()).filter(|&g| !related_to[g].is_empty()).collect();
        let image: BTreeSet<usize> = (0..target.len()).filter(|&d| !related[d].is_empty()).collect();
        if !source.is_union_of_components(&domain) {
            return Err(derived("domain is not a union of transitive components".into()));
        }
        if !target.is_wide(&image) {
            return Err(derived("image is not a wide subgroupoid".into()));
        }
        let kernel = domain
            .iter()
            .copied()
            .filter(|&g| related_to[g].iter().all(|&d| target.is_unit(d)))
            .collect();
        let h = Morphism {
            source,
            target,
            rel,
            base,
            domain,
            image,
            kernel,
        };
        for &f in h.target.units() {
            h.fiber_map_right(f)?;
            h.fiber_map_left(f)?;
        }
        Ok(h)
    }

    pub fn identity(g: &Arc<Groupoid>) -> Morphism {
        Self::validate(Arc::clone(g), Arc::clone(g), (0..g.len()).map(|x| (x, x)))
            .expect("identity is a morphism")
    }

    /// `self ∘ h`, i.e. first `h` then `self`.
    pub fn compose(&self, h: &Morphism) -> Result<Morphism> {
        if *h.target != *self.source {
            return Err(Error::UniverseMismatch {
                left: h.target.name().to_string(),
                right: self.source.name().to_string(),
            });
        }
        let rel = FinRel::from_graph(
            Arc::clone(h.source.universe()),
            Arc::clone(self.target.universe()),
            self.rel.compose(&h.rel)?.graph().clone(),
        );
        Self::from_rel(Arc::clone(&h.source), Arc::clone(&self.target), rel)
    }

    pub fn source(&self) -> &Arc<Groupoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Groupoid> {
        &self.target
    }

    pub fn relation(&self) -> &FinRel {
        &self.rel
    }

    /// `(δ, γ)` pairs.
    pub fn graph(&self) -> &BTreeSet<(usize, usize)> {
        self.rel.graph()
    }

    pub fn contains(&self, d: usize, g: usize) -> bool {
        self.rel.contains(d, g)
    }

    /// `(δ, γ)` pairs by element name.
    pub fn named_graph(&self) -> Vec<(String, String)> {
        self.graph()
            .iter()
            .map(|&(d, g)| (self.target.label(d).to_string(), self.source.label(g).to_string()))
            .collect()
    }

    /// Everything related to `γ`.
    pub fn apply(&self, g: usize) -> Vec<usize> {
        self.rel.apply_index(g)
    }

    /// `h(A)` for a subset of the source.
    pub fn image_of(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        self.graph()
            .iter()
            .filter(|(_, g)| set.contains(g))
            .map(|&(d, _)| d)
            .collect()
    }

    /// `ρ_h : E_Δ → E_Γ`.
    pub fn base_map(&self) -> &BTreeMap<usize, usize> {
        &self.base
    }

    pub fn rho(&self, f: usize) -> usize {
        self.base[&f]
    }

    /// `D(h)`.
    pub fn domain(&self) -> &BTreeSet<usize> {
        &self.domain
    }

    /// `Im(h)`.
    pub fn image(&self) -> &BTreeSet<usize> {
        &self.image
    }

    /// `{γ ∈ D(h) : every δ related to γ is a unit}`.
    pub fn kernel(&self) -> &BTreeSet<usize> {
        &self.kernel
    }

    pub fn is_mono(&self) -> bool {
        self.kernel == self.source.unit_set()
    }

    pub fn is_surjective(&self) -> bool {
        self.image.len() == self.target.len()
    }

    /// True when `h` is the graph of a bijection `Γ → Δ`.
    pub fn is_bijective(&self) -> bool {
        self.graph().len() == self.source.len()
            && self.domain.len() == self.source.len()
            && self.is_surjective()
            && self.rel.transpose().is_mapping()
    }

    fn fiber_map(&self, f: usize, right: bool) -> Result<Vec<(usize, usize)>> {
        let e = *self.base.get(&f).ok_or_else(|| {
            Error::Precondition(format!("`{}` is not a unit of `{}`", self.target.label(f), self.target.name()))
        })?;
        let (src_side, tgt_side) = if right {
            (Groupoid::right as fn(&Groupoid, usize) -> usize, Groupoid::right as fn(&Groupoid, usize) -> usize)
        } else {
            (Groupoid::left as fn(&Groupoid, usize) -> usize, Groupoid::left as fn(&Groupoid, usize) -> usize)
        };
        let mut out = Vec::new();
        for g in (0..self.source.len()).filter(|&g| src_side(&self.source, g) == e) {
            let hits: Vec<usize> = self
                .apply(g)
                .into_iter()
                .filter(|&d| tgt_side(&self.target, d) == f)
                .collect();
            match hits.as_slice() {
                [d] => out.push((g, *d)),
                _ => {
                    return Err(Error::MorphismAxiom {
                        axiom: MorphismAxiom::Derived,
                        witness: format!(
                            "fiber map at {} is not defined uniquely on {}",
                            self.target.label(f),
                            self.source.label(g)
                        ),
                    })
                }
            }
        }
        Ok(out)
    }

    /// `h_f^R : e_R⁻¹(ρ(f)) → e_R⁻¹(f)` as `(γ, δ)` pairs.
    pub fn fiber_map_right(&self, f: usize) -> Result<Vec<(usize, usize)>> {
        self.fiber_map(f, true)
    }

    /// `h_f^L : e_L⁻¹(ρ(f)) → e_L⁻¹(f)` as `(γ, δ)` pairs.
    pub fn fiber_map_left(&self, f: usize) -> Result<Vec<(usize, usize)>> {
        self.fiber_map(f, false)
    }

    /// `h` restricted to inputs in `set`.
    pub fn restricted_graph(&self, set: &BTreeSet<usize>) -> BTreeSet<(usize, usize)> {
        self.graph()
            .iter()
            .filter(|(_, g)| set.contains(g))
            .copied()
            .collect()
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊸ {}: ", self.source.name(), self.target.name())?;
        let pairs: Vec<String> = self
            .named_graph()
            .into_iter()
            .map(|(d, g)| format!("({d}; {g})"))
            .collect();
        write!(f, "{{{}}}", pairs.join(", "))
    }
}

/// Validates a candidate morphism graph; see [`Morphism::validate`].
pub fn validate_morphism(
    source: &Arc<Groupoid>,
    target: &Arc<Groupoid>,
    graph: impl IntoIterator<Item = (usize, usize)>,
) -> Result<Morphism> {
    Morphism::validate(Arc::clone(source), Arc::clone(target), graph)
}

/// `k ∘ h`.
pub fn compose_morphisms(k: &Morphism, h: &Morphism) -> Result<Morphism> {
    k.compose(h)
}
