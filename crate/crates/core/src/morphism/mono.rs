//! Cancellation witnesses for non-monomorphisms.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::Morphism;
use crate::builders::set_groupoid;
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::relation::Universe;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `first, second : K ⊸ Γ` with `h∘first = h∘second`.
    Mono,
    /// `first, second : Δ ⊸ K` with `first∘h = second∘h`.
    Epi,
}

/// Two different morphisms that `h` fails to distinguish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationWitness {
    pub side: Side,
    pub probe: Arc<Groupoid>,
    pub first: Morphism,
    pub second: Morphism,
}

impl CancellationWitness {
    /// Checks `first ≠ second` and that the two composites with `h` agree.
    pub fn verify(&self, h: &Morphism) -> Result<()> {
        if self.first == self.second {
            return Err(Error::Internal("witness morphisms coincide".into()));
        }
        let (a, b) = match self.side {
            Side::Mono => (h.compose(&self.first)?, h.compose(&self.second)?),
            Side::Epi => (self.first.compose(h)?, self.second.compose(h)?),
        };
        if a != b {
            return Err(Error::Internal("witness composites differ".into()));
        }
        Ok(())
    }
}

/// Builds the pair `ψ1 ≠ ψ2 : K ⊸ Γ` with `hψ1 = hψ2` for a morphism whose
/// kernel is larger than the units.
///
/// If `D(h) ≠ Γ`, `K` is the set groupoid on the units and the pair is
/// `idᵀ, f2ᵀ` where `f2` collapses the least missing orbit onto the least
/// unit outside it. When that orbit is everything, one extra point `*` is
/// added to `K` to collapse onto. Otherwise, with `γ0` the least non-unit
/// kernel element and `H0` its kernel isotropy group, `K = H0`,
/// `ψ1 = E × H0` and `ψ2 = (E∖{e0}) × H0 ∪ diag(H0)`.
pub fn mono_witness(h: &Morphism) -> Result<CancellationWitness> {
    if h.is_mono() {
        return Err(Error::IsMono);
    }
    let g = h.source();
    let witness = if h.domain().len() != g.len() {
        let missing: BTreeSet<usize> = g
            .orbits()
            .into_iter()
            .find(|o| !h.domain().contains(&o[0]))
            .expect("a missing orbit")
            .into_iter()
            .collect();
        let labels: Vec<String> = g.units().iter().map(|&u| g.label(u).to_string()).collect();
        let outside = g.units().iter().copied().find(|u| !missing.contains(u));
        let (probe, collapse_to) = match outside {
            Some(e0) => (labels.clone(), g.label(e0).to_string()),
            None => {
                let mut star = "*".to_string();
                while labels.contains(&star) {
                    star.push('*');
                }
                let mut probe = labels.clone();
                probe.push(star.clone());
                (probe, star)
            }
        };
        let probe = Arc::new(set_groupoid(&Universe::new(format!("{}⁰", g.name()), probe)?)?);
        let k = |name: &str| probe.elem(name).expect("probe point");
        let first = g.units().iter().map(|&e| (e, k(g.label(e))));
        let second: Vec<(usize, usize)> = g
            .units()
            .iter()
            .map(|&e| {
                if missing.contains(&e) {
                    (e, k(&collapse_to))
                } else {
                    (e, k(g.label(e)))
                }
            })
            .collect();
        CancellationWitness {
            side: Side::Mono,
            first: Morphism::validate(Arc::clone(&probe), Arc::clone(g), first)?,
            second: Morphism::validate(Arc::clone(&probe), Arc::clone(g), second)?,
            probe,
        }
    } else {
        let g0 = *h
            .kernel()
            .iter()
            .find(|&&x| !g.is_unit(x))
            .expect("non-unit kernel element");
        let e0 = g.left(g0);
        let h0: BTreeSet<usize> = g
            .isotropy(e0)?
            .members()
            .intersection(h.kernel())
            .copied()
            .collect();
        let probe = Arc::new(g.subgroupoid(&h0, format!("H0({})", g.name()))?);
        let k = |x: usize| probe.elem(g.label(x)).expect("kernel element");
        let first: Vec<(usize, usize)> = g
            .units()
            .iter()
            .flat_map(|&e| h0.iter().map(move |&x| (e, k(x))))
            .collect();
        let second: Vec<(usize, usize)> = g
            .units()
            .iter()
            .filter(|&&e| e != e0)
            .flat_map(|&e| h0.iter().map(move |&x| (e, k(x))))
            .chain(h0.iter().map(|&x| (x, k(x))))
            .collect();
        CancellationWitness {
            side: Side::Mono,
            first: Morphism::validate(Arc::clone(&probe), Arc::clone(g), first)?,
            second: Morphism::validate(Arc::clone(&probe), Arc::clone(g), second)?,
            probe,
        }
    };
    witness.verify(h)?;
    Ok(witness)
}
