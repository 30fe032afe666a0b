//! Constructive refutations of the epimorphism property.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::mono::{CancellationWitness, Side};
use super::standard::left_regular;
use super::Morphism;
use crate::bisection::{ad, all_bisections_limited, BISECTION_LIMIT};
use crate::builders::{group_groupoid, GroupTable};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeparatingBranch {
    /// Some `γ0 ∉ Γ1` has `s(γ0) ≠ γ0`; the probe is `Γ²`.
    Involution { gamma0: usize },
    /// Every element outside `Γ1` is its own inverse; the probe is `G/H`.
    Quotient { e0: usize },
}

/// `k1 ≠ k2 : Γ ⊸ K` agreeing on a proper wide subgroupoid `Γ1`.
#[derive(Debug, Clone)]
pub struct SeparatingPair {
    pub branch: SeparatingBranch,
    pub probe: Arc<Groupoid>,
    pub first: Morphism,
    pub second: Morphism,
}

impl SeparatingPair {
    /// Checks `k1 ≠ k2` and that the graphs agree on pairs with input in `Γ1`.
    pub fn verify(&self, sub: &BTreeSet<usize>) -> Result<()> {
        if self.first == self.second {
            return Err(Error::Internal("separating morphisms coincide".into()));
        }
        if self.first.restricted_graph(sub) != self.second.restricted_graph(sub) {
            return Err(Error::Internal("separating morphisms differ on the subgroupoid".into()));
        }
        Ok(())
    }
}

/// For a proper wide subgroupoid `Γ1 ⊂ Γ`, two different morphisms out of
/// `Γ` that coincide on `Γ1`.
pub fn separating_pair(g: &Arc<Groupoid>, sub: &BTreeSet<usize>) -> Result<SeparatingPair> {
    if !g.is_wide(sub) {
        return Err(Error::Precondition(format!(
            "subset of `{}` is not a wide subgroupoid",
            g.name()
        )));
    }
    let outside: Vec<usize> = (0..g.len()).filter(|x| !sub.contains(x)).collect();
    if outside.is_empty() {
        return Err(Error::Precondition("the subgroupoid is not proper".into()));
    }
    let pair = match outside.iter().copied().find(|&x| g.inverse(x) != x) {
        Some(g0) => involution_branch(g, sub, g0)?,
        None => quotient_branch(g, sub, outside[0])?,
    };
    pair.verify(sub)?;
    Ok(pair)
}

fn involution_branch(g: &Arc<Groupoid>, sub: &BTreeSet<usize>, g0: usize) -> Result<SeparatingPair> {
    let e0 = g.left(g0);
    let h: Vec<usize> = sub.iter().copied().filter(|&x| g.right(x) == e0).collect();
    let hg0: BTreeSet<usize> = h.iter().map(|&x| g.mul(x, g0)).collect();
    let sigma = |x: usize| {
        if h.contains(&x) {
            g.mul(x, g0)
        } else if hg0.contains(&x) {
            g.mul(x, g.inverse(g0))
        } else {
            x
        }
    };
    let l = left_regular(g)?;
    let probe = Arc::clone(l.target());
    let bisection: BTreeSet<usize> = (0..g.len())
        .map(|x| probe.elem(&format!("({}|{})", g.label(sigma(x)), g.label(x))))
        .collect::<Result<_>>()?;
    let twisted = ad(&probe, &bisection)?.compose(&l)?;
    Ok(SeparatingPair {
        branch: SeparatingBranch::Involution { gamma0: g0 },
        probe,
        first: l,
        second: twisted,
    })
}

fn quotient_branch(g: &Arc<Groupoid>, sub: &BTreeSet<usize>, g0: usize) -> Result<SeparatingPair> {
    let e0 = g.right(g0);
    if g.component_of(e0).len() != g.isotropy(e0)?.members().len() {
        return Err(Error::Internal("orbit of e0 is not a single point".into()));
    }
    let members: Vec<usize> = g.isotropy(e0)?.into_members().into_iter().collect();
    let group = GroupTable::from_fn(
        format!("{}_{}", g.name(), g.label(e0)),
        members.iter().map(|&x| g.label(x).to_string()),
        g.label(e0),
        |a, b| {
            let (a, b) = (g.elem(a).expect("member"), g.elem(b).expect("member"));
            g.label(g.mul(a, b)).to_string()
        },
    )?;
    let normal: BTreeSet<usize> = members
        .iter()
        .filter(|x| sub.contains(x))
        .map(|&x| group.elem(g.label(x)))
        .collect::<Result<_>>()?;
    let (quotient, proj) = group.quotient(&normal)?;
    let probe = Arc::new(group_groupoid(&quotient)?);
    let unit = probe.units()[0];
    let to_k = |x: usize| -> Result<usize> {
        let q = proj[group.elem(g.label(x))?];
        probe.elem(quotient.label(q))
    };
    let first = members.iter().map(|&x| (unit, x));
    let second = members
        .iter()
        .map(|&x| to_k(x).map(|k| (k, x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeparatingPair {
        branch: SeparatingBranch::Quotient { e0 },
        first: Morphism::validate(Arc::clone(g), Arc::clone(&probe), first)?,
        second: Morphism::validate(Arc::clone(g), Arc::clone(&probe), second)?,
        probe,
    })
}

/// Looks for `k1 ≠ k2` out of the target with `k1∘h = k2∘h`.
///
/// For non-surjective `h` this is [`separating_pair`] on the image and always
/// succeeds. Otherwise bisections `B` of `Δ` are scanned in canonical order
/// for `Ad_B ≠ id` with `Ad_B∘h = h`. `None` does not prove that `h` is an
/// epimorphism.
pub fn find_non_epi_witness(h: &Morphism) -> Result<Option<CancellationWitness>> {
    let d = h.target();
    let witness = if !h.is_surjective() {
        let pair = separating_pair(d, h.image())?;
        Some(CancellationWitness {
            side: Side::Epi,
            probe: pair.probe,
            first: pair.first,
            second: pair.second,
        })
    } else {
        let id = Morphism::identity(d);
        let mut found = None;
        for b in all_bisections_limited(d, BISECTION_LIMIT)? {
            if b == d.unit_set() {
                continue;
            }
            let adb = ad(d, &b)?;
            if adb != id && adb.compose(h)? == *h {
                found = Some(CancellationWitness {
                    side: Side::Epi,
                    probe: Arc::clone(d),
                    first: adb,
                    second: id,
                });
                break;
            }
        }
        found
    };
    if let Some(w) = &witness {
        w.verify(h)?;
    }
    Ok(witness)
}
