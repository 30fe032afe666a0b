//! Bisections: subsets meeting every left and every right fiber exactly once.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::builders::GroupTable;
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::morphism::Morphism;

/// Refuse to tabulate more bisections than this.
pub const BISECTION_LIMIT: usize = 10_000;

/// `AB = {ab : a ∈ A, b ∈ B, (a, b) composable}`.
pub fn subset_mult(g: &Groupoid, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.iter()
        .flat_map(|&x| b.iter().filter_map(move |&y| g.product(x, y)))
        .collect()
}

/// `s(A)`.
pub fn subset_inverse(g: &Groupoid, a: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.iter().map(|&x| g.inverse(x)).collect()
}

fn is_section(g: &Groupoid, a: &BTreeSet<usize>, proj: fn(&Groupoid, usize) -> usize) -> bool {
    let hit: BTreeSet<usize> = a.iter().map(|&x| proj(g, x)).collect();
    hit.len() == a.len()
}

/// `A` meets each fiber of `e_R` over `e_R(A)` once.
pub fn is_right_section(g: &Groupoid, a: &BTreeSet<usize>) -> bool {
    is_section(g, a, Groupoid::right)
}

/// `A` meets each fiber of `e_L` over `e_L(A)` once.
pub fn is_left_section(g: &Groupoid, a: &BTreeSet<usize>) -> bool {
    is_section(g, a, Groupoid::left)
}

/// The definition: a section of both `e_L` and `e_R` over all of `E`.
pub fn is_bisection_by_fibers(g: &Groupoid, a: &BTreeSet<usize>) -> bool {
    let n = g.units().len();
    a.len() == n && is_left_section(g, a) && is_right_section(g, a)
}

/// The product characterization `s(A)A = As(A) = E`.
pub fn is_bisection_by_products(g: &Groupoid, a: &BTreeSet<usize>) -> bool {
    let s = subset_inverse(g, a);
    let units = g.unit_set();
    subset_mult(g, &s, a) == units && subset_mult(g, a, &s) == units
}

pub fn is_bisection(g: &Groupoid, a: &BTreeSet<usize>) -> bool {
    let by_fibers = is_bisection_by_fibers(g, a);
    assert_eq!(
        by_fibers,
        is_bisection_by_products(g, a),
        "bisection characterizations disagree in `{}`",
        g.name()
    );
    by_fibers
}

/// All bisections in lexicographic order of their sorted member lists.
pub fn all_bisections(g: &Groupoid) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    enumerate(g, usize::MAX, &mut out);
    out
}

/// [`all_bisections`], failing once more than `limit` have been found.
pub fn all_bisections_limited(g: &Groupoid, limit: usize) -> Result<Vec<BTreeSet<usize>>> {
    let mut out = Vec::new();
    if !enumerate(g, limit, &mut out) {
        return Err(Error::TooManyBisections {
            count: out.len(),
            limit,
        });
    }
    Ok(out)
}

/// One choice per left fiber, pruned by right-fiber availability. Returns
/// false when the limit was hit.
fn enumerate(g: &Groupoid, limit: usize, out: &mut Vec<BTreeSet<usize>>) -> bool {
    let units = g.units();
    let fibers: Vec<Vec<usize>> = units
        .iter()
        .map(|&e| (0..g.len()).filter(|&x| g.left(x) == e).collect())
        .collect();
    let mut used = vec![false; g.len()];
    let mut chosen = Vec::with_capacity(units.len());
    fn go(
        g: &Groupoid,
        fibers: &[Vec<usize>],
        k: usize,
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        limit: usize,
        out: &mut Vec<BTreeSet<usize>>,
    ) -> bool {
        if k == fibers.len() {
            if out.len() >= limit {
                return false;
            }
            out.push(chosen.iter().copied().collect());
            return true;
        }
        for &x in &fibers[k] {
            let r = g.right(x);
            if used[r] {
                continue;
            }
            used[r] = true;
            chosen.push(x);
            let ok = go(g, fibers, k + 1, used, chosen, limit, out);
            chosen.pop();
            used[r] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    let ok = go(g, &fibers, 0, &mut used, &mut chosen, limit, out);
    out.sort_by(|a, b| a.iter().cmp(b.iter()));
    ok
}

/// `Bγ = γ'γ` with `γ'` the member of `B` whose source is `e_L(γ)`.
pub fn act(g: &Groupoid, b: &BTreeSet<usize>, x: usize) -> usize {
    let y = *b
        .iter()
        .find(|&&y| g.right(y) == g.left(x))
        .expect("bisections meet every right fiber");
    g.mul(y, x)
}

/// `Ad_B : γ ↦ Bγs(B)` as a morphism `Γ ⊸ Γ`.
pub fn ad(g: &Arc<Groupoid>, b: &BTreeSet<usize>) -> Result<Morphism> {
    if !is_bisection(g, b) {
        return Err(Error::Precondition(format!("not a bisection of `{}`", g.name())));
    }
    let s = subset_inverse(g, b);
    let graph = (0..g.len())
        .map(|x| {
            let conj = subset_mult(g, &subset_mult(g, b, &BTreeSet::from([x])), &s);
            match conj.len() {
                1 => Ok((*conj.first().unwrap(), x)),
                _ => Err(Error::Internal(format!("Bγs(B) is not a single element at {}", g.label(x)))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::validate(Arc::clone(g), Arc::clone(g), graph)
}

/// `h(B)`, checked to be a bisection of the target.
pub fn image_bisection(h: &Morphism, b: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    let image = h.image_of(b);
    if !is_bisection(h.target(), &image) {
        return Err(Error::Internal("h(B) is not a bisection".into()));
    }
    Ok(image)
}

/// The group of bisections under subset multiplication.
#[derive(Debug, Clone)]
pub struct BisectionGroup {
    /// Bisections in canonical order; index `i` is the group element named
    /// [`bisection_name`] of `members[i]`.
    pub members: Vec<BTreeSet<usize>>,
    pub names: Vec<String>,
    pub table: GroupTable,
}

impl BisectionGroup {
    pub fn index_of(&self, b: &BTreeSet<usize>) -> Option<usize> {
        self.members.iter().position(|m| m == b)
    }

    /// The group-table element of the `i`-th bisection.
    pub fn element(&self, i: usize) -> usize {
        self.table.elem(&self.names[i]).expect("bisection element")
    }
}

/// `{a b c}` from member labels.
pub fn bisection_name(g: &Groupoid, b: &BTreeSet<usize>) -> String {
    let labels: Vec<&str> = b.iter().map(|&x| g.label(x)).collect();
    format!("{{{}}}", labels.join(" "))
}

pub fn bisection_group(g: &Groupoid) -> Result<BisectionGroup> {
    let members = all_bisections_limited(g, BISECTION_LIMIT)?;
    let names: Vec<String> = members.iter().map(|b| bisection_name(g, b)).collect();
    let by_name: BTreeMap<&str, &BTreeSet<usize>> =
        names.iter().map(String::as_str).zip(members.iter()).collect();
    let table = GroupTable::from_fn(
        format!("Bis({})", g.name()),
        names.iter().cloned(),
        &bisection_name(g, &g.unit_set()),
        |a, b| bisection_name(g, &subset_mult(g, by_name[a], by_name[b])),
    )?;
    for (i, b) in members.iter().enumerate() {
        let inv = table.inv(table.elem(&names[i])?);
        if table.label(inv) != bisection_name(g, &subset_inverse(g, b)) {
            return Err(Error::Internal("bisection inverse is not s(B)".into()));
        }
    }
    Ok(BisectionGroup {
        members,
        table,
        names,
    })
}

/// `B ↦ h(B)` on all bisections of the source.
#[derive(Debug, Clone)]
pub struct InducedHom {
    pub pairs: Vec<(BTreeSet<usize>, BTreeSet<usize>)>,
}

impl InducedHom {
    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<&BTreeSet<usize>> = self.pairs.iter().map(|(_, b)| b).collect();
        images.len() == self.pairs.len()
    }
}

/// Tabulates `B ↦ h(B)` and checks `h(s(B)) = s(h(B))` and `h(BB') = h(B)h(B')`.
pub fn induced_hom(h: &Morphism) -> Result<InducedHom> {
    let (g, d) = (h.source(), h.target());
    let source = all_bisections_limited(g, BISECTION_LIMIT)?;
    let mut map = BTreeMap::new();
    for b in &source {
        map.insert(b.clone(), image_bisection(h, b)?);
    }
    for b in &source {
        if map[&subset_inverse(g, b)] != subset_inverse(d, &map[b]) {
            return Err(Error::Internal("h(s(B)) ≠ s(h(B))".into()));
        }
        for c in &source {
            if map[&subset_mult(g, b, c)] != subset_mult(d, &map[b], &map[c]) {
                return Err(Error::Internal("h(BB') ≠ h(B)h(B')".into()));
            }
        }
    }
    Ok(InducedHom {
        pairs: map.into_iter().collect(),
    })
}
