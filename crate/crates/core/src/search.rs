//! Brute-force enumeration: morphisms, actions, cancellation witnesses and
//! isomorphisms between small groupoids.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::action::{morphism_to_action, Action};
use crate::builders::{group_groupoid, pair_groupoid, set_groupoid, GroupTable};
use crate::error::{Error, Result};
use crate::groupoid::Groupoid;
use crate::morphism::{CancellationWitness, Morphism, Side};
use crate::relation::Universe;

/// Limits for exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumBudget {
    /// Cap on `|Δ|·|Γ|` for the naive subset enumeration.
    pub max_pairs: usize,
    /// Cap on candidates examined by the structured enumeration.
    pub max_candidates: usize,
    /// Ignore `max_pairs` (the naive search still refuses more than 40 pairs).
    pub override_cap: bool,
}

impl Default for EnumBudget {
    fn default() -> Self {
        Self {
            max_pairs: 20,
            max_candidates: 5_000_000,
            override_cap: false,
        }
    }
}

const NAIVE_HARD_LIMIT: usize = 40;

/// Every subset of `Δ × Γ` that validates as a morphism `Γ ⊸ Δ`, in
/// canonical graph order.
///
/// Subsets are first screened with bit operations that are exact
/// reformulations of `he = e'` and `hs = s'h`; survivors go through full
/// validation, which decides `hm = m'(h×h)`.
pub fn enum_morphisms_naive(g: &Arc<Groupoid>, d: &Arc<Groupoid>, budget: &EnumBudget) -> Result<Vec<Morphism>> {
    let (ng, nd) = (g.len(), d.len());
    let n = ng * nd;
    if (!budget.override_cap && n > budget.max_pairs) || n > NAIVE_HARD_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "|{}|·|{}| = {n} exceeds {}",
            d.name(),
            g.name(),
            if budget.override_cap { NAIVE_HARD_LIMIT } else { budget.max_pairs }
        )));
    }
    let bit = |delta: usize, gamma: usize| delta * ng + gamma;
    // bits (δ, u) with u a unit of Γ, per δ
    let unit_rows: Vec<u64> = (0..nd)
        .map(|delta| g.units().iter().fold(0u64, |m, &u| m | 1 << bit(delta, u)))
        .collect();
    let swap: Vec<usize> = (0..n)
        .map(|i| bit(d.inverse(i / ng), g.inverse(i % ng)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if (0..nd).any(|delta| (mask & unit_rows[delta] != 0) != d.is_unit(delta)) {
            continue;
        }
        if (0..n).any(|i| (mask >> i & 1) != (mask >> swap[i] & 1)) {
            continue;
        }
        let graph = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| (i / ng, i % ng));
        if let Ok(h) = Morphism::validate(Arc::clone(g), Arc::clone(d), graph) {
            out.push(h);
        }
    }
    out.sort_by(|a, b| a.graph().cmp(b.graph()));
    Ok(out)
}

/// Structured enumeration of morphisms `Γ ⊸ Δ`.
///
/// A candidate is fixed by a base map `ρ : E_Δ → E_Γ` whose image is a union
/// of orbits and, for every orbit `O` in that image with reference unit
/// `e_O`, by maps `h_f^R : e_R⁻¹(e_O) → e_R⁻¹(f)` for the `f` with
/// `ρ(f) = e_O`. The
/// rest of the graph is forced by `h(γ) = h(γ p) · s(h(p))`. Every candidate
/// is validated.
pub fn enum_morphisms(g: &Arc<Groupoid>, d: &Arc<Groupoid>) -> Result<Vec<Morphism>> {
    enum_morphisms_with(g, d, &EnumBudget::default())
}

pub fn enum_morphisms_with(g: &Arc<Groupoid>, d: &Arc<Groupoid>, budget: &EnumBudget) -> Result<Vec<Morphism>> {
    let orbit_of = g.orbit_index();
    let orbits = g.orbits();
    let f_units = d.units();
    let g_units = g.units();
    // reference unit of each orbit and a path p(e) : e_O → e for each unit e
    let reference: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
    let path: BTreeMap<usize, usize> = g_units
        .iter()
        .map(|&e| {
            let r = reference[orbit_of[&e]];
            let p = (0..g.len())
                .find(|&x| g.right(x) == r && g.left(x) == e)
                .expect("same orbit");
            (e, p)
        })
        .collect();
    let fiber = |r: usize| -> Vec<usize> { (0..g.len()).filter(|&x| g.right(x) == r).collect() };
    let mut out: BTreeMap<BTreeSet<(usize, usize)>, Morphism> = BTreeMap::new();
    let mut examined = 0usize;
    let mut rho = vec![0usize; f_units.len()];
    let total = g_units.len().checked_pow(f_units.len() as u32).unwrap_or(usize::MAX);
    if g_units.is_empty() && !f_units.is_empty() {
        return Ok(Vec::new());
    }
    for code in 0..total.max(1) {
        let mut c = code;
        for slot in rho.iter_mut() {
            *slot = g_units[c % g_units.len().max(1)];
            c /= g_units.len().max(1);
        }
        let hit: BTreeSet<usize> = rho.iter().map(|e| orbit_of[e]).collect();
        let covered: BTreeSet<usize> = rho.iter().copied().collect();
        let full = hit
            .iter()
            .all(|&o| orbits[o].iter().all(|e| covered.contains(e)));
        if !full {
            continue;
        }
        // choices: for each f, a map fiber(e_O) → e_R⁻¹(f) with pruning
        let mut slots: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for (k, &f) in f_units.iter().enumerate() {
            let r = rho[k];
            if r != reference[orbit_of[&r]] {
                continue;
            }
            for x in fiber(r) {
                let options: Vec<usize> = (0..d.len())
                    .filter(|&y| d.right(y) == f)
                    .filter(|&y| {
                        let l = d.left(y);
                        let kl = f_units.iter().position(|&u| u == l).expect("unit");
                        rho[kl] == g.left(x)
                    })
                    .filter(|&y| !g.is_unit(x) || x != r || y == f)
                    .collect();
                slots.push((f, x, options));
            }
        }
        if slots.iter().any(|(_, _, o)| o.is_empty()) {
            continue;
        }
        let mut choice = vec![0usize; slots.len()];
        loop {
            examined += 1;
            if examined > budget.max_candidates {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} candidates for {} ⊸ {}",
                    budget.max_candidates,
                    g.name(),
                    d.name()
                )));
            }
            // h on the reference fibers
            let mut on_fiber: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
            for (i, (_, x, options)) in slots.iter().enumerate() {
                on_fiber.entry(*x).or_default().insert(options[choice[i]]);
            }
            let mut graph = BTreeSet::new();
            for x in 0..g.len() {
                if !hit.contains(&orbit_of[&g.right(x)]) {
                    continue;
                }
                let p = path[&g.right(x)];
                let xp = g.mul(x, p);
                let (Some(a), Some(b)) = (on_fiber.get(&xp), on_fiber.get(&p)) else {
                    continue;
                };
                for &y1 in a {
                    for &y2 in b {
                        if let Some(y) = d.product(y1, d.inverse(y2)) {
                            graph.insert((y, x));
                        }
                    }
                }
            }
            if let Ok(h) = Morphism::validate(Arc::clone(g), Arc::clone(d), graph) {
                out.insert(h.graph().clone(), h);
            }
            // next choice
            let mut i = 0;
            while i < slots.len() {
                choice[i] += 1;
                if choice[i] < slots[i].2.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == slots.len() {
                break;
            }
        }
    }
    Ok(out.into_values().collect())
}

/// Actions of `Γ` on `X`, via morphisms `Γ ⊸ X²`.
pub fn enum_actions(g: &Arc<Groupoid>, x: &Arc<Universe>) -> Result<Vec<Action>> {
    let x2 = Arc::new(pair_groupoid(x)?);
    let mut out = enum_morphisms(g, &x2)?
        .iter()
        .map(|h| morphism_to_action(h, x))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|a| a.triples());
    Ok(out)
}

/// Actions of `Γ` on `X` found directly from the fibered definition: a map
/// `ρ : X → E` and a partial map on `{(γ, x) : e_R(γ) = ρ(x)}` with
/// `ρ(x)x = x`, `ρ(γx) = e_L(γ)` and `γ1(γ2x) = (γ1γ2)x`.
pub fn enum_actions_classical(g: &Arc<Groupoid>, x: &Arc<Universe>) -> Result<Vec<Action>> {
    let nx = x.len();
    let units = g.units();
    let mut out: Vec<Result<Action>> = Vec::new();
    if units.is_empty() && nx > 0 {
        return Ok(Vec::new());
    }
    let total = units.len().max(1).pow(nx as u32);
    let pairs = g.composable_pairs();
    for code in 0..total {
        let mut c = code;
        let rho: Vec<usize> = (0..nx)
            .map(|_| {
                let u = units[c % units.len()];
                c /= units.len();
                u
            })
            .collect();
        let slots: Vec<(usize, usize)> = (0..g.len())
            .flat_map(|a| (0..nx).map(move |p| (a, p)))
            .filter(|&(a, p)| g.right(a) == rho[p])
            .collect();
        let options: Vec<Vec<usize>> = slots
            .iter()
            .map(|&(a, p)| {
                if g.is_unit(a) {
                    vec![p]
                } else {
                    (0..nx).filter(|&q| rho[q] == g.left(a)).collect()
                }
            })
            .collect();
        let mut act: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        search_classical(g, &pairs, &slots, &options, 0, &mut act, &mut |act| {
            let triples = act.iter().map(|(&(a, p), &q)| (q, a, p));
            out.push(Action::validate(Arc::clone(g), Arc::clone(x), triples));
        });
    }
    let mut out = out.into_iter().collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|a| a.triples());
    Ok(out)
}

fn search_classical(
    g: &Groupoid,
    pairs: &[(usize, usize)],
    slots: &[(usize, usize)],
    options: &[Vec<usize>],
    i: usize,
    act: &mut BTreeMap<(usize, usize), usize>,
    emit: &mut dyn FnMut(&BTreeMap<(usize, usize), usize>),
) {
    if i == slots.len() {
        emit(act);
        return;
    }
    for &q in &options[i] {
        act.insert(slots[i], q);
        let consistent = pairs.iter().all(|&(a, b)| {
            act.iter().filter(|(&(c, _), _)| c == b).all(|(&(_, p), &bp)| {
                match (act.get(&(a, bp)), act.get(&(g.mul(a, b), p))) {
                    (Some(u), Some(v)) => u == v,
                    _ => true,
                }
            })
        });
        if consistent {
            search_classical(g, pairs, slots, options, i + 1, act, emit);
        }
        act.remove(&slots[i]);
    }
}

/// The probes suggested by the monomorphism argument: set groupoids on the
/// units (with and without an extra point) and every subgroup of every
/// isotropy group.
pub fn mono_probe_family(g: &Groupoid) -> Result<Vec<Arc<Groupoid>>> {
    let labels: Vec<String> = g.units().iter().map(|&u| g.label(u).to_string()).collect();
    let mut star = "*".to_string();
    while labels.contains(&star) {
        star.push('*');
    }
    let mut probes = vec![
        Arc::new(set_groupoid(&Universe::new("E", labels.clone())?)?),
        Arc::new(set_groupoid(&Universe::new("E*", labels.into_iter().chain([star]))?)?),
    ];
    for &e in g.units() {
        let members: Vec<usize> = g.isotropy(e)?.into_members().into_iter().collect();
        let group = GroupTable::from_fn(
            format!("{}_{}", g.name(), g.label(e)),
            members.iter().map(|&x| g.label(x).to_string()),
            g.label(e),
            |a, b| {
                let (a, b) = (g.elem(a).expect("member"), g.elem(b).expect("member"));
                g.label(g.mul(a, b)).to_string()
            },
        )?;
        for sub in group.subgroups() {
            let set: BTreeSet<usize> = sub.iter().map(|&i| g.elem(group.label(i))).collect::<Result<_>>()?;
            let probe = g.subgroupoid(&set, format!("H({})", g.label(e)))?;
            if !probes.iter().any(|p| **p == probe) {
                probes.push(Arc::new(probe));
            }
        }
    }
    Ok(probes)
}

/// Searches each probe, in order, for the first pair `(ψi, ψj)`, `i < j` in
/// canonical order, of enumerated morphisms that `h` fails to separate.
pub fn check_cancellation(h: &Morphism, side: Side, probes: &[Arc<Groupoid>]) -> Result<Option<CancellationWitness>> {
    for probe in probes {
        let candidates = match side {
            Side::Mono => enum_morphisms(probe, h.source())?,
            Side::Epi => enum_morphisms(h.target(), probe)?,
        };
        let composites = candidates
            .iter()
            .map(|k| match side {
                Side::Mono => h.compose(k),
                Side::Epi => k.compose(h),
            })
            .collect::<Result<Vec<_>>>()?;
        for i in 0..candidates.len() {
            for j in i + 1..candidates.len() {
                if composites[i] == composites[j] {
                    let w = CancellationWitness {
                        side,
                        probe: Arc::clone(probe),
                        first: candidates[i].clone(),
                        second: candidates[j].clone(),
                    };
                    w.verify(h)?;
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// An isomorphism `a → b` as an element map, found by backtracking.
pub fn find_isomorphism(a: &Groupoid, b: &Groupoid) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.units().len() != b.units().len() {
        return None;
    }
    let n = a.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let ok = |map: &[usize], x: usize| -> bool {
        let y = map[x];
        if a.is_unit(x) != b.is_unit(y) {
            return false;
        }
        let sx = a.inverse(x);
        if map[sx] != usize::MAX && map[sx] != b.inverse(y) {
            return false;
        }
        for z in 0..n {
            if map[z] == usize::MAX {
                continue;
            }
            for (p, q) in [(x, z), (z, x)] {
                let (mp, mq) = (map[p], map[q]);
                match (a.product(p, q), b.product(mp, mq)) {
                    (None, None) => {}
                    (Some(c), Some(d)) => {
                        if map[c] != usize::MAX && map[c] != d {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    };
    fn go(
        x: usize,
        n: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(&[usize], usize) -> bool,
    ) -> bool {
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if ok(map, x) && go(x + 1, n, map, used, ok) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }
    if go(0, n, &mut map, &mut used, &ok) {
        Some(map)
    } else {
        None
    }
}

pub fn find_group_isomorphism(a: &GroupTable, b: &GroupTable) -> Option<Vec<usize>> {
    let ga = group_groupoid(a).ok()?;
    let gb = group_groupoid(b).ok()?;
    let map = find_isomorphism(&ga, &gb)?;
    Some(
        (0..a.len())
            .map(|i| {
                let x = ga.elem(a.label(i)).expect("element");
                b.elem(gb.label(map[x])).expect("element")
            })
            .collect(),
    )
}
