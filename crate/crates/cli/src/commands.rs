//! One function per subcommand. Each resolves names, calls the library and
//! formats the result.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use zgroupoid::action::{
    action_groupoid, action_to_pair_morphism, classify_transitive_action, coset_space, homogeneous_identification,
    induced_action, morphism_to_action, pullback_action, quotient_groupoid,
};
use zgroupoid::bisection::{ad, all_bisections_limited, bisection_group, bisection_name, BISECTION_LIMIT};
use zgroupoid::builders::{
    equivalence_groupoid, group_bundle, group_groupoid, pair_groupoid, product_form, set_groupoid,
    transformation_groupoid,
};
use zgroupoid::groupoid::{cartesian_product, disjoint_union};
use zgroupoid::morphism::{
    classify_into_group, epi_mono_factorization, find_non_epi_witness, functor_to_morphism, mono_witness,
};
use zgroupoid::search::{enum_actions, enum_morphisms};
use zgroupoid::{Action, Error, GroupAction, GroupTable, Groupoid, Morphism, Universe};

use crate::doc::{self, action_triples, Document};
use crate::error::{CliError, CliResult};
use crate::{ActionCommand, BisectionsCommand, Build, Cli, Command, EnumCommand, GroupActionKind, MorphismCommand};

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub doc: Option<Document>,
    /// Print `doc` on stdout when no `--output` is given.
    pub doc_on_stdout: bool,
    pub extra: Vec<(PathBuf, Document)>,
    pub code: u8,
}

impl Outcome {
    fn text(text: String) -> Self {
        Outcome {
            text,
            doc: None,
            doc_on_stdout: false,
            extra: Vec::new(),
            code: 0,
        }
    }

    fn doc(doc: Document) -> Self {
        Outcome {
            doc: Some(doc),
            doc_on_stdout: true,
            ..Outcome::text(String::new())
        }
    }

    fn answer(holds: bool, text: String) -> Self {
        Outcome {
            code: if holds { 0 } else { 1 },
            ..Outcome::text(text)
        }
    }

    pub fn emit(&self, output: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
        let io = |path: &Path| {
            let path = path.display().to_string();
            move |source| CliError::Io { path, source }
        };
        out.write_all(self.text.as_bytes()).map_err(io(Path::new("<stdout>")))?;
        match (&self.doc, output) {
            (Some(doc), Some(path)) => fs::write(path, doc::render(doc)).map_err(io(path))?,
            (Some(doc), None) if self.doc_on_stdout => {
                out.write_all(doc::render(doc).as_bytes()).map_err(io(Path::new("<stdout>")))?
            }
            (None, Some(_)) => return Err(CliError::Usage("this command does not produce a document".into())),
            _ => {}
        }
        for (path, doc) in &self.extra {
            fs::write(path, doc::render(doc)).map_err(io(path))?;
        }
        Ok(())
    }
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Build(b) => build(b),
        Command::Validate { document } => validate(document, None),
        Command::Info { groupoid } => info(&*load_groupoid(groupoid)?),
        Command::Restrict { groupoid, units } => {
            let g = load_groupoid(groupoid)?;
            let units = elements(&g, units)?;
            Ok(Outcome::doc(Document::Groupoid(Arc::new(g.restrict(&units)?))))
        }
        Command::Union { left, right } => {
            let u = disjoint_union(&*load_groupoid(left)?, &*load_groupoid(right)?)?;
            Ok(Outcome::doc(Document::Groupoid(Arc::new(u))))
        }
        Command::Product { left, right } => {
            let p = cartesian_product(&*load_groupoid(left)?, &*load_groupoid(right)?)?;
            Ok(Outcome::doc(Document::Groupoid(Arc::new(p))))
        }
        Command::Decompose { groupoid } => decompose(&*load_groupoid(groupoid)?),
        Command::Morphism(m) => morphism(m),
        Command::Bisections(b) => bisections(b),
        Command::Action(a) => action(a),
        Command::Enum(e) => enumerate(e),
    }
}

fn load_groupoid(path: &str) -> CliResult<Arc<Groupoid>> {
    match doc::read(path)? {
        Document::Groupoid(g) => Ok(g),
        other => Err(wrong_kind(path, "groupoid", &other)),
    }
}

fn load_morphism(path: &str) -> CliResult<Morphism> {
    match doc::read(path)? {
        Document::Morphism { morphism, .. } => Ok(morphism),
        other => Err(wrong_kind(path, "morphism", &other)),
    }
}

fn load_action(path: &str) -> CliResult<Action> {
    match doc::read(path)? {
        Document::Action { action, .. } => Ok(action),
        other => Err(wrong_kind(path, "action", &other)),
    }
}

fn wrong_kind(path: &str, expected: &str, found: &Document) -> CliError {
    CliError::Usage(format!("{path}: expected a {expected} document, found a {}", found.kind()))
}

fn elements(g: &Groupoid, names: &[String]) -> CliResult<BTreeSet<usize>> {
    names.iter().map(|n| g.elem(n).map_err(CliError::from)).collect()
}

fn set_of(g: &Groupoid, set: impl IntoIterator<Item = usize>) -> String {
    let labels: Vec<&str> = set.into_iter().map(|x| g.label(x)).collect();
    format!("{{{}}}", labels.join(" "))
}

fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("{n} {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn parse_group(spec: &str) -> CliResult<GroupTable> {
    let bad = || CliError::Usage(format!("unknown group `{spec}`; use zN, sN (N ≤ 6), klein or trivial"));
    let order = |digits: &str| digits.parse::<usize>().ok().filter(|&n| n > 0);
    match spec {
        "trivial" => Ok(GroupTable::trivial()),
        "klein" => Ok(GroupTable::klein()),
        _ => {
            if let Some(n) = spec.strip_prefix(['z', 'Z']) {
                order(n).map(GroupTable::cyclic).ok_or_else(bad)
            } else if let Some(n) = spec.strip_prefix(['s', 'S']) {
                order(n).filter(|&n| n <= 6).map(GroupTable::symmetric).ok_or_else(bad)
            } else {
                Err(bad())
            }
        }
    }
}

fn universe(id: &str, points: &[String]) -> CliResult<Universe> {
    Ok(Universe::new(id, points.iter().cloned())?)
}

fn build(b: &Build) -> CliResult<Outcome> {
    let (g, name) = match b {
        Build::Pair { points, name } => (pair_groupoid(&universe("X", points)?)?, name),
        Build::Set { points, name } => (set_groupoid(&universe("X", points)?)?, name),
        Build::Group { group, name } => (group_groupoid(&parse_group(group)?)?, name),
        Build::Bundle { groups, name } => {
            let tables = groups.iter().map(|s| parse_group(s)).collect::<CliResult<Vec<_>>>()?;
            (group_bundle(&tables)?, name)
        }
        Build::Equiv { blocks, name } => {
            let blocks: Vec<Vec<String>> =
                blocks.iter().map(|b| b.split(',').map(|s| s.trim().to_string()).collect()).collect();
            let points: Vec<String> = blocks.concat();
            (equivalence_groupoid(&universe("X", &points)?, &blocks)?, name)
        }
        Build::ProductForm { group, units, name } => (product_form(&universe("E", units)?, &parse_group(group)?)?, name),
        Build::Transformation {
            group,
            points,
            action,
            name,
        } => {
            let table = parse_group(group)?;
            let action = match action {
                GroupActionKind::Shift => GroupAction::shift(table, universe("X", points)?)?,
                GroupActionKind::Trivial => GroupAction::trivial(table, universe("X", points)?)?,
                GroupActionKind::Regular => GroupAction::regular(table)?,
            };
            (transformation_groupoid(&action)?, name)
        }
    };
    let g = match name {
        Some(name) => g.with_name(name.clone()),
        None => g,
    };
    Ok(Outcome::doc(Document::Groupoid(Arc::new(g))))
}

/// Summarizes a document; invalid documents answer false.
fn validate(path: &str, expected: Option<&str>) -> CliResult<Outcome> {
    let doc = match doc::read(path) {
        Ok(doc) => doc,
        Err(e) if e.exit_code() == 1 => return Ok(Outcome::answer(false, format!("invalid: {e}\n"))),
        Err(e) => return Err(e),
    };
    if let Some(kind) = expected.filter(|&k| k != doc.kind()) {
        return Err(wrong_kind(path, kind, &doc));
    }
    let text = match &doc {
        Document::Groupoid(g) => format!(
            "valid: {}, {}, {}\n",
            count(g.len(), "element"),
            count(g.units().len(), "unit"),
            count(g.orbits().len(), "orbit")
        ),
        Document::Morphism { morphism: h, .. } => format!(
            "valid: morphism {} ⊸ {}, {}\n",
            h.source().name(),
            h.target().name(),
            count(h.graph().len(), "pair")
        ),
        Document::Action { action: phi, .. } => format!(
            "valid: action of {} on {}, {}\n",
            phi.groupoid().name(),
            count(phi.carrier().len(), "point"),
            count(phi.orbits().len(), "orbit")
        ),
    };
    Ok(Outcome {
        doc: Some(doc),
        doc_on_stdout: false,
        ..Outcome::text(text)
    })
}

fn info(g: &Groupoid) -> CliResult<Outcome> {
    let mut text = String::new();
    writeln!(text, "name: {}", g.name()).unwrap();
    writeln!(text, "elements: {}", g.len()).unwrap();
    writeln!(text, "units: {}", set_of(g, g.units().iter().copied())).unwrap();
    writeln!(text, "composable pairs: {}", g.composable_pairs().len()).unwrap();
    writeln!(text, "transitive: {}", if g.is_transitive() { "yes" } else { "no" }).unwrap();
    for orbit in g.orbits() {
        let base = orbit[0];
        let iso = g.isotropy(base)?;
        writeln!(
            text,
            "orbit {}: isotropy at {} is {} (order {})",
            set_of(g, orbit.iter().copied()),
            g.label(base),
            set_of(g, iso.members().iter().copied()),
            iso.members().len()
        )
        .unwrap();
    }
    Ok(Outcome::text(text))
}

fn decompose(g: &Groupoid) -> CliResult<Outcome> {
    let mut text = String::new();
    for (i, component) in g.transitive_components().iter().enumerate() {
        let sub = component.to_groupoid(format!("{}[{}]", g.name(), i + 1))?;
        let base = sub.units()[0];
        let d = sub.decompose_transitive(base)?;
        writeln!(
            text,
            "component {}: units {}, {}",
            i + 1,
            set_of(&sub, sub.units().iter().copied()),
            count(sub.len(), "element")
        )
        .unwrap();
        let group = d.form.group();
        let members: Vec<&str> = (0..group.len()).map(|x| group.label(x)).collect();
        writeln!(
            text,
            "  isotropy at {}: {{{}}} (order {})",
            sub.label(base),
            members.join(" "),
            group.len()
        )
        .unwrap();
        let section: Vec<String> =
            d.section.iter().map(|&(e, p)| format!("{} ↦ {}", sub.label(e), sub.label(p))).collect();
        writeln!(text, "  section: {}", section.join(", ")).unwrap();
    }
    Ok(Outcome::text(text))
}

fn graph_line(h: &Morphism) -> String {
    serde_json::to_string(&h.named_graph()).expect("strings serialize")
}

fn morphism(m: &MorphismCommand) -> CliResult<Outcome> {
    match m {
        MorphismCommand::Validate { morphism } => validate(morphism, Some("morphism")),
        MorphismCommand::Compose { k, h } => {
            let (k, h) = (load_morphism(k)?, load_morphism(h)?);
            Ok(Outcome::doc(Document::morphism(k.compose(&h)?)))
        }
        MorphismCommand::Kernel { morphism } => {
            let h = load_morphism(morphism)?;
            Ok(Outcome::text(format!("kernel: {}\n", set_of(h.source(), h.kernel().iter().copied()))))
        }
        MorphismCommand::Mono { morphism } => {
            let h = load_morphism(morphism)?;
            if h.is_mono() {
                return Ok(Outcome::answer(true, "mono\n".into()));
            }
            let w = mono_witness(&h)?;
            let text = format!(
                "not mono\nkernel: {}\nwitness probe: {}\n",
                set_of(h.source(), h.kernel().iter().copied()),
                w.probe.name()
            );
            Ok(Outcome::answer(false, text))
        }
        MorphismCommand::Surjective { morphism } => {
            let h = load_morphism(morphism)?;
            if h.is_surjective() {
                return Ok(Outcome::answer(true, "surjective\n".into()));
            }
            let missed = (0..h.target().len()).filter(|d| !h.image().contains(d));
            Ok(Outcome::answer(false, format!("not surjective\nmissed: {}\n", set_of(h.target(), missed))))
        }
        MorphismCommand::EpiWitness { morphism } => {
            let h = load_morphism(morphism)?;
            match find_non_epi_witness(&h)? {
                Some(w) => Ok(Outcome::answer(
                    true,
                    format!(
                        "not epi\nprobe: {}\nfirst: {}\nsecond: {}\n",
                        w.probe.name(),
                        graph_line(&w.first),
                        graph_line(&w.second)
                    ),
                )),
                None => Ok(Outcome::answer(false, "no witness\n".into())),
            }
        }
        MorphismCommand::Factor { morphism, epi, mono } => {
            let h = load_morphism(morphism)?;
            let (h1, h2) = epi_mono_factorization(&h)?;
            let text = format!(
                "epi: {} ⊸ {}, {}\nmono: {} ⊸ {}, {}\n",
                h1.source().name(),
                h1.target().name(),
                count(h1.graph().len(), "pair"),
                h2.source().name(),
                h2.target().name(),
                count(h2.graph().len(), "pair")
            );
            let mut outcome = Outcome::text(text);
            if let Some(path) = epi {
                outcome.extra.push((path.clone(), Document::morphism(h1)));
            }
            if let Some(path) = mono {
                outcome.extra.push((path.clone(), Document::morphism(h2)));
            }
            Ok(outcome)
        }
        MorphismCommand::ClassifyIntoGroup { morphism } => {
            let h = load_morphism(morphism)?;
            let c = classify_into_group(&h)?;
            let (g, t) = (h.source(), h.target());
            let mut text = format!("base unit: {}\n", g.label(c.e0));
            for (x, y) in &c.hom {
                writeln!(text, "{} ↦ {}", g.label(*x), t.label(*y)).unwrap();
            }
            Ok(Outcome::text(text))
        }
    }
}

fn bisections(b: &BisectionsCommand) -> CliResult<Outcome> {
    match b {
        BisectionsCommand::List { groupoid } => {
            let g = load_groupoid(groupoid)?;
            let mut text = String::new();
            for b in all_bisections_limited(&g, BISECTION_LIMIT)? {
                writeln!(text, "{}", bisection_name(&g, &b)).unwrap();
            }
            Ok(Outcome::text(text))
        }
        BisectionsCommand::Group { groupoid } => {
            let g = load_groupoid(groupoid)?;
            let bis = bisection_group(&g)?;
            let n = bis.names.len();
            let mut text = format!("order: {n}\n");
            for (i, name) in bis.names.iter().enumerate() {
                writeln!(text, "{i}: {name}").unwrap();
            }
            let index: BTreeMap<usize, usize> = (0..n).map(|i| (bis.element(i), i)).collect();
            text.push_str("table:\n");
            for a in 0..n {
                let row: Vec<String> = (0..n)
                    .map(|b| index[&bis.table.mul(bis.element(a), bis.element(b))].to_string())
                    .collect();
                writeln!(text, "{}", row.join(" ")).unwrap();
            }
            Ok(Outcome::text(text))
        }
        BisectionsCommand::Ad { groupoid, members } => {
            let g = load_groupoid(groupoid)?;
            let b = elements(&g, members)?;
            Ok(Outcome::doc(Document::morphism(ad(&g, &b)?)))
        }
    }
}

/// The points of `X` when `g` is exactly the pair groupoid `X²`.
fn pair_carrier(g: &Groupoid) -> CliResult<Arc<Universe>> {
    let not_pair = || CliError::from(Error::Precondition(format!("`{}` is not a pair groupoid", g.name())));
    let points = g
        .units()
        .iter()
        .map(|&u| {
            let inner = g.label(u).strip_prefix('(').and_then(|s| s.strip_suffix(')'));
            match inner.and_then(|s| s.split_once('|')) {
                Some((x, y)) if x == y => Ok(x.to_string()),
                _ => Err(not_pair()),
            }
        })
        .collect::<CliResult<Vec<_>>>()?;
    let x = Universe::new("X", points)?;
    if pair_groupoid(&x)? != *g {
        return Err(not_pair());
    }
    Ok(Arc::new(x))
}

fn action(a: &ActionCommand) -> CliResult<Outcome> {
    match a {
        ActionCommand::Validate { action } => validate(action, Some("action")),
        ActionCommand::ToMorphism { action } => {
            let phi = load_action(action)?;
            Ok(Outcome::doc(Document::morphism(action_to_pair_morphism(&phi)?)))
        }
        ActionCommand::FromMorphism { morphism } => {
            let h = load_morphism(morphism)?;
            let x = pair_carrier(h.target())?;
            Ok(Outcome::doc(Document::action(morphism_to_action(&h, &x)?)))
        }
        ActionCommand::Groupoid { action } => {
            let phi = load_action(action)?;
            Ok(Outcome::doc(Document::Groupoid(action_groupoid(&phi)?.groupoid)))
        }
        ActionCommand::Coset { groupoid, members } => {
            let g = load_groupoid(groupoid)?;
            let sub = elements(&g, members)?;
            Ok(Outcome::doc(Document::action(coset_space(&g, &sub)?.action)))
        }
        ActionCommand::Quotient { groupoid, members } => {
            let g = load_groupoid(groupoid)?;
            let sub = elements(&g, members)?;
            Ok(Outcome::doc(Document::Groupoid(quotient_groupoid(&g, &sub)?.groupoid)))
        }
        ActionCommand::Induce { groupoid, action } => {
            let g = load_groupoid(groupoid)?;
            let phi = load_action(action)?;
            Ok(Outcome::doc(Document::action(induced_action(&g, &phi)?.action)))
        }
        ActionCommand::Classify { action, point } => classify(&load_action(action)?, point.as_deref()),
        ActionCommand::Homogeneous { action, section } => homogeneous(&load_action(action)?, section),
    }
}

/// Pulls the action back along the product-form decomposition of its
/// groupoid and classifies it there.
fn classify(phi: &Action, point: Option<&str>) -> CliResult<Outcome> {
    let g = phi.groupoid();
    let x = phi.carrier();
    let z0 = point.map(|p| x.lookup(p)).transpose()?;
    if g.is_empty() {
        return Err(Error::Precondition("the groupoid is empty".into()).into());
    }
    let d = g.decompose_transitive(g.units()[0])?;
    let form_groupoid = Arc::new(d.form.groupoid().clone());
    let iso = functor_to_morphism(&form_groupoid, g, &d.map)?;
    let pulled = pullback_action(&iso, phi)?;
    let c = classify_transitive_action(&d.form, &pulled, z0)?;
    let group = d.form.group();
    let z = &c.z_tilde;
    let mut text = format!(
        "base point: {}\nbase unit: {}\nfiber: {{{}}}\n",
        x.name(c.z0),
        g.label(d.map[c.e0]),
        z.names().collect::<Vec<_>>().join(" ")
    );
    writeln!(text, "group: {} (order {})", group.name(), group.len()).unwrap();
    for h in 0..group.len() {
        let images: Vec<String> =
            (0..z.len()).map(|p| format!("{}↦{}", z.name(p), z.name(c.group_action.act(h, p)))).collect();
        writeln!(text, "  {}: {}", group.label(h), images.join(" ")).unwrap();
    }
    text.push_str("identification:\n");
    let y = c.induced.carrier();
    for (i, &p) in c.psi.iter().enumerate() {
        writeln!(text, "  {} ↦ {}", y.name(i), x.name(p)).unwrap();
    }
    Ok(Outcome::text(text))
}

fn homogeneous(phi: &Action, section: &[String]) -> CliResult<Outcome> {
    let g = phi.groupoid();
    let x = phi.carrier();
    let mut p = BTreeMap::new();
    for entry in section {
        let (unit, point) = entry
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("section entry `{entry}` is not unit=point")))?;
        p.insert(g.elem(unit)?, x.lookup(point)?);
    }
    let h = homogeneous_identification(phi, &p)?;
    let mut text = format!("subgroupoid: {}\n", set_of(g, h.sub.iter().copied()));
    writeln!(text, "classes: {}", h.cosets.universe.len()).unwrap();
    for (point, &class) in h.psi.iter().enumerate() {
        writeln!(text, "{} ↦ {}", x.name(point), h.cosets.universe.name(class)).unwrap();
    }
    Ok(Outcome::text(text))
}

fn enumerate(e: &EnumCommand) -> CliResult<Outcome> {
    let mut text = String::new();
    match e {
        EnumCommand::Morphisms { source, target } => {
            let all = enum_morphisms(&load_groupoid(source)?, &load_groupoid(target)?)?;
            for h in &all {
                writeln!(text, "{}", graph_line(h)).unwrap();
            }
            writeln!(text, "{}", count(all.len(), "morphism")).unwrap();
        }
        EnumCommand::Actions { groupoid, points } => {
            let g = load_groupoid(groupoid)?;
            let all = enum_actions(&g, &Arc::new(universe("X", points)?))?;
            for phi in &all {
                writeln!(text, "{}", serde_json::to_string(&action_triples(phi)).expect("strings serialize")).unwrap();
            }
            writeln!(text, "{}", count(all.len(), "action")).unwrap();
        }
        EnumCommand::Bisections { groupoid } => {
            let g = load_groupoid(groupoid)?;
            let all = all_bisections_limited(&g, BISECTION_LIMIT)?;
            for b in &all {
                writeln!(text, "{}", bisection_name(&g, b)).unwrap();
            }
            writeln!(text, "{}", count(all.len(), "bisection")).unwrap();
        }
    }
    Ok(Outcome::text(text))
}
