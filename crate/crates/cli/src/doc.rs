//! The document format: groupoids, morphisms and actions as JSON objects.
//!
//! Canonical form has sorted keys, elements in universe order, graphs in
//! index order, two-space indentation and a trailing newline. Morphism and
//! action documents refer to their groupoids either by path (relative to the
//! referring document) or inline.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{Map, Value};
use zgroupoid::{Action, Groupoid, GroupoidData, Morphism, Universe};

use crate::error::{CliError, CliResult};

/// A groupoid together with the way a document refers to it.
#[derive(Debug, Clone)]
pub struct GroupoidRef {
    /// Kept verbatim so that re-serialization round trips.
    pub path: Option<String>,
    pub groupoid: Arc<Groupoid>,
}

impl GroupoidRef {
    pub fn inline(groupoid: Arc<Groupoid>) -> Self {
        GroupoidRef { path: None, groupoid }
    }
}

#[derive(Debug, Clone)]
pub enum Document {
    Groupoid(Arc<Groupoid>),
    Morphism {
        name: Option<String>,
        source: GroupoidRef,
        target: GroupoidRef,
        morphism: Morphism,
    },
    Action {
        name: Option<String>,
        groupoid: GroupoidRef,
        action: Action,
    },
}

impl Document {
    pub fn morphism(morphism: Morphism) -> Self {
        Document::Morphism {
            name: None,
            source: GroupoidRef::inline(Arc::clone(morphism.source())),
            target: GroupoidRef::inline(Arc::clone(morphism.target())),
            morphism,
        }
    }

    pub fn action(action: Action) -> Self {
        Document::Action {
            name: None,
            groupoid: GroupoidRef::inline(Arc::clone(action.groupoid())),
            action,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Groupoid(_) => "groupoid",
            Document::Morphism { .. } => "morphism",
            Document::Action { .. } => "action",
        }
    }
}

/// Reads a document from a path, or from stdin when the path is `-`.
pub fn read(path: &str) -> CliResult<Document> {
    let io = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io)?;
        parse(&text, "<stdin>", Path::new("."))
    } else {
        let text = fs::read_to_string(path).map_err(io)?;
        let base = Path::new(path).parent().map(Path::to_path_buf).unwrap_or_default();
        parse(&text, path, &base)
    }
}

/// Parses and validates a document; relative paths resolve against `base`.
pub fn parse(text: &str, origin: &str, base: &Path) -> CliResult<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Syntax {
        origin: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })?;
    let ctx = Context { text, origin, base };
    ctx.document(&value)
}

struct Context<'a> {
    text: &'a str,
    origin: &'a str,
    base: &'a Path,
}

impl Context<'_> {
    fn schema(&self, message: impl Into<String>) -> CliError {
        CliError::Schema {
            origin: self.origin.to_string(),
            message: message.into(),
        }
    }

    /// Attaches the line of the first mention of an unknown element.
    fn library(&self, source: zgroupoid::Error) -> CliError {
        let line = match &source {
            zgroupoid::Error::UnknownElement { element, .. } | zgroupoid::Error::DuplicateElement { element, .. } => {
                let needle = serde_json::to_string(element).unwrap_or_default();
                match &source {
                    zgroupoid::Error::DuplicateElement { .. } => nth_line(self.text, &needle, 1),
                    _ => nth_line(self.text, &needle, 0),
                }
            }
            _ => None,
        };
        CliError::Library {
            origin: Some(self.origin.to_string()),
            line,
            source,
        }
    }

    fn object<'v>(&self, value: &'v Value, allowed: &[&str]) -> CliResult<&'v Map<String, Value>> {
        let map = value.as_object().ok_or_else(|| self.schema("expected a document object"))?;
        if let Some(key) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(self.schema(format!("unknown key `{key}`")));
        }
        Ok(map)
    }

    fn document(&self, value: &Value) -> CliResult<Document> {
        let kind = value
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| self.schema("missing string field `kind`"))?;
        match kind {
            "groupoid" => self.groupoid(value).map(Document::Groupoid),
            "morphism" => self.morphism(value),
            "action" => self.action(value),
            other => Err(self.schema(format!("unknown document kind `{other}`"))),
        }
    }

    fn groupoid(&self, value: &Value) -> CliResult<Arc<Groupoid>> {
        let map = self.object(value, &["kind", "name", "elements", "units", "inverse", "compose"])?;
        let inverse = field(map, "inverse")
            .and_then(|v| v.as_object().ok_or_else(|| "`inverse` must be an object".to_string()))
            .map_err(|e| self.schema(e))?
            .iter()
            .map(|(k, v)| {
                v.as_str()
                    .map(|s| (k.clone(), s.to_string()))
                    .ok_or_else(|| self.schema(format!("inverse of `{k}` must be a string")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let compose = self
            .tuples(map, "compose", 3)?
            .into_iter()
            .map(|t| (t[0].clone(), t[1].clone(), t[2].clone()))
            .collect();
        let data = GroupoidData {
            name: self.string(map, "name")?,
            elements: self.strings(map, "elements")?,
            units: self.strings(map, "units")?,
            inverse,
            compose,
        };
        Groupoid::validate(&data).map(Arc::new).map_err(|e| self.library(e))
    }

    fn reference(&self, map: &Map<String, Value>, key: &str) -> CliResult<GroupoidRef> {
        match field(map, key).map_err(|e| self.schema(e))? {
            Value::String(path) => {
                let resolved: PathBuf = self.base.join(path);
                let shown = resolved.to_string_lossy().into_owned();
                match read(&shown)? {
                    Document::Groupoid(groupoid) => Ok(GroupoidRef {
                        path: Some(path.clone()),
                        groupoid,
                    }),
                    other => Err(self.schema(format!("`{key}` refers to a {} document", other.kind()))),
                }
            }
            inline @ Value::Object(_) => match self.document(inline)? {
                Document::Groupoid(groupoid) => Ok(GroupoidRef::inline(groupoid)),
                other => Err(self.schema(format!("`{key}` is a {} document", other.kind()))),
            },
            _ => Err(self.schema(format!("`{key}` must be a path or a groupoid document"))),
        }
    }

    fn morphism(&self, value: &Value) -> CliResult<Document> {
        let map = self.object(value, &["kind", "name", "source", "target", "graph"])?;
        let name = self.optional_string(map, "name")?;
        let source = self.reference(map, "source")?;
        let target = self.reference(map, "target")?;
        let graph = self.tuples(map, "graph", 2)?;
        let morphism = Morphism::from_names(
            Arc::clone(&source.groupoid),
            Arc::clone(&target.groupoid),
            graph.iter().map(|p| (p[0].as_str(), p[1].as_str())),
        )
        .map_err(|e| self.library(e))?;
        Ok(Document::Morphism {
            name,
            source,
            target,
            morphism,
        })
    }

    fn action(&self, value: &Value) -> CliResult<Document> {
        let map = self.object(value, &["kind", "name", "groupoid", "carrier", "graph"])?;
        let name = self.optional_string(map, "name")?;
        let groupoid = self.reference(map, "groupoid")?;
        let carrier = Universe::new(name.clone().unwrap_or_else(|| "X".into()), self.strings(map, "carrier")?)
            .map_err(|e| self.library(e))?;
        let graph = self.tuples(map, "graph", 3)?;
        let action = Action::from_names(
            Arc::clone(&groupoid.groupoid),
            Arc::new(carrier),
            graph.iter().map(|t| (t[0].as_str(), t[1].as_str(), t[2].as_str())),
        )
        .map_err(|e| self.library(e))?;
        Ok(Document::Action { name, groupoid, action })
    }

    fn string(&self, map: &Map<String, Value>, key: &str) -> CliResult<String> {
        field(map, key)
            .and_then(|v| v.as_str().ok_or_else(|| "must be a string".to_string()))
            .map(str::to_string)
            .map_err(|e| self.schema(format!("`{key}`: {e}")))
    }

    fn optional_string(&self, map: &Map<String, Value>, key: &str) -> CliResult<Option<String>> {
        match map.get(key) {
            None => Ok(None),
            Some(_) => self.string(map, key).map(Some),
        }
    }

    fn strings(&self, map: &Map<String, Value>, key: &str) -> CliResult<Vec<String>> {
        let items = field(map, key)
            .and_then(|v| v.as_array().ok_or_else(|| "must be an array".to_string()))
            .map_err(|e| self.schema(format!("`{key}`: {e}")))?;
        items
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| self.schema(format!("`{key}`: expected strings, found {v}")))
            })
            .collect()
    }

    fn tuples(&self, map: &Map<String, Value>, key: &str, arity: usize) -> CliResult<Vec<Vec<String>>> {
        let items = field(map, key)
            .and_then(|v| v.as_array().ok_or_else(|| "must be an array".to_string()))
            .map_err(|e| self.schema(format!("`{key}`: {e}")))?;
        items
            .iter()
            .map(|item| {
                let tuple: Option<Vec<String>> = item
                    .as_array()
                    .filter(|a| a.len() == arity)
                    .and_then(|a| a.iter().map(|s| s.as_str().map(str::to_string)).collect());
                tuple.ok_or_else(|| self.schema(format!("`{key}`: expected {arity} strings, found {item}")))
            })
            .collect()
    }
}

fn field<'v>(map: &'v Map<String, Value>, key: &str) -> Result<&'v Value, String> {
    map.get(key).ok_or_else(|| format!("missing field `{key}`"))
}

/// 1-based line of the `skip`-th occurrence of `needle`.
fn nth_line(text: &str, needle: &str, skip: usize) -> Option<usize> {
    let (at, _) = text.match_indices(needle).nth(skip)?;
    Some(text[..at].matches('\n').count() + 1)
}

/// Keys are inserted in sorted order, so the output is sorted whether or not
/// `serde_json` preserves insertion order.
fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut entries = entries;
    entries.sort_by(|a, b| a.0.cmp(b.0));
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn strings<S: AsRef<str>>(items: impl IntoIterator<Item = S>) -> Value {
    Value::Array(items.into_iter().map(|s| Value::String(s.as_ref().to_string())).collect())
}

pub fn groupoid_value(g: &Groupoid) -> Value {
    let n = g.len();
    let mut compose = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if let Some(ab) = g.product(a, b) {
                compose.push(strings([g.label(a), g.label(b), g.label(ab)]));
            }
        }
    }
    let inverse: Map<String, Value> = (0..n)
        .map(|x| (g.label(x).to_string(), Value::String(g.label(g.inverse(x)).to_string())))
        .collect();
    object(vec![
        ("compose", Value::Array(compose)),
        ("elements", strings((0..n).map(|x| g.label(x)))),
        ("inverse", Value::Object(inverse)),
        ("kind", "groupoid".into()),
        ("name", g.name().into()),
        ("units", strings(g.units().iter().map(|&u| g.label(u)))),
    ])
}

fn reference_value(r: &GroupoidRef) -> Value {
    match &r.path {
        Some(path) => Value::String(path.clone()),
        None => groupoid_value(&r.groupoid),
    }
}

/// `(y, γ, x)` name triples in index order.
pub fn action_triples(action: &Action) -> Vec<[String; 3]> {
    let mut triples = action.triples();
    triples.sort_unstable();
    let (g, x) = (action.groupoid(), action.carrier());
    triples
        .into_iter()
        .map(|(y, a, p)| [x.name(y).into_owned(), g.label(a).to_string(), x.name(p).into_owned()])
        .collect()
}

pub fn to_value(doc: &Document) -> Value {
    match doc {
        Document::Groupoid(g) => groupoid_value(g),
        Document::Morphism {
            name,
            source,
            target,
            morphism,
        } => {
            let graph = morphism.named_graph().into_iter().map(|(d, g)| strings([d, g])).collect();
            let mut entries = vec![
                ("graph", Value::Array(graph)),
                ("kind", "morphism".into()),
                ("source", reference_value(source)),
                ("target", reference_value(target)),
            ];
            if let Some(name) = name {
                entries.push(("name", name.as_str().into()));
            }
            object(entries)
        }
        Document::Action { name, groupoid, action } => {
            let graph = action_triples(action).into_iter().map(strings).collect();
            let mut entries = vec![
                ("carrier", strings(action.carrier().names())),
                ("graph", Value::Array(graph)),
                ("groupoid", reference_value(groupoid)),
                ("kind", "action".into()),
            ];
            if let Some(name) = name {
                entries.push(("name", name.as_str().into()));
            }
            object(entries)
        }
    }
}

/// Canonical text of a document: two-space indentation, one entry per line,
/// except that tuples inside a table stay on one line.
pub fn render(doc: &Document) -> String {
    let mut text = String::new();
    write_value(&mut text, &to_value(doc), 0, false);
    text.push('\n');
    text
}

fn write_value(out: &mut String, value: &Value, depth: usize, in_array: bool) {
    let pad = |n: usize| "  ".repeat(n);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (key, v)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, v, depth + 1, false);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() && !(in_array && items.iter().all(|v| !v.is_array() && !v.is_object())) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, v, depth + 1, true);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&inner.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zgroupoid::catalog;

    fn here() -> &'static Path {
        Path::new(".")
    }

    #[test]
    fn canonical_z2_round_trips() {
        let text = render(&Document::Groupoid(Arc::new(catalog::z2())));
        let doc = parse(&text, "z2", here()).unwrap();
        assert_eq!(render(&doc), text);
        assert!(text.ends_with("}\n"));
        assert!(text.starts_with("{\n  \"compose\": ["));
    }

    #[test]
    fn key_order_is_normalized() {
        let text = r#"{"units":["0"],"name":"Z2","kind":"groupoid","inverse":{"1":"1","0":"0"},
            "elements":["1","0"],"compose":[["1","1","0"],["0","0","0"],["1","0","1"],["0","1","1"]]}"#;
        let doc = parse(text, "z2", here()).unwrap();
        assert_eq!(render(&doc), render(&Document::Groupoid(Arc::new(catalog::z2()))));
    }

    #[test]
    fn unknown_element_names_element_and_line() {
        let text = "{\n\"kind\": \"groupoid\", \"name\": \"Z2\",\n\"elements\": [\"0\", \"1\"], \"units\": [\"0\"],\n\"inverse\": {\"0\": \"0\", \"1\": \"1\"},\n\"compose\": [[\"0\", \"0\", \"0\"], [\"0\", \"1\", \"1\"],\n[\"1\", \"0\", \"1\"], [\"1\", \"1\", \"7\"]]\n}\n";
        let err = parse(text, "z2.gpd", here()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.starts_with("z2.gpd:6: "), "{msg}");
        assert!(msg.contains("`7`"), "{msg}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("{\n  \"kind\": \"groupoid\",\n  ]", "bad", here()).unwrap_err();
        assert!(matches!(err, CliError::Syntax { line: 3, .. }), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn axiom_failures_exit_one() {
        let mut value = groupoid_value(&catalog::z2());
        value["inverse"]["1"] = "0".into();
        let err = parse(&value.to_string(), "z2", here()).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut value = groupoid_value(&catalog::z2());
        value["colour"] = "red".into();
        assert!(matches!(parse(&value.to_string(), "z2", here()), Err(CliError::Schema { .. })));
    }

    #[test]
    fn morphism_and_action_round_trip_inline() {
        let z2 = Arc::new(catalog::z2());
        let docs = [
            Document::morphism(Morphism::identity(&z2)),
            Document::action(zgroupoid::action::left_multiplication(&z2).unwrap()),
        ];
        for doc in docs {
            let text = render(&doc);
            assert_eq!(render(&parse(&text, "doc", here()).unwrap()), text);
        }
    }
}
