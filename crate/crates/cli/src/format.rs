//! On-disk formats: digraph JSON, path-system JSON and DOT.
//!
//! All JSON written here is canonical: arcs sorted lexicographically, fixed
//! field order, two-space indentation and a trailing newline.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use klinkage::{CompositionSpec, Digraph, Part, PathSystem, Vertex};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: line {line}, column {column}: {message}")]
    Json { path: String, line: usize, column: usize, message: String },
    #[error("{path}: field `{field}`: {message}")]
    Field { path: String, field: &'static str, message: String },
}

/// Digraph file: `{"n": .., "arcs": [[u, v], ..], "parts": [[..], ..]?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DigraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub n: usize,
    pub arcs: Vec<(Vertex, Vertex)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<Vertex>>>,
    /// Terminal pairs suggested by the generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(Vertex, Vertex)>>,
}

impl DigraphFile {
    pub fn from_digraph(d: &Digraph) -> Self {
        let mut arcs = d.arcs();
        arcs.sort_unstable();
        DigraphFile { seed: None, family: None, n: d.order(), arcs, parts: None, pairs: None }
    }

    pub fn from_spec(spec: &CompositionSpec) -> Result<Self, klinkage::Error> {
        let mut f = Self::from_digraph(&spec.compose()?);
        f.parts = Some(spec.partition());
        Ok(f)
    }

    pub fn digraph(&self, path: &str) -> Result<Digraph, FormatError> {
        Digraph::from_arcs(self.n, &self.arcs)
            .map_err(|e| FormatError::Field { path: path.into(), field: "arcs", message: e.to_string() })
    }

    /// Recovers `H[S_1, ..., S_h]` from the parts: `H` gets the arc `ij` when
    /// the first vertices of parts `i` and `j` are joined. The composition is
    /// checked to reproduce the stored arc set exactly.
    pub fn composition(&self, path: &str) -> Result<CompositionSpec, FormatError> {
        let field_err = |message: String| FormatError::Field { path: path.into(), field: "parts", message };
        let parts = self.parts.as_ref().ok_or_else(|| field_err("missing (required for compositions)".into()))?;
        let d = self.digraph(path)?;
        if parts.iter().any(|p| p.is_empty()) {
            return Err(field_err("empty part".into()));
        }
        let h = parts.len();
        let mut outer = Digraph::empty(h);
        for i in 0..h {
            for j in 0..h {
                if i != j && d.has_arc(parts[i][0], parts[j][0]) {
                    outer.add_arc(i, j).map_err(|e| field_err(e.to_string()))?;
                }
            }
        }
        let d = &d;
        let spec = CompositionSpec {
            outer,
            parts: parts
                .iter()
                .map(|vs| Part {
                    vertices: vs.clone(),
                    arcs: vs.iter().flat_map(|&a| vs.iter().filter(move |&&b| d.has_arc(a, b)).map(move |&b| (a, b))).collect(),
                })
                .collect(),
        };
        let realized = spec.compose().map_err(|e| field_err(e.to_string()))?;
        if realized.order() != d.order() || realized.arcs() != d.arcs() {
            return Err(field_err("arcs are not those of a composition over these parts".into()));
        }
        Ok(spec)
    }
}

/// Path-system file: `{"paths": [[..], ..], "pairs": [[s, t], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub paths: Vec<Vec<Vertex>>,
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl PathSystemFile {
    pub fn from_system(ps: &PathSystem, seed: Option<u64>) -> Self {
        PathSystemFile { seed, paths: ps.paths.clone(), pairs: ps.pairs.clone() }
    }

    pub fn system(&self) -> PathSystem {
        let mut ps = PathSystem::new(self.paths.clone(), "file");
        ps.pairs = self.pairs.clone();
        ps
    }
}

/// Indents object members; arrays (and everything inside them) stay on one
/// line.
#[derive(Default)]
struct InlineArrays {
    depth: usize,
    in_array: usize,
    has_value: bool,
}

impl InlineArrays {
    fn indent<W: ?Sized + std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.depth {
            w.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl serde_json::ser::Formatter for InlineArrays {
    fn begin_array<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.in_array += 1;
        w.write_all(b"[")
    }

    fn end_array<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.in_array -= 1;
        w.write_all(b"]")
    }

    fn begin_array_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        if self.in_array == 0 {
            self.depth += 1;
            self.has_value = false;
        }
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        if self.in_array == 0 {
            self.depth -= 1;
            if self.has_value {
                self.indent(w)?;
            }
            self.has_value = true;
        }
        w.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + std::io::Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        if self.in_array > 0 {
            return w.write_all(if first { b"" } else { b", " });
        }
        if !first {
            w.write_all(b",")?;
        }
        self.indent(w)
    }

    fn begin_object_value<W: ?Sized + std::io::Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + std::io::Write>(&mut self, _w: &mut W) -> std::io::Result<()> {
        if self.in_array == 0 {
            self.has_value = true;
        }
        Ok(())
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, InlineArrays::default());
    value.serialize(&mut ser).expect("serializable value");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Json {
        path: path.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FormatError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: name.clone(), source })?;
    parse(&text, &name)
}

pub fn write(path: &Path, contents: &str) -> Result<(), FormatError> {
    std::fs::write(path, contents).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

/// DOT rendering. Vertices of `highlight` paths are coloured per path, 2-cycles
/// are drawn as two arcs.
pub fn to_dot(d: &Digraph, parts: Option<&[Vec<Vertex>]>, highlight: &[Vec<Vertex>]) -> String {
    const COLORS: [&str; 6] = ["red", "blue", "darkgreen", "orange", "purple", "brown"];
    let mut on_path = std::collections::BTreeMap::new();
    for (i, p) in highlight.iter().enumerate() {
        for w in p.windows(2) {
            on_path.insert((w[0], w[1]), COLORS[i % COLORS.len()]);
        }
    }
    let mut s = String::from("digraph D {\n");
    match parts {
        Some(parts) => {
            for (i, part) in parts.iter().enumerate() {
                let _ = writeln!(s, "  subgraph cluster_{i} {{");
                for v in part {
                    let _ = writeln!(s, "    {v};");
                }
                s.push_str("  }\n");
            }
        }
        None => {
            for v in d.vertices() {
                let _ = writeln!(s, "  {v};");
            }
        }
    }
    let mut arcs = d.arcs();
    arcs.sort_unstable();
    for (a, b) in arcs {
        match on_path.get(&(a, b)) {
            Some(c) => {
                let _ = writeln!(s, "  {a} -> {b} [color={c}, penwidth=2];");
            }
            None => {
                let _ = writeln!(s, "  {a} -> {b};");
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digraph_round_trip_is_byte_stable() {
        let d = klinkage::generators::random_tournament(9, 4);
        let text = to_json(&DigraphFile::from_digraph(&d));
        let back: DigraphFile = parse(&text, "mem").unwrap();
        assert_eq!(back.digraph("mem").unwrap(), d);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn malformed_json_names_the_line() {
        let err = parse::<DigraphFile>("{\n  \"n\": 3,\n  \"arcs\": [[0, 1],\n}", "bad.json").unwrap_err();
        assert!(matches!(err, FormatError::Json { line: 4, .. }), "{err}");
        let err = parse::<DigraphFile>("{\"n\": 3}", "bad.json").unwrap_err();
        assert!(err.to_string().contains("arcs"), "{err}");
    }

    #[test]
    fn composition_is_recovered_from_parts() {
        let spec = klinkage::generators::random_composition(4, &[2, 1, 3, 2], 0.5, klinkage::generators::PartKind::Random(0.5), 3)
            .unwrap();
        let file = DigraphFile::from_spec(&spec).unwrap();
        let back = file.composition("mem").unwrap();
        assert_eq!(back.compose().unwrap(), spec.compose().unwrap());
        let mut broken = file.clone();
        broken.arcs.pop();
        assert!(broken.composition("mem").is_err());
    }

    #[test]
    fn dot_marks_path_arcs() {
        let dot = to_dot(&Digraph::cycle(3), None, &[vec![0, 1]]);
        assert!(dot.contains("0 -> 1 [color=red"));
        assert!(dot.contains("  1 -> 2;\n"));
    }
}
