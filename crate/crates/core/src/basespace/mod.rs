//! Finite pointed 2-complexes, spanning trees and presentations of the
//! fundamental group.

mod corpus;
mod presentation;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use corpus::{builtin, builtin_names};
pub use presentation::{free_reduce, fundamental_presentation, invert_word, loop_word, Presentation};

/// An oriented edge traversed forwards or backwards. Words in the
/// fundamental group reuse this type: generators are edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: usize,
    pub inverse: bool,
}

impl Step {
    pub fn fwd(edge: usize) -> Self {
        Step { edge, inverse: false }
    }

    pub fn inv(edge: usize) -> Self {
        Step { edge, inverse: true }
    }

    pub fn reversed(self) -> Self {
        Step { edge: self.edge, inverse: !self.inverse }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite 2-complex with a basepoint.
///
/// Construction only resolves names; connectivity and closedness of face
/// words are checked by [`TwoComplex::validate`], since covering spaces built
/// internally may legitimately be disconnected before decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoComplex {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, usize>,
    faces: Vec<Vec<Step>>,
    basepoint: usize,
}

/// JSON form of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub faces: Vec<Vec<String>>,
    pub basepoint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// Splits `"a^-1"` (or `"a⁻¹"`) into `("a", true)`.
pub fn parse_signed(token: &str) -> (&str, bool) {
    let t = token.trim();
    if let Some(base) = t.strip_suffix("^-1").or_else(|| t.strip_suffix("⁻¹")) {
        (base, true)
    } else {
        (t, false)
    }
}

fn single_or_list(mut errors: Vec<Error>) -> Error {
    if errors.len() == 1 {
        errors.pop().unwrap()
    } else {
        Error::InvalidComplex(errors)
    }
}

impl TwoComplex {
    /// Resolves names into an indexed complex.
    ///
    /// Reports `DuplicateId`, `UnknownVertex`, `UnknownEdge` and
    /// `MissingBasepoint`, all of them, in that order.
    pub fn from_doc(doc: &ComplexDoc) -> Result<Self> {
        let mut errors = Vec::new();
        let mut vertex_index = HashMap::new();
        for (i, v) in doc.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                errors.push(Error::DuplicateId(v.clone()));
            }
        }
        let mut edge_index = HashMap::new();
        for (i, e) in doc.edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                errors.push(Error::DuplicateId(e.id.clone()));
            }
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for e in &doc.edges {
            let mut end = |name: &String| match vertex_index.get(name) {
                Some(&i) => i,
                None => {
                    errors.push(Error::UnknownVertex(format!("{name} (edge {})", e.id)));
                    0
                }
            };
            let src = end(&e.src);
            let dst = end(&e.dst);
            edges.push(Edge { id: e.id.clone(), src, dst });
        }
        let mut faces = Vec::with_capacity(doc.faces.len());
        for face in &doc.faces {
            let mut word = Vec::with_capacity(face.len());
            for token in face {
                let (name, inverse) = parse_signed(token);
                match edge_index.get(name) {
                    Some(&edge) => word.push(Step { edge, inverse }),
                    None => errors.push(Error::UnknownEdge(name.to_string())),
                }
            }
            faces.push(word);
        }
        let basepoint = match vertex_index.get(&doc.basepoint) {
            Some(&b) => b,
            None => {
                errors.push(Error::MissingBasepoint(doc.basepoint.clone()));
                0
            }
        };
        if !errors.is_empty() {
            return Err(single_or_list(errors));
        }
        Ok(TwoComplex { vertices: doc.vertices.clone(), vertex_index, edges, edge_index, faces, basepoint })
    }

    /// Convenience constructor; edges are `(id, src, dst)` and face tokens
    /// use the `^-1` suffix.
    pub fn new(vertices: &[&str], edges: &[(&str, &str, &str)], faces: &[&[&str]], basepoint: &str) -> Result<Self> {
        let doc = ComplexDoc {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(id, s, d)| EdgeDoc { id: id.to_string(), src: s.to_string(), dst: d.to_string() })
                .collect(),
            faces: faces.iter().map(|f| f.iter().map(|s| s.to_string()).collect()).collect(),
            basepoint: basepoint.to_string(),
        };
        Self::from_doc(&doc)
    }

    /// Index-level constructor used for covering spaces.
    pub(crate) fn from_parts(vertices: Vec<String>, edges: Vec<Edge>, faces: Vec<Vec<Step>>, basepoint: usize) -> Self {
        let vertex_index = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let edge_index = edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        TwoComplex { vertices, vertex_index, edges, edge_index, faces, basepoint }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ComplexDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_doc(&self) -> ComplexDoc {
        ComplexDoc {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    src: self.vertices[e.src].clone(),
                    dst: self.vertices[e.dst].clone(),
                })
                .collect(),
            faces: self.faces.iter().map(|f| f.iter().map(|s| self.format_step(*s)).collect()).collect(),
            basepoint: self.vertices[self.basepoint].clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("complex serializes")
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_id(&self, name: &str) -> Result<usize> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_id(&self, name: &str) -> Result<usize> {
        self.edge_index.get(name).copied().ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn faces(&self) -> &[Vec<Step>] {
        &self.faces
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Same complex with a different basepoint.
    pub fn with_basepoint(&self, v: usize) -> TwoComplex {
        TwoComplex { basepoint: v, ..self.clone() }
    }

    pub fn step_start(&self, s: Step) -> usize {
        let e = &self.edges[s.edge];
        if s.inverse {
            e.dst
        } else {
            e.src
        }
    }

    pub fn step_end(&self, s: Step) -> usize {
        let e = &self.edges[s.edge];
        if s.inverse {
            e.src
        } else {
            e.dst
        }
    }

    pub fn format_step(&self, s: Step) -> String {
        let id = &self.edges[s.edge].id;
        if s.inverse {
            format!("{id}^-1")
        } else {
            id.clone()
        }
    }

    /// Space-separated tokens; `1` for the empty word.
    pub fn format_word(&self, w: &[Step]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|s| self.format_step(*s)).collect::<Vec<_>>().join(" ")
    }

    pub fn parse_step(&self, token: &str) -> Result<Step> {
        let (name, inverse) = parse_signed(token);
        Ok(Step { edge: self.edge_id(name)?, inverse })
    }

    /// Parses a whitespace- or comma-separated word; `1` or `""` is empty.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Step>> {
        text.split(|c: char| c.is_whitespace() || c == ',' || c == '·' || c == '*')
            .filter(|t| !t.is_empty() && *t != "1")
            .map(|t| self.parse_step(t))
            .collect()
    }

    pub fn parse_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Vec<Step>> {
        tokens.iter().map(|t| self.parse_step(t.as_ref())).collect()
    }

    /// Incident edges of each vertex, sorted by edge id. A loop appears once.
    pub(crate) fn incidence_sorted(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.src].push(i);
            if e.dst != e.src {
                inc[e.dst].push(i);
            }
        }
        for list in &mut inc {
            list.sort_by(|&a, &b| self.edges[a].id.cmp(&self.edges[b].id));
        }
        inc
    }

    /// Vertex sets of the connected components, the basepoint's first, the
    /// rest ordered by least vertex index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.src].push(e.dst);
            adj[e.dst].push(e.src);
        }
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        let order = std::iter::once(self.basepoint).chain((0..n).filter(|&v| v != self.basepoint));
        for start in order {
            if n == 0 || comp[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            comp[start] = c;
            let mut members = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Full subcomplex on `vertices`: every edge with both ends inside and
    /// every face all of whose edges are kept. Names are preserved.
    pub fn subcomplex(&self, vertices: &[usize], basepoint: usize) -> (TwoComplex, Vec<usize>, Vec<usize>) {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            vmap[v] = i;
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        let mut kept_edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if vmap[e.src] != usize::MAX && vmap[e.dst] != usize::MAX {
                emap[i] = edges.len();
                kept_edges.push(i);
                edges.push(Edge { id: e.id.clone(), src: vmap[e.src], dst: vmap[e.dst] });
            }
        }
        let faces = self
            .faces
            .iter()
            .filter(|f| f.iter().all(|s| emap[s.edge] != usize::MAX))
            .map(|f| f.iter().map(|s| Step { edge: emap[s.edge], inverse: s.inverse }).collect())
            .collect();
        let names = vertices.iter().map(|&v| self.vertices[v].clone()).collect();
        (TwoComplex::from_parts(names, edges, faces, vmap[basepoint]), vertices.to_vec(), kept_edges)
    }

    /// Checks connectivity and that each face word is a closed edge path.
    /// Errors come in a fixed order: `Disconnected`, then `OpenFaceWord` by
    /// face index.
    pub fn validate(&self) -> std::result::Result<(), Vec<Error>> {
        let mut errors = Vec::new();
        if !self.is_connected() {
            errors.push(Error::Disconnected);
        }
        for (i, face) in self.faces.iter().enumerate() {
            if !self.is_closed_path(face) {
                errors.push(Error::OpenFaceWord(i));
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    /// [`Self::validate`] folded into a single error.
    pub fn check(&self) -> Result<()> {
        self.validate().map_err(single_or_list)
    }

    pub fn is_path(&self, path: &[Step]) -> bool {
        path.windows(2).all(|w| self.step_end(w[0]) == self.step_start(w[1]))
    }

    /// Contiguous and ending where it starts. The empty word counts as
    /// closed.
    pub fn is_closed_path(&self, path: &[Step]) -> bool {
        match (path.first(), path.last()) {
            (Some(&a), Some(&b)) => self.is_path(path) && self.step_start(a) == self.step_end(b),
            _ => true,
        }
    }

    /// Signed count of each edge in each face: rows are faces.
    pub fn face_edge_incidence(&self) -> Vec<Vec<i64>> {
        self.faces
            .iter()
            .map(|f| {
                let mut row = vec![0i64; self.edges.len()];
                for s in f {
                    row[s.edge] += if s.inverse { -1 } else { 1 };
                }
                row
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }
}

/// Validates a document end to end, returning every error in a fixed order:
/// name resolution problems first, then connectivity, then face words.
pub fn validate_doc(doc: &ComplexDoc) -> Vec<Error> {
    match TwoComplex::from_doc(doc) {
        Err(Error::InvalidComplex(errs)) => errs,
        Err(e) => vec![e],
        Ok(x) => x.validate().err().unwrap_or_default(),
    }
}

impl fmt::Display for TwoComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "2-complex: {} vertices, {} edges, {} faces, basepoint {}",
            self.vertices.len(),
            self.edges.len(),
            self.faces.len(),
            self.vertices[self.basepoint]
        )
    }
}
