//! Reading the JSON documents the command line accepts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::Value as Json;

use crate::basespace::{builtin, builtin_names, validate_doc, ComplexDoc, TwoComplex};
use crate::coverings::{Covering, FiniteGroup};
use crate::descent::{tower_make, Tower};
use crate::error::{Error, Result};
use crate::exactfield::FieldCtx;
use crate::localsystem::{CechCocycle, LocalSystem};
use crate::matrix::Matrix;

/// A parsed document and the directory relative paths inside it resolve
/// against.
pub struct Doc {
    pub json: Json,
    pub dir: PathBuf,
}

pub fn read_doc(path: &str) -> Result<Doc> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let json = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let dir = Path::new(path).parent().map(Path::to_path_buf).unwrap_or_default();
    Ok(Doc { json, dir })
}

fn field<'a>(obj: &'a Json, key: &str) -> Result<&'a Json> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn as_str<'a>(v: &'a Json, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Parse(format!("{what} must be a string")))
}

fn as_u64(v: &Json, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| Error::Parse(format!("{what} must be a non-negative integer")))
}

fn as_object<'a>(v: &'a Json, what: &str) -> Result<&'a serde_json::Map<String, Json>> {
    v.as_object().ok_or_else(|| Error::Parse(format!("{what} must be an object")))
}

/// A complex document: checks names, connectivity and faces, reporting a
/// lone problem as itself.
pub fn complex_from_doc(doc: &ComplexDoc) -> Result<TwoComplex> {
    let mut errors = validate_doc(doc);
    match errors.len() {
        0 => TwoComplex::from_doc(doc),
        1 => Err(errors.remove(0)),
        _ => Err(Error::InvalidComplex(errors)),
    }
}

pub fn parse_complex_doc(json: &Json) -> Result<ComplexDoc> {
    serde_json::from_value(json.clone()).map_err(|e| Error::Parse(format!("complex document: {e}")))
}

/// Resolves a space reference: an inline complex document, the name of a
/// built-in complex, or a path to a complex document.
pub fn load_space(reference: &Json, dir: &Path) -> Result<Arc<TwoComplex>> {
    match reference {
        Json::String(s) if builtin_names().contains(&s.as_str()) => Ok(Arc::new(builtin(s)?)),
        Json::String(s) => {
            let path = dir.join(s);
            let doc = read_doc(path.to_str().ok_or_else(|| Error::Io(format!("bad path {s}")))?)?;
            Ok(Arc::new(complex_from_doc(&parse_complex_doc(&doc.json)?)?))
        }
        Json::Object(_) => Ok(Arc::new(complex_from_doc(&parse_complex_doc(reference)?)?)),
        _ => Err(Error::Parse("space must be a built-in name, a path or a complex document".into())),
    }
}

/// A space given on the command line: a built-in name or a path.
pub fn load_space_arg(arg: &str) -> Result<Arc<TwoComplex>> {
    load_space(&Json::String(arg.to_string()), Path::new(""))
}

fn entry_string(v: &Json) -> Result<String> {
    match v {
        Json::String(s) => Ok(s.clone()),
        Json::Number(n) => Ok(n.to_string()),
        _ => Err(Error::Parse(format!("matrix entry {v} is neither a string nor a number"))),
    }
}

/// Row-major nested arrays of entries.
pub fn parse_matrix(ctx: &FieldCtx, v: &Json) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(entry_string)
                .collect()
        })
        .collect::<Result<_>>()?;
    Matrix::parse(ctx, &rows)
}

pub fn matrix_json(m: &Matrix) -> Json {
    serde_json::to_value(m.to_strings()).expect("strings serialize")
}

fn named_matrices(ctx: &FieldCtx, v: &Json, what: &str) -> Result<Vec<(String, Matrix)>> {
    as_object(v, what)?
        .iter()
        .map(|(k, m)| Ok((k.clone(), parse_matrix(ctx, m)?)))
        .collect()
}

/// A local system document: `{"space", "field", "rank", "rep"}`, or with
/// `"labels"` keyed by edge id instead of `"rep"`. `space` replaces the
/// document's space reference when given.
pub fn load_local_system(doc: &Doc, space: Option<Arc<TwoComplex>>) -> Result<LocalSystem> {
    let j = &doc.json;
    let space = match space {
        Some(s) => s,
        None => load_space(field(j, "space")?, &doc.dir)?,
    };
    let ctx = FieldCtx::parse(as_str(field(j, "field")?, "field")?)?;
    let rank = as_u64(field(j, "rank")?, "rank")? as usize;
    if let Some(labels) = j.get("labels") {
        let named = named_matrices(&ctx, labels, "labels")?;
        let refs: Vec<(&str, Matrix)> = named.iter().map(|(k, m)| (k.as_str(), m.clone())).collect();
        return CechCocycle::from_named(space, &ctx, rank, &refs)?.to_local_system();
    }
    let named = named_matrices(&ctx, field(j, "rep")?, "rep")?;
    let refs: Vec<(&str, Matrix)> = named.iter().map(|(k, m)| (k.as_str(), m.clone())).collect();
    LocalSystem::from_named(space, &ctx, rank, &refs)
}

/// A cocycle document: `{"space", "field", "rank", "labels"}`.
pub fn load_cocycle(doc: &Doc) -> Result<CechCocycle> {
    let j = &doc.json;
    let space = load_space(field(j, "space")?, &doc.dir)?;
    let ctx = FieldCtx::parse(as_str(field(j, "field")?, "field")?)?;
    let rank = as_u64(field(j, "rank")?, "rank")? as usize;
    let named = named_matrices(&ctx, field(j, "labels")?, "labels")?;
    let refs: Vec<(&str, Matrix)> = named.iter().map(|(k, m)| (k.as_str(), m.clone())).collect();
    CechCocycle::from_named(space, &ctx, rank, &refs)
}

/// Vertex matrices of a trivialization document `{"field", "matrices"}`,
/// in vertex order of `space`.
pub fn load_vertex_matrices(doc: &Doc, space: &TwoComplex) -> Result<(FieldCtx, Vec<Matrix>)> {
    let j = &doc.json;
    let ctx = FieldCtx::parse(as_str(field(j, "field")?, "field")?)?;
    let named: BTreeMap<String, Matrix> = named_matrices(&ctx, field(j, "matrices")?, "matrices")?.into_iter().collect();
    let mut out = Vec::with_capacity(space.num_vertices());
    for v in space.vertices() {
        out.push(named.get(v).cloned().ok_or_else(|| Error::Parse(format!("no matrix for vertex {v}")))?);
    }
    if let Some(extra) = named.keys().find(|k| space.vertex_id(k).is_err()) {
        return Err(Error::UnknownVertex(extra.clone()));
    }
    Ok((ctx, out))
}

fn permutation(v: &Json) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{v} is not a permutation array")))?
        .iter()
        .map(|x| as_u64(x, "permutation entry").map(|n| n as usize))
        .collect()
}

/// Generator values of `rho`, in presentation order; absent generators get
/// `default`.
fn rho_by_generator<T: Clone>(
    base: &TwoComplex,
    cover_gens: &[usize],
    rho: &serde_json::Map<String, Json>,
    default: T,
    parse: impl Fn(&Json) -> Result<T>,
) -> Result<Vec<T>> {
    let mut out = vec![default; cover_gens.len()];
    for (name, value) in rho {
        let e = base.edge_id(name)?;
        let k = cover_gens
            .iter()
            .position(|&g| g == e)
            .ok_or_else(|| Error::InvalidArgument(format!("{name} is a spanning-tree edge, not a generator")))?;
        out[k] = parse(value)?;
    }
    Ok(out)
}

/// A covering document: `{"base", "mode", "group", "rho"}`.
///
/// Mode `"action"`: `group` is `{"degree": n}` and `rho` maps generators to
/// permutations of `0..n`. Mode `"onto-group"`: `group` is `{"cyclic": n}`
/// with integer `rho` values, or `{"degree": n, "generators": [...]}` with
/// permutation values; without `"generators"` the group is the one the
/// `rho` values generate.
pub fn load_cover(doc: &Doc) -> Result<Covering> {
    let j = &doc.json;
    let base = load_space(field(j, "base")?, &doc.dir)?;
    let gens = crate::basespace::Presentation::new(&base)?.generators().to_vec();
    let mode = as_str(field(j, "mode")?, "mode")?;
    let group = as_object(field(j, "group")?, "group")?;
    let rho = as_object(field(j, "rho")?, "rho")?;
    match mode {
        "action" => {
            let n = as_u64(group.get("degree").ok_or_else(|| Error::Parse("missing group degree".into()))?, "degree")?
                as usize;
            let id: Vec<usize> = (0..n).collect();
            let perms = rho_by_generator(&base, &gens, rho, id, permutation)?;
            Covering::from_action(base, n, &perms)
        }
        "onto-group" => {
            if let Some(n) = group.get("cyclic") {
                let n = as_u64(n, "cyclic order")? as usize;
                let g = FiniteGroup::cyclic(n)?;
                let elems = rho_by_generator(&base, &gens, rho, 0usize, |v| {
                    let k = as_u64(v, "cyclic group element")? as usize;
                    if k >= n {
                        return Err(Error::InvalidArgument(format!("{k} is not an element of Z/{n}")));
                    }
                    Ok(k)
                })?;
                return Covering::from_group(base, Arc::new(g), &elems);
            }
            let n = as_u64(group.get("degree").ok_or_else(|| Error::Parse("group needs \"cyclic\" or \"degree\"".into()))?, "degree")?
                as usize;
            let id: Vec<usize> = (0..n).collect();
            let perms = rho_by_generator(&base, &gens, rho, id, permutation)?;
            let generators = match group.get("generators") {
                Some(list) => list
                    .as_array()
                    .ok_or_else(|| Error::Parse("group generators must be an array".into()))?
                    .iter()
                    .map(permutation)
                    .collect::<Result<Vec<_>>>()?,
                None => perms.clone(),
            };
            let (g, elements, _) = FiniteGroup::from_permutations(n, &generators)?;
            let elems = perms
                .iter()
                .map(|p| {
                    elements
                        .iter()
                        .position(|q| q == p)
                        .ok_or_else(|| Error::InvalidArgument(format!("{p:?} is not in the group")))
                })
                .collect::<Result<Vec<_>>>()?;
            Covering::from_group(base, Arc::new(g), &elems)
        }
        other => Err(Error::Parse(format!("unknown covering mode {other:?}"))),
    }
}

/// A tower document: `{"primes": [...], "depth": n}`.
pub fn load_tower(doc: &Doc) -> Result<Tower> {
    let j = &doc.json;
    let primes = field(j, "primes")?
        .as_array()
        .ok_or_else(|| Error::Parse("primes must be an array".into()))?
        .iter()
        .map(|p| as_u64(p, "prime"))
        .collect::<Result<Vec<_>>>()?;
    tower_make(&primes, as_u64(field(j, "depth")?, "depth")?)
}

/// Serializes a local system in the document format, with its space inline.
pub fn local_system_json(e: &LocalSystem) -> Json {
    let rep: serde_json::Map<String, Json> = e.named_images().iter().map(|(k, m)| (k.clone(), matrix_json(m))).collect();
    serde_json::json!({
        "space": serde_json::to_value(e.space().to_doc()).expect("complex serializes"),
        "field": e.ctx().to_string(),
        "rank": e.rank(),
        "rep": rep,
    })
}
