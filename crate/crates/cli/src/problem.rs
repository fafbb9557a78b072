//! Problem files. Parsing walks the raw JSON so every schema violation can be
//! reported with the JSON path of the offending value.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use mfcat::cech::CechCover;
use mfcat::poly::ProductRing;
use mfcat::stabilization::{diagonal_mf, koszul_stab};
use mfcat::{FreeModuleMap, MatrixFactorization, ModulePresentation, MonomialOrder, Polynomial, Ring};
use serde_json::{Map, Value};

/// A schema violation or a malformed literal, located by JSON path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub msg: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.msg)
    }
}

impl std::error::Error for InputError {}

pub type Parsed<T> = std::result::Result<T, InputError>;

fn err<T>(path: &str, msg: impl Into<String>) -> Parsed<T> {
    Err(InputError { path: path.to_string(), msg: msg.into() })
}

fn key_path(path: &str, key: &str) -> String {
    if key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        format!("{path}.{key}")
    } else {
        format!("{path}[{key:?}]")
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Parsed<&'a Map<String, Value>> {
    v.as_object().map_or_else(|| err(path, "expected an object"), Ok)
}

fn as_array<'a>(v: &'a Value, path: &str) -> Parsed<&'a Vec<Value>> {
    v.as_array().map_or_else(|| err(path, "expected an array"), Ok)
}

fn as_str<'a>(v: &'a Value, path: &str) -> Parsed<&'a str> {
    v.as_str().map_or_else(|| err(path, "expected a string"), Ok)
}

fn as_usize(v: &Value, path: &str) -> Parsed<usize> {
    match v.as_u64() {
        Some(n) => usize::try_from(n).or_else(|_| err(path, "integer out of range")),
        None => err(path, "expected a non-negative integer"),
    }
}

fn as_bool(v: &Value, path: &str) -> Parsed<bool> {
    v.as_bool().map_or_else(|| err(path, "expected true or false"), Ok)
}

fn reject_unknown(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> Parsed<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => err(&key_path(path, k), format!("unknown field; expected one of {}", allowed.join(", "))),
        None => Ok(()),
    }
}

/// A polynomial literal; integers are accepted as constants.
pub fn polynomial(ring: &Arc<Ring>, v: &Value, path: &str) -> Parsed<Polynomial> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return err(path, "expected a polynomial literal"),
    };
    ring.parse(&text).or_else(|e| err(path, e.to_string()))
}

pub fn polynomial_list(ring: &Arc<Ring>, v: &Value, path: &str) -> Parsed<Vec<Polynomial>> {
    as_array(v, path)?.iter().enumerate().map(|(i, x)| polynomial(ring, x, &format!("{path}[{i}]"))).collect()
}

/// A matrix given as a list of rows. `shape` pins the size, which is needed
/// for matrices with no rows or no columns.
pub fn matrix(ring: &Arc<Ring>, v: &Value, path: &str, shape: Option<(usize, usize)>) -> Parsed<FreeModuleMap> {
    let rows = as_array(v, path)?;
    let mut data = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        data.push(polynomial_list(ring, row, &format!("{path}[{i}]"))?);
    }
    let (r, c) = match shape {
        Some(s) => s,
        None => (data.len(), data.first().map_or(0, Vec::len)),
    };
    if data.len() != r {
        return err(path, format!("expected {r} rows, found {}", data.len()));
    }
    for (i, row) in data.iter().enumerate() {
        if row.len() != c {
            return err(&format!("{path}[{i}]"), format!("expected {c} entries, found {}", row.len()));
        }
    }
    FreeModuleMap::from_rows_shaped(ring, r, c, data).or_else(|e| err(path, e.to_string()))
}

pub fn ring(v: &Value, path: &str) -> Parsed<Arc<Ring>> {
    let obj = as_object(v, path)?;
    reject_unknown(obj, path, &["vars", "relations", "order"])?;
    let vars_path = key_path(path, "vars");
    let vars = match obj.get("vars") {
        Some(v) => as_array(v, &vars_path)?
            .iter()
            .enumerate()
            .map(|(i, x)| as_str(x, &format!("{vars_path}[{i}]")).map(str::to_string))
            .collect::<Parsed<Vec<_>>>()?,
        None => return err(path, "missing field `vars`"),
    };
    let order = match obj.get("order") {
        None => MonomialOrder::default(),
        Some(v) => {
            let p = key_path(path, "order");
            serde_json::from_value(v.clone()).or_else(|_| err(&p, "expected \"grevlex\" or \"lex\""))?
        }
    };
    let base = Ring::new(vars, Vec::new(), order).or_else(|e| err(&vars_path, e.to_string()))?;
    let base = Arc::new(base);
    match obj.get("relations") {
        None => Ok(base),
        Some(v) => {
            let p = key_path(path, "relations");
            let rels = polynomial_list(&base, v, &p)?;
            let ring = Ring::new(base.vars().to_vec(), rels, order).or_else(|e| err(&p, e.to_string()))?;
            Ok(Arc::new(ring))
        }
    }
}

/// How an object of a problem file is specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectSpec {
    Explicit { p1: FreeModuleMap, p0: FreeModuleMap },
    KoszulStab,
    Diagonal,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub ring: Arc<Ring>,
    pub w: Polynomial,
    pub cover: Option<Vec<Polynomial>>,
    /// Objects in name order.
    pub objects: BTreeMap<String, ObjectSpec>,
    pub task_args: Map<String, Value>,
}

fn object_spec(ring: &Arc<Ring>, v: &Value, path: &str) -> Parsed<ObjectSpec> {
    let obj = as_object(v, path)?;
    for flag in ["koszul_stab", "diagonal"] {
        if let Some(x) = obj.get(flag) {
            reject_unknown(obj, path, &[flag])?;
            if !as_bool(x, &key_path(path, flag))? {
                return err(&key_path(path, flag), "only `true` is meaningful here");
            }
            return Ok(if flag == "diagonal" { ObjectSpec::Diagonal } else { ObjectSpec::KoszulStab });
        }
    }
    reject_unknown(obj, path, &["p1", "p0", "rank_even", "rank_odd"])?;
    let rank = |k: &str| obj.get(k).map(|v| as_usize(v, &key_path(path, k))).transpose();
    let (even, odd) = (rank("rank_even")?, rank("rank_odd")?);
    let (Some(v1), Some(v0)) = (obj.get("p1"), obj.get("p0")) else {
        return err(path, "expected {\"p1\", \"p0\"}, {\"koszul_stab\": true} or {\"diagonal\": true}");
    };
    let p1 = matrix(ring, v1, &key_path(path, "p1"), even.zip(odd))?;
    let p0 =
        matrix(ring, v0, &key_path(path, "p0"), Some(even.zip(odd).map_or((p1.cols(), p1.rows()), |(e, o)| (o, e))))?;
    Ok(ObjectSpec::Explicit { p1, p0 })
}

impl Problem {
    pub fn from_value(v: &Value) -> Parsed<Problem> {
        Problem::from_value_at(v, "$")
    }

    /// Parses a problem nested at `path` inside a larger document.
    pub fn from_value_at(v: &Value, path: &str) -> Parsed<Problem> {
        let root = as_object(v, path)?;
        reject_unknown(root, path, &["ring", "W", "cover", "objects", "task_args"])?;
        let field = |k: &str| root.get(k).map_or_else(|| err(path, format!("missing field `{k}`")), Ok);
        let ring = ring(field("ring")?, &key_path(path, "ring"))?;
        let w = polynomial(&ring, field("W")?, &key_path(path, "W"))?;
        let cover = root.get("cover").map(|c| polynomial_list(&ring, c, &key_path(path, "cover"))).transpose()?;
        let mut objects = BTreeMap::new();
        if let Some(o) = root.get("objects") {
            let opath = key_path(path, "objects");
            for (name, spec) in as_object(o, &opath)? {
                objects.insert(name.clone(), object_spec(&ring, spec, &key_path(&opath, name))?);
            }
        }
        let task_args = match root.get("task_args") {
            Some(t) => as_object(t, &key_path(path, "task_args"))?.clone(),
            None => Map::new(),
        };
        Ok(Problem { ring, w, cover, objects, task_args })
    }

    pub fn parse(text: &str) -> Parsed<Problem> {
        let v: Value = serde_json::from_str(text)
            .or_else(|e| err("$", format!("invalid JSON at line {} column {}: {e}", e.line(), e.column())))?;
        Problem::from_value(&v)
    }

    pub fn arg(&self, key: &str) -> Option<&Value> {
        self.task_args.get(key)
    }

    /// A task argument parsed as a matrix over the problem ring.
    pub fn arg_matrix(&self, key: &str) -> Parsed<Option<FreeModuleMap>> {
        self.arg(key).map(|v| matrix(&self.ring, v, &Self::arg_path(key), None)).transpose()
    }

    pub fn arg_path(key: &str) -> String {
        key_path("$.task_args", key)
    }

    pub fn arg_bool(&self, key: &str, default: bool) -> Parsed<bool> {
        self.arg(key).map_or(Ok(default), |v| as_bool(v, &Self::arg_path(key)))
    }

    pub fn arg_usize(&self, key: &str, default: usize) -> Parsed<usize> {
        self.arg(key).map_or(Ok(default), |v| as_usize(v, &Self::arg_path(key)))
    }

    /// The object named by `task_args[key]`, or the first object by name.
    pub fn object_name(&self, key: &str) -> Parsed<String> {
        let name = match self.arg(key) {
            Some(v) => as_str(v, &Self::arg_path(key))?.to_string(),
            None => match self.objects.keys().next() {
                Some(n) => n.clone(),
                None => return err("$.objects", "the problem defines no objects"),
            },
        };
        if !self.objects.contains_key(&name) {
            return err(&Self::arg_path(key), format!("no object named `{name}`"));
        }
        Ok(name)
    }

    pub fn cover(&self) -> mfcat::Result<CechCover> {
        match &self.cover {
            Some(d) => CechCover::new(&self.ring, d.clone()),
            None => Ok(CechCover::trivial(&self.ring)),
        }
    }

    /// Builds a named object; explicit factorizations are verified against `W`.
    pub fn build(&self, name: &str) -> mfcat::Result<MatrixFactorization> {
        match &self.objects[name] {
            ObjectSpec::Explicit { p1, p0 } => {
                MatrixFactorization::new(&self.ring, self.w.clone(), p1.clone(), p0.clone())
            }
            ObjectSpec::KoszulStab => koszul_stab(&self.ring, &self.w),
            ObjectSpec::Diagonal => diagonal_mf(&ProductRing::doubled(&self.ring)?, &self.w),
        }
    }
}

/// A module `A^g / im(relations)` given as `{"generators": g, "relations": [[..]]}`;
/// the relation matrix has `g` rows.
pub fn module(ring: &Arc<Ring>, v: &Value, path: &str) -> Parsed<ModulePresentation> {
    let obj = as_object(v, path)?;
    reject_unknown(obj, path, &["generators", "relations"])?;
    let Some(g) = obj.get("generators") else {
        return err(path, "missing field `generators`");
    };
    let g = as_usize(g, &key_path(path, "generators"))?;
    let rel = match obj.get("relations") {
        None => FreeModuleMap::zeros(ring, g, 0),
        Some(r) => {
            let rpath = key_path(path, "relations");
            let cols = as_array(r, &rpath)?.first().and_then(Value::as_array).map_or(0, Vec::len);
            matrix(ring, r, &rpath, Some((g, cols)))?
        }
    };
    Ok(ModulePresentation::new(ring, g, rel))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Parsed<Problem> {
        Problem::parse(s)
    }

    #[test]
    fn minimal_problem() {
        let p = parse(r#"{"ring": {"vars": ["x"]}, "W": "x^2", "objects": {"K": {"koszul_stab": true}}}"#).unwrap();
        assert_eq!(p.ring.vars(), ["x"]);
        assert_eq!(p.objects["K"], ObjectSpec::KoszulStab);
        assert_eq!(p.build("K").unwrap().rank_even(), 1);
        assert_eq!(p.object_name("source").unwrap(), "K");
    }

    #[test]
    fn errors_carry_json_paths() {
        let cases = [
            (
                r#"{"ring": {"vars": ["x"]}, "W": "x^2", "objects": {"K": {"p1": [["x", "x +"]], "p0": [["x"]]}}}"#,
                "$.objects.K.p1[0][1]",
            ),
            (r#"{"ring": {"vars": ["x", 3]}, "W": "x"}"#, "$.ring.vars[1]"),
            (r#"{"ring": {"vars": ["x"], "order": "deglex"}, "W": "x"}"#, "$.ring.order"),
            (r#"{"ring": {"vars": ["x"]}, "W": "y"}"#, "$.W"),
            (r#"{"ring": {"vars": ["x"]}, "W": "x", "cover": ["x", []]}"#, "$.cover[1]"),
            (
                r#"{"ring": {"vars": ["x"]}, "W": "x", "objects": {"my obj": {"p1": 1, "p0": []}}}"#,
                "$.objects[\"my obj\"].p1",
            ),
            (r#"{"ring": {"vars": ["x"]}, "W": "x", "colour": 1}"#, "$.colour"),
            (
                r#"{"ring": {"vars": ["x"]}, "W": "x^2", "objects": {"K": {"p1": [["x"]], "p0": [["x", "1"]]}}}"#,
                "$.objects.K.p0[0]",
            ),
        ];
        for (text, path) in cases {
            assert_eq!(parse(text).unwrap_err().path, path, "{text}");
        }
    }

    #[test]
    fn explicit_ranks_allow_empty_matrices() {
        let p = parse(r#"{"ring": {"vars": ["x"]}, "W": "0", "objects": {"Z": {"rank_even": 1, "rank_odd": 0, "p1": [[]], "p0": []}}}"#).unwrap();
        let z = p.build("Z").unwrap();
        assert_eq!((z.rank_even(), z.rank_odd()), (1, 0));
    }

    #[test]
    fn missing_object_is_reported_at_its_argument() {
        let p = parse(r#"{"ring": {"vars": ["x"]}, "W": "x^2", "objects": {"K": {"koszul_stab": true}}, "task_args": {"source": "L"}}"#).unwrap();
        assert_eq!(p.object_name("source").unwrap_err().path, "$.task_args.source");
    }
}
