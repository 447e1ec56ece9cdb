#![allow(dead_code)]

use hypersing::determinacy::is_regular;
use hypersing::frontend::{parse_poly, PolySource};
use hypersing::poly::{int, Monomial, Poly, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// A corpus member and whether it is known to be quasihomogeneous up to a
/// change of coordinates.
pub struct Entry {
    pub label: &'static str,
    pub text: &'static str,
    pub quasihomogeneous: bool,
}

pub const CORPUS: &[Entry] = &[
    Entry { label: "A1", text: "x^2 + y^2", quasihomogeneous: true },
    Entry { label: "A3", text: "x^4 + y^2", quasihomogeneous: true },
    Entry { label: "A5", text: "x^6 + y^2", quasihomogeneous: true },
    Entry { label: "cusp", text: "x^3 + y^2", quasihomogeneous: true },
    Entry { label: "D4", text: "x^2*y + y^3", quasihomogeneous: true },
    Entry { label: "D5", text: "x^2*y + y^4", quasihomogeneous: true },
    Entry { label: "E6", text: "x^3 + y^4", quasihomogeneous: true },
    Entry { label: "E7", text: "x^3 + x*y^3", quasihomogeneous: true },
    Entry { label: "E8", text: "x^3 + y^5", quasihomogeneous: true },
    Entry { label: "plane cubic", text: "x^3 + y^3", quasihomogeneous: true },
    Entry { label: "plane quartic", text: "x^4 + y^4", quasihomogeneous: true },
    Entry { label: "ternary cubic", text: "x^3 + y^3 + z^3", quasihomogeneous: true },
    Entry { label: "Hesse cubic", text: "x^3 + y^3 + z^3 + 3*x*y*z", quasihomogeneous: true },
    Entry { label: "ternary quartic", text: "x^4 + y^4 + z^4", quasihomogeneous: true },
    Entry { label: "weighted (4,3,6;12)", text: "x^3 + y^4 + z^2", quasihomogeneous: true },
    Entry { label: "quadric n=4", text: "x^2 + y^2 + z^2 + w^2", quasihomogeneous: true },
    Entry { label: "sheared cusp", text: "(x + y)^3 + y^2", quasihomogeneous: true },
    Entry { label: "sheared A3", text: "(x + 2*y)^4 + (x - y)^2", quasihomogeneous: true },
    Entry { label: "bent cusp", text: "(x + y^2)^3 + y^2", quasihomogeneous: true },
    Entry { label: "g(2,5,1)", text: "x^5 + y^5 + x^3*y^3", quasihomogeneous: false },
    Entry { label: "g(2,5,-1)", text: "x^5 + y^5 - x^3*y^3", quasihomogeneous: false },
    Entry { label: "g(3,4,1)", text: "x^4 + y^4 + z^4 + x^2*y^2*z^2", quasihomogeneous: false },
    Entry { label: "g(3,4,1/2)", text: "x^4 + y^4 + z^4 + 1/2*x^2*y^2*z^2", quasihomogeneous: false },
    Entry { label: "g(4,3,1)", text: "x^3 + y^3 + z^3 + w^3 + x*y*z*w", quasihomogeneous: false },
    Entry { label: "W12 a=1", text: "x^4 + y^5 + x^2*y^3", quasihomogeneous: false },
    Entry { label: "E12 a=1", text: "x^3 + y^7 + x*y^5", quasihomogeneous: false },
];

pub fn parse(text: &str) -> Poly {
    parse_poly(&PolySource::inferred(text).unwrap()).unwrap()
}

pub fn small_int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    int(rng.gen_range(lo..=hi))
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return int(v);
        }
    }
}

/// A form of degree `m`: a diagonal part with nonzero coefficients plus a few
/// random mixed terms.
pub fn random_form(rng: &mut ChaCha8Rng, n: usize, m: u32) -> Poly {
    let mut terms = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = m;
        terms.push((Monomial::new(e), nonzero(rng, 3)));
    }
    let all = Monomial::all_of_degree(n, m);
    for _ in 0..rng.gen_range(0..=3) {
        let mono = all[rng.gen_range(0..all.len())].clone();
        terms.push((mono, small_int(rng, -2, 2)));
    }
    Poly::from_terms(n, terms).unwrap()
}

/// A random form that certifies as regular.
pub fn random_regular_form(rng: &mut ChaCha8Rng, n: usize, m: u32) -> Poly {
    loop {
        let f = random_form(rng, n, m);
        if f.homogeneous_degree() == Some(m) && is_regular(&f, None).unwrap() {
            return f;
        }
    }
}

/// A random integer matrix of determinant +-1, as a product of elementary
/// operations and a permutation.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| int(i64::from(i == j))).collect())
        .collect();
    if n > 1 {
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            while j == i {
                j = rng.gen_range(0..n);
            }
            let c = small_int(rng, -2, 2);
            let row_j = a[j].clone();
            for (x, y) in a[i].iter_mut().zip(row_j) {
                *x += &c * y;
            }
        }
        let s = rng.gen_range(0..n);
        a.swap(0, s);
    }
    a
}

/// Validates `instance` against the subset of JSON Schema used by the shipped
/// schema: `$ref`, `oneOf`, `type`, `const`, `enum`, `required`, `properties`,
/// `additionalProperties: false`, `items`, `minimum`.
pub fn validate(root: &Value, schema: &Value, instance: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/$defs/").ok_or(format!("unsupported $ref {r}"))?;
        return validate(root, &root["$defs"][name], instance, path);
    }
    if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
        let matches = options
            .iter()
            .filter(|s| validate(root, s, instance, path).is_ok())
            .count();
        if matches != 1 {
            return Err(format!("{path}: {matches} oneOf branches match"));
        }
    }
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(ts) => ts.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: bad type keyword")),
        };
        let ok = types.iter().any(|t| match *t {
            "null" => instance.is_null(),
            "boolean" => instance.is_boolean(),
            "integer" => instance.is_i64() || instance.is_u64(),
            "number" => instance.is_number(),
            "string" => instance.is_string(),
            "array" => instance.is_array(),
            "object" => instance.is_object(),
            _ => false,
        });
        if !ok {
            return Err(format!("{path}: expected {types:?}, found {instance}"));
        }
    }
    if let Some(c) = schema.get("const") {
        if c != instance {
            return Err(format!("{path}: expected const {c}, found {instance}"));
        }
    }
    if let Some(e) = schema.get("enum").and_then(Value::as_array) {
        if !e.contains(instance) {
            return Err(format!("{path}: {instance} not in enum"));
        }
    }
    if let (Some(min), Some(v)) = (schema.get("minimum").and_then(Value::as_i64), instance.as_i64()) {
        if v < min {
            return Err(format!("{path}: {v} below minimum {min}"));
        }
    }
    if let Some(obj) = instance.as_object() {
        if let Some(req) = schema.get("required").and_then(Value::as_array) {
            for k in req.iter().filter_map(Value::as_str) {
                if !obj.contains_key(k) {
                    return Err(format!("{path}: missing key {k}"));
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (k, v) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(s) => validate(root, s, v, &format!("{path}.{k}"))?,
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return Err(format!("{path}: unexpected key {k}"));
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), instance.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            validate(root, items, v, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

pub fn schema() -> Value {
    let text = include_str!("../../schema/hypersing-output.v1.json");
    serde_json::from_str(text).unwrap()
}

pub fn validate_output(instance: &Value) -> Result<(), String> {
    let root = schema();
    validate(&root, &root, instance, "$")
}
