//! Input parsing: algebra files, element and matrix literals.

use std::fs;

use strucalg::algebra::{AdditiveMap, Algebra, Element};
use strucalg::constructions::Construction;
use strucalg::{Error, FieldSpec, Matrix, Result, Scalar, Subspace};

pub fn load(path: &str) -> Result<Construction> {
    let text = fs::read_to_string(path).map_err(|e| Error::Format(format!("{path}: {e}")))?;
    Construction::from_json(&text).map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{path}: {m}")),
        other => other,
    })
}

/// Text of an inline literal or, with a leading `@`, of a file.
pub fn literal(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Format(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

/// Splits on commas outside brackets and parentheses.
pub fn split_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// An element written as a basis name, a sum `c*name + name + ...` with
/// space-delimited `+`, or a coordinate vector `[c1, ..., cn]`.
pub fn element(a: &Algebra, s: &str) -> Result<Element> {
    let s = s.trim();
    let f = a.field();
    if s.starts_with('[') {
        return a.parse_element(s);
    }
    if s == "0" {
        return Ok(a.zero());
    }
    let mut acc = a.zero();
    for term in s.split(" + ") {
        let term = term.trim();
        let (coeff, name) = match a.index_of(term) {
            Some(i) => (f.one(), i),
            None => {
                let (c, n) = term
                    .split_once('*')
                    .ok_or_else(|| Error::Format(format!("unknown basis element {term:?}")))?;
                let i = a
                    .index_of(n.trim())
                    .ok_or_else(|| Error::Format(format!("unknown basis element {:?}", n.trim())))?;
                (f.parse(c.trim())?, i)
            }
        };
        acc = a.add(&acc, &a.scale(&coeff, &a.basis(name)));
    }
    Ok(acc)
}

pub fn elements(a: &Algebra, s: &str) -> Result<Vec<Element>> {
    split_list(s).iter().map(|e| element(a, e)).collect()
}

/// A tagged subspace name or a comma-separated list of spanning elements.
pub fn subspace(c: &Construction, s: &str) -> Result<Subspace> {
    if let Some(sub) = c.subspace(s) {
        return Ok(sub.clone());
    }
    let a = &c.algebra;
    let es = elements(a, s)?;
    Ok(Subspace::span(a.field(), a.dim(), es.into_iter().map(Element::into_coords)))
}

pub fn matrix(f: &FieldSpec, s: &str) -> Result<Matrix> {
    let rows: Vec<Vec<String>> =
        serde_json::from_str(&literal(s)?).map_err(|e| Error::Format(format!("matrix: {e}")))?;
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|x| f.parse(x)).collect::<Result<Vec<Scalar>>>())
        .collect::<Result<Vec<_>>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::Format("matrix rows have different lengths".into()));
    }
    Ok(Matrix::from_rows_with_width(f, width, rows))
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct MapLiteral {
    linear: Vec<Vec<String>>,
    #[serde(default)]
    derivative: Option<Vec<Vec<String>>>,
}

/// `{"linear": [[..]], "derivative": [[..]]}`.
pub fn additive_map(f: &FieldSpec, s: &str) -> Result<AdditiveMap> {
    let lit: MapLiteral = serde_json::from_str(&literal(s)?).map_err(|e| Error::Format(format!("map: {e}")))?;
    let conv = |rows: &Vec<Vec<String>>| -> Result<Matrix> {
        matrix(f, &serde_json::to_string(rows).expect("strings serialize"))
    };
    let linear = conv(&lit.linear)?;
    match lit.derivative {
        Some(d) => {
            let d = conv(&d)?;
            if d.rows() != linear.rows() || d.cols() != linear.cols() {
                return Err(Error::Format("linear and derivative parts differ in shape".into()));
            }
            Ok(AdditiveMap::differential(linear, d))
        }
        None => Ok(AdditiveMap::linear(linear)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use strucalg::constructions::truncated_poly;

    #[test]
    fn element_syntax() {
        let f = FieldSpec::prime(3).unwrap();
        let c = truncated_poly(&f, 3).unwrap();
        let a = &c.algebra;
        assert_eq!(element(a, "x + x^2").unwrap(), a.element_from_ints(&[0, 1, 1]));
        assert_eq!(element(a, "2*x^2").unwrap(), a.element_from_ints(&[0, 0, 2]));
        assert_eq!(element(a, "[1,0,2]").unwrap(), a.element_from_ints(&[1, 0, 2]));
        assert_eq!(split_list("x,[1,0,2], x + x^2"), vec!["x", "[1,0,2]", "x + x^2"]);
        assert!(element(a, "y").is_err());
    }
}
