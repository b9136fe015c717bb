//! JSON presentations of algebras, representations, tensors, maps, forms and
//! Gel'fand-Dorfman bialgebras. Every polynomial is a string in the input
//! grammar, so anything written here parses back unchanged.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::{CatalogEntry, CatalogObject};
use crate::conformal::{skew_lambda, ConformalAlgebra, Element, Kind, Table};
use crate::error::{Error, Result};
use crate::gdquad::GDBialgebra;
use crate::operators::ModuleMap;
use crate::poly::{Poly, Var, VarTable};
use crate::reps::{Action, Representation};
use crate::tensor::TensorElement2;

type Products = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    kind: String,
    basis: Vec<String>,
    #[serde(default)]
    params: Vec<String>,
    #[serde(default)]
    products: Products,
}

#[derive(Deserialize)]
struct RepJson {
    #[serde(flatten)]
    algebra: AlgebraJson,
    module_basis: Vec<String>,
    #[serde(default)]
    action: Option<Products>,
    #[serde(default)]
    action_l: Option<Products>,
    #[serde(default)]
    action_r: Option<Products>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    i: String,
    j: String,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct GdJson {
    #[serde(default)]
    dim: Option<usize>,
    basis: Vec<String>,
    #[serde(default)]
    params: Vec<String>,
    #[serde(default)]
    circ: Products,
    #[serde(default)]
    lie: Products,
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("{what}: {e}")))
}

fn index(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|b| b == name.trim())
        .ok_or_else(|| Error::UnknownBasis(name.trim().to_string()))
}

fn split_pair(key: &str) -> Result<(&str, &str)> {
    key.split_once(',')
        .ok_or_else(|| Error::Input(format!("product key `{key}` is not of the form `a,b`")))
}

fn parse_kind(s: &str) -> Result<Kind> {
    match s {
        "lie" => Ok(Kind::Lie),
        "left_symmetric" => Ok(Kind::LeftSymmetric),
        other => Err(Error::Input(format!("unknown kind `{other}`"))),
    }
}

/// Fills `table[i][j][k]` from `{"a,b": {"c": poly}}`.
fn fill_table(
    table: &mut Table,
    products: &Products,
    left: &[String],
    right: &[String],
    target: &[String],
    vars: &VarTable,
) -> Result<Vec<(usize, usize)>> {
    let mut given = Vec::new();
    for (key, row) in products {
        let (a, b) = split_pair(key)?;
        let (i, j) = (index(left, a)?, index(right, b)?);
        for (c, p) in row {
            table.set_coeff(i, j, index(target, c)?, vars.parse(p)?);
        }
        given.push((i, j));
    }
    Ok(given)
}

fn table_json(table: &Table, left: &[String], right: &[String], target: &[String]) -> Value {
    let mut out = serde_json::Map::new();
    for (i, j, e) in table.entries() {
        if e.is_zero() {
            continue;
        }
        let row: serde_json::Map<String, Value> = e
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (target[k].clone(), Value::String(c.to_string())))
            .collect();
        out.insert(format!("{},{}", left[i], right[j]), Value::Object(row));
    }
    Value::Object(out)
}

fn build_algebra(raw: &AlgebraJson) -> Result<ConformalAlgebra> {
    let kind = parse_kind(&raw.kind)?;
    let vars = VarTable::new(&raw.params)?;
    let n = raw.basis.len();
    let mut table = Table::zero(n, n, n);
    let given = fill_table(&mut table, &raw.products, &raw.basis, &raw.basis, &raw.basis, &vars)?;
    if kind == Kind::Lie {
        // a pair given in one order only is completed by skew-symmetry
        let skew = skew_lambda();
        for &(i, j) in &given {
            if i != j && !given.contains(&(j, i)) {
                let e = table.get(i, j).subst(&Var::X, &skew).neg();
                table.set(j, i, e);
            }
        }
    }
    ConformalAlgebra::new(kind, raw.basis.clone(), vars, table)
}

pub fn algebra_from_json(v: &Value) -> Result<ConformalAlgebra> {
    build_algebra(&from_value(v, "algebra")?)
}

pub fn algebra_to_json(a: &ConformalAlgebra) -> Value {
    json!({
        "kind": a.kind().to_string(),
        "basis": a.basis(),
        "params": a.vars().params(),
        "products": table_json(a.table(), a.basis(), a.basis(), a.basis()),
    })
}

pub fn rep_from_json(v: &Value) -> Result<Representation> {
    let raw: RepJson = from_value(v, "representation")?;
    let algebra = build_algebra(&raw.algebra)?;
    let (n, m) = (algebra.rank(), raw.module_basis.len());
    let vars = algebra.vars().clone();
    let read = |p: &Option<Products>| -> Result<Table> {
        let mut t = Table::zero(n, m, m);
        if let Some(p) = p {
            fill_table(&mut t, p, algebra.basis(), &raw.module_basis, &raw.module_basis, &vars)?;
        }
        Ok(t)
    };
    let action = match algebra.kind() {
        Kind::Lie => {
            if raw.action_l.is_some() || raw.action_r.is_some() {
                return Err(Error::KindMismatch("a Lie representation takes `action`".into()));
            }
            Action::Lie(read(&raw.action)?)
        }
        Kind::LeftSymmetric => {
            if raw.action.is_some() {
                return Err(Error::KindMismatch(
                    "a left-symmetric module takes `action_l` and `action_r`".into(),
                ));
            }
            Action::LeftSymmetric {
                l: read(&raw.action_l)?,
                r: read(&raw.action_r)?,
            }
        }
    };
    Representation::new(algebra, raw.module_basis, action)
}

pub fn rep_to_json(rep: &Representation) -> Value {
    let mut v = algebra_to_json(rep.algebra());
    let a = rep.algebra().basis();
    let m = rep.module_basis();
    v["module_basis"] = json!(m);
    match rep.action() {
        Action::Lie(t) => v["action"] = table_json(t, a, m, m),
        Action::LeftSymmetric { l, r } => {
            v["action_l"] = table_json(l, a, m, m);
            v["action_r"] = table_json(r, a, m, m);
        }
    }
    v
}

pub fn tensor_from_json(v: &Value, names: &[String], vars: &VarTable) -> Result<TensorElement2> {
    let raw: TensorJson = from_value(v, "tensor")?;
    let mut t = TensorElement2::zero(names.len());
    for e in raw.entries {
        t.add_term(index(names, &e.i)?, index(names, &e.j)?, vars.parse(&e.c)?);
    }
    Ok(t)
}

pub fn tensor_to_json(t: &TensorElement2, names: &[String]) -> Value {
    let entries: Vec<EntryJson> = t
        .entries()
        .map(|(i, j, c)| EntryJson {
            i: names[i].clone(),
            j: names[j].clone(),
            c: c.to_string(),
        })
        .collect();
    json!({ "entries": entries })
}

pub fn element_from_json(v: &Value, names: &[String], vars: &VarTable) -> Result<Element> {
    let raw: BTreeMap<String, String> = from_value(v, "element")?;
    let mut e = Element::zero(names.len());
    for (name, p) in raw {
        e.coeffs[index(names, &name)?] = vars.parse(&p)?;
    }
    Ok(e)
}

pub fn module_map_from_json(v: &Value, source: &[String], target: &[String], vars: &VarTable) -> Result<ModuleMap> {
    let raw: BTreeMap<String, BTreeMap<String, String>> = match v.get("map") {
        Some(m) => from_value(m, "module map")?,
        None => return Err(Error::Input("module map needs a `map` object".into())),
    };
    let mut m = ModuleMap::zero(source.len(), target.len());
    for (a, row) in raw {
        let i = index(source, &a)?;
        for (b, p) in row {
            m.set(i, index(target, &b)?, vars.parse(&p)?);
        }
    }
    Ok(m)
}

pub fn module_map_to_json(m: &ModuleMap, source: &[String], target: &[String]) -> Value {
    let mut out = serde_json::Map::new();
    for (i, row) in m.matrix().iter().enumerate() {
        let row: serde_json::Map<String, Value> = row
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| (target[k].clone(), Value::String(p.to_string())))
            .collect();
        out.insert(source[i].clone(), Value::Object(row));
    }
    json!({ "map": out })
}

/// A square matrix of polynomials in `x`, either bare or under `"matrix"`.
pub fn form_from_json(v: &Value, n: usize, vars: &VarTable) -> Result<Vec<Vec<Poly>>> {
    let raw: Vec<Vec<String>> = from_value(v.get("matrix").unwrap_or(v), "form")?;
    if raw.len() != n || raw.iter().any(|r| r.len() != n) {
        return Err(Error::RankMismatch {
            expected: n,
            got: raw.len(),
        });
    }
    let mut out = Vec::with_capacity(n);
    for row in raw {
        let mut parsed = Vec::with_capacity(n);
        for s in row {
            let p = vars.parse(&s)?;
            if let Some(v) = p.vars().into_iter().find(|v| !(v.is_param() || *v == Var::X)) {
                return Err(Error::Input(format!("form entry `{s}` uses `{v}`; only x is allowed")));
            }
            parsed.push(p);
        }
        out.push(parsed);
    }
    Ok(out)
}

pub fn form_to_json(matrix: &[Vec<Poly>]) -> Value {
    let rows: Vec<Vec<String>> = matrix
        .iter()
        .map(|r| r.iter().map(|p| p.to_string()).collect())
        .collect();
    json!({ "matrix": rows })
}

pub fn gd_from_json(v: &Value) -> Result<GDBialgebra> {
    let raw: GdJson = from_value(v, "gd bialgebra")?;
    let n = raw.basis.len();
    if raw.dim.is_some_and(|d| d != n) {
        return Err(Error::RankMismatch {
            expected: n,
            got: raw.dim.unwrap_or(0),
        });
    }
    let vars = VarTable::new(&raw.params)?;
    let read = |products: &Products| -> Result<Vec<Vec<Vec<Poly>>>> {
        let mut t = vec![vec![vec![Poly::zero(); n]; n]; n];
        for (key, row) in products {
            let (a, b) = split_pair(key)?;
            let (i, j) = (index(&raw.basis, a)?, index(&raw.basis, b)?);
            for (c, p) in row {
                t[i][j][index(&raw.basis, c)?] = vars.parse(p)?;
            }
        }
        Ok(t)
    };
    GDBialgebra::new(raw.basis.clone(), read(&raw.circ)?, read(&raw.lie)?)
}

pub fn gd_to_json(v: &GDBialgebra) -> Value {
    let products = |t: &Vec<Vec<Vec<Poly>>>| {
        let mut out = serde_json::Map::new();
        for (i, row) in t.iter().enumerate() {
            for (j, coeffs) in row.iter().enumerate() {
                let entry: serde_json::Map<String, Value> = coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(k, p)| (v.basis[k].clone(), Value::String(p.to_string())))
                    .collect();
                if !entry.is_empty() {
                    out.insert(format!("{},{}", v.basis[i], v.basis[j]), Value::Object(entry));
                }
            }
        }
        Value::Object(out)
    };
    let params: Vec<String> = v
        .circ
        .iter()
        .chain(&v.lie)
        .flatten()
        .flatten()
        .flat_map(|p| p.vars())
        .filter(Var::is_param)
        .map(|p| p.name().to_string())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    json!({
        "dim": v.dim(),
        "basis": v.basis,
        "params": params,
        "circ": products(&v.circ),
        "lie": products(&v.lie),
    })
}

pub fn catalog_to_json(entry: &CatalogEntry) -> Value {
    let (kind, body) = match &entry.object {
        CatalogObject::Algebra(a) => ("algebra", algebra_to_json(a)),
        CatalogObject::Operator { algebra, map } => (
            "operator",
            json!({
                "algebra": algebra_to_json(algebra),
                "map": module_map_to_json(map, algebra.basis(), algebra.basis())["map"],
            }),
        ),
        CatalogObject::Tensor { algebra, tensor } => (
            "tensor",
            json!({
                "algebra": algebra_to_json(algebra),
                "tensor": tensor_to_json(tensor, algebra.basis()),
            }),
        ),
        CatalogObject::Gd(v) => ("gd", gd_to_json(v)),
    };
    json!({ "name": entry.name, "type": kind, "note": entry.note, "object": body })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, hv, hv_gd, hv_lsc2, hv_rb_family2, vir, CATALOG_NAMES};
    use crate::reps::{standard_rep, StandardRep};

    #[test]
    fn algebra_round_trip() {
        for a in [vir(), hv(), hv_lsc2()] {
            let v = algebra_to_json(&a);
            assert_eq!(algebra_from_json(&v).unwrap(), a);
        }
    }

    #[test]
    fn lie_pairs_complete_by_skew_symmetry() {
        let v = json!({"kind":"lie","basis":["L","W"],"products":{"L,L":{"L":"d+2*x"},"L,W":{"W":"d+x"}}});
        assert_eq!(algebra_from_json(&v).unwrap(), hv());
        let ls = json!({"kind":"left_symmetric","basis":["L","W"],"products":{"L,W":{"W":"d+x"}}});
        let a = algebra_from_json(&ls).unwrap();
        assert!(a.sc(1, 0).is_zero());
    }

    #[test]
    fn bad_inputs() {
        let unknown = json!({"kind":"lie","basis":["L"],"products":{"L,Q":{"L":"1"}}});
        assert!(matches!(algebra_from_json(&unknown), Err(Error::UnknownBasis(_))));
        let var = json!({"kind":"lie","basis":["L"],"products":{"L,L":{"L":"c*d"}}});
        assert!(algebra_from_json(&var).is_err());
        let kind = json!({"kind":"jordan","basis":["L"]});
        assert!(algebra_from_json(&kind).is_err());
    }

    #[test]
    fn rep_round_trip() {
        let lie = standard_rep(&hv(), StandardRep::Adjoint).unwrap().dual().unwrap();
        assert_eq!(rep_from_json(&rep_to_json(&lie)).unwrap(), lie);
        let lsc = standard_rep(&hv_lsc2(), StandardRep::RegularRight).unwrap();
        assert_eq!(rep_from_json(&rep_to_json(&lsc)).unwrap(), lsc);
    }

    #[test]
    fn tensor_map_form_gd_round_trips() {
        let names: Vec<String> = ["L", "W", "L*", "W*"].iter().map(|s| s.to_string()).collect();
        let vars = VarTable::new(&["b"]).unwrap();
        let v = json!({"entries":[{"i":"L","j":"W*","c":"d1+2*d2"},{"i":"W*","j":"L","c":"b"}]});
        let t = tensor_from_json(&v, &names, &vars).unwrap();
        assert_eq!(t.get(0, 3), vars.parse("d1+2*d2").unwrap());
        assert_eq!(tensor_from_json(&tensor_to_json(&t, &names), &names, &vars).unwrap(), t);

        let a = hv();
        let map = hv_rb_family2();
        let g = VarTable::new(&["g0", "g1", "g2", "g3"]).unwrap();
        let back = module_map_from_json(&module_map_to_json(&map, a.basis(), a.basis()), a.basis(), a.basis(), &g).unwrap();
        assert_eq!(back, map);

        let form = json!([["x", "0"], ["0", "-x"]]);
        let m = form_from_json(&form, 2, &VarTable::permissive()).unwrap();
        assert_eq!(form_from_json(&form_to_json(&m), 2, &VarTable::permissive()).unwrap(), m);
        assert!(form_from_json(&json!([["d"]]), 1, &VarTable::permissive()).is_err());

        let gd = hv_gd();
        assert_eq!(gd_from_json(&gd_to_json(&gd)).unwrap(), gd);
        let spec = json!({"dim":2,"basis":["L","W"],"circ":{"W,L":{"W":"1"}},"lie":{}});
        assert_eq!(gd_from_json(&spec).unwrap().circ[1][0][1], Poly::one());
    }

    #[test]
    fn catalog_entries_serialize() {
        for name in CATALOG_NAMES {
            let v = catalog_to_json(&catalog(name).unwrap());
            assert_eq!(v["name"], name);
            if v["type"] == "algebra" {
                algebra_from_json(&v["object"]).unwrap();
            }
        }
    }
}
