//! `conformal`: batch front end over JSON presentations.
//!
//! Exit status: 0 when every check holds, 1 when a check fails, 2 on input
//! or precondition errors.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use conformal_core::catalog::{catalog, CATALOG_NAMES};
use conformal_core::coeff::{window_checks, CoeffWindow};
use conformal_core::gdquad::{check_gd, convert, rb_gd_check, zero_divisor_probe, GDBialgebra, Probe, Quadratic};
use conformal_core::json::*;
use conformal_core::operators::{
    check_o_operator, check_rota_baxter, cocycle_check, cocycle_from_r, invariant_form_suite, rb_constraints,
    solve_squares, BilinearForm, CocycleForm, ModuleMap, PolySystem, Solve,
};
use conformal_core::reps::{dual_name, semidirect, Representation};
use conformal_core::tensor::{
    cobracket_from_r, cybe_residual, r_from_t, s_residual, t_from_r, ConformalLinearMap, RMode, TensorElement2,
};
use conformal_core::{ConformalAlgebra, Error, Kind, Poly, Report, Var, VarTable};

#[derive(Parser)]
#[command(name = "conformal", version, about = "Exact checks for Lie and left-symmetric conformal algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input JSON file (stdin when omitted).
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Parameter value `name=poly`, or `name=free` to keep it symbolic.
    #[arg(long = "param", global = true)]
    params: Vec<String>,
    /// Rota-Baxter weight, a polynomial or `free`.
    #[arg(long, global = true, default_value = "0")]
    weight: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Skew,
    Sym,
    Raw,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Lie,
    LeftSymmetric,
}

#[derive(Subcommand)]
enum Command {
    /// Skew-symmetry and Jacobi, or left-symmetry.
    CheckAxioms,
    /// Representation or module axioms.
    CheckRep,
    /// `{"algebra", "tensor"}`: conformal CYBE residual.
    CheckCybe,
    /// `{"algebra", "tensor"}`: conformal S-equation residual.
    CheckS,
    /// `{"rep", "map"}`: O-operator identity for a map from the module into the algebra.
    CheckOOperator {
        /// Check the identity modulo the kernel of the map.
        #[arg(long)]
        ker: bool,
    },
    /// `{"algebra", "map"}` or `{"gd", "map"}`: Rota-Baxter identity of the given weight.
    CheckRb,
    /// Semidirect sum of a representation.
    BuildSemidirect,
    /// Contragredient representation.
    BuildDual,
    /// `{"rep", "map"}`: tensor of a conformal linear map (entries in `x`, `d`).
    RFromT {
        #[arg(long, value_enum, default_value = "skew")]
        mode: ModeArg,
    },
    /// `{"algebra", "tensor"}`: the associated conformal linear map.
    TFromR,
    /// `{"algebra", "tensor", "element"}`: cobracket of an element.
    Cobracket,
    /// `{"algebra", "tensor"}`: bilinear form from a non-degenerate solution.
    CocycleFromR {
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// `{"algebra", "form"}`: 2-cocycle check.
    CheckCocycle,
    /// `{"algebra", "form", "tensor"?}`: invariant form suite.
    FormSuite,
    /// Rota-Baxter constraint system for operators of bounded degree.
    RbConstraints {
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
    /// Solve a constraint system (`{"unknowns", "equations"}`) or an algebra's system.
    Solve {
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
    /// Convert between a GD bialgebra and its quadratic conformal algebra.
    GdConvert,
    /// GD bialgebra axioms.
    GdCheck,
    /// Zero-divisor probe of the Novikov product.
    ZeroDivisors,
    /// `{"algebra", "map"?}` or an algebra: checks on a coefficient window.
    Coeff {
        #[arg(long, default_value_t = 4)]
        window: i64,
        /// Index shift `name=s` for a generator.
        #[arg(long = "shift")]
        shifts: Vec<String>,
    },
    /// List builtin objects, or print one.
    Catalog { name: Option<String> },
}

/// Result of a command: a JSON document and whether every check held.
struct Outcome {
    value: Value,
    ok: bool,
}

impl Outcome {
    fn built(value: Value) -> Self {
        Outcome { value, ok: true }
    }

    fn report(report: &Report) -> Self {
        Outcome {
            value: report.to_json(),
            ok: report.ok(),
        }
    }
}

struct Ctx {
    doc: Value,
    subst: Vec<(Var, Poly)>,
    weight: Poly,
}

impl Ctx {
    /// Parameters declared at the top level of the input, on top of `base`.
    fn vars(&self, base: &VarTable) -> Result<VarTable> {
        let mut vars = base.clone();
        if let Some(list) = self.doc.get("params").and_then(Value::as_array) {
            for name in list {
                let name = name.as_str().ok_or_else(|| anyhow!("`params` must hold strings"))?;
                if !vars.params().iter().any(|p| p == name) {
                    vars.declare(name)?;
                }
            }
        }
        Ok(vars)
    }

    fn field(&self, key: &str) -> Result<&Value> {
        self.doc.get(key).ok_or_else(|| anyhow!("input needs a `{key}` field"))
    }

    fn algebra_value(v: &Value) -> Result<ConformalAlgebra> {
        match v {
            Value::String(name) => match catalog(name)?.object {
                conformal_core::catalog::CatalogObject::Algebra(a) => Ok(a),
                _ => bail!("catalog entry `{name}` is not an algebra"),
            },
            other => Ok(algebra_from_json(other)?),
        }
    }

    /// The `algebra` field, or the whole document.
    fn algebra(&self) -> Result<ConformalAlgebra> {
        let a = match self.doc.get("algebra") {
            Some(v) => Self::algebra_value(v)?,
            None => Self::algebra_value(&self.doc)?,
        };
        Ok(a.subst_params(&self.subst))
    }

    fn rep(&self) -> Result<Representation> {
        let v = self.doc.get("rep").unwrap_or(&self.doc);
        Ok(rep_from_json(v)?.subst_params(&self.subst))
    }

    fn tensor(&self, names: &[String], vars: &VarTable) -> Result<TensorElement2> {
        let t = tensor_from_json(self.field("tensor")?, names, &self.vars(vars)?)?;
        Ok(t.map(|c| c.subst_many(&self.subst)))
    }

    fn map(&self, source: &[String], target: &[String], vars: &VarTable) -> Result<ModuleMap> {
        let m = module_map_from_json(&self.doc, source, target, &self.vars(vars)?)?;
        Ok(m.subst_params(&self.subst))
    }

    fn form(&self, a: &ConformalAlgebra) -> Result<Vec<Vec<Poly>>> {
        let m = form_from_json(self.field("form")?, a.rank(), &self.vars(a.vars())?)?;
        Ok(m.into_iter()
            .map(|row| row.into_iter().map(|p| p.subst_many(&self.subst)).collect())
            .collect())
    }

    fn gd(&self) -> Result<GDBialgebra> {
        let g = gd_from_json(self.doc.get("gd").unwrap_or(&self.doc))?;
        let f = |t: Vec<Vec<Vec<Poly>>>| -> Vec<Vec<Vec<Poly>>> {
            t.into_iter()
                .map(|r| r.into_iter().map(|c| c.into_iter().map(|p| p.subst_many(&self.subst)).collect()).collect())
                .collect()
        };
        Ok(GDBialgebra::new(g.basis.clone(), f(g.circ), f(g.lie))?)
    }
}

fn parse_assignments(list: &[String]) -> Result<Vec<(Var, Poly)>> {
    let table = VarTable::permissive();
    let mut out = Vec::new();
    for item in list {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("expected `name=value`, got `{item}`"))?;
        let (name, value) = (name.trim(), value.trim());
        if value == "free" {
            continue;
        }
        let var = Var::reserved(name).unwrap_or_else(|| Var::param(name));
        if !var.is_param() {
            bail!("`{name}` is not a parameter");
        }
        out.push((var, table.parse(value)?));
    }
    Ok(out)
}

fn parse_weight(s: &str) -> Result<Poly> {
    if s.trim() == "free" {
        return Ok(Poly::param("alpha"));
    }
    Ok(VarTable::permissive().parse(s)?)
}

fn names_with_dual(rep: &Representation) -> Vec<String> {
    let mut names = rep.algebra().basis().to_vec();
    names.extend(rep.module_basis().iter().map(|b| dual_name(b)));
    names
}

fn linear_map_json(t: &ConformalLinearMap, source: &[String], target: &[String]) -> Value {
    let mut out = serde_json::Map::new();
    for (i, row) in t.matrix().iter().enumerate() {
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

fn assignment_json(m: &std::collections::BTreeMap<Var, Poly>) -> Value {
    Value::Object(
        m.iter()
            .map(|(v, p)| (v.name().to_string(), Value::String(p.to_string())))
            .collect(),
    )
}

fn system_json(sys: &PolySystem) -> Value {
    json!({
        "unknowns": sys.unknowns.iter().map(|v| v.name().to_string()).collect::<Vec<_>>(),
        "equations": sys.equations.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    })
}

fn run(command: &Command, ctx: &Ctx) -> Result<Outcome> {
    Ok(match command {
        Command::CheckAxioms => Outcome::report(&ctx.algebra()?.check_axioms()),
        Command::CheckRep => Outcome::report(&ctx.rep()?.check_rep()),
        Command::CheckCybe | Command::CheckS => {
            let a = ctx.algebra()?;
            let r = ctx.tensor(a.basis(), a.vars())?;
            let (name, res) = match command {
                Command::CheckCybe => ("CYBE", cybe_residual(&a, &r)?),
                _ => ("S-equation", s_residual(&a, &r)?),
            };
            let mut report = Report::new();
            report.push(res.to_check(name, a.basis()));
            Outcome::report(&report)
        }
        Command::CheckOOperator { ker } => {
            let rep = ctx.rep_in("rep")?;
            let m = ctx.map(rep.module_basis(), rep.algebra().basis(), rep.algebra().vars())?;
            Outcome::report(&check_o_operator(&m, &rep, *ker)?)
        }
        Command::CheckRb => {
            if ctx.doc.get("gd").is_some() {
                let g = ctx.gd()?;
                let m = ctx.map(&g.basis, &g.basis, &VarTable::new::<&str>(&[])?)?;
                Outcome::report(&rb_gd_check(&g, &m, &ctx.weight)?)
            } else {
                let a = ctx.algebra()?;
                let m = ctx.map(a.basis(), a.basis(), a.vars())?;
                Outcome::report(&check_rota_baxter(&a, &m, &ctx.weight)?)
            }
        }
        Command::BuildSemidirect => Outcome::built(algebra_to_json(&semidirect(&ctx.rep()?)?)),
        Command::BuildDual => Outcome::built(rep_to_json(&ctx.rep()?.dual()?)),
        Command::RFromT { mode } => {
            let rep = ctx.rep_in("rep")?;
            let m = ctx.map(rep.module_basis(), rep.algebra().basis(), rep.algebra().vars())?;
            let t = ConformalLinearMap::from_matrix(m.matrix().to_vec(), rep.algebra().rank())?;
            let mode = match mode {
                ModeArg::Skew => RMode::Skew,
                ModeArg::Sym => RMode::Sym,
                ModeArg::Raw => RMode::Raw,
            };
            let r = r_from_t(&t, &rep, mode)?;
            let names = names_with_dual(&rep);
            let mut v = tensor_to_json(&r, &names);
            v["basis"] = json!(names);
            Outcome::built(v)
        }
        Command::TFromR => {
            let a = ctx.algebra()?;
            let r = ctx.tensor(a.basis(), a.vars())?;
            let source: Vec<String> = a.basis().iter().map(|b| dual_name(b)).collect();
            Outcome::built(linear_map_json(&t_from_r(&a, &r)?, &source, a.basis()))
        }
        Command::Cobracket => {
            let a = ctx.algebra()?;
            let r = ctx.tensor(a.basis(), a.vars())?;
            let e = element_from_json(ctx.field("element")?, a.basis(), &ctx.vars(a.vars())?)?;
            Outcome::built(tensor_to_json(&cobracket_from_r(&a, &r, &e)?, a.basis()))
        }
        Command::CocycleFromR { kind } => {
            let a = ctx.algebra()?;
            let r = ctx.tensor(a.basis(), a.vars())?;
            let kind = match kind {
                Some(KindArg::Lie) => Kind::Lie,
                Some(KindArg::LeftSymmetric) => Kind::LeftSymmetric,
                None => a.kind(),
            };
            let form = cocycle_from_r(&a, &r, kind)?;
            let mut v = form_to_json(&form.matrix);
            v["kind"] = json!(kind.to_string());
            Outcome::built(v)
        }
        Command::CheckCocycle => {
            let a = ctx.algebra()?;
            let form = CocycleForm {
                kind: a.kind(),
                matrix: ctx.form(&a)?,
            };
            Outcome::report(&cocycle_check(&a, &form)?)
        }
        Command::FormSuite => {
            let a = ctx.algebra()?;
            let b = BilinearForm { matrix: ctx.form(&a)? };
            let r = match ctx.doc.get("tensor") {
                Some(_) => Some(ctx.tensor(a.basis(), a.vars())?),
                None => None,
            };
            Outcome::report(&invariant_form_suite(&a, &b, r.as_ref())?)
        }
        Command::RbConstraints { degree } => {
            Outcome::built(system_json(&rb_constraints(&ctx.algebra()?, *degree, &ctx.weight)?))
        }
        Command::Solve { degree } => {
            let sys = match ctx.doc.get("equations") {
                Some(_) => read_system(&ctx.doc)?,
                None => rb_constraints(&ctx.algebra()?, *degree, &ctx.weight)?,
            };
            match solve_squares(&sys) {
                Ok(Solve::Solved(m)) => Outcome {
                    value: json!({ "status": "solved", "assignment": assignment_json(&m) }),
                    ok: true,
                },
                Ok(Solve::Partial { assignment, remaining }) => Outcome {
                    value: json!({
                        "status": "partial",
                        "assignment": assignment_json(&assignment),
                        "remaining": remaining.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    }),
                    ok: false,
                },
                Err(Error::Inconsistent(eq)) => Outcome {
                    value: json!({ "status": "inconsistent", "equation": eq }),
                    ok: false,
                },
                Err(e) => return Err(e.into()),
            }
        }
        Command::GdConvert => {
            let is_gd = ctx.doc.get("circ").is_some() || ctx.doc.get("gd").is_some();
            let input = if is_gd {
                Quadratic::Gd(ctx.gd()?)
            } else {
                Quadratic::Conformal(ctx.algebra()?)
            };
            Outcome::built(match convert(&input)? {
                Quadratic::Gd(g) => gd_to_json(&g),
                Quadratic::Conformal(a) => algebra_to_json(&a),
            })
        }
        Command::GdCheck => Outcome::report(&check_gd(&ctx.gd()?)),
        Command::ZeroDivisors => {
            let g = ctx.gd()?;
            match zero_divisor_probe(&g) {
                Probe::NoZeroDivisors => Outcome {
                    value: json!({ "result": "no_zero_divisors" }),
                    ok: true,
                },
                Probe::Witness(a, b) => {
                    let show = |v: &[conformal_core::Rational]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
                    Outcome {
                        value: json!({ "result": "witness", "a": show(&a), "b": show(&b), "basis": g.basis }),
                        ok: false,
                    }
                }
                Probe::Unknown => Outcome {
                    value: json!({ "result": "unknown" }),
                    ok: true,
                },
            }
        }
        Command::Coeff { window, shifts } => {
            let a = ctx.algebra()?;
            let mut table = vec![0; a.rank()];
            for item in shifts {
                let (name, s) = item
                    .split_once('=')
                    .ok_or_else(|| anyhow!("expected `name=s`, got `{item}`"))?;
                let s: i64 = s.trim().parse().with_context(|| format!("shift `{item}`"))?;
                table[a.index_of(name.trim())?] = s;
            }
            let w = CoeffWindow::with_shifts(&a, *window, table)?;
            let map = match ctx.doc.get("map") {
                Some(_) => Some(ctx.map(a.basis(), a.basis(), a.vars())?),
                None => None,
            };
            Outcome::report(&window_checks(&w, map.as_ref(), Some(&ctx.weight))?)
        }
        Command::Catalog { name: Some(name) } => Outcome::built(catalog_to_json(&catalog(name)?)),
        Command::Catalog { name: None } => {
            let mut list = Vec::new();
            for name in CATALOG_NAMES {
                let entry = catalog(name)?;
                list.push(json!({ "name": entry.name, "note": entry.note }));
            }
            Outcome::built(Value::Array(list))
        }
    })
}

impl Ctx {
    fn rep_in(&self, key: &str) -> Result<Representation> {
        let v = self.field(key)?;
        Ok(rep_from_json(v)?.subst_params(&self.subst))
    }
}

fn read_system(doc: &Value) -> Result<PolySystem> {
    let table = VarTable::permissive();
    let strings = |key: &str| -> Result<Vec<String>> {
        serde_json::from_value(doc.get(key).cloned().unwrap_or(json!([])))
            .with_context(|| format!("`{key}` must be a list of strings"))
    };
    let unknowns = strings("unknowns")?.iter().map(|s| Var::param(s)).collect();
    let equations = strings("equations")?
        .iter()
        .map(|s| table.parse(s))
        .collect::<Result<_, _>>()?;
    Ok(PolySystem { unknowns, equations })
}

fn read_input(path: Option<&PathBuf>, needed: bool) -> Result<Value> {
    let text = match path {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None if needed => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            s
        }
        None => return Ok(Value::Null),
    };
    serde_json::from_str(&text).context("input is not valid JSON")
}

fn execute(cli: &Cli) -> Result<bool> {
    let needed = !matches!(cli.command, Command::Catalog { .. });
    let ctx = Ctx {
        doc: read_input(cli.input.as_ref(), needed)?,
        subst: parse_assignments(&cli.params)?,
        weight: parse_weight(&cli.weight)?,
    };
    let outcome = run(&cli.command, &ctx)?;
    let text = serde_json::to_string_pretty(&outcome.value)? + "\n";
    match &cli.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(outcome.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
