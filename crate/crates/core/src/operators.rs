//! O-operators, Rota-Baxter operators, 2-cocycles and invariant forms.

use std::collections::BTreeMap;

use crate::conformal::{first_residual, ConformalAlgebra, Element, Kind, Table};
use crate::error::{Error, Result};
use crate::poly::{Poly, Rational, Var, VarTable};
use crate::reps::{Action, Representation};
use crate::report::{Check, Report};
use crate::tensor::{cybe_residual, t_from_r, TensorElement2};

/// A `ℚ[∂]`-module map between free modules. Row `i` holds the coordinates
/// of the image of the `i`-th source basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    target: usize,
    matrix: Vec<Vec<Poly>>,
}

impl ModuleMap {
    pub fn new(matrix: Vec<Vec<Poly>>, target: usize) -> Result<Self> {
        for row in &matrix {
            if row.len() != target {
                return Err(Error::RankMismatch {
                    expected: target,
                    got: row.len(),
                });
            }
            for p in row {
                if let Some(v) = p.vars().into_iter().find(|v| !v.is_param() && *v != Var::D) {
                    return Err(Error::Input(format!(
                        "module map entry `{p}` uses variable `{v}`; only d and parameters allowed"
                    )));
                }
            }
        }
        Ok(ModuleMap { target, matrix })
    }

    pub fn zero(source: usize, target: usize) -> Self {
        ModuleMap {
            target,
            matrix: vec![vec![Poly::zero(); target]; source],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ModuleMap::zero(n, n);
        for i in 0..n {
            m.matrix[i][i] = Poly::one();
        }
        m
    }

    pub fn source(&self) -> usize {
        self.matrix.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    pub fn get(&self, i: usize, k: usize) -> &Poly {
        &self.matrix[i][k]
    }

    pub fn set(&mut self, i: usize, k: usize, p: Poly) {
        self.matrix[i][k] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Poly::is_zero)
    }

    /// Image of an element; spectral variables in `e` are scalars.
    pub fn apply(&self, e: &Element) -> Element {
        assert_eq!(e.rank(), self.source(), "module map argument rank");
        let mut out = Element::zero(self.target);
        for (i, p) in e.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (k, m) in self.matrix[i].iter().enumerate() {
                if !m.is_zero() {
                    out.coeffs[k] += p * m;
                }
            }
        }
        out
    }

    pub fn image(&self, i: usize) -> Element {
        Element::from_coeffs(self.matrix[i].clone())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModuleMap) -> ModuleMap {
        assert_eq!(self.target, next.source(), "composition shape");
        ModuleMap {
            target: next.target,
            matrix: (0..self.source())
                .map(|i| next.apply(&self.image(i)).coeffs)
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> ModuleMap {
        ModuleMap {
            target: self.target,
            matrix: self
                .matrix
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
        }
    }

    pub fn subst_params(&self, map: &[(Var, Poly)]) -> ModuleMap {
        self.map(|p| p.subst_many(map))
    }

    pub fn polys(&self) -> impl Iterator<Item = &Poly> {
        self.matrix.iter().flatten()
    }

    pub fn det(&self) -> Result<Poly> {
        if self.source() != self.target {
            return Err(Error::Input(format!(
                "determinant of a {}x{} matrix",
                self.source(),
                self.target
            )));
        }
        Ok(det(&self.matrix))
    }
}

fn det(m: &[Vec<Poly>]) -> Poly {
    match m.len() {
        0 => Poly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut total = Poly::zero();
            for (col, a) in m[0].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let t = a * &det(&minor(m, 0, col));
                if col % 2 == 0 {
                    total += t;
                } else {
                    total -= t;
                }
            }
            total
        }
    }
}

fn minor(m: &[Vec<Poly>], row: usize, col: usize) -> Vec<Vec<Poly>> {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(c, _)| *c != col)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}

/// Inverse over `ℚ[∂]`; requires a unit determinant.
pub fn invert_module_map(m: &ModuleMap) -> Result<ModuleMap> {
    let d = m.det()?;
    let unit = d.constant_value().filter(|c| *c != Rational::from_integer(0.into()));
    let Some(unit) = unit else {
        return Err(Error::NotInvertible(format!("determinant {d} is not a nonzero constant")));
    };
    let n = m.source();
    let inv = Rational::from_integer(1.into()) / unit;
    let mut out = ModuleMap::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            // adj(M)_{ij} = (-1)^{i+j} det(minor(M, j, i))
            let cof = det(&minor(&m.matrix, j, i)).scale(&inv);
            out.matrix[i][j] = if (i + j) % 2 == 0 { cof } else { -cof };
        }
    }
    Ok(out)
}

/// Declares every parameter occurring in `polys` that `base` lacks.
pub(crate) fn extend_vars<'a>(base: &VarTable, polys: impl IntoIterator<Item = &'a Poly>) -> VarTable {
    let mut vars = base.clone();
    for p in polys {
        for v in p.vars() {
            if let Var::Param(name) = &v {
                if vars.check(&Poly::var(v.clone())).is_err() {
                    vars.declare(name).expect("parameter names are identifiers");
                }
            }
        }
    }
    vars
}

fn require(report: Report) -> Result<()> {
    if report.ok() {
        Ok(())
    } else {
        Err(Error::Precondition(first_residual(&report)))
    }
}

/// `[T(u)_λ T(v)] - T(ρ(T(u))_λ v - ρ(T(v))_{-λ-∂} u)` on module basis pairs;
/// in `ker_mode` the residual is passed through `ρ(·)_{z1} w` for each basis `w`.
pub fn check_o_operator(t0: &ModuleMap, rep: &Representation, ker_mode: bool) -> Result<Report> {
    let rho = rep.rho()?;
    let alg = rep.algebra();
    if t0.source() != rep.rank() || t0.target() != alg.rank() {
        return Err(Error::RankMismatch {
            expected: rep.rank(),
            got: t0.source(),
        });
    }
    require(rep.check_rep())?;
    Ok(o_operator_report(t0, rep, rho, ker_mode))
}

fn o_residual(t0: &ModuleMap, alg: &ConformalAlgebra, rho: &Table, a: usize, b: usize) -> Element {
    let (x, skew) = (Poly::x(), crate::conformal::skew_lambda());
    let (ta, tb) = (t0.image(a), t0.image(b));
    let m = t0.source();
    let lhs = alg.bracket_at(&ta, &tb, &x);
    let inner = rho
        .apply(&ta, &Element::basis(m, b), &x)
        .sub(&rho.apply(&tb, &Element::basis(m, a), &skew));
    lhs.sub(&t0.apply(&inner))
}

fn o_operator_report(t0: &ModuleMap, rep: &Representation, rho: &Table, ker_mode: bool) -> Report {
    let alg = rep.algebra();
    let m = rep.rank();
    let names = rep.module_basis();
    let z = Poly::var(Var::Z1);
    let mut check = Check::new(if ker_mode { "O-operator (kernel)" } else { "O-operator" });
    for a in 0..m {
        for b in 0..m {
            let res = o_residual(t0, alg, rho, a, b);
            let label = format!("({},{})", names[a], names[b]);
            if ker_mode {
                for w in 0..m {
                    let out = rho.apply(&res, &Element::basis(m, w), &z);
                    check.push_element(&format!("{label} on {}", names[w]), &out, names);
                }
            } else {
                check.push_element(&label, &res, alg.basis());
            }
        }
    }
    let mut report = Report::new();
    report.push(check);
    report
}

fn rb_residual(a: &ConformalAlgebra, t: &ModuleMap, weight: &Poly, i: usize, j: usize) -> Element {
    let x = Poly::x();
    let (ei, ej) = (a.element(i), a.element(j));
    let (ti, tj) = (t.image(i), t.image(j));
    let lhs = a.bracket_at(&ti, &tj, &x);
    let inner = a
        .bracket_at(&ei, &tj, &x)
        .add(&a.bracket_at(&ti, &ej, &x))
        .add(&a.sc(i, j).scale(weight));
    lhs.sub(&t.apply(&inner))
}

/// `[T(a)_λ T(b)] - T([a_λ T(b)]) - T([T(a)_λ b]) - α T([a_λ b])`.
pub fn check_rota_baxter(a: &ConformalAlgebra, t: &ModuleMap, weight: &Poly) -> Result<Report> {
    if t.source() != a.rank() || t.target() != a.rank() {
        return Err(Error::RankMismatch {
            expected: a.rank(),
            got: t.source(),
        });
    }
    require(a.check_axioms())?;
    Ok(rota_baxter_report(a, t, weight))
}

fn rota_baxter_report(a: &ConformalAlgebra, t: &ModuleMap, weight: &Poly) -> Report {
    let n = a.rank();
    let mut check = Check::new("Rota-Baxter");
    for i in 0..n {
        for j in 0..n {
            let res = rb_residual(a, t, weight, i, j);
            let label = format!("({},{})", a.basis()[i], a.basis()[j]);
            check.push_element(&label, &res, a.basis());
        }
    }
    let mut report = Report::new();
    report.push(check);
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InducedMode {
    /// `u ∗_λ v = ρ(T(u))_λ v` on the module.
    OProduct,
    /// `a_λ b = T(ρ(a)_λ T⁻¹(b))` on the algebra.
    Bijective,
    /// `a_λ b = [T(a)_λ b]` for a weight-zero Rota-Baxter `T`.
    RotaBaxter,
}

/// Left-symmetric structure induced by an operator.
pub fn induced_lsc(t: &ModuleMap, rep: &Representation, mode: InducedMode) -> Result<ConformalAlgebra> {
    let rho = rep.rho()?;
    let alg = rep.algebra();
    let x = Poly::x();
    match mode {
        InducedMode::OProduct => {
            let report = check_o_operator(t, rep, true)?;
            require(report)?;
            let m = rep.rank();
            let mut table = Table::zero(m, m, m);
            for u in 0..m {
                for v in 0..m {
                    table.set(u, v, rho.apply(&t.image(u), &Element::basis(m, v), &x));
                }
            }
            let vars = extend_vars(alg.vars(), t.polys());
            ConformalAlgebra::new(Kind::LeftSymmetric, rep.module_basis().to_vec(), vars, table)
        }
        InducedMode::Bijective => {
            require(check_o_operator(t, rep, false)?)?;
            let inv = invert_module_map(t)?;
            let n = alg.rank();
            let mut table = Table::zero(n, n, n);
            for i in 0..n {
                for j in 0..n {
                    let v = rho.apply(&alg.element(i), &inv.image(j), &x);
                    table.set(i, j, t.apply(&v));
                }
            }
            let vars = extend_vars(alg.vars(), t.polys());
            ConformalAlgebra::new(Kind::LeftSymmetric, alg.basis().to_vec(), vars, table)
        }
        InducedMode::RotaBaxter => {
            if !matches!(rep.action(), Action::Lie(_)) || rep.module_basis() != alg.basis() {
                return Err(Error::Input("rb mode needs the adjoint representation".into()));
            }
            if alg.table() != rho {
                return Err(Error::Input("rb mode needs the adjoint representation".into()));
            }
            require(check_rota_baxter(alg, t, &Poly::zero())?)?;
            let n = alg.rank();
            let mut table = Table::zero(n, n, n);
            for i in 0..n {
                for j in 0..n {
                    table.set(i, j, alg.bracket_at(&t.image(i), &alg.element(j), &x));
                }
            }
            let vars = extend_vars(alg.vars(), t.polys());
            ConformalAlgebra::new(Kind::LeftSymmetric, alg.basis().to_vec(), vars, table)
        }
    }
}

/// A conformal bilinear form given on basis pairs: `form(e_i, e_j)_λ = c_ij(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleForm {
    pub kind: Kind,
    pub matrix: Vec<Vec<Poly>>,
}

/// `form(a, b)_lam = Σ a_i(-lam) b_j(lam) c_ij(lam)`.
fn eval_form(matrix: &[Vec<Poly>], a: &Element, b: &Element, lam: &Poly) -> Poly {
    let neg = -lam;
    let mut total = Poly::zero();
    for (i, p) in a.coeffs.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let p = p.subst(&Var::D, &neg);
        for (j, q) in b.coeffs.iter().enumerate() {
            let c = &matrix[i][j];
            if q.is_zero() || c.is_zero() {
                continue;
            }
            total += &(&p * &q.subst(&Var::D, lam)) * &c.subst(&Var::X, lam);
        }
    }
    total
}

impl CocycleForm {
    pub fn zero(kind: Kind, n: usize) -> Self {
        CocycleForm {
            kind,
            matrix: vec![vec![Poly::zero(); n]; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn eval(&self, a: &Element, b: &Element, lam: &Poly) -> Poly {
        eval_form(&self.matrix, a, b, lam)
    }
}

/// `α_λ(a, b) = {T_0^{-1}(a), b}_λ` for the map `T^r` of `r`.
pub fn cocycle_from_r(a: &ConformalAlgebra, r: &TensorElement2, kind: Kind) -> Result<CocycleForm> {
    let parts = r.parts();
    match kind {
        Kind::Lie if !parts.is_skew => {
            return Err(Error::WrongSymmetry("a Lie cocycle needs a skew-symmetric r".into()))
        }
        Kind::LeftSymmetric if !parts.is_sym => {
            return Err(Error::WrongSymmetry(
                "a left-symmetric cocycle needs a symmetric r".into(),
            ))
        }
        _ => {}
    }
    let t0 = t_from_r(a, r)?.t0();
    let s = invert_module_map(&t0)?;
    let neg = -Poly::x();
    let n = a.rank();
    let matrix = (0..n)
        .map(|i| (0..n).map(|j| s.get(i, j).subst(&Var::D, &neg)).collect())
        .collect();
    Ok(CocycleForm { kind, matrix })
}

/// Cocycle identity and symmetry law in the variables `x` (λ) and `y` (μ).
pub fn cocycle_check(a: &ConformalAlgebra, form: &CocycleForm) -> Result<Report> {
    if a.kind() != form.kind {
        return Err(Error::KindMismatch(format!(
            "{} form on a {} algebra",
            form.kind,
            a.kind()
        )));
    }
    if form.rank() != a.rank() {
        return Err(Error::RankMismatch {
            expected: a.rank(),
            got: form.rank(),
        });
    }
    let n = a.rank();
    let (x, y) = (Poly::x(), Poly::y());
    let xy = &x + &y;
    let e = |i| a.element(i);
    let mut cocycle = Check::new("cocycle");
    let mut symmetry = Check::new("symmetry");
    let names = a.basis();
    for i in 0..n {
        for j in 0..n {
            let flipped = form.matrix[j][i].subst(&Var::X, &-&x);
            let sym = match form.kind {
                Kind::Lie => &form.matrix[i][j] + &flipped,
                Kind::LeftSymmetric => &form.matrix[i][j] - &flipped,
            };
            symmetry.push(format!("({},{})", names[i], names[j]), sym);
            for k in 0..n {
                let bc = a.sc(j, k).subst(&Var::X, &y);
                let ac = a.sc(i, k).clone();
                let ab = a.sc(i, j).clone();
                let res = match form.kind {
                    Kind::Lie => {
                        form.eval(&e(i), &bc, &x) - form.eval(&e(j), &ac, &y) - form.eval(&ab, &e(k), &xy)
                    }
                    Kind::LeftSymmetric => {
                        let ba = a.sc(j, i).subst(&Var::X, &y);
                        form.eval(&ab, &e(k), &xy) - form.eval(&e(i), &bc, &x) - form.eval(&ba, &e(k), &xy)
                            + form.eval(&e(j), &ac, &y)
                    }
                };
                cocycle.push(format!("({},{},{})", names[i], names[j], names[k]), res);
            }
        }
    }
    let mut report = Report::new();
    report.push(symmetry);
    report.push(cocycle);
    Ok(report)
}

/// `⟨e_i, e_j⟩_λ = B_ij(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub matrix: Vec<Vec<Poly>>,
}

impl BilinearForm {
    pub fn eval(&self, a: &Element, b: &Element, lam: &Poly) -> Poly {
        eval_form(&self.matrix, a, b, lam)
    }

    /// The module map `a ↦ ⟨a, ·⟩` into the conformal dual: `B_ij(-∂)`.
    pub fn induced_map(&self) -> ModuleMap {
        let neg = -Poly::d();
        let matrix = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|b| b.subst(&Var::X, &neg)).collect())
            .collect();
        ModuleMap::new(matrix, self.matrix.len()).expect("forms are polynomials in x")
    }
}

/// Symmetry, invariance and non-degeneracy of `B`; with `r`, the Rota-Baxter
/// identity of `P_0^r` next to the CYBE residual of `r`.
pub fn invariant_form_suite(a: &ConformalAlgebra, b: &BilinearForm, r: Option<&TensorElement2>) -> Result<Report> {
    if a.kind() != Kind::Lie {
        return Err(Error::KindMismatch("invariant forms need a Lie algebra".into()));
    }
    let n = a.rank();
    if b.matrix.len() != n || b.matrix.iter().any(|row| row.len() != n) {
        return Err(Error::RankMismatch {
            expected: n,
            got: b.matrix.len(),
        });
    }
    let (x, y, d) = (Poly::x(), Poly::y(), Poly::d());
    let names = a.basis();
    let mut symmetry = Check::new("symmetry");
    let mut invariance = Check::new("invariance");
    let shifted = &x - &d;
    for i in 0..n {
        for j in 0..n {
            let res = &b.matrix[i][j] - &b.matrix[j][i].subst(&Var::X, &-&x);
            symmetry.push(format!("({},{})", names[i], names[j]), res);
            for k in 0..n {
                let ab = a.sc(i, j).subst(&Var::X, &y);
                let bc = a.sc(j, k).subst(&Var::X, &shifted);
                let res = b.eval(&ab, &a.element(k), &x) - b.eval(&a.element(i), &bc, &y);
                invariance.push(format!("({},{},{})", names[i], names[j], names[k]), res);
            }
        }
    }
    let mut nondeg = Check::new("non-degeneracy");
    let m = b.induced_map();
    let inverse = match invert_module_map(&m) {
        Ok(inv) => Some(inv),
        Err(e) => {
            nondeg.fail(e.to_string());
            None
        }
    };
    let mut report = Report::new();
    report.push(symmetry);
    report.push(invariance);
    report.push(nondeg);
    if let Some(r) = r {
        let Some(inv) = inverse else {
            return Err(Error::DegenerateForm);
        };
        let p0 = p0_from_r(a, b, &inv, r);
        let mut et1 = rota_baxter_report(a, &p0, &Poly::zero());
        et1.checks[0].name = "P0 Rota-Baxter".into();
        report.extend(et1);
        let cybe = cybe_residual(a, r)?;
        report.push(cybe.to_check("CYBE", names));
    }
    Ok(report)
}

/// `P_0^r` from `⟨r, u⊗v⟩_{(λ,μ)} = ⟨P^r_{λ-∂}(u), v⟩_μ`; `inv` is the
/// inverse of the induced map `B(-∂)`.
pub fn p0_from_r(a: &ConformalAlgebra, b: &BilinearForm, inv: &ModuleMap, r: &TensorElement2) -> ModuleMap {
    let n = a.rank();
    let d = Poly::d();
    let neg = -&d;
    // G_ab(λ, μ) = Σ f_pq(-λ, -μ) B_pa(λ) B_qb(μ) at λ = d, μ = -d
    let mut g = vec![vec![Poly::zero(); n]; n];
    for (p, q, f) in r.entries() {
        let f_at = f.subst_many(&[(Var::D1, neg.clone()), (Var::D2, d.clone())]);
        for (ia, row) in g.iter_mut().enumerate() {
            let bpa = b.matrix[p][ia].subst(&Var::X, &d);
            if bpa.is_zero() {
                continue;
            }
            for (ib, cell) in row.iter_mut().enumerate() {
                let bqb = b.matrix[q][ib].subst(&Var::X, &neg);
                *cell += &(&f_at * &bpa) * &bqb;
            }
        }
    }
    let mut p0 = ModuleMap::zero(n, n);
    for ia in 0..n {
        for k in 0..n {
            let mut acc = Poly::zero();
            for (ib, gab) in g[ia].iter().enumerate() {
                acc += gab * inv.get(ib, k);
            }
            p0.matrix[ia][k] = acc;
        }
    }
    p0
}

/// Polynomial equations in unknown parameters, each required to vanish.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolySystem {
    pub unknowns: Vec<Var>,
    pub equations: Vec<Poly>,
}

impl PolySystem {
    /// Substitutes values and drops equations that become zero.
    pub fn evaluate(&self, values: &[(Var, Poly)]) -> Vec<Poly> {
        self.equations
            .iter()
            .map(|e| e.subst_many(values))
            .filter(|e| !e.is_zero())
            .collect()
    }
}

/// Name of the unknown for the `∂^deg` coefficient of `e_j` in `T(e_i)`.
pub fn rb_unknown(deg: u32, i: usize, j: usize) -> Var {
    Var::param(&format!("t{deg}_{i}_{j}"))
}

/// The generic operator `T(e_i) = Σ_{deg ≤ D} Σ_j t{deg}_{i}_{j} ∂^deg e_j`.
pub fn generic_module_map(n: usize, degree: u32) -> ModuleMap {
    let mut m = ModuleMap::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut p = Poly::zero();
            for deg in 0..=degree {
                p += Poly::var(rb_unknown(deg, i, j)) * Poly::d().pow(deg);
            }
            m.matrix[i][j] = p;
        }
    }
    m
}

/// Coefficient equations for a Rota-Baxter operator of bounded degree.
pub fn rb_constraints(a: &ConformalAlgebra, degree: u32, weight: &Poly) -> Result<PolySystem> {
    require(a.check_axioms())?;
    let n = a.rank();
    let t = generic_module_map(n, degree);
    let mut unknowns = Vec::new();
    for deg in 0..=degree {
        for i in 0..n {
            for j in 0..n {
                unknowns.push(rb_unknown(deg, i, j));
            }
        }
    }
    let mut equations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for c in rb_residual(a, &t, weight, i, j).coeffs {
                for (_, eq) in c.coefficients_in(&[Var::D, Var::X]) {
                    if !eq.is_zero() && !equations.contains(&eq) {
                        equations.push(eq);
                    }
                }
            }
        }
    }
    Ok(PolySystem { unknowns, equations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Solved(BTreeMap<Var, Poly>),
    Partial {
        assignment: BTreeMap<Var, Poly>,
        remaining: Vec<Poly>,
    },
}

/// A single monomial `q·v^k` in one unknown.
fn power_of_one_unknown(eq: &Poly, unknowns: &[Var]) -> Option<Var> {
    if eq.len() != 1 {
        return None;
    }
    let (m, _) = eq.terms().next()?;
    let factors: Vec<_> = m.factors().collect();
    match factors.as_slice() {
        [(v, _)] if unknowns.contains(v) => Some((*v).clone()),
        _ => None,
    }
}

/// `c·v + rest` with constant `c` and `v` absent from `rest`.
fn linear_elimination(eq: &Poly, unknowns: &[Var]) -> Option<(Var, Poly)> {
    for v in eq.vars() {
        if !unknowns.contains(&v) || eq.degree_in(&v) != 1 {
            continue;
        }
        let c = eq.coeff_of(&v, 1);
        let Some(c) = c.constant_value() else { continue };
        let rest = eq - &(Poly::var(v.clone()) * Poly::constant(c.clone()));
        let inv = Rational::from_integer((-1).into()) / c;
        return Some((v, rest.scale(&inv)));
    }
    None
}

/// Sum-of-squares cascade: zero out unknowns appearing as lone powers and
/// eliminate unknowns occurring linearly with constant coefficient.
pub fn solve_squares(sys: &PolySystem) -> Result<Solve> {
    let mut assignment: BTreeMap<Var, Poly> = BTreeMap::new();
    let mut eqs: Vec<Poly> = sys.equations.iter().filter(|e| !e.is_zero()).cloned().collect();
    loop {
        if let Some(bad) = eqs.iter().find(|e| e.vars().is_empty()) {
            return Err(Error::Inconsistent(format!("equation reduces to {bad} = 0")));
        }
        let open: Vec<Var> = sys
            .unknowns
            .iter()
            .filter(|v| !assignment.contains_key(*v))
            .cloned()
            .collect();
        let step = eqs
            .iter()
            .find_map(|e| power_of_one_unknown(e, &open).map(|v| (v, Poly::zero())))
            .or_else(|| eqs.iter().find_map(|e| linear_elimination(e, &open)));
        let Some((v, value)) = step else { break };
        let sub = [(v.clone(), value.clone())];
        for val in assignment.values_mut() {
            *val = val.subst_many(&sub);
        }
        assignment.insert(v, value);
        eqs = eqs
            .iter()
            .map(|e| e.subst_many(&sub))
            .filter(|e| !e.is_zero())
            .collect();
    }
    let complete = sys.unknowns.iter().all(|v| assignment.contains_key(v));
    if complete && eqs.is_empty() {
        Ok(Solve::Solved(assignment))
    } else {
        Ok(Solve::Partial {
            assignment,
            remaining: eqs,
        })
    }
}
