//! Finite free conformal algebras presented by λ-bracket structure constants.
//!
//! A basis product `(e_i)_λ (e_j)` is stored as a vector of polynomials in
//! `d` (the derivation acting on the result) and `x` (the spectral variable
//! λ). Products of arbitrary elements are never stored; they follow from
//! sesquilinearity: a power `∂^m` on the left argument contributes `(-λ)^m`,
//! on the right argument `(λ+∂)^m`.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Poly, Var, VarTable};
use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Lie,
    LeftSymmetric,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Lie => "lie",
            Kind::LeftSymmetric => "left_symmetric",
        })
    }
}

/// A vector of polynomial coefficients over a free `ℚ[∂]`-basis.
///
/// As an element of the algebra the coefficients are polynomials in `d`; a
/// λ-valued element ("`a_λ b ∈ R[λ]`") additionally carries spectral
/// variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub coeffs: Vec<Poly>,
}

/// An element-valued polynomial in the spectral variables.
pub type LambdaElement = Element;

impl Element {
    pub fn zero(rank: usize) -> Self {
        Element {
            coeffs: vec![Poly::zero(); rank],
        }
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut e = Element::zero(rank);
        e.coeffs[i] = Poly::one();
        e
    }

    /// `p * e_i`
    pub fn term(rank: usize, i: usize, p: Poly) -> Self {
        let mut e = Element::zero(rank);
        e.coeffs[i] = p;
        e
    }

    pub fn from_coeffs(coeffs: Vec<Poly>) -> Self {
        Element { coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        debug_assert_eq!(self.rank(), other.rank());
        Element {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        debug_assert_eq!(self.rank(), other.rank());
        Element {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &Element) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn neg(&self) -> Element {
        self.map(|c| -c)
    }

    pub fn scale(&self, p: &Poly) -> Element {
        self.map(|c| c * p)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Element {
        Element {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn subst(&self, v: &Var, q: &Poly) -> Element {
        self.map(|c| c.subst(v, q))
    }

    pub fn subst_many(&self, map: &[(Var, Poly)]) -> Element {
        self.map(|c| c.subst_many(map))
    }

    /// `∂·e`
    pub fn derive(&self) -> Element {
        self.scale(&Poly::d())
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| {
                if c.is_one() {
                    n.clone()
                } else {
                    format!("({c})*{n}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `x` replaced by `-x - d`: the skew-symmetry substitution `λ ↦ -λ-∂`.
pub fn skew_lambda() -> Poly {
    -(Poly::x() + Poly::d())
}

/// A sesquilinear bilinear table `left × right → target[λ]`.
///
/// Entry `(i, j)` is `T_ij(∂, λ)` in the variables `d`, `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    left: usize,
    right: usize,
    target: usize,
    entries: Vec<Element>,
}

impl Table {
    pub fn zero(left: usize, right: usize, target: usize) -> Self {
        Table {
            left,
            right,
            target,
            entries: vec![Element::zero(target); left * right],
        }
    }

    pub fn left_rank(&self) -> usize {
        self.left
    }

    pub fn right_rank(&self) -> usize {
        self.right
    }

    pub fn target_rank(&self) -> usize {
        self.target
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.right + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Element) {
        assert_eq!(value.rank(), self.target, "table entry rank");
        self.entries[i * self.right + j] = value;
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, k: usize, p: Poly) {
        self.entries[i * self.right + j].coeffs[k] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Element)> {
        self.entries
            .iter()
            .enumerate()
            .map(move |(n, e)| (n / self.right, n % self.right, e))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Table {
        Table {
            left: self.left,
            right: self.right,
            target: self.target,
            entries: self.entries.iter().map(|e| e.map(&f)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Element::is_zero)
    }

    /// Evaluates `a_λ b` at `λ = lam`:
    /// `Σ p_i(-lam) q_j(lam+∂) T_ij(∂, lam)`.
    ///
    /// Variables of `a`, `b` other than `d` are treated as scalars, so nested
    /// products may carry outer spectral variables. Any `d` inside `lam`
    /// refers to the derivation acting on the result.
    pub fn apply(&self, a: &Element, b: &Element, lam: &Poly) -> Element {
        assert_eq!(a.rank(), self.left, "left argument rank");
        assert_eq!(b.rank(), self.right, "right argument rank");
        let is_x = *lam == Poly::x();
        let neg_lam = -lam;
        let shifted = lam + &Poly::d();
        let mut out = Element::zero(self.target);
        for (i, p) in a.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let p_at = p.subst(&Var::D, &neg_lam);
            if p_at.is_zero() {
                continue;
            }
            for (j, q) in b.coeffs.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let entry = self.get(i, j);
                if entry.is_zero() {
                    continue;
                }
                let q_at = q.subst(&Var::D, &shifted);
                let scalar = &p_at * &q_at;
                for (k, t) in entry.coeffs.iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    let t_at = if is_x { t.clone() } else { t.subst(&Var::X, lam) };
                    out.coeffs[k] += &scalar * &t_at;
                }
            }
        }
        out
    }
}

/// A finite conformal algebra, free of rank `n` over `ℚ[∂]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalAlgebra {
    kind: Kind,
    basis: Vec<String>,
    vars: VarTable,
    table: Table,
}

fn check_entry_vars(p: &Poly, vars: &VarTable, allowed: &[Var]) -> Result<()> {
    vars.check(p)?;
    for v in p.vars() {
        if !v.is_param() && !allowed.contains(&v) {
            return Err(Error::Input(format!(
                "structure constant `{p}` uses variable `{v}`; only {:?} allowed",
                allowed.iter().map(Var::name).collect::<Vec<_>>()
            )));
        }
    }
    Ok(())
}

impl ConformalAlgebra {
    pub fn new(kind: Kind, basis: Vec<String>, vars: VarTable, table: Table) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::Input("algebra needs at least one basis element".into()));
        }
        if table.left_rank() != n || table.right_rank() != n || table.target_rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                got: table.left_rank(),
            });
        }
        for (_, _, e) in table.entries() {
            for c in &e.coeffs {
                check_entry_vars(c, &vars, &[Var::D, Var::X])?;
            }
        }
        Ok(ConformalAlgebra {
            kind,
            basis,
            vars,
            table,
        })
    }

    /// Builds from sparse `(i, j, k, P_ijk)` entries.
    pub fn from_entries<S: Into<String>>(
        kind: Kind,
        basis: impl IntoIterator<Item = S>,
        params: &[&str],
        entries: &[(usize, usize, usize, Poly)],
    ) -> Result<Self> {
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        let n = basis.len();
        let mut table = Table::zero(n, n, n);
        for (i, j, k, p) in entries {
            if *i >= n || *j >= n || *k >= n {
                return Err(Error::Input(format!("index out of range in ({i},{j},{k})")));
            }
            table.set_coeff(*i, *j, *k, p.clone());
        }
        ConformalAlgebra::new(kind, basis, VarTable::new(params)?, table)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::UnknownBasis(name.to_string()))
    }

    pub fn element(&self, i: usize) -> Element {
        Element::basis(self.rank(), i)
    }

    /// Structure constants `P_ij(d, x)` of `(e_i)_λ (e_j)`.
    pub fn sc(&self, i: usize, j: usize) -> &Element {
        self.table.get(i, j)
    }

    fn check_rank(&self, e: &Element) -> Result<()> {
        if e.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: e.rank(),
            });
        }
        Ok(())
    }

    /// `a_λ b` (or `[a_λ b]`) in the variables `d`, `x`.
    pub fn bracket(&self, a: &Element, b: &Element) -> Result<LambdaElement> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        Ok(self.table.apply(a, b, &Poly::x()))
    }

    /// `a_lam b` for an arbitrary spectral polynomial `lam`.
    pub fn bracket_at(&self, a: &Element, b: &Element, lam: &Poly) -> LambdaElement {
        self.table.apply(a, b, lam)
    }

    /// Same basis and parameters, different kind and table.
    pub(crate) fn with_table(&self, kind: Kind, table: Table) -> ConformalAlgebra {
        ConformalAlgebra {
            kind,
            basis: self.basis.clone(),
            vars: self.vars.clone(),
            table,
        }
    }

    /// Substitutes parameters (or any variables) throughout the table.
    pub fn subst_params(&self, map: &[(Var, Poly)]) -> ConformalAlgebra {
        self.with_table(self.kind, self.table.map(|p| p.subst_many(map)))
    }

    fn label(&self, idx: &[usize]) -> String {
        let names: Vec<&str> = idx.iter().map(|&i| self.basis[i].as_str()).collect();
        format!("({})", names.join(","))
    }

    /// Skew-symmetry residuals `[a_λ b] + [b_{-λ-∂} a]` on basis pairs.
    pub fn skew_residuals(&self) -> Check {
        let mut check = Check::new("skew-symmetry");
        let n = self.rank();
        let skew = skew_lambda();
        for i in 0..n {
            for j in 0..n {
                let res = self.sc(i, j).add(&self.sc(j, i).subst(&Var::X, &skew));
                check.push_element(&self.label(&[i, j]), &res, &self.basis);
            }
        }
        check
    }

    /// `[a_λ[b_μ c]] - [[a_λ b]_{λ+μ} c] - [b_μ[a_λ c]]` for basis `a, b, c`,
    /// in the variables `d, x, y`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> LambdaElement {
        let n = self.rank();
        let (x, y) = (Poly::x(), Poly::y());
        let xy = &x + &y;
        let inner_bc = self.sc(j, k).subst(&Var::X, &y);
        let lhs = self.bracket_at(&self.element(i), &inner_bc, &x);
        let ab = self.sc(i, j).clone();
        let t1 = self.bracket_at(&ab, &self.element(k), &xy);
        let ac = self.sc(i, k).clone();
        let t2 = self.bracket_at(&self.element(j), &ac, &y);
        debug_assert_eq!(lhs.rank(), n);
        lhs.sub(&t1).sub(&t2)
    }

    /// `(a_λ b)_{λ+μ} c - a_λ(b_μ c) - (b_μ a)_{λ+μ} c + b_μ(a_λ c)`.
    pub fn left_symmetry_residual(&self, i: usize, j: usize, k: usize) -> LambdaElement {
        let (x, y) = (Poly::x(), Poly::y());
        let xy = &x + &y;
        let ab = self.sc(i, j).clone();
        let t1 = self.bracket_at(&ab, &self.element(k), &xy);
        let bc = self.sc(j, k).subst(&Var::X, &y);
        let t2 = self.bracket_at(&self.element(i), &bc, &x);
        let ba = self.sc(j, i).subst(&Var::X, &y);
        let t3 = self.bracket_at(&ba, &self.element(k), &xy);
        let ac = self.sc(i, k).clone();
        let t4 = self.bracket_at(&self.element(j), &ac, &y);
        t1.sub(&t2).sub(&t3).add(&t4)
    }

    /// Residuals of the defining identities of this algebra's kind.
    pub fn check_axioms(&self) -> Report {
        let n = self.rank();
        let mut report = Report::new();
        match self.kind {
            Kind::Lie => {
                report.push(self.skew_residuals());
                let mut jac = Check::new("jacobi");
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let res = self.jacobi_residual(i, j, k);
                            jac.push_element(&self.label(&[i, j, k]), &res, &self.basis);
                        }
                    }
                }
                report.push(jac);
            }
            Kind::LeftSymmetric => {
                let mut ls = Check::new("left-symmetry");
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let res = self.left_symmetry_residual(i, j, k);
                            ls.push_element(&self.label(&[i, j, k]), &res, &self.basis);
                        }
                    }
                }
                report.push(ls);
            }
        }
        report
    }

    /// The commutator algebra `[a_λ b] = a_λ b - b_{-λ-∂} a` of a
    /// left-symmetric conformal algebra.
    pub fn sub_adjacent(&self) -> Result<ConformalAlgebra> {
        if self.kind != Kind::LeftSymmetric {
            return Err(Error::KindMismatch(
                "sub-adjacent algebra needs a left-symmetric algebra".into(),
            ));
        }
        let report = self.check_axioms();
        if !report.ok() {
            return Err(Error::Precondition(format!(
                "input fails left-symmetry: {}",
                first_residual(&report)
            )));
        }
        Ok(self.with_table(Kind::Lie, self.commutator_table()))
    }

    /// Commutator table without any axiom check.
    pub fn commutator_table(&self) -> Table {
        let n = self.rank();
        let skew = skew_lambda();
        let mut table = Table::zero(n, n, n);
        for i in 0..n {
            for j in 0..n {
                let v = self.sc(i, j).sub(&self.sc(j, i).subst(&Var::X, &skew));
                table.set(i, j, v);
            }
        }
        table
    }
}

pub(crate) fn first_residual(report: &Report) -> String {
    for c in &report.checks {
        if let Some(r) = c.residuals.first() {
            return format!("{} {}: {}", c.name, r.basis, r.poly);
        }
        if let Some(f) = &c.failure {
            return format!("{}: {f}", c.name);
        }
    }
    "no residual".into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{hv, hv_lsc2, vir};

    fn p(s: &str) -> Poly {
        VarTable::permissive().parse(s).unwrap()
    }

    #[test]
    fn virasoro_bracket_examples() {
        let v = vir();
        let l = v.element(0);
        assert_eq!(v.bracket(&l, &l).unwrap().coeffs[0], p("d+2*x"));
        // L_λ ∂L = (∂+λ)(∂+2λ)L
        let dl = l.derive();
        assert_eq!(v.bracket(&l, &dl).unwrap().coeffs[0], p("(d+x)*(d+2*x)"));
        assert!(v.bracket(&Element::zero(1), &l).unwrap().is_zero());
        assert!(matches!(
            v.bracket(&Element::zero(2), &l),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn builtins_satisfy_axioms() {
        assert!(vir().check_axioms().ok());
        assert!(hv().check_axioms().ok());
    }

    #[test]
    fn mutant_fails_skew_symmetry() {
        let m = ConformalAlgebra::from_entries(Kind::Lie, ["L"], &[], &[(0, 0, 0, p("d+3*x"))])
            .unwrap();
        let report = m.check_axioms();
        assert!(!report.ok());
        let skew = report.check("skew-symmetry").unwrap();
        // (d+3x) + (d + 3(-x-d)) = -d
        assert_eq!(skew.residuals.len(), 1);
        assert_eq!(skew.residuals[0].poly, p("-d"));
    }

    #[test]
    fn sub_adjacent_examples() {
        let comm = ConformalAlgebra::from_entries(
            Kind::LeftSymmetric,
            ["e"],
            &[],
            &[(0, 0, 0, Poly::one())],
        )
        .unwrap();
        let lie = comm.sub_adjacent().unwrap();
        assert_eq!(lie.kind(), Kind::Lie);
        assert!(lie.table().is_zero());

        let zero = ConformalAlgebra::from_entries(Kind::LeftSymmetric, ["a", "b"], &[], &[]).unwrap();
        assert!(zero.sub_adjacent().unwrap().table().is_zero());

        // L_λ L = g(-λ)λW  ⇒  [L_λ L] = g(-λ)λW - g(λ+∂)(-λ-∂)W
        let a = hv_lsc2();
        let g = lie_g();
        let expected = &(&g.subst(&Var::D, &p("-x")) * &p("x"))
            - &(&g.subst(&Var::D, &p("x+d")) * &p("-x-d"));
        let lie = a.sub_adjacent().unwrap();
        assert_eq!(lie.sc(0, 0).coeffs[1], expected);
        assert!(lie.check_axioms().ok());
    }

    fn lie_g() -> Poly {
        p("g0 + g1*d + g2*d^2 + g3*d^3")
    }

    #[test]
    fn sub_adjacent_rejects_non_left_symmetric() {
        let bad = ConformalAlgebra::from_entries(
            Kind::LeftSymmetric,
            ["e"],
            &[],
            &[(0, 0, 0, p("d"))],
        )
        .unwrap();
        assert!(!bad.check_axioms().ok());
        assert!(matches!(bad.sub_adjacent(), Err(Error::Precondition(_))));
        assert!(matches!(vir().sub_adjacent(), Err(Error::KindMismatch(_))));
    }

    #[test]
    fn broken_constant_is_detected() {
        let h = hv();
        let mut t = h.table().clone();
        t.set_coeff(0, 1, 1, p("d+2*x"));
        let broken = h.with_table(Kind::Lie, t);
        assert!(!broken.check_axioms().ok());
    }
}
