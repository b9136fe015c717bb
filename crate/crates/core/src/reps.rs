//! Representations of conformal algebras on free finite-rank modules.

use crate::conformal::{first_residual, skew_lambda, ConformalAlgebra, Element, Kind, Table};
use crate::error::{Error, Result};
use crate::poly::{Poly, Var};
use crate::report::{Check, Report};

/// Action tables. For a Lie algebra a single `ρ`; for a left-symmetric
/// algebra the pair `(l, r)` where `v_λ a = r(a)_{-λ-∂} v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Lie(Table),
    LeftSymmetric { l: Table, r: Table },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: ConformalAlgebra,
    module_basis: Vec<String>,
    action: Action,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardRep {
    Adjoint,
    RegularLeft,
    RegularRight,
    LeftMinusRight,
}

fn check_table_shape(t: &Table, n: usize, m: usize) -> Result<()> {
    if t.left_rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: t.left_rank(),
        });
    }
    if t.right_rank() != m || t.target_rank() != m {
        return Err(Error::RankMismatch {
            expected: m,
            got: t.right_rank(),
        });
    }
    for (_, _, e) in t.entries() {
        for c in &e.coeffs {
            for v in c.vars() {
                if !(v.is_param() || v == Var::D || v == Var::X) {
                    return Err(Error::Input(format!("action entry `{c}` uses variable `{v}`")));
                }
            }
        }
    }
    Ok(())
}

impl Representation {
    pub fn new(algebra: ConformalAlgebra, module_basis: Vec<String>, action: Action) -> Result<Self> {
        let (n, m) = (algebra.rank(), module_basis.len());
        match (&action, algebra.kind()) {
            (Action::Lie(t), Kind::Lie) => check_table_shape(t, n, m)?,
            (Action::LeftSymmetric { l, r }, Kind::LeftSymmetric) => {
                check_table_shape(l, n, m)?;
                check_table_shape(r, n, m)?;
            }
            (_, kind) => {
                return Err(Error::KindMismatch(format!(
                    "action type does not match a {kind} algebra"
                )))
            }
        }
        Ok(Representation {
            algebra,
            module_basis,
            action,
        })
    }

    /// The zero representation of rank `m`, named `v1..vm`.
    pub fn zero(algebra: &ConformalAlgebra, m: usize) -> Self {
        let n = algebra.rank();
        let basis = (1..=m).map(|k| format!("v{k}")).collect();
        let action = match algebra.kind() {
            Kind::Lie => Action::Lie(Table::zero(n, m, m)),
            Kind::LeftSymmetric => Action::LeftSymmetric {
                l: Table::zero(n, m, m),
                r: Table::zero(n, m, m),
            },
        };
        Representation {
            algebra: algebra.clone(),
            module_basis: basis,
            action,
        }
    }

    pub fn algebra(&self) -> &ConformalAlgebra {
        &self.algebra
    }

    pub fn module_basis(&self) -> &[String] {
        &self.module_basis
    }

    pub fn rank(&self) -> usize {
        self.module_basis.len()
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn kind(&self) -> Kind {
        self.algebra.kind()
    }

    /// The Lie action table; errors for a left-symmetric module.
    pub fn rho(&self) -> Result<&Table> {
        match &self.action {
            Action::Lie(t) => Ok(t),
            _ => Err(Error::KindMismatch("expected a Lie-kind representation".into())),
        }
    }

    /// `ρ(a)_lam v` (or `l(a)_lam v`).
    pub fn act_at(&self, a: &Element, v: &Element, lam: &Poly) -> Element {
        match &self.action {
            Action::Lie(t) => t.apply(a, v, lam),
            Action::LeftSymmetric { l, .. } => l.apply(a, v, lam),
        }
    }

    pub fn module_element(&self, k: usize) -> Element {
        Element::basis(self.rank(), k)
    }

    pub fn check_rep(&self) -> Report {
        match &self.action {
            Action::Lie(rho) => {
                let mut report = Report::new();
                report.push(self.lm2(rho, "module (LM2)"));
                report
            }
            Action::LeftSymmetric { l, r } => {
                let mut report = Report::new();
                report.push(self.lm2_left_symmetric(l));
                report.push(self.right_compat(l, r));
                report
            }
        }
    }

    fn label(&self, i: usize, j: usize, k: usize) -> String {
        let a = self.algebra.basis();
        format!("({},{},{})", a[i], a[j], self.module_basis[k])
    }

    /// `[a_λ b]_{λ+μ} v - a_λ(b_μ v) + b_μ(a_λ v)`.
    fn lm2(&self, rho: &Table, name: &str) -> Check {
        let alg = &self.algebra;
        let (n, m) = (alg.rank(), self.rank());
        let (x, y) = (Poly::x(), Poly::y());
        let xy = &x + &y;
        let mut check = Check::new(name);
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    let vk = self.module_element(k);
                    let t1 = rho.apply(alg.sc(i, j), &vk, &xy);
                    let inner = rho.get(j, k).subst(&Var::X, &y);
                    let t2 = rho.apply(&alg.element(i), &inner, &x);
                    let inner = rho.get(i, k).clone();
                    let t3 = rho.apply(&alg.element(j), &inner, &y);
                    let res = t1.sub(&t2).add(&t3);
                    check.push_element(&self.label(i, j, k), &res, &self.module_basis);
                }
            }
        }
        check
    }

    /// `l(a_λ b)_{λ+μ} v - l(a)_λ(l(b)_μ v) - l(b_μ a)_{λ+μ} v + l(b)_μ(l(a)_λ v)`.
    fn lm2_left_symmetric(&self, l: &Table) -> Check {
        let alg = &self.algebra;
        let (n, m) = (alg.rank(), self.rank());
        let (x, y) = (Poly::x(), Poly::y());
        let xy = &x + &y;
        let mut check = Check::new("left module");
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    let vk = self.module_element(k);
                    let t1 = l.apply(alg.sc(i, j), &vk, &xy);
                    let t2 = l.apply(&alg.element(i), &l.get(j, k).subst(&Var::X, &y), &x);
                    let t3 = l.apply(&alg.sc(j, i).subst(&Var::X, &y), &vk, &xy);
                    let t4 = l.apply(&alg.element(j), l.get(i, k), &y);
                    let res = t1.sub(&t2).sub(&t3).add(&t4);
                    check.push_element(&self.label(i, j, k), &res, &self.module_basis);
                }
            }
        }
        check
    }

    /// `r(b)_{-λ-μ-∂}(l(a)_λ v) - l(a)_λ(r(b)_{-μ-∂} v)
    ///  - r(b)_{-λ-μ-∂}(r(a)_λ v) + r(a_λ b)_{-μ-∂} v`.
    fn right_compat(&self, l: &Table, r: &Table) -> Check {
        let alg = &self.algebra;
        let (n, m) = (alg.rank(), self.rank());
        let (x, y, d) = (Poly::x(), Poly::y(), Poly::d());
        let outer = -(&(&x + &y) + &d);
        let inner_lam = -(&y + &d);
        let mut check = Check::new("right module");
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    let vk = self.module_element(k);
                    let ej = alg.element(j);
                    let t1 = r.apply(&ej, l.get(i, k), &outer);
                    let rb_v = r.get(j, k).subst(&Var::X, &inner_lam);
                    let t2 = l.apply(&alg.element(i), &rb_v, &x);
                    let t3 = r.apply(&ej, r.get(i, k), &outer);
                    let t4 = r.apply(alg.sc(i, j), &vk, &inner_lam);
                    let res = t1.sub(&t2).sub(&t3).add(&t4);
                    check.push_element(&self.label(i, j, k), &res, &self.module_basis);
                }
            }
        }
        check
    }

    /// Contragredient representation on the dual basis `v*`:
    /// `ρ*_{ijk}(∂, λ) = -ρ_{ikj}(-λ-∂, λ)`.
    pub fn dual(&self) -> Result<Representation> {
        let rho = self.rho()?;
        let (n, m) = (self.algebra.rank(), self.rank());
        let to = [(Var::D, skew_lambda())];
        let mut table = Table::zero(n, m, m);
        for i in 0..n {
            for j in 0..m {
                for k in 0..m {
                    let c = rho.get(i, k).coeffs[j].subst_many(&to);
                    table.set_coeff(i, j, k, -c);
                }
            }
        }
        Ok(Representation {
            algebra: self.algebra.clone(),
            module_basis: self.module_basis.iter().map(|b| dual_name(b)).collect(),
            action: Action::Lie(table),
        })
    }

    /// `(M, σ, 0)`: a Lie representation of `g(A)` viewed as a module over the
    /// left-symmetric algebra `a`.
    pub fn left_symmetric_from_lie(a: &ConformalAlgebra, sigma: &Representation) -> Result<Self> {
        if a.kind() != Kind::LeftSymmetric {
            return Err(Error::KindMismatch("expected a left-symmetric algebra".into()));
        }
        let rho = sigma.rho()?;
        if sigma.algebra.rank() != a.rank() {
            return Err(Error::RankMismatch {
                expected: a.rank(),
                got: sigma.algebra.rank(),
            });
        }
        let m = sigma.rank();
        Ok(Representation {
            algebra: a.clone(),
            module_basis: sigma.module_basis.clone(),
            action: Action::LeftSymmetric {
                l: rho.clone(),
                r: Table::zero(a.rank(), m, m),
            },
        })
    }

    /// Substitutes parameter values in the algebra and the action.
    pub fn subst_params(&self, map: &[(Var, Poly)]) -> Representation {
        let f = |p: &Poly| p.subst_many(map);
        Representation {
            algebra: self.algebra.subst_params(map),
            module_basis: self.module_basis.clone(),
            action: match &self.action {
                Action::Lie(t) => Action::Lie(t.map(f)),
                Action::LeftSymmetric { l, r } => Action::LeftSymmetric {
                    l: l.map(f),
                    r: r.map(f),
                },
            },
        }
    }
}

pub fn dual_name(b: &str) -> String {
    match b.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{b}*"),
    }
}

/// `R_A(e_i)_λ e_j = (e_j)_{-λ-∂} e_i`.
fn right_table(a: &ConformalAlgebra) -> Table {
    let n = a.rank();
    let skew = skew_lambda();
    let mut t = Table::zero(n, n, n);
    for i in 0..n {
        for j in 0..n {
            t.set(i, j, a.sc(j, i).subst(&Var::X, &skew));
        }
    }
    t
}

/// Adjoint (Lie), regular left `L_A` and `L_A - R_A` (as representations of
/// the sub-adjacent Lie algebra), or the regular module `(L_A, R_A)`.
pub fn standard_rep(a: &ConformalAlgebra, which: StandardRep) -> Result<Representation> {
    let basis = a.basis().to_vec();
    match (which, a.kind()) {
        (StandardRep::Adjoint, Kind::Lie) => Ok(Representation {
            algebra: a.clone(),
            module_basis: basis,
            action: Action::Lie(a.table().clone()),
        }),
        (StandardRep::Adjoint, _) => Err(Error::KindMismatch(
            "adjoint representation needs a Lie algebra".into(),
        )),
        (_, Kind::Lie) => Err(Error::KindMismatch(
            "regular representations need a left-symmetric algebra".into(),
        )),
        (StandardRep::RegularLeft, _) => Ok(Representation {
            algebra: a.sub_adjacent()?,
            module_basis: basis,
            action: Action::Lie(a.table().clone()),
        }),
        (StandardRep::LeftMinusRight, _) => {
            let g = a.sub_adjacent()?;
            let r = right_table(a);
            let n = a.rank();
            let mut t = Table::zero(n, n, n);
            for i in 0..n {
                for j in 0..n {
                    t.set(i, j, a.sc(i, j).sub(r.get(i, j)));
                }
            }
            Ok(Representation {
                algebra: g,
                module_basis: basis,
                action: Action::Lie(t),
            })
        }
        (StandardRep::RegularRight, _) => {
            let report = a.check_axioms();
            if !report.ok() {
                return Err(Error::Precondition(first_residual(&report)));
            }
            Ok(Representation {
                algebra: a.clone(),
                module_basis: basis,
                action: Action::LeftSymmetric {
                    l: a.table().clone(),
                    r: right_table(a),
                },
            })
        }
    }
}

/// Semidirect sum on the concatenated basis (algebra first, module second).
///
/// Lie: `[(a+u)_λ(b+v)] = [a_λ b] + ρ(a)_λ v - ρ(b)_{-λ-∂} u`.
/// Left-symmetric: `(a+u)_λ(b+v) = a_λ b + l(a)_λ v + r(b)_{-λ-∂} u`.
pub fn semidirect(rep: &Representation) -> Result<ConformalAlgebra> {
    let alg = rep.algebra();
    let axioms = alg.check_axioms();
    if !axioms.ok() {
        return Err(Error::Precondition(first_residual(&axioms)));
    }
    let check = rep.check_rep();
    if !check.ok() {
        return Err(Error::Precondition(first_residual(&check)));
    }
    Ok(semidirect_unchecked(rep))
}

/// Semidirect sum without precondition checks.
pub fn semidirect_unchecked(rep: &Representation) -> ConformalAlgebra {
    let alg = rep.algebra();
    let (n, m) = (alg.rank(), rep.rank());
    let size = n + m;
    let skew = skew_lambda();
    let mut table = Table::zero(size, size, size);
    let embed = |e: &Element, offset: usize| {
        let mut out = Element::zero(size);
        for (k, c) in e.coeffs.iter().enumerate() {
            out.coeffs[k + offset] = c.clone();
        }
        out
    };
    for i in 0..n {
        for j in 0..n {
            table.set(i, j, embed(alg.sc(i, j), 0));
        }
    }
    let (left, right, sign) = match rep.action() {
        Action::Lie(rho) => (rho, rho, -1),
        Action::LeftSymmetric { l, r } => (l, r, 1),
    };
    for i in 0..n {
        for k in 0..m {
            table.set(i, n + k, embed(left.get(i, k), n));
            let back = right.get(i, k).subst(&Var::X, &skew);
            let back = if sign < 0 { back.neg() } else { back };
            table.set(n + k, i, embed(&back, n));
        }
    }
    let mut basis = alg.basis().to_vec();
    basis.extend(rep.module_basis().iter().cloned());
    let probe = ConformalAlgebra::new(alg.kind(), basis, alg.vars().clone(), table);
    probe.expect("semidirect table is well-formed")
}
