//! Tensors in `R⊗R` and `R⊗R⊗R`, the conformal CYBE and S-equation, and the
//! dictionary between tensors and conformal linear maps.
//!
//! A coefficient `f(d1, d2)` on `(e_i, e_j)` stands for `f(∂⊗1, 1⊗∂) e_i⊗e_j`.

use std::collections::BTreeMap;

use crate::conformal::{ConformalAlgebra, Element, Kind};
use crate::error::{Error, Result};
use crate::operators::ModuleMap;
use crate::poly::{Poly, Var};
use crate::reps::Representation;
use crate::report::Check;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement2 {
    rank: usize,
    coeffs: BTreeMap<(usize, usize), Poly>,
}

impl TensorElement2 {
    pub fn zero(rank: usize) -> Self {
        TensorElement2 {
            rank,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> Poly {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Adds `c · e_i⊗e_j`.
    pub fn add_term(&mut self, i: usize, j: usize, c: Poly) {
        assert!(i < self.rank && j < self.rank, "tensor index out of range");
        let entry = self.coeffs.entry((i, j)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn with_term(mut self, i: usize, j: usize, c: Poly) -> Self {
        self.add_term(i, j, c);
        self
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.coeffs.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &TensorElement2) -> TensorElement2 {
        let mut out = self.clone();
        for (i, j, c) in other.entries() {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement2) -> TensorElement2 {
        self.add(&other.map(|c| -c))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> TensorElement2 {
        let mut out = TensorElement2::zero(self.rank);
        for (i, j, c) in self.entries() {
            out.add_term(i, j, f(c));
        }
        out
    }

    /// `r^{21}`: swaps the factors and the slot variables.
    pub fn flip(&self) -> TensorElement2 {
        let swap = [(Var::D1, Poly::var(Var::D2)), (Var::D2, Poly::var(Var::D1))];
        let mut out = TensorElement2::zero(self.rank);
        for (i, j, c) in self.entries() {
            out.add_term(j, i, c.subst_many(&swap));
        }
        out
    }

    pub fn parts(&self) -> Parts {
        let r21 = self.flip();
        let skew = self.sub(&r21);
        let sym = self.add(&r21);
        Parts {
            is_skew: sym.is_zero(),
            is_sym: skew.is_zero(),
            r21,
            skew,
            sym,
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.entries()
            .map(|(i, j, c)| format!("({c})*{}⊗{}", names[i], names[j]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parts {
    pub r21: TensorElement2,
    pub skew: TensorElement2,
    pub sym: TensorElement2,
    pub is_skew: bool,
    pub is_sym: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorElement3 {
    rank: usize,
    coeffs: BTreeMap<(usize, usize, usize), Poly>,
    reduced: bool,
}

impl TensorElement3 {
    pub fn zero(rank: usize) -> Self {
        TensorElement3 {
            rank,
            coeffs: BTreeMap::new(),
            reduced: false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Poly {
        self.coeffs.get(&(i, j, k)).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: usize, j: usize, k: usize, c: Poly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((i, j, k)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(i, j, k));
        }
        self.reduced = false;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Poly)> {
        self.coeffs.iter().map(|(&(i, j, k), c)| (i, j, k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// One residual per nonzero coefficient, labelled by basis triple.
    pub fn to_check(&self, name: &str, names: &[String]) -> Check {
        let mut check = Check::new(name);
        for (i, j, k, c) in self.entries() {
            check.push(format!("{}⊗{}⊗{}", names[i], names[j], names[k]), c.clone());
        }
        check
    }
}

/// Reduction modulo `∂^{⊗3} = d1 + d2 + d3` by eliminating `d3`.
pub fn normal_form3(t: &TensorElement3) -> TensorElement3 {
    let elim = -(Poly::var(Var::D1) + Poly::var(Var::D2));
    let mut out = TensorElement3::zero(t.rank);
    for (i, j, k, c) in t.entries() {
        out.add_term(i, j, k, c.subst(&Var::D3, &elim));
    }
    out.reduced = true;
    out
}

fn check_rank(a: &ConformalAlgebra, r: &TensorElement2) -> Result<()> {
    if a.rank() != r.rank() {
        return Err(Error::RankMismatch {
            expected: a.rank(),
            got: r.rank(),
        });
    }
    Ok(())
}

fn v(var: Var) -> Poly {
    Poly::var(var)
}

/// Evaluates `f(d1, d2)` at `(s, t)`.
fn at(f: &Poly, s: &Poly, t: &Poly) -> Poly {
    f.subst_many(&[(Var::D1, s.clone()), (Var::D2, t.clone())])
}

/// A structure constant `P(d, x)` with `d` on slot `slot` and `x := z1`.
fn sc_at(p: &Poly, slot: Var) -> Poly {
    p.subst_many(&[(Var::D, v(slot)), (Var::X, v(Var::Z1))])
}

/// `[[r, r]]` modulo `∂^{⊗3}`.
pub fn cybe_residual(a: &ConformalAlgebra, r: &TensorElement2) -> Result<TensorElement3> {
    check_rank(a, r)?;
    if a.kind() != Kind::Lie {
        return Err(Error::KindMismatch("conformal CYBE needs a Lie algebra".into()));
    }
    let n = a.rank();
    let (d1, d2, d3, mu) = (v(Var::D1), v(Var::D2), v(Var::D3), v(Var::Z1));
    let mut out = TensorElement3::zero(n);
    let mut emit = |i, j, k, c: Poly, target: &Poly| {
        out.add_term(i, j, k, c.subst(&Var::Z1, target));
    };
    for (p, q, f) in r.entries() {
        for (p2, q2, f2) in r.entries() {
            // [a_i μ a_j] ⊗ b_i ⊗ b_j at μ = d2
            let scal = &at(f, &-&mu, &d2) * &at(f2, &(&mu + &d1), &d3);
            if !scal.is_zero() {
                for (k, c) in a.sc(p, p2).coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        emit(k, q, q2, &scal * &sc_at(c, Var::D1), &d2);
                    }
                }
            }
            // - a_i ⊗ [a_j μ b_i] ⊗ b_j at μ = d3
            let scal = &at(f, &d1, &(&mu + &d2)) * &at(f2, &-&mu, &d3);
            if !scal.is_zero() {
                for (k, c) in a.sc(p2, q).coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        emit(p, k, q2, -(&scal * &sc_at(c, Var::D2)), &d3);
                    }
                }
            }
            // - a_i ⊗ a_j ⊗ [b_j μ b_i] at μ = d2
            let scal = &at(f, &d1, &(&mu + &d3)) * &at(f2, &d2, &-&mu);
            if !scal.is_zero() {
                for (k, c) in a.sc(q2, q).coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        emit(p, p2, k, -(&scal * &sc_at(c, Var::D3)), &d2);
                    }
                }
            }
        }
    }
    Ok(normal_form3(&out))
}

/// `{{r, r}}` modulo `∂^{⊗3}` for `r = Σ r_i ⊗ l_i`.
pub fn s_residual(a: &ConformalAlgebra, r: &TensorElement2) -> Result<TensorElement3> {
    check_rank(a, r)?;
    if a.kind() != Kind::LeftSymmetric {
        return Err(Error::KindMismatch(
            "conformal S-equation needs a left-symmetric algebra".into(),
        ));
    }
    let n = a.rank();
    let lie = a.commutator_table();
    let (d1, d2, d3, mu) = (v(Var::D1), v(Var::D2), v(Var::D3), v(Var::Z1));
    let mut out = TensorElement3::zero(n);
    let mut emit = |i, j, k, c: Poly, target: &Poly| {
        out.add_term(i, j, k, c.subst(&Var::Z1, target));
    };
    for (p, q, f) in r.entries() {
        for (p2, q2, f2) in r.entries() {
            // (l_j μ r_i) ⊗ r_j ⊗ l_i at μ = d2
            let scal = &at(f, &(&mu + &d1), &d3) * &at(f2, &d2, &-&mu);
            if !scal.is_zero() {
                for (k, c) in a.sc(q2, p).coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        emit(k, p2, q, &scal * &sc_at(c, Var::D1), &d2);
                    }
                }
            }
            // - r_j ⊗ (l_j μ r_i) ⊗ l_i at μ = d1
            let scal = &at(f2, &d1, &-&mu) * &at(f, &(&mu + &d2), &d3);
            if !scal.is_zero() {
                for (k, c) in a.sc(q2, p).coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        emit(p2, k, q, -(&scal * &sc_at(c, Var::D2)), &d1);
                    }
                }
            }
            // - r_i ⊗ r_j ⊗ [l_i μ l_j] at μ = d1
            let scal = &at(f, &d1, &-&mu) * &at(f2, &d2, &(&mu + &d3));
            if !scal.is_zero() {
                for (k, c) in lie.get(q, q2).coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        emit(p, p2, k, -(&scal * &sc_at(c, Var::D3)), &d1);
                    }
                }
            }
        }
    }
    Ok(normal_form3(&out))
}

/// `T_λ(v_i) = Σ_j a_ij(λ, ∂) e_j` with entries in `x` and `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalLinearMap {
    source: usize,
    target: usize,
    matrix: Vec<Vec<Poly>>,
}

impl ConformalLinearMap {
    pub fn zero(source: usize, target: usize) -> Self {
        ConformalLinearMap {
            source,
            target,
            matrix: vec![vec![Poly::zero(); target]; source],
        }
    }

    pub fn from_matrix(matrix: Vec<Vec<Poly>>, target: usize) -> Result<Self> {
        if matrix.iter().any(|row| row.len() != target) {
            return Err(Error::Input("ragged conformal linear map matrix".into()));
        }
        Ok(ConformalLinearMap {
            source: matrix.len(),
            target,
            matrix,
        })
    }

    /// The λ-independent map `T + λ·M`'s shape: constant-in-λ entries of a
    /// module map.
    pub fn from_module_map(m: &ModuleMap) -> Self {
        ConformalLinearMap {
            source: m.source(),
            target: m.target(),
            matrix: m.matrix().to_vec(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.matrix[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.matrix[i][j] = p;
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    /// `T_λ(v_i)` as an element with coefficients in `x`, `d`.
    pub fn apply_basis(&self, i: usize) -> Element {
        Element::from_coeffs(self.matrix[i].clone())
    }

    /// `T_0 = T_λ|_{λ=0}`.
    pub fn t0(&self) -> ModuleMap {
        let m = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|p| p.subst(&Var::X, &Poly::zero())).collect())
            .collect();
        ModuleMap::new(m, self.target).expect("shape preserved")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Poly::is_zero)
    }
}

/// `T^r_λ(e_i^*) = Σ_k f_ik(-λ-∂, ∂) e_k`.
pub fn t_from_r(a: &ConformalAlgebra, r: &TensorElement2) -> Result<ConformalLinearMap> {
    check_rank(a, r)?;
    Ok(t_from_tensor(r))
}

pub(crate) fn t_from_tensor(r: &TensorElement2) -> ConformalLinearMap {
    let n = r.rank();
    let mut t = ConformalLinearMap::zero(n, n);
    let skew = -(Poly::x() + Poly::d());
    for (i, k, f) in r.entries() {
        t.matrix[i][k] += at(f, &skew, &Poly::d());
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RMode {
    Skew,
    Sym,
    Raw,
}

/// `r_T = Σ a_ij(-d1-d2, d1) e_j ⊗ v_i^*` in `R ⋉ V^{*c}` (basis: algebra
/// first, dual module second), combined with its flip according to `mode`.
pub fn r_from_t(t: &ConformalLinearMap, rep: &Representation, mode: RMode) -> Result<TensorElement2> {
    let (n, m) = (rep.algebra().rank(), rep.rank());
    if t.source() != m || t.target() != n {
        return Err(Error::RankMismatch {
            expected: m,
            got: t.source(),
        });
    }
    let report = rep.check_rep();
    if !report.ok() {
        return Err(Error::Precondition(crate::conformal::first_residual(&report)));
    }
    let lam = -(v(Var::D1) + v(Var::D2));
    let to = [(Var::X, lam), (Var::D, v(Var::D1))];
    let mut r = TensorElement2::zero(n + m);
    for i in 0..m {
        for j in 0..n {
            let c = t.get(i, j);
            if !c.is_zero() {
                r.add_term(j, n + i, c.subst_many(&to));
            }
        }
    }
    Ok(match mode {
        RMode::Raw => r,
        RMode::Skew => r.sub(&r.flip()),
        RMode::Sym => r.add(&r.flip()),
    })
}

/// `δ(a) = a_λ r |_{λ = -d1-d2}` with `a` acting on both factors.
pub fn cobracket_from_r(a: &ConformalAlgebra, r: &TensorElement2, elem: &Element) -> Result<TensorElement2> {
    check_rank(a, r)?;
    if elem.rank() != a.rank() {
        return Err(Error::RankMismatch {
            expected: a.rank(),
            got: elem.rank(),
        });
    }
    let (d1, d2) = (v(Var::D1), v(Var::D2));
    let lam = v(Var::Z1);
    let at_end = -(&d1 + &d2);
    let mut out = TensorElement2::zero(a.rank());
    for (p, q, f) in r.entries() {
        let left = a.bracket_at(elem, &a.element(p), &lam);
        let scal = at(f, &(&lam + &d1), &d2);
        for (k, c) in left.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let c = &scal * &c.subst(&Var::D, &d1);
                out.add_term(k, q, c.subst(&Var::Z1, &at_end));
            }
        }
        let right = a.bracket_at(elem, &a.element(q), &lam);
        let scal = at(f, &d1, &(&lam + &d2));
        for (k, c) in right.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let c = &scal * &c.subst(&Var::D, &d2);
                out.add_term(p, k, c.subst(&Var::Z1, &at_end));
            }
        }
    }
    Ok(out)
}

/// `f_λ(u) = Σ_k f_k(-λ) u_k(λ)` for `f` over a dual basis and `u` over the
/// matching basis.
pub fn pairing(f: &Element, u: &Element, lam: &Poly) -> Poly {
    let neg = -lam;
    f.coeffs
        .iter()
        .zip(&u.coeffs)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .map(|(a, b)| &a.subst(&Var::D, &neg) * &b.subst(&Var::D, lam))
        .fold(Poly::zero(), |acc, t| acc + t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{hv, hv_lsc1, hv_lsc2, vir};
    use crate::poly::VarTable;
    use crate::reps::{semidirect, standard_rep, StandardRep};
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        VarTable::permissive().parse(s).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let mut t = TensorElement3::zero(1);
        t.add_term(0, 0, 0, p("d1+d2+d3"));
        assert!(normal_form3(&t).is_zero());
        let mut t = TensorElement3::zero(1);
        t.add_term(0, 0, 0, p("d1-d2-3*d3"));
        let nf = normal_form3(&t);
        assert_eq!(nf.get(0, 0, 0), p("4*d1+2*d2"));
        assert!(nf.is_reduced());
        assert_eq!(normal_form3(&nf), nf);
    }

    #[test]
    fn parts_examples() {
        let r = TensorElement2::zero(2).with_term(0, 1, p("d1"));
        let parts = r.parts();
        assert_eq!(parts.r21.get(1, 0), p("d2"));
        assert!(!parts.is_skew && !parts.is_sym);
        let ll = TensorElement2::zero(1).with_term(0, 0, Poly::one());
        assert!(ll.parts().is_sym);
        let skew = TensorElement2::zero(2)
            .with_term(0, 1, Poly::one())
            .with_term(1, 0, -Poly::one());
        assert!(skew.parts().is_skew);
    }

    #[test]
    fn virasoro_cybe_example() {
        let r = TensorElement2::zero(1).with_term(0, 0, Poly::one());
        let res = cybe_residual(&vir(), &r).unwrap();
        assert_eq!(res.get(0, 0, 0), p("4*d1+2*d2"));
        assert!(cybe_residual(&vir(), &TensorElement2::zero(1)).unwrap().is_zero());
        assert!(matches!(
            cybe_residual(&vir(), &TensorElement2::zero(2)),
            Err(Error::RankMismatch { .. })
        ));
    }

    fn eqn4_tensor(n: usize) -> TensorElement2 {
        let mut r = TensorElement2::zero(2 * n);
        for i in 0..n {
            r.add_term(i, n + i, Poly::one());
            r.add_term(n + i, i, -Poly::one());
        }
        r
    }

    #[test]
    fn identity_operator_tensor_solves_cybe() {
        for a in [hv_lsc1(), hv_lsc2()] {
            let rep = standard_rep(&a, StandardRep::RegularLeft).unwrap();
            let big = semidirect(&rep.dual().unwrap()).unwrap();
            let r = eqn4_tensor(2);
            assert!(cybe_residual(&big, &r).unwrap().is_zero());
            // and it is what r_from_t produces for the identity map
            let id = ConformalLinearMap::from_module_map(&ModuleMap::identity(2));
            assert_eq!(r_from_t(&id, &rep, RMode::Skew).unwrap(), r);
        }
    }

    #[test]
    fn rank_one_s_equation() {
        let a = ConformalAlgebra::from_entries(Kind::LeftSymmetric, ["e"], &[], &[(0, 0, 0, Poly::one())])
            .unwrap();
        let r = TensorElement2::zero(1).with_term(0, 0, Poly::one());
        // first two terms cancel and the commutator vanishes
        assert!(s_residual(&a, &r).unwrap().is_zero());
        // e_λ e = ∂e with r = d1 e⊗e does not solve it
        let b = ConformalAlgebra::from_entries(Kind::LeftSymmetric, ["e"], &[], &[(0, 0, 0, p("x"))])
            .unwrap();
        let r = TensorElement2::zero(1).with_term(0, 0, p("d1"));
        assert!(!s_residual(&b, &r).unwrap().is_zero());
    }

    #[test]
    fn symmetric_dual_tensor_solves_s_equation() {
        for a in [hv_lsc1(), hv_lsc2()] {
            let l = standard_rep(&a, StandardRep::RegularLeft).unwrap();
            let module = Representation::left_symmetric_from_lie(&a, &l.dual().unwrap()).unwrap();
            let big = semidirect(&module).unwrap();
            let mut r = TensorElement2::zero(4);
            for i in 0..2 {
                r.add_term(i, 2 + i, Poly::one());
                r.add_term(2 + i, i, Poly::one());
            }
            assert!(s_residual(&big, &r).unwrap().is_zero());
        }
    }

    #[test]
    fn t_from_r_examples() {
        let r = TensorElement2::zero(1).with_term(0, 0, p("d2"));
        let t = t_from_r(&vir(), &r).unwrap();
        assert_eq!(t.get(0, 0), &p("d"));
        assert_eq!(t.t0().get(0, 0), &p("d"));
        assert!(t_from_r(&vir(), &TensorElement2::zero(1)).unwrap().is_zero());
        let diag = TensorElement2::zero(2)
            .with_term(0, 0, Poly::one())
            .with_term(1, 1, Poly::one());
        let t = t_from_r(&hv(), &diag).unwrap();
        assert_eq!(t.t0(), ModuleMap::identity(2));
    }

    #[test]
    fn r_from_t_examples() {
        let rep = standard_rep(&vir(), StandardRep::Adjoint).unwrap();
        let mut t = ConformalLinearMap::zero(1, 1);
        t.set(0, 0, p("x"));
        let r = r_from_t(&t, &rep, RMode::Raw).unwrap();
        assert_eq!(r.get(0, 1), p("-d1-d2"));
        let zero = ConformalLinearMap::zero(1, 1);
        for mode in [RMode::Raw, RMode::Skew, RMode::Sym] {
            assert!(r_from_t(&zero, &rep, mode).unwrap().is_zero());
        }
    }

    #[test]
    fn round_trip_through_flip() {
        // t_from_r of r_T^{21}, read on V ≅ V**, recovers T exactly
        let rep = standard_rep(&hv(), StandardRep::Adjoint).unwrap();
        let mut t = ConformalLinearMap::zero(2, 2);
        t.set(0, 1, p("x*d + 3"));
        t.set(1, 0, p("x^2 - d"));
        let r = r_from_t(&t, &rep, RMode::Raw).unwrap().flip();
        let back = t_from_tensor(&r);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(back.get(2 + i, j), t.get(i, j));
            }
        }
    }

    #[test]
    fn virasoro_cobracket() {
        let r = TensorElement2::zero(1).with_term(0, 0, Poly::one());
        let v = vir();
        let delta = cobracket_from_r(&v, &r, &v.element(0)).unwrap();
        let expected = &(&p("d1") + &p("2*(-d1-d2)")) + &(&p("d2") + &p("2*(-d1-d2)"));
        assert_eq!(delta.get(0, 0), expected);
        assert!(cobracket_from_r(&v, &TensorElement2::zero(1), &v.element(0)).unwrap().is_zero());
    }

    #[test]
    fn cobracket_ignores_lambda_multiples() {
        let a = hv_lsc1();
        let rep = standard_rep(&a, StandardRep::RegularLeft).unwrap();
        let big = semidirect(&rep.dual().unwrap()).unwrap();
        let mut t = ConformalLinearMap::from_module_map(&ModuleMap::identity(2));
        let r1 = r_from_t(&t, &rep, RMode::Skew).unwrap();
        t.set(0, 1, p("x*(d+2)"));
        t.set(1, 1, p("1 + 5*x"));
        let r2 = r_from_t(&t, &rep, RMode::Skew).unwrap();
        assert_ne!(r1, r2);
        for i in 0..4 {
            let e = big.element(i);
            assert_eq!(
                cobracket_from_r(&big, &r1, &e).unwrap(),
                cobracket_from_r(&big, &r2, &e).unwrap()
            );
        }
    }

    #[test]
    fn pairing_rule() {
        // (∂ v*)_λ(∂ v) = (-λ) λ
        let f = Element::from_coeffs(vec![p("d")]);
        assert_eq!(pairing(&f, &f, &p("x")), p("-x^2"));
    }

    fn arb_poly3() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((-3i64..=3, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
            terms.into_iter().fold(Poly::zero(), |acc, (c, a, b, e)| {
                acc + Poly::int(c)
                    * Poly::var(Var::D1).pow(a)
                    * Poly::var(Var::D2).pow(b)
                    * Poly::var(Var::D3).pow(e)
            })
        })
    }

    proptest! {
        #[test]
        fn normal_form_idempotent_and_kills_ideal(c in arb_poly3(), q in arb_poly3()) {
            let mut t = TensorElement3::zero(1);
            t.add_term(0, 0, 0, c.clone());
            let nf = normal_form3(&t);
            prop_assert_eq!(normal_form3(&nf), nf.clone());
            prop_assert!(!nf.get(0, 0, 0).contains(&Var::D3));
            let gen = Poly::var(Var::D1) + Poly::var(Var::D2) + Poly::var(Var::D3);
            let mut m = TensorElement3::zero(1);
            m.add_term(0, 0, 0, &c + &(&q * &gen));
            prop_assert_eq!(normal_form3(&m), nf);
        }

        #[test]
        fn parts_decompose(c1 in arb_poly3(), c2 in arb_poly3()) {
            let z = [(Var::D3, Poly::zero())];
            let r = TensorElement2::zero(2)
                .with_term(0, 1, c1.subst_many(&z))
                .with_term(1, 1, c2.subst_many(&z));
            let parts = r.parts();
            prop_assert!(parts.skew.parts().is_skew);
            prop_assert!(parts.sym.parts().is_sym);
            prop_assert_eq!(parts.skew.add(&parts.sym), r.add(&r));
        }
    }
}
