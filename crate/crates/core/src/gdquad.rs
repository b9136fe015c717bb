//! Gel'fand-Dorfman bialgebras and quadratic Lie conformal algebras.
//!
//! A quadratic algebra has brackets `[a_λ b] = ∂(b∘a) + λ(a∗b) + [b,a]` on a
//! basis, with `a∗b = a∘b + b∘a`.

use num_traits::{One, Zero};

use crate::conformal::{ConformalAlgebra, Kind, Table};
use crate::error::{Error, Result};
use crate::operators::{check_rota_baxter, extend_vars, ModuleMap};
use crate::poly::{Poly, Rational, Var, VarTable};
use crate::report::{Check, Report};

/// Constant structure tensors: `circ[i][j][k]` is the coefficient of `e_k`
/// in `e_i ∘ e_j`, likewise `lie` for `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GDBialgebra {
    pub basis: Vec<String>,
    pub circ: Vec<Vec<Vec<Poly>>>,
    pub lie: Vec<Vec<Vec<Poly>>>,
}

type Vector = Vec<Poly>;

fn zero_tensor(n: usize) -> Vec<Vec<Vec<Poly>>> {
    vec![vec![vec![Poly::zero(); n]; n]; n]
}

fn unit(n: usize, i: usize) -> Vector {
    let mut v = vec![Poly::zero(); n];
    v[i] = Poly::one();
    v
}

fn product(t: &[Vec<Vec<Poly>>], a: &[Poly], b: &[Poly]) -> Vector {
    let n = a.len();
    let mut out = vec![Poly::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let s = ai * bj;
            for (k, c) in t[i][j].iter().enumerate() {
                if !c.is_zero() {
                    out[k] += &s * c;
                }
            }
        }
    }
    out
}

fn add(a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Poly], b: &[Poly]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(a: &[Poly], s: &Poly) -> Vector {
    a.iter().map(|x| x * s).collect()
}

fn push(check: &mut Check, label: String, v: &[Poly], names: &[String]) {
    for (k, c) in v.iter().enumerate() {
        check.push(format!("{label} -> {}", names[k]), c.clone());
    }
}

impl GDBialgebra {
    pub fn new(basis: Vec<String>, circ: Vec<Vec<Vec<Poly>>>, lie: Vec<Vec<Vec<Poly>>>) -> Result<Self> {
        let n = basis.len();
        for t in [&circ, &lie] {
            let shaped = t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|c| c.len() == n));
            if !shaped {
                return Err(Error::RankMismatch {
                    expected: n,
                    got: t.len(),
                });
            }
            for p in t.iter().flatten().flatten() {
                if p.vars().iter().any(|v| !v.is_param()) {
                    return Err(Error::Input(format!("structure constant `{p}` is not a constant")));
                }
            }
        }
        Ok(GDBialgebra { basis, circ, lie })
    }

    /// All products zero.
    pub fn zero<S: Into<String>>(basis: impl IntoIterator<Item = S>) -> Self {
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        let n = basis.len();
        GDBialgebra {
            basis,
            circ: zero_tensor(n),
            lie: zero_tensor(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn circ_product(&self, a: &[Poly], b: &[Poly]) -> Vector {
        product(&self.circ, a, b)
    }

    pub fn lie_product(&self, a: &[Poly], b: &[Poly]) -> Vector {
        product(&self.lie, a, b)
    }

    /// `a∗b = a∘b + b∘a`.
    pub fn star(&self, a: &[Poly], b: &[Poly]) -> Vector {
        add(&self.circ_product(a, b), &self.circ_product(b, a))
    }

    fn label(&self, idx: &[usize]) -> String {
        let names: Vec<&str> = idx.iter().map(|&i| self.basis[i].as_str()).collect();
        format!("({})", names.join(","))
    }
}

/// Novikov, Lie and compatibility identities on all basis triples.
pub fn check_gd(v: &GDBialgebra) -> Report {
    let n = v.dim();
    let e = |i| unit(n, i);
    let o = |a: &[Poly], b: &[Poly]| v.circ_product(a, b);
    let br = |a: &[Poly], b: &[Poly]| v.lie_product(a, b);
    let mut left_sym = Check::new("novikov left-symmetry");
    let mut right_comm = Check::new("novikov right-commutativity");
    let mut antisym = Check::new("lie antisymmetry");
    let mut jacobi = Check::new("lie jacobi");
    let mut compat = Check::new("compatibility");
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (e(i), e(j));
            push(&mut antisym, v.label(&[i, j]), &add(&br(&a, &b), &br(&b, &a)), &v.basis);
            for k in 0..n {
                let c = e(k);
                let label = v.label(&[i, j, k]);
                let ls = sub(
                    &add(&sub(&o(&o(&a, &b), &c), &o(&a, &o(&b, &c))), &o(&b, &o(&a, &c))),
                    &o(&o(&b, &a), &c),
                );
                push(&mut left_sym, label.clone(), &ls, &v.basis);
                let rc = sub(&o(&o(&a, &b), &c), &o(&o(&a, &c), &b));
                push(&mut right_comm, label.clone(), &rc, &v.basis);
                let jac = add(&add(&br(&a, &br(&b, &c)), &br(&b, &br(&c, &a))), &br(&c, &br(&a, &b)));
                push(&mut jacobi, label.clone(), &jac, &v.basis);
                let xx = sub(
                    &sub(
                        &sub(&add(&br(&o(&a, &b), &c), &o(&br(&a, &b), &c)), &o(&a, &br(&b, &c))),
                        &br(&o(&a, &c), &b),
                    ),
                    &o(&br(&a, &c), &b),
                );
                push(&mut compat, label, &xx, &v.basis);
            }
        }
    }
    let mut report = Report::new();
    for c in [left_sym, right_comm, antisym, jacobi, compat] {
        report.push(c);
    }
    report
}

/// `P_ijk = d·(e_j∘e_i)_k + x·(e_i∗e_j)_k + [e_j,e_i]_k`.
pub fn quadratic_from_gd(v: &GDBialgebra) -> ConformalAlgebra {
    let n = v.dim();
    let (d, x) = (Poly::d(), Poly::x());
    let mut table = Table::zero(n, n, n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let star = &v.circ[i][j][k] + &v.circ[j][i][k];
                let p = &(&d * &v.circ[j][i][k]) + &(&(&x * &star) + &v.lie[j][i][k]);
                table.set_coeff(i, j, k, p);
            }
        }
    }
    let polys: Vec<&Poly> = v.circ.iter().chain(&v.lie).flatten().flatten().collect();
    let vars = extend_vars(&VarTable::default(), polys);
    ConformalAlgebra::new(Kind::Lie, v.basis.clone(), vars, table).expect("quadratic table")
}

/// Reads `∘` off the `∂`-part and `[,]` off the constant part; the `λ`-part
/// must equal `∘ + ∘ᵀ`.
pub fn gd_from_quadratic(r: &ConformalAlgebra) -> Result<GDBialgebra> {
    if r.kind() != Kind::Lie {
        return Err(Error::KindMismatch("quadratic algebras are Lie algebras".into()));
    }
    let n = r.rank();
    let mut circ = zero_tensor(n);
    let mut lie = zero_tensor(n);
    let mut lam = zero_tensor(n);
    let dx = [Var::D, Var::X];
    for i in 0..n {
        for j in 0..n {
            for (k, p) in r.sc(i, j).coeffs.iter().enumerate() {
                for (m, c) in p.coefficients_in(&dx) {
                    let slot = match (m.exponent(&Var::D), m.exponent(&Var::X), m.degree()) {
                        (0, 0, 0) => &mut lie[j][i][k],
                        (1, 0, 1) => &mut circ[j][i][k],
                        (0, 1, 1) => &mut lam[i][j][k],
                        _ => {
                            return Err(Error::NotQuadratic(format!(
                                "[{}_λ {}] has the term {m}",
                                r.basis()[i],
                                r.basis()[j]
                            )))
                        }
                    };
                    *slot = c;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if lam[i][j][k] != &circ[i][j][k] + &circ[j][i][k] {
                    return Err(Error::NotQuadratic(format!(
                        "λ-part of [{}_λ {}] is not the symmetrized ∘",
                        r.basis()[i],
                        r.basis()[j]
                    )));
                }
            }
        }
    }
    GDBialgebra::new(r.basis().to_vec(), circ, lie)
}

/// Either direction of the correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quadratic {
    Gd(GDBialgebra),
    Conformal(ConformalAlgebra),
}

pub fn convert(q: &Quadratic) -> Result<Quadratic> {
    match q {
        Quadratic::Gd(v) => {
            let report = check_gd(v);
            if !report.ok() {
                return Err(Error::Precondition(crate::conformal::first_residual(&report)));
            }
            Ok(Quadratic::Conformal(quadratic_from_gd(v)))
        }
        Quadratic::Conformal(r) => Ok(Quadratic::Gd(gd_from_quadratic(r)?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Probe {
    NoZeroDivisors,
    Witness(Vec<Rational>, Vec<Rational>),
    Unknown,
}

fn constant_tensor(v: &GDBialgebra) -> Option<Vec<Vec<Vec<Rational>>>> {
    let n = v.dim();
    let mut out = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = &v.circ[i][j][k] + &v.circ[j][i][k];
                out[i][j][k] = s.constant_value()?;
            }
        }
    }
    Some(out)
}

/// A nonzero vector in the kernel of `m` (columns are unknowns), if any.
fn kernel_vector(mut m: Vec<Vec<Rational>>, cols: usize) -> Option<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / m[row][col].clone();
        for c in 0..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..cols {
                    let t = &f * &m[row][c];
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); cols];
    v[free] = Rational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free].clone();
    }
    Some(v)
}

/// Scales a rational vector to coprime integers.
fn integral(v: Vec<Rational>) -> Vec<Rational> {
    use num_integer::Integer;
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<_> = v.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = scaled.iter().fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
    let g = if g.is_zero() { num_bigint::BigInt::one() } else { g };
    scaled.into_iter().map(|c| Rational::from_integer(c / &g)).collect()
}

/// Looks for `a∗b = 0` with `a, b ≠ 0`. Exact in dimension one; above that
/// it tries unit vectors and then integer vectors `a` with entries in
/// `[-3, 3]`, solving for `b` exactly.
pub fn zero_divisor_probe(v: &GDBialgebra) -> Probe {
    let n = v.dim();
    let Some(star) = constant_tensor(v) else {
        return Probe::Unknown;
    };
    if n == 1 {
        return if star[0][0][0].is_zero() {
            Probe::Witness(vec![Rational::one()], vec![Rational::one()])
        } else {
            Probe::NoZeroDivisors
        };
    }
    let try_a = |a: &[Rational]| -> Option<Vec<Rational>> {
        // column j of the matrix is a∗e_j
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    m[k][j] += ai * &star[i][j][k];
                }
            }
        }
        kernel_vector(m, n).map(integral)
    };
    for i in 0..n {
        let mut a = vec![Rational::zero(); n];
        a[i] = Rational::one();
        if let Some(b) = try_a(&a) {
            return Probe::Witness(a, b);
        }
    }
    if n <= 4 {
        let mut digits = vec![-3i64; n];
        loop {
            if digits.iter().any(|&c| c != 0) {
                let a: Vec<Rational> = digits.iter().map(|&c| Rational::from_integer(c.into())).collect();
                if let Some(b) = try_a(&a) {
                    return Probe::Witness(a, b);
                }
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    return Probe::Unknown;
                }
                digits[pos] += 1;
                if digits[pos] <= 3 {
                    break;
                }
                digits[pos] = -3;
                pos += 1;
            }
        }
    }
    Probe::Unknown
}

/// Weight-`α` Rota-Baxter identity for `∘` and `[,]`, plus the same identity
/// for `T` lifted to the quadratic conformal algebra.
pub fn rb_gd_check(v: &GDBialgebra, t: &ModuleMap, weight: &Poly) -> Result<Report> {
    let n = v.dim();
    if t.source() != n || t.target() != n {
        return Err(Error::RankMismatch {
            expected: n,
            got: t.source(),
        });
    }
    if t.polys().any(|p| p.contains(&Var::D)) {
        return Err(Error::Input("operator on a GD bialgebra must be constant".into()));
    }
    let gd = check_gd(v);
    if !gd.ok() {
        return Err(Error::Precondition(crate::conformal::first_residual(&gd)));
    }
    let mut report = Report::new();
    for (name, tensor) in [("Rota-Baxter (circ)", &v.circ), ("Rota-Baxter (lie)", &v.lie)] {
        let mut check = Check::new(name);
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (unit(n, i), unit(n, j));
                let (ta, tb) = (t.image(i).coeffs, t.image(j).coeffs);
                let inner = add(
                    &add(&product(tensor, &ta, &b), &product(tensor, &a, &tb)),
                    &scale(&product(tensor, &a, &b), weight),
                );
                let res = sub(&product(tensor, &ta, &tb), &t.apply(&crate::conformal::Element::from_coeffs(inner)).coeffs);
                push(&mut check, v.label(&[i, j]), &res, &v.basis);
            }
        }
        report.push(check);
    }
    let lifted = check_rota_baxter(&quadratic_from_gd(v), t, weight)?;
    for mut c in lifted.checks {
        c.name = format!("lifted {}", c.name);
        report.push(c);
    }
    Ok(report)
}
