//! Exact sparse multivariate polynomials over the rationals.
//!
//! Every variable lives in one canonical universe ([`Var`]): slot derivations
//! `d, d1, d2, d3`, spectral variables `x, y, z1, z2, z3` and named free
//! parameters. The derived ordering on [`Var`] is the fixed session order, so
//! two polynomials are equal exactly when their normal forms are equal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Build a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Build the rational `n / m`.
pub fn ratio(n: i64, m: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(m))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// `∂` acting on a single conformal-algebra element.
    D,
    /// `∂ ⊗ 1 ⊗ 1`
    D1,
    /// `1 ⊗ ∂ ⊗ 1`
    D2,
    /// `1 ⊗ 1 ⊗ ∂`
    D3,
    /// `λ`
    X,
    /// `μ`
    Y,
    Z1,
    Z2,
    Z3,
    Param(Arc<str>),
}

impl Var {
    pub fn param(name: &str) -> Var {
        Var::Param(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        match self {
            Var::D => "d",
            Var::D1 => "d1",
            Var::D2 => "d2",
            Var::D3 => "d3",
            Var::X => "x",
            Var::Y => "y",
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::Z3 => "z3",
            Var::Param(p) => p,
        }
    }

    /// Resolves a reserved (non-parameter) name.
    pub fn reserved(name: &str) -> Option<Var> {
        Some(match name {
            "d" => Var::D,
            "d1" => Var::D1,
            "d2" => Var::D2,
            "d3" => Var::D3,
            "x" => Var::X,
            "y" => Var::Y,
            "z1" => Var::Z1,
            "z2" => Var::Z2,
            "z3" => Var::Z3,
            _ => return None,
        })
    }

    pub fn is_param(&self) -> bool {
        matches!(self, Var::Param(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A power product, stored as `(variable, exponent)` pairs sorted by variable
/// with strictly positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(smallvec::smallvec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Var, u32)> {
        self.0.iter().map(|(v, e)| (v, *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Monomial(out)
    }

    /// Splits into the part over `vars` and the remainder.
    fn split(&self, keep: impl Fn(&Var) -> bool) -> (Monomial, Monomial) {
        let mut inside = SmallVec::new();
        let mut outside = SmallVec::new();
        for (v, e) in self.0.iter() {
            if keep(v) {
                inside.push((v.clone(), *e));
            } else {
                outside.push((v.clone(), *e));
            }
        }
        (Monomial(inside), Monomial(outside))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with rational coefficients; the zero polynomial has no
/// terms and no stored coefficient is ever zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn param(name: &str) -> Self {
        Poly::var(Var::param(name))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn d() -> Self {
        Poly::var(Var::D)
    }

    pub fn x() -> Self {
        Poly::var(Var::X)
    }

    pub fn y() -> Self {
        Poly::var(Var::Y)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value when the polynomial is a constant (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Substitutes `q` for `v`.
    pub fn subst(&self, v: &Var, q: &Poly) -> Poly {
        self.subst_many(&[(v.clone(), q.clone())])
    }

    /// Simultaneous substitution: every listed variable is replaced by its
    /// polynomial in one pass, so replacements are never re-substituted.
    pub fn subst_many(&self, map: &[(Var, Poly)]) -> Poly {
        if map.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one()]; map.len()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (hit, rest) = m.split(|v| map.iter().any(|(w, _)| w == v));
            let mut term = Poly::monomial(rest, c.clone());
            for (v, e) in hit.factors() {
                let idx = map.iter().position(|(w, _)| w == v).unwrap();
                let cache = &mut powers[idx];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &map[idx].1;
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            out += term;
        }
        out
    }

    /// Renames variables (a substitution by single variables).
    pub fn rename(&self, map: &[(Var, Var)]) -> Poly {
        let subs: Vec<(Var, Poly)> = map
            .iter()
            .map(|(a, b)| (a.clone(), Poly::var(b.clone())))
            .collect();
        self.subst_many(&subs)
    }

    /// Groups terms by their monomial in `vars`; the values are polynomials in
    /// the remaining variables.
    pub fn coefficients_in(&self, vars: &[Var]) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, rest) = m.split(|v| vars.contains(v));
            out.entry(inside).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Coefficient of `v^k`, as a polynomial in the other variables.
    pub fn coeff_of(&self, v: &Var, k: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                let (_, rest) = m.split(|w| w == v);
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Evaluates by substituting rational values for the given variables.
    pub fn eval(&self, values: &[(Var, Rational)]) -> Poly {
        let subs: Vec<(Var, Poly)> = values
            .iter()
            .map(|(v, c)| (v.clone(), Poly::constant(c.clone())))
            .collect();
        self.subst_many(&subs)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::int(n)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign<Poly> for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Renders in the input grammar, highest total degree first.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// The declared variable names of a session: the fixed slot and spectral
/// names plus user-declared free parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarTable {
    params: Vec<String>,
    permissive: bool,
}

pub const SLOT_NAMES: [&str; 4] = ["d", "d1", "d2", "d3"];
pub const LAMBDA_NAMES: [&str; 5] = ["x", "y", "z1", "z2", "z3"];

impl VarTable {
    pub fn new<S: AsRef<str>>(params: &[S]) -> Result<Self> {
        let mut table = VarTable::default();
        for p in params {
            table.declare(p.as_ref())?;
        }
        Ok(table)
    }

    /// A table that accepts any identifier as a parameter.
    pub fn permissive() -> Self {
        VarTable {
            params: Vec::new(),
            permissive: true,
        }
    }

    pub fn declare(&mut self, name: &str) -> Result<()> {
        if !is_identifier(name) {
            return Err(Error::Parse(format!("invalid parameter name `{name}`")));
        }
        if Var::reserved(name).is_some() {
            return Err(Error::Parse(format!(
                "parameter name `{name}` clashes with a reserved variable"
            )));
        }
        if self.params.iter().any(|p| p == name) {
            return Err(Error::Parse(format!("parameter `{name}` declared twice")));
        }
        self.params.push(name.to_string());
        Ok(())
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn resolve(&self, name: &str) -> Result<Var> {
        if let Some(v) = Var::reserved(name) {
            return Ok(v);
        }
        if self.permissive || self.params.iter().any(|p| p == name) {
            Ok(Var::param(name))
        } else {
            Err(Error::UnknownVariable(name.to_string()))
        }
    }

    /// Fails when `p` mentions a parameter this table does not declare.
    pub fn check(&self, p: &Poly) -> Result<()> {
        if self.permissive {
            return Ok(());
        }
        for v in p.vars() {
            if let Var::Param(name) = &v {
                if !self.params.iter().any(|q| q.as_str() == &**name) {
                    return Err(Error::VarTableMismatch(name.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        crate::parse::parse_poly(s, self)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Arithmetic with a table check on both operands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

pub fn poly_arith(table: &VarTable, op: ArithOp, p: &Poly, q: &Poly) -> Result<Poly> {
    table.check(p)?;
    table.check(q)?;
    Ok(match op {
        ArithOp::Add => p + q,
        ArithOp::Mul => p * q,
        ArithOp::Neg => -p,
    })
}

/// Substitution with a table check: `var` must be known to the table.
pub fn poly_subst(table: &VarTable, p: &Poly, var: &str, q: &Poly) -> Result<Poly> {
    let v = table.resolve(var)?;
    table.check(p)?;
    table.check(q)?;
    Ok(p.subst(&v, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        VarTable::permissive().parse(s).unwrap()
    }

    #[test]
    fn additive_inverse_vanishes() {
        assert!((p("d+2*x") + p("-d-2*x")).is_zero());
    }

    #[test]
    fn square_expands() {
        assert_eq!(p("d+2*x") * p("d+2*x"), p("d^2+4*x*d+4*x^2"));
    }

    #[test]
    fn parameter_distributes() {
        // b*(d+x) by hand: b*d + b*x
        let mut expected = Poly::zero();
        expected.add_term(Monomial::var(Var::D, 1).mul(&Monomial::var(Var::param("b"), 1)), rat(1));
        expected.add_term(Monomial::var(Var::X, 1).mul(&Monomial::var(Var::param("b"), 1)), rat(1));
        assert_eq!(p("b") * p("d+x"), expected);
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(p("d+2*x").subst(&Var::X, &p("-x-d")), p("-d-2*x"));
        assert_eq!(p("d+2*x").subst(&Var::X, &Poly::zero()), p("d"));
        assert_eq!(p("d1-d2-3*d3").subst(&Var::D3, &p("-d1-d2")), p("4*d1+2*d2"));
    }

    #[test]
    fn simultaneous_substitution_does_not_chain() {
        // x -> y, y -> x swaps rather than collapsing
        let q = p("x+2*y").subst_many(&[(Var::X, p("y")), (Var::Y, p("x"))]);
        assert_eq!(q, p("y+2*x"));
    }

    #[test]
    fn table_mismatch_is_reported() {
        let t = VarTable::new(&["b"]).unwrap();
        let g = p("g0*d");
        assert!(matches!(
            poly_arith(&t, ArithOp::Add, &p("b"), &g),
            Err(Error::VarTableMismatch(_))
        ));
        assert!(matches!(
            poly_subst(&t, &p("b"), "q", &p("1")),
            Err(Error::UnknownVariable(_))
        ));
        assert_eq!(poly_arith(&t, ArithOp::Mul, &p("b"), &p("d")).unwrap(), p("b*d"));
    }

    #[test]
    fn display_round_trips_through_parser() {
        for s in ["0", "-1/2*b*d + 3", "d^2*x - 7*y + z1^3", "-d1 - d2"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q, "{s}");
        }
    }

    #[test]
    fn coefficient_extraction() {
        let q = p("3*b*d^2*x + b^2*x - d + 5");
        let cs = q.coefficients_in(&[Var::D, Var::X]);
        assert_eq!(cs[&Monomial::var(Var::D, 2).mul(&Monomial::var(Var::X, 1))], p("3*b"));
        assert_eq!(cs[&Monomial::var(Var::X, 1)], p("b^2"));
        assert_eq!(cs[&Monomial::one()], p("5"));
        assert_eq!(q.coeff_of(&Var::X, 1), p("3*b*d^2 + b^2"));
    }

    const VARS: [&str; 3] = ["d", "x", "b"];

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(((-5i64..=5), (0u32..=2), (0u32..=1), (0u32..=1)), 0..5).prop_map(
            |terms| {
                let mut out = Poly::zero();
                for (c, a, b, e) in terms {
                    let m = Monomial::var(Var::D, a)
                        .mul(&Monomial::var(Var::X, b))
                        .mul(&Monomial::var(Var::param(VARS[2]), e));
                    out.add_term(m, rat(c));
                }
                out
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn substitution_composes(a in small_poly(), q in small_poly(), r in small_poly()) {
            // subst(subst(p, x, q), b, r) == subst(subst(p, b, r), x, subst(q, b, r))
            // requires x not in r
            let r = r.subst(&Var::X, &Poly::int(1));
            let b = Var::param("b");
            let lhs = a.subst(&Var::X, &q).subst(&b, &r);
            let rhs = a.subst(&b, &r).subst(&Var::X, &q.subst(&b, &r));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn identity_substitution(a in small_poly()) {
            prop_assert_eq!(a.subst(&Var::D, &Poly::d()), a);
        }
    }
}
