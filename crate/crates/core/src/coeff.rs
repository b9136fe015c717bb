//! n-th products and truncated windows of the coefficient algebra.
//!
//! Window elements are stored with raw indices, where
//! `a_m · b_n = Σ_j C(m, j) (a_(j) b)_{m+n-j}` and `(∂u)_k = -k u_{k-1}`.
//! A per-generator shift `s_v` relabels `v_m` (displayed) as raw `v_{m+s_v}`.

use std::collections::BTreeMap;

use crate::conformal::{first_residual, ConformalAlgebra, Element, Kind};
use crate::error::{Error, Result};
use crate::operators::ModuleMap;
use crate::poly::{Poly, Rational, Var};
use crate::report::{Check, Report};

/// `a_(n) b` for every basis pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NthProductTable {
    rank: usize,
    products: Vec<Vec<Element>>,
}

impl NthProductTable {
    /// The list `a_(0)b, a_(1)b, …` up to the last nonzero product.
    pub fn get(&self, i: usize, j: usize) -> &[Element] {
        &self.products[i * self.rank + j]
    }

    /// `Σ λⁿ/n! a_(n)b` as a λ-bracket.
    pub fn reconstruct(&self, i: usize, j: usize) -> Element {
        let mut out = Element::zero(self.rank);
        let mut fact = Rational::from_integer(1.into());
        for (n, e) in self.get(i, j).iter().enumerate() {
            if n > 0 {
                fact *= Rational::from_integer((n as i64).into());
            }
            let w = Poly::x().pow(n as u32).scale(&(Rational::from_integer(1.into()) / fact.clone()));
            out.add_assign(&e.scale(&w));
        }
        out
    }
}

pub fn nth_products(a: &ConformalAlgebra) -> Result<NthProductTable> {
    let report = a.check_axioms();
    if !report.ok() {
        return Err(Error::Precondition(first_residual(&report)));
    }
    let n = a.rank();
    let mut products = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let p = a.sc(i, j);
            let top = p.coeffs.iter().map(|c| c.degree_in(&Var::X)).max().unwrap_or(0);
            let mut list = Vec::new();
            let mut fact = Rational::from_integer(1.into());
            for k in 0..=top {
                if k > 0 {
                    fact *= Rational::from_integer((k as i64).into());
                }
                list.push(p.map(|c| c.coeff_of(&Var::X, k).scale(&fact)));
            }
            while list.last().is_some_and(Element::is_zero) {
                list.pop();
            }
            products.push(list);
        }
    }
    Ok(NthProductTable { rank: n, products })
}

/// Rational combination of symbols `(basis index, raw index)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WindowElement {
    terms: BTreeMap<(usize, i64), Poly>,
}

impl WindowElement {
    pub fn zero() -> Self {
        WindowElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, basis: usize, raw: i64, c: Poly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((basis, raw)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(basis, raw));
        }
    }

    /// `(basis, raw index, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64, &Poly)> {
        self.terms.iter().map(|(&(b, m), c)| (b, m, c))
    }

    pub fn add(&self, other: &WindowElement) -> WindowElement {
        let mut out = self.clone();
        for (b, m, c) in other.terms() {
            out.add_term(b, m, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Poly) -> WindowElement {
        let mut out = WindowElement::zero();
        for (b, m, c) in self.terms() {
            out.add_term(b, m, c * s);
        }
        out
    }

    pub fn sub(&self, other: &WindowElement) -> WindowElement {
        self.add(&other.scale(&Poly::int(-1)))
    }
}

/// Result of a product that may leave the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Windowed {
    In(WindowElement),
    OutOfWindow,
}

impl Windowed {
    pub fn value(self) -> Option<WindowElement> {
        match self {
            Windowed::In(e) => Some(e),
            Windowed::OutOfWindow => None,
        }
    }
}

/// `∏_{i<s} (n - i)`
fn falling(n: i64, s: u32) -> Rational {
    (0..s as i64).fold(Rational::from_integer(1.into()), |acc, i| {
        acc * Rational::from_integer((n - i).into())
    })
}

/// Generalized binomial `C(m, j)` for any integer `m`.
fn binomial(m: i64, j: u32) -> Rational {
    let fact = (1..=j as i64).fold(Rational::from_integer(1.into()), |acc, i| {
        acc * Rational::from_integer(i.into())
    });
    falling(m, j) / fact
}

/// `(p(∂) e)_k` expanded with `(∂^s e)_k = (-1)^s k(k-1)…(k-s+1) e_{k-s}`.
fn reduce(e: &Element, raw: i64, scalar: &Poly, out: &mut WindowElement) {
    for (b, c) in e.coeffs.iter().enumerate() {
        for (m, coeff) in c.coefficients_in(&[Var::D]) {
            let s = m.exponent(&Var::D);
            let mut f = falling(raw, s);
            if s % 2 == 1 {
                f = -f;
            }
            if f == Rational::from_integer(0.into()) {
                continue;
            }
            out.add_term(b, raw - s as i64, &coeff.scale(&f) * scalar);
        }
    }
}

/// A window `[-N, N]` of displayed indices over a conformal algebra.
#[derive(Clone, Debug)]
pub struct CoeffWindow {
    algebra: ConformalAlgebra,
    table: NthProductTable,
    size: i64,
    shifts: Vec<i64>,
}

impl CoeffWindow {
    pub fn new(algebra: &ConformalAlgebra, size: i64) -> Result<Self> {
        let shifts = vec![0; algebra.rank()];
        Self::with_shifts(algebra, size, shifts)
    }

    pub fn with_shifts(algebra: &ConformalAlgebra, size: i64, shifts: Vec<i64>) -> Result<Self> {
        if size < 0 {
            return Err(Error::Input("window size must be non-negative".into()));
        }
        if shifts.len() != algebra.rank() {
            return Err(Error::RankMismatch {
                expected: algebra.rank(),
                got: shifts.len(),
            });
        }
        Ok(CoeffWindow {
            table: nth_products(algebra)?,
            algebra: algebra.clone(),
            size,
            shifts,
        })
    }

    pub fn algebra(&self) -> &ConformalAlgebra {
        &self.algebra
    }

    pub fn size(&self) -> i64 {
        self.size
    }

    /// Displayed index of a raw symbol.
    pub fn display_index(&self, basis: usize, raw: i64) -> i64 {
        raw - self.shifts[basis]
    }

    /// The symbol `v_m` with displayed index `m`.
    pub fn symbol(&self, basis: usize, m: i64) -> WindowElement {
        let mut e = WindowElement::zero();
        e.add_term(basis, m + self.shifts[basis], Poly::one());
        e
    }

    pub fn contains(&self, e: &WindowElement) -> bool {
        e.terms()
            .all(|(b, raw, _)| self.display_index(b, raw).abs() <= self.size)
    }

    fn symbols(&self) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for b in 0..self.algebra.rank() {
            for m in -self.size..=self.size {
                out.push((b, m + self.shifts[b]));
            }
        }
        out
    }

    fn checked(&self, e: WindowElement) -> Windowed {
        if self.contains(&e) {
            Windowed::In(e)
        } else {
            Windowed::OutOfWindow
        }
    }

    fn symbol_product(&self, (i, m): (usize, i64), (j, n): (usize, i64), scalar: &Poly, out: &mut WindowElement) -> bool {
        let mut inside = true;
        for (t, e) in self.table.get(i, j).iter().enumerate() {
            let c = binomial(m, t as u32);
            if c == Rational::from_integer(0.into()) || e.is_zero() {
                continue;
            }
            let mut part = WindowElement::zero();
            reduce(e, m + n - t as i64, &scalar.scale(&c), &mut part);
            inside &= self.contains(&part);
            *out = out.add(&part);
        }
        inside
    }

    /// Bilinear product; the flag is false when an intermediate term leaves the window.
    fn raw_product(&self, a: &WindowElement, b: &WindowElement) -> (WindowElement, bool) {
        let mut out = WindowElement::zero();
        let mut inside = true;
        for (i, m, ca) in a.terms() {
            for (j, n, cb) in b.terms() {
                inside &= self.symbol_product((i, m), (j, n), &(ca * cb), &mut out);
            }
        }
        (out, inside)
    }

    /// `𝒯(a_n) = T(a)_n` in raw indices.
    fn raw_lift(&self, t: &ModuleMap, a: &WindowElement) -> WindowElement {
        let mut out = WindowElement::zero();
        for (i, m, c) in a.terms() {
            reduce(&t.image(i), m, c, &mut out);
        }
        out
    }

    /// Pretty form using displayed indices.
    pub fn render(&self, e: &WindowElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.terms()
            .map(|(b, raw, c)| {
                let name = format!("{}_{}", self.algebra.basis()[b], self.display_index(b, raw));
                if c.is_one() {
                    name
                } else {
                    format!("({c})*{name}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `a · b` in the coefficient algebra, or `OutOfWindow`.
pub fn coeff_bracket(w: &CoeffWindow, a: &WindowElement, b: &WindowElement) -> Windowed {
    if !w.contains(a) || !w.contains(b) {
        return Windowed::OutOfWindow;
    }
    match w.raw_product(a, b) {
        (e, true) => w.checked(e),
        _ => Windowed::OutOfWindow,
    }
}

/// Antisymmetry/Jacobi (Lie) or left-symmetry on admissible triples, and the
/// lifted Rota-Baxter identity for `T` on admissible pairs.
pub fn window_checks(w: &CoeffWindow, t: Option<&ModuleMap>, weight: Option<&Poly>) -> Result<Report> {
    let symbols = w.symbols();
    let one = |s: (usize, i64)| {
        let mut e = WindowElement::zero();
        e.add_term(s.0, s.1, Poly::one());
        e
    };
    let br = |a: &WindowElement, b: &WindowElement| coeff_bracket(w, a, b).value();
    let label = |e: &WindowElement| w.render(e);
    let mut report = Report::new();
    let kind = w.algebra.kind();
    let mut first = Check::new(match kind {
        Kind::Lie => "window antisymmetry",
        Kind::LeftSymmetric => "window left-symmetry",
    });
    let mut second = Check::new("window jacobi");
    for &sa in &symbols {
        let a = one(sa);
        for &sb in &symbols {
            let b = one(sb);
            if kind == Kind::Lie {
                if let (Some(ab), Some(ba)) = (br(&a, &b), br(&b, &a)) {
                    push_elem(&mut first, format!("[{},{}]", label(&a), label(&b)), &ab.add(&ba), w);
                }
            }
            for &sc in &symbols {
                let c = one(sc);
                let tag = format!("({},{},{})", label(&a), label(&b), label(&c));
                match kind {
                    Kind::Lie => {
                        let lhs = br(&b, &c).and_then(|bc| br(&a, &bc));
                        let t1 = br(&a, &b).and_then(|ab| br(&ab, &c));
                        let t2 = br(&a, &c).and_then(|ac| br(&b, &ac));
                        if let (Some(lhs), Some(t1), Some(t2)) = (lhs, t1, t2) {
                            push_elem(&mut second, tag, &lhs.sub(&t1).sub(&t2), w);
                        }
                    }
                    Kind::LeftSymmetric => {
                        let t1 = br(&a, &b).and_then(|ab| br(&ab, &c));
                        let t2 = br(&b, &c).and_then(|bc| br(&a, &bc));
                        let t3 = br(&b, &a).and_then(|ba| br(&ba, &c));
                        let t4 = br(&a, &c).and_then(|ac| br(&b, &ac));
                        if let (Some(t1), Some(t2), Some(t3), Some(t4)) = (t1, t2, t3, t4) {
                            push_elem(&mut first, tag, &t1.sub(&t2).sub(&t3).add(&t4), w);
                        }
                    }
                }
            }
        }
    }
    report.push(first);
    if kind == Kind::Lie {
        report.push(second);
    }
    if let Some(t) = t {
        let n = w.algebra.rank();
        if t.source() != n || t.target() != n {
            return Err(Error::RankMismatch {
                expected: n,
                got: t.source(),
            });
        }
        let alpha = weight.cloned().unwrap_or_default();
        let lift = |e: &WindowElement| w.checked(w.raw_lift(t, e)).value();
        let mut check = Check::new("lifted Rota-Baxter");
        for &sa in &symbols {
            let a = one(sa);
            for &sb in &symbols {
                let b = one(sb);
                let (Some(ta), Some(tb)) = (lift(&a), lift(&b)) else { continue };
                let lhs = br(&ta, &tb);
                let inner = match (br(&a, &tb), br(&ta, &b), br(&a, &b)) {
                    (Some(x), Some(y), Some(z)) => Some(x.add(&y).add(&z.scale(&alpha))),
                    _ => None,
                };
                let rhs = inner.and_then(|e| lift(&e));
                if let (Some(lhs), Some(rhs)) = (lhs, rhs) {
                    push_elem(&mut check, format!("({},{})", label(&a), label(&b)), &lhs.sub(&rhs), w);
                }
            }
        }
        report.push(check);
    }
    Ok(report)
}

fn push_elem(check: &mut Check, tag: String, e: &WindowElement, w: &CoeffWindow) {
    for (b, raw, c) in e.terms() {
        let name = format!("{}_{}", w.algebra.basis()[b], w.display_index(b, raw));
        check.push(format!("{tag} -> {name}"), c.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{hv, hv_rb_family1, vir};
    use crate::poly::VarTable;
    use proptest::prelude::*;

    fn p(s: &str) -> Poly {
        VarTable::permissive().parse(s).unwrap()
    }

    #[test]
    fn nth_product_examples() {
        let t = nth_products(&vir()).unwrap();
        assert_eq!(t.get(0, 0).len(), 2);
        assert_eq!(t.get(0, 0)[0].coeffs[0], p("d"));
        assert_eq!(t.get(0, 0)[1].coeffs[0], p("2"));
        let h = nth_products(&hv()).unwrap();
        assert_eq!(h.get(0, 1)[0].coeffs[1], p("d"));
        assert_eq!(h.get(0, 1)[1].coeffs[1], p("1"));
        assert!(h.get(1, 1).is_empty());
        let ab = ConformalAlgebra::from_entries(Kind::Lie, ["a", "b"], &[], &[]).unwrap();
        let z = nth_products(&ab).unwrap();
        assert!(z.get(0, 1).is_empty() && z.get(1, 1).is_empty());
    }

    #[test]
    fn reconstruction() {
        for a in [vir(), hv(), crate::catalog::current_sl2()] {
            let t = nth_products(&a).unwrap();
            for i in 0..a.rank() {
                for j in 0..a.rank() {
                    assert_eq!(&t.reconstruct(i, j), a.sc(i, j));
                }
            }
        }
    }

    #[test]
    fn raw_virasoro_product() {
        let w = CoeffWindow::new(&vir(), 5).unwrap();
        let r = coeff_bracket(&w, &w.symbol(0, 2), &w.symbol(0, 1));
        assert_eq!(r, Windowed::In(w.symbol(0, 2)));
        assert_eq!(coeff_bracket(&w, &w.symbol(0, 5), &w.symbol(0, 4)), Windowed::OutOfWindow);
        // cancels to zero, but only through L_9
        assert_eq!(coeff_bracket(&w, &w.symbol(0, 5), &w.symbol(0, 5)), Windowed::OutOfWindow);
        assert_eq!(coeff_bracket(&w, &w.symbol(0, 0), &w.symbol(0, 0)), Windowed::In(WindowElement::zero()));
    }

    #[test]
    fn shifted_heisenberg_virasoro_relations() {
        let w = CoeffWindow::with_shifts(&hv(), 6, vec![1, 0]).unwrap();
        for m in -4..=4i64 {
            for n in -4..=4i64 {
                if (m + n).abs() > 6 {
                    continue;
                }
                let ll = coeff_bracket(&w, &w.symbol(0, m), &w.symbol(0, n));
                assert_eq!(ll, Windowed::In(w.symbol(0, m + n).scale(&Poly::int(m - n))));
                let lw = coeff_bracket(&w, &w.symbol(0, m), &w.symbol(1, n));
                assert_eq!(lw, Windowed::In(w.symbol(1, m + n).scale(&Poly::int(-n))));
                let ww = coeff_bracket(&w, &w.symbol(1, m), &w.symbol(1, n));
                assert_eq!(ww, Windowed::In(WindowElement::zero()));
            }
        }
    }

    #[test]
    fn raw_lift_of_family_one() {
        // in raw indices T(L_m) = -b(L_m + W_m)
        let w = CoeffWindow::new(&hv(), 3).unwrap();
        let t = hv_rb_family1();
        let lifted = w.raw_lift(&t, &w.symbol(0, 2));
        assert!(w.contains(&lifted));
        let expected = w.symbol(0, 2).add(&w.symbol(1, 2)).scale(&p("-b"));
        assert_eq!(lifted, expected);
    }

    #[test]
    fn window_identities() {
        let w = CoeffWindow::new(&vir(), 4).unwrap();
        assert!(window_checks(&w, None, None).unwrap().ok());
        let w = CoeffWindow::with_shifts(&hv(), 3, vec![1, 0]).unwrap();
        let report = window_checks(&w, Some(&hv_rb_family1()), Some(&Poly::zero())).unwrap();
        assert!(report.ok());
        let empty = CoeffWindow::new(&vir(), 0).unwrap();
        assert!(window_checks(&empty, None, None).unwrap().ok());
        // a non-operator fails the lifted identity
        let bad = ModuleMap::identity(1);
        let report = window_checks(&CoeffWindow::new(&vir(), 3).unwrap(), Some(&bad), None).unwrap();
        assert!(!report.check("lifted Rota-Baxter").unwrap().ok());
    }

    proptest! {
        #[test]
        fn bracket_is_bilinear(c1 in -5i64..5, c2 in -5i64..5, m in -2i64..=2, n in -2i64..=2, k in -2i64..=2) {
            let w = CoeffWindow::with_shifts(&hv(), 6, vec![1, 0]).unwrap();
            let a = w.symbol(0, m).scale(&Poly::int(c1)).add(&w.symbol(1, k).scale(&Poly::int(c2)));
            let b = w.symbol(0, n);
            let whole = coeff_bracket(&w, &a, &b).value().unwrap();
            let parts = coeff_bracket(&w, &w.symbol(0, m), &b).value().unwrap().scale(&Poly::int(c1))
                .add(&coeff_bracket(&w, &w.symbol(1, k), &b).value().unwrap().scale(&Poly::int(c2)));
            prop_assert_eq!(whole, parts);
        }
    }
}
