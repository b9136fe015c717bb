//! Builtin algebras, operators and tensors.

use crate::conformal::{ConformalAlgebra, Kind};
use crate::error::{Error, Result};
use crate::gdquad::GDBialgebra;
use crate::operators::ModuleMap;
use crate::poly::{Poly, VarTable};
use crate::reps::{semidirect, standard_rep, Representation, StandardRep};
use crate::tensor::TensorElement2;

fn p(s: &str) -> Poly {
    VarTable::permissive().parse(s).expect("builtin polynomial")
}

/// `[L_λ L] = (∂+2λ)L`.
pub fn vir() -> ConformalAlgebra {
    ConformalAlgebra::from_entries(Kind::Lie, ["L"], &[], &[(0, 0, 0, p("d+2*x"))])
        .expect("builtin")
}

/// `[L_λ L] = (∂+2λ)L`, `[L_λ W] = (∂+λ)W`, `[W_λ L] = λW`, `[W_λ W] = 0`.
pub fn hv() -> ConformalAlgebra {
    ConformalAlgebra::from_entries(
        Kind::Lie,
        ["L", "W"],
        &[],
        &[(0, 0, 0, p("d+2*x")), (0, 1, 1, p("d+x")), (1, 0, 1, p("x"))],
    )
    .expect("builtin")
}

/// Left-symmetric structure on HV induced by the Rota-Baxter operator
/// `T(L) = -b(L+W)`, `T(W) = b(L+W)`.
pub fn hv_lsc1() -> ConformalAlgebra {
    ConformalAlgebra::from_entries(
        Kind::LeftSymmetric,
        ["L", "W"],
        &["b"],
        &[
            (0, 0, 0, p("-b*(d+2*x)")),
            (0, 0, 1, p("-b*x")),
            (0, 1, 1, p("-b*(d+x)")),
            (1, 0, 0, p("b*(d+2*x)")),
            (1, 0, 1, p("b*x")),
            (1, 1, 1, p("b*(d+x)")),
        ],
    )
    .expect("builtin")
}

/// `g(∂) = g0 + g1 ∂ + g2 ∂² + g3 ∂³`.
pub fn g_poly() -> Poly {
    p("g0 + g1*d + g2*d^2 + g3*d^3")
}

pub const G_PARAMS: [&str; 4] = ["g0", "g1", "g2", "g3"];

/// Left-symmetric structure on HV induced by `T(L) = g(∂)W`, `T(W) = 0`:
/// `L_λ L = g(-λ)λW`.
pub fn hv_lsc2() -> ConformalAlgebra {
    let g = g_poly().subst(&crate::poly::Var::D, &p("-x"));
    ConformalAlgebra::from_entries(
        Kind::LeftSymmetric,
        ["L", "W"],
        &G_PARAMS,
        &[(0, 0, 1, &g * &p("x"))],
    )
    .expect("builtin")
}

/// The current algebra over sl2 with basis `e, h, f`: `[a_λ b] = [a, b]`.
pub fn current_sl2() -> ConformalAlgebra {
    ConformalAlgebra::from_entries(
        Kind::Lie,
        ["e", "h", "f"],
        &[],
        &[
            (0, 1, 0, p("-2")),
            (1, 0, 0, p("2")),
            (0, 2, 1, p("1")),
            (2, 0, 1, p("-1")),
            (1, 2, 2, p("-2")),
            (2, 1, 2, p("2")),
        ],
    )
    .expect("builtin")
}

/// Novikov algebra `L∘L = L` with zero bracket.
pub fn vir_gd() -> GDBialgebra {
    let mut g = GDBialgebra::zero(["L"]);
    g.circ[0][0][0] = Poly::one();
    g
}

/// `L∘L = L`, `W∘L = W`, other products and all brackets zero.
pub fn hv_gd() -> GDBialgebra {
    let mut g = GDBialgebra::zero(["L", "W"]);
    g.circ[0][0][0] = Poly::one();
    g.circ[1][0][1] = Poly::one();
    g
}

/// `T(L) = -b(L+W)`, `T(W) = b(L+W)`.
pub fn hv_rb_family1() -> ModuleMap {
    ModuleMap::new(vec![vec![p("-b"), p("-b")], vec![p("b"), p("b")]], 2).expect("builtin")
}

/// `T(L) = g(∂)W`, `T(W) = 0`.
pub fn hv_rb_family2() -> ModuleMap {
    ModuleMap::new(vec![vec![Poly::zero(), g_poly()], vec![Poly::zero(), Poly::zero()]], 2)
        .expect("builtin")
}

/// `g(A) ⋉ g(A)^{*c}` for the regular left representation.
pub fn lie_double(a: &ConformalAlgebra) -> Result<ConformalAlgebra> {
    let rep = standard_rep(a, StandardRep::RegularLeft)?;
    semidirect(&rep.dual()?)
}

/// `A ⋉_{L*, 0} A^{*c}`.
pub fn left_symmetric_double(a: &ConformalAlgebra) -> Result<ConformalAlgebra> {
    let rep = standard_rep(a, StandardRep::RegularLeft)?;
    let module = Representation::left_symmetric_from_lie(a, &rep.dual()?)?;
    semidirect(&module)
}

/// `Σ e_i⊗e_i^* + sign · e_i^*⊗e_i` on a doubled basis of size `2n`.
pub fn dual_pairing_tensor(n: usize, sign: i64) -> TensorElement2 {
    let mut r = TensorElement2::zero(2 * n);
    for i in 0..n {
        r.add_term(i, n + i, Poly::one());
        r.add_term(n + i, i, Poly::int(sign));
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogObject {
    Algebra(ConformalAlgebra),
    Operator { algebra: ConformalAlgebra, map: ModuleMap },
    Tensor { algebra: ConformalAlgebra, tensor: TensorElement2 },
    Gd(GDBialgebra),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub object: CatalogObject,
    pub note: &'static str,
}

pub const CATALOG_NAMES: [&str; 12] = [
    "vir",
    "hv",
    "vir_gd",
    "hv_gd",
    "hv_rb_family1",
    "hv_rb_family2",
    "hv_lsc1",
    "hv_lsc2",
    "cybe_r_hv_lsc1",
    "cybe_r_hv_lsc2",
    "s_r_hv_lsc1",
    "s_r_hv_lsc2",
];

pub fn catalog(name: &str) -> Result<CatalogEntry> {
    use CatalogObject::*;
    let (name, object, note) = match name {
        "vir" => ("vir", Algebra(vir()), "Virasoro conformal algebra"),
        "hv" => ("hv", Algebra(hv()), "Heisenberg-Virasoro conformal algebra"),
        "vir_gd" => ("vir_gd", Gd(vir_gd()), "Novikov algebra behind Virasoro"),
        "hv_gd" => ("hv_gd", Gd(hv_gd()), "Gel'fand-Dorfman bialgebra behind Heisenberg-Virasoro"),
        "hv_rb_family1" => (
            "hv_rb_family1",
            Operator {
                algebra: hv(),
                map: hv_rb_family1(),
            },
            "weight-zero Rota-Baxter family on HV, parameter b",
        ),
        "hv_rb_family2" => (
            "hv_rb_family2",
            Operator {
                algebra: hv(),
                map: hv_rb_family2(),
            },
            "weight-zero Rota-Baxter family on HV, g(∂) of degree at most 3",
        ),
        "hv_lsc1" => ("hv_lsc1", Algebra(hv_lsc1()), "left-symmetric structure induced by the first family"),
        "hv_lsc2" => ("hv_lsc2", Algebra(hv_lsc2()), "left-symmetric structure induced by the second family"),
        "cybe_r_hv_lsc1" | "cybe_r_hv_lsc2" => {
            let (static_name, a) = if name.ends_with('1') {
                ("cybe_r_hv_lsc1", hv_lsc1())
            } else {
                ("cybe_r_hv_lsc2", hv_lsc2())
            };
            (
                static_name,
                Tensor {
                    algebra: lie_double(&a)?,
                    tensor: dual_pairing_tensor(a.rank(), -1),
                },
                "skew tensor of the identity O-operator, a CYBE solution in g(A) ⋉ g(A)*",
            )
        }
        "s_r_hv_lsc1" | "s_r_hv_lsc2" => {
            let (static_name, a) = if name.ends_with('1') {
                ("s_r_hv_lsc1", hv_lsc1())
            } else {
                ("s_r_hv_lsc2", hv_lsc2())
            };
            (
                static_name,
                Tensor {
                    algebra: left_symmetric_double(&a)?,
                    tensor: dual_pairing_tensor(a.rank(), 1),
                },
                "symmetric pairing tensor, an S-equation solution in A ⋉ A*",
            )
        }
        other => {
            return Err(Error::UnknownCatalog {
                name: other.to_string(),
                available: CATALOG_NAMES.join(", "),
            })
        }
    };
    Ok(CatalogEntry { name, object, note })
}
