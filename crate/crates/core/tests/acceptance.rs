//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Expected values are written out by hand here rather than taken from the
//! catalog, so a wrong builtin cannot validate itself.

use std::process::ExitCode;
use std::time::Instant;

use conformal_core::catalog::{hv, hv_gd, hv_lsc1, hv_lsc2, hv_rb_family1, hv_rb_family2, vir, vir_gd, current_sl2};
use conformal_core::coeff::{coeff_bracket, window_checks, CoeffWindow, Windowed};
use conformal_core::gdquad::{convert, rb_gd_check, zero_divisor_probe, Probe, Quadratic};
use conformal_core::operators::{
    check_o_operator, check_rota_baxter, cocycle_check, cocycle_from_r, induced_lsc, rb_constraints, solve_squares,
    InducedMode, ModuleMap, PolySystem, Solve,
};
use conformal_core::reps::{semidirect, standard_rep, Representation, StandardRep};
use conformal_core::tensor::{cobracket_from_r, cybe_residual, r_from_t, s_residual, ConformalLinearMap, RMode, TensorElement2};
use conformal_core::{ConformalAlgebra, Kind, Poly, Rational, Var, VarTable};

type Outcome = Result<(), String>;

fn p(s: &str) -> Poly {
    VarTable::permissive().parse(s).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

/// `Σ e_i⊗e_i^* + sign·e_i^*⊗e_i` on the doubled basis.
fn pairing_tensor(n: usize, sign: i64) -> TensorElement2 {
    let mut r = TensorElement2::zero(2 * n);
    for i in 0..n {
        r.add_term(i, n + i, Poly::one());
        r.add_term(n + i, i, Poly::int(sign));
    }
    r
}

fn induced_pair() -> Result<[ConformalAlgebra; 2], String> {
    let ad = standard_rep(&hv(), StandardRep::Adjoint).map_err(err)?;
    Ok([
        induced_lsc(&hv_rb_family1(), &ad, InducedMode::RotaBaxter).map_err(err)?,
        induced_lsc(&hv_rb_family2(), &ad, InducedMode::RotaBaxter).map_err(err)?,
    ])
}

fn lie_double(a: &ConformalAlgebra) -> Result<(Representation, ConformalAlgebra), String> {
    let rep = standard_rep(a, StandardRep::RegularLeft).map_err(err)?;
    let big = semidirect(&rep.dual().map_err(err)?).map_err(err)?;
    Ok((rep, big))
}

fn criterion_1() -> Outcome {
    for a in [vir(), hv()] {
        let report = a.check_axioms();
        ensure(report.ok() && report.residual_polys().next().is_none(), format!("{:?}", report))?;
    }
    let mutant = ConformalAlgebra::from_entries(Kind::Lie, ["L"], &[], &[(0, 0, 0, p("d+3*x"))]).map_err(err)?;
    let report = mutant.check_axioms();
    let skew = report.check("skew-symmetry").ok_or("no skew-symmetry check")?;
    ensure(
        !skew.ok() && skew.residuals.iter().all(|r| !r.poly.is_zero()),
        "mutant passes skew-symmetry",
    )
}

fn criterion_2() -> Outcome {
    for t in [hv_rb_family1(), hv_rb_family2()] {
        let report = check_rota_baxter(&hv(), &t, &Poly::zero()).map_err(err)?;
        ensure(report.ok() && report.residual_polys().next().is_none(), format!("{:?}", report))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let [a1, a2] = induced_pair()?;
    // L_λL = -b((∂+2λ)L+λW), L_λW = -b(∂+λ)W, W_λL = b((∂+2λ)L+λW), W_λW = b(∂+λ)W
    let expected1 = [
        [["-b*(d+2*x)", "-b*x"], ["0", "-b*(d+x)"]],
        [["b*(d+2*x)", "b*x"], ["0", "b*(d+x)"]],
    ];
    // L_λL = g(-λ)λW, everything else zero
    let g = "(g0 - g1*x + g2*x^2 - g3*x^3)*x";
    let expected2 = [[["0", g], ["0", "0"]], [["0", "0"], ["0", "0"]]];
    for (a, expected) in [(&a1, expected1), (&a2, expected2)] {
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let got = &a.sc(i, j).coeffs[k];
                    ensure(
                        *got == p(expected[i][j][k]),
                        format!("({i},{j})->{k}: got {got}, want {}", expected[i][j][k]),
                    )?;
                }
            }
        }
        ensure(a.kind() == Kind::LeftSymmetric && a.check_axioms().ok(), "left-symmetry fails")?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    for a in induced_pair()? {
        let (_, big) = lie_double(&a)?;
        ensure(big.rank() == 4, "double is not rank 4")?;
        let res = cybe_residual(&big, &pairing_tensor(2, -1)).map_err(err)?;
        ensure(res.is_zero(), format!("residual {:?}", res))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for a in [hv_lsc1(), hv_lsc2()] {
        let rep = standard_rep(&a, StandardRep::RegularLeft).map_err(err)?;
        let module = Representation::left_symmetric_from_lie(&a, &rep.dual().map_err(err)?).map_err(err)?;
        let big = semidirect(&module).map_err(err)?;
        let res = s_residual(&big, &pairing_tensor(2, 1)).map_err(err)?;
        ensure(res.is_zero(), format!("residual {:?}", res))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for a in [hv_lsc1(), hv_lsc2()] {
        let (rep, big) = lie_double(&a)?;
        let id = ModuleMap::identity(2);
        ensure(check_o_operator(&id, &rep, false).map_err(err)?.ok(), "identity is not an O-operator")?;
        let r = r_from_t(&ConformalLinearMap::from_module_map(&id), &rep, RMode::Skew).map_err(err)?;
        ensure(cybe_residual(&big, &r).map_err(err)?.is_zero(), "O-operator tensor fails CYBE")?;
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let mut t = id.clone();
            t.set(i, j, t.get(i, j) + &Poly::one());
            let r = r_from_t(&ConformalLinearMap::from_module_map(&t), &rep, RMode::Skew).map_err(err)?;
            let res = cybe_residual(&big, &r).map_err(err)?;
            let op = check_o_operator(&t, &rep, false).map_err(err)?;
            // a perturbation that is still an O-operator must keep the residual zero
            ensure(res.is_zero() == op.ok(), format!("perturbation ({i},{j}) disagrees"))?;
            if (i, j) == (0, 0) {
                ensure(!res.is_zero(), "perturbing T(L) by L leaves residual zero")?;
            }
        }
        let mut lifted = ConformalLinearMap::from_module_map(&id);
        let r1 = r_from_t(&lifted, &rep, RMode::Skew).map_err(err)?;
        lifted.set(0, 0, p("1 + 3*x"));
        lifted.set(1, 0, p("x*d"));
        let r2 = r_from_t(&lifted, &rep, RMode::Skew).map_err(err)?;
        for k in 0..big.rank() {
            let e = big.element(k);
            ensure(
                cobracket_from_r(&big, &r1, &e).map_err(err)? == cobracket_from_r(&big, &r2, &e).map_err(err)?,
                format!("cobracket differs on basis {k}"),
            )?;
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let sys = rb_constraints(&vir(), 3, &Poly::zero()).map_err(err)?;
    match solve_squares(&sys).map_err(err)? {
        Solve::Solved(m) => ensure(
            m.len() == 4 && m.values().all(Poly::is_zero),
            format!("nonzero solution {m:?}"),
        )?,
        other => return Err(format!("{other:?}")),
    }
    let c = Var::param("c");
    let t = ModuleMap::new(vec![vec![Poly::var(c.clone())]], 1).map_err(err)?;
    let report = rb_gd_check(&vir_gd(), &t, &Poly::zero()).map_err(err)?;
    let sys = PolySystem {
        unknowns: vec![c.clone()],
        equations: report.residual_polys().cloned().collect(),
    };
    match solve_squares(&sys).map_err(err)? {
        Solve::Solved(m) => ensure(m.get(&c) == Some(&Poly::zero()), "c is not forced to 0"),
        other => Err(format!("{other:?}")),
    }
}

fn criterion_8() -> Outcome {
    for a in [hv_lsc1(), hv_lsc2()] {
        let (_, big) = lie_double(&a)?;
        let alpha = cocycle_from_r(&big, &pairing_tensor(2, -1), Kind::Lie).map_err(err)?;
        // α(a+f, b+g) = {f,b}_λ - {g,a}_{-λ}
        for i in 0..4 {
            for j in 0..4 {
                let want = match (i < 2, j < 2) {
                    (false, true) if i - 2 == j => Poly::one(),
                    (true, false) if j - 2 == i => -Poly::one(),
                    _ => Poly::zero(),
                };
                ensure(alpha.matrix[i][j] == want, format!("alpha[{i}][{j}] = {}", alpha.matrix[i][j]))?;
            }
        }
        ensure(cocycle_check(&big, &alpha).map_err(err)?.ok(), "alpha fails the cocycle check")?;

        let rep = standard_rep(&a, StandardRep::RegularLeft).map_err(err)?;
        let module = Representation::left_symmetric_from_lie(&a, &rep.dual().map_err(err)?).map_err(err)?;
        let lsc = semidirect(&module).map_err(err)?;
        let beta = cocycle_from_r(&lsc, &pairing_tensor(2, 1), Kind::LeftSymmetric).map_err(err)?;
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i + 2 == j) || (j + 2 == i) { Poly::one() } else { Poly::zero() };
                ensure(beta.matrix[i][j] == want, format!("beta[{i}][{j}] = {}", beta.matrix[i][j]))?;
            }
        }
        ensure(cocycle_check(&lsc, &beta).map_err(err)?.ok(), "beta fails the cocycle check")?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let w = CoeffWindow::with_shifts(&hv(), 6, vec![1, 0]).map_err(err)?;
    let mut compared = 0;
    for m in -4..=4i64 {
        for n in -4..=4i64 {
            if (m + n).abs() > 6 {
                continue;
            }
            let ll = coeff_bracket(&w, &w.symbol(0, m), &w.symbol(0, n));
            ensure(ll == Windowed::In(w.symbol(0, m + n).scale(&Poly::int(m - n))), format!("[L_{m},L_{n}]"))?;
            let lw = coeff_bracket(&w, &w.symbol(0, m), &w.symbol(1, n));
            ensure(lw == Windowed::In(w.symbol(1, m + n).scale(&Poly::int(-n))), format!("[L_{m},W_{n}]"))?;
            compared += 2;
        }
    }
    ensure(compared > 100, "too few relations compared")?;
    let report = window_checks(&w, Some(&hv_rb_family1()), Some(&Poly::zero())).map_err(err)?;
    ensure(report.ok(), format!("{:?}", report.checks.iter().find(|c| !c.ok())))?;
    let vir_window = CoeffWindow::new(&vir(), 6).map_err(err)?;
    ensure(window_checks(&vir_window, None, None).map_err(err)?.ok(), "Virasoro window fails")
}

fn criterion_10() -> Outcome {
    for a in [vir(), hv()] {
        let Quadratic::Gd(g) = convert(&Quadratic::Conformal(a.clone())).map_err(err)? else {
            return Err("conversion did not yield a GD bialgebra".into());
        };
        let back = convert(&Quadratic::Gd(g.clone())).map_err(err)?;
        ensure(back == Quadratic::Conformal(a), "conformal round trip")?;
        let again = convert(&back).map_err(err)?;
        ensure(again == Quadratic::Gd(g), "GD round trip")?;
    }
    ensure(zero_divisor_probe(&vir_gd()) == Probe::NoZeroDivisors, "vir GD probe")?;
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let w = vec![zero, one];
    ensure(zero_divisor_probe(&hv_gd()) == Probe::Witness(w.clone(), w), "hv GD probe")
}

fn criterion_11() -> Outcome {
    let mut reps = Vec::new();
    for a in [vir(), hv(), current_sl2()] {
        reps.push(standard_rep(&a, StandardRep::Adjoint).map_err(err)?);
    }
    for a in [hv_lsc1(), hv_lsc2()] {
        reps.push(standard_rep(&a, StandardRep::RegularLeft).map_err(err)?);
        reps.push(standard_rep(&a, StandardRep::LeftMinusRight).map_err(err)?);
    }
    let mut lsc_modules = Vec::new();
    for a in [hv_lsc1(), hv_lsc2()] {
        lsc_modules.push(standard_rep(&a, StandardRep::RegularRight).map_err(err)?);
    }
    for rep in &reps {
        let dual = rep.dual().map_err(err)?;
        ensure(dual.check_rep().ok(), format!("dual of {:?} fails", rep.module_basis()))?;
        ensure(dual.dual().map_err(err)? == *rep, "dual is not an involution")?;
        for r in [rep, &dual] {
            ensure(semidirect(r).map_err(err)?.check_axioms().ok(), "Lie semidirect fails")?;
        }
        if let Ok(a) = lsc_source(rep) {
            let m = Representation::left_symmetric_from_lie(&a, &dual).map_err(err)?;
            ensure(semidirect(&m).map_err(err)?.check_axioms().ok(), "LSC semidirect fails")?;
        }
    }
    for m in &lsc_modules {
        ensure(m.check_rep().ok(), "regular module fails")?;
        ensure(semidirect(m).map_err(err)?.check_axioms().ok(), "LSC regular semidirect fails")?;
    }
    Ok(())
}

/// The left-symmetric algebra whose regular representation `rep` is, if any.
fn lsc_source(rep: &Representation) -> Result<ConformalAlgebra, ()> {
    for a in [hv_lsc1(), hv_lsc2()] {
        for which in [StandardRep::RegularLeft, StandardRep::LeftMinusRight] {
            if standard_rep(&a, which).as_ref() == Ok(rep) {
                return Ok(a);
            }
        }
    }
    Err(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("axiom suite on Vir, HV and the skew mutant", criterion_1),
        ("HV Rota-Baxter families at weight 0", criterion_2),
        ("induced left-symmetric tables", criterion_3),
        ("CYBE in the rank-4 Lie double", criterion_4),
        ("S-equation in the left-symmetric double", criterion_5),
        ("O-operator to CYBE, perturbation and cobracket invariance", criterion_6),
        ("Virasoro Rota-Baxter classification", criterion_7),
        ("cocycles from non-degenerate solutions", criterion_8),
        ("coefficient window on Vir and HV", criterion_9),
        ("GD correspondence and zero-divisor probes", criterion_10),
        ("duals and semidirect sums", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {}: {name} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({secs:.2}s): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
