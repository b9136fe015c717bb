//! Check reports: named checks carrying their nonzero residual polynomials.

use serde::Serialize;

use crate::conformal::Element;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub basis: String,
    pub poly: Poly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    /// Nonzero residuals only, in basis order.
    pub residuals: Vec<Residual>,
    /// Set when the check failed for a reason other than a residual.
    pub failure: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn ok(&self) -> bool {
        self.residuals.is_empty() && self.failure.is_none()
    }

    pub fn push(&mut self, basis: impl Into<String>, poly: Poly) {
        if !poly.is_zero() {
            self.residuals.push(Residual {
                basis: basis.into(),
                poly,
            });
        }
    }

    /// Records every nonzero component of `e`, labelled `label -> name`.
    pub fn push_element(&mut self, label: &str, e: &Element, names: &[String]) {
        for (k, c) in e.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let name = names.get(k).map(String::as_str).unwrap_or("?");
                self.push(format!("{label} -> {name}"), c.clone());
            }
        }
    }

    pub fn fail(&mut self, why: impl Into<String>) {
        self.failure = Some(why.into());
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// All residual polynomials across checks.
    pub fn residual_polys(&self) -> impl Iterator<Item = &Poly> {
        self.checks
            .iter()
            .flat_map(|c| c.residuals.iter().map(|r| &r.poly))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson::from(self)).expect("report serializes")
    }
}

#[derive(Serialize)]
struct ResidualJson {
    basis: String,
    poly: String,
}

#[derive(Serialize)]
struct CheckJson {
    name: String,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
    residuals: Vec<ResidualJson>,
}

#[derive(Serialize)]
struct ReportJson {
    ok: bool,
    checks: Vec<CheckJson>,
}

impl From<&Report> for ReportJson {
    fn from(r: &Report) -> Self {
        ReportJson {
            ok: r.ok(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.clone(),
                    ok: c.ok(),
                    failure: c.failure.clone(),
                    residuals: c
                        .residuals
                        .iter()
                        .map(|res| ResidualJson {
                            basis: res.basis.clone(),
                            poly: res.poly.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}
