//! Python bindings. Formulas go in as text, structured results come back
//! as JSON strings.

use std::collections::HashMap;

use hsnf::cli::ProofFile;
use hsnf::g4ip::{self, Logic, ProveError, ProverConfig};
use hsnf::hs::{self, HsError};
use hsnf::interp::{eval_formula, Valuation};
use hsnf::normalize::{classify as classify_nf, embed, enf, latex_nf, print_nf};
use hsnf::syntax::{parse_formula, parse_sequent, print_logical, simplify_top, Formula, Sequent};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sequent(text: &str) -> PyResult<Sequent> {
    if text.contains("|-") || text.contains('⊢') {
        parse_sequent(text).map_err(value_error)
    } else {
        parse_formula(text).map(Sequent::goal_only).map_err(value_error)
    }
}

fn formula(text: &str) -> PyResult<Formula> {
    let s = sequent(text)?;
    Ok(if s.context().is_empty() { s.goal().clone() } else { s.as_formula() })
}

fn logic(name: &str) -> PyResult<Logic> {
    match name {
        "minimal" => Ok(Logic::Minimal),
        "ex-falso" => Ok(Logic::ExFalso),
        _ => Err(value_error(format!("unknown logic {name:?}"))),
    }
}

fn to_json(v: &ProofFile) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// The normal form of `formula` in `poly`, `logical`, `latex` or `json`
/// notation.
#[pyfunction]
#[pyo3(signature = (formula_text, notation = "poly", verbose_units = false))]
fn normalize(formula_text: &str, notation: &str, verbose_units: bool) -> PyResult<String> {
    let e = enf(&formula(formula_text)?);
    match notation {
        "poly" => Ok(print_nf(&e, verbose_units)),
        "logical" => {
            let f = embed(&e);
            Ok(print_logical(&if verbose_units { f } else { simplify_top(&f) }))
        }
        "latex" => Ok(latex_nf(&e)),
        "json" => Ok(serde_json::to_string(&e).expect("serializable")),
        _ => Err(value_error(format!("unknown notation {notation:?}"))),
    }
}

/// The class report of the normal form, as JSON.
#[pyfunction]
fn classify(formula_text: &str) -> PyResult<String> {
    let report = classify_nf(&enf(&formula(formula_text)?));
    Ok(serde_json::to_string(&report).expect("serializable"))
}

/// A proof file (JSON) for `formula` in the given calculus, or `None`
/// when it is not provable.
#[pyfunction]
#[pyo3(signature = (formula_text, calculus = "g4ip", logic_name = "minimal"))]
fn prove(formula_text: &str, calculus: &str, logic_name: &str) -> PyResult<Option<String>> {
    let s = sequent(formula_text)?;
    let logic = logic(logic_name)?;
    let file = match calculus {
        "g4ip" => match g4ip::prove(&s, ProverConfig { logic, node_budget: None }) {
            Ok(derivation) => ProofFile::G4ip { logic, derivation },
            Err(ProveError::NotProvable) => return Ok(None),
            Err(e) => return Err(value_error(e)),
        },
        "hs" => {
            if logic != Logic::Minimal {
                return Err(value_error("HS proofs are for minimal logic"));
            }
            match hs::prove_hs(&hs::sequent_nf(&s.simplify_top())) {
                Ok(proof) => ProofFile::Hs { proof },
                Err(HsError::NotProvable) => return Ok(None),
                Err(e) => return Err(value_error(e)),
            }
        }
        _ => return Err(value_error(format!("unknown calculus {calculus:?}"))),
    };
    Ok(Some(to_json(&file)))
}

fn proof_file(json: &str) -> PyResult<ProofFile> {
    serde_json::from_str(json).map_err(value_error)
}

/// Whether the proof file is a valid derivation.
#[pyfunction]
fn check(proof_json: &str) -> PyResult<bool> {
    Ok(match proof_file(proof_json)? {
        ProofFile::G4ip { logic, derivation } => g4ip::check(&derivation, logic).is_ok(),
        ProofFile::Hs { proof } => hs::check_hs(&proof).is_ok(),
    })
}

/// Translates a G4ip proof file to HS and back.
#[pyfunction]
fn translate(proof_json: &str) -> PyResult<String> {
    let file = match proof_file(proof_json)? {
        ProofFile::G4ip { derivation, .. } => ProofFile::Hs { proof: hs::g4ip_to_hs(&derivation).map_err(value_error)? },
        ProofFile::Hs { proof } => {
            let t = hs::hs_to_g4ip(&proof).map_err(value_error)?;
            ProofFile::G4ip { logic: Logic::Minimal, derivation: t.derivation }
        }
    };
    Ok(to_json(&file))
}

/// The value of `formula` with atoms interpreted by `valuation` (default
/// 2), as a decimal string.
#[pyfunction]
#[pyo3(signature = (formula_text, valuation = None, default = 2))]
fn value(formula_text: &str, valuation: Option<HashMap<String, u64>>, default: u64) -> PyResult<String> {
    let v = valuation.unwrap_or_default().into_iter().fold(Valuation::constant(default), |v, (a, k)| v.with(a, k));
    eval_formula(&formula(formula_text)?, &v).map(|n| n.to_string()).map_err(value_error)
}

#[pymodule]
fn hsnf_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(prove, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(translate, m)?)?;
    m.add_function(wrap_pyfunction!(value, m)?)?;
    Ok(())
}
