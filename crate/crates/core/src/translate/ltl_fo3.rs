//! Positive future LTL into three-variable positive FO, reusing variables
//! cyclically (x → y → z → x).

use super::TranslateError;
use crate::formulas::{classify_tl, BinaryPredicate as B, FoFormula, Fragment, TlFormula, Var};

fn next_var(v: &Var) -> Var {
    Var::new(match v.name() {
        "x" => "y",
        "y" => "z",
        _ => "x",
    })
}

/// `⟦φ⟧(v)`: an FO³⁺ formula with the single free variable `v` that holds at a
/// position exactly when `φ` does.
pub fn ltlp_to_fo3p_at(phi: &TlFormula, v: &Var) -> Result<FoFormula, TranslateError> {
    if !classify_tl(phi, Fragment::LtlPlus) {
        return Err(TranslateError::NotInFragment {
            fragment: "ltl+",
            reason: format!("{phi} uses negation or past operators"),
        });
    }
    Ok(tr(&phi.desugar(), v))
}

/// Closed translation: `∃x, (∀y, x≤y) ∧ ⟦φ⟧(x)`.
pub fn ltlp_to_fo3p(phi: &TlFormula) -> Result<FoFormula, TranslateError> {
    let x = Var::new("x");
    let y = Var::new("y");
    let body = ltlp_to_fo3p_at(phi, &x)?;
    let first = FoFormula::forall(&y, FoFormula::bin(B::Le, &x, &y));
    Ok(FoFormula::exists(&x, FoFormula::and(first, body)))
}

fn tr(phi: &TlFormula, x: &Var) -> FoFormula {
    let y = next_var(x);
    let z = next_var(&y);
    match phi {
        TlFormula::True => FoFormula::True,
        TlFormula::False => FoFormula::False,
        TlFormula::Atom(a) => FoFormula::atom(a, x),
        TlFormula::And(a, b) => FoFormula::and(tr(a, x), tr(b, x)),
        TlFormula::Or(a, b) => FoFormula::or(tr(a, x), tr(b, x)),
        TlFormula::X(a) => FoFormula::exists(&y, FoFormula::and(FoFormula::bin(B::Succ, x, &y), tr(a, &y))),
        TlFormula::F(a) => FoFormula::exists(&y, FoFormula::and(FoFormula::bin(B::Lt, x, &y), tr(a, &y))),
        TlFormula::G(a) => FoFormula::forall(&y, FoFormula::or(FoFormula::bin(B::Le, &y, x), tr(a, &y))),
        TlFormula::U(a, b) => until(a, b, x, &y, &z),
        TlFormula::R(a, b) => {
            // a R b: b holds up to and including a position where a holds, or b holds from here on.
            let held = TlFormula::and((**b).clone(), (**a).clone());
            let always = FoFormula::forall(&y, FoFormula::or(FoFormula::bin(B::Lt, &y, x), tr(b, &y)));
            FoFormula::or(until(b, &held, x, &y, &z), always)
        }
        _ => unreachable!("classified as ltl+ and desugared"),
    }
}

/// `∃y, x≤y ∧ ⟦ψ⟧(y) ∧ ∀z, (z<x ∨ y≤z ∨ ⟦φ⟧(z))`.
fn until(phi: &TlFormula, psi: &TlFormula, x: &Var, y: &Var, z: &Var) -> FoFormula {
    let guard = FoFormula::or(
        FoFormula::or(FoFormula::bin(B::Lt, z, x), FoFormula::bin(B::Le, y, z)),
        tr(phi, z),
    );
    FoFormula::exists(
        y,
        FoFormula::and(FoFormula::and(FoFormula::bin(B::Le, x, y), tr(psi, y)), FoFormula::forall(z, guard)),
    )
}
