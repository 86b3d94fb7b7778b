//! Two-variable positive FO into positive unary temporal logic.
//!
//! The translation recurses on quantifier rank. For `Q y ψ` evaluated at the
//! pivot `x`, every maximal subformula of `ψ` whose only free variable is `x`
//! is split off as a pivot atom (see the rewrite module); what remains mentions
//! `x` only in binary atoms against `y`. Those atoms are fixed by case analysis
//! on the relative position of `y` and `x`, which leaves a formula in `y`
//! alone that is translated recursively and shifted back with `X`/`Y`/`F`/`P`
//! (or `G`/`H` for `∀`).

use super::rewrite::{collect_atoms, substitute, AtomMode};
use super::TranslateError;
use crate::formulas::{BinaryPredicate, FoFormula, Signature, TlFormula, Var};

/// Relative position of the quantified variable with respect to the pivot,
/// measured as `pos(y) − pos(x)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DistanceClass {
    /// `≤ −2`.
    FarBefore,
    /// `−1`.
    Pred,
    /// `0`.
    Same,
    /// `1`.
    Next,
    /// `≥ 2`.
    FarAfter,
    /// `< 0` (coarse system).
    Before,
    /// `> 0` (coarse system).
    After,
}

impl DistanceClass {
    fn flip(self) -> Self {
        match self {
            DistanceClass::FarBefore => DistanceClass::FarAfter,
            DistanceClass::Pred => DistanceClass::Next,
            DistanceClass::Same => DistanceClass::Same,
            DistanceClass::Next => DistanceClass::Pred,
            DistanceClass::FarAfter => DistanceClass::FarBefore,
            DistanceClass::Before => DistanceClass::After,
            DistanceClass::After => DistanceClass::Before,
        }
    }
}

/// An exhaustive, mutually exclusive set of distance classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PositionSystem {
    /// Five classes, for signatures with successor.
    Fine,
    /// Three classes, for `{≤, <}`.
    Coarse,
}

impl PositionSystem {
    pub fn classes(self) -> &'static [DistanceClass] {
        match self {
            PositionSystem::Fine => &[
                DistanceClass::FarBefore,
                DistanceClass::Pred,
                DistanceClass::Same,
                DistanceClass::Next,
                DistanceClass::FarAfter,
            ],
            PositionSystem::Coarse => &[DistanceClass::Before, DistanceClass::Same, DistanceClass::After],
        }
    }
}

/// Truth of `p(l, r)` when `pos(r) − pos(l)` lies in `class`. `None` when the
/// class does not determine the atom (successor under the coarse system) or
/// the predicate is a between predicate.
pub fn relation_truth(pred: &BinaryPredicate, class: DistanceClass) -> Option<bool> {
    use DistanceClass as D;
    let row: [bool; 5] = match pred {
        BinaryPredicate::Eq => [false, false, true, false, false],
        BinaryPredicate::Neq => [true, true, false, true, true],
        BinaryPredicate::Lt => [false, false, false, true, true],
        BinaryPredicate::Le => [false, false, true, true, true],
        BinaryPredicate::Succ => [false, false, false, true, false],
        BinaryPredicate::NotSucc => [true, true, true, false, true],
        BinaryPredicate::Between(_) => return None,
    };
    match class {
        D::FarBefore => Some(row[0]),
        D::Pred => Some(row[1]),
        D::Same => Some(row[2]),
        D::Next => Some(row[3]),
        D::FarAfter => Some(row[4]),
        D::Before => (row[0] == row[1]).then_some(row[0]),
        D::After => (row[3] == row[4]).then_some(row[3]),
    }
}

// Constant-folding constructors keep outputs small; they never change meaning.

fn and(a: TlFormula, b: TlFormula) -> TlFormula {
    match (&a, &b) {
        (TlFormula::False, _) | (_, TlFormula::False) => TlFormula::False,
        (TlFormula::True, _) => b,
        (_, TlFormula::True) => a,
        _ => TlFormula::and(a, b),
    }
}

fn or(a: TlFormula, b: TlFormula) -> TlFormula {
    match (&a, &b) {
        (TlFormula::True, _) | (_, TlFormula::True) => TlFormula::True,
        (TlFormula::False, _) => b,
        (_, TlFormula::False) => a,
        _ => TlFormula::or(a, b),
    }
}

fn unary(ctor: fn(TlFormula) -> TlFormula, a: TlFormula) -> TlFormula {
    // X, Y, F, P of ⊥ are ⊥; G, H of ⊤ are ⊤.
    let probe = ctor(TlFormula::True);
    let universal = matches!(probe, TlFormula::G(_) | TlFormula::H(_));
    match (&a, universal) {
        (TlFormula::False, false) => TlFormula::False,
        (TlFormula::True, true) => TlFormula::True,
        _ => ctor(a),
    }
}

fn first() -> TlFormula {
    TlFormula::historically(TlFormula::False)
}

fn last() -> TlFormula {
    TlFormula::always(TlFormula::False)
}

/// `∃y` restricted to `class`, with `χ` the translation at `y`.
fn exists_in(class: DistanceClass, chi: TlFormula) -> TlFormula {
    use DistanceClass as D;
    match class {
        D::FarBefore => unary(TlFormula::yesterday, unary(TlFormula::past, chi)),
        D::Pred => unary(TlFormula::yesterday, chi),
        D::Same => chi,
        D::Next => unary(TlFormula::next, chi),
        D::FarAfter => unary(TlFormula::next, unary(TlFormula::eventually, chi)),
        D::Before => unary(TlFormula::past, chi),
        D::After => unary(TlFormula::eventually, chi),
    }
}

/// `∀y` restricted to `class`. The fine classes are vacuous at the ends of
/// the word, which the `H⊥` / `G⊥` disjuncts account for.
fn forall_in(class: DistanceClass, chi: TlFormula) -> TlFormula {
    use DistanceClass as D;
    if chi == TlFormula::True {
        return TlFormula::True;
    }
    match class {
        D::FarBefore => or(unary(TlFormula::yesterday, unary(TlFormula::historically, chi)), first()),
        D::Pred => or(unary(TlFormula::yesterday, chi), first()),
        D::Same => chi,
        D::Next => or(unary(TlFormula::next, chi), last()),
        D::FarAfter => or(unary(TlFormula::next, unary(TlFormula::always, chi)), last()),
        D::Before => unary(TlFormula::historically, chi),
        D::After => unary(TlFormula::always, chi),
    }
}

struct Translator {
    system: PositionSystem,
}

impl Translator {
    /// `χ` with `u, i ⊨ χ ⟺ (u, x↦i) ⊨ φ`; the free variables of `φ` are ⊆ `{x}`.
    fn tr(&self, phi: &FoFormula, x: &Var) -> Result<TlFormula, TranslateError> {
        Ok(match phi {
            FoFormula::True => TlFormula::True,
            FoFormula::False => TlFormula::False,
            FoFormula::Atom { pred, .. } => TlFormula::atom(pred),
            FoFormula::Bin { pred, .. } => {
                if relation_truth(pred, DistanceClass::Same).expect("order predicate") {
                    TlFormula::True
                } else {
                    TlFormula::False
                }
            }
            FoFormula::And(a, b) => and(self.tr(a, x)?, self.tr(b, x)?),
            FoFormula::Or(a, b) => or(self.tr(a, x)?, self.tr(b, x)?),
            FoFormula::Not(_) => return Err(TranslateError::Negation(phi.to_string())),
            FoFormula::Exists(y, body) | FoFormula::Forall(y, body) => {
                let exists = matches!(phi, FoFormula::Exists(..));
                if y == x {
                    // The quantifier rebinds the pivot: the new position is anywhere.
                    let chi = self.tr(body, x)?;
                    let whole = PositionSystem::Coarse.classes();
                    return Ok(if exists {
                        whole.iter().fold(TlFormula::False, |acc, &c| or(acc, exists_in(c, chi.clone())))
                    } else {
                        whole.iter().fold(TlFormula::True, |acc, &c| and(acc, forall_in(c, chi.clone())))
                    });
                }
                self.quantifier_step(exists, y, body, x)?
            }
        })
    }

    fn quantifier_step(&self, exists: bool, y: &Var, body: &FoFormula, x: &Var) -> Result<TlFormula, TranslateError> {
        let mut atoms = Vec::new();
        collect_atoms(body, x, AtomMode::Maximal, &mut atoms);
        let guards: Vec<TlFormula> = atoms.iter().map(|a| self.tr(a, x)).collect::<Result<_, _>>()?;
        let mut result = TlFormula::False;
        for set in 0..1u64 << atoms.len() {
            let guard = (0..atoms.len())
                .filter(|i| set >> i & 1 == 1)
                .fold(TlFormula::True, |acc, i| and(acc, guards[i].clone()));
            if guard == TlFormula::False {
                continue;
            }
            let split = substitute(body, x, AtomMode::Maximal, &atoms, set);
            let mut quantified = if exists { TlFormula::False } else { TlFormula::True };
            for &class in self.system.classes() {
                let fixed = fix_relations(&split, x, y, class)?;
                let chi = self.tr(&fixed, y)?;
                quantified = if exists {
                    or(quantified, exists_in(class, chi))
                } else {
                    and(quantified, forall_in(class, chi))
                };
            }
            result = or(result, and(guard, quantified));
        }
        Ok(result)
    }
}

/// Replaces binary atoms between free occurrences of `x` and `y` by their truth
/// value under `class` (the class of `pos(y) − pos(x)`).
fn fix_relations(f: &FoFormula, x: &Var, y: &Var, class: DistanceClass) -> Result<FoFormula, TranslateError> {
    let rec = |g: &FoFormula| fix_relations(g, x, y, class);
    Ok(match f {
        FoFormula::Bin { pred, left, right } if left != right && (left == x || right == x) => {
            let c = if left == x { class } else { class.flip() };
            match relation_truth(pred, c) {
                Some(true) => FoFormula::True,
                Some(false) => FoFormula::False,
                None => return Err(TranslateError::OutOfSignature(f.to_string())),
            }
        }
        FoFormula::And(a, b) => FoFormula::and(rec(a)?, rec(b)?),
        FoFormula::Or(a, b) => FoFormula::or(rec(a)?, rec(b)?),
        // Below a binder of x or y the outer occurrence is shadowed.
        FoFormula::Exists(v, _) | FoFormula::Forall(v, _) if v == x || v == y => f.clone(),
        FoFormula::Exists(v, a) => FoFormula::exists(v, rec(a)?),
        FoFormula::Forall(v, a) => FoFormula::forall(v, rec(a)?),
        _ => f.clone(),
    })
}

fn check_input(phi: &FoFormula, sig: &Signature, sig_name: &str) -> Result<Var, TranslateError> {
    if !phi.is_positive() {
        return Err(TranslateError::Negation(phi.to_string()));
    }
    if phi.distinct_vars() > 2 {
        return Err(TranslateError::ThirdVariable(phi.to_string()));
    }
    if let Some(p) = phi.binary_predicates().into_iter().find(|p| !sig.permits(p)) {
        return Err(TranslateError::OutOfSignature(format!("{p:?} is not in {sig_name}")));
    }
    let free = phi.free_vars();
    if free.len() > 1 {
        return Err(TranslateError::FreeVariables(phi.to_string()));
    }
    Ok(free.into_iter().next().unwrap_or_else(|| Var::new("x")))
}

/// Translates an FO²⁺ formula over `{=, ≠, ≤, <, succ, ¬succ}` with at most one
/// free variable into UTL⁺. The result holds at position `i` iff the input
/// holds with its free variable at `i`; for sentences it is position-independent.
pub fn fo2p_to_utlp(phi: &FoFormula) -> Result<TlFormula, TranslateError> {
    let x = check_input(phi, &Signature::b0(), "{=,!=,<=,<,S,!S}")?;
    Translator { system: PositionSystem::Fine }.tr(phi, &x)
}

/// As [`fo2p_to_utlp`] for inputs over `{=, ≠, ≤, <}`; the result uses only
/// `F`, `G`, `P`, `H`.
pub fn fo2p_less_to_utlp(phi: &FoFormula) -> Result<TlFormula, TranslateError> {
    let x = check_input(phi, &Signature::less(), "{=,!=,<=,<}")?;
    Translator { system: PositionSystem::Coarse }.tr(phi, &x)
}
