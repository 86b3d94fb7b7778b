//! Splitting a positive formula on the truth of its pivot atoms.
//!
//! For a positive `ψ` with pivot atoms `θ₁..θₙ` (subformulas whose only free
//! variable is the pivot), `ψ ≡ ⋁_S (⋀_{i∈S} θᵢ ∧ ψ^S)` where `ψ^S` replaces
//! `θᵢ` by `⊤` for `i ∈ S` and by `⊥` otherwise. Positivity makes `ψ^S`
//! increasing in `S`, so the negative guards of the exact case split can be
//! dropped.

use super::TranslateError;
use crate::formulas::{FoFormula, Var};

/// Which subformulas count as atoms on the pivot.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum AtomMode {
    /// Only unary atoms `a(x)`.
    Unary,
    /// Every maximal subformula whose free variables are exactly `{x}`.
    Maximal,
}

fn is_pivot_atom(f: &FoFormula, pivot: &Var, mode: AtomMode) -> bool {
    match mode {
        AtomMode::Unary => matches!(f, FoFormula::Atom { var, .. } if var == pivot),
        AtomMode::Maximal => {
            let fv = f.free_vars();
            fv.len() == 1 && fv.contains(pivot)
        }
    }
}

fn binds(f: &FoFormula, v: &Var) -> bool {
    matches!(f, FoFormula::Exists(b, _) | FoFormula::Forall(b, _) if b == v)
}

pub(crate) fn collect_atoms(f: &FoFormula, pivot: &Var, mode: AtomMode, out: &mut Vec<FoFormula>) {
    if is_pivot_atom(f, pivot, mode) {
        if !out.contains(f) {
            out.push(f.clone());
        }
        return;
    }
    if binds(f, pivot) {
        return;
    }
    match f {
        FoFormula::And(a, b) | FoFormula::Or(a, b) => {
            collect_atoms(a, pivot, mode, out);
            collect_atoms(b, pivot, mode, out);
        }
        FoFormula::Exists(_, a) | FoFormula::Forall(_, a) | FoFormula::Not(a) => collect_atoms(a, pivot, mode, out),
        _ => {}
    }
}

pub(crate) fn substitute(f: &FoFormula, pivot: &Var, mode: AtomMode, atoms: &[FoFormula], set: u64) -> FoFormula {
    if is_pivot_atom(f, pivot, mode) {
        let i = atoms.iter().position(|a| a == f).expect("atom was collected");
        return if set >> i & 1 == 1 { FoFormula::True } else { FoFormula::False };
    }
    if binds(f, pivot) {
        return f.clone();
    }
    let sub = |g: &FoFormula| substitute(g, pivot, mode, atoms, set);
    match f {
        FoFormula::And(a, b) => FoFormula::and(sub(a), sub(b)),
        FoFormula::Or(a, b) => FoFormula::or(sub(a), sub(b)),
        FoFormula::Exists(v, a) => FoFormula::exists(v, sub(a)),
        FoFormula::Forall(v, a) => FoFormula::forall(v, sub(a)),
        FoFormula::Not(a) => FoFormula::not(sub(a)),
        _ => f.clone(),
    }
}

/// The distinct unary atoms `a(x)` on a free occurrence of `pivot`, in order of
/// first occurrence.
pub fn pivot_atoms(psi: &FoFormula, pivot: &Var) -> Vec<FoFormula> {
    let mut out = Vec::new();
    collect_atoms(psi, pivot, AtomMode::Unary, &mut out);
    out
}

/// `ψ^S`: bit `i` of `set` decides whether the `i`-th entry of
/// [`pivot_atoms`] becomes `⊤` or `⊥`.
pub fn substitute_pivot_atoms(psi: &FoFormula, pivot: &Var, set: u64) -> FoFormula {
    let atoms = pivot_atoms(psi, pivot);
    substitute(psi, pivot, AtomMode::Unary, &atoms, set)
}

/// `⋁_S (⋀_{i∈S} aᵢ(x) ∧ ψ^S)` over all subsets `S` of the pivot atoms.
pub fn monotone_rewrite(psi: &FoFormula, pivot: &Var) -> Result<FoFormula, TranslateError> {
    if !psi.is_positive() {
        return Err(TranslateError::Negation(psi.to_string()));
    }
    let atoms = pivot_atoms(psi, pivot);
    let disjuncts = (0..1u64 << atoms.len()).map(|set| {
        let guard: Vec<FoFormula> =
            atoms.iter().enumerate().filter(|(i, _)| set >> i & 1 == 1).map(|(_, a)| a.clone()).collect();
        let body = substitute(psi, pivot, AtomMode::Unary, &atoms, set);
        if guard.is_empty() {
            body
        } else {
            FoFormula::and(FoFormula::and_all(guard), body)
        }
    });
    Ok(FoFormula::or_all(disjuncts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{parse_fo, Signature};

    fn fo(s: &str) -> FoFormula {
        parse_fo(s, &Signature::b0()).unwrap()
    }

    #[test]
    fn atoms_respect_shadowing() {
        let x = Var::new("x");
        let f = fo("a(x) & exists y. (x<y & b(x) & exists x. c(x))");
        let atoms = pivot_atoms(&f, &x);
        assert_eq!(atoms, vec![fo("a(x)"), fo("b(x)")]);
        let s = substitute_pivot_atoms(&f, &x, 0b01);
        assert_eq!(s, fo("true & exists y. (x<y & false & exists x. c(x))"));
    }

    #[test]
    fn no_pivot_atoms_leaves_formula_unchanged() {
        let f = fo("exists y. x<y & a(y)");
        assert_eq!(monotone_rewrite(&f, &Var::new("x")).unwrap(), f);
    }

    #[test]
    fn single_atom_shape() {
        let r = monotone_rewrite(&fo("a(x)"), &Var::new("x")).unwrap();
        assert_eq!(r, fo("false | a(x) & true"));
        assert!(monotone_rewrite(&fo("!a(x)"), &Var::new("x")).is_err());
    }

    #[test]
    fn maximal_mode_groups_pivot_only_subformulas() {
        let x = Var::new("x");
        let f = fo("exists y. (x<y & (a(x) | exists y. y<x & b(y)) & c(y))");
        let mut atoms = Vec::new();
        if let FoFormula::Exists(_, body) = &f {
            collect_atoms(body, &x, AtomMode::Maximal, &mut atoms);
        }
        assert_eq!(atoms, vec![fo("a(x) | exists y. y<x & b(y)")]);
    }
}
