//! Syntactic fragment membership.

use std::fmt;

use super::fo::{FoFormula, Signature};
use super::tl::{TlFormula, TlOp};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Fragment {
    FoPlus,
    Fo2,
    Fo2Plus,
    Fo3,
    Fo3Plus,
    Sigma2,
    Sigma2Plus,
    Sigma2Minus,
    Pi2,
    Pi2Plus,
    Ltl,
    LtlPlus,
    TlPlus,
    Utl,
    UtlPlus,
    /// Positive unary temporal logic without `X` and `Y`.
    UtlPlusPfhg,
}

impl Fragment {
    pub const ALL: [Fragment; 16] = [
        Fragment::FoPlus,
        Fragment::Fo2,
        Fragment::Fo2Plus,
        Fragment::Fo3,
        Fragment::Fo3Plus,
        Fragment::Sigma2,
        Fragment::Sigma2Plus,
        Fragment::Sigma2Minus,
        Fragment::Pi2,
        Fragment::Pi2Plus,
        Fragment::Ltl,
        Fragment::LtlPlus,
        Fragment::TlPlus,
        Fragment::Utl,
        Fragment::UtlPlus,
        Fragment::UtlPlusPfhg,
    ];

    pub fn is_temporal(self) -> bool {
        matches!(
            self,
            Fragment::Ltl
                | Fragment::LtlPlus
                | Fragment::TlPlus
                | Fragment::Utl
                | Fragment::UtlPlus
                | Fragment::UtlPlusPfhg
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Fragment::FoPlus => "fo+",
            Fragment::Fo2 => "fo2",
            Fragment::Fo2Plus => "fo2+",
            Fragment::Fo3 => "fo3",
            Fragment::Fo3Plus => "fo3+",
            Fragment::Sigma2 => "sigma2",
            Fragment::Sigma2Plus => "sigma2+",
            Fragment::Sigma2Minus => "sigma2-",
            Fragment::Pi2 => "pi2",
            Fragment::Pi2Plus => "pi2+",
            Fragment::Ltl => "ltl",
            Fragment::LtlPlus => "ltl+",
            Fragment::TlPlus => "tl+",
            Fragment::Utl => "utl",
            Fragment::UtlPlus => "utl+",
            Fragment::UtlPlusPfhg => "utl+[pfhg]",
        }
    }

    pub fn parse(name: &str) -> Option<Fragment> {
        let n = name.trim().to_ascii_lowercase();
        Fragment::ALL.into_iter().find(|f| f.name() == n).or(match n.as_str() {
            "utl+pfhg" | "utl+[p,f,h,g]" => Some(Fragment::UtlPlusPfhg),
            _ => None,
        })
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A fragment together with the binary signature it is taken over, when that
/// matters. `None` means no signature restriction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FragmentId {
    pub fragment: Fragment,
    pub signature: Option<Signature>,
}

impl FragmentId {
    pub fn new(fragment: Fragment) -> Self {
        FragmentId { fragment, signature: None }
    }

    pub fn over(fragment: Fragment, signature: Signature) -> Self {
        FragmentId { fragment, signature: Some(signature) }
    }
}

impl From<Fragment> for FragmentId {
    fn from(f: Fragment) -> Self {
        FragmentId::new(f)
    }
}

/// Membership of an FO formula in a fragment. Temporal fragments are never
/// satisfied by FO formulas.
pub fn classify_fo(phi: &FoFormula, id: &FragmentId) -> bool {
    if let Some(sig) = &id.signature {
        if !phi.uses_only(sig) {
            return false;
        }
    }
    match id.fragment {
        Fragment::FoPlus => phi.is_positive(),
        Fragment::Fo2 => phi.distinct_vars() <= 2,
        Fragment::Fo2Plus => phi.is_positive() && phi.distinct_vars() <= 2,
        Fragment::Fo3 => phi.distinct_vars() <= 3,
        Fragment::Fo3Plus => phi.is_positive() && phi.distinct_vars() <= 3,
        Fragment::Sigma2 => prenex_matrix(phi, true).is_some(),
        Fragment::Sigma2Plus => prenex_matrix(phi, true).is_some_and(|m| m.is_positive()),
        Fragment::Sigma2Minus => prenex_matrix(phi, true).is_some_and(negative_matrix),
        Fragment::Pi2 => prenex_matrix(phi, false).is_some(),
        Fragment::Pi2Plus => prenex_matrix(phi, false).is_some_and(|m| m.is_positive()),
        _ => false,
    }
}

/// Strips a literal `∃*∀*` (or `∀*∃*` when `sigma` is false) prefix and
/// returns the matrix if it is quantifier-free.
fn prenex_matrix(phi: &FoFormula, sigma: bool) -> Option<&FoFormula> {
    let mut f = phi;
    for want_exists in [sigma, !sigma] {
        loop {
            match f {
                FoFormula::Exists(_, body) if want_exists => f = body,
                FoFormula::Forall(_, body) if !want_exists => f = body,
                _ => break,
            }
        }
    }
    (f.quantifier_rank() == 0).then_some(f)
}

/// Every unary atom sits under exactly one `¬`, and `¬` occurs nowhere else.
fn negative_matrix(m: &FoFormula) -> bool {
    match m {
        FoFormula::True | FoFormula::False | FoFormula::Bin { .. } => true,
        FoFormula::Atom { .. } => false,
        FoFormula::Not(inner) => matches!(**inner, FoFormula::Atom { .. }),
        FoFormula::And(a, b) | FoFormula::Or(a, b) => negative_matrix(a) && negative_matrix(b),
        FoFormula::Exists(..) | FoFormula::Forall(..) => false,
    }
}

/// Membership of a temporal formula in a fragment. FO fragments are never
/// satisfied by temporal formulas.
pub fn classify_tl(phi: &TlFormula, fragment: Fragment) -> bool {
    let ops = phi.ops();
    let only = |allowed: &[TlOp]| ops.iter().all(|o| allowed.contains(o));
    const BOOL: [TlOp; 6] = [TlOp::True, TlOp::False, TlOp::Atom, TlOp::And, TlOp::Or, TlOp::Not];
    let with = |extra: &[TlOp]| -> Vec<TlOp> { BOOL.iter().chain(extra).copied().collect() };
    let positive = !ops.contains(&TlOp::Not);
    match fragment {
        Fragment::Ltl => only(&with(&[TlOp::X, TlOp::U, TlOp::R, TlOp::XU, TlOp::F, TlOp::G])),
        Fragment::LtlPlus => positive && classify_tl(phi, Fragment::Ltl),
        Fragment::TlPlus => positive,
        Fragment::Utl => only(&with(&[TlOp::X, TlOp::Y, TlOp::F, TlOp::G, TlOp::P, TlOp::H])),
        Fragment::UtlPlus => positive && classify_tl(phi, Fragment::Utl),
        Fragment::UtlPlusPfhg => positive && only(&with(&[TlOp::F, TlOp::G, TlOp::P, TlOp::H])),
        _ => false,
    }
}
