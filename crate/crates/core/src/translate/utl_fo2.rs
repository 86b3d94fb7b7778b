//! Positive unary temporal logic into two-variable positive FO.

use super::TranslateError;
use crate::formulas::{classify_tl, BinaryPredicate as B, FoFormula, Fragment, TlFormula, Var};

/// `⟦φ⟧(x)`, with `x` the only free variable.
pub fn utlp_to_fo2p(phi: &TlFormula) -> Result<FoFormula, TranslateError> {
    if !classify_tl(phi, Fragment::UtlPlus) {
        return Err(TranslateError::NotInFragment {
            fragment: "utl+",
            reason: format!("{phi} uses negation or a binary temporal operator"),
        });
    }
    Ok(tr(phi, &Var::new("x"), &Var::new("y")))
}

/// `∃x, (∀y, x≤y) ∧ ⟦φ⟧(x)`: the sentence true on words whose first position
/// satisfies `φ`.
pub fn utlp_to_fo2p_closed(phi: &TlFormula) -> Result<FoFormula, TranslateError> {
    let (x, y) = (Var::new("x"), Var::new("y"));
    let body = utlp_to_fo2p(phi)?;
    Ok(FoFormula::exists(&x, FoFormula::and(FoFormula::forall(&y, FoFormula::bin(B::Le, &x, &y)), body)))
}

fn tr(phi: &TlFormula, x: &Var, y: &Var) -> FoFormula {
    let sub = |a: &TlFormula| tr(a, y, x);
    let ex = |rel: FoFormula, a: &TlFormula| FoFormula::exists(y, FoFormula::and(rel, sub(a)));
    let all = |rel: FoFormula, a: &TlFormula| FoFormula::forall(y, FoFormula::or(rel, sub(a)));
    match phi {
        TlFormula::True => FoFormula::True,
        TlFormula::False => FoFormula::False,
        TlFormula::Atom(a) => FoFormula::atom(a, x),
        TlFormula::And(a, b) => FoFormula::and(tr(a, x, y), tr(b, x, y)),
        TlFormula::Or(a, b) => FoFormula::or(tr(a, x, y), tr(b, x, y)),
        TlFormula::X(a) => ex(FoFormula::bin(B::Succ, x, y), a),
        TlFormula::Y(a) => ex(FoFormula::bin(B::Succ, y, x), a),
        TlFormula::F(a) => ex(FoFormula::bin(B::Lt, x, y), a),
        TlFormula::P(a) => ex(FoFormula::bin(B::Lt, y, x), a),
        TlFormula::G(a) => all(FoFormula::bin(B::Le, y, x), a),
        TlFormula::H(a) => all(FoFormula::bin(B::Le, x, y), a),
        _ => unreachable!("classified as utl+"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{classify_fo, parse_tl, FragmentId, Signature};

    #[test]
    fn clause_shapes() {
        let t = |s: &str| utlp_to_fo2p(&parse_tl(s).unwrap()).unwrap().to_string();
        assert_eq!(t("F a"), "exists y. x<y & a(y)");
        assert_eq!(t("G a"), "forall y. y<=x | a(y)");
        assert_eq!(t("H a"), "forall y. x<=y | a(y)");
        assert_eq!(t("X Y a"), "exists y. S(x,y) & (exists x. S(x,y) & a(x))");
    }

    #[test]
    fn signature_follows_operators() {
        let less = FragmentId::over(Fragment::Fo2Plus, Signature::less());
        let b0 = FragmentId::over(Fragment::Fo2Plus, Signature::b0());
        let f = utlp_to_fo2p(&parse_tl("G (a | P H b)").unwrap()).unwrap();
        assert!(classify_fo(&f, &less));
        let g = utlp_to_fo2p(&parse_tl("X G (a | Y b)").unwrap()).unwrap();
        assert!(classify_fo(&g, &b0));
        assert!(!classify_fo(&g, &less));
        assert!(utlp_to_fo2p(&parse_tl("a U b").unwrap()).is_err());
        assert!(utlp_to_fo2p_closed(&parse_tl("F a").unwrap()).unwrap().is_closed());
    }
}
