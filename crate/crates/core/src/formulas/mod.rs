//! Formula syntax: FO over words, temporal logics, parsing, rendering and
//! fragment classification.

mod classify;
mod enumerate;
mod fo;
mod parse;
mod tl;

pub use classify::{classify_fo, classify_tl, Fragment, FragmentId};
pub use enumerate::{enumerate_fo, enumerate_tl, enumerate_trees, FoEnumSpec, TreeGrammar};
pub use fo::{BinaryKind, BinaryPredicate, FoFormula, Guard, Signature, Var};
pub use parse::{parse_fo, parse_tl};
pub use tl::{TlFormula, TlOp};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("binary predicate outside the signature at {pos}: {atom}")]
    OutOfSignature { atom: String, pos: usize },
}

/// Either kind of formula, for entry points that accept both.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AnyFormula {
    Fo(FoFormula),
    Tl(TlFormula),
}

impl AnyFormula {
    pub fn is_positive(&self) -> bool {
        match self {
            AnyFormula::Fo(f) => f.is_positive(),
            AnyFormula::Tl(f) => f.is_positive(),
        }
    }

    pub fn classify(&self, id: &FragmentId) -> bool {
        match self {
            AnyFormula::Fo(f) => classify_fo(f, id),
            AnyFormula::Tl(f) => classify_tl(f, id.fragment),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fo_render_parse_round_trip_on_enumeration() {
        let vars = [Var::new("x"), Var::new("y")];
        let mut spec = FoEnumSpec::standard(
            &["a"],
            &vars,
            &[
                BinaryPredicate::Eq,
                BinaryPredicate::Neq,
                BinaryPredicate::Le,
                BinaryPredicate::Lt,
                BinaryPredicate::Succ,
                BinaryPredicate::NotSucc,
            ],
            true,
        );
        spec.leaves.push(FoFormula::bin(BinaryPredicate::Between(Guard::Pred("a".into())), &vars[0], &vars[1]));
        spec.with_not = true;
        let sig = Signature::b0_between();
        let mut n = 0;
        enumerate_fo(&spec, 4, |f| {
            let text = f.to_string();
            let back = parse_fo(&text, &sig).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(&back, f, "{text}");
            // Rendering is canonical.
            assert_eq!(back.to_string(), text);
            n += 1;
        });
        assert!(n > 10_000);
    }

    #[test]
    fn tl_render_parse_round_trip_on_enumeration() {
        let ops = [
            TlOp::Not,
            TlOp::X,
            TlOp::Y,
            TlOp::F,
            TlOp::G,
            TlOp::P,
            TlOp::H,
            TlOp::And,
            TlOp::Or,
            TlOp::U,
            TlOp::R,
            TlOp::S,
            TlOp::Q,
            TlOp::XU,
            TlOp::YS,
        ];
        enumerate_tl(&["a", "b"], &ops, 4, |f| {
            let text = f.to_string();
            let back = parse_tl(&text).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(&back, f, "{text}");
        });
    }

    #[test]
    fn fo2plus_implies_foplus_and_two_vars() {
        let vars = [Var::new("x"), Var::new("y"), Var::new("z")];
        let mut spec = FoEnumSpec::standard(&["a"], &vars, &[BinaryPredicate::Lt], false);
        spec.with_not = true;
        let fo2p = FragmentId::new(Fragment::Fo2Plus);
        let fop = FragmentId::new(Fragment::FoPlus);
        let mut hits = 0;
        enumerate_fo(&spec, 5, |f| {
            if classify_fo(f, &fo2p) {
                hits += 1;
                assert!(classify_fo(f, &fop));
                assert!(f.distinct_vars() <= 2);
            }
        });
        assert!(hits > 0);
    }
}
