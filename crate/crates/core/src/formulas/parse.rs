//! Recursive-descent parsers for the FO and temporal grammars.
//!
//! FO: `true false a(x) x=y x!=y x<y x<=y S(x,y) !S(x,y) btw[guard](x,y)`,
//! `& | !`, `exists x.` / `forall x.` whose scope extends maximally right.
//! Temporal: prefix `! X Y F G P H`, right-associative infix `U R S Q XU YS`,
//! then `&`, then `|`.

use super::fo::{BinaryPredicate, FoFormula, Guard, Signature, Var};
use super::tl::TlFormula;
use super::FormulaError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    And,
    Or,
    Not,
    Eq,
    Neq,
    Lt,
    Le,
    Gt,
    Ge,
    Exists,
    Forall,
    True,
    False,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, FormulaError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let peek = chars.get(i + 1).map(|&(_, c)| c);
        let mut step = 1;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '&' | '∧' => {
                if peek == Some('&') && c == '&' {
                    step = 2;
                }
                Tok::And
            }
            '|' | '∨' => {
                if peek == Some('|') && c == '|' {
                    step = 2;
                }
                Tok::Or
            }
            '!' if peek == Some('=') => {
                step = 2;
                Tok::Neq
            }
            '!' | '¬' | '~' => Tok::Not,
            '=' => Tok::Eq,
            '≠' => Tok::Neq,
            '<' if peek == Some('=') => {
                step = 2;
                Tok::Le
            }
            '<' => Tok::Lt,
            '≤' => Tok::Le,
            '>' if peek == Some('=') => {
                step = 2;
                Tok::Ge
            }
            '>' => Tok::Gt,
            '≥' => Tok::Ge,
            '∃' => Tok::Exists,
            '∀' => Tok::Forall,
            '⊤' => Tok::True,
            '⊥' => Tok::False,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                    j += 1;
                }
                step = j - i;
                let word: String = chars[i..j].iter().map(|&(_, c)| c).collect();
                match word.as_str() {
                    "exists" => Tok::Exists,
                    "forall" => Tok::Forall,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                }
            }
            other => {
                return Err(FormulaError::Syntax { pos, msg: format!("unexpected character '{other}'") })
            }
        };
        out.push((tok, pos));
        i += step;
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Cursor {
    fn new(text: &str) -> Result<Self, FormulaError> {
        Ok(Cursor { toks: lex(text)?, at: 0, end: text.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.at + k).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(_, p)| p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), FormulaError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn error(&self, msg: String) -> FormulaError {
        let found = match self.peek() {
            Some(t) => format!("{t:?}"),
            None => "end of input".to_string(),
        };
        FormulaError::Syntax { pos: self.pos(), msg: format!("{msg}, found {found}") }
    }

    fn ident(&mut self, what: &str) -> Result<String, FormulaError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected {what}"))),
        }
    }

    fn finish(&self) -> Result<(), FormulaError> {
        if self.at < self.toks.len() {
            Err(self.error("trailing input".to_string()))
        } else {
            Ok(())
        }
    }
}

/// Parses an FO formula, rejecting binary predicates outside `sig`.
pub fn parse_fo(text: &str, sig: &Signature) -> Result<FoFormula, FormulaError> {
    let mut c = Cursor::new(text)?;
    let f = FoParser { sig }.or(&mut c)?;
    c.finish()?;
    Ok(f)
}

struct FoParser<'a> {
    sig: &'a Signature,
}

impl FoParser<'_> {
    fn or(&self, c: &mut Cursor) -> Result<FoFormula, FormulaError> {
        let mut f = self.and(c)?;
        while c.eat(&Tok::Or) {
            f = FoFormula::or(f, self.and(c)?);
        }
        Ok(f)
    }

    fn and(&self, c: &mut Cursor) -> Result<FoFormula, FormulaError> {
        let mut f = self.unary(c)?;
        while c.eat(&Tok::And) {
            f = FoFormula::and(f, self.unary(c)?);
        }
        Ok(f)
    }

    fn unary(&self, c: &mut Cursor) -> Result<FoFormula, FormulaError> {
        match c.peek() {
            Some(Tok::Not) => {
                let is_not_succ = matches!(c.peek_at(1), Some(Tok::Ident(s)) if s == "S")
                    && c.peek_at(2) == Some(&Tok::LParen)
                    && matches!(c.peek_at(3), Some(Tok::Ident(_)))
                    && c.peek_at(4) == Some(&Tok::Comma);
                if is_not_succ {
                    let pos = c.pos();
                    c.bump();
                    c.bump();
                    let (l, r) = self.pair(c)?;
                    return self.binary(BinaryPredicate::NotSucc, l, r, pos);
                }
                c.bump();
                Ok(FoFormula::not(self.unary(c)?))
            }
            Some(Tok::Exists) | Some(Tok::Forall) => {
                let exists = c.bump() == Some(Tok::Exists);
                let v = Var::new(&c.ident("variable")?);
                // Both `exists x. φ` and `∃x, φ` are accepted.
                if !c.eat(&Tok::Dot) {
                    c.expect(&Tok::Comma, "'.' after quantified variable")?;
                }
                let body = self.or(c)?;
                Ok(if exists { FoFormula::exists(&v, body) } else { FoFormula::forall(&v, body) })
            }
            _ => self.primary(c),
        }
    }

    fn pair(&self, c: &mut Cursor) -> Result<(Var, Var), FormulaError> {
        c.expect(&Tok::LParen, "'('")?;
        let l = Var::new(&c.ident("variable")?);
        c.expect(&Tok::Comma, "','")?;
        let r = Var::new(&c.ident("variable")?);
        c.expect(&Tok::RParen, "')'")?;
        Ok((l, r))
    }

    fn binary(&self, pred: BinaryPredicate, l: Var, r: Var, pos: usize) -> Result<FoFormula, FormulaError> {
        if !self.sig.permits(&pred) {
            let f = FoFormula::bin(pred, &l, &r);
            return Err(FormulaError::OutOfSignature { atom: f.to_string(), pos });
        }
        Ok(FoFormula::Bin { pred, left: l, right: r })
    }

    fn primary(&self, c: &mut Cursor) -> Result<FoFormula, FormulaError> {
        let pos = c.pos();
        match c.peek().cloned() {
            Some(Tok::True) => {
                c.bump();
                Ok(FoFormula::True)
            }
            Some(Tok::False) => {
                c.bump();
                Ok(FoFormula::False)
            }
            Some(Tok::LParen) => {
                c.bump();
                let f = self.or(c)?;
                c.expect(&Tok::RParen, "')'")?;
                Ok(f)
            }
            Some(Tok::Ident(name)) => {
                c.bump();
                if name == "btw" && c.peek() == Some(&Tok::LBrack) {
                    c.bump();
                    let g = guard_or(c)?;
                    c.expect(&Tok::RBrack, "']'")?;
                    let (l, r) = self.pair(c)?;
                    return self.binary(BinaryPredicate::Between(g), l, r, pos);
                }
                if c.peek() == Some(&Tok::LParen) {
                    if name == "S" && c.peek_at(2) == Some(&Tok::Comma) {
                        let (l, r) = self.pair(c)?;
                        return self.binary(BinaryPredicate::Succ, l, r, pos);
                    }
                    c.bump();
                    let v = Var::new(&c.ident("variable")?);
                    c.expect(&Tok::RParen, "')'")?;
                    return Ok(FoFormula::Atom { pred: name, var: v });
                }
                let l = Var::new(&name);
                let (pred, swap) = match c.bump() {
                    Some(Tok::Eq) => (BinaryPredicate::Eq, false),
                    Some(Tok::Neq) => (BinaryPredicate::Neq, false),
                    Some(Tok::Lt) => (BinaryPredicate::Lt, false),
                    Some(Tok::Le) => (BinaryPredicate::Le, false),
                    Some(Tok::Gt) => (BinaryPredicate::Lt, true),
                    Some(Tok::Ge) => (BinaryPredicate::Le, true),
                    _ => {
                        c.at -= 1;
                        return Err(c.error("expected comparison or '(' after identifier".into()));
                    }
                };
                let r = Var::new(&c.ident("variable")?);
                if swap {
                    self.binary(pred, r, l, pos)
                } else {
                    self.binary(pred, l, r, pos)
                }
            }
            _ => Err(c.error("expected formula".into())),
        }
    }
}

fn guard_or(c: &mut Cursor) -> Result<Guard, FormulaError> {
    let mut g = guard_and(c)?;
    while c.eat(&Tok::Or) {
        g = Guard::Or(Box::new(g), Box::new(guard_and(c)?));
    }
    Ok(g)
}

fn guard_and(c: &mut Cursor) -> Result<Guard, FormulaError> {
    let mut g = guard_unary(c)?;
    while c.eat(&Tok::And) {
        g = Guard::And(Box::new(g), Box::new(guard_unary(c)?));
    }
    Ok(g)
}

fn guard_unary(c: &mut Cursor) -> Result<Guard, FormulaError> {
    match c.bump() {
        Some(Tok::Not) => Ok(Guard::Not(Box::new(guard_unary(c)?))),
        Some(Tok::True) => Ok(Guard::True),
        Some(Tok::False) => Ok(Guard::False),
        Some(Tok::Ident(p)) => Ok(Guard::Pred(p)),
        Some(Tok::LParen) => {
            let g = guard_or(c)?;
            c.expect(&Tok::RParen, "')'")?;
            Ok(g)
        }
        _ => {
            c.at -= 1;
            Err(c.error("expected guard".into()))
        }
    }
}

/// Parses a temporal formula.
pub fn parse_tl(text: &str) -> Result<TlFormula, FormulaError> {
    let mut c = Cursor::new(text)?;
    let f = tl_or(&mut c)?;
    c.finish()?;
    Ok(f)
}

fn keyword(c: &Cursor) -> Option<&str> {
    match c.peek() {
        Some(Tok::Ident(s)) => Some(s.as_str()),
        _ => None,
    }
}

fn tl_or(c: &mut Cursor) -> Result<TlFormula, FormulaError> {
    let mut f = tl_and(c)?;
    while c.eat(&Tok::Or) {
        f = TlFormula::or(f, tl_and(c)?);
    }
    Ok(f)
}

fn tl_and(c: &mut Cursor) -> Result<TlFormula, FormulaError> {
    let mut f = tl_binary(c)?;
    while c.eat(&Tok::And) {
        f = TlFormula::and(f, tl_binary(c)?);
    }
    Ok(f)
}

fn tl_binary(c: &mut Cursor) -> Result<TlFormula, FormulaError> {
    let left = tl_unary(c)?;
    let ctor: fn(TlFormula, TlFormula) -> TlFormula = match keyword(c) {
        Some("U") => TlFormula::until,
        Some("R") => TlFormula::release,
        Some("S") => TlFormula::since,
        Some("Q") => TlFormula::quasi,
        Some("XU") => TlFormula::next_until,
        Some("YS") => TlFormula::yesterday_since,
        _ => return Ok(left),
    };
    c.bump();
    let right = tl_binary(c)?;
    Ok(ctor(left, right))
}

fn tl_unary(c: &mut Cursor) -> Result<TlFormula, FormulaError> {
    if c.eat(&Tok::Not) {
        return Ok(TlFormula::not(tl_unary(c)?));
    }
    let ctor: Option<fn(TlFormula) -> TlFormula> = match keyword(c) {
        Some("X") => Some(TlFormula::next),
        Some("Y") => Some(TlFormula::yesterday),
        Some("F") => Some(TlFormula::eventually),
        Some("G") => Some(TlFormula::always),
        Some("P") => Some(TlFormula::past),
        Some("H") => Some(TlFormula::historically),
        _ => None,
    };
    if let Some(ctor) = ctor {
        c.bump();
        return Ok(ctor(tl_unary(c)?));
    }
    match c.bump() {
        Some(Tok::True) => Ok(TlFormula::True),
        Some(Tok::False) => Ok(TlFormula::False),
        Some(Tok::LParen) => {
            let f = tl_or(c)?;
            c.expect(&Tok::RParen, "')'")?;
            Ok(f)
        }
        Some(Tok::Ident(name)) if !is_tl_keyword(&name) => Ok(TlFormula::Atom(name)),
        _ => {
            c.at -= 1;
            Err(c.error("expected temporal formula".into()))
        }
    }
}

pub(crate) fn is_tl_keyword(s: &str) -> bool {
    matches!(s, "X" | "Y" | "F" | "G" | "P" | "H" | "U" | "R" | "S" | "Q" | "XU" | "YS")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fo_example_formula() {
        let f = parse_fo("exists x. forall y. (x=y | !a(y))", &Signature::b0()).unwrap();
        let x = Var::new("x");
        let y = Var::new("y");
        let expected = FoFormula::exists(
            &x,
            FoFormula::forall(
                &y,
                FoFormula::or(
                    FoFormula::bin(BinaryPredicate::Eq, &x, &y),
                    FoFormula::not(FoFormula::atom("a", &y)),
                ),
            ),
        );
        assert_eq!(f, expected);
        assert!(!f.is_positive());
    }

    #[test]
    fn fo_trivial_atom_is_kept() {
        let f = parse_fo("a(x) & x<x", &Signature::less()).unwrap();
        let x = Var::new("x");
        assert_eq!(f, FoFormula::and(FoFormula::atom("a", &x), FoFormula::bin(BinaryPredicate::Lt, &x, &x)));
    }

    #[test]
    fn fo_rejects_out_of_signature() {
        let err = parse_fo("exists y. S(x,y) & a(y)", &Signature::less()).unwrap_err();
        assert!(matches!(err, FormulaError::OutOfSignature { pos: 10, .. }), "{err:?}");
        assert!(parse_fo("btw[a](x,y)", &Signature::b0()).is_err());
        assert!(parse_fo("btw[!a](x,y)", &Signature::b0_between_positive()).is_err());
        assert!(parse_fo("btw[a & b](x,y)", &Signature::b0_between_positive()).is_ok());
    }

    #[test]
    fn fo_not_succ_and_negated_succ() {
        let x = Var::new("x");
        let y = Var::new("y");
        let f = parse_fo("!S(x,y)", &Signature::b0()).unwrap();
        assert_eq!(f, FoFormula::bin(BinaryPredicate::NotSucc, &x, &y));
        let g = parse_fo("!(S(x,y))", &Signature::b0()).unwrap();
        assert_eq!(g, FoFormula::not(FoFormula::bin(BinaryPredicate::Succ, &x, &y)));
        assert_eq!(parse_fo(&g.to_string(), &Signature::b0()).unwrap(), g);
        // A unary predicate named S is still an atom.
        assert!(matches!(parse_fo("S(x)", &Signature::b0()).unwrap(), FoFormula::Atom { .. }));
    }

    #[test]
    fn fo_quantifier_scope_extends_right() {
        let f = parse_fo("exists x. a(x) & b(x) | c(x)", &Signature::b0()).unwrap();
        assert!(matches!(f, FoFormula::Exists(..)));
        assert_eq!(f.free_vars().len(), 0);
    }

    #[test]
    fn fo_syntax_error_positions() {
        match parse_fo("a(x) & ", &Signature::b0()) {
            Err(FormulaError::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        match parse_fo("a(x) # b(x)", &Signature::b0()) {
            Err(FormulaError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tl_basic() {
        assert_eq!(parse_tl("F a").unwrap(), TlFormula::eventually(TlFormula::atom("a")));
        let f = parse_tl("a U b U c").unwrap();
        assert_eq!(
            f,
            TlFormula::until(TlFormula::atom("a"), TlFormula::until(TlFormula::atom("b"), TlFormula::atom("c")))
        );
        let g = parse_tl("G a & X F b").unwrap();
        assert!(matches!(g, TlFormula::And(..)));
        let h = parse_tl("a XU b").unwrap();
        assert!(matches!(h, TlFormula::XU(..)));
        assert!(parse_tl("a U").is_err());
        assert!(parse_tl("U").is_err());
    }

    #[test]
    fn tl_round_trip_on_samples() {
        for s in [
            "a U b R c",
            "(a U b) R c",
            "!X a | Y b & c",
            "G (a | b) S H c",
            "a XU b YS true",
            "F !(a & false)",
            "X X a Q P b",
        ] {
            let f = parse_tl(s).unwrap();
            assert_eq!(parse_tl(&f.to_string()).unwrap(), f, "{s}");
        }
    }
}
