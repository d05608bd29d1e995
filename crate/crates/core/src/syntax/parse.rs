//! Recursive-descent parser for the textual formula syntax.
//!
//! ```text
//! formula := disj ("->" formula)?              right associative
//! disj    := conj ("|" conj)*                  left associative
//! conj    := unary ("&" unary)*                left associative
//! unary   := "forall" x "." formula | "exists" x "." formula
//!          | "(" formula ")" | "top" | "1" | atom
//! atom    := ident ("(" term ("," term)* ")")?
//! term    := ident ("(" (term ("," term)*)? ")")?
//! ```
//!
//! Unicode spellings (`∧ ∨ → ∀ ∃ ⊤`) and `/\`, `\/`, `=>` are accepted too.

use thiserror::Error;

use super::{rename_apart, Atom, Formula, Sequent, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    And,
    Or,
    Imp,
    Turnstile,
    Top,
    Forall,
    Exists,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (at, tok) = lx.next()?;
            let end = tok == Tok::End;
            out.push((at, tok));
            if end {
                return Ok(out);
            }
        }
    }

    fn next(&mut self) -> Result<(usize, Tok), ParseError> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        let start = self.pos;
        let Some(c) = trimmed.chars().next() else {
            return Ok((start, Tok::End));
        };
        let fixed: &[(&str, Tok)] = &[
            ("->", Tok::Imp),
            ("=>", Tok::Imp),
            ("|-", Tok::Turnstile),
            ("/\\", Tok::And),
            ("\\/", Tok::Or),
            ("→", Tok::Imp),
            ("⊢", Tok::Turnstile),
            ("∧", Tok::And),
            ("∨", Tok::Or),
            ("∀", Tok::Forall),
            ("∃", Tok::Exists),
            ("⊤", Tok::Top),
            ("&", Tok::And),
            ("|", Tok::Or),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            (",", Tok::Comma),
            (".", Tok::Dot),
        ];
        for (s, tok) in fixed {
            if trimmed.starts_with(s) {
                self.pos += s.len();
                return Ok((start, tok.clone()));
            }
        }
        if c == '1' && !trimmed[1..].starts_with(|ch: char| ch.is_alphanumeric() || ch == '_') {
            self.pos += 1;
            return Ok((start, Tok::Top));
        }
        if c.is_alphabetic() || c == '_' {
            let len = trimmed
                .char_indices()
                .find(|&(_, ch)| !(ch.is_alphanumeric() || ch == '_' || ch == '\''))
                .map_or(trimmed.len(), |(i, _)| i);
            let word = &trimmed[..len];
            self.pos += len;
            let tok = match word {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "top" => Tok::Top,
                _ => Tok::Ident(word.to_string()),
            };
            return Ok((start, tok));
        }
        Err(ParseError { pos: start, message: format!("unexpected character {c:?}") })
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].1
    }

    fn pos(&self) -> usize {
        self.toks[self.i].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].1.clone();
        if t != Tok::End {
            self.i += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {:?}", self.peek()))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disj()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conj()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.bump() {
            Tok::Forall | Tok::Exists => {
                let quant = self.toks[self.i - 1].1.clone();
                let var = match self.bump() {
                    Tok::Ident(v) => v,
                    _ => return self.error("expected a variable after quantifier"),
                };
                self.expect(Tok::Dot, "'.'")?;
                let body = self.formula()?;
                Ok(if quant == Tok::Forall { Formula::forall(var, body) } else { Formula::exists(var, body) })
            }
            Tok::LParen => {
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Tok::Top => Ok(Formula::Top),
            Tok::Ident(name) => {
                let args = if *self.peek() == Tok::LParen {
                    self.bump();
                    self.term_list()?
                } else {
                    Vec::new()
                };
                Ok(Formula::Atom(Atom { name, args }))
            }
            Tok::End => self.error("unexpected end of input"),
            t => {
                self.i -= 1;
                self.error(format!("unexpected token {t:?}"))
            }
        }
    }

    /// After an opening parenthesis; consumes the closing one.
    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.bump() {
                Tok::Comma => continue,
                Tok::RParen => return Ok(args),
                _ => {
                    self.i -= 1;
                    return self.error("expected ',' or ')' in argument list");
                }
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.bump() {
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.bump();
                    Ok(Term::App(name, self.term_list()?))
                } else {
                    Ok(Term::Var(name))
                }
            }
            _ => {
                self.i -= 1;
                self.error("expected a term")
            }
        }
    }
}

/// Parses a formula; binders are renamed apart on the way in.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: Lexer::tokens(text)?, i: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.error(format!("trailing input starting with {:?}", p.peek()));
    }
    Ok(rename_apart(&f))
}

/// `A, B, C |- G`, or a bare formula for an empty context.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser { toks: Lexer::tokens(text)?, i: 0 };
    let mut context = Vec::new();
    if *p.peek() != Tok::Turnstile {
        let first = p.formula()?;
        if *p.peek() == Tok::End {
            return Ok(Sequent::goal_only(rename_apart(&first)));
        }
        context.push(first);
        while *p.peek() == Tok::Comma {
            p.bump();
            context.push(p.formula()?);
        }
    }
    p.expect(Tok::Turnstile, "'|-'")?;
    let goal = p.formula()?;
    if *p.peek() != Tok::End {
        return p.error("trailing input after goal");
    }
    Ok(Sequent::new(context.iter().map(rename_apart), rename_apart(&goal)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implication_is_right_associative() {
        let f = parse_formula("p -> q -> r").unwrap();
        assert_eq!(f, Formula::imp(Formula::atom("p"), Formula::imp(Formula::atom("q"), Formula::atom("r"))));
    }

    #[test]
    fn precedence_and_over_or_over_imp() {
        let f = parse_formula("a & b | c -> d").unwrap();
        let ab = Formula::and(Formula::atom("a"), Formula::atom("b"));
        assert_eq!(f, Formula::imp(Formula::or(ab, Formula::atom("c")), Formula::atom("d")));
        let g = parse_formula("a | b | c").unwrap();
        assert_eq!(g, Formula::or(Formula::or(Formula::atom("a"), Formula::atom("b")), Formula::atom("c")));
    }

    #[test]
    fn worked_example_goal() {
        let f = parse_formula("r & (q -> (r | t) -> s) -> q -> s").unwrap();
        let (q, r, s, t) = (Formula::atom("q"), Formula::atom("r"), Formula::atom("s"), Formula::atom("t"));
        let inner = Formula::imp(q.clone(), Formula::imp(Formula::or(r.clone(), t), s.clone()));
        let expected = Formula::imp(Formula::and(r, inner), Formula::imp(q, s));
        assert_eq!(f, expected);
        assert_eq!(parse_formula("r ∧ (q→(r∨t)→s) → q→s").unwrap(), expected);
    }

    #[test]
    fn quantifier_scope_is_maximal() {
        let f = parse_formula("forall x. P(x) -> q").unwrap();
        assert_eq!(f, Formula::forall("x", Formula::imp(Formula::pred("P", &["x"]), Formula::atom("q"))));
    }

    #[test]
    fn top_spellings_and_terms() {
        assert_eq!(parse_formula("1").unwrap(), Formula::Top);
        assert_eq!(parse_formula("top").unwrap(), Formula::Top);
        let f = parse_formula("P(f(x), c())").unwrap();
        let Formula::Atom(a) = f else { panic!() };
        assert_eq!(a.args, vec![Term::App("f".into(), vec![Term::Var("x".into())]), Term::App("c".into(), vec![])]);
        // bot is just an atom
        assert_eq!(parse_formula("bot").unwrap(), Formula::atom("bot"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("p & ").unwrap_err();
        assert_eq!(e.pos, 4);
        let e = parse_formula("p ) q").unwrap_err();
        assert_eq!(e.pos, 2);
        assert!(parse_formula("p # q").is_err());
        assert!(parse_formula("forall . p").is_err());
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("p, p -> q |- q").unwrap();
        assert_eq!(s.context().len(), 2);
        assert_eq!(*s.goal(), Formula::atom("q"));
        let t = parse_sequent("p -> p").unwrap();
        assert!(t.context().is_empty());
        let u = parse_sequent("|- p").unwrap();
        assert_eq!(*u.goal(), Formula::atom("p"));
    }
}
