//! Recursive-descent parser for `.cd` sources.
//!
//! Formulas: `bot`, `P(t, ...)`, `~A`, `A & B`, `A | B`, `A -> B`,
//! `forall a. A`, `exists a. A`; the prefix operators `~`, `forall` and
//! `exists` bind tightest, then `&`, `|`, `->`; the binary connectives
//! associate to the right.
//!
//! Proof terms: `x`, `fun (x : A) => t`, `t u`, `(t, u)`, `t.0`, `t.1`,
//! `inl[A | B] t`, `inr[A | B] t`, `case t of { inl x => u | inr y => v }`,
//! `gen a => t`, `t @ m`, `pack[exists a. A](m, t)`,
//! `unpack t as (a, x) in u`, `D[I]`, `efq[P](t)`, `F`.

use std::fmt;

use thiserror::Error;

use super::ast::Expr;
use super::lexer::{tokenize, Spanned, Tok};
use super::source::{Def, Directive, SourceFile};
use crate::signature::Signature;
use crate::syntax::{Context, Formula, Side, Term};
use crate::typing::{ErrorKind, Mode};

const KEYWORDS: &[&str] = &[
    "fun", "gen", "unpack", "as", "in", "case", "of", "inl", "inr", "pack", "D", "efq", "F", "forall", "exists", "bot",
    "def", "var", "const", "function", "pred",
];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.line, self.column, self.expected, self.found
        )
    }
}

pub(crate) struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    sig: Signature,
    hyps: Context,
    defs: Vec<String>,
    locals: Vec<String>,
    fo_bound: Vec<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub(crate) fn new(src: &str, sig: Signature, hyps: Context) -> PResult<Parser> {
        let toks = tokenize(src).map_err(|e| ParseError {
            line: e.line,
            column: e.column,
            expected: "a token".into(),
            found: format!("`{}`", e.found),
        })?;
        Ok(Parser {
            toks,
            pos: 0,
            sig,
            hyps,
            defs: Vec::new(),
            locals: Vec::new(),
            fo_bound: Vec::new(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: impl Into<String>) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            expected: expected.into(),
            found: here.tok.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(tok.to_string()))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("`{kw}`")))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            Tok::Ident(s) if !is_keyword(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(what.to_string())),
        }
    }

    fn number(&mut self, what: &str) -> PResult<u32> {
        match *self.peek() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(what.to_string())),
        }
    }

    pub(crate) fn expect_eof(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    // ---- first-order terms -------------------------------------------------

    pub(crate) fn fo_term(&mut self) -> PResult<Term> {
        let name = self.ident("a first-order term")?;
        if *self.peek() == Tok::LParen {
            if self.sig.function_arity(&name).is_none() {
                self.pos -= 1;
                return Err(self.error("a declared function symbol"));
            }
            self.bump();
            let mut args = vec![self.fo_term()?];
            while *self.peek() == Tok::Comma {
                self.bump();
                args.push(self.fo_term()?);
            }
            self.expect(Tok::RParen)?;
            return Ok(Term::App(name, args));
        }
        if !self.fo_bound.contains(&name) && self.sig.is_constant(&name) {
            Ok(Term::Const(name))
        } else {
            Ok(Term::Var(name))
        }
    }

    // ---- formulas ----------------------------------------------------------

    pub(crate) fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let lhs = self.conjunction()?;
        if *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.disjunction()?;
            return Ok(Formula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Amp {
            self.bump();
            let rhs = self.conjunction()?;
            return Ok(Formula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    /// `~A`, `forall a. A` and `exists a. A` are prefix operators binding
    /// tighter than every connective: `forall a. P(a) -> Q` is
    /// `(forall a. P(a)) -> Q`.
    fn unary(&mut self) -> PResult<Formula> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            return Ok(Formula::negation(self.unary()?));
        }
        if self.is_kw("forall") || self.is_kw("exists") {
            let forall = self.is_kw("forall");
            self.bump();
            let v = self.ident("a bound variable")?;
            self.expect(Tok::Dot)?;
            let body = self.with_fo(&v, |p| p.unary())?;
            return Ok(if forall {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            });
        }
        self.formula_atom()
    }

    fn formula_atom(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "bot" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident(s) if !is_keyword(&s) => {
                if self.sig.predicate_arity(&s).is_none() {
                    return Err(self.error("a declared predicate"));
                }
                self.bump();
                let mut args = Vec::new();
                if *self.peek() == Tok::LParen {
                    self.bump();
                    args.push(self.fo_term()?);
                    while *self.peek() == Tok::Comma {
                        self.bump();
                        args.push(self.fo_term()?);
                    }
                    self.expect(Tok::RParen)?;
                }
                Ok(Formula::Atom(s, args))
            }
            _ => Err(self.error("a formula")),
        }
    }

    fn bracketed_formula(&mut self) -> PResult<Formula> {
        self.expect(Tok::LBracket)?;
        let f = self.formula()?;
        self.expect(Tok::RBracket)?;
        Ok(f)
    }

    // ---- proof terms -------------------------------------------------------

    fn with_local<T>(&mut self, x: &str, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.locals.push(x.to_string());
        let r = f(self);
        self.locals.pop();
        r
    }

    fn with_fo<T>(&mut self, v: &str, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.fo_bound.push(v.to_string());
        let r = f(self);
        self.fo_bound.pop();
        r
    }

    pub(crate) fn term(&mut self) -> PResult<Expr> {
        if self.is_kw("fun") {
            self.bump();
            self.expect(Tok::LParen)?;
            let x = self.ident("a variable name")?;
            self.expect(Tok::Colon)?;
            let ty = self.formula()?;
            self.expect(Tok::RParen)?;
            self.expect(Tok::FatArrow)?;
            let body = self.with_local(&x, |p| p.term())?;
            return Ok(Expr::Lam(x, ty, Box::new(body)));
        }
        if self.is_kw("gen") {
            self.bump();
            let v = self.ident("a first-order variable")?;
            self.expect(Tok::FatArrow)?;
            let body = self.with_fo(&v, |p| p.term())?;
            return Ok(Expr::Gen(v, Box::new(body)));
        }
        if self.is_kw("unpack") {
            self.bump();
            let s = self.term()?;
            self.expect_kw("as")?;
            self.expect(Tok::LParen)?;
            let v = self.ident("a first-order variable")?;
            self.expect(Tok::Comma)?;
            let x = self.ident("a variable name")?;
            self.expect(Tok::RParen)?;
            self.expect_kw("in")?;
            let body = self.with_fo(&v, |p| p.with_local(&x, |p| p.term()))?;
            return Ok(Expr::Unpack(Box::new(s), v, x, Box::new(body)));
        }
        self.application()
    }

    fn starts_argument(&self) -> bool {
        match self.peek() {
            Tok::LParen => true,
            Tok::Ident(s) => {
                !is_keyword(s) || matches!(s.as_str(), "case" | "pack" | "D" | "efq" | "F" | "inl" | "inr")
            }
            _ => false,
        }
    }

    fn application(&mut self) -> PResult<Expr> {
        let mut head = self.argument()?;
        loop {
            if *self.peek() == Tok::At {
                self.bump();
                let m = self.fo_term()?;
                head = Expr::Inst(Box::new(head), m);
            } else if self.starts_argument() {
                let arg = self.argument()?;
                head = Expr::App(Box::new(head), Box::new(arg));
            } else {
                return Ok(head);
            }
        }
    }

    fn argument(&mut self) -> PResult<Expr> {
        if self.is_kw("inl") || self.is_kw("inr") {
            let side = if self.is_kw("inl") { Side::Left } else { Side::Right };
            self.bump();
            let ann = self.bracketed_formula()?;
            let t = self.postfix()?;
            return Ok(Expr::Inj(side, Box::new(t), ann));
        }
        self.postfix()
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            let n = self.number("a projection index")?;
            let side = match n {
                0 => Side::Left,
                1 => Side::Right,
                _ => {
                    self.pos -= 1;
                    return Err(self.error("projection index 0 or 1"));
                }
            };
            t = Expr::Proj(Box::new(t), side);
        }
        Ok(t)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let a = self.term()?;
                if *self.peek() == Tok::Comma {
                    self.bump();
                    let b = self.term()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Expr::Pair(Box::new(a), Box::new(b)));
                }
                self.expect(Tok::RParen)?;
                Ok(a)
            }
            Tok::Ident(s) => match s.as_str() {
                "case" => {
                    self.bump();
                    let scrut = self.term()?;
                    self.expect_kw("of")?;
                    self.expect(Tok::LBrace)?;
                    self.expect_kw("inl")?;
                    let x = self.ident("a variable name")?;
                    self.expect(Tok::FatArrow)?;
                    let l = self.with_local(&x, |p| p.term())?;
                    self.expect(Tok::Bar)?;
                    self.expect_kw("inr")?;
                    let y = self.ident("a variable name")?;
                    self.expect(Tok::FatArrow)?;
                    let r = self.with_local(&y, |p| p.term())?;
                    self.expect(Tok::RBrace)?;
                    Ok(Expr::Case(Box::new(scrut), x, Box::new(l), y, Box::new(r)))
                }
                "pack" => {
                    self.bump();
                    let ann = self.bracketed_formula()?;
                    self.expect(Tok::LParen)?;
                    let m = self.fo_term()?;
                    self.expect(Tok::Comma)?;
                    let t = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Pack(m, Box::new(t), ann))
                }
                "D" => {
                    self.bump();
                    Ok(Expr::Axiom(self.bracketed_formula()?))
                }
                "efq" => {
                    self.bump();
                    let p = self.bracketed_formula()?;
                    self.expect(Tok::LParen)?;
                    let t = self.term()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Efq(p, Box::new(t)))
                }
                "F" => {
                    self.bump();
                    Ok(Expr::Falsity)
                }
                name if !is_keyword(name) => {
                    let name = name.to_string();
                    let e = if self.locals.contains(&name) || self.hyps.get(&name).is_some() {
                        Expr::Var(name)
                    } else if self.defs.contains(&name) {
                        Expr::Ref(name)
                    } else {
                        return Err(self.error("a bound variable, hypothesis or definition"));
                    };
                    self.bump();
                    Ok(e)
                }
                _ => Err(self.error("a proof term")),
            },
            _ => Err(self.error("a proof term")),
        }
    }

    // ---- files -------------------------------------------------------------

    fn symbol_list(&mut self, with_arity: bool) -> PResult<Vec<(String, usize)>> {
        let mut out = Vec::new();
        loop {
            let name = self.ident("a symbol name")?;
            let arity = if with_arity {
                self.expect(Tok::Slash)?;
                self.number("an arity")? as usize
            } else {
                0
            };
            out.push((name, arity));
            if *self.peek() != Tok::Comma {
                return Ok(out);
            }
            self.bump();
        }
    }

    fn def_name(&mut self) -> PResult<String> {
        let name = self.ident("a definition name")?;
        if !self.defs.contains(&name) {
            self.pos -= 1;
            return Err(self.error("the name of an earlier definition"));
        }
        Ok(name)
    }

    pub(crate) fn source_file(mut self) -> PResult<SourceFile> {
        let mut file = SourceFile::default();
        let mut mode_seen = false;
        loop {
            match self.peek().clone() {
                Tok::Eof => break,
                Tok::Directive(d) => {
                    self.bump();
                    match d.as_str() {
                        "mode" => {
                            if mode_seen {
                                self.pos -= 1;
                                return Err(self.error("at most one `#mode` declaration"));
                            }
                            file.mode = match self.peek() {
                                Tok::Ident(m) if m == "cd" => Mode::Cd,
                                Tok::Ident(m) if m == "il-bot" => Mode::IlBot,
                                _ => return Err(self.error("`cd` or `il-bot`")),
                            };
                            self.bump();
                            mode_seen = true;
                        }
                        "check" => file.directives.push(Directive::Check(self.def_name()?)),
                        "normalize" => file.directives.push(Directive::Normalize(self.def_name()?)),
                        "translate" => file.directives.push(Directive::Translate(self.def_name()?)),
                        "extract" => file.directives.push(Directive::Extract(self.def_name()?)),
                        "reject" => {
                            let name = self.def_name()?;
                            let kind = match self.peek() {
                                Tok::Ident(k) => ErrorKind::from_name(k),
                                _ => None,
                            };
                            let Some(kind) = kind else {
                                return Err(self.error("an error kind"));
                            };
                            self.bump();
                            file.directives.push(Directive::Reject(name, kind));
                        }
                        _ => {
                            self.pos -= 1;
                            return Err(
                                self.error("a directive (#mode, #check, #normalize, #translate, #extract, #reject)")
                            );
                        }
                    }
                }
                Tok::Ident(kw) => match kw.as_str() {
                    "const" => {
                        self.bump();
                        for (c, _) in self.symbol_list(false)? {
                            self.sig.add_constant(c);
                        }
                    }
                    "function" => {
                        self.bump();
                        for (f, n) in self.symbol_list(true)? {
                            self.sig.add_function(f, n);
                        }
                    }
                    "pred" => {
                        self.bump();
                        for (p, n) in self.symbol_list(true)? {
                            self.sig.add_predicate(p, n);
                        }
                    }
                    "var" => {
                        self.bump();
                        let name = self.ident("a hypothesis name")?;
                        self.expect(Tok::Colon)?;
                        let ty = self.formula()?;
                        if self.defs.contains(&name) || self.hyps.insert(name.clone(), ty).is_err() {
                            return Err(self.error("a fresh hypothesis name"));
                        }
                    }
                    "def" => {
                        self.bump();
                        let name = self.ident("a definition name")?;
                        if self.defs.contains(&name) || self.hyps.get(&name).is_some() {
                            self.pos -= 1;
                            return Err(self.error("a fresh definition name"));
                        }
                        self.expect(Tok::Colon)?;
                        let formula = self.formula()?;
                        self.expect(Tok::Define)?;
                        let body = self.term()?;
                        self.defs.push(name.clone());
                        file.defs.push(Def { name, formula, body });
                    }
                    _ => return Err(self.error("`def`, `var`, `const`, `function`, `pred` or a directive")),
                },
                _ => return Err(self.error("`def`, `var`, `const`, `function`, `pred` or a directive")),
            }
        }
        file.signature = self.sig;
        file.hypotheses = self.hyps;
        Ok(file)
    }
}

/// Parses a complete `.cd` source file.
pub fn parse(source: &str) -> Result<SourceFile, ParseError> {
    Parser::new(source, Signature::new(), Context::new())?.source_file()
}

/// Parses a single formula over `sig`.
pub fn parse_formula(source: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser::new(source, sig.clone(), Context::new())?;
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

/// Parses a single proof term over `sig`, with `hyps` in scope.
pub fn parse_expr(source: &str, sig: &Signature, hyps: &Context) -> Result<Expr, ParseError> {
    let mut p = Parser::new(source, sig.clone(), hyps.clone())?;
    let e = p.term()?;
    p.expect_eof()?;
    Ok(e)
}
