//! Concrete syntax: a lexer and parser for problem files, types and terms,
//! and the printers used for display and for round-tripping.
//!
//! ```text
//! sig:
//!   const f : i -> i -> i [A]
//!   const a : i
//!   var X : i -> i
//! left:  \x:i, y:i. f(X(x), a)
//! right: \x:i, y:i. f(X(y), a)
//! ```
//!
//! Identifiers starting with an uppercase letter denote free variables. An
//! undeclared free variable gets its type from the position it occurs in.
//! Everything else is a bound variable or a declared constant. `#` starts a
//! comment that runs to the end of the line.

use std::collections::BTreeSet;

use crate::canon::canonical;
use crate::error::{Error, Result};
use crate::normalize::{normalize, RawTerm};
use crate::signature::{Axioms, Signature};
use crate::term::{Head, Term, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Dot,
    Lambda,
    Arrow,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Dot => write!(f, "`.`"),
            Tok::Lambda => write!(f, "lambda"),
            Tok::Arrow => write!(f, "`->`"),
        }
    }
}

fn parse_err(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() && c != 'λ' || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() && c != 'λ' || c == '_' || c == '\''
}

/// Lexes `text`, which starts at `start` in the enclosing file.
fn lex(text: &str, start: Pos, out: &mut Vec<(Tok, Pos)>) -> Result<()> {
    let mut line = start.line;
    let mut column = start.column;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        let pos = Pos { line, column };
        column += 1;
        let tok = match c {
            '\n' => {
                line += 1;
                column = 1;
                continue;
            }
            '#' => {
                while chars.peek().is_some_and(|c| *c != '\n') {
                    chars.next();
                }
                continue;
            }
            c if c.is_whitespace() => continue,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            '.' => Tok::Dot,
            '\\' | 'λ' => Tok::Lambda,
            '-' if chars.peek() == Some(&'>') => {
                chars.next();
                column += 1;
                Tok::Arrow
            }
            '→' => Tok::Arrow,
            c if is_ident_start(c) => {
                let mut s = String::from(c);
                while let Some(&n) = chars.peek() {
                    if !is_ident_char(n) {
                        break;
                    }
                    s.push(n);
                    chars.next();
                    column += 1;
                }
                Tok::Ident(s)
            }
            other => return Err(parse_err(pos, format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
    }
    Ok(())
}

#[derive(Clone, Debug)]
enum Ast {
    Ident(String, Pos),
    Lam(Vec<(String, Type)>, Box<Ast>),
    App(Box<Ast>, Vec<Ast>, Pos),
}

impl Ast {
    fn pos(&self) -> Pos {
        match self {
            Ast::Ident(_, p) | Ast::App(_, _, p) => *p,
            Ast::Lam(_, body) => body.pos(),
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn new(toks: Vec<(Tok, Pos)>, end: Pos) -> Parser {
        Parser { toks, at: 0, end }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<()> {
        match self.next() {
            Some((t, _)) if &t == tok => Ok(()),
            Some((t, p)) => Err(parse_err(p, format!("expected {tok}, found {t}"))),
            None => Err(parse_err(self.end, format!("expected {tok}, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        match self.next() {
            Some((Tok::Ident(s), p)) => Ok((s, p)),
            Some((t, p)) => Err(parse_err(p, format!("expected identifier, found {t}"))),
            None => Err(parse_err(self.end, "expected identifier, found end of input")),
        }
    }

    fn ty(&mut self) -> Result<Type> {
        let arg = if self.eat(&Tok::LParen) {
            let t = self.ty()?;
            self.expect(&Tok::RParen)?;
            t
        } else {
            Type::base(&self.ident()?.0)
        };
        if self.eat(&Tok::Arrow) {
            Ok(Type::arrow(arg, self.ty()?))
        } else {
            Ok(arg)
        }
    }

    fn term(&mut self) -> Result<Ast> {
        if self.eat(&Tok::Lambda) {
            let mut binders = Vec::new();
            loop {
                let (name, p) = self.ident()?;
                if name.starts_with(char::is_uppercase) {
                    return Err(parse_err(p, format!("bound variable `{name}` must be lowercase")));
                }
                self.expect(&Tok::Colon)?;
                binders.push((name, self.ty()?));
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(&Tok::Dot)?;
            return Ok(Ast::Lam(binders, Box::new(self.term()?)));
        }
        let pos = self.pos();
        let mut t = if self.eat(&Tok::LParen) {
            let t = self.term()?;
            self.expect(&Tok::RParen)?;
            t
        } else {
            let (name, p) = self.ident()?;
            Ast::Ident(name, p)
        };
        while self.eat(&Tok::LParen) {
            let mut args = vec![self.term()?];
            while self.eat(&Tok::Comma) {
                args.push(self.term()?);
            }
            self.expect(&Tok::RParen)?;
            t = Ast::App(Box::new(t), args, pos);
        }
        Ok(t)
    }
}

fn type_err(pos: Pos, message: impl std::fmt::Display) -> Error {
    Error::Type(format!("{}:{}: {message}", pos.line, pos.column))
}

/// Resolves identifiers and infers types of undeclared free variables.
struct Elab<'a> {
    sig: &'a mut Signature,
    scope: Vec<(String, Type)>,
}

impl Elab<'_> {
    fn lookup(&self, name: &str) -> Option<Type> {
        if let Some((_, t)) = self.scope.iter().rev().find(|(n, _)| n == name) {
            return Some(t.clone());
        }
        if let Some(d) = self.sig.constant(name) {
            return Some(d.ty.clone());
        }
        self.sig.var(name).map(|v| v.ty)
    }

    fn undeclared_var(&self, ast: &Ast) -> Option<String> {
        match ast {
            Ast::Ident(n, _) if n.starts_with(char::is_uppercase) && self.lookup(n).is_none() => {
                Some(n.clone())
            }
            _ => None,
        }
    }

    fn declare(&mut self, name: &str, ty: Option<&Type>, pos: Pos) -> Result<Type> {
        let ty = ty.ok_or_else(|| {
            type_err(pos, format!("cannot infer the type of free variable `{name}`"))
        })?;
        self.sig.add_var(name, ty.clone());
        Ok(ty.clone())
    }

    fn check(&mut self, ast: &Ast, expected: &Type) -> Result<RawTerm> {
        let (raw, ty) = self.synth(ast, Some(expected))?;
        if &ty != expected {
            return Err(type_err(ast.pos(), format!("expected type {expected}, found {ty}")));
        }
        Ok(raw)
    }

    fn synth(&mut self, ast: &Ast, expected: Option<&Type>) -> Result<(RawTerm, Type)> {
        match ast {
            Ast::Ident(name, pos) => {
                let ty = match self.lookup(name) {
                    Some(t) => t,
                    None if name.starts_with(char::is_uppercase) => {
                        self.declare(name, expected, *pos)?
                    }
                    None => return Err(parse_err(*pos, format!("unknown symbol `{name}`"))),
                };
                Ok((RawTerm::sym(name), ty))
            }
            Ast::Lam(binders, body) => {
                let mut body_expected = expected.cloned();
                for (_, bty) in binders {
                    body_expected = match body_expected {
                        Some(Type::Arrow(a, r)) if *a == *bty => Some(*r),
                        _ => None,
                    };
                }
                let mark = self.scope.len();
                self.scope.extend(binders.iter().cloned());
                let r = self.synth(body, body_expected.as_ref());
                self.scope.truncate(mark);
                let (mut raw, mut ty) = r?;
                for (n, bty) in binders.iter().rev() {
                    raw = RawTerm::lam(n, bty.clone(), raw);
                    ty = Type::arrow(bty.clone(), ty);
                }
                Ok((raw, ty))
            }
            Ast::App(head, args, pos) => {
                if let Some(name) = self.undeclared_var(head) {
                    let mut raws = Vec::with_capacity(args.len());
                    let mut tys = Vec::with_capacity(args.len());
                    for a in args {
                        let (r, t) = self.synth(a, None)?;
                        raws.push(r);
                        tys.push(t);
                    }
                    let result = expected.ok_or_else(|| {
                        type_err(*pos, format!("cannot infer the type of free variable `{name}`"))
                    })?;
                    // An expected arrow type would mean a partial application.
                    let ty = Type::curried(tys, result.clone());
                    self.declare(&name, Some(&ty), *pos)?;
                    return Ok((RawTerm::apply(&name, raws), result.clone()));
                }
                let (head_raw, hty) = self.synth(head, None)?;
                let assoc = match &**head {
                    Ast::Ident(n, _) => {
                        self.sig.constant(n).is_some_and(|d| d.axioms.assoc)
                            && !self.scope.iter().any(|(b, _)| b == n)
                    }
                    _ => false,
                };
                if assoc && args.len() > 2 {
                    let elem = hty.uncurry().1.clone();
                    let mut raws = Vec::with_capacity(args.len());
                    for a in args {
                        raws.push(self.check(a, &elem)?);
                    }
                    let last = raws.pop().expect("at least three arguments");
                    let nested = raws.into_iter().rev().fold(last, |acc, r| {
                        RawTerm::app(RawTerm::app(head_raw.clone(), r), acc)
                    });
                    return Ok((nested, elem));
                }
                let mut raw = head_raw;
                let mut ty = hty;
                for a in args {
                    let (dom, cod) = match ty {
                        Type::Arrow(d, c) => (*d, *c),
                        other => {
                            return Err(type_err(
                                a.pos(),
                                format!("too many arguments: head has type {other}"),
                            ))
                        }
                    };
                    raw = RawTerm::app(raw, self.check(a, &dom)?);
                    ty = cod;
                }
                Ok((raw, ty))
            }
        }
    }
}

fn end_of(text: &str, start: Pos) -> Pos {
    let mut p = start;
    for c in text.chars() {
        if c == '\n' {
            p.line += 1;
            p.column = 1;
        } else {
            p.column += 1;
        }
    }
    p
}

fn parser_for(text: &str) -> Result<Parser> {
    let start = Pos { line: 1, column: 1 };
    let mut toks = Vec::new();
    lex(text, start, &mut toks)?;
    Ok(Parser::new(toks, end_of(text, start)))
}

fn finish(p: &Parser) -> Result<()> {
    match p.toks.get(p.at) {
        Some((t, pos)) => Err(parse_err(*pos, format!("unexpected {t}"))),
        None => Ok(()),
    }
}

/// Parses a type such as `i -> (i -> i) -> i`.
pub fn parse_type(text: &str) -> Result<Type> {
    let mut p = parser_for(text)?;
    let t = p.ty()?;
    finish(&p)?;
    Ok(t)
}

/// Parses and normalizes a single closed term. Undeclared free variables
/// are added to `sig` with their inferred types.
pub fn parse_term(text: &str, sig: &mut Signature) -> Result<Term> {
    let mut p = parser_for(text)?;
    if p.at_end() {
        return Err(parse_err(p.end, "expected a term"));
    }
    let ast = p.term()?;
    finish(&p)?;
    let (raw, _) = Elab { sig, scope: Vec::new() }.synth(&ast, None)?;
    normalize(&raw, sig)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Sig,
    Left,
    Right,
}

fn parse_declarations(p: &mut Parser, sig: &mut Signature) -> Result<()> {
    while !p.at_end() {
        if p.eat(&Tok::Semi) {
            continue;
        }
        let (kw, kw_pos) = p.ident()?;
        match kw.as_str() {
            "const" => {
                let (name, pos) = p.ident()?;
                if name.starts_with(char::is_uppercase) {
                    return Err(parse_err(pos, format!("constant `{name}` must be lowercase")));
                }
                p.expect(&Tok::Colon)?;
                let ty = p.ty()?;
                let mut axioms = Axioms::FREE;
                if p.eat(&Tok::LBracket) {
                    let (tag, tag_pos) = p.ident()?;
                    axioms = match tag.as_str() {
                        "A" => Axioms::A,
                        "C" => Axioms::C,
                        "AC" | "CA" => Axioms::AC,
                        other => {
                            return Err(parse_err(tag_pos, format!("unknown axiom tag `{other}`")))
                        }
                    };
                    p.expect(&Tok::RBracket)?;
                }
                sig.add_const(&name, ty, axioms).map_err(|e| match e {
                    Error::AxiomShape { .. } => parse_err(pos, e.to_string()),
                    other => other,
                })?;
            }
            "var" => {
                let (name, pos) = p.ident()?;
                if !name.starts_with(char::is_uppercase) {
                    return Err(parse_err(pos, format!("free variable `{name}` must be uppercase")));
                }
                p.expect(&Tok::Colon)?;
                let ty = p.ty()?;
                sig.add_var(&name, ty);
            }
            _ => {
                return Err(parse_err(
                    kw_pos,
                    format!("expected `const` or `var`, found `{kw}`"),
                ))
            }
        }
    }
    Ok(())
}

/// Parses a problem file into its signature and the two normalized terms.
pub fn parse_problem(text: &str) -> Result<(Signature, Term, Term)> {
    let mut sections: Vec<(Section, Vec<(Tok, Pos)>, Pos)> = Vec::new();
    let mut preamble_end = Pos { line: 1, column: 1 };
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let indent = line.len() - line.trim_start().len();
        let rest = &line[indent..];
        let label = [("sig:", Section::Sig), ("left:", Section::Left), ("right:", Section::Right)]
            .into_iter()
            .find(|(l, _)| rest.starts_with(l));
        let (content, col) = match label {
            Some((l, s)) => {
                let label_pos = Pos {
                    line: line_no,
                    column: line[..indent].chars().count() + 1,
                };
                if sections.iter().any(|(t, _, _)| *t == s) {
                    return Err(parse_err(label_pos, format!("duplicate section `{l}`")));
                }
                sections.push((s, Vec::new(), label_pos));
                (&rest[l.len()..], line[..indent + l.len()].chars().count() + 1)
            }
            None => (line, 1),
        };
        let pos = Pos {
            line: line_no,
            column: col,
        };
        match sections.last_mut() {
            Some((_, toks, _)) => lex(content, pos, toks)?,
            None => {
                let mut stray = Vec::new();
                lex(content, pos, &mut stray)?;
                if let Some((t, p)) = stray.first() {
                    return Err(parse_err(*p, format!("unexpected {t} outside of a section")));
                }
            }
        }
        preamble_end = Pos {
            line: line_no,
            column: line.chars().count() + 1,
        };
    }
    let mut sig = Signature::new();
    let mut asts: [Option<Ast>; 2] = [None, None];
    for (section, toks, label_pos) in sections {
        let end = toks.last().map_or(label_pos, |(_, p)| *p);
        let mut p = Parser::new(toks, end);
        match section {
            Section::Sig => parse_declarations(&mut p, &mut sig)?,
            Section::Left | Section::Right => {
                if p.at_end() {
                    return Err(parse_err(label_pos, "empty term section"));
                }
                let ast = p.term()?;
                finish(&p)?;
                asts[(section == Section::Right) as usize] = Some(ast);
            }
        }
    }
    let [left, right] = asts;
    let left = left.ok_or_else(|| parse_err(preamble_end, "missing `left:` section"))?;
    let right = right.ok_or_else(|| parse_err(preamble_end, "missing `right:` section"))?;
    let (lraw, lty) = Elab {
        sig: &mut sig,
        scope: Vec::new(),
    }
    .synth(&left, None)?;
    let (rraw, rty) = Elab {
        sig: &mut sig,
        scope: Vec::new(),
    }
    .synth(&right, Some(&lty))?;
    if lty != rty {
        return Err(type_err(
            right.pos(),
            format!("left has type {lty} but right has type {rty}"),
        ));
    }
    let l = normalize(&lraw, &sig)?;
    let r = normalize(&rraw, &sig)?;
    Ok((sig, l, r))
}

struct Printer {
    typed: bool,
    reserved: BTreeSet<String>,
    names: Vec<String>,
}

impl Printer {
    fn new(t: &Term, typed: bool) -> Printer {
        let mut reserved = BTreeSet::new();
        for s in t.subterms() {
            match &s.head {
                Head::Const(c) => {
                    reserved.insert(c.to_string());
                }
                Head::Free(v) => {
                    reserved.insert(v.name.to_string());
                }
                Head::Bound(_) => {}
            }
        }
        Printer {
            typed,
            reserved,
            names: Vec::new(),
        }
    }

    fn fresh(&self, hint: &str) -> String {
        let base = if hint.is_empty() || hint.starts_with(char::is_uppercase) {
            "x"
        } else {
            hint
        };
        let taken = |n: &str| self.reserved.contains(n) || self.names.iter().any(|m| m == n);
        if !taken(base) {
            return base.to_string();
        }
        let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
        let stem = if stem.is_empty() { "x" } else { stem };
        (1..)
            .map(|i| format!("{stem}{i}"))
            .find(|n| !taken(n))
            .expect("unbounded supply of names")
    }

    fn term(&mut self, t: &Term, out: &mut String) {
        let depth = self.names.len();
        if !self.typed {
            if let Some(l) = t.as_eta_bound(depth) {
                out.push_str(&self.names[l]);
                return;
            }
        }
        if !t.binders.is_empty() {
            out.push_str(if self.typed { "\\" } else { "λ" });
            for (i, b) in t.binders.iter().enumerate() {
                let name = self.fresh(&b.name);
                if i > 0 {
                    out.push_str(if self.typed { ", " } else { "," });
                }
                out.push_str(&name);
                if self.typed {
                    if b.ty.is_base() {
                        out.push_str(&format!(":{}", b.ty));
                    } else {
                        out.push_str(&format!(":({})", b.ty));
                    }
                }
                self.names.push(name);
            }
            out.push_str(if self.typed { ". " } else { "." });
        }
        match &t.head {
            Head::Bound(l) => match self.names.get(*l) {
                Some(n) => out.push_str(n),
                None => out.push_str(&format!("#{l}")),
            },
            h => out.push_str(&h.to_string()),
        }
        if !t.args.is_empty() {
            out.push('(');
            for (i, a) in t.args.iter().enumerate() {
                if i > 0 {
                    out.push_str(if self.typed { ", " } else { "," });
                }
                self.term(a, out);
            }
            out.push(')');
        }
        self.names.truncate(depth);
    }
}

/// Display form, e.g. `λx,y.f(Y0(x,y),Y1(x,y))`. With a signature the
/// arguments of C and AC symbols are printed in canonical order.
pub fn print_term(t: &Term, sig: Option<&Signature>) -> String {
    let canon;
    let t = match sig {
        Some(sig) => {
            canon = canonical(t, sig);
            &canon
        }
        None => t,
    };
    let mut out = String::new();
    Printer::new(t, false).term(t, &mut out);
    out
}

/// Source form with typed binders, accepted by [`parse_term`].
pub fn print_source(t: &Term) -> String {
    let mut out = String::new();
    Printer::new(t, true).term(t, &mut out);
    out
}

/// Renders a whole problem file that [`parse_problem`] reads back.
pub fn print_problem(sig: &Signature, left: &Term, right: &Term) -> String {
    let mut out = String::from("sig:\n");
    for (name, decl) in sig.consts() {
        let tag = match (decl.axioms.assoc, decl.axioms.comm) {
            (false, false) => String::new(),
            _ => format!(" {}", decl.axioms),
        };
        out.push_str(&format!("  const {name} : {}{tag}\n", decl.ty));
    }
    for (name, ty) in sig.vars() {
        out.push_str(&format!("  var {name} : {ty}\n"));
    }
    out.push_str(&format!("left: {}\n", print_source(left)));
    out.push_str(&format!("right: {}\n", print_source(right)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLAT: &str = "sig: const f : i -> i -> i [A]\n  const a : i; const b : i; const c : i\nleft: f(a, f(b, c))\nright: f(f(a, b), c)\n";

    #[test]
    fn parses_and_flattens() {
        let (_, l, r) = parse_problem(FLAT).unwrap();
        assert_eq!(l.to_string(), "f(a,b,c)");
        assert_eq!(l, r);
    }

    #[test]
    fn empty_input_is_a_parse_error() {
        assert!(matches!(parse_problem(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_problem("sig: const f : i -> i\nleft: f(a)\nright: f(a)").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 9)),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_problem("sig: const f : i -> i [C]\nleft: f\nright: f").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn infers_types_of_free_variables() {
        let text = "sig: const g : i -> i -> i\nleft: \\x:i, y:i. g(Z(x, x, y), Z(x, y, y))\nright: \\x:i, y:i. g(x, y)";
        let (sig, l, _) = parse_problem(text).unwrap();
        assert_eq!(sig.var("Z").unwrap().ty.arity(), 3);
        assert!(!l.is_pattern());
        assert_eq!(l.to_string(), "λx,y.g(Z(x,x,y),Z(x,y,y))");
    }

    #[test]
    fn source_printer_round_trips() {
        let text = "sig: const f : i -> i -> i [AC]\n const h : (i -> i) -> i\n\
                    left: \\x:i, x:i. f(h(\\y:i. f(y, x)), X(x))\nright: \\u:i, v:i. X(u)";
        let (mut sig, l, r) = parse_problem(text).unwrap();
        for t in [&l, &r] {
            let back = parse_term(&print_source(t), &mut sig).unwrap();
            assert_eq!(&back, t);
        }
        let (_, l2, r2) = parse_problem(&print_problem(&sig, &l, &r)).unwrap();
        assert_eq!((l2, r2), (l, r));
    }

    #[test]
    fn canonical_printing_sorts_commutative_arguments() {
        let mut sig = Signature::new()
            .with_const("k", Type::curried([Type::base("i"), Type::base("i")], Type::base("i")), Axioms::C)
            .with_const("a", Type::base("i"), Axioms::FREE)
            .with_const("b", Type::base("i"), Axioms::FREE);
        let t = parse_term("k(b, a)", &mut sig).unwrap();
        assert_eq!(print_term(&t, None), "k(b,a)");
        assert_eq!(print_term(&t, Some(&sig)), "k(a,b)");
    }
}
