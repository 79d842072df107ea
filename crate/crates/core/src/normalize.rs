//! Conversion of arbitrary typed lambda terms into the canonical
//! representation: beta-normal, eta-long and flattened under A/AC symbols.
//!
//! Normalization is by evaluation: terms are evaluated into a semantic
//! domain with closures and read back type-directed, which performs all
//! beta steps and eta-expands every neutral term to long form.

use std::rc::Rc;

use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::subst::mk_app;
use crate::term::{Binder, Head, Name, Term, Type, Var};

/// A named lambda term as written by a user, not necessarily normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawTerm {
    /// Variable or constant occurrence, resolved by scope.
    Sym(Name),
    Lam(Name, Type, Box<RawTerm>),
    App(Box<RawTerm>, Box<RawTerm>),
}

impl RawTerm {
    pub fn sym(name: &str) -> RawTerm {
        RawTerm::Sym(name.into())
    }

    pub fn lam(name: &str, ty: Type, body: RawTerm) -> RawTerm {
        RawTerm::Lam(name.into(), ty, Box::new(body))
    }

    pub fn app(f: RawTerm, arg: RawTerm) -> RawTerm {
        RawTerm::App(Box::new(f), Box::new(arg))
    }

    /// `h(a₁,…,aₙ)`.
    pub fn apply(head: &str, args: Vec<RawTerm>) -> RawTerm {
        args.into_iter()
            .fold(RawTerm::sym(head), RawTerm::app)
    }
}

/// Scoped, typed intermediate form with de Bruijn indices.
#[derive(Clone, Debug)]
enum Tm {
    Idx(usize),
    Const(Name),
    Free(Var),
    Lam(Binder, Rc<Tm>),
    App(Rc<Tm>, Rc<Tm>),
}

fn scope(raw: &RawTerm, sig: &Signature, names: &mut Vec<(Name, Type)>) -> Result<(Tm, Type)> {
    match raw {
        RawTerm::Sym(n) => {
            if let Some(pos) = names.iter().rposition(|(b, _)| b == n) {
                let idx = names.len() - 1 - pos;
                return Ok((Tm::Idx(idx), names[pos].1.clone()));
            }
            if let Some(decl) = sig.constant(n) {
                return Ok((Tm::Const(n.clone()), decl.ty.clone()));
            }
            if let Some(v) = sig.var(n) {
                let ty = v.ty.clone();
                return Ok((Tm::Free(v), ty));
            }
            Err(Error::UnknownSymbol(n.to_string()))
        }
        RawTerm::Lam(n, ty, body) => {
            names.push((n.clone(), ty.clone()));
            let r = scope(body, sig, names);
            names.pop();
            let (b, bty) = r?;
            Ok((
                Tm::Lam(Binder { name: n.clone(), ty: ty.clone() }, Rc::new(b)),
                Type::arrow(ty.clone(), bty),
            ))
        }
        RawTerm::App(f, a) => {
            let (ft, fty) = scope(f, sig, names)?;
            let (at, aty) = scope(a, sig, names)?;
            match fty {
                Type::Arrow(dom, cod) if *dom == aty => Ok((Tm::App(Rc::new(ft), Rc::new(at)), *cod)),
                Type::Arrow(dom, _) => Err(Error::ty(format!(
                    "argument has type {aty}, expected {dom}"
                ))),
                other => Err(Error::ty(format!("cannot apply a term of base type {other}"))),
            }
        }
    }
}

#[derive(Clone)]
enum Val {
    /// Neutral: a rigid head with a spine of values. Bound heads are levels.
    Neutral(Head, Vec<Val>),
    Lam(Binder, Rc<Env>, Rc<Tm>),
}

#[derive(Default)]
struct Env {
    vals: Vec<Val>,
}

fn eval(tm: &Tm, env: &Rc<Env>) -> Val {
    match tm {
        Tm::Idx(i) => env.vals[env.vals.len() - 1 - i].clone(),
        Tm::Const(c) => Val::Neutral(Head::Const(c.clone()), Vec::new()),
        Tm::Free(v) => Val::Neutral(Head::Free(v.clone()), Vec::new()),
        Tm::Lam(b, body) => Val::Lam(b.clone(), env.clone(), body.clone()),
        Tm::App(f, a) => apply_val(eval(f, env), eval(a, env)),
    }
}

fn apply_val(f: Val, a: Val) -> Val {
    match f {
        Val::Neutral(h, mut spine) => {
            spine.push(a);
            Val::Neutral(h, spine)
        }
        Val::Lam(_, env, body) => {
            let mut vals = env.vals.clone();
            vals.push(a);
            eval(&body, &Rc::new(Env { vals }))
        }
    }
}

struct Readback<'a> {
    sig: &'a Signature,
    /// Types of all levels in scope.
    ctx: Vec<Type>,
}

impl Readback<'_> {
    fn head_type(&self, h: &Head) -> Type {
        match h {
            Head::Bound(l) => self.ctx[*l].clone(),
            Head::Const(c) => self.sig.constant(c).expect("scoped constant").ty.clone(),
            Head::Free(v) => v.ty.clone(),
        }
    }

    fn read(&mut self, v: Val, ty: &Type) -> Term {
        let (arg_tys, _) = ty.uncurry();
        let depth = self.ctx.len();
        let mut binders = Vec::with_capacity(arg_tys.len());
        let mut v = v;
        for (i, aty) in arg_tys.iter().enumerate() {
            let name = match &v {
                Val::Lam(b, _, _) => b.name.clone(),
                _ => format!("z{}", depth + i).into(),
            };
            binders.push(Binder { name, ty: (*aty).clone() });
            self.ctx.push((*aty).clone());
            v = apply_val(v, Val::Neutral(Head::Bound(depth + i), Vec::new()));
        }
        let body = match v {
            Val::Neutral(h, spine) => {
                let hty = self.head_type(&h);
                let (harg_tys, res) = hty.uncurry();
                let assoc = h.as_const().is_some_and(|c| self.sig.is_assoc(c));
                let args: Vec<Term> = if assoc {
                    let res = res.clone();
                    spine.into_iter().map(|a| self.read(a, &res)).collect()
                } else {
                    spine
                        .into_iter()
                        .zip(harg_tys)
                        .map(|(a, aty)| self.read(a, aty))
                        .collect()
                };
                mk_app(h, args, self.sig)
            }
            Val::Lam(..) => unreachable!("well-typed value of base type"),
        };
        self.ctx.truncate(depth);
        body.abstracted(binders)
    }
}

/// Normalizes a raw term: scope resolution, type checking, beta reduction,
/// eta expansion to long form and flattening of A/AC symbols.
pub fn normalize(raw: &RawTerm, sig: &Signature) -> Result<Term> {
    let (tm, ty) = scope(raw, sig, &mut Vec::new())?;
    let v = eval(&tm, &Rc::new(Env::default()));
    Ok(Readback { sig, ctx: Vec::new() }.read(v, &ty))
}

fn to_tm(t: &Term, depth: usize) -> Tm {
    let inner = depth + t.binders.len();
    let head = match &t.head {
        Head::Bound(l) => Tm::Idx(inner - 1 - l),
        Head::Const(c) => Tm::Const(c.clone()),
        Head::Free(v) => Tm::Free(v.clone()),
    };
    let body = t
        .args
        .iter()
        .fold(head, |acc, a| Tm::App(Rc::new(acc), Rc::new(to_tm(a, inner))));
    t.binders
        .iter()
        .rev()
        .fold(body, |acc, b| Tm::Lam(b.clone(), Rc::new(acc)))
}

/// Re-normalizes a closed term (beta, eta-long, flattening). Idempotent.
pub fn normalize_term(t: &Term, sig: &Signature) -> Result<Term> {
    let ty = type_of(t, sig)?;
    let v = eval(&to_tm(t, 0), &Rc::new(Env::default()));
    Ok(Readback { sig, ctx: Vec::new() }.read(v, &ty))
}

/// Type of a closed term, checking well-typedness and full application.
pub fn type_of(t: &Term, sig: &Signature) -> Result<Type> {
    type_in(t, sig, &mut Vec::new())
}

/// Type of a term living under the context `ctx` (types of levels).
pub fn type_in(t: &Term, sig: &Signature, ctx: &mut Vec<Type>) -> Result<Type> {
    infer(t, sig, &mut ctx.iter().collect())
}

fn infer<'a>(t: &'a Term, sig: &'a Signature, ctx: &mut Vec<&'a Type>) -> Result<Type> {
    let depth = ctx.len();
    ctx.extend(t.binders.iter().map(|b| &b.ty));
    let r = head_type(&t.head, sig, ctx).and_then(|hty| {
        check_args(t, sig, ctx, hty)?;
        Ok(result_type(hty))
    });
    ctx.truncate(depth);
    let res = r?.clone();
    Ok(Type::curried(t.binders.iter().map(|b| b.ty.clone()), res))
}

fn head_type<'a>(head: &'a Head, sig: &'a Signature, ctx: &[&'a Type]) -> Result<&'a Type> {
    match head {
        Head::Bound(l) => ctx
            .get(*l)
            .copied()
            .ok_or_else(|| Error::ty(format!("unbound level {l}"))),
        Head::Const(c) => sig
            .constant(c)
            .map(|d| &d.ty)
            .ok_or_else(|| Error::UnknownSymbol(c.to_string())),
        Head::Free(v) => Ok(&v.ty),
    }
}

fn result_type(mut ty: &Type) -> &Type {
    while let Type::Arrow(_, r) = ty {
        ty = r;
    }
    ty
}

/// Checks that the arguments of `t` fit the head type `hty` and that the
/// head ends up fully applied. The binders of `t` are already in `ctx`.
fn check_args<'a>(
    t: &'a Term,
    sig: &'a Signature,
    ctx: &mut Vec<&'a Type>,
    hty: &'a Type,
) -> Result<()> {
    if t.head.as_const().is_some_and(|c| sig.is_assoc(c)) {
        if t.args.len() < 2 {
            return Err(Error::ty(format!("{} applied to fewer than two arguments", t.head)));
        }
        let res = result_type(hty);
        for a in &t.args {
            if !check(a, sig, ctx, res)? {
                let aty = infer(a, sig, ctx)?;
                return Err(Error::ty(format!("argument of {} has type {aty}", t.head)));
            }
        }
        return Ok(());
    }
    let mut ty = hty;
    for a in &t.args {
        let Type::Arrow(expected, rest) = ty else {
            return Err(arity_error(t, hty));
        };
        if !check(a, sig, ctx, expected)? {
            let aty = infer(a, sig, ctx)?;
            return Err(Error::ty(format!("argument has type {aty}, expected {expected}")));
        }
        ty = rest;
    }
    if ty.is_base() {
        Ok(())
    } else {
        Err(arity_error(t, hty))
    }
}

fn arity_error(t: &Term, hty: &Type) -> Error {
    Error::ty(format!(
        "{} expects {} arguments, got {}",
        t.head,
        hty.arity(),
        t.args.len()
    ))
}

/// Whether the well-typed term `t` has type `expected`; ill-typed
/// subterms are errors.
fn check<'a>(t: &'a Term, sig: &'a Signature, ctx: &mut Vec<&'a Type>, expected: &Type) -> Result<bool> {
    let depth = ctx.len();
    let mut want = expected;
    let mut fits = true;
    for b in &t.binders {
        ctx.push(&b.ty);
        match want {
            Type::Arrow(a, r) if **a == b.ty => want = r,
            _ => fits = false,
        }
    }
    let r = head_type(&t.head, sig, ctx).and_then(|hty| {
        check_args(t, sig, ctx, hty)?;
        Ok(fits && result_type(hty) == want)
    });
    ctx.truncate(depth);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Axioms;

    fn i() -> Type {
        Type::base("i")
    }

    fn sig() -> Signature {
        Signature::new()
            .with_const("f", Type::curried([i(), i()], i()), Axioms::A)
            .with_const("g", Type::arrow(i(), i()), Axioms::FREE)
            .with_const("a", i(), Axioms::FREE)
            .with_const("b", i(), Axioms::FREE)
            .with_const("c", i(), Axioms::FREE)
    }

    #[test]
    fn flattens_associative_symbols() {
        let raw = RawTerm::apply(
            "f",
            vec![
                RawTerm::sym("a"),
                RawTerm::apply("f", vec![RawTerm::sym("b"), RawTerm::sym("c")]),
            ],
        );
        let t = normalize(&raw, &sig()).unwrap();
        assert_eq!(t.args.len(), 3);
        assert_eq!(t.to_string(), "f(a,b,c)");
    }

    #[test]
    fn renormalizing_keeps_flattened_arguments() {
        let raw = RawTerm::apply(
            "f",
            vec![
                RawTerm::apply("f", vec![RawTerm::sym("a"), RawTerm::sym("b")]),
                RawTerm::apply("g", vec![RawTerm::sym("c")]),
            ],
        );
        let t = normalize(&raw, &sig()).unwrap();
        assert_eq!(normalize_term(&t, &sig()).unwrap().to_string(), "f(a,b,g(c))");
    }

    #[test]
    fn constant_is_already_normal() {
        let t = normalize(&RawTerm::sym("c"), &sig()).unwrap();
        assert_eq!(t, Term::constant("c"));
    }

    #[test]
    fn single_beta_step() {
        let raw = RawTerm::app(
            RawTerm::lam("x", i(), RawTerm::apply("g", vec![RawTerm::sym("x")])),
            RawTerm::sym("a"),
        );
        let t = normalize(&raw, &sig()).unwrap();
        assert_eq!(t.to_string(), "g(a)");
    }

    #[test]
    fn eta_expands_to_long_form() {
        let t = normalize(&RawTerm::sym("g"), &sig()).unwrap();
        assert_eq!(t.binders.len(), 1);
        assert_eq!(t.args[0].head, Head::Bound(0));
        assert_eq!(normalize_term(&t, &sig()).unwrap(), t);
    }

    #[test]
    fn type_errors_are_reported() {
        let raw = RawTerm::apply("a", vec![RawTerm::sym("b")]);
        assert!(matches!(normalize(&raw, &sig()), Err(Error::Type(_))));
        assert!(matches!(
            normalize(&RawTerm::sym("nope"), &sig()),
            Err(Error::UnknownSymbol(_))
        ));
    }
}
