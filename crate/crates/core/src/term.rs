//! Simple types and lambda terms in eta-long beta-normal form.
//!
//! A [`Term`] is always `λx₁…xₙ. h(t₁,…,tₘ)` with `h(t₁,…,tₘ)` of base type.
//! Bound variables are nameless: [`Head::Bound`] carries a de Bruijn *level*,
//! i.e. the position of the binder counted from the outermost enclosing
//! binder of the whole context. A term "at depth `d`" lives under `d`
//! enclosing binders, so its own binders get levels `d, d+1, …`. Binder names
//! are display hints only and never take part in equality, ordering or
//! hashing, so alpha-equivalent terms compare equal.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub type Name = Arc<str>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Base(Name),
    Arrow(Box<Type>, Box<Type>),
}

impl Type {
    pub fn base(name: &str) -> Type {
        Type::Base(name.into())
    }

    pub fn arrow(arg: Type, result: Type) -> Type {
        Type::Arrow(Box::new(arg), Box::new(result))
    }

    /// Builds `a₁ → … → aₙ → result`.
    pub fn curried<I>(args: I, result: Type) -> Type
    where
        I: IntoIterator<Item = Type>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, a| Type::arrow(a, acc))
    }

    /// Splits `a₁ → … → aₙ → β` into `([a₁,…,aₙ], β)`.
    pub fn uncurry(&self) -> (Vec<&Type>, &Type) {
        let mut args = Vec::new();
        let mut t = self;
        while let Type::Arrow(a, r) = t {
            args.push(a.as_ref());
            t = r;
        }
        (args, t)
    }

    pub fn arity(&self) -> usize {
        self.uncurry().0.len()
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Type::Base(_))
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Base(n) => write!(f, "{n}"),
            Type::Arrow(a, r) => {
                if a.is_base() {
                    write!(f, "{a} -> {r}")
                } else {
                    write!(f, "({a}) -> {r}")
                }
            }
        }
    }
}

/// A lambda binder. Only the type is semantically relevant.
#[derive(Clone, Debug)]
pub struct Binder {
    pub name: Name,
    pub ty: Type,
}

impl Binder {
    pub fn new(name: &str, ty: Type) -> Binder {
        Binder {
            name: name.into(),
            ty,
        }
    }
}

impl PartialEq for Binder {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty
    }
}

impl Eq for Binder {}

impl Hash for Binder {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ty.hash(state)
    }
}

impl PartialOrd for Binder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Binder {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ty.cmp(&other.ty)
    }
}

/// A free variable: originally free variables of the input as well as
/// generalization variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: Name,
    pub ty: Type,
}

impl Var {
    pub fn new(name: &str, ty: Type) -> Var {
        Var {
            name: name.into(),
            ty,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Head {
    /// Bound variable, by de Bruijn level.
    Bound(usize),
    Const(Name),
    Free(Var),
}

impl Head {
    fn rank(&self) -> u8 {
        match self {
            Head::Bound(_) => 0,
            Head::Const(_) => 1,
            Head::Free(_) => 2,
        }
    }

    pub fn as_const(&self) -> Option<&Name> {
        match self {
            Head::Const(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_free(&self) -> Option<&Var> {
        match self {
            Head::Free(v) => Some(v),
            _ => None,
        }
    }
}

impl PartialOrd for Head {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Head {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Head::Bound(a), Head::Bound(b)) => a.cmp(b),
            (Head::Const(a), Head::Const(b)) => a.cmp(b),
            (Head::Free(a), Head::Free(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Head::Bound(l) => write!(f, "#{l}"),
            Head::Const(c) => write!(f, "{c}"),
            Head::Free(v) => write!(f, "{}", v.name),
        }
    }
}

/// `λ binders. head(args)` in eta-long beta-normal, flattened form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub binders: Vec<Binder>,
    pub head: Head,
    pub args: Vec<Term>,
}

/// Fixed total order: head symbol, arity, arguments, then binders.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.head
            .cmp(&other.head)
            .then_with(|| self.args.len().cmp(&other.args.len()))
            .then_with(|| self.args.cmp(&other.args))
            .then_with(|| self.binders.cmp(&other.binders))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Term {
    pub fn new(binders: Vec<Binder>, head: Head, args: Vec<Term>) -> Term {
        Term {
            binders,
            head,
            args,
        }
    }

    pub fn app(head: Head, args: Vec<Term>) -> Term {
        Term::new(Vec::new(), head, args)
    }

    pub fn constant(name: &str) -> Term {
        Term::app(Head::Const(name.into()), Vec::new())
    }

    pub fn var(var: Var) -> Term {
        Term::app(Head::Free(var), Vec::new())
    }

    /// Prepends binders: `λ binders. self`.
    pub fn abstracted(mut self, mut binders: Vec<Binder>) -> Term {
        binders.append(&mut self.binders);
        self.binders = binders;
        self
    }

    /// The body `h(t₁,…,tₘ)` without the leading binders.
    pub fn body(&self) -> Term {
        Term::app(self.head.clone(), self.args.clone())
    }

    pub fn head(&self) -> &Head {
        &self.head
    }

    pub fn is_abstraction(&self) -> bool {
        !self.binders.is_empty()
    }

    /// `|h(t₁,…,tₙ)| = 1 + Σ|tᵢ|`, `|λx.t| = 1 + |t|`.
    pub fn size(&self) -> usize {
        self.binders.len() + 1 + self.args.iter().map(Term::size).sum::<usize>()
    }

    /// `depth(h(t₁,…,tₙ)) = 1 + max depth(tᵢ)`, `depth(λx.t) = 1 + depth(t)`.
    pub fn depth(&self) -> usize {
        self.binders.len() + 1 + self.args.iter().map(Term::depth).max().unwrap_or(0)
    }

    /// Free variables in order of first occurrence (left to right, outside in).
    pub fn free_vars(&self) -> Vec<Var> {
        fn go(t: &Term, seen: &mut BTreeSet<Name>, out: &mut Vec<Var>) {
            if let Head::Free(v) = &t.head {
                if seen.insert(v.name.clone()) {
                    out.push(v.clone());
                }
            }
            for a in &t.args {
                go(a, seen, out);
            }
        }
        let mut out = Vec::new();
        go(self, &mut BTreeSet::new(), &mut out);
        out
    }

    /// Levels `< depth` (i.e. of the enclosing context) occurring in the term,
    /// which lives at `depth`.
    pub fn context_levels(&self, depth: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_context_levels(depth, &mut out);
        out
    }

    pub(crate) fn collect_context_levels(&self, depth: usize, out: &mut BTreeSet<usize>) {
        if let Head::Bound(l) = self.head {
            if l < depth {
                out.insert(l);
            }
        }
        for a in &self.args {
            a.collect_context_levels(depth, out);
        }
    }

    /// Levels of context variables in order of first occurrence.
    pub(crate) fn first_occurrences(&self, depth: usize, seen: &mut Vec<usize>) {
        if let Head::Bound(l) = self.head {
            if l < depth && !seen.contains(&l) {
                seen.push(l);
            }
        }
        for a in &self.args {
            a.first_occurrences(depth, seen);
        }
    }

    /// Eta-long form of the bound variable at `level` of type `ty`, for use
    /// at `depth`.
    pub fn eta_bound(level: usize, ty: &Type, depth: usize) -> Term {
        let (args, _) = ty.uncurry();
        let k = args.len();
        let binders: Vec<Binder> = args
            .iter()
            .enumerate()
            .map(|(i, a)| Binder::new(&format!("z{}", depth + i), (*a).clone()))
            .collect();
        let inner: Vec<Term> = args
            .iter()
            .enumerate()
            .map(|(i, a)| Term::eta_bound(depth + i, a, depth + k))
            .collect();
        Term::new(binders, Head::Bound(level), inner)
    }

    /// If this term (at `depth`) is the eta-long form of a context variable,
    /// returns its level.
    pub fn as_eta_bound(&self, depth: usize) -> Option<usize> {
        let k = self.binders.len();
        match self.head {
            Head::Bound(l) if l < depth && self.args.len() == k => {
                let ok = self
                    .args
                    .iter()
                    .enumerate()
                    .all(|(i, a)| a.as_eta_bound(depth + k) == Some(depth + i));
                ok.then_some(l)
            }
            _ => None,
        }
    }

    /// Eta-long `X(ȳ)` where `ȳ` are context levels with their types, at
    /// `depth`. The variable's type must start with the types of `ȳ`; any
    /// remaining argument types become fresh binders.
    pub fn var_app(var: &Var, context: &[(usize, Type)], depth: usize) -> Term {
        let (arg_tys, _) = var.ty.uncurry();
        let extra: Vec<Type> = arg_tys[context.len()..].iter().map(|t| (*t).clone()).collect();
        let k = extra.len();
        let mut args: Vec<Term> = context
            .iter()
            .map(|(l, ty)| Term::eta_bound(*l, ty, depth + k))
            .collect();
        args.extend(
            extra
                .iter()
                .enumerate()
                .map(|(i, ty)| Term::eta_bound(depth + i, ty, depth + k)),
        );
        let binders = extra
            .into_iter()
            .enumerate()
            .map(|(i, ty)| Binder::new(&format!("z{}", depth + i), ty))
            .collect();
        Term::new(binders, Head::Free(var.clone()), args)
    }

    /// Higher-order pattern test: every free variable is applied to pairwise
    /// distinct eta-long bound variables.
    pub fn is_pattern(&self) -> bool {
        self.is_pattern_at(0)
    }

    pub(crate) fn is_pattern_at(&self, depth: usize) -> bool {
        let inner = depth + self.binders.len();
        if let Head::Free(_) = self.head {
            let mut seen = BTreeSet::new();
            for a in &self.args {
                match a.as_eta_bound(inner) {
                    Some(l) if seen.insert(l) => {}
                    _ => return false,
                }
            }
            return true;
        }
        self.args.iter().all(|a| a.is_pattern_at(inner))
    }

    /// Renames free variables according to `rename`, leaving others intact.
    pub fn rename_free(&self, rename: &dyn Fn(&Var) -> Option<Var>) -> Term {
        let head = match &self.head {
            Head::Free(v) => Head::Free(rename(v).unwrap_or_else(|| v.clone())),
            h => h.clone(),
        };
        Term::new(
            self.binders.clone(),
            head,
            self.args.iter().map(|a| a.rename_free(rename)).collect(),
        )
    }

    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = vec![self];
        for a in &self.args {
            out.extend(a.subterms());
        }
        out
    }
}

/// Plain rendering with level-based bound variable names; see
/// [`crate::syntax`] for the user-facing printer.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_term(self, None))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> Type {
        Type::base("i")
    }

    #[test]
    fn size_depth_head() {
        let fab = Term::app(
            Head::Const("f".into()),
            vec![Term::constant("a"), Term::constant("b")],
        );
        assert_eq!(fab.size(), 3);
        let lam = Term::new(
            vec![Binder::new("x", i())],
            Head::Const("f".into()),
            vec![Term::app(Head::Bound(0), vec![])],
        );
        assert_eq!(lam.depth(), 3);
        let lam2 = Term::new(
            vec![Binder::new("x", i()), Binder::new("y", i())],
            Head::Const("f".into()),
            vec![Term::app(Head::Bound(0), vec![]), Term::app(Head::Bound(1), vec![])],
        );
        assert_eq!(lam2.head(), &Head::Const("f".into()));
    }

    #[test]
    fn alpha_equivalence_ignores_binder_names() {
        let a = Term::new(vec![Binder::new("x", i())], Head::Bound(0), vec![]);
        let b = Term::new(vec![Binder::new("y", i())], Head::Bound(0), vec![]);
        assert_eq!(a, b);
    }

    #[test]
    fn eta_bound_roundtrip() {
        let ty = Type::arrow(Type::arrow(i(), i()), i());
        let t = Term::eta_bound(0, &ty, 1);
        assert_eq!(t.binders.len(), 1);
        assert_eq!(t.as_eta_bound(1), Some(0));
        assert_eq!(t.as_eta_bound(0), None);
    }

    #[test]
    fn pattern_examples() {
        let x_ty = Type::arrow(i(), i());
        let xv = Var::new("X", x_ty.clone());
        let yv = Var::new("Y", i());
        let bx = || Term::app(Head::Bound(0), vec![]);
        let f = |args| Term::app(Head::Const("f".into()), args);
        // λx. f(X(x), Y)
        let p = Term::new(
            vec![Binder::new("x", i())],
            Head::Const("f".into()),
            vec![Term::app(Head::Free(xv.clone()), vec![bx()]), Term::var(yv.clone())],
        );
        assert!(p.is_pattern());
        // λx. f(X(X(x)), Y)
        let np = Term::new(
            vec![Binder::new("x", i())],
            Head::Const("f".into()),
            vec![
                Term::app(
                    Head::Free(xv.clone()),
                    vec![Term::app(Head::Free(xv.clone()), vec![bx()])],
                ),
                Term::var(yv),
            ],
        );
        assert!(!np.is_pattern());
        // λx,y. X(x, x)
        let x2 = Var::new("X", Type::curried([i(), i()], i()));
        let np2 = Term::new(
            vec![Binder::new("x", i()), Binder::new("y", i())],
            Head::Free(x2),
            vec![bx(), bx()],
        );
        assert!(!np2.is_pattern());
        // f(X(c), c)
        let np3 = f(vec![
            Term::app(Head::Free(xv), vec![Term::constant("c")]),
            Term::constant("c"),
        ]);
        assert!(!np3.is_pattern());
    }
}
