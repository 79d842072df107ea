//! Substitutions and hereditary instantiation.
//!
//! Instantiation works on de Bruijn levels. A source term living under `n`
//! binders is read through an environment of `n` [`Slot`]s, one per source
//! level, saying what that level becomes at the destination: another level,
//! a term to be beta-reduced in, or nothing at all. Every beta-redex created
//! by a substitution is contracted on the spot, so results stay in
//! eta-long beta-normal form. A/AC symbols are re-flattened on the way.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

use crate::signature::Signature;
use crate::term::{Head, Term, Var};

/// Builds `h(args)`, flattening nested applications of an associative
/// constant and collapsing a unary application of one to its argument.
pub fn mk_app(head: Head, args: Vec<Term>, sig: &Signature) -> Term {
    if let Head::Const(c) = &head {
        if sig.is_assoc(c) {
            if args.len() == 1 {
                return args.into_iter().next().expect("one argument");
            }
            if args.iter().any(|a| a.binders.is_empty() && &a.head == &head) {
                let mut flat = Vec::with_capacity(args.len() + 2);
                for a in args {
                    if a.binders.is_empty() && a.head == head {
                        flat.extend(a.args);
                    } else {
                        flat.push(a);
                    }
                }
                return Term::app(head, flat);
            }
        }
    }
    Term::app(head, args)
}

#[derive(Clone, Debug)]
pub(crate) enum Slot {
    Level(usize),
    /// A term living at the given depth, to be applied to the arguments of
    /// the occurrence.
    Term(Rc<Term>, usize),
    Missing,
}

#[derive(Clone, Copy)]
enum Mode {
    /// Right-hand sides are not instantiated again.
    Parallel,
    /// Right-hand sides are themselves resolved (triangular form).
    Triangular,
}

pub(crate) struct Inst<'a> {
    sig: Option<&'a Signature>,
    subst: Option<(&'a Substitution, Mode)>,
}

impl Inst<'_> {
    fn build(&self, head: Head, args: Vec<Term>) -> Term {
        match self.sig {
            Some(sig) => mk_app(head, args, sig),
            None => Term::app(head, args),
        }
    }

    /// Instantiates `t` (at source depth `env.len()`) to destination depth `dst`.
    pub(crate) fn run(&self, t: &Term, env: &mut Vec<Slot>, dst: usize) -> Term {
        let mark = env.len();
        let k = t.binders.len();
        env.extend((0..k).map(|i| Slot::Level(dst + i)));
        let inner = dst + k;
        let args: Vec<Term> = t.args.iter().map(|a| self.run(a, env, inner)).collect();
        let body = match &t.head {
            Head::Bound(l) => match &env[*l] {
                Slot::Level(n) => Term::app(Head::Bound(*n), args),
                Slot::Term(u, ud) => {
                    let (u, ud) = (u.clone(), *ud);
                    let inner_inst = Inst {
                        sig: self.sig,
                        subst: None,
                    };
                    inner_inst.beta(&u, ud, args, inner)
                }
                Slot::Missing => panic!("instantiation hit an unmapped level {l}"),
            },
            Head::Free(v) => match self.subst.and_then(|(s, m)| s.get(v).map(|r| (r, m))) {
                Some((rhs, mode)) => {
                    let next = Inst {
                        sig: self.sig,
                        subst: match mode {
                            Mode::Parallel => None,
                            Mode::Triangular => self.subst,
                        },
                    };
                    next.beta(rhs, 0, args, inner)
                }
                None => Term::app(t.head.clone(), args),
            },
            Head::Const(_) => self.build(t.head.clone(), args),
        };
        env.truncate(mark);
        body.abstracted(t.binders.clone())
    }

    /// `u(args)` reduced, where `u` lives at depth `ud ≤ dst` and the result
    /// is needed at depth `dst`.
    fn beta(&self, u: &Term, ud: usize, args: Vec<Term>, dst: usize) -> Term {
        debug_assert_eq!(u.binders.len(), args.len(), "eta-long application");
        let mut env: Vec<Slot> = (0..ud).map(Slot::Level).collect();
        env.extend(args.into_iter().map(|a| Slot::Term(Rc::new(a), dst)));
        let body = Term::app(u.head.clone(), u.args.clone());
        self.run(&body, &mut env, dst)
    }
}

/// Moves a term living at `src_depth` to `dst_depth`, mapping each context
/// level `l < src_depth` to `mapping[l]`. Returns `None` if the term uses a
/// level that is not mapped.
pub(crate) fn reindex(t: &Term, mapping: &[Option<usize>], dst_depth: usize) -> Option<Term> {
    let src_depth = mapping.len();
    if dst_depth == src_depth && mapping.iter().enumerate().all(|(i, m)| *m == Some(i)) {
        return Some(t.clone());
    }
    if t
        .context_levels(src_depth)
        .iter()
        .any(|l| mapping[*l].is_none())
    {
        return None;
    }
    let mut env: Vec<Slot> = mapping
        .iter()
        .map(|m| m.map_or(Slot::Missing, Slot::Level))
        .collect();
    Some(
        Inst {
            sig: None,
            subst: None,
        }
        .run(t, &mut env, dst_depth),
    )
}

/// Beta-reduces `u(args)` for a closed `u`, at depth `dst`.
pub(crate) fn beta_closed(u: &Term, args: Vec<Term>, dst: usize, sig: &Signature) -> Term {
    Inst {
        sig: Some(sig),
        subst: None,
    }
    .beta(u, 0, args, dst)
}

/// A finite map from free variables to closed terms of the same type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn insert(&mut self, var: Var, term: Term) -> Option<Term> {
        self.map.insert(var, term)
    }

    pub fn get(&self, var: &Var) -> Option<&Term> {
        self.map.get(var)
    }

    pub fn get_by_name(&self, name: &str) -> Option<(&Var, &Term)> {
        self.map.iter().find(|(v, _)| &*v.name == name)
    }

    pub fn remove(&mut self, var: &Var) -> Option<Term> {
        self.map.remove(var)
    }

    pub fn contains(&self, var: &Var) -> bool {
        self.map.contains_key(var)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Var> {
        self.map.keys()
    }

    /// Simultaneous application to a closed term.
    pub fn apply(&self, t: &Term, sig: &Signature) -> Term {
        self.apply_at(t, 0, sig)
    }

    /// Simultaneous application to a term living at `depth`.
    pub fn apply_at(&self, t: &Term, depth: usize, sig: &Signature) -> Term {
        let mut env: Vec<Slot> = (0..depth).map(Slot::Level).collect();
        Inst {
            sig: Some(sig),
            subst: Some((self, Mode::Parallel)),
        }
        .run(t, &mut env, depth)
    }

    /// Applies the substitution read as a triangular sequence of bindings:
    /// variables introduced by a right-hand side are resolved again.
    /// The bindings must not be cyclic.
    pub fn resolve(&self, t: &Term, sig: &Signature) -> Term {
        Inst {
            sig: Some(sig),
            subst: Some((self, Mode::Triangular)),
        }
        .run(t, &mut Vec::new(), 0)
    }

    /// `self` followed by `then`: applying the result equals applying `self`
    /// and then `then`.
    pub fn compose(&self, then: &Substitution, sig: &Signature) -> Substitution {
        let mut map: BTreeMap<Var, Term> = self
            .map
            .iter()
            .map(|(v, t)| (v.clone(), then.apply(t, sig)))
            .collect();
        for (v, t) in &then.map {
            map.entry(v.clone()).or_insert_with(|| t.clone());
        }
        Substitution { map }
    }

    /// Keeps only the bindings of the given variables.
    pub fn restrict(&self, vars: &[Var]) -> Substitution {
        Substitution {
            map: self
                .map
                .iter()
                .filter(|(v, _)| vars.contains(v))
                .map(|(v, t)| (v.clone(), t.clone()))
                .collect(),
        }
    }
}

impl FromIterator<(Var, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Var, Term)>>(iter: I) -> Self {
        Substitution {
            map: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} ↦ {}", v.name, t)?;
        }
        write!(f, "}}")
    }
}
