//! Decomposition modulo associativity, commutativity and both, the
//! exhaustive complete-set search and its minimization.

mod complete;
mod matching;

use std::fmt;

use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::subst::mk_app;
use crate::syntactic::{Aup, State};
use crate::term::{Head, Name, Term, Type};

pub use complete::{complete_set, complete_set_with, minimize, Bounds, CompleteSet};
pub use matching::{e_match, more_general, BudgetExceeded, DEFAULT_MATCH_BUDGET};

/// One way of decomposing `f(t̄) ≜ f(s̄)` for an equational `f`.
/// Indices are 1-based like the argument positions they refer to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecompositionChoice {
    /// `f(t₁…t_k) ≜ s₁` and `f(t_{k+1}…t_n) ≜ f(s₂…s_m)`.
    ALeft { k: usize },
    /// `t₁ ≜ f(s₁…s_k)` and `f(t₂…t_n) ≜ f(s_{k+1}…s_m)`.
    ARight { k: usize },
    /// `t₁ ≜ s_i` and `t₂ ≜` the other argument.
    C { i: usize },
    /// `f(t_I) ≜ s_k` and the remaining arguments of both sides.
    AcLeft { subset: Vec<usize>, pivot: usize },
    /// `t_k ≜ f(s_I)` and the remaining arguments of both sides.
    AcRight { subset: Vec<usize>, pivot: usize },
}

impl fmt::Display for DecompositionChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionChoice::ALeft { k } => write!(f, "Dec-A-L(k={k})"),
            DecompositionChoice::ARight { k } => write!(f, "Dec-A-R(k={k})"),
            DecompositionChoice::C { i } => write!(f, "Dec-C(i={i})"),
            DecompositionChoice::AcLeft { subset, pivot } => {
                write!(f, "Dec-AC-L(I={subset:?},k={pivot})")
            }
            DecompositionChoice::AcRight { subset, pivot } => {
                write!(f, "Dec-AC-R(I={subset:?},k={pivot})")
            }
        }
    }
}

/// The equational symbol heading both sides of `aup`, if any.
pub fn equational_head<'a>(aup: &'a Aup, sig: &Signature) -> Option<&'a Name> {
    if aup.left.is_abstraction() || aup.left.head != aup.right.head {
        return None;
    }
    aup.left
        .head
        .as_const()
        .filter(|c| !sig.axioms(c).is_free())
}

/// Non-empty proper subsets of `1..=n` as sorted index lists, smallest first.
fn proper_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1..(1u64 << n) - 1)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Every applicable equational decomposition of `aup`, without duplicates
/// (instances of the right-hand rules that coincide with a left-hand one
/// are omitted).
pub fn choices(aup: &Aup, sig: &Signature) -> Vec<DecompositionChoice> {
    let Some(f) = equational_head(aup, sig) else {
        return Vec::new();
    };
    let ax = sig.axioms(f);
    let n = aup.left.args.len();
    let m = aup.right.args.len();
    let mut out = Vec::new();
    match (ax.assoc, ax.comm) {
        (true, false) => {
            out.extend((1..n).map(|k| DecompositionChoice::ALeft { k }));
            out.extend((2..m).map(|k| DecompositionChoice::ARight { k }));
        }
        (false, true) => {
            out.extend([1, 2].map(|i| DecompositionChoice::C { i }));
        }
        (true, true) => {
            for subset in proper_subsets(n) {
                for pivot in 1..=m {
                    out.push(DecompositionChoice::AcLeft {
                        subset: subset.clone(),
                        pivot,
                    });
                }
            }
            for subset in proper_subsets(m).into_iter().filter(|s| s.len() > 1) {
                for pivot in 1..=n {
                    out.push(DecompositionChoice::AcRight {
                        subset: subset.clone(),
                        pivot,
                    });
                }
            }
        }
        (false, false) => unreachable!("equational head"),
    }
    out
}

fn group(f: &Name, args: Vec<Term>, sig: &Signature) -> Term {
    mk_app(Head::Const(f.clone()), args, sig)
}

fn pick(args: &[Term], idx: &[usize]) -> (Vec<Term>, Vec<Term>) {
    let mut inside = Vec::with_capacity(idx.len());
    let mut outside = Vec::with_capacity(args.len() - idx.len());
    for (i, a) in args.iter().enumerate() {
        if idx.contains(&(i + 1)) {
            inside.push(a.clone());
        } else {
            outside.push(a.clone());
        }
    }
    (inside, outside)
}

impl DecompositionChoice {
    /// The two problems `(t′ ≜ s′, t″ ≜ s″)` this choice produces for
    /// `f(t̄) ≜ f(s̄)`, with unary groups collapsed.
    pub fn split(&self, aup: &Aup, sig: &Signature) -> Result<[(Term, Term); 2]> {
        let f = equational_head(aup, sig)
            .ok_or_else(|| Error::not_applicable("terms are not headed by the same equational symbol"))?;
        let ax = sig.axioms(f);
        let t = &aup.left.args;
        let s = &aup.right.args;
        let (n, m) = (t.len(), s.len());
        let bad = || Error::not_applicable(format!("{self} on arities {n} and {m}"));
        match self {
            DecompositionChoice::ALeft { k } => {
                if !(ax.assoc && !ax.comm && (1..n).contains(k) && m >= 2) {
                    return Err(bad());
                }
                Ok([
                    (group(f, t[..*k].to_vec(), sig), s[0].clone()),
                    (group(f, t[*k..].to_vec(), sig), group(f, s[1..].to_vec(), sig)),
                ])
            }
            DecompositionChoice::ARight { k } => {
                if !(ax.assoc && !ax.comm && (1..m).contains(k) && n >= 2) {
                    return Err(bad());
                }
                Ok([
                    (t[0].clone(), group(f, s[..*k].to_vec(), sig)),
                    (group(f, t[1..].to_vec(), sig), group(f, s[*k..].to_vec(), sig)),
                ])
            }
            DecompositionChoice::C { i } => {
                if !(ax.comm && !ax.assoc && n == 2 && m == 2 && (1..=2).contains(i)) {
                    return Err(bad());
                }
                let (a, b) = if *i == 1 { (0, 1) } else { (1, 0) };
                Ok([(t[0].clone(), s[a].clone()), (t[1].clone(), s[b].clone())])
            }
            DecompositionChoice::AcLeft { subset, pivot } => {
                let ok = ax.assoc
                    && ax.comm
                    && !subset.is_empty()
                    && subset.len() < n
                    && subset.iter().all(|i| (1..=n).contains(i))
                    && (1..=m).contains(pivot);
                if !ok {
                    return Err(bad());
                }
                let (inside, outside) = pick(t, subset);
                let (pivot_s, rest_s) = pick(s, &[*pivot]);
                Ok([
                    (group(f, inside, sig), pivot_s[0].clone()),
                    (group(f, outside, sig), group(f, rest_s, sig)),
                ])
            }
            DecompositionChoice::AcRight { subset, pivot } => {
                let ok = ax.assoc
                    && ax.comm
                    && !subset.is_empty()
                    && subset.len() < m
                    && subset.iter().all(|i| (1..=m).contains(i))
                    && (1..=n).contains(pivot);
                if !ok {
                    return Err(bad());
                }
                let (inside, outside) = pick(s, subset);
                let (pivot_t, rest_t) = pick(t, &[*pivot]);
                Ok([
                    (pivot_t[0].clone(), group(f, inside, sig)),
                    (group(f, rest_t, sig), group(f, outside, sig)),
                ])
            }
        }
    }
}

impl State {
    /// Applies an equational decomposition to `aup`, binding its variable
    /// to `λx̄.f(Y₁(x̄),Y₂(x̄))`.
    pub fn dec_equational(
        &mut self,
        aup: Aup,
        choice: &DecompositionChoice,
        sig: &Signature,
    ) -> Result<()> {
        let [(l1, r1), (l2, r2)] = choice.split(&aup, sig)?;
        let consumed = aup.size();
        let f = aup.left.head.clone();
        let base: Type = aup.var.ty.uncurry().1.clone();
        self.decompose(
            aup.var,
            aup.ctx,
            consumed,
            f,
            vec![(base.clone(), l1, r1), (base, l2, r2)],
        );
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::term::Var;

    fn sig() -> Signature {
        let mut sig = Signature::new();
        let i = Type::base("i");
        let bin = Type::curried([i.clone(), i.clone()], i.clone());
        sig.add_const("fa", bin.clone(), crate::Axioms::A).unwrap();
        sig.add_const("fc", bin.clone(), crate::Axioms::C).unwrap();
        sig.add_const("fac", bin, crate::Axioms::AC).unwrap();
        for c in ["a", "b", "c", "d"] {
            sig.add_const(c, i.clone(), crate::Axioms::FREE).unwrap();
        }
        sig
    }

    fn aup(l: &str, r: &str) -> Aup {
        let mut sig = sig();
        Aup {
            var: Var::new("X", Type::base("i")),
            ctx: Vec::new(),
            left: parse_term(l, &mut sig).unwrap(),
            right: parse_term(r, &mut sig).unwrap(),
        }
    }

    fn split(l: &str, r: &str, choice: DecompositionChoice) -> Vec<String> {
        let [(a, b), (c, d)] = choice.split(&aup(l, r), &sig()).unwrap();
        vec![format!("{a} ≜ {b}"), format!("{c} ≜ {d}")]
    }

    #[test]
    fn associative_splits() {
        use DecompositionChoice::*;
        assert_eq!(split("fa(a,b,c)", "fa(a,b)", ALeft { k: 1 }), ["a ≜ a", "fa(b,c) ≜ b"]);
        assert_eq!(split("fa(a,b)", "fa(a,b)", ALeft { k: 1 }), ["a ≜ a", "b ≜ b"]);
        assert_eq!(split("fa(a,b,c)", "fa(b,c)", ALeft { k: 2 }), ["fa(a,b) ≜ b", "c ≜ c"]);
        assert_eq!(split("fa(a,b)", "fa(a,b,c)", ARight { k: 1 }), ["a ≜ a", "b ≜ fa(b,c)"]);
        assert_eq!(split("fa(c,d)", "fa(a,b,c)", ARight { k: 2 }), ["c ≜ fa(a,b)", "d ≜ c"]);
        assert!(ALeft { k: 3 }.split(&aup("fa(a,b,c)", "fa(a,b)"), &sig()).is_err());
    }

    #[test]
    fn commutative_splits() {
        use DecompositionChoice::*;
        assert_eq!(split("fc(a,b)", "fc(b,a)", C { i: 2 }), ["a ≜ a", "b ≜ b"]);
        assert_eq!(split("fc(a,b)", "fc(b,a)", C { i: 1 }), ["a ≜ b", "b ≜ a"]);
        assert_eq!(split("fc(a,c)", "fc(a,d)", C { i: 1 }), ["a ≜ a", "c ≜ d"]);
    }

    #[test]
    fn ac_splits() {
        use DecompositionChoice::*;
        let l = |subset: Vec<usize>, pivot| AcLeft { subset, pivot };
        assert_eq!(split("fac(a,b)", "fac(b,c)", l(vec![2], 1)), ["b ≜ b", "a ≜ c"]);
        assert_eq!(split("fac(a,b)", "fac(b,a)", l(vec![1], 2)), ["a ≜ a", "b ≜ b"]);
        assert_eq!(split("fac(a,a)", "fac(a,b)", l(vec![1], 1)), ["a ≜ a", "a ≜ b"]);
        let r = |subset: Vec<usize>, pivot| AcRight { subset, pivot };
        assert_eq!(split("fac(b,c)", "fac(a,b)", r(vec![2], 1)), ["b ≜ b", "c ≜ a"]);
        assert_eq!(split("fac(a,b)", "fac(c,d,b)", r(vec![1, 2], 2)), ["b ≜ fac(c,d)", "a ≜ b"]);
    }

    #[test]
    fn choices_are_counted_per_theory() {
        assert_eq!(choices(&aup("fa(a,b,c)", "fa(a,b)"), &sig()).len(), 2);
        assert_eq!(choices(&aup("fc(a,b)", "fc(a,b)"), &sig()).len(), 2);
        // subsets of 2 (2 proper) × 2 pivots, right side has no subsets of size > 1
        assert_eq!(choices(&aup("fac(a,b)", "fac(c,d)"), &sig()).len(), 4);
        assert!(choices(&aup("a", "b"), &sig()).is_empty());
    }
}
