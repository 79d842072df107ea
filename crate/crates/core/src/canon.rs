//! Canonical representatives of E-equivalence classes.

use crate::signature::Signature;
use crate::term::{Head, Term};

/// Canonical form of a flattened term: arguments of commutative symbols are
/// sorted by the fixed term order, bottom up. Two flattened terms are equal
/// modulo the axioms of `sig` iff their canonical forms are identical.
pub fn canonical(t: &Term, sig: &Signature) -> Term {
    let mut args: Vec<Term> = t.args.iter().map(|a| canonical(a, sig)).collect();
    if let Head::Const(c) = &t.head {
        if sig.axioms(c).comm {
            args.sort();
        }
    }
    Term::new(t.binders.clone(), t.head.clone(), args)
}

/// Equality modulo the A, C and AC axioms declared in `sig`.
pub fn e_equal(a: &Term, b: &Term, sig: &Signature) -> bool {
    if a == b {
        return true;
    }
    a.size() == b.size() && canonical(a, sig) == canonical(b, sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Axioms;
    use crate::term::Type;

    fn i() -> Type {
        Type::base("i")
    }

    fn c(name: &str, args: Vec<Term>) -> Term {
        Term::app(Head::Const(name.into()), args)
    }

    fn k(name: &str) -> Term {
        Term::constant(name)
    }

    #[test]
    fn respects_each_theory() {
        let bin = Type::curried([i(), i()], i());
        let sig = Signature::new()
            .with_const("f", bin.clone(), Axioms::A)
            .with_const("g", bin.clone(), Axioms::C)
            .with_const("h", bin.clone(), Axioms::AC)
            .with_const("e", bin, Axioms::FREE);
        assert!(e_equal(&c("g", vec![k("a"), k("b")]), &c("g", vec![k("b"), k("a")]), &sig));
        assert!(!e_equal(&c("f", vec![k("a"), k("b")]), &c("f", vec![k("b"), k("a")]), &sig));
        assert!(!e_equal(&c("e", vec![k("a"), k("b")]), &c("e", vec![k("b"), k("a")]), &sig));
        assert!(e_equal(
            &c("h", vec![k("a"), k("b"), k("c")]),
            &c("h", vec![k("c"), k("a"), k("b")]),
            &sig
        ));
        assert!(e_equal(
            &c("e", vec![c("g", vec![k("a"), k("b")]), k("c")]),
            &c("e", vec![c("g", vec![k("b"), k("a")]), k("c")]),
            &sig
        ));
    }
}
