//! Higher-order pattern matching modulo A, C and AC.
//!
//! The free variables of the pattern are the only ones that may be
//! instantiated; free variables of the other side behave like constants.
//! Pattern variables applied to distinct bound variables are solved by
//! projection, so branching only happens at commutative argument pairs and
//! at argument-list splits of associative symbols.

use std::collections::HashSet;

use crate::canon::e_equal;
use crate::signature::Signature;
use crate::subst::{beta_closed, mk_app, reindex, Substitution};
use crate::term::{Binder, Head, Term};

/// Default number of search nodes before matching gives up.
pub const DEFAULT_MATCH_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("matching budget exceeded")]
pub struct BudgetExceeded;

/// `p ≜? g` with both sides living at `depth`.
#[derive(Clone, Debug)]
struct Eqn {
    p: Term,
    g: Term,
    depth: usize,
}

/// A pending obligation of the search.
#[derive(Clone, Debug)]
enum Goal {
    Eq(Eqn),
    /// The arguments `ps` of an associative-commutative `head` must match
    /// the multiset `gs`, each pattern argument taking one element or, if
    /// flexible, a non-empty sub-multiset.
    Ac {
        head: Head,
        ps: Vec<Term>,
        gs: Vec<Term>,
        depth: usize,
    },
}

struct Matcher<'a> {
    sig: &'a Signature,
    budget: usize,
    pattern: &'a Term,
    target: &'a Term,
}

fn is_flexible(t: &Term) -> bool {
    t.binders.is_empty() && matches!(t.head, Head::Free(_))
}

impl Matcher<'_> {
    fn tick(&mut self) -> Result<(), BudgetExceeded> {
        if self.budget == 0 {
            return Err(BudgetExceeded);
        }
        self.budget -= 1;
        Ok(())
    }

    /// Tries each alternative in turn on top of the remaining goals.
    fn branch(
        &mut self,
        eqs: &[Goal],
        sigma: &Substitution,
        alternatives: impl IntoIterator<Item = Vec<Goal>>,
    ) -> Result<Option<Substitution>, BudgetExceeded> {
        for alt in alternatives {
            let mut next = eqs.to_vec();
            next.extend(alt.into_iter().rev());
            if let Some(s) = self.solve(next, sigma.clone())? {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    fn solve(
        &mut self,
        mut eqs: Vec<Goal>,
        sigma: Substitution,
    ) -> Result<Option<Substitution>, BudgetExceeded> {
        self.tick()?;
        match eqs.pop() {
            None => {
                let verified = e_equal(&sigma.apply(self.pattern, self.sig), self.target, self.sig);
                Ok(verified.then_some(sigma))
            }
            Some(Goal::Eq(eqn)) => self.solve_eq(eqn, eqs, sigma),
            Some(Goal::Ac {
                head,
                ps,
                gs,
                depth,
            }) => self.solve_ac(head, ps, gs, depth, eqs, sigma),
        }
    }

    fn solve_eq(
        &mut self,
        Eqn { p, g, depth }: Eqn,
        eqs: Vec<Goal>,
        sigma: Substitution,
    ) -> Result<Option<Substitution>, BudgetExceeded> {
        if p.binders.len() != g.binders.len() {
            return Ok(None);
        }
        let inner = depth + p.binders.len();
        if let Head::Free(x) = &p.head {
            let Some(levels) = p
                .args
                .iter()
                .map(|a| a.as_eta_bound(inner))
                .collect::<Option<Vec<usize>>>()
            else {
                return Ok(None);
            };
            let body = g.body();
            if let Some(bound) = sigma.get(x) {
                let inst = beta_closed(bound, p.args.clone(), inner, self.sig);
                if !e_equal(&inst, &body, self.sig) {
                    return Ok(None);
                }
                return self.solve(eqs, sigma);
            }
            let mut mapping = vec![None; inner];
            for (i, &l) in levels.iter().enumerate() {
                if mapping[l].is_some() {
                    return Ok(None);
                }
                mapping[l] = Some(i);
            }
            let Some(moved) = reindex(&body, &mapping, levels.len()) else {
                return Ok(None);
            };
            let (arg_tys, _) = x.ty.uncurry();
            let binders = arg_tys
                .iter()
                .enumerate()
                .map(|(i, ty)| Binder::new(&format!("z{i}"), (*ty).clone()))
                .collect();
            let mut sigma = sigma;
            sigma.insert(x.clone(), moved.abstracted(binders));
            return self.solve(eqs, sigma);
        }
        if p.head != g.head {
            return Ok(None);
        }
        let ax = p
            .head
            .as_const()
            .map(|c| self.sig.axioms(c))
            .unwrap_or_default();
        let pairs = |gs: Vec<Term>| -> Vec<Goal> {
            p.args
                .iter()
                .zip(gs)
                .map(|(a, b)| {
                    Goal::Eq(Eqn {
                        p: a.clone(),
                        g: b,
                        depth: inner,
                    })
                })
                .collect()
        };
        let alternatives: Vec<Vec<Goal>> = if ax.assoc && ax.comm {
            if g.args.len() < p.args.len() {
                return Ok(None);
            }
            vec![vec![Goal::Ac {
                head: p.head.clone(),
                ps: p.args.clone(),
                gs: g.args.clone(),
                depth: inner,
            }]]
        } else if ax.assoc {
            let f = p.head.clone();
            a_compositions(&p.args, &g.args)
                .into_iter()
                .map(|gs| {
                    pairs(
                        gs.into_iter()
                            .map(|block| mk_app(f.clone(), block, self.sig))
                            .collect(),
                    )
                })
                .collect()
        } else if p.args.len() != g.args.len() {
            return Ok(None);
        } else if ax.comm {
            vec![
                pairs(g.args.clone()),
                pairs(vec![g.args[1].clone(), g.args[0].clone()]),
            ]
        } else {
            vec![pairs(g.args.clone())]
        };
        self.branch(&eqs, &sigma, alternatives)
    }

    /// One step on an associative-commutative argument multiset: a rigid
    /// pattern argument picks one target argument, a flexible argument whose
    /// variable is already bound removes its instance, and otherwise the
    /// first flexible argument picks a sub-multiset.
    fn solve_ac(
        &mut self,
        head: Head,
        mut ps: Vec<Term>,
        gs: Vec<Term>,
        depth: usize,
        eqs: Vec<Goal>,
        sigma: Substitution,
    ) -> Result<Option<Substitution>, BudgetExceeded> {
        if ps.is_empty() {
            return if gs.is_empty() {
                self.solve(eqs, sigma)
            } else {
                Ok(None)
            };
        }
        if gs.len() < ps.len() {
            return Ok(None);
        }
        let rest = |ps: &[Term], gs: Vec<Term>| Goal::Ac {
            head: head.clone(),
            ps: ps.to_vec(),
            gs,
            depth,
        };
        let eq = |p: &Term, g: Term| {
            Goal::Eq(Eqn {
                p: p.clone(),
                g,
                depth,
            })
        };
        if let Some(i) = ps.iter().position(|p| !is_flexible(p)) {
            let p = ps.remove(i);
            let mut tried: Vec<&Term> = Vec::new();
            let mut alternatives = Vec::new();
            for (j, g) in gs.iter().enumerate() {
                if g.head != p.head || tried.contains(&g) {
                    continue;
                }
                tried.push(g);
                let mut others = gs.clone();
                let g = others.remove(j);
                alternatives.push(vec![eq(&p, g), rest(&ps, others)]);
            }
            return self.branch(&eqs, &sigma, alternatives);
        }
        let bound = ps.iter().position(|p| match &p.head {
            Head::Free(x) => sigma.get(x).is_some(),
            _ => false,
        });
        if let Some(i) = bound {
            let p = ps.remove(i);
            let Head::Free(x) = &p.head else { unreachable!() };
            let inst = beta_closed(sigma.get(x).expect("bound"), p.args.clone(), depth, self.sig);
            let parts = if inst.binders.is_empty() && inst.head == head {
                inst.args
            } else {
                vec![inst]
            };
            let mut others = gs;
            for part in &parts {
                let Some(j) = others.iter().position(|g| e_equal(part, g, self.sig)) else {
                    return Ok(None);
                };
                others.remove(j);
            }
            return self.solve_ac(head, ps, others, depth, eqs, sigma);
        }
        let p = ps.remove(0);
        if ps.is_empty() {
            let block = mk_app(head.clone(), gs, self.sig);
            return self.branch(&eqs, &sigma, [vec![eq(&p, block)]]);
        }
        let spare = gs.len() - ps.len();
        let mut seen: HashSet<Vec<Term>> = HashSet::new();
        for size in 1..=spare + 1 {
            let mut chosen: Vec<usize> = (0..size).collect();
            loop {
                let taken: Vec<Term> = chosen.iter().map(|&j| gs[j].clone()).collect();
                if seen.insert(taken.clone()) {
                    let others = gs
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| !chosen.contains(j))
                        .map(|(_, g)| g.clone())
                        .collect();
                    let block = mk_app(head.clone(), taken, self.sig);
                    let alt = vec![eq(&p, block), rest(&ps, others)];
                    if let Some(s) = self.branch(&eqs, &sigma, [alt])? {
                        return Ok(Some(s));
                    }
                }
                if !next_combination(&mut chosen, gs.len()) {
                    break;
                }
            }
        }
        Ok(None)
    }
}

/// Advances `c` to the next increasing index sequence of the same length
/// below `n`, in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Splits `gs` into `ps.len()` contiguous non-empty blocks; a rigid pattern
/// argument takes exactly one element.
fn a_compositions(ps: &[Term], gs: &[Term]) -> Vec<Vec<Vec<Term>>> {
    fn go(ps: &[Term], gs: &[Term], acc: &mut Vec<Vec<Term>>, out: &mut Vec<Vec<Vec<Term>>>) {
        let Some((p, rest)) = ps.split_first() else {
            if gs.is_empty() {
                out.push(acc.clone());
            }
            return;
        };
        if gs.len() < ps.len() {
            return;
        }
        let max = if is_flexible(p) { gs.len() - rest.len() } else { 1 };
        for len in 1..=max {
            acc.push(gs[..len].to_vec());
            go(rest, &gs[len..], acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(ps, gs, &mut Vec::new(), &mut out);
    out
}

/// A substitution `σ` for the free variables of the pattern `r` with
/// `r σ =_E g`, if one exists. Exceeding `budget` search nodes is an error.
pub fn e_match(
    r: &Term,
    g: &Term,
    sig: &Signature,
    budget: usize,
) -> Result<Option<Substitution>, BudgetExceeded> {
    let mut m = Matcher {
        sig,
        budget,
        pattern: r,
        target: g,
    };
    let eqs = vec![Goal::Eq(Eqn {
        p: r.clone(),
        g: g.clone(),
        depth: 0,
    })];
    m.solve(eqs, Substitution::new())
}

/// `r ⪯_E g`: whether `g` is an instance of `r` modulo the axioms of `sig`.
/// `None` if the matching budget ran out.
pub fn more_general(r: &Term, g: &Term, sig: &Signature) -> Option<bool> {
    e_match(r, g, sig, DEFAULT_MATCH_BUDGET)
        .ok()
        .map(|s| s.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Axioms;
    use crate::syntax::parse_term;
    use crate::term::Type;

    fn sig() -> Signature {
        let i = Type::base("i");
        let bin = Type::curried([i.clone(), i.clone()], i.clone());
        let mut sig = Signature::new()
            .with_const("f", bin.clone(), Axioms::A)
            .with_const("k", bin.clone(), Axioms::C)
            .with_const("p", bin, Axioms::AC)
            .with_const("g", Type::arrow(i.clone(), i.clone()), Axioms::FREE);
        for c in ["a", "b", "c"] {
            sig.add_const(c, i.clone(), Axioms::FREE).unwrap();
        }
        sig.with_var("Y", i.clone())
            .with_var("Z", i.clone())
            .with_var("W", Type::arrow(i.clone(), i))
    }

    fn m(r: &str, g: &str) -> Option<Substitution> {
        let mut sig = sig();
        let r = parse_term(r, &mut sig).unwrap();
        let g = parse_term(g, &mut sig).unwrap();
        e_match(&r, &g, &sig, DEFAULT_MATCH_BUDGET).unwrap()
    }

    #[test]
    fn variable_matches_anything() {
        assert_eq!(m("Y", "f(a,b)").unwrap().to_string(), "{Y ↦ f(a,b)}");
    }

    #[test]
    fn associative_splits_are_searched() {
        let s = m("f(Y,b)", "f(a,b,b)").unwrap();
        assert_eq!(s.to_string(), "{Y ↦ f(a,b)}");
        assert!(m("f(a,c)", "f(a,b)").is_none());
        assert!(m("f(Y,Z)", "f(a,b,c)").is_some());
        assert!(m("f(a,Y)", "g(a)").is_none());
    }

    #[test]
    fn commutative_and_ac() {
        assert!(m("k(Y,a)", "k(a,b)").is_some());
        assert_eq!(m("p(Y,a)", "p(b,a,c)").unwrap().to_string(), "{Y ↦ p(b,c)}");
        assert!(m("p(Y,Y)", "p(a,b)").is_none());
        assert!(m("p(Y,Y)", "p(a,b,a,b)").is_some());
    }

    #[test]
    fn higher_order_pattern_variables_project() {
        let s = m("\\x:i. g(W(x))", "\\x:i. g(f(x,a))").unwrap();
        assert_eq!(s.to_string(), "{W ↦ λz0.f(z0,a)}");
        assert!(m("\\x:i. W(x)", "\\x:i. Y").is_some());
        // a non-instance: the bound variable does not reach the constant position
        assert!(m("\\x:i. g(Y)", "\\x:i. g(x)").is_none());
    }

    #[test]
    fn budget_is_reported() {
        let mut sig = sig();
        let r = parse_term("p(Y,Z)", &mut sig).unwrap();
        let g = parse_term("p(a,b,c,a,b,c)", &mut sig).unwrap();
        assert_eq!(e_match(&r, &g, &sig, 1), Err(BudgetExceeded));
    }
}
