//! The base rule system for higher-order pattern anti-unification and the
//! syntactic least general generalization built on it.
//!
//! A derivation works on a [`State`]: pending anti-unification problems,
//! a store of solved ones and a triangular substitution recording how each
//! generalization variable was refined. Problems are processed by
//! abstraction, decomposition and solving; once nothing is pending, store
//! entries that differ only by a renaming of their context are merged.

use std::borrow::Cow;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use crate::canon::{canonical, e_equal};
use crate::error::{Error, Result};
use crate::normalize::type_of;
use crate::signature::Signature;
use crate::subst::{reindex, Substitution};
use crate::term::{Binder, Head, Name, Term, Type, Var};

/// `X(x̄): t ≜ s`. Both terms live under the context `ctx`, whose binders
/// have levels `0..ctx.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aup {
    pub var: Var,
    pub ctx: Vec<Binder>,
    pub left: Term,
    pub right: Term,
}

impl Aup {
    pub fn depth(&self) -> usize {
        self.ctx.len()
    }

    /// `|t| + |s|`, the weight of this problem in the termination measure.
    pub fn size(&self) -> usize {
        self.left.size() + self.right.size()
    }

    pub fn context_pairs(&self) -> Vec<(usize, Type)> {
        self.ctx
            .iter()
            .enumerate()
            .map(|(l, b)| (l, b.ty.clone()))
            .collect()
    }
}

/// Counters collected along derivations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Rule applications.
    pub steps: usize,
    /// States visited by a search (1 for a single derivation).
    pub states_explored: usize,
    /// Alternative decompositions considered at branching points.
    pub branches: usize,
    /// Rule applications that did not decrease the termination measure.
    pub measure_violations: usize,
}

impl Stats {
    pub fn absorb(&mut self, other: &Stats) {
        self.steps += other.steps;
        self.states_explored += other.states_explored;
        self.branches += other.branches;
        self.measure_violations += other.measure_violations;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Verify that every rule application strictly decreases the multiset
    /// of pending problem sizes. Violations are counted and, in debug
    /// builds, abort.
    pub check_measure: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            check_measure: true,
        }
    }
}

#[derive(Clone, Debug)]
struct Fresh {
    counter: usize,
    reserved: BTreeSet<Name>,
}

impl Fresh {
    fn var(&mut self, ty: Type) -> Var {
        loop {
            let name = format!("V{}", self.counter);
            self.counter += 1;
            if !self.reserved.contains(name.as_str()) {
                return Var::new(&name, ty);
            }
        }
    }
}

/// `A; S; σ` together with the root variable and bookkeeping.
#[derive(Clone, Debug)]
pub struct State {
    pub pending: Vec<Aup>,
    pub store: Vec<Aup>,
    pub subst: Substitution,
    pub root: Var,
    pub stats: Stats,
    pub options: Options,
    fresh: Fresh,
    /// Binders of the left input, used as display names of the result.
    root_binders: Vec<Binder>,
}

fn named_like(mut t: Term, like: &[Binder]) -> Term {
    for (b, l) in t.binders.iter_mut().zip(like) {
        b.name = l.name.clone();
    }
    t
}

/// A generalization `r` with witnesses: `r θ_left = t` and `r θ_right = s`
/// (modulo the axioms of the signature).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizationResult {
    pub term: Term,
    pub theta_left: Substitution,
    pub theta_right: Substitution,
}

impl GeneralizationResult {
    /// Checks both witnesses modulo the axioms of `sig`.
    pub fn verify(&self, left: &Term, right: &Term, sig: &Signature) -> bool {
        e_equal(&self.theta_left.apply(&self.term, sig), left, sig)
            && e_equal(&self.theta_right.apply(&self.term, sig), right, sig)
    }
}

/// Types of the arguments of `head` when applied to `n` arguments under a
/// context with binder types `ctx`.
pub(crate) fn arg_types(head: &Head, n: usize, ctx: &[Binder], sig: &Signature) -> Vec<Type> {
    let ty = match head {
        Head::Bound(l) => ctx[*l].ty.clone(),
        Head::Const(c) => sig.constant(c).expect("declared constant").ty.clone(),
        Head::Free(v) => v.ty.clone(),
    };
    let (args, res) = ty.uncurry();
    if args.len() == n {
        args.into_iter().cloned().collect()
    } else {
        vec![res.clone(); n]
    }
}

impl State {
    /// The initial state `{X: t ≜ s}; ∅; ∅`.
    pub fn new(left: &Term, right: &Term, sig: &Signature, options: Options) -> Result<State> {
        let lty = type_of(left, sig)?;
        let rty = type_of(right, sig)?;
        if lty != rty {
            return Err(Error::ty(format!(
                "terms have different types {lty} and {rty}"
            )));
        }
        let reserved = left
            .free_vars()
            .into_iter()
            .chain(right.free_vars())
            .map(|v| v.name)
            .chain(sig.vars().map(|(n, _)| n.clone()))
            .collect();
        let mut fresh = Fresh {
            counter: 0,
            reserved,
        };
        let root = fresh.var(lty);
        Ok(State {
            pending: vec![Aup {
                var: root.clone(),
                ctx: Vec::new(),
                left: left.clone(),
                right: right.clone(),
            }],
            store: Vec::new(),
            subst: Substitution::new(),
            root,
            stats: Stats {
                states_explored: 1,
                ..Stats::default()
            },
            options,
            fresh,
            root_binders: left.binders.clone(),
        })
    }

    pub fn is_final(&self) -> bool {
        self.pending.is_empty()
    }

    fn note_step(&mut self, consumed: usize, produced: &[usize]) {
        self.stats.steps += 1;
        if self.options.check_measure && produced.iter().any(|&p| p >= consumed) {
            self.stats.measure_violations += 1;
            debug_assert!(false, "termination measure did not decrease");
        }
    }

    /// Replaces the problem `var(ctx)` of the given size by one problem per
    /// `(type, left, right)` part, binding `var` to `λx̄.h(Y₁(x̄),…,Yₘ(x̄))`.
    pub(crate) fn decompose(
        &mut self,
        var: Var,
        ctx: Vec<Binder>,
        consumed: usize,
        head: Head,
        parts: Vec<(Type, Term, Term)>,
    ) {
        let d = ctx.len();
        let ctx_pairs: Vec<(usize, Type)> =
            ctx.iter().enumerate().map(|(l, b)| (l, b.ty.clone())).collect();
        let ctx_tys: Vec<Type> = ctx.iter().map(|b| b.ty.clone()).collect();
        let mut args = Vec::with_capacity(parts.len());
        let mut new = Vec::with_capacity(parts.len());
        for (ty, left, right) in parts {
            let y = self.fresh.var(Type::curried(ctx_tys.clone(), ty));
            args.push(named_like(Term::var_app(&y, &ctx_pairs, d), &left.binders));
            new.push(Aup {
                var: y,
                ctx: ctx.clone(),
                left,
                right,
            });
        }
        let sizes: Vec<usize> = new.iter().map(Aup::size).collect();
        self.note_step(consumed, &sizes);
        self.subst.insert(var, Term::new(ctx, head, args));
        self.pending.extend(new.into_iter().rev());
    }

    /// Dec: `X(x̄): h(t̄) ≜ h(s̄)` for a free constant or bound variable `h`
    /// applied to equally many arguments.
    pub fn dec(&mut self, aup: Aup, sig: &Signature) -> Result<()> {
        let applicable = !aup.left.is_abstraction()
            && !aup.right.is_abstraction()
            && aup.left.head == aup.right.head
            && aup.left.args.len() == aup.right.args.len()
            && !matches!(aup.left.head, Head::Free(_));
        if !applicable {
            return Err(Error::not_applicable(format!(
                "Dec on {} ≜ {}",
                aup.left.head, aup.right.head
            )));
        }
        let consumed = aup.size();
        let tys = arg_types(&aup.left.head, aup.left.args.len(), &aup.ctx, sig);
        let Aup {
            var,
            ctx,
            left,
            right,
        } = aup;
        let parts = tys
            .into_iter()
            .zip(left.args.into_iter().zip(right.args))
            .map(|(ty, (l, r))| (ty, l, r))
            .collect();
        self.decompose(var, ctx, consumed, left.head, parts);
        Ok(())
    }

    /// Abs: `X(x̄): λy.t ≜ λz.s` becomes `X′(x̄,y): t ≜ s{z↦y}`.
    pub fn abs(&mut self, aup: Aup) -> Result<()> {
        if aup.left.binders.is_empty() || aup.right.binders.is_empty() {
            return Err(Error::not_applicable("Abs on a non-abstraction"));
        }
        let consumed = aup.size();
        let Aup {
            var,
            mut ctx,
            mut left,
            mut right,
        } = aup;
        let d = ctx.len();
        let names = left.binders.clone();
        let binder = left.binders.remove(0);
        right.binders.remove(0);
        let ctx_binders = ctx.clone();
        ctx.push(binder);
        let inner = self.fresh.var(var.ty.clone());
        let pairs: Vec<(usize, Type)> =
            ctx_binders.iter().enumerate().map(|(l, b)| (l, b.ty.clone())).collect();
        self.subst
            .insert(var, named_like(Term::var_app(&inner, &pairs, d), &names).abstracted(ctx_binders));
        let new = Aup {
            var: inner,
            ctx,
            left,
            right,
        };
        self.note_step(consumed, &[new.size()]);
        self.pending.push(new);
        Ok(())
    }

    /// Sol: moves `X(x̄): t ≜ s` to the store as `Y(ȳ): t ≜ s`, where `ȳ` are
    /// the context variables occurring in `t` or `s`.
    pub fn sol(&mut self, aup: Aup) {
        let d = aup.depth();
        let mut occurring = aup.left.context_levels(d);
        aup.right.collect_context_levels(d, &mut occurring);
        let ys: Vec<usize> = occurring.into_iter().collect();
        let mut mapping = vec![None; d];
        for (i, &l) in ys.iter().enumerate() {
            mapping[l] = Some(i);
        }
        let new_ctx: Vec<Binder> = ys.iter().map(|&l| aup.ctx[l].clone()).collect();
        let (left, right) = if ys.len() == d {
            (aup.left, aup.right)
        } else {
            (
                reindex(&aup.left, &mapping, ys.len()).expect("occurring levels are mapped"),
                reindex(&aup.right, &mapping, ys.len()).expect("occurring levels are mapped"),
            )
        };
        let (_, base) = aup.var.ty.uncurry();
        let y = self.fresh.var(Type::curried(
            new_ctx.iter().map(|b| b.ty.clone()).collect::<Vec<_>>(),
            base.clone(),
        ));
        let args = ys
            .iter()
            .map(|&l| Term::eta_bound(l, &aup.ctx[l].ty, d))
            .collect();
        self.subst
            .insert(aup.var, Term::new(aup.ctx, Head::Free(y.clone()), args));
        self.stats.steps += 1;
        self.store.push(Aup {
            var: y,
            ctx: new_ctx,
            left,
            right,
        });
    }

    /// Applies Abs, Dec or Sol to `aup`, in that order of preference,
    /// treating every constant as free.
    pub fn step_syntactic(&mut self, aup: Aup, sig: &Signature) {
        if aup.left.is_abstraction() {
            self.abs(aup).expect("both sides are abstractions of the same type");
        } else if aup.left.head == aup.right.head
            && aup.left.args.len() == aup.right.args.len()
            && !matches!(aup.left.head, Head::Free(_))
        {
            self.dec(aup, sig).expect("Dec applicable");
        } else {
            self.sol(aup);
        }
    }

    /// Runs the syntactic rules until nothing is pending.
    pub fn run_syntactic(&mut self, sig: &Signature) {
        while let Some(aup) = self.pending.pop() {
            self.step_syntactic(aup, sig);
        }
    }

    fn bind_merged(&mut self, survivor: usize, dropped: Aup, pi: &[usize]) {
        let x = &self.store[survivor];
        let d = dropped.ctx.len();
        let args = x
            .ctx
            .iter()
            .enumerate()
            .map(|(j, b)| Term::eta_bound(pi[j], &b.ty, d))
            .collect();
        let binding = Term::new(dropped.ctx, Head::Free(x.var.clone()), args);
        self.subst.insert(dropped.var, binding);
        self.stats.steps += 1;
    }

    /// Mer, exhaustively: removes every store entry that coincides with an
    /// earlier one up to a bijection of their contexts. With `modulo` the
    /// terms are compared modulo the axioms of `sig`, otherwise syntactically.
    pub fn merge(&mut self, sig: &Signature, modulo: bool) {
        let store = std::mem::take(&mut self.store);
        if modulo {
            self.merge_modulo(store, sig);
        } else {
            self.merge_syntactic(store);
        }
    }

    fn merge_syntactic(&mut self, store: Vec<Aup>) {
        let mut buckets: HashMap<u64, Vec<(usize, Vec<usize>)>> = HashMap::new();
        for entry in store {
            let occ = first_occurrences(&entry);
            let key = renumbered(&entry, &occ);
            let hash = {
                let mut h = DefaultHasher::new();
                key.hash(&mut h);
                h.finish()
            };
            let bucket = buckets.entry(hash).or_default();
            let found = bucket.iter().find(|(idx, survivor_occ)| {
                renumbered(&self.store[*idx], survivor_occ) == key
            });
            match found {
                Some((survivor, survivor_occ)) => {
                    // level j of the survivor has rank r; the dropped entry's
                    // level of the same rank is occ[r]
                    let mut pi = vec![0; entry.depth()];
                    for (rank, &j) in survivor_occ.iter().enumerate() {
                        pi[j] = occ[rank];
                    }
                    let survivor = *survivor;
                    drop(key);
                    self.bind_merged(survivor, entry, &pi);
                }
                None => {
                    bucket.push((self.store.len(), occ));
                    drop(key);
                    self.store.push(entry);
                }
            }
        }
    }

    fn merge_modulo(&mut self, store: Vec<Aup>, sig: &Signature) {
        type Bucket = (Vec<Type>, Term, Term);
        let mut buckets: HashMap<Bucket, Vec<usize>> = HashMap::new();
        for entry in store {
            let mut tys: Vec<Type> = entry.ctx.iter().map(|b| b.ty.clone()).collect();
            tys.sort();
            let key = (tys, shape(&entry.left, sig), shape(&entry.right, sig));
            let candidates = buckets.get(&key).cloned().unwrap_or_default();
            let found = candidates.into_iter().find_map(|idx| {
                let x = &self.store[idx];
                find_bijection(x, &entry, sig).map(|pi| (idx, pi))
            });
            match found {
                Some((idx, pi)) => self.bind_merged(idx, entry, &pi),
                None => {
                    buckets.entry(key).or_default().push(self.store.len());
                    self.store.push(entry);
                }
            }
        }
    }

    /// The generalization and its witnesses, read off a final state.
    /// Generalization variables are renamed `Y0, Y1, …` in order of first
    /// occurrence.
    pub fn finish(self, sig: &Signature) -> GeneralizationResult {
        debug_assert!(self.pending.is_empty());
        let root = named_like(Term::var_app(&self.root, &[], 0), &self.root_binders);
        let term = self.subst.resolve(&root, sig);
        let mut rename: HashMap<Var, Var> = HashMap::new();
        let mut counter = 0;
        for v in term.free_vars() {
            let name = loop {
                let n = format!("Y{counter}");
                counter += 1;
                if !self.fresh.reserved.contains(n.as_str()) {
                    break n;
                }
            };
            rename.insert(v.clone(), Var::new(&name, v.ty.clone()));
        }
        let term = term.rename_free(&|v| rename.get(v).cloned());
        let mut theta_left = Substitution::new();
        let mut theta_right = Substitution::new();
        for entry in self.store {
            let var = rename.get(&entry.var).cloned().unwrap_or(entry.var);
            theta_left.insert(var.clone(), entry.left.abstracted(entry.ctx.clone()));
            theta_right.insert(var, entry.right.abstracted(entry.ctx));
        }
        GeneralizationResult {
            term,
            theta_left,
            theta_right,
        }
    }
}

/// Context levels of a store entry in order of first occurrence.
fn first_occurrences(entry: &Aup) -> Vec<usize> {
    let d = entry.depth();
    let mut occ = Vec::with_capacity(d);
    entry.left.first_occurrences(d, &mut occ);
    entry.right.first_occurrences(d, &mut occ);
    occ
}

/// The entry with its context levels renumbered by first occurrence:
/// equal for entries that coincide up to a bijection of their contexts.
fn renumbered<'a>(entry: &'a Aup, occ: &[usize]) -> (Vec<&'a Type>, Cow<'a, Term>, Cow<'a, Term>) {
    let d = entry.depth();
    let tys = occ.iter().map(|&l| &entry.ctx[l].ty).collect();
    if occ.iter().enumerate().all(|(rank, &l)| rank == l) {
        return (tys, Cow::Borrowed(&entry.left), Cow::Borrowed(&entry.right));
    }
    let mut mapping = vec![None; d];
    for (rank, &l) in occ.iter().enumerate() {
        mapping[l] = Some(rank);
    }
    let moved = |t: &Term| Cow::Owned(reindex(t, &mapping, d).expect("all context levels occur"));
    (tys, moved(&entry.left), moved(&entry.right))
}

/// The canonical form with every bound variable replaced by level 0: equal
/// for terms that agree modulo the axioms and a renaming of their context.
fn shape(t: &Term, sig: &Signature) -> Term {
    fn erase(t: &Term) -> Term {
        let head = match &t.head {
            Head::Bound(_) => Head::Bound(0),
            h => h.clone(),
        };
        Term::new(t.binders.clone(), head, t.args.iter().map(erase).collect())
    }
    canonical(&erase(t), sig)
}

/// A bijection `π` from the context of `x` to that of `y` with
/// `x.left π =_E y.left` and `x.right π =_E y.right`.
fn find_bijection(x: &Aup, y: &Aup, sig: &Signature) -> Option<Vec<usize>> {
    let d = x.depth();
    if d != y.depth() {
        return None;
    }
    let mut pi: Vec<usize> = Vec::with_capacity(d);
    let mut used = vec![false; d];
    fn go(
        x: &Aup,
        y: &Aup,
        sig: &Signature,
        pi: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let d = x.depth();
        if pi.len() == d {
            let mapping: Vec<Option<usize>> = pi.iter().map(|&l| Some(l)).collect();
            let l = reindex(&x.left, &mapping, d).expect("total mapping");
            let r = reindex(&x.right, &mapping, d).expect("total mapping");
            return e_equal(&l, &y.left, sig) && e_equal(&r, &y.right, sig);
        }
        let j = pi.len();
        for k in 0..d {
            if !used[k] && y.ctx[k].ty == x.ctx[j].ty {
                used[k] = true;
                pi.push(k);
                if go(x, y, sig, pi, used) {
                    return true;
                }
                pi.pop();
                used[k] = false;
            }
        }
        false
    }
    go(x, y, sig, &mut pi, &mut used).then_some(pi)
}

/// The unique (up to renaming) syntactic least general pattern
/// generalization of two terms of the same type. Symbols with axioms are
/// treated as free.
pub fn syntactic_lgg(left: &Term, right: &Term, sig: &Signature) -> Result<GeneralizationResult> {
    syntactic_lgg_with(left, right, sig, Options::default()).map(|(r, _)| r)
}

pub fn syntactic_lgg_with(
    left: &Term,
    right: &Term,
    sig: &Signature,
    options: Options,
) -> Result<(GeneralizationResult, Stats)> {
    let mut state = State::new(left, right, sig, options)?;
    state.run_syntactic(sig);
    state.merge(sig, false);
    let stats = state.stats;
    Ok((state.finish(sig), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_problem, parse_term};

    const SIG: &str = "sig: const f : i -> i -> i; const g : i -> i -> i -> i; const h : i -> i -> i -> i
  const a : i; const b : i; const c : i; const u : i -> i; const p : i -> i -> i [A]\n";

    fn lgg(left: &str, right: &str) -> (GeneralizationResult, Term, Term, Signature) {
        let text = format!("{SIG}left: {left}\nright: {right}\n");
        let (sig, l, r) = parse_problem(&text).unwrap();
        let res = syntactic_lgg(&l, &r, &sig).unwrap();
        assert!(res.verify(&l, &r, &sig));
        assert!(res.term.is_pattern());
        (res, l, r, sig)
    }

    #[test]
    fn introductory_example() {
        let (res, ..) = lgg(
            "\\x:i, y:i. f(h(x,x,y), h(x,y,y))",
            "\\x:i, y:i. f(g(x,x,y), g(x,y,y))",
        );
        assert_eq!(res.term.to_string(), "λx,y.f(Y0(x,y),Y1(x,y))");
    }

    #[test]
    fn identical_inputs_give_empty_witnesses() {
        let (res, l, ..) = lgg("\\x:i. f(u(x), a)", "\\x:i. f(u(x), a)");
        assert_eq!(res.term, l);
        assert!(res.theta_left.is_empty() && res.theta_right.is_empty());
    }

    #[test]
    fn clash_at_root() {
        let (res, ..) = lgg("a", "b");
        assert_eq!(res.term.to_string(), "Y0");
        assert_eq!(res.theta_left.to_string(), "{Y0 ↦ a}");
        assert_eq!(res.theta_right.to_string(), "{Y0 ↦ b}");
    }

    #[test]
    fn repeated_differences_are_merged() {
        let (res, ..) = lgg("f(a, a)", "f(b, b)");
        assert_eq!(res.term.to_string(), "f(Y0,Y0)");
        let (res, ..) = lgg("f(a, b)", "f(b, a)");
        assert_eq!(res.term.to_string(), "f(Y0,Y1)");
    }

    #[test]
    fn merge_up_to_a_context_permutation() {
        let (res, ..) = lgg(
            "\\x:i, y:i. f(f(x, y), f(y, x))",
            "\\x:i, y:i. f(a, a)",
        );
        assert_eq!(res.term.to_string(), "λx,y.f(Y0(x,y),Y0(y,x))");
    }

    #[test]
    fn dec_on_bound_head_and_sol_keeps_occurring_variables() {
        let (res, ..) = lgg("\\x:i. x", "\\y:i. y");
        assert_eq!(res.term.to_string(), "λx.x");
        let (res, ..) = lgg("\\x:i, y:i. f(u(x), c)", "\\x:i, y:i. f(c, c)");
        assert_eq!(res.term.to_string(), "λx,y.f(Y0(x),c)");
    }

    #[test]
    fn abs_renames_the_right_binder() {
        let (res, ..) = lgg("\\y:i. u(y)", "\\z:i. u(a)");
        assert_eq!(res.term.to_string(), "λy.u(Y0(y))");
    }

    #[test]
    fn equational_symbols_are_treated_as_free() {
        let (res, ..) = lgg("p(a, b, c)", "p(a, b)");
        assert_eq!(res.term.to_string(), "Y0");
        let (res, ..) = lgg("p(a, b, c)", "p(a, c, c)");
        assert_eq!(res.term.to_string(), "p(a,Y0,c)");
    }

    #[test]
    fn rules_on_single_steps() {
        let mut sig = Signature::new();
        for decl in ["u", "a", "b"] {
            let ty = if decl == "u" {
                Type::arrow(Type::base("i"), Type::base("i"))
            } else {
                Type::base("i")
            };
            sig.add_const(decl, ty, crate::signature::Axioms::FREE).unwrap();
        }
        let t = parse_term("u(a)", &mut sig).unwrap();
        let s = parse_term("u(b)", &mut sig).unwrap();
        let mut st = State::new(&t, &s, &sig, Options::default()).unwrap();
        let aup = st.pending.pop().unwrap();
        st.dec(aup, &sig).unwrap();
        assert_eq!(st.pending.len(), 1);
        assert_eq!(st.pending[0].left.to_string(), "a");
        assert!(st.subst.get(&st.root).unwrap().to_string().starts_with("u("));
        let aup = st.pending.pop().unwrap();
        assert!(st.clone().dec(aup.clone(), &sig).is_err());
        st.sol(aup);
        assert_eq!(st.store.len(), 1);
        assert_eq!(st.stats.measure_violations, 0);
    }
}
