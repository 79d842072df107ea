//! Slow reference implementations used to cross-check the engine.
//!
//! Nothing here calls into the generalization, matching or normalization
//! code: equality modulo the axioms is decided by closing a binary-tree
//! representation under single rewrite steps, and generalizations are
//! enumerated by plain recursion over the rule system.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::term::{Binder, Head, Term, Type, Var};

/// Limits that make the oracles fail loudly instead of running forever.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest input term accepted.
    pub max_size: usize,
    /// Largest number of alternatives kept while enumerating derivations.
    pub max_branching: usize,
    /// Largest rewrite closure or number of context bijections explored.
    pub max_permutations: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_size: 40,
            max_branching: 200_000,
            max_permutations: 200_000,
        }
    }
}

fn over(what: &str, limit: usize) -> Error {
    Error::Budget(format!("oracle {what} exceeds {limit}"))
}

fn axioms_of(h: &Head, sig: &Signature) -> (bool, bool) {
    match h {
        Head::Const(c) => {
            let ax = sig.axioms(c);
            (ax.assoc, ax.comm)
        }
        _ => (false, false),
    }
}

/// Nests every application of an associative symbol to the right so that
/// it has exactly two arguments.
fn to_binary(t: &Term, sig: &Signature) -> Term {
    let args: Vec<Term> = t.args.iter().map(|a| to_binary(a, sig)).collect();
    let (assoc, _) = axioms_of(&t.head, sig);
    if !assoc || args.len() <= 2 {
        return Term::new(t.binders.clone(), t.head.clone(), args);
    }
    let mut iter = args.into_iter().rev();
    let mut acc = iter.next().expect("at least three arguments");
    for a in iter {
        acc = Term::new(Vec::new(), t.head.clone(), vec![a, acc]);
    }
    acc.binders = t.binders.clone();
    acc
}

/// All terms reachable by one regrouping or one swap anywhere in `t`.
fn neighbours(t: &Term, sig: &Signature) -> Vec<Term> {
    let mut out = Vec::new();
    let (assoc, comm) = axioms_of(&t.head, sig);
    let rebuild = |args: Vec<Term>| Term::new(t.binders.clone(), t.head.clone(), args);
    let same = |x: &Term| x.binders.is_empty() && x.head == t.head && x.args.len() == 2;
    if t.args.len() == 2 {
        let (x, y) = (&t.args[0], &t.args[1]);
        if comm {
            out.push(rebuild(vec![y.clone(), x.clone()]));
        }
        if assoc && same(y) {
            let left = Term::new(Vec::new(), t.head.clone(), vec![x.clone(), y.args[0].clone()]);
            out.push(rebuild(vec![left, y.args[1].clone()]));
        }
        if assoc && same(x) {
            let right = Term::new(Vec::new(), t.head.clone(), vec![x.args[1].clone(), y.clone()]);
            out.push(rebuild(vec![x.args[0].clone(), right]));
        }
    }
    for (i, a) in t.args.iter().enumerate() {
        for n in neighbours(a, sig) {
            let mut args = t.args.clone();
            args[i] = n;
            out.push(rebuild(args));
        }
    }
    out
}

/// The class of `t` under the axioms, as binary trees.
fn closure(t: &Term, sig: &Signature, budget: &OracleBudget) -> Result<HashSet<Term>> {
    let start = to_binary(t, sig);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for n in neighbours(&u, sig) {
            if seen.insert(n.clone()) {
                if seen.len() > budget.max_permutations {
                    return Err(over("rewrite closure", budget.max_permutations));
                }
                queue.push_back(n);
            }
        }
    }
    Ok(seen)
}

/// Equality modulo the axioms by exhaustive rewriting.
pub fn e_equal_naive(t: &Term, s: &Term, sig: &Signature, budget: &OracleBudget) -> Result<bool> {
    if t.size() > budget.max_size || s.size() > budget.max_size {
        return Err(over("term size", budget.max_size));
    }
    if t.size() != s.size() {
        return Ok(false);
    }
    Ok(closure(t, sig, budget)?.contains(&to_binary(s, sig)))
}

/// Renames bound variables through `f`; `None` if some level has no image.
fn relevel(t: &Term, f: &dyn Fn(usize) -> Option<usize>) -> Option<Term> {
    let head = match &t.head {
        Head::Bound(l) => Head::Bound(f(*l)?),
        h => h.clone(),
    };
    let args = t
        .args
        .iter()
        .map(|a| relevel(a, f))
        .collect::<Option<Vec<_>>>()?;
    Some(Term::new(t.binders.clone(), head, args))
}

/// Syntactic higher-order pattern matching of `p` against `g` at `depth`,
/// instantiating only variables in `vars`.
fn match_syntactic(
    p: &Term,
    g: &Term,
    depth: usize,
    vars: &BTreeSet<Var>,
    sigma: &mut HashMap<Var, Term>,
) -> bool {
    if p.binders.len() != g.binders.len() {
        return false;
    }
    let inner = depth + p.binders.len();
    if let Head::Free(x) = &p.head {
        if vars.contains(x) {
            let mut levels = Vec::new();
            for a in &p.args {
                match a.as_eta_bound(inner) {
                    Some(l) if !levels.contains(&l) => levels.push(l),
                    _ => return false,
                }
            }
            let k = levels.len();
            let body = Term::new(Vec::new(), g.head.clone(), g.args.clone());
            let moved = relevel(&body, &|l| {
                if l >= inner {
                    Some(l - inner + k)
                } else {
                    levels.iter().position(|&m| m == l)
                }
            });
            let Some(moved) = moved else {
                return false;
            };
            let (tys, _) = x.ty.uncurry();
            let binders = tys
                .iter()
                .enumerate()
                .map(|(i, ty)| Binder::new(&format!("w{i}"), (*ty).clone()))
                .collect();
            let candidate = Term::new(binders, moved.head, moved.args);
            return match sigma.get(x) {
                Some(bound) => *bound == candidate,
                None => {
                    sigma.insert(x.clone(), candidate);
                    true
                }
            };
        }
    }
    p.head == g.head
        && p.args.len() == g.args.len()
        && p
            .args
            .iter()
            .zip(&g.args)
            .all(|(a, b)| match_syntactic(a, b, inner, vars, sigma))
}

/// `r ⪯_E g`: some member of the class of `g` is a syntactic instance of
/// the binary form of `r`.
pub fn naive_more_general(r: &Term, g: &Term, sig: &Signature, budget: &OracleBudget) -> Result<bool> {
    let class = closure(g, sig, budget)?;
    naive_more_general_in(r, &class, sig)
}

fn naive_more_general_in(r: &Term, class: &HashSet<Term>, sig: &Signature) -> Result<bool> {
    let pattern = to_binary(r, sig);
    let vars: BTreeSet<Var> = r.free_vars().into_iter().collect();
    Ok(class
        .iter()
        .any(|g| match_syntactic(&pattern, g, 0, &vars, &mut HashMap::new())))
}

/// A solved problem `Y(ȳ): left ≜ right` with the context restricted to the
/// variables that occur.
#[derive(Clone, Debug)]
struct Solved {
    var: Var,
    ctx: Vec<Binder>,
    left: Term,
    right: Term,
}

/// One way of generalizing a problem: the generalization body and the
/// problems solved along the way.
#[derive(Clone, Debug)]
struct Partial {
    term: Term,
    store: Vec<Solved>,
}

struct Enumerator<'a> {
    sig: &'a Signature,
    budget: &'a OracleBudget,
}

fn bound_levels_below(t: &Term, d: usize, out: &mut BTreeSet<usize>) {
    if let Head::Bound(l) = t.head {
        if l < d {
            out.insert(l);
        }
    }
    for a in &t.args {
        bound_levels_below(a, d, out);
    }
}

/// Splices arguments headed by `f` into the application of `f`.
fn join(f: &Head, parts: Vec<Term>) -> Term {
    let mut args = Vec::new();
    for p in parts {
        if p.binders.is_empty() && p.head == *f {
            args.extend(p.args);
        } else {
            args.push(p);
        }
    }
    Term::app(f.clone(), args)
}

fn group(f: &Head, args: Vec<Term>) -> Term {
    if args.len() == 1 {
        args.into_iter().next().expect("one argument")
    } else {
        Term::app(f.clone(), args)
    }
}

impl Enumerator<'_> {
    fn head_type(&self, h: &Head, ctx: &[Binder]) -> Type {
        match h {
            Head::Bound(l) => ctx[*l].ty.clone(),
            Head::Const(c) => self.sig.constant(c).expect("declared constant").ty.clone(),
            Head::Free(v) => v.ty.clone(),
        }
    }

    fn solve(&self, ctx: &[Binder], t: &Term, s: &Term, path: &str) -> Partial {
        let d = ctx.len();
        let mut occurring = BTreeSet::new();
        bound_levels_below(t, d, &mut occurring);
        bound_levels_below(s, d, &mut occurring);
        let ys: Vec<usize> = occurring.into_iter().collect();
        let k = ys.len();
        let local = |l: usize| {
            if l >= d {
                Some(l - d + k)
            } else {
                ys.iter().position(|&y| y == l)
            }
        };
        let base = self.head_type(&t.head, ctx).uncurry().1.clone();
        let var_ty = Type::curried(ys.iter().map(|&l| ctx[l].ty.clone()).collect::<Vec<_>>(), base);
        let var = Var::new(&format!("Y{path}"), var_ty);
        let args = ys.iter().map(|&l| Term::eta_bound(l, &ctx[l].ty, d)).collect();
        Partial {
            term: Term::app(Head::Free(var.clone()), args),
            store: vec![Solved {
                var,
                ctx: ys.iter().map(|&l| ctx[l].clone()).collect(),
                left: relevel(t, &local).expect("all levels mapped"),
                right: relevel(s, &local).expect("all levels mapped"),
            }],
        }
    }

    /// Every combination of one alternative per component problem.
    fn product(
        &self,
        ctx: &[Binder],
        problems: Vec<(Term, Term)>,
        path: &str,
    ) -> Result<Vec<(Vec<Term>, Vec<Solved>)>> {
        let mut acc: Vec<(Vec<Term>, Vec<Solved>)> = vec![(Vec::new(), Vec::new())];
        for (n, (t, s)) in problems.iter().enumerate() {
            let alts = self.generalize(ctx, t, s, &format!("{path}_{n}"))?;
            let mut next = Vec::with_capacity(acc.len() * alts.len());
            for (terms, store) in &acc {
                for alt in &alts {
                    let mut terms = terms.clone();
                    terms.push(alt.term.clone());
                    let mut store = store.clone();
                    store.extend(alt.store.iter().cloned());
                    next.push((terms, store));
                }
            }
            if next.len() > self.budget.max_branching {
                return Err(over("derivation count", self.budget.max_branching));
            }
            acc = next;
        }
        Ok(acc)
    }

    /// The equational decompositions of `f(t̄) ≜ f(s̄)` as pairs of problems.
    fn splits(&self, f: &Head, t: &[Term], s: &[Term]) -> Vec<[(Term, Term); 2]> {
        let (assoc, comm) = axioms_of(f, self.sig);
        let (n, m) = (t.len(), s.len());
        let mut out = Vec::new();
        match (assoc, comm) {
            (true, false) => {
                for k in 1..n {
                    out.push([
                        (group(f, t[..k].to_vec()), s[0].clone()),
                        (group(f, t[k..].to_vec()), group(f, s[1..].to_vec())),
                    ]);
                }
                for k in 1..m {
                    out.push([
                        (t[0].clone(), group(f, s[..k].to_vec())),
                        (group(f, t[1..].to_vec()), group(f, s[k..].to_vec())),
                    ]);
                }
            }
            (false, true) => {
                out.push([(t[0].clone(), s[0].clone()), (t[1].clone(), s[1].clone())]);
                out.push([(t[0].clone(), s[1].clone()), (t[1].clone(), s[0].clone())]);
            }
            _ => {
                for (mask, pivot) in (1..(1usize << n) - 1).flat_map(|mask| (0..m).map(move |p| (mask, p))) {
                    let (inside, outside): (Vec<_>, Vec<_>) =
                        (0..n).partition(|i| mask & (1 << i) != 0);
                    let pick = |w: &[Term], idx: &[usize]| idx.iter().map(|&i| w[i].clone()).collect();
                    let rest: Vec<usize> = (0..m).filter(|&j| j != pivot).collect();
                    out.push([
                        (group(f, pick(t, &inside)), s[pivot].clone()),
                        (group(f, pick(t, &outside)), group(f, pick(s, &rest))),
                    ]);
                }
                for (mask, pivot) in (1..(1usize << m) - 1).flat_map(|mask| (0..n).map(move |p| (mask, p))) {
                    let (inside, outside): (Vec<_>, Vec<_>) =
                        (0..m).partition(|j| mask & (1 << j) != 0);
                    let pick = |w: &[Term], idx: &[usize]| idx.iter().map(|&i| w[i].clone()).collect();
                    let rest: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
                    out.push([
                        (t[pivot].clone(), group(f, pick(s, &inside))),
                        (group(f, pick(t, &rest)), group(f, pick(s, &outside))),
                    ]);
                }
            }
        }
        out
    }

    fn generalize(&self, ctx: &[Binder], t: &Term, s: &Term, path: &str) -> Result<Vec<Partial>> {
        if let (Some((bt, _)), Some(_)) = (t.binders.split_first(), s.binders.split_first()) {
            let mut inner_ctx = ctx.to_vec();
            inner_ctx.push(bt.clone());
            let peel = |u: &Term| Term::new(u.binders[1..].to_vec(), u.head.clone(), u.args.clone());
            let inner = self.generalize(&inner_ctx, &peel(t), &peel(s), path)?;
            return Ok(inner
                .into_iter()
                .map(|mut p| {
                    p.term.binders.insert(0, bt.clone());
                    p
                })
                .collect());
        }
        let same_head = t.head == s.head;
        let (assoc, comm) = axioms_of(&t.head, self.sig);
        if !same_head || matches!(t.head, Head::Free(_)) {
            return Ok(vec![self.solve(ctx, t, s, path)]);
        }
        if !assoc && !comm {
            return Ok(self
                .product(ctx, t.args.iter().cloned().zip(s.args.iter().cloned()).collect(), path)?
                .into_iter()
                .map(|(args, store)| Partial {
                    term: Term::app(t.head.clone(), args),
                    store,
                })
                .collect());
        }
        let mut out = Vec::new();
        for (n, [p1, p2]) in self.splits(&t.head, &t.args, &s.args).into_iter().enumerate() {
            for (args, store) in self.product(ctx, vec![p1, p2], &format!("{path}_d{n}"))? {
                let term = if assoc {
                    join(&t.head, args)
                } else {
                    Term::app(t.head.clone(), args)
                };
                out.push(Partial { term, store });
            }
            if out.len() > self.budget.max_branching {
                return Err(over("derivation count", self.budget.max_branching));
            }
        }
        Ok(out)
    }
}

/// Bijections `π` between two contexts that respect the types, in
/// lexicographic order.
fn bijections(x: &[Binder], y: &[Binder], limit: usize) -> Result<Vec<Vec<usize>>> {
    fn go(
        x: &[Binder],
        y: &[Binder],
        pi: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        if pi.len() == x.len() {
            out.push(pi.clone());
            if out.len() > limit {
                return Err(over("context bijections", limit));
            }
            return Ok(());
        }
        for j in 0..y.len() {
            if !pi.contains(&j) && y[j].ty == x[pi.len()].ty {
                pi.push(j);
                go(x, y, pi, out, limit)?;
                pi.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    if x.len() == y.len() {
        go(x, y, &mut Vec::new(), &mut out, limit)?;
    }
    Ok(out)
}

/// Replaces every `Y(a₁,…,aₖ)` for a merged `Y ↦ (X, π)` by
/// `X(a_π(1),…,a_π(k))`.
fn redirect(t: &Term, merged: &HashMap<Var, (Var, Vec<usize>)>) -> Term {
    let args: Vec<Term> = t.args.iter().map(|a| redirect(a, merged)).collect();
    if let Head::Free(y) = &t.head {
        if let Some((x, pi)) = merged.get(y) {
            let permuted = pi.iter().map(|&q| args[q].clone()).collect();
            return Term::new(t.binders.clone(), Head::Free(x.clone()), permuted);
        }
    }
    Term::new(t.binders.clone(), t.head.clone(), args)
}

/// Applies the merge rule exhaustively and names the variables `Y0, Y1, …`
/// by first occurrence.
fn finalize(p: Partial, sig: &Signature, budget: &OracleBudget) -> Result<Term> {
    let mut kept: Vec<Solved> = Vec::new();
    let mut merged: HashMap<Var, (Var, Vec<usize>)> = HashMap::new();
    for entry in p.store {
        let mut target = None;
        'search: for x in &kept {
            for pi in bijections(&x.ctx, &entry.ctx, budget.max_permutations)? {
                let k = pi.len();
                let rename = |l: usize| Some(if l < k { pi[l] } else { l });
                let l = relevel(&x.left, &rename).expect("total renaming");
                let r = relevel(&x.right, &rename).expect("total renaming");
                if e_equal_naive(&l, &entry.left, sig, budget)?
                    && e_equal_naive(&r, &entry.right, sig, budget)?
                {
                    target = Some((x.var.clone(), pi));
                    break 'search;
                }
            }
        }
        match target {
            Some(t) => {
                merged.insert(entry.var, t);
            }
            None => kept.push(entry),
        }
    }
    let term = redirect(&p.term, &merged);
    let generated = |v: &Var| v.name.starts_with("Y_");
    let reserved: BTreeSet<String> = term
        .free_vars()
        .into_iter()
        .filter(|v| !generated(v))
        .map(|v| v.name.to_string())
        .collect();
    let mut names: HashMap<Var, Var> = HashMap::new();
    let mut counter = 0;
    for v in term.free_vars().into_iter().filter(|v| generated(v)) {
        let name = loop {
            let n = format!("Y{counter}");
            counter += 1;
            if !reserved.contains(&n) {
                break n;
            }
        };
        names.insert(v.clone(), Var::new(&name, v.ty.clone()));
    }
    Ok(term.rename_free(&|v| names.get(v).cloned()))
}

/// Results of all maximal derivations of the equational rule system,
/// without duplicates up to the axioms.
pub fn enumerate_generalizations(
    t: &Term,
    s: &Term,
    sig: &Signature,
    budget: &OracleBudget,
) -> Result<Vec<Term>> {
    if t.size() > budget.max_size || s.size() > budget.max_size {
        return Err(over("term size", budget.max_size));
    }
    let e = Enumerator { sig, budget };
    let mut out: Vec<Term> = Vec::new();
    let mut known: HashSet<Term> = HashSet::new();
    for p in e.generalize(&[], t, s, "_")? {
        let r = finalize(p, sig, budget)?;
        if !known.contains(&to_binary(&r, sig)) {
            known.extend(closure(&r, sig, budget)?);
            out.push(r);
        }
    }
    Ok(out)
}

/// Minimal complete set of generalizations: the enumerated results with
/// every strictly more general element removed and one representative per
/// class of equally general ones.
pub fn brute_force_mcsg(t: &Term, s: &Term, sig: &Signature, budget: &OracleBudget) -> Result<Vec<Term>> {
    let all = enumerate_generalizations(t, s, sig, budget)?;
    let classes = all
        .iter()
        .map(|g| closure(g, sig, budget))
        .collect::<Result<Vec<_>>>()?;
    let n = all.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = i == j || naive_more_general_in(&all[i], &classes[j], sig)?;
        }
    }
    let keep: Vec<bool> = (0..n)
        .map(|i| {
            !(0..n).any(|j| j != i && leq[i][j] && (!leq[j][i] || j < i))
        })
        .collect();
    Ok(all
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect())
}

/// Determinate set computed straight from the definition, used to check
/// the fragment recognizers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NaiveSet<S> {
    Empty,
    Bottom,
    Blocks(Vec<(S, usize, usize, NaiveSet<S>)>),
}

impl<S: std::fmt::Display> NaiveSet<S> {
    /// Same notation as the engine's determinate sets.
    pub fn render(&self) -> String {
        fn block<S: std::fmt::Display>(b: &(S, usize, usize, NaiveSet<S>)) -> String {
            let inner = match &b.3 {
                NaiveSet::Blocks(v) if v.len() == 1 => block(&v[0]),
                NaiveSet::Blocks(_) => b.3.render(),
                _ => "∅".to_string(),
            };
            format!("({}[{},{}],{inner})", b.0, b.1, b.2)
        }
        match self {
            NaiveSet::Empty => "∅".into(),
            NaiveSet::Bottom => "{∅}".into(),
            NaiveSet::Blocks(v) => format!("{{{}}}", v.iter().map(block).collect::<Vec<_>>().join(",")),
        }
    }

    fn pairs(&self, out: &mut Vec<(usize, usize)>) {
        if let NaiveSet::Blocks(v) = self {
            for (_, i, j, inner) in v {
                out.push((*i, *j));
                inner.pairs(out);
            }
        }
    }
}

fn count<S: PartialEq>(w: &[S], x: &S) -> usize {
    w.iter().filter(|y| *y == x).count()
}

/// Sorted list of the common symbols with their shared multiplicities.
fn common<S: Ord + Clone>(a: &[S], b: &[S]) -> Vec<(S, usize)> {
    let mut syms: Vec<S> = a.to_vec();
    syms.sort();
    syms.dedup();
    syms.into_iter()
        .map(|x| {
            let n = count(a, &x).min(count(b, &x));
            (x, n)
        })
        .filter(|(_, n)| *n > 0)
        .collect()
}

fn tails_agree<S: Ord + Clone>(m: &[(S, usize)], ta: &[S], tb: &[S]) -> bool {
    m.iter()
        .all(|(x, n)| count(ta, x).min(*n) == count(tb, x).min(*n))
}

fn naive_det_from<S: Ord + Clone>(k: usize, a: &[S], b: &[S], oa: usize, ob: usize) -> NaiveSet<S> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return NaiveSet::Bottom,
        (true, false) | (false, true) => return NaiveSet::Empty,
        _ => {}
    }
    let (n, m) = (a.len(), b.len());
    for i in 1..=n.max(m) {
        let (pa, pb) = (&a[..i.min(n)], &b[..i.min(m)]);
        let first_shared = a[0] == b[0];
        let mut shared = common(&pa[1..], &pb[1..]);
        let test = if i == 1 { first_shared } else { !shared.is_empty() };
        if !test {
            continue;
        }
        if first_shared {
            match shared.iter_mut().find(|(x, _)| *x == a[0]) {
                Some(e) => e.1 += 1,
                None => shared.push((a[0].clone(), 1)),
            }
        }
        if !tails_agree(&shared, &a[i.min(n)..], &b[i.min(m)..]) {
            continue;
        }
        let mut pairs = Vec::new();
        for x in 0..pa.len() {
            for y in 0..pb.len() {
                if pa[x] == pb[y] && (x == 0) == (y == 0) {
                    pairs.push((x, y));
                }
            }
        }
        if pairs.len() > k {
            return NaiveSet::Bottom;
        }
        let mut blocks = Vec::new();
        for (x, y) in pairs {
            let sub = naive_det_from(k, &a[x + 1..], &b[y + 1..], oa + x + 1, ob + y + 1);
            if sub != NaiveSet::Empty {
                blocks.push((a[x].clone(), oa + x + 1, ob + y + 1, sub));
            }
        }
        return if blocks.is_empty() {
            NaiveSet::Empty
        } else {
            NaiveSet::Blocks(blocks)
        };
    }
    NaiveSet::Bottom
}

pub fn naive_det<S: Ord + Clone>(k: usize, a: &[S], b: &[S]) -> NaiveSet<S> {
    naive_det_from(k, a, b, 0, 0)
}

fn naive_sdet_from<S: Ord + Clone>(k: usize, a: &[S], b: &[S], oa: usize, ob: usize) -> NaiveSet<S> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return NaiveSet::Bottom,
        (true, false) | (false, true) => return NaiveSet::Empty,
        _ => {}
    }
    let (n, m) = (a.len(), b.len());
    for i in 1..=n.max(m) {
        let (ca, cb) = (i.min(n), i.min(m));
        let shared = common(&a[..ca], &b[..cb]);
        if shared.is_empty() || !tails_agree(&shared, &a[ca..], &b[cb..]) {
            continue;
        }
        if shared
            .iter()
            .any(|(x, _)| count(&a[..ca], x) > k || count(&b[..cb], x) > k)
        {
            return NaiveSet::Bottom;
        }
        let rest = naive_sdet_from(k, &a[ca..], &b[cb..], oa + ca, ob + cb);
        if rest == NaiveSet::Empty {
            return NaiveSet::Empty;
        }
        let mut blocks = Vec::new();
        for x in 0..ca {
            for y in 0..cb {
                if a[x] == b[y] {
                    blocks.push((a[x].clone(), oa + x + 1, ob + y + 1, rest.clone()));
                }
            }
        }
        return NaiveSet::Blocks(blocks);
    }
    NaiveSet::Bottom
}

pub fn naive_sdet<S: Ord + Clone>(k: usize, a: &[S], b: &[S]) -> NaiveSet<S> {
    naive_sdet_from(k, a, b, 0, 0)
}

fn arg_heads(t: &Term) -> Vec<Head> {
    t.args.iter().map(|a| a.head.clone()).collect()
}

/// Definition-level check that `t ≜ s` is k-determined.
pub fn naive_k_determined(t: &Term, s: &Term, sig: &Signature, k: usize) -> bool {
    if t.head != s.head {
        return true;
    }
    match axioms_of(&t.head, sig) {
        (false, false) => true,
        (true, false) => naive_det(k, &arg_heads(t), &arg_heads(s)) != NaiveSet::Empty,
        _ => false,
    }
}

/// Definition-level check of the total variant.
pub fn naive_total_k_determined(t: &Term, s: &Term, sig: &Signature, k: usize) -> bool {
    if t.args.is_empty() && s.args.is_empty() {
        return true;
    }
    if !naive_k_determined(t, s, sig, k) {
        return false;
    }
    if t.head != s.head {
        return true;
    }
    let pairs: Vec<(usize, usize)> = match axioms_of(&t.head, sig) {
        (true, false) => {
            let mut out = Vec::new();
            naive_det(k, &arg_heads(t), &arg_heads(s)).pairs(&mut out);
            out.into_iter().map(|(i, j)| (i - 1, j - 1)).collect()
        }
        _ => (0..t.args.len()).map(|i| (i, i)).collect(),
    };
    pairs
        .into_iter()
        .all(|(i, j)| naive_total_k_determined(&t.args[i], &s.args[j], sig, k))
}

fn is_ac(h: &Head, sig: &Signature) -> bool {
    axioms_of(h, sig) == (true, true)
}

/// Definition-level check that `t ≜ s` is (k,l)-distinct.
pub fn naive_kl_distinct(t: &Term, s: &Term, sig: &Signature, k: usize, l: usize) -> bool {
    if t.head != s.head || !is_ac(&t.head, sig) {
        return true;
    }
    let (ht, hs) = (arg_heads(t), arg_heads(s));
    let shared = common(&ht, &hs);
    let shared_size: usize = shared.iter().map(|(_, n)| n).sum();
    let (leftover_t, leftover_s) = (ht.len() - shared_size, hs.len() - shared_size);
    shared.iter().all(|(x, _)| count(&ht, x) <= k && count(&hs, x) <= k)
        && shared.len() <= l
        && (leftover_t == 0) == (leftover_s == 0)
}

/// Definition-level check of the total (k,l)-distinct variant.
pub fn naive_total_kl_distinct(t: &Term, s: &Term, sig: &Signature, k: usize, l: usize) -> bool {
    if t.head != s.head {
        return true;
    }
    if !naive_kl_distinct(t, s, sig, k, l) {
        return false;
    }
    let mut pairs = Vec::new();
    if t.args.len() == s.args.len() && !is_ac(&t.head, sig) {
        pairs.extend((0..t.args.len()).map(|i| (i, i)));
    } else {
        for i in 0..t.args.len() {
            for j in 0..s.args.len() {
                if t.args[i].head == s.args[j].head {
                    pairs.push((i, j));
                }
            }
        }
    }
    pairs
        .into_iter()
        .all(|(i, j)| naive_total_kl_distinct(&t.args[i], &s.args[j], sig, k, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Axioms;
    use crate::syntax::parse_term;

    fn sig() -> Signature {
        let i = Type::base("i");
        let bin = Type::curried([i.clone(), i.clone()], i.clone());
        let mut sig = Signature::new()
            .with_const("f", bin.clone(), Axioms::A)
            .with_const("k", bin.clone(), Axioms::C)
            .with_const("p", bin.clone(), Axioms::AC)
            .with_const("e", bin, Axioms::FREE)
            .with_const("g", Type::arrow(i.clone(), i.clone()), Axioms::FREE);
        for c in ["a", "b", "c", "d"] {
            sig.add_const(c, i.clone(), Axioms::FREE).unwrap();
        }
        sig
    }

    fn terms(l: &str, r: &str) -> (Term, Term, Signature) {
        let mut s = sig();
        let l = parse_term(l, &mut s).unwrap();
        let r = parse_term(r, &mut s).unwrap();
        (l, r, s)
    }

    fn eq(l: &str, r: &str) -> bool {
        let (l, r, s) = terms(l, r);
        e_equal_naive(&l, &r, &s, &OracleBudget::default()).unwrap()
    }

    #[test]
    fn naive_equality() {
        assert!(eq("f(a,f(b,c))", "f(f(a,b),c)"));
        assert!(eq("f(a,b)", "f(a,b)"));
        assert!(!eq("f(a,b,c)", "f(c,a,b)"));
        assert!(eq("k(a,k(b,c))", "k(k(c,b),a)"));
        assert!(eq("p(a,b,c)", "p(c,a,b)"));
        assert!(!eq("k(a,k(b,c))", "k(b,k(a,c))"));
        assert!(eq("\\x:i. p(x,g(x),a)", "\\y:i. p(a,y,g(y))"));
    }

    #[test]
    fn naive_matching() {
        let b = OracleBudget::default();
        let mut s = sig();
        s.add_var("Y", Type::base("i"));
        s.add_var("W", Type::arrow(Type::base("i"), Type::base("i")));
        let p = |t: &str, s: &mut Signature| parse_term(t, s).unwrap();
        let (r, g) = (p("f(Y,b)", &mut s), p("f(a,b,b)", &mut s));
        assert!(naive_more_general(&r, &g, &s, &b).unwrap());
        let (r, g) = (p("p(Y,Y)", &mut s), p("p(a,b)", &mut s));
        assert!(!naive_more_general(&r, &g, &s, &b).unwrap());
        let (r, g) = (p("p(Y,Y)", &mut s), p("p(a,b,b,a)", &mut s));
        assert!(naive_more_general(&r, &g, &s, &b).unwrap());
        let (r, g) = (p("\\x:i. g(W(x))", &mut s), p("\\x:i. g(f(x,a))", &mut s));
        assert!(naive_more_general(&r, &g, &s, &b).unwrap());
        let (r, g) = (p("\\x:i. g(Y)", &mut s), p("\\x:i. g(x)", &mut s));
        assert!(!naive_more_general(&r, &g, &s, &b).unwrap());
    }

    fn mcsg(l: &str, r: &str) -> Vec<String> {
        let (l, r, s) = terms(l, r);
        let b = OracleBudget::default();
        let out = brute_force_mcsg(&l, &r, &s, &b).unwrap();
        for g in &out {
            assert!(naive_more_general(g, &l, &s, &b).unwrap(), "{g}");
            assert!(naive_more_general(g, &r, &s, &b).unwrap(), "{g}");
        }
        out.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn minimal_complete_sets() {
        assert_eq!(mcsg("e(a,e(b,a))", "e(c,e(b,c))"), ["e(Y0,e(b,Y0))"]);
        assert_eq!(mcsg("k(a,b)", "k(b,a)"), ["k(a,b)"]);
        assert_eq!(mcsg("\\x:i, y:i. g(x)", "\\x:i, y:i. g(y)").len(), 1);
        let set = mcsg("f(a,b,c)", "f(c,b,a)");
        assert!(set.contains(&"f(Y0,b,Y1)".to_string()), "{set:?}");
    }

    #[test]
    fn naive_determinate_sets_match_the_worked_examples() {
        let c = |w: &str| w.chars().collect::<Vec<_>>();
        assert_eq!(
            naive_det(1, &c("accbac"), &c("adbac")).render(),
            "{(a[1,1],(b[4,3],(a[5,4],(c[6,5],∅))))}"
        );
        assert_eq!(naive_sdet(1, &c("ab"), &c("ba")).render(), "{(a[1,2],∅),(b[2,1],∅)}");
        assert_eq!(naive_det(2, &c("ab"), &c("a")).render(), "∅");
    }

    #[test]
    fn naive_fragment_checks() {
        let (t, s, sig) = terms("p(a,a)", "p(a,b)");
        assert!(!naive_kl_distinct(&t, &s, &sig, 1, 2));
        assert!(naive_kl_distinct(&t, &s, &sig, 2, 2));
        let (t, s, sig) = terms("f(a,b)", "f(a,b,c)");
        assert!(!naive_k_determined(&t, &s, &sig, 1));
        let (t, s, sig) = terms("e(p(a,b), c)", "e(p(b,a), c)");
        assert!(!naive_total_k_determined(&t, &s, &sig, 1));
    }
}
