//! Greedy optimal generalization for the A, C and AC fragments.
//!
//! At every problem headed by an equational symbol a rigidity function
//! proposes singleton alignments of the argument heads. Each candidate is
//! realized as a decomposition, completed with the syntactic rules alone,
//! and the candidate with the least general completion wins.

use rayon::prelude::*;

use crate::equational::{e_match, equational_head, DecompositionChoice, DEFAULT_MATCH_BUDGET};
use crate::error::{Error, Result};
use crate::fragments::{det, kl_distinct_sequences, pahs, AlignEntry};
use crate::signature::Signature;
use crate::subst::mk_app;
use crate::syntactic::{Aup, GeneralizationResult, Options, State, Stats};
use crate::term::{Head, Term, Type};

/// A singleton rigidity function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rigidity {
    /// First entries of the blocks of the k-determinate set.
    A { k: usize },
    /// Every matching pair of the first block, without a bound on their number.
    AFull,
    /// Every matching pair of a two-argument commutative application.
    C,
    /// Every matching pair, provided the sequences are (k,l)-distinct.
    Ac { k: usize, l: usize },
}

impl Rigidity {
    pub fn apply<S: Ord + Clone>(&self, w1: &[S], w2: &[S]) -> Vec<AlignEntry<S>> {
        match *self {
            Rigidity::A { k } => rigidity_a(k, w1, w2),
            Rigidity::AFull => rigidity_a(usize::MAX, w1, w2),
            Rigidity::C => rigidity_c(w1, w2),
            Rigidity::Ac { k, l } => rigidity_ac(k, l, w1, w2),
        }
    }
}

pub fn rigidity_a<S: Ord + Clone>(k: usize, w1: &[S], w2: &[S]) -> Vec<AlignEntry<S>> {
    det(k, w1, w2).top_entries()
}

fn all_matches<S: Ord + Clone>(w1: &[S], w2: &[S]) -> Vec<AlignEntry<S>> {
    let mut out = Vec::new();
    for (x, a) in w1.iter().enumerate() {
        for (y, b) in w2.iter().enumerate() {
            if a == b {
                out.push(AlignEntry {
                    symbol: a.clone(),
                    i: x + 1,
                    j: y + 1,
                });
            }
        }
    }
    out
}

pub fn rigidity_c<S: Ord + Clone>(w1: &[S], w2: &[S]) -> Vec<AlignEntry<S>> {
    all_matches(w1, w2)
}

pub fn rigidity_ac<S: Ord + Clone>(k: usize, l: usize, w1: &[S], w2: &[S]) -> Vec<AlignEntry<S>> {
    if kl_distinct_sequences(k, l, w1, w2) {
        all_matches(w1, w2)
    } else {
        Vec::new()
    }
}

/// Which rigidity function is consulted for each kind of equational symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub k: usize,
    pub l: usize,
    /// Use the unbounded variant for associative symbols.
    pub full_a: bool,
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy {
            k: 1,
            l: 1,
            full_a: false,
        }
    }
}

impl Strategy {
    pub fn rigidity_for(&self, assoc: bool, comm: bool) -> Rigidity {
        match (assoc, comm) {
            (true, false) if self.full_a => Rigidity::AFull,
            (true, false) => Rigidity::A { k: self.k },
            (false, true) => Rigidity::C,
            _ => Rigidity::Ac {
                k: self.k,
                l: self.l,
            },
        }
    }
}

/// The problems `(left, right)` that realize the decomposition of `aup`
/// along the singleton alignment `entry`: the aligned pair, plus for an
/// associative head the argument segments before and after it, and for an
/// associative-commutative head the remaining arguments.
pub fn decompose_by_alignment(
    aup: &Aup,
    entry: &AlignEntry<Head>,
    sig: &Signature,
) -> Result<Vec<(Term, Term)>> {
    let f = equational_head(aup, sig)
        .ok_or_else(|| Error::not_applicable("no common equational head"))?
        .clone();
    let (t, s) = (&aup.left.args, &aup.right.args);
    let (n, m) = (t.len(), s.len());
    let (i, j) = (entry.i, entry.j);
    let in_range = (1..=n).contains(&i) && (1..=m).contains(&j);
    if !in_range || t[i - 1].head != entry.symbol || s[j - 1].head != entry.symbol {
        return Err(Error::not_applicable(format!(
            "alignment {entry} out of bounds for arities {n} and {m}"
        )));
    }
    let ax = sig.axioms(&f);
    let group = |args: &[Term]| mk_app(Head::Const(f.clone()), args.to_vec(), sig);
    let aligned = (t[i - 1].clone(), s[j - 1].clone());
    match (ax.assoc, ax.comm) {
        (true, false) => {
            if (i > 1) != (j > 1) || (i < n) != (j < m) {
                return Err(Error::not_applicable(format!(
                    "alignment {entry} leaves an argument segment empty on one side"
                )));
            }
            let mut parts = Vec::with_capacity(3);
            if i > 1 {
                parts.push((group(&t[..i - 1]), group(&s[..j - 1])));
            }
            parts.push(aligned);
            if i < n {
                parts.push((group(&t[i..]), group(&s[j..])));
            }
            Ok(parts)
        }
        (false, true) => Ok(vec![aligned, (t[2 - i].clone(), s[2 - j].clone())]),
        _ => {
            let choice = DecompositionChoice::AcLeft {
                subset: vec![i],
                pivot: j,
            };
            Ok(choice.split(aup, sig)?.into())
        }
    }
}

/// Decompositions of `f(t₁,…,tₙ) ≜ f(s₁,…,sₘ)` for a shared associative
/// `f` and `n ≠ m` that do not need a rigid alignment: every realizable
/// pair of equal argument heads, then the residual pairings. A residual
/// pairing matches the arguments of the shorter side one to one with
/// consecutive groups of the longer side: all groups singletons but the
/// last, all but the first, all of nearly equal length, and when there are
/// few of them every other grouping. Empty unless the arities differ.
pub fn residual_decompositions(aup: &Aup, sig: &Signature) -> Vec<Vec<(Term, Term)>> {
    let Some(f) = equational_head(aup, sig) else {
        return Vec::new();
    };
    let (t, s) = (&aup.left.args, &aup.right.args);
    if !sig.is_assoc(f) || t.len() == s.len() {
        return Vec::new();
    }
    let mut out: Vec<Vec<(Term, Term)>> = all_matches(&heads(t), &heads(s))
        .iter()
        .filter_map(|e| decompose_by_alignment(aup, e, sig).ok())
        .collect();
    let (short, long, flipped) = if t.len() < s.len() { (t, s, false) } else { (s, t, true) };
    let q = short.len();
    let extra = long.len() - q;
    let group = |args: &[Term]| mk_app(Head::Const(f.clone()), args.to_vec(), sig);
    let mut layouts: Vec<Vec<usize>> = vec![
        (0..q).map(|g| if g + 1 == q { extra + 1 } else { 1 }).collect(),
        (0..q).map(|g| if g == 0 { extra + 1 } else { 1 }).collect(),
        (0..q).map(|g| long.len() / q + usize::from(g < long.len() % q)).collect(),
    ];
    if binomial(long.len() - 1, q - 1) <= MAX_RESIDUAL_LAYOUTS {
        layouts.extend(compositions(long.len(), q));
    }
    for widths in layouts {
        let mut start = 0;
        let mut parts = Vec::with_capacity(q);
        for (u, w) in short.iter().zip(widths) {
            let chunk = group(&long[start..start + w]);
            start += w;
            parts.push(if flipped { (chunk, u.clone()) } else { (u.clone(), chunk) });
        }
        if !out.contains(&parts) {
            out.push(parts);
        }
    }
    out
}

/// Above this many ways of grouping the longer side, only the three fixed
/// layouts are tried.
const MAX_RESIDUAL_LAYOUTS: usize = 64;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// All ways of writing `n` as an ordered sum of `parts` positive widths.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    (1..=n - (parts - 1))
        .flat_map(|first| {
            compositions(n - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn heads(args: &[Term]) -> Vec<Head> {
    args.iter().map(|a| a.head.clone()).collect()
}

fn apply_parts(st: &mut State, aup: Aup, parts: Vec<(Term, Term)>) {
    let base: Type = aup.var.ty.uncurry().1.clone();
    let consumed = aup.size();
    let head = aup.left.head.clone();
    let parts = parts
        .into_iter()
        .map(|(l, r)| (base.clone(), l, r))
        .collect();
    st.decompose(aup.var, aup.ctx, consumed, head, parts);
}

/// Applies the decomposition along `entry` to the state.
fn realize(st: &mut State, aup: Aup, entry: &AlignEntry<Head>, sig: &Signature) -> Result<()> {
    let parts = decompose_by_alignment(&aup, entry, sig)?;
    apply_parts(st, aup, parts);
    Ok(())
}

/// Candidate alignments proposed for `aup`, restricted to those that can
/// be realized.
pub fn candidates(aup: &Aup, sig: &Signature, strategy: &Strategy) -> Vec<AlignEntry<Head>> {
    let Some(f) = equational_head(aup, sig) else {
        return Vec::new();
    };
    let ax = sig.axioms(f);
    let Ok((w1, w2)) = pahs(&aup.left, &aup.right) else {
        return Vec::new();
    };
    let (n, m) = (w1.len(), w2.len());
    strategy
        .rigidity_for(ax.assoc, ax.comm)
        .apply(&w1, &w2)
        .into_iter()
        .filter(|e| !ax.assoc || ax.comm || ((e.i > 1) == (e.j > 1) && (e.i < n) == (e.j < m)))
        .collect()
}

/// Completes `aup` after decomposing it into `parts`, with equational
/// symbols treated as free from then on. The result is closed over the
/// context of `aup`.
fn evaluate(aup: &Aup, parts: &[(Term, Term)], sig: &Signature) -> Result<Term> {
    let left = aup.left.clone().abstracted(aup.ctx.clone());
    let right = aup.right.clone().abstracted(aup.ctx.clone());
    let options = Options {
        check_measure: false,
    };
    let mut st = State::new(&left, &right, sig, options)?;
    while let Some(p) = st.pending.pop() {
        if p.left.is_abstraction() {
            st.abs(p)?;
        } else {
            apply_parts(&mut st, p, parts.to_vec());
            break;
        }
    }
    st.run_syntactic(sig);
    st.merge(sig, false);
    Ok(st.finish(sig).term)
}

fn generalizes(r: &Term, g: &Term, sig: &Signature) -> bool {
    matches!(e_match(r, g, sig, DEFAULT_MATCH_BUDGET), Ok(Some(_)))
}

/// Index of the least general completion among `options`. Among
/// incomparable completions the larger one wins, then the earlier option.
fn best(aup: &Aup, options: &[Vec<(Term, Term)>], sig: &Signature) -> Result<usize> {
    let results: Vec<Term> = options
        .par_iter()
        .map(|parts| evaluate(aup, parts, sig))
        .collect::<Result<_>>()?;
    let free = sig.free_view();
    let n = results.len();
    let maximal = (0..n).filter(|&x| {
        !(0..n).any(|y| {
            y != x
                && generalizes(&results[x], &results[y], &free)
                && !generalizes(&results[y], &results[x], &free)
        })
    });
    Ok(maximal
        .min_by(|&x, &y| results[y].size().cmp(&results[x].size()).then(x.cmp(&y)))
        .expect("generality is a preorder on finitely many results"))
}

/// The candidate alignment whose completion is least general, or `None`
/// when the rigidity function proposes nothing. Among incomparable
/// completions the larger one wins, then the smaller position pair.
pub fn choose(aup: &Aup, sig: &Signature, strategy: &Strategy) -> Result<Option<AlignEntry<Head>>> {
    let mut cands = candidates(aup, sig, strategy);
    if cands.len() <= 1 {
        return Ok(cands.pop());
    }
    let options = cands
        .iter()
        .map(|e| decompose_by_alignment(aup, e, sig))
        .collect::<Result<Vec<_>>>()?;
    let idx = best(aup, &options, sig)?;
    Ok(Some(cands.swap_remove(idx)))
}

/// The least general of the [`residual_decompositions`] of `aup`, chosen
/// like [`choose`] does.
pub fn choose_residual(aup: &Aup, sig: &Signature) -> Result<Option<Vec<(Term, Term)>>> {
    let mut options = residual_decompositions(aup, sig);
    if options.len() <= 1 {
        return Ok(options.pop());
    }
    let idx = best(aup, &options, sig)?;
    Ok(Some(options.swap_remove(idx)))
}

/// The (R,C,G)-optimal generalization of `t` and `s` for the rigidity
/// functions selected by `strategy`.
pub fn optimal_generalize(
    t: &Term,
    s: &Term,
    sig: &Signature,
    strategy: &Strategy,
) -> Result<GeneralizationResult> {
    optimal_generalize_with(t, s, sig, strategy, Options::default()).map(|(r, _)| r)
}

pub fn optimal_generalize_with(
    t: &Term,
    s: &Term,
    sig: &Signature,
    strategy: &Strategy,
    options: Options,
) -> Result<(GeneralizationResult, Stats)> {
    let mut st = State::new(t, s, sig, options)?;
    while let Some(aup) = st.pending.pop() {
        if aup.left.is_abstraction() {
            st.abs(aup)?;
            continue;
        }
        if equational_head(&aup, sig).is_none() {
            st.step_syntactic(aup, sig);
            continue;
        }
        match choose(&aup, sig, strategy)? {
            Some(entry) => {
                st.stats.branches += 1;
                realize(&mut st, aup, &entry, sig)?;
            }
            None => match choose_residual(&aup, sig)? {
                Some(parts) => {
                    st.stats.branches += 1;
                    apply_parts(&mut st, aup, parts);
                }
                None => st.step_syntactic(aup, sig),
            },
        }
    }
    st.merge(sig, true);
    let stats = st.stats;
    Ok((st.finish(sig), stats))
}
