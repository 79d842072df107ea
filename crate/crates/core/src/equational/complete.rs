use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::canon::canonical;
use crate::error::Result;
use crate::signature::Signature;
use crate::subst::Substitution;
use crate::syntactic::{GeneralizationResult, Options, State, Stats};
use crate::term::{Name, Term, Var};

use super::{choices, matching::more_general};

/// Guard rails for the exhaustive search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    /// Number of states after which each further choice point follows its
    /// first alternative only; `None` means unlimited.
    pub max_branches: Option<usize>,
}

/// Result of [`complete_set`]: generalizations sorted by their canonical
/// form, de-duplicated modulo the axioms and variable renaming.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteSet {
    pub generalizations: Vec<GeneralizationResult>,
    /// Set when the branch bound cut the search short.
    pub truncated: bool,
    pub stats: Stats,
}

/// Renames free variables to `Y0, Y1, …` in order of first occurrence,
/// skipping reserved names.
fn rename_in_order(t: &Term, reserved: &BTreeSet<Name>) -> (Term, HashMap<Var, Var>) {
    let mut map = HashMap::new();
    let mut counter = 0;
    for v in t.free_vars() {
        let name = loop {
            let n = format!("Y{counter}");
            counter += 1;
            if !reserved.contains(n.as_str()) {
                break n;
            }
        };
        map.insert(v.clone(), Var::new(&name, v.ty.clone()));
    }
    (t.rename_free(&|v| map.get(v).cloned()), map)
}

/// Brings a result to its canonical representative: canonical argument
/// order and variables named by first occurrence, iterated to a fixpoint.
pub(crate) fn canonical_result(
    r: GeneralizationResult,
    reserved: &BTreeSet<Name>,
    sig: &Signature,
) -> GeneralizationResult {
    let mut current: HashMap<Var, Var> = r
        .term
        .free_vars()
        .into_iter()
        .map(|v| (v.clone(), v))
        .collect();
    let mut term = canonical(&r.term, sig);
    for _ in 0..8 {
        let (renamed, step) = rename_in_order(&term, reserved);
        for v in current.values_mut() {
            if let Some(n) = step.get(v) {
                *v = n.clone();
            }
        }
        let next = canonical(&renamed, sig);
        let done = next == term;
        term = next;
        if done {
            break;
        }
    }
    let rename = |theta: Substitution| -> Substitution {
        theta
            .iter()
            .map(|(v, t)| (current.get(v).cloned().unwrap_or_else(|| v.clone()), t.clone()))
            .collect()
    };
    GeneralizationResult {
        term,
        theta_left: rename(r.theta_left),
        theta_right: rename(r.theta_right),
    }
}

fn reserved_names(left: &Term, right: &Term, sig: &Signature) -> BTreeSet<Name> {
    left.free_vars()
        .into_iter()
        .chain(right.free_vars())
        .map(|v| v.name)
        .chain(sig.vars().map(|(n, _)| n.clone()))
        .collect()
}

/// Every generalization computed by some maximal derivation of the
/// equational rule system.
pub fn complete_set(left: &Term, right: &Term, sig: &Signature) -> Result<CompleteSet> {
    complete_set_with(left, right, sig, Bounds::default(), Options::default())
}

pub fn complete_set_with(
    left: &Term,
    right: &Term,
    sig: &Signature,
    bounds: Bounds,
    options: Options,
) -> Result<CompleteSet> {
    let reserved = reserved_names(left, right, sig);
    let mut stats = Stats::default();
    let mut truncated = false;
    let mut created = 1usize;
    let mut found: BTreeMap<Term, GeneralizationResult> = BTreeMap::new();
    let mut stack = vec![State::new(left, right, sig, options)?];
    while let Some(mut st) = stack.pop() {
        loop {
            let Some(aup) = st.pending.pop() else {
                st.merge(sig, true);
                stats.absorb(&st.stats);
                let r = canonical_result(st.finish(sig), &reserved, sig);
                found.entry(r.term.clone()).or_insert(r);
                break;
            };
            if aup.left.is_abstraction() {
                st.abs(aup)?;
                continue;
            }
            let alternatives = choices(&aup, sig);
            if alternatives.is_empty() {
                st.step_syntactic(aup, sig);
                continue;
            }
            stats.branches += alternatives.len();
            let parent_stats = std::mem::take(&mut st.stats);
            stats.absorb(&parent_stats);
            for (n, choice) in alternatives.iter().enumerate().rev() {
                // past the bound only the first alternative is followed, so
                // every derivation already started still completes
                if bounds.max_branches.is_some_and(|max| created >= max) && n > 0 {
                    truncated = true;
                    continue;
                }
                created += 1;
                let mut child = st.clone();
                child.stats = Stats {
                    states_explored: 1,
                    ..Stats::default()
                };
                child.dec_equational(aup.clone(), choice, sig)?;
                stack.push(child);
            }
            break;
        }
    }
    Ok(CompleteSet {
        generalizations: found.into_values().collect(),
        truncated,
        stats,
    })
}

/// Removes every element strictly more general than another one and keeps
/// the first representative of each class of equi-general elements.
/// Comparisons whose matching budget runs out count as incomparable.
pub fn minimize(gens: &[GeneralizationResult], sig: &Signature) -> Vec<GeneralizationResult> {
    let n = gens.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                leq[i][j] = more_general(&gens[i].term, &gens[j].term, sig).unwrap_or(false);
            }
        }
    }
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || !leq[i][j] {
                continue;
            }
            let strictly = !leq[j][i];
            if strictly || (j < i && keep[j]) {
                keep[i] = false;
                break;
            }
        }
    }
    gens.iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g.clone())
        .collect()
}
