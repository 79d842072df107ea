//! Argument-head sequences, determinate sets and the recognizers for the
//! k-determined and (k,l)-distinct problem fragments.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::term::{Head, Term};

/// One entry `a[i,j]`: symbol `a` at position `i` of the first sequence
/// and position `j` of the second, both 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlignEntry<S> {
    pub symbol: S,
    pub i: usize,
    pub j: usize,
}

impl<S: fmt::Display> fmt::Display for AlignEntry<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.symbol, self.i, self.j)
    }
}

/// A chain of entries, strictly increasing in both coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alignment<S>(pub Vec<AlignEntry<S>>);

impl<S: PartialEq> Alignment<S> {
    /// Monotone in both coordinates, in range, and symbol-consistent with
    /// the two sequences.
    pub fn is_valid_for(&self, w1: &[S], w2: &[S]) -> bool {
        let mut last = (0, 0);
        self.0.iter().all(|e| {
            let ok = e.i > last.0
                && e.j > last.1
                && e.i <= w1.len()
                && e.j <= w2.len()
                && w1[e.i - 1] == e.symbol
                && w2[e.j - 1] == e.symbol;
            last = (e.i, e.j);
            ok
        })
    }
}

impl<S: fmt::Display> fmt::Display for Alignment<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A singleton alignment together with the determinate set of the tails.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block<S> {
    pub entry: AlignEntry<S>,
    pub nested: DeterminateSet<S>,
}

/// Result of [`det`] and [`sdet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DeterminateSet<S> {
    /// The empty set: no alignment can be completed.
    Failure,
    /// The set containing only the empty alignment.
    BottomOut,
    Blocks(Vec<Block<S>>),
}

impl<S: Clone> DeterminateSet<S> {
    pub fn is_failure(&self) -> bool {
        matches!(self, DeterminateSet::Failure)
    }

    pub fn blocks(&self) -> &[Block<S>] {
        match self {
            DeterminateSet::Blocks(b) => b,
            _ => &[],
        }
    }

    /// Entries of the top-level blocks.
    pub fn top_entries(&self) -> Vec<AlignEntry<S>> {
        self.blocks().iter().map(|b| b.entry.clone()).collect()
    }

    /// Every maximal root-to-leaf chain of entries.
    pub fn alignments(&self) -> Vec<Alignment<S>> {
        match self {
            DeterminateSet::Failure => Vec::new(),
            DeterminateSet::BottomOut => vec![Alignment(Vec::new())],
            DeterminateSet::Blocks(blocks) => blocks
                .iter()
                .flat_map(|b| {
                    b.nested.alignments().into_iter().map(|mut rest| {
                        rest.0.insert(0, b.entry.clone());
                        rest
                    })
                })
                .collect(),
        }
    }

    /// Exchanges the roles of the two sequences. Blocks stay ordered by
    /// position in the first sequence, then in the second.
    pub fn swapped(&self) -> DeterminateSet<S> {
        match self {
            DeterminateSet::Blocks(blocks) => {
                let mut swapped: Vec<Block<S>> = blocks
                    .iter()
                    .map(|b| Block {
                        entry: AlignEntry {
                            symbol: b.entry.symbol.clone(),
                            i: b.entry.j,
                            j: b.entry.i,
                        },
                        nested: b.nested.swapped(),
                    })
                    .collect();
                swapped.sort_by_key(|b| (b.entry.i, b.entry.j));
                DeterminateSet::Blocks(swapped)
            }
            other => other.clone(),
        }
    }
}

impl<S: fmt::Display> Block<S> {
    fn fmt_nested(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},", self.entry)?;
        match &self.nested {
            DeterminateSet::Blocks(inner) if inner.len() == 1 => inner[0].fmt_nested(f)?,
            DeterminateSet::Blocks(_) => write!(f, "{}", self.nested)?,
            _ => write!(f, "∅")?,
        }
        write!(f, ")")
    }
}

impl<S: fmt::Display> fmt::Display for DeterminateSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeterminateSet::Failure => write!(f, "∅"),
            DeterminateSet::BottomOut => write!(f, "{{∅}}"),
            DeterminateSet::Blocks(blocks) => {
                write!(f, "{{")?;
                for (n, b) in blocks.iter().enumerate() {
                    if n > 0 {
                        write!(f, ",")?;
                    }
                    b.fmt_nested(f)?;
                }
                write!(f, "}}")
            }
        }
    }
}

type Multiset<'a, S> = BTreeMap<&'a S, usize>;

fn multiset<S: Ord>(w: &[S]) -> Multiset<'_, S> {
    let mut m = BTreeMap::new();
    for s in w {
        *m.entry(s).or_insert(0) += 1;
    }
    m
}

fn intersect<'a, S: Ord>(x: &Multiset<'a, S>, y: &Multiset<'a, S>) -> Multiset<'a, S> {
    x.iter()
        .filter_map(|(s, &n)| y.get(s).map(|&m| (*s, n.min(m))))
        .collect()
}

/// Whether `w1` and `w2` agree on how many copies of each symbol of `m`
/// they contain (capped at the multiplicity in `m`).
fn same_share<S: Ord>(m: &Multiset<'_, S>, w1: &Multiset<'_, S>, w2: &Multiset<'_, S>) -> bool {
    m.iter().all(|(s, &n)| {
        let a = w1.get(s).copied().unwrap_or(0).min(n);
        let b = w2.get(s).copied().unwrap_or(0).min(n);
        a == b
    })
}

/// Smallest block boundary `i` accepted by `valid`, with prefixes of both
/// sequences truncated to their lengths.
fn boundary<'a, S: Ord>(
    a: &'a [S],
    b: &'a [S],
    shared: fn(&'a [S], &'a [S]) -> Option<Multiset<'a, S>>,
) -> Option<usize> {
    (1..=a.len().max(b.len())).find(|&i| {
        let (pa, pb) = (&a[..i.min(a.len())], &b[..i.min(b.len())]);
        let Some(m) = shared(pa, pb) else {
            return false;
        };
        let ta = multiset(&a[i.min(a.len())..]);
        let tb = multiset(&b[i.min(b.len())..]);
        same_share(&m, &ta, &tb)
    })
}

/// Symbols shared by the two prefixes, where the first positions only
/// count against each other.
fn det_shared<'a, S: Ord>(pa: &'a [S], pb: &'a [S]) -> Option<Multiset<'a, S>> {
    let first = pa[0] == pb[0];
    let mut m = intersect(&multiset(&pa[1..]), &multiset(&pb[1..]));
    let non_empty = if pa.len().max(pb.len()) == 1 {
        first
    } else {
        !m.is_empty()
    };
    if first {
        *m.entry(&pa[0]).or_insert(0) += 1;
    }
    non_empty.then_some(m)
}

fn sdet_shared<'a, S: Ord>(pa: &'a [S], pb: &'a [S]) -> Option<Multiset<'a, S>> {
    let m = intersect(&multiset(pa), &multiset(pb));
    (!m.is_empty()).then_some(m)
}

fn det_at<S: Ord + Clone>(k: usize, a: &[S], b: &[S], oa: usize, ob: usize) -> DeterminateSet<S> {
    if a.is_empty() != b.is_empty() {
        return DeterminateSet::Failure;
    }
    let Some(i) = boundary(a, b, det_shared) else {
        return DeterminateSet::BottomOut;
    };
    let (pa, pb) = (&a[..i.min(a.len())], &b[..i.min(b.len())]);
    let candidates: Vec<(usize, usize)> = (0..pa.len())
        .flat_map(|x| (0..pb.len()).map(move |y| (x, y)))
        .filter(|&(x, y)| pa[x] == pb[y] && (x == 0) == (y == 0))
        .collect();
    if candidates.len() > k {
        return DeterminateSet::BottomOut;
    }
    let blocks: Vec<Block<S>> = candidates
        .into_iter()
        .filter_map(|(x, y)| {
            let nested = det_at(k, &a[x + 1..], &b[y + 1..], oa + x + 1, ob + y + 1);
            (!nested.is_failure()).then(|| Block {
                entry: AlignEntry {
                    symbol: a[x].clone(),
                    i: oa + x + 1,
                    j: ob + y + 1,
                },
                nested,
            })
        })
        .collect();
    if blocks.is_empty() {
        DeterminateSet::Failure
    } else {
        DeterminateSet::Blocks(blocks)
    }
}

/// The k-determinate set of two symbol sequences. Positions in the result
/// are absolute and 1-based.
pub fn det<S: Ord + Clone>(k: usize, w1: &[S], w2: &[S]) -> DeterminateSet<S> {
    det_at(k, w1, w2, 0, 0)
}

fn sdet_at<S: Ord + Clone>(k: usize, a: &[S], b: &[S], oa: usize, ob: usize) -> DeterminateSet<S> {
    if a.is_empty() != b.is_empty() {
        return DeterminateSet::Failure;
    }
    let Some(i) = boundary(a, b, sdet_shared) else {
        return DeterminateSet::BottomOut;
    };
    let (pa, pb) = (&a[..i.min(a.len())], &b[..i.min(b.len())]);
    let (ma, mb) = (multiset(pa), multiset(pb));
    let m = intersect(&ma, &mb);
    if m.keys().any(|s| ma[s] > k || mb[s] > k) {
        return DeterminateSet::BottomOut;
    }
    let nested = sdet_at(
        k,
        &a[i.min(a.len())..],
        &b[i.min(b.len())..],
        oa + i.min(a.len()),
        ob + i.min(b.len()),
    );
    if nested.is_failure() {
        return DeterminateSet::Failure;
    }
    let blocks = (0..pa.len())
        .flat_map(|x| (0..pb.len()).map(move |y| (x, y)))
        .filter(|&(x, y)| pa[x] == pb[y])
        .map(|(x, y)| Block {
            entry: AlignEntry {
                symbol: a[x].clone(),
                i: oa + x + 1,
                j: ob + y + 1,
            },
            nested: nested.clone(),
        })
        .collect();
    DeterminateSet::Blocks(blocks)
}

/// The strict k-determinate set: the argument order inside a block is
/// irrelevant, so every matching pair of the block is a candidate.
pub fn sdet<S: Ord + Clone>(k: usize, w1: &[S], w2: &[S]) -> DeterminateSet<S> {
    sdet_at(k, w1, w2, 0, 0)
}

fn same_head_bodies<'t>(t: &'t Term, s: &'t Term) -> Result<(&'t Head, &'t [Term], &'t [Term])> {
    if t.head != s.head || t.binders.len() != s.binders.len() {
        return Err(Error::not_applicable(format!(
            "argument heads need a common head symbol, found {} and {}",
            t.head, s.head
        )));
    }
    Ok((&t.head, &t.args, &s.args))
}

/// The pair of argument head sequences of two terms with the same head.
pub fn pahs(t: &Term, s: &Term) -> Result<(Vec<Head>, Vec<Head>)> {
    let (_, ta, sa) = same_head_bodies(t, s)?;
    let heads = |args: &[Term]| args.iter().map(|a| a.head.clone()).collect();
    Ok((heads(ta), heads(sa)))
}

/// The pair of argument head multisets of two terms with the same head.
pub fn pahm(t: &Term, s: &Term) -> Result<(BTreeMap<Head, usize>, BTreeMap<Head, usize>)> {
    let (w1, w2) = pahs(t, s)?;
    let count = |w: Vec<Head>| {
        let mut m = BTreeMap::new();
        for h in w {
            *m.entry(h).or_insert(0) += 1;
        }
        m
    };
    Ok((count(w1), count(w2)))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flavour {
    Plain,
    Strict,
}

fn determinate(t: &Term, s: &Term, sig: &Signature, k: usize, flavour: Flavour) -> Option<DeterminateSet<Head>> {
    let name = t.head.as_const()?;
    let ax = sig.axioms(name);
    if ax.is_free() || ax.assoc && ax.comm {
        return None;
    }
    let (w1, w2) = pahs(t, s).ok()?;
    Some(match (flavour, ax.comm) {
        (Flavour::Plain, false) => det(k, &w1, &w2),
        _ => sdet(k, &w1, &w2),
    })
}

fn k_determined(t: &Term, s: &Term, sig: &Signature, k: usize, flavour: Flavour) -> bool {
    if t.head != s.head {
        return true;
    }
    let ax = t.head.as_const().map(|c| sig.axioms(c)).unwrap_or_default();
    if ax.is_free() {
        return true;
    }
    if ax.assoc && ax.comm {
        return false;
    }
    if ax.comm && flavour == Flavour::Plain {
        return false;
    }
    determinate(t, s, sig, k, flavour).is_some_and(|d| !d.is_failure())
}

fn collect_entries<S: Clone>(d: &DeterminateSet<S>, out: &mut Vec<AlignEntry<S>>) {
    for b in d.blocks() {
        out.push(b.entry.clone());
        collect_entries(&b.nested, out);
    }
}

fn total_k_determined(t: &Term, s: &Term, sig: &Signature, k: usize, flavour: Flavour) -> bool {
    if t.args.is_empty() && s.args.is_empty() {
        return true;
    }
    if !k_determined(t, s, sig, k, flavour) {
        return false;
    }
    if t.head != s.head {
        return true;
    }
    match determinate(t, s, sig, k, flavour) {
        Some(d) => {
            let mut entries = Vec::new();
            collect_entries(&d, &mut entries);
            entries
                .iter()
                .all(|e| total_k_determined(&t.args[e.i - 1], &s.args[e.j - 1], sig, k, flavour))
        }
        None => t
            .args
            .iter()
            .zip(&s.args)
            .all(|(a, b)| total_k_determined(a, b, sig, k, flavour)),
    }
}

/// Whether `t ≜ s` is k-determined: the heads differ, the common head is a
/// free symbol or variable, or it is associative and its determinate set
/// is not the empty set.
pub fn is_k_determined(t: &Term, s: &Term, sig: &Signature, k: usize) -> bool {
    k_determined(t, s, sig, k, Flavour::Plain)
}

/// Like [`is_k_determined`] but using the strict determinate set, which
/// also covers commutative heads.
pub fn is_k_determined_strict(t: &Term, s: &Term, sig: &Signature, k: usize) -> bool {
    k_determined(t, s, sig, k, Flavour::Strict)
}

/// k-determined at the root and, recursively, at every pair of arguments
/// that some alignment of the determinate set relates.
pub fn is_total_k_determined(t: &Term, s: &Term, sig: &Signature, k: usize) -> bool {
    total_k_determined(t, s, sig, k, Flavour::Plain)
}

pub fn is_total_k_determined_strict(t: &Term, s: &Term, sig: &Signature, k: usize) -> bool {
    total_k_determined(t, s, sig, k, Flavour::Strict)
}

/// The (k,l)-distinct condition on two argument head sequences: every
/// shared symbol occurs at most `k` times on each side, at most `l`
/// distinct symbols are shared, and one side has unshared arguments
/// exactly when the other one does.
pub fn kl_distinct_sequences<S: Ord>(k: usize, l: usize, w1: &[S], w2: &[S]) -> bool {
    let (m1, m2) = (multiset(w1), multiset(w2));
    let shared = intersect(&m1, &m2);
    let shared_total: usize = shared.values().sum();
    let bounded = shared.keys().all(|s| m1[s] <= k && m2[s] <= k);
    bounded && shared.len() <= l && (w1.len() == shared_total) == (w2.len() == shared_total)
}

/// Whether `t ≜ s` is (k,l)-distinct. Pairs without a common
/// associative-commutative head are not constrained.
pub fn is_kl_distinct(t: &Term, s: &Term, sig: &Signature, k: usize, l: usize) -> bool {
    let ac = t.head == s.head
        && t
            .head
            .as_const()
            .is_some_and(|c| sig.axioms(c).assoc && sig.axioms(c).comm);
    if !ac {
        return true;
    }
    pahs(t, s).is_ok_and(|(w1, w2)| kl_distinct_sequences(k, l, &w1, &w2))
}

/// (k,l)-distinct at the root and at every pair of arguments sharing a head.
pub fn is_total_kl_distinct(t: &Term, s: &Term, sig: &Signature, k: usize, l: usize) -> bool {
    if t.head != s.head {
        return true;
    }
    if !is_kl_distinct(t, s, sig, k, l) {
        return false;
    }
    if t.args.len() == s.args.len() && !sig_is_ac(&t.head, sig) {
        return t
            .args
            .iter()
            .zip(&s.args)
            .all(|(a, b)| is_total_kl_distinct(a, b, sig, k, l));
    }
    t.args.iter().all(|a| {
        s.args
            .iter()
            .filter(|b| b.head == a.head)
            .all(|b| is_total_kl_distinct(a, b, sig, k, l))
    })
}

fn sig_is_ac(h: &Head, sig: &Signature) -> bool {
    h.as_const()
        .is_some_and(|c| sig.axioms(c).assoc && sig.axioms(c).comm)
}
