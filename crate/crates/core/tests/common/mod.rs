//! Shared fixtures for the integration tests: a mixed signature and seeded
//! random term generators.

#![allow(dead_code)]

use hoau::syntax::parse_term;
use std::collections::BTreeSet;

use hoau::{canonical, Axioms, Signature, Term, Type};
use rand::Rng;

/// Two free symbols (`g` unary, `e` binary), one each of A (`f`), C (`k`)
/// and AC (`p`), three constants and a free variable `V`.
pub fn mixed_signature() -> Signature {
    let i = Type::base("i");
    let bin = Type::curried([i.clone(), i.clone()], i.clone());
    let mut sig = Signature::new()
        .with_const("g", Type::arrow(i.clone(), i.clone()), Axioms::FREE)
        .with_const("e", bin.clone(), Axioms::FREE)
        .with_const("f", bin.clone(), Axioms::A)
        .with_const("k", bin.clone(), Axioms::C)
        .with_const("p", bin, Axioms::AC)
        .with_var("V", i.clone());
    for c in ["a", "b", "c"] {
        sig.add_const(c, i.clone(), Axioms::FREE).unwrap();
    }
    sig
}

/// Source text of a random term of type `i` with at most `size` symbols.
/// `bound` lists the names of the binders in scope; `hof` names one of type
/// `i -> i`.
pub fn random_body<R: Rng>(rng: &mut R, size: usize, bound: &[&str], hof: Option<&str>) -> String {
    if size <= 1 {
        let mut leaves = vec!["a", "b", "c", "V"];
        leaves.extend_from_slice(bound);
        return leaves[rng.gen_range(0..leaves.len())].to_string();
    }
    let budget = size - 1;
    let pick = rng.gen_range(0..10);
    match (pick, hof) {
        (0, Some(h)) | (1, Some(h)) => format!("{h}({})", random_body(rng, budget, bound, hof)),
        (0..=1, None) | (2, _) => format!("g({})", random_body(rng, budget, bound, hof)),
        _ if budget < 2 => random_body(rng, 1, bound, hof),
        _ => {
            let op = ["e", "f", "k", "p", "f", "p", "k"][rng.gen_range(0..7)];
            let max_args = if matches!(op, "f" | "p") { 4.min(budget) } else { 2 };
            let n = rng.gen_range(2..=max_args.max(2));
            let mut remaining = budget;
            let mut args = Vec::with_capacity(n);
            for j in 0..n {
                let left = n - j - 1;
                let share = if left == 0 {
                    remaining
                } else {
                    rng.gen_range(1..=(remaining - left).max(1))
                };
                remaining -= share.min(remaining);
                args.push(random_body(rng, share.max(1), bound, hof));
            }
            format!("{op}({})", args.join(","))
        }
    }
}

/// A random pair of terms of the same type, sharing their binder prefix.
pub fn random_pair<R: Rng>(rng: &mut R, sig: &mut Signature, max_size: usize) -> (Term, Term) {
    let shape = rng.gen_range(0..4);
    let (prefix, bound, hof): (&str, Vec<&str>, Option<&str>) = match shape {
        0 => ("\\x:i. ", vec!["x"], None),
        1 => ("\\x:i, y:i. ", vec!["x", "y"], None),
        2 => ("\\x:i, h:(i -> i). ", vec!["x"], Some("h")),
        _ => ("", Vec::new(), None),
    };
    let mut side = |rng: &mut R| loop {
        let size = rng.gen_range(1..=max_size);
        let text = format!("{prefix}{}", random_body(rng, size, &bound, hof));
        let t = parse_term(&text, sig).expect("generated terms are well typed");
        if t.size() <= max_size {
            return t;
        }
    };
    if rng.gen_bool(0.5) {
        return (side(rng), side(rng));
    }
    loop {
        let size = rng.gen_range(1..=max_size);
        let body = random_body(rng, size, &bound, hof);
        let l = parse_term(&format!("{prefix}{body}"), sig).expect("generated terms are well typed");
        let r = parse_term(&format!("{prefix}{}", mutate(rng, &body, &bound)), sig)
            .expect("mutation keeps terms well typed");
        if l.size() <= max_size && r.size() <= max_size {
            return (l, r);
        }
    }
}

/// Replaces roughly a third of the leaves of a generated body.
pub fn mutate<R: Rng>(rng: &mut R, body: &str, bound: &[&str]) -> String {
    let mut leaves = vec!['a', 'b', 'c', 'V'];
    leaves.extend(bound.iter().filter_map(|b| b.chars().next()));
    let chars: Vec<char> = body.chars().collect();
    let mut out = String::with_capacity(body.len());
    for (n, &ch) in chars.iter().enumerate() {
        let is_leaf = leaves.contains(&ch) && chars.get(n + 1) != Some(&'(');
        if is_leaf && rng.gen_bool(0.35) {
            out.push(leaves[rng.gen_range(0..leaves.len())]);
        } else {
            out.push(ch);
        }
    }
    out
}

/// Four symbols: a binary `f` carrying `axioms`, a unary `g` and the
/// constants `a`, `b`.
pub fn theory_signature(axioms: Axioms) -> Signature {
    let i = Type::base("i");
    Signature::new()
        .with_const("f", Type::curried([i.clone(), i.clone()], i.clone()), axioms)
        .with_const("g", Type::arrow(i.clone(), i.clone()), Axioms::FREE)
        .with_const("a", i.clone(), Axioms::FREE)
        .with_const("b", i, Axioms::FREE)
}

/// All ground terms over [`theory_signature`] of size at most `max`, one
/// per class modulo the axioms, indexed by size.
pub fn ground_terms(sig: &mut Signature, max: usize) -> Vec<Vec<Term>> {
    let mut texts: Vec<Vec<String>> = vec![Vec::new(), vec!["a".into(), "b".into()]];
    for n in 2..=max {
        let mut level: Vec<String> = texts[n - 1].iter().map(|t| format!("g({t})")).collect();
        for left in 1..n - 1 {
            for l in &texts[left] {
                for r in &texts[n - 1 - left] {
                    level.push(format!("f({l},{r})"));
                }
            }
        }
        texts.push(level);
    }
    let mut seen = BTreeSet::new();
    let mut by_size = vec![Vec::new(); max + 1];
    for text in texts.iter().flatten() {
        let t = parse_term(text, sig).expect("enumerated terms are well typed");
        if seen.insert(canonical(&t, sig)) {
            by_size[t.size()].push(t);
        }
    }
    by_size
}
