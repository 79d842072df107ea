//! Properties of the syntactic pattern generalization calculus.

mod common;

use common::{mixed_signature, random_pair};
use hoau::equational::more_general;
use hoau::syntactic::{syntactic_lgg_with, Options};
use hoau::{syntactic_lgg, Head, Signature, State, Term};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pair(seed: u64, size: usize) -> (Term, Term, Signature, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sig = mixed_signature();
    let (l, r) = random_pair(&mut rng, &mut sig, size);
    (l, r, sig, rng)
}

/// Renames the context levels below `d` by `pi`.
fn permute(t: &Term, pi: &[usize]) -> Term {
    let head = match &t.head {
        Head::Bound(l) if *l < pi.len() => Head::Bound(pi[*l]),
        h => h.clone(),
    };
    Term::new(t.binders.clone(), head, t.args.iter().map(|a| permute(a, pi)).collect())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn results_are_sound_patterns(seed in any::<u64>()) {
        let (l, r, sig, _) = pair(seed, 40);
        let (res, stats) = syntactic_lgg_with(&l, &r, &sig, Options::default()).unwrap();
        prop_assert!(res.verify(&l, &r, &sig.free_view()));
        prop_assert!(res.term.is_pattern());
        prop_assert_eq!(stats.measure_violations, 0);
    }

    #[test]
    fn rule_order_does_not_matter(seed in any::<u64>()) {
        let (l, r, sig, mut rng) = pair(seed, 40);
        let reference = syntactic_lgg(&l, &r, &sig).unwrap();
        let mut st = State::new(&l, &r, &sig, Options::default()).unwrap();
        while !st.pending.is_empty() {
            let idx = rng.gen_range(0..st.pending.len());
            let aup = st.pending.swap_remove(idx);
            st.step_syntactic(aup, &sig);
        }
        let mut store = st.store.clone();
        store.reverse();
        st.store = store;
        st.merge(&sig, false);
        let term = st.finish(&sig).term;
        // unique up to renaming, which may also permute a variable's arguments
        let free = sig.free_view();
        prop_assert_eq!(more_general(&term, &reference.term, &free), Some(true));
        prop_assert_eq!(more_general(&reference.term, &term, &free), Some(true));
    }

    #[test]
    fn merged_store_has_no_mergeable_pair(seed in any::<u64>()) {
        let (l, r, sig, _) = pair(seed, 40);
        let mut st = State::new(&l, &r, &sig, Options::default()).unwrap();
        st.run_syntactic(&sig);
        st.merge(&sig, false);
        for (i, x) in st.store.iter().enumerate() {
            for y in &st.store[i + 1..] {
                if x.ctx.len() != y.ctx.len() {
                    continue;
                }
                for pi in permutations(y.ctx.len()) {
                    let types_agree = y.ctx.iter().enumerate().all(|(j, b)| b.ty == x.ctx[pi[j]].ty);
                    let same = types_agree
                        && permute(&y.left, &pi) == x.left
                        && permute(&y.right, &pi) == x.right;
                    prop_assert!(!same, "{} and {} are mergeable", x.var.name, y.var.name);
                }
            }
        }
    }
}
