//! Properties of normal forms, flattening, equality modulo the axioms and
//! substitution.

mod common;

use common::{mixed_signature, random_body, random_pair};
use hoau::oracle::{e_equal_naive, OracleBudget};
use hoau::syntax::{parse_term, print_source};
use hoau::{e_equal, normalize_term, Head, Signature, Substitution, Term, Type, Var};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn term(seed: u64, size: usize) -> (Term, Signature) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sig = mixed_signature();
    let (t, _) = random_pair(&mut rng, &mut sig, size);
    (t, sig)
}

fn flattened(t: &Term, sig: &Signature) -> bool {
    let assoc_head = match &t.head {
        Head::Const(c) if sig.is_assoc(c) => Some(&t.head),
        _ => None,
    };
    t.args.iter().all(|a| {
        let nested = assoc_head.is_some_and(|h| a.binders.is_empty() && a.head == *h);
        !nested && flattened(a, sig)
    })
}

/// Permutes the arguments of commutative symbols and regroups nothing, so
/// the result stays equal modulo the axioms.
fn shuffle<R: Rng>(t: &Term, sig: &Signature, rng: &mut R) -> Term {
    let mut args: Vec<Term> = t.args.iter().map(|a| shuffle(a, sig, rng)).collect();
    if let Head::Const(c) = &t.head {
        if sig.axioms(c).comm {
            for i in (1..args.len()).rev() {
                let j = rng.gen_range(0..=i);
                args.swap(i, j);
            }
        }
    }
    Term::new(t.binders.clone(), t.head.clone(), args)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalization_is_idempotent(seed in any::<u64>()) {
        let (t, sig) = term(seed, 30);
        let once = normalize_term(&t, &sig).unwrap();
        prop_assert_eq!(&normalize_term(&once, &sig).unwrap(), &once);
        prop_assert_eq!(once, t);
    }

    #[test]
    fn associative_applications_are_flat(seed in any::<u64>()) {
        let (t, sig) = term(seed, 40);
        prop_assert!(flattened(&t, &sig));
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let (t, mut sig) = term(seed, 40);
        let back = parse_term(&print_source(&t), &mut sig).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn e_equal_is_an_equivalence(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (t, sig) = term(seed, 25);
        let u = shuffle(&t, &sig, &mut rng);
        let w = shuffle(&u, &sig, &mut rng);
        prop_assert!(e_equal(&t, &t, &sig));
        prop_assert!(e_equal(&t, &u, &sig) && e_equal(&u, &t, &sig));
        prop_assert!(e_equal(&u, &w, &sig) && e_equal(&t, &w, &sig));
        let (l, r) = random_pair(&mut rng, &mut mixed_signature(), 25);
        prop_assert_eq!(e_equal(&l, &r, &sig), e_equal(&r, &l, &sig));
    }

    #[test]
    fn e_equal_agrees_with_the_rewriting_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sig = mixed_signature();
        let (l, r) = random_pair(&mut rng, &mut sig, 9);
        let shuffled = shuffle(&l, &sig, &mut rng);
        let budget = OracleBudget::default();
        for (x, y) in [(&l, &r), (&l, &shuffled)] {
            prop_assert_eq!(e_equal(x, y, &sig), e_equal_naive(x, y, &sig, &budget).unwrap());
        }
    }

    #[test]
    fn substitution_composes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sig = mixed_signature();
        let (t, _) = random_pair(&mut rng, &mut sig, 25);
        let v = Var::new("V", Type::base("i"));
        let rhs = |rng: &mut ChaCha8Rng, sig: &mut Signature| {
            let size = rng.gen_range(1..8);
            parse_term(&random_body(rng, size, &[], None), sig).unwrap()
        };
        let sigma: Substitution = [(v.clone(), rhs(&mut rng, &mut sig))].into_iter().collect();
        let theta: Substitution = [(v, rhs(&mut rng, &mut sig))].into_iter().collect();
        let stepwise = theta.apply(&sigma.apply(&t, &sig), &sig);
        let composed = sigma.compose(&theta, &sig).apply(&t, &sig);
        prop_assert_eq!(stepwise, composed);
    }
}
